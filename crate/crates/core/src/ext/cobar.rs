//! Ext over `A_*` as cohomology of the reduced cobar complex.
//!
//! `C^s_t` is spanned by bars `[m_1 | ... | m_s]` of non-unit monomials with
//! total degree `t`, and `d[m_1|...|m_s] = sum_k [...|psi'(m_k)|...]` where
//! `psi'` is the reduced coproduct. This shares no code with the resolution
//! beyond the coproduct itself, so it serves as an independent check.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::chart::{Chart, Grading};
use crate::error::{Error, Result};
use crate::f2linalg::{F2Matrix, F2Vector};
use crate::steenrod::{dual_basis, reduced_coproduct, DualMonomial};

type Bar = Vec<DualMonomial>;

/// All bars of length `s` and total degree `t`, in a fixed order.
fn bars(s: u32, t: u32) -> Vec<Bar> {
    fn go(s: u32, t: u32, prefix: &mut Bar, out: &mut Vec<Bar>) {
        if s == 0 {
            if t == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        // every remaining entry needs degree >= 1
        for d in 1..=t.saturating_sub(s - 1) {
            for m in dual_basis(d) {
                prefix.push(m);
                go(s - 1, t - d, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(s, t, &mut Vec::new(), &mut out);
    out
}

fn differential(
    source: &[Bar],
    target: &[Bar],
    coproducts: &HashMap<DualMonomial, Vec<(DualMonomial, DualMonomial)>>,
) -> F2Matrix {
    let index: HashMap<&Bar, usize> = target.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let rows: Vec<F2Vector> = source
        .iter()
        .map(|bar| {
            let mut row = F2Vector::zeros(target.len());
            for k in 0..bar.len() {
                for (x, y) in &coproducts[&bar[k]] {
                    let mut out = Vec::with_capacity(bar.len() + 1);
                    out.extend_from_slice(&bar[..k]);
                    out.push(x.clone());
                    out.push(y.clone());
                    out.extend_from_slice(&bar[k + 1..]);
                    row.flip(index[&out]);
                }
            }
            row
        })
        .collect();
    F2Matrix::from_row_vectors(target.len(), &rows)
}

/// Dimensions of `Ext^{s,t}_{A_*}(F_2, F_2)` for `s <= max_s`, `t <= max_t`.
///
/// `max_cells` caps the size of any single cobar group.
pub fn cobar_ext(max_s: u32, max_t: u32, max_cells: usize) -> Result<Chart> {
    let coproducts: HashMap<DualMonomial, Vec<(DualMonomial, DualMonomial)>> = (1..=max_t)
        .flat_map(dual_basis)
        .map(|m| {
            let terms = reduced_coproduct(&m).terms().cloned().collect();
            (m, terms)
        })
        .collect();

    let columns: Vec<Result<Vec<(u32, usize)>>> = (0..=max_t)
        .into_par_iter()
        .map(|t| {
            if t == 0 {
                return Ok(vec![(0, 1)]);
            }
            // groups C^0 .. C^{max_s + 1}; C^s vanishes for s > t
            let top = (max_s + 1).min(t);
            let mut groups = Vec::with_capacity(top as usize + 1);
            for s in 0..=top {
                let g = bars(s, t);
                if g.len() > max_cells {
                    return Err(Error::Budget {
                        s,
                        t,
                        completed_t: t as i64 - 1,
                    });
                }
                groups.push(g);
            }
            let mut ranks = vec![0usize; top as usize + 1];
            for s in 1..top as usize {
                ranks[s] = differential(&groups[s], &groups[s + 1], &coproducts).rank();
            }
            let mut dims = Vec::new();
            for s in 0..=max_s.min(t) as usize {
                let prev = if s == 0 { 0 } else { ranks[s - 1] };
                let next = if s < top as usize { ranks[s] } else { 0 };
                dims.push((s as u32, groups[s].len() - next - prev));
            }
            Ok(dims)
        })
        .collect();

    let mut chart = Chart::new(Grading::St);
    for (t, col) in columns.into_iter().enumerate() {
        for (s, dim) in col? {
            chart.set_dim(&[s as i64, t as i64], dim);
        }
    }
    Ok(chart)
}
