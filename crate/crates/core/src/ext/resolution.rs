//! Minimal free resolution of `F_2` over the Steenrod algebra.
//!
//! Stage `s` is a free module `F_s` on generators with internal degrees.
//! The resolution is extended one internal degree `t` at a time, and for
//! each `t` one stage at a time: the new generators of `F_s` in degree `t`
//! are exactly the kernel vectors of `d_{s-1}` not yet hit by `d_s`, taken in
//! canonical order. Minimality makes `Ext^{s,t}` the number of generators of
//! `F_s` in degree `t`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::chart::{Chart, Frontier, Grading};
use crate::error::{Error, Result};
use crate::f2linalg::{F2Matrix, F2Vector, Subspace};
use crate::steenrod::{milnor_basis, milnor_product, MilnorElement};

/// Element of `F_{s-1}`: a sum of `(generator index, Milnor element)`.
pub type FreeElement = Vec<(usize, MilnorElement)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub t: u32,
    /// Image under `d_s` in `F_{s-1}`; empty for the stage-0 generator,
    /// which maps to `1` under the augmentation.
    pub differential: FreeElement,
}

/// Milnor basis in each degree, with reverse lookup.
#[derive(Debug, Default)]
struct BasisTable {
    degrees: Vec<(Vec<MilnorElement>, HashMap<MilnorElement, usize>)>,
}

impl BasisTable {
    fn ensure(&mut self, d: u32) {
        while self.degrees.len() <= d as usize {
            let basis = milnor_basis(self.degrees.len() as u32);
            let index = basis
                .iter()
                .enumerate()
                .map(|(i, m)| (m.clone(), i))
                .collect();
            self.degrees.push((basis, index));
        }
    }

    fn basis(&self, d: u32) -> &[MilnorElement] {
        &self.degrees[d as usize].0
    }

    fn index(&self, m: &MilnorElement) -> usize {
        self.degrees[m.degree() as usize].1[m]
    }
}

/// Cap on the work allowed for a single `(s, t)` step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest allowed dimension of `(F_s)_t`.
    pub max_module_dim: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_module_dim: 200_000,
        }
    }
}

#[derive(Debug)]
pub struct Resolution {
    stages: Vec<Vec<Generator>>,
    /// Per stage, the largest `t` through which the stage is complete.
    stage_done: Vec<i64>,
    basis: BasisTable,
    workers: usize,
    budget: Budget,
}

impl Default for Resolution {
    fn default() -> Self {
        Self::new()
    }
}

impl Resolution {
    pub fn new() -> Self {
        Self {
            stages: Vec::new(),
            stage_done: Vec::new(),
            basis: BasisTable::default(),
            workers: 1,
            budget: Budget::default(),
        }
    }

    pub(crate) fn from_parts(stages: Vec<Vec<Generator>>, stage_done: Vec<i64>) -> Self {
        Self {
            stages,
            stage_done,
            ..Self::new()
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn stages(&self) -> &[Vec<Generator>] {
        &self.stages
    }

    pub fn stage_done(&self) -> &[i64] {
        &self.stage_done
    }

    /// Stages present and the `t` through which all of them are complete.
    pub fn frontier(&self) -> Frontier {
        Frontier {
            max_s: self.stages.len() as i64 - 1,
            completed_t: self.stage_done.iter().copied().min().unwrap_or(-1),
        }
    }

    pub fn generators_at(&self, s: u32, t: u32) -> impl Iterator<Item = (usize, &Generator)> {
        self.stages
            .get(s as usize)
            .into_iter()
            .flat_map(|g| g.iter().enumerate())
            .filter(move |(_, g)| g.t == t)
    }

    /// Computes a minimal resolution through `s <= max_s`, `t <= max_t`,
    /// reusing whatever is already complete.
    pub fn extend(&mut self, max_s: u32, max_t: u32) -> Result<()> {
        while self.stages.len() <= max_s as usize {
            self.stages.push(Vec::new());
            self.stage_done.push(-1);
        }
        self.basis.ensure(max_t);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
        pool.install(|| {
            for t in 0..=max_t {
                let mut carried: Option<Vec<F2Vector>> = None;
                for s in 0..=max_s {
                    if self.stage_done[s as usize] >= t as i64 {
                        carried = None;
                        continue;
                    }
                    carried = Some(self.step(s, t, carried.take())?);
                    self.stage_done[s as usize] = t as i64;
                }
            }
            Ok(())
        })
    }

    /// Offsets of each generator's block in `(F_s)_t` and the total dimension.
    fn layout(&self, s: u32, t: u32) -> (Vec<Option<usize>>, usize) {
        let mut offsets = Vec::with_capacity(self.stages[s as usize].len());
        let mut total = 0;
        for g in &self.stages[s as usize] {
            if g.t <= t {
                offsets.push(Some(total));
                total += self.basis.basis(t - g.t).len();
            } else {
                offsets.push(None);
            }
        }
        (offsets, total)
    }

    /// Basis of `(F_s)_t` as `(generator, Milnor element)` pairs, in layout order.
    fn module_basis(&self, s: u32, t: u32) -> Vec<(usize, &MilnorElement)> {
        self.stages[s as usize]
            .iter()
            .enumerate()
            .filter(|(_, g)| g.t <= t)
            .flat_map(|(gi, g)| self.basis.basis(t - g.t).iter().map(move |m| (gi, m)))
            .collect()
    }

    /// Rows of the matrix of `d_s : (F_s)_t -> (F_{s-1})_t`, one per basis
    /// element of `(F_s)_t`, for `s >= 1`.
    fn differential_rows(&self, s: u32, t: u32) -> (Vec<F2Vector>, usize) {
        let (offsets, target_dim) = self.layout(s - 1, t);
        let source = self.module_basis(s, t);
        let gens = &self.stages[s as usize];
        let rows = source
            .par_iter()
            .map(|&(gi, a)| {
                let mut row = F2Vector::zeros(target_dim);
                for (target, b) in &gens[gi].differential {
                    let off = offsets[*target].expect("differential into a later degree");
                    for c in milnor_product(a, b).terms() {
                        row.flip(off + self.basis.index(c));
                    }
                }
                row
            })
            .collect();
        (rows, target_dim)
    }

    /// Kernel of `d_s` in degree `t`, as vectors over the basis of `(F_s)_t`.
    fn kernel(&self, s: u32, t: u32) -> Vec<F2Vector> {
        if s == 0 {
            let (_, dim) = self.layout(0, t);
            // augmentation is an isomorphism in degree 0
            return if t == 0 {
                Vec::new()
            } else {
                (0..dim).map(|i| F2Vector::unit(dim, i)).collect()
            };
        }
        let (rows, target_dim) = self.differential_rows(s, t);
        F2Matrix::from_row_vectors(target_dim, &rows)
            .transpose()
            .kernel_basis()
    }

    /// Computes stage `s` in degree `t` and returns the kernel of `d_s` there.
    fn step(&mut self, s: u32, t: u32, carried: Option<Vec<F2Vector>>) -> Result<Vec<F2Vector>> {
        let (_, source_dim) = self.layout(s, t);
        if source_dim > self.budget.max_module_dim {
            return Err(Error::Budget {
                s,
                t,
                completed_t: self.frontier().completed_t,
            });
        }
        if s == 0 {
            if t == 0 {
                self.stages[0].push(Generator {
                    t: 0,
                    differential: Vec::new(),
                });
            }
            return Ok(self.kernel(0, t));
        }

        let previous_kernel = match carried {
            Some(k) => k,
            None => self.kernel(s - 1, t),
        };
        let (rows, target_dim) = self.differential_rows(s, t);

        let mut image = Subspace::new(target_dim);
        for r in &rows {
            image.insert(r);
        }
        let kernel_old = F2Matrix::from_row_vectors(target_dim, &rows)
            .transpose()
            .kernel_basis();

        let target_basis: Vec<(usize, MilnorElement)> = self
            .module_basis(s - 1, t)
            .into_iter()
            .map(|(g, m)| (g, m.clone()))
            .collect();
        let mut new_gens = Vec::new();
        for v in &previous_kernel {
            if image.insert(v) {
                let differential = v.ones().map(|i| target_basis[i].clone()).collect();
                new_gens.push(Generator { t, differential });
            }
        }
        let added = new_gens.len();
        self.stages[s as usize].extend(new_gens);
        // new generators map injectively modulo the old image, so the kernel
        // only gains zero padding
        let dim = source_dim + added;
        Ok(kernel_old.into_iter().map(|v| v.padded(dim)).collect())
    }

    /// Ext chart over `(s, t)`; generators are labeled `h<i>` on the 1-line
    /// and `x<s>_<t>_<k>` elsewhere. Only completed bidegrees are included.
    pub fn ext_chart(&self, max_s: u32, max_t: u32) -> Chart {
        let mut chart = Chart::new(Grading::St);
        for s in 0..=max_s.min(self.stages.len().saturating_sub(1) as u32) {
            let done = self.stage_done[s as usize];
            for t in 0..=max_t {
                if t as i64 > done {
                    break;
                }
                let labels: Vec<String> = self
                    .generators_at(s, t)
                    .enumerate()
                    .map(|(k, _)| generator_label(s, t, k))
                    .collect();
                let n = labels.len();
                chart.set(&[s as i64, t as i64], n, labels);
            }
        }
        let f = self.frontier();
        if f.max_s < max_s as i64 || f.completed_t < max_t as i64 {
            chart.frontier = Some(f);
        }
        chart
    }

    /// `rank d_s + rank d_{s+1} = dim (F_s)_t` at every bidegree where both
    /// maps are complete. Returns the first failing bidegree.
    pub fn verify_exactness(&mut self, max_s: u32, max_t: u32) -> std::result::Result<(), String> {
        self.basis.ensure(max_t);
        for t in 0..=max_t {
            for s in 0..max_s.min(self.stages.len() as u32 - 1) {
                if self.stage_done[s as usize + 1] < t as i64 {
                    continue;
                }
                let (_, dim) = self.layout(s, t);
                let rank_s = if s == 0 {
                    usize::from(t == 0)
                } else {
                    let (rows, cols) = self.differential_rows(s, t);
                    F2Matrix::from_row_vectors(cols, &rows).rank()
                };
                let (rows, cols) = self.differential_rows(s + 1, t);
                let rank_next = F2Matrix::from_row_vectors(cols, &rows).rank();
                if rank_s + rank_next != dim {
                    return Err(format!(
                        "(s={s}, t={t}): rank d_s {rank_s} + rank d_(s+1) {rank_next} != {dim}"
                    ));
                }
            }
        }
        Ok(())
    }

    /// Every differential lands in the augmentation ideal: no term of the
    /// form `Sq() g'`. Equivalently the induced differential on
    /// `Hom(F_s, F_2)` vanishes.
    pub fn verify_minimality(&self) -> std::result::Result<(), String> {
        for (s, gens) in self.stages.iter().enumerate().skip(1) {
            for (i, g) in gens.iter().enumerate() {
                if let Some((target, _)) = g.differential.iter().find(|(_, m)| m.is_unit()) {
                    return Err(format!(
                        "generator {i} of stage {s} (t={}) hits generator {target} with a unit coefficient",
                        g.t
                    ));
                }
            }
        }
        Ok(())
    }

    /// Matrix of the dual differential `Hom(F_{s-1}, F_2) -> Hom(F_s, F_2)`
    /// in internal degree `t`.
    pub fn hom_differential(&self, s: u32, t: u32) -> F2Matrix {
        let sources: Vec<usize> = self.generators_at(s - 1, t).map(|(i, _)| i).collect();
        let targets: Vec<&Generator> = self.generators_at(s, t).map(|(_, g)| g).collect();
        let mut m = F2Matrix::zeros(targets.len(), sources.len());
        for (row, g) in targets.iter().enumerate() {
            for (target, b) in &g.differential {
                if b.is_unit() {
                    if let Some(col) = sources.iter().position(|i| i == target) {
                        m.set(row, col, !m.get(row, col));
                    }
                }
            }
        }
        m
    }

    /// Multiplication by `h_i` from `Ext^{s,t}` to `Ext^{s+1, t+2^i}` in the
    /// dual generator bases: the pairs `(k, k')` such that `Sq(2^i)` on the
    /// `k`-th generator appears in the differential of the `k'`-th.
    pub fn h_product(&self, i: u32, s: u32, t: u32) -> Vec<(usize, usize)> {
        let sq = MilnorElement::new(vec![1 << i]);
        let sources: Vec<usize> = self.generators_at(s, t).map(|(g, _)| g).collect();
        let mut out = Vec::new();
        for (k2, (_, g)) in self.generators_at(s + 1, t + (1 << i)).enumerate() {
            for (k, src) in sources.iter().enumerate() {
                let hits = g
                    .differential
                    .iter()
                    .filter(|(target, m)| target == src && *m == sq)
                    .count();
                if hits % 2 == 1 {
                    out.push((k, k2));
                }
            }
        }
        out
    }
}

pub fn generator_label(s: u32, t: u32, k: usize) -> String {
    if s == 1 && t.is_power_of_two() && k == 0 {
        format!("h{}", t.trailing_zeros())
    } else {
        format!("x{s}_{t}_{k}")
    }
}

/// `(s, t)` encoded in a label from [`generator_label`]; `None` for anything
/// else.
pub fn label_position(label: &str) -> Option<(u32, u32)> {
    if let Some(i) = label.strip_prefix('h') {
        let i: u32 = i.parse().ok()?;
        return (i < 31 && i.to_string() == label[1..]).then(|| (1, 1 << i));
    }
    let mut parts = label.strip_prefix('x')?.split('_');
    let s: u32 = parts.next()?.parse().ok()?;
    let t: u32 = parts.next()?.parse().ok()?;
    let k: usize = parts.next()?.parse().ok()?;
    (parts.next().is_none() && generator_label(s, t, k) == label).then_some((s, t))
}

/// Convenience wrapper: a fresh resolution through `(max_s, max_t)`.
pub fn minimal_resolution(max_s: u32, max_t: u32) -> Result<Resolution> {
    let mut r = Resolution::new();
    r.extend(max_s, max_t)?;
    Ok(r)
}
