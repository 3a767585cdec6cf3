//! Property tests for the regradings, the rho-module assembly and the
//! rewriting system.

use std::sync::OnceLock;

use proptest::prelude::*;

use isochart::deformation::{self, Differential, ExtWindow};
use isochart::ext::{self, minimal_resolution};
use isochart::presentations::{BuiltinAlgebra, Polynomial, PresentedAlgebra};
use isochart::{Chart, Grading};

fn st_chart() -> impl Strategy<Value = Chart> {
    prop::collection::btree_map((0i64..12, 0i64..40), 1usize..4, 0..30).prop_map(|m| {
        let mut c = Chart::new(Grading::St);
        for ((s, t), d) in m {
            c.set_dim(&[s, t], d);
        }
        c
    })
}

proptest! {
    #[test]
    fn crho_regrading_is_a_bijection(c in st_chart()) {
        let crho = ext::crho_chart(&c);
        prop_assert_eq!(crho.total_dim(), c.total_dim());
        prop_assert_eq!(crho.len(), c.len());
        prop_assert_eq!(ext::ext_from_crho(&crho), c.clone());
        for (k, e) in crho.entries() {
            // stem is preserved as p - q
            prop_assert_eq!(c.dim(&[2 * k[1] - k[0], k[1]]), e.dim);
        }
    }

    #[test]
    fn trigrading_sits_on_the_diagonal(c in st_chart()) {
        let g = ext::trigraded_ext_g(&c);
        prop_assert_eq!(g.total_dim(), c.total_dim());
        for (k, _) in g.entries() {
            prop_assert_eq!(k[1], 2 * k[2]);
        }
    }
}

const MAX_S: u32 = 7;
const MAX_T: u32 = 22;

fn e2() -> &'static Chart {
    static E2: OnceLock<Chart> = OnceLock::new();
    E2.get_or_init(|| minimal_resolution(MAX_S, MAX_T + 1).unwrap().ext_chart(MAX_S, MAX_T + 1))
}

/// Every offset-valid `(r, source, target)` within the chart.
fn candidates() -> Vec<Differential> {
    let classes: Vec<(i64, i64, String)> = e2()
        .entries()
        .flat_map(|(k, e)| e.labels.iter().map(move |l| (k[0], k[1], l.clone())))
        .collect();
    let mut out = Vec::new();
    for (s, t, x) in &classes {
        for (s2, t2, y) in &classes {
            let r = s2 - s;
            if r >= 2 && t2 - t == r - 1 {
                out.push(Differential::new(r as u32, x.clone(), y.clone()));
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Any consistent set of differentials assembles into a module whose
    /// two fibers check out.
    #[test]
    fn assembly_invariants_hold(picks in prop::collection::vec(any::<prop::sample::Index>(), 0..8)) {
        let all = candidates();
        let mut used = std::collections::HashSet::new();
        let mut ds = Vec::new();
        for i in picks {
            let d = i.get(&all);
            if used.contains(&d.source) || used.contains(&d.target) {
                continue;
            }
            used.insert(d.source.clone());
            used.insert(d.target.clone());
            ds.push(d.clone());
        }
        let max_stem = (MAX_T - MAX_S) as i64;
        let window = ExtWindow::new(MAX_S as i64, MAX_T as i64).with_max_stem(max_stem);
        let picked = ds.len();
        let a = deformation::assemble_and_check(e2(), window, ds).unwrap();
        for r in &a.reports {
            prop_assert!(r.passed, "{}", r);
        }
        // records past the window's edge stem are dropped
        let n = a.data.differentials().len();
        prop_assert!(n <= picked);
        let finite = a.module.towers().iter().filter(|t| t.length.is_some()).count();
        prop_assert_eq!(finite, n);
        prop_assert_eq!(a.module.towers().len() + n, a.data.e2().total_dim());
    }
}

fn algebra(which: usize) -> &'static PresentedAlgebra {
    static ALGS: OnceLock<Vec<PresentedAlgebra>> = OnceLock::new();
    &ALGS.get_or_init(|| BuiltinAlgebra::ALL.iter().map(|a| a.presentation(16)).collect())[which]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_forms_are_normal_and_stable(which in 0..4usize, p in -8i64..=8, q in -8i64..=8, pick in any::<prop::sample::Index>()) {
        let alg = algebra(which);
        prop_assume!(p.abs() + q.abs() <= 16);
        let monos = alg.monomials_in(p, q).unwrap();
        prop_assume!(!monos.is_empty());
        let x = Polynomial::from_term(pick.get(&monos).clone());
        let nf = alg.normal_form(&x).unwrap();
        for m in nf.terms() {
            prop_assert!(alg.is_normal(m));
            prop_assert_eq!(alg.bidegree(m), (p, q));
        }
        prop_assert_eq!(alg.normal_form(&nf).unwrap(), nf);
    }

    #[test]
    fn normal_form_is_linear(which in 0..4usize, p in -6i64..=6, q in -6i64..=6, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let alg = algebra(which);
        let monos = alg.monomials_in(p, q).unwrap();
        prop_assume!(!monos.is_empty());
        let x = Polynomial::from_term(a.get(&monos).clone());
        let y = Polynomial::from_term(b.get(&monos).clone());
        let mut sum = x.clone();
        sum.add_assign(&y);
        let mut expect = alg.normal_form(&x).unwrap();
        expect.add_assign(&alg.normal_form(&y).unwrap());
        prop_assert_eq!(alg.normal_form(&sum).unwrap(), expect);
    }
}
