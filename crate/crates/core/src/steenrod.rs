//! The mod 2 Steenrod algebra in the Milnor basis and its dual.
//!
//! `Sq(r_1, ..., r_k)` has degree `sum r_i (2^i - 1)`. The dual algebra
//! `A_* = F_2[xi_1, xi_2, ...]` has `|xi_i| = 2^i - 1` and coproduct
//! `psi(xi_n) = sum_{i=0}^{n} xi_{n-i}^{2^i} (x) xi_i`. The Milnor basis
//! element `Sq(R)` is dual to the monomial `xi^R`.
//!
//! Basis lists are ordered colexicographically: exponent sequences are
//! compared from the highest generator down, so in degree 3 the dual basis
//! reads `[xi_1^3, xi_2]`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

macro_rules! exponent_type {
    ($name:ident) => {
        #[derive(Clone, PartialEq, Eq, Hash, Default)]
        pub struct $name(Vec<u32>);

        impl $name {
            pub fn new(mut exponents: Vec<u32>) -> Self {
                while exponents.last() == Some(&0) {
                    exponents.pop();
                }
                Self(exponents)
            }

            pub fn unit() -> Self {
                Self(Vec::new())
            }

            pub fn exponents(&self) -> &[u32] {
                &self.0
            }

            pub fn is_unit(&self) -> bool {
                self.0.is_empty()
            }

            /// Classical degree `sum e_i (2^i - 1)`.
            pub fn degree(&self) -> u32 {
                self.0
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| e * ((1u32 << (i + 1)) - 1))
                    .sum()
            }
        }

        impl Ord for $name {
            fn cmp(&self, other: &Self) -> Ordering {
                self.0
                    .len()
                    .cmp(&other.0.len())
                    .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
            }
        }

        impl PartialOrd for $name {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }

        impl From<Vec<u32>> for $name {
            fn from(v: Vec<u32>) -> Self {
                Self::new(v)
            }
        }

        impl<const N: usize> From<[u32; N]> for $name {
            fn from(v: [u32; N]) -> Self {
                Self::new(v.to_vec())
            }
        }
    };
}

exponent_type!(MilnorElement);
exponent_type!(DualMonomial);

impl fmt::Debug for MilnorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sq(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for MilnorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl DualMonomial {
    /// `xi_n`, with `xi_0 = 1`.
    pub fn xi(n: usize) -> Self {
        if n == 0 {
            return Self::unit();
        }
        let mut e = vec![0; n];
        e[n - 1] = 1;
        Self(e)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        Self::new(self.0.iter().map(|e| e * k).collect())
    }
}

impl fmt::Debug for DualMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate().rev() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "xi{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for DualMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Bidegree `(2d, d)` of a monomial in the regraded algebra `G_**`, where
/// `d` is the classical degree.
pub fn g_bidegree(m: &DualMonomial) -> (i64, i64) {
    let d = m.degree() as i64;
    (2 * d, d)
}

/// A GF(2)-linear combination of basis terms, stored as a set (each present
/// term has coefficient 1).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct F2Sum<T: Ord>(BTreeSet<T>);

impl<T: Ord + Clone> F2Sum<T> {
    pub fn zero() -> Self {
        Self(BTreeSet::new())
    }

    pub fn from_term(t: T) -> Self {
        let mut s = Self::zero();
        s.toggle(t);
        s
    }

    pub fn toggle(&mut self, t: T) {
        if !self.0.remove(&t) {
            self.0.insert(t);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for t in &other.0 {
            self.toggle(t.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, t: &T) -> bool {
        self.0.contains(t)
    }

    pub fn terms(&self) -> impl Iterator<Item = &T> {
        self.0.iter()
    }
}

impl<T: Ord + Clone> FromIterator<T> for F2Sum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut s = Self::zero();
        for t in iter {
            s.toggle(t);
        }
        s
    }
}

impl<T: Ord + fmt::Debug> fmt::Debug for F2Sum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t:?}")?;
        }
        Ok(())
    }
}

/// Element of the Steenrod algebra in the Milnor basis.
pub type F2Poly = F2Sum<MilnorElement>;
/// Element of the dual Steenrod algebra.
pub type DualPoly = F2Sum<DualMonomial>;
/// Element of `A_* (x) A_*`.
pub type F2TensorPoly = F2Sum<(DualMonomial, DualMonomial)>;

impl DualPoly {
    pub fn one() -> Self {
        Self::from_term(DualMonomial::unit())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for a in self.terms() {
            for b in other.terms() {
                out.toggle(a.mul(b));
            }
        }
        out
    }
}

impl F2TensorPoly {
    pub fn one() -> Self {
        Self::from_term((DualMonomial::unit(), DualMonomial::unit()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a1, a2) in self.terms() {
            for (b1, b2) in other.terms() {
                out.toggle((a1.mul(b1), a2.mul(b2)));
            }
        }
        out
    }

    /// Swaps the two tensor factors.
    pub fn twisted(&self) -> Self {
        self.terms().map(|(a, b)| (b.clone(), a.clone())).collect()
    }
}

/// Parity of the multinomial `(a_1 + ... + a_n)! / prod a_i!`, which is
/// odd iff the binary expansions of the `a_i` are pairwise disjoint.
fn multinomial_odd(parts: &[u32]) -> bool {
    let mut seen = 0u32;
    for &p in parts {
        if seen & p != 0 {
            return false;
        }
        seen |= p;
    }
    true
}

/// Product `Sq(R) Sq(S)` by Milnor's matrix formula.
pub fn milnor_product(a: &MilnorElement, b: &MilnorElement) -> F2Poly {
    let r = a.exponents();
    let s = b.exponents();
    let rows = r.len();
    let cols = s.len();
    // x[i][j] for 0 <= i <= rows, 0 <= j <= cols; x[0][0] unused.
    let mut x = vec![vec![0u32; cols + 1]; rows + 1];
    let mut out = F2Poly::zero();
    let mut col_used = vec![0u32; cols + 1];
    fill_row(1, r, s, &mut x, &mut col_used, &mut out);
    out
}

fn fill_row(
    i: usize,
    r: &[u32],
    s: &[u32],
    x: &mut Vec<Vec<u32>>,
    col_used: &mut Vec<u32>,
    out: &mut F2Poly,
) {
    let rows = r.len();
    let cols = s.len();
    if i > rows {
        for j in 1..=cols {
            x[0][j] = s[j - 1] - col_used[j];
        }
        let mut t = Vec::with_capacity(rows + cols);
        let mut parts = Vec::new();
        for n in 1..=rows + cols {
            parts.clear();
            // anti-diagonal ii + jj = n
            for (ii, row) in x.iter().enumerate().take(n.min(rows) + 1) {
                if let Some(&v) = row.get(n - ii) {
                    parts.push(v);
                }
            }
            if !multinomial_odd(&parts) {
                return;
            }
            t.push(parts.iter().sum());
        }
        out.toggle(MilnorElement::new(t));
        return;
    }
    fill_cell(i, 1, r[i - 1], r, s, x, col_used, out);
}

#[allow(clippy::too_many_arguments)]
fn fill_cell(
    i: usize,
    j: usize,
    remaining: u32,
    r: &[u32],
    s: &[u32],
    x: &mut Vec<Vec<u32>>,
    col_used: &mut Vec<u32>,
    out: &mut F2Poly,
) {
    let cols = s.len();
    if j > cols {
        x[i][0] = remaining;
        fill_row(i + 1, r, s, x, col_used, out);
        return;
    }
    let weight = 1u32 << j;
    let max = (remaining / weight).min(s[j - 1] - col_used[j]);
    for v in 0..=max {
        x[i][j] = v;
        col_used[j] += v;
        fill_cell(i, j + 1, remaining - v * weight, r, s, x, col_used, out);
        col_used[j] -= v;
    }
    x[i][j] = 0;
}

/// Product of two Milnor-basis sums.
pub fn poly_product(a: &F2Poly, b: &F2Poly) -> F2Poly {
    let mut out = F2Poly::zero();
    for x in a.terms() {
        for y in b.terms() {
            out.add_assign(&milnor_product(x, y));
        }
    }
    out
}

/// `psi(xi_n)^{2^k} = sum_i xi_{n-i}^{2^{i+k}} (x) xi_i^{2^k}`.
fn xi_coproduct_power(n: usize, k: u32) -> F2TensorPoly {
    (0..=n)
        .map(|i| {
            (
                DualMonomial::xi(n - i).pow(1 << (i as u32 + k)),
                DualMonomial::xi(i).pow(1 << k),
            )
        })
        .collect()
}

/// Milnor coproduct of a monomial, extended multiplicatively from the
/// generators.
pub fn dual_coproduct(m: &DualMonomial) -> F2TensorPoly {
    let mut out = F2TensorPoly::one();
    for (idx, &e) in m.exponents().iter().enumerate() {
        let mut bits = e;
        let mut k = 0;
        while bits != 0 {
            if bits & 1 == 1 {
                out = out.mul(&xi_coproduct_power(idx + 1, k));
            }
            bits >>= 1;
            k += 1;
        }
    }
    out
}

pub fn dual_coproduct_poly(p: &DualPoly) -> F2TensorPoly {
    let mut out = F2TensorPoly::zero();
    for m in p.terms() {
        out.add_assign(&dual_coproduct(m));
    }
    out
}

/// `psi(m) - m (x) 1 - 1 (x) m`, the coproduct on the augmentation coideal.
pub fn reduced_coproduct(m: &DualMonomial) -> F2TensorPoly {
    let mut c = dual_coproduct(m);
    if !m.is_unit() {
        c.toggle((m.clone(), DualMonomial::unit()));
        c.toggle((DualMonomial::unit(), m.clone()));
    }
    c
}

/// Conjugation (antipode) of `xi_n`, from `sum_{i=0}^n xi_{n-i}^{2^i} chi(xi_i) = 0`.
pub fn conjugate_xi(n: usize) -> DualPoly {
    let mut chis: Vec<DualPoly> = vec![DualPoly::one()];
    for m in 1..=n {
        let mut c = DualPoly::zero();
        for (i, chi) in chis.iter().enumerate() {
            let lead = DualPoly::from_term(DualMonomial::xi(m - i).pow(1 << i));
            c.add_assign(&lead.mul(chi));
        }
        chis.push(c);
    }
    chis.swap_remove(n)
}

/// Exponent sequences `(e_1, ..., e_k)` with `sum e_i (2^i - 1) = d`, in
/// colexicographic order.
fn exponent_sequences(d: u32) -> Vec<Vec<u32>> {
    fn go(d: u32, idx: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if idx == 0 {
            // only xi_1 left; it absorbs the remainder
            current[0] = d;
            out.push(current.clone());
            return;
        }
        let w = (1u32 << (idx + 1)) - 1;
        for e in 0..=d / w {
            current[idx] = e;
            go(d - e * w, idx - 1, current, out);
        }
        current[idx] = 0;
    }
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut top = 0;
    while (1u32 << (top + 2)) - 1 <= d {
        top += 1;
    }
    let mut out = Vec::new();
    let mut current = vec![0; top + 1];
    go(d, top, &mut current, &mut out);
    out
}

pub fn milnor_basis(d: u32) -> Vec<MilnorElement> {
    let mut v: Vec<_> = exponent_sequences(d)
        .into_iter()
        .map(MilnorElement::new)
        .collect();
    v.sort();
    v
}

pub fn dual_basis(d: u32) -> Vec<DualMonomial> {
    let mut v: Vec<_> = exponent_sequences(d)
        .into_iter()
        .map(DualMonomial::new)
        .collect();
    v.sort();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashMap;

    fn sq(e: &[u32]) -> MilnorElement {
        MilnorElement::new(e.to_vec())
    }

    fn xi(e: &[u32]) -> DualMonomial {
        DualMonomial::new(e.to_vec())
    }

    /// Structure constants of the product read off the coproduct: the
    /// coefficient of `Sq(T)` in `Sq(R) Sq(S)` is the coefficient of
    /// `xi^R (x) xi^S` in `psi(xi^T)`.
    fn pairing_product(a: &MilnorElement, b: &MilnorElement) -> F2Poly {
        let d = a.degree() + b.degree();
        let target = (
            DualMonomial::new(a.exponents().to_vec()),
            DualMonomial::new(b.exponents().to_vec()),
        );
        dual_basis(d)
            .into_iter()
            .filter(|t| dual_coproduct(t).contains(&target))
            .map(|t| MilnorElement::new(t.exponents().to_vec()))
            .collect()
    }

    #[test]
    fn unit_is_neutral() {
        for d in 0..8 {
            for r in milnor_basis(d) {
                assert_eq!(milnor_product(&r, &MilnorElement::unit()), F2Poly::from_term(r.clone()));
                assert_eq!(milnor_product(&MilnorElement::unit(), &r), F2Poly::from_term(r.clone()));
            }
        }
    }

    #[test]
    fn sq1_squares_to_zero() {
        assert!(milnor_product(&sq(&[1]), &sq(&[1])).is_zero());
        assert!(pairing_product(&sq(&[1]), &sq(&[1])).is_zero());
    }

    #[test]
    fn sq1_sq2_does_not_commute() {
        let a = milnor_product(&sq(&[1]), &sq(&[2]));
        let b = milnor_product(&sq(&[2]), &sq(&[1]));
        assert_ne!(a, b);
        assert_eq!(a, pairing_product(&sq(&[1]), &sq(&[2])));
        assert_eq!(b, pairing_product(&sq(&[2]), &sq(&[1])));
        assert_eq!(a, F2Poly::from_term(sq(&[3])));
        assert_eq!(b, [sq(&[3]), sq(&[0, 1])].into_iter().collect());
    }

    #[test]
    fn coproduct_examples() {
        let one = DualMonomial::unit();
        assert_eq!(
            dual_coproduct(&xi(&[1])),
            [(xi(&[1]), one.clone()), (one.clone(), xi(&[1]))].into_iter().collect()
        );
        assert_eq!(
            dual_coproduct(&xi(&[0, 1])),
            [
                (xi(&[0, 1]), one.clone()),
                (xi(&[2]), xi(&[1])),
                (one.clone(), xi(&[0, 1]))
            ]
            .into_iter()
            .collect()
        );
        assert_eq!(
            dual_coproduct(&xi(&[2])),
            [(xi(&[2]), one.clone()), (one.clone(), xi(&[2]))].into_iter().collect()
        );
    }

    #[test]
    fn g_bidegree_examples() {
        assert_eq!(g_bidegree(&DualMonomial::unit()), (0, 0));
        assert_eq!(g_bidegree(&xi(&[1])), (2, 1));
        assert_eq!(g_bidegree(&xi(&[1, 1])), (8, 4));
    }

    #[test]
    fn basis_examples() {
        assert_eq!(milnor_basis(0), vec![MilnorElement::unit()]);
        assert_eq!(dual_basis(0), vec![DualMonomial::unit()]);
        assert_eq!(dual_basis(1), vec![xi(&[1])]);
        assert_eq!(dual_basis(3), vec![xi(&[3]), xi(&[0, 1])]);
        // Poincare series prod 1/(1 - x^{2^i - 1})
        let dims: Vec<usize> = (0..=16).map(|d| milnor_basis(d).len()).collect();
        assert_eq!(dims, vec![1, 1, 1, 2, 2, 2, 3, 4, 4, 5, 6, 6, 7, 8, 9, 11, 12]);
        for d in 0..=20 {
            for m in dual_basis(d) {
                assert_eq!(m.degree(), d);
            }
        }
    }

    #[test]
    fn product_dual_to_coproduct_through_degree_12() {
        for d in 0..=12u32 {
            for da in 0..=d {
                for a in milnor_basis(da) {
                    for b in milnor_basis(d - da) {
                        assert_eq!(
                            milnor_product(&a, &b),
                            pairing_product(&a, &b),
                            "{a:?} * {b:?}"
                        );
                    }
                }
            }
        }
    }

    fn apply_left(p: &F2TensorPoly) -> BTreeSet<(DualMonomial, DualMonomial, DualMonomial)> {
        let mut out = BTreeSet::new();
        for (a, b) in p.terms() {
            for (x, y) in dual_coproduct(a).terms() {
                let key = (x.clone(), y.clone(), b.clone());
                if !out.remove(&key) {
                    out.insert(key);
                }
            }
        }
        out
    }

    fn apply_right(p: &F2TensorPoly) -> BTreeSet<(DualMonomial, DualMonomial, DualMonomial)> {
        let mut out = BTreeSet::new();
        for (a, b) in p.terms() {
            for (x, y) in dual_coproduct(b).terms() {
                let key = (a.clone(), x.clone(), y.clone());
                if !out.remove(&key) {
                    out.insert(key);
                }
            }
        }
        out
    }

    #[test]
    fn coassociative_and_counital_through_degree_12() {
        for d in 0..=12 {
            for m in dual_basis(d) {
                let c = dual_coproduct(&m);
                assert_eq!(apply_left(&c), apply_right(&c), "{m:?}");
                let left: DualPoly = c
                    .terms()
                    .filter(|(a, _)| a.is_unit())
                    .map(|(_, b)| b.clone())
                    .collect();
                let right: DualPoly = c
                    .terms()
                    .filter(|(_, b)| b.is_unit())
                    .map(|(a, _)| a.clone())
                    .collect();
                assert_eq!(left, DualPoly::from_term(m.clone()));
                assert_eq!(right, DualPoly::from_term(m.clone()));
                for (a, b) in c.terms() {
                    assert_eq!(a.degree() + b.degree(), d);
                }
            }
        }
    }

    #[test]
    fn conjugation_is_an_antipode() {
        // chi(xi_1) = xi_1, chi(xi_2) = xi_2 + xi_1^3
        assert_eq!(conjugate_xi(1), DualPoly::from_term(xi(&[1])));
        assert_eq!(conjugate_xi(2), [xi(&[0, 1]), xi(&[3])].into_iter().collect());
        for n in 1..=4 {
            let psi = dual_coproduct(&DualMonomial::xi(n));
            let mut sum = DualPoly::zero();
            for (a, b) in psi.terms() {
                let mut chi_b = DualPoly::one();
                for (i, &e) in b.exponents().iter().enumerate() {
                    for _ in 0..e {
                        chi_b = chi_b.mul(&conjugate_xi(i + 1));
                    }
                }
                sum.add_assign(&DualPoly::from_term(a.clone()).mul(&chi_b));
            }
            assert!(sum.is_zero(), "antipode identity fails for xi_{n}");
        }
    }

    fn arb_milnor(max_degree: u32) -> impl Strategy<Value = MilnorElement> {
        (0..=max_degree).prop_flat_map(|d| {
            let basis = milnor_basis(d);
            (0..basis.len()).prop_map(move |i| basis[i].clone())
        })
    }

    fn arb_dual(max_degree: u32) -> impl Strategy<Value = DualMonomial> {
        arb_milnor(max_degree).prop_map(|m| DualMonomial::new(m.exponents().to_vec()))
    }

    proptest! {
        #[test]
        fn coproduct_is_multiplicative(a in arb_dual(5), b in arb_dual(5)) {
            prop_assert_eq!(
                dual_coproduct(&a.mul(&b)),
                dual_coproduct(&a).mul(&dual_coproduct(&b))
            );
        }

        #[test]
        fn product_is_associative(a in arb_milnor(3), b in arb_milnor(3), c in arb_milnor(2)) {
            let ab_c = poly_product(&milnor_product(&a, &b), &F2Poly::from_term(c.clone()));
            let a_bc = poly_product(&F2Poly::from_term(a.clone()), &milnor_product(&b, &c));
            prop_assert_eq!(&ab_c, &a_bc);

            // oracle: coefficient of Sq(T) is the coefficient of
            // xi^A (x) xi^B (x) xi^C in (psi (x) 1) psi (xi^T)
            let key = (
                DualMonomial::new(a.exponents().to_vec()),
                DualMonomial::new(b.exponents().to_vec()),
                DualMonomial::new(c.exponents().to_vec()),
            );
            let d = a.degree() + b.degree() + c.degree();
            let oracle: F2Poly = dual_basis(d)
                .into_iter()
                .filter(|t| apply_left(&dual_coproduct(t)).contains(&key))
                .map(|t| MilnorElement::new(t.exponents().to_vec()))
                .collect();
            prop_assert_eq!(ab_c, oracle);
        }

        #[test]
        fn product_terms_are_homogeneous(a in arb_milnor(10), b in arb_milnor(10)) {
            let d = a.degree() + b.degree();
            for t in milnor_product(&a, &b).terms() {
                prop_assert_eq!(t.degree(), d);
            }
        }
    }

    #[test]
    fn basis_has_no_duplicates() {
        for d in 0..=24 {
            let b = milnor_basis(d);
            let mut seen = HashMap::new();
            for m in &b {
                assert!(seen.insert(m.clone(), ()).is_none());
            }
            assert!(b.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
