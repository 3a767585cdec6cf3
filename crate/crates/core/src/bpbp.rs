//! Truncated structure maps of `(BP_*, BP_*BP)` at the prime 2, built from
//! the logarithm of the formal group law with Hazewinkel generators.
//!
//! Everything is exact rational arithmetic. Series are truncated above a
//! fixed internal degree, with `|v_i| = |t_i| = 2(2^i - 1)`.
//!
//! Tensor powers of `BP_*BP` over `BP_*` are written with all `v`'s moved
//! to the far left, and `t`'s tagged by the factor they live in: `T(0, i)`
//! is `t_i` in `BP_*BP` itself, `T(1, i)`, `T(2, i)`, `T(3, i)` are `t_i`
//! in the first, second and third tensor factor.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::chart::{Chart, Grading};
use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::steenrod::{
    conjugate_xi, dual_basis, dual_coproduct, dual_coproduct_poly, g_bidegree, DualMonomial, DualPoly,
    F2TensorPoly,
};

pub const DEFAULT_DEGREE: u32 = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    V(u8),
    L(u8),
    /// `(tensor factor, index)`.
    T(u8, u8),
}

impl Var {
    pub fn index(self) -> u8 {
        match self {
            Var::V(i) | Var::L(i) | Var::T(_, i) => i,
        }
    }

    pub fn degree(self) -> u32 {
        2 * ((1 << self.index()) - 1)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Var::V(i) => write!(f, "v{i}"),
            Var::L(i) => write!(f, "l{i}"),
            Var::T(k, i) => write!(f, "t{i}{}", "'".repeat(k as usize)),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<Var, u32>);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Var) -> Self {
        Monomial(BTreeMap::from([(v, 1)]))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(v, e)| v.degree() * e).sum()
    }

    pub fn factors(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().map(|(&v, &e)| (v, e))
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (&v, &e) in &other.0 {
            *out.entry(v).or_insert(0) += e;
        }
        Monomial(out)
    }

    fn has(&self, pred: impl Fn(Var) -> bool) -> bool {
        self.0.keys().any(|&v| pred(v))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial with rational coefficients, truncated above `max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    terms: BTreeMap<Monomial, BigRational>,
    max_degree: u32,
}

impl TruncatedSeries {
    pub fn zero(max_degree: u32) -> Self {
        Self {
            terms: BTreeMap::new(),
            max_degree,
        }
    }

    pub fn constant(c: i64, max_degree: u32) -> Self {
        Self::zero(max_degree).plus_term(Monomial::one(), BigRational::from_integer(c.into()))
    }

    pub fn one(max_degree: u32) -> Self {
        Self::constant(1, max_degree)
    }

    pub fn var(v: Var, max_degree: u32) -> Self {
        Self::zero(max_degree).plus_term(Monomial::var(v), BigRational::one())
    }

    fn plus_term(mut self, m: Monomial, c: BigRational) -> Self {
        self.add_term(m, c);
        self
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if m.degree() > self.max_degree || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.max_degree);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.max_degree);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Ring map sending each variable to its image under `f`, or to itself
    /// when `f` returns `None`.
    pub fn substitute(&self, f: &dyn Fn(Var) -> Option<TruncatedSeries>) -> Self {
        let mut cache: BTreeMap<(Var, u32), TruncatedSeries> = BTreeMap::new();
        let mut out = Self::zero(self.max_degree);
        for (m, c) in &self.terms {
            let mut prod = Self::one(self.max_degree);
            for (v, e) in m.factors() {
                let power = cache
                    .entry((v, e))
                    .or_insert_with(|| f(v).unwrap_or_else(|| Self::var(v, self.max_degree)).pow(e));
                prod = &prod * power;
            }
            out = &out + &prod.scale(c);
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Every denominator is a power of 2.
    pub fn has_dyadic_denominators(&self) -> bool {
        self.terms.values().all(|c| {
            let d = c.denom();
            d.is_positive() && (d & (d - BigInt::one())).is_zero()
        })
    }

    pub fn require_integral(&self, what: &str) -> Result<()> {
        if self.is_integral() {
            Ok(())
        } else {
            Err(Error::NonIntegral(format!("{what} = {self}")))
        }
    }

    /// Reduction modulo `(2, v_1, v_2, ...)`: the odd-coefficient monomials
    /// free of `v`. Requires integral coefficients.
    pub fn mod_two_and_v(&self) -> Result<Vec<Monomial>> {
        self.require_integral("reduction mod (2, v)")?;
        Ok(self
            .terms
            .iter()
            .filter(|(m, c)| !m.has(|v| matches!(v, Var::V(_))) && c.numer().bit(0))
            .map(|(m, _)| m.clone())
            .collect())
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let mut out = self.clone();
        out.max_degree = self.max_degree.min(rhs.max_degree);
        out.terms.retain(|m, _| m.degree() <= out.max_degree);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(&-BigRational::one())
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self + &(-rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(self.max_degree.min(rhs.max_degree));
        for (a, x) in &self.terms {
            let da = a.degree();
            for (b, y) in &rhs.terms {
                if da + b.degree() <= out.max_degree {
                    out.add_term(a.mul(b), x * y);
                }
            }
        }
        out
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // by degree, then monomial order
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| (m.degree(), (*m).clone()));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            match (i, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let unit = m.0.is_empty();
            if mag.is_one() {
                write!(f, "{m}")?;
            } else if unit {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Largest `n` with `|v_n| <= max_degree`.
pub fn index_bound(max_degree: u32) -> usize {
    let mut n = 0;
    while 2 * ((1u32 << (n + 1)) - 1) <= max_degree {
        n += 1;
    }
    n
}

/// Logarithm coefficients `l_n` as polynomials in the `v`'s, and the `v`'s
/// back as polynomials in the `l`'s.
#[derive(Clone, Debug)]
pub struct Hazewinkel {
    pub max_degree: u32,
    l: Vec<TruncatedSeries>,
    v_in_l: Vec<TruncatedSeries>,
}

/// `2 l_n = sum_{0 <= i < n} l_i v_{n-i}^{2^i}` with `l_0 = 1`.
pub fn hazewinkel_setup(max_degree: u32) -> Hazewinkel {
    let top = index_bound(max_degree);
    let half = BigRational::new(1.into(), 2.into());
    let v = |i: usize| TruncatedSeries::var(Var::V(i as u8), max_degree);
    let mut l = vec![TruncatedSeries::one(max_degree)];
    for n in 1..=top {
        let mut sum = TruncatedSeries::zero(max_degree);
        for (i, li) in l.iter().enumerate() {
            sum = &sum + &(li * &v(n - i).pow(1 << i));
        }
        l.push(sum.scale(&half));
    }
    // v_n = 2 l_n - sum_{1 <= i < n} l_i v_{n-i}^{2^i}, substituted recursively
    let lv = |i: usize| TruncatedSeries::var(Var::L(i as u8), max_degree);
    let mut v_in_l = vec![TruncatedSeries::constant(2, max_degree)];
    for n in 1..=top {
        let mut x = lv(n).scale(&BigRational::from_integer(2.into()));
        for i in 1..n {
            x = &x - &(&lv(i) * &v_in_l[n - i].pow(1 << i));
        }
        v_in_l.push(x);
    }
    Hazewinkel {
        max_degree,
        l,
        v_in_l,
    }
}

impl Hazewinkel {
    pub fn top(&self) -> usize {
        self.l.len() - 1
    }

    pub fn l(&self, n: usize) -> &TruncatedSeries {
        &self.l[n]
    }

    pub fn v_in_l(&self, n: usize) -> &TruncatedSeries {
        &self.v_in_l[n]
    }

    /// Substituting `l_i(v)` into `v_n(l)` gives back `v_n`.
    pub fn round_trip_check(&self) -> CheckReport {
        let mut report = CheckReport::pass(format!("logarithm round trip, degree <= {}", self.max_degree));
        for n in 1..=self.top() {
            let back = self.v_in_l[n].substitute(&|var| match var {
                Var::L(i) => Some(self.l[i as usize].clone()),
                _ => None,
            });
            if back != TruncatedSeries::var(Var::V(n as u8), self.max_degree) {
                report.record_failure(format!("v{n} -> {back}"));
            }
            if !self.l[n].has_dyadic_denominators() {
                report.record_failure(format!("l{n} has a non-dyadic denominator"));
            }
        }
        report
    }
}

/// Right unit and coproduct of `BP_*BP`, truncated.
#[derive(Clone, Debug)]
pub struct HopfAlgebroid {
    pub hazewinkel: Hazewinkel,
    eta_r: Vec<TruncatedSeries>,
    delta: Vec<TruncatedSeries>,
}

impl HopfAlgebroid {
    pub fn new(max_degree: u32) -> Result<Self> {
        let hazewinkel = hazewinkel_setup(max_degree);
        let top = hazewinkel.top();
        let d = max_degree;
        let t = |k: u8, i: usize| {
            if i == 0 {
                TruncatedSeries::one(d)
            } else {
                TruncatedSeries::var(Var::T(k, i as u8), d)
            }
        };
        let l = |i: usize| hazewinkel.l(i).clone();

        // eta_R(l_n) = sum_i l_i t_{n-i}^{2^i}
        let eta_l: Vec<TruncatedSeries> = (0..=top)
            .map(|n| {
                (0..=n).fold(TruncatedSeries::zero(d), |acc, i| &acc + &(&l(i) * &t(0, n - i).pow(1 << i)))
            })
            .collect();
        let mut eta_r = vec![TruncatedSeries::constant(2, d)];
        for n in 1..=top {
            let mut x = eta_l[n].scale(&BigRational::from_integer(2.into()));
            for i in 1..n {
                x = &x - &(&eta_l[i] * &eta_r[n - i].pow(1 << i));
            }
            x.require_integral(&format!("eta_R(v{n})"))?;
            eta_r.push(x);
        }

        // sum_{i+j=n} l_i D(t_j)^{2^i} = sum_{i+j+k=n} l_i t'_j^{2^i} t''_k^{2^{i+j}}
        let mut delta = vec![TruncatedSeries::one(d)];
        for n in 1..=top {
            let mut x = TruncatedSeries::zero(d);
            for i in 0..=n {
                for j in 0..=n - i {
                    let k = n - i - j;
                    let term = &(&l(i) * &t(1, j).pow(1 << i)) * &t(2, k).pow(1 << (i + j));
                    x = &x + &term;
                }
            }
            for i in 1..=n {
                x = &x - &(&l(i) * &delta[n - i].pow(1 << i));
            }
            x.require_integral(&format!("Delta(t{n})"))?;
            delta.push(x);
        }
        Ok(Self {
            hazewinkel,
            eta_r,
            delta,
        })
    }

    pub fn max_degree(&self) -> u32 {
        self.hazewinkel.max_degree
    }

    pub fn top(&self) -> usize {
        self.hazewinkel.top()
    }

    fn check_index(&self, n: usize) -> Result<()> {
        if n > self.top() {
            Err(Error::Window(format!(
                "index {n} exceeds the bound {} for degree {}",
                self.top(),
                self.max_degree()
            )))
        } else {
            Ok(())
        }
    }

    /// `eta_R(v_n)` in `v` and `t = T(0, _)`; `n = 0` gives `eta_R(2) = 2`.
    pub fn right_unit(&self, n: usize) -> Result<&TruncatedSeries> {
        self.check_index(n)?;
        Ok(&self.eta_r[n])
    }

    /// `Delta(t_n)` in `v`, `t' = T(1, _)` and `t'' = T(2, _)`.
    pub fn coproduct_t(&self, n: usize) -> Result<&TruncatedSeries> {
        self.check_index(n)?;
        Ok(&self.delta[n])
    }

    /// Re-tags `t`'s from factor `from` to `to`.
    fn retag(x: &TruncatedSeries, map: &[(u8, u8)]) -> TruncatedSeries {
        x.substitute(&|v| match v {
            Var::T(k, i) => map
                .iter()
                .find(|(a, _)| *a == k)
                .map(|&(_, b)| TruncatedSeries::var(Var::T(b, i), x.max_degree())),
            _ => None,
        })
    }

    pub fn counit_check(&self) -> CheckReport {
        let d = self.max_degree();
        let mut report = CheckReport::pass(format!("counit laws, degree <= {d}"));
        for n in 1..=self.top() {
            let tn = TruncatedSeries::var(Var::T(0, n as u8), d);
            let left = self.delta[n].substitute(&|v| match v {
                Var::T(1, _) => Some(TruncatedSeries::zero(d)),
                Var::T(2, i) => Some(TruncatedSeries::var(Var::T(0, i), d)),
                _ => None,
            });
            let right = self.delta[n].substitute(&|v| match v {
                Var::T(2, _) => Some(TruncatedSeries::zero(d)),
                Var::T(1, i) => Some(TruncatedSeries::var(Var::T(0, i), d)),
                _ => None,
            });
            if left != tn {
                report.record_failure(format!("(e x 1) Delta(t{n}) = {left}"));
            }
            if right != tn {
                report.record_failure(format!("(1 x e) Delta(t{n}) = {right}"));
            }
            let eps_eta = self.eta_r[n].substitute(&|v| match v {
                Var::T(..) => Some(TruncatedSeries::zero(d)),
                _ => None,
            });
            if eps_eta != TruncatedSeries::var(Var::V(n as u8), d) {
                report.record_failure(format!("e(eta_R(v{n})) = {eps_eta}"));
            }
        }
        report
    }

    /// `(Delta x 1) Delta = (1 x Delta) Delta` on every `t_n`. On the right
    /// factor, coefficients pass through the middle tensor sign, so `v`
    /// becomes `eta_R(v)` written in the first factor.
    pub fn coassociativity_check(&self) -> CheckReport {
        let d = self.max_degree();
        let mut report = CheckReport::pass(format!("coassociativity, degree <= {d}"));
        let eta_first: Vec<TruncatedSeries> = self.eta_r.iter().map(|x| Self::retag(x, &[(0, 1)])).collect();
        let delta_shifted: Vec<TruncatedSeries> = self
            .delta
            .iter()
            .map(|x| {
                Self::retag(x, &[(1, 2), (2, 3)]).substitute(&|v| match v {
                    Var::V(i) => Some(eta_first[i as usize].clone()),
                    _ => None,
                })
            })
            .collect();
        for n in 1..=self.top() {
            let lhs = self.delta[n].substitute(&|v| match v {
                Var::T(1, i) => Some(self.delta[i as usize].clone()),
                Var::T(2, i) => Some(TruncatedSeries::var(Var::T(3, i), d)),
                _ => None,
            });
            let rhs = self.delta[n].substitute(&|v| match v {
                Var::T(2, i) => Some(delta_shifted[i as usize].clone()),
                _ => None,
            });
            if lhs != rhs {
                report.record_failure(format!("t{n}: {lhs} != {rhs}"));
            }
        }
        report
    }

    /// `eta_R` applied as a ring map to `l_n(v)` must give
    /// `sum_i l_i t_{n-i}^{2^i}`; this exercises multiplicativity on every
    /// monomial appearing in the logarithm.
    pub fn ring_map_check(&self) -> CheckReport {
        let d = self.max_degree();
        let mut report = CheckReport::pass(format!("eta_R is multiplicative, degree <= {d}"));
        let h = &self.hazewinkel;
        for n in 1..=self.top() {
            let lhs = h.l(n).substitute(&|v| match v {
                Var::V(i) => Some(self.eta_r[i as usize].clone()),
                _ => None,
            });
            let mut rhs = TruncatedSeries::zero(d);
            for i in 0..=n {
                let t = if i == n {
                    TruncatedSeries::one(d)
                } else {
                    TruncatedSeries::var(Var::T(0, (n - i) as u8), d)
                };
                rhs = &rhs + &(h.l(i) * &t.pow(1 << i));
            }
            if lhs != rhs {
                report.record_failure(format!("eta_R(l{n}) mismatch: {lhs} vs {rhs}"));
            }
        }
        for i in 1..=self.top() {
            for j in i..=self.top() {
                let vv = &TruncatedSeries::var(Var::V(i as u8), d) * &TruncatedSeries::var(Var::V(j as u8), d);
                if vv.is_zero() {
                    continue;
                }
                let image = vv.substitute(&|v| match v {
                    Var::V(k) => Some(self.eta_r[k as usize].clone()),
                    _ => None,
                });
                if image != &self.eta_r[i] * &self.eta_r[j] {
                    report.record_failure(format!("eta_R(v{i} v{j})"));
                }
            }
        }
        report
    }

    /// JSON dump of `l_n`, `eta_R(v_n)` and `Delta(t_n)`.
    pub fn to_json(&self) -> serde_json::Value {
        let table = |xs: &[TruncatedSeries], name: &str| -> serde_json::Map<String, serde_json::Value> {
            xs.iter()
                .enumerate()
                .skip(1)
                .map(|(n, x)| (format!("{name}{n}"), serde_json::Value::String(x.to_string())))
                .collect()
        };
        serde_json::json!({
            "max_degree": self.max_degree(),
            "notation": "t_i' and t_i'' are t_i in the first and second tensor factor",
            "log": table(&self.hazewinkel.l, "l"),
            "right_unit": table(&self.eta_r, "v"),
            "coproduct": table(&self.delta, "t"),
        })
    }
}

/// Image in `A_* (x) A_*` of a reduced tensor expression, with
/// `t'_i -> f(i) (x) 1` and `t''_i -> 1 (x) f(i)`.
fn tensor_image(terms: &[Monomial], f: &dyn Fn(usize) -> DualPoly) -> F2TensorPoly {
    let mut out = F2TensorPoly::zero();
    for m in terms {
        let mut prod = F2TensorPoly::one();
        for (v, e) in m.factors() {
            let Var::T(k, i) = v else { unreachable!("v and l are gone mod (2, v)") };
            let x = (0..e).fold(DualPoly::one(), |acc, _| acc.mul(&f(i as usize)));
            let factor: F2TensorPoly = x
                .terms()
                .map(|t| {
                    if k == 1 {
                        (t.clone(), DualMonomial::unit())
                    } else {
                        (DualMonomial::unit(), t.clone())
                    }
                })
                .collect();
            prod = prod.mul(&factor);
        }
        out.add_assign(&prod);
    }
    out
}

fn show_tensor(x: &F2TensorPoly) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mono = |m: &DualMonomial| {
        let parts: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("xi{}", i + 1) } else { format!("xi{}^{e}", i + 1) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    };
    x.terms()
        .map(|(a, b)| format!("{} (x) {}", mono(a), mono(b)))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Reduction of the Hopf algebroid modulo `(2, v_i, eta_R(v_i))`, compared
/// with the dual Steenrod algebra from the `steenrod` module.
///
/// `Delta(t_n)` reduces to `sum_i t_i (x) t_{n-i}^{2^i}`, which is `psi(xi_n)`
/// with its tensor factors exchanged; equivalently, it is `psi(chi xi_n)`
/// under `t_i -> chi(xi_i)`. Both forms are checked.
pub fn quotient_check(n_max: usize, max_degree: u32) -> Result<CheckReport> {
    let h = HopfAlgebroid::new(max_degree)?;
    h.check_index(n_max)?;
    let mut report = CheckReport::pass(format!("BP_*BP mod (2, v) = A_*, n <= {n_max}"));

    // (a) eta_R(v_i) lies in (2, v), so the quotient is F_2[t_1, t_2, ...]
    for i in 1..=h.top() {
        let red = h.right_unit(i)?.mod_two_and_v()?;
        if !red.is_empty() {
            let shown: Vec<String> = red.iter().map(|m| m.to_string()).collect();
            report.record_failure(format!("eta_R(v{i}) mod (2, v) = {}", shown.join(" + ")));
        }
    }
    let t_dims = monomial_counts(&(1..=h.top()).map(|i| Var::T(0, i as u8)).collect::<Vec<_>>(), max_degree);
    for (deg, &count) in t_dims.iter().enumerate() {
        let expected = if deg % 2 == 0 { dual_basis(deg as u32 / 2).len() } else { 0 };
        if count != expected {
            report.record_failure(format!("degree {deg}: {count} t-monomials, A_* has {expected}"));
        }
    }

    // (b) coproducts, (c) degrees
    for n in 0..=n_max {
        let reduced = h.coproduct_t(n)?.mod_two_and_v()?;
        let xi = |i: usize| DualPoly::from_term(DualMonomial::xi(i));
        let image = tensor_image(&reduced, &xi);
        let psi = if n == 0 {
            F2TensorPoly::one()
        } else {
            dual_coproduct(&DualMonomial::xi(n)).twisted()
        };
        if image != psi {
            report.record_failure(format!(
                "n={n}: Delta(t{n}) -> {}, but twisted psi(xi{n}) = {}",
                show_tensor(&image),
                show_tensor(&psi)
            ));
        }
        let chi_image = tensor_image(&reduced, &|i| conjugate_xi(i));
        let chi_psi = if n == 0 {
            F2TensorPoly::one()
        } else {
            dual_coproduct_poly(&conjugate_xi(n))
        };
        if chi_image != chi_psi {
            report.record_failure(format!(
                "n={n}: under t -> chi(xi), {} vs {}",
                show_tensor(&chi_image),
                show_tensor(&chi_psi)
            ));
        }
        if n > 0 {
            let deg = Var::T(0, n as u8).degree() as i64;
            let g = g_bidegree(&DualMonomial::xi(n));
            if g != (deg, deg / 2) {
                report.record_failure(format!("|t{n}| = {deg} but xi{n} sits in {g:?}"));
            }
        }
    }
    Ok(report.with_detail(format!("degree bound {max_degree}, index bound {}", h.top())))
}

/// Number of monomials in `vars` of each degree `0..=max_degree`.
fn monomial_counts(vars: &[Var], max_degree: u32) -> Vec<usize> {
    let mut counts = vec![0usize; max_degree as usize + 1];
    counts[0] = 1;
    for v in vars {
        let d = v.degree() as usize;
        if d == 0 || d > max_degree as usize {
            continue;
        }
        for k in d..=max_degree as usize {
            counts[k] += counts[k - d];
        }
    }
    counts
}

/// Graded dimensions of `BP_* / (2, v_1, ..., v_{n-1})` through
/// `max_degree`.
pub fn pure_isotropic_colimit(n: usize, max_degree: u32) -> Result<Chart> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let top = index_bound(max_degree);
    let vars: Vec<Var> = (n..=top.max(n)).map(|i| Var::V(i as u8)).collect();
    let mut chart = Chart::new(Grading::Degree);
    for (d, c) in monomial_counts(&vars, max_degree).into_iter().enumerate() {
        chart.set_dim(&[d as i64], c);
    }
    Ok(chart)
}
