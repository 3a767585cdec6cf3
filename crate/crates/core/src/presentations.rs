//! Bigraded commutative algebras over GF(2) given by generators and
//! rewrite rules, with normal forms and bigraded dimension counts.
//!
//! All bidegrees are homological `(p, q)`, with `rho` in `(-1, -1)`. Every
//! rule carries a leading monomial and a homogeneous replacement; rules must
//! strictly raise a filtration weight (the exponent of `rho` for the
//! built-in algebras), which bounds every rewrite chain inside a fixed
//! bidegree.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chart::{Chart, Grading};
use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::steenrod::F2Sum;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub bidegree: (i64, i64),
    /// Contribution to the rewrite weight.
    pub weight: u32,
}

/// Exponent vector, one entry per generator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(ngens: usize) -> Self {
        Monomial(vec![0; ngens])
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

pub type Polynomial = F2Sum<Monomial>;

#[derive(Clone, Debug)]
pub struct Rule {
    pub lead: Monomial,
    /// `None` marks a rewrite whose right side needs a generator beyond the
    /// truncation; applying it is an error.
    pub replacement: Option<Polynomial>,
}

#[derive(Clone, Debug)]
pub struct PresentedAlgebra {
    pub name: String,
    generators: Vec<Generator>,
    rules: Vec<Rule>,
    /// Queries must satisfy `|p| + |q| <= window`.
    window: Option<i64>,
}

impl PresentedAlgebra {
    pub fn new(
        name: impl Into<String>,
        generators: Vec<Generator>,
        rules: Vec<Rule>,
        window: Option<i64>,
    ) -> Result<Self> {
        let alg = Self {
            name: name.into(),
            generators,
            rules,
            window,
        };
        for (i, rule) in alg.rules.iter().enumerate() {
            if rule.lead.0.len() != alg.generators.len() || rule.lead.0.iter().all(|&e| e == 0) {
                return Err(Error::InvalidArgument(format!("rule {i}: bad leading monomial")));
            }
            let Some(rep) = &rule.replacement else { continue };
            let lead_deg = alg.bidegree(&rule.lead);
            let lead_w = alg.weight(&rule.lead);
            for term in rep.terms() {
                if alg.bidegree(term) != lead_deg {
                    return Err(Error::InvalidArgument(format!(
                        "rule {i} is not homogeneous: {} vs {}",
                        alg.format_monomial(&rule.lead),
                        alg.format_monomial(term)
                    )));
                }
                if alg.weight(term) <= lead_w {
                    return Err(Error::InvalidArgument(format!(
                        "rule {i} does not raise the rewrite weight"
                    )));
                }
            }
        }
        Ok(alg)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn window(&self) -> Option<i64> {
        self.window
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Monomial from `(generator name, exponent)` pairs.
    pub fn monomial(&self, factors: &[(&str, u32)]) -> Result<Monomial> {
        let mut m = Monomial::one(self.generators.len());
        for &(name, e) in factors {
            let i = self
                .generator_index(name)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown generator {name:?}")))?;
            m.0[i] += e;
        }
        Ok(m)
    }

    pub fn bidegree(&self, m: &Monomial) -> (i64, i64) {
        m.0.iter().zip(&self.generators).fold((0, 0), |(p, q), (&e, g)| {
            (p + e as i64 * g.bidegree.0, q + e as i64 * g.bidegree.1)
        })
    }

    fn weight(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(&self.generators).map(|(&e, g)| e * g.weight).sum()
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .zip(&self.generators)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, g)| {
                if e == 1 {
                    g.name.clone()
                } else {
                    format!("{}^{e}", g.name)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn format_polynomial(&self, p: &Polynomial) -> String {
        if p.is_zero() {
            return "0".into();
        }
        p.terms()
            .map(|m| self.format_monomial(m))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn reducer(&self, m: &Monomial) -> Option<&Rule> {
        self.rules.iter().find(|r| r.lead.divides(m))
    }

    pub fn is_normal(&self, m: &Monomial) -> bool {
        self.reducer(m).is_none()
    }

    fn apply(&self, rule: &Rule, m: &Monomial) -> Result<Vec<Monomial>> {
        let rep = rule.replacement.as_ref().ok_or_else(|| {
            Error::Truncation(format!(
                "{} needs a generator beyond the index bound of {}",
                self.format_monomial(&rule.lead),
                self.name
            ))
        })?;
        let cofactor = m.div(&rule.lead);
        Ok(rep.terms().map(|t| t.mul(&cofactor)).collect())
    }

    /// Exhaustive rewriting. Terms are processed in increasing weight; since
    /// every rewrite raises the weight, a processed term never reappears.
    pub fn normal_form(&self, x: &Polynomial) -> Result<Polynomial> {
        Ok(self.normal_form_traced(x)?.0)
    }

    /// Normal form plus the longest rewrite chain used.
    pub fn normal_form_traced(&self, x: &Polynomial) -> Result<(Polynomial, u32)> {
        let mut pending: BTreeSet<(u32, Monomial)> = BTreeSet::new();
        let toggle = |set: &mut BTreeSet<(u32, Monomial)>, key: (u32, Monomial)| {
            if !set.remove(&key) {
                set.insert(key);
            }
        };
        let start = x.terms().map(|m| self.weight(m)).min().unwrap_or(0);
        for m in x.terms() {
            toggle(&mut pending, (self.weight(m), m.clone()));
        }
        let mut out = Polynomial::zero();
        let mut longest = 0;
        while let Some((w, m)) = pending.pop_first() {
            match self.reducer(&m) {
                None => out.toggle(m),
                Some(rule) => {
                    for t in self.apply(rule, &m)? {
                        let wt = self.weight(&t);
                        longest = longest.max(wt - start);
                        debug_assert!(wt > w);
                        toggle(&mut pending, (wt, t));
                    }
                }
            }
        }
        Ok((out, longest))
    }

    /// Rewriting with randomly chosen redexes and rules, for confluence
    /// testing. Fails if more than `max_steps` rewrites are needed.
    pub fn normal_form_random<R: Rng>(
        &self,
        x: &Polynomial,
        rng: &mut R,
        max_steps: usize,
    ) -> Result<Polynomial> {
        let mut poly = x.clone();
        for _ in 0..=max_steps {
            let redexes: Vec<&Monomial> = poly.terms().filter(|m| !self.is_normal(m)).collect();
            let Some(&m) = redexes.choose(rng) else {
                return Ok(poly);
            };
            let m = m.clone();
            let rules: Vec<&Rule> = self.rules.iter().filter(|r| r.lead.divides(&m)).collect();
            let rule = rules.choose(rng).expect("redex has a rule");
            let terms = self.apply(rule, &m)?;
            poly.toggle(m);
            for t in terms {
                poly.toggle(t);
            }
        }
        Err(Error::Truncation(format!(
            "rewriting in {} did not stop within {max_steps} steps",
            self.name
        )))
    }

    fn check_window(&self, p: i64, q: i64) -> Result<()> {
        match self.window {
            Some(w) if p.abs() + q.abs() > w => Err(Error::Window(format!(
                "({p},{q}) lies outside |p|+|q| <= {w} for {}",
                self.name
            ))),
            _ => Ok(()),
        }
    }

    /// All monomials of bidegree `(p, q)`, normal or not.
    ///
    /// Supported shapes: every generator has stem `p - q > 0`, except at most
    /// one of bidegree `(-1, -1)`.
    pub fn monomials_in(&self, p: i64, q: i64) -> Result<Vec<Monomial>> {
        self.check_window(p, q)?;
        let n = self.generators.len();
        let mut rho = None;
        let mut positive = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            let stem = g.bidegree.0 - g.bidegree.1;
            if stem > 0 {
                positive.push(i);
            } else if g.bidegree == (-1, -1) && rho.is_none() {
                rho = Some(i);
            } else {
                return Err(Error::InvalidArgument(format!(
                    "cannot enumerate {}: generator {} in bidegree {:?}",
                    self.name, g.name, g.bidegree
                )));
            }
        }
        let stem = p - q;
        let mut out = Vec::new();
        if stem < 0 {
            return Ok(out);
        }
        let mut current = Monomial::one(n);
        self.enumerate_stem(&positive, 0, stem, &mut current, &mut |m| {
            let (_, q_rest) = self.bidegree(m);
            let a = q_rest - q;
            match rho {
                Some(r) if a >= 0 => {
                    let mut full = m.clone();
                    full.0[r] = a as u32;
                    out.push(full);
                }
                None if a == 0 => out.push(m.clone()),
                _ => {}
            }
        });
        out.sort();
        Ok(out)
    }

    fn enumerate_stem(
        &self,
        positive: &[usize],
        at: usize,
        remaining: i64,
        current: &mut Monomial,
        visit: &mut dyn FnMut(&Monomial),
    ) {
        if at == positive.len() {
            if remaining == 0 {
                visit(current);
            }
            return;
        }
        let g = positive[at];
        let (gp, gq) = self.generators[g].bidegree;
        let stem = gp - gq;
        for e in 0..=remaining / stem {
            current.0[g] = e as u32;
            self.enumerate_stem(positive, at + 1, remaining - e * stem, current, visit);
        }
        current.0[g] = 0;
    }

    /// Normal monomials of bidegree `(p, q)`, which form a basis of that
    /// component when the rules are confluent.
    pub fn normal_basis(&self, p: i64, q: i64) -> Result<Vec<Monomial>> {
        Ok(self
            .monomials_in(p, q)?
            .into_iter()
            .filter(|m| self.is_normal(m))
            .collect())
    }

    pub fn hilbert_dim(&self, p: i64, q: i64) -> Result<usize> {
        Ok(self.normal_basis(p, q)?.len())
    }

    /// Largest possible rewrite chain in bidegree `(p, q)`: the spread of the
    /// weight over all monomials there.
    pub fn rewrite_bound(&self, p: i64, q: i64) -> Result<u32> {
        let weights: Vec<u32> = self
            .monomials_in(p, q)?
            .iter()
            .map(|m| self.weight(m))
            .collect();
        Ok(match (weights.iter().min(), weights.iter().max()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        })
    }

    /// Dimension chart over the window `|p| + |q| <= window`.
    pub fn dimension_chart(&self, window: i64) -> Result<Chart> {
        let mut chart = Chart::new(Grading::Pq);
        for (p, q) in window_bidegrees(window) {
            let basis = self.normal_basis(p, q)?;
            let labels = basis.iter().map(|m| self.format_monomial(m)).collect();
            chart.set(&[p, q], basis.len(), labels);
        }
        Ok(chart)
    }

    /// Adds rules killing the named generators.
    pub fn quotient_by_generators(&self, names: &[String]) -> Result<PresentedAlgebra> {
        let mut rules = Vec::new();
        for name in names {
            let mut lead = Monomial::one(self.generators.len());
            let i = self
                .generator_index(name)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown generator {name:?}")))?;
            lead.0[i] = 1;
            rules.push(Rule {
                lead,
                replacement: Some(Polynomial::zero()),
            });
        }
        rules.extend(self.rules.iter().cloned());
        PresentedAlgebra::new(
            format!("{}/({})", self.name, names.join(",")),
            self.generators.clone(),
            rules,
            self.window,
        )
    }
}

/// All `(p, q)` with `|p| + |q| <= window`, sorted.
pub fn window_bidegrees(window: i64) -> Vec<(i64, i64)> {
    let mut v = Vec::new();
    for p in -window..=window {
        let rest = window - p.abs();
        for q in -rest..=rest {
            v.push((p, q));
        }
    }
    v
}

/// The algebras presented explicitly in the isotropic setting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinAlgebra {
    /// `F_2[rho, r_i] / (r_i^2 - rho r_{i+1})`.
    HzIso,
    /// `F_2[rho, r_i, tau_i, xi_{i+1}] / (r_i^2 - rho r_{i+1},
    /// tau_i^2 - rho tau_{i+1} - rho (r_0 + tau_0) xi_{i+1})`.
    AIso,
    /// `F_2[rho]`.
    MbpIso,
    /// `F_2[rho] (x) G_**`, i.e. `F_2[rho, xi_i]` with `xi_i` in
    /// `(2(2^i - 1), 2^i - 1)`.
    MbpMbpIso,
}

impl BuiltinAlgebra {
    pub const ALL: [BuiltinAlgebra; 4] = [
        BuiltinAlgebra::HzIso,
        BuiltinAlgebra::AIso,
        BuiltinAlgebra::MbpIso,
        BuiltinAlgebra::MbpMbpIso,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinAlgebra::HzIso => "HZ_ISO",
            BuiltinAlgebra::AIso => "A_ISO",
            BuiltinAlgebra::MbpIso => "MBP_ISO",
            BuiltinAlgebra::MbpMbpIso => "MBP_MBP_ISO",
        }
    }

    /// Instantiates the presentation with every generator index whose stem
    /// fits in `|p| + |q| <= window`.
    pub fn presentation(self, window: i64) -> PresentedAlgebra {
        let top = top_index(window);
        let mut gens = vec![Generator {
            name: "rho".into(),
            bidegree: (-1, -1),
            weight: 1,
        }];
        let r_deg = |i: u32| ((1i64 << (i + 1)) - 1, (1i64 << i) - 1);
        let xi_deg = |j: u32| ((1i64 << (j + 1)) - 2, (1i64 << j) - 1);
        let xi_top = {
            let mut j = 0;
            while (1i64 << (j + 1)) - 1 <= window.max(0) {
                j += 1;
            }
            j
        };
        let push = |gens: &mut Vec<Generator>, name: String, bidegree| {
            gens.push(Generator {
                name,
                bidegree,
                weight: 0,
            })
        };
        match self {
            BuiltinAlgebra::HzIso => {
                for i in 0..=top {
                    push(&mut gens, format!("r{i}"), r_deg(i));
                }
            }
            BuiltinAlgebra::AIso => {
                for i in 0..=top {
                    push(&mut gens, format!("r{i}"), r_deg(i));
                }
                for i in 0..=top {
                    push(&mut gens, format!("tau{i}"), r_deg(i));
                }
                for j in 1..=xi_top {
                    push(&mut gens, format!("xi{j}"), xi_deg(j));
                }
            }
            BuiltinAlgebra::MbpIso => {}
            BuiltinAlgebra::MbpMbpIso => {
                for j in 1..=xi_top {
                    push(&mut gens, format!("xi{j}"), xi_deg(j));
                }
            }
        }
        let n = gens.len();
        let index = |name: &str| gens.iter().position(|g| g.name == name);
        let unit = |i: usize, e: u32| {
            let mut m = Monomial::one(n);
            m.0[i] = e;
            m
        };
        let times = |a: &Monomial, b: &Monomial| a.mul(b);
        let rho = unit(0, 1);
        let mut rules = Vec::new();
        if matches!(self, BuiltinAlgebra::HzIso | BuiltinAlgebra::AIso) {
            for i in 0..=top {
                let ri = index(&format!("r{i}")).unwrap();
                let replacement = index(&format!("r{}", i + 1))
                    .map(|next| Polynomial::from_term(times(&rho, &unit(next, 1))));
                rules.push(Rule {
                    lead: unit(ri, 2),
                    replacement,
                });
            }
        }
        if self == BuiltinAlgebra::AIso {
            let r0 = unit(index("r0").unwrap(), 1);
            let tau0 = unit(index("tau0").unwrap(), 1);
            for i in 0..=top {
                let ti = index(&format!("tau{i}")).unwrap();
                let next = index(&format!("tau{}", i + 1));
                let xi = index(&format!("xi{}", i + 1));
                let replacement = match (next, xi) {
                    (Some(next), Some(xi)) => {
                        let xi = unit(xi, 1);
                        let rho_xi = times(&rho, &xi);
                        Some(
                            [
                                times(&rho, &unit(next, 1)),
                                times(&rho_xi, &r0),
                                times(&rho_xi, &tau0),
                            ]
                            .into_iter()
                            .collect(),
                        )
                    }
                    _ => None,
                };
                rules.push(Rule {
                    lead: unit(ti, 2),
                    replacement,
                });
            }
        }
        PresentedAlgebra::new(self.name(), gens, rules, Some(window))
            .expect("built-in presentations are homogeneous")
    }
}

/// Largest `i` with `2^i <= window` (0 for tiny windows).
fn top_index(window: i64) -> u32 {
    let mut i = 0;
    while (1i64 << (i + 1)) <= window {
        i += 1;
    }
    i
}

/// `dim HZ_ISO(p, q) = sum_I dim F_2[rho](p - p_I, q - q_I)` over strictly
/// increasing index sets `I`, with `(p_I, q_I) = sum_{i in I} (2^{i+1} - 1, 2^i - 1)`,
/// on every bidegree of the window.
pub fn verify_free_basis_over_mbp(window: i64) -> Result<CheckReport> {
    let hz = BuiltinAlgebra::HzIso.presentation(window);
    let top = top_index(window);
    let mut shifts = Vec::new();
    for mask in 0u64..(1 << (top + 1)) {
        let (mut p, mut q) = (0i64, 0i64);
        for i in 0..=top {
            if mask >> i & 1 == 1 {
                p += (1 << (i + 1)) - 1;
                q += (1 << i) - 1;
            }
        }
        shifts.push((p, q));
    }
    let rho_dim = |p: i64, q: i64| usize::from(p == q && p <= 0);
    let mut report = CheckReport::pass(format!(
        "free r_I basis over F2[rho]: |p|+|q| <= {window}"
    ));
    let mut checked = 0;
    for (p, q) in window_bidegrees(window) {
        let lhs = hz.hilbert_dim(p, q)?;
        let rhs: usize = shifts.iter().map(|&(a, b)| rho_dim(p - a, q - b)).sum();
        checked += 1;
        if lhs != rhs {
            report.record_failure(format!("({p},{q}): HZ_ISO dim {lhs}, free-module count {rhs}"));
            break;
        }
    }
    Ok(report.with_detail(format!("{checked} bidegrees checked")))
}

/// The class `tau` can only go to `rho r_0`: the component `(0, -1)` of
/// `HZ_ISO` is one-dimensional, spanned by that monomial.
pub fn tau_image_check() -> CheckReport {
    let hz = BuiltinAlgebra::HzIso.presentation(4);
    let mut report = CheckReport::pass("tau target: HZ_ISO(0,-1) = span{rho*r0}");
    match hz.normal_basis(0, -1) {
        Ok(basis) => {
            let names: Vec<String> = basis.iter().map(|m| hz.format_monomial(m)).collect();
            if names != ["rho*r0"] {
                report.record_failure(format!("basis at (0,-1) is {names:?}"));
            }
        }
        Err(e) => report.record_failure(e.to_string()),
    }
    match hz.normal_basis(0, 0) {
        Ok(basis) if basis.len() == 1 && hz.format_monomial(&basis[0]) == "1" => {}
        other => report.record_failure(format!("basis at (0,0) is {other:?}")),
    }
    report
}

/// Dimensions of the quotient by the ideal generated by all `r_i`.
pub fn pure_quotient_dims(alg: BuiltinAlgebra, window: i64) -> Result<Chart> {
    if !matches!(alg, BuiltinAlgebra::HzIso | BuiltinAlgebra::AIso) {
        return Err(Error::InvalidArgument(format!(
            "quotient by r_i is only defined for HZ_ISO and A_ISO, not {}",
            alg.name()
        )));
    }
    let pres = alg.presentation(window);
    let rs: Vec<String> = pres
        .generators()
        .iter()
        .filter(|g| g.name.starts_with('r') && g.name != "rho")
        .map(|g| g.name.clone())
        .collect();
    pres.quotient_by_generators(&rs)?.dimension_chart(window)
}

/// Random monomials inside the window; rewriting them in random orders
/// must always land on the deterministic normal form, within the chain
/// bound of their bidegree.
pub fn check_confluence(alg: &PresentedAlgebra, samples: usize, seed: u64) -> Result<CheckReport> {
    let window = alg
        .window()
        .ok_or_else(|| Error::InvalidArgument("confluence check needs a window".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::pass(format!("confluence of {} ({samples} samples)", alg.name));
    let n = alg.generators().len();
    let mut done = 0;
    let mut attempts = 0usize;
    while done < samples {
        attempts += 1;
        if attempts > samples * 1000 {
            report.record_failure("could not sample enough monomials inside the window");
            break;
        }
        let mut m = Monomial::one(n);
        for e in m.0.iter_mut() {
            // sparse exponents, occasionally large enough to need rewriting
            *e = if rng.gen_bool(0.35) { rng.gen_range(1..=4) } else { 0 };
        }
        let (p, q) = alg.bidegree(&m);
        if p.abs() + q.abs() > window {
            continue;
        }
        let x = Polynomial::from_term(m.clone());
        let (reference, chain) = match alg.normal_form_traced(&x) {
            Ok(v) => v,
            Err(Error::Truncation(_)) => continue,
            Err(e) => return Err(e),
        };
        let bound = alg.rewrite_bound(p, q)?;
        if chain > bound {
            report.record_failure(format!(
                "{}: chain {chain} exceeds bound {bound}",
                alg.format_monomial(&m)
            ));
        }
        for _ in 0..3 {
            let other = alg.normal_form_random(&x, &mut rng, 10_000)?;
            if other != reference {
                report.record_failure(format!(
                    "{}: {} vs {}",
                    alg.format_monomial(&m),
                    alg.format_polynomial(&reference),
                    alg.format_polynomial(&other)
                ));
            }
        }
        for t in reference.terms() {
            if alg.bidegree(t) != (p, q) {
                report.record_failure(format!("normal form of {} left its bidegree", alg.format_monomial(&m)));
            }
        }
        done += 1;
    }
    Ok(report)
}

/// Monomials of `A_ISO` in `rho` and the `r_i` alone have the same
/// bigraded dimensions as `HZ_ISO`.
pub fn retract_check(window: i64) -> Result<CheckReport> {
    let a = BuiltinAlgebra::AIso.presentation(window);
    let hz = BuiltinAlgebra::HzIso.presentation(window);
    let only_rho_r: Vec<bool> = a
        .generators()
        .iter()
        .map(|g| g.name == "rho" || (g.name.starts_with('r')))
        .collect();
    let mut report = CheckReport::pass(format!("HZ_ISO is a retract of A_ISO: |p|+|q| <= {window}"));
    for (p, q) in window_bidegrees(window) {
        let restricted = a
            .normal_basis(p, q)?
            .into_iter()
            .filter(|m| m.0.iter().zip(&only_rho_r).all(|(&e, &ok)| ok || e == 0))
            .count();
        let expected = hz.hilbert_dim(p, q)?;
        if restricted != expected {
            report.record_failure(format!("({p},{q}): {restricted} vs {expected}"));
            break;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(alg: &PresentedAlgebra, factors: &[(&str, u32)]) -> Polynomial {
        Polynomial::from_term(alg.monomial(factors).unwrap())
    }

    #[test]
    fn generator_degrees() {
        let a = BuiltinAlgebra::AIso.presentation(20);
        let deg = |n: &str| a.generators()[a.generator_index(n).unwrap()].bidegree;
        assert_eq!(deg("rho"), (-1, -1));
        assert_eq!(deg("r0"), (1, 0));
        assert_eq!(deg("r2"), (7, 3));
        assert_eq!(deg("tau1"), (3, 1));
        assert_eq!(deg("xi1"), (2, 1));
        assert_eq!(deg("xi2"), (6, 3));
        assert_eq!(deg("r4"), (31, 15));
        assert!(a.generator_index("r5").is_none());
    }

    #[test]
    fn normal_form_examples() {
        let hz = BuiltinAlgebra::HzIso.presentation(20);
        let nf = hz.normal_form(&poly(&hz, &[("r0", 2)])).unwrap();
        assert_eq!(nf, poly(&hz, &[("rho", 1), ("r1", 1)]));
        let x = poly(&hz, &[("rho", 1), ("r0", 1)]);
        assert_eq!(hz.normal_form(&x).unwrap(), x);
        let (nf, chain) = hz.normal_form_traced(&poly(&hz, &[("r0", 4)])).unwrap();
        assert_eq!(nf, poly(&hz, &[("rho", 3), ("r2", 1)]));
        assert_eq!(chain, 3);
    }

    #[test]
    fn tau_relation_rewrites() {
        let a = BuiltinAlgebra::AIso.presentation(20);
        let nf = a.normal_form(&poly(&a, &[("tau0", 2)])).unwrap();
        let expected: Polynomial = [
            a.monomial(&[("rho", 1), ("tau1", 1)]).unwrap(),
            a.monomial(&[("rho", 1), ("r0", 1), ("xi1", 1)]).unwrap(),
            a.monomial(&[("rho", 1), ("tau0", 1), ("xi1", 1)]).unwrap(),
        ]
        .into_iter()
        .collect();
        assert_eq!(nf, expected);
    }

    #[test]
    fn truncation_is_an_error() {
        let hz = BuiltinAlgebra::HzIso.presentation(20);
        let err = hz.normal_form(&poly(&hz, &[("r4", 2)])).unwrap_err();
        assert!(matches!(err, Error::Truncation(_)));
    }

    #[test]
    fn hilbert_examples() {
        let hz = BuiltinAlgebra::HzIso.presentation(20);
        assert_eq!(hz.hilbert_dim(0, 0).unwrap(), 1);
        assert_eq!(hz.hilbert_dim(-1, -1).unwrap(), 1);
        assert_eq!(hz.hilbert_dim(2, 0).unwrap(), 1);
        assert_eq!(hz.format_monomial(&hz.normal_basis(2, 0).unwrap()[0]), "rho*r1");
        assert!(matches!(hz.hilbert_dim(30, 0), Err(Error::Window(_))));
    }

    #[test]
    fn free_basis_examples() {
        assert!(verify_free_basis_over_mbp(0).unwrap().passed);
        assert!(verify_free_basis_over_mbp(1).unwrap().passed);
        assert!(verify_free_basis_over_mbp(20).unwrap().passed);
    }

    #[test]
    fn tau_target() {
        let r = tau_image_check();
        assert!(r.passed, "{r}");
    }

    #[test]
    fn pure_quotient_of_hz_is_polynomial_in_rho() {
        let c = pure_quotient_dims(BuiltinAlgebra::HzIso, 20).unwrap();
        assert_eq!(c.dim(&[0, 0]), 1);
        assert_eq!(c.dim(&[-2, -2]), 1);
        assert_eq!(c.dim(&[1, 0]), 0);
        let mut expected = Chart::new(Grading::Pq);
        for n in 0..=10 {
            expected.set_dim(&[-n, -n], 1);
        }
        assert!(c.same_dims(&expected));
        assert!(pure_quotient_dims(BuiltinAlgebra::MbpIso, 20).is_err());
    }

    #[test]
    fn pure_quotient_of_a_iso_keeps_tau_and_xi() {
        let c = pure_quotient_dims(BuiltinAlgebra::AIso, 12).unwrap();
        // tau0 and rho*xi1 share bidegree (1,0)
        assert_eq!(c.dim(&[1, 0]), 2);
        assert_eq!(c.dim(&[0, 0]), 1);
    }

    #[test]
    fn confluence_on_builtins() {
        for alg in BuiltinAlgebra::ALL {
            let pres = alg.presentation(20);
            let r = check_confluence(&pres, 200, 7).unwrap();
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn retract() {
        assert!(retract_check(16).unwrap().passed);
    }

    #[test]
    fn rejects_inhomogeneous_rules() {
        let gens = vec![
            Generator { name: "rho".into(), bidegree: (-1, -1), weight: 1 },
            Generator { name: "x".into(), bidegree: (1, 0), weight: 0 },
        ];
        let rule = Rule {
            lead: Monomial(vec![0, 2]),
            replacement: Some(Polynomial::from_term(Monomial(vec![1, 1]))),
        };
        assert!(PresentedAlgebra::new("bad", gens, vec![rule], None).is_err());
    }

    #[test]
    fn mbp_mbp_matches_dual_steenrod_counts() {
        // rho-free part of F2[rho] (x) G_** in bidegree (2d, d) is A_d
        let g = BuiltinAlgebra::MbpMbpIso.presentation(40);
        for d in 0..=12 {
            let n = g
                .normal_basis(2 * d, d)
                .unwrap()
                .iter()
                .filter(|m| m.0[0] == 0)
                .count();
            assert_eq!(n, crate::steenrod::dual_basis(d as u32).len());
        }
    }
}
