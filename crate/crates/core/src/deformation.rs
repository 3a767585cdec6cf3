//! Bigraded `F_2[rho]`-module charts assembled from Adams data, with the
//! mod-rho and rho-inverted consistency checks.
//!
//! A differential `d_r(x) = y` leaves a `rho^{r-1}`-torsion tower at `y`;
//! every class untouched by differentials carries an infinite tower. Towers
//! descend along `rho`, i.e. `(p, q) -> (p - 1, q - 1)`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::{self, Write as _};

use crate::chart::{Chart, Grading};
use crate::error::{Error, Result};
use crate::report::CheckReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Differential {
    pub r: u32,
    pub source: String,
    pub target: String,
    /// Line in the file it came from, for error messages.
    pub line: Option<usize>,
}

impl Differential {
    pub fn new(r: u32, source: impl Into<String>, target: impl Into<String>) -> Self {
        Self {
            r,
            source: source.into(),
            target: target.into(),
            line: None,
        }
    }

    fn origin(&self) -> String {
        match self.line {
            Some(l) => format!("line {l}: "),
            None => String::new(),
        }
    }
}

/// Reads records `r <source> <target>`; `#` starts a comment.
pub fn parse_differentials(text: &str) -> Result<Vec<Differential>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [r, src, dst] = fields[..] else {
            return Err(Error::parse(i + 1, format!("expected `r source target`, got {line:?}")));
        };
        let r: u32 = r
            .parse()
            .map_err(|_| Error::parse(i + 1, format!("bad page number {r:?}")))?;
        if r < 2 {
            return Err(Error::parse(i + 1, format!("page must be at least 2, got {r}")));
        }
        out.push(Differential {
            r,
            source: src.into(),
            target: dst.into(),
            line: Some(i + 1),
        });
    }
    Ok(out)
}

/// An `E_2` chart over `(s, t)` together with validated differentials.
#[derive(Clone, Debug)]
pub struct AdamsData {
    e2: Chart,
    differentials: Vec<Differential>,
    positions: HashMap<String, (i64, i64)>,
}

impl AdamsData {
    pub fn new(e2: Chart, differentials: Vec<Differential>) -> Result<Self> {
        if e2.grading() != Grading::St {
            return Err(Error::AdamsData("E2 chart must be graded by (s,t)".into()));
        }
        let mut positions = HashMap::new();
        for (k, entry) in e2.entries() {
            if entry.labels.len() != entry.dim {
                return Err(Error::AdamsData(format!(
                    "E2 entry at ({},{}) has {} labels for dimension {}",
                    k[0],
                    k[1],
                    entry.labels.len(),
                    entry.dim
                )));
            }
            for l in &entry.labels {
                if positions.insert(l.clone(), (k[0], k[1])).is_some() {
                    return Err(Error::AdamsData(format!("label {l} appears twice in the E2 chart")));
                }
            }
        }
        let mut sources = HashSet::new();
        let mut targets = HashSet::new();
        for d in &differentials {
            let at = d.origin();
            let &(s, t) = positions
                .get(&d.source)
                .ok_or_else(|| Error::AdamsData(format!("{at}unknown source {}", d.source)))?;
            let &(s2, t2) = positions
                .get(&d.target)
                .ok_or_else(|| Error::AdamsData(format!("{at}unknown target {}", d.target)))?;
            let r = d.r as i64;
            if (s2, t2) != (s + r, t + r - 1) {
                return Err(Error::AdamsData(format!(
                    "{at}d{} from {} at ({s},{t}) must land in ({},{}), but {} is at ({s2},{t2})",
                    d.r,
                    d.source,
                    s + r,
                    t + r - 1,
                    d.target
                )));
            }
            if !sources.insert(d.source.clone()) {
                return Err(Error::AdamsData(format!("{at}{} is the source of two differentials", d.source)));
            }
            if !targets.insert(d.target.clone()) {
                return Err(Error::AdamsData(format!("{at}{} is the target of two differentials", d.target)));
            }
        }
        if let Some(both) = sources.intersection(&targets).min() {
            return Err(Error::AdamsData(format!("{both} is both a source and a target")));
        }
        Ok(Self {
            e2,
            differentials,
            positions,
        })
    }

    pub fn e2(&self) -> &Chart {
        &self.e2
    }

    pub fn differentials(&self) -> &[Differential] {
        &self.differentials
    }

    pub fn position(&self, label: &str) -> Option<(i64, i64)> {
        self.positions.get(label).copied()
    }

    /// Classes in no differential, with their `(s, t)`.
    pub fn survivors(&self) -> Vec<(String, (i64, i64))> {
        let touched: HashSet<&str> = self
            .differentials
            .iter()
            .flat_map(|d| [d.source.as_str(), d.target.as_str()])
            .collect();
        let mut out = Vec::new();
        for (k, e) in self.e2.entries() {
            for l in &e.labels {
                if !touched.contains(l.as_str()) {
                    out.push((l.clone(), (k[0], k[1])));
                }
            }
        }
        out
    }

    /// Survivor counts per stem `t - s`.
    pub fn survivors_per_stem(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (_, (s, t)) in self.survivors() {
            *out.entry(t - s).or_insert(0) += 1;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Tower {
    pub base: (i64, i64),
    /// `None` for `F_2[rho]`, `Some(k)` for `F_2[rho]/rho^k`.
    pub length: Option<u32>,
    pub label: String,
}

impl Tower {
    pub fn covers(&self, p: i64, q: i64) -> bool {
        let i = self.base.0 - p;
        i >= 0 && self.base.1 - q == i && self.length.is_none_or(|k| i < k as i64)
    }

    /// Lowest bidegree of a finite tower.
    pub fn bottom(&self) -> Option<(i64, i64)> {
        self.length
            .map(|k| (self.base.0 - (k as i64 - 1), self.base.1 - (k as i64 - 1)))
    }

    pub fn stem(&self) -> i64 {
        self.base.0 - self.base.1
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RhoModule {
    towers: Vec<Tower>,
}

impl RhoModule {
    pub fn new(mut towers: Vec<Tower>) -> Self {
        towers.sort();
        Self { towers }
    }

    pub fn towers(&self) -> &[Tower] {
        &self.towers
    }

    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.towers.iter().filter(|t| t.covers(p, q)).count()
    }

    /// `dim coker(rho)` at `(p, q)`: towers generated there.
    pub fn coker_rho(&self, p: i64, q: i64) -> usize {
        self.towers.iter().filter(|t| t.base == (p, q)).count()
    }

    /// `dim ker(rho)` at `(p, q)`: finite towers ending there.
    pub fn ker_rho(&self, p: i64, q: i64) -> usize {
        self.towers.iter().filter(|t| t.bottom() == Some((p, q))).count()
    }

    /// Tab-separated tower list: `p q length label`, `inf` for infinite.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("p\tq\tlength\tlabel\n");
        for t in &self.towers {
            let len = t.length.map_or("inf".to_string(), |k| k.to_string());
            writeln!(out, "{}\t{}\t{len}\t{}", t.base.0, t.base.1, t.label).unwrap();
        }
        out
    }
}

impl fmt::Display for RhoModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tsv())
    }
}

fn pq(s: i64, t: i64) -> (i64, i64) {
    (2 * t - s, t)
}

pub fn assemble(data: &AdamsData) -> RhoModule {
    let mut towers: Vec<Tower> = data
        .survivors()
        .into_iter()
        .map(|(label, (s, t))| Tower {
            base: pq(s, t),
            length: None,
            label,
        })
        .collect();
    for d in &data.differentials {
        let (s, t) = data.positions[&d.target];
        towers.push(Tower {
            base: pq(s, t),
            length: Some(d.r - 1),
            label: d.target.clone(),
        });
    }
    RhoModule::new(towers)
}

/// The `(s, t)` rectangle an Ext chart was computed on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtWindow {
    pub max_s: i64,
    pub max_t: i64,
    /// Optional cap on the stem `t - s`.
    pub max_stem: Option<i64>,
}

impl ExtWindow {
    pub fn new(max_s: i64, max_t: i64) -> Self {
        Self {
            max_s,
            max_t,
            max_stem: None,
        }
    }

    pub fn with_max_stem(self, max_stem: i64) -> Self {
        Self {
            max_stem: Some(max_stem),
            ..self
        }
    }

    pub fn contains_st(&self, s: i64, t: i64) -> bool {
        (0..=self.max_s).contains(&s)
            && (0..=self.max_t).contains(&t)
            && self.max_stem.is_none_or(|m| t - s <= m)
    }

    pub fn contains_pq(&self, p: i64, q: i64) -> bool {
        self.contains_st(2 * q - p, q)
    }

    /// Restricts an `(s, t)` chart to the window.
    pub fn restrict(&self, ext: &Chart) -> Chart {
        let mut out = Chart::new(ext.grading());
        for (k, e) in ext.entries() {
            if self.contains_st(k[0], k[1]) {
                out.set(k, e.dim, e.labels.clone());
            }
        }
        out
    }

    fn pq_points(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (0..=self.max_t)
            .flat_map(move |q| (0..=self.max_s).map(move |s| (2 * q - s, q)))
            .filter(|&(p, q)| self.contains_pq(p, q))
    }
}

/// Mod-rho ledger: `dim crho(p, q) = coker(rho)_{(p,q)} + ker(rho)_{(p,q+1)}`
/// at every bidegree of the window.
pub fn special_fiber_check(m: &RhoModule, crho: &Chart, window: ExtWindow) -> Result<CheckReport> {
    if crho.grading() != Grading::Pq {
        return Err(Error::Window("special fiber check needs a (p,q) chart".into()));
    }
    if let Some((k, _)) = crho.entries().find(|(k, _)| !window.contains_pq(k[0], k[1])) {
        return Err(Error::Window(format!("chart entry ({},{}) outside the window", k[0], k[1])));
    }
    let mut report = CheckReport::pass("special fiber: Cρ ledger equals Ext chart");
    for (p, q) in window.pq_points() {
        let lhs = crho.dim(&[p, q]);
        let rhs = m.coker_rho(p, q) + m.ker_rho(p, q + 1);
        if lhs != rhs {
            report.record_failure(format!(
                "(p,q)=({p},{q}): Ext {lhs}, coker {} + ker {}",
                m.coker_rho(p, q),
                m.ker_rho(p, q + 1)
            ));
        }
    }
    Ok(report)
}

/// Rho-inverted shadow: (a) infinite towers per stem match survivors per
/// stem; (b) for `p >= 2q` the dimension is constant along each rho line.
pub fn generic_fiber_check(m: &RhoModule, data: &AdamsData, max_stem: i64) -> CheckReport {
    let mut report = CheckReport::pass("generic fiber: ρ-inverted towers equal E∞ survivors");
    let survivors = data.survivors_per_stem();
    let mut infinite: BTreeMap<i64, usize> = BTreeMap::new();
    for t in m.towers().iter().filter(|t| t.length.is_none()) {
        *infinite.entry(t.stem()).or_insert(0) += 1;
    }
    // q sweeps from well below the lowest tower base up to the diagonal p = 2q
    let q_floor = -(data.e2.entries().map(|(k, _)| k[0]).max().unwrap_or(0) + 2);
    for stem in 0..=max_stem {
        let expected = survivors.get(&stem).copied().unwrap_or(0);
        let found = infinite.get(&stem).copied().unwrap_or(0);
        if expected != found {
            report.record_failure(format!("stem {stem}: {found} infinite towers, {expected} survivors"));
        }
        for q in q_floor..=stem {
            let d = m.dim(q + stem, q);
            if d != expected {
                report.record_failure(format!(
                    "stem {stem}: dim at (p,q)=({},{q}) is {d}, expected {expected}",
                    q + stem
                ));
                break;
            }
        }
    }
    report.with_detail(format!(
        "stems 0..={max_stem}: {} infinite towers, {} finite",
        infinite.values().sum::<usize>(),
        m.towers().len() - infinite.values().sum::<usize>()
    ))
}

/// Towers sit in Chow-Novikov degree `p - 2q <= 0` at their base.
pub fn chow_novikov_check(m: &RhoModule) -> CheckReport {
    let mut report = CheckReport::pass("tower bases have p <= 2q");
    for t in m.towers() {
        if t.base.0 > 2 * t.base.1 {
            report.record_failure(format!("{} based at ({},{})", t.label, t.base.0, t.base.1));
        }
    }
    report
}

/// Output of [`assemble_and_check`].
#[derive(Clone, Debug)]
pub struct Assembly {
    pub data: AdamsData,
    pub module: RhoModule,
    pub reports: Vec<CheckReport>,
}

impl Assembly {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }
}

/// Assembles the module over `window` and runs both fiber checks. The
/// window needs a stem cap.
///
/// Differentials leaving stem `max_stem + 1` still hit the window, so the
/// E2 data runs one stem further (`ext` must cover it) and records whose
/// source or target label places them beyond that are dropped (and
/// counted in the report). Records with other labels are kept and must
/// name classes of the chart.
pub fn assemble_and_check(ext: &Chart, window: ExtWindow, differentials: Vec<Differential>) -> Result<Assembly> {
    let max_stem = window
        .max_stem
        .ok_or_else(|| Error::Window("assembly needs a stem bound".into()))?;
    let edge = ExtWindow {
        max_stem: Some(max_stem + 1),
        max_t: window.max_t + 1,
        ..window
    };
    let inside = |label: &str| {
        crate::ext::label_position(label).is_none_or(|(s, t)| edge.contains_st(s as i64, t as i64))
    };
    let total = differentials.len();
    let differentials: Vec<Differential> = differentials
        .into_iter()
        .filter(|d| inside(&d.source) && inside(&d.target))
        .collect();
    let dropped = total - differentials.len();
    let data = AdamsData::new(edge.restrict(ext), differentials)?;
    let module = assemble(&data);
    let crho = crate::ext::crho_chart(&window.restrict(data.e2()));
    let mut generic = generic_fiber_check(&module, &data, max_stem);
    if dropped > 0 {
        generic = generic.with_detail(format!("{dropped} of {total} differentials lie outside the window"));
    }
    let reports = vec![
        special_fiber_check(&module, &crho, window)?,
        generic,
        chow_novikov_check(&module),
    ];
    Ok(Assembly {
        data,
        module,
        reports,
    })
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimensions of `(C rho)^{n}` on the part of the window where they are
/// determined, via `dim = sum_i C(n-1, i) dim crho(p, q + i)`.
pub fn smash_power_chart(crho: &Chart, n: u32, window: ExtWindow) -> Chart {
    assert!(n >= 1);
    let shift = n as i64 - 1;
    let mut out = Chart::new(Grading::Pq);
    for (p, q) in smash_domain(window, shift) {
        let d: u64 = (0..=shift)
            .map(|i| binomial(shift as u64, i as u64) * crho.dim(&[p, q + i]) as u64)
            .sum();
        out.set_dim(&[p, q], d as usize);
    }
    out
}

/// Bidegrees where every `crho(p, q + i)`, `i <= shift`, is known: either
/// inside the window or forced to vanish (`q + i < 0` or `2(q + i) < p`).
fn smash_domain(window: ExtWindow, shift: i64) -> Vec<(i64, i64)> {
    let known = |p: i64, q: i64| q < 0 || 2 * q < p || window.contains_pq(p, q);
    let mut out = Vec::new();
    for q in -shift - 1..=window.max_t {
        for p in 2 * q - window.max_s - 1..=2 * q + 2 * shift + 1 {
            if (0..=shift).all(|i| known(p, q + i)) {
                out.push((p, q));
            }
        }
    }
    out
}

/// Iterating the two-fold splitting `c_k(p,q) = c_{k-1}(p,q) + c_{k-1}(p,q+1)`
/// must reproduce the binomial closed form, for every `k <= n`.
pub fn smash_rank_check(crho: &Chart, n: u32, window: ExtWindow) -> CheckReport {
    let mut report = CheckReport::pass(format!("smash powers of Cρ: iterative = binomial, n <= {n}"));
    if n == 0 {
        report.record_failure("n must be at least 1");
        return report;
    }
    let mut level: HashMap<(i64, i64), usize> = smash_domain(window, 0)
        .into_iter()
        .map(|(p, q)| ((p, q), crho.dim(&[p, q])))
        .collect();
    let mut compared = 0usize;
    for k in 1..=n {
        if k > 1 {
            // entries outside the enumerated band vanish for degree reasons
            let at = |level: &HashMap<(i64, i64), usize>, p: i64, q: i64| {
                level.get(&(p, q)).copied().unwrap_or_else(|| {
                    assert!(q < 0 || 2 * q < p, "smash level missing ({p},{q})");
                    0
                })
            };
            level = smash_domain(window, k as i64 - 1)
                .into_iter()
                .map(|(p, q)| ((p, q), at(&level, p, q) + at(&level, p, q + 1)))
                .collect();
        }
        let closed = smash_power_chart(crho, k, window);
        let mut keys: Vec<_> = level.keys().copied().collect();
        keys.sort();
        for (p, q) in keys {
            compared += 1;
            let (a, b) = (level[&(p, q)], closed.dim(&[p, q]));
            if a != b {
                report.record_failure(format!("n={k} at ({p},{q}): iterative {a}, closed form {b}"));
            }
        }
    }
    report.with_detail(format!("{compared} bidegree comparisons"))
}
