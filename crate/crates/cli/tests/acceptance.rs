//! Acceptance run: one PASS/FAIL line per criterion, with wall time.
//!
//! Runs without the libtest harness so the lines always reach stdout.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use isochart::bpbp::{self, HopfAlgebroid};
use isochart::deformation::{self, ExtWindow};
use isochart::ext::{self, Budget, Resolution};
use isochart::presentations::{self, BuiltinAlgebra};
use isochart::{Chart, Grading};

// Pinned limits. Each is a hard upper bound on wall time.
const LIMIT_ORACLE: Duration = Duration::from_secs(60);
const LIMIT_PRESENTATIONS: Duration = Duration::from_secs(10);
const LIMIT_FIBERS: Duration = Duration::from_secs(10);
const LIMIT_BPBP: Duration = Duration::from_secs(30);

const ORACLE_S: u32 = 6;
const ORACLE_T: u32 = 12;
const CHART_S: u32 = 12;
const CHART_T: u32 = 32;
const WINDOW: i64 = 20;
const SAMPLES: usize = 1000;
const SEED: u64 = 1;
const SMASH_N: u32 = 4;
const MAX_STEM: i64 = 20;
const BPBP_DEGREE: u32 = 14;
const BPBP_N: usize = 3;
const WORKERS_N: usize = 4;
const CELLS: usize = 5_000_000;

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self {
            passed,
            detail: detail.into(),
        }
    }
}

fn resolution(max_s: u32, max_t: u32, workers: usize) -> Resolution {
    let mut r = Resolution::new().with_workers(workers).with_budget(Budget {
        max_module_dim: usize::MAX,
    });
    r.extend(max_s, max_t).expect("resolution");
    r
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let mut out = f();
    let took = start.elapsed();
    if let Some(limit) = limit {
        if took >= limit {
            out.passed = false;
            out.detail = format!("{}; over the {limit:?} limit", out.detail);
        }
    }
    (out, took)
}

fn c1_oracle() -> Outcome {
    let res = resolution(ORACLE_S, ORACLE_T, 1).ext_chart(ORACLE_S, ORACLE_T);
    let cobar = ext::cobar_ext(ORACLE_S, ORACLE_T, CELLS).expect("cobar");
    match res.first_dim_mismatch(&cobar) {
        None => Outcome::new(true, format!("s <= {ORACLE_S}, t <= {ORACLE_T}: {} classes", res.total_dim())),
        Some((k, a, b)) => Outcome::new(false, format!("(s,t)={k:?}: resolution {a}, cobar {b}")),
    }
}

fn c2_one_line() -> Outcome {
    let res = resolution(CHART_S, CHART_T, 1).ext_chart(CHART_S, CHART_T);
    let cobar = ext::cobar_ext(CHART_S, 12, CELLS).expect("cobar");
    let mut bad = Vec::new();
    for t in 0..=12i64 {
        let expected = usize::from(matches!(t, 1 | 2 | 4 | 8));
        if cobar.dim(&[1, t]) != expected || res.dim(&[1, t]) != expected {
            bad.push(format!("Ext^(1,{t})"));
        }
    }
    for s in 0..=CHART_S as i64 {
        if cobar.dim(&[s, s]) != 1 || res.dim(&[s, s]) != 1 {
            bad.push(format!("Ext^({s},{s})"));
        }
    }
    if bad.is_empty() {
        Outcome::new(true, "h0..h3 and the h0-tower through s = 12")
    } else {
        Outcome::new(false, bad.join(", "))
    }
}

fn c3_presentations() -> Outcome {
    let mut reports = vec![presentations::verify_free_basis_over_mbp(WINDOW).expect("hilbert")];
    for alg in BuiltinAlgebra::ALL {
        reports.push(presentations::check_confluence(&alg.presentation(WINDOW), SAMPLES, SEED).expect("confluence"));
    }
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed).map(|r| r.to_string()).collect();
    Outcome::new(
        failed.is_empty(),
        if failed.is_empty() {
            format!("|p|+|q| <= {WINDOW}, {SAMPLES} samples x {} algebras", BuiltinAlgebra::ALL.len())
        } else {
            failed.join("; ")
        },
    )
}

fn crho() -> Chart {
    ext::crho_chart(&resolution(CHART_S, CHART_T, 1).ext_chart(CHART_S, CHART_T))
}

fn c4_vanishing() -> Outcome {
    let chart = crho();
    let r = ext::vanishing_check(&chart);
    let mut detail = format!("{} classes", chart.total_dim());
    for d in &r.details {
        detail += &format!("; {d}");
    }
    Outcome::new(r.passed, detail)
}

fn c5_smash() -> Outcome {
    let r = deformation::smash_rank_check(&crho(), SMASH_N, ExtWindow::new(CHART_S as i64, CHART_T as i64));
    Outcome::new(r.passed, format!("n <= {SMASH_N}; {}", r.details.join("; ")))
}

fn c6_fibers() -> Outcome {
    let max_t = MAX_STEM as u32 + CHART_S;
    let ext = resolution(CHART_S, max_t + 1, 1).ext_chart(CHART_S, max_t + 1);
    let ds = deformation::parse_differentials(isochart::data::ADAMS_DIFFERENTIALS).expect("bundled data");
    let window = ExtWindow::new(CHART_S as i64, max_t as i64).with_max_stem(MAX_STEM);
    let a = deformation::assemble_and_check(&ext, window, ds).expect("assemble");
    let lines: Vec<String> = a.reports.iter().map(|r| format!("{} {}", if r.passed { "ok" } else { "FAILED" }, r.name)).collect();
    Outcome::new(a.passed(), lines.join("; "))
}

fn c7_bpbp() -> Outcome {
    let h = HopfAlgebroid::new(BPBP_DEGREE).expect("BP_*BP");
    let eta = h.right_unit(1).expect("eta_R(v1)").to_string();
    let mut notes = vec![format!("eta_R(v1) = {eta}")];
    let mut passed = eta == "v1 + 2*t1";
    for r in [
        h.counit_check(),
        h.coassociativity_check(),
        bpbp::quotient_check(BPBP_N, BPBP_DEGREE).expect("quotient"),
    ] {
        passed &= r.passed;
        notes.push(format!("{} {}", if r.passed { "ok" } else { "FAILED" }, r.name));
        notes.extend(r.details);
    }
    Outcome::new(passed, notes.join("; "))
}

fn c8_colimit() -> Outcome {
    let top = bpbp::index_bound(BPBP_DEGREE);
    let mut dims = Vec::new();
    let mut passed = true;
    for k in 0..=top + 1 {
        let chart = bpbp::pure_isotropic_colimit(k + 1, BPBP_DEGREE).expect("colimit");
        let stable = chart.total_dim() == 1 && chart.dim(&[0]) == 1;
        passed &= stable == (k >= top);
        dims.push(format!("k={k}: total {}", chart.total_dim()));
    }
    let mut expected = Chart::new(Grading::Degree);
    expected.set_dim(&[0], 1);
    let last = bpbp::pure_isotropic_colimit(top + 2, BPBP_DEGREE).expect("colimit");
    passed &= last.same_dims(&expected);
    Outcome::new(passed, format!("stable from k = {top}; {}", dims.join(", ")))
}

/// Every output of one full CLI session, keyed by relative path.
fn cli_session(workers: usize) -> BTreeMap<String, Vec<u8>> {
    let dir = tempfile::tempdir().expect("tempdir");
    let bin = env!("CARGO_BIN_EXE_isochart");
    let w = workers.to_string();
    let runs: [&[&str]; 7] = [
        &["ext", "-o", "ext.tsv"],
        &["ext", "--format", "json", "-o", "ext.json"],
        &["crho", "-o", "crho.tsv"],
        &["crho", "--svg", "-o", "crho.svg"],
        &["assemble", "bundled", "20", "-o", "towers.tsv"],
        &["verify", "bpbp", "--dump", "bpbp.json"],
        &["verify", "smash"],
    ];
    for args in runs {
        let status = Command::new(bin)
            .current_dir(dir.path())
            .args(["--workers", &w])
            .args(args)
            .output()
            .expect("spawn isochart");
        assert!(status.status.success(), "isochart {args:?} failed: {}", String::from_utf8_lossy(&status.stderr));
    }
    let mut files = BTreeMap::new();
    collect(dir.path(), dir.path(), &mut files);
    files
}

fn collect(root: &Path, dir: &Path, out: &mut BTreeMap<String, Vec<u8>>) {
    for entry in fs::read_dir(dir).expect("read_dir") {
        let path = entry.expect("entry").path();
        if path.is_dir() {
            collect(root, &path, out);
        } else {
            let rel = path.strip_prefix(root).unwrap().display().to_string();
            out.insert(rel, fs::read(&path).expect("read"));
        }
    }
}

fn c9_determinism() -> Outcome {
    let a = cli_session(1);
    let b = cli_session(1);
    let c = cli_session(WORKERS_N);
    let names: Vec<&String> = a.keys().collect();
    let mut diffs = Vec::new();
    for (label, other) in [("rerun", &b), ("workers", &c)] {
        if other.keys().collect::<Vec<_>>() != names {
            diffs.push(format!("{label}: different file sets"));
        }
        for (name, bytes) in &a {
            if other.get(name) != Some(bytes) {
                diffs.push(format!("{label}: {name} differs"));
            }
        }
    }
    let has_ckpt = a.keys().any(|k| k.ends_with("resolution.ckpt"));
    if !has_ckpt {
        diffs.push("no checkpoint written".into());
    }
    if diffs.is_empty() {
        Outcome::new(true, format!("{} files identical across 2 runs and workers 1 vs {WORKERS_N}", a.len()))
    } else {
        Outcome::new(false, diffs.join("; "))
    }
}

type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("oracle equivalence", Some(LIMIT_ORACLE), c1_oracle),
        ("Adams 1-line and h0-tower", None, c2_one_line),
        ("presentations: Hilbert identity and confluence", Some(LIMIT_PRESENTATIONS), c3_presentations),
        ("C-rho chart vanishing", None, c4_vanishing),
        ("smash power identity", None, c5_smash),
        ("deformation fibers", Some(LIMIT_FIBERS), c6_fibers),
        ("BP_*BP quotient and Hopf algebroid laws", Some(LIMIT_BPBP), c7_bpbp),
        ("pure isotropic colimit", None, c8_colimit),
        ("determinism", None, c9_determinism),
    ];
    let mut failures = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let (out, took) = timed(limit, run);
        let limit = limit.map(|l| format!(" (limit {}s)", l.as_secs())).unwrap_or_default();
        println!(
            "{} {}: {name} [{:.3}s{limit}] {}",
            if out.passed { "PASS" } else { "FAIL" },
            i + 1,
            took.as_secs_f64(),
            out.detail
        );
        failures += usize::from(!out.passed);
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
