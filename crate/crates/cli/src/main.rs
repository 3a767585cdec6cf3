mod config;
mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use isochart::bpbp::{self, HopfAlgebroid};
use isochart::deformation::{self, ExtWindow};
use isochart::ext::{self, Budget, Resolution};
use isochart::presentations::{self, BuiltinAlgebra};
use isochart::{CheckReport, Chart, Error, Grading};

use crate::config::{Config, Format, DATA_DIR_ENV};
use crate::output::{emit, write_atomic};

const EXIT_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "isochart", version, about = "Ext charts, rho-deformations and BP_*BP checks over GF(2)")]
struct Cli {
    /// key = value configuration file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true)]
    data_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    checkpoint_dir: Option<PathBuf>,
    /// tsv, svg or json
    #[arg(long, global = true)]
    format: Option<String>,
    /// Write the main output here instead of stdout
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ext chart over (s, t) from a minimal resolution
    Ext {
        max_s: Option<u32>,
        max_t: Option<u32>,
        /// Cross-check against the cobar complex
        #[arg(long)]
        oracle: bool,
        /// Continue from the saved checkpoint
        #[arg(long)]
        resume: bool,
        /// Largest module dimension allowed in one step
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Ext chart regraded to (p, q) = (2t - s, t)
    Crho {
        max_s: Option<u32>,
        max_t: Option<u32>,
        #[arg(long)]
        svg: bool,
    },
    /// Run a verification suite
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Assemble the rho-module from a differential file and check both fibers
    Assemble {
        /// Differential records, or `bundled`
        differentials: String,
        max_stem: i64,
    },
}

#[derive(Subcommand, Debug)]
enum Suite {
    Presentations {
        #[arg(long, default_value_t = 20)]
        window: i64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    Smash {
        #[arg(long, default_value_t = 4)]
        n: u32,
    },
    Bpbp {
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Also write the structure maps as JSON
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    Fibers {
        #[arg(long, default_value_t = 20)]
        max_stem: i64,
    },
}

/// What a command reports besides hard errors.
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = build_config(&cli).and_then(|cfg| run(&cli, &cfg));
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(EXIT_FAILED),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Budget { .. } => EXIT_BUDGET,
                _ => EXIT_INPUT,
            })
        }
    }
}

fn build_config(cli: &Cli) -> isochart::Result<Config> {
    let mut cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    if let Ok(dir) = std::env::var(DATA_DIR_ENV) {
        cfg.data_dir = Some(dir.into());
    }
    let flag = |cfg: &mut Config, k: &str, v: String| {
        cfg.set(k, &v)
            .map_err(|m| Error::InvalidArgument(format!("--{}: {m}", k.replace('_', "-"))))
    };
    if let Some(w) = cli.workers {
        flag(&mut cfg, "workers", w.to_string())?;
    }
    if let Some(d) = &cli.data_dir {
        cfg.data_dir = Some(d.clone());
    }
    if let Some(d) = &cli.checkpoint_dir {
        cfg.checkpoint_dir = d.clone();
    }
    if let Some(f) = &cli.format {
        flag(&mut cfg, "format", f.clone())?;
    }
    Ok(cfg)
}

fn run(cli: &Cli, cfg: &Config) -> isochart::Result<Outcome> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Ext {
            max_s,
            max_t,
            oracle,
            resume,
            budget,
        } => {
            let (s, t) = (max_s.unwrap_or(cfg.max_s), max_t.unwrap_or(cfg.max_t));
            let mut cfg = cfg.clone();
            if let Some(b) = budget {
                cfg.budget = *b;
            }
            let res = match resolve(&cfg, s, t, *resume) {
                Ok(r) => r,
                Err((partial, e)) => {
                    emit(out, &partial.ext_chart(s, t).to_tsv())?;
                    return Err(e);
                }
            };
            let chart = res.ext_chart(s, t);
            emit(out, &render(&chart, cfg.format))?;
            if *oracle {
                let cobar = ext::cobar_ext(s, t, cfg.budget)?;
                let report = oracle_report(&chart, &cobar);
                eprintln!("{report}");
                return Ok(outcome(report.passed));
            }
            Ok(Outcome::Pass)
        }
        Command::Crho { max_s, max_t, svg } => {
            let (s, t) = (max_s.unwrap_or(cfg.max_s), max_t.unwrap_or(cfg.max_t));
            let res = compute(cfg, s, t)?;
            let crho = ext::crho_chart(&res.ext_chart(s, t));
            let text = if *svg || cfg.format == Format::Svg {
                isochart::svg::render_chart(&crho, None, &isochart::svg::h0_segments(&res, s, t))
            } else {
                render(&crho, cfg.format)
            };
            emit(out, &text)?;
            let report = ext::vanishing_check(&crho);
            eprintln!("{report}");
            Ok(outcome(report.passed))
        }
        Command::Verify { suite } => verify(suite, cfg),
        Command::Assemble {
            differentials,
            max_stem,
        } => {
            let text = if differentials == "bundled" {
                cfg.data_file(isochart::data::ADAMS_DIFFERENTIALS_FILE)?
            } else {
                fs::read_to_string(differentials)
                    .map_err(|e| Error::InvalidArgument(format!("cannot read {differentials}: {e}")))?
            };
            let assembly = assemble(cfg, &text, *max_stem)?;
            emit(out, &assembly.module.to_tsv())?;
            for r in &assembly.reports {
                eprintln!("{r}");
            }
            Ok(outcome(assembly.passed()))
        }
    }
}

/// Chart as TSV, or as JSON rows when asked for.
fn render(chart: &Chart, format: Format) -> String {
    if format != Format::Json {
        return chart.to_tsv();
    }
    let cols = chart.grading().columns();
    let rows: Vec<serde_json::Value> = chart
        .entries()
        .map(|(k, e)| {
            let mut row = serde_json::Map::new();
            for (c, v) in cols.iter().zip(k) {
                row.insert(c.to_string(), (*v).into());
            }
            row.insert("dim".into(), e.dim.into());
            row.insert("labels".into(), e.labels.clone().into());
            serde_json::Value::Object(row)
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("json") + "\n"
}

fn outcome(passed: bool) -> Outcome {
    if passed {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn report_all(reports: &[CheckReport]) -> Outcome {
    for r in reports {
        println!("{r}");
    }
    outcome(reports.iter().all(|r| r.passed))
}

fn oracle_report(resolution: &Chart, cobar: &Chart) -> CheckReport {
    let mut r = CheckReport::pass("resolution agrees with cobar complex");
    if let Some((k, a, b)) = resolution.first_dim_mismatch(cobar) {
        r.record_failure(format!("(s,t)={k:?}: resolution {a}, cobar {b}"));
    }
    r
}

fn compute(cfg: &Config, max_s: u32, max_t: u32) -> isochart::Result<Resolution> {
    let mut res = Resolution::new()
        .with_workers(cfg.workers)
        .with_budget(Budget {
            max_module_dim: cfg.budget,
        });
    res.extend(max_s, max_t)?;
    Ok(res)
}

/// Extends a (possibly resumed) resolution, saving a checkpoint either way.
/// On failure the partial resolution comes back with the error.
fn resolve(cfg: &Config, max_s: u32, max_t: u32, resume: bool) -> Result<Resolution, (Resolution, Error)> {
    let path = cfg.checkpoint_path();
    let start = if resume && path.exists() {
        let text = fs::read_to_string(&path).map_err(|e| (Resolution::new(), e.into()))?;
        Resolution::from_checkpoint(&text).map_err(|e| (Resolution::new(), e))?
    } else {
        if resume {
            eprintln!("no checkpoint at {}, starting fresh", path.display());
        }
        Resolution::new()
    };
    let mut res = start.with_workers(cfg.workers).with_budget(Budget {
        max_module_dim: cfg.budget,
    });
    let result = res.extend(max_s, max_t);
    let saved = fs::create_dir_all(&cfg.checkpoint_dir)
        .and_then(|_| write_atomic(&path, &res.to_checkpoint()))
        .map_err(Error::from);
    match (result, saved) {
        (Err(e), _) | (Ok(()), Err(e)) => Err((res, e)),
        (Ok(()), Ok(())) => Ok(res),
    }
}

fn assemble(cfg: &Config, differentials: &str, max_stem: i64) -> isochart::Result<deformation::Assembly> {
    let ds = deformation::parse_differentials(differentials)?;
    let max_s = cfg.max_s;
    let max_t = max_stem.max(0) as u32 + max_s;
    // one stem past the window for differentials landing on its edge
    let res = compute(cfg, max_s, max_t + 1)?;
    let window = ExtWindow::new(max_s as i64, max_t as i64).with_max_stem(max_stem);
    deformation::assemble_and_check(&res.ext_chart(max_s, max_t + 1), window, ds)
}

fn verify(suite: &Suite, cfg: &Config) -> isochart::Result<Outcome> {
    let mut reports = Vec::new();
    match suite {
        Suite::Presentations {
            window,
            samples,
            seed,
        } => {
            reports.push(presentations::verify_free_basis_over_mbp(*window)?);
            reports.push(presentations::tau_image_check());
            let quotient = presentations::pure_quotient_dims(BuiltinAlgebra::HzIso, *window)?;
            let mut rho = Chart::new(Grading::Pq);
            for n in 0..=*window / 2 {
                rho.set_dim(&[-n, -n], 1);
            }
            let mut r = CheckReport::pass("HZ_ISO/(r_i) = F2[rho]");
            if let Some((k, a, b)) = quotient.first_dim_mismatch(&rho) {
                r.record_failure(format!("{k:?}: {a} vs {b}"));
            }
            reports.push(r);
            for alg in BuiltinAlgebra::ALL {
                reports.push(presentations::check_confluence(&alg.presentation(*window), *samples, *seed)?);
            }
            reports.push(presentations::retract_check(*window)?);
        }
        Suite::Smash { n } => {
            let res = compute(cfg, cfg.max_s, cfg.max_t)?;
            let crho = ext::crho_chart(&res.ext_chart(cfg.max_s, cfg.max_t));
            let window = ExtWindow::new(cfg.max_s as i64, cfg.max_t as i64);
            reports.push(deformation::smash_rank_check(&crho, *n, window));
        }
        Suite::Bpbp { n, dump } => {
            let h = HopfAlgebroid::new(cfg.bpbp_degree)?;
            reports.push(h.hazewinkel.round_trip_check());
            reports.push(h.counit_check());
            reports.push(h.coassociativity_check());
            reports.push(h.ring_map_check());
            reports.push(bpbp::quotient_check(*n, cfg.bpbp_degree)?);
            reports.push(colimit_report(cfg.bpbp_degree)?);
            if let Some(path) = dump {
                let json = serde_json::to_string_pretty(&h.to_json()).expect("json");
                write_atomic(path, &(json + "\n"))?;
            }
        }
        Suite::Fibers { max_stem } => {
            let text = cfg.data_file(isochart::data::ADAMS_DIFFERENTIALS_FILE)?;
            let assembly = assemble(cfg, &text, *max_stem)?;
            reports.extend(assembly.reports);
            let plain = assemble(cfg, "", *max_stem)?;
            let mut r = CheckReport::pass("no differentials: one infinite tower per E2 class");
            let classes = plain.data.e2().total_dim();
            let infinite = plain.module.towers().iter().filter(|t| t.length.is_none()).count();
            if !plain.passed() || infinite != classes || plain.module.towers().len() != classes {
                r.record_failure(format!("{infinite} infinite towers for {classes} classes"));
            }
            reports.push(r);
        }
    }
    Ok(report_all(&reports))
}

/// `BP_*/(2, v_1, ..., v_k)` is `F_2` in degree 0 once `k` passes every
/// generator index that fits in the degree window.
fn colimit_report(degree: u32) -> isochart::Result<CheckReport> {
    let top = bpbp::index_bound(degree);
    let mut r = CheckReport::pass(format!("BP_*/(2, v_1..v_k) stabilizes to F2, degree <= {degree}"));
    for k in 0..=top + 1 {
        let chart = bpbp::pure_isotropic_colimit(k + 1, degree)?;
        let stable = chart.total_dim() == 1 && chart.dim(&[0]) == 1;
        if stable != (k >= top) {
            r.record_failure(format!("k={k}: dims {}", chart.to_tsv().replace('\n', " ")));
        }
    }
    Ok(r)
}
