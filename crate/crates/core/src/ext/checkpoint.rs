//! Line-oriented checkpoint format for resolutions.
//!
//! ```text
//! ISOCHART-RES v1
//! stages 3
//! done 0 12
//! done 1 12
//! done 2 12
//! gen 0 0
//! gen 1 1 0(1)
//! gen 1 2 0(2)
//! gen 2 2 0(1)
//! end
//! ```
//!
//! `gen <s> <t> <terms>` lists a generator of stage `s` in internal degree
//! `t` together with its differential, each term `k(r1,r2,...)` standing for
//! `Sq(r1,r2,...)` applied to generator `k` of stage `s - 1`. Generators of a
//! stage appear in index order.

use std::fmt::Write as _;

use super::resolution::{Generator, Resolution};
use crate::error::{Error, Result};
use crate::steenrod::MilnorElement;

pub const CHECKPOINT_HEADER: &str = "ISOCHART-RES v1";

impl Resolution {
    pub fn to_checkpoint(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{CHECKPOINT_HEADER}").unwrap();
        writeln!(out, "stages {}", self.stages().len()).unwrap();
        for (s, done) in self.stage_done().iter().enumerate() {
            writeln!(out, "done {s} {done}").unwrap();
        }
        for (s, gens) in self.stages().iter().enumerate() {
            for g in gens {
                write!(out, "gen {s} {}", g.t).unwrap();
                for (k, m) in &g.differential {
                    let exps: Vec<String> = m.exponents().iter().map(u32::to_string).collect();
                    write!(out, " {k}({})", exps.join(",")).unwrap();
                }
                out.push('\n');
            }
        }
        out.push_str("end\n");
        out
    }

    pub fn from_checkpoint(text: &str) -> Result<Resolution> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, h)) if h == CHECKPOINT_HEADER => {}
            Some((_, h)) if h.starts_with("ISOCHART-RES") => {
                return Err(Error::Checkpoint(format!(
                    "unsupported checkpoint version {h:?}, expected {CHECKPOINT_HEADER:?}"
                )))
            }
            _ => return Err(Error::Checkpoint("missing ISOCHART-RES header".into())),
        }
        let mut stages: Vec<Vec<Generator>> = Vec::new();
        let mut done: Vec<i64> = Vec::new();
        let mut ended = false;
        for (lineno, line) in lines {
            let mut fields = line.split_whitespace();
            let int = |f: Option<&str>| -> Result<i64> {
                f.and_then(|x| x.parse().ok())
                    .ok_or_else(|| Error::parse(lineno, "expected an integer"))
            };
            match fields.next() {
                None => continue,
                Some("stages") => {
                    let n = int(fields.next())?;
                    if n < 0 {
                        return Err(Error::parse(lineno, "negative stage count"));
                    }
                    stages = vec![Vec::new(); n as usize];
                    done = vec![-1; n as usize];
                }
                Some("done") => {
                    let s = int(fields.next())? as usize;
                    let t = int(fields.next())?;
                    *done
                        .get_mut(s)
                        .ok_or_else(|| Error::parse(lineno, "stage out of range"))? = t;
                }
                Some("gen") => {
                    let s = int(fields.next())? as usize;
                    let t = int(fields.next())?;
                    if s >= stages.len() || t < 0 {
                        return Err(Error::parse(lineno, "generator outside declared stages"));
                    }
                    let mut differential = Vec::new();
                    for term in fields {
                        differential.push(parse_term(term).ok_or_else(|| {
                            Error::parse(lineno, format!("bad term {term:?}"))
                        })?);
                    }
                    stages[s].push(Generator {
                        t: t as u32,
                        differential,
                    });
                }
                Some("end") => {
                    ended = true;
                    break;
                }
                Some(other) => {
                    return Err(Error::parse(lineno, format!("unknown record {other:?}")))
                }
            }
        }
        if !ended {
            return Err(Error::Checkpoint("truncated checkpoint (no end marker)".into()));
        }
        validate(&stages, &done)?;
        Ok(Resolution::from_parts(stages, done))
    }
}

fn parse_term(term: &str) -> Option<(usize, MilnorElement)> {
    let (k, rest) = term.split_once('(')?;
    let inner = rest.strip_suffix(')')?;
    let exps = if inner.is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|e| e.parse().ok())
            .collect::<Option<Vec<u32>>>()?
    };
    Some((k.parse().ok()?, MilnorElement::new(exps)))
}

fn validate(stages: &[Vec<Generator>], done: &[i64]) -> Result<()> {
    for (s, gens) in stages.iter().enumerate() {
        if gens.windows(2).any(|w| w[0].t > w[1].t) {
            return Err(Error::Checkpoint(format!("stage {s} generators out of order")));
        }
        for (i, g) in gens.iter().enumerate() {
            if g.t as i64 > done[s] {
                return Err(Error::Checkpoint(format!(
                    "stage {s} generator {i} lies beyond the completed degree"
                )));
            }
            if s == 0 {
                if !g.differential.is_empty() {
                    return Err(Error::Checkpoint("stage 0 generator with a differential".into()));
                }
                continue;
            }
            for (k, m) in &g.differential {
                let target = stages[s - 1].get(*k).ok_or_else(|| {
                    Error::Checkpoint(format!("stage {s} generator {i} references missing target {k}"))
                })?;
                if target.t + m.degree() != g.t {
                    return Err(Error::Checkpoint(format!(
                        "stage {s} generator {i}: term {m:?} on {k} has the wrong degree"
                    )));
                }
            }
        }
    }
    Ok(())
}
