//! Finitely supported graded dimension tables and their TSV encoding.
//!
//! A chart file is a header naming the grading columns followed by sorted
//! rows `<coords...>\t<dim>\t<labels>`. Labels are comma separated; `-`
//! stands for no labels. An optional `# frontier` line records where an
//! interrupted computation stopped.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grading {
    /// Adams `(s, t)`.
    St,
    /// Homological bidegree `(p, q)`.
    Pq,
    /// Trigrading `(s, t, u)` for Ext over `G_**`.
    Stu,
    /// A single internal degree.
    Degree,
}

impl Grading {
    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Grading::St => &["s", "t"],
            Grading::Pq => &["p", "q"],
            Grading::Stu => &["s", "t", "u"],
            Grading::Degree => &["d"],
        }
    }

    pub fn arity(self) -> usize {
        self.columns().len()
    }

    fn from_columns(cols: &[&str]) -> Option<Self> {
        [Grading::St, Grading::Pq, Grading::Stu, Grading::Degree]
            .into_iter()
            .find(|g| g.columns() == cols)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ChartEntry {
    pub dim: usize,
    pub labels: Vec<String>,
}

/// Where a partial computation stopped: complete for `s <= max_s`,
/// `t <= completed_t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Frontier {
    pub max_s: i64,
    pub completed_t: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    grading: Grading,
    entries: BTreeMap<Vec<i64>, ChartEntry>,
    pub frontier: Option<Frontier>,
}

impl Chart {
    pub fn new(grading: Grading) -> Self {
        Self {
            grading,
            entries: BTreeMap::new(),
            frontier: None,
        }
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Sets the entry at `key`; a zero dimension removes it.
    pub fn set(&mut self, key: &[i64], dim: usize, labels: Vec<String>) {
        assert_eq!(key.len(), self.grading.arity(), "key arity");
        if dim == 0 {
            self.entries.remove(key);
        } else {
            self.entries.insert(key.to_vec(), ChartEntry { dim, labels });
        }
    }

    pub fn set_dim(&mut self, key: &[i64], dim: usize) {
        self.set(key, dim, Vec::new());
    }

    pub fn dim(&self, key: &[i64]) -> usize {
        self.entries.get(key).map_or(0, |e| e.dim)
    }

    pub fn get(&self, key: &[i64]) -> Option<&ChartEntry> {
        self.entries.get(key)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[i64], &ChartEntry)> {
        self.entries.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn total_dim(&self) -> usize {
        self.entries.values().map(|e| e.dim).sum()
    }

    /// Same support and dimensions, ignoring labels and frontier.
    pub fn same_dims(&self, other: &Chart) -> bool {
        self.grading == other.grading
            && self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .all(|(k, e)| other.dim(k) == e.dim)
    }

    /// First key (in sort order) where dimensions differ.
    pub fn first_dim_mismatch(&self, other: &Chart) -> Option<(Vec<i64>, usize, usize)> {
        let mut keys: Vec<&Vec<i64>> = self.entries.keys().chain(other.entries.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .map(|k| (k.clone(), self.dim(k), other.dim(k)))
            .find(|(_, a, b)| a != b)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        if let Some(f) = self.frontier {
            writeln!(out, "# frontier\t{}\t{}", f.max_s, f.completed_t).unwrap();
        }
        writeln!(out, "{}\tdim\tlabels", self.grading.columns().join("\t")).unwrap();
        for (k, e) in &self.entries {
            for c in k {
                write!(out, "{c}\t").unwrap();
            }
            let labels = if e.labels.is_empty() {
                "-".to_string()
            } else {
                e.labels.join(",")
            };
            writeln!(out, "{}\t{}", e.dim, labels).unwrap();
        }
        out
    }

    pub fn from_tsv(text: &str) -> Result<Chart> {
        let mut frontier = None;
        let mut chart: Option<Chart> = None;
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let fields: Vec<&str> = rest.trim().split('\t').collect();
                if fields.first() == Some(&"frontier") {
                    if fields.len() != 3 {
                        return Err(Error::parse(lineno, "frontier needs two values"));
                    }
                    let parse = |s: &str| {
                        s.parse::<i64>()
                            .map_err(|_| Error::parse(lineno, format!("bad integer {s:?}")))
                    };
                    frontier = Some(Frontier {
                        max_s: parse(fields[1])?,
                        completed_t: parse(fields[2])?,
                    });
                }
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let Some(c) = chart.as_mut() else {
                let n = fields.len();
                if n < 3 || fields[n - 2] != "dim" || fields[n - 1] != "labels" {
                    return Err(Error::parse(lineno, "missing chart header"));
                }
                let grading = Grading::from_columns(&fields[..n - 2])
                    .ok_or_else(|| Error::parse(lineno, "unknown grading columns"))?;
                chart = Some(Chart::new(grading));
                continue;
            };
            let arity = c.grading.arity();
            if fields.len() != arity + 2 {
                return Err(Error::parse(lineno, "wrong number of fields"));
            }
            let mut key = Vec::with_capacity(arity);
            for f in &fields[..arity] {
                key.push(
                    f.parse::<i64>()
                        .map_err(|_| Error::parse(lineno, format!("bad coordinate {f:?}")))?,
                );
            }
            let dim: usize = fields[arity]
                .parse()
                .map_err(|_| Error::parse(lineno, "bad dimension"))?;
            if dim == 0 {
                return Err(Error::parse(lineno, "zero dimension rows are not stored"));
            }
            let labels = match fields[arity + 1] {
                "-" => Vec::new(),
                l => l.split(',').map(str::to_string).collect(),
            };
            if c.entries.insert(key, ChartEntry { dim, labels }).is_some() {
                return Err(Error::parse(lineno, "duplicate row"));
            }
        }
        let mut chart = chart.ok_or_else(|| Error::parse(0, "empty chart file"))?;
        chart.frontier = frontier;
        Ok(chart)
    }
}
