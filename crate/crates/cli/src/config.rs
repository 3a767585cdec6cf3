//! `key = value` configuration with flag overrides.

use std::fs;
use std::path::{Path, PathBuf};

use isochart::{Error, Result};

/// Environment variable overriding the data directory.
pub const DATA_DIR_ENV: &str = "ISOCHART_DATA_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Tsv,
    Svg,
    Json,
}

impl Format {
    fn parse(s: &str) -> Option<Format> {
        match s {
            "tsv" => Some(Format::Tsv),
            "svg" => Some(Format::Svg),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub max_s: u32,
    pub max_t: u32,
    pub bpbp_degree: u32,
    pub workers: usize,
    pub budget: usize,
    pub checkpoint_dir: PathBuf,
    /// `None` means the copies compiled into the binary.
    pub data_dir: Option<PathBuf>,
    pub format: Format,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            max_s: 12,
            max_t: 32,
            bpbp_degree: isochart::bpbp::DEFAULT_DEGREE,
            workers: 1,
            budget: isochart::ext::Budget::default().max_module_dim,
            checkpoint_dir: PathBuf::from(".isochart"),
            data_dir: None,
            format: Format::Tsv,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let text = fs::read_to_string(path)?;
        let mut cfg = Config::default();
        cfg.apply_text(&text)?;
        Ok(cfg)
    }

    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse { line: i + 1, message: format!("expected key = value, got {line:?}") })?;
            self.set(key.trim(), value.trim())
                .map_err(|message| Error::Parse { line: i + 1, message })?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        let positive = |v: &str| -> std::result::Result<u64, String> {
            match v.parse::<u64>() {
                Ok(n) if n > 0 => Ok(n),
                _ => Err(format!("{key} must be a positive integer, got {v:?}")),
            }
        };
        match key {
            "max_s" => self.max_s = positive(value)? as u32,
            "max_t" => self.max_t = positive(value)? as u32,
            "bpbp_degree" => self.bpbp_degree = positive(value)? as u32,
            "workers" => self.workers = positive(value)? as usize,
            "budget" => self.budget = positive(value)? as usize,
            "checkpoint_dir" => self.checkpoint_dir = PathBuf::from(value),
            "data_dir" => self.data_dir = Some(PathBuf::from(value)),
            "format" => {
                self.format = Format::parse(value).ok_or_else(|| format!("unknown format {value:?}"))?
            }
            _ => return Err(format!("unknown key {key:?}")),
        }
        Ok(())
    }

    /// Contents of a data file: from the data directory when one is set,
    /// otherwise the bundled copy.
    pub fn data_file(&self, name: &str) -> Result<String> {
        match &self.data_dir {
            Some(dir) => {
                let path = dir.join(name);
                fs::read_to_string(&path).map_err(|e| {
                    Error::InvalidArgument(format!("missing data file {}: {e}", path.display()))
                })
            }
            None => isochart::data::bundled(name)
                .map(str::to_string)
                .ok_or_else(|| Error::InvalidArgument(format!("no bundled data file {name}"))),
        }
    }

    pub fn checkpoint_path(&self) -> PathBuf {
        self.checkpoint_dir.join("resolution.ckpt")
    }
}
