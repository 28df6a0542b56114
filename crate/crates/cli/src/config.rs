//! Suite configuration: defaults, a `key = value` file format, and
//! command-line overrides.
//!
//! File format: one `key = value` per line; blank lines and lines starting
//! with `#` are ignored. Keys: `n`, `E`, `zeta`, `lambda`, `cap`, `depth`,
//! `seed`, `samples`, `theta`, `output`, `timings`.

use std::fmt;
use std::path::{Path, PathBuf};

use qwk::walgebra::{NamedNilpotent, NilpotentDatum};
use qwk::{build_qn, Scalar, Weight};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const DEFAULT_SEED: u64 = 2024;
/// Largest rank accepted by the suites.
pub const MAX_SUITE_RANK: usize = 4;

/// Nilpotent element: a named family or an explicit odd basis combination.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", from = "String")]
pub enum NilpotentSpec {
    Named(NamedNilpotent),
    Element(String),
}

impl NilpotentSpec {
    pub fn parse(s: &str) -> Self {
        match NamedNilpotent::parse(s.trim()) {
            Some(k) => NilpotentSpec::Named(k),
            None => NilpotentSpec::Element(s.trim().to_string()),
        }
    }

    /// Expands to a nilpotent datum of q(n).
    pub fn datum(&self, n: usize) -> Result<NilpotentDatum, CliError> {
        let q = build_qn(n)?;
        Ok(match self {
            NilpotentSpec::Named(k) => NilpotentDatum::named(q, *k)?,
            NilpotentSpec::Element(s) => {
                let e = q.parse(s)?;
                NilpotentDatum::new(q, &e)?
            }
        })
    }
}

impl From<NilpotentSpec> for String {
    fn from(s: NilpotentSpec) -> String {
        s.to_string()
    }
}

impl From<String> for NilpotentSpec {
    fn from(s: String) -> Self {
        NilpotentSpec::parse(&s)
    }
}

impl fmt::Display for NilpotentSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NilpotentSpec::Named(NamedNilpotent::Principal) => f.write_str("principal"),
            NilpotentSpec::Named(NamedNilpotent::Minimal) => f.write_str("minimal"),
            NilpotentSpec::Element(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub n: usize,
    #[serde(rename = "E")]
    pub nilpotent: NilpotentSpec,
    /// Values of ζ on the simple root vectors; empty means all ones.
    pub zeta: Vec<Scalar>,
    pub lambda: Option<Weight>,
    pub cap: Option<usize>,
    pub depth: Option<i64>,
    pub seed: u64,
    pub samples: Option<usize>,
    pub theta: Option<Vec<i64>>,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n: 2,
            nilpotent: NilpotentSpec::Named(NamedNilpotent::Principal),
            zeta: Vec::new(),
            lambda: None,
            cap: None,
            depth: None,
            seed: DEFAULT_SEED,
            samples: None,
            theta: None,
            output: None,
            timings: false,
        }
    }
}

pub fn parse_list<T: std::str::FromStr>(key: &str, s: &str) -> Result<Vec<T>, CliError> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(')');
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',').map(|x| x.trim().parse::<T>().map_err(|_| CliError::Config(format!("{key}: cannot parse {x:?}")))).collect()
}

fn parse_one<T: std::str::FromStr>(key: &str, s: &str) -> Result<T, CliError> {
    s.trim().parse::<T>().map_err(|_| CliError::Config(format!("{key}: cannot parse {s:?}")))
}

fn parse_bool(key: &str, s: &str) -> Result<bool, CliError> {
    match s.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(CliError::Config(format!("{key}: expected a boolean, got {other:?}"))),
    }
}

impl SuiteConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "n" => self.n = parse_one(key, value)?,
            "E" | "nilpotent" => self.nilpotent = NilpotentSpec::parse(value),
            "zeta" => self.zeta = parse_list(key, value)?,
            "lambda" => self.lambda = Some(value.parse::<Weight>().map_err(|e| CliError::Config(format!("lambda: {e}")))?),
            "cap" => self.cap = Some(parse_one(key, value)?),
            "depth" => self.depth = Some(parse_one(key, value)?),
            "seed" => self.seed = parse_one(key, value)?,
            "samples" => self.samples = Some(parse_one(key, value)?),
            "theta" => self.theta = Some(parse_list(key, value)?),
            "output" => self.output = Some(PathBuf::from(value.trim())),
            "timings" => self.timings = parse_bool(key, value)?,
            _ => return Err(CliError::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    pub fn parse_text(text: &str) -> Result<Self, CliError> {
        let mut cfg = SuiteConfig::default();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| CliError::Config(format!("line {}: expected key = value", no + 1)))?;
            cfg.set(k.trim(), v.trim())?;
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse_text(&text)
    }

    /// Range checks shared by all suites.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.n == 0 || self.n > MAX_SUITE_RANK {
            return Err(CliError::Config(format!("n = {} outside 1..={MAX_SUITE_RANK}", self.n)));
        }
        if !self.zeta.is_empty() && self.zeta.len() + 1 != self.n {
            return Err(CliError::Config(format!("zeta needs {} values for n = {}", self.n - 1, self.n)));
        }
        if let Some(l) = &self.lambda {
            if l.n() != self.n {
                return Err(CliError::Config(format!("lambda has {} entries, expected {}", l.n(), self.n)));
            }
        }
        if let Some(t) = &self.theta {
            if t.len() != self.n {
                return Err(CliError::Config(format!("theta has {} entries, expected {}", t.len(), self.n)));
            }
        }
        if self.depth.is_some_and(|d| d < 0) {
            return Err(CliError::Config("depth must be nonnegative".into()));
        }
        Ok(())
    }

    /// ζ values, defaulting to all ones.
    pub fn zeta_values(&self) -> Vec<Scalar> {
        if self.zeta.is_empty() {
            vec![Scalar::one(); self.n.saturating_sub(1)]
        } else {
            self.zeta.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_format() {
        let cfg = SuiteConfig::parse_text("# comment\nn = 3\nE = minimal\nzeta = 1, 0\nseed=7\ntheta = 1,1,0\n").unwrap();
        assert_eq!(cfg.n, 3);
        assert_eq!(cfg.nilpotent, NilpotentSpec::Named(NamedNilpotent::Minimal));
        assert_eq!(cfg.zeta, vec![Scalar::one(), Scalar::zero()]);
        assert_eq!((cfg.seed, cfg.theta.clone()), (7, Some(vec![1, 1, 0])));
        cfg.validate().unwrap();
        assert!(SuiteConfig::parse_text("bogus = 1").is_err());
        assert!(SuiteConfig::parse_text("n 3").is_err());
        let bad = SuiteConfig::parse_text("n = 2\nzeta = 1,1").unwrap();
        assert!(bad.validate().is_err());
    }

    #[test]
    fn nilpotent_specs() {
        assert!(NilpotentSpec::parse("principal").datum(2).is_ok());
        let e = NilpotentSpec::parse("f(1,2)");
        assert_eq!(e.to_string(), "f(1,2)");
        assert!(e.datum(3).is_ok());
        assert!(NilpotentSpec::parse("e(1,2)").datum(2).is_err());
    }
}
