//! Named verification suites. Each suite returns a list of checks that carry
//! the exact numbers they computed; randomized checks draw from a ChaCha
//! stream seeded from the configuration.

mod modules;
mod pbw;
mod star;
mod structure;
mod walgebra;
mod whittaker;

use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::SuiteConfig;
use crate::error::CliError;
use crate::report::{Check, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Structure,
    Forms,
    Pbw,
    Clifford,
    Verma,
    Whittaker,
    GoodGrading,
    DwLemmas,
    WDims,
    Theta,
    Star,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Structure,
        Suite::Forms,
        Suite::Pbw,
        Suite::Clifford,
        Suite::Verma,
        Suite::Whittaker,
        Suite::GoodGrading,
        Suite::DwLemmas,
        Suite::WDims,
        Suite::Theta,
        Suite::Star,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Structure => "structure",
            Suite::Forms => "forms",
            Suite::Pbw => "pbw",
            Suite::Clifford => "clifford",
            Suite::Verma => "verma",
            Suite::Whittaker => "whittaker",
            Suite::GoodGrading => "good-grading",
            Suite::DwLemmas => "dw-lemmas",
            Suite::WDims => "w-dims",
            Suite::Theta => "theta",
            Suite::Star => "star",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            CliError::Config(format!("unknown suite {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

/// Runs a suite and assembles its report.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    let checks: Vec<Check> = match suite {
        Suite::Structure => structure::structure(cfg)?,
        Suite::Forms => structure::forms(cfg)?,
        Suite::Pbw => pbw::pbw(cfg)?,
        Suite::Clifford => modules::clifford(cfg)?,
        Suite::Verma => modules::verma(cfg)?,
        Suite::Whittaker => whittaker::whittaker(cfg)?,
        Suite::GoodGrading => walgebra::good_grading(cfg)?,
        Suite::DwLemmas => walgebra::dw_lemmas(cfg)?,
        Suite::WDims => walgebra::w_dims(cfg)?,
        Suite::Theta => walgebra::theta(cfg)?,
        Suite::Star => star::star(cfg)?,
    };
    Ok(Report::new(suite.name(), cfg, checks))
}

/// Seeded sampler shared by the randomized checks.
pub(crate) struct Sampler(ChaCha8Rng);

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.0.next_u64() % (hi - lo + 1) as u64) as i64
    }

    /// Uniform index in `0..len`.
    pub fn index(&mut self, len: usize) -> usize {
        (self.0.next_u64() % len as u64) as usize
    }
}
