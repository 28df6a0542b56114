//! Schema-versioned JSON reports.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::SuiteConfig;

pub const SCHEMA: &str = "qwk-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One named check with the exact numbers it computed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub data: BTreeMap<String, Value>,
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// Witness lists are capped so a systematic failure stays readable.
const MAX_WITNESSES: usize = 10;

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Pass, data: BTreeMap::new(), witnesses: Vec::new(), elapsed_ms: None }
    }

    pub fn skipped(name: impl Into<String>, why: &str) -> Self {
        let mut c = Check::new(name);
        c.status = Status::Skipped;
        c.data.insert("reason".into(), Value::from(why));
        c
    }

    pub fn with(mut self, key: &str, v: impl Serialize) -> Self {
        self.record(key, v);
        self
    }

    pub fn record(&mut self, key: &str, v: impl Serialize) {
        self.data.insert(key.to_string(), serde_json::to_value(v).expect("serializable value"));
    }

    /// Marks the check failed unless `ok`, keeping `witness` as evidence.
    pub fn expect(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if !ok {
            self.status = Status::Fail;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Runs `f` and stores its wall time on the returned check.
pub fn timed(f: impl FnOnce() -> Check) -> Check {
    let t = Instant::now();
    let mut c = f();
    c.elapsed_ms = Some(t.elapsed().as_millis() as u64);
    c
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub suite: String,
    pub config: SuiteConfig,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str, config: &SuiteConfig, mut checks: Vec<Check>) -> Self {
        if !config.timings {
            for c in &mut checks {
                c.elapsed_ms = None;
            }
        }
        let pass = checks.iter().all(Check::passed);
        Report { schema: SCHEMA.into(), suite: suite.into(), config: config.clone(), pass, checks }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}
