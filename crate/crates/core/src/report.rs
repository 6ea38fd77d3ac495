//! Sweep reports and atomic file output.
//!
//! The JSON layout is described by `schemas/report.schema.json`. Fields under
//! `runtime` and every record's `runtime_us` vary between runs; everything
//! else is a function of the configuration.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Writes `bytes` to a temporary file next to `path`, then renames it over
/// `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error.to_string()))?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The statement's hypotheses do not hold on this instance.
    Unmet,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    /// Sort key; unique within a report.
    pub key: String,
    pub check: String,
    /// The mathematical statement being checked.
    pub anchor: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub verdict: Verdict,
    pub slack: Option<f64>,
    pub residual: Option<f64>,
    pub detail: String,
    pub runtime_us: u64,
}

impl CheckRecord {
    pub fn new(key: String, check: &str, anchor: &str) -> Self {
        Self {
            key,
            check: check.to_owned(),
            anchor: anchor.to_owned(),
            params: BTreeMap::new(),
            verdict: Verdict::Pass,
            slack: None,
            residual: None,
            detail: String::new(),
            runtime_us: 0,
        }
    }

    pub fn param(mut self, name: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(name.to_owned(), value.into());
        self
    }

    pub fn verdict(mut self, v: Verdict) -> Self {
        self.verdict = v;
        self
    }

    pub fn passed(self, ok: bool) -> Self {
        self.verdict(if ok { Verdict::Pass } else { Verdict::Fail })
    }

    pub fn slack(mut self, s: f64) -> Self {
        self.slack = Some(s);
        self
    }

    pub fn residual(mut self, r: f64) -> Self {
        self.residual = Some(r);
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub unmet: usize,
    /// Failing records per check id.
    pub failures_by_check: BTreeMap<String, usize>,
}

impl Summary {
    pub fn tally(records: &[CheckRecord]) -> Self {
        let mut s = Summary {
            total: records.len(),
            ..Summary::default()
        };
        for r in records {
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Unmet => s.unmet += 1,
                Verdict::Fail => {
                    s.fail += 1;
                    *s.failures_by_check.entry(r.check.clone()).or_default() += 1;
                }
            }
        }
        s
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RuntimeInfo {
    pub jobs: usize,
    pub total_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument<C> {
    pub schema_version: u32,
    pub tool_version: String,
    pub config: C,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
    pub runtime: RuntimeInfo,
}

impl<C: Serialize> ReportDocument<C> {
    /// Sorts records by key and recomputes the summary.
    pub fn new(config: C, mut records: Vec<CheckRecord>, runtime: RuntimeInfo) -> Self {
        records.sort_by(|a, b| a.key.cmp(&b.key));
        let summary = Summary::tally(&records);
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_owned(),
            config,
            records,
            summary,
            runtime,
        }
    }

    /// 0 if nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.fail > 0)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The report with every runtime field zeroed.
    pub fn without_runtime(&self) -> Self
    where
        C: Clone,
    {
        let mut r = self.clone();
        r.runtime = RuntimeInfo::default();
        r.records.iter_mut().for_each(|rec| rec.runtime_us = 0);
        r
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_json().as_bytes())
    }
}
