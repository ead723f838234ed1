//! Persisted results of exhaustive sweeps (JSON and CSV).

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{Element, Field};

/// A named set of candidate locators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pool {
    pub description: String,
    pub elements: Vec<Element>,
}

impl Pool {
    pub fn new(description: impl Into<String>, elements: Vec<Element>) -> Self {
        Pool {
            description: description.into(),
            elements,
        }
    }

    /// Sorted ascending by canonical index, duplicates removed.
    pub fn canonical(&self) -> Pool {
        let mut elements = self.elements.clone();
        elements.sort();
        elements.dedup();
        Pool {
            description: self.description.clone(),
            elements,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub field: String,
    pub q: u64,
    pub command: String,
    pub parameters: serde_json::Value,
    /// Unix seconds; the only field allowed to differ between identical runs.
    pub timestamp: Option<u64>,
    pub version: String,
}

impl ReportMetadata {
    pub fn new(field: &Field, command: &str, parameters: serde_json::Value) -> Self {
        ReportMetadata {
            field: field.record(),
            q: field.q(),
            command: command.to_string(),
            parameters,
            timestamp: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn stamp_now(&mut self) {
        self.timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs());
    }
}

/// One subset of an existence scan. Elements are dlogs, `-1` for zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub locators: Vec<i64>,
    pub exists: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub multipliers: Option<Vec<i64>>,
    pub gram_checked: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanTotals {
    pub tested: usize,
    pub exists: usize,
    pub none: usize,
    pub errors: usize,
}

impl ScanTotals {
    pub fn from_entries(entries: &[ScanEntry]) -> Self {
        let mut t = ScanTotals::default();
        for e in entries {
            t.tested += 1;
            if e.error.is_some() {
                t.errors += 1;
            } else if e.exists {
                t.exists += 1;
            } else {
                t.none += 1;
            }
        }
        t
    }

    pub fn merge(self, other: ScanTotals) -> ScanTotals {
        ScanTotals {
            tested: self.tested + other.tested,
            exists: self.exists + other.exists,
            none: self.none + other.none,
            errors: self.errors + other.errors,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub metadata: ReportMetadata,
    pub n: usize,
    pub k: usize,
    pub extended: bool,
    pub pool: String,
    pub entries: Vec<ScanEntry>,
    pub totals: ScanTotals,
}

impl ScanReport {
    pub fn totals_consistent(&self) -> bool {
        ScanTotals::from_entries(&self.entries) == self.totals
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One CSV row per subset: `locators,exists,multipliers,gram_checked,error`
    /// with element lists joined by spaces.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["locators", "exists", "multipliers", "gram_checked", "error"])
            .map_err(csv_err)?;
        for e in &self.entries {
            w.write_record([
                join(&e.locators),
                e.exists.to_string(),
                e.multipliers.as_deref().map(join).unwrap_or_default(),
                e.gram_checked.to_string(),
                e.error.clone().unwrap_or_default(),
            ])
            .map_err(csv_err)?;
        }
        w.flush().map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureEntry {
    pub locators: Vec<i64>,
    pub span_condition: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub span_target: Option<u64>,
    pub exists: bool,
    pub violates: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureTotals {
    pub tested: usize,
    pub span_holds: usize,
    pub exists: usize,
    pub span_and_exists: usize,
    pub counterexamples: usize,
}

impl ConjectureTotals {
    pub fn from_entries(entries: &[ConjectureEntry]) -> Self {
        let mut t = ConjectureTotals::default();
        for e in entries {
            t.tested += 1;
            t.span_holds += usize::from(e.span_condition);
            t.exists += usize::from(e.exists);
            t.span_and_exists += usize::from(e.span_condition && e.exists);
            t.counterexamples += usize::from(e.violates);
        }
        t
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub metadata: ReportMetadata,
    pub n: usize,
    pub extended: bool,
    pub bound: usize,
    pub pool: String,
    pub entries: Vec<ConjectureEntry>,
    pub totals: ConjectureTotals,
}

impl ConjectureReport {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["locators", "span_condition", "exists", "violates"])
            .map_err(csv_err)?;
        for e in &self.entries {
            w.write_record([
                join(&e.locators),
                e.span_condition.to_string(),
                e.exists.to_string(),
                e.violates.to_string(),
            ])
            .map_err(csv_err)?;
        }
        w.flush().map_err(|e| Error::Parse(e.to_string()))
    }
}

fn join(xs: &[i64]) -> String {
    xs.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(format!("csv: {e}"))
}
