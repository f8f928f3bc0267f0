use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{domain, Result};
use crate::oracles::format_sig;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

/// One flat row of an experiment: a replicate, a grid point or a vertex.
pub type Row = Map<String, Value>;

/// Result of an experiment. Aggregates are recomputable from `replicates`.
/// Timing lives in the run manifest so that replays are byte-identical.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub parameters: BTreeMap<String, Value>,
    pub replicates: Vec<Row>,
    pub aggregates: BTreeMap<String, Value>,
    pub comparison: Option<String>,
    pub verdicts: Vec<Verdict>,
    pub notes: Vec<String>,
}

impl ExperimentReport {
    pub fn new(experiment: impl Into<String>) -> Self {
        Self {
            experiment: experiment.into(),
            parameters: BTreeMap::new(),
            replicates: Vec::new(),
            aggregates: BTreeMap::new(),
            comparison: None,
            verdicts: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn aggregate(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.aggregates.insert(key.to_string(), value.into());
        self
    }

    pub fn push_row(&mut self, row: Row) -> &mut Self {
        self.replicates.push(row);
        self
    }

    pub fn verdict(&mut self, v: Verdict) -> &mut Self {
        self.verdicts.push(v);
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn validate(&self) -> Result<()> {
        if self.replicates.is_empty() {
            return Err(domain("a report needs at least one row"));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        self.validate()?;
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// Rows as CSV with a header row; columns are the union of row keys in
    /// first-seen order.
    pub fn to_csv(&self) -> Result<String> {
        self.validate()?;
        let mut columns: Vec<&str> = Vec::new();
        for key in self.replicates.iter().flat_map(|r| r.keys()) {
            if !columns.contains(&key.as_str()) {
                columns.push(key);
            }
        }
        let mut out = columns.join(",");
        out.push('\n');
        for row in &self.replicates {
            let cells: Vec<String> = columns
                .iter()
                .map(|c| row.get(*c).map(csv_cell).unwrap_or_default())
                .collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        Ok(out)
    }
}

/// Formats a JSON scalar for CSV: floats at 15 significant digits, strings
/// quoted when they contain a delimiter.
pub fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) if n.is_f64() => format_sig(n.as_f64().unwrap_or(f64::NAN), 15),
        Value::Number(n) => n.to_string(),
        Value::String(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Value::String(s) => s.clone(),
        other => format!("\"{}\"", other.to_string().replace('"', "\"\"")),
    }
}

/// Sample mean and (n - 1)-denominator standard deviation.
pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}
