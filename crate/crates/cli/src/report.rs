//! Line-delimited JSON check records.

use std::io::Write;

use colourmodels::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    /// `[re, im]`.
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
    pub residual: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, anchor: &str, lhs: Complex64, rhs: Complex64, residual: f64, tol: f64) -> Self {
        Check {
            name: name.into(),
            anchor: anchor.to_string(),
            lhs: [lhs.re, lhs.im],
            rhs: [rhs.re, rhs.im],
            residual,
            pass: residual.is_finite() && residual <= tol,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
    /// Checks that were not run, with the reason.
    pub skipped: Vec<(String, String)>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.skipped.extend(other.skipped);
    }

    pub fn write_jsonl(&self, out: &mut dyn Write) -> std::io::Result<()> {
        for check in &self.checks {
            serde_json::to_writer(&mut *out, check)?;
            writeln!(out)?;
        }
        Ok(())
    }

    pub fn summary(&self) -> String {
        let mut s = format!("{} checks, {} failed, {} skipped", self.checks.len(), self.failures(), self.skipped.len());
        for (name, reason) in &self.skipped {
            s.push_str(&format!("\n  skipped {name}: {reason}"));
        }
        s
    }
}
