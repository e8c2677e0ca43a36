//! Line-oriented verification reports.
//!
//! Checks that adjudicate a theorem's conclusion on concrete inputs emit one
//! `FIELD=value` pair per line and a final `RESULT=PASS|FAIL|VACUOUS` line,
//! so scripts can grep a single stable format across all subcommands.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The statement's hypothesis does not apply to the input.
    Vacuous,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Vacuous => "VACUOUS",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub fields: Vec<(String, String)>,
    pub verdict: Verdict,
}

impl Report {
    pub fn new(verdict: Verdict) -> Self {
        Report {
            fields: Vec::new(),
            verdict,
        }
    }

    pub fn push(&mut self, field: &str, value: impl fmt::Display) {
        self.fields.push((field.to_string(), value.to_string()));
    }

    pub fn get(&self, field: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == field)
            .map(|(_, v)| v.as_str())
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.fields {
            writeln!(f, "{k}={v}")?;
        }
        write!(f, "RESULT={}", self.verdict)
    }
}
