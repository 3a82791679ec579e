use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    UndeterminedAtBound,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    /// Required for undetermined verdicts.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub witness: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            bound: None,
            detail: detail.into(),
            witness: Value::Null,
        }
    }

    pub fn undetermined(name: impl Into<String>, bound: usize, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            verdict: Verdict::UndeterminedAtBound,
            bound: Some(bound),
            detail: detail.into(),
            witness: Value::Null,
        }
    }

    pub fn with_witness(mut self, w: Value) -> Check {
        self.witness = w;
        self
    }

    pub fn with_bound(mut self, b: usize) -> Check {
        self.bound = Some(b);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub bounds: Map<String, Value>,
    pub checks: Vec<Check>,
    pub results: Map<String, Value>,
    /// Set when a search ran out of budget.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub budget_exceeded: bool,
}

impl Report {
    pub fn new(command: Vec<String>) -> Report {
        Report {
            command,
            bounds: Map::new(),
            checks: Vec::new(),
            results: Map::new(),
            budget_exceeded: false,
        }
    }

    pub fn bound(&mut self, key: &str, v: impl Into<Value>) {
        self.bounds.insert(key.into(), v.into());
    }

    pub fn result(&mut self, key: &str, v: impl Into<Value>) {
        self.results.insert(key.into(), v.into());
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    /// 0 when every check passed, 3 when a budget ran out, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        if self.checks.iter().all(|c| c.verdict == Verdict::Pass) {
            0
        } else if self.budget_exceeded {
            3
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "ssetkit {}", self.command.join(" "));
        for (k, v) in &self.bounds {
            let _ = writeln!(s, "  bound {k} = {v}");
        }
        for (k, v) in &self.results {
            let _ = writeln!(s, "  {k}: {}", compact(v));
        }
        for c in &self.checks {
            let tag = match c.verdict {
                Verdict::Pass => "pass".to_string(),
                Verdict::Fail => "FAIL".to_string(),
                Verdict::UndeterminedAtBound => format!("undetermined at bound {}", c.bound.unwrap_or(0)),
            };
            if c.detail.is_empty() {
                let _ = writeln!(s, "[{tag}] {}", c.name);
            } else {
                let _ = writeln!(s, "[{tag}] {}: {}", c.name, c.detail);
            }
        }
        s
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        _ => v.to_string(),
    }
}
