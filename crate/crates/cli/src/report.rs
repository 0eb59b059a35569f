//! Check records and the report printed by every subcommand.

use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub params: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

impl Check {
    pub fn new(name: impl Into<String>, params: Value, pass: bool, witness: Option<String>) -> Self {
        Check {
            name: name.into(),
            params,
            status: if pass { Status::Pass } else { Status::Fail },
            witness,
            data: None,
        }
    }

    pub fn pass(name: impl Into<String>, params: Value) -> Self {
        Self::new(name, params, true, None)
    }

    pub fn fail(name: impl Into<String>, params: Value, witness: impl Into<String>) -> Self {
        Self::new(name, params, false, Some(witness.into()))
    }

    pub fn with_data(mut self, data: Value) -> Self {
        self.data = Some(data);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub config: RunConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    pub checked: Vec<Check>,
    pub ok: bool,
    #[serde(skip)]
    pub text: Option<String>,
}

impl Report {
    pub fn new(command: Vec<String>, config: RunConfig) -> Self {
        Report { command, config, result: None, checked: Vec::new(), ok: true, text: None }
    }

    pub fn push(&mut self, check: Check) {
        self.ok &= check.passed();
        self.checked.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.push(c);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serialisable")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("rc-lab {}\n", self.command.join(" "));
        if let Some(t) = &self.text {
            out.push_str(t);
            if !t.ends_with('\n') {
                out.push('\n');
            }
        }
        for c in &self.checked {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {}", c.name));
            let params = compact(&c.params);
            if !params.is_empty() {
                out.push_str(&format!(" {params}"));
            }
            if let Some(w) = &c.witness {
                out.push_str(&format!(" : {w}"));
            }
            out.push('\n');
        }
        if !self.checked.is_empty() {
            let passed = self.checked.iter().filter(|c| c.passed()).count();
            out.push_str(&format!("{passed}/{} checks passed\n", self.checked.len()));
        }
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::Object(m) if m.is_empty() => String::new(),
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}
