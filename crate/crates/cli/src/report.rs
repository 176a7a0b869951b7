use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;

pub const REPORT_FORMAT: &str = "cmdef-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub format: &'static str,
    pub scenario: String,
    /// Decimal string, since seeds may exceed the exactly representable JSON range.
    pub seed: Option<String>,
    pub precision: Option<u32>,
    pub input: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    pub status: Status,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Table,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Table => self.table(),
        }
    }

    fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scenario   {}", self.scenario);
        let _ = writeln!(out, "seed       {}", self.seed.as_deref().unwrap_or("-"));
        if let Some(p) = self.precision {
            let _ = writeln!(out, "precision  {p}");
        }
        let _ = writeln!(out, "status     {}", if self.passed() { "pass" } else { "fail" });
        out.push_str("\nresults\n");
        let mut rows = Vec::new();
        flatten("", &self.results, &mut rows);
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in rows {
            let _ = writeln!(out, "  {k:width$}  {v}");
        }
        out.push_str("\nchecks\n");
        for c in &self.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            match &c.detail {
                Some(d) => {
                    let _ = writeln!(out, "  {mark}  {}  ({d})", c.name);
                }
                None => {
                    let _ = writeln!(out, "  {mark}  {}", c.name);
                }
            }
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| !x.is_object()) => {
            let parts: Option<Vec<String>> = items.iter().map(scalar).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        _ => None,
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    if let Some(s) = scalar(v) {
        rows.push((prefix.to_string(), s));
        return;
    }
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&join(k), x, rows);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), x, rows);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}
