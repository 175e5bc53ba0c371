use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: Value,
}

/// Wall-clock times, kept apart so reports can be compared without them.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Timing {
    pub total_ms: u128,
    pub checks_ms: Vec<(String, u128)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub args: Map<String, Value>,
    pub label: String,
    pub params: Value,
    pub seed: u64,
    pub result: Value,
    #[serde(skip)]
    pub summary: Option<String>,
    pub notes: Vec<String>,
    pub checks: Vec<Check>,
    pub all_pass: bool,
    pub timing: Timing,
}

impl RunReport {
    pub fn new(command: &str, label: String, params: Value, seed: u64) -> Self {
        RunReport {
            tool: "gwa",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            args: Map::new(),
            label,
            params,
            seed,
            result: Value::Null,
            summary: None,
            notes: Vec::new(),
            checks: Vec::new(),
            all_pass: true,
            timing: Timing::default(),
        }
    }

    pub fn arg(&mut self, key: &str, v: impl Serialize) {
        self.args.insert(key.to_string(), serde_json::to_value(v).expect("serializable argument"));
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Serialize) {
        let detail = serde_json::to_value(detail).expect("serializable detail");
        self.all_pass &= pass;
        self.checks.push(Check { name: name.into(), pass, detail });
    }

    /// Runs `f`, records its check and how long it took.
    pub fn timed<D: Serialize>(&mut self, name: &str, f: impl FnOnce() -> (bool, D)) {
        let t = Instant::now();
        let (pass, detail) = f();
        self.timing.checks_ms.push((name.to_string(), t.elapsed().as_millis()));
        self.check(name, pass, detail);
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("{} [{}]\n", self.command, self.label);
        if let Some(s) = &self.summary {
            out.push_str(&format!("result: {s}\n"));
        } else if !self.result.is_null() {
            out.push_str(&format!("result: {}\n", text_value(&self.result)));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        for c in &self.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            let mut detail = text_value(&c.detail);
            if detail.chars().count() > 160 {
                detail = detail.chars().take(157).collect::<String>() + "...";
            }
            out.push_str(&format!("{mark}  {}: {detail}\n", c.name));
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        if failed == 0 {
            out.push_str(&format!("all {} checks passed ({} ms)\n", self.checks.len(), self.timing.total_ms));
        } else {
            out.push_str(&format!("{failed} of {} checks failed ({} ms)\n", self.checks.len(), self.timing.total_ms));
        }
        out
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}
