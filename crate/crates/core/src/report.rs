//! Machine-readable run reports shared by the CLI and the acceptance suite.

use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Observation,
    Timeout,
}

impl Status {
    pub fn from_pass(pass: bool) -> Status {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Observation => "OBSERVATION",
            Status::Timeout => "TIMEOUT",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Only recorded when timing is requested, so reports stay reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u64>,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, witness: Option<String>) -> Check {
        Check {
            name: name.into(),
            status,
            witness,
            duration_ms: None,
        }
    }

    pub fn pass_if(name: impl Into<String>, pass: bool, witness: Option<String>) -> Check {
        Check::new(name, Status::from_pass(pass), witness)
    }

    pub fn observation(name: impl Into<String>, note: impl Into<String>) -> Check {
        Check::new(name, Status::Observation, Some(note.into()))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: Value,
    pub checks: Vec<Check>,
    pub data: Value,
    #[serde(skip)]
    timing: bool,
}

impl RunReport {
    pub fn new(command: &str, parameters: Value, timing: bool) -> RunReport {
        RunReport {
            command: command.to_string(),
            parameters,
            checks: Vec::new(),
            data: Value::Object(Default::default()),
            timing,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    /// Run `f`, attaching its wall time to the check it returns when timing is on.
    pub fn timed(&mut self, f: impl FnOnce() -> Check) {
        let start = Instant::now();
        let mut check = f();
        if self.timing {
            check.duration_ms = Some(start.elapsed().as_millis() as u64);
        }
        self.checks.push(check);
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("serializable report data");
        if let Value::Object(map) = &mut self.data {
            map.insert(key.to_string(), v);
        }
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed() {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.command, self.parameters);
        for c in &self.checks {
            out.push_str(&format!("  {:<11} {}", c.status.label(), c.name));
            if let Some(w) = &c.witness {
                out.push_str(&format!(": {w}"));
            }
            if let Some(ms) = c.duration_ms {
                out.push_str(&format!(" ({ms} ms)"));
            }
            out.push('\n');
        }
        if let Value::Object(map) = &self.data {
            for (k, v) in map {
                let text = v.to_string();
                if text.len() <= 120 {
                    out.push_str(&format!("  {k} = {text}\n"));
                } else {
                    out.push_str(&format!("  {k} = ({} bytes, see JSON output)\n", text.len()));
                }
            }
        }
        out
    }

    /// One line: counts by status.
    pub fn summary(&self) -> String {
        let count = |s: Status| self.checks.iter().filter(|c| c.status == s).count();
        format!(
            "{}: {} pass, {} fail, {} observation, {} timeout",
            self.command,
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Observation),
            count(Status::Timeout)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn observations_do_not_fail() {
        let mut r = RunReport::new("x", json!({}), false);
        r.push(Check::observation("probe", "note"));
        r.push(Check::new("slow", Status::Timeout, None));
        assert_eq!(r.exit_code(), 0);
        r.push(Check::pass_if("bad", false, Some("w".into())));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn durations_only_when_timing() {
        let mut r = RunReport::new("x", json!({}), false);
        r.timed(|| Check::pass_if("a", true, None));
        assert!(!r.to_json().contains("duration_ms"));
        let mut r = RunReport::new("x", json!({}), true);
        r.timed(|| Check::pass_if("a", true, None));
        assert!(r.to_json().contains("duration_ms"));
    }
}
