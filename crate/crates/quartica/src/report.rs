//! Check reports and the JSON document emitted by `reproduce`.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
    /// A value the source does not state, reported as computed.
    Derived,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub description: String,
    pub paper_ref: String,
    pub status: CheckStatus,
    pub computed: Value,
    pub expected: Value,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub version: String,
    pub tower: String,
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn new(tower: String, checks: Vec<CheckReport>) -> Self {
        Report { version: env!("CARGO_PKG_VERSION").to_string(), tower, checks }
    }

    /// 0 when nothing failed or is inconclusive, 1 on any failure, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        exit_code(self.checks.iter().map(|c| c.status))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report with every elapsed time zeroed, for comparing runs.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.elapsed_ms = 0;
        }
        r
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = serde_json::to_value(c.status).expect("status serializes");
            out.push_str(&format!(
                "{:<13} {:<34} computed {} expected {} ({} ms)\n",
                status.as_str().unwrap_or_default(),
                c.id,
                c.computed,
                c.expected,
                c.elapsed_ms
            ));
        }
        out
    }
}

pub fn exit_code(statuses: impl IntoIterator<Item = CheckStatus>) -> i32 {
    let mut inconclusive = false;
    for s in statuses {
        match s {
            CheckStatus::Fail => return 1,
            CheckStatus::Inconclusive => inconclusive = true,
            CheckStatus::Pass | CheckStatus::Derived => {}
        }
    }
    if inconclusive {
        2
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        use CheckStatus::*;
        assert_eq!(exit_code([Pass, Derived]), 0);
        assert_eq!(exit_code([Pass, Inconclusive]), 2);
        assert_eq!(exit_code([Inconclusive, Fail]), 1);
        assert_eq!(exit_code([]), 0);
    }
}
