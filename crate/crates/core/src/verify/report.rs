//! Machine-readable verification reports.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A reported value with no pass/fail meaning.
    Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub check_id: String,
    pub status: Status,
    pub witness: Value,
    /// The claim being checked, in words.
    #[serde(rename = "paper_ref")]
    pub claim: String,
}

impl Check {
    pub fn new(id: &str, ok: bool, witness: Value, claim: &str) -> Self {
        Check {
            check_id: id.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness,
            claim: claim.to_string(),
        }
    }

    pub fn value(id: &str, witness: Value, claim: &str) -> Self {
        Check { check_id: id.to_string(), status: Status::Value, witness, claim: claim.to_string() }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// The same checks with `prefix.` prepended to every id.
    pub fn prefixed(mut self, prefix: &str) -> Self {
        for c in &mut self.checks {
            c.check_id = format!("{prefix}.{}", c.check_id);
        }
        self
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed()).map(|c| c.check_id.as_str()).collect()
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.check_id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS ",
                Status::Fail => "FAIL ",
                Status::Value => "VALUE",
            };
            out.push_str(&format!("{tag} {:<28} {}\n", c.check_id, compact(&c.witness)));
        }
        out
    }
}

fn compact(v: &Value) -> String {
    let s = v.to_string();
    if s.chars().count() > 100 {
        format!("{}...", s.chars().take(97).collect::<String>())
    } else {
        s
    }
}
