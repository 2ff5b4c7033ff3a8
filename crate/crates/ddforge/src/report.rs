//! Structured verification reports.
//!
//! Structural checks decide success or failure; comparisons against the
//! written displays can only downgrade a verified result to
//! "verified-with-display-mismatch", never fail it.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// A structural identity holds but disagrees with a written display.
    Mismatch,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Overall {
    Verified,
    VerifiedWithDisplayMismatch,
    Failed,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub derived_values: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub display_claims: BTreeMap<String, serde_json::Value>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.checks.push(Check { name: name.into(), status: CheckStatus::Pass, witness: None });
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            status: CheckStatus::Fail,
            witness: Some(witness.into()),
        });
    }

    pub fn mismatch(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            status: CheckStatus::Mismatch,
            witness: Some(witness.into()),
        });
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, witness: impl Into<String>) {
        if ok {
            self.pass(name);
        } else {
            self.fail(name, witness);
        }
    }

    pub fn derived(&mut self, key: impl Into<String>, value: impl Serialize) {
        self.derived_values
            .insert(key.into(), serde_json::to_value(value).expect("serializable value"));
    }

    pub fn claim(&mut self, key: impl Into<String>, value: impl Serialize) {
        self.display_claims
            .insert(key.into(), serde_json::to_value(value).expect("serializable value"));
    }

    /// Append another report's content under a name prefix.
    pub fn merge(&mut self, prefix: &str, other: VerificationReport) {
        for c in other.checks {
            self.checks.push(Check { name: format!("{prefix}.{}", c.name), ..c });
        }
        for (k, v) in other.derived_values {
            self.derived_values.insert(format!("{prefix}.{k}"), v);
        }
        for (k, v) in other.display_claims {
            self.display_claims.insert(format!("{prefix}.{k}"), v);
        }
    }

    pub fn overall(&self) -> Overall {
        if self.checks.iter().any(|c| c.status == CheckStatus::Fail) {
            Overall::Failed
        } else if self.checks.iter().any(|c| c.status == CheckStatus::Mismatch) {
            Overall::VerifiedWithDisplayMismatch
        } else {
            Overall::Verified
        }
    }

    pub fn is_verified(&self) -> bool {
        self.overall() != Overall::Failed
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn render_markdown(&self, title: &str) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {title}\n\n"));
        out.push_str(&format!("Overall: **{:?}**\n\n", self.overall()));
        out.push_str("| check | status | witness |\n|---|---|---|\n");
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Mismatch => "display mismatch",
            };
            out.push_str(&format!(
                "| {} | {} | {} |\n",
                c.name,
                status,
                c.witness.as_deref().unwrap_or("")
            ));
        }
        if !self.derived_values.is_empty() {
            out.push_str("\n## Derived values\n\n");
            for (k, v) in &self.derived_values {
                out.push_str(&format!("- `{k}` = {v}\n"));
            }
        }
        if !self.display_claims.is_empty() {
            out.push_str("\n## Written claims\n\n");
            for (k, v) in &self.display_claims {
                out.push_str(&format!("- `{k}` = {v}\n"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_rules() {
        let mut r = VerificationReport::new();
        r.pass("a");
        assert_eq!(r.overall(), Overall::Verified);
        r.mismatch("b", "display disagrees");
        assert_eq!(r.overall(), Overall::VerifiedWithDisplayMismatch);
        assert!(r.is_verified());
        r.fail("c", "witness cell (0,1)");
        assert_eq!(r.overall(), Overall::Failed);
    }

    #[test]
    fn merge_prefixes() {
        let mut inner = VerificationReport::new();
        inner.pass("x");
        inner.derived("k", 5);
        let mut outer = VerificationReport::new();
        outer.merge("step", inner);
        assert_eq!(outer.checks[0].name, "step.x");
        assert!(outer.derived_values.contains_key("step.k"));
    }
}
