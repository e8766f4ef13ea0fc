//! JSON-lines records. Field order is fixed by declaration order so output
//! diffs cleanly across runs.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::rule::LocalRule;
use crate::rulefile::RuleFile;
use crate::signature::{OdometerSignature, Violation};

/// First 16 hex digits of the SHA-256 of the canonical rule file text.
pub fn rule_hash(rule: &LocalRule) -> String {
    let text = RuleFile::Table(rule.clone()).to_string();
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub kind: &'static str,
    pub rule_hash: String,
    pub tail: Option<String>,
    /// `(k_i, s_i)` pairs; a periodic tail contributes a leading `(0, q)`.
    pub stages: Option<Vec<[u64; 2]>>,
    pub verdict: serde_json::Value,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub details: serde_json::Value,
}

impl Record {
    pub fn new(kind: &'static str, rule: &LocalRule) -> Self {
        Self {
            kind,
            rule_hash: rule_hash(rule),
            tail: None,
            stages: None,
            verdict: serde_json::Value::Null,
            violations: Vec::new(),
            details: serde_json::Value::Null,
        }
    }

    pub fn with_tail(mut self, tail: impl ToString) -> Self {
        self.tail = Some(tail.to_string());
        self
    }

    pub fn with_signature(mut self, sig: &OdometerSignature) -> Self {
        self.stages = Some(sig.stage_pairs());
        self
    }

    pub fn with_verdict(mut self, verdict: impl Serialize) -> Self {
        self.verdict = serde_json::to_value(verdict).unwrap_or(serde_json::Value::Null);
        self
    }

    pub fn with_violations(mut self, violations: Vec<Violation>) -> Self {
        self.violations = violations;
        self
    }

    pub fn with_details(mut self, details: impl Serialize) -> Self {
        self.details = serde_json::to_value(details).unwrap_or(serde_json::Value::Null);
        self
    }

    /// One line of JSON, no trailing newline.
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_is_stable_and_distinguishes_rules() {
        let xor = LocalRule::new(2, 1, vec![0, 1, 1, 0]).unwrap();
        let h = rule_hash(&xor);
        assert_eq!(h.len(), 16);
        assert_eq!(h, rule_hash(&xor.clone()));
        let other = LocalRule::new(2, 1, vec![0, 0, 1, 1]).unwrap();
        assert_ne!(h, rule_hash(&other));
    }

    #[test]
    fn field_order() {
        let xor = LocalRule::new(2, 1, vec![0, 1, 1, 0]).unwrap();
        let line = Record::new("signature", &xor).with_tail(":(0)").to_line();
        let keys = ["kind", "rule_hash", "tail", "stages", "verdict", "violations"];
        let mut last = 0;
        for k in keys {
            let at = line.find(&format!("\"{k}\"")).unwrap();
            assert!(at >= last, "{line}");
            last = at;
        }
        assert!(!line.contains("details"));
    }
}
