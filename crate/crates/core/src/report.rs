//! Pass/fail records produced by the verification suites.

use serde::Serialize;

/// Outcome of one named check, aggregated over all instances tested.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub anchor: String,
    pub passed: bool,
    pub instances: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// An ordered list of check records.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CheckSet {
    records: Vec<CheckRecord>,
}

impl CheckSet {
    pub fn new() -> CheckSet {
        CheckSet::default()
    }

    fn entry(&mut self, name: &str, anchor: &str) -> &mut CheckRecord {
        let pos = match self.records.iter().position(|r| r.name == name) {
            Some(p) => p,
            None => {
                self.records.push(CheckRecord {
                    name: name.to_string(),
                    anchor: anchor.to_string(),
                    passed: true,
                    instances: 0,
                    witness: None,
                });
                self.records.len() - 1
            }
        };
        &mut self.records[pos]
    }

    /// Records one instance of the check `name`; the witness of the first
    /// failure is kept.
    pub fn check(&mut self, name: &str, anchor: &str, ok: bool, witness: impl FnOnce() -> String) {
        let r = self.entry(name, anchor);
        r.instances += 1;
        if !ok && r.passed {
            r.passed = false;
            r.witness = Some(witness());
        }
    }

    /// Records a check whose evaluation itself failed.
    pub fn error(&mut self, name: &str, anchor: &str, err: impl std::fmt::Display) {
        self.check(name, anchor, false, || format!("error: {err}"));
    }

    pub fn extend(&mut self, other: CheckSet) {
        for r in other.records {
            let e = self.entry(&r.name, &r.anchor);
            e.instances += r.instances;
            if !r.passed && e.passed {
                e.passed = false;
                e.witness = r.witness;
            }
        }
    }

    pub fn records(&self) -> &[CheckRecord] {
        &self.records
    }

    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> Vec<&CheckRecord> {
        self.records.iter().filter(|r| !r.passed).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aggregation_keeps_first_witness() {
        let mut s = CheckSet::new();
        s.check("a", "x", true, || unreachable!());
        s.check("a", "x", false, || "first".into());
        s.check("a", "x", false, || "second".into());
        s.check("b", "y", true, String::new);
        assert_eq!(s.records().len(), 2);
        assert_eq!(s.records()[0].instances, 3);
        assert_eq!(s.records()[0].witness.as_deref(), Some("first"));
        assert!(!s.all_passed());
        assert_eq!(s.failures().len(), 1);
    }
}
