//! Assertion ledger shared by all analyses.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    NotAsserted(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assertion {
    pub check: String,
    pub outcome: Outcome,
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Pass => write!(f, "pass  {}", self.check),
            Outcome::Fail(why) => write!(f, "FAIL  {}: {why}", self.check),
            Outcome::NotAsserted(why) => write!(f, "not asserted  {} ({why})", self.check),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ledger {
    pub entries: Vec<Assertion>,
}

impl Ledger {
    pub fn new() -> Self {
        Ledger::default()
    }

    pub fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) -> bool {
        let outcome = if ok { Outcome::Pass } else { Outcome::Fail(detail()) };
        self.entries.push(Assertion { check: name.to_string(), outcome });
        ok
    }

    pub fn skip(&mut self, name: &str, reason: &str) {
        self.entries.push(Assertion { check: name.to_string(), outcome: Outcome::NotAsserted(reason.to_string()) });
    }

    pub fn extend(&mut self, other: Ledger) {
        self.entries.extend(other.entries);
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|a| !matches!(a.outcome, Outcome::Fail(_)))
    }

    pub fn failures(&self) -> Vec<&Assertion> {
        self.entries.iter().filter(|a| matches!(a.outcome, Outcome::Fail(_))).collect()
    }

    pub fn count(&self, pred: impl Fn(&Outcome) -> bool) -> usize {
        self.entries.iter().filter(|a| pred(&a.outcome)).count()
    }

    pub fn get(&self, name: &str) -> Option<&Outcome> {
        self.entries.iter().find(|a| a.check == name).map(|a| &a.outcome)
    }
}
