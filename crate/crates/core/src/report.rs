//! Pass/fail records shared by every verification routine.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::{Deserialize, Serialize};

/// One comparison between an expected and a computed value, both rendered
/// as strings so big integers and polynomials serialize losslessly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub parameters: BTreeMap<String, String>,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    pub fn compare<T: PartialEq + Display + ?Sized>(
        name: impl Into<String>,
        parameters: &[(&str, String)],
        expected: &T,
        actual: &T,
    ) -> Check {
        Check {
            name: name.into(),
            parameters: params(parameters),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass: expected == actual,
        }
    }

    /// A check whose verdict is decided by the caller.
    pub fn verdict(
        name: impl Into<String>,
        parameters: &[(&str, String)],
        expected: impl Display,
        actual: impl Display,
        pass: bool,
    ) -> Check {
        Check {
            name: name.into(),
            parameters: params(parameters),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass,
        }
    }
}

fn params(parameters: &[(&str, String)]) -> BTreeMap<String, String> {
    parameters
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compare_and_collect() {
        let mut r = Report::new();
        r.push(Check::compare("same", &[("b", "3".into())], &11, &11));
        assert!(r.all_passed());
        r.push(Check::compare("differ", &[], "a", "b"));
        assert!(!r.all_passed());
        assert_eq!(r.failures().count(), 1);
        assert_eq!(r.checks[0].parameters["b"], "3");
    }
}
