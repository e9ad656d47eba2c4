use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub pass: bool,
    pub details: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: suite.into(), checks: Vec::new(), pass: true }
    }

    pub fn check(&mut self, id: impl Into<String>, pass: bool, details: impl Into<String>) -> bool {
        self.checks.push(Check { id: id.into(), pass, details: details.into() });
        self.pass &= pass;
        pass
    }

    /// Records `expected == actual`.
    pub fn expect_eq<T: PartialEq + std::fmt::Debug>(
        &mut self,
        id: impl Into<String>,
        expected: T,
        actual: T,
    ) -> bool {
        let pass = expected == actual;
        let details = if pass {
            format!("{actual:?}")
        } else {
            format!("expected {expected:?}, got {actual:?}")
        };
        self.check(id, pass, details)
    }

    pub fn merge(&mut self, other: Report) {
        for c in other.checks {
            let id = format!("{}/{}", other.suite, c.id);
            self.check(id, c.pass, c.details);
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_check_fails_report() {
        let mut r = Report::new("t");
        r.check("a", true, "");
        assert!(r.pass);
        r.expect_eq("b", 1, 2);
        assert!(!r.pass);
        assert_eq!(r.failures().count(), 1);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}
