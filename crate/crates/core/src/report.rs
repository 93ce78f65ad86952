//! Verification reports: a suite name, checks sorted by id, and a summary.

use std::fmt::{self, Display};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub citation: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
}

impl Check {
    pub fn new(
        id: impl Into<String>,
        citation: impl Into<String>,
        passed: bool,
        expected: impl Display,
        actual: impl Display,
    ) -> Self {
        Check {
            id: id.into(),
            citation: citation.into(),
            status: if passed { Status::Pass } else { Status::Fail },
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }

    /// Passes iff `expected == actual`.
    pub fn equal<T: PartialEq + Display>(
        id: impl Into<String>,
        citation: impl Into<String>,
        expected: &T,
        actual: &T,
    ) -> Self {
        Check::new(id, citation, expected == actual, expected, actual)
    }

    /// Equality check on a fallible computation; errors fail the check.
    pub fn equal_or_error<T: PartialEq + Display, E: Display>(
        id: impl Into<String>,
        citation: impl Into<String>,
        expected: &T,
        actual: Result<T, E>,
    ) -> Self {
        match actual {
            Ok(a) => Check::equal(id, citation, expected, &a),
            Err(e) => Check::new(id, citation, false, expected, format!("error: {e}")),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl VerificationReport {
    /// Sorts checks by id; ids are expected to be unique.
    pub fn new(suite: impl Into<String>, mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = checks.iter().filter(|c| c.passed()).count();
        VerificationReport {
            suite: suite.into(),
            summary: Summary {
                total: checks.len(),
                passed,
                failed: checks.len() - passed,
            },
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn checks_with_prefix<'a>(
        &'a self,
        prefix: &'a str,
    ) -> impl Iterator<Item = &'a Check> + 'a {
        self.checks.iter().filter(move |c| c.id.starts_with(prefix))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per check, failures with both values, then a summary line.
    pub fn to_text(&self) -> String {
        let mut out = format!("suite {}\n", self.suite);
        for c in &self.checks {
            out.push_str(&format!("{} {}", c.status, c.id));
            if !c.passed() {
                out.push_str(&format!(
                    "\n    expected: {}\n    actual:   {}",
                    c.expected, c.actual
                ));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} checks, {} passed, {} failed\n",
            self.summary.total, self.summary.passed, self.summary.failed
        ));
        out
    }
}
