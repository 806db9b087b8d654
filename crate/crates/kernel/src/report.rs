//! Structured check reports: a report passes iff it has no entries.

use serde::{Deserialize, Serialize};
use std::fmt;

/// One failed law instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    /// Stable identifier of the violated law.
    pub law: String,
    /// Which instance failed.
    pub instance: String,
    /// Rendering of the left-hand side (or the offending datum).
    pub lhs: String,
    /// Rendering of the right-hand side (empty when not applicable).
    pub rhs: String,
}

/// Outcome of running a checker. `status` is `pass` iff `entries` is empty.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Report {
    pub entries: Vec<ReportEntry>,
    /// Wall-clock time of the check. Excluded from serialized reports so that
    /// identical inputs produce byte-identical documents.
    #[serde(skip)]
    pub timing_ms: u128,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn passed(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(
        &mut self,
        law: impl Into<String>,
        instance: impl Into<String>,
        lhs: impl fmt::Debug,
        rhs: impl fmt::Debug,
    ) {
        self.entries.push(ReportEntry {
            law: law.into(),
            instance: instance.into(),
            lhs: format!("{lhs:?}"),
            rhs: format!("{rhs:?}"),
        });
    }

    /// Records `law` at `instance` unless the two renderable sides agree.
    pub fn check_eq<T: PartialEq + fmt::Debug>(
        &mut self,
        law: &str,
        instance: &str,
        lhs: &T,
        rhs: &T,
    ) {
        if lhs != rhs {
            self.push(law, instance, lhs, rhs);
        }
    }

    /// Records an entry when `cond` is false.
    pub fn check(&mut self, law: &str, instance: &str, cond: bool, detail: &str) {
        if !cond {
            self.entries.push(ReportEntry {
                law: law.into(),
                instance: instance.into(),
                lhs: detail.into(),
                rhs: String::new(),
            });
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            writeln!(f, "pass ({} ms)", self.timing_ms)
        } else {
            writeln!(
                f,
                "FAIL: {} law violation(s) ({} ms)",
                self.entries.len(),
                self.timing_ms
            )?;
            for e in &self.entries {
                writeln!(f, "  [{}] {}", e.law, e.instance)?;
                if !e.lhs.is_empty() {
                    writeln!(f, "      lhs: {}", e.lhs)?;
                }
                if !e.rhs.is_empty() {
                    writeln!(f, "      rhs: {}", e.rhs)?;
                }
            }
            Ok(())
        }
    }
}
