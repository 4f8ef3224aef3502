//! Shared result type for named verification checks, used by the library's
//! check runners and rendered by the command-line tool.

use std::fmt;
use std::time::Duration;

/// Outcome of a single named check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One line of a verification report. A failing check always carries enough
/// detail to reproduce the counterexample.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub runtime: Duration,
}

impl CheckReport {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>, runtime: Duration) -> Self {
        Self {
            name: name.into(),
            status: Status::Pass,
            detail: detail.into(),
            runtime,
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>, runtime: Duration) -> Self {
        Self {
            name: name.into(),
            status: Status::Fail,
            detail: detail.into(),
            runtime,
        }
    }

    pub fn skip(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::Skip,
            detail: detail.into(),
            runtime: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} ({:.1} ms) {}",
            self.status,
            self.name,
            self.runtime.as_secs_f64() * 1000.0,
            self.detail
        )
    }
}
