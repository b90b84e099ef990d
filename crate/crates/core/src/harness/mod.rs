//! Batch verification: table reproduction, formula checks, conjecture reports
//! and a result cache.

pub mod cache;
pub mod catalog;
pub mod golden;
pub mod suite;
pub mod tables;
pub mod verify;

use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

pub use cache::{record_key, Cache, ResultRecord};
pub use golden::{GoldenCell, GoldenData, GoldenTable};
pub use suite::{conjecture_rows, run_verification_suite, SuiteReport};
pub use tables::{reproduce_table, CellValue, TableReport};
pub use verify::{verify_formulas, CheckRow, FormulaFamily};

/// Outcome of a single check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    /// Not attempted because of the budget.
    Skipped,
    /// A conjecture agrees with every computed case.
    Consistent,
    /// A conjecture disagrees with a computed case.
    Refuted,
    Undecided,
}

impl Status {
    /// True for outcomes that need no attention.
    pub fn is_success(self) -> bool {
        matches!(self, Status::Pass | Status::Consistent)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
            Status::Consistent => "CONSISTENT",
            Status::Refuted => "REFUTED",
            Status::Undecided => "UNDECIDED",
        })
    }
}

/// Limits for table reproduction: cells whose face count bound exceeds
/// `max_faces` are skipped, and no new cell starts after `total` has elapsed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub total: Duration,
    pub max_faces: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            total: Duration::from_secs(600),
            max_faces: 1 << 20,
        }
    }
}
