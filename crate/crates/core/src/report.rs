//! Check records shared by every verification suite.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub suite: String,
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

impl CheckRecord {
    pub fn pass(suite: &str, name: impl Into<String>) -> Self {
        CheckRecord { suite: suite.to_string(), name: name.into(), status: Status::Pass, residual: None }
    }

    pub fn fail(suite: &str, name: impl Into<String>, residual: impl Into<String>) -> Self {
        CheckRecord {
            suite: suite.to_string(),
            name: name.into(),
            status: Status::Fail,
            residual: Some(residual.into()),
        }
    }

    /// Pass when `residual` is `None`, fail with the rendered residual otherwise.
    pub fn from_residual(suite: &str, name: impl Into<String>, residual: Option<String>) -> Self {
        match residual {
            None => CheckRecord::pass(suite, name),
            Some(r) => CheckRecord::fail(suite, name, r),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        write!(f, "[{}] {}: {}", tag, self.suite, self.name)?;
        if let Some(r) = &self.residual {
            write!(f, "\n       residual: {}", r)?;
        }
        Ok(())
    }
}

/// Whether every record passed.
pub fn all_passed(records: &[CheckRecord]) -> bool {
    records.iter().all(CheckRecord::passed)
}
