//! Pass/fail records shared by the audits.

use serde::Serialize;

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: Status::Pass,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
        }
    }

    /// Pass when `witness` is `None`.
    pub fn from_witness(name: impl Into<String>, witness: Option<String>) -> Check {
        match witness {
            None => Check::pass(name),
            Some(w) => Check::fail(name, w),
        }
    }

    /// Guard trips become `Skipped`; other errors are failures.
    pub fn from_result(name: impl Into<String>, r: Result<Option<String>>) -> Check {
        match r {
            Ok(w) => Check::from_witness(name, w),
            Err(e) if e.is_guard() => Check {
                name: name.into(),
                status: Status::Skipped,
                witness: Some(e.to_string()),
            },
            Err(e) => Check::fail(name, e.to_string()),
        }
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}
