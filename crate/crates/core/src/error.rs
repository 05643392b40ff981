use thiserror::Error;

/// Errors raised by constructions and audits.
///
/// Guard trips (`SearchSpaceTooLarge`, `UniverseTooLarge`) are distinguished
/// from validation failures by [`Error::is_guard`]; the CLI maps them to
/// different exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cycle: {0} and {1} are mutually below each other")]
    Cycle(String, String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("search space too large: {what} needs {size} candidates, guard is {guard}")]
    SearchSpaceTooLarge { what: String, size: f64, guard: f64 },
    #[error("term universe too large: more than {guard} terms at depth {depth}")]
    UniverseTooLarge { depth: usize, guard: usize },
    #[error("space is not T0: points {0} and {1} have the same neighbourhoods")]
    NotT0(String, String),
    #[error("open family is not a topology: {0}")]
    NotATopology(String),
    #[error("space is not a directed space")]
    NotDirectedSpace,
    #[error("subset {0:?} is not directed")]
    Directedness(Vec<String>),
    #[error("cut violation: {x} is not in the cut of {d:?}")]
    CutViolation { d: Vec<String>, x: String },
    #[error("operation {op} is ill-defined on classes: {detail}")]
    IllDefinedOperation { op: String, detail: String },
    #[error("operation {op} is undefined on {args}")]
    PartialOperation { op: String, args: String },
    #[error("bad K: {0}")]
    BadK(String),
    #[error("no supremum for {0:?} in the target")]
    NoSupremum(Vec<String>),
    #[error("map is not monotone: {0}")]
    NotMonotone(String),
    #[error("law violated: {0}")]
    LawViolated(String),
    #[error("invalid theory: {0}")]
    InvalidTheory(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub fn is_guard(&self) -> bool {
        matches!(
            self,
            Error::SearchSpaceTooLarge { .. } | Error::UniverseTooLarge { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Fails with `SearchSpaceTooLarge` if `base^exp` exceeds `guard`.
pub(crate) fn check_power(what: &str, base: usize, exp: usize, guard: f64) -> Result<()> {
    let size = (base as f64).powi(exp as i32);
    if size > guard {
        return Err(Error::SearchSpaceTooLarge {
            what: what.to_string(),
            size,
            guard,
        });
    }
    Ok(())
}
