use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("z = {0} lies outside [0, 1]")]
    Domain(f64),

    #[error("invalid index {index}: {reason}")]
    InvalidIndex { index: usize, reason: &'static str },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("gravity profile of degree {0} is unsupported (maximum 8)")]
    UnsupportedProfile(usize),

    #[error("assembly failed: {0}")]
    Assembly(String),

    #[error("no neutral value in range: {0}")]
    NoNeutralValue(String),

    #[error("numerical failure: residual {residual:e} exceeds {tolerance:e}")]
    Numerical { residual: f64, tolerance: f64 },

    #[error("no interior minimum in a2 bracket [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    #[error("table row {row} (epsilon = {epsilon}, a2 = {a2}): {source}")]
    Row {
        row: usize,
        epsilon: f64,
        a2: f64,
        #[source]
        source: Box<Error>,
    },
}
