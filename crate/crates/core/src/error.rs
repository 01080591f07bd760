use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Bad arguments: out-of-range parameters, violated orderings, and so on.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("radical index mismatch: {left} vs {right}")]
    IndexMismatch { left: u32, right: u32 },

    #[error("cannot parse rational {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    /// An enumeration would exceed its configured size limit.
    #[error("guard exceeded: {what} needs {count} items, limit is {limit}")]
    GuardExceeded {
        what: &'static str,
        count: u128,
        limit: u128,
    },

    #[error("root decision is not CertifiedYes")]
    NotCertified,

    #[error("nu is not a certified root of mu at kappa = {kappa}")]
    NotARoot { kappa: u32 },

    #[error("pair (M = {m}, N = {n}) is infeasible: {bound}")]
    InfeasiblePair { m: u64, n: u64, bound: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}
