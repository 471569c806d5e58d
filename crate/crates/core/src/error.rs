use thiserror::Error;

/// Errors raised by the reliability models and the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// An iterative procedure ran out of budget before meeting its target.
    #[error("no convergence in {op}: {detail}")]
    NonConvergence { op: &'static str, detail: String },

    /// A quantity underflowed to an exact zero even in the log domain.
    #[error("numeric overflow in {op} at x = {x}, n = {n}, t = {t}")]
    NumericOverflow {
        op: &'static str,
        x: f64,
        n: u64,
        t: u64,
    },

    /// A closed form hit one of its poles.
    #[error("singularity in {op}: {factor} vanishes")]
    Singularity {
        op: &'static str,
        factor: &'static str,
    },

    /// The requested simulation exceeds the sample budget.
    #[error("capacity exceeded: {requested} samples requested, budget is {budget}")]
    Capacity { requested: u128, budget: u128 },

    /// Every point of a derived curve was unusable.
    #[error("empty curve: {0}")]
    EmptyCurve(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        op,
        detail: detail.into(),
    }
}
