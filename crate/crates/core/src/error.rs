use thiserror::Error;

/// Which side of the policy-2 budget domain a `(m, t1, t2)` combination fell off.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainBound {
    /// `m` must lie in `0..N`.
    PolicyCount,
    /// Policy-1 work `m * t1` drives the ratio past `x_max`.
    PolicyOneOvershoot,
    /// The pre-work ratio of policy 2 is below `x_min`.
    BelowMinimum,
    /// The pre-work ratio of policy 2 is above the ratio left by policy 1.
    AboveStart,
    /// Even the shortest admissible policy-2 work exceeds the horizon.
    HorizonTooShort,
}

impl std::fmt::Display for DomainBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            DomainBound::PolicyCount => "policy-1 task count out of range",
            DomainBound::PolicyOneOvershoot => "policy-1 work overshoots x_max",
            DomainBound::BelowMinimum => "policy-2 pre-work ratio below x_min",
            DomainBound::AboveStart => "policy-2 pre-work ratio above the policy-1 exit ratio",
            DomainBound::HorizonTooShort => {
                "budget exceeds the horizon at the shortest policy-2 work"
            }
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unreachable target: {0}")]
    UnreachableTarget(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("derivative is singular at t = {t}")]
    SingularDerivative { t: f64 },

    #[error("infeasible combination (m = {m}): {bound}")]
    InfeasibleCombination { m: usize, bound: DomainBound },

    #[error("unsupported size: N = {n} exceeds {max}; {hint}")]
    UnsupportedSize {
        n: usize,
        max: usize,
        hint: &'static str,
    },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
