use num_rational::Rational64;
use thiserror::Error;

/// Errors raised by exact series arithmetic and by the numeric verifiers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coefficient at q^{exponent} requested beyond truncation order {order}")]
    BeyondTruncation { exponent: Rational64, order: Rational64 },

    #[error("series is not a unit: {0}")]
    NotUnit(&'static str),

    #[error("infinite product diverges formally: factor exponent {0} is not positive")]
    Divergent(Rational64),

    #[error("exponent {exponent} is not representable with grading denominator {denominator}")]
    GradingTooCoarse { exponent: Rational64, denominator: i64 },

    #[error("exponent arithmetic overflowed (grading denominator {0})")]
    ExponentOverflow(i64),

    #[error("exact series needs a finite truncation order for this operation")]
    Untruncated,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("tail bound {bound:e} not reached within {cap} terms ({what})")]
    TailCap { what: &'static str, bound: f64, cap: usize },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("matrix {0:?} is not in the required congruence subgroup")]
    NotInGroup([i64; 4]),

    #[error("component r = {0} is outside the support")]
    NotInSupport(i64),
}

pub type Result<T> = std::result::Result<T, Error>;
