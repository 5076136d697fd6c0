use thiserror::Error;

/// Errors raised across the library. Numeric payloads are reported as `f64`
/// whatever the working scalar type is.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BohrError {
    #[error("{what} = {value} is outside {range}")]
    Domain {
        what: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("derivative order {k} exceeds truncation order {order}")]
    InsufficientOrder { k: usize, order: usize },

    #[error("invalid functional descriptor: {0}")]
    InvalidDescriptor(&'static str),

    #[error("area ratio S_r/pi = {0} is not below 1")]
    DegenerateArea(f64),

    #[error("r = {0} is outside the lemma range (0, 1/sqrt(2)]")]
    OutOfLemmaRange(f64),

    #[error("no sign change on [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    #[error("bisection did not converge within {0} iterations")]
    Convergence(usize),

    #[error("{0} has no closed form here")]
    NotImplemented(&'static str),

    #[error("M = {0} violates the validity condition of the radius theorem")]
    InvalidM(f64),

    #[error("function is not increasing on the bracket")]
    NotMonotone,

    #[error("no crossing in (0, 1)")]
    NoRoot,

    #[error("closed form {closed} and direct sum {direct} disagree beyond {tol}")]
    CrossCheck { closed: f64, direct: f64, tol: f64 },
}

pub type Result<T> = std::result::Result<T, BohrError>;

pub(crate) fn domain(what: &'static str, value: f64, range: &'static str) -> BohrError {
    BohrError::Domain { what, value, range }
}
