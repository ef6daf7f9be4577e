use thiserror::Error;

/// Errors produced by the algebraic and combinatorial routines in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree must be at least 1")]
    ZeroDegree,

    #[error("degree {n} is outside the supported range 1..={max}")]
    DegreeOutOfRange { n: usize, max: usize },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("composition index {index} out of range 1..={arity}")]
    IndexOutOfRange { index: usize, arity: usize },

    #[error("operation of arity {expected} applied to {found} arguments")]
    ArityMismatch { expected: usize, found: usize },

    #[error("empty argument in operation evaluation")]
    EmptyArgument,

    #[error("cannot parse {what} at byte {position}: {reason}")]
    Parse {
        what: &'static str,
        position: usize,
        reason: String,
    },

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("matrix is not invertible over the integers")]
    NotUnimodular,

    #[error("invalid noncrossing plant: {0}")]
    InvalidPlant(String),

    #[error("expected a noncrossing tree, found a plant with numerator edges")]
    NotATree,

    #[error("noncrossing tree is not simple (it has a middle angle)")]
    NotSimple,

    #[error("noncrossing tree does not contain the base side")]
    NotBased,

    #[error("not a projective element: {0}")]
    NotProjective(String),

    #[error("no entry in the closure table: {0}")]
    TableMiss(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("incompatible modules: {0}")]
    Incompatible(String),

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
