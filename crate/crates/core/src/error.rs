use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid Schur shape (sigma={sigma}, tau={tau}): {reason}")]
    InvalidShape {
        sigma: usize,
        tau: usize,
        reason: String,
    },

    #[error("element is not invertible (scalar part is zero)")]
    NotInvertible,

    #[error("matrix is not in the Schur algebra: {0}")]
    NotInSchurAlgebra(String),

    #[error("matrix is not block Toeplitz: {0}")]
    NotBlockToeplitz(String),

    #[error("diagonal index {index} out of range for n = {n}")]
    IndexOutOfRange { index: i64, n: usize },

    #[error("block order n = {0} is unsupported, n >= 2 is required")]
    BlockOrderTooSmall(usize),

    #[error("product is not block Toeplitz: T_p U_(q-n) != T_(p-n) U_q at p = {p}, q = {q}")]
    ConditionViolated { p: usize, q: usize },

    #[error("generated elements do not commute: {0}")]
    NotCommutative(String),

    #[error("generated algebra is not closed inside block Toeplitz matrices: {0}")]
    NotToeplitzClosed(String),

    #[error("algebra is not closed under multiplication: {0}")]
    NotClosed(String),

    #[error("pair is degenerate: Ker A and Ker B intersect nontrivially")]
    DegeneratePair,

    #[error("no element has an invertible off-diagonal block")]
    NoInvertibleOffDiagonal,

    #[error("empty generator list")]
    EmptyGenerators,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
