use thiserror::Error;

/// Errors from exact scalar, polynomial and matrix arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("cyclotomic order mismatch: {left} vs {right}")]
    OrderMismatch { left: u64, right: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("order {to} is not a multiple of {from}")]
    NotAMultiple { from: u64, to: u64 },
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("extended gcd of two zero polynomials")]
    BothZero,
    #[error(
        "matrix dimensions {left_rows}x{left_cols} and {right_rows}x{right_cols} are incompatible"
    )]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix rows have unequal lengths")]
    RaggedRows,
    #[error("matrix is empty")]
    EmptyMatrix,
    #[error("determinant requires a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("factors are not coprime")]
    NonCoprimeFactors,
    #[error("product of factors does not annihilate the operator")]
    NotAnnihilating,
    #[error("companion matrix requires degree >= 1")]
    ConstantPolynomial,
}

/// Errors from arrangement construction and lattice enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("hyperplane {index} has all coefficients zero")]
    ZeroForm { index: usize },
    #[error("hyperplanes {first} and {second} are proportional")]
    DuplicateForm { first: usize, second: usize },
    #[error("hyperplane {index} has {got} coefficients, expected {expected}")]
    WrongLength {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("ambient dimension must be at least 1")]
    ZeroDimension,
    #[error("arrangement has no hyperplanes")]
    Empty,
    #[error("coefficient order {got} does not divide the arrangement order {expected}")]
    IncompatibleOrder { got: u64, expected: u64 },
    #[error("operation needs ambient dimension >= {needed}, arrangement has {got}")]
    AmbientTooSmall { needed: usize, got: usize },
    #[error("edge has no incident codimension-3 edge; ambient dimension too small")]
    NoIncidentEdges,
    #[error(
        "decomposition profile unavailable: {members} members exceed the configured limit {limit}"
    )]
    ProfileUnavailable { members: usize, limit: usize },
    #[error("builder parameter out of range: {0}")]
    BadParameter(String),
}

/// Errors from the eigenvalue analysis layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VanishingError {
    #[error("eigenvalue denominator must be positive")]
    ZeroDenominator,
    #[error("analysis needs ambient dimension >= 3, arrangement has {got}")]
    AmbientTooSmall { got: usize },
    #[error("malformed oracle table entry {index}: {reason}")]
    BadOracleEntry { index: usize, reason: String },
    #[error("malformed witness rule {index}: {reason}")]
    BadWitnessRule { index: usize, reason: String },
}

/// Errors from the join-type rank combinatorics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TsError {
    #[error("component index {got} out of range; the factors are indexed 1 and 2")]
    BadComponentIndex { got: usize },
    #[error("exponents must be positive")]
    ZeroExponent,
}

/// Errors from the Dynkin / spectral determinant module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdeError {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("spectral number times common denominator is not an integer")]
    NonIntegralExponent,
    #[error("monodromy determinant is not rational: residue has positive degree")]
    NonRationalDeterminant,
}

/// Errors from reading or writing the JSON interchange formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("{context}: {reason}")]
    Invalid { context: String, reason: String },
}

impl FormatError {
    pub fn new(context: impl Into<String>, reason: impl Into<String>) -> Self {
        FormatError::Invalid {
            context: context.into(),
            reason: reason.into(),
        }
    }
}
