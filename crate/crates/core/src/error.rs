//! Error surface shared by every module in the crate.
//!
//! All computation is exact, so errors signal structural problems
//! (division by zero, degenerate parameter points, budget limits),
//! never numerical ones.

use thiserror::Error;

/// Errors raised by exact arithmetic, enumeration, and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Division by an exact zero.
    #[error("division by zero")]
    DivisionByZero,

    /// A quadratic-extension value was expected to collapse to a rational
    /// but kept a nonzero radical component.
    #[error("nonzero radical component remains: {0}")]
    IrrationalResidual(String),

    /// A Gaussian-rational value was expected to be real but kept a nonzero
    /// imaginary component.
    #[error("nonzero imaginary component remains: {0}")]
    NonrealResult(String),

    /// A named denominator factor vanished at the supplied parameter point.
    #[error("degenerate parameter point: factor {factor} vanishes")]
    DegenerateParameters { factor: String },

    /// Inverting the parameter substitution requires a rational square root
    /// that does not exist.
    #[error("discriminant {0} is not the square of a rational")]
    IrrationalDiscriminant(String),

    /// Inverting the parameter substitution hit a zero denominator.
    #[error("zero denominator while inverting parameters: {0}")]
    ZeroDenominator(String),

    /// A polynomial division that the calling identity guarantees to be exact
    /// left a remainder.
    #[error("denominator does not cancel: {0}")]
    NoncancelingDenominator(String),

    /// Series reversion requires an invertible linear coefficient.
    #[error("series is not invertible: {0}")]
    NonInvertible(String),

    /// Series composition requires the inner series to vanish at 0.
    #[error("inner series has a nonzero constant term")]
    NonzeroConstantTerm,

    /// A composition pair was passed where the second must coarsen the first.
    #[error("composition {coarse} is not a coarsening of {fine}")]
    NotCoarser { fine: String, coarse: String },

    /// The stationary linear system has a null space of dimension above 1.
    #[error("stationary distribution is not unique")]
    NonUniqueStationary,

    /// An enumeration exceeded the configured object budget.
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    /// A forest operation required a single tree but got several components.
    #[error("forest is not a single tree")]
    NotATree,

    /// A cell index lies outside the staircase shape.
    #[error("cell ({row}, {col}) is outside the staircase shape of size {n}")]
    OutOfShape { row: usize, col: usize, n: usize },

    /// The q/u filling rules did not determine a value for an empty box.
    /// Cannot occur for valid tableaux; raised as a consistency assertion.
    #[error("q/u filling rules are incomplete at ({row}, {col})")]
    IncompleteRule { row: usize, col: usize },

    /// Malformed textual input (rational literals, type words, tableau JSON).
    #[error("parse error: {0}")]
    Parse(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
