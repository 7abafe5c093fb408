//! Error type shared across the crate.
//!
//! Structural misuse (mixing charts, mismatched form degrees) panics, in the
//! style of shape mismatches in `ndarray`; the variants here cover failures
//! that depend on the data itself.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Division by a rational function whose numerator is the zero polynomial.
    #[error("division by the zero rational function")]
    DivisionByZeroField,

    /// A coordinate name not declared by the chart.
    #[error("unknown coordinate `{0}`")]
    UnknownCoordinate(String),

    /// Evaluation point does not assign a value to every coordinate.
    #[error("no value assigned to coordinate `{0}`")]
    UnassignedCoordinate(String),

    /// The (stored, uncancelled) denominator vanishes at the point.
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,

    /// Chart construction failed validation.
    #[error("invalid chart: {0}")]
    InvalidChart(String),

    /// Observer construction from a direction field with g(T,T) identically zero.
    #[error("direction field has identically zero Minkowski norm")]
    NullObserver,

    /// Observer pair rejected because tau(T) != 1.
    #[error("observer pair does not satisfy tau(T) = 1")]
    ObserverNotNormalized,

    /// A raw endomorphism failed the connection axioms.
    #[error("invalid connection: {0}")]
    InvalidConnection(String),

    /// Scenario fields contradict each other (F != d a, or j != d *F).
    #[error("inconsistent scenario: {0}")]
    InconsistentScenario(String),

    /// An operation that requires the potential was asked of a scenario without one.
    #[error("scenario has no potential 1-form")]
    MissingPotential,
}
