//! Error type for the command-line layer. Every variant renders a message
//! suitable for stderr; input problems exit with code 2, residual failures
//! with code 1.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// The expression grammar was violated; `position` is a byte offset into
    /// the source string.
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },

    /// An identifier that is not a coordinate of the declared chart.
    #[error("unknown identifier `{name}` at offset {position}")]
    UnknownIdentifier { name: String, position: usize },

    /// `^` was given a negative exponent (e.g. `x^-1`).
    #[error("negative exponent at offset {position}: exponents must be non-negative integers")]
    NegativeExponent { position: usize },

    /// Division by an expression that is identically zero.
    #[error("division by an identically zero expression at offset {position}")]
    DivisionByZero { position: usize },

    /// A scenario/spec file field failed validation; `path` locates it.
    #[error("{path}: {message}")]
    Field { path: String, message: String },

    /// `check --suite` received a name outside the fixed set.
    #[error("unknown suite `{0}` (expected one of: decomposition, temperley-lieb, prop21, prop47, lemma42, all)")]
    UnknownSuite(String),

    /// `ehresmann --demo` received a name outside the fixed set.
    #[error("unknown demo `{0}` (expected one of: product, u1-like, non-principal)")]
    UnknownDemo(String),

    /// An engine-level validation error (inconsistent scenario, null
    /// observer, invalid connection, ...).
    #[error("{0}")]
    Core(#[from] obsplit_core::Error),

    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed file: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Wrap an expression error with the scenario field that contained it.
    pub fn at_field(self, path: &str) -> CliError {
        match self {
            CliError::Field { .. } => self,
            other => CliError::Field {
                path: path.to_string(),
                message: other.to_string(),
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
