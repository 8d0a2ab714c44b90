use std::fmt;

use thiserror::Error;

/// Which Parry exponent constraint a substitution violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    /// α₀ ≥ 1
    LeadingExponentPositive,
    /// α_ℓ ≤ α₀ for every letter ℓ
    ExponentBoundedByLeading,
    /// simple kind: α_{m−1} ≥ 1
    SimpleTail,
    /// non-simple kind: α_ℓ ≥ 1 for some ℓ in the cycle m..m+p−1
    NonSimpleTail,
    /// every proper shift of the exponent sequence is lexicographically smaller
    Lexicographic,
    /// |φ(0)| ≥ 2, otherwise the iterates of 0 never grow
    Growth,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Constraint::LeadingExponentPositive => "α₀≥1",
            Constraint::ExponentBoundedByLeading => "α_ℓ≤α₀",
            Constraint::SimpleTail => "α_{m−1}≥1",
            Constraint::NonSimpleTail => "α_ℓ≥1 for some ℓ in {m,…,m+p−1}",
            Constraint::Lexicographic => "σᵏ(α₀α₁⋯) <_lex α₀α₁⋯ for k≥1",
            Constraint::Growth => "|φ(0)|≥2",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("value out of range: {0}")]
    Range(String),

    #[error("constraint violation: {constraint} ({detail})")]
    ConstraintViolation {
        constraint: Constraint,
        detail: String,
    },

    #[error("resource limit exceeded: {what} needs {needed}, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        needed: String,
        limit: usize,
    },

    #[error("root finder did not converge after {iterations} iterations")]
    NumericalFailure { iterations: usize },

    #[error("digit {digit} outside 0..={max}")]
    DigitRange { digit: u32, max: u32 },

    #[error("empty digit string: n = 0 has no value")]
    EmptyInput,

    #[error("state {state} carries no output value")]
    UndefinedOutput { state: usize },

    #[error("output {0} was dropped from this automaton")]
    OutputUnavailable(&'static str),

    #[error("constants too small: {0}")]
    ConstantsTooSmall(String),

    #[error("window index {index} outside [{low}, {high}]; increase L")]
    IndexOverflow { index: i64, low: i64, high: i64 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
