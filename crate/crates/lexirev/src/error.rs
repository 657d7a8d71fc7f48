//! Crate-wide error type.

use thiserror::Error;

use crate::formula::Var;

/// Convenience alias used by every fallible operation in the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Syntax error while parsing a formula.
    #[error("parse error at line {line}, column {col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },

    /// Identifier that does not follow the lexical rules for variables.
    #[error("invalid variable name `{0}`")]
    InvalidVarName(String),

    /// Identifiers starting with `__` are reserved for generated variables.
    #[error("variable name `{0}` is reserved (names starting with `__` are generated internally)")]
    ReservedVarName(String),

    /// A formula was evaluated against a model that does not bind one of its
    /// variables.
    #[error("variable `{0}` is not bound by the model")]
    UnboundVar(Var),

    /// A renaming collapsed two distinct variables into one.
    #[error("renaming is not injective: two variables map to `{0}`")]
    NonInjectiveRename(Var),

    /// Two objects that must share an alphabet do not.
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    /// A sequence member mentions a variable outside the declared alphabet.
    #[error("formula at position {pos} mentions `{var}` which is outside the alphabet")]
    OutsideAlphabet { pos: usize, var: Var },

    /// Model enumeration over more variables than the configured cap.
    #[error("enumeration over {vars} variables exceeds the cap of {cap}")]
    EnumerationCap { vars: usize, cap: usize },

    /// Conjunction sweep over more formulae than the configured cap.
    #[error("conjunction sweep over {formulas} formulae exceeds the cap of {cap}")]
    ConjunctionCap { formulas: usize, cap: usize },

    /// Distribution-based CNF conversion over too many variables.
    #[error(
        "equivalence-preserving CNF conversion over {vars} variables exceeds the cap of {cap}"
    )]
    DistributionCap { vars: usize, cap: usize },

    /// A sign vector whose length does not match the sequence.
    #[error("sign vector has length {got}, expected {expected}")]
    BitsLength { expected: usize, got: usize },

    /// Paired selector lists of different lengths.
    #[error("selector lists have lengths {m} and {e}, expected equal")]
    SelectorLength { m: usize, e: usize },

    /// An operation that needs a non-empty sequence received an empty one.
    #[error("operation requires a non-empty sequence")]
    EmptySequence,

    /// A 1-based position outside the sequence.
    #[error("position {pos} is out of range for a sequence of length {len}")]
    PositionOutOfRange { pos: usize, len: usize },

    /// A clause set that is not Horn where Horn is required.
    #[error("formula is not Horn: clause {{{clause}}} has more than one positive literal")]
    NotHorn { clause: String },

    /// A formula that is not a conjunction of disjunctions of literals.
    #[error("formula is not in CNF shape: {0}")]
    NotClausal(String),

    /// Malformed DIMACS input.
    #[error("DIMACS error at line {line}: {message}")]
    Dimacs { line: usize, message: String },

    /// The optional solver step budget ran out.
    #[error("solver exceeded its step budget of {budget}")]
    StepBudget { budget: u64 },

    /// A generated variable name collides with an input variable.
    #[error("generated name `{0}` collides with an input variable")]
    VarCollision(String),
}
