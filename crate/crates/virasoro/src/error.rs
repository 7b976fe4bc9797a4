use num_bigint::BigInt;

use crate::poly::Var;

/// Errors produced by the exact algebra and analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Evaluation required a variable that was not assigned a value.
    #[error("no value assigned to variable `{0}`")]
    MissingVariable(Var),

    /// A univariate operation was asked of a polynomial involving another variable.
    #[error("polynomial is not univariate in `{expected}`: it also involves `{found}`")]
    NotUnivariate { expected: Var, found: Var },

    /// The exhaustive integer root scan would have to cover too wide a range.
    #[error("integer root bound {0} exceeds the exhaustive scan limit")]
    RootBoundTooLarge(BigInt),

    /// Rational root extraction needs to factor an oversized integer.
    #[error("coefficient {0} is too large to factor for rational root candidates")]
    FactorTooLarge(BigInt),

    /// An operation that needs a homogeneous element received a mixed-level one.
    #[error("element mixes distinct levels: {0}")]
    Inhomogeneous(String),

    /// Division by an exact zero.
    #[error("division by zero")]
    DivisionByZero,

    /// The Fock-style weight map needs p*q to be nonzero.
    #[error("weight map requires p and q to be nonzero")]
    ZeroPq,

    /// A vector produced by the tensor action left the configured window.
    #[error("result escapes the truncation window: {0}")]
    WindowExceeded(String),

    /// Submodule generators are not certified, so dependent analysis is withheld.
    #[error("submodule generator scan is undetermined beyond level {0}; raise the cap")]
    UndeterminedGenerators(u32),

    /// Analysis entry points require canonical module parameters.
    #[error("module parameters must be canonicalized before analysis")]
    NonCanonicalParams,

    /// Two vectors from different ambient modules were combined.
    #[error("ambient module mismatch: {0}")]
    AmbientMismatch(String),

    /// Input text could not be parsed.
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}
