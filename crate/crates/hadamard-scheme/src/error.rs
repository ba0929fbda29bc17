//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by any layer of the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// A polynomial evaluation was missing an assignment for a variable.
    #[error("no value assigned to variable `{0}`")]
    MissingVariable(String),

    /// An operation that requires a nonzero polynomial received zero.
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    /// Division by a zero polynomial, rational, or field element.
    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),

    /// Mixed moduli in quadratic-extension arithmetic.
    #[error("quadratic-extension elements have different moduli")]
    ModulusMismatch,

    /// A quadratic-extension conjugation was requested for a modulus whose
    /// constant term is not 1 (conjugation-as-inversion needs |x| = 1).
    #[error("conjugation by inversion requires modulus x^2 = p*x - 1, got q0 = {0}")]
    NotUnimodularModulus(String),

    /// Resultant of two polynomials both constant in the elimination variable.
    #[error("resultant undefined: both operands are constant in `{0}`")]
    ConstantResultant(String),

    /// Repeated indices where distinct scheme classes were required.
    #[error("indices must be distinct, got {0:?}")]
    RepeatedIndex(Vec<usize>),

    /// Scheme-class index outside 0..=4.
    #[error("class index {0} out of range (expected 0..=4)")]
    ClassOutOfRange(usize),

    /// Parameters outside the supported range.
    #[error("unsupported parameters: {0}")]
    BadParameters(String),

    /// A family requested an operation it does not support.
    #[error("family {family}: {reason}")]
    UnsupportedFamily { family: String, reason: String },

    /// Precondition of the weight-recovery formula violated.
    #[error("weight recovery needs a[i0][i1] != ±2, got {0}")]
    DegenerateAnchor(String),

    /// A denominator in the weight-recovery formula vanished.
    #[error("weight recovery denominator vanished at index {0}")]
    RecoveryDenominatorZero(usize),

    /// Requested floating-point precision below the supported minimum.
    #[error("precision {0} below the 128-bit minimum")]
    PrecisionTooLow(u32),

    /// Malformed scheme file.
    #[error("scheme file, line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// I/O failure while reading external data.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
