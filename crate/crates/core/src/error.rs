//! Shared error type for the whole engine.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong across the engine, by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Division requested by an element that is neither a unit of the
    /// localization nor an exact polynomial divisor.
    NotInvertible,
    /// The zero class has no dimension.
    ZeroClass,
    /// A specialization was requested at a point excluded by the entry's
    /// congruence guard (modulus, required residue, offending value).
    GuardViolated { modulus: u64, residue: u64, q0: i64 },
    /// Specialization point annihilates a denominator factor.
    DenominatorZero,
    /// The class has nontrivial denominator factors.
    NotPolynomial,
    /// Zeta-product construction requires integer coefficients.
    NonIntegerCoefficients,
    /// Symmetric powers of this class do not stabilize (non-monic leading term).
    NotStable,
    /// An operation's stated precondition does not hold.
    PreconditionViolated(String),
    /// No catalog or builtin entry under this name.
    UnknownGroup(String),
    /// Enumeration or combinatorial budget exceeded.
    BudgetExceeded(String),
    /// The oracle only works over prime fields.
    NotPrime(u64),
    /// Partition sizes disagree.
    SizeMismatch,
    /// Padding target is smaller than `|lambda| + lambda_1`.
    TooSmall,
    /// A quotient class required by the decomposition solve is missing.
    MissingQuotient(String),
    /// Structural invariants of an input datum fail.
    InvariantViolated(String),
    /// A computation that must produce an integer produced a proper fraction.
    NonIntegerResult,
    /// Text encoding could not be parsed.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotInvertible => write!(f, "divisor is not invertible in the localization"),
            Error::ZeroClass => write!(f, "the zero class has no dimension"),
            Error::GuardViolated { modulus, residue, q0 } => write!(
                f,
                "specialization at q = {q0} violates the congruence guard q = {residue} (mod {modulus})"
            ),
            Error::DenominatorZero => write!(f, "specialization annihilates a denominator factor"),
            Error::NotPolynomial => write!(f, "class has nontrivial denominator"),
            Error::NonIntegerCoefficients => write!(f, "polynomial has non-integer coefficients"),
            Error::NotStable => write!(f, "symmetric powers do not stabilize (leading coefficient is not 1)"),
            Error::PreconditionViolated(msg) => write!(f, "precondition violated: {msg}"),
            Error::UnknownGroup(name) => write!(f, "unknown group: {name}"),
            Error::BudgetExceeded(msg) => write!(f, "budget exceeded: {msg}"),
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::SizeMismatch => write!(f, "partitions have different sizes"),
            Error::TooSmall => write!(f, "padding target n is smaller than |lambda| + lambda_1"),
            Error::MissingQuotient(name) => write!(f, "missing quotient class for partition {name}"),
            Error::InvariantViolated(msg) => write!(f, "invariant violated: {msg}"),
            Error::NonIntegerResult => write!(f, "computation produced a non-integer result"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
