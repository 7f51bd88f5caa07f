use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree out of range: {0} (supported: 2..=24)")]
    DegreeOutOfRange(u32),
    #[error("modulus {modulus:#x} is not an irreducible polynomial of degree {n}")]
    NotIrreducible { n: u32, modulus: u64 },
    #[error("internal error: {0}")]
    Internal(String),
    #[error("exponent must be ≥ 1")]
    ZeroExponent,
    #[error("element {0:#x} does not belong to the field")]
    NotAnElement(u64),
    #[error("element {elem:#x} is not in the subfield GF(2^{m})")]
    NotInSubfield { elem: u32, m: u32 },
    #[error("subfield degree {m} does not divide field degree {n}")]
    BadSubfield { m: u32, n: u32 },
    #[error("quadratic x^2 + alpha*x + beta with alpha = 0 is degenerate")]
    DegenerateQuadratic,
    #[error("parameter must be nonzero")]
    ZeroParameter,
    #[error("Dickson degree must be >= 1")]
    DicksonDegree,
    #[error("degree {n} exceeds the {what} budget (max {max})")]
    Budget {
        what: &'static str,
        n: u32,
        max: u32,
    },
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },
    #[error("family {family} is not defined for n = {n}: {reason}")]
    FamilyShape {
        family: &'static str,
        n: u32,
        reason: &'static str,
    },
    #[error("unknown family: {0}")]
    UnknownFamily(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("exponent overflow at position {pos}")]
    ExponentOverflow { pos: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial has y-degree 0")]
    ConstantInY,
    #[error("unknown claim: {0}")]
    UnknownClaim(String),
    #[error("claim `{0}` needs boomerang data, rerun the scan with boomerang uniformity enabled")]
    ClaimNeedsBoomerang(String),
}

pub type Result<T> = std::result::Result<T, Error>;
