use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("Jacobi symbol needs an odd positive modulus, got {0}")]
    JacobiModulus(u64),
    #[error("radicand mismatch: sqrt({0}) and sqrt({1}) cannot be combined")]
    RadicandMismatch(i64, i64),
    #[error("radicand {0} is not a squarefree integer other than 0 and 1")]
    InvalidRadicand(i64),
    #[error("division by zero")]
    DivisionByZero,
}

/// Why a modulus was rejected as a Kraitchik modulus.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModulusError {
    #[error("d = {0} is even")]
    Even(u64),
    #[error("d = {0} is not squarefree")]
    NotSquarefree(u64),
    #[error("d = {0} is too small (need d >= {1})")]
    TooSmall(u64, u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealError {
    #[error("interval division by an interval containing zero")]
    DivisionByZero,
    #[error("square root of an interval with negative part")]
    NegativeSqrt,
    #[error("logarithm of an interval that is not strictly positive")]
    NonPositiveLog,
    #[error("power with non-integer exponent needs a strictly positive base")]
    NonPositivePowBase,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("coefficient {index} of the d = {d} construction is not an algebraic integer")]
    NonIntegral { d: u64, index: usize },
    #[error("nonzero remainder while dividing out X^{e} - 1 for Phi_{d}")]
    NonzeroRemainder { d: u64, e: u64 },
    #[error("coefficient {index} of the d = {d} construction does not fit in 64 bits")]
    Overflow { d: u64, index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("index n = {n} outside the admissible range {lo}..={hi}")]
    IndexRange { n: u64, lo: u64, hi: u64 },
    #[error("x = {x} does not exceed 2*G_{d}")]
    RatioGate { d: u64, x: String },
    #[error(transparent)]
    Modulus(#[from] ModulusError),
    #[error(transparent)]
    Real(#[from] RealError),
}

/// Umbrella error for callers that drive the whole pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Modulus(#[from] ModulusError),
    #[error(transparent)]
    Real(#[from] RealError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Check(#[from] CheckError),
}
