use thiserror::Error;

use crate::lemma::Counterexample;
use crate::scalar::{Scalar, Sign};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {0:?} as a rational number")]
    Parse(String),
    #[error("{0} requires a nonzero polynomial")]
    ZeroPolynomial(&'static str),
    #[error("{0} requires a polynomial of degree at least 1")]
    ConstantPolynomial(&'static str),
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("{what} must be positive, got {value}")]
    NotPositive {
        what: &'static str,
        value: Box<Scalar>,
    },
    #[error("coefficients sum to {0}, so 1 is not a root and no quotient by (1 - x) exists")]
    NonzeroSum(Scalar),
    #[error("invalid input: {0}")]
    Precondition(String),
    #[error("sign pattern (a0={a0}, a1={a1}, b1={b1}, ap={ap}) does not match any table row")]
    NoMatchingRow {
        a0: Sign,
        a1: Sign,
        b1: Sign,
        ap: Sign,
    },
    #[error("bisection depth limit {depth} reached on interval ({lo}, {hi})")]
    UnresolvedInterval {
        lo: Box<Scalar>,
        hi: Box<Scalar>,
        depth: u32,
    },
    #[error("property violated: {0}")]
    Violation(Box<Counterexample>),
}

impl Error {
    pub fn is_violation(&self) -> bool {
        matches!(self, Error::Violation(_))
    }
}
