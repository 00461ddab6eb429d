//! Exact polynomial arithmetic over the rationals.
//!
//! [`MultiPoly`] is a sparse multivariate polynomial keyed by graded-lex
//! ordered monomials; [`UniPoly`] is a dense univariate polynomial and
//! [`UniRationalFn`] a reduced quotient of two of them. Multivariate rational
//! functions are never reduced: they are compared by cross-multiplication
//! (see [`ratfn_equal`]).

pub(crate) mod modular;
mod monomial;
mod multi;
mod parse;
mod serial;
mod uni;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use monomial::{Monomial, MAX_VARS};
pub use multi::{arith, ratfn_equal, ArithKind, Binding, MultiPoly};
pub use parse::{infer_var_names, parse, MAX_PARSE_DEGREE};
pub use serial::{PolyJson, TermJson};
pub use uni::{interpolate, uni_reduce, UniPoly, UniRationalFn};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at column {}: expected {expected}, found {found}", .pos + 1)]
    Syntax {
        pos: usize,
        expected: String,
        found: String,
    },
    #[error("unknown variable `{name}` at column {}", .pos + 1)]
    UnknownVariable { name: String, pos: usize },
    #[error("negative exponent at column {}", .pos + 1)]
    NegativeExponent { pos: usize },
    #[error("degree too large at column {} (limit {MAX_PARSE_DEGREE})", .pos + 1)]
    DegreeTooLarge { pos: usize },
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("point has {found} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("duplicate abscissa {0}")]
    DuplicateAbscissa(String),
    #[error("interpolation needs at least one point")]
    NoPoints,
    #[error("too many variables: {0} (limit {MAX_VARS})")]
    TooManyVariables(usize),
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
}

pub(crate) fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `"num/den"` with the denominator always present.
pub fn format_ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"n"` or `"n/d"` into a reduced rational.
pub fn parse_ratio(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.trim().parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Display form used in human-readable output: integers bare, fractions `n/d`.
pub(crate) fn display_rat(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn write_term(
    out: &mut String,
    first: bool,
    coeff: &Rational,
    body: &str,
) {
    let neg = coeff.is_negative();
    let mag = coeff.abs();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if body.is_empty() {
        out.push_str(&display_rat(&mag));
    } else if mag.is_one() {
        out.push_str(body);
    } else {
        out.push_str(&display_rat(&mag));
        out.push('*');
        out.push_str(body);
    }
}
