//! Exact rational linear algebra.
//!
//! Everything here works over [`Rational`] (arbitrary precision), so ranks,
//! kernels, determinants and feasibility answers are decided without rounding.

mod feasibility;
mod matrix;
mod subspace;

pub use feasibility::{feasible, Feasibility, InfeasibilityCertificate, SignConstrainedSystem};
pub use matrix::{dot, RationalMatrix};
pub use subspace::{orthogonal_basis, SubspaceBasis};

use num_traits::ToPrimitive;
use serde::Serializer;
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("basis vectors are linearly dependent")]
    DependentColumns,
}

pub fn rat(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn to_f64(v: &Rational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Parses `a` or `a/b` with integer `a` and positive integer `b`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let valid_int = |t: &str, allow_sign: bool| {
        let digits = if allow_sign { t.strip_prefix('-').unwrap_or(t) } else { t };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num, true) {
        return None;
    }
    let n: num_bigint::BigInt = num.parse().ok()?;
    match den {
        None => Some(Rational::from_integer(n)),
        Some(d) => {
            if !valid_int(d, false) {
                return None;
            }
            let d: num_bigint::BigInt = d.parse().ok()?;
            if d == num_bigint::BigInt::from(0) {
                return None;
            }
            Some(Rational::new(n, d))
        }
    }
}

pub(crate) fn serialize_rationals<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}
