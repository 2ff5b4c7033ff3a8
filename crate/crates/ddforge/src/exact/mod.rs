//! Exact scalar arithmetic: arbitrary-precision rationals, cyclotomic
//! numbers, and a tolerance-bounded complex fallback for irrational
//! eigenmatrix entries.

mod approx;
mod cyclo;
mod quad;

pub use approx::{approx_eq, ApproxComplex};
pub use cyclo::CycloNumber;
pub use quad::QuadCyclo;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Always-reduced arbitrary-precision rational with positive denominator.
/// `BigRational` maintains both invariants on construction.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from(BigInt::from(n))
}
