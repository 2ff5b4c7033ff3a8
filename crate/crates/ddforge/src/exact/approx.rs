//! Tolerance-bounded complex numbers for eigenstructure checks where
//! entries are genuinely irrational (e.g. sqrt(p) with p not a square).

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A float complex number that is only ever compared through
/// [`approx_eq`] with an explicit tolerance.
#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct ApproxComplex {
    pub re: f64,
    pub im: f64,
}

impl ApproxComplex {
    pub fn new(re: f64, im: f64) -> Self {
        ApproxComplex { re, im }
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl From<Complex64> for ApproxComplex {
    fn from(z: Complex64) -> Self {
        ApproxComplex { re: z.re, im: z.im }
    }
}

impl From<ApproxComplex> for Complex64 {
    fn from(z: ApproxComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// True iff `max(|d_re|, |d_im|) <= tol`. Rejects non-finite inputs and
/// non-positive tolerances.
pub fn approx_eq(a: ApproxComplex, b: ApproxComplex, tol: f64) -> Result<bool> {
    if !(tol > 0.0) {
        return Err(Error::BadParameter(format!("tolerance must be positive, got {tol}")));
    }
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::BadParameter("approx_eq on non-finite input".into()));
    }
    Ok((a.re - b.re).abs() <= tol && (a.im - b.im).abs() <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_window() {
        let a = ApproxComplex::new(1.0, 0.0);
        let b = ApproxComplex::new(1.0 + 1e-12, 0.0);
        assert!(approx_eq(a, b, 1e-9).unwrap());
        let c = ApproxComplex::new(0.0, 1.0);
        let d = ApproxComplex::new(0.0, -1.0);
        assert!(!approx_eq(c, d, 1e-9).unwrap());
    }

    #[test]
    fn rejects_bad_inputs() {
        let a = ApproxComplex::new(f64::NAN, 0.0);
        assert!(approx_eq(a, a, 1e-9).is_err());
        let b = ApproxComplex::new(0.0, 0.0);
        assert!(approx_eq(b, b, 0.0).is_err());
    }
}
