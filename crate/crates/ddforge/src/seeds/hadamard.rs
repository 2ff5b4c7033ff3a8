//! Hadamard matrix sources: Sylvester doubling and the Paley type-I
//! construction, plus normalization to an all-ones first row.

use crate::error::{Error, Result};
use crate::galois::build_field;
use crate::matrix::IntMatrix;
use serde::{Deserialize, Serialize};

/// A +-1 matrix H of order n with H H^T = n I.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HadamardMatrix {
    pub order: usize,
    pub mat: IntMatrix,
}

impl HadamardMatrix {
    pub fn verify(mat: &IntMatrix) -> Result<()> {
        if !mat.is_square() {
            return Err(Error::DimensionMismatch("Hadamard matrix must be square".into()));
        }
        let n = mat.rows();
        for r in 0..n {
            for c in 0..n {
                let v = mat.get(r, c);
                if v != 1 && v != -1 {
                    return Err(Error::EntryOutOfRange { row: r, col: c, value: v });
                }
            }
        }
        let prod = mat.mul(&mat.transpose())?;
        let expected = IntMatrix::identity(n).scale(n as i64)?;
        if prod != expected {
            let (r, c, got, want) = prod.first_diff(&expected).expect("diff exists");
            return Err(Error::VerificationFailed(format!(
                "H H^T != nI at ({r},{c}): {got} != {want}"
            )));
        }
        Ok(())
    }

    pub fn new(mat: IntMatrix) -> Result<Self> {
        Self::verify(&mat)?;
        Ok(HadamardMatrix { order: mat.rows(), mat })
    }
}

/// Sylvester matrix of order 2^k.
pub fn sylvester_hadamard(k: u32) -> HadamardMatrix {
    let mut mat = IntMatrix::new(1, 1, vec![1]).expect("1x1");
    let step = IntMatrix::new(2, 2, vec![1, 1, 1, -1]).expect("2x2");
    for _ in 0..k {
        mat = step.kron(&mat);
    }
    HadamardMatrix { order: mat.rows(), mat }
}

/// Paley type-I matrix of order qp+1 for a prime power qp = 3 (mod 4).
pub fn paley_hadamard(qp: u64) -> Result<HadamardMatrix> {
    if qp % 4 != 3 {
        return Err(Error::BadParameter(format!("{qp} is not 3 mod 4")));
    }
    let (p, m) = factor_prime_power(qp)
        .ok_or_else(|| Error::BadParameter(format!("{qp} is not a prime power")))?;
    let f = build_field(p, m)?;
    let q = qp as usize;
    // quadratic residue character: +1 on nonzero squares, -1 on non-squares
    let chi = |idx: usize| -> i64 {
        if idx == 0 {
            0
        } else if f.dlog(&f.element(idx)).expect("nonzero") % 2 == 0 {
            1
        } else {
            -1
        }
    };
    let n = q + 1;
    let mut mat = IntMatrix::zeros(n, n);
    mat.set(0, 0, 1);
    for j in 1..n {
        mat.set(0, j, 1);
        mat.set(j, 0, -1);
    }
    for i in 1..n {
        for j in 1..n {
            if i == j {
                mat.set(i, j, 1);
            } else {
                let d = f.sub(&f.element(i - 1), &f.element(j - 1));
                mat.set(i, j, chi(f.index(&d)));
            }
        }
    }
    HadamardMatrix::new(mat)
}

/// Negate every column whose first-row entry is -1, producing an
/// all-ones first row.
pub fn normalize_hadamard(h: &HadamardMatrix) -> HadamardMatrix {
    let n = h.order;
    let mut mat = h.mat.clone();
    for c in 0..n {
        if mat.get(0, c) == -1 {
            for r in 0..n {
                mat.set(r, c, -mat.get(r, c));
            }
        }
    }
    HadamardMatrix { order: n, mat }
}

pub(crate) fn factor_prime_power(n: u64) -> Option<(u64, u32)> {
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut v = n;
            let mut m = 0;
            while v % p == 0 {
                v /= p;
                m += 1;
            }
            return (v == 1).then_some((p, m));
        }
        p += 1;
    }
    (n > 1).then_some((n, 1))
}
