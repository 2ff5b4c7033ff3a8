//! Divisible design digraphs: canonical data model and the exact
//! verifier for the defining matrix identity
//! A A^T = A^T A = k I + lambda1 (I_m x J_n - I) + lambda2 (J - I_m x J_n).

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::report::VerificationReport;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DDDParams {
    pub v: u64,
    pub k: u64,
    pub lambda1: u64,
    pub lambda2: u64,
    pub m: u64,
    pub n: u64,
}

impl DDDParams {
    pub fn validate(&self) -> Result<()> {
        if self.v != self.m * self.n {
            return Err(Error::BadParameter(format!(
                "v = {} != m*n = {}*{}",
                self.v, self.m, self.n
            )));
        }
        if self.k >= self.v && self.v > 0 {
            return Err(Error::BadParameter(format!("k = {} must be < v = {}", self.k, self.v)));
        }
        Ok(())
    }
}

/// A verified DDD; the partition is always the m consecutive blocks of
/// size n.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DivisibleDesignDigraph {
    pub params: DDDParams,
    pub m: u64,
    pub n: u64,
    pub adjacency: IntMatrix,
}

impl DivisibleDesignDigraph {
    pub fn new(adjacency: IntMatrix, params: DDDParams) -> Result<Self> {
        let report = verify_ddd(&adjacency, &params)?;
        if !report.is_verified() {
            let names: Vec<String> = report.failed_checks().map(|c| format!("{}", c.name)).collect();
            return Err(Error::VerificationFailed(format!("DDD checks failed: {}", names.join(", "))));
        }
        Ok(DivisibleDesignDigraph { params, m: params.m, n: params.n, adjacency })
    }
}

/// The right-hand side of the defining identity.
pub fn ddd_rhs(params: &DDDParams) -> Result<IntMatrix> {
    let v = params.v as usize;
    let m = params.m as usize;
    let n = params.n as usize;
    let block = IntMatrix::identity(m).kron(&IntMatrix::all_ones(n));
    let iv = IntMatrix::identity(v);
    let jv = IntMatrix::all_ones(v);
    let t1 = iv.scale(params.k as i64)?;
    let t2 = block.sub(&iv)?.scale(params.lambda1 as i64)?;
    let t3 = jv.sub(&block)?.scale(params.lambda2 as i64)?;
    t1.add(&t2)?.add(&t3)
}

/// Exact verification of the DDD conditions: zero diagonal, asymmetry,
/// regularity, and both product identities. Failures are itemized with
/// witness cells.
pub fn verify_ddd(a: &IntMatrix, params: &DDDParams) -> Result<VerificationReport> {
    if !a.is_square() || a.rows() as u64 != params.v {
        return Err(Error::DimensionMismatch(format!(
            "adjacency is {}x{}, params say v = {}",
            a.rows(),
            a.cols(),
            params.v
        )));
    }
    params.validate()?;
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            let v = a.get(r, c);
            if v != 0 && v != 1 {
                return Err(Error::NotZeroOne { row: r, col: c, value: v });
            }
        }
    }

    let mut report = VerificationReport::new();
    let v = params.v as usize;

    match a.diag().iter().position(|&d| d != 0) {
        None => report.pass("zero-diagonal"),
        Some(i) => report.fail("zero-diagonal", format!("loop at vertex {i}")),
    }

    let sym_sum = a.add(&a.transpose())?;
    if sym_sum.is_zero_one() {
        report.pass("asymmetric");
    } else {
        let bad = (0..v)
            .flat_map(|r| (0..v).map(move |c| (r, c)))
            .find(|&(r, c)| sym_sum.get(r, c) > 1)
            .expect("witness exists");
        report.fail("asymmetric", format!("digon at ({},{})", bad.0, bad.1));
    }

    let rows = a.row_sums()?;
    let cols = a.col_sums()?;
    let k = params.k as i64;
    match rows.iter().position(|&s| s != k).or(cols.iter().position(|&s| s != k)) {
        None => report.pass("regularity"),
        Some(i) => report.fail("regularity", format!("vertex {i} has degree != {k}")),
    }

    let rhs = ddd_rhs(params)?;
    let aat = a.mul(&a.transpose())?;
    match aat.first_diff(&rhs) {
        None => report.pass("product-identity-AAt"),
        Some((r, c, got, want)) => {
            report.fail("product-identity-AAt", format!("cell ({r},{c}): {got} != {want}"))
        }
    }
    let ata = a.transpose().mul(a)?;
    match ata.first_diff(&rhs) {
        None => report.pass("product-identity-AtA"),
        Some((r, c, got, want)) => {
            report.fail("product-identity-AtA", format!("cell ({r},{c}): {got} != {want}"))
        }
    }

    // redundant row-sum cross-check of the identity
    let lhs = params.k * params.k;
    let rhs_scalar = params.k
        + params.lambda1 * (params.n - 1)
        + params.lambda2 * params.n * (params.m.saturating_sub(1));
    report.check(
        "parameter-consistency",
        lhs == rhs_scalar,
        format!("k^2 = {lhs} but k + l1(n-1) + l2 n(m-1) = {rhs_scalar}"),
    );

    Ok(report)
}

/// Solve for (k, lambda1, lambda2) from the adjacency matrix and the
/// block shape, instead of trusting a displayed tuple.
pub fn derive_ddd_params(a: &IntMatrix, m: u64, n: u64) -> Result<DDDParams> {
    let v = m * n;
    if !a.is_square() || a.rows() as u64 != v {
        return Err(Error::DimensionMismatch(format!(
            "adjacency is {}x{}, expected {v} = {m}*{n}",
            a.rows(),
            a.cols()
        )));
    }
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            let x = a.get(r, c);
            if x != 0 && x != 1 {
                return Err(Error::NotZeroOne { row: r, col: c, value: x });
            }
        }
    }
    let rows = a.row_sums()?;
    let k = rows[0];
    if let Some(i) = rows.iter().position(|&s| s != k) {
        return Err(Error::NotRegular(i));
    }

    let aat = a.mul(&a.transpose())?;
    let vs = v as usize;
    let ns = n as usize;
    let mut lambda1: Option<i64> = None;
    let mut lambda2: Option<i64> = None;
    for r in 0..vs {
        for c in 0..vs {
            if r == c {
                continue;
            }
            let val = aat.get(r, c);
            let same_block = r / ns == c / ns;
            let slot = if same_block { &mut lambda1 } else { &mut lambda2 };
            match slot {
                None => *slot = Some(val),
                Some(prev) if *prev == val => {}
                Some(prev) => {
                    return Err(Error::NotDivisibleDesign(format!(
                        "A A^T not constant {} blocks: cell ({r},{c}) = {val}, earlier {prev}",
                        if same_block { "inside" } else { "outside" }
                    )))
                }
            }
        }
    }
    let params = DDDParams {
        v,
        k: k as u64,
        lambda1: lambda1.unwrap_or(0) as u64,
        lambda2: lambda2.unwrap_or(0) as u64,
        m,
        n,
    };
    // the same right-hand side must also equal A^T A
    let rhs = ddd_rhs(&params)?;
    let ata = a.transpose().mul(a)?;
    if let Some((r, c, got, want)) = ata.first_diff(&rhs) {
        return Err(Error::NotDivisibleDesign(format!(
            "A^T A disagrees with the derived identity at ({r},{c}): {got} != {want}"
        )));
    }
    if aat.get(0, 0) != k {
        return Err(Error::NotDivisibleDesign(format!(
            "diagonal of A A^T is {} != k = {k}",
            aat.get(0, 0)
        )));
    }
    Ok(params)
}

pub fn is_symmetric_adjacency(a: &IntMatrix) -> bool {
    a.is_symmetric()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_digraph_passes() {
        let params = DDDParams { v: 6, k: 0, lambda1: 0, lambda2: 0, m: 2, n: 3 };
        let report = verify_ddd(&IntMatrix::zeros(6, 6), &params).unwrap();
        assert!(report.is_verified());
    }

    #[test]
    fn complete_digraph_structure() {
        // J - I with m = 1: derive returns block constants, verify fails asymmetry
        let v = 4usize;
        let a = IntMatrix::all_ones(v).sub(&IntMatrix::identity(v)).unwrap();
        let p = derive_ddd_params(&a, 1, v as u64).unwrap();
        assert_eq!((p.k, p.lambda1), (v as u64 - 1, v as u64 - 2));
        let report = verify_ddd(&a, &p).unwrap();
        assert!(report.failed_checks().any(|c| c.name == "asymmetric"));
    }

    #[test]
    fn dimension_and_entry_errors() {
        let params = DDDParams { v: 4, k: 1, lambda1: 0, lambda2: 0, m: 2, n: 2 };
        assert!(verify_ddd(&IntMatrix::zeros(3, 3), &params).is_err());
        let bad = IntMatrix::new(4, 4, vec![0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        assert!(matches!(verify_ddd(&bad, &params), Err(Error::NotZeroOne { .. })));
        assert!(matches!(derive_ddd_params(&bad, 2, 2), Err(Error::NotZeroOne { .. })));
    }

    #[test]
    fn transpose_symmetry_of_verification() {
        // a tiny DDD: directed 4-cycle, v=4, k=1, m=2, n=2
        let a = IntMatrix::new(4, 4, vec![0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0]).unwrap();
        let p = derive_ddd_params(&a, 2, 2).unwrap();
        assert_eq!(p.k, 1);
        let r1 = verify_ddd(&a, &p).unwrap();
        let r2 = verify_ddd(&a.transpose(), &p).unwrap();
        assert_eq!(r1.is_verified(), r2.is_verified());
    }

    #[test]
    fn is_symmetric() {
        assert!(is_symmetric_adjacency(&IntMatrix::identity(3)));
        let a = IntMatrix::new(2, 2, vec![0, 1, 0, 0]).unwrap();
        assert!(!is_symmetric_adjacency(&a));
    }
}
