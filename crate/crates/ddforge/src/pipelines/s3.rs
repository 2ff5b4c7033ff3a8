//! Hadamard + skew BGW construction: a pair of divisible design
//! digraphs on n^2(p+1) vertices and their commutative 5-class scheme.

use crate::ddd::{derive_ddd_params, verify_ddd, DDDParams};
use crate::error::{Error, Result};
use crate::exact::{rat, rat_int, QuadCyclo, Rational};
use crate::galois::build_field;
use crate::matrix::{structured, IntMatrix, StructuredKind};
use crate::pipelines::{check_matrix_eq, compare_display_matrix, perfect_square_root};
use crate::report::VerificationReport;
use crate::scheme::{
    check_pq_identity, compare_rows_numeric, eigensystem_numeric, exact_q_from_p,
    validate_exact_p_rows, verify_scheme, AssociationScheme, EigenSystem, IntersectionTensor,
    Scalar, DEFAULT_TOL,
};
use crate::seeds::{
    factor_prime_power, normalize_hadamard, paley_hadamard, skew_bgw, sylvester_hadamard,
    BGWMatrix, HadamardMatrix,
};

/// Everything produced by [`build_s3`].
pub struct S3Bundle {
    pub n: usize,
    pub p: u64,
    /// Normalized Hadamard matrix (all-ones first row).
    pub h: HadamardMatrix,
    /// Rank-one blocks C_i = r_i^T r_i, i = 1..n-1.
    pub c: Vec<IntMatrix>,
    pub d: IntMatrix,
    /// Skew BGW(p+1, p, p-1) over the cyclic group of order 2n.
    pub w: BGWMatrix,
    /// Signed block matrix with B^T = -B.
    pub b: IntMatrix,
    /// Scheme classes A_0..A_5; A_1 and A_2 are the two digraphs.
    pub a: Vec<IntMatrix>,
    pub params: DDDParams,
    pub scheme: AssociationScheme,
    pub tensor: IntersectionTensor,
    pub b1: IntMatrix,
    pub eigen: EigenSystem,
    pub report: VerificationReport,
}

fn validate_parameters(n: usize, p: u64) -> Result<u64> {
    if n < 4 {
        return Err(Error::BadParameter("the seed matrix order n must be at least 4".into()));
    }
    if n % 4 != 0 {
        return Err(Error::BadParameter(format!(
            "no Hadamard matrix of order {n} exists: n must be divisible by 4"
        )));
    }
    let (p0, _) = factor_prime_power(p)
        .ok_or_else(|| Error::BadParameter(format!("p = {p} is not a prime power")))?;
    if p0 == 2 {
        return Err(Error::BadParameter(format!("p = {p} must be odd")));
    }
    if (p - 1) % (2 * n as u64) != 0 {
        return Err(Error::BadParameter(format!(
            "(p-1)/(2n) must be a positive odd integer, but 2n = {} does not divide p-1 = {}",
            2 * n,
            p - 1
        )));
    }
    let q = (p - 1) / (2 * n as u64);
    if q % 2 == 0 {
        return Err(Error::BadParameter(format!(
            "(p-1)/(2n) must be a positive odd integer, but it equals {q}"
        )));
    }
    Ok(q)
}

fn exact_div(num: i64, den: i64) -> Result<i64> {
    if num % den != 0 {
        return Err(Error::BadParameter(format!("{num} is not divisible by {den}")));
    }
    Ok(num / den)
}

/// The displayed intersection matrix B_1 with n and p substituted.
///
/// One display entry is corrected: every column of B_1 must sum to the
/// valence n(n-1)p/2 of the first class, which forces the (5,3) entry
/// to n(n-1)/2 instead of the printed n(n-2)/2.
pub fn expected_b1_s3(n: usize, p: u64) -> Result<IntMatrix> {
    validate_parameters(n, p)?;
    let (n, p) = (n as i64, p as i64);
    let e = exact_div((n - 1) * (n - 1) * (p - 1), 4)?;
    let f = exact_div((n - 1) * (p - 1), 2)?;
    let g = exact_div(n * (n - 2), 2)?;
    let rows = [
        vec![0, 1, 0, 0, 0, 0],
        vec![0, e, e, e, exact_div(n * n * p, 4)?, exact_div(n * (n - 2) * p, 4)?],
        vec![
            exact_div(n * (n - 1) * p, 2)?,
            e,
            e,
            e,
            exact_div(n * (n - 2) * p, 4)?,
            exact_div(n * (n - 2) * p, 4)?,
        ],
        vec![0, f, f, f, 0, exact_div(n * p, 2)?],
        vec![0, n / 2 - 1, n / 2, 0, 0, 0],
        vec![0, g, g, exact_div(n * (n - 1), 2)?, 0, 0],
    ];
    IntMatrix::new(6, 6, rows.concat())
}

/// Scalar builders over Q(zeta_4, sqrt(p)); a perfect-square p folds the
/// root into the rational part.
struct S3Scalars {
    p: u64,
    root: Option<u64>,
}

impl S3Scalars {
    fn new(p: u64) -> Self {
        S3Scalars { p, root: perfect_square_root(p) }
    }

    fn rational(&self, r: Rational) -> QuadCyclo {
        QuadCyclo::from_cyclo(crate::exact::CycloNumber::from_rational(r))
    }

    fn int(&self, n: i64) -> QuadCyclo {
        QuadCyclo::from_int(n)
    }

    /// c * sqrt(p)
    fn sqrt_p(&self, c: Rational) -> QuadCyclo {
        match self.root {
            Some(s) => self.rational(c * rat_int(s as i64)),
            None => QuadCyclo::sqrt_of(self.p).scale(&c),
        }
    }

    /// c * sqrt(-p) = c * zeta_4 * sqrt(p)
    fn sqrt_minus_p(&self, c: Rational) -> QuadCyclo {
        let i4 = crate::exact::CycloNumber::root(4, 1).expect("fourth root of unity");
        match self.root {
            Some(s) => QuadCyclo::from_cyclo(i4.scale(&(c * rat_int(s as i64)))),
            None => QuadCyclo::new(
                self.p,
                crate::exact::CycloNumber::from_int(0),
                i4.scale(&c),
            ),
        }
    }
}

/// The displayed first eigenmatrix P with n and p substituted; rows are
/// eigenspaces in display order, columns the classes A_0..A_5.
pub fn expected_p_s3(n: usize, p: u64) -> Result<Vec<Vec<QuadCyclo>>> {
    validate_parameters(n, p)?;
    let s = S3Scalars::new(p);
    let (ni, pi) = (n as i64, p as i64);
    let half_np = rat(ni, 2);
    Ok(vec![
        vec![
            s.int(1),
            s.rational(rat(ni * (ni - 1), 2) * rat_int(pi)),
            s.rational(rat(ni * (ni - 1), 2) * rat_int(pi)),
            s.int(ni * pi),
            s.int(ni - 1),
            s.int(ni * (ni - 1)),
        ],
        vec![
            s.int(1),
            s.rational(-rat(ni * (ni - 1), 2)),
            s.rational(-rat(ni * (ni - 1), 2)),
            s.int(-ni),
            s.int(ni - 1),
            s.int(ni * (ni - 1)),
        ],
        vec![
            s.int(1),
            s.sqrt_p(half_np.clone()),
            s.sqrt_p(half_np.clone()),
            s.sqrt_p(rat_int(-ni)),
            s.int(ni - 1),
            s.int(-ni),
        ],
        vec![
            s.int(1),
            s.sqrt_p(-half_np.clone()),
            s.sqrt_p(-half_np.clone()),
            s.sqrt_p(rat_int(ni)),
            s.int(ni - 1),
            s.int(-ni),
        ],
        vec![
            s.int(1),
            s.sqrt_minus_p(half_np.clone()),
            s.sqrt_minus_p(-half_np.clone()),
            s.int(0),
            s.int(-1),
            s.int(0),
        ],
        vec![
            s.int(1),
            s.sqrt_minus_p(-half_np.clone()),
            s.sqrt_minus_p(half_np),
            s.int(0),
            s.int(-1),
            s.int(0),
        ],
    ])
}

/// The displayed second eigenmatrix Q; rows are the classes A_0..A_5,
/// columns the eigenspaces in the order of [`expected_p_s3`].
pub fn expected_q_s3(n: usize, p: u64) -> Result<Vec<Vec<QuadCyclo>>> {
    validate_parameters(n, p)?;
    let s = S3Scalars::new(p);
    let (ni, pi) = (n as i64, p as i64);
    // (p+1)/(2 sqrt(p)) = ((p+1)/(2p)) * sqrt(p)
    let inv_half = rat(pi + 1, 2 * pi);
    let h = rat((ni - 1) * (pi + 1), 2);
    Ok(vec![
        vec![
            s.int(1),
            s.int(pi),
            s.rational(h.clone()),
            s.rational(h.clone()),
            s.rational(h.clone() * rat_int(ni)),
            s.rational(h.clone() * rat_int(ni)),
        ],
        vec![
            s.int(1),
            s.int(-1),
            s.sqrt_p(inv_half.clone()),
            s.sqrt_p(-inv_half.clone()),
            s.sqrt_minus_p(-inv_half.clone() * rat_int(ni)),
            s.sqrt_minus_p(inv_half.clone() * rat_int(ni)),
        ],
        vec![
            s.int(1),
            s.int(-1),
            s.sqrt_p(inv_half.clone()),
            s.sqrt_p(-inv_half.clone()),
            s.sqrt_minus_p(inv_half.clone() * rat_int(ni)),
            s.sqrt_minus_p(-inv_half.clone() * rat_int(ni)),
        ],
        vec![
            s.int(1),
            s.int(-1),
            s.sqrt_p(-inv_half.clone() * rat_int(ni - 1)),
            s.sqrt_p(inv_half * rat_int(ni - 1)),
            s.int(0),
            s.int(0),
        ],
        vec![
            s.int(1),
            s.int(pi),
            s.rational(h.clone()),
            s.rational(h),
            s.rational(-rat(ni * (pi + 1), 2)),
            s.rational(-rat(ni * (pi + 1), 2)),
        ],
        vec![
            s.int(1),
            s.int(pi),
            s.rational(-rat(pi + 1, 2)),
            s.rational(-rat(pi + 1, 2)),
            s.int(0),
            s.int(0),
        ],
    ])
}

fn source_hadamard(n: usize, source: Option<HadamardMatrix>) -> Result<HadamardMatrix> {
    if let Some(h) = source {
        if h.order != n {
            return Err(Error::BadParameter(format!(
                "supplied Hadamard matrix has order {}, expected {n}",
                h.order
            )));
        }
        HadamardMatrix::verify(&h.mat)?;
        return Ok(h);
    }
    if n.is_power_of_two() {
        return Ok(sylvester_hadamard(n.trailing_zeros()));
    }
    let prev = n as u64 - 1;
    if prev % 4 == 3 && factor_prime_power(prev).is_some() {
        return paley_hadamard(prev);
    }
    Err(Error::BadParameter(format!(
        "no built-in Hadamard matrix of order {n}; supply one explicitly"
    )))
}

/// Build and verify the full construction on n^2(p+1) vertices.
pub fn build_s3(n: usize, p: u64, hadamard_source: Option<HadamardMatrix>) -> Result<S3Bundle> {
    validate_parameters(n, p)?;
    let (p0, pm) = factor_prime_power(p).expect("validated prime power");
    let field = build_field(p0, pm)?;
    let mut report = VerificationReport::new();
    let v = n * n * (p as usize + 1);
    let (ni, pi) = (n as i64, p as i64);

    // (a) normalized Hadamard matrix, rank-one blocks, and D
    let h = normalize_hadamard(&source_hadamard(n, hadamard_source)?);
    report.check(
        "hadamard-normalized",
        h.mat.row(0).iter().all(|&x| x == 1),
        "first row is not all ones".to_string(),
    );
    let c: Vec<IntMatrix> = (1..n)
        .map(|i| {
            let r = IntMatrix::new(1, n, h.mat.row(i).to_vec())?;
            r.transpose().mul(&r)
        })
        .collect::<Result<_>>()?;
    let nega = structured(StructuredKind::NegaShift, n);
    let mut d = IntMatrix::zeros(n * n, n * n);
    for (k, ck) in c.iter().enumerate() {
        d = d.add(&nega.pow(k as u64 + 1)?.kron(ck))?;
    }
    let n_minus_j = IntMatrix::identity(n).scale(ni)?.sub(&IntMatrix::all_ones(n))?;
    check_matrix_eq(
        &mut report,
        "d-gram-identity",
        &d.mul(&d.transpose())?,
        &IntMatrix::identity(n).kron(&n_minus_j).scale(ni)?,
    );

    // (b) skew BGW over the cyclic group of order 2n
    let w = skew_bgw(&field, 2 * n as u64)?;
    report.pass("skew-bgw");

    // (c) the signed block matrix B
    let big_n = nega.kron(&IntMatrix::identity(n));
    let r_mat = structured(StructuredKind::BackDiagonal, n).kron(&IntMatrix::identity(n));
    let zero_block = IntMatrix::zeros(n * n, n * n);
    let mut grid = Vec::with_capacity(w.v);
    for i in 0..w.v {
        let mut row = Vec::with_capacity(w.v);
        for j in 0..w.v {
            match w.entry(i, j) {
                None => row.push(zero_block.clone()),
                Some(e) => row.push(d.mul(&big_n.pow(e)?)?.mul(&r_mat)?),
            }
        }
        grid.push(row);
    }
    let b = IntMatrix::block_assemble(&grid)?;
    check_matrix_eq(&mut report, "skew-symmetry", &b.transpose(), &b.neg());

    // (d) the three product identities
    let rhs2 = IntMatrix::identity(p as usize + 1)
        .kron(&IntMatrix::identity(n))
        .kron(&n_minus_j)
        .scale(ni * pi)?;
    check_matrix_eq(&mut report, "product-identity-b", &b.mul(&b.transpose())?, &rhs2);

    let (a1, a2) = b.sign_split()?;
    check_matrix_eq(&mut report, "transpose-pairing", &a1.transpose(), &a2);
    let support = a1.add(&a2)?;
    report.check("support-disjoint", support.is_zero_one(), "A1 and A2 overlap".to_string());

    let j_off = IntMatrix::all_ones(p as usize + 1)
        .sub(&IntMatrix::identity(p as usize + 1))?
        .kron(&IntMatrix::all_ones(n * n));
    let rhs3 = IntMatrix::identity(p as usize + 1)
        .kron(
            &IntMatrix::identity(n)
                .kron(&IntMatrix::all_ones(n))
                .add(&IntMatrix::all_ones(n * n).scale(ni - 2)?)?,
        )
        .scale(ni * pi)?
        .add(&j_off.scale((ni - 1) * (ni - 1) * (pi - 1))?)?;
    check_matrix_eq(
        &mut report,
        "product-identity-support",
        &support.mul(&support.transpose())?,
        &rhs3,
    );
    check_matrix_eq(
        &mut report,
        "product-identity-cross",
        &support.mul(&a1.transpose().sub(&a2.transpose())?)?,
        &IntMatrix::zeros(v, v),
    );

    // (e) divisible design digraph verification with derived parameters
    let params = derive_ddd_params(&a1, p + 1, (n * n) as u64)?;
    report.derived(
        "ddd-parameters",
        [params.v, params.k, params.lambda1, params.lambda2, params.m, params.n],
    );
    report.merge("ddd-a1", verify_ddd(&a1, &params)?);
    report.merge("ddd-a2", verify_ddd(&a2, &params)?);
    let stated = [
        (ni * ni * (pi + 1)) as u64,
        ((ni * ni - ni) * pi / 2) as u64,
        ((ni * ni - 2 * ni) * pi / 4) as u64,
        ((ni - 1) * (ni - 1) * (pi - 1) / 2) as u64,
        p + 1,
        (n * n) as u64,
    ];
    report.claim("theorem-parameter-tuple", stated);
    let derived = [params.v, params.k, params.lambda1, params.lambda2, params.m, params.n];
    if derived == stated {
        report.pass("theorem-parameter-display");
    } else {
        report.mismatch(
            "theorem-parameter-display",
            format!("derived {derived:?} differs from the stated tuple {stated:?}"),
        );
    }

    // (f) the six classes and their scheme
    let a3 = j_off.sub(&a1)?.sub(&a2)?;
    report.check("a3-zero-one", a3.is_zero_one(), "A3 has an entry outside {0,1}".to_string());
    report.check("a3-symmetric", a3.is_symmetric(), "A3 is not symmetric".to_string());
    let a4 = IntMatrix::identity(p as usize + 1)
        .kron(&IntMatrix::identity(n))
        .kron(&IntMatrix::all_ones(n).sub(&IntMatrix::identity(n))?);
    let a5 = IntMatrix::identity(p as usize + 1)
        .kron(&IntMatrix::all_ones(n).sub(&IntMatrix::identity(n))?)
        .kron(&IntMatrix::all_ones(n));
    let classes = vec![IntMatrix::identity(v), a1, a2, a3, a4, a5];
    let labels: Vec<String> = (0..6).map(|i| format!("A{i}")).collect();
    let outcome = verify_scheme(&classes)?;
    report.merge("scheme", outcome.report);
    let tensor = outcome
        .tensor
        .ok_or_else(|| Error::VerificationFailed("scheme axioms failed".into()))?;
    report.check("commutative", tensor.is_commutative(), "p_ij^k != p_ji^k".to_string());

    // (g) display comparisons: B_1, P, Q
    let b1 = tensor.intersection_matrix(1);
    report.claim(
        "b1-display-note",
        "the displayed B_1 prints n(n-2)/2 at position (5,3); the column-sum identity \
         (columns of B_1 sum to the valence of the first class) forces n(n-1)/2 there, \
         and the comparison below uses the corrected value",
    );
    compare_display_matrix(&mut report, "b1-display-match", &b1, &expected_b1_s3(n, p)?);

    let claimed_p = expected_p_s3(n, p)?;
    let (p_report, mults) = validate_exact_p_rows(&tensor, &claimed_p);
    let mut q_rows = None;
    match mults {
        Some(m) if p_report.is_verified() => {
            report.pass("p-display-match");
            report.derived("multiplicities", &m);
            let q = exact_q_from_p(&tensor, &claimed_p, &m);
            report.check(
                "pq-identity",
                check_pq_identity(&tensor, &claimed_p, &q),
                "P.Q != vI".to_string(),
            );
            let claimed_q = expected_q_s3(n, p)?;
            let diff = q
                .iter()
                .flatten()
                .zip(claimed_q.iter().flatten())
                .position(|(a, b)| !a.sub(b).is_zero());
            match diff {
                None => report.pass("q-display-match"),
                Some(at) => report.mismatch(
                    "q-display-match",
                    format!("entry {at} of Q differs from the display"),
                ),
            }
            q_rows = Some(q);
        }
        _ => {
            let witness: Vec<String> =
                p_report.failed_checks().map(|ch| ch.name.clone()).collect();
            report.mismatch(
                "p-display-match",
                format!("claimed eigenvalue rows do not validate: {}", witness.join(", ")),
            );
        }
    }
    let _ = q_rows;

    // numeric cross-check of the same rows
    let eigen = eigensystem_numeric(&tensor, 0, DEFAULT_TOL)?;
    let claimed_numeric: Vec<Vec<_>> = claimed_p
        .iter()
        .map(|row| row.iter().map(|x| x.embed()).collect())
        .collect();
    report.merge("p-numeric", compare_rows_numeric("p", &eigen.p, &claimed_numeric, DEFAULT_TOL)?);

    let scheme = AssociationScheme::new(classes.clone(), labels)?;
    Ok(S3Bundle {
        n,
        p,
        h,
        c,
        d,
        w,
        b,
        a: classes,
        params,
        scheme,
        tensor,
        b1,
        eigen,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{CheckStatus, Overall};

    #[test]
    fn flagship_4_9() {
        let bundle = build_s3(4, 9, None).unwrap();
        assert_eq!(
            bundle.report.overall(),
            Overall::VerifiedWithDisplayMismatch,
            "{:#?}",
            bundle.report.checks
        );
        assert_eq!(
            [bundle.params.v, bundle.params.k, bundle.params.lambda1, bundle.params.lambda2,
             bundle.params.m, bundle.params.n],
            [160, 54, 18, 18, 10, 16]
        );
        assert_eq!(bundle.tensor.d(), 5);
        assert!(bundle.tensor.is_commutative());
        // the only discrepancy with the written statement is the lambda_2 factor
        let mismatches: Vec<&str> = bundle
            .report
            .checks
            .iter()
            .filter(|c| c.status == CheckStatus::Mismatch)
            .map(|c| c.name.as_str())
            .collect();
        assert_eq!(mismatches, ["theorem-parameter-display"]);
    }

    #[test]
    fn parameter_gates() {
        assert!(matches!(build_s3(4, 8, None), Err(Error::BadParameter(_))));
        assert!(matches!(build_s3(4, 17, None), Err(Error::BadParameter(_))));
        assert!(matches!(build_s3(3, 9, None), Err(Error::BadParameter(_))));
        assert!(matches!(expected_b1_s3(4, 15), Err(Error::BadParameter(_))));
    }

    #[test]
    fn expected_displays_at_4_9() {
        let b1 = expected_b1_s3(4, 9).unwrap();
        assert_eq!(b1.get(1, 4), 36);
        assert_eq!(b1.get(4, 1), 1);
        assert_eq!(b1.get(4, 2), 2);
        // column sums all equal the valence of A_1
        for k in 0..6 {
            let sum: i64 = (0..6).map(|j| b1.get(j, k)).sum();
            assert_eq!(sum, 54);
        }
        let p = expected_p_s3(4, 9).unwrap();
        assert_eq!(p[2][1], QuadCyclo::from_int(6), "sqrt(9) folds to 3");
        let q = expected_q_s3(4, 9).unwrap();
        let v: QuadCyclo = q[0]
            .iter()
            .fold(QuadCyclo::from_int(0), |acc, x| acc + x.clone());
        assert_eq!(v, QuadCyclo::from_int(160), "first Q row sums to v");
    }

    #[test]
    fn supplied_hadamard_must_match_order() {
        let h8 = sylvester_hadamard(3);
        assert!(matches!(build_s3(4, 9, Some(h8)), Err(Error::BadParameter(_))));
    }
}
