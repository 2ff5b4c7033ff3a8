//! Eigenmatrices P and Q of commutative schemes.
//!
//! Numeric mode diagonalizes a seeded random combination of the
//! intersection matrices B_i = (p_{ij}^k); a common eigenvector u with
//! u_0 = 1 carries the eigenvalue row p_t = u directly, since
//! B_i u = p_{ti} u. Exact mode validates candidate rows supplied from
//! the written formulas instead of discovering them.

use crate::error::{Error, Result};
use crate::exact::{approx_eq, rat_int, ApproxComplex, Rational};
use crate::report::VerificationReport;
use crate::scheme::algebra::Scalar;
use crate::scheme::IntersectionTensor;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const DEFAULT_TOL: f64 = 1e-9;
const MAX_RETRIES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    ExactCyclotomic,
    Numeric,
}

/// First and second eigenmatrices with multiplicities. Row t of `p`
/// holds the eigenvalues (p_{t0},...,p_{td}); `q[j][t] = q_{jt}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EigenSystem {
    pub p: Vec<Vec<ApproxComplex>>,
    pub q: Vec<Vec<ApproxComplex>>,
    pub multiplicities: Vec<u64>,
    pub exactness: Exactness,
}

/// Numeric eigensystem of a commutative scheme via a seeded random
/// combination of the B_i. Deterministic for a fixed seed.
pub fn eigensystem_numeric(t: &IntersectionTensor, seed: u64, tol: f64) -> Result<EigenSystem> {
    if !t.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let n = t.classes();
    let v = t.v as f64;
    let b: Vec<DMatrix<f64>> = (0..n)
        .map(|i| DMatrix::from_fn(n, n, |j, k| t.p(i, j, k) as f64))
        .collect();
    let scale: f64 = t.valences().iter().map(|&k| k as f64).sum();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_err = Error::DegenerateSeparation(MAX_RETRIES);
    for _ in 0..MAX_RETRIES {
        let coeffs: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut m = DMatrix::zeros(n, n);
        for (c, bi) in coeffs.iter().zip(b.iter()) {
            m += bi * *c;
        }
        let eigenvalues: Vec<Complex64> = m.complex_eigenvalues().iter().copied().collect();
        let sep_tol = 1e-8 * (1.0 + scale);
        let separated = (0..n).all(|a| {
            (0..a).all(|b2| (eigenvalues[a] - eigenvalues[b2]).norm() > sep_tol)
        });
        if !separated {
            continue;
        }
        match assemble_rows(t, &b, &m, &eigenvalues, tol) {
            Ok(rows) => return finish_eigensystem(t, rows, v, tol),
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

fn assemble_rows(
    t: &IntersectionTensor,
    b: &[DMatrix<f64>],
    m: &DMatrix<f64>,
    eigenvalues: &[Complex64],
    tol: f64,
) -> Result<Vec<Vec<Complex64>>> {
    let n = t.classes();
    let mut rows = Vec::with_capacity(n);
    for &lambda in eigenvalues {
        let u = nullvector(m, lambda)?;
        let pivot = (0..n)
            .max_by(|&a, &c| u[a].norm().partial_cmp(&u[c].norm()).unwrap())
            .unwrap();
        let mut row = Vec::with_capacity(n);
        for bi in b {
            // B_i u = p_i u; read p_i off the largest entry and check
            // the residual everywhere
            let bu: Vec<Complex64> = (0..n)
                .map(|j| (0..n).map(|k| Complex64::new(bi[(j, k)], 0.0) * u[k]).sum())
                .collect();
            let p_i = bu[pivot] / u[pivot];
            let residual = (0..n)
                .map(|j| (bu[j] - p_i * u[j]).norm())
                .fold(0.0, f64::max);
            if residual > tol.max(1e-7) * (1.0 + p_i.norm()) {
                return Err(Error::VerificationFailed(format!(
                    "eigenvector residual {residual:.3e} too large"
                )));
            }
            row.push(p_i);
        }
        rows.push(row);
    }
    Ok(rows)
}

fn finish_eigensystem(
    t: &IntersectionTensor,
    mut rows: Vec<Vec<Complex64>>,
    v: f64,
    tol: f64,
) -> Result<EigenSystem> {
    let n = t.classes();
    // the valency row comes first; sort the rest by rounded entries
    let is_trivial = |row: &[Complex64]| {
        row.iter()
            .zip(t.valences().iter())
            .all(|(x, &k)| (x - Complex64::new(k as f64, 0.0)).norm() < 1e-6 * (1.0 + k as f64))
    };
    let Some(tpos) = rows.iter().position(|r| is_trivial(r)) else {
        return Err(Error::VerificationFailed("no valency eigenvalue row found".into()));
    };
    rows.swap(0, tpos);
    let key = |row: &[Complex64]| -> Vec<(i64, i64)> {
        row.iter()
            .map(|z| ((z.re * 1e7).round() as i64, (z.im * 1e7).round() as i64))
            .collect()
    };
    rows[1..].sort_by(|a, b| key(a).cmp(&key(b)));

    let mut multiplicities = Vec::with_capacity(n);
    for row in &rows {
        let denom: f64 = row
            .iter()
            .enumerate()
            .map(|(j, z)| z.norm_sqr() / t.valence(j) as f64)
            .sum();
        let m = v / denom;
        let rounded = m.round();
        if (m - rounded).abs() > 1e-6 * v || rounded < 1.0 {
            return Err(Error::VerificationFailed(format!(
                "multiplicity {m} is not a positive integer"
            )));
        }
        multiplicities.push(rounded as u64);
    }
    let total: u64 = multiplicities.iter().sum();
    if total != t.v as u64 {
        return Err(Error::VerificationFailed(format!(
            "multiplicities sum to {total}, expected {}",
            t.v
        )));
    }

    let q: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|tt| rows[tt][j].conj() * multiplicities[tt] as f64 / t.valence(j) as f64)
                .collect()
        })
        .collect();

    // P Q = v I in the operating arithmetic
    for a in 0..n {
        for c in 0..n {
            let dot: Complex64 = (0..n).map(|j| rows[a][j] * q[j][c]).sum();
            let want = if a == c { Complex64::new(v, 0.0) } else { Complex64::zero() };
            if (dot - want).norm() > tol.max(1e-6) * v {
                return Err(Error::VerificationFailed(format!(
                    "P.Q deviates from vI at ({a},{c}) by {:.3e}",
                    (dot - want).norm()
                )));
            }
        }
    }

    Ok(EigenSystem {
        p: rows
            .into_iter()
            .map(|r| r.into_iter().map(ApproxComplex::from).collect())
            .collect(),
        q: q.into_iter().map(|r| r.into_iter().map(ApproxComplex::from).collect()).collect(),
        multiplicities,
        exactness: Exactness::Numeric,
    })
}

/// One vector spanning the nullspace of (m - lambda I), by complex
/// Gaussian elimination with partial pivoting.
fn nullvector(m: &DMatrix<f64>, lambda: Complex64) -> Result<Vec<Complex64>> {
    let n = m.nrows();
    let mut a: Vec<Vec<Complex64>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let mut z = Complex64::new(m[(r, c)], 0.0);
                    if r == c {
                        z -= lambda;
                    }
                    z
                })
                .collect()
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(prow) = (rank..n)
            .filter(|&r| a[r][col].norm() > 1e-9)
            .max_by(|&x, &y| a[x][col].norm().partial_cmp(&a[y][col].norm()).unwrap())
        else {
            continue;
        };
        a.swap(rank, prow);
        let inv = a[rank][col].inv();
        for c in 0..n {
            a[rank][c] *= inv;
        }
        for r in 0..n {
            if r != rank && a[r][col].norm() > 0.0 {
                let f = a[r][col];
                for c in 0..n {
                    let t = a[rank][c] * f;
                    a[r][c] -= t;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == n {
            break;
        }
    }
    if rank == n {
        return Err(Error::VerificationFailed("eigenvalue has an empty nullspace".into()));
    }
    let free = (0..n).find(|c| !pivot_cols.contains(c)).expect("rank < n");
    let mut u = vec![Complex64::zero(); n];
    u[free] = Complex64::one();
    for (r, &pc) in pivot_cols.iter().enumerate() {
        u[pc] = -a[r][free];
    }
    Ok(u)
}

/// Validate claimed exact eigenvalue rows: each row u must satisfy
/// sum_k p_{ij}^k u_k = u_i u_j for all i,j, start with u_0 = 1, be
/// pairwise distinct, and carry positive integer multiplicities summing
/// to v. Returns the multiplicities alongside the report.
pub fn validate_exact_p_rows<S: Scalar>(
    t: &IntersectionTensor,
    rows: &[Vec<S>],
) -> (VerificationReport, Option<Vec<u64>>) {
    let mut report = VerificationReport::new();
    let n = t.classes();
    report.check(
        "row-count",
        rows.len() == n && rows.iter().all(|r| r.len() == n),
        format!("expected {n} rows of length {n}"),
    );
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return (report, None);
    }
    for (ti, u) in rows.iter().enumerate() {
        if !u[0].sub(&S::one()).is_zero() {
            report.fail(format!("row-{ti}-normalized"), "u_0 != 1".to_string());
            continue;
        }
        let mut ok = true;
        'pairs: for i in 0..n {
            for j in 0..n {
                let mut lhs = S::zero();
                for k in 0..n {
                    let p = t.p(i, j, k);
                    if p != 0 {
                        lhs = lhs.add(&u[k].scale_rat(&rat_int(p)));
                    }
                }
                if !lhs.sub(&u[i].mul(&u[j])).is_zero() {
                    report.fail(
                        format!("row-{ti}-eigen"),
                        format!("sum_k p_({i},{j})^k u_k != u_{i} u_{j}"),
                    );
                    ok = false;
                    break 'pairs;
                }
            }
        }
        if ok {
            report.pass(format!("row-{ti}-eigen"));
        }
    }
    let mut distinct = true;
    for a in 0..n {
        for b in 0..a {
            if rows[a]
                .iter()
                .zip(rows[b].iter())
                .all(|(x, y)| x.sub(y).is_zero())
            {
                report.fail("rows-distinct", format!("rows {b} and {a} coincide"));
                distinct = false;
            }
        }
    }
    if distinct {
        report.pass("rows-distinct");
    }

    let mults = exact_multiplicities(t, rows, &mut report);
    (report, mults)
}

fn exact_multiplicities<S: Scalar>(
    t: &IntersectionTensor,
    rows: &[Vec<S>],
    report: &mut VerificationReport,
) -> Option<Vec<u64>> {
    let n = t.classes();
    let v = rat_int(t.v as i64);
    let mut mults = Vec::with_capacity(n);
    for (ti, u) in rows.iter().enumerate() {
        let mut denom = S::zero();
        for j in 0..n {
            let norm = u[j].mul(&u[j].conj());
            denom = denom.add(&norm.scale_rat(&rat_int(t.valence(j)).recip()));
        }
        let Some(d) = denom.as_rational() else {
            report.fail(format!("multiplicity-{ti}"), "norm sum is irrational".to_string());
            return None;
        };
        let m = &v / &d;
        if !m.is_integer() || m <= Rational::zero() {
            report.fail(format!("multiplicity-{ti}"), format!("m = {m} is not a positive integer"));
            return None;
        }
        mults.push(m.to_integer().try_into().expect("fits u64"));
    }
    let total: u64 = mults.iter().sum();
    report.check(
        "multiplicities-sum",
        total == t.v as u64,
        format!("multiplicities sum to {total}, expected {}", t.v),
    );
    if total == t.v as u64 {
        Some(mults)
    } else {
        None
    }
}

/// q_{jt} = m_t conj(p_{tj}) / k_j, given validated rows and
/// multiplicities.
pub fn exact_q_from_p<S: Scalar>(
    t: &IntersectionTensor,
    rows: &[Vec<S>],
    mults: &[u64],
) -> Vec<Vec<S>> {
    let n = t.classes();
    (0..n)
        .map(|j| {
            (0..n)
                .map(|tt| {
                    rows[tt][j]
                        .conj()
                        .scale_rat(&(rat_int(mults[tt] as i64) / rat_int(t.valence(j))))
                })
                .collect()
        })
        .collect()
}

/// Exact P.Q = vI check.
pub fn check_pq_identity<S: Scalar>(t: &IntersectionTensor, p: &[Vec<S>], q: &[Vec<S>]) -> bool {
    let n = t.classes();
    for a in 0..n {
        for c in 0..n {
            let mut dot = S::zero();
            for j in 0..n {
                dot = dot.add(&p[a][j].mul(&q[j][c]));
            }
            let want = if a == c { S::from_int(t.v as i64) } else { S::zero() };
            if !dot.sub(&want).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Compare a computed row family against a claimed display, exactly, up
/// to row permutation. Disagreement is recorded as a display mismatch,
/// never a failure.
pub fn compare_rows_exact<S: Scalar>(
    name: &str,
    computed: &[Vec<S>],
    claimed: &[Vec<S>],
) -> Result<VerificationReport> {
    if computed.len() != claimed.len()
        || computed
            .iter()
            .zip(claimed.iter())
            .any(|(a, b)| a.len() != b.len())
    {
        return Err(Error::ShapeMismatch(format!("{name}: row families differ in shape")));
    }
    let mut report = VerificationReport::new();
    let mut used = vec![false; computed.len()];
    let mut perm = Vec::new();
    let mut unmatched = Vec::new();
    for (ci, crow) in claimed.iter().enumerate() {
        let hit = computed.iter().enumerate().find(|(i, row)| {
            !used[*i] && row.iter().zip(crow.iter()).all(|(a, b)| a.sub(b).is_zero())
        });
        match hit {
            Some((i, _)) => {
                used[i] = true;
                perm.push(i);
            }
            None => unmatched.push(ci),
        }
    }
    if unmatched.is_empty() {
        report.pass(format!("{name}-display-match"));
        report.derived(format!("{name}-row-permutation"), &perm);
    } else {
        report.mismatch(
            format!("{name}-display-match"),
            format!("claimed rows {unmatched:?} have no exact computed counterpart"),
        );
    }
    Ok(report)
}

/// Numeric variant of [`compare_rows_exact`] at an explicit tolerance.
pub fn compare_rows_numeric(
    name: &str,
    computed: &[Vec<ApproxComplex>],
    claimed: &[Vec<ApproxComplex>],
    tol: f64,
) -> Result<VerificationReport> {
    if computed.len() != claimed.len()
        || computed
            .iter()
            .zip(claimed.iter())
            .any(|(a, b)| a.len() != b.len())
    {
        return Err(Error::ShapeMismatch(format!("{name}: row families differ in shape")));
    }
    let mut report = VerificationReport::new();
    let mut used = vec![false; computed.len()];
    let mut perm = Vec::new();
    let mut unmatched = Vec::new();
    for (ci, crow) in claimed.iter().enumerate() {
        let mut hit = None;
        for (i, row) in computed.iter().enumerate() {
            if used[i] {
                continue;
            }
            let all_close = row
                .iter()
                .zip(crow.iter())
                .try_fold(true, |acc, (a, b)| Ok::<bool, Error>(acc && approx_eq(*a, *b, tol)?))?;
            if all_close {
                hit = Some(i);
                break;
            }
        }
        match hit {
            Some(i) => {
                used[i] = true;
                perm.push(i);
            }
            None => unmatched.push(ci),
        }
    }
    if unmatched.is_empty() {
        report.pass(format!("{name}-display-match"));
        report.derived(format!("{name}-row-permutation"), &perm);
    } else {
        report.mismatch(
            format!("{name}-display-match"),
            format!("claimed rows {unmatched:?} not matched at tolerance {tol}"),
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::CycloNumber;
    use crate::matrix::{structured, IntMatrix, StructuredKind};
    use crate::scheme::verify_scheme;

    fn tensor_of(classes: &[IntMatrix]) -> IntersectionTensor {
        verify_scheme(classes).unwrap().tensor.unwrap()
    }

    #[test]
    fn complete_graph_spectrum() {
        let i = IntMatrix::identity(4);
        let j = IntMatrix::all_ones(4);
        let t = tensor_of(&[i.clone(), j.sub(&i).unwrap()]);
        let es = eigensystem_numeric(&t, 7, DEFAULT_TOL).unwrap();
        assert_eq!(es.multiplicities, vec![1, 3]);
        assert!(approx_eq(es.p[0][1], ApproxComplex::new(3.0, 0.0), 1e-7).unwrap());
        assert!(approx_eq(es.p[1][1], ApproxComplex::new(-1.0, 0.0), 1e-7).unwrap());
        // Q column of the trivial idempotent is all ones
        for j in 0..2 {
            assert!(approx_eq(es.q[j][0], ApproxComplex::new(1.0, 0.0), 1e-7).unwrap());
        }
    }

    #[test]
    fn z4_exact_rows() {
        let u = structured(StructuredKind::Shift, 4);
        let classes: Vec<IntMatrix> = (0..4u64).map(|e| u.pow(e).unwrap()).collect();
        let t = tensor_of(&classes);
        // character rows: u_j = zeta_4^{tj}
        let rows: Vec<Vec<CycloNumber>> = (0..4i64)
            .map(|tt| (0..4i64).map(|j| CycloNumber::root(4, tt * j).unwrap()).collect())
            .collect();
        let (report, mults) = validate_exact_p_rows(&t, &rows);
        assert!(report.is_verified(), "{:?}", report.checks);
        let mults = mults.unwrap();
        assert_eq!(mults, vec![1, 1, 1, 1]);
        let q = exact_q_from_p(&t, &rows, &mults);
        assert!(check_pq_identity(&t, &rows, &q));

        // numeric mode agrees up to row order
        let es = eigensystem_numeric(&t, 11, DEFAULT_TOL).unwrap();
        let numeric_rows: Vec<Vec<ApproxComplex>> = rows
            .iter()
            .map(|r| r.iter().map(|x| x.embed()).collect())
            .collect();
        let cmp = compare_rows_numeric("p", &es.p, &numeric_rows, 1e-6).unwrap();
        assert!(cmp.checks.iter().any(|c| c.name == "p-display-match"
            && c.status == crate::report::CheckStatus::Pass));
    }

    #[test]
    fn bad_exact_rows_are_flagged() {
        let i = IntMatrix::identity(3);
        let j = IntMatrix::all_ones(3);
        let t = tensor_of(&[i.clone(), j.sub(&i).unwrap()]);
        let good = vec![
            vec![<CycloNumber as num_traits::One>::one(), CycloNumber::from_int(2)],
            vec![<CycloNumber as num_traits::One>::one(), CycloNumber::from_int(-1)],
        ];
        let (report, mults) = validate_exact_p_rows(&t, &good);
        assert!(report.is_verified());
        assert_eq!(mults.unwrap(), vec![1, 2]);

        // 3 is not an eigenvalue of J - I on 3 points
        let bad = vec![
            good[0].clone(),
            vec![<CycloNumber as num_traits::One>::one(), CycloNumber::from_int(3)],
        ];
        let (report, _) = validate_exact_p_rows(&t, &bad);
        assert!(!report.is_verified());
    }

    #[test]
    fn non_commutative_is_rejected() {
        // S_3 regular representation
        let perms: [[usize; 3]; 6] =
            [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0], [1, 0, 2]];
        let compose = |a: &[usize; 3], b: &[usize; 3]| [a[b[0]], a[b[1]], a[b[2]]];
        let index_of = |p: &[usize; 3]| perms.iter().position(|q| q == p).unwrap();
        let classes: Vec<IntMatrix> = perms
            .iter()
            .map(|g| {
                let mut m = IntMatrix::zeros(6, 6);
                for (col, h) in perms.iter().enumerate() {
                    m.set(index_of(&compose(g, h)), col, 1);
                }
                m
            })
            .collect();
        let t = tensor_of(&classes);
        assert!(matches!(
            eigensystem_numeric(&t, 3, DEFAULT_TOL),
            Err(Error::NotCommutative)
        ));
    }

    #[test]
    fn display_compare_modes() {
        let a = vec![
            vec![<CycloNumber as num_traits::One>::one(), CycloNumber::from_int(2)],
            vec![<CycloNumber as num_traits::One>::one(), CycloNumber::from_int(-1)],
        ];
        let swapped = vec![a[1].clone(), a[0].clone()];
        let r = compare_rows_exact("x", &a, &swapped).unwrap();
        assert!(r.checks[0].status == crate::report::CheckStatus::Pass);
        assert_eq!(r.derived_values["x-row-permutation"], serde_json::json!([1, 0]));

        let wrong = vec![a[0].clone(), vec![<CycloNumber as num_traits::One>::one(), CycloNumber::from_int(5)]];
        let r = compare_rows_exact("x", &a, &wrong).unwrap();
        assert_eq!(r.overall(), crate::report::Overall::VerifiedWithDisplayMismatch);

        let short = vec![a[0].clone()];
        assert!(compare_rows_exact("x", &a, &short).is_err());
    }
}
