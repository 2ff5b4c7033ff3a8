//! Association-scheme axioms and exact intersection numbers.
//!
//! Axiom (iv) is checked by constancy-on-supports: for every product
//! A_i A_j, each cell of the product must carry the value assigned to
//! its cell's relation. The class supports partition all cells, so the
//! check is necessary and sufficient, exact, and witness-producing.

use crate::error::{Error, Result};
use crate::exact::{rat_int, Rational};
use crate::matrix::IntMatrix;
use crate::report::VerificationReport;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// Ordered relation matrices A_0, ..., A_d with display labels.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AssociationScheme {
    pub v: usize,
    pub classes: Vec<IntMatrix>,
    pub labels: Vec<String>,
}

impl AssociationScheme {
    pub fn new(classes: Vec<IntMatrix>, labels: Vec<String>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::BadParameter("scheme needs at least one class".into()));
        }
        if labels.len() != classes.len() {
            return Err(Error::DimensionMismatch("one label per class".into()));
        }
        let v = classes[0].rows();
        Ok(AssociationScheme { v, classes, labels })
    }

    pub fn d(&self) -> usize {
        self.classes.len() - 1
    }
}

/// All p_{ij}^k of a verified scheme, plus valences and the transpose
/// pairing i -> i' with A_i^T = A_{i'}.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IntersectionTensor {
    pub v: usize,
    classes: usize,
    p: Vec<i64>,
    valences: Vec<i64>,
    transpose: Vec<usize>,
}

impl IntersectionTensor {
    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn d(&self) -> usize {
        self.classes - 1
    }

    #[inline]
    pub fn p(&self, i: usize, j: usize, k: usize) -> i64 {
        self.p[(i * self.classes + j) * self.classes + k]
    }

    pub fn valence(&self, i: usize) -> i64 {
        self.valences[i]
    }

    pub fn valences(&self) -> &[i64] {
        &self.valences
    }

    pub fn transpose_class(&self, i: usize) -> usize {
        self.transpose[i]
    }

    /// B_i with B_i[j][k] = p_{ij}^k.
    pub fn intersection_matrix(&self, i: usize) -> IntMatrix {
        let n = self.classes;
        let mut out = IntMatrix::zeros(n, n);
        for j in 0..n {
            for k in 0..n {
                out.set(j, k, self.p(i, j, k));
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.classes;
        for i in 0..n {
            for j in 0..i {
                for k in 0..n {
                    if self.p(i, j, k) != self.p(j, i, k) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// An explicit witness (i, j, k) with p_{ij}^k != p_{ji}^k, if any.
    pub fn non_commutative_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.classes;
        for i in 0..n {
            for j in 0..i {
                for k in 0..n {
                    if self.p(i, j, k) != self.p(j, i, k) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
}

pub fn is_symmetric_scheme(classes: &[IntMatrix]) -> bool {
    classes.iter().all(|a| a.is_symmetric())
}

/// Outcome of verification: the report always, the tensor only when the
/// axioms held.
#[derive(Debug)]
pub struct SchemeOutcome {
    pub tensor: Option<IntersectionTensor>,
    pub report: VerificationReport,
}

/// Verify axioms (i)-(iv) and extract the intersection numbers.
/// Structural violations are recorded in the report; only malformed
/// input (shape or non-0/1 entries) is an error.
pub fn verify_scheme(classes: &[IntMatrix]) -> Result<SchemeOutcome> {
    if classes.is_empty() {
        return Err(Error::BadParameter("scheme needs at least one class".into()));
    }
    let v = classes[0].rows();
    for (i, a) in classes.iter().enumerate() {
        if !a.is_square() || a.rows() != v {
            return Err(Error::DimensionMismatch(format!(
                "class {i} is {}x{}, expected {v}x{v}",
                a.rows(),
                a.cols()
            )));
        }
        if !a.is_zero_one() {
            let (r, c) = (0..v)
                .flat_map(|r| (0..v).map(move |c| (r, c)))
                .find(|&(r, c)| a.get(r, c) != 0 && a.get(r, c) != 1)
                .expect("witness exists");
            return Err(Error::NotZeroOne { row: r, col: c, value: a.get(r, c) });
        }
    }
    let d1 = classes.len();
    let mut report = VerificationReport::new();

    // (i) A_0 = I
    report.check(
        "identity-class",
        classes[0] == IntMatrix::identity(v),
        "A_0 is not the identity".to_string(),
    );

    // (ii) the supports partition all cells
    let mut class_of = vec![usize::MAX; v * v];
    let mut partition_ok = true;
    'outer: for (ci, a) in classes.iter().enumerate() {
        for r in 0..v {
            for c in 0..v {
                if a.get(r, c) == 1 {
                    if class_of[r * v + c] != usize::MAX {
                        report.fail(
                            "partition",
                            format!("cell ({r},{c}) lies in classes {} and {ci}", class_of[r * v + c]),
                        );
                        partition_ok = false;
                        break 'outer;
                    }
                    class_of[r * v + c] = ci;
                }
            }
        }
    }
    if partition_ok {
        if let Some(pos) = class_of.iter().position(|&c| c == usize::MAX) {
            report.fail("partition", format!("cell ({},{}) is uncovered", pos / v, pos % v));
            partition_ok = false;
        }
    }
    if partition_ok {
        report.pass("partition");
    } else {
        return Ok(SchemeOutcome { tensor: None, report });
    }

    // (iii) transpose closure, read off the class-id map
    let mut transpose = vec![usize::MAX; d1];
    let mut closure_ok = true;
    for r in 0..v {
        for c in 0..v {
            let i = class_of[r * v + c];
            let it = class_of[c * v + r];
            if transpose[i] == usize::MAX {
                transpose[i] = it;
            } else if transpose[i] != it {
                report.fail(
                    "transpose-closure",
                    format!("class {i} transposes into both {} and {it}", transpose[i]),
                );
                closure_ok = false;
            }
        }
    }
    if closure_ok {
        report.pass("transpose-closure");
    } else {
        return Ok(SchemeOutcome { tensor: None, report });
    }

    // valences (row-sum constancy per class)
    let mut valences = vec![0i64; d1];
    for (ci, a) in classes.iter().enumerate() {
        let sums = a.row_sums()?;
        let k = sums[0];
        if let Some(r) = sums.iter().position(|&s| s != k) {
            report.fail("class-regularity", format!("class {ci} row {r} has a different sum"));
            return Ok(SchemeOutcome { tensor: None, report });
        }
        valences[ci] = k;
    }
    report.pass("class-regularity");

    // (iv) constancy on supports, sparse accumulation per product
    let sparse_rows: Vec<Vec<Vec<u32>>> = classes
        .iter()
        .map(|a| {
            (0..v)
                .map(|r| {
                    a.row(r)
                        .iter()
                        .enumerate()
                        .filter(|(_, &x)| x == 1)
                        .map(|(c, _)| c as u32)
                        .collect()
                })
                .collect()
        })
        .collect();

    let mut p = vec![-1i64; d1 * d1 * d1];
    let mut acc = vec![0i64; v];
    for i in 0..d1 {
        for j in 0..d1 {
            for r in 0..v {
                for s in &sparse_rows[i][r] {
                    for c in &sparse_rows[j][*s as usize] {
                        acc[*c as usize] += 1;
                    }
                }
                for c in 0..v {
                    let k = class_of[r * v + c];
                    let slot = &mut p[(i * d1 + j) * d1 + k];
                    if *slot == -1 {
                        *slot = acc[c];
                    } else if *slot != acc[c] {
                        report.fail(
                            "linear-combination",
                            format!(
                                "A_{i} A_{j} takes values {} and {} on class {k} (cell ({r},{c}))",
                                *slot, acc[c]
                            ),
                        );
                        return Ok(SchemeOutcome { tensor: None, report });
                    }
                }
                for s in &sparse_rows[i][r] {
                    for c in &sparse_rows[j][*s as usize] {
                        acc[*c as usize] = 0;
                    }
                }
            }
        }
    }
    report.pass("linear-combination");
    // a class with empty support never received a value; its numbers are 0
    for slot in p.iter_mut() {
        if *slot == -1 {
            *slot = 0;
        }
    }

    let tensor = IntersectionTensor { v, classes: d1, p, valences, transpose };

    // standard redundant identities
    let mut sane = true;
    for i in 0..d1 {
        for j in 0..d1 {
            let p0 = tensor.p(i, j, 0);
            let want = if tensor.transpose_class(i) == j { tensor.valence(i) } else { 0 };
            if p0 != want {
                report.fail("p-ij-0", format!("p_({i},{j})^0 = {p0}, expected {want}"));
                sane = false;
            }
            let total: i64 = (0..d1).map(|k| tensor.p(i, j, k) * tensor.valence(k)).sum();
            if total != tensor.valence(i) * tensor.valence(j) {
                report.fail(
                    "valence-product",
                    format!("A_{i} A_{j} row sum {total} != k_i k_j"),
                );
                sane = false;
            }
        }
    }
    if sane {
        report.pass("tensor-identities");
    }
    Ok(SchemeOutcome { tensor: Some(tensor), report })
}

/// Dimension over Q of the algebra center, via the exact rational
/// nullspace of the commutation constraints in class coordinates.
pub fn center_dimension(t: &IntersectionTensor) -> usize {
    let n = t.classes();
    // rows indexed by (i,k), columns by j, entry p_{ji}^k - p_{ij}^k
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n * n);
    for i in 0..n {
        for k in 0..n {
            let row: Vec<Rational> =
                (0..n).map(|j| rat_int(t.p(j, i, k) - t.p(i, j, k))).collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    n - rational_rank(&mut rows)
}

/// Row rank by exact Gaussian elimination; consumes the rows.
fn rational_rank(rows: &mut [Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].recip();
        for x in rows[rank].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..cols {
                    let t = &rows[rank][c] * &f;
                    rows[r][c] -= t;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{structured, StructuredKind};

    fn shift_scheme(n: usize) -> Vec<IntMatrix> {
        let u = structured(StructuredKind::Shift, n);
        (0..n as u64).map(|e| u.pow(e).unwrap()).collect()
    }

    #[test]
    fn one_pair_relation() {
        let classes = vec![
            IntMatrix::identity(2),
            IntMatrix::all_ones(2).sub(&IntMatrix::identity(2)).unwrap(),
        ];
        let out = verify_scheme(&classes).unwrap();
        assert!(out.report.is_verified());
        let t = out.tensor.unwrap();
        assert_eq!(t.p(1, 1, 0), 1);
        assert_eq!(t.p(1, 1, 1), 0);
        assert!(t.is_commutative());
        assert!(is_symmetric_scheme(&classes));
        assert_eq!(center_dimension(&t), 2);
    }

    #[test]
    fn cyclic_group_scheme() {
        let classes = shift_scheme(4);
        let out = verify_scheme(&classes).unwrap();
        assert!(out.report.is_verified());
        let t = out.tensor.unwrap();
        // thin scheme of Z_4: p_{ij}^k = [i + j = k mod 4]
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let want = i64::from((i + j) % 4 == k);
                    assert_eq!(t.p(i, j, k), want);
                }
            }
        }
        assert!(t.is_commutative());
        assert!(t.non_commutative_witness().is_none());
        assert!(!is_symmetric_scheme(&classes));
        assert_eq!(t.transpose_class(1), 3);
        assert_eq!(center_dimension(&t), 4);
        assert_eq!(t.intersection_matrix(0), IntMatrix::identity(4));
    }

    #[test]
    fn s3_regular_representation_center() {
        // thin non-commutative scheme from S_3; center dimension = number
        // of conjugacy classes = 3
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [0, 2, 1],
            [2, 1, 0],
            [1, 0, 2],
        ];
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
        let out = verify_scheme(&classes).unwrap();
        assert!(out.report.is_verified(), "{:?}", out.report.checks);
        let t = out.tensor.unwrap();
        assert!(!t.is_commutative());
        let (i, j, k) = t.non_commutative_witness().unwrap();
        assert_ne!(t.p(i, j, k), t.p(j, i, k));
        assert_eq!(center_dimension(&t), 3);
    }

    #[test]
    fn axiom_failures_are_reported() {
        // missing identity class
        let j = IntMatrix::all_ones(3);
        let out = verify_scheme(&[j.clone()]).unwrap();
        assert!(out.report.failed_checks().any(|c| c.name == "identity-class"));

        // overlap breaks the partition
        let out = verify_scheme(&[IntMatrix::identity(3), j]).unwrap();
        assert!(out.report.failed_checks().any(|c| c.name == "partition"));
        assert!(out.tensor.is_none());

        // a path relation is not constant on supports
        let path = IntMatrix::new(3, 3, vec![0, 1, 0, 1, 0, 1, 0, 1, 0]).unwrap();
        let rest = IntMatrix::all_ones(3)
            .sub(&IntMatrix::identity(3))
            .unwrap()
            .sub(&path)
            .unwrap();
        let out = verify_scheme(&[IntMatrix::identity(3), path, rest]).unwrap();
        assert!(!out.report.is_verified());
    }

    #[test]
    fn mutation_fails_verification() {
        let mut classes = shift_scheme(5);
        classes[2].set(0, 0, 1);
        let out = verify_scheme(&classes).unwrap();
        assert!(!out.report.is_verified());
    }

    #[test]
    fn malformed_input_is_an_error() {
        assert!(verify_scheme(&[]).is_err());
        let bad = IntMatrix::new(2, 2, vec![0, 2, 0, 0]).unwrap();
        assert!(matches!(
            verify_scheme(&[IntMatrix::identity(2), bad]),
            Err(Error::NotZeroOne { .. })
        ));
        let tall = IntMatrix::zeros(3, 2);
        assert!(verify_scheme(&[tall]).is_err());
    }

    #[test]
    fn naive_triple_counting_oracle() {
        // p_{ij}^k = #{z : (x,z) in R_i, (z,y) in R_j} for any (x,y) in R_k
        for classes in [shift_scheme(6), {
            let i = IntMatrix::identity(4);
            let j = IntMatrix::all_ones(4);
            vec![i.clone(), j.sub(&i).unwrap()]
        }] {
            let v = classes[0].rows();
            let out = verify_scheme(&classes).unwrap();
            let t = out.tensor.unwrap();
            let class_of = |r: usize, c: usize| {
                classes.iter().position(|a| a.get(r, c) == 1).unwrap()
            };
            for x in 0..v {
                for y in 0..v {
                    let k = class_of(x, y);
                    for i in 0..classes.len() {
                        for j in 0..classes.len() {
                            let count = (0..v)
                                .filter(|&z| classes[i].get(x, z) == 1 && classes[j].get(z, y) == 1)
                                .count() as i64;
                            assert_eq!(count, t.p(i, j, k));
                        }
                    }
                }
            }
        }
    }
}
