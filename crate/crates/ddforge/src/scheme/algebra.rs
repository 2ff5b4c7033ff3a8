//! The adjacency algebra in class coordinates.
//!
//! Elements of the algebra are stored as coordinate vectors over the
//! classes; products go through the intersection tensor, so a product of
//! two v x v algebra elements costs (d+1)^3 scalar multiplications
//! instead of v^3. Dense scalar matrices exist only for small-order
//! cross-checks.

use crate::error::{Error, Result};
use crate::exact::{ApproxComplex, CycloNumber, QuadCyclo, Rational};
use crate::matrix::IntMatrix;
use crate::report::VerificationReport;
use crate::scheme::IntersectionTensor;
use num_traits::{One, Zero};

/// Exact scalars the algebra machinery is generic over.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn scale_rat(&self, r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn as_rational(&self) -> Option<Rational>;
    fn embed(&self) -> ApproxComplex;
}

impl Scalar for CycloNumber {
    fn zero() -> Self {
        <CycloNumber as Zero>::zero()
    }
    fn one() -> Self {
        <CycloNumber as One>::one()
    }
    fn from_int(n: i64) -> Self {
        CycloNumber::from_int(n)
    }
    fn add(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }
    fn sub(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }
    fn mul(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn conj(&self) -> Self {
        CycloNumber::conj(self)
    }
    fn scale_rat(&self, r: &Rational) -> Self {
        self.scale(r)
    }
    fn is_zero(&self) -> bool {
        self.is_zero_exact()
    }
    fn as_rational(&self) -> Option<Rational> {
        CycloNumber::as_rational(self)
    }
    fn embed(&self) -> ApproxComplex {
        CycloNumber::embed(self)
    }
}

impl Scalar for QuadCyclo {
    fn zero() -> Self {
        <QuadCyclo as Zero>::zero()
    }
    fn one() -> Self {
        <QuadCyclo as One>::one()
    }
    fn from_int(n: i64) -> Self {
        QuadCyclo::from_int(n)
    }
    fn add(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }
    fn sub(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }
    fn mul(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn conj(&self) -> Self {
        QuadCyclo::conj(self)
    }
    fn scale_rat(&self, r: &Rational) -> Self {
        self.scale(r)
    }
    fn is_zero(&self) -> bool {
        self.is_zero_exact()
    }
    fn as_rational(&self) -> Option<Rational> {
        if !self.radical_part().is_zero_exact() {
            return None;
        }
        self.rational_part().as_rational()
    }
    fn embed(&self) -> ApproxComplex {
        QuadCyclo::embed(self)
    }
}

/// An element sum_k coords[k] * A_k of the adjacency algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<S: Scalar> {
    pub coords: Vec<S>,
}

impl<S: Scalar> AlgebraElement<S> {
    pub fn zero(classes: usize) -> Self {
        AlgebraElement { coords: vec![S::zero(); classes] }
    }

    pub fn identity(classes: usize) -> Self {
        let mut e = Self::zero(classes);
        e.coords[0] = S::one();
        e
    }

    pub fn from_class(i: usize, classes: usize) -> Self {
        let mut e = Self::zero(classes);
        e.coords[i] = S::one();
        e
    }

    pub fn from_coords(coords: Vec<S>) -> Self {
        AlgebraElement { coords }
    }

    pub fn add(&self, other: &Self) -> Self {
        let coords = self
            .coords
            .iter()
            .zip(other.coords.iter())
            .map(|(a, b)| a.add(b))
            .collect();
        AlgebraElement { coords }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let coords = self
            .coords
            .iter()
            .zip(other.coords.iter())
            .map(|(a, b)| a.sub(b))
            .collect();
        AlgebraElement { coords }
    }

    pub fn neg(&self) -> Self {
        AlgebraElement { coords: self.coords.iter().map(S::neg).collect() }
    }

    pub fn scale(&self, c: &S) -> Self {
        AlgebraElement { coords: self.coords.iter().map(|x| x.mul(c)).collect() }
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        AlgebraElement { coords: self.coords.iter().map(|x| x.scale_rat(r)).collect() }
    }

    /// Product through the intersection tensor:
    /// (xy)_k = sum_{i,j} x_i y_j p_{ij}^k.
    pub fn mul(&self, other: &Self, t: &IntersectionTensor) -> Self {
        let n = t.classes();
        let mut coords = vec![S::zero(); n];
        for (i, xi) in self.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in other.coords.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let prod = xi.mul(yj);
                for (k, ck) in coords.iter_mut().enumerate() {
                    let p = t.p(i, j, k);
                    if p != 0 {
                        *ck = ck.add(&prod.scale_rat(&crate::exact::rat_int(p)));
                    }
                }
            }
        }
        AlgebraElement { coords }
    }

    /// Conjugate transpose: coords'_j = conj(coords_{j^T}).
    pub fn conj_transpose(&self, t: &IntersectionTensor) -> Self {
        let n = t.classes();
        let mut coords = vec![S::zero(); n];
        for j in 0..n {
            coords[j] = self.coords[t.transpose_class(j)].conj();
        }
        AlgebraElement { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(S::is_zero)
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    /// trace = v * coords[0], since only A_0 has diagonal support.
    pub fn trace_over_v(&self) -> &S {
        &self.coords[0]
    }

    /// Materialize as a dense scalar matrix (small orders only).
    pub fn to_matrix(&self, classes: &[IntMatrix]) -> ExactMatrix<S> {
        let v = classes[0].rows();
        let mut m = ExactMatrix::zeros(v, v);
        for (ci, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let a = &classes[ci];
            for r in 0..v {
                for col in 0..v {
                    if a.get(r, col) == 1 {
                        m.set(r, col, c.clone());
                    }
                }
            }
        }
        m
    }
}

/// Dense matrix over an exact scalar, for small-order cross-checks.
#[derive(Clone, Debug)]
pub struct ExactMatrix<S: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> ExactMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_int_matrix(m: &IntMatrix) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                out.set(r, c, S::from_int(m.get(r, c)));
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&ExactMatrix {
            rows: other.rows,
            cols: other.cols,
            data: other.data.iter().map(S::neg).collect(),
        })
    }

    pub fn scale(&self, c: &S) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.mul(c)).collect(),
        }
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.scale_rat(r)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let t = a.mul(b);
                        out.set(i, j, out.get(i, j).add(&t));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn conj_transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }

    /// First cell where the two matrices differ, if any.
    pub fn first_diff(&self, other: &Self) -> Option<(usize, usize)> {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) != other.get(r, c) {
                    return Some((r, c));
                }
            }
        }
        None
    }
}

/// Read off class coordinates of a dense matrix that is expected to be
/// constant on class supports; the constancy itself is re-verified.
pub fn extract_coordinates<S: Scalar>(
    classes: &[IntMatrix],
    m: &ExactMatrix<S>,
) -> Result<AlgebraElement<S>> {
    let v = classes[0].rows();
    if m.rows() != v || m.cols() != v {
        return Err(Error::ShapeMismatch(format!("matrix is {}x{}, classes are {v}x{v}", m.rows(), m.cols())));
    }
    let mut coords = vec![S::zero(); classes.len()];
    let mut seen = vec![false; classes.len()];
    for r in 0..v {
        for c in 0..v {
            let ci = classes
                .iter()
                .position(|a| a.get(r, c) == 1)
                .ok_or_else(|| Error::VerificationFailed(format!("cell ({r},{c}) uncovered by classes")))?;
            if !seen[ci] {
                coords[ci] = m.get(r, c).clone();
                seen[ci] = true;
            } else if coords[ci] != *m.get(r, c) {
                return Err(Error::VerificationFailed(format!(
                    "matrix is not constant on class {ci} (cell ({r},{c}))"
                )));
            }
        }
    }
    Ok(AlgebraElement { coords })
}

/// Check that candidate elements are pairwise-orthogonal Hermitian
/// idempotents summing to the identity, exactly in coordinates.
pub fn verify_idempotent_elements<S: Scalar>(
    t: &IntersectionTensor,
    elems: &[AlgebraElement<S>],
    names: &[String],
) -> VerificationReport {
    let mut report = VerificationReport::new();
    let n = t.classes();
    let mut total = AlgebraElement::<S>::zero(n);
    for (i, e) in elems.iter().enumerate() {
        total = total.add(e);
        report.check(
            format!("idempotent[{}]", names[i]),
            e.mul(e, t).equals(e),
            "E^2 != E".to_string(),
        );
        report.check(
            format!("hermitian[{}]", names[i]),
            e.conj_transpose(t).equals(e),
            "E* != E".to_string(),
        );
        for (j, f) in elems.iter().enumerate() {
            if i != j {
                let prod = e.mul(f, t);
                report.check(
                    format!("orthogonal[{},{}]", names[i], names[j]),
                    prod.is_zero(),
                    "E_i E_j != 0".to_string(),
                );
            }
        }
    }
    report.check(
        "sum-to-identity",
        total.equals(&AlgebraElement::identity(n)),
        "sum of candidates != I".to_string(),
    );

    // rank of each idempotent = trace = v * coord_0; must be a
    // non-negative rational integer and the ranks must sum to v
    let v = crate::exact::rat_int(t.v as i64);
    let mut rank_sum = Rational::zero();
    let mut ranks_ok = true;
    for (i, e) in elems.iter().enumerate() {
        match e.trace_over_v().as_rational() {
            Some(c0) => {
                let rank = c0 * &v;
                if !rank.is_integer() || rank < Rational::zero() {
                    report.fail(format!("rank[{}]", names[i]), format!("trace {rank} is not a non-negative integer"));
                    ranks_ok = false;
                } else {
                    report.derived(format!("rank[{}]", names[i]), rank.to_integer().to_string());
                    rank_sum += rank;
                }
            }
            None => {
                report.fail(format!("rank[{}]", names[i]), "trace is irrational".to_string());
                ranks_ok = false;
            }
        }
    }
    if ranks_ok {
        report.check(
            "ranks-sum-to-v",
            rank_sum == v,
            format!("sum of ranks {rank_sum} != v = {}", t.v),
        );
    }
    report
}

/// Matrix-form front end: extract coordinates (verifying membership in
/// the adjacency algebra) and run the coordinate-level idempotent check.
pub fn verify_idempotents<S: Scalar>(
    classes: &[IntMatrix],
    t: &IntersectionTensor,
    candidates: &[(String, ExactMatrix<S>)],
) -> VerificationReport {
    let mut report = VerificationReport::new();
    let mut elems = Vec::new();
    let mut names = Vec::new();
    for (name, m) in candidates {
        match extract_coordinates(classes, m) {
            Ok(e) => {
                report.pass(format!("algebra-membership[{name}]"));
                elems.push(e);
                names.push(name.clone());
            }
            Err(err) => report.fail(format!("algebra-membership[{name}]"), err.to_string()),
        }
    }
    if elems.len() == candidates.len() {
        report.merge("coords", verify_idempotent_elements(t, &elems, &names));
    }
    report
}

/// A family of candidate matrix units E_{i,j}^{(k)}, one square block of
/// elements per Wedderburn block.
pub struct DualBasisFamily<S: Scalar> {
    /// blocks[k][i][j] is E_{i,j}^{(k)}; block k has dimension d_k.
    pub blocks: Vec<Vec<Vec<AlgebraElement<S>>>>,
}

impl<S: Scalar> DualBasisFamily<S> {
    pub fn block_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }
}

/// Verify the matrix-unit relations
/// E_{i,j}^{(k)} E_{i',j'}^{(k')} = delta_{kk'} delta_{ji'} E_{i,j'}^{(k)},
/// the star relation (E_{i,j})* = E_{j,i}, the diagonal sum = I, and
/// sum d_k^2 = d+1.
pub fn dual_basis_check<S: Scalar>(
    t: &IntersectionTensor,
    family: &DualBasisFamily<S>,
) -> VerificationReport {
    let mut report = VerificationReport::new();
    let dims = family.block_dims();
    let sq: usize = dims.iter().map(|d| d * d).sum();
    report.check(
        "dimension-count",
        sq == t.classes(),
        format!("sum of d_k^2 = {sq} != d+1 = {}", t.classes()),
    );
    report.derived("block-dims", &dims);

    for (k, block) in family.blocks.iter().enumerate() {
        let dk = block.len();
        for (i, row) in block.iter().enumerate() {
            if row.len() != dk {
                report.fail("block-shape", format!("block {k} row {i} is ragged"));
                return report;
            }
        }
        for i in 0..dk {
            for j in 0..dk {
                let star = block[i][j].conj_transpose(t);
                report.check(
                    format!("star[{k}:{i}{j}]"),
                    star.equals(&block[j][i]),
                    "E_{i,j}* != E_{j,i}".to_string(),
                );
            }
        }
    }

    for (k, bk) in family.blocks.iter().enumerate() {
        for (k2, bk2) in family.blocks.iter().enumerate() {
            for (i, row) in bk.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    for (i2, row2) in bk2.iter().enumerate() {
                        for (j2, f) in row2.iter().enumerate() {
                            let prod = e.mul(f, t);
                            let want = if k == k2 && j == i2 {
                                bk[i][j2].clone()
                            } else {
                                AlgebraElement::zero(t.classes())
                            };
                            report.check(
                                format!("unit-product[{k}:{i}{j}][{k2}:{i2}{j2}]"),
                                prod.equals(&want),
                                "matrix-unit relation violated".to_string(),
                            );
                        }
                    }
                }
            }
        }
    }

    let mut diag_sum = AlgebraElement::<S>::zero(t.classes());
    for block in &family.blocks {
        for (i, row) in block.iter().enumerate() {
            diag_sum = diag_sum.add(&row[i]);
        }
    }
    report.check(
        "unit-sum",
        diag_sum.equals(&AlgebraElement::identity(t.classes())),
        "sum of diagonal units != I".to_string(),
    );
    report
}
