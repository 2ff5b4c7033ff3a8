//! Dense exact integer matrices and the structured generators used by
//! the constructions: I, J, O, the shift U_n, the negashift N_n, and the
//! back diagonal R_n.
//!
//! Entries are i64 with checked arithmetic: every add/mul either returns
//! the exact value or fails with `Error::Overflow`. All quantities in
//! scope are bounded by the vertex count (<= ~2000), so overflow only
//! signals a construction bug, never silent wraparound.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Dense row-major exact integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

/// The named structured matrices of the constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructuredKind {
    Identity,
    AllOnes,
    Zero,
    /// Circulant with first row (0,1,0,...,0).
    Shift,
    /// Same as Shift except the bottom-left entry is -1; order 2n.
    NegaShift,
    /// 1 at (i,j) iff i+j = order+1 (1-based).
    BackDiagonal,
}

pub fn structured(kind: StructuredKind, order: usize) -> IntMatrix {
    assert!(order >= 1, "structured matrices need order >= 1");
    let mut m = IntMatrix::zeros(order, order);
    match kind {
        StructuredKind::Identity => {
            for i in 0..order {
                m.set(i, i, 1);
            }
        }
        StructuredKind::AllOnes => {
            for v in m.data.iter_mut() {
                *v = 1;
            }
        }
        StructuredKind::Zero => {}
        StructuredKind::Shift => {
            for i in 0..order {
                m.set(i, (i + 1) % order, 1);
            }
        }
        StructuredKind::NegaShift => {
            for i in 0..order - 1 {
                m.set(i, i + 1, 1);
            }
            m.set(order - 1, 0, -1);
        }
        StructuredKind::BackDiagonal => {
            for i in 0..order {
                m.set(i, order - 1 - i, 1);
            }
        }
    }
    m
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "data length {} != {rows}x{cols}",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        structured(StructuredKind::Identity, n)
    }

    pub fn all_ones(n: usize) -> Self {
        structured(StructuredKind::AllOnes, n)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn data(&self) -> &[i64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn neg(&self) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|a| a.checked_mul(c).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn transpose(&self) -> Self {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn is_zero_one(&self) -> bool {
        self.data.iter().all(|&v| v == 0 || v == 1)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn diag(&self) -> Vec<i64> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn row_sums(&self) -> Result<Vec<i64>> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .try_fold(0i64, |acc, &v| acc.checked_add(v).ok_or(Error::Overflow))
            })
            .collect()
    }

    pub fn col_sums(&self) -> Result<Vec<i64>> {
        Ok(self.transpose().row_sums()?)
    }

    /// Exact matrix product; a sparse path is taken automatically when
    /// both operands are (0,1)-matrices.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.is_zero_one() && other.is_zero_one() {
            return Ok(self.mul_sparse01(other));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let brow = other.row(k);
                let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow.iter()) {
                    if b != 0 {
                        let t = a.checked_mul(b).ok_or(Error::Overflow)?;
                        *o = o.checked_add(t).ok_or(Error::Overflow)?;
                    }
                }
            }
        }
        Ok(out)
    }

    fn mul_sparse01(&self, other: &Self) -> Self {
        let bcols: Vec<Vec<u32>> = (0..other.rows)
            .map(|r| {
                other
                    .row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(c, _)| c as u32)
                    .collect()
            })
            .collect();
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (k, &v) in self.row(i).iter().enumerate() {
                if v != 0 {
                    for &c in &bcols[k] {
                        orow[c as usize] += 1;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("pow of non-square matrix".into()));
        }
        let mut acc = IntMatrix::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = IntMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for r in 0..other.rows {
                    for c in 0..other.cols {
                        let b = other.get(r, c);
                        if b != 0 {
                            out.set(i * other.rows + r, j * other.cols + c, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Assemble a block matrix from a rectangular grid of blocks.
    /// All blocks in a grid row must share a height, all blocks in a
    /// grid column must share a width.
    pub fn block_assemble(grid: &[Vec<IntMatrix>]) -> Result<Self> {
        if grid.is_empty() || grid[0].is_empty() {
            return Err(Error::DimensionMismatch("empty block grid".into()));
        }
        let ncols = grid[0].len();
        let row_heights: Vec<usize> = grid.iter().map(|r| r[0].rows).collect();
        let col_widths: Vec<usize> = grid[0].iter().map(|b| b.cols).collect();
        for (bi, grow) in grid.iter().enumerate() {
            if grow.len() != ncols {
                return Err(Error::DimensionMismatch("ragged block grid".into()));
            }
            for (bj, b) in grow.iter().enumerate() {
                if b.rows != row_heights[bi] || b.cols != col_widths[bj] {
                    return Err(Error::DimensionMismatch(format!(
                        "block ({bi},{bj}) is {}x{}, expected {}x{}",
                        b.rows, b.cols, row_heights[bi], col_widths[bj]
                    )));
                }
            }
        }
        let total_rows: usize = row_heights.iter().sum();
        let total_cols: usize = col_widths.iter().sum();
        let mut out = IntMatrix::zeros(total_rows, total_cols);
        let mut roff = 0;
        for (bi, grow) in grid.iter().enumerate() {
            let mut coff = 0;
            for b in grow {
                for r in 0..b.rows {
                    for c in 0..b.cols {
                        out.set(roff + r, coff + c, b.get(r, c));
                    }
                }
                coff += b.cols;
            }
            roff += row_heights[bi];
        }
        Ok(out)
    }

    /// Extract the (i,j)-block (1-based labels, to match the written
    /// block displays) of a matrix partitioned into uniform blocks.
    pub fn block(&self, i: usize, j: usize, block_rows: usize, block_cols: usize) -> Result<Self> {
        if i == 0 || j == 0 {
            return Err(Error::BadParameter("block labels are 1-based".into()));
        }
        if i * block_rows > self.rows || j * block_cols > self.cols {
            return Err(Error::DimensionMismatch("block out of range".into()));
        }
        let mut out = IntMatrix::zeros(block_rows, block_cols);
        for r in 0..block_rows {
            for c in 0..block_cols {
                out.set(r, c, self.get((i - 1) * block_rows + r, (j - 1) * block_cols + c));
            }
        }
        Ok(out)
    }

    /// Decompose a {-1,0,1}-matrix into disjoint (0,1)-matrices with
    /// pos - neg = self.
    pub fn sign_split(&self) -> Result<(Self, Self)> {
        let mut pos = IntMatrix::zeros(self.rows, self.cols);
        let mut neg = IntMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                match self.get(r, c) {
                    0 => {}
                    1 => pos.set(r, c, 1),
                    -1 => neg.set(r, c, 1),
                    v => return Err(Error::EntryOutOfRange { row: r, col: c, value: v }),
                }
            }
        }
        Ok((pos, neg))
    }

    /// Entry-wise product (used for disjointness checks).
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a.checked_mul(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// First cell where the two matrices differ, if any.
    pub fn first_diff(&self, other: &Self) -> Option<(usize, usize, i64, i64)> {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) != other.get(r, c) {
                    return Some((r, c, self.get(r, c), other.get(r, c)));
                }
            }
        }
        None
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        if self.rows <= 20 && self.cols <= 20 {
            for r in 0..self.rows {
                writeln!(f, "{:?}", self.row(r))?;
            }
        }
        Ok(())
    }
}

// JSON wire format: {"rows": r, "cols": c, "data": [..]} row-major.
#[derive(Serialize, Deserialize)]
#[serde(rename = "IntMatrix")]
struct Wire {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        Wire { rows: self.rows, cols: self.cols, data: self.data.clone() }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(de)?;
        IntMatrix::new(w.rows, w.cols, w.data).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn structured_generators() {
        let u3 = structured(StructuredKind::Shift, 3);
        assert_eq!(u3.data(), &[0, 1, 0, 0, 0, 1, 1, 0, 0]);
        let n2 = structured(StructuredKind::NegaShift, 2);
        assert_eq!(n2.mul(&n2).unwrap(), IntMatrix::identity(2).neg());
        let r2 = structured(StructuredKind::BackDiagonal, 2);
        assert_eq!(r2.data(), &[0, 1, 1, 0]);
    }

    #[test]
    fn negashift_order() {
        for n in 2..=6 {
            let nn = structured(StructuredKind::NegaShift, n);
            assert_eq!(nn.pow(n as u64).unwrap(), IntMatrix::identity(n).neg());
            assert_eq!(nn.pow(2 * n as u64).unwrap(), IntMatrix::identity(n));
            assert_eq!(nn.transpose().mul(&nn).unwrap(), IntMatrix::identity(n));
        }
    }

    #[test]
    fn back_diagonal_involution_and_rnr() {
        for n in 2..=7 {
            let r = structured(StructuredKind::BackDiagonal, n);
            assert_eq!(r.mul(&r).unwrap(), IntMatrix::identity(n));
            // R N R = N^{-1} for the Kronecker lifts used in the block rule
            let id = IntMatrix::identity(n);
            let nk = structured(StructuredKind::NegaShift, n).kron(&id);
            let rk = r.kron(&id);
            let n_inv = nk.pow(2 * n as u64 - 1).unwrap();
            assert_eq!(rk.mul(&nk).unwrap().mul(&rk).unwrap(), n_inv);
        }
    }

    #[test]
    fn kron_basics() {
        let i2 = IntMatrix::identity(2);
        let j2 = IntMatrix::all_ones(2);
        let k = i2.kron(&j2);
        assert_eq!(
            k.data(),
            &[1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1]
        );
        let u2 = structured(StructuredKind::Shift, 2);
        let swap = u2.kron(&i2);
        assert!(swap.is_zero_one());
        assert_eq!(swap.mul(&swap.transpose()).unwrap(), IntMatrix::identity(4));
    }

    #[test]
    fn permutation_and_allones_products() {
        let u3 = structured(StructuredKind::Shift, 3);
        assert_eq!(u3.mul(&u3.transpose()).unwrap(), IntMatrix::identity(3));
        let j3 = IntMatrix::all_ones(3);
        assert_eq!(j3.mul(&j3).unwrap(), j3.scale(3).unwrap());
        let r5 = structured(StructuredKind::BackDiagonal, 5);
        assert_eq!(r5.mul(&r5).unwrap(), IntMatrix::identity(5));
    }

    #[test]
    fn block_assembly_roundtrip() {
        let o = IntMatrix::zeros(2, 2);
        let i = IntMatrix::identity(2);
        let grid = vec![vec![o.clone(), i.clone()], vec![i.neg(), o.clone()]];
        let m = IntMatrix::block_assemble(&grid).unwrap();
        let n2 = structured(StructuredKind::NegaShift, 2).kron(&IntMatrix::identity(2));
        assert_eq!(m, n2);
        for bi in 1..=2 {
            for bj in 1..=2 {
                assert_eq!(m.block(bi, bj, 2, 2).unwrap(), grid[bi - 1][bj - 1]);
            }
        }
        let ragged = vec![vec![o.clone(), i.clone()], vec![IntMatrix::zeros(3, 2), o]];
        assert!(IntMatrix::block_assemble(&ragged).is_err());
    }

    #[test]
    fn sign_split_cases() {
        let m = IntMatrix::new(2, 2, vec![0, 1, -1, 0]).unwrap();
        let (p, n) = m.sign_split().unwrap();
        assert_eq!(p.data(), &[0, 1, 0, 0]);
        assert_eq!(n.data(), &[0, 0, 1, 0]);
        let z = IntMatrix::zeros(2, 2);
        let (p, n) = z.sign_split().unwrap();
        assert!(p.is_zero() && n.is_zero());
        let bad = IntMatrix::new(1, 1, vec![2]).unwrap();
        assert!(bad.sign_split().is_err());
        assert!(!bad.is_zero_one());
        assert!(IntMatrix::identity(3).is_zero_one());
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(-5i64..=5, n * n)
            .prop_map(move |d| IntMatrix::new(n, n, d).unwrap())
    }

    proptest! {
        // (A x B)(C x D) = AC x BD
        #[test]
        fn kron_mixed_product(a in arb_matrix(3), b in arb_matrix(2),
                              c in arb_matrix(3), d in arb_matrix(2)) {
            let lhs = a.kron(&b).mul(&c.kron(&d)).unwrap();
            let rhs = a.mul(&c).unwrap().kron(&b.mul(&d).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn sign_split_reconstructs(d in proptest::collection::vec(-1i64..=1, 16)) {
            let m = IntMatrix::new(4, 4, d).unwrap();
            let (p, n) = m.sign_split().unwrap();
            prop_assert_eq!(p.sub(&n).unwrap(), m);
            prop_assert!(p.hadamard(&n).unwrap().is_zero());
        }

        // sparse 0/1 path agrees with the dense path
        #[test]
        fn sparse_dense_mul_agree(d1 in proptest::collection::vec(0i64..=1, 25),
                                  d2 in proptest::collection::vec(0i64..=1, 25)) {
            let a = IntMatrix::new(5, 5, d1).unwrap();
            let b = IntMatrix::new(5, 5, d2).unwrap();
            let sparse = a.mul_sparse01(&b);
            // force the dense path with a scale-by-1 detour through -1 entries
            let mut dense = IntMatrix::zeros(5, 5);
            for i in 0..5 {
                for j in 0..5 {
                    let mut acc = 0;
                    for k in 0..5 {
                        acc += a.get(i, k) * b.get(k, j);
                    }
                    dense.set(i, j, acc);
                }
            }
            prop_assert_eq!(sparse, dense);
        }
    }
}
