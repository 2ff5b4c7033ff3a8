//! Symmetric Latin squares of even order q+1 with constant diagonal,
//! built by one-point prolongation of the idempotent square
//! (b + b')/2 on F_q, and their permutation-matrix decomposition.

use crate::error::{Error, Result};
use crate::galois::FieldSpec;
use crate::matrix::IntMatrix;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A cell symbol: a field element (by enumeration index) or the
/// reserved diagonal symbol x.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Elem(usize),
    X,
}

impl Symbol {
    pub fn as_string(&self) -> String {
        match self {
            Symbol::Elem(i) => i.to_string(),
            Symbol::X => "x".to_string(),
        }
    }

    pub fn parse(s: &str) -> Result<Symbol> {
        if s == "x" {
            Ok(Symbol::X)
        } else {
            s.parse::<usize>()
                .map(Symbol::Elem)
                .map_err(|_| Error::Parse(format!("bad Latin symbol {s:?}")))
        }
    }
}

/// Symmetric Latin square of order q+1 on F_q plus the symbol x, with
/// constant diagonal x. Rows 0..q-1 are field elements in enumeration
/// order, row q is the prolongation point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatinSquare {
    pub order: usize,
    pub cells: Vec<Vec<Symbol>>,
}

impl LatinSquare {
    pub fn cell(&self, r: usize, c: usize) -> Symbol {
        self.cells[r][c]
    }

    /// Latin property, symmetry, and the constant diagonal, checked
    /// exhaustively.
    pub fn verify(&self) -> Result<()> {
        let v = self.order;
        if self.cells.len() != v || self.cells.iter().any(|r| r.len() != v) {
            return Err(Error::DimensionMismatch("Latin cell grid".into()));
        }
        let symbol_id = |s: Symbol| match s {
            Symbol::Elem(i) => i,
            Symbol::X => v - 1,
        };
        for r in 0..v {
            let mut row_seen = vec![false; v];
            let mut col_seen = vec![false; v];
            for c in 0..v {
                let a = symbol_id(self.cells[r][c]);
                let b = symbol_id(self.cells[c][r]);
                if a >= v || row_seen[a] {
                    return Err(Error::VerificationFailed(format!("row {r} repeats a symbol")));
                }
                if b >= v || col_seen[b] {
                    return Err(Error::VerificationFailed(format!("column {r} repeats a symbol")));
                }
                row_seen[a] = true;
                col_seen[b] = true;
                if self.cells[r][c] != self.cells[c][r] {
                    return Err(Error::VerificationFailed(format!("not symmetric at ({r},{c})")));
                }
            }
            if self.cells[r][r] != Symbol::X {
                return Err(Error::VerificationFailed(format!("diagonal cell {r} is not x")));
            }
        }
        Ok(())
    }
}

/// Prolongation construction: M(b,b') = (b+b')/2 on F_q (symmetric,
/// idempotent since q is odd), diagonal displaced into the new
/// row/column, x on the diagonal.
pub fn latin_const_diag(field: &FieldSpec) -> Result<LatinSquare> {
    let q = field.q() as usize;
    let v = q + 1;
    let two_inv = field.inv(&field.from_int(2))?;
    let mut cells = vec![vec![Symbol::X; v]; v];
    for b in 0..q {
        for b2 in 0..q {
            if b == b2 {
                continue;
            }
            let s = field.mul(&field.add(&field.element(b), &field.element(b2)), &two_inv);
            cells[b][b2] = Symbol::Elem(field.index(&s));
        }
        // displaced diagonal symbol M(b,b) = b
        cells[b][q] = Symbol::Elem(b);
        cells[q][b] = Symbol::Elem(b);
    }
    let square = LatinSquare { order: v, cells };
    square.verify()?;
    Ok(square)
}

/// Write L = sum over symbols a of a * P_a; each P_a is a symmetric
/// permutation matrix and P_x = I.
pub fn latin_decompose(l: &LatinSquare) -> Result<BTreeMap<Symbol, IntMatrix>> {
    l.verify()?;
    let v = l.order;
    let mut out: BTreeMap<Symbol, IntMatrix> = BTreeMap::new();
    for r in 0..v {
        for c in 0..v {
            let m = out
                .entry(l.cells[r][c])
                .or_insert_with(|| IntMatrix::zeros(v, v));
            m.set(r, c, 1);
        }
    }
    Ok(out)
}

// JSON wire format: cells as symbol strings, "x" reserved.
#[derive(Serialize, Deserialize)]
struct Wire {
    order: usize,
    cells: Vec<Vec<String>>,
}

impl Serialize for LatinSquare {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let cells = self
            .cells
            .iter()
            .map(|row| row.iter().map(Symbol::as_string).collect())
            .collect();
        Wire { order: self.order, cells }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for LatinSquare {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = Wire::deserialize(de)?;
        let cells = w
            .cells
            .iter()
            .map(|row| row.iter().map(|s| Symbol::parse(s)).collect())
            .collect::<Result<Vec<Vec<Symbol>>>>()
            .map_err(D::Error::custom)?;
        Ok(LatinSquare { order: w.order, cells })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::build_field;

    #[test]
    fn q3_square() {
        let f = build_field(3, 1).unwrap();
        let l = latin_const_diag(&f).unwrap();
        assert_eq!(l.order, 4);
        for r in 0..4 {
            assert_eq!(l.cell(r, r), Symbol::X);
        }
        // (0+1)/2 = 1 * inv(2) = 1 * 2 = 2 in F_3
        assert_eq!(l.cell(0, 1), Symbol::Elem(2));
        l.verify().unwrap();
    }

    #[test]
    fn q5_symmetry() {
        let f = build_field(5, 1).unwrap();
        let l = latin_const_diag(&f).unwrap();
        for r in 0..l.order {
            for c in 0..l.order {
                assert_eq!(l.cell(r, c), l.cell(c, r));
            }
        }
    }

    #[test]
    fn decomposition_properties() {
        let f = build_field(5, 1).unwrap();
        let l = latin_const_diag(&f).unwrap();
        let parts = latin_decompose(&l).unwrap();
        let v = l.order;
        assert_eq!(parts[&Symbol::X], IntMatrix::identity(v));
        let mut sum_fq = IntMatrix::zeros(v, v);
        for (sym, p) in &parts {
            assert!(p.is_symmetric());
            assert_eq!(p.mul(&p.transpose()).unwrap(), IntMatrix::identity(v));
            assert_eq!(p.mul(p).unwrap(), IntMatrix::identity(v), "P_a^2 = I");
            if *sym != Symbol::X {
                sum_fq = sum_fq.add(p).unwrap();
            }
        }
        let expected = IntMatrix::all_ones(v).sub(&IntMatrix::identity(v)).unwrap();
        assert_eq!(sum_fq, expected);
    }

    #[test]
    fn pairwise_permutation_sum() {
        // sum over a != b of P_a P_b = (q-1)(J - I), q in {3,5,9}
        for (p, m) in [(3u64, 1u32), (5, 1), (3, 2)] {
            let f = build_field(p, m).unwrap();
            let q = f.q() as i64;
            let l = latin_const_diag(&f).unwrap();
            let parts = latin_decompose(&l).unwrap();
            let v = l.order;
            let mut total = IntMatrix::zeros(v, v);
            for (sa, pa) in &parts {
                for (sb, pb) in &parts {
                    if sa == sb || *sa == Symbol::X || *sb == Symbol::X {
                        continue;
                    }
                    total = total.add(&pa.mul(pb).unwrap()).unwrap();
                }
            }
            let expected = IntMatrix::all_ones(v)
                .sub(&IntMatrix::identity(v))
                .unwrap()
                .scale(q - 1)
                .unwrap();
            assert_eq!(total, expected);
        }
    }

    #[test]
    fn json_roundtrip() {
        let f = build_field(3, 1).unwrap();
        let l = latin_const_diag(&f).unwrap();
        let json = serde_json::to_string(&l).unwrap();
        assert!(json.contains("\"x\""));
        let back: LatinSquare = serde_json::from_str(&json).unwrap();
        assert_eq!(l, back);
    }
}
