//! Balanced generalized weighing matrices over cyclic groups, in
//! exponent encoding, and their exhaustive verifiers.

use crate::error::{Error, Result};
use crate::galois::FieldSpec;
use crate::report::VerificationReport;
use serde::{Deserialize, Serialize};

/// Wire encoding of the group-external zero entry.
pub const ZERO_SENTINEL: i64 = -1;

/// BGW(v,k,lambda) over Z_g in exponent encoding; `None` is the zero
/// entry, `Some(e)` the group element U^e.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BGWMatrix {
    pub v: usize,
    pub group_order: u64,
    pub k: u64,
    pub lambda: u64,
    pub entries: Vec<Vec<Option<u64>>>,
}

impl BGWMatrix {
    pub fn entry(&self, i: usize, j: usize) -> Option<u64> {
        self.entries[i][j]
    }

    pub fn transpose(&self) -> BGWMatrix {
        let mut entries = vec![vec![None; self.v]; self.v];
        for i in 0..self.v {
            for j in 0..self.v {
                entries[j][i] = self.entries[i][j];
            }
        }
        BGWMatrix { entries, ..self.clone() }
    }
}

/// The projective-line skew BGW(q+1, q, q-1) over Z_g with zero
/// diagonal: rows and columns indexed by F_q followed by the point at
/// infinity, finite entries dlog(x_j - x_i) mod g.
///
/// Requires g even, g | q-1 and (q-1)/g odd. Balance and skewness are
/// verified exhaustively before the matrix is returned.
pub fn skew_bgw(field: &FieldSpec, g: u64) -> Result<BGWMatrix> {
    let q = field.q();
    if g == 0 || g % 2 != 0 {
        return Err(Error::BadParameter(format!("group order {g} must be even and positive")));
    }
    if (q - 1) % g != 0 {
        return Err(Error::BadParameter(format!("{g} does not divide q-1 = {}", q - 1)));
    }
    if ((q - 1) / g) % 2 == 0 {
        return Err(Error::BadParameter(format!("(q-1)/{g} = {} is even", (q - 1) / g)));
    }
    let v = q as usize + 1;
    let inf = v - 1;
    let mut entries = vec![vec![None; v]; v];
    for i in 0..v {
        for j in 0..v {
            if i == j {
                continue;
            }
            entries[i][j] = if i == inf {
                Some(0)
            } else if j == inf {
                Some(g / 2)
            } else {
                let d = field.sub(&field.element(j), &field.element(i));
                Some(field.dlog(&d)? % g)
            };
        }
    }
    let w = BGWMatrix { v, group_order: g, k: q, lambda: q - 1, entries };
    let report = verify_bgw(&w);
    if !report.is_verified() {
        let detail: Vec<String> = report.failed_checks().map(|c| c.name.clone()).collect();
        return Err(Error::VerificationFailed(format!("skew_bgw balance: {}", detail.join(", "))));
    }
    if !verify_skew(&w)? {
        return Err(Error::VerificationFailed("skew_bgw skewness".into()));
    }
    Ok(w)
}

/// Exhaustive balance check: every row has exactly k nonzero entries,
/// and each pair of distinct rows covers each element of Z_g exactly
/// lambda/g times in its quotient multiset.
pub fn verify_bgw(w: &BGWMatrix) -> VerificationReport {
    let mut report = VerificationReport::new();
    let g = w.group_order as usize;
    if g == 0 || w.lambda % w.group_order != 0 {
        report.fail("lambda-divisibility", format!("|G| = {} does not divide lambda = {}", w.group_order, w.lambda));
        return report;
    }
    let per = w.lambda / w.group_order;

    let mut rows_ok = true;
    for (i, row) in w.entries.iter().enumerate() {
        let nz = row.iter().filter(|e| e.is_some()).count() as u64;
        if nz != w.k {
            report.fail("row-weight", format!("row {i} has {nz} nonzero entries, expected {}", w.k));
            rows_ok = false;
        }
        let cz = (0..w.v).filter(|&r| w.entries[r][i].is_some()).count() as u64;
        if cz != w.k {
            report.fail("col-weight", format!("column {i} has {cz} nonzero entries, expected {}", w.k));
            rows_ok = false;
        }
    }
    if rows_ok {
        report.pass("row-and-column-weight");
    }

    let mut balance_ok = true;
    for i in 0..w.v {
        for h in 0..w.v {
            if i == h {
                continue;
            }
            let mut counts = vec![0u64; g];
            for j in 0..w.v {
                if let (Some(a), Some(b)) = (w.entries[i][j], w.entries[h][j]) {
                    let d = (a + w.group_order - b % w.group_order) % w.group_order;
                    counts[d as usize] += 1;
                }
            }
            if counts.iter().any(|&c| c != per) {
                report.fail(
                    "balance",
                    format!("rows ({i},{h}): quotient counts {counts:?}, expected uniform {per}"),
                );
                balance_ok = false;
            }
        }
    }
    if balance_ok {
        report.pass("pairwise-balance");
    }
    report
}

/// True iff w_{ji} = w_{ij} + g/2 (mod g) for all distinct i,j.
/// Requires even group order and a zero diagonal.
pub fn verify_skew(w: &BGWMatrix) -> Result<bool> {
    if w.group_order % 2 != 0 {
        return Err(Error::OddGroupOrder(w.group_order));
    }
    let half = w.group_order / 2;
    for i in 0..w.v {
        if w.entries[i][i].is_some() {
            return Ok(false);
        }
        for j in 0..w.v {
            if i == j {
                continue;
            }
            match (w.entries[i][j], w.entries[j][i]) {
                (Some(a), Some(b)) => {
                    if b % w.group_order != (a + half) % w.group_order {
                        return Ok(false);
                    }
                }
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}

// JSON wire format: zero entries encoded as -1.
#[derive(Serialize, Deserialize)]
struct Wire {
    v: usize,
    g: u64,
    k: u64,
    lambda: u64,
    entries: Vec<Vec<i64>>,
}

impl Serialize for BGWMatrix {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| e.map(|x| x as i64).unwrap_or(ZERO_SENTINEL))
                    .collect()
            })
            .collect();
        Wire { v: self.v, g: self.group_order, k: self.k, lambda: self.lambda, entries }
            .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for BGWMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = Wire::deserialize(de)?;
        let entries = w
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&e| {
                        if e == ZERO_SENTINEL {
                            Ok(None)
                        } else if e >= 0 && (e as u64) < w.g {
                            Ok(Some(e as u64))
                        } else {
                            Err(D::Error::custom(format!("exponent {e} out of range for Z_{}", w.g)))
                        }
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if entries.len() != w.v || entries.iter().any(|r: &Vec<Option<u64>>| r.len() != w.v) {
            return Err(D::Error::custom("entry grid does not match order v"));
        }
        Ok(BGWMatrix { v: w.v, group_order: w.g, k: w.k, lambda: w.lambda, entries })
    }
}
