//! End-to-end constructions: each pipeline builds its seed designs,
//! assembles the divisible design digraphs and the attached association
//! scheme, re-verifies every identity from the definitions, and compares
//! the results against the written displays.
//!
//! Structural identities decide success; display comparisons can only
//! downgrade a verified bundle to "verified with display mismatch".

mod s3;
mod s4;
mod s5;

pub use s3::{build_s3, expected_b1_s3, expected_p_s3, expected_q_s3, S3Bundle};
pub use s4::{build_s4, S4Bundle};
pub use s5::{build_s5, S5Bundle};

use crate::matrix::IntMatrix;
use crate::report::VerificationReport;

/// Exact integer square root when `n` is a perfect square.
pub(crate) fn perfect_square_root(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt().round() as u64;
    for c in r.saturating_sub(1)..=r + 1 {
        if c * c == n {
            return Some(c);
        }
    }
    None
}

/// Record an exact matrix identity as a named check with the first
/// differing cell as witness.
pub(crate) fn check_matrix_eq(
    report: &mut VerificationReport,
    name: &str,
    got: &IntMatrix,
    want: &IntMatrix,
) {
    match got.first_diff(want) {
        None => report.pass(name),
        Some((r, c, g, w)) => {
            report.fail(name, format!("cell ({r},{c}): computed {g}, expected {w}"))
        }
    }
}

/// Same identity, recorded as a display comparison: disagreement is a
/// mismatch, not a failure.
pub(crate) fn compare_display_matrix(
    report: &mut VerificationReport,
    name: &str,
    computed: &IntMatrix,
    claimed: &IntMatrix,
) {
    match computed.first_diff(claimed) {
        None => report.pass(name),
        Some((r, c, g, w)) => {
            report.mismatch(name, format!("cell ({r},{c}): computed {g}, display {w}"))
        }
    }
}
