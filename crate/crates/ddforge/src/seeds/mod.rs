//! Ingredient designs: Hadamard matrices, skew balanced generalized
//! weighing matrices, the generalized Hadamard multiplication table, and
//! symmetric constant-diagonal Latin squares.
//!
//! Every construction is verified exhaustively before it is returned;
//! the literature guarantees existence, the verifier guarantees this
//! realization.

mod bgw;
mod gh;
mod hadamard;
mod latin;

pub use bgw::{skew_bgw, verify_bgw, verify_skew, BGWMatrix, ZERO_SENTINEL};
pub(crate) use hadamard::factor_prime_power;
pub use gh::{gh_mult_table, GHMatrix};
pub use hadamard::{normalize_hadamard, paley_hadamard, sylvester_hadamard, HadamardMatrix};
pub use latin::{latin_const_diag, latin_decompose, LatinSquare, Symbol};
