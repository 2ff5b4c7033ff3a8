//! Association schemes: axioms, intersection numbers, the adjacency
//! algebra in class coordinates, and eigenstructure.

pub mod algebra;
mod eigen;
mod verify;

pub use algebra::{
    dual_basis_check, extract_coordinates, verify_idempotent_elements, verify_idempotents,
    AlgebraElement, DualBasisFamily, ExactMatrix, Scalar,
};
pub use eigen::{
    check_pq_identity, compare_rows_exact, compare_rows_numeric, eigensystem_numeric,
    exact_q_from_p, validate_exact_p_rows, EigenSystem, Exactness, DEFAULT_TOL,
};
pub use verify::{
    center_dimension, is_symmetric_scheme, verify_scheme, AssociationScheme, IntersectionTensor,
    SchemeOutcome,
};
