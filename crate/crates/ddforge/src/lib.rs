//! Exact construction and verification of divisible design digraphs and
//! the association schemes attached to them.

pub mod catalog;
pub mod ddd;
pub mod error;
pub mod exact;
pub mod galois;
pub mod matrix;
pub mod pipelines;
pub mod report;
pub mod scheme;
pub mod seeds;

pub use catalog::{ArtifactKind, Catalog, CatalogEntry, ExactMode, RunConfig};
pub use ddd::{derive_ddd_params, verify_ddd, DDDParams, DivisibleDesignDigraph};
pub use error::{Error, Result};
pub use matrix::IntMatrix;
pub use pipelines::{build_s3, build_s4, build_s5, S3Bundle, S4Bundle, S5Bundle};
pub use report::{Overall, VerificationReport};
