//! Hermitian self-dual generalized Reed–Solomon codes over `F_{q^2}`.
//!
//! The crate provides table-based arithmetic in `F_{q^2}`, linear algebra
//! with an enumerating subfield solver, polynomial witnesses, the
//! self-duality criteria and the explicit constructions on the families
//! `S`, `B_l` and `B_{l,m}`.

pub mod constructions;
pub mod error;
pub mod ff;
pub mod grs;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod selfdual;

pub use constructions::{
    construct_theorem1, construct_theorem2, construct_theorem3, family_b, family_blm, family_s,
    named_pool, Construction,
};
pub use error::{Error, Result};
pub use ff::{make_field, Element, Field};
pub use grs::{CodeSpec, CodeSpecJson};
pub use linalg::{Matrix, SolverLimits};
pub use poly::Poly;
pub use report::{ConjectureReport, Pool, ScanReport};
pub use selfdual::{
    criterion_direct, criterion_lemma, existence_scan, find_multipliers, span_condition,
    ScanOptions,
};
