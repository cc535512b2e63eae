//! Exact computational group theory for normalizer decompositions of
//! fusion systems.
//!
//! The layers, bottom up: [`cyclo`] (exact cyclotomic arithmetic),
//! [`matgroup`] (finite matrix groups over cyclotomic fields), [`fingroup`]
//! (abstract finite groups), [`fusion`] (fusion and linking data of a
//! finite group at a prime), and [`cases`] (the `U(p)`, `SU(p)` and
//! Aguadé–Zabrodsky verification suites).

pub mod cases;
pub mod cyclo;
pub mod fingroup;
pub mod fusion;
pub mod matgroup;

pub use cases::{
    emit_decomposition, run_suite, Case, CaseConfig, CaseError, Check, Decomposition, Status, VerificationReport,
};
pub use cyclo::{CycError, CycNum};
pub use fingroup::{CayleyTable, Elem, Group, Subgroup, TableError};
pub use fusion::{collapse, DecompositionDiagram, FusionData, FusionError, SdPoset};
pub use matgroup::{CycMatrix, MatError, MatrixGroup, StdMatrix, DEFAULT_CAP};
