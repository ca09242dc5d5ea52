//! The extension catalog: U(2) labels, the decoupled (ρ) and transfer (α)
//! boundary-condition families, and the maps between them.

mod alpha;
mod boundary;
mod decompose;
mod geometry;
mod rho;

pub use alpha::{
    alpha_to_u, extract_phase, u_to_alpha, validate_class_alpha, AlphaMap, AlphaVector, PhaseForm,
    ValidationReport, CONDITIONING_THRESHOLD, DEFAULT_CLASS_ALPHA_TOL,
};
pub use boundary::{apply_bc_alpha, apply_bc_rho, boundary_form, BoundaryData};
pub use decompose::{
    classify, decompose_u2, Classification, QuaternionDecomposition, DEFAULT_DIAGONAL_TOL,
};
pub use geometry::JunctionGeometry;
pub use rho::{rho_to_u, u_to_rho, ExtendedReal, RhoPair, DIRICHLET_MATCH_TOL};
