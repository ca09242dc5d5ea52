//! Self-adjoint extensions of the one-dimensional Schrödinger operator
//! `H = -d²/dx²` on the line with the junction `[-Λ, +Λ]` removed.
//!
//! Every self-adjoint extension is labelled by a 2×2 unitary matrix `U`
//! acting between the deficiency subspaces. Diagonal `U` give decoupled
//! Robin/Dirichlet conditions on each island ([`RhoPair`]); non-diagonal `U`
//! give a transfer condition `(ψ, ψ')(+Λ) = B_α (ψ, ψ')(-Λ)` with `α` in
//! class α ([`AlphaVector`]). This crate converts between the three
//! descriptions, provides an independent deficiency-subspace oracle for the
//! conversions, and solves the stationary scattering and bound-state
//! problems for any extension.
//!
//! Units: `ħ = 2m = 1`, so `E = k²`.

pub mod angle;
pub mod deficiency;
pub mod error;
pub mod extensions;
pub mod matrix;
pub mod sampling;
pub mod scattering;
pub mod verify;

pub use error::{Error, Result};
pub use extensions::{
    alpha_to_u, apply_bc_alpha, apply_bc_rho, boundary_form, classify, decompose_u2,
    extract_phase, rho_to_u, u_to_alpha, u_to_rho, validate_class_alpha, AlphaMap, AlphaVector,
    BoundaryData, Classification, ExtendedReal, JunctionGeometry, PhaseForm,
    QuaternionDecomposition, RhoPair, ValidationReport,
};
pub use matrix::{C2Matrix, UnitaryU2};
pub use deficiency::Island;
pub use scattering::{BoundState, Extension, ScatteringResult, Side, Support};

pub use num_complex::Complex64;
