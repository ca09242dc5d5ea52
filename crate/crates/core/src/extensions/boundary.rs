//! Boundary values at `±Λ`, the two boundary-condition families, and the
//! boundary form whose vanishing is the symmetry of the extension.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::alpha::AlphaVector;
use super::rho::{ExtendedReal, RhoPair};

/// `ψ(+Λ), ψ'(+Λ), ψ(-Λ), ψ'(-Λ)` (one-sided limits from each island).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BoundaryData {
    pub psi_plus: Complex64,
    pub dpsi_plus: Complex64,
    pub psi_minus: Complex64,
    pub dpsi_minus: Complex64,
}

impl BoundaryData {
    pub fn new(
        psi_plus: Complex64,
        dpsi_plus: Complex64,
        psi_minus: Complex64,
        dpsi_minus: Complex64,
    ) -> Self {
        Self {
            psi_plus,
            dpsi_plus,
            psi_minus,
            dpsi_minus,
        }
    }

    pub fn real(psi_plus: f64, dpsi_plus: f64, psi_minus: f64, dpsi_minus: f64) -> Self {
        Self::new(
            psi_plus.into(),
            dpsi_plus.into(),
            psi_minus.into(),
            dpsi_minus.into(),
        )
    }

    /// `(ψ(+Λ), ψ'(+Λ))`
    pub fn right(&self) -> [Complex64; 2] {
        [self.psi_plus, self.dpsi_plus]
    }

    /// `(ψ(-Λ), ψ'(-Λ))`
    pub fn left(&self) -> [Complex64; 2] {
        [self.psi_minus, self.dpsi_minus]
    }

    pub fn is_finite(&self) -> bool {
        [self.psi_plus, self.dpsi_plus, self.psi_minus, self.dpsi_minus]
            .iter()
            .all(|z| z.is_finite())
    }
}

/// `(ψ(+Λ), ψ'(+Λ))ᵀ - B_α (ψ(-Λ), ψ'(-Λ))ᵀ`; zero iff `bd` satisfies BC α.
pub fn apply_bc_alpha(alpha: &AlphaVector, bd: &BoundaryData) -> [Complex64; 2] {
    let transferred = alpha.boundary_matrix().apply(bd.left());
    [
        bd.psi_plus - transferred[0],
        bd.dpsi_plus - transferred[1],
    ]
}

/// Residuals `[left, right]` of BC ρ: `ρ₋ψ(-Λ) - ψ'(-Λ)` (or `ψ(-Λ)` for
/// `ρ₋ = ∞`) and `ρ₊ψ(+Λ) - ψ'(+Λ)` (or `ψ(+Λ)` for `ρ₊ = ∞`).
pub fn apply_bc_rho(rho: &RhoPair, bd: &BoundaryData) -> [Complex64; 2] {
    let robin = |r: ExtendedReal, psi: Complex64, dpsi: Complex64| match r {
        ExtendedReal::Finite(r) => psi * r - dpsi,
        ExtendedReal::Infinity => psi,
    };
    [
        robin(rho.rho_minus, bd.psi_minus, bd.dpsi_minus),
        robin(rho.rho_plus, bd.psi_plus, bd.dpsi_plus),
    ]
}

/// `⟨H*ψ|φ⟩ - ⟨ψ|H*φ⟩` expressed through boundary values:
/// `ψ'(+Λ)*φ(+Λ) - ψ(+Λ)*φ'(+Λ) - ψ'(-Λ)*φ(-Λ) + ψ(-Λ)*φ'(-Λ)`.
pub fn boundary_form(psi: &BoundaryData, phi: &BoundaryData) -> Complex64 {
    psi.dpsi_plus.conj() * phi.psi_plus - psi.psi_plus.conj() * phi.dpsi_plus
        - psi.dpsi_minus.conj() * phi.psi_minus
        + psi.psi_minus.conj() * phi.dpsi_minus
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const ZERO2: [Complex64; 2] = [Complex64::new(0.0, 0.0); 2];

    #[test]
    fn bc_alpha_examples() {
        let id = AlphaVector::identity();
        assert_eq!(apply_bc_alpha(&id, &BoundaryData::real(1.0, 2.0, 1.0, 2.0)), ZERO2);
        assert_eq!(
            apply_bc_alpha(&id, &BoundaryData::real(1.0, 2.0, 1.0, 3.0)),
            [c(0.0, 0.0), c(-1.0, 0.0)]
        );

        let a = AlphaVector::new(c(0.0, 1.0), c(0.0, -SQRT_2), c(0.0, 0.0), c(0.0, 1.0));
        let bd = BoundaryData::new(c(0.0, 1.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        assert_eq!(apply_bc_alpha(&a, &bd), ZERO2);
    }

    #[test]
    fn bc_rho_examples() {
        let fin = |x| ExtendedReal::Finite(x);
        let neumann = RhoPair::new(fin(0.0), fin(0.0));
        assert_eq!(apply_bc_rho(&neumann, &BoundaryData::real(1.0, 0.0, 1.0, 0.0)), ZERO2);

        let dirichlet = RhoPair::new(ExtendedReal::Infinity, ExtendedReal::Infinity);
        assert_eq!(apply_bc_rho(&dirichlet, &BoundaryData::real(0.0, 5.0, 0.0, -3.0)), ZERO2);

        let robin = RhoPair::new(fin(1.0), fin(1.0));
        assert_eq!(apply_bc_rho(&robin, &BoundaryData::real(1.0, 1.0, 2.0, 2.0)), ZERO2);

        // residual order is [left, right]
        let r = apply_bc_rho(&RhoPair::new(fin(2.0), ExtendedReal::Infinity), &BoundaryData::real(1.0, 0.0, 3.0, 0.0));
        assert_eq!(r, [c(3.0, 0.0), c(2.0, 0.0)]);
    }

    #[test]
    fn boundary_form_of_zero_data() {
        let z = BoundaryData::default();
        assert_eq!(boundary_form(&z, &z), c(0.0, 0.0));
    }

    #[test]
    fn boundary_form_is_anti_hermitian() {
        let psi = BoundaryData::new(c(1.0, 2.0), c(-0.3, 0.5), c(0.7, -1.1), c(2.0, 0.1));
        let phi = BoundaryData::new(c(0.2, -0.4), c(1.5, 1.0), c(-2.0, 0.3), c(0.0, 0.9));
        let a = boundary_form(&psi, &phi);
        let b = boundary_form(&phi, &psi);
        assert!((a + b.conj()).norm() < 1e-15);
    }
}
