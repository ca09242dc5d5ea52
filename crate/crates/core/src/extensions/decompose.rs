//! `U(2) = U(1)·SH`: every unitary factors as a unimodular phase times a
//! unit quaternion `[[γ₁, -γ₂*], [γ₂, γ₁*]]`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angle;
use crate::matrix::{C2Matrix, UnitaryU2};

/// Absolute threshold on `|u₁₂|, |u₂₁|` below which `U` counts as diagonal.
pub const DEFAULT_DIAGONAL_TOL: f64 = 1e-12;

/// `U = γ₃ [[γ₁, -γ₂*], [γ₂, γ₁*]]` with `|γ₁|² + |γ₂|² = |γ₃| = 1`.
///
/// The triple is fixed only up to the overall sign `(γ₁, γ₂, γ₃) ↦
/// (-γ₁, -γ₂, -γ₃)`; compare decompositions through [`Self::reconstruct`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuaternionDecomposition {
    pub gamma1: Complex64,
    pub gamma2: Complex64,
    pub gamma3: Complex64,
}

impl QuaternionDecomposition {
    pub fn new(gamma1: Complex64, gamma2: Complex64, gamma3: Complex64) -> Self {
        Self {
            gamma1,
            gamma2,
            gamma3,
        }
    }

    /// The unit-determinant quaternion factor.
    pub fn sh_factor(&self) -> C2Matrix {
        C2Matrix::new(
            self.gamma1,
            -self.gamma2.conj(),
            self.gamma2,
            self.gamma1.conj(),
        )
    }

    pub fn reconstruct(&self) -> C2Matrix {
        self.sh_factor().scale(self.gamma3)
    }

    /// Reconstructed matrix as a [`UnitaryU2`]; exact when the norm
    /// conditions hold.
    pub fn unitary(&self) -> UnitaryU2 {
        UnitaryU2::new_unchecked(self.reconstruct())
    }

    /// `max(| |γ₁|²+|γ₂|² - 1 |, | |γ₃| - 1 |)`.
    pub fn norm_residual(&self) -> f64 {
        let sh = (self.gamma1.norm_sqr() + self.gamma2.norm_sqr() - 1.0).abs();
        let phase = (self.gamma3.norm() - 1.0).abs();
        sh.max(phase)
    }

    /// True when the decomposed `U` has no off-diagonal part.
    pub fn is_diagonal(&self) -> bool {
        self.gamma2 == Complex64::new(0.0, 0.0)
    }
}

/// Factor a unitary as `γ₃ · SH`.
///
/// The phase `γ₃` is a square root of `det U`. Of the two roots, the one
/// nearest `e^{i(θ₁₂+θ₂₁+π)/2}` is taken when `u₂₁ ≠ 0`, and the one nearest
/// `e^{i(θ₁₁+θ₂₂)/2}` when `u₂₁ = 0` (all `θ` are arguments in `[0, 2π)`).
/// Then `γ₁ = γ₃* u₁₁` and `γ₂ = γ₃* u₂₁`.
pub fn decompose_u2(u: &UnitaryU2) -> QuaternionDecomposition {
    let m = u.matrix();
    let zero = Complex64::new(0.0, 0.0);

    let branch_hint = if m.m21 != zero {
        Complex64::cis((angle::arg(m.m12) + angle::arg(m.m21) + PI) / 2.0)
    } else {
        Complex64::cis((angle::arg(m.m11) + angle::arg(m.m22)) / 2.0)
    };

    // Rooting det U keeps the reconstruction exact even when u₂₁ is tiny
    // and its argument is numerically meaningless.
    let root = m.det().sqrt();
    let root = root / root.norm();
    let gamma3 = if (root * branch_hint.conj()).re >= 0.0 {
        root
    } else {
        -root
    };

    QuaternionDecomposition {
        gamma1: gamma3.conj() * m.m11,
        gamma2: gamma3.conj() * m.m21,
        gamma3,
    }
}

/// Diagonal extensions decouple the islands; non-diagonal ones link them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Classification {
    Diagonal {
        gamma_l: Complex64,
        gamma_r: Complex64,
    },
    NonDiagonal(QuaternionDecomposition),
}

/// Diagonal iff `|u₁₂| ≤ tol` and `|u₂₁| ≤ tol`.
pub fn classify(u: &UnitaryU2, tol: f64) -> Classification {
    let m = u.matrix();
    if m.m12.norm() <= tol && m.m21.norm() <= tol {
        Classification::Diagonal {
            gamma_l: m.m11,
            gamma_r: m.m22,
        }
    } else {
        Classification::NonDiagonal(decompose_u2(u))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unitary(m: C2Matrix) -> UnitaryU2 {
        UnitaryU2::new(m, 1e-12).unwrap()
    }

    fn assert_close(a: Complex64, b: Complex64, tol: f64) {
        assert!((a - b).norm() <= tol, "{a} vs {b}");
    }

    #[test]
    fn identity_takes_the_diagonal_branch() {
        let d = decompose_u2(&UnitaryU2::identity());
        assert_close(d.gamma1, c(1.0, 0.0), 1e-15);
        assert_eq!(d.gamma2, c(0.0, 0.0));
        assert_close(d.gamma3, c(1.0, 0.0), 1e-15);
    }

    #[test]
    fn swap_matrix() {
        let u = unitary(C2Matrix::real(0.0, 1.0, 1.0, 0.0));
        let d = decompose_u2(&u);
        assert_close(d.gamma1, c(0.0, 0.0), 1e-15);
        assert_close(d.gamma2, c(0.0, -1.0), 1e-15);
        assert_close(d.gamma3, c(0.0, 1.0), 1e-15);
        // i·[[0, -i], [-i, 0]] = [[0, 1], [1, 0]]
        assert!(d.reconstruct().max_abs_diff(u.matrix()) < 1e-15);
    }

    #[test]
    fn diagonal_phases() {
        for &(a, b) in &[(0.3, 1.9), (5.0, 0.2), (3.0, 3.0), (6.2, 6.1)] {
            let u = unitary(C2Matrix::diag(Complex64::cis(a), Complex64::cis(b)));
            let d = decompose_u2(&u);
            assert_eq!(d.gamma2, c(0.0, 0.0));
            assert_close(d.gamma3, Complex64::cis((a + b) / 2.0), 1e-14);
            assert_close(d.gamma1, Complex64::cis((a - b) / 2.0), 1e-14);
        }
    }

    #[test]
    fn tiny_off_diagonal_still_reconstructs() {
        let eps = 1e-9;
        let g1 = c((1.0_f64 - eps * eps).sqrt(), 0.0);
        let d0 = QuaternionDecomposition::new(g1, Complex64::from_polar(eps, 2.0), Complex64::cis(0.7));
        let u = unitary(d0.reconstruct());
        let d = decompose_u2(&u);
        assert!(d.reconstruct().max_abs_diff(u.matrix()) < 1e-15);
        assert_abs_diff_eq!(d.norm_residual(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn classify_examples() {
        let u = unitary(C2Matrix::diag(c(0.0, 1.0), c(-1.0, 0.0)));
        assert_eq!(
            classify(&u, DEFAULT_DIAGONAL_TOL),
            Classification::Diagonal {
                gamma_l: c(0.0, 1.0),
                gamma_r: c(-1.0, 0.0)
            }
        );

        let swap = unitary(C2Matrix::real(0.0, 1.0, 1.0, 0.0));
        match classify(&swap, DEFAULT_DIAGONAL_TOL) {
            Classification::NonDiagonal(d) => assert!(d.gamma2.norm() > 0.5),
            other => panic!("expected non-diagonal, got {other:?}"),
        }

        let eps = 1e-15;
        let near = UnitaryU2::new(
            C2Matrix::new(c(1.0, 0.0), c(eps, 0.0), c(-eps, 0.0), c(1.0, 0.0)),
            1e-12,
        )
        .unwrap();
        assert!(matches!(
            classify(&near, 1e-12),
            Classification::Diagonal { .. }
        ));
    }
}
