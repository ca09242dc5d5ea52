//! Transfer-type boundary conditions `(ψ, ψ')(+Λ) = B_α (ψ, ψ')(-Λ)` and
//! their non-diagonal `U` labels.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::decompose::QuaternionDecomposition;
use super::geometry::JunctionGeometry;
use crate::angle;
use crate::error::{Error, Result};
use crate::matrix::{C2Matrix, UnitaryU2};

/// Below this `|γ₂|` the α map is flagged as ill-conditioned (`α ∝ 1/γ₂`).
pub const CONDITIONING_THRESHOLD: f64 = 1e-6;

/// Class-α tolerance used by [`alpha_to_u`], relative to `max(1, max|α_j|²)`.
pub const DEFAULT_CLASS_ALPHA_TOL: f64 = 1e-9;

/// `(α₁, α₂, α₃, α₄)`, the entries of `B_α = [[α₁, α₂], [α₃, α₄]]`.
/// `α₂` carries units of length and `α₃` of inverse length.
/// Serializes as `[α₁, α₂, α₃, α₄]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[Complex64; 4]", into = "[Complex64; 4]")]
pub struct AlphaVector {
    pub alpha1: Complex64,
    pub alpha2: Complex64,
    pub alpha3: Complex64,
    pub alpha4: Complex64,
}

impl From<[Complex64; 4]> for AlphaVector {
    fn from(a: [Complex64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }
}

impl From<AlphaVector> for [Complex64; 4] {
    fn from(a: AlphaVector) -> Self {
        a.components()
    }
}

impl AlphaVector {
    pub fn new(alpha1: Complex64, alpha2: Complex64, alpha3: Complex64, alpha4: Complex64) -> Self {
        Self {
            alpha1,
            alpha2,
            alpha3,
            alpha4,
        }
    }

    pub fn real(a1: f64, a2: f64, a3: f64, a4: f64) -> Self {
        Self::new(a1.into(), a2.into(), a3.into(), a4.into())
    }

    /// Free line: `B_α = I`.
    pub fn identity() -> Self {
        Self::real(1.0, 0.0, 0.0, 1.0)
    }

    /// Point interaction `V = -c δ(x)` at `Λ = 0` (attractive for `c > 0`).
    pub fn delta(c: f64) -> Self {
        Self::real(1.0, 0.0, -c, 1.0)
    }

    pub fn components(&self) -> [Complex64; 4] {
        [self.alpha1, self.alpha2, self.alpha3, self.alpha4]
    }

    pub fn boundary_matrix(&self) -> C2Matrix {
        C2Matrix::new(self.alpha1, self.alpha2, self.alpha3, self.alpha4)
    }

    pub fn from_boundary_matrix(b: &C2Matrix) -> Self {
        Self::new(b.m11, b.m12, b.m21, b.m22)
    }

    /// `e^{iφ}α`, which stays in class α.
    pub fn with_phase(&self, phi: f64) -> Self {
        let p = Complex64::cis(phi);
        Self::new(p * self.alpha1, p * self.alpha2, p * self.alpha3, p * self.alpha4)
    }

    pub fn max_abs(&self) -> f64 {
        self.components().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.components()
            .iter()
            .zip(other.components())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Residuals of the class-α conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    /// `|α₁α₄* - α₂α₃* - 1|`
    pub determinant: f64,
    /// `|Im α₁α₃*|`
    pub im_alpha1_alpha3: f64,
    /// `|Im α₂α₄*|`
    pub im_alpha2_alpha4: f64,
    /// `|Im α_jα_k*|` for `(j,k)` = (1,2), (1,3), (1,4), (2,3), (2,4), (3,4).
    /// Diagnostics only: they vanish whenever the three conditions above do.
    pub pairwise: [f64; 6],
    pub tol: f64,
    pub pass: bool,
}

impl ValidationReport {
    pub fn max_defining(&self) -> f64 {
        self.determinant
            .max(self.im_alpha1_alpha3)
            .max(self.im_alpha2_alpha4)
    }

    pub fn max_pairwise(&self) -> f64 {
        self.pairwise.iter().copied().fold(0.0, f64::max)
    }

    pub fn into_error(self) -> Error {
        Error::NotClassAlpha {
            determinant: self.determinant,
            im13: self.im_alpha1_alpha3,
            im24: self.im_alpha2_alpha4,
            tol: self.tol,
        }
    }
}

pub fn validate_class_alpha(alpha: &AlphaVector, tol: f64) -> ValidationReport {
    let a = alpha.components();
    let (x, y) = (a.map(|z| z.re), a.map(|z| z.im));
    // Im(α_j α_k*) = y_j x_k - x_j y_k
    let im = |j: usize, k: usize| dot2(&[(y[j], x[k]), (-x[j], y[k])]).abs();
    let det_re = dot2(&[(x[0], x[3]), (y[0], y[3]), (-x[1], x[2]), (-y[1], y[2]), (-1.0, 1.0)]);
    let det_im = dot2(&[(y[0], x[3]), (-x[0], y[3]), (-y[1], x[2]), (x[1], y[2])]);
    let determinant = det_re.hypot(det_im);
    let im_alpha1_alpha3 = im(0, 2);
    let im_alpha2_alpha4 = im(1, 3);
    let pairwise = [im(0, 1), im(0, 2), im(0, 3), im(1, 2), im(1, 3), im(2, 3)];
    // NaN residuals must fail, hence the negated comparisons.
    let pass = !(determinant > tol || im_alpha1_alpha3 > tol || im_alpha2_alpha4 > tol)
        && determinant.is_finite()
        && im_alpha1_alpha3.is_finite()
        && im_alpha2_alpha4.is_finite();
    ValidationReport {
        determinant,
        im_alpha1_alpha3,
        im_alpha2_alpha4,
        pairwise,
        tol,
        pass,
    }
}

/// `Σ pᵢqᵢ` evaluated as if in twice the working precision (compensated
/// dot product built from FMA-exact products). The class-α relations are
/// differences of products of size `|α|²` that cancel to `O(1)`; a naive
/// evaluation loses `log₁₀|α|²` digits before the comparison is even made.
fn dot2(terms: &[(f64, f64)]) -> f64 {
    let mut sum = 0.0_f64;
    let mut err = 0.0_f64;
    for &(p, q) in terms {
        let prod = p * q;
        let prod_err = p.mul_add(q, -prod);
        let next = sum + prod;
        let z = next - sum;
        err += (sum - (next - z)) + (prod - z) + prod_err;
        sum = next;
    }
    sum + err
}

/// `B_α = e^{iθ} [[a₁, a₂], [a₃, a₄]]` with real `a` and `a₁a₄ - a₂a₃ = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseForm {
    /// In `[0, 2π)`.
    pub theta: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
}

impl PhaseForm {
    pub fn real_matrix(&self) -> C2Matrix {
        C2Matrix::real(self.a1, self.a2, self.a3, self.a4)
    }

    /// `e^{iθ}` times the real matrix.
    pub fn boundary_matrix(&self) -> C2Matrix {
        self.real_matrix().scale(Complex64::cis(self.theta))
    }

    pub fn determinant(&self) -> f64 {
        self.a1 * self.a4 - self.a2 * self.a3
    }
}

/// Split the common phase off `B_α`.
///
/// The pivot is `α₁` if it is non-zero, otherwise `α₂`; `θ = arg α_pivot`,
/// `a_pivot = |α_pivot|` and `a_k = α_k α_pivot* / |α_pivot|` (real in class α).
/// When `|α₂| > |α₁| > 0` the phase is read off `α₂` and then resolved mod π
/// by the sign of `α₁`, so that a tiny, noisy `α₁` cannot corrupt `θ`.
pub fn extract_phase(alpha: &AlphaVector) -> Result<PhaseForm> {
    let zero = Complex64::new(0.0, 0.0);
    let [a1, a2, a3, a4] = alpha.components();
    let pivot = if a1 != zero {
        a1
    } else if a2 != zero {
        a2
    } else {
        return Err(Error::DegeneratePivot);
    };

    let (phase, pivot_modulus) = if pivot.norm() >= a2.norm() {
        (pivot / pivot.norm(), Some(pivot.norm()))
    } else {
        let reference = a2 / a2.norm();
        let oriented = if (pivot * reference.conj()).re >= 0.0 {
            reference
        } else {
            -reference
        };
        (oriented, None)
    };
    let unphase = phase.conj();
    let real = |z: Complex64| (z * unphase).re;
    let mut form = PhaseForm {
        theta: angle::arg(phase),
        a1: real(a1),
        a2: real(a2),
        a3: real(a3),
        a4: real(a4),
    };
    if let Some(m) = pivot_modulus {
        if a1 != zero {
            form.a1 = m;
        } else {
            form.a2 = m;
        }
    }
    Ok(form)
}

/// Result of mapping a non-diagonal `U` to its boundary matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaMap {
    pub alpha: AlphaVector,
    /// `|γ₂| <` [`CONDITIONING_THRESHOLD`]: α entries scale like `1/|γ₂|`.
    pub ill_conditioned: bool,
}

/// Non-diagonal `U = γ₃·SH(γ₁, γ₂)` to class α:
///
/// ```text
/// α₁ =  i√2 γ₂⁻¹ (Re(e^{iπ/4}γ₁) + Re(e^{i(π/4-√2Λ)}γ₃))
/// α₂ = -i√2 γ₂⁻¹ (Re γ₁          + Re(e^{-i√2Λ}γ₃))
/// α₃ = -i√2 γ₂⁻¹ (Re γ₁          + Re(e^{i(π/2-√2Λ)}γ₃))
/// α₄ =  i√2 γ₂⁻¹ (Re(e^{-iπ/4}γ₁) + Re(e^{i(π/4-√2Λ)}γ₃))
/// ```
pub fn u_to_alpha(d: &QuaternionDecomposition, geom: &JunctionGeometry) -> Result<AlphaMap> {
    let g2_modulus = d.gamma2.norm();
    if g2_modulus == 0.0 {
        return Err(Error::Diagonal);
    }
    let shift = geom.phase_angle();
    let (g1, g3) = (d.gamma1, d.gamma3);
    let re = |phase: f64, z: Complex64| (Complex64::cis(phase) * z).re;

    let r1 = re(FRAC_PI_4, g1) + re(FRAC_PI_4 - shift, g3);
    let r2 = -(g1.re + re(-shift, g3));
    let r3 = -(g1.re + re(FRAC_PI_2 - shift, g3));
    let r4 = re(-FRAC_PI_4, g1) + re(FRAC_PI_4 - shift, g3);

    // All four entries share the phase of i/γ₂.
    let prefactor = Complex64::new(0.0, SQRT_2) / d.gamma2;
    Ok(AlphaMap {
        alpha: AlphaVector::new(prefactor * r1, prefactor * r2, prefactor * r3, prefactor * r4),
        ill_conditioned: g2_modulus < CONDITIONING_THRESHOLD,
    })
}

/// Class α back to `(γ₁, γ₂, γ₃)` and `U`:
///
/// ```text
/// S  = e^{iπ/4}α₁ + α₂ + α₃ + e^{-iπ/4}α₄
/// Γ₀ = (|S|² + 2)^{-1/2}
/// γ₁ = Γ₀ e^{-iθ} S
/// γ₂ = -i√2 Γ₀ e^{-iθ}
/// γ₃ = -Γ₀ e^{i(√2Λ-θ)} (e^{-iπ/4}α₁ - iα₂ + α₃ + e^{-iπ/4}α₄)
/// ```
///
/// with `θ` from [`extract_phase`]. The exponent of `Γ₀` is `-1/2`; only
/// that choice gives `|γ₁|² + |γ₂|² = 1`.
pub fn alpha_to_u(
    alpha: &AlphaVector,
    geom: &JunctionGeometry,
) -> Result<(QuaternionDecomposition, UnitaryU2)> {
    let scale = alpha.max_abs().powi(2).max(1.0);
    let report = validate_class_alpha(alpha, DEFAULT_CLASS_ALPHA_TOL * scale);
    if !report.pass {
        return Err(report.into_error());
    }
    let form = extract_phase(alpha)?;

    let eta = Complex64::cis(FRAC_PI_4);
    let eta_conj = eta.conj();
    let i = Complex64::i();
    let [a1, a2, a3, a4] = alpha.components();

    let s = eta * a1 + a2 + a3 + eta_conj * a4;
    let gamma0 = (s.norm_sqr() + 2.0).sqrt().recip();
    let unphase = Complex64::cis(-form.theta);

    let gamma1 = gamma0 * unphase * s;
    let gamma2 = Complex64::new(0.0, -SQRT_2) * gamma0 * unphase;
    let gamma3 = -gamma0
        * Complex64::cis(geom.phase_angle() - form.theta)
        * (eta_conj * a1 - i * a2 + a3 + eta_conj * a4);
    // Exactly unimodular for exact class-α input; renormalize the rounding.
    let gamma3 = gamma3 / gamma3.norm();

    let d = QuaternionDecomposition::new(gamma1, gamma2, gamma3);
    Ok((d, d.unitary()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extensions::decompose::decompose_u2;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_close(a: Complex64, b: Complex64, tol: f64) {
        assert!((a - b).norm() <= tol, "{a} vs {b}");
    }

    fn upper_triangular_example() -> AlphaVector {
        AlphaVector::new(c(0.0, 1.0), c(0.0, -SQRT_2), c(0.0, 0.0), c(0.0, 1.0))
    }

    #[test]
    fn u_to_alpha_identity_inducing_triple() {
        let d = QuaternionDecomposition::new(
            c(FRAC_1_SQRT_2, 0.0),
            c(0.0, -FRAC_1_SQRT_2),
            -Complex64::cis(-FRAC_PI_4),
        );
        let map = u_to_alpha(&d, &JunctionGeometry::point()).unwrap();
        assert!(map.alpha.max_abs_diff(&AlphaVector::identity()) < 1e-15);
        assert!(!map.ill_conditioned);
    }

    #[test]
    fn u_to_alpha_quarter_turn() {
        let d = QuaternionDecomposition::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0));
        let map = u_to_alpha(&d, &JunctionGeometry::point()).unwrap();
        assert!(map.alpha.max_abs_diff(&upper_triangular_example()) < 1e-15);
        let report = validate_class_alpha(&map.alpha, 1e-15);
        assert!(report.pass);
    }

    #[test]
    fn u_to_alpha_rejects_diagonal() {
        let d = decompose_u2(&UnitaryU2::identity());
        assert_eq!(u_to_alpha(&d, &JunctionGeometry::point()), Err(Error::Diagonal));
    }

    #[test]
    fn u_to_alpha_flags_ill_conditioning() {
        let g2 = 1e-8;
        let d = QuaternionDecomposition::new(c((1.0_f64 - g2 * g2).sqrt(), 0.0), c(g2, 0.0), c(0.0, 1.0));
        let map = u_to_alpha(&d, &JunctionGeometry::point()).unwrap();
        assert!(map.ill_conditioned);
    }

    #[test]
    fn alpha_to_u_identity() {
        let (d, u) = alpha_to_u(&AlphaVector::identity(), &JunctionGeometry::point()).unwrap();
        assert_close(d.gamma1, c(FRAC_1_SQRT_2, 0.0), 1e-15);
        assert_close(d.gamma2, c(0.0, -FRAC_1_SQRT_2), 1e-15);
        assert_close(d.gamma3, -Complex64::cis(-FRAC_PI_4), 1e-15);
        assert!(u.unitarity_residual() < 1e-15);
        let back = u_to_alpha(&d, &JunctionGeometry::point()).unwrap().alpha;
        assert!(back.max_abs_diff(&AlphaVector::identity()) < 1e-15);
    }

    #[test]
    fn alpha_to_u_rejects_invalid() {
        let err = alpha_to_u(&AlphaVector::real(1.0, 0.0, 0.0, 2.0), &JunctionGeometry::point());
        assert!(matches!(err, Err(Error::NotClassAlpha { .. })));
    }

    #[test]
    fn validation_examples() {
        let r = validate_class_alpha(&AlphaVector::identity(), 1e-12);
        assert!(r.pass);
        assert_eq!(r.max_defining(), 0.0);
        assert_eq!(r.max_pairwise(), 0.0);

        assert!(validate_class_alpha(&upper_triangular_example(), 1e-12).pass);

        let r = validate_class_alpha(&AlphaVector::real(1.0, 0.0, 0.0, 2.0), 1e-12);
        assert!(!r.pass);
        assert_abs_diff_eq!(r.determinant, 1.0, epsilon = 0.0);
    }

    #[test]
    fn validation_fails_on_nan() {
        let a = AlphaVector::new(c(f64::NAN, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        assert!(!validate_class_alpha(&a, 1.0).pass);
    }

    #[test]
    fn phase_examples() {
        let p = extract_phase(&AlphaVector::identity()).unwrap();
        assert_eq!((p.theta, p.a1, p.a2, p.a3, p.a4), (0.0, 1.0, 0.0, 0.0, 1.0));

        let p = extract_phase(&upper_triangular_example()).unwrap();
        assert_abs_diff_eq!(p.theta, PI / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.a1, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.a2, -SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(p.a3, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.a4, 1.0, epsilon = 1e-15);

        for &phi in &[0.5, 3.0, -1.0, 7.0] {
            let p = extract_phase(&AlphaVector::identity().with_phase(phi)).unwrap();
            assert!(angle::circular_distance(p.theta, phi) < 1e-15);
            assert!((0.0..2.0 * PI).contains(&p.theta));
            assert_abs_diff_eq!(p.a1, 1.0, epsilon = 1e-15);
            assert_abs_diff_eq!(p.a4, 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn phase_pivots_to_alpha2_when_alpha1_vanishes() {
        // B = e^{0.3i} [[0, 1], [-1, 2]]
        let a = AlphaVector::real(0.0, 1.0, -1.0, 2.0).with_phase(0.3);
        let p = extract_phase(&a).unwrap();
        assert_abs_diff_eq!(p.theta, 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(p.a1, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.a2, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.determinant(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn phase_of_zero_pivots_is_an_error() {
        let a = AlphaVector::real(0.0, 0.0, 1.0, 1.0);
        assert_eq!(extract_phase(&a), Err(Error::DegeneratePivot));
    }
}
