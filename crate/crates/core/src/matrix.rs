//! 2×2 complex matrices and the unitary subset that labels extensions.

use std::ops::{Index, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// General 2×2 complex matrix. Serializes row-major as
/// `[[m11, m12], [m21, m22]]` with each entry a `[re, im]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[[Complex64; 2]; 2]", into = "[[Complex64; 2]; 2]")]
pub struct C2Matrix {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

impl From<[[Complex64; 2]; 2]> for C2Matrix {
    fn from(rows: [[Complex64; 2]; 2]) -> Self {
        Self::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }
}

impl From<C2Matrix> for [[Complex64; 2]; 2] {
    fn from(m: C2Matrix) -> Self {
        [[m.m11, m.m12], [m.m21, m.m22]]
    }
}

impl C2Matrix {
    pub const fn new(m11: Complex64, m12: Complex64, m21: Complex64, m22: Complex64) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub const fn identity() -> Self {
        Self::new(ONE, ZERO, ZERO, ONE)
    }

    pub const fn zero() -> Self {
        Self::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub const fn diag(d1: Complex64, d2: Complex64) -> Self {
        Self::new(d1, ZERO, ZERO, d2)
    }

    /// Matrix with real entries, row-major.
    pub fn real(m11: f64, m12: f64, m21: f64, m22: f64) -> Self {
        Self::new(m11.into(), m12.into(), m21.into(), m22.into())
    }

    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::new(self.m11.conj(), self.m21.conj(), self.m12.conj(), self.m22.conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(s * self.m11, s * self.m12, s * self.m21, s * self.m22)
    }

    /// Inverse via the adjugate; `None` when the determinant is exactly zero
    /// or not finite.
    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det == ZERO || !det.is_finite() {
            return None;
        }
        let inv = det.inv();
        Some(Self::new(
            self.m22 * inv,
            -self.m12 * inv,
            -self.m21 * inv,
            self.m11 * inv,
        ))
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.m11 * v[0] + self.m12 * v[1],
            self.m21 * v[0] + self.m22 * v[1],
        ]
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.m11, self.m12, self.m21, self.m22]
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|z| z.is_finite())
    }

    /// `max |(M†M - I)_jk|`.
    pub fn unitarity_residual(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Self::identity())
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        is_unitary(self, tol)
    }
}

/// True iff the max-entry norm of `M†M - I` is at most `tol`.
pub fn is_unitary(m: &C2Matrix, tol: f64) -> bool {
    m.is_finite() && m.unitarity_residual() <= tol
}

impl Index<(usize, usize)> for C2Matrix {
    type Output = Complex64;

    fn index(&self, (row, col): (usize, usize)) -> &Complex64 {
        match (row, col) {
            (0, 0) => &self.m11,
            (0, 1) => &self.m12,
            (1, 0) => &self.m21,
            (1, 1) => &self.m22,
            _ => panic!("C2Matrix index ({row}, {col}) out of range"),
        }
    }
}

impl Mul for C2Matrix {
    type Output = C2Matrix;

    fn mul(self, b: C2Matrix) -> C2Matrix {
        C2Matrix::new(
            self.m11 * b.m11 + self.m12 * b.m21,
            self.m11 * b.m12 + self.m12 * b.m22,
            self.m21 * b.m11 + self.m22 * b.m21,
            self.m21 * b.m12 + self.m22 * b.m22,
        )
    }
}

impl Sub for C2Matrix {
    type Output = C2Matrix;

    fn sub(self, b: C2Matrix) -> C2Matrix {
        C2Matrix::new(
            self.m11 - b.m11,
            self.m12 - b.m12,
            self.m21 - b.m21,
            self.m22 - b.m22,
        )
    }
}

/// A 2×2 matrix known to be unitary to within the tolerance it was
/// checked against. Entry `u_jk` maps deficiency basis function `j` of
/// `K+` = {L+, R+} onto basis function `k` of `K-` = {L-, R-}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(into = "[[Complex64; 2]; 2]")]
pub struct UnitaryU2(C2Matrix);

impl From<UnitaryU2> for [[Complex64; 2]; 2] {
    fn from(u: UnitaryU2) -> Self {
        u.0.into()
    }
}

impl UnitaryU2 {
    /// Default unitarity tolerance for library entry points.
    pub const DEFAULT_TOL: f64 = 1e-10;

    pub fn new(m: C2Matrix, tol: f64) -> Result<Self> {
        let residual = m.unitarity_residual();
        if !m.is_finite() || !(residual <= tol) {
            return Err(Error::NotUnitary { residual, tol });
        }
        Ok(Self(m))
    }

    /// Caller guarantees unitarity (e.g. the matrix was assembled from a
    /// unit-norm parameterization).
    pub(crate) fn new_unchecked(m: C2Matrix) -> Self {
        Self(m)
    }

    pub fn identity() -> Self {
        Self(C2Matrix::identity())
    }

    /// `diag(γ_L, γ_R)` for unimodular phases.
    pub fn diag(gamma_l: Complex64, gamma_r: Complex64, tol: f64) -> Result<Self> {
        Self::new(C2Matrix::diag(gamma_l, gamma_r), tol)
    }

    pub fn matrix(&self) -> &C2Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> C2Matrix {
        self.0
    }
}

impl std::ops::Deref for UnitaryU2 {
    type Target = C2Matrix;

    fn deref(&self) -> &C2Matrix {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn is_unitary_examples() {
        assert!(is_unitary(&C2Matrix::identity(), 1e-12));
        assert!(is_unitary(&C2Matrix::real(0.0, 1.0, 1.0, 0.0), 1e-12));
        assert!(!is_unitary(&C2Matrix::real(2.0, 0.0, 0.0, 1.0), 1e-12));
    }

    #[test]
    fn nan_is_never_unitary() {
        let m = C2Matrix::new(c(f64::NAN, 0.0), ONE, ONE, ZERO);
        assert!(!is_unitary(&m, 1.0));
        assert!(UnitaryU2::new(m, 1.0).is_err());
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let m = C2Matrix::new(c(1.0, 2.0), c(-0.5, 0.1), c(0.3, -1.0), c(2.0, 0.0));
        let inv = m.inverse().unwrap();
        assert!((m * inv).max_abs_diff(&C2Matrix::identity()) < 1e-15);
        assert!(C2Matrix::real(1.0, 2.0, 2.0, 4.0).inverse().is_none());
    }
}
