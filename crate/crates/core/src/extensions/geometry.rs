use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The excised segment `[-Λ, +Λ]`, stored by its half-length `Λ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JunctionGeometry {
    lambda: f64,
}

impl JunctionGeometry {
    pub fn new(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::InvalidGeometry(lambda));
        }
        Ok(Self { lambda })
    }

    /// `Λ = 0`: the two half-lines touch at the origin.
    pub fn point() -> Self {
        Self { lambda: 0.0 }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `√2 Λ`, the junction phase angle that shifts every U ↔ boundary map.
    pub fn phase_angle(&self) -> f64 {
        std::f64::consts::SQRT_2 * self.lambda
    }

    /// `e^{i√2Λ}`.
    pub fn phase(&self) -> Complex64 {
        Complex64::cis(self.phase_angle())
    }
}

impl Default for JunctionGeometry {
    fn default() -> Self {
        Self::point()
    }
}
