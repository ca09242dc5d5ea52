//! Decoupled Robin/Dirichlet conditions and their diagonal-`U` labels.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::geometry::JunctionGeometry;
use crate::error::{Error, Result};
use crate::matrix::UnitaryU2;

/// Complex distance below which `γ` is identified with `-e^{i√2Λ}`
/// (the Dirichlet phase).
pub const DIRICHLET_MATCH_TOL: f64 = 1e-10;

/// Unimodularity tolerance for the phases handed to [`u_to_rho`].
const UNIMODULAR_TOL: f64 = 1e-10;

/// A real number or `+∞`. Infinity is a tag, never an IEEE infinity.
/// Serializes as a JSON number or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedReal {
    Finite(f64),
    Infinity,
}

impl ExtendedReal {
    /// Rejects NaN and IEEE infinities; use [`ExtendedReal::Infinity`] for `+∞`.
    pub fn finite(x: f64) -> Result<Self> {
        if x.is_finite() {
            Ok(Self::Finite(x))
        } else {
            Err(Error::InvalidExtendedReal(x))
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Self::Infinity)
    }

    pub fn as_finite(&self) -> Option<f64> {
        match *self {
            Self::Finite(x) => Some(x),
            Self::Infinity => None,
        }
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(x) => write!(f, "{x}"),
            Self::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtendedReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Self::Finite(x) => s.serialize_f64(x),
            Self::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(x) => Self::finite(x).map_err(serde::de::Error::custom),
            Raw::Text(s) if s == "inf" => Ok(Self::Infinity),
            Raw::Text(s) => Err(serde::de::Error::custom(format!(
                "expected a number or \"inf\", got {s:?}"
            ))),
        }
    }
}

/// `(ρ₊, ρ₋)`: BC ρ reads `ρ₊ψ(+Λ) = ψ'(+Λ)` on the right island and
/// `ρ₋ψ(-Λ) = ψ'(-Λ)` on the left, with `ρ = ∞` meaning Dirichlet.
/// Serializes as `[ρ₊, ρ₋]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[ExtendedReal; 2]", into = "[ExtendedReal; 2]")]
pub struct RhoPair {
    pub rho_plus: ExtendedReal,
    pub rho_minus: ExtendedReal,
}

impl From<[ExtendedReal; 2]> for RhoPair {
    fn from(v: [ExtendedReal; 2]) -> Self {
        Self::new(v[0], v[1])
    }
}

impl From<RhoPair> for [ExtendedReal; 2] {
    fn from(r: RhoPair) -> Self {
        [r.rho_plus, r.rho_minus]
    }
}

impl RhoPair {
    pub fn new(rho_plus: ExtendedReal, rho_minus: ExtendedReal) -> Self {
        Self {
            rho_plus,
            rho_minus,
        }
    }

    pub fn finite(rho_plus: f64, rho_minus: f64) -> Result<Self> {
        Ok(Self::new(
            ExtendedReal::finite(rho_plus)?,
            ExtendedReal::finite(rho_minus)?,
        ))
    }

    pub fn dirichlet() -> Self {
        Self::new(ExtendedReal::Infinity, ExtendedReal::Infinity)
    }
}

fn check_unimodular(which: &'static str, gamma: Complex64) -> Result<()> {
    let modulus = gamma.norm();
    if !modulus.is_finite() || (modulus - 1.0).abs() > UNIMODULAR_TOL {
        return Err(Error::NotUnimodular { which, modulus });
    }
    Ok(())
}

/// `tan(θ/2 - Λ/√2)` from `γ = e^{iθ}`, or `None` at the Dirichlet phase.
/// Uses `tan(φ/2) = Im z / (1 + Re z)` with `z = γ e^{-i√2Λ}`, which is
/// insensitive to how `arg γ` is branched.
fn shifted_half_tan(gamma: Complex64, geom: &JunctionGeometry) -> Option<f64> {
    if (gamma + geom.phase()).norm() <= DIRICHLET_MATCH_TOL {
        return None;
    }
    let z = gamma / gamma.norm() * geom.phase().conj();
    Some(z.im / (1.0 + z.re))
}

/// Diagonal `U = diag(γ_L, γ_R)` to `(ρ₊, ρ₋)`:
/// `ρ₋ = -(1/√2){tan(θ_L/2 - Λ/√2) - 1}`, `ρ₊ = (1/√2){tan(θ_R/2 - Λ/√2) - 1}`,
/// and `γ = -e^{i√2Λ}` maps to `∞`.
pub fn u_to_rho(gamma_l: Complex64, gamma_r: Complex64, geom: &JunctionGeometry) -> Result<RhoPair> {
    check_unimodular("gamma_L", gamma_l)?;
    check_unimodular("gamma_R", gamma_r)?;
    let rho_minus = match shifted_half_tan(gamma_l, geom) {
        Some(t) => ExtendedReal::Finite(-FRAC_1_SQRT_2 * (t - 1.0)),
        None => ExtendedReal::Infinity,
    };
    let rho_plus = match shifted_half_tan(gamma_r, geom) {
        Some(t) => ExtendedReal::Finite(FRAC_1_SQRT_2 * (t - 1.0)),
        None => ExtendedReal::Infinity,
    };
    Ok(RhoPair::new(rho_plus, rho_minus))
}

/// `(ρ₊, ρ₋)` to `diag(e^{iθ_L}, e^{iθ_R})` with
/// `θ_L = 2 arctan(1 - √2ρ₋) + √2Λ`, `θ_R = 2 arctan(1 + √2ρ₊) + √2Λ`,
/// and `θ = π + √2Λ` for an infinite component.
pub fn rho_to_u(rho: &RhoPair, geom: &JunctionGeometry) -> UnitaryU2 {
    let shift = geom.phase_angle();
    let theta_l = match rho.rho_minus {
        ExtendedReal::Finite(r) => 2.0 * (1.0 - SQRT_2 * r).atan() + shift,
        ExtendedReal::Infinity => PI + shift,
    };
    let theta_r = match rho.rho_plus {
        ExtendedReal::Finite(r) => 2.0 * (1.0 + SQRT_2 * r).atan() + shift,
        ExtendedReal::Infinity => PI + shift,
    };
    UnitaryU2::new_unchecked(crate::matrix::C2Matrix::diag(
        Complex64::cis(theta_l),
        Complex64::cis(theta_r),
    ))
}
