//! Stationary scattering and bound states for a self-adjoint extension.
//!
//! Conventions: `E = k²`, time dependence `e^{-iEt}`, unit incident
//! amplitude. The junction has no interior dynamics; its boundary condition
//! is the whole interaction.
//!
//! Left incidence: `ψ = e^{ikx} + r e^{-ikx}` for `x < -Λ` and `ψ = t e^{ikx}`
//! for `x > +Λ`. Right incidence mirrors it: `ψ = e^{-ikx} + r e^{ikx}` for
//! `x > +Λ` and `ψ = t e^{-ikx}` for `x < -Λ`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angle;
use crate::error::{Error, Result};
use crate::extensions::{extract_phase, AlphaVector, BoundaryData, ExtendedReal, JunctionGeometry, RhoPair};
use crate::matrix::C2Matrix;

/// Either boundary-condition family. Serializes as `{"alpha": [...]}` or
/// `{"rho": [...]}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Extension {
    Alpha(AlphaVector),
    Rho(RhoPair),
}

impl From<AlphaVector> for Extension {
    fn from(a: AlphaVector) -> Self {
        Self::Alpha(a)
    }
}

impl From<RhoPair> for Extension {
    fn from(r: RhoPair) -> Self {
        Self::Rho(r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringResult {
    pub k: f64,
    pub side: Side,
    pub r: Complex64,
    pub t: Complex64,
    /// `| |r|² + |t|² - 1 |`
    pub flux_residual: f64,
}

impl ScatteringResult {
    fn new(k: f64, side: Side, r: Complex64, t: Complex64) -> Self {
        Self {
            k,
            side,
            r,
            t,
            flux_residual: (r.norm_sqr() + t.norm_sqr() - 1.0).abs(),
        }
    }
}

fn check_k(k: f64) -> Result<()> {
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::InvalidWavenumber(k));
    }
    Ok(())
}

/// Solve `x·col1 + y·col2 = rhs` by Cramer's rule.
fn solve2(col1: [Complex64; 2], col2: [Complex64; 2], rhs: [Complex64; 2], k: f64) -> Result<(Complex64, Complex64)> {
    let det = col1[0] * col2[1] - col2[0] * col1[1];
    let scale = (col1[0].norm() + col1[1].norm()) * (col2[0].norm() + col2[1].norm());
    if !(det.norm() > 1e-14 * scale) || !det.is_finite() {
        return Err(Error::SingularScattering(k));
    }
    let x = (rhs[0] * col2[1] - col2[0] * rhs[1]) / det;
    let y = (col1[0] * rhs[1] - rhs[0] * col1[1]) / det;
    Ok((x, y))
}

fn scatter_alpha(alpha: &AlphaVector, geom: &JunctionGeometry, k: f64, side: Side) -> Result<ScatteringResult> {
    let b = alpha.boundary_matrix();
    let ik = Complex64::new(0.0, k);
    let out = Complex64::cis(k * geom.lambda()); // e^{ikΛ}
    let inn = out.conj(); // e^{-ikΛ}

    // (ψ, ψ') of e^{±ikx} at x = ±Λ.
    let right_moving_at_minus = [inn, ik * inn];
    let left_moving_at_minus = [out, -ik * out];
    let right_moving_at_plus = [out, ik * out];
    let left_moving_at_plus = [inn, -ik * inn];

    let (r, t) = match side {
        Side::Left => {
            // t·w(+Λ) - r·B w(-Λ) = B w_in(-Λ)
            let reflected = b.apply(left_moving_at_minus);
            let col_r = [-reflected[0], -reflected[1]];
            solve2(col_r, right_moving_at_plus, b.apply(right_moving_at_minus), k)?
        }
        Side::Right => {
            // r·w(+Λ) - t·B w(-Λ) = -w_in(+Λ)
            let transmitted = b.apply(left_moving_at_minus);
            let col_t = [-transmitted[0], -transmitted[1]];
            let rhs = [-left_moving_at_plus[0], -left_moving_at_plus[1]];
            solve2(right_moving_at_plus, col_t, rhs, k)?
        }
    };
    Ok(ScatteringResult::new(k, side, r, t))
}

fn scatter_rho(rho: &RhoPair, geom: &JunctionGeometry, k: f64, side: Side) -> ScatteringResult {
    let ik = Complex64::new(0.0, k);
    let round_trip = Complex64::cis(-2.0 * k * geom.lambda()); // e^{-2ikΛ}
    let r = match side {
        // ψ'(-Λ) = ρ₋ψ(-Λ)
        Side::Left => match rho.rho_minus {
            ExtendedReal::Finite(p) => round_trip * (ik - p) / (ik + p),
            ExtendedReal::Infinity => -round_trip,
        },
        // ψ'(+Λ) = ρ₊ψ(+Λ)
        Side::Right => match rho.rho_plus {
            ExtendedReal::Finite(p) => -round_trip * (p + ik) / (p - ik),
            ExtendedReal::Infinity => -round_trip,
        },
    };
    ScatteringResult::new(k, side, r, Complex64::new(0.0, 0.0))
}

/// Reflection and transmission amplitudes at wavenumber `k > 0`.
pub fn scatter(ext: &Extension, geom: &JunctionGeometry, k: f64, side: Side) -> Result<ScatteringResult> {
    check_k(k)?;
    match ext {
        Extension::Alpha(a) => scatter_alpha(a, geom, k, side),
        Extension::Rho(r) => Ok(scatter_rho(r, geom, k, side)),
    }
}

/// `S(k) = [[r_L, t_R], [t_L, r_R]]`, mapping incoming amplitudes
/// `(from left, from right)` to outgoing `(to left, to right)`.
pub fn smatrix(ext: &Extension, geom: &JunctionGeometry, k: f64) -> Result<C2Matrix> {
    let left = scatter(ext, geom, k, Side::Left)?;
    let right = scatter(ext, geom, k, Side::Right)?;
    Ok(C2Matrix::new(left.r, right.t, left.t, right.r))
}

/// Below this `|t|` the transmission phase is reported as undefined.
pub const TRANSMISSION_FLOOR: f64 = 1e-12;

/// `arg t` in `[0, 2π)` for left incidence. Scaling `α ↦ e^{iφ}α` shifts it
/// by exactly `φ` and leaves `|r|`, `|t|` unchanged.
pub fn transmission_phase(alpha: &AlphaVector, geom: &JunctionGeometry, k: f64) -> Result<f64> {
    let res = scatter(&Extension::Alpha(*alpha), geom, k, Side::Left)?;
    if !(res.t.norm() > TRANSMISSION_FLOOR) {
        return Err(Error::UndefinedPhase(res.t.norm()));
    }
    Ok(angle::arg(res.t))
}

/// `n` log-spaced points from `k_min` to `k_max` inclusive.
pub fn log_k_grid(k_min: f64, k_max: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![k_min],
        _ => {
            let (lo, hi) = (k_min.ln(), k_max.ln());
            (0..n)
                .map(|i| {
                    if i == 0 {
                        k_min
                    } else if i == n - 1 {
                        k_max
                    } else {
                        (lo + (hi - lo) * i as f64 / (n - 1) as f64).exp()
                    }
                })
                .collect()
        }
    }
}

/// Default sweep: 256 points over `[1e-2, 1e2]`.
pub fn default_k_grid() -> Vec<f64> {
    log_k_grid(1e-2, 1e2, 256)
}

/// Results in the order of `ks`.
pub fn sweep(ext: &Extension, geom: &JunctionGeometry, ks: &[f64], side: Side) -> Result<Vec<ScatteringResult>> {
    ks.iter().map(|&k| scatter(ext, geom, k, side)).collect()
}

/// Where a bound state lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Support {
    /// Both islands, linked through the junction (BC α).
    Both,
    Left,
    Right,
}

/// `ψ = A_L e^{κ(x+Λ)}` on the left island, `A_R e^{-κ(x-Λ)}` on the right,
/// at energy `-κ²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundState {
    pub kappa: f64,
    pub energy: f64,
    pub support: Support,
    /// `ψ(-Λ)`
    pub left_amplitude: Complex64,
    /// `ψ(+Λ)`
    pub right_amplitude: Complex64,
    /// The quadratic had a repeated root; reported once.
    pub double_root: bool,
}

impl BoundState {
    fn new(kappa: f64, support: Support, left: Complex64, right: Complex64, double_root: bool) -> Self {
        Self {
            kappa,
            energy: -kappa * kappa,
            support,
            left_amplitude: left,
            right_amplitude: right,
            double_root,
        }
    }

    /// Right amplitude relative to the left one, when the left is non-zero.
    pub fn c(&self) -> Option<Complex64> {
        (self.left_amplitude != Complex64::new(0.0, 0.0)).then(|| self.right_amplitude / self.left_amplitude)
    }

    /// Boundary values of the exponential ansatz.
    pub fn boundary_data(&self) -> BoundaryData {
        BoundaryData::new(
            self.right_amplitude,
            -self.kappa * self.right_amplitude,
            self.left_amplitude,
            self.kappa * self.left_amplitude,
        )
    }
}

/// Relative size below which the `κ²` coefficient counts as zero.
const QUADRATIC_DEGENERACY_REL: f64 = 1e-13;

/// Real roots of `a κ² + b κ + c = 0`, ascending, with a repeated-root flag.
fn real_roots(a: f64, b: f64, c: f64) -> (Vec<f64>, bool) {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if a.abs() <= QUADRATIC_DEGENERACY_REL * scale {
        if b == 0.0 {
            return (Vec::new(), false);
        }
        return (vec![-c / b], false);
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return (Vec::new(), false);
    }
    if disc == 0.0 {
        return (vec![-b / (2.0 * a)], true);
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let q = if q == 0.0 { -0.5 * disc.sqrt() } else { q };
    let mut roots = vec![q / a, c / q];
    roots.sort_by(f64::total_cmp);
    (roots, false)
}

/// Negative-energy eigenstates.
///
/// BC α with `B_α = e^{iθ}A`: the ansatz reduces the condition to
/// `a₂κ² + (a₁+a₄)κ + a₃ = 0`, and `ψ(+Λ)/ψ(-Λ) = e^{iθ}(a₁ + a₂κ)`.
/// BC ρ decouples: the left island binds at `κ = ρ₋` when `ρ₋ > 0`, the right
/// island at `κ = -ρ₊` when `ρ₊ < 0`.
pub fn bound_states(ext: &Extension, _geom: &JunctionGeometry) -> Result<Vec<BoundState>> {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    match ext {
        Extension::Alpha(alpha) => {
            let form = extract_phase(alpha)?;
            let (roots, double_root) = real_roots(form.a2, form.a1 + form.a4, form.a3);
            let phase = Complex64::cis(form.theta);
            Ok(roots
                .into_iter()
                .filter(|&k| k > 0.0 && k.is_finite())
                .map(|k| BoundState::new(k, Support::Both, one, phase * (form.a1 + form.a2 * k), double_root))
                .collect())
        }
        Extension::Rho(rho) => {
            let mut states = Vec::new();
            if let ExtendedReal::Finite(r) = rho.rho_minus {
                if r > 0.0 {
                    states.push(BoundState::new(r, Support::Left, one, zero, false));
                }
            }
            if let ExtendedReal::Finite(r) = rho.rho_plus {
                if r < 0.0 {
                    states.push(BoundState::new(-r, Support::Right, zero, one, false));
                }
            }
            Ok(states)
        }
    }
}
