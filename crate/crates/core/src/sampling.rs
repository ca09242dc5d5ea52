//! Seeded, platform-independent sampling of extensions.
//!
//! The generator is the 64-bit linear congruential generator
//! `s ← 6364136223846793005·s + 1442695040888963407 (mod 2⁶⁴)`; a uniform
//! double in `[0, 1)` is `(s >> 11)·2⁻⁵³` of the freshly advanced state.
//! Unitaries are drawn through `U = γ₃·SH(γ₁, γ₂)` with `|γ₁|² ~ U[0,1]` and
//! independent uniform phases for `γ₁`, `γ₂`, `γ₃`, which is Haar measure on
//! `U(2)`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::extensions::{u_to_alpha, AlphaVector, ExtendedReal, JunctionGeometry, QuaternionDecomposition, RhoPair};
use crate::matrix::UnitaryU2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub const MULTIPLIER: u64 = 6_364_136_223_846_793_005;
    pub const INCREMENT: u64 = 1_442_695_040_888_963_407;

    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Independent stream `stream` for `seed`: the state starts at
    /// `seed XOR (stream · 0x9E3779B97F4A7C15)`.
    pub fn stream(seed: u64, stream: u64) -> Self {
        Self::new(seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(Self::MULTIPLIER)
            .wrapping_add(Self::INCREMENT);
        self.state
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    pub fn angle(&mut self) -> f64 {
        self.uniform(0.0, TAU)
    }

    /// Uniform on the square `[-1, 1)²`.
    pub fn complex(&mut self) -> Complex64 {
        let re = self.uniform(-1.0, 1.0);
        let im = self.uniform(-1.0, 1.0);
        Complex64::new(re, im)
    }
}

pub fn random_decomposition(rng: &mut Lcg64) -> QuaternionDecomposition {
    let u = rng.next_f64();
    let gamma1 = Complex64::from_polar(u.sqrt(), rng.angle());
    let gamma2 = Complex64::from_polar((1.0 - u).sqrt(), rng.angle());
    let gamma3 = Complex64::cis(rng.angle());
    QuaternionDecomposition::new(gamma1, gamma2, gamma3)
}

pub fn random_unitary(rng: &mut Lcg64) -> UnitaryU2 {
    random_decomposition(rng).unitary()
}

/// Rejection-samples until `|γ₂| > min_gamma2` (`min_gamma2 < 1`).
pub fn random_nondiagonal(rng: &mut Lcg64, min_gamma2: f64) -> QuaternionDecomposition {
    loop {
        let d = random_decomposition(rng);
        if d.gamma2.norm() > min_gamma2 {
            return d;
        }
    }
}

/// `Λ` uniform in `[0, lambda_max)`.
pub fn random_geometry(rng: &mut Lcg64, lambda_max: f64) -> JunctionGeometry {
    JunctionGeometry::new(rng.uniform(0.0, lambda_max)).expect("non-negative half-length")
}

/// A class-α vector from a random non-diagonal `U`, with its geometry and
/// the decomposition it came from.
pub fn random_alpha(
    rng: &mut Lcg64,
    lambda_max: f64,
    min_gamma2: f64,
) -> (AlphaVector, JunctionGeometry, QuaternionDecomposition) {
    let d = random_nondiagonal(rng, min_gamma2);
    let geom = random_geometry(rng, lambda_max);
    let alpha = u_to_alpha(&d, &geom).expect("γ₂ bounded away from zero").alpha;
    (alpha, geom, d)
}

/// Each component is `∞` with probability 1/10, else uniform in `[-5, 5)`.
pub fn random_rho(rng: &mut Lcg64) -> RhoPair {
    let mut component = || {
        if rng.next_f64() < 0.1 {
            ExtendedReal::Infinity
        } else {
            ExtendedReal::Finite(rng.uniform(-5.0, 5.0))
        }
    };
    let rho_plus = component();
    let rho_minus = component();
    RhoPair::new(rho_plus, rho_minus)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcg_reference_values() {
        // s₁ = a·0 + c
        let mut rng = Lcg64::new(0);
        assert_eq!(rng.next_u64(), Lcg64::INCREMENT);
        assert_eq!(
            rng.next_u64(),
            Lcg64::INCREMENT
                .wrapping_mul(Lcg64::MULTIPLIER)
                .wrapping_add(Lcg64::INCREMENT)
        );
    }

    #[test]
    fn uniform_is_in_range_and_deterministic() {
        let mut a = Lcg64::new(42);
        let mut b = Lcg64::new(42);
        for _ in 0..10_000 {
            let x = a.next_f64();
            assert!((0.0..1.0).contains(&x));
            assert_eq!(x.to_bits(), b.next_f64().to_bits());
        }
    }

    #[test]
    fn streams_differ() {
        let mut a = Lcg64::stream(7, 1);
        let mut b = Lcg64::stream(7, 2);
        assert_ne!(a.next_u64(), b.next_u64());
    }

    #[test]
    fn sampled_unitaries_are_unitary() {
        let mut rng = Lcg64::new(3);
        for _ in 0..1000 {
            let d = random_decomposition(&mut rng);
            assert!(d.norm_residual() < 1e-15);
            assert!(d.reconstruct().unitarity_residual() < 1e-14);
        }
    }

    #[test]
    fn gamma1_modulus_squared_is_uniform() {
        let mut rng = Lcg64::new(11);
        let n = 20_000;
        let mean = (0..n)
            .map(|_| random_decomposition(&mut rng).gamma1.norm_sqr())
            .sum::<f64>()
            / n as f64;
        assert!((mean - 0.5).abs() < 0.01, "mean {mean}");
    }
}
