//! Seeded property suites over random extensions.
//!
//! Each suite draws from its own LCG stream (`Lcg64::stream(seed, index)`),
//! so adding samples to one suite never perturbs another, and reports the
//! largest residual it saw.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::angle::circular_distance;
use crate::deficiency::{domain_sample, oracle_boundary_matrix};
use crate::extensions::{
    alpha_to_u, apply_bc_alpha, decompose_u2, rho_to_u, u_to_alpha, u_to_rho,
    validate_class_alpha, ExtendedReal, JunctionGeometry, RhoPair,
};
use crate::sampling::{random_alpha, random_geometry, random_nondiagonal, random_rho, random_unitary, Lcg64};
use crate::scattering::{log_k_grid, smatrix, scatter, transmission_phase, Extension, Side};

/// Lower bound on `|γ₂|` for sampled non-diagonal extensions.
pub const MIN_GAMMA2: f64 = 0.01;

/// Number of evenly spaced `Λ` values in the Dirichlet-correspondence check.
pub const DIRICHLET_LAMBDAS: usize = 20;

/// Extensions used by the flux and phase suites: at most this many.
pub const MAX_SCATTERING_SAMPLES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub samples: usize,
    pub lambda_max: f64,
    /// Replaces every suite's own tolerance when set.
    pub tol_override: Option<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 1000,
            lambda_max: 3.0,
            tol_override: None,
        }
    }
}

impl VerifyConfig {
    fn tol(&self, default: f64) -> f64 {
        self.tol_override.unwrap_or(default)
    }

    fn rng(&self, stream: u64) -> Lcg64 {
        Lcg64::stream(self.seed, stream)
    }

    fn scattering_samples(&self) -> usize {
        self.samples.min(MAX_SCATTERING_SAMPLES)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl SuiteResult {
    fn new(name: &'static str, cases: usize, max_residual: f64, tolerance: f64) -> Self {
        Self {
            name,
            cases,
            max_residual,
            tolerance,
            // NaN residuals fail.
            pass: max_residual <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub samples: usize,
    pub lambda_max: f64,
    pub suites: Vec<SuiteResult>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn failing(&self) -> impl Iterator<Item = &SuiteResult> {
        self.suites.iter().filter(|s| !s.pass)
    }
}

/// NaN-propagating maximum.
fn worst(acc: f64, x: f64) -> f64 {
    if acc.is_nan() || x.is_nan() {
        f64::NAN
    } else {
        acc.max(x)
    }
}

/// `reconstruct(decompose_u2(U)) = U` over Haar-random `U`.
pub fn decomposition(cfg: &VerifyConfig) -> SuiteResult {
    let mut rng = cfg.rng(1);
    let mut max = 0.0;
    for _ in 0..cfg.samples {
        let u = random_unitary(&mut rng);
        let d = decompose_u2(&u);
        max = worst(max, d.reconstruct().max_abs_diff(&u));
    }
    SuiteResult::new("decomposition", cfg.samples, max, cfg.tol(1e-12))
}

/// Defining relations and pairwise reality of every `u_to_alpha` output.
pub fn class_alpha(cfg: &VerifyConfig) -> SuiteResult {
    let mut rng = cfg.rng(2);
    let mut max = 0.0;
    for _ in 0..cfg.samples {
        let (alpha, _, _) = random_alpha(&mut rng, cfg.lambda_max, MIN_GAMMA2);
        let report = validate_class_alpha(&alpha, 0.0);
        max = worst(max, worst(report.max_defining(), report.max_pairwise()));
    }
    SuiteResult::new("class_alpha", cfg.samples, max, cfg.tol(1e-12))
}

/// `u_to_alpha(alpha_to_u(α)) = α`.
pub fn roundtrip_alpha(cfg: &VerifyConfig) -> SuiteResult {
    let mut rng = cfg.rng(3);
    let mut max = 0.0;
    for _ in 0..cfg.samples {
        let (alpha, geom, _) = random_alpha(&mut rng, cfg.lambda_max, MIN_GAMMA2);
        let residual = alpha_to_u(&alpha, &geom)
            .and_then(|(d, _)| u_to_alpha(&d, &geom))
            .map_or(f64::NAN, |back| back.alpha.max_abs_diff(&alpha));
        max = worst(max, residual);
    }
    SuiteResult::new("roundtrip_alpha", cfg.samples, max, cfg.tol(1e-10))
}

/// `alpha_to_u(u_to_alpha(U)) = U`, compared as matrices.
pub fn roundtrip_unitary(cfg: &VerifyConfig) -> SuiteResult {
    let mut rng = cfg.rng(4);
    let mut max = 0.0;
    for _ in 0..cfg.samples {
        let d = random_nondiagonal(&mut rng, MIN_GAMMA2);
        let geom = random_geometry(&mut rng, cfg.lambda_max);
        let residual = u_to_alpha(&d, &geom)
            .and_then(|m| alpha_to_u(&m.alpha, &geom))
            .map_or(f64::NAN, |(_, u)| u.max_abs_diff(&d.reconstruct()));
        max = worst(max, residual);
    }
    SuiteResult::new("roundtrip_unitary", cfg.samples, max, cfg.tol(1e-10))
}

/// `B_α` from the closed-form map against `A₊A₋⁻¹`.
pub fn oracle(cfg: &VerifyConfig) -> SuiteResult {
    let mut rng = cfg.rng(5);
    let mut max = 0.0;
    for _ in 0..cfg.samples {
        let d = random_nondiagonal(&mut rng, MIN_GAMMA2);
        let geom = random_geometry(&mut rng, cfg.lambda_max);
        let residual = match (u_to_alpha(&d, &geom), oracle_boundary_matrix(&d, &geom)) {
            (Ok(m), Ok(b)) => m.alpha.boundary_matrix().max_abs_diff(&b),
            _ => f64::NAN,
        };
        max = worst(max, residual);
    }
    SuiteResult::new("oracle", cfg.samples, max, cfg.tol(1e-9))
}

/// Boundary values of random domain functions satisfy BC α.
pub fn domain(cfg: &VerifyConfig) -> SuiteResult {
    let mut rng = cfg.rng(6);
    let mut max = 0.0;
    for _ in 0..cfg.samples {
        let d = random_nondiagonal(&mut rng, MIN_GAMMA2);
        let geom = random_geometry(&mut rng, cfg.lambda_max);
        let c_left = rng.complex();
        let c_right = rng.complex();
        let bd = domain_sample(&d.unitary(), &geom, c_left, c_right);
        let residual = u_to_alpha(&d, &geom).map_or(f64::NAN, |m| {
            let [a, b] = apply_bc_alpha(&m.alpha, &bd);
            a.norm().max(b.norm())
        });
        max = worst(max, residual);
    }
    SuiteResult::new("domain", cfg.samples, max, cfg.tol(1e-9))
}

fn rho_distance(a: &RhoPair, b: &RhoPair) -> f64 {
    let component = |x: ExtendedReal, y: ExtendedReal| match (x, y) {
        (ExtendedReal::Finite(x), ExtendedReal::Finite(y)) => (x - y).abs(),
        (ExtendedReal::Infinity, ExtendedReal::Infinity) => 0.0,
        _ => f64::INFINITY,
    };
    component(a.rho_plus, b.rho_plus).max(component(a.rho_minus, b.rho_minus))
}

/// Finite `ρ ↦ U ↦ ρ` roundtrips, plus the Dirichlet pair at evenly spaced
/// `Λ ∈ [0, lambda_max]`, which must land on `-e^{i√2Λ}` and come back as `∞`.
pub fn rho(cfg: &VerifyConfig) -> SuiteResult {
    let mut rng = cfg.rng(7);
    let mut max: f64 = 0.0;
    for _ in 0..cfg.samples {
        let geom = random_geometry(&mut rng, cfg.lambda_max);
        let rho = RhoPair::finite(rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0))
            .expect("finite sample");
        let u = rho_to_u(&rho, &geom);
        let residual = u_to_rho(u.m11, u.m22, &geom).map_or(f64::NAN, |back| rho_distance(&rho, &back));
        max = worst(max, residual);
    }
    for i in 0..DIRICHLET_LAMBDAS {
        let lambda = cfg.lambda_max * i as f64 / (DIRICHLET_LAMBDAS - 1) as f64;
        let geom = JunctionGeometry::new(lambda).expect("non-negative");
        let target = -geom.phase();
        let u = rho_to_u(&RhoPair::dirichlet(), &geom);
        let forward = (u.m11 - target).norm().max((u.m22 - target).norm());
        let back = u_to_rho(target, target, &geom)
            .map_or(f64::NAN, |r| rho_distance(&r, &RhoPair::dirichlet()));
        max = worst(max, worst(forward, back));
    }
    SuiteResult::new("rho", cfg.samples + DIRICHLET_LAMBDAS, max, cfg.tol(1e-10))
}

/// `||r|² + |t|² - 1|` for both incidences and `‖S†S - I‖` on the default
/// grid, alternating class-α and ρ extensions.
pub fn flux(cfg: &VerifyConfig) -> SuiteResult {
    let mut rng = cfg.rng(8);
    let ks = log_k_grid(1e-2, 1e2, 256);
    let n = cfg.scattering_samples();
    let mut max = 0.0;
    for i in 0..n {
        let (ext, geom) = if i % 2 == 0 {
            let (alpha, geom, _) = random_alpha(&mut rng, cfg.lambda_max, MIN_GAMMA2);
            (Extension::Alpha(alpha), geom)
        } else {
            (Extension::Rho(random_rho(&mut rng)), random_geometry(&mut rng, cfg.lambda_max))
        };
        for &k in &ks {
            let mut residual = smatrix(&ext, &geom, k).map_or(f64::NAN, |s| s.unitarity_residual());
            for side in [Side::Left, Side::Right] {
                let r = scatter(&ext, &geom, k, side).map_or(f64::NAN, |s| s.flux_residual.abs());
                residual = worst(residual, r);
            }
            max = worst(max, residual);
        }
    }
    SuiteResult::new("flux", n * ks.len(), max, cfg.tol(1e-12))
}

/// `arg t(e^{iφ}α) - arg t(α) = φ (mod 2π)`.
pub fn phase_covariance(cfg: &VerifyConfig) -> SuiteResult {
    let mut rng = cfg.rng(9);
    let n = cfg.scattering_samples();
    let mut max = 0.0;
    let mut done = 0;
    while done < n {
        let (alpha, geom, _) = random_alpha(&mut rng, cfg.lambda_max, MIN_GAMMA2);
        let phi = rng.uniform(0.0, TAU);
        let k = 10f64.powf(rng.uniform(-2.0, 2.0));
        // Skip cases with no measurable transmission.
        let Ok(base) = transmission_phase(&alpha, &geom, k) else {
            continue;
        };
        let residual = transmission_phase(&alpha.with_phase(phi), &geom, k)
            .map_or(f64::NAN, |shifted| circular_distance(shifted - base, phi));
        max = worst(max, residual);
        done += 1;
    }
    SuiteResult::new("phase_covariance", n, max, cfg.tol(1e-10))
}

pub fn run_verify(cfg: &VerifyConfig) -> VerifyReport {
    let suites = vec![
        decomposition(cfg),
        class_alpha(cfg),
        roundtrip_alpha(cfg),
        roundtrip_unitary(cfg),
        oracle(cfg),
        domain(cfg),
        rho(cfg),
        flux(cfg),
        phase_covariance(cfg),
    ];
    let pass = suites.iter().all(|s| s.pass);
    VerifyReport {
        seed: cfg.seed,
        samples: cfg.samples,
        lambda_max: cfg.lambda_max,
        suites,
        pass,
    }
}
