//! Acceptance suite. Prints one `[PASS]`/`[FAIL]` line per criterion and
//! exits non-zero if any criterion fails.

use std::f64::consts::SQRT_2;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use junction::deficiency::{normalization, r_plus_boundary, DeficiencyFunction, DeficiencyTag};
use junction::scattering::{bound_states, default_k_grid, scatter};
use junction::verify::{self, SuiteResult, VerifyConfig};
use junction::{AlphaVector, Complex64, Extension, JunctionGeometry, Side};

const SEED: u64 = 20_240_601;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn config(samples: usize) -> VerifyConfig {
    VerifyConfig {
        seed: SEED,
        samples,
        lambda_max: 3.0,
        tol_override: None,
    }
}

fn from_suite(s: SuiteResult) -> Outcome {
    Outcome {
        pass: s.pass,
        detail: format!(
            "{} over {} cases: max residual {:.3e} (tol {:.0e})",
            s.name, s.cases, s.max_residual, s.tolerance
        ),
    }
}

fn timed(limit: Duration, run: impl FnOnce() -> SuiteResult) -> Outcome {
    let start = Instant::now();
    let suite = run();
    let elapsed = start.elapsed();
    let mut out = from_suite(suite);
    out.pass &= elapsed < limit;
    out.detail += &format!(", {:.1} ms (limit {} ms)", elapsed.as_secs_f64() * 1e3, limit.as_millis());
    out
}

fn decomposition() -> Outcome {
    timed(Duration::from_secs(1), || verify::decomposition(&config(1000)))
}

fn roundtrip_alpha() -> Outcome {
    timed(Duration::from_secs(1), || verify::roundtrip_alpha(&config(1000)))
}

fn roundtrip_unitary() -> Outcome {
    from_suite(verify::roundtrip_unitary(&config(1000)))
}

fn oracle() -> Outcome {
    from_suite(verify::oracle(&config(1000)))
}

fn domain() -> Outcome {
    from_suite(verify::domain(&config(1000)))
}

fn rho() -> Outcome {
    from_suite(verify::rho(&config(1000)))
}

fn class_alpha() -> Outcome {
    from_suite(verify::class_alpha(&config(1000)))
}

fn flux() -> Outcome {
    from_suite(verify::flux(&config(1000)))
}

fn phase_covariance() -> Outcome {
    from_suite(verify::phase_covariance(&config(1000)))
}

fn delta_potential() -> Outcome {
    let geom = JunctionGeometry::point();
    let ks = default_k_grid();
    let mut max_t: f64 = 0.0;
    let mut max_e: f64 = 0.0;
    let mut count_ok = true;
    for c in [0.5, 1.0, 2.0] {
        let ext = Extension::Alpha(AlphaVector::delta(c));
        for &k in &ks {
            let expected = k * k / (k * k + c * c / 4.0);
            for side in [Side::Left, Side::Right] {
                let t2 = scatter(&ext, &geom, k, side).map_or(f64::NAN, |s| s.t.norm_sqr());
                max_t = max_t.max((t2 - expected).abs()).max(if t2.is_nan() { f64::INFINITY } else { 0.0 });
            }
        }
        match bound_states(&ext, &geom) {
            Ok(states) if states.len() == 1 => {
                max_e = max_e.max((states[0].energy + c * c / 4.0).abs());
            }
            _ => count_ok = false,
        }
    }
    Outcome {
        pass: count_ok && max_t < 1e-10 && max_e < 1e-12,
        detail: format!(
            "delta well c in {{0.5, 1, 2}}: max ||t|^2 - k^2/(k^2+c^2/4)| {max_t:.3e} (tol 1e-10), \
             max |E + c^2/4| {max_e:.3e}, one bound state each: {count_ok}"
        ),
    }
}

/// Composite Simpson rule for `∫_0^L |f(endpoint ∓ s)|² ds` with `L = 60`,
/// beyond which every deficiency function is below `e^{-42}`.
fn quadrature_norm(f: &DeficiencyFunction, lambda: f64) -> f64 {
    let outward = match f.tag {
        DeficiencyTag::LPlus | DeficiencyTag::LMinus => -1.0,
        DeficiencyTag::RPlus | DeficiencyTag::RMinus => 1.0,
    };
    let length = 60.0;
    let n = 120_000;
    let h = length / n as f64;
    let g = |s: f64| f.eval(outward * (lambda + s)).unwrap().norm_sqr();
    let mut sum = g(0.0) + g(length);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * g(i as f64 * h);
    }
    sum * h / 3.0
}

/// `|-f'' - λf|` with `f''` from a central difference of the exact `f'`.
fn eigen_residual(f: &DeficiencyFunction, x: f64, h: f64) -> f64 {
    let second = (f.derivative(x + h).unwrap() - f.derivative(x - h).unwrap()) / (2.0 * h);
    (-second - f.tag.eigenvalue() * f.eval(x).unwrap()).norm()
}

/// `|f' - (f(x+h) - f(x-h))/2h|`.
fn derivative_residual(f: &DeficiencyFunction, x: f64, h: f64) -> f64 {
    let fd = (f.eval(x + h).unwrap() - f.eval(x - h).unwrap()) / (2.0 * h);
    (fd - f.derivative(x).unwrap()).norm()
}

fn deficiency() -> Outcome {
    let mut max_norm: f64 = 0.0;
    let mut max_quad: f64 = 0.0;
    let mut max_rel: f64 = 0.0;
    let mut min_ratio = f64::INFINITY;
    let mut max_ratio: f64 = 0.0;
    let mut max_fd: f64 = 0.0;
    for lambda in [0.0, 0.3, 1.0, 2.2, 3.0] {
        let geom = JunctionGeometry::new(lambda).unwrap();
        for tag in DeficiencyTag::ALL {
            let f = DeficiencyFunction::new(tag, geom);
            max_norm = max_norm.max((f.norm_sqr() - 1.0).abs());
            max_quad = max_quad.max((quadrature_norm(&f, lambda) - 1.0).abs());

            let x = match tag {
                DeficiencyTag::LPlus | DeficiencyTag::LMinus => -lambda - 0.5,
                _ => lambda + 0.5,
            };
            for residual in [eigen_residual, derivative_residual] {
                let e1 = residual(&f, x, 1e-4);
                let e2 = residual(&f, x, 5e-5);
                max_fd = max_fd.max(e1);
                let ratio = e1 / e2;
                min_ratio = min_ratio.min(ratio);
                max_ratio = max_ratio.max(ratio);
            }
        }
        let bv = |tag| DeficiencyFunction::new(tag, geom).boundary_value();
        let r = r_plus_boundary(&geom);
        let expected = normalization(&geom) * Complex64::new(-1.0, 1.0).scale(lambda / SQRT_2).exp();
        let rel = [
            (bv(DeficiencyTag::LPlus) - bv(DeficiencyTag::RPlus)).norm(),
            (bv(DeficiencyTag::RPlus) - expected).norm(),
            (bv(DeficiencyTag::LMinus) - bv(DeficiencyTag::RMinus)).norm(),
            (bv(DeficiencyTag::RMinus) - r.conj()).norm(),
            (r.conj() - r * Complex64::cis(-SQRT_2 * lambda)).norm(),
        ];
        max_rel = rel.iter().fold(max_rel, |m, &x| m.max(x));
    }
    // Second-order convergence: halving h divides the error by about four.
    let converges = (3.5..=4.5).contains(&min_ratio) && (3.5..=4.5).contains(&max_ratio);
    Outcome {
        pass: max_norm < 1e-10 && max_quad < 1e-10 && max_rel < 1e-12 && converges && max_fd < 1e-7,
        detail: format!(
            "norm error {max_norm:.3e} (closed form), {max_quad:.3e} (quadrature), tol 1e-10; \
             boundary identities {max_rel:.3e} (tol 1e-12); finite differences at h=1e-4 {max_fd:.3e}, \
             error ratio under h-halving in [{min_ratio:.3}, {max_ratio:.3}]"
        ),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("decomposition roundtrip", decomposition),
        ("alpha -> U -> alpha roundtrip", roundtrip_alpha),
        ("U -> alpha -> U roundtrip", roundtrip_unitary),
        ("closed-form map vs boundary-matrix oracle", oracle),
        ("domain functions satisfy their boundary condition", domain),
        ("rho correspondence", rho),
        ("class alpha invariants", class_alpha),
        ("flux conservation and S-matrix unitarity", flux),
        ("transmission phase covariance", phase_covariance),
        ("delta-potential limit", delta_potential),
        ("deficiency basis", deficiency),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {}: {name}: {}", i + 1, outcome.detail);
        failures += usize::from(!outcome.pass);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
