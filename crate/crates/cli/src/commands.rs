use std::path::Path;

use serde::{Deserialize, Serialize};

use junction::angle;
use junction::scattering::{bound_states, log_k_grid, sweep, TRANSMISSION_FLOOR};
use junction::verify::{run_verify, VerifyConfig};
use junction::{
    alpha_to_u, classify, decompose_u2, extract_phase, rho_to_u, u_to_alpha, u_to_rho,
    validate_class_alpha, AlphaVector, BoundState, C2Matrix, Classification, Complex64, Extension,
    JunctionGeometry, QuaternionDecomposition, RhoPair, UnitaryU2, ValidationReport,
};

use crate::failure::Failure;
use crate::io::{csv_float, open_output, read_payload, write_error, write_json};
use crate::CliConfig;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct UPayload {
    u: C2Matrix,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlphaPayload {
    alpha: AlphaVector,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RhoPayload {
    rho: RhoPair,
}

#[derive(Serialize)]
struct DecompositionOut {
    gamma1: Complex64,
    gamma2: Complex64,
    gamma3: Complex64,
}

impl From<&QuaternionDecomposition> for DecompositionOut {
    fn from(d: &QuaternionDecomposition) -> Self {
        Self {
            gamma1: d.gamma1,
            gamma2: d.gamma2,
            gamma3: d.gamma3,
        }
    }
}

fn geometry(cfg: &CliConfig) -> Result<JunctionGeometry, Failure> {
    Ok(JunctionGeometry::new(cfg.lambda)?)
}

fn read_unitary(cfg: &CliConfig, file: Option<&Path>) -> Result<UnitaryU2, Failure> {
    let payload: UPayload = read_payload(file)?;
    Ok(UnitaryU2::new(payload.u, cfg.tol)?)
}

/// Class-α check with the tolerance taken relative to `max(1, max|α|²)`,
/// the size of the products being compared.
fn checked_alpha(cfg: &CliConfig, alpha: &AlphaVector) -> Result<ValidationReport, Failure> {
    let scale = alpha.max_abs().powi(2).max(1.0);
    let report = validate_class_alpha(alpha, cfg.tol * scale);
    if report.pass {
        Ok(report)
    } else {
        Err(report.into_error().into())
    }
}

fn emit<T: Serialize>(cfg: &CliConfig, value: &T) -> Result<(), Failure> {
    let mut out = open_output(&cfg.output)?;
    write_json(&mut *out, value)
}

pub fn decompose(cfg: &CliConfig, file: Option<&Path>) -> Result<(), Failure> {
    #[derive(Serialize)]
    struct Out {
        #[serde(flatten)]
        gammas: DecompositionOut,
        residual: f64,
        diagonal: bool,
    }
    let u = read_unitary(cfg, file)?;
    let d = decompose_u2(&u);
    emit(
        cfg,
        &Out {
            gammas: (&d).into(),
            residual: d.reconstruct().max_abs_diff(&u),
            diagonal: matches!(classify(&u, cfg.tol), Classification::Diagonal { .. }),
        },
    )
}

pub fn u2alpha(cfg: &CliConfig, file: Option<&Path>) -> Result<(), Failure> {
    #[derive(Serialize)]
    struct Out {
        alpha: AlphaVector,
        decomposition: DecompositionOut,
        ill_conditioned: bool,
        validation: ValidationReport,
    }
    let u = read_unitary(cfg, file)?;
    let geom = geometry(cfg)?;
    let d = match classify(&u, cfg.tol) {
        Classification::Diagonal { .. } => {
            return Err(Failure::validation("U is diagonal; use u2rho"));
        }
        Classification::NonDiagonal(d) => d,
    };
    let map = u_to_alpha(&d, &geom)?;
    let scale = map.alpha.max_abs().powi(2).max(1.0);
    emit(
        cfg,
        &Out {
            alpha: map.alpha,
            decomposition: (&d).into(),
            ill_conditioned: map.ill_conditioned,
            validation: validate_class_alpha(&map.alpha, cfg.tol * scale),
        },
    )
}

pub fn alpha2u(cfg: &CliConfig, file: Option<&Path>) -> Result<(), Failure> {
    #[derive(Serialize)]
    struct Out {
        u: C2Matrix,
        decomposition: DecompositionOut,
        validation: ValidationReport,
    }
    let payload: AlphaPayload = read_payload(file)?;
    let geom = geometry(cfg)?;
    let validation = checked_alpha(cfg, &payload.alpha)?;
    let (d, u) = alpha_to_u(&payload.alpha, &geom)?;
    emit(
        cfg,
        &Out {
            u: u.into_matrix(),
            decomposition: (&d).into(),
            validation,
        },
    )
}

pub fn u2rho(cfg: &CliConfig, file: Option<&Path>) -> Result<(), Failure> {
    #[derive(Serialize)]
    struct Out {
        rho: RhoPair,
    }
    let u = read_unitary(cfg, file)?;
    let geom = geometry(cfg)?;
    match classify(&u, cfg.tol) {
        Classification::Diagonal { gamma_l, gamma_r } => emit(
            cfg,
            &Out {
                rho: u_to_rho(gamma_l, gamma_r, &geom)?,
            },
        ),
        Classification::NonDiagonal(_) => Err(Failure::validation("U is not diagonal; use u2alpha")),
    }
}

pub fn rho2u(cfg: &CliConfig, file: Option<&Path>) -> Result<(), Failure> {
    #[derive(Serialize)]
    struct Out {
        u: C2Matrix,
    }
    let payload: RhoPayload = read_payload(file)?;
    let geom = geometry(cfg)?;
    emit(
        cfg,
        &Out {
            u: rho_to_u(&payload.rho, &geom).into_matrix(),
        },
    )
}

pub fn phase(cfg: &CliConfig, file: Option<&Path>) -> Result<(), Failure> {
    #[derive(Serialize)]
    struct Out {
        theta: f64,
        a: [f64; 4],
        determinant: f64,
    }
    let payload: AlphaPayload = read_payload(file)?;
    checked_alpha(cfg, &payload.alpha)?;
    let form = extract_phase(&payload.alpha)?;
    emit(
        cfg,
        &Out {
            theta: form.theta,
            a: [form.a1, form.a2, form.a3, form.a4],
            determinant: form.determinant(),
        },
    )
}

fn read_extension(cfg: &CliConfig, file: Option<&Path>) -> Result<Extension, Failure> {
    let ext: Extension = read_payload(file)?;
    if let Extension::Alpha(alpha) = &ext {
        checked_alpha(cfg, alpha)?;
    }
    Ok(ext)
}

pub fn scatter(cfg: &CliConfig, file: Option<&Path>) -> Result<(), Failure> {
    let ext = read_extension(cfg, file)?;
    let geom = geometry(cfg)?;
    let ks = log_k_grid(cfg.k_min, cfg.k_max, cfg.k_steps);
    let rows = sweep(&ext, &geom, &ks, cfg.side)?;

    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(open_output(&cfg.output)?);
    let csv_error = |e: csv::Error| Failure::config(format!("cannot write output: {e}"));
    writer
        .write_record(["k", "re_r", "im_r", "re_t", "im_t", "flux_residual", "arg_t"])
        .map_err(csv_error)?;
    let mut worst: Option<(f64, f64)> = None;
    for row in &rows {
        let arg_t = if row.t.norm() > TRANSMISSION_FLOOR {
            angle::arg(row.t)
        } else {
            f64::NAN
        };
        writer
            .write_record([row.k, row.r.re, row.r.im, row.t.re, row.t.im, row.flux_residual, arg_t].map(csv_float))
            .map_err(csv_error)?;
        let flux = row.flux_residual.abs();
        if !(flux < cfg.tol) && worst.is_none_or(|(_, w)| !(flux <= w)) {
            worst = Some((row.k, flux));
        }
    }
    writer.flush().map_err(write_error)?;
    match worst {
        None => Ok(()),
        Some((k, flux)) => Err(Failure::validation(format!(
            "flux conservation violated: |flux_residual| = {flux:.3e} at k = {k} exceeds {:.1e}",
            cfg.tol
        ))),
    }
}

pub fn bound(cfg: &CliConfig, file: Option<&Path>) -> Result<(), Failure> {
    #[derive(Serialize)]
    struct Out {
        states: Vec<BoundState>,
    }
    let ext = read_extension(cfg, file)?;
    let geom = geometry(cfg)?;
    emit(
        cfg,
        &Out {
            states: bound_states(&ext, &geom)?,
        },
    )
}

pub fn verify(cfg: &CliConfig) -> Result<(), Failure> {
    let report = run_verify(&VerifyConfig {
        seed: cfg.seed,
        samples: cfg.samples,
        lambda_max: cfg.lambda_max,
        tol_override: cfg.tol_explicit.then_some(cfg.tol),
    });
    emit(cfg, &report)?;
    if report.pass {
        return Ok(());
    }
    let failing: Vec<String> = report
        .failing()
        .map(|s| format!("{} (max residual {:.3e} > {:.1e})", s.name, s.max_residual, s.tolerance))
        .collect();
    Err(Failure::validation(format!("verification failed: {}", failing.join(", "))))
}
