//! Command implementations. Each returns the results block of the report
//! plus the pass/fail verdict that decides the exit status.

use crate::input::{InputDoc, InputError};
use crate::report;
use serde_json::{json, Value};
use spinor_polar::{
    classify, compute_bilinears, contract_r, decompose_regular, decompose_singular,
    dirac_residual, expand, chiral_split, fierz_check, flagpole_dirac_matrix, polar_residuals,
    reconstruct_regular, reconstruct_singular, verify_expansion, Spinor, SpinorSampler,
};
use std::sync::Arc;

/// Tolerances and the derivative step, after flag overrides.
#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub tol_class: f64,
    pub tol_residual: f64,
    pub fd_step: f64,
}

impl Settings {
    fn json(&self) -> Value {
        json!({
            "class": self.tol_class,
            "residual": self.tol_residual,
            "fd_step": self.fd_step,
        })
    }
}

/// A finished job: the rendered report and the verdict.
pub struct Outcome {
    pub report: Value,
    pub pass: bool,
}

/// Anything that prevents a job from being evaluated; exits with status 2.
#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    Input(#[from] InputError),
    #[error("{0}")]
    Library(#[from] spinor_polar::Error),
}

fn max_component_distance(a: &Spinor, b: &Spinor) -> f64 {
    (a.components - b.components).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn max_abs_column(v: &spinor_polar::CVector) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Dispatches one command on one input document.
pub fn run(command: &str, doc: &InputDoc, settings: Settings) -> Result<Outcome, RunError> {
    let (results, pass) = match command {
        "classify" => run_classify(doc, settings)?,
        "bilinears" => run_bilinears(doc)?,
        "fierz" => run_fierz(doc, settings)?,
        "polar" => run_polar(doc, settings)?,
        "dirac-check" => run_dirac_check(doc, settings)?,
        "flagpole-matrix" => run_flagpole_matrix(doc, settings)?,
        "expand" => run_expand(doc, settings)?,
        other => {
            return Err(RunError::Input(InputError::Invalid(format!(
                "unknown command {other:?}"
            ))))
        }
    };
    let report = report::envelope(command, settings.json(), results, pass);
    Ok(Outcome { report, pass })
}

fn run_classify(doc: &InputDoc, settings: Settings) -> Result<(Value, bool), RunError> {
    let psi = doc.spinor()?;
    let class = classify(&psi, settings.tol_class)?;
    let results = json!({
        "label": class.label.name(),
        "regular": class.label.is_regular(),
        "normalised_magnitudes": {
            "phi": class.magnitudes.phi,
            "theta": class.magnitudes.theta,
            "s_max": class.magnitudes.s_max,
            "m_max": class.magnitudes.m_max,
        },
    });
    Ok((results, true))
}

fn run_bilinears(doc: &InputDoc) -> Result<(Value, bool), RunError> {
    let psi = doc.spinor()?;
    let b = compute_bilinears(&psi)?;
    let results = json!({
        "phi": b.phi,
        "theta": b.theta,
        "s": b.s,
        "u": b.u,
        "sigma": b.sigma,
        "m": b.m,
    });
    Ok((results, true))
}

fn run_fierz(doc: &InputDoc, settings: Settings) -> Result<(Value, bool), RunError> {
    let psi = doc.spinor()?;
    let b = compute_bilinears(&psi)?;
    let reportage = fierz_check(&b);
    let table: Vec<Value> = reportage
        .residuals
        .iter()
        .map(|(identity, residual)| json!({"identity": identity, "residual": residual}))
        .collect();
    let max = reportage.max_residual();
    let pass = max <= settings.tol_residual;
    let results = json!({
        "residuals": table,
        "max_residual": max,
    });
    Ok((results, pass))
}

fn run_polar(doc: &InputDoc, settings: Settings) -> Result<(Value, bool), RunError> {
    let psi = doc.spinor()?;
    let class = classify(&psi, settings.tol_class)?;
    if class.label.is_regular() {
        let polar = decompose_regular(&psi)?;
        let error = max_component_distance(&reconstruct_regular(&polar), &psi);
        let results = json!({
            "label": class.label.name(),
            "form": "regular",
            "phi": polar.phi,
            "beta": polar.beta,
            "rapidity": polar.rapidity,
            "rotation": polar.rotation,
            "phase": polar.phase,
            "u": polar.u,
            "s": polar.s,
            "round_trip_error": error,
        });
        Ok((results, error <= settings.tol_residual))
    } else {
        let polar = decompose_singular(&psi)?;
        let error = max_component_distance(&reconstruct_singular(&polar, polar.alpha()), &psi);
        let results = json!({
            "label": class.label.name(),
            "form": "singular",
            "sin_alpha": polar.sin_alpha,
            "alpha": polar.alpha(),
            "round_trip_error": error,
        });
        Ok((results, error <= settings.tol_residual))
    }
}

fn run_dirac_check(doc: &InputDoc, settings: Settings) -> Result<(Value, bool), RunError> {
    let psi = doc.spinor()?;
    let mass = doc.mass()?;
    let conn = doc.connection_or_zero()?;
    let points = doc.points_or_origin()?;

    let constant = psi;
    let sampler: SpinorSampler = Arc::new(move |_| constant);
    let mut rows = Vec::with_capacity(points.len());
    let mut worst_component = 0.0f64;
    let mut worst_polar = 0.0f64;
    for x in points {
        let p = psi;
        let component = dirac_residual(move |_| p, &conn, x, mass, settings.fd_step)?;
        let polar = polar_residuals(&sampler, &conn, x, mass, settings.fd_step)?;
        worst_component = worst_component.max(component.norm);
        worst_polar = worst_polar.max(polar.max_abs());
        rows.push(json!({
            "point": x,
            "component_residual": report::spinor_pairs(&component.residual),
            "component_norm": component.norm,
            "polar": report::polar_residuals_json(&polar),
        }));
    }
    let pass = worst_component <= settings.tol_residual && worst_polar <= settings.tol_residual;
    let results = json!({
        "points": rows,
        "worst_component_norm": worst_component,
        "worst_polar_max_abs": worst_polar,
    });
    Ok((results, pass))
}

fn run_flagpole_matrix(doc: &InputDoc, settings: Settings) -> Result<(Value, bool), RunError> {
    let mass = doc.mass()?;
    let conn = doc.connection()?;
    let pair = contract_r(&conn.r_at([0.0; 4]));
    let matrix = flagpole_dirac_matrix(&pair.r, &pair.b, mass);

    let mut results = json!({
        "r_contraction": pair.r,
        "b_contraction": pair.b,
        "matrix": report::matrix_pairs(&matrix),
    });
    let mut pass = true;
    if doc.spinor.is_some() {
        let psi = doc.spinor()?;
        let residual = max_abs_column(&(matrix * psi.components));
        pass = residual <= settings.tol_residual;
        results["annihilation"] = json!({
            "spinor": report::spinor_pairs(&psi),
            "max_abs": residual,
        });
    }
    Ok((results, pass))
}

fn run_expand(doc: &InputDoc, settings: Settings) -> Result<(Value, bool), RunError> {
    let psi0 = doc.spinor()?;
    let conn = doc.connection()?;
    let path = doc.path()?;
    let expansion = expand(&psi0, &conn, &path)?;
    let (left, right) = chiral_split(&expansion.spinor);
    let verification = verify_expansion(&psi0, &conn, &path, settings.fd_step)?;

    let mut results = json!({
        "endpoint": report::spinor_pairs(&expansion.spinor),
        "steps": expansion.step_count,
        "ordering": expansion.ordering,
        "chiral_left": report::spinor_pairs(&left),
        "chiral_right": report::spinor_pairs(&right),
        "verification_residual": verification,
    });
    let mut pass = true;
    if let Some(expected) = doc.expected()? {
        let distance = max_component_distance(&expansion.spinor, &expected);
        pass = distance <= settings.tol_residual;
        results["expected_distance"] = json!(distance);
    }
    Ok((results, pass))
}
