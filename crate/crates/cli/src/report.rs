//! Report assembly. Reports are JSON with sorted object keys and a fixed
//! convention block, so identical inputs on the same version produce
//! byte-identical output.

use serde_json::{json, Value};
use spinor_polar::{CMatrix, PolarResiduals, Spinor};

/// Version tag embedded in every report.
pub fn version_tag() -> String {
    format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION"))
}

/// The convention block; external reproduction is unambiguous only if these
/// match the consumer's definitions.
pub fn conventions() -> Value {
    json!({
        "signature": "(+,-,-,-)",
        "epsilon_lower_0123": 1.0,
        "pi": "i gamma^0 gamma^1 gamma^2 gamma^3 = diag(-1,-1,+1,+1)",
        "sigma_ab": "[gamma^a, gamma^b] / 4",
        "charge_conjugation": "psi -> i gamma^2 conj(psi)",
        "antisymmetrisation": "X_[a Y_b] = X_a Y_b - X_b Y_a",
    })
}

/// A spinor as four `[re, im]` pairs.
pub fn spinor_pairs(s: &Spinor) -> Value {
    Value::Array(
        s.components
            .iter()
            .map(|z| json!([z.re, z.im]))
            .collect(),
    )
}

/// A 4×4 complex matrix as rows of `[re, im]` pairs.
pub fn matrix_pairs(m: &CMatrix) -> Value {
    Value::Array(
        (0..4)
            .map(|i| {
                Value::Array((0..4).map(|j| json!([m[(i, j)].re, m[(i, j)].im])).collect())
            })
            .collect(),
    )
}

/// Residuals of a polar system, tagged by class.
pub fn polar_residuals_json(p: &PolarResiduals) -> Value {
    let body = match p {
        PolarResiduals::Regular { eq_beta, eq_phi } => json!({
            "eq_beta": eq_beta,
            "eq_phi": eq_phi,
        }),
        PolarResiduals::FlagDipole { sing1, sing2, sing3, sing4 } => json!({
            "sing1": sing1,
            "sing2": sing2,
            "sing3": sing3,
            "sing4": sing4,
        }),
        PolarResiduals::Flagpole { r_dot_u, b_dot_u, flag } => json!({
            "r_dot_u": r_dot_u,
            "b_dot_u": b_dot_u,
            "flag": flag,
        }),
        PolarResiduals::Dipole { r_dot_u, p_dot_u, flag, mass_residual } => json!({
            "r_dot_u": r_dot_u,
            "p_dot_u": p_dot_u,
            "flag": flag,
            "mass_residual": mass_residual,
        }),
    };
    json!({
        "class": p.class(),
        "equations": body,
        "max_abs": p.max_abs(),
    })
}

/// Assembles the full report envelope around command-specific results.
pub fn envelope(
    command: &str,
    tolerances: Value,
    results: Value,
    pass: bool,
) -> Value {
    json!({
        "version": version_tag(),
        "command": command,
        "conventions": conventions(),
        "tolerances": tolerances,
        "results": results,
        "pass": pass,
    })
}

/// Renders a report deterministically: pretty JSON plus a trailing newline.
pub fn render(report: &Value) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("reports contain only finite numbers");
    text.push('\n');
    text
}
