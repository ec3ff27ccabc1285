//! Input document: one JSON file carrying whichever of spinor, mass,
//! connection, path, and sample points the requested command needs.
//!
//! Complex numbers are two-element arrays `[re, im]`; a spinor is four such
//! pairs. Connection fields are `"constant"` (a gauge-momentum vector plus a
//! sparse list of independent `R_{ij mu}` components with `i < j`) or
//! `"linear"` (the constant part plus gradient coefficients).

use num_complex::Complex64;
use serde::Deserialize;
use spinor_polar::{ConnectionField, Path as WavePath, RTensor, Spinor};
use std::sync::Arc;

/// Everything a job file may carry.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDoc {
    /// Spinor under study, four `[re, im]` pairs.
    pub spinor: Option<[[f64; 2]; 4]>,
    /// Optional reference spinor an `expand` result is compared against.
    pub expected: Option<[[f64; 2]; 4]>,
    /// Mass parameter for first-order equations.
    pub mass: Option<f64>,
    /// Tensorial connection, constant or linear.
    pub connection: Option<ConnectionSpec>,
    /// Straight path for the plane-wave expansion.
    pub path: Option<PathSpec>,
    /// Space-time points at which residuals are sampled.
    pub points: Option<Vec<[f64; 4]>>,
}

/// Connection data as written in the job file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectionSpec {
    /// `"constant"` or `"linear"`.
    pub kind: String,
    /// Gauge momentum `P_mu` at the origin.
    #[serde(default)]
    pub p: [f64; 4],
    /// Independent components of `R_{ij mu}` at the origin (`i < j`).
    #[serde(default)]
    pub r: Vec<REntry>,
    /// `d P_mu / d x^nu` as `p_gradient[mu][nu]` (linear fields only).
    pub p_gradient: Option<[[f64; 4]; 4]>,
    /// `d R_{ij mu} / d x^nu` entries (linear fields only).
    pub r_gradient: Option<Vec<RGradEntry>>,
}

/// One independent component of the space-time connection.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct REntry {
    pub i: usize,
    pub j: usize,
    pub mu: usize,
    pub value: f64,
}

/// One gradient coefficient of the space-time connection.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RGradEntry {
    pub i: usize,
    pub j: usize,
    pub mu: usize,
    pub nu: usize,
    pub value: f64,
}

/// Straight-line path with a step count.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathSpec {
    pub start: [f64; 4],
    pub end: [f64; 4],
    pub steps: usize,
}

/// Problems with the job file; all of them exit with status 2.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read input file: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot parse input document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

impl InputDoc {
    /// Loads and parses the job file.
    pub fn load(path: &std::path::Path) -> Result<Self, InputError> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    /// The spinor, required by most commands.
    pub fn spinor(&self) -> Result<Spinor, InputError> {
        let pairs = self
            .spinor
            .ok_or_else(|| InputError::Invalid("this command requires a \"spinor\" field".into()))?;
        spinor_from_pairs(&pairs)
    }

    /// The comparison spinor for `expand`, if present.
    pub fn expected(&self) -> Result<Option<Spinor>, InputError> {
        self.expected.as_ref().map(spinor_from_pairs).transpose()
    }

    /// The mass parameter.
    pub fn mass(&self) -> Result<f64, InputError> {
        let mass = self
            .mass
            .ok_or_else(|| InputError::Invalid("this command requires a \"mass\" field".into()))?;
        if !mass.is_finite() {
            return Err(InputError::Invalid(format!("mass must be finite, got {mass}")));
        }
        Ok(mass)
    }

    /// The connection field; the zero field when the document omits it.
    pub fn connection_or_zero(&self) -> Result<ConnectionField, InputError> {
        match &self.connection {
            None => Ok(ConnectionField::zero()),
            Some(spec) => spec.build(),
        }
    }

    /// The connection field, required.
    pub fn connection(&self) -> Result<ConnectionField, InputError> {
        let spec = self
            .connection
            .as_ref()
            .ok_or_else(|| InputError::Invalid("this command requires a \"connection\" field".into()))?;
        spec.build()
    }

    /// The expansion path.
    pub fn path(&self) -> Result<WavePath, InputError> {
        let spec = self
            .path
            .as_ref()
            .ok_or_else(|| InputError::Invalid("this command requires a \"path\" field".into()))?;
        let all_finite = spec.start.iter().chain(spec.end.iter()).all(|v| v.is_finite());
        if !all_finite {
            return Err(InputError::Invalid("path endpoints must be finite".into()));
        }
        if spec.steps == 0 {
            return Err(InputError::Invalid("path must have at least one step".into()));
        }
        Ok(WavePath { start: spec.start, end: spec.end, steps: spec.steps })
    }

    /// Sample points for residual evaluation; the origin when omitted.
    pub fn points_or_origin(&self) -> Result<Vec<[f64; 4]>, InputError> {
        match &self.points {
            None => Ok(vec![[0.0; 4]]),
            Some(list) if list.is_empty() => {
                Err(InputError::Invalid("\"points\" must not be empty".into()))
            }
            Some(list) => {
                for p in list {
                    if !p.iter().all(|v| v.is_finite()) {
                        return Err(InputError::Invalid("sample points must be finite".into()));
                    }
                }
                Ok(list.clone())
            }
        }
    }
}

fn spinor_from_pairs(pairs: &[[f64; 2]; 4]) -> Result<Spinor, InputError> {
    for (k, pair) in pairs.iter().enumerate() {
        if !(pair[0].is_finite() && pair[1].is_finite()) {
            return Err(InputError::Invalid(format!(
                "spinor component {k} is not a finite [re, im] pair"
            )));
        }
    }
    Ok(Spinor::new(
        Complex64::new(pairs[0][0], pairs[0][1]),
        Complex64::new(pairs[1][0], pairs[1][1]),
        Complex64::new(pairs[2][0], pairs[2][1]),
        Complex64::new(pairs[3][0], pairs[3][1]),
    ))
}

fn check_r_indices(i: usize, j: usize, mu: usize) -> Result<(), InputError> {
    if i >= j {
        return Err(InputError::Invalid(format!(
            "R entry must have i < j (the j > i half follows by antisymmetry), got i = {i}, j = {j}"
        )));
    }
    if j > 3 || mu > 3 {
        return Err(InputError::Invalid(format!(
            "R entry indices must lie in 0..=3, got (i, j, mu) = ({i}, {j}, {mu})"
        )));
    }
    Ok(())
}

impl ConnectionSpec {
    fn base_tensor(&self) -> Result<RTensor, InputError> {
        let mut r: RTensor = [[[0.0; 4]; 4]; 4];
        for entry in &self.r {
            check_r_indices(entry.i, entry.j, entry.mu)?;
            if !entry.value.is_finite() {
                return Err(InputError::Invalid("R entry value must be finite".into()));
            }
            r[entry.i][entry.j][entry.mu] = entry.value;
            r[entry.j][entry.i][entry.mu] = -entry.value;
        }
        Ok(r)
    }

    fn build(&self) -> Result<ConnectionField, InputError> {
        if !self.p.iter().all(|v| v.is_finite()) {
            return Err(InputError::Invalid("P components must be finite".into()));
        }
        let base_r = self.base_tensor()?;
        match self.kind.as_str() {
            "constant" => {
                if self.p_gradient.is_some() || self.r_gradient.is_some() {
                    return Err(InputError::Invalid(
                        "gradient coefficients are only meaningful for kind = \"linear\"".into(),
                    ));
                }
                Ok(ConnectionField::constant(self.p, base_r))
            }
            "linear" => {
                let p_grad = self.p_gradient.unwrap_or([[0.0; 4]; 4]);
                if !p_grad.iter().flatten().all(|v| v.is_finite()) {
                    return Err(InputError::Invalid("P gradient must be finite".into()));
                }
                let mut r_grad: [RTensor; 4] = [[[[0.0; 4]; 4]; 4]; 4];
                for entry in self.r_gradient.as_deref().unwrap_or(&[]) {
                    check_r_indices(entry.i, entry.j, entry.mu)?;
                    if entry.nu > 3 {
                        return Err(InputError::Invalid(format!(
                            "gradient direction nu must lie in 0..=3, got {}",
                            entry.nu
                        )));
                    }
                    if !entry.value.is_finite() {
                        return Err(InputError::Invalid("R gradient value must be finite".into()));
                    }
                    r_grad[entry.nu][entry.i][entry.j][entry.mu] = entry.value;
                    r_grad[entry.nu][entry.j][entry.i][entry.mu] = -entry.value;
                }
                let base_p = self.p;
                let p_sampler = Arc::new(move |x: [f64; 4]| {
                    let mut p = base_p;
                    for (mu, row) in p_grad.iter().enumerate() {
                        p[mu] += (0..4).map(|nu| row[nu] * x[nu]).sum::<f64>();
                    }
                    p
                });
                let r_sampler = Arc::new(move |x: [f64; 4]| {
                    let mut r = base_r;
                    for (nu, slope) in r_grad.iter().enumerate() {
                        for i in 0..4 {
                            for j in 0..4 {
                                for mu in 0..4 {
                                    r[i][j][mu] += slope[i][j][mu] * x[nu];
                                }
                            }
                        }
                    }
                    r
                });
                Ok(ConnectionField::from_samplers(p_sampler, r_sampler))
            }
            other => Err(InputError::Invalid(format!(
                "unknown connection kind {other:?}; expected \"constant\" or \"linear\""
            ))),
        }
    }
}
