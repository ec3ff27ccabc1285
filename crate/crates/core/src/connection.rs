//! Tensorial connection fields.
//!
//! The frame part of a spinor field can be moved wholesale into two real
//! objects: a vector `P_mu` (momentum, gauge-covariant) and a rank-3
//! tensor `R_{ij mu}`, antisymmetric in `ij` (space-time structure,
//! frame-covariant). They arise from the gauge data as
//! `P_mu = q (d_mu xi - A_mu)` and `R_{ij mu} = d_mu xi_{ij} - C_{ij mu}`,
//! where `xi`, `xi_{ab}` are the local parameters of the frame `L`,
//! `A_mu` the gauge potential and `C_{ij mu}` the spin connection.
//!
//! With these, the covariant derivative of the field reduces at each point
//! to a matrix acting on the spinor; [`polar_derivative_matrix`] builds
//! that matrix for each of the polar classes.

use std::sync::Arc;

use num_complex::Complex64;

use crate::clifford::{CMatrix, GammaBasis};
use crate::fd::deriv5_scalar;
use crate::{Error, Point, Result};

/// `R[i][j][mu]` holds the component `R_{ij mu}` (all indices lower).
pub type RTensor = [[[f64; 4]; 4]; 4];

/// Point function returning a real scalar.
pub type ScalarSampler = Arc<dyn Fn(Point) -> f64 + Send + Sync>;
/// Point function returning a real 4-vector (lower index).
pub type VectorSampler = Arc<dyn Fn(Point) -> [f64; 4] + Send + Sync>;
/// Point function returning an antisymmetric rank-2 tensor `t[a][b]`.
pub type Tensor2Sampler = Arc<dyn Fn(Point) -> [[f64; 4]; 4] + Send + Sync>;
/// Point function returning a rank-3 tensor with the [`RTensor`] layout.
pub type RSampler = Arc<dyn Fn(Point) -> RTensor + Send + Sync>;

#[inline]
fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The pair of tensorial connection fields, as point samplers so that
/// space-time dependent backgrounds and plane-wave checks share one type.
#[derive(Clone)]
pub struct ConnectionField {
    /// Sampler for `P_mu` (lower index).
    pub p: VectorSampler,
    /// Sampler for `R_{ij mu}` (all lower).
    pub r: RSampler,
}

impl ConnectionField {
    /// Both fields identically zero.
    pub fn zero() -> Self {
        Self::constant([0.0; 4], [[[0.0; 4]; 4]; 4])
    }

    /// Space-time constant fields.
    pub fn constant(p: [f64; 4], r: RTensor) -> Self {
        Self { p: Arc::new(move |_| p), r: Arc::new(move |_| r) }
    }

    /// Constant field with `P = 0` and a single independent component
    /// `R_{ij mu} = value` (the `ji` partner is filled in by antisymmetry).
    pub fn r_single(i: usize, j: usize, mu: usize, value: f64) -> Self {
        let mut r = [[[0.0; 4]; 4]; 4];
        r[i][j][mu] = value;
        r[j][i][mu] = -value;
        Self::constant([0.0; 4], r)
    }

    /// Arbitrary samplers.
    pub fn from_samplers(p: VectorSampler, r: RSampler) -> Self {
        Self { p, r }
    }

    /// `P_mu` at a point.
    pub fn p_at(&self, x: Point) -> [f64; 4] {
        (self.p)(x)
    }

    /// `R_{ij mu}` at a point.
    pub fn r_at(&self, x: Point) -> RTensor {
        (self.r)(x)
    }
}

/// The raw gauge-side data: spin connection, gauge potential, and the
/// local frame parameters whose gradients feed the tensorial connection.
#[derive(Clone)]
pub struct GaugeData {
    /// Spin connection sampler `C_{ij mu}` ([`RTensor`] layout).
    pub c: RSampler,
    /// Gauge potential sampler `A_mu`.
    pub a: VectorSampler,
    /// Gauge parameter `xi` of the frame.
    pub xi: ScalarSampler,
    /// Antisymmetric Lorentz parameters `xi_{ab}` of the frame.
    pub xi_ab: Tensor2Sampler,
    /// Charge `q`.
    pub q: f64,
    /// Optional exact gradient `d_mu xi`; when absent, finite differences
    /// of `xi` are used.
    pub grad_xi: Option<VectorSampler>,
    /// Optional exact gradient `[a][b][mu] = d_mu xi_{ab}`.
    pub grad_xi_ab: Option<RSampler>,
}

impl GaugeData {
    /// Gauge data with numerically differentiated frame parameters.
    pub fn new(c: RSampler, a: VectorSampler, xi: ScalarSampler, xi_ab: Tensor2Sampler, q: f64) -> Self {
        Self { c, a, xi, xi_ab, q, grad_xi: None, grad_xi_ab: None }
    }

    /// Trivial frame (`xi = 0`, `xi_ab = 0`): the tensorial connection is
    /// then just `R = -C`, `P = -qA`.
    pub fn trivial_frame(c: RSampler, a: VectorSampler, q: f64) -> Self {
        Self::new(c, a, Arc::new(|_| 0.0), Arc::new(|_| [[0.0; 4]; 4]), q)
    }

    /// Supplies closed-form gradients, bypassing finite differences.
    pub fn with_exact_gradients(mut self, grad_xi: VectorSampler, grad_xi_ab: RSampler) -> Self {
        self.grad_xi = Some(grad_xi);
        self.grad_xi_ab = Some(grad_xi_ab);
        self
    }
}

/// Builds the tensorial connection `P_mu = q (d_mu xi - A_mu)`,
/// `R_{ij mu} = d_mu xi_{ij} - C_{ij mu}` from gauge data. Derivatives of
/// the frame parameters use five-point central differences with the given
/// step unless exact gradients were supplied.
pub fn build_tensorial(g: &GaugeData, derivative_step: f64) -> Result<ConnectionField> {
    if !derivative_step.is_finite() || derivative_step <= 0.0 {
        return Err(Error::Inconsistency(format!(
            "derivative step must be positive and finite, got {derivative_step}"
        )));
    }
    let q = g.q;
    let a = g.a.clone();
    let xi = g.xi.clone();
    let grad_xi = g.grad_xi.clone();
    let h = derivative_step;
    let p: VectorSampler = Arc::new(move |x: Point| {
        let a_val = a(x);
        let mut out = [0.0; 4];
        for mu in 0..4 {
            let d = match &grad_xi {
                Some(exact) => exact(x)[mu],
                None => deriv5_scalar(|y| xi(y), x, mu, h),
            };
            out[mu] = q * (d - a_val[mu]);
        }
        out
    });

    let c_sampler = g.c.clone();
    let xi_ab = g.xi_ab.clone();
    let grad_xi_ab = g.grad_xi_ab.clone();
    let r: RSampler = Arc::new(move |x: Point| {
        let c_val = c_sampler(x);
        let mut out = [[[0.0; 4]; 4]; 4];
        for i in 0..4 {
            for j in (i + 1)..4 {
                for mu in 0..4 {
                    let d = match &grad_xi_ab {
                        Some(exact) => exact(x)[i][j][mu],
                        None => deriv5_scalar(|y| xi_ab(y)[i][j], x, mu, h),
                    };
                    let value = d - c_val[i][j][mu];
                    out[i][j][mu] = value;
                    out[j][i][mu] = -value;
                }
            }
        }
        out
    });

    Ok(ConnectionField { p, r })
}

/// The two independent contractions of `R_{ij mu}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContractionPair {
    /// Vector part `R_mu = R_{mu nu}{}^{nu}`.
    pub r: [f64; 4],
    /// Axial part `B_mu = (1/2) epsilon_{mu alpha pi iota} R^{alpha pi iota}`.
    pub b: [f64; 4],
}

/// Contracts an `R` tensor at a point into its vector and axial parts.
pub fn contract_r(r: &RTensor) -> ContractionPair {
    let g = GammaBasis::shared();
    let mut r_mu = [0.0; 4];
    let mut b_mu = [0.0; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            r_mu[mu] += g.eta[nu] * r[mu][nu][nu];
        }
        let mut acc = 0.0;
        for alpha in 0..4 {
            for pi in 0..4 {
                for iota in 0..4 {
                    let eps = g.epsilon[mu][alpha][pi][iota];
                    if eps != 0.0 {
                        acc += eps * g.eta[alpha] * g.eta[pi] * g.eta[iota] * r[alpha][pi][iota];
                    }
                }
            }
        }
        b_mu[mu] = 0.5 * acc;
    }
    ContractionPair { r: r_mu, b: b_mu }
}

/// `(1/2) R_{ij mu} sigma^{ij}` for a fixed `mu` (sum over both index
/// orders), the Lorentz part of the covariant derivative.
pub(crate) fn half_r_sigma(r: &RTensor, mu: usize, g: &GammaBasis) -> CMatrix {
    let mut m = CMatrix::zeros();
    for i in 0..4 {
        for j in (i + 1)..4 {
            let value = r[i][j][mu];
            if value != 0.0 {
                // 1/2 (R_{ij} sigma^{ij} + R_{ji} sigma^{ji}) = R_{ij} sigma^{ij}
                m += g.sigma[i][j] * c(value, 0.0);
            }
        }
    }
    m
}

/// Local polar degrees of freedom entering the derivative matrix, by class.
#[derive(Clone, Copy, Debug)]
pub enum PolarPointData {
    /// Regular class: gradients of the chiral angle and of `ln phi`.
    Regular {
        /// `d_mu beta`.
        grad_beta: [f64; 4],
        /// `d_mu ln phi`.
        grad_ln_phi: [f64; 4],
    },
    /// Singular class with nonconstant `alpha`.
    Singular {
        /// The angle itself (its secant and tangent appear).
        alpha: f64,
        /// `d_mu alpha`.
        grad_alpha: [f64; 4],
    },
    /// Flag-dipole: no scalar degrees of freedom survive.
    Dipole,
    /// Flagpole: additionally `P_mu` must vanish identically.
    Flagpole,
}

/// The matrix `M_mu` with `d_mu psi = M_mu psi` for a field in polar form,
/// at one point and one direction `mu`:
///
/// * regular: `M = -(i/2)(d beta) pi + (d ln phi) I - i P I - (1/2) R sigma`
/// * singular: `M = -(1/2) tan(alpha)(d alpha) I - (1/2) sec(alpha)(d alpha) pi - i P I - (1/2) R sigma`
/// * flag-dipole: `M = -i P I - (1/2) R sigma`
/// * flagpole: `M = -(1/2) R sigma` (rejecting nonzero `P`)
pub fn polar_derivative_matrix(
    data: &PolarPointData,
    p: &[f64; 4],
    r: &RTensor,
    mu: usize,
) -> Result<CMatrix> {
    let g = GammaBasis::shared();
    let identity = CMatrix::identity();
    let lorentz = -half_r_sigma(r, mu, g);
    match *data {
        PolarPointData::Regular { grad_beta, grad_ln_phi } => Ok(lorentz
            + g.pi * c(0.0, -0.5 * grad_beta[mu])
            + identity * c(grad_ln_phi[mu], -p[mu])),
        PolarPointData::Singular { alpha, grad_alpha } => {
            let cos_alpha = alpha.cos();
            if cos_alpha.abs() < 1e-12 {
                return Err(Error::SecantSingularity { cos_alpha });
            }
            let tan_term = -0.5 * alpha.tan() * grad_alpha[mu];
            let sec_term = -0.5 * grad_alpha[mu] / cos_alpha;
            Ok(lorentz + identity * c(tan_term, -p[mu]) + g.pi * c(sec_term, 0.0))
        }
        PolarPointData::Dipole => Ok(lorentz + identity * c(0.0, -p[mu])),
        PolarPointData::Flagpole => {
            let max_p = p.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if max_p > 1e-12 {
                return Err(Error::FlagpoleMomentum { max_p });
            }
            Ok(lorentz)
        }
    }
}
