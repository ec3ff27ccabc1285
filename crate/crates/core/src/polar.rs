//! Polar form of regular and singular spinors.
//!
//! A regular spinor factors as `psi = phi exp(-i beta pi / 2) L^{-1} (1,0,1,0)^T`,
//! isolating the module `phi` and chiral angle `beta` from the frame matrix
//! `L`. A singular (flag-dipole) spinor factors as
//! `lambda = (1/sqrt 2)(I cos(alpha/2) - pi sin(alpha/2)) L^{-1} (1,0,0,1)^T`.
//! This module extracts those degrees of freedom and frames, and rebuilds
//! spinors from them. Both directions are exact up to rounding, so the
//! round-trip is a componentwise identity.

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::bilinears::{compute_bilinears, Spinor};
use crate::clifford::{CMatrix, CVector, SpinorTransformation};
use crate::lounesto::classify_default;
use crate::{Error, Result};

/// Tolerance for the orthonormality of the extracted frame vectors.
pub const FRAME_TOL: f64 = 1e-12;

#[inline]
fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
fn phase(angle: f64) -> Complex64 {
    Complex64::new(0.0, angle).exp()
}

/// The diagonal chiral phase `exp(-i beta pi / 2)`, with `pi` the chirality
/// matrix `diag(-1, -1, +1, +1)`.
pub fn chiral_phase(beta: f64) -> CMatrix {
    CMatrix::from_diagonal(&CVector::new(
        phase(beta / 2.0),
        phase(beta / 2.0),
        phase(-beta / 2.0),
        phase(-beta / 2.0),
    ))
}

/// Branch choice for recovering `alpha` from `sin alpha`: the extraction
/// determines only `sin alpha`, leaving `alpha` vs `pi - alpha` open.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaBranch {
    /// `alpha` in `[-pi/2, pi/2]`; the branch produced by
    /// [`decompose_singular`] (both half-norm weights nonnegative).
    Principal,
    /// The `pi - alpha` sheet, for callers that fix the flag-plane
    /// orientation externally.
    Reflected,
}

/// Polar data of a regular spinor: degrees of freedom (`phi`, `beta`),
/// the parameters of the frame `L`, and the derived unit frame vectors.
#[derive(Clone, Debug)]
pub struct PolarRegular {
    /// Module, `phi > 0`; `2 phi^2 = sqrt(Phi^2 + Theta^2)`.
    pub phi: f64,
    /// Chiral angle in `(-pi, pi]`, from `atan2(Theta, Phi)`.
    pub beta: f64,
    /// Rapidity vector of the pure boost taking `(1,0,0,0)` to `u`.
    pub rapidity: [f64; 3],
    /// Axis-angle vector of the rotation taking the third axis to the
    /// boosted-back spin direction.
    pub rotation: [f64; 3],
    /// Residual gauge angle (global phase).
    pub phase: f64,
    /// The assembled `L^{-1}` matrix: boost · rotation · `exp(i phase)`.
    pub l_matrix: CMatrix,
    /// Unit velocity vector `u^a = U^a / (2 phi^2)`.
    pub u: [f64; 4],
    /// Unit spin axial vector `s^a = S^a / (2 phi^2)`.
    pub s: [f64; 4],
}

impl PolarRegular {
    /// Assembles a `PolarRegular` from explicit parameters (the inverse of
    /// extraction): `L^{-1} = boost(rapidity) · rotation(axis_angle) · e^{i phase}`.
    pub fn from_params(
        phi: f64,
        beta: f64,
        rapidity: [f64; 3],
        rotation: [f64; 3],
        phase_angle: f64,
    ) -> Result<Self> {
        if !(phi.is_finite() && beta.is_finite() && phase_angle.is_finite()) {
            return Err(Error::NonFinite { context: "PolarRegular parameters" });
        }
        if phi <= 0.0 {
            return Err(Error::Inconsistency(format!("module phi must be positive, got {phi}")));
        }
        let boost = SpinorTransformation::boost(rapidity)?;
        let rot = SpinorTransformation::rotation(rotation)?;
        let l_matrix = boost.matrix * rot.matrix * phase(phase_angle);

        let lb = boost.lorentz_matrix();
        let lr = rot.lorentz_matrix();
        let u = apply_lorentz(&lb, &[1.0, 0.0, 0.0, 0.0]);
        let s = apply_lorentz(&lb, &apply_lorentz(&lr, &[0.0, 0.0, 0.0, 1.0]));
        Ok(Self { phi, beta, rapidity, rotation, phase: phase_angle, l_matrix, u, s })
    }
}

/// Polar data of a singular spinor: `sin alpha`, the branch flag, and the
/// frame matrix `L^{-1}` (which also carries the overall normalization as a
/// boost along the flag axis).
#[derive(Clone, Debug)]
pub struct PolarSingular {
    /// `sin alpha = -S^0 / U^0`, in `[-1, 1]`.
    pub sin_alpha: f64,
    /// Which `alpha` sheet the extraction refers to.
    pub alpha_branch: AlphaBranch,
    /// The assembled `L^{-1}` matrix.
    pub l_matrix: CMatrix,
}

impl PolarSingular {
    /// Trivial frame (`L = I`), `alpha = 0`; useful as a starting point for
    /// constructing reference singular spinors.
    pub fn identity_frame() -> Self {
        Self { sin_alpha: 0.0, alpha_branch: AlphaBranch::Principal, l_matrix: CMatrix::identity() }
    }

    /// The angle on the recorded branch.
    pub fn alpha(&self) -> f64 {
        let principal = self.sin_alpha.clamp(-1.0, 1.0).asin();
        match self.alpha_branch {
            AlphaBranch::Principal => principal,
            AlphaBranch::Reflected => std::f64::consts::PI - principal,
        }
    }
}

fn apply_lorentz(l: &[[f64; 4]; 4], v: &[f64; 4]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for (a, row) in l.iter().enumerate() {
        out[a] = (0..4).map(|b| row[b] * v[b]).sum();
    }
    out
}

fn minkowski_dot(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
}

fn check_frame(u: &[f64; 4], s: &[f64; 4]) -> Result<()> {
    let scale = 1.0 + u[0] * u[0];
    let checks = [
        ("u.u - 1", minkowski_dot(u, u) - 1.0),
        ("s.s + 1", minkowski_dot(s, s) + 1.0),
        ("u.s", minkowski_dot(u, s)),
    ];
    for (what, value) in checks {
        if !value.is_finite() || value.abs() > FRAME_TOL * scale {
            return Err(Error::FrameNormalization { what, value });
        }
    }
    Ok(())
}

/// Axis-angle vector of the rotation taking the third axis to the unit
/// 3-vector `t`; the antiparallel tie is resolved by a half-turn about the
/// first axis.
fn rotation_taking_z_to(t: [f64; 3]) -> [f64; 3] {
    let sin = t[0].hypot(t[1]);
    let cos = t[2];
    if sin < 1e-14 {
        if cos >= 0.0 {
            [0.0, 0.0, 0.0]
        } else {
            [std::f64::consts::PI, 0.0, 0.0]
        }
    } else {
        // axis = z-hat × t, normalized; angle from atan2 so that the
        // right-handed rotation lands exactly on t.
        let angle = sin.atan2(cos);
        [-t[1] / sin * angle, t[0] / sin * angle, 0.0]
    }
}

/// Extracts the polar form of a regular spinor.
///
/// The module and chiral angle come from the scalar bilinears, the frame
/// from the normalized velocity and spin vectors (boost first, then
/// rotation), and the residual gauge phase from the overlap of the
/// phase-free candidate with the input. The resulting data reconstructs
/// the input exactly (to rounding).
pub fn decompose_regular(psi: &Spinor) -> Result<PolarRegular> {
    let class = classify_default(psi)?;
    if !class.label.is_regular() {
        return Err(Error::NotRegular { found: class.label.name() });
    }
    let b = compute_bilinears(psi)?;
    let two_phi2 = (b.phi * b.phi + b.theta * b.theta).sqrt();
    let phi = (0.5 * two_phi2).sqrt();
    let beta = b.theta.atan2(b.phi);

    let u = b.u.map(|x| x / two_phi2);
    let s = b.s.map(|x| x / two_phi2);
    check_frame(&u, &s)?;

    // Pure boost taking the rest vector to u: sinh(eta) = |u_spatial|.
    let spatial = [u[1], u[2], u[3]];
    let spatial_norm = (spatial[0].powi(2) + spatial[1].powi(2) + spatial[2].powi(2)).sqrt();
    let rapidity = if spatial_norm < 1e-14 {
        [0.0, 0.0, 0.0]
    } else {
        let eta = spatial_norm.asinh();
        spatial.map(|x| x / spatial_norm * eta)
    };
    let boost = SpinorTransformation::boost(rapidity)?;

    // Boost s back to the rest frame; orthogonality to u makes its time
    // component vanish there, leaving a unit 3-vector for the rotation.
    let back = SpinorTransformation::boost(rapidity.map(|x| -x))?.lorentz_matrix();
    let s_rest = apply_lorentz(&back, &s);
    if s_rest[0].abs() > FRAME_TOL * (1.0 + u[0] * u[0]) {
        return Err(Error::FrameNormalization { what: "rest-frame s time component", value: s_rest[0] });
    }
    let rotation = rotation_taking_z_to([s_rest[1], s_rest[2], s_rest[3]]);
    let rot = SpinorTransformation::rotation(rotation)?;

    // Residual gauge phase: the phase-free candidate differs from psi by
    // exactly a global phase, read off from their inner product.
    let rest_column = CVector::new(c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
    let candidate = chiral_phase(beta) * (boost.matrix * (rot.matrix * rest_column)) * c(phi, 0.0);
    let overlap = candidate.dotc(&psi.components);
    let phase_angle = if overlap.norm() > 0.0 { overlap.arg() } else { 0.0 };

    let l_matrix = boost.matrix * rot.matrix * phase(phase_angle);
    Ok(PolarRegular { phi, beta, rapidity, rotation, phase: phase_angle, l_matrix, u, s })
}

/// Rebuilds `psi = phi exp(-i beta pi / 2) L^{-1} (1,0,1,0)^T`.
pub fn reconstruct_regular(p: &PolarRegular) -> Spinor {
    let rest_column = CVector::new(c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
    Spinor::from_column(chiral_phase(p.beta) * (p.l_matrix * rest_column) * c(p.phi, 0.0))
}

/// Diagonal of the third-axis rotation (angle `rho`) combined with a gauge
/// phase `exp(i chi)`; both chiral blocks carry the same phases.
fn rotz_gauge(rho: f64, chi: f64) -> CMatrix {
    let a = phase(chi - rho / 2.0);
    let b = phase(chi + rho / 2.0);
    CMatrix::from_diagonal(&CVector::new(a, b, a, b))
}

/// Diagonal of the third-axis boost with rapidity `eta` acting on spinors.
fn boost_z(eta: f64) -> CMatrix {
    let down = c((-eta / 2.0).exp(), 0.0);
    let up = c((eta / 2.0).exp(), 0.0);
    CMatrix::from_diagonal(&CVector::new(down, up, up, down))
}

fn block_diag2(a: &Matrix2<Complex64>) -> CMatrix {
    let mut m = CMatrix::zeros();
    for r in 0..2 {
        for col in 0..2 {
            m[(r, col)] = a[(r, col)];
            m[(r + 2, col + 2)] = a[(r, col)];
        }
    }
    m
}

/// Extracts the polar form of a singular spinor.
///
/// An SU(2) rotation (acting identically on both chiral halves) aligns the
/// dominant half with its reference direction; the singularity constraint
/// then zeroes the complementary component of the other half automatically.
/// A third-axis rotation plus gauge phase make the two surviving entries
/// real and nonnegative, and their magnitudes give `sin alpha` and the
/// overall scale, the latter stored in `L` as a third-axis boost.
pub fn decompose_singular(lambda: &Spinor) -> Result<PolarSingular> {
    let class = classify_default(lambda)?;
    if !class.label.is_singular() {
        return Err(Error::NotSingular { found: class.label.name() });
    }
    let v = &lambda.components;
    let (a1, a2, b1, b2) = (v[0], v[1], v[2], v[3]);
    let m_left = (a1.norm_sqr() + a2.norm_sqr()).sqrt();
    let m_right = (b1.norm_sqr() + b2.norm_sqr()).sqrt();

    // Align the larger chiral half: left half to (m_left, 0), or — when the
    // right half dominates — right half to (0, m_right). Either way the
    // matrix is SU(2), so it acts as the same block on both halves.
    let align = if m_left >= m_right {
        Matrix2::new(a1.conj(), a2.conj(), -a2, a1) / c(m_left, 0.0)
    } else {
        Matrix2::new(b2, -b1, b1.conj(), b2.conj()) / c(m_right, 0.0)
    };
    let r1 = block_diag2(&align);
    let aligned = r1 * v;
    // Off-slot components vanish by the singularity constraint
    // (Phi = Theta = 0  <=>  the chiral halves are orthogonal).
    let z0 = aligned[0];
    let z3 = aligned[3];

    let delta0 = if z0.norm() > 0.0 { z0.arg() } else { 0.0 };
    let delta3 = if z3.norm() > 0.0 { z3.arg() } else { 0.0 };
    let chi = -(delta0 + delta3) / 2.0;
    let rho = delta0 - delta3;

    let weight_left = z0.norm();
    let weight_right = z3.norm();
    let omega = (weight_left * weight_left + weight_right * weight_right).sqrt();
    let eta = -2.0 * omega.ln();
    let kappa_left = weight_left / omega;
    let kappa_right = weight_right / omega;
    let sin_alpha = (kappa_left * kappa_left - kappa_right * kappa_right).clamp(-1.0, 1.0);

    let l_matrix = r1.adjoint() * rotz_gauge(-rho, -chi) * boost_z(eta);
    Ok(PolarSingular { sin_alpha, alpha_branch: AlphaBranch::Principal, l_matrix })
}

/// Rebuilds `lambda = (1/sqrt 2)(I cos(alpha/2) - pi sin(alpha/2)) L^{-1} (1,0,0,1)^T`.
pub fn reconstruct_singular(p: &PolarSingular, alpha: f64) -> Spinor {
    let (sin_half, cos_half) = (alpha / 2.0).sin_cos();
    let sqrt2 = std::f64::consts::SQRT_2;
    let left = c((cos_half + sin_half) / sqrt2, 0.0);
    let right = c((cos_half - sin_half) / sqrt2, 0.0);
    let prefactor = CMatrix::from_diagonal(&CVector::new(left, left, right, right));
    let flag_column = CVector::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
    Spinor::from_column(prefactor * (p.l_matrix * flag_column))
}
