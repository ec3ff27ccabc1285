//! Bilinear covariants of a spinor and the Fierz rearrangement suite.

use num_complex::Complex64;

use crate::clifford::{CMatrix, CVector, GammaBasis, SpinorTransformation};
use crate::{Error, Result};

/// Relative tolerance on the imaginary contamination of bilinears.
pub const REALITY_TOL: f64 = 1e-12;

/// A four-component complex spinor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spinor {
    /// Raw column storage, chiral representation (left-handed pair first).
    pub components: CVector,
}

impl Spinor {
    /// Builds a spinor from four complex components.
    pub fn new(c0: Complex64, c1: Complex64, c2: Complex64, c3: Complex64) -> Self {
        Self { components: CVector::new(c0, c1, c2, c3) }
    }

    /// Wraps an existing column vector.
    pub fn from_column(components: CVector) -> Self {
        Self { components }
    }

    /// Builds a spinor from real components.
    pub fn from_reals(r: [f64; 4]) -> Self {
        Self::new(
            Complex64::new(r[0], 0.0),
            Complex64::new(r[1], 0.0),
            Complex64::new(r[2], 0.0),
            Complex64::new(r[3], 0.0),
        )
    }

    /// The zero spinor.
    pub fn zero() -> Self {
        Self { components: CVector::zeros() }
    }

    /// Euclidean norm of the four components.
    pub fn norm(&self) -> f64 {
        self.components.norm()
    }

    /// True when every component is finite.
    pub fn is_finite(&self) -> bool {
        self.components.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Applies a spinor transformation: `psi -> S psi`.
    pub fn transformed(&self, s: &SpinorTransformation) -> Spinor {
        Spinor { components: s.matrix * self.components }
    }

    /// Applies a raw matrix to the spinor.
    pub fn apply(&self, m: &CMatrix) -> Spinor {
        Spinor { components: m * self.components }
    }
}

/// The six bilinear covariants of one spinor; all entries are real and
/// the tensors are exactly antisymmetric. Vector and tensor indices are
/// upper (contravariant).
#[derive(Clone, Copy, Debug)]
pub struct Bilinears {
    /// Pseudo-scalar `Theta = i psi-bar pi psi`.
    pub theta: f64,
    /// Scalar `Phi = psi-bar psi`.
    pub phi: f64,
    /// Axial vector `S^a = psi-bar gamma^a pi psi`.
    pub s: [f64; 4],
    /// Velocity vector `U^a = psi-bar gamma^a psi`.
    pub u: [f64; 4],
    /// Tensor `Sigma^{ij} = 2 psi-bar sigma^{ij} pi psi`.
    pub sigma: [[f64; 4]; 4],
    /// Tensor `M^{ij} = 2i psi-bar sigma^{ij} psi`.
    pub m: [[f64; 4]; 4],
}

impl Bilinears {
    /// Lowers one vector index with the metric diagonal.
    pub fn lower(v: [f64; 4], g: &GammaBasis) -> [f64; 4] {
        [v[0] * g.eta[0], v[1] * g.eta[1], v[2] * g.eta[2], v[3] * g.eta[3]]
    }

    /// Lowers both indices of a rank-2 array.
    pub fn lower2(t: [[f64; 4]; 4], g: &GammaBasis) -> [[f64; 4]; 4] {
        let mut out = [[0.0; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                out[a][b] = g.eta[a] * g.eta[b] * t[a][b];
            }
        }
        out
    }
}

/// `psi-bar Gamma psi` as a complex number.
fn sandwich(psi: &Spinor, gamma_mat: &CMatrix, g: &GammaBasis) -> Complex64 {
    psi.components.dotc(&(g.gamma[0] * (gamma_mat * psi.components)))
}

/// Computes all six bilinear covariants, enforcing their reality.
pub fn compute_bilinears(psi: &Spinor) -> Result<Bilinears> {
    if !psi.is_finite() {
        return Err(Error::NonFinite { context: "compute_bilinears input spinor" });
    }
    let g = GammaBasis::shared();
    let i = Complex64::new(0.0, 1.0);

    let u0 = psi.components.norm_squared();
    let tol = REALITY_TOL * (u0 + 1.0);
    let real_part = |which: &'static str, z: Complex64| -> Result<f64> {
        if z.im.abs() > tol {
            return Err(Error::RealityViolation { which, imaginary: z.im.abs() });
        }
        Ok(z.re)
    };

    let phi = real_part("Phi", sandwich(psi, &CMatrix::identity(), g))?;
    let theta = real_part("Theta", i * sandwich(psi, &g.pi, g))?;

    let mut u = [0.0; 4];
    let mut s = [0.0; 4];
    for a in 0..4 {
        u[a] = real_part("U", sandwich(psi, &g.gamma[a], g))?;
        s[a] = real_part("S", sandwich(psi, &(g.gamma[a] * g.pi), g))?;
    }

    let mut sigma = [[0.0; 4]; 4];
    let mut m = [[0.0; 4]; 4];
    for a in 0..4 {
        for b in (a + 1)..4 {
            let sig = real_part("Sigma", sandwich(psi, &(g.sigma[a][b] * g.pi), g) * 2.0)?;
            let mm = real_part("M", i * sandwich(psi, &g.sigma[a][b], g) * 2.0)?;
            sigma[a][b] = sig;
            sigma[b][a] = -sig;
            m[a][b] = mm;
            m[b][a] = -mm;
        }
    }

    Ok(Bilinears { theta, phi, s, u, sigma, m })
}

/// Residuals of the ten Fierz rearrangement identities, normalised by
/// `(U^0)^2` (both sides of every identity are quadratic in bilinears).
#[derive(Clone, Debug)]
pub struct FierzReport {
    /// Identity label and its normalised max-norm residual, in a fixed order.
    pub residuals: Vec<(&'static str, f64)>,
}

impl FierzReport {
    /// Largest residual in the report.
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|(_, r)| *r).fold(0.0, f64::max)
    }

    /// Residual of one identity, if present.
    pub fn residual(&self, label: &str) -> Option<f64> {
        self.residuals.iter().find(|(l, _)| *l == label).map(|(_, r)| *r)
    }
}

/// Checks the ten Fierz interrelations among the bilinears of one spinor.
pub fn fierz_check(b: &Bilinears) -> FierzReport {
    let g = GammaBasis::shared();
    let u0 = b.u[0];
    let denom = if u0 > 0.0 { u0 * u0 } else { 1.0 };

    let u_lo = Bilinears::lower(b.u, g);
    let s_lo = Bilinears::lower(b.s, g);
    let m_lo = Bilinears::lower2(b.m, g);
    let sigma_lo = Bilinears::lower2(b.sigma, g);

    let mut residuals = Vec::with_capacity(10);
    let mut push = |label: &'static str, raw: f64| residuals.push((label, raw / denom));

    // (i) M_ik U^i = Theta S_k
    let mut r = 0.0f64;
    for k in 0..4 {
        let lhs: f64 = (0..4).map(|i| m_lo[i][k] * b.u[i]).sum();
        r = r.max((lhs - b.theta * s_lo[k]).abs());
    }
    push("M_ik U^i = Theta S_k", r);

    // (ii) Sigma_ik U^i = Phi S_k
    let mut r = 0.0f64;
    for k in 0..4 {
        let lhs: f64 = (0..4).map(|i| sigma_lo[i][k] * b.u[i]).sum();
        r = r.max((lhs - b.phi * s_lo[k]).abs());
    }
    push("Sigma_ik U^i = Phi S_k", r);

    // (iii) M_ik S^i = Theta U_k
    let mut r = 0.0f64;
    for k in 0..4 {
        let lhs: f64 = (0..4).map(|i| m_lo[i][k] * b.s[i]).sum();
        r = r.max((lhs - b.theta * u_lo[k]).abs());
    }
    push("M_ik S^i = Theta U_k", r);

    // (iv) Sigma_ik S^i = Phi U_k
    let mut r = 0.0f64;
    for k in 0..4 {
        let lhs: f64 = (0..4).map(|i| sigma_lo[i][k] * b.s[i]).sum();
        r = r.max((lhs - b.phi * u_lo[k]).abs());
    }
    push("Sigma_ik S^i = Phi U_k", r);

    // (v) M_ab Phi - Sigma_ab Theta = U^j S^k epsilon_jkab
    let mut r = 0.0f64;
    for a in 0..4 {
        for bb in 0..4 {
            let mut rhs = 0.0;
            for j in 0..4 {
                for k in 0..4 {
                    rhs += b.u[j] * b.s[k] * g.epsilon[j][k][a][bb];
                }
            }
            r = r.max((m_lo[a][bb] * b.phi - sigma_lo[a][bb] * b.theta - rhs).abs());
        }
    }
    push("M_ab Phi - Sigma_ab Theta = U^j S^k eps_jkab", r);

    // (vi) M_ab Theta + Sigma_ab Phi = U_[a S_b]
    let mut r = 0.0f64;
    for a in 0..4 {
        for bb in 0..4 {
            let rhs = u_lo[a] * s_lo[bb] - u_lo[bb] * s_lo[a];
            r = r.max((m_lo[a][bb] * b.theta + sigma_lo[a][bb] * b.phi - rhs).abs());
        }
    }
    push("M_ab Theta + Sigma_ab Phi = U_[a S_b]", r);

    // (vii) M_ab M^ab / 2 = -Sigma_ab Sigma^ab / 2 = Phi^2 - Theta^2
    let mm: f64 = (0..4).map(|a| (0..4).map(|bb| m_lo[a][bb] * b.m[a][bb]).sum::<f64>()).sum();
    let ss: f64 = (0..4).map(|a| (0..4).map(|bb| sigma_lo[a][bb] * b.sigma[a][bb]).sum::<f64>()).sum();
    let target = b.phi * b.phi - b.theta * b.theta;
    push(
        "M_ab M^ab / 2 = -Sigma_ab Sigma^ab / 2 = Phi^2 - Theta^2",
        (0.5 * mm - target).abs().max((-0.5 * ss - target).abs()),
    );

    // (viii) M_ab Sigma^ab / 2 = -2 Theta Phi
    let ms: f64 = (0..4).map(|a| (0..4).map(|bb| m_lo[a][bb] * b.sigma[a][bb]).sum::<f64>()).sum();
    push("M_ab Sigma^ab / 2 = -2 Theta Phi", (0.5 * ms + 2.0 * b.theta * b.phi).abs());

    // (ix) U_a U^a = -S_a S^a = Theta^2 + Phi^2
    let uu: f64 = (0..4).map(|a| u_lo[a] * b.u[a]).sum();
    let ss_v: f64 = (0..4).map(|a| s_lo[a] * b.s[a]).sum();
    let target = b.theta * b.theta + b.phi * b.phi;
    push("U_a U^a = -S_a S^a = Theta^2 + Phi^2", (uu - target).abs().max((-ss_v - target).abs()));

    // (x) U_a S^a = 0
    let us: f64 = (0..4).map(|a| u_lo[a] * b.s[a]).sum();
    push("U_a S^a = 0", us.abs());

    FierzReport { residuals }
}
