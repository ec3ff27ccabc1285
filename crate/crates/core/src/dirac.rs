//! Dirac operator, polar-form field equations, discrete transformations,
//! and the Elko rest-frame states.
//!
//! The covariant derivative used throughout is
//! `D_mu psi = d_mu psi - (1/2) R_{ij mu} sigma^{ij} psi - i P_mu psi`,
//! i.e. the tensorial connection carries the frame and gauge structure
//! while the field sampler carries only the remaining variation. The
//! residual of the first-order equation is then
//! `i gamma^mu D_mu psi - m psi`, computed with five-point stencils.
//!
//! For each Lounesto class the same equation is equivalent to a set of
//! real tensor relations among the bilinears, the connection contractions
//! and the gradients of the class degrees of freedom; those systems are
//! evaluated by [`polar_residuals`] and its class-specific variants.

use std::sync::Arc;

use num_complex::Complex64;

use crate::bilinears::{compute_bilinears, Bilinears, Spinor};
use crate::clifford::{CMatrix, CVector, GammaBasis};
use crate::connection::{contract_r, half_r_sigma, ConnectionField, ContractionPair};
use crate::fd::{deriv5_scalar, deriv5_spinor};
use crate::lounesto::{classify_default, LounestoLabel};
use crate::{Error, Point, Result};

/// Point function returning a spinor; the common currency for fields.
pub type SpinorSampler = Arc<dyn Fn(Point) -> Spinor + Send + Sync>;

#[inline]
fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A spinor field whose points are expected in the regular classes.
#[derive(Clone)]
pub struct RegularField {
    /// The field sampler.
    pub psi: SpinorSampler,
}

impl RegularField {
    /// Wraps a sampler.
    pub fn new(psi: SpinorSampler) -> Self {
        Self { psi }
    }

    /// Space-time constant field.
    pub fn constant(psi: Spinor) -> Self {
        Self { psi: Arc::new(move |_| psi) }
    }

    /// The field value at a point.
    pub fn at(&self, x: Point) -> Spinor {
        (self.psi)(x)
    }
}

/// Which singular residual system to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingularKind {
    /// General flag-dipole system (variable `alpha`).
    FlagDipole,
    /// Flagpole system; requires `P = 0`.
    Flagpole,
    /// Dipole system for a left-handed field (upper sign, `+2P`).
    DipoleLeft,
    /// Dipole system for a right-handed field (lower sign, `-2P`).
    DipoleRight,
}

/// A spinor field whose points are expected in the singular classes.
#[derive(Clone)]
pub struct SingularField {
    /// The field sampler.
    pub lambda: SpinorSampler,
    /// Residual system selector.
    pub kind: SingularKind,
}

impl SingularField {
    /// Wraps a sampler.
    pub fn new(lambda: SpinorSampler, kind: SingularKind) -> Self {
        Self { lambda, kind }
    }

    /// Space-time constant field.
    pub fn constant(lambda: Spinor, kind: SingularKind) -> Self {
        Self { lambda: Arc::new(move |_| lambda), kind }
    }

    /// The field value at a point.
    pub fn at(&self, x: Point) -> Spinor {
        (self.lambda)(x)
    }
}

/// Residual of the first-order equation at one point.
#[derive(Clone, Debug)]
pub struct DiracResidual {
    /// `i gamma^mu D_mu psi - m psi`.
    pub residual: Spinor,
    /// Euclidean norm of the residual components.
    pub norm: f64,
}

/// Evaluates `i gamma^mu D_mu psi - m psi` at `x`, differentiating the
/// sampler with five-point stencils of the given step.
pub fn dirac_residual<F>(
    psi: F,
    conn: &ConnectionField,
    x: Point,
    mass: f64,
    step: f64,
) -> Result<DiracResidual>
where
    F: Fn(Point) -> Spinor,
{
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::Inconsistency(format!("derivative step must be positive, got {step}")));
    }
    let g = GammaBasis::shared();
    let value = psi(x).components;
    let p = conn.p_at(x);
    let r = conn.r_at(x);
    let mut out: CVector = value * c(-mass, 0.0);
    for mu in 0..4 {
        let mut grad = deriv5_spinor(|y| psi(y).components, x, mu, step);
        grad -= half_r_sigma(&r, mu, g) * value;
        grad -= value * c(0.0, p[mu]);
        out += g.gamma[mu] * grad * c(0.0, 1.0);
    }
    let residual = Spinor::from_column(out);
    if !residual.is_finite() {
        return Err(Error::NonFinite { context: "dirac residual" });
    }
    let norm = residual.norm();
    Ok(DiracResidual { residual, norm })
}

/// Charge conjugation, `psi -> i gamma^2 psi^*`.
pub fn apply_c(psi: &Spinor) -> Spinor {
    let g = GammaBasis::shared();
    Spinor::from_column(g.gamma[2] * psi.components.map(|z| z.conj()) * c(0.0, 1.0))
}

/// Chiral flip, `psi -> pi psi`.
pub fn apply_m(psi: &Spinor) -> Spinor {
    Spinor::from_column(GammaBasis::shared().pi * psi.components)
}

/// The constant matrix of the flagpole first-order equation,
/// `i R_a gamma^a + B_a gamma^a pi - 2m I`, from the two contractions of
/// the tensorial connection.
pub fn flagpole_dirac_matrix(r: &[f64; 4], b: &[f64; 4], mass: f64) -> CMatrix {
    let g = GammaBasis::shared();
    let mut m = CMatrix::identity() * c(-2.0 * mass, 0.0);
    for a in 0..4 {
        m += g.gamma[a] * c(0.0, r[a]);
        m += g.gamma[a] * g.pi * c(b[a], 0.0);
    }
    m
}

/// Real tensor residuals of the polar field equations, by class.
#[derive(Clone, Debug)]
pub enum PolarResiduals {
    /// Regular classes: one relation driving the chiral angle, one the
    /// module; each has a residual per direction.
    Regular {
        /// `d_mu beta + B_mu - 2[(P.u) s_mu - (P.s) u_mu] + 2 m s_mu cos(beta)`.
        eq_beta: [f64; 4],
        /// `d_mu ln(phi^2) + R_mu - 2 P^rho u^nu s^alpha eps_{mu rho nu alpha} + 2 m s_mu sin(beta)`.
        eq_phi: [f64; 4],
    },
    /// General singular class: the four tensor relations, each reduced to
    /// a 4-vector of residuals over the free index.
    FlagDipole {
        /// `[eps^{mu rho sigma nu} (d_mu alpha) sec(alpha) - 2 P^[rho g^sigma]nu] M_{rho sigma}`.
        sing1: [f64; 4],
        /// `[-B^sigma eps_{sigma mu rho nu} + R_[mu g_rho]nu + g_nu[mu (d_rho] alpha) tan(alpha)] W^{mu rho}`.
        sing2: [f64; 4],
        /// `M_{rho sigma} [g^nu[rho (d^sigma] alpha) sec(alpha) - 2 P_mu eps^{mu rho sigma nu}] + 4 m sin(alpha) U^nu`.
        sing3: [f64; 4],
        /// `[-B^sigma eps_{sigma mu rho nu} + R_[mu g_rho]nu + g_nu[mu (d_rho] alpha) tan(alpha)] M^{mu rho} + 4 m U_nu`.
        sing4: [f64; 4],
    },
    /// Flagpole class (`P = 0`): two scalars and one antisymmetric tensor.
    Flagpole {
        /// `R_mu U^mu`.
        r_dot_u: f64,
        /// `B_mu U^mu`.
        b_dot_u: f64,
        /// `(-B_mu eps^{mu rho a nu} + g^rho[a R^nu]) U_rho + 2 m M^{a nu}`.
        flag: [[f64; 4]; 4],
    },
    /// Dipole class (massless Weyl): the sign of the `2P` term follows
    /// the handedness.
    Dipole {
        /// `R_mu U^mu`.
        r_dot_u: f64,
        /// `(-B_mu +/- 2 P_mu) U^mu`.
        p_dot_u: f64,
        /// `[(-B_mu +/- 2P_mu) eps^{mu rho a nu} + g^rho[a R^nu]] U_rho`.
        flag: [[f64; 4]; 4],
        /// `4 |m| max|U|`: dipoles force `m = 0`.
        mass_residual: f64,
    },
}

impl PolarResiduals {
    /// Class tag for reports.
    pub fn class(&self) -> &'static str {
        match self {
            Self::Regular { .. } => "Regular",
            Self::FlagDipole { .. } => "FlagDipole",
            Self::Flagpole { .. } => "Flagpole",
            Self::Dipole { .. } => "Dipole",
        }
    }

    /// Largest absolute residual across the whole system.
    pub fn max_abs(&self) -> f64 {
        let fold = |vals: &[f64]| vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        match self {
            Self::Regular { eq_beta, eq_phi } => fold(eq_beta).max(fold(eq_phi)),
            Self::FlagDipole { sing1, sing2, sing3, sing4 } => {
                fold(sing1).max(fold(sing2)).max(fold(sing3)).max(fold(sing4))
            }
            Self::Flagpole { r_dot_u, b_dot_u, flag } => {
                let mut m = r_dot_u.abs().max(b_dot_u.abs());
                for row in flag {
                    m = m.max(fold(row));
                }
                m
            }
            Self::Dipole { r_dot_u, p_dot_u, flag, mass_residual } => {
                let mut m = r_dot_u.abs().max(p_dot_u.abs()).max(*mass_residual);
                for row in flag {
                    m = m.max(fold(row));
                }
                m
            }
        }
    }
}

struct RegularIngredients {
    beta: f64,
    u: [f64; 4],
    s: [f64; 4],
}

fn regular_ingredients(b: &Bilinears) -> RegularIngredients {
    let two_phi2 = b.phi.hypot(b.theta);
    RegularIngredients {
        beta: b.theta.atan2(b.phi),
        u: b.u.map(|x| x / two_phi2),
        s: b.s.map(|x| x / two_phi2),
    }
}

/// The pointwise regular system from explicit ingredients; the field-level
/// wrapper supplies the gradients by finite differences.
fn regular_eqs(
    ing: &RegularIngredients,
    grad_beta: &[f64; 4],
    grad_ln_phi2: &[f64; 4],
    p: &[f64; 4],
    pair: &ContractionPair,
    mass: f64,
) -> ([f64; 4], [f64; 4]) {
    let g = GammaBasis::shared();
    let u_lo = Bilinears::lower(ing.u, g);
    let s_lo = Bilinears::lower(ing.s, g);
    let p_dot_u: f64 = (0..4).map(|m| p[m] * ing.u[m]).sum();
    let p_dot_s: f64 = (0..4).map(|m| p[m] * ing.s[m]).sum();
    let (sin_b, cos_b) = ing.beta.sin_cos();

    let mut eq_beta = [0.0; 4];
    let mut eq_phi = [0.0; 4];
    for mu in 0..4 {
        eq_beta[mu] = grad_beta[mu] + pair.b[mu] - 2.0 * (p_dot_u * s_lo[mu] - p_dot_s * u_lo[mu])
            + 2.0 * mass * s_lo[mu] * cos_b;
        let mut eps_term = 0.0;
        for rho in 0..4 {
            for nu in 0..4 {
                for alpha in 0..4 {
                    let eps = g.epsilon[mu][rho][nu][alpha];
                    if eps != 0.0 {
                        eps_term += g.eta[rho] * p[rho] * ing.u[nu] * ing.s[alpha] * eps;
                    }
                }
            }
        }
        eq_phi[mu] = grad_ln_phi2[mu] + pair.r[mu] - 2.0 * eps_term + 2.0 * mass * s_lo[mu] * sin_b;
    }
    (eq_beta, eq_phi)
}

/// Regular-class field equations in polar form at one point.
pub fn regular_polar_residuals(
    field: &RegularField,
    conn: &ConnectionField,
    x: Point,
    mass: f64,
    step: f64,
) -> Result<PolarResiduals> {
    let value = field.at(x);
    let class = classify_default(&value)?;
    if !class.label.is_regular() {
        return Err(Error::NotRegular { found: class.label.name() });
    }
    let b = compute_bilinears(&value)?;
    let ing = regular_ingredients(&b);

    let beta_of = |y: Point| -> f64 {
        compute_bilinears(&field.at(y)).map_or(f64::NAN, |b| b.theta.atan2(b.phi))
    };
    let ln_phi2_of = |y: Point| -> f64 {
        compute_bilinears(&field.at(y)).map_or(f64::NAN, |b| (0.5 * b.phi.hypot(b.theta)).ln())
    };
    let mut grad_beta = [0.0; 4];
    let mut grad_ln_phi2 = [0.0; 4];
    for mu in 0..4 {
        grad_beta[mu] = deriv5_scalar(beta_of, x, mu, step);
        grad_ln_phi2[mu] = deriv5_scalar(ln_phi2_of, x, mu, step);
    }
    if !(grad_beta.iter().all(|v| v.is_finite()) && grad_ln_phi2.iter().all(|v| v.is_finite())) {
        return Err(Error::NonFinite { context: "regular polar residual gradients" });
    }

    let pair = contract_r(&conn.r_at(x));
    let (eq_beta, eq_phi) = regular_eqs(&ing, &grad_beta, &grad_ln_phi2, &conn.p_at(x), &pair, mass);
    Ok(PolarResiduals::Regular { eq_beta, eq_phi })
}

/// The pointwise flag-dipole system from explicit ingredients.
fn flag_dipole_eqs(
    b: &Bilinears,
    alpha: f64,
    grad_alpha: &[f64; 4],
    p: &[f64; 4],
    pair: &ContractionPair,
    mass: f64,
) -> Result<[[f64; 4]; 4]> {
    let g = GammaBasis::shared();
    let cos_alpha = alpha.cos();
    if cos_alpha.abs() < 1e-12 {
        return Err(Error::SecantSingularity { cos_alpha });
    }
    let sec = 1.0 / cos_alpha;
    let tan = alpha.tan();
    let m_lo = Bilinears::lower2(b.m, g);
    let u_lo = Bilinears::lower(b.u, g);
    let b_up: [f64; 4] = std::array::from_fn(|i| g.eta[i] * pair.b[i]);
    let grad_alpha_up: [f64; 4] = std::array::from_fn(|i| g.eta[i] * grad_alpha[i]);
    let p_up: [f64; 4] = std::array::from_fn(|i| g.eta[i] * p[i]);

    // W^{mu rho} = eps^{mu rho eta zeta} M_{eta zeta}
    let mut w = [[0.0; 4]; 4];
    for mu in 0..4 {
        for rho in 0..4 {
            let mut acc = 0.0;
            for eta in 0..4 {
                for zeta in 0..4 {
                    let eps = g.epsilon_upper(mu, rho, eta, zeta);
                    if eps != 0.0 {
                        acc += eps * m_lo[eta][zeta];
                    }
                }
            }
            w[mu][rho] = acc;
        }
    }

    // Shared bracket of the second and fourth relations:
    // -B^sigma eps_{sigma mu rho nu} + (R_mu g_{rho nu} - R_rho g_{mu nu})
    //   + (g_{nu mu} d_rho alpha - g_{nu rho} d_mu alpha) tan(alpha)
    let bracket = |mu: usize, rho: usize, nu: usize| -> f64 {
        let mut acc = 0.0;
        for sigma in 0..4 {
            let eps = g.epsilon[sigma][mu][rho][nu];
            if eps != 0.0 {
                acc -= b_up[sigma] * eps;
            }
        }
        if rho == nu {
            acc += pair.r[mu] * g.eta[rho];
            acc -= grad_alpha[mu] * tan * g.eta[rho];
        }
        if mu == nu {
            acc -= pair.r[rho] * g.eta[mu];
            acc += grad_alpha[rho] * tan * g.eta[mu];
        }
        acc
    };

    let mut sing1 = [0.0; 4];
    let mut sing2 = [0.0; 4];
    let mut sing3 = [0.0; 4];
    let mut sing4 = [0.0; 4];
    for nu in 0..4 {
        for rho in 0..4 {
            for sigma in 0..4 {
                let mut coeff1 = 0.0;
                for mu in 0..4 {
                    let eps = g.epsilon_upper(mu, rho, sigma, nu);
                    if eps != 0.0 {
                        coeff1 += eps * grad_alpha[mu] * sec;
                    }
                }
                if sigma == nu {
                    coeff1 -= 2.0 * p_up[rho] * g.eta[sigma];
                }
                if rho == nu {
                    coeff1 += 2.0 * p_up[sigma] * g.eta[rho];
                }
                sing1[nu] += coeff1 * m_lo[rho][sigma];

                let mut coeff3 = 0.0;
                if rho == nu {
                    coeff3 += g.eta[nu] * grad_alpha_up[sigma] * sec;
                }
                if sigma == nu {
                    coeff3 -= g.eta[nu] * grad_alpha_up[rho] * sec;
                }
                for mu in 0..4 {
                    let eps = g.epsilon_upper(mu, rho, sigma, nu);
                    if eps != 0.0 {
                        coeff3 -= 2.0 * p[mu] * eps;
                    }
                }
                sing3[nu] += m_lo[rho][sigma] * coeff3;
            }
        }
        for mu in 0..4 {
            for rho in 0..4 {
                let br = bracket(mu, rho, nu);
                if br != 0.0 {
                    sing2[nu] += br * w[mu][rho];
                    sing4[nu] += br * b.m[mu][rho];
                }
            }
        }
        sing3[nu] += 4.0 * mass * alpha.sin() * b.u[nu];
        sing4[nu] += 4.0 * mass * u_lo[nu];
    }
    Ok([sing1, sing2, sing3, sing4])
}

fn flagpole_eqs(b: &Bilinears, pair: &ContractionPair, mass: f64) -> (f64, f64, [[f64; 4]; 4]) {
    let g = GammaBasis::shared();
    let u_lo = Bilinears::lower(b.u, g);
    let r_up: [f64; 4] = std::array::from_fn(|i| g.eta[i] * pair.r[i]);
    let r_dot_u: f64 = (0..4).map(|m| pair.r[m] * b.u[m]).sum();
    let b_dot_u: f64 = (0..4).map(|m| pair.b[m] * b.u[m]).sum();
    let mut flag = [[0.0; 4]; 4];
    for a in 0..4 {
        for nu in 0..4 {
            let mut acc = b.u[a] * r_up[nu] - b.u[nu] * r_up[a] + 2.0 * mass * b.m[a][nu];
            for rho in 0..4 {
                for mu in 0..4 {
                    let eps = g.epsilon_upper(mu, rho, a, nu);
                    if eps != 0.0 {
                        acc -= pair.b[mu] * eps * u_lo[rho];
                    }
                }
            }
            flag[a][nu] = acc;
        }
    }
    (r_dot_u, b_dot_u, flag)
}

fn dipole_eqs(
    b: &Bilinears,
    p: &[f64; 4],
    pair: &ContractionPair,
    mass: f64,
    sign: f64,
) -> (f64, f64, [[f64; 4]; 4], f64) {
    let g = GammaBasis::shared();
    let u_lo = Bilinears::lower(b.u, g);
    let r_up: [f64; 4] = std::array::from_fn(|i| g.eta[i] * pair.r[i]);
    let momentum: [f64; 4] = std::array::from_fn(|m| -pair.b[m] + sign * 2.0 * p[m]);
    let r_dot_u: f64 = (0..4).map(|m| pair.r[m] * b.u[m]).sum();
    let p_dot_u: f64 = (0..4).map(|m| momentum[m] * b.u[m]).sum();
    let mut flag = [[0.0; 4]; 4];
    for a in 0..4 {
        for nu in 0..4 {
            let mut acc = b.u[a] * r_up[nu] - b.u[nu] * r_up[a];
            for rho in 0..4 {
                for mu in 0..4 {
                    let eps = g.epsilon_upper(mu, rho, a, nu);
                    if eps != 0.0 {
                        acc += momentum[mu] * eps * u_lo[rho];
                    }
                }
            }
            flag[a][nu] = acc;
        }
    }
    let mass_residual = 4.0 * mass.abs() * b.u.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    (r_dot_u, p_dot_u, flag, mass_residual)
}

fn singular_alpha(b: &Bilinears) -> f64 {
    (-b.s[0] / b.u[0]).clamp(-1.0, 1.0).asin()
}

/// Singular-class field equations in polar form at one point; the system
/// evaluated follows `field.kind`.
pub fn singular_polar_residuals(
    field: &SingularField,
    conn: &ConnectionField,
    x: Point,
    mass: f64,
    step: f64,
) -> Result<PolarResiduals> {
    let value = field.at(x);
    let class = classify_default(&value)?;
    if !class.label.is_singular() {
        return Err(Error::NotSingular { found: class.label.name() });
    }
    let b = compute_bilinears(&value)?;
    let p = conn.p_at(x);
    let pair = contract_r(&conn.r_at(x));
    match field.kind {
        SingularKind::FlagDipole => {
            let alpha = singular_alpha(&b);
            let alpha_of = |y: Point| -> f64 {
                compute_bilinears(&field.at(y)).map_or(f64::NAN, |b| singular_alpha(&b))
            };
            let mut grad_alpha = [0.0; 4];
            for mu in 0..4 {
                grad_alpha[mu] = deriv5_scalar(alpha_of, x, mu, step);
            }
            if !grad_alpha.iter().all(|v| v.is_finite()) {
                return Err(Error::NonFinite { context: "flag-dipole alpha gradient" });
            }
            let [sing1, sing2, sing3, sing4] = flag_dipole_eqs(&b, alpha, &grad_alpha, &p, &pair, mass)?;
            Ok(PolarResiduals::FlagDipole { sing1, sing2, sing3, sing4 })
        }
        SingularKind::Flagpole => {
            let max_p = p.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if max_p > 1e-12 {
                return Err(Error::FlagpoleMomentum { max_p });
            }
            let (r_dot_u, b_dot_u, flag) = flagpole_eqs(&b, &pair, mass);
            Ok(PolarResiduals::Flagpole { r_dot_u, b_dot_u, flag })
        }
        SingularKind::DipoleLeft | SingularKind::DipoleRight => {
            let sign = if field.kind == SingularKind::DipoleLeft { 1.0 } else { -1.0 };
            let (r_dot_u, p_dot_u, flag, mass_residual) = dipole_eqs(&b, &p, &pair, mass, sign);
            Ok(PolarResiduals::Dipole { r_dot_u, p_dot_u, flag, mass_residual })
        }
    }
}

/// Classifies the field value at `x` and evaluates the matching polar
/// system; dipole handedness is read off the dominant chiral half.
pub fn polar_residuals(
    psi: &SpinorSampler,
    conn: &ConnectionField,
    x: Point,
    mass: f64,
    step: f64,
) -> Result<PolarResiduals> {
    let value = psi(x);
    let class = classify_default(&value)?;
    match class.label {
        label if label.is_regular() => {
            regular_polar_residuals(&RegularField::new(psi.clone()), conn, x, mass, step)
        }
        LounestoLabel::FlagDipole => singular_polar_residuals(
            &SingularField::new(psi.clone(), SingularKind::FlagDipole),
            conn,
            x,
            mass,
            step,
        ),
        LounestoLabel::Flagpole => singular_polar_residuals(
            &SingularField::new(psi.clone(), SingularKind::Flagpole),
            conn,
            x,
            mass,
            step,
        ),
        _ => {
            let v = &value.components;
            let upper = v[0].norm_sqr() + v[1].norm_sqr();
            let lower = v[2].norm_sqr() + v[3].norm_sqr();
            let kind = if upper >= lower { SingularKind::DipoleLeft } else { SingularKind::DipoleRight };
            singular_polar_residuals(&SingularField::new(psi.clone(), kind), conn, x, mass, step)
        }
    }
}

/// Helicity label of an Elko state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Helicity {
    /// Helicity-up (`+`).
    Up,
    /// Helicity-down (`-`).
    Down,
}

/// Behaviour under charge conjugation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conjugacy {
    /// `C lambda = +lambda`.
    SelfConjugate,
    /// `C lambda = -lambda`.
    AntiSelfConjugate,
}

/// One member of the Elko rest-frame quartet.
#[derive(Clone, Debug)]
pub struct ElkoState {
    /// Overall positive scale.
    pub chi: f64,
    /// Internal phase angle.
    pub omega: f64,
    /// Helicity label.
    pub helicity: Helicity,
    /// Conjugacy label.
    pub conjugacy: Conjugacy,
    /// The column itself.
    pub components: Spinor,
}

impl ElkoState {
    /// Compact tag, e.g. `"S+"`.
    pub fn label(&self) -> &'static str {
        match (self.conjugacy, self.helicity) {
            (Conjugacy::SelfConjugate, Helicity::Up) => "S+",
            (Conjugacy::SelfConjugate, Helicity::Down) => "S-",
            (Conjugacy::AntiSelfConjugate, Helicity::Up) => "A+",
            (Conjugacy::AntiSelfConjugate, Helicity::Down) => "A-",
        }
    }
}

/// The four Elko rest-frame states for scale `chi > 0` and phase `omega`,
/// in the order `S+`, `A+`, `S-`, `A-`.
pub fn elko_states(chi: f64, omega: f64) -> Result<[ElkoState; 4]> {
    if !(chi.is_finite() && omega.is_finite()) {
        return Err(Error::NonFinite { context: "elko parameters" });
    }
    if chi <= 0.0 {
        return Err(Error::Inconsistency(format!("elko scale chi must be positive, got {chi}")));
    }
    let minus = c(0.0, -omega).exp() * chi;
    let plus = c(0.0, omega).exp() * chi;
    let zero = c(0.0, 0.0);
    let make = |components: CVector, helicity, conjugacy| ElkoState {
        chi,
        omega,
        helicity,
        conjugacy,
        components: Spinor::from_column(components),
    };
    Ok([
        make(CVector::new(zero, -minus, plus, zero), Helicity::Up, Conjugacy::SelfConjugate),
        make(CVector::new(zero, minus, plus, zero), Helicity::Up, Conjugacy::AntiSelfConjugate),
        make(CVector::new(minus, zero, zero, plus), Helicity::Down, Conjugacy::SelfConjugate),
        make(CVector::new(-minus, zero, zero, plus), Helicity::Down, Conjugacy::AntiSelfConjugate),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::SpinorTransformation;
    use crate::DEFAULT_FD_STEP;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn max_abs(m: &CMatrix) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn random_r_tensor(rng: &mut impl Rng) -> [[[f64; 4]; 4]; 4] {
        let mut r = [[[0.0; 4]; 4]; 4];
        for i in 0..4 {
            for j in (i + 1)..4 {
                for mu in 0..4 {
                    let v = rng.gen_range(-1.0..1.0);
                    r[i][j][mu] = v;
                    r[j][i][mu] = -v;
                }
            }
        }
        r
    }

    fn random_spinor(rng: &mut impl Rng) -> Spinor {
        Spinor::new(
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        )
    }

    #[test]
    fn gamma_sigma_contraction_reduces_to_the_two_traces() {
        // i gamma^mu (-(1/2) R_{ij mu} sigma^{ij}) = (1/2)(i R_a gamma^a + B_a gamma^a pi)
        let g = GammaBasis::shared();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..25 {
            let r = random_r_tensor(&mut rng);
            let pair = contract_r(&r);
            let mut lhs = CMatrix::zeros();
            for mu in 0..4 {
                lhs += g.gamma[mu] * half_r_sigma(&r, mu, g) * c(0.0, -1.0);
            }
            let mut rhs = CMatrix::zeros();
            for a in 0..4 {
                rhs += g.gamma[a] * c(0.0, 0.5 * pair.r[a]);
                rhs += g.gamma[a] * g.pi * c(0.5 * pair.b[a], 0.0);
            }
            assert!(max_abs(&(lhs - rhs)) < 1e-12);
        }
    }

    #[test]
    fn regular_system_recombines_into_the_dirac_residual() {
        // For arbitrary gradients, connection and mass, the combination
        // (i/2) eq_phi_mu gamma^mu psi + (1/2) eq_beta_mu gamma^mu pi psi
        // must reproduce [(P_mu + (i/2)K_mu) gamma^mu + (1/2)G_mu gamma^mu pi - m] psi
        // with K = d(ln phi^2) + R and G = d(beta) + B, at any regular point.
        let g = GammaBasis::shared();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..60 {
            let psi = random_spinor(&mut rng);
            let b = match compute_bilinears(&psi) {
                Ok(b) => b,
                Err(_) => continue,
            };
            if b.phi.hypot(b.theta) < 0.1 {
                continue;
            }
            let ing = regular_ingredients(&b);
            let r = random_r_tensor(&mut rng);
            let pair = contract_r(&r);
            let p: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            let grad_beta: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            let grad_ln: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            let mass = rng.gen_range(-2.0..2.0);

            let (eq_beta, eq_phi) = regular_eqs(&ing, &grad_beta, &grad_ln, &p, &pair, mass);

            let mut lhs: CVector = psi.components * c(-mass, 0.0);
            for mu in 0..4 {
                let k = grad_ln[mu] + pair.r[mu];
                let gg = grad_beta[mu] + pair.b[mu];
                lhs += g.gamma[mu] * psi.components * c(p[mu], 0.5 * k);
                lhs += g.gamma[mu] * (g.pi * psi.components) * c(0.5 * gg, 0.0);
            }
            let mut rhs = CVector::zeros();
            for mu in 0..4 {
                rhs += g.gamma[mu] * psi.components * c(0.0, 0.5 * eq_phi[mu]);
                rhs += g.gamma[mu] * (g.pi * psi.components) * c(0.5 * eq_beta[mu], 0.0);
            }
            let err = (lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(err < 1e-12, "recombination mismatch {err}");
        }
    }

    #[test]
    fn singular_derivative_assembles_into_the_stated_operator() {
        // i gamma^mu M_mu psi - m psi with the singular M_mu must equal
        // [P gamma + (i/2)(R_mu - tan(a) d_mu a) gamma^mu + (1/2) B gamma pi
        //  - (i/2) sec(a) d_mu a gamma^mu pi - m] psi.
        let g = GammaBasis::shared();
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..30 {
            let psi = random_spinor(&mut rng).components;
            let r = random_r_tensor(&mut rng);
            let pair = contract_r(&r);
            let p: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            let alpha = rng.gen_range(-1.3..1.3);
            let grad_alpha: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            let mass = rng.gen_range(-2.0..2.0);
            let data = crate::connection::PolarPointData::Singular { alpha, grad_alpha };

            let mut lhs: CVector = psi * c(-mass, 0.0);
            for mu in 0..4 {
                let m_mu = crate::connection::polar_derivative_matrix(&data, &p, &r, mu).unwrap();
                lhs += g.gamma[mu] * (m_mu * psi) * c(0.0, 1.0);
            }
            let (tan, sec) = (alpha.tan(), 1.0 / alpha.cos());
            let mut rhs: CVector = psi * c(-mass, 0.0);
            for mu in 0..4 {
                rhs += g.gamma[mu] * psi * c(p[mu], 0.5 * (pair.r[mu] - tan * grad_alpha[mu]));
                rhs += g.gamma[mu] * (g.pi * psi) * c(0.5 * pair.b[mu], -0.5 * sec * grad_alpha[mu]);
            }
            assert!((lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-12);
        }
    }

    #[test]
    fn plane_wave_solves_with_connection_or_field_phase() {
        let mass = 1.2;
        let rest = Spinor::from_reals([1.0, 0.0, 1.0, 0.0]);
        // Phase carried by the connection: constant field, P = (m, 0, 0, 0).
        let conn = ConnectionField::constant([mass, 0.0, 0.0, 0.0], [[[0.0; 4]; 4]; 4]);
        let out = dirac_residual(|_| rest, &conn, [0.3, 0.1, -0.2, 0.5], mass, DEFAULT_FD_STEP).unwrap();
        assert!(out.norm < 1e-12, "connection-carried: {}", out.norm);
        // Phase carried by the field: psi = exp(-i m t) psi_rest, P = 0.
        let conn = ConnectionField::zero();
        let field = move |x: Point| {
            Spinor::from_column(rest.components * c(0.0, -mass * x[0]).exp())
        };
        let out = dirac_residual(field, &conn, [0.3, 0.1, -0.2, 0.5], mass, DEFAULT_FD_STEP).unwrap();
        assert!(out.norm < 1e-10, "field-carried: {}", out.norm);
    }

    #[test]
    fn dipole_background_discriminates_handedness() {
        // P = (1,0,0,0) with R_{123} = -2 gives B = (2,0,0,0) and R_mu = 0;
        // a constant left-handed Weyl field then solves the massless
        // equation exactly, and only the left-handed system sees it.
        let mut r = [[[0.0; 4]; 4]; 4];
        r[1][2][3] = -2.0;
        r[2][1][3] = 2.0;
        let conn = ConnectionField::constant([1.0, 0.0, 0.0, 0.0], r);
        let left = Spinor::from_reals([1.0, 0.0, 0.0, 0.0]);
        let x = [0.2, -0.4, 0.6, 0.8];

        let out = dirac_residual(|_| left, &conn, x, 0.0, DEFAULT_FD_STEP).unwrap();
        assert!(out.norm < 1e-13, "dirac residual {}", out.norm);

        let field = SingularField::constant(left, SingularKind::DipoleLeft);
        let res = singular_polar_residuals(&field, &conn, x, 0.0, DEFAULT_FD_STEP).unwrap();
        assert!(res.max_abs() < 1e-13, "left system {}", res.max_abs());

        let field = SingularField::constant(left, SingularKind::DipoleRight);
        match singular_polar_residuals(&field, &conn, x, 0.0, DEFAULT_FD_STEP).unwrap() {
            PolarResiduals::Dipole { p_dot_u, .. } => assert!((p_dot_u + 4.0).abs() < 1e-13),
            other => panic!("unexpected variant {}", other.class()),
        }

        // The mirrored background solves for the right-handed Weyl column.
        let mut r = [[[0.0; 4]; 4]; 4];
        r[1][2][3] = 2.0;
        r[2][1][3] = -2.0;
        let conn = ConnectionField::constant([1.0, 0.0, 0.0, 0.0], r);
        let right = Spinor::from_reals([0.0, 0.0, 0.0, 1.0]);
        let out = dirac_residual(|_| right, &conn, x, 0.0, DEFAULT_FD_STEP).unwrap();
        assert!(out.norm < 1e-13);
        let field = SingularField::constant(right, SingularKind::DipoleRight);
        let res = singular_polar_residuals(&field, &conn, x, 0.0, DEFAULT_FD_STEP).unwrap();
        assert!(res.max_abs() < 1e-13, "right system {}", res.max_abs());
    }

    #[test]
    fn flagpole_background_annihilates_the_majorana_column() {
        let mass = 0.7;
        let conn = ConnectionField::r_single(2, 1, 1, -2.0 * mass);
        let lambda = Spinor::from_reals([1.0, 0.0, 0.0, 1.0]);
        let x = [0.1, 0.2, 0.3, 0.4];
        let out = dirac_residual(|_| lambda, &conn, x, mass, DEFAULT_FD_STEP).unwrap();
        assert!(out.norm < 1e-13);

        let field = SingularField::constant(lambda, SingularKind::Flagpole);
        let res = singular_polar_residuals(&field, &conn, x, mass, DEFAULT_FD_STEP).unwrap();
        assert!(res.max_abs() < 1e-12, "flagpole system {}", res.max_abs());

        // A wrong mass must show up in the flag relation.
        let res = singular_polar_residuals(&field, &conn, x, 2.0 * mass, DEFAULT_FD_STEP).unwrap();
        assert!(res.max_abs() > 1.0);

        // Nonzero momentum is rejected for flagpoles.
        let bad = ConnectionField::constant([0.3, 0.0, 0.0, 0.0], [[[0.0; 4]; 4]; 4]);
        assert!(matches!(
            singular_polar_residuals(&field, &bad, x, mass, DEFAULT_FD_STEP),
            Err(Error::FlagpoleMomentum { .. })
        ));
    }

    #[test]
    fn flag_dipole_system_reduces_correctly_in_the_flagpole_limit() {
        // Evaluated as a flag-dipole (alpha = 0, constant), the pinned
        // flagpole solution must still satisfy all four relations; the
        // mass term in the fourth is cancelled by the connection term.
        let mass = 0.9;
        let conn = ConnectionField::r_single(2, 1, 1, -2.0 * mass);
        let lambda = Spinor::from_reals([1.0, 0.0, 0.0, 1.0]);
        let field = SingularField::constant(lambda, SingularKind::FlagDipole);
        let res = singular_polar_residuals(&field, &conn, [0.0; 4], mass, DEFAULT_FD_STEP).unwrap();
        assert!(res.max_abs() < 1e-10, "flag-dipole reduction {}", res.max_abs());
        match singular_polar_residuals(&field, &conn, [0.0; 4], 2.0 * mass, DEFAULT_FD_STEP).unwrap() {
            PolarResiduals::FlagDipole { sing4, .. } => {
                assert!(sing4.iter().any(|v| v.abs() > 1.0), "mass term must bite");
            }
            other => panic!("unexpected variant {}", other.class()),
        }
    }

    #[test]
    fn flag_dipole_gradient_wrapper_matches_analytic_alpha() {
        // alpha(x) = 0.3 + 0.2 x^1 through a varying prefactor; the finite
        // difference of the extracted alpha must match the slope.
        let lambda = Arc::new(move |x: Point| {
            let alpha = 0.3 + 0.2 * x[1];
            let (s, c2) = (alpha / 2.0).sin_cos();
            let inv = 1.0 / 2.0f64.sqrt();
            Spinor::from_reals([(c2 + s) * inv, 0.0, 0.0, (c2 - s) * inv])
        }) as SpinorSampler;
        let field = SingularField::new(lambda.clone(), SingularKind::FlagDipole);
        let conn = ConnectionField::zero();
        let x = [0.0, 0.4, 0.0, 0.0];
        let out = singular_polar_residuals(&field, &conn, x, 0.0, DEFAULT_FD_STEP).unwrap();

        let b = compute_bilinears(&lambda(x)).unwrap();
        let alpha = singular_alpha(&b);
        assert!((alpha - (0.3 + 0.2 * 0.4)).abs() < 1e-12);
        let pair = contract_r(&ConnectionField::zero().r_at(x));
        let expected =
            flag_dipole_eqs(&b, alpha, &[0.0, 0.2, 0.0, 0.0], &[0.0; 4], &pair, 0.0).unwrap();
        match out {
            PolarResiduals::FlagDipole { sing1, sing2, sing3, sing4 } => {
                let got = [sing1, sing2, sing3, sing4];
                for (gv, ev) in got.iter().zip(expected.iter()) {
                    for nu in 0..4 {
                        assert!((gv[nu] - ev[nu]).abs() < 1e-9, "{gv:?} vs {ev:?}");
                    }
                }
            }
            other => panic!("unexpected variant {}", other.class()),
        }
    }

    #[test]
    fn dispatcher_routes_by_class() {
        let conn = ConnectionField::zero();
        let step = DEFAULT_FD_STEP;
        let x = [0.0; 4];
        let make = |s: Spinor| Arc::new(move |_| s) as SpinorSampler;

        let res = polar_residuals(&make(Spinor::from_reals([1.0, 0.0, 1.0, 0.0])), &conn, x, 0.0, step).unwrap();
        assert_eq!(res.class(), "Regular");
        let res = polar_residuals(&make(Spinor::from_reals([1.0, 0.0, 0.0, 1.0])), &conn, x, 0.0, step).unwrap();
        assert_eq!(res.class(), "Flagpole");
        let interp = {
            let (s, c2) = (0.15f64).sin_cos();
            let inv = 1.0 / 2.0f64.sqrt();
            Spinor::from_reals([(c2 + s) * inv, 0.0, 0.0, (c2 - s) * inv])
        };
        let res = polar_residuals(&make(interp), &conn, x, 0.0, step).unwrap();
        assert_eq!(res.class(), "FlagDipole");

        // Dipole handedness is auto-detected: an unbalanced background
        // distinguishes them through the sign of the 2P term.
        let conn_p = ConnectionField::constant([1.0, 0.0, 0.0, 0.0], [[[0.0; 4]; 4]; 4]);
        let left = polar_residuals(&make(Spinor::from_reals([1.0, 0.0, 0.0, 0.0])), &conn_p, x, 0.0, step).unwrap();
        let right = polar_residuals(&make(Spinor::from_reals([0.0, 0.0, 0.0, 1.0])), &conn_p, x, 0.0, step).unwrap();
        match (left, right) {
            (PolarResiduals::Dipole { p_dot_u: l, .. }, PolarResiduals::Dipole { p_dot_u: r, .. }) => {
                // U^0 = 1, B = 0: left sees +2, right sees -2.
                assert!((l - 2.0).abs() < 1e-13);
                assert!((r + 2.0).abs() < 1e-13);
            }
            _ => panic!("expected dipole variants"),
        }
    }

    #[test]
    fn regular_plane_wave_satisfies_the_polar_system() {
        // Constant rest spinor against P = (m,0,0,0): both polar relations
        // hold (the mass term balances the momentum term).
        let mass = 1.1;
        let conn = ConnectionField::constant([mass, 0.0, 0.0, 0.0], [[[0.0; 4]; 4]; 4]);
        let field = RegularField::constant(Spinor::from_reals([1.0, 0.0, 1.0, 0.0]));
        let res = regular_polar_residuals(&field, &conn, [0.1, 0.2, 0.3, 0.4], mass, DEFAULT_FD_STEP).unwrap();
        assert!(res.max_abs() < 1e-12, "regular system {}", res.max_abs());
        // Wrong mass leaves a visible residual.
        let res = regular_polar_residuals(&field, &conn, [0.1, 0.2, 0.3, 0.4], 2.0 * mass, DEFAULT_FD_STEP).unwrap();
        assert!(res.max_abs() > 0.5);
    }

    #[test]
    fn flagpole_matrix_matches_the_pinned_display() {
        let mass = 1.3;
        let pair = contract_r(&ConnectionField::r_single(2, 1, 1, -2.0 * mass).r_at([0.0; 4]));
        let matrix = flagpole_dirac_matrix(&pair.r, &pair.b, mass);
        let display = [
            [1.0, 0.0, 0.0, -1.0],
            [0.0, 1.0, 1.0, 0.0],
            [0.0, 1.0, 1.0, 0.0],
            [-1.0, 0.0, 0.0, 1.0],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert!((matrix[(i, j)] - c(-2.0 * mass * display[i][j], 0.0)).norm() < 1e-13);
            }
        }
        let kernel = [Spinor::from_reals([1.0, 0.0, 0.0, 1.0]), Spinor::from_reals([0.0, -1.0, 1.0, 0.0])];
        for v in kernel {
            assert!((matrix * v.components).iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-13);
        }
        let image = matrix * Spinor::from_reals([-1.0, 0.0, 0.0, 1.0]).components;
        assert!((image[0] - c(4.0 * mass, 0.0)).norm() < 1e-13);
        assert!((image[3] - c(-4.0 * mass, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn conjugation_fixes_self_and_flips_antiself_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        for _ in 0..20 {
            let chi = rng.gen_range(0.2..2.0);
            let omega = rng.gen_range(-3.0..3.0);
            for state in elko_states(chi, omega).unwrap() {
                let image = apply_c(&state.components);
                let sign = match state.conjugacy {
                    Conjugacy::SelfConjugate => 1.0,
                    Conjugacy::AntiSelfConjugate => -1.0,
                };
                let err = (image.components - state.components.components * c(sign, 0.0))
                    .iter()
                    .map(|z| z.norm())
                    .fold(0.0, f64::max);
                assert!(err < 1e-14, "{} conjugacy error {err}", state.label());
            }
            // C is an involution.
            let psi = random_spinor(&mut rng);
            let twice = apply_c(&apply_c(&psi));
            assert!((twice.components - psi.components).iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-15);
        }
        assert!(elko_states(-1.0, 0.0).is_err());
    }

    #[test]
    fn chiral_flip_pairs_the_quartet() {
        let [s_up, a_up, s_down, a_down] = elko_states(0.8, 1.1).unwrap();
        for (s, a) in [(s_up, a_up), (s_down, a_down)] {
            let err = (apply_m(&a.components).components - s.components.components)
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-15);
        }
    }

    #[test]
    fn chiral_flip_sends_solutions_of_m_to_solutions_of_minus_m() {
        // i gamma^mu D_mu (pi psi) + m (pi psi) = -pi (i gamma^mu D_mu psi - m psi)
        // for any field and connection, so the residual norms agree exactly.
        let mass = 0.9;
        let mut r = [[[0.0; 4]; 4]; 4];
        r[0][2][1] = 0.4;
        r[2][0][1] = -0.4;
        let conn = ConnectionField::constant([0.3, 0.1, 0.0, -0.2], r);
        let base = move |x: Point| {
            Spinor::new(
                c((0.3 * x[1]).cos(), 0.1 * x[0]),
                c(0.2, -0.4 * x[2]),
                c(0.5 * x[3], 0.3),
                c(-0.1, 0.6),
            )
        };
        let x = [0.2, -0.1, 0.4, 0.3];
        let direct = dirac_residual(base, &conn, x, mass, DEFAULT_FD_STEP).unwrap();
        let flipped = dirac_residual(move |y| apply_m(&base(y)), &conn, x, -mass, DEFAULT_FD_STEP).unwrap();
        assert!((direct.norm - flipped.norm).abs() < 1e-12);
        let expected = apply_m(&direct.residual).components * c(-1.0, 0.0);
        let err = (flipped.residual.components - expected).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(err < 1e-12);
    }

    #[test]
    fn rest_frame_momentum_relations_hold_only_without_internal_phase() {
        let g = GammaBasis::shared();
        let chi = 0.7;
        let mass = 1.4;
        let relation = |a: &Spinor, sign: f64, b: &Spinor| -> f64 {
            let lhs = g.gamma_lower(0) * a.components * c(mass, 0.0)
                + b.components * c(sign * mass, 0.0);
            lhs.iter().map(|z| z.norm()).fold(0.0, f64::max)
        };
        let [s_up, a_up, s_down, a_down] = elko_states(chi, 0.0).unwrap();
        assert!(relation(&s_up.components, 1.0, &a_down.components) < 1e-14);
        assert!(relation(&s_down.components, -1.0, &a_up.components) < 1e-14);
        assert!(relation(&a_up.components, -1.0, &s_down.components) < 1e-14);
        assert!(relation(&a_down.components, 1.0, &s_up.components) < 1e-14);

        let omega = 0.6;
        let [s_up, _, _, a_down] = elko_states(chi, omega).unwrap();
        let residual = relation(&s_up.components, 1.0, &a_down.components);
        assert!((residual - 2.0 * chi * mass * omega.sin().abs()).abs() < 1e-13);
    }

    #[test]
    fn momentum_relations_are_covariant_under_proper_transformations() {
        let g = GammaBasis::shared();
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        for _ in 0..40 {
            let mass = rng.gen_range(0.5..2.0);
            let chi = rng.gen_range(0.3..1.5);
            let boost = SpinorTransformation::boost([
                rng.gen_range(-1.5..1.5),
                rng.gen_range(-1.5..1.5),
                rng.gen_range(-1.5..1.5),
            ])
            .unwrap();
            let rot = SpinorTransformation::rotation([
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
            ])
            .unwrap();
            let s_matrix = boost.matrix * rot.matrix;
            let lb = boost.lorentz_matrix();
            let lr = rot.lorentz_matrix();
            let mut v = [0.0; 4];
            for a in 0..4 {
                for bb in 0..4 {
                    v[a] += lb[a][bb] * lr[bb][0];
                }
            }
            let p: [f64; 4] = v.map(|x| mass * x);

            let [s_up, a_up, s_down, a_down] = elko_states(chi, 0.0).unwrap();
            let slash = {
                let mut m = CMatrix::zeros();
                for mu in 0..4 {
                    m += g.gamma_lower(mu) * c(p[mu], 0.0);
                }
                m
            };
            let pairs = [
                (&s_up, 1.0, &a_down),
                (&s_down, -1.0, &a_up),
                (&a_up, -1.0, &s_down),
                (&a_down, 1.0, &s_up),
            ];
            for (first, sign, second) in pairs {
                let lhs = slash * (s_matrix * first.components.components)
                    + s_matrix * second.components.components * c(sign * mass, 0.0);
                let err = lhs.iter().map(|z| z.norm()).fold(0.0, f64::max);
                assert!(err < 1e-10, "covariant relation failed: {err}");
            }
        }
    }
}
