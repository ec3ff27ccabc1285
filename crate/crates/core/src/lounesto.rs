//! Lounesto classification of spinors from their bilinear covariants.

use crate::bilinears::{compute_bilinears, Spinor};
use crate::{Error, Result, DEFAULT_CLASS_TOL};

/// The six Lounesto classes: three regular refinements plus the singular
/// flag-dipole family and its two degenerate sub-classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LounestoLabel {
    /// Regular with both scalar and pseudo-scalar nonzero (class 1).
    RegularBoth,
    /// Regular with vanishing pseudo-scalar (class 2).
    RegularScalar,
    /// Regular with vanishing scalar (class 3).
    RegularPseudo,
    /// Singular with both S and M nonzero (class 4).
    FlagDipole,
    /// Singular with S = 0: the Majorana family (class 5).
    Flagpole,
    /// Singular with M = 0: the Weyl family (class 6).
    Dipole,
}

impl LounestoLabel {
    /// True for the three regular classes.
    pub fn is_regular(&self) -> bool {
        matches!(self, Self::RegularBoth | Self::RegularScalar | Self::RegularPseudo)
    }

    /// True for the three singular classes.
    pub fn is_singular(&self) -> bool {
        !self.is_regular()
    }

    /// Stable display name.
    pub fn name(&self) -> &'static str {
        match self {
            Self::RegularBoth => "Regular(Phi != 0, Theta != 0)",
            Self::RegularScalar => "Regular(Phi != 0, Theta = 0)",
            Self::RegularPseudo => "Regular(Phi = 0, Theta != 0)",
            Self::FlagDipole => "FlagDipole",
            Self::Flagpole => "Flagpole",
            Self::Dipole => "Dipole",
        }
    }
}

/// Bilinear magnitudes normalised by `U^0`, the data the decision is
/// actually made on.
#[derive(Clone, Copy, Debug)]
pub struct NormalizedMagnitudes {
    /// `|Phi| / U^0`.
    pub phi: f64,
    /// `|Theta| / U^0`.
    pub theta: f64,
    /// `max_a |S^a| / U^0`.
    pub s_max: f64,
    /// `max_ab |M^{ab}| / U^0`.
    pub m_max: f64,
}

/// Outcome of a classification.
#[derive(Clone, Copy, Debug)]
pub struct LounestoClass {
    /// The decided class.
    pub label: LounestoLabel,
    /// Tolerance the normalised magnitudes were compared against.
    pub tolerance_used: f64,
    /// The normalised magnitudes themselves.
    pub magnitudes: NormalizedMagnitudes,
}

/// Classifies a spinor with the given relative tolerance `tau`.
pub fn classify(psi: &Spinor, tau: f64) -> Result<LounestoClass> {
    if !tau.is_finite() || tau <= 0.0 {
        return Err(Error::NonFinite { context: "classification tolerance" });
    }
    let b = compute_bilinears(psi)?;
    let u0 = b.u[0];
    if u0 <= tau {
        return Err(Error::ZeroSpinor { u0, tol: tau });
    }

    let magnitudes = NormalizedMagnitudes {
        phi: b.phi.abs() / u0,
        theta: b.theta.abs() / u0,
        s_max: b.s.iter().map(|v| v.abs()).fold(0.0, f64::max) / u0,
        m_max: b
            .m
            .iter()
            .flat_map(|row| row.iter())
            .map(|v| v.abs())
            .fold(0.0, f64::max)
            / u0,
    };

    let label = if magnitudes.phi > tau || magnitudes.theta > tau {
        if magnitudes.theta <= tau {
            LounestoLabel::RegularScalar
        } else if magnitudes.phi <= tau {
            LounestoLabel::RegularPseudo
        } else {
            LounestoLabel::RegularBoth
        }
    } else {
        let s_zero = magnitudes.s_max <= tau;
        let m_zero = magnitudes.m_max <= tau;
        match (s_zero, m_zero) {
            (true, true) => {
                return Err(Error::Inconsistency(format!(
                    "singular spinor with S and M both below tolerance (s_max = {:.3e}, m_max = {:.3e}); \
                     the Fierz identities forbid this for a nonzero spinor",
                    magnitudes.s_max, magnitudes.m_max
                )))
            }
            (true, false) => LounestoLabel::Flagpole,
            (false, true) => LounestoLabel::Dipole,
            (false, false) => LounestoLabel::FlagDipole,
        }
    };

    Ok(LounestoClass { label, tolerance_used: tau, magnitudes })
}

/// Classifies with the default tolerance.
pub fn classify_default(psi: &Spinor) -> Result<LounestoClass> {
    classify(psi, DEFAULT_CLASS_TOL)
}
