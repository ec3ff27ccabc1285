//! Numerical toolkit for the polar re-formulation of spinor fields.
//!
//! The crate builds the Clifford algebra in the chiral representation,
//! computes the sixteen bilinear covariants of a Dirac spinor, checks the
//! Fierz interrelations, classifies spinors into the six Lounesto classes,
//! and performs the polar decomposition of both regular and singular
//! spinors.  On top of that sit the tensorial connections (the gauge
//! potential `P_mu` and the space-time connection `R_{ij mu}`), residual
//! evaluators for the Dirac equation written in polar variables, the
//! discrete charge/parity-type transformations, Elko (eigenspinors of
//! charge conjugation), and a doubly-chiral plane-wave expansion that
//! reconstructs closed-form solutions from a constant connection.
//!
//! # Conventions
//!
//! * metric signature `(+,-,-,-)`;
//! * chiral (Weyl) representation: the left-handed two-component block
//!   sits on top, `pi = diag(-1,-1,+1,+1)`;
//! * `sigma^{ab} = [gamma^a, gamma^b] / 4`;
//! * Levi-Civita symbol normalised by `epsilon_{0123} = +1` (so
//!   `epsilon^{0123} = -1`);
//! * antisymmetrisation without a combinatorial factor:
//!   `X_[a Y_b] = X_a Y_b - X_b Y_a`.
//!
//! All conventions are enforced at run time: [`clifford::GammaBasis`]
//! re-derives the defining identities when it is built and refuses to
//! hand out a basis that does not satisfy them to `1e-14`.

#![forbid(unsafe_code)]
// Tensor contractions are written with explicit summation indices so the
// code matches the formulas; iterator rewrites would obscure them.
#![allow(clippy::needless_range_loop)]

pub mod batch;
pub mod bilinears;
pub mod clifford;
pub mod connection;
pub mod dirac;
mod fd;
pub mod lounesto;
pub mod planewave;
pub mod polar;

/// A space-time point `(t, x, y, z)` in Cartesian coordinates.
pub type Point = [f64; 4];

/// Default tolerance for classification decisions on normalised bilinears.
pub const DEFAULT_CLASS_TOL: f64 = 1e-9;

/// Default tolerance for residuals of the Dirac equation and its polar
/// re-formulations.
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-10;

/// Default finite-difference step for sampled fields.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Errors reported by the spinor-polar toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A floating-point input (or an intermediate) is NaN or infinite.
    #[error("non-finite value encountered in {context}")]
    NonFinite {
        /// Human-readable description of where the value appeared.
        context: &'static str,
    },

    /// A defining identity of the Clifford basis failed its build-time check.
    #[error("convention check `{check}` failed with residual {residual:.3e}")]
    ConventionBroken {
        /// Name of the violated identity.
        check: &'static str,
        /// Magnitude of the violation.
        residual: f64,
    },

    /// The matrix exponential overflowed (argument too large to scale).
    #[error("matrix exponential overflow: input norm {norm:.3e}")]
    ExpOverflow {
        /// 1-norm of the offending matrix.
        norm: f64,
    },

    /// A bilinear that must be real came out with a large imaginary part.
    #[error("bilinear reality violation: |Im| = {imaginary:.3e} in {which}")]
    RealityViolation {
        /// Which bilinear failed.
        which: &'static str,
        /// Size of the imaginary contamination.
        imaginary: f64,
    },

    /// The spinor is numerically zero, so no classification is possible.
    #[error("spinor is numerically zero: U^0 = {u0:.3e} <= tol = {tol:.3e}")]
    ZeroSpinor {
        /// Time component of the velocity bilinear (the spinor norm squared).
        u0: f64,
        /// Tolerance the norm was compared against.
        tol: f64,
    },

    /// Internally inconsistent data (should not happen for genuine spinors).
    #[error("inconsistent data: {0}")]
    Inconsistency(String),

    /// A regular-only operation received a singular spinor.
    #[error("operation requires a regular spinor, found {found}")]
    NotRegular {
        /// The class that was actually detected.
        found: &'static str,
    },

    /// A singular-only operation received a regular spinor.
    #[error("operation requires a singular spinor, found {found}")]
    NotSingular {
        /// The class that was actually detected.
        found: &'static str,
    },

    /// A flagpole evaluation was asked for with a non-vanishing momentum.
    #[error("flagpole form requires vanishing momentum, max |P_mu| = {max_p:.3e}")]
    FlagpoleMomentum {
        /// Largest momentum component encountered.
        max_p: f64,
    },

    /// `1/cos(alpha)` blew up in the singular polar Dirac form.
    #[error("sec(alpha) singularity: |cos(alpha)| = {cos_alpha:.3e}")]
    SecantSingularity {
        /// Value of `cos(alpha)` at the offending point.
        cos_alpha: f64,
    },

    /// A frame vector failed its normalisation or orthogonality check.
    #[error("frame normalisation failure in {what}: residual {value:.3e}")]
    FrameNormalization {
        /// Which normalisation was violated.
        what: &'static str,
        /// Magnitude of the violation.
        value: f64,
    },
}

/// Convenient result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

pub use bilinears::{compute_bilinears, fierz_check, Bilinears, FierzReport, Spinor};
pub use clifford::{
    build_gamma_basis, matrix_exponential, CMatrix, CVector, GammaBasis, SpinorTransformation,
    TransformationParams,
};
pub use connection::{
    build_tensorial, contract_r, polar_derivative_matrix, ConnectionField, ContractionPair,
    GaugeData, PolarPointData, RSampler, RTensor, ScalarSampler, Tensor2Sampler, VectorSampler,
};
pub use dirac::{
    apply_c, apply_m, dirac_residual, elko_states, flagpole_dirac_matrix, polar_residuals,
    regular_polar_residuals, singular_polar_residuals, Conjugacy, DiracResidual, ElkoState,
    Helicity, PolarResiduals, RegularField, SingularField, SingularKind, SpinorSampler,
};
pub use lounesto::{classify, classify_default, LounestoClass, LounestoLabel};
pub use planewave::{chiral_split, expand, verify_expansion, ExpansionResult, Path};
pub use polar::{
    decompose_regular, decompose_singular, reconstruct_regular, reconstruct_singular, AlphaBranch,
    PolarRegular, PolarSingular,
};
