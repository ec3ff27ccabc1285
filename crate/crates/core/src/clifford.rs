//! Chiral-representation Clifford algebra, spinor transformations, and a
//! dense 4×4 complex matrix exponential.
//!
//! Everything downstream depends on the conventions fixed here, so the
//! basis is not written down as trusted constants: [`build_gamma_basis`]
//! re-derives every defining identity numerically and fails loudly if any
//! of them misses `1e-14`.

use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64;
use std::sync::OnceLock;

use crate::{Error, Result};

/// Dense 4×4 complex matrix.
pub type CMatrix = Matrix4<Complex64>;

/// 4-component complex column vector (raw storage of a spinor).
pub type CVector = Vector4<Complex64>;

/// Entrywise tolerance for the build-time convention checks.
pub const BASIS_TOL: f64 = 1e-14;

/// Index pairs `(a, b)` addressed by the six Lorentz parameters
/// `theta_ab`, in the order: boosts along the three axes, then rotations
/// about the three axes.
pub const THETA_INDEX: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2)];

#[inline]
fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Largest entry modulus of `m`.
pub(crate) fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    max_abs(&(a - b))
}

/// Assembles a 4×4 matrix from four 2×2 blocks.
fn block(ul: &Matrix2<Complex64>, ur: &Matrix2<Complex64>, ll: &Matrix2<Complex64>, lr: &Matrix2<Complex64>) -> CMatrix {
    let mut m = CMatrix::zeros();
    for r in 0..2 {
        for col in 0..2 {
            m[(r, col)] = ul[(r, col)];
            m[(r, col + 2)] = ur[(r, col)];
            m[(r + 2, col)] = ll[(r, col)];
            m[(r + 2, col + 2)] = lr[(r, col)];
        }
    }
    m
}

/// The fixed Clifford data: gamma matrices, the chirality matrix `pi`,
/// the generators `sigma[a][b]`, the metric diagonal, and the rank-4
/// Levi-Civita symbol with `epsilon[0][1][2][3] = +1` (lower indices).
#[derive(Clone, Debug)]
pub struct GammaBasis {
    /// `gamma[a]` is the matrix with one raised index, `a = 0..=3`.
    pub gamma: [CMatrix; 4],
    /// Chirality matrix `pi = i gamma^0 gamma^1 gamma^2 gamma^3`;
    /// diagonal `(-1, -1, +1, +1)` so the left-handed block sits on top.
    pub pi: CMatrix,
    /// `sigma[a][b] = [gamma^a, gamma^b] / 4` (both indices raised).
    pub sigma: [[CMatrix; 4]; 4],
    /// Diagonal of the metric, `(+1, -1, -1, -1)`.
    pub eta: [f64; 4],
    /// Levi-Civita symbol with all indices lowered.
    pub epsilon: [[[[f64; 4]; 4]; 4]; 4],
}

impl GammaBasis {
    /// Levi-Civita symbol with all indices raised:
    /// `epsilon^{abcd} = eta^{aa} eta^{bb} eta^{cc} eta^{dd} epsilon_{abcd}`.
    #[inline]
    pub fn epsilon_upper(&self, a: usize, b: usize, cc: usize, d: usize) -> f64 {
        self.eta[a] * self.eta[b] * self.eta[cc] * self.eta[d] * self.epsilon[a][b][cc][d]
    }

    /// `sigma` with both indices lowered.
    #[inline]
    pub fn sigma_lower(&self, a: usize, b: usize) -> CMatrix {
        self.sigma[a][b] * c(self.eta[a] * self.eta[b], 0.0)
    }

    /// `gamma` with the index lowered.
    #[inline]
    pub fn gamma_lower(&self, a: usize) -> CMatrix {
        self.gamma[a] * c(self.eta[a], 0.0)
    }

    /// Process-wide shared basis (built once, then reused).
    pub fn shared() -> &'static GammaBasis {
        static SHARED: OnceLock<GammaBasis> = OnceLock::new();
        SHARED.get_or_init(|| {
            build_gamma_basis().expect("the fixed chiral-representation constants satisfy the Clifford identities")
        })
    }
}

/// Builds the chiral-representation basis and verifies every defining
/// identity to [`BASIS_TOL`] entrywise.
pub fn build_gamma_basis() -> Result<GammaBasis> {
    let zero2 = Matrix2::zeros();
    let id2 = Matrix2::identity();
    let pauli = [
        Matrix2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)),
        Matrix2::new(c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)),
        Matrix2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)),
    ];

    let gamma0 = block(&zero2, &id2, &id2, &zero2);
    let gamma_k = |k: usize| block(&zero2, &pauli[k], &(-pauli[k]), &zero2);
    let gamma = [gamma0, gamma_k(0), gamma_k(1), gamma_k(2)];

    let pi = gamma[0] * gamma[1] * gamma[2] * gamma[3] * c(0.0, 1.0);

    let mut sigma = [[CMatrix::zeros(); 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            sigma[a][b] = (gamma[a] * gamma[b] - gamma[b] * gamma[a]) * c(0.25, 0.0);
        }
    }

    let eta = [1.0, -1.0, -1.0, -1.0];

    let mut epsilon = [[[[0.0f64; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for cc in 0..4 {
                for d in 0..4 {
                    epsilon[a][b][cc][d] = permutation_sign([a, b, cc, d]);
                }
            }
        }
    }

    let basis = GammaBasis { gamma, pi, sigma, eta, epsilon };
    verify_basis(&basis)?;
    Ok(basis)
}

/// Kronecker-free sign of the permutation taking `(0,1,2,3)` to `p`;
/// zero when `p` has a repeated entry.
fn permutation_sign(p: [usize; 4]) -> f64 {
    let mut sign = 1.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if p[i] == p[j] {
                return 0.0;
            }
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

fn check(name: &'static str, residual: f64) -> Result<()> {
    if !residual.is_finite() || residual > BASIS_TOL {
        return Err(Error::ConventionBroken { check: name, residual });
    }
    Ok(())
}

fn verify_basis(g: &GammaBasis) -> Result<()> {
    let id = CMatrix::identity();

    // {gamma^a, gamma^b} = 2 eta^{ab} I.
    for a in 0..4 {
        for b in 0..4 {
            let anti = g.gamma[a] * g.gamma[b] + g.gamma[b] * g.gamma[a];
            let expected = if a == b { id * c(2.0 * g.eta[a], 0.0) } else { CMatrix::zeros() };
            check("anticommutator {gamma^a, gamma^b} = 2 eta^{ab} I", max_abs_diff(&anti, &expected))?;
        }
    }

    // pi^2 = I and pi anticommutes with every gamma^a.
    check("pi^2 = I", max_abs_diff(&(g.pi * g.pi), &id))?;
    for a in 0..4 {
        let anti = g.pi * g.gamma[a] + g.gamma[a] * g.pi;
        check("pi gamma^a + gamma^a pi = 0", max_abs(&anti))?;
    }

    // Hermiticity structure that makes every bilinear real.
    for a in 0..4 {
        let adj = g.gamma[0] * g.gamma[a].adjoint() * g.gamma[0];
        check("gamma^0 (gamma^a)^dagger gamma^0 = gamma^a", max_abs_diff(&adj, &g.gamma[a]))?;
    }

    // [gamma^a, gamma^b] = 4 sigma^{ab} and antisymmetry of sigma.
    for a in 0..4 {
        for b in 0..4 {
            let comm = g.gamma[a] * g.gamma[b] - g.gamma[b] * g.gamma[a];
            check("[gamma^a, gamma^b] = 4 sigma^{ab}", max_abs_diff(&comm, &(g.sigma[a][b] * c(4.0, 0.0))))?;
            check("sigma^{ab} = -sigma^{ba}", max_abs_diff(&g.sigma[a][b], &(-g.sigma[b][a])))?;
        }
    }

    // The calibration identity fixing the relative sign of pi and epsilon:
    // 2i sigma_{ab} pi = epsilon_{abcd} sigma^{cd}.
    for a in 0..4 {
        for b in 0..4 {
            let lhs = g.sigma_lower(a, b) * g.pi * c(0.0, 2.0);
            let mut rhs = CMatrix::zeros();
            for cc in 0..4 {
                for d in 0..4 {
                    rhs += g.sigma[cc][d] * c(g.epsilon[a][b][cc][d], 0.0);
                }
            }
            check("2i sigma_{ab} pi = epsilon_{abcd} sigma^{cd}", max_abs_diff(&lhs, &rhs))?;
        }
    }

    // The pinned diagonal of pi: left-handed block carries eigenvalue -1.
    let pi_expected = CMatrix::from_diagonal(&Vector4::new(c(-1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)));
    check("pi = diag(-1, -1, +1, +1)", max_abs_diff(&g.pi, &pi_expected))?;

    Ok(())
}

/// Parameters of a combined Lorentz + gauge spinor transformation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransformationParams {
    /// Six independent components of the antisymmetric `theta_ab`,
    /// ordered as in [`THETA_INDEX`].
    pub theta_ab: [f64; 6],
    /// Gauge angle.
    pub theta: f64,
    /// Charge constant multiplying the gauge angle.
    pub q: f64,
}

/// A spinor transformation `S = exp(theta_ab sigma^{ab} / 2 + i q theta I)`
/// together with the parameters that generated it.
#[derive(Clone, Debug)]
pub struct SpinorTransformation {
    /// The 4×4 complex representation matrix.
    pub matrix: CMatrix,
    /// Generating parameters.
    pub params: TransformationParams,
}

impl SpinorTransformation {
    /// Builds the transformation from the six Lorentz parameters plus a
    /// gauge phase. `theta_ab` holds the independent components in the
    /// order of [`THETA_INDEX`]; the Einstein-summed generator
    /// `theta_ab sigma^{ab} / 2` then reduces to the plain sum over the
    /// six pairs.
    pub fn new(params: TransformationParams) -> Result<Self> {
        let finite = params.theta_ab.iter().all(|t| t.is_finite())
            && params.theta.is_finite()
            && params.q.is_finite();
        if !finite {
            return Err(Error::NonFinite { context: "spinor transformation parameters" });
        }
        let g = GammaBasis::shared();
        let mut generator = CMatrix::identity() * c(0.0, params.q * params.theta);
        for (value, (a, b)) in params.theta_ab.iter().zip(THETA_INDEX) {
            generator += g.sigma[a][b] * c(*value, 0.0);
        }
        Ok(Self { matrix: matrix_exponential(&generator)?, params })
    }

    /// The identity transformation.
    pub fn identity() -> Self {
        Self {
            matrix: CMatrix::identity(),
            params: TransformationParams { theta_ab: [0.0; 6], theta: 0.0, q: 0.0 },
        }
    }

    /// Pure boost with the given rapidity vector.
    pub fn boost(rapidity: [f64; 3]) -> Result<Self> {
        let theta_ab = [rapidity[0], rapidity[1], rapidity[2], 0.0, 0.0, 0.0];
        Self::new(TransformationParams { theta_ab, theta: 0.0, q: 0.0 })
    }

    /// Pure rotation with the given axis-angle vector (angle = length,
    /// axis = direction).
    pub fn rotation(axis_angle: [f64; 3]) -> Result<Self> {
        let theta_ab = [0.0, 0.0, 0.0, axis_angle[0], axis_angle[1], axis_angle[2]];
        Self::new(TransformationParams { theta_ab, theta: 0.0, q: 0.0 })
    }

    /// Pure gauge phase `exp(i q theta)`.
    pub fn gauge(theta: f64, q: f64) -> Result<Self> {
        Self::new(TransformationParams { theta_ab: [0.0; 6], theta, q })
    }

    /// The inverse transformation, obtained by negating every parameter;
    /// `exp(-G)` inverts `exp(G)` exactly for a single generator matrix.
    pub fn inverse(&self) -> Result<Self> {
        let p = self.params;
        Self::new(TransformationParams {
            theta_ab: p.theta_ab.map(|t| -t),
            theta: -p.theta,
            q: p.q,
        })
    }

    /// The real Lorentz matrix `L^a_b` acting on vector indices, defined
    /// by `S^{-1} gamma^a S = L^a_b gamma^b` and extracted via traces:
    /// `L^a_b = tr(gamma^0 S^dagger gamma^0 gamma^a S gamma_b) / 4`.
    /// Gauge phases cancel, so the result depends only on the Lorentz part.
    pub fn lorentz_matrix(&self) -> [[f64; 4]; 4] {
        let g = GammaBasis::shared();
        let sbar = g.gamma[0] * self.matrix.adjoint() * g.gamma[0];
        let mut l = [[0.0f64; 4]; 4];
        for (a, row) in l.iter_mut().enumerate() {
            for (b, entry) in row.iter_mut().enumerate() {
                let m = sbar * g.gamma[a] * self.matrix * g.gamma_lower(b);
                *entry = 0.25 * m.trace().re;
            }
        }
        l
    }
}

/// Integer coefficients of the degree-13 diagonal Padé approximant to the
/// exponential.
const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// Largest scaled norm the degree-13 approximant handles at full accuracy.
const PADE13_THETA: f64 = 5.371_920_351_148_152;

fn one_norm(m: &CMatrix) -> f64 {
    (0..4)
        .map(|j| (0..4).map(|i| m[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential by scaling-and-squaring with the degree-13 Padé
/// approximant. Accurate to ~1e-13 relative for input norms up to ~50.
pub fn matrix_exponential(m: &CMatrix) -> Result<CMatrix> {
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite { context: "matrix_exponential input" });
    }
    let norm = one_norm(m);

    let squarings = if norm > PADE13_THETA {
        (norm / PADE13_THETA).log2().ceil().max(0.0) as u32
    } else {
        0
    };
    let a = m * c(0.5f64.powi(squarings as i32), 0.0);

    let b = |k: usize| c(PADE13[k], 0.0);
    let id = CMatrix::identity();
    let a2 = a * a;
    let a4 = a2 * a2;
    let a6 = a2 * a4;
    let u = a * (a6 * (a6 * b(13) + a4 * b(11) + a2 * b(9)) + a6 * b(7) + a4 * b(5) + a2 * b(3) + id * b(1));
    let v = a6 * (a6 * b(12) + a4 * b(10) + a2 * b(8)) + a6 * b(6) + a4 * b(4) + a2 * b(2) + id * b(0);

    let mut result = (v - u)
        .lu()
        .solve(&(v + u))
        .ok_or(Error::ExpOverflow { norm })?;
    for _ in 0..squarings {
        result *= result;
    }

    if result.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::ExpOverflow { norm });
    }
    Ok(result)
}
