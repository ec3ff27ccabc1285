//! Central finite-difference stencils shared by the field evaluators.

use num_complex::Complex64;

use crate::clifford::CVector;
use crate::Point;

/// Returns `x` with coordinate `mu` shifted by `delta`.
pub(crate) fn shifted(x: Point, mu: usize, delta: f64) -> Point {
    let mut y = x;
    y[mu] += delta;
    y
}

/// Five-point central difference, error O(h^4):
/// `f'(x) ~ [f(x-2h) - 8 f(x-h) + 8 f(x+h) - f(x+2h)] / (12 h)`.
pub(crate) fn deriv5_spinor<F>(f: F, x: Point, mu: usize, h: f64) -> CVector
where
    F: Fn(Point) -> CVector,
{
    let p2 = f(shifted(x, mu, 2.0 * h));
    let p1 = f(shifted(x, mu, h));
    let m1 = f(shifted(x, mu, -h));
    let m2 = f(shifted(x, mu, -2.0 * h));
    (m2 - p2 + (p1 - m1) * Complex64::new(8.0, 0.0)) * Complex64::new(1.0 / (12.0 * h), 0.0)
}

/// Five-point central difference of a real scalar field.
pub(crate) fn deriv5_scalar<F>(f: F, x: Point, mu: usize, h: f64) -> f64
where
    F: Fn(Point) -> f64,
{
    let p2 = f(shifted(x, mu, 2.0 * h));
    let p1 = f(shifted(x, mu, h));
    let m1 = f(shifted(x, mu, -h));
    let m2 = f(shifted(x, mu, -2.0 * h));
    (m2 - p2 + 8.0 * (p1 - m1)) / (12.0 * h)
}
