//! Distances between zeros and critical points.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matching::bottleneck_assignment;
use crate::poly::Polynomial;
use crate::roots::lex_cmp;

/// Tolerance deciding which critical points lie on the critical circle.
pub const ON_CIRCLE_TOL: f64 = 1e-9;
const TIE_TOL: f64 = 1e-12;

/// The α-critical circle of a polynomial.
#[derive(Clone, Debug, Serialize)]
pub struct CriticalCircle {
    pub center: Complex64,
    pub radius: f64,
    /// Indices into `critical` achieving the radius within [`ON_CIRCLE_TOL`].
    pub on_circle: Vec<usize>,
    /// Critical points with multiplicity, sorted by `(re, im)`.
    pub critical: Vec<Complex64>,
}

fn require_degree(p: &Polynomial, min: usize) -> Result<()> {
    if p.degree() < min {
        return Err(Error::Precondition(format!(
            "degree {} below the required {min}",
            p.degree()
        )));
    }
    Ok(())
}

/// Critical points of `p`, sorted by `(re, im)`, with multiplicity.
pub fn critical_points(p: &Polynomial) -> Result<Vec<Complex64>> {
    require_degree(p, 2)?;
    Ok(p.derivative().find_roots()?.points())
}

pub fn circle_from_critical(critical: Vec<Complex64>, alpha: Complex64) -> CriticalCircle {
    let radius = critical
        .iter()
        .map(|w| (w - alpha).norm())
        .fold(f64::INFINITY, f64::min);
    let on_circle = critical
        .iter()
        .enumerate()
        .filter(|(_, w)| (*w - alpha).norm() <= radius + ON_CIRCLE_TOL)
        .map(|(i, _)| i)
        .collect();
    CriticalCircle {
        center: alpha,
        radius,
        on_circle,
        critical,
    }
}

/// `|p|_α`: distance from `α` to the nearest critical point.
pub fn alpha_distance(p: &Polynomial, alpha: Complex64) -> Result<CriticalCircle> {
    Ok(circle_from_critical(critical_points(p)?, alpha))
}

/// Directed distance from `from` to `to`: the largest distance from a point
/// of `from` to its nearest point of `to`. Ties go to the first point of
/// `from` in `(re, im)` order. Returns the value and the worst point.
pub fn directed_hausdorff_sets(from: &[Complex64], to: &[Complex64]) -> Result<(f64, Complex64)> {
    if from.is_empty() || to.is_empty() {
        return Err(Error::Precondition("point sets must be nonempty".into()));
    }
    let mut sorted = from.to_vec();
    sorted.sort_by(|a, b| lex_cmp(*a, *b));
    let mut best = (f64::NEG_INFINITY, sorted[0]);
    for z in sorted {
        let v = to.iter().map(|w| (z - w).norm()).fold(f64::INFINITY, f64::min);
        if v > best.0 + TIE_TOL {
            best = (v, z);
        }
    }
    Ok(best)
}

/// `d(p)`: directed Hausdorff distance from the zeros to the critical points.
pub fn directed_hausdorff(p: &Polynomial) -> Result<(f64, Complex64)> {
    let crit = critical_points(p)?;
    let zeros = p.find_roots()?.points();
    directed_hausdorff_sets(&zeros, &crit)
}

/// `Δ(p, q)`: bottleneck matching distance between the zero multisets.
pub fn delta_distance(p: &Polynomial, q: &Polynomial) -> Result<f64> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch {
            left: p.degree(),
            right: q.degree(),
        });
    }
    require_degree(p, 1)?;
    let a = p.find_roots()?.points();
    let b = q.find_roots()?.points();
    Ok(bottleneck_assignment(&a, &b).0)
}

/// `min |p(w) / (p'(0) w)|` over the critical points `w` of `p`.
pub fn smale_ratio(p: &Polynomial) -> Result<f64> {
    require_degree(p, 2)?;
    let scale = 1.0 + p.max_coeff_norm();
    if p.eval(Complex64::new(0.0, 0.0)).norm() > 1e-12 * scale {
        return Err(Error::Precondition("p(0) must vanish".into()));
    }
    let d0 = p.coeffs()[1];
    if d0.norm() <= 1e-12 {
        return Err(Error::Precondition("p'(0) must be nonzero".into()));
    }
    let crit = critical_points(p)?;
    Ok(crit
        .iter()
        .map(|&w| (p.eval(w) / (d0 * w)).norm())
        .fold(f64::INFINITY, f64::min))
}
