//! Polynomials maximising the distance from the zero `0` to the critical
//! points, among monic polynomials with all zeros in the closed unit disk.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::critical_points;
use crate::poly::Polynomial;

/// Threshold for every deviation in [`verify_0maximal`].
pub const MAXIMAL_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ZeroMaximalSpec {
    pub n: usize,
    pub theta: f64,
    /// Middle coefficient scale, used for odd `n` only.
    #[serde(default)]
    pub lambda: f64,
}

/// `n^{-1/(n-1)}`, the critical radius of every 0-maximal polynomial.
pub fn maximal_radius(n: usize) -> f64 {
    (n as f64).powf(-1.0 / (n as f64 - 1.0))
}

/// `2 √(2m+1) / (m+1)` for `n = 2m + 1`.
pub fn lambda_bound(n: usize) -> f64 {
    let m = (n / 2) as f64;
    2.0 * (2.0 * m + 1.0).sqrt() / (m + 1.0)
}

fn check_lambda(n: usize, lambda: f64) -> Result<()> {
    if n % 2 == 1 && lambda.abs() > lambda_bound(n) + 1e-12 {
        return Err(Error::Precondition(format!(
            "|λ| = {} exceeds the bound {} for n = {n}",
            lambda.abs(),
            lambda_bound(n)
        )));
    }
    Ok(())
}

/// `z^{2m} + e^{iθ} z`, or `z^{2m+1} + λ e^{iθ} z^{m+1} + e^{2iθ} z`.
pub fn construct(spec: &ZeroMaximalSpec) -> Result<Polynomial> {
    // the extremal family at critical radius n^{-1/(n-1)} has unit coefficients
    rho_extremal(Complex64::new(0.0, 0.0), maximal_radius(spec.n), spec.n, spec.theta, spec.lambda)
}

/// The extremal polynomials around `a` whose critical points all lie at
/// distance `R` from `a`: their zeros reach distance `R n^{1/(n-1)}`.
pub fn rho_extremal(a: Complex64, r: f64, n: usize, theta: f64, lambda: f64) -> Result<Polynomial> {
    if n < 2 {
        return Err(Error::Precondition("degree must be at least 2".into()));
    }
    if r <= 0.0 || !r.is_finite() {
        return Err(Error::Precondition(format!("R = {r} must be positive")));
    }
    check_lambda(n, lambda)?;
    let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
    c[n] = Complex64::new(1.0, 0.0);
    let phase = Complex64::from_polar(1.0, theta);
    if n.is_multiple_of(2) {
        c[1] = phase * n as f64 * r.powi(n as i32 - 1);
    } else {
        let m = n / 2;
        c[m + 1] = phase * lambda * (n as f64).sqrt() * r.powi(m as i32);
        c[1] = phase * phase * n as f64 * r.powi(2 * m as i32);
    }
    // the family is written in powers of (z - a)
    Ok(Polynomial::new(c).shift(a))
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtremalCheck {
    pub min_critical_distance: f64,
    pub max_zero_distance: f64,
    pub critical_deviation: f64,
    pub zero_deviation: f64,
    pub ok: bool,
}

/// Checks that the critical points of `p` sit at distance `R` from `a` and
/// that the farthest zero sits at `R n^{1/(n-1)}`.
pub fn check_rho_extremal(p: &Polynomial, a: Complex64, r: f64) -> Result<ExtremalCheck> {
    let n = p.degree();
    let crit = critical_points(p)?;
    let zeros = p.find_roots()?.points();
    let min_critical_distance = crit.iter().map(|w| (w - a).norm()).fold(f64::INFINITY, f64::min);
    let max_zero_distance = zeros.iter().map(|z| (z - a).norm()).fold(0.0, f64::max);
    let critical_deviation = (min_critical_distance - r).abs();
    let zero_deviation = (max_zero_distance - r * (n as f64).powf(1.0 / (n as f64 - 1.0))).abs();
    Ok(ExtremalCheck {
        min_critical_distance,
        max_zero_distance,
        critical_deviation,
        zero_deviation,
        ok: critical_deviation <= MAXIMAL_TOL && zero_deviation <= MAXIMAL_TOL,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroMaximalReport {
    /// `|p|_0`.
    pub critical_radius: f64,
    pub radius_deviation: f64,
    /// Largest `| |z| - 1 |` over the zeros other than `0`.
    pub zero_circle_deviation: f64,
    /// Largest `| |w| - n^{-1/(n-1)} |` over the critical points.
    pub critical_modulus_deviation: f64,
    pub is_0maximal: bool,
}

pub fn verify_0maximal(p: &Polynomial) -> Result<ZeroMaximalReport> {
    if p.degree() < 2 {
        return Err(Error::Precondition("degree must be at least 2".into()));
    }
    let p = p.monic();
    let p0 = p.coeffs()[0].norm();
    if p0 > 1e-12 * (1.0 + p.max_coeff_norm()) {
        return Err(Error::Precondition(format!("p(0) = {p0:e} must vanish")));
    }
    let target = maximal_radius(p.degree());
    let crit = critical_points(&p)?;
    let mut zeros = p.find_roots()?.points();
    let origin = (0..zeros.len())
        .min_by(|&i, &j| zeros[i].norm().total_cmp(&zeros[j].norm()))
        .expect("degree >= 2");
    zeros.remove(origin);

    let critical_radius = crit.iter().map(|w| w.norm()).fold(f64::INFINITY, f64::min);
    let radius_deviation = (critical_radius - target).abs();
    let zero_circle_deviation = zeros.iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max);
    let critical_modulus_deviation = crit.iter().map(|w| (w.norm() - target).abs()).fold(0.0, f64::max);
    Ok(ZeroMaximalReport {
        critical_radius,
        radius_deviation,
        zero_circle_deviation,
        critical_modulus_deviation,
        is_0maximal: radius_deviation <= MAXIMAL_TOL
            && zero_circle_deviation <= MAXIMAL_TOL
            && critical_modulus_deviation <= MAXIMAL_TOL,
    })
}

/// `max_k |a_k conj(a_0) - a_n conj(a_{n-k})|`, which vanishes when all zeros
/// are unimodular.
pub fn check_self_inversive(p: &Polynomial) -> f64 {
    let a = p.coeffs();
    let n = p.degree();
    (0..n)
        .map(|k| (a[k] * a[0].conj() - a[n] * a[n - k].conj()).norm())
        .fold(0.0, f64::max)
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Residual of `(n-k-1)! n R^{2k} q^{(k+1)}(α) = k! q'(α) conj(q^{(n-k)}(α))`
/// over `k = 0..n-1`, relative to the largest term.
pub fn check_critical_circle_symmetry(q: &Polynomial, alpha: Complex64, r: f64) -> Result<f64> {
    let n = q.degree();
    if n < 2 {
        return Err(Error::Precondition("degree must be at least 2".into()));
    }
    let residual = q.eval(alpha).norm();
    if residual > 1e-10 * (1.0 + q.max_coeff_norm()) {
        return Err(Error::NotAZero { point: alpha, residual });
    }
    let crit = critical_points(q)?;
    if let Some(w) = crit.iter().find(|w| ((*w - alpha).norm() - r).abs() > 1e-8) {
        return Err(Error::Precondition(format!(
            "critical point {w} lies at distance {} from α, not {r}",
            (w - alpha).norm()
        )));
    }
    let derivs: Vec<Complex64> = (0..=n).map(|k| q.nth_derivative(k).eval(alpha)).collect();
    let nf = n as f64;
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for k in 0..n {
        let lhs = derivs[k + 1] * factorial(n - k - 1) * nf * r.powi(2 * k as i32);
        let rhs = derivs[1] * derivs[n - k].conj() * factorial(k);
        worst = worst.max((lhs - rhs).norm());
        scale = scale.max(lhs.norm()).max(rhs.norm());
    }
    Ok(if scale == 0.0 { 0.0 } else { worst / scale })
}

/// `n^{2x/(n-1)} (n - x) - n (x + 1)`.
pub fn lemma23_g(n: usize, x: f64) -> f64 {
    let nf = n as f64;
    nf.powf(2.0 * x / (nf - 1.0)) * (nf - x) - nf * (x + 1.0)
}

/// Scans `[1, n-2]` with the given step and returns the approximate zeros of
/// [`lemma23_g`]: sign changes between samples (bracket midpoints) and samples
/// where `g` is at rounding level. Nearby hits are merged.
pub fn lemma23_zeros(n: usize, step: f64) -> Vec<f64> {
    let hi = n as f64 - 2.0;
    let floor = 1e-12 * (n * n) as f64;
    let samples: Vec<(f64, f64)> = std::iter::successors(Some(1.0), |x| Some(x + step))
        .take_while(|&x| x <= hi + 1e-12)
        .map(|x| (x, lemma23_g(n, x)))
        .collect();
    let mut hits: Vec<f64> = Vec::new();
    for (i, &(x, g)) in samples.iter().enumerate() {
        if g.abs() <= floor {
            hits.push(x);
        } else if let Some(&(x2, g2)) = samples.get(i + 1) {
            if g2.abs() > floor && g.signum() != g2.signum() {
                hits.push(0.5 * (x + x2));
            }
        }
    }
    let mut merged: Vec<f64> = Vec::new();
    for x in hits {
        match merged.last_mut() {
            Some(last) if x - *last <= 2.0 * step => *last = 0.5 * (*last + x),
            _ => merged.push(x),
        }
    }
    merged
}
