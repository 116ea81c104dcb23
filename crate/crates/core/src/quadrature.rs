//! Adaptive Gauss–Legendre quadrature along straight segments.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Nodes and weights on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes from Newton's method on `P_n`, started at the Chebyshev-like guesses.
    pub fn new(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    fn segment(&self, f: &impl Fn(Complex64) -> Complex64, a: Complex64, b: Complex64) -> Complex64 {
        let half = (b - a) * 0.5;
        let mid = (a + b) * 0.5;
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| f(mid + half * x) * w)
            .sum::<Complex64>()
            * half
    }
}

/// `P_n(x)` and `P_n'(x)` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    (p1, n as f64 * (x * p1 - p0) / (x * x - 1.0))
}

const ORDER: usize = 16;
const MAX_DEPTH: usize = 30;

/// Integrates `f` along the segment from `a` to `b`, bisecting until the
/// one-panel and two-panel estimates agree to `tol` (absolute, scaled by the
/// running magnitude of the integral).
pub fn integrate_segment(
    f: impl Fn(Complex64) -> Complex64,
    a: Complex64,
    b: Complex64,
    tol: f64,
) -> Result<Complex64> {
    let rule = GaussLegendre::new(ORDER);
    let whole = rule.segment(&f, a, b);
    let mut worst = 0.0f64;
    let v = adapt(&rule, &f, a, b, whole, tol, 0, &mut worst);
    if worst > tol * (1.0 + v.norm()) {
        return Err(Error::Quadrature(worst));
    }
    Ok(v)
}

#[allow(clippy::too_many_arguments)]
fn adapt(
    rule: &GaussLegendre,
    f: &impl Fn(Complex64) -> Complex64,
    a: Complex64,
    b: Complex64,
    whole: Complex64,
    tol: f64,
    depth: usize,
    worst: &mut f64,
) -> Complex64 {
    let m = (a + b) * 0.5;
    let left = rule.segment(f, a, m);
    let right = rule.segment(f, m, b);
    let err = (left + right - whole).norm();
    if err <= tol * (1.0 + whole.norm()) {
        return left + right;
    }
    if depth >= MAX_DEPTH {
        *worst = worst.max(err);
        return left + right;
    }
    adapt(rule, f, a, m, left, tol / 2.0, depth + 1, worst) + adapt(rule, f, m, b, right, tol / 2.0, depth + 1, worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two_and_integrate_polynomials() {
        for n in [1, 2, 5, 16, 31] {
            let rule = GaussLegendre::new(n);
            assert!((rule.weights.iter().sum::<f64>() - 2.0).abs() < 1e-13);
            // exact for degree 2n - 1
            let deg = 2 * n - 1;
            let approx: f64 = rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * x.powi(deg as i32 - 1)).sum();
            let exact = if (deg - 1) % 2 == 0 { 2.0 / deg as f64 } else { 0.0 };
            assert!((approx - exact).abs() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn complex_path_integrals() {
        let i = Complex64::i();
        let v = integrate_segment(|z| z.exp(), Complex64::new(0.0, 0.0), i * std::f64::consts::PI, 1e-12).unwrap();
        assert!((v - Complex64::new(-2.0, 0.0)).norm() < 1e-12);
        let v = integrate_segment(|z| (z * 40.0).sin(), Complex64::new(0.0, 0.0), Complex64::new(1.0, 1.0), 1e-12).unwrap();
        let exact = (Complex64::new(1.0, 0.0) - (Complex64::new(40.0, 40.0)).cos()) / 40.0;
        assert!((v - exact).norm() < 1e-10 * exact.norm());
    }
}
