//! Second-order families that beat the 0-maximal polynomials, and the
//! perturbation inequalities around `z^n - z`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::metrics::{directed_hausdorff, directed_hausdorff_sets};
use crate::poly::Polynomial;

/// Parameters `a` for which the families are built.
pub const FAMILY_WINDOW: (f64, f64) = (0.0, 0.05);

fn check_window(a: f64) -> Result<()> {
    if !(FAMILY_WINDOW.0..=FAMILY_WINDOW.1).contains(&a) {
        return Err(Error::Precondition(format!(
            "a = {a} outside [{}, {}]",
            FAMILY_WINDOW.0, FAMILY_WINDOW.1
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Deg4FamilyConstants {
    pub r: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub c: f64,
}

impl Deg4FamilyConstants {
    pub fn compute() -> Self {
        let r = 0.25f64.cbrt();
        let s3 = 3f64.sqrt();
        Self {
            r,
            alpha1: 3.0 * s3 * r / (2.0 - 3.0 * r),
            alpha2: -s3 * ((3.0 * r + 2.0).powi(2) + 4.0) / (2.0 * (3.0 * r - 2.0).powi(2)),
            c: 3.0 / (4.0 * r * (2.0 - 3.0 * r)),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Deg5FamilyConstants {
    pub s: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub k: f64,
}

impl Deg5FamilyConstants {
    pub fn compute() -> Self {
        let s = 0.2f64.powf(0.25);
        let s2 = s * s;
        let rt2 = 2f64.sqrt();
        Self {
            s,
            beta: 2.0 * rt2 * s2 / (1.0 - 2.0 * s2),
            gamma: 4.0 * rt2 / (5.0 * s * (1.0 - 2.0 * s2)),
            delta: (60.0 * s2 * s2 - 19.0) / (50.0 * s2 * (2.0 * s2 - 1.0).powi(2)),
            k: 2.0 / (5.0 * s * (1.0 - 2.0 * s2)),
        }
    }
}

/// `(z - a)(z + 1)(z - ζ)(z - conj ζ)` with `ζ = exp(i(π/3 + α1 a + α2 a²))`.
pub fn family_deg4(a: f64) -> Result<Polynomial> {
    check_window(a)?;
    let k = Deg4FamilyConstants::compute();
    let zeta = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_3 + k.alpha1 * a + k.alpha2 * a * a);
    Polynomial::from_roots(&[Complex64::new(a, 0.0), Complex64::new(-1.0, 0.0), zeta, zeta.conj()])
}

/// The quintic `q_a` and the quartic `s_a` (leading coefficient 5) that
/// approximates `q_a'` to third order.
pub fn family_deg5(a: f64) -> Result<(Polynomial, Polynomial)> {
    check_window(a)?;
    let k = Deg5FamilyConstants::compute();
    let i = Complex64::i();
    let pi4 = std::f64::consts::FRAC_PI_4;
    let eta = Complex64::from_polar(1.0, pi4 + k.beta * a);
    let q = Polynomial::from_roots(&[Complex64::new(a, 0.0), eta, i * eta, eta.conj(), -i * eta.conj()])?;
    let rad = k.s + k.k * a * a;
    let chi1 = a + Complex64::from_polar(rad, pi4 + k.gamma * a + k.delta * a * a);
    let chi2 = a + Complex64::from_polar(rad, 3.0 * pi4 + k.gamma * a - k.delta * a * a);
    let s = Polynomial::from_roots(&[chi1, chi2, chi1.conj(), chi2.conj()])?.scale(Complex64::new(5.0, 0.0));
    Ok((q, s))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Deg4,
    Deg5,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "deg4" => Ok(Family::Deg4),
            "deg5" => Ok(Family::Deg5),
            other => Err(Error::Precondition(format!("unknown family '{other}'"))),
        }
    }
}

impl Family {
    pub fn polynomial(self, a: f64) -> Result<Polynomial> {
        match self {
            Family::Deg4 => family_deg4(a),
            Family::Deg5 => Ok(family_deg5(a)?.0),
        }
    }

    /// The predicted coefficient of `a²` in `d(p_a) - d(p_0)`.
    pub fn growth_constant(self) -> f64 {
        match self {
            Family::Deg4 => Deg4FamilyConstants::compute().c,
            Family::Deg5 => Deg5FamilyConstants::compute().k,
        }
    }

    pub fn d(self, a: f64) -> Result<f64> {
        Ok(directed_hausdorff(&self.polynomial(a)?)?.0)
    }
}

/// `deg(R) |R(w)/R'(w)|`, an upper bound for the distance from `w` to the
/// nearest zero of `R`.
pub fn newton_root_bound(r: &Polynomial, w: Complex64) -> Result<f64> {
    let (v, dv) = r.eval_with_derivative(w);
    if v.norm() == 0.0 {
        return Ok(0.0);
    }
    if dv.norm() <= 1e-14 {
        return Err(Error::Precondition(format!("R'({w}) vanishes")));
    }
    Ok(r.degree() as f64 * (v / dv).norm())
}

/// Least-squares fit of `y ≈ Σ_{k=2}^{order} c_k a^k`.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthFit {
    pub c2: f64,
    pub c3: f64,
    /// `c_2, c_3, ..., c_order`.
    pub coeffs: Vec<f64>,
    pub order: usize,
    /// Largest absolute residual over the samples.
    pub residual: f64,
}

pub fn fit_growth_fixed(a: &[f64], y: &[f64], order: usize) -> Result<GrowthFit> {
    let unknowns = order.saturating_sub(1);
    if order < 3 || a.len() != y.len() || a.len() <= unknowns {
        return Err(Error::Precondition(format!(
            "{} samples cannot determine a fit of order {order}",
            a.len()
        )));
    }
    let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return Err(Error::Precondition("grid must contain a nonzero point".into()));
    }
    // columns (a/scale)^k keep the system well scaled
    let m = DMatrix::from_fn(a.len(), unknowns, |i, k| (a[i] / scale).powi(k as i32 + 2));
    let rhs = DVector::from_column_slice(y);
    let sol = m
        .clone()
        .svd(true, true)
        .solve(&rhs, 1e-14)
        .map_err(|e| Error::Precondition(e.to_string()))?;
    let coeffs: Vec<f64> = sol.iter().enumerate().map(|(k, c)| c / scale.powi(k as i32 + 2)).collect();
    let residual = (m * sol - rhs).amax();
    Ok(GrowthFit {
        c2: coeffs[0],
        c3: coeffs[1],
        coeffs,
        order,
        residual,
    })
}

/// Fits with increasing model order and stops at the first order whose
/// `c2` agrees with the next one to a relative `2e-4`; the higher-order terms
/// absorb the curvature that a plain `(a², a³)` model leaves in `c2`.
pub fn fit_growth_adaptive(a: &[f64], y: &[f64]) -> Result<GrowthFit> {
    let max_order = (a.len().saturating_sub(2)).clamp(3, 7);
    let mut prev = fit_growth_fixed(a, y, 3)?;
    for order in 4..=max_order {
        let next = fit_growth_fixed(a, y, order)?;
        if (next.c2 - prev.c2).abs() <= 2e-4 * prev.c2.abs().max(1.0) {
            return Ok(prev);
        }
        prev = next;
    }
    Ok(prev)
}

/// Fits `d(p_a) - d(p_0)` over `grid` for the chosen family.
pub fn fit_quadratic_growth(family: Family, grid: &[f64]) -> Result<GrowthFit> {
    if grid.len() < 4 {
        return Err(Error::Precondition("grid needs at least 4 points".into()));
    }
    let base = family.d(0.0)?;
    let y = grid
        .iter()
        .map(|&a| Ok(family.d(a)? - base))
        .collect::<Result<Vec<f64>>>()?;
    fit_growth_adaptive(grid, &y)
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop112Outcome {
    pub q: Polynomial,
    /// `min |z_1 + ε_1 - ζ|` over the critical points `ζ` of `Q`.
    pub lhs: f64,
    /// `n^{-1/(n-1)} - cos(π/(n-1)) |ε_1|`.
    pub rhs: f64,
    pub holds: bool,
}

/// Zeros of `z^n - z` in the order `0, 1, e^{2πi/(n-1)}, ...`.
pub fn z_n_minus_z_zeros(n: usize) -> Vec<Complex64> {
    let mut zeros = vec![Complex64::new(0.0, 0.0)];
    zeros.extend((0..n - 1).map(|j| Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / (n - 1) as f64)));
    zeros
}

/// Perturbs the zeros of `z^n - z` by `ε` and compares the new distance from
/// the moved zero `ε_1` to the critical points with the claimed linear decrease.
pub fn prop112_perturbation(n: usize, eps: &[Complex64], kappa: f64) -> Result<Prop112Outcome> {
    if n < 4 {
        return Err(Error::Precondition("n must be at least 4".into()));
    }
    if eps.len() != n {
        return Err(Error::Precondition(format!("expected {n} perturbations, got {}", eps.len())));
    }
    if kappa <= 0.0 {
        return Err(Error::Precondition("κ must be positive".into()));
    }
    let e1 = eps[0].norm();
    if e1 > 1e-2 {
        return Err(Error::Precondition(format!("|ε_1| = {e1} exceeds 1e-2")));
    }
    let bound = e1.powf(1.0 + kappa);
    if let Some(j) = (1..n).find(|&j| eps[j].norm() > bound * (1.0 + 1e-12)) {
        return Err(Error::Precondition(format!("|ε_{}| exceeds |ε_1|^(1+κ)", j + 1)));
    }
    let zeros: Vec<Complex64> = z_n_minus_z_zeros(n).iter().zip(eps).map(|(z, e)| z + e).collect();
    let q = Polynomial::from_roots(&zeros)?;
    let crit = q.derivative().find_roots()?.points();
    let lhs = directed_hausdorff_sets(&[zeros[0]], &crit)?.0;
    let nf = n as f64;
    let rhs = nf.powf(-1.0 / (nf - 1.0)) - (std::f64::consts::PI / (nf - 1.0)).cos() * e1;
    Ok(Prop112Outcome { q, lhs, rhs, holds: lhs <= rhs })
}

/// `sin(π/(2(n-1))) / sin(π/n)` and `n^{-1/(n-1)}`.
pub fn prop113_inequality(n: usize) -> Result<(f64, f64)> {
    if n < 5 {
        return Err(Error::Precondition("n must be at least 5".into()));
    }
    let nf = n as f64;
    let pi = std::f64::consts::PI;
    Ok(((pi / (2.0 * (nf - 1.0))).sin() / (pi / nf).sin(), nf.powf(-1.0 / (nf - 1.0))))
}

/// `(z - it)(z² - 1)`, whose zero `it` drifts away from the critical points.
pub fn lemma16_family(t: f64) -> Polynomial {
    Polynomial::from_roots(&[Complex64::new(0.0, t), Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)])
        .expect("three roots")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::delta_distance;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constants() {
        let k4 = Deg4FamilyConstants::compute();
        assert!((k4.r - 0.6299605249).abs() < 1e-10);
        assert!((10.8115..=10.8116).contains(&k4.c));
        assert!((k4.alpha1 - 29.7259).abs() < 1e-3);
        let k5 = Deg5FamilyConstants::compute();
        assert!((5.66565..=5.66566).contains(&k5.k));
        assert!((k5.s.powi(4) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn families_start_at_zero_maximal() {
        let p0 = family_deg4(0.0).unwrap();
        let target = Polynomial::from_real(&[0.0, 1.0, 0.0, 0.0, 1.0]);
        for (x, y) in p0.coeffs().iter().zip(target.coeffs()) {
            assert!((x - y).norm() < 1e-15);
        }
        let (q0, _) = family_deg5(0.0).unwrap();
        let target = Polynomial::from_real(&[0.0, 1.0, 0.0, 0.0, 0.0, 1.0]);
        for (x, y) in q0.coeffs().iter().zip(target.coeffs()) {
            assert!((x - y).norm() < 1e-15);
        }
        assert!(family_deg4(0.06).is_err());
        assert!(family_deg5(-0.01).is_err());
    }

    #[test]
    fn zeros_stay_in_closed_disk() {
        for k in 0..=50 {
            let a = k as f64 * 1e-3;
            for z in family_deg4(a).unwrap().find_roots().unwrap().points() {
                assert!(z.norm() <= 1.0 + 1e-12);
            }
            for z in family_deg5(a).unwrap().0.find_roots().unwrap().points() {
                assert!(z.norm() <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn deg4_growth_has_predicted_leading_term() {
        let k = Deg4FamilyConstants::compute();
        for a in [1e-4, 5e-4, 1e-3] {
            let d = Family::Deg4.d(a).unwrap();
            let cubic = (d - k.r - k.c * a * a) / (a * a * a);
            assert!((-1500.0..=-1300.0).contains(&cubic), "a = {a}: {cubic}");
        }
    }

    #[test]
    fn deg5_growth_has_predicted_leading_term() {
        let k = Deg5FamilyConstants::compute();
        for a in [1e-4, 5e-4, 1e-3] {
            let d = Family::Deg5.d(a).unwrap();
            let cubic = (d - k.s - k.k * a * a) / (a * a * a);
            assert!(cubic.abs() < 200.0, "a = {a}: {cubic}");
        }
    }

    #[test]
    fn families_beat_their_starting_point() {
        let d4 = Family::Deg4.d(0.0).unwrap();
        let d5 = Family::Deg5.d(0.0).unwrap();
        for k in 1..=60 {
            let a = 1e-4 * k as f64;
            assert!(Family::Deg4.d(a).unwrap() > d4, "a = {a}");
        }
        for k in 1..=100 {
            let a = 1e-4 * k as f64;
            assert!(Family::Deg5.d(a).unwrap() > d5, "a = {a}");
        }
    }

    #[test]
    fn delta_orders() {
        let p0 = Polynomial::from_real(&[0.0, 1.0, 0.0, 0.0, 1.0]);
        for a in [1e-2, 1e-3, 1e-4] {
            let ratio = delta_distance(&family_deg4(a).unwrap(), &p0).unwrap() / a;
            assert!(ratio < 40.0, "{ratio}");
        }
        for a in [1e-2, 5e-3, 2.5e-3] {
            let (q, s) = family_deg5(a).unwrap();
            let qd = q.derivative().scale(c(0.2, 0.0));
            let ratio = delta_distance(&qd, &s.scale(c(0.2, 0.0))).unwrap() / (a * a * a);
            assert!(ratio < 1000.0, "{ratio}");
        }
    }

    #[test]
    fn fitted_constants() {
        let grid: Vec<f64> = (1..=8).map(|k| k as f64 * 1e-3).collect();
        let f4 = fit_quadratic_growth(Family::Deg4, &grid).unwrap();
        assert!((f4.c2 - 10.8115).abs() <= 0.01, "{f4:?}");
        let f5 = fit_quadratic_growth(Family::Deg5, &grid).unwrap();
        assert!((f5.c2 - 5.6657).abs() <= 0.01, "{f5:?}");
    }

    #[test]
    fn fit_recovers_planted_coefficients() {
        let grid: Vec<f64> = (1..=8).map(|k| k as f64 * 1e-3).collect();
        let zero = fit_growth_adaptive(&grid, &[0.0; 8]).unwrap();
        assert_eq!(zero.c2, 0.0);
        let y: Vec<f64> = grid.iter().map(|a| 3.0 * a * a - 50.0 * a * a * a).collect();
        let fit = fit_growth_fixed(&grid, &y, 3).unwrap();
        assert!((fit.c2 - 3.0).abs() < 1e-8 && (fit.c3 + 50.0).abs() < 1e-5);
        assert!(fit_growth_fixed(&grid[..2], &y[..2], 3).is_err());
        assert!(fit_quadratic_growth(Family::Deg4, &grid[..3]).is_err());
    }

    #[test]
    fn newton_bound_examples() {
        let r = Polynomial::from_real(&[-1.0, 0.0, 1.0]);
        assert_eq!(newton_root_bound(&r, c(1.0, 0.0)).unwrap(), 0.0);
        assert!((newton_root_bound(&r, c(2.0, 0.0)).unwrap() - 1.5).abs() < 1e-15);
        assert!(newton_root_bound(&Polynomial::from_real(&[1.0, 0.0, 1.0]), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn newton_bound_dominates_true_distance() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        for _ in 0..1000 {
            let n = rng.random_range(1..=8);
            let roots: Vec<Complex64> = (0..n).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
            let r = Polynomial::from_roots(&roots).unwrap();
            let w = c(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5));
            let nearest = roots.iter().map(|z| (z - w).norm()).fold(f64::INFINITY, f64::min);
            assert!(newton_root_bound(&r, w).unwrap() >= nearest * (1.0 - 1e-9));
        }
    }

    #[test]
    fn prop112_unperturbed_and_aligned() {
        for n in 4..=6 {
            let out = prop112_perturbation(n, &vec![c(0.0, 0.0); n], 1.0).unwrap();
            assert!((out.lhs - (n as f64).powf(-1.0 / (n as f64 - 1.0))).abs() < 1e-14);
        }
        // ε_1 pointing at a critical point
        let out = prop112_perturbation(4, &[c(1e-3, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], 1.0).unwrap();
        assert!(out.holds);
        assert!(out.lhs <= 0.25f64.cbrt() - 0.5e-3);
    }

    #[test]
    fn prop112_first_order_deficit() {
        // to first order the distance drops by (n-1)/n · max_j Re(ε_1 / w_j) · |w_j|
        for n in 4..=6 {
            let nf = n as f64;
            let rho = nf.powf(-1.0 / (nf - 1.0));
            for k in 0..8 {
                let e = Complex64::from_polar(1e-5, std::f64::consts::TAU * k as f64 / 8.0);
                let mut eps = vec![c(0.0, 0.0); n];
                eps[0] = e;
                let out = prop112_perturbation(n, &eps, 1.0).unwrap();
                let best = (0..n - 1)
                    .map(|j| {
                        let w = Complex64::from_polar(rho, std::f64::consts::TAU * j as f64 / (nf - 1.0));
                        (e / w).re * rho
                    })
                    .fold(f64::NEG_INFINITY, f64::max);
                let predicted = rho - (nf - 1.0) / nf * best;
                assert!((out.lhs - predicted).abs() < 1e-8, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn prop112_preconditions() {
        assert!(prop112_perturbation(3, &[c(0.0, 0.0); 3], 1.0).is_err());
        assert!(prop112_perturbation(4, &[c(0.02, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], 1.0).is_err());
        assert!(prop112_perturbation(4, &[c(1e-3, 0.0), c(1e-5, 0.0), c(0.0, 0.0), c(0.0, 0.0)], 1.0).is_err());
    }

    #[test]
    fn prop113_chain() {
        let (l, r) = prop113_inequality(5).unwrap();
        assert!((l - 0.651059).abs() < 1e-6 && (r - 0.668740).abs() < 1e-6);
        let (l, r) = prop113_inequality(9).unwrap();
        let mid = (9.0f64 / 16.0).sqrt();
        assert!(l < mid && mid < r);
        for n in 5..=50 {
            let (l, r) = prop113_inequality(n).unwrap();
            assert!(l < r, "n = {n}");
        }
        assert!(prop113_inequality(4).is_err());
    }

    #[test]
    fn lemma16_closed_form() {
        for k in 0..50 {
            let t = 0.3 * k as f64 / 49.0;
            let d = directed_hausdorff(&lemma16_family(t)).unwrap().0;
            assert!((d - ((1.0 + t * t) / 3.0).sqrt()).abs() < 1e-10, "t = {t}");
        }
    }
}
