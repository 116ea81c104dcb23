//! First-order variation of the critical points under disk-preserving
//! perturbations of the zeros.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lp::{strict_feasibility, FeasibilityCertificate};
use crate::metrics::ON_CIRCLE_TOL;
use crate::poly::Polynomial;
use crate::quadrature::integrate_segment;
use crate::roots::lex_cmp;

/// Two zeros (or two critical points) closer than this count as one.
pub const SIMPLE_TOL: f64 = 1e-6;
const ZERO_RESIDUAL: f64 = 1e-10;
const P2_MIN: f64 = 1e-12;
const QUAD_TOL: f64 = 1e-10;

/// A polynomial with a distinguished zero `a` and the critical points ordered
/// so that the `r` points on the `a`-critical circle come first.
#[derive(Clone, Debug)]
pub struct VariationSetup {
    pub p: Polynomial,
    pub a: Complex64,
    /// Zeros with `a` first; the rest in `(re, im)` order.
    pub zeros: Vec<Complex64>,
    /// Critical points sorted by distance to `a`, then by angle around `a`.
    pub crit: Vec<Complex64>,
    pub r: usize,
    /// `|p|_a`.
    pub radius: f64,
    pub generic: bool,
}

fn angle_about(w: Complex64, a: Complex64) -> f64 {
    (w - a).arg().rem_euclid(std::f64::consts::TAU)
}

fn min_gap(points: &[Complex64]) -> f64 {
    let mut gap = f64::INFINITY;
    for (i, z) in points.iter().enumerate() {
        for w in &points[i + 1..] {
            gap = gap.min((z - w).norm());
        }
    }
    gap
}

pub fn setup(p: &Polynomial, a: Complex64) -> Result<VariationSetup> {
    if p.degree() < 2 {
        return Err(Error::Precondition("degree must be at least 2".into()));
    }
    let p = p.monic();
    let residual = p.eval(a).norm();
    if residual > ZERO_RESIDUAL * (1.0 + p.max_coeff_norm()) {
        return Err(Error::NotAZero { point: a, residual });
    }

    let mut rest = p.find_roots()?.points();
    let nearest = (0..rest.len())
        .min_by(|&i, &j| (rest[i] - a).norm().total_cmp(&(rest[j] - a).norm()))
        .expect("degree >= 2");
    rest.remove(nearest);
    rest.sort_by(|x, y| lex_cmp(*x, *y));
    let mut zeros = vec![a];
    zeros.extend(rest);

    let mut crit = p.derivative().find_roots()?.points();
    let radius = crit.iter().map(|w| (w - a).norm()).fold(f64::INFINITY, f64::min);
    let on = |w: &Complex64| (w - a).norm() <= radius + ON_CIRCLE_TOL;
    crit.sort_by(|x, y| {
        on(y).cmp(&on(x)).then_with(|| {
            let by_dist = if on(x) {
                std::cmp::Ordering::Equal
            } else {
                (x - a).norm().total_cmp(&(y - a).norm())
            };
            by_dist.then(angle_about(*x, a).total_cmp(&angle_about(*y, a)))
        })
    });
    let r = crit.iter().filter(|w| on(w)).count();
    let generic = min_gap(&zeros) > SIMPLE_TOL && min_gap(&crit) > SIMPLE_TOL;
    Ok(VariationSetup {
        p,
        a,
        zeros,
        crit,
        r,
        radius,
        generic,
    })
}

impl VariationSetup {
    pub fn degree(&self) -> usize {
        self.p.degree()
    }

    fn require_generic(&self) -> Result<()> {
        if self.generic {
            Ok(())
        } else {
            Err(Error::NonGeneric(
                "multiple zeros or critical points; use nongeneric_data".into(),
            ))
        }
    }

    fn p_and_p2(&self, w: Complex64) -> Result<(Complex64, Complex64)> {
        let p2 = self.p.nth_derivative(2).eval(w);
        if p2.norm() < P2_MIN {
            return Err(Error::NonGeneric(format!("p''({w}) vanishes")));
        }
        Ok((self.p.eval(w), p2))
    }
}

/// `(a_1(w_j), ..., a_n(w_j))`, the coefficients of `h_i` in the first-order
/// expansion of `|w_j(t) - z_1(t)|`.
pub fn coefficients_a(s: &VariationSetup, j: usize) -> Result<Vec<Complex64>> {
    let w = *s
        .crit
        .get(j)
        .ok_or_else(|| Error::Precondition(format!("critical index {j} out of range")))?;
    let (pw, p2) = s.p_and_p2(w)?;
    let wa = w - s.a;
    let mut out = Vec::with_capacity(s.degree());
    out.push(-(Complex64::new(1.0, 0.0) + pw / (wa * wa * p2)) / wa);
    for &z in &s.zeros[1..] {
        out.push(-pw / (wa * (w - z) * (w - z) * p2));
    }
    Ok(out)
}

/// `b_i(w_j) = -z_i^2 a_i(w_j)`, the coefficients of `conj(h_i)`.
pub fn coefficients_b(s: &VariationSetup, j: usize) -> Result<Vec<Complex64>> {
    Ok(coefficients_a(s, j)?
        .into_iter()
        .zip(&s.zeros)
        .map(|(a, z)| -z * z * a)
        .collect())
}

/// `α_ij = a_j(w_i)` over the `r` on-circle critical points.
pub fn amatrix(s: &VariationSetup) -> Result<DMatrix<Complex64>> {
    s.require_generic()?;
    let n = s.degree();
    let mut m = DMatrix::zeros(s.r, n);
    for i in 0..s.r {
        for (j, v) in coefficients_a(s, i)?.into_iter().enumerate() {
            m[(i, j)] = v;
        }
    }
    Ok(m)
}

/// `β_ij = a_j(w_i) + conj(b_j(w_i))`, so that the growth rate of
/// `|w_i(t) - z_1(t)|` is `|p|_a Re((B h)_i)`.
pub fn bmatrix(s: &VariationSetup) -> Result<DMatrix<Complex64>> {
    let a = amatrix(s)?;
    Ok(DMatrix::from_fn(a.nrows(), a.ncols(), |i, j| {
        let z = s.zeros[j];
        a[(i, j)] + (-z * z * a[(i, j)]).conj()
    }))
}

/// `γ_ij = (w_i - z_j)^-2` over all critical points and the zeros other than `a`.
pub fn cmatrix(s: &VariationSetup) -> Result<DMatrix<Complex64>> {
    s.require_generic()?;
    let n = s.degree();
    Ok(DMatrix::from_fn(n - 1, n - 1, |i, j| {
        let d = s.crit[i] - s.zeros[j + 1];
        (d * d).inv()
    }))
}

/// `δ_jk = -p(w_k) / (p'(z_j) p''(w_k)) ∫_a^{z_j} p'(w)/(w - w_k) dw`.
///
/// The integrand has a removable singularity at `w_k`; it is evaluated as the
/// polynomial `p'(w)/(w - w_k)` with that factor deflated, so the straight
/// segment is always admissible.
pub fn dmatrix(s: &VariationSetup) -> Result<DMatrix<Complex64>> {
    s.require_generic()?;
    let n = s.degree();
    let lead = s.p.leading() * n as f64;
    let dp = s.p.derivative();
    let mut m = DMatrix::zeros(n - 1, n - 1);
    for k in 0..n - 1 {
        let (pw, p2) = s.p_and_p2(s.crit[k])?;
        let deflated = |w: Complex64| {
            s.crit
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != k)
                .fold(lead, |acc, (_, wl)| acc * (w - wl))
        };
        for j in 0..n - 1 {
            let z = s.zeros[j + 1];
            let integral = integrate_segment(deflated, s.a, z, QUAD_TOL)?;
            m[(j, k)] = -pw / (dp.eval(z) * p2) * integral;
        }
    }
    Ok(m)
}

/// Decides extensibility of `p` with respect to its zero `a`: a strict
/// witness is an extending direction, a singular one proves inextensibility.
pub fn extensibility(p: &Polynomial, a: Complex64) -> Result<FeasibilityCertificate> {
    let s = setup(p, a)?;
    strict_feasibility(&bmatrix(&s)?)
}

/// First-order growth `|p|_a Re((B h)_i)` of the on-circle distances.
pub fn predicted_growth(s: &VariationSetup, b: &DMatrix<Complex64>, h: &[Complex64]) -> Vec<f64> {
    (0..b.nrows())
        .map(|i| s.radius * (0..b.ncols()).map(|j| b[(i, j)] * h[j]).sum::<Complex64>().re)
        .collect()
}

/// Data attached to a single critical point of multiplicity `r ≥ 2` on the
/// critical circle, for a fixed direction `h`.
#[derive(Clone, Debug)]
pub struct NonGenericData {
    pub c: Complex64,
    pub d: Complex64,
    pub l: Vec<Complex64>,
    /// The `r × n` matrix whose entries now depend on `h` through `L_k`.
    pub b: DMatrix<Complex64>,
}

pub fn nongeneric_data(s: &VariationSetup, h: &[Complex64]) -> Result<NonGenericData> {
    let n = s.degree();
    if h.len() != n {
        return Err(Error::Precondition(format!("h has length {}, expected {n}", h.len())));
    }
    if min_gap(&s.zeros) <= SIMPLE_TOL {
        return Err(Error::Precondition("zeros must be simple".into()));
    }
    let r = s.r;
    let w1 = s.crit[0];
    if r < 2 || s.crit[..r].iter().any(|w| (w - w1).norm() > SIMPLE_TOL) {
        return Err(Error::Precondition(
            "needs exactly one critical point, of multiplicity at least 2, on the critical circle".into(),
        ));
    }
    let w1 = s.crit[..r].iter().sum::<Complex64>() / r as f64;
    let r_fact: f64 = (1..=r).map(|k| k as f64).product();
    let c = s.p.nth_derivative(r + 1).eval(w1) / r_fact;
    let pw = s.p.eval(w1);
    let d = -pw
        * s.zeros
            .iter()
            .zip(h)
            .map(|(z, hi)| (hi - hi.conj() * z * z) / ((w1 - z) * (w1 - z)))
            .sum::<Complex64>();
    if d.norm() <= 1e-12 {
        return Err(Error::DegenerateDirection(d.norm()));
    }
    let base = (pw / (c * r_fact)).arg() - (r as f64 - 1.0) / r as f64 * (d / c).arg();
    let l: Vec<Complex64> = (1..=r)
        .map(|k| Complex64::from_polar(1.0, base + std::f64::consts::TAU * k as f64 / r as f64))
        .collect();
    let wa = w1 - s.a;
    let b = DMatrix::from_fn(r, n, |i, j| {
        let a = if j == 0 {
            -(Complex64::new(1.0, 0.0) + l[i] / (wa * wa)) / wa
        } else {
            let dz = w1 - s.zeros[j];
            -l[i] / (wa * dz * dz)
        };
        let z = s.zeros[j];
        a + (-z * z * a).conj()
    });
    Ok(NonGenericData { c, d, l, b })
}

/// The disk automorphism `z ↦ (t h + z) / (1 + t conj(h) z)`.
pub fn mobius_step(z: Complex64, h: Complex64, t: f64) -> Complex64 {
    (h * t + z) / (1.0 + h.conj() * z * t)
}

/// Moves each zero along its own automorphism of the closed disk.
pub fn perturb_zeros(zeros: &[Complex64], t: f64, h: &[Complex64]) -> Result<Vec<Complex64>> {
    if zeros.len() != h.len() {
        return Err(Error::Precondition("h must have one entry per zero".into()));
    }
    if !(0.0..1.0).contains(&t) {
        return Err(Error::Precondition(format!("t = {t} outside [0, 1)")));
    }
    if let Some(hi) = h.iter().find(|hi| hi.norm() > 1.0 + 1e-12) {
        return Err(Error::Precondition(format!("|h_i| = {} exceeds 1", hi.norm())));
    }
    if let Some(z) = zeros.iter().find(|z| z.norm() > 1.0 + 1e-12) {
        return Err(Error::Precondition(format!("zero {z} outside the closed unit disk")));
    }
    zeros
        .iter()
        .zip(h)
        .map(|(&z, &hi)| {
            let den = 1.0 + hi.conj() * z * t;
            if den.norm() <= 1e-12 {
                Err(Error::Precondition("Möbius denominator underflow".into()))
            } else {
                Ok((hi * t + z) / den)
            }
        })
        .collect()
}

/// `q(z) = ∏ (z - z_i(t))` with `h` indexed like `s.zeros`.
pub fn perturb(s: &VariationSetup, t: f64, h: &[Complex64]) -> Result<Polynomial> {
    Polynomial::from_roots(&perturb_zeros(&s.zeros, t, h)?)
}
