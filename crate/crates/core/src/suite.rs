//! The desk-scale acceptance battery. Each check returns its worst observed
//! deviation next to the tolerance it was judged against.

use std::f64::consts::{PI, TAU};
use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::corpus::{disk_points, random_sn, roots_of_unity, zn_plus_cz};
use crate::error::Result;
use crate::lp::{eq_nonneg_feasibility, signed_margin, strict_feasibility, EqFeasibility, Tolerances, Verdict};
use crate::majorization::{check_majorization, symmetric_mean_identity, tuple_w, tuple_z};
use crate::metrics::{alpha_distance, directed_hausdorff};
use crate::normal_ops::{
    char_poly, compression_spectrum, interlace_ratios, normal_from_roots, random_normal, spectral_radius,
    spectral_variation,
};
use crate::poly::Polynomial;
use crate::variation_first::{amatrix, bmatrix, cmatrix, dmatrix, setup};
use crate::variation_second::{fit_quadratic_growth, lemma16_family, prop112_perturbation, prop113_inequality, Family};

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub id: String,
    pub name: String,
    pub pass: bool,
    pub value: f64,
    pub tolerance: f64,
    pub duration_ms: u64,
    pub time_limit_ms: u64,
    pub detail: String,
}

struct Measured {
    ok: bool,
    value: f64,
    detail: String,
}

fn timed(id: &str, name: &str, tolerance: f64, time_limit_ms: u64, f: impl FnOnce() -> Result<Measured>) -> CheckOutcome {
    let start = Instant::now();
    let result = f();
    let duration_ms = start.elapsed().as_millis() as u64;
    let (ok, value, detail) = match result {
        Ok(m) => (m.ok, m.value, m.detail),
        Err(e) => (false, f64::NAN, format!("error: {e}")),
    };
    CheckOutcome {
        id: id.to_string(),
        name: name.to_string(),
        pass: ok && duration_ms <= time_limit_ms,
        value,
        tolerance,
        duration_ms,
        time_limit_ms,
        detail,
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const THETAS: [f64; 3] = [0.0, 1.0, PI];

pub fn critical_radius_law() -> CheckOutcome {
    timed("1", "critical radius of z^n + e^{iθ}z", 1e-10, 1_000, || {
        let mut worst: f64 = 0.0;
        for n in 3..=12 {
            let r = (n as f64).powf(-1.0 / (n as f64 - 1.0));
            for theta in THETAS {
                let p = zn_plus_cz(n, Complex64::from_polar(1.0, theta));
                worst = worst.max((alpha_distance(&p, c(0.0, 0.0))?.radius - r).abs());
            }
        }
        Ok(Measured {
            ok: worst <= 1e-10,
            value: worst,
            detail: "n = 3..12, θ ∈ {0, 1, π}".into(),
        })
    })
}

pub fn inextensibility_certificates() -> CheckOutcome {
    timed("2", "positive singularity of B with uniform μ", 1e-9, 1_000, || {
        let mut worst: f64 = 0.0;
        let mut verdicts_ok = true;
        for n in 3..=12 {
            for theta in THETAS {
                let p = zn_plus_cz(n, Complex64::from_polar(1.0, theta));
                let b = bmatrix(&setup(&p, c(0.0, 0.0))?)?;
                let cert = strict_feasibility(&b)?;
                verdicts_ok &= cert.verdict == Verdict::PositivelySingular && cert.verify(&b, &Tolerances::default());
                let ones_b = (0..b.ncols())
                    .map(|j| b.column(j).iter().sum::<Complex64>().norm())
                    .fold(0.0, f64::max);
                worst = worst.max(ones_b);
            }
        }
        Ok(Measured {
            ok: verdicts_ok && worst <= 1e-9,
            value: worst,
            detail: format!("max ‖1ᵀB‖∞ over n = 3..12; all verdicts singular: {verdicts_ok}"),
        })
    })
}

pub fn nonsingularity_of_a() -> CheckOutcome {
    timed("3", "A(z^n - z) strictly feasible and C·D = I", 1e-8, 5_000, || {
        let mut worst: f64 = 0.0;
        let mut verdicts_ok = true;
        for n in 3..=8 {
            let s = setup(&zn_plus_cz(n, c(-1.0, 0.0)), c(0.0, 0.0))?;
            let a = amatrix(&s)?;
            verdicts_ok &= strict_feasibility(&a)?.verdict == Verdict::StrictlyFeasible;
            let prod = cmatrix(&s)? * dmatrix(&s)?;
            let id = DMatrix::<Complex64>::identity(n - 1, n - 1);
            worst = worst.max((prod - id).iter().map(|z| z.norm()).fold(0.0, f64::max));
        }
        Ok(Measured {
            ok: verdicts_ok && worst <= 1e-8,
            value: worst,
            detail: format!("max |CD - I| over n = 3..8; all strictly feasible: {verdicts_ok}"),
        })
    })
}

pub fn second_order_constants() -> CheckOutcome {
    timed("4", "fitted quadratic growth constants", 0.01, 5_000, || {
        let grid: Vec<f64> = (1..=8).map(|k| k as f64 * 1e-3).collect();
        let c4 = fit_quadratic_growth(Family::Deg4, &grid)?.c2;
        let c5 = fit_quadratic_growth(Family::Deg5, &grid)?.c2;
        let worst = (c4 - 10.8115).abs().max((c5 - 5.6657).abs());
        Ok(Measured {
            ok: worst <= 0.01,
            value: worst,
            detail: format!("deg4 c2 = {c4:.6} (target 10.8115), deg5 c2 = {c5:.6} (target 5.6657)"),
        })
    })
}

pub fn lemma16_family_check() -> CheckOutcome {
    timed("5", "d((z - it)(z^2 - 1)) = √((1+t²)/3)", 1e-10, 1_000, || {
        let mut worst: f64 = 0.0;
        for k in 0..50 {
            let t = 0.3 * k as f64 / 49.0;
            let d = directed_hausdorff(&lemma16_family(t))?.0;
            worst = worst.max((d - ((1.0 + t * t) / 3.0).sqrt()).abs());
        }
        Ok(Measured {
            ok: worst <= 1e-10,
            value: worst,
            detail: "50 values of t in [0, 0.3]".into(),
        })
    })
}

pub fn perturbation_bounds() -> CheckOutcome {
    timed("6", "ε-perturbation bound and the sine inequality", 0.0, 1_100, || {
        let mut worst = f64::NEG_INFINITY;
        let mut failures = Vec::new();
        for n in 4..=6 {
            for k in 0..8 {
                let mut eps = vec![c(0.0, 0.0); n];
                eps[0] = Complex64::from_polar(1e-3, TAU * k as f64 / 8.0);
                let out = prop112_perturbation(n, &eps, 1.0)?;
                worst = worst.max(out.lhs - out.rhs);
                if !out.holds {
                    failures.push(format!("n={n} phase={k}/8 excess={:.3e}", out.lhs - out.rhs));
                }
            }
        }
        let mut sine_ok = true;
        for n in 5..=50 {
            let (l, r) = prop113_inequality(n)?;
            sine_ok &= l < r;
        }
        let detail = format!(
            "perturbation bound: {} of 24 cases fail [{}]; sine inequality n = 5..50 holds: {sine_ok}",
            failures.len(),
            failures.join(", ")
        );
        Ok(Measured {
            ok: failures.is_empty() && sine_ok,
            value: worst,
            detail,
        })
    })
}

fn max_coeff_dev(p: &Polynomial, q: &Polynomial) -> f64 {
    let n = p.coeffs().len().max(q.coeffs().len());
    let get = |r: &Polynomial, k: usize| r.coeffs().get(k).copied().unwrap_or_default();
    (0..n).map(|k| (get(p, k) - get(q, k)).norm()).fold(0.0, f64::max)
}

pub fn differentiator_identity() -> CheckOutcome {
    timed("7", "char_poly(A_[i]) = (-1)^{n-1} p'/n", 1e-9, 30_000, || {
        let mut worst: f64 = 0.0;
        for n in 2..=10 {
            for roots in random_sn(n, 100, 0x5e_1d + n as u64) {
                let a = normal_from_roots(&roots)?;
                let p = Polynomial::from_roots(&roots)?;
                let sign = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
                let target = p.derivative().scale(c(sign / n as f64, 0.0));
                for i in 0..n {
                    worst = worst.max(max_coeff_dev(&char_poly(&a.compression(i)?)?, &target));
                }
            }
        }
        Ok(Measured {
            ok: worst <= 1e-9,
            value: worst,
            detail: "100 root sets per n = 2..10, every index".into(),
        })
    })
}

const OPERATOR_SEED: u64 = 0x0b5e;

fn operator_corpus(n: usize) -> Vec<Vec<Complex64>> {
    random_sn(n, 500, OPERATOR_SEED + n as u64)
}

pub fn operator_sendov() -> CheckOutcome {
    timed("8", "s(A, A') <= ρ(A) for the differentiator", 1e-9, 60_000, || {
        let mut worst = f64::NEG_INFINITY;
        for n in 2..=8 {
            for roots in operator_corpus(n) {
                let pair = compression_spectrum(&normal_from_roots(&roots)?, 0)?;
                let s = spectral_variation(&pair.eig_full, &pair.eig_sub)?;
                worst = worst.max(s - spectral_radius(&pair.eig_full));
            }
        }
        Ok(Measured {
            ok: worst <= 1e-9,
            value: worst,
            detail: "max s(A, A') - ρ(A) over 500 root sets per n = 2..8".into(),
        })
    })
}

pub fn converse_bound() -> CheckOutcome {
    timed("9", "s(A', A) <= ρ(A) with equality on scaled roots of unity", 1e-9, 10_000, || {
        let mut worst = f64::NEG_INFINITY;
        for n in 2..=8 {
            for roots in operator_corpus(n) {
                let pair = compression_spectrum(&normal_from_roots(&roots)?, 0)?;
                let s = spectral_variation(&pair.eig_sub, &pair.eig_full)?;
                worst = worst.max(s - spectral_radius(&pair.eig_full));
            }
        }
        let mut equality: f64 = 0.0;
        for n in 2..=8 {
            for rho in [0.25, 0.5, 1.0] {
                let pair = compression_spectrum(&normal_from_roots(&roots_of_unity(n, rho))?, 0)?;
                let s = spectral_variation(&pair.eig_sub, &pair.eig_full)?;
                equality = equality.max((s - rho).abs());
            }
        }
        Ok(Measured {
            ok: worst <= 1e-9 && equality <= 1e-9,
            value: worst.max(equality),
            detail: format!("max s(A', A) - ρ(A) = {worst:.3e}; max equality-case deviation = {equality:.3e}"),
        })
    })
}

pub fn interlacing() -> CheckOutcome {
    timed("10", "interlacing ratios and Cauchy interlacing", 1e-8, 10_000, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x1a7e);
        let mut worst_ratio = f64::INFINITY;
        let mut worst_cauchy: f64 = 0.0;
        for trial in 0..100u64 {
            let n = rng.random_range(2..=8);
            let eig: Vec<Complex64> = (0..n).map(|_| c(rng.random_range(-1.0..=1.0), 0.0)).collect();
            let a = random_normal(&eig, trial)?;
            let i = rng.random_range(0..n);
            let ratios = interlace_ratios(&a, i)?;
            worst_ratio = ratios.values.iter().copied().fold(worst_ratio, f64::min);
            if ratios.max_imag > 1e-8 {
                worst_ratio = worst_ratio.min(-ratios.max_imag);
            }
            let mut lambda: Vec<f64> = eig.iter().map(|z| z.re).collect();
            lambda.sort_by(f64::total_cmp);
            let sub = compression_spectrum(&a, i)?.eig_sub;
            let mut mu: Vec<f64> = sub.iter().map(|z| z.re).collect();
            mu.sort_by(f64::total_cmp);
            for (k, m) in mu.iter().enumerate() {
                worst_cauchy = worst_cauchy.max(lambda[k] - m).max(m - lambda[k + 1]);
            }
            worst_cauchy = sub.iter().map(|z| z.im.abs()).fold(worst_cauchy, f64::max);
        }
        Ok(Measured {
            ok: worst_ratio >= -1e-8 && worst_cauchy <= 1e-8,
            value: (-worst_ratio).max(worst_cauchy),
            detail: format!("min ratio = {worst_ratio:.3e}; max interlacing violation = {worst_cauchy:.3e}"),
        })
    })
}

pub fn majorization_check() -> CheckOutcome {
    timed("11", "W(0,k) majorized by Z(0,k) and the symmetric means agree", 1e-7, 60_000, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x3a10);
        let mut cert_worst: f64 = 0.0;
        let mut mean_worst: f64 = 0.0;
        let mut missing = 0usize;
        let zero = c(0.0, 0.0);
        for _ in 0..100 {
            let n = rng.random_range(2..=6);
            let p = Polynomial::from_roots(&disk_points(&mut rng, n))?;
            for k in 1..n {
                let w = tuple_w(&p, zero, k)?;
                let z = tuple_z(&p, zero, k)?;
                match check_majorization(&w.values, &z.values)?.certificate() {
                    Some(cert) => {
                        cert_worst = cert_worst
                            .max(cert.row_sum_residual)
                            .max(cert.col_sum_residual)
                            .max(cert.neg_entry)
                            .max(cert.reconstruction_residual);
                    }
                    None => missing += 1,
                }
            }
            for _ in 0..10 {
                let alpha = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                for k in 1..n {
                    mean_worst = mean_worst.max(symmetric_mean_identity(&p, alpha, k)?);
                }
            }
        }
        Ok(Measured {
            ok: missing == 0 && cert_worst <= 1e-7 && mean_worst <= 1e-9,
            value: cert_worst,
            detail: format!(
                "{missing} infeasible pairs; worst certificate residual = {cert_worst:.3e}; worst symmetric-mean residual = {mean_worst:.3e} (tol 1e-9)"
            ),
        })
    })
}

/// Dual route: `μ ≥ 0`, `Σμ = 1`, `Gᵀμ = 0` with `G = [Re M, -Im M]`.
pub fn positively_singular_by_dual(m: &DMatrix<Complex64>) -> Result<bool> {
    let (rows, cols) = m.shape();
    let mut a = DMatrix::<f64>::zeros(2 * cols + 1, rows);
    for i in 0..rows {
        for j in 0..cols {
            a[(j, i)] = m[(i, j)].re;
            a[(cols + j, i)] = -m[(i, j)].im;
        }
        a[(2 * cols, i)] = 1.0;
    }
    let mut b = vec![0.0; 2 * cols + 1];
    b[2 * cols] = 1.0;
    Ok(matches!(eq_nonneg_feasibility(&a, &b)?, EqFeasibility::Feasible { .. }))
}

pub fn duality_exclusivity() -> CheckOutcome {
    timed("12", "exactly one of strict feasibility and positive singularity", 0.0, 10_000, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xd0a1);
        let (mut strict, mut singular, mut rejected, mut violations) = (0usize, 0usize, 0usize, 0usize);
        let mut accepted = 0;
        while accepted < 1000 {
            let (m, n) = (rng.random_range(1..=8), rng.random_range(1..=10));
            let mat = DMatrix::from_fn(m, n, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            if signed_margin(&mat)?.abs() <= 1e-7 {
                rejected += 1;
                continue;
            }
            accepted += 1;
            let cert = strict_feasibility(&mat)?;
            let primal = cert.verdict == Verdict::StrictlyFeasible && cert.verify(&mat, &Tolerances::default());
            let dual = positively_singular_by_dual(&mat)?;
            match (primal, dual) {
                (true, false) => strict += 1,
                (false, true) => singular += 1,
                _ => violations += 1,
            }
        }
        Ok(Measured {
            ok: violations == 0,
            value: violations as f64,
            detail: format!("{strict} strictly feasible, {singular} positively singular, {violations} violations, {rejected} regenerated"),
        })
    })
}

/// Every criterion, in order.
pub fn run_all() -> Vec<CheckOutcome> {
    vec![
        critical_radius_law(),
        inextensibility_certificates(),
        nonsingularity_of_a(),
        second_order_constants(),
        lemma16_family_check(),
        perturbation_bounds(),
        differentiator_identity(),
        operator_sendov(),
        converse_bound(),
        interlacing(),
        majorization_check(),
        duality_exclusivity(),
    ]
}
