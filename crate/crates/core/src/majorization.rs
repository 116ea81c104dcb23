//! Critical points as a multivariate majorization of zeros: product tuples,
//! rectangularly stochastic certificates and convex-function means.

use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::{eq_nonneg_feasibility, EqFeasibility};
use crate::metrics::critical_points;
use crate::poly::Polynomial;

pub const TUPLE_CAP: usize = 10_000;
pub const VARIABLE_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TupleSource {
    Zeros,
    CriticalPoints,
}

/// All `k`-subset products of `(points - α)`, as an unordered tuple.
#[derive(Clone, Debug, Serialize)]
pub struct ProductTuple {
    pub values: Vec<Complex64>,
    pub alpha: Complex64,
    pub k: usize,
    pub source: TupleSource,
}

/// `C(n, k)`, or `None` once it exceeds `cap`.
pub fn binomial_capped(n: usize, k: usize, cap: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > cap as u128 {
            return None;
        }
    }
    Some(acc as usize)
}

fn binomial_checked(n: usize, k: usize) -> Result<usize> {
    binomial_capped(n, k, TUPLE_CAP).ok_or_else(|| Error::TooLarge {
        count: binomial_f64(n, k) as usize,
        cap: TUPLE_CAP,
    })
}

fn binomial_f64(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn subset_products(points: &[Complex64], k: usize, out: &mut Vec<Complex64>) {
    fn walk(points: &[Complex64], start: usize, left: usize, acc: Complex64, out: &mut Vec<Complex64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..=points.len() - left {
            walk(points, i + 1, left - 1, acc * points[i], out);
        }
    }
    walk(points, 0, k, Complex64::new(1.0, 0.0), out);
}

fn build(points: &[Complex64], alpha: Complex64, k: usize, n: usize, source: TupleSource) -> Result<ProductTuple> {
    if k == 0 || k >= n {
        return Err(Error::Precondition(format!("k = {k} must lie in 1..={}", n - 1)));
    }
    let count = binomial_checked(points.len(), k)?;
    let shifted: Vec<Complex64> = points.iter().map(|z| z - alpha).collect();
    let mut values = Vec::with_capacity(count);
    subset_products(&shifted, k, &mut values);
    Ok(ProductTuple { values, alpha, k, source })
}

/// `Z(α, k)` over the zeros of `p`.
pub fn tuple_z(p: &Polynomial, alpha: Complex64, k: usize) -> Result<ProductTuple> {
    let n = p.degree();
    if n < 2 {
        return Err(Error::Precondition("degree must be at least 2".into()));
    }
    build(&p.find_roots()?.points(), alpha, k, n, TupleSource::Zeros)
}

/// `W(α, k)` over the critical points of `p`.
pub fn tuple_w(p: &Polynomial, alpha: Complex64, k: usize) -> Result<ProductTuple> {
    let n = p.degree();
    if n < 2 {
        return Err(Error::Precondition("degree must be at least 2".into()));
    }
    build(&critical_points(p)?, alpha, k, n, TupleSource::CriticalPoints)
}

/// Tuple from explicit points, for corrupted or hand-built inputs.
pub fn tuple_from_points(points: &[Complex64], alpha: Complex64, k: usize) -> Result<ProductTuple> {
    if k == 0 || k > points.len() {
        return Err(Error::Precondition(format!("k = {k} must lie in 1..={}", points.len())));
    }
    let count = binomial_checked(points.len(), k)?;
    let shifted: Vec<Complex64> = points.iter().map(|z| z - alpha).collect();
    let mut values = Vec::with_capacity(count);
    subset_products(&shifted, k, &mut values);
    Ok(ProductTuple {
        values,
        alpha,
        k,
        source: TupleSource::CriticalPoints,
    })
}

/// A rectangularly stochastic `R` with `X = RY` and its residuals.
#[derive(Clone, Debug, Serialize)]
pub struct MajorizationCertificate {
    pub r: Vec<Vec<f64>>,
    pub row_sum_residual: f64,
    pub col_sum_residual: f64,
    /// `max(0, -min r_ij)`.
    pub neg_entry: f64,
    pub reconstruction_residual: f64,
}

impl MajorizationCertificate {
    pub fn from_matrix(r: Vec<Vec<f64>>, x: &[Complex64], y: &[Complex64]) -> Self {
        let (m, n) = (x.len(), y.len());
        let row_sum_residual = r
            .iter()
            .map(|row| (row.iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max);
        let col_sum_residual = (0..n)
            .map(|j| (r.iter().map(|row| row[j]).sum::<f64>() - m as f64 / n as f64).abs())
            .fold(0.0, f64::max);
        let neg_entry = r.iter().flatten().fold(0.0f64, |acc, &v| acc.max(-v));
        let reconstruction_residual = r
            .iter()
            .zip(x)
            .map(|(row, xi)| {
                let ry: Complex64 = row.iter().zip(y).map(|(rij, yj)| yj * *rij).sum();
                let d = ry - xi;
                d.re.abs().max(d.im.abs())
            })
            .fold(0.0, f64::max);
        Self {
            r,
            row_sum_residual,
            col_sum_residual,
            neg_entry,
            reconstruction_residual,
        }
    }

    pub fn within(&self, tol_sums: f64, tol_neg: f64, tol_rec: f64) -> bool {
        self.row_sum_residual <= tol_sums
            && self.col_sum_residual <= tol_sums
            && self.neg_entry <= tol_neg
            && self.reconstruction_residual <= tol_rec
    }

    /// Default bounds: sums `1e-8`, entries `-1e-9`, reconstruction `1e-7`.
    pub fn is_valid(&self) -> bool {
        self.within(1e-8, 1e-9, 1e-7)
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MajorizationOutcome {
    Majorized(MajorizationCertificate),
    NotMajorized { phase_one_objective: f64 },
}

impl MajorizationOutcome {
    pub fn certificate(&self) -> Option<&MajorizationCertificate> {
        match self {
            Self::Majorized(c) => Some(c),
            Self::NotMajorized { .. } => None,
        }
    }
}

/// Decides `X ≺ Y` by searching for a rectangularly stochastic `R` with
/// `X = RY`, complex values read as points of the plane.
pub fn check_majorization(x: &[Complex64], y: &[Complex64]) -> Result<MajorizationOutcome> {
    let (m, n) = (x.len(), y.len());
    if m == 0 || m > n {
        return Err(Error::Precondition(format!("need 1 <= len(X) = {m} <= len(Y) = {n}")));
    }
    let vars = m.checked_mul(n).filter(|&v| v <= VARIABLE_CAP).ok_or(Error::TooLarge {
        count: m.saturating_mul(n),
        cap: VARIABLE_CAP,
    })?;
    let rows = m + n + 2 * m;
    let mut a = DMatrix::<f64>::zeros(rows, vars);
    let mut b = vec![0.0; rows];
    let var = |i: usize, j: usize| i * n + j;
    for i in 0..m {
        for j in 0..n {
            a[(i, var(i, j))] = 1.0;
            a[(m + j, var(i, j))] = 1.0;
            a[(m + n + 2 * i, var(i, j))] = y[j].re;
            a[(m + n + 2 * i + 1, var(i, j))] = y[j].im;
        }
        b[i] = 1.0;
        b[m + n + 2 * i] = x[i].re;
        b[m + n + 2 * i + 1] = x[i].im;
    }
    for bj in &mut b[m..m + n] {
        *bj = m as f64 / n as f64;
    }
    Ok(match eq_nonneg_feasibility(&a, &b)? {
        EqFeasibility::Feasible { x: sol, .. } => {
            let r = (0..m).map(|i| sol[i * n..(i + 1) * n].to_vec()).collect();
            MajorizationOutcome::Majorized(MajorizationCertificate::from_matrix(r, x, y))
        }
        EqFeasibility::Infeasible { phase_one_objective } => MajorizationOutcome::NotMajorized { phase_one_objective },
    })
}

/// The fixed family of convex test functions on the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ConvexFn {
    Abs,
    Re,
    Im,
    PositiveRe,
    AbsSquared,
    DistanceTo(Complex64),
    /// `max(a₁x + b₁y + c₁, a₂x + b₂y + c₂)`.
    MaxLinear([f64; 3], [f64; 3]),
}

impl ConvexFn {
    pub fn eval(&self, z: Complex64) -> f64 {
        match *self {
            Self::Abs => z.norm(),
            Self::Re => z.re,
            Self::Im => z.im,
            Self::PositiveRe => z.re.max(0.0),
            Self::AbsSquared => z.norm_sqr(),
            Self::DistanceTo(c) => (z - c).norm(),
            Self::MaxLinear(l1, l2) => {
                let lin = |l: [f64; 3]| l[0] * z.re + l[1] * z.im + l[2];
                lin(l1).max(lin(l2))
            }
        }
    }

    /// A representative instance of every builtin kind.
    pub fn builtins() -> Vec<ConvexFn> {
        vec![
            Self::Abs,
            Self::Re,
            Self::Im,
            Self::PositiveRe,
            Self::AbsSquared,
            Self::DistanceTo(Complex64::new(0.3, -0.2)),
            Self::MaxLinear([1.0, -0.5, 0.1], [-0.7, 0.2, 0.0]),
        ]
    }
}

fn parse_floats(s: &str, count: usize, id: &str) -> Result<Vec<f64>> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::UnknownFunction(id.to_string()))?;
    if v.len() != count {
        return Err(Error::UnknownFunction(id.to_string()));
    }
    Ok(v)
}

impl FromStr for ConvexFn {
    type Err = Error;

    /// `abs`, `re`, `im`, `pos_re`, `abs2`, `dist:x,y`, `maxlin:a1,b1,c1,a2,b2,c2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Ok(match s {
            "abs" => Self::Abs,
            "re" => Self::Re,
            "im" => Self::Im,
            "pos_re" | "max(re,0)" => Self::PositiveRe,
            "abs2" | "abs^2" => Self::AbsSquared,
            "dist" => Self::DistanceTo(Complex64::new(0.0, 0.0)),
            _ => {
                if let Some(rest) = s.strip_prefix("dist:") {
                    let v = parse_floats(rest, 2, s)?;
                    Self::DistanceTo(Complex64::new(v[0], v[1]))
                } else if let Some(rest) = s.strip_prefix("maxlin:") {
                    let v = parse_floats(rest, 6, s)?;
                    Self::MaxLinear([v[0], v[1], v[2]], [v[3], v[4], v[5]])
                } else {
                    return Err(Error::UnknownFunction(s.to_string()));
                }
            }
        })
    }
}

fn mean(values: &[Complex64], f: impl Fn(Complex64) -> f64) -> f64 {
    values.iter().map(|&z| f(z)).sum::<f64>() / values.len() as f64
}

/// `(mean f over X, mean f over Y)`.
pub fn dbs_inequality(x: &[Complex64], y: &[Complex64], f: &ConvexFn) -> Result<(f64, f64)> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::Precondition("tuples must be nonempty".into()));
    }
    Ok((mean(x, |z| f.eval(z)), mean(y, |z| f.eval(z))))
}

/// `|mean W(α,k) - mean Z(α,k)|`.
pub fn symmetric_mean_identity(p: &Polynomial, alpha: Complex64, k: usize) -> Result<f64> {
    let w = tuple_w(p, alpha, k)?;
    let z = tuple_z(p, alpha, k)?;
    Ok(tuple_mean_gap(&w.values, &z.values))
}

pub fn tuple_mean_gap(x: &[Complex64], y: &[Complex64]) -> f64 {
    let mx: Complex64 = x.iter().sum::<Complex64>() / x.len() as f64;
    let my: Complex64 = y.iter().sum::<Complex64>() / y.len() as f64;
    (mx - my).norm()
}
