//! Dense two-phase simplex and the two feasibility questions built on it.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Numerical thresholds for the feasibility kernel.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    /// Residual allowed in equality systems and in `μᵀM ≈ 0`.
    pub feasibility: f64,
    /// Optimal `t` above which a strict system counts as solvable.
    pub margin: f64,
    /// Smallest entry accepted as a pivot in the ratio test.
    pub pivot: f64,
    /// Reduced costs above `-optimality` count as nonnegative.
    pub optimality: f64,
    pub max_iter: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            feasibility: 1e-8,
            margin: 1e-9,
            pivot: 1e-9,
            optimality: 1e-11,
            max_iter: 200_000,
        }
    }
}

/// `min cᵀx` subject to `Ax = b`, `x ≥ 0`, with `A` stored row-major.
#[derive(Clone, Debug)]
pub struct StandardLp {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<f64>, objective: f64 },
    Infeasible { phase_one_objective: f64 },
}

struct Tableau {
    width: usize,
    data: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn rows(&self) -> usize {
        self.basis.len()
    }
    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.width + j]
    }
    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.width - 1)
    }
    /// The objective row sits after the constraint rows.
    fn obj(&self, j: usize) -> f64 {
        self.at(self.rows(), j)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.width;
        let p = self.at(r, c);
        for j in 0..w {
            self.data[r * w + j] /= p;
        }
        let prow: Vec<f64> = self.data[r * w..(r + 1) * w].to_vec();
        for i in 0..=self.rows() {
            if i == r {
                continue;
            }
            let f = self.at(i, c);
            if f != 0.0 {
                for (j, pv) in prow.iter().enumerate() {
                    self.data[i * w + j] -= f * pv;
                }
                self.data[i * w + c] = 0.0;
            }
        }
        self.basis[r] = c;
    }

    fn remove_row(&mut self, r: usize) {
        let w = self.width;
        self.data.drain(r * w..(r + 1) * w);
        self.basis.remove(r);
    }

    /// Bland's rule iterations over columns `< allowed`. Returns `false` when unbounded.
    fn optimize(&mut self, allowed: usize, tol: &Tolerances, iters: &mut usize) -> Result<bool> {
        loop {
            let Some(enter) = (0..allowed).find(|&j| self.obj(j) < -tol.optimality) else {
                return Ok(true);
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows() {
                let a = self.at(i, enter);
                if a > tol.pivot {
                    let ratio = self.rhs(i).max(0.0) / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((k, best)) => {
                            let tie = (ratio - best).abs() <= 1e-12 * (1.0 + best.abs());
                            if (!tie && ratio < best) || (tie && self.basis[i] < self.basis[k]) {
                                Some((i, ratio))
                            } else {
                                Some((k, best))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = leave else {
                return Ok(false);
            };
            *iters += 1;
            if *iters > tol.max_iter {
                return Err(Error::IterationCap(tol.max_iter));
            }
            self.pivot(r, enter);
        }
    }
}

impl StandardLp {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            a: vec![0.0; rows * cols],
            b: vec![0.0; rows],
            c: vec![0.0; cols],
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.cols + j] = v;
    }

    pub fn solve(&self, tol: &Tolerances) -> Result<LpOutcome> {
        let (m, n) = (self.rows, self.cols);
        let width = n + m + 1;
        let mut data = vec![0.0; (m + 1) * width];
        for i in 0..m {
            let sign = if self.b[i] < 0.0 { -1.0 } else { 1.0 };
            for j in 0..n {
                data[i * width + j] = sign * self.a[i * n + j];
            }
            data[i * width + n + i] = 1.0;
            data[i * width + width - 1] = sign * self.b[i];
        }
        // phase one: minimise the sum of artificials
        for j in (0..n).chain(std::iter::once(width - 1)) {
            let s: f64 = (0..m).map(|i| data[i * width + j]).sum();
            data[m * width + j] = -s;
        }
        let mut t = Tableau {
            width,
            data,
            basis: (n..n + m).collect(),
        };
        let mut iters = 0;
        t.optimize(n + m, tol, &mut iters)?;
        let phase_one = -t.obj(width - 1);
        let scale = 1.0 + self.b.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        if phase_one > tol.feasibility * scale {
            return Ok(LpOutcome::Infeasible {
                phase_one_objective: phase_one,
            });
        }

        // drive leftover artificials out of the basis, dropping redundant rows
        let mut i = 0;
        while i < t.rows() {
            if t.basis[i] >= n {
                let best = (0..n)
                    .map(|j| (j, t.at(i, j).abs()))
                    .filter(|&(_, v)| v > 1e-9)
                    .max_by(|a, b| a.1.total_cmp(&b.1));
                match best {
                    Some((j, _)) => {
                        t.pivot(i, j);
                        i += 1;
                    }
                    None => t.remove_row(i),
                }
            } else {
                i += 1;
            }
        }

        // phase two objective row
        let rows = t.rows();
        for j in 0..width {
            let cj = if j < n { self.c[j] } else { 0.0 };
            let zj: f64 = (0..rows).map(|i| self.c[t.basis[i]] * t.at(i, j)).sum();
            t.data[rows * width + j] = if j == width - 1 { -zj } else { cj - zj };
        }
        if !t.optimize(n, tol, &mut iters)? {
            return Err(Error::Unbounded);
        }
        let mut x = vec![0.0; n];
        for i in 0..rows {
            x[t.basis[i]] = t.rhs(i).max(0.0);
        }
        let objective = x.iter().zip(&self.c).map(|(a, b)| a * b).sum();
        Ok(LpOutcome::Optimal { x, objective })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    StrictlyFeasible,
    PositivelySingular,
}

/// Outcome of the strict system `Re(M h) > 0`, with its witness.
#[derive(Clone, Debug, Serialize)]
pub struct FeasibilityCertificate {
    pub verdict: Verdict,
    pub witness_h: Option<Vec<Complex64>>,
    pub witness_mu: Option<Vec<f64>>,
    /// `min_i Re(Mh)_i` for a strict witness, `max_j |(μᵀM)_j|` for a singular one.
    pub margin: f64,
    /// Optimal `t` of `max t` s.t. `Re(Mh) ≥ t`, `|Re h_j|, |Im h_j| ≤ 1`.
    pub t_star: f64,
}

impl FeasibilityCertificate {
    /// Re-substitutes the witness and checks the stated bounds.
    pub fn verify(&self, m: &DMatrix<Complex64>, tol: &Tolerances) -> bool {
        match (self.verdict, &self.witness_h, &self.witness_mu) {
            (Verdict::StrictlyFeasible, Some(h), None) => {
                let hv = nalgebra::DVector::from_column_slice(h);
                let min = (m * hv).iter().map(|v| v.re).fold(f64::INFINITY, f64::min);
                h.iter().all(|z| z.re.abs() <= 1.0 + 1e-12 && z.im.abs() <= 1.0 + 1e-12)
                    && min >= self.margin - 1e-15
                    && self.margin > tol.margin
            }
            (Verdict::PositivelySingular, None, Some(mu)) => {
                let sum: f64 = mu.iter().sum();
                mu.iter().all(|&v| v >= 0.0)
                    && (sum - 1.0).abs() <= 1e-12
                    && left_product_norm(m, mu) <= tol.feasibility
            }
            _ => false,
        }
    }
}

fn left_product_norm(m: &DMatrix<Complex64>, mu: &[f64]) -> f64 {
    (0..m.ncols())
        .map(|j| (0..m.nrows()).map(|i| m[(i, j)] * mu[i]).sum::<Complex64>().norm())
        .fold(0.0, f64::max)
}

/// `G = [Re M, -Im M]`, so `Re(M h) = G (Re h, Im h)`.
fn realify(m: &DMatrix<Complex64>) -> DMatrix<f64> {
    let (rows, cols) = m.shape();
    DMatrix::from_fn(rows, 2 * cols, |i, j| {
        if j < cols {
            m[(i, j)].re
        } else {
            -m[(i, j - cols)].im
        }
    })
}

/// Solves `max t` s.t. `G x ≥ t`, `-1 ≤ x ≤ 1`. Returns `(t, x)`.
fn max_margin(g: &DMatrix<f64>, tol: &Tolerances) -> Result<(f64, Vec<f64>)> {
    let (m, k) = g.shape();
    // variables: u (k, x = u - 1), v (k, box slack), t+, t-, s (m surplus)
    let cols = 2 * k + 2 + m;
    let (tp, tm) = (2 * k, 2 * k + 1);
    let mut lp = StandardLp::new(m + k, cols);
    for i in 0..m {
        let mut row_sum = 0.0;
        for j in 0..k {
            lp.set(i, j, g[(i, j)]);
            row_sum += g[(i, j)];
        }
        lp.set(i, tp, -1.0);
        lp.set(i, tm, 1.0);
        lp.set(i, 2 * k + 2 + i, -1.0);
        lp.b[i] = row_sum;
    }
    for j in 0..k {
        lp.set(m + j, j, 1.0);
        lp.set(m + j, k + j, 1.0);
        lp.b[m + j] = 2.0;
    }
    lp.c[tp] = -1.0;
    lp.c[tm] = 1.0;
    match lp.solve(tol)? {
        LpOutcome::Optimal { x, .. } => Ok((x[tp] - x[tm], x[..k].iter().map(|u| u - 1.0).collect())),
        // x = 0, t = min row value is always feasible
        LpOutcome::Infeasible { .. } => unreachable!("margin problem is always feasible"),
    }
}

/// Solves `min ‖Gᵀμ‖₁` over the probability simplex.
fn min_left_combination(g: &DMatrix<f64>, tol: &Tolerances) -> Result<Vec<f64>> {
    let (m, k) = g.shape();
    // variables: μ (m), s (k), slack1 (k), slack2 (k)
    let cols = m + 3 * k;
    let mut lp = StandardLp::new(2 * k + 1, cols);
    for j in 0..k {
        for i in 0..m {
            lp.set(j, i, g[(i, j)]);
            lp.set(k + j, i, -g[(i, j)]);
        }
        lp.set(j, m + j, -1.0);
        lp.set(j, m + k + j, 1.0);
        lp.set(k + j, m + j, -1.0);
        lp.set(k + j, m + 2 * k + j, 1.0);
        lp.c[m + j] = 1.0;
    }
    for i in 0..m {
        lp.set(2 * k, i, 1.0);
    }
    lp.b[2 * k] = 1.0;
    match lp.solve(tol)? {
        LpOutcome::Optimal { x, .. } => {
            let mu = &x[..m];
            let sum: f64 = mu.iter().sum();
            Ok(mu.iter().map(|v| v / sum).collect())
        }
        LpOutcome::Infeasible { .. } => unreachable!("uniform weights are always feasible"),
    }
}

pub fn strict_feasibility(m: &DMatrix<Complex64>) -> Result<FeasibilityCertificate> {
    strict_feasibility_with(m, &Tolerances::default())
}

/// Decides whether `Re(M h) > 0` has a solution. When it does not, `M` is
/// positively singular and a nonnegative `μ` with `μᵀM = 0` is returned.
pub fn strict_feasibility_with(m: &DMatrix<Complex64>, tol: &Tolerances) -> Result<FeasibilityCertificate> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Err(Error::Precondition("matrix must be nonempty".into()));
    }
    if m.iter().any(|z| !z.is_finite()) {
        return Err(Error::Precondition("matrix entries must be finite".into()));
    }
    let g = realify(m);
    let (t_star, x) = max_margin(&g, tol)?;
    if t_star > tol.margin {
        let k = m.ncols();
        let h: Vec<Complex64> = (0..k).map(|j| Complex64::new(x[j], x[k + j])).collect();
        let hv = nalgebra::DVector::from_column_slice(&h);
        let margin = (m * hv).iter().map(|v| v.re).fold(f64::INFINITY, f64::min);
        return Ok(FeasibilityCertificate {
            verdict: Verdict::StrictlyFeasible,
            witness_h: Some(h),
            witness_mu: None,
            margin,
            t_star,
        });
    }
    let mu = min_left_combination(&g, tol)?;
    let margin = left_product_norm(m, &mu);
    Ok(FeasibilityCertificate {
        verdict: Verdict::PositivelySingular,
        witness_h: None,
        witness_mu: Some(mu),
        margin,
        t_star,
    })
}

/// `max min_i Re(M h)_i` over `h` with `Σ_j |Re h_j| + |Im h_j| = 1`.
///
/// Positive exactly when the strict system is feasible, negative when the
/// origin is interior to the hull of the realified rows, and zero on the
/// boundary between the two alternatives.
pub fn signed_margin(m: &DMatrix<Complex64>) -> Result<f64> {
    signed_margin_with(m, &Tolerances::default())
}

pub fn signed_margin_with(m: &DMatrix<Complex64>, tol: &Tolerances) -> Result<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Err(Error::Precondition("matrix must be nonempty".into()));
    }
    let g = realify(m);
    let (rows, k) = g.shape();
    let ball = orthant_margin(&g, None, tol)?;
    if ball > tol.margin {
        return Ok(ball);
    }
    // a kernel vector already reaches 0 on the sphere
    if rows <= k || g.rank(1e-12 * (1.0 + g.amax())) < k {
        return Ok(0.0);
    }
    if k > 16 {
        return Err(Error::TooLarge { count: 1 << k.min(62), cap: 1 << 16 });
    }
    let mut best = f64::NEG_INFINITY;
    for pattern in 0..(1u32 << k) {
        let signs: Vec<f64> = (0..k).map(|j| if pattern >> j & 1 == 1 { -1.0 } else { 1.0 }).collect();
        best = best.max(orthant_margin(&g, Some(&signs), tol)?);
    }
    Ok(best)
}

/// `max t` s.t. `Gx ≥ t`, with `x` either in the unit ℓ1 ball (`signs` absent)
/// or on the face `x_j = s_j y_j`, `y ≥ 0`, `Σ y = 1`.
fn orthant_margin(g: &DMatrix<f64>, signs: Option<&[f64]>, tol: &Tolerances) -> Result<f64> {
    let (m, k) = g.shape();
    let free = if signs.is_some() { k } else { 2 * k };
    // variables: y (free), t+, t-, surplus (m), and a ball slack when needed
    let slack = usize::from(signs.is_none());
    let cols = free + 2 + m + slack;
    let (tp, tm) = (free, free + 1);
    let mut lp = StandardLp::new(m + 1, cols);
    for i in 0..m {
        for j in 0..k {
            match signs {
                Some(s) => lp.set(i, j, s[j] * g[(i, j)]),
                None => {
                    lp.set(i, j, g[(i, j)]);
                    lp.set(i, k + j, -g[(i, j)]);
                }
            }
        }
        lp.set(i, tp, -1.0);
        lp.set(i, tm, 1.0);
        lp.set(i, free + 2 + i, -1.0);
    }
    for j in 0..free {
        lp.set(m, j, 1.0);
    }
    if slack == 1 {
        lp.set(m, cols - 1, 1.0);
    }
    lp.b[m] = 1.0;
    lp.c[tp] = -1.0;
    lp.c[tm] = 1.0;
    match lp.solve(tol)? {
        LpOutcome::Optimal { x, .. } => Ok(x[tp] - x[tm]),
        LpOutcome::Infeasible { .. } => unreachable!("y = e_1 with t = min row value is feasible"),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum EqFeasibility {
    Feasible { x: Vec<f64>, residual: f64 },
    Infeasible { phase_one_objective: f64 },
}

pub fn eq_nonneg_feasibility(a: &DMatrix<f64>, b: &[f64]) -> Result<EqFeasibility> {
    eq_nonneg_feasibility_with(a, b, &Tolerances::default())
}

/// Finds `x ≥ 0` with `Ax = b`, or reports the phase-one objective.
pub fn eq_nonneg_feasibility_with(a: &DMatrix<f64>, b: &[f64], tol: &Tolerances) -> Result<EqFeasibility> {
    if a.nrows() != b.len() {
        return Err(Error::Precondition(format!(
            "matrix has {} rows but right-hand side has {}",
            a.nrows(),
            b.len()
        )));
    }
    let mut lp = StandardLp::new(a.nrows(), a.ncols());
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            lp.set(i, j, a[(i, j)]);
        }
    }
    lp.b = b.to_vec();
    match lp.solve(tol)? {
        LpOutcome::Optimal { x, .. } => {
            let xv = nalgebra::DVector::from_column_slice(&x);
            let residual = (a * xv)
                .iter()
                .zip(b)
                .map(|(l, r)| (l - r).abs())
                .fold(0.0, f64::max);
            Ok(EqFeasibility::Feasible { x, residual })
        }
        LpOutcome::Infeasible { phase_one_objective } => Ok(EqFeasibility::Infeasible { phase_one_objective }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn cm(rows: usize, cols: usize, v: &[f64]) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(rows, cols, &v.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>())
    }

    #[test]
    fn textbook_lp() {
        // max 3x + 2y, x + y <= 4, x + 3y <= 6
        let mut lp = StandardLp::new(2, 4);
        for (i, row) in [[1.0, 1.0, 1.0, 0.0], [1.0, 3.0, 0.0, 1.0]].iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                lp.set(i, j, *v);
            }
        }
        lp.b = vec![4.0, 6.0];
        lp.c = vec![-3.0, -2.0, 0.0, 0.0];
        match lp.solve(&Tolerances::default()).unwrap() {
            LpOutcome::Optimal { x, objective } => {
                assert!((objective + 12.0).abs() < 1e-12);
                assert!((x[0] - 4.0).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn redundant_rows_are_dropped() {
        let a = DMatrix::from_row_slice(3, 2, &[1.0, 1.0, 2.0, 2.0, 1.0, -1.0]);
        match eq_nonneg_feasibility(&a, &[2.0, 4.0, 0.0]).unwrap() {
            EqFeasibility::Feasible { x, residual } => {
                assert!(residual < 1e-12);
                assert!((x[0] - 1.0).abs() < 1e-12 && (x[1] - 1.0).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn scalar_systems() {
        let one = DMatrix::from_element(1, 1, 1.0);
        assert_eq!(
            eq_nonneg_feasibility(&one, &[1.0]).unwrap(),
            EqFeasibility::Feasible { x: vec![1.0], residual: 0.0 }
        );
        assert!(matches!(
            eq_nonneg_feasibility(&one, &[-1.0]).unwrap(),
            EqFeasibility::Infeasible { phase_one_objective } if phase_one_objective > 0.5
        ));
    }

    #[test]
    fn one_by_one_is_strictly_feasible() {
        let cert = strict_feasibility(&cm(1, 1, &[1.0])).unwrap();
        assert_eq!(cert.verdict, Verdict::StrictlyFeasible);
        assert_eq!(cert.witness_h.as_ref().unwrap()[0].re, 1.0);
        assert!(cert.verify(&cm(1, 1, &[1.0]), &Tolerances::default()));
    }

    #[test]
    fn cancelling_rows_are_singular() {
        let m = cm(2, 1, &[1.0, -1.0]);
        let cert = strict_feasibility(&m).unwrap();
        assert_eq!(cert.verdict, Verdict::PositivelySingular);
        let mu = cert.witness_mu.as_ref().unwrap();
        assert!((mu[0] - 0.5).abs() < 1e-12 && (mu[1] - 0.5).abs() < 1e-12);
        assert!(cert.verify(&m, &Tolerances::default()));
    }

    #[test]
    fn zero_row_is_singular() {
        let m = cm(2, 2, &[1.0, 2.0, 0.0, 0.0]);
        let cert = strict_feasibility(&m).unwrap();
        assert_eq!(cert.verdict, Verdict::PositivelySingular);
        assert_eq!(cert.witness_mu.unwrap(), vec![0.0, 1.0]);
    }

    #[test]
    fn empty_and_nonfinite_inputs_rejected() {
        assert!(strict_feasibility(&DMatrix::zeros(0, 2)).is_err());
        assert!(strict_feasibility(&cm(1, 1, &[f64::NAN])).is_err());
    }

    /// Positively singular matrices built from a planted witness.
    #[test]
    fn planted_witnesses() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let (m, n) = (rng.random_range(1..=8), rng.random_range(1..=10));
            let mut mat = DMatrix::from_fn(m, n, |_, _| {
                Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
            });
            // plant μ: replace the last row by minus a positive mix of the others
            if m >= 2 {
                let w: Vec<f64> = (0..m - 1).map(|_| rng.random_range(0.1..1.0)).collect();
                for j in 0..n {
                    let s: Complex64 = (0..m - 1).map(|i| mat[(i, j)] * w[i]).sum();
                    mat[(m - 1, j)] = -s;
                }
                let cert = strict_feasibility(&mat).unwrap();
                assert_eq!(cert.verdict, Verdict::PositivelySingular);
                assert!(cert.verify(&mat, &Tolerances::default()));
            }
        }
    }

    /// Sampled oracle for the signed margin in the plane (one complex column).
    fn sampled_margin(m: &DMatrix<Complex64>) -> f64 {
        let g = realify(m);
        (0..40_000)
            .map(|s| {
                // walk the ℓ1 unit circle
                let u = s as f64 / 10_000.0;
                let (q, f) = (u.floor() as usize, u.fract());
                let x = match q {
                    0 => [1.0 - f, f],
                    1 => [-f, 1.0 - f],
                    2 => [-(1.0 - f), -f],
                    _ => [f, -(1.0 - f)],
                };
                (0..g.nrows())
                    .map(|i| g[(i, 0)] * x[0] + g[(i, 1)] * x[1])
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    #[test]
    fn signed_margin_examples() {
        assert!((signed_margin(&cm(1, 1, &[1.0])).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(signed_margin(&cm(2, 1, &[1.0, -1.0])).unwrap(), 0.0);
        let tri = DMatrix::from_fn(3, 1, |i, _| Complex64::from_polar(1.0, std::f64::consts::TAU * i as f64 / 3.0));
        let t = signed_margin(&tri).unwrap();
        assert!(t < -0.1);
        assert!((t - sampled_margin(&tri)).abs() < 1e-4);

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..200 {
            let m = rng.random_range(1..=6);
            let mat = DMatrix::from_fn(m, 1, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            let t = signed_margin(&mat).unwrap();
            assert!((t - sampled_margin(&mat)).abs() < 1e-4, "{t} vs {}", sampled_margin(&mat));
            let verdict = strict_feasibility(&mat).unwrap().verdict;
            if t.abs() > 1e-7 {
                assert_eq!(t > 0.0, verdict == Verdict::StrictlyFeasible);
            }
        }
    }
}
