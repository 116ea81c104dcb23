//! Normal matrices, their one-dimensional-deficiency compressions and the
//! spectral statements that mirror the critical-point theorems.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matching::bottleneck_assignment;
use crate::metrics::directed_hausdorff_sets;
use crate::poly::Polynomial;
use crate::roots::{RootCluster, RootFinder, RootSet};

pub type CMatrix = DMatrix<Complex64>;

pub const NORMALITY_TOL: f64 = 1e-9;
const CHAR_POLY_MAX: usize = 32;
/// Relative coefficient noise assumed when finding eigenvalues from a
/// characteristic polynomial; lets multiple eigenvalues cluster.
const EIG_NOISE: f64 = 1e-13;
const SEPARATION: f64 = 1e-6;

/// `max |(AA* - A*A)_ij|`.
pub fn normality_residual(m: &CMatrix) -> f64 {
    let adj = m.adjoint();
    (m * &adj - &adj * m).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// A square matrix that commutes with its adjoint.
#[derive(Clone, Debug)]
pub struct NormalMatrix {
    entries: CMatrix,
    normality_residual: f64,
}

impl NormalMatrix {
    pub fn new(entries: CMatrix) -> Result<Self> {
        if !entries.is_square() || entries.nrows() == 0 {
            return Err(Error::Precondition("matrix must be square and nonempty".into()));
        }
        let normality_residual = normality_residual(&entries);
        if normality_residual > NORMALITY_TOL {
            return Err(Error::NotNormal(normality_residual));
        }
        Ok(Self {
            entries,
            normality_residual,
        })
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn normality_residual(&self) -> f64 {
        self.normality_residual
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// `A_[i]`: the matrix with row and column `i` removed.
    pub fn compression(&self, i: usize) -> Result<CMatrix> {
        compression(&self.entries, i)
    }
}

pub fn compression(m: &CMatrix, i: usize) -> Result<CMatrix> {
    if i >= m.nrows() {
        return Err(Error::Precondition(format!("index {i} out of range for dimension {}", m.nrows())));
    }
    Ok(m.clone().remove_row(i).remove_column(i))
}

/// `u_ij = η^{ij} / √n` with `η = e^{2πi/n}` and indices running from 1.
pub fn dft_unitary(n: usize) -> CMatrix {
    let scale = 1.0 / (n as f64).sqrt();
    CMatrix::from_fn(n, n, |i, j| {
        let k = ((i + 1) * (j + 1)) % n;
        Complex64::from_polar(scale, std::f64::consts::TAU * k as f64 / n as f64)
    })
}

/// `U* diag(λ) U`.
fn conjugate_diag(u: &CMatrix, roots: &[Complex64]) -> CMatrix {
    let d = CMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(roots));
    u.adjoint() * d * u
}

/// `U* diag(roots) U` with the Fourier unitary, so every standard basis vector
/// is a trace vector and each `A_[i]` has characteristic polynomial `±p'/n`.
pub fn normal_from_roots(roots: &[Complex64]) -> Result<NormalMatrix> {
    if roots.len() < 2 {
        return Err(Error::Precondition("need at least two eigenvalues".into()));
    }
    NormalMatrix::new(conjugate_diag(&dft_unitary(roots.len()), roots))
}

/// Modified Gram–Schmidt, twice, on the columns of `m`.
fn orthonormalize(mut m: CMatrix) -> Result<CMatrix> {
    let n = m.ncols();
    for j in 0..n {
        for _ in 0..2 {
            for k in 0..j {
                let proj = m.column(k).dotc(&m.column(j));
                let qk = m.column(k).into_owned();
                m.column_mut(j).axpy(-proj, &qk, Complex64::new(1.0, 0.0));
            }
        }
        let norm = m.column(j).norm();
        if norm < 1e-10 {
            return Err(Error::Breakdown);
        }
        m.column_mut(j).unscale_mut(norm);
    }
    Ok(m)
}

fn gaussian_matrix(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// A unitary matrix from the orthonormalised columns of a complex Gaussian.
pub fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> Result<CMatrix> {
    orthonormalize(gaussian_matrix(n, rng))
}

/// `V* diag(roots) V` with `V` random unitary, deterministic in `seed`.
pub fn random_normal(roots: &[Complex64], seed: u64) -> Result<NormalMatrix> {
    if roots.len() < 2 {
        return Err(Error::Precondition("need at least two eigenvalues".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = match random_unitary(roots.len(), &mut rng) {
        Ok(v) => v,
        Err(Error::Breakdown) => random_unitary(roots.len(), &mut ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15))?,
        Err(e) => return Err(e),
    };
    NormalMatrix::new(conjugate_diag(&v, roots))
}

/// `det(M - zI)` by the Faddeev–LeVerrier recursion.
pub fn char_poly(m: &CMatrix) -> Result<Polynomial> {
    let n = m.nrows();
    if !m.is_square() {
        return Err(Error::Precondition("matrix must be square".into()));
    }
    if n > CHAR_POLY_MAX {
        return Err(Error::TooLarge { count: n, cap: CHAR_POLY_MAX });
    }
    // monic det(zI - M) = Σ c_k z^k
    let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
    c[n] = Complex64::new(1.0, 0.0);
    let mut acc = CMatrix::zeros(n, n);
    for k in 1..=n {
        acc = m * &acc;
        for d in 0..n {
            acc[(d, d)] += c[n - k + 1];
        }
        c[n - k] = -(m * &acc).trace() / k as f64;
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(Polynomial::new(c.into_iter().map(|v| v * sign).collect()))
}

/// Newton on `det(M - zI)` evaluated through LU: the step is `1/tr((M - zI)⁻¹)`.
/// Removes the error the coefficient route adds to close simple eigenvalues.
fn polish_simple(m: &CMatrix, z0: Complex64) -> Complex64 {
    let n = m.nrows();
    let scale = 1.0 + z0.norm();
    let mut z = z0;
    for _ in 0..4 {
        let Some(inv) = (m - CMatrix::identity(n, n) * z).try_inverse() else {
            return z;
        };
        let tr = inv.trace();
        if !tr.is_finite() || tr.norm() == 0.0 {
            return z;
        }
        let step = tr.inv();
        z += step;
        if (z - z0).norm() > 1e-6 * scale {
            return z0;
        }
        if step.norm() <= 1e-15 * scale {
            break;
        }
    }
    z
}

/// Eigenvalues of `m` (any square matrix) as clustered roots of its
/// characteristic polynomial, simple ones polished on the matrix itself.
pub fn eigen_clusters(m: &CMatrix) -> Result<RootSet> {
    let p = char_poly(m)?;
    let raw = RootFinder::default().with_coeff_noise(EIG_NOISE).solve(&p)?;
    let clusters = raw
        .clusters()
        .iter()
        .map(|c| RootCluster {
            center: if c.multiplicity == 1 { polish_simple(m, c.center) } else { c.center },
            multiplicity: c.multiplicity,
        })
        .collect();
    Ok(RootSet::from_clusters(clusters, raw.cluster_tol()))
}

pub fn eigenvalues(m: &CMatrix) -> Result<Vec<Complex64>> {
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    Ok(eigen_clusters(m)?.points())
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumPair {
    pub eig_full: Vec<Complex64>,
    pub eig_sub: Vec<Complex64>,
    pub source_index: usize,
}

pub fn compression_spectrum(a: &NormalMatrix, i: usize) -> Result<SpectrumPair> {
    Ok(SpectrumPair {
        eig_full: eigenvalues(a.entries())?,
        eig_sub: eigenvalues(&a.compression(i)?)?,
        source_index: i,
    })
}

/// `s(E1, E2) = max_{z ∈ E1} min_{w ∈ E2} |z - w|`.
pub fn spectral_variation(e1: &[Complex64], e2: &[Complex64]) -> Result<f64> {
    Ok(directed_hausdorff_sets(e1, e2)?.0)
}

/// `max |λ|`.
pub fn spectral_radius(eig: &[Complex64]) -> f64 {
    eig.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[derive(Clone, Debug, Serialize)]
pub struct GaussLucasWeights {
    pub eigenvalues: Vec<Complex64>,
    /// `|<u_i, e_j>|²` for the unit eigenvectors `e_j`.
    pub weights: Vec<f64>,
    /// `max |det(A_[i] - z)/det(A - z) - Σ_j w_j/(z_j - z)|` over the probes.
    pub residual: f64,
}

/// Eigen-decomposition of a normal matrix from its complex Schur form,
/// which is diagonal up to rounding.
pub fn normal_eigen(a: &NormalMatrix) -> Result<(Vec<Complex64>, CMatrix)> {
    let (q, t) = a.entries().clone().schur().unpack();
    let n = a.dim();
    let off = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| t[(i, j)].norm())
        .fold(0.0, f64::max);
    let scale = 1.0 + t.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if off > 1e-8 * scale {
        return Err(Error::NotNormal(off));
    }
    Ok(((0..n).map(|j| t[(j, j)]).collect(), q))
}

/// Spectral weights of the `i`-th basis vector, checked against the resolvent
/// ratio at the probes. Probes must stay `1e-3` away from the spectrum.
pub fn gauss_lucas_weights(a: &NormalMatrix, i: usize, probes: &[Complex64]) -> Result<GaussLucasWeights> {
    let (eig, q) = normal_eigen(a)?;
    let n = a.dim();
    if i >= n {
        return Err(Error::Precondition(format!("index {i} out of range for dimension {n}")));
    }
    if let Some(z) = probes.iter().find(|z| eig.iter().any(|l| (*z - l).norm() < 1e-3)) {
        return Err(Error::Precondition(format!("probe {z} lies within 1e-3 of the spectrum")));
    }
    let weights: Vec<f64> = (0..n).map(|j| q[(i, j)].norm_sqr()).collect();
    let sub = a.compression(i)?;
    let id = |k: usize| CMatrix::identity(k, k);
    let residual = probes
        .iter()
        .map(|&z| {
            let ratio = (&sub - id(n - 1) * z).determinant() / (a.entries() - id(n) * z).determinant();
            let sum: Complex64 = eig.iter().zip(&weights).map(|(l, w)| *w / (l - z)).sum();
            (ratio - sum).norm()
        })
        .fold(0.0, f64::max);
    Ok(GaussLucasWeights {
        eigenvalues: eig,
        weights,
        residual,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct InterlaceRatios {
    /// Distinct eigenvalues of `A` with their multiplicities.
    pub distinct: Vec<(Complex64, usize)>,
    /// The submatrix eigenvalues left after removing forced copies.
    pub free: Vec<Complex64>,
    /// Real parts of the ratios, one per distinct eigenvalue.
    pub values: Vec<f64>,
    pub max_imag: f64,
}

/// `∏_j (w_j - z_k) / ∏_{l≠k} (z_l - z_k)` over the distinct eigenvalues `z_k`
/// of `A`, with `w_j` the eigenvalues of `A_[i]` not forced by multiplicity.
pub fn interlace_ratios(a: &NormalMatrix, i: usize) -> Result<InterlaceRatios> {
    let pair = compression_spectrum(a, i)?;
    let full = eigen_clusters(a.entries())?;
    let distinct: Vec<(Complex64, usize)> = full.clusters().iter().map(|c| (c.center, c.multiplicity)).collect();
    for (k, (z, _)) in distinct.iter().enumerate() {
        for (w, _) in &distinct[k + 1..] {
            let gap = (z - w).norm();
            if gap < SEPARATION {
                return Err(Error::Clustering(gap));
            }
        }
    }
    let forced: Vec<Complex64> = distinct
        .iter()
        .flat_map(|&(z, m)| std::iter::repeat_n(z, m - 1))
        .collect();
    let (_, assign) = bottleneck_assignment(&forced, &pair.eig_sub);
    let free: Vec<Complex64> = pair
        .eig_sub
        .iter()
        .enumerate()
        .filter(|(j, _)| !assign.contains(j))
        .map(|(_, w)| *w)
        .collect();
    let ratios: Vec<Complex64> = distinct
        .iter()
        .enumerate()
        .map(|(k, &(zk, _))| {
            let num: Complex64 = free.iter().map(|w| w - zk).product();
            let den: Complex64 = distinct
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != k)
                .map(|(_, &(zl, _))| zl - zk)
                .product();
            num / den
        })
        .collect();
    Ok(InterlaceRatios {
        distinct,
        free,
        values: ratios.iter().map(|r| r.re).collect(),
        max_imag: ratios.iter().map(|r| r.im.abs()).fold(0.0, f64::max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{hull_distance, line_fit_residual};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn disk_roots(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|_| loop {
                let z = c(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
                if z.norm() <= 1.0 {
                    break z;
                }
            })
            .collect()
    }

    fn max_dev(p: &Polynomial, q: &Polynomial) -> f64 {
        assert_eq!(p.degree(), q.degree());
        p.coeffs().iter().zip(q.coeffs()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn dft_examples() {
        assert_eq!(dft_unitary(1)[(0, 0)], c(1.0, 0.0));
        let u = dft_unitary(2);
        let h = 1.0 / 2f64.sqrt();
        let expected = [[-h, h], [h, h]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((u[(i, j)] - c(expected[i][j], 0.0)).norm() < 1e-15);
            }
        }
        for n in 2..=16 {
            let u = dft_unitary(n);
            let err = (u.adjoint() * &u - CMatrix::identity(n, n)).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(err <= 1e-12);
        }
    }

    #[test]
    fn char_poly_examples() {
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0, 0.0), c(2.0, 0.0)]));
        assert!(max_dev(&char_poly(&d).unwrap(), &Polynomial::from_real(&[2.0, -3.0, 1.0])) < 1e-14);

        // companion matrix of z^3 - 2z + 5 - i
        let p = Polynomial::new(vec![c(5.0, -1.0), c(-2.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let mut comp = CMatrix::zeros(3, 3);
        comp[(1, 0)] = c(1.0, 0.0);
        comp[(2, 1)] = c(1.0, 0.0);
        for k in 0..3 {
            comp[(k, 2)] = -p.coeffs()[k];
        }
        assert!(max_dev(&char_poly(&comp).unwrap(), &p.scale(c(-1.0, 0.0))) < 1e-13);

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=8 {
            let m = gaussian_matrix(n, &mut rng);
            let cp = char_poly(&m).unwrap();
            let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
            assert!((cp.coeffs()[n - 1] - m.trace() * sign * -1.0).norm() < 1e-12);
        }
        assert!(char_poly(&CMatrix::zeros(33, 33)).is_err());
    }

    #[test]
    fn differentiator_examples() {
        let a = normal_from_roots(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        let sub = a.compression(0).unwrap();
        assert!(sub[(0, 0)].norm() < 1e-15);

        let roots = Polynomial::from_real(&[0.0, -1.0, 0.0, 0.0, 1.0]).find_roots().unwrap().points();
        let a = normal_from_roots(&roots).unwrap();
        let target = Polynomial::from_real(&[-1.0, 0.0, 0.0, 4.0]).scale(c(-0.25, 0.0));
        for i in 0..4 {
            assert!(max_dev(&char_poly(&a.compression(i).unwrap()).unwrap(), &target) <= 1e-10);
        }
    }

    #[test]
    fn basis_vectors_are_trace_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let roots = disk_roots(&mut rng, 5);
        let a = normal_from_roots(&roots).unwrap();
        let mut power = CMatrix::identity(5, 5);
        for _ in 0..=10 {
            let tr = power.trace() / 5.0;
            for i in 0..5 {
                assert!((power[(i, i)] - tr).norm() < 1e-12);
            }
            power = &power * a.entries();
        }
    }

    #[test]
    fn random_normal_contract() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for n in 2..=8 {
            let roots = disk_roots(&mut rng, n);
            let a = random_normal(&roots, 99).unwrap();
            let b = random_normal(&roots, 99).unwrap();
            assert_eq!(a.entries(), b.entries());
            assert!(a.normality_residual() <= 1e-10);
            let eig = eigenvalues(a.entries()).unwrap();
            assert!(bottleneck_assignment(&roots, &eig).0 <= 1e-9);
        }
        assert!(random_normal(&[c(1.0, 0.0)], 1).is_err());
    }

    #[test]
    fn non_normal_is_rejected() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(NormalMatrix::new(m), Err(Error::NotNormal(_))));
    }

    #[test]
    fn compression_spectra() {
        let roots = Polynomial::from_real(&[0.0, 1.0, 0.0, 0.0, 0.0, 1.0]).find_roots().unwrap().points();
        let a = normal_from_roots(&roots).unwrap();
        let crit = Polynomial::from_roots(&roots).unwrap().derivative().find_roots().unwrap().points();
        for i in 0..5 {
            let pair = compression_spectrum(&a, i).unwrap();
            assert!(bottleneck_assignment(&crit, &pair.eig_sub).0 <= 1e-8);
        }

        // Hermitian: Cauchy interlacing
        let real = [c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)];
        let a = random_normal(&real, 4).unwrap();
        for i in 0..3 {
            let mut sub: Vec<f64> = compression_spectrum(&a, i).unwrap().eig_sub.iter().map(|z| z.re).collect();
            sub.sort_by(f64::total_cmp);
            assert!(1.0 - 1e-9 <= sub[0] && sub[0] <= 2.0 + 1e-9);
            assert!(2.0 - 1e-9 <= sub[1] && sub[1] <= 3.0 + 1e-9);
        }

        let zero = NormalMatrix::new(CMatrix::zeros(4, 4)).unwrap();
        let pair = compression_spectrum(&zero, 2).unwrap();
        assert_eq!(pair.eig_sub, vec![c(0.0, 0.0); 3]);
    }

    #[test]
    fn spectral_variation_examples() {
        let e = [c(1.0, 0.0), c(0.0, 1.0)];
        assert_eq!(spectral_variation(&e, &e).unwrap(), 0.0);
        assert!(spectral_variation(&[], &e).is_err());

        // diag(1, ..., 1, -1) with the last row and column deleted
        let n = 5;
        let mut roots = vec![c(1.0, 0.0); n];
        roots[n - 1] = c(-1.0, 0.0);
        let a = NormalMatrix::new(CMatrix::from_diagonal(&nalgebra::DVector::from_vec(roots))).unwrap();
        let pair = compression_spectrum(&a, n - 1).unwrap();
        assert!((spectral_variation(&pair.eig_full, &pair.eig_sub).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn gauss_lucas_examples() {
        let roots = Polynomial::from_real(&[0.0, -1.0, 0.0, 0.0, 1.0]).find_roots().unwrap().points();
        let a = normal_from_roots(&roots).unwrap();
        let probes = [c(2.0, 0.0), c(0.3, 0.4), c(-1.5, -2.0)];
        let gl = gauss_lucas_weights(&a, 1, &probes).unwrap();
        assert!(gl.weights.iter().all(|w| (w - 0.25).abs() < 1e-12));
        assert!(gl.residual <= 1e-10);

        let d = NormalMatrix::new(CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c(1.0, 0.0),
            c(-1.0, 0.5),
            c(0.2, 0.0),
        ])))
        .unwrap();
        let gl = gauss_lucas_weights(&d, 0, &probes).unwrap();
        let hit = gl.eigenvalues.iter().position(|z| (z - c(1.0, 0.0)).norm() < 1e-12).unwrap();
        for (j, w) in gl.weights.iter().enumerate() {
            assert!((w - if j == hit { 1.0 } else { 0.0 }).abs() < 1e-12);
        }
        assert!(gauss_lucas_weights(&d, 0, &[c(1.0, 0.0)]).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for seed in 0..20 {
            let roots = disk_roots(&mut rng, 6);
            let a = random_normal(&roots, seed).unwrap();
            let probes: Vec<Complex64> = (0..10)
                .map(|_| loop {
                    let z = c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
                    if roots.iter().all(|r| (z - r).norm() >= 1e-2) {
                        break z;
                    }
                })
                .collect();
            let gl = gauss_lucas_weights(&a, seed as usize % 6, &probes).unwrap();
            assert!(gl.weights.iter().all(|&w| w >= 0.0));
            assert!((gl.weights.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
            assert!(gl.residual <= 1e-8, "{}", gl.residual);
        }
    }

    #[test]
    fn interlacing_examples() {
        let roots = Polynomial::from_real(&[0.0, -1.0, 0.0, 0.0, 0.0, 1.0]).find_roots().unwrap().points();
        let a = normal_from_roots(&roots).unwrap();
        let out = interlace_ratios(&a, 2).unwrap();
        assert!(out.values.iter().all(|v| (v - 0.2).abs() < 1e-9));
        assert!(out.max_imag <= 1e-9);

        // diag(1, 1, -1) under a random unitary: one forced copy of 1
        let a = random_normal(&[c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)], 8).unwrap();
        let out = interlace_ratios(&a, 2).unwrap();
        assert_eq!(out.distinct.len(), 2);
        assert_eq!(out.free.len(), 1);
        let sub = compression_spectrum(&a, 2).unwrap().eig_sub;
        assert!(sub.iter().any(|w| (w - c(1.0, 0.0)).norm() < 1e-6));
        assert!(out.values.iter().all(|&v| v >= -1e-8));
        assert!((out.values.iter().sum::<f64>() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn random_compressions_stay_in_hull() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for seed in 0..50 {
            let n = rng.random_range(2..=7);
            let roots = disk_roots(&mut rng, n);
            let a = random_normal(&roots, seed).unwrap();
            let pair = compression_spectrum(&a, seed as usize % n).unwrap();
            for w in &pair.eig_sub {
                assert!(hull_distance(&pair.eig_full, *w) <= 1e-8);
            }
        }
    }

    #[test]
    fn compression_normal_iff_collinear() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let base = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let dir = Complex64::from_polar(1.0, rng.random_range(0.0..6.3));
            let line: Vec<Complex64> = (0..3).map(|_| base + dir * rng.random_range(-1.0..1.0)).collect();
            let generic = disk_roots(&mut rng, 3);
            for (roots, collinear) in [(line, true), (generic, false)] {
                assert_eq!(line_fit_residual(&roots) <= 1e-9, collinear);
                let a = normal_from_roots(&roots).unwrap();
                let res = normality_residual(&a.compression(0).unwrap());
                assert_eq!(res <= 1e-9, collinear, "residual {res}");
            }
        }
    }

    #[test]
    fn differentiator_identity_up_to_twelve() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for n in 2..=12 {
            for _ in 0..10 {
                let roots = disk_roots(&mut rng, n);
                let a = normal_from_roots(&roots).unwrap();
                let sign = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
                let target = Polynomial::from_roots(&roots).unwrap().derivative().scale(c(sign / n as f64, 0.0));
                for i in 0..n {
                    assert!(max_dev(&char_poly(&a.compression(i).unwrap()).unwrap(), &target) <= 1e-9);
                }
            }
        }
    }

    /// Empirical look at the equality case s(A, A') = ρ(A): scaled roots of
    /// unity reach it, random spectra stay strictly below.
    #[test]
    fn operator_equality_cases() {
        for n in 2..=8 {
            for rho in [0.5, 1.0] {
                let roots: Vec<Complex64> = (0..n)
                    .map(|k| Complex64::from_polar(rho, std::f64::consts::TAU * k as f64 / n as f64 + 0.3))
                    .collect();
                let pair = compression_spectrum(&normal_from_roots(&roots).unwrap(), 0).unwrap();
                assert!((spectral_variation(&pair.eig_full, &pair.eig_sub).unwrap() - rho).abs() <= 1e-9);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..100 {
            let n = rng.random_range(3..=8);
            let roots = disk_roots(&mut rng, n);
            let pair = compression_spectrum(&normal_from_roots(&roots).unwrap(), 0).unwrap();
            let s = spectral_variation(&pair.eig_full, &pair.eig_sub).unwrap();
            assert!(s < spectral_radius(&roots) - 1e-6);
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]

        #[test]
        fn compression_invariants(
            pts in proptest::collection::vec((0.0f64..1.0, 0.0f64..std::f64::consts::TAU), 2..8),
            seed in 0u64..1000,
            index in 0usize..8,
        ) {
            let roots: Vec<Complex64> = pts.iter().map(|&(r, t)| Complex64::from_polar(r, t)).collect();
            let n = roots.len();
            let i = index % n;
            let a = random_normal(&roots, seed).unwrap();
            let pair = compression_spectrum(&a, i).unwrap();
            for w in &pair.eig_sub {
                proptest::prop_assert!(hull_distance(&roots, *w) <= 1e-8);
            }
            let d = normal_from_roots(&roots).unwrap();
            let pair = compression_spectrum(&d, i).unwrap();
            let rho = spectral_radius(&roots);
            proptest::prop_assert!(spectral_variation(&pair.eig_sub, &pair.eig_full).unwrap() <= rho + 1e-9);
            let probes = [c(3.0, 0.0), c(-2.0, 2.5), c(0.0, -3.0)];
            let gl = gauss_lucas_weights(&a, i, &probes).unwrap();
            proptest::prop_assert!(gl.weights.iter().all(|&w| w >= 0.0));
            proptest::prop_assert!((gl.weights.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
            proptest::prop_assert!(gl.residual <= 1e-8);
        }
    }
}
