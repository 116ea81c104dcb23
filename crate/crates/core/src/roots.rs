//! Simultaneous root finding (Aberth–Ehrlich) with multiplicity clustering.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;
pub const MAX_ITERATIONS: usize = 500;

/// One root together with its multiplicity. Multiple roots are reported by
/// the centroid of the cluster of approximations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootCluster {
    pub center: Complex64,
    pub multiplicity: usize,
}

/// Unordered multiset of roots, stored as clusters sorted by `(re, im)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    clusters: Vec<RootCluster>,
    cluster_tol: f64,
    residual: f64,
}

impl RootSet {
    pub fn from_clusters(mut clusters: Vec<RootCluster>, cluster_tol: f64) -> Self {
        clusters.sort_by(|a, b| lex_cmp(a.center, b.center));
        Self {
            clusters,
            cluster_tol,
            residual: 0.0,
        }
    }

    pub fn clusters(&self) -> &[RootCluster] {
        &self.clusters
    }

    /// All roots, each repeated according to its multiplicity.
    pub fn points(&self) -> Vec<Complex64> {
        self.clusters
            .iter()
            .flat_map(|c| std::iter::repeat_n(c.center, c.multiplicity))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.clusters.iter().map(|c| c.multiplicity).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn cluster_tol(&self) -> f64 {
        self.cluster_tol
    }

    /// Largest `|p(z)|` over the raw iterates before clustering.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn all_simple(&self) -> bool {
        self.clusters.iter().all(|c| c.multiplicity == 1)
    }
}

pub(crate) fn lex_cmp(a: Complex64, b: Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Aberth–Ehrlich iteration with configurable clustering.
///
/// Two approximations are merged into one cluster when their distance is
/// below `cluster_tol` or when their Newton inclusion discs overlap. The disc
/// radius at `z` is `n (|p(z)| + e(z)) / |p'(z)|`, where `e(z)` bounds the
/// rounding error of evaluating `p` plus `coeff_noise * max|c_k| * sum |z|^k`
/// for coefficients that are themselves only known to that relative level.
#[derive(Clone, Copy, Debug)]
pub struct RootFinder {
    pub cluster_tol: f64,
    pub coeff_noise: f64,
    pub max_iter: usize,
}

impl Default for RootFinder {
    fn default() -> Self {
        Self {
            cluster_tol: DEFAULT_CLUSTER_TOL,
            coeff_noise: 0.0,
            max_iter: MAX_ITERATIONS,
        }
    }
}

impl RootFinder {
    pub fn with_cluster_tol(mut self, tol: f64) -> Self {
        self.cluster_tol = tol;
        self
    }

    pub fn with_coeff_noise(mut self, noise: f64) -> Self {
        self.coeff_noise = noise;
        self
    }

    pub fn solve(&self, p: &Polynomial) -> Result<RootSet> {
        if p.degree() == 0 {
            return Err(Error::DegreeZero);
        }
        let p = p.monic();
        let coeffs = p.coeffs();
        let zeros_at_origin = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
        let reduced = Polynomial::new(coeffs[zeros_at_origin..].to_vec());

        let mut points = Vec::with_capacity(p.degree());
        let mut radii = Vec::with_capacity(p.degree());
        let mut residual = 0.0f64;
        if reduced.degree() > 0 {
            let (iterates, iters) = aberth(&reduced, self.max_iter);
            let tol = 1e-10 * (1.0 + reduced.max_coeff_norm());
            residual = iterates
                .iter()
                .map(|&z| reduced.eval(z).norm())
                .fold(0.0, f64::max);
            if residual > tol || iterates.iter().any(|z| !z.is_finite()) {
                return Err(Error::NoConvergence {
                    iterations: iters,
                    residual,
                    best: iterates,
                });
            }
            for &z in &iterates {
                radii.push(self.inclusion_radius(&reduced, z));
                points.push(z);
            }
        }
        for _ in 0..zeros_at_origin {
            points.push(Complex64::new(0.0, 0.0));
            radii.push(0.0);
        }

        let clusters: Vec<RootCluster> = cluster(&points, &radii, self.cluster_tol)
            .into_iter()
            .map(|(mut c, spread)| {
                if c.multiplicity > 1 && c.center.norm() > 0.0 {
                    c.center = polish_multiple(&p, c.center, c.multiplicity, spread + self.cluster_tol);
                }
                c
            })
            .collect();
        let mut set = RootSet::from_clusters(clusters, self.cluster_tol);
        set.residual = residual;
        Ok(set)
    }

    fn inclusion_radius(&self, p: &Polynomial, z: Complex64) -> f64 {
        let n = p.degree() as f64;
        let (v, dv) = p.eval_with_derivative(z);
        let eval_err = 2.0 * n * f64::EPSILON * p.abs_eval(z);
        let noise = if self.coeff_noise > 0.0 {
            let r = z.norm();
            let powsum: f64 = (0..=p.degree()).map(|k| r.powi(k as i32)).sum();
            self.coeff_noise * p.max_coeff_norm() * powsum
        } else {
            0.0
        };
        let d = dv.norm();
        if d == 0.0 {
            return self.cluster_tol;
        }
        n * (v.norm() + eval_err + noise) / d
    }
}

/// Refines the centre of a cluster of `m` roots with Newton's method on
/// `p^(m-1)`, which has a simple root there. The iterates of a multiple root
/// stall at distance ~eps^(1/m), so their centroid alone is not accurate.
/// The refined point is kept only if it stays within `reach` of the centroid.
fn polish_multiple(p: &Polynomial, center: Complex64, m: usize, reach: f64) -> Complex64 {
    let q = p.nth_derivative(m - 1);
    let mut z = center;
    for _ in 0..20 {
        let (v, dv) = q.eval_with_derivative(z);
        if dv.norm() == 0.0 {
            break;
        }
        let step = v / dv;
        z -= step;
        if step.norm() <= 4.0 * f64::EPSILON * (1.0 + z.norm()) {
            break;
        }
    }
    if z.is_finite() && (z - center).norm() <= reach {
        z
    } else {
        center
    }
}

/// Single-linkage clustering. Returns each centroid with the cluster spread
/// (largest member distance to the centroid plus its inclusion radius).
fn cluster(points: &[Complex64], radii: &[f64], tol: f64) -> Vec<(RootCluster, f64)> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (points[i] - points[j]).norm() <= tol + radii[i] + radii[j] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    let mut out = Vec::new();
    for r in 0..n {
        let members: Vec<usize> = (0..n).filter(|&i| roots[i] == r).collect();
        if members.is_empty() {
            continue;
        }
        let center = members.iter().map(|&i| points[i]).sum::<Complex64>() / members.len() as f64;
        let spread = members
            .iter()
            .map(|&i| (points[i] - center).norm() + radii[i])
            .fold(0.0, f64::max);
        out.push((
            RootCluster {
                center,
                multiplicity: members.len(),
            },
            spread,
        ));
    }
    out
}

/// Runs the iteration on a monic polynomial with nonzero constant term.
/// Returns the iterates and the number of sweeps used.
fn aberth(p: &Polynomial, max_iter: usize) -> (Vec<Complex64>, usize) {
    let n = p.degree();
    let c = p.coeffs();
    if n == 1 {
        return (vec![-c[0] / c[1]], 0);
    }
    let center = -c[n - 1] / (n as f64);
    let shifted = p.shift(-center);
    let sc = shifted.coeffs();
    let radius = 1.0
        + (1..=n)
            .map(|k| sc[n - k].norm().powf(1.0 / k as f64))
            .fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            center + Complex64::from_polar(radius, angle)
        })
        .collect();
    let mut done = vec![false; n];
    let mut iters = 0;
    while iters < max_iter && done.iter().any(|d| !d) {
        iters += 1;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (v, dv) = p.eval_with_derivative(z[i]);
            let bound = 2.0 * n as f64 * f64::EPSILON * p.abs_eval(z[i]);
            if v.norm() <= bound {
                done[i] = true;
                continue;
            }
            let ratio = if dv.norm() == 0.0 {
                // step off a critical point of p
                Complex64::new(1e-8 * (1.0 + z[i].norm()), 0.0)
            } else {
                v / dv
            };
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                continue;
            }
            z[i] -= step;
            if step.norm() <= f64::EPSILON * z[i].norm() {
                done[i] = true;
            }
        }
    }
    (z, iters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cube_root_of_minus_quarter() {
        let p = Polynomial::from_real(&[1.0, 0.0, 0.0, 4.0]);
        let roots = p.find_roots().unwrap();
        assert_eq!(roots.len(), 3);
        for z in roots.points() {
            assert!((z.norm() - 0.25f64.cbrt()).abs() < 1e-12);
            assert!((z.norm() - 0.6299605249).abs() < 1e-10);
        }
    }

    #[test]
    fn difference_of_squares_roots() {
        let p = Polynomial::from_real(&[-1.0, 0.0, 1.0]);
        let pts = p.find_roots().unwrap().points();
        assert!((pts[0] - c(-1.0, 0.0)).norm() < 1e-14);
        assert!((pts[1] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn zero_root_of_full_multiplicity() {
        let roots = Polynomial::monomial(6).find_roots().unwrap();
        assert_eq!(roots.clusters().len(), 1);
        assert_eq!(roots.clusters()[0].multiplicity, 6);
        assert_eq!(roots.clusters()[0].center, c(0.0, 0.0));
    }

    #[test]
    fn double_critical_point_is_one_cluster() {
        // 3z^2 + 2 sqrt(3) z + 1 = 3 (z + 1/sqrt 3)^2
        let p = Polynomial::from_real(&[1.0, 2.0 * 3f64.sqrt(), 3.0]);
        let roots = p.find_roots().unwrap();
        assert_eq!(roots.clusters().len(), 1);
        assert_eq!(roots.clusters()[0].multiplicity, 2);
        assert!((roots.clusters()[0].center + 1.0 / 3f64.sqrt()).norm() < 1e-12, "{:?}", roots);
    }

    #[test]
    fn high_multiplicity_cluster() {
        for n in 2..=8 {
            let p = Polynomial::from_roots(&vec![c(1.0, 0.0); n]).unwrap();
            let roots = p.find_roots().unwrap();
            assert_eq!(roots.clusters().len(), 1, "n = {n}");
            assert!((roots.clusters()[0].center - 1.0).norm() < 1e-10, "{n} {:?}", roots);
        }
    }

    #[test]
    fn noisy_coefficients_merge_with_noise_model() {
        // z^6 plus coefficient noise at the 1e-16 level
        let mut coeffs = vec![c(1e-16, -2e-16), c(-3e-16, 1e-16), c(2e-16, 0.0)];
        coeffs.extend([c(0.0, 1e-16), c(-1e-16, 0.0), c(1e-16, 1e-16), c(1.0, 0.0)]);
        let p = Polynomial::new(coeffs);
        let loose = RootFinder::default().solve(&p).unwrap();
        assert!(loose.clusters().len() > 1);
        let merged = RootFinder::default().with_coeff_noise(1e-13).solve(&p).unwrap();
        assert_eq!(merged.clusters().len(), 1);
        assert!(merged.clusters()[0].center.norm() < 1e-14);
    }

    #[test]
    fn seeded_degree_ten_round_trip() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(10);
        let input: Vec<Complex64> = (0..10)
            .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let p = Polynomial::from_roots(&input).unwrap();
        let out = p.find_roots().unwrap().points();
        let (dist, _) = crate::matching::bottleneck_assignment(&input, &out);
        assert!(dist < 1e-8, "{dist}");
        let residual = out.iter().map(|&z| p.eval(z).norm()).fold(0.0, f64::max);
        assert!(residual <= 1e-10 * (1.0 + p.max_coeff_norm()));
    }

    #[test]
    fn degree_zero_is_an_error() {
        assert!(matches!(Polynomial::from_real(&[2.0]).find_roots(), Err(Error::DegreeZero)));
    }

    fn separated_roots(max_len: usize) -> impl Strategy<Value = Vec<Complex64>> {
        prop::collection::vec((0.0f64..2.0, 0.0f64..std::f64::consts::TAU), 1..=max_len)
            .prop_map(|v| v.into_iter().map(|(r, t)| Complex64::from_polar(r, t)).collect())
            .prop_filter("pairwise separation >= 1e-3", |v: &Vec<Complex64>| {
                v.iter().enumerate().all(|(i, a)| v[i + 1..].iter().all(|b| (a - b).norm() >= 1e-3))
            })
    }

    proptest! {
        #[test]
        fn round_trip_matches_input(roots in separated_roots(16)) {
            let p = Polynomial::from_roots(&roots).unwrap();
            let found = p.find_roots().unwrap().points();
            let (dist, _) = crate::matching::bottleneck_assignment(&roots, &found);
            prop_assert!(dist <= 1e-8, "bottleneck {}", dist);
        }

        #[test]
        fn derivative_roots_lie_in_hull(roots in separated_roots(12)) {
            prop_assume!(roots.len() >= 2);
            let p = Polynomial::from_roots(&roots).unwrap();
            let dp = p.derivative();
            prop_assert_eq!(dp.degree(), p.degree() - 1);
            for w in dp.find_roots().unwrap().points() {
                prop_assert!(crate::geometry::hull_distance(&roots, w) <= 1e-9);
            }
        }
    }
}
