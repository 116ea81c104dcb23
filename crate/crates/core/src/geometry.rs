//! Planar helpers: convex hulls, hull distance, collinearity.

use num_complex::Complex64;

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Convex hull vertices in counter-clockwise order (Andrew's monotone chain).
/// Collinear inputs collapse to the two extreme points.
pub fn convex_hull(points: &[Complex64]) -> Vec<Complex64> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| crate::roots::lex_cmp(*a, *b));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Complex64> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Complex64>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

fn segment_distance(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}

/// Euclidean distance from `z` to the convex hull of `points` (0 inside).
pub fn hull_distance(points: &[Complex64], z: Complex64) -> f64 {
    let hull = convex_hull(points);
    match hull.len() {
        0 => f64::INFINITY,
        1 => (z - hull[0]).norm(),
        2 => segment_distance(z, hull[0], hull[1]),
        m => {
            let inside = (0..m).all(|i| cross(hull[i], hull[(i + 1) % m], z) >= 0.0);
            if inside {
                0.0
            } else {
                (0..m)
                    .map(|i| segment_distance(z, hull[i], hull[(i + 1) % m]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }
}

/// Largest distance from a point to the total-least-squares line through
/// `points`. Zero for collinear sets and for fewer than three points.
pub fn line_fit_residual(points: &[Complex64]) -> f64 {
    if points.len() < 3 {
        return 0.0;
    }
    let mean = points.iter().sum::<Complex64>() / points.len() as f64;
    // principal direction from the complex second moment
    let m2: Complex64 = points.iter().map(|p| (p - mean) * (p - mean)).sum();
    let dir = if m2.norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::from_polar(1.0, m2.arg() / 2.0)
    };
    points
        .iter()
        .map(|p| ((p - mean) * dir.conj()).im.abs())
        .fold(0.0, f64::max)
}
