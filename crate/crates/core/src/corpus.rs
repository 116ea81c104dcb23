//! Seeded generators for polynomial corpora.

use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::maximal_zero::{construct, ZeroMaximalSpec};
use crate::poly::{PolyJson, Polynomial};
use crate::variation_second::family_deg4;

/// A uniform point of the closed unit disk, by rejection from the square.
pub fn disk_point(rng: &mut impl Rng) -> Complex64 {
    loop {
        let z = Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
        if z.norm_sqr() <= 1.0 {
            return z;
        }
    }
}

pub fn disk_points(rng: &mut impl Rng, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| disk_point(rng)).collect()
}

/// Root sets for `count` members of the unit-disk class, deterministic in `seed`.
pub fn random_sn(n: usize, count: usize, seed: u64) -> Vec<Vec<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| disk_points(&mut rng, n)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusKind {
    RandomSn,
    ZeroMaximal,
    Deg4Family,
    RootsGrid,
}

impl FromStr for CorpusKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random_Sn" | "random_sn" => Ok(Self::RandomSn),
            "zero_maximal" => Ok(Self::ZeroMaximal),
            "deg4_family" => Ok(Self::Deg4Family),
            "roots_grid" => Ok(Self::RootsGrid),
            other => Err(Error::Precondition(format!("unknown corpus kind '{other}'"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusParams {
    pub n: usize,
    pub count: usize,
    /// Parameter grid: `θ` for `zero_maximal`, `a` for `deg4_family`,
    /// `ρ` for `roots_grid`. Ignored by `random_Sn`.
    pub grid: Vec<f64>,
    pub lambda: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusItem {
    pub name: String,
    pub doc: PolyJson,
}

/// Deterministic corpus; item names are zero-padded so lexical order is index order.
pub fn generate(kind: CorpusKind, params: &CorpusParams, seed: u64) -> Result<Vec<CorpusItem>> {
    let tag = match kind {
        CorpusKind::RandomSn => "random_Sn",
        CorpusKind::ZeroMaximal => "zero_maximal",
        CorpusKind::Deg4Family => "deg4_family",
        CorpusKind::RootsGrid => "roots_grid",
    };
    let docs: Vec<PolyJson> = match kind {
        CorpusKind::RandomSn => {
            if params.n == 0 {
                return Err(Error::DegreeZero);
            }
            random_sn(params.n, params.count, seed)
                .iter()
                .map(|roots| PolyJson::from_roots(roots))
                .collect::<Result<_>>()?
        }
        CorpusKind::ZeroMaximal => params
            .grid
            .iter()
            .map(|&theta| {
                let p = construct(&ZeroMaximalSpec {
                    n: params.n,
                    theta,
                    lambda: params.lambda,
                })?;
                PolyJson::from_poly(&p)
            })
            .collect::<Result<_>>()?,
        CorpusKind::Deg4Family => params
            .grid
            .iter()
            .map(|&a| PolyJson::from_poly(&family_deg4(a)?))
            .collect::<Result<_>>()?,
        CorpusKind::RootsGrid => {
            if params.n == 0 {
                return Err(Error::DegreeZero);
            }
            params
                .grid
                .iter()
                .map(|&rho| {
                    if !(rho.is_finite() && rho >= 0.0) {
                        return Err(Error::Precondition(format!("ρ = {rho} must be finite and nonnegative")));
                    }
                    PolyJson::from_roots(&roots_of_unity(params.n, rho))
                })
                .collect::<Result<_>>()?
        }
    };
    let width = docs.len().max(1).to_string().len().max(3);
    Ok(docs
        .into_iter()
        .enumerate()
        .map(|(i, doc)| CorpusItem {
            name: format!("{tag}_{i:0width$}.json"),
            doc,
        })
        .collect())
}

/// `ρ e^{2πik/n}`, the zeros of `zⁿ - ρⁿ`.
pub fn roots_of_unity(n: usize, rho: f64) -> Vec<Complex64> {
    (0..n)
        .map(|k| Complex64::from_polar(rho, std::f64::consts::TAU * k as f64 / n as f64))
        .collect()
}

/// `zⁿ + c·z`.
pub fn zn_plus_cz(n: usize, c: Complex64) -> Polynomial {
    let mut co = vec![Complex64::new(0.0, 0.0); n + 1];
    co[n] = Complex64::new(1.0, 0.0);
    co[1] += c;
    Polynomial::new(co)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_sn_is_deterministic_and_in_disk() {
        let params = CorpusParams {
            n: 5,
            count: 100,
            grid: vec![],
            lambda: 0.0,
        };
        let a = generate(CorpusKind::RandomSn, &params, 7).unwrap();
        let b = generate(CorpusKind::RandomSn, &params, 7).unwrap();
        assert_eq!(a.len(), 100);
        let text = |v: &[CorpusItem]| serde_json::to_string(&v.iter().map(|i| &i.doc).collect::<Vec<_>>()).unwrap();
        assert_eq!(text(&a), text(&b));
        assert_ne!(text(&a), text(&generate(CorpusKind::RandomSn, &params, 8).unwrap()));
        assert_eq!(a[0].name, "random_Sn_000.json");
        for item in &a {
            assert!(item.doc.data.iter().all(|&[x, y]| x * x + y * y <= 1.0));
        }
    }

    #[test]
    fn family_kinds() {
        let params = CorpusParams {
            n: 7,
            count: 0,
            grid: vec![0.0, 1.0, 2.0],
            lambda: 0.3,
        };
        let zm = generate(CorpusKind::ZeroMaximal, &params, 0).unwrap();
        assert_eq!(zm.len(), 3);
        let params = CorpusParams {
            grid: (1..=8).map(|k| k as f64 * 1e-3).collect(),
            ..params
        };
        assert_eq!(generate(CorpusKind::Deg4Family, &params, 0).unwrap().len(), 8);
        let grid = generate(CorpusKind::RootsGrid, &params, 0).unwrap();
        let p = grid[1].doc.to_poly().unwrap();
        assert!((p.coeffs()[0] + Complex64::new(2e-3f64.powi(7), 0.0)).norm() < 1e-30);
        assert!("nope".parse::<CorpusKind>().is_err());
        assert_eq!("random_Sn".parse::<CorpusKind>().unwrap(), CorpusKind::RandomSn);
    }
}
