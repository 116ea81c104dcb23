//! Dense complex polynomials in ascending coefficient order.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{RootFinder, RootSet};

/// Coefficients below this magnitude are dropped from the top of the
/// coefficient vector.
pub const LEADING_EPS: f64 = 1e-14;

/// A complex polynomial `c_0 + c_1 z + ... + c_n z^n`.
///
/// The leading coefficient is nonzero unless the polynomial is a constant.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() <= LEADING_EPS) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0)])
    }

    /// `z^n`.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
        c[n] = Complex64::new(1.0, 0.0);
        Self { coeffs: c }
    }

    /// The monic polynomial `prod (z - z_i)`, expanded by repeated
    /// multiplication with linear factors.
    pub fn from_roots(points: &[Complex64]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::DegreeZero);
        }
        let mut c = Vec::with_capacity(points.len() + 1);
        c.push(Complex64::new(1.0, 0.0));
        for &z in points {
            c.push(Complex64::new(0.0, 0.0));
            for k in (1..c.len()).rev() {
                let prev = c[k - 1];
                c[k] = prev - z * c[k];
            }
            c[0] = -z * c[0];
        }
        Ok(Self { coeffs: c })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Complex64::new(0.0, 0.0)
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `(p(z), p'(z))` by a single Horner sweep.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// `sum |c_k| |z|^k`, the scale of rounding errors in `eval(z)`.
    pub fn abs_eval(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn nth_derivative(&self, k: usize) -> Polynomial {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn scale(&self, s: Complex64) -> Polynomial {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn monic(&self) -> Polynomial {
        let lead = self.leading();
        self.scale(lead.inv())
    }

    /// `q(z) = p(s z)`.
    pub fn scale_variable(&self, s: Complex64) -> Polynomial {
        let mut pow = Complex64::new(1.0, 0.0);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            out.push(c * pow);
            pow *= s;
        }
        Self::new(out)
    }

    /// `q(z) = p(z - a)` via repeated synthetic division (Taylor shift).
    pub fn shift(&self, a: Complex64) -> Polynomial {
        // p(z - a) = sum_k p^{(k)}(-a)/k! z^k
        let mut c = self.coeffs.clone();
        let n = c.len();
        let b = -a;
        for i in 0..n {
            for k in (i..n - 1).rev() {
                let next = c[k + 1];
                c[k] += b * next;
            }
        }
        Self::new(c)
    }

    pub fn find_roots(&self) -> Result<RootSet> {
        RootFinder::default().solve(self)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Complex64::new(0.0, 0.0);
        Polynomial::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).copied().unwrap_or(zero)
                        + rhs.coeffs.get(k).copied().unwrap_or(zero)
                })
                .collect(),
        )
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

/// Which list `data` holds in a [`PolyJson`] document.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Repr {
    Roots,
    Coeffs,
}

/// On-disk polynomial: `{"repr": "roots"|"coeffs", "data": [[re, im], ...]}`.
///
/// Coefficients are ascending. Writers fill the complementary field too, so
/// every written file carries both representations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub repr: Repr,
    pub data: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<[f64; 2]>>,
}

fn pack(z: &[Complex64]) -> Vec<[f64; 2]> {
    z.iter().map(|c| [c.re, c.im]).collect()
}

fn unpack(v: &[[f64; 2]]) -> Vec<Complex64> {
    v.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
}

impl PolyJson {
    /// Writer for a polynomial known through its roots (monic).
    pub fn from_roots(roots: &[Complex64]) -> Result<Self> {
        let p = Polynomial::from_roots(roots)?;
        Ok(Self {
            repr: Repr::Roots,
            data: pack(roots),
            roots: None,
            coeffs: Some(pack(p.coeffs())),
        })
    }

    /// Writer for a polynomial known through its coefficients.
    pub fn from_poly(p: &Polynomial) -> Result<Self> {
        let roots = if p.degree() >= 1 {
            p.find_roots()?.points()
        } else {
            Vec::new()
        };
        Ok(Self {
            repr: Repr::Coeffs,
            data: pack(p.coeffs()),
            roots: Some(pack(&roots)),
            coeffs: None,
        })
    }

    pub fn to_poly(&self) -> Result<Polynomial> {
        if self.data.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Json("non-finite entry".into()));
        }
        match self.repr {
            Repr::Roots => Polynomial::from_roots(&unpack(&self.data)),
            Repr::Coeffs => {
                if self.data.is_empty() {
                    return Err(Error::Json("empty coefficient list".into()));
                }
                Ok(Polynomial::new(unpack(&self.data)))
            }
        }
    }

    pub fn parse(text: &str) -> Result<Polynomial> {
        let doc: PolyJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        doc.to_poly()
    }
}
