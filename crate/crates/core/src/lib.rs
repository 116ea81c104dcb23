//! Numerical toolkit for zeros and critical points of complex polynomials.

pub mod error;
pub mod geometry;
pub mod corpus;
pub mod lp;
pub mod majorization;
pub mod matching;
pub mod maximal_zero;
pub mod metrics;
pub mod normal_ops;
pub mod poly;
pub mod quadrature;
pub mod roots;
pub mod suite;
pub mod variation_first;
pub mod variation_second;

pub use error::{Error, Result};
pub use poly::{PolyJson, Polynomial, Repr};
pub use roots::{RootCluster, RootFinder, RootSet};
