//! Exact computation of the associated variety, wavefront set and Whittaker
//! datum of generic discrete series for small real reductive groups, over
//! the Gaussian rationals.

pub mod appendix;
pub mod catalog;
pub mod cohomology;
pub mod cones;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod matrix;
pub mod oracle;
pub mod output;
pub mod roots;
pub mod scalar;
pub mod triples;

pub use error::{Error, Result};

/// Exact rational scalars.
pub type Q = num_rational::BigRational;
/// Gaussian rationals ℚ(i).
pub type GaussScalar = scalar::Gauss<Q>;
pub type Matrix = matrix::Mat<Q>;
pub type Covector = lie::Covector<Q>;
pub type Realization = lie::Realization<Q>;
pub type CatalogEntry = catalog::CatalogEntry<Q>;
pub type HCParameter = roots::HCParameter<Q>;
pub type SL2Triple = triples::SL2Triple<Q>;
pub type Dictionary = triples::Dictionary<Q>;
