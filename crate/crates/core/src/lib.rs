//! Tropical Fermat-Weber points, projections onto Bergman fans, and the
//! phylogenetic tooling used to study them under the multispecies coalescent.

pub mod error;
pub mod fw;
pub mod lp;
pub mod matroid;
pub mod msc;
pub mod phylo;
pub mod projection;
pub mod rng;
pub mod scalar;
pub mod trop;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};
pub use trop::{Metric, TropicalPoint};
