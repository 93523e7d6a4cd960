use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};

/// Gaussian noise with standard deviation `sigma · w_min_ref`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseSpec {
    pub sigma: f64,
    pub w_min_ref: f64,
}

impl NoiseSpec {
    pub fn new(sigma: f64, w_min_ref: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "sigma must be nonnegative, got {sigma}"
            )));
        }
        if !(w_min_ref.is_finite() && w_min_ref > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "reference branch length must be positive, got {w_min_ref}"
            )));
        }
        Ok(NoiseSpec { sigma, w_min_ref })
    }

    pub fn std_dev(&self) -> f64 {
        self.sigma * self.w_min_ref
    }
}

/// Adds independent `N(0, std²)` noise to every entry. Entries may become
/// negative; no clamping is done.
pub fn perturb<R: Rng + ?Sized>(v: &[f64], spec: &NoiseSpec, rng: &mut R) -> Vec<f64> {
    if spec.sigma == 0.0 {
        return v.to_vec();
    }
    let normal = Normal::new(0.0, spec.std_dev()).expect("finite positive std");
    v.iter().map(|x| x + normal.sample(rng)).collect()
}
