use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Monte-Carlo moments of the tropical norm of a standard normal vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormMoments {
    pub q: usize,
    pub samples: usize,
    pub mean: f64,
    pub variance: f64,
    /// Standard error of `mean`.
    pub mean_se: f64,
}

/// Lower bound on the number of draws accepted by [`estimate_norm_moments`].
pub const MIN_MOMENT_SAMPLES: usize = 1000;

/// Estimates `E‖Z‖` and `Var‖Z‖` for `Z ~ N(0, I_q)` under the tropical
/// norm `max Z − min Z`.
pub fn estimate_norm_moments<R: Rng + ?Sized>(
    q: usize,
    samples: usize,
    rng: &mut R,
) -> Result<NormMoments> {
    if q < 2 {
        return Err(Error::InvalidArgument(format!(
            "dimension must be at least 2, got {q}"
        )));
    }
    if samples < MIN_MOMENT_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_MOMENT_SAMPLES} samples, got {samples}"
        )));
    }
    // Welford accumulation
    let (mut mean, mut m2) = (0.0f64, 0.0f64);
    for k in 0..samples {
        let (mut hi, mut lo) = (f64::NEG_INFINITY, f64::INFINITY);
        for _ in 0..q {
            let z: f64 = rng.sample(StandardNormal);
            hi = hi.max(z);
            lo = lo.min(z);
        }
        let x = hi - lo;
        let delta = x - mean;
        mean += delta / (k + 1) as f64;
        m2 += delta * (x - mean);
    }
    let variance = m2 / (samples - 1) as f64;
    Ok(NormMoments {
        q,
        samples,
        mean,
        variance,
        mean_se: (variance / samples as f64).sqrt(),
    })
}

/// Noise level below which the projected Fermat-Weber estimate of `n`
/// noisy copies stays in the correct cone with probability at least
/// `1 − eta`: `w / (2(nE + sqrt(nV/eta)))`.
pub fn stochastic_safety_sigma(
    eta: f64,
    n: usize,
    q: usize,
    w_min_tilde: f64,
    moments: &NormMoments,
) -> Result<f64> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::Domain(format!("eta must lie in (0, 1), got {eta}")));
    }
    if n == 0 {
        return Err(Error::Domain("sample size must be positive".into()));
    }
    if !(w_min_tilde.is_finite() && w_min_tilde > 0.0) {
        return Err(Error::Domain(format!(
            "w_min must be positive, got {w_min_tilde}"
        )));
    }
    if moments.q != q {
        return Err(Error::InvalidArgument(format!(
            "moments were estimated for q = {}, not {q}",
            moments.q
        )));
    }
    if !(moments.mean > 0.0 && moments.variance > 0.0) {
        return Err(Error::Domain("moments must be positive".into()));
    }
    let nf = n as f64;
    Ok(w_min_tilde / (2.0 * (nf * moments.mean + (nf * moments.variance / eta).sqrt())))
}
