//! Species-tree estimators from a sample of distance vectors.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fw::fw_point;
use crate::phylo::{single_linkage, tree_from_ultrametric, DissimilarityVector, PhyloTree};
use crate::projection::project_ultrametric_fast;
use crate::trop::{Metric, TropicalPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    SymFw,
    MinFw,
    MaxFw,
    Glass,
    Steac,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::SymFw,
        Method::MinFw,
        Method::MaxFw,
        Method::Glass,
        Method::Steac,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::SymFw => "sym_fw",
            Method::MinFw => "min_fw",
            Method::MaxFw => "max_fw",
            Method::Glass => "glass",
            Method::Steac => "steac",
        }
    }

    pub fn fw_metric(self) -> Option<Metric> {
        match self {
            Method::SymFw => Some(Metric::Sym),
            Method::MinFw => Some(Metric::MinPlus),
            Method::MaxFw => Some(Metric::MaxPlus),
            Method::Glass | Method::Steac => None,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown method {s:?}")))
    }
}

fn check_vectors(vectors: &[Vec<f64>], labels: &[String]) -> Result<usize> {
    let first = vectors.first().ok_or(Error::EmptySample)?;
    let p = labels.len();
    crate::error::check_dim(p * p.saturating_sub(1) / 2, first.len())?;
    for v in vectors {
        crate::error::check_dim(first.len(), v.len())?;
    }
    Ok(p)
}

fn shift_nonnegative(u: Vec<f64>) -> Vec<f64> {
    let lo = u.iter().cloned().fold(f64::INFINITY, f64::min);
    let shift = if lo < 0.0 { -lo } else { 0.0 };
    u.into_iter().map(|v| (v + shift).max(0.0)).collect()
}

/// Shifts the ultrametric `u` by a constant so its smallest entry is at
/// least zero, then builds the equidistant tree. The shift only changes
/// pendant branches.
pub fn tree_from_shifted(u: Vec<f64>, labels: &[String]) -> Result<PhyloTree> {
    tree_from_ultrametric(&DissimilarityVector::new(
        labels.to_vec(),
        shift_nonnegative(u),
    )?)
}

fn linkage_tree(u: Vec<f64>, labels: &[String]) -> Result<PhyloTree> {
    let d = DissimilarityVector::new(labels.to_vec(), shift_nonnegative(u))?;
    tree_from_ultrametric(&single_linkage(&d))
}

/// Coordinatewise minimum, then single linkage.
pub fn glass_estimate(vectors: &[Vec<f64>], labels: &[String]) -> Result<PhyloTree> {
    check_vectors(vectors, labels)?;
    let mins = (0..vectors[0].len())
        .map(|k| vectors.iter().map(|v| v[k]).fold(f64::INFINITY, f64::min))
        .collect();
    linkage_tree(mins, labels)
}

/// Coordinatewise mean, then single linkage.
pub fn steac_estimate(vectors: &[Vec<f64>], labels: &[String]) -> Result<PhyloTree> {
    check_vectors(vectors, labels)?;
    let n = vectors.len() as f64;
    let means = (0..vectors[0].len())
        .map(|k| vectors.iter().map(|v| v[k]).sum::<f64>() / n)
        .collect();
    linkage_tree(means, labels)
}

/// Fermat-Weber point under `metric`, projected onto tree space. The point
/// is only defined up to adding a constant; the representative whose
/// entries have the same mean as the sample's is used.
pub fn fw_estimate(vectors: &[Vec<f64>], labels: &[String], metric: Metric) -> Result<PhyloTree> {
    let p = check_vectors(vectors, labels)?;
    let sample = vectors
        .iter()
        .map(|v| TropicalPoint::new(v.clone()))
        .collect::<Result<Vec<_>>>()?;
    let centered = fw_point(&sample, metric)?.centered_on(&sample);
    let u = project_ultrametric_fast(p, centered.coords())?;
    tree_from_shifted(u.into_coords(), labels)
}

pub fn estimate(method: Method, vectors: &[Vec<f64>], labels: &[String]) -> Result<PhyloTree> {
    match method.fw_metric() {
        Some(metric) => fw_estimate(vectors, labels, metric),
        None if method == Method::Glass => glass_estimate(vectors, labels),
        None => steac_estimate(vectors, labels),
    }
}
