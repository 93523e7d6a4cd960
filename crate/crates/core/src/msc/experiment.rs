//! Simulation studies: estimator accuracy under the coalescent, the
//! safety-radius demonstration on noisy copies of the species tree, and the
//! scaled Fermat-Weber shift under small perturbations.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fw::hausdorff_shift;
use crate::phylo::{cophenetic_vector, rf_distance, write_topology, PhyloTree};
use crate::rng::{derive_seed, stream};
use crate::trop::{d_tr, TropicalPoint};

use super::coalescent::simulate_gene_tree;
use super::estimators::{estimate, Method};
use super::noise::{perturb, NoiseSpec};
use super::species::{min_internal_branch, SpeciesModel};

const TAG_POOL: u64 = 1;
const TAG_NOISE: u64 = 2;
const TAG_TRIAL: u64 = 3;
const TAG_HAUSDORFF: u64 = 4;

/// Where the pool of distance vectors comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum PoolSource {
    /// Gene trees simulated under the coalescent, one pool per `N_e`.
    Coalescent { ne_grid: Vec<f64> },
    /// Copies of the species tree's own distance vector. Records carry
    /// `N_e = 0`.
    SpeciesCopies,
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub species_tree: PhyloTree,
    pub source: PoolSource,
    pub sigma_grid: Vec<f64>,
    pub n_grid: Vec<usize>,
    pub trials: usize,
    pub pool_size: usize,
    pub master_seed: u64,
    pub methods: Vec<Method>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentRecord {
    pub method: Method,
    pub ne: f64,
    pub sigma: f64,
    pub n: usize,
    pub trial: usize,
    pub rf: usize,
    pub tr_dist: f64,
    pub topology_match: bool,
    pub seed: u64,
    /// Canonical topology of the estimate.
    pub topology: String,
}

pub const RECORD_HEADER: &str = "method,Ne,sigma,n,trial,rf,tr_dist,topology_match,seed";

impl ExperimentRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.method,
            self.ne,
            self.sigma,
            self.n,
            self.trial,
            self.rf,
            self.tr_dist,
            self.topology_match,
            self.seed
        )
    }
}

pub fn records_to_csv(records: &[ExperimentRecord]) -> String {
    let mut out = String::from(RECORD_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

impl ExperimentConfig {
    fn validate(&self) -> Result<f64> {
        if self.sigma_grid.is_empty() || self.n_grid.is_empty() || self.methods.is_empty() {
            return Err(Error::InvalidArgument(
                "sigma, n and method lists must be nonempty".into(),
            ));
        }
        if let PoolSource::Coalescent { ne_grid } = &self.source {
            if ne_grid.is_empty() {
                return Err(Error::InvalidArgument("N_e grid must be nonempty".into()));
            }
        }
        if self.trials == 0 {
            return Err(Error::InvalidArgument("need at least one trial".into()));
        }
        if let Some(&n) = self.n_grid.iter().find(|&&n| n == 0 || n > self.pool_size) {
            return Err(Error::InvalidArgument(format!(
                "sample size {n} must lie in 1..={} (pool size)",
                self.pool_size
            )));
        }
        if let Some(s) = self
            .sigma_grid
            .iter()
            .find(|s| !(s.is_finite() && **s >= 0.0))
        {
            return Err(Error::InvalidArgument(format!(
                "sigma must be nonnegative, got {s}"
            )));
        }
        min_internal_branch(&self.species_tree)
            .ok_or_else(|| Error::InvalidArgument("species tree has no internal branch".into()))
    }
}

struct Pool {
    ne: f64,
    vectors: Vec<Vec<f64>>,
}

fn build_pools(cfg: &ExperimentConfig) -> Result<Vec<Pool>> {
    let truth = cophenetic_vector(&cfg.species_tree).into_entries();
    match &cfg.source {
        PoolSource::SpeciesCopies => Ok(vec![Pool {
            ne: 0.0,
            vectors: vec![truth; cfg.pool_size],
        }]),
        PoolSource::Coalescent { ne_grid } => ne_grid
            .par_iter()
            .map(|&ne| {
                let model = SpeciesModel::new(cfg.species_tree.clone(), ne)?;
                let mut rng = stream(derive_seed(cfg.master_seed, &[TAG_POOL, ne.to_bits()]));
                let vectors = (0..cfg.pool_size)
                    .map(|_| {
                        cophenetic_vector(&simulate_gene_tree(&model, &mut rng)).into_entries()
                    })
                    .collect();
                Ok(Pool { ne, vectors })
            })
            .collect(),
    }
}

/// Runs every method on `trials` samples per `(N_e, σ, n)` cell. Each pool
/// is perturbed once per `σ`; each trial samples `n` vectors without
/// replacement with its own derived seed. Output is sorted by
/// `(N_e, σ, n, trial, method)` and independent of the thread count.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    let w_min_ref = cfg.validate()?;
    let labels = cfg.species_tree.leaf_labels();
    let truth = cophenetic_vector(&cfg.species_tree).into_entries();
    let mut records = Vec::new();
    for pool in build_pools(cfg)? {
        for &sigma in &cfg.sigma_grid {
            let noise = NoiseSpec::new(sigma, w_min_ref)?;
            let mut rng = stream(derive_seed(
                cfg.master_seed,
                &[TAG_NOISE, pool.ne.to_bits(), sigma.to_bits()],
            ));
            let noisy: Vec<Vec<f64>> = pool
                .vectors
                .iter()
                .map(|v| perturb(v, &noise, &mut rng))
                .collect();
            let jobs: Vec<(usize, usize)> = cfg
                .n_grid
                .iter()
                .flat_map(|&n| (0..cfg.trials).map(move |t| (n, t)))
                .collect();
            let cell: Vec<Vec<ExperimentRecord>> = jobs
                .par_iter()
                .map(|&(n, trial)| {
                    let seed = derive_seed(
                        cfg.master_seed,
                        &[
                            TAG_TRIAL,
                            pool.ne.to_bits(),
                            sigma.to_bits(),
                            n as u64,
                            trial as u64,
                        ],
                    );
                    let mut rng = stream(seed);
                    let picks = rand::seq::index::sample(&mut rng, noisy.len(), n);
                    let sample: Vec<Vec<f64>> = picks.iter().map(|i| noisy[i].clone()).collect();
                    cfg.methods
                        .iter()
                        .map(|&method| {
                            let est = estimate(method, &sample, &labels)?;
                            let rf = rf_distance(&cfg.species_tree, &est)?;
                            let tr_dist = d_tr(&truth, cophenetic_vector(&est).entries())?;
                            Ok(ExperimentRecord {
                                method,
                                ne: pool.ne,
                                sigma,
                                n,
                                trial,
                                rf,
                                tr_dist,
                                topology_match: rf == 0,
                                seed,
                                topology: write_topology(&est),
                            })
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            records.extend(cell.into_iter().flatten());
        }
    }
    records.sort_by(|a, b| {
        a.ne.total_cmp(&b.ne)
            .then(a.sigma.total_cmp(&b.sigma))
            .then(a.n.cmp(&b.n))
            .then(a.trial.cmp(&b.trial))
            .then(a.method.cmp(&b.method))
    });
    Ok(records)
}

/// Safety-radius demonstration: the pool is `pool_size` copies of the
/// species tree's distance vector, perturbed independently.
pub fn safety_radius_demo(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    let demo = ExperimentConfig {
        source: PoolSource::SpeciesCopies,
        ..cfg.clone()
    };
    run_experiment(&demo)
}

/// Aggregate over the trials of one `(method, N_e, σ, n)` cell.
#[derive(Clone, Debug, PartialEq)]
pub struct CellSummary {
    pub method: Method,
    pub ne: f64,
    pub sigma: f64,
    pub n: usize,
    pub trials: usize,
    pub correct: usize,
    pub distinct_topologies: usize,
    pub mean_rf: f64,
    pub mean_tr: f64,
}

impl CellSummary {
    pub fn correct_fraction(&self) -> f64 {
        self.correct as f64 / self.trials as f64
    }
}

pub const SUMMARY_HEADER: &str =
    "method,Ne,sigma,n,trials,correct,distinct_topologies,mean_rf,mean_tr";

impl CellSummary {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.method,
            self.ne,
            self.sigma,
            self.n,
            self.trials,
            self.correct,
            self.distinct_topologies,
            self.mean_rf,
            self.mean_tr
        )
    }
}

pub fn summarize(records: &[ExperimentRecord]) -> Vec<CellSummary> {
    type Key = (Method, u64, u64, usize);
    let mut cells: BTreeMap<Key, Vec<&ExperimentRecord>> = BTreeMap::new();
    for r in records {
        cells
            .entry((r.method, r.ne.to_bits(), r.sigma.to_bits(), r.n))
            .or_default()
            .push(r);
    }
    let mut out: Vec<CellSummary> = cells
        .into_values()
        .map(|rs| {
            let k = rs.len() as f64;
            let topologies: BTreeSet<&str> = rs.iter().map(|r| r.topology.as_str()).collect();
            CellSummary {
                method: rs[0].method,
                ne: rs[0].ne,
                sigma: rs[0].sigma,
                n: rs[0].n,
                trials: rs.len(),
                correct: rs.iter().filter(|r| r.topology_match).count(),
                distinct_topologies: topologies.len(),
                mean_rf: rs.iter().map(|r| r.rf as f64).sum::<f64>() / k,
                mean_tr: rs.iter().map(|r| r.tr_dist).sum::<f64>() / k,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        a.ne.total_cmp(&b.ne)
            .then(a.sigma.total_cmp(&b.sigma))
            .then(a.n.cmp(&b.n))
            .then(a.method.cmp(&b.method))
    });
    out
}

#[derive(Clone, Debug)]
pub struct HausdorffConfig {
    pub n_values: Vec<usize>,
    pub q_values: Vec<usize>,
    pub replicates: usize,
    /// Perturbations are uniform on `[0, scale]^q`.
    pub perturbation_scale: f64,
    pub master_seed: u64,
}

impl Default for HausdorffConfig {
    fn default() -> Self {
        HausdorffConfig {
            n_values: (2..=7).collect(),
            q_values: (2..=6).collect(),
            replicates: 2000,
            perturbation_scale: 0.01,
            master_seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HausdorffRecord {
    pub n: usize,
    pub q: usize,
    pub replicate: usize,
    pub scaled_shift: f64,
}

pub const HAUSDORFF_HEADER: &str = "n,q,replicate,scaled_shift";

pub fn hausdorff_to_csv(records: &[HausdorffRecord]) -> String {
    let mut out = String::from(HAUSDORFF_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.n, r.q, r.replicate, r.scaled_shift
        ));
    }
    out
}

/// Scaled Fermat-Weber shift for uniform samples on `[0,1]^q` and uniform
/// perturbations on `[0, scale]^q`, per `(n, q, replicate)`.
pub fn hausdorff_experiment(cfg: &HausdorffConfig) -> Result<Vec<HausdorffRecord>> {
    if let Some(&q) = cfg.q_values.iter().find(|&&q| q < 2) {
        return Err(Error::InvalidArgument(format!(
            "dimension must be at least 2, got {q}"
        )));
    }
    if cfg.n_values.contains(&0) {
        return Err(Error::InvalidArgument(
            "sample size must be positive".into(),
        ));
    }
    if !(cfg.perturbation_scale > 0.0 && cfg.perturbation_scale.is_finite()) {
        return Err(Error::InvalidArgument(
            "perturbation scale must be positive".into(),
        ));
    }
    let jobs: Vec<(usize, usize, usize)> = cfg
        .n_values
        .iter()
        .flat_map(|&n| {
            cfg.q_values
                .iter()
                .flat_map(move |&q| (0..cfg.replicates).map(move |r| (n, q, r)))
        })
        .collect();
    let mut out: Vec<HausdorffRecord> = jobs
        .par_iter()
        .map(|&(n, q, replicate)| {
            let mut rng = stream(derive_seed(
                cfg.master_seed,
                &[TAG_HAUSDORFF, n as u64, q as u64, replicate as u64],
            ));
            let sample = (0..n)
                .map(|_| TropicalPoint::new((0..q).map(|_| rng.random::<f64>()).collect()))
                .collect::<Result<Vec<_>>>()?;
            // redraw the (measure-zero) all-constant perturbation
            let eps: Vec<Vec<f64>> = loop {
                let e: Vec<Vec<f64>> = (0..n)
                    .map(|_| {
                        (0..q)
                            .map(|_| cfg.perturbation_scale * rng.random::<f64>())
                            .collect()
                    })
                    .collect();
                if e.iter().any(|v| crate::trop::trop_norm(v) > 0.0) {
                    break e;
                }
            };
            let scaled_shift = hausdorff_shift(&sample, &eps)?;
            Ok(HausdorffRecord {
                n,
                q,
                replicate,
                scaled_shift,
            })
        })
        .collect::<Result<_>>()?;
    out.sort_by_key(|r| (r.n, r.q, r.replicate));
    Ok(out)
}
