//! Multispecies-coalescent simulation and the estimator experiments built
//! on it.

pub mod coalescent;
pub mod estimators;
pub mod experiment;
pub mod moments;
pub mod noise;
pub mod species;

pub use coalescent::simulate_gene_tree;
pub use estimators::{
    estimate, fw_estimate, glass_estimate, steac_estimate, tree_from_shifted, Method,
};
pub use experiment::{
    hausdorff_experiment, hausdorff_to_csv, records_to_csv, run_experiment, safety_radius_demo,
    summarize, CellSummary, ExperimentConfig, ExperimentRecord, HausdorffConfig, HausdorffRecord,
    PoolSource,
};
pub use moments::{estimate_norm_moments, stochastic_safety_sigma, NormMoments};
pub use noise::{perturb, NoiseSpec};
pub use species::{
    min_internal_branch, species_tree_t1, species_tree_t2, SpeciesModel, T1_NEWICK, T2_NEWICK,
};
