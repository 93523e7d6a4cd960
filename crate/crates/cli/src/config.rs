//! TOML schema for experiment runs.

use std::path::Path;

use serde::Deserialize;
use tropfw::msc::{species_tree_t1, species_tree_t2, ExperimentConfig, Method, PoolSource};
use tropfw::phylo::{parse_newick, PhyloTree};

use crate::io::{read_text, usage};

/// Relative tolerance for the species tree's leaf depths.
const EQUIDISTANT_TOL: f64 = 1e-9;

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct ExperimentFile {
    /// Newick file, relative to the config file, or the built-in `T1` / `T2`.
    pub species_tree: String,
    /// Effective population sizes; ignored by the safety demo.
    #[serde(default)]
    pub ne_grid: Vec<f64>,
    pub sigma_grid: Vec<f64>,
    pub n_grid: Vec<usize>,
    pub trials: usize,
    pub pool_size: usize,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default = "all_methods")]
    pub methods: Vec<String>,
}

fn all_methods() -> Vec<String> {
    Method::ALL.iter().map(|m| m.name().to_string()).collect()
}

pub fn load_species_tree(spec: &str, base: &Path) -> anyhow::Result<PhyloTree> {
    match spec {
        "T1" | "t1" => return Ok(species_tree_t1()),
        "T2" | "t2" => return Ok(species_tree_t2()),
        _ => {}
    }
    let path = base.join(spec);
    let text = read_text(&path)?;
    let tree = parse_newick(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if !tree.is_equidistant(EQUIDISTANT_TOL * tree.height().max(1.0)) {
        return Err(usage(format!(
            "{}: species tree is not ultrametric",
            path.display()
        )));
    }
    Ok(tree)
}

pub fn load(path: &Path, seed: Option<u64>, safety_demo: bool) -> anyhow::Result<ExperimentConfig> {
    let text = read_text(path)?;
    let file: ExperimentFile =
        toml::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let bad = |key: &str, msg: String| usage(format!("{}: {key}: {msg}", path.display()));

    let base = path.parent().unwrap_or(Path::new("."));
    let species_tree = load_species_tree(&file.species_tree, base)?;
    if species_tree
        .internal_edge_lengths()
        .iter()
        .all(|&l| l <= 0.0)
    {
        return Err(bad(
            "species_tree",
            "needs a positive internal branch".into(),
        ));
    }

    let source = if safety_demo {
        PoolSource::SpeciesCopies
    } else {
        if file.ne_grid.is_empty() {
            return Err(bad("ne_grid", "must list at least one value".into()));
        }
        if let Some(ne) = file.ne_grid.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(bad("ne_grid", format!("{ne} is not positive")));
        }
        PoolSource::Coalescent {
            ne_grid: file.ne_grid.clone(),
        }
    };
    if file.sigma_grid.is_empty() {
        return Err(bad("sigma_grid", "must list at least one value".into()));
    }
    if let Some(s) = file
        .sigma_grid
        .iter()
        .find(|v| !(v.is_finite() && **v >= 0.0))
    {
        return Err(bad(
            "sigma_grid",
            format!("{s} is not a nonnegative number"),
        ));
    }
    if file.pool_size == 0 {
        return Err(bad("pool_size", "must be positive".into()));
    }
    if file.trials == 0 {
        return Err(bad("trials", "must be positive".into()));
    }
    if file.n_grid.is_empty() {
        return Err(bad("n_grid", "must list at least one value".into()));
    }
    if let Some(n) = file.n_grid.iter().find(|&&n| n == 0 || n > file.pool_size) {
        return Err(bad(
            "n_grid",
            format!("{n} is outside 1..={}", file.pool_size),
        ));
    }
    let methods = file
        .methods
        .iter()
        .map(|m| {
            m.parse::<Method>()
                .map_err(|e| bad("methods", e.to_string()))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    if methods.is_empty() {
        return Err(bad("methods", "must list at least one method".into()));
    }
    Ok(ExperimentConfig {
        species_tree,
        source,
        sigma_grid: file.sigma_grid,
        n_grid: file.n_grid,
        trials: file.trials,
        pool_size: file.pool_size,
        master_seed: seed.unwrap_or(file.master_seed),
        methods,
    })
}
