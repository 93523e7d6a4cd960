use crate::error::{Error, Result};
use crate::phylo::{cophenetic_vector, is_ultrametric, parse_newick, PhyloTree};

/// Balanced 8-taxon species tree, every branch 30000 generations, depth
/// 90000. A reconstruction matching the published constraints only.
pub const T1_NEWICK: &str = "(((A:30000,B:30000):30000,(C:30000,D:30000):30000):30000,((E:30000,F:30000):30000,(G:30000,H:30000):30000):30000);";

/// 8-taxon species tree of depth 90000 with a unique shortest internal
/// branch of 3000 generations (between the EF and EFG ancestors). A
/// reconstruction matching the published constraints only.
pub const T2_NEWICK: &str = "(((A:30000,B:30000):30000,(C:30000,D:30000):30000):30000,(((E:40000,F:40000):3000,G:43000):17000,H:60000):30000);";

pub fn species_tree_t1() -> PhyloTree {
    parse_newick(T1_NEWICK).expect("valid constant")
}

pub fn species_tree_t2() -> PhyloTree {
    parse_newick(T2_NEWICK).expect("valid constant")
}

/// A species tree with one gene copy per species and a shared effective
/// population size, both in generations.
#[derive(Clone, Debug)]
pub struct SpeciesModel {
    tree: PhyloTree,
    ne: f64,
}

impl SpeciesModel {
    pub fn new(tree: PhyloTree, ne: f64) -> Result<Self> {
        if !(ne.is_finite() && ne > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "effective population size must be positive, got {ne}"
            )));
        }
        let scale = tree.height().max(1.0);
        if !is_ultrametric(&cophenetic_vector(&tree), 1e-9 * scale) {
            return Err(Error::InvalidArgument(
                "species tree is not ultrametric".into(),
            ));
        }
        Ok(SpeciesModel { tree, ne })
    }

    pub fn tree(&self) -> &PhyloTree {
        &self.tree
    }

    pub fn ne(&self) -> f64 {
        self.ne
    }
}

/// Shortest branch between two internal nodes of `tree`.
pub fn min_internal_branch(tree: &PhyloTree) -> Option<f64> {
    tree.internal_edge_lengths().into_iter().reduce(f64::min)
}
