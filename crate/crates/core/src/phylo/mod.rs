//! Rooted phylogenetic trees, Newick I/O, cophenetic vectors and tree
//! comparison.

pub mod dissimilarity;
pub mod linkage;
pub mod newick;
pub mod rf;
pub mod tree;

pub use dissimilarity::{
    cophenetic_vector, is_tree_metric, is_ultrametric, is_ultrametric_entries, DissimilarityVector,
};
pub use linkage::{average_linkage, single_linkage, tree_from_ultrametric};
pub use newick::{parse_newick, parse_newick_lines, write_newick, write_topology};
pub use rf::{rf_distance, topology_signature, CladeSet};
pub use tree::{Node, PhyloTree};
