use rand::Rng;
use rand_distr::{Distribution, Exp};

use crate::phylo::{Node, PhyloTree};

use super::species::SpeciesModel;

/// Draws a gene tree under the multispecies coalescent: inside each species
/// branch the `k` resident lineages coalesce at rate `k(k−1)/(2N_e)` per
/// generation, a uniformly chosen pair at a time; lineages reaching the top
/// of a branch pass to the parent population, and above the root
/// coalescence runs until one lineage remains.
pub fn simulate_gene_tree<R: Rng + ?Sized>(model: &SpeciesModel, rng: &mut R) -> PhyloTree {
    let species = model.tree();
    let ne = model.ne();
    let depth = species.depths();
    let total = species.height();
    let height: Vec<f64> = depth.iter().map(|d| (total - d).max(0.0)).collect();

    let mut nodes: Vec<Node> = Vec::new();
    let mut gene_height: Vec<f64> = Vec::new();
    // lineages leaving the top of each species branch
    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); species.nodes().len()];

    for &v in species.preorder().iter().rev() {
        let snode = species.node(v);
        let mut lineages: Vec<usize> = if snode.children.is_empty() {
            nodes.push(Node {
                parent: None,
                children: Vec::new(),
                label: snode.label.clone(),
                length: 0.0,
            });
            gene_height.push(0.0);
            vec![nodes.len() - 1]
        } else {
            snode
                .children
                .iter()
                .flat_map(|&c| std::mem::take(&mut outgoing[c]))
                .collect()
        };
        let top = snode.parent.map_or(f64::INFINITY, |p| height[p]);
        let mut t = height[v];
        while lineages.len() >= 2 {
            let k = lineages.len() as f64;
            let rate = k * (k - 1.0) / (2.0 * ne);
            let wait = Exp::new(rate).expect("positive rate").sample(rng);
            if t + wait > top {
                break;
            }
            t += wait;
            let i = rng.random_range(0..lineages.len());
            let mut j = rng.random_range(0..lineages.len() - 1);
            if j >= i {
                j += 1;
            }
            let (a, b) = (lineages[i], lineages[j]);
            let id = nodes.len();
            nodes.push(Node {
                parent: None,
                children: vec![a, b],
                label: None,
                length: 0.0,
            });
            gene_height.push(t);
            lineages.retain(|&x| x != a && x != b);
            lineages.push(id);
        }
        outgoing[v] = lineages;
    }
    let root = outgoing[species.root()][0];
    for id in 0..nodes.len() {
        for k in 0..nodes[id].children.len() {
            let c = nodes[id].children[k];
            nodes[c].length = gene_height[id] - gene_height[c];
        }
    }
    PhyloTree::from_nodes(nodes, root).expect("coalescent output is a valid tree")
}
