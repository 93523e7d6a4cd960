#![allow(dead_code)]

use rand::Rng;
use tropfw::rng::{stream, StreamRng};

pub fn rng(seed: u64) -> StreamRng {
    stream(seed)
}

pub fn uniform_vec(rng: &mut impl Rng, q: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..q).map(|_| rng.random_range(lo..hi)).collect()
}

pub fn int_vec(rng: &mut impl Rng, q: usize, lo: i64, hi: i64) -> Vec<f64> {
    (0..q).map(|_| rng.random_range(lo..=hi) as f64).collect()
}

/// Cophenetic vector of a random binary equidistant tree on `p` taxa whose
/// merge heights strictly increase, so the point is interior to a maximal
/// cone. Also returns the shortest internal edge.
pub fn random_ultrametric(rng: &mut impl Rng, p: usize) -> (Vec<f64>, f64) {
    // (members, height of the cluster's root; 0 for leaves)
    let mut clusters: Vec<(Vec<usize>, f64)> = (0..p).map(|i| (vec![i], 0.0)).collect();
    let mut d = vec![0.0; p * (p - 1) / 2];
    let mut height = 0.0;
    let mut shortest = f64::INFINITY;
    while clusters.len() > 1 {
        height += rng.random_range(0.5..1.5);
        let a = rng.random_range(0..clusters.len());
        let (left, hl) = clusters.swap_remove(a);
        let b = rng.random_range(0..clusters.len());
        let (right, hr) = clusters.swap_remove(b);
        for (members, h) in [(&left, hl), (&right, hr)] {
            if members.len() > 1 {
                shortest = shortest.min(height - h);
            }
        }
        for &i in &left {
            for &j in &right {
                let (lo, hi) = if i < j { (i, j) } else { (j, i) };
                d[tropfw::matroid::pair_index(p, lo, hi)] = 2.0 * height;
            }
        }
        clusters.push(([left, right].concat(), height));
    }
    (d, shortest)
}
