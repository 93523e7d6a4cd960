mod common;

use rand::seq::SliceRandom;
use tropfw::fw::fw_m_ultrametric;
use tropfw::matroid::graphic_matroid;
use tropfw::msc::{
    estimate, estimate_norm_moments, glass_estimate, perturb, run_experiment, safety_radius_demo,
    simulate_gene_tree, species_tree_t1, steac_estimate, stochastic_safety_sigma, summarize,
    ExperimentConfig, Method, NoiseSpec, PoolSource, SpeciesModel,
};
use tropfw::phylo::{
    cophenetic_vector, is_ultrametric, is_ultrametric_entries, parse_newick, rf_distance,
};
use tropfw::{Metric, TropicalPoint};

fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[test]
fn two_taxon_depth_is_divergence_plus_ne() {
    let (d, ne) = (1000.0, 500.0);
    let tree = parse_newick(&format!("(A:{d},B:{d});")).unwrap();
    let model = SpeciesModel::new(tree, ne).unwrap();
    let mut rng = common::rng(1);
    let depths: Vec<f64> = (0..10_000)
        .map(|_| simulate_gene_tree(&model, &mut rng).height())
        .collect();
    assert!(depths.iter().all(|&h| h >= d));
    let (mean, se) = mean_and_se(&depths);
    assert!((mean - (d + ne)).abs() <= 3.0 * se, "mean {mean} se {se}");
}

#[test]
fn three_taxon_discordance_matches_closed_form() {
    let (tau, ne) = (400.0, 1000.0);
    let tree = parse_newick(&format!("((A:500,B:500):{tau},C:{});", 500.0 + tau)).unwrap();
    let model = SpeciesModel::new(tree.clone(), ne).unwrap();
    let mut rng = common::rng(2);
    let reps = 10_000;
    let discordant = (0..reps)
        .filter(|_| rf_distance(&simulate_gene_tree(&model, &mut rng), &tree).unwrap() != 0)
        .count();
    let p = 2.0 / 3.0 * (-tau / ne).exp();
    let se = (p * (1.0 - p) / reps as f64).sqrt();
    let observed = discordant as f64 / reps as f64;
    assert!(
        (observed - p).abs() <= 3.0 * se,
        "observed {observed} expected {p}"
    );
}

#[test]
fn gene_trees_are_ultrametric_and_deeper_than_species() {
    let model = SpeciesModel::new(species_tree_t1(), 90000.0).unwrap();
    let truth = cophenetic_vector(&species_tree_t1());
    let mut rng = common::rng(3);
    for _ in 0..200 {
        let g = cophenetic_vector(&simulate_gene_tree(&model, &mut rng));
        assert!(is_ultrametric(&g, 1e-6));
        assert!(g.entries().iter().zip(truth.entries()).all(|(a, b)| a >= b));
    }
}

#[test]
fn noise_has_the_requested_variance() {
    let spec = NoiseSpec::new(0.5, 3000.0).unwrap();
    let mut rng = common::rng(4);
    let base = vec![0.0; 28];
    let draws: Vec<f64> = (0..10_000 / 28 + 1)
        .flat_map(|_| perturb(&base, &spec, &mut rng))
        .collect();
    let var = draws.iter().map(|x| x * x).sum::<f64>() / draws.len() as f64;
    let target = spec.std_dev().powi(2);
    assert!((var / target - 1.0).abs() < 0.05, "{var} vs {target}");

    let zero = NoiseSpec::new(0.0, 3000.0).unwrap();
    let v: Vec<f64> = (0..28).map(f64::from).collect();
    assert_eq!(perturb(&v, &zero, &mut rng), v);
}

#[test]
fn perturbed_vectors_leave_tree_space() {
    let truth = cophenetic_vector(&species_tree_t1()).into_entries();
    let spec = NoiseSpec::new(1.0, 30000.0).unwrap();
    let mut rng = common::rng(5);
    let failures = (0..1000)
        .filter(|_| !is_ultrametric_entries(8, &perturb(&truth, &spec, &mut rng), 1e-9))
        .count();
    assert!(failures > 900, "{failures}");
}

fn gene_vectors(n: usize, seed: u64) -> (Vec<Vec<f64>>, Vec<String>) {
    let model = SpeciesModel::new(species_tree_t1(), 30000.0).unwrap();
    let mut rng = common::rng(seed);
    let vs = (0..n)
        .map(|_| cophenetic_vector(&simulate_gene_tree(&model, &mut rng)).into_entries())
        .collect();
    (vs, species_tree_t1().leaf_labels())
}

#[test]
fn glass_minimum_never_grows_with_more_genes() {
    let (vs, labels) = gene_vectors(12, 6);
    let mut prev: Option<Vec<f64>> = None;
    for k in 1..=vs.len() {
        let t = glass_estimate(&vs[..k], &labels).unwrap();
        let d = cophenetic_vector(&t).into_entries();
        if let Some(p) = &prev {
            assert!(d.iter().zip(p).all(|(a, b)| a <= &(b + 1e-9)));
        }
        prev = Some(d);
    }
}

#[test]
fn steac_ignores_gene_order() {
    let (mut vs, labels) = gene_vectors(9, 7);
    let a = cophenetic_vector(&steac_estimate(&vs, &labels).unwrap());
    vs.shuffle(&mut common::rng(8));
    let b = cophenetic_vector(&steac_estimate(&vs, &labels).unwrap());
    assert!(a
        .entries()
        .iter()
        .zip(b.entries())
        .all(|(x, y)| (x - y).abs() < 1e-6));
}

#[test]
fn every_estimate_is_an_equidistant_tree() {
    let (vs, labels) = gene_vectors(8, 9);
    let spec = NoiseSpec::new(2.0, 30000.0).unwrap();
    let mut rng = common::rng(10);
    let noisy: Vec<Vec<f64>> = vs.iter().map(|v| perturb(v, &spec, &mut rng)).collect();
    for data in [&vs, &noisy] {
        for m in Method::ALL {
            let t = estimate(m, data, &labels).unwrap();
            assert!(t.is_equidistant(1e-6 * t.height().max(1.0)), "{m}");
            assert!(is_ultrametric(
                &cophenetic_vector(&t),
                1e-6 * t.height().max(1.0)
            ));
        }
    }
}

#[test]
fn half_normal_mean_for_two_coordinates() {
    let m = estimate_norm_moments(2, 100_000, &mut common::rng(11)).unwrap();
    let expected = 2.0 / std::f64::consts::PI.sqrt();
    assert!(
        (m.mean - expected).abs() <= 3.0 * m.mean_se,
        "{} vs {expected}",
        m.mean
    );
    assert!(m.variance > 0.0);
    assert!(estimate_norm_moments(2, 999, &mut common::rng(11)).is_err());
}

#[test]
fn normalized_norm_mean_approaches_its_limit_from_below() {
    let limit = 2.0 * 2.0f64.sqrt();
    let ratios: Vec<f64> = [100usize, 1000, 10_000]
        .iter()
        .map(|&q| {
            let m = estimate_norm_moments(q, 2000, &mut common::rng(q as u64)).unwrap();
            assert!(m.variance > 0.0);
            m.mean / (q as f64).ln().sqrt()
        })
        .collect();
    assert!(ratios.windows(2).all(|w| w[0] < w[1]), "{ratios:?}");
    assert!(ratios.iter().all(|&r| r < limit));
}

#[test]
fn stochastic_bound_shape() {
    let m = estimate_norm_moments(28, 5000, &mut common::rng(12)).unwrap();
    let s = |eta: f64, n: usize, w: f64| stochastic_safety_sigma(eta, n, 28, w, &m).unwrap();
    assert!((s(0.1, 5, 2.0) - 2.0 * s(0.1, 5, 1.0)).abs() < 1e-12);
    assert!(s(0.1, 10, 1.0) < s(0.1, 5, 1.0));
    assert!(s(0.05, 5, 1.0) < s(0.1, 5, 1.0));
    let big_n = 1_000_000;
    let limit = 1.0 / (2.0 * big_n as f64 * m.mean);
    assert!((s(0.999, big_n, 1.0) / limit - 1.0).abs() < 0.01);
    assert!(stochastic_safety_sigma(0.0, 5, 28, 1.0, &m).is_err());
    assert!(stochastic_safety_sigma(0.1, 5, 28, -1.0, &m).is_err());
    assert!(stochastic_safety_sigma(0.1, 0, 28, 1.0, &m).is_err());
}

#[test]
fn cone_survives_noise_at_the_stochastic_bound() {
    let (eta, n) = (0.1, 5);
    let w = cophenetic_vector(&species_tree_t1()).into_entries();
    let matroid = graphic_matroid(8).unwrap();
    let w_min = matroid.w_min(&w).unwrap();
    let moments = estimate_norm_moments(28, 20_000, &mut common::rng(13)).unwrap();
    let sigma = stochastic_safety_sigma(eta, n, 28, w_min, &moments).unwrap();
    // perturb adds N(0, (sigma * w_ref)^2); w_ref = 1 gives std sigma
    let spec = NoiseSpec::new(sigma, 1.0).unwrap();
    let target = matroid.cone_signature(&w).unwrap();
    let mut rng = common::rng(14);
    let trials = 200;
    let kept = (0..trials)
        .filter(|_| {
            let sample: Vec<TropicalPoint> = (0..n)
                .map(|_| TropicalPoint::new(perturb(&w, &spec, &mut rng)).unwrap())
                .collect();
            let proj = fw_m_ultrametric(&matroid, &sample, Metric::Sym).unwrap();
            matroid.cone_signature(proj.point.coords()).unwrap() == target
        })
        .count();
    assert!(
        kept as f64 >= (1.0 - eta) * trials as f64,
        "{kept}/{trials}"
    );
}

#[test]
fn experiment_contracts() {
    let cfg = ExperimentConfig {
        species_tree: species_tree_t1(),
        source: PoolSource::Coalescent {
            ne_grid: vec![30000.0, 90000.0],
        },
        sigma_grid: vec![0.0, 1.0],
        n_grid: vec![3, 6],
        trials: 2,
        pool_size: 12,
        master_seed: 99,
        methods: vec![Method::SymFw, Method::Glass],
    };
    let recs = run_experiment(&cfg).unwrap();
    assert_eq!(recs.len(), 2 * 2 * 2 * 2 * 2);
    assert!(recs.iter().all(|r| (r.rf == 0) == r.topology_match));
    let keys: Vec<_> = recs
        .iter()
        .map(|r| (r.ne, r.sigma, r.n, r.trial, r.method))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert_eq!(keys, sorted);
    assert_eq!(run_experiment(&cfg).unwrap(), recs);
    let cells = summarize(&recs);
    assert_eq!(cells.len(), 16);
    assert!(cells
        .iter()
        .all(|c| c.distinct_topologies >= 1 && c.correct <= c.trials));

    let mut other = cfg.clone();
    other.master_seed = 100;
    assert_ne!(run_experiment(&other).unwrap(), recs);
}

/// Large-sample run on the noisy species-tree pool. Slow: run with
/// `cargo test --release -- --ignored`.
#[test]
#[ignore]
fn large_sample_recovers_t1_at_high_noise() {
    let cfg = ExperimentConfig {
        species_tree: species_tree_t1(),
        source: PoolSource::SpeciesCopies,
        sigma_grid: vec![4.0],
        n_grid: vec![500],
        trials: 20,
        pool_size: 10_000,
        master_seed: 41,
        methods: vec![Method::SymFw, Method::MinFw, Method::MaxFw],
    };
    for cell in summarize(&safety_radius_demo(&cfg).unwrap()) {
        assert!(
            cell.correct >= 19,
            "{}: {}/{}",
            cell.method,
            cell.correct,
            cell.trials
        );
    }
}
