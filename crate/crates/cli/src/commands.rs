//! Subcommand implementations.

use std::path::Path;

use tropfw::fw::fw_point;
use tropfw::matroid::graphic_matroid;
use tropfw::msc::experiment::{hausdorff_experiment, hausdorff_to_csv, SUMMARY_HEADER};
use tropfw::msc::{
    estimate_norm_moments, records_to_csv, run_experiment, simulate_gene_tree,
    stochastic_safety_sigma, summarize, tree_from_shifted, HausdorffConfig, SpeciesModel,
};
use tropfw::phylo::{cophenetic_vector, write_newick, DissimilarityVector};
use tropfw::projection::project_bergman;
use tropfw::rng::stream;
use tropfw::trop::fw_objective;
use tropfw::{Error, Metric, TropicalPoint};

use crate::config;
use crate::io::{
    fmt_num, fmt_row, load_matroid, max_abs, parse_table, parse_vector, read_text, taxa_for_pairs,
    usage, write_output,
};
use crate::{
    ExperimentArgs, FwArgs, GeneFormat, HausdorffArgs, MomentsArgs, ProjectArgs, SimulateArgs,
};

/// Argument-shaped library errors are usage errors; the rest are runtime
/// failures.
fn lib_err(e: Error) -> anyhow::Error {
    match e {
        Error::InvalidArgument(_)
        | Error::Dimension { .. }
        | Error::Parse { .. }
        | Error::Domain(_) => usage(e.to_string()),
        other => other.into(),
    }
}

fn points(rows: &[Vec<f64>]) -> anyhow::Result<Vec<TropicalPoint>> {
    rows.iter()
        .map(|r| TropicalPoint::new(r.clone()).map_err(lib_err))
        .collect()
}

pub fn fw(args: FwArgs) -> anyhow::Result<()> {
    let source = args.input.display().to_string();
    let table = parse_table(&read_text(&args.input)?, &source)?;
    let sample = points(&table.rows)?;
    let metric: Metric = args.metric.into();
    let sol = fw_point(&sample, metric).map_err(lib_err)?;
    let point = sol.centered_on(&sample);
    let scale = table.rows.iter().map(|r| max_abs(r)).fold(0.0, f64::max);

    let mut out = format!(
        "metric={}\nobjective={}\npoint={}\n",
        metric.name(),
        fmt_num(sol.objective, scale),
        fmt_row(point.coords())
    );
    let explicit = load_matroid(&args.matroid)?;
    if args.project || explicit.is_some() {
        let q = point.dim();
        let m = match explicit {
            Some(m) => m,
            None => {
                let p = taxa_for_pairs(q).ok_or_else(|| {
                    usage(format!(
                        "{q} columns is not p(p-1)/2 for any p; pass --matroid"
                    ))
                })?;
                graphic_matroid(p).map_err(lib_err)?
            }
        };
        if m.ground_size() != q {
            return Err(usage(format!(
                "matroid has ground set size {}, data has {q} columns",
                m.ground_size()
            )));
        }
        let projected = project_bergman(&m, point.coords()).map_err(lib_err)?;
        let objective = fw_objective(&sample, &projected, metric).map_err(lib_err)?;
        out.push_str(&format!(
            "projected={}\nprojected_objective={}\n",
            fmt_row(projected.coords()),
            fmt_num(objective, scale)
        ));
        if let Some(p) = m.complete_graph_vertices() {
            let labels = table
                .labels
                .clone()
                .unwrap_or_else(|| DissimilarityVector::default_labels(p));
            let tree = tree_from_shifted(projected.into_coords(), &labels).map_err(lib_err)?;
            out.push_str(&format!("tree={}\n", write_newick(&tree)));
        }
    }
    write_output(args.output.as_ref(), &out)
}

pub fn project(args: ProjectArgs) -> anyhow::Result<()> {
    let rows = match (&args.vector, &args.input) {
        (Some(v), None) => vec![parse_vector(v, "--vector")?],
        (None, Some(path)) => parse_table(&read_text(path)?, &path.display().to_string())?.rows,
        _ => return Err(usage("give exactly one of --vector or --input")),
    };
    let q = rows[0].len();
    if rows.iter().any(|r| r.len() != q) {
        return Err(usage("vectors differ in length"));
    }
    let m = match load_matroid(&args.matroid)? {
        Some(m) => m,
        None => {
            let p = taxa_for_pairs(q).ok_or_else(|| {
                usage(format!(
                    "length {q} is not p(p-1)/2; pass --graphic or --matroid"
                ))
            })?;
            graphic_matroid(p).map_err(lib_err)?
        }
    };
    let mut out = String::new();
    for r in &rows {
        let proj = project_bergman(&m, r).map_err(lib_err)?;
        out.push_str(&fmt_row(proj.coords()));
        out.push('\n');
    }
    write_output(args.output.as_ref(), &out)
}

pub fn simulate(args: SimulateArgs) -> anyhow::Result<()> {
    let tree = config::load_species_tree(&args.species_tree, Path::new("."))?;
    let model = SpeciesModel::new(tree, args.ne).map_err(lib_err)?;
    let mut rng = stream(args.seed);
    let genes: Vec<_> = (0..args.count)
        .map(|_| simulate_gene_tree(&model, &mut rng))
        .collect();
    let out = match args.format {
        GeneFormat::Newick => genes
            .iter()
            .map(|g| write_newick(g) + "\n")
            .collect::<String>(),
        GeneFormat::Csv => {
            let mut out = String::new();
            for (k, g) in genes.iter().enumerate() {
                let csv = cophenetic_vector(g).to_csv();
                let mut lines = csv.lines();
                let header = lines.next().expect("header");
                if k == 0 {
                    out.push_str(header);
                    out.push('\n');
                }
                out.push_str(lines.next().expect("row"));
                out.push('\n');
            }
            out
        }
    };
    write_output(args.output.as_ref(), &out)
}

pub fn experiment(args: ExperimentArgs, safety_demo: bool) -> anyhow::Result<()> {
    let cfg = config::load(&args.config, args.seed, safety_demo)?;
    let records = run_experiment(&cfg).map_err(lib_err)?;
    if let Some(path) = &args.summary {
        let mut text = String::from(SUMMARY_HEADER);
        text.push('\n');
        for cell in summarize(&records) {
            text.push_str(&cell.csv_row());
            text.push('\n');
        }
        write_output(Some(path), &text)?;
    }
    write_output(args.output.as_ref(), &records_to_csv(&records))
}

pub fn hausdorff(args: HausdorffArgs) -> anyhow::Result<()> {
    let cfg = HausdorffConfig {
        n_values: args.n,
        q_values: args.q,
        replicates: args.replicates,
        perturbation_scale: args.scale,
        master_seed: args.seed,
    };
    let records = hausdorff_experiment(&cfg).map_err(lib_err)?;
    write_output(args.output.as_ref(), &hausdorff_to_csv(&records))
}

pub fn moments(args: MomentsArgs) -> anyhow::Result<()> {
    let mut rng = stream(args.seed);
    let m = estimate_norm_moments(args.q, args.samples, &mut rng).map_err(lib_err)?;
    let mut header = String::from("q,samples,mean,variance,mean_se");
    let mut row = format!(
        "{},{},{},{},{}",
        m.q, m.samples, m.mean, m.variance, m.mean_se
    );
    if let (Some(eta), Some(n), Some(w)) = (args.eta, args.sample_size, args.w_min) {
        let sigma = stochastic_safety_sigma(eta, n, args.q, w, &m).map_err(lib_err)?;
        header.push_str(",eta,n,w_min,sigma_bound");
        row.push_str(&format!(",{eta},{n},{w},{sigma}"));
    }
    write_output(args.output.as_ref(), &format!("{header}\n{row}\n"))
}
