//! Work counts per (instance, method, seed), plus the growth exponent of the
//! ordered-cuts solver on full random permutations.

use std::collections::BTreeMap;
use std::path::Path;

use cuttree_core::{ordered_cuts_dc, Graph, Node, PipelineConfig, Sequence, WorkCounter};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dimacs::{parse_dimacs, ParseError};
use crate::generators::Family;
use crate::run::{compute, Method};

/// `log₂ 1.5`, the exponent in the expected work bound of the ordered-cuts solver.
pub fn gamma() -> f64 {
    1.5f64.log2()
}

/// `γ` cut to three decimals, as quoted in reports.
pub fn gamma_label() -> String {
    format!("{:.3}", (gamma() * 1000.0).floor() / 1000.0)
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub graph: Graph,
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{instance} with {method}, seed {seed}: {source}")]
    Run { instance: String, method: Method, seed: u64, source: cuttree_core::Error },
}

/// Every regular file in `dir`, parsed as a graph, in file-name order.
pub fn load_corpus(dir: &Path) -> Result<Vec<Instance>, BenchError> {
    let io = |source| BenchError::Io { path: dir.display().to_string(), source };
    let mut paths: Vec<_> =
        std::fs::read_dir(dir).map_err(io)?.map(|e| e.map(|e| e.path())).collect::<Result<_, _>>().map_err(io)?;
    paths.retain(|p| p.is_file());
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let path = p.display().to_string();
            let text = std::fs::read_to_string(&p).map_err(|source| BenchError::Io { path: path.clone(), source })?;
            let graph = parse_dimacs(&text).map_err(|source| BenchError::Parse { path, source })?;
            let name = p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            Ok(Instance { name, graph })
        })
        .collect()
}

/// One instance per family and size, generated from `seed`.
pub fn builtin_corpus(families: &[Family], sizes: &[u32], seed: u64) -> Vec<Instance> {
    let mut out = Vec::new();
    for &f in families {
        for &n in sizes {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (u64::from(n) << 8) ^ f as u64);
            out.push(Instance { name: format!("{f}-{n}"), graph: f.generate(n, &mut rng) });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub method: Method,
    pub seed: u64,
    pub maxflow_calls: u64,
    pub nodes_total: u64,
    pub edges_total: u64,
    pub attempts: u64,
    pub wall_ms: u64,
}

/// Work of one ordered-cuts solve over a random ordering of all nodes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OcRow {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub maxflow_calls: u64,
    pub nodes_total: u64,
    pub edges_total: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fit {
    /// Slope of `ln(mean nodes_total)` against `ln n`; absent with fewer than two sizes.
    pub exponent: Option<f64>,
    pub gamma_reference: f64,
    /// `(n, mean nodes_total)` per distinct size.
    pub points: Vec<(usize, f64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub rows: Vec<Row>,
    pub ordered_cuts: Vec<OcRow>,
    pub fit: Fit,
}

/// Solves ordered cuts for a uniformly random ordering of all nodes of `g`.
pub fn ordered_cuts_work(g: &Graph, seed: u64) -> WorkCounter {
    let mut order: Vec<Node> = g.nodes().to_vec();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let phi = Sequence::new(order).expect("distinct graph nodes");
    let mut counter = WorkCounter::new();
    ordered_cuts_dc(&phi, g, &mut counter).expect("sequence covers graph nodes");
    counter
}

/// Least-squares slope through `(ln x, ln y)`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Mean `nodes_total` per size and the fitted exponent.
pub fn fit(rows: &[OcRow]) -> Fit {
    let mut by_n: BTreeMap<usize, (f64, f64)> = BTreeMap::new();
    for r in rows {
        let e = by_n.entry(r.n).or_default();
        e.0 += r.nodes_total as f64;
        e.1 += 1.0;
    }
    let points: Vec<(usize, f64)> = by_n.into_iter().map(|(n, (sum, k))| (n, sum / k)).collect();
    let exponent = loglog_slope(&points.iter().map(|&(n, y)| (n as f64, y)).collect::<Vec<_>>());
    Fit { exponent, gamma_reference: gamma(), points }
}

/// Runs every method on every instance for each seed; jobs run on the rayon pool.
pub fn run_bench(
    corpus: &[Instance],
    methods: &[Method],
    seeds: &[u64],
    config: PipelineConfig,
) -> Result<Report, BenchError> {
    if corpus.is_empty() {
        return Err(BenchError::EmptyCorpus);
    }
    let jobs: Vec<(&Instance, Method, u64)> = corpus
        .iter()
        .flat_map(|inst| methods.iter().flat_map(move |&m| seeds.iter().map(move |&s| (inst, m, s))))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(inst, method, seed)| {
            let g = &inst.graph;
            let (_, st) = compute(g, method, seed, config).map_err(|source| BenchError::Run {
                instance: inst.name.clone(),
                method,
                seed,
                source,
            })?;
            Ok(Row {
                instance: inst.name.clone(),
                n: g.node_count(),
                m: g.edge_count(),
                method,
                seed,
                maxflow_calls: st.maxflow_calls,
                nodes_total: st.nodes_total,
                edges_total: st.edges_total,
                attempts: st.attempts,
                wall_ms: st.wall_ms,
            })
        })
        .collect::<Result<Vec<_>, BenchError>>()?;
    let oc_jobs: Vec<(&Instance, u64)> = corpus.iter().flat_map(|i| seeds.iter().map(move |&s| (i, s))).collect();
    let ordered_cuts: Vec<OcRow> = oc_jobs
        .par_iter()
        .map(|&(inst, seed)| {
            let c = ordered_cuts_work(&inst.graph, seed);
            OcRow {
                instance: inst.name.clone(),
                n: inst.graph.node_count(),
                m: inst.graph.edge_count(),
                seed,
                maxflow_calls: c.calls,
                nodes_total: c.nodes_total,
                edges_total: c.edges_total,
            }
        })
        .collect();
    let fit = fit(&ordered_cuts);
    Ok(Report { rows, ordered_cuts, fit })
}

/// The method rows as CSV.
pub fn rows_csv(rows: &[Row]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
