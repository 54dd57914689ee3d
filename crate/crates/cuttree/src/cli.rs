//! Command-line frontend. Exit codes: 0 success, 1 bad input, 2 attempt cap hit,
//! 3 verification found violations.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cuttree_core::oracle::verify_gh_tree;
use cuttree_core::{ordered_cuts_dc, CertifyMode, Graph, Node, PipelineConfig, Sequence, WorkCounter};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bench::{builtin_corpus, gamma_label, load_corpus, rows_csv, run_bench, BenchError};
use crate::dimacs::{parse_dimacs, parse_tree, write_tree};
use crate::generators::Family;
use crate::octree_file::write_oc_tree;
use crate::run::{compute, Method};

/// Environment variable overriding the outer-attempt cap of the randomized methods.
pub const MAX_ATTEMPTS_ENV: &str = "OC_MAX_ATTEMPTS";

#[derive(Debug, Parser)]
#[command(name = "cuttree", version, about = "Exact Gomory-Hu trees via ordered cuts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct Tuning {
    /// Scale of the sampling-rate repetitions.
    #[arg(long, default_value_t = 1.0)]
    pub c1: f64,
    /// Scale of the source-selection schedule.
    #[arg(long, default_value_t = 1.0)]
    pub c2: f64,
    /// Certification used by `weak-oc`.
    #[arg(long, value_enum, default_value_t = Certify::Isolating)]
    pub certify: Certify,
    /// Run ordered-cuts subproblems on a thread pool.
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Certify {
    Isolating,
    Octree,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a Gomory-Hu tree.
    Compute {
        input: PathBuf,
        #[arg(long, default_value = "classic")]
        method: Method,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Tree file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        stats_out: Option<PathBuf>,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Check a tree against all-pairs minimum cuts of a graph.
    Verify {
        graph: PathBuf,
        tree: PathBuf,
        /// Also write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Work counts over a corpus directory or the built-in generators.
    Bench {
        corpus: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "classic,oc1,weak-oc")]
        methods: Vec<Method>,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        seeds: Vec<u64>,
        /// Generator families used without a corpus directory.
        #[arg(long, value_delimiter = ',', default_value = "erdos-renyi,grid,cycle,star,random-tree-plus-noise")]
        generators: Vec<Family>,
        #[arg(long, value_delimiter = ',', default_value = "16,32,64")]
        sizes: Vec<u32>,
        /// `.csv` writes the method rows; anything else the full JSON report.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Ordered-cuts tree for a node sequence.
    OrderedCuts {
        input: PathBuf,
        /// Comma-separated nodes, source first; a seeded random ordering of all nodes
        /// when absent.
        #[arg(long, value_delimiter = ',')]
        sequence: Option<Vec<u32>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Cap(String),
    Violations,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Cap(_) => 2,
            Failure::Violations => 3,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    parse_dimacs(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn config(t: &Tuning) -> Result<PipelineConfig, Failure> {
    let mut c = PipelineConfig {
        c1: t.c1,
        c2: t.c2,
        certify: match t.certify {
            Certify::Isolating => CertifyMode::Isolating,
            Certify::Octree => CertifyMode::Octree,
        },
        parallel: t.parallel,
        ..PipelineConfig::default()
    };
    if let Ok(v) = std::env::var(MAX_ATTEMPTS_ENV) {
        c.max_attempts =
            v.trim().parse().map_err(|_| Failure::Input(format!("{MAX_ATTEMPTS_ENV}={v} is not a count")))?;
    }
    Ok(c)
}

fn core_failure(context: String, e: cuttree_core::Error) -> Failure {
    match e {
        cuttree_core::Error::AttemptCapExceeded(_) => Failure::Cap(format!("{context}: {e}")),
        _ => Failure::Input(format!("{context}: {e}")),
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Compute { input, method, seed, out, stats_out, tuning } => {
            let g = load_graph(&input)?;
            let (tree, stats) = compute(&g, method, seed, config(&tuning)?)
                .map_err(|e| core_failure(format!("{} with {method}", input.display()), e))?;
            emit(out.as_deref(), &write_tree(&tree, &method.to_string(), seed))?;
            if let Some(p) = stats_out {
                write(&p, &json(&stats))?;
            }
            Ok(())
        }
        Command::Verify { graph, tree, report } => {
            let g = load_graph(&graph)?;
            let t = parse_tree(&read(&tree)?).map_err(|e| Failure::Input(format!("{}: {e}", tree.display())))?;
            if g.nodes() != t.nodes() {
                return Err(Failure::Input(format!(
                    "{} has {} nodes but {} has {}",
                    graph.display(),
                    g.node_count(),
                    tree.display(),
                    t.nodes().len()
                )));
            }
            let r = verify_gh_tree(&g, &t);
            let text = json(&r);
            print!("{text}");
            if let Some(p) = report {
                write(&p, &text)?;
            }
            if r.passed() {
                Ok(())
            } else {
                Err(Failure::Violations)
            }
        }
        Command::Bench { corpus, methods, seeds, generators, sizes, report, tuning } => {
            let instances = match corpus {
                Some(dir) => load_corpus(&dir).map_err(|e| Failure::Input(e.to_string()))?,
                None => builtin_corpus(&generators, &sizes, 0),
            };
            let r = run_bench(&instances, &methods, &seeds, config(&tuning)?).map_err(|e| match e {
                BenchError::Run { source: cuttree_core::Error::AttemptCapExceeded(_), .. } => {
                    Failure::Cap(e.to_string())
                }
                _ => Failure::Input(e.to_string()),
            })?;
            if let Some(p) = report {
                let text = if p.extension().is_some_and(|e| e == "csv") {
                    rows_csv(&r.rows).map_err(|e| Failure::Input(e.to_string()))?
                } else {
                    json(&r)
                };
                write(&p, &text)?;
            }
            println!("rows: {}", r.rows.len());
            match r.fit.exponent {
                Some(x) => println!("ordered-cuts nodes_total exponent: {x:.3}"),
                None => println!("ordered-cuts nodes_total exponent: n/a (one size)"),
            }
            println!("gamma reference: {}", gamma_label());
            Ok(())
        }
        Command::OrderedCuts { input, sequence, seed, out } => {
            let g = load_graph(&input)?;
            let order: Vec<Node> = match sequence {
                Some(s) => s.into_iter().map(Node).collect(),
                None => {
                    let mut all = g.nodes().to_vec();
                    all.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
                    all
                }
            };
            let bad = |e| Failure::Input(format!("sequence: {e}"));
            let phi = Sequence::new(order).map_err(bad)?;
            let t = ordered_cuts_dc(&phi, &g, &mut WorkCounter::new()).map_err(bad)?;
            emit(out.as_deref(), &write_oc_tree(&t))
        }
    }
}

/// Parses `args` and runs the command.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Input(m) | Failure::Cap(m) => eprintln!("error: {m}"),
                Failure::Violations => eprintln!("error: tree is not a Gomory-Hu tree of the graph"),
            }
            ExitCode::from(f.code())
        }
    }
}
