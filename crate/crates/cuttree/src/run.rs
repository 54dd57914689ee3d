//! Seeded tree construction with work statistics.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use cuttree_core::{
    gh_generalized, gh_via_oc1, gh_via_weak_oc, gomory_hu::ClassicSplit, GhTree, Graph, PipelineConfig, WorkCounter,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Classic,
    Oc1,
    WeakOc,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Classic, Method::Oc1, Method::WeakOc];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Classic => "classic",
            Method::Oc1 => "oc1",
            Method::WeakOc => "weak-oc",
        })
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL.into_iter().find(|m| m.to_string() == s).ok_or_else(|| format!("unknown method `{s}`"))
    }
}

/// What one construction cost.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub method: Method,
    pub seed: u64,
    pub maxflow_calls: u64,
    pub nodes_total: u64,
    pub edges_total: u64,
    /// Outer attempts summed over all splits.
    pub attempts: u64,
    /// Outer attempts of each split, in order.
    pub attempts_per_call: Vec<u32>,
    pub wall_ms: u64,
}

/// Builds a tree with `method`, seeding the random choices with `seed`.
pub fn compute(
    g: &Graph,
    method: Method,
    seed: u64,
    config: PipelineConfig,
) -> Result<(GhTree, Stats), cuttree_core::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counter = WorkCounter::new();
    let start = Instant::now();
    let run = match method {
        Method::Classic => gh_generalized(g, &mut ClassicSplit, &mut counter)?,
        Method::Oc1 => gh_via_oc1(g, &mut rng, config, &mut counter)?,
        Method::WeakOc => gh_via_weak_oc(g, &mut rng, config, &mut counter)?,
    };
    let stats = Stats {
        method,
        seed,
        maxflow_calls: counter.calls,
        nodes_total: counter.nodes_total,
        edges_total: counter.edges_total,
        attempts: run.split_attempts.iter().map(|&a| a as u64).sum(),
        attempts_per_call: run.split_attempts,
        wall_ms: start.elapsed().as_millis() as u64,
    };
    Ok((run.tree, stats))
}
