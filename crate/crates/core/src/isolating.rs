//! Isolating cuts: for every terminal `v ∈ Y`, a minimum cut separating `v` from
//! `(Y ∪ {s}) − {v}`, using `⌈log₂ |Y|⌉` rounds of bipartition cuts.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Cut, Graph, Node, NodeSet};
use crate::maxflow::{min_cut_minimal_sink, WorkCounter};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingCuts {
    /// Pairwise disjoint; `cuts[v]` contains `v` and no other terminal.
    pub cuts: BTreeMap<Node, Cut>,
    /// Depth of the bipartition recursion.
    pub levels: u32,
}

/// Halve the terminals, take one sink-minimal cut between the halves, contract each side
/// into the source and recurse. Reusing the source label for the contracted side
/// cannot collide: the source always stays on the contracted side.
pub fn isolating_cuts(s: Node, y: &NodeSet, g: &Graph, counter: &mut WorkCounter) -> Result<IsolatingCuts> {
    if y.is_empty() {
        return Err(Error::EmptyTerminals);
    }
    if y.contains(&s) {
        return Err(Error::SourceInTerminals(s));
    }
    if let Some(&v) = core::iter::once(&s).chain(y).find(|&&v| !g.contains(v)) {
        return Err(Error::UnknownNode(v));
    }
    let terms: Vec<Node> = y.iter().copied().collect();
    let mut out = IsolatingCuts { cuts: BTreeMap::new(), levels: 0 };
    split(g, s, &terms, 0, counter, &mut out)?;
    Ok(out)
}

fn split(
    g: &Graph,
    s: Node,
    terms: &[Node],
    level: u32,
    counter: &mut WorkCounter,
    out: &mut IsolatingCuts,
) -> Result<()> {
    out.levels = out.levels.max(level);
    let source = NodeSet::from([s]);
    if let [v] = terms {
        let r = min_cut_minimal_sink(g, &source, &NodeSet::from([*v]), counter)?;
        out.cuts.insert(*v, r.into_cut());
        return Ok(());
    }
    let (left, right) = terms.split_at(terms.len() / 2);
    let a: NodeSet = left.iter().copied().chain([s]).collect();
    let b: NodeSet = right.iter().copied().collect();
    let t_side = min_cut_minimal_sink(g, &a, &b, counter)?.sink_side;

    let mut t_and_s = t_side.clone();
    t_and_s.insert(s);
    let g_left = g.contract_set_to_node(&t_and_s, s)?;
    split(&g_left, s, left, level + 1, counter, out)?;

    let s_side: NodeSet = g.node_set().difference(&t_side).copied().collect();
    let g_right = g.contract_set_to_node(&s_side, s)?;
    split(&g_right, s, right, level + 1, counter, out)
}
