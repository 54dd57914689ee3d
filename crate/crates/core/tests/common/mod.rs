#![allow(dead_code)]

use cuttree_core::{Graph, Node, NodeSet, Weight};
use proptest::prelude::*;

/// Graphs on nodes `1..=n` with `n` in `2..=max_n`; each pair is an edge with
/// probability about 0.6 and weight in `1..=16`.
pub fn graph(max_n: u32) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = (n * (n - 1) / 2) as usize;
        prop::collection::vec(prop::option::weighted(0.6, 1 as Weight..=16), pairs).prop_map(move |ws| {
            let mut edges = Vec::new();
            let mut k = 0;
            for a in 1..=n {
                for b in a + 1..=n {
                    if let Some(w) = ws[k] {
                        edges.push((Node(a), Node(b), w));
                    }
                    k += 1;
                }
            }
            Graph::with_node_count(n, edges).unwrap()
        })
    })
}

/// A graph together with a permutation of its nodes.
pub fn graph_and_order(max_n: u32) -> impl Strategy<Value = (Graph, Vec<Node>)> {
    graph(max_n).prop_flat_map(|g| {
        let nodes = g.nodes().to_vec();
        (Just(g), Just(nodes).prop_shuffle())
    })
}

/// Subset of the graph's nodes picked by a bit mask.
pub fn subset(g: &Graph, mask: u64) -> NodeSet {
    g.nodes().iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect()
}

pub fn set(xs: &[u32]) -> NodeSet {
    xs.iter().map(|&x| Node(x)).collect()
}
