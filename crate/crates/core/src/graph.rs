//! Undirected weighted multigraphs with exact integer weights.
//!
//! A [`Graph`] keeps its nodes sorted by label and stores every edge once, with
//! parallel edges merged and self-loops removed. Graphs are immutable: contraction
//! returns a new graph, so a graph can be shared freely between recursion branches.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// External node label. Labels survive contraction; merged nodes take the label of
/// the node (or fresh label) they are merged into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Node(pub u32);

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Edge weights and cut costs. 128 bits leave room for the perturbation scale.
pub type Weight = u128;

pub type NodeSet = BTreeSet<Node>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    nodes: Vec<Node>,
    // Dense endpoints with a < b, sorted, one entry per node pair.
    edges: Vec<(u32, u32, Weight)>,
}

/// A cut `U` together with its cost.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cut {
    pub members: NodeSet,
    pub cost: Weight,
}

impl Cut {
    pub fn new(g: &Graph, members: NodeSet) -> Result<Self> {
        let cost = g.cut_cost(&members)?;
        Ok(Cut { members, cost })
    }
}

impl Graph {
    /// Builds a graph from a node list and an edge list. Parallel edges are merged by
    /// summing their weights.
    pub fn new<N, E>(nodes: N, edges: E) -> Result<Self>
    where
        N: IntoIterator<Item = Node>,
        E: IntoIterator<Item = (Node, Node, Weight)>,
    {
        let mut nodes: Vec<Node> = nodes.into_iter().collect();
        if nodes.is_empty() {
            return Err(Error::EmptyGraph);
        }
        nodes.sort_unstable();
        if let Some(w) = nodes.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateNode(w[0]));
        }
        let mut raw = Vec::new();
        for (u, v, w) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let a = search(&nodes, u).ok_or(Error::UnknownNode(u))?;
            let b = search(&nodes, v).ok_or(Error::UnknownNode(v))?;
            raw.push((a as u32, b as u32, w));
        }
        Ok(Self::assemble(nodes, raw))
    }

    /// Nodes `1..=n` with the given edges; the usual shape of file input.
    pub fn with_node_count<E>(n: u32, edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = (Node, Node, Weight)>,
    {
        Self::new((1..=n).map(Node), edges)
    }

    // `nodes` sorted and distinct; raw endpoints index into it. Drops self-loops and
    // merges parallel edges.
    fn assemble(nodes: Vec<Node>, mut raw: Vec<(u32, u32, Weight)>) -> Self {
        for e in raw.iter_mut() {
            if e.0 > e.1 {
                core::mem::swap(&mut e.0, &mut e.1);
            }
        }
        raw.retain(|e| e.0 != e.1);
        raw.sort_unstable_by_key(|e| (e.0, e.1));
        let mut edges: Vec<(u32, u32, Weight)> = Vec::with_capacity(raw.len());
        for (a, b, w) in raw {
            match edges.last_mut() {
                Some(last) if last.0 == a && last.1 == b => last.2 += w,
                _ => edges.push((a, b, w)),
            }
        }
        Graph { nodes, edges }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Nodes in increasing label order.
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node_set(&self) -> NodeSet {
        self.nodes.iter().copied().collect()
    }

    pub fn contains(&self, v: Node) -> bool {
        self.index_of(v).is_some()
    }

    /// Dense index of `v` (its rank among the labels).
    pub fn index_of(&self, v: Node) -> Option<usize> {
        search(&self.nodes, v)
    }

    pub fn max_label(&self) -> Node {
        *self.nodes.last().expect("graphs are non-empty")
    }

    /// Edges as `(u, v, w)` with `u < v`, sorted by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (Node, Node, Weight)> + '_ {
        self.edges.iter().map(|&(a, b, w)| (self.nodes[a as usize], self.nodes[b as usize], w))
    }

    pub(crate) fn dense_edges(&self) -> &[(u32, u32, Weight)] {
        &self.edges
    }

    pub fn total_weight(&self) -> Weight {
        self.edges.iter().map(|e| e.2).sum()
    }

    /// Weight of the edge between `u` and `v`, zero if absent.
    pub fn max_weight(&self) -> Weight {
        self.edges.iter().map(|e| e.2).max().unwrap_or(0)
    }

    pub fn weight(&self, u: Node, v: Node) -> Weight {
        let (Some(a), Some(b)) = (self.index_of(u), self.index_of(v)) else {
            return 0;
        };
        let key = (a.min(b) as u32, a.max(b) as u32);
        self.edges.binary_search_by_key(&key, |e| (e.0, e.1)).map(|i| self.edges[i].2).unwrap_or(0)
    }

    /// Membership mask over dense indices. Fails on labels outside the graph.
    pub(crate) fn mask(&self, set: &NodeSet) -> Result<Vec<bool>> {
        let mut mask = alloc::vec![false; self.nodes.len()];
        for &v in set {
            mask[self.index_of(v).ok_or(Error::UnknownNode(v))?] = true;
        }
        Ok(mask)
    }

    pub(crate) fn crossing_weight(&self, mask: &[bool]) -> Weight {
        self.edges.iter().filter(|e| mask[e.0 as usize] != mask[e.1 as usize]).map(|e| e.2).sum()
    }

    /// Total weight of edges with exactly one endpoint in `u`.
    pub fn cut_cost(&self, u: &NodeSet) -> Result<Weight> {
        if u.is_empty() || u.len() >= self.nodes.len() {
            // A set of size n made of valid labels is V itself.
            if u.len() >= self.nodes.len() {
                self.mask(u)?;
            }
            return Err(Error::TrivialCut);
        }
        Ok(self.crossing_weight(&self.mask(u)?))
    }

    /// `G[x; s]`: keeps the nodes of `x` and merges everything else into `s`.
    pub fn contract(&self, x: &NodeSet, s: Node) -> Result<Graph> {
        if !x.contains(&s) {
            return Err(Error::NotInSet(s));
        }
        let mask = self.mask(x)?;
        Ok(self.quotient(|i, v| if mask[i] { v } else { s }))
    }

    /// Merges all of `t` into a single node called `label`.
    pub fn contract_set_to_node(&self, t: &NodeSet, label: Node) -> Result<Graph> {
        if t.is_empty() || t.len() >= self.nodes.len() {
            return Err(Error::TrivialCut);
        }
        let mask = self.mask(t)?;
        if let Some(i) = self.index_of(label) {
            if !mask[i] {
                return Err(Error::LabelCollision(label));
            }
        }
        Ok(self.quotient(|i, v| if mask[i] { label } else { v }))
    }

    /// Renames every node through `f(dense index, label)`; nodes with equal images
    /// merge, edges inside a merged group vanish and parallel edges add up.
    pub fn quotient(&self, f: impl Fn(usize, Node) -> Node) -> Graph {
        let image: Vec<Node> = self.nodes.iter().enumerate().map(|(i, &v)| f(i, v)).collect();
        let mut nodes = image.clone();
        nodes.sort_unstable();
        nodes.dedup();
        let dense: Vec<u32> = image.iter().map(|&v| search(&nodes, v).expect("image node present") as u32).collect();
        let raw = self.edges.iter().map(|&(a, b, w)| (dense[a as usize], dense[b as usize], w)).collect();
        Self::assemble(nodes, raw)
    }

    /// Builds `G[B_i; r_i]` for every `(B_i, r_i)` of a partition of the node set in a
    /// single pass over the edges. Each block must contain its root.
    pub fn split_blocks(&self, blocks: &[(&NodeSet, Node)]) -> Result<Vec<Graph>> {
        const NONE: usize = usize::MAX;
        let mut owner = alloc::vec![NONE; self.nodes.len()];
        let mut root_dense = Vec::with_capacity(blocks.len());
        let mut locals: Vec<Vec<Node>> = Vec::with_capacity(blocks.len());
        for (k, (block, root)) in blocks.iter().enumerate() {
            if !block.contains(root) {
                return Err(Error::NotInSet(*root));
            }
            for &v in block.iter() {
                let i = self.index_of(v).ok_or(Error::UnknownNode(v))?;
                if owner[i] != NONE {
                    return Err(Error::DuplicateNode(v));
                }
                owner[i] = k;
            }
            let local: Vec<Node> = block.iter().copied().collect();
            root_dense.push(search(&local, *root).expect("root in block") as u32);
            locals.push(local);
        }
        if let Some(i) = owner.iter().position(|&o| o == NONE) {
            return Err(Error::UnknownNode(self.nodes[i]));
        }
        // Position of every node inside its block's sorted node list.
        let mut local_index = alloc::vec![0u32; self.nodes.len()];
        for local in &locals {
            for (j, &v) in local.iter().enumerate() {
                local_index[self.index_of(v).expect("checked")] = j as u32;
            }
        }
        let mut raw: Vec<Vec<(u32, u32, Weight)>> = alloc::vec![Vec::new(); blocks.len()];
        for &(a, b, w) in &self.edges {
            let (ka, kb) = (owner[a as usize], owner[b as usize]);
            if ka == kb {
                raw[ka].push((local_index[a as usize], local_index[b as usize], w));
            } else {
                raw[ka].push((local_index[a as usize], root_dense[ka], w));
                raw[kb].push((local_index[b as usize], root_dense[kb], w));
            }
        }
        Ok(locals.into_iter().zip(raw).map(|(nodes, raw)| Self::assemble(nodes, raw)).collect())
    }

    /// Same nodes, every weight replaced by `f(u, v, w)`.
    pub fn map_weights(&self, mut f: impl FnMut(Node, Node, Weight) -> Weight) -> Graph {
        let edges =
            self.edges.iter().map(|&(a, b, w)| (a, b, f(self.nodes[a as usize], self.nodes[b as usize], w))).collect();
        Graph { nodes: self.nodes.clone(), edges }
    }

    /// Adds zero-weight edges between node pairs (kept merged with existing edges).
    pub fn with_extra_edges(&self, extra: &[(Node, Node)]) -> Result<Graph> {
        let mut raw = self.edges.clone();
        for &(u, v) in extra {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let a = self.index_of(u).ok_or(Error::UnknownNode(u))?;
            let b = self.index_of(v).ok_or(Error::UnknownNode(v))?;
            raw.push((a as u32, b as u32, 0));
        }
        Ok(Self::assemble(self.nodes.clone(), raw))
    }

    /// Connected components as sorted node lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Node>> {
        let n = self.nodes.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b, _) in &self.edges {
            let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: alloc::collections::BTreeMap<usize, Vec<Node>> = Default::default();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(self.nodes[i]);
        }
        groups.into_values().collect()
    }
}

fn search(nodes: &[Node], v: Node) -> Option<usize> {
    nodes.binary_search(&v).ok()
}
