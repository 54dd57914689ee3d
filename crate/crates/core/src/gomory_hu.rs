//! Partition trees, auxiliary graphs and the Gomory-Hu driver.
//!
//! [`gh_generalized`] repeatedly picks the largest supernode `X`, builds the auxiliary
//! graph `H = G[T, X]` and asks a [`SplitStrategy`] for a source `s` and a laminar family
//! of minimum `s`-`t` cuts of `H`. Each set splits `X`; the classical algorithm is the
//! special case of a singleton family.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Cut, Graph, Node, NodeSet, Weight};
use crate::maxflow::{latest_min_cut, WorkCounter};

/// Spanning tree over a partition of the node set. Supernodes are addressed by index;
/// splitting keeps the index for the part containing the source and appends the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTree {
    supernodes: Vec<NodeSet>,
    edges: Vec<(usize, usize, Weight)>,
}

/// `H = G[T, X]` together with the tree neighbor behind every contracted node `v_Y`.
#[derive(Clone, Debug)]
pub struct Auxiliary {
    pub graph: Graph,
    pub branch: BTreeMap<Node, usize>,
}

impl PartitionTree {
    /// The one-supernode tree `({V}, ∅)`.
    pub fn trivial(g: &Graph) -> Self {
        PartitionTree { supernodes: vec![g.node_set()], edges: Vec::new() }
    }

    /// Checks that the supernodes are non-empty and disjoint and that the edges form a
    /// spanning tree on them.
    pub fn from_parts(supernodes: Vec<NodeSet>, edges: Vec<(usize, usize, Weight)>) -> Result<Self> {
        let mut seen = NodeSet::new();
        for x in &supernodes {
            if x.is_empty() {
                return Err(Error::EmptySide);
            }
            if let Some(&v) = x.iter().find(|v| !seen.insert(**v)) {
                return Err(Error::DuplicateNode(v));
            }
        }
        let k = supernodes.len();
        if edges.len() + 1 != k || edges.iter().any(|&(a, b, _)| a >= k || b >= k || a == b) {
            return Err(Error::NotATree);
        }
        let t = PartitionTree { supernodes, edges };
        if t.reach(0, None).iter().any(|r| !r) {
            return Err(Error::NotATree);
        }
        Ok(t)
    }

    pub fn supernodes(&self) -> &[NodeSet] {
        &self.supernodes
    }

    pub fn edges(&self) -> &[(usize, usize, Weight)] {
        &self.edges
    }

    pub fn supernode_of(&self, x: &NodeSet) -> Option<usize> {
        self.supernodes.iter().position(|y| y == x)
    }

    pub fn is_complete(&self) -> bool {
        self.supernodes.iter().all(|x| x.len() == 1)
    }

    // Supernodes reachable from `start` without passing through `blocked`.
    fn reach(&self, start: usize, blocked: Option<usize>) -> Vec<bool> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.supernodes.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            for &b in &adj[a] {
                if !seen[b] && Some(b) != blocked {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        seen
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.supernodes.len()];
        for &(a, b, _) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Contracts every branch hanging off supernode `x` to a fresh node labelled above
    /// `g.max_label()`, in the order of the tree edges.
    pub fn auxiliary_graph(&self, g: &Graph, x: usize) -> Result<Auxiliary> {
        if x >= self.supernodes.len() {
            return Err(Error::Mismatch("no such supernode"));
        }
        let mut owner = vec![usize::MAX; g.node_count()];
        for (k, set) in self.supernodes.iter().enumerate() {
            for &v in set {
                owner[g.index_of(v).ok_or(Error::UnknownNode(v))?] = k;
            }
        }
        if let Some(i) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::UnknownNode(g.nodes()[i]));
        }
        let mut label = vec![None; self.supernodes.len()];
        let mut branch = BTreeMap::new();
        let mut next = g.max_label().0 + 1;
        for &(a, b, _) in &self.edges {
            let y = match (a == x, b == x) {
                (true, _) => b,
                (_, true) => a,
                _ => continue,
            };
            let v_y = Node(next);
            next += 1;
            for (k, inside) in self.reach(y, Some(x)).into_iter().enumerate() {
                if inside {
                    label[k] = Some(v_y);
                }
            }
            branch.insert(v_y, y);
        }
        let graph = g.quotient(|i, v| if owner[i] == x { v } else { label[owner[i]].expect("every branch labelled") });
        Ok(Auxiliary { graph, branch })
    }

    /// Once every supernode is a singleton the tree is a spanning tree on `V`.
    pub fn into_gh_tree(self) -> Result<GhTree> {
        if !self.is_complete() {
            return Err(Error::Mismatch("partition tree is not complete"));
        }
        let single = |k: usize| *self.supernodes[k].iter().next().expect("non-empty");
        let nodes = self.supernodes.iter().map(|x| *x.iter().next().expect("non-empty")).collect();
        let edges = self.edges.iter().map(|&(a, b, w)| (single(a), single(b), w)).collect();
        GhTree::new(nodes, edges)
    }
}

/// Weighted spanning tree on `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhTree {
    nodes: Vec<Node>,
    edges: Vec<(Node, Node, Weight)>,
}

impl GhTree {
    /// Checks that `edges` form a spanning tree on `nodes`. Edges are normalized to
    /// `(min, max, w)` and sorted.
    pub fn new(mut nodes: Vec<Node>, edges: Vec<(Node, Node, Weight)>) -> Result<Self> {
        nodes.sort_unstable();
        if nodes.is_empty() {
            return Err(Error::EmptyGraph);
        }
        if let Some(w) = nodes.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateNode(w[0]));
        }
        let mut edges: Vec<_> = edges.into_iter().map(|(a, b, w)| (a.min(b), a.max(b), w)).collect();
        edges.sort_unstable();
        for &(a, b, _) in &edges {
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            for v in [a, b] {
                if nodes.binary_search(&v).is_err() {
                    return Err(Error::UnknownNode(v));
                }
            }
        }
        let t = GhTree { nodes, edges };
        if t.edges.len() + 1 != t.nodes.len() || t.component(t.nodes[0], None).len() != t.nodes.len() {
            return Err(Error::NotATree);
        }
        Ok(t)
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(Node, Node, Weight)] {
        &self.edges
    }

    // Neighbors of every node with the index of the connecting edge.
    fn adjacency(&self) -> BTreeMap<Node, Vec<(Node, usize)>> {
        let mut adj: BTreeMap<Node, Vec<(Node, usize)>> = self.nodes.iter().map(|&v| (v, Vec::new())).collect();
        for (i, &(a, b, _)) in self.edges.iter().enumerate() {
            adj.get_mut(&a).expect("checked endpoint").push((b, i));
            adj.get_mut(&b).expect("checked endpoint").push((a, i));
        }
        adj
    }

    // Nodes reachable from `v` with edge number `skip` removed.
    fn component(&self, v: Node, skip: Option<usize>) -> NodeSet {
        let adj = self.adjacency();
        let mut out = NodeSet::from([v]);
        let mut stack = vec![v];
        while let Some(a) = stack.pop() {
            for &(b, i) in &adj[&a] {
                if Some(i) != skip && out.insert(b) {
                    stack.push(b);
                }
            }
        }
        out
    }

    /// Edge indices on the tree path from `s` to `t`, in order.
    fn path(&self, s: Node, t: Node) -> Vec<usize> {
        let adj = self.adjacency();
        let mut via: BTreeMap<Node, (Node, usize)> = BTreeMap::new();
        let mut stack = vec![s];
        while let Some(a) = stack.pop() {
            if a == t {
                break;
            }
            for &(b, i) in &adj[&a] {
                if b != s && !via.contains_key(&b) {
                    via.insert(b, (a, i));
                    stack.push(b);
                }
            }
        }
        let mut path = Vec::new();
        let mut cur = t;
        while cur != s {
            let (prev, i) = via[&cur];
            path.push(i);
            cur = prev;
        }
        path.reverse();
        path
    }

    /// `f(s, t)` and a minimum `s`-`t` cut read off the tree: remove the lightest edge on
    /// the path (first one from `s` on ties) and take the side containing `t`.
    pub fn tree_query(&self, s: Node, t: Node) -> Result<Cut> {
        if s == t {
            return Err(Error::SameTerminal);
        }
        for v in [s, t] {
            if self.nodes.binary_search(&v).is_err() {
                return Err(Error::UnknownNode(v));
            }
        }
        let path = self.path(s, t);
        let &lightest =
            path.iter().min_by_key(|&&i| self.edges[i].2).expect("distinct nodes are joined by a non-empty path");
        Ok(Cut { members: self.component(t, Some(lightest)), cost: self.edges[lightest].2 })
    }

    /// For every tree edge, the side containing its larger endpoint.
    pub fn edge_cuts(&self) -> Vec<(Node, Node, Weight, NodeSet)> {
        self.edges.iter().enumerate().map(|(i, &(a, b, w))| (a, b, w, self.component(b, Some(i)))).collect()
    }
}

/// Output of one split call: a source in `X` and a laminar family of subsets of
/// `V_H − {s}`, each meeting `X` and each a minimum `s`-`t` cut of `H` for some `t ∈ X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub source: Node,
    pub family: Vec<NodeSet>,
    /// Random restarts the strategy needed internally.
    pub attempts: u32,
}

pub trait SplitStrategy {
    fn split(&mut self, h: &Graph, x: &NodeSet, counter: &mut WorkCounter) -> Result<Split>;
}

/// One latest minimum cut between the two smallest labels of `X`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ClassicSplit;

impl SplitStrategy for ClassicSplit {
    fn split(&mut self, h: &Graph, x: &NodeSet, counter: &mut WorkCounter) -> Result<Split> {
        let mut it = x.iter().copied();
        let (Some(s), Some(t)) = (it.next(), it.next()) else {
            return Err(Error::TrivialCut);
        };
        let cut = latest_min_cut(h, s, t, counter)?;
        Ok(Split { source: s, family: vec![cut.members], attempts: 1 })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhRun {
    pub tree: GhTree,
    /// `attempts` of every accepted split call, in call order.
    pub split_attempts: Vec<u32>,
    /// Total `(nodes, edges)` of the auxiliary graphs handed to the strategy, per depth
    /// of the supernode being split.
    pub depth_load: Vec<(u64, u64)>,
    /// Strategy outputs rejected by the driver's structural checks.
    pub rejected: u32,
}

/// How often a structurally invalid family is retried before giving up.
pub const MAX_REJECTIONS: u32 = 64;

pub fn gomory_hu_classic(g: &Graph, counter: &mut WorkCounter) -> Result<GhTree> {
    Ok(gh_generalized(g, &mut ClassicSplit, counter)?.tree)
}

pub fn gh_generalized<S: SplitStrategy + ?Sized>(
    g: &Graph,
    strategy: &mut S,
    counter: &mut WorkCounter,
) -> Result<GhRun> {
    let mut tree = PartitionTree::trivial(g);
    let mut depth = vec![0usize];
    let mut run_attempts = Vec::new();
    let mut depth_load: Vec<(u64, u64)> = Vec::new();
    let mut rejected = 0;
    loop {
        let pick = (0..tree.supernodes.len()).filter(|&k| tree.supernodes[k].len() >= 2).max_by(|&a, &b| {
            let (xa, xb) = (&tree.supernodes[a], &tree.supernodes[b]);
            xa.len().cmp(&xb.len()).then_with(|| xb.first().cmp(&xa.first()))
        });
        let Some(x) = pick else { break };
        let aux = tree.auxiliary_graph(g, x)?;
        let xs = tree.supernodes[x].clone();
        let d = depth[x];
        if depth_load.len() <= d {
            depth_load.resize(d + 1, (0, 0));
        }
        depth_load[d].0 += aux.graph.node_count() as u64;
        depth_load[d].1 += aux.graph.edge_count() as u64;
        let split = loop {
            let split = strategy.split(&aux.graph, &xs, counter)?;
            if well_formed(&split, &aux.graph, &xs) {
                break split;
            }
            rejected += 1;
            if rejected > MAX_REJECTIONS {
                return Err(Error::AttemptCapExceeded(MAX_REJECTIONS));
            }
        };
        run_attempts.push(split.attempts);
        apply_split(&mut tree, &mut depth, x, aux, split)?;
    }
    Ok(GhRun { tree: tree.into_gh_tree()?, split_attempts: run_attempts, depth_load, rejected })
}

fn well_formed(split: &Split, h: &Graph, x: &NodeSet) -> bool {
    let s = split.source;
    !split.family.is_empty()
        && x.contains(&s)
        && split
            .family
            .iter()
            .all(|set| !set.contains(&s) && set.iter().all(|&v| h.contains(v)) && set.iter().any(|v| x.contains(v)))
        && laminar(&split.family)
}

pub(crate) fn laminar(family: &[NodeSet]) -> bool {
    family
        .iter()
        .enumerate()
        .all(|(i, a)| family[i + 1..].iter().all(|b| a.is_disjoint(b) || a.is_subset(b) || b.is_subset(a)))
}

fn apply_split(tree: &mut PartitionTree, depth: &mut Vec<usize>, x: usize, aux: Auxiliary, split: Split) -> Result<()> {
    let Auxiliary { graph: mut h, mut branch } = aux;
    let child_depth = depth[x] + 1;
    depth[x] = child_depth;
    let mut next = h.max_label().0 + 1;
    let mut family = split.family;
    family.sort_by_key(|s| s.len());
    for i in 0..family.len() {
        let set = core::mem::take(&mut family[i]);
        let b_part: NodeSet = tree.supernodes[x].intersection(&set).copied().collect();
        if b_part.is_empty() {
            // Possible only when a strict superset cut ties with an inner one.
            continue;
        }
        // Earlier contractions merged sets nested in or disjoint from `set`, so its
        // cost is the same as in the auxiliary graph the strategy saw.
        let weight = h.cut_cost(&set)?;
        let b = tree.supernodes.len();
        tree.supernodes[x].retain(|v| !set.contains(v));
        tree.supernodes.push(b_part);
        depth.push(child_depth);
        for e in tree.edges.iter_mut() {
            let y = match (e.0 == x, e.1 == x) {
                (true, _) => e.1,
                (_, true) => e.0,
                _ => continue,
            };
            let moves = branch.iter().any(|(v_y, &yy)| yy == y && set.contains(v_y));
            if moves {
                if e.0 == x {
                    e.0 = b;
                } else {
                    e.1 = b;
                }
            }
        }
        tree.edges.push((x, b, weight));
        let v_b = Node(next);
        next += 1;
        branch.retain(|v, _| !set.contains(v));
        branch.insert(v_b, b);
        h = h.contract_set_to_node(&set, v_b)?;
        for later in family[i + 1..].iter_mut() {
            if set.is_subset(later) {
                later.retain(|v| !set.contains(v));
                later.insert(v_b);
            }
        }
    }
    Ok(())
}
