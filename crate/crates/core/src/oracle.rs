//! Brute-force ground truth, deliberately independent of the flow engine: exhaustive
//! enumeration for small graphs and a dense Edmonds-Karp otherwise.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gomory_hu::GhTree;
use crate::graph::{Graph, Node, NodeSet, Weight};
use crate::named_partition::NamedPartition;
use crate::octree::Sequence;

/// Largest graph [`brute_min_cut`] accepts.
pub const ENUM_LIMIT: usize = 20;
/// Largest graph for which [`all_pairs`] enumerates instead of running flows.
pub const ALL_PAIRS_ENUM_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteCut {
    pub cost: Weight,
    /// Intersection of all minimum sink sides, itself a minimum cut.
    pub sink_side: NodeSet,
    /// Number of distinct minimum cuts.
    pub count: u64,
}

impl BruteCut {
    pub fn unique(&self) -> bool {
        self.count == 1
    }
}

/// Cost of the side given by `inside`, a mask over dense indices.
fn side_cost(g: &Graph, inside: &[bool]) -> Weight {
    g.dense_edges().iter().filter(|&&(a, b, _)| inside[a as usize] != inside[b as usize]).map(|&(_, _, w)| w).sum()
}

/// Minimum `S`-`T` cut by trying every placement of the remaining nodes.
pub fn brute_min_cut(g: &Graph, s_side: &NodeSet, t_side: &NodeSet) -> Result<BruteCut> {
    if g.node_count() > ENUM_LIMIT {
        return Err(Error::TooLarge(g.node_count(), ENUM_LIMIT));
    }
    if s_side.is_empty() || t_side.is_empty() {
        return Err(Error::EmptySide);
    }
    if let Some(&v) = s_side.intersection(t_side).next() {
        return Err(Error::OverlappingSides(v));
    }
    let mut inside = vec![false; g.node_count()];
    let mut free = Vec::new();
    for (i, v) in g.nodes().iter().enumerate() {
        if t_side.contains(v) {
            inside[i] = true;
        } else if !s_side.contains(v) {
            free.push(i);
        }
    }
    for v in s_side.iter().chain(t_side) {
        if !g.contains(*v) {
            return Err(Error::UnknownNode(*v));
        }
    }
    let mut best: Option<(Weight, Vec<bool>, u64)> = None;
    for bits in 0u64..(1u64 << free.len()) {
        for (k, &i) in free.iter().enumerate() {
            inside[i] = bits >> k & 1 == 1;
        }
        let c = side_cost(g, &inside);
        match &mut best {
            Some((b, meet, count)) if c == *b => {
                *count += 1;
                for (m, &x) in meet.iter_mut().zip(&inside) {
                    *m &= x;
                }
            }
            Some((b, _, _)) if c > *b => {}
            _ => best = Some((c, inside.clone(), 1)),
        }
    }
    let (cost, meet, count) = best.expect("at least one placement");
    let sink_side = g.nodes().iter().zip(&meet).filter(|(_, &m)| m).map(|(&v, _)| v).collect();
    Ok(BruteCut { cost, sink_side, count })
}

/// Dense Edmonds-Karp over a capacity matrix; terminals are sets joined to a super
/// source and super sink.
struct Dense {
    cap: Vec<Vec<Weight>>,
}

impl Dense {
    fn new(g: &Graph) -> Self {
        let n = g.node_count() + 2;
        let mut cap = vec![vec![0; n]; n];
        for &(a, b, w) in g.dense_edges() {
            cap[a as usize][b as usize] += w;
            cap[b as usize][a as usize] += w;
        }
        Dense { cap }
    }

    fn flow(mut self, g: &Graph, s_side: &NodeSet, t_side: &NodeSet) -> Weight {
        let n = self.cap.len();
        let (src, snk) = (n - 2, n - 1);
        let big = g.total_weight() + 1;
        for (i, v) in g.nodes().iter().enumerate() {
            if s_side.contains(v) {
                self.cap[src][i] = big;
            }
            if t_side.contains(v) {
                self.cap[i][snk] = big;
            }
        }
        let mut total = 0;
        loop {
            let mut prev = vec![usize::MAX; n];
            prev[src] = src;
            let mut queue = VecDeque::from([src]);
            while let Some(a) = queue.pop_front() {
                for b in 0..n {
                    if prev[b] == usize::MAX && self.cap[a][b] > 0 {
                        prev[b] = a;
                        queue.push_back(b);
                    }
                }
            }
            if prev[snk] == usize::MAX {
                return total;
            }
            let mut push = Weight::MAX;
            let mut v = snk;
            while v != src {
                push = push.min(self.cap[prev[v]][v]);
                v = prev[v];
            }
            let mut v = snk;
            while v != src {
                self.cap[prev[v]][v] -= push;
                self.cap[v][prev[v]] += push;
                v = prev[v];
            }
            total += push;
        }
    }
}

/// `f(S, T)` by the oracle's own max flow; works for any size.
pub fn flow_value(g: &Graph, s_side: &NodeSet, t_side: &NodeSet) -> Result<Weight> {
    if s_side.is_empty() || t_side.is_empty() {
        return Err(Error::EmptySide);
    }
    if let Some(&v) = s_side.intersection(t_side).next() {
        return Err(Error::OverlappingSides(v));
    }
    if let Some(&v) = s_side.iter().chain(t_side).find(|v| !g.contains(**v)) {
        return Err(Error::UnknownNode(v));
    }
    Ok(Dense::new(g).flow(g, s_side, t_side))
}

/// `f(u, v)` for every pair, indexed by dense position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AllPairs {
    nodes: Vec<Node>,
    value: Vec<Vec<Weight>>,
}

impl AllPairs {
    pub fn get(&self, u: Node, v: Node) -> Option<Weight> {
        let i = self.nodes.binary_search(&u).ok()?;
        let j = self.nodes.binary_search(&v).ok()?;
        (i != j).then(|| self.value[i][j])
    }
}

pub fn all_pairs(g: &Graph) -> AllPairs {
    let n = g.node_count();
    let mut value = vec![vec![Weight::MAX; n]; n];
    if n <= ALL_PAIRS_ENUM_LIMIT {
        // Node 0 always stays outside; each side is visited once.
        let mut inside = vec![false; n];
        for bits in 1u64..(1u64 << (n - 1)) {
            for (k, m) in inside[1..].iter_mut().enumerate() {
                *m = bits >> k & 1 == 1;
            }
            let c = side_cost(g, &inside);
            for i in 0..n {
                for j in 0..n {
                    if inside[i] != inside[j] && c < value[i][j] {
                        value[i][j] = c;
                    }
                }
            }
        }
    } else {
        for i in 0..n {
            for j in i + 1..n {
                let (u, v) = (g.nodes()[i], g.nodes()[j]);
                let f = Dense::new(g).flow(g, &NodeSet::from([u]), &NodeSet::from([v]));
                value[i][j] = f;
                value[j][i] = f;
            }
        }
    }
    AllPairs { nodes: g.nodes().to_vec(), value }
}

/// True iff every two members are nested or disjoint.
pub fn is_laminar(family: &[NodeSet]) -> bool {
    family
        .iter()
        .enumerate()
        .all(|(i, a)| family[i + 1..].iter().all(|b| a.is_disjoint(b) || a.is_subset(b) || b.is_subset(a)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Tree and graph have different node sets.
    NodeSets,
    /// Lightest path edge differs from `f(s, t)`.
    Value { s: Node, t: Node, tree: Weight, oracle: Weight },
    /// The side cut off by the lightest path edge does not cost `f(s, t)`.
    Cut { s: Node, t: Node, cut_cost: Weight, oracle: Weight },
    /// Representative that is the source, not in the sequence, or repeated.
    BadRep { rep: Node },
    /// Block that contains the source or an earlier representative.
    BadBlock { rep: Node, node: Node },
    /// Block is not a minimum cut for its representative.
    BlockCost { rep: Node, cost: Weight, oracle: Weight },
    /// Sequence node not covered by the block of an earlier-or-equal representative.
    Uncovered { node: Node },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    /// Pairs (tree checks) or representatives and nodes (partition checks) examined.
    pub checked: u64,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks, for every pair `s < t`, that the lightest edge on the tree path weighs
/// `f(s, t)` and that the side it cuts off costs exactly that in `g`.
pub fn verify_gh_tree(g: &Graph, t: &GhTree) -> Report {
    let mut report = Report::default();
    if t.nodes() != g.nodes() {
        report.violations.push(Violation::NodeSets);
        return report;
    }
    let truth = all_pairs(g);
    let edge_cost: Vec<Weight> =
        t.edge_cuts().into_iter().map(|(_, _, _, side)| g.cut_cost(&side).expect("proper tree side")).collect();
    let mut adj: BTreeMap<Node, Vec<(Node, usize)>> = BTreeMap::new();
    for (i, &(a, b, _)) in t.edges().iter().enumerate() {
        adj.entry(a).or_default().push((b, i));
        adj.entry(b).or_default().push((a, i));
    }
    for &s in g.nodes() {
        // Lightest edge on the path from s, first one on ties.
        let mut lightest: BTreeMap<Node, usize> = BTreeMap::new();
        let mut stack = vec![s];
        let mut seen = NodeSet::from([s]);
        while let Some(a) = stack.pop() {
            for &(b, i) in adj.get(&a).map(Vec::as_slice).unwrap_or(&[]) {
                if seen.insert(b) {
                    let best = match lightest.get(&a) {
                        Some(&j) if t.edges()[j].2 <= t.edges()[i].2 => j,
                        _ => i,
                    };
                    lightest.insert(b, best);
                    stack.push(b);
                }
            }
        }
        for (&v, &e) in lightest.range(Node(s.0 + 1)..) {
            report.checked += 1;
            let oracle = truth.get(s, v).expect("distinct graph nodes");
            let tree = t.edges()[e].2;
            if tree != oracle {
                report.violations.push(Violation::Value { s, t: v, tree, oracle });
            }
            if edge_cost[e] != oracle {
                report.violations.push(Violation::Cut { s, t: v, cut_cost: edge_cost[e], oracle });
            }
        }
    }
    report
}

/// Checks the depth-1 conditions for `np` and `seq = s v1 … vℓ`: (i) each block `S_vk`
/// is a minimum cut between `s` plus the earlier representatives and `vk`; (ii) each
/// `vk` lies in the block of some representative at or before position `k`.
pub fn verify_oc1(np: &NamedPartition, seq: &Sequence, g: &Graph) -> Report {
    let mut report = Report::default();
    let s = seq.source();
    let order = seq.as_slice();
    let mut reps: Vec<(usize, Node)> = Vec::new();
    for rep in np.reps() {
        match seq.position(rep) {
            Some(k) if k > 0 => reps.push((k, rep)),
            _ => report.violations.push(Violation::BadRep { rep }),
        }
    }
    reps.sort_unstable();
    for (idx, &(_, rep)) in reps.iter().enumerate() {
        report.checked += 1;
        let block = np.block(rep).expect("listed representative");
        let mut prefix = NodeSet::from([s]);
        prefix.extend(reps[..idx].iter().map(|&(_, r)| r));
        if let Some(&node) = block.iter().find(|v| prefix.contains(v) || !g.contains(**v)) {
            report.violations.push(Violation::BadBlock { rep, node });
            continue;
        }
        let cost = g.cut_cost(block).expect("block misses the source and lies in the graph");
        let oracle = flow_value(g, &prefix, &NodeSet::from([rep])).expect("disjoint terminals");
        if cost != oracle {
            report.violations.push(Violation::BlockCost { rep, cost, oracle });
        }
    }
    for (k, &v) in order.iter().enumerate().skip(1) {
        report.checked += 1;
        let covered = np.rep_of(v).and_then(|r| seq.position(r)).is_some_and(|j| j > 0 && j <= k);
        if !covered {
            report.violations.push(Violation::Uncovered { node: v });
        }
    }
    report
}
