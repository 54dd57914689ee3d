//! Exact minimum `S`-`T` cuts.
//!
//! The engine is Dinic's algorithm on a network where the source side and the sink
//! side are first contracted into two super-terminals. After the flow saturates, the
//! residual network decides which minimum cut is reported:
//!
//! * [`min_cut`] returns the largest minimum sink side (complement of the nodes
//!   reachable from `S`),
//! * [`min_cut_minimal_sink`] returns the smallest one (nodes that can still reach `T`).
//!
//! Both sets are independent of which maximum flow Dinic happens to find, so results
//! are deterministic.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::AddAssign;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Cut, Graph, Node, NodeSet, Weight};

/// Counts min-cut invocations and the sizes of the graphs they ran on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkCounter {
    pub calls: u64,
    pub nodes_total: u64,
    pub edges_total: u64,
}

impl WorkCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, g: &Graph) {
        self.calls += 1;
        self.nodes_total += g.node_count() as u64;
        self.edges_total += g.edge_count() as u64;
    }

    pub fn merge(&mut self, other: &WorkCounter) {
        self.calls += other.calls;
        self.nodes_total += other.nodes_total;
        self.edges_total += other.edges_total;
    }
}

impl AddAssign for WorkCounter {
    fn add_assign(&mut self, rhs: Self) {
        self.merge(&rhs);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinCutResult {
    pub cost: Weight,
    /// The cut `U` with `T ⊆ U ⊆ V − S`.
    pub sink_side: NodeSet,
}

impl MinCutResult {
    pub fn into_cut(self) -> Cut {
        Cut { members: self.sink_side, cost: self.cost }
    }
}

/// A minimum `S`-`T` cut; the sink side is the largest among all minimum cuts.
pub fn min_cut(g: &Graph, s_side: &NodeSet, t_side: &NodeSet, counter: &mut WorkCounter) -> Result<MinCutResult> {
    let mut run = FlowRun::new(g, s_side, t_side)?;
    counter.record(g);
    let cost = run.network.max_flow(SOURCE, SINK);
    let reach = run.network.reachable_from(SOURCE);
    Ok(MinCutResult { cost, sink_side: run.collect(|x| !reach[x]) })
}

/// A minimum `S`-`T` cut whose sink side is inclusion-minimal.
pub fn min_cut_minimal_sink(
    g: &Graph,
    s_side: &NodeSet,
    t_side: &NodeSet,
    counter: &mut WorkCounter,
) -> Result<MinCutResult> {
    let mut run = FlowRun::new(g, s_side, t_side)?;
    counter.record(g);
    let cost = run.network.max_flow(SOURCE, SINK);
    let reach = run.network.reaching(SINK);
    Ok(MinCutResult { cost, sink_side: run.collect(|x| reach[x]) })
}

/// The latest `u`-`v` cut `C_uv`: the inclusion-minimal minimum cut containing `v`.
pub fn latest_min_cut(g: &Graph, u: Node, v: Node, counter: &mut WorkCounter) -> Result<Cut> {
    if u == v {
        return Err(Error::SameTerminal);
    }
    let s = NodeSet::from([u]);
    let t = NodeSet::from([v]);
    Ok(min_cut_minimal_sink(g, &s, &t, counter)?.into_cut())
}

const SOURCE: usize = 0;
const SINK: usize = 1;

struct FlowRun<'g> {
    graph: &'g Graph,
    // Network vertex of each dense graph index.
    vertex: Vec<usize>,
    network: Network,
}

impl<'g> FlowRun<'g> {
    fn new(g: &'g Graph, s_side: &NodeSet, t_side: &NodeSet) -> Result<Self> {
        if s_side.is_empty() || t_side.is_empty() {
            return Err(Error::EmptySide);
        }
        if let Some(&v) = s_side.intersection(t_side).next() {
            return Err(Error::OverlappingSides(v));
        }
        let s_mask = g.mask(s_side)?;
        let t_mask = g.mask(t_side)?;
        let mut next = 2;
        let vertex: Vec<usize> = (0..g.node_count())
            .map(|i| {
                if s_mask[i] {
                    SOURCE
                } else if t_mask[i] {
                    SINK
                } else {
                    next += 1;
                    next - 1
                }
            })
            .collect();
        let mut arcs: Vec<(usize, usize, Weight)> = g
            .dense_edges()
            .iter()
            .map(|&(a, b, w)| {
                let (x, y) = (vertex[a as usize], vertex[b as usize]);
                (x.min(y), x.max(y), w)
            })
            .filter(|&(x, y, w)| x != y && w > 0)
            .collect();
        // Terminal contraction can create parallel edges.
        arcs.sort_unstable_by_key(|e| (e.0, e.1));
        let mut network = Network::new(next);
        let mut pending: Option<(usize, usize, Weight)> = None;
        for (x, y, w) in arcs {
            match pending.as_mut() {
                Some(p) if p.0 == x && p.1 == y => p.2 += w,
                _ => {
                    if let Some((px, py, pw)) = pending.take() {
                        network.add_edge(px, py, pw);
                    }
                    pending = Some((x, y, w));
                }
            }
        }
        if let Some((px, py, pw)) = pending {
            network.add_edge(px, py, pw);
        }
        Ok(FlowRun { graph: g, vertex, network })
    }

    fn collect(&mut self, keep: impl Fn(usize) -> bool) -> NodeSet {
        self.graph.nodes().iter().enumerate().filter(|&(i, _)| keep(self.vertex[i])).map(|(_, &v)| v).collect()
    }
}

#[derive(Clone, Copy)]
struct Arc {
    to: usize,
    residual: Weight,
    rev: usize,
}

/// Undirected flow network: each edge is a pair of opposite arcs that are each
/// other's reverse, both starting with the full capacity.
struct Network {
    adj: Vec<Vec<Arc>>,
    level: Vec<u32>,
    cursor: Vec<usize>,
}

impl Network {
    fn new(n: usize) -> Self {
        Network { adj: vec![Vec::new(); n], level: vec![0; n], cursor: vec![0; n] }
    }

    fn add_edge(&mut self, x: usize, y: usize, w: Weight) {
        let (rx, ry) = (self.adj[y].len(), self.adj[x].len());
        self.adj[x].push(Arc { to: y, residual: w, rev: rx });
        self.adj[y].push(Arc { to: x, residual: w, rev: ry });
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = u32::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for a in &self.adj[x] {
                if a.residual > 0 && self.level[a.to] == u32::MAX {
                    self.level[a.to] = self.level[x] + 1;
                    queue.push_back(a.to);
                }
            }
        }
        self.level[t] != u32::MAX
    }

    fn augment(&mut self, x: usize, t: usize, limit: Weight) -> Weight {
        if x == t {
            return limit;
        }
        while self.cursor[x] < self.adj[x].len() {
            let a = self.adj[x][self.cursor[x]];
            if a.residual > 0 && self.level[a.to] == self.level[x] + 1 {
                let pushed = self.augment(a.to, t, limit.min(a.residual));
                if pushed > 0 {
                    self.adj[x][self.cursor[x]].residual -= pushed;
                    self.adj[a.to][a.rev].residual += pushed;
                    return pushed;
                }
            }
            self.cursor[x] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> Weight {
        let mut flow = 0;
        while self.bfs(s, t) {
            self.cursor.iter_mut().for_each(|c| *c = 0);
            loop {
                let pushed = self.augment(s, t, Weight::MAX);
                if pushed == 0 {
                    break;
                }
                flow += pushed;
            }
        }
        flow
    }

    fn reachable_from(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for a in &self.adj[x] {
                if a.residual > 0 && !seen[a.to] {
                    seen[a.to] = true;
                    stack.push(a.to);
                }
            }
        }
        seen
    }

    fn reaching(&self, t: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[t] = true;
        let mut stack = vec![t];
        while let Some(y) = stack.pop() {
            for a in &self.adj[y] {
                // a: y -> x; its reverse x -> y carries the residual we need.
                if !seen[a.to] && self.adj[a.to][a.rev].residual > 0 {
                    seen[a.to] = true;
                    stack.push(a.to);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[u32]) -> NodeSet {
        xs.iter().map(|&x| Node(x)).collect()
    }

    fn g(n: u32, edges: &[(u32, u32, Weight)]) -> Graph {
        Graph::with_node_count(n, edges.iter().map(|&(u, v, w)| (Node(u), Node(v), w))).unwrap()
    }

    fn tri() -> Graph {
        g(3, &[(1, 2, 1), (1, 3, 2), (2, 3, 3)])
    }

    fn p3() -> Graph {
        g(3, &[(1, 2, 3), (2, 3, 2)])
    }

    #[test]
    fn min_cut_examples() {
        let mut c = WorkCounter::new();
        let r = min_cut(&tri(), &set(&[1]), &set(&[2]), &mut c).unwrap();
        assert_eq!((r.cost, r.sink_side), (3, set(&[2, 3])));
        let r = min_cut(&p3(), &set(&[1]), &set(&[3]), &mut c).unwrap();
        assert_eq!((r.cost, r.sink_side), (2, set(&[3])));
        let r = min_cut(&tri(), &set(&[1, 2]), &set(&[3]), &mut c).unwrap();
        assert_eq!((r.cost, r.sink_side), (5, set(&[3])));
        assert_eq!(c, WorkCounter { calls: 3, nodes_total: 9, edges_total: 8 });
    }

    #[test]
    fn latest_cut_examples() {
        let mut c = WorkCounter::new();
        let cut = latest_min_cut(&tri(), Node(1), Node(2), &mut c).unwrap();
        assert_eq!((cut.members, cut.cost), (set(&[2, 3]), 3));
        let g2 = g(2, &[(1, 2, 5)]);
        assert_eq!(latest_min_cut(&g2, Node(1), Node(2), &mut c).unwrap().members, set(&[2]));
        let cut = latest_min_cut(&p3(), Node(1), Node(2), &mut c).unwrap();
        assert_eq!((cut.members, cut.cost), (set(&[2, 3]), 3));
        assert_eq!(latest_min_cut(&p3(), Node(1), Node(1), &mut c), Err(Error::SameTerminal));
    }

    #[test]
    fn minimal_sink_examples() {
        let mut c = WorkCounter::new();
        let r = min_cut_minimal_sink(&tri(), &set(&[1]), &set(&[2]), &mut c).unwrap();
        assert_eq!(r.sink_side, set(&[2, 3]));
        // star: center 1, leaves 2 (weight 2) and 3 (weight 3)
        let star = g(3, &[(1, 2, 2), (1, 3, 3)]);
        let r = min_cut_minimal_sink(&star, &set(&[1, 3]), &set(&[2]), &mut c).unwrap();
        assert_eq!((r.cost, r.sink_side), (2, set(&[2])));
        let r = min_cut_minimal_sink(&p3(), &set(&[1]), &set(&[3]), &mut c).unwrap();
        assert_eq!(r.sink_side, set(&[3]));
    }

    #[test]
    fn minimal_and_maximal_sides_differ_on_ties() {
        // Path 1-2-3 with equal weights: {3} and {2,3} are both minimum 1-3 cuts.
        let path = g(3, &[(1, 2, 4), (2, 3, 4)]);
        let mut c = WorkCounter::new();
        let small = min_cut_minimal_sink(&path, &set(&[1]), &set(&[3]), &mut c).unwrap();
        let large = min_cut(&path, &set(&[1]), &set(&[3]), &mut c).unwrap();
        assert_eq!(small.sink_side, set(&[3]));
        assert_eq!(large.sink_side, set(&[2, 3]));
        assert_eq!(small.cost, large.cost);
    }

    #[test]
    fn side_errors() {
        let mut c = WorkCounter::new();
        assert_eq!(min_cut(&tri(), &set(&[]), &set(&[2]), &mut c), Err(Error::EmptySide));
        assert_eq!(min_cut(&tri(), &set(&[1, 2]), &set(&[2]), &mut c), Err(Error::OverlappingSides(Node(2))));
        assert_eq!(c.calls, 0);
    }

    #[test]
    fn disconnected_sink_costs_zero() {
        let g = g(4, &[(1, 2, 3)]);
        let mut c = WorkCounter::new();
        let r = min_cut_minimal_sink(&g, &set(&[1]), &set(&[4]), &mut c).unwrap();
        assert_eq!((r.cost, r.sink_side), (0, set(&[4])));
    }
}
