//! Divide-and-conquer ordered cuts.
//!
//! Split `φ = αβ` with `|α| = ⌈(|φ|+1)/2⌉`, solve `α` on the whole graph, then for
//! every `v ∈ α` refine its block: cut `v` away from the `β` nodes it owns with a
//! sink-minimal cut `(S, T)`, recurse on `v(β ∩ T)` inside `G[T ∪ {v}; v]`, and glue.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{compose, splice, OcTree, Sequence};
use crate::error::{Error, Result};
use crate::graph::{Graph, Node, NodeSet};
use crate::maxflow::{latest_min_cut, min_cut_minimal_sink, WorkCounter};

/// A valid ordered-cuts tree for `phi` on `g`.
pub fn ordered_cuts_dc(phi: &Sequence, g: &Graph, counter: &mut WorkCounter) -> Result<OcTree> {
    check(phi, g)?;
    solve(phi.as_slice(), g, counter, false)
}

/// Same result as [`ordered_cuts_dc`]; the per-block refinements run on the rayon pool,
/// each with its own counter shard.
#[cfg(feature = "parallel")]
pub fn ordered_cuts_dc_parallel(phi: &Sequence, g: &Graph, counter: &mut WorkCounter) -> Result<OcTree> {
    check(phi, g)?;
    solve(phi.as_slice(), g, counter, true)
}

fn check(phi: &Sequence, g: &Graph) -> Result<()> {
    match phi.as_slice().iter().find(|&&v| !g.contains(v)) {
        Some(&v) => Err(Error::UnknownNode(v)),
        None => Ok(()),
    }
}

fn solve(phi: &[Node], g: &Graph, counter: &mut WorkCounter, parallel: bool) -> Result<OcTree> {
    match phi.len() {
        0 => Err(Error::EmptySequence),
        1 => Ok(OcTree::trivial(phi[0], g.node_set())),
        2 => {
            let cut = latest_min_cut(g, phi[0], phi[1], counter)?;
            let rest = g.node_set().difference(&cut.members).copied().collect();
            OcTree::from_parts(Sequence(phi.to_vec()), &[None, Some(phi[0])], vec![rest, cut.members])
        }
        len => {
            let (alpha, beta) = phi.split_at((len + 2) / 2);
            let outer = solve(alpha, g, counter, parallel)?;
            let mut owned: Vec<Vec<Node>> = vec![Vec::new(); alpha.len()];
            for &w in beta {
                let k = outer.blocks.iter().position(|b| b.contains(&w)).expect("blocks cover V");
                owned[k].push(w);
            }
            let parts: Vec<(&NodeSet, Node)> = outer.blocks.iter().zip(alpha).map(|(b, &v)| (b, v)).collect();
            let pieces = g.split_blocks(&parts)?;
            let jobs: Vec<Job> =
                alpha.iter().zip(owned).zip(pieces).map(|((&v, beta_v), h)| Job { v, beta_v, h }).collect();
            let inner = run_jobs(jobs, counter, parallel)?;
            compose(&Sequence(phi.to_vec()), &outer, &inner)
        }
    }
}

struct Job {
    v: Node,
    beta_v: Vec<Node>,
    h: Graph,
}

impl Job {
    fn run(self, counter: &mut WorkCounter, parallel: bool) -> Result<OcTree> {
        let Job { v, beta_v, h } = self;
        if beta_v.is_empty() {
            return Ok(OcTree::trivial(v, h.node_set()));
        }
        let sinks: NodeSet = beta_v.iter().copied().collect();
        let cut = min_cut_minimal_sink(&h, &NodeSet::from([v]), &sinks, counter)?;
        let mut t_side = cut.sink_side;
        let s_side: NodeSet = h.node_set().difference(&t_side).copied().collect();
        t_side.insert(v);
        let h_t = h.contract(&t_side, v)?;
        let mut sub = Vec::with_capacity(beta_v.len() + 1);
        sub.push(v);
        sub.extend(beta_v.iter().copied().filter(|w| t_side.contains(w)));
        let t_tree = solve(&sub, &h_t, counter, parallel)?;
        splice(&Sequence(sub), &OcTree::trivial(v, s_side), &t_tree)
    }
}

fn run_jobs(jobs: Vec<Job>, counter: &mut WorkCounter, parallel: bool) -> Result<BTreeMap<Node, OcTree>> {
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        let done: Vec<(Node, Result<OcTree>, WorkCounter)> = jobs
            .into_par_iter()
            .map(|job| {
                let mut shard = WorkCounter::new();
                let v = job.v;
                let tree = job.run(&mut shard, true);
                (v, tree, shard)
            })
            .collect();
        let mut out = BTreeMap::new();
        for (v, tree, shard) in done {
            counter.merge(&shard);
            out.insert(v, tree?);
        }
        return Ok(out);
    }
    let mut out = BTreeMap::new();
    for job in jobs {
        let v = job.v;
        out.insert(v, job.run(counter, parallel)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri() -> Graph {
        Graph::with_node_count(3, [(Node(1), Node(2), 1), (Node(1), Node(3), 2), (Node(2), Node(3), 3)]).unwrap()
    }

    fn seq(xs: &[u32]) -> Sequence {
        Sequence::new(xs.iter().map(|&x| Node(x)).collect()).unwrap()
    }

    #[test]
    fn triangle_sequence() {
        let mut c = WorkCounter::new();
        let t = ordered_cuts_dc(&seq(&[1, 2, 3]), &tri(), &mut c).unwrap();
        assert_eq!(t.down_set(Node(2)).unwrap(), [Node(2), Node(3)].into());
        assert_eq!(t.down_set(Node(3)).unwrap(), [Node(3)].into());
        assert!(t.is_valid(&tri()));
    }

    #[test]
    fn single_node_sequence_is_trivial() {
        let mut c = WorkCounter::new();
        let t = ordered_cuts_dc(&seq(&[2]), &tri(), &mut c).unwrap();
        assert_eq!(t, OcTree::trivial(Node(2), tri().node_set()));
        assert_eq!(c.calls, 0);
    }

    #[test]
    fn unknown_node_rejected() {
        let mut c = WorkCounter::new();
        assert_eq!(ordered_cuts_dc(&seq(&[1, 7]), &tri(), &mut c), Err(Error::UnknownNode(Node(7))));
    }

    #[test]
    fn longer_path_sequence_is_valid() {
        let edges: Vec<_> = (1..8).map(|i| (Node(i), Node(i + 1), (i as u128 % 3) + 1)).collect();
        let g = Graph::with_node_count(8, edges).unwrap();
        let mut c = WorkCounter::new();
        let t = ordered_cuts_dc(&seq(&[4, 1, 8, 2, 6, 3, 7, 5]), &g, &mut c).unwrap();
        assert_eq!(t.validate(&g), Ok(()));
    }
}
