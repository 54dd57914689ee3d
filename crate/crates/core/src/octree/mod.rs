//! Ordered-cuts trees.
//!
//! For a sequence `φ = s v1 … vℓ` an [`OcTree`] stores a partition `Ω` of the node set
//! with one sequence node per block, plus a parent pointer from every non-source
//! sequence node to an earlier one. The down-set `[vi]↓` (union of the blocks in the
//! subtree of `vi`) is meant to be a minimum `{s, v1, …, vi−1}`-`vi` cut; all ℓ prefix
//! cuts are stored in `O(n)` space.
//!
//! Besides the structure itself this module holds the local operations on it (leaf
//! removal, gluing of sub-solutions, source-cut certification, depth-1 reduction).
//! The divide-and-conquer solver lives in [`solver`].

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::{Cut, Graph, Node, NodeSet, Weight};
use crate::maxflow::{min_cut, WorkCounter};
use crate::named_partition::NamedPartition;

pub mod solver;

pub use solver::ordered_cuts_dc;
#[cfg(feature = "parallel")]
pub use solver::ordered_cuts_dc_parallel;

/// Distinct nodes; the first one is the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequence(Vec<Node>);

impl Sequence {
    pub fn new(nodes: Vec<Node>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::EmptySequence);
        }
        let mut sorted = nodes.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateNode(w[0]));
        }
        Ok(Sequence(nodes))
    }

    /// `source` followed by `rest`.
    pub fn with_source(source: Node, rest: &[Node]) -> Result<Self> {
        let mut nodes = Vec::with_capacity(rest.len() + 1);
        nodes.push(source);
        nodes.extend_from_slice(rest);
        Self::new(nodes)
    }

    pub fn source(&self) -> Node {
        self.0[0]
    }

    pub fn as_slice(&self) -> &[Node] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn position(&self, v: Node) -> Option<usize> {
        self.0.iter().position(|&w| w == v)
    }

    /// Subsequence of nodes that belong to `set`, in sequence order.
    pub fn restrict(&self, set: &NodeSet) -> Vec<Node> {
        self.0.iter().copied().filter(|v| set.contains(v)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OcTree {
    phi: Sequence,
    // parent[i] is a position < i; None only at position 0.
    parent: Vec<Option<usize>>,
    blocks: Vec<NodeSet>,
}

/// Why [`OcTree::validate`] rejected a tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Defect {
    /// Block of the sequence node does not contain it.
    MissingSequenceNode(Node),
    /// A block holds a second sequence node.
    ExtraSequenceNode {
        block_of: Node,
        node: Node,
    },
    Overlap(Node),
    Uncovered(Node),
    UnknownNode(Node),
    /// The down-set is not a prefix-vs-node cut at all.
    NotACut(Node),
    CostMismatch {
        node: Node,
        cost: Weight,
        optimum: Weight,
    },
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::MissingSequenceNode(v) => write!(f, "block of {v} does not contain it"),
            Defect::ExtraSequenceNode { block_of, node } => {
                write!(f, "block of {block_of} also holds sequence node {node}")
            }
            Defect::Overlap(v) => write!(f, "node {v} lies in two blocks"),
            Defect::Uncovered(v) => write!(f, "node {v} lies in no block"),
            Defect::UnknownNode(v) => write!(f, "node {v} is not in the graph"),
            Defect::NotACut(v) => write!(f, "down-set of {v} is not a prefix-{v} cut"),
            Defect::CostMismatch { node, cost, optimum } => {
                write!(f, "down-set of {node} costs {cost}, optimum is {optimum}")
            }
        }
    }
}

impl OcTree {
    /// Assembles a tree from a sequence, the parent of each position (`None` for the
    /// source) and the block of each position. Only the tree shape is checked here;
    /// the partition and the cut conditions are checked by [`OcTree::validate`].
    pub fn from_parts(phi: Sequence, parents: &[Option<Node>], blocks: Vec<NodeSet>) -> Result<Self> {
        if parents.len() != phi.len() || blocks.len() != phi.len() {
            return Err(Error::Mismatch("parts must have one entry per sequence node"));
        }
        let mut parent = Vec::with_capacity(phi.len());
        for (i, p) in parents.iter().enumerate() {
            match (i, p) {
                (0, None) => parent.push(None),
                (0, Some(_)) | (_, None) => return Err(Error::BadParent(i)),
                (_, Some(p)) => {
                    let j = phi.position(*p).ok_or(Error::NotInSequence(*p))?;
                    if j >= i {
                        return Err(Error::BadParent(i));
                    }
                    parent.push(Some(j));
                }
            }
        }
        Ok(OcTree { phi, parent, blocks })
    }

    /// Single block holding all of `ambient`.
    pub fn trivial(source: Node, ambient: NodeSet) -> Self {
        OcTree { phi: Sequence(vec![source]), parent: vec![None], blocks: vec![ambient] }
    }

    pub fn phi(&self) -> &Sequence {
        &self.phi
    }

    pub fn source(&self) -> Node {
        self.phi.source()
    }

    fn pos(&self, v: Node) -> Result<usize> {
        self.phi.position(v).ok_or(Error::NotInSequence(v))
    }

    pub fn parent(&self, v: Node) -> Result<Option<Node>> {
        Ok(self.parent[self.pos(v)?].map(|j| self.phi.0[j]))
    }

    /// The block `[v]`.
    pub fn block(&self, v: Node) -> Result<&NodeSet> {
        Ok(&self.blocks[self.pos(v)?])
    }

    pub fn blocks(&self) -> impl Iterator<Item = (Node, &NodeSet)> {
        self.phi.0.iter().copied().zip(self.blocks.iter())
    }

    pub fn children(&self, v: Node) -> Result<Vec<Node>> {
        let i = self.pos(v)?;
        Ok(self.phi.0.iter().zip(&self.parent).filter(|(_, p)| **p == Some(i)).map(|(&w, _)| w).collect())
    }

    pub fn is_leaf(&self, v: Node) -> Result<bool> {
        let i = self.pos(v)?;
        Ok(!self.parent.contains(&Some(i)))
    }

    /// Number of edges from `v` up to the source.
    pub fn depth(&self, v: Node) -> Result<usize> {
        let mut i = self.pos(v)?;
        let mut d = 0;
        while let Some(p) = self.parent[i] {
            i = p;
            d += 1;
        }
        Ok(d)
    }

    /// Union of all blocks.
    pub fn ambient(&self) -> NodeSet {
        self.blocks.iter().flatten().copied().collect()
    }

    /// `[v]↓`, the union of the blocks in the subtree rooted at `v`.
    pub fn down_set(&self, v: Node) -> Result<NodeSet> {
        let i = self.pos(v)?;
        let mut inside = vec![false; self.phi.len()];
        inside[i] = true;
        let mut out = self.blocks[i].clone();
        for j in i + 1..self.phi.len() {
            if let Some(p) = self.parent[j] {
                if inside[p] {
                    inside[j] = true;
                    out.extend(self.blocks[j].iter().copied());
                }
            }
        }
        Ok(out)
    }

    /// Down-sets of all positions, in sequence order.
    pub fn down_sets(&self) -> Vec<NodeSet> {
        let mut down: Vec<NodeSet> = self.blocks.clone();
        for j in (1..self.phi.len()).rev() {
            let p = self.parent[j].expect("non-root has a parent");
            let moved = core::mem::take(&mut down[j]);
            down[p].extend(moved.iter().copied());
            down[j] = moved;
        }
        down
    }

    /// Checks the partition structure and, for every non-source position, that the
    /// down-set is a minimum prefix-vs-node cut in `g`.
    pub fn validate(&self, g: &Graph) -> core::result::Result<(), Defect> {
        self.check_partition(g)?;
        let down = self.down_sets();
        let mut counter = WorkCounter::new();
        for i in 1..self.phi.len() {
            let v = self.phi.0[i];
            let prefix: NodeSet = self.phi.0[..i].iter().copied().collect();
            if prefix.iter().any(|u| down[i].contains(u)) || !down[i].contains(&v) {
                return Err(Defect::NotACut(v));
            }
            let cost = g.cut_cost(&down[i]).map_err(|_| Defect::NotACut(v))?;
            let optimum = min_cut(g, &prefix, &NodeSet::from([v]), &mut counter)
                .expect("prefix and node are disjoint graph nodes")
                .cost;
            if cost != optimum {
                return Err(Defect::CostMismatch { node: v, cost, optimum });
            }
        }
        Ok(())
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        self.validate(g).is_ok()
    }

    fn check_partition(&self, g: &Graph) -> core::result::Result<(), Defect> {
        let seq: BTreeMap<Node, usize> = self.phi.0.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut seen = NodeSet::new();
        for (i, block) in self.blocks.iter().enumerate() {
            let owner = self.phi.0[i];
            if !block.contains(&owner) {
                return Err(Defect::MissingSequenceNode(owner));
            }
            for &v in block {
                if !g.contains(v) {
                    return Err(Defect::UnknownNode(v));
                }
                if v != owner && seq.contains_key(&v) {
                    return Err(Defect::ExtraSequenceNode { block_of: owner, node: v });
                }
                if !seen.insert(v) {
                    return Err(Defect::Overlap(v));
                }
            }
        }
        if let Some(&v) = g.nodes().iter().find(|v| !seen.contains(v)) {
            return Err(Defect::Uncovered(v));
        }
        Ok(())
    }

    /// Removes leaf `u`, merging `[u]` into its parent's block. Down-sets of the
    /// remaining nodes do not change.
    pub fn remove_leaf(&self, u: Node) -> Result<OcTree> {
        let i = self.pos(u)?;
        let Some(p) = self.parent[i] else {
            return Err(Error::SourceNode(u));
        };
        if self.parent.contains(&Some(i)) {
            return Err(Error::NotALeaf(u));
        }
        let mut phi = self.phi.0.clone();
        phi.remove(i);
        let mut blocks = self.blocks.clone();
        let merged = blocks.remove(i);
        blocks[p].extend(merged);
        let parent = self
            .parent
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q.map(|q| if q > i { q - 1 } else { q }))
            .collect();
        Ok(OcTree { phi: Sequence(phi), parent, blocks })
    }

    /// `π*(u)`: follow `π` from `u` to the source, where `π(w)` is the latest node
    /// before `w` that is either the parent `p` of `w` or a child of `p`. Returned in
    /// source-first order.
    pub fn pi_star(&self, u: Node) -> Result<Vec<Node>> {
        let mut i = self.pos(u)?;
        if i == 0 {
            return Err(Error::SourceNode(u));
        }
        let mut chain = Vec::new();
        while i != 0 {
            let p = self.parent[i].expect("non-root has a parent");
            i = (p + 1..i).rev().find(|&j| self.parent[j] == Some(p)).unwrap_or(p);
            chain.push(self.phi.0[i]);
        }
        chain.reverse();
        Ok(chain)
    }

    /// Down-sets that are certified minimum `s`-`u` cuts: those of `u` whose cost does
    /// not exceed the cost of any down-set along `π*(u)` (source excluded). The tree
    /// must be valid for `g`.
    pub fn certified_source_cuts(&self, g: &Graph) -> Result<BTreeMap<Node, Cut>> {
        let down = self.down_sets();
        let costs = self.down_costs(g, &down)?;
        let mut out = BTreeMap::new();
        for i in 1..self.phi.len() {
            let u = self.phi.0[i];
            let chain = self.pi_star(u)?;
            let certified = chain[1..].iter().all(|w| costs[self.pos(*w).expect("chain inside sequence")] >= costs[i]);
            if certified {
                out.insert(u, Cut { members: down[i].clone(), cost: costs[i] });
            }
        }
        Ok(out)
    }

    /// `λ(v) = min { cost([vi]↓) : i ≥ 1, v ∈ [vi]↓ }`. Nodes covered by no
    /// non-source down-set (the source block) have no entry, i.e. `λ = ∞`.
    pub fn to_lambda(&self, g: &Graph) -> Result<BTreeMap<Node, Weight>> {
        let down = self.down_sets();
        let costs = self.down_costs(g, &down)?;
        // best[i]: smallest cost over the non-root ancestors of i, i included.
        let mut best: Vec<Option<Weight>> = vec![None; self.phi.len()];
        for i in 1..self.phi.len() {
            let above = best[self.parent[i].expect("non-root has a parent")];
            best[i] = Some(above.map_or(costs[i], |a| a.min(costs[i])));
        }
        let mut lambda = BTreeMap::new();
        for (i, block) in self.blocks.iter().enumerate() {
            if let Some(b) = best[i] {
                lambda.extend(block.iter().map(|&v| (v, b)));
            }
        }
        Ok(lambda)
    }

    fn down_costs(&self, g: &Graph, down: &[NodeSet]) -> Result<Vec<Weight>> {
        let mut costs = vec![0; down.len()];
        for i in 1..down.len() {
            costs[i] = g.cut_cost(&down[i])?;
        }
        Ok(costs)
    }

    /// Depth-1 reduction: repeatedly removes the rightmost leaf of depth at least two.
    /// The result is a star around the source, returned as the named partition of its
    /// children's blocks.
    pub fn to_oc1(&self) -> NamedPartition {
        let n = self.phi.len();
        let mut depth = vec![0usize; n];
        let mut kids = vec![0usize; n];
        for i in 1..n {
            let p = self.parent[i].expect("non-root has a parent");
            depth[i] = depth[p] + 1;
            kids[p] += 1;
        }
        let mut blocks = self.blocks.clone();
        // Scanning right to left visits leaves in exactly the "rightmost first" order:
        // a removal can only turn the (earlier) parent into a new leaf.
        for i in (1..n).rev() {
            if kids[i] == 0 && depth[i] >= 2 {
                let p = self.parent[i].expect("non-root has a parent");
                let merged = core::mem::take(&mut blocks[i]);
                blocks[p].extend(merged);
                kids[p] -= 1;
            }
        }
        let mut np = NamedPartition::new();
        for i in 1..n {
            if depth[i] == 1 {
                np.insert(self.phi.0[i], core::mem::take(&mut blocks[i])).expect("blocks of an oc-tree are disjoint");
            }
        }
        np
    }
}

/// Glues an outer tree for the prefix `α` of `phi` with, for every `v ∈ α`, an inner
/// tree for `phi ∩ [v]°` on `G[[v]°; v]`. The result uses the inner blocks and the
/// union of all parent edges.
pub fn compose(phi: &Sequence, outer: &OcTree, inner: &BTreeMap<Node, OcTree>) -> Result<OcTree> {
    let alpha = outer.phi.as_slice();
    if phi.len() < alpha.len() || &phi.0[..alpha.len()] != alpha {
        return Err(Error::Mismatch("outer sequence is not a prefix"));
    }
    let position: BTreeMap<Node, usize> = phi.0.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut parent: Vec<Option<usize>> = vec![None; phi.len()];
    let mut blocks: Vec<Option<NodeSet>> = vec![None; phi.len()];
    parent[..alpha.len()].copy_from_slice(&outer.parent);
    for (k, &v) in alpha.iter().enumerate() {
        let tree = inner.get(&v).ok_or(Error::Mismatch("missing inner tree"))?;
        if tree.source() != v {
            return Err(Error::Mismatch("inner tree rooted elsewhere"));
        }
        let outer_block = &outer.blocks[k];
        if tree.ambient() != *outer_block {
            return Err(Error::Mismatch("inner node set differs from outer block"));
        }
        if tree.phi.0 != phi.restrict(outer_block) {
            return Err(Error::Mismatch("inner sequence differs from restricted sequence"));
        }
        for (j, &w) in tree.phi.0.iter().enumerate() {
            let i = position[&w];
            blocks[i] = Some(tree.blocks[j].clone());
            if j > 0 {
                let p = tree.parent[j].expect("non-root has a parent");
                parent[i] = Some(position[&tree.phi.0[p]]);
            }
        }
    }
    let blocks = blocks
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(Error::Mismatch("sequence node outside every outer block"))?;
    Ok(OcTree { phi: phi.clone(), parent, blocks })
}

/// Joins a tree for `phi ∩ S` on `G[S; s]` and a tree for `phi ∩ (T ∪ {s})` on
/// `G[T ∪ {s}; s]`, where `(S, T)` is a minimum cut between `s` and the rest of the
/// sequence head. The two root blocks merge; everything else is kept.
pub fn splice(phi: &Sequence, s_tree: &OcTree, t_tree: &OcTree) -> Result<OcTree> {
    let s = phi.source();
    if s_tree.source() != s || t_tree.source() != s {
        return Err(Error::Mismatch("both trees must be rooted at the sequence source"));
    }
    let s_amb = s_tree.ambient();
    let t_amb = t_tree.ambient();
    if s_amb.intersection(&t_amb).any(|&v| v != s) {
        return Err(Error::Mismatch("non-root blocks overlap"));
    }
    if s_tree.phi.0 != phi.restrict(&s_amb) || t_tree.phi.0 != phi.restrict(&t_amb) {
        return Err(Error::Mismatch("tree sequences are not restrictions of the sequence"));
    }
    if s_tree.phi.len() + t_tree.phi.len() != phi.len() + 1 {
        return Err(Error::Mismatch("sequence node outside both trees"));
    }
    let position: BTreeMap<Node, usize> = phi.0.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut parent: Vec<Option<usize>> = vec![None; phi.len()];
    let mut blocks: Vec<NodeSet> = vec![NodeSet::new(); phi.len()];
    for tree in [s_tree, t_tree] {
        for (j, &w) in tree.phi.0.iter().enumerate() {
            let i = position[&w];
            blocks[i].extend(tree.blocks[j].iter().copied());
            if j > 0 {
                parent[i] = Some(position[&tree.phi.0[tree.parent[j].expect("non-root")]]);
            }
        }
    }
    Ok(OcTree { phi: phi.clone(), parent, blocks })
}
