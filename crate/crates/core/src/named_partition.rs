use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Node, NodeSet};

/// Representatives with pairwise disjoint blocks, each block holding its own
/// representative. A depth-1 ordered-cuts tree is exactly such a partition of the
/// non-source nodes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NamedPartition {
    blocks: BTreeMap<Node, NodeSet>,
}

impl NamedPartition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_blocks(blocks: impl IntoIterator<Item = (Node, NodeSet)>) -> Result<Self> {
        let mut np = Self::new();
        for (rep, block) in blocks {
            np.insert(rep, block)?;
        }
        Ok(np)
    }

    /// Adds a representative; its block must contain it and miss all other blocks.
    pub fn insert(&mut self, rep: Node, block: NodeSet) -> Result<()> {
        if !block.contains(&rep) {
            return Err(Error::NotInSet(rep));
        }
        if self.blocks.contains_key(&rep) {
            return Err(Error::DuplicateNode(rep));
        }
        if let Some(v) = self.blocks.values().find_map(|b| b.intersection(&block).next()) {
            return Err(Error::DuplicateNode(*v));
        }
        self.blocks.insert(rep, block);
        Ok(())
    }

    pub fn reps(&self) -> impl Iterator<Item = Node> + '_ {
        self.blocks.keys().copied()
    }

    pub fn block(&self, rep: Node) -> Option<&NodeSet> {
        self.blocks.get(&rep)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Node, &NodeSet)> {
        self.blocks.iter().map(|(&v, b)| (v, b))
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `⟨S⟩`, the union of all blocks.
    pub fn covered(&self) -> NodeSet {
        self.blocks.values().flatten().copied().collect()
    }

    /// Representative whose block contains `v`.
    pub fn rep_of(&self, v: Node) -> Option<Node> {
        self.blocks.iter().find(|(_, b)| b.contains(&v)).map(|(&r, _)| r)
    }

    pub fn into_blocks(self) -> Vec<(Node, NodeSet)> {
        self.blocks.into_iter().collect()
    }
}
