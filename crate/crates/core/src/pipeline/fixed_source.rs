use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::Rng;

use super::{random_subset, CertifyMode, PipelineConfig, Rate, Schedule};
use crate::error::{Error, Result};
use crate::graph::{Cut, Graph, Node, NodeSet, Weight};
use crate::isolating::isolating_cuts;
use crate::maxflow::WorkCounter;
use crate::named_partition::NamedPartition;
use crate::octree::{ordered_cuts_dc, OcTree, Sequence};

pub(crate) fn oc_tree(phi: &Sequence, g: &Graph, config: &PipelineConfig, counter: &mut WorkCounter) -> Result<OcTree> {
    #[cfg(feature = "parallel")]
    if config.parallel {
        return crate::octree::ordered_cuts_dc_parallel(phi, g, counter);
    }
    let _ = config;
    ordered_cuts_dc(phi, g, counter)
}

/// `cost({v})` for every node.
fn degrees(g: &Graph) -> BTreeMap<Node, Weight> {
    let mut deg: BTreeMap<Node, Weight> = g.nodes().iter().map(|&v| (v, 0)).collect();
    for (a, b, w) in g.edges() {
        *deg.get_mut(&a).expect("endpoint") += w;
        *deg.get_mut(&b).expect("endpoint") += w;
    }
    deg
}

/// Largest key first, ties by smaller label.
fn sorted_by_key_desc(y: &NodeSet, key: &BTreeMap<Node, Weight>) -> Vec<Node> {
    let mut order: Vec<Node> = y.iter().copied().collect();
    order.sort_by(|a, b| key[b].cmp(&key[a]).then(a.cmp(b)));
    order
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedCuts {
    /// Upper bound on `f(s, v)`; exact for nodes whose minimum cut misses all earlier
    /// sequence nodes. Missing entries are `+∞`.
    pub lambda: BTreeMap<Node, Weight>,
    /// Cuts certified to be minimum `s`-`v` cuts, keyed by `v`.
    pub certified: Vec<(Node, Cut)>,
}

/// Upper bounds `λ` from an ordered-cuts tree for `s, seq`, plus the cuts that can be
/// certified as minimum. With [`CertifyMode::Isolating`], isolating cuts are computed for
/// the nodes whose `λ` is a running minimum and kept when they match `λ`.
pub fn certified_ordered_cuts(
    s: Node,
    seq: &[Node],
    g: &Graph,
    config: &PipelineConfig,
    counter: &mut WorkCounter,
) -> Result<CertifiedCuts> {
    if seq.is_empty() {
        return Ok(CertifiedCuts { lambda: BTreeMap::new(), certified: Vec::new() });
    }
    let phi = Sequence::with_source(s, seq)?;
    let tree = oc_tree(&phi, g, config, counter)?;
    let lambda = tree.to_lambda(g)?;
    let certified = match config.certify {
        CertifyMode::Octree => tree.certified_source_cuts(g)?.into_iter().collect(),
        CertifyMode::Isolating => {
            let mut floor = Weight::MAX;
            let mut y_star = NodeSet::new();
            for v in seq {
                let l = lambda[v];
                if l <= floor {
                    y_star.insert(*v);
                    floor = l;
                }
            }
            let iso = isolating_cuts(s, &y_star, g, counter)?;
            iso.cuts.into_iter().filter(|(v, cut)| cut.cost == lambda[v]).collect()
        }
    };
    Ok(CertifiedCuts { lambda, certified })
}

/// Named partition whose blocks are minimum `s`-`v` cuts, one per representative
/// `v ∈ X`. When minimum cuts are unique it covers `X` with high probability.
pub fn fixed_source_partition_1<R: Rng + ?Sized>(
    s: Node,
    x: &NodeSet,
    g: &Graph,
    config: &PipelineConfig,
    rng: &mut R,
    counter: &mut WorkCounter,
) -> Result<NamedPartition> {
    if x.contains(&s) {
        return Err(Error::SourceInTerminals(s));
    }
    if x.is_empty() {
        return Ok(NamedPartition::new());
    }
    let mut x = x.clone();
    let mut lambda = degrees(g);
    let schedule = Schedule::alpha(x.len(), config.c1);
    let rates = schedule.0.iter().copied().chain([Rate::ONE]);
    let last = schedule.len();
    for (i, rate) in rates.enumerate() {
        let y = random_subset(&x, rate, rng);
        let order = sorted_by_key_desc(&y, &lambda);
        let np = if order.is_empty() {
            NamedPartition::new()
        } else {
            let phi = Sequence::with_source(s, &order)?;
            oc_tree(&phi, g, config, counter)?.to_oc1()
        };
        if i < last {
            for (v, block) in np.iter() {
                let cost = g.cut_cost(block)?;
                for &u in block {
                    if u != v {
                        x.remove(&u);
                    }
                    let l = lambda.get_mut(&u).expect("graph node");
                    *l = (*l).min(cost);
                }
            }
        } else {
            let mut out = NamedPartition::new();
            let mut floor = Weight::MAX;
            for v in order {
                if let Some(block) = np.block(v) {
                    let cost = g.cut_cost(block)?;
                    if cost <= floor {
                        out.insert(v, block.clone())?;
                        floor = cost;
                    }
                }
            }
            return Ok(out);
        }
    }
    unreachable!("the final rate-1 round returns")
}

/// Laminar family of certified minimum `s`-`t` cuts (`t ∈ X`) with at most `l` members
/// of `X` each; empty if the collected cuts ever stop being laminar.
pub fn fixed_source_partition<R: Rng + ?Sized>(
    s: Node,
    x: &NodeSet,
    l: usize,
    g: &Graph,
    config: &PipelineConfig,
    rng: &mut R,
    counter: &mut WorkCounter,
) -> Result<Vec<Cut>> {
    if x.contains(&s) {
        return Err(Error::SourceInTerminals(s));
    }
    let mut mu = degrees(g);
    let mut family: Vec<Cut> = Vec::new();
    let mut covered = NodeSet::new();
    let schedule = Schedule::alpha(x.len(), config.c1);
    for &rate in schedule.0.iter().chain(&schedule.0) {
        let pool: NodeSet = x.difference(&covered).copied().collect();
        let y = random_subset(&pool, rate, rng);
        if y.is_empty() {
            continue;
        }
        let order = sorted_by_key_desc(&y, &mu);
        let cc = certified_ordered_cuts(s, &order, g, config, counter)?;
        for v in &y {
            if let Some(&l) = cc.lambda.get(v) {
                let m = mu.get_mut(v).expect("graph node");
                *m = (*m).min(l);
            }
        }
        for (_, cut) in cc.certified {
            if cut.members.iter().filter(|v| x.contains(v)).count() > l
                || family.iter().any(|c| c.members == cut.members)
            {
                continue;
            }
            let crosses = family.iter().any(|c| {
                !(c.members.is_disjoint(&cut.members)
                    || c.members.is_subset(&cut.members)
                    || cut.members.is_subset(&c.members))
            });
            if crosses {
                return Ok(Vec::new());
            }
            covered.extend(cut.members.iter().copied());
            family.push(cut);
        }
    }
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn set(xs: &[u32]) -> NodeSet {
        xs.iter().map(|&x| Node(x)).collect()
    }

    fn tri() -> Graph {
        Graph::with_node_count(3, [(Node(1), Node(2), 1), (Node(1), Node(3), 2), (Node(2), Node(3), 3)]).unwrap()
    }

    fn g2() -> Graph {
        Graph::with_node_count(2, [(Node(1), Node(2), 5)]).unwrap()
    }

    #[test]
    fn certified_on_triangle_is_empty() {
        let mut c = WorkCounter::new();
        let cc =
            certified_ordered_cuts(Node(1), &[Node(2), Node(3)], &tri(), &PipelineConfig::default(), &mut c).unwrap();
        assert_eq!(cc.lambda, BTreeMap::from([(Node(2), 3), (Node(3), 3)]));
        assert!(cc.certified.is_empty());
    }

    #[test]
    fn certified_on_single_edge() {
        let mut c = WorkCounter::new();
        for certify in [CertifyMode::Isolating, CertifyMode::Octree] {
            let config = PipelineConfig { certify, ..Default::default() };
            let cc = certified_ordered_cuts(Node(1), &[Node(2)], &g2(), &config, &mut c).unwrap();
            assert_eq!(cc.lambda[&Node(2)], 5);
            assert_eq!(cc.certified, vec![(Node(2), Cut { members: set(&[2]), cost: 5 })]);
        }
    }

    #[test]
    fn fsp1_singleton() {
        let mut c = WorkCounter::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let np = fixed_source_partition_1(Node(1), &set(&[2]), &tri(), &PipelineConfig::default(), &mut rng, &mut c)
            .unwrap();
        assert_eq!(np.into_blocks(), vec![(Node(2), set(&[2, 3]))]);
    }

    #[test]
    fn fsp1_triangle() {
        let mut c = WorkCounter::new();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let np = fixed_source_partition_1(Node(1), &set(&[2, 3]), &tri(), &PipelineConfig::default(), &mut rng, &mut c)
            .unwrap();
        // Both nodes share the unique minimum cut {2,3}; the representative depends on
        // the sampled order.
        let blocks = np.into_blocks();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].1, set(&[2, 3]));
    }

    #[test]
    fn fsp_single_edge() {
        let mut c = WorkCounter::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let fam = fixed_source_partition(Node(1), &set(&[2]), 1, &g2(), &PipelineConfig::default(), &mut rng, &mut c)
            .unwrap();
        assert_eq!(fam, vec![Cut { members: set(&[2]), cost: 5 }]);
    }
}
