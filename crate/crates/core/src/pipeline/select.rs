use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::Rng;

use super::fixed_source::{fixed_source_partition, fixed_source_partition_1};
use super::{compare_cuts, perturb, random_subset, PipelineConfig, Schedule};
use crate::error::{Error, Result};
use crate::gomory_hu::{gh_generalized, GhRun, Split, SplitStrategy};
use crate::graph::{Graph, Node, NodeSet};
use crate::maxflow::WorkCounter;

fn pick<R: Rng + ?Sized>(x: &NodeSet, rng: &mut R) -> Node {
    *x.iter().nth(rng.gen_range(0..x.len())).expect("index below length")
}

/// Source and disjoint minimum cuts covering `X − {s}`, via depth-1 ordered cuts on a
/// perturbed copy of `h`. Each attempt walks the source-selection schedule, moving the
/// source to any representative whose block is larger (in cut order) than its
/// complement.
pub fn select_source_oc1<R: Rng + ?Sized>(
    h: &Graph,
    x: &NodeSet,
    config: &PipelineConfig,
    rng: &mut R,
    counter: &mut WorkCounter,
) -> Result<Split> {
    if x.len() < 2 {
        return Err(Error::TrivialCut);
    }
    let schedule = Schedule::beta(x.len(), h.node_count(), config.c2);
    let all = h.node_set();
    for attempt in 1..=config.max_attempts {
        let mut s = pick(x, rng);
        let hp = perturb(h, rng)?;
        for &rate in &schedule.0 {
            let mut pool = x.clone();
            pool.remove(&s);
            let y = random_subset(&pool, rate, rng);
            let np = fixed_source_partition_1(s, &y, &hp, config, rng, counter)?;
            let mut flip = None;
            for (v, block) in np.iter() {
                let cost = hp.cut_cost(block)?;
                let rest: NodeSet = all.difference(block).copied().collect();
                if compare_cuts(x, &rest, cost, block, cost) == Ordering::Less {
                    flip = Some(v);
                    break;
                }
            }
            if let Some(v) = flip {
                s = v;
            } else if pool.is_subset(&np.covered()) {
                let family = np.into_blocks().into_iter().map(|(_, b)| b).collect();
                return Ok(Split { source: s, family, attempts: attempt });
            }
        }
    }
    Err(Error::AttemptCapExceeded(config.max_attempts))
}

/// Random source and a laminar family of certified cuts with at most `⌈|X|/2⌉` members
/// of `X` each, accepted once at most `⌈|X|/2⌉` nodes of `X` stay uncovered.
pub fn select_source_weak<R: Rng + ?Sized>(
    h: &Graph,
    x: &NodeSet,
    config: &PipelineConfig,
    rng: &mut R,
    counter: &mut WorkCounter,
) -> Result<Split> {
    if x.len() < 2 {
        return Err(Error::TrivialCut);
    }
    let l = x.len().div_ceil(2);
    for attempt in 1..=config.max_attempts {
        let s = pick(x, rng);
        let hp = perturb(h, rng)?;
        let mut pool = x.clone();
        pool.remove(&s);
        let family = fixed_source_partition(s, &pool, l, &hp, config, rng, counter)?;
        let maximal: Vec<NodeSet> = family
            .iter()
            .filter(|c| !family.iter().any(|d| c.members.len() < d.members.len() && c.members.is_subset(&d.members)))
            .map(|c| c.members.clone())
            .collect();
        let covered: NodeSet = maximal.iter().flatten().copied().collect();
        let uncovered = x.iter().filter(|v| !covered.contains(v)).count();
        if !maximal.is_empty() && uncovered <= l {
            return Ok(Split { source: s, family: maximal, attempts: attempt });
        }
    }
    Err(Error::AttemptCapExceeded(config.max_attempts))
}

/// Split strategy backed by [`select_source_oc1`].
pub struct Oc1Split<'r, R: ?Sized> {
    pub rng: &'r mut R,
    pub config: PipelineConfig,
}

impl<R: Rng + ?Sized> SplitStrategy for Oc1Split<'_, R> {
    fn split(&mut self, h: &Graph, x: &NodeSet, counter: &mut WorkCounter) -> Result<Split> {
        select_source_oc1(h, x, &self.config, self.rng, counter)
    }
}

/// Split strategy backed by [`select_source_weak`].
pub struct WeakOcSplit<'r, R: ?Sized> {
    pub rng: &'r mut R,
    pub config: PipelineConfig,
}

impl<R: Rng + ?Sized> SplitStrategy for WeakOcSplit<'_, R> {
    fn split(&mut self, h: &Graph, x: &NodeSet, counter: &mut WorkCounter) -> Result<Split> {
        select_source_weak(h, x, &self.config, self.rng, counter)
    }
}

pub fn gh_via_oc1<R: Rng + ?Sized>(
    g: &Graph,
    rng: &mut R,
    config: PipelineConfig,
    counter: &mut WorkCounter,
) -> Result<GhRun> {
    gh_generalized(g, &mut Oc1Split { rng, config }, counter)
}

pub fn gh_via_weak_oc<R: Rng + ?Sized>(
    g: &Graph,
    rng: &mut R,
    config: PipelineConfig,
    counter: &mut WorkCounter,
) -> Result<GhRun> {
    gh_generalized(g, &mut WeakOcSplit { rng, config }, counter)
}
