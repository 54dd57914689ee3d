//! Randomized split strategies built on ordered cuts.
//!
//! Both strategies perturb the auxiliary graph so that minimum cuts become unique with
//! high probability, run a fixed-source routine for a chosen source, and only return
//! a family once it is certified. Correctness never depends on the random choices;
//! only the number of attempts does.

use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Node, NodeSet, Weight};

mod fixed_source;
mod select;

pub use fixed_source::{certified_ordered_cuts, fixed_source_partition, fixed_source_partition_1, CertifiedCuts};
pub use select::{gh_via_oc1, gh_via_weak_oc, select_source_oc1, select_source_weak, Oc1Split, WeakOcSplit};

/// Which certification the weak strategy uses for its ordered cuts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertifyMode {
    /// Isolating cuts on the running-minimum nodes; certified cuts are disjoint.
    #[default]
    Isolating,
    /// Read certified cuts straight off the ordered-cuts tree; they form a laminar family.
    Octree,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PipelineConfig {
    /// Scale of the number of repetitions of the sampling-rate block.
    pub c1: f64,
    /// Scale of the number of copies of each rate in the source-selection schedule.
    pub c2: f64,
    /// Outer attempts per split before giving up.
    pub max_attempts: u32,
    pub certify: CertifyMode,
    /// Run ordered-cuts refinements on the rayon pool (needs the `parallel` feature).
    pub parallel: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig { c1: 1.0, c2: 1.0, max_attempts: 10_000, certify: CertifyMode::Isolating, parallel: false }
    }
}

/// Adds `r(e)` uniform in `[0, n²)` to `m·n²·w(e)`. Components are first chained with
/// zero-weight edges so that every cut crosses at least one perturbed edge. The total
/// noise on any cut stays below the scale, so minimum cuts of the result are minimum
/// cuts of `g`.
pub fn perturb<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Result<Graph> {
    let comps = g.components();
    let links: Vec<(Node, Node)> = comps.windows(2).map(|w| (w[0][0], w[1][0])).collect();
    let g = if links.is_empty() { g.clone() } else { g.with_extra_edges(&links)? };
    let n = g.node_count() as Weight;
    let range = n * n;
    let scale = (g.edge_count() as Weight).checked_mul(range).ok_or(Error::Overflow)?;
    g.max_weight().checked_mul(scale).and_then(|w| w.checked_add(range)).ok_or(Error::Overflow)?;
    Ok(g.map_weights(|_, _, w| w * scale + rng.gen_range(0..range)))
}

/// Sampling rate `2^-k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rate(u32);

impl Rate {
    pub const ONE: Rate = Rate(0);

    pub fn pow2(k: u32) -> Result<Rate> {
        if k >= 64 {
            return Err(Error::BadRate(k));
        }
        Ok(Rate(k))
    }

    pub fn exponent(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        libm::ldexp(1.0, -(self.0 as i32))
    }

    fn hit<R: Rng + ?Sized>(self, rng: &mut R) -> bool {
        self.0 == 0 || rng.gen_range(0..1u64 << self.0) == 0
    }
}

/// Each node independently with probability `rate`; no randomness is drawn at rate 1.
pub fn random_subset<R: Rng + ?Sized>(x: &NodeSet, rate: Rate, rng: &mut R) -> NodeSet {
    x.iter().copied().filter(|_| rate.hit(rng)).collect()
}

fn floor_log2(k: usize) -> u32 {
    usize::BITS - 1 - k.max(1).leading_zeros()
}

/// Sequence of sampling rates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule(pub Vec<Rate>);

impl Schedule {
    /// `(1, 1/2, …, 2^-d)` with `d = ⌊log₂ |X|⌋`, repeated `⌈c₁·log₂²(|X|+1)⌉` times.
    pub fn alpha(x_len: usize, c1: f64) -> Schedule {
        let d = floor_log2(x_len);
        let l = libm::log2(x_len as f64 + 1.0);
        let repeats = (libm::ceil(c1 * l * l) as usize).max(1);
        let block = (0..=d).map(Rate);
        Schedule(block.cycle().take((d as usize + 1) * repeats).collect())
    }

    /// `K` copies each of `2^-d, …, 2^-1`, then `1`, with `d = ⌊log₂ |X|⌋` and
    /// `K = ⌈c₂·log₂ log₂ (n+4)⌉`.
    pub fn beta(x_len: usize, n: usize, c2: f64) -> Schedule {
        let d = floor_log2(x_len);
        let k = (libm::ceil(c2 * libm::log2(libm::log2(n as f64 + 4.0))) as usize).max(1);
        let mut rates: Vec<Rate> = (1..=d).rev().flat_map(|p| core::iter::repeat(Rate(p)).take(k)).collect();
        rates.push(Rate::ONE);
        Schedule(rates)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Total order on cuts relative to a terminal set `X`: cheaper first, then fewer
/// members of `X`, then the set holding the smallest node of the symmetric difference.
#[derive(Clone, Copy, Debug)]
pub struct CutOrder<'a> {
    pub graph: &'a Graph,
    pub x: &'a NodeSet,
}

impl CutOrder<'_> {
    pub fn compare(&self, a: &NodeSet, b: &NodeSet) -> Result<Ordering> {
        let (ca, cb) = (self.graph.cut_cost(a)?, self.graph.cut_cost(b)?);
        Ok(compare_cuts(self.x, a, ca, b, cb))
    }
}

pub(crate) fn compare_cuts(x: &NodeSet, a: &NodeSet, cost_a: Weight, b: &NodeSet, cost_b: Weight) -> Ordering {
    let in_x = |s: &NodeSet| s.iter().filter(|v| x.contains(v)).count();
    cost_a.cmp(&cost_b).then_with(|| in_x(a).cmp(&in_x(b))).then_with(|| match a.symmetric_difference(b).next() {
        None => Ordering::Equal,
        Some(v) if a.contains(v) => Ordering::Less,
        Some(_) => Ordering::Greater,
    })
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

    #[test]
    fn perturb_single_edge() {
        let g2 = Graph::with_node_count(2, [(Node(1), Node(2), 5)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let w = perturb(&g2, &mut rng).unwrap().weight(Node(1), Node(2));
            assert!((20..24).contains(&w));
            assert_eq!(w / 4, 5);
        }
    }

    #[test]
    fn perturb_links_components() {
        let g = Graph::with_node_count(4, [(Node(1), Node(2), 1), (Node(3), Node(4), 1)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = perturb(&g, &mut rng).unwrap();
        assert_eq!(p.edge_count(), 3);
        // m = 3, R = 16: the chain edge carries only noise.
        assert!(p.weight(Node(1), Node(3)) < 16);
        assert_eq!(p.weight(Node(1), Node(2)) / 48, 1);
    }

    #[test]
    fn random_subset_rates() {
        let x: NodeSet = (1..=1000).map(Node).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(random_subset(&x, Rate::ONE, &mut rng), x);
        let quarter = random_subset(&x, Rate::pow2(2).unwrap(), &mut rng).len();
        assert!((180..320).contains(&quarter), "{quarter}");
        let a = random_subset(&x, Rate::pow2(1).unwrap(), &mut ChaCha8Rng::seed_from_u64(9));
        let b = random_subset(&x, Rate::pow2(1).unwrap(), &mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(a, b);
        assert_eq!(Rate::pow2(64), Err(Error::BadRate(64)));
    }

    #[test]
    fn schedule_shapes() {
        // |X| = 5: d = 2, ⌈log₂²6⌉ = ⌈6.68⌉ = 7 repeats.
        let a = Schedule::alpha(5, 1.0);
        assert_eq!(a.len(), 21);
        assert_eq!(&a.0[..4], &[Rate(0), Rate(1), Rate(2), Rate(0)]);
        // n = 12: ⌈log₂ log₂ 16⌉ = 2 copies of 1/4 and of 1/2, then 1.
        let b = Schedule::beta(5, 12, 1.0);
        assert_eq!(b.0, vec![Rate(2), Rate(2), Rate(1), Rate(1), Rate(0)]);
        assert_eq!(Schedule::beta(1, 2, 1.0).0, vec![Rate(0)]);
    }

    #[test]
    fn cut_order_rules() {
        let g =
            Graph::with_node_count(3, [(Node(1), Node(2), 1), (Node(1), Node(3), 2), (Node(2), Node(3), 3)]).unwrap();
        let x = set(&[1, 2, 3]);
        let order = CutOrder { graph: &g, x: &x };
        assert_eq!(order.compare(&set(&[1]), &set(&[2])).unwrap(), Ordering::Less);
        // Equal cost 3: {1} vs {2,3}; fewer X members wins.
        assert_eq!(order.compare(&set(&[2, 3]), &set(&[1])).unwrap(), Ordering::Greater);
        assert_eq!(order.compare(&set(&[1]), &set(&[1])).unwrap(), Ordering::Equal);
        let y = set(&[]);
        let loose = CutOrder { graph: &g, x: &y };
        assert_eq!(loose.compare(&set(&[2, 3]), &set(&[1])).unwrap(), Ordering::Greater);
    }
}
