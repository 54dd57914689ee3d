//! Random and structured graph families on nodes `1..=n`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use cuttree_core::{Graph, Node, Weight};
use rand::seq::index::sample;
use rand::Rng;

fn weight<R: Rng + ?Sized>(rng: &mut R, max_w: Weight) -> Weight {
    rng.gen_range(1..=max_w)
}

fn build(n: u32, edges: Vec<(Node, Node, Weight)>) -> Graph {
    Graph::with_node_count(n, edges).expect("generated edges stay inside 1..=n")
}

/// `G(n, p)`: each pair independently with probability `p`.
pub fn erdos_renyi_p<R: Rng + ?Sized>(n: u32, p: f64, max_w: Weight, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            if rng.gen_bool(p) {
                edges.push((Node(a), Node(b), weight(rng, max_w)));
            }
        }
    }
    build(n, edges)
}

/// `G(n, m)`: exactly `m` distinct pairs, capped at `n(n-1)/2`.
pub fn erdos_renyi_m<R: Rng + ?Sized>(n: u32, m: usize, max_w: Weight, rng: &mut R) -> Graph {
    let pairs = n as usize * (n as usize - 1) / 2;
    let m = m.min(pairs);
    let mut chosen: BTreeSet<(u32, u32)> = BTreeSet::new();
    if m * 2 > pairs {
        for k in sample(rng, pairs, m) {
            chosen.insert(unrank(n, k));
        }
    } else {
        while chosen.len() < m {
            let a = rng.gen_range(1..=n);
            let b = rng.gen_range(1..=n);
            if a != b {
                chosen.insert((a.min(b), a.max(b)));
            }
        }
    }
    let edges = chosen.into_iter().map(|(a, b)| (Node(a), Node(b), weight(rng, max_w))).collect();
    build(n, edges)
}

// k-th pair (a, b), a < b, in row-major order.
fn unrank(n: u32, mut k: usize) -> (u32, u32) {
    for a in 1..n {
        let row = (n - a) as usize;
        if k < row {
            return (a, a + 1 + k as u32);
        }
        k -= row;
    }
    unreachable!("rank below n(n-1)/2")
}

/// `rows × cols` grid with random weights.
pub fn grid<R: Rng + ?Sized>(rows: u32, cols: u32, max_w: Weight, rng: &mut R) -> Graph {
    let id = |r: u32, c: u32| Node(r * cols + c + 1);
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1), weight(rng, max_w)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c), weight(rng, max_w)));
            }
        }
    }
    build(rows * cols, edges)
}

pub fn cycle<R: Rng + ?Sized>(n: u32, max_w: Weight, rng: &mut R) -> Graph {
    let edges = (1..=n).filter(|_| n > 1).map(|a| (Node(a), Node(a % n + 1), weight(rng, max_w))).collect();
    build(n, edges)
}

/// Node 1 joined to every other node.
pub fn star<R: Rng + ?Sized>(n: u32, max_w: Weight, rng: &mut R) -> Graph {
    let edges = (2..=n).map(|b| (Node(1), Node(b), weight(rng, max_w))).collect();
    build(n, edges)
}

/// Random recursive tree plus `extra` random chords of weight 1.
pub fn tree_plus_noise<R: Rng + ?Sized>(n: u32, extra: usize, max_w: Weight, rng: &mut R) -> Graph {
    let mut edges: Vec<(Node, Node, Weight)> =
        (2..=n).map(|b| (Node(rng.gen_range(1..b)), Node(b), weight(rng, max_w))).collect();
    if n > 1 {
        for _ in 0..extra {
            let a = rng.gen_range(1..=n);
            let b = rng.gen_range(1..=n);
            if a != b {
                edges.push((Node(a), Node(b), 1));
            }
        }
    }
    build(n, edges)
}

/// Named generator family used by the benchmark.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    ErdosRenyi,
    Grid,
    Cycle,
    Star,
    TreePlusNoise,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::ErdosRenyi, Family::Grid, Family::Cycle, Family::Star, Family::TreePlusNoise];

    /// An instance with about `n` nodes and weights in `1..=16`.
    pub fn generate<R: Rng + ?Sized>(self, n: u32, rng: &mut R) -> Graph {
        let n = n.max(2);
        match self {
            Family::ErdosRenyi => erdos_renyi_m(n, 4 * n as usize, 16, rng),
            Family::Grid => {
                let side = (n as f64).sqrt().round().max(1.0) as u32;
                grid(side, n.div_ceil(side), 16, rng)
            }
            Family::Cycle => cycle(n, 16, rng),
            Family::Star => star(n, 16, rng),
            Family::TreePlusNoise => tree_plus_noise(n, n as usize / 4, 16, rng),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::ErdosRenyi => "erdos-renyi",
            Family::Grid => "grid",
            Family::Cycle => "cycle",
            Family::Star => "star",
            Family::TreePlusNoise => "random-tree-plus-noise",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL.into_iter().find(|f| f.to_string() == s).ok_or_else(|| format!("unknown generator `{s}`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(erdos_renyi_m(50, 200, 16, &mut rng).edge_count(), 200);
        assert_eq!(erdos_renyi_m(5, 9, 16, &mut rng).edge_count(), 9);
        assert_eq!(erdos_renyi_m(5, 99, 16, &mut rng).edge_count(), 10);
        assert_eq!(grid(3, 4, 16, &mut rng).edge_count(), 17);
        assert_eq!(cycle(6, 16, &mut rng).edge_count(), 6);
        assert_eq!(star(6, 16, &mut rng).edge_count(), 5);
        assert_eq!(tree_plus_noise(30, 0, 16, &mut rng).components().len(), 1);
        for f in Family::ALL {
            assert_eq!(f.to_string().parse::<Family>(), Ok(f));
            assert!(f.generate(20, &mut rng).node_count() >= 20);
        }
    }

    #[test]
    fn unrank_covers_all_pairs() {
        let pairs: BTreeSet<_> = (0..15).map(|k| unrank(6, k)).collect();
        assert_eq!(pairs.len(), 15);
        assert!(pairs.iter().all(|&(a, b)| 1 <= a && a < b && b <= 6));
    }
}
