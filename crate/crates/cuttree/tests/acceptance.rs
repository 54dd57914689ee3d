//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest harness so the
//! lines always reach the output; exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::time::Instant;

use cuttree::bench::{fit, gamma_label, ordered_cuts_work, OcRow};
use cuttree::generators::{erdos_renyi_m, erdos_renyi_p, Family};
use cuttree::{compute, parse_dimacs, write_dimacs, write_tree, Method, Stats};
use cuttree_core::isolating::isolating_cuts;
use cuttree_core::oracle::{brute_min_cut, flow_value, verify_gh_tree};
use cuttree_core::pipeline::{certified_ordered_cuts, perturb};
use cuttree_core::{
    latest_min_cut, min_cut, ordered_cuts_dc, GhTree, Graph, Node, NodeSet, PipelineConfig, Sequence, Weight,
    WorkCounter,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn rng(criterion: u64, i: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(criterion << 32 | i)
}

/// `G(n, p)` with `n` in `lo..=hi`, density in `[0.3, 0.9]`, weights in `1..=16`.
fn random_graph(r: &mut ChaCha8Rng, lo: u32, hi: u32) -> Graph {
    let n = r.gen_range(lo..=hi);
    let p = r.gen_range(0.3..=0.9);
    erdos_renyi_p(n, p, 16, r)
}

fn f(g: &Graph, s: &NodeSet, t: &NodeSet) -> Weight {
    flow_value(g, s, t).expect("disjoint terminals")
}

fn one(v: Node) -> NodeSet {
    NodeSet::from([v])
}

fn shuffled(g: &Graph, r: &mut ChaCha8Rng) -> Vec<Node> {
    let mut v = g.nodes().to_vec();
    v.shuffle(r);
    v
}

/// Tree value for every pair `s < t`.
fn pair_values(t: &GhTree) -> BTreeMap<(Node, Node), Weight> {
    let nodes = t.nodes();
    let mut out = BTreeMap::new();
    for (i, &s) in nodes.iter().enumerate() {
        for &u in &nodes[i + 1..] {
            out.insert((s, u), t.tree_query(s, u).expect("distinct nodes").cost);
        }
    }
    out
}

struct Corpus1 {
    attempts: Vec<u32>,
    stats_json: String,
}

fn criterion_1() -> (Outcome, Corpus1) {
    let mut attempts = Vec::new();
    let mut stats_json = String::new();
    let mut failures = Vec::new();
    for i in 0..200 {
        let g = random_graph(&mut rng(1, i), 2, 24);
        let mut values = Vec::new();
        for method in Method::ALL {
            match compute(&g, method, i, PipelineConfig::default()) {
                Ok((tree, stats)) => {
                    let report = verify_gh_tree(&g, &tree);
                    if !report.passed() {
                        failures.push(format!("#{i} {method}: {} violations", report.violations.len()));
                    }
                    values.push(pair_values(&tree));
                    if method != Method::Classic {
                        attempts.extend(&stats.attempts_per_call);
                        if stats_json.is_empty() {
                            stats_json = serde_json::to_string(&stats).expect("serializable");
                        }
                    }
                }
                Err(e) => failures.push(format!("#{i} {method}: {e}")),
            }
        }
        if values.windows(2).any(|w| w[0] != w[1]) {
            failures.push(format!("#{i}: methods disagree on pair values"));
        }
    }
    let outcome = if failures.is_empty() {
        Ok("200 graphs, 3 methods, every pair exact".into())
    } else {
        Err(failures.join("; "))
    };
    (outcome, Corpus1 { attempts, stats_json })
}

/// Graph on at most 24 nodes and a sequence over at most 12 of them.
fn oc_instance(i: u64) -> (Graph, Sequence) {
    let mut r = rng(2, i);
    let g = random_graph(&mut r, 2, 24);
    let k = r.gen_range(2..=12).min(g.node_count());
    let order = shuffled(&g, &mut r);
    (g, Sequence::new(order[..k].to_vec()).expect("distinct nodes"))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for i in 0..200 {
        let (g, phi) = oc_instance(i);
        let tree = ordered_cuts_dc(&phi, &g, &mut WorkCounter::new()).map_err(|e| format!("#{i}: {e}"))?;
        tree.validate(&g).map_err(|d| format!("#{i}: {d}"))?;
        let order = phi.as_slice();
        for (k, &v) in order.iter().enumerate().skip(1) {
            let prefix: NodeSet = order[..k].iter().copied().collect();
            let down = tree.down_set(v).map_err(|e| format!("#{i}: {e}"))?;
            let cost = g.cut_cost(&down).map_err(|e| format!("#{i}: {e}"))?;
            let oracle = f(&g, &prefix, &one(v));
            if !down.is_disjoint(&prefix) || !down.contains(&v) || cost != oracle {
                return Err(format!("#{i}: down-set of {} costs {cost}, oracle {oracle}", v.0));
            }
            checked += 1;
        }
    }
    Ok(format!("200 trees, {checked} prefix cuts exact"))
}

fn criterion_3() -> Outcome {
    let (mut pi, mut certified) = (0, 0);
    for i in 0..200 {
        let (g, phi) = oc_instance(i);
        let tree = ordered_cuts_dc(&phi, &g, &mut WorkCounter::new()).map_err(|e| format!("#{i}: {e}"))?;
        for &u in &phi.as_slice()[1..] {
            let chain: NodeSet = tree.pi_star(u).map_err(|e| e.to_string())?.into_iter().collect();
            let cost = g.cut_cost(&tree.down_set(u).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let oracle = f(&g, &chain, &one(u));
            if cost != oracle {
                return Err(format!("#{i}: down-set of {} costs {cost}, f(π*, u) = {oracle}", u.0));
            }
            pi += 1;
        }
        let s = one(phi.source());
        for (u, cut) in tree.certified_source_cuts(&g).map_err(|e| e.to_string())? {
            let oracle = f(&g, &s, &one(u));
            if cut.cost != oracle || g.cut_cost(&cut.members) != Ok(oracle) {
                return Err(format!("#{i}: certified cut for {} costs {}, f(s, u) = {oracle}", u.0, cut.cost));
            }
            certified += 1;
        }
    }
    Ok(format!("{pi} π* cuts and {certified} certified cuts exact"))
}

fn criterion_4() -> Outcome {
    const SEEDS: u64 = 32;
    let mut rows = Vec::new();
    for n in [128u32, 256, 512, 1024] {
        for seed in 0..SEEDS {
            let g = erdos_renyi_m(n, 4 * n as usize, 16, &mut rng(4, seed * 7919 + u64::from(n)));
            let c = ordered_cuts_work(&g, seed);
            rows.push(OcRow {
                instance: format!("er-{n}"),
                n: g.node_count(),
                m: g.edge_count(),
                seed,
                maxflow_calls: c.calls,
                nodes_total: c.nodes_total,
                edges_total: c.edges_total,
            });
        }
    }
    let fit = fit(&rows);
    let slope = fit.exponent.ok_or("no fit")?;
    let means: Vec<String> = fit.points.iter().map(|(n, y)| format!("{n}:{y:.0}")).collect();
    let detail = format!(
        "exponent {slope:.3} (window [1.30, 1.80], 1+γ with γ = {}), mean nodes_total {}",
        gamma_label(),
        means.join(" ")
    );
    if (1.30..=1.80).contains(&slope) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_5() -> Outcome {
    for i in 0..200 {
        let mut r = rng(5, i);
        let g = random_graph(&mut r, 2, 24);
        let order = shuffled(&g, &mut r);
        let k = r.gen_range(1..=8).min(order.len() - 1);
        let s = order[0];
        let y: NodeSet = order[1..=k].iter().copied().collect();
        let iso = isolating_cuts(s, &y, &g, &mut WorkCounter::new()).map_err(|e| format!("#{i}: {e}"))?;
        let bound = usize::BITS - (y.len() - 1).leading_zeros();
        if iso.levels > bound || iso.cuts.len() != y.len() {
            return Err(format!("#{i}: {} levels for |Y| = {}", iso.levels, y.len()));
        }
        for (&v, cut) in &iso.cuts {
            let mut rest = y.clone();
            rest.remove(&v);
            rest.insert(s);
            let oracle = f(&g, &rest, &one(v));
            if cut.cost != oracle || g.cut_cost(&cut.members) != Ok(oracle) || !cut.members.contains(&v) {
                return Err(format!("#{i}: S_{} costs {}, oracle {oracle}", v.0, cut.cost));
            }
        }
        let cuts: Vec<&NodeSet> = iso.cuts.values().map(|c| &c.members).collect();
        for (a, x) in cuts.iter().enumerate() {
            if cuts[a + 1..].iter().any(|z| !x.is_disjoint(z)) {
                return Err(format!("#{i}: overlapping isolating cuts"));
            }
        }
    }
    Ok("200 instances exact, disjoint, depth within ⌈log₂|Y|⌉".into())
}

fn criterion_6() -> Outcome {
    let mut certified = 0;
    for i in 0..500 {
        let mut r = rng(6, i);
        let g = random_graph(&mut r, 2, 24);
        let order = shuffled(&g, &mut r);
        let k = r.gen_range(1..=order.len() - 1);
        let s = order[0];
        let cc = certified_ordered_cuts(s, &order[1..=k], &g, &PipelineConfig::default(), &mut WorkCounter::new())
            .map_err(|e| format!("#{i}: {e}"))?;
        for (&v, &l) in &cc.lambda {
            if l < f(&g, &one(s), &one(v)) {
                return Err(format!("#{i}: λ({}) = {l} below f(s, v)", v.0));
            }
        }
        for (a, (v, cut)) in cc.certified.iter().enumerate() {
            let oracle = f(&g, &one(s), &one(*v));
            if cut.cost != oracle || g.cut_cost(&cut.members) != Ok(oracle) {
                return Err(format!("#{i}: certified cut for {} costs {}, f = {oracle}", v.0, cut.cost));
            }
            if cc.certified[a + 1..].iter().any(|(_, c)| !c.members.is_disjoint(&cut.members)) {
                return Err(format!("#{i}: certified cuts overlap"));
            }
            certified += 1;
        }
    }
    Ok(format!("500 instances, {certified} certified cuts exact and disjoint"))
}

fn criterion_7() -> Outcome {
    let mut hits = 0;
    for i in 0..500 {
        let mut r = rng(7, i);
        let g = random_graph(&mut r, 2, 16);
        let order = shuffled(&g, &mut r);
        let len = r.gen_range(2..=order.len());
        let mut floor = Weight::MAX;
        for k in 1..len {
            let prefix: NodeSet = order[..k].iter().copied().collect();
            let value = f(&g, &prefix, &one(order[k]));
            if value <= floor {
                floor = value;
                let pair = f(&g, &one(order[0]), &one(order[k]));
                if value != pair {
                    return Err(format!("#{i}: prefix value {value} but f(v0, v{k}) = {pair}"));
                }
                hits += 1;
            }
        }
    }
    Ok(format!("500 sequences, {hits} running minima equal f(v0, vk)"))
}

fn criterion_8() -> Outcome {
    let mut unique_instances = 0;
    for i in 0..100 {
        let mut r = rng(8, i);
        let g = random_graph(&mut r, 2, 10);
        let p = perturb(&g, &mut r).map_err(|e| e.to_string())?;
        let n = g.node_count();
        let nodes = g.nodes();
        // Cost of every side that excludes the first node, in both graphs.
        let sides: Vec<(u64, Weight, Weight)> = (1u64..1 << (n - 1))
            .map(|bits| {
                let u: NodeSet = (1..n).filter(|k| bits >> (k - 1) & 1 == 1).map(|k| nodes[k]).collect();
                (bits << 1, g.cut_cost(&u).expect("proper"), p.cut_cost(&u).expect("proper"))
            })
            .collect();
        let mut all_unique = true;
        for a in 0..n {
            for b in a + 1..n {
                let split: Vec<&(u64, Weight, Weight)> =
                    sides.iter().filter(|(m, _, _)| (m >> a & 1) != (m >> b & 1)).collect();
                let best = split.iter().map(|x| x.1).min().expect("a separating side");
                let noisy = split.iter().map(|x| x.2).min().expect("a separating side");
                let winners: Vec<_> = split.iter().filter(|x| x.2 == noisy).collect();
                if winners.iter().any(|x| x.1 != best) {
                    return Err(format!("#{i}: a perturbed minimum {}-{} cut is not minimum", nodes[a].0, nodes[b].0));
                }
                all_unique &= winners.len() == 1;
            }
        }
        unique_instances += all_unique as u32;
    }
    let detail = format!("100 graphs safe; {unique_instances}/100 with unique minima for all pairs (need ≥ 90)");
    if unique_instances >= 90 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_9(corpus: &Corpus1) -> Outcome {
    let mut a = corpus.attempts.clone();
    if a.is_empty() {
        return Err("no randomized splits recorded".into());
    }
    a.sort_unstable();
    let median = a[a.len() / 2];
    let stats: serde_json::Value = serde_json::from_str(&corpus.stats_json).map_err(|e| e.to_string())?;
    if stats.get("attempts").is_none() {
        return Err("stats JSON lacks `attempts`".into());
    }
    let detail = format!("{} splits within cap, median attempts {median}, max {}", a.len(), a[a.len() - 1]);
    if median <= 3 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_10() -> Outcome {
    for i in 0..1000 {
        let mut r = rng(10, i);
        let g = random_graph(&mut r, 2, 12);
        let order = shuffled(&g, &mut r);
        let k = r.gen_range(1..order.len());
        let j = r.gen_range(k..order.len());
        let s: NodeSet = order[..k].iter().copied().collect();
        let t: NodeSet = order[k..=j].iter().copied().collect();
        let brute = brute_min_cut(&g, &s, &t).map_err(|e| e.to_string())?;
        let engine = min_cut(&g, &s, &t, &mut WorkCounter::new()).map_err(|e| e.to_string())?;
        if engine.cost != brute.cost {
            return Err(format!("#{i}: engine {} vs enumeration {}", engine.cost, brute.cost));
        }
        let (u, v) = (order[0], order[k]);
        let latest = latest_min_cut(&g, u, v, &mut WorkCounter::new()).map_err(|e| e.to_string())?;
        let pair = brute_min_cut(&g, &one(u), &one(v)).map_err(|e| e.to_string())?;
        if latest.members != pair.sink_side || latest.cost != pair.cost {
            return Err(format!("#{i}: latest cut is not the inclusion-minimal minimum cut"));
        }
    }
    Ok("1000 instances agree; latest cuts inclusion-minimal".into())
}

fn without_wall_time(stats: &Stats) -> Stats {
    Stats { wall_ms: 0, ..stats.clone() }
}

fn criterion_11() -> Outcome {
    let mut files = 0;
    for (k, family) in Family::ALL.into_iter().enumerate() {
        for n in [2u32, 7, 20, 64] {
            let g = family.generate(n, &mut rng(11, k as u64 * 100 + u64::from(n)));
            let text = write_dimacs(&g);
            let back = parse_dimacs(&text).map_err(|e| e.to_string())?;
            if write_dimacs(&back) != text || back != g {
                return Err(format!("{family}-{n}: round trip differs"));
            }
            files += 1;
        }
    }
    for i in 0..10 {
        let g = random_graph(&mut rng(11, 1000 + i), 2, 24);
        for method in Method::ALL {
            let (t1, s1) = compute(&g, method, i, PipelineConfig::default()).map_err(|e| e.to_string())?;
            let (t2, s2) = compute(&g, method, i, PipelineConfig::default()).map_err(|e| e.to_string())?;
            if write_tree(&t1, &method.to_string(), i) != write_tree(&t2, &method.to_string(), i)
                || without_wall_time(&s1) != without_wall_time(&s2)
            {
                return Err(format!("#{i} {method}: runs differ"));
            }
        }
    }
    // The binary, end to end.
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let input = dir.path().join("g.dimacs");
    std::fs::write(&input, write_dimacs(&random_graph(&mut rng(11, 2000), 12, 20))).map_err(|e| e.to_string())?;
    let run = |tag: &str| -> Result<(String, serde_json::Value), String> {
        let out = dir.path().join(format!("{tag}.tree"));
        let stats = dir.path().join(format!("{tag}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_cuttree"))
            .arg("compute")
            .arg(&input)
            .args(["--method", "weak-oc", "--seed", "42", "--out"])
            .arg(&out)
            .arg("--stats-out")
            .arg(&stats)
            .status()
            .map_err(|e| e.to_string())?;
        if !status.success() {
            return Err(format!("compute exited with {status}"));
        }
        let mut json: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&stats).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
        json["wall_ms"] = 0.into();
        Ok((std::fs::read_to_string(&out).map_err(|e| e.to_string())?, json))
    };
    if run("a")? != run("b")? {
        return Err("CLI runs with one seed differ".into());
    }
    Ok(format!("{files} canonical files byte-identical; seeded runs identical (wall_ms excluded)"))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |id: u32, name: &str, start: Instant, outcome: Outcome| {
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("criterion {id:>2} PASS  {name}: {d} [{secs:.1}s]"),
            Err(d) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name}: {d} [{secs:.1}s]");
            }
        }
    };
    let t = Instant::now();
    let (c1, corpus) = criterion_1();
    report(1, "cross-method agreement", t, c1);
    let t = Instant::now();
    report(2, "ordered-cuts validity", t, criterion_2());
    let t = Instant::now();
    report(3, "π* certification", t, criterion_3());
    let t = Instant::now();
    report(4, "work growth exponent", t, criterion_4());
    let t = Instant::now();
    report(5, "isolating cuts", t, criterion_5());
    let t = Instant::now();
    report(6, "certified ordered cuts", t, criterion_6());
    let t = Instant::now();
    report(7, "running-minimum prefix cuts", t, criterion_7());
    let t = Instant::now();
    report(8, "perturbation safety", t, criterion_8());
    let t = Instant::now();
    report(9, "attempt accounting", t, criterion_9(&corpus));
    let t = Instant::now();
    report(10, "engine vs enumeration", t, criterion_10());
    let t = Instant::now();
    report(11, "round trip and determinism", t, criterion_11());
    if failed == 0 {
        println!("acceptance: 11/11 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 11 criteria failed");
        ExitCode::FAILURE
    }
}
