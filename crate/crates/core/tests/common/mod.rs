//! Random instance generators and brute-force oracles shared by the
//! integration tests. The oracles only use the graph's neighbor lists and the
//! payoff matrices, never the crate's bitmask kernels.

#![allow(dead_code)]

use std::path::PathBuf;

use egn::{EgnInstance, Graph, PayoffMatrix, PureProfile};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

/// Graph with each pair joined independently with probability `p`; may be
/// disconnected and may have isolated vertices.
pub fn random_graph(rng: &mut TestRng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, &edges).unwrap()
}

/// Random labelled spanning tree plus extra edges with probability `p`.
pub fn random_connected_graph(rng: &mut TestRng, n: usize, p: f64) -> Graph {
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.random_range(0..i);
        edges.push((order[i], order[j]));
    }
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::from_edge_list(n, &edges).unwrap();
    assert!(g.is_connected());
    g
}

/// Coordination matrix: `σ_C`, `σ_D` both positive.
pub fn random_coordination(rng: &mut TestRng) -> PayoffMatrix {
    let sd = rng.random_range(0.2..3.0);
    let sc = sd * rng.random_range(0.05..6.0);
    let dc = rng.random_range(-2.0..2.0);
    let cd = rng.random_range(-2.0..2.0);
    PayoffMatrix::new(dc + sc, cd, dc, cd + sd)
}

/// Anti-coordination matrix with ratio `r` and scale `s`.
pub fn anti_with_ratio(rng: &mut TestRng, r: f64) -> PayoffMatrix {
    let s = rng.random_range(0.2..3.0);
    let dc = rng.random_range(-2.0..2.0);
    let cd = rng.random_range(-2.0..2.0);
    PayoffMatrix::new(dc - r * s, cd, dc, cd - s)
}

/// Ratio drawn log-uniformly from about `[0.05, 20]`.
pub fn random_anti_coordination(rng: &mut TestRng) -> PayoffMatrix {
    let r = rng.random_range(-3.0f64..3.0).exp();
    anti_with_ratio(rng, r)
}

/// Small integer entries, so ties (`λ_v = 0`) and `σ_D = 0` come up often.
/// One draw in four forces `σ_D = 0`.
pub fn random_integer_matrix(rng: &mut TestRng) -> PayoffMatrix {
    let mut e = || rng.random_range(-3i32..=3) as f64;
    let (cc, cd, dc, mut dd) = (e(), e(), e(), e());
    if rng.random_range(0..4) == 0 {
        dd = cd;
    }
    PayoffMatrix::new(cc, cd, dc, dd)
}

pub fn random_mixed_instance(rng: &mut TestRng, n: usize) -> EgnInstance {
    let p = rng.random_range(0.1..0.7);
    let g = random_graph(rng, n, p);
    let payoffs = (0..n)
        .map(|_| match rng.random_range(0..4) {
            0 => random_coordination(rng),
            1 => random_anti_coordination(rng),
            _ => random_integer_matrix(rng),
        })
        .collect();
    EgnInstance::new(g, payoffs).unwrap()
}

pub fn profiles(n: usize) -> impl Iterator<Item = PureProfile> {
    (0..1u64 << n).map(move |i| PureProfile::from_index(n, i).unwrap())
}

/// Payoff of `v` in the pure profile `s` computed from the matrix entries.
fn pure_payoff(inst: &EgnInstance, v: usize, own: bool, s: &[bool]) -> f64 {
    let b = inst.payoff(v);
    inst.graph()
        .neighbors(v)
        .iter()
        .map(|&w| match (own, s[w]) {
            (true, true) => b.cc,
            (true, false) => b.cd,
            (false, true) => b.dc,
            (false, false) => b.dd,
        })
        .sum()
}

/// Strict / weak Nash straight from the payoff table: `(is_nash, is_strict)`.
pub fn brute_nash(inst: &EgnInstance, p: PureProfile) -> (bool, bool) {
    let s: Vec<bool> = (0..inst.n()).map(|v| p.cooperates(v)).collect();
    let mut nash = true;
    let mut strict = true;
    for v in 0..inst.n() {
        let gain = pure_payoff(inst, v, !s[v], &s) - pure_payoff(inst, v, s[v], &s);
        if gain > 1e-9 {
            nash = false;
        }
        if gain >= -1e-9 {
            strict = false;
        }
    }
    (nash, nash && strict)
}

pub fn brute_sne(inst: &EgnInstance) -> Vec<u64> {
    profiles(inst.n())
        .filter(|&p| brute_nash(inst, p).1)
        .map(|p| p.index())
        .collect()
}

/// Independent dominating sets by scanning every subset, as bitmasks.
pub fn brute_ids(g: &Graph) -> Vec<u64> {
    let n = g.n();
    (0..1u64 << n)
        .filter(|&mask| {
            let inside = |v: usize| mask >> v & 1 == 1;
            let independent = (0..n).all(|u| !inside(u) || g.neighbors(u).iter().all(|&w| !inside(w)));
            let dominating = (0..n).all(|v| inside(v) || g.neighbors(v).iter().any(|&w| inside(w)));
            independent && dominating
        })
        .collect()
}
