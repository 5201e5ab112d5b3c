#![allow(dead_code)]

use netrel::generate::random_connected_with;
use netrel::graph::{parse_graph, Arc, ArcProbabilities, Graph, ParseOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const BRIDGE: &str = "4 5\n1 2\n1 3\n2 3\n2 4\n3 4\n";

pub fn bridge(p: f64) -> Graph {
    parse_graph(
        BRIDGE,
        ParseOptions {
            p: Some(p),
            allow_disconnected: false,
        },
    )
    .unwrap()
}

/// Every connected labelled simple graph on `n` nodes.
pub fn connected_graphs(n: usize, p: f64) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    for mask in 1u32..(1 << pairs.len()) {
        let arcs: Vec<Arc> = pairs
            .iter()
            .enumerate()
            .filter(|&(k, _)| mask & (1 << k) != 0)
            .map(|(_, &(u, v))| Arc::new(u, v))
            .collect();
        if arcs.len() + 1 < n {
            continue;
        }
        if let Ok(g) = Graph::new(n, arcs, ArcProbabilities::Homogeneous(p)) {
            out.push(g);
        }
    }
    out
}

pub fn random_probs<R: Rng>(m: usize, rng: &mut R) -> Vec<f64> {
    (0..m).map(|_| rng.random_range(0.05..0.95)).collect()
}

/// Random connected graph with `n` in `2..=max_n` and `m <= max_m`.
/// Odd draws get per-arc probabilities.
pub fn random_graph<R: Rng>(rng: &mut R, max_n: usize, max_m: usize, heterogeneous: bool) -> Graph {
    let n = rng.random_range(2..=max_n);
    let most = (n * (n - 1) / 2).min(max_m);
    let m = rng.random_range(n - 1..=most);
    let probs = if heterogeneous {
        ArcProbabilities::PerArc(random_probs(m, rng))
    } else {
        ArcProbabilities::Homogeneous(rng.random_range(0.05..0.95))
    };
    random_connected_with(n, m, probs, rng).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
