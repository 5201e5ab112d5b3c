//! Random connected simple graphs.
//!
//! A random recursive spanning tree is laid over a shuffled node order, then
//! `m - (n - 1)` distinct non-tree arcs are drawn uniformly. The stream is
//! ChaCha8 seeded with `seed_from_u64(seed)`, so `(n, m, seed)` fixes the
//! graph.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Arc, ArcProbabilities, Graph};

pub fn random_connected_with<R: Rng>(
    n: usize,
    m: usize,
    probs: ArcProbabilities,
    rng: &mut R,
) -> Result<Graph> {
    let max = n * n.saturating_sub(1) / 2;
    if n < 2 || m + 1 < n || m > max {
        return Err(Error::Argument(format!(
            "a connected simple graph on {n} nodes needs between {} and {max} arcs, got {m}",
            n.saturating_sub(1)
        )));
    }
    let mut nodes: Vec<usize> = (0..n).collect();
    nodes.shuffle(rng);

    let mut present = vec![false; n * n];
    let mut arcs = Vec::with_capacity(m);
    for i in 1..n {
        let u = nodes[rng.random_range(0..i)];
        let v = nodes[i];
        present[u * n + v] = true;
        present[v * n + u] = true;
        arcs.push(Arc::new(u.min(v), u.max(v)));
    }

    let mut rest: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !present[u * n + v])
        .collect();
    rest.shuffle(rng);
    arcs.extend(
        rest.into_iter()
            .take(m + 1 - n)
            .map(|(u, v)| Arc::new(u, v)),
    );
    arcs.shuffle(rng);

    Graph::new(n, arcs, probs)
}

pub fn random_connected(n: usize, m: usize, seed: u64, probs: ArcProbabilities) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_connected_with(n, m, probs, &mut rng)
}
