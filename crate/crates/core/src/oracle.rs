//! Reference computations that share nothing with the main path but the
//! [`Graph`] type: plain integer counting over state vectors, union-find
//! connectivity, per-arc products and Kahan summation. Deliberately slow.
//!
//! The Monte-Carlo estimator draws arc states from a ChaCha8 stream seeded
//! with `seed_from_u64(seed)`; estimates are reproducible per seed for a
//! given build.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::relia::{Mode, ReliabilityResult};

pub const ORACLE_MAX_ARCS: usize = 20;

/// Union by size with path halving.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i;
        }
        self.size.fill(1);
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Brute-force all-pairs reliability.
pub fn oracle_all_pairs(g: &Graph) -> Result<ReliabilityResult> {
    let n = g.node_count();
    let m = g.arc_count();
    if m > ORACLE_MAX_ARCS {
        return Err(Error::LimitExceeded {
            arcs: m,
            limit: ORACLE_MAX_ARCS,
            hint: " for the oracle",
        });
    }
    let arcs = g.arcs();
    let probs: Vec<f64> = (0..m).map(|k| g.arc_probability(k)).collect();

    let mut sums = vec![vec![Kahan::default(); n]; n];
    let mut counts = vec![vec![vec![0u64; m + 1]; n]; n];
    let mut total = Kahan::default();
    let mut dsu = DisjointSets::new(n);
    let mut roots = vec![0; n];

    let vectors = 1u64 << m;
    for state in 0..vectors {
        dsu.reset();
        let mut pr = 1.0;
        let mut working = 0;
        for (k, a) in arcs.iter().enumerate() {
            if state & (1 << k) != 0 {
                dsu.union(a.u, a.v);
                pr *= probs[k];
                working += 1;
            } else {
                pr *= 1.0 - probs[k];
            }
        }
        total.add(pr);
        for (v, r) in roots.iter_mut().enumerate() {
            *r = dsu.find(v);
        }
        for s in 0..n {
            for t in s + 1..n {
                if roots[s] == roots[t] {
                    sums[s][t].add(pr);
                    counts[s][t][working] += 1;
                }
            }
        }
    }

    let mut reliability = vec![vec![0.0; n]; n];
    for s in 0..n {
        for t in s + 1..n {
            reliability[s][t] = sums[s][t].sum;
            reliability[t][s] = sums[s][t].sum;
        }
    }
    let mode = if g.homogeneous_p().is_some() {
        Mode::Homogeneous
    } else {
        Mode::Heterogeneous
    };
    Ok(ReliabilityResult::from_parts(
        reliability,
        &counts,
        mode,
        vectors,
        total.sum,
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct McEstimate {
    pub mean: Vec<Vec<f64>>,
    /// `sqrt(mean (1 - mean) / samples)`.
    pub stderr: Vec<Vec<f64>>,
    pub samples: u64,
    pub seed: u64,
}

/// Monte-Carlo estimate of every pair's reliability.
pub fn monte_carlo(g: &Graph, samples: u64, seed: u64) -> Result<McEstimate> {
    if samples == 0 {
        return Err(Error::Argument("samples must be at least 1".into()));
    }
    let n = g.node_count();
    let m = g.arc_count();
    let probs: Vec<f64> = (0..m).map(|k| g.arc_probability(k)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dsu = DisjointSets::new(n);
    let mut roots = vec![0; n];
    let mut hits = vec![vec![0u64; n]; n];

    for _ in 0..samples {
        dsu.reset();
        for (a, &p) in g.arcs().iter().zip(&probs) {
            if rng.random::<f64>() < p {
                dsu.union(a.u, a.v);
            }
        }
        for (v, r) in roots.iter_mut().enumerate() {
            *r = dsu.find(v);
        }
        for s in 0..n {
            for t in s + 1..n {
                if roots[s] == roots[t] {
                    hits[s][t] += 1;
                }
            }
        }
    }

    let mut mean = vec![vec![0.0; n]; n];
    let mut stderr = vec![vec![0.0; n]; n];
    let k = samples as f64;
    for s in 0..n {
        for t in s + 1..n {
            let mu = hits[s][t] as f64 / k;
            let se = (mu * (1.0 - mu) / k).sqrt();
            mean[s][t] = mu;
            mean[t][s] = mu;
            stderr[s][t] = se;
            stderr[t][s] = se;
        }
    }
    Ok(McEstimate {
        mean,
        stderr,
        samples,
        seed,
    })
}
