//! All-pairs two-terminal reliability by exhaustive enumeration.
//!
//! Every arc-state vector is generated once, its nodes are split into
//! connected groups, and each connected pair is credited. With a common arc
//! probability `p` the credit is an integer count per `(pair, |X|)`; the
//! probabilities `P(i) = p^i (1-p)^(m-i)` are applied once at the end. With
//! per-arc probabilities the vector probability is accumulated directly.

use std::thread;

use num_rational::Ratio;

use crate::connect::{CgLsa, Partition, Plsa};
use crate::enumerate::{
    partition_range, BatCursor, Order, StateVector, VectorRange, DEFAULT_ARC_LIMIT, MAX_ARCS,
};
use crate::error::{Error, Result};
use crate::graph::{directed_expand, Graph};

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `P(i) = p^i (1-p)^(m-i)` for `i = 0..=m`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbTable {
    p: f64,
    values: Vec<f64>,
}

impl ProbTable {
    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn arcs(&self) -> usize {
        self.values.len() - 1
    }

    #[inline]
    pub fn get(&self, working: usize) -> f64 {
        self.values[working]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

pub fn precompute_p_table(p: f64, m: usize) -> Result<ProbTable> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Probability { value: p });
    }
    if m == 0 {
        return Err(Error::Argument("probability table needs m >= 1".into()));
    }
    let q = 1.0 - p;
    let values = (0..=m)
        .map(|i| p.powi(i as i32) * q.powi((m - i) as i32))
        .collect();
    Ok(ProbTable { p, values })
}

#[inline]
fn product_probability(g: &Graph, bits: u64) -> f64 {
    (0..g.arc_count())
        .map(|k| {
            let p = g.arc_probability(k);
            if (bits >> k) & 1 == 1 {
                p
            } else {
                1.0 - p
            }
        })
        .product()
}

/// `Pr(X)`: `P(|X|)` when all arcs share one probability, otherwise the
/// product of per-arc working/failure probabilities.
pub fn vector_probability(x: &StateVector, g: &Graph) -> Result<f64> {
    let m = g.arc_count();
    if x.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: x.len(),
        });
    }
    Ok(match g.homogeneous_p() {
        Some(p) => p.powi(x.popcount() as i32) * (1.0 - p).powi((m - x.popcount()) as i32),
        None => product_probability(g, x.bits()),
    })
}

#[inline]
fn pair_index(n: usize, s: usize, t: usize) -> usize {
    debug_assert!(s < t && t < n);
    s * (2 * n - s - 1) / 2 + (t - s - 1)
}

/// Connected-vector counts per unordered pair and per number of working
/// arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTensor {
    n: usize,
    m: usize,
    // [working * pairs + pair]
    counts: Vec<u64>,
}

impl CountTensor {
    pub fn new(n: usize, m: usize) -> Self {
        let pairs = n * (n - 1) / 2;
        CountTensor {
            n,
            m,
            counts: vec![0; pairs * (m + 1)],
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn pair_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// Number of `(s, t)`-connected vectors with `working` arcs up. Symmetric.
    pub fn get(&self, s: usize, t: usize, working: usize) -> u64 {
        if s == t {
            return 0;
        }
        let idx = pair_index(self.n, s.min(t), s.max(t));
        self.counts[working * self.pair_count() + idx]
    }

    pub fn total(&self, s: usize, t: usize) -> u64 {
        (0..=self.m).map(|i| self.get(s, t, i)).sum()
    }

    fn merge(&mut self, other: &CountTensor) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Homogeneous,
    Heterogeneous,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReliabilityResult {
    n: usize,
    reliability: Vec<f64>,
    tensor: CountTensor,
    pub mode: Mode,
    pub vectors_visited: u64,
    /// `Σ Pr(X)` over every enumerated vector, connected or not.
    pub total_probability: f64,
}

impl ReliabilityResult {
    pub fn node_count(&self) -> usize {
        self.n
    }

    /// `R[s][t]`; the diagonal is 0.
    pub fn reliability(&self, s: usize, t: usize) -> f64 {
        self.reliability[s * self.n + t]
    }

    /// `C[s][t]`, the number of vectors connecting `s` and `t`.
    pub fn count(&self, s: usize, t: usize) -> u64 {
        self.tensor.total(s, t)
    }

    pub fn counts(&self) -> &CountTensor {
        &self.tensor
    }

    pub fn reliability_matrix(&self) -> Vec<Vec<f64>> {
        self.reliability
            .chunks(self.n)
            .map(<[f64]>::to_vec)
            .collect()
    }

    pub fn count_matrix(&self) -> Vec<Vec<u64>> {
        (0..self.n)
            .map(|s| (0..self.n).map(|t| self.count(s, t)).collect())
            .collect()
    }

    /// Assembles a result from matrices computed elsewhere.
    /// `counts[s][t][i]` is the number of `(s, t)`-connected vectors with
    /// `i` working arcs; only `s < t` entries are read.
    pub fn from_parts(
        reliability: Vec<Vec<f64>>,
        counts: &[Vec<Vec<u64>>],
        mode: Mode,
        vectors_visited: u64,
        total_probability: f64,
    ) -> Self {
        let n = reliability.len();
        let m = counts[0][1].len() - 1;
        let pairs = n * (n - 1) / 2;
        let mut tensor = CountTensor::new(n, m);
        for s in 0..n {
            for t in s + 1..n {
                for (i, &c) in counts[s][t].iter().enumerate() {
                    tensor.counts[i * pairs + pair_index(n, s, t)] = c;
                }
            }
        }
        ReliabilityResult {
            n,
            reliability: reliability.into_iter().flatten().collect(),
            tensor,
            mode,
            vectors_visited,
            total_probability,
        }
    }

    /// Largest `|R[s][t] - other.R[s][t]|`.
    pub fn max_abs_diff(&self, other: &ReliabilityResult) -> f64 {
        self.reliability
            .iter()
            .zip(&other.reliability)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AllPairsOptions {
    pub workers: usize,
    /// Allow more than [`DEFAULT_ARC_LIMIT`] arcs.
    pub force: bool,
}

impl Default for AllPairsOptions {
    fn default() -> Self {
        AllPairsOptions {
            workers: 1,
            force: false,
        }
    }
}

pub fn check_arc_limit(m: usize, force: bool) -> Result<()> {
    if m > MAX_ARCS {
        return Err(Error::LimitExceeded {
            arcs: m,
            limit: MAX_ARCS,
            hint: "",
        });
    }
    if m > DEFAULT_ARC_LIMIT && !force {
        return Err(Error::LimitExceeded {
            arcs: m,
            limit: DEFAULT_ARC_LIMIT,
            hint: "; pass force to run anyway",
        });
    }
    Ok(())
}

struct Accumulator {
    counts: CountTensor,
    histogram: Vec<u64>,
    // heterogeneous only
    probs: Vec<CompensatedSum>,
    total: CompensatedSum,
}

fn accumulate_range(g: &Graph, range: &VectorRange, heterogeneous: bool) -> Accumulator {
    let n = g.node_count();
    let m = g.arc_count();
    let pairs = n * (n - 1) / 2;
    let mut acc = Accumulator {
        counts: CountTensor::new(n, m),
        histogram: vec![0; m + 1],
        probs: if heterogeneous {
            vec![CompensatedSum::default(); pairs]
        } else {
            Vec::new()
        },
        total: CompensatedSum::default(),
    };
    // pair_index(s, t) == base[s] + t, in wrapping arithmetic
    let base: Vec<usize> = (0..n)
        .map(|s| (s * (2 * n - s - 1) / 2).wrapping_sub(s + 1))
        .collect();

    let mut ws = CgLsa::new(n);
    let mut part = Partition::with_capacity(n);
    range.for_each(Order::Forward, |x| {
        ws.run_unchecked(g, x, &mut part);
        let working = x.popcount();
        acc.histogram[working] += 1;
        let row = &mut acc.counts.counts[working * pairs..(working + 1) * pairs];
        let pr = if heterogeneous {
            let pr = product_probability(g, x.bits());
            acc.total.add(pr);
            pr
        } else {
            0.0
        };
        for group in part.groups() {
            if group.len() < 2 {
                continue;
            }
            for (i, &a) in group.iter().enumerate() {
                for &b in &group[i + 1..] {
                    let (s, t) = if a < b { (a, b) } else { (b, a) };
                    let idx = base[s].wrapping_add(t);
                    row[idx] += 1;
                    if heterogeneous {
                        acc.probs[idx].add(pr);
                    }
                }
            }
        }
    });
    acc
}

/// Reliability of every node pair from one pass over all `2^m` vectors.
///
/// The vector range is split into `workers` contiguous pieces enumerated in
/// parallel. Integer counts merge exactly, so homogeneous results are
/// bit-identical for any worker count; heterogeneous partial sums are merged
/// in ascending range order.
pub fn all_pairs(g: &Graph, opts: AllPairsOptions) -> Result<ReliabilityResult> {
    let n = g.node_count();
    let m = g.arc_count();
    check_arc_limit(m, opts.force)?;
    let ranges = partition_range(m, opts.workers, Order::Forward)?;
    let table = g
        .homogeneous_p()
        .map(|p| precompute_p_table(p, m))
        .transpose()?;
    let heterogeneous = table.is_none();

    let parts: Vec<Accumulator> = if ranges.len() == 1 {
        vec![accumulate_range(g, &ranges[0], heterogeneous)]
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = ranges
                .iter()
                .map(|r| scope.spawn(move || accumulate_range(g, r, heterogeneous)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("enumeration worker panicked"))
                .collect()
        })
    };

    let mut parts = parts.into_iter();
    let mut acc = parts.next().expect("at least one range");
    for p in parts {
        acc.counts.merge(&p.counts);
        for (a, b) in acc.histogram.iter_mut().zip(&p.histogram) {
            *a += b;
        }
        for (a, b) in acc.probs.iter_mut().zip(&p.probs) {
            a.merge(b);
        }
        acc.total.merge(&p.total);
    }

    let vectors_visited: u64 = acc.histogram.iter().sum();
    let mut reliability = vec![0.0; n * n];
    let pairs = n * (n - 1) / 2;
    let total_probability = match &table {
        Some(table) => {
            for s in 0..n {
                for t in s + 1..n {
                    let idx = pair_index(n, s, t);
                    let mut sum = CompensatedSum::default();
                    for i in 0..=m {
                        sum.add(acc.counts.counts[i * pairs + idx] as f64 * table.get(i));
                    }
                    reliability[s * n + t] = sum.value();
                    reliability[t * n + s] = sum.value();
                }
            }
            let mut total = CompensatedSum::default();
            for (i, &h) in acc.histogram.iter().enumerate() {
                total.add(h as f64 * table.get(i));
            }
            total.value()
        }
        None => {
            for s in 0..n {
                for t in s + 1..n {
                    let r = acc.probs[pair_index(n, s, t)].value();
                    reliability[s * n + t] = r;
                    reliability[t * n + s] = r;
                }
            }
            acc.total.value()
        }
    };

    Ok(ReliabilityResult {
        n,
        reliability,
        tensor: acc.counts,
        mode: if heterogeneous {
            Mode::Heterogeneous
        } else {
            Mode::Homogeneous
        },
        vectors_visited,
        total_probability,
    })
}

/// Single-pair baseline: expand to directed arcs, enumerate every directed
/// state vector backward, test `source → sink` by layered search. Each
/// directed arc works with the probability of the arc it came from.
pub fn single_pair_traditional(g: &Graph, source: usize, sink: usize) -> Result<f64> {
    let d = directed_expand(g, source, sink)?;
    let m = d.len();
    if m == 0 {
        return Ok(0.0);
    }
    check_arc_limit(m, false)?;
    let probs: Vec<f64> = d.darcs.iter().map(|a| g.arc_probability(a.arc)).collect();
    let mut search = Plsa::new(&d);
    let mut cursor = BatCursor::new(m, Order::Backward)?;
    let mut sum = CompensatedSum::default();
    let mut visit = |x: &StateVector| {
        if search.connected_unchecked(x) {
            let pr: f64 = probs
                .iter()
                .enumerate()
                .map(|(k, &p)| if x.get(k) { p } else { 1.0 - p })
                .product();
            sum.add(pr);
        }
    };
    visit(cursor.current());
    while let Some(x) = cursor.next_vector() {
        visit(x);
    }
    Ok(sum.value())
}

/// Mean of `C[s][t]` over the `n(n-1)/2` unordered pairs.
pub fn average_connected_count(r: &ReliabilityResult) -> Ratio<u128> {
    let n = r.node_count();
    let mut total = 0u128;
    for s in 0..n {
        for t in s + 1..n {
            total += u128::from(r.count(s, t));
        }
    }
    Ratio::new(total, (n * (n - 1) / 2) as u128)
}
