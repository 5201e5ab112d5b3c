//! Per-vector connectivity.
//!
//! [`CgLsa`] splits every node of `G(X)` into connected groups with one
//! layered search, so all pairs are classified at once. [`Plsa`] answers a
//! single directed `s → t` query on a [`DirectedExpansion`] and stops as
//! soon as the sink shows up in a layer.

use crate::enumerate::StateVector;
use crate::error::{Error, Result};
use crate::graph::{DirectedExpansion, Graph};

/// Connected groups of `G(X)`.
///
/// Groups are numbered by their smallest node; nodes inside a group are
/// kept in the order the layered search reached them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Partition {
    group_of: Vec<u32>,
    order: Vec<usize>,
    bounds: Vec<usize>,
}

impl Partition {
    pub fn with_capacity(n: usize) -> Self {
        Partition {
            group_of: vec![0; n],
            order: Vec::with_capacity(n),
            bounds: Vec::with_capacity(n + 1),
        }
    }

    pub fn node_count(&self) -> usize {
        self.group_of.len()
    }

    pub fn group_count(&self) -> usize {
        self.bounds.len().saturating_sub(1)
    }

    /// 0-based group id of node `v`.
    #[inline]
    pub fn group_of(&self, v: usize) -> usize {
        self.group_of[v] as usize
    }

    #[inline]
    pub fn group(&self, id: usize) -> &[usize] {
        &self.order[self.bounds[id]..self.bounds[id + 1]]
    }

    pub fn groups(&self) -> impl Iterator<Item = &[usize]> + '_ {
        self.bounds.windows(2).map(|w| &self.order[w[0]..w[1]])
    }

    /// Every node in the order it was selected by the search.
    pub fn visit_order(&self) -> &[usize] {
        &self.order
    }

    /// First node of each group, i.e. where each new group was started.
    pub fn start_nodes(&self) -> Vec<usize> {
        self.groups().map(|g| g[0]).collect()
    }

    pub fn same_group(&self, a: usize, b: usize) -> bool {
        self.group_of[a] == self.group_of[b]
    }

    /// Groups with their members sorted ascending.
    pub fn sorted_groups(&self) -> Vec<Vec<usize>> {
        self.groups()
            .map(|g| {
                let mut g = g.to_vec();
                g.sort_unstable();
                g
            })
            .collect()
    }

    /// All `(s, t)` with `s < t` lying in a common group.
    pub fn connected_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.groups().flat_map(|g| {
            g.iter()
                .enumerate()
                .flat_map(move |(i, &a)| g[i + 1..].iter().map(move |&b| (a.min(b), a.max(b))))
        })
    }

    pub fn connected_pair_count(&self) -> usize {
        self.groups().map(|g| g.len() * (g.len() - 1) / 2).sum()
    }
}

/// Reusable traversal workspace for [`cg_lsa`]. Visited flags are epoch
/// stamps so nothing is cleared between calls.
#[derive(Debug, Clone)]
pub struct CgLsa {
    stamp: Vec<u32>,
    epoch: u32,
}

impl CgLsa {
    pub fn new(n: usize) -> Self {
        CgLsa {
            stamp: vec![0; n],
            epoch: 0,
        }
    }

    pub fn run(&mut self, g: &Graph, x: &StateVector, out: &mut Partition) -> Result<()> {
        if x.len() != g.arc_count() {
            return Err(Error::DimensionMismatch {
                expected: g.arc_count(),
                got: x.len(),
            });
        }
        self.run_unchecked(g, x, out);
        Ok(())
    }

    /// [`run`](Self::run) without the dimension check, for the hot loop.
    #[inline]
    pub fn run_unchecked(&mut self, g: &Graph, x: &StateVector, out: &mut Partition) {
        let n = g.node_count();
        if self.stamp.len() != n {
            self.stamp = vec![0; n];
            self.epoch = 0;
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        let epoch = self.epoch;
        let bits = x.bits();

        out.group_of.resize(n, 0);
        out.order.clear();
        out.bounds.clear();

        let mut next_start = 0;
        loop {
            // smallest-label node not yet assigned
            while next_start < n && self.stamp[next_start] == epoch {
                next_start += 1;
            }
            if next_start == n {
                break;
            }
            let group = out.bounds.len() as u32;
            out.bounds.push(out.order.len());
            self.stamp[next_start] = epoch;
            out.order.push(next_start);

            // out.order[head..] is the pending list L
            let mut head = out.order.len() - 1;
            while head < out.order.len() {
                let k = out.order[head];
                head += 1;
                out.group_of[k] = group;
                for &(w, arc) in g.neighbors(k) {
                    if (bits >> arc) & 1 == 1 && self.stamp[w] != epoch {
                        self.stamp[w] = epoch;
                        out.order.push(w);
                    }
                }
            }
        }
        out.bounds.push(out.order.len());
    }
}

/// Connected groups of `G(X)`, allocating a fresh workspace.
pub fn cg_lsa(g: &Graph, x: &StateVector) -> Result<Partition> {
    let mut ws = CgLsa::new(g.node_count());
    let mut out = Partition::with_capacity(g.node_count());
    ws.run(g, x, &mut out)?;
    Ok(out)
}

/// Single-pair layered search over a directed expansion.
#[derive(Debug, Clone)]
pub struct Plsa {
    source: usize,
    sink: usize,
    arcs: usize,
    // per node: (head, directed arc index)
    out: Vec<Vec<(usize, usize)>>,
    seen: Vec<bool>,
    layer: Vec<usize>,
    next: Vec<usize>,
}

impl Plsa {
    pub fn new(d: &DirectedExpansion) -> Self {
        let mut out = vec![Vec::new(); d.n];
        for (i, a) in d.darcs.iter().enumerate() {
            out[a.tail].push((a.head, i));
        }
        Plsa {
            source: d.source,
            sink: d.sink,
            arcs: d.darcs.len(),
            out,
            seen: vec![false; d.n],
            layer: Vec::with_capacity(d.n),
            next: Vec::with_capacity(d.n),
        }
    }

    pub fn connected(&mut self, x: &StateVector) -> Result<bool> {
        if x.len() != self.arcs {
            return Err(Error::DimensionMismatch {
                expected: self.arcs,
                got: x.len(),
            });
        }
        Ok(self.connected_unchecked(x))
    }

    #[inline]
    pub fn connected_unchecked(&mut self, x: &StateVector) -> bool {
        let bits = x.bits();
        self.seen.fill(false);
        self.layer.clear();
        self.layer.push(self.source);
        self.seen[self.source] = true;
        loop {
            self.next.clear();
            for &v in &self.layer {
                for &(w, i) in &self.out[v] {
                    if (bits >> i) & 1 == 1 && !self.seen[w] {
                        self.seen[w] = true;
                        self.next.push(w);
                    }
                }
            }
            if self.seen[self.sink] {
                return true;
            }
            if self.next.is_empty() {
                return false;
            }
            std::mem::swap(&mut self.layer, &mut self.next);
        }
    }
}

/// Whether a directed `source → sink` path exists using arcs set in `x`.
pub fn plsa(d: &DirectedExpansion, x: &StateVector) -> Result<bool> {
    Plsa::new(d).connected(x)
}
