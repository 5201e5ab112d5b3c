//! Binary-addition enumeration of arc-state vectors.
//!
//! A state vector over `m` arcs is a machine word; coordinate `k` (0-based)
//! is bit `k`. Enumeration repeatedly adds one to the vector: in
//! [`Order::Forward`] coordinate 0 is the least significant digit, in
//! [`Order::Backward`] coordinate `m - 1` is.

use std::fmt;

use crate::error::{Error, Result};

/// Hard ceiling: `2^m` and vector indices must fit in a `u64`.
pub const MAX_ARCS: usize = 62;

/// Above this many arcs callers must opt in explicitly; work is `Θ(2^m)`.
pub const DEFAULT_ARC_LIMIT: usize = 30;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct StateVector {
    bits: u64,
    popcount: u32,
    m: u32,
}

impl StateVector {
    pub fn zero(m: usize) -> Self {
        debug_assert!(m <= MAX_ARCS);
        StateVector {
            bits: 0,
            popcount: 0,
            m: m as u32,
        }
    }

    pub fn all_ones(m: usize) -> Self {
        Self::from_bits(m, low_mask(m as u32))
    }

    /// Bits above `m` are discarded.
    pub fn from_bits(m: usize, bits: u64) -> Self {
        let bits = bits & low_mask(m as u32);
        StateVector {
            bits,
            popcount: bits.count_ones(),
            m: m as u32,
        }
    }

    /// From a coordinate list of 0/1 values, coordinate 0 first.
    pub fn from_coords(coords: &[u8]) -> Self {
        let bits = coords
            .iter()
            .enumerate()
            .fold(0u64, |acc, (k, &c)| acc | (u64::from(c != 0) << k));
        Self::from_bits(coords.len(), bits)
    }

    /// The vector at position `index` of the counting sequence in `order`.
    pub fn from_index(m: usize, order: Order, index: u64) -> Self {
        match order {
            Order::Forward => Self::from_bits(m, index),
            Order::Backward => Self::from_bits(m, reverse_low(index, m as u32)),
        }
    }

    /// Position of this vector in the counting sequence of `order`.
    pub fn index(&self, order: Order) -> u64 {
        match order {
            Order::Forward => self.bits,
            Order::Backward => reverse_low(self.bits, self.m),
        }
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Number of working arcs, `|X|`.
    #[inline]
    pub fn popcount(&self) -> usize {
        self.popcount as usize
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.m as usize
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    #[inline]
    pub fn get(&self, k: usize) -> bool {
        (self.bits >> k) & 1 == 1
    }

    pub fn coords(&self) -> Vec<u8> {
        (0..self.len()).map(|k| self.get(k) as u8).collect()
    }

    pub fn is_all_ones(&self) -> bool {
        self.popcount == self.m
    }

    /// Coordinate-wise `self <= other`.
    pub fn is_subset_of(&self, other: &StateVector) -> bool {
        self.bits & !other.bits == 0
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StateVector{self}")
    }
}

impl fmt::Display for StateVector {
    /// `(1, 0, 0, 1, 0)`, coordinate 0 first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for k in 0..self.len() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.get(k) as u8)?;
        }
        f.write_str(")")
    }
}

#[inline]
fn low_mask(m: u32) -> u64 {
    if m >= 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

fn reverse_low(x: u64, m: u32) -> u64 {
    if m == 0 {
        0
    } else {
        x.reverse_bits() >> (64 - m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    /// Coordinate 0 least significant.
    Forward,
    /// Coordinate `m - 1` least significant.
    Backward,
}

/// Walks the counting sequence one vector at a time without storing it.
#[derive(Debug, Clone)]
pub struct BatCursor {
    current: StateVector,
    order: Order,
    exhausted: bool,
    flips: u64,
}

impl BatCursor {
    /// Cursor at the zero vector.
    pub fn new(m: usize, order: Order) -> Result<Self> {
        check_arcs(m)?;
        Ok(Self::at(StateVector::zero(m), order))
    }

    /// Cursor seeded at an arbitrary vector (used for sub-ranges).
    pub fn at(start: StateVector, order: Order) -> Self {
        BatCursor {
            current: start,
            order,
            exhausted: false,
            flips: 0,
        }
    }

    #[inline]
    pub fn current(&self) -> &StateVector {
        &self.current
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }

    /// Coordinate flips performed by [`next_vector`](Self::next_vector) so far.
    pub fn flips(&self) -> u64 {
        self.flips
    }

    /// Coordinate assignments counting the `m` writes that set up the
    /// starting vector plus every flip since. For a full enumeration from
    /// the zero vector this is the number of branch nodes of the binary
    /// addition tree, `2 + 4 + ... + 2^m = 2(2^m - 1)`.
    pub fn assignments(&self) -> u64 {
        self.flips + u64::from(self.current.m)
    }

    /// Adds one to the current vector. Leading ones (from the least
    /// significant coordinate) are cleared, the first zero is set.
    /// Returns `None` once the all-ones vector has been reached.
    #[inline]
    pub fn next_vector(&mut self) -> Option<&StateVector> {
        let x = &mut self.current;
        if x.popcount == x.m {
            self.exhausted = true;
            return None;
        }
        match self.order {
            Order::Forward => {
                let t = x.bits.trailing_ones();
                // clears t low ones and sets bit t
                x.bits += 1;
                x.popcount = x.popcount + 1 - t;
                self.flips += u64::from(t) + 1;
            }
            Order::Backward => {
                let m = x.m;
                let t = (x.bits << (64 - m)).leading_ones();
                let cleared = low_mask(t) << (m - t);
                x.bits = (x.bits & !cleared) | (1u64 << (m - 1 - t));
                x.popcount = x.popcount + 1 - t;
                self.flips += u64::from(t) + 1;
            }
        }
        Some(&self.current)
    }
}

fn check_arcs(m: usize) -> Result<()> {
    if m == 0 || m > MAX_ARCS {
        return Err(Error::LimitExceeded {
            arcs: m,
            limit: MAX_ARCS,
            hint: " (need 1 <= m)",
        });
    }
    Ok(())
}

/// Visits all `2^m` vectors in `order`, starting from the zero vector.
/// Returns the number of visits.
pub fn enumerate_all<F>(m: usize, order: Order, mut visit: F) -> Result<u64>
where
    F: FnMut(&StateVector),
{
    let mut cursor = BatCursor::new(m, order)?;
    visit(cursor.current());
    let mut count = 1u64;
    while let Some(x) = cursor.next_vector() {
        visit(x);
        count += 1;
    }
    Ok(count)
}

/// A contiguous piece of the counting sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VectorRange {
    pub start_index: u64,
    pub start: StateVector,
    pub count: u64,
}

impl VectorRange {
    /// Visits the `count` vectors of this range in `order`.
    pub fn for_each<F>(&self, order: Order, mut visit: F) -> u64
    where
        F: FnMut(&StateVector),
    {
        if self.count == 0 {
            return 0;
        }
        let mut cursor = BatCursor::at(self.start, order);
        visit(cursor.current());
        for _ in 1..self.count {
            let x = cursor
                .next_vector()
                .expect("range extends past the all-ones vector");
            visit(x);
        }
        self.count
    }
}

/// Splits the `2^m` sequence into at most `workers` contiguous, disjoint,
/// covering ranges of near-equal size (sizes differ by at most one).
pub fn partition_range(m: usize, workers: usize, order: Order) -> Result<Vec<VectorRange>> {
    check_arcs(m)?;
    if workers == 0 {
        return Err(Error::Argument("workers must be at least 1".into()));
    }
    let total = 1u64 << m;
    let parts = (workers as u64).min(total);
    let base = total / parts;
    let extra = total % parts;
    let mut ranges = Vec::with_capacity(parts as usize);
    let mut start_index = 0u64;
    for i in 0..parts {
        let count = base + u64::from(i < extra);
        ranges.push(VectorRange {
            start_index,
            start: StateVector::from_index(m, order, start_index),
            count,
        });
        start_index += count;
    }
    Ok(ranges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(coords: &[u8]) -> StateVector {
        StateVector::from_coords(coords)
    }

    #[test]
    fn forward_steps() {
        let mut c = BatCursor::at(v(&[0, 0, 0, 0, 0]), Order::Forward);
        assert_eq!(*c.next_vector().unwrap(), v(&[1, 0, 0, 0, 0]));
        let mut c = BatCursor::at(v(&[1, 1, 0, 0, 0]), Order::Forward);
        assert_eq!(*c.next_vector().unwrap(), v(&[0, 0, 1, 0, 0]));
        assert_eq!(c.current().popcount(), 1);
        assert_eq!(c.flips(), 3);
    }

    #[test]
    fn backward_steps() {
        let mut c = BatCursor::at(v(&[0; 6]), Order::Backward);
        assert_eq!(*c.next_vector().unwrap(), v(&[0, 0, 0, 0, 0, 1]));
        let mut c = BatCursor::at(v(&[1, 0, 1, 1, 1, 1]), Order::Backward);
        assert_eq!(*c.next_vector().unwrap(), v(&[1, 1, 0, 0, 0, 0]));
    }

    #[test]
    fn all_ones_is_terminal() {
        for order in [Order::Forward, Order::Backward] {
            let mut c = BatCursor::at(StateVector::all_ones(5), order);
            assert!(!c.is_exhausted());
            assert!(c.next_vector().is_none());
            assert!(c.is_exhausted());
        }
    }

    #[test]
    fn single_arc() {
        let mut seen = Vec::new();
        let n = enumerate_all(1, Order::Forward, |x| seen.push(x.coords())).unwrap();
        assert_eq!(n, 2);
        assert_eq!(seen, vec![vec![0], vec![1]]);
    }

    #[test]
    fn arc_count_bounds() {
        assert!(enumerate_all(0, Order::Forward, |_| {}).is_err());
        assert!(BatCursor::new(63, Order::Forward).is_err());
        assert!(BatCursor::new(62, Order::Forward).is_ok());
    }

    #[test]
    fn flip_counts() {
        for m in 1..=12usize {
            let mut c = BatCursor::new(m, Order::Forward).unwrap();
            while c.next_vector().is_some() {}
            // each coordinate k (0-based) changes 2^(m-k) - 1 times
            let expected: u64 = (0..m).map(|k| (1u64 << (m - k)) - 1).sum();
            assert_eq!(c.flips(), expected);
            assert_eq!(c.assignments(), 2 * ((1u64 << m) - 1));
        }
    }

    #[test]
    fn partition_sizes() {
        let r = partition_range(5, 1, Order::Forward).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].count, 32);

        let r = partition_range(5, 4, Order::Forward).unwrap();
        assert_eq!(r.iter().map(|x| x.count).collect::<Vec<_>>(), vec![8; 4]);

        let r = partition_range(10, 3, Order::Forward).unwrap();
        assert_eq!(
            r.iter().map(|x| x.count).collect::<Vec<_>>(),
            vec![342, 341, 341]
        );

        let r = partition_range(2, 16, Order::Forward).unwrap();
        assert_eq!(r.len(), 4);
        assert!(partition_range(3, 0, Order::Forward).is_err());
    }

    fn concat(m: usize, workers: usize, order: Order) -> Vec<u64> {
        let mut out = Vec::new();
        for r in partition_range(m, workers, order).unwrap() {
            r.for_each(order, |x| out.push(x.bits()));
        }
        out
    }

    #[test]
    fn partitions_reproduce_single_worker_order() {
        for order in [Order::Forward, Order::Backward] {
            let mut whole = Vec::new();
            enumerate_all(10, order, |x| whole.push(x.bits())).unwrap();
            for workers in [1, 2, 3, 4, 7, 1024, 5000] {
                assert_eq!(concat(10, workers, order), whole, "{order:?} {workers}");
            }
        }
    }

    #[test]
    fn index_round_trip() {
        for order in [Order::Forward, Order::Backward] {
            let mut i = 0u64;
            enumerate_all(7, order, |x| {
                assert_eq!(x.index(order), i);
                assert_eq!(StateVector::from_index(7, order, i), *x);
                i += 1;
            })
            .unwrap();
        }
    }

    #[test]
    fn display() {
        assert_eq!(v(&[1, 0, 0, 1, 0]).to_string(), "(1, 0, 0, 1, 0)");
    }

    proptest! {
        #[test]
        fn enumeration_is_a_bijection(m in 1usize..=12, backward in any::<bool>()) {
            let order = if backward { Order::Backward } else { Order::Forward };
            let mut seen = vec![false; 1 << m];
            let mut fresh_popcount_ok = true;
            let count = enumerate_all(m, order, |x| {
                fresh_popcount_ok &= x.popcount() == x.bits().count_ones() as usize;
                seen[x.bits() as usize] = true;
            }).unwrap();
            prop_assert_eq!(count, 1u64 << m);
            prop_assert!(seen.iter().all(|&s| s));
            prop_assert!(fresh_popcount_ok);
        }

        #[test]
        fn step_is_increment(m in 1usize..=62, raw in any::<u64>(), backward in any::<bool>()) {
            let order = if backward { Order::Backward } else { Order::Forward };
            let x = StateVector::from_bits(m, raw);
            let i = x.index(order);
            let mut c = BatCursor::at(x, order);
            match c.next_vector() {
                None => prop_assert!(x.is_all_ones()),
                Some(y) => {
                    prop_assert_eq!(y.index(order), i + 1);
                    prop_assert_eq!(y.popcount(), y.bits().count_ones() as usize);
                }
            }
        }
    }
}
