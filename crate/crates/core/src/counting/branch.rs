//! Branch-and-reduce counter.
//!
//! Independent sets are the satisfying assignments of the monotone system
//! "not every vertex of e is selected", one constraint per edge. Each node
//! simplifies its traced instance, splits it into connected components, and
//! otherwise branches on a vertex `v` of maximum degree (smallest index on
//! ties): excluding `v` deletes every edge through it, including `v` shrinks
//! those edges by `v`.
//!
//! Reductions applied at every node:
//! - an empty edge means no assignment survives;
//! - a unit edge `{u}` forces `u` out, which satisfies every edge through `u`;
//! - an edge containing another edge is redundant;
//! - free vertices in no edge contribute a factor of 2 each.

use std::collections::HashMap;
use std::ops::{Add, Mul, Shl};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::BigCount;
use crate::hypergraph::Hypergraph;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BranchOptions {
    /// Cache sub-instance counts keyed by the normalized traced edge set.
    pub memoize: bool,
}

pub fn count_branch(g: &Hypergraph) -> BigCount {
    count_branch_with(g, BranchOptions::default())
}

pub fn count_branch_with(g: &Hypergraph, opts: BranchOptions) -> BigCount {
    let words = g.n().div_ceil(64).max(1);
    let mut free = Bits::zeros(words);
    for v in 0..g.n() {
        free.set(v);
    }
    let edges: Vec<Bits> = g
        .edges()
        .iter()
        .map(|e| {
            let mut b = Bits::zeros(words);
            for v in e.iter() {
                b.set(v);
            }
            b
        })
        .collect();
    // 2^n fits in u128 below 128 vertices
    if g.n() < 128 {
        let mut engine = Engine::<u128>::new(opts);
        BigCount::from(BigUint::from(engine.count(free, edges)))
    } else {
        let mut engine = Engine::<BigUint>::new(opts);
        BigCount::from(engine.count(free, edges))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
struct Bits(SmallVec<[u64; 2]>);

impl Bits {
    fn zeros(words: usize) -> Self {
        Bits(SmallVec::from_elem(0, words))
    }

    fn set(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    fn clear(&mut self, v: usize) {
        self.0[v / 64] &= !(1 << (v % 64));
    }

    fn contains(&self, v: usize) -> bool {
        self.0[v / 64] >> (v % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn intersects(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }

    fn union_with(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    fn minus(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }
}

trait Num: Clone + Zero + One + Add<Output = Self> + Mul<Output = Self> + Shl<usize, Output = Self> {}
impl<T> Num for T where T: Clone + Zero + One + Add<Output = T> + Mul<Output = T> + Shl<usize, Output = T> {}

struct Engine<T> {
    opts: BranchOptions,
    memo: HashMap<(Bits, Vec<Bits>), T>,
}

impl<T: Num> Engine<T> {
    fn new(opts: BranchOptions) -> Self {
        Engine {
            opts,
            memo: HashMap::new(),
        }
    }

    fn pow2(k: usize) -> T {
        T::one() << k
    }

    /// Counts assignments of `free` violating no edge; every edge is a subset of `free`.
    fn count(&mut self, mut free: Bits, edges: Vec<Bits>) -> T {
        if edges.iter().any(Bits::is_empty) {
            return T::zero();
        }

        // unit edges force their vertex out
        let mut forced = Bits::zeros(free.0.len());
        for e in edges.iter().filter(|e| e.count() == 1) {
            forced.union_with(e);
        }
        let edges: Vec<Bits> = if forced.is_empty() {
            edges
        } else {
            free = free.minus(&forced);
            edges.into_iter().filter(|e| !e.intersects(&forced)).collect()
        };

        let mut edges = minimal_edges(edges);
        if edges.is_empty() {
            return Self::pow2(free.count());
        }

        let mut covered = Bits::zeros(free.0.len());
        for e in &edges {
            covered.union_with(e);
        }
        let loose = free.count() - covered.count();
        let factor = Self::pow2(loose);
        let free = covered;

        let key = if self.opts.memoize {
            edges.sort_unstable();
            let key = (free.clone(), edges.clone());
            if let Some(hit) = self.memo.get(&key) {
                return factor * hit.clone();
            }
            Some(key)
        } else {
            None
        };

        let parts = components(&free, &edges);
        let inner = if parts.len() > 1 {
            let mut product = T::one();
            for (part_free, part_edges) in parts {
                let c = self.count(part_free, part_edges);
                if c.is_zero() {
                    product = T::zero();
                    break;
                }
                product = product * c;
            }
            product
        } else {
            let pivot = pivot(&free, &edges);
            let mut rest = free.clone();
            rest.clear(pivot);

            let excluded: Vec<Bits> = edges.iter().filter(|e| !e.contains(pivot)).cloned().collect();
            let included: Vec<Bits> = edges
                .iter()
                .map(|e| {
                    let mut e = e.clone();
                    e.clear(pivot);
                    e
                })
                .collect();
            self.count(rest.clone(), excluded) + self.count(rest, included)
        };

        if let Some(key) = key {
            self.memo.insert(key, inner.clone());
        }
        factor * inner
    }
}

/// Drops duplicate edges and edges that contain another edge.
fn minimal_edges(mut edges: Vec<Bits>) -> Vec<Bits> {
    edges.sort_by_key(Bits::count);
    let mut kept: Vec<Bits> = Vec::with_capacity(edges.len());
    for e in edges {
        if !kept.iter().any(|k| k.is_subset(&e)) {
            kept.push(e);
        }
    }
    kept
}

/// Maximum degree, smallest index on ties.
fn pivot(free: &Bits, edges: &[Bits]) -> usize {
    let mut best = (0, usize::MAX);
    for v in free.iter() {
        let deg = edges.iter().filter(|e| e.contains(v)).count();
        if deg > best.0 {
            best = (deg, v);
        }
    }
    best.1
}

/// Splits edges into connected components; `free` must equal the union of edges.
fn components(free: &Bits, edges: &[Bits]) -> Vec<(Bits, Vec<Bits>)> {
    let mut remaining: Vec<Bits> = edges.to_vec();
    let mut out = Vec::new();
    while let Some(seed) = remaining.pop() {
        let mut span = seed.clone();
        let mut members = vec![seed];
        loop {
            let before = members.len();
            let mut i = 0;
            while i < remaining.len() {
                if remaining[i].intersects(&span) {
                    let e = remaining.swap_remove(i);
                    span.union_with(&e);
                    members.push(e);
                } else {
                    i += 1;
                }
            }
            if members.len() == before {
                break;
            }
        }
        out.push((span, members));
    }
    debug_assert_eq!(out.iter().map(|(s, _)| s.count()).sum::<usize>(), free.count());
    out.sort_by_key(|(s, _)| s.first());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_complete_r_partite, build_hrd};

    #[test]
    fn examples() {
        let triple = Hypergraph::new(3, [[0, 1, 2]]).unwrap();
        assert_eq!(count_branch(&triple), BigCount::from(7));
        let h = build_hrd(3, 2).unwrap().0;
        let two = Hypergraph::disjoint_union(&[h.clone(), h]);
        assert_eq!(count_branch(&two), BigCount::from(1849));
        let k33 = build_complete_r_partite(2, 3).unwrap();
        assert_eq!(count_branch(&k33), BigCount::from(15));
    }

    #[test]
    fn unit_edges_force_exclusion() {
        let g = Hypergraph::new(3, vec![vec![0], vec![1, 2]]).unwrap();
        assert_eq!(count_branch(&g), BigCount::from(3));
        let singletons = Hypergraph::new(3, vec![vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(count_branch(&singletons), BigCount::one());
    }

    #[test]
    fn edgeless_is_power_of_two() {
        assert_eq!(count_branch(&Hypergraph::empty(10)), BigCount::pow2(10));
        assert_eq!(count_branch(&Hypergraph::empty(0)), BigCount::one());
    }

    #[test]
    fn wide_instances_use_big_integers() {
        let (h, _) = build_hrd(3, 3).unwrap();
        let many = Hypergraph::disjoint_union(&vec![h; 16]);
        assert_eq!(many.n(), 144);
        let expected = super::super::ind_hrd_formula(3, 3).unwrap().pow(16);
        assert_eq!(count_branch(&many), expected);
    }

    #[test]
    fn memo_agrees() {
        let g = build_complete_r_partite(3, 3).unwrap();
        assert_eq!(count_branch_with(&g, BranchOptions { memoize: true }), count_branch(&g));
    }
}
