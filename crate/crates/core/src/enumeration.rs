//! Exhaustive generation of d-regular r-uniform hypergraphs on `0..n`.
//!
//! Edges are chosen in increasing lexicographic order. Since every later edge
//! is larger, the next edge must start at the smallest vertex that still
//! needs degree, which makes each labeled hypergraph reachable along exactly
//! one path. A branch is cut when some vertex needs more edges than the
//! remaining positive-residual vertices can supply.
//!
//! Isomorphism rejection is a post-pass: canonical forms are collected and
//! one representative (the canonical form itself) is emitted per class, in
//! sorted order.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::hypergraph::{canonical_form_capped, Hypergraph, VertexSet};

/// What to enumerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumSpec {
    pub r: usize,
    pub d: usize,
    pub n: usize,
    pub up_to_iso: bool,
    /// Only hypergraphs whose sorted edge list starts with these edges.
    pub prefix: Vec<VertexSet>,
    pub canon_cap: usize,
}

impl EnumSpec {
    pub fn new(r: usize, d: usize, n: usize) -> Self {
        EnumSpec {
            r,
            d,
            n,
            up_to_iso: false,
            prefix: Vec::new(),
            canon_cap: crate::Caps::default().canon,
        }
    }

    pub fn up_to_iso(mut self, yes: bool) -> Self {
        self.up_to_iso = yes;
        self
    }

    pub fn with_prefix(mut self, prefix: Vec<VertexSet>) -> Self {
        self.prefix = prefix;
        self
    }

    /// `nd / r` when that is an integer.
    pub fn edge_count(&self) -> Option<usize> {
        if self.r == 0 {
            return None;
        }
        let total = self.n * self.d;
        total.is_multiple_of(self.r).then_some(total / self.r)
    }

    fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return Err(Error::invalid("r must be >= 1"));
        }
        if self.up_to_iso && self.n > self.canon_cap {
            return Err(Error::Capacity {
                what: "vertex count for isomorphism rejection",
                got: self.n,
                cap: self.canon_cap,
            });
        }
        for e in &self.prefix {
            if e.len() != self.r || e.largest().is_some_and(|m| m >= self.n) {
                return Err(Error::invalid(format!("prefix edge {e} is not an r-subset of 0..n")));
            }
        }
        Ok(())
    }

    /// False when no d-regular r-graph on n vertices can exist.
    fn feasible(&self) -> bool {
        if self.edge_count().is_none() {
            return false;
        }
        if self.d == 0 || self.n == 0 {
            return true;
        }
        self.n >= self.r && binomial(self.n - 1, self.r - 1) >= self.d
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Emits every matching hypergraph (or one per isomorphism class) to
/// `visit` and returns the number emitted.
pub fn enumerate_regular<F: FnMut(&Hypergraph)>(spec: &EnumSpec, mut visit: F) -> Result<u64> {
    spec.validate()?;
    if !spec.feasible() {
        return Ok(0);
    }
    if spec.up_to_iso {
        let mut classes = BTreeSet::new();
        let mut err = None;
        Walker::new(spec).run(&spec.prefix, &mut |g| {
            if err.is_some() {
                return;
            }
            match canonical_form_capped(g, spec.canon_cap) {
                Ok(c) => {
                    classes.insert(c);
                }
                Err(e) => err = Some(e),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        for c in &classes {
            visit(c);
        }
        Ok(classes.len() as u64)
    } else {
        let mut emitted = 0;
        Walker::new(spec).run(&spec.prefix, &mut |g| {
            emitted += 1;
            visit(g);
        });
        Ok(emitted)
    }
}

/// Prefixes of length `depth` (or complete hypergraphs, if shorter) whose
/// subtrees partition the search space of `spec`.
pub fn split_prefixes(spec: &EnumSpec, depth: usize) -> Result<Vec<Vec<VertexSet>>> {
    spec.validate()?;
    if !spec.feasible() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    Walker::new(spec).collect_prefixes(&spec.prefix, spec.prefix.len() + depth, &mut out);
    Ok(out)
}

/// Splits the search over `workers` threads, calling `visit` from the
/// worker threads as hypergraphs are found (arbitrary order).
///
/// With `up_to_iso`, workers canonicalize and a single merge stage emits
/// the classes in sorted order from the calling thread.
pub fn enumerate_regular_parallel<F>(spec: &EnumSpec, workers: usize, visit: F) -> Result<u64>
where
    F: Fn(&Hypergraph) + Sync,
{
    spec.validate()?;
    let prefixes = split_prefixes(spec, 2)?;
    if spec.up_to_iso {
        return merge_classes(spec, &prefixes, workers, |g| visit(g));
    }
    let counts = run_workers(&prefixes, workers.max(1), |p| {
        let mut k = 0u64;
        Walker::new(spec).run(p, &mut |g| {
            k += 1;
            visit(g);
        });
        k
    });
    Ok(counts.into_iter().sum())
}

/// Like [`enumerate_regular_parallel`], but emissions are buffered per prefix
/// and delivered from the calling thread in the order of [`enumerate_regular`].
pub fn enumerate_regular_parallel_ordered<F>(spec: &EnumSpec, workers: usize, mut visit: F) -> Result<u64>
where
    F: FnMut(&Hypergraph),
{
    spec.validate()?;
    let prefixes = split_prefixes(spec, 2)?;
    if spec.up_to_iso {
        return merge_classes(spec, &prefixes, workers, visit);
    }
    let per_prefix = run_workers(&prefixes, workers.max(1), |p| {
        let mut found = Vec::new();
        Walker::new(spec).run(p, &mut |g| found.push(g.clone()));
        found
    });
    let mut emitted = 0;
    for batch in per_prefix {
        for g in &batch {
            visit(g);
        }
        emitted += batch.len() as u64;
    }
    Ok(emitted)
}

fn merge_classes<F: FnMut(&Hypergraph)>(
    spec: &EnumSpec,
    prefixes: &[Vec<VertexSet>],
    workers: usize,
    mut visit: F,
) -> Result<u64> {
    let per_prefix = run_workers(prefixes, workers.max(1), |p| {
        let mut set = BTreeSet::new();
        let mut err = None;
        Walker::new(spec).run(p, &mut |g| match canonical_form_capped(g, spec.canon_cap) {
            Ok(c) => {
                set.insert(c);
            }
            Err(e) => err = Some(e),
        });
        match err {
            Some(e) => Err(e),
            None => Ok(set),
        }
    });
    let mut classes = BTreeSet::new();
    for set in per_prefix {
        classes.extend(set?);
    }
    for c in &classes {
        visit(c);
    }
    Ok(classes.len() as u64)
}

/// Runs `job` on every item using `workers` threads; results keep item order.
fn run_workers<T, R, J>(items: &[T], workers: usize, job: J) -> Vec<R>
where
    T: Sync,
    R: Send,
    J: Fn(&T) -> R + Sync,
{
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..workers.min(items.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = job(&items[i]);
                slots.lock().unwrap()[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every item processed"))
        .collect()
}

struct Walker {
    r: usize,
    n: usize,
    residual: Vec<usize>,
    edges: Vec<Vec<usize>>,
}

impl Walker {
    fn new(spec: &EnumSpec) -> Self {
        Walker {
            r: spec.r,
            n: spec.n,
            residual: vec![spec.d; spec.n],
            edges: Vec::new(),
        }
    }

    fn next_vertex(&self) -> Option<usize> {
        self.residual.iter().position(|&x| x > 0)
    }

    /// Whether `e` is a legal next edge in the current state.
    fn is_legal(&self, e: &[usize]) -> bool {
        Some(e[0]) == self.next_vertex()
            && e.iter().all(|&v| self.residual[v] > 0)
            && self.edges.last().is_none_or(|last| e > last.as_slice())
    }

    fn push(&mut self, e: Vec<usize>) {
        for &v in &e {
            self.residual[v] -= 1;
        }
        self.edges.push(e);
    }

    fn pop(&mut self) {
        let e = self.edges.pop().expect("pop on empty walker");
        for v in e {
            self.residual[v] += 1;
        }
    }

    /// Replays `prefix`; false if it is not a node of the search tree.
    fn enter(&mut self, prefix: &[VertexSet]) -> bool {
        for e in prefix {
            let e = e.as_slice().to_vec();
            if !self.is_legal(&e) {
                return false;
            }
            self.push(e);
        }
        true
    }

    fn run(&mut self, prefix: &[VertexSet], emit: &mut dyn FnMut(&Hypergraph)) {
        if self.enter(prefix) && self.viable() {
            self.descend(emit, None);
        }
    }

    fn collect_prefixes(&mut self, prefix: &[VertexSet], depth: usize, out: &mut Vec<Vec<VertexSet>>) {
        if self.enter(prefix) && self.viable() {
            self.descend(&mut |_| {}, Some((depth, out)));
        }
    }

    fn snapshot(&self) -> Vec<VertexSet> {
        self.edges
            .iter()
            .map(|e| VertexSet::from_sorted_unchecked(e.clone()))
            .collect()
    }

    fn descend(&mut self, emit: &mut dyn FnMut(&Hypergraph), mut split: Option<(usize, &mut Vec<Vec<VertexSet>>)>) {
        let Some(v) = self.next_vertex() else {
            match split {
                Some((_, out)) => out.push(self.snapshot()),
                None => emit(&Hypergraph::from_sorted_unchecked(self.n, self.snapshot())),
            }
            return;
        };
        if let Some((depth, out)) = split.as_mut() {
            if self.edges.len() == *depth {
                out.push(self.snapshot());
                return;
            }
        }
        let pool: Vec<usize> = (v + 1..self.n).filter(|&u| self.residual[u] > 0).collect();
        let floor: Option<Vec<usize>> = self
            .edges
            .last()
            .filter(|last| last[0] == v)
            .map(|last| last[1..].to_vec());
        let mut rest = Vec::with_capacity(self.r - 1);
        self.choose(v, &pool, 0, &mut rest, floor.as_deref(), emit, &mut split);
    }

    #[allow(clippy::too_many_arguments)]
    fn choose(
        &mut self,
        v: usize,
        pool: &[usize],
        start: usize,
        rest: &mut Vec<usize>,
        floor: Option<&[usize]>,
        emit: &mut dyn FnMut(&Hypergraph),
        split: &mut Option<(usize, &mut Vec<Vec<VertexSet>>)>,
    ) {
        if rest.len() == self.r - 1 {
            if floor.is_some_and(|f| rest.as_slice() <= f) {
                return;
            }
            let mut e = Vec::with_capacity(self.r);
            e.push(v);
            e.extend_from_slice(rest);
            self.push(e);
            if self.viable() {
                let split = split.as_mut().map(|(d, out)| (*d, &mut **out));
                self.descend(emit, split);
            }
            self.pop();
            return;
        }
        let need = self.r - 1 - rest.len();
        for i in start..pool.len() {
            if pool.len() - i < need {
                break;
            }
            rest.push(pool[i]);
            self.choose(v, pool, i + 1, rest, floor, emit, split);
            rest.pop();
        }
    }

    /// Necessary condition: each vertex still needing `k` edges has at least
    /// `k` distinct (r-1)-sets of other needy vertices to pair with.
    fn viable(&self) -> bool {
        let needy: Vec<usize> = (0..self.n).filter(|&u| self.residual[u] > 0).collect();
        let total: usize = needy.iter().map(|&u| self.residual[u]).sum();
        if !total.is_multiple_of(self.r) {
            return false;
        }
        let options = binomial(needy.len().saturating_sub(1), self.r - 1);
        needy.iter().all(|&u| self.residual[u] <= options)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::automorphism_count;

    fn labeled(r: usize, d: usize, n: usize) -> u64 {
        enumerate_regular(&EnumSpec::new(r, d, n), |_| {}).unwrap()
    }

    #[test]
    fn perfect_matchings_on_four() {
        let mut seen = Vec::new();
        let k = enumerate_regular(&EnumSpec::new(2, 1, 4), |g| seen.push(g.clone())).unwrap();
        assert_eq!(k, 3);
        assert_eq!(seen[0].edges(), &[VertexSet::from([0, 1]), VertexSet::from([2, 3])]);
        let iso = enumerate_regular(&EnumSpec::new(2, 1, 4).up_to_iso(true), |_| {}).unwrap();
        assert_eq!(iso, 1);
        // orbit-stabilizer: 4! / |Aut| labeled copies
        assert_eq!(24 / automorphism_count(&seen[0]), 3);
    }

    #[test]
    fn five_cycle_is_the_only_class() {
        assert_eq!(labeled(2, 2, 5), 12);
        let mut reps = Vec::new();
        enumerate_regular(&EnumSpec::new(2, 2, 5).up_to_iso(true), |g| reps.push(g.clone())).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(automorphism_count(&reps[0]), 10);
    }

    #[test]
    fn known_labeled_counts() {
        // labeled 2-regular graphs: 1, 0, 0, 1, 3, 12, 70, 465 for n = 0..7
        let expected = [1, 0, 0, 1, 3, 12, 70, 465];
        for (n, &want) in expected.iter().enumerate() {
            assert_eq!(labeled(2, 2, n), want, "n = {n}");
        }
        // labeled cubic graphs on 4 and 6 vertices
        assert_eq!(labeled(2, 3, 4), 1);
        assert_eq!(labeled(2, 3, 6), 70);
        // perfect matchings of triples on 6 and 9 vertices
        assert_eq!(labeled(3, 1, 6), 10);
        assert_eq!(labeled(3, 1, 9), 280);
        assert_eq!(labeled(3, 1, 3), 1);
    }

    #[test]
    fn infeasible_specs_emit_nothing() {
        assert_eq!(labeled(3, 1, 4), 0);
        assert_eq!(labeled(3, 2, 2), 0);
        assert_eq!(labeled(2, 4, 4), 0);
        assert_eq!(labeled(2, 0, 3), 1);
    }

    #[test]
    fn iso_cap() {
        let spec = EnumSpec::new(3, 1, 15).up_to_iso(true);
        assert!(matches!(enumerate_regular(&spec, |_| {}), Err(Error::Capacity { .. })));
    }

    #[test]
    fn emissions_are_regular_uniform_and_sorted() {
        let mut prev: Option<Hypergraph> = None;
        enumerate_regular(&EnumSpec::new(3, 2, 7), |g| {
            assert_eq!(g.uniformity(), Some(3));
            assert_eq!(g.regularity(), Some(2));
            if let Some(p) = &prev {
                assert!(p.edges() < g.edges());
            }
            prev = Some(g.clone());
        })
        .unwrap();
    }

    #[test]
    fn prefix_split_is_a_partition() {
        let spec = EnumSpec::new(2, 3, 8);
        let mut whole = Vec::new();
        enumerate_regular(&spec, |g| whole.push(g.clone())).unwrap();
        for depth in 1..=3 {
            let mut parts = Vec::new();
            for p in split_prefixes(&spec, depth).unwrap() {
                enumerate_regular(&spec.clone().with_prefix(p), |g| parts.push(g.clone())).unwrap();
            }
            assert_eq!(parts, whole, "depth {depth}");
        }
    }

    #[test]
    fn unreachable_prefix_is_empty() {
        let spec = EnumSpec::new(2, 1, 4).with_prefix(vec![VertexSet::from([1, 2])]);
        assert_eq!(enumerate_regular(&spec, |_| {}).unwrap(), 0);
        let bad = EnumSpec::new(2, 1, 4).with_prefix(vec![VertexSet::from([0, 1, 2])]);
        assert!(enumerate_regular(&bad, |_| {}).is_err());
    }

    #[test]
    fn parallel_matches_sequential() {
        let spec = EnumSpec::new(3, 2, 7);
        let mut seq = Vec::new();
        enumerate_regular(&spec, |g| seq.push(g.clone())).unwrap();

        let ordered = Mutex::new(Vec::new());
        let k = enumerate_regular_parallel_ordered(&spec, 4, |g| ordered.lock().unwrap().push(g.clone())).unwrap();
        assert_eq!(k as usize, seq.len());
        assert_eq!(ordered.into_inner().unwrap(), seq);

        let loose = Mutex::new(Vec::new());
        enumerate_regular_parallel(&spec, 3, |g| loose.lock().unwrap().push(g.clone())).unwrap();
        let mut loose = loose.into_inner().unwrap();
        loose.sort();
        let mut sorted = seq.clone();
        sorted.sort();
        assert_eq!(loose, sorted);

        let iso = spec.clone().up_to_iso(true);
        let mut a = Vec::new();
        enumerate_regular(&iso, |g| a.push(g.clone())).unwrap();
        let b = Mutex::new(Vec::new());
        enumerate_regular_parallel(&iso, 4, |g| b.lock().unwrap().push(g.clone())).unwrap();
        assert_eq!(a, b.into_inner().unwrap());
    }
}
