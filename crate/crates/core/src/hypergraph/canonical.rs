//! Canonical labelling by exhaustive search over relabelings.
//!
//! The canonical form is the relabeled hypergraph whose sorted edge list is
//! lexicographically least. The search assigns labels `0, 1, ...` one vertex
//! at a time and prunes a branch once a lower bound on every completion is no
//! better than the best complete labelling found so far. Vertices whose
//! transposition is an automorphism ("twins") are interchangeable, so only
//! one member of each twin class is tried per level.

use super::{Hypergraph, VertexSet};
use crate::error::{Error, Result};

/// Default vertex cap for canonicalization.
pub const DEFAULT_CANON_CAP: usize = 12;

pub fn canonical_form(g: &Hypergraph) -> Result<Hypergraph> {
    canonical_form_capped(g, DEFAULT_CANON_CAP)
}

pub fn canonical_form_capped(g: &Hypergraph, cap: usize) -> Result<Hypergraph> {
    if g.n() > cap {
        return Err(Error::Capacity {
            what: "vertex count for canonicalization",
            got: g.n(),
            cap,
        });
    }
    let edges = search_best(g)
        .into_iter()
        .map(VertexSet::from_sorted_unchecked)
        .collect();
    Ok(Hypergraph::from_sorted_unchecked(g.n(), edges))
}

pub fn is_isomorphic(a: &Hypergraph, b: &Hypergraph) -> Result<bool> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    let mut da = a.degrees();
    let mut db = b.degrees();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// Number of vertex permutations mapping `g` onto itself.
pub fn automorphism_count(g: &Hypergraph) -> u64 {
    fn extend(g: &Hypergraph, image: &mut Vec<usize>, used: &mut [bool], deg: &[usize]) -> u64 {
        let v = image.len();
        if v == g.n() {
            return 1;
        }
        let mut total = 0;
        for w in 0..g.n() {
            if used[w] || deg[w] != deg[v] {
                continue;
            }
            image.push(w);
            used[w] = true;
            // every edge whose largest vertex is v is now fully mapped
            let ok = g
                .edges()
                .iter()
                .filter(|e| e.largest() == Some(v))
                .all(|e| g.has_edge(&VertexSet::from_iter_unsorted(e.iter().map(|x| image[x]))));
            if ok {
                total += extend(g, image, used, deg);
            }
            used[w] = false;
            image.pop();
        }
        total
    }
    let deg = g.degrees();
    extend(g, &mut Vec::with_capacity(g.n()), &mut vec![false; g.n()], &deg)
}

/// A sorted label sequence in a form whose `Ord` is lexicographic order.
trait Key: Ord + Clone {
    fn pack(labels: &[usize]) -> Self;
    fn unpack(&self) -> Vec<usize>;
}

impl Key for Vec<usize> {
    fn pack(labels: &[usize]) -> Self {
        labels.to_vec()
    }

    fn unpack(&self) -> Vec<usize> {
        self.clone()
    }
}

/// Up to 16 labels below 255, one byte each (label + 1), most significant
/// first; unused trailing bytes are zero so prefixes sort first.
impl Key for u128 {
    fn pack(labels: &[usize]) -> Self {
        labels
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &l)| acc | ((l as u128 + 1) << (8 * (15 - i))))
    }

    fn unpack(&self) -> Vec<usize> {
        (0..16)
            .map(|i| (self >> (8 * (15 - i))) as u8)
            .take_while(|&b| b != 0)
            .map(|b| b as usize - 1)
            .collect()
    }
}

fn search_best(g: &Hypergraph) -> Vec<Vec<usize>> {
    let max_edge = g.edges().iter().map(VertexSet::len).max().unwrap_or(0);
    if g.n() < 255 && max_edge <= 16 {
        Search::<u128>::new(g).run()
    } else {
        Search::<Vec<usize>>::new(g).run()
    }
}

const UNLABELED: usize = usize::MAX;

struct Search<'a, K> {
    g: &'a Hypergraph,
    label: Vec<usize>,
    twin_class: Vec<usize>,
    order: Vec<usize>,
    best: Option<Vec<K>>,
    // scratch space for lower_bound
    parts: Vec<(K, usize)>,
    known: Vec<usize>,
}

impl<'a, K: Key> Search<'a, K> {
    #[allow(clippy::needless_range_loop)]
    fn new(g: &'a Hypergraph) -> Self {
        let n = g.n();
        let mut twin_class: Vec<usize> = (0..n).collect();
        for u in 0..n {
            if twin_class[u] != u {
                continue;
            }
            for w in u + 1..n {
                if twin_class[w] == w && swap_is_automorphism(g, u, w) {
                    twin_class[w] = u;
                }
            }
        }
        let deg = g.degrees();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));
        Search {
            g,
            label: vec![UNLABELED; n],
            twin_class,
            order,
            best: None,
            parts: Vec::with_capacity(g.edge_count()),
            known: Vec::new(),
        }
    }

    fn run(mut self) -> Vec<Vec<usize>> {
        self.descend(0);
        self.best
            .expect("search always completes at least one labelling")
            .iter()
            .map(K::unpack)
            .collect()
    }

    /// Lower bound on the sorted edge list of every completion.
    ///
    /// Edges are grouped by their labeled part and number of unlabeled
    /// vertices. The unlabeled parts within a group are distinct subsets of
    /// the free labels `assigned..n`, so the group is bounded below by the
    /// lexicographically first combinations of that many free labels.
    fn lower_bound(&mut self, assigned: usize) -> Vec<K> {
        self.parts.clear();
        for e in self.g.edges() {
            self.known.clear();
            self.known
                .extend(e.iter().map(|v| self.label[v]).filter(|&l| l != UNLABELED));
            self.known.sort_unstable();
            let free = e.len() - self.known.len();
            self.parts.push((K::pack(&self.known), free));
        }
        self.parts.sort_unstable();
        let mut list = Vec::with_capacity(self.parts.len());
        let mut labels: Vec<usize> = Vec::new();
        let mut combo: Vec<usize> = Vec::new();
        for i in 0..self.parts.len() {
            let (known, free) = &self.parts[i];
            if i == 0 || self.parts[i - 1] != self.parts[i] {
                combo.clear();
                combo.extend(assigned..assigned + free);
            } else {
                next_combination(&mut combo, self.g.n());
            }
            if combo.is_empty() {
                list.push(known.clone());
            } else {
                labels.clear();
                labels.extend(known.unpack());
                labels.extend_from_slice(&combo);
                list.push(K::pack(&labels));
            }
        }
        list.sort_unstable();
        list
    }

    fn descend(&mut self, assigned: usize) {
        if assigned == self.g.n() {
            let list = self.lower_bound(assigned);
            if self.best.as_ref().is_none_or(|b| list < *b) {
                self.best = Some(list);
            }
            return;
        }
        // one candidate per twin class, most promising bound first
        let mut tried_classes: Vec<usize> = Vec::new();
        let mut candidates: Vec<(Vec<K>, usize)> = Vec::new();
        for i in 0..self.order.len() {
            let v = self.order[i];
            if self.label[v] != UNLABELED || tried_classes.contains(&self.twin_class[v]) {
                continue;
            }
            tried_classes.push(self.twin_class[v]);
            self.label[v] = assigned;
            let bound = self.lower_bound(assigned + 1);
            self.label[v] = UNLABELED;
            if self.best.as_ref().is_none_or(|b| bound < *b) {
                candidates.push((bound, v));
            }
        }
        candidates.sort();
        for (bound, v) in candidates {
            if self.best.as_ref().is_some_and(|b| bound >= *b) {
                // later candidates have bounds at least as large
                break;
            }
            self.label[v] = assigned;
            self.descend(assigned + 1);
            self.label[v] = UNLABELED;
        }
    }
}

/// Advances a sorted combination over `0..n` to its lexicographic successor.
/// Past the last combination the contents are unspecified.
fn next_combination(combo: &mut [usize], n: usize) {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - (k - i) {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return;
        }
    }
}

fn swap_is_automorphism(g: &Hypergraph, u: usize, w: usize) -> bool {
    let swap = |x: usize| {
        if x == u {
            w
        } else if x == w {
            u
        } else {
            x
        }
    };
    g.edges()
        .iter()
        .filter(|e| e.contains(u) != e.contains(w))
        .all(|e| g.has_edge(&VertexSet::from_iter_unsorted(e.iter().map(swap))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Hypergraph {
        Hypergraph::new(4, [[0, 1], [1, 2], [2, 3], [0, 3]]).unwrap()
    }

    #[test]
    fn matchings_share_a_form() {
        let a = Hypergraph::new(4, [[1, 2], [0, 3]]).unwrap();
        let b = Hypergraph::new(4, [[0, 1], [2, 3]]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        assert_eq!(
            canonical_form(&a).unwrap().edges(),
            &[VertexSet::from([0, 1]), VertexSet::from([2, 3])]
        );
    }

    #[test]
    fn cycle_and_path_differ() {
        let p4 = Hypergraph::new(4, [[0, 1], [1, 2], [2, 3]]).unwrap();
        assert_ne!(canonical_form(&c4()).unwrap(), canonical_form(&p4).unwrap());
        assert!(!is_isomorphic(&c4(), &p4).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let g = Hypergraph::empty(13);
        assert!(matches!(canonical_form(&g), Err(Error::Capacity { .. })));
        assert!(canonical_form_capped(&g, 13).is_ok());
    }

    #[test]
    fn automorphisms_of_small_graphs() {
        let m = Hypergraph::new(4, [[0, 1], [2, 3]]).unwrap();
        assert_eq!(automorphism_count(&m), 8);
        assert_eq!(automorphism_count(&c4()), 8);
        assert_eq!(automorphism_count(&Hypergraph::empty(4)), 24);
    }

    #[test]
    fn idempotent() {
        let g = Hypergraph::new(5, [[0, 4], [1, 4], [2, 3], [3, 4]]).unwrap();
        let c = canonical_form(&g).unwrap();
        assert_eq!(canonical_form(&c).unwrap(), c);
    }
}
