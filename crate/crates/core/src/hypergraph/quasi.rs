//! Recognition of quasi-bipartite hypergraphs.
//!
//! A partition `(A, B)` of the vertices is a certificate when every edge
//! meets `A` in exactly one vertex and the link of every `a` in `A` is a
//! matching. The recognizer backtracks over the choice of `A`-vertex per
//! edge, taking edges in lexicographic order and candidate vertices in
//! increasing order. Choosing an edge's `A`-vertex forces the rest of that
//! edge into `B`, and forced assignments are propagated to a fixpoint before
//! the next choice. The matching condition is checked on each complete
//! assignment. Vertices left undecided (isolated ones) go to `B`.

use std::collections::BTreeMap;

use super::{Hypergraph, VertexSet};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiBipartition {
    pub a_side: VertexSet,
    pub b_side: VertexSet,
    /// For each `a` in `a_side`, the edges of its link (pairwise disjoint).
    pub link_matchings: BTreeMap<usize, Vec<VertexSet>>,
}

impl QuasiBipartition {
    /// Re-checks both conditions from scratch against `g`.
    pub fn verify(&self, g: &Hypergraph) -> Result<()> {
        if self.a_side.union(&self.b_side) != VertexSet::range(g.n()) || !self.a_side.is_disjoint(&self.b_side) {
            return Err(Error::invalid("sides do not partition the vertex set"));
        }
        for e in g.edges() {
            let hits = e.intersection(&self.a_side).len();
            if hits != 1 {
                return Err(Error::invalid(format!("edge {e} meets A in {hits} vertices")));
            }
        }
        if self.link_matchings.keys().copied().collect::<VertexSet>() != self.a_side {
            return Err(Error::invalid("link table keys differ from A"));
        }
        for (&a, listed) in &self.link_matchings {
            let link = g.link(a)?;
            if link.edges() != listed.as_slice() {
                return Err(Error::invalid(format!("listed link of {a} is wrong")));
            }
            if !link.is_matching() {
                return Err(Error::invalid(format!("link of {a} is not a matching")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Side {
    Free,
    A,
    B,
}

/// Finds a quasi-bipartition of a uniform hypergraph, if one exists.
pub fn quasi_bipartition(g: &Hypergraph) -> Result<Option<QuasiBipartition>> {
    if !g.is_uniform() {
        return Err(Error::invalid("quasi-bipartition requires a uniform hypergraph"));
    }
    if g.uniformity().is_some_and(|r| r < 2) {
        return Err(Error::invalid("quasi-bipartition requires edge size >= 2"));
    }
    let mut side = vec![Side::Free; g.n()];
    let mut found = None;
    search(g, &mut side, &mut found);
    Ok(found)
}

fn search(g: &Hypergraph, side: &mut Vec<Side>, found: &mut Option<QuasiBipartition>) {
    if !propagate(g, side) {
        return;
    }
    let pending = g.edges().iter().find(|e| !e.iter().any(|v| side[v] == Side::A));
    let Some(edge) = pending.cloned() else {
        if let Some(cert) = certificate(g, side) {
            *found = Some(cert);
        }
        return;
    };
    let choices: Vec<usize> = edge.iter().filter(|&v| side[v] == Side::Free).collect();
    for v in choices {
        let saved = side.clone();
        side[v] = Side::A;
        for w in edge.iter().filter(|&w| w != v) {
            side[w] = Side::B;
        }
        search(g, side, found);
        if found.is_some() {
            return;
        }
        *side = saved;
    }
}

/// Applies forced moves until nothing changes; false on contradiction.
fn propagate(g: &Hypergraph, side: &mut [Side]) -> bool {
    loop {
        let mut changed = false;
        for e in g.edges() {
            let a_count = e.iter().filter(|&v| side[v] == Side::A).count();
            let free: Vec<usize> = e.iter().filter(|&v| side[v] == Side::Free).collect();
            match a_count {
                0 if free.is_empty() => return false,
                0 if free.len() == 1 => {
                    side[free[0]] = Side::A;
                    changed = true;
                }
                1 if !free.is_empty() => {
                    for v in free {
                        side[v] = Side::B;
                    }
                    changed = true;
                }
                0 | 1 => {}
                _ => return false,
            }
        }
        if !changed {
            return true;
        }
    }
}

fn certificate(g: &Hypergraph, side: &[Side]) -> Option<QuasiBipartition> {
    let a_side: VertexSet = (0..g.n()).filter(|&v| side[v] == Side::A).collect();
    let b_side: VertexSet = (0..g.n()).filter(|&v| side[v] != Side::A).collect();
    let mut link_matchings = BTreeMap::new();
    for a in a_side.iter() {
        let link = g.link(a).ok()?;
        if !link.is_matching() {
            return None;
        }
        link_matchings.insert(a, link.edges().to_vec());
    }
    Some(QuasiBipartition {
        a_side,
        b_side,
        link_matchings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_partitions_certify(g: &Hypergraph) -> Vec<VertexSet> {
        let n = g.n();
        (0u64..1 << n)
            .map(VertexSet::from_mask)
            .filter(|a| {
                let b = VertexSet::range(n).difference(a);
                let link_matchings = a.iter().map(|x| (x, g.link(x).unwrap().edges().to_vec())).collect();
                QuasiBipartition {
                    a_side: a.clone(),
                    b_side: b,
                    link_matchings,
                }
                .verify(g)
                .is_ok()
            })
            .collect()
    }

    #[test]
    fn k22_has_both_orientations() {
        let g = Hypergraph::new(4, [[0, 2], [0, 3], [1, 2], [1, 3]]).unwrap();
        let brute = all_partitions_certify(&g);
        assert_eq!(brute, vec![VertexSet::from([0, 1]), VertexSet::from([2, 3])]);
        let cert = quasi_bipartition(&g).unwrap().unwrap();
        assert!(brute.contains(&cert.a_side));
        assert_eq!(cert.a_side, VertexSet::from([0, 1]));
        cert.verify(&g).unwrap();
    }

    #[test]
    fn triangle_is_rejected() {
        let g = Hypergraph::new(3, [[0, 1], [1, 2], [0, 2]]).unwrap();
        assert_eq!(quasi_bipartition(&g).unwrap(), None);
        assert!(all_partitions_certify(&g).is_empty());
    }

    #[test]
    fn condition_two_can_fail_alone() {
        // Every edge meets {0} once, but the link of 0 is not a matching.
        let g = Hypergraph::new(4, [[0, 1, 2], [0, 2, 3]]).unwrap();
        let brute = all_partitions_certify(&g);
        let found = quasi_bipartition(&g).unwrap();
        match found {
            Some(c) => assert!(brute.contains(&c.a_side)),
            None => assert!(brute.is_empty()),
        }
    }

    #[test]
    fn non_uniform_is_an_error() {
        let g = Hypergraph::new(3, vec![vec![0, 1], vec![0, 1, 2]]).unwrap();
        assert!(quasi_bipartition(&g).is_err());
    }
}
