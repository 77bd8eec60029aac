//! Named hypergraph families with fixed vertex layouts.
//!
//! Layouts are stable so that written `.hg` files are reproducible:
//! `H^r_d` puts the marked vertices first, then the matching groups as
//! consecutive blocks of `r - 1`; r-partite constructions put part `i` at
//! vertices `i*t .. (i+1)*t`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet};

/// Where the pieces of `H^r_d` sit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HrdLayout {
    pub r: usize,
    pub d: usize,
    pub marked: VertexSet,
    pub groups: Vec<VertexSet>,
}

/// `H^r_d`: d marked vertices, each forming an edge with every block of an
/// (r-1)-uniform perfect matching on the remaining `(r-1)d` vertices.
pub fn build_hrd(r: usize, d: usize) -> Result<(Hypergraph, HrdLayout)> {
    if r < 2 || d < 1 {
        return Err(Error::invalid(format!(
            "H^r_d needs r >= 2 and d >= 1, got r={r}, d={d}"
        )));
    }
    let marked = VertexSet::range(d);
    let groups: Vec<VertexSet> = (0..d)
        .map(|i| {
            let start = d + i * (r - 1);
            (start..start + r - 1).collect()
        })
        .collect();
    let mut edges = Vec::with_capacity(d * d);
    for m in marked.iter() {
        for grp in &groups {
            let mut e = grp.clone();
            e.insert(m);
            edges.push(e);
        }
    }
    let g = Hypergraph::new(r * d, edges)?;
    Ok((g, HrdLayout { r, d, marked, groups }))
}

/// Complete r-partite r-graph with parts of size `t`: all `t^r` transversals.
pub fn build_complete_r_partite(r: usize, t: usize) -> Result<Hypergraph> {
    if r < 2 || t < 1 {
        return Err(Error::invalid(format!(
            "complete r-partite needs r >= 2 and t >= 1, got r={r}, t={t}"
        )));
    }
    let edges = transversal_tuples(r, t).map(|choice| {
        choice
            .iter()
            .enumerate()
            .map(|(part, &i)| part * t + i)
            .collect::<VertexSet>()
    });
    Hypergraph::new(r * t, edges)
}

/// 3-partite transversal design from the cyclic Latin square of order `m`:
/// parts `x_i = i`, `y_j = m + j`, `z_k = 2m + k`, edges `{x_i, y_j, z_(i+j mod m)}`.
pub fn build_transversal_design_3(m: usize) -> Result<Hypergraph> {
    if m < 1 {
        return Err(Error::invalid("transversal design needs m >= 1"));
    }
    let mut edges = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            edges.push(VertexSet::from([i, m + j, 2 * m + (i + j) % m]));
        }
    }
    Hypergraph::new(3 * m, edges)
}

/// `k` disjoint r-sets on `rk` vertices.
pub fn build_matching(r: usize, k: usize) -> Result<Hypergraph> {
    if r < 1 && k > 0 {
        return Err(Error::invalid("matching edges need r >= 1"));
    }
    let edges = (0..k).map(|i| (i * r..(i + 1) * r).collect::<VertexSet>());
    Hypergraph::new(r * k, edges)
}

/// Disjoint union of `copies` copies of `g`.
pub fn copies(g: &Hypergraph, copies: usize) -> Hypergraph {
    Hypergraph::disjoint_union(&vec![g.clone(); copies])
}

/// Random hypergraph on `n` vertices where each r-subset is an edge
/// independently with probability `p`.
pub fn random_uniform<R: Rng + ?Sized>(rng: &mut R, n: usize, r: usize, p: f64) -> Hypergraph {
    let mut edges = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec<R: Rng + ?Sized>(
        rng: &mut R,
        n: usize,
        r: usize,
        p: f64,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<VertexSet>,
    ) {
        if cur.len() == r {
            if rng.gen_bool(p) {
                out.push(VertexSet::from(cur.clone()));
            }
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(rng, n, r, p, v + 1, cur, out);
            cur.pop();
        }
    }
    if r >= 1 {
        rec(rng, n, r, p, 0, &mut cur, &mut edges);
    }
    Hypergraph::new(n, edges).expect("distinct in-range subsets")
}

/// Random d-regular quasi-bipartite r-graph with `a_count` vertices on the
/// A side and `(r-1) * a_count` on the B side.
///
/// Each A-vertex draws a random matching of `d` disjoint (r-1)-sets from B,
/// preferring B-vertices with remaining capacity; draws that leave B
/// irregular are rejected and retried, up to `max_attempts` times.
pub fn random_quasi_bipartite<R: Rng + ?Sized>(
    rng: &mut R,
    r: usize,
    d: usize,
    a_count: usize,
    max_attempts: usize,
) -> Result<Hypergraph> {
    if r < 2 || d < 1 || a_count < d {
        return Err(Error::invalid(format!(
            "random quasi-bipartite needs r >= 2, d >= 1, |A| >= d; got r={r}, d={d}, |A|={a_count}"
        )));
    }
    let b_count = (r - 1) * a_count;
    let n = a_count + b_count;
    'attempt: for _ in 0..max_attempts {
        let mut residual = vec![d; b_count];
        let mut edges = Vec::with_capacity(a_count * d);
        let mut a_order: Vec<usize> = (0..a_count).collect();
        a_order.shuffle(rng);
        for a in a_order {
            let mut pool: Vec<usize> = (0..b_count).filter(|&b| residual[b] > 0).collect();
            if pool.len() < d * (r - 1) {
                continue 'attempt;
            }
            pool.shuffle(rng);
            // favour vertices with the most remaining capacity
            pool.sort_by_key(|&b| std::cmp::Reverse(residual[b]));
            let chosen = &pool[..d * (r - 1)];
            let mut chosen = chosen.to_vec();
            chosen.shuffle(rng);
            for block in chosen.chunks(r - 1) {
                let mut e: VertexSet = block.iter().map(|&b| a_count + b).collect();
                e.insert(a);
                edges.push(e);
            }
            for &b in &chosen {
                residual[b] -= 1;
            }
        }
        if residual.iter().all(|&x| x == 0) {
            return Hypergraph::new(n, edges);
        }
    }
    Err(Error::invalid(format!(
        "no regular quasi-bipartite draw for r={r}, d={d}, |A|={a_count} in {max_attempts} attempts"
    )))
}

/// All `t^r` tuples over `0..t`, lexicographic.
fn transversal_tuples(r: usize, t: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = t.pow(r as u32);
    (0..total).map(move |mut idx| {
        let mut tuple = vec![0; r];
        for slot in tuple.iter_mut().rev() {
            *slot = idx % t;
            idx /= t;
        }
        tuple
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{canonical_form, quasi_bipartition};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn hrd_3_2_by_hand() {
        let (g, layout) = build_hrd(3, 2).unwrap();
        assert_eq!(g.n(), 6);
        let expected: Vec<VertexSet> = vec![[0, 2, 3].into(), [0, 4, 5].into(), [1, 2, 3].into(), [1, 4, 5].into()];
        assert_eq!(g.edges(), expected.as_slice());
        assert_eq!(g.regularity(), Some(2));
        assert_eq!(layout.marked, VertexSet::from([0, 1]));
        assert_eq!(layout.groups, vec![VertexSet::from([2, 3]), VertexSet::from([4, 5])]);
    }

    #[test]
    fn hrd_degenerate_cases() {
        let (g, _) = build_hrd(3, 1).unwrap();
        assert_eq!(g, Hypergraph::new(3, [[0, 1, 2]]).unwrap());
        assert!(build_hrd(1, 2).is_err());
        assert!(build_hrd(3, 0).is_err());
    }

    #[test]
    fn hrd_2_d_is_complete_bipartite() {
        for d in 1..=4 {
            let (h, _) = build_hrd(2, d).unwrap();
            let k = build_complete_r_partite(2, d).unwrap();
            assert_eq!(canonical_form(&h).unwrap(), canonical_form(&k).unwrap());
        }
    }

    #[test]
    fn hrd_structure() {
        for r in 2..=5 {
            for d in 1..=4 {
                let (g, layout) = build_hrd(r, d).unwrap();
                assert_eq!(g.n(), r * d);
                assert_eq!(g.edge_count(), d * d);
                assert_eq!(g.uniformity(), Some(r));
                assert_eq!(g.regularity(), Some(d));
                let cert = quasi_bipartition(&g).unwrap().unwrap();
                assert_eq!(cert.a_side, layout.marked);
                for a in layout.marked.iter() {
                    let l = g.link(a).unwrap();
                    assert!(l.is_matching());
                    assert_eq!(l.edges().len(), d);
                    assert_eq!(l.span.len(), (r - 1) * d);
                }
            }
        }
    }

    #[test]
    fn complete_r_partite_examples() {
        assert_eq!(
            build_complete_r_partite(2, 2).unwrap(),
            Hypergraph::new(4, [[0, 2], [0, 3], [1, 2], [1, 3]]).unwrap()
        );
        let g = build_complete_r_partite(3, 2).unwrap();
        assert_eq!((g.n(), g.edge_count(), g.regularity()), (6, 8, Some(4)));
        assert_eq!(build_complete_r_partite(3, 1).unwrap().edge_count(), 1);
        for r in 2..=4 {
            for t in 1..=3 {
                let g = build_complete_r_partite(r, t).unwrap();
                assert_eq!(g.regularity(), Some(t.pow(r as u32 - 1)));
            }
        }
        assert!(build_complete_r_partite(1, 2).is_err());
        assert!(build_complete_r_partite(2, 0).is_err());
    }

    #[test]
    fn transversal_designs() {
        assert_eq!(build_transversal_design_3(1).unwrap().edge_count(), 1);
        for m in 1..=6 {
            let g = build_transversal_design_3(m).unwrap();
            assert_eq!(g.n(), 3 * m);
            assert_eq!(g.edge_count(), m * m);
            assert_eq!(g.regularity(), Some(m));
            assert!(g.is_linear());
        }
        assert!(build_transversal_design_3(0).is_err());
    }

    #[test]
    fn matchings() {
        let g = build_matching(2, 2).unwrap();
        assert_eq!(g.edges(), &[VertexSet::from([0, 1]), VertexSet::from([2, 3])]);
        assert_eq!(build_matching(1, 3).unwrap().edge_count(), 3);
        assert_eq!(build_matching(3, 0).unwrap(), Hypergraph::empty(0));
        assert!(build_matching(3, 4).unwrap().is_matching());
    }

    #[test]
    fn random_quasi_bipartite_is_certified() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (r, d, k) in [(2, 2, 5), (3, 2, 4), (3, 1, 5), (4, 2, 3), (2, 3, 4)] {
            let g = random_quasi_bipartite(&mut rng, r, d, k, 10_000).unwrap();
            assert_eq!(g.n(), r * k);
            assert_eq!(g.regular_uniform_params().unwrap(), (r, d));
            let cert = quasi_bipartition(&g).unwrap().expect("quasi-bipartite");
            cert.verify(&g).unwrap();
        }
    }
}
