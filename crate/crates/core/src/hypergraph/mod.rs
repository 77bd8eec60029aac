//! Hypergraphs on vertices `0..n`, vertex sets, and structural queries.

mod canonical;
mod io;
mod quasi;
mod vertex_set;

pub use canonical::{automorphism_count, canonical_form, canonical_form_capped, is_isomorphic};
pub use io::{read_hypergraph, write_hypergraph};
pub use quasi::{quasi_bipartition, QuasiBipartition};
pub use vertex_set::VertexSet;

use crate::error::{Error, Result};

/// A simple hypergraph on the vertex set `{0, ..., n-1}`.
///
/// Edges are kept sorted lexicographically and are pairwise distinct.
/// Uniformity is not enforced: counting traces shrink edges, so callers
/// check it with [`Hypergraph::uniformity`] where it matters.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<VertexSet>,
}

/// The link of a vertex: edge remainders `e \ {v}` over the original labels,
/// plus the span of those remainders as the link's own vertex set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Link {
    pub vertex: usize,
    pub graph: Hypergraph,
    pub span: VertexSet,
}

impl Hypergraph {
    /// Builds a hypergraph, rejecting empty edges, out-of-range vertices and
    /// repeated edges.
    pub fn new<I, E>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<VertexSet>,
    {
        Self::build(n, edges, false)
    }

    /// Like [`Hypergraph::new`] but permits the empty edge, which makes the
    /// independent-set count zero.
    pub fn new_allow_empty<I, E>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<VertexSet>,
    {
        Self::build(n, edges, true)
    }

    fn build<I, E>(n: usize, edges: I, allow_empty: bool) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<VertexSet>,
    {
        let mut edges: Vec<VertexSet> = edges.into_iter().map(Into::into).collect();
        for e in &edges {
            if e.is_empty() && !allow_empty {
                return Err(Error::invalid("empty edge"));
            }
            if let Some(m) = e.largest() {
                if m >= n {
                    return Err(Error::invalid(format!("edge {e} has vertex {m} outside 0..{n}")));
                }
            }
        }
        edges.sort();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("duplicate edge {}", w[0])));
        }
        Ok(Hypergraph { n, edges })
    }

    pub(crate) fn from_sorted_unchecked(n: usize, edges: Vec<VertexSet>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        Hypergraph { n, edges }
    }

    /// No edges on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Hypergraph { n, edges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, e: &VertexSet) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::invalid(format!("vertex {v} out of range 0..{}", self.n)));
        }
        Ok(())
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.edges.iter().filter(|e| e.contains(v)).count())
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for v in e.iter() {
                deg[v] += 1;
            }
        }
        deg
    }

    /// `Some(r)` when there is at least one edge and every edge has size `r`.
    pub fn uniformity(&self) -> Option<usize> {
        let r = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == r).then_some(r)
    }

    pub fn is_uniform(&self) -> bool {
        self.edges.is_empty() || self.uniformity().is_some()
    }

    /// `Some(d)` when `n >= 1` and every vertex has degree `d`.
    pub fn regularity(&self) -> Option<usize> {
        let deg = self.degrees();
        let d = *deg.first()?;
        deg.iter().all(|&x| x == d).then_some(d)
    }

    /// Returns `(r, d)` for an r-uniform d-regular hypergraph with `r >= 2`
    /// and `d >= 1`, or an error naming the first offending edge or vertex.
    pub fn regular_uniform_params(&self) -> Result<(usize, usize)> {
        let first = self
            .edges
            .first()
            .ok_or_else(|| Error::invalid("hypergraph has no edges (d = 0 is rejected)"))?;
        let r = first.len();
        if let Some(e) = self.edges.iter().find(|e| e.len() != r) {
            return Err(Error::invalid(format!(
                "not uniform: edge {e} has size {}, expected {r}",
                e.len()
            )));
        }
        if r < 2 {
            return Err(Error::invalid(format!("uniformity {r} < 2")));
        }
        let deg = self.degrees();
        let d = deg[first.as_slice()[0]];
        if let Some((v, &dv)) = deg.iter().enumerate().find(|(_, &x)| x != d) {
            return Err(Error::invalid(format!(
                "not regular: vertex {v} has degree {dv}, expected {d}"
            )));
        }
        Ok((r, d))
    }

    /// The link of `v`. Requires a uniform hypergraph with edge size >= 2.
    pub fn link(&self, v: usize) -> Result<Link> {
        self.check_vertex(v)?;
        if !self.is_uniform() {
            return Err(Error::invalid("link requires a uniform hypergraph"));
        }
        if let Some(r) = self.uniformity() {
            if r < 2 {
                return Err(Error::invalid("link requires edge size >= 2"));
            }
        }
        let mut edges = Vec::new();
        let mut span = VertexSet::new();
        for e in self.edges.iter().filter(|e| e.contains(v)) {
            let mut rest = e.clone();
            rest.remove(v);
            span = span.union(&rest);
            edges.push(rest);
        }
        edges.sort();
        Ok(Link {
            vertex: v,
            graph: Hypergraph::from_sorted_unchecked(self.n, edges),
            span,
        })
    }

    /// True iff no edge is contained in `s`.
    pub fn is_independent(&self, s: &VertexSet) -> Result<bool> {
        if let Some(m) = s.largest() {
            self.check_vertex(m)?;
        }
        Ok(!self.edges.iter().any(|e| e.is_subset(s)))
    }

    pub fn disjoint_union(gs: &[Hypergraph]) -> Hypergraph {
        let mut n = 0;
        let mut edges = Vec::new();
        for g in gs {
            edges.extend(g.edges.iter().map(|e| e.shift(n)));
            n += g.n;
        }
        // blocks are shifted by increasing offsets, so order is preserved
        Hypergraph::from_sorted_unchecked(n, edges)
    }

    /// Applies the relabeling `v -> perm[v]`; `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Hypergraph {
        assert_eq!(perm.len(), self.n);
        let mut edges: Vec<VertexSet> = self.edges.iter().map(|e| e.map(perm)).collect();
        edges.sort();
        Hypergraph::from_sorted_unchecked(self.n, edges)
    }

    /// The sub-hypergraph induced on `s`, relabeled to `0..|s|` in order.
    pub fn induced(&self, s: &VertexSet) -> Hypergraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, v) in s.iter().enumerate() {
            index[v] = i;
        }
        let mut edges: Vec<VertexSet> = self
            .edges
            .iter()
            .filter(|e| e.is_subset(s))
            .map(|e| VertexSet::from_sorted_unchecked(e.iter().map(|v| index[v]).collect()))
            .collect();
        edges.sort();
        Hypergraph::from_sorted_unchecked(s.len(), edges)
    }

    /// Vertex sets of connected components, isolated vertices included, ordered
    /// by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in &self.edges {
            let mut it = e.iter();
            if let Some(first) = it.next() {
                for v in it {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, v));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for v in 0..self.n {
            let root = find(&mut parent, v);
            groups[root].push(v);
        }
        groups
            .into_iter()
            .filter(|g| !g.is_empty())
            .map(VertexSet::from_sorted_unchecked)
            .collect()
    }

    /// Adds one edge, failing if it is already present or out of range.
    pub fn with_edge(&self, e: VertexSet) -> Result<Hypergraph> {
        let mut edges = self.edges.clone();
        edges.push(e);
        Hypergraph::new_allow_empty(self.n, edges)
    }

    /// Any two vertices share at most one edge.
    pub fn is_linear(&self) -> bool {
        self.edges
            .iter()
            .enumerate()
            .all(|(i, e)| self.edges[i + 1..].iter().all(|f| e.intersection(f).len() <= 1))
    }

    /// Edges pairwise disjoint.
    pub fn is_matching(&self) -> bool {
        let mut seen = vec![false; self.n];
        for e in &self.edges {
            for v in e.iter() {
                if std::mem::replace(&mut seen[v], true) {
                    return false;
                }
            }
        }
        true
    }
}

impl Link {
    pub fn edges(&self) -> &[VertexSet] {
        self.graph.edges()
    }

    pub fn is_matching(&self) -> bool {
        self.graph.is_matching()
    }

    /// The link as a standalone hypergraph on its span, relabeled to
    /// `0..|span|` in increasing order.
    pub fn on_span(&self) -> Hypergraph {
        self.graph.induced(&self.span)
    }
}
