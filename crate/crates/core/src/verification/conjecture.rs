use serde::Serialize;

use crate::counting::{count, ind_hrd_formula, BigCount};
use crate::error::Result;
use crate::hypergraph::{canonical_form, Hypergraph};

/// Outcome of comparing `ind(G)^(rd)` with `ind(H^r_d)^n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjectureVerdict {
    pub r: usize,
    pub d: usize,
    pub n: usize,
    pub ind: BigCount,
    pub ind_hrd: BigCount,
    /// `ind(G)^(rd)`
    pub lhs: BigCount,
    /// `ind(H^r_d)^n`
    pub rhs: BigCount,
    pub holds: bool,
    pub equality: bool,
    /// `(log2 rhs - log2 lhs) / (rd)`; reporting only.
    #[serde(serialize_with = "super::ser_f64")]
    pub slack_bits: f64,
}

pub fn check_conjecture(g: &Hypergraph) -> Result<ConjectureVerdict> {
    g.regular_uniform_params()?;
    check_conjecture_with_count(g, count(g))
}

/// Same as [`check_conjecture`] with `ind(G)` supplied by the caller.
pub fn check_conjecture_with_count(g: &Hypergraph, ind: BigCount) -> Result<ConjectureVerdict> {
    let (r, d) = g.regular_uniform_params()?;
    let n = g.n();
    let ind_hrd = ind_hrd_formula(r, d)?;
    let lhs = ind.pow(r * d);
    let rhs = ind_hrd.pow(n);
    let holds = lhs <= rhs;
    let equality = lhs == rhs;
    let mut slack_bits = if equality {
        0.0
    } else {
        (rhs.log2() - lhs.log2()) / (r * d) as f64
    };
    // keep the sign consistent with the exact verdict
    if holds && slack_bits < 0.0 {
        slack_bits = 0.0;
    } else if !holds && slack_bits >= 0.0 {
        slack_bits = -f64::MIN_POSITIVE;
    }
    Ok(ConjectureVerdict {
        r,
        d,
        n,
        ind,
        ind_hrd,
        lhs,
        rhs,
        holds,
        equality,
        slack_bits,
    })
}

/// Whether every connected component of `g` (isolated vertices included) is
/// isomorphic to `block`.
pub fn is_union_of_copies(g: &Hypergraph, block: &Hypergraph) -> Result<bool> {
    if block.n() == 0 || !g.n().is_multiple_of(block.n()) || g.edge_count() * block.n() != block.edge_count() * g.n() {
        return Ok(false);
    }
    let block_form = canonical_form(block)?;
    for comp in g.components() {
        if comp.len() != block.n() {
            return Ok(false);
        }
        if canonical_form(&g.induced(&comp))? != block_form {
            return Ok(false);
        }
    }
    Ok(true)
}
