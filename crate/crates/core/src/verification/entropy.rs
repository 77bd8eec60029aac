//! Exact distributions over configurations of a vertex subset.
//!
//! Probabilities are integer weights over a common denominator (the number
//! of independent sets for the joint law), so marginalization is exact.
//! Floating point enters only when an entropy is evaluated.

use std::collections::HashMap;

use crate::counting::{independent_masks, DEFAULT_LIST_CAP};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetDistribution {
    domain: VertexSet,
    domain_mask: u64,
    /// (configuration mask, weight), sorted by mask, zero weights omitted
    table: Vec<(u64, u64)>,
    total: u64,
}

/// Uniform law of the indicator vector of a random independent set.
pub fn joint_distribution(g: &Hypergraph) -> Result<SubsetDistribution> {
    joint_distribution_capped(g, DEFAULT_LIST_CAP)
}

pub fn joint_distribution_capped(g: &Hypergraph, cap: usize) -> Result<SubsetDistribution> {
    let masks = independent_masks(g, cap)?;
    let domain = VertexSet::range(g.n());
    let total = masks.len() as u64;
    Ok(SubsetDistribution {
        domain_mask: domain.to_mask(),
        domain,
        table: masks.into_iter().map(|m| (m, 1)).collect(),
        total,
    })
}

fn xlog2x(c: u64) -> f64 {
    if c == 0 {
        0.0
    } else {
        let c = c as f64;
        c * c.log2()
    }
}

impl SubsetDistribution {
    pub fn domain(&self) -> &VertexSet {
        &self.domain
    }

    /// Common denominator of all probabilities.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn support_len(&self) -> usize {
        self.table.len()
    }

    /// Configurations with positive probability and their weights.
    pub fn support(&self) -> impl Iterator<Item = (VertexSet, u64)> + '_ {
        self.table.iter().map(|&(m, w)| (VertexSet::from_mask(m), w))
    }

    fn check_within(&self, s: &VertexSet) -> Result<u64> {
        if !s.is_subset(&self.domain) {
            return Err(Error::invalid(format!("{s} is not within the domain {}", self.domain)));
        }
        Ok(s.to_mask())
    }

    fn weight_mask(&self, m: u64) -> u64 {
        self.table
            .binary_search_by_key(&m, |&(k, _)| k)
            .map(|i| self.table[i].1)
            .unwrap_or(0)
    }

    /// Numerator of `P(X_domain = config)` over [`Self::total`].
    pub fn weight(&self, config: &VertexSet) -> Result<u64> {
        let m = self.check_within(config)?;
        Ok(self.weight_mask(m))
    }

    /// `P(X_domain = config)` as `(numerator, denominator)`.
    pub fn probability(&self, config: &VertexSet) -> Result<(u64, u64)> {
        Ok((self.weight(config)?, self.total))
    }

    pub fn marginal(&self, s: &VertexSet) -> Result<SubsetDistribution> {
        let keep = self.check_within(s)?;
        let mut acc: HashMap<u64, u64> = HashMap::new();
        for &(m, w) in &self.table {
            *acc.entry(m & keep).or_default() += w;
        }
        let mut table: Vec<(u64, u64)> = acc.into_iter().collect();
        table.sort_unstable();
        Ok(SubsetDistribution {
            domain: s.clone(),
            domain_mask: keep,
            table,
            total: self.total,
        })
    }

    /// Shannon entropy in bits.
    pub fn entropy(&self) -> f64 {
        let t = self.total as f64;
        let sum: f64 = self.table.iter().map(|&(_, w)| xlog2x(w)).sum();
        (t.log2() - sum / t).max(0.0)
    }

    /// `H(X_target | X_given) = H(X_(target u given)) - H(X_given)`.
    pub fn conditional_entropy(&self, target: &VertexSet, given: &VertexSet) -> Result<f64> {
        let joint = self.marginal(&target.union(given))?.entropy();
        let cond = self.marginal(given)?.entropy();
        Ok((joint - cond).max(0.0))
    }

    /// Entropy of `X_target` conditioned on the event `X_given = config`.
    pub fn entropy_given_event(&self, target: &VertexSet, given: &VertexSet, config: &VertexSet) -> Result<f64> {
        let g = self.check_within(given)?;
        let t = self.check_within(target)?;
        let c = self.check_within(config)?;
        if c & !g != 0 {
            return Err(Error::invalid(format!("configuration {config} is not within {given}")));
        }
        let mut acc: HashMap<u64, u64> = HashMap::new();
        let mut mass = 0u64;
        for &(m, w) in &self.table {
            if m & g == c {
                *acc.entry(m & t).or_default() += w;
                mass += w;
            }
        }
        if mass == 0 {
            return Err(Error::invalid(format!("event X_{given} = {config} has probability 0")));
        }
        let sum: f64 = acc.values().map(|&w| xlog2x(w)).sum();
        Ok(((mass as f64).log2() - sum / mass as f64).max(0.0))
    }

    pub(crate) fn domain_mask(&self) -> u64 {
        self.domain_mask
    }

    pub(crate) fn table(&self) -> &[(u64, u64)] {
        &self.table
    }
}
