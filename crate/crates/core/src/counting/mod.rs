//! Exact independent-set counts.

mod branch;

pub use branch::{count_branch, count_branch_with, BranchOptions};

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet};

pub const DEFAULT_BRUTE_CAP: usize = 30;
pub const DEFAULT_LIST_CAP: usize = 24;

/// Arbitrary-precision non-negative count.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn one() -> Self {
        BigCount(BigUint::one())
    }

    pub fn pow2(k: usize) -> Self {
        BigCount(BigUint::one() << k)
    }

    pub fn pow(&self, e: usize) -> Self {
        BigCount(num_traits::pow(self.0.clone(), e))
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Base-2 logarithm (`-inf` for zero), accurate to f64 precision.
    pub fn log2(&self) -> f64 {
        let bits = self.0.bits();
        if bits <= 64 {
            return (self.0.to_u64().unwrap() as f64).log2();
        }
        let shift = bits - 64;
        let top = (&self.0 >> shift).to_u64().unwrap();
        (top as f64).log2() + shift as f64
    }
}

impl serde::Serialize for BigCount {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl FromStr for BigCount {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.parse::<BigUint>()
            .map(BigCount)
            .map_err(|_| Error::invalid(format!("not a non-negative integer: {s:?}")))
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Add for BigCount {
    type Output = BigCount;
    fn add(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 + rhs.0)
    }
}

impl Mul for BigCount {
    type Output = BigCount;
    fn mul(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a BigCount> for &'a BigCount {
    type Output = BigCount;
    fn mul(self, rhs: &BigCount) -> BigCount {
        BigCount(&self.0 * &rhs.0)
    }
}

/// `ind(H^r_d) = 2^((r-1)d) + (2^d - 1)(2^(r-1) - 1)^d`.
pub fn ind_hrd_formula(r: usize, d: usize) -> Result<BigCount> {
    if r < 2 || d < 1 {
        return Err(Error::invalid(format!(
            "formula needs r >= 2 and d >= 1, got r={r}, d={d}"
        )));
    }
    let one = BigUint::one();
    let free = &one << ((r - 1) * d);
    let marked_nonempty = (&one << d) - &one;
    let per_group = (&one << (r - 1)) - &one;
    Ok(BigCount(free + marked_nonempty * num_traits::pow(per_group, d)))
}

fn edge_masks(g: &Hypergraph) -> Vec<u64> {
    g.edges().iter().map(VertexSet::to_mask).collect()
}

fn check_cap(g: &Hypergraph, cap: usize, what: &'static str) -> Result<()> {
    // masks are u64 and the subset loop runs to 2^n
    let cap = cap.min(63);
    if g.n() > cap {
        return Err(Error::Capacity { what, got: g.n(), cap });
    }
    Ok(())
}

pub fn count_brute(g: &Hypergraph) -> Result<BigCount> {
    count_brute_capped(g, DEFAULT_BRUTE_CAP)
}

/// Counts by testing every one of the `2^n` subsets.
pub fn count_brute_capped(g: &Hypergraph, cap: usize) -> Result<BigCount> {
    check_cap(g, cap, "vertex count for brute-force counting")?;
    let edges = edge_masks(g);
    let total: u64 = (0u64..1 << g.n())
        .filter(|&s| !edges.iter().any(|&e| e & !s == 0))
        .count() as u64;
    Ok(BigCount::from(total))
}

/// Independent sets as bitmasks, in increasing mask order.
pub fn independent_masks(g: &Hypergraph, cap: usize) -> Result<Vec<u64>> {
    check_cap(g, cap, "vertex count for listing independent sets")?;
    let edges = edge_masks(g);
    Ok((0u64..1 << g.n())
        .filter(|&s| !edges.iter().any(|&e| e & !s == 0))
        .collect())
}

pub fn list_independent_sets(g: &Hypergraph) -> Result<Vec<VertexSet>> {
    list_independent_sets_capped(g, DEFAULT_LIST_CAP)
}

pub fn list_independent_sets_capped(g: &Hypergraph, cap: usize) -> Result<Vec<VertexSet>> {
    Ok(independent_masks(g, cap)?
        .into_iter()
        .map(VertexSet::from_mask)
        .collect())
}

/// Counting engine selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Method {
    /// Brute force below 20 vertices, branching otherwise.
    #[default]
    Auto,
    Brute,
    Branch,
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Method::Auto),
            "brute" => Ok(Method::Brute),
            "branch" => Ok(Method::Branch),
            other => Err(Error::invalid(format!("unknown method {other:?}"))),
        }
    }
}

pub fn count_with(g: &Hypergraph, method: Method, brute_cap: usize) -> Result<BigCount> {
    match method {
        Method::Brute => count_brute_capped(g, brute_cap),
        Method::Branch => Ok(count_branch(g)),
        Method::Auto if g.n() < 20 => count_brute_capped(g, brute_cap),
        Method::Auto => Ok(count_branch(g)),
    }
}

/// Default counter.
pub fn count(g: &Hypergraph) -> BigCount {
    count_with(g, Method::Auto, DEFAULT_BRUTE_CAP).expect("auto stays under the brute cap")
}
