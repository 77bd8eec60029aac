//! Exact counting of independent sets in uniform hypergraphs.
//!
//! The crate builds the extremal family `H^r_d` (d marked vertices joined to
//! every edge of an (r-1)-uniform perfect matching), counts independent sets
//! exactly with big integers, enumerates all small d-regular r-graphs, and
//! checks the bound `ind(G) <= ind(H^r_d)^(n/rd)` together with each
//! inequality of the entropy argument for quasi-bipartite hypergraphs.

pub mod cli;
pub mod constructions;
pub mod counting;
pub mod enumeration;
mod error;
pub mod hypergraph;
pub mod verification;

pub use counting::BigCount;
pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, Link, QuasiBipartition, VertexSet};

/// Size caps for the exponential engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest vertex count accepted by brute-force counting.
    pub brute: usize,
    /// Largest vertex count accepted by the canonical labeller.
    pub canon: usize,
    /// Largest vertex count for independent-set listing and exact distributions.
    pub entropy: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            brute: 30,
            canon: 12,
            entropy: 24,
        }
    }
}

impl Caps {
    /// Parses the `"brute,canon,entropy"` override syntax.
    pub fn parse(s: &str) -> Result<Caps> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::invalid(format!(
                "caps must be \"brute,canon,entropy\", got {s:?}"
            )));
        }
        let mut vals = [0usize; 3];
        for (slot, p) in vals.iter_mut().zip(&parts) {
            *slot = p.parse().map_err(|_| Error::invalid(format!("bad cap value {p:?}")))?;
        }
        Ok(Caps {
            brute: vals[0],
            canon: vals[1],
            entropy: vals[2],
        })
    }
}
