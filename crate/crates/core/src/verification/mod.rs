//! Exact conjecture checks, construction comparisons, and the entropy
//! argument for quasi-bipartite hypergraphs evaluated step by step.

mod compare;
mod conjecture;
mod entropy;
mod proof;

pub use compare::{compare_at_degree, compare_constructions, ComparisonReport, Rival, Winner};
pub use conjecture::{check_conjecture, check_conjecture_with_count, is_union_of_copies, ConjectureVerdict};
pub use entropy::{joint_distribution, joint_distribution_capped, SubsetDistribution};
pub use proof::{verify_proof_steps, verify_proof_steps_capped, ProofStep, ProofStepReport, EPSILON};

/// Floats in reports carry 15 significant digits.
pub fn round_sig15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().expect("formatted float parses")
}

pub(crate) fn ser_f64<S: serde::Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig15(*x))
}
