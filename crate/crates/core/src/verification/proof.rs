//! Step-by-step evaluation of the entropy bound for a d-regular
//! quasi-bipartite r-graph with certificate `(A, B)`:
//!
//! 1. the link spans `{V(L(a)) : a in A}` cover each `b` in `B` exactly `d` times;
//! 2. `H(X_B) <= (1/d) sum_a H(X_V(L(a)))`;
//! 3. `H(X_A | X_B) <= sum_a H(X_a | X_B)`, with `H(X_a | X_B) = H(X_a | X_V(L(a)))`;
//! 4. `lambda(I)` is 1 or 2 and `H(X_a | X_V(L(a)) = I) <= log2 lambda(I)`;
//! 5. `sum_I p(I) log2(lambda(I)^d / p(I)) <= log2 sum_I lambda(I)^d`;
//! 6. `sum_I lambda(I)^d <= 2^|V(L(a))| + (2^d - 1) ind(L(a))`;
//! 7. `ind(L(a)) <= (2^(r-1) - 1)^d` and `|V(L(a))| <= (r-1)d`;
//! 8. `H(X) <= (n / rd) log2 ind(H^r_d)`, with `|A| = n / r`.
//!
//! `I` ranges over the configurations of `V(L(a))` that occur, which are
//! exactly the subsets of `V(L(a))` independent in the hypergraph.

use num_traits::ToPrimitive;
use serde::Serialize;

use super::entropy::{joint_distribution_capped, SubsetDistribution};
use crate::counting::{count, ind_hrd_formula, BigCount, DEFAULT_LIST_CAP};
use crate::error::{Error, Result};
use crate::hypergraph::{quasi_bipartition, Hypergraph, VertexSet};

/// Tolerance for floating-point inequalities, in bits.
pub const EPSILON: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProofStep {
    pub step: u8,
    pub name: &'static str,
    #[serde(serialize_with = "super::ser_f64")]
    pub lhs: f64,
    #[serde(serialize_with = "super::ser_f64")]
    pub rhs: f64,
    /// `rhs - lhs`
    #[serde(serialize_with = "super::ser_f64")]
    pub margin: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_lhs: Option<BigCount>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_rhs: Option<BigCount>,
    /// For per-vertex steps, the A-vertex with the smallest margin.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProofStepReport {
    pub r: usize,
    pub d: usize,
    pub n: usize,
    pub a_side: Vec<usize>,
    pub ind: BigCount,
    pub steps: Vec<ProofStep>,
    /// `H(X)` followed by the successive upper bounds of the argument.
    #[serde(serialize_with = "ser_chain")]
    pub chain: Vec<f64>,
    pub chain_monotone: bool,
    /// Final bound minus `H(X)`.
    #[serde(serialize_with = "super::ser_f64")]
    pub composed_margin: f64,
    /// Deviations from the conditional-entropy identity of step 3.
    pub findings: Vec<String>,
    pub all_pass: bool,
}

fn ser_chain<S: serde::Serializer>(xs: &[f64], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for &x in xs {
        seq.serialize_element(&super::round_sig15(x))?;
    }
    seq.end()
}

fn float_step(step: u8, name: &'static str, lhs: f64, rhs: f64) -> ProofStep {
    ProofStep {
        step,
        name,
        lhs,
        rhs,
        margin: rhs - lhs,
        pass: lhs.is_finite() && rhs.is_finite() && lhs <= rhs + EPSILON,
        exact_lhs: None,
        exact_rhs: None,
        witness: None,
    }
}

fn exact_step(step: u8, name: &'static str, lhs: BigCount, rhs: BigCount) -> ProofStep {
    let lf = lhs.value().to_f64().unwrap_or(f64::INFINITY);
    let rf = rhs.value().to_f64().unwrap_or(f64::INFINITY);
    ProofStep {
        step,
        name,
        lhs: lf,
        rhs: rf,
        margin: rf - lf,
        pass: lhs <= rhs,
        exact_lhs: Some(lhs),
        exact_rhs: Some(rhs),
        witness: None,
    }
}

/// Keeps the candidate with the smaller margin (the tighter instance).
fn tighter(current: Option<ProofStep>, candidate: ProofStep) -> ProofStep {
    match current {
        Some(c) if !candidate.pass && c.pass => candidate,
        Some(c) if c.pass == candidate.pass && candidate.margin < c.margin => candidate,
        Some(c) => c,
        None => candidate,
    }
}

struct LinkAnalysis {
    span: VertexSet,
    /// `H(X_V) + d H(X_a | X_V)` split into its two terms
    h_span: f64,
    h_a_given_span: f64,
    h_a_given_b: f64,
    jensen_lhs: f64,
    sum_lambda_d: BigCount,
    counting_bound: BigCount,
    ind_link: BigCount,
    lambda_ok: bool,
    worst_lambda: ProofStep,
}

pub fn verify_proof_steps(g: &Hypergraph) -> Result<ProofStepReport> {
    verify_proof_steps_capped(g, DEFAULT_LIST_CAP)
}

pub fn verify_proof_steps_capped(g: &Hypergraph, cap: usize) -> Result<ProofStepReport> {
    let (r, d) = g.regular_uniform_params()?;
    let n = g.n();
    let cert = quasi_bipartition(g)?
        .ok_or_else(|| Error::invalid("not quasi-bipartite: the recognizer found no (A, B) certificate"))?;
    cert.verify(g)?;
    let joint = joint_distribution_capped(g, cap)?;
    let edge_masks: Vec<u64> = g.edges().iter().map(VertexSet::to_mask).collect();
    let a_side = &cert.a_side;
    let b_side = &cert.b_side;

    let h_x = joint.entropy();
    let h_b = joint.marginal(b_side)?.entropy();
    let h_a_given_b = joint.conditional_entropy(a_side, b_side)?;

    let mut analyses = Vec::with_capacity(a_side.len());
    for a in a_side.iter() {
        analyses.push(analyse_vertex(g, &joint, &edge_masks, b_side, a, d)?);
    }

    let mut steps = Vec::with_capacity(8);
    let mut findings = Vec::new();

    // 1. exact cover multiplicity
    let mut cover = vec![0usize; n];
    for an in &analyses {
        for v in an.span.iter() {
            cover[v] += 1;
        }
    }
    let miscovered = b_side.iter().filter(|&b| cover[b] != d).count();
    let mut s1 = exact_step(
        1,
        "link spans d-cover B",
        BigCount::from(miscovered as u64),
        BigCount::zero(),
    );
    s1.pass = miscovered == 0 && a_side.iter().all(|a| cover[a] == 0);
    steps.push(s1);

    // 2. Shearer
    let shearer_rhs = analyses.iter().map(|an| an.h_span).sum::<f64>() / d as f64;
    steps.push(float_step(2, "Shearer bound on H(X_B)", h_b, shearer_rhs));

    // 3. subadditivity, and conditioning on B equals conditioning on the span
    let sub_rhs: f64 = analyses.iter().map(|an| an.h_a_given_b).sum();
    steps.push(float_step(3, "subadditivity of H(X_A | X_B)", h_a_given_b, sub_rhs));
    for (a, an) in a_side.iter().zip(&analyses) {
        let gap = an.h_a_given_b - an.h_a_given_span;
        if gap.abs() > EPSILON {
            findings.push(format!(
                "vertex {a}: H(X_a|X_B) = {} differs from H(X_a|X_V(L(a))) = {} by {gap:e}",
                an.h_a_given_b, an.h_a_given_span
            ));
        }
    }

    // 4. per-configuration lambda bound
    let mut s4: Option<ProofStep> = None;
    for an in &analyses {
        s4 = Some(tighter(s4, an.worst_lambda.clone()));
    }
    let mut s4 = s4.unwrap_or_else(|| float_step(4, "lambda bound", 0.0, 0.0));
    s4.pass &= analyses.iter().all(|an| an.lambda_ok);
    steps.push(s4);

    // 5. Jensen, 6. counting bound, 7. link bound: tightest A-vertex reported
    let mut s5 = None;
    let mut s6 = None;
    let mut s7 = None;
    let ind_link_cap = BigCount::from((1u64 << (r - 1)) - 1).pow(d);
    for (a, an) in a_side.iter().zip(&analyses) {
        let mut j = float_step(5, "Jensen", an.jensen_lhs, an.sum_lambda_d.log2());
        j.witness = Some(a);
        s5 = Some(tighter(s5, j));

        let mut c = exact_step(
            6,
            "sum of lambda^d bound",
            an.sum_lambda_d.clone(),
            an.counting_bound.clone(),
        );
        c.witness = Some(a);
        s6 = Some(tighter(s6, c));

        let mut l = exact_step(
            7,
            "link independent-set bound",
            an.ind_link.clone(),
            ind_link_cap.clone(),
        );
        l.pass &= an.span.len() <= (r - 1) * d;
        l.witness = Some(a);
        s7 = Some(tighter(s7, l));
    }
    steps.extend([s5, s6, s7].into_iter().flatten());

    // 8. final bound
    let ind_hrd = ind_hrd_formula(r, d)?;
    let final_rhs = n as f64 / (r * d) as f64 * ind_hrd.log2();
    let mut s8 = float_step(8, "final bound on H(X)", h_x, final_rhs);
    s8.pass &= a_side.len() * r == n;
    let composed_margin = s8.margin;
    steps.push(s8);

    let inv_d = 1.0 / d as f64;
    let chain = vec![
        h_x,
        shearer_rhs + analyses.iter().map(|an| an.h_a_given_span).sum::<f64>(),
        inv_d * analyses.iter().map(|an| an.jensen_lhs).sum::<f64>(),
        inv_d * analyses.iter().map(|an| an.sum_lambda_d.log2()).sum::<f64>(),
        inv_d * analyses.iter().map(|an| an.counting_bound.log2()).sum::<f64>(),
        inv_d * a_side.len() as f64 * ind_hrd.log2(),
    ];
    let chain_monotone = chain.windows(2).all(|w| w[0] <= w[1] + EPSILON);

    let all_pass = steps.len() == 8 && steps.iter().all(|s| s.pass) && chain_monotone;
    Ok(ProofStepReport {
        r,
        d,
        n,
        a_side: a_side.iter().collect(),
        ind: BigCount::from(joint.total()),
        steps,
        chain,
        chain_monotone,
        composed_margin,
        findings,
        all_pass,
    })
}

fn analyse_vertex(
    g: &Hypergraph,
    joint: &SubsetDistribution,
    edge_masks: &[u64],
    b_side: &VertexSet,
    a: usize,
    d: usize,
) -> Result<LinkAnalysis> {
    let link = g.link(a)?;
    let span = link.span.clone();
    let a_set = VertexSet::from([a]);
    let a_bit = 1u64 << a;
    let link_masks: Vec<u64> = link.edges().iter().map(VertexSet::to_mask).collect();
    let independent = |m: u64| !edge_masks.iter().any(|&e| e & !m == 0);

    let on_span = joint.marginal(&span)?;
    let with_a = joint.marginal(&span.union(&a_set))?;
    let total = joint.total() as f64;

    let mut jensen_lhs = 0.0;
    let mut sum_lambda_d = BigCount::zero();
    let mut lambda_ok = true;
    let mut worst: Option<ProofStep> = None;

    for &(config, weight) in on_span.table() {
        let by_extension = independent(config) as u32 + independent(config | a_bit) as u32;
        let by_link = if link_masks.iter().any(|&e| e & !config == 0) {
            1
        } else {
            2
        };
        lambda_ok &= by_extension == by_link && (1..=2).contains(&by_extension);
        let lambda = by_extension;

        let w1 = with_a
            .table()
            .binary_search_by_key(&(config | a_bit), |&(k, _)| k)
            .map(|i| with_a.table()[i].1)
            .unwrap_or(0);
        let w0 = weight - w1;
        let h_cond = binary_entropy(w0, w1);
        let log_lambda = (lambda as f64).log2();
        let mut step = float_step(4, "lambda bound", h_cond, log_lambda);
        step.witness = Some(a);
        worst = Some(tighter(worst, step));

        let p = weight as f64 / total;
        jensen_lhs += p * (d as f64 * log_lambda - p.log2());
        sum_lambda_d = sum_lambda_d + BigCount::from(lambda as u64).pow(d);
    }
    debug_assert_eq!(on_span.domain_mask(), span.to_mask());

    let ind_link = count(&link.on_span());
    let counting_bound = BigCount::pow2(span.len()) + BigCount::from((1u64 << d) - 1) * ind_link.clone();

    Ok(LinkAnalysis {
        h_span: on_span.entropy(),
        h_a_given_span: joint.conditional_entropy(&a_set, &span)?,
        h_a_given_b: joint.conditional_entropy(&a_set, b_side)?,
        span,
        jensen_lhs,
        sum_lambda_d,
        counting_bound,
        ind_link,
        lambda_ok,
        worst_lambda: worst.unwrap_or_else(|| float_step(4, "lambda bound", 0.0, 0.0)),
    })
}

fn binary_entropy(w0: u64, w1: u64) -> f64 {
    let t = (w0 + w1) as f64;
    [w0, w1]
        .iter()
        .filter(|&&w| w > 0)
        .map(|&w| {
            let p = w as f64 / t;
            -p * p.log2()
        })
        .sum()
}
