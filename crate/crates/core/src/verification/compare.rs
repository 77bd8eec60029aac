use num_integer::Integer;
use serde::Serialize;

use crate::constructions::{build_complete_r_partite, build_transversal_design_3};
use crate::counting::{count, ind_hrd_formula, BigCount};
use crate::error::{Error, Result};

/// The construction `H^r_d` is compared against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rival {
    /// Complete r-partite r-graph with parts of size `t`; degree `t^(r-1)`.
    CompleteRPartite { t: usize },
    /// Cyclic 3-partite transversal design of order `m`; degree `m`.
    TransversalDesign3 { m: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Winner {
    Hrd,
    Rival,
    Tie,
}

/// Both constructions normalized to a common vertex count.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub r: usize,
    pub d: usize,
    pub rival: String,
    pub hrd_vertices: usize,
    pub rival_vertices: usize,
    /// `lcm(hrd_vertices, rival_vertices)`
    pub common_vertices: usize,
    pub ind_hrd: BigCount,
    pub ind_rival: BigCount,
    /// `ind(H^r_d)^(L / rd)`
    pub hrd_value: BigCount,
    /// `ind(rival)^(L / |rival|)`
    pub rival_value: BigCount,
    pub winner: Winner,
}

pub fn compare_constructions(r: usize, rival: Rival) -> Result<ComparisonReport> {
    let (d, graph, name) = match rival {
        Rival::CompleteRPartite { t } => {
            let g = build_complete_r_partite(r, t)?;
            (
                t.pow(r as u32 - 1),
                g,
                format!("complete {r}-partite, parts of size {t}"),
            )
        }
        Rival::TransversalDesign3 { m } => {
            if r != 3 {
                return Err(Error::invalid(format!(
                    "transversal designs are only built for r = 3, got r = {r}"
                )));
            }
            (
                m,
                build_transversal_design_3(m)?,
                format!("cyclic transversal design, m = {m}"),
            )
        }
    };
    let ind_hrd = ind_hrd_formula(r, d)?;
    let ind_rival = count(&graph);
    let hrd_vertices = r * d;
    let rival_vertices = graph.n();
    let common = hrd_vertices.lcm(&rival_vertices);
    let hrd_value = ind_hrd.pow(common / hrd_vertices);
    let rival_value = ind_rival.pow(common / rival_vertices);
    let winner = match hrd_value.cmp(&rival_value) {
        std::cmp::Ordering::Greater => Winner::Hrd,
        std::cmp::Ordering::Less => Winner::Rival,
        std::cmp::Ordering::Equal => Winner::Tie,
    };
    Ok(ComparisonReport {
        r,
        d,
        rival: name,
        hrd_vertices,
        rival_vertices,
        common_vertices: common,
        ind_hrd,
        ind_rival,
        hrd_value,
        rival_value,
        winner,
    })
}

/// Compares against the complete r-partite r-graph of degree `d`, which
/// exists only when `d = t^(r-1)` for an integer `t`.
pub fn compare_at_degree(r: usize, d: usize) -> Result<ComparisonReport> {
    if r < 2 || d < 1 {
        return Err(Error::invalid(format!("need r >= 2 and d >= 1, got r={r}, d={d}")));
    }
    let t = (1..=d)
        .find(|t| t.checked_pow(r as u32 - 1).is_some_and(|p| p >= d))
        .filter(|t| t.pow(r as u32 - 1) == d)
        .ok_or_else(|| {
            Error::invalid(format!(
                "numerics mismatch: d = {d} is not t^{} for any integer t",
                r - 1
            ))
        })?;
    compare_constructions(r, Rival::CompleteRPartite { t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_brute;

    #[test]
    fn complete_tripartite_loses() {
        let rep = compare_constructions(3, Rival::CompleteRPartite { t: 2 }).unwrap();
        assert_eq!(rep.d, 4);
        assert_eq!(rep.common_vertices, 12);
        assert_eq!(rep.ind_hrd, BigCount::from(1471));
        assert_eq!(rep.ind_rival, BigCount::from(37));
        assert_eq!(rep.hrd_value, BigCount::from(1471));
        assert_eq!(rep.rival_value, BigCount::from(1369));
        assert_eq!(rep.winner, Winner::Hrd);
    }

    #[test]
    fn bipartite_case_ties() {
        let rep = compare_constructions(2, Rival::CompleteRPartite { t: 2 }).unwrap();
        assert_eq!(rep.ind_hrd, BigCount::from(7));
        assert_eq!(rep.ind_rival, BigCount::from(7));
        assert_eq!(rep.winner, Winner::Tie);
    }

    #[test]
    fn transversal_design_loses() {
        let td = build_transversal_design_3(2).unwrap();
        let brute = count_brute(&td).unwrap();
        let rep = compare_constructions(3, Rival::TransversalDesign3 { m: 2 }).unwrap();
        assert_eq!(rep.ind_rival, brute);
        assert_eq!(rep.common_vertices, 6);
        assert_eq!(rep.hrd_value, BigCount::from(43));
        assert_eq!(rep.winner, Winner::Hrd);
        assert!(compare_constructions(4, Rival::TransversalDesign3 { m: 2 }).is_err());
    }

    #[test]
    fn degree_form_is_checked() {
        assert_eq!(compare_at_degree(3, 4).unwrap().winner, Winner::Hrd);
        let err = compare_at_degree(3, 5).unwrap_err();
        assert!(err.to_string().contains("numerics mismatch"));
        assert!(compare_at_degree(4, 8).is_ok());
    }
}
