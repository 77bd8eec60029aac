//! The `.hg` text format.
//!
//! ```text
//! # optional comment lines
//! 6
//! 0 2 3
//! 0 4 5
//! ```
//!
//! The first content line is the vertex count. Every later nonempty line not
//! starting with `#` is one edge, written as strictly increasing 0-based
//! indices separated by single spaces.

use super::{Hypergraph, VertexSet};
use crate::error::{Error, Result};

pub fn read_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<VertexSet> = Vec::new();
    let mut seen: std::collections::HashMap<VertexSet, usize> = Default::default();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(n) = n else {
            n = Some(
                line.parse::<usize>()
                    .map_err(|_| Error::parse(line_no, format!("bad vertex count {line:?}")))?,
            );
            continue;
        };
        let mut members = Vec::new();
        for tok in line.split_whitespace() {
            let v: usize = tok
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad vertex index {tok:?}")))?;
            if v >= n {
                return Err(Error::parse(line_no, format!("vertex index {v} >= n = {n}")));
            }
            if members.last().is_some_and(|&last| last >= v) {
                return Err(Error::parse(line_no, "vertex indices must be strictly increasing"));
            }
            members.push(v);
        }
        let edge = VertexSet::from_sorted_unchecked(members);
        if let Some(prev) = seen.insert(edge.clone(), line_no) {
            return Err(Error::parse(
                line_no,
                format!("duplicate edge {edge} (first on line {prev})"),
            ));
        }
        edges.push(edge);
    }

    let n = n.ok_or_else(|| Error::parse(1, "missing vertex count header"))?;
    edges.sort();
    Ok(Hypergraph::from_sorted_unchecked(n, edges))
}

pub fn write_hypergraph(g: &Hypergraph) -> String {
    let mut out = format!("{}\n", g.n());
    for e in g.edges() {
        let parts: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        out.push_str(&parts.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_single_edge() {
        let g = read_hypergraph("3\n0 1 2\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), &[VertexSet::from([0, 1, 2])]);
    }

    #[test]
    fn writes_single_edge() {
        let g = Hypergraph::new(3, [[0, 1, 2]]).unwrap();
        assert_eq!(write_hypergraph(&g), "3\n0 1 2\n");
    }

    #[test]
    fn write_sorts_edges() {
        let g = Hypergraph::new(4, [[2, 3], [0, 1]]).unwrap();
        assert_eq!(write_hypergraph(&g), "4\n0 1\n2 3\n");
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = read_hypergraph("# header\n\n4\n# edge\n2 3\n\n0 1\n").unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.edges()[0], VertexSet::from([0, 1]));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(
            read_hypergraph("2\n0 3\n").unwrap_err(),
            Error::parse(2, "vertex index 3 >= n = 2")
        );
        assert!(matches!(read_hypergraph("x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            read_hypergraph("3\n0 1\n\n0 1\n"),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(matches!(read_hypergraph("3\n1 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(read_hypergraph(""), Err(Error::Parse { .. })));
    }
}
