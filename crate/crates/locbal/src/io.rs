//! File formats: the JSON instance document, the solution document, and
//! DOT rendering of a partitioned pair.
//!
//! The instance grammar is one JSON object with an integer `n >= 1` and
//! arrays `g1`, `g2` of 2-integer arrays with ids in `[0, n)`. No other
//! keys, no comments, UTF-8. Keeping it this small makes fixtures
//! bit-portable across tools.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Forest, ForestPair, GraphError, VertexPartition};
use crate::solver::BalanceReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphName {
    G1,
    G2,
}

impl std::fmt::Display for GraphName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GraphName::G1 => write!(f, "g1"),
            GraphName::G2 => write!(f, "g2"),
        }
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("invalid {graph}: {source}")]
    Graph {
        graph: GraphName,
        source: GraphError,
    },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDocument {
    n: u64,
    g1: Vec<[u64; 2]>,
    g2: Vec<[u64; 2]>,
}

fn syntax_error(err: serde_json::Error) -> ParseError {
    ParseError::Syntax {
        line: err.line(),
        column: err.column(),
        message: err.to_string(),
    }
}

/// Strictly parses an instance document and validates both forests.
pub fn parse_instance(text: &str) -> Result<ForestPair, ParseError> {
    let doc: InstanceDocument = serde_json::from_str(text).map_err(syntax_error)?;
    if doc.n == 0 {
        return Err(ParseError::Invalid("n must be at least 1".to_string()));
    }
    if doc.n > u64::from(u32::MAX) {
        return Err(ParseError::Invalid(format!("n = {} is too large", doc.n)));
    }
    let n = doc.n as u32;
    let build = |name: GraphName, raw: &[[u64; 2]]| -> Result<Forest, ParseError> {
        let mut edges = Vec::with_capacity(raw.len());
        for &[a, b] in raw {
            for v in [a, b] {
                if v >= doc.n {
                    return Err(ParseError::Graph {
                        graph: name,
                        source: GraphError::VertexOutOfRange {
                            vertex: v.min(u64::from(u32::MAX)) as u32,
                            vertex_count: n,
                        },
                    });
                }
            }
            edges.push((a as u32, b as u32));
        }
        Forest::build(n, &edges).map_err(|source| ParseError::Graph {
            graph: name,
            source,
        })
    };
    let g1 = build(GraphName::G1, &doc.g1)?;
    let g2 = build(GraphName::G2, &doc.g2)?;
    Ok(ForestPair::new(g1, g2).expect("both forests built with the same n"))
}

/// Canonical single-line rendering of a pair; `parse_instance` inverts it.
pub fn format_instance(pair: &ForestPair) -> String {
    let edges = |f: &Forest| -> Vec<[u64; 2]> {
        f.edges()
            .iter()
            .map(|&(a, b)| [u64::from(a), u64::from(b)])
            .collect()
    };
    let doc = InstanceDocument {
        n: u64::from(pair.vertex_count()),
        g1: edges(pair.g1()),
        g2: edges(pair.g2()),
    };
    serde_json::to_string(&doc).expect("instance documents always serialize")
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub per_vertex_b1: Vec<u32>,
    pub per_vertex_b2: Vec<u32>,
    pub achieved_k: u32,
}

impl From<&BalanceReport> for ReportDocument {
    fn from(report: &BalanceReport) -> Self {
        ReportDocument {
            per_vertex_b1: report.per_vertex_b1.clone(),
            per_vertex_b2: report.per_vertex_b2.clone(),
            achieved_k: report.achieved_k,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MetaDocument {
    pub root_strategy: String,
    pub seed: Option<u64>,
    pub tool_version: String,
}

/// Solution file: the assignment, the report it earns, and enough metadata
/// to reproduce it.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SolutionDocument {
    pub assignment: Vec<u8>,
    pub report: ReportDocument,
    pub meta: MetaDocument,
}

impl SolutionDocument {
    pub fn new(partition: &VertexPartition, report: &BalanceReport, meta: MetaDocument) -> Self {
        SolutionDocument {
            assignment: partition.bits().to_vec(),
            report: ReportDocument::from(report),
            meta,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string(self).expect("solution documents always serialize");
        text.push('\n');
        text
    }
}

/// An assignment on disk: either a full solution document or a bare JSON
/// array of bits.
pub fn parse_assignment(
    text: &str,
) -> Result<(VertexPartition, Option<ReportDocument>), ParseError> {
    let as_document: Result<SolutionDocument, _> = serde_json::from_str(text);
    let (bits, report) = match as_document {
        Ok(doc) => (doc.assignment, Some(doc.report)),
        Err(doc_err) => match serde_json::from_str::<Vec<u8>>(text) {
            Ok(bits) => (bits, None),
            Err(_) => return Err(syntax_error(doc_err)),
        },
    };
    let partition =
        VertexPartition::from_bits(bits).map_err(|e| ParseError::Invalid(e.to_string()))?;
    Ok((partition, report))
}

/// DOT document showing both forests as clusters; part-1 vertices are
/// filled, part-0 vertices unfilled. Byte-stable for identical inputs.
pub fn emit_dot(pair: &ForestPair, partition: &VertexPartition) -> String {
    use std::fmt::Write;
    assert_eq!(
        partition.len(),
        pair.vertex_count() as usize,
        "partition length must match the vertex count"
    );
    let mut out = String::from("graph forest_pair {\n  node [shape=circle];\n");
    let cluster = |out: &mut String, name: &str, prefix: &str, forest: &Forest| {
        let _ = writeln!(out, "  subgraph cluster_{prefix} {{");
        let _ = writeln!(out, "    label=\"{name}\";");
        for v in 0..forest.vertex_count() {
            let style = if partition.get(v) == Some(1) {
                ", style=filled, fillcolor=gray75"
            } else {
                ""
            };
            let _ = writeln!(out, "    {prefix}_{v} [label=\"{v}\"{style}];");
        }
        for &(a, b) in forest.edges() {
            let _ = writeln!(out, "    {prefix}_{a} -- {prefix}_{b};");
        }
        out.push_str("  }\n");
    };
    cluster(&mut out, "G1", "g1", pair.g1());
    cluster(&mut out, "G2", "g2", pair.g2());
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::paper_example;

    const PAPER_JSON: &str =
        r#"{"n":5,"g1":[[0,1],[1,2],[2,3],[3,4]],"g2":[[0,4],[4,3],[2,1],[1,0]]}"#;

    #[test]
    fn parses_the_paper_instance() {
        let pair = parse_instance(PAPER_JSON).unwrap();
        assert_eq!(pair, paper_example());
    }

    #[test]
    fn parses_the_trivial_instance() {
        let pair = parse_instance(r#"{"n":1,"g1":[],"g2":[]}"#).unwrap();
        assert_eq!(pair.vertex_count(), 1);
    }

    #[test]
    fn rejects_cycles_with_graph_attribution() {
        let err = parse_instance(r#"{"n":3,"g1":[[0,1],[1,2],[2,0]],"g2":[]}"#).unwrap_err();
        match err {
            ParseError::Graph { graph, source } => {
                assert_eq!(graph, GraphName::G1);
                assert!(matches!(source, GraphError::CycleDetected { .. }));
            }
            other => panic!("expected a graph error, got {other:?}"),
        }
    }

    #[test]
    fn reports_syntax_position() {
        let err = parse_instance("{\"n\":5,\n  \"g1\": oops}").unwrap_err();
        match err {
            ParseError::Syntax { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_fields_and_zero_n() {
        assert!(matches!(
            parse_instance(r#"{"n":1,"g1":[],"g2":[],"extra":1}"#),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_instance(r#"{"n":0,"g1":[],"g2":[]}"#),
            Err(ParseError::Invalid(_))
        ));
    }

    #[test]
    fn round_trips_the_paper_pair() {
        let pair = paper_example();
        let text = format_instance(&pair);
        assert_eq!(parse_instance(&text).unwrap(), pair);
    }

    #[test]
    fn dot_contains_both_clusters_and_is_stable() {
        let pair = paper_example();
        let p = VertexPartition::from_bits(vec![1, 1, 0, 1, 0]).unwrap();
        let a = emit_dot(&pair, &p);
        assert_eq!(a, emit_dot(&pair, &p));
        assert!(a.contains("subgraph cluster_g1"));
        assert!(a.contains("subgraph cluster_g2"));
        assert_eq!(a.matches("g1_0").count(), 2); // declaration + one edge
        assert!(a.contains("g1_0 [label=\"0\", style=filled, fillcolor=gray75];"));
        assert!(a.contains("g1_2 [label=\"2\"];"));
        assert_eq!(a.matches("style=filled").count(), 6); // three 1-bits, two clusters
    }

    #[test]
    fn dot_single_vertex() {
        let pair = parse_instance(r#"{"n":1,"g1":[],"g2":[]}"#).unwrap();
        let p = VertexPartition::from_bits(vec![0]).unwrap();
        let dot = emit_dot(&pair, &p);
        assert_eq!(dot.matches("label=\"0\"").count(), 2);
    }

    #[test]
    fn assignment_accepts_bare_arrays_and_documents() {
        let (p, report) = parse_assignment("[0,1,1,1,0]").unwrap();
        assert_eq!(p.bits(), &[0, 1, 1, 1, 0]);
        assert!(report.is_none());

        let doc = SolutionDocument {
            assignment: vec![0, 1],
            report: ReportDocument {
                per_vertex_b1: vec![1, 1],
                per_vertex_b2: vec![1, 1],
                achieved_k: 1,
            },
            meta: MetaDocument {
                root_strategy: "min-id".to_string(),
                seed: None,
                tool_version: "0.0.0".to_string(),
            },
        };
        let (p, report) = parse_assignment(&doc.to_json()).unwrap();
        assert_eq!(p.bits(), &[0, 1]);
        assert_eq!(report.unwrap().achieved_k, 1);
    }

    #[test]
    fn assignment_rejects_non_bits() {
        assert!(matches!(
            parse_assignment("[0,2]"),
            Err(ParseError::Invalid(_))
        ));
    }
}
