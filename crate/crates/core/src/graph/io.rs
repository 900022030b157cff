//! Edge-list text and JSON graph formats.
//!
//! Text format: a required header `n <count>`, then one edge per line as
//! `i j [w]` with 0-based indices and weight defaulting to 1. `#` starts a
//! comment; blank lines are ignored.
//!
//! JSON format: `{"n": 3, "edges": [[0, 1, 1.0], [1, 2, 1.0]]}`.

use serde::{Deserialize, Serialize};

use super::WeightedGraph;
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<WeightedGraph> {
    let mut n = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let err = |reason: String| Error::Parse { line: line_no, reason };
        if n.is_none() {
            if fields.len() != 2 || fields[0] != "n" {
                return Err(err(format!("expected header `n <count>`, found `{line}`")));
            }
            let count = fields[1]
                .parse::<usize>()
                .map_err(|e| err(format!("bad node count: {e}")))?;
            n = Some(count);
            continue;
        }
        if !(2..=3).contains(&fields.len()) {
            return Err(err(format!("expected `i j [w]`, found `{line}`")));
        }
        let i = fields[0].parse::<usize>().map_err(|e| err(format!("bad index: {e}")))?;
        let j = fields[1].parse::<usize>().map_err(|e| err(format!("bad index: {e}")))?;
        let w = match fields.get(2) {
            Some(s) => s.parse::<f64>().map_err(|e| err(format!("bad weight: {e}")))?,
            None => 1.0,
        };
        edges.push((i, j, w));
    }
    let n = n.ok_or(Error::Parse { line: 0, reason: "missing header `n <count>`".into() })?;
    WeightedGraph::new(n, edges)
}

pub fn to_edge_list(g: &WeightedGraph) -> String {
    let mut out = format!("n {}\n", g.n());
    for e in g.edges() {
        out.push_str(&format!("{} {} {}\n", e.i, e.j, e.w));
    }
    out
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
}

pub fn parse_graph_json(text: &str) -> Result<WeightedGraph> {
    let parsed: GraphJson = serde_json::from_str(text)?;
    WeightedGraph::new(parsed.n, parsed.edges)
}

pub fn to_graph_json(g: &WeightedGraph) -> String {
    let doc = GraphJson {
        n: g.n(),
        edges: g.edges().iter().map(|e| (e.i, e.j, e.w)).collect(),
    };
    serde_json::to_string(&doc).expect("graph serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    #[test]
    fn parses_comments_and_default_weights() {
        let text = "# a path\nn 3\n\n0 1\n1 2 2.5 # heavy\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges()[1].w, 2.5);
        assert_eq!(g.edges()[0].w, 1.0);
    }

    #[test]
    fn header_is_required() {
        assert!(matches!(parse_edge_list("0 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("n 2\n0 x\n"), Err(Error::Parse { line: 2, .. })));
        assert_eq!(parse_edge_list("n 2\n0 0\n"), Err(Error::SelfLoop(0)));
    }

    #[test]
    fn round_trips() {
        let g = Family::PathLikeK3.build(&[6]).unwrap().scaled(0.3).unwrap();
        assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
        assert_eq!(parse_graph_json(&to_graph_json(&g)).unwrap(), g);
    }

    #[test]
    fn json_format() {
        let g = parse_graph_json(r#"{"n": 3, "edges": [[0, 1, 1.0], [1, 2, 1.0]]}"#).unwrap();
        assert_eq!(g.m(), 2);
        assert!(parse_graph_json(r#"{"n": 3}"#).is_err());
    }
}
