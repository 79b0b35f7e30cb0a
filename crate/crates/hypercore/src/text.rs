//! Line-oriented hypergraph files.
//!
//! ```text
//! k 5
//! z 0
//! 0 1 3 5 8
//! 0 2 4 7 9
//! ```
//!
//! The `k` line comes first. An optional `z` line names the designated
//! vertex. Every other non-blank line is one edge. `#` starts a comment.

use std::fmt::Write as _;

use crate::edge::{Edge, Vertex};
use crate::error::HyperError;
use crate::graph::Hypergraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Hypergraph,
    pub z: Option<Vertex>,
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<GraphFile, HyperError> {
        let mut graph: Option<Hypergraph> = None;
        let mut z = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let err = |msg: String| HyperError::Parse { line: line_no, msg };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            let first = words.next().expect("line is not blank");
            match first {
                "k" => {
                    if graph.is_some() {
                        return Err(err("duplicate k line".into()));
                    }
                    let k = parse_single(words, line_no)?;
                    graph = Some(Hypergraph::new(k as usize)?);
                }
                "z" => {
                    if z.is_some() {
                        return Err(err("duplicate z line".into()));
                    }
                    z = Some(parse_single(words, line_no)?);
                }
                _ => {
                    let g = graph
                        .as_mut()
                        .ok_or_else(|| err("edge before k line".into()))?;
                    let ids = std::iter::once(first)
                        .chain(words)
                        .map(|w| w.parse::<Vertex>().map_err(|e| err(format!("{w:?}: {e}"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    let e = Edge::new(&ids, g.k()).map_err(|e| err(e.to_string()))?;
                    g.add_edge(e)?;
                }
            }
        }
        let graph = graph.ok_or(HyperError::Parse {
            line: 0,
            msg: "missing k line".into(),
        })?;
        Ok(GraphFile { graph, z })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "k {}", self.graph.k()).unwrap();
        if let Some(z) = self.z {
            writeln!(out, "z {z}").unwrap();
        }
        for e in self.graph.edges() {
            out.push_str(&render_edge(e));
            out.push('\n');
        }
        out
    }
}

pub fn render_edge(e: &Edge) -> String {
    e.vertices()
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_single<'a>(
    mut words: impl Iterator<Item = &'a str>,
    line: usize,
) -> Result<Vertex, HyperError> {
    let w = words.next().ok_or(HyperError::Parse {
        line,
        msg: "missing value".into(),
    })?;
    if words.next().is_some() {
        return Err(HyperError::Parse {
            line,
            msg: "trailing input".into(),
        });
    }
    w.parse().map_err(|e| HyperError::Parse {
        line,
        msg: format!("{w:?}: {e}"),
    })
}
