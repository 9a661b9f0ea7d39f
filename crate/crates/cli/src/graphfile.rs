//! Plain-text graph files.
//!
//! ```text
//! # comment
//! vertices 4
//! edge 0 1
//! edge 1 2
//! orient 1 0
//! rotation 0: e0.0 e3.1
//! assert pfaffian-compatible
//! ```
//!
//! Edge indices follow the order of the `edge` records. `orient e END` makes
//! end `END` of edge `e` its head (the default head is end 1). A `rotation`
//! record lists the half-edges at a vertex as `eINDEX.END` tokens; when any
//! rotation is given, every vertex needs one.

use std::fmt::Write as _;
use std::path::Path;

use colourmodels::graph::{HalfEdge, Multigraph, Orientation};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Multigraph,
    pub pfaffian_compatible: bool,
}

fn parse_error(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse { line, message: message.into() }
}

fn number(token: Option<&str>, line: usize, what: &str) -> Result<usize, CliError> {
    let token = token.ok_or_else(|| parse_error(line, format!("missing {what}")))?;
    token.parse().map_err(|_| parse_error(line, format!("invalid {what} '{token}'")))
}

fn half_edge(token: &str, line: usize) -> Result<HalfEdge, CliError> {
    let bad = || parse_error(line, format!("invalid half-edge '{token}', expected eINDEX.END"));
    let rest = token.strip_prefix('e').ok_or_else(bad)?;
    let (edge, end) = rest.split_once('.').ok_or_else(bad)?;
    let edge: usize = edge.parse().map_err(|_| bad())?;
    let end: u8 = end.parse().map_err(|_| bad())?;
    if end > 1 {
        return Err(bad());
    }
    Ok(HalfEdge::new(edge, end))
}

impl GraphFile {
    pub fn new(graph: Multigraph, pfaffian_compatible: bool) -> Self {
        GraphFile { graph, pfaffian_compatible }
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut vertices: Option<(usize, usize)> = None;
        let mut edges: Vec<(usize, usize, usize)> = Vec::new();
        let mut orients: Vec<(usize, usize, u8)> = Vec::new();
        let mut rotations: Vec<(usize, usize, Vec<HalfEdge>)> = Vec::new();
        let mut pfaffian = false;

        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut tokens = content.split_whitespace();
            let keyword = tokens.next().unwrap_or_default();
            match keyword {
                "vertices" => {
                    if vertices.is_some() {
                        return Err(parse_error(line, "duplicate vertices record"));
                    }
                    vertices = Some((number(tokens.next(), line, "vertex count")?, line));
                }
                "edge" => {
                    let u = number(tokens.next(), line, "edge endpoint")?;
                    let v = number(tokens.next(), line, "edge endpoint")?;
                    edges.push((u, v, line));
                }
                "orient" => {
                    let e = number(tokens.next(), line, "edge index")?;
                    let end = number(tokens.next(), line, "head end")?;
                    if end > 1 {
                        return Err(parse_error(line, format!("head end must be 0 or 1, got {end}")));
                    }
                    orients.push((e, line, end as u8));
                }
                "rotation" => {
                    let rest = content["rotation".len()..].trim();
                    let (v, list) =
                        rest.split_once(':').ok_or_else(|| parse_error(line, "expected 'rotation v: eI.END …'"))?;
                    let v = number(Some(v.trim()), line, "vertex")?;
                    let order = list.split_whitespace().map(|t| half_edge(t, line)).collect::<Result<Vec<_>, _>>()?;
                    rotations.push((v, line, order));
                    continue;
                }
                "assert" => {
                    match tokens.next() {
                        Some("pfaffian-compatible") => pfaffian = true,
                        other => {
                            return Err(parse_error(line, format!("unknown assertion '{}'", other.unwrap_or(""))));
                        }
                    }
                }
                other => return Err(parse_error(line, format!("unknown record '{other}'"))),
            }
            if let Some(extra) = tokens.next() {
                return Err(parse_error(line, format!("unexpected token '{extra}'")));
            }
        }

        let (n, _) = vertices.ok_or_else(|| parse_error(1, "missing vertices record"))?;
        for &(u, v, line) in &edges {
            if u >= n || v >= n {
                return Err(parse_error(line, format!("edge endpoint out of range for {n} vertices")));
            }
        }
        let graph = Multigraph::new(n, edges.iter().map(|&(u, v, _)| (u, v)).collect())
            .map_err(|e| parse_error(1, e.to_string()))?;

        let mut heads = vec![1u8; edges.len()];
        let mut oriented = vec![false; edges.len()];
        for &(e, line, end) in &orients {
            if e >= edges.len() {
                return Err(parse_error(line, format!("edge {e} out of range for {} edges", edges.len())));
            }
            if oriented[e] {
                return Err(parse_error(line, format!("edge {e} oriented twice")));
            }
            oriented[e] = true;
            heads[e] = end;
        }
        let graph = graph
            .with_orientation(Orientation::from_heads(heads).expect("ends are 0 or 1"))
            .expect("one head per edge");

        if rotations.is_empty() {
            return Ok(GraphFile { graph, pfaffian_compatible: pfaffian });
        }
        let mut orders: Vec<Option<Vec<HalfEdge>>> = vec![None; n];
        for (v, line, order) in rotations {
            if v >= n {
                return Err(parse_error(line, format!("vertex {v} out of range for {n} vertices")));
            }
            if orders[v].is_some() {
                return Err(parse_error(line, format!("vertex {v} has two rotations")));
            }
            let mut sorted = order.clone();
            sorted.sort();
            if sorted.as_slice() != graph.half_edges_at(v) {
                let expected: Vec<String> = graph.half_edges_at(v).iter().map(|h| format!("e{}.{}", h.edge, h.end)).collect();
                return Err(parse_error(
                    line,
                    format!("rotation at vertex {v} must list each of [{}] once", expected.join(" ")),
                ));
            }
            orders[v] = Some(order);
        }
        let last_line = text.lines().count().max(1);
        let orders = orders
            .into_iter()
            .enumerate()
            .map(|(v, o)| o.ok_or_else(|| parse_error(last_line, format!("vertex {v} has no rotation"))))
            .collect::<Result<Vec<_>, _>>()?;
        let graph = graph.with_rotation(orders).map_err(|e| parse_error(last_line, e.to_string()))?;
        Ok(GraphFile { graph, pfaffian_compatible: pfaffian })
    }

    /// Canonical text: non-default orientations and every rotation are written out.
    pub fn serialize(&self) -> String {
        let g = &self.graph;
        let mut out = String::new();
        writeln!(out, "vertices {}", g.vertex_count()).unwrap();
        for &(u, v) in g.edges() {
            writeln!(out, "edge {u} {v}").unwrap();
        }
        for (e, &head) in g.orientation().heads().iter().enumerate() {
            if head != 1 {
                writeln!(out, "orient {e} {head}").unwrap();
            }
        }
        if let Some(rotation) = g.rotation() {
            for (v, order) in rotation.orders().iter().enumerate() {
                let tokens: Vec<String> = order.iter().map(|h| format!("e{}.{}", h.edge, h.end)).collect();
                writeln!(out, "rotation {v}: {}", tokens.join(" ")).unwrap();
            }
        }
        if self.pfaffian_compatible {
            writeln!(out, "assert pfaffian-compatible").unwrap();
        }
        out
    }
}
