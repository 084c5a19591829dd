use std::fmt::Write as _;
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

/// A parsed graph together with the number of repeated edges that were
/// collapsed while reading it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub duplicates: usize,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_pair(line: usize, fields: &[&str]) -> Result<(usize, usize)> {
    if fields.len() != 2 {
        return Err(parse_err(line, format!("expected two integers, found {} fields", fields.len())));
    }
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| parse_err(line, format!("not a non-negative integer: {s:?}")))
    };
    Ok((num(fields[0])?, num(fields[1])?))
}

/// Accumulates edges in first-occurrence order, collapsing repeats.
struct EdgeCollector {
    n: usize,
    seen: std::collections::HashSet<(usize, usize)>,
    edges: Vec<(usize, usize)>,
    duplicates: usize,
}

impl EdgeCollector {
    fn new(n: usize) -> Self {
        EdgeCollector { n, seen: Default::default(), edges: Vec::new(), duplicates: 0 }
    }

    fn add(&mut self, line: usize, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(parse_err(line, format!("vertex id out of range for n = {}", self.n)));
        }
        if u == v {
            return Err(parse_err(line, format!("loop at vertex {u}")));
        }
        let key = (u.min(v), u.max(v));
        if self.seen.insert(key) {
            self.edges.push(key);
        } else {
            self.duplicates += 1;
        }
        Ok(())
    }

    fn finish(self) -> ParsedGraph {
        let graph = Graph::new(self.n, self.edges).expect("collector only admits simple edges");
        ParsedGraph { graph, duplicates: self.duplicates }
    }
}

/// Reads the plain edge-list format: a header line `n m`, then `m` lines
/// `u v` with 0-based vertex ids. Blank lines and lines starting with `#`
/// are skipped.
pub fn parse_edge_list(text: &str) -> Result<ParsedGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or_else(|| parse_err(1, "missing header `n m`"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (n, m) = parse_pair(header_line, &fields)?;

    let mut collector = EdgeCollector::new(n);
    let mut read = 0;
    let mut last_line = header_line;
    for (line, content) in lines {
        last_line = line;
        if read == m {
            return Err(parse_err(line, format!("more than the declared {m} edges")));
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let (u, v) = parse_pair(line, &fields)?;
        collector.add(line, u, v)?;
        read += 1;
    }
    if read < m {
        return Err(parse_err(last_line, format!("expected {m} edges, found {read}")));
    }
    Ok(collector.finish())
}

/// Reads DIMACS `.col`: `c` comment lines, one `p edge n m` line and `e u v`
/// lines with 1-based ids.
pub fn parse_dimacs(text: &str) -> Result<ParsedGraph> {
    let mut collector: Option<EdgeCollector> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if collector.is_some() {
                    return Err(parse_err(line, "second problem line"));
                }
                if fields.len() != 4 {
                    return Err(parse_err(line, "expected `p edge n m`"));
                }
                let (n, _) = parse_pair(line, &fields[2..])?;
                collector = Some(EdgeCollector::new(n));
            }
            Some("e") => {
                let c = collector
                    .as_mut()
                    .ok_or_else(|| parse_err(line, "edge before problem line"))?;
                let (u, v) = parse_pair(line, &fields[1..])?;
                if u == 0 || v == 0 {
                    return Err(parse_err(line, "DIMACS vertex ids start at 1"));
                }
                c.add(line, u - 1, v - 1)?;
            }
            Some(other) => return Err(parse_err(line, format!("unknown line type {other:?}"))),
        }
    }
    collector
        .map(EdgeCollector::finish)
        .ok_or_else(|| parse_err(1, "missing problem line `p edge n m`"))
}

/// Reads a graph file, choosing DIMACS for `.col` and the edge-list format
/// otherwise.
pub fn read_graph_file(path: &Path) -> std::io::Result<Result<ParsedGraph>> {
    let text = std::fs::read_to_string(path)?;
    let is_col = path.extension().is_some_and(|ext| ext.eq_ignore_ascii_case("col"));
    Ok(if is_col { parse_dimacs(&text) } else { parse_edge_list(&text) })
}

/// Serializes `g` in the edge-list format read by [`parse_edge_list`].
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.order(), g.size()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
