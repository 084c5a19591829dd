//! Simple undirected graphs, their file formats and generators, and the
//! vertex/edge orderings that fix broken-circuit semantics.

mod generate;
mod io;
mod order;

pub use generate::{gen_er, gen_named, Family, ER_MAX_ATTEMPTS};
pub use io::{parse_dimacs, parse_edge_list, read_graph_file, write_edge_list, ParsedGraph};
pub use order::{edge_order_from_vertex_order, peo_vertex_order, EdgeOrdering, VertexOrdering};

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are stored as `(u, v)` with `u < v`; the position of an edge in
/// [`Graph::edges`] is its stable index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Loops, out-of-range endpoints and
    /// repeated edges are rejected; endpoints are canonicalized to `u < v`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        let mut canonical = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
            }
            let (a, b) = (u.min(v), u.max(v));
            if adjacency[a].contains(&b) {
                return Err(Error::InvalidArgument(format!("duplicate edge ({a}, {b})")));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
            canonical.push((a, b));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph { n, edges: canonical, adjacency })
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adjacency: vec![Vec::new(); n] }
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> (usize, usize) {
        self.edges[index]
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Index of the edge joining `u` and `v`, if present.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.iter().position(|&e| e == key)
    }

    /// Component label per vertex, labels numbered in order of first vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adjacency[v] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// True iff the graph has exactly one component. The empty graph on zero
    /// vertices is not connected; a single vertex is.
    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().iter().all(|&c| c == 0)
    }

    /// Splits the graph into its connected components, each relabelled to
    /// `0..k` preserving relative vertex and edge order.
    pub fn split_components(&self) -> Vec<Graph> {
        let label = self.components();
        let count = label.iter().copied().max().map_or(0, |c| c + 1);
        let mut local = vec![0; self.n];
        let mut sizes = vec![0; count];
        for v in 0..self.n {
            local[v] = sizes[label[v]];
            sizes[label[v]] += 1;
        }
        let mut parts: Vec<Vec<(usize, usize)>> = vec![Vec::new(); count];
        for &(u, v) in &self.edges {
            parts[label[u]].push((local[u], local[v]));
        }
        parts
            .into_iter()
            .zip(sizes)
            .map(|(edges, n)| Graph::new(n, edges).expect("component of a simple graph is simple"))
            .collect()
    }

    /// Length of the shortest cycle, or `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            dist.fill(usize::MAX);
            parent.fill(usize::MAX);
            dist[root] = 0;
            queue.clear();
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adjacency[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }
}
