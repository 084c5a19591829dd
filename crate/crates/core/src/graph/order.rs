use rand::seq::SliceRandom;

use super::Graph;
use crate::error::{Error, Result};
use crate::rng::SampleRng;

fn inverse(order: &[usize]) -> Result<Vec<usize>> {
    let mut rank = vec![usize::MAX; order.len()];
    for (pos, &item) in order.iter().enumerate() {
        if item >= order.len() || rank[item] != usize::MAX {
            return Err(Error::InvalidArgument(format!(
                "not a permutation of 0..{}: {order:?}",
                order.len()
            )));
        }
        rank[item] = pos;
    }
    Ok(rank)
}

/// A vertex elimination sequence: `order()[0]` is eliminated first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrdering {
    order: Vec<usize>,
    rank: Vec<usize>,
}

impl VertexOrdering {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let rank = inverse(&order)?;
        Ok(VertexOrdering { order, rank })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Elimination position of `v`.
    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// A strict total order on edge indices, smallest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeOrdering {
    order: Vec<usize>,
    rank: Vec<usize>,
}

impl EdgeOrdering {
    /// Edges ordered by `order`, smallest first.
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let rank = inverse(&order)?;
        Ok(EdgeOrdering { order, rank })
    }

    /// The input order: edge `i` has rank `i`.
    pub fn identity(m: usize) -> Self {
        EdgeOrdering { order: (0..m).collect(), rank: (0..m).collect() }
    }

    /// A uniformly random order.
    pub fn random(m: usize, rng: &mut SampleRng) -> Self {
        let mut order: Vec<usize> = (0..m).collect();
        order.shuffle(rng);
        Self::new(order).expect("shuffle is a permutation")
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn rank(&self, e: usize) -> usize {
        self.rank[e]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    pub fn less(&self, e: usize, f: usize) -> bool {
        self.rank[e] < self.rank[f]
    }

    /// The smallest edge, if any.
    pub fn smallest(&self) -> Option<usize> {
        self.order.first().copied()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Dense adjacency bit rows for clique tests.
struct BitRows {
    words: usize,
    rows: Vec<u64>,
}

impl BitRows {
    fn new(g: &Graph) -> Self {
        let words = g.order().div_ceil(64).max(1);
        let mut rows = vec![0u64; words * g.order()];
        for &(u, v) in g.edges() {
            rows[u * words + v / 64] |= 1 << (v % 64);
            rows[v * words + u / 64] |= 1 << (u % 64);
        }
        BitRows { words, rows }
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }
}

/// Greedy elimination order: repeatedly removes a simplicial vertex of the
/// remaining graph, or a vertex of minimum remaining degree when none is
/// simplicial. Ties go to the smallest vertex id. On a chordal graph the
/// result is a perfect elimination ordering.
pub fn peo_vertex_order(g: &Graph) -> VertexOrdering {
    let n = g.order();
    let bits = BitRows::new(g);
    let mut alive = vec![u64::MAX; bits.words];
    if !n.is_multiple_of(64) {
        alive[bits.words - 1] = (1u64 << (n % 64)) - 1;
    }
    if n == 0 {
        alive[0] = 0;
    }
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];

    let is_simplicial = |v: usize, alive: &[u64]| -> bool {
        let row = bits.row(v);
        g.neighbors(v).iter().all(|&u| {
            if alive[u / 64] & (1 << (u % 64)) == 0 {
                return true;
            }
            let adj_u = bits.row(u);
            (0..bits.words).all(|w| {
                let mut missing = row[w] & alive[w] & !adj_u[w];
                if w == u / 64 {
                    missing &= !(1 << (u % 64));
                }
                missing == 0
            })
        })
    };

    let mut simplicial: Vec<bool> = (0..n).map(|v| is_simplicial(v, &alive)).collect();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let pick = (0..n)
            .find(|&v| !removed[v] && simplicial[v])
            .or_else(|| (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (degree[v], v)))
            .expect("a vertex remains");
        removed[pick] = true;
        alive[pick / 64] &= !(1 << (pick % 64));
        order.push(pick);
        // Only neighbors of the removed vertex can change status, and
        // simplicial vertices stay simplicial.
        for &u in g.neighbors(pick) {
            if !removed[u] {
                degree[u] -= 1;
                if !simplicial[u] {
                    simplicial[u] = is_simplicial(u, &alive);
                }
            }
        }
    }
    VertexOrdering::new(order).expect("each vertex picked once")
}

/// Edge order induced by a vertex elimination order.
///
/// The vertex eliminated last is the smallest. Each edge is keyed by its
/// endpoints sorted ascending under that vertex order, and keys compare
/// lexicographically.
pub fn edge_order_from_vertex_order(g: &Graph, vo: &VertexOrdering) -> EdgeOrdering {
    let n = g.order();
    let key = |v: usize| n - 1 - vo.rank(v);
    let mut order: Vec<usize> = (0..g.size()).collect();
    order.sort_by_key(|&e| {
        let (u, v) = g.edge(e);
        let (a, b) = (key(u), key(v));
        (a.min(b), a.max(b))
    });
    EdgeOrdering::new(order).expect("sort of 0..m is a permutation")
}
