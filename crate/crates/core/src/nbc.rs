//! Broken-circuit sampler.
//!
//! One sample grows a spanning tree edge by edge, Kruskal style, only ever
//! adding edges that keep the edge set free of broken circuits. The number of
//! admissible edges at each stage is the child count of the corresponding
//! node in the search tree of broken-circuit-free subgraphs, and Knuth's
//! estimator turns the product of child counts into unbiased estimates of the
//! number of such subgraphs per size, which are the magnitudes `b_i` of the
//! chromatic coefficients.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{EdgeOrdering, Graph};
use crate::rng::SampleRng;
use crate::stats::LogNumber;

/// Union–find with union by rank and path halving.
#[derive(Debug, Clone)]
pub struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    pub fn new(n: usize) -> Self {
        DisjointSet { parent: (0..n).collect(), rank: vec![0; n] }
    }

    pub fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i;
        }
        self.rank.fill(0);
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Joins the sets of `a` and `b`; false if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.rank[ra] < self.rank[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        if self.rank[ra] == self.rank[rb] {
            self.rank[ra] += 1;
        }
        true
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }
}

const NO_PATH: u32 = u32::MAX;

/// A broken-circuit-free forest under construction.
///
/// Besides the chosen edges and their components, the state keeps for every
/// vertex pair in a common tree the smallest edge rank on the tree path
/// between them (`NO_PATH` otherwise). Adding a new edge `e = uv` closes a
/// broken circuit exactly when some smaller edge `f = ab` outside the forest,
/// joining the same two components, sees only edges larger than itself on
/// the paths `a..u` and `v..b`.
#[derive(Debug, Clone)]
pub struct ForestState {
    n: usize,
    chosen: Vec<usize>,
    dsu: DisjointSet,
    members: Vec<Vec<usize>>,
    path_min: Vec<u32>,
    label: Vec<usize>,
    crossing: Vec<(usize, usize, usize, usize)>,
}

impl ForestState {
    pub fn new(n: usize) -> Self {
        ForestState {
            n,
            chosen: Vec::with_capacity(n.saturating_sub(1)),
            dsu: DisjointSet::new(n),
            members: (0..n).map(|v| vec![v]).collect(),
            path_min: vec![NO_PATH; n * n],
            label: vec![0; n],
            crossing: Vec::new(),
        }
    }

    /// Back to the edgeless forest.
    pub fn reset(&mut self) {
        self.chosen.clear();
        self.dsu.reset();
        for (v, list) in self.members.iter_mut().enumerate() {
            list.clear();
            list.push(v);
        }
        self.path_min.fill(NO_PATH);
    }

    /// Chosen edges in insertion order.
    pub fn chosen(&self) -> &[usize] {
        &self.chosen
    }

    /// Number of trees in the forest.
    pub fn components(&self) -> usize {
        self.n - self.chosen.len()
    }

    fn pm(&self, a: usize, b: usize) -> u32 {
        self.path_min[a * self.n + b]
    }

    /// Adds edge `e`, which must join two different trees.
    pub fn add(&mut self, g: &Graph, eo: &EdgeOrdering, e: usize) {
        let (u, v) = g.edge(e);
        let (ru, rv) = (self.dsu.find(u), self.dsu.find(v));
        assert_ne!(ru, rv, "edge {e} would close a cycle");
        let re = eo.rank(e) as u32;
        let n = self.n;
        for &a in &self.members[ru] {
            let to_u = self.path_min[a * n + u];
            for &b in &self.members[rv] {
                let val = to_u.min(re).min(self.path_min[v * n + b]);
                self.path_min[a * n + b] = val;
                self.path_min[b * n + a] = val;
            }
        }
        self.dsu.union(u, v);
        let root = self.dsu.find(u);
        let other = if root == ru { rv } else { ru };
        let moved = std::mem::take(&mut self.members[other]);
        self.members[root].extend(moved);
        self.chosen.push(e);
    }

    /// Whether `f` blocks `e`, given component labels. Both edges join the
    /// same pair of trees and `f < e`.
    fn blocks(&self, g: &Graph, eo: &EdgeOrdering, label: &[usize], f: usize, e: usize) -> bool {
        let (u, v) = g.edge(e);
        let (mut a, mut b) = g.edge(f);
        if label[a] != label[u] {
            std::mem::swap(&mut a, &mut b);
        }
        let rf = eo.rank(f) as u32;
        self.pm(a, u) > rf && self.pm(b, v) > rf
    }

    /// True iff adding `e` keeps the forest acyclic and free of broken
    /// circuits.
    pub fn is_admissible(&mut self, g: &Graph, eo: &EdgeOrdering, e: usize) -> bool {
        let (u, v) = g.edge(e);
        let (cu, cv) = (self.dsu.find(u), self.dsu.find(v));
        if cu == cv {
            return false;
        }
        let pair = (cu.min(cv), cu.max(cv));
        for v in 0..self.n {
            self.label[v] = self.dsu.find(v);
        }
        let label = &self.label;
        !(0..g.size()).any(|f| {
            if !eo.less(f, e) {
                return false;
            }
            let (a, b) = g.edge(f);
            let (la, lb) = (label[a], label[b]);
            (la.min(lb), la.max(lb)) == pair && self.blocks(g, eo, label, f, e)
        })
    }

    /// All admissible edges, smallest first.
    pub fn admissible_into(&mut self, g: &Graph, eo: &EdgeOrdering, out: &mut Vec<usize>) {
        out.clear();
        for v in 0..self.n {
            self.label[v] = self.dsu.find(v);
        }
        let mut crossing = std::mem::take(&mut self.crossing);
        crossing.clear();
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let (cu, cv) = (self.label[u], self.label[v]);
            if cu != cv {
                crossing.push((cu.min(cv), cu.max(cv), eo.rank(e), e));
            }
        }
        // Groups of edges joining the same two trees, each group by rank.
        crossing.sort_unstable();
        let mut lo = 0;
        while lo < crossing.len() {
            let key = (crossing[lo].0, crossing[lo].1);
            let hi = lo + crossing[lo..].iter().take_while(|c| (c.0, c.1) == key).count();
            for i in lo..hi {
                let e = crossing[i].3;
                if !(lo..i).any(|j| self.blocks(g, eo, &self.label, crossing[j].3, e)) {
                    out.push(e);
                }
            }
            lo = hi;
        }
        out.sort_unstable_by_key(|&e| eo.rank(e));
        self.crossing = crossing;
    }

    pub fn admissible(&mut self, g: &Graph, eo: &EdgeOrdering) -> Vec<usize> {
        let mut out = Vec::new();
        self.admissible_into(g, eo, &mut out);
        out
    }
}

/// Whether `e` may join `state` without creating a cycle or a broken circuit.
pub fn is_nbc_admissible(state: &mut ForestState, e: usize, g: &Graph, eo: &EdgeOrdering) -> bool {
    state.is_admissible(g, eo, e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Plain sampler: every stage chooses uniformly among admissible edges.
    Plain,
    /// Forces the smallest edge first, which lies in every broken-circuit-free
    /// spanning tree, and samples the remaining `n - 2` stages.
    Improved,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::Improved => "improved",
        }
    }
}

/// One root-to-leaf path of the sampler.
#[derive(Debug, Clone, PartialEq)]
pub struct BcSample {
    /// Admissible-edge counts at each sampled stage.
    pub levels: Vec<u64>,
    /// Estimates of `|b_0| .. |b_{n-1}|`.
    pub b_est: Vec<LogNumber>,
    /// Edges of the sampled spanning tree in insertion order.
    pub tree: Vec<usize>,
    pub variant: Variant,
}

/// Converts counts of broken-circuit-free subgraphs that contain the smallest
/// edge (`a_i` counts those with `i + 1` edges) into the Whitney magnitudes
/// `b_0 = a_0`, `b_i = a_{i-1} + a_i`, `b_{n-1} = a_{n-2}`.
pub fn a_to_b(a: &[LogNumber], n: usize) -> Result<Vec<LogNumber>> {
    if n < 2 || a.len() != n - 1 {
        return Err(Error::LengthMismatch { expected: n.saturating_sub(1), found: a.len() });
    }
    let mut b = Vec::with_capacity(n);
    b.push(a[0]);
    for i in 1..n - 1 {
        b.push(a[i - 1] + a[i]);
    }
    b.push(a[n - 2]);
    Ok(b)
}

/// Reusable per-worker sampler state.
pub struct BcSampler<'g> {
    g: &'g Graph,
    eo: &'g EdgeOrdering,
    variant: Variant,
    state: ForestState,
    buf: Vec<usize>,
    ln_int: Vec<f64>,
}

impl<'g> BcSampler<'g> {
    /// Fails on an empty or disconnected graph or an ordering of the wrong
    /// length.
    pub fn new(g: &'g Graph, eo: &'g EdgeOrdering, variant: Variant) -> Result<Self> {
        if g.order() == 0 {
            return Err(Error::InvalidArgument("graph has no vertices".into()));
        }
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        if eo.len() != g.size() {
            return Err(Error::LengthMismatch { expected: g.size(), found: eo.len() });
        }
        let ln_int = (0..=g.size().max(g.order())).map(|k| (k as f64).ln()).collect();
        Ok(BcSampler { g, eo, variant, state: ForestState::new(g.order()), buf: Vec::new(), ln_int })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn sample(&mut self, rng: &mut SampleRng) -> BcSample {
        self.sample_with(&mut |k| rng.random_range(0..k))
    }

    /// Runs one sample, asking `choose(k)` for an index in `0..k` whenever an
    /// admissible edge must be picked (candidates ordered smallest first).
    pub fn sample_with(&mut self, choose: &mut dyn FnMut(usize) -> usize) -> BcSample {
        let n = self.g.order();
        self.state.reset();
        if n == 1 {
            return BcSample { levels: Vec::new(), b_est: vec![LogNumber::ONE], tree: Vec::new(), variant: self.variant };
        }
        let forced = match self.variant {
            Variant::Plain => None,
            Variant::Improved => self.eo.smallest(),
        };
        if let Some(e) = forced {
            self.state.add(self.g, self.eo, e);
        }
        let stages = n - 1 - usize::from(forced.is_some());
        let mut levels = Vec::with_capacity(stages);
        let mut ln_est = Vec::with_capacity(stages + 1);
        ln_est.push(0.0);
        for i in 1..=stages {
            self.state.admissible_into(self.g, self.eo, &mut self.buf);
            let d = self.buf.len();
            assert!(d > 0, "a broken-circuit-free forest of a connected graph always extends");
            levels.push(d as u64);
            ln_est.push(ln_est[i - 1] + self.ln_int[d] - self.ln_int[i]);
            let pick = choose(d);
            assert!(pick < d, "chooser returned {pick} for {d} candidates");
            let e = self.buf[pick];
            self.state.add(self.g, self.eo, e);
        }
        let est: Vec<LogNumber> = ln_est.into_iter().map(LogNumber::from_ln).collect();
        let b_est = match self.variant {
            Variant::Plain => est,
            Variant::Improved => a_to_b(&est, n).expect("n - 1 estimates"),
        };
        BcSample { levels, b_est, tree: self.state.chosen().to_vec(), variant: self.variant }
    }
}

/// One plain sample.
pub fn bc_sample(g: &Graph, eo: &EdgeOrdering, rng: &mut SampleRng) -> Result<BcSample> {
    Ok(BcSampler::new(g, eo, Variant::Plain)?.sample(rng))
}

/// One sample of the improved variant.
pub fn bc_sample_improved(g: &Graph, eo: &EdgeOrdering, rng: &mut SampleRng) -> Result<BcSample> {
    Ok(BcSampler::new(g, eo, Variant::Improved)?.sample(rng))
}
