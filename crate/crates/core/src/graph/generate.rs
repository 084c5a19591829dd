use rand::Rng;

use super::Graph;
use crate::error::{Error, Result};
use crate::rng::substream;

/// Bound on redraws in [`gen_er`] before giving up on connectivity.
pub const ER_MAX_ATTEMPTS: u32 = 1000;

/// Named graph families. Sizes count all vertices (a wheel's includes the hub).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// The 4-vertex, 5-edge kite `v1..v4 = 0..3` with edges in the order
    /// `v1v3, v1v2, v1v4, v2v3, v3v4`.
    Kite,
    Cycle(usize),
    Path(usize),
    /// Hub 0 joined to a rim cycle on `1..n`.
    Wheel(usize),
    Complete(usize),
    /// Star with center 0.
    TreeStar(usize),
    Grid3d(usize, usize, usize),
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Kite => "kite",
            Family::Cycle(_) => "cycle",
            Family::Path(_) => "path",
            Family::Wheel(_) => "wheel",
            Family::Complete(_) => "complete",
            Family::TreeStar(_) => "tree_star",
            Family::Grid3d(..) => "grid3d",
        }
    }
}

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidArgument(what.to_string()))
    }
}

/// Builds the canonical member of a named family.
pub fn gen_named(family: &Family) -> Result<Graph> {
    let edges: Vec<(usize, usize)>;
    let n = match *family {
        Family::Kite => {
            edges = vec![(0, 2), (0, 1), (0, 3), (1, 2), (2, 3)];
            4
        }
        Family::Cycle(n) => {
            require(n >= 3, "cycle needs n >= 3")?;
            edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
            n
        }
        Family::Path(n) => {
            require(n >= 1, "path needs n >= 1")?;
            edges = (1..n).map(|i| (i - 1, i)).collect();
            n
        }
        Family::Wheel(n) => {
            require(n >= 4, "wheel needs n >= 4 (hub included)")?;
            let rim = n - 1;
            edges = (1..n)
                .map(|i| (0, i))
                .chain((0..rim).map(|i| (1 + i, 1 + (i + 1) % rim)))
                .collect();
            n
        }
        Family::Complete(n) => {
            require(n >= 1, "complete graph needs n >= 1")?;
            edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            n
        }
        Family::TreeStar(n) => {
            require(n >= 1, "star needs n >= 1")?;
            edges = (1..n).map(|i| (0, i)).collect();
            n
        }
        Family::Grid3d(a, b, c) => {
            require(a >= 1 && b >= 1 && c >= 1, "grid dimensions must be >= 1")?;
            let id = |x: usize, y: usize, z: usize| (x * b + y) * c + z;
            let mut list = Vec::new();
            for x in 0..a {
                for y in 0..b {
                    for z in 0..c {
                        if x + 1 < a {
                            list.push((id(x, y, z), id(x + 1, y, z)));
                        }
                        if y + 1 < b {
                            list.push((id(x, y, z), id(x, y + 1, z)));
                        }
                        if z + 1 < c {
                            list.push((id(x, y, z), id(x, y, z + 1)));
                        }
                    }
                }
            }
            edges = list;
            a * b * c
        }
    };
    Graph::new(n, edges)
}

/// Erdős–Rényi `G(n, p)` conditioned on connectivity.
///
/// Attempt `a` draws every pair `u < v` (lexicographic order) from substream
/// `a` of `seed`; the first connected draw is returned.
pub fn gen_er(n: usize, p: f64, seed: u64) -> Result<Graph> {
    require(n >= 1, "G(n, p) needs n >= 1")?;
    require((0.0..=1.0).contains(&p), "edge probability must lie in [0, 1]")?;
    for attempt in 0..ER_MAX_ATTEMPTS {
        let mut rng = substream(seed, u64::from(attempt));
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new(n, edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::GenerationFailed { attempts: ER_MAX_ATTEMPTS })
}
