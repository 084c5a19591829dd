//! Independent oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use chromest_core::graph::{gen_er, gen_named, EdgeOrdering, Family, Graph};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_u(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

/// One root-to-leaf path of a sampler's decision tree.
pub struct PathOutcome<T> {
    pub probability: BigRational,
    pub choices: Vec<usize>,
    pub branching: Vec<usize>,
    pub value: T,
}

/// Enumerates every root-to-leaf path of a sampler by replaying it with
/// scripted choices. `run` receives the chooser; each call `choose(k)` is one
/// uniform decision among `k` children.
pub fn enumerate_paths<T>(mut run: impl FnMut(&mut dyn FnMut(usize) -> usize) -> T) -> Vec<PathOutcome<T>> {
    let mut out = Vec::new();
    let mut prefix: Vec<usize> = Vec::new();
    loop {
        let mut branching = Vec::new();
        let mut choices = Vec::new();
        let value = run(&mut |k| {
            let c = prefix.get(choices.len()).copied().unwrap_or(0);
            assert!(c < k);
            branching.push(k);
            choices.push(c);
            c
        });
        let probability = branching
            .iter()
            .fold(BigRational::one(), |p, &k| p / BigRational::from_integer(BigInt::from(k)));
        out.push(PathOutcome { probability, choices: choices.clone(), branching: branching.clone(), value });
        // Odometer step on the deepest position that still has siblings.
        let mut next = choices;
        while let Some(last) = next.pop() {
            let depth = next.len();
            if last + 1 < branching[depth] {
                next.push(last + 1);
                break;
            }
        }
        if next.is_empty() {
            break;
        }
        prefix = next;
    }
    out
}

/// Counts partitions of the vertex set into exactly `t` independent sets,
/// indexed by `t` (entry 0 unused), by restricted-growth enumeration.
pub fn independent_partition_counts(g: &Graph) -> Vec<BigUint> {
    let n = g.order();
    let mut counts = vec![BigUint::zero(); n + 1];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn go(g: &Graph, v: usize, blocks: &mut Vec<Vec<usize>>, counts: &mut [BigUint]) {
        if v == g.order() {
            counts[blocks.len()] += 1u32;
            return;
        }
        for b in 0..blocks.len() {
            if blocks[b].iter().all(|&w| !g.has_edge(v, w)) {
                blocks[b].push(v);
                go(g, v + 1, blocks, counts);
                blocks[b].pop();
            }
        }
        blocks.push(vec![v]);
        go(g, v + 1, blocks, counts);
        blocks.pop();
    }
    go(g, 0, &mut blocks, &mut counts);
    counts
}

pub fn chromatic_number(g: &Graph) -> usize {
    independent_partition_counts(g).iter().position(|c| !c.is_zero()).unwrap_or(0)
}

/// Number of distinct merge sequences from singletons to `partition`
/// (blocks as vertex bitmasks), by recursive splitting.
pub fn refinement_paths(partition: &[u32]) -> BigUint {
    fn go(p: &mut Vec<u32>, memo: &mut HashMap<Vec<u32>, BigUint>) -> BigUint {
        let mut key = p.clone();
        key.sort_unstable();
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        let mut any = false;
        for i in 0..p.len() {
            let block = p[i];
            if block.count_ones() < 2 {
                continue;
            }
            any = true;
            // Unordered splits {s, block - s}: require the lowest bit in s.
            let low = block & block.wrapping_neg();
            let rest = block & !low;
            let mut sub = rest;
            loop {
                let s = low | sub;
                if s != block {
                    p[i] = s;
                    p.push(block & !s);
                    total += go(p, memo);
                    p.pop();
                    p[i] = block;
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
        if !any {
            total = BigUint::one();
        }
        memo.insert(key, total.clone());
        total
    }
    go(&mut partition.to_vec(), &mut HashMap::new())
}

/// All circuits of `g` as edge bitmasks (requires `m <= 64`).
pub fn circuits(g: &Graph) -> Vec<u64> {
    assert!(g.size() <= 64);
    let n = g.order();
    let mut found = HashSet::new();
    for start in 0..n {
        let mut stack = vec![(start, 0u64, 1u64 << start)];
        while let Some((v, edges, visited)) = stack.pop() {
            for &w in g.neighbors(v) {
                let e = g.edge_index(v, w).unwrap();
                if edges & (1 << e) != 0 {
                    continue;
                }
                if w == start && edges.count_ones() >= 2 {
                    found.insert(edges | (1 << e));
                } else if w > start && visited & (1 << w) == 0 {
                    stack.push((w, edges | (1 << e), visited | (1 << w)));
                }
            }
        }
    }
    found.into_iter().collect()
}

/// Broken circuits (circuit minus its smallest edge) under `eo`.
pub fn broken_circuits(g: &Graph, eo: &EdgeOrdering) -> Vec<u64> {
    circuits(g)
        .into_iter()
        .map(|c| {
            let min = (0..g.size()).filter(|&e| c & (1 << e) != 0).min_by_key(|&e| eo.rank(e)).unwrap();
            c & !(1 << min)
        })
        .collect()
}

pub fn is_spanning_tree(g: &Graph, edges: &[usize]) -> bool {
    if edges.len() + 1 != g.order() {
        return false;
    }
    let sub = Graph::new(g.order(), edges.iter().map(|&e| g.edge(e))).unwrap();
    sub.is_connected()
}

pub fn mask(edges: &[usize]) -> u64 {
    edges.iter().fold(0, |m, &e| m | (1 << e))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Connected Erdős–Rényi graphs with `lo..=hi` vertices.
pub fn random_graphs(count: usize, lo: usize, hi: usize, seed: u64) -> Vec<Graph> {
    (0..count)
        .map(|i| {
            let n = lo + i % (hi - lo + 1);
            let p = 0.35 + 0.1 * (i % 5) as f64;
            gen_er(n, p, seed.wrapping_add(i as u64)).unwrap()
        })
        .collect()
}

pub fn named_suite() -> Vec<(String, Graph)> {
    let mut c6_chord = gen_named(&Family::Cycle(6)).unwrap().edges().to_vec();
    c6_chord.push((0, 3));
    vec![
        ("kite".into(), gen_named(&Family::Kite).unwrap()),
        ("C5".into(), gen_named(&Family::Cycle(5)).unwrap()),
        ("W6".into(), gen_named(&Family::Wheel(6)).unwrap()),
        ("K5".into(), gen_named(&Family::Complete(5)).unwrap()),
        ("P6".into(), gen_named(&Family::Path(6)).unwrap()),
        ("C6+chord".into(), Graph::new(6, c6_chord).unwrap()),
    ]
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap()
}

/// Exact Whitney magnitudes implied by one sampled path's level counts.
pub fn exact_bc_from_levels(levels: &[u64], n: usize, improved: bool) -> Vec<BigRational> {
    let mut est = vec![BigRational::one()];
    for (i, &d) in levels.iter().enumerate() {
        let next = est[i].clone() * BigRational::from_integer(BigInt::from(d)) / BigRational::from_integer(BigInt::from(i + 1));
        est.push(next);
    }
    if !improved || n < 2 {
        return est;
    }
    let mut b = vec![est[0].clone()];
    for i in 1..n - 1 {
        b.push(est[i - 1].clone() + est[i].clone());
    }
    b.push(est[n - 2].clone());
    b
}

/// Exact falling-factorial estimates `p_n .. p_1` for one scripted path,
/// replayed through the block bookkeeping with exact duplicate counts.
pub fn exact_ff_from_choices(g: &Graph, choices: &[usize]) -> Vec<BigRational> {
    use chromest_core::ff::{duplicate_count_exact, BlockMatrix};
    let n = g.order();
    let mut p = vec![BigRational::zero(); n];
    p[0] = BigRational::one();
    let mut blocks = BlockMatrix::new(g);
    let mut product = BigInt::one();
    for (i, &pick) in choices.iter().enumerate() {
        product *= BigInt::from(blocks.mergeable_pairs());
        let (r, s) = blocks.nth_mergeable(pick).unwrap();
        blocks.merge(r, s);
        let f = duplicate_count_exact(blocks.sizes(), n).unwrap();
        p[i + 1] = BigRational::new(product.clone(), BigInt::from(f));
    }
    p
}

/// Expectation over an enumerated decision tree.
pub fn expectation(outcomes: &[(BigRational, Vec<BigRational>)]) -> Vec<BigRational> {
    let width = outcomes.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut mean = vec![BigRational::zero(); width];
    for (prob, v) in outcomes {
        for (m, x) in mean.iter_mut().zip(v) {
            *m += prob.clone() * x.clone();
        }
    }
    mean
}
