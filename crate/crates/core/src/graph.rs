//! Undirected simple graphs on vertices `1..=n`.
//!
//! Adjacency is stored as one `u128` bitmask per vertex, so graphs are limited
//! to [`MAX_VERTICES`] vertices. That covers every desk-scale experiment here.
//!
//! Random graphs come from [`gen_gnp`]: a ChaCha8 stream seeded with the 64-bit
//! seed, one `next_u64` draw per pair visited in lexicographic order
//! `(1,2), (1,3), ..., (n-1,n)`. The pair is an edge iff the top 53 bits of
//! the draw, scaled to `[0,1)`, are below `p`.

pub mod iso;

use std::fmt::Write as _;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 128;

/// Default vertex limit for the exact maximum independent set solver.
pub const DEFAULT_EXACT_LIMIT: usize = 40;

#[inline]
pub(crate) fn bit(v: usize) -> u128 {
    1u128 << v
}

/// Iterates the (0-based) set bits of a mask in increasing order.
pub(crate) fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    /// `adj[v]` holds the 0-based neighbours of 0-based vertex `v`.
    adj: Vec<u128>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::InvalidParameter(format!(
                "vertex count must lie in 1..={MAX_VERTICES}, got {n}"
            )));
        }
        Ok(Graph {
            n,
            adj: vec![0; n],
        })
    }

    /// Builds a graph from 1-based edges. Rejects loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(i, j) in edges {
            g.check_vertex(i)?;
            g.check_vertex(j)?;
            if i == j {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {i}")));
            }
            if g.has_edge(i, j) {
                return Err(Error::InvalidParameter(format!("duplicate edge {{{i},{j}}}")));
            }
            g.adj[i - 1] |= bit(j - 1);
            g.adj[j - 1] |= bit(i - 1);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        let all = g.all_mask();
        for v in 0..n {
            g.adj[v] = all & !bit(v);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter("a cycle needs at least 3 vertices".into()));
        }
        let edges: Vec<_> = (1..=n).map(|i| (i, i % n + 1)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges)
    }

    pub(crate) fn from_masks(n: usize, adj: Vec<u128>) -> Self {
        debug_assert_eq!(adj.len(), n);
        Graph { n, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub(crate) fn all_mask(&self) -> u128 {
        if self.n == 128 {
            u128::MAX
        } else {
            (1u128 << self.n) - 1
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Panics on out-of-range vertices; see [`Graph::check_vertex`].
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.adj[i - 1] & bit(j - 1) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| {
            bits(self.adj[i] & !((bit(i) << 1).wrapping_sub(1)))
                .map(move |j| (i + 1, j + 1))
        })
    }

    pub fn is_independent_set(&self, s: &[usize]) -> Result<bool> {
        let mut mask = 0u128;
        for &v in s {
            self.check_vertex(v)?;
            mask |= bit(v - 1);
        }
        Ok(self.is_independent_mask(mask))
    }

    pub(crate) fn is_independent_mask(&self, mask: u128) -> bool {
        bits(mask).all(|v| self.adj[v] & mask == 0)
    }

    pub fn complement(&self) -> Graph {
        let all = self.all_mask();
        let adj = (0..self.n).map(|v| !self.adj[v] & all & !bit(v)).collect();
        Graph { n: self.n, adj }
    }

    /// Exact maximum independent set by branch and bound, pruning with
    /// greedy clique-cover bounds (a colouring of the complement).
    pub fn max_independent_set(&self, limit: usize) -> Result<(usize, Vec<usize>)> {
        if self.n > limit {
            return Err(Error::limit("vertex count for exact solver", self.n as u128, limit as u128));
        }
        let mut solver = MisSolver {
            non_adj: self.complement().adj,
            best: Vec::new(),
            current: Vec::new(),
        };
        solver.expand(self.all_mask());
        let mut witness: Vec<usize> = solver.best.iter().map(|v| v + 1).collect();
        witness.sort_unstable();
        Ok((witness.len(), witness))
    }

    /// All independent sets of size at most `max_size`, sorted
    /// lexicographically by their sorted elements (the empty set first).
    pub fn enumerate_independent_sets(&self, max_size: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.collect_independent(0, self.all_mask(), max_size, &mut current, &mut out);
        out
    }

    fn collect_independent(
        &self,
        from: usize,
        allowed: u128,
        max_size: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(current.clone());
        if current.len() == max_size {
            return;
        }
        for v in from..self.n {
            if allowed & bit(v) == 0 {
                continue;
            }
            current.push(v + 1);
            self.collect_independent(v + 1, allowed & !self.adj[v] & !bit(v), max_size, current, out);
            current.pop();
        }
    }

    /// Whether a proper colouring with at most `k` colours exists.
    pub fn is_colorable(&self, k: usize, limit: usize) -> Result<bool> {
        if self.n > limit {
            return Err(Error::limit("vertex count for exact colouring", self.n as u128, limit as u128));
        }
        if k >= self.n {
            return Ok(true);
        }
        if k == 0 {
            return Ok(false);
        }
        // Colour vertices in order of decreasing degree; colour c may only be
        // opened after colours 0..c are in use.
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.adj[v].count_ones()));
        let mut colour = vec![usize::MAX; self.n];
        Ok(self.colour_from(&order, 0, k, 0, &mut colour))
    }

    fn colour_from(&self, order: &[usize], pos: usize, k: usize, used: usize, colour: &mut [usize]) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        for c in 0..k.min(used + 1) {
            if bits(self.adj[v]).any(|u| colour[u] == c) {
                continue;
            }
            colour[v] = c;
            if self.colour_from(order, pos + 1, k, used.max(c + 1), colour) {
                return true;
            }
        }
        colour[v] = usize::MAX;
        false
    }

    pub fn chromatic_number(&self, limit: usize) -> Result<usize> {
        for k in 1..=self.n {
            if self.is_colorable(k, limit)? {
                return Ok(k);
            }
        }
        Ok(self.n)
    }

    /// Order-independent SHA-256 digest of `n` and the sorted edge set.
    pub fn graph_hash(&self) -> String {
        let mut text = format!("n={};", self.n);
        for (i, j) in self.edges() {
            let _ = write!(text, "{i}-{j};");
        }
        hex::encode(Sha256::digest(text.as_bytes()))
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.num_edges());
        for (i, j) in self.edges() {
            let _ = writeln!(out, "{i} {j}");
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing `n m` header".into()))?;
        let (n, m) = parse_pair(header)?;
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            let (i, j) = parse_pair(line)?;
            if i >= j {
                return Err(Error::Parse(format!("edge `{line}` must satisfy i < j")));
            }
            edges.push((i, j));
        }
        if edges.len() != m {
            return Err(Error::Parse(format!("header promises {m} edges, found {}", edges.len())));
        }
        Graph::from_edges(n, &edges)
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let bad = || Error::Parse(format!("expected two integers, got `{line}`"));
    let a = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let b = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if it.next().is_some() {
        return Err(bad());
    }
    Ok((a, b))
}

/// Samples G(n, p); see the module docs for the exact stream layout.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("edge probability {p} outside [0,1]")));
    }
    gen_gnp_with(n, p, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// [`gen_gnp`] drawing from a caller-supplied stream.
pub fn gen_gnp_with<R: RngCore>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("edge probability {p} outside [0,1]")));
    }
    let mut g = Graph::empty(n)?;
    for i in 0..n {
        for j in i + 1..n {
            let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            if u < p {
                g.adj[i] |= bit(j);
                g.adj[j] |= bit(i);
            }
        }
    }
    Ok(g)
}

struct MisSolver {
    non_adj: Vec<u128>,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl MisSolver {
    /// Vertices of `cand` ordered by greedy clique-cover class, with the
    /// running class count as the bound for each prefix.
    fn cover_order(&self, mut cand: u128) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(cand.count_ones() as usize);
        let mut bounds = Vec::with_capacity(order.capacity());
        let mut class = 0;
        while cand != 0 {
            class += 1;
            // Build one clique of the graph: each new vertex must be adjacent
            // (i.e. non-adjacent in the complement) to all previous ones.
            let mut q = cand;
            while q != 0 {
                let v = q.trailing_zeros() as usize;
                q &= !bit(v) & !self.non_adj[v];
                cand &= !bit(v);
                order.push(v);
                bounds.push(class);
            }
        }
        (order, bounds)
    }

    fn expand(&mut self, mut cand: u128) {
        let (order, bounds) = self.cover_order(cand);
        for idx in (0..order.len()).rev() {
            if self.current.len() + bounds[idx] <= self.best.len() {
                return;
            }
            let v = order[idx];
            self.current.push(v);
            let next = cand & self.non_adj[v];
            if next == 0 {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            cand &= !bit(v);
        }
    }
}
