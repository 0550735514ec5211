//! Isomorphism classes of small graphs.
//!
//! Canonical labels come from individualisation and refinement: colour
//! refinement to an equitable ordered partition, then branching on the first
//! non-trivial cell. The canonical code is the smallest adjacency code over
//! all discrete leaves.

use std::collections::HashSet;

use super::{bit, bits, Graph};
use crate::error::{Error, Result};

/// Largest order for which the full class list is generated.
pub const MAX_ENUMERATION_ORDER: usize = 9;

/// Pair codes use one bit per vertex pair, so `n(n-1)/2 <= 64`.
const MAX_CODE_ORDER: usize = 11;

/// Canonical adjacency code; isomorphic graphs get equal codes.
pub fn canonical_code(g: &Graph) -> Result<u64> {
    if g.n() > MAX_CODE_ORDER {
        return Err(Error::limit("order for canonical labelling", g.n() as u128, MAX_CODE_ORDER as u128));
    }
    let cells = vec![(0..g.n()).collect::<Vec<_>>()];
    let mut best = u64::MAX;
    search(g, cells, &mut best);
    Ok(best)
}

/// The representative with the canonical labelling.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    let code = canonical_code(g)?;
    Ok(decode(g.n(), code))
}

/// One representative of every isomorphism class of graphs on `n` vertices,
/// each in canonical form, sorted by canonical code.
pub fn nonisomorphic_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(Error::limit("order for class enumeration", n as u128, MAX_ENUMERATION_ORDER as u128));
    }
    let mut layer: Vec<u64> = vec![0];
    for order in 2..=n {
        let mut seen = HashSet::new();
        for &code in &layer {
            let base = decode(order - 1, code);
            for nbrs in 0u128..1 << (order - 1) {
                let mut adj = base.adj.clone();
                adj.push(nbrs);
                for v in bits(nbrs) {
                    adj[v] |= bit(order - 1);
                }
                seen.insert(canonical_code(&Graph::from_masks(order, adj))?);
            }
        }
        layer = seen.into_iter().collect();
    }
    layer.sort_unstable();
    Ok(layer.into_iter().map(|c| decode(n, c)).collect())
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Bit position of pair `(a, b)`, `a < b`, with `(0,1)` most significant.
fn pair_shift(n: usize, a: usize, b: usize) -> usize {
    let index = a * (2 * n - a - 1) / 2 + (b - a - 1);
    pair_count(n) - 1 - index
}

fn decode(n: usize, code: u64) -> Graph {
    let mut adj = vec![0u128; n];
    for a in 0..n {
        for b in a + 1..n {
            if code >> pair_shift(n, a, b) & 1 == 1 {
                adj[a] |= bit(b);
                adj[b] |= bit(a);
            }
        }
    }
    Graph::from_masks(n, adj)
}

fn leaf_code(g: &Graph, cells: &[Vec<usize>]) -> u64 {
    let n = g.n();
    let mut pos = vec![0; n];
    for (p, cell) in cells.iter().enumerate() {
        pos[cell[0]] = p;
    }
    let mut code = 0u64;
    for (i, j) in g.edges() {
        let (a, b) = (pos[i - 1].min(pos[j - 1]), pos[i - 1].max(pos[j - 1]));
        code |= 1 << pair_shift(n, a, b);
    }
    code
}

fn search(g: &Graph, cells: Vec<Vec<usize>>, best: &mut u64) {
    let cells = refine(g, cells);
    match cells.iter().position(|c| c.len() > 1) {
        None => *best = (*best).min(leaf_code(g, &cells)),
        Some(i) => {
            for &v in &cells[i] {
                let mut next = Vec::with_capacity(cells.len() + 1);
                next.extend_from_slice(&cells[..i]);
                next.push(vec![v]);
                next.push(cells[i].iter().copied().filter(|&u| u != v).collect());
                next.extend_from_slice(&cells[i + 1..]);
                search(g, next, best);
            }
        }
    }
}

/// Splits cells by neighbour counts into every cell until stable. Sub-cells
/// are ordered by their count signature, which keeps the result
/// label-independent.
fn refine(g: &Graph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let masks: Vec<u128> = cells
            .iter()
            .map(|c| c.iter().fold(0u128, |m, &v| m | bit(v)))
            .collect();
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let sig = masks.iter().map(|m| (g.adj[v] & m).count_ones()).collect();
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for idx in 1..=keyed.len() {
                if idx == keyed.len() || keyed[idx].0 != keyed[start].0 {
                    next.push(keyed[start..idx].iter().map(|(_, v)| *v).collect());
                    start = idx;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}
