//! Two-dimensional Weisfeiler–Leman refinement and coherent closure.

use std::collections::HashMap;

use crate::color::{Color, ColorGraph};

/// Color counts observed during a closure run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinementTrace {
    /// Refinement rounds performed, the last one being the stable round.
    pub rounds: usize,
    /// `history[0]` is the input rank, `history[i]` the rank after round `i`.
    pub history: Vec<usize>,
}

/// One refinement round. The new color of `(x, y)` is determined by its old color, the
/// old color of `(y, x)`, whether `x = y`, and the multiset of `(c(x,z), c(z,y))` over all `z`.
/// Colors are numbered by first occurrence in a row-major scan.
pub fn refine_once(cg: &ColorGraph) -> ColorGraph {
    let n = cg.n();
    let r = cg.rank() as u64;
    let cells = cg.cells();
    let mut cols = vec![0 as Color; n * n];
    for x in 0..n {
        for y in 0..n {
            cols[y * n + x] = cells[x * n + y];
        }
    }
    let mut ids: HashMap<Vec<u64>, Color> = HashMap::new();
    let mut out = Vec::with_capacity(n * n);
    let mut buf: Vec<u64> = Vec::with_capacity(n + 3);
    for x in 0..n {
        let row = &cells[x * n..(x + 1) * n];
        for y in 0..n {
            let col = &cols[y * n..(y + 1) * n];
            buf.clear();
            buf.extend(row.iter().zip(col).map(|(&a, &b)| a as u64 * r + b as u64));
            buf.sort_unstable();
            buf.push(cells[x * n + y] as u64);
            buf.push(cells[y * n + x] as u64);
            buf.push((x == y) as u64);
            let c = match ids.get(buf.as_slice()) {
                Some(&c) => c,
                None => {
                    let c = ids.len() as Color;
                    ids.insert(buf.clone(), c);
                    c
                }
            };
            out.push(c);
        }
    }
    ColorGraph::new(n, ids.len(), out).expect("every interned color occurs")
}

/// Coarsest coherent refinement of `cg`, numbered by first row-major occurrence.
pub fn wl_closure(cg: &ColorGraph) -> (ColorGraph, RefinementTrace) {
    let mut cur = cg.renumbered();
    let mut history = vec![cur.rank()];
    loop {
        let next = refine_once(&cur);
        history.push(next.rank());
        if next.rank() == cur.rank() {
            let rounds = history.len() - 1;
            return (next, RefinementTrace { rounds, history });
        }
        cur = next;
    }
}

/// Coherent closure of the graph colored by diagonal, `arcs`, and the remaining pairs.
pub fn coherent_closure_of_arcset(n: usize, arcs: &[(usize, usize)]) -> ColorGraph {
    let mut adj = vec![false; n * n];
    for &(x, y) in arcs {
        adj[x * n + y] = true;
    }
    let start = ColorGraph::from_keys(n, |x, y| if x == y { 0u8 } else if adj[x * n + y] { 1 } else { 2 });
    wl_closure(&start).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::compute_tensor;

    #[test]
    fn complete_graph_is_stable() {
        let g = ColorGraph::from_keys(4, |x, y| x == y);
        let (c, trace) = wl_closure(&g);
        assert_eq!(c.rank(), 2);
        assert_eq!(trace.history, vec![2, 2]);
    }

    #[test]
    fn path_refines_to_coherent() {
        let arcs: Vec<_> = (0..4).flat_map(|i| [(i, i + 1), (i + 1, i)]).collect();
        let c = coherent_closure_of_arcset(5, &arcs);
        assert!(compute_tensor(&c).is_ok());
        // endpoints, their neighbours and the middle vertex separate
        assert_eq!(c.diagonal_colors().len(), 3);
    }

    #[test]
    fn empty_arcset() {
        assert_eq!(coherent_closure_of_arcset(6, &[]).rank(), 2);
    }
}
