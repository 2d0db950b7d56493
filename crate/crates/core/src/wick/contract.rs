//! Index contraction of a single pairing.
//!
//! Every insertion at global position `v` carries a row index; its column
//! index is the row index of the following insertion in the same trace, so
//! one index variable lives on each position. A propagator
//! `<X_{ij} X†_{kl}> = (σ²/N) δ_{il} W_{jk}` between X at `p` and X† at `q`
//! merges variable `p` with variable `next(q)` and lays one `W` from
//! variable `next(p)` to variable `q`.
//!
//! After merging, a class without any `W` end is a closed Kronecker loop and
//! contributes a free sum, one factor of `N`. Every other class has exactly
//! one outgoing and one incoming `W`; following them traces out cycles, and a
//! cycle of length `j` is `Tr W^j`.

use alloc::vec;
use alloc::vec::Vec;

use super::{Diagram, Pairing};

/// Trace structure of one contracted pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Contraction {
    /// Closed Kronecker loops (free index sums).
    pub delta_loops: usize,
    /// Lengths of the `W` cycles, unsorted.
    pub w_cycles: Vec<u32>,
}

pub(crate) fn contract_indices(diagram: &Diagram, pairing: &Pairing) -> Contraction {
    let n = diagram.total_insertions();
    let mut uf = UnionFind::new(n);
    for &(x, d) in pairing.pairs() {
        uf.union(x, diagram.next(d));
    }
    // W edge from class(next(x)) to class(d).
    let mut succ = vec![usize::MAX; n];
    let mut has_w = vec![false; n];
    for &(x, d) in pairing.pairs() {
        let from = uf.find(diagram.next(x));
        let to = uf.find(d);
        debug_assert_eq!(succ[from], usize::MAX, "two outgoing W ends on one class");
        succ[from] = to;
        has_w[from] = true;
        has_w[to] = true;
    }
    let mut classes = 0;
    let mut w_classes = 0;
    for (v, &w) in has_w.iter().enumerate() {
        if uf.find(v) == v {
            classes += 1;
            if w {
                w_classes += 1;
            }
        }
    }
    let mut visited = vec![false; n];
    let mut w_cycles = Vec::new();
    for start in 0..n {
        if succ[start] == usize::MAX || visited[start] {
            continue;
        }
        let mut len = 0u32;
        let mut v = start;
        while !visited[v] {
            visited[v] = true;
            len += 1;
            v = succ[v];
        }
        debug_assert_eq!(v, start, "W ends do not close into cycles");
        w_cycles.push(len);
    }
    Contraction {
        delta_loops: classes - w_classes,
        w_cycles,
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Keep the smaller index as root so roots are deterministic.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
