//! Exact finite-`N` multi-trace moments of the square complex Wishart
//! ensemble `P(W) ∝ e^{-N Tr W}`.
//!
//! `W = A A†` with `A` an `N×N` Ginibre matrix of variance `1/N`, so
//! `<Tr W^{m_1} ⋯ Tr W^{m_k}>` is the multi-loop diagram
//! `[(A A†)^{m_1}, ..., (A A†)^{m_k}]` contracted with an identity spectator.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::combinatorics::Partition;
use crate::laurent::Laurent;
use crate::wick::{diagram_moment_poly, Diagram};
use crate::word::Word;
use crate::{CapacityError, Limits};

/// `<Tr W^{m_1} ⋯ Tr W^{m_k}>` exactly in `N` (not normalised).
///
/// The empty partition is the empty product, `1`.
pub fn wishart_multitrace(p: &Partition, limits: &Limits) -> Result<Laurent, CapacityError> {
    let weight = p.weight() as usize;
    if weight > limits.max_weight {
        return Err(CapacityError {
            weight,
            cap: limits.max_weight,
        });
    }
    if p.is_empty() {
        return Ok(Laurent::one());
    }
    let loops: Vec<Word> = p
        .parts()
        .iter()
        .map(|&m| Word::alternating(m as usize))
        .collect();
    let diagram = Diagram::new(loops).expect("parts are positive");
    let normalised = diagram_moment_poly(&diagram).substitute_identity();
    Ok(normalised.shift(p.len() as i32))
}

/// Memo of [`wishart_multitrace`] keyed by partition.
///
/// Not shared: each worker owns its table, and since values are exact the
/// tables agree wherever they overlap.
#[derive(Debug, Clone, Default)]
pub struct WishartTable {
    limits: Limits,
    memo: BTreeMap<Partition, Laurent>,
}

impl WishartTable {
    pub fn new(limits: Limits) -> Self {
        Self {
            limits,
            memo: BTreeMap::new(),
        }
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn get(&mut self, p: &Partition) -> Result<Laurent, CapacityError> {
        if let Some(v) = self.memo.get(p) {
            return Ok(v.clone());
        }
        let v = wishart_multitrace(p, &self.limits)?;
        self.memo.insert(p.clone(), v.clone());
        Ok(v)
    }

    /// Number of cached partitions.
    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedFormUnsupported {
    pub weight: u32,
}

impl fmt::Display for ClosedFormUnsupported {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "closed-form Wishart components exist only up to weight 3 (got {})",
            self.weight
        )
    }
}

// Component formulas <W_{i j}>, <W_{i j} W_{k l}>, <W_{i j} W_{k l} W_{p q}>.
// Slots are numbered i=0, j=1, k=2, l=3, p=4, q=5; each term is
// (power of 1/N, Kronecker pairs).
type Term = (i32, &'static [(usize, usize)]);

const ONE_POINT: &[Term] = &[(0, &[(0, 1)])];

const TWO_POINT: &[Term] = &[(0, &[(0, 1), (2, 3)]), (1, &[(0, 3), (2, 1)])];

const THREE_POINT: &[Term] = &[
    (0, &[(4, 5), (2, 3), (0, 1)]),
    (1, &[(4, 5), (0, 3), (2, 1)]),
    (1, &[(2, 5), (4, 3), (0, 1)]),
    (1, &[(2, 3), (0, 5), (4, 1)]),
    (2, &[(0, 5), (4, 3), (2, 1)]),
    (2, &[(0, 3), (2, 5), (4, 1)]),
];

/// The same quantity as [`wishart_multitrace`] for weight at most 3, by
/// summing the explicit component formulas over trace indices.
pub fn wishart_low_moments_closed_form(p: &Partition) -> Result<Laurent, ClosedFormUnsupported> {
    let weight = p.weight();
    let terms = match weight {
        0 => return Ok(Laurent::one()),
        1 => ONE_POINT,
        2 => TWO_POINT,
        3 => THREE_POINT,
        _ => return Err(ClosedFormUnsupported { weight }),
    };
    // Tr W^{m_1} Tr W^{m_2} ... identifies the column of each factor with
    // the row of the next one in the same trace.
    let mut trace_links = Vec::new();
    let mut factor = 0usize;
    for &m in p.parts() {
        let m = m as usize;
        for a in 0..m {
            let next = factor + (a + 1) % m;
            trace_links.push((2 * (factor + a) + 1, 2 * next));
        }
        factor += m;
    }
    let slots = 2 * weight as usize;
    let mut out = Laurent::zero();
    for &(inv_power, deltas) in terms {
        let mut parent: Vec<usize> = (0..slots).collect();
        for &(a, b) in trace_links.iter().chain(deltas) {
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            parent[ra] = rb;
        }
        let classes = (0..slots).filter(|&v| root(&mut parent, v) == v).count() as i32;
        out += &Laurent::n_pow(classes - inv_power);
    }
    Ok(out)
}

fn root(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        v = parent[v];
    }
    v
}
