use alloc::vec;
use alloc::vec::Vec;

use super::Diagram;
use crate::word::{Letter, Word};

/// A perfect matching of the X insertions of a diagram onto its X†
/// insertions, as `(x, x†)` global-index pairs sorted by the X index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pairing {
    pairs: Vec<(usize, usize)>,
}

impl Pairing {
    /// Checks that `pairs` is a bijection between the X and X† insertions of
    /// `diagram`.
    pub fn new(diagram: &Diagram, mut pairs: Vec<(usize, usize)>) -> Option<Self> {
        pairs.sort_unstable();
        let n = diagram.total_insertions();
        let mut seen = vec![false; n];
        for &(x, d) in &pairs {
            if x >= n
                || d >= n
                || diagram.letter(x) != Letter::X
                || diagram.letter(d) != Letter::XDag
            {
                return None;
            }
            if seen[x] || seen[d] {
                return None;
            }
            seen[x] = true;
            seen[d] = true;
        }
        seen.iter().all(|&s| s).then_some(Self { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Number of propagators.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn partner(&self, global: usize) -> Option<usize> {
        self.pairs.iter().find_map(|&(x, d)| {
            if x == global {
                Some(d)
            } else if d == global {
                Some(x)
            } else {
                None
            }
        })
    }
}

/// Visits all `m!` pairings of a balanced diagram in lexicographic order:
/// X insertions in increasing global index, each taking the smallest
/// still-free X† first. Unbalanced diagrams have no pairings.
pub fn for_each_pairing(diagram: &Diagram, mut visit: impl FnMut(&Pairing)) {
    let xs = diagram.positions_of(Letter::X);
    let ds = diagram.positions_of(Letter::XDag);
    if xs.len() != ds.len() {
        return;
    }
    let mut used = vec![false; ds.len()];
    let mut current = Pairing {
        pairs: Vec::with_capacity(xs.len()),
    };
    assign(&xs, &ds, &mut used, &mut current, &mut visit);
}

fn assign(
    xs: &[usize],
    ds: &[usize],
    used: &mut [bool],
    current: &mut Pairing,
    visit: &mut impl FnMut(&Pairing),
) {
    let i = current.pairs.len();
    if i == xs.len() {
        visit(current);
        return;
    }
    for j in 0..ds.len() {
        if used[j] {
            continue;
        }
        used[j] = true;
        current.pairs.push((xs[i], ds[j]));
        assign(xs, ds, used, current, visit);
        current.pairs.pop();
        used[j] = false;
    }
}

/// All pairings of a diagram; see [`for_each_pairing`] for the order.
pub fn enumerate_pairings(diagram: &Diagram) -> Vec<Pairing> {
    let mut out = Vec::new();
    for_each_pairing(diagram, |p| out.push(p.clone()));
    out
}

/// Visits only the non-crossing pairings of a single trace word (Catalan-many
/// for `(X X†)^m`). Positions are word offsets, which coincide with global
/// indices of [`Diagram::single`].
pub fn for_each_noncrossing_pairing(word: &Word, mut visit: impl FnMut(&Pairing)) {
    if !word.is_balanced() {
        return;
    }
    let letters = word.letters();
    let mut pairs = Vec::with_capacity(letters.len() / 2);
    let mut pending = Vec::new();
    if !letters.is_empty() {
        pending.push((0usize, letters.len()));
    }
    noncrossing(letters, &mut pending, &mut pairs, &mut visit);
}

// Every call leaves `pending` and `pairs` as it found them.
fn noncrossing(
    letters: &[Letter],
    pending: &mut Vec<(usize, usize)>,
    pairs: &mut Vec<(usize, usize)>,
    visit: &mut impl FnMut(&Pairing),
) {
    let Some((lo, hi)) = pending.pop() else {
        let mut sorted = pairs.clone();
        sorted.sort_unstable();
        visit(&Pairing { pairs: sorted });
        return;
    };
    // `lo` is matched to some `j` with the opposite letter such that the
    // open interval (lo, j) is balanced; the remainder (j, hi) then is too.
    let mut excess: i64 = 0;
    for j in lo + 1..hi {
        if letters[j] != letters[lo] && excess == 0 {
            let pair = if letters[lo] == Letter::X {
                (lo, j)
            } else {
                (j, lo)
            };
            pairs.push(pair);
            let before = pending.len();
            if j + 1 < hi {
                pending.push((j + 1, hi));
            }
            if lo + 1 < j {
                pending.push((lo + 1, j));
            }
            noncrossing(letters, pending, pairs, visit);
            pending.truncate(before);
            pairs.pop();
        }
        excess += if letters[j] == Letter::X { 1 } else { -1 };
    }
    pending.push((lo, hi));
}
