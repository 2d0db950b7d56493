//! Wick contraction with a spectator variance matrix.
//!
//! The propagator is `<X_{ij} X†_{kl}> = (σ²/N) δ_{il} W_{jk}`. Summing over
//! all pairings of the insertions of a trace word gives the moment
//! `(1/N)<Tr O(X W^{1/2}, W^{1/2} X†)>` exactly in `N` as a
//! [`TracePolynomial`] in the traces `Tr W^j`. For a diagram with `L` trace
//! loops the normalisation is `1/N^L`, so a single pairing contributes
//! `σ^{2m} N^{loops - m - L} Π_a Tr W^{m_a}`.

mod contract;
mod diagram;
mod pairing;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use diagram::{Diagram, DiagramError, Position};
pub use pairing::{enumerate_pairings, for_each_noncrossing_pairing, for_each_pairing, Pairing};

use crate::combinatorics::Partition;
use crate::laurent::Laurent;
use crate::word::{Letter, Word};
use contract::{contract_indices, Contraction};

/// `coeff · N^{n_power} · Π_a Tr W^{m_a}` for the parts `m_a` of `partition`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceMonomial {
    pub partition: Partition,
    pub n_power: i32,
    pub coeff: BigRational,
}

/// Exact polynomial in `{Tr W^j}` and `N^{±1}`, times `σ^{sigma_power}`.
///
/// Terms are kept sorted by `(partition, n_power)` with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TracePolynomial {
    sigma_power: u32,
    terms: BTreeMap<(Partition, i32), BigRational>,
}

impl TracePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn with_sigma_power(sigma_power: u32) -> Self {
        Self {
            sigma_power,
            terms: BTreeMap::new(),
        }
    }

    pub fn sigma_power(&self) -> u32 {
        self.sigma_power
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_monomial(&mut self, monomial: TraceMonomial) {
        let key = (monomial.partition, monomial.n_power);
        let slot = self
            .terms
            .entry(key.clone())
            .or_insert_with(BigRational::zero);
        *slot += monomial.coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coefficient(&self, partition: &Partition, n_power: i32) -> BigRational {
        self.terms
            .get(&(partition.clone(), n_power))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = TraceMonomial> + '_ {
        self.terms
            .iter()
            .map(|((partition, n_power), coeff)| TraceMonomial {
                partition: partition.clone(),
                n_power: *n_power,
                coeff: coeff.clone(),
            })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Replaces every `Π_a Tr W^{m_a}` by `f(partition)`; the result is the
    /// coefficient of `σ^{sigma_power}`.
    pub fn try_substitute<E>(
        &self,
        mut f: impl FnMut(&Partition) -> Result<Laurent, E>,
    ) -> Result<Laurent, E> {
        let mut out = Laurent::zero();
        for ((partition, n_power), coeff) in &self.terms {
            let traces = f(partition)?;
            out += &traces.shift(*n_power).scale(coeff);
        }
        Ok(out)
    }

    /// `W = 1`, i.e. `Tr W^j = N`: the plain Ginibre moment.
    pub fn substitute_identity(&self) -> Laurent {
        let identity: Result<Laurent, core::convert::Infallible> =
            self.try_substitute(|p| Ok(Laurent::n_pow(p.len() as i32)));
        match identity {
            Ok(l) => l,
            Err(never) => match never {},
        }
    }

    /// Terms at the planar order `N^{-k}` for a partition with `k` parts.
    pub fn leading_coefficients(&self) -> BTreeMap<Partition, BigRational> {
        self.terms
            .iter()
            .filter(|((p, e), _)| *e == -(p.len() as i32))
            .map(|((p, _), c)| (p.clone(), c.clone()))
            .collect()
    }
}

/// `σ^6·((Tr W)^3/N^3 + 3·Tr W Tr W^2/N^2 + ...)`-style rendering.
impl fmt::Display for TracePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        write!(f, "\u{3c3}^{}\u{b7}(", self.sigma_power)?;
        for (i, ((partition, n_power), coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if !coeff.is_one() {
                write!(f, "{coeff}\u{b7}")?;
            }
            let mut first = true;
            for (part, mult) in partition.multiplicities() {
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                let tr = if part == 1 {
                    alloc::string::String::from("Tr W")
                } else {
                    alloc::format!("Tr W^{part}")
                };
                if mult > 1 {
                    write!(f, "({tr})^{mult}")?;
                } else {
                    f.write_str(&tr)?;
                }
            }
            if partition.is_empty() {
                f.write_str("1")?;
            }
            match *n_power {
                0 => {}
                1 => f.write_str("\u{b7}N")?,
                -1 => f.write_str("/N")?,
                e if e > 0 => write!(f, "\u{b7}N^{e}")?,
                e => write!(f, "/N^{}", -e)?,
            }
        }
        f.write_str(")")
    }
}

/// Crossing and genus are only defined for single-trace diagrams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiLoopError {
    pub loops: usize,
}

impl fmt::Display for MultiLoopError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "crossing and genus are defined for single-trace diagrams only (got {} loops)",
            self.loops
        )
    }
}

fn assert_pairing_fits(diagram: &Diagram, pairing: &Pairing) {
    assert!(
        2 * pairing.len() == diagram.total_insertions()
            && pairing.pairs().iter().all(|&(x, d)| {
                x < diagram.total_insertions()
                    && d < diagram.total_insertions()
                    && diagram.letter(x) == Letter::X
                    && diagram.letter(d) == Letter::XDag
            }),
        "pairing does not belong to this diagram"
    );
}

fn to_monomial(diagram: &Diagram, c: Contraction) -> TraceMonomial {
    let m = (diagram.total_insertions() / 2) as i32;
    let l = diagram.loop_count() as i32;
    TraceMonomial {
        partition: Partition::new(c.w_cycles).expect("W cycles are nonempty"),
        n_power: c.delta_loops as i32 - m - l,
        coeff: BigRational::one(),
    }
}

/// The exact normalised contribution of one pairing.
///
/// Panics if the pairing does not match the diagram's insertions.
pub fn contract(diagram: &Diagram, pairing: &Pairing) -> TraceMonomial {
    assert_pairing_fits(diagram, pairing);
    to_monomial(diagram, contract_indices(diagram, pairing))
}

/// Sum of [`contract`] over every pairing of a (possibly multi-trace)
/// diagram; zero when unbalanced.
pub fn diagram_moment_poly(diagram: &Diagram) -> TracePolynomial {
    let Some(m) = diagram.weight() else {
        return TracePolynomial::zero();
    };
    let mut counts: BTreeMap<(Partition, i32), u64> = BTreeMap::new();
    for_each_pairing(diagram, |p| {
        let mono = to_monomial(diagram, contract_indices(diagram, p));
        *counts.entry((mono.partition, mono.n_power)).or_insert(0) += 1;
    });
    TracePolynomial {
        sigma_power: 2 * m as u32,
        terms: counts
            .into_iter()
            .map(|(k, c)| (k, BigRational::from_integer(c.into())))
            .collect(),
    }
}

/// `(1/N)<Tr O(X W^{1/2}, W^{1/2} X†)>` exactly in `N`, the coefficient of
/// `σ^{2m}` being the returned polynomial. Unbalanced words give zero.
pub fn ginibre_moment_poly(word: &Word) -> TracePolynomial {
    if word.is_empty() {
        return TracePolynomial::zero();
    }
    diagram_moment_poly(&Diagram::single(word.clone()))
}

fn single_loop(diagram: &Diagram) -> Result<(), MultiLoopError> {
    match diagram.loop_count() {
        1 => Ok(()),
        loops => Err(MultiLoopError { loops }),
    }
}

/// True iff no two chords interleave around the trace.
pub fn is_noncrossing(diagram: &Diagram, pairing: &Pairing) -> Result<bool, MultiLoopError> {
    single_loop(diagram)?;
    assert_pairing_fits(diagram, pairing);
    let chords: Vec<(usize, usize)> = pairing
        .pairs()
        .iter()
        .map(|&(a, b)| if a < b { (a, b) } else { (b, a) })
        .collect();
    for (i, &(a, b)) in chords.iter().enumerate() {
        for &(c, d) in &chords[i + 1..] {
            if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Genus `g` of the ribbon graph of a single-trace pairing: substituting
/// `Tr W^j → N` its contribution sits at relative order `N^{-2g}`.
pub fn genus(diagram: &Diagram, pairing: &Pairing) -> Result<u32, MultiLoopError> {
    single_loop(diagram)?;
    assert_pairing_fits(diagram, pairing);
    let c = contract_indices(diagram, pairing);
    let m = pairing.len();
    let faces = c.delta_loops + c.w_cycles.len();
    debug_assert!(faces <= m + 1 && (m + 1 - faces) % 2 == 0);
    Ok(((m + 1 - faces) / 2) as u32)
}

/// Planar coefficients `tc_{i,j}(m_1, ..., m_k)` of a word: for each
/// partition, the number of non-crossing pairings whose `W` cycles have that
/// shape. Uses the non-crossing enumerator, so the cost is Catalan-like
/// rather than factorial. Unbalanced words give an empty map.
pub fn tc_coefficients(word: &Word) -> BTreeMap<Partition, BigUint> {
    let mut out: BTreeMap<Partition, BigUint> = BTreeMap::new();
    if word.is_empty() || !word.is_balanced() {
        return out;
    }
    let diagram = Diagram::single(word.clone());
    for_each_noncrossing_pairing(word, |p| {
        let c = contract_indices(&diagram, p);
        let partition = Partition::new(c.w_cycles).expect("W cycles are nonempty");
        *out.entry(partition).or_default() += 1u32;
    });
    out
}

#[cfg(test)]
mod tests;
