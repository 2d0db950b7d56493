//! Integer combinatorics: Catalan and Fuss-Catalan numbers, necklace counting
//! and enumeration, integer partitions and the planar coefficients
//! `tc_{1^m,1^m}`.
//!
//! All counts are [`BigUint`]; `FC_6(20)` already needs more than 64 bits.

use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::word::{Letter, Word};

/// `binom(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `C_m = binom(2m, m) / (m + 1)`.
pub fn catalan(m: u64) -> BigUint {
    binomial(2 * m, m) / (m + 1)
}

/// `FC_n(m) = binom((n+1)m, m) / (nm + 1)`.
///
/// `FC_1 = C`, `FC_n(0) = 1`, and `FC_0(m) = 1`.
pub fn fuss_catalan(n: u64, m: u64) -> BigUint {
    binomial((n + 1) * m, m) / (n * m + 1)
}

/// Euler's totient.
pub fn totient(d: u64) -> u64 {
    assert!(d >= 1, "totient is defined for d >= 1");
    let mut result = d;
    let mut rest = d;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if rest > 1 {
        result -= result / rest;
    }
    result
}

/// Number of binary necklaces with `m` beads of each colour, i.e. the number
/// of trace words with `m` X's and `m` X†'s up to cyclic rotation:
/// `(1/2m) Σ_{d|m} φ(d) binom(2m/d, m/d)`.
pub fn necklace_count(m: u64) -> BigUint {
    assert!(m >= 1, "necklace_count needs m >= 1");
    let mut total = BigUint::zero();
    for d in (1..=m).filter(|d| m % d == 0) {
        total += binomial(2 * m / d, m / d) * totient(d);
    }
    let (q, r) = total.div_rem(&BigUint::from(2 * m));
    debug_assert!(r.is_zero());
    q
}

/// One canonical representative (least rotation, `X < X†`) per rotation
/// class of balanced words of weight `m`, in lexicographic order.
///
/// Reflections are not quotiented: `Tr O` and `Tr O^T` are different
/// operators.
pub fn enumerate_necklaces(m: usize) -> Vec<Word> {
    assert!(m >= 1, "enumerate_necklaces needs m >= 1");
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(2 * m);
    balanced_words(m, m, &mut buf, &mut |letters| {
        if is_least_rotation(letters) {
            out.push(Word::new(letters.to_vec()));
        }
    });
    out
}

/// Visits every word with `xs` X's and `ds` X†'s appended to `buf`, in
/// lexicographic order.
pub(crate) fn balanced_words(
    xs: usize,
    ds: usize,
    buf: &mut Vec<Letter>,
    visit: &mut dyn FnMut(&[Letter]),
) {
    if xs == 0 && ds == 0 {
        visit(buf);
        return;
    }
    if xs > 0 {
        buf.push(Letter::X);
        balanced_words(xs - 1, ds, buf, visit);
        buf.pop();
    }
    if ds > 0 {
        buf.push(Letter::XDag);
        balanced_words(xs, ds - 1, buf, visit);
        buf.pop();
    }
}

fn is_least_rotation(letters: &[Letter]) -> bool {
    let n = letters.len();
    (1..n).all(|r| {
        let rotated = letters[r..].iter().chain(&letters[..r]);
        letters.iter().cmp(rotated) != core::cmp::Ordering::Greater
    })
}

/// An integer partition, stored with parts weakly increasing.
///
/// Orders lexicographically on the parts, so `(1,1,1) < (1,2) < (3)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts. Returns `None` if any part is zero.
    pub fn new(mut parts: Vec<u32>) -> Option<Self> {
        if parts.contains(&0) {
            return None;
        }
        parts.sort_unstable();
        Some(Self { parts })
    }

    /// The empty partition of zero.
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Total weight `m`.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts `k`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `(part, multiplicity)` pairs in increasing part order.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, f)) if *q == p => *f += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// All partitions of `m`, lexicographic on the weakly increasing tuple.
pub fn partitions(m: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut buf = Vec::new();
    partitions_from(m, 1, &mut buf, &mut out);
    out
}

fn partitions_from(rest: u32, min: u32, buf: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition { parts: buf.clone() });
        return;
    }
    for first in min..=rest {
        let remaining = rest - first;
        if remaining != 0 && remaining < first {
            continue;
        }
        buf.push(first);
        partitions_from(remaining, first, buf, out);
        buf.pop();
    }
}

/// Leading-order coefficient `tc_{1^m,1^m}(m_1, ..., m_k)`:
/// `m! / ((m - k + 1)! Π_j f_j!)` where `f_j` counts the parts equal to `j`.
pub fn tc_leading(p: &Partition) -> BigUint {
    let m = u64::from(p.weight());
    let k = p.len() as u64;
    assert!(m >= 1 && k <= m, "tc_leading needs a partition of m >= 1");
    let denom = p
        .multiplicities()
        .iter()
        .fold(factorial(m - k + 1), |acc, &(_, f)| {
            acc * factorial(f as u64)
        });
    factorial(m) / denom
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use alloc::string::ToString;
    use alloc::vec;

    fn catalan_by_recurrence(n: usize) -> Vec<BigUint> {
        let mut c = vec![BigUint::one()];
        for k in 0..n {
            let next = (0..=k).map(|i| &c[i] * &c[k - i]).sum();
            c.push(next);
        }
        c
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    // Rotation classes of balanced words by brute-force canonicalisation.
    fn brute_force_necklaces(m: usize) -> BTreeSet<Word> {
        let mut classes = BTreeSet::new();
        let mut buf = Vec::new();
        balanced_words(m, m, &mut buf, &mut |letters| {
            classes.insert(Word::new(letters.to_vec()).canonical());
        });
        classes
    }

    fn partition_numbers(n: usize) -> Vec<u64> {
        // p(n) by the "largest part at most k" DP.
        let mut p = vec![0u64; n + 1];
        p[0] = 1;
        for k in 1..=n {
            for total in k..=n {
                p[total] += p[total - k];
            }
        }
        p
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), 1u32.into());
        assert_eq!(catalan(2), 2u32.into());
        assert_eq!(catalan(3), 5u32.into());
        assert_eq!(catalan(10), 16796u32.into());
        let oracle = catalan_by_recurrence(25);
        for (m, c) in oracle.iter().enumerate() {
            assert_eq!(&catalan(m as u64), c, "C_{m}");
        }
    }

    #[test]
    fn fuss_catalan_values() {
        assert_eq!(fuss_catalan(2, 2), 3u32.into());
        assert_eq!(fuss_catalan(2, 3), 12u32.into());
        assert_eq!(fuss_catalan(2, 4), 55u32.into());
        assert_eq!(fuss_catalan(3, 4), 140u32.into());
        for n in 0..10 {
            assert_eq!(fuss_catalan(n, 1), BigUint::one());
            assert_eq!(fuss_catalan(n, 0), BigUint::one());
        }
        for m in 0..8 {
            assert_eq!(fuss_catalan(0, m), BigUint::one());
        }
        for m in 0..=20 {
            assert_eq!(fuss_catalan(1, m), catalan(m));
        }
        assert!(fuss_catalan(6, 20).bits() > 64);
    }

    #[test]
    fn totient_matches_coprimality_count() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(3), 2);
        assert_eq!(totient(12), 4);
        for d in 1..200u64 {
            let direct = (1..=d).filter(|&j| gcd(j, d) == 1).count() as u64;
            assert_eq!(totient(d), direct, "phi({d})");
        }
    }

    #[test]
    fn necklace_counts_small() {
        assert_eq!(necklace_count(1), 1u32.into());
        assert_eq!(necklace_count(2), 2u32.into());
        assert_eq!(necklace_count(3), 4u32.into());
    }

    #[test]
    fn necklace_enumeration_agrees_with_brute_force() {
        for m in 1..=8 {
            let listed = enumerate_necklaces(m);
            let oracle = brute_force_necklaces(m);
            assert_eq!(listed.len(), oracle.len(), "m={m}");
            assert_eq!(necklace_count(m as u64), BigUint::from(oracle.len()));
            assert_eq!(listed, oracle.into_iter().collect::<Vec<_>>());
            let bound = binomial(2 * m as u64, m as u64) / (2 * m as u64);
            assert!(necklace_count(m as u64) >= bound);
        }
    }

    #[test]
    fn necklace_listings() {
        let names = |m| {
            enumerate_necklaces(m)
                .iter()
                .map(|w| w.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(names(1), ["xd"]);
        assert_eq!(names(2), ["xxdd", "xdxd"]);
        let three = names(3);
        assert_eq!(three.len(), 4);
        assert!(three.contains(&"xdxdxd".into()));
        assert!(three.contains(&"xxxddd".into()));
    }

    #[test]
    fn partitions_in_lexicographic_order() {
        let p3: Vec<_> = partitions(3).iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(p3, [vec![1, 1, 1], vec![1, 2], vec![3]]);
        assert_eq!(partitions(1).len(), 1);
        assert_eq!(partitions(6).len(), 11);
        let counts = partition_numbers(15);
        for m in 1..=15u32 {
            let ps = partitions(m);
            assert_eq!(ps.len() as u64, counts[m as usize], "p({m})");
            assert!(ps.windows(2).all(|w| w[0] < w[1]));
            assert!(ps.iter().all(|p| p.weight() == m));
            assert!(ps
                .iter()
                .all(|p| p.parts().windows(2).all(|w| w[0] <= w[1])));
        }
    }

    #[test]
    fn partition_construction() {
        let p = Partition::new(vec![2, 1, 2]).unwrap();
        assert_eq!(p.parts(), [1, 2, 2]);
        assert_eq!(p.weight(), 5);
        assert_eq!(p.len(), 3);
        assert_eq!(p.multiplicities(), [(1, 1), (2, 2)]);
        assert_eq!(p.to_string(), "(1,2,2)");
        assert!(Partition::new(vec![1, 0]).is_none());
        assert_eq!(Partition::empty().weight(), 0);
    }

    #[test]
    fn tc_leading_values() {
        let tc = |parts: &[u32]| tc_leading(&Partition::new(parts.to_vec()).unwrap());
        assert_eq!(tc(&[1, 2]), 3u32.into());
        assert_eq!(tc(&[2, 2]), 2u32.into());
        assert_eq!(tc(&[1, 3]), 4u32.into());
        assert_eq!(tc(&[1, 1, 1, 1]), 1u32.into());
        // The appendix prints 5 here; the formula gives 6.
        assert_eq!(tc(&[1, 1, 2]), 6u32.into());
        // m = 5 table.
        assert_eq!(tc(&[1, 1, 1, 2]), 10u32.into());
        assert_eq!(tc(&[1, 1, 3]), 10u32.into());
        assert_eq!(tc(&[1, 4]), 5u32.into());
        assert_eq!(tc(&[1, 2, 2]), 10u32.into());
        assert_eq!(tc(&[2, 3]), 5u32.into());
        assert_eq!(tc(&[5]), 1u32.into());
    }

    #[test]
    fn tc_leading_sums_to_catalan() {
        for m in 1..=10u32 {
            let total: BigUint = partitions(m).iter().map(tc_leading).sum();
            assert_eq!(total, catalan(u64::from(m)), "m={m}");
        }
    }
}
