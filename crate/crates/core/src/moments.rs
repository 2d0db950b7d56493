//! Moment evaluators for products of `n` independent Ginibre factors
//! `X = X_1 ⋯ X_n`, each `X_i` with variance `σ_i²/N`.
//!
//! Every result is carried as a unit-`σ` Laurent polynomial together with
//! the power of `σ = σ_1 ⋯ σ_n` that multiplies it.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{catalan, fuss_catalan, partitions, tc_leading, Partition};
use crate::laurent::Laurent;
use crate::num::{ratio_of, ratio_pow, ratio_to_f64};
use crate::wick::{ginibre_moment_poly, tc_coefficients};
use crate::wishart::WishartTable;
use crate::word::Word;
use crate::{CapacityError, Limits};

/// Number of factors and their scales.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnsembleSpec {
    factors: usize,
    sigmas: Vec<BigRational>,
}

impl EnsembleSpec {
    /// `n` factors, all with `σ_i = 1`.
    pub fn new(factors: usize) -> Result<Self, MomentError> {
        if factors == 0 {
            return Err(MomentError::InvalidSpec("need at least one factor".into()));
        }
        Ok(Self {
            factors,
            sigmas: vec![BigRational::one(); factors],
        })
    }

    pub fn with_sigmas(sigmas: Vec<BigRational>) -> Result<Self, MomentError> {
        if sigmas.is_empty() {
            return Err(MomentError::InvalidSpec("need at least one factor".into()));
        }
        if let Some(i) = sigmas.iter().position(|s| !s.is_positive()) {
            return Err(MomentError::InvalidSpec(alloc::format!(
                "sigma_{} must be positive",
                i + 1
            )));
        }
        Ok(Self {
            factors: sigmas.len(),
            sigmas,
        })
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn sigmas(&self) -> &[BigRational] {
        &self.sigmas
    }

    /// `σ = σ_1 ⋯ σ_n`.
    pub fn sigma(&self) -> BigRational {
        self.sigmas
            .iter()
            .fold(BigRational::one(), |acc, s| acc * s)
    }

    pub fn sigma_squared(&self) -> BigRational {
        let s = self.sigma();
        &s * &s
    }

    pub fn sigmas_f64(&self) -> Vec<f64> {
        self.sigmas.iter().map(ratio_to_f64).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentMode {
    LargeN,
    FiniteN,
}

impl MomentMode {
    pub fn as_str(self) -> &'static str {
        match self {
            MomentMode::LargeN => "large_n",
            MomentMode::FiniteN => "finite_n",
        }
    }
}

/// Where the planar coefficients came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TcSource {
    /// Closed form for alternating words `(X X†)^m`.
    Formula,
    /// Non-crossing (large `N`) or full (finite `N`) pairing enumeration.
    Enumeration,
}

impl TcSource {
    pub fn as_str(self) -> &'static str {
        match self {
            TcSource::Formula => "formula",
            TcSource::Enumeration => "enumeration",
        }
    }
}

/// `(1/N)<Tr O>` for a word in the product ensemble.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentResult {
    pub word: Word,
    pub spec: EnsembleSpec,
    pub mode: MomentMode,
    /// Power of `σ` multiplying [`Self::unit_value`] (`2m` for weight `m`).
    pub sigma_power: u32,
    /// The moment at `σ = 1`; a constant in large-`N` mode.
    pub unit_value: Laurent,
    pub tc_source: TcSource,
}

impl MomentResult {
    /// The moment with the ensemble's `σ` substituted.
    pub fn value(&self) -> Laurent {
        let scale = ratio_pow(&self.spec.sigma(), self.sigma_power);
        self.unit_value.scale(&scale)
    }

    /// `N → ∞` limit of [`Self::value`]; `None` if it diverges.
    pub fn large_n_value(&self) -> Option<BigRational> {
        self.value().limit()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MomentError {
    Capacity(CapacityError),
    FiniteNUnsupported { factors: usize },
    InvalidSpec(String),
    EmptyWord,
}

impl From<CapacityError> for MomentError {
    fn from(e: CapacityError) -> Self {
        MomentError::Capacity(e)
    }
}

impl fmt::Display for MomentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MomentError::Capacity(e) => e.fmt(f),
            MomentError::FiniteNUnsupported { factors } => write!(
                f,
                "exact finite-N moments are available for at most 2 factors (got {factors})"
            ),
            MomentError::InvalidSpec(msg) => write!(f, "invalid ensemble: {msg}"),
            MomentError::EmptyWord => f.write_str("the word is empty"),
        }
    }
}

fn check_cap(weight: usize, cap: usize) -> Result<(), MomentError> {
    if weight > cap {
        return Err(CapacityError { weight, cap }.into());
    }
    Ok(())
}

/// Planar coefficients of a balanced word and their provenance.
pub fn planar_coefficients(
    word: &Word,
    limits: &Limits,
) -> Result<(BTreeMap<Partition, BigUint>, TcSource), MomentError> {
    let m = word.weight().ok_or(MomentError::EmptyWord)?;
    if word.is_alternating() {
        let table = partitions(m as u32)
            .into_iter()
            .map(|p| {
                let c = tc_leading(&p);
                (p, c)
            })
            .collect();
        return Ok((table, TcSource::Formula));
    }
    check_cap(m, limits.max_planar_weight)?;
    Ok((tc_coefficients(word), TcSource::Enumeration))
}

/// Large-`N` limit `σ^{2m} Σ_p tc(p) Π_a FC_{n-1}(m_a)`.
///
/// Unbalanced words give zero.
pub fn large_n_moment(
    word: &Word,
    spec: &EnsembleSpec,
    limits: &Limits,
) -> Result<MomentResult, MomentError> {
    if word.is_empty() {
        return Err(MomentError::EmptyWord);
    }
    let Some(m) = word.weight() else {
        return Ok(MomentResult {
            word: word.clone(),
            spec: spec.clone(),
            mode: MomentMode::LargeN,
            sigma_power: 0,
            unit_value: Laurent::zero(),
            tc_source: TcSource::Enumeration,
        });
    };
    let (tc, source) = planar_coefficients(word, limits)?;
    let fc_order = (spec.factors() - 1) as u64;
    let total = tc.iter().fold(BigUint::zero(), |acc, (p, c)| {
        let weight = p.parts().iter().fold(BigUint::one(), |w, &part| {
            w * fuss_catalan(fc_order, u64::from(part))
        });
        acc + c * weight
    });
    Ok(MomentResult {
        word: word.clone(),
        spec: spec.clone(),
        mode: MomentMode::LargeN,
        sigma_power: 2 * m as u32,
        unit_value: Laurent::constant(ratio_of(&total)),
        tc_source: source,
    })
}

/// Exact-in-`N` moment for one or two factors.
pub fn finite_n_moment(
    word: &Word,
    spec: &EnsembleSpec,
    table: &mut WishartTable,
) -> Result<MomentResult, MomentError> {
    if word.is_empty() {
        return Err(MomentError::EmptyWord);
    }
    let m = word.weight().unwrap_or(0);
    check_cap(m, table.limits().max_weight)?;
    let poly = ginibre_moment_poly(word);
    let unit_value = match spec.factors() {
        1 => poly.substitute_identity(),
        2 => poly.try_substitute(|p| table.get(p))?,
        factors => return Err(MomentError::FiniteNUnsupported { factors }),
    };
    Ok(MomentResult {
        word: word.clone(),
        spec: spec.clone(),
        mode: MomentMode::FiniteN,
        sigma_power: poly.sigma_power(),
        unit_value,
        tc_source: TcSource::Enumeration,
    })
}

/// [`finite_n_moment`] for two unit-scale factors, as a Laurent polynomial.
pub fn finite_n_moment_n2(word: &Word, limits: &Limits) -> Result<Laurent, MomentError> {
    let spec = EnsembleSpec::new(2)?;
    let mut table = WishartTable::new(*limits);
    Ok(finite_n_moment(word, &spec, &mut table)?.unit_value)
}

/// Large-`N` `(1/N)<Tr (W_1 ⋯ W_n)^m>` by recursing over the number of
/// Wishart factors, starting from `C_m` for a single one.
pub fn multi_wishart_moment(n: usize, m: u32) -> BigUint {
    assert!(n >= 1 && m >= 1, "multi_wishart_moment needs n, m >= 1");
    let mut memo = BTreeMap::new();
    multi_wishart(n, m, &mut memo)
}

fn multi_wishart(n: usize, m: u32, memo: &mut BTreeMap<(usize, u32), BigUint>) -> BigUint {
    if n == 1 {
        return catalan(u64::from(m));
    }
    if let Some(v) = memo.get(&(n, m)) {
        return v.clone();
    }
    let mut total = BigUint::zero();
    for p in partitions(m) {
        let mut term = tc_leading(&p);
        for &part in p.parts() {
            term *= multi_wishart(n - 1, part, memo);
        }
        total += term;
    }
    memo.insert((n, m), total.clone());
    total
}

/// Checks `FC_{n-1}(m) = Σ_p tc(p) Π_a FC_{n-2}(m_a)` over partitions of `m`.
pub fn fc_recursion_check(n: usize, m: u32) -> bool {
    assert!(
        n >= 2,
        "the recursion relates FC_{{n-1}} to FC_{{n-2}} for n >= 2"
    );
    let lower = (n - 2) as u64;
    let rhs = partitions(m).iter().fold(BigUint::zero(), |acc, p| {
        let weight = p.parts().iter().fold(BigUint::one(), |w, &part| {
            w * fuss_catalan(lower, u64::from(part))
        });
        acc + tc_leading(p) * weight
    });
    fuss_catalan((n - 1) as u64, u64::from(m)) == rhs
}
