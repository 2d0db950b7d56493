//! Laurent polynomials in the formal matrix size `N`.

use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::num::ratio_to_f64;

/// `Σ_e c_e N^e` with exact rational coefficients; zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Laurent {
    coeffs: BTreeMap<i32, BigRational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c N^power`.
    pub fn monomial(c: BigRational, power: i32) -> Self {
        let mut out = Self::zero();
        out.add_term(power, c);
        out
    }

    /// `N^power`.
    pub fn n_pow(power: i32) -> Self {
        Self::monomial(BigRational::one(), power)
    }

    /// Builds from `(power, numerator, denominator)` triples; handy in tests.
    pub fn from_terms(terms: &[(i32, i64, i64)]) -> Self {
        let mut out = Self::zero();
        for &(e, n, d) in terms {
            out.add_term(e, BigRational::new(BigInt::from(n), BigInt::from(d)));
        }
        out
    }

    pub fn add_term(&mut self, power: i32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(power).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&power);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, power: i32) -> BigRational {
        self.coeffs
            .get(&power)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Terms in increasing power of `N`.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigRational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn max_power(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn min_power(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    /// Multiplies by `N^shift`.
    pub fn shift(&self, shift: i32) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e + shift, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, c * factor)).collect(),
        }
    }

    /// The `N → ∞` limit when it is finite (no positive powers).
    pub fn limit(&self) -> Option<BigRational> {
        match self.max_power() {
            Some(e) if e > 0 => None,
            _ => Some(self.coefficient(0)),
        }
    }

    /// Exact value at a concrete `N`.
    pub fn eval(&self, n: &BigRational) -> BigRational {
        assert!(
            !n.is_zero(),
            "cannot evaluate a Laurent polynomial at N = 0"
        );
        let inv = n.recip();
        self.coeffs
            .iter()
            .map(|(&e, c)| {
                let base = if e >= 0 { n } else { &inv };
                c * crate::num::ratio_pow(base, e.unsigned_abs())
            })
            .sum()
    }

    pub fn eval_f64(&self, n: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(&e, c)| ratio_to_f64(c) * n.powi(e))
            .sum()
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(mut self, rhs: Laurent) -> Laurent {
        self += &rhs;
        self
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        for (&e, c) in &rhs.coeffs {
            self.add_term(e, c.clone());
        }
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs.clone())
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &rhs.coeffs {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        &self * &rhs
    }
}

/// Highest power first: `12 + 21/N^2 + 3/N^4`, `2N + 1/N`.
impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let c = c.abs();
            let numer = c.numer();
            let denom = c.denom();
            let unit = c.is_one();
            match e {
                0 => write!(f, "{c}")?,
                e if e > 0 => {
                    if !unit {
                        write!(f, "{c}")?;
                        if !denom.is_one() {
                            f.write_str("*")?;
                        }
                    }
                    f.write_str("N")?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
                e => {
                    write!(f, "{numer}/")?;
                    if !denom.is_one() {
                        write!(f, "({denom}*")?;
                    }
                    f.write_str("N")?;
                    if e < -1 {
                        write!(f, "^{}", -e)?;
                    }
                    if !denom.is_one() {
                        f.write_str(")")?;
                    }
                }
            }
        }
        Ok(())
    }
}
