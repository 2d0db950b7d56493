//! Small helpers around arbitrary-precision numbers.

use alloc::string::String;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Converts an unsigned big integer into an exact rational.
pub fn ratio_of(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// `base^exp` for rationals with a nonnegative exponent.
pub fn ratio_pow(base: &BigRational, exp: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Parses an exact rational from `"3"`, `"-1.25"`, `"2.5e-3"` or `"7/3"`.
///
/// Decimal input is converted exactly, so `"0.1"` is `1/10`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(at) => (&text[..at], text[at + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let mut digits = String::with_capacity(int_part.len() + frac_part.len());
    digits.push_str(int_part);
    digits.push_str(frac_part);
    let mut value = BigRational::from_integer(digits.parse::<BigInt>().ok()?);
    let shift = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10u32));
    let scale = ratio_pow(&ten, shift.unsigned_abs());
    if shift >= 0 {
        value *= scale;
    } else {
        value /= scale;
    }
    if negative {
        value = -value;
    }
    Some(value)
}

/// Lossy conversion used only for display and floating-point comparisons.
pub fn ratio_to_f64(value: &BigRational) -> f64 {
    // Scale both parts down together so huge numerators and denominators do
    // not overflow to inf/inf.
    let mut num = value.numer().abs();
    let mut den = value.denom().clone();
    let bits = num.bits().max(den.bits());
    if bits > 1000 {
        let shift = bits - 1000;
        num >>= shift;
        den >>= shift;
    }
    let n = big_to_f64(&num);
    let d = big_to_f64(&den);
    let magnitude = if d == 0.0 { f64::INFINITY } else { n / d };
    if value.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}

fn big_to_f64(n: &BigInt) -> f64 {
    let (_, digits) = n.to_u64_digits();
    digits
        .iter()
        .rev()
        .fold(0.0, |acc, &d| acc * 18_446_744_073_709_551_616.0 + d as f64)
}
