use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use thiserror::Error;

use super::sample_rng;

const INNER_TOL: f64 = 1e-11;
const OUTER_TOL: f64 = 1e-10;
const CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum QuadratureError {
    #[error("density quadrature did not converge at |z| = {r} (error estimate {error:e})")]
    Density { r: f64, error: f64 },
    #[error(
        "bin mass quadrature did not converge on |z| in [{lo}, {hi}] (error estimate {error:e})"
    )]
    Bin { lo: f64, hi: f64, error: f64 },
    #[error("the density check needs at least 10000 samples (got {0})")]
    TooFewSamples(usize),
}

/// `I(r) = ∫_0^∞ du/u e^{-u - r²/(4u)}`, integrated in `s = ln u` over a
/// window outside which the integrand is below `e^{-40}`.
fn bessel_integral(r: f64) -> Result<f64, QuadratureError> {
    let r = r.max(1e-12);
    let q = r * r / 4.0;
    let lo = (q.ln() - 5.0).min((r / 2.0).ln() - 6.0);
    let hi = 50f64.ln().max((r / 2.0).ln() + 6.0);
    let out = quadrature::double_exponential::integrate(
        |s: f64| (-s.exp() - q * (-s).exp()).exp(),
        lo,
        hi,
        INNER_TOL,
    );
    if out.error_estimate.is_nan() || out.error_estimate > 1e3 * INNER_TOL {
        return Err(QuadratureError::Density {
            r,
            error: out.error_estimate,
        });
    }
    Ok(out.integral)
}

/// Density of `z = a b` for independent complex `a, b` whose real and
/// imaginary parts are standard normal: `(1/4π) ∫_0^∞ du/u e^{-u-|z|²/(4u)}`,
/// which is `K_0(|z|)/(2π)`.
pub fn scalar_product_density(r: f64) -> Result<f64, QuadratureError> {
    Ok(bessel_integral(r)? / (4.0 * PI))
}

/// Probability that `|z|` lies in `[lo, hi]`: `∫ 2πr p(r) dr`.
fn bin_mass(lo: f64, hi: f64) -> Result<f64, QuadratureError> {
    let failure = std::cell::Cell::new(None);
    let out = quadrature::double_exponential::integrate(
        |r: f64| match bessel_integral(r) {
            Ok(v) => r / 2.0 * v,
            Err(e) => {
                failure.set(Some(e));
                0.0
            }
        },
        lo,
        hi,
        OUTER_TOL,
    );
    if let Some(QuadratureError::Density { error, .. }) = failure.get() {
        return Err(QuadratureError::Bin { lo, hi, error });
    }
    if out.error_estimate.is_nan() || out.error_estimate > 1e3 * OUTER_TOL {
        return Err(QuadratureError::Bin {
            lo,
            hi,
            error: out.error_estimate,
        });
    }
    Ok(out.integral)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalarBin {
    pub lo: f64,
    pub hi: f64,
    pub count: u64,
    /// Expected fraction of samples in the bin.
    pub probability: f64,
    /// Empirical and theoretical planar density `count/(S · area)`.
    pub density: f64,
    pub theory: f64,
    /// `(count - S p) / √(S p (1 - p))`.
    pub z_score: f64,
}

impl ScalarBin {
    pub fn center(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalarReport {
    pub samples: usize,
    pub bins: Vec<ScalarBin>,
    /// Largest `|z_score|` over bins with at least `min_count` hits.
    pub max_z: f64,
    pub min_count: u64,
    /// Theoretical mass of `|z| ≤ r_max`, close to one.
    pub covered_mass: f64,
}

/// Bins `|a b|` for `samples` draws into `bins` equal radial bins on
/// `[0, r_max]` and compares each with its exact probability.
pub fn scalar_product_density_check(
    samples: usize,
    seed: u64,
    bins: usize,
    r_max: f64,
) -> Result<ScalarReport, QuadratureError> {
    if samples < 10_000 {
        return Err(QuadratureError::TooFewSamples(samples));
    }
    assert!(bins > 0 && r_max > 0.0, "need a nonempty bin range");
    let width = r_max / bins as f64;
    let chunks = samples.div_ceil(CHUNK);
    let partial: Vec<Vec<u64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = sample_rng(seed, c as u64);
            let mut counts = vec![0u64; bins];
            let todo = CHUNK.min(samples - c * CHUNK);
            for _ in 0..todo {
                let (ar, ai): (f64, f64) = (rng.sample(StandardNormal), rng.sample(StandardNormal));
                let (br, bi): (f64, f64) = (rng.sample(StandardNormal), rng.sample(StandardNormal));
                let r = (ar.hypot(ai)) * (br.hypot(bi));
                let k = (r / width) as usize;
                if k < bins {
                    counts[k] += 1;
                }
            }
            counts
        })
        .collect();
    let mut counts = vec![0u64; bins];
    for p in &partial {
        for (a, b) in counts.iter_mut().zip(p) {
            *a += b;
        }
    }
    let s = samples as f64;
    let min_count = 100;
    let mut out = Vec::with_capacity(bins);
    let mut max_z = 0.0f64;
    let mut covered_mass = 0.0;
    for (k, &count) in counts.iter().enumerate() {
        let lo = k as f64 * width;
        let hi = lo + width;
        let p = bin_mass(lo, hi)?;
        covered_mass += p;
        let area = PI * (hi * hi - lo * lo);
        let sd = (s * p * (1.0 - p)).sqrt();
        let z = if sd > 0.0 {
            (count as f64 - s * p) / sd
        } else {
            0.0
        };
        if count >= min_count {
            max_z = max_z.max(z.abs());
        }
        out.push(ScalarBin {
            lo,
            hi,
            count,
            probability: p,
            density: count as f64 / (s * area),
            theory: p / area,
            z_score: z,
        });
    }
    Ok(ScalarReport {
        samples,
        bins: out,
        max_z,
        min_count,
        covered_mass,
    })
}

/// `∫_0^{r_max} 2πr p(r) dr`.
pub fn scalar_total_mass(r_max: f64) -> Result<f64, QuadratureError> {
    bin_mass(0.0, r_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    // K_0 reference values (Abramowitz & Stegun table 9.8).
    const K0: [(f64, f64); 4] = [
        (0.1, 2.427_069_024_702_017),
        (0.5, 0.924_419_071_227_666),
        (1.0, 0.421_024_438_240_708),
        (2.0, 0.113_893_872_749_533),
    ];

    #[test]
    fn density_is_k0_over_two_pi() {
        for (r, k0) in K0 {
            let p = scalar_product_density(r).unwrap();
            assert!((p - k0 / (2.0 * PI)).abs() < 1e-9, "r={r}: {p}");
        }
    }

    #[test]
    fn density_integrates_to_one() {
        let mass = scalar_total_mass(60.0).unwrap();
        assert!((mass - 1.0).abs() < 1e-6, "{mass}");
    }

    #[test]
    fn density_is_decreasing_with_log_peak() {
        let mut last = f64::INFINITY;
        for k in 1..40 {
            let p = scalar_product_density(k as f64 * 0.2).unwrap();
            assert!(p < last);
            last = p;
        }
        assert!(scalar_product_density(1e-6).unwrap() > 2.0);
    }

    #[test]
    fn too_few_samples() {
        assert_eq!(
            scalar_product_density_check(100, 1, 8, 4.0),
            Err(QuadratureError::TooFewSamples(100))
        );
    }
}
