//! Seeded Monte Carlo checks of the exact results.
//!
//! Every sample `i` draws from its own ChaCha20 stream `(seed, i)`, and
//! per-sample results are reduced in index order, so estimates are
//! bit-for-bit independent of the number of worker threads.

mod estimate;
mod gamma;
mod rng;
mod sample;
mod scalar;
mod spectrum;
mod stats;

pub use estimate::{estimate_word_moment, estimate_word_moments, WordEvaluator};
pub use gamma::{log_multivariate_gamma, GammaDomainError};
pub use rng::sample_rng;
pub use sample::{sample_ginibre, sample_product};
pub use scalar::{
    scalar_product_density, scalar_product_density_check, scalar_total_mass, QuadratureError,
    ScalarBin, ScalarReport,
};
pub use spectrum::{balance, eigenvalue_radial_report, eigenvalues, SpectrumReport};
pub use stats::{pairwise_sum, Estimate};

use thiserror::Error;

/// One Monte Carlo experiment: `samples` independent draws of `factors`
/// `size×size` Ginibre matrices with scales `sigmas`.
#[derive(Debug, Clone, PartialEq)]
pub struct McConfig {
    pub sigmas: Vec<f64>,
    pub size: usize,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McConfigError {
    #[error("matrix size must be at least 1")]
    EmptyMatrix,
    #[error("need at least one sample")]
    NoSamples,
    #[error("need at least one factor")]
    NoFactors,
    #[error("sigma_{0} must be positive and finite")]
    BadSigma(usize),
}

impl McConfig {
    /// `factors` unit-scale factors.
    pub fn new(
        factors: usize,
        size: usize,
        samples: usize,
        seed: u64,
    ) -> Result<Self, McConfigError> {
        Self::with_sigmas(vec![1.0; factors], size, samples, seed)
    }

    pub fn with_sigmas(
        sigmas: Vec<f64>,
        size: usize,
        samples: usize,
        seed: u64,
    ) -> Result<Self, McConfigError> {
        if sigmas.is_empty() {
            return Err(McConfigError::NoFactors);
        }
        if let Some(i) = sigmas.iter().position(|s| !(s.is_finite() && *s > 0.0)) {
            return Err(McConfigError::BadSigma(i + 1));
        }
        if size == 0 {
            return Err(McConfigError::EmptyMatrix);
        }
        if samples == 0 {
            return Err(McConfigError::NoSamples);
        }
        Ok(Self {
            sigmas,
            size,
            samples,
            seed,
        })
    }

    pub fn factors(&self) -> usize {
        self.sigmas.len()
    }

    /// `σ = σ_1 ⋯ σ_n`.
    pub fn sigma(&self) -> f64 {
        self.sigmas.iter().product()
    }

    /// Tables 1 and 2 scale: `N = 500`, 1500 samples.
    pub fn table_preset(factors: usize, seed: u64) -> Self {
        Self::new(factors, 500, 1500, seed).expect("valid preset")
    }

    /// Desk scale: `N = 200`, 500 samples.
    pub fn desk_preset(factors: usize, seed: u64) -> Self {
        Self::new(factors, 200, 500, seed).expect("valid preset")
    }
}
