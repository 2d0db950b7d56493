use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("the complex multivariate gamma Γ_{n}(a) needs a > {} (got a = {a})", n - 1)]
pub struct GammaDomainError {
    pub n: usize,
    pub a: f64,
}

/// `log Γ_N(a) = N(N-1)/2 · log π + Σ_{k=1}^{N} log Γ(a - k + 1)` for
/// `a > N - 1`.
pub fn log_multivariate_gamma(n: usize, a: f64) -> Result<f64, GammaDomainError> {
    if n == 0 || a.is_nan() || a <= (n - 1) as f64 {
        return Err(GammaDomainError { n, a });
    }
    let mut acc = (n * (n - 1)) as f64 / 2.0 * PI.ln();
    for k in 1..=n {
        acc += libm::lgamma(a - k as f64 + 1.0);
    }
    Ok(acc)
}
