/// Sum by recursive halving: error grows like `log n` rather than `n`, and
/// the result depends only on the order of `values`.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 32;
    if values.len() <= LEAF {
        return values.iter().sum();
    }
    let (lo, hi) = values.split_at(values.len() / 2);
    pairwise_sum(lo) + pairwise_sum(hi)
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    /// Sample standard deviation over `√samples`; zero for one sample.
    pub stderr: f64,
    pub samples: usize,
    /// Mean of the discarded imaginary parts, a sanity statistic.
    pub imag_mean: f64,
}

impl Estimate {
    pub fn from_samples(real: &[f64], imag: &[f64]) -> Self {
        let n = real.len();
        assert!(n > 0, "an estimate needs at least one sample");
        let mean = pairwise_sum(real) / n as f64;
        let stderr = if n > 1 {
            let dev: Vec<f64> = real.iter().map(|x| (x - mean) * (x - mean)).collect();
            (pairwise_sum(&dev) / (n - 1) as f64 / n as f64).sqrt()
        } else {
            0.0
        };
        let imag_mean = if imag.is_empty() {
            0.0
        } else {
            pairwise_sum(imag) / imag.len() as f64
        };
        Self {
            mean,
            stderr,
            samples: n,
            imag_mean,
        }
    }

    /// `|mean - target| / stderr`; infinite when the error is zero and the
    /// mean is off target.
    pub fn z_score(&self, target: f64) -> f64 {
        let diff = (self.mean - target).abs();
        if self.stderr > 0.0 {
            diff / self.stderr
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }

    pub fn relative_error(&self, target: f64) -> f64 {
        ((self.mean - target) / target).abs()
    }
}
