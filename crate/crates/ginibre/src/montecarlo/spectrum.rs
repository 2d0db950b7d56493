use faer::diag::Diag;
use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::evd::{evd_cplx, evd_scratch, ComputeEigenvectors};
use faer::{c64, Mat, Par};
use rayon::prelude::*;

use super::{sample_product, sample_rng, McConfig};

/// Parlett-Reinsch balancing by powers of two (1-norms, diagonal excluded).
///
/// A similarity transform, so eigenvalues are unchanged while row and column
/// norms are equalised; products of several Ginibre factors otherwise spread
/// entries over many orders of magnitude.
pub fn balance(a: &mut Mat<c64>) {
    const RADIX: f64 = 2.0;
    let n = a.nrows();
    let mut converged = false;
    while !converged {
        converged = true;
        for i in 0..n {
            let mut col = 0.0;
            let mut row = 0.0;
            for j in 0..n {
                if j != i {
                    col += a[(j, i)].re.abs() + a[(j, i)].im.abs();
                    row += a[(i, j)].re.abs() + a[(i, j)].im.abs();
                }
            }
            if col == 0.0 || row == 0.0 {
                continue;
            }
            let total = col + row;
            let mut f = 1.0;
            let mut c = col;
            while c < row / RADIX {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            while c > row * RADIX {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + row) / f < 0.95 * total {
                converged = false;
                for j in 0..n {
                    a[(i, j)] /= f;
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

/// Eigenvalues of a dense complex matrix (balanced Hessenberg-Schur
/// reduction, single-threaded). `None` if the QR iteration fails.
pub fn eigenvalues(mut a: Mat<c64>) -> Option<Vec<c64>> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "eigenvalues of a non-square matrix");
    if n == 0 {
        return Some(Vec::new());
    }
    balance(&mut a);
    let mut s = Diag::<c64>::zeros(n);
    let par = Par::Seq;
    let mut buf = MemBuffer::new(evd_scratch::<c64>(
        n,
        ComputeEigenvectors::No,
        ComputeEigenvectors::No,
        par,
        Default::default(),
    ));
    evd_cplx(
        a.as_ref(),
        s.as_mut(),
        None,
        None,
        par,
        MemStack::new(&mut buf),
        Default::default(),
    )
    .ok()?;
    Some((0..n).map(|i| s[i]).collect())
}

/// Radial eigenvalue statistics of `X = A_1 ⋯ A_n` against
/// `F(r) = min(1, (r/σ)^{2/n})`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub factors: usize,
    pub sigma: f64,
    /// `|λ|` over all eigenvalues of all successful samples, ascending.
    pub radii: Vec<f64>,
    /// `sup_r |F_emp(r) - F(r)|`.
    pub sup_dev: f64,
    /// Samples whose eigensolve did not converge.
    pub skipped: usize,
}

impl SpectrumReport {
    pub fn theory_cdf(&self, r: f64) -> f64 {
        radial_cdf(r, self.sigma, self.factors)
    }

    pub fn empirical_cdf(&self, r: f64) -> f64 {
        if self.radii.is_empty() {
            return 0.0;
        }
        self.radii.partition_point(|&x| x <= r) as f64 / self.radii.len() as f64
    }

    /// Fraction of eigenvalues with `|λ| > r`.
    pub fn fraction_beyond(&self, r: f64) -> f64 {
        1.0 - self.empirical_cdf(r)
    }

    /// `bins` rows `(r, empirical, theory)` on `(0, r_max]`, with `r_max`
    /// the larger of `σ` and the largest radius.
    pub fn cdf_table(&self, bins: usize) -> Vec<(f64, f64, f64)> {
        let r_max = self.radii.last().copied().unwrap_or(0.0).max(self.sigma);
        (1..=bins)
            .map(|k| {
                let r = r_max * k as f64 / bins as f64;
                (r, self.empirical_cdf(r), self.theory_cdf(r))
            })
            .collect()
    }
}

fn radial_cdf(r: f64, sigma: f64, factors: usize) -> f64 {
    (r / sigma).powf(2.0 / factors as f64).min(1.0)
}

/// Samples `cfg.samples` products, diagonalises each and compares the radial
/// CDF of all eigenvalues with `(r/σ)^{2/n}`.
pub fn eigenvalue_radial_report(cfg: &McConfig) -> SpectrumReport {
    let spectra: Vec<Option<Vec<c64>>> = (0..cfg.samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(cfg.seed, i);
            eigenvalues(sample_product(cfg.size, &cfg.sigmas, &mut rng))
        })
        .collect();
    let skipped = spectra.iter().filter(|s| s.is_none()).count();
    let mut radii: Vec<f64> = spectra
        .into_iter()
        .flatten()
        .flatten()
        .map(|z| z.norm())
        .collect();
    radii.sort_by(f64::total_cmp);
    let sigma = cfg.sigma();
    let m = radii.len() as f64;
    let sup_dev = radii.iter().enumerate().fold(0.0f64, |acc, (i, &r)| {
        let f = radial_cdf(r, sigma, cfg.factors());
        acc.max((i as f64 / m - f).abs())
            .max(((i + 1) as f64 / m - f).abs())
    });
    SpectrumReport {
        factors: cfg.factors(),
        sigma,
        radii,
        sup_dev,
        skipped,
    }
}
