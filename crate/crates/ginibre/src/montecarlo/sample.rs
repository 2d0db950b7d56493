use faer::linalg::matmul::matmul;
use faer::{c64, Accum, Mat, Par};
use rand::Rng;
use rand_distr::StandardNormal;

/// `N×N` complex Ginibre matrix: real and imaginary parts i.i.d.
/// `N(0, σ²/(2N))`, so `E|A_ij|² = σ²/N`. Filled column by column.
pub fn sample_ginibre<R: Rng + ?Sized>(n: usize, sigma: f64, rng: &mut R) -> Mat<c64> {
    let scale = sigma / (2.0 * n as f64).sqrt();
    let mut a = Mat::<c64>::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            a[(i, j)] = c64::new(scale * re, scale * im);
        }
    }
    a
}

/// `X = A_1 ⋯ A_n`, factors drawn in order from `rng` and multiplied left to
/// right.
pub fn sample_product<R: Rng + ?Sized>(n: usize, sigmas: &[f64], rng: &mut R) -> Mat<c64> {
    let mut factors = sigmas.iter();
    let first = factors.next().expect("at least one factor");
    let mut x = sample_ginibre(n, *first, rng);
    for &sigma in factors {
        let a = sample_ginibre(n, sigma, rng);
        let mut next = Mat::<c64>::zeros(n, n);
        matmul(
            next.as_mut(),
            Accum::Replace,
            x.as_ref(),
            a.as_ref(),
            c64::new(1.0, 0.0),
            Par::Seq,
        );
        x = next;
    }
    x
}
