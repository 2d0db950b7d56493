use std::collections::HashMap;

use faer::linalg::matmul::matmul;
use faer::{c64, Accum, Mat, MatRef, Par};
use ginibre_core::{Letter, Word};
use rayon::prelude::*;

use super::{sample_product, sample_rng, Estimate, McConfig};

/// Evaluates `Tr w(X, X†)` for many words on one sampled `X`, sharing
/// products between words.
///
/// Products of letter strings are memoised and built by peeling off the
/// first letter, so words with common suffixes reuse work. A trace is taken
/// as `Tr(A B)` of the two half-words in `O(N²)`, or as `‖U‖_F²` when the
/// word is `u u†` up to rotation.
#[derive(Debug)]
pub struct WordEvaluator<'a> {
    x: MatRef<'a, c64>,
    x_dag: Mat<c64>,
    memo: HashMap<Vec<Letter>, Mat<c64>>,
}

impl<'a> WordEvaluator<'a> {
    pub fn new(x: MatRef<'a, c64>) -> Self {
        assert_eq!(x.nrows(), x.ncols(), "X must be square");
        Self {
            x,
            x_dag: x.adjoint().to_owned(),
            memo: HashMap::new(),
        }
    }

    fn leaf(&self, letter: Letter) -> MatRef<'_, c64> {
        match letter {
            Letter::X => self.x,
            Letter::XDag => self.x_dag.as_ref(),
        }
    }

    fn ensure(&mut self, s: &[Letter]) {
        if s.len() < 2 || self.memo.contains_key(s) {
            return;
        }
        self.ensure(&s[1..]);
        let n = self.x.nrows();
        let mut out = Mat::<c64>::zeros(n, n);
        let rhs = self.get(&s[1..]);
        matmul(
            out.as_mut(),
            Accum::Replace,
            self.leaf(s[0]),
            rhs,
            c64::new(1.0, 0.0),
            Par::Seq,
        );
        self.memo.insert(s.to_vec(), out);
    }

    fn get(&self, s: &[Letter]) -> MatRef<'_, c64> {
        if s.len() == 1 {
            self.leaf(s[0])
        } else {
            self.memo[s].as_ref()
        }
    }

    /// `Tr w(X, X†)`; the empty word gives `Tr 1 = N`.
    pub fn trace(&mut self, word: &Word) -> c64 {
        let n = self.x.nrows();
        let letters = word.letters();
        match letters.len() {
            0 => return c64::new(n as f64, 0.0),
            1 => {
                let m = self.leaf(letters[0]);
                return (0..n).map(|i| m[(i, i)]).sum();
            }
            _ => {}
        }
        if let Some(u) = self_adjoint_half(word) {
            self.ensure(u.letters());
            let a = self.get(u.letters());
            let mut acc = 0.0;
            for j in 0..n {
                for i in 0..n {
                    acc += a[(i, j)].norm_sqr();
                }
            }
            return c64::new(acc, 0.0);
        }
        let (head, tail) = letters.split_at(letters.len() / 2);
        self.ensure(head);
        self.ensure(tail);
        let (a, b) = (self.get(head), self.get(tail));
        let mut acc = c64::new(0.0, 0.0);
        for j in 0..n {
            for i in 0..n {
                acc += a[(i, j)] * b[(j, i)];
            }
        }
        acc
    }
}

/// `u` with `rotate(word) = u · u†` for some rotation, if one exists.
fn self_adjoint_half(word: &Word) -> Option<Word> {
    let len = word.len();
    if len % 2 != 0 {
        return None;
    }
    (0..len).find_map(|r| {
        let rotated = word.rotate(r);
        let (u, v) = rotated.letters().split_at(len / 2);
        let u = Word::new(u.to_vec());
        (u.conjugate().letters() == v).then_some(u)
    })
}

/// `(1/N) Re Tr w(X, X†)` for `X = A_1 ⋯ A_n`, averaged over samples.
pub fn estimate_word_moment(word: &Word, cfg: &McConfig) -> Estimate {
    estimate_word_moments(std::slice::from_ref(word), cfg)
        .pop()
        .expect("one word in, one estimate out")
}

/// Like [`estimate_word_moment`] for several words evaluated on the same
/// samples.
pub fn estimate_word_moments(words: &[Word], cfg: &McConfig) -> Vec<Estimate> {
    let n = cfg.size;
    let per_sample: Vec<Vec<c64>> = (0..cfg.samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(cfg.seed, i);
            let x = sample_product(n, &cfg.sigmas, &mut rng);
            let mut eval = WordEvaluator::new(x.as_ref());
            words.iter().map(|w| eval.trace(w) / n as f64).collect()
        })
        .collect();
    (0..words.len())
        .map(|k| {
            let re: Vec<f64> = per_sample.iter().map(|s| s[k].re).collect();
            let im: Vec<f64> = per_sample.iter().map(|s| s[k].im).collect();
            Estimate::from_samples(&re, &im)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::sample_ginibre;

    fn naive_trace(x: MatRef<'_, c64>, word: &Word) -> c64 {
        let n = x.nrows();
        let mut acc = Mat::<c64>::identity(n, n);
        for &l in word.letters() {
            acc = match l {
                Letter::X => &acc * x,
                Letter::XDag => &acc * x.adjoint(),
            };
        }
        (0..n).map(|i| acc[(i, i)]).sum()
    }

    #[test]
    fn evaluator_matches_left_to_right_products() {
        let mut rng = sample_rng(7, 0);
        let x = sample_ginibre(6, 1.3, &mut rng);
        let mut eval = WordEvaluator::new(x.as_ref());
        for s in [
            "x", "d", "xd", "xx", "xdxd", "xxdxdd", "xxxdd", "xdxdxd", "xxdd", "dxxd", "xxdxd",
        ] {
            let w: Word = s.parse().unwrap();
            let fast = eval.trace(&w);
            let slow = naive_trace(x.as_ref(), &w);
            assert!(
                (fast - slow).norm() < 1e-9 * (1.0 + slow.norm()),
                "{s}: {fast} vs {slow}"
            );
        }
    }

    #[test]
    fn self_adjoint_detection() {
        let w: Word = "xxdxdd".parse().unwrap();
        assert_eq!(self_adjoint_half(&w).unwrap().to_string(), "xxd");
        let w: Word = "dxxd".parse().unwrap();
        assert!(self_adjoint_half(&w).is_some());
        let w: Word = "xxdxd".parse().unwrap();
        assert!(self_adjoint_half(&w).is_none());
        let w: Word = "xxdd".parse().unwrap();
        assert!(self_adjoint_half(&w).is_some());
    }
}
