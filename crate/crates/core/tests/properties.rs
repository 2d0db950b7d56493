use ginibre_core::combinatorics::{catalan, fuss_catalan};
use ginibre_core::moments::{finite_n_moment, finite_n_moment_n2, large_n_moment};
use ginibre_core::num::{ratio_of, ratio_pow};
use ginibre_core::wick::{
    enumerate_pairings, genus, ginibre_moment_poly, is_noncrossing, tc_coefficients,
};
use ginibre_core::{Diagram, EnsembleSpec, Laurent, Letter, Limits, WishartTable, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn balanced_word(max_weight: usize) -> impl Strategy<Value = Word> {
    (1..=max_weight)
        .prop_flat_map(|m| {
            let mut letters = vec![Letter::X; m];
            letters.extend(std::iter::repeat(Letter::XDag).take(m));
            Just(letters).prop_shuffle()
        })
        .prop_map(Word::new)
}

fn all_balanced_words(m: usize) -> Vec<Word> {
    (0u32..1 << (2 * m))
        .filter(|mask| mask.count_ones() as usize == m)
        .map(|mask| {
            Word::new(
                (0..2 * m)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            Letter::X
                        } else {
                            Letter::XDag
                        }
                    })
                    .collect(),
            )
        })
        .collect()
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn moment_is_cyclically_invariant(w in balanced_word(5), r in 0usize..10) {
        prop_assert_eq!(ginibre_moment_poly(&w), ginibre_moment_poly(&w.rotate(r % w.len())));
    }

    #[test]
    fn moment_is_conjugation_symmetric(w in balanced_word(5)) {
        prop_assert_eq!(ginibre_moment_poly(&w), ginibre_moment_poly(&w.conjugate()));
    }

    #[test]
    fn every_monomial_has_full_weight(w in balanced_word(5)) {
        let m = w.weight().unwrap() as u32;
        let poly = ginibre_moment_poly(&w);
        prop_assert_eq!(poly.sigma_power(), 2 * m);
        for t in poly.terms() {
            prop_assert_eq!(t.partition.weight(), m);
            prop_assert!(t.n_power <= -(t.partition.len() as i32));
        }
    }

    #[test]
    fn planar_coefficients_count_noncrossing_pairings(w in balanced_word(6)) {
        let d = Diagram::single(w.clone());
        let planar = enumerate_pairings(&d)
            .iter()
            .filter(|p| is_noncrossing(&d, p).unwrap())
            .count();
        let total: num_bigint::BigUint = tc_coefficients(&w).values().sum();
        prop_assert_eq!(total, planar.into());
    }

    #[test]
    fn sigma_scaling_is_covariant(
        w in balanced_word(4),
        n in 1usize..4,
        num in 1i64..7,
        den in 1i64..7,
    ) {
        let limits = Limits::default();
        let lambda = rational(num, den);
        let base = EnsembleSpec::new(n).unwrap();
        let mut sigmas = vec![BigRational::from_integer(1.into()); n];
        for s in &mut sigmas {
            *s = lambda.clone();
        }
        let scaled = EnsembleSpec::with_sigmas(sigmas).unwrap();
        let m = w.weight().unwrap() as u32;
        let a = large_n_moment(&w, &base, &limits).unwrap().large_n_value().unwrap();
        let b = large_n_moment(&w, &scaled, &limits).unwrap().large_n_value().unwrap();
        prop_assert_eq!(b, a * ratio_pow(&lambda, 2 * m * n as u32));
    }

    #[test]
    fn laurent_eval_is_a_ring_homomorphism(
        a in prop::collection::vec((-4i32..4, -9i64..9), 0..5),
        b in prop::collection::vec((-4i32..4, -9i64..9), 0..5),
        x in 1i64..6,
    ) {
        let build = |t: &[(i32, i64)]| {
            Laurent::from_terms(&t.iter().map(|&(e, c)| (e, c, 1)).collect::<Vec<_>>())
        };
        let (pa, pb) = (build(&a), build(&b));
        let at = BigRational::from_integer(x.into());
        prop_assert_eq!((&pa * &pb).eval(&at), pa.eval(&at) * pb.eval(&at));
        prop_assert_eq!((&pa + &pb).eval(&at), pa.eval(&at) + pb.eval(&at));
        prop_assert!((&pa - &pa).is_zero());
    }

    #[test]
    fn word_text_round_trips(w in balanced_word(8)) {
        let parsed: Word = w.to_string().parse().unwrap();
        prop_assert_eq!(&parsed, &w);
        let upper: Word = w.to_string().to_uppercase().parse().unwrap();
        prop_assert_eq!(upper, w);
    }
}

#[test]
fn genus_zero_iff_noncrossing_exhaustive() {
    for m in 1..=6 {
        for w in all_balanced_words(m) {
            let d = Diagram::single(w.clone());
            for p in enumerate_pairings(&d) {
                let planar = is_noncrossing(&d, &p).unwrap();
                assert_eq!(genus(&d, &p).unwrap() == 0, planar, "{w} {:?}", p.pairs());
            }
        }
    }
}

#[test]
fn finite_n_leading_term_is_the_large_n_moment() {
    let limits = Limits::default();
    let two = EnsembleSpec::new(2).unwrap();
    for m in 1..=4 {
        for w in all_balanced_words(m) {
            let exact = finite_n_moment_n2(&w, &limits).unwrap();
            let large = large_n_moment(&w, &two, &limits)
                .unwrap()
                .large_n_value()
                .unwrap();
            assert_eq!(exact.max_power(), Some(0), "{w}");
            assert_eq!(exact.coefficient(0), large, "{w}");
        }
    }
}

#[test]
fn single_factor_finite_n_limit_counts_planar_pairings() {
    let one = EnsembleSpec::new(1).unwrap();
    let mut table = WishartTable::new(Limits::default());
    for m in 1..=4 {
        for w in all_balanced_words(m) {
            let exact = finite_n_moment(&w, &one, &mut table).unwrap();
            let large = large_n_moment(&w, &one, &Limits::default()).unwrap();
            assert_eq!(exact.large_n_value(), large.large_n_value(), "{w}");
        }
    }
}

#[test]
fn alternating_moments_are_fuss_catalan() {
    for n in 1..=4 {
        let spec = EnsembleSpec::new(n).unwrap();
        for m in 1..=5 {
            let v = large_n_moment(&Word::alternating(m), &spec, &Limits::default())
                .unwrap()
                .large_n_value()
                .unwrap();
            assert_eq!(
                v,
                ratio_of(&fuss_catalan(n as u64, m as u64)),
                "n={n} m={m}"
            );
        }
    }
}

#[test]
fn product_moment_equals_power_word_in_one_factor() {
    // (1/N)<Tr (X_(n) X_(n)†)^m> against (X^n X†^n)^m for a single factor.
    let one = EnsembleSpec::new(1).unwrap();
    for n in 1..=3 {
        let spec = EnsembleSpec::new(n).unwrap();
        for m in 1..=3 {
            let product = large_n_moment(&Word::alternating(m), &spec, &Limits::default())
                .unwrap()
                .large_n_value()
                .unwrap();
            let powers = Word::from_runs(&vec![(n, n); m]);
            let via_tc: num_bigint::BigUint = tc_coefficients(&powers).values().sum();
            assert_eq!(product, ratio_of(&via_tc), "n={n} m={m}");
            let direct = large_n_moment(&powers, &one, &Limits::default())
                .unwrap()
                .large_n_value()
                .unwrap();
            assert_eq!(direct, product);
        }
    }
}

#[test]
fn identity_substitution_constant_term_is_catalan() {
    for m in 1..=6 {
        let plain = ginibre_moment_poly(&Word::alternating(m)).substitute_identity();
        assert_eq!(plain.coefficient(0), ratio_of(&catalan(m as u64)));
    }
}
