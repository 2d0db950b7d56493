use super::*;
use crate::combinatorics::{catalan, factorial, partitions, tc_leading};
use alloc::string::ToString;
use alloc::vec;

fn word(s: &str) -> Word {
    s.parse().unwrap()
}

fn part(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Explicit index sum of one pairing at size `n` with an integer variance
/// matrix: Σ_a Π_{(p,q)} δ(a_p, a_{q+1}) W(a_{p+1}, a_q).
fn brute_force_pairing_sum(w: &Word, pairing: &Pairing, n: usize, var: &[Vec<i64>]) -> i64 {
    let len = w.len();
    let mut idx = vec![0usize; len];
    let mut total = 0i64;
    loop {
        let mut term = 1i64;
        for &(p, q) in pairing.pairs() {
            if idx[p] != idx[(q + 1) % len] {
                term = 0;
                break;
            }
            term *= var[idx[(p + 1) % len]][idx[q]];
        }
        total += term;
        // odometer
        let mut i = 0;
        while i < len {
            idx[i] += 1;
            if idx[i] < n {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == len {
            return total;
        }
    }
}

fn mat_pow_trace(var: &[Vec<i64>], power: u32) -> i64 {
    let n = var.len();
    let mut acc: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..power {
        acc = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| acc[i][k] * var[k][j]).sum())
                    .collect()
            })
            .collect();
    }
    (0..n).map(|i| acc[i][i]).sum()
}

#[test]
fn contraction_matches_explicit_index_sums() {
    // Non-symmetric so the index convention is exercised.
    let var = vec![vec![2, -1, 3], vec![1, 1, 0], vec![-2, 4, 1]];
    let n = var.len();
    for s in [
        "xd", "xdxd", "xxdd", "xdxdxd", "xxdxdd", "xxxddd", "xxdd xd",
    ] {
        let s = s.replace(' ', "");
        let w = word(&s);
        let d = Diagram::single(w.clone());
        let m = w.weight().unwrap() as i32;
        for p in enumerate_pairings(&d) {
            let c = contract_indices(&d, &p);
            let traces: i64 = c.w_cycles.iter().map(|&j| mat_pow_trace(&var, j)).product();
            let predicted = (n as i64).pow(c.delta_loops as u32) * traces;
            assert_eq!(
                brute_force_pairing_sum(&w, &p, n, &var),
                predicted,
                "{s} {:?}",
                p.pairs()
            );
            let mono = contract(&d, &p);
            assert_eq!(mono.n_power, c.delta_loops as i32 - m - 1);
        }
    }
}

#[test]
fn two_point_function() {
    let poly = ginibre_moment_poly(&word("xd"));
    assert_eq!(poly.sigma_power(), 2);
    assert_eq!(poly.len(), 1);
    assert_eq!(poly.coefficient(&part(&[1]), -1), int(1));
    assert_eq!(poly.to_string(), "\u{3c3}^2\u{b7}(Tr W/N)");
}

#[test]
fn four_point_function() {
    let poly = ginibre_moment_poly(&word("xdxd"));
    assert_eq!(poly.sigma_power(), 4);
    assert_eq!(poly.len(), 2);
    assert_eq!(poly.coefficient(&part(&[1, 1]), -2), int(1));
    assert_eq!(poly.coefficient(&part(&[2]), -1), int(1));
}

#[test]
fn six_point_function_with_crossing_term() {
    let poly = ginibre_moment_poly(&Word::alternating(3));
    assert_eq!(poly.sigma_power(), 6);
    assert_eq!(poly.len(), 4);
    assert_eq!(poly.coefficient(&part(&[1, 1, 1]), -3), int(1));
    assert_eq!(poly.coefficient(&part(&[1, 2]), -2), int(3));
    assert_eq!(poly.coefficient(&part(&[3]), -1), int(1));
    assert_eq!(poly.coefficient(&part(&[3]), -3), int(1));
}

#[test]
fn pairing_counts_and_order() {
    assert_eq!(enumerate_pairings(&Diagram::single(word("xd"))).len(), 1);
    assert_eq!(enumerate_pairings(&Diagram::single(word("xdxd"))).len(), 2);
    let six = enumerate_pairings(&Diagram::single(Word::alternating(3)));
    assert_eq!(six.len(), 6);
    assert!(six.windows(2).all(|w| w[0] < w[1]));
    assert!(enumerate_pairings(&Diagram::single(word("xxd"))).is_empty());
    for m in 1..=7 {
        let d = Diagram::single(Word::alternating(m));
        let mut count = 0u64;
        for_each_pairing(&d, |_| count += 1);
        assert_eq!(num_bigint::BigUint::from(count), factorial(m as u64));
    }
}

#[test]
fn contract_examples_for_xdxd() {
    let d = Diagram::single(word("xdxd"));
    // X at 0,2; X† at 1,3.
    let nested = Pairing::new(&d, vec![(0, 3), (2, 1)]).unwrap();
    let adjacent = Pairing::new(&d, vec![(0, 1), (2, 3)]).unwrap();
    let a = contract(&d, &nested);
    let b = contract(&d, &adjacent);
    let mut got = [(a.partition, a.n_power), (b.partition, b.n_power)];
    got.sort();
    assert_eq!(got, [(part(&[1, 1]), -2), (part(&[2]), -1)]);
}

#[test]
fn crossing_examples() {
    let d = Diagram::single(word("xdxd"));
    for p in enumerate_pairings(&d) {
        assert_eq!(is_noncrossing(&d, &p), Ok(true));
        assert_eq!(genus(&d, &p), Ok(0));
    }
    let d1 = Diagram::single(word("xd"));
    let only = &enumerate_pairings(&d1)[0];
    assert_eq!(is_noncrossing(&d1, only), Ok(true));

    // (XD)^3: X at 0,2,4 and X† at 1,3,5; 0-3, 2-5, 4-1 all interleave.
    let d3 = Diagram::single(Word::alternating(3));
    let crossing = Pairing::new(&d3, vec![(0, 3), (2, 5), (4, 1)]).unwrap();
    assert_eq!(is_noncrossing(&d3, &crossing), Ok(false));
    assert_eq!(genus(&d3, &crossing), Ok(1));
    let mono = contract(&d3, &crossing);
    assert_eq!((mono.partition, mono.n_power), (part(&[3]), -3));
    let crossing_count = enumerate_pairings(&d3)
        .iter()
        .filter(|p| !is_noncrossing(&d3, p).unwrap())
        .count();
    assert_eq!(crossing_count, 1);
}

#[test]
fn maximally_crossing_weight_four_has_positive_genus() {
    let d = Diagram::single(word("xxddxxdd"));
    // X at 0,1,4,5; X† at 2,3,6,7.
    let p = Pairing::new(&d, vec![(0, 6), (1, 2), (4, 7), (5, 3)]).unwrap();
    assert_eq!(is_noncrossing(&d, &p), Ok(false));
    assert!(genus(&d, &p).unwrap() >= 1);
    let max = enumerate_pairings(&d)
        .iter()
        .map(|p| genus(&d, p).unwrap())
        .max()
        .unwrap();
    assert!(max >= 1);
}

#[test]
fn multi_loop_diagrams_reject_crossing_queries() {
    let d = Diagram::new(vec![word("xd"), word("xd")]).unwrap();
    let p = &enumerate_pairings(&d)[0];
    assert_eq!(is_noncrossing(&d, p), Err(MultiLoopError { loops: 2 }));
    assert_eq!(genus(&d, p), Err(MultiLoopError { loops: 2 }));
}

#[test]
#[should_panic(expected = "does not belong")]
fn contract_rejects_foreign_pairing() {
    let small = Diagram::single(word("xd"));
    let big = Diagram::single(word("xdxd"));
    let p = &enumerate_pairings(&big)[0];
    contract(&small, p);
}

#[test]
fn diagram_construction_errors() {
    assert_eq!(Diagram::new(vec![]), Err(DiagramError::NoLoops));
    assert_eq!(
        Diagram::new(vec![word("xd"), Word::default()]),
        Err(DiagramError::EmptyLoop(1))
    );
    let d = Diagram::new(vec![word("xd"), word("xxdd")]).unwrap();
    let pos = Position {
        loop_index: 1,
        offset: 2,
    };
    assert_eq!(d.global(pos), 4);
    assert_eq!(d.position(4), pos);
    assert_eq!(d.next(5), 2);
}

#[test]
fn unbalanced_words_vanish() {
    assert!(ginibre_moment_poly(&word("x")).is_zero());
    assert!(ginibre_moment_poly(&word("xxd")).is_zero());
    assert!(tc_coefficients(&word("xxd")).is_empty());
}

#[test]
fn tc_tables() {
    let tc3 = tc_coefficients(&Word::alternating(3));
    assert_eq!(
        tc3.into_iter().collect::<Vec<_>>(),
        [
            (part(&[1, 1, 1]), 1u32.into()),
            (part(&[1, 2]), 3u32.into()),
            (part(&[3]), 1u32.into()),
        ]
    );
    let tc4 = tc_coefficients(&Word::alternating(4));
    assert_eq!(tc4[&part(&[1, 1, 1, 1])], 1u32.into());
    assert_eq!(tc4[&part(&[1, 1, 2])], 6u32.into());
    assert_eq!(tc4[&part(&[1, 3])], 4u32.into());
    assert_eq!(tc4[&part(&[2, 2])], 2u32.into());
    assert_eq!(tc4[&part(&[4])], 1u32.into());
    for m in 1..=6 {
        let tc = tc_coefficients(&Word::from_runs(&[(m, m)]));
        assert_eq!(
            tc.into_iter().collect::<Vec<_>>(),
            [(Partition::new(vec![1; m]).unwrap(), 1u32.into())]
        );
    }
}

#[test]
fn planar_enumerator_matches_genus_zero_filter() {
    for m in 1..=5 {
        let mut buf = Vec::new();
        crate::combinatorics::balanced_words(m, m, &mut buf, &mut |letters| {
            let w = Word::new(letters.to_vec());
            let d = Diagram::single(w.clone());
            let mut brute: Vec<Pairing> = enumerate_pairings(&d)
                .into_iter()
                .filter(|p| is_noncrossing(&d, p).unwrap())
                .collect();
            let mut fast = Vec::new();
            for_each_noncrossing_pairing(&w, |p| fast.push(p.clone()));
            brute.sort();
            fast.sort();
            assert_eq!(brute, fast, "{w}");
            let leading: BTreeMap<Partition, BigRational> = tc_coefficients(&w)
                .into_iter()
                .map(|(p, c)| (p, crate::num::ratio_of(&c)))
                .collect();
            assert_eq!(
                ginibre_moment_poly(&w).leading_coefficients(),
                leading,
                "{w}"
            );
        });
    }
}

#[test]
fn tc_matches_closed_form_for_alternating_words() {
    for m in 1..=6u32 {
        let tc = tc_coefficients(&Word::alternating(m as usize));
        for p in partitions(m) {
            assert_eq!(
                tc.get(&p).cloned().unwrap_or_default(),
                tc_leading(&p),
                "{p}"
            );
        }
    }
}

#[test]
fn identity_substitution_sum_rule() {
    for m in 1..=6usize {
        let poly = ginibre_moment_poly(&Word::alternating(m));
        let plain = poly.substitute_identity();
        assert_eq!(plain.max_power(), Some(0));
        assert_eq!(
            plain.limit(),
            Some(crate::num::ratio_of(&catalan(m as u64)))
        );
        // Σ_p N^{-2g(p)}: every power is even and nonpositive.
        assert!(plain.terms().all(|(e, _)| e <= 0 && e % 2 == 0));
        let total: BigRational = plain.terms().map(|(_, c)| c.clone()).sum();
        assert_eq!(total, crate::num::ratio_of(&factorial(m as u64)));
    }
}
