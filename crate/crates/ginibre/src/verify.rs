//! The `verify` suite: exact symbolic checks (`--quick`) plus seeded
//! Monte Carlo and spectral checks (`--full`).

use std::collections::BTreeMap;

use ginibre_core::combinatorics::{catalan, fuss_catalan, partitions, tc_leading};
use ginibre_core::moments::{fc_recursion_check, finite_n_moment_n2, multi_wishart_moment};
use ginibre_core::wick::{
    enumerate_pairings, genus, ginibre_moment_poly, is_noncrossing, tc_coefficients,
};
use ginibre_core::wishart::{wishart_low_moments_closed_form, wishart_multitrace};
use ginibre_core::{
    Diagram, Laurent, Letter, Limits, Partition, TraceMonomial, TracePolynomial, Word,
};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::montecarlo::{
    eigenvalue_radial_report, estimate_word_moments, scalar_product_density_check, McConfig,
};

/// One named comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub obtained: String,
    pub tolerance: String,
    pub pass: bool,
}

impl Check {
    fn exact(name: impl Into<String>, expected: impl ToString, obtained: impl ToString) -> Self {
        let (expected, obtained) = (expected.to_string(), obtained.to_string());
        Self {
            name: name.into(),
            pass: expected == obtained,
            expected,
            obtained,
            tolerance: "exact".into(),
        }
    }

    fn flag(name: impl Into<String>, pass: bool, detail: impl ToString) -> Self {
        Self {
            name: name.into(),
            expected: "true".into(),
            obtained: if pass {
                "true".into()
            } else {
                detail.to_string()
            },
            tolerance: "exact".into(),
            pass,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "expected": c.expected,
                "obtained": c.obtained,
                "tolerance": c.tolerance,
                "pass": c.pass,
            })).collect::<Vec<_>>(),
            "summary": { "total": self.checks.len(), "passed": self.passed(), "failed": self.failed() },
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} {}: expected {}, obtained {} ({})\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.expected,
                c.obtained,
                c.tolerance
            ));
        }
        out.push_str(&format!(
            "{} passed, {} failed\n",
            self.passed(),
            self.failed()
        ));
        out
    }
}

fn poly(sigma_power: u32, terms: &[(&[u32], i32, i64)]) -> TracePolynomial {
    let mut p = TracePolynomial::with_sigma_power(sigma_power);
    for &(parts, n_power, c) in terms {
        p.add_monomial(TraceMonomial {
            partition: Partition::new(parts.to_vec()).expect("positive parts"),
            n_power,
            coeff: BigRational::from_integer(c.into()),
        });
    }
    p
}

fn part(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).expect("positive parts")
}

fn show_table(t: &BTreeMap<Partition, BigUint>) -> String {
    t.iter()
        .map(|(p, c)| format!("{p}:{c}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn all_balanced_words(m: usize) -> impl Iterator<Item = Word> {
    (0u32..1 << (2 * m))
        .filter(move |mask| mask.count_ones() as usize == m)
        .map(move |mask| {
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
}

/// Criteria 1 to 6: exact, no randomness.
pub fn quick_checks(limits: &Limits) -> Vec<Check> {
    let mut out = Vec::new();

    // Symbolic goldens.
    let goldens = [
        ("xd", poly(2, &[(&[1], -1, 1)])),
        ("xdxd", poly(4, &[(&[1, 1], -2, 1), (&[2], -1, 1)])),
        (
            "xdxdxd",
            poly(
                6,
                &[
                    (&[1, 1, 1], -3, 1),
                    (&[1, 2], -2, 3),
                    (&[3], -1, 1),
                    (&[3], -3, 1),
                ],
            ),
        ),
    ];
    for (w, want) in goldens {
        let got = ginibre_moment_poly(&w.parse().expect("valid word"));
        out.push(Check::exact(format!("golden {w}"), &want, &got));
    }

    // Finite-N two-factor six-point moment against the printed expression.
    let printed = Laurent::from_terms(&[(0, 12, 1), (-1, 6, 1), (-2, 12, 1), (-4, 1, 1)]);
    let got = finite_n_moment_n2(&Word::alternating(3), limits).map(|l| l.to_string());
    out.push(Check::exact(
        "finite-N (xd)^3, two factors",
        &printed,
        got.unwrap_or_else(|e| e.to_string()),
    ));

    // Wishart printed values (normalised by N^k) and the delta-formula oracle.
    let printed_wishart: [(&[u32], Laurent); 4] = [
        (&[1], Laurent::from_terms(&[(0, 1, 1)])),
        (&[2], Laurent::from_terms(&[(0, 2, 1)])),
        (&[3], Laurent::from_terms(&[(0, 5, 1), (-2, 1, 1)])),
        (
            &[1, 2],
            Laurent::from_terms(&[(0, 2, 1), (-1, 2, 1), (-2, 2, 1)]),
        ),
    ];
    for (p, want) in printed_wishart {
        let p = part(p);
        let got = wishart_multitrace(&p, limits).map(|l| l.shift(-(p.len() as i32)).to_string());
        out.push(Check::exact(
            format!("wishart {p} normalised"),
            &want,
            got.unwrap_or_else(|e| e.to_string()),
        ));
    }
    for m in 1..=3 {
        for p in partitions(m) {
            let a = wishart_multitrace(&p, limits).map(|l| l.to_string());
            let b = wishart_low_moments_closed_form(&p).map(|l| l.to_string());
            out.push(Check::exact(
                format!("wishart {p} contraction = delta formula"),
                b.unwrap_or_else(|e| e.to_string()),
                a.unwrap_or_else(|e| e.to_string()),
            ));
        }
    }

    // Fuss-Catalan recursion.
    let mut mismatches = Vec::new();
    for n in 1..=5 {
        for m in 1..=5u32 {
            if multi_wishart_moment(n, m) != fuss_catalan(n as u64, u64::from(m)) {
                mismatches.push(format!("W({n},{m})"));
            }
            if n >= 2 && !fc_recursion_check(n, m) {
                mismatches.push(format!("FC recursion ({n},{m})"));
            }
        }
    }
    out.push(Check::flag(
        "multi-Wishart = FC_n(m) and FC recursion, n,m <= 5",
        mismatches.is_empty(),
        mismatches.join(" "),
    ));

    // Planar coefficient tables.
    let mut bad = Vec::new();
    for m in 1..=6usize {
        let tc = tc_coefficients(&Word::alternating(m));
        for p in partitions(m as u32) {
            if tc.get(&p).cloned().unwrap_or_default() != tc_leading(&p) {
                bad.push(format!("m={m} {p}"));
            }
        }
    }
    out.push(Check::flag(
        "tc enumeration = closed form, m <= 6",
        bad.is_empty(),
        bad.join(" "),
    ));
    let table = |rows: &[(&[u32], u32)]| -> BTreeMap<Partition, BigUint> {
        rows.iter()
            .map(|&(p, c)| (part(p), BigUint::from(c)))
            .collect()
    };
    let printed3 = table(&[(&[1, 1, 1], 1), (&[1, 2], 3), (&[3], 1)]);
    let printed5 = table(&[
        (&[1, 1, 1, 1, 1], 1),
        (&[1, 1, 1, 2], 10),
        (&[1, 1, 3], 10),
        (&[1, 4], 5),
        (&[1, 2, 2], 10),
        (&[2, 3], 5),
        (&[5], 1),
    ]);
    out.push(Check::exact(
        "tc table m=3",
        show_table(&printed3),
        show_table(&tc_coefficients(&Word::alternating(3))),
    ));
    out.push(Check::exact(
        "tc table m=5",
        show_table(&printed5),
        show_table(&tc_coefficients(&Word::alternating(5))),
    ));
    let tc4 = tc_coefficients(&Word::alternating(4));
    out.push(Check::exact(
        "tc m=4 (1,1,2)",
        6,
        tc4.get(&part(&[1, 1, 2])).cloned().unwrap_or_default(),
    ));
    out.push(Check::exact(
        "tc m=4 sum = C_4",
        catalan(4),
        tc4.values().sum::<BigUint>(),
    ));

    // Genus dichotomy.
    let mut violations = 0usize;
    let mut pairings = 0usize;
    for m in 1..=6 {
        for w in all_balanced_words(m) {
            let d = Diagram::single(w);
            for p in enumerate_pairings(&d) {
                pairings += 1;
                let planar = is_noncrossing(&d, &p).expect("single loop");
                if (genus(&d, &p).expect("single loop") == 0) != planar {
                    violations += 1;
                }
            }
        }
    }
    out.push(Check::exact(
        format!("genus 0 <=> non-crossing over {pairings} pairings"),
        0,
        violations,
    ));
    out
}

/// Monte Carlo scale for the word-moment tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Preset {
    /// `N = 500`, 1500 samples, 2% tolerance.
    Table,
    /// `N = 200`, 500 samples, 3% tolerance.
    Desk,
}

impl Preset {
    pub fn config(self, factors: usize, seed: u64) -> McConfig {
        match self {
            Preset::Table => McConfig::table_preset(factors, seed),
            Preset::Desk => McConfig::desk_preset(factors, seed),
        }
    }

    pub fn tolerance(self) -> f64 {
        match self {
            Preset::Table => 0.02,
            Preset::Desk => 0.03,
        }
    }
}

/// `X^m X† X X†^m`, whose large-`N` moment is `n + 1` for `n` factors.
pub fn switch_word(m: usize) -> Word {
    Word::from_runs(&[(m, 1), (1, m)])
}

/// Criteria 7 to 10.
pub fn full_checks(seed: u64, preset: Preset) -> Vec<Check> {
    let mut out = Vec::new();
    let tol = preset.tolerance();
    let words: Vec<Word> = (1..=4).map(switch_word).collect();
    for n in 2..=4 {
        let cfg = preset.config(n, seed);
        let target = (n + 1) as f64;
        for (w, e) in words.iter().zip(estimate_word_moments(&words, &cfg)) {
            let rel = e.relative_error(target);
            out.push(Check {
                name: format!("mc {w} n={n} N={} S={}", cfg.size, cfg.samples),
                expected: target.to_string(),
                obtained: format!("{:.4} +- {:.4}", e.mean, e.stderr),
                tolerance: format!("relative {tol}"),
                pass: rel <= tol,
            });
        }
    }
    for n in 1..=3 {
        let cfg = McConfig::new(n, 1000, 1, seed).expect("valid config");
        let r = eigenvalue_radial_report(&cfg);
        out.push(Check {
            name: format!("radial law n={n} N=1000"),
            expected: "sup_dev <= 0.03".into(),
            obtained: format!("{:.4} (skipped {})", r.sup_dev, r.skipped),
            tolerance: "0.03".into(),
            pass: r.sup_dev <= 0.03 && r.skipped == 0,
        });
    }
    match scalar_product_density_check(100_000, seed, 32, 8.0) {
        Ok(r) => out.push(Check {
            name: "scalar product density, 1e5 samples".into(),
            expected: "max |z| <= 3".into(),
            obtained: format!("{:.3}", r.max_z),
            tolerance: "3 binomial stderr".into(),
            pass: r.max_z <= 3.0,
        }),
        Err(e) => out.push(Check::flag("scalar product density, 1e5 samples", false, e)),
    }
    out
}
