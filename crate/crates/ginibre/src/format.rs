//! JSON and CSV renderings. JSON objects are built as `serde_json::Value`s
//! whose maps keep keys sorted, so output is byte-stable.

use std::fmt::Write as _;

use ginibre_core::moments::MomentResult;
use ginibre_core::{Laurent, TracePolynomial};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::montecarlo::{Estimate, McConfig, ScalarReport, SpectrumReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

pub fn rational_json(q: &BigRational) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

pub fn laurent_json(l: &Laurent) -> Value {
    let terms: Vec<Value> = l
        .terms()
        .rev()
        .map(|(e, c)| json!({ "n_power": e, "num": c.numer().to_string(), "den": c.denom().to_string() }))
        .collect();
    json!({ "terms": terms, "text": l.to_string() })
}

/// `{"sigma_power": s, "terms": [{"partition", "n_power", "num", "den"}]}`
/// with terms in lexicographic `(partition, n_power)` order.
pub fn trace_polynomial_json(p: &TracePolynomial) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|t| {
            json!({
                "partition": t.partition.parts(),
                "n_power": t.n_power,
                "num": t.coeff.numer().to_string(),
                "den": t.coeff.denom().to_string(),
            })
        })
        .collect();
    json!({ "sigma_power": p.sigma_power(), "terms": terms })
}

pub fn moment_json(r: &MomentResult, symbolic: Option<&TracePolynomial>) -> Value {
    let value = r.value();
    let mut out = json!({
        "word": r.word.to_string(),
        "factors": r.spec.factors(),
        "sigmas": r.spec.sigmas().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "mode": r.mode.as_str(),
        "sigma_power": r.sigma_power,
        "tc_source": r.tc_source.as_str(),
        "value": laurent_json(&value),
        "large_n_limit": value.limit().as_ref().map(rational_json),
    });
    if let Some(p) = symbolic {
        out["trace_polynomial"] = trace_polynomial_json(p);
    }
    out
}

pub const MOMENT_CSV_HEADER: &str = "word,factors,mode,tc_source,n_power,num,den";

/// One row per power of `N` (a single `n_power = 0` row in large-`N` mode;
/// a zero moment gives one row with numerator 0).
pub fn moment_csv(r: &MomentResult) -> String {
    let mut out = String::from(MOMENT_CSV_HEADER);
    out.push('\n');
    let value = r.value();
    let head = format!(
        "{},{},{},{}",
        r.word,
        r.spec.factors(),
        r.mode.as_str(),
        r.tc_source.as_str()
    );
    if value.is_zero() {
        writeln!(out, "{head},0,0,1").unwrap();
    }
    for (e, c) in value.terms().rev() {
        writeln!(out, "{head},{e},{},{}", c.numer(), c.denom()).unwrap();
    }
    out
}

pub fn estimate_json(word: &str, e: &Estimate) -> Value {
    json!({
        "word": word,
        "mean": e.mean,
        "stderr": e.stderr,
        "imag_mean": e.imag_mean,
        "samples": e.samples,
    })
}

pub fn mc_json(cfg: &McConfig, words: &[String], estimates: &[Estimate]) -> Value {
    json!({
        "factors": cfg.factors(),
        "sigmas": cfg.sigmas,
        "size": cfg.size,
        "samples": cfg.samples,
        "seed": cfg.seed,
        "estimates": words.iter().zip(estimates).map(|(w, e)| estimate_json(w, e)).collect::<Vec<_>>(),
    })
}

pub const MC_CSV_HEADER: &str = "word,factors,size,samples,seed,mean,stderr,imag_mean";

pub fn mc_csv(cfg: &McConfig, words: &[String], estimates: &[Estimate]) -> String {
    let mut out = String::from(MC_CSV_HEADER);
    out.push('\n');
    for (w, e) in words.iter().zip(estimates) {
        writeln!(
            out,
            "{w},{},{},{},{},{},{},{}",
            cfg.factors(),
            cfg.size,
            cfg.samples,
            cfg.seed,
            e.mean,
            e.stderr,
            e.imag_mean
        )
        .unwrap();
    }
    out
}

pub fn spectrum_json(cfg: &McConfig, r: &SpectrumReport) -> Value {
    json!({
        "factors": r.factors,
        "sigma": r.sigma,
        "size": cfg.size,
        "samples": cfg.samples,
        "seed": cfg.seed,
        "eigenvalues": r.radii.len(),
        "skipped": r.skipped,
        "sup_dev": r.sup_dev,
        "max_radius": r.radii.last().copied().unwrap_or(0.0),
    })
}

pub const RADIAL_CSV_HEADER: &str = "r,empirical_cdf,theory_cdf";

pub fn radial_csv(r: &SpectrumReport, bins: usize) -> String {
    let mut out = String::from(RADIAL_CSV_HEADER);
    out.push('\n');
    for (x, emp, theory) in r.cdf_table(bins) {
        writeln!(out, "{x},{emp},{theory}").unwrap();
    }
    out
}

pub fn scalar_json(r: &ScalarReport) -> Value {
    json!({
        "samples": r.samples,
        "bins": r.bins.len(),
        "min_count": r.min_count,
        "max_z": r.max_z,
        "covered_mass": r.covered_mass,
    })
}

pub const SCALAR_CSV_HEADER: &str = "bin_center,density,theory,count";

pub fn scalar_csv(r: &ScalarReport) -> String {
    let mut out = String::from(SCALAR_CSV_HEADER);
    out.push('\n');
    for b in &r.bins {
        writeln!(out, "{},{},{},{}", b.center(), b.density, b.theory, b.count).unwrap();
    }
    out
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialise");
    s.push('\n');
    s
}
