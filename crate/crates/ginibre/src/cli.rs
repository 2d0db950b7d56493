//! The `ginibre` command line.
//!
//! Exit codes: 0 success, 2 a `verify` check failed, 64 usage error,
//! 65 enumeration cap exceeded, 1 any other runtime failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use ginibre_core::combinatorics::{
    enumerate_necklaces, fuss_catalan, necklace_count, partitions, tc_leading,
};
use ginibre_core::moments::{
    fc_recursion_check, finite_n_moment, large_n_moment, multi_wishart_moment, MomentError,
};
use ginibre_core::wick::{
    contract, enumerate_pairings, genus, ginibre_moment_poly, is_noncrossing,
};
use ginibre_core::{CapacityError, Diagram, EnsembleSpec, Limits, WishartTable, Word};
use serde_json::{json, Value};

use crate::config::Config;
use crate::format::{self, OutputFormat};
use crate::montecarlo::{
    eigenvalue_radial_report, estimate_word_moments, scalar_product_density_check, McConfig,
};
use crate::verify::{full_checks, quick_checks, Preset, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_TOLERANCE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_CAPACITY: i32 = 65;

/// Largest `m` accepted by `enumerate --partitions`.
const MAX_PARTITION_WEIGHT: u32 = 40;

#[derive(Debug, Parser)]
#[command(
    name = "ginibre",
    version,
    about = "Exact and Monte Carlo moments of products of Ginibre matrices"
)]
pub struct Cli {
    /// `key = value` defaults file (size, samples, max_weight, max_planar_weight, threads).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for sampling; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest weight for full pairing enumeration.
    #[arg(long, global = true)]
    max_weight: Option<usize>,
    /// Largest weight for non-crossing enumeration.
    #[arg(long, global = true)]
    max_planar_weight: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact moment (1/N)<Tr w(X, X†)> of a word.
    Moment(MomentArgs),
    /// List necklaces, pairings or partitions.
    Enumerate(EnumerateArgs),
    /// Fuss-Catalan number, multi-Wishart recursion and its check.
    Fc(FcArgs),
    /// Monte Carlo estimate of word moments.
    Mc(McArgs),
    /// Radial eigenvalue distribution of sampled products.
    Spectrum(SpectrumArgs),
    /// Binned density of a product of two complex Gaussian scalars.
    Scalar(ScalarArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct EnsembleArgs {
    /// Number of Ginibre factors.
    #[arg(long)]
    factors: Option<usize>,
    /// Comma-separated σ_1,...,σ_n (default all 1).
    #[arg(long, value_delimiter = ',')]
    sigma: Vec<String>,
}

#[derive(Debug, Args)]
struct MomentArgs {
    /// Word over x (X) and d (X†), e.g. xdxd, or exponents i1,j1;i2,j2.
    #[arg(long)]
    word: String,
    #[command(flatten)]
    ensemble: EnsembleArgs,
    /// Exact in N (at most 2 factors) instead of the large-N limit.
    #[arg(long)]
    finite_n: bool,
    /// Include the trace polynomial in Tr W^j (JSON only).
    #[arg(long)]
    symbolic: bool,
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct EnumerateWhat {
    /// Necklaces with m beads of each kind.
    #[arg(long, value_name = "M")]
    necklaces: Option<usize>,
    /// All pairings of a word.
    #[arg(long, value_name = "WORD")]
    pairings: Option<String>,
    /// Partitions of m with their planar coefficients.
    #[arg(long, value_name = "M")]
    partitions: Option<u32>,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[command(flatten)]
    what: EnumerateWhat,
    /// With --pairings: report crossing, genus and trace structure.
    #[arg(long)]
    classify: bool,
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct FcArgs {
    /// Fuss-Catalan order n.
    #[arg(long)]
    n: u64,
    /// Moment order m.
    #[arg(long)]
    m: u32,
}

#[derive(Debug, Args)]
struct SamplingArgs {
    /// Matrix size N.
    #[arg(long)]
    size: Option<usize>,
    /// Number of independent samples.
    #[arg(long)]
    samples: Option<usize>,
    /// Seed; every randomised command needs one.
    #[arg(long)]
    seed: u64,
}

#[derive(Debug, Args)]
struct McArgs {
    /// Word to estimate; repeat to share samples across words.
    #[arg(long, required = true)]
    word: Vec<String>,
    #[command(flatten)]
    ensemble: EnsembleArgs,
    #[command(flatten)]
    sampling: SamplingArgs,
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[command(flatten)]
    ensemble: EnsembleArgs,
    #[command(flatten)]
    sampling: SamplingArgs,
    /// Rows of the radial CDF table.
    #[arg(long, default_value_t = 100)]
    bins: usize,
    /// Write the CDF table (r, empirical_cdf, theory_cdf) here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct ScalarArgs {
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 32)]
    bins: usize,
    /// Upper end of the binned |z| range.
    #[arg(long, default_value_t = 8.0)]
    r_max: f64,
    /// Write the table (bin_center, density, theory, count) here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
enum ReportFormat {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Exact checks only.
    #[arg(long, conflicts_with = "full")]
    quick: bool,
    /// Exact checks plus Monte Carlo and spectra (needs --seed).
    #[arg(long, requires = "seed")]
    full: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Preset::Table)]
    preset: Preset,
    #[arg(long, value_enum, default_value_t)]
    format: ReportFormat,
}

/// A failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }

    fn other(message: impl ToString) -> Self {
        Self {
            code: EXIT_FAILURE,
            message: message.to_string(),
        }
    }
}

impl From<CapacityError> for Failure {
    fn from(e: CapacityError) -> Self {
        Self {
            code: EXIT_CAPACITY,
            message: e.to_string(),
        }
    }
}

impl From<MomentError> for Failure {
    fn from(e: MomentError) -> Self {
        match e {
            MomentError::Capacity(c) => c.into(),
            other => Self::usage(other),
        }
    }
}

struct Context {
    config: Config,
    limits: Limits,
}

/// Parses `args` (including the program name) and runs the command, writing
/// to `out` and `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Entry point for the binary.
pub fn main_with_args<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let config = match &cli.config {
        Some(path) => Config::load(path).map_err(Failure::usage)?,
        None => Config::default(),
    };
    let defaults = Limits::default();
    let max_weight = cli
        .max_weight
        .or(config.max_weight)
        .unwrap_or(defaults.max_weight);
    let limits = Limits {
        max_weight,
        max_planar_weight: cli
            .max_planar_weight
            .or(config.max_planar_weight)
            .unwrap_or(defaults.max_planar_weight.max(max_weight)),
    };
    let threads = cli.threads.or(config.threads);
    let ctx = Context { config, limits };
    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(t) = threads {
            if t == 0 {
                return Err(Failure::usage("--threads must be at least 1"));
            }
            builder = builder.num_threads(t);
        }
        builder.build().map_err(Failure::other)?
    };
    let mut buf: Vec<u8> = Vec::new();
    let code = pool.install(|| {
        let out: &mut dyn Write = &mut buf;
        match cli.command {
            Command::Moment(a) => cmd_moment(&ctx, a, out),
            Command::Enumerate(a) => cmd_enumerate(&ctx, a, out),
            Command::Fc(a) => cmd_fc(a, out),
            Command::Mc(a) => cmd_mc(&ctx, a, out),
            Command::Spectrum(a) => cmd_spectrum(&ctx, a, out),
            Command::Scalar(a) => cmd_scalar(a, out),
            Command::Verify(a) => cmd_verify(&ctx, a, out),
        }
    })?;
    out.write_all(&buf).map_err(Failure::other)?;
    Ok(code)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(Failure::other)
}

fn emit_json(out: &mut dyn Write, v: &Value) -> Result<(), Failure> {
    emit(out, &format::to_pretty(v))
}

fn parse_word(text: &str) -> Result<Word, Failure> {
    text.parse::<Word>()
        .map_err(|e| Failure::usage(format!("bad word `{text}`: {e}")))
}

fn exact_spec(e: &EnsembleArgs) -> Result<EnsembleSpec, Failure> {
    if e.sigma.is_empty() {
        return Ok(EnsembleSpec::new(e.factors.unwrap_or(1))?);
    }
    let sigmas = e
        .sigma
        .iter()
        .map(|s| {
            ginibre_core::num::parse_rational(s)
                .ok_or_else(|| Failure::usage(format!("bad sigma `{s}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(n) = e.factors {
        if n != sigmas.len() {
            return Err(Failure::usage(format!(
                "--factors {n} but {} sigma values given",
                sigmas.len()
            )));
        }
    }
    Ok(EnsembleSpec::with_sigmas(sigmas)?)
}

fn mc_config(ctx: &Context, e: &EnsembleArgs, s: &SamplingArgs) -> Result<McConfig, Failure> {
    let spec = exact_spec(e)?;
    let size = s.size.or(ctx.config.size).unwrap_or(200);
    let samples = s.samples.or(ctx.config.samples).unwrap_or(500);
    McConfig::with_sigmas(spec.sigmas_f64(), size, samples, s.seed).map_err(Failure::usage)
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)
        .map_err(|e| Failure::other(format!("cannot write {}: {e}", path.display())))
}

fn cmd_moment(ctx: &Context, a: MomentArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let word = parse_word(&a.word)?;
    let spec = exact_spec(&a.ensemble)?;
    if a.finite_n && spec.factors() > 2 {
        return Err(Failure::usage(format!(
            "--finite-n needs at most 2 factors (got {})",
            spec.factors()
        )));
    }
    let result = if a.finite_n {
        let mut table = WishartTable::new(ctx.limits);
        finite_n_moment(&word, &spec, &mut table)?
    } else {
        large_n_moment(&word, &spec, &ctx.limits)?
    };
    match a.format {
        OutputFormat::Json => {
            let symbolic = if a.symbolic {
                let m = word.weight().unwrap_or(0);
                if m > ctx.limits.max_weight {
                    return Err(CapacityError {
                        weight: m,
                        cap: ctx.limits.max_weight,
                    }
                    .into());
                }
                Some(ginibre_moment_poly(&word))
            } else {
                None
            };
            emit_json(out, &format::moment_json(&result, symbolic.as_ref()))?;
        }
        OutputFormat::Csv => emit(out, &format::moment_csv(&result))?,
    }
    Ok(EXIT_OK)
}

fn cmd_enumerate(ctx: &Context, a: EnumerateArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let w = &a.what;
    if let Some(m) = w.necklaces {
        if m > ctx.limits.max_planar_weight {
            return Err(CapacityError {
                weight: m,
                cap: ctx.limits.max_planar_weight,
            }
            .into());
        }
        let items: Vec<String> = enumerate_necklaces(m)
            .iter()
            .map(|w| w.to_string())
            .collect();
        match a.format {
            OutputFormat::Json => emit_json(
                out,
                &json!({
                    "kind": "necklaces",
                    "m": m,
                    "count": items.len(),
                    "polya_count": necklace_count(m as u64).to_string(),
                    "items": items,
                }),
            )?,
            OutputFormat::Csv => {
                let mut text = String::from("index,word\n");
                for (i, w) in items.iter().enumerate() {
                    text.push_str(&format!("{i},{w}\n"));
                }
                emit(out, &text)?;
            }
        }
    } else if let Some(text) = &w.pairings {
        let word = parse_word(text)?;
        let m = word.weight().unwrap_or(word.len() / 2);
        if m > ctx.limits.max_weight {
            return Err(CapacityError {
                weight: m,
                cap: ctx.limits.max_weight,
            }
            .into());
        }
        let d = Diagram::single(word.clone());
        let pairings = enumerate_pairings(&d);
        let rows: Vec<Value> = pairings
            .iter()
            .map(|p| {
                let mut row = json!({ "pairs": p.pairs() });
                if a.classify {
                    let mono = contract(&d, p);
                    row["noncrossing"] = json!(is_noncrossing(&d, p).expect("single loop"));
                    row["genus"] = json!(genus(&d, p).expect("single loop"));
                    row["partition"] = json!(mono.partition.parts());
                    row["n_power"] = json!(mono.n_power);
                }
                row
            })
            .collect();
        match a.format {
            OutputFormat::Json => emit_json(
                out,
                &json!({ "kind": "pairings", "word": word.to_string(), "count": rows.len(), "items": rows }),
            )?,
            OutputFormat::Csv => {
                let mut text = String::from("index,pairs,noncrossing,genus,partition,n_power\n");
                for (i, r) in rows.iter().enumerate() {
                    let pairs: Vec<String> = r["pairs"]
                        .as_array()
                        .expect("pairs array")
                        .iter()
                        .map(|p| format!("{}-{}", p[0], p[1]))
                        .collect();
                    let field = |k: &str| r.get(k).map(|v| v.to_string()).unwrap_or_default();
                    let partition = r
                        .get("partition")
                        .and_then(Value::as_array)
                        .map(|a| a.iter().map(Value::to_string).collect::<Vec<_>>().join(" "))
                        .unwrap_or_default();
                    text.push_str(&format!(
                        "{i},{},{},{},{partition},{}\n",
                        pairs.join(" "),
                        field("noncrossing"),
                        field("genus"),
                        field("n_power")
                    ));
                }
                emit(out, &text)?;
            }
        }
    } else if let Some(m) = w.partitions {
        if m > MAX_PARTITION_WEIGHT {
            return Err(CapacityError {
                weight: m as usize,
                cap: MAX_PARTITION_WEIGHT as usize,
            }
            .into());
        }
        let parts = partitions(m);
        match a.format {
            OutputFormat::Json => {
                let items: Vec<Value> = parts
                    .iter()
                    .map(|p| json!({ "partition": p.parts(), "tc_leading": tc_leading_or_none(p) }))
                    .collect();
                emit_json(
                    out,
                    &json!({ "kind": "partitions", "m": m, "count": items.len(), "items": items }),
                )?;
            }
            OutputFormat::Csv => {
                let mut text = String::from("index,partition,tc_leading\n");
                for (i, p) in parts.iter().enumerate() {
                    let parts: Vec<String> = p.parts().iter().map(u32::to_string).collect();
                    text.push_str(&format!(
                        "{i},{},{}\n",
                        parts.join(" "),
                        tc_leading_or_none(p).unwrap_or_default()
                    ));
                }
                emit(out, &text)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn tc_leading_or_none(p: &ginibre_core::Partition) -> Option<String> {
    (!p.is_empty()).then(|| tc_leading(p).to_string())
}

fn cmd_fc(a: FcArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if a.m == 0 {
        return Err(Failure::usage("--m must be at least 1"));
    }
    let multi = (a.n >= 1).then(|| multi_wishart_moment(a.n as usize, a.m).to_string());
    let recursion = (a.n >= 1).then(|| fc_recursion_check(a.n as usize + 1, a.m));
    emit_json(
        out,
        &json!({
            "n": a.n,
            "m": a.m,
            "fuss_catalan": fuss_catalan(a.n, u64::from(a.m)).to_string(),
            "multi_wishart": multi,
            "recursion_holds": recursion,
        }),
    )?;
    Ok(EXIT_OK)
}

fn cmd_mc(ctx: &Context, a: McArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let words = a
        .word
        .iter()
        .map(|w| parse_word(w))
        .collect::<Result<Vec<_>, _>>()?;
    let cfg = mc_config(ctx, &a.ensemble, &a.sampling)?;
    let estimates = estimate_word_moments(&words, &cfg);
    let names: Vec<String> = words.iter().map(Word::to_string).collect();
    match a.format {
        OutputFormat::Json => emit_json(out, &format::mc_json(&cfg, &names, &estimates))?,
        OutputFormat::Csv => emit(out, &format::mc_csv(&cfg, &names, &estimates))?,
    }
    Ok(EXIT_OK)
}

fn cmd_spectrum(ctx: &Context, a: SpectrumArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if a.bins == 0 {
        return Err(Failure::usage("--bins must be at least 1"));
    }
    let cfg = mc_config(ctx, &a.ensemble, &a.sampling)?;
    let report = eigenvalue_radial_report(&cfg);
    if let Some(path) = &a.out {
        write_file(path, &format::radial_csv(&report, a.bins))?;
    }
    match a.format {
        OutputFormat::Json => emit_json(out, &format::spectrum_json(&cfg, &report))?,
        OutputFormat::Csv => emit(out, &format::radial_csv(&report, a.bins))?,
    }
    Ok(EXIT_OK)
}

fn cmd_scalar(a: ScalarArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if a.bins == 0 || a.r_max.is_nan() || a.r_max <= 0.0 {
        return Err(Failure::usage("need --bins >= 1 and --r-max > 0"));
    }
    if a.samples < 10_000 {
        return Err(Failure::usage("--samples must be at least 10000"));
    }
    let report =
        scalar_product_density_check(a.samples, a.seed, a.bins, a.r_max).map_err(Failure::other)?;
    if let Some(path) = &a.out {
        write_file(path, &format::scalar_csv(&report))?;
    }
    match a.format {
        OutputFormat::Json => emit_json(out, &format::scalar_json(&report))?,
        OutputFormat::Csv => emit(out, &format::scalar_csv(&report))?,
    }
    Ok(EXIT_OK)
}

fn cmd_verify(ctx: &Context, a: VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut report = VerifyReport {
        checks: quick_checks(&ctx.limits),
    };
    if a.full {
        let seed = a.seed.expect("clap enforces --seed with --full");
        report.checks.extend(full_checks(seed, a.preset));
    }
    match a.format {
        ReportFormat::Json => emit_json(out, &report.to_json())?,
        ReportFormat::Text => emit(out, &report.to_text())?,
    }
    Ok(if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_TOLERANCE
    })
}
