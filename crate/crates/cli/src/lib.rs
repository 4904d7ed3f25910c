//! Command-line front end: symmetrization of JSON input, verification suites
//! with a per-config result cache, and tables of the central elements.

pub mod cache;
pub mod checks;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use superschur::algebra::{FormalSum, SpaceSpec, SymMonomial, Word};
use superschur::central::{
    a_rho, i_rho, j_rho, q_rho, verify_thm24_with, verify_thm25_with, DualityKind, IntegerPartition,
    InvariantConvention, ComparisonReport, VerifyOptions,
};
use superschur::duality::verify_duality;
use superschur::groups::GroupAlgebraElement;
use superschur::symmetrization::{sigma, sigma_tilde_closed_sum};
use superschur::tensor::{ExactMatrix, TensorSpace};

use crate::cache::Cache;
use crate::checks::PropertyOutcome;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] superschur::Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "superschur", version, about = "Special symmetrization and central elements for gl(m|n) and Q(n)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Apply σ̃ (word sums to S) or, with --inverse, σ (S to word sums).
    Symmetrize(SymmetrizeArgs),
    /// Run a verification suite and write a JSON report.
    Verify(VerifyArgs),
    /// Print the central elements and their symmetrizations as JSON tables.
    DumpCentral(DumpArgs),
}

#[derive(Args, Debug, Clone, Copy)]
pub struct SpaceArgs {
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
}

impl SpaceArgs {
    fn gl(&self) -> CliResult<SpaceSpec> {
        match (self.m, self.n) {
            (Some(m), Some(n)) => Ok(SpaceSpec::new(m, n)?),
            _ => Err(CliError::Config("both --m and --n are required".into())),
        }
    }

    fn queer(&self) -> CliResult<SpaceSpec> {
        let n = self.n.ok_or_else(|| CliError::Config("--n is required".into()))?;
        if let Some(m) = self.m {
            if m != n {
                return Err(CliError::Config(format!("Q(n) needs m = n, got m = {m}, n = {n}")));
            }
        }
        Ok(SpaceSpec::queer(n)?)
    }
}

#[derive(Args, Debug)]
pub struct SymmetrizeArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Map S-monomial sums back to word sums.
    #[arg(long)]
    pub inverse: bool,
    /// Input JSON file; stdin when omitted.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Thm24,
    Thm25,
    Duality,
    Properties,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Perturb {
    UnsignedTrace,
    HalfRange,
}

impl From<Perturb> for InvariantConvention {
    fn from(p: Perturb) -> Self {
        match p {
            Perturb::UnsignedTrace => InvariantConvention::UnsignedTrace,
            Perturb::HalfRange => InvariantConvention::HalfRange,
        }
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long = "N")]
    pub factors: usize,
    /// Comma-separated partition; every partition with |ρ| <= N when omitted.
    #[arg(long)]
    pub rho: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Allow |ρ| > N, where the group side is the empty sum.
    #[arg(long)]
    pub experimental: bool,
    #[arg(long, value_enum, hide = true)]
    pub perturb: Option<Perturb>,
}

#[derive(Args, Debug)]
pub struct DumpArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long = "N")]
    pub factors: usize,
    #[arg(long)]
    pub rho: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Process exit status for a finished command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }
}

pub const CONFIG_ERROR: i32 = 2;

pub fn run(cli: Cli) -> CliResult<Status> {
    match cli.command {
        Command::Symmetrize(a) => cmd_symmetrize(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::DumpCentral(a) => cmd_dump_central(&a),
    }
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

pub fn parse_rho(s: &str) -> CliResult<IntegerPartition> {
    s.parse::<IntegerPartition>().map_err(|e| CliError::Config(format!("--rho {s:?}: {e}")))
}

fn rho_list(rho: Option<&str>, factors: usize, experimental: bool) -> CliResult<Vec<IntegerPartition>> {
    match rho {
        None => Ok(IntegerPartition::up_to(factors)),
        Some(s) => {
            let r = parse_rho(s)?;
            if r.weight() > factors && !experimental {
                return Err(CliError::Config(format!(
                    "|ρ| = {} exceeds N = {factors}; pass --experimental to allow it",
                    r.weight()
                )));
            }
            Ok(vec![r])
        }
    }
}

pub fn cmd_symmetrize(args: &SymmetrizeArgs) -> CliResult<Status> {
    let spec = args.space.gl()?;
    let mut input = String::new();
    match &args.input {
        Some(p) => input = fs::read_to_string(p)?,
        None => {
            io::stdin().read_to_string(&mut input)?;
        }
    }
    let output = if args.inverse {
        let a = FormalSum::<SymMonomial>::from_json_str(&spec, &input)?;
        sigma(&spec, &a).to_json_string()
    } else {
        let u = FormalSum::<Word>::from_json_str(&spec, &input)?;
        sigma_tilde_closed_sum(&spec, &u).to_json_string()
    };
    emit(args.out.as_deref(), &(output + "\n"))?;
    Ok(Status::Pass)
}

/// Everything that determines a verify result; its hash keys the cache.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub m: usize,
    pub n: usize,
    #[serde(rename = "N")]
    pub factors: usize,
    pub rho: Option<String>,
    pub seed: Option<u64>,
    pub experimental: bool,
    pub perturb: Option<Perturb>,
    pub version: String,
}

impl VerifyConfig {
    pub fn hash(&self) -> String {
        let text = serde_json::to_string(self).expect("config serializes");
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub pass: bool,
    pub lhs_hash: String,
    pub rhs_hash: String,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub detail: Value,
}

pub fn matrix_hash(m: &ExactMatrix) -> String {
    hex::encode(Sha256::digest(m.canonical_string().as_bytes()))
}

fn combined_hash<'a>(hashes: impl Iterator<Item = &'a String>) -> String {
    let mut h = Sha256::new();
    for x in hashes {
        h.update(x.as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

fn kind_name(k: DualityKind) -> &'static str {
    match k {
        DualityKind::Symmetric => "symmetric",
        DualityKind::Sergeev => "sergeev",
    }
}

fn dims_hash(dims: &[usize]) -> String {
    combined_hash(dims.iter().map(usize::to_string).collect::<Vec<_>>().iter())
}

fn comparison_record(label: &str, r: &ComparisonReport) -> CheckRecord {
    CheckRecord {
        name: format!("{label} {} N={} rho={}", r.spec, r.factors, r.rho),
        pass: r.pass,
        lhs_hash: matrix_hash(&r.lhs),
        rhs_hash: matrix_hash(&r.rhs),
        detail: Value::Null,
    }
}

fn property_record(p: PropertyOutcome) -> CheckRecord {
    CheckRecord {
        name: p.name.clone(),
        pass: p.pass(),
        lhs_hash: p.lhs_hash.clone(),
        rhs_hash: p.rhs_hash.clone(),
        detail: serde_json::to_value(&p).expect("outcome serializes"),
    }
}

fn resolve_config(args: &VerifyArgs) -> CliResult<(VerifyConfig, SpaceSpec)> {
    let spec = match args.suite {
        Suite::Thm25 => args.space.queer()?,
        _ => args.space.gl()?,
    };
    if args.suite == Suite::Duality && args.rho.is_some() {
        return Err(CliError::Config("--rho does not apply to the duality suite".into()));
    }
    if args.factors == 0 && matches!(args.suite, Suite::Duality | Suite::Properties) {
        return Err(CliError::Config("--N must be positive for this suite".into()));
    }
    let rho = match &args.rho {
        Some(s) => {
            let r = parse_rho(s)?;
            rho_list(Some(s), args.factors, args.experimental)?;
            Some(r.parts().iter().map(usize::to_string).collect::<Vec<_>>().join(","))
        }
        None => None,
    };
    let config = VerifyConfig {
        suite: args.suite,
        m: spec.m(),
        n: spec.n(),
        factors: args.factors,
        rho,
        seed: (args.suite == Suite::Properties).then_some(args.seed),
        experimental: args.experimental,
        perturb: args.perturb,
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    Ok((config, spec))
}

fn run_checks(config: &VerifyConfig, spec: &SpaceSpec) -> CliResult<Vec<CheckRecord>> {
    let opts = VerifyOptions {
        convention: config.perturb.map(Into::into).unwrap_or_default(),
        allow_oversized: config.experimental,
    };
    let n = config.factors;
    match config.suite {
        Suite::Thm24 | Suite::Thm25 => {
            let rhos = rho_list(config.rho.as_deref(), n, config.experimental)?;
            rhos.par_iter()
                .map(|rho| {
                    Ok(if config.suite == Suite::Thm24 {
                        comparison_record("thm24", &verify_thm24_with(spec, n, rho, opts)?)
                    } else {
                        comparison_record("thm25", &verify_thm25_with(spec.n(), n, rho, opts)?)
                    })
                })
                .collect()
        }
        Suite::Duality => {
            let mut kinds = vec![DualityKind::Symmetric];
            if spec.is_queer() {
                kinds.push(DualityKind::Sergeev);
            }
            kinds
                .par_iter()
                .map(|&k| {
                    let r = verify_duality(spec, n, k)?;
                    let dims = serde_json::to_value(&r).expect("report serializes");
                    let d = &r.dims;
                    Ok(CheckRecord {
                        name: format!("duality {} {spec} N={n}", kind_name(k)),
                        pass: r.pass,
                        lhs_hash: dims_hash(&[d.group_span, d.algebra_span]),
                        rhs_hash: dims_hash(&[d.commutant_of_algebra, d.commutant_of_group]),
                        detail: dims,
                    })
                })
                .collect()
        }
        Suite::Properties => Ok(run_properties(spec, n, config.seed.unwrap_or(0)).into_iter().map(property_record).collect()),
    }
}

/// The property battery at moderate sizes; every random draw comes from one
/// generator seeded by `seed`.
pub fn run_properties(spec: &SpaceSpec, factors: usize, seed: u64) -> Vec<PropertyOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = TensorSpace::new(*spec, factors);
    let mut out = vec![
        checks::sigma_tilde_consistency(spec, 0..=3, 20, 5, &mut rng),
        checks::enveloping_relations(spec, 50, 5, &mut rng),
        checks::round_trip(spec, 3),
    ];
    let (ops, applied) = checks::differential_operators(spec, 2, 2);
    out.push(ops);
    out.push(applied);
    out.push(checks::tree_action(&space, 2));
    out.push(checks::ratio_property(&space, 10, 3, 1, &mut rng));
    out
}

/// Runs (or loads) the suite; returns the report text and its pass flag.
pub fn verify_report(args: &VerifyArgs) -> CliResult<(String, bool)> {
    let (config, spec) = resolve_config(args)?;
    let hash = config.hash();
    let cache = args.cache_dir.as_deref().map(Cache::open).transpose()?;
    if let Some(text) = cache.as_ref().and_then(|c| c.load(&hash)) {
        let pass = serde_json::from_str::<Value>(&text)
            .ok()
            .and_then(|v| v.get("pass").and_then(Value::as_bool));
        if let Some(pass) = pass {
            eprintln!("cache hit {hash}");
            return Ok((text, pass));
        }
    }
    let start = Instant::now();
    let records = run_checks(&config, &spec)?;
    let pass = !records.is_empty() && records.iter().all(|r| r.pass);
    for r in &records {
        eprintln!("{} {}", if r.pass { "PASS" } else { "FAIL" }, r.name);
    }
    let report = json!({
        "config": config,
        "config_hash": hash,
        "pass": pass,
        "lhs_hash": combined_hash(records.iter().map(|r| &r.lhs_hash)),
        "rhs_hash": combined_hash(records.iter().map(|r| &r.rhs_hash)),
        "checks": records,
        "timing": { "elapsed_ms": start.elapsed().as_millis() as u64 },
    });
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    if let Some(c) = &cache {
        c.store(&hash, &text)?;
    }
    Ok((text, pass))
}

pub fn cmd_verify(args: &VerifyArgs) -> CliResult<Status> {
    let (text, pass) = verify_report(args)?;
    emit(args.out.as_deref(), &text)?;
    Ok(if pass { Status::Pass } else { Status::Fail })
}

pub fn central_tables(spec: &SpaceSpec, factors: usize, rho: Option<&str>) -> CliResult<Value> {
    let rhos = rho_list(rho, factors, false)?;
    let mut entries = Vec::new();
    for r in &rhos {
        let i = i_rho(spec, r);
        let mut entry = json!({
            "rho": r.to_string(),
            "a_rho": GroupAlgebraElement::Symmetric(a_rho(r, factors)?).to_json_value(),
            "I_rho": i.to_json_value(),
            "sigma_I_rho": sigma(spec, &i).to_json_value(),
        });
        if spec.is_queer() {
            let j = j_rho(spec, r)?;
            entry["q_rho"] = GroupAlgebraElement::Sergeev(q_rho(r, factors)?).to_json_value();
            entry["J_rho"] = j.to_json_value();
            entry["sigma_J_rho"] = sigma(spec, &j).to_json_value();
        }
        entries.push(entry);
    }
    Ok(json!({
        "space": spec.to_string(),
        "N": factors,
        "entries": entries,
    }))
}

pub fn cmd_dump_central(args: &DumpArgs) -> CliResult<Status> {
    let spec = args.space.gl()?;
    let tables = central_tables(&spec, args.factors, args.rho.as_deref())?;
    emit(args.out.as_deref(), &(serde_json::to_string_pretty(&tables).expect("tables serialize") + "\n"))?;
    Ok(Status::Pass)
}
