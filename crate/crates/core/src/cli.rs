//! Command-line front end: `generate`, `verify`, `validate` and `inspect`.
//!
//! Exit codes: 0 success, 1 validation or verification failure, 2 no curve
//! within `max_trials`, 3 parse or I/O error, 4 usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use num_traits::Num;
use serde::Deserialize;
use serde_json::json;

use crate::arith::{Factorization, PrimeModulus};
use crate::config::{CubicInvariantMode, DescentConfig};
use crate::curve::{ExternalCounter, OrderData, PointCounting};
use crate::error::PipelineError;
use crate::pipeline::{generate, validate_external, GenerationConfig, DEFAULT_ORDER_CHECK_POINTS};
use crate::reconcile::CurveParams;
use crate::stream::{parse_seed, SeedContext};
use crate::transcript::{self, canonical_json, OrderRecord, Transcript, VerifyOptions};
use crate::validate::{Policy, Profile, ValidationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_MAX_TRIALS: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_USAGE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "selmergen", version, about = "Deterministic curve generation from descent data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a curve and write its transcript.
    Generate(GenerateArgs),
    /// Re-derive a transcript and report the first divergence.
    Verify(VerifyArgs),
    /// Count and validate the curve with given (c4, c6).
    Validate(ValidateArgs),
    /// Summarize a transcript.
    Inspect(InspectArgs),
}

#[derive(Debug, Args)]
pub struct CountingArgs {
    /// External point counter: reads p, A, B as decimal lines, prints N.
    #[arg(long)]
    pub counter_cmd: Option<String>,
    /// Largest prime size, in bits, for the built-in counter.
    #[arg(long)]
    pub builtin_max_bits: Option<u64>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Prime modulus, decimal or 0x-prefixed hex.
    #[arg(long)]
    pub prime: String,
    /// Domain separator.
    #[arg(long)]
    pub ds: String,
    /// 32-byte seed as 64 hex digits.
    #[arg(long)]
    pub seed: String,
    /// JSON file with defaults for the options below.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub policy: Option<Profile>,
    #[arg(long)]
    pub max_trials: Option<u64>,
    /// Comma-separated small primes for the local solubility scans.
    #[arg(long, value_delimiter = ',')]
    pub ell_set: Option<Vec<u64>>,
    /// Abscissae tried over F_p for each quartic.
    #[arg(long)]
    pub search_bound: Option<u64>,
    /// Abscissae tried over F_p for each cubic.
    #[arg(long)]
    pub cubic_search_bound: Option<u64>,
    #[arg(long)]
    pub stage_budget: Option<u64>,
    /// `classical` or `hash_placeholder`.
    #[arg(long)]
    pub cubic_invariants: Option<CubicInvariantMode>,
    #[command(flatten)]
    pub counting: CountingArgs,
    /// Transcript destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the summary as canonical JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub transcript: PathBuf,
    /// Re-validate the recorded curve under this profile.
    #[arg(long)]
    pub policy: Option<Profile>,
    #[command(flatten)]
    pub counting: CountingArgs,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub prime: String,
    #[arg(long, allow_hyphen_values = true)]
    pub c4: String,
    #[arg(long, allow_hyphen_values = true)]
    pub c6: String,
    #[arg(long)]
    pub policy: Option<Profile>,
    #[command(flatten)]
    pub counting: CountingArgs,
    /// Canonical single-line JSON instead of indented JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    pub transcript: PathBuf,
    #[arg(long)]
    pub json: bool,
}

/// Optional defaults for `generate`, read from `--config`. Flags win.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub policy: Option<Profile>,
    pub max_trials: Option<u64>,
    pub k_max: Option<u64>,
    pub cm_disc_bound: Option<u64>,
    pub exclude_traces: Option<Vec<i64>>,
    pub ell_set: Option<Vec<u64>>,
    pub search_bound: Option<u64>,
    pub cubic_search_bound: Option<u64>,
    pub stage_budget: Option<u64>,
    pub cubic_invariants: Option<CubicInvariantMode>,
    pub counter_cmd: Option<String>,
    pub builtin_max_bits: Option<u64>,
    pub order_check_points: Option<u64>,
}

enum Failure {
    Usage(String),
    Io(String),
}

impl Failure {
    fn report(self, err: &mut dyn Write) -> i32 {
        match self {
            Failure::Usage(m) => {
                let _ = writeln!(err, "error: {m}");
                EXIT_USAGE
            }
            Failure::Io(m) => {
                let _ = writeln!(err, "error: {m}");
                EXIT_IO
            }
        }
    }
}

/// Parse arguments and run one command, returning the exit code.
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
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(a, out, err),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Validate(a) => cmd_validate(a, out, err),
        Command::Inspect(a) => cmd_inspect(a, out),
    };
    result.unwrap_or_else(|f| f.report(err))
}

fn parse_uint(what: &str, s: &str) -> Result<BigUint, Failure> {
    let parsed = match s.strip_prefix("0x") {
        Some(h) => BigUint::from_str_radix(h, 16),
        None => BigUint::from_str_radix(s, 10),
    };
    parsed.map_err(|_| Failure::Usage(format!("--{what}: `{s}` is not a non-negative integer")))
}

fn parse_prime(s: &str) -> Result<PrimeModulus, Failure> {
    PrimeModulus::new(parse_uint("prime", s)?).map_err(|e| Failure::Usage(format!("--prime: {e}")))
}

/// Integers that may be negative, reduced mod p.
fn parse_residue(what: &str, s: &str, m: &PrimeModulus) -> Result<BigUint, Failure> {
    match s.strip_prefix('-') {
        Some(mag) => {
            let v = parse_uint(what, mag)? % m.p();
            Ok((m.p() - v) % m.p())
        }
        None => parse_uint(what, s),
    }
}

fn counting(args: &CountingArgs, file: &ConfigFile) -> Result<PointCounting, Failure> {
    let mut c = PointCounting::default();
    if let Some(bits) = args.builtin_max_bits.or(file.builtin_max_bits) {
        c.builtin_max_bits = bits;
    }
    if let Some(cmd) = args.counter_cmd.as_ref().or(file.counter_cmd.as_ref()) {
        let ext = ExternalCounter::from_command_line(cmd)
            .ok_or_else(|| Failure::Usage("--counter-cmd is empty".into()))?;
        c.external = Some(std::sync::Arc::new(ext));
    }
    Ok(c)
}

fn read_file(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_config(path: Option<&Path>) -> Result<ConfigFile, Failure> {
    let Some(path) = path else {
        return Ok(ConfigFile::default());
    };
    let data = read_file(path)?;
    serde_json::from_slice(&data).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn generation_config(a: &GenerateArgs, file: &ConfigFile, m: &PrimeModulus) -> Result<GenerationConfig, Failure> {
    let profile = a.policy.or(file.policy);
    let mut policy = match profile {
        Some(p) => Policy::from_profile(p, m),
        None => Policy::for_modulus(m),
    };
    if let Some(v) = a.max_trials.or(file.max_trials) {
        policy.max_trials = v;
    }
    if let Some(v) = file.k_max {
        policy.k_max = v;
    }
    if let Some(v) = file.cm_disc_bound {
        policy.cm_disc_bound = v;
    }
    if let Some(v) = &file.exclude_traces {
        policy.exclude_traces = v.clone();
    }
    let d = DescentConfig::default();
    let descent = DescentConfig {
        ell_set: a.ell_set.clone().or_else(|| file.ell_set.clone()).unwrap_or(d.ell_set),
        quartic_search_bound: a.search_bound.or(file.search_bound).unwrap_or(d.quartic_search_bound),
        cubic_search_bound: a
            .cubic_search_bound
            .or(file.cubic_search_bound)
            .unwrap_or(d.cubic_search_bound),
        stage_budget: a.stage_budget.or(file.stage_budget).unwrap_or(d.stage_budget),
        cubic_mode: a.cubic_invariants.or(file.cubic_invariants).unwrap_or(d.cubic_mode),
    };
    let cfg = GenerationConfig {
        descent,
        policy,
        counting: counting(&a.counting, file)?,
        order_check_points: file.order_check_points.unwrap_or(DEFAULT_ORDER_CHECK_POINTS),
    };
    cfg.check().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(cfg)
}

fn cmd_generate(a: GenerateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let m = parse_prime(&a.prime)?;
    let sigma = parse_seed(&a.seed).map_err(|e| Failure::Usage(format!("--seed: {e}")))?;
    let ctx = SeedContext::new(m.clone(), a.ds.clone(), sigma).map_err(|e| Failure::Usage(format!("--ds: {e}")))?;
    let file = load_config(a.config.as_deref())?;
    let cfg = generation_config(&a, &file, &m)?;

    let generated = match generate(&ctx, &cfg) {
        Ok(g) => g,
        Err(e @ PipelineError::MaxTrialsExceeded { .. }) => {
            let _ = writeln!(err, "error: {e}");
            if let PipelineError::MaxTrialsExceeded {
                reconcile_singular,
                validation_failed,
                ..
            } = e
            {
                let _ = writeln!(
                    err,
                    "retries: {reconcile_singular} singular reconciliations, {validation_failed} validation failures"
                );
            }
            return Ok(EXIT_MAX_TRIALS);
        }
        Err(e @ PipelineError::Config(_)) => return Err(Failure::Usage(e.to_string())),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return Ok(EXIT_FAIL);
        }
    };

    let tr = &generated.transcript;
    let bytes = transcript::serialize(tr);
    let summary_text = summary(tr);
    let summary_json = canonical_json(&summary_value(tr));
    match &a.out {
        Some(path) => {
            std::fs::write(path, &bytes).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            if a.json {
                let _ = out.write_all(&summary_json);
                let _ = writeln!(out);
            } else {
                let _ = write!(out, "{summary_text}");
            }
        }
        None => {
            let _ = out.write_all(&bytes);
            let _ = writeln!(out);
            if !a.json {
                let _ = write!(err, "{summary_text}");
            }
        }
    }
    Ok(EXIT_OK)
}

fn load_transcript(path: &Path) -> Result<Transcript, Failure> {
    let mut data = read_file(path)?;
    // tolerate the single trailing newline written by `generate`
    if data.last() == Some(&b'\n') {
        data.pop();
    }
    transcript::parse(&data).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let tr = load_transcript(&a.transcript)?;
    let m = PrimeModulus::new(tr.inputs.p.clone()).map_err(|e| Failure::Io(format!("p: {e}")))?;
    let opts = VerifyOptions {
        counting: counting(&a.counting, &ConfigFile::default())?,
        policy_override: a.policy.map(|p| Policy::from_profile(p, &m)),
    };
    let report = transcript::verify(&tr, &opts);
    if a.json {
        let _ = out.write_all(&canonical_json(&report));
        let _ = writeln!(out);
    } else {
        for c in &report.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            let _ = writeln!(out, "{mark} {:<15} {}", c.stage.as_str(), c.detail);
        }
        match (report.first_divergence, report.complete) {
            (Some(stage), _) => {
                let _ = writeln!(out, "divergence at stage {stage}");
            }
            (None, false) => {
                let _ = writeln!(out, "partial verification: some stages were not re-derived");
            }
            (None, true) => {
                let _ = writeln!(out, "transcript verified");
            }
        }
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_validate(a: ValidateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let m = parse_prime(&a.prime)?;
    let c4 = parse_residue("c4", &a.c4, &m)?;
    let c6 = parse_residue("c6", &a.c6, &m)?;
    let policy = match a.policy {
        Some(p) => Policy::from_profile(p, &m),
        None => Policy::for_modulus(&m),
    };
    let counting = counting(&a.counting, &ConfigFile::default())?;
    match validate_external(&m, &c4, &c6, &policy, &counting) {
        Ok((params, od, report)) => {
            let value = validation_value(&params, &od, &policy, &report);
            let text = if a.json {
                String::from_utf8(canonical_json(&value)).expect("utf-8")
            } else {
                serde_json::to_string_pretty(&value).expect("serializes")
            };
            let _ = writeln!(out, "{text}");
            Ok(if report.passed { EXIT_OK } else { EXIT_FAIL })
        }
        Err(e @ PipelineError::SingularInput { .. }) => {
            let _ = writeln!(err, "error: {e}");
            let value = json!({ "error": "singular_input", "detail": e.to_string() });
            let _ = out.write_all(&canonical_json(&value));
            let _ = writeln!(out);
            Ok(EXIT_FAIL)
        }
        Err(e @ PipelineError::Config(_)) => Err(Failure::Usage(e.to_string())),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            Ok(EXIT_FAIL)
        }
    }
}

fn cmd_inspect(a: InspectArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let tr = load_transcript(&a.transcript)?;
    if a.json {
        let _ = out.write_all(&canonical_json(&summary_value(&tr)));
        let _ = writeln!(out);
    } else {
        let _ = write!(out, "{}", summary(&tr));
    }
    Ok(EXIT_OK)
}

fn validation_value(
    params: &CurveParams,
    od: &OrderData,
    policy: &Policy,
    report: &ValidationReport,
) -> serde_json::Value {
    let hex = |v: &BigUint| v.to_str_radix(16);
    json!({
        "curve": {
            "p": hex(params.modulus().p()),
            "c4": hex(params.c4.value()),
            "c6": hex(params.c6.value()),
            "delta": hex(params.delta.value()),
            "a": hex(params.a().value()),
            "b": hex(params.b().value()),
        },
        "order": OrderRecord::from_order_data(od),
        "policy": policy,
        "validation": report,
    })
}

fn summary_value(tr: &Transcript) -> serde_json::Value {
    json!({
        "schema_version": tr.schema_version,
        "inputs": tr.inputs,
        "trial_index": crate::transcript::hexfmt::HexCodec::encode_hex(&tr.trial_index),
        "reconciliation": tr.reconciliation,
        "order": tr.order,
        "validation": tr.validation,
        "content_digest": tr.content_digest,
        "digest_ok": tr.digest_matches(),
    })
}

fn factor_string(n: &BigUint, factors: &[(BigUint, u32)]) -> String {
    let f = Factorization::complete(factors.to_vec());
    if factors.is_empty() || f.product() != *n {
        return n.to_string();
    }
    let parts: Vec<String> = factors
        .iter()
        .map(|(q, e)| if *e == 1 { q.to_string() } else { format!("{q}^{e}") })
        .collect();
    format!("{n} = {}", parts.join(" * "))
}

/// Human summary in the row layout of a parameter table.
pub fn summary(tr: &Transcript) -> String {
    let r = &tr.reconciliation;
    let o = &tr.order;
    let v = &tr.validation;
    let mut s = String::new();
    let mut row = |k: &str, val: String| {
        let _ = writeln!(s, "{k:<28} {val}");
    };
    row("Prime p", tr.inputs.p.to_string());
    row("Domain separator", tr.inputs.ds.clone());
    row("Seed", ::hex::encode(tr.inputs.sigma));
    row("Trial index", tr.trial_index.to_string());
    row("c4", r.c4.to_string());
    row("c6", r.c6.to_string());
    row("Discriminant", r.delta.to_string());
    row("Curve", format!("y^2 = x^3 + {} x + {}", r.a, r.b));
    row("Group order #E", factor_string(&o.n, &o.factors));
    row("Cofactor h", o.h.to_string());
    row("Prime order r", o.r.to_string());
    row("Twist order #E'", factor_string(&o.n_twist, &o.twist_factors));
    row("Twist cofactor h'", o.h_twist.to_string());
    row("Trace t", o.trace.to_string());
    row(
        "CM discriminant D0",
        v.cm_fundamental_disc.as_ref().map_or("-".into(), ToString::to_string),
    );
    row(
        "Embedding degree",
        match v.embedding_k_found {
            Some(k) => format!("k = {k}"),
            None => format!("none detected (k <= {})", tr.policy.k_max),
        },
    );
    let verdicts: Vec<String> = v
        .checks()
        .iter()
        .map(|(n, c)| format!("{n} {}", if c.passed { "pass" } else { "fail" }))
        .collect();
    row("Validation", verdicts.join(", "));
    s
}

/// Table rows for a bare validation run, for callers that want text.
pub fn validation_rows(params: &CurveParams, od: &OrderData, report: &ValidationReport, k_max: u64) -> String {
    let tr_like = OrderRecord::from_order_data(od);
    let mut s = String::new();
    let _ = writeln!(s, "{:<28} {}", "Discriminant", params.delta);
    let _ = writeln!(s, "{:<28} {}", "Group order #E", factor_string(&tr_like.n, &tr_like.factors));
    let _ = writeln!(s, "{:<28} {}", "Cofactor h", od.h);
    let _ = writeln!(s, "{:<28} {}", "Twist order #E'", factor_string(&tr_like.n_twist, &tr_like.twist_factors));
    let _ = writeln!(s, "{:<28} {}", "Twist cofactor h'", od.h_twist);
    let k = match report.embedding_k_found {
        Some(k) => format!("k = {k}"),
        None => format!("none detected (k <= {k_max})"),
    };
    let _ = writeln!(s, "{:<28} {}", "Embedding degree", k);
    s
}
