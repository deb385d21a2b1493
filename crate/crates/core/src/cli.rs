//! Command-line harness. [`run`] does the work and returns the exit status
//! and the rendered report so it can be driven from tests.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::bits::BitString;
use crate::classical::ClassicalEnsemble;
use crate::distribution::{bits_space, total_variation, OutcomeDistribution};
use crate::equivalence::{
    backend_equivalence, classicality_certificate, hadamard_rewrite, EquivalenceVerdict,
    MultipartyDescription, ProtocolConfig, RewriteReport, EQUIVALENCE_TOLERANCE,
};
use crate::error::Error;
use crate::protocols::{
    acceptance_probability, eavesdropper_view, enumerate_multiparty, enumerate_two_party,
    impersonation_attack, multiparty_transcript_law, random_challenge, run_multiparty,
    run_two_party, two_party_transcript_law, Backend, MultipartyConfig, Protocol, Transcript,
    TwoPartyConfig,
};

pub const SCHEMA_VERSION: &str = "1";

/// Above this many sessions per backend, `run` reports frequencies only.
pub const TRANSCRIPT_LIMIT: u64 = 100;

/// Largest n for commands that sweep omitted `--p`/`--r` values.
pub const TWO_PARTY_SWEEP_BOUND: usize = 4;

/// Largest m for commands that sweep omitted `--p` values.
pub const MULTIPARTY_SWEEP_BOUND: usize = 8;

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "qpass",
    version,
    about = "Password protocols on entangled vs. classically correlated resources"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run seeded sessions and report verdicts and outcome frequencies.
    Run(CommonArgs),
    /// Exact outcome distribution of a configuration.
    Enumerate(CommonArgs),
    /// Compare quantum and classical transcript laws.
    Equiv(CommonArgs),
    /// Impersonation and eavesdropping analysis (two-party).
    Attack(CommonArgs),
    /// Hadamard-frame rewrite and classicality certificate (multiparty).
    Rewrite(CommonArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Run(_) => "run",
            Command::Enumerate(_) => "enumerate",
            Command::Equiv(_) => "equiv",
            Command::Attack(_) => "attack",
            Command::Rewrite(_) => "rewrite",
        }
    }

    fn args(&self) -> &CommonArgs {
        match self {
            Command::Run(a)
            | Command::Enumerate(a)
            | Command::Equiv(a)
            | Command::Attack(a)
            | Command::Rewrite(a) => a,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProtocolArg {
    #[value(name = "two_party")]
    TwoParty,
    Multiparty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Quantum,
    Classical,
    Both,
}

impl BackendArg {
    fn backends(self) -> Vec<Backend> {
        match self {
            BackendArg::Quantum => vec![Backend::Quantum],
            BackendArg::Classical => vec![Backend::Classical],
            BackendArg::Both => Backend::ALL.to_vec(),
        }
    }

    fn label(self) -> &'static str {
        match self {
            BackendArg::Quantum => "quantum",
            BackendArg::Classical => "classical",
            BackendArg::Both => "both",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputArg {
    #[default]
    Json,
    Text,
}

fn parse_bits(text: &str) -> Result<BitString, Error> {
    text.parse()
}

#[derive(clap::Args, Debug, Clone)]
pub struct CommonArgs {
    /// two_party (default, except for rewrite) or multiparty.
    #[arg(long, value_enum)]
    pub protocol: Option<ProtocolArg>,
    #[arg(long, value_enum, default_value = "both")]
    pub backend: BackendArg,
    /// Password bits, leftmost is index 0.
    #[arg(long, value_name = "BITS", value_parser = parse_bits)]
    pub p: Option<BitString>,
    /// Challenge bits (two_party only).
    #[arg(long, value_name = "BITS", value_parser = parse_bits)]
    pub r: Option<BitString>,
    /// Password length for two_party.
    #[arg(long, conflicts_with = "m")]
    pub n: Option<usize>,
    /// Number of parties for multiparty.
    #[arg(long)]
    pub m: Option<usize>,
    /// Sessions per backend (run only).
    #[arg(long)]
    pub trials: Option<u64>,
    /// Base seed; a random one is drawn and echoed when absent.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    pub output: OutputArg,
}

#[derive(Debug)]
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Usage {
    Usage(msg.into())
}

/// Validated shape shared by all commands.
struct Plan {
    protocol: Protocol,
    size: usize,
    p: Option<BitString>,
    r: Option<BitString>,
    seed: u64,
}

fn plan(command: &Command) -> Result<Plan, Usage> {
    let args = command.args();
    let protocol = match (args.protocol, command) {
        (Some(ProtocolArg::TwoParty), _) => Protocol::TwoParty,
        (Some(ProtocolArg::Multiparty), _) => Protocol::Multiparty,
        (None, Command::Rewrite(_)) => Protocol::Multiparty,
        (None, _) => Protocol::TwoParty,
    };
    let (size_flag, declared, other_flag, other) = match protocol {
        Protocol::TwoParty => ("--n", args.n, "--m", args.m),
        Protocol::Multiparty => ("--m", args.m, "--n", args.n),
    };
    if other.is_some() {
        return Err(usage(format!("{other_flag} does not apply to {protocol}; use {size_flag}")));
    }
    if protocol == Protocol::Multiparty && args.r.is_some() {
        return Err(usage("--r applies to two_party only"));
    }
    let size = match (declared, &args.p) {
        (Some(k), Some(p)) if k != p.len() => {
            return Err(usage(format!(
                "--p has {} bits but {size_flag} is {k}",
                p.len()
            )))
        }
        (Some(k), _) => k,
        (None, Some(p)) => p.len(),
        (None, None) => match &args.r {
            Some(r) => r.len(),
            None => return Err(usage(format!("one of --p or {size_flag} is required"))),
        },
    };
    if size == 0 {
        return Err(usage(format!("{size_flag} must be at least 1")));
    }
    if let Some(r) = &args.r {
        if r.len() != size {
            return Err(usage(format!("--r has {} bits but --n is {size}", r.len())));
        }
    }
    if args.trials.is_some() && !matches!(command, Command::Run(_)) {
        return Err(usage("--trials applies to run only"));
    }
    Ok(Plan {
        protocol,
        size,
        p: args.p.clone(),
        r: args.r.clone(),
        seed: args.seed.unwrap_or_else(rand::random),
    })
}

/// Header fields shared by every report.
#[derive(Serialize)]
struct Header {
    schema_version: &'static str,
    command: &'static str,
    protocol: Protocol,
    backend: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<BitString>,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<BitString>,
    seed: u64,
}

impl Header {
    fn new(command: &'static str, plan: &Plan, backend: &'static str) -> Self {
        let (n, m) = match plan.protocol {
            Protocol::TwoParty => (Some(plan.size), None),
            Protocol::Multiparty => (None, Some(plan.size)),
        };
        Header {
            schema_version: SCHEMA_VERSION,
            command,
            protocol: plan.protocol,
            backend,
            n,
            m,
            p: plan.p.clone(),
            r: plan.r.clone(),
            seed: plan.seed,
        }
    }
}

#[derive(Serialize)]
struct Report<B: Serialize> {
    #[serde(flatten)]
    header: Header,
    #[serde(flatten)]
    body: B,
}

/// Serializes a report and pairs it with an exit status.
fn finish<B: Serialize>(header: Header, body: B, ok: bool) -> (i32, Value) {
    let value = serde_json::to_value(Report { header, body }).expect("reports serialize");
    (if ok { EXIT_SUCCESS } else { EXIT_CHECK_FAILED }, value)
}

fn sweep_bound(plan: &Plan) -> Result<(), Usage> {
    let (bound, flag) = match plan.protocol {
        Protocol::TwoParty => (TWO_PARTY_SWEEP_BOUND, "--n"),
        Protocol::Multiparty => (MULTIPARTY_SWEEP_BOUND, "--m"),
    };
    if plan.size > bound {
        return Err(usage(format!(
            "{flag} {} exceeds the sweep bound {bound}; pass explicit --p/--r",
            plan.size
        )));
    }
    Ok(())
}

/// `(p, r)` pairs selected by the plan: given values are fixed, omitted
/// ones are swept in index order.
fn two_party_pairs(plan: &Plan) -> Result<Vec<(BitString, BitString)>, Usage> {
    if plan.p.is_none() || plan.r.is_none() {
        sweep_bound(plan)?;
    }
    let ps: Vec<BitString> = match &plan.p {
        Some(p) => vec![p.clone()],
        None => BitString::all(plan.size).collect(),
    };
    let rs: Vec<BitString> = match &plan.r {
        Some(r) => vec![r.clone()],
        None => BitString::all(plan.size).collect(),
    };
    Ok(ps
        .iter()
        .flat_map(|p| rs.iter().map(move |r| (p.clone(), r.clone())))
        .collect())
}

fn multiparty_passwords(plan: &Plan) -> Result<Vec<BitString>, Usage> {
    match &plan.p {
        Some(p) => Ok(vec![p.clone()]),
        None => {
            sweep_bound(plan)?;
            Ok(BitString::all(plan.size).collect())
        }
    }
}

fn session_challenge(session_seed: u64, n: usize) -> BitString {
    let mut rng = ChaCha8Rng::seed_from_u64(session_seed);
    rng.set_stream(1);
    random_challenge(n, &mut rng)
}

#[derive(Serialize)]
struct BackendRun {
    backend: Backend,
    trials: u64,
    accepted: u64,
    outcome_frequencies: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    transcripts: Option<Vec<Transcript>>,
}

#[derive(Serialize)]
struct RunBody {
    trials: u64,
    accepted: u64,
    runs: Vec<BackendRun>,
}

fn cmd_run(plan: &Plan, args: &CommonArgs) -> Result<(i32, Value), Usage> {
    let trials = args.trials.unwrap_or(1);
    if trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    let p = plan
        .p
        .clone()
        .ok_or_else(|| usage("--p is required for run"))?;
    let mut runs = Vec::new();
    let mut all_ok = true;
    for backend in args.backend.backends() {
        let mut accepted = 0;
        let mut frequencies = BTreeMap::new();
        let mut transcripts = Vec::new();
        for i in 0..trials {
            let seed = plan.seed.wrapping_add(i);
            let t = match plan.protocol {
                Protocol::TwoParty => {
                    let r = plan
                        .r
                        .clone()
                        .unwrap_or_else(|| session_challenge(seed, plan.size));
                    run_two_party(&TwoPartyConfig::new(p.clone(), r, backend)?, seed)?
                }
                Protocol::Multiparty => {
                    run_multiparty(&MultipartyConfig::new(p.clone(), backend)?, seed)?
                }
            };
            let consistent = t.check().is_ok();
            if t.verdict.is_accept() && consistent {
                accepted += 1;
            } else {
                all_ok = false;
            }
            *frequencies.entry(t.digest()).or_insert(0) += 1;
            if trials <= TRANSCRIPT_LIMIT {
                transcripts.push(t);
            }
        }
        runs.push(BackendRun {
            backend,
            trials,
            accepted,
            outcome_frequencies: frequencies,
            transcripts: (trials <= TRANSCRIPT_LIMIT).then_some(transcripts),
        });
    }
    let body = RunBody {
        trials,
        accepted: runs.iter().map(|r| r.accepted).sum(),
        runs,
    };
    Ok(finish(
        Header::new("run", plan, args.backend.label()),
        body,
        all_ok,
    ))
}

#[derive(Serialize)]
struct EnumerationEntry {
    backend: Backend,
    p: BitString,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<BitString>,
    distribution: OutcomeDistribution,
    acceptance_probability: f64,
}

#[derive(Serialize)]
struct EnumerateBody {
    all_pass: bool,
    results: Vec<EnumerationEntry>,
}

fn cmd_enumerate(plan: &Plan, args: &CommonArgs) -> Result<(i32, Value), Usage> {
    let mut results = Vec::new();
    for backend in args.backend.backends() {
        match plan.protocol {
            Protocol::TwoParty => {
                for (p, r) in two_party_pairs(plan)? {
                    let cfg = TwoPartyConfig::new(p.clone(), r.clone(), backend)?;
                    results.push(EnumerationEntry {
                        backend,
                        p,
                        r: Some(r),
                        distribution: enumerate_two_party(&cfg)?,
                        acceptance_probability: acceptance_probability(
                            &two_party_transcript_law(&cfg)?,
                        ),
                    });
                }
            }
            Protocol::Multiparty => {
                for p in multiparty_passwords(plan)? {
                    let cfg = MultipartyConfig::new(p.clone(), backend)?;
                    results.push(EnumerationEntry {
                        backend,
                        p,
                        r: None,
                        distribution: enumerate_multiparty(&cfg)?,
                        acceptance_probability: acceptance_probability(
                            &multiparty_transcript_law(&cfg)?,
                        ),
                    });
                }
            }
        }
    }
    let all_pass = results
        .iter()
        .all(|e| (e.acceptance_probability - 1.0).abs() <= EQUIVALENCE_TOLERANCE);
    Ok(finish(
        Header::new("enumerate", plan, args.backend.label()),
        EnumerateBody { all_pass, results },
        all_pass,
    ))
}

#[derive(Serialize)]
struct EquivEntry {
    p: BitString,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<BitString>,
    #[serde(flatten)]
    verdict: EquivalenceVerdict,
}

#[derive(Serialize)]
struct EquivBody {
    checks: usize,
    all_pass: bool,
    distance_tv: f64,
    results: Vec<EquivEntry>,
}

fn cmd_equiv(plan: &Plan, args: &CommonArgs) -> Result<(i32, Value), Usage> {
    if args.backend != BackendArg::Both {
        return Err(usage("equiv always compares both backends; --backend must be both"));
    }
    let configs: Vec<(BitString, Option<BitString>, ProtocolConfig)> = match plan.protocol {
        Protocol::TwoParty => two_party_pairs(plan)?
            .into_iter()
            .map(|(p, r)| {
                let cfg = TwoPartyConfig::new(p.clone(), r.clone(), Backend::Quantum)?;
                Ok((p, Some(r), ProtocolConfig::TwoParty(cfg)))
            })
            .collect::<Result<_, Error>>()?,
        Protocol::Multiparty => multiparty_passwords(plan)?
            .into_iter()
            .map(|p| {
                let cfg = MultipartyConfig::new(p.clone(), Backend::Quantum)?;
                Ok((p, None, ProtocolConfig::Multiparty(cfg)))
            })
            .collect::<Result<_, Error>>()?,
    };
    let mut results = Vec::with_capacity(configs.len());
    for (p, r, cfg) in configs {
        results.push(EquivEntry {
            p,
            r,
            verdict: backend_equivalence(&cfg)?,
        });
    }
    let all_pass = results.iter().all(|e| e.verdict.pass);
    let distance_tv = results
        .iter()
        .map(|e| e.verdict.distance_tv)
        .fold(0.0, f64::max);
    Ok(finish(
        Header::new("equiv", plan, "both"),
        EquivBody {
            checks: results.len(),
            all_pass,
            distance_tv,
            results,
        },
        all_pass,
    ))
}

#[derive(Serialize)]
struct EavesdropperEntry {
    backend: Backend,
    distribution: OutcomeDistribution,
    distance_tv: f64,
}

#[derive(Serialize)]
struct AttackEntry {
    p: BitString,
    r: BitString,
    impersonation_acceptance: f64,
    eavesdropper: Vec<EavesdropperEntry>,
    pass: bool,
}

#[derive(Serialize)]
struct AttackBody {
    expected_impersonation: f64,
    all_pass: bool,
    results: Vec<AttackEntry>,
}

fn cmd_attack(plan: &Plan, args: &CommonArgs) -> Result<(i32, Value), Usage> {
    if plan.protocol != Protocol::TwoParty {
        return Err(usage("attack supports --protocol two_party only"));
    }
    let n = plan.size;
    let expected = 1.0 / (1u64 << n) as f64;
    let uniform = OutcomeDistribution::uniform(
        bits_space(n),
        BitString::all(n).map(|b| b.to_string()),
    )?;
    let backends = args.backend.backends();
    let mut results = Vec::new();
    for (p, r) in two_party_pairs(plan)? {
        let cfg = TwoPartyConfig::new(p.clone(), r.clone(), backends[0])?;
        let impersonation_acceptance = impersonation_attack(&cfg)?;
        let mut pass = (impersonation_acceptance - expected).abs() <= EQUIVALENCE_TOLERANCE;
        let mut eavesdropper = Vec::new();
        for &backend in &backends {
            let view = eavesdropper_view(&cfg.with_backend(backend))?;
            let distance_tv = total_variation(&view, &uniform)?;
            pass &= distance_tv <= EQUIVALENCE_TOLERANCE;
            eavesdropper.push(EavesdropperEntry {
                backend,
                distribution: view,
                distance_tv,
            });
        }
        results.push(AttackEntry {
            p,
            r,
            impersonation_acceptance,
            eavesdropper,
            pass,
        });
    }
    let all_pass = results.iter().all(|e| e.pass);
    Ok(finish(
        Header::new("attack", plan, args.backend.label()),
        AttackBody {
            expected_impersonation: expected,
            all_pass,
            results,
        },
        all_pass,
    ))
}

#[derive(Serialize)]
struct RewriteEntry {
    p: BitString,
    rewrite: RewriteReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<ClassicalEnsemble>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate_error: Option<String>,
    pass: bool,
}

#[derive(Serialize)]
struct RewriteBody {
    all_pass: bool,
    results: Vec<RewriteEntry>,
}

fn cmd_rewrite(plan: &Plan, args: &CommonArgs) -> Result<(i32, Value), Usage> {
    if plan.protocol != Protocol::Multiparty {
        return Err(usage("rewrite supports --protocol multiparty only"));
    }
    let mut results = Vec::new();
    for p in multiparty_passwords(plan)? {
        let description =
            MultipartyDescription::from_config(&MultipartyConfig::new(p.clone(), Backend::Quantum)?);
        let rewrite = hadamard_rewrite(&description)?;
        let (certificate, certificate_error) = match classicality_certificate(&description) {
            Ok(c) => (Some(c), None),
            Err(e) => (None, Some(e.to_string())),
        };
        let pass = rewrite.pass && certificate.is_some();
        results.push(RewriteEntry {
            p,
            rewrite,
            certificate,
            certificate_error,
            pass,
        });
    }
    let all_pass = results.iter().all(|e| e.pass);
    Ok(finish(
        Header::new("rewrite", plan, args.backend.label()),
        RewriteBody { all_pass, results },
        all_pass,
    ))
}

/// Human-readable rendering of the JSON report; carries the same data.
pub fn render_text(value: &Value) -> String {
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    fn walk(out: &mut String, key: &str, v: &Value, depth: usize) {
        let pad = "  ".repeat(depth);
        match v {
            Value::Object(map) => {
                if !key.is_empty() {
                    let _ = writeln!(out, "{pad}{key}:");
                }
                let depth = if key.is_empty() { depth } else { depth + 1 };
                for (k, v) in map {
                    walk(out, k, v, depth);
                }
            }
            Value::Array(items) => {
                let _ = writeln!(out, "{pad}{key}: [{}]", items.len());
                for (i, item) in items.iter().enumerate() {
                    walk(out, &format!("[{i}]"), item, depth + 1);
                }
            }
            leaf => {
                let _ = writeln!(out, "{pad}{key}: {}", scalar(leaf));
            }
        }
    }
    let mut out = String::new();
    walk(&mut out, "", value, 0);
    out
}

fn execute(command: &Command) -> Result<(i32, Value), Usage> {
    let plan = plan(command)?;
    let args = command.args();
    match command {
        Command::Run(_) => cmd_run(&plan, args),
        Command::Enumerate(_) => cmd_enumerate(&plan, args),
        Command::Equiv(_) => cmd_equiv(&plan, args),
        Command::Attack(_) => cmd_attack(&plan, args),
        Command::Rewrite(_) => cmd_rewrite(&plan, args),
    }
}

/// Outcome of one invocation: exit status, stdout, stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and executes the command.
pub fn run<I, T>(argv: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_SUCCESS };
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), rendered)
            } else {
                (rendered, String::new())
            };
            return Invocation {
                status,
                stdout,
                stderr,
            };
        }
    };
    match execute(&cli.command) {
        Ok((status, value)) => {
            let stdout = match cli.command.args().output {
                OutputArg::Json => {
                    let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
                    s.push('\n');
                    s
                }
                OutputArg::Text => render_text(&value),
            };
            Invocation {
                status,
                stdout,
                stderr: String::new(),
            }
        }
        Err(Usage(msg)) => Invocation {
            status: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error ({}): {msg}\n", cli.command.name()),
        },
    }
}
