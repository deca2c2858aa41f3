//! `adjoint`: run the verification suites, print tables and run single
//! oracle jobs.

mod config;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use adjoint_local::lgroup::{self, Identity};
use adjoint_local::oracle::{self, ConcordanceConfig, Execution, OracleJob};
use adjoint_local::padic::MultChar;
use adjoint_local::report::Check;
use adjoint_local::symalg::{eval_float, Assignment};
use adjoint_local::whittaker::{self, closed_form_i, closed_form_w, QParam, WhittakerSpec};
use adjoint_local::zeta::{self, adjoint_lfactor_catalog, adjoint_lfactor_rs, case_specs, ZetaCase};
use adjoint_local::g2;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use config::FileConfig;
use output::{write_report, write_table, Format, Report, SCHEMA_VERSION};

const DEFAULT_SEED: u64 = 2024;
const DEFAULT_SAMPLES: usize = 100;

#[derive(Parser, Debug)]
#[command(name = "adjoint", version, about = "Checks for the adjoint L-function construction on G2")]
struct Cli {
    /// Key-value config file (`key = value` lines); flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for the randomized checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Run the oracle on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        params: Params,
    },
    /// Print a table of values.
    Table {
        #[arg(value_enum)]
        table: TableKind,
        #[command(flatten)]
        params: Params,
    },
    /// Run one oracle job and print its result as JSON.
    Oracle(OracleArgs),
    /// Zeta integral checks for one ramification case.
    Zeta {
        #[command(subcommand)]
        action: ZetaAction,
    },
    /// L-group identities.
    Lgroup {
        #[command(subcommand)]
        action: LgroupAction,
    },
}

#[derive(Subcommand, Debug)]
enum ZetaAction {
    Verify {
        #[arg(long, value_enum)]
        case: CaseArg,
    },
}

#[derive(Subcommand, Debug)]
enum LgroupAction {
    Verify {
        #[arg(long, value_enum)]
        identity: IdentityArg,
        #[arg(long)]
        samples: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    All,
    Whittaker,
    Oracle,
    G2,
    Zeta,
    Lgroup,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableKind {
    Whittaker,
    Lfactors,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CaseArg {
    UnramChi,
    BothRam,
    RamMu2,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum IdentityArg {
    AsaiSbc,
    Rog21,
    Eta111,
    #[value(name = "satake-111")]
    Satake111,
}

#[derive(Args, Debug, Default)]
struct Params {
    /// Residue characteristic; default runs every prime the suite uses.
    #[arg(long)]
    p: Option<u32>,
    /// Conductor of μ2; default runs 1 and 2.
    #[arg(long)]
    c: Option<u32>,
    /// Oracle truncation; restricts the oracle to pairs with max(m, n) + 1 ≤ k.
    #[arg(long)]
    k: Option<i64>,
    #[arg(long)]
    m_max: Option<i64>,
    /// Relative tolerance for oracle concordance.
    #[arg(long)]
    tol: Option<f64>,
    /// Samples per place for the L-group identities.
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    c: Option<u32>,
    #[arg(long)]
    m: i64,
    #[arg(long)]
    n: i64,
    /// Truncation; default max(m, n) + 2.
    #[arg(long)]
    k: Option<i64>,
    /// Complex value `re,im` or a real number.
    #[arg(long, default_value = "1", value_parser = parse_complex)]
    t1: Complex64,
    #[arg(long, default_value = "1", value_parser = parse_complex)]
    t3: Complex64,
    /// Exponent index of μ2 on units; default the first primitive one.
    #[arg(long)]
    mu2_index: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| format!("`{t}` is not a number"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err("expected `re` or `re,im`".into()),
    }
}

/// Fully resolved settings, echoed in every report.
#[derive(Clone, Debug, Serialize)]
struct Settings {
    primes: Vec<u32>,
    conductors: Vec<u32>,
    k: Option<i64>,
    m_max: i64,
    tol: f64,
    seed: u64,
    samples: usize,
    execution: Execution,
}

/// Bad flags, config or job parameters: exit code 2.
struct UsageError(String);

impl From<String> for UsageError {
    fn from(s: String) -> UsageError {
        UsageError(s)
    }
}

struct Ctx {
    file: FileConfig,
    format: Option<Format>,
    seed: u64,
    execution: Execution,
}

impl Ctx {
    fn new(cli: &Cli) -> Result<Ctx, String> {
        let file = match &cli.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let format = file.pick(cli.format, "format")?;
        let seed = file.pick(cli.seed, "seed")?.unwrap_or(DEFAULT_SEED);
        let execution = if cli.sequential {
            Execution::Sequential
        } else {
            match file.get::<String>("execution")?.as_deref() {
                None | Some("parallel") => Execution::Parallel,
                Some("sequential") => Execution::Sequential,
                Some(other) => return Err(format!("config key `execution`: unknown value `{other}`")),
            }
        };
        Ok(Ctx { file, format, seed, execution })
    }

    fn settings(&self, params: &Params, default_primes: &[u32], default_m_max: i64) -> Result<Settings, String> {
        let f = &self.file;
        let primes = f.pick(params.p, "p")?.map_or_else(|| default_primes.to_vec(), |p| vec![p]);
        let conductors = f.pick(params.c, "c")?.map_or_else(|| vec![1, 2], |c| vec![c]);
        let s = Settings {
            primes,
            conductors,
            k: f.pick(params.k, "k")?,
            m_max: f.pick(params.m_max, "m_max")?.unwrap_or(default_m_max),
            tol: f.pick(params.tol, "tol")?.unwrap_or(1e-8),
            seed: self.seed,
            samples: f.pick(params.samples, "samples")?.unwrap_or(DEFAULT_SAMPLES),
            execution: self.execution,
        };
        if let Some(&p) = s.primes.iter().find(|&&p| !is_prime(p)) {
            return Err(format!("p = {p} is not prime"));
        }
        if s.conductors.contains(&0) {
            return Err("conductor must be at least 1".into());
        }
        if s.m_max < 0 {
            return Err("m-max must be nonnegative".into());
        }
        if s.tol.is_nan() || s.tol <= 0.0 {
            return Err("tolerance must be positive".into());
        }
        if s.samples == 0 {
            return Err("samples must be positive".into());
        }
        Ok(s)
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn whittaker_checks(s: &Settings, sums_primes: &[u32]) -> Vec<Check> {
    let mut out: Vec<Check> = s.conductors.iter().flat_map(|&c| whittaker::identity_checks(c, s.m_max)).collect();
    out.extend(whittaker::character_sum_checks(sums_primes, &s.conductors));
    out
}

fn oracle_checks(s: &Settings) -> Result<Vec<Check>, String> {
    let mut out = Vec::new();
    for &p in &s.primes {
        for &c in &s.conductors {
            let mut cfg = ConcordanceConfig::standard(p, c);
            cfg.tol = s.tol;
            cfg.execution = s.execution;
            if let Some(k) = s.k {
                cfg.pairs.retain(|&(m, n)| m.max(n) < k);
                if cfg.pairs.is_empty() {
                    return Err(format!("k = {k} admits no (m, n) pair; use k ≥ 1"));
                }
                cfg.k = Some(k);
            }
            out.extend(oracle::concordance_checks(&cfg));
        }
    }
    Ok(out)
}

fn lgroup_checks(s: &Settings) -> Vec<Check> {
    let mut out: Vec<Check> = Identity::ALL.iter().flat_map(|&id| lgroup::identity_checks(id, s.seed, s.samples)).collect();
    out.extend(lgroup::functoriality_checks(s.seed, s.samples));
    out
}

fn zeta_checks(seed: u64) -> Vec<Check> {
    let mut out: Vec<Check> = ZetaCase::ALL.iter().flat_map(|&c| zeta::case_checks(c)).collect();
    out.extend(zeta::gamma_checks(seed));
    out
}

fn verify(ctx: &Ctx, suite: Suite, params: &Params) -> Result<(String, Settings, Vec<Check>), String> {
    let (name, primes): (&str, &[u32]) = match suite {
        Suite::All => ("all", &[3, 5]),
        Suite::Whittaker => ("whittaker", &[2, 3, 5]),
        Suite::Oracle => ("oracle", &[3, 5]),
        Suite::G2 => ("g2", &[]),
        Suite::Zeta => ("zeta", &[]),
        Suite::Lgroup => ("lgroup", &[]),
    };
    let s = ctx.settings(params, primes, 6)?;
    let checks = match suite {
        Suite::All => {
            let mut v = whittaker_checks(&s, &s.primes);
            v.extend(oracle_checks(&s)?);
            v.extend(g2::structure_checks(s.seed));
            v.extend(zeta_checks(s.seed));
            v.extend(lgroup_checks(&s));
            v
        }
        Suite::Whittaker => whittaker_checks(&s, &s.primes),
        Suite::Oracle => oracle_checks(&s)?,
        Suite::G2 => g2::structure_checks(s.seed),
        Suite::Zeta => zeta_checks(s.seed),
        Suite::Lgroup => lgroup_checks(&s),
    };
    Ok((format!("verify {name}"), s, checks))
}

fn table(ctx: &Ctx, kind: TableKind, params: &Params) -> Result<(), String> {
    let format = ctx.format.unwrap_or(Format::Csv);
    let (header, rows): (Vec<&str>, Vec<Vec<String>>) = match kind {
        TableKind::Whittaker => {
            let s = ctx.settings(params, &[], 4)?;
            let q = match ctx.file.pick(params.p, "p")? {
                Some(p) => QParam::Prime(p),
                None => QParam::Symbolic,
            };
            let mut rows = Vec::new();
            for &c in &s.conductors {
                let spec = WhittakerSpec::new(q, c, false).map_err(|e| e.to_string())?;
                for m in 0..=s.m_max {
                    for n in 0..=s.m_max {
                        rows.push(vec![
                            c.to_string(),
                            m.to_string(),
                            n.to_string(),
                            closed_form_i(&spec, m, n).to_string(),
                            closed_form_w(&spec, m, n).to_string(),
                        ]);
                    }
                }
            }
            (vec!["c", "m", "n", "I", "W"], rows)
        }
        TableKind::Lfactors => {
            let s = ctx.settings(params, &[3, 5], 0)?;
            let mut rows = Vec::new();
            let label = |m: &Option<MultChar>| match m {
                Some(m) => format!("c{}:{}", m.c, m.index),
                None => "unramified".to_string(),
            };
            for &p in &s.primes {
                for case in ZetaCase::ALL {
                    for spec in case_specs(case, p) {
                        let cat = adjoint_lfactor_catalog(&spec, 1, 0).map_err(|e| e.to_string())?;
                        let rs = adjoint_lfactor_rs(&spec, 1, 0).map_err(|e| e.to_string())?;
                        rows.push(vec![
                            case.name().to_string(),
                            p.to_string(),
                            label(&spec.mu2),
                            label(&spec.chi),
                            cat.to_string(),
                            rs.to_string(),
                            (cat == rs).to_string(),
                        ]);
                    }
                }
            }
            (vec!["case", "p", "mu2", "chi", "catalog", "rankin_selberg", "agree"], rows)
        }
    };
    output::quiet_pipe(write_table(format, &header, &rows)).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct JobEcho {
    p: u32,
    c: u32,
    m: i64,
    n: i64,
    k: i64,
    t1: [f64; 2],
    t3: [f64; 2],
    mu2_index: u64,
    tol: f64,
    execution: Execution,
}

#[derive(Serialize)]
struct OracleOutput {
    schema_version: &'static str,
    job: JobEcho,
    #[serde(flatten)]
    result: oracle::OracleResult,
    closed_form: Option<[f64; 2]>,
    relative_delta: Option<f64>,
    status: &'static str,
}

fn run_oracle(ctx: &Ctx, a: &OracleArgs) -> Result<bool, UsageError> {
    let f = &ctx.file;
    let p = f.pick(a.p, "p")?.unwrap_or(3);
    let c = f.pick(a.c, "c")?.unwrap_or(1);
    let tol = f.pick(a.tol, "tol")?.unwrap_or(1e-8);
    let k = f.pick(a.k, "k")?;
    if !is_prime(p) || c == 0 {
        return Err(UsageError(format!("need a prime p and c ≥ 1, got p = {p}, c = {c}")));
    }
    let prim = MultChar::all_primitive(p, c);
    let index = match a.mu2_index {
        Some(i) if prim.iter().any(|m| m.index == i) => i,
        Some(i) => return Err(UsageError(format!("index {i} does not give a primitive character of conductor {c}"))),
        None => prim.first().map(|m| m.index).ok_or_else(|| format!("no primitive character of conductor {c} mod {p}"))?,
    };
    let mu2 = MultChar::new(p, c, index, (0, 1)).map_err(|e| e.to_string())?;
    let mut job = OracleJob::new(mu2, a.m, a.n).with_t(a.t1, a.t3).with_execution(ctx.execution);
    if let Some(k) = k {
        job = job.with_k(k);
    }
    job.tol = tol;
    job.validate().map_err(|e| e.to_string())?;
    let run = match oracle::integrate(&job) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(false);
        }
    };
    let spec = WhittakerSpec::new(QParam::Prime(p), c, false).map_err(|e| e.to_string())?;
    let want = eval_float(&closed_form_i(&spec, a.m, a.n), &Assignment::new().with("t1", a.t1).with("t3", a.t3))
        .ok()
        .map(|(v, _)| v);
    let total = Complex64::new(run.result.total.re, run.result.total.im);
    let delta = want.map(|w| (total - w).norm() / w.norm().max(1e-300));
    let ok = delta.is_some_and(|d| d < tol);
    let out = OracleOutput {
        schema_version: SCHEMA_VERSION,
        job: JobEcho {
            p,
            c,
            m: a.m,
            n: a.n,
            k: job.k,
            t1: [a.t1.re, a.t1.im],
            t3: [a.t3.re, a.t3.im],
            mu2_index: index,
            tol,
            execution: ctx.execution,
        },
        result: run.result,
        closed_form: want.map(|w| [w.re, w.im]),
        relative_delta: delta,
        status: if ok { "pass" } else { "fail" },
    };
    let text = serde_json::to_string_pretty(&out).map_err(|e| e.to_string())?;
    output::quiet_pipe(writeln!(std::io::stdout().lock(), "{text}")).map_err(|e| e.to_string())?;
    Ok(ok)
}

fn emit(ctx: &Ctx, command: String, settings: Settings, checks: Vec<Check>) -> Result<bool, UsageError> {
    let report = Report::new(command, settings, checks);
    output::quiet_pipe(write_report(ctx.format.unwrap_or(Format::Json), &report)).map_err(|e| e.to_string())?;
    Ok(report.all_passed())
}

fn run(cli: &Cli) -> Result<bool, UsageError> {
    let ctx = Ctx::new(cli)?;
    match &cli.command {
        Command::Verify { suite, params } => {
            let (command, s, checks) = verify(&ctx, *suite, params)?;
            emit(&ctx, command, s, checks)
        }
        Command::Table { table: kind, params } => {
            table(&ctx, *kind, params)?;
            Ok(true)
        }
        Command::Oracle(a) => run_oracle(&ctx, a),
        Command::Zeta { action: ZetaAction::Verify { case } } => {
            let case = match case {
                CaseArg::UnramChi => ZetaCase::UnramChi,
                CaseArg::BothRam => ZetaCase::BothRam,
                CaseArg::RamMu2 => ZetaCase::RamMu2,
            };
            let s = ctx.settings(&Params::default(), &[], 0)?;
            let start = Instant::now();
            let mut checks = zeta::case_checks(case);
            if checks.is_empty() {
                checks.push(Check::holds("zeta.empty", "case has data", false, String::new(), String::new(), start));
            }
            emit(&ctx, format!("zeta verify {}", case.name()), s, checks)
        }
        Command::Lgroup { action: LgroupAction::Verify { identity, samples } } => {
            let id = match identity {
                IdentityArg::AsaiSbc => Identity::AsaiSbc,
                IdentityArg::Rog21 => Identity::Rog21,
                IdentityArg::Eta111 => Identity::Eta111,
                IdentityArg::Satake111 => Identity::Satake111,
            };
            let params = Params { samples: *samples, ..Params::default() };
            let s = ctx.settings(&params, &[], 0)?;
            let checks = lgroup::identity_checks(id, s.seed, s.samples);
            emit(&ctx, format!("lgroup verify {}", id.name()), s, checks)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
