use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crystal_realize::crystal::LatticePoint;
use crystal_realize::linforms::{check_ample, check_positivity, check_strict_positivity, closure_or_partial, xi_infinity};
use crystal_realize::oracle::RootSystem;
use crystal_realize::realization::{
    enumerate_blambda, lr_coefficient, lr_decomposition, member, EnumerateOptions, EpsilonStar, RealizationResult,
    SystemConfig,
};
use crystal_realize::{inequality_system, CartanData, ClosureBounds, Error, Family, Forms, IotaSequence, Weight};

#[derive(Parser, Debug)]
#[command(name = "crystal-realize", version, about = "Polyhedral realizations of highest-weight crystals")]
struct Cli {
    /// rank2:c1,c2 | an:n | affine-a:n | custom:file.json
    #[arg(long, global = true, default_value = "rank2:1,1")]
    family: String,
    /// Index sequence period, written right to left as in "(..., 2, 1)".
    #[arg(long, global = true)]
    iota: Option<String>,
    /// Highest weight coefficients <h_i, lambda>.
    #[arg(long, global = true)]
    lambda: Option<String>,
    /// Depth cap for enumeration.
    #[arg(long, global = true, default_value_t = 64)]
    depth: usize,
    /// Position window for truncated systems and generic closures.
    #[arg(long, global = true, default_value_t = 12)]
    support: usize,
    /// Row bound for admissible matrices.
    #[arg(long, global = true, default_value_t = 4)]
    rows: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Use the generic closure even when a closed form is known.
    #[arg(long, global = true)]
    generic: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the inequality system defining the image of B(lambda).
    Inequalities,
    /// Enumerate B(lambda) inside the lattice.
    Enumerate {
        /// Check every reached point against the inequality system.
        #[arg(long)]
        cross_validate: bool,
    },
    /// Multiplicity of the weight lambda - sum m_i alpha_i.
    Mult {
        #[arg(long)]
        m: String,
    },
    /// Littlewood-Richardson coefficients of V(lambda) (x) V(mu).
    Lr {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: Option<String>,
    },
    /// epsilon*_i of a point of the B(infinity) realization.
    Epsstar {
        /// Coordinates written right to left, "(..., x_2, x_1)".
        #[arg(long)]
        point: String,
        #[arg(long)]
        index: usize,
    },
    /// Check the positivity and strict positivity assumptions.
    CheckPositivity,
    /// Check that (iota, lambda) is ample.
    CheckAmple,
    /// Compare realizations against the representation-theoretic oracles.
    Verify {
        #[arg(long, default_value_t = 2)]
        max_weight: i64,
    },
    /// Test whether a point lies in the image of B(lambda).
    Member {
        #[arg(long)]
        point: String,
    },
}

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, code: EXIT_OK }
    }

    fn with_code(text: String, code: u8) -> Self {
        Self { text, code }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct SystemHeader {
    family: String,
    iota: Vec<usize>,
    forms: usize,
    support_bound: usize,
    truncated: bool,
}

#[derive(Debug, Serialize, Deserialize)]
struct NumberReport {
    kind: String,
    value: u64,
    exact: bool,
}

#[derive(Debug, Serialize, Deserialize)]
struct Decomposition {
    lambda: Vec<i64>,
    mu: Vec<i64>,
    components: BTreeMap<String, u64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct EpsReport {
    index: usize,
    value: i64,
    exact: bool,
}

#[derive(Debug, Serialize, Deserialize)]
struct CheckReport {
    check: String,
    passed: Option<bool>,
    detail: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct VerifyReport {
    weights: usize,
    multiplicities: usize,
    lr_coefficients: usize,
    first_mismatch: Option<String>,
}

struct Ctx {
    seq: IotaSequence,
    lambda: Option<Weight>,
    cfg: SystemConfig,
    format: Format,
    depth: usize,
}

impl Ctx {
    fn lambda(&self) -> Result<&Weight, Error> {
        self.lambda
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("--lambda is required for this command".into()))
    }

    fn system(&self) -> Result<Forms, Error> {
        inequality_system(&self.seq, &self.cfg)
    }

    fn realize(&self, lambda: &Weight, cross_validate: bool) -> Result<(Forms, RealizationResult), Error> {
        let fs = self.system()?;
        let opts = EnumerateOptions {
            depth_cap: self.depth,
            cross_validate,
        };
        let r = enumerate_blambda(&self.seq, lambda, &fs, opts)?;
        Ok((fs, r))
    }

    fn closure_bounds(&self) -> ClosureBounds {
        ClosureBounds {
            support_bound: 2 * self.cfg.seeds,
            ..ClosureBounds::default()
        }
    }
}

fn weight_key(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn parse_point(s: &str) -> Result<LatticePoint, Error> {
    let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
    let vals = trimmed
        .split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty() && *t != "...")
        .map(|t| t.parse::<i64>().map_err(|e| Error::Parse(format!("`{t}`: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LatticePoint::from_display(&vals))
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes")
}

fn build_context(cli: &Cli) -> Result<Ctx, Error> {
    let cartan = match cli.family.strip_prefix("custom:") {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
            CartanData::from_json(&text)?
        }
        None => CartanData::build(cli.family.parse::<Family>()?)?,
    };
    let cartan = Arc::new(cartan);
    let seq = match &cli.iota {
        Some(s) => IotaSequence::parse_display(cartan.clone(), s)?,
        None => IotaSequence::standard(cartan.clone())?,
    };
    let lambda = match &cli.lambda {
        Some(s) => {
            let w = Weight::parse(s)?;
            w.check_rank(&cartan)?;
            w.check_dominant()?;
            Some(w)
        }
        None => None,
    };
    if cli.support == 0 || cli.rows == 0 {
        return Err(Error::InvalidArgument("--support and --rows must be positive".into()));
    }
    let cfg = SystemConfig {
        generic: cli.generic,
        seeds: cli.support,
        bounds: ClosureBounds {
            support_bound: 2 * cli.support,
            ..ClosureBounds::default()
        },
        window: cli.support,
        rows: cli.rows,
    };
    Ok(Ctx {
        seq,
        lambda,
        cfg,
        format: cli.format,
        depth: cli.depth,
    })
}

fn cmd_inequalities(ctx: &Ctx) -> Result<Outcome, Error> {
    let fs = ctx.system()?;
    let code = if fs.truncated { EXIT_INCONCLUSIVE } else { EXIT_OK };
    let text = match ctx.format {
        Format::Json => fs.to_json(ctx.lambda.as_ref())?,
        Format::Dot => return Err(Error::InvalidArgument("dot output is for enumerate".into())),
        Format::Text => {
            let mut out = String::new();
            let header = SystemHeader {
                family: ctx.seq.cartan().family().to_string(),
                iota: ctx.seq.period().to_vec(),
                forms: fs.len(),
                support_bound: fs.support_bound,
                truncated: fs.truncated,
            };
            writeln!(
                out,
                "# {} iota={} forms={} support={} truncated={}",
                header.family,
                ctx.seq,
                header.forms,
                header.support_bound,
                header.truncated
            )
            .unwrap();
            for f in &fs.forms {
                writeln!(out, "{}", f.render_inequality()).unwrap();
            }
            out
        }
    };
    if fs.truncated {
        eprintln!("warning: system truncated at support {}; it gives necessary conditions only", fs.support_bound);
    }
    Ok(Outcome::with_code(text, code))
}

fn cmd_enumerate(ctx: &Ctx, cross_validate: bool) -> Result<Outcome, Error> {
    let lambda = ctx.lambda()?;
    let (_, r) = ctx.realize(lambda, cross_validate)?;
    let code = if r.complete { EXIT_OK } else { EXIT_INCONCLUSIVE };
    let text = match ctx.format {
        Format::Json => r.to_json(),
        Format::Dot => r.to_dot(),
        Format::Text => {
            let mut out = String::new();
            if r.complete {
                writeln!(out, "{} elements, complete", r.len()).unwrap();
            } else {
                writeln!(out, "{} elements up to depth {}, truncated=true", r.len(), r.depth_used).unwrap();
            }
            writeln!(out, "layers: {}", weight_key(&r.layers.iter().map(|&v| v as i64).collect::<Vec<_>>())).unwrap();
            let seq = r.crystal.seq();
            for x in &r.elements {
                writeln!(out, "{x}  m=({})", weight_key(&x.root_content(seq))).unwrap();
            }
            out
        }
    };
    if !r.complete {
        eprintln!("warning: enumeration cut off at depth {}", r.depth_used);
    }
    Ok(Outcome::with_code(text, code))
}

fn number_outcome(ctx: &Ctx, kind: &str, value: u64) -> Outcome {
    match ctx.format {
        Format::Json => Outcome::ok(json(&NumberReport {
            kind: kind.into(),
            value,
            exact: true,
        })),
        _ => Outcome::ok(format!("{value}\n")),
    }
}

fn cmd_mult(ctx: &Ctx, m: &str) -> Result<Outcome, Error> {
    let lambda = ctx.lambda()?;
    let m = Weight::parse(m)?;
    let (_, r) = ctx.realize(lambda, false)?;
    let value = r.weight_multiplicity(m.coeffs())?;
    Ok(number_outcome(ctx, "multiplicity", value as u64))
}

fn cmd_lr(ctx: &Ctx, mu: &str, nu: Option<&str>) -> Result<Outcome, Error> {
    let lambda = ctx.lambda()?;
    let mu = Weight::parse(mu)?;
    mu.check_rank(ctx.seq.cartan())?;
    mu.check_dominant()?;
    let (_, r) = ctx.realize(&mu, false)?;
    match nu {
        Some(nu) => {
            let nu = Weight::parse(nu)?;
            r.require_complete()?;
            Ok(number_outcome(ctx, "lr", lr_coefficient(&r, lambda, &nu)?))
        }
        None => {
            let d = lr_decomposition(&r, lambda)?;
            let rep = Decomposition {
                lambda: lambda.coeffs().to_vec(),
                mu: mu.coeffs().to_vec(),
                components: d.iter().map(|(w, c)| (weight_key(w.coeffs()), *c)).collect(),
            };
            Ok(match ctx.format {
                Format::Json => Outcome::ok(json(&rep)),
                _ => {
                    let mut out = String::new();
                    for (w, c) in &rep.components {
                        writeln!(out, "V({w}) x {c}").unwrap();
                    }
                    Outcome::ok(out)
                }
            })
        }
    }
}

fn cmd_epsstar(ctx: &Ctx, point: &str, index: usize) -> Result<Outcome, Error> {
    ctx.seq.cartan().check_index(index)?;
    let x = parse_point(point)?;
    let es = EpsilonStar::new(&ctx.seq, ctx.closure_bounds())?;
    let value = es.value(&x, index)?;
    let exact = es.exact();
    let code = if exact { EXIT_OK } else { EXIT_INCONCLUSIVE };
    let text = match ctx.format {
        Format::Json => json(&EpsReport { index, value, exact }),
        _ if exact => format!("{value}\n"),
        _ => format!("{value} (lower bound, truncated=true)\n"),
    };
    Ok(Outcome::with_code(text, code))
}

fn check_outcome(ctx: &Ctx, rep: CheckReport) -> Outcome {
    let code = match rep.passed {
        Some(_) => EXIT_OK,
        None => EXIT_INCONCLUSIVE,
    };
    let text = match ctx.format {
        Format::Json => json(&rep),
        _ => {
            let verdict = match rep.passed {
                Some(true) => "pass".to_string(),
                Some(false) => "fail".to_string(),
                None => "inconclusive, truncated=true".to_string(),
            };
            let mut out = format!("{}: {verdict}\n", rep.check);
            for d in &rep.detail {
                writeln!(out, "  {d}").unwrap();
            }
            out
        }
    };
    Outcome::with_code(text, code)
}

fn cmd_check_positivity(ctx: &Ctx) -> Result<Outcome, Error> {
    let bounds = ctx.closure_bounds();
    let fs = closure_or_partial(xi_infinity::<i64>(&ctx.seq, ctx.cfg.seeds, bounds))?;
    let mut detail = Vec::new();
    let plain = match check_positivity(&fs, &ctx.seq, false) {
        Ok(r) => {
            detail.extend(
                r.violations
                    .iter()
                    .take(10)
                    .map(|(f, k)| format!("positivity: {} has a negative coefficient at x_{k}", f)),
            );
            Some(r.passed)
        }
        Err(Error::Inconclusive(m)) => {
            detail.push(format!("positivity: {m}"));
            None
        }
        Err(e) => return Err(e),
    };
    let strict = match check_strict_positivity::<i64>(&ctx.seq, ctx.cfg.seeds, bounds) {
        Ok(r) => {
            detail.extend(
                r.violations
                    .iter()
                    .take(10)
                    .map(|(f, k)| format!("strict positivity: {} has a negative coefficient at x_{k}", f)),
            );
            Some(r.passed)
        }
        Err(Error::Inconclusive(m)) => {
            detail.push(format!("strict positivity: {m}"));
            None
        }
        Err(e) => return Err(e),
    };
    let passed = match (plain, strict) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    };
    detail.insert(0, format!("positivity={plain:?} strict={strict:?}"));
    Ok(check_outcome(
        ctx,
        CheckReport {
            check: "positivity".into(),
            passed,
            detail,
        },
    ))
}

fn cmd_check_ample(ctx: &Ctx) -> Result<Outcome, Error> {
    let lambda = ctx.lambda()?;
    let (passed, detail) = match check_ample(&ctx.seq, lambda, ctx.cfg.seeds, ctx.closure_bounds()) {
        Ok(v) => (Some(v), Vec::new()),
        Err(Error::Inconclusive(m)) => (None, vec![m]),
        Err(e) => return Err(e),
    };
    Ok(check_outcome(
        ctx,
        CheckReport {
            check: "ample".into(),
            passed,
            detail,
        },
    ))
}

fn cmd_member(ctx: &Ctx, point: &str) -> Result<Outcome, Error> {
    let lambda = ctx.lambda()?;
    let x = parse_point(point)?;
    let fs = ctx.system()?;
    let m = member(&x, &fs, lambda)?;
    let code = if m.satisfied && m.necessary_only { EXIT_INCONCLUSIVE } else { EXIT_OK };
    let text = match ctx.format {
        Format::Json => json(&m),
        _ => format!("member={} necessary_only={}\n", m.satisfied, m.necessary_only),
    };
    Ok(Outcome::with_code(text, code))
}

/// Counts of checks run for one highest weight, or the first mismatch.
fn verify_weight(ctx: &Ctx, rs: &RootSystem, lambda: &Weight) -> Result<(usize, RealizationResult), String> {
    let (_, r) = ctx.realize(lambda, true).map_err(|e| format!("B({}): {e}", weight_key(lambda.coeffs())))?;
    let key = weight_key(lambda.coeffs());
    if !r.complete {
        return Err(format!("B({key}): enumeration did not finish within depth {}", ctx.depth));
    }
    let dim = rs.weyl_dim(lambda).map_err(|e| e.to_string())?;
    if r.len() as u64 != dim {
        return Err(format!("B({key}): {} elements, Weyl dimension {dim}", r.len()));
    }
    let ch = rs.character(lambda).map_err(|e| e.to_string())?;
    let keys: BTreeSet<&Vec<i64>> = ch.keys().chain(r.by_weight.keys()).collect();
    for m in &keys {
        let got = r.weight_multiplicity(m).map_err(|e| e.to_string())? as u64;
        let want = ch.get(*m).copied().unwrap_or(0);
        if got != want {
            return Err(format!("B({key}) weight m=({}): {got} elements, multiplicity {want}", weight_key(m)));
        }
    }
    Ok((keys.len(), r))
}

fn cmd_verify(ctx: &Ctx, max_weight: i64) -> Result<Outcome, Error> {
    let rs = RootSystem::new(ctx.seq.cartan())?;
    let weights = Weight::dominant_up_to(ctx.seq.rank(), max_weight);
    let results: Vec<Result<(usize, RealizationResult), String>> =
        weights.par_iter().map(|w| verify_weight(ctx, &rs, w)).collect();
    let mut report = VerifyReport {
        weights: weights.len(),
        multiplicities: 0,
        lr_coefficients: 0,
        first_mismatch: None,
    };
    let mut realized = Vec::new();
    for r in results {
        match r {
            Ok((n, r)) => {
                report.multiplicities += n;
                realized.push(r);
            }
            Err(e) => {
                report.first_mismatch = Some(e);
                break;
            }
        }
    }
    if report.first_mismatch.is_none() {
        let pairs: Vec<(&Weight, &RealizationResult)> =
            weights.iter().flat_map(|l| realized.iter().map(move |r| (l, r))).collect();
        let lr: Vec<Result<usize, String>> = pairs
            .par_iter()
            .map(|(lambda, r)| {
                let mu = r.crystal.lambda();
                let oracle = rs.tensor_decomposition(lambda, mu).map_err(|e| e.to_string())?;
                let got = lr_decomposition(r, lambda).map_err(|e| e.to_string())?;
                for nu in oracle.keys().chain(got.keys()) {
                    let (a, b) = (got.get(nu).copied().unwrap_or(0), oracle.get(nu).copied().unwrap_or(0));
                    if a != b {
                        return Err(format!(
                            "c^({})_({}),({}): realization {a}, oracle {b}",
                            weight_key(nu.coeffs()),
                            weight_key(lambda.coeffs()),
                            weight_key(mu.coeffs())
                        ));
                    }
                }
                Ok(oracle.len().max(got.len()))
            })
            .collect();
        for r in lr {
            match r {
                Ok(n) => report.lr_coefficients += n,
                Err(e) => {
                    report.first_mismatch = Some(e);
                    break;
                }
            }
        }
    }
    let code = if report.first_mismatch.is_some() { EXIT_MISMATCH } else { EXIT_OK };
    let text = match ctx.format {
        Format::Json => json(&report),
        _ => match &report.first_mismatch {
            Some(m) => format!("mismatch: {m}\n"),
            None => format!(
                "{} weights, {} multiplicities, {} LR coefficients\nall checks passed\n",
                report.weights, report.multiplicities, report.lr_coefficients
            ),
        },
    };
    Ok(Outcome::with_code(text, code))
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let ctx = build_context(cli)?;
    match &cli.command {
        Command::Inequalities => cmd_inequalities(&ctx),
        Command::Enumerate { cross_validate } => cmd_enumerate(&ctx, *cross_validate),
        Command::Mult { m } => cmd_mult(&ctx, m),
        Command::Lr { mu, nu } => cmd_lr(&ctx, mu, nu.as_deref()),
        Command::Epsstar { point, index } => cmd_epsstar(&ctx, point, *index),
        Command::CheckPositivity => cmd_check_positivity(&ctx),
        Command::CheckAmple => cmd_check_ample(&ctx),
        Command::Verify { max_weight } => cmd_verify(&ctx, *max_weight),
        Command::Member { point } => cmd_member(&ctx, point),
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Inconclusive(_)
        | Error::DepthCapReached { .. }
        | Error::IncompleteEnumeration { .. }
        | Error::BudgetExceeded { .. } => EXIT_INCONCLUSIVE,
        Error::CrossValidation { .. } => EXIT_MISMATCH,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let mut text = out.text;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            // a closed pipe is not an error for the command itself
            let _ = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
