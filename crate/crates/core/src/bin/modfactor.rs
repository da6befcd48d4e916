use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use modfactor::bounds::{square_divisor_bounds, BoundsCertificate, BoundsReport};
use modfactor::detectors::{
    primality_test, squarefree_test, PrimalityConclusion, SquarefreeConclusion,
};
use modfactor::dims::{dim_delta, dim_g, dim_h, DefaultOracle, DimensionOracle};
use modfactor::factoring::{
    factor_squarefull_two_values, full_factor_three_values, ReductionOptions, SquarefullSplit,
    DEFAULT_RETRY_BUDGET,
};
use modfactor::serde_num::format_rational;
use modfactor::sweep::{prime_sweep, squarefree_sweep, SweepReport};
use modfactor::{Error, ExactRational, Factorization, MillerRabin, MAX_WEIGHT};

const EXIT_FAILURE: u8 = 1;
const EXIT_EXCEPTION: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// Dimension counts of weight-k cusp forms on Γ0(N), and the squarefreeness,
/// primality and factoring procedures built on them.
///
/// Values of A and B that are not given on the command line are computed by
/// factoring N with trial division and Pollard rho.
#[derive(Parser, Debug)]
#[command(name = "modfactor", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the randomized reductions; entropy-seeded when absent.
    #[arg(long, global = true, env = "MODFACTOR_SEED")]
    seed: Option<u64>,
    /// Largest weight accepted.
    #[arg(long, global = true, default_value_t = MAX_WEIGHT as u64)]
    max_k: u64,
    /// Random bases tried per split in the factoring reductions.
    #[arg(long, global = true, default_value_t = DEFAULT_RETRY_BUDGET,
          value_parser = clap::value_parser!(u32).range(1..))]
    retry_budget: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate A, B, G, H or delta = G − A at (k, N).
    Dim {
        #[arg(value_enum, ignore_case = true)]
        kind: DimKind,
        k: u64,
        n: BigUint,
    },
    /// Run the squarefree (G vs A) or prime (H vs B) detector.
    Test {
        #[arg(value_enum)]
        kind: TestKind,
        k: u64,
        n: BigUint,
        /// A(k, N) or B(k, N); computed when omitted.
        value: Option<BigUint>,
    },
    /// Bound the square divisors d ≥ 27 of N using A(k, N).
    Bounds {
        k: u64,
        n: BigUint,
        /// A(k, N); computed when omitted.
        value: Option<BigUint>,
    },
    /// Factor N from oracle values.
    Factor {
        #[command(subcommand)]
        mode: FactorMode,
    },
    /// Check the squarefree detector (or, with --prime, the prime detector) over a range.
    Sweep(SweepArgs),
    /// Same as `sweep --prime`.
    SweepPrime(SweepArgs),
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Inclusive range, written START..END.
    #[arg(value_parser = parse_range)]
    range: (u64, u64),
    /// Weights to sweep.
    #[arg(long, value_delimiter = ',', default_value = "2,4")]
    weights: Vec<u64>,
    #[arg(long)]
    prime: bool,
}

#[derive(Args, Debug)]
struct PairArgs {
    #[arg(long, default_value_t = 2)]
    k1: u64,
    #[arg(long, default_value_t = 4)]
    k2: u64,
    /// A(k1, N); computed when omitted.
    #[arg(long)]
    a1: Option<BigUint>,
    /// A(k2, N); computed when omitted.
    #[arg(long)]
    a2: Option<BigUint>,
}

#[derive(Subcommand, Debug)]
enum FactorMode {
    /// Split N = E·L from two values of A.
    Squarefull {
        n: BigUint,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Factor N completely from two values of A and one of B.
    Full {
        n: BigUint,
        #[command(flatten)]
        pair: PairArgs,
        /// Weight of the B value.
        #[arg(long, default_value_t = 2)]
        kb: u64,
        /// B(kb, N); computed when omitted.
        #[arg(long)]
        b: Option<BigUint>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
enum DimKind {
    #[value(name = "A")]
    #[serde(rename = "A")]
    A,
    #[value(name = "B")]
    #[serde(rename = "B")]
    B,
    #[value(name = "G")]
    #[serde(rename = "G")]
    G,
    #[value(name = "H")]
    #[serde(rename = "H")]
    H,
    #[value(name = "delta")]
    #[serde(rename = "delta")]
    Delta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TestKind {
    Squarefree,
    Prime,
}

#[derive(Serialize)]
struct DimOutput<'a> {
    kind: DimKind,
    k: u64,
    #[serde(rename = "N")]
    n: String,
    value: &'a str,
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected START..END, got {s:?}"))?;
    let a = a
        .trim()
        .parse::<u64>()
        .map_err(|e| format!("bad range start: {e}"))?;
    let b = b
        .trim()
        .trim_start_matches('=')
        .parse::<u64>()
        .map_err(|e| format!("bad range end: {e}"))?;
    Ok((a, b))
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidWeight(_) | Error::InvalidLevel(_) | Error::Precondition(_) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: String) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message,
    }
}

struct Ctx {
    json: bool,
    seed: Option<u64>,
    max_k: u64,
    opts: ReductionOptions,
}

impl Ctx {
    fn weight(&self, k: u64) -> Result<u32, Failure> {
        if k > self.max_k {
            return Err(usage(format!("weight {k} exceeds --max-k {}", self.max_k)));
        }
        modfactor::weight_class(k)?;
        Ok(k as u32)
    }

    fn rng(&self) -> ChaCha20Rng {
        match self.seed {
            Some(s) => ChaCha20Rng::seed_from_u64(s),
            None => ChaCha20Rng::from_entropy(),
        }
    }

    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) {
        if self.json {
            println!(
                "{}",
                serde_json::to_string(value).expect("serializable output")
            );
        } else {
            println!("{}", text());
        }
    }
}

fn level(n: &BigUint) -> Result<(), Failure> {
    if n == &BigUint::default() {
        return Err(usage("N must be at least 1".into()));
    }
    Ok(())
}

fn a_value(k: u32, n: &BigUint, given: Option<BigUint>) -> Result<BigUint, Failure> {
    match given {
        Some(v) => Ok(v),
        None => Ok(DefaultOracle.query_a(k, n)?.value),
    }
}

fn b_value(k: u32, n: &BigUint, given: Option<BigUint>) -> Result<BigUint, Failure> {
    match given {
        Some(v) => Ok(v),
        None => Ok(DefaultOracle.query_b(k, n)?.value),
    }
}

fn cmd_dim(ctx: &Ctx, kind: DimKind, k: u64, n: BigUint) -> Result<u8, Failure> {
    let kk = ctx.weight(k)?;
    level(&n)?;
    let value = match kind {
        DimKind::A => DefaultOracle.query_a(kk, &n)?.value.to_string(),
        DimKind::B => DefaultOracle.query_b(kk, &n)?.value.to_string(),
        DimKind::G => format_rational(&dim_g(k, &n)?),
        DimKind::H => format_rational(&dim_h(k, &n)?),
        DimKind::Delta => {
            let small = u64::try_from(&n).map_err(|_| {
                Failure::from(Error::Oracle(format!("level {n} is beyond desk scale")))
            })?;
            format_rational(&dim_delta(
                k,
                &modfactor::arith::trial::factor_trial(small),
            )?)
        }
    };
    ctx.emit(
        &DimOutput {
            kind,
            k,
            n: n.to_string(),
            value: &value,
        },
        || value.clone(),
    );
    Ok(0)
}

fn relation_symbol(ord: std::cmp::Ordering) -> &'static str {
    match ord {
        std::cmp::Ordering::Less => "<",
        std::cmp::Ordering::Equal => "=",
        std::cmp::Ordering::Greater => ">",
    }
}

fn cmp_value(lhs: &ExactRational, rhs: &BigUint) -> std::cmp::Ordering {
    lhs.cmp(&ExactRational::from_integer(rhs.clone().into()))
}

fn cmd_test(
    ctx: &Ctx,
    kind: TestKind,
    k: u64,
    n: BigUint,
    value: Option<BigUint>,
) -> Result<u8, Failure> {
    let kk = ctx.weight(k)?;
    if n < BigUint::from(2u32) {
        return Err(usage("N must be at least 2".into()));
    }
    match kind {
        TestKind::Squarefree => {
            let a = a_value(kk, &n, value)?;
            let v = squarefree_test(&n, k, &a)?;
            if let Some(w) = &v.warning {
                eprintln!("warning: {w}");
            }
            ctx.emit(&v, || {
                let mut s = format!(
                    "{}  G({k}, {n}) = {} {} A({k}, {n}) = {a}",
                    serde_plain(&v.conclusion),
                    format_rational(&v.g),
                    relation_symbol(cmp_value(&v.g, &a)),
                );
                if let Some(tag) = &v.exception_tag {
                    s.push_str(&format!("  [{tag}]"));
                }
                s
            });
            Ok(if v.conclusion == SquarefreeConclusion::Exception {
                EXIT_EXCEPTION
            } else {
                0
            })
        }
        TestKind::Prime => {
            let b = b_value(kk, &n, value)?;
            let v = primality_test(&n, k, &b)?;
            if let Some(w) = &v.warning {
                eprintln!("warning: {w}");
            }
            ctx.emit(&v, || {
                let mut s = format!(
                    "{}  H({k}, {n}) = {} {} B({k}, {n}) = {b}",
                    serde_plain(&v.conclusion),
                    format_rational(&v.h),
                    relation_symbol(cmp_value(&v.h, &b)),
                );
                if let Some(tag) = &v.exception_tag {
                    s.push_str(&format!("  [{tag}]"));
                }
                s
            });
            Ok(if v.conclusion == PrimalityConclusion::Exception {
                EXIT_EXCEPTION
            } else {
                0
            })
        }
    }
}

/// The serialized name of a unit enum variant.
fn serde_plain<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|j| j.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_owned(), |v| format!("{v}"))
}

fn bounds_text(r: &BoundsReport) -> String {
    let mut s = format!(
        "T0 = {}\nT = {}\nL = {}",
        format_rational(&r.t0),
        format_rational(&r.t),
        r.curly_l
    );
    match r.certificate {
        BoundsCertificate::NoLargeSquareDivisor => s.push_str("\nNO_LARGE_SQUARE_DIVISOR"),
        BoundsCertificate::Interval => {
            s.push_str(&format!(
                "\ntheta = {}\nx1 = {}\nx0 = {}\nevery square divisor d^2 | N with d >= 27 has x1 < d < x0",
                fmt_opt(r.theta),
                fmt_opt(r.x1),
                fmt_opt(r.x0)
            ));
        }
    }
    s
}

fn cmd_bounds(ctx: &Ctx, k: u64, n: BigUint, value: Option<BigUint>) -> Result<u8, Failure> {
    let kk = ctx.weight(k)?;
    level(&n)?;
    let a = a_value(kk, &n, value)?;
    let r = square_divisor_bounds(k, &n, &a)?;
    ctx.emit(&r, || bounds_text(&r));
    Ok(0)
}

fn factor_values(
    ctx: &Ctx,
    n: &BigUint,
    pair: PairArgs,
) -> Result<(u64, BigUint, u64, BigUint), Failure> {
    let (k1, k2) = (ctx.weight(pair.k1)?, ctx.weight(pair.k2)?);
    if k1 == k2 {
        return Err(usage(format!("--k1 and --k2 must differ, both are {k1}")));
    }
    let a1 = a_value(k1, n, pair.a1)?;
    let a2 = a_value(k2, n, pair.a2)?;
    Ok((pair.k1, a1, pair.k2, a2))
}

fn cmd_factor(ctx: &Ctx, mode: FactorMode) -> Result<u8, Failure> {
    let mut rng = ctx.rng();
    match mode {
        FactorMode::Squarefull { n, pair } => {
            level(&n)?;
            let (k1, a1, k2, a2) = factor_values(ctx, &n, pair)?;
            let split: SquarefullSplit =
                factor_squarefull_two_values(&n, k1, &a1, k2, &a2, &mut rng, &ctx.opts)?;
            ctx.emit(&split, || format!("E = {}\nL = {}", split.e, split.l));
        }
        FactorMode::Full { n, pair, kb, b } => {
            level(&n)?;
            let kbb = ctx.weight(kb)?;
            let (k1, a1, k2, a2) = factor_values(ctx, &n, pair)?;
            let b = b_value(kbb, &n, b)?;
            let f: Factorization =
                full_factor_three_values(&n, k1, &a1, k2, &a2, kb, &b, &mut rng, &ctx.opts)?;
            ctx.emit(&f, || f.to_string());
        }
    }
    Ok(0)
}

fn sweep_text(r: &SweepReport) -> String {
    let mut s = format!(
        "{} sweep over N in {}..={}, k in {:?}: {} checks, {} violations",
        serde_plain(&r.kind).to_lowercase(),
        r.start,
        r.end,
        r.weights,
        r.checked,
        r.violations.len()
    );
    for v in &r.violations {
        s.push_str(&format!("\nviolation k={} N={}: {}", v.k, v.n, v.detail));
    }
    for e in &r.exceptions {
        s.push_str(&format!("\nexception k={} N={}: {}", e.k, e.n, e.tag));
    }
    s
}

fn cmd_sweep(ctx: &Ctx, args: SweepArgs, prime: bool) -> Result<u8, Failure> {
    let weights = args
        .weights
        .iter()
        .map(|&k| ctx.weight(k))
        .collect::<Result<Vec<_>, _>>()?;
    let (start, end) = args.range;
    let r = if prime || args.prime {
        prime_sweep(&DefaultOracle, start, end, &weights)?
    } else {
        squarefree_sweep(&DefaultOracle, start, end, &weights)?
    };
    ctx.emit(&r, || sweep_text(&r));
    Ok(if r.is_clean() { 0 } else { EXIT_FAILURE })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    if cli.max_k < 2 || cli.max_k % 2 == 1 || cli.max_k > u64::from(MAX_WEIGHT) {
        return Err(usage(format!(
            "--max-k must be even and in 2..={MAX_WEIGHT}"
        )));
    }
    let ctx = Ctx {
        json: cli.json,
        seed: cli.seed,
        max_k: cli.max_k,
        opts: ReductionOptions {
            retry_budget: cli.retry_budget,
            primality: MillerRabin::default(),
        },
    };
    match cli.command {
        Command::Dim { kind, k, n } => cmd_dim(&ctx, kind, k, n),
        Command::Test { kind, k, n, value } => cmd_test(&ctx, kind, k, n, value),
        Command::Bounds { k, n, value } => cmd_bounds(&ctx, k, n, value),
        Command::Factor { mode } => cmd_factor(&ctx, mode),
        Command::Sweep(args) => cmd_sweep(&ctx, args, false),
        Command::SweepPrime(args) => cmd_sweep(&ctx, args, true),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
