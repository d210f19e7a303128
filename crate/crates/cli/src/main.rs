//! `ekstats`: exact statistics of distinct-prime-divisor counts under
//! near-uniform distributions, constraint verification with witnesses,
//! and wide-integer window factoring.
//!
//! Exit codes: 0 success, 1 usage or runtime error, 2 a `--strict`
//! check found a violated constraint. All output is deterministic:
//! serial reruns of the same invocation are byte-identical.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ekstats_core::{
    alpha, check_axioms, check_large_prime_bound, check_limit_condition, check_small_tuple_bound,
    config, independence_gap, ks_from_cdf, mertens_sum, moment_gap, normalized_cdf, omega_range,
    omega_window, primes_upto, small_prime_bound, stats, Centering, ConstraintReport,
    ConstraintStatus, Error, Family, PerturbedDistribution, PrimeTuple, Result, SampleStream,
    WideInteger,
};

/// Strict-mode verdict: some selected constraint was violated.
const EXIT_VIOLATION: i32 = 2;

fn json_pretty<T: serde::Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.into()))
}

fn json_line<T: serde::Serialize>(value: &T) -> Result<String> {
    serde_json::to_string(value).map_err(|e| Error::Io(e.into()))
}

#[derive(Parser)]
#[command(
    name = "ekstats",
    version,
    about = "Distinct-prime-divisor statistics under near-uniform laws",
    propagate_version = true
)]
struct Cli {
    /// Worker threads for partitionable work (window factoring).
    /// Results are identical for any value; 1 means fully serial.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Decimal places in CSV tables (1..=15).
    #[arg(long, global = true, default_value_t = 6,
          value_parser = clap::value_parser!(u8).range(1..=15))]
    precision: u8,

    /// Write the primary table or report here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count distinct prime divisors over a range or a wide window.
    Omega(OmegaArgs),
    /// Tabulate pmf, CDF and perturbation of a distribution.
    Dist(DistTableArgs),
    /// Verify the perturbation constraints; JSON reports with witnesses.
    Check(CheckArgs),
    /// Normalized step CDF against the standard normal, with the exact
    /// Kolmogorov-Smirnov distance.
    Ekcdf(EkcdfArgs),
    /// Independent-model versus exact moments of the truncated count,
    /// with the scaled gap bound.
    Moments(MomentsArgs),
    /// Sum of prime reciprocals up to n, against log log n.
    Mertens(NOnlyArgs),
    /// The small/large prime threshold n^(1/log log n).
    Alpha(NOnlyArgs),
    /// Gap between a joint divisibility probability and the product of
    /// its single-prime probabilities.
    Independence(IndependenceArgs),
    /// Reproducible seeded draws by inverse transform.
    Sample(SampleArgs),
}

/// Which built-in probability rule to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    /// 1/n on every point.
    Uniform,
    /// P(i) proportional to 1/i.
    Harmonic,
    /// P(i) proportional to 1/i^s; needs --s.
    Zipf,
}

/// Selects the distribution for subcommands that need one.
#[derive(Args, Clone)]
struct DistArgs {
    /// Support size n (required unless --table supplies it).
    #[arg(long)]
    n: Option<u64>,

    /// Built-in family.
    #[arg(long, value_enum, default_value_t = FamilyKind::Uniform)]
    dist: FamilyKind,

    /// Power-law exponent for --dist zipf.
    #[arg(long)]
    s: Option<f64>,

    /// CSV file with header `i,probability` defining a custom law.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["dist", "s"])]
    table: Option<PathBuf>,
}

impl DistArgs {
    fn family(&self) -> Result<Family> {
        match self.dist {
            FamilyKind::Uniform => Ok(Family::Uniform),
            FamilyKind::Harmonic => Ok(Family::Harmonic),
            FamilyKind::Zipf => {
                let s = self
                    .s
                    .ok_or_else(|| Error::usage("--dist zipf needs --s <exponent>"))?;
                Ok(Family::Zipf(s))
            }
        }
    }

    fn build(&self) -> Result<PerturbedDistribution> {
        if let Some(path) = &self.table {
            let file = File::open(path)?;
            let d = PerturbedDistribution::custom_from_csv(BufReader::new(file))?;
            if let Some(n) = self.n {
                if n != d.support() {
                    return Err(Error::usage(format!(
                        "--n {n} does not match the {} entries in {}",
                        d.support(),
                        path.display()
                    )));
                }
            }
            Ok(d)
        } else {
            let n = self
                .n
                .ok_or_else(|| Error::usage("--n is required without --table"))?;
            if self.dist != FamilyKind::Zipf && self.s.is_some() {
                return Err(Error::usage("--s only applies to --dist zipf"));
            }
            self.family()?.instantiate(n)
        }
    }
}

#[derive(Args)]
struct OmegaArgs {
    /// Range start (inclusive); pairs with --to.
    #[arg(long, requires = "to", conflicts_with_all = ["center", "radius"])]
    from: Option<u64>,

    /// Range end (inclusive).
    #[arg(long, requires = "from")]
    to: Option<u64>,

    /// Window center: a decimal integer, may exceed 64 bits.
    #[arg(long, requires = "radius", value_name = "DECIMAL")]
    center: Option<String>,

    /// Window half-width; the window is center-radius ..= center+radius.
    #[arg(long, requires = "center")]
    radius: Option<u64>,
}

#[derive(Args)]
struct DistTableArgs {
    #[command(flatten)]
    dist: DistArgs,

    /// Emit the `i,probability` interchange table at full precision
    /// (re-ingestable via --table) instead of the readable
    /// i,pmf,cdf,epsilon view.
    #[arg(long)]
    emit_table: bool,
}

/// Which constraints `check` runs. Numbers match the report order:
/// 2 the vanishing-limit trend, 3 zero perturbation sum, 4 pointwise
/// perturbation range, 5 the large-prime bound, 6 the small-tuple box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConstraintId {
    #[value(name = "2", alias = "limit")]
    Limit,
    #[value(name = "3", alias = "sum")]
    Sum,
    #[value(name = "4", alias = "range")]
    Range,
    #[value(name = "5", alias = "large")]
    Large,
    #[value(name = "6", alias = "small")]
    Small,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    dist: DistArgs,

    /// Comma-separated constraint selection (numbers or names).
    #[arg(long, value_enum, value_delimiter = ',',
          default_values_t = [ConstraintId::Limit, ConstraintId::Sum,
                              ConstraintId::Range, ConstraintId::Large,
                              ConstraintId::Small])]
    constraints: Vec<ConstraintId>,

    /// Prime tuple for the limit trend, comma-separated.
    #[arg(long, value_delimiter = ',', default_values_t = [2u64])]
    primes: Vec<u64>,

    /// Support schedule for the limit trend (default: powers of ten up
    /// to n, then n).
    #[arg(long, value_delimiter = ',', value_name = "N1,N2,...")]
    n_list: Option<Vec<u64>>,

    /// Final-value threshold for the limit trend (default 10 / min n).
    #[arg(long)]
    threshold: Option<f64>,

    /// Large-prime constant C; inferred as the minimal admissible
    /// value when omitted.
    #[arg(long, alias = "C")]
    c: Option<f64>,

    /// Small-tuple constant D; inferred when omitted.
    #[arg(long, alias = "D")]
    d: Option<f64>,

    /// Largest tuple length enumerated for the small-tuple box.
    #[arg(long, default_value_t = 3)]
    kmax: usize,

    /// Cap on enumerated tuples before the scan reports truncation.
    #[arg(long, default_value_t = config::TUPLE_ENUM_BUDGET)]
    budget: usize,

    /// Exit with status 2 if any selected constraint is violated.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct EkcdfArgs {
    #[command(flatten)]
    dist: DistArgs,

    /// Location parameter of the normalization.
    #[arg(long, value_enum, default_value_t = CenteringKind::Loglog)]
    centering: CenteringKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CenteringKind {
    /// Center at log log n (the limit-law normalization).
    Loglog,
    /// Center at the exact mean of the count (finite-size diagnostic).
    EmpiricalMean,
}

impl From<CenteringKind> for Centering {
    fn from(k: CenteringKind) -> Self {
        match k {
            CenteringKind::Loglog => Centering::LogLog,
            CenteringKind::EmpiricalMean => Centering::EmpiricalMean,
        }
    }
}

#[derive(Args)]
struct MomentsArgs {
    #[command(flatten)]
    dist: DistArgs,

    /// Highest moment order compared.
    #[arg(long, default_value_t = 3)]
    r: u32,

    /// Constant scaling the gap bound max{C, 1/2} alpha^r / n.
    /// The default 0 keeps the bound at its 1/2 floor.
    #[arg(long, alias = "C", default_value_t = 0.0)]
    c: f64,
}

#[derive(Args)]
struct NOnlyArgs {
    /// Upper end of the prime range / the support size.
    #[arg(long)]
    n: u64,
}

#[derive(Args)]
struct IndependenceArgs {
    #[command(flatten)]
    dist: DistArgs,

    /// Distinct primes of the joint divisibility event.
    #[arg(long, value_delimiter = ',', required = true)]
    primes: Vec<u64>,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    dist: DistArgs,

    /// Number of draws.
    #[arg(long, default_value_t = 10)]
    count: u64,

    /// RNG seed; the same seed always yields the same draws.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    let mut sink: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(std::io::stdout())),
    };
    let prec = cli.precision as usize;
    let code = match &cli.command {
        Command::Omega(args) => cmd_omega(args, cli.threads, prec, &mut sink)?,
        Command::Dist(args) => cmd_dist(args, prec, &mut sink)?,
        Command::Check(args) => cmd_check(args, &mut sink)?,
        Command::Ekcdf(args) => cmd_ekcdf(args, prec, &mut sink)?,
        Command::Moments(args) => cmd_moments(args, &mut sink)?,
        Command::Mertens(args) => cmd_mertens(args, &mut sink)?,
        Command::Alpha(args) => cmd_alpha(args, &mut sink)?,
        Command::Independence(args) => cmd_independence(args, &mut sink)?,
        Command::Sample(args) => cmd_sample(args, &mut sink)?,
    };
    // The process exits without unwinding, so flush explicitly.
    sink.flush()?;
    Ok(code)
}

fn cmd_omega(args: &OmegaArgs, threads: usize, prec: usize, sink: &mut dyn Write) -> Result<i32> {
    match (args.from, args.to, &args.center, args.radius) {
        (Some(from), Some(to), None, None) => {
            let table = omega_range(from, to)?;
            writeln!(sink, "m,omega")?;
            for (i, &c) in table.counts().iter().enumerate() {
                writeln!(sink, "{},{}", table.lo() + i as u64, c)?;
            }
            Ok(0)
        }
        (None, None, Some(center), Some(radius)) => {
            let center: WideInteger = center.parse()?;
            let progress = |done: u64, total: u64| {
                eprintln!("window: segment {done}/{total} factored");
            };
            let window = omega_window(center, radius, threads, Some(&progress))?;
            writeln!(sink, "m,omega")?;
            for (m, c) in window.iter() {
                writeln!(sink, "{m},{c}")?;
            }
            writeln!(sink, "mean,{:.prec$}", window.mean())?;
            Ok(0)
        }
        _ => Err(Error::usage(
            "omega needs either --from/--to or --center/--radius",
        )),
    }
}

fn cmd_dist(args: &DistTableArgs, prec: usize, sink: &mut dyn Write) -> Result<i32> {
    let d = args.dist.build()?;
    let n = d.support();
    if args.emit_table {
        if n > config::SUPPORT_ENUM_CAP {
            return Err(Error::resource(format!(
                "table emission over {n} exceeds cap {}",
                config::SUPPORT_ENUM_CAP
            )));
        }
        writeln!(sink, "i,probability")?;
        for i in 1..=n {
            // Shortest round-trip formatting: re-ingesting reproduces
            // the exact binary64 values.
            writeln!(sink, "{},{}", i, d.pmf(i)?)?;
        }
    } else {
        if n > config::SUPPORT_ENUM_CAP {
            return Err(Error::resource(format!(
                "tabulation over {n} exceeds cap {}",
                config::SUPPORT_ENUM_CAP
            )));
        }
        writeln!(sink, "i,pmf,cdf,epsilon")?;
        let mut cum = ekstats_core::KahanSum::new();
        for i in 1..=n {
            let p = d.pmf(i)?;
            cum += p;
            writeln!(
                sink,
                "{},{:.prec$},{:.prec$},{:.prec$}",
                i,
                p,
                cum.value(),
                d.epsilon(i)?
            )?;
        }
    }
    Ok(0)
}

/// Powers of ten up to n, then n itself; [n] when n < 10.
fn default_schedule(n: u64) -> Vec<u64> {
    let mut list = Vec::new();
    let mut v = 10u64;
    while v <= n {
        list.push(v);
        v = v.saturating_mul(10);
    }
    if list.last() != Some(&n) {
        list.push(n);
    }
    list
}

fn cmd_check(args: &CheckArgs, sink: &mut dyn Write) -> Result<i32> {
    let d = args.dist.build()?;
    let n = d.support();
    let mut selected = args.constraints.clone();
    selected.dedup();
    let mut reports: Vec<ConstraintReport> = Vec::new();

    // The axiom scan serves both pointwise constraints.
    let axioms = if selected.contains(&ConstraintId::Sum) || selected.contains(&ConstraintId::Range)
    {
        Some(check_axioms(&d)?)
    } else {
        None
    };
    // The small-tuple scan also carries the inferred D for reuse.
    for id in &selected {
        match id {
            ConstraintId::Limit => {
                if args.dist.table.is_some() {
                    return Err(Error::usage(
                        "the limit trend scales the law along a schedule of \
                         supports, so it needs a rule-based --dist, not a \
                         fixed --table",
                    ));
                }
                let tuple = PrimeTuple::new(args.primes.clone())?;
                let schedule = match &args.n_list {
                    Some(list) => list.clone(),
                    None => default_schedule(n),
                };
                let trend =
                    check_limit_condition(args.dist.family()?, &tuple, &schedule, args.threshold)?;
                reports.push(trend.report());
            }
            ConstraintId::Sum => {
                reports.push(axioms.as_ref().expect("scanned above").sum_report());
            }
            ConstraintId::Range => {
                reports.push(axioms.as_ref().expect("scanned above").range_report());
            }
            ConstraintId::Large => {
                let scan = check_large_prime_bound(&d, args.c)?;
                reports.push(scan.report());
            }
            ConstraintId::Small => {
                let scan = check_small_tuple_bound(&d, args.d, args.kmax, args.budget)?;
                reports.extend(scan.reports());
            }
        }
    }

    writeln!(sink, "{}", json_pretty(&reports)?)?;
    let violated = reports
        .iter()
        .any(|r| r.status == ConstraintStatus::Violated);
    if args.strict && violated {
        Ok(EXIT_VIOLATION)
    } else {
        Ok(0)
    }
}

fn cmd_ekcdf(args: &EkcdfArgs, prec: usize, sink: &mut dyn Write) -> Result<i32> {
    let d = args.dist.build()?;
    let cdf = normalized_cdf(&d, args.centering.into())?;
    let ks = ks_from_cdf(&cdf)?;
    writeln!(sink, "x,F_n,Phi,gap")?;
    for &(x, f) in &cdf.points {
        let phi = ekstats_core::normal_cdf(x)?;
        writeln!(
            sink,
            "{:.prec$},{:.prec$},{:.prec$},{:.prec$}",
            x,
            f,
            phi,
            f - phi
        )?;
    }
    sink.flush()?;
    // The summary always lands on stdout so the table can be redirected
    // with --out while the statistic stays visible.
    println!("{}", json_line(&ks)?);
    Ok(0)
}

fn cmd_moments(args: &MomentsArgs, sink: &mut dyn Write) -> Result<i32> {
    let d = args.dist.build()?;
    let mut reports = Vec::with_capacity(args.r as usize + 1);
    for r in 0..=args.r {
        reports.push(moment_gap(&d, r, args.c)?);
    }
    writeln!(sink, "{}", json_pretty(&reports)?)?;
    Ok(0)
}

fn cmd_mertens(args: &NOnlyArgs, sink: &mut dyn Write) -> Result<i32> {
    let sum = mertens_sum(args.n)?;
    let log_log = if args.n >= 3 {
        Some((args.n as f64).ln().ln())
    } else {
        None
    };
    let body = serde_json::json!({
        "n": args.n,
        "sum": sum,
        "log_log_n": log_log,
        "offset": log_log.map(|l| sum - l),
    });
    writeln!(sink, "{}", json_pretty(&body)?)?;
    Ok(0)
}

fn cmd_alpha(args: &NOnlyArgs, sink: &mut dyn Write) -> Result<i32> {
    let a = alpha(args.n)?;
    let bound = small_prime_bound(args.n)?;
    let count = primes_upto(bound)?.len();
    let body = serde_json::json!({
        "n": args.n,
        "alpha": a,
        "small_prime_bound": bound,
        "small_prime_count": count,
    });
    writeln!(sink, "{}", json_pretty(&body)?)?;
    Ok(0)
}

fn cmd_independence(args: &IndependenceArgs, sink: &mut dyn Write) -> Result<i32> {
    let d = args.dist.build()?;
    let tuple = PrimeTuple::new(args.primes.clone())?;
    let joint = stats::event_probability(&d, &tuple)?;
    let gap = independence_gap(&d, &tuple)?;
    let mut product = 1.0f64;
    for &p in tuple.primes() {
        product *= stats::event_probability(&d, &PrimeTuple::new(vec![p])?)?;
    }
    let body = serde_json::json!({
        "n": d.support(),
        "primes": tuple.primes(),
        "joint": joint,
        "product": product,
        "gap": gap,
    });
    writeln!(sink, "{}", json_pretty(&body)?)?;
    Ok(0)
}

fn cmd_sample(args: &SampleArgs, sink: &mut dyn Write) -> Result<i32> {
    let d = args.dist.build()?;
    let mut stream = SampleStream::new(&d, args.seed)?;
    writeln!(sink, "index")?;
    for _ in 0..args.count {
        writeln!(sink, "{}", stream.next_index())?;
    }
    Ok(0)
}
