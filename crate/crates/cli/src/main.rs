//! `eulerian`: distribution tables, identity campaigns, involution reports and
//! CLT sweeps for the Eulerian families of types A, B and D.
//!
//! Exit codes: 0 everything passed, 1 some verdict failed, 2 usage error,
//! 3 resource limit exceeded.

use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eulerian_core::closed_forms::closed_distribution;
use eulerian_core::clt::{clt_report, reports_to_csv, DistReport};
use eulerian_core::involution::verify_involution;
use eulerian_core::verify::{carlitz_campaign, Identity};
use eulerian_core::{
    Ambient, Caps, CarlitzFamily, Enumerator, Error, Family, GroupId, SignClass, StatKind, Verdict,
};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "eulerian",
    version,
    about = "Exact Eulerian distributions on Weyl groups of types A, B and D"
)]
struct Cli {
    /// Worker threads (default: all hardware threads).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Accepted for CI scripts; nothing in this tool is random.
    #[arg(long, global = true)]
    seedless: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a distribution table.
    Dist(DistArgs),
    /// Run identity verifications.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Exact moments and Kolmogorov distances over a range of n.
    Clt(CltArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Closed,
    Brute,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct DistArgs {
    #[arg(long)]
    group: GroupId,
    #[arg(long)]
    stat: StatKind,
    #[arg(long, default_value = "all")]
    sign: SignClass,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "closed")]
    method: Method,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Carlitz identity for one family, every sign case.
    Carlitz {
        #[arg(long)]
        family: CarlitzFamily,
        #[arg(long, value_parser = parse_range)]
        n_range: RangeInclusive<usize>,
        /// Truncation order K (default max(n + 2, 50)).
        #[arg(long)]
        order: Option<usize>,
    },
    /// A named identity.
    Identity {
        #[arg(long)]
        name: Identity,
        #[arg(long, value_parser = parse_range)]
        n_range: RangeInclusive<usize>,
    },
    /// The six-class involution on D_n and B_n - D_n.
    Involution {
        #[arg(long, value_parser = parse_range)]
        n_range: RangeInclusive<usize>,
    },
}

#[derive(Args, Debug)]
struct CltArgs {
    #[arg(long)]
    family: Family,
    #[arg(long, default_value = "all")]
    sign: SignClass,
    #[arg(long, value_parser = parse_range)]
    n_range: RangeInclusive<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

/// `A..B` (inclusive) or a single `N`.
fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("`{s}` is not a range of the form A..B");
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), s.trim()),
    };
    let a: usize = a.parse().map_err(|_| bad())?;
    let b: usize = b.parse().map_err(|_| bad())?;
    if a > b {
        return Err(format!("empty range `{s}`"));
    }
    Ok(a..=b)
}

/// Raises the start of `range` to `onset`, noting the change on stderr.
fn clip(range: &RangeInclusive<usize>, onset: usize, what: &str) -> Option<RangeInclusive<usize>> {
    let start = *range.start();
    if start < onset {
        eprintln!("note: {what} starts at n = {onset}; skipping n < {onset}");
    }
    let start = start.max(onset);
    (start <= *range.end()).then(|| start..=*range.end())
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::ResourceLimit { .. } => EXIT_RESOURCE,
        Error::Inconsistency(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

fn print_verdicts(verdicts: &[Verdict]) -> u8 {
    for v in verdicts {
        println!("{}", v.to_json());
    }
    if verdicts.iter().all(|v| v.pass) {
        0
    } else {
        EXIT_FAIL
    }
}

fn cmd_dist(en: &Enumerator, args: &DistArgs) -> Result<u8, Error> {
    let brute = || en.brute_distribution(args.n, args.group, args.sign, args.stat);
    let closed = || closed_distribution(args.n, args.group, args.sign, args.stat);
    let (table, matched) = match args.method {
        Method::Closed => (closed()?, None),
        Method::Brute => (brute()?, None),
        Method::Both => {
            let c = closed()?;
            let b = brute()?;
            let same = c == b;
            (c, Some(same))
        }
    };
    match args.format {
        Format::Json => println!("{}", table.to_json()),
        Format::Csv => print!("{}", table.to_csv()),
    }
    Ok(match matched {
        Some(true) => {
            println!("match");
            0
        }
        Some(false) => {
            println!("mismatch");
            EXIT_FAIL
        }
        None => 0,
    })
}

fn cmd_verify(en: &Enumerator, cmd: &VerifyCommand) -> Result<u8, Error> {
    match cmd {
        VerifyCommand::Carlitz { family, n_range, order } => {
            let Some(range) = clip(n_range, family.min_n(), &format!("carlitz family {family}")) else {
                return Ok(0);
            };
            let verdicts = en.install(|| carlitz_campaign(*family, range, *order))?;
            Ok(print_verdicts(&verdicts))
        }
        VerifyCommand::Identity { name, n_range } => {
            let Some(range) = clip(n_range, name.min_n(), &format!("identity {name}")) else {
                return Ok(0);
            };
            Ok(print_verdicts(&name.campaign(en, range)?))
        }
        VerifyCommand::Involution { n_range } => {
            let Some(range) = clip(n_range, 3, "the involution") else {
                return Ok(0);
            };
            let mut code = 0;
            for n in range {
                for ambient in Ambient::BOTH {
                    let report = verify_involution(en, n, ambient)?;
                    println!("{}", serde_json::to_string(&report).expect("report serializes"));
                    if !report.pass {
                        code = EXIT_FAIL;
                    }
                }
            }
            Ok(code)
        }
    }
}

fn cmd_clt(en: &Enumerator, args: &CltArgs) -> Result<u8, Error> {
    let Some(range) = clip(&args.n_range, 1, "a CLT sweep") else {
        return Ok(0);
    };
    let reports: Vec<DistReport> = en.install(|| clt_report(args.family, args.sign, range))?;
    match args.format {
        Format::Csv => print!("{}", reports_to_csv(&reports)),
        Format::Json => {
            for r in &reports {
                println!("{}", serde_json::to_string(r).expect("report serializes"));
            }
        }
    }
    for r in reports.iter().filter(|r| !r.checks_pass()) {
        eprintln!(
            "law violated at n = {}: mean {} ({:?}), variance {} ({:?})",
            r.n, r.mean, r.mean_ok, r.variance, r.variance_ok
        );
    }
    Ok(if reports.iter().all(DistReport::checks_pass) { 0 } else { EXIT_FAIL })
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let caps = Caps::from_env()?;
    let en = match cli.threads {
        Some(t) => Enumerator::with_threads(caps, t)?,
        None => Enumerator::new(caps),
    };
    match &cli.command {
        Command::Dist(args) => cmd_dist(&en, args),
        Command::Verify(cmd) => cmd_verify(&en, cmd),
        Command::Clt(args) => cmd_clt(&en, args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
