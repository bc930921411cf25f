//! Command-line front end: argument parsing, dispatch and exit codes.
//!
//! Exit status: 0 on success, 2 on argument/domain errors, 1 on internal
//! invariant violations (a proved guarantee failing re-verification) or
//! I/O failures.

use std::ffi::OsString;
use std::fs::File;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;

use crate::bound::max_degree;
use crate::cubic;
use crate::diophantine::{convergents, frobenius_angle, required_eps};
use crate::error::Error;
use crate::exact::{classify, is_maximal, Classification, MaximalTriple, TracePair};
use crate::output::{write_sector, write_triples, Format};
use crate::search::{enumerate_triples, SearchConfig};
use crate::supersingular::supersingular_degrees;

#[derive(Parser)]
#[command(
    name = "maxcurves",
    about = "Maximal elliptic curves over extension fields: exact checks, degree bounds and triple searches",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether -a_n = floor(2 sqrt(q)^n) for the pair (q, a1)
    Check {
        q: u64,
        #[arg(allow_hyphen_values = true)]
        a1: i64,
        n: u64,
    },
    /// Classify a pair and report its maximal-degree structure
    Classify {
        q: u64,
        #[arg(allow_hyphen_values = true)]
        a1: i64,
    },
    /// The degree cutoff: ordinary maximal degrees satisfy n <= n_max
    Bound { q: u64 },
    /// Convergents of the certified Frobenius angle with parity flags
    Convergents {
        q: u64,
        #[arg(allow_hyphen_values = true)]
        a1: i64,
        /// Denominator cap (defaults to the degree cutoff for q)
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Enumerate maximal triples over a range of prime powers
    Search(SearchArgs),
    /// Degree-3 families and candidate restrictions
    Cubic {
        #[command(subcommand)]
        cmd: CubicCmd,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    qmin: u64,
    #[arg(long)]
    qmax: u64,
    /// Also emit the first degree of each non-empty supersingular progression
    #[arg(long)]
    include_supersingular: bool,
    /// Worker threads (0 = all cores)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = CliFormat::Csv)]
    format: CliFormat,
    /// Write to a file instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Re-verify every emitted triple with the exact test (default on)
    #[arg(long, overrides_with = "no_verify")]
    verify: bool,
    #[arg(long)]
    no_verify: bool,
    /// Smallest degree to report
    #[arg(long, default_value_t = 2)]
    nfloor: u64,
}

#[derive(Subcommand)]
enum CubicCmd {
    /// Triples (a1^2+b, a1, 3) guaranteed by the condition b^2 <= a1
    Soomro {
        #[arg(long)]
        amax: i64,
        #[arg(long, value_enum, default_value_t = CliFormat::Csv)]
        format: CliFormat,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// The two trace values that can be 3-maximal for q
    Candidates { q: u64 },
    /// Gaussian primes p = a^2 + c^2 in the thin sector c <= a^(1/4)
    Sector {
        #[arg(long)]
        amax: u64,
        /// Sector exponent, e.g. 0.119 or 119/1000; must be below 1/8
        #[arg(long)]
        theta: Option<String>,
        #[arg(long, value_enum, default_value_t = CliFormat::Csv)]
        format: CliFormat,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliFormat {
    Csv,
    Jsonl,
}

impl From<CliFormat> for Format {
    fn from(f: CliFormat) -> Format {
        match f {
            CliFormat::Csv => Format::Csv,
            CliFormat::Jsonl => Format::Jsonl,
        }
    }
}

/// Parse and dispatch; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::GuaranteeViolated(_) | Error::PrecisionExhausted { .. } | Error::Io(_) => 1,
        _ => 2,
    }
}

fn dispatch(cmd: Cmd) -> crate::error::Result<()> {
    match cmd {
        Cmd::Check { q, a1, n } => {
            if n < 1 {
                return Err(Error::InvalidArgument("degree must be positive"));
            }
            let pair = TracePair::new(q, a1)?;
            print_out(format!("{}\n", is_maximal(pair, n)))
        }
        Cmd::Classify { q, a1 } => {
            let pair = TracePair::new(q, a1)?;
            match classify(pair) {
                Classification::Ordinary => print_out("Ordinary\n".into()),
                Classification::Supersingular { order } => {
                    let prog = supersingular_degrees(pair)?;
                    let degrees = if prog.is_empty_set() {
                        "none".to_string()
                    } else if prog.empty {
                        // only the exceptional member
                        format!("n = {}", prog.exceptional.unwrap())
                    } else {
                        let mut s = format!("n = {} (mod {})", prog.offset, prog.modulus);
                        if let Some(e) = prog.exceptional {
                            s.push_str(&format!(" and n = {e}"));
                        }
                        s
                    };
                    print_out(format!(
                        "Supersingular order {order}, maximal degrees: {degrees}\n"
                    ))
                }
            }
        }
        Cmd::Bound { q } => {
            let b = max_degree(q)?;
            print_out(format!(
                "n_max = {}\nbracket = ({}, {})\n",
                b.n_max, b.bracket.0, b.bracket.1
            ))
        }
        Cmd::Convergents { q, a1, limit } => {
            let cap = match limit {
                Some(l) if l >= 1 => l,
                Some(_) => return Err(Error::InvalidArgument("limit must be positive")),
                None => max_degree(q)?.n_max,
            };
            let angle = frobenius_angle(q, a1, &required_eps(q, cap))?;
            let mut table = String::from("m,n,odd_odd\n");
            for c in convergents(&angle.x(), cap) {
                table.push_str(&format!("{},{},{}\n", c.m, c.n, c.is_odd_odd()));
            }
            print_out(table)
        }
        Cmd::Search(args) => {
            let cfg = SearchConfig {
                q_min: args.qmin,
                q_max: args.qmax,
                include_supersingular: args.include_supersingular,
                n_floor: args.nfloor,
                parallelism: args.jobs,
            };
            let triples = enumerate_triples(&cfg)?;
            if !args.no_verify {
                verify_triples(&triples)?;
            }
            emit(args.out.as_deref(), |w| write_triples(w, &triples, args.format.into()))
        }
        Cmd::Cubic { cmd } => match cmd {
            CubicCmd::Soomro { amax, format, out } => {
                if amax < 2 {
                    return Err(Error::InvalidArgument("amax must be at least 2"));
                }
                let mut triples = Vec::new();
                for a1 in 2..=amax {
                    let bmax = crate::exact::isqrt_u128(a1 as u128) as i64;
                    for b in -bmax..=bmax {
                        if let Some(t) = cubic::soomro_test(a1, b)? {
                            triples.push(t);
                        }
                    }
                }
                triples.sort_unstable_by_key(|t| (t.q, t.a1));
                emit(out.as_deref(), |w| write_triples(w, &triples, format.into()))
            }
            CubicCmd::Candidates { q } => {
                let mut out = String::new();
                for a1 in cubic::cubic_candidates(q)? {
                    out.push_str(&format!("{a1}\n"));
                }
                print_out(out)
            }
            CubicCmd::Sector { amax, theta, format, out } => {
                let theta = match theta {
                    Some(t) => parse_theta(&t)?,
                    None => cubic::default_sector_theta(),
                };
                let rows = cubic::sector_enumerate(amax, theta)?;
                emit(out.as_deref(), |w| write_sector(w, &rows, format.into()))
            }
        },
    }
}

/// Write a small blob to stdout, treating a closed pipe as success.
fn print_out(s: String) -> crate::error::Result<()> {
    emit(None, |w| w.write_all(s.as_bytes()))
}

fn verify_triples(triples: &[MaximalTriple]) -> crate::error::Result<()> {
    for t in triples {
        let pair = TracePair::new(t.q, t.a1)?;
        if !is_maximal(pair, t.n) {
            return Err(Error::GuaranteeViolated("emitted triple failed re-verification"));
        }
    }
    Ok(())
}

/// Accept decimal ("0.119") or fraction ("119/1000") sector exponents.
fn parse_theta(s: &str) -> crate::error::Result<Rational64> {
    let bad = Error::InvalidArgument("theta must be a decimal like 0.119 or a fraction like 119/1000");
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad.clone())?;
        let d: i64 = d.trim().parse().map_err(|_| bad.clone())?;
        if d == 0 {
            return Err(bad);
        }
        return Ok(Rational64::new(n, d));
    }
    match s.split_once('.') {
        Some((int, frac)) if frac.len() <= 15 && !frac.is_empty() => {
            let int_part: i64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad.clone())? };
            let frac_part: i64 = frac.parse().map_err(|_| bad.clone())?;
            let den = 10i64.pow(frac.len() as u32);
            Ok(Rational64::new(int_part * den + frac_part, den))
        }
        None => {
            let v: i64 = s.parse().map_err(|_| bad.clone())?;
            Ok(Rational64::new(v, 1))
        }
        _ => Err(bad),
    }
}

fn emit<F>(path: Option<&std::path::Path>, write: F) -> crate::error::Result<()>
where
    F: FnOnce(&mut dyn Write) -> std::io::Result<()>,
{
    // a consumer closing the pipe early (e.g. `... | head`) is not an error
    let io_err = |e: std::io::Error| {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            None
        } else {
            Some(Error::Io(e.to_string()))
        }
    };
    let result = match path {
        Some(p) => File::create(p).and_then(|mut f| write(&mut f)),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock)
        }
    };
    match result {
        Ok(()) => Ok(()),
        Err(e) => match io_err(e) {
            None => Ok(()),
            Some(err) => Err(err),
        },
    }
}
