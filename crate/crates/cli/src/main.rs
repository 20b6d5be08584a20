//! `fcc`: construct, verify, decode and search function-correcting codes.
//!
//! Exit codes: 0 success, 1 verification or decoding failure, 2 format or
//! usage error, 3 budget exceeded.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;

use fcc_core::bounds::BoundReport;
use fcc_core::channel::{inject_with, seeded_rng};
use fcc_core::constructions::{bch_systematic, or_scheme, rs_systematic, ConstructionReport};
use fcc_core::formats::{parse_function_file, parse_scheme_file, write_scheme_file};
use fcc_core::grid::{grid_function, run_experiment_grid, GridSpec};
use fcc_core::message::rank_to_message;
use fcc_core::search::DEFAULT_NODE_BUDGET;
use fcc_core::{
    exact_redundancy, verify_fcc, DecodeMode, Decoder, Elem, Error, FccScheme, FunctionTable,
    DEFAULT_BUDGET,
};

#[derive(Parser, Debug)]
#[command(
    name = "fcc",
    version,
    about = "Function-correcting codes over finite fields"
)]
struct Cli {
    /// Field order (prime power)
    #[arg(long, global = true)]
    q: Option<u32>,
    /// Message length
    #[arg(long, global = true)]
    k: Option<usize>,
    /// Number of symbol errors to tolerate
    #[arg(long, global = true)]
    t: Option<usize>,
    /// Input scheme file
    #[arg(long = "in", global = true)]
    input: Option<PathBuf>,
    /// Output file (stdout when omitted)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Enumeration budget, or node budget for `search` and `grid`.
    /// Overrides FCC_BUDGET.
    #[arg(long, global = true)]
    budget: Option<u128>,
    /// Fail when no codeword lies within radius t
    #[arg(long, global = true, num_args = 0..=1, default_value_t = true,
          default_missing_value = "true", action = clap::ArgAction::Set)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Rs,
    Bch,
    Or,
}

#[derive(clap::Args, Debug, Clone)]
struct FunctionArgs {
    /// Built-in function (`or`, `identity`, `threshold:2`, `linear:1,1`, `random`, ...)
    #[arg(long)]
    function: Option<String>,
    /// Function table file
    #[arg(long, conflicts_with = "function")]
    function_file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an encoder and write it as a scheme file
    Construct {
        #[arg(value_enum)]
        kind: Kind,
    },
    /// Encode one message with a scheme
    Encode {
        /// Message symbols, e.g. "1 0 1"
        #[arg(long)]
        message: String,
    },
    /// Recover f(u) from a received word
    Decode {
        #[command(flatten)]
        function: FunctionArgs,
        /// Received symbols, e.g. "1 0 1 1 1"
        #[arg(long)]
        received: String,
    },
    /// Check the FCC distance condition for a scheme and function
    Verify {
        #[command(flatten)]
        function: FunctionArgs,
    },
    /// Exact optimal redundancy by exhaustive search
    Search {
        #[command(flatten)]
        function: FunctionArgs,
    },
    /// Redundancy bounds for (q, k, t)
    Bounds {
        /// Image size of f
        #[arg(long, default_value_t = 2)]
        image: usize,
        #[arg(long)]
        csv: bool,
    },
    /// Random channel trials against a scheme
    Simulate {
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Fixed error weight (default: uniform in 0..=t)
        #[arg(long)]
        weight: Option<usize>,
    },
    /// Sweep exact redundancy and bounds over a parameter grid, as CSV
    Grid {
        /// Field orders, e.g. "2,3" or "2..5"
        #[arg(long = "qs", default_value = "2")]
        qs: String,
        #[arg(long = "ks", default_value = "2..3")]
        ks: String,
        #[arg(long = "ts", default_value = "1")]
        ts: String,
        #[arg(long, default_value = "or")]
        functions: String,
        #[arg(long, default_value_t = 64)]
        max_messages: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Record wall-clock seconds per cell
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    /// Verification or decoding did not succeed.
    Check(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Core(e.into())
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Core(Error::BeyondRadius { .. }) => 1,
            Failure::Core(Error::BudgetExceeded { .. } | Error::SearchBudgetExceeded { .. }) => 3,
            Failure::Core(_) | Failure::Usage(_) => 2,
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn need<T>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| Failure::Usage(format!("missing --{flag}")))
}

fn enumeration_budget(cli: &Cli) -> CliResult<u128> {
    if let Some(b) = cli.budget {
        return Ok(b);
    }
    match std::env::var("FCC_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("FCC_BUDGET=`{v}` is not an integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn node_budget(cli: &Cli) -> u64 {
    cli.budget
        .map_or(DEFAULT_NODE_BUDGET, |b| b.min(u128::from(u64::MAX)) as u64)
}

fn emit(cli: &Cli, text: &str) -> CliResult<()> {
    match &cli.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn load_scheme(cli: &Cli) -> CliResult<FccScheme> {
    let path = need(cli.input.as_ref(), "in")?;
    Ok(parse_scheme_file(&fs::read_to_string(path)?)?)
}

fn load_function(cli: &Cli, args: &FunctionArgs, q: u32, k: usize) -> CliResult<FunctionTable> {
    match (&args.function, &args.function_file) {
        (_, Some(path)) => Ok(parse_function_file(&fs::read_to_string(path)?)?),
        (Some(name), None) => Ok(grid_function(name, q, k, cli.seed)?),
        (None, None) => Err(Failure::Usage("give --function or --function-file".into())),
    }
}

fn parse_symbols(text: &str) -> CliResult<Vec<Elem>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse().map(Elem).map_err(|_| {
                Failure::Core(Error::Format {
                    line: 1,
                    msg: format!("bad symbol `{s}`"),
                })
            })
        })
        .collect()
}

fn join(v: &[Elem]) -> String {
    v.iter()
        .map(|e| e.0.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// "2,3,5" or "2..5" (inclusive).
fn parse_list<T>(text: &str) -> CliResult<Vec<T>>
where
    T: std::str::FromStr + Copy + TryFrom<u64>,
{
    let bad = || Failure::Usage(format!("bad list `{text}`"));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: u64 = a.trim().parse().map_err(|_| bad())?;
            let b: u64 = b.trim().parse().map_err(|_| bad())?;
            for v in a..=b {
                out.push(T::try_from(v).map_err(|_| bad())?);
            }
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    Ok(out)
}

fn describe(rep: &ConstructionReport) -> String {
    let mut s = format!(
        "{}: [{}, {}, >= {}]_{} code, r = {}",
        rep.construction, rep.n, rep.k, rep.claimed_distance, rep.q, rep.r
    );
    if let (Some(m), Some(g)) = (rep.extension_degree, &rep.generator_poly) {
        let g: Vec<String> = g.iter().map(u32::to_string).collect();
        s.push_str(&format!(", m = {m}, g = [{}]", g.join(" ")));
    }
    s
}

fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Construct { kind } => {
            let k = need(cli.k, "k")?;
            let t = need(cli.t, "t")?;
            let rep = match kind {
                Kind::Rs => rs_systematic(u64::from(need(cli.q, "q")?), k, t)?,
                Kind::Bch => bch_systematic(k, t)?,
                Kind::Or => or_scheme(u64::from(cli.q.unwrap_or(2)), k, t)?,
            };
            eprintln!("{}", describe(&rep));
            emit(cli, &write_scheme_file(&rep.scheme))
        }
        Command::Encode { message } => {
            let scheme = load_scheme(cli)?;
            let c = scheme.encode(&parse_symbols(message)?)?;
            emit(cli, &format!("{}\n", join(&c)))
        }
        Command::Decode { function, received } => {
            let scheme = load_scheme(cli)?;
            let t = need(cli.t, "t")?;
            let f = load_function(cli, function, scheme.q(), scheme.k())?;
            let decoder = Decoder::new(&scheme, &f, t, enumeration_budget(cli)?)?;
            let mode = if cli.strict {
                DecodeMode::Strict
            } else {
                DecodeMode::BestEffort
            };
            let out = decoder.decode(&parse_symbols(received)?, mode)?;
            emit(
                cli,
                &format!(
                    "label {} distance {} within_radius {}\n",
                    out.label, out.distance, out.within_radius
                ),
            )?;
            if out.within_radius {
                Ok(())
            } else {
                Err(Failure::Check("no codeword within radius t".into()))
            }
        }
        Command::Verify { function } => {
            let scheme = load_scheme(cli)?;
            let t = need(cli.t, "t")?;
            let f = load_function(cli, function, scheme.q(), scheme.k())?;
            let res = verify_fcc(&scheme, &f, t, enumeration_budget(cli)?)?;
            match &res.violation {
                None => emit(
                    cli,
                    &format!("PASS ({} pairs checked)\n", res.pairs_checked),
                ),
                Some(v) => {
                    emit(
                        cli,
                        &format!(
                            "FAIL u = [{}] v = [{}] distance {} < {}\n",
                            join(&v.u),
                            join(&v.v),
                            v.distance,
                            2 * t + 1
                        ),
                    )?;
                    Err(Failure::Check("distance condition violated".into()))
                }
            }
        }
        Command::Search { function } => {
            let t = need(cli.t, "t")?;
            let f = match &function.function_file {
                Some(_) => load_function(cli, function, 0, 0)?,
                None => load_function(cli, function, need(cli.q, "q")?, need(cli.k, "k")?)?,
            };
            let res = exact_redundancy(&f, t, node_budget(cli))?;
            eprintln!(
                "r_f = {} (infeasible: {:?}, nodes: {})",
                res.r, res.infeasible, res.nodes
            );
            match &cli.out {
                Some(path) => fs::write(path, write_scheme_file(&res.witness))?,
                None => println!("{}", res.r),
            }
            Ok(())
        }
        Command::Bounds { image, csv } => {
            let rep = BoundReport::compute(
                need(cli.q, "q")?,
                need(cli.k, "k")?,
                need(cli.t, "t")?,
                *image,
            )?;
            let text = if *csv {
                format!("{}\n{}\n", BoundReport::CSV_HEADER, rep.csv_row())
            } else {
                rep.to_string()
            };
            emit(cli, &text)
        }
        Command::Simulate {
            function,
            trials,
            weight,
        } => {
            let scheme = load_scheme(cli)?;
            let t = need(cli.t, "t")?;
            let f = load_function(cli, function, scheme.q(), scheme.k())?;
            let decoder = Decoder::new(&scheme, &f, t, enumeration_budget(cli)?)?;
            let mut rng = seeded_rng(cli.seed);
            let total = f.values().len() as u64;
            let mut failures = 0u64;
            for _ in 0..*trials {
                let rank = rng.random_range(0..total);
                let u = rank_to_message(scheme.q(), scheme.k(), rank);
                let w = weight.unwrap_or_else(|| rng.random_range(0..=t.min(scheme.n())));
                let y = inject_with(scheme.field(), &scheme.encode(&u)?, w, &mut rng)?;
                let out = decoder.decode(&y, DecodeMode::BestEffort)?;
                if out.label != f.value(rank) {
                    failures += 1;
                }
            }
            emit(
                cli,
                &format!("{}/{} decoded f(u) correctly\n", trials - failures, trials),
            )?;
            if failures == 0 {
                Ok(())
            } else {
                Err(Failure::Check(format!(
                    "{failures} trials decoded the wrong value"
                )))
            }
        }
        Command::Grid {
            qs,
            ks,
            ts,
            functions,
            max_messages,
            workers,
            timing,
        } => {
            let spec = GridSpec {
                qs: parse_list(qs)?,
                ks: parse_list(ks)?,
                ts: parse_list(ts)?,
                functions: split_functions(functions),
                node_budget: node_budget(cli),
                max_messages: *max_messages,
                seed: cli.seed,
                timing: *timing,
                workers: *workers,
            };
            match &cli.out {
                Some(path) => {
                    let file = fs::File::create(path)?;
                    run_experiment_grid(&spec, io::BufWriter::new(file))?;
                }
                None => {
                    run_experiment_grid(&spec, io::stdout().lock())?;
                }
            }
            Ok(())
        }
    }
}

/// Splits on commas that are not part of a `name:aux` list.
fn split_functions(text: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let continues_aux =
            part.chars().all(|c| c.is_ascii_digit()) && out.last().is_some_and(|p| p.contains(':'));
        match out.last_mut() {
            Some(last) if continues_aux => {
                last.push(',');
                last.push_str(part);
            }
            _ => out.push(part.to_string()),
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                Failure::Core(err) => eprintln!("error: {err}"),
                Failure::Check(msg) | Failure::Usage(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_and_ranges() {
        assert_eq!(parse_list::<u32>("2,3..5").unwrap(), vec![2, 3, 4, 5]);
        assert!(parse_list::<usize>("a").is_err());
    }

    #[test]
    fn function_lists_keep_aux() {
        assert_eq!(
            split_functions("or,linear:1,1,threshold:2,identity"),
            vec!["or", "linear:1,1", "threshold:2", "identity"]
        );
    }
}
