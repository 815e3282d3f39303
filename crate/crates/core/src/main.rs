use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use cwcode::bounds::BoundReport;
use cwcode::code::Symbol;
use cwcode::error::{Error, Result};
use cwcode::format::{read_code, write_code};
use cwcode::largeset::{ls_search, read_large_set, verify_large_set, write_large_set, Flavor, SearchConfig, SearchOutcome};
use cwcode::lex::{unrank, KSubset};
use cwcode::oracle::{exact_a, vertex_count};
use cwcode::pipeline::{construct, table, table_csv, LsSource, Method, TableOptions};
use cwcode::sequence::gen_y;

/// Optimal q-ary constant-weight-3, distance-4 codes.
#[derive(Parser)]
#[command(name = "cwcode", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Sequence,
    Largeset,
    Shorten,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Sequence => Method::Sequence,
            MethodArg::Largeset => Method::LargeSet,
            MethodArg::Shorten => Method::Shorten,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print U_q(n), C(n,3) and A_q(n,4,3)
    Bound {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
    },
    /// Print the fill sequence y(q)
    Sequence {
        #[arg(long)]
        q: Symbol,
        /// Digit string instead of space-separated entries (q <= 10)
        #[arg(long)]
        compact: bool,
    },
    /// Build and verify an (n,4,3)_q code
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: Symbol,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        /// Large set file; otherwise the trivial set for n = 5, or a search
        #[arg(long)]
        ls: Option<PathBuf>,
        /// Seconds allowed for a large-set search
        #[arg(long, default_value_t = 60.0)]
        time_limit: f64,
        /// Write the code here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a code file
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Lexicographic rank of a set such as 1,3,5
    Rank {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        set: Vec<usize>,
    },
    /// The k-subset of [n] with the given rank
    Unrank {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: u64,
    },
    /// Exact A_q(n,4,3) by clique search
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: Symbol,
        #[arg(long, default_value_t = 60.0)]
        time_limit: f64,
        /// Write the best code found here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a large set file
    LsVerify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Search for a large set with one 5-block per design
    LsSearch {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 60.0)]
        time_limit: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV of A_q(n,4,3) for 3 <= n <= nmax, 2 <= q <= qmax
    Table {
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        qmax: Symbol,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Large set used for the n = 5 mod 6 and n = 4 mod 6 rows
        #[arg(long)]
        ls: Option<PathBuf>,
        /// Largest graph handed to the oracle
        #[arg(long, default_value_t = 3000)]
        oracle_max_vertices: u64,
        /// Seconds per oracle cell
        #[arg(long, default_value_t = 60.0)]
        time_limit: f64,
    },
}

const ORACLE_MAX_VERTICES: u64 = 20_000;

/// Ran to completion, but a check failed.
struct Failed;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failed)) => ExitCode::from(1),
        Err(e @ Error::Internal(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn seconds(s: f64) -> Result<Duration> {
    Duration::try_from_secs_f64(s).map_err(|_| Error::InvalidInput(format!("bad time limit {s}")))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn run(command: Command) -> Result<std::result::Result<(), Failed>> {
    match command {
        Command::Bound { n, q } => {
            println!("{}", BoundReport::new(n, q)?);
        }
        Command::Sequence { q, compact } => {
            println!("{}", gen_y(q)?.render(compact)?);
        }
        Command::Construct { n, q, method, ls, time_limit, out } => {
            let source = match ls {
                Some(path) => LsSource::Given(read_large_set(&read(&path)?)?),
                None => LsSource::Search(SearchConfig { time_limit: seconds(time_limit)?, ..SearchConfig::default() }),
            };
            let built = construct(n, q, method.into(), &source)?;
            let summary = format!(
                "method={}\nsize={}\nmain_value={}\noptimal={}",
                built.method,
                built.code.len(),
                built.main_value,
                if built.optimal() { "yes" } else { "no" }
            );
            match out {
                Some(path) => {
                    write(&path, &write_code(&built.code))?;
                    println!("{summary}");
                }
                None => {
                    print!("{}", write_code(&built.code));
                    eprintln!("{summary}");
                }
            }
        }
        Command::Verify { input } => {
            let code = read_code(&read(&input)?)?;
            let report = code.verify();
            println!("{report}");
            if !report.passed() {
                return Ok(Err(Failed));
            }
        }
        Command::Rank { n, set } => {
            println!("{}", KSubset::new(n, set)?.rank());
        }
        Command::Unrank { n, k, r } => {
            let s = unrank(n, k, r)?;
            let parts: Vec<String> = s.elements().iter().map(|e| e.to_string()).collect();
            println!("{}", parts.join(","));
        }
        Command::Oracle { n, q, time_limit, out } => {
            if n < 3 || q < 2 {
                return Err(Error::InvalidInput(format!("oracle needs n >= 3 and q >= 2, got n = {n}, q = {q}")));
            }
            // the adjacency matrix is quadratic in this
            if vertex_count(n, q) > ORACLE_MAX_VERTICES {
                return Err(Error::InvalidInput(format!(
                    "(n, q) = ({n}, {q}) gives {} words, the oracle takes at most {ORACLE_MAX_VERTICES}",
                    vertex_count(n, q)
                )));
            }
            let bound = BoundReport::new(n as u64, q as u64)?;
            let result = exact_a(n, q, seconds(time_limit)?);
            println!("n={n}\nq={q}\nsize={}", result.exact_size);
            println!("proved_optimal={}", if result.proved_optimal { "yes" } else { "no" });
            println!("main_value={}", bound.main_value);
            println!("nodes={}\nelapsed_ms={}", result.nodes_explored, result.elapsed.as_millis());
            if let Some(path) = out {
                write(&path, &write_code(&result.witness))?;
            }
            if result.proved_optimal && result.exact_size as u64 != bound.main_value {
                return Ok(Err(Failed));
            }
        }
        Command::LsVerify { input } => {
            let ls = read_large_set(&read(&input)?)?;
            let plain = verify_large_set(&ls, Flavor::Plain);
            println!("large_set={plain}");
            if !plain.passed() {
                return Ok(Err(Failed));
            }
            println!("one_five_block={}", verify_large_set(&ls, Flavor::OneFiveBlock));
        }
        Command::LsSearch { n, time_limit, seed, out } => {
            let config = SearchConfig { time_limit: seconds(time_limit)?, seed, ..SearchConfig::default() };
            match ls_search(n, config)? {
                SearchOutcome::Found { large_set, nodes, elapsed } => {
                    let text = write_large_set(&large_set);
                    match out {
                        Some(path) => write(&path, &text)?,
                        None => print!("{text}"),
                    }
                    eprintln!("found in {:.3} s ({nodes} nodes)", elapsed.as_secs_f64());
                }
                SearchOutcome::TimedOut { nodes, elapsed, attempts } => {
                    eprintln!(
                        "timed out after {:.1} s ({nodes} nodes, {attempts} attempts)",
                        elapsed.as_secs_f64()
                    );
                    return Ok(Err(Failed));
                }
                SearchOutcome::Exhausted { nodes, .. } => {
                    eprintln!("no large set of this shape among the tried holes ({nodes} nodes)");
                    return Ok(Err(Failed));
                }
            }
        }
        Command::Table { nmax, qmax, out, ls, oracle_max_vertices, time_limit } => {
            let ls = ls.map(|path| read(&path).and_then(|t| read_large_set(&t))).transpose()?;
            let options = TableOptions {
                oracle_max_vertices: oracle_max_vertices.min(ORACLE_MAX_VERTICES),
                oracle_time_limit: seconds(time_limit)?,
            };
            let csv = table_csv(&table(nmax, qmax, ls.as_ref(), options)?);
            match out {
                Some(path) => write(&path, &csv)?,
                None => print!("{csv}"),
            }
        }
    }
    Ok(Ok(()))
}
