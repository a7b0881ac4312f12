//! `lottery`: certify `L(n,6,6,2)`, emit and verify ticket sets, and build the
//! toe excess table.
//!
//! Exit codes: 0 success, 1 I/O or internal failure, 2 negative result (a
//! conjectured bound or an invalid design), 3 an emitted design failed
//! verification, 64 usage error, 65 malformed input data.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lottery_core::pipeline::{range_report, table_header, PipelineOptions, Status};
use lottery_core::ticket_file::{format_tickets, parse_tickets};
use lottery_core::toe_oracle::{prove_no_excess_at_most, BuildMode, Optimality, Provenance, ToeExcessTable};
use lottery_core::{assemble, config_for, Configuration, Method};

const EXIT_IO: u8 = 1;
const EXIT_NEGATIVE: u8 = 2;
const EXIT_UNVERIFIED: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;

/// Largest `n` accepted by `bounds`.
const MAX_RANGE_N: usize = 200;
const CACHE_FILE: &str = "toe-table.json";

#[derive(Parser, Debug)]
#[command(name = "lottery", version, about = "Minimal (n,6,6,2) lottery designs")]
struct Cli {
    /// Worker threads (defaults to the available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify L(n,6,6,2) for a range of n.
    Bounds {
        #[arg(long)]
        min: usize,
        #[arg(long)]
        max: usize,
        /// One JSON certificate per line.
        #[arg(long)]
        json: bool,
        /// Include run times (output is then no longer reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Emit the tabulated ticket set for n balls.
    Tickets {
        #[arg(long)]
        n: Option<usize>,
        /// Piece configuration such as `B,C,E,E,E`, replacing the tabulated one.
        #[arg(long)]
        config: Option<String>,
        /// File holding a permutation of 1..n; ball i becomes the i-th entry.
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the lottery property of a ticket file.
    Verify {
        #[arg(long)]
        n: usize,
        file: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        #[arg(long, default_value_t = 6)]
        p: usize,
        #[arg(long, default_value_t = 2)]
        t: usize,
    },
    /// Minimal foot excess by number of toes.
    ToeTable {
        #[arg(long, default_value_t = 12)]
        max_f: usize,
        /// Cache file (defaults to `$LOTTERY_CACHE_DIR/toe-table.json`).
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Also prove optimality of the entries known only by a witness.
        #[arg(long)]
        prove_optimal: bool,
        #[arg(long)]
        json: bool,
    },
    /// Inspect or clear the toe table cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    /// Print the cache file location.
    Path,
    /// Delete the cache file.
    Clear,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Exhaustive,
    Clique,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Exhaustive => Method::Exhaustive,
            MethodArg::Clique => Method::Clique,
            MethodArg::Both => Method::Both,
        }
    }
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(EXIT_USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_IO);
        }
    }
    let result = match cli.command {
        Command::Bounds { min, max, json, timing } => cmd_bounds(min, max, json, timing),
        Command::Tickets { n, config, labels, out } => cmd_tickets(n, config.as_deref(), labels.as_deref(), out.as_deref()),
        Command::Verify { n, file, method, p, t } => cmd_verify(n, &file, method.into(), p, t),
        Command::ToeTable {
            max_f,
            cache,
            prove_optimal,
            json,
        } => cmd_toe_table(max_f, cache, prove_optimal, json),
        Command::Cache { action } => cmd_cache(action),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn cmd_bounds(min: usize, max: usize, json: bool, timing: bool) -> Outcome {
    if min > max {
        return Err(fail(EXIT_USAGE, format!("--min {min} exceeds --max {max}")));
    }
    if min < 6 || max > MAX_RANGE_N {
        return Err(fail(EXIT_USAGE, format!("range must lie within 6..={MAX_RANGE_N}")));
    }
    let start = Instant::now();
    let mut certs =
        range_report(min, max, &PipelineOptions::default()).map_err(|e| fail(EXIT_IO, e.to_string()))?;
    if !timing {
        for c in &mut certs {
            c.runtime_ms = None;
        }
    }
    if !json {
        println!("{}", table_header());
    }
    for c in &certs {
        if json {
            println!("{}", c.to_json());
        } else {
            println!("{}", c.table_row());
        }
    }
    if timing {
        eprintln!("total {} ms", start.elapsed().as_millis());
    }
    let all_proved = certs.iter().all(|c| c.status == Status::Proved);
    Ok(if all_proved { 0 } else { EXIT_NEGATIVE })
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| fail(EXIT_IO, format!("{}: {e}", path.display())))
}

fn parse_labels(text: &str) -> Result<Vec<usize>, Failure> {
    text.split_whitespace()
        .map(|w| w.parse::<usize>().map_err(|_| fail(EXIT_DATA, format!("label {w:?} is not a number"))))
        .collect()
}

fn cmd_tickets(n: Option<usize>, config: Option<&str>, labels: Option<&Path>, out: Option<&Path>) -> Outcome {
    let config: Configuration = match (config, n) {
        (Some(text), _) => text.parse().map_err(|e| fail(EXIT_USAGE, format!("--config: {e}")))?,
        (None, Some(n)) => config_for(n).map_err(|e| fail(EXIT_USAGE, e.to_string()))?,
        (None, None) => return Err(fail(EXIT_USAGE, "give --n or --config")),
    };
    if let Some(n) = n {
        if config.order() != n {
            return Err(fail(
                EXIT_USAGE,
                format!("configuration {config} has {} balls, not {n}", config.order()),
            ));
        }
    }
    let mut design = assemble(&config);
    if let Some(path) = labels {
        let perm = parse_labels(&read_file(path)?)?;
        design = design.relabel(&perm).map_err(|e| fail(EXIT_DATA, e.to_string()))?;
    }
    let verdict = design
        .verify_lottery(6, 2, Method::Clique)
        .map_err(|e| fail(EXIT_IO, e.to_string()))?;
    if !verdict.is_valid() {
        return Err(fail(EXIT_UNVERIFIED, format!("assembled design for {config} is not a lottery design")));
    }
    let text = format_tickets(&design);
    match out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| fail(EXIT_IO, format!("{}: {e}", path.display())))?;
            println!("{}", design.size());
        }
        None => {
            print!("{text}");
            eprintln!("{} tickets", design.size());
        }
    }
    Ok(0)
}

fn cmd_verify(n: usize, file: &Path, method: Method, p: usize, t: usize) -> Outcome {
    let text = read_file(file)?;
    let design = parse_tickets(&text, n, 6).map_err(|e| fail(EXIT_DATA, format!("{}: {e}", file.display())))?;
    let verdict = design
        .verify_lottery(p, t, method)
        .map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
    match verdict {
        lottery_core::Verdict::Valid => {
            println!("valid");
            Ok(0)
        }
        lottery_core::Verdict::Invalid { witness } => {
            let draw: Vec<String> = witness.iter().map(|v| v.to_string()).collect();
            println!("invalid: draw {}", draw.join(" "));
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cache_path(explicit: Option<PathBuf>) -> Option<PathBuf> {
    explicit.or_else(|| std::env::var_os("LOTTERY_CACHE_DIR").map(|d| PathBuf::from(d).join(CACHE_FILE)))
}

#[derive(Serialize)]
struct TableRow {
    f: usize,
    value: usize,
    optimality: Optimality,
    parts: Vec<usize>,
    rows: Vec<String>,
}

fn cmd_toe_table(max_f: usize, cache: Option<PathBuf>, prove_optimal: bool, json: bool) -> Outcome {
    if max_f > 15 {
        return Err(fail(EXIT_USAGE, "--max-f is at most 15"));
    }
    let path = cache_path(cache);
    let cached = match &path {
        Some(p) if p.exists() => Some(ToeExcessTable::load(p).map_err(|e| fail(EXIT_DATA, e.to_string()))?),
        _ => None,
    };
    let complete = |t: &ToeExcessTable| {
        (0..=max_f).all(|f| {
            t.get(f)
                .is_some_and(|e| !prove_optimal || e.optimality == Optimality::Proved)
        })
    };
    let table = match cached {
        Some(t) if complete(&t) => t,
        _ => {
            let mut t = ToeExcessTable::build(max_f, BuildMode::Standard { exact_up_to: 12 })
                .map_err(|e| fail(EXIT_IO, e.to_string()))?;
            if prove_optimal {
                let pending: Vec<(usize, usize)> = t
                    .entries()
                    .filter(|e| e.optimality == Optimality::WitnessOnly)
                    .map(|e| (e.f, e.value))
                    .collect();
                for (f, value) in pending {
                    let below = value.checked_sub(1);
                    let proved = match below {
                        None => true,
                        Some(b) => prove_no_excess_at_most(f, b).map_err(|e| fail(EXIT_IO, e.to_string()))?,
                    };
                    if proved {
                        t.mark_proved(f);
                    }
                }
            }
            if let Some(p) = &path {
                if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                    std::fs::create_dir_all(dir).map_err(|e| fail(EXIT_IO, format!("{}: {e}", dir.display())))?;
                }
                t.store(p).map_err(|e| fail(EXIT_IO, e.to_string()))?;
            }
            t
        }
    };
    let rows: Vec<TableRow> = table
        .entries()
        .filter(|e| e.f <= max_f)
        .map(|e| TableRow {
            f: e.f,
            value: e.value,
            optimality: e.optimality,
            parts: e.witness.instance().parts().to_vec(),
            rows: e.witness.row_strings(),
        })
        .collect();
    if json {
        let doc = serde_json::json!({ "provenance": table.provenance(), "entries": rows });
        println!("{doc}");
    } else {
        let provenance = match table.provenance() {
            Provenance::Computed => "computed",
            Provenance::Cached => "cached",
        };
        println!("provenance {provenance}");
        println!("{:>2} {:>6} {:<12} parts", "f", "excess", "optimality");
        for r in &rows {
            let opt = match r.optimality {
                Optimality::Proved => "proved",
                Optimality::WitnessOnly => "witness-only",
            };
            let parts: Vec<String> = r.parts.iter().map(|p| p.to_string()).collect();
            println!("{:>2} {:>6} {:<12} {}", r.f, r.value, opt, parts.join("+"));
        }
    }
    Ok(0)
}

fn cmd_cache(action: CacheAction) -> Outcome {
    let Some(path) = cache_path(None) else {
        return Err(fail(EXIT_USAGE, "LOTTERY_CACHE_DIR is not set"));
    };
    match action {
        CacheAction::Path => println!("{}", path.display()),
        CacheAction::Clear => {
            if path.exists() {
                std::fs::remove_file(&path).map_err(|e| fail(EXIT_IO, format!("{}: {e}", path.display())))?;
            }
        }
    }
    Ok(0)
}
