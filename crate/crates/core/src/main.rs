use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use incidence_coloring::incidence::{verify_coloring, UNBOUNDED};
use incidence_coloring::oracle::{
    exists_kl_coloring, min_incidence_k, OuterplanarityOracle, MAX_ENUMERATION_N, MIN_ENUMERATION_N,
};
use incidence_coloring::solve;
use incidence_coloring::toolkit::checks::{check_lemma, check_theorem, selftest, CheckSummary};
use incidence_coloring::toolkit::format::{
    emit_coloring, emit_edge_list, emit_edge_list_with_comments, parse_coloring, parse_edge_list,
};
use incidence_coloring::toolkit::generate::{
    family, gen_outerplanar, Family, GeneratorParams, GENERATOR_ID,
};

const EXIT_FAILED: u8 = 1;
const EXIT_NOT_OUTERPLANAR: u8 = 2;
const EXIT_MALFORMED: u8 = 3;

/// Incidence colorings of outerplanar graphs with Δ+2 colors and at most two
/// colors incoming per vertex.
///
/// The palette is max(Δ, 1) + 2, so a single vertex or a single edge gets
/// k = 3. Exit codes: 0 success, 1 verification failure or no coloring,
/// 2 not outerplanar, 3 malformed input.
#[derive(Parser)]
#[command(name = "incol", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Color an edge-list graph and print the coloring as JSON.
    Color { graph: PathBuf },
    /// Check a JSON coloring against an edge-list graph.
    Verify { graph: PathBuf, coloring: PathBuf },
    /// Exact search for small graphs.
    Oracle(OracleArgs),
    /// Print a generated graph as an edge list.
    Gen(GenArgs),
    /// Check every connected labeled graph on 2..=n vertices.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        check: Check,
    },
    /// Run the acceptance properties at reduced scale.
    Selftest,
}

#[derive(Args)]
struct OracleArgs {
    graph: PathBuf,
    /// Incoming bound: a positive integer or `inf`.
    #[arg(long, value_parser = parse_l)]
    l: usize,
    /// Print the least palette size.
    #[arg(long, conflicts_with = "k")]
    min_k: bool,
    /// Decide whether a coloring with this palette exists.
    #[arg(long, required_unless_present = "min_k")]
    k: Option<usize>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    family: Option<Family>,
    /// Sample a random outerplanar graph.
    #[arg(long)]
    random: bool,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    chord_keep: f64,
    #[arg(long, default_value_t = 0.0)]
    hull_delete: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Lemma,
    Theorem,
}

fn parse_l(s: &str) -> Result<usize, String> {
    match s {
        "inf" => Ok(UNBOUNDED),
        _ => match s.parse::<usize>() {
            Ok(0) | Err(_) => Err(format!("expected a positive integer or inf, got {s:?}")),
            Ok(l) => Ok(l),
        },
    }
}

/// Error carrying the exit code to report.
struct Failure {
    code: u8,
    message: String,
}

fn malformed(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_MALFORMED,
        message: message.to_string(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| malformed(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<incidence_coloring::Graph, Failure> {
    parse_edge_list(&read(path)?).map_err(|e| malformed(format!("{}: {e}", path.display())))
}

fn run(cli: Cli, out: &mut impl Write) -> Result<u8, Failure> {
    let io_err = |e: io::Error| malformed(e);
    match cli.command {
        Command::Color { graph } => {
            let g = read_graph(&graph)?;
            match solve(&g) {
                Ok(sol) => {
                    out.write_all(emit_coloring(&g, sol.k, &sol.coloring).as_bytes())
                        .map_err(io_err)?;
                    Ok(0)
                }
                Err(e) if e.is_not_outerplanar() => Err(Failure {
                    code: EXIT_NOT_OUTERPLANAR,
                    message: e.to_string(),
                }),
                Err(e) => Err(malformed(e)),
            }
        }
        Command::Verify { graph, coloring } => {
            let g = read_graph(&graph)?;
            let c = parse_coloring(&read(&coloring)?)
                .map_err(|e| malformed(format!("{}: {e}", coloring.display())))?;
            let report = verify_coloring(&g, &c);
            for v in &report.violations {
                writeln!(out, "{v}").map_err(io_err)?;
            }
            if report.is_valid() {
                writeln!(out, "valid").map_err(io_err)?;
                Ok(0)
            } else {
                Ok(EXIT_FAILED)
            }
        }
        Command::Oracle(args) => {
            let g = read_graph(&args.graph)?;
            if args.min_k {
                let k = min_incidence_k(&g, args.l).map_err(malformed)?;
                writeln!(out, "{k}").map_err(io_err)?;
                return Ok(0);
            }
            let k = args.k.expect("clap requires --k without --min-k");
            match exists_kl_coloring(&g, k, args.l).map_err(malformed)? {
                Some(c) => {
                    out.write_all(emit_coloring(&g, k, &c).as_bytes())
                        .map_err(io_err)?;
                    Ok(0)
                }
                None => {
                    writeln!(out, "no coloring exists").map_err(io_err)?;
                    Ok(EXIT_FAILED)
                }
            }
        }
        Command::Gen(args) => {
            let text = match args.family {
                Some(f) => emit_edge_list(&family(f, args.n).map_err(malformed)?),
                None => {
                    let p = GeneratorParams {
                        n: args.n,
                        chord_keep_probability: args.chord_keep,
                        hull_delete_probability: args.hull_delete,
                        seed: args.seed,
                    };
                    let g = gen_outerplanar(&p).map_err(malformed)?;
                    emit_edge_list_with_comments(
                        &g,
                        &[
                            format!("generator {GENERATOR_ID}"),
                            format!(
                                "seed {} chord-keep {} hull-delete {}",
                                p.seed, p.chord_keep_probability, p.hull_delete_probability
                            ),
                        ],
                    )
                }
            };
            out.write_all(text.as_bytes()).map_err(io_err)?;
            Ok(0)
        }
        Command::Enumerate { n, check } => {
            if !(MIN_ENUMERATION_N..=MAX_ENUMERATION_N).contains(&n) {
                return Err(malformed(format!(
                    "--n must be between {MIN_ENUMERATION_N} and {MAX_ENUMERATION_N}"
                )));
            }
            let mut oracle = OuterplanarityOracle::new();
            let mut ok = true;
            for size in MIN_ENUMERATION_N..=n {
                let s: CheckSummary = match check {
                    Check::Lemma => check_lemma(size, &mut oracle),
                    Check::Theorem => check_theorem(size, &mut oracle),
                }
                .map_err(malformed)?;
                writeln!(
                    out,
                    "n={} graphs={} checked={} failures={}",
                    s.n, s.graphs, s.checked, s.failures
                )
                .map_err(io_err)?;
                for g in &s.examples {
                    writeln!(out, "  counterexample: {:?}", g.edges().collect::<Vec<_>>())
                        .map_err(io_err)?;
                }
                ok &= s.passed();
            }
            Ok(if ok { 0 } else { EXIT_FAILED })
        }
        Command::Selftest => {
            let mut ok = true;
            for line in selftest() {
                let verdict = if line.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{verdict} {}  {}", line.name, line.detail).map_err(io_err)?;
                ok &= line.passed;
            }
            Ok(if ok { 0 } else { EXIT_FAILED })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_MALFORMED } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("incol: {}", f.message);
            f.code
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
