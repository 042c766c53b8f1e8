//! Command-line front end. [`run`] is pure with respect to the process: it
//! returns the exit code and both output streams instead of printing.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use crate::closed_forms::{ell, max_with_ones, perrin, s_of};
use crate::complexity::{complexity_table, graph_from_expression, minimal_expression, parse_expression};
use crate::duality::{cover_from_graph, graph_from_cover, minimal_cover, validate_cover, SeparatingCover};
use crate::error::{Error, Result};
use crate::graph::{count_mis, enumerate_mis, extremal_graph, ExtremalVariant, Graph};
use crate::oracles::{verify, Level};

/// Exit code, standard output and standard error of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "misdual", version, about = "Max-product partitions, MIS counts, separating covers and integer complexity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Largest product of positive integers summing to N
    Ell { n: u32 },
    /// Fewest sets in a separating cover on M elements
    S { m: BigUint },
    /// J-th Perrin number (MIS count of the J-cycle)
    Perrin { j: u32 },
    /// Largest integer writable with exactly N ones
    Maxones { n: u32 },
    /// Integer complexity table as "m,c" lines
    Complexity {
        #[arg(long = "max")]
        max: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// A minimal expression for M with its value and one-count
    Expr { m: usize },
    /// Graph whose MIS count equals the value of EXPR
    ExprGraph {
        expr: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count or list the maximal independent sets of a graph file
    Mis(MisArgs),
    /// Extremal graph on N vertices
    Extremal {
        n: usize,
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Separating cover over the MISes of a graph
    CoverFromGraph {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Disjointness graph of a separating cover
    GraphFromCover {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A separating cover on M elements with the fewest sets
    MinimalCover {
        m: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the covering and separating properties of a cover file
    ValidateCover {
        #[arg(long)]
        cover: PathBuf,
    },
    /// Compare every oracle against its closed form
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        level: LevelArg,
        /// Append elapsed milliseconds to each line
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Args, Debug)]
#[group(skip)]
#[command(group(ArgGroup::new("mode").required(true).args(["count", "list"])))]
struct MisArgs {
    #[arg(long)]
    count: bool,
    #[arg(long)]
    list: bool,
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    TwoEdges,
    K4,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

pub fn run<I, S>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                CommandOutcome { code: 2, stdout: String::new(), stderr: rendered }
            } else {
                CommandOutcome { code: 0, stdout: rendered, stderr: String::new() }
            };
        }
    };
    match execute(cli.command) {
        Ok(outcome) => outcome,
        Err(e) => CommandOutcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn ok(stdout: String) -> Result<CommandOutcome> {
    Ok(CommandOutcome { code: 0, stdout, stderr: String::new() })
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph> {
    Graph::parse_text(&read(path)?)
}

fn read_cover(path: &Path) -> Result<SeparatingCover> {
    SeparatingCover::from_json(&read(path)?)
}

/// Writes to `out` when given (reporting the path), else returns the payload.
fn emit(payload: String, out: Option<PathBuf>) -> Result<CommandOutcome> {
    match out {
        Some(path) => {
            fs::write(&path, &payload).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            ok(format!("wrote {}\n", path.display()))
        }
        None => ok(payload),
    }
}

fn execute(command: Command) -> Result<CommandOutcome> {
    match command {
        Command::Ell { n } => ok(format!("{}\n", ell(n)?)),
        Command::S { m } => ok(format!("{}\n", s_of(&m)?)),
        Command::Perrin { j } => ok(format!("{}\n", perrin(j)?)),
        Command::Maxones { n } => ok(format!("{}\n", max_with_ones(n)?)),
        Command::Complexity { max, csv } => {
            let table = complexity_table(max)?;
            match csv {
                Some(path) => {
                    fs::write(&path, table.to_csv())
                        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    ok(format!("wrote {max} rows to {}\n", path.display()))
                }
                None => ok(table.to_csv()),
            }
        }
        Command::Expr { m } => {
            let table = complexity_table(m)?;
            let e = minimal_expression(m, &table)?;
            ok(format!("{e}\t{}\t{}\n", e.value(), e.ones()))
        }
        Command::ExprGraph { expr, out } => {
            let e = parse_expression(&expr)?;
            emit(graph_from_expression(&e)?.to_text(), out)
        }
        Command::Mis(args) => {
            let g = read_graph(&args.graph)?;
            if args.count {
                ok(format!("{}\n", count_mis(&g)))
            } else {
                let mut s = String::new();
                for set in enumerate_mis(&g)? {
                    s.push_str(&format!("{set}\n"));
                }
                ok(s)
            }
        }
        Command::Extremal { n, variant, out } => {
            let variant = match variant {
                None => ExtremalVariant::Default,
                Some(VariantArg::TwoEdges) => ExtremalVariant::TwoEdges,
                Some(VariantArg::K4) => ExtremalVariant::K4,
            };
            emit(extremal_graph(n, variant)?.to_text(), out)
        }
        Command::CoverFromGraph { graph, out } => {
            let cover = cover_from_graph(&read_graph(&graph)?)?;
            emit(cover.to_json() + "\n", out)
        }
        Command::GraphFromCover { cover, out } => {
            let g = graph_from_cover(&read_cover(&cover)?)?;
            emit(g.to_text(), out)
        }
        Command::MinimalCover { m, out } => emit(minimal_cover(m)?.to_json() + "\n", out),
        Command::ValidateCover { cover } => {
            let report = validate_cover(&read_cover(&cover)?);
            Ok(CommandOutcome {
                code: if report.is_valid() { 0 } else { 1 },
                stdout: format!("{report}\n"),
                stderr: String::new(),
            })
        }
        Command::Verify { level, timings } => {
            let level = match level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            let reports = verify(level);
            let mut stdout = String::new();
            for r in &reports {
                stdout.push_str(&r.to_line(timings));
                stdout.push('\n');
            }
            let failures = reports.iter().filter(|r| !r.agree).count();
            let stderr = format!("{} checks, {failures} disagreements\n", reports.len());
            Ok(CommandOutcome { code: if failures == 0 { 0 } else { 1 }, stdout, stderr })
        }
    }
}
