//! Command-line surface over the library.
//!
//! Exit codes: 0 on success, 1 on data or validation failures (unreadable
//! files, malformed instances, reports that do not match), 2 on usage
//! errors.

use std::ffi::OsString;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use crate::decompose::RootStrategy;
use crate::experiment::{self, ExperimentConfig, GenSpec, InstanceSource};
use crate::gen::{gen_forest, paper_example, GenConfig, GenModel};
use crate::graph::ForestPair;
use crate::io::{
    emit_dot, format_instance, parse_assignment, parse_instance, MetaDocument, ReportDocument,
    SolutionDocument,
};
use crate::oracle::{oracle_min_k, DEFAULT_ORACLE_LIMIT};
use crate::solver::{solve, verify, SolveConfig};

#[derive(Parser)]
#[command(
    name = "locbal",
    version,
    about = "Vertex 2-partitions of forest pairs with neighborhood imbalance at most 2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print (or write) the solution document.
    Solve {
        /// Instance file; `-` reads standard input.
        input: PathBuf,
        /// Write the solution document here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a DOT rendering of the partitioned pair.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = RootStrategyArg::MinId)]
        root_strategy: RootStrategyArg,
        /// Seed for the seeded root strategy (default 0).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Recompute the report for an assignment and check any embedded one.
    Verify {
        input: PathBuf,
        /// Solution document or bare JSON bit array.
        #[arg(long)]
        assignment: PathBuf,
    },
    /// Exhaustively find the smallest achievable k for a small instance.
    Oracle {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
        limit: u32,
    },
    /// Generate a random instance document.
    Gen {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = ModelArg::UniformForest)]
        model: ModelArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Exact component count (uniform-forest only).
        #[arg(long)]
        components: Option<u32>,
    },
    /// Solve a batch of generated instances and write rows as CSV.
    Experiment {
        #[arg(long)]
        count: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also run the exhaustive oracle on every instance.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, value_enum, default_value_t = ModelArg::UniformForest)]
        model: ModelArg,
        #[arg(long)]
        components: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
        limit: u32,
    },
    /// Print the built-in 5-vertex tightness instance.
    Example,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RootStrategyArg {
    MinId,
    Seeded,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelArg {
    PruferTree,
    UniformForest,
    Path,
    Star,
}

impl From<ModelArg> for GenModel {
    fn from(value: ModelArg) -> Self {
        match value {
            ModelArg::PruferTree => GenModel::PruferTree,
            ModelArg::UniformForest => GenModel::UniformForest,
            ModelArg::Path => GenModel::Path,
            ModelArg::Star => GenModel::Star,
        }
    }
}

enum CliError {
    Data(String),
    Usage(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Data(_) => 1,
            CliError::Usage(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Data(m) | CliError::Usage(m) => m,
        }
    }
}

fn data<E: std::fmt::Display>(err: E) -> CliError {
    CliError::Data(err.to_string())
}

/// Parses and runs one invocation; returns the process exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {}", err.message());
            err.code()
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Solve {
            input,
            out,
            dot,
            root_strategy,
            seed,
        } => {
            let pair = read_instance(&input)?;
            let strategy = match (root_strategy, seed) {
                (RootStrategyArg::MinId, None) => RootStrategy::MinId,
                (RootStrategyArg::MinId, Some(_)) => {
                    return Err(CliError::Usage(
                        "--seed requires --root-strategy seeded".to_string(),
                    ))
                }
                (RootStrategyArg::Seeded, seed) => RootStrategy::Seeded(seed.unwrap_or(0)),
            };
            let solution = solve(
                &pair,
                &SolveConfig {
                    root_strategy: strategy,
                },
            )
            .map_err(data)?;
            let meta = MetaDocument {
                root_strategy: match strategy {
                    RootStrategy::MinId => "min-id".to_string(),
                    RootStrategy::Seeded(_) => "seeded".to_string(),
                },
                seed: match strategy {
                    RootStrategy::MinId => None,
                    RootStrategy::Seeded(s) => Some(s),
                },
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
            };
            let document = SolutionDocument::new(solution.partition(), solution.report(), meta);
            let text = document.to_json();
            match out {
                Some(path) => write_file(&path, &text)?,
                None => print!("{text}"),
            }
            if let Some(path) = dot {
                write_file(&path, &emit_dot(&pair, solution.partition()))?;
            }
            Ok(())
        }
        Command::Verify { input, assignment } => {
            let pair = read_instance(&input)?;
            let text = read_file(&assignment)?;
            let (partition, embedded) = parse_assignment(&text).map_err(data)?;
            let report = verify(&pair, &partition).map_err(data)?;
            let recomputed = ReportDocument::from(&report);
            if let Some(claimed) = embedded {
                if claimed != recomputed {
                    return Err(CliError::Data(
                        "embedded report does not match the assignment".to_string(),
                    ));
                }
            }
            println!(
                "{}",
                serde_json::to_string(&recomputed).expect("reports serialize")
            );
            Ok(())
        }
        Command::Oracle { input, limit } => {
            let pair = read_instance(&input)?;
            let result = oracle_min_k(&pair, limit).map_err(data)?;
            println!("k_min = {}", result.k_min);
            println!(
                "witness = {}",
                serde_json::to_string(result.witness.bits()).expect("bit arrays serialize")
            );
            println!("enumerated = {}", result.enumerated);
            Ok(())
        }
        Command::Gen {
            n,
            model,
            seed,
            components,
        } => {
            let pair = generate_pair(n, model.into(), components, seed)?;
            println!("{}", format_instance(&pair));
            Ok(())
        }
        Command::Experiment {
            count,
            n,
            seed,
            oracle,
            csv,
            model,
            components,
            limit,
        } => {
            let spec = GenSpec {
                model: model.into(),
                component_count: components,
            };
            let (rows, summary) = experiment::run(&ExperimentConfig {
                count,
                n,
                source: InstanceSource::Generated { g1: spec, g2: spec },
                base_seed: seed,
                with_oracle: oracle,
                oracle_limit: limit,
                solve: SolveConfig::default(),
            })
            .map_err(data)?;
            write_file(&csv, &experiment::rows_to_csv(&rows))?;
            print!("{}", summary.render());
            Ok(())
        }
        Command::Example => {
            println!("{}", format_instance(&paper_example()));
            Ok(())
        }
    }
}

/// The second forest draws from a seed offset by a fixed salt so the two
/// streams never coincide.
fn generate_pair(
    n: u32,
    model: GenModel,
    components: Option<u32>,
    seed: u64,
) -> Result<ForestPair, CliError> {
    let g1 = gen_forest(&GenConfig {
        n,
        component_count: components,
        seed,
        model,
    })
    .map_err(data)?;
    let g2 = gen_forest(&GenConfig {
        n,
        component_count: components,
        seed: seed ^ experiment::G2_SEED_SALT,
        model,
    })
    .map_err(data)?;
    ForestPair::new(g1, g2).map_err(data)
}

fn read_instance(path: &Path) -> Result<ForestPair, CliError> {
    let text = read_file(path)?;
    parse_instance(&text).map_err(data)
}

fn read_file(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Data(format!("reading standard input: {e}")))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}
