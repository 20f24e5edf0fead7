use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use cutplan_cli::cache::ENV_CACHE_DIR;
use cutplan_cli::pipeline::DEFAULT_ALPHA;
use cutplan_cli::{CacheStatus, CliError, FractionCache, Options, Pipeline, StructureDocument};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Optimal statistical test plans for coherent multi-component systems.
#[derive(Debug, Parser)]
#[command(name = "cutplan", version)]
struct Args {
    /// Structure document (JSON); `-` reads standard input.
    input: PathBuf,

    /// Total number of tests; omit to report fractions only.
    #[arg(long)]
    tests: Option<u64>,

    /// One minus the confidence level.
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    alpha: f64,

    /// Also emit the plan for N+.
    #[arg(long)]
    plus: bool,

    /// Hand out the N mod N0 leftover tests round-robin instead of leaving them unallocated.
    #[arg(long)]
    distribute_remainder: bool,

    /// Cross-check against exhaustive vertex and allocation search when sizes permit.
    #[arg(long)]
    audit: bool,

    /// Always solve the LP; neither read nor write the cache.
    #[arg(long)]
    no_cache: bool,

    /// On a cache hit, re-solve and fail if the entry differs.
    #[arg(long)]
    verify_cache: bool,

    /// Report format; errors are also JSON on stderr with `json`.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Fraction-plan cache directory.
    #[arg(long, env = ENV_CACHE_DIR)]
    cache_dir: Option<PathBuf>,

    /// LP backend: simplex or vertex-enumeration.
    #[arg(long, default_value = cutplan::solver::DEFAULT_SOLVER)]
    solver: String,

    /// Evaluate a user-supplied plan, e.g. `4000,4000,4000,0,8000`.
    #[arg(long, value_delimiter = ',')]
    evaluate_plan: Option<Vec<u64>>,
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    let io_err = |source| CliError::Io {
        path: path.clone(),
        source,
    };
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(io_err)?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(io_err)
    }
}

fn run(args: &Args) -> Result<String, CliError> {
    let doc = StructureDocument::parse(&read_input(&args.input)?)?;
    let cache = if args.no_cache {
        None
    } else {
        args.cache_dir
            .clone()
            .or_else(FractionCache::default_dir)
            .map(FractionCache::new)
    };
    let opts = Options {
        tests: args.tests,
        alpha: args.alpha,
        plus: args.plus,
        distribute_remainder: args.distribute_remainder,
        audit: args.audit,
        cache,
        verify_cache: args.verify_cache,
        solver: args.solver.clone(),
        evaluate_plan: args.evaluate_plan.clone(),
    };
    let outcome = Pipeline::default().run(&doc, &opts)?;
    for notice in &outcome.notices {
        eprintln!("warning: {notice}");
    }
    match outcome.cache_status {
        CacheStatus::Hit => eprintln!("cache: hit"),
        CacheStatus::Miss => eprintln!("cache: miss (stored)"),
        CacheStatus::Recomputed => eprintln!("cache: recomputed"),
        CacheStatus::Disabled => {}
    }
    Ok(match args.format {
        Format::Json => outcome.report.to_json(),
        Format::Text => outcome.report.to_text(),
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            match args.format {
                Format::Json => eprintln!("{}", e.to_json()),
                Format::Text => {
                    eprintln!("error: {e}");
                    if let Some(n) = e.suggested_tests() {
                        eprintln!("hint: rerun with --tests {n} or more");
                    }
                }
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
