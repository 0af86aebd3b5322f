//! `mindisp` command-line front end.
//!
//! Exit codes: 0 success, 2 usage, 3 input/parse, 4 parameter or validity,
//! 5 node budget exhausted.

mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mindisp::bounds::{
    best_main_bound, lower_bound_catalog, region_scan, regions_to_csv, upper_bound_catalog, StandInConstants,
};
use mindisp::cff::{min_ground_size, parse_family, verify_cover_free, GroundSize};
use mindisp::emptybox::{largest_empty_box_with_budget, DEFAULT_NODE_BUDGET};
use mindisp::geometry::{generate_points, parse_point_set, write_point_set, GeneratorKind};
use mindisp::reduction::reduction_consistency;
use mindisp::Error;
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "mindisp",
    version,
    about = "Dispersion, cover-free families and bounds on N(eps, d)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a point set and write it in point-file format.
    Gen {
        #[arg(long)]
        kind: GeneratorKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dim: usize,
        /// Points per axis for centered-grid.
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact dispersion of a point file.
    Disp {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Cover-free family tools.
    Cff {
        #[command(subcommand)]
        action: CffAction,
    },
    /// Check the box-hitting reduction on a point file.
    Reduce {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        k: usize,
    },
    /// All lower and upper bounds on N(eps, d).
    Bounds {
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        dim: usize,
        /// Stand-in for the unknown constant of the large-eps lower bound.
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// Stand-in for the unknown constant of the log upper bound.
        #[arg(long = "big-c", default_value_t = 1.0)]
        big_c: f64,
    },
    /// Winning lower bound over a log-spaced eps grid.
    Regions {
        #[arg(long)]
        dim: usize,
        #[arg(long = "eps-min")]
        eps_min: f64,
        #[arg(long = "eps-max")]
        eps_max: f64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        steps: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum CffAction {
    /// Check a family file for the (k, r)-cover-free property.
    Verify {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
    },
    /// Smallest ground set carrying a (k, r)-cover-free family of d sets.
    Search {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Svg,
}

enum Failure {
    Core(Error),
    /// A partial result was printed but the budget ran out.
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::MalformedBox(_) | Error::DimensionMismatch { .. } | Error::Io(_) => 3,
        Error::Parameter(_) | Error::Validity(_) | Error::Domain(_) => 4,
        Error::BudgetExhausted { .. } => 5,
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

#[derive(Serialize)]
struct Exact {
    #[serde(rename = "C")]
    c: usize,
}

#[derive(Serialize)]
struct Bracket {
    #[serde(rename = "C")]
    c: Option<usize>,
    lo: usize,
    hi: usize,
    note: String,
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen {
            kind,
            n,
            dim,
            m,
            seed,
            out,
        } => {
            let text = write_point_set(&generate_points(kind, n, dim, m, seed)?);
            match out {
                Some(path) => std::fs::write(&path, text).map_err(Error::Io)?,
                None => print!("{text}"),
            }
        }
        Command::Disp { input, budget } => {
            let points = parse_point_set(&read(&input)?)?;
            print_json(&largest_empty_box_with_budget(&points, budget)?);
        }
        Command::Cff {
            action: CffAction::Verify { family, k, r },
        } => {
            let family = parse_family(&read(&family)?)?;
            print_json(&verify_cover_free(&family, k, r)?);
        }
        Command::Cff {
            action: CffAction::Search { k, r, d, budget },
        } => match min_ground_size(k, r, d, budget)? {
            GroundSize::Exact { value, .. } => print_json(&Exact { c: value }),
            GroundSize::Bracket { lo, hi } => {
                let note = format!("node budget of {budget} exhausted");
                print_json(&Bracket {
                    c: None,
                    lo,
                    hi,
                    note: note.clone(),
                });
                return Err(Failure::Budget(format!("{note}; C({k},{r},{d}) lies in [{lo}, {hi}]")));
            }
        },
        Command::Reduce { input, eps, k } => {
            let points = parse_point_set(&read(&input)?)?;
            print_json(&reduction_consistency(&points, eps, k)?);
        }
        Command::Bounds { eps, dim, c, big_c } => {
            let constants = StandInConstants {
                large_eps_c: c,
                upper_log_c: big_c,
                ..StandInConstants::default()
            };
            let mut reports = lower_bound_catalog(eps, dim, &constants)?;
            if dim >= 2 {
                reports.push(best_main_bound(eps, dim)?);
                reports.extend(upper_bound_catalog(eps, dim, &constants)?);
            }
            print_json(&reports);
        }
        Command::Regions {
            dim,
            eps_min,
            eps_max,
            steps,
            format,
        } => {
            let rows = region_scan(dim, eps_min, eps_max, steps as usize)?;
            match format {
                Format::Csv => print!("{}", regions_to_csv(&rows)),
                Format::Svg => print!("{}", svg::region_chart(dim, &rows)),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Budget(message)) => {
            eprintln!("mindisp: {message}");
            ExitCode::from(5)
        }
        Err(Failure::Core(e)) => {
            eprintln!("mindisp: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
