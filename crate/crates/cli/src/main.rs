#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use supcenter::commands::{self, Settings};
use supcenter::corpus::run_corpus;
use supcenter::error::CliError;
use supcenter::instance::{load, CenterInstance, Instance};
use supcenter::report::{to_json_bytes, Report, Status};
use supcenter::suites::{run_suite, SUITES};
use supcenter_core::Tolerances;

#[derive(Parser)]
#[command(
    name = "supcenter",
    version,
    about = "Restricted Chebyshev centers in finite sup-norm spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Absolute tolerance for certificates and LP feasibility.
    #[arg(long)]
    tol: Option<f64>,
    /// Write the full report as JSON to this file.
    #[arg(long, value_name = "OUT")]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Relative Chebyshev radius of the family.
    Radius {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Center set, its vertices and the clamped center for the unit ball.
    Center {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// The delta-near-center set and its worst distance to the center set.
    NearCenter {
        file: PathBuf,
        #[arg(long)]
        delta: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Move a near-center to an exact center within eps.
    Repair {
        file: PathBuf,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Largest slack keeping near-centers within eps of the center set.
    P1Modulus {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        eps: Option<Vec<f64>>,
        #[arg(long)]
        delta_max: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Randomized checks of the supporting inequalities.
    CheckLemmas {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Build and certify the renormed space without the property.
    Garkavi {
        file: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Number of sampled projection cases.
        #[arg(long)]
        trials: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Run every instance file of a directory.
    Corpus {
        dir: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

fn center_instance(path: &Path) -> Result<CenterInstance, CliError> {
    match load(path)? {
        Instance::Center(c) => Ok(c),
        Instance::Garkavi(g) => Err(CliError::Input(format!(
            "{}: `{}` is a garkavi instance; use the garkavi command",
            path.display(),
            g.name
        ))),
    }
}

fn check_tol(tol: Option<f64>) -> Result<Option<f64>, CliError> {
    match tol {
        Some(t) if !(t > 0.0 && t < 1e-3) => {
            Err(CliError::Input(format!("--tol {t} is not in (0, 1e-3)")))
        }
        other => Ok(other),
    }
}

fn run(cmd: Command) -> Result<(Report, Option<PathBuf>), CliError> {
    Ok(match cmd {
        Command::Radius { file, common } => {
            let s = Settings {
                tol: check_tol(common.tol)?,
                ..Default::default()
            };
            (commands::radius(&center_instance(&file)?, &s)?, common.json)
        }
        Command::Center { file, common } => {
            let s = Settings {
                tol: check_tol(common.tol)?,
                ..Default::default()
            };
            (commands::center(&center_instance(&file)?, &s)?, common.json)
        }
        Command::NearCenter {
            file,
            delta,
            common,
        } => {
            let s = Settings {
                tol: check_tol(common.tol)?,
                delta,
                ..Default::default()
            };
            (
                commands::near_center(&center_instance(&file)?, &s)?,
                common.json,
            )
        }
        Command::Repair {
            file,
            eps,
            delta,
            seed,
            common,
        } => {
            let s = Settings {
                tol: check_tol(common.tol)?,
                eps: eps.map(|e| vec![e]),
                delta,
                seed,
                ..Default::default()
            };
            (commands::repair(&center_instance(&file)?, &s)?, common.json)
        }
        Command::P1Modulus {
            file,
            eps,
            delta_max,
            common,
        } => {
            let s = Settings {
                tol: check_tol(common.tol)?,
                eps,
                delta_max,
                ..Default::default()
            };
            (
                commands::p1_modulus_cmd(&center_instance(&file)?, &s)?,
                common.json,
            )
        }
        Command::CheckLemmas {
            suite,
            trials,
            seed,
            common,
        } => {
            let tol = match check_tol(common.tol)? {
                Some(t) => Tolerances::with_abs(t),
                None => Tolerances::default(),
            };
            (run_suite(&suite, trials, seed, &tol)?, common.json)
        }
        Command::Garkavi {
            file,
            n,
            seed,
            trials,
            common,
        } => {
            let s = Settings {
                tol: check_tol(common.tol)?,
                seed,
                trials,
                ..Default::default()
            };
            let inst = match &file {
                Some(path) => match load(path)? {
                    Instance::Garkavi(g) => Some(g),
                    Instance::Center(c) => {
                        return Err(CliError::Input(format!(
                            "{}: `{}` is not a garkavi instance",
                            path.display(),
                            c.name
                        )))
                    }
                },
                None => None,
            };
            (commands::garkavi(inst.as_ref(), n, &s)?, common.json)
        }
        Command::Corpus { dir, common } => (run_corpus(&dir)?, common.json),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.command).and_then(|(report, json)| {
        if let Some(path) = json {
            std::fs::write(&path, to_json_bytes(&report))
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        }
        Ok(report)
    });
    match result {
        Ok(report) => {
            for line in &report.summary {
                println!("{line}");
            }
            match report.status {
                Status::Pass => {
                    println!("status: pass");
                    ExitCode::SUCCESS
                }
                Status::Fail => {
                    println!("status: FAIL");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
