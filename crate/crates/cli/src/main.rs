use std::path::PathBuf;
use std::process::ExitCode;

use bhlab_cli::presets::{preset, PRESETS};
use bhlab_cli::{
    resolve_output_dir, run_experiment, summarize, verify_suite, CliError, ExperimentConfig, VerifyOptions,
};
use clap::{Parser, Subcommand};

/// Bose-Hubbard dynamics lab.
///
/// Exit codes: 0 all checks passed, 1 a check or engine failed,
/// 2 usage or configuration error. Set BHLAB_OUTPUT_DIR to override the
/// output directory of `run` and `preset`.
#[derive(Parser)]
#[command(name = "bhlab", version, about, long_about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment described by a TOML file.
    Run { config: PathBuf },
    /// Run a built-in figure preset.
    Preset {
        name: String,
        /// Use the large particle numbers instead of the desk-scale ones.
        #[arg(long)]
        full: bool,
    },
    /// Run the invariant and identity battery.
    Verify {
        /// Print the summary as JSON.
        #[arg(long)]
        json: bool,
        /// Perturb the hopping matrices antisymmetrically (the checks must fail).
        #[arg(long)]
        inject_asymmetric_hopping: bool,
        /// Override the Fresnel quadrature convergence target.
        #[arg(long, value_name = "TOL")]
        quadrature_tolerance: Option<f64>,
    },
    /// List the built-in presets.
    ListPresets,
}

fn execute(config: &ExperimentConfig) -> Result<ExitCode, CliError> {
    let dir = resolve_output_dir(config);
    let report = run_experiment(config, &dir)?;
    print!("{}", summarize(&report));
    println!("output: {}", dir.display());
    Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn dispatch(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Run { config } => execute(&ExperimentConfig::load(&config)?),
        Command::Preset { name, full } => {
            let mut cfg = preset(&name, full).ok_or(CliError::UnknownPreset(name))?;
            cfg.output.dir = format!("bhlab-output/{}", cfg.name);
            execute(&cfg)
        }
        Command::Verify { json, inject_asymmetric_hopping, quadrature_tolerance } => {
            let summary = verify_suite(&VerifyOptions { inject_asymmetric_hopping, quadrature_tolerance });
            if json {
                println!("{}", summary.to_json());
            } else {
                print!("{}", summary.to_lines());
            }
            Ok(if summary.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::ListPresets => {
            for p in PRESETS {
                println!("{:<10} {}", p.name, p.description);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
