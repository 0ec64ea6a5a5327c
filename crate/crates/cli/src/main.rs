use bielliptic_cli::{
    cmd_census, cmd_classify, cmd_hom, cmd_invariants, CensusParams, CurvePreset,
};
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "bielliptic",
    version,
    about = "Classify the Brauer map of a bielliptic surface to its covers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the Brauer map to the canonical cover of a surface spec
    Classify {
        /// Path to a JSON surface spec
        path: PathBuf,
        /// Emit the machine-readable report
        #[arg(long)]
        json: bool,
    },
    /// Print the invariant table row for a surface spec
    Invariants {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the homomorphism module of the two curves in a spec or pair file
    Hom {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Classify every torsion choice for fixed curves and count the verdicts
    Census {
        /// Surface type to enumerate (1, 2, 3, or 5)
        #[arg(long = "type", value_name = "N")]
        surface_type: u8,
        /// Squarefree d of the quadratic ambient
        #[arg(long)]
        d: u64,
        /// Curve preset for A = B: "max" or "conductor2"
        #[arg(long = "curve-preset", default_value = "max")]
        curve_preset: String,
        /// Which points to enumerate; only "all" is supported
        #[arg(long, default_value = "all")]
        points: String,
        #[arg(long)]
        json: bool,
        /// List each enumerated spec with its verdict
        #[arg(long)]
        verbose: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify { path, json } => cmd_classify(&path, json),
        Command::Invariants { path, json } => cmd_invariants(&path, json),
        Command::Hom { path, json } => cmd_hom(&path, json),
        Command::Census {
            surface_type,
            d,
            curve_preset,
            points,
            json,
            verbose,
        } => CurvePreset::parse(&curve_preset).and_then(|preset| {
            if points != "all" {
                Err(bielliptic_cli::CliError::Invalid(format!(
                    "--points supports only \"all\", got {points:?}"
                )))
            } else {
                cmd_census(
                    &CensusParams {
                        surface_type,
                        d,
                        preset,
                        verbose,
                    },
                    json,
                )
            }
        }),
    };
    match result {
        Ok(output) => {
            print!("{output}");
            if !output.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
