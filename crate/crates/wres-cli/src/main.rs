//! Command line verifier: runs the fifteen-case boundary-residue pipeline,
//! compares against the embedded stated values and emits a report.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use wres_core::report::{
    emit_structured, emit_text, run_verify, ComparisonMode, VerifyOptions,
};

#[derive(Parser)]
#[command(name = "wres", version, about = "Exact verifier for the boundary term of the noncommutative residue of the Witten deformation on a 7-manifold with boundary")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification pipeline and emit a report.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Restrict to one case (repeatable); default is all fifteen.
    #[arg(long = "case", value_parser = clap::value_parser!(u8).range(1..=15))]
    cases: Vec<u8>,

    /// strict: any mismatch against the stated values fails (exit 1);
    /// report: mismatches are recorded, only engine/oracle disagreement fails.
    #[arg(long, value_enum, default_value_t = ModeArg::Report)]
    mode: ModeArg,

    /// Confirm every computed value with the numeric oracle.
    #[arg(long)]
    oracle: bool,

    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    Report,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Structured,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => {
            let options = VerifyOptions {
                cases: args.cases.clone(),
                mode: match args.mode {
                    ModeArg::Strict => ComparisonMode::Strict,
                    ModeArg::Report => ComparisonMode::Report,
                },
                oracle: args.oracle,
            };
            let (doc, exit) = match run_verify(&options) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("internal error: {}", e);
                    return ExitCode::from(2);
                }
            };
            let bytes = match args.format {
                FormatArg::Text => emit_text(&doc).into_bytes(),
                FormatArg::Structured => emit_structured(&doc),
            };
            let write_result = match &args.out {
                Some(path) => std::fs::write(path, &bytes),
                None => std::io::stdout().write_all(&bytes),
            };
            if let Err(e) = write_result {
                eprintln!("internal error: {}", e);
                return ExitCode::from(2);
            }
            ExitCode::from(exit as u8)
        }
    }
}
