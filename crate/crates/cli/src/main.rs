use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gefstab_cli::{cmd_check, cmd_gef, cmd_simulate, cmd_synth, cmd_verify, InputSpec, Options, ReportFormat};

#[derive(Parser)]
#[command(name = "gefstab", version, about = "Stabilizability and controller synthesis over rings of stable causal transfer functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    report: Format,

    /// Include wall-clock timings in reports.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputKind {
    Impulse,
    File,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the generalized elementary factors of a plant.
    Gef { plant: PathBuf },
    /// Decide stabilizability (exit 0 if stabilizable, 1 if not).
    Check { plant: PathBuf },
    /// Synthesize and verify a stabilizing controller.
    Synth {
        plant: PathBuf,
        /// Write the JSON report here; it doubles as a controller file.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Verify that a controller stabilizes a plant.
    Verify { plant: PathBuf, controller: PathBuf },
    /// Simulate the closed loop and emit a CSV trace.
    Simulate {
        plant: PathBuf,
        controller: PathBuf,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = InputKind::Impulse)]
        input: InputKind,
        /// Input channel for `--input impulse`, 1-based over (u1, u2).
        #[arg(long, default_value_t = 1)]
        channel: usize,
        /// CSV with columns u1_i, u2_j for `--input file`.
        #[arg(long)]
        input_file: Option<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        format: match cli.report {
            Format::Json => ReportFormat::Json,
            Format::Text => ReportFormat::Text,
        },
        timing: cli.timing,
    };
    let result = match &cli.command {
        Command::Gef { plant } => cmd_gef(plant, opts),
        Command::Check { plant } => cmd_check(plant, opts),
        Command::Synth { plant, out } => cmd_synth(plant, out.as_deref(), opts),
        Command::Verify { plant, controller } => cmd_verify(plant, controller, opts),
        Command::Simulate { plant, controller, steps, input, channel, input_file, out } => {
            let spec = match (input, input_file) {
                (InputKind::Impulse, _) => Ok(InputSpec::Impulse { channel: *channel }),
                (InputKind::File, Some(p)) => Ok(InputSpec::File(p.clone())),
                (InputKind::File, None) => Err(gefstab_cli::CliError::Input("--input file needs --input-file".into())),
            };
            spec.and_then(|s| cmd_simulate(plant, controller, *steps, &s, out.as_deref()))
        }
    };
    match result {
        Ok(o) => {
            print!("{}", o.stdout);
            ExitCode::from(o.code as u8)
        }
        Err(e) => {
            eprintln!("gefstab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
