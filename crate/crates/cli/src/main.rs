use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lbnes::commands::{self, deliver, load_scenario};
use lbnes::CliError;

#[derive(Parser, Debug)]
#[command(name = "lbnes", version)]
#[command(about = "Bounded-update-rate Nash equilibrium seeking for quadratic games")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Equilibrium, dominance margins, frequency plan and stability report (JSON)
    Analyze {
        scenario: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate the oscillatory seeker dynamics (CSV)
    Simulate {
        scenario: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the scenario horizon
        #[arg(long)]
        t_end: Option<f64>,
    },
    /// Closed-form averaged trajectory on the simulation grid (CSV)
    Average {
        scenario: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        t_end: Option<f64>,
    },
    /// Averaging-error sweep over scaled base frequencies
    Sweep {
        scenario: PathBuf,
        /// Comma-separated, strictly increasing, e.g. 1,2,4,8
        #[arg(long, default_value = "1,2,4,8")]
        multipliers: String,
        #[arg(long)]
        t_end: Option<f64>,
        /// Where sweep.csv and sweep.json go
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Write the four-firm reference scenario
    Oligopoly {
        #[arg(long)]
        emit: PathBuf,
    },
}

fn run(args: Args) -> Result<Option<Vec<u8>>, CliError> {
    match args.command {
        Command::Analyze { scenario, out } => {
            let s = load_scenario(&scenario)?;
            deliver(commands::analyze(&s)?, out.as_deref())
        }
        Command::Simulate { scenario, out, t_end } => {
            let s = load_scenario(&scenario)?;
            deliver(commands::simulate(&s, t_end)?, out.as_deref())
        }
        Command::Average { scenario, out, t_end } => {
            let s = load_scenario(&scenario)?;
            deliver(commands::average(&s, t_end)?, out.as_deref())
        }
        Command::Sweep {
            scenario,
            multipliers,
            t_end,
            out_dir,
        } => {
            let s = load_scenario(&scenario)?;
            let m = commands::parse_multipliers(&multipliers)?;
            commands::sweep(&s, &m, t_end, &out_dir).map(Some)
        }
        Command::Oligopoly { emit } => commands::emit_oligopoly(&emit).map(|_| None),
    }
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(Some(bytes)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(&bytes).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
