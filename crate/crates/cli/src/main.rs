use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use tl_align::commands::{
    cmd_budget, cmd_check_config, cmd_figures, cmd_oracle, cmd_sweep, FigureSet, OracleFactor,
    OutputFormat, SweepSpec,
};
use tl_align::units::{parse_quantity, Dimension};
use tl_align::{parse_config, CliError, InstrumentConfig};

/// Alignment-budget toolkit for three-grating optical Talbot-Lau
/// matter-wave interferometers.
#[derive(Parser)]
#[command(name = "tl-align", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every alignment criterion and compose the visibility budget
    Budget {
        config: PathBuf,
        /// Exit 1 if any criterion fails
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
    /// Sweep one parameter and emit reduction factors and limits as CSV
    Sweep {
        config: PathBuf,
        /// Dotted parameter path, e.g. geometry.roll
        #[arg(long)]
        param: String,
        /// First value; unit suffixes allowed, e.g. `0.01 mrad`
        #[arg(long)]
        start: String,
        /// Last value
        #[arg(long)]
        stop: String,
        #[arg(long, default_value_t = 101)]
        points: usize,
        /// Space the points logarithmically
        #[arg(long)]
        log: bool,
        /// Write the CSV to a file instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Emit the figure-data CSV bundles
    Figures {
        config: PathBuf,
        #[arg(value_enum, default_value = "all")]
        which: FigureSet,
        /// Directory the CSV files are written into
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Comma-separated mirror pass distances for the intensity grids
        #[arg(long)]
        distances: Option<String>,
    },
    /// Check analytic reduction factors against Monte Carlo phase averages
    Oracle {
        config: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        factor: OracleFactor,
        /// Override the configured sample count
        #[arg(long)]
        samples: Option<u64>,
        /// Override the configured seed
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Parse a config and echo every resolved SI value
    CheckConfig { config: PathBuf },
}

fn configure_threads() -> Result<(), String> {
    let Some(text) = std::env::var_os("TL_ALIGN_THREADS") else {
        return Ok(());
    };
    let text = text.to_string_lossy();
    let threads: usize = text
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| format!("TL_ALIGN_THREADS must be a positive integer, got `{text}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn load(path: &PathBuf) -> Result<InstrumentConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_config(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let stdout = std::io::stdout();
    match cli.command {
        Command::Budget {
            config,
            strict,
            format,
        } => cmd_budget(&load(&config)?, strict, format, &mut stdout.lock()),
        Command::Sweep {
            config,
            param,
            start,
            stop,
            points,
            log,
            output,
        } => {
            let cfg = load(&config)?;
            let dim = InstrumentConfig::path_dimension(&param)
                .ok_or_else(|| CliError::Input(format!("no sweepable parameter `{param}`")))?;
            let spec = SweepSpec {
                start: parse_quantity(&start, dim).map_err(CliError::Input)?,
                stop: parse_quantity(&stop, dim).map_err(CliError::Input)?,
                param,
                points,
                log,
            };
            match output {
                Some(path) => {
                    let mut file = std::io::BufWriter::new(std::fs::File::create(&path)?);
                    let code = cmd_sweep(&cfg, &spec, &mut file)?;
                    file.flush()?;
                    Ok(code)
                }
                None => cmd_sweep(&cfg, &spec, &mut stdout.lock()),
            }
        }
        Command::Figures {
            config,
            which,
            out,
            distances,
        } => {
            let cfg = load(&config)?;
            let distances: Option<Vec<f64>> = distances
                .map(|text| {
                    text.split(',')
                        .map(|item| parse_quantity(item, Dimension::Length))
                        .collect::<Result<_, _>>()
                })
                .transpose()
                .map_err(CliError::Input)?;
            cmd_figures(&cfg, which, distances.as_deref(), &out, &mut stdout.lock())
        }
        Command::Oracle {
            config,
            factor,
            samples,
            seed,
        } => cmd_oracle(&load(&config)?, factor, samples, seed, &mut stdout.lock()),
        Command::CheckConfig { config } => cmd_check_config(&load(&config)?, &mut stdout.lock()),
    }
}

fn main() {
    if let Err(message) = configure_threads() {
        eprintln!("error: {message}");
        std::process::exit(2);
    }
    match run(Cli::parse()) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
