use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use icav::Model;
use icav_cli::config::{parse_config_with, Format, Overrides, RunConfig};
use icav_cli::error::CliError;
use icav_cli::run::{self, COMPARE_HEADER};

#[derive(Debug, Parser)]
#[command(name = "icav", version, about = "Intracavity EIT transmission spectra and linewidths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep every selected model and write spectra, reports and a summary.
    Spectrum(Common),
    /// Print the FWHM of each selected model.
    Linewidth(Common),
    /// Scan the full-linear spectrum wide enough to show the vacuum Rabi peaks.
    Rabi {
        #[command(flatten)]
        common: Common,
        /// Half span of the scan in units of √(Ng²+Ω²).
        #[arg(long, default_value_t = 1.25)]
        span: f64,
    },
    /// Tabulate quantum and semi-classical linewidth ratios over control fields.
    Compare {
        #[command(flatten)]
        common: Common,
        /// Comma-separated control couplings Ω.
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        omegas: Vec<f64>,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// JSON run configuration.
    #[arg(long, short)]
    config: PathBuf,
    #[arg(long)]
    omega_c: Option<f64>,
    #[arg(long)]
    n_atoms: Option<u64>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    max: Option<f64>,
    /// Model to run; repeat or comma-separate for several.
    #[arg(long, value_delimiter = ',')]
    model: Vec<Model>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<Format>,
}

impl Common {
    fn load(&self) -> Result<RunConfig, CliError> {
        let text = fs::read_to_string(&self.config).map_err(|e| CliError::Io {
            path: self.config.clone(),
            source: e,
        })?;
        let overrides = Overrides {
            omega_c: self.omega_c,
            n_atoms: self.n_atoms,
            points: self.points,
            min: self.min,
            max: self.max,
            models: (!self.model.is_empty()).then(|| self.model.clone()),
            out: self.out.clone(),
            format: self.format,
        };
        Ok(parse_config_with(&text, &overrides)?)
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Spectrum(common) => {
            let config = common.load()?;
            let out = run::run(&config)?;
            for entry in &out.summary.fwhm {
                println!("{}\tfwhm={} {}", entry.model, entry.fwhm, config.unit);
            }
            for pair in &out.summary.pairs {
                println!(
                    "{} vs {}\trelative difference={}",
                    pair.other, pair.reference, pair.relative_difference
                );
            }
            println!("wrote {} files to {}", out.files.len(), config.output_path.display());
        }
        Command::Linewidth(common) => {
            let config = common.load()?;
            println!("model,fwhm");
            for entry in run::linewidths(&config)? {
                println!("{},{}", entry.model, entry.fwhm);
            }
        }
        Command::Rabi { common, span } => {
            let config = common.load()?;
            let scan = run::rabi_scan(&config.params, config.grid.points, span)?;
            println!("expected side peaks at ±{}", scan.expected_splitting);
            println!("delta,transmission");
            for peak in &scan.peaks {
                println!("{},{}", peak.position, peak.height);
            }
        }
        Command::Compare { common, omegas } => {
            let config = common.load()?;
            let rows = run::compare(&config.params, config.semiclassical.as_ref(), &omegas, config.grid.points)?;
            println!("{COMPARE_HEADER}");
            for row in rows {
                println!("{}", row.csv());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("icav: {}: {e}", e.category());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
