//! `hahn`: figure data, phase sweeps, spectra, potential reconstruction and
//! validation checks for the Hahn quantum system.

mod config;

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hahn_core::figures::{self, Params, Table};
use hahn_core::validate::{self, Suite};
use hahn_core::HahnError;
use serde_json::json;

use config::{parse_param, Command, Format, Output, RunConfig};

#[derive(Parser, Debug)]
#[command(
    name = "hahn",
    version,
    about = "Hahn quantum system: figures, spectra, phase shifts and checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Cmd>,

    /// Parameter override, repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE", value_parser = parse_param, global = true)]
    params: Vec<(String, f64)>,

    /// Output file (stdout when absent).
    #[arg(long, value_name = "PATH", global = true)]
    out: Option<PathBuf>,

    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    /// Run configuration (JSON); flags given alongside override it.
    #[arg(long, value_name = "PATH", global = true)]
    config: Option<PathBuf>,

    /// Write the resolved run configuration to PATH instead of running.
    #[arg(long, value_name = "PATH", global = true)]
    emit_config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Data behind figure 1-7 at its caption parameters.
    Figure { id: u32 },
    /// Phase shift over a uniform energy grid for example 1-3.
    Phase { example: u32 },
    /// Spectrum of example 1-3 for one parameter set.
    Spectrum { example: u32 },
    /// Potential reconstruction for configuration 4-7 (`--param config=N`).
    Reconstruct,
    /// Run validation suites and print a JSON report.
    Check {
        /// specfun, orthopoly, spectra, hamiltonian, basis, reconstruct or all.
        #[arg(default_value = "all")]
        suite: String,
    },
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Figure { id } => Command::Figure(id),
            Cmd::Phase { example } => Command::Phase(example),
            Cmd::Spectrum { example } => Command::Spectrum(example),
            Cmd::Reconstruct => Command::Reconstruct,
            Cmd::Check { suite } => Command::Check(suite),
        }
    }
}

enum Failure {
    Usage(String),
    Numerical(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Numerical(_) | Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Numerical(m) | Failure::Io(m) => m,
        }
    }
}

impl From<HahnError> for Failure {
    fn from(e: HahnError) -> Self {
        match e {
            HahnError::QuadratureFailed { .. }
            | HahnError::NonFinite(_)
            | HahnError::ImaginaryResidue { .. }
            | HahnError::GammaPole(_)
            | HahnError::NotLinear(_) => Failure::Numerical(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn resolve(cli: Cli) -> Result<(RunConfig, Option<PathBuf>), Failure> {
    let command = cli.command.map(Command::from);
    let mut cfg = match (&cli.config, command) {
        (Some(path), command) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let mut cfg = serde_json::from_str::<RunConfig>(&text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            if let Some(c) = command {
                cfg.command = c;
            }
            cfg
        }
        (None, Some(command)) => RunConfig {
            command,
            parameters: Params::new(),
            output: Output::default(),
        },
        (None, None) => {
            return Err(Failure::Usage(
                "no command given (use a subcommand or --config)".into(),
            ))
        }
    };
    cfg.parameters.extend(cli.params);
    if let Some(out) = cli.out {
        cfg.output.path = Some(out);
    }
    if let Some(f) = cli.format {
        cfg.output.format = f;
    }
    Ok((cfg, cli.emit_config))
}

/// Defaults of `command` with the run's overrides applied.
fn effective_parameters(cfg: &RunConfig) -> Result<Params, Failure> {
    let mut p = match &cfg.command {
        Command::Figure(id) => figures::figure_defaults(*id)?,
        Command::Phase(id) => figures::phase_defaults(*id)?,
        Command::Spectrum(id) => figures::spectrum_defaults(*id)?,
        Command::Reconstruct => {
            let config = cfg.parameters.get("config").copied().unwrap_or(4.0);
            if !(config.fract() == 0.0 && (4.0..=7.0).contains(&config)) {
                return Err(Failure::Usage(format!(
                    "config must be 4, 5, 6 or 7, got {config}"
                )));
            }
            figures::reconstruction_defaults(config as u32)?
        }
        Command::Check(_) => Params::new(),
    };
    p.extend(cfg.parameters.iter().map(|(k, v)| (k.clone(), *v)));
    Ok(p)
}

fn table_json(cfg: &RunConfig, table: &Table) -> String {
    let value = json!({
        "command": cfg.command.to_string(),
        "title": table.title,
        "metadata": table.metadata,
        "columns": table.columns,
        "rows": table.rows,
    });
    let mut s = serde_json::to_string_pretty(&value).expect("table serializes");
    s.push('\n');
    s
}

fn check_report(suite: &str) -> Result<(String, bool), Failure> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse::<Suite>()?]
    };
    let report = validate::run(&suites);
    let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
    s.push('\n');
    Ok((s, report.all_passed()))
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(format!("stdout: {e}"))),
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let (cfg, emit) = resolve(cli)?;
    if let Some(path) = emit {
        let resolved = RunConfig {
            parameters: effective_parameters(&cfg)?,
            ..cfg
        };
        let mut text = serde_json::to_string_pretty(&resolved).expect("config serializes");
        text.push('\n');
        write_output(Some(&path), &text)?;
        return Ok(true);
    }
    let table = match &cfg.command {
        Command::Figure(id) => figures::figure(*id, &cfg.parameters)?,
        Command::Phase(id) => figures::phase(*id, &cfg.parameters)?,
        Command::Spectrum(id) => figures::spectrum(*id, &cfg.parameters)?,
        Command::Reconstruct => figures::reconstruction(&cfg.parameters)?,
        Command::Check(suite) => {
            if !cfg.parameters.is_empty() {
                return Err(Failure::Usage("check takes no parameters".into()));
            }
            let (text, passed) = check_report(suite)?;
            write_output(cfg.output.path.as_ref(), &text)?;
            return Ok(passed);
        }
    };
    let text = match cfg.output.format {
        Format::Csv => table.to_csv(),
        Format::Json => table_json(&cfg, &table),
    };
    write_output(cfg.output.path.as_ref(), &text)?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("hahn: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
