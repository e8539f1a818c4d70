use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gapseries_cli::commands::{cmd_construct, cmd_criteria, cmd_gap_power, cmd_lemma1, cmd_sweep};
use gapseries_cli::report::Table;
use gapseries_cli::{CliError, RunConfig};

#[derive(Parser)]
#[command(
    name = "gapseries",
    version,
    about = "Sweeps, criteria and constructions for entire Dirichlet and gap power series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Run configuration (TOML, or JSON by extension)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file (a directory for `construct`); stdout when absent
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for random coefficients, overriding the config
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Suppress the summary on stderr
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Sweep M/μ − 1 and M/m − 1 over x and detect the exceptional set
    Sweep,
    /// Tabulate convergence conditions over the b-grid
    Criteria,
    /// Build the extremal series and verify it on its exceptional intervals
    Construct,
    /// Separation margins over all index pairs
    Lemma1,
    /// Sweep a gap power series over the radius
    GapPower,
}

fn emit(table: &Table, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => {
            let f = std::fs::File::create(p)
                .map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            table.write(std::io::BufWriter::new(f))
        }
        None => {
            let stdout = std::io::stdout();
            table.write(stdout.lock())
        }
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Config("--config <path> is required".into()))?;
    let cfg = RunConfig::load(path)?;
    let seed = cli.seed.or(cfg.seed).unwrap_or(0);
    let out = cli.out.clone().or_else(|| cfg.output.clone());
    let out = out.as_deref();
    Ok(match cli.command {
        Command::Sweep | Command::GapPower => {
            let rep = if matches!(cli.command, Command::Sweep) {
                cmd_sweep(&cfg, seed)?
            } else {
                cmd_gap_power(&cfg, seed)?
            };
            emit(&rep.table, out)?;
            let errors = rep.points.iter().filter(|p| p.values.is_err()).count();
            format!(
                "{} points, {} flagged, {} errors, detected {} interval(s)",
                rep.points.len(),
                rep.points
                    .iter()
                    .filter(|p| p.values.as_ref().is_ok_and(|v| v.flagged))
                    .count(),
                errors,
                rep.detected.len()
            )
        }
        Command::Criteria => {
            let (rows, table) = cmd_criteria(&cfg)?;
            emit(&table, out)?;
            format!("{} rows", rows.len())
        }
        Command::Lemma1 => {
            let (rows, table) = cmd_lemma1(&cfg)?;
            emit(&table, out)?;
            format!(
                "{} pairs, {} below tolerance",
                rows.len(),
                rows.iter().filter(|r| !r.ok()).count()
            )
        }
        Command::Construct => {
            let dir = out.ok_or_else(|| {
                CliError::Config("construct writes several files; pass --out <dir>".into())
            })?;
            let rep = cmd_construct(&cfg)?;
            rep.write_dir(dir)?;
            let failed = rep
                .verification
                .iter()
                .filter(|v| !v.as_ref().is_ok_and(|v| v.ok(rep.extremal.beta)))
                .count();
            format!(
                "{} terms, {} verification points failed, files in {}",
                rep.extremal.len(),
                failed,
                dir.display()
            )
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(summary) => {
            if !cli.quiet {
                let _ = writeln!(std::io::stderr(), "{summary}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "gapseries: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
