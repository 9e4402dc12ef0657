//! `gpcert`: runs verification campaigns and writes exact certificates.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use gpcert_core::{render_report, run, CheckKind, Format, ParameterPoint, Preset, Scope, VerificationConfig};

#[derive(Parser)]
#[command(name = "gpcert", version, about = "Exact certification of a quadric complete intersection and its group actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group orders, structure claims and involution localization.
    Groups(Options),
    /// Invariance of the quadric ideal under each generator, symbolic in y.
    Invariance(Options),
    /// The singular orbit of the base point and its double points.
    Orbit(Options),
    /// Fixed-point-freeness of the group action.
    Freeness(Options),
    /// Every check, in dependency order.
    All(Options),
}

#[derive(Args)]
struct Options {
    /// Preset group: G, G1 or G2.
    #[arg(long)]
    group: Option<Preset>,
    /// Explicit specialization `a/b,c/d,e/f`; repeatable.
    #[arg(long = "y", value_name = "Y1,Y2,Y3")]
    y: Vec<ParameterPoint>,
    /// Number of seeded specializations when no --y is given.
    #[arg(long)]
    specializations: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Freeness scope: involutions or all.
    #[arg(long)]
    scope: Option<Scope>,
    /// Write the JSON report here.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// JSON group file; replaces --group.
    #[arg(long, value_name = "PATH")]
    custom_group: Option<PathBuf>,
    /// JSON quadric file replacing the built-in system.
    #[arg(long, value_name = "PATH")]
    custom_quadrics: Option<PathBuf>,
    /// JSON config file; flags override its fields.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Format printed to stdout: text or json.
    #[arg(long, default_value = "text")]
    format: Format,
    /// Zero all timings so identical runs produce identical output.
    #[arg(long)]
    canonical: bool,
}

fn build_config(checks: Vec<CheckKind>, o: &Options) -> Result<VerificationConfig> {
    let mut config = match &o.config {
        Some(path) => VerificationConfig::from_json_file(path).with_context(|| format!("loading config {}", path.display()))?,
        None => VerificationConfig::default(),
    };
    config.checks = checks;
    if let Some(g) = o.group {
        config.group = g;
    }
    if !o.y.is_empty() {
        config.y = o.y.clone();
    }
    if let Some(n) = o.specializations {
        config.specializations = n;
    }
    if let Some(s) = o.seed {
        config.seed = s;
    }
    if let Some(s) = o.scope {
        config.scope = s;
    }
    if o.custom_group.is_some() {
        config.custom_group = o.custom_group.clone();
    }
    if o.custom_quadrics.is_some() {
        config.custom_quadrics = o.custom_quadrics.clone();
    }
    if o.json.is_some() {
        config.output = o.json.clone();
    }
    Ok(config)
}

fn execute(cli: Cli) -> Result<i32> {
    let (checks, options) = match cli.command {
        Command::Groups(o) => (vec![CheckKind::Groups], o),
        Command::Invariance(o) => (vec![CheckKind::Invariance], o),
        Command::Orbit(o) => (vec![CheckKind::Orbit], o),
        Command::Freeness(o) => (vec![CheckKind::Freeness], o),
        Command::All(o) => (CheckKind::ALL.to_vec(), o),
    };
    let config = build_config(checks, &options)?;
    let mut report = run(&config)?;
    if options.canonical {
        report.canonicalize();
    }
    if let Some(path) = &config.output {
        std::fs::write(path, render_report(&report, Format::Json)).with_context(|| format!("writing {}", path.display()))?;
    }
    print!("{}", render_report(&report, options.format));
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
