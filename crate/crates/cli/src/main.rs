use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use lambda_cavity_cli::{
    config::RunConfig, preset, preset_catalog, run_sweep, sweep, validate, RunError,
};

/// Closed-form simulator for a three-level Λ atom in a two-mode Kerr
/// cavity: entanglement-entropy and entropy-squeezing traces as CSV.
#[derive(Debug, Parser)]
#[command(name = "lambda-cavity", version, about)]
struct Cli {
    /// Named scenario (see --list-presets).
    #[arg(long, conflicts_with = "config")]
    preset: Option<String>,
    /// Configuration file (flat key = value format).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output CSV path.
    #[arg(long, default_value = "sweep.csv")]
    out: PathBuf,
    /// Override the sweep horizon τ_max.
    #[arg(long)]
    tau_max: Option<f64>,
    /// Override the entropy-trace step dτ.
    #[arg(long)]
    dtau: Option<f64>,
    /// Override the squeezing-trace step.
    #[arg(long)]
    dtau_squeezing: Option<f64>,
    /// Override the Fock truncation of both modes.
    #[arg(long)]
    nmax: Option<usize>,
    /// Quadrature density flavor: literal | traced | schrodinger.
    #[arg(long)]
    dist_mode: Option<String>,
    /// Drop the squeezing columns even if the scenario enables them.
    #[arg(long)]
    no_squeezing: bool,
    /// Run the oracle cross-check instead of a sweep.
    #[arg(long)]
    oracle_check: bool,
    /// Also write a gnuplot script next to the CSV.
    #[arg(long)]
    emit_plot_script: bool,
    /// List the preset catalog and exit.
    #[arg(long)]
    list_presets: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, RunError> {
    let mut cfg = match (&cli.preset, &cli.config) {
        (Some(name), None) => preset(name)?,
        (None, Some(path)) => RunConfig::parse(&fs::read_to_string(path)?)?,
        _ => {
            return Err(RunError::Config(
                lambda_cavity_cli::ConfigError::Invalid(
                    "exactly one of --preset or --config is required".into(),
                ),
            ))
        }
    };
    if let Some(v) = cli.tau_max {
        cfg.tau_max = v;
    }
    if let Some(v) = cli.dtau {
        cfg.dtau_entropy = v;
    }
    if let Some(v) = cli.dtau_squeezing {
        cfg.dtau_squeezing = v;
    }
    if let Some(n) = cli.nmax {
        cfg.grid.n_max = [n, n];
    }
    if let Some(mode) = &cli.dist_mode {
        cfg.dist_mode = lambda_cavity_cli::config::parse_dist_mode(mode)
            .map_err(lambda_cavity_cli::ConfigError::Invalid)?;
    }
    if cli.no_squeezing {
        cfg.outputs.squeezing = false;
    }
    if cli.oracle_check {
        cfg.oracle_check = true;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), RunError> {
    if cli.list_presets {
        for name in preset_catalog() {
            println!("{name}");
        }
        return Ok(());
    }

    let cfg = load_config(&cli)?;

    if cfg.oracle_check {
        let report = validate(&cfg)?;
        println!("{report}");
        if !report.passed {
            return Err(RunError::Validation(Box::new(report)));
        }
        return Ok(());
    }

    let result = run_sweep(&cfg)?;
    sweep::write_csv(&cli.out, &result.rows)?;
    let s = &result.summary;
    println!("wrote {} rows to {}", s.rows, cli.out.display());
    println!(
        "max |norm-1| {:.3e} (per block {:.3e}); cubic residual {:.3e}; \
         degenerate blocks {}; clamp events arccos {} / eigenvalue {}",
        s.max_norm_error,
        s.max_block_norm_error,
        s.max_scaled_residual,
        s.degenerate_blocks,
        s.acos_clamp_events,
        s.xi_clamp_events,
    );
    if cli.emit_plot_script {
        let script_path = cli.out.with_extension("gp");
        fs::write(&script_path, sweep::plot_script(&cli.out.to_string_lossy(), &cfg))?;
        println!("wrote plot script to {}", script_path.display());
    }
    Ok(())
}
