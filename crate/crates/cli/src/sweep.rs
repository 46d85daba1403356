//! Deterministic time sweeps and CSV emission.
//!
//! Block solutions are prepared once; every requested τ is then an
//! independent pure evaluation, so samples are computed in parallel and
//! merged back in τ order. All per-sample sums run in a fixed order and the
//! cross-sample reductions are order-independent (max, counter sums), which
//! makes repeated runs byte-identical regardless of the worker count.

use std::fs;
use std::path::Path;

use lambda_cavity::dynamics::Evolution;
use lambda_cavity::entanglement::{
    hermitian3_eigs_cardano, reduced_atom_dm, von_neumann_entropy,
};
use lambda_cavity::squeezing::{squeezing_sample, PsiTable, QuadratureGrid};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::RunError;

/// One emitted row; absent columns were not requested by the run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutputRow {
    pub tau: f64,
    pub dem: Option<f64>,
    pub ex: Option<f64>,
    pub ep: Option<f64>,
    pub norm_error: Option<f64>,
}

/// Solver bookkeeping accumulated over a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSummary {
    pub rows: usize,
    pub degenerate_blocks: usize,
    pub max_scaled_residual: f64,
    pub acos_clamp_events: u64,
    pub xi_clamp_events: u64,
    /// Largest │global norm − 1│ seen across the sampled times.
    pub max_norm_error: f64,
    /// Largest per-block │‖(A,B,C)‖² − 1│ seen across the sampled times.
    pub max_block_norm_error: f64,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub rows: Vec<OutputRow>,
    pub summary: SweepSummary,
}

/// τ grid points k·dτ for k = 0..⌊τ_max/dτ⌋.
pub(crate) fn time_grid(tau_max: f64, dtau: f64) -> Vec<f64> {
    let steps = (tau_max / dtau + 1e-9).floor() as usize;
    (0..=steps).map(|k| k as f64 * dtau).collect()
}

/// Union of the entropy and squeezing grids; coincident points (to a 1e-9
/// relative tolerance) collapse into one row carrying both duties.
fn merged_grid(cfg: &RunConfig) -> Vec<(f64, bool, bool)> {
    let mut events: Vec<(f64, bool, bool)> = Vec::new();
    if cfg.outputs.dem || (cfg.outputs.norm && !cfg.outputs.squeezing) {
        for tau in time_grid(cfg.tau_max, cfg.dtau_entropy) {
            events.push((tau, true, false));
        }
    }
    if cfg.outputs.squeezing {
        for tau in time_grid(cfg.tau_max, cfg.dtau_squeezing) {
            events.push((tau, false, true));
        }
    }
    events.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut merged: Vec<(f64, bool, bool)> = Vec::with_capacity(events.len());
    for (tau, dem, sq) in events {
        match merged.last_mut() {
            Some(last) if (tau - last.0).abs() <= 1e-9 * 1.0f64.max(tau.abs()) => {
                last.1 |= dem;
                last.2 |= sq;
            }
            _ => merged.push((tau, dem, sq)),
        }
    }
    merged
}

struct SampleOutcome {
    row: OutputRow,
    xi_clamps: u64,
    norm_error: f64,
    block_norm_error: f64,
}

/// Runs the configured sweep and returns the rows plus solver bookkeeping.
pub fn run_sweep(cfg: &RunConfig) -> Result<SweepResult, RunError> {
    cfg.validate()?;
    let evo = Evolution::prepare(&cfg.params, &cfg.modes, &cfg.grid)?;

    let quad = if cfg.outputs.squeezing {
        let grid = QuadratureGrid::default_for(cfg.grid.n_max[0]);
        let psi = PsiTable::build(&grid, cfg.grid.n_max[0] + 2);
        Some((grid, psi))
    } else {
        None
    };

    let grid_points = merged_grid(cfg);
    let outcomes: Vec<SampleOutcome> = grid_points
        .par_iter()
        .map(|&(tau, wants_dem, wants_sq)| -> Result<SampleOutcome, RunError> {
            let snap = evo.snapshot(tau)?;

            let mut block_norm_error = 0.0f64;
            for tr in &snap.triples {
                block_norm_error = block_norm_error.max((tr.norm_sqr() - 1.0).abs());
            }
            let norm_error = (snap.global_norm() - 1.0).abs();

            let mut dem = None;
            let mut xi_clamps = 0;
            if wants_dem && cfg.outputs.dem {
                let eigs = hermitian3_eigs_cardano(&reduced_atom_dm(&snap))?;
                if eigs.clamp_excess > 0.0 {
                    xi_clamps = 1;
                }
                dem = Some(von_neumann_entropy(&eigs));
            }

            let (mut ex, mut ep) = (None, None);
            if wants_sq {
                let (qgrid, psi) = quad.as_ref().expect("squeezing grid prepared");
                let s = squeezing_sample(&snap, qgrid, psi, cfg.dist_mode)?;
                ex = Some(s.ex);
                ep = Some(s.ep);
            }

            Ok(SampleOutcome {
                row: OutputRow {
                    tau,
                    dem,
                    ex,
                    ep,
                    norm_error: cfg.outputs.norm.then_some(norm_error),
                },
                xi_clamps,
                norm_error,
                block_norm_error,
            })
        })
        .collect::<Result<_, _>>()?;

    let mut summary = SweepSummary {
        rows: outcomes.len(),
        degenerate_blocks: evo.blocks.degenerate_count,
        max_scaled_residual: evo.blocks.max_scaled_residual,
        acos_clamp_events: evo.blocks.acos_clamp_events,
        xi_clamp_events: 0,
        max_norm_error: 0.0,
        max_block_norm_error: 0.0,
    };
    let mut rows = Vec::with_capacity(outcomes.len());
    for o in outcomes {
        summary.xi_clamp_events += o.xi_clamps;
        summary.max_norm_error = summary.max_norm_error.max(o.norm_error);
        summary.max_block_norm_error = summary.max_block_norm_error.max(o.block_norm_error);
        rows.push(o.row);
    }
    Ok(SweepResult { rows, summary })
}

/// Fixed 12-significant-digit formatting shared by every CSV column.
fn fmt12(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v }; // normalize -0.0
    format!("{v:.11e}")
}

/// Renders rows to CSV with the stable schema `tau,dem,EX,EP,norm_error`;
/// absent quantities become empty fields.
pub fn rows_to_csv(rows: &[OutputRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str("tau,dem,EX,EP,norm_error\n");
    let cell = |v: Option<f64>| v.map(fmt12).unwrap_or_default();
    for r in rows {
        out.push_str(&fmt12(r.tau));
        out.push(',');
        out.push_str(&cell(r.dem));
        out.push(',');
        out.push_str(&cell(r.ex));
        out.push(',');
        out.push_str(&cell(r.ep));
        out.push(',');
        out.push_str(&cell(r.norm_error));
        out.push('\n');
    }
    out
}

/// Writes the CSV through a sibling temp file and renames it into place, so
/// a failed run never leaves a partial output behind.
pub fn write_csv(path: &Path, rows: &[OutputRow]) -> std::io::Result<()> {
    let tmp = path.with_extension("csv.tmp");
    let result = fs::write(&tmp, rows_to_csv(rows)).and_then(|()| fs::rename(&tmp, path));
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

/// gnuplot companion script plotting whichever columns the run emitted.
pub fn plot_script(csv_path: &str, cfg: &RunConfig) -> String {
    let mut s = String::new();
    s.push_str("# companion plot script; run with: gnuplot <this file>\n");
    s.push_str("set datafile separator \",\"\n");
    s.push_str("set xlabel \"tau\"\n");
    s.push_str("set grid\n");
    let mut plots = Vec::new();
    if cfg.outputs.dem {
        plots.push(format!("\"{csv_path}\" using 1:2 with lines title \"DEM\""));
    }
    if cfg.outputs.squeezing {
        plots.push(format!("\"{csv_path}\" using 1:3 with lines title \"E_X\""));
        plots.push(format!("\"{csv_path}\" using 1:4 with lines title \"E_P\""));
    }
    if plots.is_empty() {
        plots.push(format!("\"{csv_path}\" using 1:5 with lines title \"norm error\""));
    }
    s.push_str(&format!("plot {}\n", plots.join(", \\\n     ")));
    s.push_str("pause -1 \"press enter to close\"\n");
    s
}
