//! Oracle-validation mode: cross-checks the closed-form amplitudes against
//! direct Runge–Kutta integration on a stratified sample of blocks and
//! times, and audits the solver bookkeeping against the thresholds the
//! library promises.

use std::fmt;

use lambda_cavity::dynamics::{ode_oracle_block, BlockEvolution, BlockIndex, Evolution};
use lambda_cavity::entanglement::{hermitian3_eigs_cardano, reduced_atom_dm};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::RunError;

/// Largest closed-form vs integrator deviation accepted, componentwise.
pub const MAX_AMP_DEVIATION: f64 = 1e-6;
/// Largest scaled cubic residual accepted.
pub const MAX_SCALED_RESIDUAL: f64 = 1e-9;
/// Largest │global norm − 1│ accepted.
pub const MAX_GLOBAL_NORM_ERROR: f64 = 1e-6;
/// Largest per-block norm error accepted.
pub const MAX_BLOCK_NORM_ERROR: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub checked_blocks: usize,
    pub checked_times: usize,
    pub max_amp_deviation: f64,
    pub max_scaled_residual: f64,
    pub degenerate_blocks: usize,
    pub acos_clamp_events: u64,
    pub xi_clamp_events: u64,
    pub max_global_norm_error: f64,
    pub max_block_norm_error: f64,
    pub passed: bool,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "ok  " } else { "FAIL" };
        writeln!(
            f,
            "closed form vs integrator ({} blocks x {} times)",
            self.checked_blocks, self.checked_times
        )?;
        writeln!(
            f,
            "  [{}] max amplitude deviation {:.3e} (limit {MAX_AMP_DEVIATION:.0e})",
            mark(self.max_amp_deviation < MAX_AMP_DEVIATION),
            self.max_amp_deviation
        )?;
        writeln!(
            f,
            "  [{}] max scaled cubic residual {:.3e} (limit {MAX_SCALED_RESIDUAL:.0e})",
            mark(self.max_scaled_residual < MAX_SCALED_RESIDUAL),
            self.max_scaled_residual
        )?;
        writeln!(
            f,
            "  [{}] max global norm error {:.3e} (limit {MAX_GLOBAL_NORM_ERROR:.0e})",
            mark(self.max_global_norm_error < MAX_GLOBAL_NORM_ERROR),
            self.max_global_norm_error
        )?;
        writeln!(
            f,
            "  [{}] max block norm error {:.3e} (limit {MAX_BLOCK_NORM_ERROR:.0e})",
            mark(self.max_block_norm_error < MAX_BLOCK_NORM_ERROR),
            self.max_block_norm_error
        )?;
        writeln!(f, "  degenerate blocks (integrator fallback): {}", self.degenerate_blocks)?;
        writeln!(f, "  arccos clamp events: {}", self.acos_clamp_events)?;
        writeln!(f, "  eigenvalue clamp events: {}", self.xi_clamp_events)?;
        write!(f, "overall: {}", if self.passed { "PASS" } else { "FAIL" })
    }
}

/// Deterministic stratified block sample: corners, edges and interior of
/// the (n₁, n₂) grid, about `target` blocks.
pub fn stratified_blocks(n_max: [usize; 2], target: usize) -> Vec<BlockIndex> {
    let axis = |m: usize| -> Vec<usize> {
        let fracs = [0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0];
        let mut vals: Vec<usize> = fracs.iter().map(|f| (f * m as f64).round() as usize).collect();
        vals.sort_unstable();
        vals.dedup();
        vals
    };
    let a1 = axis(n_max[0]);
    let a2 = axis(n_max[1]);
    let mut blocks = Vec::new();
    'outer: for &n1 in &a1 {
        for &n2 in &a2 {
            blocks.push(BlockIndex::new(n1, n2));
            if blocks.len() == target {
                break 'outer;
            }
        }
    }
    // pad along the diagonal if the lattice is smaller than the target
    let mut d = 1usize;
    while blocks.len() < target && d <= n_max[0].min(n_max[1]) {
        let idx = BlockIndex::new(d, d);
        if !blocks.contains(&idx) {
            blocks.push(idx);
        }
        d += 1;
    }
    blocks
}

/// Probe times spread over the sweep horizon.
fn probe_times(tau_max: f64) -> Vec<f64> {
    [0.02, 0.2, 0.5, 1.0].iter().map(|f| f * tau_max).collect()
}

/// Step the integrator is started from; the convergence loop halves it as
/// far as needed, this only skips hopeless coarse passes on stiff blocks.
fn starting_dt(c: &lambda_cavity::BlockCouplings) -> f64 {
    let scale = c
        .v_a
        .abs()
        .max(c.v_b.abs())
        .max(c.v_c.abs())
        .max(c.kappa1.abs())
        .max(c.kappa2.abs())
        .max(c.delta2.abs())
        .max(c.delta3.abs());
    (0.2 / (1.0 + scale)).min(1e-2)
}

/// Cross-checks a configuration. The report is returned either way; use
/// [`validate_strict`] to turn a failing report into an error.
pub fn validate(cfg: &RunConfig) -> Result<ValidationReport, RunError> {
    cfg.validate()?;
    let evo = Evolution::prepare(&cfg.params, &cfg.modes, &cfg.grid)?;
    let blocks = stratified_blocks(cfg.grid.n_max, 50);
    let times = probe_times(cfg.tau_max);

    let mut tasks = Vec::new();
    for &idx in &blocks {
        for &t in &times {
            tasks.push((idx, t));
        }
    }
    let deviations: Vec<f64> = tasks
        .par_iter()
        .map(|&(idx, t)| -> Result<f64, RunError> {
            match evo.blocks.block(idx) {
                BlockEvolution::Closed(sol) => {
                    let closed = sol.amplitudes_at(t);
                    let ode = ode_oracle_block(&sol.couplings, t, starting_dt(&sol.couplings))?;
                    let dev = (closed.a - ode.a)
                        .norm()
                        .max((closed.b - ode.b).norm())
                        .max((closed.c - ode.c).norm());
                    Ok(dev)
                }
                // degenerate blocks already run on the integrator
                BlockEvolution::Ode(_) => Ok(0.0),
            }
        })
        .collect::<Result<_, _>>()?;
    let max_amp_deviation = deviations.into_iter().fold(0.0f64, f64::max);

    // norm drift and eigenvalue clamps over a coarse trace
    let mut max_global_norm_error = 0.0f64;
    let mut max_block_norm_error = 0.0f64;
    let mut xi_clamp_events = 0u64;
    let scan = crate::sweep::time_grid(cfg.tau_max, cfg.tau_max / 25.0);
    for &tau in &scan {
        let snap = evo.snapshot(tau)?;
        for tr in &snap.triples {
            max_block_norm_error = max_block_norm_error.max((tr.norm_sqr() - 1.0).abs());
        }
        max_global_norm_error = max_global_norm_error.max((snap.global_norm() - 1.0).abs());
        let eigs = hermitian3_eigs_cardano(&reduced_atom_dm(&snap))?;
        if eigs.clamp_excess > 0.0 {
            xi_clamp_events += 1;
        }
    }

    let report = ValidationReport {
        checked_blocks: blocks.len(),
        checked_times: times.len(),
        max_amp_deviation,
        max_scaled_residual: evo.blocks.max_scaled_residual,
        degenerate_blocks: evo.blocks.degenerate_count,
        acos_clamp_events: evo.blocks.acos_clamp_events,
        xi_clamp_events,
        max_global_norm_error,
        max_block_norm_error,
        passed: max_amp_deviation < MAX_AMP_DEVIATION
            && evo.blocks.max_scaled_residual < MAX_SCALED_RESIDUAL
            && max_global_norm_error < MAX_GLOBAL_NORM_ERROR
            && max_block_norm_error < MAX_BLOCK_NORM_ERROR,
    };
    Ok(report)
}

/// As [`validate`], but a failing report becomes [`RunError::Validation`].
pub fn validate_strict(cfg: &RunConfig) -> Result<ValidationReport, RunError> {
    let report = validate(cfg)?;
    if report.passed {
        Ok(report)
    } else {
        Err(RunError::Validation(Box::new(report)))
    }
}
