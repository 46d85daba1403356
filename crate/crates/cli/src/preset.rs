//! Bundled parameter studies.
//!
//! Twelve presets named `fig{2,3}{a..f}-{const,intensity}` sweep the same
//! physical scenarios: both cavity modes start in coherent states with mean
//! photon number 10, couplings are λ₁ = λ₂ = 1, and the panels toggle the
//! Kerr medium, its deformation, and the detunings:
//!
//! | panel | χ   | g(n)   | (Δ₂, Δ₃) |
//! |-------|-----|--------|----------|
//! | a     | 0   | —      | (0, 0)   |
//! | b     | 0.4 | 1      | (0, 0)   |
//! | c     | 0.4 | 1/√n   | (0, 0)   |
//! | d     | 0   | —      | (7, 15)  |
//! | e     | 0.4 | 1      | (7, 15)  |
//! | f     | 0.4 | 1/√n   | (7, 15)  |
//!
//! The `-const` variants use a constant atom–field coupling (f = 1), the
//! `-intensity` variants the intensity-dependent f(n) = √n. `fig2*` presets
//! emit the entanglement-entropy trace, `fig3*` the entropy-squeezing
//! indicators.

use lambda_cavity::model::{CoherentModeSpec, FockGrid, NonlinearitySpec, SystemParams};
use lambda_cavity::squeezing::DistributionMode;

use crate::config::{ConfigError, OutputSelection, RunConfig};

/// Default Poisson tail mass a preset may discard per mode.
pub const PRESET_TAIL_TOL: f64 = 1e-10;
/// Default sweep horizon in scaled time.
pub const PRESET_TAU_MAX: f64 = 25.0;
/// Default entropy-trace step.
pub const PRESET_DTAU: f64 = 0.01;
/// Default squeezing-trace step (coarser: each sample costs a quadrature).
pub const PRESET_DTAU_SQUEEZING: f64 = 0.05;

const FIGURES: [char; 2] = ['2', '3'];
const PANELS: [char; 6] = ['a', 'b', 'c', 'd', 'e', 'f'];
const COUPLINGS: [&str; 2] = ["const", "intensity"];

/// All preset names, in catalog order.
pub fn preset_catalog() -> Vec<String> {
    let mut names = Vec::new();
    for fig in FIGURES {
        for panel in PANELS {
            for coupling in COUPLINGS {
                names.push(format!("fig{fig}{panel}-{coupling}"));
            }
        }
    }
    names
}

/// Builds the configuration for a named preset.
pub fn preset(name: &str) -> Result<RunConfig, ConfigError> {
    let unknown = || ConfigError::UnknownPreset {
        name: name.to_string(),
        catalog: preset_catalog().join(", "),
    };

    let rest = name.strip_prefix("fig").ok_or_else(unknown)?;
    let mut chars = rest.chars();
    let figure = chars.next().ok_or_else(unknown)?;
    let panel = chars.next().ok_or_else(unknown)?;
    let coupling = chars.as_str().strip_prefix('-').ok_or_else(unknown)?;
    if !FIGURES.contains(&figure) || !PANELS.contains(&panel) || !COUPLINGS.contains(&coupling) {
        return Err(unknown());
    }

    let f = match coupling {
        "const" => NonlinearitySpec::Constant,
        _ => NonlinearitySpec::SqrtN,
    };
    let (chi, g) = match panel {
        'a' | 'd' => (0.0, NonlinearitySpec::Constant),
        'b' | 'e' => (0.4, NonlinearitySpec::Constant),
        _ => (0.4, NonlinearitySpec::InverseSqrtN),
    };
    let delta = match panel {
        'a' | 'b' | 'c' => (0.0, 0.0),
        _ => (7.0, 15.0),
    };
    let params = SystemParams {
        omega: None,
        mode_omega: None,
        lambda: [1.0, 1.0],
        chi,
        f_spec: [f.clone(), f],
        g_spec: [g.clone(), g],
        delta_override: Some(delta),
    };
    let modes = [CoherentModeSpec::real(10f64.sqrt()); 2];
    let grid = FockGrid::auto(&modes, PRESET_TAIL_TOL);
    let outputs = if figure == '2' {
        OutputSelection { dem: true, squeezing: false, norm: true }
    } else {
        OutputSelection { dem: false, squeezing: true, norm: true }
    };

    Ok(RunConfig {
        params,
        modes,
        grid,
        tau_max: PRESET_TAU_MAX,
        dtau_entropy: PRESET_DTAU,
        dtau_squeezing: PRESET_DTAU_SQUEEZING,
        dist_mode: DistributionMode::Traced,
        outputs,
        oracle_check: false,
    })
}
