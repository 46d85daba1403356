//! Shared fixtures for the kernel benchmarks.

use lambda_cavity::model::{CoherentModeSpec, FockGrid, NonlinearitySpec, SystemParams};

/// The stock workload: both modes coherent at mean photon number 10, Kerr
/// medium on, exact resonance — the block grid every sweep runs over.
pub fn standard_scenario() -> (SystemParams, [CoherentModeSpec; 2], FockGrid) {
    let params = SystemParams {
        omega: None,
        mode_omega: None,
        lambda: [1.0, 1.0],
        chi: 0.4,
        f_spec: [NonlinearitySpec::Constant, NonlinearitySpec::Constant],
        g_spec: [NonlinearitySpec::Constant, NonlinearitySpec::Constant],
        delta_override: Some((0.0, 0.0)),
    };
    let modes = [CoherentModeSpec::real(10f64.sqrt()); 2];
    let grid = FockGrid::auto(&modes, 1e-10);
    (params, modes, grid)
}
