//! Closed form vs integrator on the strong-Kerr regime.
//!
//! With an undeformed Kerr medium the shifts grow like χ·n₁n₂, so the
//! high-occupation blocks are stiff: eigenfrequencies in the hundreds
//! against couplings of order √n. This cross-check drives both routes
//! through exactly that regime (the resonant-panel suites only reach
//! V ≤ χ).

use lambda_cavity::dynamics::{ode_oracle_block, BlockCouplings, BlockIndex, BlockSolution};
use lambda_cavity::model::{NonlinearitySpec, SystemParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn strong_kerr_blocks_match_the_integrator() {
    let params = SystemParams {
        chi: 0.4,
        g_spec: [NonlinearitySpec::Constant, NonlinearitySpec::Constant],
        ..SystemParams::resonant()
    };

    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut blocks: Vec<BlockIndex> = (0..5)
        .map(|_| BlockIndex::new(rng.gen_range(0..=36), rng.gen_range(0..=36)))
        .collect();
    blocks.push(BlockIndex::new(36, 36)); // stiffest corner, V_B ≈ 533

    let mut worst = 0.0f64;
    for idx in blocks {
        let c = BlockCouplings::for_block(&params, idx).unwrap();
        let sol = BlockSolution::solve(c).unwrap();
        let scale = c.v_b.abs().max(c.v_c.abs()).max(c.kappa1).max(c.kappa2);
        let dt = (0.2 / (1.0 + scale)).min(1e-2);
        for &t in &[1.0, 5.0, 20.0] {
            let closed = sol.amplitudes_at(t);
            let ode = ode_oracle_block(&c, t, dt).unwrap();
            let dev = (closed.a - ode.a)
                .norm()
                .max((closed.b - ode.b).norm())
                .max((closed.c - ode.c).norm());
            worst = worst.max(dev);
            assert!(dev < 1e-6, "block {idx:?} at t={t}: deviation {dev:.3e}");
        }
    }
    println!("strong-Kerr max closed-vs-ode deviation: {worst:.3e}");
}
