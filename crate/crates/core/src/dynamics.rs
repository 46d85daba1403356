//! Closed-form time evolution of the atom–field state.
//!
//! The interaction Hamiltonian never leaves the three-dimensional block
//! spanned by {∣1,n₁,n₂⟩, ∣2,n₁+1,n₂⟩, ∣3,n₁,n₂+1⟩}, so with the atom
//! initially excited the amplitudes (A, B, C) of each block obey
//!
//! ```text
//!   i Ȧ = V_A A + κ₁ B e^{−iΔ₂t} + κ₂ C e^{−iΔ₃t}
//!   i Ḃ = V_B B + κ₁ A e^{ iΔ₂t}
//!   i Ċ = V_C C + κ₂ A e^{ iΔ₃t}
//! ```
//!
//! with Kerr shifts V_A = V(n₁,n₂), V_B = V(n₁+1,n₂), V_C = V(n₁,n₂+1) and
//! couplings κ₁ = λ₁√(n₁+1)f₁(n₁+1), κ₂ = λ₂√(n₂+1)f₂(n₂+1). Substituting
//! B ∝ e^{iμt} turns the system into the real cubic
//! μ³ + x₁μ² + x₂μ + x₃ = 0, solved here by the trigonometric (Cardano)
//! formula; the three roots are the block eigenfrequencies. The block is
//! Hermitian, so the roots are always real.
//!
//! With weights bⱼ fixed by A(0) = 1, B(0) = C(0) = 0 the amplitudes are
//!
//! ```text
//!   A = −e^{−iΔ₂t} Σⱼ (μⱼ+V_B) bⱼ e^{iμⱼt}
//!   B = κ₁ Σⱼ bⱼ e^{iμⱼt}
//!   C = κ₂^{-1} e^{i(Δ₃−Δ₂)t} Σⱼ [(μⱼ+V_B)(μⱼ+V_A−Δ₂) − κ₁²] bⱼ e^{iμⱼt}
//! ```
//!
//! Blocks whose roots (nearly) collide make the bⱼ formula ill-posed; such
//! blocks fall back to direct Runge–Kutta integration of the coupled
//! equations, which also serves everywhere as an independent oracle for the
//! closed form ([`ode_oracle_block`]).

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::model::{
    CoherentModeSpec, FieldMode, FockGrid, FreeFrequencies, ModelError, SystemParams,
};

/// Relative root-gap floor below which the weight formula is abandoned.
pub const GAP_TOL: f64 = 1e-8;
/// Scaled polynomial residual each accepted root must satisfy.
pub const RESIDUAL_TOL: f64 = 1e-9;
/// arccos arguments may drift past ±1 by rounding; drifts beyond this are
/// counted as clamp events.
pub const ACOS_CLAMP_WARN: f64 = 1e-12;
/// Componentwise agreement demanded between successive step-halved
/// Runge–Kutta results.
pub const ODE_AGREEMENT: f64 = 1e-8;
const ODE_MAX_HALVINGS: u32 = 20;

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error(transparent)]
    Model(#[from] ModelError),
    /// The trigonometric formula could not produce three real roots within
    /// the residual tolerance; the coefficients do not stem from a
    /// Hermitian block.
    #[error("cubic residual check failed (max scaled residual {residual:.3e})")]
    ComplexRoots { residual: f64 },
    /// Two (or three) roots within `GAP_TOL`; the initial-weight formula
    /// divides by the root gaps.
    #[error("degenerate cubic roots (min gap {gap:.3e})")]
    DegenerateRoots { gap: f64 },
    #[error("ODE step halving did not converge to {ODE_AGREEMENT:.0e} after {ODE_MAX_HALVINGS} halvings")]
    StepSize,
    #[error("block (n1 = {n1}, n2 = {n2}): {source}")]
    Block {
        n1: usize,
        n2: usize,
        #[source]
        source: Box<DynamicsError>,
    },
}

impl DynamicsError {
    fn at_block(self, n1: usize, n2: usize) -> DynamicsError {
        DynamicsError::Block { n1, n2, source: Box::new(self) }
    }
}

/// Base Fock occupation (n₁, n₂) of a block; the block spans
/// ∣1,n₁,n₂⟩, ∣2,n₁+1,n₂⟩, ∣3,n₁,n₂+1⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockIndex {
    pub n1: usize,
    pub n2: usize,
}

impl BlockIndex {
    pub fn new(n1: usize, n2: usize) -> Self {
        BlockIndex { n1, n2 }
    }
}

/// All scalar constants entering one block's equations of motion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockCouplings {
    pub v_a: f64,
    pub v_b: f64,
    pub v_c: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    pub delta2: f64,
    pub delta3: f64,
}

impl BlockCouplings {
    pub fn for_block(params: &SystemParams, idx: BlockIndex) -> Result<Self, DynamicsError> {
        let (delta2, delta3) = params.detunings().map_err(DynamicsError::from)?;
        let build = || -> Result<BlockCouplings, ModelError> {
            Ok(BlockCouplings {
                v_a: params.deformed_kerr_shift(idx.n1, idx.n2)?,
                v_b: params.deformed_kerr_shift(idx.n1 + 1, idx.n2)?,
                v_c: params.deformed_kerr_shift(idx.n1, idx.n2 + 1)?,
                kappa1: params.coupling_strength(FieldMode::Mode1, idx.n1)?,
                kappa2: params.coupling_strength(FieldMode::Mode2, idx.n2)?,
                delta2,
                delta3,
            })
        };
        build().map_err(|e| DynamicsError::from(e).at_block(idx.n1, idx.n2))
    }
}

/// Coefficients (x₁, x₂, x₃) of the block eigenfrequency cubic.
pub fn cubic_coefficients(c: &BlockCouplings) -> [f64; 3] {
    let BlockCouplings { v_a, v_b, v_c, kappa1, kappa2, delta2, delta3 } = *c;
    let d32 = delta3 - delta2;
    let x1 = v_a + v_b + v_c + d32 - delta2;
    let x2 = (v_a + v_b - delta2) * (v_c + d32) + v_b * (v_a - delta2)
        - kappa1 * kappa1
        - kappa2 * kappa2;
    let x3 = v_b * ((v_a - delta2) * (v_c + d32) - kappa2 * kappa2)
        - kappa1 * kappa1 * (v_c + d32);
    [x1, x2, x3]
}

/// Real roots of μ³ + x₁μ² + x₂μ + x₃ together with the Cardano angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicSolution {
    pub x: [f64; 3],
    pub mu: [f64; 3],
    /// Cardano angle θ; 0 on the triple-root branch.
    pub theta: f64,
    /// Set when the minimum pairwise root gap falls below the degeneracy
    /// floor (or on the triple-root branch).
    pub degenerate: bool,
    /// How far the arccos argument had to be pulled back into [−1, 1];
    /// 0 when it was already in range.
    pub acos_clamp_excess: f64,
}

/// Magnitude scale of the cubic's roots, inferred from its coefficients.
fn coeff_scale(x: &[f64; 3]) -> f64 {
    1.0f64
        .max(x[0].abs())
        .max(x[1].abs().sqrt())
        .max(x[2].abs().cbrt())
}

fn eval_cubic(x: &[f64; 3], mu: f64) -> f64 {
    ((mu + x[0]) * mu + x[1]) * mu + x[2]
}

fn scaled_residual(x: &[f64; 3], mu: f64) -> f64 {
    let xinf = x[0].abs().max(x[1].abs()).max(x[2].abs());
    eval_cubic(x, mu).abs() / 1.0f64.max(xinf * mu * mu)
}

/// Solves the eigenfrequency cubic by the trigonometric formula
///
/// ```text
///   μⱼ = −x₁/3 + (2/3)·√(x₁²−3x₂)·cos[θ + 2π(j−1)/3]
///   θ  = (1/3)·arccos[(9x₁x₂ − 2x₁³ − 27x₃) / (2(x₁²−3x₂)^{3/2})]
/// ```
///
/// For a real-rooted cubic x₁²−3x₂ = ½Σ(μᵢ−μⱼ)² ≥ 0; when it vanishes (to
/// within rounding) the triple root −x₁/3 is returned with the degenerate
/// flag set. The arccos argument is clamped to [−1, 1] and each root gets a
/// guarded Newton polish before the residual check.
pub fn solve_cubic_trig(x: [f64; 3]) -> Result<CubicSolution, DynamicsError> {
    let scale = coeff_scale(&x);
    let p = x[0] * x[0] - 3.0 * x[1];

    let mut sol = if p <= 0.0 || p.sqrt().powi(3) <= 1e-14 * scale.powi(3) {
        CubicSolution {
            x,
            mu: [-x[0] / 3.0; 3],
            theta: 0.0,
            degenerate: true,
            acos_clamp_excess: 0.0,
        }
    } else {
        let sqrt_p = p.sqrt();
        let raw = (9.0 * x[0] * x[1] - 2.0 * x[0] * x[0] * x[0] - 27.0 * x[2])
            / (2.0 * sqrt_p.powi(3));
        let arg = raw.clamp(-1.0, 1.0);
        let excess = (raw.abs() - 1.0).max(0.0);
        let theta = arg.acos() / 3.0;
        let r = 2.0 / 3.0 * sqrt_p;
        let mut mu = [0.0; 3];
        for (j, m) in mu.iter_mut().enumerate() {
            let angle = theta + 2.0 / 3.0 * std::f64::consts::PI * j as f64;
            let mut root = -x[0] / 3.0 + r * angle.cos();
            // Newton polish; skipped near stationary points where the step
            // is unreliable.
            for _ in 0..2 {
                let dp = (3.0 * root + 2.0 * x[0]) * root + x[1];
                if dp.abs() < 1e-6 * scale * scale {
                    break;
                }
                let step = eval_cubic(&x, root) / dp;
                if step.abs() > 1e-3 * scale {
                    break;
                }
                root -= step;
            }
            *m = root;
        }
        let min_gap = (mu[0] - mu[1])
            .abs()
            .min((mu[1] - mu[2]).abs())
            .min((mu[0] - mu[2]).abs());
        CubicSolution {
            x,
            mu,
            theta,
            degenerate: min_gap < GAP_TOL * scale,
            acos_clamp_excess: excess,
        }
    };

    let residual = sol
        .mu
        .iter()
        .map(|&m| scaled_residual(&x, m))
        .fold(0.0f64, f64::max);
    if residual > RESIDUAL_TOL && !sol.degenerate {
        return Err(DynamicsError::ComplexRoots { residual });
    }
    // A degenerate solution with a bad residual means the input was not
    // real-rooted at all (e.g. complex conjugate pair): reject it too.
    if sol.degenerate && residual > 1e-3 {
        return Err(DynamicsError::ComplexRoots { residual });
    }
    if sol.mu.iter().any(|m| !m.is_finite()) {
        return Err(DynamicsError::ComplexRoots { residual: f64::INFINITY });
    }
    sol.x = x;
    Ok(sol)
}

/// Weights bⱼ = (μₖ + μₗ + V_A + V_B − Δ₂)/(μⱼₖ μⱼₗ) enforcing the initial
/// condition A(0) = 1, B(0) = C(0) = 0.
pub fn initial_weights(
    cubic: &CubicSolution,
    c: &BlockCouplings,
) -> Result<[f64; 3], DynamicsError> {
    let scale = coeff_scale(&cubic.x);
    let mu = cubic.mu;
    let min_gap = (mu[0] - mu[1])
        .abs()
        .min((mu[1] - mu[2]).abs())
        .min((mu[0] - mu[2]).abs());
    if cubic.degenerate || min_gap < GAP_TOL * scale {
        return Err(DynamicsError::DegenerateRoots { gap: min_gap });
    }
    let s = c.v_a + c.v_b - c.delta2;
    let mut b = [0.0; 3];
    for j in 0..3 {
        let k = (j + 1) % 3;
        let l = (j + 2) % 3;
        b[j] = (mu[k] + mu[l] + s) / ((mu[j] - mu[k]) * (mu[j] - mu[l]));
    }
    Ok(b)
}

/// One block's closed-form solution: couplings, eigenfrequencies, weights.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSolution {
    pub couplings: BlockCouplings,
    pub cubic: CubicSolution,
    pub b: [f64; 3],
}

impl BlockSolution {
    pub fn solve(couplings: BlockCouplings) -> Result<Self, DynamicsError> {
        let cubic = solve_cubic_trig(cubic_coefficients(&couplings))?;
        let b = initial_weights(&cubic, &couplings)?;
        Ok(BlockSolution { couplings, cubic, b })
    }

    /// Amplitudes at time t (in units of 1/λ).
    pub fn amplitudes_at(&self, t: f64) -> AmplitudeTriple {
        let c = &self.couplings;
        let mut sum_a = C64::new(0.0, 0.0);
        let mut sum_b = C64::new(0.0, 0.0);
        let mut sum_c = C64::new(0.0, 0.0);
        for j in 0..3 {
            let mu = self.cubic.mu[j];
            let w = self.b[j];
            let ph = C64::from_polar(w, mu * t);
            sum_a += (mu + c.v_b) * ph;
            sum_b += ph;
            if c.kappa2 != 0.0 {
                sum_c += ((mu + c.v_b) * (mu + c.v_a - c.delta2) - c.kappa1 * c.kappa1) * ph;
            }
        }
        let a = -C64::from_polar(1.0, -c.delta2 * t) * sum_a;
        let b = c.kappa1 * sum_b;
        // The C expression carries an explicit 1/κ₂; for κ₂ = 0 the level
        // ∣3⟩ is decoupled and C stays exactly zero.
        let cc = if c.kappa2 == 0.0 {
            C64::new(0.0, 0.0)
        } else {
            C64::from_polar(1.0 / c.kappa2, (c.delta3 - c.delta2) * t) * sum_c
        };
        AmplitudeTriple { a, b, c: cc }
    }
}

/// Atomic probability amplitudes (A, B, C) of one block at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeTriple {
    pub a: C64,
    pub b: C64,
    pub c: C64,
}

impl AmplitudeTriple {
    pub fn initial() -> Self {
        AmplitudeTriple {
            a: C64::new(1.0, 0.0),
            b: C64::new(0.0, 0.0),
            c: C64::new(0.0, 0.0),
        }
    }

    /// ∣A∣² + ∣B∣² + ∣C∣²; exactly 1 for the true solution.
    pub fn norm_sqr(&self) -> f64 {
        self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr()
    }

    fn max_component_diff(&self, other: &AmplitudeTriple) -> f64 {
        (self.a - other.a)
            .norm()
            .max((self.b - other.b).norm())
            .max((self.c - other.c).norm())
    }
}

/// Runge–Kutta reference solution of the coupled amplitude equations.
///
/// Integrates from (1, 0, 0) with the classical fourth-order scheme at the
/// given step, then keeps halving the step until two successive results
/// agree componentwise to [`ODE_AGREEMENT`]. Completely independent of the
/// cubic/weight machinery, which is the point: the closed form and this
/// integrator validate each other.
pub fn ode_oracle_block(
    c: &BlockCouplings,
    t: f64,
    dt: f64,
) -> Result<AmplitudeTriple, DynamicsError> {
    assert!(dt > 0.0, "step size must be positive");
    if t == 0.0 {
        return Ok(AmplitudeTriple::initial());
    }
    let mut steps = (t / dt).ceil().max(1.0) as u64;
    let mut prev = rk4_integrate(c, t, steps);
    for _ in 0..ODE_MAX_HALVINGS {
        steps *= 2;
        let cur = rk4_integrate(c, t, steps);
        if cur.max_component_diff(&prev) <= ODE_AGREEMENT {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(DynamicsError::StepSize)
}

fn rk4_integrate(c: &BlockCouplings, t: f64, steps: u64) -> AmplitudeTriple {
    let dt = t / steps as f64;
    let mi = C64::new(0.0, -1.0);
    let rhs = |y: &[C64; 3], u2: C64, u3: C64| -> [C64; 3] {
        [
            mi * (c.v_a * y[0] + c.kappa1 * y[1] * u2 + c.kappa2 * y[2] * u3),
            mi * (c.v_b * y[1] + c.kappa1 * y[0] * u2.conj()),
            mi * (c.v_c * y[2] + c.kappa2 * y[0] * u3.conj()),
        ]
    };

    let mut y = [C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)];
    // e^{−iΔt} factors advance by constant half-step rotations instead of
    // per-stage exp() calls; they are refreshed periodically so the drift
    // of repeated multiplication stays at the round-off floor.
    let h2 = C64::from_polar(1.0, -c.delta2 * 0.5 * dt);
    let h3 = C64::from_polar(1.0, -c.delta3 * 0.5 * dt);
    let mut u2 = C64::new(1.0, 0.0);
    let mut u3 = C64::new(1.0, 0.0);
    for step in 0..steps {
        if step % 4096 == 0 {
            let t0 = dt * step as f64;
            u2 = C64::from_polar(1.0, -c.delta2 * t0);
            u3 = C64::from_polar(1.0, -c.delta3 * t0);
        }
        let u2h = u2 * h2;
        let u3h = u3 * h3;
        let u2f = u2h * h2;
        let u3f = u3h * h3;

        let k1 = rhs(&y, u2, u3);
        let y2 = add_scaled(&y, &k1, 0.5 * dt);
        let k2 = rhs(&y2, u2h, u3h);
        let y3 = add_scaled(&y, &k2, 0.5 * dt);
        let k3 = rhs(&y3, u2h, u3h);
        let y4 = add_scaled(&y, &k3, dt);
        let k4 = rhs(&y4, u2f, u3f);
        for i in 0..3 {
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        u2 = u2f;
        u3 = u3f;
    }
    AmplitudeTriple { a: y[0], b: y[1], c: y[2] }
}

fn add_scaled(y: &[C64; 3], k: &[C64; 3], s: f64) -> [C64; 3] {
    [y[0] + s * k[0], y[1] + s * k[1], y[2] + s * k[2]]
}

/// How one block is evaluated over time.
#[derive(Debug, Clone, PartialEq)]
pub enum BlockEvolution {
    Closed(BlockSolution),
    /// Degenerate roots: amplitudes come from the Runge–Kutta integrator.
    Ode(BlockCouplings),
}

/// Per-block solutions prepared over a whole Fock grid, plus solver
/// bookkeeping used by the validation report.
#[derive(Debug, Clone)]
pub struct BlockSet {
    pub n_max: [usize; 2],
    blocks: Vec<BlockEvolution>,
    pub degenerate_count: usize,
    pub max_scaled_residual: f64,
    /// arccos clamp excursions beyond [`ACOS_CLAMP_WARN`].
    pub acos_clamp_events: u64,
    ode_dt: f64,
}

impl BlockSet {
    /// Solves every block of the grid. Blocks are laid out row-major with
    /// n₂ fastest; sums over blocks elsewhere in the crate follow this
    /// fixed order so results do not depend on scheduling.
    pub fn prepare(params: &SystemParams, grid: &FockGrid) -> Result<Self, DynamicsError> {
        params.validate().map_err(DynamicsError::from)?;
        let [m1, m2] = grid.n_max;
        let mut blocks = Vec::with_capacity((m1 + 1) * (m2 + 1));
        let mut degenerate_count = 0;
        let mut max_res = 0.0f64;
        let mut clamp_events = 0u64;
        for n1 in 0..=m1 {
            for n2 in 0..=m2 {
                let idx = BlockIndex::new(n1, n2);
                let c = BlockCouplings::for_block(params, idx)?;
                let cubic = solve_cubic_trig(cubic_coefficients(&c))
                    .map_err(|e| e.at_block(n1, n2))?;
                if cubic.acos_clamp_excess > ACOS_CLAMP_WARN {
                    clamp_events += 1;
                }
                for &m in &cubic.mu {
                    max_res = max_res.max(scaled_residual(&cubic.x, m));
                }
                match initial_weights(&cubic, &c) {
                    Ok(b) => blocks.push(BlockEvolution::Closed(BlockSolution {
                        couplings: c,
                        cubic,
                        b,
                    })),
                    Err(DynamicsError::DegenerateRoots { .. }) => {
                        degenerate_count += 1;
                        blocks.push(BlockEvolution::Ode(c));
                    }
                    Err(e) => return Err(e.at_block(n1, n2)),
                }
            }
        }
        Ok(BlockSet {
            n_max: grid.n_max,
            blocks,
            degenerate_count,
            max_scaled_residual: max_res,
            acos_clamp_events: clamp_events,
            ode_dt: 1e-2,
        })
    }

    pub fn block(&self, idx: BlockIndex) -> &BlockEvolution {
        &self.blocks[idx.n1 * (self.n_max[1] + 1) + idx.n2]
    }

    pub fn amplitudes_at(
        &self,
        idx: BlockIndex,
        t: f64,
    ) -> Result<AmplitudeTriple, DynamicsError> {
        match self.block(idx) {
            BlockEvolution::Closed(sol) => Ok(sol.amplitudes_at(t)),
            BlockEvolution::Ode(c) => {
                ode_oracle_block(c, t, self.ode_dt).map_err(|e| e.at_block(idx.n1, idx.n2))
            }
        }
    }
}

/// Joint atom–field state at one instant: the amplitude triple of every
/// block plus the initial field amplitudes. Free-evolution phases are kept
/// symbolic (they need numeric ω, Ω to materialize).
#[derive(Debug, Clone)]
pub struct StateSnapshot {
    pub t: f64,
    pub n_max: [usize; 2],
    /// Row-major over (n₁, n₂), n₂ fastest.
    pub triples: Vec<AmplitudeTriple>,
    pub q1: Vec<C64>,
    pub q2: Vec<C64>,
    pub detunings: (f64, f64),
    pub free: Option<FreeFrequencies>,
}

impl StateSnapshot {
    pub fn triple(&self, n1: usize, n2: usize) -> &AmplitudeTriple {
        &self.triples[n1 * (self.n_max[1] + 1) + n2]
    }

    /// Σ ∣q₁q₂∣²(∣A∣²+∣B∣²+∣C∣²), fixed summation order; 1 up to the
    /// truncated Poisson tails.
    pub fn global_norm(&self) -> f64 {
        let mut total = 0.0;
        for n1 in 0..=self.n_max[0] {
            let w1 = self.q1[n1].norm_sqr();
            for n2 in 0..=self.n_max[1] {
                let w2 = self.q2[n2].norm_sqr();
                total += w1 * w2 * self.triple(n1, n2).norm_sqr();
            }
        }
        total
    }

    /// Free-evolution phases (γ₁, γ₂, γ₃) of block (n₁, n₂), when the
    /// absolute frequencies are known:
    /// γ₁ = ω₁ + n₁Ω₁ + n₂Ω₂, γ₂ = ω₂ + (n₁+1)Ω₁ + n₂Ω₂,
    /// γ₃ = ω₃ + n₁Ω₁ + (n₂+1)Ω₂.
    pub fn gamma(&self, n1: usize, n2: usize) -> Option<[f64; 3]> {
        self.free.map(|f| {
            let base1 = n1 as f64 * f.mode_omega[0];
            let base2 = n2 as f64 * f.mode_omega[1];
            [
                f.omega[0] + base1 + base2,
                f.omega[1] + base1 + f.mode_omega[0] + base2,
                f.omega[2] + base1 + base2 + f.mode_omega[1],
            ]
        })
    }
}

/// Prepared evolution of the full system: block solutions plus the initial
/// coherent amplitudes, evaluated lazily at any time.
#[derive(Debug, Clone)]
pub struct Evolution {
    pub blocks: BlockSet,
    pub q1: Vec<C64>,
    pub q2: Vec<C64>,
    detunings: (f64, f64),
    free: Option<FreeFrequencies>,
}

impl Evolution {
    pub fn prepare(
        params: &SystemParams,
        modes: &[CoherentModeSpec; 2],
        grid: &FockGrid,
    ) -> Result<Self, DynamicsError> {
        let blocks = BlockSet::prepare(params, grid)?;
        let q1 = modes[0].amplitudes(grid.n_max[0]).map_err(DynamicsError::from)?;
        let q2 = modes[1].amplitudes(grid.n_max[1]).map_err(DynamicsError::from)?;
        Ok(Evolution {
            blocks,
            q1,
            q2,
            detunings: params.detunings().map_err(DynamicsError::from)?,
            free: params.free_frequencies(),
        })
    }

    pub fn snapshot(&self, t: f64) -> Result<StateSnapshot, DynamicsError> {
        let [m1, m2] = self.blocks.n_max;
        let mut triples = Vec::with_capacity((m1 + 1) * (m2 + 1));
        for n1 in 0..=m1 {
            for n2 in 0..=m2 {
                triples.push(self.blocks.amplitudes_at(BlockIndex::new(n1, n2), t)?);
            }
        }
        Ok(StateSnapshot {
            t,
            n_max: self.blocks.n_max,
            triples,
            q1: self.q1.clone(),
            q2: self.q2.clone(),
            detunings: self.detunings,
            free: self.free,
        })
    }
}

/// Assembles the joint state at time `t` from scratch: prepares every block
/// of the grid and attaches the coherent amplitudes. When sweeping many
/// times, prepare an [`Evolution`] once instead.
pub fn assemble_state(
    params: &SystemParams,
    modes: &[CoherentModeSpec; 2],
    grid: &FockGrid,
    t: f64,
) -> Result<StateSnapshot, DynamicsError> {
    Evolution::prepare(params, modes, grid)?.snapshot(t)
}
