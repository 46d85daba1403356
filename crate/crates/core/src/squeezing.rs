//! Position–momentum entropy squeezing of field mode 1.
//!
//! The quadrature distributions ⟨x∣ρ₁∣x⟩ and ⟨p∣ρ₁∣p⟩ are expanded over
//! harmonic-oscillator eigenfunctions and integrated on a composite
//! Gauss–Legendre grid. From their Shannon entropies E_x, E_p the
//! normalized indicators
//!
//! ```text
//!   𝐄_X = (πe)^{−1/2} e^{E_x} − 1,    𝐄_P = (πe)^{−1/2} e^{E_p} − 1
//! ```
//!
//! signal entropy squeezing of a component when they fall inside (−1, 0);
//! the entropic uncertainty relation δx·δp ≥ πe pins (1+𝐄_X)(1+𝐄_P) ≥ 1.
//!
//! Three densities can be requested, differing in how the sum over the
//! spectator mode 2 is treated:
//!
//! * [`DistributionMode::Traced`] (default) — mode-2 sum outside the
//!   squared modulus: the honest partial trace over the atom and mode 2,
//!   taken in the interaction picture. Normalized by construction.
//! * [`DistributionMode::Literal`] — mode-2 sum inside the modulus, each
//!   atomic channel collapsed to a single mode-1 vector. Not a trace and
//!   not normalized; the raw integral is recorded and the density is
//!   renormalized before any entropy is taken.
//! * [`DistributionMode::Schrodinger`] — as `Traced` plus the free-evolution
//!   phases e^{−iγt}, which requires numeric level/mode frequencies.
//!
//! The momentum representation uses ⟨p∣n⟩ = (−i)ⁿψₙ(p); any fixed (±i)ⁿ
//! convention gives identical densities only at t = 0, so the choice is
//! part of the output contract.

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::dynamics::StateSnapshot;

/// Panels of the default composite Gauss–Legendre rule.
pub const DEFAULT_PANELS: usize = 40;
/// Nodes per panel of the default rule.
pub const PANEL_ORDER: usize = 64;
/// Densities below this floor contribute nothing to the entropy integrand.
pub const DENSITY_FLOOR: f64 = 1e-300;

#[derive(Debug, Error)]
pub enum SqueezingError {
    #[error("schrodinger-picture densities need numeric atomic/mode frequencies")]
    MissingFrequencies,
    #[error("density integral is not positive (got {0})")]
    DegenerateDensity(f64),
}

/// How the spectator-mode sum enters the quadrature density.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistributionMode {
    Literal,
    Traced,
    Schrodinger,
}

/// Symmetric composite Gauss–Legendre rule on [−L, L].
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    /// Ascending quadrature abscissas, symmetric about 0.
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
    pub half_width: f64,
}

impl QuadratureGrid {
    /// Composite rule with `panels` equal panels of `order` nodes each.
    pub fn composite_gauss_legendre(half_width: f64, panels: usize, order: usize) -> Self {
        assert!(half_width > 0.0 && panels > 0 && order > 0);
        let (base_x, base_w) = gauss_legendre_rule(order);
        let h = 2.0 * half_width / panels as f64;
        let n = panels * order;
        let mut points = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for panel in 0..panels {
            let center = -half_width + (panel as f64 + 0.5) * h;
            for (j, (&t, &w)) in base_x.iter().zip(&base_w).enumerate() {
                points[panel * order + j] = center + 0.5 * h * t;
                weights[panel * order + j] = 0.5 * h * w;
            }
        }
        // enforce exact symmetry about the origin
        for k in 0..n / 2 {
            let m = n - 1 - k;
            let x = 0.5 * (points[k] - points[m]);
            points[k] = x;
            points[m] = -x;
            let w = 0.5 * (weights[k] + weights[m]);
            weights[k] = w;
            weights[m] = w;
        }
        if n % 2 == 1 {
            points[n / 2] = 0.0;
        }
        QuadratureGrid { points, weights, half_width }
    }

    /// Default grid for states truncated at `n_max` photons: the classical
    /// turning point of the highest retained level plus a five-unit margin.
    pub fn default_for(n_max: usize) -> Self {
        let l = ((2 * n_max + 1) as f64).sqrt() + 5.0;
        Self::composite_gauss_legendre(l, DEFAULT_PANELS, PANEL_ORDER)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// ∫ f dx by the rule, in fixed ascending-point order.
    pub fn integrate(&self, f: &[f64]) -> f64 {
        self.weights.iter().zip(f).map(|(w, v)| w * v).sum()
    }
}

/// Nodes and weights of the `order`-point Gauss–Legendre rule on [−1, 1],
/// by Newton iteration on the Legendre recurrence.
fn gauss_legendre_rule(order: usize) -> (Vec<f64>, Vec<f64>) {
    let n = order;
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for k in 0..n.div_ceil(2) {
        // Tricomi-style initial guess, then Newton
        let mut xi = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, xi);
            dp = d;
            let step = p / d;
            xi -= step;
            if step.abs() < 1e-15 {
                let (p, d) = legendre_and_derivative(n, xi);
                dp = d;
                xi -= p / d;
                break;
            }
        }
        // nodes from the cosine guess come out descending; store ascending
        x[k] = -xi;
        x[n - 1 - k] = xi;
        let wk = 2.0 / ((1.0 - xi * xi) * dp * dp);
        w[k] = wk;
        w[n - 1 - k] = wk;
    }
    if n % 2 == 1 {
        let (_, d) = legendre_and_derivative(n, 0.0);
        x[n / 2] = 0.0;
        w[n / 2] = 2.0 / (d * d);
    }
    (x, w)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        p_prev = p;
        p = next;
    }
    let d = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, d)
}

/// Harmonic-oscillator eigenfunction ψₙ(x) by the stable three-term
/// recurrence ψ_{n+1} = √(2/(n+1))·x·ψₙ − √(n/(n+1))·ψ_{n−1}, seeded with
/// the ground-state Gaussian ψ₀ = π^{−1/4}e^{−x²/2}. Never touches 2ⁿn!.
pub fn oscillator_eigenfunction(n: usize, x: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
    for k in 0..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// ψₙ on every grid point for n = 0..dim, built once and shared read-only
/// across all time samples.
#[derive(Debug, Clone)]
pub struct PsiTable {
    pub dim: usize,
    len: usize,
    values: Vec<f64>,
}

impl PsiTable {
    pub fn build(grid: &QuadratureGrid, dim: usize) -> Self {
        assert!(dim >= 1);
        let len = grid.len();
        let mut values = vec![0.0; dim * len];
        let norm0 = std::f64::consts::PI.powf(-0.25);
        for (k, &x) in grid.points.iter().enumerate() {
            values[k] = norm0 * (-0.5 * x * x).exp();
        }
        if dim > 1 {
            for (k, &x) in grid.points.iter().enumerate() {
                values[len + k] = 2f64.sqrt() * x * values[k];
            }
        }
        for n in 1..dim - 1 {
            let c1 = (2.0 / (n as f64 + 1.0)).sqrt();
            let c2 = (n as f64 / (n as f64 + 1.0)).sqrt();
            let (head, tail) = values.split_at_mut((n + 1) * len);
            let row_out = &mut tail[..len];
            let row_cur = &head[n * len..(n + 1) * len];
            let row_prev = &head[(n - 1) * len..n * len];
            for k in 0..len {
                row_out[k] = c1 * grid.points[k] * row_cur[k] - c2 * row_prev[k];
            }
        }
        PsiTable { dim, len, values }
    }

    pub fn row(&self, n: usize) -> &[f64] {
        &self.values[n * self.len..(n + 1) * self.len]
    }
}

/// One quadrature distribution, renormalized to unit integral; `norm` keeps
/// the raw integral (1 up to truncation for the traced modes, arbitrary for
/// the literal one).
#[derive(Debug, Clone)]
pub struct DistributionSample {
    pub density: Vec<f64>,
    pub mode: DistributionMode,
    pub norm: f64,
}

/// Mode-1 density matrix in the Fock basis (dimension n_max₁+2: the middle
/// atomic channel populates one extra photon), assembled channel by channel
/// so the atom trace stays a sum of separate squared moduli.
fn mode1_fock_dm(snap: &StateSnapshot, mode: DistributionMode) -> Result<Vec<C64>, SqueezingError> {
    let [m1, m2] = snap.n_max;
    let dim = m1 + 2;
    let cols = m2 + 1;
    if mode == DistributionMode::Schrodinger && snap.free.is_none() {
        return Err(SqueezingError::MissingFrequencies);
    }

    let zero = C64::new(0.0, 0.0);
    let mut rho = vec![zero; dim * dim];
    let mut channel = vec![zero; dim * cols];

    for ch in 0..3 {
        channel.iter_mut().for_each(|z| *z = zero);
        for n1 in 0..=m1 {
            for n2 in 0..=m2 {
                let tr = snap.triple(n1, n2);
                let (row, amp) = match ch {
                    0 => (n1, tr.a),
                    1 => (n1 + 1, tr.b),
                    _ => (n1, tr.c),
                };
                let mut value = snap.q1[n1] * snap.q2[n2] * amp;
                if mode == DistributionMode::Schrodinger {
                    let gamma = snap.gamma(n1, n2).expect("checked above")[ch];
                    value *= C64::from_polar(1.0, -gamma * snap.t);
                }
                channel[row * cols + n2] = value;
            }
        }
        match mode {
            DistributionMode::Literal => {
                // spectator sum inside the modulus: rank-1 update
                let c: Vec<C64> = (0..dim)
                    .map(|n| channel[n * cols..(n + 1) * cols].iter().sum())
                    .collect();
                for n in 0..dim {
                    for m in 0..dim {
                        rho[n * dim + m] += c[n] * c[m].conj();
                    }
                }
            }
            DistributionMode::Traced | DistributionMode::Schrodinger => {
                for n in 0..dim {
                    for m in n..dim {
                        let mut acc = zero;
                        for n2 in 0..cols {
                            acc += channel[n * cols + n2] * channel[m * cols + n2].conj();
                        }
                        rho[n * dim + m] += acc;
                        if m != n {
                            rho[m * dim + n] += acc.conj();
                        }
                    }
                }
            }
        }
    }
    Ok(rho)
}

/// density(k) = Σ_{n,m} S[n][m] ψₙ(x_k) ψ_m(x_k) for a real symmetric S.
fn quadratic_form_density(s: &[f64], dim: usize, psi: &PsiTable) -> Vec<f64> {
    let len = psi.len;
    let mut density = vec![0.0; len];
    for n in 0..dim {
        let row_n = psi.row(n);
        let diag = s[n * dim + n];
        if diag != 0.0 {
            for k in 0..len {
                density[k] += diag * row_n[k] * row_n[k];
            }
        }
        for m in (n + 1)..dim {
            let coeff = 2.0 * s[n * dim + m];
            if coeff == 0.0 {
                continue;
            }
            let row_m = psi.row(m);
            for k in 0..len {
                density[k] += coeff * row_n[k] * row_m[k];
            }
        }
    }
    // the exact density is a PSD quadratic form; clip rounding noise
    for d in &mut density {
        if *d < 0.0 {
            *d = 0.0;
        }
    }
    density
}

fn finish_distribution(
    mut density: Vec<f64>,
    grid: &QuadratureGrid,
    mode: DistributionMode,
) -> Result<DistributionSample, SqueezingError> {
    let norm = grid.integrate(&density);
    if !norm.is_finite() || norm <= 0.0 {
        return Err(SqueezingError::DegenerateDensity(norm));
    }
    for d in &mut density {
        *d /= norm;
    }
    Ok(DistributionSample { density, mode, norm })
}

/// Position distribution ⟨x∣ρ₁∣x⟩ of field mode 1 on the grid.
///
/// The three atomic channels enter as separate squared moduli, the middle
/// one through ⟨x∣n₁+1⟩; see the module docs for the mode semantics.
pub fn position_distribution(
    snap: &StateSnapshot,
    grid: &QuadratureGrid,
    psi: &PsiTable,
    mode: DistributionMode,
) -> Result<DistributionSample, SqueezingError> {
    let dim = snap.n_max[0] + 2;
    assert!(psi.dim >= dim, "psi table too small for the snapshot");
    let rho = mode1_fock_dm(snap, mode)?;
    let s: Vec<f64> = rho.iter().map(|z| z.re).collect();
    finish_distribution(quadratic_form_density(&s, dim, psi), grid, mode)
}

/// Momentum distribution ⟨p∣ρ₁∣p⟩ with the ⟨p∣n⟩ = (−i)ⁿψₙ(p) convention:
/// the Fock matrix picks up the phase twist i^{m−n} and the same real-form
/// kernel applies.
pub fn momentum_distribution(
    snap: &StateSnapshot,
    grid: &QuadratureGrid,
    psi: &PsiTable,
    mode: DistributionMode,
) -> Result<DistributionSample, SqueezingError> {
    let dim = snap.n_max[0] + 2;
    assert!(psi.dim >= dim, "psi table too small for the snapshot");
    let rho = mode1_fock_dm(snap, mode)?;
    let mut s = vec![0.0; dim * dim];
    for n in 0..dim {
        for m in 0..dim {
            let z = rho[n * dim + m];
            s[n * dim + m] = match (m + 4 - (n % 4)) % 4 {
                0 => z.re,
                1 => -z.im,
                2 => -z.re,
                _ => z.im,
            };
        }
    }
    finish_distribution(quadratic_form_density(&s, dim, psi), grid, mode)
}

/// Differential Shannon entropy −∫ρ ln ρ of a (renormalized) distribution.
pub fn shannon_entropy(d: &DistributionSample, grid: &QuadratureGrid) -> f64 {
    d.density
        .iter()
        .zip(&grid.weights)
        .filter(|(&rho, _)| rho >= DENSITY_FLOOR)
        .map(|(&rho, &w)| -w * rho * rho.ln())
        .sum()
}

/// Normalized entropy-squeezing indicators (𝐄_X, 𝐄_P); a component is
/// squeezed when its indicator lies in (−1, 0).
pub fn squeezing_indicators(e_x: f64, e_p: f64) -> (f64, f64) {
    let scale = (std::f64::consts::PI * std::f64::consts::E).sqrt().recip();
    (scale * e_x.exp() - 1.0, scale * e_p.exp() - 1.0)
}

/// Entropy-squeezing figures of one snapshot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingSample {
    pub tau: f64,
    /// Position and momentum Shannon entropies.
    pub e_x: f64,
    pub e_p: f64,
    /// Normalized indicators 𝐄_X, 𝐄_P.
    pub ex: f64,
    pub ep: f64,
}

/// Both quadrature entropies and their indicators for one snapshot.
pub fn squeezing_sample(
    snap: &StateSnapshot,
    grid: &QuadratureGrid,
    psi: &PsiTable,
    mode: DistributionMode,
) -> Result<SqueezingSample, SqueezingError> {
    let dx = position_distribution(snap, grid, psi, mode)?;
    let dp = momentum_distribution(snap, grid, psi, mode)?;
    let e_x = shannon_entropy(&dx, grid);
    let e_p = shannon_entropy(&dp, grid);
    let (ex, ep) = squeezing_indicators(e_x, e_p);
    Ok(SqueezingSample { tau: snap.t, e_x, e_p, ex, ep })
}
