//! Physical parameters of the atom–cavity system.
//!
//! The Hamiltonian couples a Λ-configuration three-level atom (levels ω₁,
//! ω₂, ω₃; transitions 1↔2 and 1↔3 allowed) to two cavity modes (Ω₁, Ω₂)
//! through deformed ladder operators: the atom–field coupling carries a
//! weight f(n̂) per mode and the cross-Kerr term χ R̂₁†R̂₁R̂₂†R̂₂ carries a
//! weight g(n̂) per mode, with R̂ = â·g(n̂).
//!
//! All energies are expressed in units of the coupling λ (so λ₁ = λ₂ = 1 in
//! the stock scenarios) and time is the dimensionless τ = λt.

use num_complex::Complex64 as C64;
use thiserror::Error;

/// Hard ceiling on the per-mode Fock truncation. 60 photons per mode keeps
/// every table and grid comfortably small while leaving room above the
/// |α|² = 10 scenarios.
pub const N_MAX_CAP: usize = 60;

/// Largest supported coherent intensity; the amplitude recurrence is
/// overflow-safe well past this, but truncation grids get unreasonable.
pub const MEAN_PHOTON_LIMIT: f64 = 1.0e4;

#[derive(Debug, Error)]
pub enum ModelError {
    /// The bare weight 1/√n is undefined on the vacuum. Composite weights
    /// (Kerr shifts) never hit this: they use the regularized n·g²(n) form.
    #[error("nonlinearity 1/sqrt(n) is undefined at n = 0")]
    InverseSqrtAtZero,
    #[error("tabulated nonlinearity has no entry for n = {n} (table length {len})")]
    TableOutOfRange { n: usize, len: usize },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("mean photon number {0} exceeds the supported limit 1e4")]
    MeanPhotonTooLarge(f64),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    /// Raised when detunings (or free phases) are requested but neither a
    /// detuning override nor numeric level/mode frequencies were supplied.
    #[error("detunings unavailable: no override and no atomic/mode frequencies set")]
    MissingFrequencies,
}

/// Intensity-dependent weight function of the photon number.
///
/// `SqrtN` is the usual intensity-dependent coupling f(n) = √n and
/// `InverseSqrtN` the "harmonious" deformation g(n) = 1/√n; `Tabulated`
/// admits arbitrary nonnegative weights indexed by photon number.
#[derive(Debug, Clone, PartialEq)]
pub enum NonlinearitySpec {
    Constant,
    SqrtN,
    InverseSqrtN,
    Tabulated(Vec<f64>),
}

impl NonlinearitySpec {
    /// Bare evaluation of the weight at photon number `n`.
    pub fn eval(&self, n: usize) -> Result<f64, ModelError> {
        let w = match self {
            NonlinearitySpec::Constant => 1.0,
            NonlinearitySpec::SqrtN => (n as f64).sqrt(),
            NonlinearitySpec::InverseSqrtN => {
                if n == 0 {
                    return Err(ModelError::InverseSqrtAtZero);
                }
                1.0 / (n as f64).sqrt()
            }
            NonlinearitySpec::Tabulated(table) => *table.get(n).ok_or(
                ModelError::TableOutOfRange { n, len: table.len() },
            )?,
        };
        if !w.is_finite() {
            return Err(ModelError::NonFinite("nonlinearity weight"));
        }
        Ok(w)
    }

    /// Regularized Kerr weight w(n) = n·g²(n), with w(0) = 0 for every spec:
    /// R̂∣0⟩ = 0, so the vacuum never contributes a Kerr shift even when the
    /// bare g(0) is singular.
    pub fn kerr_weight(&self, n: usize) -> Result<f64, ModelError> {
        if n == 0 {
            return Ok(0.0);
        }
        let g = self.eval(n)?;
        Ok(n as f64 * g * g)
    }

    fn check_table(&self) -> Result<(), ModelError> {
        if let NonlinearitySpec::Tabulated(table) = self {
            for (n, w) in table.iter().enumerate() {
                if !w.is_finite() || *w < 0.0 {
                    return Err(ModelError::InvalidParams(format!(
                        "tabulated weight at n = {n} must be finite and nonnegative, got {w}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Which cavity mode a per-mode quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldMode {
    Mode1,
    Mode2,
}

impl FieldMode {
    pub fn index(self) -> usize {
        match self {
            FieldMode::Mode1 => 0,
            FieldMode::Mode2 => 1,
        }
    }
}

/// Numeric atomic level energies and mode frequencies, needed only when the
/// free-evolution phases γⱼ are materialized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeFrequencies {
    /// Atomic level energies (ω₁, ω₂, ω₃).
    pub omega: [f64; 3],
    /// Cavity mode frequencies (Ω₁, Ω₂).
    pub mode_omega: [f64; 2],
}

/// Atom, field, and medium constants, in units of λ.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemParams {
    /// Atomic level energies (ω₁, ω₂, ω₃); optional because the stock
    /// scenarios fix the detunings directly instead.
    pub omega: Option<[f64; 3]>,
    /// Cavity mode frequencies (Ω₁, Ω₂); optional, see `omega`.
    pub mode_omega: Option<[f64; 2]>,
    /// Atom–field coupling constants (λ₁, λ₂).
    pub lambda: [f64; 2],
    /// Cross-Kerr susceptibility χ.
    pub chi: f64,
    /// Per-mode atom–field coupling weights f₁, f₂.
    pub f_spec: [NonlinearitySpec; 2],
    /// Per-mode Kerr deformation weights g₁, g₂.
    pub g_spec: [NonlinearitySpec; 2],
    /// When set, supersedes the frequency-derived detunings (Δ₂, Δ₃).
    pub delta_override: Option<(f64, f64)>,
}

impl SystemParams {
    /// Unit couplings, no Kerr medium, exact resonance.
    pub fn resonant() -> Self {
        SystemParams {
            omega: None,
            mode_omega: None,
            lambda: [1.0, 1.0],
            chi: 0.0,
            f_spec: [NonlinearitySpec::Constant, NonlinearitySpec::Constant],
            g_spec: [NonlinearitySpec::Constant, NonlinearitySpec::Constant],
            delta_override: Some((0.0, 0.0)),
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        for l in self.lambda {
            if !(l.is_finite() && l >= 0.0) {
                return Err(ModelError::InvalidParams(format!(
                    "couplings must be finite and nonnegative, got {l}"
                )));
            }
        }
        if !self.chi.is_finite() {
            return Err(ModelError::NonFinite("chi"));
        }
        if let Some(omega) = self.omega {
            if omega.iter().any(|w| !w.is_finite()) {
                return Err(ModelError::NonFinite("omega"));
            }
        }
        if let Some(mo) = self.mode_omega {
            if mo.iter().any(|w| !w.is_finite()) {
                return Err(ModelError::NonFinite("mode_omega"));
            }
        }
        if let Some((d2, d3)) = self.delta_override {
            if !d2.is_finite() || !d3.is_finite() {
                return Err(ModelError::NonFinite("delta_override"));
            }
        }
        for spec in self.f_spec.iter().chain(self.g_spec.iter()) {
            spec.check_table()?;
        }
        self.detunings()?;
        Ok(())
    }

    /// Detuning pair (Δ₂, Δ₃): the override when present, otherwise
    /// Δ₂ = ω₂ − ω₁ + Ω₁ and Δ₃ = ω₃ − ω₁ + Ω₂.
    pub fn detunings(&self) -> Result<(f64, f64), ModelError> {
        if let Some(d) = self.delta_override {
            return Ok(d);
        }
        match (self.omega, self.mode_omega) {
            (Some(w), Some(m)) => Ok((w[1] - w[0] + m[0], w[2] - w[0] + m[1])),
            _ => Err(ModelError::MissingFrequencies),
        }
    }

    /// Free-evolution frequencies, when numerically available.
    pub fn free_frequencies(&self) -> Option<FreeFrequencies> {
        match (self.omega, self.mode_omega) {
            (Some(omega), Some(mode_omega)) => Some(FreeFrequencies { omega, mode_omega }),
            _ => None,
        }
    }

    /// Deformed cross-Kerr shift V(n₁, n₂) = χ·w₁(n₁)·w₂(n₂) with
    /// wⱼ(n) = n·gⱼ²(n) regularized to 0 on the vacuum.
    pub fn deformed_kerr_shift(&self, n1: usize, n2: usize) -> Result<f64, ModelError> {
        let v = self.chi * self.g_spec[0].kerr_weight(n1)? * self.g_spec[1].kerr_weight(n2)?;
        if !v.is_finite() {
            return Err(ModelError::NonFinite("Kerr shift"));
        }
        Ok(v)
    }

    /// Block coupling strength κ = λ·√(n+1)·f(n+1) for the given mode; the
    /// argument n is the base occupation of the block, so f is always
    /// evaluated at n+1 ≥ 1.
    pub fn coupling_strength(&self, mode: FieldMode, n: usize) -> Result<f64, ModelError> {
        let i = mode.index();
        let k = self.lambda[i] * ((n + 1) as f64).sqrt() * self.f_spec[i].eval(n + 1)?;
        if !k.is_finite() {
            return Err(ModelError::NonFinite("coupling strength"));
        }
        Ok(k)
    }
}

/// Initial coherent state of one cavity mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentModeSpec {
    pub alpha: C64,
}

impl CoherentModeSpec {
    pub fn new(alpha: C64) -> Self {
        CoherentModeSpec { alpha }
    }

    pub fn real(alpha: f64) -> Self {
        CoherentModeSpec { alpha: C64::new(alpha, 0.0) }
    }

    /// Mean photon number |α|².
    pub fn mean_photon(&self) -> f64 {
        self.alpha.norm_sqr()
    }

    /// Fock amplitudes q₀..q_{n_max} of the coherent state,
    /// qₙ = e^{−|α|²/2} αⁿ/√(n!), computed by the stable recurrence
    /// q_{n+1} = qₙ·α/√(n+1).
    pub fn amplitudes(&self, n_max: usize) -> Result<Vec<C64>, ModelError> {
        let m = self.mean_photon();
        if !m.is_finite() {
            return Err(ModelError::NonFinite("alpha"));
        }
        if m > MEAN_PHOTON_LIMIT {
            return Err(ModelError::MeanPhotonTooLarge(m));
        }
        let mut q = Vec::with_capacity(n_max + 1);
        let mut qn = C64::new((-0.5 * m).exp(), 0.0);
        q.push(qn);
        for n in 0..n_max {
            qn *= self.alpha / ((n + 1) as f64).sqrt();
            q.push(qn);
        }
        Ok(q)
    }
}

/// Smallest N such that the Poisson tail mass above N is below `tail_tol`,
/// clamped up to ceil(mean)+1 whenever `mean > 0` so the truncation never
/// cuts into the bulk of the distribution.
pub fn choose_truncation(mean_photon: f64, tail_tol: f64) -> usize {
    assert!(mean_photon >= 0.0 && mean_photon.is_finite());
    assert!(tail_tol > 0.0 && tail_tol <= 1.0);
    if mean_photon == 0.0 {
        return 0;
    }
    let mut p = (-mean_photon).exp();
    let mut cdf = p;
    let mut n = 0usize;
    // The tail 1 − cdf is compared directly; cdf accumulates ~1e-16 of
    // rounding per term, negligible against any admissible tolerance.
    while 1.0 - cdf >= tail_tol && n < 10 * N_MAX_CAP {
        n += 1;
        p *= mean_photon / n as f64;
        cdf += p;
    }
    n.max(mean_photon.ceil() as usize + 1)
}

/// Per-mode Fock truncation for a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockGrid {
    /// Per-mode truncation: amplitudes with n > n_max are treated as zero.
    pub n_max: [usize; 2],
    /// Poisson tail mass each mode was allowed to discard.
    pub tail_tol: f64,
}

impl FockGrid {
    pub fn new(n_max1: usize, n_max2: usize, tail_tol: f64) -> Self {
        FockGrid { n_max: [n_max1, n_max2], tail_tol }
    }

    /// Truncation chosen from the initial coherent intensities, capped at
    /// [`N_MAX_CAP`] per mode.
    pub fn auto(modes: &[CoherentModeSpec; 2], tail_tol: f64) -> Self {
        let n1 = choose_truncation(modes[0].mean_photon(), tail_tol).min(N_MAX_CAP);
        let n2 = choose_truncation(modes[1].mean_photon(), tail_tol).min(N_MAX_CAP);
        FockGrid { n_max: [n1, n2], tail_tol }
    }

    pub fn block_count(&self) -> usize {
        (self.n_max[0] + 1) * (self.n_max[1] + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use lambda_cavity_oracles as oracle;

    fn params_with(g: NonlinearitySpec, chi: f64) -> SystemParams {
        SystemParams {
            chi,
            g_spec: [g.clone(), g],
            ..SystemParams::resonant()
        }
    }

    #[test]
    fn nonlinearity_eval_matches_definitions() {
        assert_eq!(NonlinearitySpec::Constant.eval(7).unwrap(), 1.0);
        assert_eq!(NonlinearitySpec::SqrtN.eval(4).unwrap(), 2.0);
        assert_eq!(NonlinearitySpec::InverseSqrtN.eval(4).unwrap(), 0.5);
        let tab = NonlinearitySpec::Tabulated(vec![0.0, 1.5, 0.25]);
        assert_eq!(tab.eval(2).unwrap(), 0.25);
        assert!(matches!(
            tab.eval(3),
            Err(ModelError::TableOutOfRange { n: 3, len: 3 })
        ));
        assert!(matches!(
            NonlinearitySpec::InverseSqrtN.eval(0),
            Err(ModelError::InverseSqrtAtZero)
        ));
    }

    #[test]
    fn kerr_shift_examples() {
        let p = params_with(NonlinearitySpec::Constant, 0.4);
        assert_abs_diff_eq!(p.deformed_kerr_shift(2, 3).unwrap(), 2.4, epsilon = 1e-15);

        // With g = 1/√n the deformed Kerr term collapses to the bare χ away
        // from the vacuum, and to 0 when either mode is empty.
        let p = params_with(NonlinearitySpec::InverseSqrtN, 0.4);
        assert_abs_diff_eq!(p.deformed_kerr_shift(2, 3).unwrap(), 0.4, epsilon = 1e-15);
        assert_eq!(p.deformed_kerr_shift(0, 5).unwrap(), 0.0);
        assert_eq!(p.deformed_kerr_shift(5, 0).unwrap(), 0.0);
    }

    #[test]
    fn kerr_weight_vanishes_on_vacuum_for_every_spec() {
        let specs = [
            NonlinearitySpec::Constant,
            NonlinearitySpec::SqrtN,
            NonlinearitySpec::InverseSqrtN,
            NonlinearitySpec::Tabulated(vec![3.0, 2.0, 1.0]),
        ];
        for spec in specs {
            assert_eq!(spec.kerr_weight(0).unwrap(), 0.0, "{spec:?}");
        }
    }

    #[test]
    fn coupling_strength_examples() {
        let mut p = SystemParams::resonant();
        assert_abs_diff_eq!(
            p.coupling_strength(FieldMode::Mode1, 3).unwrap(),
            2.0,
            epsilon = 1e-15
        );
        p.f_spec = [NonlinearitySpec::SqrtN, NonlinearitySpec::SqrtN];
        assert_abs_diff_eq!(
            p.coupling_strength(FieldMode::Mode1, 3).unwrap(),
            4.0,
            epsilon = 1e-15
        );
        p.lambda = [0.0, 0.0];
        assert_eq!(p.coupling_strength(FieldMode::Mode2, 9).unwrap(), 0.0);
    }

    #[test]
    fn detunings_follow_frequencies_or_override() {
        let mut p = SystemParams::resonant();
        p.delta_override = None;
        p.omega = Some([5.0, 3.0, 2.0]);
        p.mode_omega = Some([4.0, 6.0]);
        assert_eq!(p.detunings().unwrap(), (2.0, 3.0));

        p.delta_override = Some((7.0, 15.0));
        assert_eq!(p.detunings().unwrap(), (7.0, 15.0));

        let mut bare = SystemParams::resonant();
        bare.delta_override = None;
        assert!(matches!(bare.detunings(), Err(ModelError::MissingFrequencies)));
    }

    #[test]
    fn coherent_amplitudes_vacuum_and_poisson_weight() {
        let vac = CoherentModeSpec::real(0.0);
        let q = vac.amplitudes(5).unwrap();
        assert_eq!(q[0], C64::new(1.0, 0.0));
        assert!(q[1..].iter().all(|z| z.norm() == 0.0));

        // |q_10|² for |α|² = 10 equals the Poisson weight at k = 10;
        // frozen from an independent exact-factorial evaluation.
        let mode = CoherentModeSpec::real(10.0_f64.sqrt());
        let q = mode.amplitudes(12).unwrap();
        assert_abs_diff_eq!(q[10].norm_sqr(), 0.1251100357211333, epsilon = 1e-15);
        assert_abs_diff_eq!(
            q[10].norm_sqr(),
            oracle::poisson_pmf_direct(10.0, 10),
            epsilon = 1e-15
        );
    }

    #[test]
    fn coherent_partial_norm_converges_within_tail_tol() {
        let mode = CoherentModeSpec::real(10.0_f64.sqrt());
        let n_max = choose_truncation(10.0, 1e-10);
        let q = mode.amplitudes(n_max).unwrap();
        let norm: f64 = q.iter().map(|z| z.norm_sqr()).sum();
        assert!(norm <= 1.0 + 1e-12);
        assert!(1.0 - norm <= 1e-10, "discarded mass {}", 1.0 - norm);
    }

    #[test]
    fn coherent_amplitudes_reject_huge_intensity() {
        let mode = CoherentModeSpec::real(101.0);
        assert!(matches!(
            mode.amplitudes(10),
            Err(ModelError::MeanPhotonTooLarge(_))
        ));
    }

    #[test]
    fn truncation_examples() {
        assert_eq!(choose_truncation(0.0, 1e-10), 0);
        // Exact integer fixed by the Poisson partial-sum oracle.
        let n = choose_truncation(10.0, 1e-10);
        assert_eq!(n, 36);
        assert!(oracle::poisson_tail_above(10.0, n) < 1e-10);
        assert!(oracle::poisson_tail_above(10.0, n - 1) >= 1e-10);
        // Boundary tolerance exercises the ceil(mean)+1 clamp.
        assert_eq!(choose_truncation(10.0, 1.0), 11);
    }

    #[test]
    fn truncation_monotonicity() {
        let tols = [1e-4, 1e-6, 1e-8, 1e-10, 1e-12];
        for w in tols.windows(2) {
            assert!(choose_truncation(10.0, w[0]) <= choose_truncation(10.0, w[1]));
        }
        let means = [0.5, 1.0, 2.0, 5.0, 10.0, 20.0];
        for w in means.windows(2) {
            assert!(choose_truncation(w[0], 1e-10) <= choose_truncation(w[1], 1e-10));
        }
    }

    #[test]
    fn partial_norm_monotone_in_n_max() {
        let mode = CoherentModeSpec::real(2.0);
        let mut prev = 0.0;
        for n_max in 0..30 {
            let q = mode.amplitudes(n_max).unwrap();
            let norm: f64 = q.iter().map(|z| z.norm_sqr()).sum();
            assert!(norm >= prev);
            prev = norm;
        }
        assert!((1.0 - prev) < 1e-10);
    }

    #[test]
    fn fock_grid_auto_respects_cap_and_tail() {
        let modes = [CoherentModeSpec::real(10.0_f64.sqrt()); 2];
        let grid = FockGrid::auto(&modes, 1e-10);
        assert_eq!(grid.n_max, [36, 36]);
        assert_eq!(grid.block_count(), 37 * 37);

        let big = [CoherentModeSpec::real(70.0_f64.sqrt()); 2];
        let grid = FockGrid::auto(&big, 1e-12);
        assert!(grid.n_max[0] <= N_MAX_CAP && grid.n_max[1] <= N_MAX_CAP);
    }
}
