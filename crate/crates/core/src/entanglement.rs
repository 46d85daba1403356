//! Atom–field entanglement via the reduced atomic density matrix.
//!
//! The joint state stays pure, so the atomic and field entropies coincide
//! and the single number S = −Σ ξⱼ ln ξⱼ (ξⱼ the eigenvalues of ρ_A)
//! measures the degree of entanglement between the subsystems. The 3×3
//! eigenproblem is solved by the same trigonometric cubic used for the
//! block frequencies, and cross-checked in the test suites against an
//! interval-bisection eigensolver.

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::dynamics::{solve_cubic_trig, StateSnapshot};

/// Hermiticity defect tolerated on entry.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Eigenvalues may stray this far outside [0, 1] before the matrix is
/// rejected as unphysical.
pub const EIGENVALUE_SLACK: f64 = 1e-10;
/// Eigenvalues below this threshold contribute 0·ln 0 = 0 to the entropy.
pub const ENTROPY_FLOOR: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum EntanglementError {
    #[error("reduced density matrix violates its invariants: {0}")]
    NonHermitian(String),
}

/// Reduced density matrix of the atom, ρ_A = Tr_F ∣ψ⟩⟨ψ∣.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedAtomDm {
    pub rho: [[C64; 3]; 3],
}

impl ReducedAtomDm {
    pub fn trace(&self) -> f64 {
        self.rho[0][0].re + self.rho[1][1].re + self.rho[2][2].re
    }

    /// Largest deviation from ρ = ρ†.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut d = 0.0f64;
        for i in 0..3 {
            d = d.max(self.rho[i][i].im.abs());
            for j in (i + 1)..3 {
                d = d.max((self.rho[i][j] - self.rho[j][i].conj()).norm());
            }
        }
        d
    }
}

/// Builds ρ_A(t) from a state snapshot by the truncated double sums over
/// the Fock grid (q_n ≡ 0 beyond the truncation).
///
/// Amplitude indices follow the block layout: the entry stored at block
/// (n₁, n₂) holds A(n₁,n₂,t), B(n₁+1,n₂,t) and C(n₁,n₂+1,t), so e.g. the
/// coherence ρ₁₂ pairs A of block (n₁+1, n₂) with B of block (n₁, n₂).
pub fn reduced_atom_dm(snap: &StateSnapshot) -> ReducedAtomDm {
    let [m1, m2] = snap.n_max;
    let q1 = &snap.q1;
    let q2 = &snap.q2;
    let (d2, d3) = snap.detunings;
    let t = snap.t;

    let mut r11 = C64::new(0.0, 0.0);
    let mut r22 = C64::new(0.0, 0.0);
    let mut r33 = C64::new(0.0, 0.0);
    let mut r12 = C64::new(0.0, 0.0);
    let mut r13 = C64::new(0.0, 0.0);
    let mut r23 = C64::new(0.0, 0.0);

    for n1 in 0..=m1 {
        for n2 in 0..=m2 {
            let w = q1[n1].norm_sqr() * q2[n2].norm_sqr();
            let tr = snap.triple(n1, n2);
            r11 += w * tr.a.norm_sqr();
            r22 += w * tr.b.norm_sqr();
            r33 += w * tr.c.norm_sqr();
        }
    }
    for n1 in 0..m1 {
        for n2 in 0..=m2 {
            // A(n₁+1,n₂)·B*(n₁+1,n₂): blocks (n₁+1, n₂) and (n₁, n₂)
            let q = q1[n1 + 1] * q1[n1].conj() * q2[n2].norm_sqr();
            r12 += q * snap.triple(n1 + 1, n2).a * snap.triple(n1, n2).b.conj();
        }
    }
    for n1 in 0..=m1 {
        for n2 in 0..m2 {
            // A(n₁,n₂+1)·C*(n₁,n₂+1): blocks (n₁, n₂+1) and (n₁, n₂)
            let q = q1[n1].norm_sqr() * q2[n2 + 1] * q2[n2].conj();
            r13 += q * snap.triple(n1, n2 + 1).a * snap.triple(n1, n2).c.conj();
        }
    }
    for n1 in 0..m1 {
        for n2 in 0..m2 {
            // B(n₁+1,n₂+1)·C*(n₁+1,n₂+1): blocks (n₁, n₂+1) and (n₁+1, n₂)
            let q = q1[n1] * q1[n1 + 1].conj() * q2[n2 + 1] * q2[n2].conj();
            r23 += q * snap.triple(n1, n2 + 1).b * snap.triple(n1 + 1, n2).c.conj();
        }
    }
    r12 *= C64::from_polar(1.0, d2 * t);
    r13 *= C64::from_polar(1.0, d3 * t);
    r23 *= C64::from_polar(1.0, (d3 - d2) * t);

    ReducedAtomDm {
        rho: [
            [r11, r12, r13],
            [r12.conj(), r22, r23],
            [r13.conj(), r23.conj(), r33],
        ],
    }
}

/// Eigenvalues of ρ_A with the Cardano bookkeeping that produced them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenTriple {
    /// Eigenvalues clamped into [0, 1].
    pub xi: [f64; 3],
    /// Characteristic-polynomial coefficients (α₁, α₂, α₃); α₁ is the
    /// negated trace, hence −1 up to truncation loss.
    pub alpha: [f64; 3],
    /// Cardano angle β.
    pub beta: f64,
    /// Total distance the raw eigenvalues were clamped by; 0 when all were
    /// already inside [0, 1].
    pub clamp_excess: f64,
}

/// Eigenvalues of the reduced density matrix by the trigonometric cubic:
/// ξⱼ = −α₁/3 + (2/3)√(α₁²−3α₂)·cos[β + 2π(j−1)/3].
///
/// Nearly degenerate spectra (vanishing α₁²−3α₂) return the forced triple
/// eigenvalue −α₁/3. Entry invariants (hermiticity, unit trace, positivity
/// within slack) are enforced and violations reported as errors.
pub fn hermitian3_eigs_cardano(dm: &ReducedAtomDm) -> Result<EigenTriple, EntanglementError> {
    let defect = dm.hermiticity_defect();
    if defect.is_nan() || defect > HERMITICITY_TOL {
        return Err(EntanglementError::NonHermitian(format!(
            "hermiticity defect {defect:.3e}"
        )));
    }
    let trace = dm.trace();
    if trace.is_nan() || (trace - 1.0).abs() > 1e-8 {
        return Err(EntanglementError::NonHermitian(format!(
            "trace {trace} differs from 1 beyond 1e-8; for entropy traces the \
             Fock truncation must discard less than ~1e-9 of the state"
        )));
    }
    let r = &dm.rho;
    let a1 = -trace;
    let a2 = r[0][0].re * r[1][1].re + r[1][1].re * r[2][2].re + r[2][2].re * r[0][0].re
        - r[0][1].norm_sqr()
        - r[1][2].norm_sqr()
        - r[0][2].norm_sqr();
    let det = r[0][0].re * (r[1][1].re * r[2][2].re - r[1][2].norm_sqr())
        + 2.0 * (r[0][1] * r[1][2] * r[0][2].conj()).re
        - r[1][1].re * r[0][2].norm_sqr()
        - r[2][2].re * r[0][1].norm_sqr();
    let a3 = -det;

    let cubic = solve_cubic_trig([a1, a2, a3]).map_err(|e| {
        EntanglementError::NonHermitian(format!("eigenvalue cubic rejected: {e}"))
    })?;

    let mut clamp_excess = 0.0;
    let mut xi = [0.0; 3];
    for (j, &root) in cubic.mu.iter().enumerate() {
        if root.is_nan() || !(-EIGENVALUE_SLACK..=1.0 + EIGENVALUE_SLACK).contains(&root) {
            return Err(EntanglementError::NonHermitian(format!(
                "eigenvalue {root} outside [0, 1] beyond slack"
            )));
        }
        let clamped = root.clamp(0.0, 1.0);
        clamp_excess += (root - clamped).abs();
        xi[j] = clamped;
    }
    Ok(EigenTriple { xi, alpha: [a1, a2, a3], beta: cubic.theta, clamp_excess })
}

/// −Σ ξⱼ ln ξⱼ with 0·ln 0 = 0 (natural log; ranges over [0, ln 3]).
pub fn von_neumann_entropy(e: &EigenTriple) -> f64 {
    e.xi
        .iter()
        .filter(|&&xi| xi >= ENTROPY_FLOOR)
        .map(|&xi| -xi * xi.ln())
        .sum()
}

/// One point of the entanglement trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropySample {
    /// Scaled time τ = λt.
    pub tau: f64,
    /// Degree of entanglement: the shared atom/field von Neumann entropy.
    pub dem: f64,
}

/// Convenience: ρ_A → eigenvalues → entropy for one snapshot.
pub fn entropy_of_snapshot(snap: &StateSnapshot) -> Result<(EntropySample, EigenTriple), EntanglementError> {
    let dm = reduced_atom_dm(snap);
    let eigs = hermitian3_eigs_cardano(&dm)?;
    Ok((EntropySample { tau: snap.t, dem: von_neumann_entropy(&eigs) }, eigs))
}
