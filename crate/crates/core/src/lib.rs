//! Exact dynamics of a Λ-type three-level atom coupled to a two-mode cavity
//! field with intensity-dependent coupling, a (deformed) cross-Kerr medium,
//! and detuning.
//!
//! The interaction preserves the three-dimensional Fock blocks
//! {∣1,n₁,n₂⟩, ∣2,n₁+1,n₂⟩, ∣3,n₁,n₂+1⟩}, so the joint state is solved in
//! closed form block by block: each block reduces to a real cubic whose roots
//! are the block eigenfrequencies. From the assembled state the library
//! computes
//!
//! * the von Neumann entropy of the reduced atomic density matrix (the
//!   degree of entanglement between atom and field), and
//! * position/momentum Shannon entropies of field mode 1 together with the
//!   normalized entropy-squeezing indicators.
//!
//! Everything is deterministic and seedless; energies are expressed in units
//! of the atom-field coupling λ and times as the scaled τ = λt.
//!
//! Module map:
//!
//! * [`model`] — physical parameters, nonlinearity functions, initial
//!   coherent field amplitudes, Fock truncation policy.
//! * [`dynamics`] — per-block cubic solutions, amplitude triples, snapshot
//!   assembly, and a Runge–Kutta oracle for cross-checking the closed form.
//! * [`entanglement`] — reduced atomic density matrix, its eigenvalues via
//!   the trigonometric cubic formula, von Neumann entropy.
//! * [`squeezing`] — quadrature distributions of mode 1, Shannon entropies,
//!   entropy-squeezing indicators.

// index-paired sums over shifted Fock grids read better as explicit loops
#![allow(clippy::needless_range_loop)]

pub mod dynamics;
pub mod entanglement;
pub mod model;
pub mod squeezing;

pub use dynamics::{
    assemble_state, cubic_coefficients, initial_weights, ode_oracle_block, solve_cubic_trig,
    AmplitudeTriple, BlockCouplings, BlockIndex, BlockSet, CubicSolution, DynamicsError,
    Evolution, StateSnapshot,
};
pub use entanglement::{
    hermitian3_eigs_cardano, reduced_atom_dm, von_neumann_entropy, EigenTriple,
    EntanglementError, EntropySample, ReducedAtomDm,
};
pub use model::{
    choose_truncation, CoherentModeSpec, FieldMode, FockGrid, FreeFrequencies, ModelError,
    NonlinearitySpec, SystemParams,
};
pub use squeezing::{
    momentum_distribution, oscillator_eigenfunction, position_distribution, shannon_entropy,
    squeezing_indicators, squeezing_sample, DistributionMode, DistributionSample, PsiTable,
    QuadratureGrid, SqueezingError, SqueezingSample,
};
