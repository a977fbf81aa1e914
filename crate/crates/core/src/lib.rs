//! Binding energies and equilibrium geometry of one-electron homonuclear
//! diatomic ions (H₂⁺ and its nuclear-charge-Z generalizations) in a strong
//! magnetic field parallel to the molecular axis.
//!
//! The electron is projected onto the lowest Landau level, which leaves a
//! one-dimensional Hamiltonian along the field. After rescaling lengths by
//! `L(B) = 2 W(√(B/B₀)/2)` the projected potential approaches a pair of unit
//! delta wells; the double-delta model is solved exactly and the remainder is
//! treated to second order in Rayleigh–Schrödinger perturbation theory.
//!
//! Module map:
//!
//! - [`special_math`]: Lambert W (principal branch), `erfc`, `erfcx`.
//! - [`quadrature`]: adaptive Gauss–Kronrod 7/15 in one and two dimensions.
//! - [`scaling`]: physical inputs and the derived dimensionless model.
//! - [`delta_model`]: ground state, free kernel and reduced resolvent of the
//!   double-delta Hamiltonian on the even half-line.
//! - [`effective_potential`]: the Landau-projected Coulomb potential.
//! - [`perturbation`]: first- and second-order energy corrections.
//! - [`energy_surface`]: total energy, equilibrium search, stability.
//! - [`oracle_fd`]: independent finite-difference eigensolver used for
//!   validation.
//! - [`reference`]: published comparison values used by tests and the CLI.

pub mod delta_model;
pub mod effective_potential;
pub mod energy_surface;
mod error;
pub mod oracle_fd;
pub mod perturbation;
pub mod quadrature;
pub mod reference;
pub mod scaling;
pub mod special_math;

pub use error::{Error, Result};
