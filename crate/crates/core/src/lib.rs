//! Toolkit for vector-valued (polysymplectic) geometric quantization on
//! small, finitely presented models.
//!
//! The crate is organized around exact rational arithmetic:
//!
//! * [`vsympl`] — linear algebra for `V`-valued symplectic forms: nondegeneracy
//!   certificates, orthogonals and Lagrangians, Hamiltonian solves and brackets,
//!   compatible complex structures, definiteness, the symbol map, and the
//!   canonical and Lie-algebra model constructions.
//! * [`reps`] — commuting skew-Hermitian families: weight decomposition,
//!   faithfulness and rank checks, tensor products over the coefficient space,
//!   curvature components, and an operator-algebra verifier on polynomial
//!   sections of the exact model.
//! * [`lattice`] — period groups and prequantum lattices in Hermite normal
//!   form: spans, containment, principality, quantizability, and the
//!   basis-to-weights classification.
//! * [`models`] — finitely presented product models: adapted volume,
//!   Riemann-Roch index counts, dimension growth, monodromy weight
//!   permutations, and product constructions.
//! * [`toric`] — brute-force section and invariant counting for circle actions
//!   on products of projective lines, including the quantization-vs-reduction
//!   experiment.
//! * [`modelfile`], [`commands`], [`report`] — JSON model files, command
//!   dispatch, and deterministic run reports backing the `polyquant` CLI.

pub mod commands;
pub mod lattice;
pub mod linalg;
pub mod modelfile;
pub mod models;
pub mod rational;
pub mod report;
pub mod reps;
pub mod toric;
pub mod vsympl;

pub use rational::{CRat, Rat};
