//! Exact equivariant I-function engine for toric bundles.
//!
//! This crate builds, from smooth GIT data, a finite model of a base
//! cohomology ring and a seed series, the restrictions of the hatted
//! I-function of the associated toric bundle to its torus-fixed loci, and
//! machine-verifies the pole-location condition (C1) and the principal-part
//! recursion (C2) together with the supporting cohomological and
//! quantum-Riemann-Roch identities — all in exact rational arithmetic at a
//! Novikov-degree cutoff.
//!
//! Module map:
//! - [`toric`]: GIT data validation, anti-cones, fixed points, adjacency,
//!   extended effective cone enumeration
//! - [`base`], [`bernoulli`], [`qrr`]: base-ring models, Chern/Segre/
//!   character calculus, Bernoulli numbers, the quantum Riemann-Roch series
//!   and the telescoping identity behind it
//! - [`locus`]: fixed-locus rings, restriction/pullback/pushforward maps,
//!   the edge comparison identity
//! - [`series`]: certified parameter specializations, rational functions in
//!   z over a fixed-locus ring, partial fractions, principal parts,
//!   nilpotent-aware substitution, Novikov-graded series
//! - [`seed`], [`ihatbuild`]: seed series and the two independent
//!   constructions (direct restriction and shift-operator route) of the
//!   restricted hatted I-function
//! - [`verifier`]: the C1/C2 checks, the coefficient `C_{a,b}(k)`, route
//!   consistency, the split cross-check and negative controls
//! - [`scenario`], [`report`]: batch configuration, deterministic reports

pub mod base;
pub mod bernoulli;
pub mod coeff;
pub mod equivariant;
pub mod error;
pub mod intlin;
pub mod locus;
pub mod lp;
pub mod qrr;
pub mod rational;
pub mod toric;

pub use error::{Error, Result};
pub use rational::Q;
