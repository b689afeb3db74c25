//! Numerical laboratory for the joint scaling structure of prime residue
//! classes and zeta-zero potentials: fractal and regularity estimators,
//! the duality measure K = 1/d_P + 1/zeta_R with finite-size scaling fits,
//! quadratic RG flows with fixed-point analysis, a Gamma_0(N) geodesic
//! survey, and seeded bootstrap/jackknife error bars.
//!
//! Everything is deterministic given the seed: random draws follow the
//! (seed, trial, draw) stream discipline of [`resample::stream_rng`], and
//! the parallel code paths (rayon, behind the `parallel` feature) only use
//! order-preserving maps.

pub mod arith;
pub mod duality;
pub mod error;
pub mod exec;
pub mod field;
pub mod fractal;
pub mod modular;
pub mod numeric;
pub mod points;
pub mod regularity;
pub mod resample;
pub mod rg;
pub mod scaling;
pub mod synth;
pub mod zeros;

pub use error::{Error, Result};
pub use field::{Boundary, SampledField};
pub use points::{BitSequence, PointSet, ResidueSpec};
pub use zeros::ZeroTable;
