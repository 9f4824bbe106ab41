//! Density-matrix field simulator.
//!
//! A wavefunction `ψ(x)` is lifted to the two-point field `φ(x, y) = ψ(x) ψ†(y)`,
//! which is then evolved as an independent field. Physical observables are read
//! on the diagonal `x = y`, written `x_D = 0` in the coordinates
//! `x_S = (x + y)/2`, `x_D = y − x`.
//!
//! Modules:
//! - [`grid`], [`field2d`], [`delta`], [`derivative`], [`io`]: periodic grids,
//!   transforms, regularized deltas, derivatives and file formats.
//! - [`schrodinger`]: the non-relativistic scalar field.
//! - [`dirac`]: 4×4 matrix fields for the free Dirac equation.
//! - [`em`]: minimal coupling and the Maxwell wave stepper.
//! - [`scenarios`]: the named regression scenarios driven by the CLI.

// Negated comparisons reject NaN along with out-of-range values; index loops walk
// several parallel arrays at once.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod delta;
pub mod derivative;
pub mod dirac;
pub mod em;
pub mod error;
pub mod fft;
pub mod field2d;
pub mod grid;
pub mod io;
pub mod scenarios;
pub mod schrodinger;

pub use error::{Error, Result};
