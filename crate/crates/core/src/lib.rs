//! Gabor frame theory on the finite model `C^L`.
//!
//! * [`lattice`]: time-frequency shifts on `Z_L x Z_L`, separable lattices
//!   and their adjoints.
//! * [`ops`]: windows and the coefficient, synthesis, frame and Gramian
//!   operators.
//! * [`algebra`]: twisted convolution, the shift-series representation,
//!   Janssen coefficients, algebra inversion, kernels and the index.
//! * [`diagnostics`]: frame/Riesz bounds, the fourteen-condition
//!   equivalence harness, canonical duals and modulation-norm proxies.
//! * [`gallery`]: window recipes and counterexample constructions.
//! * [`report`] and [`io`]: configuration, reports, sweeps and window files.

pub mod algebra;
pub mod diagnostics;
pub mod error;
pub mod gallery;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod ops;
pub mod report;

pub use error::{GaborError, Result};
pub use lattice::{
    adjoint_lattice, compose_shifts, tf_shift, FiniteModel, PhasePoint, SeparableLattice,
};
pub use linalg::Tolerance;
pub use ops::{LatticeCoefficients, LatticeSequence, TwistedSequence, Window};
