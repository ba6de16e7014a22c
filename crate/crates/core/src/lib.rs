//! Density-matrix simulation of heat exchange under a quantum switch of two
//! thermalization channels, the anomalous-flow thresholds, the
//! measurement-powered Otto cycle built on it, the controlled-SWAP circuit
//! equivalence for constant channels, and the Jones-calculus layer of the
//! photonic realization.

// validations use `!(x > 0.0)` so NaN inputs fail them
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// indexed loops over matrix entries read better than iterator chains here
#![allow(clippy::needless_range_loop)]

pub mod channels;
pub mod error;
pub mod ico;
pub mod otto;
pub mod photonic;
pub mod qmat;
pub mod sampling;
pub mod thermo;
pub mod unfolded;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use qmat::{ComplexMatrix, DensityMatrix};
