//! Numerical toolkit for P-tensors.
//!
//! Computes the constants `alpha(T_A)` and `alpha(F_A)`, the spectral
//! constants `delta_H(A)` and `delta_Z(A)` built from real H- and
//! Z-eigenvalues of principal sub-tensors, classifies P/P0-tensors, solves
//! small tensor complementarity problems, and checks the inequality chains
//! that relate these quantities.

pub mod alpha;
pub mod batch;
pub mod bounds;
pub mod classify;
pub mod eigen;
pub mod error;
pub mod gen;
pub mod io;
pub mod spectral;
pub mod tcp;
pub mod tensor;

pub use error::{Error, Result};
pub use tensor::{Tensor, SubsetIndex};
