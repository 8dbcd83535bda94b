//! Bracket-product calculus for wavelet multiresolution structures on `R^d`.
//!
//! The crate is organised around the objects that appear when translations by
//! a lattice and an integer dilation act on `L^2(R^d)`:
//!
//! * [`lattice`]: dilation matrices, embeddings of `Z^d`, coset digit sets.
//! * [`signal`]: exact piecewise-polynomial signals, sampled grids, spectra
//!   and torus functions, with the translation and dilation actions.
//! * [`bracket`]: time-domain and Fourier-domain bracket products and module
//!   actions, at a single embedding or at the `n`-th level of a dilation.
//! * [`modnorm`]: the module norms `X_n` / `Y_n` and the checks tying levels
//!   together.
//! * [`filters`]: scaling and wavelet filters, reconstruction identities and
//!   the cascade iteration, with Haar / Shannon / Daubechies-4 built-ins.
//! * [`verify`]: multiwavelet verification (orthonormality + completeness).
//!
//! All values are immutable after construction and every operation is pure.

pub mod bracket;
pub mod error;
pub mod filters;
pub mod io;
pub mod lattice;
pub mod modnorm;
pub mod poly;
pub mod quad;
pub mod signal;
pub mod sum;
pub mod testsig;
pub mod tol;
pub mod verify;

pub use bracket::FilterSeq;
pub use error::{Error, Result};
pub use lattice::{DilationMatrix, Embedding};
pub use num_complex::Complex64;
pub use signal::{AnalyticSignal, Domain, GridSignal, Signal, TorusFunction};
