//! Numerical tolerances and defaults shared across the crate.

/// Margin used when deciding that every eigenvalue of a dilation matrix has
/// modulus strictly greater than one.
pub const EPS_EIG: f64 = 1e-9;

/// Smallest |det| accepted for an embedding matrix.
pub const EPS_SING: f64 = 1e-12;

/// Tolerance for the character check `exp(2 pi i <A gamma, beta>) = 1`.
pub const EPS_CHAR: f64 = 1e-10;

/// Default bound on |n| for level embeddings and dilations.
pub const N_MAX: i32 = 16;

/// Default number of periodization shells (`|k|_inf <= R`).
pub const TRUNC_R: usize = 8;

/// Default torus grid size per axis.
pub const GRID_M: usize = 256;

/// Largest last-shell contribution tolerated for signals that are not
/// compactly supported in frequency.
pub const TAIL_TOL: f64 = 1e-6;

/// Slack for the norm chain sandwich.
pub const EPS_CHAIN: f64 = 1e-8;

/// Slack for `||f||_2 <= ||f||_X`.
pub const EPS_NORM: f64 = 1e-8;

/// Allowed negativity of a sampled `[[p, p]]` before it is reported.
pub const EPS_POS: f64 = 1e-12;

/// Filter normalisation tolerance.
pub const EPS_FILTER_NORM: f64 = 1e-10;

/// Verification thresholds.
pub const TOL_ORTHO: f64 = 1e-5;
pub const TOL_RECON: f64 = 1e-3;

/// Outermost-level energy above which a completeness check is flagged.
pub const EPS_ENERGY: f64 = 1e-3;

/// Coefficients at or below this magnitude are dropped from filter sequences.
pub const EPS_TAP: f64 = 1e-15;
