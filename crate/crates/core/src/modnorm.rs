//! Module norms `||f||_{X_n} = sup sqrt([[f^, f^]]_n)` and
//! `||p||_{Y_n} = ess sup sqrt([[p, p]]_n)`, and the checks tying levels
//! together. Both suprema are taken over the torus grid.

use serde::{Deserialize, Serialize};

use crate::bracket::{bracket_symbol, bracket_torus, TorusBracket};
use crate::error::Result;
use crate::lattice::{DilationMatrix, Embedding};
use crate::signal::{Signal, TorusFunction};
use crate::{sum, tol};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub x_norm: f64,
    pub l2_norm: f64,
    pub level: i32,
    #[serde(rename = "grid_M")]
    pub grid_m: usize,
    #[serde(rename = "trunc_R")]
    pub trunc_r: i64,
    pub tail_estimate: f64,
    /// Largest jump between neighbouring samples of the bracket; a large value
    /// hints that the bracket is discontinuous (a `Y` rather than `X` element).
    pub max_jump: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormChain {
    pub lower_ok: bool,
    pub upper_ok: bool,
    /// `m^{-1/2} ||p||_{X_n}`.
    pub lower: f64,
    /// `||p||_{X_{n-1}}`.
    pub middle: f64,
    /// `||p||_{X_n}`.
    pub upper: f64,
}

/// `[[f^, f^]]_n` on the `M^d` grid.
pub fn level_bracket(f: &Signal, dil: &DilationMatrix, n: i32, m: usize, trunc_r: i64) -> Result<TorusBracket> {
    bracket_torus(f, f, &Embedding::level(dil, n)?, trunc_r, m)
}

fn sup_sqrt(t: &TorusFunction) -> f64 {
    t.max_re().max(0.0).sqrt()
}

pub fn x_norm(f: &Signal, dil: &DilationMatrix, n: i32, m: usize, trunc_r: i64) -> Result<NormReport> {
    let b = level_bracket(f, dil, n, m, trunc_r)?;
    Ok(NormReport {
        x_norm: sup_sqrt(&b.values),
        l2_norm: f.l2_norm()?,
        level: n,
        grid_m: m,
        trunc_r: b.radius.max(trunc_r),
        tail_estimate: b.tail,
        max_jump: b.values.max_jump(),
    })
}

/// The essential supremum is approximated by the same grid maximum.
pub fn y_norm(p: &Signal, dil: &DilationMatrix, n: i32, m: usize, trunc_r: i64) -> Result<f64> {
    Ok(sup_sqrt(&level_bracket(p, dil, n, m, trunc_r)?.values))
}

/// `x_norm` at each grid size, for convergence studies.
pub fn norm_sweep(f: &Signal, dil: &DilationMatrix, n: i32, ms: &[usize], trunc_r: i64) -> Result<Vec<NormReport>> {
    ms.iter().map(|&m| x_norm(f, dil, n, m, trunc_r)).collect()
}

/// The `m` preimages `(D~^*)^{-1} zeta + beta` of `zeta` under the dual dilation.
fn fiber(dil: &DilationMatrix, zeta: &[f64]) -> Vec<Vec<f64>> {
    let inv = dil.real().transpose().try_inverse().expect("dilation is nonsingular");
    let d = zeta.len();
    let base: Vec<f64> = (0..d).map(|i| (0..d).map(|j| inv[(i, j)] * zeta[j]).sum()).collect();
    dil.dual_fiber_offsets()
        .into_iter()
        .map(|b| base.iter().zip(&b).map(|(x, y)| x + y).collect())
        .collect()
}

/// `max_zeta |[[p,p]]_{n-1}(zeta) - m^{-1} sum_{fiber} [[p,p]]_n|`.
pub fn refinement_residual(p: &Signal, dil: &DilationMatrix, n: i32, m: usize, trunc_r: i64) -> Result<f64> {
    let coarse = level_bracket(p, dil, n - 1, m, trunc_r)?.values;
    let fine = bracket_symbol(p, p, &Embedding::level(dil, n)?, trunc_r)?;
    let inv_m = 1.0 / dil.index_m() as f64;
    let devs = sum::map_indices(coarse.len(), |j| {
        let zeta = coarse.point(j);
        let vals: Vec<_> = fiber(dil, &zeta).iter().map(|w| fine.symbol_at(w)).collect();
        (coarse.values()[j] - sum::pairwise(&vals) * inv_m).norm()
    });
    Ok(devs.into_iter().fold(0.0, f64::max))
}

/// `m^{-1/2} ||p||_{X_n} <= ||p||_{X_{n-1}} <= ||p||_{X_n}`. The level-`n`
/// supremum is taken over the grid together with the fiber preimages of the
/// grid, which is the evaluation set on which both inequalities are exact.
pub fn norm_chain_check(p: &Signal, dil: &DilationMatrix, n: i32, m: usize, trunc_r: i64) -> Result<NormChain> {
    let coarse = level_bracket(p, dil, n - 1, m, trunc_r)?.values;
    let fine_grid = level_bracket(p, dil, n, m, trunc_r)?.values;
    let fine = bracket_symbol(p, p, &Embedding::level(dil, n)?, trunc_r)?;
    let pre = sum::map_indices(coarse.len(), |j| {
        fiber(dil, &coarse.point(j)).iter().map(|w| fine.symbol_at(w).re).fold(f64::NEG_INFINITY, f64::max)
    });
    let fine_sup = pre.into_iter().fold(fine_grid.max_re(), f64::max).max(0.0).sqrt();
    let middle = sup_sqrt(&coarse);
    let lower = fine_sup / (dil.index_m() as f64).sqrt();
    Ok(NormChain {
        lower_ok: lower <= middle + tol::EPS_CHAIN,
        upper_ok: middle <= fine_sup + tol::EPS_CHAIN,
        lower,
        middle,
        upper: fine_sup,
    })
}

/// `| ||D f||_{X_{n+1}} - ||f||_{X_n} |`.
pub fn dilation_isometry_check(f: &Signal, dil: &DilationMatrix, n: i32, m: usize, trunc_r: i64) -> Result<f64> {
    let df = f.unitary_dilate(dil, 1)?;
    let a = x_norm(&df, dil, n + 1, m, trunc_r)?.x_norm;
    let b = x_norm(f, dil, n, m, trunc_r)?.x_norm;
    Ok((a - b).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{AnalyticSignal, Domain};
    use crate::testsig;

    fn d2() -> DilationMatrix {
        DilationMatrix::scalar(1, 2).unwrap()
    }

    #[test]
    fn haar_scaling_function_norms() {
        let phi: Signal = testsig::unit_box(1).into();
        let r = x_norm(&phi, &d2(), 0, 64, 8).unwrap();
        assert!((r.x_norm - 1.0).abs() < 1e-14);
        assert!((r.l2_norm - 1.0).abs() < 1e-15);
        assert!(refinement_residual(&phi, &d2(), 1, 64, 8).unwrap() < 1e-12);
        let c = norm_chain_check(&phi, &d2(), 1, 64, 8).unwrap();
        assert!(c.lower_ok && c.upper_ok);
        assert!(c.lower <= c.middle && c.middle <= c.upper);
    }

    #[test]
    fn box_of_length_two_has_norm_two() {
        let f: Signal = AnalyticSignal::indicator(Domain::Time, &[0.0], &[2.0], 1.0).into();
        assert!((x_norm(&f, &d2(), 0, 64, 8).unwrap().x_norm - 2.0).abs() < 1e-14);
    }

    #[test]
    fn zero_signal() {
        let z: Signal = AnalyticSignal::zero(1, Domain::Frequency).into();
        assert_eq!(y_norm(&z, &d2(), 0, 32, 8).unwrap(), 0.0);
        assert_eq!(refinement_residual(&z, &d2(), 0, 32, 8).unwrap(), 0.0);
        let c = norm_chain_check(&z, &d2(), 0, 32, 8).unwrap();
        assert_eq!((c.lower, c.middle, c.upper), (0.0, 0.0, 0.0));
    }
}
