//! Orthonormal multiwavelet checks: level brackets against `delta delta 1`
//! and reconstruction from bracket coefficients over a finite level window.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bracket::{bracket_symbol, bracket_time, bracket_torus, module_action_time};
use crate::error::{Error, Result};
use crate::lattice::{DilationMatrix, Embedding};
use crate::signal::{AnalyticSignal, Domain, GridSignal, Signal, Spectrum, TorusFunction, TorusSymbol};
use crate::{sum, testsig, tol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

/// Deviation of `[[D^n psi^i, D^m psi^j]]_{max(m,n)}` from `delta_ij delta_mn 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairResidual {
    pub i: usize,
    pub j: usize,
    pub n: i32,
    pub m: i32,
    pub residual: f64,
    /// Torus point of the largest deviation.
    pub at: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ortho_residual: f64,
    pub pairs: Vec<PairResidual>,
    pub recon_residuals: Vec<f64>,
    /// Relative energy of each test signal not captured by the level window.
    pub tail_energies: Vec<f64>,
    pub ranges: (i32, i32),
    pub verdict: Verdict,
    pub diagnostic: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub n_range: (i32, i32),
    pub grid_m: usize,
    pub trunc_r: i64,
    pub tol_ortho: f64,
    pub tol_recon: f64,
    pub eps_energy: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            n_range: (-2, 2),
            grid_m: tol::GRID_M,
            trunc_r: tol::TRUNC_R as i64,
            tol_ortho: tol::TOL_ORTHO,
            tol_recon: tol::TOL_RECON,
            eps_energy: tol::EPS_ENERGY,
        }
    }
}

fn levels(range: (i32, i32)) -> Result<Vec<i32>> {
    if range.0 > range.1 {
        return Err(Error::InvalidInput(format!("empty level range {}..={}", range.0, range.1)));
    }
    if range.0.abs().max(range.1.abs()) > tol::N_MAX {
        return Err(Error::LevelOverflow { level: range.0.abs().max(range.1.abs()), max: tol::N_MAX });
    }
    Ok((range.0..=range.1).collect())
}

fn frequency_analytic(psi: &[Signal]) -> bool {
    psi.iter().any(|p| matches!(p, Signal::Analytic(_)) && p.domain() == Domain::Frequency)
}

const JUMP_THRESHOLD: f64 = 0.25;

fn report(pairs: Vec<PairResidual>, recon: Vec<f64>, tails: Vec<f64>, range: (i32, i32)) -> VerifyReport {
    let ortho = pairs.iter().map(|p| p.residual).fold(0.0, f64::max);
    VerifyReport {
        ortho_residual: ortho,
        pairs,
        recon_residuals: recon,
        tail_energies: tails,
        ranges: range,
        verdict: Verdict::Inconclusive,
        diagnostic: None,
    }
}

/// Grid-max deviation for every `(i, j, n, m)` in the window. Pairs are
/// compared at the finer of the two levels so every translate is covered.
/// For characteristic-function spectra, samples next to a jump of the
/// bracket are left out.
pub fn verify_orthonormality(psi: &[Signal], dil: &DilationMatrix, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let ns = levels(cfg.n_range)?;
    let dilated: Vec<Vec<Signal>> =
        psi.iter().map(|p| ns.iter().map(|&n| p.unitary_dilate(dil, n)).collect()).collect::<Result<_>>()?;
    let skip_jumps = frequency_analytic(psi);
    let count = ns.len();
    let jobs: Vec<(usize, usize, usize, usize)> = (0..psi.len())
        .flat_map(|i| (0..psi.len()).map(move |j| (i, j)))
        .flat_map(|(i, j)| (0..count).flat_map(move |a| (0..count).map(move |b| (i, j, a, b))))
        .collect();
    let results = sum::map_indices(jobs.len(), |t| {
        let (i, j, a, b) = jobs[t];
        let (n, m) = (ns[a], ns[b]);
        let e = Embedding::level(dil, n.max(m))?;
        let values = bracket_torus(&dilated[i][a], &dilated[j][b], &e, cfg.trunc_r, cfg.grid_m)?.values;
        let target = if i == j && n == m { 1.0 } else { 0.0 };
        let mask = if skip_jumps { values.jump_mask(JUMP_THRESHOLD) } else { vec![false; values.len()] };
        let (mut residual, mut at) = (0.0f64, 0usize);
        for (k, v) in values.values().iter().enumerate() {
            let dev = (v - target).norm();
            if !mask[k] && dev > residual {
                residual = dev;
                at = k;
            }
        }
        Ok(PairResidual { i, j, n, m, residual, at: values.point(at)[0] })
    });
    let pairs = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(report(pairs, Vec::new(), Vec::new(), cfg.n_range))
}

fn all_time_analytic(signals: &[Signal]) -> bool {
    signals.iter().all(|s| matches!(s, Signal::Analytic(_)) && s.domain() == Domain::Time)
}

/// `|| f - sum_{i, n} D^n psi^i o_n [D^n psi^i, f]_n ||_2` per test signal,
/// with the uncaptured energy `max(0, ||f||^2 - sum |coefficients|^2)`
/// relative to `||f||^2` as the tail estimate.
pub fn verify_completeness(
    psi: &[Signal],
    dil: &DilationMatrix,
    tests: &[Signal],
    cfg: &VerifyConfig,
) -> Result<VerifyReport> {
    let ns = levels(cfg.n_range)?;
    let mut recon = Vec::with_capacity(tests.len());
    let mut tails = Vec::with_capacity(tests.len());
    for f in tests {
        let norm2 = f.l2_norm()?.powi(2);
        let (residual, captured) = if all_time_analytic(psi) && all_time_analytic(std::slice::from_ref(f)) {
            completeness_time(psi, dil, f, &ns)?
        } else {
            completeness_fourier(psi, dil, f, &ns, cfg)?
        };
        let tail = if norm2 > 0.0 { (norm2 - captured).max(0.0) / norm2 } else { 0.0 };
        if tail > cfg.eps_energy {
            return Err(Error::RangeTooSmall { energy: tail, tol: cfg.eps_energy });
        }
        recon.push(residual);
        tails.push(tail);
    }
    Ok(report(Vec::new(), recon, tails, cfg.n_range))
}

fn completeness_time(psi: &[Signal], dil: &DilationMatrix, f: &Signal, ns: &[i32]) -> Result<(f64, f64)> {
    let mut acc = AnalyticSignal::zero(f.dim(), Domain::Time);
    let mut captured = 0.0;
    for p in psi {
        for &n in ns {
            let e = Embedding::level(dil, n)?;
            let pn = p.unitary_dilate(dil, n)?;
            let c = bracket_time(&pn, f, &e, None)?;
            if c.is_empty() {
                continue;
            }
            captured += c.l2_norm().powi(2);
            let Signal::Analytic(term) = module_action_time(&pn, &c, &e)? else { unreachable!() };
            acc = acc.add(&term)?.canonicalize();
        }
    }
    Ok((f.sub(&Signal::Analytic(acc))?.l2_norm()?, captured))
}

const RECON_SAMPLES: usize = 4096;

fn completeness_fourier(
    psi: &[Signal],
    dil: &DilationMatrix,
    f: &Signal,
    ns: &[i32],
    cfg: &VerifyConfig,
) -> Result<(f64, f64)> {
    let d = f.dim();
    let (lo, hi) = f
        .spectral_support()
        .ok_or_else(|| Error::Unsupported("frequency-side completeness needs a band-limited test signal".into()))?;
    let mut terms: Vec<(Signal, Arc<dyn TorusSymbol>, Embedding)> = Vec::new();
    let mut captured = 0.0;
    for p in psi {
        for &n in ns {
            let e = Embedding::level(dil, n)?;
            let pn = p.unitary_dilate(dil, n)?;
            let b = bracket_symbol(&pn, f, &e, cfg.trunc_r)?;
            let grid = TorusFunction::from_fn(vec![cfg.grid_m; d], |z| b.symbol_at(z))?;
            let energy: Vec<f64> = grid.values().iter().map(|v| v.norm_sqr()).collect();
            captured += sum::pairwise_real(&energy) / grid.len() as f64;
            terms.push((pn, b, e));
        }
    }
    let samples = if d == 1 { RECON_SAMPLES } else { 64 };
    let half: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| a.abs().max(b.abs()).max(f64::MIN_POSITIVE) * 1.25).collect();
    let grid = GridSignal::zeros(Domain::Frequency, half, vec![samples; d])?;
    let sq = sum::map_indices(grid.values().len(), |j| {
        let xi = grid.point(j);
        let parts: Vec<Complex64> =
            terms.iter().map(|(pn, b, e)| pn.spectrum_at(&xi) * b.symbol_at(&e.dual(&xi))).collect();
        (f.spectrum_at(&xi) - sum::pairwise(&parts)).norm_sqr()
    });
    Ok(((sum::pairwise_real(&sq) * grid.cell_volume()).sqrt(), captured))
}

/// Pass iff the orthonormality residual and every reconstruction residual are
/// below tolerance; a failing reconstruction whose tail estimate exceeds the
/// energy tolerance is inconclusive.
pub fn classify(report: &VerifyReport, cfg: &VerifyConfig) -> Verdict {
    if report.pairs.is_empty() {
        return Verdict::Fail;
    }
    if !(report.ortho_residual < cfg.tol_ortho) {
        return Verdict::Fail;
    }
    let mut verdict = Verdict::Pass;
    for (r, t) in report.recon_residuals.iter().zip(report.tail_energies.iter().chain(std::iter::repeat(&0.0))) {
        if !(*r < cfg.tol_recon) {
            if *t > cfg.eps_energy {
                verdict = Verdict::Inconclusive;
            } else {
                return Verdict::Fail;
            }
        }
    }
    verdict
}

/// Both checks plus the verdict. A level window too small for a test signal
/// makes the verdict inconclusive unless orthonormality already fails.
pub fn verify(psi: &[Signal], dil: &DilationMatrix, tests: &[Signal], cfg: &VerifyConfig) -> Result<VerifyReport> {
    if psi.is_empty() {
        let mut r = report(Vec::new(), Vec::new(), Vec::new(), cfg.n_range);
        r.verdict = Verdict::Fail;
        r.diagnostic = Some("no wavelets given".into());
        return Ok(r);
    }
    let mut out = verify_orthonormality(psi, dil, cfg)?;
    match verify_completeness(psi, dil, tests, cfg) {
        Ok(c) => {
            out.recon_residuals = c.recon_residuals;
            out.tail_energies = c.tail_energies;
            out.verdict = classify(&out, cfg);
        }
        Err(Error::RangeTooSmall { energy, tol }) => {
            let range = format!("uncaptured energy {energy:.3e} exceeds {tol:.1e}; widen the level range");
            if classify(&out, cfg) == Verdict::Fail {
                out.verdict = Verdict::Fail;
                out.diagnostic = Some(format!("{}; {range}", diagnose(&out, cfg)));
            } else {
                out.verdict = Verdict::Inconclusive;
                out.diagnostic = Some(range);
            }
        }
        Err(e) => return Err(e),
    }
    if out.diagnostic.is_none() && out.verdict != Verdict::Pass {
        out.diagnostic = Some(diagnose(&out, cfg));
    }
    if out.verdict != Verdict::Pass && psi.iter().any(|p| matches!(p, Signal::Grid(_))) {
        let note = "grid-sampled wavelets carry quadrature and interpolation error of order spacing^2";
        out.diagnostic = Some(format!("{}; {note}", out.diagnostic.take().unwrap_or_default()));
    }
    Ok(out)
}

fn diagnose(r: &VerifyReport, cfg: &VerifyConfig) -> String {
    if let Some(w) = r.pairs.iter().max_by(|a, b| a.residual.total_cmp(&b.residual)) {
        if !(w.residual < cfg.tol_ortho) {
            return format!(
                "bracket of psi^{} at level {} with psi^{} at level {} deviates by {:.3e} at zeta = {:.4}",
                w.i, w.n, w.j, w.m, w.residual, w.at
            );
        }
    }
    match r.recon_residuals.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)) {
        Some((k, v)) => format!("test signal {k} reconstructs with residual {v:.3e}"),
        None => "no test signals".into(),
    }
}

/// Test signals matched to a built-in: dyadic step functions for Haar and
/// octave-band bumps for Shannon and other frequency-side wavelets.
pub fn default_tests(name: &str, d: usize) -> Vec<Signal> {
    match name {
        "haar" => {
            let f = testsig::haar_test_signal();
            let two = DilationMatrix::scalar(1, 2).expect("expanding");
            let fine = f.dilate(&two, 2).expect("level in range").translate(&[0.75]);
            let one = |g: &AnalyticSignal| AnalyticSignal::tensor(&vec![g.clone(); d]).expect("tensor");
            vec![Signal::Analytic(one(&f)), Signal::Analytic(one(&fine))]
        }
        _ => vec![testsig::octave_bump_spectrum()],
    }
}

/// Level window used by default for a built-in.
pub fn default_range(name: &str) -> (i32, i32) {
    match name {
        "haar" => (-6, 6),
        "shannon" => (0, 3),
        "db4" => (-1, 1),
        _ => (-2, 2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filters::{builtin, perturbed_haar_wavelet};

    fn small() -> VerifyConfig {
        VerifyConfig { n_range: (-1, 1), grid_m: 64, ..VerifyConfig::default() }
    }

    #[test]
    fn haar_passes() {
        let b = builtin("haar", 1).unwrap();
        let r = verify(&b.psi, &b.bank.dilation, &default_tests("haar", 1), &small()).unwrap();
        assert!(r.ortho_residual < 1e-12, "{r:?}");
        assert!(r.recon_residuals.iter().all(|v| *v < 1e-12));
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn scaling_function_is_not_a_wavelet() {
        let b = builtin("haar", 1).unwrap();
        let r = verify_orthonormality(std::slice::from_ref(&b.phi), &b.bank.dilation, &small()).unwrap();
        assert!(r.ortho_residual > 0.1);
        assert_eq!(classify(&r, &small()), Verdict::Fail);
    }

    #[test]
    fn perturbed_haar_fails() {
        let b = builtin("haar", 1).unwrap();
        let psi = vec![perturbed_haar_wavelet(1.01).unwrap()];
        let r = verify_orthonormality(&psi, &b.bank.dilation, &small()).unwrap();
        // ||g'||^2 - 1 = (1.01^2 - 1) / 2
        assert!((r.ortho_residual - 0.01005).abs() < 1e-12, "{}", r.ortho_residual);
    }

    #[test]
    fn zero_signal_reconstructs_exactly() {
        let b = builtin("haar", 1).unwrap();
        let zero = Signal::Analytic(AnalyticSignal::zero(1, Domain::Time));
        let r = verify_completeness(&b.psi, &b.bank.dilation, &[zero], &small()).unwrap();
        assert_eq!(r.recon_residuals, vec![0.0]);
    }

    #[test]
    fn empty_list_fails() {
        let d = DilationMatrix::scalar(1, 2).unwrap();
        assert_eq!(verify(&[], &d, &[], &small()).unwrap().verdict, Verdict::Fail);
    }
}
