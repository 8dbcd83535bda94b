//! Scaling and wavelet filters `h = [phi, D^{-1} phi]_0`,
//! `g^i = [phi, D^{-1} psi^i]_0`, the scaling relations, the cascade
//! iteration, and the Haar / Shannon / Daubechies-4 built-ins.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::bracket::{bracket_time, bracket_torus, module_action_time, FilterSeq};
use crate::error::{Error, Result};
use crate::lattice::{DilationMatrix, Embedding};
use crate::poly::Poly;
use crate::signal::{dilate, AnalyticSignal, Domain, GridSignal, Piece, Signal, Spectrum, TorusFunction};
use crate::{sum, tol};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FilterBank {
    pub dilation: DilationMatrix,
    pub h: FilterSeq,
    pub g: Vec<FilterSeq>,
}

impl FilterBank {
    pub fn new(dilation: DilationMatrix, h: FilterSeq, g: Vec<FilterSeq>) -> Result<Self> {
        let expected = dilation.index_m() as usize - 1;
        if g.len() != expected {
            return Err(Error::WrongWaveletCount { expected, got: g.len() });
        }
        Ok(Self { dilation, h, g })
    }

    /// `||h||_2 = ||g^i||_2 = 1` within the filter tolerance.
    pub fn check_norms(&self) -> Result<()> {
        for f in std::iter::once(&self.h).chain(&self.g) {
            let norm = f.l2_norm();
            if (norm - 1.0).abs() > tol::EPS_FILTER_NORM {
                return Err(Error::NotNormalized { norm });
            }
        }
        Ok(())
    }
}

fn check_count(psi: &[Signal], dil: &DilationMatrix) -> Result<()> {
    let expected = dil.index_m() as usize - 1;
    if psi.len() != expected {
        return Err(Error::WrongWaveletCount { expected, got: psi.len() });
    }
    Ok(())
}

/// Time-domain extraction by level-0 brackets against `D^{-1}`-dilated targets.
pub fn extract_filters(phi: &Signal, psi: &[Signal], dil: &DilationMatrix, window: Option<i64>) -> Result<FilterBank> {
    check_count(psi, dil)?;
    if std::iter::once(phi).chain(psi).any(|s| s.domain() == Domain::Frequency) {
        return Err(Error::Unsupported(
            "frequency-domain inputs have no time-domain extraction; use the Fourier-side extraction".into(),
        ));
    }
    let e = Embedding::identity(dil.dim());
    let coarse = |s: &Signal| dilate(s, dil, -1);
    let h = bracket_time(phi, &coarse(phi)?, &e, window)?;
    let g = psi
        .iter()
        .map(|p| bracket_time(phi, &coarse(p)?, &e, window))
        .collect::<Result<Vec<_>>>()?;
    FilterBank::new(dil.clone(), h, g)
}

/// `h^ = [[phi^, D^^{-1} phi^]]_0` and `g^i = [[phi^, D^^{-1} psi^i]]_0` on the
/// `M^d` grid.
pub fn extract_filters_fourier(
    phi: &Signal,
    psi: &[Signal],
    dil: &DilationMatrix,
    m: usize,
    trunc_r: i64,
) -> Result<(TorusFunction, Vec<TorusFunction>)> {
    check_count(psi, dil)?;
    let e = Embedding::identity(dil.dim());
    let h = bracket_torus(phi, &phi.unitary_dilate(dil, -1)?, &e, trunc_r, m)?.values;
    let g = psi
        .iter()
        .map(|p| Ok(bracket_torus(phi, &p.unitary_dilate(dil, -1)?, &e, trunc_r, m)?.values))
        .collect::<Result<Vec<_>>>()?;
    Ok((h, g))
}

/// Taps whose Fourier sum interpolates the symbol at every grid point:
/// `a(gamma) = M^{-d} sum_j b(zeta_j) e^{2 pi i <gamma, zeta_j>}` for
/// `gamma in [-M/2, M/2)^d`.
pub fn taps_from_symbol(b: &TorusFunction) -> Result<FilterSeq> {
    let m = b.grid().to_vec();
    if m.iter().any(|k| k % 2 != 0) {
        return Err(Error::InvalidInput("torus grid sizes must be even".into()));
    }
    let d = m.len();
    let mut values = b.values().to_vec();
    let mut planner = FftPlanner::<f64>::new();
    let mut stride = 1usize;
    for axis in (0..d).rev() {
        let n = m[axis];
        let fft = planner.plan_fft_inverse(n);
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        let lines = values.len() / n;
        for line in 0..lines {
            let outer = line / stride;
            let inner = line % stride;
            let base = outer * stride * n + inner;
            for (j, v) in buf.iter_mut().enumerate() {
                *v = values[base + j * stride] * if j % 2 == 0 { 1.0 } else { -1.0 };
            }
            fft.process(&mut buf);
            for (k, v) in buf.iter().enumerate() {
                let gamma = k as i64 - (n / 2) as i64;
                let sign = if gamma.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                values[base + k * stride] = v * (sign / n as f64);
            }
        }
        stride *= n;
    }
    let taps = values
        .into_iter()
        .enumerate()
        .map(|(flat, c)| {
            let idx = b.index(flat);
            (idx.iter().zip(&m).map(|(i, n)| *i as i64 - (*n / 2) as i64).collect(), c)
        })
        .collect();
    Ok(FilterSeq::new(d, taps)?.prune(tol::EPS_TAP))
}

/// `max(||D^{n-1} phi - D^n phi o_n h||_2, ||D^{n-1} psi^i - D^n phi o_n g^i||_2)`.
pub fn reconstruction_residual(phi: &Signal, psi: &[Signal], bank: &FilterBank, n: i32) -> Result<f64> {
    let dil = &bank.dilation;
    check_count(psi, dil)?;
    if phi.domain() == Domain::Frequency {
        return reconstruction_residual_fourier(phi, psi, bank, n);
    }
    let e = Embedding::level(dil, n)?;
    let fine = phi.unitary_dilate(dil, n)?;
    let mut worst = 0.0f64;
    let targets = std::iter::once((phi, &bank.h)).chain(psi.iter().zip(&bank.g));
    for (target, filter) in targets {
        let lhs = target.unitary_dilate(dil, n - 1)?;
        let r = match (&lhs, &fine) {
            (Signal::Grid(a), Signal::Grid(b)) => grid_residual(a, b, filter, &e, phi_spacing(phi))?,
            _ => lhs.sub(&module_action_time(&fine, filter, &e)?)?.l2_norm()?,
        };
        worst = worst.max(r);
    }
    Ok(worst)
}

fn phi_spacing(phi: &Signal) -> Vec<f64> {
    match phi {
        Signal::Grid(g) => (0..g.dim()).map(|k| g.spacing(k)).collect(),
        Signal::Analytic(_) => unreachable!("grid residuals come from grid signals"),
    }
}

/// Pointwise `lhs(x) - sum_gamma a(gamma) fine(x - A gamma)` on a grid with
/// the original spacing wide enough for both sides.
fn grid_residual(lhs: &GridSignal, fine: &GridSignal, a: &FilterSeq, e: &Embedding, spacing: Vec<f64>) -> Result<f64> {
    let d = lhs.dim();
    let shifts: Vec<(Vec<f64>, Complex64)> = a.taps().iter().map(|(k, c)| (e.apply(k), *c)).collect();
    let (llo, lhi) = lhs.bounds();
    let (flo, fhi) = fine.bounds();
    let mut half = vec![0.0f64; d];
    let mut count = vec![0usize; d];
    for k in 0..d {
        let mut reach = llo[k].abs().max(lhi[k].abs());
        for (s, _) in &shifts {
            reach = reach.max((flo[k] + s[k]).abs()).max((fhi[k] + s[k]).abs());
        }
        let n = ((2.0 * reach / spacing[k]).ceil() as usize).next_power_of_two().max(2);
        count[k] = n;
        half[k] = n as f64 * spacing[k] / 2.0;
    }
    let grid = GridSignal::zeros(Domain::Time, half, count)?;
    let sq = sum::map_indices(grid.values().len(), |j| {
        let x = grid.point(j);
        let terms: Vec<Complex64> = shifts
            .iter()
            .map(|(s, c)| {
                let y: Vec<f64> = x.iter().zip(s).map(|(p, q)| p - q).collect();
                c * fine.interp_at(&y)
            })
            .collect();
        (lhs.interp_at(&x) - sum::pairwise(&terms)).norm_sqr()
    });
    Ok((sum::pairwise_real(&sq) * grid.cell_volume()).sqrt())
}

/// Frequency-side residual `D^^{n-1} p - D^^n phi^ . F(a)((D~^{-n})^* xi)`
/// on a grid whose nodes map onto the nodes of the filter's torus grid.
fn reconstruction_residual_fourier(phi: &Signal, psi: &[Signal], bank: &FilterBank, n: i32) -> Result<f64> {
    let dil = &bank.dilation;
    if !dil.is_diagonal() {
        return Err(Error::Unsupported("frequency reconstruction needs a diagonal dilation".into()));
    }
    let d = dil.dim();
    let e = Embedding::level(dil, n)?;
    let fine = phi.unitary_dilate(dil, n)?;
    let mut worst = 0.0f64;
    let targets = std::iter::once((phi, &bank.h)).chain(psi.iter().zip(&bank.g));
    for (target, filter) in targets {
        let span = filter.taps().iter().flat_map(|(k, _)| k.iter().map(|v| v.abs())).max().unwrap_or(0);
        let m = (2 * span.max(1) as usize).next_power_of_two();
        let steps: Vec<f64> = (0..d).map(|k| (dil.entries()[k][k].abs() as f64).powi(n) / m as f64).collect();
        let lhs = target.unitary_dilate(dil, n - 1)?;
        let reach = [&lhs, &fine]
            .iter()
            .filter_map(|s| s.support())
            .flat_map(|(lo, hi)| lo.into_iter().chain(hi).map(f64::abs).collect::<Vec<_>>())
            .fold(0.0f64, f64::max);
        let samples = if d == 1 { 4096 } else { 256 };
        let mut count = samples;
        while (0..d).any(|k| steps[k] * count as f64 / 2.0 < reach) && count < (1 << 22) {
            count *= 2;
        }
        let half: Vec<f64> = steps.iter().map(|s| s * count as f64 / 2.0).collect();
        let grid = GridSignal::zeros(Domain::Frequency, half, vec![count; d])?;
        let sq = sum::map_indices(grid.values().len(), |j| {
            let xi = grid.point(j);
            let zeta = e.dual(&xi);
            let r = lhs.spectrum_at(&xi) - fine.spectrum_at(&xi) * filter.fourier_at(&zeta);
            r.norm_sqr()
        });
        worst = worst.max((sum::pairwise_real(&sq) * grid.cell_volume()).sqrt());
    }
    Ok(worst)
}

/// Iterates and diagnostics of the cascade `phi_{k+1} = D (phi_k o_0 h)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cascade {
    pub phi: Signal,
    /// `||phi_{k+1} - phi_k||_2` per iteration.
    pub step_norms: Vec<f64>,
    /// `||phi_{k+1}||_{X_0}` per iteration.
    pub x0_norms: Vec<f64>,
    /// `[phi_{k+1}, phi_{k+1}]_0 - e_0` in sup norm per iteration.
    pub gram_defects: Vec<f64>,
    /// Step norms nonincreasing after the third iteration and shrinking overall.
    pub cauchy: bool,
}

/// `||[phi, phi]_0 - e_0||_inf`.
pub fn gram_defect(phi: &Signal) -> Result<f64> {
    let e = Embedding::identity(phi.dim());
    let g = bracket_time(phi, phi, &e, None)?;
    Ok(g.max_abs_diff(&FilterSeq::delta(&vec![0; phi.dim()])))
}

const X0_GRID: usize = 64;
const MAX_PIECES: usize = 1 << 16;

pub fn cascade(h: &FilterSeq, dil: &DilationMatrix, iters: usize, init: &Signal) -> Result<Cascade> {
    let norm = h.l2_norm();
    if (norm - 1.0).abs() > tol::EPS_FILTER_NORM {
        return Err(Error::NotNormalized { norm });
    }
    if iters == 0 {
        return Err(Error::InvalidInput("at least one cascade iteration is required".into()));
    }
    if init.domain() != Domain::Time || h.dim() != init.dim() || dil.dim() != init.dim() {
        return Err(Error::InvalidInput("the cascade runs on time-domain signals of the filter's dimension".into()));
    }
    let e = Embedding::identity(init.dim());
    let mut phi = init.clone();
    let mut steps = Vec::with_capacity(iters);
    let mut x0 = Vec::with_capacity(iters);
    let mut gram = Vec::with_capacity(iters);
    for k in 0..iters {
        let next = match &phi {
            Signal::Analytic(_) => {
                let acted = module_action_time(&phi, h, &e)?;
                let next = dilate(&acted, dil, 1)?;
                let Signal::Analytic(c) = next else { unreachable!() };
                let c = c.canonicalize();
                if c.pieces().len() > MAX_PIECES {
                    return Err(Error::Unsupported(format!(
                        "analytic cascade grew to {} pieces; start from a grid instead",
                        c.pieces().len()
                    )));
                }
                Signal::Analytic(c)
            }
            Signal::Grid(g) => Signal::Grid(refine_grid(g, h, dil)?),
        };
        let step = next.sub(&phi)?.l2_norm()?;
        steps.push(step);
        x0.push(crate::modnorm::x_norm(&next, dil, 0, X0_GRID, tol::TRUNC_R as i64)?.x_norm);
        gram.push(gram_defect(&next)?);
        phi = next;
        if k >= 3 && steps[k] > steps[k - 1] && steps[k - 1] > steps[k - 2] && steps[k - 2] > steps[k - 3] {
            return Err(Error::Divergence { iters: k + 1, step_norms: steps });
        }
    }
    let peak = steps.iter().cloned().fold(0.0, f64::max);
    let settled = steps.windows(2).skip(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12) + 1e-15);
    let cauchy = settled && *steps.last().expect("iters >= 1") <= 0.5 * peak;
    Ok(Cascade { phi, step_norms: steps, x0_norms: x0, gram_defects: gram, cauchy })
}

/// `phi_{k+1}(x_j) = m^{1/2} sum_gamma h(gamma) phi_k(D~ x_j - gamma)` on the
/// fixed grid, reading `phi_k` exactly at nodes and as zero off the box.
fn refine_grid(g: &GridSignal, h: &FilterSeq, dil: &DilationMatrix) -> Result<GridSignal> {
    let d = g.dim();
    let dm = dil.real();
    let s = (dil.index_m() as f64).sqrt();
    let mut next = g.scale(Complex64::new(0.0, 0.0));
    let values = sum::map_indices(g.values().len(), |j| {
        let x = g.point(j);
        let y: Vec<f64> = (0..d).map(|i| (0..d).map(|k| dm[(i, k)] * x[k]).sum()).collect();
        let terms: Vec<Complex64> = h
            .taps()
            .iter()
            .map(|(gamma, c)| {
                let z: Vec<f64> = y.iter().zip(gamma).map(|(a, b)| a - *b as f64).collect();
                c * g.interp_at(&z)
            })
            .collect();
        sum::pairwise(&terms) * s
    });
    next = GridSignal::new(Domain::Time, next.half_width().to_vec(), next.n_samples().to_vec(), values)?;
    Ok(next)
}

/// Daubechies' four-tap filter from orthonormality and two vanishing moments.
///
/// With `h_0 = a` the constraints `sum h = sqrt 2`, `sum (-1)^k h_k = 0`,
/// `sum (-1)^k k h_k = 0` give `h_1 = 1/(2 sqrt 2) + a`, `h_2 = 1/sqrt 2 - a`,
/// `h_3 = 1/(2 sqrt 2) - a`, and `h_0 h_2 + h_1 h_3 = 0` leaves
/// `2a^2 - a/sqrt 2 - 1/8 = 0`.
pub fn db4_filters() -> (FilterSeq, FilterSeq) {
    let r2 = 2f64.sqrt();
    let (qa, qb, qc) = (2.0, -1.0 / r2, -0.125);
    let a = (-qb + (qb * qb - 4.0 * qa * qc).sqrt()) / (2.0 * qa);
    let h = [a, 1.0 / (2.0 * r2) + a, 1.0 / r2 - a, 1.0 / (2.0 * r2) - a];
    let g: Vec<f64> = (0..4).map(|k| if k % 2 == 0 { h[3 - k] } else { -h[3 - k] }).collect();
    let seq = |c: &[f64]| {
        FilterSeq::from_real(1, &c.iter().enumerate().map(|(k, v)| (vec![k as i64], *v)).collect::<Vec<_>>())
            .expect("one-dimensional taps")
    };
    (seq(&h), seq(&g))
}

pub const DB4_HALF_WIDTH: f64 = 4.0;
pub const DB4_SAMPLES: usize = 4096;
pub const DB4_ITERS: usize = 12;
pub const SHANNON_TAPS: usize = 1024;

#[derive(Clone, Debug, PartialEq)]
pub struct Builtin {
    pub name: String,
    pub phi: Signal,
    pub psi: Vec<Signal>,
    pub bank: FilterBank,
}

fn haar_1d() -> (AnalyticSignal, AnalyticSignal) {
    let phi = AnalyticSignal::indicator(Domain::Time, &[0.0], &[1.0], 1.0);
    let psi = AnalyticSignal::indicator(Domain::Time, &[0.0], &[0.5], 1.0)
        .sub(&AnalyticSignal::indicator(Domain::Time, &[0.5], &[1.0], 1.0))
        .expect("same shape");
    (phi, psi)
}

/// `phi^ = chi_[-1/2, 1/2)`.
pub fn shannon_phi_hat() -> AnalyticSignal {
    AnalyticSignal::indicator(Domain::Frequency, &[-0.5], &[0.5], 1.0)
}

/// `psi^(xi) = e^{i xi / 2} chi_{[-1,-1/2) u [1/2,1)}(xi)`.
pub fn shannon_psi_hat() -> AnalyticSignal {
    let nu = vec![1.0 / (4.0 * PI)];
    let one = Poly::constant(1, Complex64::new(1.0, 0.0));
    let pieces = vec![
        Piece::boxed(vec![-1.0], vec![-0.5], one.clone()).with_phase(nu.clone()),
        Piece::boxed(vec![0.5], vec![1.0], one).with_phase(nu),
    ];
    AnalyticSignal::new(1, Domain::Frequency, pieces).expect("valid pieces")
}

pub fn builtin(name: &str, d: usize) -> Result<Builtin> {
    if d == 0 || d > 3 {
        return Err(Error::InvalidInput(format!("dimension {d} is outside 1..=3")));
    }
    match name {
        "haar" => {
            let dil = DilationMatrix::scalar(d, 2)?;
            let (p, w) = haar_1d();
            let phi = AnalyticSignal::tensor(&vec![p.clone(); d])?;
            // every choice of factors except the all-scaling one
            let psi = (1..(1usize << d))
                .map(|mask| {
                    let f: Vec<AnalyticSignal> =
                        (0..d).map(|k| if (mask >> k) & 1 == 1 { w.clone() } else { p.clone() }).collect();
                    AnalyticSignal::tensor(&f).map(Signal::Analytic)
                })
                .collect::<Result<Vec<_>>>()?;
            let phi = Signal::Analytic(phi);
            let bank = extract_filters(&phi, &psi, &dil, None)?;
            let bank = FilterBank::new(
                dil.clone(),
                bank.h.prune(tol::EPS_TAP),
                bank.g.iter().map(|g| g.prune(tol::EPS_TAP)).collect(),
            )?;
            Ok(Builtin { name: name.into(), phi, psi, bank })
        }
        "shannon" => {
            if d != 1 {
                return Err(Error::Unsupported("the Shannon built-in is one-dimensional".into()));
            }
            let dil = DilationMatrix::scalar(1, 2)?;
            let phi = Signal::Analytic(shannon_phi_hat());
            let psi = vec![Signal::Analytic(shannon_psi_hat())];
            let (h, g) = extract_filters_fourier(&phi, &psi, &dil, SHANNON_TAPS, tol::TRUNC_R as i64)?;
            let bank = FilterBank::new(dil, taps_from_symbol(&h)?, vec![taps_from_symbol(&g[0])?])?;
            Ok(Builtin { name: name.into(), phi, psi, bank })
        }
        "db4" => {
            if d != 1 {
                return Err(Error::Unsupported("the Daubechies-4 built-in is one-dimensional".into()));
            }
            let dil = DilationMatrix::scalar(1, 2)?;
            let (h, g) = db4_filters();
            let init = GridSignal::sample(
                &AnalyticSignal::indicator(Domain::Time, &[0.0], &[1.0], 1.0),
                vec![DB4_HALF_WIDTH],
                vec![DB4_SAMPLES],
            )?;
            let run = cascade(&h, &dil, DB4_ITERS, &Signal::Grid(init))?;
            let Signal::Grid(phi) = &run.phi else { unreachable!() };
            let psi = Signal::Grid(refine_grid(phi, &g, &dil)?);
            let bank = FilterBank::new(dil, h, vec![g])?;
            Ok(Builtin { name: name.into(), phi: run.phi, psi: vec![psi], bank })
        }
        other => Err(Error::UnknownName(other.into())),
    }
}

/// The Haar wavelet rebuilt from a wavelet filter whose tap at index 1 is
/// scaled by `factor`: `psi = D (phi o_0 g)`.
pub fn perturbed_haar_wavelet(factor: f64) -> Result<Signal> {
    let b = builtin("haar", 1)?;
    let g = &b.bank.g[0];
    let taps = g
        .taps()
        .iter()
        .map(|(k, c)| (k.clone(), if k[0] == 1 { c * factor } else { *c }))
        .collect();
    let g = FilterSeq::new(1, taps)?;
    let acted = module_action_time(&b.phi, &g, &Embedding::identity(1))?;
    dilate(&acted, &b.bank.dilation, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_bank() {
        let b = builtin("haar", 1).unwrap();
        let r = 0.5f64.sqrt();
        assert_eq!(b.bank.h.len(), 2);
        assert!((b.bank.h.get(&[0]).re - r).abs() < 1e-15 && (b.bank.h.get(&[1]).re - r).abs() < 1e-15);
        assert!((b.bank.g[0].get(&[0]).re - r).abs() < 1e-15 && (b.bank.g[0].get(&[1]).re + r).abs() < 1e-15);
        b.bank.check_norms().unwrap();
        assert!(reconstruction_residual(&b.phi, &b.psi, &b.bank, 0).unwrap() < 1e-14);
    }

    #[test]
    fn db4_constraints() {
        let (h, g) = db4_filters();
        let c: Vec<f64> = (0..4).map(|k| h.get(&[k]).re).collect();
        assert!((c.iter().sum::<f64>() - 2f64.sqrt()).abs() < 1e-15);
        assert!((c[0] - c[1] + c[2] - c[3]).abs() < 1e-15);
        assert!((-c[1] + 2.0 * c[2] - 3.0 * c[3]).abs() < 1e-15);
        assert!((c[0] * c[2] + c[1] * c[3]).abs() < 1e-16);
        assert!((h.l2_norm() - 1.0).abs() < 1e-15 && (g.l2_norm() - 1.0).abs() < 1e-15);
        // low-pass and high-pass are orthogonal at even shifts
        let cross: f64 = (0..4).map(|k| c[k] * g.get(&[k as i64]).re).sum();
        assert!(cross.abs() < 1e-16);
    }

    #[test]
    fn haar_cascade_is_a_fixed_point() {
        let b = builtin("haar", 1).unwrap();
        let run = cascade(&b.bank.h, &b.bank.dilation, 1, &b.phi).unwrap();
        assert_eq!(run.step_norms, vec![0.0]);
        assert_eq!(run.phi.sub(&b.phi).unwrap().l2_norm().unwrap(), 0.0);
    }

    #[test]
    fn unnormalized_filter_is_rejected() {
        let h = FilterSeq::from_real(1, &[(vec![0], 1.0), (vec![1], 1.0)]).unwrap();
        let d = DilationMatrix::scalar(1, 2).unwrap();
        let init = Signal::Analytic(AnalyticSignal::indicator(Domain::Time, &[0.0], &[1.0], 1.0));
        assert!(matches!(cascade(&h, &d, 3, &init), Err(Error::NotNormalized { .. })));
        assert!(matches!(builtin("morlet", 1), Err(Error::UnknownName(_))));
    }

    #[test]
    fn symbol_taps_round_trip() {
        let b = TorusFunction::from_fn(vec![16], |z| Complex64::new((2.0 * PI * z[0]).cos(), 0.0)).unwrap();
        let taps = taps_from_symbol(&b).unwrap();
        assert_eq!(taps.len(), 2);
        assert!((taps.get(&[1]).re - 0.5).abs() < 1e-15 && (taps.get(&[-1]).re - 0.5).abs() < 1e-15);
        let back = taps.to_torus(16);
        assert!(back.max_abs_diff(&b).unwrap() < 1e-15);
    }
}
