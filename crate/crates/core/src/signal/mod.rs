//! Signals on `R^d`: exact analytic pieces, sampled grids, and torus
//! functions, with the Fourier bridge and the translation/dilation actions.

mod analytic;
mod grid;
mod spectrum;
mod torus;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use analytic::{pair_integral, AnalyticSignal, Piece};
pub use grid::GridSignal;
pub use spectrum::{sample_spectrum, ModulatedSpectrum, Spectrum, SpectrumSum, SupportBox};
pub use torus::{FnSymbol, TorusFunction, TorusSymbol};

use crate::error::{Error, Result};
use crate::lattice::{DilationMatrix, Embedding};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Time,
    Frequency,
}

impl Domain {
    pub fn name(self) -> &'static str {
        match self {
            Domain::Time => "time",
            Domain::Frequency => "frequency",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Signal {
    Analytic(AnalyticSignal),
    Grid(GridSignal),
}

impl From<AnalyticSignal> for Signal {
    fn from(s: AnalyticSignal) -> Self {
        Signal::Analytic(s)
    }
}

impl From<GridSignal> for Signal {
    fn from(s: GridSignal) -> Self {
        Signal::Grid(s)
    }
}

impl Signal {
    pub fn dim(&self) -> usize {
        match self {
            Signal::Analytic(a) => a.dim(),
            Signal::Grid(g) => g.dim(),
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            Signal::Analytic(a) => a.domain(),
            Signal::Grid(g) => g.domain(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Signal::Analytic(_) => "analytic",
            Signal::Grid(_) => "grid",
        }
    }

    /// Exact for analytic signals, the Riemann sum for grids.
    pub fn l2_norm(&self) -> Result<f64> {
        match self {
            Signal::Analytic(a) => a.l2_norm(),
            Signal::Grid(g) => Ok(g.l2_norm()),
        }
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        match self {
            Signal::Analytic(a) => a.eval(x),
            Signal::Grid(g) => g.interp_at(x),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        match self {
            Signal::Analytic(a) => Signal::Analytic(a.scale(c)),
            Signal::Grid(g) => Signal::Grid(g.scale(c)),
        }
    }

    /// Sum of two signals; a grid and an analytic signal meet on the grid.
    pub fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (Signal::Analytic(a), Signal::Analytic(b)) => Ok(Signal::Analytic(a.add(b)?)),
            (Signal::Grid(a), Signal::Grid(b)) => Ok(Signal::Grid(a.add(b)?)),
            (Signal::Grid(g), Signal::Analytic(a)) | (Signal::Analytic(a), Signal::Grid(g)) => {
                let s = GridSignal::sample(a, g.half_width().to_vec(), g.n_samples().to_vec())?;
                Ok(Signal::Grid(g.add(&s)?))
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Whether the signal is known to vanish outside a bounded set of `R^d` in
    /// the time domain.
    pub fn is_time_compact(&self) -> bool {
        self.domain() == Domain::Time
    }

    /// The unitary dilation acting in this signal's own domain: `D^n` on time
    /// signals and its Fourier image on spectra.
    pub fn unitary_dilate(&self, dil: &DilationMatrix, n: i32) -> Result<Self> {
        match self.domain() {
            Domain::Time => dilate(self, dil, n),
            Domain::Frequency => fourier_dilate(self, dil, n),
        }
    }

    /// Bounding box of the support (in the signal's own domain).
    pub fn support(&self) -> Option<SupportBox> {
        match self {
            Signal::Analytic(a) => a.support(),
            Signal::Grid(g) => Some(g.bounds()),
        }
    }
}

impl Spectrum for AnalyticSignal {
    fn dim(&self) -> usize {
        AnalyticSignal::dim(self)
    }

    fn spectrum_at(&self, xi: &[f64]) -> Complex64 {
        match self.domain() {
            Domain::Time => self.fourier_at(xi),
            Domain::Frequency => self.eval(xi),
        }
    }

    fn spectral_support(&self) -> Option<SupportBox> {
        match self.domain() {
            Domain::Frequency => Some(self.support().unwrap_or_else(|| (vec![0.0; self.dim()], vec![0.0; self.dim()]))),
            Domain::Time if self.pieces().is_empty() => Some((vec![0.0; self.dim()], vec![0.0; self.dim()])),
            Domain::Time => None,
        }
    }
}

impl Spectrum for GridSignal {
    fn dim(&self) -> usize {
        GridSignal::dim(self)
    }

    fn spectrum_at(&self, xi: &[f64]) -> Complex64 {
        match self.domain() {
            Domain::Time => self.dtft_at(xi),
            Domain::Frequency => self.interp_at(xi),
        }
    }

    fn spectral_support(&self) -> Option<SupportBox> {
        let d = GridSignal::dim(self);
        Some(match self.domain() {
            Domain::Time => (0..d).map(|k| (-0.5 / self.spacing(k), 0.5 / self.spacing(k))).unzip(),
            Domain::Frequency => (self.half_width().iter().map(|w| -w).collect(), self.half_width().to_vec()),
        })
    }
}

impl Spectrum for Signal {
    fn dim(&self) -> usize {
        Signal::dim(self)
    }

    fn spectrum_at(&self, xi: &[f64]) -> Complex64 {
        match self {
            Signal::Analytic(a) => a.spectrum_at(xi),
            Signal::Grid(g) => g.spectrum_at(xi),
        }
    }

    fn spectral_support(&self) -> Option<SupportBox> {
        match self {
            Signal::Analytic(a) => a.spectral_support(),
            Signal::Grid(g) => g.spectral_support(),
        }
    }
}

/// Samples an analytic signal on the centred box `[-L, L)` with `N` points per
/// axis.
pub fn sample(f: &AnalyticSignal, half_width: &[f64], n: &[usize]) -> Result<GridSignal> {
    GridSignal::sample(f, half_width.to_vec(), n.to_vec())
}

/// Grid Fourier transform `f^(xi) = int f(x) e^{-2 pi i <xi, x>} dx`.
pub fn fourier(f: &GridSignal) -> Result<GridSignal> {
    f.fourier()
}

pub fn inverse_fourier(p: &GridSignal) -> Result<GridSignal> {
    p.inverse_fourier()
}

fn diagonal_of(m: &nalgebra::DMatrix<f64>) -> Option<Vec<f64>> {
    let d = m.nrows();
    let diag = (0..d).all(|i| (0..d).all(|j| i == j || m[(i, j)] == 0.0));
    diag.then(|| (0..d).map(|i| m[(i, i)]).collect())
}

fn check_level(n: i32) -> Result<()> {
    if n.abs() > crate::tol::N_MAX {
        return Err(Error::LevelOverflow { level: n, max: crate::tol::N_MAX });
    }
    Ok(())
}

/// `(D^n f)(x) = m^{n/2} f(D~^n x)`.
pub fn dilate(f: &Signal, dil: &DilationMatrix, n: i32) -> Result<Signal> {
    check_level(n)?;
    if dil.dim() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), got: dil.dim() });
    }
    match f {
        Signal::Analytic(a) => Ok(Signal::Analytic(a.dilate(dil, n)?)),
        Signal::Grid(g) => {
            let b = dil.pow_real(n)?;
            let s = (dil.index_m() as f64).powf(n as f64 / 2.0);
            Ok(Signal::Grid(match diagonal_of(&b) {
                Some(diag) => g.compose_diag(&diag, s),
                None => g.compose_resampled(&b, s),
            }))
        }
    }
}

/// `(D^^n p)(xi) = m^{-n/2} p((D~^*)^{-n} xi)`.
pub fn fourier_dilate(p: &Signal, dil: &DilationMatrix, n: i32) -> Result<Signal> {
    check_level(n)?;
    if dil.dim() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), got: dil.dim() });
    }
    match p {
        Signal::Analytic(a) => Ok(Signal::Analytic(a.fourier_dilate(dil, n)?)),
        Signal::Grid(g) => {
            let b = dil.pow_real(-n)?.transpose();
            let s = (dil.index_m() as f64).powf(-(n as f64) / 2.0);
            Ok(Signal::Grid(match diagonal_of(&b) {
                Some(diag) => g.compose_diag(&diag, s),
                None => g.compose_resampled(&b, s),
            }))
        }
    }
}

/// `pi_gamma f = f(. - A gamma)` on time signals; on spectra the Fourier image
/// `p(xi) e^{-2 pi i <xi, A gamma>}`.
pub fn translate(f: &Signal, e: &Embedding, gamma: &[i64]) -> Result<Signal> {
    if e.dim() != f.dim() || gamma.len() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), got: gamma.len() });
    }
    let a = e.apply(gamma);
    translate_by(f, &a)
}

pub(crate) fn translate_by(f: &Signal, a: &[f64]) -> Result<Signal> {
    match (f, f.domain()) {
        (Signal::Analytic(s), Domain::Time) => Ok(Signal::Analytic(s.translate(a))),
        (Signal::Grid(g), Domain::Time) => Ok(Signal::Grid(g.translate(a)?)),
        (Signal::Analytic(s), Domain::Frequency) => {
            let pieces = s
                .pieces()
                .iter()
                .map(|p| {
                    let nu: Vec<f64> = match &p.phase {
                        Some(nu) => nu.iter().zip(a).map(|(v, s)| v - s).collect(),
                        None => a.iter().map(|s| -s).collect(),
                    };
                    p.clone().with_phase(nu)
                })
                .collect();
            Ok(Signal::Analytic(AnalyticSignal::new(s.dim(), Domain::Frequency, pieces)?))
        }
        (Signal::Grid(g), Domain::Frequency) => Ok(Signal::Grid(g.modulate(a))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn chi01() -> Signal {
        AnalyticSignal::indicator(Domain::Time, &[0.0], &[1.0], 1.0).into()
    }

    #[test]
    fn shifted_box() {
        let e = Embedding::identity(1);
        let s = translate(&chi01(), &e, &[1]).unwrap();
        let want: Signal = AnalyticSignal::indicator(Domain::Time, &[1.0], &[2.0], 1.0).into();
        assert!(s.sub(&want).unwrap().l2_norm().unwrap() < 1e-15);
        assert_eq!(translate(&chi01(), &e, &[0]).unwrap(), chi01());
    }

    #[test]
    fn fourier_dilation_of_shannon_scaling() {
        let d = DilationMatrix::scalar(1, 2).unwrap();
        let p: Signal = AnalyticSignal::indicator(Domain::Frequency, &[-0.5], &[0.5], 1.0).into();
        let q = fourier_dilate(&p, &d, 1).unwrap();
        let want: Signal = AnalyticSignal::indicator(Domain::Frequency, &[-1.0], &[1.0], 0.5f64.sqrt()).into();
        assert!(q.sub(&want).unwrap().l2_norm().unwrap() < 1e-15);
    }

    #[test]
    fn dilation_commutes_with_fourier_on_grids() {
        let d = DilationMatrix::scalar(1, 2).unwrap();
        let f = GridSignal::from_fn(Domain::Time, vec![8.0], vec![512], |x| {
            Complex64::new((-PI * x[0] * x[0]).exp(), 0.0)
        })
        .unwrap();
        let lhs = match dilate(&f.clone().into(), &d, 1).unwrap() {
            Signal::Grid(g) => g.fourier().unwrap(),
            _ => unreachable!(),
        };
        let rhs = fourier_dilate(&f.fourier().unwrap().into(), &d, 1).unwrap();
        for j in 0..512 {
            let xi = lhs.point(j);
            assert!((lhs.values()[j] - rhs.eval(&xi)).norm() < 1e-8);
        }
    }
}
