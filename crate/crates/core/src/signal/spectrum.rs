//! Frequency-side views of signals and their module-action images.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::torus::TorusSymbol;
use super::{Domain, GridSignal};
use crate::error::Result;
use crate::lattice::Embedding;
use crate::sum;

pub type SupportBox = (Vec<f64>, Vec<f64>);

/// A function on the frequency side `R^d`.
pub trait Spectrum: Send + Sync {
    fn dim(&self) -> usize;

    fn spectrum_at(&self, xi: &[f64]) -> Complex64;

    /// A box outside of which the spectrum vanishes, when one is known.
    fn spectral_support(&self) -> Option<SupportBox>;
}

/// `xi -> p(xi) b(A^* xi)`, the Fourier-side module action.
#[derive(Clone)]
pub struct ModulatedSpectrum {
    base: Arc<dyn Spectrum>,
    symbol: Arc<dyn TorusSymbol>,
    dual: DMatrix<f64>,
}

impl ModulatedSpectrum {
    pub fn new(base: Arc<dyn Spectrum>, symbol: Arc<dyn TorusSymbol>, embedding: &Embedding) -> Self {
        Self { base, symbol, dual: embedding.matrix().transpose() }
    }
}

impl Spectrum for ModulatedSpectrum {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn spectrum_at(&self, xi: &[f64]) -> Complex64 {
        let p = self.base.spectrum_at(xi);
        if p == Complex64::new(0.0, 0.0) {
            return p;
        }
        let d = xi.len();
        let zeta: Vec<f64> = (0..d).map(|i| (0..d).map(|j| self.dual[(i, j)] * xi[j]).sum()).collect();
        p * self.symbol.symbol_at(&zeta)
    }

    fn spectral_support(&self) -> Option<SupportBox> {
        self.base.spectral_support()
    }
}

/// A linear combination `sum_k c_k p_k`.
#[derive(Clone, Default)]
pub struct SpectrumSum {
    dim: usize,
    terms: Vec<(Complex64, Arc<dyn Spectrum>)>,
}

impl SpectrumSum {
    pub fn new(dim: usize) -> Self {
        Self { dim, terms: Vec::new() }
    }

    pub fn push(&mut self, c: Complex64, p: Arc<dyn Spectrum>) {
        self.terms.push((c, p));
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Spectrum for SpectrumSum {
    fn dim(&self) -> usize {
        self.dim
    }

    fn spectrum_at(&self, xi: &[f64]) -> Complex64 {
        let terms: Vec<Complex64> = self.terms.iter().map(|(c, p)| c * p.spectrum_at(xi)).collect();
        sum::pairwise(&terms)
    }

    fn spectral_support(&self) -> Option<SupportBox> {
        let mut acc: Option<SupportBox> = None;
        for (_, p) in &self.terms {
            let (lo, hi) = p.spectral_support()?;
            acc = Some(match acc {
                None => (lo, hi),
                Some((l, h)) => (
                    l.iter().zip(&lo).map(|(a, b)| a.min(*b)).collect(),
                    h.iter().zip(&hi).map(|(a, b)| a.max(*b)).collect(),
                ),
            });
        }
        acc.or_else(|| Some((vec![0.0; self.dim], vec![0.0; self.dim])))
    }
}

/// Samples a spectrum on a centred frequency grid.
pub fn sample_spectrum(p: &dyn Spectrum, half_width: Vec<f64>, n: Vec<usize>) -> Result<GridSignal> {
    GridSignal::from_fn(Domain::Frequency, half_width, n, |xi| p.spectrum_at(xi))
}
