//! Bracket products `[f, g]_theta(gamma) = int conj(f(x - A gamma)) g(x) dx`,
//! module actions `f o a = sum a(gamma) f(. - A gamma)`, and their Fourier
//! forms on the torus.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{int_cube, DilationMatrix, Embedding};
use crate::signal::{
    translate, AnalyticSignal, Domain, GridSignal, ModulatedSpectrum, Signal, Spectrum, SupportBox, TorusFunction,
    TorusSymbol,
};
use crate::{sum, tol};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub type SpectrumRef = Arc<dyn Spectrum>;

/// Wraps a signal as a shared spectrum.
pub fn spectrum_of(s: &Signal) -> SpectrumRef {
    Arc::new(s.clone())
}

/// Shared spectra for a pair, aliased when both arguments are the same signal
/// so that the periodization sums `|p|^2` directly.
pub fn spectra_of(f: &Signal, g: &Signal) -> (SpectrumRef, SpectrumRef) {
    let p = spectrum_of(f);
    let q = if std::ptr::eq(f, g) || f == g { p.clone() } else { spectrum_of(g) };
    (p, q)
}

/// A finitely supported sequence on `Z^d`, taps sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FilterSeqJson", into = "FilterSeqJson")]
pub struct FilterSeq {
    dim: usize,
    taps: Vec<(Vec<i64>, Complex64)>,
}

#[derive(Serialize, Deserialize)]
struct TapJson {
    index: Vec<i64>,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct FilterSeqJson {
    dim: usize,
    taps: Vec<TapJson>,
}

impl TryFrom<FilterSeqJson> for FilterSeq {
    type Error = Error;
    fn try_from(raw: FilterSeqJson) -> Result<Self> {
        FilterSeq::new(raw.dim, raw.taps.into_iter().map(|t| (t.index, Complex64::new(t.re, t.im))).collect())
    }
}

impl From<FilterSeq> for FilterSeqJson {
    fn from(f: FilterSeq) -> Self {
        FilterSeqJson {
            dim: f.dim,
            taps: f.taps.into_iter().map(|(index, c)| TapJson { index, re: c.re, im: c.im }).collect(),
        }
    }
}

impl FilterSeq {
    /// Sums repeated indices and drops exact zeros.
    pub fn new(dim: usize, taps: Vec<(Vec<i64>, Complex64)>) -> Result<Self> {
        let mut acc: BTreeMap<Vec<i64>, Complex64> = BTreeMap::new();
        for (idx, c) in taps {
            if idx.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: idx.len() });
            }
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::InvalidInput("filter taps must be finite".into()));
            }
            *acc.entry(idx).or_insert(ZERO) += c;
        }
        Ok(Self { dim, taps: acc.into_iter().filter(|(_, c)| *c != ZERO).collect() })
    }

    pub fn zero(dim: usize) -> Self {
        Self { dim, taps: Vec::new() }
    }

    /// `e_gamma`.
    pub fn delta(gamma: &[i64]) -> Self {
        Self { dim: gamma.len(), taps: vec![(gamma.to_vec(), Complex64::new(1.0, 0.0))] }
    }

    pub fn from_real(dim: usize, taps: &[(Vec<i64>, f64)]) -> Result<Self> {
        Self::new(dim, taps.iter().map(|(i, c)| (i.clone(), Complex64::new(*c, 0.0))).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn taps(&self) -> &[(Vec<i64>, Complex64)] {
        &self.taps
    }

    pub fn len(&self) -> usize {
        self.taps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taps.is_empty()
    }

    pub fn get(&self, gamma: &[i64]) -> Complex64 {
        self.taps
            .binary_search_by(|(k, _)| k.as_slice().cmp(gamma))
            .map(|i| self.taps[i].1)
            .unwrap_or(ZERO)
    }

    pub fn l1_norm(&self) -> f64 {
        sum::pairwise_real(&self.taps.iter().map(|(_, c)| c.norm()).collect::<Vec<_>>())
    }

    pub fn l2_norm(&self) -> f64 {
        sum::pairwise_real(&self.taps.iter().map(|(_, c)| c.norm_sqr()).collect::<Vec<_>>()).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.taps.iter().map(|(_, c)| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.dim, self.taps.iter().map(|(k, c)| (k.clone(), c * s)).collect()).expect("same dimension")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut taps = self.taps.clone();
        taps.extend(other.taps.iter().cloned());
        Self::new(self.dim, taps)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// `(a * b)(gamma) = sum_alpha a(alpha) b(gamma - alpha)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let mut groups: BTreeMap<Vec<i64>, Vec<Complex64>> = BTreeMap::new();
        for (a, x) in &self.taps {
            for (b, y) in &other.taps {
                let k: Vec<i64> = a.iter().zip(b).map(|(i, j)| i + j).collect();
                groups.entry(k).or_default().push(x * y);
            }
        }
        Self::new(self.dim, groups.into_iter().map(|(k, v)| (k, sum::pairwise(&v))).collect())
    }

    /// `a^*(gamma) = conj(a(-gamma))`.
    pub fn involution(&self) -> Self {
        Self::new(self.dim, self.taps.iter().map(|(k, c)| (k.iter().map(|v| -v).collect(), c.conj())).collect())
            .expect("same dimension")
    }

    /// Finite Fourier sum `sum_gamma a(gamma) e^{-2 pi i <gamma, zeta>}`.
    pub fn fourier_at(&self, zeta: &[f64]) -> Complex64 {
        let terms: Vec<Complex64> = self
            .taps
            .iter()
            .map(|(k, c)| {
                let ph: f64 = k.iter().zip(zeta).map(|(a, b)| *a as f64 * b).sum();
                c * Complex64::from_polar(1.0, -2.0 * PI * ph)
            })
            .collect();
        sum::pairwise(&terms)
    }

    /// The Fourier sum sampled on the `M^d` torus grid.
    pub fn to_torus(&self, m: usize) -> TorusFunction {
        TorusFunction::from_fn(vec![m; self.dim], |z| self.fourier_at(z)).expect("finite taps")
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other).map(|d| d.max_abs()).unwrap_or(f64::INFINITY)
    }

    /// Drops taps with modulus at most `eps`.
    pub fn prune(&self, eps: f64) -> Self {
        Self { dim: self.dim, taps: self.taps.iter().filter(|(_, c)| c.norm() > eps).cloned().collect() }
    }

    pub fn radius(&self) -> i64 {
        self.taps.iter().flat_map(|(k, _)| k.iter().map(|v| v.abs())).max().unwrap_or(0)
    }
}

impl TorusSymbol for FilterSeq {
    fn dim(&self) -> usize {
        self.dim
    }

    fn symbol_at(&self, zeta: &[f64]) -> Complex64 {
        self.fourier_at(zeta)
    }
}

/// Fourier sum `F_{Z^d}(a)` on the `M^d` torus grid.
pub fn fourier_zd(a: &FilterSeq, m: usize) -> TorusFunction {
    a.to_torus(m)
}

fn check_time(s: &Signal) -> Result<()> {
    if s.domain() != Domain::Time {
        return Err(Error::DomainMismatch { expected: "time", got: s.domain().name() });
    }
    Ok(())
}

fn real_inverse(e: &Embedding) -> DMatrix<f64> {
    e.matrix().clone().try_inverse().expect("embedding is nonsingular")
}

/// Smallest window radius outside of which `[f, g]_theta` vanishes, for
/// time-domain signals with bounded support.
pub fn required_window(f: &Signal, g: &Signal, e: &Embedding) -> Option<i64> {
    let (Some((flo, fhi)), Some((glo, ghi))) = (f.support(), g.support()) else {
        return Some(0);
    };
    let d = e.dim();
    // A gamma must lie in supp g - supp f
    let lo: Vec<f64> = (0..d).map(|k| glo[k] - fhi[k]).collect();
    let hi: Vec<f64> = (0..d).map(|k| ghi[k] - flo[k]).collect();
    let inv = real_inverse(e);
    let mut r = 0i64;
    for c in 0..(1usize << d) {
        let v: Vec<f64> = (0..d).map(|k| if (c >> k) & 1 == 1 { hi[k] } else { lo[k] }).collect();
        for i in 0..d {
            let y: f64 = (0..d).map(|j| inv[(i, j)] * v[j]).sum();
            if !y.is_finite() {
                return None;
            }
            r = r.max(y.abs().ceil() as i64);
        }
    }
    Some(r)
}

fn shift_in_samples(g: &GridSignal, a: &[f64]) -> Option<Vec<i64>> {
    let steps: Vec<f64> = (0..g.dim()).map(|k| a[k] / g.spacing(k)).collect();
    steps.iter().all(|s| (s - s.round()).abs() < 1e-9).then(|| steps.iter().map(|s| s.round() as i64).collect())
}

/// `[f, g]_theta` at every `|gamma|_inf <= window`. Exact for analytic pairs,
/// Riemann sums on the common grid otherwise. Without a window, the radius
/// is derived from the supports.
pub fn bracket_time(f: &Signal, g: &Signal, e: &Embedding, window: Option<i64>) -> Result<FilterSeq> {
    check_time(f)?;
    check_time(g)?;
    let d = e.dim();
    if f.dim() != d || g.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: f.dim().max(g.dim()) });
    }
    let needed = required_window(f, g, e);
    let window = match (window, needed) {
        (Some(w), Some(n)) => {
            if w < n {
                log::warn!("{}", Error::WindowTooSmall { given: w, needed: n });
            }
            w
        }
        (Some(w), None) => w,
        (None, Some(n)) => n,
        (None, None) => return Err(Error::InvalidInput("a window is required for unbounded supports".into())),
    };
    let gammas = int_cube(d, window);
    let values: Vec<Result<Complex64>> = match (f, g) {
        (Signal::Analytic(a), Signal::Analytic(b)) => {
            let a = a.canonicalize();
            let b = b.canonicalize();
            let (asup, bsup) = (a.support(), b.support());
            sum::map_indices(gammas.len(), |i| {
                let shift = e.apply(&gammas[i]);
                if let (Some((alo, ahi)), Some((blo, bhi))) = (&asup, &bsup) {
                    let apart = (0..d).any(|k| alo[k] + shift[k] >= bhi[k] || blo[k] >= ahi[k] + shift[k]);
                    if apart {
                        return Ok(ZERO);
                    }
                } else {
                    return Ok(ZERO);
                }
                a.translate(&shift).inner(&b)
            })
        }
        _ => {
            let (fg, gg) = common_grid(f, g)?;
            sum::map_indices(gammas.len(), |i| {
                let shift = e.apply(&gammas[i]);
                match shift_in_samples(&fg, &shift) {
                    Some(s) => fg.shifted_inner(&gg, &s),
                    None => fg.translate(&shift)?.inner(&gg),
                }
            })
        }
    };
    let taps = gammas.into_iter().zip(values).map(|(k, v)| v.map(|v| (k, v))).collect::<Result<Vec<_>>>()?;
    FilterSeq::new(d, taps)
}

const MAX_REFINED_SAMPLES: usize = 1 << 22;

/// Smallest grid containing both boxes at the finer spacing, provided the
/// spacings differ by a power of two and the boxes align with it.
fn refinement(a: &GridSignal, b: &GridSignal) -> Result<(Vec<f64>, Vec<usize>)> {
    let fail = || {
        Error::IncompatibleGrids(format!(
            "boxes {:?}/{:?}, samples {:?}/{:?}",
            a.half_width(),
            b.half_width(),
            a.n_samples(),
            b.n_samples()
        ))
    };
    if a.dim() != b.dim() || a.domain() != b.domain() {
        return Err(fail());
    }
    let mut half = Vec::with_capacity(a.dim());
    let mut n = Vec::with_capacity(a.dim());
    for k in 0..a.dim() {
        let step = a.spacing(k).min(b.spacing(k));
        let ratio = a.spacing(k).max(b.spacing(k)) / step;
        let w = a.half_width()[k].max(b.half_width()[k]);
        let count = 2.0 * w / step;
        let dyadic = (ratio.log2() - ratio.log2().round()).abs() < 1e-12;
        if !dyadic || (count - count.round()).abs() > 1e-9 || !(count.round() as usize).is_power_of_two() {
            return Err(fail());
        }
        half.push(w);
        n.push(count.round() as usize);
    }
    if n.iter().product::<usize>() > MAX_REFINED_SAMPLES {
        return Err(fail());
    }
    Ok((half, n))
}

fn common_grid(f: &Signal, g: &Signal) -> Result<(GridSignal, GridSignal)> {
    match (f, g) {
        (Signal::Grid(a), Signal::Grid(b)) => {
            if !a.same_grid(b) {
                let (half, n) = refinement(a, b)?;
                return Ok((a.resample(half.clone(), n.clone())?, b.resample(half, n)?));
            }
            Ok((a.clone(), b.clone()))
        }
        (Signal::Grid(a), Signal::Analytic(b)) => {
            Ok((a.clone(), GridSignal::sample(b, a.half_width().to_vec(), a.n_samples().to_vec())?))
        }
        (Signal::Analytic(a), Signal::Grid(b)) => {
            Ok((GridSignal::sample(a, b.half_width().to_vec(), b.n_samples().to_vec())?, b.clone()))
        }
        _ => unreachable!("analytic pairs take the exact path"),
    }
}

/// `f o_theta a = sum_gamma a(gamma) pi_gamma f`, in tap order.
pub fn module_action_time(f: &Signal, a: &FilterSeq, e: &Embedding) -> Result<Signal> {
    if a.dim() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), got: a.dim() });
    }
    match f {
        Signal::Analytic(s) => {
            let mut pieces = Vec::new();
            for (gamma, c) in a.taps() {
                if let Signal::Analytic(t) = translate(f, e, gamma)? {
                    pieces.extend(t.scale(*c).pieces().iter().cloned());
                }
            }
            Ok(Signal::Analytic(AnalyticSignal::new(s.dim(), s.domain(), pieces)?))
        }
        Signal::Grid(g) => {
            let mut acc = g.scale(ZERO);
            for (gamma, c) in a.taps() {
                if let Signal::Grid(t) = translate(f, e, gamma)? {
                    acc = acc.add(&t.scale(*c))?;
                }
            }
            Ok(Signal::Grid(acc))
        }
    }
}

/// `xi -> p(xi) b(A^* xi mod Z^d)`.
pub fn module_action_fourier(p: SpectrumRef, b: Arc<dyn TorusSymbol>, e: &Embedding) -> Result<ModulatedSpectrum> {
    if b.dim() != p.dim() || e.dim() != p.dim() {
        return Err(Error::GridMismatch(format!("symbol of dimension {} for a spectrum of dimension {}", b.dim(), p.dim())));
    }
    Ok(ModulatedSpectrum::new(p, b, e))
}

/// Truncated periodization `|det A|^{-1} sum_k conj(p) q ((A^*)^{-1}(zeta + k))`.
#[derive(Clone)]
pub struct Periodizer {
    p: SpectrumRef,
    q: SpectrumRef,
    ann: DMatrix<f64>,
    scale: f64,
    ks: Vec<Vec<i64>>,
    shell: Vec<bool>,
    compact: bool,
    radius: i64,
    same: bool,
}

const MAX_LATTICE_POINTS: usize = 1 << 22;

fn intersect(a: Option<SupportBox>, b: Option<SupportBox>) -> Option<SupportBox> {
    match (a, b) {
        (Some((al, ah)), Some((bl, bh))) => Some((
            al.iter().zip(&bl).map(|(x, y)| x.max(*y)).collect(),
            ah.iter().zip(&bh).map(|(x, y)| x.min(*y)).collect(),
        )),
        (Some(s), None) | (None, Some(s)) => Some(s),
        (None, None) => None,
    }
}

impl Periodizer {
    pub fn new(p: SpectrumRef, q: SpectrumRef, e: &Embedding, trunc_r: i64) -> Result<Self> {
        if trunc_r < 1 {
            return Err(Error::InvalidInput("truncation radius must be at least 1".into()));
        }
        let d = e.dim();
        if p.dim() != d || q.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, got: p.dim().max(q.dim()) });
        }
        let support = intersect(p.spectral_support(), q.spectral_support());
        let (ks, shell, compact, radius) = match support {
            Some((lo, hi)) => {
                if lo.iter().zip(&hi).any(|(l, h)| l >= h) {
                    (Vec::new(), Vec::new(), true, 0)
                } else {
                    // A^* maps the support onto the torus side; zeta + k must land in it
                    let at = e.matrix().transpose();
                    let mut blo = vec![f64::INFINITY; d];
                    let mut bhi = vec![f64::NEG_INFINITY; d];
                    for c in 0..(1usize << d) {
                        let v: Vec<f64> = (0..d).map(|k| if (c >> k) & 1 == 1 { hi[k] } else { lo[k] }).collect();
                        for i in 0..d {
                            let y: f64 = (0..d).map(|j| at[(i, j)] * v[j]).sum();
                            blo[i] = blo[i].min(y);
                            bhi[i] = bhi[i].max(y);
                        }
                    }
                    let klo: Vec<i64> = blo.iter().map(|b| (b - 0.5).floor() as i64).collect();
                    let khi: Vec<i64> = bhi.iter().map(|b| (b + 0.5).ceil() as i64).collect();
                    let count: f64 = klo.iter().zip(&khi).map(|(a, b)| (b - a + 1) as f64).product();
                    if count > MAX_LATTICE_POINTS as f64 {
                        return Err(Error::Unsupported(format!("periodization over {count} lattice points")));
                    }
                    let ks = box_points(&klo, &khi);
                    let radius = klo.iter().chain(&khi).map(|v| v.abs()).max().unwrap_or(0).max(trunc_r);
                    let n = ks.len();
                    (ks, vec![false; n], true, radius)
                }
            }
            None => {
                let ks = int_cube(d, trunc_r);
                let shell = ks.iter().map(|k| k.iter().map(|v| v.abs()).max() == Some(trunc_r)).collect();
                (ks, shell, false, trunc_r)
            }
        };
        let same = Arc::ptr_eq(&p, &q);
        Ok(Self { p, q, ann: e.ann_basis().clone(), scale: 1.0 / e.det().abs(), ks, shell, compact, radius, same })
    }

    pub fn compact(&self) -> bool {
        self.compact
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    /// Value at `zeta` and the magnitude of the last-shell contribution.
    pub fn eval(&self, zeta: &[f64]) -> (Complex64, f64) {
        let d = zeta.len();
        let mut terms = Vec::with_capacity(self.ks.len());
        let mut tail = Vec::new();
        for (k, on_shell) in self.ks.iter().zip(&self.shell) {
            let z: Vec<f64> = (0..d).map(|i| zeta[i] + k[i] as f64).collect();
            let xi: Vec<f64> = (0..d).map(|i| (0..d).map(|j| self.ann[(i, j)] * z[j]).sum()).collect();
            let a = self.p.spectrum_at(&xi);
            let v = if a == ZERO {
                ZERO
            } else if self.same {
                Complex64::new(a.norm_sqr(), 0.0)
            } else {
                a.conj() * self.q.spectrum_at(&xi)
            };
            terms.push(v);
            if *on_shell {
                tail.push(v.norm());
            }
        }
        (sum::pairwise(&terms) * self.scale, sum::pairwise_real(&tail) * self.scale)
    }
}

impl TorusSymbol for Periodizer {
    fn dim(&self) -> usize {
        self.ann.nrows()
    }

    fn symbol_at(&self, zeta: &[f64]) -> Complex64 {
        self.eval(zeta).0
    }
}

fn box_points(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    lo.iter().zip(hi).fold(vec![Vec::new()], |acc, (&a, &b)| {
        acc.into_iter()
            .flat_map(|prefix| {
                (a..=b).map(move |i| {
                    let mut v = prefix.clone();
                    v.push(i);
                    v
                })
            })
            .collect()
    })
}

/// A bracket sampled on the torus grid, with the truncation diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusBracket {
    pub values: TorusFunction,
    /// Largest last-shell contribution (zero when the sum is exact).
    pub tail: f64,
    /// Radius of the lattice window that was summed.
    pub radius: i64,
    /// Whether the sum is complete (compact spectra or the time route).
    pub compact: bool,
}

/// `[[p, q]]_theta` on the `M^d` grid by truncated periodization.
pub fn bracket_fourier(p: SpectrumRef, q: SpectrumRef, e: &Embedding, trunc_r: i64, m: usize) -> Result<TorusBracket> {
    let per = Periodizer::new(p, q, e, trunc_r)?;
    let d = e.dim();
    let probe = TorusFunction::constant(d, m, ZERO);
    let evals = sum::map_indices(probe.len(), |j| per.eval(&probe.point(j)));
    let tail = evals.iter().map(|(_, t)| *t).fold(0.0, f64::max);
    if !per.compact && tail > tol::TAIL_TOL {
        return Err(Error::TailTooLarge { tail, tol: tol::TAIL_TOL });
    }
    let values = TorusFunction::new(vec![m; d], evals.into_iter().map(|(v, _)| v).collect())?;
    Ok(TorusBracket { values, tail, radius: per.radius, compact: per.compact })
}

/// Level-`n` Fourier bracket, the periodization over `(D~^*)^n Z^d`.
pub fn bracket_fourier_level(
    p: SpectrumRef,
    q: SpectrumRef,
    dil: &DilationMatrix,
    n: i32,
    trunc_r: i64,
    m: usize,
) -> Result<TorusBracket> {
    bracket_fourier(p, q, &Embedding::level(dil, n)?, trunc_r, m)
}

/// Level-`n` time bracket `[f, g]_n`.
pub fn bracket_level(f: &Signal, g: &Signal, dil: &DilationMatrix, n: i32, window: Option<i64>) -> Result<FilterSeq> {
    bracket_time(f, g, &Embedding::level(dil, n)?, window)
}

/// `[[f^, g^]]_theta` as a torus symbol by the most accurate route: the
/// finite Fourier sum of the exact time bracket when both signals live in
/// time, the periodization otherwise.
pub fn bracket_symbol(f: &Signal, g: &Signal, e: &Embedding, trunc_r: i64) -> Result<Arc<dyn TorusSymbol>> {
    if f.domain() == Domain::Time && g.domain() == Domain::Time {
        return Ok(Arc::new(bracket_time(f, g, e, None)?));
    }
    let (p, q) = spectra_of(f, g);
    Ok(Arc::new(Periodizer::new(p, q, e, trunc_r)?))
}

/// [`bracket_symbol`] sampled on the `M^d` grid, with the tail check of
/// [`bracket_fourier`] on the periodization route.
pub fn bracket_torus(f: &Signal, g: &Signal, e: &Embedding, trunc_r: i64, m: usize) -> Result<TorusBracket> {
    if f.domain() == Domain::Time && g.domain() == Domain::Time {
        let taps = bracket_time(f, g, e, None)?;
        return Ok(TorusBracket { values: taps.to_torus(m), tail: 0.0, radius: taps.radius(), compact: true });
    }
    let (p, q) = spectra_of(f, g);
    bracket_fourier(p, q, e, trunc_r, m)
}

/// `max_zeta |F_{Z^d}([f, g]_theta)(zeta) - [[f^, g^]]_theta(zeta)|` with the
/// right side from the periodization of the spectra.
pub fn bridge_check(f: &Signal, g: &Signal, e: &Embedding, window: Option<i64>, m: usize, trunc_r: i64) -> Result<f64> {
    let taps = bracket_time(f, g, e, window)?;
    let lhs = taps.to_torus(m);
    let (p, q) = spectra_of(f, g);
    let rhs = bracket_fourier(p, q, e, trunc_r, m)?;
    lhs.max_abs_diff(&rhs.values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::GridSignal;

    fn chi(lo: f64, hi: f64) -> Signal {
        AnalyticSignal::indicator(Domain::Time, &[lo], &[hi], 1.0).into()
    }

    #[test]
    fn haar_scaling_function_has_orthonormal_translates() {
        let b = bracket_time(&chi(0.0, 1.0), &chi(0.0, 1.0), &Embedding::identity(1), None).unwrap();
        assert_eq!(b.prune(1e-15), FilterSeq::delta(&[0]));
    }

    #[test]
    fn haar_two_scale_bracket() {
        let d = DilationMatrix::scalar(1, 2).unwrap();
        let phi = chi(0.0, 1.0);
        let coarse = crate::signal::dilate(&phi, &d, -1).unwrap();
        let h = bracket_time(&phi, &coarse, &Embedding::identity(1), None).unwrap().prune(1e-15);
        // chi_[0,1) meets 2^{-1/2} chi_[0,2) at the shifts 0 and 1
        assert_eq!(h.len(), 2);
        let r = 0.5f64.sqrt();
        assert!((h.get(&[0]).re - r).abs() < 1e-15);
        assert!((h.get(&[1]).re - r).abs() < 1e-15);
    }

    #[test]
    fn box_of_length_two() {
        let b = bracket_time(&chi(0.0, 2.0), &chi(0.0, 2.0), &Embedding::identity(1), None).unwrap().prune(1e-15);
        let want = FilterSeq::from_real(1, &[(vec![-1], 1.0), (vec![0], 2.0), (vec![1], 1.0)]).unwrap();
        assert!(b.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn gaussian_autocorrelation() {
        let g: Signal = GridSignal::from_fn(Domain::Time, vec![8.0], vec![1024], |x| {
            Complex64::new((-PI * x[0] * x[0]).exp(), 0.0)
        })
        .unwrap()
        .into();
        let b = bracket_time(&g, &g, &Embedding::identity(1), Some(4)).unwrap();
        for k in -4i64..=4 {
            let want = 0.5f64.sqrt() * (-PI * (k * k) as f64 / 2.0).exp();
            assert!((b.get(&[k]).re - want).abs() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn shannon_scaling_bracket_is_one() {
        let p: Signal = AnalyticSignal::indicator(Domain::Frequency, &[-0.5], &[0.5], 1.0).into();
        let t = bracket_fourier(spectrum_of(&p), spectrum_of(&p), &Embedding::identity(1), 8, 64).unwrap();
        assert!(t.values.values().iter().all(|v| (v - 1.0).norm() < 1e-15));
        assert!(t.compact);
    }

    #[test]
    fn analytic_box_spectrum_has_slow_tails() {
        let p = chi(0.0, 1.0);
        let r = bracket_fourier(spectrum_of(&p), spectrum_of(&p), &Embedding::identity(1), 8, 16);
        assert!(matches!(r, Err(Error::TailTooLarge { .. })));
    }

    #[test]
    fn action_by_two_taps() {
        let a = FilterSeq::from_real(1, &[(vec![0], 1.0), (vec![1], 1.0)]).unwrap();
        let s = module_action_time(&chi(0.0, 1.0), &a, &Embedding::identity(1)).unwrap();
        assert!(s.sub(&chi(0.0, 2.0)).unwrap().l2_norm().unwrap() < 1e-15);
    }

    #[test]
    fn filter_json_shape() {
        let a = FilterSeq::from_real(1, &[(vec![0], 0.5)]).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"{"dim":1,"taps":[{"index":[0],"re":0.5,"im":0.0}]}"#);
    }
}
