//! Uniformly sampled signals on centred dyadic boxes.

use std::f64::consts::PI;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::analytic::AnalyticSignal;
use super::Domain;
use crate::error::{Error, Result};
use crate::sum;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Samples `values[j] = f(x_j)`, `x_j = -L + j * 2L / N` per axis, row-major
/// with the last axis fastest.
#[derive(Clone, Debug)]
pub struct GridSignal {
    domain: Domain,
    half_width: Vec<f64>,
    n: Vec<usize>,
    values: Vec<Complex64>,
    interpolated: bool,
    table: OnceLock<Arc<GridSignal>>,
}

impl PartialEq for GridSignal {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain
            && self.half_width == other.half_width
            && self.n == other.n
            && self.values == other.values
            && self.interpolated == other.interpolated
    }
}

fn strides(n: &[usize]) -> Vec<usize> {
    let mut s = vec![1; n.len()];
    for i in (0..n.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * n[i + 1];
    }
    s
}

impl GridSignal {
    pub fn new(domain: Domain, half_width: Vec<f64>, n: Vec<usize>, values: Vec<Complex64>) -> Result<Self> {
        if half_width.len() != n.len() || n.is_empty() {
            return Err(Error::DimensionMismatch { expected: n.len(), got: half_width.len() });
        }
        if half_width.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
            return Err(Error::InvalidInput("box half-widths must be positive".into()));
        }
        if n.iter().any(|&k| k < 2 || !k.is_power_of_two()) {
            return Err(Error::InvalidInput("sample counts must be powers of two (at least 2)".into()));
        }
        if values.len() != n.iter().product::<usize>() {
            return Err(Error::InvalidInput(format!(
                "expected {} samples, got {}",
                n.iter().product::<usize>(),
                values.len()
            )));
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::InvalidInput("grid values must be finite".into()));
        }
        Ok(Self { domain, half_width, n, values, interpolated: false, table: OnceLock::new() })
    }

    pub fn zeros(domain: Domain, half_width: Vec<f64>, n: Vec<usize>) -> Result<Self> {
        let len = n.iter().product();
        Self::new(domain, half_width, n, vec![ZERO; len])
    }

    pub fn from_fn(
        domain: Domain,
        half_width: Vec<f64>,
        n: Vec<usize>,
        f: impl Fn(&[f64]) -> Complex64 + Sync,
    ) -> Result<Self> {
        let mut g = Self::zeros(domain, half_width, n)?;
        let values = sum::map_indices(g.values.len(), |j| f(&g.point(j)));
        g.values = values;
        if g.values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::InvalidInput("grid values must be finite".into()));
        }
        Ok(g)
    }

    /// Samples an analytic signal; its support must lie in the box.
    pub fn sample(f: &AnalyticSignal, half_width: Vec<f64>, n: Vec<usize>) -> Result<Self> {
        if let Some((lo, hi)) = f.support() {
            let inside = lo.iter().zip(&hi).zip(&half_width).all(|((l, h), w)| *l >= -w && *h <= *w);
            if !inside {
                return Err(Error::SupportClipped {
                    support: lo.iter().zip(&hi).map(|(a, b)| (*a, *b)).collect(),
                    bounds: half_width.iter().map(|w| (-w, *w)).collect(),
                });
            }
        }
        let g = Self::from_fn(f.domain(), half_width, n, |x| f.eval(x))?;
        if g.dim() != f.dim() {
            return Err(Error::DimensionMismatch { expected: f.dim(), got: g.dim() });
        }
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.n.len()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn half_width(&self) -> &[f64] {
        &self.half_width
    }

    pub fn n_samples(&self) -> &[usize] {
        &self.n
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Set when the values came from interpolation rather than exact sampling.
    pub fn interpolated(&self) -> bool {
        self.interpolated
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        2.0 * self.half_width[axis] / self.n[axis] as f64
    }

    pub fn cell_volume(&self) -> f64 {
        (0..self.dim()).map(|k| self.spacing(k)).product()
    }

    pub fn index(&self, flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dim()];
        let mut rem = flat;
        for k in (0..self.dim()).rev() {
            idx[k] = rem % self.n[k];
            rem /= self.n[k];
        }
        idx
    }

    pub fn point(&self, flat: usize) -> Vec<f64> {
        self.index(flat)
            .iter()
            .enumerate()
            .map(|(k, &i)| -self.half_width[k] + i as f64 * self.spacing(k))
            .collect()
    }

    fn with_values(&self, values: Vec<Complex64>) -> Self {
        Self {
            domain: self.domain,
            half_width: self.half_width.clone(),
            n: self.n.clone(),
            values,
            interpolated: self.interpolated,
            table: OnceLock::new(),
        }
    }

    pub fn with_domain(&self, domain: Domain) -> Self {
        let mut g = self.with_values(self.values.clone());
        g.domain = domain;
        g
    }

    pub fn same_grid(&self, other: &Self) -> bool {
        self.n == other.n
            && self
                .half_width
                .iter()
                .zip(&other.half_width)
                .all(|(a, b)| (a - b).abs() <= 1e-12 * a.abs().max(1.0))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch { expected: self.domain.name(), got: other.domain.name() });
        }
        if !self.same_grid(other) {
            return Err(Error::IncompatibleGrids(format!(
                "boxes {:?}/{:?}, samples {:?}/{:?}",
                self.half_width, other.half_width, self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.with_values(self.values.iter().map(|v| v * c).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut g = self.with_values(self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect());
        g.interpolated |= other.interpolated;
        Ok(g)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Riemann sum of `conj(f) g`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.shifted_inner(other, &vec![0; self.dim()])
    }

    /// `vol * sum_j conj(f(x_j - shift * dx)) g(x_j)`, samples outside the box
    /// counting as zero.
    pub fn shifted_inner(&self, other: &Self, shift: &[i64]) -> Result<Complex64> {
        self.check_same(other)?;
        let st = strides(&self.n);
        let terms: Vec<Complex64> = (0..other.values.len())
            .filter_map(|j| {
                let g = other.values[j];
                if g == ZERO {
                    return None;
                }
                let idx = other.index(j);
                let mut src = 0usize;
                for k in 0..self.dim() {
                    let i = idx[k] as i64 - shift[k];
                    if i < 0 || i >= self.n[k] as i64 {
                        return None;
                    }
                    src += i as usize * st[k];
                }
                Some(self.values[src].conj() * g)
            })
            .collect();
        Ok(sum::pairwise(&terms) * self.cell_volume())
    }

    pub fn l2_norm(&self) -> f64 {
        let sq: Vec<f64> = self.values.iter().map(|v| v.norm_sqr()).collect();
        (sum::pairwise_real(&sq) * self.cell_volume()).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Applies the centred DFT along every axis. `forward` maps time samples
    /// to `f^(xi_k)`, `xi_k = k / (2L)`, `k in [-N/2, N/2)`.
    fn centred_dft(&self, forward: bool) -> Vec<Complex64> {
        let mut values = self.values.clone();
        let st = strides(&self.n);
        let mut planner = FftPlanner::<f64>::new();
        for axis in 0..self.dim() {
            let n = self.n[axis];
            let fft = if forward { planner.plan_fft_forward(n) } else { planner.plan_fft_inverse(n) };
            let c = if (n / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
            let scale = self.spacing(axis);
            let lines = values.len() / n;
            let mut buf = vec![ZERO; n];
            for line in 0..lines {
                // base offset of this line: enumerate all indices with idx[axis] = 0
                let outer = line / st[axis];
                let inner = line % st[axis];
                let base = outer * st[axis] * n + inner;
                for (j, b) in buf.iter_mut().enumerate() {
                    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                    *b = values[base + j * st[axis]] * sign;
                }
                fft.process(&mut buf);
                for (k, b) in buf.iter().enumerate() {
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    values[base + k * st[axis]] = b * (sign * c * scale);
                }
            }
        }
        values
    }

    /// `f^(xi) = int f(x) exp(-2 pi i <xi, x>) dx` on the frequency grid
    /// `xi_k = k / (2L)`, which has half-width `N / (4L)`.
    pub fn fourier(&self) -> Result<Self> {
        if self.domain != Domain::Time {
            return Err(Error::DomainMismatch { expected: "time", got: self.domain.name() });
        }
        let values = self.centred_dft(true);
        let half_width = (0..self.dim()).map(|k| self.n[k] as f64 / (4.0 * self.half_width[k])).collect();
        let mut g = Self::new(Domain::Frequency, half_width, self.n.clone(), values)?;
        g.interpolated = self.interpolated;
        Ok(g)
    }

    pub fn inverse_fourier(&self) -> Result<Self> {
        if self.domain != Domain::Frequency {
            return Err(Error::DomainMismatch { expected: "frequency", got: self.domain.name() });
        }
        let values = self.centred_dft(false);
        let half_width = (0..self.dim()).map(|k| self.n[k] as f64 / (4.0 * self.half_width[k])).collect();
        let mut g = Self::new(Domain::Time, half_width, self.n.clone(), values)?;
        g.interpolated = self.interpolated;
        Ok(g)
    }

    /// The spectrum of a time grid: its discrete-time Fourier transform on the
    /// Nyquist window `[-1/(2 dx), 1/(2 dx))`, zero outside. Exact table
    /// values are used at frequency-grid points.
    pub fn dtft_at(&self, xi: &[f64]) -> Complex64 {
        debug_assert_eq!(self.domain, Domain::Time);
        let d = self.dim();
        let mut on_grid = true;
        let mut table_idx = 0usize;
        for k in 0..d {
            let dx = self.spacing(k);
            let half = 0.5 / dx;
            if !(-half..half).contains(&xi[k]) {
                return ZERO;
            }
            let t = xi[k] * 2.0 * self.half_width[k] + (self.n[k] / 2) as f64;
            let r = t.round();
            if (t - r).abs() > 1e-9 || r < 0.0 || r >= self.n[k] as f64 {
                on_grid = false;
            } else {
                table_idx = table_idx * self.n[k] + r as usize;
            }
        }
        if on_grid {
            let table = self.table.get_or_init(|| Arc::new(self.fourier().expect("time grid")));
            return table.values[table_idx];
        }
        // nested Horner in w_k = e^{-2 pi i xi_k dx_k}, last axis first
        let mut vals = self.values.clone();
        let mut len = vals.len();
        let mut prefactor = Complex64::new(1.0, 0.0);
        for k in (0..d).rev() {
            let n = self.n[k];
            let dx = self.spacing(k);
            let w = Complex64::from_polar(1.0, -2.0 * PI * xi[k] * dx);
            prefactor *= Complex64::from_polar(dx, 2.0 * PI * xi[k] * self.half_width[k]);
            len /= n;
            for line in 0..len {
                let mut acc = ZERO;
                for v in vals[line * n..(line + 1) * n].iter().rev() {
                    acc = acc * w + v;
                }
                vals[line] = acc;
            }
        }
        vals[0] * prefactor
    }

    /// Multilinear interpolation, zero outside the box. Exact at nodes.
    pub fn interp_at(&self, x: &[f64]) -> Complex64 {
        let d = self.dim();
        let mut base = vec![0usize; d];
        let mut frac = vec![0.0; d];
        for k in 0..d {
            let t = (x[k] + self.half_width[k]) / self.spacing(k);
            let r = t.round();
            let t = if (t - r).abs() <= 1e-9 { r } else { t };
            if t < 0.0 || t > (self.n[k] - 1) as f64 {
                return ZERO;
            }
            let f = t.floor();
            base[k] = f as usize;
            frac[k] = t - f;
        }
        let st = strides(&self.n);
        let mut acc = ZERO;
        for corner in 0..(1usize << d) {
            let mut w = 1.0;
            let mut flat = 0usize;
            for k in 0..d {
                let up = (corner >> k) & 1 == 1;
                if up {
                    if frac[k] == 0.0 {
                        w = 0.0;
                        break;
                    }
                    w *= frac[k];
                    flat += (base[k] + 1) * st[k];
                } else {
                    w *= 1.0 - frac[k];
                    flat += base[k] * st[k];
                }
            }
            if w != 0.0 {
                acc += self.values[flat] * w;
            }
        }
        acc
    }

    /// Resamples onto another centred box, exactly wherever nodes coincide.
    pub fn resample(&self, half_width: Vec<f64>, n: Vec<usize>) -> Result<Self> {
        let mut g = Self::zeros(self.domain, half_width, n)?;
        let exact = (0..self.dim()).all(|k| {
            let r = g.spacing(k) / self.spacing(k);
            let o = (self.half_width[k] - g.half_width[k]) / self.spacing(k);
            (r - r.round()).abs() < 1e-12 && (o - o.round()).abs() < 1e-9
        });
        g.values = sum::map_indices(g.values.len(), |j| self.interp_at(&g.point(j)));
        g.interpolated = self.interpolated || !exact;
        Ok(g)
    }

    /// `x -> s * f(diag(b) x)`: the box is rescaled, negative factors reflect
    /// the samples (with wrap-around of the first node).
    pub fn compose_diag(&self, b: &[f64], s: f64) -> Self {
        let d = self.dim();
        let half_width: Vec<f64> = (0..d).map(|k| self.half_width[k] / b[k].abs()).collect();
        let st = strides(&self.n);
        let values = (0..self.values.len())
            .map(|j| {
                let idx = self.index(j);
                let src: usize = (0..d)
                    .map(|k| {
                        let i = if b[k] < 0.0 { (self.n[k] - idx[k]) % self.n[k] } else { idx[k] };
                        i * st[k]
                    })
                    .sum();
                self.values[src] * s
            })
            .collect();
        Self {
            domain: self.domain,
            half_width,
            n: self.n.clone(),
            values,
            interpolated: self.interpolated,
            table: OnceLock::new(),
        }
    }

    /// `x -> s * f(Bx)` on the same box by multilinear resampling.
    pub fn compose_resampled(&self, b: &nalgebra::DMatrix<f64>, s: f64) -> Self {
        let d = self.dim();
        let mut g = self.with_values(sum::map_indices(self.values.len(), |j| {
            let x = self.point(j);
            let y: Vec<f64> = (0..d).map(|i| (0..d).map(|k| b[(i, k)] * x[k]).sum()).collect();
            self.interp_at(&y) * s
        }));
        g.interpolated = true;
        g
    }

    /// `x -> f(x - a)`. Whole-sample shifts move indices; anything else uses
    /// a phase ramp in frequency and marks the result as interpolated.
    pub fn translate(&self, a: &[f64]) -> Result<Self> {
        let d = self.dim();
        let steps: Vec<f64> = (0..d).map(|k| a[k] / self.spacing(k)).collect();
        if steps.iter().all(|s| (s - s.round()).abs() < 1e-9) {
            let shift: Vec<i64> = steps.iter().map(|s| s.round() as i64).collect();
            return self.shift_samples(&shift, a);
        }
        match self.domain {
            Domain::Time => {
                let spec = self.fourier()?;
                let ramp = spec.modulate_values(a);
                let mut g = ramp.inverse_fourier()?;
                g.interpolated = true;
                Ok(g)
            }
            Domain::Frequency => Err(Error::Unsupported("sub-sample shift of a frequency grid".into())),
        }
    }

    fn modulate_values(&self, a: &[f64]) -> Self {
        self.with_values(
            self.values
                .iter()
                .enumerate()
                .map(|(j, v)| {
                    let xi = self.point(j);
                    let ph: f64 = xi.iter().zip(a).map(|(x, y)| x * y).sum();
                    v * Complex64::from_polar(1.0, -2.0 * PI * ph)
                })
                .collect(),
        )
    }

    /// `xi -> p(xi) exp(-2 pi i <xi, a>)`, the Fourier image of a translation.
    pub fn modulate(&self, a: &[f64]) -> Self {
        self.modulate_values(a)
    }

    fn shift_samples(&self, shift: &[i64], a: &[f64]) -> Result<Self> {
        let d = self.dim();
        let st = strides(&self.n);
        let mut values = vec![ZERO; self.values.len()];
        // samples this small relative to the peak may fall off the box
        let negligible = 1e-15 * self.max_abs();
        for (j, v) in self.values.iter().enumerate() {
            if *v == ZERO {
                continue;
            }
            let idx = self.index(j);
            let mut dst = 0usize;
            for k in 0..d {
                let i = idx[k] as i64 + shift[k];
                if i < 0 || i >= self.n[k] as i64 {
                    if v.norm() <= negligible {
                        dst = usize::MAX;
                        break;
                    }
                    let (lo, hi) = self.bounds();
                    return Err(Error::SupportClipped {
                        support: lo.iter().zip(&hi).zip(a).map(|((l, h), s)| (l + s, h + s)).collect(),
                        bounds: self.half_width.iter().map(|w| (-w, *w)).collect(),
                    });
                }
                dst += i as usize * st[k];
            }
            if dst != usize::MAX {
                values[dst] = *v;
            }
        }
        Ok(self.with_values(values))
    }

    /// Bounding box of the nonzero samples (the whole box when all vanish).
    pub fn bounds(&self) -> (Vec<f64>, Vec<f64>) {
        let d = self.dim();
        let mut lo = vec![f64::INFINITY; d];
        let mut hi = vec![f64::NEG_INFINITY; d];
        for (j, v) in self.values.iter().enumerate() {
            if *v != ZERO {
                let x = self.point(j);
                for k in 0..d {
                    lo[k] = lo[k].min(x[k]);
                    hi[k] = hi[k].max(x[k] + self.spacing(k));
                }
            }
        }
        if lo[0].is_infinite() {
            return (self.half_width.iter().map(|w| -w).collect(), self.half_width.clone());
        }
        (lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian_grid(l: f64, n: usize) -> GridSignal {
        GridSignal::from_fn(Domain::Time, vec![l], vec![n], |x| Complex64::new((-PI * x[0] * x[0]).exp(), 0.0)).unwrap()
    }

    #[test]
    fn sampling_the_haar_box() {
        let f = AnalyticSignal::indicator(Domain::Time, &[0.0], &[1.0], 1.0);
        let g = GridSignal::sample(&f, vec![2.0], vec![8]).unwrap();
        let want = [0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0];
        assert!(g.values().iter().zip(want).all(|(a, b)| a.re == b && a.im == 0.0));
        let g = GridSignal::sample(&f, vec![1.0], vec![4]).unwrap();
        assert_eq!(g.values().iter().map(|v| v.re).collect::<Vec<_>>(), vec![0.0, 0.0, 1.0, 1.0]);
        assert!(matches!(GridSignal::sample(&f, vec![0.5], vec![4]), Err(Error::SupportClipped { .. })));
    }

    #[test]
    fn gaussian_transform_pair() {
        let g = gaussian_grid(8.0, 1024);
        let s = g.fourier().unwrap();
        assert_eq!(s.half_width(), &[32.0]);
        for j in 0..1024 {
            let xi = s.point(j)[0];
            assert!((s.values()[j] - (-PI * xi * xi).exp()).norm() < 1e-8);
        }
        assert!((s.l2_norm() - g.l2_norm()).abs() < 1e-10 * g.l2_norm());
        let back = s.inverse_fourier().unwrap();
        assert!(back.values().iter().zip(g.values()).all(|(a, b)| (a - b).norm() < 1e-10));
    }

    #[test]
    fn box_spectrum_at_zero() {
        let f = AnalyticSignal::indicator(Domain::Time, &[-0.5], &[0.5], 1.0);
        let g = GridSignal::sample(&f, vec![4.0], vec![256]).unwrap();
        assert!((g.fourier().unwrap().interp_at(&[0.0]) - 1.0).norm() < 1e-14);
        assert!((g.dtft_at(&[0.0]) - 1.0).norm() < 1e-14);
        assert!((g.dtft_at(&[0.013]) - g.dtft_at(&[0.013 + 1e-13])).norm() < 1e-10);
    }

    #[test]
    fn two_dimensional_round_trip() {
        let g = GridSignal::from_fn(Domain::Time, vec![4.0, 2.0], vec![32, 16], |x| {
            Complex64::new((-PI * (x[0] * x[0] + 2.0 * x[1] * x[1])).exp(), x[0] * 0.01)
        })
        .unwrap();
        let s = g.fourier().unwrap();
        assert!((s.l2_norm() - g.l2_norm()).abs() < 1e-12);
        let back = s.inverse_fourier().unwrap();
        assert!(back.values().iter().zip(g.values()).all(|(a, b)| (a - b).norm() < 1e-12));
        // a node of the frequency grid agrees with the direct sum
        let xi = s.point(37);
        assert!((g.dtft_at(&xi) - s.values()[37]).norm() < 1e-12);
        let nudged = [xi[0] + 1e-8, xi[1]];
        assert!((g.dtft_at(&nudged) - s.values()[37]).norm() < 1e-6);
    }

    #[test]
    fn whole_and_fractional_shifts() {
        let g = gaussian_grid(8.0, 256);
        let t = g.translate(&[0.5]).unwrap();
        assert!(!t.interpolated());
        assert!((t.l2_norm() - g.l2_norm()).abs() < 1e-14);
        let u = g.translate(&[0.01]).unwrap();
        assert!(u.interpolated());
        let x = u.point(130)[0];
        assert!((u.values()[130].re - (-PI * (x - 0.01) * (x - 0.01)).exp()).abs() < 1e-9);
    }
}
