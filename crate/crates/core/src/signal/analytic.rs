//! Exact piecewise tensor-polynomial signals.
//!
//! A piece is `x -> P(Mx + t) exp(2 pi i <nu, x>)` restricted to
//! `{x : lo <= Mx + t < hi}`. Values of overlapping pieces add.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Domain;
use crate::error::{Error, Result};
use crate::lattice::DilationMatrix;
use crate::poly::Poly;
use crate::quad;

const PHASE_EPS: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    /// Row-major `d x d` matrix `M`.
    pub map: Vec<f64>,
    pub offset: Vec<f64>,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub poly: Poly,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase: Option<Vec<f64>>,
}

fn identity(d: usize) -> Vec<f64> {
    (0..d * d).map(|k| if k / d == k % d { 1.0 } else { 0.0 }).collect()
}

fn to_dmatrix(m: &[f64], d: usize) -> DMatrix<f64> {
    DMatrix::from_row_slice(d, d, m)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl Piece {
    /// `P(x)` on the global box `[lo, hi)`.
    pub fn boxed(lo: Vec<f64>, hi: Vec<f64>, poly: Poly) -> Self {
        let d = lo.len();
        Self { map: identity(d), offset: vec![0.0; d], lo, hi, poly, phase: None }
    }

    pub fn indicator(lo: Vec<f64>, hi: Vec<f64>, c: Complex64) -> Self {
        let d = lo.len();
        Self::boxed(lo, hi, Poly::constant(d, c))
    }

    pub fn with_phase(mut self, nu: Vec<f64>) -> Self {
        self.phase = if nu.iter().all(|v| *v == 0.0) { None } else { Some(nu) };
        self
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    fn validate(&self, d: usize) -> Result<()> {
        let ok = self.map.len() == d * d
            && self.offset.len() == d
            && self.lo.len() == d
            && self.hi.len() == d
            && self.poly.dim() == d
            && self.phase.as_ref().is_none_or(|p| p.len() == d);
        if !ok {
            return Err(Error::DimensionMismatch { expected: d, got: self.lo.len() });
        }
        if self.map.iter().chain(&self.offset).chain(&self.lo).chain(&self.hi).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite piece geometry".into()));
        }
        if to_dmatrix(&self.map, d).determinant().abs() <= crate::tol::EPS_SING {
            return Err(Error::SingularMatrix);
        }
        Ok(())
    }

    pub fn is_aligned(&self) -> bool {
        let d = self.dim();
        (0..d * d).all(|k| k / d == k % d || self.map[k] == 0.0)
    }

    fn local(&self, x: &[f64]) -> Vec<f64> {
        let d = self.dim();
        (0..d).map(|i| dot(&self.map[i * d..(i + 1) * d], x) + self.offset[i]).collect()
    }

    fn phase_factor(&self, x: &[f64]) -> Complex64 {
        match &self.phase {
            Some(nu) => Complex64::from_polar(1.0, 2.0 * PI * dot(nu, x)),
            None => Complex64::new(1.0, 0.0),
        }
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        let u = self.local(x);
        if u.iter().zip(&self.lo).zip(&self.hi).all(|((u, l), h)| l <= u && u < h) {
            self.poly.eval(&u) * self.phase_factor(x)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    /// Rewrites an axis-aligned piece with `M = I`, `t = 0`.
    pub fn globalize(&self) -> Option<Piece> {
        if !self.is_aligned() {
            return None;
        }
        let d = self.dim();
        let s: Vec<f64> = (0..d).map(|i| self.map[i * d + i]).collect();
        let mut lo = vec![0.0; d];
        let mut hi = vec![0.0; d];
        for i in 0..d {
            let a = (self.lo[i] - self.offset[i]) / s[i];
            let b = (self.hi[i] - self.offset[i]) / s[i];
            lo[i] = a.min(b);
            hi[i] = a.max(b);
        }
        Some(Piece {
            map: identity(d),
            offset: vec![0.0; d],
            lo,
            hi,
            poly: self.poly.compose_diag(&s, &self.offset),
            phase: self.phase.clone(),
        })
    }

    fn corners_x(&self) -> Vec<Vec<f64>> {
        let d = self.dim();
        let inv = to_dmatrix(&self.map, d).try_inverse().expect("validated nonsingular");
        (0..(1usize << d))
            .map(|c| {
                let u: Vec<f64> = (0..d)
                    .map(|k| if (c >> k) & 1 == 1 { self.hi[k] } else { self.lo[k] } - self.offset[k])
                    .collect();
                (0..d).map(|i| (0..d).map(|j| inv[(i, j)] * u[j]).sum()).collect()
            })
            .collect()
    }

    /// Bounding box of the support in global coordinates.
    pub fn bbox(&self) -> (Vec<f64>, Vec<f64>) {
        let d = self.dim();
        let mut lo = vec![f64::INFINITY; d];
        let mut hi = vec![f64::NEG_INFINITY; d];
        for c in self.corners_x() {
            for k in 0..d {
                lo[k] = lo[k].min(c[k]);
                hi[k] = hi[k].max(c[k]);
            }
        }
        (lo, hi)
    }

    /// The support as a counter-clockwise parallelogram (d = 2 only).
    fn polygon(&self) -> Vec<quad::Point> {
        let c = self.corners_x();
        // corner bit order (0,0),(1,0),(1,1),(0,1)
        [0usize, 1, 3, 2].iter().map(|&k| [c[k][0], c[k][1]]).collect()
    }

    /// `x -> piece(x - a)`.
    pub fn translate(&self, a: &[f64]) -> Piece {
        let d = self.dim();
        let ma: Vec<f64> = (0..d).map(|i| dot(&self.map[i * d..(i + 1) * d], a)).collect();
        let mut p = self.clone();
        for i in 0..d {
            p.offset[i] -= ma[i];
        }
        if let Some(nu) = &self.phase {
            p.poly = p.poly.scale(Complex64::from_polar(1.0, -2.0 * PI * dot(nu, a)));
        }
        p
    }

    /// `x -> s * piece(Bx)`.
    pub fn compose(&self, b: &DMatrix<f64>, s: f64) -> Piece {
        let d = self.dim();
        let m = to_dmatrix(&self.map, d) * b;
        let map = (0..d * d).map(|k| m[(k / d, k % d)]).collect();
        let phase = self
            .phase
            .as_ref()
            .map(|nu| (0..d).map(|i| (0..d).map(|j| b[(j, i)] * nu[j]).sum()).collect());
        Piece {
            map,
            offset: self.offset.clone(),
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            poly: self.poly.scale(Complex64::new(s, 0.0)),
            phase,
        }
    }

    fn phase_vec(&self) -> Vec<f64> {
        self.phase.clone().unwrap_or_else(|| vec![0.0; self.dim()])
    }

    /// `int P(Mx+t) e^{2 pi i <nu, x>} e^{-2 pi i <xi, x>} dx` in closed form.
    pub fn fourier_at(&self, xi: &[f64]) -> Complex64 {
        let d = self.dim();
        let m = to_dmatrix(&self.map, d);
        let det = m.determinant().abs();
        let inv_t = m.transpose().try_inverse().expect("validated nonsingular");
        let nu = self.phase_vec();
        let w: Vec<f64> = (0..d)
            .map(|i| 2.0 * PI * (0..d).map(|j| inv_t[(i, j)] * (xi[j] - nu[j])).sum::<f64>())
            .collect();
        let shift = Complex64::from_polar(1.0, dot(&w, &self.offset));
        self.poly.integrate_exp(&self.lo, &self.hi, &w) * shift / det
    }
}

fn boxes_overlap(a: &(Vec<f64>, Vec<f64>), b: &(Vec<f64>, Vec<f64>)) -> bool {
    a.0.iter().zip(&a.1).zip(b.0.iter().zip(&b.1)).all(|((al, ah), (bl, bh))| al < bh && bl < ah)
}

/// `int conj(a(x)) b(x) dx`, exact for aligned pairs and for zero-net-phase
/// pairs in the plane.
pub fn pair_integral(a: &Piece, b: &Piece) -> Result<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    if let (Some(ga), Some(gb)) = (a.globalize(), b.globalize()) {
        let lo: Vec<f64> = ga.lo.iter().zip(&gb.lo).map(|(x, y)| x.max(*y)).collect();
        let hi: Vec<f64> = ga.hi.iter().zip(&gb.hi).map(|(x, y)| x.min(*y)).collect();
        if lo.iter().zip(&hi).any(|(l, h)| l >= h) {
            return Ok(zero);
        }
        let prod = ga.poly.conj().mul(&gb.poly);
        // conj(e^{2 pi i <nu_a,x>}) e^{2 pi i <nu_b,x>} = e^{-i <w, x>}
        let w: Vec<f64> = a.phase_vec().iter().zip(b.phase_vec()).map(|(x, y)| 2.0 * PI * (x - y)).collect();
        return Ok(prod.integrate_exp(&lo, &hi, &w));
    }
    if !boxes_overlap(&a.bbox(), &b.bbox()) {
        return Ok(zero);
    }
    if a.dim() != 2 {
        return Err(Error::Unsupported("non-aligned pieces are integrated in the plane only".into()));
    }
    if a.phase_vec().iter().zip(b.phase_vec()).any(|(x, y)| (x - y).abs() > PHASE_EPS) {
        return Err(Error::Unsupported("non-aligned modulated pieces with distinct phases".into()));
    }
    let region = quad::clip_convex(&a.polygon(), &b.polygon());
    if region.is_empty() {
        return Ok(zero);
    }
    let deg: usize = a.poly.shape().iter().chain(b.poly.shape()).map(|s| s - 1).sum();
    let n = deg / 2 + 2;
    let f = |p: quad::Point| -> Complex64 {
        let x = [p[0], p[1]];
        a.poly.eval(&a.local(&x)).conj() * b.poly.eval(&b.local(&x))
    };
    Ok(quad::polygon_integral(&region, n, &f))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyticSignal {
    dim: usize,
    domain: Domain,
    pieces: Vec<Piece>,
}

impl AnalyticSignal {
    pub fn new(dim: usize, domain: Domain, pieces: Vec<Piece>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        for p in &pieces {
            p.validate(dim)?;
        }
        Ok(Self { dim, domain, pieces })
    }

    pub fn zero(dim: usize, domain: Domain) -> Self {
        Self { dim, domain, pieces: Vec::new() }
    }

    /// `c * chi_[lo, hi)`.
    pub fn indicator(domain: Domain, lo: &[f64], hi: &[f64], c: f64) -> Self {
        Self {
            dim: lo.len(),
            domain,
            pieces: vec![Piece::indicator(lo.to_vec(), hi.to_vec(), Complex64::new(c, 0.0))],
        }
    }

    /// The product `f_1(x_1) ... f_d(x_d)` of one-dimensional signals.
    pub fn tensor(factors: &[AnalyticSignal]) -> Result<Self> {
        let domain = factors.first().map(|f| f.domain).ok_or_else(|| Error::InvalidInput("no factors".into()))?;
        if factors.iter().any(|f| f.dim != 1 || !f.is_aligned() || f.domain != domain) {
            return Err(Error::Unsupported("tensor products of aligned one-dimensional signals only".into()));
        }
        let globals: Vec<Vec<Piece>> = factors
            .iter()
            .map(|f| f.pieces.iter().map(|p| p.globalize().expect("aligned")).collect())
            .collect();
        let mut combos: Vec<Vec<&Piece>> = vec![Vec::new()];
        for g in &globals {
            combos = combos
                .into_iter()
                .flat_map(|c| {
                    g.iter().map(move |p| {
                        let mut c = c.clone();
                        c.push(p);
                        c
                    })
                })
                .collect();
        }
        let d = factors.len();
        let pieces = combos
            .into_iter()
            .map(|c| {
                let lo = c.iter().map(|p| p.lo[0]).collect();
                let hi = c.iter().map(|p| p.hi[0]).collect();
                let factors: Vec<Vec<Complex64>> = c.iter().map(|p| p.poly.coefficients().to_vec()).collect();
                let phase: Vec<f64> = c.iter().map(|p| p.phase_vec()[0]).collect();
                Piece::boxed(lo, hi, Poly::tensor(&factors)).with_phase(phase)
            })
            .collect();
        Self::new(d, domain, pieces)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    pub fn is_aligned(&self) -> bool {
        self.pieces.iter().all(Piece::is_aligned)
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        self.pieces.iter().map(|p| p.eval(x)).sum()
    }

    /// Bounding box of the support, `None` for the empty signal.
    pub fn support(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        let mut it = self.pieces.iter().map(Piece::bbox);
        let first = it.next()?;
        Some(it.fold(first, |(mut lo, mut hi), (l, h)| {
            for k in 0..lo.len() {
                lo[k] = lo[k].min(l[k]);
                hi[k] = hi[k].max(h[k]);
            }
            (lo, hi)
        }))
    }

    pub fn translate(&self, a: &[f64]) -> Self {
        Self { dim: self.dim, domain: self.domain, pieces: self.pieces.iter().map(|p| p.translate(a)).collect() }
    }

    /// `x -> s * f(Bx)`.
    pub fn compose(&self, b: &DMatrix<f64>, s: f64) -> Self {
        Self { dim: self.dim, domain: self.domain, pieces: self.pieces.iter().map(|p| p.compose(b, s)).collect() }
    }

    /// `(D^n f)(x) = m^{n/2} f(D~^n x)`.
    pub fn dilate(&self, dil: &DilationMatrix, n: i32) -> Result<Self> {
        check_dim(self.dim, dil)?;
        if n == 0 {
            return Ok(self.clone());
        }
        let b = dil.pow_real(n)?;
        Ok(self.compose(&b, (dil.index_m() as f64).powf(n as f64 / 2.0)))
    }

    /// `(D^^n p)(xi) = m^{-n/2} p((D~^*)^{-n} xi)`.
    pub fn fourier_dilate(&self, dil: &DilationMatrix, n: i32) -> Result<Self> {
        check_dim(self.dim, dil)?;
        if n == 0 {
            return Ok(self.clone());
        }
        let b = dil.pow_real(-n)?.transpose();
        Ok(self.compose(&b, (dil.index_m() as f64).powf(-(n as f64) / 2.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let pieces = self.pieces.iter().map(|p| Piece { poly: p.poly.scale(c), ..p.clone() }).collect();
        Self { dim: self.dim, domain: self.domain, pieces }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().cloned());
        Ok(Self { dim: self.dim, domain: self.domain, pieces })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        if self.domain != other.domain {
            return Err(Error::DomainMismatch { expected: self.domain.name(), got: other.domain.name() });
        }
        Ok(())
    }

    /// Merges aligned pieces that share a phase into disjoint cells of
    /// their common breakpoint grid, dropping cells whose polynomials cancel.
    /// Non-aligned pieces are kept as they are.
    pub fn canonicalize(&self) -> Self {
        let mut groups: Vec<(Vec<f64>, Vec<Piece>)> = Vec::new();
        let mut rest = Vec::new();
        for p in &self.pieces {
            match p.globalize() {
                Some(g) => {
                    let nu = g.phase_vec();
                    match groups.iter_mut().find(|(k, _)| k.iter().zip(&nu).all(|(a, b)| (a - b).abs() <= PHASE_EPS)) {
                        Some((_, v)) => v.push(g),
                        None => groups.push((nu, vec![g])),
                    }
                }
                None => rest.push(p.clone()),
            }
        }
        let mut pieces = Vec::new();
        for (nu, group) in groups {
            pieces.extend(merge_cells(self.dim, &group).into_iter().map(|p| p.with_phase(nu.clone())));
        }
        pieces.extend(rest);
        Self { dim: self.dim, domain: self.domain, pieces }
    }

    /// `<f, g> = int conj(f) g`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_compatible(other)?;
        let ba: Vec<_> = self.pieces.iter().map(Piece::bbox).collect();
        let bb: Vec<_> = other.pieces.iter().map(Piece::bbox).collect();
        let mut terms = Vec::new();
        for (a, abox) in self.pieces.iter().zip(&ba) {
            for (b, bbox) in other.pieces.iter().zip(&bb) {
                if boxes_overlap(abox, bbox) {
                    terms.push(pair_integral(a, b)?);
                }
            }
        }
        Ok(crate::sum::pairwise(&terms))
    }

    /// Exact `L^2` norm, computed on the canonical form to avoid cancellation.
    pub fn l2_norm(&self) -> Result<f64> {
        let c = self.canonicalize();
        Ok(c.inner(&c)?.re.max(0.0).sqrt())
    }

    /// Closed-form Fourier transform of a time-domain signal at `xi`.
    pub fn fourier_at(&self, xi: &[f64]) -> Complex64 {
        self.pieces.iter().map(|p| p.fourier_at(xi)).sum()
    }
}

fn check_dim(d: usize, dil: &DilationMatrix) -> Result<()> {
    if dil.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: dil.dim() });
    }
    Ok(())
}

fn sorted_breaks(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.total_cmp(b));
    let mut out: Vec<f64> = Vec::with_capacity(v.len());
    for x in v {
        match out.last() {
            Some(&l) if (x - l).abs() <= 1e-12 * x.abs().max(1.0) => {}
            _ => out.push(x),
        }
    }
    out
}

fn locate(breaks: &[f64], x: f64) -> usize {
    // index of the closest breakpoint
    let i = breaks.partition_point(|b| *b < x);
    if i == 0 {
        0
    } else if i == breaks.len() || (x - breaks[i - 1]).abs() < (breaks[i] - x).abs() {
        i - 1
    } else {
        i
    }
}

fn poly_close(a: &Poly, b: &Poly) -> bool {
    if a.shape() != b.shape() {
        let s = a.add(&b.scale(Complex64::new(-1.0, 0.0)));
        return s.max_abs() <= 1e-14 * a.max_abs().max(b.max_abs());
    }
    a.coefficients()
        .iter()
        .zip(b.coefficients())
        .all(|(x, y)| (x - y).norm() <= 1e-14 * x.norm().max(y.norm()).max(f64::MIN_POSITIVE))
}

fn product_indices(ranges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    ranges.iter().fold(vec![Vec::new()], |acc, &(a, b)| {
        acc.into_iter()
            .flat_map(|prefix| {
                (a..b).map(move |i| {
                    let mut v = prefix.clone();
                    v.push(i);
                    v
                })
            })
            .collect()
    })
}

fn merge_cells(d: usize, group: &[Piece]) -> Vec<Piece> {
    let breaks: Vec<Vec<f64>> = (0..d)
        .map(|k| sorted_breaks(group.iter().flat_map(|p| [p.lo[k], p.hi[k]]).collect()))
        .collect();
    let shape: Vec<usize> = breaks.iter().map(|b| b.len().saturating_sub(1)).collect();
    let ncell: usize = shape.iter().product();
    let mut cells: Vec<Option<(Poly, f64)>> = vec![None; ncell];
    for p in group {
        let ranges: Vec<(usize, usize)> =
            (0..d).map(|k| (locate(&breaks[k], p.lo[k]), locate(&breaks[k], p.hi[k]))).collect();
        if ranges.iter().any(|(a, b)| a >= b) {
            continue;
        }
        let mag = p.poly.max_abs();
        for idx in product_indices(&ranges) {
            let flat = idx.iter().zip(&shape).fold(0usize, |acc, (i, s)| acc * s + i);
            cells[flat] = Some(match cells[flat].take() {
                Some((q, m)) => (q.add(&p.poly), m.max(mag)),
                None => (p.poly.clone(), mag),
            });
        }
    }
    let mut out: Vec<Piece> = Vec::new();
    for (flat, cell) in cells.into_iter().enumerate() {
        let Some((poly, mag)) = cell else { continue };
        if poly.max_abs() <= 1e-13 * mag {
            continue;
        }
        let mut rem = flat;
        let mut idx = vec![0; d];
        for k in (0..d).rev() {
            idx[k] = rem % shape[k];
            rem /= shape[k];
        }
        let lo: Vec<f64> = (0..d).map(|k| breaks[k][idx[k]]).collect();
        let hi: Vec<f64> = (0..d).map(|k| breaks[k][idx[k] + 1]).collect();
        if d == 1 {
            if let Some(last) = out.last_mut() {
                if last.hi[0] == lo[0] && poly_close(&last.poly, &poly) {
                    last.hi[0] = hi[0];
                    continue;
                }
            }
        }
        out.push(Piece::boxed(lo, hi, poly));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi(lo: f64, hi: f64) -> AnalyticSignal {
        AnalyticSignal::indicator(Domain::Time, &[lo], &[hi], 1.0)
    }

    #[test]
    fn dilation_of_box() {
        let d = DilationMatrix::scalar(1, 2).unwrap();
        let f = chi(0.0, 1.0).dilate(&d, 1).unwrap();
        let want = AnalyticSignal::indicator(Domain::Time, &[0.0], &[0.5], 2f64.sqrt());
        assert!(f.sub(&want).unwrap().l2_norm().unwrap() < 1e-15);
        assert!((f.l2_norm().unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn canonical_form_cancels() {
        let f = chi(0.0, 1.0).add(&chi(1.0, 2.0)).unwrap();
        let g = chi(0.0, 2.0);
        let c = f.sub(&g).unwrap().canonicalize();
        assert!(c.pieces().is_empty());
        assert_eq!(f.canonicalize().pieces().len(), 1);
    }

    #[test]
    fn box_fourier_transform() {
        // chi_[-1/2,1/2) -> sin(pi xi) / (pi xi)
        let f = chi(-0.5, 0.5);
        for xi in [0.0, 0.3, 1.0, 2.7] {
            let want = if xi == 0.0 { 1.0 } else { (PI * xi).sin() / (PI * xi) };
            assert!((f.fourier_at(&[xi]) - want).norm() < 1e-14);
        }
    }

    #[test]
    fn quincunx_pieces_integrate() {
        let q = DilationMatrix::quincunx();
        let f = AnalyticSignal::indicator(Domain::Time, &[0.0, 0.0], &[1.0, 1.0], 1.0);
        let g = f.dilate(&q, 1).unwrap();
        assert!(!g.is_aligned());
        assert!((g.l2_norm().unwrap() - 1.0).abs() < 1e-13);
        // overlap of the unit square with its quincunx image
        let ov = f.inner(&g).unwrap();
        let direct = 2f64.sqrt() * 0.25;
        assert!((ov.re - direct).abs() < 1e-13, "{ov}");
    }

    #[test]
    fn modulated_piece_translation() {
        let f = chi(0.0, 1.0);
        let p = Piece::indicator(vec![0.0], vec![1.0], Complex64::new(1.0, 0.0)).with_phase(vec![0.3]);
        let g = AnalyticSignal::new(1, Domain::Time, vec![p]).unwrap();
        let t = g.translate(&[0.25]);
        for x in [0.3, 0.9, 1.2] {
            assert!((t.eval(&[x]) - g.eval(&[x - 0.25])).norm() < 1e-15);
        }
        assert!((f.inner(&g).unwrap() - g.fourier_at(&[0.0])).norm() < 1e-14);
    }
}
