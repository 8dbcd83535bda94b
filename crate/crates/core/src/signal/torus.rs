//! Sampled functions on the torus `T^d = [-1/2, 1/2)^d`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::reduce_to_cube;
use crate::sum;

/// Anything that can be evaluated at a point of the torus (periodic in each
/// coordinate with period one).
pub trait TorusSymbol: Send + Sync {
    fn dim(&self) -> usize;
    fn symbol_at(&self, zeta: &[f64]) -> Complex64;
}

/// Samples at `zeta_j = -1/2 + j / M` per axis, row-major, last axis fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusFunction {
    m: Vec<usize>,
    values: Vec<Complex64>,
}

impl TorusFunction {
    pub fn new(m: Vec<usize>, values: Vec<Complex64>) -> Result<Self> {
        if m.is_empty() || m.contains(&0) || values.len() != m.iter().product::<usize>() {
            return Err(Error::InvalidInput("torus grid shape does not match values".into()));
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::InvalidInput("torus values must be finite".into()));
        }
        Ok(Self { m, values })
    }

    pub fn from_fn(m: Vec<usize>, f: impl Fn(&[f64]) -> Complex64 + Sync) -> Result<Self> {
        let len = m.iter().product();
        let probe = Self { m: m.clone(), values: Vec::new() };
        let values = sum::map_indices(len, |j| f(&probe.point(j)));
        Self::new(m, values)
    }

    pub fn constant(d: usize, m: usize, c: Complex64) -> Self {
        Self { m: vec![m; d], values: vec![c; m.pow(d as u32)] }
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    pub fn grid(&self) -> &[usize] {
        &self.m
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn index(&self, flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dim()];
        let mut rem = flat;
        for k in (0..self.dim()).rev() {
            idx[k] = rem % self.m[k];
            rem /= self.m[k];
        }
        idx
    }

    pub fn point(&self, flat: usize) -> Vec<f64> {
        self.index(flat)
            .iter()
            .zip(&self.m)
            .map(|(&i, &m)| -0.5 + i as f64 / m as f64)
            .collect()
    }

    /// Nearest-sample lookup after reduction into the cube.
    pub fn nearest(&self, zeta: &[f64]) -> Complex64 {
        let mut flat = 0usize;
        for (k, &m) in self.m.iter().enumerate() {
            let t = ((reduce_to_cube(zeta[k]) + 0.5) * m as f64).round() as usize % m;
            flat = flat * m + t;
        }
        self.values[flat]
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self { m: self.m.clone(), values: self.values.iter().map(|v| f(*v)).collect() }
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::GridMismatch(format!("{:?} vs {:?}", self.m, other.m)));
        }
        Ok(Self {
            m: self.m.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(*a, *b)).collect(),
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_re(&self) -> f64 {
        self.values.iter().map(|v| v.re).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_re(&self) -> f64 {
        self.values.iter().map(|v| v.re).fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.zip_with(other, |a, b| a - b)?.max_abs())
    }

    /// Largest jump between neighbouring samples along any axis (periodic).
    pub fn max_jump(&self) -> f64 {
        self.jumps().into_iter().map(|(_, _, j)| j).fold(0.0, f64::max)
    }

    /// `(flat, neighbour, |difference|)` for every axis-neighbour pair.
    fn jumps(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::with_capacity(self.values.len() * self.dim());
        let mut stride = 1usize;
        let mut strides = vec![0; self.dim()];
        for k in (0..self.dim()).rev() {
            strides[k] = stride;
            stride *= self.m[k];
        }
        for j in 0..self.values.len() {
            let idx = self.index(j);
            for k in 0..self.dim() {
                let next = if idx[k] + 1 == self.m[k] { j + strides[k] - self.m[k] * strides[k] } else { j + strides[k] };
                out.push((j, next, (self.values[next] - self.values[j]).norm()));
            }
        }
        out
    }

    /// Flags samples adjacent to a neighbour jump larger than `threshold`.
    pub fn jump_mask(&self, threshold: f64) -> Vec<bool> {
        let mut mask = vec![false; self.values.len()];
        for (a, b, j) in self.jumps() {
            if j > threshold {
                mask[a] = true;
                mask[b] = true;
            }
        }
        mask
    }
}

impl TorusSymbol for TorusFunction {
    fn dim(&self) -> usize {
        self.m.len()
    }

    fn symbol_at(&self, zeta: &[f64]) -> Complex64 {
        self.nearest(zeta)
    }
}

/// A symbol given by a closure.
pub struct FnSymbol<F> {
    dim: usize,
    f: F,
}

impl<F: Fn(&[f64]) -> Complex64 + Send + Sync> FnSymbol<F> {
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, f }
    }
}

impl<F: Fn(&[f64]) -> Complex64 + Send + Sync> TorusSymbol for FnSymbol<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn symbol_at(&self, zeta: &[f64]) -> Complex64 {
        (self.f)(zeta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nearest_is_periodic() {
        let t = TorusFunction::from_fn(vec![8], |z| Complex64::new(z[0], 0.0)).unwrap();
        assert_eq!(t.point(0), vec![-0.5]);
        assert_eq!(t.nearest(&[0.25]).re, 0.25);
        assert_eq!(t.nearest(&[1.25]).re, 0.25);
        assert_eq!(t.nearest(&[0.49]).re, -0.5);
        assert_eq!(t.nearest(&[-0.51]).re, -0.5);
        assert_eq!(t.nearest(&[-0.6]).re, 0.375);
    }

    #[test]
    fn jumps_of_an_indicator() {
        let t = TorusFunction::from_fn(vec![16], |z| Complex64::new(if z[0].abs() < 0.25 { 1.0 } else { 0.0 }, 0.0))
            .unwrap();
        assert_eq!(t.max_jump(), 1.0);
        assert_eq!(t.jump_mask(0.5).iter().filter(|m| **m).count(), 4);
    }
}
