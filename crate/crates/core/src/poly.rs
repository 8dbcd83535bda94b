//! Tensor-product polynomials in `d` variables and their exact integrals
//! against complex exponentials over axis-aligned boxes.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `sum_alpha c_alpha u^alpha`, with `shape[i] - 1` the degree in `u_i`.
/// Coefficients are stored row-major over the multi-index, last axis fastest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Poly {
    shape: Vec<usize>,
    coef: Vec<Complex64>,
}

fn strides(shape: &[usize]) -> Vec<usize> {
    let mut s = vec![1; shape.len()];
    for i in (0..shape.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * shape[i + 1];
    }
    s
}

fn unravel(mut idx: usize, shape: &[usize]) -> Vec<usize> {
    let mut out = vec![0; shape.len()];
    for k in (0..shape.len()).rev() {
        out[k] = idx % shape[k];
        idx /= shape[k];
    }
    out
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

impl Poly {
    pub fn new(shape: Vec<usize>, coef: Vec<Complex64>) -> crate::Result<Self> {
        if shape.is_empty() || shape.contains(&0) || shape.iter().product::<usize>() != coef.len() {
            return Err(crate::Error::InvalidInput("polynomial shape does not match coefficients".into()));
        }
        Ok(Self { shape, coef })
    }

    pub fn constant(d: usize, c: Complex64) -> Self {
        Self { shape: vec![1; d], coef: vec![c] }
    }

    /// Product of univariate factors, `prod_i p_i(u_i)`.
    pub fn tensor(factors: &[Vec<Complex64>]) -> Self {
        let mut p = Self { shape: Vec::new(), coef: vec![Complex64::new(1.0, 0.0)] };
        for f in factors {
            let mut coef = Vec::with_capacity(p.coef.len() * f.len());
            for a in &p.coef {
                for b in f {
                    coef.push(a * b);
                }
            }
            p.shape.push(f.len());
            p.coef = coef;
        }
        p
    }

    /// A univariate polynomial in axis `axis` of a `d`-variate space.
    pub fn along(d: usize, axis: usize, c: &[Complex64]) -> Self {
        let factors: Vec<Vec<Complex64>> = (0..d)
            .map(|i| if i == axis { c.to_vec() } else { vec![Complex64::new(1.0, 0.0)] })
            .collect();
        Self::tensor(&factors)
    }

    pub fn dim(&self) -> usize {
        self.shape.len()
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coef
    }

    pub fn max_abs(&self) -> f64 {
        self.coef.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.coef.iter().all(|c| *c == ZERO)
    }

    pub fn eval(&self, u: &[f64]) -> Complex64 {
        // Horner along the last axis, then fold outwards.
        let mut vals = self.coef.clone();
        let mut len = vals.len();
        for axis in (0..self.dim()).rev() {
            let n = self.shape[axis];
            len /= n;
            for j in 0..len {
                let mut acc = ZERO;
                for k in (0..n).rev() {
                    acc = acc * u[axis] + vals[j * n + k];
                }
                vals[j] = acc;
            }
        }
        vals[0]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { shape: self.shape.clone(), coef: self.coef.iter().map(|c| c * s).collect() }
    }

    pub fn conj(&self) -> Self {
        Self { shape: self.shape.clone(), coef: self.coef.iter().map(|c| c.conj()).collect() }
    }

    fn reshaped(&self, shape: &[usize]) -> Vec<Complex64> {
        let mut out = vec![ZERO; shape.iter().product()];
        let st = strides(shape);
        for (i, c) in self.coef.iter().enumerate() {
            let idx = unravel(i, &self.shape);
            let j: usize = idx.iter().zip(&st).map(|(a, b)| a * b).sum();
            out[j] = *c;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let shape: Vec<usize> = self.shape.iter().zip(&other.shape).map(|(a, b)| *a.max(b)).collect();
        let a = self.reshaped(&shape);
        let b = other.reshaped(&shape);
        Self { shape, coef: a.iter().zip(&b).map(|(x, y)| x + y).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let shape: Vec<usize> = self.shape.iter().zip(&other.shape).map(|(a, b)| a + b - 1).collect();
        let st = strides(&shape);
        let mut coef = vec![ZERO; shape.iter().product()];
        for (i, a) in self.coef.iter().enumerate() {
            if *a == ZERO {
                continue;
            }
            let ia = unravel(i, &self.shape);
            for (j, b) in other.coef.iter().enumerate() {
                let ib = unravel(j, &other.shape);
                let k: usize = ia.iter().zip(&ib).zip(&st).map(|((x, y), s)| (x + y) * s).sum();
                coef[k] += a * b;
            }
        }
        Self { shape, coef }
    }

    /// Substitutes `u_axis = s * v + c`, returning a polynomial in `v`.
    pub fn compose_axis(&self, axis: usize, s: f64, c: f64) -> Self {
        let n = self.shape[axis];
        let st = strides(&self.shape);
        let mut coef = vec![ZERO; self.coef.len()];
        for (i, a) in self.coef.iter().enumerate() {
            if *a == ZERO {
                continue;
            }
            let k = unravel(i, &self.shape)[axis];
            let base = i - k * st[axis];
            // (s v + c)^k = sum_j C(k,j) s^j c^(k-j) v^j
            for j in 0..=k {
                let w = binomial(k, j) * s.powi(j as i32) * c.powi((k - j) as i32);
                coef[base + j * st[axis]] += a * w;
            }
        }
        debug_assert!(n == self.shape[axis]);
        Self { shape: self.shape.clone(), coef }
    }

    /// Substitutes `u = diag(s) v + c`.
    pub fn compose_diag(&self, s: &[f64], c: &[f64]) -> Self {
        (0..self.dim()).fold(self.clone(), |p, k| p.compose_axis(k, s[k], c[k]))
    }

    /// `int_box p(x) exp(-i <omega, x>) dx`, exactly.
    pub fn integrate_exp(&self, lo: &[f64], hi: &[f64], omega: &[f64]) -> Complex64 {
        let tables: Vec<Vec<Complex64>> = (0..self.dim())
            .map(|k| exp_moments(self.shape[k] - 1, lo[k], hi[k], omega[k]))
            .collect();
        let mut acc = ZERO;
        for (i, c) in self.coef.iter().enumerate() {
            if *c == ZERO {
                continue;
            }
            let idx = unravel(i, &self.shape);
            let m: Complex64 = idx.iter().enumerate().map(|(k, &j)| tables[k][j]).product();
            acc += c * m;
        }
        acc
    }
}

/// `[int_a^b x^k exp(-i w x) dx for k in 0..=kmax]`.
pub fn exp_moments(kmax: usize, a: f64, b: f64, w: f64) -> Vec<Complex64> {
    if b <= a {
        return vec![ZERO; kmax + 1];
    }
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let centred = centred_moments(kmax, h, w);
    let shift = Complex64::from_polar(1.0, -w * c);
    (0..=kmax)
        .map(|k| {
            let s: Complex64 = (0..=k)
                .map(|j| centred[j] * (binomial(k, j) * c.powi((k - j) as i32)))
                .sum();
            s * shift
        })
        .collect()
}

/// `J_j = int_{-h}^{h} y^j exp(-i w y) dy` for `j in 0..=kmax`.
fn centred_moments(kmax: usize, h: f64, w: f64) -> Vec<Complex64> {
    let wh = (w * h).abs();
    if w == 0.0 {
        return (0..=kmax)
            .map(|j| if j % 2 == 0 { Complex64::new(2.0 * h.powi(j as i32 + 1) / (j + 1) as f64, 0.0) } else { ZERO })
            .collect();
    }
    if wh <= 1.0 + kmax as f64 {
        // power series in (-i w y); only even total powers survive the symmetric interval
        return (0..=kmax)
            .map(|j| {
                let mut acc = ZERO;
                let mut term = Complex64::new(1.0, 0.0); // (-i w)^n / n!
                let mut n = 0usize;
                loop {
                    let p = j + n;
                    if p.is_multiple_of(2) {
                        let contrib = term * (2.0 * h.powi(p as i32 + 1) / (p + 1) as f64);
                        acc += contrib;
                        if n > 8 && contrib.norm() <= 1e-18 * acc.norm().max(f64::MIN_POSITIVE) {
                            break;
                        }
                    }
                    n += 1;
                    term *= Complex64::new(0.0, -w) / n as f64;
                    if n > 200 {
                        break;
                    }
                }
                acc
            })
            .collect();
    }
    // integration by parts: J_j = [y^j e^{-iwy}/(-iw)] - j/(-iw) J_{j-1}
    let miw = Complex64::new(0.0, -w);
    let ep = Complex64::from_polar(1.0, -w * h);
    let em = Complex64::from_polar(1.0, w * h);
    let mut out = Vec::with_capacity(kmax + 1);
    out.push((ep - em) / miw);
    for j in 1..=kmax {
        let boundary = (ep * h.powi(j as i32) - em * (-h).powi(j as i32)) / miw;
        let prev = out[j - 1];
        out.push(boundary - prev * (j as f64) / miw);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// Composite Gauss-free oracle: Simpson's rule with many panels.
    fn simpson(f: impl Fn(f64) -> Complex64, a: f64, b: f64, n: usize) -> Complex64 {
        let h = (b - a) / n as f64;
        let mut acc = f(a) + f(b);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += f(a + i as f64 * h) * w;
        }
        acc * (h / 3.0)
    }

    #[test]
    fn moments_match_simpson() {
        for &(a, b, w) in &[(0.0, 1.0, 0.0), (-0.3, 0.7, 0.5), (1.0, 3.0, 7.0), (-2.0, 2.5, 40.0), (0.1, 0.2, 3.0)] {
            let got = exp_moments(4, a, b, w);
            for (k, g) in got.iter().enumerate() {
                let want = simpson(|x| Complex64::from_polar(x.powi(k as i32), -w * x), a, b, 20000);
                assert!((g - want).norm() < 1e-9, "k={k} a={a} b={b} w={w}: {g} vs {want}");
            }
        }
    }

    #[test]
    fn box_integral_of_gaussian_free_example() {
        // int_0^1 int_0^2 x y dx dy = 1
        let p = Poly::tensor(&[vec![c(0.0), c(1.0)], vec![c(0.0), c(1.0)]]);
        let v = p.integrate_exp(&[0.0, 0.0], &[1.0, 2.0], &[0.0, 0.0]);
        assert!((v - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn algebra() {
        let p = Poly::tensor(&[vec![c(1.0), c(2.0)], vec![c(0.5), c(0.0), c(3.0)]]);
        let q = Poly::along(2, 0, &[c(-1.0), c(0.0), c(1.0)]);
        let u = [0.3, -1.7];
        assert!((p.mul(&q).eval(&u) - p.eval(&u) * q.eval(&u)).norm() < 1e-13);
        assert!((p.add(&q).eval(&u) - p.eval(&u) - q.eval(&u)).norm() < 1e-13);
        let r = p.compose_diag(&[2.0, -0.5], &[0.25, 1.0]);
        let v = [0.4, 0.9];
        let w = [2.0 * 0.4 + 0.25, -0.5 * 0.9 + 1.0];
        assert!((r.eval(&v) - p.eval(&w)).norm() < 1e-13);
    }
}
