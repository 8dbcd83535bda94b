//! Seeded test corpora: Gaussians, Haar boxes, random band-limited spectra,
//! random compact piecewise polynomials and random filters.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bracket::FilterSeq;
use crate::error::Result;
use crate::poly::Poly;
use crate::signal::{AnalyticSignal, Domain, GridSignal, Piece, Signal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `e^{-pi |x|^2}` sampled on `[-L, L)^d`.
pub fn gaussian_grid(d: usize, half_width: f64, n: usize) -> Result<GridSignal> {
    GridSignal::from_fn(Domain::Time, vec![half_width; d], vec![n; d], |x| {
        c((-PI * x.iter().map(|v| v * v).sum::<f64>()).exp())
    })
}

/// `chi_[0,1)^d`, exact.
pub fn unit_box(d: usize) -> AnalyticSignal {
    AnalyticSignal::indicator(Domain::Time, &vec![0.0; d], &vec![1.0; d], 1.0)
}

/// `chi_[0,1)` sampled on `[-L, L)`.
pub fn haar_grid(half_width: f64, n: usize) -> Result<GridSignal> {
    GridSignal::sample(&unit_box(1), vec![half_width], vec![n])
}

/// `chi_[0,1) - chi_[1,2)`: zero mean, dyadic breakpoints.
pub fn haar_test_signal() -> AnalyticSignal {
    let a = AnalyticSignal::indicator(Domain::Time, &[0.0], &[1.0], 1.0);
    let b = AnalyticSignal::indicator(Domain::Time, &[1.0], &[2.0], 1.0);
    a.sub(&b).expect("same shape")
}

/// `(1 - u^2)^2` on `|u| < 1`, `u = (xi - centre) / width`, times `coef`.
pub fn bump(centre: f64, width: f64, coef: Complex64) -> Piece {
    let poly = Poly::along(1, 0, &[c(1.0), c(0.0), c(-2.0), c(0.0), c(1.0)]).scale(coef);
    Piece { map: vec![1.0 / width], offset: vec![-centre / width], lo: vec![-1.0], hi: vec![1.0], poly, phase: None }
}

/// A spectrum made of one to four random bumps inside `[-1, 1]`.
pub fn random_bandlimited(rng: &mut impl Rng) -> Signal {
    let count = rng.gen_range(1..=4);
    let pieces = (0..count)
        .map(|_| {
            let width = rng.gen_range(0.1..0.25);
            let centre = rng.gen_range(-1.0 + width..1.0 - width);
            let coef = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            bump(centre, width, coef)
        })
        .collect();
    AnalyticSignal::new(1, Domain::Frequency, pieces).expect("valid pieces").into()
}

/// `count` band-limited spectra from the seed.
pub fn bandlimited_corpus(seed: u64, count: usize) -> Vec<Signal> {
    let mut r = rng(seed);
    (0..count).map(|_| random_bandlimited(&mut r)).collect()
}

/// A random compact piecewise polynomial of degree at most two on dyadic
/// cells of `[-2, 2)^d`.
pub fn random_compact(rng: &mut impl Rng, d: usize) -> Signal {
    let cells = rng.gen_range(1..=4);
    let pieces = (0..cells)
        .map(|_| {
            let lo: Vec<f64> = (0..d).map(|_| rng.gen_range(-8i32..7) as f64 / 4.0).collect();
            let hi: Vec<f64> = lo.iter().map(|l| l + rng.gen_range(1..=4) as f64 / 4.0).collect();
            let factors: Vec<Vec<Complex64>> = (0..d)
                .map(|_| {
                    (0..rng.gen_range(1..=3))
                        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                        .collect()
                })
                .collect();
            Piece::boxed(lo, hi, Poly::tensor(&factors))
        })
        .collect();
    AnalyticSignal::new(d, Domain::Time, pieces).expect("valid pieces").into()
}

/// A random filter with taps in `{-r..r}^d`.
pub fn random_filter(rng: &mut impl Rng, d: usize, r: i64) -> FilterSeq {
    let count = rng.gen_range(1..=4);
    let taps = (0..count)
        .map(|_| {
            let idx = (0..d).map(|_| rng.gen_range(-r..=r)).collect();
            (idx, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        })
        .collect();
    FilterSeq::new(d, taps).expect("consistent dimension")
}

/// A band-limited spectrum supported in `[-4, -1/2) u (1/2, 4]`.
pub fn octave_bump_spectrum() -> Signal {
    let pieces = vec![
        bump(2.0, 1.5, Complex64::new(1.0, 0.5)),
        bump(-1.5, 1.0, Complex64::new(-0.25, 0.75)),
        bump(-3.0, 0.75, c(0.5)),
    ];
    AnalyticSignal::new(1, Domain::Frequency, pieces).expect("valid pieces").into()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpora_are_reproducible() {
        assert_eq!(bandlimited_corpus(7, 3), bandlimited_corpus(7, 3));
        assert_ne!(bandlimited_corpus(7, 3), bandlimited_corpus(8, 3));
    }

    #[test]
    fn bump_profile() {
        let s = AnalyticSignal::new(1, Domain::Frequency, vec![bump(0.5, 0.25, c(2.0))]).unwrap();
        assert!((s.eval(&[0.5]).re - 2.0).abs() < 1e-15);
        let u: f64 = 0.4;
        assert!((s.eval(&[0.6]).re - 2.0 * (1.0 - u * u).powi(2)).abs() < 1e-14);
        assert_eq!(s.eval(&[0.8]).re, 0.0);
    }
}
