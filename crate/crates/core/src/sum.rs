//! Deterministic summation helpers.
//!
//! Every reduction whose result is reported goes through [`pairwise`], which
//! fixes the association order so serial and parallel evaluation agree
//! bit-for-bit.

use num_complex::Complex64;

const BLOCK: usize = 8;

/// Pairwise (tree) summation in a fixed order.
pub fn pairwise(values: &[Complex64]) -> Complex64 {
    if values.len() <= BLOCK {
        return values.iter().fold(Complex64::new(0.0, 0.0), |acc, v| acc + v);
    }
    let mid = values.len() / 2;
    pairwise(&values[..mid]) + pairwise(&values[mid..])
}

pub fn pairwise_real(values: &[f64]) -> f64 {
    if values.len() <= BLOCK {
        return values.iter().fold(0.0, |a, b| a + b);
    }
    let mid = values.len() / 2;
    pairwise_real(&values[..mid]) + pairwise_real(&values[mid..])
}

/// Maps `f` over `0..n`, in parallel when the `parallel` feature is on.
/// The output order is the index order regardless of scheduling.
pub fn map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Serial counterpart of [`map_indices`], used to check that both agree.
pub fn map_indices_serial<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive_on_small_input() {
        let v: Vec<Complex64> = (0..5).map(|i| Complex64::new(i as f64, -(i as f64))).collect();
        assert_eq!(pairwise(&v), Complex64::new(10.0, -10.0));
    }

    #[test]
    fn pairwise_is_accurate_on_long_input() {
        let v = vec![0.1f64; 1 << 16];
        let s = pairwise_real(&v);
        assert!((s - 6553.6).abs() < 1e-9);
    }
}
