//! Dilation matrices, embeddings of `Z^d` into `R^d`, annihilator lattices and
//! coset digit sets.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

pub type IntMatrix = Vec<Vec<i64>>;

fn check_square(entries: &IntMatrix) -> Result<usize> {
    let d = entries.len();
    if d == 0 {
        return Err(Error::InvalidInput("empty matrix".into()));
    }
    for row in entries {
        if row.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: row.len() });
        }
    }
    Ok(d)
}

/// Exact determinant by cofactor expansion (d is at most 3 in practice).
pub fn int_det(a: &IntMatrix) -> i128 {
    let d = a.len();
    match d {
        0 => 1,
        1 => a[0][0] as i128,
        2 => a[0][0] as i128 * a[1][1] as i128 - a[0][1] as i128 * a[1][0] as i128,
        _ => (0..d)
            .map(|j| {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * a[0][j] as i128 * int_det(&minor(a, 0, j))
            })
            .sum(),
    }
}

fn minor(a: &IntMatrix, row: usize, col: usize) -> IntMatrix {
    a.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, v)| *v).collect())
        .collect()
}

/// Adjugate, so that `a * adj(a) = det(a) I`.
pub fn int_adjugate(a: &IntMatrix) -> Vec<Vec<i128>> {
    let d = a.len();
    if d == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0i128; d]; d];
    for (i, row) in adj.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            *v = sign * int_det(&minor(a, j, i));
        }
    }
    adj
}

pub fn int_transpose(a: &IntMatrix) -> IntMatrix {
    let d = a.len();
    (0..d).map(|i| (0..d).map(|j| a[j][i]).collect()).collect()
}

fn int_matmul_checked(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    let d = a.len();
    let mut out = vec![vec![0i64; d]; d];
    for i in 0..d {
        for j in 0..d {
            let mut acc: i64 = 0;
            for (k, bk) in b.iter().enumerate() {
                acc = acc.checked_add(a[i][k].checked_mul(bk[j])?)?;
            }
            out[i][j] = acc;
        }
    }
    Some(out)
}

fn int_identity(d: usize) -> IntMatrix {
    (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn int_matvec(a: &IntMatrix, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

fn to_real(a: &IntMatrix) -> DMatrix<f64> {
    let d = a.len();
    DMatrix::from_fn(d, d, |i, j| a[i][j] as f64)
}

fn rows_of(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect()
}

/// An integer expanding matrix `D~` together with its index `m = |det D~|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DilationJson", into = "DilationJson")]
pub struct DilationMatrix {
    entries: IntMatrix,
    det: i64,
}

#[derive(Serialize, Deserialize)]
struct DilationJson {
    dim: usize,
    entries: IntMatrix,
}

impl TryFrom<DilationJson> for DilationMatrix {
    type Error = Error;
    fn try_from(raw: DilationJson) -> Result<Self> {
        let m = DilationMatrix::new(raw.entries)?;
        if m.dim() != raw.dim {
            return Err(Error::DimensionMismatch { expected: raw.dim, got: m.dim() });
        }
        Ok(m)
    }
}

impl From<DilationMatrix> for DilationJson {
    fn from(m: DilationMatrix) -> Self {
        DilationJson { dim: m.dim(), entries: m.entries }
    }
}

impl DilationMatrix {
    /// Validates a square integer matrix as a dilation: nonsingular, and every
    /// eigenvalue of modulus strictly greater than one. The expansion test is
    /// run on the inverse: its spectral radius must stay below `1 - EPS_EIG`.
    pub fn new(entries: IntMatrix) -> Result<Self> {
        let d = check_square(&entries)?;
        let det = int_det(&entries);
        if det == 0 {
            return Err(Error::SingularMatrix);
        }
        let det = i64::try_from(det).map_err(|_| Error::InvalidInput("determinant overflows i64".into()))?;
        let inv = to_real(&entries)
            .try_inverse()
            .ok_or(Error::SingularMatrix)?;
        let rho = inv
            .complex_eigenvalues()
            .iter()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max);
        if rho >= 1.0 - tol::EPS_EIG {
            return Err(Error::NotExpanding { min_modulus: 1.0 / rho });
        }
        debug_assert_eq!(d, entries.len());
        Ok(Self { entries, det })
    }

    pub fn scalar(d: usize, s: i64) -> Result<Self> {
        Self::new((0..d).map(|i| (0..d).map(|j| if i == j { s } else { 0 }).collect()).collect())
    }

    pub fn quincunx() -> Self {
        Self::new(vec![vec![1, 1], vec![1, -1]]).expect("quincunx is a dilation")
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &IntMatrix {
        &self.entries
    }

    pub fn det(&self) -> i64 {
        self.det
    }

    pub fn det_sign(&self) -> i64 {
        self.det.signum()
    }

    /// Index of the multiresolution structure, `m = |det D~|`.
    pub fn index_m(&self) -> u64 {
        self.det.unsigned_abs()
    }

    pub fn is_diagonal(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| i == j || self.entries[i][j] == 0))
    }

    pub fn transpose(&self) -> Self {
        Self { entries: int_transpose(&self.entries), det: self.det }
    }

    pub fn real(&self) -> DMatrix<f64> {
        to_real(&self.entries)
    }

    /// Integer power `D~^k` for `k >= 0`, or `None` on overflow.
    pub fn int_pow(&self, k: u32) -> Option<IntMatrix> {
        let mut acc = int_identity(self.dim());
        for _ in 0..k {
            acc = int_matmul_checked(&acc, &self.entries)?;
        }
        Some(acc)
    }

    /// Real power `D~^n` for any integer `n`, exact for `n >= 0` and formed from
    /// the exact adjugate of `D~^|n|` for `n < 0`.
    pub fn pow_real(&self, n: i32) -> Result<DMatrix<f64>> {
        check_level(n)?;
        let p = self
            .int_pow(n.unsigned_abs())
            .ok_or(Error::LevelOverflow { level: n, max: tol::N_MAX })?;
        if p.iter().flatten().any(|v| v.unsigned_abs() > (1u64 << 52)) {
            return Err(Error::LevelOverflow { level: n, max: tol::N_MAX });
        }
        if n >= 0 {
            return Ok(to_real(&p));
        }
        let det = int_det(&p) as f64;
        let adj = int_adjugate(&p);
        let d = self.dim();
        Ok(DMatrix::from_fn(d, d, |i, j| adj[i][j] as f64 / det))
    }

    /// `gamma ~ gamma'` modulo `D~ Z^d`, decided exactly with the adjugate.
    pub fn equivalent(&self, a: &[i64], b: &[i64]) -> bool {
        let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        let adj = int_adjugate(&self.entries);
        let det = self.det as i128;
        adj.iter().all(|row| {
            let v: i128 = row.iter().zip(&diff).map(|(c, x)| c * *x as i128).sum();
            v % det == 0
        })
    }

    /// The canonical representatives of `Z^d / D~ Z^d`: the integer points of
    /// `D~ [0,1)^d`, in lexicographic order.
    pub fn coset_reps(&self) -> Vec<Vec<i64>> {
        let d = self.dim();
        let mut lo = vec![0i64; d];
        let mut hi = vec![0i64; d];
        for corner in 0..(1usize << d) {
            let v: Vec<i64> = (0..d).map(|k| ((corner >> k) & 1) as i64).collect();
            let img = int_matvec(&self.entries, &v);
            for i in 0..d {
                lo[i] = lo[i].min(img[i]);
                hi[i] = hi[i].max(img[i]);
            }
        }
        let adj = int_adjugate(&self.entries);
        let det = self.det as i128;
        let abs_det = det.abs();
        let sign = det.signum();
        let mut reps = Vec::new();
        let mut point = lo.clone();
        loop {
            let inside = adj.iter().all(|row| {
                let v: i128 = row.iter().zip(&point).map(|(c, x)| c * *x as i128).sum::<i128>() * sign;
                (0..abs_det).contains(&v)
            });
            if inside {
                reps.push(point.clone());
            }
            // odometer over the bounding box, last axis fastest
            let mut axis = d;
            loop {
                if axis == 0 {
                    debug_assert_eq!(reps.len() as u64, self.index_m());
                    return reps;
                }
                axis -= 1;
                if point[axis] < hi[axis] {
                    point[axis] += 1;
                    for (k, p) in point.iter_mut().enumerate().skip(axis + 1) {
                        *p = lo[k];
                    }
                    break;
                }
            }
        }
    }

    /// The `m` torus points `(D~^*)^{-1} gamma mod Z^d`, `gamma` over the coset
    /// representatives of `D~^*`, each reduced into `[-1/2, 1/2)^d`.
    pub fn dual_fiber_offsets(&self) -> Vec<Vec<f64>> {
        let t = self.transpose();
        let adj = int_adjugate(&t.entries);
        let det = t.det as f64;
        t.coset_reps()
            .iter()
            .map(|g| {
                adj.iter()
                    .map(|row| {
                        let v: i128 = row.iter().zip(g).map(|(c, x)| c * *x as i128).sum();
                        reduce_to_cube(v as f64 / det)
                    })
                    .collect()
            })
            .collect()
    }
}

/// Reduces a real number into `[-1/2, 1/2)` modulo 1.
pub fn reduce_to_cube(x: f64) -> f64 {
    let r = x - (x + 0.5).floor();
    if r >= 0.5 {
        r - 1.0
    } else {
        r
    }
}

fn check_level(n: i32) -> Result<()> {
    if n.abs() > tol::N_MAX {
        return Err(Error::LevelOverflow { level: n, max: tol::N_MAX });
    }
    Ok(())
}

/// A nonsingular real matrix `A` representing an embedding `theta = A iota`
/// of `Z^d` into `R^d`, with the basis `(A^*)^{-1}` of its annihilator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "EmbeddingJson", into = "EmbeddingJson")]
pub struct Embedding {
    matrix: DMatrix<f64>,
    det: f64,
    ann_basis: DMatrix<f64>,
}

#[derive(Serialize, Deserialize)]
struct EmbeddingJson {
    dim: usize,
    matrix: Vec<Vec<f64>>,
}

impl TryFrom<EmbeddingJson> for Embedding {
    type Error = Error;
    fn try_from(raw: EmbeddingJson) -> Result<Self> {
        let e = Embedding::from_rows(&raw.matrix)?;
        if e.dim() != raw.dim {
            return Err(Error::DimensionMismatch { expected: raw.dim, got: e.dim() });
        }
        Ok(e)
    }
}

impl From<Embedding> for EmbeddingJson {
    fn from(e: Embedding) -> Self {
        EmbeddingJson { dim: e.dim(), matrix: rows_of(&e.matrix) }
    }
}

impl Embedding {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::InvalidInput("embedding matrix must be square".into()));
        }
        let det = matrix.determinant();
        if !det.is_finite() || det.abs() <= tol::EPS_SING {
            return Err(Error::SingularMatrix);
        }
        let ann_basis = matrix.transpose().try_inverse().ok_or(Error::SingularMatrix)?;
        Ok(Self { matrix, det, ann_basis })
    }

    fn with_basis(matrix: DMatrix<f64>, ann_basis: DMatrix<f64>) -> Self {
        let det = matrix.determinant();
        Self { matrix, det, ann_basis }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidInput("embedding matrix must be square".into()));
        }
        Self::new(DMatrix::from_fn(d, d, |i, j| rows[i][j]))
    }

    /// The natural embedding `iota`.
    pub fn identity(d: usize) -> Self {
        Self::with_basis(DMatrix::identity(d, d), DMatrix::identity(d, d))
    }

    /// `iota_n(gamma) = D~^{-n} gamma`; the annihilator is `(D~^*)^n Z^d`.
    pub fn level(dilation: &DilationMatrix, n: i32) -> Result<Self> {
        let matrix = dilation.pow_real(-n)?;
        let ann_basis = dilation.pow_real(n)?.transpose();
        Ok(Self::with_basis(matrix, ann_basis))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        rows_of(&self.matrix)
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    pub fn ann_basis(&self) -> &DMatrix<f64> {
        &self.ann_basis
    }

    pub fn is_diagonal(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| i == j || self.matrix[(i, j)] == 0.0))
    }

    /// `theta(gamma) = A gamma`.
    pub fn apply(&self, gamma: &[i64]) -> Vec<f64> {
        let d = self.dim();
        (0..d)
            .map(|i| (0..d).map(|j| self.matrix[(i, j)] * gamma[j] as f64).sum())
            .collect()
    }

    /// `A^* xi`, whose class mod `Z^d` is the dual homomorphism applied to `xi`.
    pub fn dual(&self, xi: &[f64]) -> Vec<f64> {
        let d = self.dim();
        (0..d)
            .map(|i| (0..d).map(|j| self.matrix[(j, i)] * xi[j]).sum())
            .collect()
    }

    /// The dual homomorphism reduced into the cube `[-1/2, 1/2)^d`.
    pub fn dual_torus(&self, xi: &[f64]) -> Vec<f64> {
        self.dual(xi).into_iter().map(reduce_to_cube).collect()
    }

    /// `(A^*)^{-1} v` for a real vector `v`.
    pub fn ann_apply(&self, v: &[f64]) -> Vec<f64> {
        let d = self.dim();
        (0..d)
            .map(|i| (0..d).map(|j| self.ann_basis[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Maximum of `|exp(2 pi i <A gamma, beta>) - 1|` over `|gamma|_inf <= window`
    /// and annihilator points `beta = (A^*)^{-1} k`, `|k|_inf <= radius`.
    pub fn character_defect(&self, window: i64, radius: i64) -> f64 {
        let d = self.dim();
        let gammas = int_cube(d, window);
        let ks = int_cube(d, radius);
        let mut worst = 0.0f64;
        for g in &gammas {
            let x = self.apply(g);
            for k in &ks {
                let kf: Vec<f64> = k.iter().map(|&v| v as f64).collect();
                let beta = self.ann_apply(&kf);
                let phase: f64 = x.iter().zip(&beta).map(|(a, b)| a * b).sum();
                let z = num_complex::Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase);
                worst = worst.max((z - 1.0).norm());
            }
        }
        worst
    }
}

/// All integer points of the cube `{-r..r}^d`, lexicographic.
pub fn int_cube(d: usize, r: i64) -> Vec<Vec<i64>> {
    let side = (2 * r + 1) as usize;
    let total = side.pow(d as u32);
    (0..total)
        .map(|mut idx| {
            let mut p = vec![0i64; d];
            for k in (0..d).rev() {
                p[k] = (idx % side) as i64 - r;
                idx /= side;
            }
            p
        })
        .collect()
}

/// Integer points with `|k|_inf == r` (a single shell), lexicographic.
pub fn int_shell(d: usize, r: i64) -> Vec<Vec<i64>> {
    int_cube(d, r)
        .into_iter()
        .filter(|p| p.iter().map(|v| v.abs()).max().unwrap_or(0) == r)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dil(rows: &[&[i64]]) -> DilationMatrix {
        DilationMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    /// Independent oracle: count classes of a box of integer points under the
    /// relation `D^{-1}(a - b) in Z^d`, tested in floating point.
    fn brute_force_cosets(d: &DilationMatrix, r: i64) -> usize {
        let inv = d.real().try_inverse().unwrap();
        let mut classes: Vec<Vec<i64>> = Vec::new();
        for p in int_cube(d.dim(), r) {
            let fresh = classes.iter().all(|c| {
                let diff: Vec<f64> = p.iter().zip(c).map(|(a, b)| (a - b) as f64).collect();
                let v = &inv * nalgebra::DVector::from_vec(diff);
                v.iter().any(|x| (x - x.round()).abs() > 1e-9)
            });
            if fresh {
                classes.push(p);
            }
        }
        classes.len()
    }

    #[test]
    fn index_of_small_dilations() {
        assert_eq!(dil(&[&[2]]).index_m(), 2);
        let q = dil(&[&[1, 1], &[1, -1]]);
        assert_eq!((q.dim(), q.index_m(), q.det_sign()), (2, 2, -1));
        assert_eq!(brute_force_cosets(&q, 4), 2);
    }

    #[test]
    fn identity_is_not_expanding() {
        assert!(matches!(
            DilationMatrix::new(vec![vec![1, 0], vec![0, 1]]),
            Err(Error::NotExpanding { .. })
        ));
        assert!(matches!(DilationMatrix::new(vec![vec![0]]), Err(Error::SingularMatrix)));
        // eigenvalues 2 and 1/2... det 1 with a contracting direction
        assert!(DilationMatrix::new(vec![vec![2, 1], vec![1, 1]]).is_err());
        assert!(DilationMatrix::new(vec![vec![1, 2]]).is_err());
    }

    #[test]
    fn coset_examples() {
        assert_eq!(dil(&[&[2]]).coset_reps(), vec![vec![0], vec![1]]);
        assert_eq!(dil(&[&[3]]).coset_reps(), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(dil(&[&[1, 1], &[1, -1]]).coset_reps(), vec![vec![0, 0], vec![1, 0]]);
        assert_eq!(dil(&[&[-2]]).coset_reps(), vec![vec![-1], vec![0]]);
    }

    #[test]
    fn coset_reps_are_pairwise_inequivalent() {
        for d in [dil(&[&[2, 0], &[0, 2]]), dil(&[&[2, 1], &[0, 2]]), DilationMatrix::quincunx()] {
            let reps = d.coset_reps();
            assert_eq!(reps.len() as u64, d.index_m());
            for i in 0..reps.len() {
                for j in 0..i {
                    assert!(!d.equivalent(&reps[i], &reps[j]));
                }
            }
        }
    }

    #[test]
    fn fiber_offsets() {
        let f = dil(&[&[2]]).dual_fiber_offsets();
        assert_eq!(f, vec![vec![0.0], vec![-0.5]]);
        let q = DilationMatrix::quincunx().dual_fiber_offsets();
        assert_eq!(q.len(), 2);
        assert!(q.contains(&vec![0.0, 0.0]));
        assert!(q.contains(&vec![-0.5, -0.5]));
    }

    #[test]
    fn level_embeddings() {
        let d = dil(&[&[2]]);
        let e0 = Embedding::level(&d, 0).unwrap();
        assert_eq!(e0.matrix()[(0, 0)], 1.0);
        let e1 = Embedding::level(&d, 1).unwrap();
        assert_eq!(e1.matrix()[(0, 0)], 0.5);
        assert_eq!(e1.ann_basis()[(0, 0)], 2.0);
        let q = DilationMatrix::quincunx();
        let em = Embedding::level(&q, -1).unwrap();
        assert_eq!(em.matrix(), &q.real());
        let expected = q.real().transpose().try_inverse().unwrap();
        assert!((em.ann_basis() - expected).abs().max() < 1e-15);
        assert!(em.character_defect(3, 3) < tol::EPS_CHAR);
        assert!(matches!(Embedding::level(&d, 17), Err(Error::LevelOverflow { .. })));
    }

    #[test]
    fn json_shapes() {
        let q = DilationMatrix::quincunx();
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"{"dim":2,"entries":[[1,1],[1,-1]]}"#);
        let back: DilationMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<DilationMatrix>(r#"{"dim":1,"entries":[[1]]}"#).is_err());
        let e = Embedding::identity(2);
        assert_eq!(serde_json::to_string(&e).unwrap(), r#"{"dim":2,"matrix":[[1.0,0.0],[0.0,1.0]]}"#);
    }
}
