//! Dense real linear algebra and the tolerance policy shared by every module.
//!
//! Matrices and vectors are plain `nalgebra` dynamic types. Everything here is
//! a pure function of its inputs.

use nalgebra::{DMatrix, DVector};

pub type Matrix = DMatrix<f64>;
pub type Vector = DVector<f64>;

/// Absolute thresholds used when floating-point results stand in for exact
/// comparisons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Singular values below `rank_tol * sigma_max` are treated as zero.
    pub rank_tol: f64,
    /// An inequality `a < b` is only accepted as strict when `a < b - strict_tol`.
    pub strict_tol: f64,
    /// Points closer than this are the same point; coefficients smaller than
    /// this are zero.
    pub dedupe_tol: f64,
    /// Relative residual at which pursuit algorithms stop.
    pub residual_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rank_tol: 1e-10,
            strict_tol: 1e-9,
            dedupe_tol: 1e-8,
            residual_tol: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn is_valid(&self) -> bool {
        [
            self.rank_tol,
            self.strict_tol,
            self.dedupe_tol,
            self.residual_tol,
        ]
        .iter()
        .all(|t| t.is_finite() && *t > 0.0)
    }
}

pub fn is_finite(m: &Matrix) -> bool {
    m.iter().all(|v| v.is_finite())
}

/// Thin SVD by one-sided Jacobi rotations.
///
/// Returns `(w, sigma, v)` with `m = w vᵀ` where the columns of `w` are
/// orthogonal with norms `sigma`, and `v` is orthogonal. For wide inputs the
/// transpose is decomposed and the roles of `w` and `v` are swapped by the
/// caller.
fn jacobi(m: &Matrix) -> (Matrix, Vector, Matrix) {
    let cols = m.ncols();
    let mut w = m.clone();
    let mut v = Matrix::identity(cols, cols);
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha = w.column(p).norm_squared();
                let beta = w.column(q).norm_squared();
                let gamma = w.column(p).dot(&w.column(q));
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for target in [&mut w, &mut v] {
                    for i in 0..target.nrows() {
                        let a = target[(i, p)];
                        let b = target[(i, q)];
                        target[(i, p)] = c * a - s * b;
                        target[(i, q)] = s * a + c * b;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let sigma = Vector::from_iterator(cols, w.column_iter().map(|c| c.norm()));
    (w, sigma, v)
}

/// Singular values in no particular order.
fn singular_values(m: &Matrix) -> Vector {
    if m.nrows() >= m.ncols() {
        jacobi(m).1
    } else {
        jacobi(&m.transpose()).1
    }
}

/// Numerical rank: the number of singular values above `rank_tol` relative to
/// the largest one.
pub fn rank(m: &Matrix, tol: &Tolerances) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = singular_values(m);
    let largest = sv.iter().cloned().fold(0.0_f64, f64::max);
    if largest == 0.0 {
        return 0;
    }
    let cut = tol.rank_tol * largest;
    sv.iter().filter(|s| **s > cut).count()
}

/// Moore-Penrose pseudoinverse through a truncated SVD.
pub fn pseudoinverse(m: &Matrix, tol: &Tolerances) -> Matrix {
    let (rows, cols) = m.shape();
    if m.is_empty() {
        return Matrix::zeros(cols, rows);
    }
    let wide = rows < cols;
    let (w, sigma, v) = if wide {
        jacobi(&m.transpose())
    } else {
        jacobi(m)
    };
    let largest = sigma.iter().cloned().fold(0.0_f64, f64::max);
    let cut = tol.rank_tol * largest;

    // tall case: m = w vᵀ, so m⁺ = Σ_k v_k w_kᵀ / σ_k²
    let mut out = Matrix::zeros(v.nrows(), w.nrows());
    for (k, &s) in sigma.iter().enumerate() {
        if s <= cut || s == 0.0 {
            continue;
        }
        out += (v.column(k) * w.column(k).transpose()) / (s * s);
    }
    if wide {
        out.transpose()
    } else {
        out
    }
}

/// Minimum-norm least-squares solution `M⁺ b`.
pub fn solve_least_squares(m: &Matrix, b: &Vector, tol: &Tolerances) -> Vector {
    assert_eq!(m.nrows(), b.len(), "right-hand side length must match rows");
    pseudoinverse(m, tol) * b
}

pub fn norm1(v: &Vector) -> f64 {
    v.iter().map(|x| x.abs()).sum()
}

pub fn norm_inf(v: &Vector) -> f64 {
    v.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

/// Lexicographic comparison of two vectors of equal length.
pub(crate) fn lex_cmp(a: &Vector, b: &Vector) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

/// Snap values within `eps` of zero to exactly `0.0` so that `-0.0` and
/// round-off do not leak into orderings or output.
pub(crate) fn snap_zeros(v: &mut Vector, eps: f64) {
    for x in v.iter_mut() {
        if x.abs() <= eps {
            *x = 0.0;
        }
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Iterator over all `k`-subsets of `0..n` in lexicographic order.
pub(crate) struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
