//! Geometry of the centrally symmetric atom polytope `conv{±aᵢ}` and its
//! polar `P* = {c : |aᵢᵀc| ≤ 1}`.
//!
//! Faces of `P*` are probed through the max-margin LP in [`crate::lp`]
//! restricted to the span of the chosen atoms; the lower-dimensional relative
//! polar polytopes are never built explicitly.

use std::fmt;

use nalgebra::FullPivLU;

use crate::error::{Error, Result};
use crate::lp::{solve_margin_lp, solve_standard, LpStatus, StandardLp};
use crate::numerics::{
    binomial, is_finite, lex_cmp, norm_inf, pseudoinverse, rank, snap_zeros, Combinations, Matrix,
    Tolerances, Vector,
};

/// Refuse brute-force enumerations larger than this many subsets.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

/// A `d × n` matrix whose columns (atoms) are nonzero. Atoms need not have
/// unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomMatrix {
    atoms: Matrix,
}

impl AtomMatrix {
    pub fn new(atoms: Matrix, tol: &Tolerances) -> Result<Self> {
        if atoms.nrows() == 0 || atoms.ncols() == 0 {
            return Err(Error::DimensionMismatch(
                "atom matrix needs at least one row and one column".into(),
            ));
        }
        if !is_finite(&atoms) {
            return Err(Error::NonFinite);
        }
        for (index, col) in atoms.column_iter().enumerate() {
            let norm = col.norm();
            if norm <= tol.dedupe_tol {
                return Err(Error::ZeroAtom { index, norm });
            }
        }
        Ok(Self { atoms })
    }

    /// Builds the matrix from atoms given as columns.
    pub fn from_columns(columns: &[Vec<f64>], tol: &Tolerances) -> Result<Self> {
        let Some(first) = columns.first() else {
            return Err(Error::DimensionMismatch("no atoms given".into()));
        };
        let d = first.len();
        if columns.iter().any(|c| c.len() != d) {
            return Err(Error::DimensionMismatch("atoms of unequal length".into()));
        }
        let flat: Vec<f64> = columns.iter().flatten().copied().collect();
        Self::new(Matrix::from_column_slice(d, columns.len(), &flat), tol)
    }

    /// Ambient dimension `d`.
    pub fn dim(&self) -> usize {
        self.atoms.nrows()
    }

    /// Number of atoms `n`.
    pub fn len(&self) -> usize {
        self.atoms.ncols()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn matrix(&self) -> &Matrix {
        &self.atoms
    }

    pub fn atom(&self, i: usize) -> Vector {
        self.atoms.column(i).into_owned()
    }

    /// `A x`.
    pub fn synthesize(&self, x: &Vector) -> Vector {
        &self.atoms * x
    }

    /// Columns `sᵢ aᵢ` for each pair of the signed support, in order.
    pub fn signed_columns(&self, support: &SignedSupport) -> Matrix {
        let mut out = Matrix::zeros(self.dim(), support.len());
        for (k, &(i, sign)) in support.pairs().iter().enumerate() {
            out.set_column(k, &(self.atoms.column(i) * sign.value()));
        }
        out
    }

    /// Columns `aᵢ` for the given indices, in order.
    pub fn columns(&self, indices: &[usize]) -> Matrix {
        self.atoms.select_columns(indices.iter())
    }

    /// The points `aᵢ / ‖aᵢ‖²`, where each atom touches its facet of `P*`.
    pub fn scaled_atoms(&self) -> Matrix {
        let mut out = self.atoms.clone();
        for mut col in out.column_iter_mut() {
            let sq = col.norm_squared();
            col /= sq;
        }
        out
    }

    pub(crate) fn check_support(&self, support: &SignedSupport) -> Result<()> {
        match support.pairs().last() {
            Some(&(i, _)) if i >= self.len() => Err(Error::InvalidSupport(format!(
                "atom index {} out of range for {} atoms",
                i + 1,
                self.len()
            ))),
            _ => Ok(()),
        }
    }
}

/// `Ã = [A, −A]`: column `j` is `aⱼ` and column `n + j` is `−aⱼ`.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubledMatrix {
    base: AtomMatrix,
    columns: Matrix,
}

impl DoubledMatrix {
    pub fn base(&self) -> &AtomMatrix {
        &self.base
    }

    pub fn columns(&self) -> &Matrix {
        &self.columns
    }

    /// Number of atoms in the base matrix; `Ã` has twice as many columns.
    pub fn atom_count(&self) -> usize {
        self.base.len()
    }

    /// Maps a nonnegative `x̃` of length `2n` to `x` with `xᵢ = x̃ᵢ − x̃ₙ₊ᵢ`.
    pub fn fold(&self, x_tilde: &Vector) -> Vector {
        let n = self.atom_count();
        assert_eq!(x_tilde.len(), 2 * n);
        Vector::from_iterator(n, (0..n).map(|i| x_tilde[i] - x_tilde[n + i]))
    }

    /// Splits `x` into its positive and negative parts.
    pub fn unfold(&self, x: &Vector) -> Vector {
        let n = self.atom_count();
        assert_eq!(x.len(), n);
        Vector::from_iterator(
            2 * n,
            (0..2 * n).map(|j| {
                if j < n {
                    x[j].max(0.0)
                } else {
                    (-x[j - n]).max(0.0)
                }
            }),
        )
    }
}

pub fn double(a: &AtomMatrix) -> DoubledMatrix {
    let (d, n) = (a.dim(), a.len());
    let mut columns = Matrix::zeros(d, 2 * n);
    columns.columns_mut(0, n).copy_from(a.matrix());
    columns.columns_mut(n, n).copy_from(&(-a.matrix()));
    DoubledMatrix {
        base: a.clone(),
        columns,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn of(x: f64) -> Self {
        if x < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Atom indices (0-based, strictly increasing) with a sign each.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SignedSupport {
    pairs: Vec<(usize, Sign)>,
}

impl SignedSupport {
    pub fn new(pairs: Vec<(usize, Sign)>) -> Result<Self> {
        if pairs.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidSupport(
                "indices must be strictly increasing".into(),
            ));
        }
        Ok(Self { pairs })
    }

    /// All-positive support on the given indices.
    pub fn positive(indices: &[usize]) -> Result<Self> {
        Self::new(indices.iter().map(|&i| (i, Sign::Plus)).collect())
    }

    /// Support of `x`: entries with `|xᵢ| > threshold`, with their signs.
    pub fn from_coeffs(x: &Vector, threshold: f64) -> Self {
        Self {
            pairs: x
                .iter()
                .enumerate()
                .filter(|(_, v)| v.abs() > threshold)
                .map(|(i, v)| (i, Sign::of(*v)))
                .collect(),
        }
    }

    pub fn pairs(&self) -> &[(usize, Sign)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    pub fn sign_vector(&self) -> Vector {
        Vector::from_iterator(self.len(), self.pairs.iter().map(|p| p.1.value()))
    }

    pub fn contains(&self, index: usize) -> bool {
        self.pairs.iter().any(|p| p.0 == index)
    }

    pub fn flipped(&self) -> Self {
        Self {
            pairs: self.pairs.iter().map(|&(i, s)| (i, s.flip())).collect(),
        }
    }

    /// Positions of the signed atoms among the columns of `Ã` with `n` atoms.
    pub fn doubled_indices(&self, n: usize) -> Vec<usize> {
        self.pairs
            .iter()
            .map(|&(i, s)| match s {
                Sign::Plus => i,
                Sign::Minus => n + i,
            })
            .collect()
    }

    /// Inverse of [`doubled_indices`](Self::doubled_indices).
    pub fn from_doubled_indices(indices: &[usize], n: usize) -> Result<Self> {
        let mut pairs: Vec<(usize, Sign)> = indices
            .iter()
            .map(|&j| {
                if j < n {
                    (j, Sign::Plus)
                } else {
                    (j - n, Sign::Minus)
                }
            })
            .collect();
        pairs.sort();
        Self::new(pairs)
    }
}

/// 1-based `+1,-3` notation.
impl fmt::Display for SignedSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &(i, s)) in self.pairs.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}{}", s.symbol(), i + 1)?;
        }
        Ok(())
    }
}

/// Label of doubled column `j` in 1-based signed notation.
pub fn doubled_label(j: usize, n: usize) -> String {
    if j < n {
        format!("+{}", j + 1)
    } else {
        format!("-{}", j - n + 1)
    }
}

/// A vertex of `P*` with the doubled columns tight at it.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarVertex {
    pub point: Vector,
    pub active_set: Vec<usize>,
}

impl PolarVertex {
    /// Labels of the tight signed atoms, ordered by atom index.
    pub fn active_labels(&self, n: usize) -> Vec<String> {
        let mut active = self.active_set.clone();
        active.sort_by_key(|&j| (j % n, j));
        active.iter().map(|&j| doubled_label(j, n)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FaceQueryResult {
    pub exists: bool,
    /// Point in the relative interior of the dual face, present iff `exists`.
    pub witness: Option<Vector>,
    pub margin: f64,
}

impl FaceQueryResult {
    fn absent() -> Self {
        Self {
            exists: false,
            witness: None,
            margin: 0.0,
        }
    }
}

/// Solves `Mᵀ c = 𝟙` for a square `M`, or `None` when `M` is numerically
/// singular.
fn solve_tight_system(m: &Matrix, tol: &Tolerances) -> Option<Vector> {
    let lu = FullPivLU::new(m.transpose());
    let u = lu.u();
    let diag: Vec<f64> = (0..u.nrows()).map(|i| u[(i, i)].abs()).collect();
    let largest = diag.iter().cloned().fold(0.0_f64, f64::max);
    if largest == 0.0 || diag.iter().any(|v| *v <= tol.rank_tol * largest) {
        return None;
    }
    lu.solve(&Vector::from_element(m.nrows(), 1.0))
}

/// All vertices of `P* = {c : Ãᵀc ≤ 𝟙}` by solving every `d × d` tight system.
///
/// Vertices are returned deduplicated and in lexicographic order of their
/// coordinates; `active_set` lists every tight doubled column.
pub fn enumerate_polar_vertices(a: &AtomMatrix, tol: &Tolerances) -> Result<Vec<PolarVertex>> {
    let (d, n) = (a.dim(), a.len());
    let r = rank(a.matrix(), tol);
    if r < d {
        return Err(Error::UnboundedPolar { rank: r, dim: d });
    }
    let count = binomial(2 * n, d);
    if count > ENUMERATION_LIMIT {
        return Err(Error::GuardExceeded {
            count,
            limit: ENUMERATION_LIMIT,
        });
    }
    let doubled = double(a);
    let cols = doubled.columns();
    let gram_t = cols.transpose();

    let mut points: Vec<Vector> = Vec::new();
    for subset in Combinations::new(2 * n, d) {
        // ±aⱼ together can never be tight at once
        if subset.iter().any(|&j| j < n && subset.contains(&(j + n))) {
            continue;
        }
        let m = cols.select_columns(subset.iter());
        let Some(c) = solve_tight_system(&m, tol) else {
            continue;
        };
        let values = &gram_t * &c;
        if values.iter().any(|v| *v > 1.0 + tol.strict_tol) {
            continue;
        }
        if !points.iter().any(|p| norm_inf(&(p - &c)) <= tol.dedupe_tol) {
            points.push(c);
        }
    }

    let mut vertices: Vec<PolarVertex> = points
        .into_iter()
        .map(|mut point| {
            snap_zeros(&mut point, 1e-14);
            let values = &gram_t * &point;
            let active_set = (0..2 * n)
                .filter(|&j| (values[j] - 1.0).abs() <= tol.dedupe_tol)
                .collect();
            PolarVertex { point, active_set }
        })
        .collect();
    vertices.sort_by(|u, v| lex_cmp(&u.point, &v.point));
    Ok(vertices)
}

/// Does `P*` have a face on which exactly the signed atoms of `support` are
/// tight? Equivalently, is the signed simplex `conv{sᵢaᵢ}` a face of the
/// atom polytope?
pub fn face_exists(
    a: &AtomMatrix,
    support: &SignedSupport,
    tol: &Tolerances,
) -> Result<FaceQueryResult> {
    a.check_support(support)?;
    if support.is_empty() {
        return Err(Error::InvalidSupport("support must be nonempty".into()));
    }
    let m = support.len();
    if m > a.dim() {
        return Ok(FaceQueryResult::absent());
    }
    let tight = a.signed_columns(support);
    if rank(&tight, tol) < m {
        return Ok(FaceQueryResult::absent());
    }

    let n = a.len();
    let doubled = double(a);
    let on_face = support.doubled_indices(n);
    let others: Vec<usize> = (0..2 * n).filter(|j| !on_face.contains(j)).collect();
    let slack = doubled.columns().select_columns(others.iter());

    match solve_margin_lp(&tight, &slack, tol) {
        Ok(sol) => {
            let exists = sol.margin > tol.strict_tol;
            Ok(FaceQueryResult {
                exists,
                witness: exists.then_some(sol.witness),
                margin: sol.margin,
            })
        }
        Err(Error::Infeasible) => Ok(FaceQueryResult::absent()),
        Err(e) => Err(e),
    }
}

/// Every signed support of size `k` in lexicographic order, with the first
/// sign fixed to `+` (the other half follows by central symmetry). Signs are
/// ordered `+` before `-`.
pub fn signed_supports(n: usize, k: usize) -> impl Iterator<Item = SignedSupport> {
    Combinations::new(n, k).flat_map(move |indices| {
        let patterns = if k == 0 { 1 } else { 1usize << (k - 1) };
        (0..patterns).map(move |mask| {
            let pairs = indices
                .iter()
                .enumerate()
                .map(|(p, &i)| {
                    let minus = p > 0 && (mask >> (k - 1 - p)) & 1 == 1;
                    (i, if minus { Sign::Minus } else { Sign::Plus })
                })
                .collect();
            SignedSupport { pairs }
        })
    })
}

/// Checks whether every `k` atoms with arbitrary signs span a face of the
/// atom polytope. Returns the verdict and the first failing signed support.
pub fn is_k_neighbourly(
    a: &AtomMatrix,
    k: usize,
    tol: &Tolerances,
) -> Result<(bool, Option<SignedSupport>)> {
    if k == 0 || k > a.dim() {
        return Err(Error::InvalidSupport(format!(
            "neighbourliness order must lie in 1..={}, got {k}",
            a.dim()
        )));
    }
    for support in signed_supports(a.len(), k) {
        if !face_exists(a, &support, tol)?.exists {
            return Ok((false, Some(support)));
        }
    }
    Ok((true, None))
}

/// Smallest number of linearly dependent atoms, or `n + 1` when all atoms are
/// independent. Dependence is judged by numerical rank.
pub fn spark(a: &AtomMatrix, tol: &Tolerances) -> usize {
    let (d, n) = (a.dim(), a.len());
    for size in 1..=(d + 1).min(n) {
        if Combinations::new(n, size).any(|subset| rank(&a.columns(&subset), tol) < size) {
            return size;
        }
    }
    n + 1
}

/// Is `c` in the cone generated by the signed atoms of `support`, after
/// projecting onto their span? Points off the span (relative residual above
/// `dedupe_tol`) are outside.
pub fn cone_contains(
    a: &AtomMatrix,
    support: &SignedSupport,
    c: &Vector,
    tol: &Tolerances,
) -> Result<bool> {
    a.check_support(support)?;
    if c.len() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "point has length {}, atoms live in R^{}",
            c.len(),
            a.dim()
        )));
    }
    let c_norm = c.norm();
    if c_norm == 0.0 {
        return Ok(true);
    }
    if support.is_empty() {
        return Ok(false);
    }
    let generators = a.signed_columns(support);
    let projected = &generators * (pseudoinverse(&generators, tol) * c);
    if (c - &projected).norm() > tol.dedupe_tol * c_norm {
        return Ok(false);
    }
    let m = generators.ncols();
    let lp = StandardLp::new(generators, projected, Vector::zeros(m))?;
    Ok(solve_standard(&lp, tol)?.status == LpStatus::Optimal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn atoms(cols: &[&[f64]]) -> AtomMatrix {
        AtomMatrix::from_columns(&cols.iter().map(|c| c.to_vec()).collect::<Vec<_>>(), &tol())
            .unwrap()
    }

    fn long_atom() -> AtomMatrix {
        let s = 2f64.sqrt();
        atoms(&[&[1.0, 0.0], &[s, s]])
    }

    fn wedge() -> AtomMatrix {
        let h = 1.0 / 2f64.sqrt();
        atoms(&[&[1.0, 0.0], &[0.0, 1.0], &[h, h]])
    }

    fn unit_d3() -> AtomMatrix {
        let r = 1.0 / 3f64.sqrt();
        atoms(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[r, r, r]])
    }

    fn v(xs: &[f64]) -> Vector {
        Vector::from_column_slice(xs)
    }

    #[test]
    fn rejects_zero_atom() {
        let err = AtomMatrix::from_columns(&[vec![1.0, 0.0], vec![0.0, 0.0]], &tol()).unwrap_err();
        assert!(matches!(err, Error::ZeroAtom { index: 1, .. }));
    }

    #[test]
    fn doubling() {
        let a = atoms(&[&[1.0, 0.0]]);
        let dm = double(&a);
        assert_eq!(
            dm.columns(),
            &Matrix::from_column_slice(2, 2, &[1.0, 0.0, -1.0, 0.0])
        );

        let dm = double(&unit_d3());
        assert_eq!(dm.columns().shape(), (3, 6));
        assert_eq!(dm.columns().column(5), -unit_d3().matrix().column(2));

        let dm = double(&long_atom());
        assert_eq!(dm.fold(&v(&[1.0, 0.0, 0.0, 0.0])), v(&[1.0, 0.0]));
        assert_eq!(dm.unfold(&v(&[0.5, -2.0])), v(&[0.5, 0.0, 0.0, 2.0]));
    }

    #[test]
    fn support_display_and_parsing() {
        let s = SignedSupport::new(vec![(0, Sign::Plus), (2, Sign::Minus)]).unwrap();
        assert_eq!(s.to_string(), "+1,-3");
        assert_eq!(s.doubled_indices(4), vec![0, 6]);
        assert_eq!(SignedSupport::from_doubled_indices(&[6, 0], 4).unwrap(), s);
        assert!(SignedSupport::new(vec![(1, Sign::Plus), (1, Sign::Minus)]).is_err());
        assert_eq!(
            SignedSupport::from_coeffs(&v(&[0.0, -2.0, 1e-12]), 1e-8).to_string(),
            "-2"
        );
    }

    #[test]
    fn square_and_cube_polars() {
        let sq = enumerate_polar_vertices(&atoms(&[&[1.0, 0.0], &[0.0, 1.0]]), &tol()).unwrap();
        let pts: Vec<Vec<f64>> = sq
            .iter()
            .map(|v| v.point.iter().cloned().collect())
            .collect();
        assert_eq!(
            pts,
            vec![
                vec![-1.0, -1.0],
                vec![-1.0, 1.0],
                vec![1.0, -1.0],
                vec![1.0, 1.0]
            ]
        );
        assert!(sq.iter().all(|v| v.active_set.len() == 2));

        let id3 = AtomMatrix::new(Matrix::identity(3, 3), &tol()).unwrap();
        let cube = enumerate_polar_vertices(&id3, &tol()).unwrap();
        assert_eq!(cube.len(), 8);
        assert!(cube
            .iter()
            .all(|v| v.point.iter().all(|x| (x.abs() - 1.0).abs() < 1e-14)));
    }

    #[test]
    fn long_atom_polar_vertices() {
        // |c1| ≤ 1 and |c1 + c2| ≤ 1/√2
        let h = 1.0 / 2f64.sqrt();
        let verts = enumerate_polar_vertices(&long_atom(), &tol()).unwrap();
        let expected = [
            [-1.0, 1.0 - h],
            [-1.0, 1.0 + h],
            [1.0, -1.0 - h],
            [1.0, -1.0 + h],
        ];
        assert_eq!(verts.len(), 4);
        for (vert, e) in verts.iter().zip(expected.iter()) {
            assert_relative_eq!(vert.point, v(e), epsilon = 1e-12);
        }
        // (1, 1/√2 − 1) is where +a1 and +a2 are tight
        assert_eq!(verts[3].active_set, vec![0, 1]);
        assert_eq!(verts[3].active_labels(2), vec!["+1", "+2"]);
    }

    #[test]
    fn unbounded_polar_and_guard() {
        let a = atoms(&[&[1.0, 0.0], &[2.0, 0.0]]);
        assert_eq!(
            enumerate_polar_vertices(&a, &tol()),
            Err(Error::UnboundedPolar { rank: 1, dim: 2 })
        );
        let big = AtomMatrix::new(
            Matrix::from_fn(12, 30, |i, j| {
                if j < 12 {
                    (i == j) as u8 as f64
                } else {
                    ((i * 7 + j * 3) % 5) as f64 + 1.0
                }
            }),
            &tol(),
        )
        .unwrap();
        assert!(matches!(
            enumerate_polar_vertices(&big, &tol()),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn faces_of_unit_norm_example() {
        let res = face_exists(
            &unit_d3(),
            &SignedSupport::positive(&[0, 1]).unwrap(),
            &tol(),
        )
        .unwrap();
        assert!(res.exists);
        let c = res.witness.unwrap();
        let a = unit_d3();
        assert_relative_eq!(a.atom(0).dot(&c), 1.0, epsilon = 1e-9);
        assert_relative_eq!(a.atom(1).dot(&c), 1.0, epsilon = 1e-9);
        assert!(a.atom(2).dot(&c).abs() < 1.0);
    }

    #[test]
    fn wedge_faces() {
        let a = wedge();
        let plus12 = SignedSupport::positive(&[0, 1]).unwrap();
        let plus13 = SignedSupport::positive(&[0, 2]).unwrap();
        assert!(!face_exists(&a, &plus12, &tol()).unwrap().exists);
        assert!(face_exists(&a, &plus13, &tol()).unwrap().exists);
        assert!(!face_exists(&a, &plus12.flipped(), &tol()).unwrap().exists);
    }

    #[test]
    fn rank_deficient_face_is_absent() {
        let a = atoms(&[&[1.0, 0.0], &[2.0, 0.0], &[0.0, 1.0]]);
        let res = face_exists(&a, &SignedSupport::positive(&[0, 1]).unwrap(), &tol()).unwrap();
        assert_eq!(res, FaceQueryResult::absent());
    }

    #[test]
    fn neighbourliness() {
        let ortho = atoms(&[&[1.0, 0.0], &[0.0, 1.0]]);
        assert_eq!(is_k_neighbourly(&ortho, 2, &tol()).unwrap(), (true, None));
        assert_eq!(
            is_k_neighbourly(&long_atom(), 2, &tol()).unwrap(),
            (true, None)
        );

        let (ok, fail) = is_k_neighbourly(&wedge(), 2, &tol()).unwrap();
        assert!(!ok);
        assert_eq!(fail.unwrap().to_string(), "+1,+2");
        assert_eq!(is_k_neighbourly(&wedge(), 1, &tol()).unwrap(), (true, None));
        assert!(is_k_neighbourly(&wedge(), 3, &tol()).is_err());
    }

    #[test]
    fn signed_support_order() {
        let all: Vec<String> = signed_supports(3, 2).map(|s| s.to_string()).collect();
        assert_eq!(all, ["+1,+2", "+1,-2", "+1,+3", "+1,-3", "+2,+3", "+2,-3"]);
        assert_eq!(signed_supports(4, 3).count(), 4 * 4);
    }

    #[test]
    fn spark_examples() {
        let par = atoms(&[&[1.0, 0.0], &[2.0, 0.0], &[0.0, 1.0]]);
        assert_eq!(spark(&par, &tol()), 2);
        let r = 1.0 / 3f64.sqrt();
        let a = atoms(&[
            &[1.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0],
            &[0.0, 0.0, 1.0],
            &[r, r, r],
        ]);
        assert_eq!(spark(&a, &tol()), 4);
        let id = atoms(&[&[1.0, 0.0], &[0.0, 1.0]]);
        assert_eq!(spark(&id, &tol()), 3);
    }

    #[test]
    fn cone_membership() {
        let ortho = atoms(&[&[1.0, 0.0], &[0.0, 1.0]]);
        let pp = SignedSupport::positive(&[0, 1]).unwrap();
        assert!(cone_contains(&ortho, &pp, &v(&[1.0, 1.0]), &tol()).unwrap());
        assert!(!cone_contains(&ortho, &pp, &v(&[1.0, -1.0]), &tol()).unwrap());
        assert!(cone_contains(&ortho, &pp, &v(&[0.0, 0.0]), &tol()).unwrap());

        // the ++ vertex of the long-atom polar lies outside its cone
        let h = 1.0 / 2f64.sqrt();
        assert!(!cone_contains(&long_atom(), &pp, &v(&[1.0, h - 1.0]), &tol()).unwrap());

        // off-span points are outside
        let one = SignedSupport::positive(&[0]).unwrap();
        assert!(!cone_contains(&ortho, &one, &v(&[1.0, 0.5]), &tol()).unwrap());
        assert!(cone_contains(&ortho, &one, &v(&[2.0, 0.0]), &tol()).unwrap());
    }
}
