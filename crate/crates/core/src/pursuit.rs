//! Sparse recovery algorithms: Basis Pursuit through the simplex core or by
//! brute-force polar vertex search, Orthogonal Matching Pursuit and plain
//! Matching Pursuit.
//!
//! Greedy selection uses raw inner products `aⱼᵀr` without normalizing the
//! atoms, so long atoms are favoured. Ties go to the lowest atom index.

use crate::error::{Error, Result};
use crate::lp::{solve_standard, LpStatus, StandardLp};
use crate::numerics::{norm1, norm_inf, pseudoinverse, rank, Tolerances, Vector};
use crate::polytope::{double, enumerate_polar_vertices, AtomMatrix, DoubledMatrix, SignedSupport};

#[derive(Debug, Clone, PartialEq)]
pub struct BpResult {
    pub coeffs: Vector,
    pub objective: f64,
    pub dual_point: Vector,
    /// Sufficient evidence that `coeffs` is the unique ℓ1 minimizer.
    pub unique_hint: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PursuitStep {
    /// Column of `[A, −A]` picked: `j` for `+aⱼ`, `n + j` for `−aⱼ`.
    pub chosen_index: usize,
    pub correlation: f64,
    pub coeffs_after: Vector,
    pub residual: Vector,
    pub residual_norm: f64,
}

impl PursuitStep {
    /// 0-based atom index of the chosen column.
    pub fn atom(&self) -> usize {
        self.chosen_index % self.coeffs_after.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PursuitTrace {
    pub steps: Vec<PursuitStep>,
    /// Coefficients after the last step with entries below `dedupe_tol` removed.
    pub final_coeffs: Vector,
    pub converged: bool,
    pub steps_used: usize,
}

impl PursuitTrace {
    /// Signed support of the pruned final coefficients.
    pub fn support(&self) -> SignedSupport {
        SignedSupport::from_coeffs(&self.final_coeffs, 0.0)
    }
}

fn check_signal(a: &AtomMatrix, y: &Vector) -> Result<()> {
    if y.len() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "signal has length {}, atoms live in R^{}",
            y.len(),
            a.dim()
        )));
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(())
}

fn stopping_norm(y: &Vector, tol: &Tolerances) -> f64 {
    tol.residual_tol * (1.0 + y.norm())
}

fn prune(mut x: Vector, tol: &Tolerances) -> Vector {
    for v in x.iter_mut() {
        if v.abs() <= tol.dedupe_tol {
            *v = 0.0;
        }
    }
    x
}

/// Index and correlation of the atom most correlated with `r`, skipping
/// `excluded`. Returns `None` when every candidate is orthogonal to `r`.
fn most_correlated(
    a: &AtomMatrix,
    r: &Vector,
    excluded: &[usize],
    scale: f64,
) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for j in (0..a.len()).filter(|j| !excluded.contains(j)) {
        let corr = a.matrix().column(j).dot(r);
        let better = match best {
            None => true,
            Some((_, b)) => corr.abs() > b.abs() + 1e-12 * (1.0 + b.abs()),
        };
        if better {
            best = Some((j, corr));
        }
    }
    best.filter(|(_, c)| c.abs() > 1e-14 * scale)
}

fn signed_column(j: usize, corr: f64, n: usize) -> usize {
    if corr < 0.0 {
        n + j
    } else {
        j
    }
}

/// Orthogonal Matching Pursuit. Each step adds the atom with the largest
/// `|aⱼᵀr|` and refits all chosen atoms by least squares.
pub fn omp(a: &AtomMatrix, y: &Vector, max_steps: usize, tol: &Tolerances) -> Result<PursuitTrace> {
    check_signal(a, y)?;
    if max_steps == 0 {
        return Err(Error::DimensionMismatch(
            "max_steps must be at least 1".into(),
        ));
    }
    let n = a.len();
    let stop = stopping_norm(y, tol);
    let scale = a.matrix().norm() * (1.0 + y.norm());

    let mut residual = y.clone();
    let mut coeffs = Vector::zeros(n);
    let mut selected: Vec<usize> = Vec::new();
    let mut steps = Vec::new();
    let mut converged = residual.norm() <= stop;

    while !converged && steps.len() < max_steps {
        let Some((j, corr)) = most_correlated(a, &residual, &selected, scale) else {
            break;
        };
        selected.push(j);
        let sub = a.columns(&selected);
        let fitted = pseudoinverse(&sub, tol) * y;
        coeffs = Vector::zeros(n);
        for (&k, &v) in selected.iter().zip(fitted.iter()) {
            coeffs[k] = v;
        }
        residual = y - &sub * &fitted;
        let residual_norm = residual.norm();
        steps.push(PursuitStep {
            chosen_index: signed_column(j, corr, n),
            correlation: corr,
            coeffs_after: coeffs.clone(),
            residual: residual.clone(),
            residual_norm,
        });
        converged = residual_norm <= stop;
    }

    Ok(PursuitTrace {
        steps_used: steps.len(),
        steps,
        final_coeffs: prune(coeffs, tol),
        converged,
    })
}

/// OMP allowed to run for `k_max` steps, possibly more than the sparsity of
/// the representation it finds. Zero coefficients are dropped at the end, so
/// [`PursuitTrace::support`] is the recovered support.
pub fn omp_eventual(
    a: &AtomMatrix,
    y: &Vector,
    k_max: usize,
    tol: &Tolerances,
) -> Result<PursuitTrace> {
    omp(a, y, k_max, tol)
}

/// Plain Matching Pursuit: `xⱼ += aⱼᵀr / ‖aⱼ‖²` for the most correlated atom,
/// without refitting. Atoms may be chosen repeatedly.
pub fn mp(a: &AtomMatrix, y: &Vector, max_iters: usize, tol: &Tolerances) -> Result<PursuitTrace> {
    check_signal(a, y)?;
    if max_iters == 0 {
        return Err(Error::DimensionMismatch(
            "max_iters must be at least 1".into(),
        ));
    }
    let n = a.len();
    let stop = stopping_norm(y, tol);
    let scale = a.matrix().norm() * (1.0 + y.norm());

    let mut residual = y.clone();
    let mut coeffs = Vector::zeros(n);
    let mut steps = Vec::new();
    let mut converged = residual.norm() <= stop;

    while !converged && steps.len() < max_iters {
        let Some((j, corr)) = most_correlated(a, &residual, &[], scale) else {
            break;
        };
        let atom = a.matrix().column(j);
        let delta = corr / atom.norm_squared();
        coeffs[j] += delta;
        residual -= atom * delta;
        let residual_norm = residual.norm();
        steps.push(PursuitStep {
            chosen_index: signed_column(j, corr, n),
            correlation: corr,
            coeffs_after: coeffs.clone(),
            residual: residual.clone(),
            residual_norm,
        });
        converged = residual_norm <= stop;
    }

    Ok(PursuitTrace {
        steps_used: steps.len(),
        steps,
        final_coeffs: prune(coeffs, tol),
        converged,
    })
}

/// Basis Pursuit `min ‖x‖₁ s.t. Ax = y` through the standard-form LP over
/// `x̃ = (x⁺, x⁻)`.
pub fn basis_pursuit(a: &AtomMatrix, y: &Vector, tol: &Tolerances) -> Result<BpResult> {
    check_signal(a, y)?;
    let doubled = double(a);
    let cols = doubled.columns().clone();
    let width = cols.ncols();
    let lp = StandardLp::new(cols, y.clone(), Vector::from_element(width, 1.0))?;
    let sol = solve_standard(&lp, tol)?.into_optimal()?;
    let coeffs = doubled.fold(&sol.primal);
    Ok(BpResult {
        objective: sol.objective_value,
        coeffs,
        dual_point: sol.dual,
        unique_hint: sol.unique_hint,
    })
}

/// Nonnegative `x̃` supported on `active` with `Ã x̃ = y`. Tries the
/// least-squares solution first and falls back to an LP when degenerate
/// vertices carry more tight columns than the dimension.
fn solve_on_active_set(
    doubled: &DoubledMatrix,
    active: &[usize],
    y: &Vector,
    tol: &Tolerances,
) -> Result<Vector> {
    let width = doubled.columns().ncols();
    let feas = tol.dedupe_tol * (1.0 + norm_inf(y));
    if active.is_empty() {
        return if norm_inf(y) <= feas {
            Ok(Vector::zeros(width))
        } else {
            Err(Error::InconsistentCertificate(
                "no constraint is tight at the dual point".into(),
            ))
        };
    }
    let cols = doubled.columns().select_columns(active.iter());
    let z = pseudoinverse(&cols, tol) * y;
    let z = if norm_inf(&(&cols * &z - y)) <= feas && z.iter().all(|v| *v >= -feas) {
        z
    } else {
        let lp = StandardLp::new(cols, y.clone(), Vector::from_element(active.len(), 1.0))?;
        let sol = solve_standard(&lp, tol)?;
        if sol.status != LpStatus::Optimal {
            return Err(Error::InconsistentCertificate(
                "signal is not a nonnegative combination of the tight atoms".into(),
            ));
        }
        sol.primal
    };
    let mut x_tilde = Vector::zeros(width);
    for (&j, &v) in active.iter().zip(z.iter()) {
        x_tilde[j] = v.max(0.0);
    }
    Ok(x_tilde)
}

fn tight_columns(doubled: &DoubledMatrix, c: &Vector, eps: f64) -> Vec<usize> {
    let values = doubled.columns().transpose() * c;
    (0..values.len())
        .filter(|&j| (values[j] - 1.0).abs() <= eps)
        .collect()
}

/// Basis Pursuit by searching the vertices of the polar polytope for
/// `argmax cᵀy`, then solving on the constraints tight at the winner.
/// Ties between vertices go to the lexicographically smallest.
pub fn basis_pursuit_brute(a: &AtomMatrix, y: &Vector, tol: &Tolerances) -> Result<BpResult> {
    check_signal(a, y)?;
    let vertices = enumerate_polar_vertices(a, tol)?;
    let scores: Vec<f64> = vertices.iter().map(|v| v.point.dot(y)).collect();
    let best = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let tie = 1e-12 * (1.0 + best.abs());
    let winners: Vec<usize> = (0..vertices.len())
        .filter(|&i| scores[i] >= best - tie)
        .collect();
    let chosen = &vertices[winners[0]];

    let doubled = double(a);
    let x_tilde =
        solve_on_active_set(&doubled, &chosen.active_set, y, tol).map_err(|e| match e {
            Error::InconsistentCertificate(_) => Error::Infeasible,
            other => other,
        })?;
    let coeffs = doubled.fold(&x_tilde);
    let active_cols = doubled.columns().select_columns(chosen.active_set.iter());
    let unique_hint = winners.len() == 1 && rank(&active_cols, tol) == chosen.active_set.len();
    Ok(BpResult {
        objective: norm1(&coeffs),
        coeffs,
        dual_point: chosen.point.clone(),
        unique_hint,
    })
}

/// Primal solution from an optimal dual point through complementary
/// slackness: only constraints tight at `c` may carry weight.
pub fn recover_primal_from_dual(
    a: &AtomMatrix,
    y: &Vector,
    c: &Vector,
    tol: &Tolerances,
) -> Result<Vector> {
    check_signal(a, y)?;
    if c.len() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "dual point has length {}, atoms live in R^{}",
            c.len(),
            a.dim()
        )));
    }
    let doubled = double(a);
    let values = doubled.columns().transpose() * c;
    if values.iter().any(|v| *v > 1.0 + tol.dedupe_tol) {
        return Err(Error::InconsistentCertificate(
            "dual point lies outside the polar polytope".into(),
        ));
    }
    let active = tight_columns(&doubled, c, tol.dedupe_tol);
    let x_tilde = solve_on_active_set(&doubled, &active, y, tol)?;
    Ok(doubled.fold(&x_tilde))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Matrix;
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

    fn unit_d3() -> AtomMatrix {
        let r = 1.0 / 3f64.sqrt();
        atoms(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[r, r, r]])
    }

    fn v(xs: &[f64]) -> Vector {
        Vector::from_column_slice(xs)
    }

    #[test]
    fn omp_long_atom_single_step() {
        let s = 2f64.sqrt();
        let t = omp(&long_atom(), &v(&[1.0, 0.0]), 1, &tol()).unwrap();
        assert_eq!(t.steps_used, 1);
        assert!(!t.converged);
        let step = &t.steps[0];
        assert_eq!(step.chosen_index, 1);
        assert_relative_eq!(step.correlation, s, epsilon = 1e-15);
        assert_relative_eq!(
            step.coeffs_after,
            v(&[0.0, 1.0 / (2.0 * s)]),
            epsilon = 1e-15
        );
        assert_relative_eq!(step.residual, v(&[0.5, -0.5]), epsilon = 1e-15);
    }

    #[test]
    fn omp_long_atom_two_steps() {
        let t = omp(&long_atom(), &v(&[1.0, 0.0]), 2, &tol()).unwrap();
        assert!(t.converged);
        assert_eq!(t.steps_used, 2);
        assert_eq!(t.steps[1].chosen_index, 0);
        assert_relative_eq!(t.steps[1].correlation, 0.5, epsilon = 1e-15);
        assert_relative_eq!(t.final_coeffs, v(&[1.0, 0.0]), epsilon = 1e-14);
        assert_eq!(t.support().to_string(), "+1");
    }

    #[test]
    fn omp_trivial_cases() {
        let id = AtomMatrix::new(Matrix::identity(3, 3), &tol()).unwrap();
        let t = omp(&id, &v(&[1.0, 0.0, 0.0]), 3, &tol()).unwrap();
        assert_eq!(t.steps_used, 1);
        assert_eq!(t.final_coeffs, v(&[1.0, 0.0, 0.0]));

        let t = omp_eventual(&long_atom(), &v(&[0.0, 0.0]), 2, &tol()).unwrap();
        assert!(t.converged);
        assert_eq!(t.steps_used, 0);
        assert!(t.support().is_empty());
        assert!(omp(&id, &v(&[1.0, 0.0, 0.0]), 0, &tol()).is_err());
    }

    #[test]
    fn omp_eventual_with_erc_support() {
        // ERC holds for {a2}; y = 0.8 a2 is found in one step
        let s = 2f64.sqrt();
        let t = omp_eventual(&long_atom(), &v(&[0.8 * s, 0.8 * s]), 1, &tol()).unwrap();
        assert!(t.converged);
        assert_eq!(t.steps_used, 1);
        assert_relative_eq!(t.final_coeffs, v(&[0.0, 0.8]), epsilon = 1e-14);
    }

    #[test]
    fn mp_cases() {
        let id = AtomMatrix::new(Matrix::identity(2, 2), &tol()).unwrap();
        let t = mp(&id, &v(&[1.0, 0.0]), 10, &tol()).unwrap();
        assert_eq!(t.steps_used, 1);
        assert_eq!(t.final_coeffs, v(&[1.0, 0.0]));

        let t = mp(&long_atom(), &v(&[0.0, 0.0]), 10, &tol()).unwrap();
        assert_eq!(t.steps_used, 0);
        assert_eq!(t.final_coeffs, v(&[0.0, 0.0]));

        let t = mp(&long_atom(), &v(&[1.0, 0.0]), 50, &tol()).unwrap();
        let s = 2f64.sqrt();
        // first update: a2ᵀy / ‖a2‖² = √2 / 4
        assert_relative_eq!(t.steps[0].coeffs_after, v(&[0.0, s / 4.0]), epsilon = 1e-15);
        assert_relative_eq!(t.steps[0].residual, v(&[0.5, -0.5]), epsilon = 1e-15);
        // then a1ᵀr = 1/2 adds 1/2 to x1
        assert_relative_eq!(t.steps[1].coeffs_after, v(&[0.5, s / 4.0]), epsilon = 1e-15);
        let mut prev = 1.0;
        for step in &t.steps {
            assert!(step.residual_norm < prev);
            prev = step.residual_norm;
        }
    }

    #[test]
    fn bp_examples() {
        let r = basis_pursuit(&long_atom(), &v(&[1.0, 0.0]), &tol()).unwrap();
        assert_relative_eq!(r.coeffs, v(&[1.0, 0.0]), epsilon = 1e-12);
        assert_relative_eq!(r.objective, 1.0, epsilon = 1e-12);

        let a = unit_d3();
        let y = a.synthesize(&v(&[1.0, 1.0, 0.0]));
        let r = basis_pursuit(&a, &y, &tol()).unwrap();
        assert_relative_eq!(r.coeffs, v(&[1.0, 1.0, 0.0]), epsilon = 1e-12);
        assert_relative_eq!(r.objective, 2.0, epsilon = 1e-12);

        let r = basis_pursuit(&a, &v(&[0.0, 0.0, 0.0]), &tol()).unwrap();
        assert_eq!(r.coeffs, v(&[0.0, 0.0, 0.0]));
        assert_eq!(r.objective, 0.0);

        let flat = atoms(&[&[1.0, 0.0], &[2.0, 0.0]]);
        assert_eq!(
            basis_pursuit(&flat, &v(&[0.0, 1.0]), &tol()),
            Err(Error::Infeasible)
        );
    }

    #[test]
    fn bp_brute_examples() {
        let beta = 0.7;
        let r = basis_pursuit_brute(&long_atom(), &v(&[beta, 0.0]), &tol()).unwrap();
        assert_relative_eq!(r.coeffs, v(&[beta, 0.0]), epsilon = 1e-12);
        // two vertices tie on the edge c1 = 1
        assert!(!r.unique_hint);

        let id = AtomMatrix::new(Matrix::identity(2, 2), &tol()).unwrap();
        let r = basis_pursuit_brute(&id, &v(&[0.3, -0.7]), &tol()).unwrap();
        assert_relative_eq!(r.coeffs, v(&[0.3, -0.7]), epsilon = 1e-12);
        assert!(r.unique_hint);

        let flat = atoms(&[&[1.0, 0.0], &[2.0, 0.0]]);
        assert!(matches!(
            basis_pursuit_brute(&flat, &v(&[1.0, 0.0]), &tol()),
            Err(Error::UnboundedPolar { .. })
        ));
    }

    #[test]
    fn primal_from_dual() {
        let h = 1.0 / 2f64.sqrt();
        let beta = 0.7;
        let y = v(&[beta, 0.0]);
        for c in [v(&[1.0, h - 1.0]), v(&[1.0, -h - 1.0])] {
            let x = recover_primal_from_dual(&long_atom(), &y, &c, &tol()).unwrap();
            assert_relative_eq!(x, v(&[beta, 0.0]), epsilon = 1e-12);
        }

        let id = AtomMatrix::new(Matrix::identity(2, 2), &tol()).unwrap();
        let x = recover_primal_from_dual(&id, &v(&[0.4, 0.0]), &v(&[1.0, 0.0]), &tol()).unwrap();
        assert_relative_eq!(x, v(&[0.4, 0.0]), epsilon = 1e-14);

        assert!(matches!(
            recover_primal_from_dual(&id, &v(&[0.4, 0.0]), &v(&[0.0, 0.0]), &tol()),
            Err(Error::InconsistentCertificate(_))
        ));
        // tight at +e1 only, but y needs −e1
        assert!(matches!(
            recover_primal_from_dual(&id, &v(&[-0.4, 0.0]), &v(&[1.0, 0.0]), &tol()),
            Err(Error::InconsistentCertificate(_))
        ));
    }
}
