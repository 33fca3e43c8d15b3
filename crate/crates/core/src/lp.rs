//! Dense two-phase simplex for standard-form linear programs
//!
//! ```text
//! minimize  objectiveᵀ x   subject to  A x = b,  x ≥ 0
//! ```
//!
//! Pivoting follows Bland's rule throughout so the method terminates on
//! degenerate problems. Once an optimal basis is found, the primal and dual
//! points are recomputed from the original data rather than read off the
//! tableau, which keeps round-off from accumulating across pivots.

use crate::error::{Error, Result};
use crate::numerics::{pseudoinverse, Matrix, Tolerances, Vector};

const PIVOT_EPS: f64 = 1e-11;
const MAX_PIVOTS: usize = 200_000;

#[derive(Debug, Clone, PartialEq)]
pub struct StandardLp {
    pub constraint_matrix: Matrix,
    pub rhs: Vector,
    pub objective: Vector,
}

impl StandardLp {
    pub fn new(constraint_matrix: Matrix, rhs: Vector, objective: Vector) -> Result<Self> {
        if constraint_matrix.nrows() != rhs.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} constraint rows but rhs has length {}",
                constraint_matrix.nrows(),
                rhs.len()
            )));
        }
        if constraint_matrix.ncols() != objective.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} variables but objective has length {}",
                constraint_matrix.ncols(),
                objective.len()
            )));
        }
        let finite = constraint_matrix.iter().all(|v| v.is_finite())
            && rhs.iter().all(|v| v.is_finite())
            && objective.iter().all(|v| v.is_finite());
        if !finite {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            constraint_matrix,
            rhs,
            objective,
        })
    }

    pub fn num_constraints(&self) -> usize {
        self.constraint_matrix.nrows()
    }

    pub fn num_vars(&self) -> usize {
        self.constraint_matrix.ncols()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Basic optimal point. Empty unless `status` is optimal.
    pub primal: Vector,
    /// Dual point `y` with `Aᵀy ≤ objective`. Empty unless optimal.
    pub dual: Vector,
    pub objective_value: f64,
    /// `objective − Aᵀy`. Empty unless optimal.
    pub reduced_costs: Vector,
    /// Every nonbasic reduced cost exceeds `strict_tol`, which is sufficient
    /// (not necessary) for the primal optimum to be unique.
    pub unique_hint: bool,
    /// Basic variable indices of the final basis, ascending.
    pub basis: Vec<usize>,
}

impl LpSolution {
    fn without_optimum(status: LpStatus) -> Self {
        Self {
            status,
            primal: Vector::zeros(0),
            dual: Vector::zeros(0),
            objective_value: match status {
                LpStatus::Unbounded => f64::NEG_INFINITY,
                _ => f64::INFINITY,
            },
            reduced_costs: Vector::zeros(0),
            unique_hint: false,
            basis: Vec::new(),
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    /// Converts a non-optimal status into the matching error.
    pub fn into_optimal(self) -> Result<Self> {
        match self.status {
            LpStatus::Optimal => Ok(self),
            LpStatus::Infeasible => Err(Error::Infeasible),
            LpStatus::Unbounded => Err(Error::Unbounded),
        }
    }
}

struct Tableau {
    /// rows × (vars + artificials + 1); the last column is the rhs.
    cells: Vec<Vec<f64>>,
    basis: Vec<usize>,
    num_vars: usize,
}

impl Tableau {
    fn rhs_col(&self) -> usize {
        self.cells.first().map_or(0, |r| r.len() - 1)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.cells[row][col];
        for v in self.cells[row].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.cells[row].clone();
        for (i, r) in self.cells.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            let f = r[col];
            if f != 0.0 {
                for (v, pv) in r.iter_mut().zip(pivot_row.iter()) {
                    *v -= f * pv;
                }
                r[col] = 0.0;
            }
        }
        self.basis[row] = col;
    }

    fn reduced_cost(&self, costs: &[f64], col: usize) -> f64 {
        let z: f64 = self
            .basis
            .iter()
            .zip(self.cells.iter())
            .map(|(&b, row)| costs[b] * row[col])
            .sum();
        costs[col] - z
    }

    /// Runs Bland's rule over columns `0..allowed` until optimal or unbounded.
    /// Returns `Ok(false)` when unbounded.
    fn optimize(&mut self, costs: &[f64], allowed: usize, pivots: &mut usize) -> Result<bool> {
        let rhs = self.rhs_col();
        loop {
            let entering = (0..allowed)
                .filter(|j| !self.basis.contains(j))
                .find(|&j| self.reduced_cost(costs, j) < -PIVOT_EPS);
            let Some(col) = entering else {
                return Ok(true);
            };

            let mut leaving: Option<(usize, f64)> = None;
            for (i, row) in self.cells.iter().enumerate() {
                if row[col] <= PIVOT_EPS {
                    continue;
                }
                let ratio = row[rhs].max(0.0) / row[col];
                leaving = match leaving {
                    None => Some((i, ratio)),
                    Some((best, best_ratio)) => {
                        let slack = 1e-12 * (1.0 + best_ratio.abs());
                        if ratio < best_ratio - slack
                            || (ratio <= best_ratio + slack && self.basis[i] < self.basis[best])
                        {
                            Some((i, ratio))
                        } else {
                            Some((best, best_ratio))
                        }
                    }
                };
            }
            let Some((row, _)) = leaving else {
                return Ok(false);
            };
            self.pivot(row, col);
            *pivots += 1;
            if *pivots > MAX_PIVOTS {
                return Err(Error::IterationLimit(MAX_PIVOTS));
            }
        }
    }
}

/// Solves a standard-form LP. Dimension problems are reported as errors;
/// infeasibility and unboundedness through [`LpSolution::status`].
pub fn solve_standard(lp: &StandardLp, tol: &Tolerances) -> Result<LpSolution> {
    let m = lp.num_constraints();
    let n = lp.num_vars();
    let a = &lp.constraint_matrix;
    let b = &lp.rhs;

    // Phase 1 tableau [A | I | b] with rows flipped so that b ≥ 0.
    let mut cells = Vec::with_capacity(m);
    for i in 0..m {
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        let mut row = vec![0.0; n + m + 1];
        for j in 0..n {
            row[j] = sign * a[(i, j)];
        }
        row[n + i] = 1.0;
        row[n + m] = sign * b[i];
        cells.push(row);
    }
    let mut tab = Tableau {
        cells,
        basis: (n..n + m).collect(),
        num_vars: n,
    };
    let mut pivots = 0;

    let mut phase1_costs = vec![0.0; n + m];
    for c in phase1_costs.iter_mut().skip(n) {
        *c = 1.0;
    }
    tab.optimize(&phase1_costs, n + m, &mut pivots)?;
    let rhs = tab.rhs_col();
    let infeasibility: f64 = tab
        .basis
        .iter()
        .zip(tab.cells.iter())
        .filter(|(&bv, _)| bv >= n)
        .map(|(_, row)| row[rhs])
        .sum();
    let b_scale = 1.0 + b.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    if infeasibility > tol.strict_tol * b_scale {
        return Ok(LpSolution::without_optimum(LpStatus::Infeasible));
    }

    // Drive artificials out of the basis; rows where that is impossible are
    // linear combinations of the others and are dropped.
    let mut i = 0;
    while i < tab.cells.len() {
        if tab.basis[i] < n {
            i += 1;
            continue;
        }
        let replacement = (0..n)
            .filter(|j| !tab.basis.contains(j))
            .find(|&j| tab.cells[i][j].abs() > 1e-9);
        match replacement {
            Some(j) => {
                tab.pivot(i, j);
                i += 1;
            }
            None => {
                tab.cells.remove(i);
                tab.basis.remove(i);
            }
        }
    }

    let mut phase2_costs = lp.objective.iter().cloned().collect::<Vec<_>>();
    phase2_costs.extend(std::iter::repeat_n(0.0, m));
    if !tab.optimize(&phase2_costs, n, &mut pivots)? {
        return Ok(LpSolution::without_optimum(LpStatus::Unbounded));
    }

    Ok(finish(lp, &tab, tol))
}

fn finish(lp: &StandardLp, tab: &Tableau, tol: &Tolerances) -> LpSolution {
    let n = tab.num_vars;
    let a = &lp.constraint_matrix;
    let mut basis = tab.basis.clone();
    basis.sort_unstable();

    let basis_matrix = a.select_columns(basis.iter());
    let mut primal = Vector::zeros(n);
    let dual = if basis.is_empty() {
        Vector::zeros(lp.num_constraints())
    } else {
        let x_basic = pseudoinverse(&basis_matrix, tol) * &lp.rhs;
        for (k, &j) in basis.iter().enumerate() {
            primal[j] = x_basic[k].max(0.0);
        }
        let c_basic = Vector::from_iterator(basis.len(), basis.iter().map(|&j| lp.objective[j]));
        pseudoinverse(&basis_matrix.transpose(), tol) * c_basic
    };

    let reduced_costs = &lp.objective - a.transpose() * &dual;
    let unique_hint = (0..n)
        .filter(|j| !basis.contains(j))
        .all(|j| reduced_costs[j] > tol.strict_tol);
    let objective_value = lp.objective.dot(&primal);

    LpSolution {
        status: LpStatus::Optimal,
        primal,
        dual,
        objective_value,
        reduced_costs,
        unique_hint,
        basis,
    }
}

/// Optimal point of the max-margin feasibility problem.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginSolution {
    pub margin: f64,
    pub witness: Vector,
}

/// Largest cap on the margin. Only the sign of the margin matters to callers.
pub const MARGIN_CAP: f64 = 2.0;

/// Maximizes `t` over `(c, t)` subject to `Eᵀc = 𝟙`, `Iᵀc ≤ (1 − t)𝟙` and
/// `0 ≤ t ≤ 2`, where the columns of `E` and `I` are the equality and
/// inequality atoms. The strict system `Eᵀc = 𝟙, Iᵀc < 𝟙` is solvable exactly
/// when the returned margin exceeds `strict_tol`.
///
/// Returns [`Error::Infeasible`] when no `c` meets the equalities inside the
/// polytope `Iᵀc ≤ 𝟙`.
pub fn solve_margin_lp(
    equality_atoms: &Matrix,
    inequality_atoms: &Matrix,
    tol: &Tolerances,
) -> Result<MarginSolution> {
    let d = equality_atoms.nrows();
    if inequality_atoms.nrows() != d && inequality_atoms.ncols() > 0 {
        return Err(Error::DimensionMismatch(format!(
            "equality atoms live in R^{d}, inequality atoms in R^{}",
            inequality_atoms.nrows()
        )));
    }
    let m = equality_atoms.ncols();
    let k = inequality_atoms.ncols();

    // variables: c⁺ (d) | c⁻ (d) | t | slack per inequality (k) | cap slack
    let num_vars = 2 * d + 1 + k + 1;
    let t_col = 2 * d;
    let rows = m + k + 1;
    let mut a = Matrix::zeros(rows, num_vars);
    let mut b = Vector::zeros(rows);

    for (r, col) in equality_atoms.column_iter().enumerate() {
        for i in 0..d {
            a[(r, i)] = col[i];
            a[(r, d + i)] = -col[i];
        }
        b[r] = 1.0;
    }
    for (q, col) in inequality_atoms.column_iter().enumerate() {
        let r = m + q;
        for i in 0..d {
            a[(r, i)] = col[i];
            a[(r, d + i)] = -col[i];
        }
        a[(r, t_col)] = 1.0;
        a[(r, t_col + 1 + q)] = 1.0;
        b[r] = 1.0;
    }
    a[(rows - 1, t_col)] = 1.0;
    a[(rows - 1, num_vars - 1)] = 1.0;
    b[rows - 1] = MARGIN_CAP;

    let mut objective = Vector::zeros(num_vars);
    objective[t_col] = -1.0;

    let lp = StandardLp::new(a, b, objective)?;
    let sol = solve_standard(&lp, tol)?.into_optimal()?;
    let witness = Vector::from_iterator(d, (0..d).map(|i| sol.primal[i] - sol.primal[d + i]));
    Ok(MarginSolution {
        margin: sol.primal[t_col],
        witness,
    })
}
