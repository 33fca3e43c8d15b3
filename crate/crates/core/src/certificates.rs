//! Recovery certificates for a representation `y = A x₀`.
//!
//! From strongest to weakest hypothesis:
//!
//! - ERC: `max_{j ∉ S} ‖A_S⁺ aⱼ‖₁ < 1`, sign-independent.
//! - Fuchs corollary: the specific dual point `c = (A_S⁺)ᵀ sign(x₀)` satisfies
//!   `|aⱼᵀc| < 1` off the support.
//! - Fuchs condition: *some* `c` with `A_Sᵀc = sign(x₀)` and `|aⱼᵀc| < 1` off
//!   the support. This one is exact: it holds iff `x₀` is the unique ℓ1
//!   minimizer.
//!
//! Each implies the next. [`brute_force_l1_oracle`] provides an independent
//! check of the last one by enumerating basic feasible solutions.

use crate::error::{Error, Result};
use crate::numerics::{
    binomial, norm1, norm_inf, pseudoinverse, rank, Combinations, Tolerances, Vector,
};
use crate::polytope::{double, face_exists, spark, AtomMatrix, SignedSupport, ENUMERATION_LIMIT};

/// Coefficients `x₀` together with their signed support.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    coeffs: Vector,
    support: SignedSupport,
}

impl Representation {
    /// Entries with magnitude at most `dedupe_tol` are treated as zero.
    pub fn new(coeffs: Vector, tol: &Tolerances) -> Self {
        let support = SignedSupport::from_coeffs(&coeffs, tol.dedupe_tol);
        Self { coeffs, support }
    }

    pub fn coeffs(&self) -> &Vector {
        &self.coeffs
    }

    pub fn support(&self) -> &SignedSupport {
        &self.support
    }

    /// Number of nonzeros `m`.
    pub fn sparsity(&self) -> usize {
        self.support.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuchsVerdict {
    pub holds: bool,
    /// Dual point in the relative interior of the dual face.
    pub witness: Option<Vector>,
    /// Slack of the witness on the off-support constraints.
    pub margin: f64,
    /// Whether the support columns are linearly independent.
    pub full_rank: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuchsCorollaryVerdict {
    pub holds: bool,
    pub c_opt: Vector,
    pub max_dot: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErcVerdict {
    pub holds: bool,
    /// `+∞` when the support columns are rank deficient.
    pub coefficient: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ErcEnumeration {
    pub holds: bool,
    pub vertex_count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificateReport {
    pub fuchs: FuchsVerdict,
    pub fuchs_corollary: FuchsCorollaryVerdict,
    pub erc: ErcVerdict,
    pub spark: usize,
    pub l0_unique: bool,
    pub l1_unique: bool,
    pub l1l0_equivalent: bool,
}

fn check_len(a: &AtomMatrix, x0: &Representation) -> Result<()> {
    if x0.coeffs.len() != a.len() {
        return Err(Error::DimensionMismatch(format!(
            "representation has {} coefficients for {} atoms",
            x0.coeffs.len(),
            a.len()
        )));
    }
    Ok(())
}

fn check_indices(a: &AtomMatrix, indices: &[usize]) -> Result<()> {
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSupport(
            "indices must be strictly increasing".into(),
        ));
    }
    if indices.last().is_some_and(|&i| i >= a.len()) {
        return Err(Error::InvalidSupport(format!(
            "atom index out of range for {} atoms",
            a.len()
        )));
    }
    Ok(())
}

fn off_support(a: &AtomMatrix, indices: &[usize]) -> Vec<usize> {
    (0..a.len()).filter(|j| !indices.contains(j)).collect()
}

/// Exact test of ℓ1-unique-optimality of `x₀`.
pub fn check_fuchs(a: &AtomMatrix, x0: &Representation, tol: &Tolerances) -> Result<FuchsVerdict> {
    check_len(a, x0)?;
    let support = x0.support();
    if support.is_empty() {
        // y = 0 has the unique minimizer x = 0; c = 0 is strictly interior.
        return Ok(FuchsVerdict {
            holds: true,
            witness: Some(Vector::zeros(a.dim())),
            margin: 1.0,
            full_rank: true,
        });
    }
    let full_rank = rank(&a.columns(&support.indices()), tol) == support.len();
    if !full_rank {
        return Ok(FuchsVerdict {
            holds: false,
            witness: None,
            margin: 0.0,
            full_rank,
        });
    }
    let face = face_exists(a, support, tol)?;
    Ok(FuchsVerdict {
        holds: face.exists,
        witness: face.witness,
        margin: face.margin,
        full_rank,
    })
}

/// The Fuchs condition probed only at `c_opt = (A_S⁺)ᵀ sign(x₀)`.
pub fn check_fuchs_corollary(
    a: &AtomMatrix,
    x0: &Representation,
    tol: &Tolerances,
) -> Result<FuchsCorollaryVerdict> {
    check_len(a, x0)?;
    let support = x0.support();
    if support.is_empty() {
        return Ok(FuchsCorollaryVerdict {
            holds: true,
            c_opt: Vector::zeros(a.dim()),
            max_dot: 0.0,
        });
    }
    let indices = support.indices();
    let a_opt = a.columns(&indices);
    let c_opt = pseudoinverse(&a_opt, tol).transpose() * support.sign_vector();
    let max_dot = off_support(a, &indices)
        .into_iter()
        .map(|j| a.matrix().column(j).dot(&c_opt).abs())
        .fold(0.0_f64, f64::max);
    let full_rank = rank(&a_opt, tol) == indices.len();
    Ok(FuchsCorollaryVerdict {
        holds: full_rank && max_dot < 1.0 - tol.strict_tol,
        c_opt,
        max_dot,
    })
}

/// Exact recovery coefficient `max_{j ∉ S} ‖A_S⁺ aⱼ‖₁` of the support `S`
/// (0-based, strictly increasing).
pub fn check_erc(a: &AtomMatrix, support: &[usize], tol: &Tolerances) -> Result<ErcVerdict> {
    check_indices(a, support)?;
    if support.is_empty() {
        return Ok(ErcVerdict {
            holds: true,
            coefficient: 0.0,
        });
    }
    let a_opt = a.columns(support);
    if rank(&a_opt, tol) < support.len() {
        return Ok(ErcVerdict {
            holds: false,
            coefficient: f64::INFINITY,
        });
    }
    let pinv = pseudoinverse(&a_opt, tol);
    let coefficient = off_support(a, support)
        .into_iter()
        .map(|j| norm1(&(&pinv * a.matrix().column(j))))
        .fold(0.0_f64, f64::max);
    Ok(ErcVerdict {
        holds: coefficient < 1.0 - tol.strict_tol,
        coefficient,
    })
}

/// ERC decided by testing every basis vertex `(A_S⁺)ᵀσ` for sign vectors `σ`
/// with first entry `+` against every off-support constraint `±aⱼ`.
pub fn check_erc_by_sign_enumeration(
    a: &AtomMatrix,
    support: &[usize],
    tol: &Tolerances,
) -> Result<ErcEnumeration> {
    check_indices(a, support)?;
    let m = support.len();
    if m == 0 {
        return Ok(ErcEnumeration {
            holds: true,
            vertex_count: 0,
        });
    }
    let a_opt = a.columns(support);
    if rank(&a_opt, tol) < m {
        return Ok(ErcEnumeration {
            holds: false,
            vertex_count: 0,
        });
    }
    let pinv_t = pseudoinverse(&a_opt, tol).transpose();
    let others = off_support(a, support);
    let patterns = 1usize << (m - 1);
    let mut holds = true;
    for mask in 0..patterns {
        let sigma = Vector::from_iterator(
            m,
            (0..m).map(|p| {
                if p > 0 && (mask >> (m - 1 - p)) & 1 == 1 {
                    -1.0
                } else {
                    1.0
                }
            }),
        );
        let c = &pinv_t * sigma;
        // +aⱼ and −aⱼ at once
        if others
            .iter()
            .any(|&j| a.matrix().column(j).dot(&c).abs() >= 1.0 - tol.strict_tol)
        {
            holds = false;
        }
    }
    Ok(ErcEnumeration {
        holds,
        vertex_count: patterns,
    })
}

/// `m < spark(A) / 2`: any representation with `m` nonzeros is the unique
/// sparsest one.
pub fn l0_unique(a: &AtomMatrix, m: usize, tol: &Tolerances) -> bool {
    2 * m < spark(a, tol)
}

/// Largest `|âᵢᵀâⱼ|` over distinct normalized atoms; zero for a single atom.
pub fn mutual_coherence(a: &AtomMatrix) -> f64 {
    let n = a.len();
    let unit: Vec<Vector> = (0..n).map(|i| a.atom(i).normalize()).collect();
    let mut best = 0.0_f64;
    for i in 0..n {
        for j in i + 1..n {
            best = best.max(unit[i].dot(&unit[j]).abs());
        }
    }
    best
}

pub fn certify(a: &AtomMatrix, x0: &Representation, tol: &Tolerances) -> Result<CertificateReport> {
    let fuchs = check_fuchs(a, x0, tol)?;
    let fuchs_corollary = check_fuchs_corollary(a, x0, tol)?;
    let erc = check_erc(a, &x0.support().indices(), tol)?;
    let spark_value = spark(a, tol);
    let l0 = 2 * x0.sparsity() < spark_value;
    let l1 = fuchs.holds;
    Ok(CertificateReport {
        fuchs,
        fuchs_corollary,
        erc,
        spark: spark_value,
        l0_unique: l0,
        l1_unique: l1,
        l1l0_equivalent: l0 && l1,
    })
}

/// Minimum ℓ1 cost and every distinct minimizer of `min ‖x‖₁ s.t. Ax = y`.
#[derive(Debug, Clone, PartialEq)]
pub struct L1Oracle {
    pub min_cost: f64,
    pub optimal_points: Vec<Vector>,
}

impl L1Oracle {
    /// True when `x` is the only minimizer, up to `dedupe_tol` in max-norm
    /// relative to the size of `x`.
    pub fn is_unique_optimum(&self, x: &Vector, tol: &Tolerances) -> bool {
        self.optimal_points.len() == 1
            && norm_inf(&(&self.optimal_points[0] - x)) <= tol.dedupe_tol * (1.0 + norm_inf(x))
    }
}

/// Enumerates every basic feasible solution of the doubled standard-form
/// problem `min 𝟙ᵀx̃ s.t. Ãx̃ = y, x̃ ≥ 0`.
///
/// The optimal set of that LP is a bounded face, so it is a single point
/// exactly when one basic solution attains the minimum.
pub fn brute_force_l1_oracle(a: &AtomMatrix, y: &Vector, tol: &Tolerances) -> Result<L1Oracle> {
    if y.len() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "signal has length {}, atoms live in R^{}",
            y.len(),
            a.dim()
        )));
    }
    let n = a.len();
    let r = rank(a.matrix(), tol);
    let total: u128 = (1..=r).map(|k| binomial(2 * n, k)).sum();
    if total > ENUMERATION_LIMIT {
        return Err(Error::GuardExceeded {
            count: total,
            limit: ENUMERATION_LIMIT,
        });
    }
    let doubled = double(a);
    let y_scale = 1.0 + norm_inf(y);
    let feas_tol = tol.dedupe_tol * y_scale;

    let mut candidates: Vec<(f64, Vector)> = Vec::new();
    if norm_inf(y) <= feas_tol {
        candidates.push((0.0, Vector::zeros(n)));
    }
    for k in 1..=r {
        for subset in Combinations::new(2 * n, k) {
            if subset.iter().any(|&j| j < n && subset.contains(&(j + n))) {
                continue;
            }
            let cols = doubled.columns().select_columns(subset.iter());
            if rank(&cols, tol) < k {
                continue;
            }
            let z = pseudoinverse(&cols, tol) * y;
            if norm_inf(&(&cols * &z - y)) > feas_tol || z.iter().any(|v| *v < -feas_tol) {
                continue;
            }
            let mut x = Vector::zeros(n);
            let mut cost = 0.0;
            for (&j, &v) in subset.iter().zip(z.iter()) {
                let v = v.max(0.0);
                cost += v;
                if j < n {
                    x[j] += v;
                } else {
                    x[j - n] -= v;
                }
            }
            candidates.push((cost, x));
        }
    }
    let Some(min_cost) = candidates.iter().map(|c| c.0).reduce(f64::min) else {
        return Err(Error::Infeasible);
    };

    let cost_slack = tol.dedupe_tol * (1.0 + min_cost);
    let mut optimal_points: Vec<Vector> = Vec::new();
    for (cost, x) in candidates {
        if cost > min_cost + cost_slack {
            continue;
        }
        let x_scale = 1.0 + norm_inf(&x);
        if !optimal_points
            .iter()
            .any(|p| norm_inf(&(p - &x)) <= tol.dedupe_tol * x_scale)
        {
            optimal_points.push(x);
        }
    }
    Ok(L1Oracle {
        min_cost,
        optimal_points,
    })
}
