//! Decide, certify and demonstrate when Basis Pursuit (ℓ1 minimization) and
//! greedy pursuit recover sparse representations `y = A x`.
//!
//! The crate is organised bottom-up:
//!
//! - [`numerics`]: pseudoinverse, rank, least squares and the [`Tolerances`] policy.
//! - [`lp`]: dense Bland-rule simplex and the max-margin feasibility LP.
//! - [`polytope`]: the doubled matrix `[A, −A]`, polar-polytope vertices,
//!   face tests, neighbourliness, spark and cone membership.
//! - [`certificates`]: Fuchs condition, its pseudoinverse corollary, the
//!   exact recovery coefficient, and a brute-force ℓ1 oracle.
//! - [`pursuit`]: Basis Pursuit (simplex and vertex enumeration), OMP and MP.

pub mod certificates;
pub mod error;
pub mod lp;
pub mod numerics;
pub mod polytope;
pub mod pursuit;

pub use certificates::{
    brute_force_l1_oracle, certify, check_erc, check_erc_by_sign_enumeration, check_fuchs,
    check_fuchs_corollary, l0_unique, CertificateReport, ErcVerdict, FuchsCorollaryVerdict,
    FuchsVerdict, L1Oracle, Representation,
};
pub use error::{Error, Result};
pub use lp::{solve_margin_lp, solve_standard, LpSolution, LpStatus, MarginSolution, StandardLp};
pub use numerics::{Matrix, Tolerances, Vector};
pub use polytope::{
    cone_contains, double, enumerate_polar_vertices, face_exists, is_k_neighbourly, spark,
    AtomMatrix, DoubledMatrix, FaceQueryResult, PolarVertex, Sign, SignedSupport,
};
pub use pursuit::{
    basis_pursuit, basis_pursuit_brute, mp, omp, omp_eventual, recover_primal_from_dual, BpResult,
    PursuitStep, PursuitTrace,
};
