//! Seeded problem generators for the benchmarks.

use polarsparse::{AtomMatrix, Matrix, Representation, Tolerances, Vector};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// A dictionary, a sparse representation and its signal.
pub struct Problem {
    pub atoms: AtomMatrix,
    pub x0: Representation,
    pub y: Vector,
}

/// Gaussian `d × n` dictionary with unit-norm columns and an `m`-sparse
/// representation with magnitudes in `[0.5, 2]`.
pub fn problem(seed: u64, d: usize, n: usize, m: usize) -> Problem {
    assert!(m <= n, "sparsity {m} exceeds atom count {n}");
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = Matrix::from_fn(d, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    for mut col in a.column_iter_mut() {
        let norm = col.norm();
        col /= norm;
    }
    let atoms = AtomMatrix::new(a, &tol).expect("gaussian columns are nonzero");
    let mut x = Vector::zeros(n);
    for i in sample(&mut rng, n, m).into_iter() {
        let mag = rng.random_range(0.5..2.0);
        x[i] = if rng.random_bool(0.5) { mag } else { -mag };
    }
    let y = atoms.synthesize(&x);
    Problem {
        atoms,
        x0: Representation::new(x, &tol),
        y,
    }
}
