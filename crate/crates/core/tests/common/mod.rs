//! Seeded random instances shared by the integration suites.
#![allow(dead_code)]

use polarsparse::{AtomMatrix, Matrix, Representation, Sign, SignedSupport, Tolerances, Vector};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn tol() -> Tolerances {
    Tolerances::default()
}

pub fn gaussian_atoms(rng: &mut ChaCha8Rng, d: usize, n: usize) -> AtomMatrix {
    loop {
        let m = Matrix::from_fn(d, n, |_, _| rng.sample::<f64, _>(StandardNormal));
        if let Ok(a) = AtomMatrix::new(m, &tol()) {
            if (0..n).all(|i| a.atom(i).norm() > 0.1) {
                return a;
            }
        }
    }
}

/// Unit-norm atoms, no two within `1e-3` of being parallel or antiparallel.
pub fn unit_atoms(rng: &mut ChaCha8Rng, d: usize, n: usize) -> AtomMatrix {
    'retry: loop {
        let a = gaussian_atoms(rng, d, n);
        let mut m = a.matrix().clone();
        for mut col in m.column_iter_mut() {
            let norm = col.norm();
            col /= norm;
        }
        for i in 0..n {
            for j in i + 1..n {
                if m.column(i).dot(&m.column(j)).abs() > 1.0 - 1e-3 {
                    continue 'retry;
                }
            }
        }
        return AtomMatrix::new(m, &tol()).unwrap();
    }
}

/// Random signed support of size `m` with magnitudes in `[0.5, 2]`.
pub fn random_representation(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Representation {
    let mut x = Vector::zeros(n);
    for i in sample(rng, n, m).into_iter() {
        let mag = rng.random_range(0.5..2.0);
        x[i] = if rng.random_bool(0.5) { mag } else { -mag };
    }
    Representation::new(x, &tol())
}

/// Representation with unit magnitudes on a signed support.
pub fn unit_representation(n: usize, support: &SignedSupport) -> Representation {
    let mut x = Vector::zeros(n);
    for &(i, s) in support.pairs() {
        x[i] = s.value();
    }
    Representation::new(x, &tol())
}

/// Every signed support of size `k`, all `2^k` sign patterns.
pub fn all_signed_supports(n: usize, k: usize) -> Vec<SignedSupport> {
    let mut out = Vec::new();
    for indices in combinations(n, k) {
        for mask in 0..(1usize << k) {
            let pairs = indices
                .iter()
                .enumerate()
                .map(|(p, &i)| {
                    (
                        i,
                        if mask >> p & 1 == 1 {
                            Sign::Minus
                        } else {
                            Sign::Plus
                        },
                    )
                })
                .collect();
            out.push(SignedSupport::new(pairs).unwrap());
        }
    }
    out
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// One random instance for the recovery property suites: d ∈ {2,3,4},
/// d ≤ n ≤ 7, 1 ≤ m ≤ d.
pub struct Instance {
    pub atoms: AtomMatrix,
    pub x0: Representation,
    pub y: Vector,
}

pub fn recovery_instances(seed: u64, count: usize) -> Vec<Instance> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let d = r.random_range(2..=4);
            let n = r.random_range(d..=7);
            let m = r.random_range(1..=d);
            let atoms = gaussian_atoms(&mut r, d, n);
            let x0 = random_representation(&mut r, n, m);
            let y = atoms.synthesize(x0.coeffs());
            Instance { atoms, x0, y }
        })
        .collect()
}
