//! Independent oracles. Nothing here calls into the elimination, sweep or
//! symbolic code paths under test beyond constructing matrices.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use q2scaling::{IndexSet, RationalMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rows_of(m: &RationalMatrix) -> Vec<Vec<Q>> {
    m.rows().map(<[Q]>::to_vec).collect()
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<Q>]) -> Q {
    if m.is_empty() {
        return Q::one();
    }
    (0..m.len())
        .map(|j| {
            let sub: Vec<Vec<Q>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let t = &m[0][j] * cofactor_det(&sub);
            if j % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum()
}

/// Minor by cofactor expansion of the selected submatrix (1-based sets).
pub fn minor_oracle(m: &RationalMatrix, rows: &[usize], cols: &[usize]) -> Q {
    let sub: Vec<Vec<Q>> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| m.get(i - 1, j - 1).clone()).collect())
        .collect();
    cofactor_det(&sub)
}

pub fn mul_oracle(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
        .collect()
}

/// Sums of principal minors from the characteristic polynomial computed by
/// the Faddeev–LeVerrier recurrence: `c_j = (-1)^j * coef[lambda^(n-j)]`.
pub fn faddeev_leverrier_sums(m: &RationalMatrix) -> Vec<Q> {
    let n = m.n();
    let a = rows_of(m);
    let ident: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
    // coef[k] multiplies lambda^k; coef[n] = 1
    let mut coef = vec![Q::zero(); n + 1];
    coef[n] = Q::one();
    let mut mk: Vec<Vec<Q>> = vec![vec![Q::zero(); n]; n];
    for k in 1..=n {
        let am = mul_oracle(&a, &mk);
        mk = (0..n)
            .map(|i| (0..n).map(|j| &am[i][j] + &coef[n - k + 1] * &ident[i][j]).collect())
            .collect();
        let amk = mul_oracle(&a, &mk);
        let tr: Q = (0..n).map(|i| amk[i][i].clone()).sum();
        coef[n - k] = -tr / Q::from_integer(BigInt::from(k));
    }
    (1..=n)
        .map(|j| if j % 2 == 0 { coef[n - j].clone() } else { -coef[n - j].clone() })
        .collect()
}

/// `Tr(((DA)^2)^(j))` at a concrete `d` through the closed form
/// `sum_{alpha,beta} A(alpha|beta) A(beta|alpha) d^alpha d^beta`.
pub fn closed_form_invariant(a: &RationalMatrix, d: &[Q], j: usize) -> Q {
    let n = a.n();
    let sets: Vec<IndexSet> = IndexSet::all(n, j).collect();
    let weight = |s: &IndexSet| -> Q { s.members().iter().map(|&i| d[i - 1].clone()).product() };
    let mut acc = Q::zero();
    for al in &sets {
        for be in &sets {
            acc += minor_oracle(a, al.members(), be.members())
                * minor_oracle(a, be.members(), al.members())
                * weight(al)
                * weight(be);
        }
    }
    acc
}

pub fn random_integer_matrix(rng: &mut ChaCha8Rng, n: usize, range: i64) -> RationalMatrix {
    let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-range..=range)).collect()).collect();
    RationalMatrix::from_integer_rows(&rows).unwrap()
}

pub fn random_rational_matrix(rng: &mut ChaCha8Rng, n: usize) -> RationalMatrix {
    let entries = (0..n * n)
        .map(|_| Q::new(BigInt::from(rng.gen_range(-9i64..=9)), BigInt::from(rng.gen_range(1i64..=6))))
        .collect();
    RationalMatrix::new(n, entries).unwrap()
}

pub fn random_positive_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Q> {
    (0..n)
        .map(|_| Q::new(BigInt::from(rng.gen_range(1i64..=40)), BigInt::from(rng.gen_range(1i64..=12))))
        .collect()
}

pub fn random_upper_triangular_p(rng: &mut ChaCha8Rng, n: usize) -> RationalMatrix {
    let entries = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            match i.cmp(&j) {
                std::cmp::Ordering::Less => Q::new(BigInt::from(rng.gen_range(-9i64..=9)), BigInt::from(rng.gen_range(1i64..=4))),
                std::cmp::Ordering::Equal => Q::new(BigInt::from(rng.gen_range(1i64..=9)), BigInt::from(rng.gen_range(1i64..=4))),
                std::cmp::Ordering::Greater => Q::zero(),
            }
        })
        .collect();
    RationalMatrix::new(n, entries).unwrap()
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    p
}

/// Deterministic positive points `(k_1/3, ..., k_n/3)` on a small lattice.
pub fn lattice_points(n: usize, count: usize) -> Vec<Vec<Q>> {
    (0..count)
        .map(|s| (0..n).map(|i| Q::new(BigInt::from(((s * (2 * i + 3) + i * 7) % 11 + 1) as i64), BigInt::from(3))).collect())
        .collect()
}
