//! Dense square matrices over exact rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::rational::{self, Rational};

/// Row-major `n x n` matrix of [`Rational`] entries, `n >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(n: usize, entries: Vec<Rational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if entries.len() != n * n {
            return Err(Error::EntryCount { n, expected: n * n, got: entries.len() });
        }
        Ok(Self { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::EntryCount { n, expected: n, got: bad.len() });
        }
        Self::new(n, rows.into_iter().flatten().collect())
    }

    pub fn from_integer_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| rational::int(v)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![Rational::one(); n.max(1)])
    }

    pub fn zero(n: usize) -> Self {
        let n = n.max(1);
        Self { n, entries: vec![Rational::zero(); n * n] }
    }

    pub fn diagonal(diag: &[Rational]) -> Self {
        let mut m = Self::zero(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.entries[i * m.n + i] = d.clone();
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 0-based position `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.n)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn mat_mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Rational::zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc += a * other.get(k, j);
                    }
                }
                out.push(acc);
            }
        }
        Ok(Self { n, entries: out })
    }

    pub fn square(&self) -> RationalMatrix {
        self.mat_mul(self).expect("same dimension")
    }

    /// `diag(d) * self`: row `i` multiplied by `d[i]`.
    pub fn scale_rows(&self, d: &[Rational]) -> Result<RationalMatrix> {
        if d.len() != self.n {
            return Err(Error::DimensionMismatch { left: d.len(), right: self.n });
        }
        let entries = self
            .rows()
            .zip(d)
            .flat_map(|(row, di)| row.iter().map(move |x| x * di))
            .collect();
        Ok(Self { n: self.n, entries })
    }

    pub fn transpose(&self) -> RationalMatrix {
        let n = self.n;
        let entries = (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect();
        Self { n, entries }
    }

    /// `P^T M P` for the permutation matrix sending basis vector `perm[i]` to `i`:
    /// entry `(i, j)` of the result is `M[perm[i]][perm[j]]` (0-based).
    pub fn permute(&self, perm: &[usize]) -> Result<RationalMatrix> {
        let n = self.n;
        if perm.len() != n {
            return Err(Error::DimensionMismatch { left: perm.len(), right: n });
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidConfig(format!("{perm:?} is not a permutation")));
            }
        }
        let entries = (0..n * n).map(|k| self.get(perm[k / n], perm[k % n]).clone()).collect();
        Ok(Self { n, entries })
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    fn check_set(&self, s: &IndexSet) -> Result<()> {
        if s.n() != self.n {
            return Err(Error::DimensionMismatch { left: s.n(), right: self.n });
        }
        Ok(())
    }

    /// Determinant of the submatrix on `rows x cols`. The order-0 minor is 1.
    pub fn minor(&self, rows: &IndexSet, cols: &IndexSet) -> Result<Rational> {
        self.check_set(rows)?;
        self.check_set(cols)?;
        if rows.len() != cols.len() {
            return Err(Error::MinorShape { rows: rows.len(), cols: cols.len() });
        }
        let r: Vec<usize> = rows.zero_based().collect();
        let c: Vec<usize> = cols.zero_based().collect();
        Ok(self.fraction_free_det(&r, &c))
    }

    pub fn determinant(&self) -> Rational {
        let all: Vec<usize> = (0..self.n).collect();
        self.fraction_free_det(&all, &all)
    }

    /// Copy with every row outside `alpha` zeroed; the `eps -> 0` limit of `D_eps * M`.
    pub fn zero_rows_outside(&self, alpha: &IndexSet) -> Result<RationalMatrix> {
        self.check_set(alpha)?;
        if alpha.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        let mut out = self.clone();
        for i in 0..self.n {
            if !alpha.contains(i + 1) {
                for x in &mut out.entries[i * self.n..(i + 1) * self.n] {
                    *x = Rational::zero();
                }
            }
        }
        Ok(out)
    }

    /// Integer rows `L_i * row_i` with `L_i` the lcm of that row's denominators.
    pub(crate) fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        self.rows()
            .map(|row| {
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                let ints = row.iter().map(|x| x.numer() * (&l / x.denom())).collect();
                (ints, l)
            })
            .unzip()
    }

    fn fraction_free_det(&self, rows: &[usize], cols: &[usize]) -> Rational {
        if rows.is_empty() {
            return Rational::one();
        }
        let mut scale = BigInt::one();
        let sub: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|&i| {
                let row = self.row(i);
                let l = cols.iter().fold(BigInt::one(), |acc, &j| acc.lcm(row[j].denom()));
                let ints = cols.iter().map(|&j| row[j].numer() * (&l / row[j].denom())).collect();
                scale *= &l;
                ints
            })
            .collect();
        Rational::new(bareiss_determinant(sub), scale)
    }
}

/// Fraction-free Gaussian elimination; every division is exact.
pub(crate) fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            for j in k + 1..n {
                let v = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

pub(crate) fn sign_of(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Display for RationalMatrix {
    /// Matrix text format: `n` on the first line, then one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(rational::render).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn eq1() -> RationalMatrix {
        RationalMatrix::from_integer_rows(&[[1, 2], [-1, 5]]).unwrap()
    }

    fn set(n: usize, m: &[usize]) -> IndexSet {
        IndexSet::new(n, m.to_vec()).unwrap()
    }

    // Laplace expansion along the first row; independent of the elimination path.
    fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
        if m.is_empty() {
            return Rational::one();
        }
        let mut acc = Rational::zero();
        for j in 0..m.len() {
            let sub: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][j] * cofactor_det(&sub);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn determinant_of_counterexample_matrix() {
        assert_eq!(eq1().determinant(), int(7));
        assert_eq!(eq1().minor(&set(2, &[1, 2]), &set(2, &[1, 2])).unwrap(), int(7));
    }

    #[test]
    fn determinant_matches_cofactor_oracle() {
        let m = RationalMatrix::from_integer_rows(&[[1, 2, 3], [4, 5, 6], [7, 8, 10]]).unwrap();
        let rows: Vec<Vec<Rational>> = m.rows().map(<[_]>::to_vec).collect();
        let oracle = cofactor_det(&rows);
        assert_eq!(oracle, int(-3));
        assert_eq!(m.determinant(), oracle);
        // 2x2 minor on rows {1,2}, cols {2,3}: 2*6 - 3*5
        let ad_bc = int(2 * 6 - 3 * 5);
        assert_eq!(m.minor(&set(3, &[1, 2]), &set(3, &[2, 3])).unwrap(), ad_bc);
    }

    #[test]
    fn rational_entries_and_pivoting() {
        let m = RationalMatrix::from_rows(vec![
            vec![int(0), ratio(1, 2), int(1)],
            vec![ratio(2, 3), int(0), ratio(-1, 4)],
            vec![int(1), int(1), int(0)],
        ])
        .unwrap();
        let rows: Vec<Vec<Rational>> = m.rows().map(<[_]>::to_vec).collect();
        assert_eq!(m.determinant(), cofactor_det(&rows));
    }

    #[test]
    fn identity_minors() {
        let i3 = RationalMatrix::identity(3);
        assert_eq!(i3.determinant(), int(1));
        assert_eq!(i3.minor(&set(3, &[1, 3]), &set(3, &[1, 3])).unwrap(), int(1));
        assert_eq!(i3.minor(&set(3, &[1, 3]), &set(3, &[1, 2])).unwrap(), int(0));
        assert_eq!(i3.minor(&IndexSet::empty(3), &IndexSet::empty(3)).unwrap(), int(1));
    }

    #[test]
    fn minor_errors() {
        let m = eq1();
        assert!(matches!(
            m.minor(&set(2, &[1]), &set(2, &[1, 2])),
            Err(Error::MinorShape { rows: 1, cols: 2 })
        ));
        assert!(matches!(
            m.minor(&set(3, &[3]), &set(3, &[1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn products() {
        let a = eq1();
        assert_eq!(a.square(), RationalMatrix::from_integer_rows(&[[-1, 12], [-6, 23]]).unwrap());
        assert_eq!(RationalMatrix::identity(2).mat_mul(&a).unwrap(), a);
        assert_eq!(
            a.scale_rows(&[int(2), int(3)]).unwrap(),
            RationalMatrix::from_integer_rows(&[[2, 4], [-3, 15]]).unwrap()
        );
        assert!(a.mat_mul(&RationalMatrix::identity(3)).is_err());
    }

    #[test]
    fn zero_rows_outside_cases() {
        let m = RationalMatrix::from_integer_rows(&[[1, 2, 3], [4, 5, 6], [7, 8, 9]]).unwrap();
        let z = m.zero_rows_outside(&set(3, &[1, 2])).unwrap();
        assert_eq!(z, RationalMatrix::from_integer_rows(&[[1, 2, 3], [4, 5, 6], [0, 0, 0]]).unwrap());
        assert_eq!(m.zero_rows_outside(&IndexSet::full(3)).unwrap(), m);
        let i = RationalMatrix::identity(3).zero_rows_outside(&set(3, &[1])).unwrap();
        assert_eq!(i, RationalMatrix::diagonal(&[int(1), int(0), int(0)]));
        assert_eq!(m.zero_rows_outside(&IndexSet::empty(3)), Err(Error::EmptyIndexSet));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(RationalMatrix::new(0, vec![]), Err(Error::EmptyMatrix));
        assert!(RationalMatrix::from_integer_rows(&[vec![1, 2], vec![3]]).is_err());
        assert!(RationalMatrix::identity(2).permute(&[0, 0]).is_err());
    }
}
