//! Compound matrices and the all-minors sweep.
//!
//! [`MinorSweep`] walks orders `1, 2, ..., n` and produces every minor of each
//! order by Laplace expansion along the first selected row, reusing the table
//! of the previous order. Entries are kept as integers of the row-cleared
//! matrix (each row multiplied by the lcm of its denominators); the rational
//! minor is recovered by dividing out the product of the row factors.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::matrix::{sign_of, RationalMatrix};
use crate::rational::Rational;

/// The `order`-th compound: all `order x order` minors, rows and columns
/// indexed by lexicographically ordered index sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompoundMatrix {
    pub source_n: usize,
    pub order: usize,
    pub entries: RationalMatrix,
}

impl CompoundMatrix {
    /// Entry `A(rows|cols)`.
    pub fn at(&self, rows: &IndexSet, cols: &IndexSet) -> &Rational {
        self.entries.get(rows.rank() - 1, cols.rank() - 1)
    }
}

pub fn compound(m: &RationalMatrix, order: usize) -> Result<CompoundMatrix> {
    let n = m.n();
    if order == 0 || order > n {
        return Err(Error::OrderOutOfRange { order, n });
    }
    let table = MinorSweep::new(m).nth(order - 1).expect("order within range");
    let size = table.size();
    let entries = (0..size * size).map(|k| table.value(k / size, k % size)).collect();
    Ok(CompoundMatrix {
        source_n: n,
        order,
        entries: RationalMatrix::new(size, entries)?,
    })
}

/// All minors of one order.
#[derive(Debug, Clone)]
pub struct MinorOrder {
    order: usize,
    sets: Vec<IndexSet>,
    values: Vec<BigInt>,
    row_scale: Vec<BigInt>,
}

impl MinorOrder {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn size(&self) -> usize {
        self.sets.len()
    }

    /// Index sets of this order in lexicographic order; position = rank - 1.
    pub fn sets(&self) -> &[IndexSet] {
        &self.sets
    }

    pub fn value(&self, row: usize, col: usize) -> Rational {
        Rational::new(self.values[row * self.size() + col].clone(), self.row_scale[row].clone())
    }

    pub fn sign(&self, row: usize, col: usize) -> i8 {
        sign_of(&self.values[row * self.size() + col])
    }

    pub fn trace(&self) -> Rational {
        (0..self.size()).map(|r| self.value(r, r)).sum()
    }
}

/// Iterator over [`MinorOrder`] for orders `1..=n`.
pub struct MinorSweep {
    n: usize,
    ints: Vec<Vec<BigInt>>,
    row_lcm: Vec<BigInt>,
    current: Option<MinorOrder>,
}

impl MinorSweep {
    pub fn new(m: &RationalMatrix) -> Self {
        let (ints, row_lcm) = m.integer_rows();
        let order0 = MinorOrder {
            order: 0,
            sets: vec![IndexSet::empty(m.n())],
            values: vec![BigInt::one()],
            row_scale: vec![BigInt::one()],
        };
        Self { n: m.n(), ints, row_lcm, current: Some(order0) }
    }

    fn step(&self, prev: &MinorOrder) -> MinorOrder {
        let n = self.n;
        let order = prev.order + 1;
        let sets: Vec<IndexSet> = IndexSet::all(n, order).collect();
        let members: Vec<Vec<usize>> = sets.iter().map(|s| s.zero_based().collect()).collect();
        // rank (0-based) in `prev` of each set with its t-th member removed
        let dropped: Vec<Vec<usize>> = sets
            .iter()
            .map(|s| {
                (0..order)
                    .map(|t| {
                        let mut rest = s.members().to_vec();
                        rest.remove(t);
                        IndexSet::new(n, rest).expect("subset of a valid set").rank() - 1
                    })
                    .collect()
            })
            .collect();
        let psize = prev.size();
        let values: Vec<BigInt> = (0..sets.len())
            .into_par_iter()
            .flat_map_iter(|r| {
                let lead = &self.ints[members[r][0]];
                let rest_row = dropped[r][0];
                let members = &members;
                let dropped = &dropped;
                (0..members.len()).map(move |c| {
                    let mut acc = BigInt::zero();
                    for (t, &col) in members[c].iter().enumerate() {
                        let a = &lead[col];
                        if a.is_zero() {
                            continue;
                        }
                        let sub = &prev.values[rest_row * psize + dropped[c][t]];
                        if t % 2 == 0 {
                            acc += a * sub;
                        } else {
                            acc -= a * sub;
                        }
                    }
                    acc
                })
            })
            .collect();
        let row_scale = members
            .iter()
            .map(|m| m.iter().fold(BigInt::one(), |acc, &i| acc * &self.row_lcm[i]))
            .collect();
        MinorOrder { order, sets, values, row_scale }
    }
}

impl Iterator for MinorSweep {
    type Item = MinorOrder;

    fn next(&mut self) -> Option<MinorOrder> {
        let prev = self.current.take()?;
        if prev.order >= self.n {
            return None;
        }
        let next = self.step(&prev);
        self.current = Some(next.clone());
        Some(next)
    }
}
