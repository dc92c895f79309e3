//! Sorted subsets of `{1..n}` addressing minors and compound entries.
//!
//! Indices are 1-based on the public surface. Subsets of a fixed size are
//! ranked lexicographically, the ordering used for compound matrix rows and
//! columns.

use std::fmt;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    n: usize,
    members: Vec<usize>,
}

impl IndexSet {
    pub fn new(n: usize, members: Vec<usize>) -> Result<Self> {
        for &m in &members {
            if m == 0 || m > n {
                return Err(Error::IndexOutOfRange { index: m, n });
            }
        }
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::UnsortedIndexSet(members));
        }
        Ok(Self { n, members })
    }

    /// The empty set, used only for the order-0 minor convention.
    pub fn empty(n: usize) -> Self {
        Self { n, members: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        Self { n, members: (1..=n).collect() }
    }

    pub fn singleton(n: usize, i: usize) -> Result<Self> {
        Self::new(n, vec![i])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub(crate) fn zero_based(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().map(|m| m - 1)
    }

    /// 1-based lexicographic rank among all subsets of the same size.
    pub fn rank(&self) -> usize {
        let k = self.len();
        let mut rank = 0;
        let mut prev = 0;
        for (i, &c) in self.members.iter().enumerate() {
            for v in prev + 1..c {
                rank += binomial(self.n - v, k - i - 1);
            }
            prev = c;
        }
        rank + 1
    }

    /// Inverse of [`IndexSet::rank`].
    pub fn unrank(n: usize, k: usize, rank: usize) -> Result<Self> {
        let total = binomial(n, k);
        if rank == 0 || rank > total {
            return Err(Error::IndexOutOfRange { index: rank, n: total });
        }
        let mut rest = rank - 1;
        let mut members = Vec::with_capacity(k);
        let mut v = 1;
        for i in 0..k {
            loop {
                let block = binomial(n - v, k - i - 1);
                if rest < block {
                    break;
                }
                rest -= block;
                v += 1;
            }
            members.push(v);
            v += 1;
        }
        Ok(Self { n, members })
    }

    /// All `k`-subsets of `{1..n}` in lexicographic order.
    pub fn all(n: usize, k: usize) -> impl Iterator<Item = IndexSet> {
        (1..=n).combinations(k).map(move |members| IndexSet { n, members })
    }
}

/// Serialized as the plain list of 1-based members.
impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.members.serialize(s)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.members.iter().join(","))
    }
}
