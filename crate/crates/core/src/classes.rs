//! Membership in the P / P0 / P0+ / Q hierarchy and anti-sign symmetry.
//!
//! "Q" here is the Hershkowitz–Keller class: every sum of principal minors of
//! a fixed order is positive, i.e. `Tr(A^(j)) > 0` for all `j`. It is not the
//! Q-matrix of the linear complementarity literature.
//!
//! Every failing verdict carries the first violation found, scanning orders
//! upwards and index sets lexicographically within an order.

use serde::Serialize;

use crate::compound::{MinorOrder, MinorSweep};
use crate::error::Result;
use crate::guard::Guards;
use crate::index_set::IndexSet;
use crate::matrix::RationalMatrix;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict<W> {
    Holds,
    Fails { witness: W },
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails { witness } => Some(witness),
        }
    }
}

/// A principal minor `A[alpha]` with its value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinorWitness {
    pub alpha: IndexSet,
    #[serde(with = "rational::serde_str")]
    pub minor: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum P0PlusWitness {
    NegativeMinor(MinorWitness),
    NoPositiveMinorOfOrder { order: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumWitness {
    pub order: usize,
    #[serde(with = "rational::serde_str")]
    pub sum: Rational,
}

/// Distinct equal-size `alpha`, `beta` with `A(alpha|beta) * A(beta|alpha) > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub alpha: IndexSet,
    pub beta: IndexSet,
    #[serde(with = "rational::serde_str")]
    pub minor_alpha_beta: Rational,
    #[serde(with = "rational::serde_str")]
    pub minor_beta_alpha: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub n: usize,
    /// `c_j = Tr(A^(j))` for `j = 1..=n`.
    #[serde(with = "rational::serde_vec")]
    pub principal_minor_sums: Vec<Rational>,
    /// Whether order `j` (index `j - 1`) has a strictly positive principal minor.
    pub positive_minor_by_order: Vec<bool>,
    pub p: Verdict<MinorWitness>,
    pub p0: Verdict<MinorWitness>,
    pub p0_plus: Verdict<P0PlusWitness>,
    pub q: Verdict<SumWitness>,
    pub anti_sign_symmetric: Verdict<PairWitness>,
}

impl ClassReport {
    /// Verdict flags in the order P, P0, P0+, Q, anti-sign symmetric.
    pub fn flags(&self) -> [bool; 5] {
        [
            self.p.holds(),
            self.p0.holds(),
            self.p0_plus.holds(),
            self.q.holds(),
            self.anti_sign_symmetric.holds(),
        ]
    }
}

/// `c_1..c_n`, computed by direct principal-minor enumeration and by traces
/// of the compound matrices. The two routes must agree.
pub fn principal_minor_sums(m: &RationalMatrix) -> Result<Vec<Rational>> {
    principal_minor_sums_with(m, &Guards::default())
}

pub fn principal_minor_sums_with(m: &RationalMatrix, guards: &Guards) -> Result<Vec<Rational>> {
    guards.check_enumeration(m.n())?;
    let direct = direct_principal_minor_sums(m)?;
    let traced: Vec<Rational> = MinorSweep::new(m).map(|order| order.trace()).collect();
    assert_eq!(direct, traced, "principal minor sums disagree between enumeration and compound traces");
    Ok(direct)
}

/// Principal-minor sums by elimination on each principal submatrix.
pub(crate) fn direct_principal_minor_sums(m: &RationalMatrix) -> Result<Vec<Rational>> {
    let n = m.n();
    (1..=n)
        .map(|j| {
            IndexSet::all(n, j)
                .map(|alpha| m.minor(&alpha, &alpha))
                .sum::<Result<Rational>>()
        })
        .collect()
}

/// Q membership from the sums alone: every `c_j > 0`.
pub(crate) fn q_verdict(sums: &[Rational]) -> Verdict<SumWitness> {
    match sums.iter().position(|c| c <= &Rational::from_integer(0.into())) {
        None => Verdict::Holds,
        Some(i) => Verdict::Fails { witness: SumWitness { order: i + 1, sum: sums[i].clone() } },
    }
}

pub fn classify(m: &RationalMatrix) -> Result<ClassReport> {
    classify_with(m, &Guards::default())
}

/// All five predicates from a single sweep over every minor.
pub fn classify_with(m: &RationalMatrix, guards: &Guards) -> Result<ClassReport> {
    guards.check_enumeration(m.n())?;
    let mut sums = Vec::with_capacity(m.n());
    let mut positive_minor_by_order = Vec::with_capacity(m.n());
    let mut p_fail = None;
    let mut p0_fail = None;
    let mut pair_fail = None;

    for order in MinorSweep::new(m) {
        let mut has_positive = false;
        for r in 0..order.size() {
            let sign = order.sign(r, r);
            has_positive |= sign > 0;
            if sign <= 0 && p_fail.is_none() {
                p_fail = Some(principal_witness(&order, r));
            }
            if sign < 0 && p0_fail.is_none() {
                p0_fail = Some(principal_witness(&order, r));
            }
        }
        if pair_fail.is_none() {
            pair_fail = first_same_sign_pair(&order);
        }
        positive_minor_by_order.push(has_positive);
        sums.push(order.trace());
    }

    let p0_plus = match (&p0_fail, positive_minor_by_order.iter().position(|&b| !b)) {
        (Some(w), _) => Verdict::Fails { witness: P0PlusWitness::NegativeMinor(w.clone()) },
        (None, Some(i)) => Verdict::Fails { witness: P0PlusWitness::NoPositiveMinorOfOrder { order: i + 1 } },
        (None, None) => Verdict::Holds,
    };
    let to_verdict = |w: Option<MinorWitness>| w.map_or(Verdict::Holds, |witness| Verdict::Fails { witness });

    Ok(ClassReport {
        n: m.n(),
        q: q_verdict(&sums),
        principal_minor_sums: sums,
        positive_minor_by_order,
        p: to_verdict(p_fail),
        p0: to_verdict(p0_fail),
        p0_plus,
        anti_sign_symmetric: pair_fail.map_or(Verdict::Holds, |witness| Verdict::Fails { witness }),
    })
}

pub fn is_anti_sign_symmetric(m: &RationalMatrix) -> Result<Verdict<PairWitness>> {
    is_anti_sign_symmetric_with(m, &Guards::default())
}

pub fn is_anti_sign_symmetric_with(m: &RationalMatrix, guards: &Guards) -> Result<Verdict<PairWitness>> {
    guards.check_enumeration(m.n())?;
    Ok(MinorSweep::new(m)
        .find_map(|order| first_same_sign_pair(&order))
        .map_or(Verdict::Holds, |witness| Verdict::Fails { witness }))
}

fn principal_witness(order: &MinorOrder, r: usize) -> MinorWitness {
    MinorWitness { alpha: order.sets()[r].clone(), minor: order.value(r, r) }
}

fn first_same_sign_pair(order: &MinorOrder) -> Option<PairWitness> {
    let size = order.size();
    for a in 0..size {
        for b in a + 1..size {
            if order.sign(a, b) * order.sign(b, a) > 0 {
                return Some(PairWitness {
                    alpha: order.sets()[a].clone(),
                    beta: order.sets()[b].clone(),
                    minor_alpha_beta: order.value(a, b),
                    minor_beta_alpha: order.value(b, a),
                });
            }
        }
    }
    None
}
