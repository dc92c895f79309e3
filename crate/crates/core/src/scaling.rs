//! The family `(DA)^2` over positive diagonal scalings `D`.

use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classes::direct_principal_minor_sums;
use crate::error::{Error, Result};
use crate::guard::Guards;
use crate::index_set::IndexSet;
use crate::matrix::RationalMatrix;
use crate::poly::{PolyMatrix, SparsePolynomial};
use crate::rational::{self, Rational};

/// `diag(d_1, ..., d_n)` with every `d_i > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalScaling {
    #[serde(with = "rational::serde_vec")]
    diagonal: Vec<Rational>,
}

impl DiagonalScaling {
    pub fn new(diagonal: Vec<Rational>) -> Result<Self> {
        if diagonal.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        if let Some(i) = diagonal.iter().position(|d| !d.is_positive()) {
            return Err(Error::NonPositiveScaling { index: i + 1, value: rational::render(&diagonal[i]) });
        }
        Ok(Self { diagonal })
    }

    pub fn identity(n: usize) -> Self {
        Self { diagonal: vec![Rational::one(); n.max(1)] }
    }

    pub fn n(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[Rational] {
        &self.diagonal
    }

    pub fn to_matrix(&self) -> RationalMatrix {
        RationalMatrix::diagonal(&self.diagonal)
    }

    /// `D * a`.
    pub fn apply(&self, a: &RationalMatrix) -> Result<RationalMatrix> {
        a.scale_rows(&self.diagonal)
    }

    /// `(D * a)^2`.
    pub fn scaled_square(&self, a: &RationalMatrix) -> Result<RationalMatrix> {
        Ok(self.apply(a)?.square())
    }
}

impl std::fmt::Display for DiagonalScaling {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.diagonal.iter().map(rational::render).collect();
        write!(f, "diag({})", parts.join(", "))
    }
}

/// `D_eps`: 1 on `alpha`, `eps` elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpsilonScaling {
    pub alpha: IndexSet,
    #[serde(with = "rational::serde_str")]
    pub epsilon: Rational,
    pub scaling: DiagonalScaling,
}

pub fn d_epsilon(n: usize, alpha: &IndexSet, epsilon: Rational) -> Result<EpsilonScaling> {
    if alpha.n() != n {
        return Err(Error::DimensionMismatch { left: alpha.n(), right: n });
    }
    if alpha.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    if !epsilon.is_positive() {
        return Err(Error::NonPositiveScaling { index: 0, value: rational::render(&epsilon) });
    }
    let diagonal = (1..=n)
        .map(|i| if alpha.contains(i) { Rational::one() } else { epsilon.clone() })
        .collect();
    Ok(EpsilonScaling {
        alpha: alpha.clone(),
        epsilon,
        scaling: DiagonalScaling::new(diagonal)?,
    })
}

/// `(DA)` with `d_1..d_n` as indeterminates.
pub fn symbolic_scaled(a: &RationalMatrix) -> PolyMatrix {
    let n = a.n();
    PolyMatrix::from_fn(n, |i, j| SparsePolynomial::variable(n, i).scale(a.get(i, j)))
}

/// `p_j(d) = Tr(((DA)^2)^(j))` for `j = 1..=n`, as polynomials in `d_1..d_n`.
pub fn symbolic_q_invariants(a: &RationalMatrix) -> Result<Vec<SparsePolynomial>> {
    symbolic_q_invariants_with(a, &Guards::default())
}

pub fn symbolic_q_invariants_with(a: &RationalMatrix, guards: &Guards) -> Result<Vec<SparsePolynomial>> {
    let n = a.n();
    guards.check_symbolic(n)?;
    let da = symbolic_scaled(a);
    let sq = da.mat_mul(&da);
    Ok((1..=n)
        .map(|j| {
            IndexSet::all(n, j).fold(SparsePolynomial::zero(n), |acc, alpha| {
                let idx: Vec<usize> = alpha.zero_based().collect();
                &acc + &sq.minor(&idx, &idx)
            })
        })
        .collect())
}

/// Log-uniform sampling of positive scalings.
///
/// Each `d_i = (k / 16) * 10^e` with `e` uniform in `min_exponent..max_exponent`
/// and `k` uniform in `16..160`, so `d_i` lies in `[10^min, 10^max)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SamplingConfig {
    pub budget: usize,
    pub seed: u64,
    pub min_exponent: i32,
    pub max_exponent: i32,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        Self { budget: 10_000, seed: 0, min_exponent: -3, max_exponent: 3 }
    }
}

impl SamplingConfig {
    pub fn new(budget: usize, seed: u64) -> Self {
        Self { budget, seed, ..Self::default() }
    }

    fn validate(&self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::InvalidConfig("sampling budget must be at least 1".into()));
        }
        if self.min_exponent >= self.max_exponent {
            return Err(Error::InvalidConfig("min_exponent must be below max_exponent".into()));
        }
        Ok(())
    }

    /// The `budget` scalings drawn for dimension `n`, in draw order.
    pub fn draws(&self, n: usize) -> Vec<DiagonalScaling> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let ten = Rational::from_integer(10.into());
        (0..self.budget)
            .map(|_| {
                let diagonal = (0..n)
                    .map(|_| {
                        let e = rng.gen_range(self.min_exponent..self.max_exponent);
                        let k: i64 = rng.gen_range(16..160);
                        let power = if e >= 0 {
                            num_traits::pow(ten.clone(), e as usize)
                        } else {
                            num_traits::pow(ten.clone(), (-e) as usize).recip()
                        };
                        rational::ratio(k, 16) * power
                    })
                    .collect();
                DiagonalScaling { diagonal }
            })
            .collect()
    }
}

/// A scaling where `(DA)^2` is not Q.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScalingWitness {
    /// Position in the draw sequence (0-based).
    pub sample_index: usize,
    pub scaling: DiagonalScaling,
    /// Principal-minor sums of `(DA)^2`.
    #[serde(with = "rational::serde_vec")]
    pub sums: Vec<Rational>,
    /// First order `j` with `c_j <= 0`.
    pub failing_order: usize,
}

impl ScalingWitness {
    /// Recomputes `(DA)^2` and its principal-minor sums from scratch.
    pub fn reverify(&self, a: &RationalMatrix) -> Result<bool> {
        let sums = direct_principal_minor_sums(&self.scaling.scaled_square(a)?)?;
        Ok(sums == self.sums && !sums[self.failing_order - 1].is_positive())
    }
}

/// Checks `(DA)^2` for Q at one scaling; returns the witness if it fails.
pub fn q_fails_at(a: &RationalMatrix, d: &DiagonalScaling, sample_index: usize) -> Result<Option<ScalingWitness>> {
    if d.n() != a.n() {
        return Err(Error::DimensionMismatch { left: d.n(), right: a.n() });
    }
    let sums = direct_principal_minor_sums(&d.scaled_square(a)?)?;
    Ok(sums.iter().position(|c| !c.is_positive()).map(|i| ScalingWitness {
        sample_index,
        scaling: d.clone(),
        sums,
        failing_order: i + 1,
    }))
}

/// Searches the deterministic draw sequence for a scaling with `(DA)^2` not Q.
///
/// Samples are evaluated in parallel; the reported witness is always the one
/// with the smallest sample index.
pub fn sample_refute(a: &RationalMatrix, cfg: &SamplingConfig) -> Result<Option<ScalingWitness>> {
    sample_refute_with(a, cfg, &Guards::default())
}

pub fn sample_refute_with(a: &RationalMatrix, cfg: &SamplingConfig, guards: &Guards) -> Result<Option<ScalingWitness>> {
    guards.check_enumeration(a.n())?;
    cfg.validate()?;
    let draws = cfg.draws(a.n());
    let found = draws
        .par_iter()
        .enumerate()
        .map(|(i, d)| q_fails_at(a, d, i).expect("dimensions checked"))
        .find_first(Option::is_some);
    Ok(found.flatten())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CauchyBinetTerm {
    pub beta: IndexSet,
    #[serde(with = "rational::serde_str")]
    pub minor_alpha_beta: Rational,
    #[serde(with = "rational::serde_str")]
    pub minor_beta_alpha: Rational,
    #[serde(with = "rational::serde_str")]
    pub term: Rational,
}

/// `A^2[alpha] = sum_beta A(alpha|beta) * A(beta|alpha)` over `|beta| = |alpha|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CauchyBinetExpansion {
    pub alpha: IndexSet,
    pub terms: Vec<CauchyBinetTerm>,
    #[serde(with = "rational::serde_str")]
    pub total: Rational,
}

impl CauchyBinetExpansion {
    /// The `beta = alpha` term, `A[alpha]^2`.
    pub fn diagonal_term(&self) -> &Rational {
        &self.terms.iter().find(|t| t.beta == self.alpha).expect("alpha is among the betas").term
    }
}

pub fn cauchy_binet_terms(a: &RationalMatrix, alpha: &IndexSet) -> Result<CauchyBinetExpansion> {
    if alpha.n() != a.n() {
        return Err(Error::DimensionMismatch { left: alpha.n(), right: a.n() });
    }
    let terms = IndexSet::all(a.n(), alpha.len())
        .map(|beta| {
            let ab = a.minor(alpha, &beta)?;
            let ba = a.minor(&beta, alpha)?;
            Ok(CauchyBinetTerm { term: &ab * &ba, beta, minor_alpha_beta: ab, minor_beta_alpha: ba })
        })
        .collect::<Result<Vec<_>>>()?;
    let total = terms.iter().map(|t| &t.term).sum();
    Ok(CauchyBinetExpansion { alpha: alpha.clone(), terms, total })
}

/// The conflation behind the refuted argument: the principal minor of
/// `(D_0 A)^2` on `alpha` equals `A[alpha]^2`, which is only one term of
/// the expansion of `A^2[alpha]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruncationCheck {
    pub expansion: CauchyBinetExpansion,
    /// `A^2[alpha]`.
    #[serde(with = "rational::serde_str")]
    pub square_minor: Rational,
    /// `(D_0 A)^2[alpha]`.
    #[serde(with = "rational::serde_str")]
    pub truncated_square_minor: Rational,
}

impl TruncationCheck {
    pub fn conflation_fails(&self) -> bool {
        self.square_minor != self.truncated_square_minor
    }
}

pub fn truncation_check(a: &RationalMatrix, alpha: &IndexSet) -> Result<TruncationCheck> {
    let expansion = cauchy_binet_terms(a, alpha)?;
    let square_minor = a.square().minor(alpha, alpha)?;
    let truncated_square_minor = a.zero_rows_outside(alpha)?.square().minor(alpha, alpha)?;
    Ok(TruncationCheck { expansion, square_minor, truncated_square_minor })
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

    #[test]
    fn invariants_of_counterexample() {
        let p = symbolic_q_invariants(&eq1()).unwrap();
        assert_eq!(p[0].to_string(), "1*d1^2 - 4*d1*d2 + 25*d2^2");
        assert_eq!(p[1].to_string(), "49*d1^2*d2^2");
    }

    #[test]
    fn invariants_of_identity() {
        let p = symbolic_q_invariants(&RationalMatrix::identity(2)).unwrap();
        assert_eq!(p[0].to_string(), "1*d1^2 + 1*d2^2");
        assert_eq!(p[1].to_string(), "1*d1^2*d2^2");
    }

    #[test]
    fn symbolic_scaled_square_entries() {
        let da = symbolic_scaled(&eq1());
        let sq = da.mat_mul(&da);
        let shown: Vec<String> = (0..4).map(|k| sq.get(k / 2, k % 2).to_string()).collect();
        assert_eq!(
            shown,
            [
                "1*d1^2 - 2*d1*d2",
                "2*d1^2 + 10*d1*d2",
                "-1*d1*d2 - 5*d2^2",
                "-2*d1*d2 + 25*d2^2",
            ]
        );
    }

    #[test]
    fn symbolic_guard() {
        assert!(matches!(
            symbolic_q_invariants(&RationalMatrix::identity(7)),
            Err(Error::GuardExceeded { limit: 6, .. })
        ));
    }

    #[test]
    fn d_epsilon_cases() {
        let e = d_epsilon(3, &set(3, &[1, 2]), ratio(1, 10)).unwrap();
        assert_eq!(e.scaling.diagonal(), &[int(1), int(1), ratio(1, 10)]);
        let full = d_epsilon(3, &IndexSet::full(3), ratio(1, 10)).unwrap();
        assert_eq!(full.scaling.to_matrix(), RationalMatrix::identity(3));
        let e = d_epsilon(2, &set(2, &[2]), ratio(1, 7)).unwrap();
        assert_eq!(e.scaling.diagonal(), &[ratio(1, 7), int(1)]);
        assert!(d_epsilon(2, &set(2, &[2]), int(0)).is_err());
        assert!(d_epsilon(2, &set(2, &[2]), int(-1)).is_err());
        assert_eq!(d_epsilon(2, &IndexSet::empty(2), int(1)).unwrap_err(), Error::EmptyIndexSet);
    }

    #[test]
    fn scaling_rejects_nonpositive_entries() {
        assert!(matches!(
            DiagonalScaling::new(vec![int(1), int(0)]),
            Err(Error::NonPositiveScaling { index: 2, .. })
        ));
    }

    #[test]
    fn sampling_finds_nilpotent_failure_at_once() {
        let a = RationalMatrix::from_integer_rows(&[[0, 1], [0, 0]]).unwrap();
        let w = sample_refute(&a, &SamplingConfig::new(50, 7)).unwrap().unwrap();
        assert_eq!(w.sample_index, 0);
        assert_eq!(w.failing_order, 1);
        assert!(w.reverify(&a).unwrap());
    }

    #[test]
    fn sampling_is_silent_for_negated_identity() {
        let a = RationalMatrix::identity(3).scale_rows(&[int(-1), int(-1), int(-1)]).unwrap();
        assert_eq!(sample_refute(&a, &SamplingConfig::new(200, 1)).unwrap(), None);
    }

    #[test]
    fn draws_stay_in_range() {
        let cfg = SamplingConfig::new(500, 3);
        let lo = ratio(1, 1000);
        let hi = int(1000);
        for d in cfg.draws(3) {
            assert!(d.diagonal().iter().all(|x| *x >= lo && *x < hi));
        }
        assert_eq!(cfg.draws(3), cfg.draws(3));
    }

    #[test]
    fn sampling_config_validation() {
        let a = eq1();
        assert!(sample_refute(&a, &SamplingConfig::new(0, 1)).is_err());
        let bad = SamplingConfig { min_exponent: 2, max_exponent: 2, ..SamplingConfig::default() };
        assert!(sample_refute(&a, &bad).is_err());
    }

    #[test]
    fn cauchy_binet_on_counterexample() {
        let exp = cauchy_binet_terms(&eq1(), &IndexSet::full(2)).unwrap();
        assert_eq!(exp.terms.len(), 1);
        assert_eq!(exp.total, int(49));
        assert_eq!(exp.total, eq1().square().determinant());
    }

    #[test]
    fn cauchy_binet_on_fixed_three_by_three() {
        let m = RationalMatrix::from_integer_rows(&[[1, 2, 3], [4, 5, 6], [7, 8, 10]]).unwrap();
        let check = truncation_check(&m, &set(3, &[1, 2])).unwrap();
        // brute-force 2x2 minors by ad - bc:
        // A({1,2}|{1,2}) = 1*5-2*4 = -3;  squared 9
        // A({1,2}|{1,3}) = 1*6-3*4 = -6;  A({1,3}|{1,2}) = 1*8-2*7 = -6;  product 36
        // A({1,2}|{2,3}) = 2*6-3*5 = -3;  A({2,3}|{1,2}) = 4*8-5*7 = -3;  product 9
        let terms: Vec<Rational> = check.expansion.terms.iter().map(|t| t.term.clone()).collect();
        assert_eq!(terms, vec![int(9), int(36), int(9)]);
        assert_eq!(check.expansion.total, int(54));
        assert_eq!(check.square_minor, int(54));
        assert_eq!(check.truncated_square_minor, int(9));
        assert_eq!(check.expansion.diagonal_term(), &int(9));
        assert!(check.conflation_fails());
    }
}
