//! Testing the implication "(DA)^2 is Q for every positive diagonal D
//! implies A^2 is P0+" on concrete matrices, and searching for violations.
//!
//! Three versions of the claim are tracked: the general one, the one
//! restricted to 2x2 matrices, and the one restricted to anti-sign symmetric
//! matrices. Only the forward implication is ever evaluated.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::certificate::{certify_with, CertVerdict, Certificate, CertifyOptions};
use crate::classes::{classify_with, ClassReport};
use crate::error::{Error, Result};
use crate::guard::Guards;
use crate::matrix::RationalMatrix;
use crate::poly::SparsePolynomial;
use crate::rational;
use crate::scaling::{q_fails_at, sample_refute_with, DiagonalScaling, SamplingConfig, ScalingWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    /// Any square matrix.
    General,
    /// Restricted to 2x2 matrices.
    TwoByTwo,
    /// Restricted to anti-sign symmetric matrices.
    AntiSignSymmetric,
}

impl std::fmt::Display for Claim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Claim::General => "general claim",
            Claim::TwoByTwo => "2x2 claim",
            Claim::AntiSignSymmetric => "anti-sign-symmetric claim",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum HypothesisStatus {
    /// Every invariant `p_j` is certified positive on the open orthant.
    CertifiedForAll,
    /// Some invariant is uncertified and sampling found no violation.
    NoCounterexampleFound { budget: usize },
    /// `(DA)^2` is not Q at this scaling.
    RefutedAt { witness: ScalingWitness },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EvidenceGrade {
    /// The hypothesis is proven by certificates.
    Certified,
    /// The hypothesis rests on sampling only.
    SamplingOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RefutationVerdict {
    /// Hypothesis certified, conclusion fails.
    Counterexample { claims: Vec<Claim> },
    /// Hypothesis only sampled, conclusion fails.
    Undetermined { suspected: Vec<Claim> },
    /// Hypothesis refuted, or conclusion holds.
    Consistent,
}

impl RefutationVerdict {
    pub fn is_consistent(&self) -> bool {
        matches!(self, RefutationVerdict::Consistent)
    }

    pub fn refutes(&self, claim: Claim) -> bool {
        matches!(self, RefutationVerdict::Counterexample { claims } if claims.contains(&claim))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideFacts {
    pub two_by_two: bool,
    pub anti_sign_symmetric: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefutationReport {
    #[serde(serialize_with = "serialize_matrix")]
    pub matrix: RationalMatrix,
    pub invariants: Vec<SparsePolynomial>,
    pub certificates: Vec<Certificate>,
    pub hypothesis: HypothesisStatus,
    #[serde(serialize_with = "serialize_matrix")]
    pub square: RationalMatrix,
    /// Classification of `A^2`.
    pub conclusion: ClassReport,
    pub side_facts: SideFacts,
    pub evidence: Option<EvidenceGrade>,
    pub verdict: RefutationVerdict,
}

pub(crate) fn serialize_matrix<S: serde::Serializer>(m: &RationalMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = m.rows().map(|r| r.iter().map(rational::render).collect()).collect();
    rows.serialize(s)
}

/// Verdict implied by the hypothesis, the conclusion and the side facts.
pub fn derive_verdict(
    hypothesis: &HypothesisStatus,
    conclusion: &ClassReport,
    facts: &SideFacts,
) -> (Option<EvidenceGrade>, RefutationVerdict) {
    let grade = match hypothesis {
        HypothesisStatus::CertifiedForAll => EvidenceGrade::Certified,
        HypothesisStatus::NoCounterexampleFound { .. } => EvidenceGrade::SamplingOnly,
        HypothesisStatus::RefutedAt { .. } => return (None, RefutationVerdict::Consistent),
    };
    if conclusion.p0_plus.holds() {
        return (Some(grade), RefutationVerdict::Consistent);
    }
    let mut claims = vec![Claim::General];
    if facts.two_by_two {
        claims.push(Claim::TwoByTwo);
    }
    if facts.anti_sign_symmetric {
        claims.push(Claim::AntiSignSymmetric);
    }
    let verdict = match grade {
        EvidenceGrade::Certified => RefutationVerdict::Counterexample { claims },
        EvidenceGrade::SamplingOnly => RefutationVerdict::Undetermined { suspected: claims },
    };
    (Some(grade), verdict)
}

impl RefutationReport {
    /// Recomputes the verdict from the stored parts.
    pub fn is_self_consistent(&self) -> bool {
        derive_verdict(&self.hypothesis, &self.conclusion, &self.side_facts) == (self.evidence, self.verdict.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct AnalysisOptions {
    pub guards: Guards,
    pub certify: CertifyOptions,
}

pub fn verify_refutation(a: &RationalMatrix, sampling: &SamplingConfig) -> Result<RefutationReport> {
    verify_refutation_with(a, sampling, &AnalysisOptions::default())
}

pub fn verify_refutation_with(
    a: &RationalMatrix,
    sampling: &SamplingConfig,
    opts: &AnalysisOptions,
) -> Result<RefutationReport> {
    let invariants = crate::scaling::symbolic_q_invariants_with(a, &opts.guards)?;
    let certificates: Vec<Certificate> = invariants.iter().map(|p| certify_with(p, &opts.certify)).collect();
    let hypothesis = hypothesis_from(a, &certificates, sampling, &opts.guards)?;
    let square = a.square();
    let conclusion = classify_with(&square, &opts.guards)?;
    let side_facts = SideFacts {
        two_by_two: a.n() == 2,
        anti_sign_symmetric: crate::classes::is_anti_sign_symmetric_with(a, &opts.guards)?.holds(),
    };
    let (evidence, verdict) = derive_verdict(&hypothesis, &conclusion, &side_facts);
    Ok(RefutationReport {
        matrix: a.clone(),
        invariants,
        certificates,
        hypothesis,
        square,
        conclusion,
        side_facts,
        evidence,
        verdict,
    })
}

fn hypothesis_from(
    a: &RationalMatrix,
    certificates: &[Certificate],
    sampling: &SamplingConfig,
    guards: &Guards,
) -> Result<HypothesisStatus> {
    // a nonpositive invariant value is directly a failing scaling
    for cert in certificates {
        if let Some(point) = cert.witness_point() {
            let d = DiagonalScaling::new(point.to_vec())?;
            let witness = q_fails_at(a, &d, 0)?.expect("invariant value <= 0 means (DA)^2 is not Q");
            return Ok(HypothesisStatus::RefutedAt { witness });
        }
    }
    if certificates.iter().all(|c| c.verdict == CertVerdict::PositiveOnOrthant) {
        return Ok(HypothesisStatus::CertifiedForAll);
    }
    Ok(match sample_refute_with(a, sampling, guards)? {
        Some(witness) => HypothesisStatus::RefutedAt { witness },
        None => HypothesisStatus::NoCounterexampleFound { budget: sampling.budget },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorMode {
    /// Integer entries uniform in `[-range, range]`.
    Uniform,
    /// `B^T B + I` with `B` drawn as in `Uniform`; symmetric positive definite.
    SymmetricPositiveDefinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HuntConfig {
    pub n: usize,
    pub range: i64,
    pub count: usize,
    pub budget: usize,
    pub seed: u64,
    pub mode: GeneratorMode,
    pub reject_singular: bool,
}

impl Default for HuntConfig {
    fn default() -> Self {
        Self {
            n: 2,
            range: 5,
            count: 1000,
            budget: 1000,
            seed: 42,
            mode: GeneratorMode::Uniform,
            reject_singular: false,
        }
    }
}

impl HuntConfig {
    pub fn validate(&self, guards: &Guards) -> Result<()> {
        if self.n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if self.count == 0 || self.budget == 0 {
            return Err(Error::InvalidConfig("count and budget must be at least 1".into()));
        }
        if self.range < 0 {
            return Err(Error::InvalidConfig("range must be nonnegative".into()));
        }
        if self.reject_singular && self.range == 0 && self.mode == GeneratorMode::Uniform {
            return Err(Error::InvalidConfig("range 0 only yields the singular zero matrix".into()));
        }
        guards.check_symbolic(self.n)
    }

    /// The candidate stream, deterministic in the config.
    pub fn candidates(&self) -> Vec<RationalMatrix> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut out = Vec::with_capacity(self.count);
        while out.len() < self.count {
            let raw: Vec<Vec<i64>> = (0..self.n)
                .map(|_| (0..self.n).map(|_| rng.gen_range(-self.range..=self.range)).collect())
                .collect();
            let m = match self.mode {
                GeneratorMode::Uniform => RationalMatrix::from_integer_rows(&raw).expect("square"),
                GeneratorMode::SymmetricPositiveDefinite => {
                    let b = RationalMatrix::from_integer_rows(&raw).expect("square");
                    let btb = b.transpose().mat_mul(&b).expect("square");
                    let id = RationalMatrix::identity(self.n);
                    let entries = btb.entries().iter().zip(id.entries()).map(|(x, y)| x + y).collect();
                    RationalMatrix::new(self.n, entries).expect("square")
                }
            };
            if self.reject_singular && num_traits::Zero::is_zero(&m.determinant()) {
                continue;
            }
            out.push(m);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HuntFinding {
    pub candidate_index: usize,
    pub report: RefutationReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HuntSummary {
    pub config: HuntConfig,
    pub candidates: usize,
    pub counterexamples: usize,
    pub undetermined: usize,
    pub findings: Vec<HuntFinding>,
}

/// Runs [`verify_refutation`] on every candidate; keeps the non-consistent
/// reports in candidate order.
pub fn hunt(cfg: &HuntConfig) -> Result<HuntSummary> {
    hunt_with(cfg, &AnalysisOptions::default())
}

pub fn hunt_with(cfg: &HuntConfig, opts: &AnalysisOptions) -> Result<HuntSummary> {
    cfg.validate(&opts.guards)?;
    let candidates = cfg.candidates();
    let sampling = SamplingConfig::new(cfg.budget, cfg.seed);
    let reports = candidates
        .par_iter()
        .map(|a| verify_refutation_with(a, &sampling, opts))
        .collect::<Result<Vec<_>>>()?;
    let findings: Vec<HuntFinding> = reports
        .into_iter()
        .enumerate()
        .filter(|(_, r)| !r.verdict.is_consistent())
        .map(|(candidate_index, report)| HuntFinding { candidate_index, report })
        .collect();
    let counterexamples = findings
        .iter()
        .filter(|f| matches!(f.report.verdict, RefutationVerdict::Counterexample { .. }))
        .count();
    Ok(HuntSummary {
        config: *cfg,
        candidates: candidates.len(),
        counterexamples,
        undetermined: findings.len() - counterexamples,
        findings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn mat(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_integer_rows(rows).unwrap()
    }

    #[test]
    fn counterexample_refutes_all_three_claims() {
        let r = verify_refutation(&mat(&[&[1, 2], &[-1, 5]]), &SamplingConfig::new(100, 0)).unwrap();
        assert_eq!(r.hypothesis, HypothesisStatus::CertifiedForAll);
        assert_eq!(r.evidence, Some(EvidenceGrade::Certified));
        assert_eq!(
            r.verdict,
            RefutationVerdict::Counterexample {
                claims: vec![Claim::General, Claim::TwoByTwo, Claim::AntiSignSymmetric]
            }
        );
        assert_eq!(r.conclusion.p0.witness().unwrap().minor, int(-1));
        assert!(r.is_self_consistent());
    }

    #[test]
    fn identity_is_consistent() {
        let r = verify_refutation(&RationalMatrix::identity(2), &SamplingConfig::new(100, 0)).unwrap();
        assert_eq!(r.hypothesis, HypothesisStatus::CertifiedForAll);
        assert_eq!(r.verdict, RefutationVerdict::Consistent);
    }

    #[test]
    fn nilpotent_refutes_hypothesis_at_identity() {
        let a = mat(&[&[0, 1], &[0, 0]]);
        let r = verify_refutation(&a, &SamplingConfig::new(100, 0)).unwrap();
        match &r.hypothesis {
            HypothesisStatus::RefutedAt { witness } => {
                assert_eq!(witness.scaling, DiagonalScaling::identity(2));
                assert!(witness.reverify(&a).unwrap());
            }
            other => panic!("expected refutation, got {other:?}"),
        }
        assert_eq!(r.verdict, RefutationVerdict::Consistent);
        assert_eq!(r.evidence, None);
    }

    #[test]
    fn sampling_only_hypothesis_is_undetermined() {
        let conclusion = crate::classes::classify(&mat(&[&[-1, 12], &[-6, 23]])).unwrap();
        let facts = SideFacts { two_by_two: true, anti_sign_symmetric: false };
        let (grade, verdict) =
            derive_verdict(&HypothesisStatus::NoCounterexampleFound { budget: 10 }, &conclusion, &facts);
        assert_eq!(grade, Some(EvidenceGrade::SamplingOnly));
        assert_eq!(verdict, RefutationVerdict::Undetermined { suspected: vec![Claim::General, Claim::TwoByTwo] });
    }

    #[test]
    fn hunt_config_validation() {
        let g = Guards::default();
        assert!(HuntConfig { count: 0, ..HuntConfig::default() }.validate(&g).is_err());
        assert!(HuntConfig { n: 13, ..HuntConfig::default() }.validate(&g).is_err());
        assert!(HuntConfig { n: 7, ..HuntConfig::default() }.validate(&g).is_err());
        assert!(HuntConfig::default().validate(&g).is_ok());
    }

    #[test]
    fn zero_matrix_candidate_yields_nothing() {
        let cfg = HuntConfig { range: 0, count: 1, ..HuntConfig::default() };
        assert_eq!(cfg.candidates()[0], RationalMatrix::zero(2));
        let s = hunt(&cfg).unwrap();
        assert!(s.findings.is_empty());
    }

    #[test]
    fn spd_candidates_never_refute() {
        let cfg = HuntConfig { count: 60, mode: GeneratorMode::SymmetricPositiveDefinite, ..HuntConfig::default() };
        for a in cfg.candidates() {
            assert!(crate::classes::classify(&a.square()).unwrap().p0_plus.holds());
        }
        assert!(hunt(&cfg).unwrap().findings.is_empty());
    }
}
