//! Self-checking reproduction of the 2x2 counterexample and of the
//! truncation error in the argument it refutes.
//!
//! [`run`] recomputes every value from scratch and compares it with an
//! [`Expected`] table; a reproduction passes only if every check matches.

use serde::Serialize;

use crate::certificate::{CertVerdict, Evidence};
use crate::classes::Verdict;
use crate::error::Result;
use crate::index_set::IndexSet;
use crate::matrix::RationalMatrix;
use crate::poly::{PolyMatrix, SparsePolynomial};
use crate::rational::{self, Rational};
use crate::refute::{verify_refutation, Claim, HypothesisStatus, RefutationReport, RefutationVerdict};
use crate::scaling::{symbolic_scaled, truncation_check, SamplingConfig, TruncationCheck};

/// Reference values for the counterexample `A = [[1, 2], [-1, 5]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expected {
    pub matrix: [[i64; 2]; 2],
    pub determinant: i64,
    pub scaled: [String; 4],
    pub scaled_square: [String; 4],
    pub trace_invariant: String,
    pub determinant_invariant: String,
    pub completion: String,
    /// `(b^2, 4ac)` for the trace invariant.
    pub discriminant: (i64, i64),
    pub square: [[i64; 2]; 2],
    pub p0_witness: (Vec<usize>, i64),
    /// `a12 * a21`, the only off-diagonal minor pair of a 2x2 matrix.
    pub anti_sign_product: i64,
    pub claims: Vec<Claim>,
}

impl Expected {
    pub fn counterexample() -> Self {
        let s = |v: [&str; 4]| v.map(str::to_owned);
        Self {
            matrix: [[1, 2], [-1, 5]],
            determinant: 7,
            scaled: s(["1*d1", "2*d1", "-1*d2", "5*d2"]),
            scaled_square: s(["1*d1^2 - 2*d1*d2", "2*d1^2 + 10*d1*d2", "-1*d1*d2 - 5*d2^2", "-2*d1*d2 + 25*d2^2"]),
            trace_invariant: "1*d1^2 - 4*d1*d2 + 25*d2^2".into(),
            determinant_invariant: "49*d1^2*d2^2".into(),
            completion: "(d1 - 2*d2)^2 + 21*d2^2".into(),
            discriminant: (16, 100),
            square: [[-1, 12], [-6, 23]],
            p0_witness: (vec![1], -1),
            anti_sign_product: -2,
            claims: vec![Claim::General, Claim::TwoByTwo, Claim::AntiSignSymmetric],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

/// The truncation error on a generic 3x3 matrix `{a_ij}` with `alpha = {1,2}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolicTruncation {
    /// `(D_0 A)^2[1,2]`.
    pub truncated: String,
    /// `A({1,2}|{1,2})^2`.
    pub leading_minor_squared: String,
    /// `A(alpha|beta) * A(beta|alpha)` for `beta = {1,2}, {1,3}, {2,3}`.
    pub expansion_terms: Vec<String>,
    /// `A^2[1,2]`.
    pub square_minor: String,
    pub truncated_equals_leading_square: bool,
    pub expansion_sums_to_square_minor: bool,
    pub truncated_differs_from_square_minor: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Reproduction {
    #[serde(serialize_with = "crate::refute::serialize_matrix")]
    pub matrix: RationalMatrix,
    #[serde(with = "rational::serde_str")]
    pub determinant: Rational,
    pub scaled: Vec<String>,
    pub scaled_square: Vec<String>,
    pub report: RefutationReport,
    pub symbolic_truncation: SymbolicTruncation,
    /// Numeric instance of the truncation error.
    pub numeric_truncation: TruncationCheck,
    pub checks: Vec<Check>,
}

impl Reproduction {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn first_mismatch(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.ok)
    }
}

fn check(name: &str, expected: impl ToString, actual: impl ToString) -> Check {
    let (expected, actual) = (expected.to_string(), actual.to_string());
    Check { name: name.to_owned(), ok: expected == actual, expected, actual }
}

fn generic_name(k: usize) -> String {
    format!("a{}{}", k / 3 + 1, k % 3 + 1)
}

pub fn symbolic_truncation() -> SymbolicTruncation {
    let a = PolyMatrix::from_fn(3, |i, j| SparsePolynomial::variable(9, 3 * i + j));
    let zero = SparsePolynomial::zero(9);
    let d0a = PolyMatrix::from_fn(3, |i, j| if i < 2 { a.get(i, j).clone() } else { zero.clone() });
    let alpha = [0, 1];
    let truncated = d0a.mat_mul(&d0a).minor(&alpha, &alpha);
    let leading = a.minor(&alpha, &alpha);
    let leading_sq = &leading * &leading;
    let terms: Vec<SparsePolynomial> = [[0, 1], [0, 2], [1, 2]]
        .iter()
        .map(|beta| &a.minor(&alpha, beta) * &a.minor(beta, &alpha))
        .collect();
    let total = terms.iter().fold(zero.clone(), |acc, t| &acc + t);
    let square_minor = a.mat_mul(&a).minor(&alpha, &alpha);
    let show = |p: &SparsePolynomial| p.render_with(&generic_name);
    SymbolicTruncation {
        truncated: show(&truncated),
        leading_minor_squared: show(&leading_sq),
        expansion_terms: terms.iter().map(show).collect(),
        square_minor: show(&square_minor),
        truncated_equals_leading_square: truncated == leading_sq,
        expansion_sums_to_square_minor: total == square_minor,
        truncated_differs_from_square_minor: truncated != square_minor,
    }
}

/// Fixed integer matrix used for the numeric truncation instance.
pub fn truncation_example() -> RationalMatrix {
    RationalMatrix::from_integer_rows(&[[1, 2, 3], [4, 5, 6], [7, 8, 10]]).expect("3x3")
}

pub fn run(expected: &Expected) -> Result<Reproduction> {
    let a = RationalMatrix::from_integer_rows(&expected.matrix)?;
    let mut checks = Vec::new();

    let determinant = a.determinant();
    checks.push(check("det A", expected.determinant, rational::render(&determinant)));

    let da = symbolic_scaled(&a);
    let da_sq = da.mat_mul(&da);
    let entries = |m: &PolyMatrix| -> Vec<String> { (0..4).map(|k| m.get(k / 2, k % 2).to_string()).collect() };
    let scaled = entries(&da);
    let scaled_square = entries(&da_sq);
    checks.push(check("DA", expected.scaled.join(", "), scaled.join(", ")));
    checks.push(check("(DA)^2", expected.scaled_square.join(", "), scaled_square.join(", ")));

    let report = verify_refutation(&a, &SamplingConfig::default())?;
    checks.push(check("p1 = Tr((DA)^2)", &expected.trace_invariant, &report.invariants[0]));
    checks.push(check("p2 = det((DA)^2)", &expected.determinant_invariant, &report.invariants[1]));
    let det_sq = da_sq.minor(&[0, 1], &[0, 1]);
    checks.push(check("det((DA)^2) expanded", &expected.determinant_invariant, det_sq));

    let (disc, completion, p1_verdict) = match &report.certificates[0].evidence {
        Evidence::QuadraticDiscriminant { b_squared, four_ac, completion_text, .. } => (
            format!("{} < {}", rational::render(b_squared), rational::render(four_ac)),
            completion_text.clone(),
            report.certificates[0].verdict,
        ),
        other => (format!("{other:?}"), String::new(), report.certificates[0].verdict),
    };
    checks.push(check("p1 discriminant", format!("{} < {}", expected.discriminant.0, expected.discriminant.1), disc));
    checks.push(check("p1 completion", &expected.completion, completion));
    checks.push(check("p1 certificate", "positive on orthant", verdict_text(p1_verdict)));
    let p2_kind = match &report.certificates[1].evidence {
        Evidence::AllCoefficientsNonnegative { .. } => "nonnegative coefficients",
        _ => "other",
    };
    checks.push(check(
        "p2 certificate",
        "positive on orthant via nonnegative coefficients",
        format!("{} via {}", verdict_text(report.certificates[1].verdict), p2_kind),
    ));
    let certs_ok = report.certificates.iter().all(|c| c.verify().is_ok());
    checks.push(check("certificates re-verify", true, certs_ok));
    checks.push(check(
        "hypothesis",
        "certified for all positive D",
        match report.hypothesis {
            HypothesisStatus::CertifiedForAll => "certified for all positive D".to_owned(),
            ref other => format!("{other:?}"),
        },
    ));

    let expected_square = RationalMatrix::from_integer_rows(&expected.square)?;
    checks.push(check("A^2", crate::io::render_document(&expected_square), crate::io::render_document(&report.square)));
    let p0 = match &report.conclusion.p0 {
        Verdict::Holds => "holds".to_owned(),
        Verdict::Fails { witness } => format!("fails at {} with minor {}", witness.alpha, rational::render(&witness.minor)),
    };
    let (alpha, minor) = &expected.p0_witness;
    let alpha = IndexSet::new(2, alpha.clone())?;
    checks.push(check("A^2 is P0", format!("fails at {alpha} with minor {minor}"), p0));
    checks.push(check("A^2 is P0+", false, report.conclusion.p0_plus.holds()));

    let product = a.get(0, 1) * a.get(1, 0);
    checks.push(check("a12 * a21", expected.anti_sign_product, rational::render(&product)));
    checks.push(check("A anti-sign symmetric", true, report.side_facts.anti_sign_symmetric));

    let claims = match &report.verdict {
        RefutationVerdict::Counterexample { claims } => claims.clone(),
        _ => Vec::new(),
    };
    let join = |c: &[Claim]| c.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    checks.push(check("counterexample to", join(&expected.claims), join(&claims)));

    let symbolic = symbolic_truncation();
    checks.push(check("(D0 A)^2[1,2] = A[1,2]^2", true, symbolic.truncated_equals_leading_square));
    checks.push(check("A^2[1,2] = sum of three minor products", true, symbolic.expansion_sums_to_square_minor));
    checks.push(check("A^2[1,2] != (D0 A)^2[1,2]", true, symbolic.truncated_differs_from_square_minor));
    let numeric = truncation_check(&truncation_example(), &IndexSet::new(3, vec![1, 2])?)?;
    checks.push(check("numeric instance differs", true, numeric.conflation_fails()));

    Ok(Reproduction {
        matrix: a,
        determinant,
        scaled,
        scaled_square,
        report,
        symbolic_truncation: symbolic,
        numeric_truncation: numeric,
        checks,
    })
}

fn verdict_text(v: CertVerdict) -> &'static str {
    match v {
        CertVerdict::PositiveOnOrthant => "positive on orthant",
        CertVerdict::NotPositive => "not positive",
        CertVerdict::Inconclusive => "inconclusive",
    }
}
