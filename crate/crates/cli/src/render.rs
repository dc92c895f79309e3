//! Plain-text renderings. Output is byte-stable for a given input.

use std::fmt::Write;

use q2scaling::certificate::{CertVerdict, Certificate, Evidence};
use q2scaling::classes::{ClassReport, P0PlusWitness, Verdict};
use q2scaling::rational::render as r;
use q2scaling::refute::{HuntSummary, HypothesisStatus, RefutationReport, RefutationVerdict};
use q2scaling::reproduce::Reproduction;
use q2scaling::RationalMatrix;

fn matrix_block(out: &mut String, m: &RationalMatrix) {
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(r).collect();
        let _ = writeln!(out, "  {}", cells.join(" "));
    }
}

fn inline_matrix(m: &RationalMatrix) -> String {
    let rows: Vec<String> = m
        .rows()
        .map(|row| format!("[{}]", row.iter().map(r).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn class_lines(out: &mut String, report: &ClassReport) {
    let sums: Vec<String> = report
        .principal_minor_sums
        .iter()
        .enumerate()
        .map(|(j, c)| format!("c{} = {}", j + 1, r(c)))
        .collect();
    let _ = writeln!(out, "principal minor sums: {}", sums.join(", "));
    let orders: Vec<String> = report
        .positive_minor_by_order
        .iter()
        .enumerate()
        .map(|(j, b)| format!("{}: {}", j + 1, yes_no(*b)))
        .collect();
    let _ = writeln!(out, "positive principal minor by order: {}", orders.join(", "));
    let minor = |v: &Verdict<q2scaling::classes::MinorWitness>| match v {
        Verdict::Holds => "holds".to_owned(),
        Verdict::Fails { witness } => format!("fails at {}, minor {}", witness.alpha, r(&witness.minor)),
    };
    let _ = writeln!(out, "P: {}", minor(&report.p));
    let _ = writeln!(out, "P0: {}", minor(&report.p0));
    let p0_plus = match &report.p0_plus {
        Verdict::Holds => "holds".to_owned(),
        Verdict::Fails { witness: P0PlusWitness::NegativeMinor(w) } => {
            format!("fails, negative principal minor at {}: {}", w.alpha, r(&w.minor))
        }
        Verdict::Fails { witness: P0PlusWitness::NoPositiveMinorOfOrder { order } } => {
            format!("fails, no positive principal minor of order {order}")
        }
    };
    let _ = writeln!(out, "P0+: {p0_plus}");
    let q = match &report.q {
        Verdict::Holds => "holds".to_owned(),
        Verdict::Fails { witness } => format!("fails, c{} = {}", witness.order, r(&witness.sum)),
    };
    let _ = writeln!(out, "Q (Hershkowitz-Keller sense): {q}");
    let anti = match &report.anti_sign_symmetric {
        Verdict::Holds => "holds".to_owned(),
        Verdict::Fails { witness: w } => format!(
            "fails at alpha = {}, beta = {}: {} * {} > 0",
            w.alpha,
            w.beta,
            r(&w.minor_alpha_beta),
            r(&w.minor_beta_alpha)
        ),
    };
    let _ = writeln!(out, "anti-sign symmetric: {anti}");
}

pub fn analysis(m: &RationalMatrix, report: &ClassReport) -> String {
    let mut out = format!("matrix (n = {})\n", m.n());
    matrix_block(&mut out, m);
    class_lines(&mut out, report);
    out
}

pub fn certificate_line(cert: &Certificate) -> String {
    match (&cert.verdict, &cert.evidence) {
        (CertVerdict::PositiveOnOrthant, Evidence::AllCoefficientsNonnegative { positive_term }) => {
            format!("positive on the open orthant: nonnegative coefficients, positive term {positive_term}")
        }
        (CertVerdict::PositiveOnOrthant, Evidence::QuadraticDiscriminant { b_squared, four_ac, completion_text, .. }) => {
            format!(
                "positive on the open orthant: b^2 = {} < {} = 4ac, completion {}",
                r(b_squared),
                r(four_ac),
                completion_text
            )
        }
        (_, Evidence::WitnessPoint { point, value }) => {
            let pt: Vec<String> = point.iter().map(r).collect();
            format!("not positive: value {} at d = ({})", r(value), pt.join(", "))
        }
        (_, Evidence::GridExhausted { points_checked }) => {
            format!("inconclusive: no certificate, {points_checked} grid points all positive")
        }
        (v, e) => format!("{v:?} {e:?}"),
    }
}

pub fn hypothesis_line(h: &HypothesisStatus) -> String {
    match h {
        HypothesisStatus::CertifiedForAll => "(DA)^2 is Q for every positive diagonal D: certified".to_owned(),
        HypothesisStatus::NoCounterexampleFound { budget } => {
            format!("(DA)^2 is Q for every positive diagonal D: no counterexample in {budget} samples (evidence only)")
        }
        HypothesisStatus::RefutedAt { witness } => {
            let sums: Vec<String> = witness.sums.iter().map(r).collect();
            format!(
                "(DA)^2 is Q for every positive diagonal D: refuted at D = {}, sums of (DA)^2 = ({}), c{} <= 0",
                witness.scaling,
                sums.join(", "),
                witness.failing_order
            )
        }
    }
}

pub fn scaling(report: &RefutationReport) -> String {
    let mut out = String::new();
    for (j, (p, cert)) in report.invariants.iter().zip(&report.certificates).enumerate() {
        let _ = writeln!(out, "p{} = {}", j + 1, p);
        let _ = writeln!(out, "  {}", certificate_line(cert));
    }
    let _ = writeln!(out, "{}", hypothesis_line(&report.hypothesis));
    out
}

pub fn verdict_line(v: &RefutationVerdict) -> String {
    let join = |c: &[q2scaling::Claim]| c.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    match v {
        RefutationVerdict::Counterexample { claims } => format!("counterexample to: {}", join(claims)),
        RefutationVerdict::Undetermined { suspected } => {
            format!("undetermined (evidence only), suspected counterexample to: {}", join(suspected))
        }
        RefutationVerdict::Consistent => "consistent".to_owned(),
    }
}

pub fn reproduction(rep: &Reproduction) -> String {
    let mut out = String::from("A =\n");
    matrix_block(&mut out, &rep.matrix);
    let _ = writeln!(out, "det A = {}", r(&rep.determinant));
    let _ = writeln!(out, "DA = [{}, {}; {}, {}]", rep.scaled[0], rep.scaled[1], rep.scaled[2], rep.scaled[3]);
    let _ = writeln!(out, "(DA)^2 =");
    let _ = writeln!(out, "  [{}, {}]", rep.scaled_square[0], rep.scaled_square[1]);
    let _ = writeln!(out, "  [{}, {}]", rep.scaled_square[2], rep.scaled_square[3]);
    out.push_str(&scaling(&rep.report));
    let _ = writeln!(out, "A^2 =");
    matrix_block(&mut out, &rep.report.square);
    let _ = writeln!(out, "classification of A^2:");
    let mut classes = String::new();
    class_lines(&mut classes, &rep.report.conclusion);
    for line in classes.lines() {
        let _ = writeln!(out, "  {line}");
    }
    let product = rep.matrix.get(0, 1) * rep.matrix.get(1, 0);
    let _ = writeln!(
        out,
        "A anti-sign symmetric: {} (a12 * a21 = {})",
        yes_no(rep.report.side_facts.anti_sign_symmetric),
        r(&product)
    );
    let _ = writeln!(out, "verdict: {}", verdict_line(&rep.report.verdict));

    let s = &rep.symbolic_truncation;
    let _ = writeln!(out, "truncation D_eps -> D_0 on generic 3x3 A = (a_ij), alpha = {{1,2}}:");
    let _ = writeln!(out, "  (D0 A)^2[1,2] = {}", s.truncated);
    let _ = writeln!(out, "  A({{1,2}}|{{1,2}})^2 = {}", s.leading_minor_squared);
    for (beta, t) in ["{1,2}", "{1,3}", "{2,3}"].iter().zip(&s.expansion_terms) {
        let _ = writeln!(out, "  A({{1,2}}|{beta}) A({beta}|{{1,2}}) = {t}");
    }
    let _ = writeln!(out, "  A^2[1,2] = {}", s.square_minor);
    let n = &rep.numeric_truncation;
    let terms: Vec<String> = n.expansion.terms.iter().map(|t| r(&t.term)).collect();
    let _ = writeln!(
        out,
        "numeric instance A = [[1, 2, 3], [4, 5, 6], [7, 8, 10]]: (D0 A)^2[1,2] = {}, A^2[1,2] = {} = {}",
        r(&n.truncated_square_minor),
        r(&n.square_minor),
        terms.join(" + ")
    );

    let _ = writeln!(out, "checks:");
    for c in &rep.checks {
        if c.ok {
            let _ = writeln!(out, "  [ok]   {}: {}", c.name, c.actual);
        } else {
            let _ = writeln!(out, "  [FAIL] {}: expected {}, got {}", c.name, c.expected, c.actual);
        }
    }
    match rep.first_mismatch() {
        None => {
            let _ = writeln!(out, "result: all {} checks match", rep.checks.len());
        }
        Some(c) => {
            let _ = writeln!(out, "result: mismatch in `{}`", c.name);
        }
    }
    out
}

pub fn hunt(summary: &HuntSummary) -> String {
    let mut out = String::new();
    for f in &summary.findings {
        let rep = &f.report;
        let _ = writeln!(out, "candidate {}: A = {}", f.candidate_index, inline_matrix(&rep.matrix));
        let _ = writeln!(out, "  {}", hypothesis_line(&rep.hypothesis));
        let p0_plus = match &rep.conclusion.p0_plus {
            Verdict::Holds => "holds".to_owned(),
            Verdict::Fails { witness: P0PlusWitness::NegativeMinor(w) } => {
                format!("fails, minor {} at {}", r(&w.minor), w.alpha)
            }
            Verdict::Fails { witness: P0PlusWitness::NoPositiveMinorOfOrder { order } } => {
                format!("fails, no positive minor of order {order}")
            }
        };
        let _ = writeln!(out, "  A^2 = {}: P0+ {}", inline_matrix(&rep.square), p0_plus);
        let _ = writeln!(out, "  {}", verdict_line(&rep.verdict));
    }
    let _ = writeln!(
        out,
        "summary: {} candidates, {} counterexamples, {} undetermined",
        summary.candidates, summary.counterexamples, summary.undetermined
    );
    out
}
