//! Positivity certificates on the open positive orthant.
//!
//! Strategies run cheapest first:
//!
//! 1. every coefficient is nonnegative (and the polynomial is nonzero);
//! 2. a homogeneous quadratic form in at most two variables, decided exactly
//!    by its discriminant, with a square completion as evidence;
//! 3. exact evaluation over a deterministic grid of powers of two, looking
//!    for a point where the polynomial is not positive.
//!
//! Anything the grid does not refute is [`CertVerdict::Inconclusive`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{var_name, SparsePolynomial};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertVerdict {
    PositiveOnOrthant,
    NotPositive,
    Inconclusive,
}

/// `weight * form^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedSquare {
    #[serde(with = "rational::serde_str")]
    pub weight: Rational,
    pub form: SparsePolynomial,
}

/// `p = sum_i weight_i * form_i^2` with every weight positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareCompletion {
    pub squares: Vec<WeightedSquare>,
}

impl SquareCompletion {
    pub fn expand(&self, n_vars: usize) -> SparsePolynomial {
        self.squares.iter().fold(SparsePolynomial::zero(n_vars), |acc, s| {
            &acc + &s.form.pow(2).scale(&s.weight)
        })
    }
}

impl std::fmt::Display for SquareCompletion {
    /// `(d1 - 2*d2)^2 + 21*d2^2`: unit coefficients inside the squares are
    /// elided, and a bare variable is written without parentheses.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .squares
            .iter()
            .map(|s| {
                let body = match bare_variable(&s.form) {
                    Some(i) => format!("{}^2", var_name(i)),
                    None => format!("({})^2", render_linear(&s.form)),
                };
                if s.weight.is_one() {
                    body
                } else {
                    format!("{}*{}", rational::render(&s.weight), body)
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn bare_variable(p: &SparsePolynomial) -> Option<usize> {
    match p.terms().as_slice() {
        [(e, c)] if c.is_one() && e.iter().sum::<u32>() == 1 => e.iter().position(|&k| k == 1),
        _ => None,
    }
}

fn render_linear(p: &SparsePolynomial) -> String {
    let mut out = String::new();
    for (k, (e, c)) in p.terms().into_iter().enumerate() {
        let sign = match (k, c.is_negative()) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        out.push_str(sign);
        let mag = c.abs();
        let var = e.iter().position(|&x| x == 1).map(var_name);
        match var {
            Some(v) if mag.is_one() => out.push_str(&v),
            Some(v) => out.push_str(&format!("{}*{}", rational::render(&mag), v)),
            None => out.push_str(&rational::render(&mag)),
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// No negative coefficient; `positive_term` is a strictly positive one.
    AllCoefficientsNonnegative {
        positive_term: String,
    },
    /// `a*x^2 + b*xy + c*y^2` with `a > 0`, `c > 0`, `b < 0`, `b^2 < 4ac`.
    QuadraticDiscriminant {
        /// 1-based variable indices of `x` and `y`.
        variables: [usize; 2],
        #[serde(with = "rational::serde_str")]
        a: Rational,
        #[serde(with = "rational::serde_str")]
        b: Rational,
        #[serde(with = "rational::serde_str")]
        c: Rational,
        #[serde(with = "rational::serde_str")]
        b_squared: Rational,
        #[serde(with = "rational::serde_str")]
        four_ac: Rational,
        completion: SquareCompletion,
        completion_text: String,
    },
    /// A point of the open orthant where the polynomial is `<= 0`.
    WitnessPoint {
        #[serde(with = "rational::serde_vec")]
        point: Vec<Rational>,
        #[serde(with = "rational::serde_str")]
        value: Rational,
    },
    /// The grid search found nothing.
    GridExhausted { points_checked: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub polynomial: SparsePolynomial,
    pub verdict: CertVerdict,
    pub evidence: Evidence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CertifyOptions {
    /// Upper bound on grid points evaluated by the sampling strategy.
    pub max_grid_points: usize,
    /// Grid coordinates are `2^k` for `|k| <= max_grid_radius`.
    pub max_grid_radius: i32,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self { max_grid_points: 4096, max_grid_radius: 8 }
    }
}

pub fn certify_positive_on_orthant(p: &SparsePolynomial) -> Certificate {
    certify_with(p, &CertifyOptions::default())
}

pub fn certify_with(p: &SparsePolynomial, opts: &CertifyOptions) -> Certificate {
    let n = p.n_vars();
    if p.is_zero() {
        return not_positive(p, vec![Rational::one(); n]);
    }
    if p.terms().iter().all(|(_, c)| !c.is_negative()) {
        let (e, c) = p.terms()[0];
        let term = SparsePolynomial::monomial(n, e.clone(), c.clone());
        return Certificate {
            polynomial: p.clone(),
            verdict: CertVerdict::PositiveOnOrthant,
            evidence: Evidence::AllCoefficientsNonnegative { positive_term: term.to_string() },
        };
    }
    if p.homogeneous_degree() == Some(2) {
        if let Some(cert) = quadratic_form(p) {
            return cert;
        }
    }
    grid_search(p, opts)
}

fn not_positive(p: &SparsePolynomial, point: Vec<Rational>) -> Certificate {
    let value = p.eval(&point).expect("point has one coordinate per variable");
    debug_assert!(!value.is_positive());
    Certificate {
        polynomial: p.clone(),
        verdict: CertVerdict::NotPositive,
        evidence: Evidence::WitnessPoint { point, value },
    }
}

fn quadratic_form(p: &SparsePolynomial) -> Option<Certificate> {
    let n = p.n_vars();
    let used = p.variables_used();
    let ones = || vec![Rational::one(); n];
    let (x, y) = match used.as_slice() {
        // a*x^2 with a < 0: strategy 1 already ruled out a > 0
        [_] => return Some(not_positive(p, ones())),
        &[x, y] => (x, y),
        _ => return None,
    };
    let exp = |i: usize, j: usize| {
        let mut e = vec![0u32; n];
        e[i] += 1;
        e[j] += 1;
        e
    };
    let a = p.coefficient(&exp(x, x));
    let b = p.coefficient(&exp(x, y));
    let c = p.coefficient(&exp(y, y));
    let b_squared = &b * &b;
    let four_ac = Rational::from_integer(4.into()) * &a * &c;
    let at = |vx: Rational, vy: Rational| {
        let mut pt = ones();
        pt[x] = vx;
        pt[y] = vy;
        pt
    };

    if a.is_positive() && c.is_positive() {
        if b_squared < four_ac {
            // a(x + b/(2a) y)^2 + (4ac - b^2)/(4a) y^2
            let two_a = Rational::from_integer(2.into()) * &a;
            let shift = &b / &two_a;
            let lin = &SparsePolynomial::variable(n, x) + &SparsePolynomial::variable(n, y).scale(&shift);
            let rest = (&four_ac - &b_squared) / (Rational::from_integer(2.into()) * &two_a);
            let completion = SquareCompletion {
                squares: vec![
                    WeightedSquare { weight: a.clone(), form: lin },
                    WeightedSquare { weight: rest, form: SparsePolynomial::variable(n, y) },
                ],
            };
            return Some(Certificate {
                polynomial: p.clone(),
                verdict: CertVerdict::PositiveOnOrthant,
                evidence: Evidence::QuadraticDiscriminant {
                    variables: [x + 1, y + 1],
                    completion_text: completion.to_string(),
                    a,
                    b,
                    c,
                    b_squared,
                    four_ac,
                    completion,
                },
            });
        }
        // b < 0 here; the form is <= 0 along the ray x/y = -b/(2a)
        let (vx, vy) = primitive_pair(-b.clone(), Rational::from_integer(2.into()) * &a);
        return Some(not_positive(p, at(vx, vy)));
    }

    // a <= 0 or c <= 0: the form goes nonpositive as x/y -> 0 or x/y -> infinity
    let half = Rational::new(1.into(), 2.into());
    let mut t = Rational::one();
    for _ in 0..4096 {
        for pt in [at(Rational::one(), t.clone()), at(t.clone(), Rational::one())] {
            if !p.eval(&pt).expect("sized point").is_positive() {
                return Some(not_positive(p, pt));
            }
        }
        t *= &half;
    }
    None
}

/// Scales a pair of positive rationals to coprime positive integers.
fn primitive_pair(u: Rational, v: Rational) -> (Rational, Rational) {
    let l = u.denom().lcm(v.denom());
    let iu = u.numer() * (&l / u.denom());
    let iv = v.numer() * (&l / v.denom());
    let g = iu.gcd(&iv);
    (Rational::from_integer(iu / &g), Rational::from_integer(iv / &g))
}

fn grid_search(p: &SparsePolynomial, opts: &CertifyOptions) -> Certificate {
    let n = p.n_vars();
    let mut radius = opts.max_grid_radius.max(0);
    while radius > 0 && (2 * radius as usize + 1).checked_pow(n as u32).map_or(true, |c| c > opts.max_grid_points) {
        radius -= 1;
    }
    let levels: Vec<Rational> = (-radius..=radius)
        .map(|k| {
            let two = BigInt::from(2);
            let mag = num_traits::pow(two, k.unsigned_abs() as usize);
            if k < 0 {
                Rational::new(BigInt::one(), mag)
            } else {
                Rational::from_integer(mag)
            }
        })
        .collect();
    // start at the all-ones point, then sweep outward in odometer order
    let mut order: Vec<usize> = (0..levels.len()).collect();
    order.sort_by_key(|&i| (i as i32 - radius).abs());
    let mut idx = vec![0usize; n];
    let mut checked = 0;
    loop {
        let pt: Vec<Rational> = idx.iter().map(|&i| levels[order[i]].clone()).collect();
        checked += 1;
        if !p.eval(&pt).expect("sized point").is_positive() {
            return not_positive(p, pt);
        }
        if checked >= opts.max_grid_points {
            break;
        }
        let mut k = 0;
        loop {
            if k == n {
                return inconclusive(p, checked);
            }
            idx[k] += 1;
            if idx[k] < levels.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
    inconclusive(p, checked)
}

fn inconclusive(p: &SparsePolynomial, points_checked: usize) -> Certificate {
    Certificate {
        polynomial: p.clone(),
        verdict: CertVerdict::Inconclusive,
        evidence: Evidence::GridExhausted { points_checked },
    }
}

impl Certificate {
    /// Re-checks the evidence against the polynomial using exact arithmetic
    /// only, independently of how the certificate was produced.
    pub fn verify(&self) -> Result<()> {
        let p = &self.polynomial;
        let reject = |why: &str| Err(Error::CertificateRejected(why.to_owned()));
        match (&self.verdict, &self.evidence) {
            (CertVerdict::PositiveOnOrthant, Evidence::AllCoefficientsNonnegative { positive_term }) => {
                if p.terms().iter().any(|(_, c)| c.is_negative()) {
                    return reject("negative coefficient present");
                }
                let term = SparsePolynomial::parse(positive_term, p.n_vars())?;
                match term.terms().as_slice() {
                    [(e, c)] if c.is_positive() && p.coefficient(e) == **c => Ok(()),
                    _ => reject("listed positive term is not a positive term of the polynomial"),
                }
            }
            (
                CertVerdict::PositiveOnOrthant,
                Evidence::QuadraticDiscriminant { a, b, c, b_squared, four_ac, completion, .. },
            ) => {
                if !(a.is_positive() && c.is_positive()) {
                    return reject("diagonal coefficients must be positive");
                }
                if *b_squared != b * b || *four_ac != Rational::from_integer(4.into()) * a * c {
                    return reject("discriminant parts do not match a, b, c");
                }
                if b_squared >= four_ac {
                    return reject("discriminant is not negative");
                }
                if completion.squares.iter().any(|s| !s.weight.is_positive()) {
                    return reject("completion has a nonpositive weight");
                }
                if completion.squares.iter().all(|s| s.form.variables_used().len() != 1) {
                    return reject("completion has no single-variable square");
                }
                if completion.expand(p.n_vars()) != *p {
                    return reject("completion does not expand to the polynomial");
                }
                Ok(())
            }
            (CertVerdict::NotPositive, Evidence::WitnessPoint { point, value }) => {
                if point.iter().any(|x| !x.is_positive()) {
                    return reject("witness point is not in the open orthant");
                }
                if p.eval(point)? != *value {
                    return reject("witness value does not match");
                }
                if value.is_positive() {
                    return reject("witness value is positive");
                }
                Ok(())
            }
            (CertVerdict::Inconclusive, Evidence::GridExhausted { .. }) => Ok(()),
            _ => reject("evidence kind does not support the verdict"),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.verdict == CertVerdict::PositiveOnOrthant
    }

    pub fn witness_point(&self) -> Option<&[Rational]> {
        match &self.evidence {
            Evidence::WitnessPoint { point, .. } => Some(point),
            _ => None,
        }
    }
}
