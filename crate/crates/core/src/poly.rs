//! Sparse multivariate polynomials with rational coefficients.
//!
//! Variables are the scaling parameters `d1..dn`. The canonical text form
//! lists terms in graded-lexicographic order, highest first, and always prints
//! the coefficient: `1*d1^2 - 4*d1*d2 + 25*d2^2`.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// One exponent per variable.
pub type Exponent = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    n_vars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

/// Graded-lexicographic comparison, larger monomials first.
fn grlex_desc(a: &Exponent, b: &Exponent) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl SparsePolynomial {
    pub fn zero(n_vars: usize) -> Self {
        Self { n_vars, terms: BTreeMap::new() }
    }

    pub fn constant(n_vars: usize, c: Rational) -> Self {
        Self::monomial(n_vars, vec![0; n_vars], c)
    }

    pub fn one(n_vars: usize) -> Self {
        Self::constant(n_vars, Rational::one())
    }

    /// The variable `d_{i+1}` (0-based `i`).
    pub fn variable(n_vars: usize, i: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[i] = 1;
        Self::monomial(n_vars, e, Rational::one())
    }

    pub fn monomial(n_vars: usize, exponent: Exponent, coeff: Rational) -> Self {
        assert_eq!(exponent.len(), n_vars, "exponent length must equal the variable count");
        let mut p = Self::zero(n_vars);
        if !coeff.is_zero() {
            p.terms.insert(exponent, coeff);
        }
        p
    }

    /// Builds from `(exponent, coefficient)` pairs, merging duplicates.
    pub fn from_terms(n_vars: usize, terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Result<Self> {
        let mut p = Self::zero(n_vars);
        for (e, c) in terms {
            if e.len() != n_vars {
                return Err(Error::VariableCount { left: e.len(), right: n_vars });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in canonical (graded-lexicographic, descending) order.
    pub fn terms(&self) -> Vec<(&Exponent, &Rational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| grlex_desc(a.0, b.0));
        t
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// `Some(d)` if every term has total degree `d`; `None` for the zero
    /// polynomial or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.total_degree()?;
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d).then_some(d)
    }

    /// 0-based indices of variables that occur with a nonzero exponent.
    pub fn variables_used(&self) -> Vec<usize> {
        (0..self.n_vars)
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n_vars);
        }
        Self {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.n_vars {
            return Err(Error::VariableCount { left: point.len(), right: self.n_vars });
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .filter(|(&k, _)| k > 0)
                    .fold(c.clone(), |acc, (&k, x)| acc * num_traits::pow(x.clone(), k as usize))
            })
            .sum())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.n_vars), |acc, _| &acc * self)
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.n_vars, other.n_vars, "polynomials over different variable counts");
    }

    /// Renders with custom variable names; the canonical form uses `d1..dn`.
    pub fn render_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_owned();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms().into_iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&rational::render(&c.abs()));
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => out.push_str(&format!("*{}", name(i))),
                    _ => out.push_str(&format!("*{}^{}", name(i), p)),
                }
            }
        }
        out
    }

    /// Parses the canonical text form (any term order is accepted).
    pub fn parse(text: &str, n_vars: usize) -> Result<Self> {
        PolyParser { src: text.as_bytes(), pos: 0, n_vars }.parse()
    }
}

pub fn var_name(i: usize) -> String {
    format!("d{}", i + 1)
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(&var_name))
    }
}

impl Serialize for SparsePolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self + &(-rhs)
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        SparsePolynomial {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self.check_vars(rhs);
        let mut acc: HashMap<Exponent, Rational> = HashMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        SparsePolynomial {
            n_vars: self.n_vars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

struct PolyParser<'a> {
    src: &'a [u8],
    pos: usize,
    n_vars: usize,
}

impl PolyParser<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse { line: 1, column: self.pos + 1, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }

    fn parse(mut self) -> Result<SparsePolynomial> {
        let mut poly = SparsePolynomial::zero(self.n_vars);
        self.skip_ws();
        let mut first = true;
        while self.pos < self.src.len() {
            let mut negative = false;
            match self.src[self.pos] {
                b'-' => {
                    negative = true;
                    self.pos += 1;
                }
                b'+' if !first => self.pos += 1,
                _ if !first => return Err(self.err("expected `+` or `-` between terms")),
                _ => {}
            }
            self.skip_ws();
            let (e, mut c) = self.term()?;
            if negative {
                c = -c;
            }
            poly.add_term(e, c);
            first = false;
            self.skip_ws();
        }
        if first {
            return Err(self.err("empty polynomial"));
        }
        Ok(poly)
    }

    fn term(&mut self) -> Result<(Exponent, Rational)> {
        let column = self.pos + 1;
        let num = self.digits().to_owned();
        let mut token = num;
        if self.src.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            token = format!("{token}/{}", self.digits());
        }
        let coeff = rational::parse_token(&token, 1, column)?;
        let mut e = vec![0u32; self.n_vars];
        while self.src.get(self.pos) == Some(&b'*') {
            self.pos += 1;
            if self.src.get(self.pos) != Some(&b'd') {
                return Err(self.err("expected variable `d<i>`"));
            }
            self.pos += 1;
            let idx: usize = self.digits().parse().map_err(|_| self.err("expected variable index"))?;
            if idx == 0 || idx > self.n_vars {
                return Err(self.err(format!("variable d{idx} out of range")));
            }
            let mut power = 1;
            if self.src.get(self.pos) == Some(&b'^') {
                self.pos += 1;
                power = self.digits().parse().map_err(|_| self.err("expected exponent"))?;
            }
            e[idx - 1] += power;
        }
        Ok((e, coeff))
    }
}

/// Square matrix with polynomial entries; used for the symbolic `(DA)^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<SparsePolynomial>,
}

impl PolyMatrix {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> SparsePolynomial) -> Self {
        Self { n, entries: (0..n * n).map(|k| f(k / n, k % n)).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &SparsePolynomial {
        &self.entries[i * self.n + j]
    }

    pub fn mat_mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, other.n);
        let zero = SparsePolynomial::zero(self.get(0, 0).n_vars());
        Self::from_fn(self.n, |i, j| {
            (0..self.n).fold(zero.clone(), |acc, k| &acc + &(self.get(i, k) * other.get(k, j)))
        })
    }

    /// Division-free minor on 0-based `rows x cols` (Laplace expansion along
    /// rows, memoized on the set of remaining columns).
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> SparsePolynomial {
        assert_eq!(rows.len(), cols.len());
        assert!(cols.len() < 64);
        let n_vars = self.get(0, 0).n_vars();
        let mut memo: HashMap<u64, SparsePolynomial> = HashMap::new();
        let full = (1u64 << cols.len()) - 1;
        self.laplace(rows, cols, full, n_vars, &mut memo)
    }

    fn laplace(
        &self,
        rows: &[usize],
        cols: &[usize],
        remaining: u64,
        n_vars: usize,
        memo: &mut HashMap<u64, SparsePolynomial>,
    ) -> SparsePolynomial {
        if remaining == 0 {
            return SparsePolynomial::one(n_vars);
        }
        if let Some(p) = memo.get(&remaining) {
            return p.clone();
        }
        let depth = cols.len() - remaining.count_ones() as usize;
        let row = rows[depth];
        let mut acc = SparsePolynomial::zero(n_vars);
        let mut position = 0;
        for (t, &col) in cols.iter().enumerate() {
            if remaining & (1 << t) == 0 {
                continue;
            }
            let entry = self.get(row, col);
            if !entry.is_zero() {
                let sub = self.laplace(rows, cols, remaining & !(1 << t), n_vars, memo);
                let term = entry * &sub;
                acc = if position % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            position += 1;
        }
        memo.insert(remaining, acc.clone());
        acc
    }
}
