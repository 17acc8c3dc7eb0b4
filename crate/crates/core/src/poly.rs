//! Exact polynomial and truncated power-series arithmetic.
//!
//! [`UniPoly`] is dense in `t`, [`BiPoly`] is a sparse map over monomials
//! `s^a t^b`, and [`RatSeq`] is a finite sequence of exact rationals used for
//! series coefficients and Bernoulli polynomials. Nothing in here touches
//! floating point.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense univariate polynomial in `t` with big-integer coefficients.
///
/// Trailing zeros are never stored, so the zero polynomial has no
/// coefficients and [`UniPoly::degree`] returns `None` for it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `t`.
    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `t^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Exact division by two; fails if any coefficient is odd.
    pub fn halve(&self) -> Result<Self> {
        self.coeffs
            .iter()
            .map(|c| {
                let (q, r) = c.div_rem(&BigInt::from(2));
                if r.is_zero() {
                    Ok(q)
                } else {
                    Err(Error::Inconsistency(format!("odd coefficient {c} in {self}")))
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Keeps the terms of degree `<= d`.
    pub fn truncate(&self, d: usize) -> Self {
        Self::new(self.coeffs.iter().take(d + 1).cloned().collect())
    }

    /// Multiplicity of `t = 1` as a root; `None` for the zero polynomial.
    pub fn root_multiplicity_at_one(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut p = self.clone();
        let mut m = 0;
        while p.eval_at_one().is_zero() {
            p = p.derivative();
            m += 1;
        }
        Some(m)
    }
}

impl fmt::Display for UniPoly {
    /// Text form `c0 + c1*t + c2*t^2`, zero terms omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(BigInt, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let var = match k {
                    0 => String::new(),
                    1 => "t".to_string(),
                    _ => format!("t^{k}"),
                };
                (c.clone(), var)
            })
            .collect();
        write_terms(f, &terms)
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(BigInt, String)]) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (i, (c, var)) in terms.iter().enumerate() {
        let mag = c.abs();
        match (i, c.is_negative()) {
            (0, true) => write!(f, "-{mag}")?,
            (0, false) => write!(f, "{mag}")?,
            (_, true) => write!(f, " - {mag}")?,
            (_, false) => write!(f, " + {mag}")?,
        }
        if !var.is_empty() {
            write!(f, "*{var}")?;
        }
    }
    Ok(())
}

/// Splits `"a + b - c"` into signed term strings.
fn split_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && !cur.is_empty() {
            out.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && i == 0 {
            neg = ch == '-';
        } else if ch == '+' || ch == '-' {
            return Err(Error::Parse(format!("misplaced sign in `{s}`")));
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("dangling sign in `{s}`")));
    }
    out.push((neg, cur));
    Ok(out)
}

/// Parses one `c*v^e` factor list into a coefficient and exponents of `vars`.
fn parse_term(term: &str, vars: &[char]) -> Result<(BigInt, Vec<usize>)> {
    let mut coeff = BigInt::one();
    let mut exps = vec![0; vars.len()];
    for factor in term.split('*') {
        let bad = || Error::Parse(format!("bad factor `{factor}` in `{term}`"));
        if let Some(idx) = vars.iter().position(|&v| factor.starts_with(v)) {
            let rest = &factor[1..];
            let e = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?
            };
            exps[idx] += e;
        } else {
            coeff *= factor.parse::<BigInt>().map_err(|_| bad())?;
        }
    }
    Ok((coeff, exps))
}

impl FromStr for UniPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut acc = UniPoly::zero();
        for (neg, term) in split_terms(s)? {
            let (c, e) = parse_term(&term, &['t'])?;
            let c = if neg { -c } else { c };
            acc = &acc + &UniPoly::monomial(c, e[0]);
        }
        Ok(acc)
    }
}

impl Serialize for UniPoly {
    /// JSON array of decimal strings, index = exponent.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        raw.iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()
            .map(UniPoly::new)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;

    fn add(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;

    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;

    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned_binop {
    ($t:ty, $trait:ident, $method:ident) => {
        impl $trait for $t {
            type Output = $t;

            fn $method(self, rhs: $t) -> $t {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(UniPoly, Add, add);
forward_owned_binop!(UniPoly, Sub, sub);
forward_owned_binop!(UniPoly, Mul, mul);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &UniPoly, b: &UniPoly, op: PolyOp) -> UniPoly {
    match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
    }
}

/// `(1 - t)^m` expanded with exact signs.
pub fn one_minus_t_pow(m: usize) -> UniPoly {
    let mut coeffs = Vec::with_capacity(m + 1);
    let mut c = BigInt::one();
    for k in 0..=m {
        coeffs.push(if k % 2 == 0 { c.clone() } else { -c.clone() });
        c = c * (m - k) / (k + 1);
    }
    UniPoly::new(coeffs)
}

/// First `order + 1` coefficients of `p(t) / (1 - t)^m`.
///
/// Division by `1 - t` is a prefix sum, so this applies `m` prefix sums to the
/// truncated coefficient vector.
pub fn series_quotient(p: &UniPoly, m: usize, order: usize) -> RatSeq {
    let mut acc: Vec<BigInt> = (0..=order).map(|k| p.coeff(k)).collect();
    for _ in 0..m {
        let mut run = BigInt::zero();
        for c in acc.iter_mut() {
            run += &*c;
            *c = run.clone();
        }
    }
    RatSeq::from_integers(acc)
}

/// Finite sequence of exact rationals, always in lowest terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RatSeq {
    entries: Vec<BigRational>,
}

impl RatSeq {
    pub fn new(entries: Vec<BigRational>) -> Self {
        Self { entries }
    }

    pub fn from_integers(entries: Vec<BigInt>) -> Self {
        Self { entries: entries.into_iter().map(BigRational::from_integer).collect() }
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, k: usize) -> Option<&BigRational> {
        self.entries.get(k)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|r| r.is_integer())
    }

    /// Reads the entries as polynomial coefficients and evaluates at `x`.
    pub fn eval_poly(&self, x: &BigRational) -> BigRational {
        self.entries.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for RatSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, r) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("]")
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`.
fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(BigRational::one());
            continue;
        }
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        let s: BigRational = (0..m).map(|k| BigRational::from_integer(binomial(m + 1, k)) * &b[k]).sum();
        b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// Coefficients (ascending in `x`) of the Bernoulli polynomial `𝓑_n(x)`,
/// normalized so that `𝓑_1(x) = x - 1/2`.
pub fn bernoulli_poly(n: usize) -> RatSeq {
    let b = bernoulli_numbers(n);
    RatSeq::new((0..=n).map(|k| BigRational::from_integer(binomial(n, k)) * &b[n - k]).collect())
}

/// `sum_{j=1}^{k} j^m` by direct summation.
pub fn power_sum(m: u32, k: u64) -> BigInt {
    (1..=k).map(|j| BigInt::from(j).pow(m)).sum()
}

/// `sum_{j=1}^{k} j^m` through `(𝓑_{m+1}(k+1) - 𝓑_{m+1}(1)) / (m+1)`.
pub fn power_sum_bernoulli(m: u32, k: u64) -> BigInt {
    let bp = bernoulli_poly(m as usize + 1);
    let hi = bp.eval_poly(&BigRational::from_integer(BigInt::from(k + 1)));
    let lo = bp.eval_poly(&BigRational::one());
    let v = (hi - lo) / BigRational::from_integer(BigInt::from(m + 1));
    debug_assert!(v.is_integer());
    v.to_integer()
}

/// Sparse bivariate polynomial in `(s, t)`; keys are `(s-exponent, t-exponent)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<(usize, usize), BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0, 0)
    }

    pub fn monomial(c: BigInt, s_exp: usize, t_exp: usize) -> Self {
        let mut p = Self::zero();
        p.add_term(c, s_exp, t_exp);
        p
    }

    pub fn s() -> Self {
        Self::monomial(BigInt::one(), 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 0, 1)
    }

    /// `s - t`.
    pub fn s_minus_t() -> Self {
        &Self::s() - &Self::t()
    }

    pub fn add_term(&mut self, c: BigInt, s_exp: usize, t_exp: usize) {
        if c.is_zero() {
            return;
        }
        let key = (s_exp, t_exp);
        let sum = self.terms.remove(&key).unwrap_or_default() + c;
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, s_exp: usize, t_exp: usize) -> BigInt {
        self.terms.get(&(s_exp, t_exp)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether every monomial has total degree `d`.
    pub fn is_homogeneous_of_degree(&self, d: usize) -> bool {
        self.terms.keys().all(|&(a, b)| a + b == d)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Substitutes `s = 1`.
    pub fn eval_s1(&self) -> UniPoly {
        let len = self.terms.keys().map(|&(_, b)| b + 1).max().unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); len];
        for (&(_, b), c) in &self.terms {
            coeffs[b] += c;
        }
        UniPoly::new(coeffs)
    }
}

impl fmt::Display for BiPoly {
    /// Terms `c*s^a*t^b`, ordered by descending `s` exponent.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = |name: char, e: usize| match e {
            0 => None,
            1 => Some(name.to_string()),
            _ => Some(format!("{name}^{e}")),
        };
        let terms: Vec<(BigInt, String)> = self
            .terms
            .iter()
            .rev()
            .map(|(&(a, b), c)| {
                let vars: Vec<String> = [var('s', a), var('t', b)].into_iter().flatten().collect();
                (c.clone(), vars.join("*"))
            })
            .collect();
        write_terms(f, &terms)
    }
}

impl FromStr for BiPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut acc = BiPoly::zero();
        for (neg, term) in split_terms(s)? {
            let (c, e) = parse_term(&term, &['s', 't'])?;
            acc.add_term(if neg { -c } else { c }, e[0], e[1]);
        }
        Ok(acc)
    }
}

#[derive(Serialize)]
struct BiTerm {
    s: usize,
    t: usize,
    coeff: String,
}

impl Serialize for BiPoly {
    /// JSON list of `{"s": a, "t": b, "coeff": "c"}` in ascending key order.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms.iter().map(|(&(s, t), c)| BiTerm { s, t, coeff: c.to_string() }))
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;

    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(c.clone(), a, b);
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;

    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(c1 * c2, a1 + a2, b1 + b2);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;

    fn neg(self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }
}

forward_owned_binop!(BiPoly, Add, add);
forward_owned_binop!(BiPoly, Sub, sub);
forward_owned_binop!(BiPoly, Mul, mul);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BiPolyOp {
    Add,
    Mul,
}

pub fn bipoly_arith(a: &BiPoly, b: &BiPoly, op: BiPolyOp) -> BiPoly {
    match op {
        BiPolyOp::Add => a + b,
        BiPolyOp::Mul => a * b,
    }
}

pub fn bipoly_eval_s1(a: &BiPoly) -> UniPoly {
    a.eval_s1()
}
