//! Sparse polynomials in `x₁..xₙ` with coefficients in `ℤ[β]`.
//!
//! [`BetaInt`] is an element of `ℤ[β]` stored densely by β-exponent;
//! [`BetaPoly`] maps exponent vectors to `BetaInt` values and truncates the
//! total x-degree at an optional bound. Truncated products behave like
//! arithmetic in the quotient by monomials of degree above the bound.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

/// Errors from polynomial arithmetic and (de)serialization.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable count mismatch: {left} vs {right}")]
    NvarsMismatch { left: usize, right: usize },
    #[error("operation needs a finite degree bound")]
    UnboundedTruncation,
    #[error("point has {got} coordinates, polynomial has {want} variables")]
    PointLength { got: usize, want: usize },
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
}

/// An exponent vector.
pub type Monomial = SmallVec<[u16; 8]>;

/// Total degree of an exponent vector.
pub fn degree(m: &[u16]) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

/// An element of `ℤ[β]`, stored as coefficients of `β⁰, β¹, …` with no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BetaInt(Vec<BigInt>);

impl BetaInt {
    pub fn zero() -> Self {
        BetaInt(Vec::new())
    }

    pub fn one() -> Self {
        BetaInt(vec![BigInt::one()])
    }

    pub fn from_int<T: Into<BigInt>>(c: T) -> Self {
        BetaInt::monomial(c.into(), 0)
    }

    /// `c·β^k`.
    pub fn monomial(c: BigInt, k: u32) -> Self {
        if c.is_zero() {
            return BetaInt::zero();
        }
        let mut v = vec![BigInt::zero(); k as usize];
        v.push(c);
        BetaInt(v)
    }

    /// `β^k`.
    pub fn beta_pow(k: u32) -> Self {
        BetaInt::monomial(BigInt::one(), k)
    }

    /// Builds from dense coefficients (trailing zeros allowed).
    pub fn from_coeffs(v: Vec<BigInt>) -> Self {
        let mut b = BetaInt(v);
        b.trim();
        b
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    /// Coefficient of `β^k`.
    pub fn coeff(&self, k: u32) -> BigInt {
        self.0.get(k as usize).cloned().unwrap_or_default()
    }

    /// Nonzero `(k, c)` pairs in increasing `k`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k as u32, c))
    }

    /// Returns `(k, c)` when the value is exactly `c·β^k` with `c ≠ 0`.
    pub fn single_term(&self) -> Option<(u32, &BigInt)> {
        let mut it = self.terms();
        let first = it.next()?;
        if it.next().is_some() {
            None
        } else {
            Some(first)
        }
    }

    /// Lowest β-exponent with a nonzero coefficient.
    pub fn min_beta(&self) -> Option<u32> {
        self.terms().next().map(|(k, _)| k)
    }

    pub fn max_beta(&self) -> Option<u32> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() as u32 - 1)
        }
    }

    /// Multiplies by `β^k`.
    pub fn shift(&self, k: u32) -> Self {
        if self.is_zero() {
            return BetaInt::zero();
        }
        let mut v = vec![BigInt::zero(); k as usize];
        v.extend(self.0.iter().cloned());
        BetaInt(v)
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return BetaInt::zero();
        }
        BetaInt(self.0.iter().map(|x| x * c).collect())
    }

    /// Exact division of every coefficient by `d`, or `None` if some
    /// coefficient is not divisible.
    pub fn div_exact(&self, d: &BigInt) -> Option<Self> {
        let mut v = Vec::with_capacity(self.0.len());
        for c in &self.0 {
            if !(c % d).is_zero() {
                return None;
            }
            v.push(c / d);
        }
        Some(BetaInt(v))
    }

    /// `self += c·other`.
    pub fn add_scaled(&mut self, other: &BetaInt, c: &BetaInt) {
        if other.is_zero() || c.is_zero() {
            return;
        }
        let need = other.0.len() + c.0.len() - 1;
        if self.0.len() < need {
            self.0.resize(need, BigInt::zero());
        }
        for (i, a) in other.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in c.0.iter().enumerate() {
                if !b.is_zero() {
                    self.0[i + j] += a * b;
                }
            }
        }
        self.trim();
    }

    /// Evaluates at a rational β.
    pub fn eval(&self, beta: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * beta + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Substitutes an integer value for β.
    pub fn eval_int(&self, beta: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.0.iter().rev() {
            acc = acc * beta + c;
        }
        acc
    }

    /// All coefficients are nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    /// Decimal strings for `β⁰, β¹, …`.
    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_strings(v: &[String]) -> Option<Self> {
        let coeffs: Option<Vec<BigInt>> = v.iter().map(|s| s.parse().ok()).collect();
        Some(BetaInt::from_coeffs(coeffs?))
    }
}

impl From<i64> for BetaInt {
    fn from(c: i64) -> Self {
        BetaInt::from_int(c)
    }
}

impl AddAssign<&BetaInt> for BetaInt {
    fn add_assign(&mut self, rhs: &BetaInt) {
        if self.0.len() < rhs.0.len() {
            self.0.resize(rhs.0.len(), BigInt::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
        self.trim();
    }
}

impl SubAssign<&BetaInt> for BetaInt {
    fn sub_assign(&mut self, rhs: &BetaInt) {
        if self.0.len() < rhs.0.len() {
            self.0.resize(rhs.0.len(), BigInt::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a -= b;
        }
        self.trim();
    }
}

impl Add for &BetaInt {
    type Output = BetaInt;
    fn add(self, rhs: &BetaInt) -> BetaInt {
        let mut r = self.clone();
        r += rhs;
        r
    }
}

impl Sub for &BetaInt {
    type Output = BetaInt;
    fn sub(self, rhs: &BetaInt) -> BetaInt {
        let mut r = self.clone();
        r -= rhs;
        r
    }
}

impl Mul for &BetaInt {
    type Output = BetaInt;
    fn mul(self, rhs: &BetaInt) -> BetaInt {
        let mut r = BetaInt::zero();
        r.add_scaled(self, rhs);
        r
    }
}

impl Neg for &BetaInt {
    type Output = BetaInt;
    fn neg(self) -> BetaInt {
        BetaInt(self.0.iter().map(|c| -c).collect())
    }
}

fn superscript(n: u32) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| SUP[c.to_digit(10).unwrap() as usize]).collect()
}

fn subscript(n: usize) -> String {
    const SUB: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string().chars().map(|c| SUB[c.to_digit(10).unwrap() as usize]).collect()
}

fn beta_power(k: u32) -> String {
    match k {
        0 => String::new(),
        1 => "β".to_string(),
        _ => format!("β{}", superscript(k)),
    }
}

impl fmt::Display for BetaInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { "-" } else { "+" })?;
            }
            first = false;
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            f.write_str(&beta_power(k))?;
        }
        Ok(())
    }
}

/// A point at which to evaluate polynomials exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoint {
    pub beta: BigRational,
    pub coords: Vec<BigRational>,
}

impl RationalPoint {
    pub fn new(beta: BigRational, coords: Vec<BigRational>) -> Self {
        RationalPoint { beta, coords }
    }

    pub fn from_ints(beta: i64, coords: &[i64]) -> Self {
        RationalPoint {
            beta: BigRational::from_integer(beta.into()),
            coords: coords.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
        }
    }
}

/// A truncated polynomial in `nvars` variables over `ℤ[β]`.
///
/// When `split` is set the first `split` variables form the x-alphabet and
/// the rest the y-alphabet; this is metadata used by coefficient
/// extraction and rendering only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaPoly {
    nvars: usize,
    max_deg: Option<u32>,
    split: Option<usize>,
    terms: FxHashMap<Monomial, BetaInt>,
}

impl BetaPoly {
    pub fn zero(nvars: usize, max_deg: Option<u32>) -> Self {
        BetaPoly { nvars, max_deg, split: None, terms: FxHashMap::default() }
    }

    pub fn constant(nvars: usize, max_deg: Option<u32>, c: BetaInt) -> Self {
        let mut p = BetaPoly::zero(nvars, max_deg);
        p.add_term(SmallVec::from_elem(0, nvars), &c);
        p
    }

    pub fn one(nvars: usize, max_deg: Option<u32>) -> Self {
        BetaPoly::constant(nvars, max_deg, BetaInt::one())
    }

    /// The variable `x_{i+1}` (0-based index `i`).
    pub fn var(nvars: usize, max_deg: Option<u32>, i: usize) -> Self {
        let mut m: Monomial = SmallVec::from_elem(0, nvars);
        m[i] = 1;
        let mut p = BetaPoly::zero(nvars, max_deg);
        p.add_term(m, &BetaInt::one());
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I>(nvars: usize, max_deg: Option<u32>, it: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u16>, BetaInt)>,
    {
        let mut p = BetaPoly::zero(nvars, max_deg);
        for (e, c) in it {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(SmallVec::from_vec(e), &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_deg(&self) -> Option<u32> {
        self.max_deg
    }

    pub fn split(&self) -> Option<usize> {
        self.split
    }

    pub fn with_split(mut self, split: usize) -> Self {
        assert!(split <= self.nvars);
        self.split = Some(split);
        self
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BetaInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u16]) -> BetaInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn fits(&self, m: &[u16]) -> bool {
        self.max_deg.is_none_or(|d| degree(m) <= d)
    }

    /// Adds `c·x^m`, dropping it if it exceeds the truncation.
    pub fn add_term(&mut self, m: Monomial, c: &BetaInt) {
        if c.is_zero() || !self.fits(&m) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    fn check(&self, other: &BetaPoly) -> Result<(), PolyError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(PolyError::NvarsMismatch { left: self.nvars, right: other.nvars })
        }
    }

    fn joint_deg(&self, other: &BetaPoly) -> Option<u32> {
        match (self.max_deg, other.max_deg) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn checked_add(&self, other: &BetaPoly) -> Result<BetaPoly, PolyError> {
        self.check(other)?;
        let mut r = self.clone();
        r.max_deg = self.joint_deg(other);
        r.retain_degree();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c);
        }
        Ok(r)
    }

    pub fn checked_sub(&self, other: &BetaPoly) -> Result<BetaPoly, PolyError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &BetaPoly) -> Result<BetaPoly, PolyError> {
        self.check(other)?;
        let d = self.joint_deg(other);
        let mut a: Vec<(u32, &Monomial, &BetaInt)> = self.terms.iter().map(|(m, c)| (degree(m), m, c)).collect();
        let mut b: Vec<(u32, &Monomial, &BetaInt)> = other.terms.iter().map(|(m, c)| (degree(m), m, c)).collect();
        a.sort_by_key(|t| t.0);
        b.sort_by_key(|t| t.0);
        let mut out: FxHashMap<Monomial, BetaInt> = FxHashMap::default();
        for (da, ma, ca) in &a {
            for (db, mb, cb) in &b {
                if d.is_some_and(|d| da + db > d) {
                    break;
                }
                let m: Monomial = ma.iter().zip(mb.iter()).map(|(x, y)| x + y).collect();
                out.entry(m).or_default().add_scaled(ca, cb);
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(BetaPoly { nvars: self.nvars, max_deg: d, split: self.split.or(other.split), terms: out })
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &BetaInt) -> BetaPoly {
        let mut r = BetaPoly { terms: FxHashMap::default(), ..self.clone() };
        for (m, v) in &self.terms {
            r.add_term(m.clone(), &(v * c));
        }
        r
    }

    pub fn scale_int(&self, c: i64) -> BetaPoly {
        self.scale(&BetaInt::from_int(c))
    }

    fn retain_degree(&mut self) {
        if let Some(d) = self.max_deg {
            self.terms.retain(|m, _| degree(m) <= d);
        }
    }

    /// Re-truncates at a (smaller) bound.
    pub fn truncate(&self, max_deg: Option<u32>) -> BetaPoly {
        let mut r = self.clone();
        r.max_deg = match (self.max_deg, max_deg) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        r.retain_degree();
        r
    }

    /// Keeps terms whose x-degree is at most `dx` and y-degree at most `dy`.
    pub fn retain_bidegree(&self, split: usize, dx: u32, dy: u32) -> BetaPoly {
        let mut r = self.clone();
        r.split = Some(split);
        r.terms.retain(|m, _| degree(&m[..split]) <= dx && degree(&m[split..]) <= dy);
        r
    }

    /// Applies `x_i ↦ x_i/(1−βx_i) = Σ_{k≥1} β^{k−1}x_i^k` to every variable.
    pub fn substitute_geometric(&self) -> Result<BetaPoly, PolyError> {
        let d = self.max_deg.ok_or(PolyError::UnboundedTruncation)?;
        let mut out = BetaPoly { terms: FxHashMap::default(), ..self.clone() };
        for (m, c) in &self.terms {
            let slack = d - degree(m);
            // (x/(1−βx))^e = x^e Σ_k C(e+k−1, k) β^k x^k
            let mut extra: Monomial = SmallVec::from_elem(0, self.nvars);
            geometric_rec(m, 0, slack, &mut extra, BigInt::one(), 0, c, &mut out);
        }
        Ok(out)
    }

    /// Substitutes `x_i ↦ −x_i` for the listed (0-based) variables.
    pub fn negate_alphabet(&self, which: &[usize]) -> BetaPoly {
        let mut r = self.clone();
        for (m, c) in r.terms.iter_mut() {
            let s: u32 = which.iter().map(|&i| m[i] as u32).sum();
            if s % 2 == 1 {
                *c = -&*c;
            }
        }
        r
    }

    /// Exact value at a rational point.
    pub fn eval_rational(&self, pt: &RationalPoint) -> Result<BigRational, PolyError> {
        if pt.coords.len() != self.nvars {
            return Err(PolyError::PointLength { got: pt.coords.len(), want: self.nvars });
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.eval(&pt.beta);
            for (x, &e) in pt.coords.iter().zip(m.iter()) {
                t *= num_traits::pow(x.clone(), e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Sets β to an integer, leaving a polynomial with β-free coefficients.
    pub fn specialize_beta_int(&self, beta: &BigInt) -> BetaPoly {
        let mut r = BetaPoly { terms: FxHashMap::default(), ..self.clone() };
        for (m, c) in &self.terms {
            r.add_term(m.clone(), &BetaInt::from_int(c.eval_int(beta)));
        }
        r
    }

    /// Sets β to a rational value; returns sorted `(exponents, value)` pairs.
    pub fn specialize_beta(&self, beta: &BigRational) -> Vec<(Monomial, BigRational)> {
        let mut v: Vec<(Monomial, BigRational)> = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| (m.clone(), c.eval(beta)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        v.dedup_by(|a, b| a.0 == b.0);
        v
    }

    /// Permutes variables: variable `i` becomes variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> BetaPoly {
        let mut r = BetaPoly { terms: FxHashMap::default(), ..self.clone() };
        for (m, c) in &self.terms {
            let mut n: Monomial = SmallVec::from_elem(0, self.nvars);
            for (i, &e) in m.iter().enumerate() {
                n[perm[i]] = e;
            }
            r.terms.insert(n, c.clone());
        }
        r
    }

    /// True when invariant under every adjacent transposition of the
    /// variables in `range`.
    pub fn is_symmetric_in(&self, range: std::ops::Range<usize>) -> bool {
        if range.len() < 2 {
            return true;
        }
        for i in range.start..range.end - 1 {
            for (m, c) in &self.terms {
                let mut n = m.clone();
                n.swap(i, i + 1);
                if self.terms.get(&n) != Some(c) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_symmetric_in(0..self.nvars)
    }

    /// Re-embeds into `nvars` variables, placing this polynomial's variables
    /// starting at `offset`.
    pub fn embed(&self, nvars: usize, offset: usize) -> BetaPoly {
        assert!(offset + self.nvars <= nvars);
        let mut r = BetaPoly::zero(nvars, self.max_deg);
        for (m, c) in &self.terms {
            let mut n: Monomial = SmallVec::from_elem(0, nvars);
            n[offset..offset + self.nvars].copy_from_slice(m);
            r.terms.insert(n, c.clone());
        }
        r
    }

    /// Restricts to the first `k` variables by setting the rest to zero.
    pub fn restrict(&self, k: usize) -> BetaPoly {
        let mut r = BetaPoly::zero(k, self.max_deg);
        for (m, c) in &self.terms {
            if m[k..].iter().all(|&e| e == 0) {
                r.terms.insert(SmallVec::from_slice(&m[..k]), c.clone());
            }
        }
        r
    }

    /// Checks every term has `x-degree ± β-degree = target` (sign given by
    /// `plus`): `x − k` for GP-like series, `x + k` for dual functions.
    pub fn is_graded(&self, target: i64, plus: bool) -> bool {
        self.terms.iter().all(|(m, c)| {
            let x = degree(m) as i64;
            c.terms().all(|(k, _)| if plus { x + k as i64 == target } else { x - k as i64 == target })
        })
    }

    /// Terms in canonical order: total degree ascending, then exponent
    /// vectors in decreasing lexicographic order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &BetaInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| canonical_cmp(a.0, b.0));
        v
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(PolyJson::from(self)).expect("serializable")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolyJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<BetaPoly, PolyError> {
        let j: PolyJson = serde_json::from_str(s).map_err(|e| PolyError::Json(e.to_string()))?;
        j.try_into()
    }

    fn var_name(&self, i: usize) -> String {
        match self.split {
            Some(s) if i >= s => format!("y{}", subscript(i - s + 1)),
            _ => format!("x{}", subscript(i + 1)),
        }
    }

    /// Renders an exponent vector with this polynomial's variable names.
    pub fn monomial_text(&self, m: &[u16]) -> String {
        let mut s = String::new();
        for (i, &e) in m.iter().enumerate() {
            if e > 0 {
                s.push_str(&self.var_name(i));
                if e > 1 {
                    s.push_str(&superscript(e as u32));
                }
            }
        }
        s
    }
}

/// Canonical term order used for serialization and rendering.
pub fn canonical_cmp(a: &[u16], b: &[u16]) -> Ordering {
    degree(a).cmp(&degree(b)).then_with(|| b.cmp(a))
}

#[allow(clippy::too_many_arguments)]
fn geometric_rec(
    m: &Monomial,
    i: usize,
    slack: u32,
    extra: &mut Monomial,
    mult: BigInt,
    bdeg: u32,
    c: &BetaInt,
    out: &mut BetaPoly,
) {
    if i == m.len() {
        let n: Monomial = m.iter().zip(extra.iter()).map(|(a, b)| a + b).collect();
        out.add_term(n, &c.shift(bdeg).scale_int(&mult));
        return;
    }
    let e = m[i] as u64;
    if e == 0 {
        geometric_rec(m, i + 1, slack, extra, mult, bdeg, c, out);
        return;
    }
    let mut binom = BigInt::one();
    for k in 0..=slack {
        if k > 0 {
            // C(e+k−1, k) = C(e+k−2, k−1)·(e+k−1)/k
            binom = binom * BigInt::from(e + k as u64 - 1) / BigInt::from(k);
        }
        extra[i] = k as u16;
        geometric_rec(m, i + 1, slack - k, extra, &mult * &binom, bdeg + k, c, out);
    }
    extra[i] = 0;
}

impl Neg for &BetaPoly {
    type Output = BetaPoly;
    fn neg(self) -> BetaPoly {
        let mut r = self.clone();
        for c in r.terms.values_mut() {
            *c = -&*c;
        }
        r
    }
}

/// Operator forms panic on a variable-count mismatch; use the `checked_*`
/// methods to handle that case.
impl Add for &BetaPoly {
    type Output = BetaPoly;
    fn add(self, rhs: &BetaPoly) -> BetaPoly {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &BetaPoly {
    type Output = BetaPoly;
    fn sub(self, rhs: &BetaPoly) -> BetaPoly {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &BetaPoly {
    type Output = BetaPoly;
    fn mul(self, rhs: &BetaPoly) -> BetaPoly {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl AddAssign<&BetaPoly> for BetaPoly {
    fn add_assign(&mut self, rhs: &BetaPoly) {
        self.check(rhs).unwrap_or_else(|e| panic!("{e}"));
        self.max_deg = self.joint_deg(rhs);
        self.retain_degree();
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl fmt::Display for BetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.sorted_terms() {
            let mono = self.monomial_text(m);
            let coef = match c.single_term() {
                Some((k, v)) => {
                    let neg = v.is_negative();
                    let mag = v.abs();
                    let mut s = String::new();
                    if !mag.is_one() || (k == 0 && mono.is_empty()) {
                        s.push_str(&mag.to_string());
                    }
                    s.push_str(&beta_power(k));
                    (neg, s)
                }
                None => (false, format!("({c})")),
            };
            if first {
                if coef.0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if coef.0 { "-" } else { "+" })?;
            }
            first = false;
            f.write_str(&coef.1)?;
            f.write_str(&mono)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exps: Vec<u16>,
    beta: u32,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: usize,
    max_deg: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    split: Option<usize>,
    terms: Vec<TermJson>,
}

impl From<&BetaPoly> for PolyJson {
    fn from(p: &BetaPoly) -> Self {
        let mut terms = Vec::new();
        for (m, c) in p.sorted_terms() {
            for (k, v) in c.terms() {
                terms.push(TermJson { exps: m.to_vec(), beta: k, coeff: v.to_string() });
            }
        }
        PolyJson { vars: p.nvars, max_deg: p.max_deg, split: p.split, terms }
    }
}

impl TryFrom<PolyJson> for BetaPoly {
    type Error = PolyError;
    fn try_from(j: PolyJson) -> Result<Self, PolyError> {
        let mut p = BetaPoly::zero(j.vars, j.max_deg);
        p.split = j.split;
        for t in j.terms {
            if t.exps.len() != j.vars {
                return Err(PolyError::Json(format!("exponent vector {:?} has wrong length", t.exps)));
            }
            if !p.fits(&t.exps) {
                return Err(PolyError::Json(format!("term {:?} exceeds max_deg", t.exps)));
            }
            let c: BigInt = t.coeff.parse().map_err(|_| PolyError::Json(format!("bad coefficient {:?}", t.coeff)))?;
            if c.is_zero() {
                return Err(PolyError::Json("zero coefficient stored".into()));
            }
            p.add_term(SmallVec::from_vec(t.exps), &BetaInt::monomial(c, t.beta));
        }
        Ok(p)
    }
}

/// Coefficient of `x^a y^b` in the one-pair factor `(1−x̄y)/(1−xy)`:
/// `1` at `(0,0)`, `2` at `(b,b)`, `(−β)^{a−b}` for `a > b ≥ 1`.
pub fn kernel_factor_coeff(a: u32, b: u32) -> BetaInt {
    match (a, b) {
        (0, 0) => BetaInt::one(),
        (_, 0) => BetaInt::zero(),
        (a, b) if a == b => BetaInt::from_int(2),
        (a, b) if a > b => {
            let k = a - b;
            let sign = if k % 2 == 0 { 1 } else { -1 };
            BetaInt::monomial(BigInt::from(sign), k)
        }
        _ => BetaInt::zero(),
    }
}

/// `Δ(x,y) = Π_{i≤nx, j≤ny} (1−x̄_i y_j)/(1−x_i y_j)` with `x̄ = −x/(1+βx)`,
/// over the split alphabet `(x₁..x_nx, y₁..y_ny)`, keeping terms of x-degree
/// and y-degree at most `max_deg`.
pub fn cauchy_kernel(nx: usize, ny: usize, max_deg: u32) -> BetaPoly {
    let n = nx + ny;
    let total = Some(2 * max_deg);
    let mut acc = BetaPoly::one(n, total).with_split(nx);
    for i in 0..nx {
        for j in 0..ny {
            let mut f = BetaPoly::zero(n, total);
            for a in 0..=max_deg {
                for b in 0..=a {
                    let c = kernel_factor_coeff(a, b);
                    if c.is_zero() {
                        continue;
                    }
                    let mut m: Monomial = SmallVec::from_elem(0, n);
                    m[i] = a as u16;
                    m[nx + j] = b as u16;
                    f.add_term(m, &c);
                }
            }
            acc = (&acc * &f).retain_bidegree(nx, max_deg, max_deg);
        }
    }
    acc
}


#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(n: usize, d: Option<u32>, i: usize) -> BetaPoly {
        BetaPoly::var(n, d, i)
    }

    fn beta() -> BetaInt {
        BetaInt::beta_pow(1)
    }

    #[test]
    fn ring_examples() {
        let (a, b) = (x(2, None, 0), x(2, None, 1));
        let p = &(&a + &b) * &(&a - &b);
        let want = &(&a * &a) - &(&b * &b);
        assert_eq!(p, want);
        let t = x(1, Some(1), 0);
        assert!((&t * &t).is_zero());
        assert_eq!(x(1, None, 0).scale(&beta()).to_string(), "βx₁");
    }

    #[test]
    fn nvars_mismatch_is_an_error() {
        let e = x(1, None, 0).checked_add(&x(2, None, 0)).unwrap_err();
        assert_eq!(e, PolyError::NvarsMismatch { left: 1, right: 2 });
    }

    #[test]
    fn geometric_substitution() {
        let p = x(1, Some(3), 0).substitute_geometric().unwrap();
        assert_eq!(p.to_string(), "x₁+βx₁²+β²x₁³");
        assert_eq!(BetaPoly::one(2, Some(3)).substitute_geometric().unwrap(), BetaPoly::one(2, Some(3)));
        let q = (&x(2, Some(3), 0) * &x(2, Some(3), 1)).substitute_geometric().unwrap();
        assert_eq!(q.to_string(), "x₁x₂+βx₁²x₂+βx₁x₂²");
        assert_eq!(x(1, None, 0).substitute_geometric(), Err(PolyError::UnboundedTruncation));
    }

    #[test]
    fn geometric_matches_repeated_product() {
        let d = Some(6);
        let s = {
            let mut s = BetaPoly::zero(1, d);
            for k in 1..=6u16 {
                s.add_term(SmallVec::from_vec(vec![k]), &BetaInt::beta_pow(k as u32 - 1));
            }
            s
        };
        let cube = &(&s * &s) * &s;
        let direct = (&(&x(1, d, 0) * &x(1, d, 0)) * &x(1, d, 0)).substitute_geometric().unwrap();
        assert_eq!(cube, direct);
    }

    #[test]
    fn negation() {
        let p = &x(2, None, 0) + &x(2, None, 1);
        assert_eq!(p.negate_alphabet(&[0]).to_string(), "-x₁+x₂");
        let sq = &x(1, None, 0) * &x(1, None, 0);
        assert_eq!(sq.negate_alphabet(&[0]), sq);
        let m = (&x(2, None, 0) * &x(2, None, 1)).scale(&beta());
        assert_eq!(m.negate_alphabet(&[0, 1]), m);
    }

    #[test]
    fn kernel_examples() {
        let k = cauchy_kernel(1, 1, 2);
        assert_eq!(k.coeff(&[0, 0]), BetaInt::one());
        assert_eq!(k.coeff(&[1, 1]), BetaInt::from_int(2));
        assert_eq!(k.coeff(&[2, 1]), BetaInt::monomial(BigInt::from(-1), 1));
        // The pair factor is not symmetric under x ↔ y, but the kernel is
        // symmetric within each alphabet.
        assert!(k.coeff(&[1, 2]).is_zero());
        let a = cauchy_kernel(2, 3, 3);
        assert!(a.is_symmetric_in(0..2) && a.is_symmetric_in(2..5));
    }

    /// At β=0 the kernel is Π (1+x_i y_j)/(1−x_i y_j); expand that directly.
    #[test]
    fn kernel_at_beta_zero_is_classical() {
        let d = 4;
        let k = cauchy_kernel(2, 2, d).specialize_beta_int(&BigInt::zero());
        let mut direct = BetaPoly::one(4, Some(2 * d));
        for i in 0..2 {
            for j in 0..2 {
                let mut f = BetaPoly::one(4, Some(2 * d));
                for t in 1..=d as u16 {
                    let mut m: Monomial = SmallVec::from_elem(0, 4);
                    m[i] = t;
                    m[2 + j] = t;
                    f.add_term(m, &BetaInt::from_int(2));
                }
                direct = (&direct * &f).retain_bidegree(2, d, d);
            }
        }
        assert_eq!(k.terms().collect::<FxHashMap<_, _>>(), direct.terms().collect::<FxHashMap<_, _>>());
    }

    #[test]
    fn evaluation() {
        let p = &x(1, None, 0) + &(&x(1, None, 0) * &x(1, None, 0)).scale(&beta());
        assert_eq!(p.eval_rational(&RationalPoint::from_ints(1, &[2])).unwrap(), BigRational::from_integer(6.into()));
        let one = BetaPoly::one(2, None);
        assert!(one.eval_rational(&RationalPoint::from_ints(5, &[3, 4])).unwrap().is_one());
        let oplus = &(&x(2, None, 0) + &x(2, None, 1)) + &(&x(2, None, 0) * &x(2, None, 1)).scale(&beta());
        assert!(oplus.eval_rational(&RationalPoint::from_ints(-1, &[1, 1])).unwrap().is_one());
    }

    #[test]
    fn json_round_trip_and_order() {
        let p = &(&x(2, Some(4), 0) + &x(2, Some(4), 1)).scale(&BetaInt::from_coeffs(vec![2.into(), (-3).into()]))
            * &x(2, Some(4), 0);
        let s = p.to_json();
        assert_eq!(
            s,
            r#"{"vars":2,"max_deg":4,"terms":[{"exps":[2,0],"beta":0,"coeff":"2"},{"exps":[2,0],"beta":1,"coeff":"-3"},{"exps":[1,1],"beta":0,"coeff":"2"},{"exps":[1,1],"beta":1,"coeff":"-3"}]}"#
        );
        let back = BetaPoly::from_json(&s).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.to_json(), s);
        assert!(BetaPoly::from_json(r#"{"vars":1,"max_deg":1,"terms":[{"exps":[2],"beta":0,"coeff":"1"}]}"#).is_err());
    }

    #[test]
    fn beta_int_basics() {
        let a = BetaInt::from_coeffs(vec![1.into(), 2.into()]);
        let b = BetaInt::from_coeffs(vec![(-1).into(), 0.into(), 0.into()]);
        assert_eq!((&a * &a).to_string(), "1+4β+4β²");
        assert_eq!((&a + &b).to_string(), "2β");
        assert_eq!((&a + &b).single_term(), Some((1, &BigInt::from(2))));
        assert_eq!(a.div_exact(&BigInt::from(2)), None);
        assert_eq!(BetaInt::from_int(-4).div_exact(&BigInt::from(2)), Some(BetaInt::from_int(-2)));
    }

    fn arb_poly(nvars: usize, max_deg: u32) -> impl Strategy<Value = BetaPoly> {
        prop::collection::vec((prop::collection::vec(0u16..3, nvars), 0u32..3, -3i64..4), 0..6).prop_map(
            move |ts| {
                BetaPoly::from_terms(
                    nvars,
                    Some(max_deg),
                    ts.into_iter().map(|(e, k, c)| (e, BetaInt::monomial(c.into(), k))),
                )
            },
        )
    }

    fn arb_point(nvars: usize) -> impl Strategy<Value = RationalPoint> {
        ((-3i64..4), prop::collection::vec(-3i64..4, nvars)).prop_map(|(b, xs)| RationalPoint::from_ints(b, &xs))
    }

    proptest! {
        #[test]
        fn truncated_mul_is_associative(p in arb_poly(2, 4), q in arb_poly(2, 4), r in arb_poly(2, 4)) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        }

        #[test]
        fn distributive(p in arb_poly(2, 5), q in arb_poly(2, 5), r in arb_poly(2, 5)) {
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        }

        #[test]
        fn eval_is_multiplicative(p in arb_poly(2, 4), q in arb_poly(2, 4), pt in arb_point(2)) {
            let (pu, qu) = (BetaPoly { max_deg: None, ..p }, BetaPoly { max_deg: None, ..q });
            let prod = &pu * &qu;
            prop_assert_eq!(
                prod.eval_rational(&pt).unwrap(),
                pu.eval_rational(&pt).unwrap() * qu.eval_rational(&pt).unwrap()
            );
        }

        #[test]
        fn geometric_at_beta_zero_is_identity(p in arb_poly(3, 5)) {
            let g = p.substitute_geometric().unwrap().specialize_beta_int(&BigInt::zero());
            prop_assert_eq!(g, p.specialize_beta_int(&BigInt::zero()));
        }

        #[test]
        fn json_round_trip(p in arb_poly(3, 5)) {
            let s = p.to_json();
            let back = BetaPoly::from_json(&s).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(back.to_json(), s);
        }
    }
}
