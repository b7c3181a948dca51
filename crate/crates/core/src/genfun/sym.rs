//! Symmetric functions stored by their coefficients on sorted monomials.
//!
//! A [`SymPoly`] holds, for each partition `α`, the coefficient of
//! `x^α = x₁^{α₁}x₂^{α₂}⋯` in a symmetric function. Symmetry makes this the
//! whole function: the coefficient of any monomial equals the coefficient of
//! its sorted exponent pattern. An optional variable bound `nvars` keeps only
//! patterns with at most that many parts, which is the same as specializing
//! `x_{nvars+1} = x_{nvars+2} = ⋯ = 0`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::polyring::{BetaInt, BetaPoly, Monomial};
use crate::shapes::Partition;

use super::GenfunError;

/// Equality compares coefficients only, not the truncation metadata.
#[derive(Debug, Clone)]
pub struct SymPoly {
    max_deg: Option<u32>,
    nvars: Option<usize>,
    coeffs: BTreeMap<Partition, BetaInt>,
}

fn min_opt<T: Ord>(a: Option<T>, b: Option<T>) -> Option<T> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl PartialEq for SymPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for SymPoly {}

impl SymPoly {
    pub fn zero(max_deg: Option<u32>, nvars: Option<usize>) -> Self {
        SymPoly { max_deg, nvars, coeffs: BTreeMap::new() }
    }

    pub fn one(max_deg: Option<u32>, nvars: Option<usize>) -> Self {
        let mut p = SymPoly::zero(max_deg, nvars);
        p.add_term(Partition::empty(), &BetaInt::one());
        p
    }

    pub fn max_deg(&self) -> Option<u32> {
        self.max_deg
    }

    pub fn nvars(&self) -> Option<usize> {
        self.nvars
    }

    pub fn fits(&self, a: &Partition) -> bool {
        self.max_deg.is_none_or(|d| a.size() <= d) && self.nvars.is_none_or(|n| a.len() <= n)
    }

    pub fn add_term(&mut self, a: Partition, c: &BetaInt) {
        if c.is_zero() || !self.fits(&a) {
            return;
        }
        let e = self.coeffs.entry(a.clone()).or_insert_with(BetaInt::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&a);
        }
    }

    pub fn coeff(&self, a: &Partition) -> BetaInt {
        self.coeffs.get(a).cloned().unwrap_or_default()
    }

    pub fn get(&self, a: &Partition) -> Option<&BetaInt> {
        self.coeffs.get(a)
    }

    /// Terms in graded order: degree ascending, then lexicographically
    /// decreasing within a degree.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Partition, &BetaInt)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.coeffs.keys().next().map(Partition::size)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().map(Partition::size)
    }

    pub fn longest(&self) -> usize {
        self.coeffs.keys().map(Partition::len).max().unwrap_or(0)
    }

    pub fn truncate(&self, max_deg: Option<u32>, nvars: Option<usize>) -> SymPoly {
        let mut p = SymPoly::zero(min_opt(self.max_deg, max_deg), min_opt(self.nvars, nvars));
        for (a, c) in &self.coeffs {
            p.add_term(a.clone(), c);
        }
        p
    }

    pub fn scale(&self, c: &BetaInt) -> SymPoly {
        let mut p = SymPoly::zero(self.max_deg, self.nvars);
        for (a, v) in &self.coeffs {
            p.add_term(a.clone(), &(v * c));
        }
        p
    }

    pub fn scale_int(&self, c: i64) -> SymPoly {
        self.scale(&BetaInt::from(c))
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &SymPoly, c: &BetaInt) {
        for (a, v) in &other.coeffs {
            self.add_term(a.clone(), &(v * c));
        }
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        let mut p = self.truncate(other.max_deg, other.nvars);
        p.add_scaled(other, &BetaInt::one());
        p
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        let mut p = self.truncate(other.max_deg, other.nvars);
        p.add_scaled(other, &BetaInt::from(-1));
        p
    }

    /// Product of symmetric functions: the coefficient of `x^α` sums
    /// `f[sort β]·g[sort(α−β)]` over all exponent vectors `β ≤ α`.
    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        let max_deg = min_opt(self.max_deg, other.max_deg);
        let nvars = min_opt(self.nvars, other.nvars);
        let mut out = SymPoly::zero(max_deg, nvars);
        let (Some(da), Some(db)) = (self.max_degree(), other.max_degree()) else {
            return out;
        };
        let top = max_deg.map_or(da + db, |d| d.min(da + db));
        let mut len = self.longest() + other.longest();
        if let Some(n) = nvars {
            len = len.min(n);
        }
        let lo = self.min_degree().unwrap_or(0) + other.min_degree().unwrap_or(0);
        for alpha in Partition::all_up_to(top, Some(len)) {
            if alpha.size() < lo {
                continue;
            }
            let c = product_coeff(self, other, alpha.parts());
            out.add_term(alpha, &c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> SymPoly {
        let mut acc = SymPoly::one(self.max_deg, self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn specialize_beta_int(&self, beta: &BigInt) -> SymPoly {
        let mut p = SymPoly::zero(self.max_deg, self.nvars);
        for (a, c) in &self.coeffs {
            p.add_term(a.clone(), &BetaInt::from_coeffs(vec![c.eval_int(beta)]));
        }
        p
    }

    /// Checks every term `β^k x^α` has `|α| ∓ k = target`.
    pub fn is_graded(&self, target: i64, plus: bool) -> bool {
        self.coeffs.iter().all(|(a, c)| {
            let x = a.size() as i64;
            c.terms().all(|(k, _)| if plus { x + k as i64 == target } else { x - k as i64 == target })
        })
    }

    /// Expands into an ordinary polynomial in `nvars` variables.
    pub fn to_poly(&self, nvars: usize, max_deg: Option<u32>) -> BetaPoly {
        let max_deg = min_opt(max_deg, self.max_deg);
        let mut p = BetaPoly::zero(nvars, max_deg);
        for (a, c) in &self.coeffs {
            if a.len() > nvars || max_deg.is_some_and(|d| a.size() > d) {
                continue;
            }
            let mut padded: Vec<u32> = a.parts().to_vec();
            padded.resize(nvars, 0);
            for perm in distinct_permutations(&padded) {
                let m: Monomial = perm.iter().map(|&e| e as u16).collect();
                p.add_term(m, c);
            }
        }
        p
    }

    /// Reads the sorted-monomial coefficients of a symmetric polynomial.
    pub fn from_poly(p: &BetaPoly) -> Result<SymPoly, GenfunError> {
        if !p.is_symmetric() {
            return Err(GenfunError::NotSymmetric);
        }
        let mut s = SymPoly::zero(p.max_deg(), Some(p.nvars()));
        for (m, c) in p.terms() {
            if m.windows(2).all(|w| w[0] >= w[1]) {
                let exps: Vec<u32> = m.iter().map(|&e| e as u32).collect();
                s.add_term(Partition::from_exponents(&exps), c);
            }
        }
        Ok(s)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(SymJson::from(self)).expect("serializable")
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<SymPoly, GenfunError> {
        let j: SymJson = serde_json::from_value(v).map_err(|e| GenfunError::Cache(e.to_string()))?;
        let mut p = SymPoly::zero(j.max_deg, j.nvars);
        for t in j.terms {
            let c = BetaInt::from_strings(&t.beta).ok_or_else(|| GenfunError::Cache("bad coefficient".into()))?;
            p.add_term(t.index, &c);
        }
        Ok(p)
    }
}

fn product_coeff(f: &SymPoly, g: &SymPoly, alpha: &[u32]) -> BetaInt {
    let mut total = BetaInt::zero();
    let mut left = vec![0u32; alpha.len()];
    fn rec(k: usize, alpha: &[u32], left: &mut Vec<u32>, f: &SymPoly, g: &SymPoly, total: &mut BetaInt) {
        if k == alpha.len() {
            let Some(a) = f.get(&Partition::from_exponents(left)) else { return };
            let right: Vec<u32> = alpha.iter().zip(left.iter()).map(|(x, y)| x - y).collect();
            if let Some(b) = g.get(&Partition::from_exponents(&right)) {
                *total += &(a * b);
            }
            return;
        }
        for v in 0..=alpha[k] {
            left[k] = v;
            rec(k + 1, alpha, left, f, g, total);
        }
    }
    rec(0, alpha, &mut left, f, g, &mut total);
    total
}

/// All distinct rearrangements of `v`.
pub fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &x in v {
        *counts.entry(x).or_insert(0) += 1;
    }
    let vals: Vec<(u32, usize)> = counts.into_iter().collect();
    let mut rem: Vec<usize> = vals.iter().map(|&(_, c)| c).collect();
    let mut out = Vec::new();
    let mut cur: SmallVec<[u32; 8]> = SmallVec::new();
    fn rec(n: usize, vals: &[(u32, usize)], rem: &mut [usize], cur: &mut SmallVec<[u32; 8]>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.to_vec());
            return;
        }
        for i in 0..vals.len() {
            if rem[i] > 0 {
                rem[i] -= 1;
                cur.push(vals[i].0);
                rec(n, vals, rem, cur, out);
                cur.pop();
                rem[i] += 1;
            }
        }
    }
    rec(v.len(), &vals, &mut rem, &mut cur, &mut out);
    out
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(a, c)| format!("({c})m[{a}]")).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct SymTerm {
    index: Partition,
    beta: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct SymJson {
    max_deg: Option<u32>,
    nvars: Option<usize>,
    terms: Vec<SymTerm>,
}

impl From<&SymPoly> for SymJson {
    fn from(p: &SymPoly) -> Self {
        SymJson {
            max_deg: p.max_deg,
            nvars: p.nvars,
            terms: p.coeffs.iter().map(|(a, c)| SymTerm { index: a.clone(), beta: c.to_strings() }).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn monomial_sym(a: &str, d: u32) -> SymPoly {
        let mut p = SymPoly::zero(Some(d), None);
        p.add_term(part(a), &BetaInt::one());
        p
    }

    #[test]
    fn monomial_products() {
        // m₁·m₁ = m₂ + 2m₁₁
        let p = monomial_sym("1", 4).mul(&monomial_sym("1", 4));
        assert_eq!(p.coeff(&part("2")), BetaInt::one());
        assert_eq!(p.coeff(&part("1,1")), BetaInt::from(2));
        assert_eq!(p.len(), 2);
        // m₂₁·m₁ = m₃₁ + m₂₂ + 2m₂₁₁ (degree 4 part)
        let q = monomial_sym("2,1", 4).mul(&monomial_sym("1", 4));
        assert_eq!(q.coeff(&part("3,1")), BetaInt::one());
        assert_eq!(q.coeff(&part("2,2")), BetaInt::from(2));
        assert_eq!(q.coeff(&part("2,1,1")), BetaInt::from(2));
        assert_eq!(q.len(), 3);
    }

    #[test]
    fn truncation_and_variable_bounds() {
        let p = monomial_sym("1", 3).mul(&monomial_sym("1", 3)).truncate(None, Some(1));
        assert_eq!(p.len(), 1);
        let q = monomial_sym("1", 1).mul(&monomial_sym("1", 1));
        assert!(q.is_zero());
    }

    #[test]
    fn polynomial_round_trip() {
        let p = monomial_sym("2,1", 3).add(&monomial_sym("1", 3).scale(&BetaInt::beta_pow(1)));
        let poly = p.to_poly(3, None);
        assert_eq!(poly.len(), 6 + 3);
        let back = SymPoly::from_poly(&poly).unwrap();
        assert_eq!(back.coeff(&part("2,1")), BetaInt::one());
        assert_eq!(back.coeff(&part("1")), BetaInt::beta_pow(1));
        let v = p.to_json_value();
        assert_eq!(SymPoly::from_json_value(v).unwrap(), p);
    }

    #[test]
    fn permutations_are_distinct() {
        assert_eq!(distinct_permutations(&[2, 1, 1]).len(), 3);
        assert_eq!(distinct_permutations(&[1, 2, 3]).len(), 6);
        assert_eq!(distinct_permutations(&[]).len(), 1);
    }

    fn arb_sym() -> impl Strategy<Value = SymPoly> {
        proptest::collection::vec((0usize..12, -3i64..4, 0u32..2), 0..5).prop_map(|terms| {
            let all = Partition::all_up_to(4, None);
            let mut p = SymPoly::zero(Some(5), None);
            for (i, c, k) in terms {
                p.add_term(all[i % all.len()].clone(), &BetaInt::monomial(BigInt::from(c), k));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn product_matches_polynomial_product(f in arb_sym(), g in arb_sym()) {
            let n = 3;
            let lhs = f.mul(&g).to_poly(n, Some(5));
            let rhs = &f.to_poly(n, Some(5)) * &g.to_poly(n, Some(5));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn product_is_commutative(f in arb_sym(), g in arb_sym()) {
            prop_assert_eq!(f.mul(&g), g.mul(&f));
        }
    }
}
