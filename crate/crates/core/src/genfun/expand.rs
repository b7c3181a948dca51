//! Triangular basis expansion ("peeling").
//!
//! Each basis element `b_λ` has a leading sorted monomial `x^λ` with a
//! known leading coefficient. The peel repeatedly picks the extremal
//! monomial of the residual, divides its coefficient by the leading
//! coefficient, and subtracts that multiple of `b_λ`. Bases whose lowest
//! degree component is the leading part (Schur, P, Q, GP, GQ) are peeled
//! in ascending degree. The dual families gp, gq, jp, jq carry their
//! leading part `P_λ`/`Q_λ` in the top degree and are peeled descending.
//! Within a degree the lexicographically largest monomial goes first,
//! which is a linear extension of dominance.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::polyring::{BetaInt, BetaPoly};
use crate::shapes::{Partition, SkewShape, StrictPartition};

use super::dual::dual_sym;
use super::families::{classical_pq_sym, gp_gq_sym, schur_sym};
use super::omega::jp_jq_sym;
use super::sym::SymPoly;
use super::{Flavor, GenfunError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Schur,
    P,
    Q,
    GP,
    GQ,
    Gp,
    Gq,
    Jp,
    Jq,
}

impl Basis {
    pub const ALL: [Basis; 9] =
        [Basis::Schur, Basis::P, Basis::Q, Basis::GP, Basis::GQ, Basis::Gp, Basis::Gq, Basis::Jp, Basis::Jq];

    pub fn name(self) -> &'static str {
        match self {
            Basis::Schur => "schur",
            Basis::P => "P",
            Basis::Q => "Q",
            Basis::GP => "GP",
            Basis::GQ => "GQ",
            Basis::Gp => "gp",
            Basis::Gq => "gq",
            Basis::Jp => "jp",
            Basis::Jq => "jq",
        }
    }

    /// Whether the basis is indexed by strict partitions.
    pub fn is_strict(self) -> bool {
        self != Basis::Schur
    }

    /// Whether the leading part sits in the top degree.
    pub fn is_descending(self) -> bool {
        matches!(self, Basis::Gp | Basis::Gq | Basis::Jp | Basis::Jq)
    }

    pub fn flavor(self) -> Option<Flavor> {
        match self {
            Basis::Schur => None,
            Basis::P | Basis::GP | Basis::Gp | Basis::Jp => Some(Flavor::P),
            Basis::Q | Basis::GQ | Basis::Gq | Basis::Jq => Some(Flavor::Q),
        }
    }

    /// Coefficient of `x^λ` in the basis element indexed by `λ`.
    pub fn lead(self, index: &Partition) -> BigInt {
        self.flavor().map_or_else(|| BigInt::from(1), |f| f.lead(index.len()))
    }

    /// The basis element in sorted-monomial coordinates. Ascending bases
    /// with infinite support are truncated at `max_deg`.
    pub fn element(self, index: &Partition, max_deg: u32, nvars: Option<usize>) -> Result<Arc<SymPoly>, GenfunError> {
        if self == Basis::Schur {
            return Ok(schur_sym(index, nvars));
        }
        let flavor = self.flavor().expect("strict basis");
        let lambda = index.to_strict().ok_or_else(|| GenfunError::Inconsistent(index.clone()))?;
        let restrict = |p: Arc<SymPoly>| match nvars {
            None => p,
            Some(_) => Arc::new(p.truncate(None, nvars)),
        };
        match self {
            Basis::P | Basis::Q => classical_pq_sym(flavor, &SkewShape::straight(lambda), nvars),
            Basis::GP | Basis::GQ => gp_gq_sym(flavor, &SkewShape::straight(lambda), max_deg, nvars),
            Basis::Gp | Basis::Gq => Ok(restrict(dual_sym(flavor, &lambda)?)),
            _ => Ok(restrict(jp_jq_sym(flavor, &lambda, &StrictPartition::empty())?)),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Basis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        Basis::ALL
            .into_iter()
            .find(|b| b.name() == t || (t.eq_ignore_ascii_case("s") && *b == Basis::Schur))
            .ok_or_else(|| format!("unknown basis {t:?}"))
    }
}

/// Coefficient rings the peel can run over.
pub trait PeelCoeff: Clone {
    fn is_zero(&self) -> bool;
    fn div_exact(&self, d: &BigInt) -> Option<Self>;
    /// `self −= c·s`.
    fn sub_scaled(&mut self, c: &Self, s: &BetaInt);
    fn zero_like(&self) -> Self;
}

impl PeelCoeff for BetaInt {
    fn is_zero(&self) -> bool {
        BetaInt::is_zero(self)
    }

    fn div_exact(&self, d: &BigInt) -> Option<Self> {
        BetaInt::div_exact(self, d)
    }

    fn sub_scaled(&mut self, c: &Self, s: &BetaInt) {
        self.add_scaled(c, &-s);
    }

    fn zero_like(&self) -> Self {
        BetaInt::zero()
    }
}

impl PeelCoeff for SymPoly {
    fn is_zero(&self) -> bool {
        SymPoly::is_zero(self)
    }

    fn div_exact(&self, d: &BigInt) -> Option<Self> {
        let mut out = self.zero_like();
        for (a, c) in self.terms() {
            out.add_term(a.clone(), &c.div_exact(d)?);
        }
        Some(out)
    }

    fn sub_scaled(&mut self, c: &Self, s: &BetaInt) {
        self.add_scaled(c, &-s);
    }

    fn zero_like(&self) -> Self {
        SymPoly::zero(self.max_deg(), self.nvars())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum PeelOrder {
    /// Lowest degree first, stopping above the bound.
    Ascending(u32),
    Descending,
}

pub(crate) struct Peeled<C> {
    pub coeffs: BTreeMap<Partition, C>,
    pub residual: BTreeMap<Partition, C>,
}

/// Runs the peel over a table `residual[α]` of coefficients of `x^α`.
pub(crate) fn peel<C, L, B>(
    mut residual: BTreeMap<Partition, C>,
    order: PeelOrder,
    strict_only: bool,
    lead: L,
    basis: B,
) -> Result<Peeled<C>, GenfunError>
where
    C: PeelCoeff,
    L: Fn(&Partition) -> BigInt,
    B: Fn(&Partition) -> Result<Arc<SymPoly>, GenfunError>,
{
    residual.retain(|_, c| !c.is_zero());
    let mut coeffs = BTreeMap::new();
    loop {
        let key = match order {
            PeelOrder::Ascending(d) => match residual.keys().next() {
                Some(k) if k.size() <= d => k.clone(),
                _ => break,
            },
            PeelOrder::Descending => {
                let Some(last) = residual.keys().next_back() else { break };
                let top = last.size();
                residual.keys().rev().take_while(|k| k.size() == top).last().expect("nonempty").clone()
            }
        };
        if strict_only && !key.is_strict() {
            break;
        }
        let l = lead(&key);
        let c = residual[&key].div_exact(&l).ok_or_else(|| GenfunError::NotDivisible { index: key.clone(), lead: l })?;
        let element = basis(&key)?;
        for (a, v) in element.terms() {
            if let PeelOrder::Ascending(d) = order {
                if a.size() > d {
                    continue;
                }
            }
            let slot = residual.entry(a.clone()).or_insert_with(|| c.zero_like());
            slot.sub_scaled(&c, v);
            if slot.is_zero() {
                residual.remove(a);
            }
        }
        if residual.contains_key(&key) {
            return Err(GenfunError::Inconsistent(key));
        }
        coeffs.insert(key, c);
    }
    Ok(Peeled { coeffs, residual })
}

/// Coefficients of a symmetric function in one of the supported bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisExpansion {
    pub basis: Basis,
    pub coeffs: BTreeMap<Partition, BetaInt>,
    pub residual: SymPoly,
    /// Degree bound the expansion was computed at.
    pub max_deg: u32,
}

impl BasisExpansion {
    pub fn residual_zero(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn coeff(&self, index: &Partition) -> BetaInt {
        self.coeffs.get(index).cloned().unwrap_or_default()
    }

    pub fn to_json_value(&self) -> Value {
        let coeffs: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(k, c)| json!({ "index": k.to_string(), "beta": beta_json(c) }))
            .collect();
        json!({ "basis": self.basis.name(), "coeffs": coeffs, "residual_zero": self.residual_zero() })
    }
}

/// `ℤ[β]` coefficient list as JSON: integers that fit in 64 bits are
/// numbers, larger ones decimal strings.
pub fn beta_json(c: &BetaInt) -> Value {
    Value::Array(c.coeffs().iter().map(bigint_json).collect())
}

pub fn bigint_json(n: &BigInt) -> Value {
    n.to_i64().map_or_else(|| Value::String(n.to_string()), Value::from)
}

impl fmt::Display for BasisExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            f.write_str("0")?;
        }
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})·{}[{k}]", self.basis)?;
        }
        if !self.residual_zero() {
            write!(f, " + residual {}", self.residual)?;
        }
        Ok(())
    }
}

/// Expands a symmetric function given in sorted-monomial coordinates.
///
/// Ascending bases are expanded through degree `max_deg` (default: the
/// input's own truncation, else its top degree). A variable bound on the
/// input restricts the candidate indices to at most that many parts.
pub fn expand_sym(p: &SymPoly, basis: Basis, max_deg: Option<u32>) -> Result<BasisExpansion, GenfunError> {
    let cap = max_deg.or(p.max_deg()).or(p.max_degree()).unwrap_or(0);
    let order = if basis.is_descending() { PeelOrder::Descending } else { PeelOrder::Ascending(cap) };
    let nvars = p.nvars();
    let table: BTreeMap<Partition, BetaInt> = p.terms().map(|(a, c)| (a.clone(), c.clone())).collect();
    let peeled = peel(table, order, basis.is_strict(), |k| basis.lead(k), |k| basis.element(k, cap, nvars))?;
    let mut residual = SymPoly::zero(p.max_deg(), nvars);
    for (a, c) in peeled.residual {
        residual.add_term(a, &c);
    }
    Ok(BasisExpansion { basis, coeffs: peeled.coeffs, residual, max_deg: cap })
}

/// Expands a symmetric polynomial in `x₁..xₙ`.
///
/// The dual bases need `n` at least the top degree of `p`: below that,
/// their restrictions to `n` variables are no longer independent.
pub fn expand_in_basis(p: &BetaPoly, basis: Basis, max_deg: Option<u32>) -> Result<BasisExpansion, GenfunError> {
    let s = SymPoly::from_poly(p)?;
    if !basis.is_descending() {
        return expand_sym(&s, basis, max_deg);
    }
    let need = s.max_degree().unwrap_or(0) as usize;
    if p.nvars() < need {
        return Err(GenfunError::TooFewVariables { need, got: p.nvars() });
    }
    let mut free = SymPoly::zero(s.max_deg(), None);
    free.add_scaled(&s, &BetaInt::one());
    expand_sym(&free, basis, max_deg)
}

/// `Σ c_λ b_λ + residual`, truncated at `max_deg` and to `nvars` variables.
pub fn recombine(e: &BasisExpansion, max_deg: Option<u32>, nvars: Option<usize>) -> Result<SymPoly, GenfunError> {
    let cap = max_deg.unwrap_or(e.max_deg);
    let mut out = e.residual.truncate(Some(cap), nvars);
    for (k, c) in &e.coeffs {
        out.add_scaled(&*e.basis.element(k, cap, nvars)?, c);
    }
    Ok(out)
}
