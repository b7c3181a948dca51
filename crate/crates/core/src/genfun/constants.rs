//! Structure constants of GP/GQ products and of double-slash expansions.
//!
//! * `a^λ_{μν}`: `GP_μ GP_ν = Σ_λ a^λ_{μν} β^{|λ|−|μ|−|ν|} GP_λ`
//! * `b^λ_{μν}`: the same with GQ
//! * `â^λ_{μν}`: `GQ_{λ//μ} = Σ_ν â^λ_{μν} β^{|μ|+|ν|−|λ|} GQ_ν`
//! * `b̂^λ_{μν}`: the same with GP
//!
//! Tables are computed up to a degree cap and never claim completeness
//! beyond it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::shapes::{SkewShape, StrictPartition};

use super::expand::{bigint_json, expand_sym, Basis};
use super::families::{doubleslash_sym, gp_gq_sym};
use super::{Flavor, GenfunError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructureKind {
    A,
    B,
    AHat,
    BHat,
}

impl StructureKind {
    pub fn name(self) -> &'static str {
        match self {
            StructureKind::A => "a",
            StructureKind::B => "b",
            StructureKind::AHat => "â",
            StructureKind::BHat => "b̂",
        }
    }

    fn flavor(self) -> Flavor {
        match self {
            StructureKind::A | StructureKind::BHat => Flavor::P,
            StructureKind::B | StructureKind::AHat => Flavor::Q,
        }
    }

    pub fn is_hat(self) -> bool {
        matches!(self, StructureKind::AHat | StructureKind::BHat)
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StructureKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "a" => Ok(StructureKind::A),
            "b" => Ok(StructureKind::B),
            "â" | "ahat" | "a-hat" => Ok(StructureKind::AHat),
            "b̂" | "bhat" | "b-hat" => Ok(StructureKind::BHat),
            other => Err(format!("unknown structure constant kind {other:?}")),
        }
    }
}

/// Integer structure constants indexed by the free partition.
///
/// For `a`/`b` the table is `λ ↦ a^λ_{μν}` with `(first, second) = (μ, ν)`.
/// For `â`/`b̂` it is `ν ↦ â^λ_{μν}` with `(first, second) = (λ, μ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTable {
    pub kind: StructureKind,
    pub first: StrictPartition,
    pub second: StrictPartition,
    pub entries: BTreeMap<StrictPartition, BigInt>,
    pub degree_cap: u32,
}

impl StructureTable {
    pub fn compute(
        kind: StructureKind,
        first: &StrictPartition,
        second: &StrictPartition,
        degree_cap: u32,
    ) -> Result<Self, GenfunError> {
        let flavor = kind.flavor();
        let basis = if flavor.is_q() { Basis::GQ } else { Basis::GP };
        let f = if kind.is_hat() {
            doubleslash_sym(flavor, first, second, degree_cap, None)?
        } else {
            let g1 = gp_gq_sym(flavor, &SkewShape::straight(first.clone()), degree_cap, None)?;
            let g2 = gp_gq_sym(flavor, &SkewShape::straight(second.clone()), degree_cap, None)?;
            g1.mul(&g2)
        };
        let e = expand_sym(&f, basis, Some(degree_cap))?;
        if let Some((k, _)) = e.residual.terms().next() {
            return Err(GenfunError::Inconsistent(k.clone()));
        }
        let mut entries = BTreeMap::new();
        for (k, c) in e.coeffs {
            let idx = k.to_strict().expect("strict index");
            let (s1, s2, s3) = (first.size() as i64, second.size() as i64, idx.size() as i64);
            let power = if kind.is_hat() { s2 + s3 - s1 } else { s3 - s1 - s2 };
            let bad = || GenfunError::BadConstant(format!("{kind} at {idx}: coefficient {c}"));
            if power < 0 {
                return Err(bad());
            }
            match c.single_term() {
                Some((p, v)) if i64::from(p) == power => {
                    entries.insert(idx.clone(), v.clone());
                }
                _ => return Err(bad()),
            }
        }
        Ok(StructureTable { kind, first: first.clone(), second: second.clone(), entries, degree_cap })
    }

    pub fn get(&self, index: &StrictPartition) -> BigInt {
        self.entries.get(index).cloned().unwrap_or_default()
    }

    pub fn all_nonnegative(&self) -> bool {
        self.entries.values().all(|v| v.sign() != num_bigint::Sign::Minus)
    }

    pub fn to_json_value(&self) -> Value {
        let entries: Vec<Value> =
            self.entries.iter().map(|(k, v)| json!({ "index": k.to_string(), "value": bigint_json(v) })).collect();
        json!({
            "kind": self.kind.name(),
            "first": self.first.to_string(),
            "second": self.second.to_string(),
            "degree_cap": self.degree_cap,
            "truncated": true,
            "entries": entries,
        })
    }
}
