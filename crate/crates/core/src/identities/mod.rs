//! Machine verification of the expansion, duality, Cauchy and coproduct
//! identities, plus empirical checks of the tableau conjectures.
//!
//! Every check returns a [`VerificationReport`]. Polynomial comparisons
//! are exact; series are compared after truncation to a fixed number of
//! variables and a degree bound, which is recorded in the report
//! parameters. When an identity carries coefficients with powers of two
//! in the denominator, both sides are multiplied by the smallest power of
//! two that clears them before comparing.

mod cauchy;
mod conjectures;
mod expansions;
mod pointwise;
mod registry;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::genfun::{GenfunError, SymPoly};
use crate::polyring::{BetaInt, BetaPoly};
use crate::shapes::StrictPartition;

pub use cauchy::{check_cauchy_family, check_coproducts};
pub use conjectures::check_conjectures;
pub use expansions::{check_dual_expansions, check_flip, check_gq_to_gp, check_overlap_matrix, check_skew_expansions};
pub use pointwise::{check_onerow_series, check_symmetrization};
pub use registry::{run_check, CheckId, CheckParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error(transparent)]
    Genfun(#[from] GenfunError),
}

/// Outcome of a check. Identity checks use PASS/FAIL, conjecture checks
/// MATCH/MISMATCH; ERROR means some instance could not be computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Error,
    Match,
    Mismatch,
}

impl Status {
    pub fn is_success(self) -> bool {
        matches!(self, Status::Pass | Status::Match)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
            Status::Match => "MATCH",
            Status::Mismatch => "MISMATCH",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The smallest failing instance of a check, with both sides serialized.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub instance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Per-instance outcome recorded by conjecture checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Finding {
    pub instance: String,
    pub outcome: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub cases: u64,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub findings: Vec<Finding>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, Value>,
}

impl VerificationReport {
    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({} cases)", self.id, self.status, self.cases)?;
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        if !params.is_empty() {
            write!(f, " [{}]", params.join(", "))?;
        }
        if let Some(w) = &self.witness {
            write!(f, "\n  witness: {}", w.instance)?;
            if let Some(e) = &w.error {
                write!(f, "\n  error: {e}")?;
            }
            if let Some(l) = &w.lhs {
                write!(f, "\n  lhs: {l}")?;
            }
            if let Some(r) = &w.rhs {
                write!(f, "\n  rhs: {r}")?;
            }
        }
        let bad: Vec<&Finding> = self.findings.iter().filter(|x| !x.outcome.is_success()).collect();
        if !bad.is_empty() {
            write!(f, "\n  mismatches:")?;
            for x in bad {
                write!(f, " {}", x.instance)?;
            }
        }
        Ok(())
    }
}

/// Sort key for instances: a sub-identity label followed by the shapes.
pub(crate) type CaseKey = (&'static str, Vec<StrictPartition>);

/// Accumulates case results; merging is associative and keeps the
/// smallest failure, so the final report does not depend on scheduling.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    cases: u64,
    failure: Option<(CaseKey, Witness)>,
    error: Option<(CaseKey, Witness)>,
    findings: Vec<(CaseKey, Finding)>,
}

fn keep_min(slot: &mut Option<(CaseKey, Witness)>, key: CaseKey, w: Witness) {
    if slot.as_ref().is_none_or(|(k, _)| key < *k) {
        *slot = Some((key, w));
    }
}

fn instance_name(key: &CaseKey, extra: &str) -> String {
    let shapes: Vec<String> = key.1.iter().map(|s| format!("({s})")).collect();
    let mut s = format!("{} {}", key.0, shapes.join(" "));
    if !extra.is_empty() {
        s.push(' ');
        s.push_str(extra);
    }
    s.trim().to_string()
}

impl Tally {
    pub(crate) fn pass(&mut self) {
        self.cases += 1;
    }

    pub(crate) fn fail(&mut self, key: CaseKey, extra: &str, lhs: Value, rhs: Value) {
        self.cases += 1;
        let w = Witness { instance: instance_name(&key, extra), lhs: Some(lhs), rhs: Some(rhs), error: None };
        keep_min(&mut self.failure, key, w);
    }

    pub(crate) fn error(&mut self, key: CaseKey, err: &dyn fmt::Display) {
        self.cases += 1;
        let w = Witness { instance: instance_name(&key, ""), lhs: None, rhs: None, error: Some(err.to_string()) };
        keep_min(&mut self.error, key, w);
    }

    /// Records one instance for a conjecture-style report.
    pub(crate) fn finding(&mut self, key: CaseKey, ok: bool) {
        let outcome = if ok { Status::Match } else { Status::Mismatch };
        self.findings.push((key.clone(), Finding { instance: instance_name(&key, ""), outcome }));
    }

    pub(crate) fn check(&mut self, key: CaseKey, extra: &str, ok: bool, sides: impl FnOnce() -> (Value, Value)) {
        if ok {
            self.pass();
        } else {
            let (l, r) = sides();
            self.fail(key, extra, l, r);
        }
    }

    pub(crate) fn check_sym(&mut self, key: CaseKey, extra: &str, lhs: &SymPoly, rhs: &SymPoly) {
        self.check(key, extra, lhs == rhs, || (lhs.to_json_value(), rhs.to_json_value()));
    }

    pub(crate) fn check_poly(&mut self, key: CaseKey, extra: &str, lhs: &BetaPoly, rhs: &BetaPoly) {
        self.check(key, extra, poly_eq(lhs, rhs), || (lhs.to_json_value(), rhs.to_json_value()));
    }

    /// Runs a fallible case, turning an error into an ERROR entry.
    pub(crate) fn run<F>(&mut self, key: CaseKey, f: F)
    where
        F: FnOnce(&mut Tally) -> Result<(), GenfunError>,
    {
        if let Err(e) = f(self) {
            self.error(key, &e);
        }
    }

    pub(crate) fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        if let Some((k, w)) = other.failure {
            keep_min(&mut self.failure, k, w);
        }
        if let Some((k, w)) = other.error {
            keep_min(&mut self.error, k, w);
        }
        self.findings.extend(other.findings);
        self
    }

    pub(crate) fn finish(self, id: &str, params: BTreeMap<String, Value>, conjecture: bool) -> VerificationReport {
        let (status, witness) = match (self.error, self.failure) {
            (Some((_, w)), _) => (Status::Error, Some(w)),
            (None, Some((_, w))) => (if conjecture { Status::Mismatch } else { Status::Fail }, Some(w)),
            (None, None) => (if conjecture { Status::Match } else { Status::Pass }, None),
        };
        let mut findings = self.findings;
        findings.sort_by(|a, b| a.0.cmp(&b.0));
        VerificationReport {
            id: id.to_string(),
            params,
            status,
            cases: self.cases,
            witness,
            findings: findings.into_iter().map(|(_, f)| f).collect(),
            notes: BTreeMap::new(),
        }
    }
}

pub(crate) fn poly_eq(a: &BetaPoly, b: &BetaPoly) -> bool {
    a.nvars() == b.nvars() && a.sorted_terms() == b.sorted_terms()
}

pub(crate) fn params<const N: usize>(pairs: [(&str, Value); N]) -> BTreeMap<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// A term `sign · 2^{two} · β^{beta}` of an identity whose coefficients
/// may carry powers of two in the denominator.
#[derive(Debug, Clone, Copy)]
pub(crate) struct DyadicTerm {
    pub negative: bool,
    pub two: i64,
    pub beta: u32,
}

impl DyadicTerm {
    /// `2^{lead} (−1)^{cols} (−β/2)^{k}`.
    pub(crate) fn signed(lead: i64, cols: u32, k: u32) -> Self {
        DyadicTerm { negative: (cols + k) % 2 == 1, two: lead - k as i64, beta: k }
    }

    /// The coefficient multiplied by `2^{shift}`; `shift + two` must be
    /// nonnegative.
    pub(crate) fn scaled(&self, shift: i64) -> BetaInt {
        let e = self.two + shift;
        assert!(e >= 0, "insufficient scaling");
        let mut c = BigInt::from(1) << (e as usize);
        if self.negative {
            c = -c;
        }
        BetaInt::monomial(c, self.beta)
    }
}

/// The smallest shift making every term integral.
pub(crate) fn clearing_shift(terms: &[DyadicTerm]) -> i64 {
    terms.iter().map(|t| -t.two).max().unwrap_or(0).max(0)
}

pub(crate) fn shift_note(shift: i64) -> String {
    if shift == 0 {
        String::new()
    } else {
        format!("(both sides scaled by 2^{shift})")
    }
}

pub(crate) fn pow2(e: i64) -> BetaInt {
    BetaInt::from_int(BigInt::from(1) << (e as usize))
}

/// Strict partitions `κ ⊆ ν` with `ℓ(κ) = ℓ(ν)`.
pub(crate) fn same_length_subpartitions(nu: &StrictPartition) -> Vec<StrictPartition> {
    crate::shapes::strict_subpartitions(nu).into_iter().filter(|k| k.len() == nu.len()).collect()
}

/// Largest length of a strict partition of size at most `n`.
pub(crate) fn max_strict_length(n: u32) -> usize {
    let mut l = 0u32;
    while (l + 1) * (l + 2) / 2 <= n {
        l += 1;
    }
    l as usize
}
