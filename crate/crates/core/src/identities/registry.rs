use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    check_cauchy_family, check_conjectures, check_coproducts, check_dual_expansions, check_flip, check_gq_to_gp,
    check_onerow_series, check_overlap_matrix, check_skew_expansions, check_symmetrization, IdentityError,
    VerificationReport,
};

/// The registered checks, addressable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    GqToGp,
    SkewExpansions,
    OverlapMatrix,
    Flip,
    Coproducts,
    Cauchy,
    DualExpansions,
    Symmetrization,
    OnerowSeries,
    Conjectures,
}

impl CheckId {
    pub const ALL: [CheckId; 10] = [
        CheckId::GqToGp,
        CheckId::SkewExpansions,
        CheckId::OverlapMatrix,
        CheckId::Flip,
        CheckId::Coproducts,
        CheckId::Cauchy,
        CheckId::DualExpansions,
        CheckId::Symmetrization,
        CheckId::OnerowSeries,
        CheckId::Conjectures,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::GqToGp => "gq-to-gp",
            CheckId::SkewExpansions => "skew-expansions",
            CheckId::OverlapMatrix => "overlap-matrix",
            CheckId::Flip => "flip",
            CheckId::Coproducts => "coproducts",
            CheckId::Cauchy => "cauchy",
            CheckId::DualExpansions => "dual-expansions",
            CheckId::Symmetrization => "symmetrization",
            CheckId::OnerowSeries => "onerow-series",
            CheckId::Conjectures => "conjectures",
        }
    }

    /// Whether the check reports MATCH/MISMATCH rather than PASS/FAIL.
    pub fn is_conjecture(self) -> bool {
        self == CheckId::Conjectures
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = IdentityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        CheckId::ALL.into_iter().find(|c| c.name() == t).ok_or_else(|| IdentityError::UnknownCheck(t.to_string()))
    }
}

/// Sweep parameters; anything left unset takes the check's default.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CheckParams {
    pub max_size: Option<u32>,
    pub nvars: Option<usize>,
    pub max_deg: Option<u32>,
    pub nx: Option<usize>,
    pub ny: Option<usize>,
    pub max_part: Option<u32>,
    pub max_power: Option<u32>,
    pub trials: Option<u32>,
    pub seed: Option<u64>,
}

/// Runs a registered check with defaults filled in.
pub fn run_check(id: CheckId, p: &CheckParams) -> Result<VerificationReport, IdentityError> {
    let size = |d: u32| p.max_size.unwrap_or(d);
    let nvars = |d: usize| p.nvars.unwrap_or(d);
    let deg = |d: u32| p.max_deg.unwrap_or(d);
    let (nx, ny) = (p.nx.unwrap_or(2), p.ny.unwrap_or(2));
    match id {
        CheckId::GqToGp => check_gq_to_gp(size(6), nvars(3), deg(9)),
        CheckId::SkewExpansions => check_skew_expansions(size(5), nvars(3), deg(8)),
        CheckId::OverlapMatrix => check_overlap_matrix(p.max_part.unwrap_or(7)),
        CheckId::Flip => check_flip(size(6), nvars(3), deg(8)),
        CheckId::Coproducts => check_coproducts(size(4), nx, ny, deg(6)),
        CheckId::Cauchy => check_cauchy_family(size(2), nx, ny, deg(4)),
        CheckId::DualExpansions => check_dual_expansions(size(6)),
        CheckId::Symmetrization => check_symmetrization(p.trials.unwrap_or(20), p.seed.unwrap_or(0)),
        CheckId::OnerowSeries => check_onerow_series(p.max_power.unwrap_or(4), nvars(2), deg(6)),
        CheckId::Conjectures => check_conjectures(size(6), nvars(6), deg(6)),
    }
}
