//! Generating functions, basis changes and dual families.
//!
//! Most computations run in sorted-monomial coordinates ([`SymPoly`]),
//! which describe a symmetric function in infinitely many variables up to
//! a degree bound. Restricting to finitely many variables is a ring map, so
//! everything computed here specializes correctly to `x₁..xₙ`.

pub mod cache;
pub mod constants;
pub mod dual;
pub mod expand;
pub mod families;
pub mod omega;
pub mod onerow;
pub mod sym;
pub mod symmetrize;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::polyring::PolyError;
use crate::shapes::{Partition, ShapeError};
use crate::tableaux::TableauError;

pub use cache::{global, Cache};
pub use constants::{StructureKind, StructureTable};
pub use dual::{dual_gp_gq, dual_skew, dual_skew_sym, dual_skew_via_constants, dual_sym};
pub use expand::{expand_in_basis, expand_sym, recombine, Basis, BasisExpansion};
pub use families::{
    cap_jp_jq, classical_pq, classical_pq_sym, doubleslash_sym, gp_gq, gp_gq_doubleslash, gp_gq_sym, kostka, schur,
    schur_sym,
};
pub use omega::{jp_jq, jp_jq_sym, omega, omega_sym};
pub use onerow::gq_onerow_series;
pub use sym::SymPoly;
pub use symmetrize::symmetrization_eval;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenfunError {
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("polynomial is not symmetric")]
    NotSymmetric,
    #[error("coefficient at {index} is not divisible by {lead}")]
    NotDivisible { index: Partition, lead: BigInt },
    #[error("inconsistent basis peel at {0}")]
    Inconsistent(Partition),
    #[error("need at least {need} variables, got {got}")]
    TooFewVariables { need: usize, got: usize },
    #[error("a finite degree bound is required")]
    Unbounded,
    #[error("evaluation point is singular")]
    SingularPoint,
    #[error("at most {max} variables supported, got {got}")]
    TooManyVariables { max: usize, got: usize },
    #[error("bad constant: {0}")]
    BadConstant(String),
    #[error("cache error: {0}")]
    Cache(String),
}

/// The P or Q member of a paired family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    P,
    Q,
}

impl Flavor {
    pub fn is_q(self) -> bool {
        self == Flavor::Q
    }

    pub fn other(self) -> Flavor {
        match self {
            Flavor::P => Flavor::Q,
            Flavor::Q => Flavor::P,
        }
    }

    /// `2^ℓ` for Q, `1` for P.
    pub fn lead(self, len: usize) -> BigInt {
        match self {
            Flavor::P => BigInt::from(1),
            Flavor::Q => BigInt::from(1) << len,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::P => "P",
            Flavor::Q => "Q",
        })
    }
}

impl FromStr for Flavor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "P" => Ok(Flavor::P),
            "Q" => Ok(Flavor::Q),
            other => Err(format!("unknown flavor {other:?}")),
        }
    }
}

pub(crate) fn fmt_opt<T: fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "*".to_string(), |x| x.to_string())
}

