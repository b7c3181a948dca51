//! Parsing of function names and shapes, and evaluation of the requested
//! function either as a polynomial in finitely many variables or in
//! sorted-monomial coordinates.

use std::fmt;
use std::str::FromStr;

use kshift_core::genfun::{
    cap_jp_jq, classical_pq, classical_pq_sym, doubleslash_sym, dual_skew, dual_skew_sym, gp_gq, gp_gq_doubleslash,
    gp_gq_sym, jp_jq, jp_jq_sym, schur, schur_sym, Flavor, SymPoly,
};
use kshift_core::polyring::BetaPoly;
use kshift_core::shapes::{Partition, SkewShape, StrictPartition};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Schur,
    Classical(Flavor),
    Big(Flavor),
    Dual(Flavor),
    DualJ(Flavor),
    BigJ(Flavor),
}

impl Func {
    pub const NAMES: [&'static str; 11] = ["P", "Q", "GP", "GQ", "gp", "gq", "jp", "jq", "JP", "JQ", "schur"];

    /// Series (as opposed to polynomials) need a degree bound.
    pub fn is_series(self) -> bool {
        matches!(self, Func::Big(_) | Func::BigJ(_))
    }
}

impl FromStr for Func {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use Flavor::{P, Q};
        Ok(match s.trim() {
            "schur" | "s" => Func::Schur,
            "P" => Func::Classical(P),
            "Q" => Func::Classical(Q),
            "GP" => Func::Big(P),
            "GQ" => Func::Big(Q),
            "gp" => Func::Dual(P),
            "gq" => Func::Dual(Q),
            "jp" => Func::DualJ(P),
            "jq" => Func::DualJ(Q),
            "JP" => Func::BigJ(P),
            "JQ" => Func::BigJ(Q),
            other => return Err(format!("unknown function {other:?}; expected one of {}", Func::NAMES.join(", "))),
        })
    }
}

impl fmt::Display for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lower = |fl: &Flavor| fl.to_string().to_lowercase();
        match self {
            Func::Schur => f.write_str("schur"),
            Func::Classical(fl) => write!(f, "{fl}"),
            Func::Big(fl) => write!(f, "G{fl}"),
            Func::Dual(fl) => write!(f, "g{}", lower(fl)),
            Func::DualJ(fl) => write!(f, "j{}", lower(fl)),
            Func::BigJ(fl) => write!(f, "J{fl}"),
        }
    }
}

/// A fully parsed request: function plus shape.
#[derive(Debug, Clone)]
pub struct Target {
    pub func: Func,
    pub outer: String,
    pub inner: String,
    pub doubleslash: bool,
    schur_index: Option<Partition>,
    shape: SkewShape,
}

impl Target {
    pub fn parse(func: Func, outer: &str, inner: Option<&str>, doubleslash: bool) -> Result<Self, CliError> {
        let inner_text = inner.unwrap_or("").trim();
        if doubleslash && !func.is_series() {
            return Err(CliError::Usage(format!("--doubleslash applies to GP, GQ, JP and JQ, not {func}")));
        }
        if func == Func::Schur {
            if !inner_text.is_empty() {
                return Err(CliError::Usage("skew Schur functions are not supported".into()));
            }
            let index: Partition = outer.parse()?;
            return Ok(Target {
                func,
                outer: index.to_string(),
                inner: String::new(),
                doubleslash,
                schur_index: Some(index),
                shape: SkewShape::straight(StrictPartition::empty()),
            });
        }
        let o: StrictPartition = outer.parse()?;
        let i: StrictPartition = inner_text.parse()?;
        let shape = SkewShape::checked(o, i)?;
        Ok(Target {
            func,
            outer: shape.outer.to_string(),
            inner: shape.inner.to_string(),
            doubleslash,
            schur_index: None,
            shape,
        })
    }

    pub fn size(&self) -> u32 {
        match &self.schur_index {
            Some(p) => p.size(),
            None => self.shape.outer.size(),
        }
    }

    /// Degree bound for series: the requested one, or `|outer| + 3`.
    pub fn series_bound(&self, max_deg: Option<u32>) -> u32 {
        max_deg.unwrap_or(self.size() + 3)
    }

    pub fn label(&self) -> String {
        let sep = if self.doubleslash { "//" } else { "/" };
        if self.inner.is_empty() {
            format!("{}({})", self.func, self.outer)
        } else {
            format!("{}({}{sep}{})", self.func, self.outer, self.inner)
        }
    }

    fn lam(&self) -> &StrictPartition {
        &self.shape.outer
    }

    fn mu(&self) -> &StrictPartition {
        &self.shape.inner
    }

    /// The function in `x₁..x_nvars`. Polynomials are truncated only when
    /// `max_deg` is given.
    pub fn poly(&self, nvars: usize, max_deg: Option<u32>) -> Result<BetaPoly, CliError> {
        let d = self.series_bound(max_deg);
        Ok(match self.func {
            Func::Schur => schur(self.schur_index.as_ref().expect("schur index"), nvars, max_deg),
            Func::Classical(fl) => classical_pq(fl, &self.shape, nvars, max_deg)?,
            Func::Big(fl) if self.doubleslash => gp_gq_doubleslash(fl, self.lam(), self.mu(), nvars, d)?,
            Func::Big(fl) => gp_gq(fl, &self.shape, nvars, Some(d))?,
            Func::Dual(fl) => dual_skew(fl, self.lam(), self.mu(), nvars)?.truncate(max_deg),
            Func::DualJ(fl) => jp_jq(fl, self.lam(), self.mu(), nvars)?.truncate(max_deg),
            Func::BigJ(fl) => cap_jp_jq(fl, self.lam(), self.mu(), self.doubleslash, nvars, d)?,
        })
    }

    /// The function in sorted-monomial coordinates over infinitely many
    /// variables. `JP`/`JQ` are computed as polynomials in as many
    /// variables as the degree bound, which loses nothing below it.
    pub fn sym(&self, max_deg: Option<u32>) -> Result<SymPoly, CliError> {
        let d = self.series_bound(max_deg);
        let cut = |p: &SymPoly| p.truncate(max_deg, None);
        Ok(match self.func {
            Func::Schur => cut(&*schur_sym(self.schur_index.as_ref().expect("schur index"), None)),
            Func::Classical(fl) => cut(&*classical_pq_sym(fl, &self.shape, None)?),
            Func::Big(fl) if self.doubleslash => doubleslash_sym(fl, self.lam(), self.mu(), d, None)?,
            Func::Big(fl) => (*gp_gq_sym(fl, &self.shape, d, None)?).clone(),
            Func::Dual(fl) => cut(&*dual_skew_sym(fl, self.lam(), self.mu())?),
            Func::DualJ(fl) => cut(&*jp_jq_sym(fl, self.lam(), self.mu())?),
            Func::BigJ(_) => SymPoly::from_poly(&self.poly(d.max(1) as usize, Some(d))?)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for name in Func::NAMES {
            let f: Func = name.parse().unwrap();
            assert_eq!(f.to_string(), name);
        }
        assert!("Gp".parse::<Func>().is_err());
    }

    #[test]
    fn shape_validation() {
        assert!(Target::parse(Func::Big(Flavor::P), "3,1", Some("2"), false).is_ok());
        assert!(Target::parse(Func::Big(Flavor::P), "3,1", Some("4"), false).is_err());
        assert!(Target::parse(Func::Big(Flavor::P), "1,3", None, false).is_err());
        assert!(Target::parse(Func::Schur, "2,2,1", None, false).is_ok());
        assert!(Target::parse(Func::Schur, "2,1", Some("1"), false).is_err());
        assert!(Target::parse(Func::Dual(Flavor::P), "2,1", None, true).is_err());
    }

    #[test]
    fn gq_one_in_one_variable() {
        let t = Target::parse(Func::Big(Flavor::Q), "1", None, false).unwrap();
        assert_eq!(t.poly(1, Some(2)).unwrap().to_string(), "2x₁+βx₁²");
        assert_eq!(t.label(), "GQ(1)");
    }
}
