//! The involution `ω: s_λ ↦ s_{λᵀ}` and the families `jp = ω(gp)`,
//! `jq = ω(gq)`.

use std::sync::Arc;

use crate::polyring::{BetaInt, BetaPoly};
use crate::shapes::StrictPartition;

use super::cache::global;
use super::dual::dual_skew_sym;
use super::expand::{expand_sym, Basis};
use super::families::schur_sym;
use super::sym::SymPoly;
use super::{Flavor, GenfunError};

/// Applies `ω` to a symmetric function in infinitely many variables.
pub fn omega_sym(p: &SymPoly) -> Result<SymPoly, GenfunError> {
    if let Some(n) = p.nvars() {
        let need = p.max_deg().or(p.max_degree()).unwrap_or(0) as usize;
        if n < need {
            return Err(GenfunError::TooFewVariables { need, got: n });
        }
    }
    let free = {
        let mut f = SymPoly::zero(p.max_deg(), None);
        f.add_scaled(p, &BetaInt::one());
        f
    };
    let e = expand_sym(&free, Basis::Schur, None)?;
    if let Some((k, _)) = e.residual.terms().next() {
        return Err(GenfunError::Inconsistent(k.clone()));
    }
    let mut out = SymPoly::zero(p.max_deg(), None);
    for (k, c) in &e.coeffs {
        out.add_scaled(&schur_sym(&k.transpose(), None), c);
    }
    Ok(out)
}

/// `ω(p)` for a symmetric polynomial in `n` variables, where `n` must be
/// at least the degree bound (or the top degree if unbounded).
pub fn omega(p: &BetaPoly) -> Result<BetaPoly, GenfunError> {
    let s = SymPoly::from_poly(p)?;
    let need = p.max_deg().or(s.max_degree()).unwrap_or(0) as usize;
    if p.nvars() < need {
        return Err(GenfunError::TooFewVariables { need, got: p.nvars() });
    }
    let mut free = SymPoly::zero(p.max_deg(), None);
    free.add_scaled(&s, &BetaInt::one());
    Ok(omega_sym(&free)?.to_poly(p.nvars(), p.max_deg()))
}

/// `jp_{λ/μ}` or `jq_{λ/μ}` in sorted-monomial coordinates.
pub fn jp_jq_sym(flavor: Flavor, lambda: &StrictPartition, mu: &StrictPartition) -> Result<Arc<SymPoly>, GenfunError> {
    let key = format!("j{}|{lambda}/{mu}", flavor.to_string().to_lowercase());
    global().get_or_compute(&key, || omega_sym(&*dual_skew_sym(flavor, lambda, mu)?))
}

/// `jp_{λ/μ}(x₁..xₙ)` or `jq_{λ/μ}(x₁..xₙ)`.
pub fn jp_jq(flavor: Flavor, lambda: &StrictPartition, mu: &StrictPartition, nvars: usize) -> Result<BetaPoly, GenfunError> {
    Ok(jp_jq_sym(flavor, lambda, mu)?.to_poly(nvars, None))
}
