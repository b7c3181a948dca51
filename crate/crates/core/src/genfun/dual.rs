//! Dual families `gp`, `gq` and their skew versions.
//!
//! `gp_λ` is read off the Cauchy kernel `Δ(x,y) = Σ_λ GQ_λ(x) gp_λ(y)`
//! (and `gq_λ` from `Σ GP_λ(x) gq_λ(y)`): peel the x-side of the kernel in
//! the GQ (resp. GP) basis, and the y-coefficient attached to `λ` is the
//! dual function. Truncating the kernel at x-degree `S` is harmless for
//! `|λ| ≤ S`, because `GQ_λ` has no terms below degree `|λ|` and the peel
//! of degree `|λ|` only reads kernel coefficients of x-degree `|λ|`.
//!
//! Skew duals come from the coproduct `gp_λ(x,y) = Σ_μ gp_μ(x) gp_{λ/μ}(y)`,
//! with a second route through the structure constants of GQ products.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::polyring::{kernel_factor_coeff, BetaInt, BetaPoly};
use crate::shapes::{enumerate_strict_partitions, Partition, PartitionConstraints, SkewShape, StrictPartition};

use super::cache::global;
use super::expand::{expand_sym, peel, Basis, PeelOrder};
use super::families::gp_gq_sym;
use super::sym::SymPoly;
use super::{Flavor, GenfunError};

fn dual_key(flavor: Flavor, lambda: &StrictPartition) -> String {
    format!("g{}|{lambda}", flavor.to_string().to_lowercase())
}

fn skew_key(flavor: Flavor, lambda: &StrictPartition, mu: &StrictPartition) -> String {
    format!("g{}|{lambda}/{mu}", flavor.to_string().to_lowercase())
}

/// `ψ_b = [y^b] Π_i (1−x̄_i y)/(1−x_i y)`, a symmetric function in `x`.
fn psi(b: u32, s: u32) -> SymPoly {
    let mut out = SymPoly::zero(Some(s), None);
    if b == 0 {
        return SymPoly::one(Some(s), None);
    }
    for alpha in Partition::all_up_to(s, Some(b as usize)) {
        if alpha.size() < b {
            continue;
        }
        let mut total = BetaInt::zero();
        split_sum(alpha.parts(), b, &BetaInt::one(), &mut total);
        out.add_term(alpha, &total);
    }
    out
}

fn split_sum(parts: &[u32], rem: u32, acc: &BetaInt, total: &mut BetaInt) {
    let Some((&a, rest)) = parts.split_first() else {
        if rem == 0 {
            *total += acc;
        }
        return;
    };
    for bi in 1..=a.min(rem) {
        let f = kernel_factor_coeff(a, bi);
        if !f.is_zero() {
            split_sum(rest, rem - bi, &(acc * &f), total);
        }
    }
}

/// Sorted-monomial table of the kernel: `table[α][γ]` is the coefficient
/// of `x^α y^γ` in `Δ(x,y)`, for `|α| ≤ s`.
pub(crate) fn kernel_table(s: u32) -> BTreeMap<Partition, SymPoly> {
    let psis: Vec<SymPoly> = (0..=s).map(|b| psi(b, s)).collect();
    let gammas = Partition::all_up_to(s, None);
    let rows: Vec<(Partition, SymPoly)> = gammas
        .into_par_iter()
        .map(|g| {
            let mut prod = SymPoly::one(Some(s), None);
            for &part in g.parts() {
                prod = prod.mul(&psis[part as usize]);
            }
            (g, prod)
        })
        .collect();
    let mut table: BTreeMap<Partition, SymPoly> = BTreeMap::new();
    for (g, prod) in rows {
        for (a, c) in prod.terms() {
            table.entry(a.clone()).or_insert_with(|| SymPoly::zero(Some(s), None)).add_term(g.clone(), c);
        }
    }
    table
}

/// Every `gp_λ` (or `gq_λ`) with `|λ| ≤ s`.
pub(crate) fn dual_table(flavor: Flavor, s: u32) -> Result<BTreeMap<Partition, SymPoly>, GenfunError> {
    let other = flavor.other();
    let peeled = peel(
        kernel_table(s),
        PeelOrder::Ascending(s),
        true,
        |k| other.lead(k.len()),
        |k| {
            let l = k.to_strict().ok_or_else(|| GenfunError::Inconsistent(k.clone()))?;
            gp_gq_sym(other, &SkewShape::straight(l), s, None)
        },
    )?;
    if let Some(k) = peeled.residual.keys().next() {
        return Err(GenfunError::Inconsistent(k.clone()));
    }
    Ok(peeled.coeffs)
}

/// `gp_λ` or `gq_λ` in sorted-monomial coordinates (exact: these are
/// polynomials of degree `|λ|`).
pub fn dual_sym(flavor: Flavor, lambda: &StrictPartition) -> Result<Arc<SymPoly>, GenfunError> {
    let cache = global();
    let key = dual_key(flavor, lambda);
    if let Some(v) = cache.get(&key) {
        return Ok(v);
    }
    let table = dual_table(flavor, lambda.size())?;
    let mut found = None;
    for (k, v) in table {
        let l = k.to_strict().expect("strict index");
        let stored = cache.insert(&dual_key(flavor, &l), untruncated(&v))?;
        if &l == lambda {
            found = Some(stored);
        }
    }
    found.ok_or_else(|| GenfunError::Inconsistent(lambda.to_partition()))
}

fn untruncated(p: &SymPoly) -> SymPoly {
    let mut out = SymPoly::zero(None, p.nvars());
    out.add_scaled(p, &BetaInt::one());
    out
}

/// `gp_λ(y₁..y_n)` or `gq_λ(y₁..y_n)`.
pub fn dual_gp_gq(flavor: Flavor, lambda: &StrictPartition, nvars: usize) -> Result<BetaPoly, GenfunError> {
    Ok(dual_sym(flavor, lambda)?.to_poly(nvars, None))
}

/// All distinct ways to split the multiset of parts of `rho` into `(α, γ)`.
fn multiset_splits(rho: &Partition) -> Vec<(Partition, Partition)> {
    let mut groups: Vec<(u32, u32)> = Vec::new();
    for &p in rho.parts() {
        match groups.last_mut() {
            Some((v, m)) if *v == p => *m += 1,
            _ => groups.push((p, 1)),
        }
    }
    let mut out = vec![(Vec::new(), Vec::new())];
    for (v, m) in groups {
        let mut next = Vec::with_capacity(out.len() * (m as usize + 1));
        for (a, g) in &out {
            for k in 0..=m {
                let mut a2: Vec<u32> = a.clone();
                let mut g2: Vec<u32> = g.clone();
                a2.extend(std::iter::repeat_n(v, k as usize));
                g2.extend(std::iter::repeat_n(v, (m - k) as usize));
                next.push((a2, g2));
            }
        }
        out = next;
    }
    out.into_iter().map(|(a, g)| (Partition::from_exponents(&a), Partition::from_exponents(&g))).collect()
}

/// `gp_{λ/μ}` or `gq_{λ/μ}` via the coproduct; zero unless `μ ⊆ λ`.
pub fn dual_skew_sym(flavor: Flavor, lambda: &StrictPartition, mu: &StrictPartition) -> Result<Arc<SymPoly>, GenfunError> {
    let cache = global();
    if let Some(v) = cache.get(&skew_key(flavor, lambda, mu)) {
        return Ok(v);
    }
    let whole = dual_sym(flavor, lambda)?;
    let mut table: BTreeMap<Partition, SymPoly> = BTreeMap::new();
    for (rho, c) in whole.terms() {
        for (a, g) in multiset_splits(rho) {
            table.entry(a).or_insert_with(|| SymPoly::zero(None, None)).add_term(g, c);
        }
    }
    let peeled = peel(table, PeelOrder::Descending, true, |k| flavor.lead(k.len()), |k| {
        dual_sym(flavor, &k.to_strict().ok_or_else(|| GenfunError::Inconsistent(k.clone()))?)
    })?;
    if let Some(k) = peeled.residual.keys().next() {
        return Err(GenfunError::Inconsistent(k.clone()));
    }
    let mut found = None;
    for (k, v) in peeled.coeffs {
        let m = k.to_strict().expect("strict index");
        let stored = cache.insert(&skew_key(flavor, lambda, &m), v)?;
        if &m == mu {
            found = Some(stored);
        }
    }
    match found {
        Some(v) => Ok(v),
        None => cache.insert(&skew_key(flavor, lambda, mu), SymPoly::zero(None, None)),
    }
}

/// `gp_{λ/μ}(y₁..y_n)` or `gq_{λ/μ}(y₁..y_n)`.
pub fn dual_skew(flavor: Flavor, lambda: &StrictPartition, mu: &StrictPartition, nvars: usize) -> Result<BetaPoly, GenfunError> {
    Ok(dual_skew_sym(flavor, lambda, mu)?.to_poly(nvars, None))
}

/// Independent route: `gp_{λ/μ} = Σ_ν [GQ_λ](GQ_μ GQ_ν) · gp_ν`, and
/// likewise `gq_{λ/μ}` from GP products.
pub fn dual_skew_via_constants(flavor: Flavor, lambda: &StrictPartition, mu: &StrictPartition) -> Result<SymPoly, GenfunError> {
    let mut out = SymPoly::zero(None, None);
    if !mu.is_contained_in(lambda) {
        return Ok(out);
    }
    let other = flavor.other();
    let cap = lambda.size();
    let basis = if other.is_q() { Basis::GQ } else { Basis::GP };
    let g_mu = gp_gq_sym(other, &SkewShape::straight(mu.clone()), cap, None)?;
    let target = lambda.to_partition();
    for nu in enumerate_strict_partitions(cap - mu.size(), PartitionConstraints::default()) {
        let g_nu = gp_gq_sym(other, &SkewShape::straight(nu.clone()), cap, None)?;
        let e = expand_sym(&g_mu.mul(&g_nu), basis, Some(cap))?;
        let c = e.coeff(&target);
        if !c.is_zero() {
            out.add_scaled(&*dual_sym(flavor, &nu)?, &c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::families::{classical_pq_sym, schur_sym};
    use crate::polyring::cauchy_kernel;
    use crate::shapes::strict_subpartitions;
    use crate::genfun::sym::distinct_permutations;
    use crate::polyring::Monomial;
    use num_bigint::BigInt;

    fn sp(s: &str) -> StrictPartition {
        s.parse().unwrap()
    }

    fn s(l: &str) -> SymPoly {
        (*schur_sym(&l.parse().unwrap(), None)).clone()
    }

    #[test]
    fn kernel_matches_product_formula() {
        let (nx, ny, d) = (2, 2, 4);
        let mut from_table = BetaPoly::zero(nx + ny, Some(2 * d)).with_split(nx);
        for (a, row) in kernel_table(d) {
            if a.len() > nx {
                continue;
            }
            for (g, c) in row.terms() {
                if g.len() > ny {
                    continue;
                }
                let mut pa = a.parts().to_vec();
                pa.resize(nx, 0);
                let mut pg = g.parts().to_vec();
                pg.resize(ny, 0);
                for u in distinct_permutations(&pa) {
                    for v in distinct_permutations(&pg) {
                        let m: Monomial = u.iter().chain(v.iter()).map(|&e| e as u16).collect();
                        from_table.add_term(m, c);
                    }
                }
            }
        }
        assert_eq!(from_table.sorted_terms(), cauchy_kernel(nx, ny, d).sorted_terms());
    }

    #[test]
    fn examples_21() {
        let gp = dual_sym(Flavor::P, &sp("2,1")).unwrap();
        assert_eq!(*gp, s("2,1").sub(&s("2").scale(&BetaInt::beta_pow(1))));
        let gq = dual_sym(Flavor::Q, &sp("2,1")).unwrap();
        assert_eq!(*gq, s("2,1").scale_int(4).sub(&s("2").scale(&BetaInt::monomial(BigInt::from(4), 1))));
    }

    #[test]
    fn beta_zero_and_grading() {
        for l in enumerate_strict_partitions(5, PartitionConstraints::default()) {
            for f in [Flavor::P, Flavor::Q] {
                let g = dual_sym(f, &l).unwrap();
                assert!(g.is_graded(l.size() as i64, true), "{f} {l}");
                let classical = classical_pq_sym(f, &SkewShape::straight(l.clone()), None).unwrap();
                assert_eq!(g.specialize_beta_int(&BigInt::from(0)), *classical, "{f} {l}");
            }
        }
    }

    #[test]
    fn skew_routes_agree() {
        for l in enumerate_strict_partitions(4, PartitionConstraints::default()) {
            for f in [Flavor::P, Flavor::Q] {
                assert_eq!(*dual_skew_sym(f, &l, &StrictPartition::empty()).unwrap(), *dual_sym(f, &l).unwrap());
                assert_eq!(*dual_skew_sym(f, &l, &l).unwrap(), SymPoly::one(None, None));
                for m in strict_subpartitions(&l) {
                    let a = dual_skew_sym(f, &l, &m).unwrap();
                    let b = dual_skew_via_constants(f, &l, &m).unwrap();
                    assert_eq!(*a, b, "{f} {l}/{m}");
                    assert!(!a.is_zero());
                }
            }
        }
        assert!(dual_skew_sym(Flavor::P, &sp("2,1"), &sp("3")).unwrap().is_zero());
    }

    #[test]
    fn skew_at_beta_zero_is_classical() {
        let l = sp("3,1");
        for m in strict_subpartitions(&l) {
            let g = dual_skew_sym(Flavor::Q, &l, &m).unwrap();
            let q = classical_pq_sym(Flavor::Q, &SkewShape::new(l.clone(), m.clone()), None).unwrap();
            assert_eq!(g.specialize_beta_int(&BigInt::from(0)), *q, "{m}");
        }
    }

    #[test]
    fn polynomial_wrappers() {
        let p = dual_gp_gq(Flavor::P, &sp("1"), 2).unwrap();
        assert_eq!(p.to_string(), "x₁+x₂");
        let q = dual_skew(Flavor::Q, &sp("2"), &sp("1"), 1).unwrap();
        assert!(!q.is_zero());
    }
}
