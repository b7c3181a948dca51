use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::genfun::expand::beta_json;
use crate::genfun::{
    doubleslash_sym, dual_skew_sym, dual_sym, expand_sym, gp_gq, gp_gq_sym, Basis, Flavor, GenfunError, SymPoly,
};
use crate::polyring::{BetaInt, BetaPoly};
use crate::shapes::{
    cols_of, enumerate_strict_partitions, flip, overlap_of, shape_stats, signed_extensions, strict_subpartitions,
    vertical_strip_extensions, vertical_strip_subsets, Partition, PartitionConstraints, SkewShape, StrictPartition,
};
use crate::tableaux::RestrictedFamily;

use super::{
    clearing_shift, max_strict_length, params, pow2, same_length_subpartitions, shift_note, DyadicTerm, IdentityError,
    Tally, VerificationReport,
};

fn strict_up_to(n: u32) -> Vec<StrictPartition> {
    enumerate_strict_partitions(n, PartitionConstraints::default())
}

fn straight(p: &StrictPartition) -> SkewShape {
    SkewShape::straight(p.clone())
}

fn size_diff(outer: &StrictPartition, inner: &StrictPartition) -> u32 {
    outer.size() - inner.size()
}

/// `Σ term · poly`, everything multiplied by `2^shift`.
fn dyadic_sum(terms: &[(DyadicTerm, Arc<SymPoly>)], shift: i64, max_deg: Option<u32>, nvars: Option<usize>) -> SymPoly {
    let mut out = SymPoly::zero(max_deg, nvars);
    for (t, p) in terms {
        out.add_scaled(p, &t.scaled(shift));
    }
    out
}

/// Checks `lhs = Σ terms` after clearing denominators.
fn check_dyadic(
    tally: &mut Tally,
    key: super::CaseKey,
    lhs: &SymPoly,
    terms: &[(DyadicTerm, Arc<SymPoly>)],
    max_deg: Option<u32>,
    nvars: Option<usize>,
) {
    let shift = clearing_shift(&terms.iter().map(|t| t.0).collect::<Vec<_>>());
    let left = lhs.truncate(max_deg, nvars).scale(&pow2(shift));
    let right = dyadic_sum(terms, shift, max_deg, nvars);
    tally.check_sym(key, &shift_note(shift), &left, &right);
}

fn require_sweep(max_size: u32, nvars: usize, max_deg: u32) -> Result<(), IdentityError> {
    let len = max_strict_length(max_size);
    if nvars < len {
        return Err(IdentityError::Parameter(format!(
            "nvars={nvars} is smaller than the longest strict partition of size {max_size} ({len} parts)"
        )));
    }
    if max_deg < max_size + len as u32 {
        return Err(IdentityError::Parameter(format!(
            "max_deg={max_deg} must be at least max_size + {len} to cover the vertical-strip extensions"
        )));
    }
    Ok(())
}

fn coeffs_json(m: &BTreeMap<Partition, BetaInt>) -> Value {
    Value::Array(m.iter().map(|(k, c)| json!({"index": k.to_string(), "beta": beta_json(c)})).collect())
}

/// GQ to GP expansion over `Λ(μ)`, positivity of that expansion, and the
/// β=1 counting identity for the restricted tableau families.
pub fn check_gq_to_gp(max_size: u32, nvars: usize, max_deg: u32) -> Result<VerificationReport, IdentityError> {
    require_sweep(max_size, nvars, max_deg)?;
    let (d, n) = (Some(max_deg), Some(nvars));
    let tally = strict_up_to(max_size)
        .par_iter()
        .map(|mu| {
            let mut t = Tally::default();
            let l = mu.len() as i64;
            t.run(("expansion", vec![mu.clone()]), |t| {
                let gq = gp_gq_sym(Flavor::Q, &straight(mu), max_deg, n)?;
                let mut terms = Vec::new();
                for lam in vertical_strip_extensions(mu) {
                    let term = DyadicTerm::signed(l, cols_of(&lam, mu), size_diff(&lam, mu));
                    terms.push((term, gp_gq_sym(Flavor::P, &straight(&lam), max_deg, n)?));
                }
                check_dyadic(t, ("expansion", vec![mu.clone()]), &gq, &terms, d, n);
                Ok(())
            });
            t.run(("positivity", vec![mu.clone()]), |t| {
                let gq = gp_gq_sym(Flavor::Q, &straight(mu), max_deg, n)?;
                let e = expand_sym(&gq, Basis::GP, d)?;
                let mut expected = BTreeMap::new();
                for lam in vertical_strip_extensions(mu) {
                    let c = DyadicTerm::signed(l, cols_of(&lam, mu), size_diff(&lam, mu)).scaled(0);
                    expected.insert(lam.to_partition(), c);
                }
                let positive = e.coeffs.values().all(BetaInt::is_nonnegative);
                let ok = e.residual_zero() && e.coeffs == expected && positive == mu.parts_differ_by_two();
                t.check(("positivity", vec![mu.clone()]), "", ok, || {
                    (e.to_json_value(), json!({"coeffs": coeffs_json(&expected), "positive": mu.parts_differ_by_two()}))
                });
                Ok(())
            });
            t.run(("counting", vec![mu.clone()]), |t| {
                let (plus, minus) = signed_extensions(mu);
                let one = num_bigint::BigInt::from(1);
                let mut lhs = gp_gq(Flavor::Q, &straight(mu), nvars, d)?.specialize_beta_int(&one);
                for lam in minus {
                    lhs += &RestrictedFamily::new(lam, mu.clone())?.genfun(nvars, max_deg)?;
                }
                let mut rhs = BetaPoly::zero(nvars, d);
                for lam in plus {
                    rhs += &RestrictedFamily::new(lam, mu.clone())?.genfun(nvars, max_deg)?;
                }
                t.check_poly(("counting", vec![mu.clone()]), "(beta=1)", &lhs, &rhs);
                Ok(())
            });
            t
        })
        .reduce(Tally::default, Tally::merge);
    let p = params([("max_size", json!(max_size)), ("nvars", json!(nvars)), ("max_deg", json!(max_deg))]);
    Ok(tally.finish("gq-to-gp", p, false))
}

/// Skew expansions: `GQ_{μ//ν}` in terms of `GP_{λ//κ}`, and the dual
/// `gq_{λ/κ}` in terms of `gp_{μ/ν}`.
pub fn check_skew_expansions(max_size: u32, nvars: usize, max_deg: u32) -> Result<VerificationReport, IdentityError> {
    require_sweep(max_size, nvars, max_deg)?;
    let (d, n) = (Some(max_deg), Some(nvars));
    let pairs: Vec<(StrictPartition, StrictPartition)> = strict_up_to(max_size)
        .into_iter()
        .flat_map(|outer| strict_subpartitions(&outer).into_iter().map(move |inner| (outer.clone(), inner)))
        .collect();
    let tally = pairs
        .par_iter()
        .map(|(mu, nu)| {
            let mut t = Tally::default();
            let key = ("doubleslash", vec![mu.clone(), nu.clone()]);
            t.run(key.clone(), |t| {
                let lhs = doubleslash_sym(Flavor::Q, mu, nu, max_deg, n)?;
                let mut terms = Vec::new();
                for kappa in same_length_subpartitions(nu) {
                    for lam in vertical_strip_extensions(mu) {
                        let lead = mu.len() as i64 - nu.len() as i64 + overlap_of(nu, &kappa) as i64;
                        let k = size_diff(nu, &kappa) + size_diff(&lam, mu);
                        let term = DyadicTerm::signed(lead, cols_of(&lam, mu), k);
                        terms.push((term, Arc::new(doubleslash_sym(Flavor::P, &lam, &kappa, max_deg, n)?)));
                    }
                }
                check_dyadic(t, key, &lhs, &terms, d, n);
                Ok(())
            });
            // The same pair read as (λ, κ) for the dual statement.
            let (lam, kappa) = (mu, nu);
            let key = ("dual-skew", vec![lam.clone(), kappa.clone()]);
            t.run(key.clone(), |t| {
                let lhs = dual_skew_sym(Flavor::Q, lam, kappa)?;
                let mut terms = Vec::new();
                for m in vertical_strip_subsets(lam) {
                    for v in strict_subpartitions(&m) {
                        if v.len() != kappa.len() || !kappa.is_contained_in(&v) {
                            continue;
                        }
                        let lead = lam.len() as i64 - kappa.len() as i64 + overlap_of(&v, kappa) as i64;
                        let k = size_diff(&v, kappa) + size_diff(lam, &m);
                        terms.push((DyadicTerm::signed(lead, cols_of(lam, &m), k), dual_skew_sym(Flavor::P, &m, &v)?));
                    }
                }
                check_dyadic(t, key, &lhs, &terms, None, None);
                Ok(())
            });
            t
        })
        .reduce(Tally::default, Tally::merge);
    let p = params([("max_size", json!(max_size)), ("nvars", json!(nvars)), ("max_deg", json!(max_deg))]);
    Ok(tally.finish("skew-expansions", p, false))
}

/// Whether `λ − δ_ℓ`, with zero parts dropped, is strict.
fn minus_staircase_strict(lambda: &StrictPartition) -> bool {
    let l = lambda.len() as u32;
    let parts: Vec<u32> =
        lambda.parts().iter().enumerate().map(|(i, &p)| p - (l - i as u32)).filter(|&p| p > 0).collect();
    parts.windows(2).all(|w| w[0] > w[1])
}

/// The gp-expansion of `gq_λ` and its positivity criterion.
pub fn check_dual_expansions(max_size: u32) -> Result<VerificationReport, IdentityError> {
    let tally = strict_up_to(max_size)
        .par_iter()
        .map(|lam| {
            let mut t = Tally::default();
            t.run(("expansion", vec![lam.clone()]), |t| {
                let gq = dual_sym(Flavor::Q, lam)?;
                let mut terms = Vec::new();
                for mu in vertical_strip_subsets(lam) {
                    let term = DyadicTerm::signed(lam.len() as i64, cols_of(lam, &mu), size_diff(lam, &mu));
                    terms.push((term, dual_sym(Flavor::P, &mu)?));
                }
                check_dyadic(t, ("expansion", vec![lam.clone()]), &gq, &terms, None, None);
                Ok(())
            });
            t.run(("positivity", vec![lam.clone()]), |t| {
                let e = expand_sym(&*dual_sym(Flavor::Q, lam)?, Basis::Gp, None)?;
                let positive = e.coeffs.values().all(BetaInt::is_nonnegative);
                let expected = minus_staircase_strict(lam);
                t.check(("positivity", vec![lam.clone()]), "", e.residual_zero() && positive == expected, || {
                    (e.to_json_value(), json!({"positive": expected}))
                });
                Ok(())
            });
            t
        })
        .reduce(Tally::default, Tally::merge);
    Ok(tally.finish("dual-expansions", params([("max_size", json!(max_size))]), false))
}

/// `M = [2^{overlap}]` and `N = [(−1)^{cols}]` on same-length pairs are
/// mutually inverse, in both orders.
pub fn check_overlap_matrix(max_part: u32) -> Result<VerificationReport, IdentityError> {
    if max_part > 8 {
        return Err(IdentityError::Parameter(format!("max_part={max_part} exceeds 8")));
    }
    let all = enumerate_strict_partitions(
        max_part * (max_part + 1) / 2,
        PartitionConstraints { max_len: None, max_part: Some(max_part) },
    );
    let mut blocks: BTreeMap<usize, Vec<StrictPartition>> = BTreeMap::new();
    for p in all {
        blocks.entry(p.len()).or_default().push(p);
    }
    let tally = blocks
        .into_par_iter()
        .map(|(_, block)| {
            let k = block.len();
            let mut m = vec![vec![0i64; k]; k];
            let mut nn = vec![vec![0i64; k]; k];
            for (i, lam) in block.iter().enumerate() {
                for (j, mu) in block.iter().enumerate() {
                    if !mu.is_contained_in(lam) {
                        continue;
                    }
                    let st = shape_stats(&SkewShape::new(lam.clone(), mu.clone())).expect("nested");
                    m[i][j] = 1i64 << st.overlap;
                    if st.is_vertical_strip {
                        nn[i][j] = if st.cols % 2 == 0 { 1 } else { -1 };
                    }
                }
            }
            let mut t = Tally::default();
            for (tag, a, b) in [("MN", &m, &nn), ("NM", &nn, &m)] {
                for i in 0..k {
                    for j in 0..k {
                        let v: i64 = (0..k).map(|s| a[i][s] * b[s][j]).sum();
                        let want = i64::from(i == j);
                        t.check((tag, vec![block[i].clone(), block[j].clone()]), "", v == want, || (json!(v), json!(want)));
                    }
                }
            }
            t
        })
        .reduce(Tally::default, Tally::merge);
    Ok(tally.finish("overlap-matrix", params([("max_part", json!(max_part))]), false))
}

/// `GP_{λ/μ} = GP_{φ(λ/μ)}` and likewise for GQ.
pub fn check_flip(max_size: u32, nvars: usize, max_deg: u32) -> Result<VerificationReport, IdentityError> {
    let shapes: Vec<SkewShape> = strict_up_to(max_size)
        .into_iter()
        .filter(|l| !l.is_empty())
        .flat_map(|l| strict_subpartitions(&l).into_iter().map(move |m| SkewShape::new(l.clone(), m)))
        .collect();
    let tally = shapes
        .par_iter()
        .map(|s| {
            let mut t = Tally::default();
            for flavor in [Flavor::P, Flavor::Q] {
                let tag = if flavor.is_q() { "GQ" } else { "GP" };
                let key = (tag, vec![s.outer.clone(), s.inner.clone()]);
                t.run(key.clone(), |t| {
                    let f = flip(s)?;
                    let a = gp_gq_sym(flavor, s, max_deg, Some(nvars))?;
                    let b = gp_gq_sym(flavor, &f, max_deg, Some(nvars))?;
                    t.check_sym(key, &format!("flip={f}"), &a, &b);
                    Ok::<(), GenfunError>(())
                });
            }
            t
        })
        .reduce(Tally::default, Tally::merge);
    let p = params([("max_size", json!(max_size)), ("nvars", json!(nvars)), ("max_deg", json!(max_deg))]);
    Ok(tally.finish("flip", p, false))
}
