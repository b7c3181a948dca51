//! Tableau-defined families in sorted-monomial coordinates, with
//! polynomial wrappers in finitely many variables.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::polyring::{BetaInt, BetaPoly};
use crate::shapes::{doubleslash_inners, Partition, SkewShape, StrictPartition};
use crate::tableaux::{count_with_content, genfun_from_tableaux, Family};

use super::cache::global;
use super::sym::SymPoly;
use super::{fmt_opt, Flavor, GenfunError};

fn set_family(flavor: Flavor) -> Family {
    match flavor {
        Flavor::P => Family::SetShYtP,
        Flavor::Q => Family::SetShYtQ,
    }
}

fn single_family(flavor: Flavor) -> Family {
    match flavor {
        Flavor::P => Family::ShYtP,
        Flavor::Q => Family::ShYtQ,
    }
}

/// Coefficients `Σ_T β^{|T|−|shape|}` over tableaux with each content
/// pattern, for a single- or set-valued family.
fn sym_from_counts(family: Family, shape: &SkewShape, max_deg: u32, nvars: Option<usize>) -> Result<SymPoly, GenfunError> {
    let bound = family.is_set_valued().then_some(max_deg);
    let mut out = SymPoly::zero(bound, nvars);
    if !shape.is_valid() {
        return Ok(out);
    }
    let n = shape.size();
    let top = if family.is_set_valued() { max_deg } else { n.min(max_deg) };
    if n > top {
        return Ok(out);
    }
    let targets: Vec<Partition> = Partition::all_up_to(top, nvars).into_iter().filter(|a| a.size() >= n).collect();
    let counts: Result<Vec<(Partition, u64)>, GenfunError> = targets
        .into_par_iter()
        .map(|a| Ok((a.clone(), count_with_content(family, shape, a.parts())?)))
        .collect();
    for (a, k) in counts? {
        if k > 0 {
            let d = a.size() - n;
            out.add_term(a, &BetaInt::monomial(BigInt::from(k), d));
        }
    }
    Ok(out)
}

/// `GP_{λ/μ}` or `GQ_{λ/μ}` truncated at `max_deg`; zero unless `μ ⊆ λ`.
pub fn gp_gq_sym(flavor: Flavor, shape: &SkewShape, max_deg: u32, nvars: Option<usize>) -> Result<Arc<SymPoly>, GenfunError> {
    let key = format!("G{flavor}|{shape}|d={max_deg}|n={}", fmt_opt(nvars));
    global().get_or_compute(&key, || sym_from_counts(set_family(flavor), shape, max_deg, nvars))
}

/// Classical `P_{λ/μ}` or `Q_{λ/μ}`.
pub fn classical_pq_sym(flavor: Flavor, shape: &SkewShape, nvars: Option<usize>) -> Result<Arc<SymPoly>, GenfunError> {
    let d = shape.size();
    let key = format!("{flavor}|{shape}|n={}", fmt_opt(nvars));
    global().get_or_compute(&key, || sym_from_counts(single_family(flavor), shape, d, nvars))
}

/// `GP_{λ//μ} = Σ_ν β^{|μ/ν|} GP_{λ/ν}` over `ν` obtained from `μ` by
/// deleting removable boxes; zero unless `μ ⊆ λ`.
pub fn doubleslash_sym(
    flavor: Flavor,
    lambda: &StrictPartition,
    mu: &StrictPartition,
    max_deg: u32,
    nvars: Option<usize>,
) -> Result<SymPoly, GenfunError> {
    let mut out = SymPoly::zero(Some(max_deg), nvars);
    if !mu.is_contained_in(lambda) {
        return Ok(out);
    }
    for nu in doubleslash_inners(mu) {
        let g = gp_gq_sym(flavor, &SkewShape::new(lambda.clone(), nu.clone()), max_deg, nvars)?;
        out.add_scaled(&g, &BetaInt::beta_pow(mu.size() - nu.size()));
    }
    Ok(out)
}

/// Horizontal strips `λ/ν` of size `k`, returned as the inner shapes `ν`.
fn horizontal_strip_inners(lambda: &[u32], k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(lambda.len());
    fn rec(i: usize, rem: u32, lambda: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == lambda.len() {
            if rem == 0 {
                let mut v = cur.clone();
                while v.last() == Some(&0) {
                    v.pop();
                }
                out.push(v);
            }
            return;
        }
        let lo = lambda.get(i + 1).copied().unwrap_or(0);
        for v in lo..=lambda[i] {
            let take = lambda[i] - v;
            if take > rem {
                continue;
            }
            cur.push(v);
            rec(i + 1, rem - take, lambda, cur, out);
            cur.pop();
        }
    }
    rec(0, k, lambda, &mut cur, &mut out);
    out
}

/// Kostka number: semistandard tableaux of shape `lambda` with content
/// `content` (in any order).
pub fn kostka(lambda: &[u32], content: &[u32]) -> u64 {
    fn go(lambda: &[u32], content: &[u32], memo: &mut HashMap<(Vec<u32>, usize), u64>) -> u64 {
        if content.is_empty() {
            return u64::from(lambda.is_empty());
        }
        let key = (lambda.to_vec(), content.len());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let k = content[content.len() - 1];
        let rest = &content[..content.len() - 1];
        let total = horizontal_strip_inners(lambda, k).iter().map(|nu| go(nu, rest, memo)).sum();
        memo.insert(key, total);
        total
    }
    if lambda.iter().sum::<u32>() != content.iter().sum::<u32>() {
        return 0;
    }
    go(lambda, content, &mut HashMap::new())
}

/// Schur function `s_λ` in sorted-monomial coordinates.
pub fn schur_sym(lambda: &Partition, nvars: Option<usize>) -> Arc<SymPoly> {
    let key = format!("s|{lambda}|n={}", fmt_opt(nvars));
    global()
        .get_or_compute(&key, || {
            let d = lambda.size();
            let mut out = SymPoly::zero(None, nvars);
            for a in Partition::all_of_size(d) {
                if nvars.is_some_and(|n| a.len() > n) {
                    continue;
                }
                let k = kostka(lambda.parts(), a.parts());
                if k > 0 {
                    out.add_term(a, &BetaInt::from_int(k));
                }
            }
            Ok(out)
        })
        .expect("schur computation is infallible")
}

/// Classical Schur polynomial `s_λ(x₁..x_nvars)`.
pub fn schur(lambda: &Partition, nvars: usize, max_deg: Option<u32>) -> BetaPoly {
    schur_sym(lambda, Some(nvars)).to_poly(nvars, max_deg)
}

/// `P_{λ/μ}` or `Q_{λ/μ}` in `nvars` variables.
pub fn classical_pq(flavor: Flavor, shape: &SkewShape, nvars: usize, max_deg: Option<u32>) -> Result<BetaPoly, GenfunError> {
    Ok(classical_pq_sym(flavor, shape, Some(nvars))?.to_poly(nvars, max_deg))
}

/// `GP_{λ/μ}` or `GQ_{λ/μ}` in `nvars` variables. Without a degree bound
/// the full polynomial is produced by direct enumeration.
pub fn gp_gq(flavor: Flavor, shape: &SkewShape, nvars: usize, max_deg: Option<u32>) -> Result<BetaPoly, GenfunError> {
    match max_deg {
        Some(d) => Ok(gp_gq_sym(flavor, shape, d, Some(nvars))?.to_poly(nvars, Some(d))),
        None if !shape.is_valid() => Ok(BetaPoly::zero(nvars, None)),
        None => Ok(genfun_from_tableaux(set_family(flavor), shape, nvars, None)?),
    }
}

/// `GP_{λ//μ}` or `GQ_{λ//μ}` in `nvars` variables.
pub fn gp_gq_doubleslash(
    flavor: Flavor,
    lambda: &StrictPartition,
    mu: &StrictPartition,
    nvars: usize,
    max_deg: u32,
) -> Result<BetaPoly, GenfunError> {
    Ok(doubleslash_sym(flavor, lambda, mu, max_deg, Some(nvars))?.to_poly(nvars, Some(max_deg)))
}

/// `JP`/`JQ` of a skew or double-slash shape: the corresponding `GP`/`GQ`
/// function with every `x_i` replaced by `x_i/(1−βx_i)`.
pub fn cap_jp_jq(
    flavor: Flavor,
    lambda: &StrictPartition,
    mu: &StrictPartition,
    doubleslash: bool,
    nvars: usize,
    max_deg: u32,
) -> Result<BetaPoly, GenfunError> {
    let g = if doubleslash {
        gp_gq_doubleslash(flavor, lambda, mu, nvars, max_deg)?
    } else {
        gp_gq(flavor, &SkewShape::new(lambda.clone(), mu.clone()), nvars, Some(max_deg))?
    };
    Ok(g.substitute_geometric()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::{enumerate_strict_partitions, strict_subpartitions, PartitionConstraints};
    use num_traits::Zero;

    fn sp(s: &str) -> StrictPartition {
        s.parse().unwrap()
    }

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn schur_examples() {
        assert_eq!(schur(&pt("1"), 2, None).to_string(), "x₁+x₂");
        assert!(schur(&pt("1,1"), 1, None).is_zero());
        assert_eq!(schur(&pt("2,1"), 2, None).to_string(), "x₁²x₂+x₁x₂²");
        assert_eq!(kostka(&[2, 1], &[1, 1, 1]), 2);
        assert_eq!(kostka(&[3, 2], &[2, 2, 1]), 2);
        assert_eq!(kostka(&[2, 2], &[3, 1]), 0);
    }

    #[test]
    fn classical_examples() {
        let p2 = classical_pq(Flavor::P, &SkewShape::straight(sp("2")), 2, None).unwrap();
        assert_eq!(p2.to_string(), "x₁²+2x₁x₂+x₂²");
        let s2 = &schur(&pt("2"), 2, None) + &schur(&pt("1,1"), 2, None);
        assert_eq!(p2, s2);
        let empty = classical_pq(Flavor::P, &SkewShape::straight(sp("")), 2, None).unwrap();
        assert_eq!(empty, BetaPoly::one(2, None));
        for l in enumerate_strict_partitions(4, PartitionConstraints::default()) {
            let s = SkewShape::straight(l.clone());
            let p = classical_pq(Flavor::P, &s, 3, None).unwrap();
            let q = classical_pq(Flavor::Q, &s, 3, None).unwrap();
            assert_eq!(q, p.scale_int(1 << l.len()));
        }
    }

    #[test]
    fn gp_gq_examples() {
        let gq1 = gp_gq(Flavor::Q, &SkewShape::straight(sp("1")), 1, Some(2)).unwrap();
        assert_eq!(gq1.to_string(), "2x₁+βx₁²");
        let gp1 = gp_gq(Flavor::P, &SkewShape::straight(sp("1")), 2, None).unwrap();
        assert_eq!(gp1.to_string(), "x₁+x₂+βx₁x₂");
        let bad = SkewShape::new(sp("2"), sp("3"));
        assert!(gp_gq(Flavor::P, &bad, 2, Some(4)).unwrap().is_zero());
        assert!(gp_gq(Flavor::P, &bad, 2, None).unwrap().is_zero());
    }

    /// The sorted-monomial route agrees with direct tableau enumeration.
    #[test]
    fn symmetric_route_matches_enumeration() {
        for l in enumerate_strict_partitions(4, PartitionConstraints::default()) {
            for m in strict_subpartitions(&l) {
                let s = SkewShape::new(l.clone(), m);
                for f in [Flavor::P, Flavor::Q] {
                    let a = gp_gq(f, &s, 3, Some(6)).unwrap();
                    let b = genfun_from_tableaux(set_family(f), &s, 3, Some(6)).unwrap();
                    assert_eq!(a, b, "{f} {s}");
                }
            }
        }
    }

    #[test]
    fn doubleslash_examples() {
        let l = sp("3,1");
        let plain = gp_gq_doubleslash(Flavor::P, &l, &sp(""), 2, 5).unwrap();
        assert_eq!(plain, gp_gq(Flavor::P, &SkewShape::straight(l.clone()), 2, Some(5)).unwrap());
        // GP_{1//1} = 1 + β·GP_1
        let one = gp_gq_doubleslash(Flavor::P, &sp("1"), &sp("1"), 2, 4).unwrap();
        let mut want = gp_gq(Flavor::P, &SkewShape::straight(sp("1")), 2, Some(4)).unwrap().scale(&BetaInt::beta_pow(1));
        want += &BetaPoly::one(2, Some(4));
        assert_eq!(one, want);
        assert!(gp_gq_doubleslash(Flavor::Q, &sp("2"), &sp("3"), 2, 4).unwrap().is_zero());
    }

    #[test]
    fn cap_functions() {
        let jp1 = cap_jp_jq(Flavor::P, &sp("1"), &sp(""), false, 1, 3).unwrap();
        assert_eq!(jp1.to_string(), "x₁+βx₁²+β²x₁³");
        let jq0 = cap_jp_jq(Flavor::Q, &sp(""), &sp(""), false, 2, 3).unwrap();
        assert_eq!(jq0, BetaPoly::one(2, Some(3)));
        for l in enumerate_strict_partitions(4, PartitionConstraints::default()) {
            let jp = cap_jp_jq(Flavor::P, &l, &sp(""), false, 3, 5).unwrap().specialize_beta_int(&BigInt::zero());
            let p = classical_pq(Flavor::P, &SkewShape::straight(l), 3, Some(5)).unwrap();
            assert_eq!(jp, p);
        }
    }
}
