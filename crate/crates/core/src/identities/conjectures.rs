use rayon::prelude::*;
use serde_json::json;

use crate::genfun::{dual_skew, jp_jq, Flavor, GenfunError, StructureKind, StructureTable};
use crate::polyring::BetaPoly;
use crate::shapes::{enumerate_strict_partitions, strict_subpartitions, PartitionConstraints, SkewShape, StrictPartition};
use crate::tableaux::{genfun_from_tableaux, Family};

use super::{params, poly_eq, CaseKey, IdentityError, Tally, VerificationReport};

fn strict_up_to(n: u32) -> Vec<StrictPartition> {
    enumerate_strict_partitions(n, PartitionConstraints::default())
}

impl Tally {
    fn check_finding(&mut self, key: CaseKey, lhs: &BetaPoly, rhs: &BetaPoly) {
        let ok = poly_eq(lhs, rhs);
        self.finding(key.clone(), ok);
        self.check(key, "", ok, || (lhs.to_json_value(), rhs.to_json_value()));
    }
}

/// One comparison: a tableau family against the algebraically defined
/// dual or ω-dual function of the same skew shape.
#[derive(Debug, Clone, Copy)]
struct Comparison {
    tag: &'static str,
    family: Family,
    flavor: Flavor,
    bar: bool,
}

const COMPARISONS: [Comparison; 4] = [
    Comparison { tag: "rpp gp", family: Family::ShRppP, flavor: Flavor::P, bar: false },
    Comparison { tag: "rpp gq", family: Family::ShRppQ, flavor: Flavor::Q, bar: false },
    Comparison { tag: "bar jp", family: Family::ShBtP, flavor: Flavor::P, bar: true },
    Comparison { tag: "bar jq", family: Family::ShBtQ, flavor: Flavor::Q, bar: true },
];

/// Pairs `(μ, ν)`, `μ ≤ ν`, for which some `λ ⊇ μ, ν` with
/// `|λ| ≤ cap` has more than `ℓ(μ)+ℓ(ν)` parts.
fn vanishing_pairs(cap: u32) -> Vec<(StrictPartition, StrictPartition)> {
    let all = strict_up_to(cap);
    let mut out = Vec::new();
    for mu in all.iter().filter(|p| !p.is_empty()) {
        for nu in all.iter().filter(|p| !p.is_empty() && *p >= mu) {
            if mu.size() + nu.size() > cap {
                continue;
            }
            let bound = mu.len() + nu.len();
            if all.iter().any(|l| l.len() > bound && mu.is_contained_in(l) && nu.is_contained_in(l)) {
                out.push((mu.clone(), nu.clone()));
            }
        }
    }
    out
}

/// Empirical checks of the reverse plane partition and bar tableau
/// formulas for the dual functions, and of the vanishing of product
/// coefficients `a`, `b` on long indices within the degree cap.
///
/// Mismatches are findings: the report status is MATCH or MISMATCH.
pub fn check_conjectures(max_size: u32, nvars: usize, max_deg: u32) -> Result<VerificationReport, IdentityError> {
    if nvars == 0 {
        return Err(IdentityError::Parameter("nvars must be positive".into()));
    }
    let cap = Some(max_deg);
    let mut items: Vec<(Comparison, StrictPartition, StrictPartition)> = Vec::new();
    for c in COMPARISONS {
        for lam in strict_up_to(max_size) {
            for mu in strict_subpartitions(&lam) {
                items.push((c, lam.clone(), mu));
            }
        }
    }
    let shapes = items
        .par_iter()
        .map(|(c, lam, mu)| {
            let mut t = Tally::default();
            let key = (c.tag, vec![lam.clone(), mu.clone()]);
            t.run(key.clone(), |t| {
                let shape = SkewShape::new(lam.clone(), mu.clone());
                let tab = genfun_from_tableaux(c.family, &shape, nvars, None)?.truncate(cap);
                let alg = if c.bar { jp_jq(c.flavor, lam, mu, nvars)? } else { dual_skew(c.flavor, lam, mu, nvars)? };
                t.check_finding(key, &tab, &alg.truncate(cap));
                Ok(())
            });
            t
        })
        .reduce(Tally::default, Tally::merge);
    let vanishing = vanishing_pairs(max_deg)
        .par_iter()
        .map(|(mu, nu)| {
            let mut t = Tally::default();
            for (tag, kind) in [("a vanishes", StructureKind::A), ("b vanishes", StructureKind::B)] {
                let key = (tag, vec![mu.clone(), nu.clone()]);
                t.run(key.clone(), |t| {
                    let table = StructureTable::compute(kind, mu, nu, max_deg)?;
                    let bound = mu.len() + nu.len();
                    let bad: Vec<_> = table.entries.iter().filter(|(l, v)| l.len() > bound && v.sign() != num_bigint::Sign::NoSign).collect();
                    t.finding(key.clone(), bad.is_empty());
                    t.check(key, "", bad.is_empty(), || {
                        let found: Vec<String> = bad.iter().map(|(l, v)| format!("{l}: {v}")).collect();
                        (json!(found), json!([]))
                    });
                    Ok::<(), GenfunError>(())
                });
            }
            t
        })
        .reduce(Tally::default, Tally::merge);
    let p = params([("max_size", json!(max_size)), ("nvars", json!(nvars)), ("max_deg", json!(max_deg))]);
    Ok(shapes.merge(vanishing).finish("conjectures", p, true))
}
