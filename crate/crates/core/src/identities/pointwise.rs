use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::genfun::symmetrize::SymmetrizeKind;
use crate::genfun::{gp_gq, gq_onerow_series, symmetrization_eval, Flavor, GenfunError};
use crate::polyring::{BetaPoly, RationalPoint};
use crate::shapes::{cols_of, vertical_strip_extensions, SkewShape, StrictPartition};

use super::{params, IdentityError, Tally, VerificationReport};

const SHAPES: [&[u32]; 6] = [&[], &[1], &[2], &[2, 1], &[3, 1], &[3, 2]];
const MAX_RESAMPLES: usize = 1000;

fn sample_rational(rng: &mut ChaCha8Rng, bound: i64, nonzero: bool) -> BigRational {
    loop {
        let num = rng.gen_range(-bound..=bound);
        if nonzero && num == 0 {
            continue;
        }
        let den = rng.gen_range(1..=4i64);
        return BigRational::new(BigInt::from(num), BigInt::from(den));
    }
}

fn sample_point(rng: &mut ChaCha8Rng, n: usize) -> RationalPoint {
    let beta = sample_rational(rng, 3, false);
    let coords = (0..n).map(|_| sample_rational(rng, 6, true)).collect();
    RationalPoint::new(beta, coords)
}

fn point_text(pt: &RationalPoint) -> String {
    let xs: Vec<String> = pt.coords.iter().map(ToString::to_string).collect();
    format!("beta={} x=({})", pt.beta, xs.join(","))
}

/// The staircase segments `(q, q−1, …, p)` used for the `B`-versus-`A`
/// identity.
fn segments() -> Vec<StrictPartition> {
    let mut out = Vec::new();
    for p in 1..=2u32 {
        for q in p..=p + 2 {
            out.push(StrictPartition::new((p..=q).rev().collect()).expect("strict"));
        }
    }
    out
}

/// `B_μ − 2^ℓ Σ (−1)^{cols}(−β/2)^{|λ/μ|} A_λ` pieces at a point.
fn pointwise_sides(mu: &StrictPartition, pt: &RationalPoint) -> Result<(BigRational, BigRational), GenfunError> {
    let lhs = symmetrization_eval(SymmetrizeKind::B, mu.parts(), pt)?;
    let mut rhs = BigRational::zero();
    let l = mu.len() as u32;
    for lam in vertical_strip_extensions(mu) {
        let k = lam.size() - mu.size();
        let sign = if (cols_of(&lam, mu) + k) % 2 == 0 { 1 } else { -1 };
        let coeff = BigRational::from_integer(BigInt::from(sign) << (l - k) as usize) * num_traits::pow(pt.beta.clone(), k as usize);
        rhs += coeff * symmetrization_eval(SymmetrizeKind::A, lam.parts(), pt)?;
    }
    Ok((lhs, rhs))
}

/// Symmetrization formulas against tableau generating functions, and the
/// `B`-versus-`A` identity for staircase segments, at random rational
/// points. Singular points are resampled and counted.
pub fn check_symmetrization(trials: u32, seed: u64) -> Result<VerificationReport, IdentityError> {
    if trials == 0 {
        return Err(IdentityError::Parameter("trials must be at least 1".into()));
    }
    let mut polys: BTreeMap<(Flavor, usize, usize), (StrictPartition, BetaPoly)> = BTreeMap::new();
    for n in [2usize, 3] {
        for (i, parts) in SHAPES.iter().enumerate() {
            if parts.len() > n {
                continue;
            }
            let lam = StrictPartition::new(parts.to_vec()).expect("strict");
            for flavor in [Flavor::P, Flavor::Q] {
                let p = gp_gq(flavor, &SkewShape::straight(lam.clone()), n, None)?;
                polys.insert((flavor, n, i), (lam.clone(), p));
            }
        }
    }
    let segs = segments();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::default();
    let mut resampled = 0usize;
    for _ in 0..trials {
        for n in 1..=4usize {
            let mut attempts = 0;
            loop {
                let pt = sample_point(&mut rng, n);
                match trial(&polys, &segs, n, &pt) {
                    Ok(t) => {
                        tally = tally.merge(t);
                        break;
                    }
                    Err(GenfunError::SingularPoint) if attempts < MAX_RESAMPLES => {
                        attempts += 1;
                        resampled += 1;
                    }
                    Err(e) => {
                        tally.error(("sampling", vec![]), &e);
                        break;
                    }
                }
            }
        }
    }
    let mut report = tally.finish("symmetrization", params([("trials", json!(trials)), ("seed", json!(seed))]), false);
    report.notes.insert("resampled".into(), json!(resampled));
    Ok(report)
}

/// All comparisons at one point; fails as a whole on a singular point so
/// the caller can resample.
fn trial(
    polys: &BTreeMap<(Flavor, usize, usize), (StrictPartition, BetaPoly)>,
    segs: &[StrictPartition],
    n: usize,
    pt: &RationalPoint,
) -> Result<Tally, GenfunError> {
    let mut t = Tally::default();
    for ((flavor, pn, _), (lam, poly)) in polys {
        if *pn != n {
            continue;
        }
        let kind = if flavor.is_q() { SymmetrizeKind::GQ } else { SymmetrizeKind::GP };
        let sym = symmetrization_eval(kind, lam.parts(), pt)?;
        let tab = poly.eval_rational(pt)?;
        let tag = if flavor.is_q() { "GQ" } else { "GP" };
        let extra = format!("n={n} {}", point_text(pt));
        t.check((tag, vec![lam.clone()]), &extra, sym == tab, || (json!(sym.to_string()), json!(tab.to_string())));
    }
    for mu in segs.iter().filter(|m| m.len() <= n) {
        let (lhs, rhs) = pointwise_sides(mu, pt)?;
        let extra = format!("n={n} {}", point_text(pt));
        t.check(("B-vs-A", vec![mu.clone()]), &extra, lhs == rhs, || (json!(lhs.to_string()), json!(rhs.to_string())));
    }
    Ok(t)
}

/// The one-row generating series against `GQ_{(n)}` for `n ≤ max_power`.
pub fn check_onerow_series(max_power: u32, nvars: usize, max_deg: u32) -> Result<VerificationReport, IdentityError> {
    if max_power > 6 {
        return Err(IdentityError::Parameter(format!("max_power={max_power} exceeds 6")));
    }
    let series = gq_onerow_series(nvars, max_power, max_deg);
    let mut tally = Tally::default();
    for (k, s) in series.iter().enumerate() {
        let parts = if k == 0 { vec![] } else { vec![k as u32] };
        let lam = StrictPartition::new(parts).expect("one row");
        let key = ("GQ(n)", vec![lam.clone()]);
        tally.run(key.clone(), |t| {
            let g = gp_gq(Flavor::Q, &SkewShape::straight(lam), nvars, Some(max_deg))?;
            t.check_poly(key, "", s, &g);
            Ok(())
        });
    }
    let p = params([("max_power", json!(max_power)), ("nvars", json!(nvars)), ("max_deg", json!(max_deg))]);
    Ok(tally.finish("onerow-series", p, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::Status;
    use num_traits::One;

    #[test]
    fn one_variable_gq1_formula() {
        let pt = RationalPoint::from_ints(3, &[2]);
        let v = symmetrization_eval(SymmetrizeKind::GQ, &[1], &pt).unwrap();
        // x(2+βx) at β=3, x=2
        assert_eq!(v, BigRational::from_integer(16.into()));
    }

    #[test]
    fn empty_shape_is_one() {
        let pt = RationalPoint::from_ints(1, &[2, 5]);
        assert!(symmetrization_eval(SymmetrizeKind::GP, &[], &pt).unwrap().is_one());
    }

    #[test]
    fn short_run_passes_and_is_deterministic() {
        let a = check_symmetrization(2, 7).unwrap();
        let b = check_symmetrization(2, 7).unwrap();
        assert_eq!(a.status, Status::Pass, "{a}");
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn onerow_small() {
        let r = check_onerow_series(4, 2, 6).unwrap();
        assert_eq!(r.status, Status::Pass, "{r}");
        assert_eq!(r.cases, 5);
        assert!(check_onerow_series(7, 2, 6).is_err());
    }
}
