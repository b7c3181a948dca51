//! Acceptance suite: one line per criterion, PASS or FAIL, followed by a
//! nonzero exit status if anything failed.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use kshift_core::genfun::{
    classical_pq_sym, dual_skew, dual_sym, expand_sym, gp_gq, gp_gq_sym, jp_jq, jp_jq_sym, recombine, Basis, Flavor,
    StructureKind, StructureTable, SymPoly,
};
use kshift_core::identities::{run_check, CheckId, CheckParams, Status};
use kshift_core::polyring::{BetaInt, BetaPoly};
use kshift_core::shapes::{
    enumerate_strict_partitions, strict_subpartitions, Partition, PartitionConstraints, SkewShape, StrictPartition,
};
use kshift_core::tableaux::{onerow_map, Enumerator, Family, OneRowImage, RestrictedFamily};
use num_bigint::BigInt;

type Outcome = Result<String, String>;

fn sp(s: &str) -> StrictPartition {
    s.parse().unwrap()
}

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

fn strict_up_to(n: u32) -> Vec<StrictPartition> {
    enumerate_strict_partitions(n, PartitionConstraints::default())
}

/// `c·β^k` as a coefficient.
fn bc(c: i64, k: u32) -> BetaInt {
    BetaInt::monomial(BigInt::from(c), k)
}

fn expect_coeffs(label: &str, got: &BTreeMap<Partition, BetaInt>, want: &[(&str, BetaInt)]) -> Result<(), String> {
    let want: BTreeMap<Partition, BetaInt> = want.iter().map(|(k, v)| (part(k), v.clone())).collect();
    if got == &want {
        Ok(())
    } else {
        let show = |m: &BTreeMap<Partition, BetaInt>| {
            m.iter().map(|(k, v)| format!("({k}):{v}")).collect::<Vec<_>>().join(" ")
        };
        Err(format!("{label}: got {{{}}}, expected {{{}}}", show(got), show(&want)))
    }
}

fn expand_exact(p: &SymPoly, basis: Basis, cap: Option<u32>, label: &str) -> Result<BTreeMap<Partition, BetaInt>, String> {
    let e = expand_sym(p, basis, cap).map_err(|e| format!("{label}: {e}"))?;
    if !e.residual_zero() {
        return Err(format!("{label}: nonzero residual"));
    }
    Ok(e.coeffs)
}

fn same_poly(a: &BetaPoly, b: &BetaPoly) -> bool {
    a.nvars() == b.nvars() && a.sorted_terms() == b.sorted_terms()
}

fn run_default(id: CheckId, p: CheckParams, want: Status) -> Outcome {
    let r = run_check(id, &p).map_err(|e| e.to_string())?;
    if r.status == want {
        Ok(format!("{} cases", r.cases))
    } else {
        Err(r.to_string())
    }
}

fn criterion_expansions() -> Outcome {
    let g = gp_gq_sym(Flavor::Q, &SkewShape::straight(sp("3,2")), 9, None).map_err(|e| e.to_string())?;
    let c = expand_exact(&g, Basis::GP, Some(9), "GQ(3,2)")?;
    expect_coeffs("GQ(3,2)", &c, &[("3,2", bc(4, 0)), ("4,2", bc(2, 1)), ("4,3", bc(-1, 2))])?;
    for n in 1..=5u32 {
        let cap = n + 3;
        let g = gp_gq_sym(Flavor::Q, &SkewShape::straight(sp(&n.to_string())), cap, None).map_err(|e| e.to_string())?;
        let c = expand_exact(&g, Basis::GP, Some(cap), "GQ(n)")?;
        expect_coeffs(&format!("GQ({n})"), &c, &[(&n.to_string(), bc(2, 0)), (&(n + 1).to_string(), bc(1, 1))])?;
        let d = dual_sym(Flavor::Q, &sp(&n.to_string())).map_err(|e| e.to_string())?;
        let c = expand_exact(&d, Basis::Gp, None, "gq(n)")?;
        if n == 1 {
            expect_coeffs("gq(1)", &c, &[("1", bc(2, 0))])?;
        } else {
            expect_coeffs(&format!("gq({n})"), &c, &[(&n.to_string(), bc(2, 0)), (&(n - 1).to_string(), bc(1, 1))])?;
        }
    }
    for m in 1..=4u32 {
        let d = StrictPartition::staircase(m);
        let q = dual_sym(Flavor::Q, &d).map_err(|e| e.to_string())?;
        let p = dual_sym(Flavor::P, &d).map_err(|e| e.to_string())?;
        if *q != p.scale_int(1 << m) {
            return Err(format!("gq({d}) is not 2^{m} gp({d})"));
        }
    }
    Ok("GQ(3,2), GQ(n) for n<=5, gq(n) for 2<=n<=5, staircases m<=4".into())
}

fn criterion_gq_to_gp() -> Outcome {
    let p = CheckParams { max_size: Some(6), nvars: Some(3), max_deg: Some(9), ..Default::default() };
    run_default(CheckId::GqToGp, p, Status::Pass)
}

fn criterion_overlap_matrix() -> Outcome {
    run_default(CheckId::OverlapMatrix, CheckParams { max_part: Some(7), ..Default::default() }, Status::Pass)
}

fn criterion_cauchy() -> Outcome {
    let p = CheckParams { max_size: Some(2), nx: Some(2), ny: Some(2), max_deg: Some(4), ..Default::default() };
    run_default(CheckId::Cauchy, p, Status::Pass)
}

fn criterion_schur_examples() -> Outcome {
    let lam = sp("2,1");
    let empty = StrictPartition::empty();
    let cases: [(&str, SymPoly, [(&str, BetaInt); 2]); 4] = [
        ("gp", (*dual_sym(Flavor::P, &lam).map_err(|e| e.to_string())?).clone(), [("2,1", bc(1, 0)), ("2", bc(-1, 1))]),
        ("gq", (*dual_sym(Flavor::Q, &lam).map_err(|e| e.to_string())?).clone(), [("2,1", bc(4, 0)), ("2", bc(-4, 1))]),
        ("jp", (*jp_jq_sym(Flavor::P, &lam, &empty).map_err(|e| e.to_string())?).clone(), [("2,1", bc(1, 0)), ("1,1", bc(-1, 1))]),
        ("jq", (*jp_jq_sym(Flavor::Q, &lam, &empty).map_err(|e| e.to_string())?).clone(), [("2,1", bc(4, 0)), ("1,1", bc(-4, 1))]),
    ];
    for (name, f, want) in cases {
        let c = expand_exact(&f, Basis::Schur, None, name)?;
        expect_coeffs(&format!("{name}(2,1)"), &c, &want)?;
    }
    Ok("gp, gq, jp, jq of (2,1) in the Schur basis".into())
}

fn criterion_conjectures() -> Outcome {
    let p = CheckParams { max_size: Some(6), nvars: Some(6), max_deg: Some(6), ..Default::default() };
    let r = run_check(CheckId::Conjectures, &p).map_err(|e| e.to_string())?;
    if r.status != Status::Match {
        return Err(r.to_string());
    }
    let bar = r.findings.iter().filter(|f| f.instance.starts_with("bar")).count();
    let rpp = r.findings.iter().filter(|f| f.instance.starts_with("rpp")).count();
    Ok(format!("{bar} bar and {rpp} reverse plane partition instances MATCH"))
}

fn criterion_flip() -> Outcome {
    let p = CheckParams { max_size: Some(6), nvars: Some(3), max_deg: Some(8), ..Default::default() };
    run_default(CheckId::Flip, p, Status::Pass)
}

fn criterion_symmetrization() -> Outcome {
    run_default(CheckId::Symmetrization, CheckParams { trials: Some(20), seed: Some(0), ..Default::default() }, Status::Pass)
}

fn criterion_beta_zero() -> Outcome {
    let zero = BigInt::from(0);
    let empty = StrictPartition::empty();
    let mut n = 0;
    for lam in strict_up_to(5) {
        let cap = lam.size() + 2;
        let shape = SkewShape::straight(lam.clone());
        for flavor in [Flavor::P, Flavor::Q] {
            let classical = classical_pq_sym(flavor, &shape, None).map_err(|e| e.to_string())?;
            let candidates = [
                ("G", gp_gq_sym(flavor, &shape, cap, None).map_err(|e| e.to_string())?),
                ("g", dual_sym(flavor, &lam).map_err(|e| e.to_string())?),
                ("j", jp_jq_sym(flavor, &lam, &empty).map_err(|e| e.to_string())?),
            ];
            for (tag, f) in candidates {
                if f.specialize_beta_int(&zero) != *classical {
                    return Err(format!("{tag}{flavor}({lam}) at beta=0 differs from {flavor}({lam})"));
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} degenerations"))
}

fn grading_and_symmetry() -> Result<usize, String> {
    let mut n = 0;
    for lam in strict_up_to(5) {
        for mu in strict_subpartitions(&lam) {
            let size = i64::from(lam.size() - mu.size());
            let shape = SkewShape::new(lam.clone(), mu.clone());
            for flavor in [Flavor::P, Flavor::Q] {
                let big = gp_gq(flavor, &shape, 3, Some(lam.size() + 3)).map_err(|e| e.to_string())?;
                let dual = dual_skew(flavor, &lam, &mu, 3).map_err(|e| e.to_string())?;
                let bar = jp_jq(flavor, &lam, &mu, 3).map_err(|e| e.to_string())?;
                let graded = big.is_graded(size, false) && dual.is_graded(size, true) && bar.is_graded(size, true);
                if !graded {
                    return Err(format!("grading fails for {flavor} ({lam})/({mu})"));
                }
                for p in [&big, &dual, &bar] {
                    if !same_poly(p, &p.permute(&[1, 0, 2])) || !same_poly(p, &p.permute(&[0, 2, 1])) {
                        return Err(format!("not symmetric: {flavor} ({lam})/({mu})"));
                    }
                }
                n += 1;
            }
        }
    }
    Ok(n)
}

fn round_trips() -> Result<usize, String> {
    let mut n = 0;
    for lam in strict_up_to(5) {
        let cap = lam.size() + 3;
        let shape = SkewShape::straight(lam.clone());
        let cases: [(SymPoly, Basis, Option<u32>); 3] = [
            ((*gp_gq_sym(Flavor::Q, &shape, cap, None).map_err(|e| e.to_string())?).clone(), Basis::GP, Some(cap)),
            ((*dual_sym(Flavor::Q, &lam).map_err(|e| e.to_string())?).clone(), Basis::Gp, None),
            ((*dual_sym(Flavor::P, &lam).map_err(|e| e.to_string())?).clone(), Basis::Schur, None),
        ];
        for (f, basis, cap) in cases {
            let e = expand_sym(&f, basis, cap).map_err(|e| e.to_string())?;
            let back = recombine(&e, cap, None).map_err(|e| e.to_string())?;
            if !e.residual_zero() || back != f {
                return Err(format!("round trip through {basis} fails for ({lam})"));
            }
            n += 1;
        }
    }
    Ok(n)
}

fn structure_constants() -> Result<(usize, usize), String> {
    let small: Vec<StrictPartition> = strict_up_to(4).into_iter().filter(|p| !p.is_empty()).collect();
    let mut nonneg = 0;
    for (i, mu) in small.iter().enumerate() {
        for nu in &small[i..] {
            let cap = mu.size() + nu.size() + 2;
            let t = StructureTable::compute(StructureKind::A, mu, nu, cap).map_err(|e| e.to_string())?;
            if !t.all_nonnegative() {
                return Err(format!("negative a-constant for ({mu}),({nu})"));
            }
            nonneg += 1;
        }
    }
    let mut vanish = 0;
    let three: Vec<StrictPartition> = strict_up_to(3).into_iter().filter(|p| !p.is_empty()).collect();
    for mu in &three {
        for nu in &three {
            for kind in [StructureKind::A, StructureKind::B] {
                let t = StructureTable::compute(kind, mu, nu, 7).map_err(|e| e.to_string())?;
                for lam in t.entries.keys() {
                    let legal = mu.is_contained_in(lam) && nu.is_contained_in(lam) && lam.size() >= mu.size() + nu.size();
                    if !legal && t.get(lam) != BigInt::from(0) {
                        return Err(format!("{kind} constant nonzero at ({lam}) for ({mu}),({nu})"));
                    }
                }
                vanish += 1;
            }
        }
    }
    Ok((nonneg, vanish))
}

fn onerow_bijection() -> Result<usize, String> {
    let mut n_checked = 0;
    for n in 1..=3u32 {
        let row = sp(&n.to_string());
        let longer = SkewShape::straight(sp(&(n + 1).to_string()));
        for max_value in 1..=3u32 {
            let cap = 3;
            let source = Enumerator::new(Family::SetShYtQ, &SkewShape::straight(row.clone()), max_value, Some(cap))
                .map_err(|e| e.to_string())?
                .collect();
            let fixed: BTreeSet<String> = RestrictedFamily::new(row.clone(), row.clone())
                .and_then(|r| r.enumerate(max_value, Some(cap)))
                .map_err(|e| e.to_string())?
                .iter()
                .map(ToString::to_string)
                .collect();
            let moved: BTreeSet<String> = Enumerator::new(Family::SetShYtP, &longer, max_value, Some(cap - 1))
                .map_err(|e| e.to_string())?
                .collect()
                .iter()
                .map(ToString::to_string)
                .collect();
            let mut got_fixed = BTreeSet::new();
            let mut got_moved = BTreeSet::new();
            for t in &source {
                match onerow_map(t).map_err(|e| e.to_string())? {
                    OneRowImage::Fixed(s) => {
                        got_fixed.insert(s.to_string());
                    }
                    OneRowImage::Mapped(s) => {
                        if s.weight(Family::SetShYtP) != t.weight(Family::SetShYtQ) {
                            return Err(format!("weight changes on {t}"));
                        }
                        got_moved.insert(s.to_string());
                    }
                }
            }
            if got_fixed.len() + got_moved.len() != source.len() || got_fixed != fixed || got_moved != moved {
                return Err(format!("one-row map is not a bijection for n={n}, max value {max_value}"));
            }
            n_checked += source.len();
        }
    }
    Ok(n_checked)
}

fn criterion_properties() -> Outcome {
    let graded = grading_and_symmetry()?;
    let trips = round_trips()?;
    let (nonneg, vanish) = structure_constants()?;
    let onerow = onerow_bijection()?;
    Ok(format!(
        "{graded} graded symmetric shapes, {trips} round trips, {nonneg} a-tables nonnegative, {vanish} vanishing tables, {onerow} one-row tableaux"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("worked expansions", criterion_expansions),
        ("GQ to GP sweep", criterion_gq_to_gp),
        ("overlap matrix inverse", criterion_overlap_matrix),
        ("Cauchy and skew Cauchy", criterion_cauchy),
        ("Schur expansions of duals", criterion_schur_examples),
        ("tableau formula conjectures", criterion_conjectures),
        ("flip invariance", criterion_flip),
        ("symmetrization", criterion_symmetrization),
        ("beta = 0 degenerations", criterion_beta_zero),
        ("property suites", criterion_properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why}; {secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
