use kshift_core::genfun::{dual_skew, expand_sym, gp_gq, gp_gq_sym, recombine, Basis, Flavor};
use kshift_core::identities::{run_check, CheckId, CheckParams};
use kshift_core::polyring::{BetaInt, BetaPoly};
use kshift_core::shapes::{Partition, SkewShape, StrictPartition};
use num_bigint::BigInt;
use proptest::prelude::*;

const NVARS: usize = 3;
const CAP: u32 = 6;

fn same(a: &BetaPoly, b: &BetaPoly) -> bool {
    a.nvars() == b.nvars() && a.sorted_terms() == b.sorted_terms()
}

fn poly() -> impl Strategy<Value = BetaPoly> {
    let term = (prop::collection::vec(0u16..3, NVARS), -3i64..4, 0u32..3);
    prop::collection::vec(term, 0..6).prop_map(|ts| {
        BetaPoly::from_terms(
            NVARS,
            Some(CAP),
            ts.into_iter().map(|(e, c, k)| (e, BetaInt::monomial(BigInt::from(c), k))),
        )
    })
}

fn strict(max_part: u32) -> impl Strategy<Value = StrictPartition> {
    prop::collection::btree_set(1..=max_part, 0..4)
        .prop_map(|s| StrictPartition::new(s.into_iter().rev().collect()).unwrap())
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..6, 0..5).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

/// A strict partition together with a strict subpartition.
fn skew() -> impl Strategy<Value = (StrictPartition, StrictPartition)> {
    strict(4).prop_flat_map(|outer| {
        let parts = outer.parts().to_vec();
        let len = parts.len();
        (Just(outer), 0..=len, prop::collection::vec(0u32..4, len)).prop_map(move |(outer, k, cuts)| {
            let mut inner: Vec<u32> = Vec::new();
            for (i, cut) in cuts.iter().take(k).enumerate() {
                let bound = inner.last().map_or(parts[i], |&prev| parts[i].min(prev - 1));
                let v = bound.saturating_sub(*cut);
                if v == 0 {
                    break;
                }
                inner.push(v);
            }
            (outer, StrictPartition::new(inner).unwrap())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_commutative_and_associative(a in poly(), b in poly(), c in poly()) {
        let ab = a.checked_add(&b).unwrap();
        prop_assert!(same(&ab, &b.checked_add(&a).unwrap()));
        let left = ab.checked_add(&c).unwrap();
        let right = a.checked_add(&b.checked_add(&c).unwrap()).unwrap();
        prop_assert!(same(&left, &right));
        prop_assert!(a.checked_sub(&a).unwrap().is_zero());
    }

    #[test]
    fn multiplication_distributes(a in poly(), b in poly(), c in poly()) {
        let left = a.checked_mul(&b.checked_add(&c).unwrap()).unwrap();
        let right = a.checked_mul(&b).unwrap().checked_add(&a.checked_mul(&c).unwrap()).unwrap();
        prop_assert!(same(&left, &right));
        prop_assert!(same(&a.checked_mul(&b).unwrap(), &b.checked_mul(&a).unwrap()));
        prop_assert!(same(&a.checked_mul(&BetaPoly::one(NVARS, Some(CAP))).unwrap(), &a));
    }

    #[test]
    fn json_round_trip(a in poly()) {
        let back = BetaPoly::from_json(&a.to_json()).unwrap();
        prop_assert!(same(&a, &back));
    }

    #[test]
    fn strict_partition_text_round_trip(p in strict(8)) {
        let back: StrictPartition = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn partition_text_round_trip(p in partition()) {
        let back: Partition = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn skew_functions_are_symmetric_and_graded((outer, inner) in skew(), q in any::<bool>()) {
        let flavor = if q { Flavor::Q } else { Flavor::P };
        let size = i64::from(outer.size() - inner.size());
        let shape = SkewShape::checked(outer.clone(), inner.clone()).unwrap();
        let big = gp_gq(flavor, &shape, 3, Some(outer.size() + 2)).unwrap();
        let dual = dual_skew(flavor, &outer, &inner, 3).unwrap();
        prop_assert!(big.is_graded(size, false));
        prop_assert!(dual.is_graded(size, true));
        for p in [&big, &dual] {
            prop_assert!(same(p, &p.permute(&[1, 0, 2])));
            prop_assert!(same(p, &p.permute(&[2, 1, 0])));
        }
    }

    #[test]
    fn expansion_recombines(lam in strict(4), q in any::<bool>()) {
        let flavor = if q { Flavor::Q } else { Flavor::P };
        let cap = lam.size() + 2;
        let f = gp_gq_sym(flavor, &SkewShape::straight(lam.clone()), cap, None).unwrap();
        let e = expand_sym(&f, Basis::GP, Some(cap)).unwrap();
        prop_assert!(e.residual_zero());
        prop_assert_eq!(&recombine(&e, Some(cap), None).unwrap(), &*f);
    }

    #[test]
    fn one_row_series_report_is_deterministic(max_power in 1u32..3) {
        let p = CheckParams { max_power: Some(max_power), ..CheckParams::default() };
        let a = run_check(CheckId::OnerowSeries, &p).unwrap();
        let b = run_check(CheckId::OnerowSeries, &p).unwrap();
        prop_assert_eq!(a.to_json(), b.to_json());
    }
}
