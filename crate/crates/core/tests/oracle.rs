//! Values frozen from an independent brute-force computation
//! (`tools/oracle.py`): explicit enumeration of shifted set-valued tableaux
//! for the G-functions, a linear solve against the truncated Cauchy kernel
//! for the dual functions, and a linear solve for the structure constants.

use std::collections::BTreeMap;

use kshift_core::genfun::{dual_gp_gq, gp_gq, Flavor, StructureKind, StructureTable};
use kshift_core::polyring::{BetaInt, BetaPoly};
use kshift_core::shapes::{SkewShape, StrictPartition};
use kshift_core::tableaux::{Enumerator, Family};
use num_bigint::BigInt;

/// `(exponents, power of β, integer coefficient)`.
type Row = (&'static [u16], u32, i64);

const GP_21: &[Row] = &[
        (&[0, 1, 2], 0, 1),
        (&[0, 2, 1], 0, 1),
        (&[0, 2, 2], 1, 1),
        (&[1, 0, 2], 0, 1),
        (&[1, 1, 1], 0, 2),
        (&[1, 1, 2], 1, 3),
        (&[1, 2, 0], 0, 1),
        (&[1, 2, 1], 1, 3),
        (&[1, 2, 2], 2, 2),
        (&[2, 0, 1], 0, 1),
        (&[2, 0, 2], 1, 1),
        (&[2, 1, 0], 0, 1),
        (&[2, 1, 1], 1, 3),
        (&[2, 1, 2], 2, 2),
        (&[2, 2, 0], 1, 1),
        (&[2, 2, 1], 2, 2),
];

const GQ_2: &[Row] = &[
        (&[0, 2], 0, 2),
        (&[0, 3], 1, 1),
        (&[1, 1], 0, 4),
        (&[1, 2], 1, 6),
        (&[1, 3], 2, 2),
        (&[2, 0], 0, 2),
        (&[2, 1], 1, 6),
        (&[2, 2], 2, 5),
        (&[3, 0], 1, 1),
        (&[3, 1], 2, 2),
];

const GQ_31: &[Row] = &[
        (&[1, 3], 0, 4),
        (&[1, 4], 1, 2),
        (&[2, 2], 0, 8),
        (&[2, 3], 1, 14),
        (&[2, 4], 2, 5),
        (&[3, 1], 0, 4),
        (&[3, 2], 1, 14),
        (&[3, 3], 2, 14),
        (&[4, 1], 1, 2),
        (&[4, 2], 2, 5),
];

const GP_31_1: &[Row] = &[
        (&[0, 3], 0, 1),
        (&[1, 2], 0, 4),
        (&[1, 3], 1, 4),
        (&[2, 1], 0, 4),
        (&[2, 2], 1, 9),
        (&[2, 3], 2, 5),
        (&[3, 0], 0, 1),
        (&[3, 1], 1, 4),
        (&[3, 2], 2, 5),
];

const GQ_21_1: &[Row] = &[
        (&[0, 2], 0, 2),
        (&[0, 3], 1, 1),
        (&[1, 1], 0, 4),
        (&[1, 2], 1, 6),
        (&[1, 3], 2, 2),
        (&[2, 0], 0, 2),
        (&[2, 1], 1, 6),
        (&[2, 2], 2, 5),
        (&[3, 0], 1, 1),
        (&[3, 1], 2, 2),
];

const SMALL_GP_21: &[Row] = &[
        (&[0, 0, 2], 1, -1),
        (&[0, 1, 1], 1, -1),
        (&[0, 1, 2], 0, 1),
        (&[0, 2, 0], 1, -1),
        (&[0, 2, 1], 0, 1),
        (&[1, 0, 1], 1, -1),
        (&[1, 0, 2], 0, 1),
        (&[1, 1, 0], 1, -1),
        (&[1, 1, 1], 0, 2),
        (&[1, 2, 0], 0, 1),
        (&[2, 0, 0], 1, -1),
        (&[2, 0, 1], 0, 1),
        (&[2, 1, 0], 0, 1),
];

const SMALL_GP_3: &[Row] = &[
        (&[0, 0, 1], 2, 1),
        (&[0, 0, 2], 1, -1),
        (&[0, 0, 3], 0, 1),
        (&[0, 1, 0], 2, 1),
        (&[0, 1, 1], 1, -3),
        (&[0, 1, 2], 0, 2),
        (&[0, 2, 0], 1, -1),
        (&[0, 2, 1], 0, 2),
        (&[0, 3, 0], 0, 1),
        (&[1, 0, 0], 2, 1),
        (&[1, 0, 1], 1, -3),
        (&[1, 0, 2], 0, 2),
        (&[1, 1, 0], 1, -3),
        (&[1, 1, 1], 0, 4),
        (&[1, 2, 0], 0, 2),
        (&[2, 0, 0], 1, -1),
        (&[2, 0, 1], 0, 2),
        (&[2, 1, 0], 0, 2),
        (&[3, 0, 0], 0, 1),
];

const SMALL_GQ_21: &[Row] = &[
        (&[0, 0, 2], 1, -4),
        (&[0, 1, 1], 1, -4),
        (&[0, 1, 2], 0, 4),
        (&[0, 2, 0], 1, -4),
        (&[0, 2, 1], 0, 4),
        (&[1, 0, 1], 1, -4),
        (&[1, 0, 2], 0, 4),
        (&[1, 1, 0], 1, -4),
        (&[1, 1, 1], 0, 8),
        (&[1, 2, 0], 0, 4),
        (&[2, 0, 0], 1, -4),
        (&[2, 0, 1], 0, 4),
        (&[2, 1, 0], 0, 4),
];

const SMALL_GQ_3: &[Row] = &[
        (&[0, 0, 1], 2, 1),
        (&[0, 0, 2], 1, -1),
        (&[0, 0, 3], 0, 2),
        (&[0, 1, 0], 2, 1),
        (&[0, 1, 1], 1, -4),
        (&[0, 1, 2], 0, 4),
        (&[0, 2, 0], 1, -1),
        (&[0, 2, 1], 0, 4),
        (&[0, 3, 0], 0, 2),
        (&[1, 0, 0], 2, 1),
        (&[1, 0, 1], 1, -4),
        (&[1, 0, 2], 0, 4),
        (&[1, 1, 0], 1, -4),
        (&[1, 1, 1], 0, 8),
        (&[1, 2, 0], 0, 4),
        (&[2, 0, 0], 1, -1),
        (&[2, 0, 1], 0, 4),
        (&[2, 1, 0], 0, 4),
        (&[3, 0, 0], 0, 2),
];

fn sp(s: &str) -> StrictPartition {
    s.parse().unwrap()
}

fn expected(nvars: usize, max_deg: Option<u32>, rows: &[Row]) -> BetaPoly {
    BetaPoly::from_terms(
        nvars,
        max_deg,
        rows.iter().map(|(e, k, c)| (e.to_vec(), BetaInt::monomial(BigInt::from(*c), *k))),
    )
}

fn terms(p: &BetaPoly) -> Vec<(Vec<u16>, BetaInt)> {
    p.sorted_terms().into_iter().map(|(m, c)| (m.to_vec(), c.clone())).collect()
}

fn check_big(flavor: Flavor, outer: &str, inner: &str, nvars: usize, d: u32, rows: &[Row]) {
    let shape = SkewShape::checked(sp(outer), sp(inner)).unwrap();
    let got = gp_gq(flavor, &shape, nvars, Some(d)).unwrap();
    assert_eq!(terms(&got), terms(&expected(nvars, Some(d), rows)), "G{flavor}({outer}/{inner})");
}

#[test]
fn gp_21_three_variables() {
    check_big(Flavor::P, "2,1", "", 3, 5, GP_21);
}

#[test]
fn gq_2_two_variables() {
    check_big(Flavor::Q, "2", "", 2, 4, GQ_2);
}

#[test]
fn gq_31_two_variables() {
    check_big(Flavor::Q, "3,1", "", 2, 6, GQ_31);
}

#[test]
fn skew_gp_31_over_1() {
    check_big(Flavor::P, "3,1", "1", 2, 5, GP_31_1);
}

#[test]
fn skew_gq_21_over_1_equals_gq_2() {
    check_big(Flavor::Q, "2,1", "1", 2, 4, GQ_21_1);
    check_big(Flavor::Q, "2", "", 2, 4, GQ_21_1);
}

#[test]
fn dual_functions_three_variables() {
    for (flavor, lam, rows) in [
        (Flavor::P, "2,1", SMALL_GP_21),
        (Flavor::P, "3", SMALL_GP_3),
        (Flavor::Q, "2,1", SMALL_GQ_21),
        (Flavor::Q, "3", SMALL_GQ_3),
    ] {
        let got = dual_gp_gq(flavor, &sp(lam), 3).unwrap();
        assert_eq!(terms(&got), terms(&expected(3, None, rows)), "dual {flavor}({lam})");
    }
}

#[test]
fn a_constants_small() {
    let cases: [(&str, &str, &[(&str, i64)]); 3] = [
        ("1", "1", &[("2", 1)]),
        ("2", "1", &[("2,1", 1), ("3", 1), ("3,1", 1)]),
        ("2", "2", &[("3,1", 2), ("4", 1), ("3,2", 1), ("4,1", 2)]),
    ];
    for (mu, nu, want) in cases {
        let t = StructureTable::compute(StructureKind::A, &sp(mu), &sp(nu), 5).unwrap();
        let want: BTreeMap<StrictPartition, BigInt> = want.iter().map(|(l, c)| (sp(l), BigInt::from(*c))).collect();
        assert_eq!(t.entries, want, "a for ({mu}),({nu})");
    }
}

#[test]
fn set_valued_q_counts() {
    for (outer, max_value, want) in [("2,1", 2, 27u64), ("3,1", 3, 2673), ("2", 3, 225)] {
        let shape = SkewShape::straight(sp(outer));
        let e = Enumerator::new(Family::SetShYtQ, &shape, max_value, None).unwrap();
        assert_eq!(e.count(), want, "({outer}) up to {max_value}");
    }
}
