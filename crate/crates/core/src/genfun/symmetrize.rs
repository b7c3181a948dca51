//! Exact evaluation of the symmetrization formulas for GP, GQ and the
//! auxiliary functions `A_λ`, `B_λ`, at a rational point.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::polyring::RationalPoint;

use super::GenfunError;

pub const MAX_SYMMETRIZE_VARS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetrizeKind {
    GP,
    GQ,
    A,
    B,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Evaluates, with `r` the last nonzero position of `lambda`,
///
/// * GP/GQ: `(1/(n−r)!) Σ_{w∈S_n} w(x^λ Π_{i≤r} f(x_i) Π_{j>i} (x_i⊕x_j)/(x_i⊖x_j))`
/// * A/B: the same summand averaged over `S_r` only,
///
/// where `f = 1` for GP and A, and `f = 2+βx` for GQ and B.
pub fn symmetrization_eval(kind: SymmetrizeKind, lambda: &[u32], pt: &RationalPoint) -> Result<BigRational, GenfunError> {
    let x = &pt.coords;
    let n = x.len();
    if n > MAX_SYMMETRIZE_VARS {
        return Err(GenfunError::TooManyVariables { max: MAX_SYMMETRIZE_VARS, got: n });
    }
    if lambda.len() > n {
        return Err(GenfunError::TooFewVariables { need: lambda.len(), got: n });
    }
    let beta = &pt.beta;
    let one = BigRational::one();
    for i in 0..n {
        if (&one + beta * &x[i]).is_zero() || (0..i).any(|j| x[j] == x[i]) {
            return Err(GenfunError::SingularPoint);
        }
    }
    let r = lambda.iter().rposition(|&v| v != 0).map_or(0, |p| p + 1);
    let with_f = matches!(kind, SymmetrizeKind::GQ | SymmetrizeKind::B);
    let oplus = |a: &BigRational, b: &BigRational| a + b + beta * a * b;
    let ominus = |a: &BigRational, b: &BigRational| (a - b) / (&one + beta * b);
    let term = |w: &[usize]| -> BigRational {
        let mut acc = BigRational::one();
        for i in 0..r {
            let xi = &x[w[i]];
            acc *= num_traits::pow(xi.clone(), lambda[i] as usize);
            if with_f {
                acc *= BigRational::from_integer(2.into()) + beta * xi;
            }
            for &wj in &w[i + 1..] {
                let xj = &x[wj];
                acc *= oplus(xi, xj) / ominus(xi, xj);
            }
        }
        acc
    };
    let mut total = BigRational::zero();
    match kind {
        SymmetrizeKind::GP | SymmetrizeKind::GQ => {
            for w in (0..n).permutations(n) {
                total += term(&w);
            }
            Ok(total / BigRational::from_integer(factorial(n - r)))
        }
        SymmetrizeKind::A | SymmetrizeKind::B => {
            if r == 0 {
                return Ok(one);
            }
            for head in (0..r).permutations(r) {
                let w: Vec<usize> = head.into_iter().chain(r..n).collect();
                total += term(&w);
            }
            Ok(total / BigRational::from_integer(factorial(r)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::families::gp_gq;
    use crate::genfun::Flavor;
    use crate::shapes::SkewShape;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn small_values() {
        let pt = RationalPoint::from_ints(1, &[2]);
        assert_eq!(symmetrization_eval(SymmetrizeKind::GQ, &[1], &pt).unwrap(), q(8));
        assert_eq!(symmetrization_eval(SymmetrizeKind::GP, &[], &RationalPoint::from_ints(3, &[1, 2, 5])).unwrap(), q(1));
        assert_eq!(symmetrization_eval(SymmetrizeKind::A, &[0, 0], &RationalPoint::from_ints(3, &[1, 2])).unwrap(), q(1));
    }

    #[test]
    fn singular_and_size_errors() {
        let same = RationalPoint::from_ints(1, &[2, 2]);
        assert_eq!(symmetrization_eval(SymmetrizeKind::GP, &[1], &same), Err(GenfunError::SingularPoint));
        let pole = RationalPoint::from_ints(1, &[-1, 2]);
        assert_eq!(symmetrization_eval(SymmetrizeKind::GP, &[1], &pole), Err(GenfunError::SingularPoint));
        let big = RationalPoint::from_ints(1, &[1, 2, 3, 4, 5, 6, 7]);
        assert!(matches!(symmetrization_eval(SymmetrizeKind::GP, &[1], &big), Err(GenfunError::TooManyVariables { .. })));
    }

    #[test]
    fn matches_tableau_polynomial() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let shape = SkewShape::straight("2,1".parse().unwrap());
        for (kind, flavor) in [(SymmetrizeKind::GP, Flavor::P), (SymmetrizeKind::GQ, Flavor::Q)] {
            let poly = gp_gq(flavor, &shape, 2, None).unwrap();
            for _ in 0..5 {
                let b: i64 = rng.gen_range(-3..=3);
                let x1: i64 = rng.gen_range(1..=9);
                let x2 = x1 + rng.gen_range(1..=5);
                let pt = RationalPoint::new(q(b), vec![q(x1), BigRational::new(x2.into(), 2.into())]);
                match symmetrization_eval(kind, &[2, 1], &pt) {
                    Ok(v) => assert_eq!(v, poly.eval_rational(&pt).unwrap()),
                    Err(GenfunError::SingularPoint) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn permutation_invariance() {
        let a = RationalPoint::from_ints(2, &[1, 3, 4]);
        let b = RationalPoint::from_ints(2, &[4, 1, 3]);
        for kind in [SymmetrizeKind::GP, SymmetrizeKind::GQ] {
            assert_eq!(symmetrization_eval(kind, &[2, 1], &a).unwrap(), symmetrization_eval(kind, &[2, 1], &b).unwrap());
        }
    }
}
