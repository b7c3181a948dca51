//! The one-row generating series
//! `(1/(1+βu)) Π_j (1+(u⁻¹+β)x_j)/(1+(u⁻¹+β)x̄_j)`, whose coefficient of
//! `u^{−n}` is `GQ_{(n)}`.

use smallvec::SmallVec;

use crate::polyring::{BetaInt, BetaPoly, Monomial};

/// Coefficients of `u^{−n}` for `0 ≤ n ≤ max_power`, in `nvars` variables
/// with x-degree at most `max_deg`.
///
/// With `t = u⁻¹` each factor is `(1+(t+β)x)(1+βx)/(1−tx)`, and the prefactor
/// `1/(1+βu) = Σ_k (−β)^k t^{−k}` shifts `t`-exponents down.
pub fn gq_onerow_series(nvars: usize, max_power: u32, max_deg: u32) -> Vec<BetaPoly> {
    let n = nvars + 1;
    let t = nvars;
    let total = Some(2 * max_deg);
    let mono = |xi: Option<(usize, u32)>, te: u32| -> Monomial {
        let mut m: Monomial = SmallVec::from_elem(0, n);
        if let Some((i, e)) = xi {
            m[i] = e as u16;
        }
        m[t] = te as u16;
        m
    };
    let mut acc = BetaPoly::one(n, total).with_split(nvars);
    for i in 0..nvars {
        // (1+(t+β)x)(1+βx) = 1 + tx + 2βx + βtx² + β²x²
        let mut num = BetaPoly::zero(n, total);
        num.add_term(mono(None, 0), &BetaInt::one());
        num.add_term(mono(Some((i, 1)), 1), &BetaInt::one());
        num.add_term(mono(Some((i, 1)), 0), &BetaInt::from_coeffs(vec![0.into(), 2.into()]));
        num.add_term(mono(Some((i, 2)), 1), &BetaInt::beta_pow(1));
        num.add_term(mono(Some((i, 2)), 0), &BetaInt::beta_pow(2));
        let mut geo = BetaPoly::zero(n, total);
        for k in 0..=max_deg {
            geo.add_term(mono(Some((i, k)), k), &BetaInt::one());
        }
        acc = (&acc * &num).retain_bidegree(nvars, max_deg, max_deg);
        acc = (&acc * &geo).retain_bidegree(nvars, max_deg, max_deg);
    }
    let t_coeff = |e: u32| -> BetaPoly {
        let mut out = BetaPoly::zero(nvars, Some(max_deg));
        for (m, c) in acc.terms() {
            if u32::from(m[t]) == e {
                out.add_term(m[..nvars].iter().copied().collect(), c);
            }
        }
        out
    };
    let t_coeffs: Vec<BetaPoly> = (0..=max_deg).map(t_coeff).collect();
    (0..=max_power)
        .map(|p| {
            let mut out = BetaPoly::zero(nvars, Some(max_deg));
            for (k, c) in t_coeffs.iter().enumerate().skip(p as usize) {
                let shift = (k - p as usize) as u32;
                let sign = if shift % 2 == 0 { 1 } else { -1 };
                out += &c.scale(&BetaInt::monomial(sign.into(), shift));
            }
            out
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::families::gp_gq;
    use crate::genfun::Flavor;
    use crate::shapes::{SkewShape, StrictPartition};

    #[test]
    fn first_coefficients() {
        let s = gq_onerow_series(1, 2, 2);
        assert_eq!(s[0], BetaPoly::one(1, Some(2)));
        assert_eq!(s[1].to_string(), "2x₁+βx₁²");
    }

    #[test]
    fn matches_one_row_gq() {
        let s = gq_onerow_series(2, 4, 5);
        for (n, c) in s.iter().enumerate() {
            let shape = SkewShape::straight(StrictPartition::new(if n == 0 { vec![] } else { vec![n as u32] }).unwrap());
            assert_eq!(c, &gp_gq(Flavor::Q, &shape, 2, Some(5)).unwrap(), "n={n}");
        }
    }
}
