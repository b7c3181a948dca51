use std::collections::BTreeMap;

use kshift_core::genfun::BasisExpansion;
use kshift_core::polyring::{BetaInt, BetaPoly};
use kshift_core::shapes::Partition;
use num_rational::BigRational;
use serde_json::{json, Value};

fn rational_text(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Text of `Σ c·x^m` with rational coefficients, e.g. `2x₁+(3/2)x₁²`.
pub fn specialized_text(p: &BetaPoly, beta: &BigRational) -> String {
    let terms = p.specialize_beta(beta);
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in terms.iter().enumerate() {
        let negative = c < &BigRational::from_integer(0.into());
        let mag = if negative { -c.clone() } else { c.clone() };
        if negative {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let mono = p.monomial_text(m);
        let one = mag == BigRational::from_integer(1.into());
        if !one || mono.is_empty() {
            let t = rational_text(&mag);
            if mag.is_integer() || mono.is_empty() {
                out.push_str(&t);
            } else {
                out.push_str(&format!("({t})"));
            }
        }
        out.push_str(&mono);
    }
    out
}

pub fn specialized_json(p: &BetaPoly, beta: &BigRational) -> Value {
    let terms: Vec<Value> = p
        .specialize_beta(beta)
        .iter()
        .map(|(m, c)| json!({ "exponents": m.to_vec(), "coeff": rational_text(c) }))
        .collect();
    json!({ "nvars": p.nvars(), "beta": rational_text(beta), "terms": terms })
}

fn coeff_text(c: &BetaInt, beta: Option<&BigRational>) -> String {
    match beta {
        Some(b) => rational_text(&c.eval(b)),
        None => c.to_string(),
    }
}

/// `{(3,2):4, (4,2):2β}` followed by the residual status.
pub fn expansion_text(e: &BasisExpansion, beta: Option<&BigRational>) -> String {
    let items: Vec<String> = e.coeffs.iter().map(|(k, c)| format!("({k}):{}", coeff_text(c, beta))).collect();
    let residual = if e.residual_zero() { "zero".to_string() } else { format!("nonzero ({} terms)", e.residual.len()) };
    format!("{} basis: {{{}}}\nresidual: {residual}", e.basis, items.join(", "))
}

pub fn expansion_json(e: &BasisExpansion, beta: Option<&BigRational>) -> Value {
    let mut v = e.to_json_value();
    v["max_deg"] = json!(e.max_deg);
    if let Some(b) = beta {
        let values: BTreeMap<String, String> =
            e.coeffs.iter().map(|(k, c): (&Partition, &BetaInt)| (k.to_string(), rational_text(&c.eval(b)))).collect();
        v["beta"] = json!(rational_text(b));
        v["values"] = json!(values);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn specialization_text() {
        // 2x + βx² in one variable
        let mut p = BetaPoly::zero(1, Some(2));
        p.add_term([1u16].into_iter().collect(), &BetaInt::from_int(2));
        p.add_term([2u16].into_iter().collect(), &BetaInt::beta_pow(1));
        assert_eq!(specialized_text(&p, &q(3, 2)), "2x₁+(3/2)x₁²");
        assert_eq!(specialized_text(&p, &q(-1, 1)), "2x₁-x₁²");
        assert_eq!(specialized_text(&p.scale_int(0), &q(1, 1)), "0");
        let j = specialized_json(&p, &q(1, 3));
        assert_eq!(j["terms"][1]["coeff"], "1/3");
    }
}
