use rayon::prelude::*;
use serde_json::json;

use crate::genfun::{
    cap_jp_jq, doubleslash_sym, dual_skew_sym, dual_sym, gp_gq_sym, jp_jq_sym, Flavor, GenfunError,
};
use crate::polyring::{cauchy_kernel, BetaPoly};
use crate::shapes::{enumerate_strict_partitions, strict_subpartitions, PartitionConstraints, SkewShape, StrictPartition};

use super::{params, IdentityError, Tally, VerificationReport};

/// Copies a polynomial into the two-alphabet ring `(x₁..x_nx, y₁..y_ny)`,
/// starting at variable `offset`.
fn place(p: &BetaPoly, n: usize, offset: usize, cap: Option<u32>) -> BetaPoly {
    BetaPoly::from_terms(
        n,
        cap,
        p.terms().map(|(m, c)| {
            let mut e = vec![0u16; n];
            e[offset..offset + m.len()].copy_from_slice(m);
            (e, c.clone())
        }),
    )
}

fn strict_up_to(n: u32) -> Vec<StrictPartition> {
    enumerate_strict_partitions(n, PartitionConstraints::default())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    /// `GP`/`GQ` with `//` skewing on the inner side.
    Big,
    /// `JP`/`JQ` with `//`.
    BigJ,
    /// `gp`/`gq` with `/`.
    Dual,
    /// `jp`/`jq` with `/`.
    DualJ,
}

impl Family {
    fn tag(self, flavor: Flavor) -> &'static str {
        match (self, flavor) {
            (Family::Big, Flavor::P) => "GP",
            (Family::Big, Flavor::Q) => "GQ",
            (Family::BigJ, Flavor::P) => "JP",
            (Family::BigJ, Flavor::Q) => "JQ",
            (Family::Dual, Flavor::P) => "gp",
            (Family::Dual, Flavor::Q) => "gq",
            (Family::DualJ, Flavor::P) => "jp",
            (Family::DualJ, Flavor::Q) => "jq",
        }
    }

    /// `F_{λ..μ}` in `nvars` variables, truncated at `max_deg` for the
    /// infinite series.
    fn eval(
        self,
        flavor: Flavor,
        lambda: &StrictPartition,
        mu: &StrictPartition,
        nvars: usize,
        max_deg: u32,
    ) -> Result<BetaPoly, GenfunError> {
        Ok(match self {
            Family::Big => doubleslash_sym(flavor, lambda, mu, max_deg, Some(nvars))?.to_poly(nvars, Some(max_deg)),
            Family::BigJ => cap_jp_jq(flavor, lambda, mu, true, nvars, max_deg)?,
            Family::Dual => dual_skew_sym(flavor, lambda, mu)?.to_poly(nvars, None),
            Family::DualJ => jp_jq_sym(flavor, lambda, mu)?.to_poly(nvars, None),
        })
    }

    /// Unskewed `F_λ`, computed directly rather than through a skew shape.
    fn eval_straight(self, flavor: Flavor, lambda: &StrictPartition, nvars: usize, max_deg: u32) -> Result<BetaPoly, GenfunError> {
        let empty = StrictPartition::empty();
        Ok(match self {
            Family::Big => {
                gp_gq_sym(flavor, &SkewShape::straight(lambda.clone()), max_deg, Some(nvars))?.to_poly(nvars, Some(max_deg))
            }
            Family::BigJ => cap_jp_jq(flavor, lambda, &empty, false, nvars, max_deg)?,
            Family::Dual => dual_sym(flavor, lambda)?.to_poly(nvars, Some(max_deg)),
            Family::DualJ => jp_jq_sym(flavor, lambda, &empty)?.to_poly(nvars, Some(max_deg)),
        })
    }
}

/// `F_λ(x, y) = Σ_ν F_ν(x) F_{λ..ν}(y)` for the four paired families.
pub fn check_coproducts(max_size: u32, nx: usize, ny: usize, max_deg: u32) -> Result<VerificationReport, IdentityError> {
    if nx == 0 || ny == 0 {
        return Err(IdentityError::Parameter("both alphabets need at least one variable".into()));
    }
    let n = nx + ny;
    let cap = Some(max_deg);
    let mut items = Vec::new();
    for fam in [Family::Big, Family::Dual, Family::DualJ, Family::BigJ] {
        for flavor in [Flavor::P, Flavor::Q] {
            for lam in strict_up_to(max_size) {
                items.push((fam, flavor, lam));
            }
        }
    }
    let tally = items
        .par_iter()
        .map(|(fam, flavor, lam)| {
            let mut t = Tally::default();
            let key = (fam.tag(*flavor), vec![lam.clone()]);
            t.run(key.clone(), |t| {
                let whole = fam.eval_straight(*flavor, lam, n, max_deg)?;
                let lhs = place(&whole, n, 0, cap).with_split(nx);
                let mut rhs = BetaPoly::zero(n, cap).with_split(nx);
                for nu in strict_subpartitions(lam) {
                    let fx = place(&fam.eval_straight(*flavor, &nu, nx, max_deg)?, n, 0, cap);
                    let fy = place(&fam.eval(*flavor, lam, &nu, ny, max_deg)?, n, nx, cap);
                    rhs += &(&fx * &fy);
                }
                t.check_poly(key, "", &lhs, &rhs);
                Ok(())
            });
            t
        })
        .reduce(Tally::default, Tally::merge);
    let p = params([
        ("max_size", json!(max_size)),
        ("nx", json!(nx)),
        ("ny", json!(ny)),
        ("max_deg", json!(max_deg)),
    ]);
    Ok(tally.finish("coproducts", p, false))
}

/// Which side of a skew Cauchy identity carries the kernel, and which
/// alphabets are negated in it.
#[derive(Debug, Clone, Copy)]
struct Variant {
    tag: &'static str,
    x_family: Family,
    y_family: Family,
    x_flavor: Flavor,
    kernel_left: bool,
    negate_x: bool,
    negate_y: bool,
}

const fn variant(
    tag: &'static str,
    x_family: Family,
    y_family: Family,
    x_flavor: Flavor,
    kernel_left: bool,
    negate_x: bool,
    negate_y: bool,
) -> Variant {
    Variant { tag, x_family, y_family, x_flavor, kernel_left, negate_x, negate_y }
}

const SKEW_CAUCHY: [Variant; 2] = [
    variant("GP-gq", Family::Big, Family::Dual, Flavor::P, false, false, false),
    variant("GQ-gp", Family::Big, Family::Dual, Flavor::Q, false, false, false),
];

const TWISTED: [Variant; 6] = [
    variant("(a) GP-jq", Family::Big, Family::DualJ, Flavor::P, true, false, true),
    variant("(b) GQ-jp", Family::Big, Family::DualJ, Flavor::Q, true, false, true),
    variant("(c) JP-gq", Family::BigJ, Family::Dual, Flavor::P, true, true, false),
    variant("(d) JQ-gp", Family::BigJ, Family::Dual, Flavor::Q, true, true, false),
    variant("(e) JP-jq", Family::BigJ, Family::DualJ, Flavor::P, false, true, true),
    variant("(f) JQ-jp", Family::BigJ, Family::DualJ, Flavor::Q, false, true, true),
];

struct Setup {
    nx: usize,
    ny: usize,
    max_deg: u32,
    kernel: BetaPoly,
}

impl Setup {
    fn n(&self) -> usize {
        self.nx + self.ny
    }

    fn cap(&self) -> Option<u32> {
        Some(2 * self.max_deg)
    }

    fn kernel_for(&self, v: &Variant) -> BetaPoly {
        let mut which = Vec::new();
        if v.negate_x {
            which.extend(0..self.nx);
        }
        if v.negate_y {
            which.extend(self.nx..self.n());
        }
        self.kernel.negate_alphabet(&which)
    }

    fn trim(&self, p: &BetaPoly) -> BetaPoly {
        p.retain_bidegree(self.nx, self.max_deg, self.max_deg)
    }

    /// `F_{outer..inner}(x) · F'_{other/inner'}(y)`.
    fn pair(
        &self,
        v: &Variant,
        x: (&StrictPartition, &StrictPartition),
        y: (&StrictPartition, &StrictPartition),
    ) -> Result<BetaPoly, GenfunError> {
        let fx = v.x_family.eval(v.x_flavor, x.0, x.1, self.nx, self.max_deg)?;
        let fy = v.y_family.eval(v.x_flavor.other(), y.0, y.1, self.ny, self.max_deg)?;
        let px = place(&fx, self.n(), 0, self.cap());
        let py = place(&fy, self.n(), self.nx, self.cap());
        Ok(self.trim(&(&px * &py)))
    }

    /// Both sides of `Σ_λ F_{λ..μ}(x) F'_{λ/ν}(y) ~ Σ_κ F_{ν..κ}(x) F'_{μ/κ}(y)`
    /// with the kernel placed on the side the variant asks for.
    fn sides(&self, v: &Variant, mu: &StrictPartition, nu: &StrictPartition) -> Result<(BetaPoly, BetaPoly), GenfunError> {
        let n = self.n();
        let mut left = BetaPoly::zero(n, self.cap()).with_split(self.nx);
        for lam in strict_up_to(self.max_deg + mu.size()) {
            if mu.is_contained_in(&lam) && nu.is_contained_in(&lam) {
                left += &self.pair(v, (&lam, mu), (&lam, nu))?;
            }
        }
        let mut right = BetaPoly::zero(n, self.cap()).with_split(self.nx);
        for kappa in strict_subpartitions(mu) {
            if kappa.is_contained_in(nu) {
                right += &self.pair(v, (nu, &kappa), (mu, &kappa))?;
            }
        }
        let kernel = self.kernel_for(v);
        if v.kernel_left {
            left = self.trim(&(&kernel * &left));
        } else {
            right = self.trim(&(&kernel * &right));
        }
        Ok((left, right))
    }
}

/// The Cauchy kernel identities, their skew versions, and the six
/// ω-twisted variants with negated alphabets.
pub fn check_cauchy_family(max_size: u32, nx: usize, ny: usize, max_deg: u32) -> Result<VerificationReport, IdentityError> {
    if nx == 0 || ny == 0 {
        return Err(IdentityError::Parameter("both alphabets need at least one variable".into()));
    }
    let setup = Setup { nx, ny, max_deg, kernel: cauchy_kernel(nx, ny, max_deg) };
    let empty = StrictPartition::empty();
    let mut items: Vec<(&'static str, Variant, StrictPartition, StrictPartition)> = Vec::new();
    for v in SKEW_CAUCHY {
        let tag = if v.x_flavor.is_q() { "kernel GQ-gp" } else { "kernel GP-gq" };
        items.push((tag, v, empty.clone(), empty.clone()));
    }
    let shapes = strict_up_to(max_size);
    for v in SKEW_CAUCHY.iter().chain(TWISTED.iter()) {
        for mu in &shapes {
            for nu in &shapes {
                items.push((v.tag, *v, mu.clone(), nu.clone()));
            }
        }
    }
    let tally = items
        .par_iter()
        .map(|(tag, v, mu, nu)| {
            let mut t = Tally::default();
            let key = (*tag, vec![mu.clone(), nu.clone()]);
            t.run(key.clone(), |t| {
                if tag.starts_with("kernel") {
                    let (left, _) = setup.sides(v, mu, nu)?;
                    t.check_poly(key, "", &left, &setup.kernel);
                } else {
                    let (left, right) = setup.sides(v, mu, nu)?;
                    t.check_poly(key, "", &left, &right);
                }
                Ok(())
            });
            t
        })
        .reduce(Tally::default, Tally::merge);
    let p = params([
        ("max_size", json!(max_size)),
        ("nx", json!(nx)),
        ("ny", json!(ny)),
        ("max_deg", json!(max_deg)),
    ]);
    Ok(tally.finish("cauchy", p, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::Status;

    #[test]
    fn coproducts_tiny() {
        let r = check_coproducts(2, 1, 1, 3).unwrap();
        assert_eq!(r.status, Status::Pass, "{r}");
        assert_eq!(r.cases, 8 * 3);
    }

    #[test]
    fn cauchy_tiny() {
        let r = check_cauchy_family(1, 1, 1, 3).unwrap();
        assert_eq!(r.status, Status::Pass, "{r}");
    }

    #[test]
    fn rejects_empty_alphabet() {
        assert!(check_cauchy_family(1, 0, 1, 3).is_err());
        assert!(check_coproducts(1, 1, 0, 3).is_err());
    }
}
