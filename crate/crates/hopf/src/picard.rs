//! Line bundles `L_a`: degree under the two normalizations, the piecewise
//! cohomology tables, and restriction to the canonical elliptic curves.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::elliptic::EllipticPic;
use crate::error::{Error, Result};
use crate::factors::{angle_dist, detect_monomial, Factor, SignConstraint};
use crate::manifold::{HopfManifold, Kind};

/// Dimensions `h^0, ..., h^n` of the bundle-valued cohomology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyVector {
    pub h: Vec<u64>,
}

/// Degree of `L_a`. Classical manifolds use `ln|a| / ln|mu|`, normalized so
/// the pullback of `O(m)` has degree `m`; every other kind uses `-ln|a|`,
/// which keeps `deg L_{mu_i^m} > 0` for positive `m`.
pub fn degree(x: &HopfManifold, a: &Factor) -> Result<f64> {
    let (lm, _) = a.log_value(x)?;
    match x.kind() {
        Kind::Classical => Ok(lm / x.log_moduli()[0]),
        _ => Ok(-lm),
    }
}

/// Writes `a = mu^m` on a classical manifold if possible. Pure monomials
/// are resolved exactly (the value is `mu` to the exponent sum); numeric
/// scalars go through the modulus equation, capped at `exp_bound`.
pub fn classical_power(x: &HopfManifold, a: &Factor, cfg: &Config) -> Result<Option<i64>> {
    if a.is_pure_monomial() {
        return Ok(Some(a.exponents().iter().sum()));
    }
    let (lm, ar) = a.log_value(x)?;
    let l = x.log_moduli()[0];
    let t = x.args()[0];
    let m = (lm / l).round();
    if !m.is_finite() || m.abs() > cfg.exp_bound as f64 {
        return Ok(None);
    }
    let m = m as i64;
    if (lm - m as f64 * l).abs() <= cfg.tol && angle_dist(ar - m as f64 * t) <= cfg.tol {
        Ok(Some(m))
    } else {
        Ok(None)
    }
}

/// The piecewise cohomology table of `L_a`.
///
/// Classical manifolds reduce to projective-space cohomology of `O(m)` on a
/// base of dimension `n - 1` (overridable through
/// `Config::classical_base_dim`). Generic manifolds answer through the
/// sign-constrained monomial tests. Other kinds are not tabulated.
pub fn cohomology_dims(x: &HopfManifold, a: &Factor, cfg: &Config) -> Result<CohomologyVector> {
    let n = x.dim();
    match x.kind() {
        Kind::Classical => {
            let base = cfg.classical_base_dim.unwrap_or(n - 1);
            if base < 1 {
                return Err(Error::Domain(
                    "classical base dimension must be at least 1".into(),
                ));
            }
            let mut h = vec![0u64; n + 1];
            if let Some(m) = classical_power(x, a, cfg)? {
                for (p, hp) in h.iter_mut().enumerate() {
                    if p <= base {
                        *hp = bott_dimension(base, m, p)?;
                    }
                }
            }
            Ok(CohomologyVector { h })
        }
        Kind::Generic => {
            let nonneg = detect_monomial(a, x, SignConstraint::AllNonneg, cfg.exp_bound, cfg.tol)?
                .is_some() as u64;
            let neg = detect_monomial(a, x, SignConstraint::AllNeg, cfg.exp_bound, cfg.tol)?
                .is_some() as u64;
            let mut h = vec![0u64; n + 1];
            if n == 2 {
                h[0] = nonneg;
                h[2] = neg;
                h[1] = h[0] + h[2];
            } else {
                h[0] = nonneg;
                h[1] = nonneg;
                h[n - 1] = neg;
                h[n] = neg;
            }
            Ok(CohomologyVector { h })
        }
        kind => Err(Error::UnsupportedKind {
            kind,
            context: "line-bundle cohomology is only tabulated for classical and generic \
                      manifolds"
                .into(),
        }),
    }
}

/// `h^p` of `O(m)` on projective `N`-space: non-zero only at the two ends
/// of the range.
pub fn bott_dimension(base_dim: usize, m: i64, p: usize) -> Result<u64> {
    if base_dim < 1 {
        return Err(Error::Domain(
            "projective space dimension must be at least 1".into(),
        ));
    }
    if p > base_dim {
        return Err(Error::Domain(format!(
            "cohomological degree {p} exceeds base dimension {base_dim}"
        )));
    }
    let n = base_dim as i64;
    if p == 0 && m >= 0 {
        binomial((n + m) as u64, base_dim)
    } else if p == base_dim && m < -n {
        binomial((-m - 1) as u64, base_dim)
    } else {
        Ok(0)
    }
}

fn binomial(top: u64, k: usize) -> Result<u64> {
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        let t = top as u128 + i - k as u128;
        acc = acc
            .checked_mul(t)
            .ok_or_else(|| Error::Domain("binomial coefficient overflow".into()))?;
        acc /= i;
    }
    u64::try_from(acc).map_err(|_| Error::Domain("binomial coefficient overflow".into()))
}

/// Restriction of `L_a` to the elliptic curve `T_i = C^* / mu_i`.
///
/// The coordinate hypersurface bundle `O(H_i)` restricts trivially, so the
/// class only sees `a` modulo powers of `mu_i`: the `i`-th exponent is
/// deleted and the value is reduced to the fundamental annulus
/// `|mu_i| < |v| <= 1`.
#[derive(Debug, Clone, Serialize)]
pub struct CurveRestriction {
    pub curve: usize,
    #[serde(with = "crate::wire")]
    pub q: Complex64,
    /// The factor with the `mu_i` exponent removed; exact for pure
    /// monomials.
    pub remaining: Factor,
    /// Annulus representative of the class.
    #[serde(with = "crate::wire")]
    pub cls: Complex64,
}

pub fn restrict_to_curve(
    x: &HopfManifold,
    a: &Factor,
    curve: usize,
    _cfg: &Config,
) -> Result<CurveRestriction> {
    if curve == 0 || curve > x.dim() {
        return Err(Error::Domain(format!(
            "curve index {curve} out of range 1..={}",
            x.dim()
        )));
    }
    if a.len() != x.dim() {
        return Err(Error::DimensionMismatch(
            "factor length differs from dimension".into(),
        ));
    }
    a.validate()?;
    let mut exps = a.exponents().to_vec();
    exps[curve - 1] = 0;
    let remaining = Factor::new(exps, a.scalar())?;
    let q = x.mu()[curve - 1];
    let (lm, ar) = remaining.log_value(x)?;
    let cls = reduce_to_annulus(lm, ar, q);
    Ok(CurveRestriction {
        curve,
        q,
        remaining,
        cls,
    })
}

/// Maps the value with log-modulus `lm` and argument `ar` into the annulus
/// `|q| < |v| <= 1` by a power of `q`.
pub(crate) fn reduce_to_annulus(lm: f64, ar: f64, q: Complex64) -> Complex64 {
    let lq = q.norm().ln();
    let k = (lm / lq).floor();
    Complex64::from_polar((lm - k * lq).exp(), ar - k * q.arg())
}

impl CurveRestriction {
    /// Whether the class is trivial in `C^* / <q>`. Exact when nothing but
    /// the deleted generator appears; otherwise decided numerically.
    pub fn is_trivial(&self, x: &HopfManifold, tol: f64) -> bool {
        if self.remaining.is_pure_monomial() && self.remaining.exponents().iter().all(|e| *e == 0) {
            return true;
        }
        let (lm, ar) = match self.remaining.log_value(x) {
            Ok(v) => v,
            Err(_) => return false,
        };
        let lq = self.q.norm().ln();
        let k = (lm / lq).round();
        (lm - k * lq).abs() <= tol && angle_dist(ar - k * self.q.arg()) <= tol
    }

    /// The class as a degree-zero point of the curve's Picard group.
    pub fn to_elliptic_pic(&self) -> EllipticPic {
        EllipticPic {
            q: self.q,
            d: 0,
            cls: self.cls,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn cfg() -> Config {
        Config::default()
    }

    fn classical(mu: f64) -> HopfManifold {
        HopfManifold::new(vec![re(mu), re(mu)], &cfg()).unwrap()
    }

    fn generic2() -> HopfManifold {
        HopfManifold::new(vec![re(0.31), re(0.47)], &cfg()).unwrap()
    }

    fn generic3() -> HopfManifold {
        HopfManifold::new(vec![re(0.31), re(0.47), re(0.53)], &cfg()).unwrap()
    }

    #[test]
    fn degree_examples() {
        // Classical: a = 0.25 on mu = 0.5 has degree 2.
        let x = classical(0.5);
        let a = Factor::constant(2, re(0.25)).unwrap();
        assert!((degree(&x, &a).unwrap() - 2.0).abs() < 1e-12);

        // Generic: trivial bundle has degree 0, and deg L_{mu_1} = -ln 0.31.
        let y = generic2();
        assert_eq!(degree(&y, &Factor::one(2)).unwrap(), 0.0);
        let d = degree(&y, &Factor::monomial(vec![1, 0])).unwrap();
        assert!((d - 1.171182981502945).abs() < 1e-12);
        // Resonant surfaces share the generic normalization, keeping the
        // hypersurface bundles of positive degree.
        let r = HopfManifold::new(vec![re(0.25), re(0.5)], &cfg()).unwrap();
        let d = degree(&r, &Factor::monomial(vec![1, 0])).unwrap();
        assert!((d + 0.25f64.ln()).abs() < 1e-12 && d > 0.0);
    }

    #[test]
    fn degree_is_a_homomorphism() {
        let x = generic2();
        let a = Factor::new(vec![2, -1], re(0.8)).unwrap();
        let b = Factor::new(vec![-1, 3], Complex64::new(0.3, 0.4)).unwrap();
        let lhs = degree(&x, &a.mul(&b).unwrap()).unwrap();
        let rhs = degree(&x, &a).unwrap() + degree(&x, &b).unwrap();
        assert!((lhs - rhs).abs() < 1e-9);
    }

    #[test]
    fn generic_degree_positivity() {
        let x = generic2();
        for i in 0..2 {
            for m in 1..=10i64 {
                let mut e = vec![0, 0];
                e[i] = m;
                assert!(degree(&x, &Factor::monomial(e)).unwrap() > 0.0);
            }
        }
    }

    #[test]
    fn bott_examples() {
        assert_eq!(bott_dimension(2, 2, 0).unwrap(), 6);
        assert_eq!(bott_dimension(2, -3, 2).unwrap(), 1);
        for p in 0..=3 {
            assert_eq!(bott_dimension(3, -2, p).unwrap(), 0);
        }
        assert!(bott_dimension(2, 0, 3).is_err());
        assert!(bott_dimension(0, 0, 0).is_err());
    }

    #[test]
    fn bott_alternating_sum_matches_euler_polynomial() {
        // chi(P^N, O(m)) = prod_{i=1..N} (m + i) / N! for every integer m.
        for base in 1..=4usize {
            for m in -12i64..=12 {
                let mut chi: i128 = 0;
                for p in 0..=base {
                    let sign = if p % 2 == 0 { 1 } else { -1 };
                    chi += sign * bott_dimension(base, m, p).unwrap() as i128;
                }
                let mut num: i128 = 1;
                let mut den: i128 = 1;
                for i in 1..=base as i128 {
                    num *= m as i128 + i;
                    den *= i;
                }
                assert_eq!(chi, num / den, "base {base} m {m}");
            }
        }
    }

    #[test]
    fn generic_surface_table() {
        let x = generic2();
        let c = cfg();
        let trivial = cohomology_dims(&x, &Factor::one(2), &c).unwrap();
        assert_eq!(trivial.h, vec![1, 1, 0]);
        let negneg = cohomology_dims(&x, &Factor::monomial(vec![-1, -2]), &c).unwrap();
        assert_eq!(negneg.h, vec![0, 1, 1]);
        let mixed = cohomology_dims(&x, &Factor::monomial(vec![1, -1]), &c).unwrap();
        assert_eq!(mixed.h, vec![0, 0, 0]);
        let nonmono = cohomology_dims(&x, &Factor::constant(2, re(0.77)).unwrap(), &c).unwrap();
        assert_eq!(nonmono.h, vec![0, 0, 0]);
    }

    #[test]
    fn generic_threefold_table() {
        let x = generic3();
        let c = cfg();
        let v = cohomology_dims(&x, &Factor::monomial(vec![1, 1, 1]), &c).unwrap();
        assert_eq!(v.h, vec![1, 1, 0, 0]);
        let w = cohomology_dims(&x, &Factor::monomial(vec![-1, -1, -2]), &c).unwrap();
        assert_eq!(w.h, vec![0, 0, 1, 1]);
    }

    #[test]
    fn classical_table_uses_base_dimension() {
        let x = classical(0.5);
        // Default base is P^1: h^0(O(3)) = 4 and nothing else.
        let a = Factor::monomial(vec![2, 1]); // value mu^3
        let v = cohomology_dims(&x, &a, &cfg()).unwrap();
        assert_eq!(v.h, vec![4, 0, 0]);
        // Literal-table override on P^2: h^0(O(3)) = 10.
        let mut c = cfg();
        c.classical_base_dim = Some(2);
        let v = cohomology_dims(&x, &a, &c).unwrap();
        assert_eq!(v.h, vec![10, 0, 0]);
        // Non-power scalars have no cohomology at all.
        let b = Factor::constant(2, re(0.77)).unwrap();
        assert_eq!(cohomology_dims(&x, &b, &cfg()).unwrap().h, vec![0, 0, 0]);
        // Numeric scalar encoding mu^2 is recognized.
        let d = Factor::constant(2, re(0.25)).unwrap();
        assert_eq!(cohomology_dims(&x, &d, &cfg()).unwrap().h, vec![3, 0, 0]);
    }

    #[test]
    fn resonant_table_is_unsupported() {
        let x = HopfManifold::new(vec![re(0.25), re(0.5)], &cfg()).unwrap();
        assert!(matches!(
            cohomology_dims(&x, &Factor::one(2), &cfg()),
            Err(Error::UnsupportedKind { .. })
        ));
    }

    #[test]
    fn h1_identity_over_random_monomials() {
        let x = generic2();
        let c = cfg();
        for e1 in -4i64..=4 {
            for e2 in -4i64..=4 {
                let v = cohomology_dims(&x, &Factor::monomial(vec![e1, e2]), &c).unwrap();
                assert_eq!(v.h[1], v.h[0] + v.h[2]);
            }
        }
    }

    #[test]
    fn restriction_examples() {
        let x = generic2();
        let c = cfg();
        // O(H_i) restricted to T_i is trivial.
        for i in 1..=2 {
            let mut e = vec![0, 0];
            e[i - 1] = 1;
            let r = restrict_to_curve(&x, &Factor::monomial(e), i, &c).unwrap();
            assert!(r.is_trivial(&x, c.tol));
        }
        // The trivial bundle restricts trivially everywhere.
        let r = restrict_to_curve(&x, &Factor::one(2), 1, &c).unwrap();
        assert!(r.is_trivial(&x, c.tol));
        // L_{mu_2} on T_1: class of 0.47 in C^*/<0.31>, already reduced.
        let r = restrict_to_curve(&x, &Factor::monomial(vec![0, 1]), 1, &c).unwrap();
        assert!(!r.is_trivial(&x, c.tol));
        assert!((r.cls - re(0.47)).norm() < 1e-12);
        assert!(restrict_to_curve(&x, &Factor::one(2), 3, &c).is_err());
    }

    #[test]
    fn annulus_reduction_lands_in_fundamental_domain() {
        let q = re(0.31);
        for v in [5.0f64, 1.0, 0.47, 0.31001, 0.0001] {
            let cls = reduce_to_annulus(v.ln(), 0.0, q);
            assert!(
                cls.norm() > 0.31 - 1e-12 && cls.norm() <= 1.0 + 1e-12,
                "v = {v}"
            );
        }
    }
}
