//! Arithmetic on elements of `C^*` presented as `scalar * prod mu_i^{e_i}`,
//! and the bounded multiplicative-relation searches used throughout the
//! crate.
//!
//! Values carry a symbolic exponent vector next to a numeric scalar so that
//! statements quantified over all integers are decided exactly on pure
//! monomials and only approximately, via bounded search, on numeric data.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::manifold::HopfManifold;

const TAU: f64 = std::f64::consts::TAU;

/// An element of `C^*` written as `scalar * prod mu_i^{e_i}`.
///
/// A factor with `scalar == 1` is called a pure monomial; on those, every
/// relation question is answered by integer arithmetic on the exponents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Factor {
    #[serde(rename = "exp")]
    exponents: Vec<i64>,
    #[serde(with = "crate::wire")]
    scalar: Complex64,
}

impl Factor {
    pub fn new(exponents: Vec<i64>, scalar: Complex64) -> Result<Self> {
        if scalar == Complex64::new(0.0, 0.0) || !scalar.norm().is_finite() {
            return Err(Error::Domain(
                "factor scalar must be finite and non-zero".into(),
            ));
        }
        Ok(Factor { exponents, scalar })
    }

    /// The pure monomial `prod mu_i^{e_i}`.
    pub fn monomial(exponents: Vec<i64>) -> Self {
        Factor {
            exponents,
            scalar: Complex64::new(1.0, 0.0),
        }
    }

    /// The identity factor on an `n`-dimensional manifold.
    pub fn one(n: usize) -> Self {
        Factor::monomial(vec![0; n])
    }

    /// A constant factor with no monomial part.
    pub fn constant(n: usize, scalar: Complex64) -> Result<Self> {
        Factor::new(vec![0; n], scalar)
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn scalar(&self) -> Complex64 {
        self.scalar
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn is_pure_monomial(&self) -> bool {
        self.scalar == Complex64::new(1.0, 0.0)
    }

    pub fn is_trivial(&self) -> bool {
        self.is_pure_monomial() && self.exponents.iter().all(|e| *e == 0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.scalar == Complex64::new(0.0, 0.0) || !self.scalar.norm().is_finite() {
            return Err(Error::Domain(
                "factor scalar must be finite and non-zero".into(),
            ));
        }
        Ok(())
    }

    fn check_len(&self, other: &Factor) -> Result<()> {
        if self.exponents.len() != other.exponents.len() {
            return Err(Error::DimensionMismatch(format!(
                "factors over {} and {} generators",
                self.exponents.len(),
                other.exponents.len()
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Factor) -> Result<Factor> {
        self.check_len(other)?;
        Factor::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
            self.scalar * other.scalar,
        )
    }

    pub fn div(&self, other: &Factor) -> Result<Factor> {
        self.check_len(other)?;
        Factor::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a - b)
                .collect(),
            self.scalar / other.scalar,
        )
    }

    pub fn pow(&self, k: i64) -> Result<Factor> {
        let exp32 = i32::try_from(k)
            .map_err(|_| Error::Domain(format!("power {k} out of supported range")))?;
        Factor::new(
            self.exponents.iter().map(|e| e * k).collect(),
            self.scalar.powi(exp32),
        )
    }

    pub fn inv(&self) -> Result<Factor> {
        self.pow(-1)
    }

    /// Log-modulus and (unwrapped) argument of the value on `x`.
    pub fn log_value(&self, x: &HopfManifold) -> Result<(f64, f64)> {
        self.validate()?;
        if self.exponents.len() != x.dim() {
            return Err(Error::DimensionMismatch(format!(
                "factor over {} generators on a manifold of dimension {}",
                self.exponents.len(),
                x.dim()
            )));
        }
        let mut lm = self.scalar.norm().ln();
        let mut ar = self.scalar.arg();
        for ((e, l), a) in self.exponents.iter().zip(x.log_moduli()).zip(x.args()) {
            lm += *e as f64 * l;
            ar += *e as f64 * a;
        }
        Ok((lm, ar))
    }

    /// Numeric value of the factor on `x`. Computed in log space, so large
    /// exponents stay finite as long as the result does.
    pub fn value(&self, x: &HopfManifold) -> Result<Complex64> {
        let (lm, ar) = self.log_value(x)?;
        Ok(Complex64::from_polar(lm.exp(), ar))
    }

    pub fn abs(&self, x: &HopfManifold) -> Result<f64> {
        Ok(self.log_value(x)?.0.exp())
    }

    /// Folds a scalar that is numerically a monomial into the exponent
    /// vector; pure monomials are returned unchanged.
    pub fn normalized(&self, x: &HopfManifold, cfg: &Config) -> Result<Factor> {
        if self.is_pure_monomial() {
            return Ok(self.clone());
        }
        let probe = Factor::new(vec![0; x.dim()], self.scalar)?;
        match detect_monomial(&probe, x, SignConstraint::Any, cfg.exp_bound, cfg.tol)? {
            Some(d) => Ok(Factor::monomial(
                self.exponents
                    .iter()
                    .zip(&d)
                    .map(|(e, di)| e + di)
                    .collect(),
            )),
            None => Ok(self.clone()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineOp {
    Mul,
    Div,
    /// Unary power of the first operand; the second operand is ignored.
    Pow(i64),
}

pub fn combine(f: &Factor, g: &Factor, op: CombineOp) -> Result<Factor> {
    match op {
        CombineOp::Mul => f.mul(g),
        CombineOp::Div => f.div(g),
        CombineOp::Pow(k) => f.pow(k),
    }
}

/// Sign restriction on the exponent vector of a detected monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignConstraint {
    Any,
    AllNonneg,
    /// Every exponent strictly negative.
    AllNeg,
    AllNonpos,
}

impl SignConstraint {
    fn admits(&self, m: &[i64]) -> bool {
        match self {
            SignConstraint::Any => true,
            SignConstraint::AllNonneg => m.iter().all(|v| *v >= 0),
            SignConstraint::AllNeg => m.iter().all(|v| *v < 0),
            SignConstraint::AllNonpos => m.iter().all(|v| *v <= 0),
        }
    }

    fn range(&self, bound: i64) -> (i64, i64) {
        match self {
            SignConstraint::Any => (-bound, bound),
            SignConstraint::AllNonneg => (0, bound),
            SignConstraint::AllNeg => (-bound, -1),
            SignConstraint::AllNonpos => (-bound, 0),
        }
    }
}

/// Distance of `x` to the nearest integer multiple of `2 pi`.
pub(crate) fn angle_dist(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    r.min(TAU - r)
}

fn inf_norm(m: &[i64]) -> i64 {
    m.iter().map(|v| v.abs()).max().unwrap_or(0)
}

/// Writes `a = prod mu_i^{m_i}` with `m` in the given sign class if
/// possible, preferring minimal infinity norm and then lexicographic order.
///
/// Pure monomials are decided exactly on their exponent vectors (the
/// generators of a generic manifold are multiplicatively independent, so
/// the stored exponents are the unique candidate). Numeric scalars are
/// resolved by bounded search: all but the last exponent range over the
/// sign-restricted box and the last is pinned by the modulus equation.
pub fn detect_monomial(
    a: &Factor,
    x: &HopfManifold,
    sign: SignConstraint,
    exp_bound: u32,
    tol: f64,
) -> Result<Option<Vec<i64>>> {
    a.validate()?;
    if a.len() != x.dim() {
        return Err(Error::DimensionMismatch(format!(
            "factor over {} generators on a manifold of dimension {}",
            a.len(),
            x.dim()
        )));
    }
    if a.is_pure_monomial() {
        if sign.admits(a.exponents()) {
            return Ok(Some(a.exponents().to_vec()));
        }
        return Ok(None);
    }
    let (lm, ar) = a.log_value(x)?;
    Ok(search_monomial(
        x.log_moduli(),
        x.args(),
        lm,
        ar,
        sign,
        exp_bound,
        tol,
    ))
}

/// Core bounded search: find `m`, sign-admissible, `|m|_inf <= bound`, with
/// `sum m_i log|mu_i| = target_lm` within `tol` and matching argument mod
/// `2 pi`. Returns the (norm, lex)-minimal solution.
fn search_monomial(
    log_mod: &[f64],
    args: &[f64],
    target_lm: f64,
    target_ar: f64,
    sign: SignConstraint,
    exp_bound: u32,
    tol: f64,
) -> Option<Vec<i64>> {
    let n = log_mod.len();
    let bound = exp_bound as i64;
    let last = n - 1;
    let l_last = log_mod[last];
    // The pinned-coordinate shortcut needs the modulus residuals of distinct
    // last exponents to be separated by much more than tol.
    let pin_last = tol * 4.0 < l_last.abs();
    let (lo, hi) = sign.range(bound);
    let mut best: Option<Vec<i64>> = None;

    let mut prefix = vec![lo; last];
    let consider = |m: &[i64], best: &mut Option<Vec<i64>>| {
        let lm: f64 = m.iter().zip(log_mod).map(|(v, l)| *v as f64 * l).sum();
        if (lm - target_lm).abs() > tol {
            return;
        }
        let ar: f64 = m.iter().zip(args).map(|(v, a)| *v as f64 * a).sum();
        if angle_dist(ar - target_ar) > tol {
            return;
        }
        let better = match best {
            None => true,
            Some(b) => {
                let (nb, nm) = (inf_norm(b), inf_norm(m));
                nm < nb || (nm == nb && m < b.as_slice())
            }
        };
        if better {
            *best = Some(m.to_vec());
        }
    };

    loop {
        let partial_lm: f64 = prefix.iter().zip(log_mod).map(|(v, l)| *v as f64 * l).sum();
        if pin_last {
            let guess = ((target_lm - partial_lm) / l_last).round() as i64;
            for k in guess - 1..=guess + 1 {
                if k < lo || k > hi {
                    continue;
                }
                let mut m = prefix.clone();
                m.push(k);
                if sign.admits(&m) {
                    consider(&m, &mut best);
                }
            }
        } else {
            for k in lo..=hi {
                let mut m = prefix.clone();
                m.push(k);
                if sign.admits(&m) {
                    consider(&m, &mut best);
                }
            }
        }
        // Odometer step over the prefix box.
        let mut i = 0;
        loop {
            if i == last {
                return best;
            }
            prefix[i] += 1;
            if prefix[i] <= hi {
                break;
            }
            prefix[i] = lo;
            i += 1;
        }
    }
}

/// Smallest coprime positive pair `(p, q)` with `mu_1^p = mu_2^q` within
/// `tol`, ordered by `p + q` and then by `p`.
pub fn detect_resonance(x: &HopfManifold, exp_bound: u32, tol: f64) -> Result<Option<(u32, u32)>> {
    if x.dim() != 2 {
        return Err(Error::Domain(format!(
            "resonance detection is defined for surfaces, dimension is {}",
            x.dim()
        )));
    }
    Ok(resonance_search(x.mu(), exp_bound, tol))
}

pub(crate) fn resonance_search(mu: &[Complex64], exp_bound: u32, tol: f64) -> Option<(u32, u32)> {
    let (l1, l2) = (mu[0].norm().ln(), mu[1].norm().ln());
    let (a1, a2) = (mu[0].arg(), mu[1].arg());
    let bound = exp_bound as i64;
    for s in 2..=2 * bound {
        for p in s.saturating_sub(bound).max(1)..=(s - 1).min(bound) {
            let q = s - p;
            if gcd(p as u64, q as u64) != 1 {
                continue;
            }
            if (p as f64 * l1 - q as f64 * l2).abs() <= tol
                && angle_dist(p as f64 * a1 - q as f64 * a2) <= tol
            {
                return Some((p as u32, q as u32));
            }
        }
    }
    None
}

/// Searches for a non-trivial relation `prod mu_i^{e_i} = 1` with
/// `|e|_inf <= exp_bound`. Returns a canonical witness (minimal infinity
/// norm, then lexicographic, first non-zero entry positive) or `None`.
pub(crate) fn relation_search(mu: &[Complex64], exp_bound: u32, tol: f64) -> Option<Vec<i64>> {
    let log_mod: Vec<f64> = mu.iter().map(|m| m.norm().ln()).collect();
    let args: Vec<f64> = mu.iter().map(|m| m.arg()).collect();
    let n = mu.len();
    let bound = exp_bound as i64;
    let last = n - 1;
    let l_last = log_mod[last];
    let pin_last = tol * 4.0 < l_last.abs();
    let mut best: Option<Vec<i64>> = None;

    let consider = |m: &[i64], best: &mut Option<Vec<i64>>| {
        if m.iter().all(|v| *v == 0) {
            return;
        }
        let lm: f64 = m.iter().zip(&log_mod).map(|(v, l)| *v as f64 * l).sum();
        if lm.abs() > tol {
            return;
        }
        let ar: f64 = m.iter().zip(&args).map(|(v, a)| *v as f64 * a).sum();
        if angle_dist(ar) > tol {
            return;
        }
        let mut canon = m.to_vec();
        if let Some(first) = canon.iter().find(|v| **v != 0) {
            if *first < 0 {
                for v in &mut canon {
                    *v = -*v;
                }
            }
        }
        let better = match best {
            None => true,
            Some(b) => {
                let (nb, nm) = (inf_norm(b), inf_norm(&canon));
                nm < nb || (nm == nb && canon.as_slice() < b.as_slice())
            }
        };
        if better {
            *best = Some(canon);
        }
    };

    let mut prefix = vec![-bound; last];
    loop {
        let partial_lm: f64 = prefix
            .iter()
            .zip(&log_mod)
            .map(|(v, l)| *v as f64 * l)
            .sum();
        if pin_last {
            let guess = (-partial_lm / l_last).round() as i64;
            for k in guess - 1..=guess + 1 {
                if k.abs() > bound {
                    continue;
                }
                let mut m = prefix.clone();
                m.push(k);
                consider(&m, &mut best);
            }
        } else {
            for k in -bound..=bound {
                let mut m = prefix.clone();
                m.push(k);
                consider(&m, &mut best);
            }
        }
        let mut i = 0;
        loop {
            if i == last {
                return best;
            }
            prefix[i] += 1;
            if prefix[i] <= bound {
                break;
            }
            prefix[i] = -bound;
            i += 1;
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
