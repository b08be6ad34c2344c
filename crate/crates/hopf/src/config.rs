use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bookkeeping convention for the determinant change under an elementary
/// modification along an axis curve.
///
/// `Theorem`: modifying along `T_i` multiplies the determinant by the factor
/// `mu_i^{-1}`, so a full removal sequence of lengths `(l1, l2)` contributes
/// `mu_1^{-l1} mu_2^{-l2}`. `Lemma`: uses the opposite identification of the
/// axis curves with the coordinate hypersurfaces on a surface, so `T_1`
/// contributes `mu_2^{-1}` and `T_2` contributes `mu_1^{-1}`. Both are kept
/// because the two sources for the convention disagree; tests surface the
/// difference instead of hiding it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum DetConvention {
    #[default]
    Theorem,
    Lemma,
}

/// Which defining relation the branch datum of a `T1 + T2` cyclic cover
/// satisfies. The quotient construction fixes `beta^r = mu_1^{-1} mu_2`
/// (`Proof`, the default); `Statement` reproduces the alternative
/// `beta^r = mu_1` form for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum BetaConvention {
    #[default]
    Proof,
    Statement,
}

/// Numerical and conventional knobs shared by every operation.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Config {
    /// Tolerance for log-modulus and argument comparisons.
    pub tol: f64,
    /// Infinity-norm bound of the exponent boxes searched for
    /// multiplicative relations.
    pub exp_bound: u32,
    pub det_convention: DetConvention,
    /// Base projective-space dimension used by the classical cohomology
    /// table; `None` means `n - 1` for an `n`-dimensional manifold.
    pub classical_base_dim: Option<usize>,
    pub beta_convention: BetaConvention,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            tol: 1e-9,
            exp_bound: 32,
            det_convention: DetConvention::Theorem,
            classical_base_dim: None,
            beta_convention: BetaConvention::Proof,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::Domain(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if self.exp_bound < 1 {
            return Err(Error::Domain("exp_bound must be at least 1".into()));
        }
        Ok(())
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_exp_bound(mut self, bound: u32) -> Self {
        self.exp_bound = bound;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let cfg = Config::default();
        assert!(cfg.validate().is_ok());
        assert_eq!(cfg.tol, 1e-9);
        assert_eq!(cfg.exp_bound, 32);
        assert_eq!(cfg.det_convention, DetConvention::Theorem);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(Config::default().with_tol(0.0).validate().is_err());
        assert!(Config::default().with_exp_bound(0).validate().is_err());
    }
}
