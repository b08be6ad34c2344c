//! Diagonal Hopf manifolds: taxonomy of the contraction diagonal and the
//! divisor group generated by the coordinate hypersurfaces.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::factors::{self, Factor};

/// Taxonomy of a diagonal contraction. `Resonant` and `Hyperresonant` only
/// occur in dimension 2; `Other` covers non-generic diagonals in dimension
/// three and up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Classical,
    Generic,
    Resonant,
    Hyperresonant,
    Other,
}

/// A diagonal Hopf manifold: the quotient of punctured `C^n` by the cyclic
/// group generated by `z -> (mu_1 z_1, ..., mu_n z_n)` with
/// `0 < |mu_1| <= ... <= |mu_n| < 1`.
#[derive(Debug, Clone, Serialize)]
pub struct HopfManifold {
    n: usize,
    #[serde(with = "crate::wire::vec")]
    mu: Vec<Complex64>,
    kind: Kind,
    #[serde(skip)]
    log_mod: Vec<f64>,
    #[serde(skip)]
    arg: Vec<f64>,
}

/// Wire form of a manifold; the taxonomy tag is recomputed on ingestion so
/// the `kind` invariant cannot be forged.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifoldJson {
    pub n: usize,
    #[serde(with = "crate::wire::vec")]
    pub mu: Vec<Complex64>,
}

impl HopfManifold {
    pub fn new(mu: Vec<Complex64>, cfg: &Config) -> Result<Self> {
        let kind = classify_manifold(&mu, cfg.exp_bound, cfg.tol)?;
        Ok(Self::with_kind_unchecked(mu, kind))
    }

    /// Builds the manifold with a caller-supplied tag. Only used internally
    /// and by tests that need a tag at a different search bound.
    pub(crate) fn with_kind_unchecked(mu: Vec<Complex64>, kind: Kind) -> Self {
        let log_mod = mu.iter().map(|m| m.norm().ln()).collect();
        let arg = mu.iter().map(|m| m.arg()).collect();
        HopfManifold {
            n: mu.len(),
            mu,
            kind,
            log_mod,
            arg,
        }
    }

    pub fn from_json(data: &ManifoldJson, cfg: &Config) -> Result<Self> {
        if data.n != data.mu.len() {
            return Err(Error::DimensionMismatch(format!(
                "declared n = {} but {} multipliers given",
                data.n,
                data.mu.len()
            )));
        }
        Self::new(data.mu.clone(), cfg)
    }

    pub fn to_json(&self) -> ManifoldJson {
        ManifoldJson {
            n: self.n,
            mu: self.mu.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mu(&self) -> &[Complex64] {
        &self.mu
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Natural log of each `|mu_i|`; all entries are strictly negative.
    pub fn log_moduli(&self) -> &[f64] {
        &self.log_mod
    }

    /// Argument of each `mu_i` in `(-pi, pi]`.
    pub fn args(&self) -> &[f64] {
        &self.arg
    }

    pub fn is_surface(&self) -> bool {
        self.n == 2
    }

    /// The common multiplier of a classical diagonal.
    pub fn classical_mu(&self) -> Result<Complex64> {
        if self.kind != Kind::Classical {
            return Err(Error::UnsupportedKind {
                kind: self.kind,
                context: "classical multiplier requested".into(),
            });
        }
        Ok(self.mu[0])
    }
}

/// Decides the taxonomy of a diagonal.
///
/// Classicality (all multipliers equal within `tol`) is decided first, so
/// classical inputs never reach the resonance search. For surfaces the
/// search looks for the smallest coprime pair `(p, q)` with
/// `mu_1^p = mu_2^q`; in dimension three and up any non-trivial
/// multiplicative relation with exponents bounded by `exp_bound` demotes
/// the diagonal to `Other`.
pub fn classify_manifold(mu: &[Complex64], exp_bound: u32, tol: f64) -> Result<Kind> {
    validate_moduli(mu)?;
    if all_equal(mu, tol) {
        return Ok(Kind::Classical);
    }
    if mu.len() == 2 {
        return Ok(match factors::resonance_search(mu, exp_bound, tol) {
            Some((1, _)) => Kind::Resonant,
            Some(_) => Kind::Hyperresonant,
            None => Kind::Generic,
        });
    }
    match factors::relation_search(mu, exp_bound, tol) {
        Some(_) => Ok(Kind::Other),
        None => Ok(Kind::Generic),
    }
}

pub(crate) fn validate_moduli(mu: &[Complex64]) -> Result<()> {
    if mu.len() < 2 {
        return Err(Error::InvalidModuli(format!(
            "need at least 2 multipliers, got {}",
            mu.len()
        )));
    }
    for (i, m) in mu.iter().enumerate() {
        let r = m.norm();
        if !(r > 0.0 && r < 1.0) || !r.is_finite() {
            return Err(Error::InvalidModuli(format!(
                "|mu_{}| = {} is not in the open interval (0, 1)",
                i + 1,
                r
            )));
        }
    }
    for w in mu.windows(2) {
        if w[0].norm() > w[1].norm() {
            return Err(Error::InvalidModuli(
                "multipliers must be ordered by non-decreasing modulus".into(),
            ));
        }
    }
    Ok(())
}

fn all_equal(mu: &[Complex64], tol: f64) -> bool {
    let first = mu[0];
    mu.iter().all(|m| (m - first).norm() <= tol * first.norm())
}

/// An element of the divisor group: integer combinations of the coordinate
/// hypersurfaces `H_1, ..., H_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divisor {
    pub coeffs: Vec<i64>,
}

impl Divisor {
    pub fn zero(n: usize) -> Self {
        Divisor { coeffs: vec![0; n] }
    }

    /// The single hypersurface `H_i` (1-based index).
    pub fn hypersurface(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::Domain(format!(
                "hypersurface index {i} out of range 1..={n}"
            )));
        }
        let mut coeffs = vec![0; n];
        coeffs[i - 1] = 1;
        Ok(Divisor { coeffs })
    }

    pub fn add(&self, other: &Divisor) -> Result<Divisor> {
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::DimensionMismatch("divisor lengths differ".into()));
        }
        Ok(Divisor {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn neg(&self) -> Divisor {
        Divisor {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Intersection pairing; the hypersurfaces satisfy `H_i . H_j = 0`, so
    /// every product of divisors vanishes.
    pub fn intersect(&self, _other: &Divisor) -> i64 {
        0
    }
}

/// The canonical divisor `-H_1 - ... - H_n`.
pub fn canonical_divisor(x: &HopfManifold) -> Divisor {
    Divisor {
        coeffs: vec![-1; x.dim()],
    }
}

/// The line bundle attached to a divisor: `H_i` maps to the constant factor
/// `mu_i`, extended multiplicatively.
pub fn divisor_to_line_bundle(x: &HopfManifold, d: &Divisor) -> Result<Factor> {
    if d.coeffs.len() != x.dim() {
        return Err(Error::DimensionMismatch(format!(
            "divisor has {} coefficients on a manifold of dimension {}",
            d.coeffs.len(),
            x.dim()
        )));
    }
    Ok(Factor::monomial(d.coeffs.clone()))
}
