//! Slope stability: the annular stability domains, closed-form verdicts for
//! filtrable surface bundles and for the higher-dimensional classification,
//! and moduli-space descriptors.

use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::factors::{detect_monomial, Factor, SignConstraint};
use crate::manifold::{HopfManifold, Kind};
use crate::rank2::{FiltrableRank2, HigherExtensionType};

/// An open annulus `r_lo < |z| < r_hi`, empty when the radii cross.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Annulus {
    pub r_lo: f64,
    pub r_hi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Membership {
    Inside,
    Outside,
    /// Within relative `tol` of a radius; the open domain excludes it.
    Boundary,
}

impl Annulus {
    pub fn is_empty(&self) -> bool {
        self.r_lo >= self.r_hi
    }

    pub fn membership(&self, r: f64, tol: f64) -> Membership {
        if (r - self.r_lo).abs() <= tol * self.r_lo || (r - self.r_hi).abs() <= tol * self.r_hi {
            return Membership::Boundary;
        }
        if !self.is_empty() && r > self.r_lo && r < self.r_hi {
            Membership::Inside
        } else {
            Membership::Outside
        }
    }

    pub fn contains(&self, r: f64, tol: f64) -> bool {
        self.membership(r, tol) == Membership::Inside
    }
}

/// Slope of a sheaf: degree over rank.
pub fn slope(deg: f64, rank: u32) -> Result<f64> {
    if rank == 0 {
        return Err(Error::Domain("slope needs positive rank".into()));
    }
    Ok(deg / rank as f64)
}

/// The stability domain attached to a determinant factor and per-curve jump
/// lengths: radii `|delta|^{1/2}` and `|delta|^{1/2} prod |mu_i|^{-l_i}`.
pub fn d_domain(x: &HopfManifold, delta: &Factor, lengths: &[u32]) -> Result<Annulus> {
    if lengths.len() != x.dim() {
        return Err(Error::DimensionMismatch(
            "need one jump length per axis curve".into(),
        ));
    }
    let (lm, _) = delta.log_value(x)?;
    let half = lm / 2.0;
    let spread: f64 = lengths
        .iter()
        .zip(x.log_moduli())
        .map(|(l, lmu)| *l as f64 * lmu)
        .sum();
    Ok(Annulus {
        r_lo: half.exp(),
        r_hi: (half - spread).exp(),
    })
}

/// Classical variant: a single total length against the common multiplier.
pub fn d_domain_classical(x: &HopfManifold, delta: &Factor, l: u32) -> Result<Annulus> {
    let mut lengths = vec![0u32; x.dim()];
    lengths[0] = l;
    d_domain(x, delta, &lengths)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "branch")]
pub enum Witness {
    /// `sub^2 = det * mu_1^{-l1-k1} mu_2^{-l2-k2}` with `k` non-zero.
    ConditionA { k: Vec<u32> },
    /// The sub-bundle modulus lies strictly inside the stability domain.
    Annulus { abs_a: f64, r_lo: f64, r_hi: f64 },
    /// Within tolerance of a domain radius; the strict inequalities fail.
    Boundary { abs_a: f64, r_lo: f64, r_hi: f64 },
    /// The sub-bundle itself destabilizes.
    DestabilizerSub { abs_a: f64, r_lo: f64 },
    /// The quotient-side bundle destabilizes.
    DestabilizerQuotient {
        abs_quotient: f64,
        abs_a: f64,
        r_hi: f64,
    },
    /// No jumps and no exceptional relation: the domain is empty.
    EmptyDomain { abs_a: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityVerdict {
    pub stable: bool,
    #[serde(flatten)]
    pub witness: Witness,
}

fn condition_a_witness(
    x: &HopfManifold,
    e: &FiltrableRank2,
    lengths: &[u32],
    cfg: &Config,
) -> Result<Option<Vec<u32>>> {
    let shift = Factor::monomial(lengths.iter().map(|l| *l as i64).collect());
    let probe = e.sub.pow(2)?.div(&e.det)?.mul(&shift)?;
    let found = detect_monomial(&probe, x, SignConstraint::AllNonpos, cfg.exp_bound, cfg.tol)?;
    Ok(found.and_then(|m| {
        if m.iter().all(|v| *v == 0) {
            None
        } else {
            Some(m.iter().map(|v| (-v) as u32).collect())
        }
    }))
}

/// Closed-form stability of a filtrable rank-2 descriptor on a generic or
/// classical surface. The caller warrants that `sub` has maximal degree
/// among line bundles mapping into the bundle; `check_stability_audited`
/// verifies that contract as far as the bounded search can.
pub fn is_stable_filtrable_surface(
    x: &HopfManifold,
    e: &FiltrableRank2,
    cfg: &Config,
) -> Result<StabilityVerdict> {
    e.validate(x)?;
    if !x.is_surface() {
        return Err(Error::UnsupportedKind {
            kind: x.kind(),
            context: "surface stability requires dimension 2".into(),
        });
    }
    let abs_a = e.sub.abs(x)?;
    match x.kind() {
        Kind::Generic => {
            let lengths = [e.jump_length(1) as u32, e.jump_length(2) as u32];
            if let Some(k) = condition_a_witness(x, e, &lengths, cfg)? {
                return Ok(StabilityVerdict {
                    stable: true,
                    witness: Witness::ConditionA { k },
                });
            }
            let d = d_domain(x, &e.det, &lengths)?;
            Ok(domain_verdict(x, e, &d, abs_a, cfg))
        }
        Kind::Classical => {
            let total: u32 = e.jumps.iter().map(|j| j.length() as u32).sum();
            let d = d_domain_classical(x, &e.det, total)?;
            Ok(domain_verdict(x, e, &d, abs_a, cfg))
        }
        kind => Err(Error::UnsupportedKind {
            kind,
            context: "stability verdicts cover generic and classical surfaces".into(),
        }),
    }
}

fn domain_verdict(
    x: &HopfManifold,
    e: &FiltrableRank2,
    d: &Annulus,
    abs_a: f64,
    cfg: &Config,
) -> StabilityVerdict {
    match d.membership(abs_a, cfg.tol) {
        Membership::Inside => StabilityVerdict {
            stable: true,
            witness: Witness::Annulus {
                abs_a,
                r_lo: d.r_lo,
                r_hi: d.r_hi,
            },
        },
        Membership::Boundary => StabilityVerdict {
            stable: false,
            witness: Witness::Boundary {
                abs_a,
                r_lo: d.r_lo,
                r_hi: d.r_hi,
            },
        },
        Membership::Outside => {
            if d.is_empty() {
                StabilityVerdict {
                    stable: false,
                    witness: Witness::EmptyDomain { abs_a },
                }
            } else if abs_a <= d.r_lo {
                StabilityVerdict {
                    stable: false,
                    witness: Witness::DestabilizerSub {
                        abs_a,
                        r_lo: d.r_lo,
                    },
                }
            } else {
                // |a| beyond the upper radius means the quotient-side bundle
                // has slope at least half the determinant degree.
                let abs_q = quotient_after_removal_abs(x, e);
                StabilityVerdict {
                    stable: false,
                    witness: Witness::DestabilizerQuotient {
                        abs_quotient: abs_q,
                        abs_a,
                        r_hi: d.r_hi,
                    },
                }
            }
        }
    }
}

fn quotient_after_removal_abs(x: &HopfManifold, e: &FiltrableRank2) -> f64 {
    let (lm_det, _) = e.det.log_value(x).unwrap_or((0.0, 0.0));
    let (lm_a, _) = e.sub.log_value(x).unwrap_or((0.0, 0.0));
    let spread: f64 = match x.kind() {
        Kind::Classical => {
            let total: u32 = e.jumps.iter().map(|j| j.length() as u32).sum();
            total as f64 * x.log_moduli()[0]
        }
        _ => [1usize, 2]
            .iter()
            .map(|c| e.jump_length(*c) as f64 * x.log_moduli()[*c - 1])
            .sum(),
    };
    (lm_det - lm_a - spread).exp()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum AuditedVerdict {
    Stable {
        witness: Witness,
    },
    Unstable {
        witness: Witness,
    },
    /// A line bundle of larger degree maps into the bundle within the
    /// search bound, so the maximal-degree hypothesis on `sub` fails.
    Indeterminate {
        abs_a: f64,
        abs_competitor: f64,
    },
}

/// Stability verdict with the caller contract checked: searches for a
/// quotient-side line bundle of degree larger than `sub` and demotes the
/// verdict when one exists (unless the exceptional relation already takes
/// over, in which case the quotient side saturates into `sub`).
pub fn check_stability_audited(
    x: &HopfManifold,
    e: &FiltrableRank2,
    cfg: &Config,
) -> Result<AuditedVerdict> {
    let verdict = is_stable_filtrable_surface(x, e, cfg)?;
    if x.kind() == Kind::Generic {
        let lengths = [e.jump_length(1) as u32, e.jump_length(2) as u32];
        if condition_a_witness(x, e, &lengths, cfg)?.is_none() {
            let abs_a = e.sub.abs(x)?;
            let abs_q = quotient_after_removal_abs(x, e);
            if abs_q < abs_a * (1.0 - cfg.tol) {
                return Ok(AuditedVerdict::Indeterminate {
                    abs_a,
                    abs_competitor: abs_q,
                });
            }
        }
    }
    Ok(match verdict.stable {
        true => AuditedVerdict::Stable {
            witness: verdict.witness,
        },
        false => AuditedVerdict::Unstable {
            witness: verdict.witness,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "branch")]
pub enum HigherVerdict {
    /// Extensions of line bundles are never stable.
    UnstableExtension,
    /// Ideal-sheaf extension: stable exactly when the sub-bundle monomial
    /// outweighs the locus exponents in modulus.
    IdealInequality { stable: bool, lhs: f64, rhs: f64 },
}

impl HigherVerdict {
    pub fn is_stable(&self) -> bool {
        matches!(self, HigherVerdict::IdealInequality { stable: true, .. })
    }
}

/// Stability in dimension three and up, from the normalized classification.
pub fn is_stable_higher(
    x: &HopfManifold,
    t: &HigherExtensionType,
    _cfg: &Config,
) -> Result<HigherVerdict> {
    if x.dim() < 3 || x.kind() != Kind::Generic {
        return Err(Error::UnsupportedKind {
            kind: x.kind(),
            context: "higher stability needs a generic manifold of dimension >= 3".into(),
        });
    }
    match t {
        HigherExtensionType::Decomposable { .. } | HigherExtensionType::LineExtension { .. } => {
            Ok(HigherVerdict::UnstableExtension)
        }
        HigherExtensionType::IdealExtension {
            m, i, j, ki, kj, ..
        } => {
            let logs = x.log_moduli();
            let lhs_log: f64 = m
                .iter()
                .enumerate()
                .filter(|(idx, _)| idx + 1 != *i && idx + 1 != *j)
                .map(|(idx, v)| *v as f64 * logs[idx])
                .sum();
            let rhs_log = *ki as f64 * logs[*i - 1] + *kj as f64 * logs[*j - 1];
            Ok(HigherVerdict::IdealInequality {
                stable: lhs_log > rhs_log,
                lhs: lhs_log.exp(),
                rhs: rhs_log.exp(),
            })
        }
    }
}

/// Structured parametrization of a moduli component: an annulus of
/// sub-bundle moduli, a Picard torsor on a curve, and a projection space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Parametrization {
    pub annulus: Annulus,
    pub annulus_label: String,
    pub pic_degree: i64,
    pub curve: usize,
    pub projection_dim: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModuliDescriptor {
    /// The fixed determinant factor, when one was supplied.
    pub delta: Option<Factor>,
    pub c2: u32,
    pub dim: u64,
    pub nonempty: bool,
    pub parametrization: Option<Parametrization>,
}

/// The moduli space of stable rank-2 bundles with fixed determinant and
/// second Chern class `c2`: empty for `c2 = 0`, of dimension `4 c2`
/// otherwise (for every determinant).
pub fn moduli_dimension(delta: Option<&Factor>, c2: i64) -> Result<ModuliDescriptor> {
    if c2 < 0 {
        return Err(Error::Domain(format!("c2 must be non-negative, got {c2}")));
    }
    if let Some(d) = delta {
        d.validate()?;
    }
    Ok(ModuliDescriptor {
        delta: delta.cloned(),
        c2: c2 as u32,
        dim: 4 * c2 as u64,
        nonempty: c2 > 0,
        parametrization: None,
    })
}

/// Parametrizes the stable filtrable bundles with `c2 = 1`, determinant
/// `delta` and a jump on `T_1`: a point of `D_{1,0} x Pic^1(T_1)` plus a
/// projection, which is unique except over the exceptional relation
/// `a^2 = delta mu_1^{m1 - 1} mu_2^{m2}` (`m1 >= 1`, `m2 > 0`), where a
/// projective line of projections appears.
pub fn c2one_parameters(
    x: &HopfManifold,
    a: &Factor,
    delta: &Factor,
    cfg: &Config,
) -> Result<Parametrization> {
    if !x.is_surface() {
        return Err(Error::UnsupportedKind {
            kind: x.kind(),
            context: "the c2 = 1 parametrization is a surface statement".into(),
        });
    }
    let d = d_domain(x, delta, &[1, 0])?;
    let abs_a = a.abs(x)?;
    if !d.contains(abs_a, cfg.tol) {
        return Err(Error::Precondition(format!(
            "|a| = {abs_a} is not inside the stability domain ({}, {})",
            d.r_lo, d.r_hi
        )));
    }
    Ok(Parametrization {
        annulus: d,
        annulus_label: "D_{1,0}".into(),
        pic_degree: 1,
        curve: 1,
        projection_dim: c2one_projection_dim(x, a, delta, cfg)?,
    })
}

/// Dimension of the projection space in the `c2 = 1` parametrization: 1
/// (a projective line) over the exceptional relation
/// `a^2 = delta mu_1^{m1 - 1} mu_2^{m2}` with `m1 >= 1`, `m2 > 0`, else 0.
/// Equal-modulus diagonals never see the exceptional case. Exposed
/// separately because the relation itself forces `|a|` below the stability
/// domain, so it cannot be reached through the domain-checked entry point.
pub fn c2one_projection_dim(
    x: &HopfManifold,
    a: &Factor,
    delta: &Factor,
    cfg: &Config,
) -> Result<u32> {
    if (x.log_moduli()[0] - x.log_moduli()[1]).abs() <= cfg.tol {
        // With equal moduli the modification always decomposes and the
        // projection is unique.
        return Ok(0);
    }
    let probe = a.pow(2)?.div(delta)?.mul(&Factor::monomial(vec![1, 0]))?;
    Ok(
        match detect_monomial(&probe, x, SignConstraint::AllNonneg, cfg.exp_bound, cfg.tol)? {
            Some(m) if m[0] >= 1 && m[1] >= 1 => 1,
            _ => 0,
        },
    )
}

/// Moduli of mass-`m`, charge-`k` monopole bundles: dimension `2k`,
/// parametrized over `D_m x Pic^k(T_1)` with a `(2k - 2)`-dimensional
/// projection space once the charge exceeds one.
pub fn monopole_parameters(x: &HopfManifold, m: u32, k: u32) -> Result<ModuliDescriptor> {
    if m < 1 || k < 1 {
        return Err(Error::Domain(
            "monopole mass and charge must be at least 1".into(),
        ));
    }
    if (x.log_moduli()[0] - x.log_moduli()[x.dim() - 1]).abs() > 1e-12 {
        return Err(Error::UnsupportedKind {
            kind: x.kind(),
            context: "monopole moduli are stated over equal-modulus diagonals".into(),
        });
    }
    let delta = Factor::one(x.dim());
    let annulus = d_domain_classical(x, &delta, m)?;
    Ok(ModuliDescriptor {
        delta: Some(delta),
        c2: m * k,
        dim: 2 * k as u64,
        nonempty: true,
        parametrization: Some(Parametrization {
            annulus,
            annulus_label: format!("D_{m}"),
            pic_degree: k as i64,
            curve: 1,
            projection_dim: 2 * k - 2,
        }),
    })
}
