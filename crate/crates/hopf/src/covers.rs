//! Cyclic coverings of generic Hopf surfaces, the non-primary surfaces they
//! produce, and the vanishing of the second Chern class under pushforward.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::{BetaConvention, Config};
use crate::error::{Error, Result};
use crate::factors::Factor;
use crate::manifold::{HopfManifold, Kind};

/// The effective reduced branch divisor of a cyclic cover; nothing else is
/// available on a generic surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// Unbranched; the defining bundle is a root of unity of some order `k`.
    Empty,
    T1,
    T2,
    #[serde(rename = "t1t2")]
    T1PlusT2,
}

/// The surface an `r`-cyclic cover produces.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "surface")]
pub enum CoverResult {
    /// Disjoint copies of a smaller cover.
    DisconnectedCopies { count: u32, base: Box<CoverResult> },
    /// A diagonal Hopf surface covering unbranched.
    UnramifiedHopf {
        #[serde(with = "crate::wire")]
        mu1: Complex64,
        #[serde(with = "crate::wire")]
        mu2: Complex64,
    },
    /// A diagonal Hopf surface with the covering map raising one coordinate
    /// to the `r`-th power; `map_exponents` records the powers `(e1, e2)`
    /// of `(z1, z2)`.
    RamifiedHopf {
        #[serde(with = "crate::wire")]
        mu1: Complex64,
        #[serde(with = "crate::wire")]
        mu2: Complex64,
        map_exponents: (u32, u32),
    },
    /// A non-elliptic non-primary Hopf surface: the punctured total space
    /// of `O(d)` over the projective line modulo `(beta, mu)`.
    NonPrimary {
        d: i64,
        #[serde(with = "crate::wire")]
        beta: Complex64,
        #[serde(with = "crate::wire")]
        mu: Complex64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverDescriptor {
    pub r: u32,
    pub branch: Branch,
    /// The defining line-bundle factor, an `r`-th root of the branch
    /// divisor's bundle.
    pub line_bundle: Factor,
    pub result: CoverResult,
}

fn principal_root(v: Complex64, r: u32) -> Complex64 {
    v.powf(1.0 / r as f64)
}

/// Classifies the `r`-cyclic cover of a generic surface with the given
/// branch divisor. For `Branch::Empty` the order `k` of the defining
/// bundle must be supplied and divide `r` (`k = 0` denoting the trivial
/// bundle). Each admissible datum gives exactly one cover.
pub fn classify_cyclic_cover(
    x: &HopfManifold,
    r: u32,
    branch: Branch,
    k: Option<u32>,
    cfg: &Config,
) -> Result<CoverDescriptor> {
    if x.kind() != Kind::Generic || !x.is_surface() {
        return Err(Error::UnsupportedKind {
            kind: x.kind(),
            context: "the cover case table is stated on generic surfaces".into(),
        });
    }
    if r < 2 {
        return Err(Error::Domain(format!(
            "covering degree r = {r} must be at least 2"
        )));
    }
    let (m1, m2) = (x.mu()[0], x.mu()[1]);
    match branch {
        Branch::Empty => {
            let k = k.ok_or_else(|| {
                Error::Domain("an unbranched cover needs the order k of its bundle".into())
            })?;
            if k != 0 && !r.is_multiple_of(k) {
                return Err(Error::Domain(format!(
                    "order k = {k} does not divide r = {r}"
                )));
            }
            let root = if k == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::from_polar(1.0, std::f64::consts::TAU / k as f64)
            };
            let line_bundle = Factor::constant(2, root)?;
            let result = if k == r {
                CoverResult::UnramifiedHopf {
                    mu1: m1.powi(r as i32),
                    mu2: m2.powi(r as i32),
                }
            } else if k <= 1 {
                CoverResult::DisconnectedCopies {
                    count: r,
                    base: Box::new(CoverResult::UnramifiedHopf { mu1: m1, mu2: m2 }),
                }
            } else {
                CoverResult::DisconnectedCopies {
                    count: r / k,
                    base: Box::new(CoverResult::UnramifiedHopf {
                        mu1: m1.powi(k as i32),
                        mu2: m2.powi(k as i32),
                    }),
                }
            };
            Ok(CoverDescriptor {
                r,
                branch,
                line_bundle,
                result,
            })
        }
        Branch::T1 => {
            // O(T_1) = L_{mu_2}; the cover raises z_2 to the r-th power.
            let alpha = principal_root(m2, r);
            Ok(CoverDescriptor {
                r,
                branch,
                line_bundle: Factor::constant(2, alpha)?,
                result: CoverResult::RamifiedHopf {
                    mu1: m1,
                    mu2: alpha,
                    map_exponents: (1, r),
                },
            })
        }
        Branch::T2 => {
            let alpha = principal_root(m1, r);
            Ok(CoverDescriptor {
                r,
                branch,
                line_bundle: Factor::constant(2, alpha)?,
                result: CoverResult::RamifiedHopf {
                    mu1: alpha,
                    mu2: m2,
                    map_exponents: (r, 1),
                },
            })
        }
        Branch::T1PlusT2 => {
            let beta = match cfg.beta_convention {
                BetaConvention::Proof => principal_root(m1.finv() * m2, r),
                BetaConvention::Statement => principal_root(m1, r),
            };
            Ok(CoverDescriptor {
                r,
                branch,
                line_bundle: Factor::constant(2, principal_root(m1 * m2, r))?,
                result: CoverResult::NonPrimary {
                    d: -(r as i64),
                    beta,
                    mu: m1,
                },
            })
        }
    }
}

/// A finitely generated abelian group: free rank plus torsion orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FgAbGroup {
    pub free_rank: u32,
    pub torsion: Vec<u64>,
}

impl FgAbGroup {
    fn free(rank: u32) -> Self {
        FgAbGroup {
            free_rank: rank,
            torsion: vec![],
        }
    }

    fn with_torsion(rank: u32, order: u64) -> Self {
        // Order-1 torsion is the trivial group and is dropped.
        if order <= 1 {
            Self::free(rank)
        } else {
            FgAbGroup {
                free_rank: rank,
                torsion: vec![order],
            }
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyTable {
    pub h0: FgAbGroup,
    pub h1: FgAbGroup,
    pub h2: FgAbGroup,
    pub h3: FgAbGroup,
    pub h4: FgAbGroup,
}

/// Integral cohomology of the non-primary surface built from `O(d)`:
/// torsion of order `|d|` concentrates in degrees 2 and 3.
pub fn nonprimary_homology(d: i64) -> Result<HomologyTable> {
    if d == 0 {
        return Err(Error::Domain(
            "the twist d of a non-primary surface is non-zero".into(),
        ));
    }
    let t = d.unsigned_abs();
    Ok(HomologyTable {
        h0: FgAbGroup::free(1),
        h1: FgAbGroup::free(1),
        h2: FgAbGroup::with_torsion(0, t),
        h3: FgAbGroup::with_torsion(1, t),
        h4: FgAbGroup::free(1),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PushforwardResult {
    pub c2: u32,
    pub filtrable: bool,
    /// For the trivial bundle the pushforward splits off the structure
    /// sheaf against the inverse of the defining bundle.
    pub summands: Option<(Factor, Factor)>,
}

/// Pushes a line bundle down a connected double cover. Every first Chern
/// class upstairs is torsion, so the resulting rank-2 bundle has `c2 = 0`
/// and is therefore filtrable.
pub fn pushforward_rank2(cover: &CoverDescriptor, m: &Factor) -> Result<PushforwardResult> {
    if cover.r != 2 {
        return Err(Error::Precondition(format!(
            "pushforward is stated for double covers, r = {}",
            cover.r
        )));
    }
    if matches!(cover.result, CoverResult::DisconnectedCopies { .. }) {
        return Err(Error::Precondition("the cover must be connected".into()));
    }
    m.validate()?;
    let summands = if m.is_trivial() {
        Some((Factor::one(m.len()), cover.line_bundle.inv()?))
    } else {
        None
    };
    Ok(PushforwardResult {
        c2: 0,
        filtrable: true,
        summands,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::classify_manifold;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn cfg() -> Config {
        Config::default()
    }

    fn generic2() -> HopfManifold {
        HopfManifold::new(vec![re(0.31), re(0.47)], &cfg()).unwrap()
    }

    #[test]
    fn unbranched_cases() {
        let x = generic2();
        let c = cfg();
        // Trivial bundle: r disjoint copies of the surface itself.
        let d = classify_cyclic_cover(&x, 2, Branch::Empty, Some(0), &c).unwrap();
        match d.result {
            CoverResult::DisconnectedCopies { count, ref base } => {
                assert_eq!(count, 2);
                assert_eq!(
                    **base,
                    CoverResult::UnramifiedHopf {
                        mu1: re(0.31),
                        mu2: re(0.47)
                    }
                );
            }
            ref other => panic!("unexpected {other:?}"),
        }
        // Full order: the connected unramified cover squares the diagonal.
        let d = classify_cyclic_cover(&x, 2, Branch::Empty, Some(2), &c).unwrap();
        assert_eq!(
            d.result,
            CoverResult::UnramifiedHopf {
                mu1: re(0.31 * 0.31),
                mu2: re(0.47 * 0.47)
            }
        );
        // Intermediate order: copies of the smaller cover.
        let d = classify_cyclic_cover(&x, 6, Branch::Empty, Some(3), &c).unwrap();
        match d.result {
            CoverResult::DisconnectedCopies { count, ref base } => {
                assert_eq!(count, 2);
                assert!(matches!(**base, CoverResult::UnramifiedHopf { .. }));
            }
            ref other => panic!("unexpected {other:?}"),
        }
        // Non-divisor order is rejected.
        assert!(classify_cyclic_cover(&x, 4, Branch::Empty, Some(3), &c).is_err());
        assert!(classify_cyclic_cover(&x, 4, Branch::Empty, None, &c).is_err());
    }

    #[test]
    fn branched_cases_solve_for_roots() {
        let x = generic2();
        let c = cfg();
        for r in [2u32, 3] {
            let d = classify_cyclic_cover(&x, r, Branch::T1, None, &c).unwrap();
            match d.result {
                CoverResult::RamifiedHopf {
                    mu1,
                    mu2,
                    map_exponents,
                } => {
                    assert_eq!(mu1, re(0.31));
                    assert!((mu2.powi(r as i32) - re(0.47)).norm() < 1e-12);
                    assert_eq!(map_exponents, (1, r));
                }
                ref other => panic!("unexpected {other:?}"),
            }
            let d = classify_cyclic_cover(&x, r, Branch::T2, None, &c).unwrap();
            match d.result {
                CoverResult::RamifiedHopf {
                    mu1,
                    mu2,
                    map_exponents,
                } => {
                    assert!((mu1.powi(r as i32) - re(0.31)).norm() < 1e-12);
                    assert_eq!(mu2, re(0.47));
                    assert_eq!(map_exponents, (r, 1));
                }
                ref other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn doubly_branched_case_and_beta_conventions() {
        let x = generic2();
        let mut c = cfg();
        let d = classify_cyclic_cover(&x, 3, Branch::T1PlusT2, None, &c).unwrap();
        match d.result {
            CoverResult::NonPrimary { d: twist, beta, mu } => {
                assert_eq!(twist, -3);
                assert_eq!(mu, re(0.31));
                assert!((beta.powi(3) - re(0.47 / 0.31)).norm() < 1e-12);
            }
            ref other => panic!("unexpected {other:?}"),
        }
        c.beta_convention = BetaConvention::Statement;
        let d = classify_cyclic_cover(&x, 3, Branch::T1PlusT2, None, &c).unwrap();
        match d.result {
            CoverResult::NonPrimary { beta, .. } => {
                assert!((beta.powi(3) - re(0.31)).norm() < 1e-12);
            }
            ref other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn branched_cover_of_generic_surface_stays_generic() {
        // (mu_1, alpha) with alpha^2 = mu_2 resonates only if the original
        // pair did at doubled exponents, so the cover is again generic.
        let x = generic2();
        let d = classify_cyclic_cover(&x, 2, Branch::T1, None, &cfg()).unwrap();
        if let CoverResult::RamifiedHopf { mu1, mu2, .. } = d.result {
            let kind = classify_manifold(&[mu1, mu2], 16, 1e-9).unwrap();
            assert_eq!(kind, Kind::Generic);
        } else {
            panic!("expected a ramified Hopf surface");
        }
    }

    #[test]
    fn covers_require_generic_surfaces() {
        let y = HopfManifold::new(vec![re(0.25), re(0.5)], &cfg()).unwrap();
        assert!(classify_cyclic_cover(&y, 2, Branch::T1, None, &cfg()).is_err());
    }

    #[test]
    fn homology_tables() {
        // d = -1 is the plain diagonal case: no torsion anywhere.
        let t = nonprimary_homology(-1).unwrap();
        assert!(t.h2.is_trivial());
        assert_eq!(t.h3, FgAbGroup::free(1));
        let t = nonprimary_homology(-2).unwrap();
        assert_eq!(
            t.h2,
            FgAbGroup {
                free_rank: 0,
                torsion: vec![2]
            }
        );
        assert_eq!(
            t.h3,
            FgAbGroup {
                free_rank: 1,
                torsion: vec![2]
            }
        );
        assert_eq!(nonprimary_homology(-5).unwrap().h2.torsion, vec![5]);
        assert!(nonprimary_homology(0).is_err());
    }

    #[test]
    fn pushforward_kills_c2() {
        let x = generic2();
        let c = cfg();
        for (branch, k) in [
            (Branch::Empty, Some(2)),
            (Branch::T1, None),
            (Branch::T2, None),
            (Branch::T1PlusT2, None),
        ] {
            let cover = classify_cyclic_cover(&x, 2, branch, k, &c).unwrap();
            let m = Factor::new(vec![1, -2], re(0.9)).unwrap();
            let p = pushforward_rank2(&cover, &m).unwrap();
            assert_eq!((p.c2, p.filtrable), (0, true));
        }
        // The trivial bundle pushes to a split bundle.
        let cover = classify_cyclic_cover(&x, 2, Branch::Empty, Some(2), &c).unwrap();
        let p = pushforward_rank2(&cover, &Factor::one(2)).unwrap();
        let (s1, s2) = p.summands.unwrap();
        assert!(s1.is_trivial());
        assert_eq!(s2, cover.line_bundle.inv().unwrap());
        // Disconnected covers are rejected.
        let cover = classify_cyclic_cover(&x, 2, Branch::Empty, Some(0), &c).unwrap();
        assert!(pushforward_rank2(&cover, &Factor::one(2)).is_err());
    }
}
