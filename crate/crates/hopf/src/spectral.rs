//! Spectral covers of rank-2 bundles on classical surfaces: divisor classes
//! in the relative Jacobian, graphs on the quotient quadric, Casimirs, and
//! the Poisson rank with its symplectic-leaf labels.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::elliptic::{h0_ad, EllipticPic, SplittingKind};
use crate::error::{Error, Result};
use crate::factors::Factor;
use crate::manifold::{HopfManifold, Kind};
use crate::rank2::FiltrableRank2;

/// A point of the projective line in homogeneous coordinates `[z0 : z1]`
/// (affine value `z0 / z1`), normalized so the larger coordinate is 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct P1Point {
    #[serde(with = "crate::wire::pair")]
    pub z: [Complex64; 2],
}

impl P1Point {
    pub fn new(z0: Complex64, z1: Complex64) -> Result<Self> {
        if !(z0.norm().is_finite() && z1.norm().is_finite()) {
            return Err(Error::Domain(
                "projective coordinates must be finite".into(),
            ));
        }
        if z0.norm() == 0.0 && z1.norm() == 0.0 {
            return Err(Error::Domain("[0 : 0] is not a projective point".into()));
        }
        Ok(if z0.norm() >= z1.norm() {
            P1Point {
                z: [Complex64::new(1.0, 0.0), z1 / z0],
            }
        } else {
            P1Point {
                z: [z0 / z1, Complex64::new(1.0, 0.0)],
            }
        })
    }

    pub fn from_affine(v: Complex64) -> Result<Self> {
        Self::new(v, Complex64::new(1.0, 0.0))
    }

    pub fn infinity() -> Self {
        P1Point {
            z: [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        }
    }

    pub fn affine(&self) -> Option<Complex64> {
        (self.z[1].norm() > 0.0).then(|| self.z[0] / self.z[1])
    }

    pub fn approx_eq(&self, other: &P1Point, tol: f64) -> bool {
        (self.z[0] * other.z[1] - self.z[1] * other.z[0]).norm() <= tol
    }
}

/// Base point of a fibre named by a curve index: the two axis curves sit
/// over zero and infinity, anonymous fibres over successive integers.
pub fn fiber_point(curve: usize) -> Result<P1Point> {
    match curve {
        0 => Err(Error::Domain("curve indices are 1-based".into())),
        1 => Ok(P1Point::infinity()),
        2 => Ok(P1Point {
            z: [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        }),
        c => P1Point::from_affine(Complex64::new((c - 2) as f64, 0.0)),
    }
}

/// A divisor class on the ruled relative Jacobian, written against the
/// section class and the fibre class; both squares vanish and they pair
/// to one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuledClass {
    pub s: i64,
    pub f: i64,
}

pub fn intersect(a: &RuledClass, b: &RuledClass) -> i64 {
    a.s * b.f + b.s * a.f
}

/// A rational self-map of the projective line, stored as numerator and
/// denominator coefficient lists (ascending powers). Canonical form trims
/// trailing zeros and scales the leading denominator coefficient to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalMap {
    #[serde(with = "crate::wire::vec")]
    pub num: Vec<Complex64>,
    #[serde(with = "crate::wire::vec")]
    pub den: Vec<Complex64>,
}

fn trim(mut v: Vec<Complex64>) -> Vec<Complex64> {
    while v.len() > 1 && v.last().is_some_and(|c| c.norm() == 0.0) {
        v.pop();
    }
    v
}

impl RationalMap {
    pub fn new(num: Vec<Complex64>, den: Vec<Complex64>) -> Result<Self> {
        let num = trim(num);
        let den = trim(den);
        if den.iter().all(|c| c.norm() == 0.0) {
            return Err(Error::Domain(
                "denominator must not vanish identically".into(),
            ));
        }
        let lead = *den.last().unwrap();
        let scale = lead.finv();
        Ok(RationalMap {
            num: num.iter().map(|c| c * scale).collect(),
            den: den.iter().map(|c| c * scale).collect(),
        })
    }

    pub fn constant(v: Complex64) -> Result<Self> {
        Self::new(vec![v], vec![Complex64::new(1.0, 0.0)])
    }

    pub fn identity() -> Self {
        RationalMap {
            num: vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            den: vec![Complex64::new(1.0, 0.0)],
        }
    }

    pub fn degree(&self) -> u32 {
        (self.num.len().max(self.den.len()) - 1) as u32
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    /// Projective evaluation; infinity is a legitimate value.
    pub fn eval(&self, p: &P1Point) -> Result<P1Point> {
        let d = self.degree() as usize;
        let hom = |coeffs: &[Complex64]| -> Complex64 {
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, c) in coeffs.iter().enumerate() {
                acc += c * p.z[0].powi(i as i32) * p.z[1].powi((d - i) as i32);
            }
            acc
        };
        let n = hom(&self.num);
        let den = hom(&self.den);
        if n.norm() == 0.0 && den.norm() == 0.0 {
            return Err(Error::Inconsistency(
                "the map is indeterminate at the requested point".into(),
            ));
        }
        P1Point::new(n, den)
    }
}

/// The 2-section part of a spectral cover.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Bisection {
    /// Two sections: the restriction classes of the sub-bundle and of its
    /// determinant complement. Exactly the filtrable case.
    Reducible {
        sec1: EllipticPic,
        sec2: EllipticPic,
    },
    /// An irreducible bisection, recorded through its descended graph.
    Irreducible { graph: RationalMap },
}

/// The divisor in the relative Jacobian recording fibrewise isomorphism
/// classes: vertical fibres over the jump points plus a bisection.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralCover {
    pub vertical: Vec<(P1Point, u32)>,
    pub bisection: Bisection,
    pub class: RuledClass,
}

impl SpectralCover {
    pub fn vertical_multiplicity(&self) -> u32 {
        self.vertical.iter().map(|(_, m)| m).sum()
    }

    pub fn self_intersection(&self) -> i64 {
        intersect(&self.class, &self.class)
    }
}

/// The involution pairing a class with its determinant complement.
pub fn involution(lambda: &EllipticPic, det_class: &EllipticPic) -> Result<EllipticPic> {
    det_class.div(lambda)
}

/// Spectral cover of a filtrable descriptor on a classical surface. Every
/// point of `Z` must sit on a fibre (their jump records carry the vertical
/// multiplicities); the bisection is reducible with sections given by
/// restriction.
pub fn spectral_of_filtrable(
    x: &HopfManifold,
    e: &FiltrableRank2,
    cfg: &Config,
) -> Result<SpectralCover> {
    if x.kind() != Kind::Classical || !x.is_surface() {
        return Err(Error::UnsupportedKind {
            kind: x.kind(),
            context: "spectral covers are built over classical surfaces".into(),
        });
    }
    e.validate(x)?;
    if e.total_jump_multiplicity() != e.c2 {
        return Err(Error::Precondition(
            "every point must lie on a fibre: jump multiplicities must sum to c2".into(),
        ));
    }
    // All fibres are isomorphic to the first axis curve, so restriction
    // there gives the splitting classes on a generic fibre.
    let sec1 = crate::picard::restrict_to_curve(x, &e.sub, 1, cfg)?.to_elliptic_pic();
    let det_class = crate::picard::restrict_to_curve(x, &e.det, 1, cfg)?.to_elliptic_pic();
    let sec2 = involution(&sec1, &det_class)?;
    let mut vertical = Vec::new();
    for j in &e.jumps {
        vertical.push((fiber_point(j.curve)?, j.multiplicity()));
    }
    Ok(SpectralCover {
        vertical,
        bisection: Bisection::Reducible { sec1, sec2 },
        class: RuledClass {
            s: 2,
            f: e.c2 as i64,
        },
    })
}

/// Genus of a smooth irreducible bisection with `k` of the `c2` points
/// absorbed in vertical fibres.
pub fn bisection_genus(c2: u32, k: u32) -> Result<u32> {
    if k >= c2 {
        return Err(Error::Precondition(
            "a smooth irreducible bisection needs c2 - k >= 1".into(),
        ));
    }
    Ok(2 * (c2 - k) - 1)
}

/// The image of a spectral cover on the quotient quadric: vertical lines
/// plus the graph of a rational map of degree `c2 - k`; the map is constant
/// exactly in the filtrable case.
#[derive(Debug, Clone, Serialize)]
pub struct GraphData {
    pub vertical: Vec<(P1Point, u32)>,
    pub map: RationalMap,
}

impl GraphData {
    pub fn c2(&self) -> u32 {
        self.vertical.iter().map(|(_, m)| m).sum::<u32>() + self.map.degree()
    }

    /// Dimension of the ambient linear system on the quadric.
    pub fn ambient_dim(&self) -> u32 {
        2 * self.c2() + 1
    }
}

pub fn graph_of_spectral(
    s: &SpectralCover,
    det_class: &EllipticPic,
    tol: f64,
) -> Result<GraphData> {
    let map = match &s.bisection {
        Bisection::Reducible { sec1, sec2 } => {
            let paired = involution(sec1, det_class)?;
            if !paired.same_class(sec2, tol) {
                return Err(Error::Precondition(
                    "the bisection is not invariant under the determinant involution".into(),
                ));
            }
            RationalMap::constant(orbit_chart(sec1, sec2))?
        }
        Bisection::Irreducible { graph } => graph.clone(),
    };
    let k = s.vertical_multiplicity();
    if k as i64 + map.degree() as i64 != s.class.f {
        return Err(Error::Inconsistency(format!(
            "graph degree {} plus vertical multiplicity {k} must equal the fibre class {}",
            map.degree(),
            s.class.f
        )));
    }
    Ok(GraphData {
        vertical: s.vertical.clone(),
        map,
    })
}

/// Chart coordinate of an involution orbit `{a, b}` on the quotient line:
/// the annulus representative of larger modulus (argument breaking ties),
/// so both orderings of the pair land on the same point.
fn orbit_chart(a: &EllipticPic, b: &EllipticPic) -> Complex64 {
    let pick_a = match a.cls.norm().partial_cmp(&b.cls.norm()) {
        Some(std::cmp::Ordering::Greater) => true,
        Some(std::cmp::Ordering::Less) => false,
        _ => a.cls.arg() <= b.cls.arg(),
    };
    if pick_a {
        a.cls
    } else {
        b.cls
    }
}

/// Casimir values: the graph map evaluated at the two marked base points.
pub fn casimirs(g: &GraphData, x1: &P1Point, x2: &P1Point, tol: f64) -> Result<(P1Point, P1Point)> {
    for (p, _) in &g.vertical {
        if p.approx_eq(x1, tol) || p.approx_eq(x2, tol) {
            return Err(Error::Domain(
                "Casimir undefined: evaluation point lies on a vertical component".into(),
            ));
        }
    }
    Ok((g.map.eval(x1)?, g.map.eval(x2)?))
}

/// Rank of the Poisson structure at a bundle with the given restriction
/// types over the two anticanonical curves.
pub fn poisson_rank(c2: u32, st1: SplittingKind, st2: SplittingKind) -> Result<u64> {
    if c2 < 1 {
        return Err(Error::Domain("the moduli space is empty for c2 = 0".into()));
    }
    let drop = h0_ad(st1) + h0_ad(st2);
    let total = 4 * c2 as u64;
    if drop > total {
        return Err(Error::Inconsistency(format!(
            "splitting data absorbs {drop} > 4 c2 = {total}"
        )));
    }
    Ok(total - drop)
}

#[derive(Debug, Clone, Serialize)]
pub struct LeafLabel {
    pub c1: P1Point,
    pub c2: P1Point,
    pub rank: u64,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case", tag = "type")]
pub enum LeafParametrization {
    /// Jump position away from the marked curves plus a degree-one class
    /// on its fibre: a two-dimensional leaf.
    Surface { excluded: [P1Point; 2] },
    /// Restriction to a marked curve pins the bundle completely.
    Point,
}

#[derive(Debug, Clone, Serialize)]
pub struct Leaf {
    pub label: LeafLabel,
    pub parametrization: LeafParametrization,
}

/// Symplectic leaf through a `c2 = 1` stable filtrable bundle on a
/// classical surface: two-dimensional off the marked curves, a point on
/// them.
pub fn leaf_of_bundle(x: &HopfManifold, e: &FiltrableRank2, cfg: &Config) -> Result<Leaf> {
    if e.c2 != 1 {
        return Err(Error::Precondition(
            "leaf description is stated for c2 = 1".into(),
        ));
    }
    let s = spectral_of_filtrable(x, e, cfg)?;
    let det_class = EllipticPic::new(x.mu()[0], 0, e.det.value(x)?)?;
    let g = graph_of_spectral(&s, &det_class, cfg.tol)?;
    let value = g
        .map
        .eval(&P1Point::from_affine(Complex64::new(0.5, 0.0))?)?;
    let jump_curve = e.jumps[0].curve;
    if jump_curve <= 2 {
        let kinds = if jump_curve == 1 {
            (
                SplittingKind::UnstableJump(1),
                SplittingKind::RegularDistinct,
            )
        } else {
            (
                SplittingKind::RegularDistinct,
                SplittingKind::UnstableJump(1),
            )
        };
        let rank = poisson_rank(1, kinds.0, kinds.1)?;
        Ok(Leaf {
            label: LeafLabel {
                c1: value,
                c2: value,
                rank,
            },
            parametrization: LeafParametrization::Point,
        })
    } else {
        let rank = poisson_rank(
            1,
            SplittingKind::RegularDistinct,
            SplittingKind::RegularDistinct,
        )?;
        Ok(Leaf {
            label: LeafLabel {
                c1: value,
                c2: value,
                rank,
            },
            parametrization: LeafParametrization::Surface {
                excluded: [fiber_point(1)?, fiber_point(2)?],
            },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HigherSpectralStructure {
    /// All spectral values distinct: the bundle decomposes.
    Decomposes,
    /// All spectral values equal: possibly a twisted pullback from the base.
    PossiblyPullback,
    /// Repeated but not constant values: a filtration remains.
    Filtration,
}

/// Spectral data of a rank-`r` bundle on a classical manifold of dimension
/// three and up: horizontal components only, vanishing vertical multiplier
/// and vanishing top Chern class.
#[derive(Debug, Clone, Serialize)]
pub struct HigherSpectral {
    pub lambdas: Vec<EllipticPic>,
    pub vertical_multiplicity: u32,
    pub c_top: i64,
    pub filtrable: bool,
    pub structure: HigherSpectralStructure,
}

pub fn higher_spectral(
    x: &HopfManifold,
    factors: &[Factor],
    cfg: &Config,
) -> Result<HigherSpectral> {
    if x.kind() != Kind::Classical || x.dim() < 3 {
        return Err(Error::UnsupportedKind {
            kind: x.kind(),
            context: "higher spectral covers live on classical manifolds of dimension >= 3".into(),
        });
    }
    if factors.is_empty() {
        return Err(Error::Domain("need at least one line-bundle factor".into()));
    }
    let q = x.mu()[0];
    let lambdas = factors
        .iter()
        .map(|f| EllipticPic::new(q, 0, f.value(x)?))
        .collect::<Result<Vec<_>>>()?;
    let mut all_distinct = true;
    let mut all_equal = true;
    for i in 0..lambdas.len() {
        for j in i + 1..lambdas.len() {
            if lambdas[i].same_class(&lambdas[j], cfg.tol) {
                all_distinct = false;
            } else {
                all_equal = false;
            }
        }
    }
    let structure = if all_distinct {
        HigherSpectralStructure::Decomposes
    } else if all_equal {
        HigherSpectralStructure::PossiblyPullback
    } else {
        HigherSpectralStructure::Filtration
    };
    Ok(HigherSpectral {
        lambdas,
        vertical_multiplicity: 0,
        c_top: 0,
        filtrable: true,
        structure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank2::{JumpRecord, PointSet};

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn cfg() -> Config {
        Config::default()
    }

    fn classical() -> HopfManifold {
        HopfManifold::new(vec![re(0.5), re(0.5)], &cfg()).unwrap()
    }

    fn bundle_with_jumps(x: &HopfManifold, jumps: Vec<JumpRecord>) -> FiltrableRank2 {
        let mut on_curve = vec![0u32; 2];
        let mut total = 0;
        for j in &jumps {
            if j.curve <= 2 {
                on_curve[j.curve - 1] += j.multiplicity();
            }
            total += j.multiplicity();
        }
        FiltrableRank2::new(
            x,
            Factor::new(vec![0, 0], re(0.7)).unwrap(),
            Factor::new(vec![0, 0], re(0.9)).unwrap(),
            total,
            PointSet { total, on_curve },
            jumps,
        )
        .unwrap()
    }

    #[test]
    fn intersection_form() {
        let sigma = RuledClass { s: 1, f: 0 };
        let fibre = RuledClass { s: 0, f: 1 };
        assert_eq!(intersect(&sigma, &fibre), 1);
        assert_eq!(intersect(&fibre, &fibre), 0);
        let c = RuledClass { s: 2, f: 2 };
        assert_eq!(intersect(&c, &c), 8);
    }

    #[test]
    fn split_bundle_cover() {
        let x = classical();
        let e = bundle_with_jumps(&x, vec![]);
        let s = spectral_of_filtrable(&x, &e, &cfg()).unwrap();
        assert!(s.vertical.is_empty());
        assert_eq!(s.class, RuledClass { s: 2, f: 0 });
        assert_eq!(s.self_intersection(), 0);
        assert!(matches!(s.bisection, Bisection::Reducible { .. }));
    }

    #[test]
    fn jump_cover_matches_chern_class() {
        let x = classical();
        let e = bundle_with_jumps(
            &x,
            vec![JumpRecord {
                curve: 1,
                heights: vec![1],
            }],
        );
        let s = spectral_of_filtrable(&x, &e, &cfg()).unwrap();
        assert_eq!(s.vertical.len(), 1);
        assert_eq!(s.class, RuledClass { s: 2, f: 1 });
        assert_eq!(s.self_intersection(), 4);
        // Sections pair under the involution.
        let det_class = EllipticPic::new(x.mu()[0], 0, e.det.value(&x).unwrap()).unwrap();
        if let Bisection::Reducible { sec1, sec2 } = &s.bisection {
            assert!(involution(sec1, &det_class).unwrap().same_class(sec2, 1e-9));
        } else {
            panic!("expected reducible bisection");
        }
    }

    #[test]
    fn self_intersection_is_four_c2() {
        let x = classical();
        for profile in [
            vec![(1usize, vec![2, 1])],
            vec![(1, vec![1]), (2, vec![3]), (3, vec![2])],
        ] {
            let jumps = profile
                .into_iter()
                .map(|(curve, heights)| JumpRecord { curve, heights })
                .collect();
            let e = bundle_with_jumps(&x, jumps);
            let s = spectral_of_filtrable(&x, &e, &cfg()).unwrap();
            assert_eq!(s.self_intersection(), 4 * e.c2 as i64);
        }
    }

    #[test]
    fn genus_formula_against_riemann_hurwitz() {
        // Oracle: the double cover of the graph of a degree-d map is
        // branched over the preimages of four values; count them by
        // explicit root enumeration of z^d = y.
        for d in 1..=5u32 {
            let mut branch_points = 0u32;
            for y in [
                re(0.7),
                re(1.3),
                Complex64::new(0.2, 0.5),
                Complex64::new(-0.4, 1.1),
            ] {
                let r = y.norm().powf(1.0 / d as f64);
                let base = y.arg() / d as f64;
                let mut roots: Vec<Complex64> = Vec::new();
                for j in 0..d {
                    let z = Complex64::from_polar(
                        r,
                        base + std::f64::consts::TAU * j as f64 / d as f64,
                    );
                    assert!((z.powi(d as i32) - y).norm() < 1e-9);
                    if roots.iter().all(|w| (w - z).norm() > 1e-6) {
                        roots.push(z);
                    }
                }
                branch_points += roots.len() as u32;
            }
            let oracle = branch_points / 2 - 1;
            for k in 0..=3u32 {
                assert_eq!(
                    bisection_genus(d + k, k).unwrap(),
                    oracle,
                    "d = {d}, k = {k}"
                );
            }
        }
        assert_eq!(bisection_genus(1, 0).unwrap(), 1);
        assert_eq!(bisection_genus(2, 0).unwrap(), 3);
        assert!(bisection_genus(2, 2).is_err());
    }

    #[test]
    fn graph_of_reducible_cover_is_constant() {
        let x = classical();
        let e = bundle_with_jumps(
            &x,
            vec![JumpRecord {
                curve: 1,
                heights: vec![1],
            }],
        );
        let s = spectral_of_filtrable(&x, &e, &cfg()).unwrap();
        let det_class = EllipticPic::new(x.mu()[0], 0, e.det.value(&x).unwrap()).unwrap();
        let g = graph_of_spectral(&s, &det_class, 1e-9).unwrap();
        assert!(g.map.is_constant());
        assert_eq!(g.c2(), 1);
        assert_eq!(g.ambient_dim(), 3);
        // Swapping the sections lands on the same chart point.
        if let Bisection::Reducible { sec1, sec2 } = &s.bisection {
            assert_eq!(orbit_chart(sec1, sec2), orbit_chart(sec2, sec1));
        }
    }

    #[test]
    fn casimir_values() {
        let x1 = fiber_point(1).unwrap();
        let x2 = fiber_point(2).unwrap();
        // Constant map: equal values.
        let g = GraphData {
            vertical: vec![],
            map: RationalMap::constant(re(0.8)).unwrap(),
        };
        let (c1, c2) = casimirs(&g, &x1, &x2, 1e-9).unwrap();
        assert!(c1.approx_eq(&c2, 1e-12));
        // The identity map separates distinct points.
        let g = GraphData {
            vertical: vec![],
            map: RationalMap::identity(),
        };
        let (c1, c2) = casimirs(&g, &x1, &x2, 1e-9).unwrap();
        assert!(!c1.approx_eq(&c2, 1e-9));
        assert!(c1.approx_eq(&P1Point::infinity(), 1e-12));
        // A degree-one map with prescribed values passes through them.
        let target = re(2.5);
        let map = RationalMap::new(vec![target, re(1.0) - target], vec![re(1.0)]).unwrap();
        let g = GraphData {
            vertical: vec![],
            map,
        };
        let p0 = P1Point::from_affine(re(0.0)).unwrap();
        let p1 = P1Point::from_affine(re(1.0)).unwrap();
        let (c1, c2) = casimirs(&g, &p0, &p1, 1e-9).unwrap();
        assert!(c1.approx_eq(&P1Point::from_affine(target).unwrap(), 1e-12));
        assert!(c2.approx_eq(&P1Point::from_affine(re(1.0)).unwrap(), 1e-12));
        // Evaluation at a vertical point is undefined.
        let g = GraphData {
            vertical: vec![(x1, 1)],
            map: RationalMap::constant(re(0.8)).unwrap(),
        };
        assert!(casimirs(&g, &x1, &x2, 1e-9).is_err());
    }

    #[test]
    fn poisson_rank_table() {
        use SplittingKind::*;
        assert_eq!(
            poisson_rank(1, RegularDistinct, RegularDistinct).unwrap(),
            2
        );
        assert_eq!(
            poisson_rank(1, UnstableJump(1), RegularDistinct).unwrap(),
            0
        );
        assert_eq!(
            poisson_rank(3, RegularDistinct, RegularDistinct).unwrap(),
            10
        );
        assert_eq!(poisson_rank(1, AtiyahNonSplit, RegularDistinct).unwrap(), 2);
        assert!(poisson_rank(0, RegularDistinct, RegularDistinct).is_err());
        // A deep jump on a small moduli space is inconsistent data.
        assert!(poisson_rank(1, UnstableJump(2), UnstableJump(1)).is_err());
    }

    #[test]
    fn poisson_rank_parity_and_maximum() {
        use SplittingKind::*;
        let kinds = [
            RegularDistinct,
            NonRegularSplit,
            AtiyahNonSplit,
            UnstableJump(1),
            UnstableJump(2),
            UnstableJump(3),
        ];
        let c2 = 5u32;
        let max = 4 * c2 as u64 - 2;
        for a in kinds {
            for b in kinds {
                let r = poisson_rank(c2, a, b).unwrap();
                // The rank drops from the maximum in even steps, and the
                // maximum is reached exactly on regular restrictions.
                assert_eq!((max - r) % 2, 0, "{a:?} {b:?}");
                assert_eq!(r == max, a.is_regular() && b.is_regular(), "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn irreducible_graphs_pass_through_with_degree_check() {
        let s = SpectralCover {
            vertical: vec![(fiber_point(3).unwrap(), 1)],
            bisection: Bisection::Irreducible {
                graph: RationalMap::identity(),
            },
            class: RuledClass { s: 2, f: 2 },
        };
        let det_class = EllipticPic::trivial(re(0.5)).unwrap();
        let g = graph_of_spectral(&s, &det_class, 1e-9).unwrap();
        assert!(!g.map.is_constant());
        assert_eq!((g.c2(), g.ambient_dim()), (2, 5));
        // A class that does not match the degree arithmetic is rejected.
        let bad = SpectralCover {
            class: RuledClass { s: 2, f: 5 },
            ..s
        };
        assert!(graph_of_spectral(&bad, &det_class, 1e-9).is_err());
    }

    #[test]
    fn leaves_of_c2_one() {
        let x = classical();
        let c = cfg();
        // Jump away from the marked curves: a two-dimensional leaf.
        let e = bundle_with_jumps(
            &x,
            vec![JumpRecord {
                curve: 3,
                heights: vec![1],
            }],
        );
        let leaf = leaf_of_bundle(&x, &e, &c).unwrap();
        assert_eq!(leaf.label.rank, 2);
        assert!(matches!(
            leaf.parametrization,
            LeafParametrization::Surface { .. }
        ));
        assert!(leaf.label.c1.approx_eq(&leaf.label.c2, 1e-12));
        // Jump on a marked curve: rank drops to zero.
        let e = bundle_with_jumps(
            &x,
            vec![JumpRecord {
                curve: 1,
                heights: vec![1],
            }],
        );
        let leaf = leaf_of_bundle(&x, &e, &c).unwrap();
        assert_eq!(leaf.label.rank, 0);
        assert!(matches!(leaf.parametrization, LeafParametrization::Point));
    }

    #[test]
    fn higher_spectral_structure() {
        let c = cfg();
        let x = HopfManifold::new(vec![re(0.5), re(0.5), re(0.5)], &c).unwrap();
        let a = Factor::new(vec![0, 0, 0], re(0.7)).unwrap();
        let b = Factor::new(vec![0, 0, 0], re(0.9)).unwrap();
        let s = higher_spectral(&x, &[a.clone(), b], &c).unwrap();
        assert_eq!(s.structure, HigherSpectralStructure::Decomposes);
        assert_eq!(
            (s.c_top, s.vertical_multiplicity, s.filtrable),
            (0, 0, true)
        );

        let s = higher_spectral(&x, &[a.clone(), a.clone()], &c).unwrap();
        assert_eq!(s.structure, HigherSpectralStructure::PossiblyPullback);

        // Twisting by the modulus does not change the class.
        let twisted = a.mul(&Factor::monomial(vec![1, 0, 0])).unwrap();
        let s = higher_spectral(&x, &[a, twisted], &c).unwrap();
        assert_eq!(s.structure, HigherSpectralStructure::PossiblyPullback);
    }

    #[test]
    fn p1_points_normalize() {
        let p = P1Point::new(re(4.0), re(2.0)).unwrap();
        assert!((p.z[0] - re(1.0)).norm() < 1e-12);
        assert!((p.z[1] - re(0.5)).norm() < 1e-12);
        assert!(p.approx_eq(&P1Point::from_affine(re(2.0)).unwrap(), 1e-12));
        assert!(P1Point::new(re(0.0), re(0.0)).is_err());
        // Distinct fibre points for distinct curves.
        for c1 in 1..6usize {
            for c2 in c1 + 1..6 {
                assert!(!fiber_point(c1)
                    .unwrap()
                    .approx_eq(&fiber_point(c2).unwrap(), 1e-9));
            }
        }
    }
}
