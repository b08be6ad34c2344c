//! Filtrable rank-2 bundle descriptors: extensions of line bundles, their
//! upper-triangular factors, elementary-modification bookkeeping with jump
//! records, and the classification in dimension three and up.

use serde::{Deserialize, Serialize};

use crate::config::{Config, DetConvention};
use crate::elliptic::EllipticPic;
use crate::error::{Error, Result};
use crate::factors::{detect_monomial, Factor, SignConstraint};
use crate::manifold::{HopfManifold, Kind};

/// Positions of the defining point set `Z`, recorded only as counts: the
/// total (with multiplicity) and how many sit on each axis curve. The
/// constructions never use finer position data off the curves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSet {
    pub total: u32,
    pub on_curve: Vec<u32>,
}

impl PointSet {
    pub fn empty(n: usize) -> Self {
        PointSet {
            total: 0,
            on_curve: vec![0; n],
        }
    }

    pub fn off_curve(&self) -> u32 {
        self.total - self.on_curve.iter().sum::<u32>()
    }
}

/// One unstable locus of the restriction over a curve.
///
/// `curve` 1..=n names an axis curve `T_i`; larger indices name anonymous
/// fibres of a classical fibration (their base points are assigned by
/// `spectral::fiber_point`). `heights` lists the destabilizing degrees of
/// the successive allowable modifications; the multiplicity is their sum
/// and the length is their count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpRecord {
    pub curve: usize,
    pub heights: Vec<u32>,
}

impl JumpRecord {
    pub fn multiplicity(&self) -> u32 {
        self.heights.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.heights.len()
    }
}

/// A filtrable rank-2 bundle presented as an extension of `L_{det/sub} (x)
/// I_Z` by `L_sub`, together with its jump records.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiltrableRank2 {
    pub det: Factor,
    pub c2: u32,
    pub sub: Factor,
    pub z: PointSet,
    pub jumps: Vec<JumpRecord>,
}

/// Wire form: the point set is carried as per-axis-curve counts, the total
/// being `c2`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BundleJson {
    pub det: Factor,
    pub c2: u32,
    pub sub: Factor,
    pub jumps: Vec<JumpRecord>,
    pub z_on_curve: Vec<u32>,
}

impl FiltrableRank2 {
    pub fn new(
        x: &HopfManifold,
        det: Factor,
        sub: Factor,
        c2: u32,
        z: PointSet,
        jumps: Vec<JumpRecord>,
    ) -> Result<Self> {
        let e = FiltrableRank2 {
            det,
            c2,
            sub,
            z,
            jumps,
        };
        e.validate(x)?;
        Ok(e)
    }

    pub fn from_json(x: &HopfManifold, json: &BundleJson) -> Result<Self> {
        Self::new(
            x,
            json.det.clone(),
            json.sub.clone(),
            json.c2,
            PointSet {
                total: json.c2,
                on_curve: json.z_on_curve.clone(),
            },
            json.jumps.clone(),
        )
    }

    pub fn to_json(&self) -> BundleJson {
        BundleJson {
            det: self.det.clone(),
            c2: self.c2,
            sub: self.sub.clone(),
            jumps: self.jumps.clone(),
            z_on_curve: self.z.on_curve.clone(),
        }
    }

    /// The quotient line-bundle factor `det / sub`.
    pub fn quotient(&self) -> Result<Factor> {
        self.det.div(&self.sub)
    }

    /// Length of the jump on the given axis curve, zero when there is none.
    pub fn jump_length(&self, curve: usize) -> usize {
        self.jumps
            .iter()
            .find(|j| j.curve == curve)
            .map_or(0, |j| j.length())
    }

    pub fn total_jump_multiplicity(&self) -> u32 {
        self.jumps.iter().map(|j| j.multiplicity()).sum()
    }

    pub fn validate(&self, x: &HopfManifold) -> Result<()> {
        let n = x.dim();
        self.det.validate()?;
        self.sub.validate()?;
        if self.det.len() != n || self.sub.len() != n {
            return Err(Error::DimensionMismatch(
                "bundle factors do not match the manifold dimension".into(),
            ));
        }
        if self.z.on_curve.len() != n {
            return Err(Error::DimensionMismatch(
                "z_on_curve must list one count per axis curve".into(),
            ));
        }
        if self.z.total != self.c2 {
            return Err(Error::Inconsistency(format!(
                "point count {} differs from c2 = {}",
                self.z.total, self.c2
            )));
        }
        if self.z.on_curve.iter().sum::<u32>() > self.z.total {
            return Err(Error::Inconsistency(
                "more on-curve points than points".into(),
            ));
        }
        let mut seen = std::collections::HashSet::new();
        let mut anonymous = 0u32;
        for j in &self.jumps {
            if j.curve == 0 {
                return Err(Error::Domain("jump curve indices are 1-based".into()));
            }
            if !seen.insert(j.curve) {
                return Err(Error::Inconsistency(format!(
                    "two jump records on curve {}",
                    j.curve
                )));
            }
            if j.heights.is_empty() || j.heights.contains(&0) {
                return Err(Error::Domain("jump heights must be positive".into()));
            }
            if j.curve > n {
                if x.kind() != Kind::Classical {
                    return Err(Error::Domain(format!(
                        "curve index {} does not exist: only the {} axis curves are present",
                        j.curve, n
                    )));
                }
                anonymous += j.multiplicity();
            } else if j.multiplicity() != self.z.on_curve[j.curve - 1] {
                return Err(Error::Inconsistency(format!(
                    "jump multiplicity {} on curve {} does not match its point count {}",
                    j.multiplicity(),
                    j.curve,
                    self.z.on_curve[j.curve - 1]
                )));
            }
        }
        for (i, count) in self.z.on_curve.iter().enumerate() {
            if *count > 0 && !seen.contains(&(i + 1)) {
                return Err(Error::Inconsistency(format!(
                    "{count} points on curve {} but no jump recorded there",
                    i + 1
                )));
            }
        }
        if anonymous > self.z.off_curve() {
            return Err(Error::Inconsistency(
                "anonymous-fibre jumps exceed the points available off the axis curves".into(),
            ));
        }
        Ok(())
    }
}

/// Locally free extension of `L' (x) I_Z` by `L`; the second Chern class is
/// the number of points of `Z` counted with multiplicity. Points sitting on
/// an axis curve produce a jump there, recorded with unit heights.
pub fn serre_extension(
    x: &HopfManifold,
    sub: &Factor,
    quot: &Factor,
    z: &PointSet,
) -> Result<FiltrableRank2> {
    let jumps = z
        .on_curve
        .iter()
        .enumerate()
        .filter(|(_, c)| **c > 0)
        .map(|(i, c)| JumpRecord {
            curve: i + 1,
            heights: vec![1; *c as usize],
        })
        .collect();
    FiltrableRank2::new(x, sub.mul(quot)?, sub.clone(), z.total, z.clone(), jumps)
}

/// Outcome of the extension classification with trivial second Chern class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "class")]
pub enum ExtensionClass {
    /// `a / b` is not a non-negative monomial: every extension splits.
    SplitOnly,
    /// `a / b = prod mu^m` with `m >= 0`: the split bundle or the unique
    /// non-trivial extension.
    SplitOrUniqueNonSplit { m: Vec<i64> },
}

pub fn classify_extension_c2zero(
    x: &HopfManifold,
    a: &Factor,
    b: &Factor,
    cfg: &Config,
) -> Result<ExtensionClass> {
    if !(x.is_surface() && x.kind() == Kind::Generic) {
        return Err(Error::UnsupportedKind {
            kind: x.kind(),
            context: "extension classification is stated on generic surfaces".into(),
        });
    }
    let ratio = a.div(b)?;
    match detect_monomial(&ratio, x, SignConstraint::AllNonneg, cfg.exp_bound, cfg.tol)? {
        Some(m) => Ok(ExtensionClass::SplitOrUniqueNonSplit { m }),
        None => Ok(ExtensionClass::SplitOnly),
    }
}

/// The 2x2 upper-triangular constant factor presenting an extension bundle:
/// diagonal `(a, b)`, upper-right entry `eps * z^m`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AutomorphyFactor2 {
    pub a: Factor,
    pub b: Factor,
    pub m: Vec<i64>,
    pub eps: u8,
}

/// Emits the factor of the split bundle (`eps = 0`) or of the unique
/// non-split extension (`eps = 1`); the latter requires `a / b` to be a
/// non-negative monomial.
pub fn automorphy_factor(
    x: &HopfManifold,
    a: &Factor,
    b: &Factor,
    non_split: bool,
    cfg: &Config,
) -> Result<AutomorphyFactor2> {
    if !non_split {
        return Ok(AutomorphyFactor2 {
            a: a.clone(),
            b: b.clone(),
            m: vec![0; x.dim()],
            eps: 0,
        });
    }
    let ratio = a.div(b)?;
    match detect_monomial(&ratio, x, SignConstraint::AllNonneg, cfg.exp_bound, cfg.tol)? {
        Some(m) => Ok(AutomorphyFactor2 {
            a: a.clone(),
            b: b.clone(),
            m,
            eps: 1,
        }),
        None => Err(Error::Precondition(
            "eps = 1 requires a = b * prod mu^m with all m_i >= 0".into(),
        )),
    }
}

fn det_twist_slot(x: &HopfManifold, curve: usize, cfg: &Config) -> Result<usize> {
    let n = x.dim();
    if curve > n {
        // Anonymous classical fibre: linearly equivalent to a coordinate
        // hypersurface, so it twists the first slot.
        if cfg.det_convention == DetConvention::Lemma {
            return Err(Error::Precondition(
                "the lemma convention only covers axis curves on surfaces".into(),
            ));
        }
        return Ok(0);
    }
    match cfg.det_convention {
        DetConvention::Theorem => Ok(curve - 1),
        DetConvention::Lemma => {
            if n != 2 {
                return Err(Error::Precondition(
                    "the lemma convention is only defined on surfaces".into(),
                ));
            }
            Ok(2 - curve)
        }
    }
}

/// The allowable elementary modification along `curve`: removes the current
/// height of the jump there, drops `c2` by that height and twists the
/// determinant down by the curve's divisor factor.
pub fn elementary_modification(
    x: &HopfManifold,
    e: &FiltrableRank2,
    curve: usize,
    lambda: &EllipticPic,
    cfg: &Config,
) -> Result<FiltrableRank2> {
    e.validate(x)?;
    let idx = e
        .jumps
        .iter()
        .position(|j| j.curve == curve)
        .ok_or_else(|| Error::Precondition(format!("no jump on curve {curve}")))?;
    let h = e.jumps[idx].heights[0];
    if lambda.d != -(h as i64) {
        return Err(Error::Precondition(format!(
            "modification class has degree {}, the current jump height needs {}",
            lambda.d,
            -(h as i64)
        )));
    }
    let slot = det_twist_slot(x, curve, cfg)?;
    let mut twist = vec![0i64; x.dim()];
    twist[slot] = -1;
    let det = e.det.mul(&Factor::monomial(twist))?;

    let mut jumps = e.jumps.clone();
    jumps[idx].heights.remove(0);
    if jumps[idx].heights.is_empty() {
        jumps.remove(idx);
    }
    let mut z = e.z.clone();
    if curve <= x.dim() {
        z.on_curve[curve - 1] -= h;
    }
    z.total -= h;
    FiltrableRank2::new(x, det, e.sub.clone(), e.c2 - h, z, jumps)
}

/// Introduces (or deepens) a jump of the given height along `curve`; the
/// exact inverse of `elementary_modification` on the determinant and `c2`.
pub fn add_jump(
    x: &HopfManifold,
    e: &FiltrableRank2,
    curve: usize,
    height: u32,
    cfg: &Config,
) -> Result<FiltrableRank2> {
    e.validate(x)?;
    if height == 0 {
        return Err(Error::Domain("jump height must be positive".into()));
    }
    if curve == 0 {
        return Err(Error::Domain("jump curve indices are 1-based".into()));
    }
    if curve > x.dim() && x.kind() != Kind::Classical {
        return Err(Error::Domain(format!(
            "curve index {curve} does not exist: only the {} axis curves are present",
            x.dim()
        )));
    }
    let slot = det_twist_slot(x, curve, cfg)?;
    let mut twist = vec![0i64; x.dim()];
    twist[slot] = 1;
    let det = e.det.mul(&Factor::monomial(twist))?;

    let mut jumps = e.jumps.clone();
    match jumps.iter_mut().find(|j| j.curve == curve) {
        Some(j) => j.heights.insert(0, height),
        None => jumps.push(JumpRecord {
            curve,
            heights: vec![height],
        }),
    }
    let mut z = e.z.clone();
    if curve <= x.dim() {
        z.on_curve[curve - 1] += height;
    }
    z.total += height;
    FiltrableRank2::new(x, det, e.sub.clone(), e.c2 + height, z, jumps)
}

/// Shape of the codimension-2 locus defining an ideal-sheaf extension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZShape {
    /// `z_i^{ki} = z_j^{kj} = 0`.
    Single {
        i: usize,
        j: usize,
        ki: u32,
        kj: u32,
    },
    /// Two components sharing the first coordinate locus; only admissible
    /// in dimension 3.
    Pair {
        i: usize,
        ki: u32,
        j1: usize,
        kj1: u32,
        j2: usize,
        kj2: u32,
    },
}

/// Raw extension data of a rank-2 bundle in dimension three and up, before
/// classification.
#[derive(Debug, Clone)]
pub struct HigherBundleData {
    pub twist: Factor,
    /// Non-negative monomial exponents of the sub-bundle (zero at the
    /// ideal-locus positions).
    pub m: Vec<i64>,
    pub z: Option<ZShape>,
    /// Whether the extension class is non-zero.
    pub nontrivial: bool,
}

/// Normalized classification of a rank-2 bundle in dimension `>= 3`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "type")]
pub enum HigherExtensionType {
    Decomposable {
        a: Factor,
        b: Factor,
    },
    LineExtension {
        a: Factor,
        m: Vec<i64>,
    },
    IdealExtension {
        a: Factor,
        m: Vec<i64>,
        i: usize,
        j: usize,
        ki: u32,
        kj: u32,
    },
}

pub fn classify_rank2_higher(
    x: &HopfManifold,
    data: &HigherBundleData,
    _cfg: &Config,
) -> Result<HigherExtensionType> {
    let n = x.dim();
    if n < 3 || x.kind() != Kind::Generic {
        return Err(Error::UnsupportedKind {
            kind: x.kind(),
            context: "higher classification needs a generic manifold of dimension >= 3".into(),
        });
    }
    if data.m.len() != n {
        return Err(Error::DimensionMismatch(
            "m must have one entry per generator".into(),
        ));
    }
    if data.m.iter().any(|v| *v < 0) {
        return Err(Error::Domain(
            "monomial exponents must be non-negative".into(),
        ));
    }
    data.twist.validate()?;
    match &data.z {
        None => {
            if data.nontrivial {
                Ok(HigherExtensionType::LineExtension {
                    a: data.twist.clone(),
                    m: data.m.clone(),
                })
            } else {
                let a = data.twist.mul(&Factor::monomial(data.m.clone()))?;
                Ok(HigherExtensionType::Decomposable {
                    a,
                    b: data.twist.clone(),
                })
            }
        }
        Some(ZShape::Single { i, j, ki, kj }) => {
            check_index_pair(n, *i, *j)?;
            if *ki < 1 || *kj < 1 {
                return Err(Error::Domain(
                    "ideal-locus exponents must be at least 1".into(),
                ));
            }
            if data.m[*i - 1] != 0 || data.m[*j - 1] != 0 {
                return Err(Error::Domain(
                    "monomial exponents at the ideal-locus positions must be zero".into(),
                ));
            }
            if !data.nontrivial {
                return Err(Error::Classification(
                    "an ideal-sheaf quotient only arises from a generating extension class".into(),
                ));
            }
            if data.m.iter().all(|v| *v == 0) {
                // Degenerate locally free case: the extension decomposes.
                let mut ea = vec![0i64; n];
                ea[*j - 1] = -(*kj as i64);
                let mut eb = vec![0i64; n];
                eb[*i - 1] = -(*ki as i64);
                return Ok(HigherExtensionType::Decomposable {
                    a: data.twist.mul(&Factor::monomial(ea))?,
                    b: data.twist.mul(&Factor::monomial(eb))?,
                });
            }
            Ok(HigherExtensionType::IdealExtension {
                a: data.twist.clone(),
                m: data.m.clone(),
                i: *i,
                j: *j,
                ki: *ki,
                kj: *kj,
            })
        }
        Some(ZShape::Pair {
            i,
            ki,
            j1,
            kj1,
            j2,
            kj2,
        }) => {
            if n != 3 {
                return Err(Error::Classification(
                    "only single coordinate loci admit length-2 resolutions in dimension >= 4"
                        .into(),
                ));
            }
            check_index_pair(n, *i, *j1)?;
            check_index_pair(n, *i, *j2)?;
            if j1 == j2 {
                return Err(Error::Domain("pair components must differ".into()));
            }
            // Two components force the bundle to decompose.
            let mut ea = vec![0i64; n];
            ea[*j1 - 1] = -(*kj1 as i64);
            ea[*j2 - 1] = -(*kj2 as i64);
            let mut eb = vec![0i64; n];
            eb[*i - 1] = -(*ki as i64);
            Ok(HigherExtensionType::Decomposable {
                a: data.twist.mul(&Factor::monomial(ea))?,
                b: data.twist.mul(&Factor::monomial(eb))?,
            })
        }
    }
}

fn check_index_pair(n: usize, i: usize, j: usize) -> Result<()> {
    if i == 0 || j == 0 || i > n || j > n || i == j {
        return Err(Error::Domain(format!(
            "invalid coordinate pair ({i}, {j}) for n = {n}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiltrabilityVerdict {
    /// Dimension 3 and up: every coherent sheaf is filtrable.
    AlwaysFiltrable,
    /// Topologically trivial on a surface.
    Filtrable,
    /// Positive second Chern class on a surface.
    GenericallyNonFiltrable,
}

pub fn filtrability_verdict(n: usize, c1_torsion: bool, c2: u32) -> FiltrabilityVerdict {
    if n >= 3 {
        FiltrabilityVerdict::AlwaysFiltrable
    } else if c2 == 0 && c1_torsion {
        FiltrabilityVerdict::Filtrable
    } else {
        FiltrabilityVerdict::GenericallyNonFiltrable
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn cfg() -> Config {
        Config::default()
    }

    fn generic2() -> HopfManifold {
        HopfManifold::new(vec![re(0.31), re(0.47)], &cfg()).unwrap()
    }

    fn generic3() -> HopfManifold {
        HopfManifold::new(vec![re(0.31), re(0.47), re(0.53)], &cfg()).unwrap()
    }

    #[test]
    fn serre_extension_examples() {
        let x = generic2();
        let a = Factor::monomial(vec![1, 0]);
        let b = Factor::monomial(vec![0, -1]);
        let e = serre_extension(&x, &a, &b, &PointSet::empty(2)).unwrap();
        assert_eq!(e.c2, 0);
        assert_eq!(e.det, a.mul(&b).unwrap());
        assert!(e.jumps.is_empty());

        let one_pt = PointSet {
            total: 1,
            on_curve: vec![0, 0],
        };
        let e = serre_extension(&x, &a, &b, &one_pt).unwrap();
        assert_eq!(e.c2, 1);
        assert_eq!(e.det, a.mul(&b).unwrap());

        // A single point of multiplicity 3 on T_1.
        let fat = PointSet {
            total: 3,
            on_curve: vec![3, 0],
        };
        let e = serre_extension(&x, &a, &b, &fat).unwrap();
        assert_eq!(e.c2, 3);
        assert_eq!(
            e.jumps,
            vec![JumpRecord {
                curve: 1,
                heights: vec![1, 1, 1]
            }]
        );
        assert_eq!(e.total_jump_multiplicity(), 3);
    }

    #[test]
    fn classify_c2zero_examples() {
        let x = generic2();
        let c = cfg();
        let a = Factor::new(vec![0, 0], re(0.8)).unwrap();
        // a = b: the ratio is the trivial monomial.
        assert_eq!(
            classify_extension_c2zero(&x, &a, &a, &c).unwrap(),
            ExtensionClass::SplitOrUniqueNonSplit { m: vec![0, 0] }
        );
        // a / b = mu_1.
        let b = a.div(&Factor::monomial(vec![1, 0])).unwrap();
        assert_eq!(
            classify_extension_c2zero(&x, &a, &b, &c).unwrap(),
            ExtensionClass::SplitOrUniqueNonSplit { m: vec![1, 0] }
        );
        // a / b = mu_1^{-1}: splits only.
        let b = a.mul(&Factor::monomial(vec![1, 0])).unwrap();
        assert_eq!(
            classify_extension_c2zero(&x, &a, &b, &c).unwrap(),
            ExtensionClass::SplitOnly
        );
    }

    #[test]
    fn classify_is_twist_invariant() {
        let x = generic2();
        let c = cfg();
        let a = Factor::new(vec![1, -2], re(0.9)).unwrap();
        let b = Factor::monomial(vec![0, 1]);
        let t = Factor::new(vec![2, 1], Complex64::new(0.1, 0.4)).unwrap();
        let plain = classify_extension_c2zero(&x, &a, &b, &c).unwrap();
        let twisted =
            classify_extension_c2zero(&x, &a.mul(&t).unwrap(), &b.mul(&t).unwrap(), &c).unwrap();
        assert_eq!(plain, twisted);
    }

    #[test]
    fn automorphy_examples() {
        let x = generic2();
        let c = cfg();
        let b = Factor::new(vec![0, 0], re(0.8)).unwrap();
        let a = b.mul(&Factor::monomial(vec![1, 1])).unwrap();
        // Decomposable: eps = 0 and zero off-diagonal exponents.
        let f = automorphy_factor(&x, &a, &b, false, &c).unwrap();
        assert_eq!((f.eps, f.m.as_slice()), (0, [0, 0].as_slice()));
        // The unique non-split extension with a/b = mu_1 mu_2.
        let f = automorphy_factor(&x, &a, &b, true, &c).unwrap();
        assert_eq!((f.eps, f.m.as_slice()), (1, [1, 1].as_slice()));
        // a = b non-split: m = 0.
        let f = automorphy_factor(&x, &b, &b, true, &c).unwrap();
        assert_eq!((f.eps, f.m.as_slice()), (1, [0, 0].as_slice()));
        // Failed monomial condition.
        let bad = b.div(&Factor::monomial(vec![1, 0])).unwrap();
        assert!(automorphy_factor(&x, &bad, &b, true, &c).is_err());
    }

    fn jump_class(x: &HopfManifold, curve: usize, h: u32) -> EllipticPic {
        let q = x.mu()[(curve - 1).min(x.dim() - 1)];
        EllipticPic::new(q, -(h as i64), re(0.6)).unwrap()
    }

    #[test]
    fn modification_round_trip_and_det_bookkeeping() {
        let x = generic2();
        let c = cfg();
        let det = Factor::new(vec![1, -1], re(0.77)).unwrap();
        let sub = Factor::monomial(vec![0, 0]);
        let e0 = FiltrableRank2::new(&x, det.clone(), sub, 0, PointSet::empty(2), vec![]).unwrap();

        // Add a height-1 jump on T_1, then remove it: (det, c2) round-trip
        // exactly.
        let e1 = add_jump(&x, &e0, 1, 1, &c).unwrap();
        assert_eq!(e1.c2, 1);
        assert_eq!(e1.jump_length(1), 1);
        let back = elementary_modification(&x, &e1, 1, &jump_class(&x, 1, 1), &c).unwrap();
        assert_eq!(back.det, e0.det);
        assert_eq!(back.c2, 0);
        assert!(back.jumps.is_empty());

        // Lengths (2, 1): full removal multiplies det by mu_1^{-2} mu_2^{-1}
        // under the theorem convention.
        let mut e = e0.clone();
        for (curve, h) in [(1, 2), (1, 1), (2, 3)] {
            e = add_jump(&x, &e, curve, h, &c).unwrap();
        }
        assert_eq!(e.c2, 6);
        assert_eq!(e.total_jump_multiplicity(), 6);
        let start_det = e.det.clone();
        while let Some(j) = e.jumps.first().cloned() {
            let lam = jump_class(&x, j.curve, j.heights[0]);
            e = elementary_modification(&x, &e, j.curve, &lam, &c).unwrap();
        }
        assert_eq!(e.c2, 0);
        let expected = start_det.mul(&Factor::monomial(vec![-2, -1])).unwrap();
        assert_eq!(e.det, expected);
        // Adding and then removing every jump is the identity on det.
        assert_eq!(e.det, det);
    }

    #[test]
    fn lemma_convention_swaps_slots() {
        let x = generic2();
        let mut c = cfg();
        c.det_convention = DetConvention::Lemma;
        let e0 = FiltrableRank2::new(
            &x,
            Factor::one(2),
            Factor::one(2),
            0,
            PointSet::empty(2),
            vec![],
        )
        .unwrap();
        let e1 = add_jump(&x, &e0, 1, 1, &c).unwrap();
        // Under the lemma convention, T_1 carries mu_2.
        assert_eq!(e1.det.exponents(), &[0, 1]);
    }

    #[test]
    fn modification_errors() {
        let x = generic2();
        let c = cfg();
        let e0 = FiltrableRank2::new(
            &x,
            Factor::one(2),
            Factor::one(2),
            0,
            PointSet::empty(2),
            vec![],
        )
        .unwrap();
        // No jump present.
        assert!(elementary_modification(&x, &e0, 1, &jump_class(&x, 1, 1), &c).is_err());
        // Wrong degree for the current height.
        let e1 = add_jump(&x, &e0, 1, 2, &c).unwrap();
        assert!(elementary_modification(&x, &e1, 1, &jump_class(&x, 1, 1), &c).is_err());
        // Anonymous fibres exist only on classical surfaces.
        assert!(add_jump(&x, &e0, 3, 1, &c).is_err());
    }

    #[test]
    fn classical_fibre_jumps_are_allowed() {
        let x = HopfManifold::new(vec![re(0.5), re(0.5)], &cfg()).unwrap();
        let e0 = FiltrableRank2::new(
            &x,
            Factor::one(2),
            Factor::one(2),
            0,
            PointSet::empty(2),
            vec![],
        )
        .unwrap();
        let e1 = add_jump(&x, &e0, 3, 1, &cfg()).unwrap();
        assert_eq!(e1.c2, 1);
        assert_eq!(e1.z.off_curve(), 1);
        let back = elementary_modification(&x, &e1, 3, &jump_class(&x, 1, 1), &cfg()).unwrap();
        assert_eq!(back.c2, 0);
        assert_eq!(back.det, e0.det);
    }

    #[test]
    fn higher_classification_examples() {
        let x = generic3();
        let c = cfg();
        let t = Factor::new(vec![0, 0, 0], re(0.9)).unwrap();
        // Split with m = 0: decomposable.
        let d = HigherBundleData {
            twist: t.clone(),
            m: vec![0, 0, 0],
            z: None,
            nontrivial: false,
        };
        assert!(matches!(
            classify_rank2_higher(&x, &d, &c).unwrap(),
            HigherExtensionType::Decomposable { .. }
        ));
        // Non-split extension of line bundles.
        let d = HigherBundleData {
            twist: t.clone(),
            m: vec![1, 0, 0],
            z: None,
            nontrivial: true,
        };
        assert_eq!(
            classify_rank2_higher(&x, &d, &c).unwrap(),
            HigherExtensionType::LineExtension {
                a: t.clone(),
                m: vec![1, 0, 0]
            }
        );
        // Ideal extension at (i, j) = (1, 2), k = (1, 1), m_3 = 2.
        let d = HigherBundleData {
            twist: t.clone(),
            m: vec![0, 0, 2],
            z: Some(ZShape::Single {
                i: 1,
                j: 2,
                ki: 1,
                kj: 1,
            }),
            nontrivial: true,
        };
        assert_eq!(
            classify_rank2_higher(&x, &d, &c).unwrap(),
            HigherExtensionType::IdealExtension {
                a: t.clone(),
                m: vec![0, 0, 2],
                i: 1,
                j: 2,
                ki: 1,
                kj: 1
            }
        );
        // All-zero m over an ideal locus decomposes.
        let d = HigherBundleData {
            twist: t.clone(),
            m: vec![0, 0, 0],
            z: Some(ZShape::Single {
                i: 1,
                j: 2,
                ki: 1,
                kj: 1,
            }),
            nontrivial: true,
        };
        match classify_rank2_higher(&x, &d, &c).unwrap() {
            HigherExtensionType::Decomposable { a, b } => {
                assert_eq!(a.exponents(), &[0, -1, 0]);
                assert_eq!(b.exponents(), &[-1, 0, 0]);
            }
            other => panic!("expected decomposable, got {other:?}"),
        }
        // Two-component locus forces decomposability in dimension 3.
        let d = HigherBundleData {
            twist: t.clone(),
            m: vec![0, 0, 0],
            z: Some(ZShape::Pair {
                i: 1,
                ki: 1,
                j1: 2,
                kj1: 2,
                j2: 3,
                kj2: 1,
            }),
            nontrivial: true,
        };
        assert!(matches!(
            classify_rank2_higher(&x, &d, &c).unwrap(),
            HigherExtensionType::Decomposable { .. }
        ));
    }

    #[test]
    fn higher_classification_twist_normalizing() {
        let x = generic3();
        let c = cfg();
        let t = Factor::new(vec![1, -1, 0], Complex64::new(0.2, 0.3)).unwrap();
        let base = HigherBundleData {
            twist: Factor::one(3),
            m: vec![0, 2, 0],
            z: Some(ZShape::Single {
                i: 1,
                j: 3,
                ki: 2,
                kj: 1,
            }),
            nontrivial: true,
        };
        let twisted = HigherBundleData {
            twist: t.clone(),
            ..base.clone()
        };
        let (r0, r1) = (
            classify_rank2_higher(&x, &base, &c).unwrap(),
            classify_rank2_higher(&x, &twisted, &c).unwrap(),
        );
        match (r0, r1) {
            (
                HigherExtensionType::IdealExtension {
                    a: a0,
                    m: m0,
                    i: i0,
                    j: j0,
                    ki: k0,
                    kj: l0,
                },
                HigherExtensionType::IdealExtension {
                    a: a1,
                    m: m1,
                    i: i1,
                    j: j1,
                    ki: k1,
                    kj: l1,
                },
            ) => {
                assert_eq!((m0, i0, j0, k0, l0), (m1, i1, j1, k1, l1));
                assert_eq!(a1, a0.mul(&t).unwrap());
            }
            other => panic!("unexpected classification {other:?}"),
        }
    }

    #[test]
    fn higher_classification_rejects_bad_shapes() {
        let c = cfg();
        let x4 = HopfManifold::new(vec![re(0.29), re(0.41), re(0.59), re(0.71)], &c).unwrap();
        let d = HigherBundleData {
            twist: Factor::one(4),
            m: vec![0, 0, 0, 0],
            z: Some(ZShape::Pair {
                i: 1,
                ki: 1,
                j1: 2,
                kj1: 1,
                j2: 3,
                kj2: 1,
            }),
            nontrivial: true,
        };
        assert!(matches!(
            classify_rank2_higher(&x4, &d, &c),
            Err(Error::Classification(_))
        ));
    }

    #[test]
    fn filtrability_verdicts() {
        assert_eq!(
            filtrability_verdict(3, true, 7),
            FiltrabilityVerdict::AlwaysFiltrable
        );
        assert_eq!(
            filtrability_verdict(2, true, 0),
            FiltrabilityVerdict::Filtrable
        );
        assert_eq!(
            filtrability_verdict(2, true, 5),
            FiltrabilityVerdict::GenericallyNonFiltrable
        );
    }

    #[test]
    fn validation_catches_mismatched_counts() {
        let x = generic2();
        let bad = FiltrableRank2 {
            det: Factor::one(2),
            c2: 2,
            sub: Factor::one(2),
            z: PointSet {
                total: 2,
                on_curve: vec![1, 0],
            },
            jumps: vec![JumpRecord {
                curve: 1,
                heights: vec![2],
            }],
        };
        assert!(bad.validate(&x).is_err());
    }
}
