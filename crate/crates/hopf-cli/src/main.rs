//! `hopf`: JSON-speaking command-line front end. Subcommands mirror the
//! library modules; every successful invocation prints one JSON object to
//! the `--json` destination with the numeric configuration echoed in a
//! `meta` field. Domain errors exit 1 with a structured JSON error; usage
//! errors exit 2.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use hopf::config::{BetaConvention, Config, DetConvention};
use hopf::covers::{classify_cyclic_cover, nonprimary_homology, pushforward_rank2, Branch};
use hopf::elliptic::{EllipticPic, SplittingKind};
use hopf::error::Error;
use hopf::factors::Factor;
use hopf::manifold::{canonical_divisor, HopfManifold};
use hopf::picard::{cohomology_dims, degree, restrict_to_curve};
use hopf::rank2::{
    add_jump, automorphy_factor, classify_extension_c2zero, classify_rank2_higher,
    elementary_modification, filtrability_verdict, serre_extension, BundleJson, FiltrableRank2,
    HigherBundleData, PointSet, ZShape,
};
use hopf::spectral::{
    bisection_genus, casimirs, graph_of_spectral, higher_spectral, leaf_of_bundle, poisson_rank,
    spectral_of_filtrable, P1Point,
};
use hopf::stability::{
    c2one_parameters, check_stability_audited, d_domain, is_stable_filtrable_surface,
    is_stable_higher, moduli_dimension, monopole_parameters,
};

#[derive(Parser)]
#[command(
    name = "hopf",
    version,
    about = "Line bundles, rank-2 bundles and stability on diagonal Hopf manifolds"
)]
struct Cli {
    /// Tolerance for log-modulus and argument comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Infinity-norm bound for exponent searches.
    #[arg(long, global = true, default_value_t = 32)]
    exp_bound: u32,
    /// Determinant bookkeeping convention for elementary modifications.
    #[arg(long, global = true, value_enum, default_value_t = DetArg::Theorem)]
    det_convention: DetArg,
    /// Base projective-space dimension for the classical cohomology table.
    #[arg(long, global = true)]
    classical_base_dim: Option<usize>,
    /// Output destination: a file path or `-` for standard output.
    #[arg(long, global = true, default_value = "-")]
    json: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum DetArg {
    Theorem,
    Lemma,
}

#[derive(Clone, Copy, ValueEnum)]
enum BetaArg {
    Proof,
    Statement,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    #[value(name = "0")]
    Empty,
    T1,
    T2,
    T1t2,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Branch {
        match b {
            BranchArg::Empty => Branch::Empty,
            BranchArg::T1 => Branch::T1,
            BranchArg::T2 => Branch::T2,
            BranchArg::T1t2 => Branch::T1PlusT2,
        }
    }
}

/// Contraction diagonal shared by most subcommands.
#[derive(Args)]
struct MuArgs {
    /// Multipliers as `re,im` (or bare `re`), ordered by modulus.
    #[arg(long, num_args = 1.., required = true)]
    mu: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Taxonomy and divisors of the manifold itself.
    Manifold {
        #[command(subcommand)]
        cmd: ManifoldCmd,
    },
    /// Line-bundle degree, cohomology and curve restriction.
    Pic {
        #[command(subcommand)]
        cmd: PicCmd,
    },
    /// Rank-2 descriptors: classification and jump calculus.
    Rank2 {
        #[command(subcommand)]
        cmd: Rank2Cmd,
    },
    /// Stability verdicts, domains and moduli descriptors.
    Stab {
        #[command(subcommand)]
        cmd: StabCmd,
    },
    /// Cyclic covers of generic surfaces.
    Cover {
        #[command(subcommand)]
        cmd: CoverCmd,
    },
    /// Spectral covers, graphs, Casimirs and Poisson ranks.
    Spec {
        #[command(subcommand)]
        cmd: SpecCmd,
    },
    /// Run the acceptance suite and report pass/fail counts.
    Selftest,
}

#[derive(Subcommand)]
enum ManifoldCmd {
    /// Classify the diagonal.
    Classify {
        #[command(flatten)]
        mu: MuArgs,
    },
    /// The canonical divisor.
    Canonical {
        #[command(flatten)]
        mu: MuArgs,
    },
}

#[derive(Subcommand)]
enum PicCmd {
    /// Degree of a line bundle.
    Deg {
        #[command(flatten)]
        mu: MuArgs,
        /// Factor as JSON: {"exp": [..], "scalar": {"re": .., "im": ..}}.
        #[arg(long)]
        factor: String,
    },
    /// Cohomology dimensions h^0 .. h^n.
    Cohom {
        #[command(flatten)]
        mu: MuArgs,
        #[arg(long)]
        factor: String,
    },
    /// Restriction to an axis curve.
    Restrict {
        #[command(flatten)]
        mu: MuArgs,
        #[arg(long)]
        factor: String,
        /// 1-based curve index.
        #[arg(long)]
        curve: usize,
    },
}

#[derive(Subcommand)]
enum Rank2Cmd {
    /// Classify an extension of line bundles with trivial c2.
    ClassifyExt {
        #[command(flatten)]
        mu: MuArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Upper-triangular factor of a split or unique non-split extension.
    Automorphy {
        #[command(flatten)]
        mu: MuArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Emit the non-split factor (eps = 1).
        #[arg(long)]
        non_split: bool,
    },
    /// Filtrability from dimension and topology.
    Filtrable {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c2: u32,
        /// Whether the first Chern class is torsion.
        #[arg(long, default_value_t = true)]
        c1_torsion: bool,
    },
    /// Build a descriptor from extension data.
    Serre {
        #[command(flatten)]
        mu: MuArgs,
        #[arg(long)]
        sub: String,
        #[arg(long)]
        quot: String,
        /// Total number of points (with multiplicity).
        #[arg(long)]
        z_total: u32,
        /// Comma-separated per-axis-curve point counts.
        #[arg(long, default_value = "")]
        z_on_curve: String,
    },
    /// One allowable elementary modification along a curve.
    Modify {
        #[command(flatten)]
        mu: MuArgs,
        /// Bundle JSON file, or `-` for standard input.
        #[arg(long)]
        bundle: String,
        #[arg(long)]
        curve: usize,
    },
    /// Introduce a jump of the given height.
    AddJump {
        #[command(flatten)]
        mu: MuArgs,
        #[arg(long)]
        bundle: String,
        #[arg(long)]
        curve: usize,
        #[arg(long)]
        height: u32,
    },
    /// Normalized classification in dimension three and up.
    ClassifyHigher {
        #[command(flatten)]
        higher: HigherArgs,
    },
}

#[derive(Args)]
struct HigherArgs {
    #[command(flatten)]
    mu: MuArgs,
    /// Twisting factor as JSON.
    #[arg(long)]
    twist: String,
    /// Comma-separated non-negative monomial exponents.
    #[arg(long)]
    m: String,
    /// Ideal locus `i,j,ki,kj`.
    #[arg(long)]
    z_single: Option<String>,
    /// Two-component locus `i,ki,j1,kj1,j2,kj2` (dimension 3 only).
    #[arg(long)]
    z_pair: Option<String>,
    /// Treat the extension class as zero.
    #[arg(long)]
    split: bool,
}

#[derive(Subcommand)]
enum StabCmd {
    /// Stability of a filtrable surface descriptor.
    Check {
        #[command(flatten)]
        mu: MuArgs,
        #[arg(long)]
        bundle: String,
        /// Also audit the maximal-degree hypothesis on the sub-bundle.
        #[arg(long)]
        audit: bool,
    },
    /// The stability annulus for a determinant and jump lengths.
    Domain {
        #[command(flatten)]
        mu: MuArgs,
        #[arg(long)]
        delta: String,
        #[arg(long, default_value_t = 0)]
        l1: u32,
        #[arg(long, default_value_t = 0)]
        l2: u32,
    },
    /// Moduli dimension for a second Chern class.
    Moduli {
        #[arg(long)]
        c2: i64,
        /// Determinant factor as JSON (recorded, does not change the
        /// dimension).
        #[arg(long)]
        delta: Option<String>,
    },
    /// Monopole moduli descriptor.
    Monopole {
        #[command(flatten)]
        mu: MuArgs,
        #[arg(long)]
        mass: u32,
        #[arg(long)]
        charge: u32,
    },
    /// Parametrization of stable filtrable bundles with c2 = 1.
    #[command(name = "c2one")]
    C2One {
        #[command(flatten)]
        mu: MuArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        delta: String,
    },
    /// Stability in dimension three and up.
    Higher {
        #[command(flatten)]
        higher: HigherArgs,
    },
}

#[derive(Subcommand)]
enum CoverCmd {
    /// The cover case table.
    Classify {
        #[command(flatten)]
        mu: MuArgs,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum)]
        branch: BranchArg,
        /// Order of the defining bundle for unbranched covers.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, value_enum, default_value_t = BetaArg::Proof)]
        beta_convention: BetaArg,
    },
    /// Integral cohomology of a non-primary surface.
    Homology {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
    },
    /// Pushforward of a line bundle down a double cover.
    Pushforward {
        #[command(flatten)]
        mu: MuArgs,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum)]
        branch: BranchArg,
        #[arg(long)]
        k: Option<u32>,
        /// Line bundle upstairs as factor JSON (default trivial).
        #[arg(long)]
        m: Option<String>,
    },
}

#[derive(Subcommand)]
enum SpecCmd {
    /// Spectral cover of a filtrable descriptor.
    Cover {
        #[command(flatten)]
        mu: MuArgs,
        #[arg(long)]
        bundle: String,
    },
    /// Graph on the quotient quadric.
    Graph {
        #[command(flatten)]
        mu: MuArgs,
        #[arg(long)]
        bundle: String,
    },
    /// Casimir values at two base points.
    Casimir {
        #[command(flatten)]
        mu: MuArgs,
        #[arg(long)]
        bundle: String,
        /// Point as `re,im` (affine) or `inf`.
        #[arg(long)]
        x1: String,
        #[arg(long)]
        x2: String,
    },
    /// Poisson rank from the two restriction types.
    Poisson {
        #[arg(long)]
        c2: u32,
        /// regular | nonregular | atiyah | jump:H
        #[arg(long)]
        st1: String,
        #[arg(long)]
        st2: String,
    },
    /// Genus of a smooth irreducible bisection.
    Genus {
        #[arg(long)]
        c2: u32,
        #[arg(long, default_value_t = 0)]
        k: u32,
    },
    /// Symplectic leaf through a c2 = 1 descriptor.
    Leaf {
        #[command(flatten)]
        mu: MuArgs,
        #[arg(long)]
        bundle: String,
    },
    /// Spectral data of a tuple of line bundles in dimension >= 3.
    Higher {
        #[command(flatten)]
        mu: MuArgs,
        /// Factor JSON, repeatable: one per filtration quotient.
        #[arg(long, num_args = 1.., required = true)]
        factor: Vec<String>,
    },
}

fn main() {
    let cli = Cli::parse();
    let cfg = Config {
        tol: cli.tol,
        exp_bound: cli.exp_bound,
        det_convention: match cli.det_convention {
            DetArg::Theorem => DetConvention::Theorem,
            DetArg::Lemma => DetConvention::Lemma,
        },
        classical_base_dim: cli.classical_base_dim,
        beta_convention: BetaConvention::Proof,
    };
    if let Err(e) = cfg.validate() {
        emit_error(&cli.json, &e);
        std::process::exit(1);
    }
    if let Command::Selftest = &cli.command {
        run_selftest(&cfg, &cli.json);
        return;
    }
    match run(&cli.command, &cfg) {
        Ok(value) => {
            let value = with_meta(&cfg, value);
            write_output(&cli.json, &value);
        }
        Err(e) => {
            emit_error(&cli.json, &e);
            std::process::exit(1);
        }
    }
}

fn run_selftest(cfg: &Config, dest: &str) {
    let reports = hopf::selftest::run_all(cfg);
    for r in &reports {
        eprintln!("{}", r.line());
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    let failed = reports.len() - passed;
    let value = json!({
        "passed": passed,
        "failed": failed,
        "criteria": reports
            .iter()
            .map(|r| json!({ "id": r.id, "name": r.name, "passed": r.passed }))
            .collect::<Vec<_>>(),
    });
    write_output(dest, &with_meta(cfg, value));
    if failed > 0 {
        std::process::exit(1);
    }
}

fn with_meta(cfg: &Config, value: Value) -> Value {
    let meta = json!({ "tol": cfg.tol, "exp_bound": cfg.exp_bound });
    match value {
        Value::Object(mut map) => {
            map.insert("meta".into(), meta);
            Value::Object(map)
        }
        other => json!({ "value": other, "meta": meta }),
    }
}

fn write_output(dest: &str, value: &Value) {
    let text = serde_json::to_string(value).expect("serialization cannot fail");
    if dest == "-" {
        println!("{text}");
    } else if let Err(e) = std::fs::write(dest, format!("{text}\n")) {
        eprintln!("cannot write {dest}: {e}");
        std::process::exit(1);
    }
}

fn emit_error(dest: &str, e: &Error) {
    let kind = match e {
        Error::InvalidModuli(_) => "invalid-moduli",
        Error::DimensionMismatch(_) => "dimension-mismatch",
        Error::UnsupportedKind { .. } => "unsupported-kind",
        Error::Precondition(_) => "precondition",
        Error::Domain(_) => "domain",
        Error::Classification(_) => "classification",
        Error::Inconsistency(_) => "inconsistency",
    };
    write_output(
        dest,
        &json!({ "error": { "kind": kind, "message": e.to_string() } }),
    );
}

fn parse_complex(s: &str) -> Result<Complex64, Error> {
    let parts: Vec<&str> = s.split(',').collect();
    let bad = || Error::Domain(format!("cannot parse complex number from {s:?}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(re.trim().parse().map_err(|_| bad())?, 0.0)),
        [re, im] => Ok(Complex64::new(
            re.trim().parse().map_err(|_| bad())?,
            im.trim().parse().map_err(|_| bad())?,
        )),
        _ => Err(bad()),
    }
}

fn manifold_from(mu: &MuArgs, cfg: &Config) -> Result<HopfManifold, Error> {
    let mu: Vec<Complex64> = mu
        .mu
        .iter()
        .map(|s| parse_complex(s))
        .collect::<Result<_, _>>()?;
    HopfManifold::new(mu, cfg)
}

fn parse_factor(s: &str, n: usize) -> Result<Factor, Error> {
    let f: Factor =
        serde_json::from_str(s).map_err(|e| Error::Domain(format!("bad factor JSON: {e}")))?;
    f.validate()?;
    if f.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "factor has {} exponents on a manifold of dimension {n}",
            f.len()
        )));
    }
    Ok(f)
}

fn load_bundle(path: &str, x: &HopfManifold) -> Result<FiltrableRank2, Error> {
    let text = if path == "-" {
        use std::io::Read;
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Domain(format!("cannot read standard input: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Domain(format!("cannot read {path}: {e}")))?
    };
    let json: BundleJson =
        serde_json::from_str(&text).map_err(|e| Error::Domain(format!("bad bundle JSON: {e}")))?;
    FiltrableRank2::from_json(x, &json)
}

fn parse_counts(s: &str, n: usize) -> Result<Vec<u32>, Error> {
    if s.is_empty() {
        return Ok(vec![0; n]);
    }
    let counts: Vec<u32> = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Error::Domain(format!("bad count in {s:?}")))
        })
        .collect::<Result<_, _>>()?;
    if counts.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "expected {n} per-curve counts, got {}",
            counts.len()
        )));
    }
    Ok(counts)
}

fn parse_ints(s: &str) -> Result<Vec<i64>, Error> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Error::Domain(format!("bad integer in {s:?}")))
        })
        .collect()
}

fn parse_p1(s: &str) -> Result<P1Point, Error> {
    if s.eq_ignore_ascii_case("inf") {
        Ok(P1Point::infinity())
    } else {
        P1Point::from_affine(parse_complex(s)?)
    }
}

fn parse_splitting(s: &str) -> Result<SplittingKind, Error> {
    match s {
        "regular" => Ok(SplittingKind::RegularDistinct),
        "nonregular" => Ok(SplittingKind::NonRegularSplit),
        "atiyah" => Ok(SplittingKind::AtiyahNonSplit),
        other => {
            if let Some(h) = other.strip_prefix("jump:") {
                let h: u32 = h
                    .parse()
                    .map_err(|_| Error::Domain(format!("bad jump height in {s:?}")))?;
                Ok(SplittingKind::UnstableJump(h))
            } else {
                Err(Error::Domain(format!(
                    "unknown splitting type {s:?}: use regular | nonregular | atiyah | jump:H"
                )))
            }
        }
    }
}

fn parse_higher(
    args: &HigherArgs,
    cfg: &Config,
) -> Result<(HopfManifold, HigherBundleData), Error> {
    let x = manifold_from(&args.mu, cfg)?;
    let twist = parse_factor(&args.twist, x.dim())?;
    let m = parse_ints(&args.m)?;
    let z = match (&args.z_single, &args.z_pair) {
        (Some(_), Some(_)) => {
            return Err(Error::Domain(
                "give at most one of --z-single and --z-pair".into(),
            ))
        }
        (Some(s), None) => {
            let v = parse_ints(s)?;
            if v.len() != 4 {
                return Err(Error::Domain("--z-single takes i,j,ki,kj".into()));
            }
            Some(ZShape::Single {
                i: v[0] as usize,
                j: v[1] as usize,
                ki: v[2] as u32,
                kj: v[3] as u32,
            })
        }
        (None, Some(s)) => {
            let v = parse_ints(s)?;
            if v.len() != 6 {
                return Err(Error::Domain("--z-pair takes i,ki,j1,kj1,j2,kj2".into()));
            }
            Some(ZShape::Pair {
                i: v[0] as usize,
                ki: v[1] as u32,
                j1: v[2] as usize,
                kj1: v[3] as u32,
                j2: v[4] as usize,
                kj2: v[5] as u32,
            })
        }
        (None, None) => None,
    };
    let data = HigherBundleData {
        twist,
        m,
        z,
        nontrivial: !args.split,
    };
    Ok((x, data))
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value, Error> {
    serde_json::to_value(v).map_err(|e| Error::Inconsistency(format!("serialization: {e}")))
}

fn run(command: &Command, cfg: &Config) -> Result<Value, Error> {
    match command {
        Command::Manifold { cmd } => match cmd {
            ManifoldCmd::Classify { mu } => {
                let x = manifold_from(mu, cfg)?;
                Ok(json!({ "n": x.dim(), "kind": to_value(&x.kind())? }))
            }
            ManifoldCmd::Canonical { mu } => {
                let x = manifold_from(mu, cfg)?;
                let k = canonical_divisor(&x);
                let f = hopf::manifold::divisor_to_line_bundle(&x, &k)?;
                Ok(json!({ "coeffs": k.coeffs, "factor": to_value(&f)? }))
            }
        },
        Command::Pic { cmd } => match cmd {
            PicCmd::Deg { mu, factor } => {
                let x = manifold_from(mu, cfg)?;
                let a = parse_factor(factor, x.dim())?;
                Ok(json!({ "deg": degree(&x, &a)? }))
            }
            PicCmd::Cohom { mu, factor } => {
                let x = manifold_from(mu, cfg)?;
                let a = parse_factor(factor, x.dim())?;
                Ok(json!({ "h": cohomology_dims(&x, &a, cfg)?.h }))
            }
            PicCmd::Restrict { mu, factor, curve } => {
                let x = manifold_from(mu, cfg)?;
                let a = parse_factor(factor, x.dim())?;
                let r = restrict_to_curve(&x, &a, *curve, cfg)?;
                let trivial = r.is_trivial(&x, cfg.tol);
                let mut v = to_value(&r)?;
                if let Value::Object(map) = &mut v {
                    map.insert("trivial".into(), json!(trivial));
                }
                Ok(v)
            }
        },
        Command::Rank2 { cmd } => match cmd {
            Rank2Cmd::ClassifyExt { mu, a, b } => {
                let x = manifold_from(mu, cfg)?;
                let fa = parse_factor(a, x.dim())?;
                let fb = parse_factor(b, x.dim())?;
                to_value(&classify_extension_c2zero(&x, &fa, &fb, cfg)?)
            }
            Rank2Cmd::Automorphy {
                mu,
                a,
                b,
                non_split,
            } => {
                let x = manifold_from(mu, cfg)?;
                let fa = parse_factor(a, x.dim())?;
                let fb = parse_factor(b, x.dim())?;
                to_value(&automorphy_factor(&x, &fa, &fb, *non_split, cfg)?)
            }
            Rank2Cmd::Filtrable { n, c2, c1_torsion } => {
                Ok(json!({ "verdict": to_value(&filtrability_verdict(*n, *c1_torsion, *c2))? }))
            }
            Rank2Cmd::Serre {
                mu,
                sub,
                quot,
                z_total,
                z_on_curve,
            } => {
                let x = manifold_from(mu, cfg)?;
                let s = parse_factor(sub, x.dim())?;
                let q = parse_factor(quot, x.dim())?;
                let z = PointSet {
                    total: *z_total,
                    on_curve: parse_counts(z_on_curve, x.dim())?,
                };
                to_value(&serre_extension(&x, &s, &q, &z)?.to_json())
            }
            Rank2Cmd::Modify { mu, bundle, curve } => {
                let x = manifold_from(mu, cfg)?;
                let e = load_bundle(bundle, &x)?;
                let h = e
                    .jumps
                    .iter()
                    .find(|j| j.curve == *curve)
                    .map(|j| j.heights[0])
                    .ok_or_else(|| Error::Precondition(format!("no jump on curve {curve}")))?;
                let q = x.mu()[(*curve - 1).min(x.dim() - 1)];
                let lam = EllipticPic::new(q, -(h as i64), Complex64::new(0.5, 0.0))?;
                to_value(&elementary_modification(&x, &e, *curve, &lam, cfg)?.to_json())
            }
            Rank2Cmd::AddJump {
                mu,
                bundle,
                curve,
                height,
            } => {
                let x = manifold_from(mu, cfg)?;
                let e = load_bundle(bundle, &x)?;
                to_value(&add_jump(&x, &e, *curve, *height, cfg)?.to_json())
            }
            Rank2Cmd::ClassifyHigher { higher } => {
                let (x, data) = parse_higher(higher, cfg)?;
                to_value(&classify_rank2_higher(&x, &data, cfg)?)
            }
        },
        Command::Stab { cmd } => match cmd {
            StabCmd::Check { mu, bundle, audit } => {
                let x = manifold_from(mu, cfg)?;
                let e = load_bundle(bundle, &x)?;
                if *audit {
                    to_value(&check_stability_audited(&x, &e, cfg)?)
                } else {
                    to_value(&is_stable_filtrable_surface(&x, &e, cfg)?)
                }
            }
            StabCmd::Domain { mu, delta, l1, l2 } => {
                let x = manifold_from(mu, cfg)?;
                let d = parse_factor(delta, x.dim())?;
                let ann = d_domain(&x, &d, &[*l1, *l2])?;
                Ok(json!({ "r_lo": ann.r_lo, "r_hi": ann.r_hi, "empty": ann.is_empty() }))
            }
            StabCmd::Moduli { c2, delta } => {
                let parsed = match delta {
                    Some(s) => Some(
                        serde_json::from_str::<Factor>(s)
                            .map_err(|e| Error::Domain(format!("bad factor JSON: {e}")))?,
                    ),
                    None => None,
                };
                let d = moduli_dimension(parsed.as_ref(), *c2)?;
                Ok(json!({ "dim": d.dim, "nonempty": d.nonempty }))
            }
            StabCmd::Monopole { mu, mass, charge } => {
                let x = manifold_from(mu, cfg)?;
                to_value(&monopole_parameters(&x, *mass, *charge)?)
            }
            StabCmd::C2One { mu, a, delta } => {
                let x = manifold_from(mu, cfg)?;
                let fa = parse_factor(a, x.dim())?;
                let fd = parse_factor(delta, x.dim())?;
                to_value(&c2one_parameters(&x, &fa, &fd, cfg)?)
            }
            StabCmd::Higher { higher } => {
                let (x, data) = parse_higher(higher, cfg)?;
                let t = classify_rank2_higher(&x, &data, cfg)?;
                let v = is_stable_higher(&x, &t, cfg)?;
                let mut out = to_value(&v)?;
                if let Value::Object(map) = &mut out {
                    map.insert("stable".into(), json!(v.is_stable()));
                }
                Ok(out)
            }
        },
        Command::Cover { cmd } => match cmd {
            CoverCmd::Classify {
                mu,
                r,
                branch,
                k,
                beta_convention,
            } => {
                let x = manifold_from(mu, cfg)?;
                let mut cfg = *cfg;
                cfg.beta_convention = match beta_convention {
                    BetaArg::Proof => BetaConvention::Proof,
                    BetaArg::Statement => BetaConvention::Statement,
                };
                to_value(&classify_cyclic_cover(&x, *r, (*branch).into(), *k, &cfg)?)
            }
            CoverCmd::Homology { d } => to_value(&nonprimary_homology(*d)?),
            CoverCmd::Pushforward {
                mu,
                r,
                branch,
                k,
                m,
            } => {
                let x = manifold_from(mu, cfg)?;
                let cover = classify_cyclic_cover(&x, *r, (*branch).into(), *k, cfg)?;
                let mf = match m {
                    Some(s) => parse_factor(s, x.dim())?,
                    None => Factor::one(x.dim()),
                };
                to_value(&pushforward_rank2(&cover, &mf)?)
            }
        },
        Command::Spec { cmd } => match cmd {
            SpecCmd::Cover { mu, bundle } => {
                let x = manifold_from(mu, cfg)?;
                let e = load_bundle(bundle, &x)?;
                let s = spectral_of_filtrable(&x, &e, cfg)?;
                let mut v = to_value(&s)?;
                if let Value::Object(map) = &mut v {
                    map.insert("self_intersection".into(), json!(s.self_intersection()));
                }
                Ok(v)
            }
            SpecCmd::Graph { mu, bundle } => {
                let x = manifold_from(mu, cfg)?;
                let e = load_bundle(bundle, &x)?;
                let s = spectral_of_filtrable(&x, &e, cfg)?;
                let det_class = EllipticPic::new(x.mu()[0], 0, e.det.value(&x)?)?;
                let g = graph_of_spectral(&s, &det_class, cfg.tol)?;
                let mut v = to_value(&g)?;
                if let Value::Object(map) = &mut v {
                    map.insert("degree".into(), json!(g.map.degree()));
                    map.insert("ambient_dim".into(), json!(g.ambient_dim()));
                    map.insert("constant".into(), json!(g.map.is_constant()));
                }
                Ok(v)
            }
            SpecCmd::Casimir { mu, bundle, x1, x2 } => {
                let x = manifold_from(mu, cfg)?;
                let e = load_bundle(bundle, &x)?;
                let s = spectral_of_filtrable(&x, &e, cfg)?;
                let det_class = EllipticPic::new(x.mu()[0], 0, e.det.value(&x)?)?;
                let g = graph_of_spectral(&s, &det_class, cfg.tol)?;
                let (c1, c2) = casimirs(&g, &parse_p1(x1)?, &parse_p1(x2)?, cfg.tol)?;
                Ok(json!({ "c1": to_value(&c1)?, "c2": to_value(&c2)? }))
            }
            SpecCmd::Poisson { c2, st1, st2 } => {
                let rank = poisson_rank(*c2, parse_splitting(st1)?, parse_splitting(st2)?)?;
                Ok(json!({ "rank": rank }))
            }
            SpecCmd::Genus { c2, k } => Ok(json!({ "genus": bisection_genus(*c2, *k)? })),
            SpecCmd::Leaf { mu, bundle } => {
                let x = manifold_from(mu, cfg)?;
                let e = load_bundle(bundle, &x)?;
                to_value(&leaf_of_bundle(&x, &e, cfg)?)
            }
            SpecCmd::Higher { mu, factor } => {
                let x = manifold_from(mu, cfg)?;
                let factors: Vec<Factor> = factor
                    .iter()
                    .map(|s| parse_factor(s, x.dim()))
                    .collect::<Result<_, _>>()?;
                to_value(&higher_spectral(&x, &factors, cfg)?)
            }
        },
        // Handled in main so the report controls the output stream and
        // exit code.
        Command::Selftest => unreachable!("selftest is dispatched before run"),
    }
}
