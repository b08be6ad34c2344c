//! Symbolic computation for line bundles and rank-2 vector bundles on
//! diagonal Hopf manifolds: taxonomy of the contraction diagonal, Picard
//! arithmetic through constant factors, slope-stability verdicts with their
//! annular domains, cyclic covers, and spectral data over classical
//! surfaces. Closed forms are paired with brute-force oracles at desk scale
//! throughout the test and self-test suites.
//!
//! ```
//! use hopf::{Config, Factor, HopfManifold, Kind};
//! use num_complex::Complex64;
//!
//! let cfg = Config::default();
//! let x = HopfManifold::new(
//!     vec![Complex64::new(0.31, 0.0), Complex64::new(0.47, 0.0)],
//!     &cfg,
//! )?;
//! assert_eq!(x.kind(), Kind::Generic);
//!
//! // The hypersurface bundle mu_1 has positive degree and one section.
//! let a = Factor::monomial(vec![1, 0]);
//! assert!(hopf::picard::degree(&x, &a)? > 0.0);
//! assert_eq!(hopf::picard::cohomology_dims(&x, &a, &cfg)?.h, vec![1, 1, 0]);
//! # Ok::<(), hopf::Error>(())
//! ```

#![forbid(unsafe_code)]

pub mod config;
pub mod covers;
pub mod elliptic;
pub mod error;
pub mod factors;
pub mod manifold;
pub mod picard;
pub mod rank2;
pub mod selftest;
pub mod spectral;
pub mod stability;
pub mod wire;

pub use config::{BetaConvention, Config, DetConvention};
pub use error::{Error, Result};
pub use factors::{Factor, SignConstraint};
pub use manifold::{HopfManifold, Kind};
