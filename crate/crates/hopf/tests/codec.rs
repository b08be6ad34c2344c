//! Wire-format checks: the JSON schemas are pinned and decode(encode(v))
//! is the identity, bit-for-bit on integers and exactly on floats (the
//! serializer prints shortest round-trip decimals).

use num_complex::Complex64;
use proptest::prelude::*;
use serde_json::{json, Value};

use hopf::config::Config;
use hopf::factors::Factor;
use hopf::manifold::{HopfManifold, ManifoldJson};
use hopf::rank2::{BundleJson, FiltrableRank2, JumpRecord, PointSet};

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[test]
fn factor_schema_shape() {
    let f = Factor::new(vec![1, -2], Complex64::new(0.25, -0.5)).unwrap();
    let v = serde_json::to_value(&f).unwrap();
    assert_eq!(
        v,
        json!({ "exp": [1, -2], "scalar": { "re": 0.25, "im": -0.5 } })
    );
    let back: Factor = serde_json::from_value(v).unwrap();
    assert_eq!(back, f);
}

#[test]
fn manifold_schema_shape() {
    let m = ManifoldJson {
        n: 2,
        mu: vec![re(0.31), re(0.47)],
    };
    let v = serde_json::to_value(&m).unwrap();
    assert_eq!(
        v,
        json!({ "n": 2, "mu": [{ "re": 0.31, "im": 0.0 }, { "re": 0.47, "im": 0.0 }] })
    );
    let x = HopfManifold::from_json(&m, &Config::default()).unwrap();
    assert_eq!(serde_json::to_value(x.kind()).unwrap(), json!("generic"));
    // A forged dimension is rejected.
    let bad = ManifoldJson {
        n: 3,
        mu: vec![re(0.31), re(0.47)],
    };
    assert!(HopfManifold::from_json(&bad, &Config::default()).is_err());
}

#[test]
fn bundle_round_trip() {
    let cfg = Config::default();
    let x = HopfManifold::new(vec![re(0.31), re(0.47)], &cfg).unwrap();
    let e = FiltrableRank2::new(
        &x,
        Factor::new(vec![1, 0], re(0.77)).unwrap(),
        Factor::monomial(vec![0, 1]),
        3,
        PointSet {
            total: 3,
            on_curve: vec![2, 0],
        },
        vec![JumpRecord {
            curve: 1,
            heights: vec![1, 1],
        }],
    )
    .unwrap();
    let text = serde_json::to_string(&e.to_json()).unwrap();
    let parsed: BundleJson = serde_json::from_str(&text).unwrap();
    let back = FiltrableRank2::from_json(&x, &parsed).unwrap();
    assert_eq!(back, e);
    // The wire object carries exactly the documented keys.
    let v: Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(|s| s.as_str()).collect();
    assert_eq!(keys, vec!["c2", "det", "jumps", "sub", "z_on_curve"]);
}

proptest! {
    #[test]
    fn factor_round_trip_is_identity(
        e1 in -40i64..=40, e2 in -40i64..=40,
        s_re in -5.0f64..5.0, s_im in -5.0f64..5.0
    ) {
        prop_assume!(s_re != 0.0 || s_im != 0.0);
        let f = Factor::new(vec![e1, e2], Complex64::new(s_re, s_im)).unwrap();
        let text = serde_json::to_string(&f).unwrap();
        let back: Factor = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn bundle_round_trip_is_identity(
        h1 in proptest::collection::vec(1u32..=3, 0..3),
        h2 in proptest::collection::vec(1u32..=3, 0..3),
        off in 0u32..3
    ) {
        let cfg = Config::default();
        let x = HopfManifold::new(vec![re(0.31), re(0.47)], &cfg).unwrap();
        let mut jumps = Vec::new();
        let mut on_curve = vec![0u32; 2];
        for (i, hs) in [h1, h2].into_iter().enumerate() {
            if !hs.is_empty() {
                on_curve[i] = hs.iter().sum();
                jumps.push(JumpRecord { curve: i + 1, heights: hs });
            }
        }
        let total = on_curve.iter().sum::<u32>() + off;
        let e = FiltrableRank2::new(
            &x,
            Factor::monomial(vec![1, -1]),
            Factor::monomial(vec![0, 0]),
            total,
            PointSet { total, on_curve },
            jumps,
        ).unwrap();
        let text = serde_json::to_string(&e.to_json()).unwrap();
        let parsed: BundleJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(FiltrableRank2::from_json(&x, &parsed).unwrap(), e);
    }
}
