//! Wire encoding of complex scalars as `{"re": .., "im": ..}` objects, for
//! use with `#[serde(with = ...)]` on fields.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
pub(crate) struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<&Complex64> for Cx {
    fn from(c: &Complex64) -> Cx {
        Cx { re: c.re, im: c.im }
    }
}

impl From<Cx> for Complex64 {
    fn from(c: Cx) -> Complex64 {
        Complex64::new(c.re, c.im)
    }
}

pub fn serialize<S: Serializer>(c: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    Cx::from(c).serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
    Cx::deserialize(d).map(Complex64::from)
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(Cx::from))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        Ok(Vec::<Cx>::deserialize(d)?
            .into_iter()
            .map(Complex64::from)
            .collect())
    }
}

pub mod pair {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Complex64; 2], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(Cx::from))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Complex64; 2], D::Error> {
        let [a, b] = <[Cx; 2]>::deserialize(d)?;
        Ok([Complex64::from(a), Complex64::from(b)])
    }
}
