//! Canonical JSON forms.
//!
//! A polynomial is an array of `[deg_u, deg_v, "p/q"]` triples in lexicographic
//! exponent order; a factored rational is
//! `{"num": <poly>, "den": [{"factor": <poly>, "mult": k}, ...]}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::Poly;
use super::rational::FactoredRational;
use crate::error::{Error, Result};

/// Writes `p/q`, or just `p` when the denominator is 1.
pub fn format_rational(r: &BigRational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
    let d: BigInt = d.parse().map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(n, d))
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for (&(a, b), c) in self.terms() {
            seq.serialize_element(&(a, b, format_rational(c)))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<(u32, u32, String)> = Vec::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (a, b, c) in raw {
            let c = parse_rational(&c).map_err(D::Error::custom)?;
            if c.is_zero() {
                return Err(D::Error::custom("zero coefficient in canonical form"));
            }
            terms.push(((a, b), c));
        }
        Ok(Poly::from_terms(terms))
    }
}

#[derive(Serialize, Deserialize)]
struct FactorJson {
    factor: Poly,
    mult: u32,
}

#[derive(Serialize, Deserialize)]
struct FactoredJson {
    num: Poly,
    den: Vec<FactorJson>,
}

impl Serialize for FactoredRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FactoredJson {
            num: self.numerator().clone(),
            den: self
                .factors()
                .map(|(f, m)| FactorJson {
                    factor: f.clone(),
                    mult: m,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FactoredRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = FactoredJson::deserialize(deserializer)?;
        let den: Vec<(Poly, u32)> = raw.den.into_iter().map(|f| (f.factor, f.mult)).collect();
        FactoredRational::new(raw.num, &den).map_err(D::Error::custom)
    }
}
