use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::zlinalg::JsonInt;

/// A class `(a, b)` in `H1(N) + Z^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct H1Class {
    pub a: Vec<BigInt>,
    pub b: Vec<BigInt>,
}

impl H1Class {
    pub fn new(a: Vec<BigInt>, b: Vec<BigInt>) -> Self {
        H1Class { a, b }
    }

    pub fn from_i64(a: &[i64], b: &[i64]) -> Self {
        H1Class {
            a: a.iter().map(|&x| x.into()).collect(),
            b: b.iter().map(|&x| x.into()).collect(),
        }
    }

    pub fn zero(ngens: usize, k: usize) -> Self {
        H1Class {
            a: vec![BigInt::default(); ngens],
            b: vec![BigInt::default(); k],
        }
    }

    /// Split a flat coordinate list `a ++ b` after `ngens` entries.
    pub fn split(coords: Vec<BigInt>, ngens: usize) -> Self {
        let mut a = coords;
        let b = if a.len() > ngens { a.split_off(ngens) } else { Vec::new() };
        H1Class { a, b }
    }

    pub fn coords(&self) -> Vec<BigInt> {
        self.a.iter().chain(&self.b).cloned().collect()
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        H1Class {
            a: self.a.iter().map(|x| x * &k).collect(),
            b: self.b.iter().map(|x| x * &k).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().chain(&self.b).all(|x| x == &BigInt::default())
    }
}

fn zip_with(x: &H1Class, y: &H1Class, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> H1Class {
    assert!(
        x.a.len() == y.a.len() && x.b.len() == y.b.len(),
        "class shapes differ"
    );
    H1Class {
        a: x.a.iter().zip(&y.a).map(|(p, q)| f(p, q)).collect(),
        b: x.b.iter().zip(&y.b).map(|(p, q)| f(p, q)).collect(),
    }
}

impl Add for &H1Class {
    type Output = H1Class;
    fn add(self, rhs: &H1Class) -> H1Class {
        zip_with(self, rhs, |p, q| p + q)
    }
}

impl Sub for &H1Class {
    type Output = H1Class;
    fn sub(self, rhs: &H1Class) -> H1Class {
        zip_with(self, rhs, |p, q| p - q)
    }
}

impl Neg for &H1Class {
    type Output = H1Class;
    fn neg(self) -> H1Class {
        H1Class {
            a: self.a.iter().map(|x| -x).collect(),
            b: self.b.iter().map(|x| -x).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ClassDoc {
    a: Vec<JsonInt>,
    #[serde(default)]
    b: Vec<JsonInt>,
}

impl Serialize for H1Class {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ClassDoc {
            a: self.a.iter().cloned().map(JsonInt).collect(),
            b: self.b.iter().cloned().map(JsonInt).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for H1Class {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = ClassDoc::deserialize(d)?;
        Ok(H1Class {
            a: doc.a.into_iter().map(|x| x.0).collect(),
            b: doc.b.into_iter().map(|x| x.0).collect(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitType {
    Elliptic,
    Hyperbolic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalOrbit {
    pub orbit_type: OrbitType,
    pub class: H1Class,
}

/// The link of critical Reeb orbits, oriented by the flow.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalLinkDesc {
    pub components: Vec<CriticalOrbit>,
}

impl CriticalLinkDesc {
    pub fn push(&mut self, orbit_type: OrbitType, class: H1Class) {
        self.components.push(CriticalOrbit { orbit_type, class });
    }
}

/// A tangent plane field, recorded by the Poincare dual of its Euler class
/// and an opaque label for its three-dimensional invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneField {
    pub euler_pd: H1Class,
    #[serde(default)]
    pub d3_tag: i64,
}

impl PlaneField {
    pub fn new(euler_pd: H1Class) -> Self {
        PlaneField { euler_pd, d3_tag: 0 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let x = H1Class::from_i64(&[1, 2], &[3]);
        let y = H1Class::from_i64(&[0, -2], &[1]);
        assert_eq!(&x + &y, H1Class::from_i64(&[1, 0], &[4]));
        assert_eq!(&x - &x, H1Class::zero(2, 1));
        assert_eq!(-&y, H1Class::from_i64(&[0, 2], &[-1]));
        assert_eq!(x.scale(2), H1Class::from_i64(&[2, 4], &[6]));
    }

    #[test]
    fn split_and_json() {
        let c = H1Class::split(crate::zlinalg::int_vec(&[5, -1, 7]), 2);
        assert_eq!(c, H1Class::from_i64(&[5, -1], &[7]));
        assert_eq!(c.coords(), crate::zlinalg::int_vec(&[5, -1, 7]));
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(text, r#"{"a":[5,-1],"b":[7]}"#);
        let back: H1Class = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        let short: H1Class = serde_json::from_str(r#"{"a":[1]}"#).unwrap();
        assert!(short.b.is_empty());
    }
}
