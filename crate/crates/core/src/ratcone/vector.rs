use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational scalar used everywhere in cone arithmetic.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    let bad = || Error::Rational(s.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Q::from_integer(n))
        }
    }
}

/// Canonical `p/q` text (integers print without a denominator).
pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

/// Scales a rational vector by a positive factor to the primitive integer vector on the same ray.
pub fn primitive(v: &[Q]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for x in v {
        den = den.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    primitive_int(ints)
}

pub fn primitive_int(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in &v {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    v
}

/// Exact rational vector in weight coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct RatVec(Vec<Q>);

impl RatVec {
    pub fn new(coords: Vec<Q>) -> Self {
        RatVec(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        RatVec(vec![Q::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Q::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        RatVec(xs.iter().map(|&x| q(x)).collect())
    }

    pub fn from_bigints(xs: &[BigInt]) -> Self {
        RatVec(xs.iter().map(|x| Q::from_integer(x.clone())).collect())
    }

    pub fn parse<S: AsRef<str>>(xs: &[S]) -> Result<Self> {
        xs.iter().map(|s| parse_q(s.as_ref())).collect::<Result<Vec<_>>>().map(RatVec)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Q> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &RatVec) -> Q {
        dot(&self.0, &other.0)
    }

    pub fn scale(&self, c: &Q) -> RatVec {
        RatVec(self.0.iter().map(|x| x * c).collect())
    }

    /// Positive rescaling to the primitive integer vector (zero stays zero).
    pub fn normalized(&self) -> RatVec {
        RatVec::from_bigints(&primitive(&self.0))
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(fmt_q).collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.0.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn concat(&self, other: &RatVec) -> RatVec {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        RatVec(v)
    }

    /// Lexicographic sign of the first nonzero coordinate.
    pub fn lex_sign(&self) -> i32 {
        for x in &self.0 {
            if x.is_positive() {
                return 1;
            }
            if x.is_negative() {
                return -1;
            }
        }
        0
    }
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

impl Index<usize> for RatVec {
    type Output = Q;
    fn index(&self, i: usize) -> &Q {
        &self.0[i]
    }
}

impl From<Vec<Q>> for RatVec {
    fn from(v: Vec<Q>) -> Self {
        RatVec(v)
    }
}

impl Add for &RatVec {
    type Output = RatVec;
    fn add(self, rhs: &RatVec) -> RatVec {
        RatVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RatVec {
    type Output = RatVec;
    fn sub(self, rhs: &RatVec) -> RatVec {
        RatVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RatVec {
    type Output = RatVec;
    fn neg(self) -> RatVec {
        RatVec(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for RatVec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatVec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        RatVec::parse(&raw).map_err(D::Error::custom)
    }
}

/// Serializes a rational slice as `["p/q", ...]`.
pub fn ser_qs<S: Serializer>(xs: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    xs.iter().map(fmt_q).collect::<Vec<_>>().serialize(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        let v = RatVec::parse(&["1/2", "-3", "4/6", "0"]).unwrap();
        assert_eq!(v.to_strings(), vec!["1/2", "-3", "2/3", "0"]);
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn normalization_is_positive_primitive() {
        let v = RatVec::parse(&["-2/3", "4/9", "0"]).unwrap();
        assert_eq!(v.normalized(), RatVec::from_ints(&[-3, 2, 0]));
        assert_eq!(RatVec::zeros(2).normalized(), RatVec::zeros(2));
    }
}
