//! Exact scalars and vectors shared by every module.
//!
//! Rationals travel through JSON as integers or `[num, den]` pairs; quadratic
//! values `a + b√D` as `{"a": .., "b": .., "D": ..}`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn floor_q(x: &Q) -> BigInt {
    x.floor().to_integer()
}

pub fn ceil_q(x: &Q) -> BigInt {
    x.ceil().to_integer()
}

/// Exact point or direction in ℚⁿ.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RatVec(pub Vec<Q>);

impl RatVec {
    pub fn zeros(n: usize) -> Self {
        RatVec(vec![Q::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Q::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        RatVec(xs.iter().map(|&x| q(x)).collect())
    }

    pub fn from_bigints(xs: &[BigInt]) -> Self {
        RatVec(xs.iter().map(|x| Q::from_integer(x.clone())).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &RatVec) -> Q {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Q::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn add(&self, other: &RatVec) -> RatVec {
        RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RatVec) -> RatVec {
        RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> RatVec {
        RatVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &Q) -> RatVec {
        RatVec(self.0.iter().map(|a| a * c).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|a| a.is_integer())
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|a| !a.is_negative())
    }

    /// Integer coordinates, if every entry is integral.
    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|a| a.is_integer().then(|| a.to_integer()))
            .collect()
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.to_bigints()?.iter().map(|a| a.to_i64()).collect()
    }

    /// Smallest positive integer multiple with coprime integer entries.
    /// The zero vector maps to itself.
    pub fn primitive(&self) -> RatVec {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|a| (a * &lcm).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, a| acc.gcd(a));
        RatVec::from_bigints(&ints.iter().map(|a| a / &g).collect::<Vec<_>>())
    }

    /// Least common denominator of the entries.
    pub fn denom_lcm(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()))
    }
}

impl fmt::Debug for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Graded order on vectors: first by coordinate sum, then lexicographic.
pub fn grlex_cmp(a: &RatVec, b: &RatVec) -> Ordering {
    let sa: Q = a.0.iter().sum();
    let sb: Q = b.0.iter().sum();
    sa.cmp(&sb).then_with(|| a.cmp(b))
}

/// `a + b√d` with rational `a`, `b` and a positive non-square integer `d`.
/// With `b = 0` the radicand is irrelevant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadNum {
    pub a: Q,
    pub b: Q,
    pub d: BigInt,
}

impl QuadNum {
    pub fn rational(a: Q) -> Self {
        QuadNum {
            a,
            b: Q::zero(),
            d: BigInt::one(),
        }
    }

    pub fn new(a: Q, b: Q, d: i64) -> Self {
        QuadNum {
            a,
            b,
            d: BigInt::from(d),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Exact sign of `a + b√d`.
    pub fn signum(&self) -> Ordering {
        quad_sign(&self.a, &self.b, &self.d)
    }
}

/// Sign of `p + q√d`, decided without leaving ℚ.
pub fn quad_sign(p: &Q, q: &Q, d: &BigInt) -> Ordering {
    let zero = Q::zero();
    let sp = p.cmp(&zero);
    let sq = q.cmp(&zero);
    if sq == Ordering::Equal {
        return sp;
    }
    if sp == Ordering::Equal || sp == sq {
        return sq;
    }
    // opposite signs: compare p² with q²d
    let lhs = p * p;
    let rhs = q * q * Q::from_integer(d.clone());
    match lhs.cmp(&rhs) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => Ordering::Equal,
    }
}

// ---------------------------------------------------------------- JSON

pub(crate) fn bigint_to_json(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(x.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &serde_json::Value) -> Result<BigInt, String> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| format!("expected an integer, got {n}")),
        serde_json::Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| format!("expected an integer string, got {s:?}")),
        other => Err(format!("expected an integer, got {other}")),
    }
}

pub fn q_to_json(x: &Q) -> serde_json::Value {
    if x.is_integer() {
        bigint_to_json(x.numer())
    } else {
        serde_json::Value::Array(vec![bigint_to_json(x.numer()), bigint_to_json(x.denom())])
    }
}

pub fn q_from_json(v: &serde_json::Value) -> Result<Q, String> {
    match v {
        serde_json::Value::Array(parts) if parts.len() == 2 => {
            let n = bigint_from_json(&parts[0])?;
            let d = bigint_from_json(&parts[1])?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(Q::new(n, d))
        }
        _ => bigint_from_json(v).map(Q::from_integer),
    }
}

/// Serde adapter for a single rational.
pub mod serde_q {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        q_to_json(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        q_from_json(&v).map_err(de::Error::custom)
    }
}

/// Serde adapter for an optional rational.
pub mod serde_opt_q {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        x.as_ref().map(q_to_json).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        let v = Option::<serde_json::Value>::deserialize(d)?;
        v.map(|x| q_from_json(&x).map_err(de::Error::custom)).transpose()
    }
}

/// Serde adapter for a list of rationals.
pub mod serde_q_vec {
    use super::*;

    pub fn serialize<S: Serializer>(x: &[Q], s: S) -> Result<S::Ok, S::Error> {
        x.iter().map(q_to_json).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        Vec::<serde_json::Value>::deserialize(d)?
            .iter()
            .map(|x| q_from_json(x).map_err(de::Error::custom))
            .collect()
    }
}

impl Serialize for RatVec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde_json::Value::Array(self.0.iter().map(q_to_json).collect()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatVec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let arr = v
            .as_array()
            .ok_or_else(|| de::Error::custom("expected an array of rationals"))?;
        arr.iter()
            .map(q_from_json)
            .collect::<Result<Vec<_>, _>>()
            .map(RatVec)
            .map_err(de::Error::custom)
    }
}

impl Serialize for QuadNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.is_rational() {
            return q_to_json(&self.a).serialize(s);
        }
        serde_json::json!({
            "a": q_to_json(&self.a),
            "b": q_to_json(&self.b),
            "D": bigint_to_json(&self.d),
        })
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        if let serde_json::Value::Object(map) = &v {
            let get = |k: &str| {
                map.get(k)
                    .ok_or_else(|| de::Error::custom(format!("quadratic value lacks {k:?}")))
            };
            let a = q_from_json(get("a")?).map_err(de::Error::custom)?;
            let b = q_from_json(get("b")?).map_err(de::Error::custom)?;
            let dd = bigint_from_json(get("D")?).map_err(de::Error::custom)?;
            if !dd.is_positive() {
                return Err(de::Error::custom("radicand must be positive"));
            }
            return Ok(QuadNum { a, b, d: dd });
        }
        q_from_json(&v)
            .map(QuadNum::rational)
            .map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_scaling() {
        let v = RatVec(vec![qf(1, 2), qf(-3, 4), q(0)]);
        assert_eq!(v.primitive(), RatVec::from_ints(&[2, -3, 0]));
        assert_eq!(RatVec::from_ints(&[4, 6]).primitive(), RatVec::from_ints(&[2, 3]));
    }

    #[test]
    fn quad_signs() {
        let d = BigInt::from(2);
        // 1 - √2 < 0
        assert_eq!(quad_sign(&q(1), &q(-1), &d), Ordering::Less);
        // -1 + 3√2 > 0
        assert_eq!(quad_sign(&q(-1), &q(3), &d), Ordering::Greater);
        // -1 + √2/2 < 0
        assert_eq!(quad_sign(&q(-1), &qf(1, 2), &d), Ordering::Less);
        assert_eq!(quad_sign(&q(0), &q(0), &d), Ordering::Equal);
    }

    #[test]
    fn json_roundtrip() {
        let v = RatVec(vec![qf(1, 2), q(-3)]);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, "[[1,2],-3]");
        let back: RatVec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        let qn: QuadNum = serde_json::from_str(r#"{"a":0,"b":[1,6],"D":2}"#).unwrap();
        assert_eq!(qn.b, qf(1, 6));
    }
}
