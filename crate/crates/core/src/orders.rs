//! Continuous (pre)orders on ℚⁿ given as lexicographic products of weights.
//!
//! A weight is a vector whose entries lie in ℚ(√D) for one fixed radicand D.
//! Irrational parts are only accepted in dimension at most 2.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::Cone;
use crate::linalg::{nullspace, project_out, rank};
use crate::num::{quad_sign, QuadNum, RatVec, Q};
use crate::support::SupportSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("an order needs at least one weight")]
    Empty,
    #[error("weights have inconsistent lengths")]
    DimensionMismatch,
    #[error("quadratic entries must share one radicand")]
    MixedRadicands,
    #[error("irrational weight entries are only supported for n <= 2")]
    IrrationalInHighDimension,
    #[error("weight must be nonzero")]
    ZeroWeight,
    #[error("weight must lie in the nonnegative orthant")]
    NegativeWeight,
    #[error("order is not total on the lattice")]
    NotTotal,
    #[error("invalid support: {0}")]
    Support(String),
}

/// Lexicographic product `≤_(u₁,…,u_s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightOrder {
    weights: Vec<Vec<QuadNum>>,
    radicand: BigInt,
    total_on_lattice: bool,
}

/// Rational and irrational parts of one weight.
fn split(w: &[QuadNum]) -> (RatVec, RatVec) {
    (
        RatVec(w.iter().map(|x| x.a.clone()).collect()),
        RatVec(w.iter().map(|x| x.b.clone()).collect()),
    )
}

impl WeightOrder {
    pub fn new(weights: Vec<Vec<QuadNum>>) -> Result<Self, OrderError> {
        let n = weights.first().ok_or(OrderError::Empty)?.len();
        if weights.iter().any(|w| w.len() != n) || n == 0 {
            return Err(OrderError::DimensionMismatch);
        }
        let mut radicand: Option<BigInt> = None;
        for x in weights.iter().flatten().filter(|x| !x.is_rational()) {
            match &radicand {
                Some(d) if *d != x.d => return Err(OrderError::MixedRadicands),
                _ => radicand = Some(x.d.clone()),
            }
        }
        if radicand.is_some() && n > 2 {
            return Err(OrderError::IrrationalInHighDimension);
        }
        let mut o = WeightOrder {
            weights,
            radicand: radicand.unwrap_or_else(BigInt::one),
            total_on_lattice: false,
        };
        o.total_on_lattice = rank(&o.rational_rows(), n) == n;
        Ok(o)
    }

    pub fn rational(weights: &[RatVec]) -> Result<Self, OrderError> {
        Self::new(
            weights
                .iter()
                .map(|w| w.0.iter().cloned().map(QuadNum::rational).collect())
                .collect(),
        )
    }

    pub fn ambient(&self) -> usize {
        self.weights[0].len()
    }

    pub fn weights(&self) -> &[Vec<QuadNum>] {
        &self.weights
    }

    pub fn is_total(&self) -> bool {
        self.total_on_lattice
    }

    /// Rows whose common kernel is the set of points equivalent to 0.
    fn rational_rows(&self) -> Vec<RatVec> {
        let mut rows = Vec::new();
        for w in &self.weights {
            let (p, q) = split(w);
            rows.push(p);
            if !q.is_zero() {
                rows.push(q);
            }
        }
        rows
    }

    /// Sign of `x` with respect to the order.
    pub fn sign(&self, x: &RatVec) -> Ordering {
        for w in &self.weights {
            let (p, q) = split(w);
            let s = quad_sign(&x.dot(&p), &x.dot(&q), &self.radicand);
            if s != Ordering::Equal {
                return s;
            }
        }
        Ordering::Equal
    }

    pub fn compare(&self, a: &RatVec, b: &RatVec) -> Ordering {
        self.sign(&a.sub(b))
    }

    /// Value of `x` on the first weight as `(rational part, irrational part)`.
    pub fn leading_value(&self, x: &RatVec) -> (Q, Q) {
        let (p, q) = split(&self.weights[0]);
        (x.dot(&p), x.dot(&q))
    }
}

pub fn compare(o: &WeightOrder, a: &RatVec, b: &RatVec) -> Ordering {
    o.compare(a, b)
}

/// Every generator of `c` is ⪰ 0.
pub fn is_positive(o: &WeightOrder, c: &Cone) -> bool {
    c.generators().iter().all(|g| o.sign(g) != Ordering::Less)
}

/// `(w, e₁, …, eₙ)` with the basis vectors that add nothing dropped.
pub fn refine_weight(w: &RatVec) -> Result<WeightOrder, OrderError> {
    if w.is_zero() {
        return Err(OrderError::ZeroWeight);
    }
    if !w.is_nonneg() {
        return Err(OrderError::NegativeWeight);
    }
    let n = w.dim();
    let mut rows = vec![w.clone()];
    for i in 0..n {
        let mut trial = rows.clone();
        trial.push(RatVec::unit(n, i));
        if rank(&trial, n) > rank(&rows, n) {
            rows = trial;
        }
    }
    WeightOrder::rational(&rows)
}

/// Like [`refine_weight`] for a weight with quadratic entries.
pub fn refine_quad_weight(w: &[QuadNum]) -> Result<WeightOrder, OrderError> {
    if w.iter().all(|x| x.signum() == Ordering::Equal) {
        return Err(OrderError::ZeroWeight);
    }
    if w.iter().any(|x| x.signum() == Ordering::Less) {
        return Err(OrderError::NegativeWeight);
    }
    let n = w.len();
    let head = WeightOrder::new(vec![w.to_vec()])?;
    let mut rows = head.rational_rows();
    let mut weights = vec![w.to_vec()];
    for i in 0..n {
        let mut trial = rows.clone();
        trial.push(RatVec::unit(n, i));
        if rank(&trial, n) > rank(&rows, n) {
            rows = trial;
            weights.push(
                RatVec::unit(n, i)
                    .0
                    .into_iter()
                    .map(QuadNum::rational)
                    .collect(),
            );
        }
    }
    WeightOrder::new(weights)
}

/// A level functional restricted to the current kernel, as rational and
/// irrational parts.
type Level = (RatVec, RatVec);

fn levels(o: &WeightOrder) -> Vec<Level> {
    let n = o.ambient();
    let mut used: Vec<RatVec> = Vec::new();
    let mut out = Vec::new();
    for w in &o.weights {
        let (p, q) = split(w);
        // restriction to the kernel K of the earlier levels = projection onto K
        let perp = crate::linalg::span_basis(&used, n);
        let pp = project_out(&p, &perp);
        let qp = project_out(&q, &perp);
        if pp.is_zero() && qp.is_zero() {
            continue;
        }
        out.push((pp, qp));
        used.push(p);
        used.push(q);
    }
    out
}

/// Product of `a + b√d` and `c + e√d`.
fn qmul(a: &Q, b: &Q, c: &Q, e: &Q, d: &Q) -> (Q, Q) {
    (a * c + b * e * d, a * e + b * c)
}

fn positively_parallel(x: &Level, y: &Level, d: &BigInt) -> bool {
    let dq = Q::from_integer(d.clone());
    let n = x.0.dim();
    for i in 0..n {
        for j in (i + 1)..n {
            let (a1, b1) = qmul(&x.0 .0[i], &x.1 .0[i], &y.0 .0[j], &y.1 .0[j], &dq);
            let (a2, b2) = qmul(&x.0 .0[j], &x.1 .0[j], &y.0 .0[i], &y.1 .0[i], &dq);
            if a1 != a2 || b1 != b2 {
                return false;
            }
        }
    }
    let (mut s, mut t) = (Q::zero(), Q::zero());
    for i in 0..n {
        let (a, b) = qmul(&x.0 .0[i], &x.1 .0[i], &y.0 .0[i], &y.1 .0[i], &dq);
        s += a;
        t += b;
    }
    quad_sign(&s, &t, d) == Ordering::Greater
}

/// Whether `fine` refines `coarse`: the levels of `coarse` are, up to
/// positive scaling, a prefix of the levels of `fine`.
pub fn refines(fine: &WeightOrder, coarse: &WeightOrder) -> bool {
    if fine.ambient() != coarse.ambient() {
        return false;
    }
    let lf = levels(fine);
    let lc = levels(coarse);
    let d = if fine.radicand.is_one() {
        coarse.radicand.clone()
    } else {
        fine.radicand.clone()
    };
    lc.len() <= lf.len() && lc.iter().zip(&lf).all(|(c, f)| positively_parallel(f, c, &d))
}

/// Family-by-family well-ordering decision.
pub fn is_well_ordered(o: &WeightOrder, s: &SupportSpec) -> Result<bool, OrderError> {
    let n = s.ambient().map_err(|e| OrderError::Support(e.to_string()))?;
    if n != o.ambient() {
        return Err(OrderError::DimensionMismatch);
    }
    if !o.is_total() {
        return Err(OrderError::NotTotal);
    }
    let pos = |v: &RatVec| o.sign(v) == Ordering::Greater;
    Ok(s.rays.iter().all(|r| pos(&r.step))
        && s.semigroups.iter().all(|g| g.gens.iter().all(pos))
        && s.ptails.iter().all(|t| pos(&t.dir)))
}

/// Kernel of the order: points equivalent to 0.
pub fn order_kernel(o: &WeightOrder) -> Vec<RatVec> {
    nullspace(&o.rational_rows(), o.ambient())
}

// ------------------------------------------------------------ JSON

#[derive(Serialize, Deserialize)]
struct QuadParts {
    #[serde(rename = "D")]
    d: i64,
    parts: Vec<RatVec>,
}

#[derive(Serialize, Deserialize)]
struct OrderJson {
    weights: Vec<Vec<QuadNum>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    quad: Option<QuadParts>,
}

impl Serialize for WeightOrder {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        OrderJson {
            weights: self.weights.clone(),
            quad: None,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightOrder {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = OrderJson::deserialize(d)?;
        let mut weights = j.weights;
        if let Some(qp) = j.quad {
            if qp.parts.len() != weights.len() {
                return Err(serde::de::Error::custom("quad parts must match the weights"));
            }
            for (w, part) in weights.iter_mut().zip(&qp.parts) {
                if part.dim() != w.len() {
                    return Err(serde::de::Error::custom("quad part has the wrong length"));
                }
                for (x, b) in w.iter_mut().zip(&part.0) {
                    if !b.is_zero() {
                        *x = QuadNum::new(x.a.clone(), x.b.clone() + b, qp.d);
                    }
                }
            }
        }
        WeightOrder::new(weights).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{q, qf};
    use crate::support::{PTailFamily, RayFamily};

    fn v(xs: &[i64]) -> RatVec {
        RatVec::from_ints(xs)
    }

    fn ord(ws: &[&[i64]]) -> WeightOrder {
        WeightOrder::rational(&ws.iter().map(|w| v(w)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(ord(&[&[1, 0], &[0, 1]]).compare(&v(&[0, 1]), &v(&[1, 0])), Ordering::Less);
        assert_eq!(ord(&[&[1, 1], &[1, 0]]).compare(&v(&[0, 1]), &v(&[1, 0])), Ordering::Less);
        let sqrt2 = WeightOrder::new(vec![vec![
            QuadNum::rational(q(1)),
            QuadNum::new(q(0), q(1), 2),
        ]])
        .unwrap();
        assert_eq!(sqrt2.compare(&v(&[1, 0]), &v(&[0, 1])), Ordering::Less);
        assert!(sqrt2.is_total());
    }

    #[test]
    fn positivity_examples() {
        assert!(is_positive(&ord(&[&[1, 0], &[0, 1]]), &Cone::orthant(2)));
        let c = Cone::from_generators(2, &[v(&[1, -1])]).unwrap();
        assert!(is_positive(&ord(&[&[1, 1]]), &c));
        let c2 = Cone::from_generators(2, &[v(&[1, -1]), v(&[0, 1])]).unwrap();
        assert!(is_positive(&ord(&[&[1, 1], &[1, 0]]), &c2));
        assert!(!is_positive(&ord(&[&[1, 1], &[0, 1]]), &c2));
    }

    #[test]
    fn refine_examples() {
        assert_eq!(refine_weight(&v(&[1, 1])).unwrap(), ord(&[&[1, 1], &[1, 0]]));
        assert_eq!(refine_weight(&v(&[1, 0])).unwrap(), ord(&[&[1, 0], &[0, 1]]));
        assert_eq!(
            refine_weight(&v(&[2, 1, 1])).unwrap(),
            ord(&[&[2, 1, 1], &[1, 0, 0], &[0, 1, 0]])
        );
        assert!(refine_weight(&v(&[0, 0])).is_err());
        assert!(refine_weight(&v(&[1, -1])).is_err());
    }

    #[test]
    fn refines_examples() {
        assert!(refines(&ord(&[&[1, 1], &[1, 0]]), &ord(&[&[1, 1]])));
        assert!(!refines(&ord(&[&[1, 0], &[0, 1]]), &ord(&[&[1, 1]])));
        assert!(refines(&ord(&[&[1, 1], &[2, 2], &[1, 0]]), &ord(&[&[1, 1]])));
        assert!(!refines(&ord(&[&[1, 1]]), &ord(&[&[-1, -1]])));
    }

    #[test]
    fn refines_with_irrational_scaling() {
        // (√2, 2) = √2·(1, √2)
        let a = WeightOrder::new(vec![vec![QuadNum::new(q(0), q(1), 2), QuadNum::rational(q(2))]])
            .unwrap();
        let b = WeightOrder::new(vec![vec![QuadNum::rational(q(1)), QuadNum::new(q(0), q(1), 2)]])
            .unwrap();
        assert!(refines(&a, &b));
    }

    fn ray_spec(step: &[i64]) -> SupportSpec {
        SupportSpec {
            rays: vec![RayFamily {
                base: v(&[0, 0]),
                step: v(step),
            }],
            ..SupportSpec::default()
        }
    }

    #[test]
    fn well_ordered_examples() {
        assert!(is_well_ordered(&ord(&[&[1, 0], &[0, 1]]), &ray_spec(&[1, 0])).unwrap());
        assert!(is_well_ordered(&ord(&[&[1, 1], &[1, 0]]), &ray_spec(&[1, -1])).unwrap());
        assert!(!is_well_ordered(&ord(&[&[1, 1], &[0, 1]]), &ray_spec(&[1, -1])).unwrap());
        let tail = SupportSpec {
            ptails: vec![PTailFamily {
                base: v(&[0, 0]),
                dir: v(&[1, -1]),
                p: 2,
            }],
            ..SupportSpec::default()
        };
        assert!(is_well_ordered(&refine_weight(&v(&[1, 1])).unwrap(), &tail).unwrap());
        assert_eq!(
            is_well_ordered(&ord(&[&[1, 1]]), &ray_spec(&[1, 0])),
            Err(OrderError::NotTotal)
        );
    }

    #[test]
    fn json_quad_parts() {
        let o: WeightOrder =
            serde_json::from_str(r#"{"weights":[[1,0]],"quad":{"D":2,"parts":[[0,[1,6]]]}}"#)
                .unwrap();
        assert_eq!(o.weights()[0][1].b, qf(1, 6));
    }
}
