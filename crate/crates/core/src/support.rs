//! Finitely presented infinite supports and the cones attached to them.
//!
//! A [`SupportSpec`] is a union of finite points, arithmetic progressions
//! along a ray, translated semigroups and `p`-adic accumulation tails. Every
//! predicate on it (boundedness in a direction, level counts, thresholds) is
//! decided family by family in exact arithmetic.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::binom_ideal::{self, IdealError};
use crate::geom::{Cone, GeomError};
use crate::linalg;
use crate::num::{ceil_q, grlex_cmp, q, RatVec, Q};
use crate::par::Exec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SupportError {
    #[error("cannot infer the ambient dimension of an empty spec")]
    UnknownAmbient,
    #[error("vector of length {got} in a spec of dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("family direction must be nonzero")]
    ZeroDirection,
    #[error("lattice_scale must be positive")]
    BadScale,
    #[error("{0:?} is off the (1/{1}) lattice")]
    OffLattice(RatVec, u64),
    #[error("direction {0:?} is not in tau: the support is unbounded below along it")]
    NotInTau(RatVec),
    #[error("tau is not full dimensional, so its dual is not strongly convex")]
    NotFullDimensional,
    #[error("normalization needs integral exponents (lattice_scale 1)")]
    NonIntegral,
    #[error("not in the algebraic Laurent class: {0}")]
    NotInClass(String),
    #[error("the diagnostic needs at least two truncations, got {0}")]
    TooFewTruncations(usize),
    #[error("truncation points must be two dimensional")]
    NotPlanar,
    #[error("empty support")]
    EmptySupport,
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

/// `{base + k·step : k ∈ ℕ}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RayFamily {
    pub base: RatVec,
    pub step: RatVec,
}

/// `base + ℕ⟨gens⟩`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SemigroupFamily {
    pub base: RatVec,
    pub gens: Vec<RatVec>,
}

/// `{base + (1 − p^{−k})·dir : k ≥ 1}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PTailFamily {
    pub base: RatVec,
    pub dir: RatVec,
    pub p: u32,
}

impl PTailFamily {
    pub fn point(&self, k: u32) -> RatVec {
        let pk = Q::from_integer(BigInt::from(self.p).pow(k));
        self.base.add(&self.dir.scale(&(Q::one() - pk.recip())))
    }

    pub fn limit(&self) -> RatVec {
        self.base.add(&self.dir)
    }
}

fn default_scale() -> u64 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupportSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default)]
    pub points: Vec<RatVec>,
    #[serde(default)]
    pub rays: Vec<RayFamily>,
    #[serde(default)]
    pub semigroups: Vec<SemigroupFamily>,
    #[serde(default)]
    pub ptails: Vec<PTailFamily>,
    #[serde(default = "default_scale")]
    pub lattice_scale: u64,
}

impl Default for SupportSpec {
    fn default() -> Self {
        SupportSpec {
            dim: None,
            points: vec![],
            rays: vec![],
            semigroups: vec![],
            ptails: vec![],
            lattice_scale: 1,
        }
    }
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl SupportSpec {
    fn all_vectors(&self) -> impl Iterator<Item = &RatVec> {
        self.points
            .iter()
            .chain(self.rays.iter().flat_map(|r| [&r.base, &r.step]))
            .chain(
                self.semigroups
                    .iter()
                    .flat_map(|g| std::iter::once(&g.base).chain(g.gens.iter())),
            )
            .chain(self.ptails.iter().flat_map(|t| [&t.base, &t.dir]))
    }

    pub fn ambient(&self) -> Result<usize, SupportError> {
        let n = match self.dim {
            Some(n) => n,
            None => self
                .all_vectors()
                .next()
                .map(RatVec::dim)
                .ok_or(SupportError::UnknownAmbient)?,
        };
        if let Some(v) = self.all_vectors().find(|v| v.dim() != n) {
            return Err(SupportError::DimensionMismatch {
                expected: n,
                got: v.dim(),
            });
        }
        Ok(n)
    }

    pub fn validate(&self) -> Result<usize, SupportError> {
        let n = self.ambient()?;
        if self.lattice_scale == 0 {
            return Err(SupportError::BadScale);
        }
        if let Some(t) = self.ptails.iter().find(|t| !is_prime(t.p)) {
            return Err(SupportError::NotPrime(t.p));
        }
        let zero_dir = self.rays.iter().any(|r| r.step.is_zero())
            || self.semigroups.iter().any(|g| g.gens.iter().any(RatVec::is_zero))
            || self.ptails.iter().any(|t| t.dir.is_zero());
        if zero_dir {
            return Err(SupportError::ZeroDirection);
        }
        let k = Q::from_integer(BigInt::from(self.lattice_scale));
        if let Some(v) = self.all_vectors().find(|v| !v.scale(&k).is_integral()) {
            return Err(SupportError::OffLattice(v.clone(), self.lattice_scale));
        }
        Ok(n)
    }

    /// Ray steps and semigroup generators: the directions along which the
    /// support is infinite and unbounded.
    pub fn directions(&self) -> Vec<RatVec> {
        let mut d: Vec<RatVec> = self
            .rays
            .iter()
            .map(|r| r.step.clone())
            .chain(self.semigroups.iter().flat_map(|g| g.gens.iter().cloned()))
            .collect();
        d.sort();
        d.dedup();
        d
    }

    pub fn is_integral(&self) -> bool {
        self.lattice_scale == 1 && self.all_vectors().all(RatVec::is_integral)
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
            && self.rays.is_empty()
            && self.semigroups.is_empty()
            && self.ptails.is_empty()
    }

    /// Every point of the spec is in the closed first orthant.
    pub fn in_orthant(&self) -> bool {
        self.points.iter().all(RatVec::is_nonneg)
            && self.rays.iter().all(|r| r.base.is_nonneg() && r.step.is_nonneg())
            && self
                .semigroups
                .iter()
                .all(|g| g.base.is_nonneg() && g.gens.iter().all(RatVec::is_nonneg))
            && self
                .ptails
                .iter()
                .all(|t| t.base.is_nonneg() && t.limit().is_nonneg())
    }

    /// Union of two specs (lattice scale is the lcm).
    pub fn union(&self, other: &SupportSpec) -> SupportSpec {
        let mut s = self.clone();
        s.points.extend(other.points.iter().cloned());
        s.rays.extend(other.rays.iter().cloned());
        s.semigroups.extend(other.semigroups.iter().cloned());
        s.ptails.extend(other.ptails.iter().cloned());
        s.lattice_scale = self.lattice_scale.lcm(&other.lattice_scale);
        s.dim = self.dim.or(other.dim);
        s
    }

    /// The first `k` elements of every infinite family plus all points.
    pub fn sample(&self, k: u32) -> Vec<RatVec> {
        let mut out: BTreeSet<RatVec> = self.points.iter().cloned().collect();
        for r in &self.rays {
            for i in 0..k {
                out.insert(r.base.add(&r.step.scale(&q(i as i64))));
            }
        }
        for g in &self.semigroups {
            let mut frontier = vec![g.base.clone()];
            out.insert(g.base.clone());
            for _ in 1..k.min(6) {
                frontier = frontier
                    .iter()
                    .flat_map(|p| g.gens.iter().map(move |x| p.add(x)))
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect();
                out.extend(frontier.iter().cloned());
            }
        }
        for t in &self.ptails {
            for i in 1..=k.min(20) {
                out.insert(t.point(i));
            }
        }
        out.into_iter().collect()
    }
}

// --------------------------------------------------------------- cones

fn dir_cone(n: usize, dirs: &[RatVec]) -> Result<Cone, SupportError> {
    Ok(Cone::from_generators(n, dirs)?)
}

/// Directions `ω ≥ 0` along which the support is bounded below.
pub fn tau(s: &SupportSpec) -> Result<Cone, SupportError> {
    let n = s.validate()?;
    Ok(Cone::orthant(n).intersect(&dir_cone(n, &s.directions())?.dual()))
}

/// Like [`tau`], but the accumulation directions of the tails must also be
/// nonnegative, which is what well-ordering under every positive order needs.
pub fn tau_tilde(s: &SupportSpec) -> Result<Cone, SupportError> {
    let n = s.validate()?;
    let mut d = s.directions();
    d.extend(s.ptails.iter().map(|t| t.dir.clone()));
    Ok(Cone::orthant(n).intersect(&dir_cone(n, &d)?.dual()))
}

/// `normal·ω > 0` when `strict`, otherwise `normal·ω ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Condition {
    pub normal: RatVec,
    pub strict: bool,
}

impl Condition {
    pub fn holds(&self, w: &RatVec) -> bool {
        let v = self.normal.dot(w);
        if self.strict {
            v.is_positive()
        } else {
            !v.is_negative()
        }
    }
}

/// Conjunction of conditions on `ω ≠ 0`; `empty` records that no `ω`
/// satisfies them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub conditions: Vec<Condition>,
    pub empty: bool,
}

impl Region {
    pub fn contains(&self, w: &RatVec) -> bool {
        !self.empty && !w.is_zero() && self.conditions.iter().all(|c| c.holds(w))
    }
}

/// `τ′₁` is a union: `ω` (nonnegative, nonzero) belongs to it as soon as one
/// condition in `any_of` holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionRegion {
    pub any_of: Vec<Condition>,
}

impl UnionRegion {
    pub fn contains(&self, w: &RatVec) -> bool {
        w.is_nonneg() && !w.is_zero() && self.any_of.iter().any(|c| c.holds(w))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauPrime {
    pub tau0: Region,
    pub tau1: UnionRegion,
}

fn dedupe_conditions(conds: Vec<Condition>) -> Vec<Condition> {
    let mut out: Vec<Condition> = Vec::new();
    for c in conds {
        let normal = c.normal.primitive();
        match out.iter_mut().find(|x| x.normal == normal) {
            Some(x) => x.strict |= c.strict,
            None => out.push(Condition {
                normal,
                strict: c.strict,
            }),
        }
    }
    out.sort();
    out
}

/// `τ′₀`: finitely many points under every level. `τ′₁`: unbounded below.
pub fn tau_prime(s: &SupportSpec) -> Result<TauPrime, SupportError> {
    let n = s.validate()?;
    let dirs = s.directions();
    let mut conds: Vec<Condition> = (0..n)
        .map(|i| Condition {
            normal: RatVec::unit(n, i),
            strict: false,
        })
        .collect();
    conds.extend(dirs.iter().map(|d| Condition {
        normal: d.clone(),
        strict: true,
    }));
    let conditions = dedupe_conditions(conds);
    let empty = !s.ptails.is_empty() || {
        let weak: Vec<RatVec> = conditions.iter().map(|c| c.normal.clone()).collect();
        let q = Cone::from_inequalities(n, &weak, &[])?;
        let r = q.relative_interior_point();
        r.is_zero() || !conditions.iter().all(|c| c.holds(&r))
    };
    let any_of = dedupe_conditions(
        dirs.iter()
            .map(|d| Condition {
                normal: d.neg(),
                strict: true,
            })
            .collect(),
    );
    Ok(TauPrime {
        tau0: Region { conditions, empty },
        tau1: UnionRegion { any_of },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauResult {
    pub tau: Cone,
    pub tau_dual: Cone,
    pub tau0_conditions: Vec<Condition>,
    pub tau0_empty: bool,
    pub tau1_conditions: Vec<Condition>,
    pub tau_tilde: Cone,
}

pub fn tau_result(s: &SupportSpec) -> Result<TauResult, SupportError> {
    let t = tau(s)?;
    let tp = tau_prime(s)?;
    Ok(TauResult {
        tau_dual: t.dual(),
        tau: t,
        tau0_conditions: tp.tau0.conditions,
        tau0_empty: tp.tau0.empty,
        tau1_conditions: tp.tau1.any_of,
        tau_tilde: tau_tilde(s)?,
    })
}

// ----------------------------------------------------------- counting

/// Number of support points in a set, which may be infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Count {
    Finite(usize),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    /// Points with `u·w < level`.
    pub below: Count,
    /// Points with `u·w = level`.
    pub on: Count,
}

#[derive(Default)]
struct Tally {
    below: BTreeSet<RatVec>,
    on: BTreeSet<RatVec>,
    below_inf: bool,
    on_inf: bool,
}

impl Tally {
    fn add(&mut self, p: RatVec, w: &RatVec, level: &Q) {
        match p.dot(w).cmp(level) {
            Ordering::Less => {
                self.below.insert(p);
            }
            Ordering::Equal => {
                self.on.insert(p);
            }
            Ordering::Greater => {}
        }
    }

    /// An infinite set of points all at level `at`.
    fn infinite_at(&mut self, at: &Q, level: &Q) {
        match at.cmp(level) {
            Ordering::Less => self.below_inf = true,
            Ordering::Equal => self.on_inf = true,
            Ordering::Greater => {}
        }
    }
}

/// Combinations `Σ k_i` of nonnegative integers with `Σ k_i c_i ≤ budget`,
/// all `c_i > 0`.
fn bounded_combinations(costs: &[Q], budget: &Q) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![0u64; costs.len()];
    fn go(i: usize, costs: &[Q], left: Q, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i == costs.len() {
            out.push(cur.clone());
            return;
        }
        let mut k = 0u64;
        let mut rem = left;
        while !rem.is_negative() {
            cur[i] = k;
            go(i + 1, costs, rem.clone(), cur, out);
            rem -= &costs[i];
            k += 1;
        }
        cur[i] = 0;
    }
    if !budget.is_negative() {
        go(0, costs, budget.clone(), &mut cur, &mut out);
    }
    out
}

fn combo_point(base: &RatVec, gens: &[RatVec], k: &[u64]) -> RatVec {
    gens.iter().zip(k).fold(base.clone(), |acc, (g, &c)| {
        acc.add(&g.scale(&Q::from_integer(BigInt::from(c))))
    })
}

/// Counts of support points strictly below and exactly on the hyperplane
/// `u·w = level`. No sign restriction on `w`.
pub fn halfspace_census(s: &SupportSpec, w: &RatVec, level: &Q) -> Result<Census, SupportError> {
    let n = s.validate()?;
    if w.dim() != n {
        return Err(SupportError::DimensionMismatch {
            expected: n,
            got: w.dim(),
        });
    }
    let mut t = Tally::default();
    for p in &s.points {
        t.add(p.clone(), w, level);
    }
    for r in &s.rays {
        let b = r.base.dot(w);
        let v = r.step.dot(w);
        match v.cmp(&Q::zero()) {
            Ordering::Equal => t.infinite_at(&b, level),
            Ordering::Less => {
                t.below_inf = true;
                let k = (level - &b) / &v;
                if k.is_integer() && !k.is_negative() {
                    t.add(r.base.add(&r.step.scale(&k)), w, level);
                }
            }
            Ordering::Greater => {
                let mut k = Q::zero();
                while &b + &k * &v <= *level {
                    t.add(r.base.add(&r.step.scale(&k)), w, level);
                    k += Q::one();
                }
            }
        }
    }
    for g in &s.semigroups {
        let b = g.base.dot(w);
        let vals: Vec<Q> = g.gens.iter().map(|x| x.dot(w)).collect();
        if vals.iter().any(Q::is_negative) {
            t.below_inf = true;
        }
        let has_flat = vals.iter().any(Q::is_zero);
        let pos: Vec<usize> = (0..vals.len()).filter(|&i| vals[i].is_positive()).collect();
        if vals.iter().any(Q::is_negative) {
            if !pos.is_empty() {
                // mixed signs: one solution spawns infinitely many
                t.on_inf |= level_reachable(&b, &vals, level);
            } else {
                let costs: Vec<Q> = vals.iter().map(|x| -x).filter(|x| x.is_positive()).collect();
                let neg: Vec<RatVec> = (0..vals.len())
                    .filter(|&i| vals[i].is_negative())
                    .map(|i| g.gens[i].clone())
                    .collect();
                for k in bounded_combinations(&costs, &(&b - level)) {
                    let p = combo_point(&g.base, &neg, &k);
                    if p.dot(w) == *level {
                        if has_flat {
                            t.on_inf = true;
                        } else {
                            t.on.insert(p);
                        }
                    }
                }
            }
            continue;
        }
        let costs: Vec<Q> = pos.iter().map(|&i| vals[i].clone()).collect();
        let gens: Vec<RatVec> = pos.iter().map(|&i| g.gens[i].clone()).collect();
        for k in bounded_combinations(&costs, &(level - &b)) {
            let p = combo_point(&g.base, &gens, &k);
            let lv = p.dot(w);
            if has_flat {
                t.infinite_at(&lv, level);
            } else {
                t.add(p, w, level);
            }
        }
    }
    for tail in &s.ptails {
        let b = tail.base.dot(w);
        let d = tail.dir.dot(w);
        let lim = &b + &d;
        match d.cmp(&Q::zero()) {
            Ordering::Equal => t.infinite_at(&b, level),
            Ordering::Greater => {
                if lim > *level {
                    let mut k = 1;
                    loop {
                        let p = tail.point(k);
                        if p.dot(w) > *level {
                            break;
                        }
                        t.add(p, w, level);
                        k += 1;
                    }
                } else {
                    t.below_inf = true;
                }
            }
            Ordering::Less => {
                if lim < *level {
                    t.below_inf = true;
                }
                let mut k = 1;
                loop {
                    let p = tail.point(k);
                    if p.dot(w) < *level {
                        break;
                    }
                    t.add(p, w, level);
                    k += 1;
                    if k > 64 {
                        break;
                    }
                }
            }
        }
    }
    let count = |inf: bool, set: &BTreeSet<RatVec>| {
        if inf {
            Count::Infinite
        } else {
            Count::Finite(set.len())
        }
    };
    Ok(Census {
        below: count(t.below_inf, &t.below),
        on: count(t.on_inf, &t.on),
    })
}

/// Whether a semigroup with some negative generator values has infinitely
/// many points exactly on `level`: true as soon as one point lies on it and a
/// flat or balancing combination exists, which for mixed signs always does.
fn level_reachable(b: &Q, vals: &[Q], level: &Q) -> bool {
    // integer combinations of mixed-sign values hit every multiple of their
    // gcd beyond a bound; test membership of level − b in that group
    let target = level - b;
    let den = vals
        .iter()
        .chain(std::iter::once(&target))
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = vals
        .iter()
        .map(|x| (x * Q::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let t = (target * Q::from_integer(den)).to_integer();
    g.is_zero() && t.is_zero() || (!g.is_zero() && (t % g).is_zero())
}

// ------------------------------------------------------------ thresholds

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TSigma {
    #[serde(with = "crate::num::serde_q")]
    pub t: Q,
    pub attained: bool,
    pub level_infinite: bool,
}

fn check_in_tau(s: &SupportSpec, normal: &RatVec) -> Result<usize, SupportError> {
    let n = s.validate()?;
    if normal.dim() != n {
        return Err(SupportError::DimensionMismatch {
            expected: n,
            got: normal.dim(),
        });
    }
    let inside = !normal.is_zero()
        && normal.is_nonneg()
        && s.directions().iter().all(|d| !d.dot(normal).is_negative());
    if !inside {
        return Err(SupportError::NotInTau(normal.clone()));
    }
    Ok(n)
}

/// Infimum of `u·r` over the support and whether it is attained; requires
/// `r ∈ τ`.
fn support_infimum(s: &SupportSpec, r: &RatVec) -> Option<(Q, bool)> {
    let mut best: Option<(Q, bool)> = None;
    let mut push = |v: Q, att: bool| {
        best = Some(match best.take() {
            None => (v, att),
            Some((b, a)) => match v.cmp(&b) {
                Ordering::Less => (v, att),
                Ordering::Equal => (b, a || att),
                Ordering::Greater => (b, a),
            },
        });
    };
    for p in &s.points {
        push(p.dot(r), true);
    }
    for f in &s.rays {
        push(f.base.dot(r), true);
    }
    for g in &s.semigroups {
        push(g.base.dot(r), true);
    }
    for t in &s.ptails {
        let d = t.dir.dot(r);
        if d.is_negative() {
            push(t.limit().dot(r), false);
        } else {
            push(t.point(1).dot(r), true);
        }
    }
    best
}

/// `t_σ = sup{t : finitely many support points have u·r < t}` for `r ∈ τ`.
///
/// When that set is unbounded (every family escapes to infinity along `r`)
/// the infimum level of the support is returned instead, so that the
/// half-space `u·r ≥ t` is the tightest one containing everything.
pub fn t_sigma(s: &SupportSpec, normal: &RatVec) -> Result<TSigma, SupportError> {
    check_in_tau(s, normal)?;
    let r = normal;
    // (bound, attained)
    let mut caps: Vec<(Q, bool)> = Vec::new();
    for f in &s.rays {
        if f.step.dot(r).is_zero() {
            caps.push((f.base.dot(r), true));
        }
    }
    for g in &s.semigroups {
        if g.gens.iter().any(|x| x.dot(r).is_zero()) {
            caps.push((g.base.dot(r), true));
        }
    }
    for t in &s.ptails {
        let d = t.dir.dot(r);
        if d.is_positive() {
            caps.push((t.limit().dot(r), false));
        } else if d.is_negative() {
            caps.push((t.limit().dot(r), true));
        } else {
            caps.push((t.base.dot(r), true));
        }
    }
    let (t, attained) = match caps.iter().map(|(v, _)| v).min().cloned() {
        Some(m) => {
            let att = caps.iter().filter(|(v, _)| *v == m).all(|(_, a)| *a);
            (m, att)
        }
        None => support_infimum(s, r).ok_or(SupportError::EmptySupport)?,
    };
    let level_infinite = halfspace_census(s, r, &t)?.on == Count::Infinite;
    Ok(TSigma {
        t,
        attained,
        level_infinite,
    })
}

// ---------------------------------------------------------- normalization

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Threshold {
    pub normal: RatVec,
    #[serde(with = "crate::num::serde_q")]
    pub t: Q,
    pub level_infinite: bool,
}

/// A line `base + ℝ≥0·dir` carrying infinitely many support points.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Line {
    pub base: RatVec,
    pub dir: RatVec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceKind {
    /// Unbounded 1-dimensional face, indexed by a ray of `τ^∨`.
    Edge,
    /// Supporting hyperplane `u·x = t_u` of one of the threshold normals.
    Hyperplane,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceWitness {
    pub kind: FaceKind,
    /// Edge direction or hyperplane normal.
    pub vector: RatVec,
    /// Every residual family lying on a face of this kind.
    pub lines: Vec<Line>,
    /// Deterministic choice among `lines`, if any.
    pub chosen: Option<Line>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationResult {
    #[serde(rename = "C")]
    pub c: Vec<RatVec>,
    pub tau_dual: Cone,
    pub thresholds: Vec<Threshold>,
    pub removed_points: Vec<RatVec>,
    pub orthant_adjust: SupportSpec,
    pub residual: SupportSpec,
    pub face_witnesses: Vec<FaceWitness>,
    pub dickson_certified: bool,
}

impl NormalizationResult {
    /// `x` lies in `⋂ {u·r ≥ t_r}`, which equals `C + τ^∨` on lattice points.
    pub fn in_region(&self, x: &RatVec) -> bool {
        self.thresholds.iter().all(|h| h.normal.dot(x) >= h.t)
    }

    pub fn in_c_plus_dual(&self, x: &RatVec) -> bool {
        self.c.iter().any(|c| self.tau_dual.contains(&x.sub(c)))
    }

    /// Every residual family starts in `C + τ^∨` and moves inside `τ^∨`.
    pub fn residual_contained(&self) -> bool {
        let s = self.residual.union(&self.orthant_adjust);
        s.points.iter().all(|p| self.in_c_plus_dual(p))
            && s.rays
                .iter()
                .all(|r| self.in_c_plus_dual(&r.base) && self.tau_dual.contains(&r.step))
            && s.semigroups.iter().all(|g| {
                self.in_c_plus_dual(&g.base) && g.gens.iter().all(|x| self.tau_dual.contains(x))
            })
    }

    pub fn edge_lines(&self) -> Vec<Line> {
        let mut out: Vec<Line> = self
            .face_witnesses
            .iter()
            .filter(|f| f.kind == FaceKind::Edge)
            .flat_map(|f| f.lines.iter().cloned())
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Integer `γ` with `r·γ = t`, `r` primitive integral and `t` integral.
fn integer_on_level(r: &RatVec, t: &Q) -> Option<RatVec> {
    let cols: Vec<Vec<BigInt>> = r
        .to_bigints()?
        .into_iter()
        .map(|x| vec![x])
        .collect();
    if !t.is_integer() {
        return None;
    }
    let c = linalg::solve_integer(&cols, &[t.to_integer()])?;
    Some(RatVec::from_bigints(&c))
}

struct Split {
    removed: Vec<RatVec>,
    residual: SupportSpec,
}

fn split_spec(s: &SupportSpec, th: &[Threshold], n: usize) -> Result<Split, SupportError> {
    let inside = |x: &RatVec| th.iter().all(|h| h.normal.dot(x) >= h.t);
    let mut removed = BTreeSet::new();
    let mut residual = SupportSpec {
        dim: Some(n),
        ..SupportSpec::default()
    };
    for p in &s.points {
        if inside(p) {
            residual.points.push(p.clone());
        } else {
            removed.insert(p.clone());
        }
    }
    for r in &s.rays {
        // first index from which every threshold holds
        let mut k0 = BigInt::zero();
        for h in th {
            let v = r.step.dot(&h.normal);
            let gap = &h.t - r.base.dot(&h.normal);
            if v.is_positive() {
                let need = ceil_q(&(gap / v));
                if need > k0 {
                    k0 = need;
                }
            } else if gap.is_positive() {
                return Err(SupportError::NotInClass(format!(
                    "ray family at {:?} stays below a facet threshold",
                    r.base
                )));
            }
        }
        let k0i = k0.to_u64().expect("small re-basing index");
        for k in 0..k0i {
            removed.insert(r.base.add(&r.step.scale(&q(k as i64))));
        }
        residual.rays.push(RayFamily {
            base: r.base.add(&r.step.scale(&Q::from_integer(k0))),
            step: r.step.clone(),
        });
    }
    for g in &s.semigroups {
        let m = g.gens.len();
        let vals: Vec<Vec<Q>> = th
            .iter()
            .map(|h| g.gens.iter().map(|x| x.dot(&h.normal)).collect())
            .collect();
        let mut bound = vec![0u64; m];
        for (h, v) in th.iter().zip(&vals) {
            let gap = &h.t - g.base.dot(&h.normal);
            if !gap.is_positive() {
                continue;
            }
            if v.iter().any(|x| x.is_zero()) {
                return Err(SupportError::NotInClass(format!(
                    "semigroup family at {:?} stays below a facet threshold",
                    g.base
                )));
            }
            for i in 0..m {
                let need = ceil_q(&(&gap / &v[i])).to_u64().unwrap_or(0);
                bound[i] = bound[i].max(need);
            }
        }
        let ok = |k: &[u64]| inside(&combo_point(&g.base, &g.gens, k));
        let mut mins = Vec::new();
        let mut cur = vec![0u64; m];
        enumerate_box(&bound, 0, &mut cur, &mut |k| {
            if ok(k) {
                let minimal = (0..m).all(|i| {
                    k[i] == 0 || {
                        let mut d = k.to_vec();
                        d[i] -= 1;
                        !ok(&d)
                    }
                });
                if minimal {
                    mins.push(k.to_vec());
                }
            } else {
                removed.insert(combo_point(&g.base, &g.gens, k));
            }
        });
        for k in mins {
            residual.semigroups.push(SemigroupFamily {
                base: combo_point(&g.base, &g.gens, &k),
                gens: g.gens.clone(),
            });
        }
    }
    Ok(Split {
        removed: removed.into_iter().collect(),
        residual,
    })
}

fn enumerate_box(bound: &[u64], i: usize, cur: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
    if i == bound.len() {
        f(cur);
        return;
    }
    for k in 0..=bound[i] {
        cur[i] = k;
        enumerate_box(bound, i + 1, cur, f);
    }
    cur[i] = 0;
}

/// Lines of a spec: ray families, and every generator direction of a
/// semigroup family through its base.
fn spec_lines(s: &SupportSpec) -> Vec<Line> {
    s.rays
        .iter()
        .map(|r| Line {
            base: r.base.clone(),
            dir: r.step.clone(),
        })
        .chain(s.semigroups.iter().flat_map(|g| {
            g.gens.iter().map(move |x| Line {
                base: g.base.clone(),
                dir: x.clone(),
            })
        }))
        .collect()
}

fn parallel_pos(a: &RatVec, b: &RatVec) -> bool {
    a.primitive() == b.primitive()
}

fn choose(lines: &[Line], weight: &RatVec) -> Option<Line> {
    lines
        .iter()
        .min_by(|a, b| {
            a.base
                .dot(weight)
                .cmp(&b.base.dot(weight))
                .then_with(|| grlex_cmp(&a.base, &b.base))
        })
        .cloned()
}

/// The orthant part `f(x)`: for a facet with no infinite family on its
/// threshold, a ray of orthant points on that level running along a
/// coordinate axis inside the facet, when one fits in the residual region.
fn orthant_adjust(th: &[Threshold], residual: &SupportSpec, n: usize) -> SupportSpec {
    let mut adj = SupportSpec {
        dim: Some(n),
        ..SupportSpec::default()
    };
    let inside = |x: &RatVec| th.iter().all(|h| h.normal.dot(x) >= h.t);
    for h in th {
        let covered = spec_lines(residual)
            .iter()
            .any(|l| l.dir.dot(&h.normal).is_zero() && l.base.dot(&h.normal) == h.t);
        if covered || h.t.is_negative() || !h.t.is_integer() {
            continue;
        }
        let Some(axis) = (0..n).find(|&i| h.normal.0[i].is_zero()) else {
            continue;
        };
        let start = (0..n).find_map(|j| {
            let c = &h.normal.0[j];
            if !c.is_positive() {
                return None;
            }
            let k = &h.t / c;
            k.is_integer().then(|| RatVec::unit(n, j).scale(&k))
        });
        let start = start.or_else(|| h.t.is_zero().then(|| RatVec::zeros(n)));
        if let Some(u0) = start.filter(|u| inside(u)) {
            adj.rays.push(RayFamily {
                base: u0,
                step: RatVec::unit(n, axis),
            });
        }
    }
    adj
}

/// Split a Laurent-type spec into a finite part, an orthant correction and a
/// residual contained in `C + τ^∨` for a finite lattice set `C`.
pub fn normalize(s: &SupportSpec) -> Result<NormalizationResult, SupportError> {
    normalize_with(s, Exec::default())
}

pub fn normalize_with(s: &SupportSpec, exec: Exec) -> Result<NormalizationResult, SupportError> {
    let n = s.validate()?;
    if !s.ptails.is_empty() {
        return Err(SupportError::NotInClass(
            "accumulating tail families leave every lattice".into(),
        ));
    }
    if !s.is_integral() {
        return Err(SupportError::NonIntegral);
    }
    let t = tau(s)?;
    if !t.is_full_dim() {
        return Err(SupportError::NotFullDimensional);
    }
    let sigma = t.dual();
    let normals = face_normals(&t, &sigma)?;
    let thresholds = exec
        .map(&normals, |u| {
            t_sigma(s, u).map(|ts| Threshold {
                normal: u.clone(),
                t: ts.t,
                level_infinite: ts.level_infinite,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let shifts: Vec<(RatVec, Cone)> = thresholds
        .iter()
        .map(|h| {
            let g = integer_on_level(&h.normal, &h.t).expect("primitive normal hits every integer level");
            Ok((g, Cone::halfspace(&h.normal)?))
        })
        .collect::<Result<_, GeomError>>()?;
    let dick = binom_ideal::dickson_decompose_with(&shifts, exec)?;
    let split = split_spec(s, &thresholds, n)?;
    let adjust = orthant_adjust(&thresholds, &split.residual, n);
    let witnesses = face_witnesses(&t, &sigma, &thresholds, &split.residual.union(&adjust))?;
    Ok(NormalizationResult {
        c: dick.c,
        tau_dual: sigma,
        thresholds,
        removed_points: split.removed,
        orthant_adjust: adjust,
        residual: split.residual,
        face_witnesses: witnesses,
        dickson_certified: dick.certified,
    })
}

/// One normal per nonzero proper face `F` of `τ^∨`: the sum of the rays of
/// `τ` orthogonal to `F`, which lies in the relative interior of the dual
/// face. For facets this is the facet normal itself.
fn face_normals(tau: &Cone, sigma: &Cone) -> Result<Vec<RatVec>, SupportError> {
    let n = sigma.ambient();
    let mut out: Vec<RatVec> = Vec::new();
    for d in (1..n).rev() {
        for f in crate::geom::faces(sigma, d)? {
            let gens = f.generators();
            let u = tau
                .rays()
                .iter()
                .filter(|r| gens.iter().all(|g| r.dot(g).is_zero()))
                .fold(RatVec::zeros(n), |acc, r| acc.add(r))
                .primitive();
            if !u.is_zero() && !out.contains(&u) {
                out.push(u);
            }
        }
    }
    Ok(out)
}

fn face_witnesses(
    tau: &Cone,
    sigma: &Cone,
    th: &[Threshold],
    s: &SupportSpec,
) -> Result<Vec<FaceWitness>, SupportError> {
    let n = sigma.ambient();
    let weight = tau.relative_interior_point();
    let lines = spec_lines(s);
    let mut out = Vec::new();
    for rho in sigma.rays() {
        let on: Vec<Line> = lines
            .iter()
            .filter(|l| parallel_pos(&l.dir, rho))
            .filter(|l| {
                let tight: Vec<RatVec> = th
                    .iter()
                    .filter(|h| h.normal.dot(rho).is_zero() && h.normal.dot(&l.base) == h.t)
                    .map(|h| h.normal.clone())
                    .collect();
                linalg::rank(&tight, n) == n - 1
            })
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        out.push(FaceWitness {
            kind: FaceKind::Edge,
            vector: rho.clone(),
            chosen: choose(&on, &weight),
            lines: on,
        });
    }
    for h in th {
        let on: Vec<Line> = lines
            .iter()
            .filter(|l| l.dir.dot(&h.normal).is_zero() && l.base.dot(&h.normal) == h.t)
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        out.push(FaceWitness {
            kind: FaceKind::Hyperplane,
            vector: h.normal.clone(),
            chosen: choose(&on, &weight),
            lines: on,
        });
    }
    Ok(out)
}

/// Common point of a set of lines `base + ℝ·dir`, if one exists.
pub fn common_apex(lines: &[Line]) -> Option<RatVec> {
    let first = lines.first()?;
    let n = first.base.dim();
    let m = lines.len();
    // unknowns: x (n), t_1..t_m; equations x − t_i d_i = b_i
    let cols = n + m;
    let mut rows = Vec::new();
    for (i, l) in lines.iter().enumerate() {
        for c in 0..n {
            let mut r = vec![Q::zero(); cols + 1];
            r[c] = Q::one();
            r[n + i] = -l.dir.0[c].clone();
            r[cols] = l.base.0[c].clone();
            rows.push(RatVec(r));
        }
    }
    let (red, pivots) = linalg::rref(&rows, cols + 1);
    if pivots.contains(&cols) {
        return None;
    }
    // any solution: free variables zero
    let mut x = vec![Q::zero(); cols];
    for (row, &pc) in red.iter().zip(&pivots) {
        x[pc] = row.0[cols].clone();
    }
    Some(RatVec(x[..n].to_vec()))
}

/// For each non-orthant ray `ρ` of `τ^∨`, the cone on the other rays plus
/// the orthant is strictly smaller, and some residual direction escapes it.
pub fn minimality_holds(res: &NormalizationResult) -> bool {
    let sigma = &res.tau_dual;
    let n = sigma.ambient();
    let s = res.residual.union(&res.orthant_adjust);
    let dirs = s.directions();
    sigma.rays().iter().filter(|r| !r.is_nonneg()).all(|rho| {
        let mut gens: Vec<RatVec> = sigma.rays().iter().filter(|r| *r != rho).cloned().collect();
        gens.extend((0..n).map(|i| RatVec::unit(n, i)));
        let smaller = Cone::from_generators(n, &gens).expect("dimensions agree");
        smaller != *sigma && dirs.iter().any(|d| !smaller.contains(d))
    })
}

// --------------------------------------------------------- diagnostics

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelHull {
    pub points: usize,
    /// Extremal rays of the tail hull, clockwise-first then counterclockwise.
    pub lower: RatVec,
    pub upper: RatVec,
    #[serde(with = "crate::num::serde_opt_q")]
    pub lower_slope: Option<Q>,
    #[serde(with = "crate::num::serde_opt_q")]
    pub upper_slope: Option<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    NonStabilizing,
    StabilizedAt { level: usize },
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnosticReport {
    pub apex: RatVec,
    pub levels: Vec<LevelHull>,
    #[serde(flatten)]
    pub verdict: Verdict,
}

fn cross(a: &RatVec, b: &RatVec) -> Q {
    &a.0[0] * &b.0[1] - &a.0[1] * &b.0[0]
}

fn slope(v: &RatVec) -> Option<Q> {
    v.0[0].is_positive().then(|| &v.0[1] / &v.0[0])
}

/// Extremal rays of the planar cone spanned by `vs` (assumed pointed).
fn planar_extremes(vs: &[RatVec]) -> Option<(RatVec, RatVec)> {
    let nz: Vec<&RatVec> = vs.iter().filter(|v| !v.is_zero()).collect();
    let first = *nz.first()?;
    let mut lo = first.clone();
    let mut hi = first.clone();
    for v in &nz[1..] {
        if cross(&lo, v).is_negative() {
            lo = (*v).clone();
        }
        if cross(&hi, v).is_positive() {
            hi = (*v).clone();
        }
    }
    Some((lo.primitive(), hi.primitive()))
}

const NON_STABILIZING_LEVELS: usize = 5;

/// Tracks the hull of each truncation's new points seen from a fixed apex.
/// A polyhedral support eventually repeats the same extremal rays; a support
/// with a curved boundary keeps turning them.
pub fn non_polyhedral_diagnostic(truncations: &[Vec<RatVec>]) -> Result<DiagnosticReport, SupportError> {
    if truncations.len() < 2 {
        return Err(SupportError::TooFewTruncations(truncations.len()));
    }
    if truncations.iter().flatten().any(|p| p.dim() != 2) {
        return Err(SupportError::NotPlanar);
    }
    let apex = truncations[0].first().cloned().ok_or(SupportError::EmptySupport)?;
    let mut seen: BTreeSet<RatVec> = BTreeSet::new();
    let mut levels = Vec::new();
    for tr in truncations {
        let fresh: Vec<RatVec> = tr
            .iter()
            .filter(|p| !seen.contains(*p))
            .map(|p| p.sub(&apex))
            .collect();
        seen.extend(tr.iter().cloned());
        let (lo, hi) = planar_extremes(&fresh).ok_or(SupportError::EmptySupport)?;
        levels.push(LevelHull {
            points: tr.len(),
            lower_slope: slope(&lo),
            upper_slope: slope(&hi),
            lower: lo,
            upper: hi,
        });
    }
    let turns: Vec<Q> = levels
        .windows(2)
        .map(|w| cross(&w[0].lower, &w[1].lower))
        .collect();
    let monotone = turns.iter().all(Q::is_positive) || turns.iter().all(Q::is_negative);
    let verdict = if monotone && levels.len() >= NON_STABILIZING_LEVELS {
        Verdict::NonStabilizing
    } else if let Some(i) = levels
        .windows(2)
        .position(|w| w[0].lower == w[1].lower && w[0].upper == w[1].upper)
    {
        Verdict::StabilizedAt { level: i + 2 }
    } else {
        Verdict::Undetermined
    };
    Ok(DiagnosticReport {
        apex,
        levels,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::qf;

    fn v(xs: &[i64]) -> RatVec {
        RatVec::from_ints(xs)
    }

    fn ray(b: &[i64], s: &[i64]) -> RayFamily {
        RayFamily {
            base: v(b),
            step: v(s),
        }
    }

    fn rays(fams: Vec<RayFamily>) -> SupportSpec {
        SupportSpec {
            rays: fams,
            ..SupportSpec::default()
        }
    }

    fn cone(gens: &[&[i64]]) -> Cone {
        let g: Vec<RatVec> = gens.iter().map(|x| v(x)).collect();
        Cone::from_generators(g[0].dim(), &g).unwrap()
    }

    #[test]
    fn validation() {
        let mut s = rays(vec![ray(&[0, 0], &[0, 0])]);
        assert_eq!(s.validate(), Err(SupportError::ZeroDirection));
        s.rays[0].step = v(&[1, 0]);
        assert_eq!(s.validate(), Ok(2));
        s.ptails.push(PTailFamily {
            base: v(&[0, 0]),
            dir: v(&[1, 0]),
            p: 4,
        });
        assert_eq!(s.validate(), Err(SupportError::NotPrime(4)));
        let off = SupportSpec {
            points: vec![RatVec(vec![qf(1, 2), q(0)])],
            ..SupportSpec::default()
        };
        assert!(matches!(off.validate(), Err(SupportError::OffLattice(..))));
        assert_eq!(SupportSpec::default().ambient(), Err(SupportError::UnknownAmbient));
    }

    #[test]
    fn tau_examples() {
        let s = rays(vec![ray(&[0, 0], &[1, -1])]);
        let t = tau(&s).unwrap();
        assert_eq!(t, cone(&[&[1, 0], &[1, 1]]));
        assert_eq!(t.dual(), cone(&[&[0, 1], &[1, -1]]));
        let pts = SupportSpec {
            points: vec![v(&[-3, 2])],
            ..SupportSpec::default()
        };
        assert_eq!(tau(&pts).unwrap(), Cone::orthant(2));
        assert_eq!(tau_tilde(&pts).unwrap(), Cone::orthant(2));
    }

    #[test]
    fn tau_prime_bad_example() {
        let s = rays(vec![ray(&[0, 0], &[1, 0])]);
        let tp = tau_prime(&s).unwrap();
        assert!(!tp.tau0.empty);
        assert_eq!(
            tp.tau0.conditions,
            vec![
                Condition { normal: v(&[0, 1]), strict: false },
                Condition { normal: v(&[1, 0]), strict: true },
            ]
        );
        assert!(!tp.tau0.contains(&v(&[0, 1])));
        assert!(tp.tau0.contains(&v(&[1, 0])));
        let replaced = SupportSpec {
            points: vec![v(&[0, 0])],
            ..SupportSpec::default()
        };
        let tp2 = tau_prime(&replaced).unwrap();
        assert!(tp2.tau0.conditions.iter().all(|c| !c.strict));
        assert!(!tp2.tau0.contains(&v(&[0, 0])));
        assert!(tp2.tau1.any_of.is_empty());
    }

    #[test]
    fn tau1_is_disjunctive() {
        let s = rays(vec![ray(&[0, 0], &[1, -1]), ray(&[0, 0], &[-1, 1])]);
        let tp = tau_prime(&s).unwrap();
        assert!(tp.tau0.empty);
        assert!(tp.tau1.contains(&v(&[1, 0])));
        assert!(tp.tau1.contains(&v(&[0, 1])));
        assert!(!tp.tau1.contains(&v(&[1, 1])));
    }

    #[test]
    fn t_sigma_examples() {
        let s = rays(vec![ray(&[0, 0], &[1, -1])]);
        let r = t_sigma(&s, &v(&[1, 1])).unwrap();
        assert_eq!(r, TSigma { t: q(0), attained: true, level_infinite: true });
        let pts = SupportSpec {
            points: vec![v(&[2, 3])],
            ..SupportSpec::default()
        };
        let r2 = t_sigma(&pts, &v(&[1, 0])).unwrap();
        assert_eq!(r2, TSigma { t: q(2), attained: true, level_infinite: false });
        assert!(matches!(t_sigma(&s, &v(&[0, 1])), Err(SupportError::NotInTau(_))));
    }

    #[test]
    fn census_counts() {
        let s = rays(vec![ray(&[0, 0], &[1, 0])]);
        let c = halfspace_census(&s, &v(&[1, 0]), &q(3)).unwrap();
        assert_eq!(c, Census { below: Count::Finite(3), on: Count::Finite(1) });
        let c2 = halfspace_census(&s, &v(&[-1, 0]), &q(0)).unwrap();
        assert_eq!(c2.below, Count::Infinite);
        let c3 = halfspace_census(&s, &v(&[0, 1]), &q(0)).unwrap();
        assert_eq!(c3, Census { below: Count::Finite(0), on: Count::Infinite });
        let sg = SupportSpec {
            semigroups: vec![SemigroupFamily { base: v(&[0, 0]), gens: vec![v(&[1, 0]), v(&[0, 1])] }],
            ..SupportSpec::default()
        };
        let c4 = halfspace_census(&sg, &v(&[1, 1]), &q(2)).unwrap();
        assert_eq!(c4, Census { below: Count::Finite(3), on: Count::Finite(3) });
    }

    #[test]
    fn normalize_semigroup_translate() {
        let s = SupportSpec {
            semigroups: vec![SemigroupFamily { base: v(&[3, 4]), gens: vec![v(&[1, 0]), v(&[0, 1])] }],
            ..SupportSpec::default()
        };
        let r = normalize(&s).unwrap();
        assert_eq!(r.c, vec![v(&[3, 4])]);
        assert!(r.removed_points.is_empty());
        assert!(r.residual_contained());
    }

    #[test]
    fn normalize_rebased_ray() {
        for nn in [-2i64, 1, 3] {
            let s = rays(vec![ray(&[nn, -nn], &[1, -1])]);
            let r = normalize(&s).unwrap();
            assert_eq!(r.c, vec![v(&[nn, -nn])]);
            assert!(r.residual_contained());
            assert!(r.dickson_certified);
        }
        // the full ray minus its first N terms
        let s = rays(vec![ray(&[0, 0], &[1, -1])]);
        let r = normalize(&s).unwrap();
        assert_eq!(r.c, vec![v(&[0, 0])]);
    }

    #[test]
    fn normalize_removes_stray_points() {
        let s = SupportSpec {
            points: vec![v(&[-5, 7]), v(&[4, 4])],
            rays: vec![ray(&[0, 0], &[1, 0]), ray(&[0, 0], &[0, 1])],
            ..SupportSpec::default()
        };
        let r = normalize(&s).unwrap();
        assert_eq!(r.c, vec![v(&[0, 0])]);
        assert_eq!(r.removed_points, vec![v(&[-5, 7])]);
        assert!(r.residual_contained());
    }

    #[test]
    fn apex_of_lines() {
        let l = |b: &[i64], d: &[i64]| Line { base: v(b), dir: v(d) };
        assert_eq!(
            common_apex(&[l(&[1, 0], &[1, 0]), l(&[0, 2], &[0, 1])]),
            Some(v(&[0, 0]))
        );
        assert_eq!(common_apex(&[l(&[0, 0], &[1, 0]), l(&[0, 1], &[1, 0])]), None);
    }

    #[test]
    fn diagnostic_on_a_ray() {
        let tr: Vec<Vec<RatVec>> = [4, 8, 16]
            .iter()
            .map(|&n| (0..n).map(|k| v(&[k, -k])).collect())
            .collect();
        let rep = non_polyhedral_diagnostic(&tr).unwrap();
        assert_eq!(rep.verdict, Verdict::StabilizedAt { level: 2 });
        assert!(non_polyhedral_diagnostic(&tr[..1]).is_err());
    }
}
