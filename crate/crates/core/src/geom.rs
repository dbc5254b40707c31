//! Exact rational polyhedral cones.
//!
//! Every [`Cone`] carries both descriptions in canonical form: a lineality
//! basis plus extreme rays, and an equation basis plus facet normals. All
//! vectors are primitive integer vectors, lists are sorted, so two cones are
//! equal as sets exactly when they are equal as values.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{left_inverse, project_out, rank, span_basis};
use crate::num::{ceil_q, floor_q, RatVec, Q};
use crate::par::Exec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("face dimension {d} outside 0..={dim}")]
    FaceDimOutOfRange { d: usize, dim: usize },
    #[error("cone is not strongly convex")]
    NotStronglyConvex,
    #[error("intersection of the cones is not full dimensional")]
    NotFullDimensional,
    #[error("the zero vector is not allowed here")]
    ZeroVector,
    #[error("generator and facet descriptions describe different cones")]
    InconsistentRepresentation,
    #[error("cannot infer the ambient dimension from an empty description")]
    UnknownAmbient,
}

// ------------------------------------------------------------ bitsets

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

/// Double description: generators of `{x ∈ ℝⁿ : a·x ≥ 0 for all a}`.
/// Returns `(lineality spanning set, extreme rays)`.
fn double_description(n: usize, ineqs: &[RatVec]) -> (Vec<RatVec>, Vec<RatVec>) {
    let m = ineqs.len();
    let mut lin: Vec<RatVec> = (0..n).map(|i| RatVec::unit(n, i)).collect();
    let mut rays: Vec<RatVec> = Vec::new();
    let mut tight: Vec<Bits> = Vec::new();
    let mut processed = Bits::new(m);

    for (k, a) in ineqs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        if let Some(pos) = lin.iter().position(|l| !a.dot(l).is_zero()) {
            let mut l = lin.swap_remove(pos);
            let mut al = a.dot(&l);
            if al.is_negative() {
                l = l.neg();
                al = -al;
            }
            for l2 in lin.iter_mut() {
                let c = a.dot(l2) / &al;
                if !c.is_zero() {
                    *l2 = l2.sub(&l.scale(&c)).primitive();
                }
            }
            for (r, t) in rays.iter_mut().zip(tight.iter_mut()) {
                let c = a.dot(r) / &al;
                if !c.is_zero() {
                    *r = r.sub(&l.scale(&c)).primitive();
                }
                t.set(k);
            }
            rays.push(l.primitive());
            tight.push(processed.clone());
        } else {
            let vals: Vec<Q> = rays.iter().map(|r| a.dot(r)).collect();
            let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
            let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
            if neg.is_empty() {
                for (i, t) in tight.iter_mut().enumerate() {
                    if vals[i].is_zero() {
                        t.set(k);
                    }
                }
                processed.set(k);
                continue;
            }
            let mut new_rays = Vec::new();
            let mut new_tight = Vec::new();
            for &i in &pos {
                for &j in &neg {
                    let common = tight[i].and(&tight[j]);
                    let adjacent = (0..rays.len())
                        .all(|o| o == i || o == j || !common.subset_of(&tight[o]));
                    if !adjacent {
                        continue;
                    }
                    let r = rays[j].scale(&vals[i]).sub(&rays[i].scale(&vals[j]));
                    if r.is_zero() {
                        continue;
                    }
                    let mut t = common;
                    t.set(k);
                    new_rays.push(r.primitive());
                    new_tight.push(t);
                }
            }
            let mut kept_rays = Vec::new();
            let mut kept_tight = Vec::new();
            for i in 0..rays.len() {
                if vals[i].is_negative() {
                    continue;
                }
                let mut t = tight[i].clone();
                if vals[i].is_zero() {
                    t.set(k);
                }
                kept_rays.push(rays[i].clone());
                kept_tight.push(t);
            }
            kept_rays.extend(new_rays);
            kept_tight.extend(new_tight);
            rays = kept_rays;
            tight = kept_tight;
        }
        processed.set(k);
    }
    (lin, rays)
}

fn with_negatives(lin: &[RatVec]) -> Vec<RatVec> {
    lin.iter().flat_map(|l| [l.clone(), l.neg()]).collect()
}

/// Canonical (lineality basis, rays) pair.
fn canonical(n: usize, lin: &[RatVec], rays: &[RatVec]) -> (Vec<RatVec>, Vec<RatVec>) {
    let basis = span_basis(lin, n);
    let mut out: Vec<RatVec> = rays
        .iter()
        .map(|r| project_out(r, &basis).primitive())
        .filter(|r| !r.is_zero())
        .collect();
    out.sort();
    out.dedup();
    (basis, out)
}

/// Rational polyhedral cone with canonical V- and H-representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cone {
    n: usize,
    lineality: Vec<RatVec>,
    rays: Vec<RatVec>,
    equations: Vec<RatVec>,
    facets: Vec<RatVec>,
}

impl Cone {
    /// Builds the cone from the polar pair of `vecs`: `primal_is_hull` says
    /// whether `vecs` generate the cone or are its inequalities.
    fn from_vectors(n: usize, vecs: &[RatVec], primal_is_hull: bool) -> Cone {
        let (plin, prays) = double_description(n, vecs);
        let mut back = prays.clone();
        back.extend(with_negatives(&plin));
        let (qlin, qrays) = double_description(n, &back);
        let (alin, arays) = canonical(n, &plin, &prays);
        let (blin, brays) = canonical(n, &qlin, &qrays);
        if primal_is_hull {
            // {x : v·x ≥ 0} is the dual; its double dual is the hull
            Cone {
                n,
                lineality: blin,
                rays: brays,
                equations: alin,
                facets: arays,
            }
        } else {
            Cone {
                n,
                lineality: alin,
                rays: arays,
                equations: blin,
                facets: brays,
            }
        }
    }

    fn check_dims(n: usize, vs: &[RatVec]) -> Result<(), GeomError> {
        match vs.iter().find(|v| v.dim() != n) {
            Some(v) => Err(GeomError::DimensionMismatch {
                expected: n,
                got: v.dim(),
            }),
            None => Ok(()),
        }
    }

    /// Conic hull of `gens` in ℝⁿ (the zero cone if `gens` is empty).
    pub fn from_generators(n: usize, gens: &[RatVec]) -> Result<Cone, GeomError> {
        Self::check_dims(n, gens)?;
        Ok(Self::from_vectors(n, gens, true))
    }

    /// `{x : f·x ≥ 0 for f in ineqs, e·x = 0 for e in eqs}`.
    pub fn from_inequalities(
        n: usize,
        ineqs: &[RatVec],
        eqs: &[RatVec],
    ) -> Result<Cone, GeomError> {
        Self::check_dims(n, ineqs)?;
        Self::check_dims(n, eqs)?;
        let mut all = ineqs.to_vec();
        all.extend(with_negatives(eqs));
        Ok(Self::from_vectors(n, &all, false))
    }

    pub fn full(n: usize) -> Cone {
        Cone {
            n,
            lineality: (0..n).map(|i| RatVec::unit(n, i)).collect::<Vec<_>>().tap_sort(),
            rays: vec![],
            equations: vec![],
            facets: vec![],
        }
    }

    pub fn zero(n: usize) -> Cone {
        Cone::full(n).dual()
    }

    pub fn orthant(n: usize) -> Cone {
        let mut e: Vec<RatVec> = (0..n).map(|i| RatVec::unit(n, i)).collect();
        e.sort();
        Cone {
            n,
            lineality: vec![],
            rays: e.clone(),
            equations: vec![],
            facets: e,
        }
    }

    /// Closed half-space `{x : normal·x ≥ 0}`.
    pub fn halfspace(normal: &RatVec) -> Result<Cone, GeomError> {
        if normal.is_zero() {
            return Err(GeomError::ZeroVector);
        }
        Cone::from_inequalities(normal.dim(), std::slice::from_ref(normal), &[])
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n - self.equations.len()
    }

    pub fn lineality(&self) -> &[RatVec] {
        &self.lineality
    }

    pub fn rays(&self) -> &[RatVec] {
        &self.rays
    }

    pub fn facets(&self) -> &[RatVec] {
        &self.facets
    }

    pub fn equations(&self) -> &[RatVec] {
        &self.equations
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dim(&self) -> bool {
        self.equations.is_empty()
    }

    /// Generating set: extreme rays plus both signs of the lineality basis.
    pub fn generators(&self) -> Vec<RatVec> {
        let mut g = self.rays.clone();
        g.extend(with_negatives(&self.lineality));
        g
    }

    /// Inequality list describing the cone: facets plus both signs of equations.
    pub fn inequalities(&self) -> Vec<RatVec> {
        let mut h = self.facets.clone();
        h.extend(with_negatives(&self.equations));
        h
    }

    pub fn contains(&self, x: &RatVec) -> bool {
        self.equations.iter().all(|e| e.dot(x).is_zero())
            && self.facets.iter().all(|f| !f.dot(x).is_negative())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    /// A point of the relative interior (sum of the extreme rays).
    pub fn relative_interior_point(&self) -> RatVec {
        self.rays
            .iter()
            .fold(RatVec::zeros(self.n), |acc, r| acc.add(r))
    }

    pub fn in_relative_interior(&self, x: &RatVec) -> bool {
        self.equations.iter().all(|e| e.dot(x).is_zero())
            && self.facets.iter().all(|f| f.dot(x).is_positive())
    }

    pub fn dual(&self) -> Cone {
        Cone {
            n: self.n,
            lineality: self.equations.clone(),
            rays: self.facets.clone(),
            equations: self.lineality.clone(),
            facets: self.rays.clone(),
        }
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        let mut ineqs = self.inequalities();
        ineqs.extend(other.inequalities());
        Self::from_vectors(self.n, &ineqs, false)
    }

    /// Minkowski sum.
    pub fn sum(&self, other: &Cone) -> Cone {
        let mut g = self.generators();
        g.extend(other.generators());
        Self::from_vectors(self.n, &g, true)
    }

    pub fn intersect_halfspace(&self, normal: &RatVec) -> Cone {
        let mut ineqs = self.inequalities();
        ineqs.push(normal.clone());
        Self::from_vectors(self.n, &ineqs, false)
    }
}

trait TapSort {
    fn tap_sort(self) -> Self;
}

impl TapSort for Vec<RatVec> {
    fn tap_sort(mut self) -> Self {
        self.sort();
        self
    }
}

pub fn dual(c: &Cone) -> Cone {
    c.dual()
}

pub fn intersect(a: &Cone, b: &Cone) -> Cone {
    a.intersect(b)
}

/// All `d`-dimensional faces, sorted by their ray lists.
pub fn faces(c: &Cone, d: usize) -> Result<Vec<Cone>, GeomError> {
    if d > c.dim() {
        return Err(GeomError::FaceDimOutOfRange { d, dim: c.dim() });
    }
    let n = c.n;
    let start: Vec<usize> = (0..c.rays.len()).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut stack = vec![start.clone()];
    seen.insert(start);
    while let Some(face) = stack.pop() {
        for f in &c.facets {
            let sub: Vec<usize> = face
                .iter()
                .copied()
                .filter(|&i| f.dot(&c.rays[i]).is_zero())
                .collect();
            if sub.len() != face.len() && seen.insert(sub.clone()) {
                stack.push(sub);
            }
        }
    }
    let mut out = Vec::new();
    for face in seen {
        let mut gens: Vec<RatVec> = face.iter().map(|&i| c.rays[i].clone()).collect();
        gens.extend(with_negatives(&c.lineality));
        if rank(&gens, n) == d {
            out.push(Cone::from_vectors(n, &gens, true));
        }
    }
    out.sort_by(|a, b| a.rays.cmp(&b.rays));
    Ok(out)
}

fn box_points(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let mut pts = vec![vec![]];
    for (a, b) in lo.iter().zip(hi) {
        let mut next = Vec::new();
        for p in &pts {
            for x in *a..=*b {
                let mut q = p.clone();
                q.push(x);
                next.push(q);
            }
        }
        pts = next;
    }
    pts
}

fn choose(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// Lattice points of the half-open parallelepiped spanned by `s`.
fn parallelepiped_points(s: &[RatVec]) -> Vec<RatVec> {
    use num_traits::ToPrimitive;
    let n = s[0].dim();
    let mut lo = vec![0i64; n];
    let mut hi = vec![0i64; n];
    for v in s {
        for i in 0..n {
            let x = v.0[i].to_integer().to_i64().expect("generator entries fit in i64");
            if x < 0 {
                lo[i] += x;
            } else {
                hi[i] += x;
            }
        }
    }
    let minv = left_inverse(s);
    let one = Q::one();
    box_points(&lo, &hi)
        .into_iter()
        .map(|p| RatVec::from_ints(&p))
        .filter(|x| !x.is_zero())
        .filter(|x| {
            let lam: Vec<Q> = minv.iter().map(|row| row.dot(x)).collect();
            if lam.iter().any(|l| l.is_negative() || *l >= one) {
                return false;
            }
            let back = s
                .iter()
                .zip(&lam)
                .fold(RatVec::zeros(n), |acc, (v, l)| acc.add(&v.scale(l)));
            back == *x
        })
        .collect()
}

/// A finite generating set of the semigroup `c ∩ ℤⁿ`, for any rational cone.
pub fn lattice_generators(c: &Cone) -> Vec<RatVec> {
    lattice_generators_with(c, Exec::default())
}

pub fn lattice_generators_with(c: &Cone, exec: Exec) -> Vec<RatVec> {
    let d = c.dim();
    if d == 0 {
        return vec![];
    }
    let gens = c.generators();
    let subsets: Vec<Vec<usize>> = choose(gens.len(), d)
        .into_iter()
        .filter(|idx| {
            let sel: Vec<RatVec> = idx.iter().map(|&i| gens[i].clone()).collect();
            rank(&sel, c.n) == d
        })
        .collect();
    let chunks = exec.map(&subsets, |idx| {
        let sel: Vec<RatVec> = idx.iter().map(|&i| gens[i].clone()).collect();
        parallelepiped_points(&sel)
    });
    let mut all: BTreeSet<RatVec> = gens.into_iter().collect();
    for ch in chunks {
        all.extend(ch);
    }
    all.into_iter().collect()
}

/// Minimal generating set of `c ∩ ℤⁿ` for a strongly convex cone.
pub fn hilbert_basis(c: &Cone) -> Result<Vec<RatVec>, GeomError> {
    hilbert_basis_with(c, Exec::default())
}

pub fn hilbert_basis_with(c: &Cone, exec: Exec) -> Result<Vec<RatVec>, GeomError> {
    if !c.is_strongly_convex() {
        return Err(GeomError::NotStronglyConvex);
    }
    let cand = lattice_generators_with(c, exec);
    let keep = exec.map(&cand, |x| {
        !cand
            .iter()
            .any(|g| g != x && c.contains(&x.sub(g)))
    });
    Ok(cand
        .into_iter()
        .zip(keep)
        .filter_map(|(x, k)| k.then_some(x))
        .collect())
}

/// Integer point `γ` with `(g₁+c₁) ∩ (g₂+c₂) ⊂ γ + c₁∩c₂`.
pub fn shift_into_intersection(
    g1: &RatVec,
    c1: &Cone,
    g2: &RatVec,
    c2: &Cone,
) -> Result<RatVec, GeomError> {
    shift_into_intersection_many(&[(g1.clone(), c1.clone()), (g2.clone(), c2.clone())])
}

/// Representatives of the minimal faces of `⋂ (γ_j + σ_j)`: one point per
/// minimal face, obtained from the homogenized cone.
pub fn shifted_vertices(shifts: &[(RatVec, Cone)]) -> Vec<RatVec> {
    let n = shifts[0].0.dim();
    let mut ineqs = Vec::new();
    for (g, c) in shifts {
        for f in c.inequalities() {
            let mut h = f.0.clone();
            h.push(-f.dot(g));
            ineqs.push(RatVec(h));
        }
    }
    let mut t = RatVec::zeros(n + 1);
    t.0[n] = Q::one();
    ineqs.push(t);
    let (_, rays) = double_description(n + 1, &ineqs);
    let mut pts: Vec<RatVec> = rays
        .iter()
        .filter(|r| r.0[n].is_positive())
        .map(|r| RatVec(r.0[..n].iter().map(|x| x / &r.0[n]).collect()))
        .collect();
    pts.sort();
    pts.dedup();
    pts
}

pub fn shift_into_intersection_many(shifts: &[(RatVec, Cone)]) -> Result<RatVec, GeomError> {
    let n = shifts[0].0.dim();
    let sigma = shifts
        .iter()
        .skip(1)
        .fold(shifts[0].1.clone(), |acc, (_, c)| acc.intersect(c));
    if !sigma.is_full_dim() {
        return Err(GeomError::NotFullDimensional);
    }
    let verts = shifted_vertices(shifts);
    let v0 = verts.first().cloned().unwrap_or_else(|| RatVec::zeros(n));
    let gamma0 = RatVec::from_bigints(&v0.0.iter().map(floor_q).collect::<Vec<_>>());
    let w = sigma.relative_interior_point();
    let mut m = BigInt::zero();
    for h in sigma.facets() {
        let min_h = verts.iter().map(|v| h.dot(v)).min().unwrap_or_else(Q::zero);
        let excess = h.dot(&gamma0) - min_h;
        if excess.is_positive() {
            let need = ceil_q(&(excess / h.dot(&w)));
            if need > m {
                m = need;
            }
        }
    }
    let gamma = gamma0.sub(&w.scale(&Q::from_integer(m)));
    debug_assert!(verts.iter().all(|v| sigma.contains(&v.sub(&gamma))));
    Ok(gamma)
}

/// `target ⊂ ⋃ cones`, decided by exact recursive subdivision of `target`.
pub fn union_covers(target: &Cone, cones: &[Cone]) -> bool {
    let Some((k1, rest)) = cones.split_first() else {
        return false;
    };
    let tgens = target.generators();
    if tgens.iter().all(|g| k1.contains(g)) {
        return true;
    }
    for f in k1.inequalities() {
        // the part of target strictly outside this facet must be covered by the rest
        if !tgens.iter().any(|g| f.dot(g).is_negative()) {
            continue;
        }
        let piece = target.intersect_halfspace(&f.neg());
        if !union_covers(&piece, rest) {
            return false;
        }
    }
    true
}

pub fn union_covers_orthant(duals: &[Cone]) -> bool {
    match duals.first() {
        Some(c) => union_covers(&Cone::orthant(c.ambient()), duals),
        None => false,
    }
}

/// Whether `w` is an interior point of `⋃ duals`.
///
/// Near `w` each cone containing `w` coincides with `w` plus its tangent
/// cone, and cones missing `w` stay at positive distance, so the question is
/// whether those tangent cones cover ℝⁿ.
pub fn in_interior_of_union(w: &RatVec, duals: &[Cone]) -> Result<bool, GeomError> {
    if w.is_zero() {
        return Err(GeomError::ZeroVector);
    }
    let n = w.dim();
    let tangents: Vec<Cone> = duals
        .iter()
        .filter(|c| c.contains(w))
        .map(|c| {
            let tight: Vec<RatVec> = c
                .facets()
                .iter()
                .filter(|f| f.dot(w).is_zero())
                .cloned()
                .collect();
            Cone::from_inequalities(n, &tight, c.equations()).expect("dimensions agree")
        })
        .collect();
    Ok(union_covers(&Cone::full(n), &tangents))
}

// ------------------------------------------------------------ JSON

#[derive(Serialize, Deserialize)]
struct ConeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ambient: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    strongly_convex: Option<bool>,
    #[serde(default)]
    generators: Option<Vec<RatVec>>,
    #[serde(default)]
    facets: Option<Vec<RatVec>>,
}

impl Serialize for Cone {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ConeJson {
            ambient: Some(self.n),
            dim: Some(self.dim()),
            strongly_convex: Some(self.is_strongly_convex()),
            generators: Some(self.generators()),
            facets: Some(self.inequalities()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cone {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = ConeJson::deserialize(d)?;
        cone_from_json(j).map_err(serde::de::Error::custom)
    }
}

fn cone_from_json(j: ConeJson) -> Result<Cone, GeomError> {
    let n = j
        .ambient
        .or_else(|| j.generators.as_ref().and_then(|g| g.first()).map(RatVec::dim))
        .or_else(|| j.facets.as_ref().and_then(|g| g.first()).map(RatVec::dim))
        .ok_or(GeomError::UnknownAmbient)?;
    let from_v = j
        .generators
        .as_ref()
        .map(|g| Cone::from_generators(n, g))
        .transpose()?;
    let from_h = j
        .facets
        .as_ref()
        .map(|f| Cone::from_inequalities(n, f, &[]))
        .transpose()?;
    match (from_v, from_h) {
        (Some(a), Some(b)) if a != b => Err(GeomError::InconsistentRepresentation),
        (Some(a), _) => Ok(a),
        (None, Some(b)) => Ok(b),
        (None, None) => Ok(Cone::zero(n)),
    }
}

/// Integer vectors of a cone's data, for the fast integer checks of the
/// enumeration oracle.
pub(crate) fn int_rows(vs: &[RatVec]) -> Vec<Vec<i64>> {
    vs.iter()
        .map(|v| v.to_i64s().expect("canonical vectors are small integers"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> RatVec {
        RatVec::from_ints(xs)
    }

    fn cone(gens: &[&[i64]]) -> Cone {
        let g: Vec<RatVec> = gens.iter().map(|x| v(x)).collect();
        Cone::from_generators(g[0].dim(), &g).unwrap()
    }

    #[test]
    fn dual_examples() {
        assert_eq!(cone(&[&[1, 0], &[0, 1]]).dual(), Cone::orthant(2));
        assert_eq!(cone(&[&[2, -1], &[0, 1]]).dual(), cone(&[&[1, 0], &[1, 2]]));
        assert_eq!(cone(&[&[1, 0], &[1, 1]]).dual(), cone(&[&[0, 1], &[1, -1]]));
    }

    #[test]
    fn intersect_examples() {
        let a = cone(&[&[1, 0], &[1, 2]]);
        let b = cone(&[&[0, 1], &[2, 1]]);
        assert_eq!(a.intersect(&b), cone(&[&[1, 2], &[2, 1]]));
        assert_eq!(cone(&[&[1, 0]]).intersect(&cone(&[&[0, 1]])), Cone::zero(2));
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let c = cone(&[&[1, 0], &[1, 1], &[0, 1], &[2, 3]]);
        assert_eq!(c, Cone::orthant(2));
        let line = cone(&[&[1, 1], &[-1, -1], &[1, 0]]);
        assert_eq!(line.lineality().len(), 1);
        assert_eq!(line.rays().len(), 1);
    }

    #[test]
    fn face_examples() {
        let f = faces(&Cone::orthant(2), 1).unwrap();
        assert_eq!(f, vec![cone(&[&[0, 1]]), cone(&[&[1, 0]])]);
        let g = faces(&cone(&[&[0, 1], &[1, -1]]), 1).unwrap();
        assert_eq!(g.len(), 2);
        assert!(faces(&Cone::orthant(2), 3).is_err());
        assert_eq!(faces(&Cone::orthant(2), 0).unwrap(), vec![Cone::zero(2)]);
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_basis(&Cone::orthant(2)).unwrap(), vec![v(&[0, 1]), v(&[1, 0])]);
        assert_eq!(
            hilbert_basis(&cone(&[&[1, 0], &[1, 2]])).unwrap(),
            vec![v(&[1, 0]), v(&[1, 1]), v(&[1, 2])]
        );
        // unimodular: (1,0) = (0,1) + (1,-1) is reducible
        assert_eq!(
            hilbert_basis(&cone(&[&[0, 1], &[1, -1]])).unwrap(),
            vec![v(&[0, 1]), v(&[1, -1])]
        );
        assert_eq!(
            hilbert_basis(&Cone::halfspace(&v(&[1, 0])).unwrap()),
            Err(GeomError::NotStronglyConvex)
        );
    }

    #[test]
    fn shift_examples() {
        let o = Cone::orthant(2);
        assert_eq!(
            shift_into_intersection(&v(&[5, 5]), &o, &v(&[0, 0]), &o).unwrap(),
            v(&[5, 5])
        );
        assert_eq!(
            shift_into_intersection(&v(&[0, 0]), &o, &v(&[0, 0]), &o).unwrap(),
            v(&[0, 0])
        );
        let c1 = Cone::halfspace(&v(&[1, 2])).unwrap();
        let c2 = Cone::halfspace(&v(&[2, 1])).unwrap();
        let g = shift_into_intersection(&v(&[1, 0]), &c1, &v(&[0, 1]), &c2).unwrap();
        let sigma = c1.intersect(&c2);
        for p in shifted_vertices(&[(v(&[1, 0]), c1.clone()), (v(&[0, 1]), c2.clone())]) {
            assert!(sigma.contains(&p.sub(&g)));
        }
        let l1 = cone(&[&[1, 0]]);
        assert_eq!(
            shift_into_intersection(&v(&[0, 0]), &l1, &v(&[0, 0]), &o),
            Err(GeomError::NotFullDimensional)
        );
    }

    #[test]
    fn interior_of_union_examples() {
        let o = Cone::orthant(2);
        assert!(in_interior_of_union(&v(&[1, 1]), &[o.clone()]).unwrap());
        let up = cone(&[&[1, 0], &[1, 2]]);
        let down = cone(&[&[1, 0], &[1, -2]]);
        assert!(in_interior_of_union(&v(&[1, 0]), &[up.clone(), down]).unwrap());
        assert!(!in_interior_of_union(&v(&[1, 0]), &[up]).unwrap());
        assert!(in_interior_of_union(&v(&[0, 0]), &[o]).is_err());
    }

    #[test]
    fn orthant_cover_examples() {
        assert!(union_covers_orthant(&[Cone::orthant(2)]));
        let a = cone(&[&[1, 0], &[1, 1]]);
        let b = cone(&[&[1, 1], &[0, 1]]);
        assert!(union_covers_orthant(&[a.clone(), b]));
        assert!(!union_covers_orthant(&[a]));
    }

    #[test]
    fn json_roundtrip_and_crosscheck() {
        let c: Cone = serde_json::from_str(r#"{"generators":[[1,0],[1,2]]}"#).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        let back: Cone = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        let bad = serde_json::from_str::<Cone>(r#"{"generators":[[1,0]],"facets":[[0,1]]}"#);
        assert!(bad.is_err());
    }
}
