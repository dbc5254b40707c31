//! Characteristic-`p` arithmetic: finite fields, Laurent polynomials with
//! rational exponents, and truncated Artin–Schreier roots.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::rank;
use crate::num::{RatVec, Q};
use crate::orders::{self, WeightOrder};
use crate::support::{is_prime, SemigroupFamily, SupportSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharpError {
    #[error("no irreducible polynomial tabulated for p = {p}, m = {m}")]
    UnsupportedField { p: u32, m: u32 },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("exponent {0} is not negative for the order")]
    NotNegative(RatVec),
    #[error("exponent {0} is not positive for the order")]
    NotPositive(RatVec),
    #[error("constant term has no Artin-Schreier preimage in the coefficient field")]
    NoArtinSchreierPreimage,
    #[error("coefficient {got:?} does not fit F_{p}^{m}")]
    BadCoefficient { got: Vec<u32>, p: u32, m: u32 },
    #[error("exponent dimension mismatch")]
    DimensionMismatch,
    #[error("order error: {0}")]
    Order(String),
    #[error("malformed polynomial: {0}")]
    Json(String),
}

// ------------------------------------------------------------ finite fields

/// Monic irreducible polynomials, coefficients low to high.
fn modulus(p: u32, m: u32) -> Option<&'static [u32]> {
    Some(match (p, m) {
        (2, 1) => &[1, 1],
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (3, 1) => &[1, 1],
        (3, 2) => &[2, 2, 1],
        (3, 3) => &[1, 2, 0, 1],
        (3, 4) => &[2, 0, 0, 2, 1],
        (5, 1) => &[3, 1],
        (5, 2) => &[2, 4, 1],
        (5, 3) => &[3, 3, 0, 1],
        (5, 4) => &[2, 4, 4, 0, 1],
        (7, 1) => &[4, 1],
        (7, 2) => &[3, 6, 1],
        (7, 3) => &[4, 0, 6, 1],
        (7, 4) => &[3, 4, 5, 0, 1],
        _ => return None,
    })
}

/// `F_{p^m}` for one of the tabulated `(p, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Field {
    pub p: u32,
    pub m: u32,
}

impl Field {
    pub fn new(p: u32, m: u32) -> Result<Self, CharpError> {
        if !is_prime(p) {
            return Err(CharpError::NotPrime(p));
        }
        if modulus(p, m).is_none() {
            return Err(CharpError::UnsupportedField { p, m });
        }
        Ok(Field { p, m })
    }

    pub fn prime(p: u32) -> Result<Self, CharpError> {
        Self::new(p, 1)
    }

    pub fn size(&self) -> u64 {
        (self.p as u64).pow(self.m)
    }

    pub fn modulus(&self) -> &'static [u32] {
        modulus(self.p, self.m).expect("validated field")
    }

    pub fn from_int(&self, k: i64) -> FqElem {
        let mut c = vec![0; self.m as usize];
        c[0] = k.rem_euclid(self.p as i64) as u32;
        FqElem { field: *self, c }
    }

    pub fn zero(&self) -> FqElem {
        self.from_int(0)
    }

    pub fn one(&self) -> FqElem {
        self.from_int(1)
    }

    pub fn elem(&self, c: &[u32]) -> Result<FqElem, CharpError> {
        if c.len() > self.m as usize || c.iter().any(|&x| x >= self.p) {
            return Err(CharpError::BadCoefficient {
                got: c.to_vec(),
                p: self.p,
                m: self.m,
            });
        }
        let mut v = c.to_vec();
        v.resize(self.m as usize, 0);
        Ok(FqElem { field: *self, c: v })
    }

    /// All elements, in base-`p` counting order.
    pub fn elements(&self) -> Vec<FqElem> {
        (0..self.size())
            .map(|mut k| {
                let c = (0..self.m)
                    .map(|_| {
                        let d = (k % self.p as u64) as u32;
                        k /= self.p as u64;
                        d
                    })
                    .collect();
                FqElem { field: *self, c }
            })
            .collect()
    }

    pub fn random(&self, rng: &mut impl Rng) -> FqElem {
        let c = (0..self.m).map(|_| rng.gen_range(0..self.p)).collect();
        FqElem { field: *self, c }
    }
}

/// Element of `F_p[X]/(f)`, coefficients low to high.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqElem {
    field: Field,
    c: Vec<u32>,
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.m == 1 {
            write!(f, "{}", self.c[0])
        } else {
            write!(f, "{:?}", self.c)
        }
    }
}

impl FqElem {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    fn with(&self, c: Vec<u32>) -> Self {
        FqElem { field: self.field, c }
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.field, o.field);
        let p = self.field.p;
        self.with(self.c.iter().zip(&o.c).map(|(a, b)| (a + b) % p).collect())
    }

    pub fn neg(&self) -> Self {
        let p = self.field.p;
        self.with(self.c.iter().map(|a| (p - a) % p).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.field, o.field);
        let p = self.field.p as u64;
        let m = self.field.m as usize;
        let f = self.field.modulus();
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a as u64 * b as u64) % p;
            }
        }
        // X^m = −(f₀ + … + f_{m−1} X^{m−1})
        for k in (m..prod.len()).rev() {
            let lead = prod[k];
            if lead == 0 {
                continue;
            }
            for (i, &fi) in f[..m].iter().enumerate() {
                let idx = k - m + i;
                prod[idx] = (prod[idx] + p - lead * fi as u64 % p) % p;
            }
            prod[k] = 0;
        }
        self.with(prod[..m].iter().map(|&x| x as u32).collect())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.pow(self.field.size() - 2))
    }

    pub fn frobenius(&self) -> Self {
        self.pow(self.field.p as u64)
    }

    /// The unique `y` with `y^p = self`.
    pub fn pth_root(&self) -> Self {
        self.pow((self.field.p as u64).pow(self.field.m - 1))
    }

    /// Some `r` with `r^p − r = self`, by exhaustion.
    pub fn artin_schreier_preimage(&self) -> Option<Self> {
        self.field
            .elements()
            .into_iter()
            .find(|r| r.frobenius().sub(r) == *self)
    }
}

// --------------------------------------------------------- coefficients

/// Coefficient ring for [`LaurentPoly`].
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn add_coeff(&self, o: &Self) -> Self;
    fn neg_coeff(&self) -> Self;
    fn mul_coeff(&self, o: &Self) -> Self;
}

impl Coeff for Q {
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn is_zero_coeff(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_coeff(&self, o: &Self) -> Self {
        self + o
    }
    fn neg_coeff(&self) -> Self {
        -self
    }
    fn mul_coeff(&self, o: &Self) -> Self {
        self * o
    }
}

impl Coeff for FqElem {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_coeff(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn neg_coeff(&self) -> Self {
        self.neg()
    }
    fn mul_coeff(&self, o: &Self) -> Self {
        self.mul(o)
    }
}

// -------------------------------------------------------- Laurent polys

/// Finite sum `Σ c_q x^q` with `q ∈ ℚⁿ`.
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentPoly<C> {
    terms: BTreeMap<RatVec, C>,
}

pub type FqPoly = LaurentPoly<FqElem>;
pub type QPoly = LaurentPoly<Q>;

impl<C: Coeff> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exp: RatVec, c: C) -> Self {
        Self::from_terms([(exp, c)])
    }

    /// Collects terms, merging equal exponents and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (RatVec, C)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: RatVec, c: C) {
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = old.add_coeff(&c);
                if s.is_zero_coeff() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                if !c.is_zero_coeff() {
                    self.terms.insert(e, c);
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RatVec, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &RatVec) -> Option<&C> {
        self.terms.get(e)
    }

    pub fn exponents(&self) -> impl Iterator<Item = &RatVec> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.terms.keys().next().map(|e| e.dim())
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg_coeff()))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                out.add_term(ea.add(eb), ca.mul_coeff(cb));
            }
        }
        out
    }

    /// `self^e` for `e ≥ 1`; `one` is the unit of the coefficient ring.
    pub fn pow(&self, e: u32, one: &Self) -> Self {
        let mut base = self.clone();
        let mut acc = one.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &RatVec) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.add(shift), c.clone()))
                .collect(),
        }
    }

    /// Terms whose exponent satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&RatVec) -> bool) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }
}

impl FqPoly {
    /// `self^p`, computed termwise since Frobenius is additive.
    pub fn frobenius(&self) -> Self {
        let p = Q::from_integer(BigInt::from(self.field_p()));
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| (e.scale(&p), c.frobenius())),
        )
    }

    /// The unique `p`-th root inside `K((x^{ℚ}))`.
    pub fn pth_root(&self) -> Self {
        let inv_p = Q::new(BigInt::one(), BigInt::from(self.field_p()));
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| (e.scale(&inv_p), c.pth_root())),
        )
    }

    fn field_p(&self) -> u32 {
        self.terms.values().next().map_or(2, |c| c.field.p)
    }

    /// `self^p − self − a`.
    pub fn artin_schreier_residual(&self, a: &Self) -> Self {
        self.frobenius().sub(self).sub(a)
    }
}

// ---------------------------------------------------------------- roots

/// Split `a = a⁻ + a⁺` with `a⁻` the terms below 0.
pub fn as_split<C: Coeff>(a: &LaurentPoly<C>, o: &WeightOrder) -> (LaurentPoly<C>, LaurentPoly<C>) {
    let minus = a.filter(|e| o.sign(e) == Ordering::Less);
    let plus = a.filter(|e| o.sign(e) != Ordering::Less);
    (minus, plus)
}

/// Truncated root of `T^p − T = a` with its certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct AsRoot {
    pub field: Field,
    pub depth: u32,
    pub root: FqPoly,
    /// `root^p − root − a`, computed.
    pub residual: FqPoly,
    /// The tail the construction predicts for the residual.
    pub predicted_residual: FqPoly,
    /// Constant `r` with `r^p − r` equal to the constant term of `a`.
    pub constant_shift: Option<FqElem>,
    /// Number of roots: the others differ by elements of `F_p`.
    pub root_set_size: u32,
}

impl AsRoot {
    pub fn certified(&self) -> bool {
        self.residual == self.predicted_residual
    }
}

fn check_dims(a: &FqPoly, o: &WeightOrder) -> Result<(), CharpError> {
    if a.exponents().any(|e| e.dim() != o.ambient()) {
        return Err(CharpError::DimensionMismatch);
    }
    Ok(())
}

/// Root of `T^p − T = a⁻` with all exponents of `a⁻` negative:
/// `Σ_q Σ_{i=1}^{I} c_q^{1/p^i} x^{q/p^i}`.
pub fn as_negative_root(
    a_minus: &FqPoly,
    field: Field,
    o: &WeightOrder,
    depth: u32,
) -> Result<AsRoot, CharpError> {
    check_dims(a_minus, o)?;
    if let Some(e) = a_minus.exponents().find(|e| o.sign(e) != Ordering::Less) {
        return Err(CharpError::NotNegative(e.clone()));
    }
    let mut root = FqPoly::zero();
    let mut level = a_minus.clone();
    for _ in 0..depth {
        level = level.pth_root();
        root = root.add(&level);
    }
    let predicted = if depth == 0 { a_minus.neg() } else { level.neg() };
    Ok(AsRoot {
        field,
        depth,
        residual: root.artin_schreier_residual(a_minus),
        root,
        predicted_residual: predicted,
        constant_shift: None,
        root_set_size: field.p,
    })
}

/// Root of `T^p − T = a⁺` with exponents positive or zero:
/// `r − Σ_{k=0}^{K} (a⁺ − c₀)^{p^k}` where `r^p − r = c₀`.
pub fn as_positive_root(
    a_plus: &FqPoly,
    field: Field,
    o: &WeightOrder,
    depth: u32,
) -> Result<AsRoot, CharpError> {
    check_dims(a_plus, o)?;
    let n = o.ambient();
    let origin = RatVec::zeros(n);
    if let Some(e) = a_plus
        .exponents()
        .find(|e| **e != origin && o.sign(e) != Ordering::Greater)
    {
        return Err(CharpError::NotPositive(e.clone()));
    }
    let (shift, rest) = match a_plus.coeff(&origin) {
        Some(c0) => {
            let r = c0
                .artin_schreier_preimage()
                .ok_or(CharpError::NoArtinSchreierPreimage)?;
            (Some(r), a_plus.filter(|e| *e != origin))
        }
        None => (None, a_plus.clone()),
    };
    let mut sum = FqPoly::zero();
    let mut level = rest.clone();
    for _ in 0..=depth {
        sum = sum.add(&level);
        level = level.frobenius();
    }
    let mut root = sum.neg();
    if let Some(r) = &shift {
        root = root.add(&FqPoly::monomial(origin, r.clone()));
    }
    Ok(AsRoot {
        field,
        depth,
        residual: root.artin_schreier_residual(a_plus),
        root,
        predicted_residual: level.neg(),
        constant_shift: shift,
        root_set_size: field.p,
    })
}

/// Both halves at once: split, solve each, and add.
pub fn as_root(a: &FqPoly, field: Field, o: &WeightOrder, depth: u32) -> Result<AsRoot, CharpError> {
    let (minus, plus) = as_split(a, o);
    let neg = as_negative_root(&minus, field, o, depth)?;
    let pos = as_positive_root(&plus, field, o, depth)?;
    Ok(AsRoot {
        field,
        depth,
        root: neg.root.add(&pos.root),
        residual: neg.residual.add(&pos.residual),
        predicted_residual: neg.predicted_residual.add(&pos.predicted_residual),
        constant_shift: pos.constant_shift,
        root_set_size: field.p,
    })
}

// ---------------------------------------------------------- family class

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub axiom: u8,
    pub name: String,
    pub applicable: bool,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldFamilyReport {
    pub seed: u64,
    pub samples: usize,
    pub axioms: Vec<AxiomCheck>,
}

impl FieldFamilyReport {
    pub fn passed(&self, axiom: u8) -> bool {
        self.axioms.iter().any(|a| a.axiom == axiom && a.passed)
    }
}

/// Each infinite family and each point as a spec of its own.
fn atoms(s: &SupportSpec) -> Vec<SupportSpec> {
    let base = SupportSpec {
        dim: s.dim,
        lattice_scale: s.lattice_scale,
        ..SupportSpec::default()
    };
    let mut out = Vec::new();
    for p in &s.points {
        out.push(SupportSpec {
            points: vec![p.clone()],
            ..base.clone()
        });
    }
    for r in &s.rays {
        out.push(SupportSpec {
            rays: vec![r.clone()],
            ..base.clone()
        });
    }
    for g in &s.semigroups {
        out.push(SupportSpec {
            semigroups: vec![g.clone()],
            ..base.clone()
        });
    }
    for t in &s.ptails {
        out.push(SupportSpec {
            ptails: vec![t.clone()],
            ..base.clone()
        });
    }
    out
}

fn translate(s: &SupportSpec, t: &RatVec) -> SupportSpec {
    let mut out = s.clone();
    for p in &mut out.points {
        *p = p.add(t);
    }
    for r in &mut out.rays {
        r.base = r.base.add(t);
    }
    for g in &mut out.semigroups {
        g.base = g.base.add(t);
    }
    for x in &mut out.ptails {
        x.base = x.base.add(t);
    }
    out
}

/// A random subset of families, each possibly moved further along itself.
fn random_subspec(s: &SupportSpec, rng: &mut ChaCha8Rng) -> SupportSpec {
    let mut out = SupportSpec {
        dim: s.dim,
        lattice_scale: s.lattice_scale,
        ..SupportSpec::default()
    };
    out.points = s.points.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
    for r in &s.rays {
        if !rng.gen_bool(0.5) {
            continue;
        }
        let mut r = r.clone();
        r.base = r.base.add(&r.step.scale(&Q::from_integer(rng.gen_range(0..4).into())));
        out.rays.push(r);
    }
    for g in &s.semigroups {
        if !rng.gen_bool(0.5) {
            continue;
        }
        let mut g = g.clone();
        if let Some(x) = g.gens.choose(rng) {
            g.base = g.base.add(x);
        }
        out.semigroups.push(g);
    }
    out.ptails = s.ptails.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
    out
}

/// Generators of a sub-semigroup of the one generated by the support.
fn semigroup_generators(s: &SupportSpec, k: u32) -> Vec<RatVec> {
    let mut gens: BTreeSet<RatVec> = s.sample(k).into_iter().collect();
    gens.extend(s.directions());
    gens.extend(s.ptails.iter().map(|t| t.dir.clone()));
    gens.into_iter().filter(|g| !g.is_zero()).collect()
}

/// Randomised check of the closure properties a class of supports needs to
/// carry a field structure, relative to the order `o`.
pub fn field_family_check(
    s: &SupportSpec,
    o: &WeightOrder,
    samples: usize,
    seed: u64,
) -> Result<FieldFamilyReport, CharpError> {
    let n = s.ambient().map_err(|e| CharpError::Order(e.to_string()))?;
    if n != o.ambient() {
        return Err(CharpError::DimensionMismatch);
    }
    let wo = |x: &SupportSpec| {
        if x.is_empty() {
            return Ok(true);
        }
        orders::is_well_ordered(o, x).map_err(|e| CharpError::Order(e.to_string()))
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut axioms = Vec::new();
    let base_wo = wo(s)?;

    axioms.push(AxiomCheck {
        axiom: 1,
        name: "well-ordered".into(),
        applicable: true,
        passed: base_wo,
        detail: if base_wo {
            "every family is increasing for the order".into()
        } else {
            "some family direction is not positive".into()
        },
    });

    let pts = s.sample(6);
    let r = rank(&pts, n);
    axioms.push(AxiomCheck {
        axiom: 2,
        name: "lattice generation".into(),
        applicable: true,
        passed: r == n,
        detail: format!("family elements span rank {r} of {n}"),
    });

    let parts = atoms(s);
    let mut ok = true;
    for _ in 0..samples.max(1) {
        if parts.is_empty() {
            break;
        }
        let a = parts.choose(&mut rng).expect("nonempty");
        let b = parts.choose(&mut rng).expect("nonempty");
        let u = a.union(b);
        let sample: BTreeSet<RatVec> = u.sample(4).into_iter().collect();
        let covered = a.sample(4).iter().chain(b.sample(4).iter()).all(|x| sample.contains(x));
        ok &= covered && wo(&u)? == (wo(a)? && wo(b)?);
    }
    axioms.push(AxiomCheck {
        axiom: 3,
        name: "unions".into(),
        applicable: !parts.is_empty(),
        passed: ok,
        detail: "pairwise unions stay in the class with the expected ordering".into(),
    });

    let mut ok = true;
    for _ in 0..samples.max(1) {
        let sub = random_subspec(s, &mut rng);
        ok &= !base_wo || wo(&sub)?;
    }
    axioms.push(AxiomCheck {
        axiom: 4,
        name: "sub-supports".into(),
        applicable: true,
        passed: ok,
        detail: "random sub-supports of a well-ordered support stay well-ordered".into(),
    });

    let scale = Q::new(BigInt::one(), BigInt::from(s.lattice_scale));
    let mut ok = true;
    for _ in 0..samples.max(1) {
        let t: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
        let t = RatVec::from_ints(&t).scale(&scale);
        ok &= wo(&translate(s, &t))? == base_wo;
    }
    axioms.push(AxiomCheck {
        axiom: 5,
        name: "translations".into(),
        applicable: true,
        passed: ok,
        detail: "lattice translates keep the ordering verdict".into(),
    });

    let origin = RatVec::zeros(n);
    let nonneg = |v: &RatVec| o.sign(v) != Ordering::Less;
    let pos = |v: &RatVec| o.sign(v) == Ordering::Greater;
    let applicable = s.points.iter().all(nonneg)
        && s.rays.iter().all(|r| nonneg(&r.base) && pos(&r.step))
        && s
            .semigroups
            .iter()
            .all(|g| nonneg(&g.base) && g.gens.iter().all(pos))
        && s
            .ptails
            .iter()
            .all(|t| nonneg(&t.point(1)) && nonneg(&t.limit()) && pos(&t.dir));
    let (passed, detail) = if applicable {
        let gens = semigroup_generators(s, 4);
        let sg = SupportSpec {
            dim: Some(n),
            semigroups: vec![SemigroupFamily {
                base: origin,
                gens,
            }],
            lattice_scale: s.lattice_scale,
            ..SupportSpec::default()
        };
        let ok = wo(&sg)?;
        (ok, "generated semigroup is well-ordered".to_string())
    } else {
        (true, "support is not nonnegative; nothing to check".to_string())
    };
    axioms.push(AxiomCheck {
        axiom: 6,
        name: "generated semigroup".into(),
        applicable,
        passed,
        detail,
    });

    Ok(FieldFamilyReport {
        seed,
        samples,
        axioms,
    })
}

// ---------------------------------------------------------------- JSON

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffJson {
    Int(i64),
    Vec(Vec<u32>),
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: RatVec,
    c: CoeffJson,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    p: u32,
    #[serde(default = "one_u32")]
    m: u32,
    terms: Vec<TermJson>,
}

fn one_u32() -> u32 {
    1
}

pub fn fq_poly_to_json(field: Field, a: &FqPoly) -> serde_json::Value {
    let terms = a
        .terms()
        .map(|(e, c)| TermJson {
            exp: e.clone(),
            c: if field.m == 1 {
                CoeffJson::Int(c.c[0] as i64)
            } else {
                CoeffJson::Vec(c.c.clone())
            },
        })
        .collect();
    serde_json::to_value(PolyJson {
        p: field.p,
        m: field.m,
        terms,
    })
    .expect("plain data serialises")
}

pub fn fq_poly_from_json(v: &serde_json::Value) -> Result<(Field, FqPoly), CharpError> {
    let j: PolyJson = serde_json::from_value(v.clone()).map_err(|e| CharpError::Json(e.to_string()))?;
    let field = Field::new(j.p, j.m)?;
    let dim = j.terms.first().map(|t| t.exp.dim());
    let mut terms = Vec::new();
    for t in j.terms {
        if Some(t.exp.dim()) != dim {
            return Err(CharpError::DimensionMismatch);
        }
        let c = match t.c {
            CoeffJson::Int(k) => field.from_int(k),
            CoeffJson::Vec(v) => field.elem(&v)?,
        };
        terms.push((t.exp, c));
    }
    Ok((field, FqPoly::from_terms(terms)))
}
