//! Gröbner bases of ideals generated by pure-difference binomials and
//! monomials, toric ideals, and the Dickson decomposition of an
//! intersection of shifted cones.
//!
//! Coefficients never leave {+1, −1}, so everything works on exponent vectors.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{self, Cone, GeomError};
use crate::linalg::solve_integer;
use crate::num::{ceil_q, RatVec, Q};
use crate::par::Exec;

pub type Exp = Vec<u32>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("input vectors must be lattice points")]
    NonLattice,
    #[error("the intersection cone is not full dimensional")]
    NotFullDimensional,
    #[error("the intersection cone contains a line, so minimal elements are undefined")]
    NotPointed,
    #[error("term order does not eliminate the dropped variables")]
    NotEliminating,
    #[error("exponent vectors have inconsistent lengths")]
    DimensionMismatch,
    #[error("no shifted cones given")]
    Empty,
    #[error("a binomial needs two distinct terms")]
    TrivialBinomial,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// `U^lhs − U^rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Binomial {
    pub lhs: Exp,
    pub rhs: Exp,
}

impl Binomial {
    pub fn new(lhs: Exp, rhs: Exp) -> Result<Self, IdealError> {
        if lhs.len() != rhs.len() {
            return Err(IdealError::DimensionMismatch);
        }
        if lhs == rhs {
            return Err(IdealError::TrivialBinomial);
        }
        Ok(Binomial { lhs, rhs })
    }

    /// `lhs − rhs` as a signed integer vector.
    pub fn difference(&self) -> Vec<i64> {
        self.lhs
            .iter()
            .zip(&self.rhs)
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect()
    }
}

/// Monomial ideal stored by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MonomialIdeal {
    pub gens: Vec<Exp>,
}

impl MonomialIdeal {
    pub fn new(gens: Vec<Exp>) -> Self {
        let mut m = MonomialIdeal { gens };
        m.minimalize();
        m
    }

    pub fn minimalize(&mut self) {
        let mut g = std::mem::take(&mut self.gens);
        g.sort_by(|a, b| deg(a).cmp(&deg(b)).then_with(|| a.cmp(b)));
        g.dedup();
        let mut out: Vec<Exp> = Vec::new();
        for x in g {
            if !out.iter().any(|m| divides(m, &x)) {
                out.push(x);
            }
        }
        out.sort();
        self.gens = out;
    }

    pub fn contains(&self, t: &[u32]) -> bool {
        self.gens.iter().any(|m| divides(m, t))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum TermOrder {
    /// Lexicographic with the last variable most significant.
    #[default]
    RightLex,
    Lex,
    DegRevLex,
    /// Degrevlex on the variables from `keep` on, ties broken by degrevlex on
    /// the first `keep`; eliminates the tail block.
    Block { keep: usize },
}

fn deg(a: &[u32]) -> u64 {
    a.iter().map(|&x| x as u64).sum()
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    deg(a).cmp(&deg(b)).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

impl TermOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            TermOrder::RightLex => a.iter().rev().cmp(b.iter().rev()),
            TermOrder::Lex => a.cmp(b),
            TermOrder::DegRevLex => degrevlex(a, b),
            TermOrder::Block { keep } => {
                let k = (*keep).min(a.len());
                degrevlex(&a[k..], &b[k..]).then_with(|| degrevlex(&a[..k], &b[..k]))
            }
        }
    }

    fn eliminates_tail(&self, keep: usize, m: usize) -> bool {
        match self {
            TermOrder::RightLex => true,
            TermOrder::Block { keep: k } => *k == keep,
            _ => keep == m,
        }
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// `t / d · m` for `d | t`.
fn rewrite(t: &[u32], d: &[u32], m: &[u32]) -> Exp {
    t.iter()
        .zip(d)
        .zip(m)
        .map(|((a, b), c)| a - b + c)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Elem {
    Bin { lead: Exp, tail: Exp },
    Mono(Exp),
}

impl Elem {
    fn lead(&self) -> &Exp {
        match self {
            Elem::Bin { lead, .. } => lead,
            Elem::Mono(m) => m,
        }
    }

    fn binomial(a: Exp, b: Exp, o: &TermOrder) -> Option<Elem> {
        match o.cmp(&a, &b) {
            Ordering::Equal => None,
            Ordering::Greater => Some(Elem::Bin { lead: a, tail: b }),
            Ordering::Less => Some(Elem::Bin { lead: b, tail: a }),
        }
    }
}

/// Normal form of a single term; `None` when it lands in the monomial part.
fn reduce_term(mut t: Exp, g: &[Elem]) -> Option<Exp> {
    'outer: loop {
        for e in g {
            if let Elem::Mono(m) = e {
                if divides(m, &t) {
                    return None;
                }
            }
        }
        for e in g {
            if let Elem::Bin { lead, tail } = e {
                if divides(lead, &t) {
                    t = rewrite(&t, lead, tail);
                    continue 'outer;
                }
            }
        }
        return Some(t);
    }
}

fn reduce(e: &Elem, g: &[Elem], o: &TermOrder) -> Option<Elem> {
    match e {
        Elem::Mono(m) => reduce_term(m.clone(), g).map(Elem::Mono),
        Elem::Bin { lead, tail } => {
            match (reduce_term(lead.clone(), g), reduce_term(tail.clone(), g)) {
                (None, None) => None,
                (Some(a), None) | (None, Some(a)) => Some(Elem::Mono(a)),
                (Some(a), Some(b)) => Elem::binomial(a, b, o),
            }
        }
    }
}

fn spoly(a: &Elem, b: &Elem, o: &TermOrder) -> Option<Elem> {
    match (a, b) {
        (Elem::Mono(_), Elem::Mono(_)) => None,
        (Elem::Bin { lead, tail }, Elem::Mono(m)) | (Elem::Mono(m), Elem::Bin { lead, tail }) => {
            let l = lcm(lead, m);
            Some(Elem::Mono(rewrite(&l, lead, tail)))
        }
        (Elem::Bin { lead: l1, tail: t1 }, Elem::Bin { lead: l2, tail: t2 }) => {
            let l = lcm(l1, l2);
            Elem::binomial(rewrite(&l, l1, t1), rewrite(&l, l2, t2), o)
        }
    }
}

/// Minimal, fully interreduced basis.
fn reduce_basis(mut g: Vec<Elem>, o: &TermOrder) -> Vec<Elem> {
    loop {
        g.sort_by(|a, b| {
            o.cmp(a.lead(), b.lead()).then_with(|| match (a, b) {
                (Elem::Mono(_), Elem::Bin { .. }) => Ordering::Less,
                (Elem::Bin { .. }, Elem::Mono(_)) => Ordering::Greater,
                _ => a.cmp(b),
            })
        });
        let mut minimal: Vec<Elem> = Vec::new();
        for e in g {
            if !minimal.iter().any(|m| divides(m.lead(), e.lead())) {
                minimal.push(e);
            }
        }
        let mut changed = false;
        let mut out = Vec::with_capacity(minimal.len());
        for i in 0..minimal.len() {
            let others: Vec<Elem> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, e)| e.clone())
                .collect();
            match reduce(&minimal[i], &others, o) {
                Some(r) => {
                    if r != minimal[i] {
                        changed = true;
                    }
                    out.push(r);
                }
                None => changed = true,
            }
        }
        g = out;
        if !changed {
            return g;
        }
    }
}

fn to_elems(bins: &[Binomial], monos: &MonomialIdeal, o: &TermOrder) -> Vec<Elem> {
    let mut g: Vec<Elem> = bins
        .iter()
        .filter_map(|b| Elem::binomial(b.lhs.clone(), b.rhs.clone(), o))
        .collect();
    g.extend(monos.gens.iter().cloned().map(Elem::Mono));
    g
}

fn from_elems(g: Vec<Elem>) -> (Vec<Binomial>, MonomialIdeal) {
    let mut bins = Vec::new();
    let mut monos = Vec::new();
    for e in g {
        match e {
            Elem::Bin { lead, tail } => bins.push(Binomial {
                lhs: lead,
                rhs: tail,
            }),
            Elem::Mono(m) => monos.push(m),
        }
    }
    bins.sort();
    (bins, MonomialIdeal::new(monos))
}

fn check_lengths(bins: &[Binomial], monos: &MonomialIdeal) -> Option<usize> {
    let mut lens = bins
        .iter()
        .flat_map(|b| [b.lhs.len(), b.rhs.len()])
        .chain(monos.gens.iter().map(Vec::len));
    let first = lens.next()?;
    lens.all(|l| l == first).then_some(first)
}

/// Reduced Gröbner basis of `⟨bins⟩ + ⟨monos⟩`, split into its binomial and
/// monomial parts.
pub fn buchberger_bm(
    bins: &[Binomial],
    monos: &MonomialIdeal,
    o: &TermOrder,
) -> (Vec<Binomial>, MonomialIdeal) {
    buchberger_bm_with(bins, monos, o, Exec::default())
}

const BATCH: usize = 16;

pub fn buchberger_bm_with(
    bins: &[Binomial],
    monos: &MonomialIdeal,
    o: &TermOrder,
    exec: Exec,
) -> (Vec<Binomial>, MonomialIdeal) {
    if check_lengths(bins, monos).is_none() {
        return (vec![], MonomialIdeal::default());
    }
    let mut g: Vec<Elem> = Vec::new();
    for e in to_elems(bins, monos, o) {
        if let Some(r) = reduce(&e, &g, o) {
            g.push(r);
        }
    }

    // pending pairs keyed by (lcm in term order, i, j) for a canonical queue
    #[derive(PartialEq, Eq)]
    struct Key(Exp, usize, usize, TermOrder);
    impl Ord for Key {
        fn cmp(&self, other: &Self) -> Ordering {
            self.3
                .cmp(&self.0, &other.0)
                .then_with(|| (self.1, self.2).cmp(&(other.1, other.2)))
        }
    }
    impl PartialOrd for Key {
        fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
            Some(self.cmp(other))
        }
    }

    let mut queue: BTreeSet<Key> = BTreeSet::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    let add_pairs = |g: &[Elem], k: usize, queue: &mut BTreeSet<Key>, pending: &mut BTreeSet<(usize, usize)>| {
        for i in 0..k {
            let (a, b) = (&g[i], &g[k]);
            if matches!((a, b), (Elem::Mono(_), Elem::Mono(_))) || coprime(a.lead(), b.lead()) {
                continue;
            }
            queue.insert(Key(lcm(a.lead(), b.lead()), i, k, *o));
            pending.insert((i, k));
        }
    };
    for k in 0..g.len() {
        add_pairs(&g, k, &mut queue, &mut pending);
    }

    while !queue.is_empty() {
        let mut batch: Vec<(usize, usize)> = Vec::new();
        while batch.len() < BATCH {
            let Some(Key(l, i, j, _)) = queue.pop_first() else {
                break;
            };
            pending.remove(&(i, j));
            let key = |a: usize, b: usize| (a.min(b), a.max(b));
            let chain = (0..g.len()).any(|k| {
                k != i
                    && k != j
                    && divides(g[k].lead(), &l)
                    && !pending.contains(&key(i, k))
                    && !pending.contains(&key(j, k))
            });
            if !chain {
                batch.push((i, j));
            }
        }
        let snapshot = &g;
        let reduced: Vec<Option<Elem>> = exec.map(&batch, |&(i, j)| {
            spoly(&snapshot[i], &snapshot[j], o).and_then(|s| reduce(&s, snapshot, o))
        });
        for r in reduced.into_iter().flatten() {
            if let Some(r) = reduce(&r, &g, o) {
                g.push(r);
                let k = g.len() - 1;
                add_pairs(&g, k, &mut queue, &mut pending);
            }
        }
    }
    from_elems(reduce_basis(g, o))
}

/// Every S-polynomial of the basis reduces to zero (no criteria applied).
pub fn is_groebner(bins: &[Binomial], monos: &MonomialIdeal, o: &TermOrder) -> bool {
    let g = to_elems(bins, monos, o);
    (0..g.len()).all(|i| {
        (i + 1..g.len()).all(|j| {
            spoly(&g[i], &g[j], o)
                .and_then(|s| reduce(&s, &g, o))
                .is_none()
        })
    })
}

/// Whether `f` lies in the ideal described by a Gröbner basis.
pub fn reduces_to_zero(
    f: &Binomial,
    bins: &[Binomial],
    monos: &MonomialIdeal,
    o: &TermOrder,
) -> bool {
    let g = to_elems(bins, monos, o);
    Elem::binomial(f.lhs.clone(), f.rhs.clone(), o)
        .and_then(|e| reduce(&e, &g, o))
        .is_none()
}

/// Contraction of a Gröbner basis to the first `keep` variables.
pub fn eliminate_tail(
    gb: &(Vec<Binomial>, MonomialIdeal),
    keep: usize,
    o: &TermOrder,
) -> Result<(Vec<Binomial>, MonomialIdeal), IdealError> {
    let m = check_lengths(&gb.0, &gb.1).unwrap_or(keep);
    if keep > m {
        return Err(IdealError::DimensionMismatch);
    }
    if !o.eliminates_tail(keep, m) {
        return Err(IdealError::NotEliminating);
    }
    let free = |e: &Exp| e[keep..].iter().all(|&x| x == 0);
    let bins = gb
        .0
        .iter()
        .filter(|b| free(&b.lhs) && free(&b.rhs))
        .map(|b| Binomial {
            lhs: b.lhs[..keep].to_vec(),
            rhs: b.rhs[..keep].to_vec(),
        })
        .collect();
    let monos = gb
        .1
        .gens
        .iter()
        .filter(|m| free(m))
        .map(|m| m[..keep].to_vec())
        .collect();
    Ok((bins, MonomialIdeal::new(monos)))
}

fn lattice_ints(basis: &[RatVec]) -> Result<Vec<Vec<i64>>, IdealError> {
    basis
        .iter()
        .map(|v| v.to_i64s().ok_or(IdealError::NonLattice))
        .collect()
}

/// Generators of the ideal of all relations `U^a − U^b` with
/// `Σ a_i u_i = Σ b_i u_i`, by elimination from a Laurent encoding.
pub fn toric_ideal(basis: &[RatVec]) -> Result<Vec<Binomial>, IdealError> {
    toric_ideal_with(basis, Exec::default())
}

pub fn toric_ideal_with(basis: &[RatVec], exec: Exec) -> Result<Vec<Binomial>, IdealError> {
    let s = basis.len();
    if s == 0 {
        return Ok(vec![]);
    }
    let pts = lattice_ints(basis)?;
    let n = pts[0].len();
    if pts.iter().any(|p| p.len() != n) {
        return Err(IdealError::DimensionMismatch);
    }
    // variables: U_1..U_s, x_1..x_n, y
    let m = s + n + 1;
    let mut gens = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        let mut lhs = vec![0u32; m];
        let mut rhs = vec![0u32; m];
        lhs[i] = 1;
        for (k, &c) in p.iter().enumerate() {
            if c < 0 {
                lhs[s + k] = (-c) as u32;
            } else {
                rhs[s + k] = c as u32;
            }
        }
        gens.push(Binomial { lhs, rhs });
    }
    let mut lhs = vec![1u32; m];
    lhs[..s].iter_mut().for_each(|x| *x = 0);
    gens.push(Binomial {
        lhs,
        rhs: vec![0; m],
    });
    let o = TermOrder::RightLex;
    let gb = buchberger_bm_with(&gens, &MonomialIdeal::default(), &o, exec);
    Ok(eliminate_tail(&gb, s, &o)?.0)
}

/// `φ(a) = Σ a_i u_i`.
pub fn exponent_to_point(a: &[u32], basis: &[RatVec]) -> RatVec {
    let n = basis.first().map(RatVec::dim).unwrap_or(0);
    a.iter().zip(basis).fold(RatVec::zeros(n), |acc, (&k, u)| {
        acc.add(&u.scale(&Q::from_integer(BigInt::from(k))))
    })
}

// ------------------------------------------------------------ Dickson

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shift {
    pub gamma: RatVec,
    pub cone: Cone,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DicksonResult {
    #[serde(rename = "C")]
    pub c: Vec<RatVec>,
    pub sigma: Cone,
    pub certified: bool,
    /// Half-width of the box the enumeration oracle settled on.
    pub oracle_radius: i64,
    /// The oracle's own answer when it disagrees with the Gröbner path.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_disagreement: Option<Vec<RatVec>>,
}

/// Integer description of `⋂ (γ_j + σ_j)`: rows `h` with thresholds `t`,
/// meaning `h·x ≥ t`.
struct IntPolyhedron {
    rows: Vec<Vec<i64>>,
    thresholds: Vec<i64>,
}

impl IntPolyhedron {
    fn new(shifts: &[(RatVec, Cone)]) -> Self {
        let mut rows = Vec::new();
        let mut thresholds = Vec::new();
        for (g, c) in shifts {
            for h in c.inequalities() {
                let t = h.dot(g).to_integer().to_i64().expect("threshold fits in i64");
                rows.push(h.to_i64s().expect("canonical normals are small"));
                thresholds.push(t);
            }
        }
        IntPolyhedron { rows, thresholds }
    }

    fn contains(&self, x: &[i64]) -> bool {
        self.rows.iter().zip(&self.thresholds).all(|(h, t)| {
            h.iter().zip(x).map(|(a, b)| a * b).sum::<i64>() >= *t
        })
    }
}

fn validate_shifts(shifts: &[(RatVec, Cone)]) -> Result<(usize, Cone), IdealError> {
    let first = shifts.first().ok_or(IdealError::Empty)?;
    let n = first.0.dim();
    if shifts
        .iter()
        .any(|(g, c)| g.dim() != n || c.ambient() != n)
    {
        return Err(IdealError::DimensionMismatch);
    }
    if shifts.iter().any(|(g, _)| !g.is_integral()) {
        return Err(IdealError::NonLattice);
    }
    let sigma = shifts
        .iter()
        .skip(1)
        .fold(first.1.clone(), |acc, (_, c)| acc.intersect(c));
    if !sigma.is_full_dim() {
        return Err(IdealError::NotFullDimensional);
    }
    if !sigma.is_strongly_convex() {
        return Err(IdealError::NotPointed);
    }
    Ok((n, sigma))
}

/// Minimal elements of `pts` for the preorder `p ≥ q ⇔ p − q ∈ σ`.
fn minimal_mod(pts: &[RatVec], sigma: &Cone) -> Vec<RatVec> {
    let set: BTreeSet<RatVec> = pts.iter().cloned().collect();
    let mut out: Vec<RatVec> = set
        .iter()
        .filter(|p| !set.iter().any(|q| q != *p && sigma.contains(&p.sub(q))))
        .cloned()
        .collect();
    out.sort();
    out
}

fn box_oracle(poly: &IntPolyhedron, hb: &[Vec<i64>], n: usize, r: i64, exec: Exec) -> Vec<RatVec> {
    let slabs = exec.map_range(-r, r + 1, |x0| {
        let mut found = Vec::new();
        let mut cur = vec![x0; n];
        scan(&mut cur, 1, r, &mut |p: &[i64]| {
            if poly.contains(p)
                && hb.iter().all(|h| {
                    let q: Vec<i64> = p.iter().zip(h).map(|(a, b)| a - b).collect();
                    !poly.contains(&q)
                })
            {
                found.push(RatVec::from_ints(p));
            }
        });
        found
    });
    let mut out: Vec<RatVec> = slabs.into_iter().flatten().collect();
    out.sort();
    out
}

fn scan(cur: &mut Vec<i64>, k: usize, r: i64, f: &mut impl FnMut(&[i64])) {
    if k == cur.len() {
        f(cur);
        return;
    }
    for x in -r..=r {
        cur[k] = x;
        scan(cur, k + 1, r, f);
    }
}

fn initial_radius(shifts: &[(RatVec, Cone)]) -> i64 {
    let m = shifts
        .iter()
        .flat_map(|(g, _)| g.0.iter())
        .map(|x| x.abs().ceil().to_integer().to_i64().unwrap_or(i64::MAX / 4))
        .max()
        .unwrap_or(0);
    2 + m
}

const MAX_ORACLE_RADIUS: i64 = 1 << 10;

/// Minimal lattice points of `⋂ (γ_j + σ_j)` by brute-force enumeration in a
/// growing box. Returns the set and the box half-width it stabilized at.
pub fn dickson_oracle(shifts: &[(RatVec, Cone)]) -> Result<(Vec<RatVec>, i64), IdealError> {
    dickson_oracle_with(shifts, Exec::default())
}

pub fn dickson_oracle_with(
    shifts: &[(RatVec, Cone)],
    exec: Exec,
) -> Result<(Vec<RatVec>, i64), IdealError> {
    let (n, sigma) = validate_shifts(shifts)?;
    let hb = geom::hilbert_basis_with(&sigma, exec)?;
    let hb_i = geom::int_rows(&hb);
    let poly = IntPolyhedron::new(shifts);
    let mut r = initial_radius(shifts);
    let mut prev = box_oracle(&poly, &hb_i, n, r, exec);
    loop {
        let next_r = r * 2;
        let next = box_oracle(&poly, &hb_i, n, next_r, exec);
        if next == prev && !next.is_empty() {
            return Ok((next, next_r));
        }
        if next_r > MAX_ORACLE_RADIUS {
            return Ok((next, next_r));
        }
        prev = next;
        r = next_r;
    }
}

/// Certificates for a candidate `C`: every `c` and `c + h` stay in the
/// intersection, and every lattice point of the intersection in the box
/// `[-r, r]ⁿ` lies in `C + σ`.
pub fn certify_dickson(shifts: &[(RatVec, Cone)], c: &[RatVec], r: i64) -> Result<bool, IdealError> {
    let (n, sigma) = validate_shifts(shifts)?;
    let hb = geom::hilbert_basis(&sigma)?;
    let poly = IntPolyhedron::new(shifts);
    let inside = |p: &RatVec| p.to_i64s().is_some_and(|x| poly.contains(&x));
    let upward = c
        .iter()
        .all(|p| inside(p) && hb.iter().all(|h| inside(&p.add(h))));
    if !upward {
        return Ok(false);
    }
    let misses = Exec::default().map_range(-r, r + 1, |x0| {
        let mut bad = false;
        let mut cur = vec![x0; n];
        scan(&mut cur, 1, r, &mut |p: &[i64]| {
            if !bad && poly.contains(p) {
                let pv = RatVec::from_ints(p);
                if !c.iter().any(|q| sigma.contains(&pv.sub(q))) {
                    bad = true;
                }
            }
        });
        bad
    });
    Ok(!misses.into_iter().any(|b| b))
}

/// Monomial generators of `(A + I) ∩ (B + I)` in `k[U]/I`, via `t·A + (1−t)·B + I`.
fn intersect_mod(
    a: &MonomialIdeal,
    b: &MonomialIdeal,
    toric: &[Binomial],
    s: usize,
    exec: Exec,
) -> MonomialIdeal {
    let pad = |e: &Exp, t: u32| {
        let mut x = e.clone();
        x.push(t);
        x
    };
    let mut bins: Vec<Binomial> = toric
        .iter()
        .map(|g| Binomial {
            lhs: pad(&g.lhs, 0),
            rhs: pad(&g.rhs, 0),
        })
        .collect();
    for m in &b.gens {
        bins.push(Binomial {
            lhs: pad(m, 1),
            rhs: pad(m, 0),
        });
    }
    let monos = MonomialIdeal::new(a.gens.iter().map(|m| pad(m, 1)).collect());
    let o = TermOrder::RightLex;
    let gb = buchberger_bm_with(&bins, &monos, &o, exec);
    eliminate_tail(&gb, s, &o).expect("right-lex eliminates t").1
}

/// `⋂ (γ_j + σ_j) ∩ ℤⁿ = C + σ ∩ ℤⁿ` with `σ = ⋂ σ_j`, computed through
/// binomial and monomial ideals in the semigroup ring of `σ`.
pub fn dickson_decompose(shifts: &[(RatVec, Cone)]) -> Result<DicksonResult, IdealError> {
    dickson_decompose_with(shifts, Exec::default())
}

pub fn dickson_decompose_with(
    shifts: &[(RatVec, Cone)],
    exec: Exec,
) -> Result<DicksonResult, IdealError> {
    let c = dickson_groebner(shifts, exec)?;
    let (_, sigma) = validate_shifts(shifts)?;
    let (oracle, r) = dickson_oracle_with(shifts, exec)?;
    let certified = certify_dickson(shifts, &c, r)?;
    let agree = oracle == c;
    Ok(DicksonResult {
        c,
        sigma,
        certified: certified && agree,
        oracle_radius: r,
        oracle_disagreement: (!agree).then_some(oracle),
    })
}

/// The Gröbner path alone.
pub fn dickson_groebner(shifts: &[(RatVec, Cone)], exec: Exec) -> Result<Vec<RatVec>, IdealError> {
    let (n, sigma) = validate_shifts(shifts)?;
    let u = geom::hilbert_basis_with(&sigma, exec)?;
    let s = u.len();
    let u_cols: Vec<Vec<BigInt>> = u.iter().map(|v| v.to_bigints().expect("lattice")).collect();

    // translate so that every shift is an ℕ-combination of u and the whole
    // intersection sits inside σ
    let coeffs: Vec<Vec<BigInt>> = shifts
        .iter()
        .map(|(g, _)| {
            solve_integer(&u_cols, &g.to_bigints().expect("validated"))
                .expect("a Hilbert basis of a full cone spans the lattice")
        })
        .collect();
    let w = u.iter().fold(RatVec::zeros(n), |acc, x| acc.add(x));
    let gamma = geom::shift_into_intersection_many(shifts)?;
    let mut m = coeffs
        .iter()
        .flatten()
        .map(|x| -x)
        .max()
        .unwrap_or_else(BigInt::zero)
        .max(BigInt::zero());
    for h in sigma.facets() {
        let need = ceil_q(&(-h.dot(&gamma) / h.dot(&w)));
        if need > m {
            m = need;
        }
    }
    let exps: Vec<Exp> = coeffs
        .iter()
        .map(|cj| {
            cj.iter()
                .map(|x| (x + &m).to_u32().expect("shift exponent fits in u32"))
                .collect()
        })
        .collect();

    let toric = toric_ideal_with(&u, exec)?;
    let per_shift: Vec<Result<MonomialIdeal, IdealError>> = {
        let items: Vec<usize> = (0..shifts.len()).collect();
        exec.map(&items, |&j| {
            let cj = &shifts[j].1;
            let extra: Vec<RatVec> = if *cj == sigma {
                vec![]
            } else {
                let known: BTreeSet<&RatVec> = u.iter().collect();
                geom::lattice_generators_with(cj, Exec::Sequential)
                    .into_iter()
                    .filter(|v| !known.contains(v))
                    .collect()
            };
            if extra.is_empty() {
                return Ok(MonomialIdeal::new(vec![exps[j].clone()]));
            }
            let mut vars = u.clone();
            vars.extend(extra.iter().cloned());
            let ij = toric_ideal_with(&vars, Exec::Sequential)?;
            let mut a = exps[j].clone();
            a.resize(vars.len(), 0);
            let o = TermOrder::RightLex;
            let gb = buchberger_bm_with(&ij, &MonomialIdeal::new(vec![a]), &o, Exec::Sequential);
            Ok(eliminate_tail(&gb, s, &o)?.1)
        })
    };
    let mut ideals = Vec::new();
    for r in per_shift {
        ideals.push(r?);
    }
    let mut acc = ideals[0].clone();
    for b in &ideals[1..] {
        acc = intersect_mod(&acc, b, &toric, s, exec);
    }
    let back = w.scale(&Q::from_integer(m));
    let pts: Vec<RatVec> = acc
        .gens
        .iter()
        .map(|a| exponent_to_point(a, &u).sub(&back))
        .collect();
    Ok(minimal_mod(&pts, &sigma))
}

/// Convenience wrapper for serialized shift lists.
pub fn shifts_from(list: &[Shift]) -> Vec<(RatVec, Cone)> {
    list.iter().map(|s| (s.gamma.clone(), s.cone.clone())).collect()
}

/// Hilbert function of `k[U]/I` by total degree, for small degree bounds.
pub fn quotient_hilbert_function(toric: &[Binomial], s: usize, max_deg: u32) -> Vec<usize> {
    let o = TermOrder::DegRevLex;
    let (bins, monos) = buchberger_bm(toric, &MonomialIdeal::default(), &o);
    let leads: Vec<Exp> = bins
        .iter()
        .map(|b| b.lhs.clone())
        .chain(monos.gens.iter().cloned())
        .collect();
    let mut counts = vec![0usize; max_deg as usize + 1];
    let mut stack: Vec<Exp> = vec![vec![0; s]];
    let mut seen: BTreeMap<Exp, ()> = BTreeMap::new();
    while let Some(e) = stack.pop() {
        if seen.insert(e.clone(), ()).is_some() {
            continue;
        }
        if leads.iter().any(|l| divides(l, &e)) {
            continue;
        }
        let d = deg(&e) as u32;
        counts[d as usize] += 1;
        if d < max_deg {
            for i in 0..s {
                let mut f = e.clone();
                f[i] += 1;
                stack.push(f);
            }
        }
    }
    counts
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

    fn b(l: &[u32], r: &[u32]) -> Binomial {
        Binomial::new(l.to_vec(), r.to_vec()).unwrap()
    }

    /// Relation check: the exponent difference is a lattice relation.
    fn is_relation(bin: &Binomial, basis: &[RatVec]) -> bool {
        exponent_to_point(&bin.lhs, basis) == exponent_to_point(&bin.rhs, basis)
    }

    #[test]
    fn toric_examples() {
        assert!(toric_ideal(&[v(&[1, 0]), v(&[0, 1])]).unwrap().is_empty());
        let basis = [v(&[1, 0]), v(&[1, 1]), v(&[1, 2])];
        let t = toric_ideal(&basis).unwrap();
        assert_eq!(t.len(), 1);
        let mut ends = [t[0].lhs.clone(), t[0].rhs.clone()];
        ends.sort();
        assert_eq!(ends, [vec![0, 2, 0], vec![1, 0, 1]]);
        let basis2 = [v(&[0, 1]), v(&[1, -1]), v(&[1, 0])];
        let t2 = toric_ideal(&basis2).unwrap();
        assert_eq!(t2.len(), 1);
        let mut ends2 = [t2[0].lhs.clone(), t2[0].rhs.clone()];
        ends2.sort();
        assert_eq!(ends2, [vec![0, 0, 1], vec![1, 1, 0]]);
        assert!(toric_ideal(&[RatVec(vec![crate::num::qf(1, 2)])]).is_err());
    }

    #[test]
    fn toric_relations_are_valid_and_complete_small() {
        let basis = [v(&[1, 0]), v(&[1, 1]), v(&[1, 2]), v(&[1, 3])];
        let t = toric_ideal(&basis).unwrap();
        assert!(t.iter().all(|x| is_relation(x, &basis)));
        // oracle: every relation with total degree <= 3 lies in the ideal
        let o = TermOrder::RightLex;
        let (gb, mono) = buchberger_bm(&t, &MonomialIdeal::default(), &o);
        let exps = all_exps(4, 3);
        for a in &exps {
            for c in &exps {
                if a < c && exponent_to_point(a, &basis) == exponent_to_point(c, &basis) {
                    assert!(reduces_to_zero(&b(a, c), &gb, &mono, &o));
                }
            }
        }
    }

    fn all_exps(m: usize, d: u32) -> Vec<Exp> {
        let mut out = vec![vec![]];
        for _ in 0..m {
            out = out
                .into_iter()
                .flat_map(|e: Exp| {
                    (0..=d).map(move |k| {
                        let mut f = e.clone();
                        f.push(k);
                        f
                    })
                })
                .collect();
        }
        out.retain(|e| deg(e) <= d as u64);
        out
    }

    #[test]
    fn buchberger_examples() {
        let o = TermOrder::RightLex;
        let (bins, monos) =
            buchberger_bm(&[b(&[1, 0, 1], &[0, 2, 0])], &MonomialIdeal::new(vec![vec![0, 1, 0]]), &o);
        assert!(monos.contains(&[1, 0, 1]));
        assert!(bins.is_empty());
        let (bins, monos) = buchberger_bm(&[], &MonomialIdeal::new(vec![vec![1, 0]]), &o);
        assert!(bins.is_empty());
        assert_eq!(monos.gens, vec![vec![1, 0]]);
        let (bins, monos) =
            buchberger_bm(&[b(&[1, 0], &[0, 1])], &MonomialIdeal::new(vec![vec![1, 0]]), &o);
        assert!(monos.contains(&[0, 1]));
        assert!(monos.contains(&[1, 0]));
        assert!(bins.len() <= 1);
    }

    #[test]
    fn eliminate_examples() {
        let o = TermOrder::RightLex;
        // U1 V - U2 with V last, J = (V)
        let gb = buchberger_bm(&[b(&[1, 0, 1], &[0, 1, 0])], &MonomialIdeal::new(vec![vec![0, 0, 1]]), &o);
        let (bins, monos) = eliminate_tail(&gb, 2, &o).unwrap();
        assert!(bins.is_empty());
        assert_eq!(monos.gens, vec![vec![0, 1]]);
        let gb2 = buchberger_bm(&[], &MonomialIdeal::new(vec![vec![1, 1]]), &o);
        assert!(eliminate_tail(&gb2, 1, &o).unwrap().1.gens.is_empty());
        let gb3 = buchberger_bm(&[b(&[1, 0], &[0, 1])], &MonomialIdeal::new(vec![vec![0, 1]]), &o);
        let kept = eliminate_tail(&gb3, 2, &o).unwrap();
        assert_eq!(kept, gb3);
        assert_eq!(
            eliminate_tail(&gb, 2, &TermOrder::Lex),
            Err(IdealError::NotEliminating)
        );
    }

    #[test]
    fn dickson_one_dimensional() {
        let ray = cone(&[&[1]]);
        let shifts = vec![(v(&[3]), ray.clone()), (v(&[5]), ray)];
        let r = dickson_decompose(&shifts).unwrap();
        assert_eq!(r.c, vec![v(&[5])]);
        assert!(r.certified);
    }

    #[test]
    fn dickson_unshifted() {
        let s1 = cone(&[&[1, 0], &[1, 2]]);
        let s2 = cone(&[&[0, 1], &[2, 1]]);
        let r = dickson_decompose(&[(v(&[0, 0]), s1), (v(&[0, 0]), s2)]).unwrap();
        assert_eq!(r.c, vec![v(&[0, 0])]);
        assert!(r.certified);
    }

    #[test]
    fn dickson_halfspaces() {
        let h1 = Cone::halfspace(&v(&[1, 2])).unwrap();
        let h2 = Cone::halfspace(&v(&[2, 1])).unwrap();
        let shifts = vec![(v(&[1, 0]), h1), (v(&[0, 1]), h2)];
        let r = dickson_decompose(&shifts).unwrap();
        assert!(r.certified, "{r:?}");
        let (oracle, _) = dickson_oracle(&shifts).unwrap();
        assert_eq!(r.c, oracle);
        // fixed-box oracle on [-10, 10]² as well
        assert!(certify_dickson(&shifts, &r.c, 10).unwrap());
    }

    #[test]
    fn dickson_rejects_lower_dimensional() {
        let l = cone(&[&[1, 0]]);
        let o = Cone::orthant(2);
        assert_eq!(
            dickson_decompose(&[(v(&[0, 0]), l), (v(&[0, 0]), o)]),
            Err(IdealError::NotFullDimensional)
        );
    }

    #[test]
    fn hilbert_function_matches_points() {
        let basis = [v(&[1, 0]), v(&[1, 1]), v(&[1, 2])];
        let t = toric_ideal(&basis).unwrap();
        let hf = quotient_hilbert_function(&t, 3, 6);
        // degree-d part ↔ points (d, k) with 0 <= k <= 2d
        for (d, &c) in hf.iter().enumerate() {
            assert_eq!(c, 2 * d + 1);
        }
    }
}
