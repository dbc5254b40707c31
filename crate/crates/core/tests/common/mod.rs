//! Random instance generators and brute-force oracles shared by the
//! integration tests. Oracles here deliberately avoid the library's own
//! algorithms: membership is tested facet-free from generators, lattice
//! points come from box enumeration.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use suppcone::binom_ideal::{Binomial, MonomialIdeal};
use suppcone::linalg::solve_in_span;
use suppcone::support::{RayFamily, SemigroupFamily, SupportSpec};
use suppcone::{Cone, RatVec, Q};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int_vec(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> RatVec {
    let xs: Vec<i64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
    RatVec::from_ints(&xs)
}

pub fn nonzero_vec(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> RatVec {
    loop {
        let v = int_vec(rng, n, lo, hi);
        if !v.is_zero() {
            return v;
        }
    }
}

/// Cone on 1 to `n + 1` random small generators; may be lower dimensional
/// or contain lines.
pub fn random_cone(rng: &mut ChaCha8Rng, n: usize) -> (Cone, Vec<RatVec>) {
    let k = rng.gen_range(1..=n + 1);
    let gens: Vec<RatVec> = (0..k).map(|_| nonzero_vec(rng, n, -3, 3)).collect();
    (Cone::from_generators(n, &gens).expect("valid generators"), gens)
}

/// Full-dimensional pointed cone.
pub fn random_pointed_cone(rng: &mut ChaCha8Rng, n: usize) -> (Cone, Vec<RatVec>) {
    loop {
        let k = rng.gen_range(n..=n + 2);
        let gens: Vec<RatVec> = (0..k).map(|_| nonzero_vec(rng, n, -3, 3)).collect();
        let c = Cone::from_generators(n, &gens).expect("valid generators");
        if c.is_full_dim() && c.is_strongly_convex() {
            return (c, gens);
        }
    }
}

/// Nonnegative combination test by brute force over the generator set:
/// `x ∈ cone(gens)` iff `x` is a nonnegative combination of some linearly
/// independent subset (Carathéodory).
pub fn in_cone_oracle(gens: &[RatVec], x: &RatVec) -> bool {
    if x.is_zero() {
        return true;
    }
    let m = gens.len();
    (1u32..(1 << m)).any(|mask| {
        let sub: Vec<RatVec> = (0..m)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| gens[i].clone())
            .collect();
        if sub.len() > x.dim() {
            return false;
        }
        match solve_in_span(&sub, x) {
            Some(coef) => {
                // the solution is unique only for independent subsets
                let back = sub
                    .iter()
                    .zip(&coef)
                    .fold(RatVec::zeros(x.dim()), |acc, (g, c)| acc.add(&g.scale(c)));
                back == *x && coef.iter().all(|c| !c.is_negative())
            }
            None => false,
        }
    })
}

/// Membership in the dual of `cone(gens)` straight from the definition.
pub fn in_dual_oracle(gens: &[RatVec], x: &RatVec) -> bool {
    gens.iter().all(|g| !g.dot(x).is_negative())
}

pub fn box_points(n: usize, r: i64) -> Vec<RatVec> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-r..=r).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out.iter().map(|p| RatVec::from_ints(p)).collect()
}

/// `n`-dimensional intersection of up to three shifted cones, each
/// containing the orthant so the intersection is full-dimensional.
pub fn random_dickson_instance(rng: &mut ChaCha8Rng) -> Vec<(RatVec, Cone)> {
    let n = rng.gen_range(2..=3);
    let k = rng.gen_range(1..=3);
    (0..k)
        .map(|_| loop {
            let mut gens: Vec<RatVec> = (0..n).map(|i| RatVec::unit(n, i)).collect();
            for _ in 0..rng.gen_range(0..=2) {
                gens.push(nonzero_vec(rng, n, -2, 2));
            }
            let c = Cone::from_generators(n, &gens).expect("valid generators");
            if c.is_strongly_convex() {
                break (int_vec(rng, n, -2, 2), c);
            }
        })
        .collect()
}

/// Minimal lattice points of `⋂ (γ + σ_j)` under `x ≤ y ⇔ y − x ∈ ⋂ σ_j`,
/// restricted to points of max-norm at most `inner`, found by enumerating
/// the box of radius `outer`.
pub fn brute_minimal(shifts: &[(RatVec, Cone)], inner: i64, outer: i64) -> BTreeSet<RatVec> {
    let n = shifts[0].0.dim();
    let inside = |x: &RatVec| shifts.iter().all(|(g, c)| c.contains(&x.sub(g)));
    let pts: Vec<RatVec> = box_points(n, outer).into_iter().filter(inside).collect();
    let below = |x: &RatVec, y: &RatVec| shifts.iter().all(|(_, c)| c.contains(&y.sub(x)));
    let norm = |x: &RatVec| x.0.iter().map(|c| c.abs()).max().unwrap_or_else(Q::zero);
    let bound = Q::from_integer(inner.into());
    let candidates: Vec<&RatVec> = pts.iter().filter(|x| norm(x) <= bound).collect();
    candidates
        .into_iter()
        .filter(|x| !pts.iter().any(|y| y != *x && below(y, x)))
        .cloned()
        .collect()
}

pub fn random_exponent(rng: &mut ChaCha8Rng, n: usize, max_deg: u32) -> Vec<u32> {
    let mut e = vec![0u32; n];
    let d = rng.gen_range(0..=max_deg);
    for _ in 0..d {
        e[rng.gen_range(0..n)] += 1;
    }
    e
}

/// Up to four binomials and two monomials in at most five variables,
/// degrees at most four.
pub fn random_bm_input(rng: &mut ChaCha8Rng) -> (Vec<Binomial>, MonomialIdeal) {
    let n = rng.gen_range(2..=5);
    let mut bins = Vec::new();
    for _ in 0..rng.gen_range(1..=4) {
        let a = random_exponent(rng, n, 4);
        let b = random_exponent(rng, n, 4);
        if let Ok(x) = Binomial::new(a, b) {
            bins.push(x);
        }
    }
    let monos = (0..rng.gen_range(0..=2))
        .map(|_| {
            let mut e = random_exponent(rng, n, 4);
            if e.iter().all(|&x| x == 0) {
                e[0] = 1;
            }
            e
        })
        .collect();
    (bins, MonomialIdeal::new(monos))
}

/// Random integral spec with rays and semigroups.
pub fn random_spec(rng: &mut ChaCha8Rng, n: usize) -> SupportSpec {
    let mut s = SupportSpec {
        dim: Some(n),
        ..SupportSpec::default()
    };
    for _ in 0..rng.gen_range(0..=3) {
        s.points.push(int_vec(rng, n, -4, 4));
    }
    for _ in 0..rng.gen_range(1..=3) {
        s.rays.push(RayFamily {
            base: int_vec(rng, n, -3, 3),
            step: nonzero_vec(rng, n, -2, 2),
        });
    }
    for _ in 0..rng.gen_range(0..=1) {
        s.semigroups.push(SemigroupFamily {
            base: int_vec(rng, n, -3, 3),
            gens: (0..rng.gen_range(1..=2)).map(|_| nonzero_vec(rng, n, -2, 2)).collect(),
        });
    }
    s
}

/// Adds finite points and semigroups on subsets of the unit vectors.
pub fn add_orthant_stuff(rng: &mut ChaCha8Rng, s: &SupportSpec) -> SupportSpec {
    let n = s.dim.expect("random specs carry their dimension");
    let mut t = s.clone();
    for _ in 0..rng.gen_range(1..=4) {
        t.points.push(int_vec(rng, n, -6, 6));
    }
    for _ in 0..rng.gen_range(1..=2) {
        let gens: Vec<RatVec> = (0..n)
            .filter(|_| rng.gen_bool(0.6))
            .map(|i| RatVec::unit(n, i))
            .collect();
        if !gens.is_empty() {
            t.semigroups.push(SemigroupFamily {
                base: int_vec(rng, n, -6, 6),
                gens,
            });
        }
    }
    t
}
