//! Worked examples as ready-made specs, with their expected outcomes.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Zero};

use crate::charp::{Field, FqPoly};
use crate::geom::Cone;
use crate::num::{qf, QuadNum, RatVec, Q};
use crate::orders::{refine_quad_weight, refine_weight, WeightOrder};
use crate::support::{PTailFamily, RayFamily, SupportSpec};

fn v(xs: &[i64]) -> RatVec {
    RatVec::from_ints(xs)
}

fn ray(b: &[i64], s: &[i64]) -> RayFamily {
    RayFamily {
        base: v(b),
        step: v(s),
    }
}

fn cone(gens: &[&[i64]]) -> Cone {
    let g: Vec<RatVec> = gens.iter().map(|x| v(x)).collect();
    Cone::from_generators(g[0].dim(), &g).expect("fixture cones are well formed")
}

/// `Σ_{k ≥ 0} (x y⁻¹)^k` with its first terms removed so it starts at
/// `(N, −N)`. `n = 0` gives the whole series.
pub fn ex_min(n: i64) -> SupportSpec {
    SupportSpec {
        rays: vec![ray(&[n, -n], &[1, -1])],
        ..SupportSpec::default()
    }
}

pub fn ex_min_dual() -> Cone {
    cone(&[&[0, 1], &[1, -1]])
}

/// `G(x) + G(y) + zG(z) + zG(xz/y) + zG(yz/x) + (x+y)G(xy/z)` with `G` a
/// non-rational algebraic series without constant term, so each family
/// starts one step along its line.
pub fn ex_c() -> SupportSpec {
    SupportSpec {
        rays: vec![
            ray(&[1, 0, 0], &[1, 0, 0]),
            ray(&[0, 1, 0], &[0, 1, 0]),
            ray(&[0, 0, 2], &[0, 0, 1]),
            ray(&[1, -1, 2], &[1, -1, 1]),
            ray(&[-1, 1, 2], &[-1, 1, 1]),
            ray(&[2, 1, -1], &[1, 1, -1]),
            ray(&[1, 2, -1], &[1, 1, -1]),
        ],
        ..SupportSpec::default()
    }
}

/// The vertices of `Conv(C)`.
pub fn ex_c_vertices() -> Vec<RatVec> {
    vec![v(&[0, 0, 1]), v(&[0, 1, 0]), v(&[1, 0, 0])]
}

pub fn ex_c_sigma() -> Cone {
    cone(&[
        &[1, 0, 0],
        &[0, 1, 0],
        &[0, 0, 1],
        &[1, -1, 1],
        &[-1, 1, 1],
        &[1, 1, -1],
    ])
}

/// `Σ_k x₁^k` in two variables.
pub fn bad_ex() -> SupportSpec {
    SupportSpec {
        rays: vec![ray(&[0, 0], &[1, 0])],
        ..SupportSpec::default()
    }
}

/// `ξ + f` with `f = 1 − ξ`: only the constant term is left.
pub fn bad_ex_replaced() -> SupportSpec {
    SupportSpec {
        points: vec![v(&[0, 0])],
        ..SupportSpec::default()
    }
}

/// Support model of `Σ_k (xg)^k` with `g = Σ_k (x/y)^{1 − p^{−k}}`: an
/// integral progression along `(2, −1)` and accumulation tails toward the
/// points `(2k, −k)`, which are never reached.
pub fn ex4(p: u32) -> SupportSpec {
    let ptails = (1..=3)
        .map(|k: i64| PTailFamily {
            base: v(&[2 * k - 1, -(k - 1)]),
            dir: v(&[1, -1]),
            p,
        })
        .collect();
    SupportSpec {
        rays: vec![ray(&[1, 0], &[2, -1])],
        ptails,
        ..SupportSpec::default()
    }
}

/// Computed `τ(ξ)`; the printed generator `(0, 1)` does not lie in the dual
/// of `cone⟨(2,−1),(0,1)⟩`, while `(1, 0)` does.
pub fn ex4_tau() -> Cone {
    cone(&[&[1, 0], &[1, 2]])
}

pub fn ex4_tau_tilde() -> Cone {
    cone(&[&[1, 0], &[1, 1]])
}

pub const EX4_NOTE: &str =
    "tau is the dual of cone<(2,-1),(0,1)>, generated by (1,0) and (1,2); the printed (0,1) is not in it";

/// `ξ' = ξ + f(x^{1/2} y^{1/2})`: adds a tail accumulating at `(1/2, 1/2)`.
pub fn last_ex(p: u32) -> SupportSpec {
    let mut s = ex4(p);
    s.ptails.push(PTailFamily {
        base: v(&[0, 0]),
        dir: RatVec(vec![qf(1, 2), qf(1, 2)]),
        p,
    });
    s.lattice_scale = 2;
    s
}

/// Lower boundary `(k, ⌈−k − √k⌉)` of `{y ≥ −x − √x}` for `k = 0..=n`.
pub fn ex1_points(n: i64) -> Vec<RatVec> {
    (0..=n).map(|k| v(&[k, -k - k.sqrt()])).collect()
}

pub const EX1_LEVELS: [i64; 5] = [4, 16, 64, 256, 1024];

pub fn ex1_truncations() -> Vec<Vec<RatVec>> {
    EX1_LEVELS.iter().map(|&n| ex1_points(n)).collect()
}

/// Smallest integer `y ≤ x` with `(x, y)` in the region above `ln(t + 1)`
/// rotated by `−π/4`. Floating point is fine here: it only shapes the sample.
fn ex2_lower(x: i64) -> i64 {
    let inside = |y: i64| {
        let s = std::f64::consts::SQRT_2;
        let a = (x - y) as f64 / s;
        let b = (x + y) as f64 / s;
        a >= 0.0 && b >= (a + 1.0).ln()
    };
    let (mut lo, mut hi) = (-x - 1, x);
    // inside(hi) holds, inside(lo) fails
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if inside(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

pub fn ex2_points(n: i64) -> Vec<RatVec> {
    (0..=n).map(|x| v(&[x, ex2_lower(x)])).collect()
}

pub const EX2_LEVELS: [i64; 5] = [8, 32, 128, 512, 2048];

pub fn ex2_truncations() -> Vec<Vec<RatVec>> {
    EX2_LEVELS.iter().map(|&n| ex2_points(n)).collect()
}

/// Truncations of a single lattice ray, the polyhedral control.
pub fn ray_truncations(step: &[i64]) -> Vec<Vec<RatVec>> {
    let s = v(step);
    EX1_LEVELS
        .iter()
        .map(|&n| (0..=n).map(|k| s.scale(&crate::num::q(k))).collect())
        .collect()
}

// ------------------------------------------------------------ char p

fn p_power(p: u32, k: i64) -> Q {
    let pk = Q::from_integer(BigInt::from(p).pow(k.unsigned_abs() as u32));
    if k >= 0 {
        pk
    } else {
        pk.recip()
    }
}

/// `√2 · scale` as a quadratic weight entry.
fn sqrt2(scale: Q) -> QuadNum {
    QuadNum {
        a: Q::zero(),
        b: scale,
        d: BigInt::from(2),
    }
}

/// `ω₁ = (1, √2)`, under which `x⁻¹y³` is positive.
pub fn saavedra_omega1() -> WeightOrder {
    refine_quad_weight(&[QuadNum::rational(Q::one()), sqrt2(Q::one())]).expect("valid weight")
}

/// `ω₂ = (1, √2/6)`, under which `x⁻¹y³` is negative.
pub fn saavedra_omega2() -> WeightOrder {
    refine_quad_weight(&[QuadNum::rational(Q::one()), sqrt2(qf(1, 6))]).expect("valid weight")
}

/// `T^p − x^{p−1}T − x^{p−1}y³` becomes `u^p − u = x⁻¹y³` under `T = xu`.
pub fn saavedra_rhs(f: Field) -> FqPoly {
    FqPoly::monomial(v(&[-1, 3]), f.one())
}

/// `x`, the factor between `u` and `T`.
pub fn saavedra_shift() -> RatVec {
    v(&[1, 0])
}

/// `Σ_{k=1}^{depth} x^{1−1/p^k} y^{3/p^k}`.
pub fn saavedra_negative_expected(f: Field, depth: u32) -> FqPoly {
    FqPoly::from_terms((1..=depth as i64).map(|k| {
        let e = p_power(f.p, -k);
        (RatVec(vec![Q::one() - &e, e * Q::from_integer(3.into())]), f.one())
    }))
}

/// `−Σ_{k=0}^{depth} x^{1−p^k} y^{3p^k}`.
pub fn saavedra_positive_expected(f: Field, depth: u32) -> FqPoly {
    FqPoly::from_terms((0..=depth as i64).map(|k| {
        let e = p_power(f.p, k);
        (RatVec(vec![Q::one() - &e, e * Q::from_integer(3.into())]), f.from_int(-1))
    }))
}

/// `T^p − x^{p−1}T − x^{p−1}` becomes `u^p − u = x⁻¹` under `T = xu`.
pub fn chevalley_rhs(f: Field) -> FqPoly {
    FqPoly::monomial(v(&[-1]), f.one())
}

pub fn chevalley_order() -> WeightOrder {
    refine_weight(&v(&[1])).expect("valid weight")
}

/// `Σ_{k=1}^{depth} x^{1−1/p^k}`.
pub fn chevalley_expected(f: Field, depth: u32) -> FqPoly {
    FqPoly::from_terms(
        (1..=depth as i64).map(|k| (RatVec(vec![Q::one() - p_power(f.p, -k)]), f.one())),
    )
}

/// `Σ_{i=0}^{top} (x/y)^{p^i}`, a truncated root of `T^p − T + x/y`.
pub fn gap_series(f: Field, top: u32) -> FqPoly {
    FqPoly::from_terms((0..=top as i64).map(|i| {
        let k = p_power(f.p, i);
        (RatVec(vec![k.clone(), -k]), f.one())
    }))
}

/// Coefficients `a_0, …, a_p` of `T^p − T + x/y`.
pub fn gap_coefficients(f: Field) -> Vec<FqPoly> {
    let mut a = vec![FqPoly::zero(); f.p as usize + 1];
    a[0] = FqPoly::monomial(v(&[1, -1]), f.one());
    a[1] = FqPoly::monomial(v(&[0, 0]), f.from_int(-1));
    a[f.p as usize] = FqPoly::monomial(v(&[0, 0]), f.one());
    a
}

pub fn gap_weight() -> RatVec {
    v(&[2, 1])
}

/// The gap series with its last term pushed up to `(x/y)^{p^far}`.
pub fn gap_series_perturbed(f: Field, top: u32, far: u32) -> FqPoly {
    let last = p_power(f.p, top as i64);
    let far = p_power(f.p, far as i64);
    let base = gap_series(f, top).filter(|e| e.0[0] != last);
    base.add(&FqPoly::monomial(RatVec(vec![far.clone(), -far]), f.one()))
}
