//! Weighted gap bounds for truncated roots of polynomials with Laurent
//! coefficients.
//!
//! For a weight `ω` in the interior of `τ(ξ)` and a root `ξ` of
//! `P = Σ a_i T^i`, consecutive nonzero `ω`-levels `k(i) < k(i+1)` of `ξ`
//! satisfy `k(i+1) ≤ K·k(i)` with `K = ν + d`, where `d = deg P` and `ν`
//! bounds `ω` on the supports of the `a_i`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charp::{Coeff, LaurentPoly};
use crate::num::{RatVec, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GapError {
    #[error("the series is zero")]
    ZeroSeries,
    #[error("the polynomial has no coefficients")]
    NoCoefficients,
    #[error("exponent or weight dimensions disagree")]
    DimensionMismatch,
    #[error("first level {0} is negative; rescale by a monomial first")]
    NegativeLeadingLevel(Q),
    #[error("residual valuation {residual} is below the guaranteed level {guaranteed}")]
    InconsistentTruncation { residual: Q, guaranteed: Q },
}

/// `min_α ω·α` over the support.
pub fn nu_omega<C: Coeff>(g: &LaurentPoly<C>, w: &RatVec) -> Result<Q, GapError> {
    check_dim(g, w)?;
    g.exponents()
        .map(|e| e.dot(w))
        .min()
        .ok_or(GapError::ZeroSeries)
}

/// Terms of `g` on which `ω·α` is minimal.
pub fn in_omega<C: Coeff>(g: &LaurentPoly<C>, w: &RatVec) -> Result<LaurentPoly<C>, GapError> {
    let nu = nu_omega(g, w)?;
    Ok(g.filter(|e| e.dot(w) == nu))
}

fn check_dim<C: Coeff>(g: &LaurentPoly<C>, w: &RatVec) -> Result<(), GapError> {
    if g.exponents().any(|e| e.dim() != w.dim()) {
        return Err(GapError::DimensionMismatch);
    }
    Ok(())
}

/// `ξ = Σ_i ξ_{k(i)}` with `ξ_k` homogeneous of `ω`-degree `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedPiece<C> {
    pub level: Q,
    pub piece: LaurentPoly<C>,
}

/// Homogeneous pieces in increasing level order.
pub fn graded_expand<C: Coeff>(
    g: &LaurentPoly<C>,
    w: &RatVec,
) -> Result<Vec<GradedPiece<C>>, GapError> {
    check_dim(g, w)?;
    let mut by_level: BTreeMap<Q, Vec<(RatVec, C)>> = BTreeMap::new();
    for (e, c) in g.terms() {
        by_level
            .entry(e.dot(w))
            .or_default()
            .push((e.clone(), c.clone()));
    }
    Ok(by_level
        .into_iter()
        .map(|(level, terms)| GradedPiece {
            level,
            piece: LaurentPoly::from_terms(terms),
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRatio {
    pub index: usize,
    #[serde(with = "crate::num::serde_q")]
    pub from: Q,
    #[serde(with = "crate::num::serde_q")]
    pub to: Q,
    /// `None` when `k(i) = 0`, where no ratio is defined.
    #[serde(with = "crate::num::serde_opt_q")]
    pub ratio: Option<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioCheck {
    #[serde(rename = "K", with = "crate::num::serde_q")]
    pub k_bound: Q,
    pub ratios: Vec<LevelRatio>,
    pub verdict: bool,
    pub first_violation: Option<usize>,
}

/// Checks `k(i+1) ≤ K·k(i)` along a level sequence.
pub fn ratio_check(levels: &[Q], k_bound: &Q) -> Result<RatioCheck, GapError> {
    if let Some(first) = levels.first() {
        if first.is_negative() {
            return Err(GapError::NegativeLeadingLevel(first.clone()));
        }
    }
    let ratios: Vec<LevelRatio> = levels
        .windows(2)
        .enumerate()
        .map(|(i, w)| LevelRatio {
            index: i,
            from: w[0].clone(),
            to: w[1].clone(),
            ratio: (!w[0].is_zero()).then(|| &w[1] / &w[0]),
        })
        .collect();
    let first_violation = ratios
        .iter()
        .find(|r| r.ratio.as_ref().is_some_and(|x| x > k_bound))
        .map(|r| r.index);
    Ok(RatioCheck {
        k_bound: k_bound.clone(),
        ratios,
        verdict: first_violation.is_none(),
        first_violation,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub d: usize,
    #[serde(with = "crate::num::serde_q")]
    pub nu: Q,
    #[serde(with = "crate::num::serde_q_vec")]
    pub levels: Vec<Q>,
    #[serde(flatten)]
    pub check: RatioCheck,
    /// `ν_ω(Σ a_i ξ^i)`; `None` when the truncation is an exact root.
    #[serde(with = "crate::num::serde_opt_q")]
    pub residual_valuation: Option<Q>,
    #[serde(with = "crate::num::serde_opt_q")]
    pub guaranteed_level: Option<Q>,
}

/// Verifies the gap bound on a truncated root `ξ` of `Σ a_i T^i`.
///
/// `ν` is taken as the largest `ω`-value over all coefficient supports,
/// which bounds each `ν_ω(a_i)` from above. With `guaranteed_level` set,
/// the residual `P(ξ)` must vanish below it or the truncation is rejected.
pub fn gap_verify<C: Coeff>(
    xi: &LaurentPoly<C>,
    coeffs: &[LaurentPoly<C>],
    w: &RatVec,
    guaranteed_level: Option<Q>,
) -> Result<GapReport, GapError> {
    if coeffs.is_empty() {
        return Err(GapError::NoCoefficients);
    }
    if xi.is_zero() {
        return Err(GapError::ZeroSeries);
    }
    for a in coeffs {
        check_dim(a, w)?;
    }
    let d = coeffs.len() - 1;
    let nu = coeffs
        .iter()
        .flat_map(|a| a.exponents().map(|e| e.dot(w)))
        .max()
        .unwrap_or_else(Q::zero);
    let k_bound = &nu + Q::from_integer(d.into());
    let levels: Vec<Q> = graded_expand(xi, w)?.into_iter().map(|p| p.level).collect();
    let check = ratio_check(&levels, &k_bound)?;

    // Horner: ((a_d ξ + a_{d−1}) ξ + …) + a_0
    let mut r = coeffs[d].clone();
    for a in coeffs[..d].iter().rev() {
        r = r.mul(xi).add(a);
    }
    let residual_valuation = if r.is_zero() {
        None
    } else {
        Some(nu_omega(&r, w)?)
    };
    if let (Some(res), Some(g)) = (&residual_valuation, &guaranteed_level) {
        if res < g {
            return Err(GapError::InconsistentTruncation {
                residual: res.clone(),
                guaranteed: g.clone(),
            });
        }
    }
    Ok(GapReport {
        d,
        nu,
        levels,
        check,
        residual_valuation,
        guaranteed_level,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charp::{Field, FqPoly};
    use crate::num::q;

    fn v(xs: &[i64]) -> RatVec {
        RatVec::from_ints(xs)
    }

    /// `Σ_{i=0}^{top} (x/y)^{p^i}` and the coefficients of `T^p − T + x/y`.
    fn sharp(p: u32, top: u32) -> (FqPoly, Vec<FqPoly>) {
        let f = Field::prime(p).unwrap();
        let xi = FqPoly::from_terms((0..=top).map(|i| {
            let k = (p as i64).pow(i);
            (v(&[k, -k]), f.one())
        }));
        let mut coeffs = vec![FqPoly::zero(); p as usize + 1];
        coeffs[0] = FqPoly::monomial(v(&[1, -1]), f.one());
        coeffs[1] = FqPoly::monomial(v(&[0, 0]), f.from_int(-1));
        coeffs[p as usize] = FqPoly::monomial(v(&[0, 0]), f.one());
        (xi, coeffs)
    }

    #[test]
    fn initial_forms() {
        let g: LaurentPoly<Q> = LaurentPoly::from_terms([
            (v(&[1, 0]), q(2)),
            (v(&[0, 2]), q(3)),
            (v(&[2, 0]), q(1)),
        ]);
        let w = v(&[2, 1]);
        assert_eq!(nu_omega(&g, &w).unwrap(), q(2));
        assert_eq!(in_omega(&g, &w).unwrap().len(), 2);
        let levels: Vec<Q> = graded_expand(&g, &w).unwrap().into_iter().map(|p| p.level).collect();
        assert_eq!(levels, vec![q(2), q(4)]);
    }

    #[test]
    fn sharp_example_meets_the_bound() {
        for p in [2u32, 3, 5] {
            let (xi, coeffs) = sharp(p, 6);
            let w = v(&[2, 1]);
            let pk = q((p as i64).pow(6));
            let r = gap_verify(&xi, &coeffs, &w, Some(pk)).unwrap();
            assert_eq!(r.check.k_bound, q(p as i64 + 1));
            assert!(r.check.verdict);
            assert!(r.check.ratios.iter().all(|x| x.ratio == Some(q(p as i64))));
            assert_eq!(r.residual_valuation, Some(q((p as i64).pow(7))));
        }
    }

    #[test]
    fn wide_jump_is_flagged() {
        let p = 3u32;
        let (xi, coeffs) = sharp(p, 5);
        let f = Field::prime(p).unwrap();
        let far = (p as i64).pow(9);
        let xi = xi.add(&FqPoly::monomial(v(&[far, -far]), f.one()));
        let r = gap_verify(&xi, &coeffs, &v(&[2, 1]), Some(q((p as i64).pow(6)))).unwrap();
        assert!(!r.check.verdict);
        assert_eq!(r.check.first_violation, Some(5));
    }

    #[test]
    fn truncation_below_guarantee_is_rejected() {
        let (xi, coeffs) = sharp(2, 3);
        let e = gap_verify(&xi, &coeffs, &v(&[2, 1]), Some(q(1000)));
        assert!(matches!(e, Err(GapError::InconsistentTruncation { .. })));
    }

    #[test]
    fn fabricated_levels() {
        let r = ratio_check(&[q(1), q(10)], &q(3)).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.first_violation, Some(0));
        assert!(ratio_check(&[q(-1), q(2)], &q(3)).is_err());
        let z = ratio_check(&[q(0), q(50), q(100)], &q(3)).unwrap();
        assert!(z.verdict && z.ratios[0].ratio.is_none());
    }
}
