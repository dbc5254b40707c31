//! Named worked examples run end to end and compared with their expected
//! outcomes.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::charp::{self, as_negative_root, as_positive_root, as_split, fq_poly_to_json, CharpError, Field};
use crate::fixtures as fx;
use crate::gapcheck::{gap_verify, GapError};
use crate::num::{q, Q};
use crate::par::Exec;
use crate::support::{self, Condition, Count, SupportError, Verdict};
use crate::RatVec;

pub const FIXTURE_NAMES: [&str; 10] = [
    "ex_min",
    "ex_C",
    "ex1",
    "ex_2",
    "ex4",
    "ex_saavedra",
    "bad_ex",
    "last_ex",
    "chevalley",
    "gap_sharpness",
];

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error(transparent)]
    Support(#[from] SupportError),
    #[error(transparent)]
    Charp(#[from] CharpError),
    #[error(transparent)]
    Gap(#[from] GapError),
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    /// Stated in the worked example.
    Published,
    /// Obtained by an independent computation.
    Computed,
    /// Follows from the definitions.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixtureCheck {
    pub label: String,
    pub basis: Basis,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixtureReport {
    pub name: String,
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub checks: Vec<FixtureCheck>,
}

struct Builder {
    checks: Vec<FixtureCheck>,
}

impl Builder {
    fn check(&mut self, label: impl Into<String>, basis: Basis, passed: bool, detail: Value) {
        self.checks.push(FixtureCheck {
            label: label.into(),
            basis,
            passed,
            detail,
        });
    }
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialise")
}

pub fn run_fixture(name: &str) -> Result<FixtureReport, RegistryError> {
    let mut b = Builder { checks: Vec::new() };
    let mut note = None;
    match name {
        "ex_min" => ex_min(&mut b)?,
        "ex_C" => ex_c(&mut b)?,
        "ex1" => diagnostic(&mut b, &fx::ex1_truncations())?,
        "ex_2" => diagnostic(&mut b, &fx::ex2_truncations())?,
        "ex4" => {
            ex4(&mut b)?;
            note = Some(fx::EX4_NOTE.to_string());
        }
        "ex_saavedra" => saavedra(&mut b)?,
        "bad_ex" => bad_ex(&mut b)?,
        "last_ex" => last_ex(&mut b)?,
        "chevalley" => chevalley(&mut b)?,
        "gap_sharpness" => gap_sharpness(&mut b)?,
        other => return Err(RegistryError::UnknownFixture(other.to_string())),
    }
    Ok(FixtureReport {
        name: name.to_string(),
        matches: b.checks.iter().all(|c| c.passed),
        note,
        checks: b.checks,
    })
}

/// Every fixture, in registry order; fixtures run independently.
pub fn run_all(exec: Exec) -> Vec<Result<FixtureReport, RegistryError>> {
    exec.map(&FIXTURE_NAMES, |n| run_fixture(n))
}

fn ex_min(b: &mut Builder) -> Result<(), RegistryError> {
    let dual = support::tau(&fx::ex_min(0))?.dual();
    b.check(
        "tau dual is cone<(0,1),(1,-1)>",
        Basis::Published,
        dual == fx::ex_min_dual(),
        json!({ "tau_dual_generators": to_json(&dual.generators()) }),
    );
    for n in [-2i64, 1, 3] {
        let r = support::normalize(&fx::ex_min(n))?;
        let want = vec![RatVec::from_ints(&[n, -n])];
        b.check(
            format!("C for the series starting at ({n},{})", -n),
            Basis::Published,
            r.c == want && r.residual_contained(),
            json!({ "C": to_json(&r.c) }),
        );
    }
    Ok(())
}

fn ex_c(b: &mut Builder) -> Result<(), RegistryError> {
    let s = fx::ex_c();
    let dual = support::tau(&s)?.dual();
    b.check(
        "tau dual is the six-generator cone",
        Basis::Published,
        dual == fx::ex_c_sigma(),
        json!({ "tau_dual_generators": to_json(&dual.generators()) }),
    );
    let r = support::normalize(&s)?;
    b.check(
        "C has at least two elements",
        Basis::Published,
        r.c.len() >= 2,
        json!({ "C": to_json(&r.c) }),
    );
    b.check(
        "C is the set of unit vectors",
        Basis::Computed,
        r.c == fx::ex_c_vertices(),
        json!({ "C": to_json(&r.c) }),
    );
    let outside: Vec<_> = r
        .edge_lines()
        .into_iter()
        .filter(|l| !l.dir.is_nonneg())
        .collect();
    let apex = support::common_apex(&outside);
    b.check(
        "unbounded edges outside the orthant have no common apex",
        Basis::Published,
        outside.len() == 4 && apex.is_none(),
        json!({ "lines": to_json(&outside), "apex": to_json(&apex) }),
    );
    b.check(
        "decomposition certified and minimal",
        Basis::Computed,
        r.dickson_certified && support::minimality_holds(&r) && r.residual_contained(),
        json!({ "certified": r.dickson_certified }),
    );
    Ok(())
}

/// Lower slopes are defined and strictly monotone.
pub fn slopes_strictly_monotone(r: &support::DiagnosticReport) -> bool {
    let slopes: Option<Vec<Q>> = r.levels.iter().map(|l| l.lower_slope.clone()).collect();
    match slopes {
        Some(s) => {
            s.windows(2).all(|w| w[0] < w[1]) || s.windows(2).all(|w| w[0] > w[1])
        }
        None => false,
    }
}

fn diagnostic(b: &mut Builder, truncations: &[Vec<RatVec>]) -> Result<(), RegistryError> {
    let r = support::non_polyhedral_diagnostic(truncations)?;
    let slopes: Vec<_> = r.levels.iter().map(|l| to_json(&l.lower_slope.as_ref().map(crate::num::q_to_json))).collect();
    b.check(
        "lower extremal slopes strictly monotone across levels",
        Basis::Computed,
        r.levels.len() == 5 && slopes_strictly_monotone(&r),
        json!({ "slopes": slopes }),
    );
    b.check(
        "verdict non-stabilizing",
        Basis::Computed,
        r.verdict == Verdict::NonStabilizing,
        to_json(&r.verdict),
    );
    Ok(())
}

fn ex4(b: &mut Builder) -> Result<(), RegistryError> {
    let s = fx::ex4(2);
    let t = support::tau_result(&s)?;
    b.check(
        "tau is the dual of cone<(2,-1),(0,1)>",
        Basis::Computed,
        t.tau == fx::ex4_tau(),
        json!({ "tau_generators": to_json(&t.tau.generators()) }),
    );
    b.check(
        "tau tilde is cone<(1,0),(1,1)>",
        Basis::Published,
        t.tau_tilde == fx::ex4_tau_tilde(),
        json!({ "tau_tilde_generators": to_json(&t.tau_tilde.generators()) }),
    );
    b.check(
        "tau'_0 is empty",
        Basis::Published,
        t.tau0_empty,
        json!({ "tau0_empty": t.tau0_empty }),
    );
    Ok(())
}

fn cond(normal: &[i64], strict: bool) -> Condition {
    Condition {
        normal: RatVec::from_ints(normal),
        strict,
    }
}

fn bad_ex(b: &mut Builder) -> Result<(), RegistryError> {
    let before = support::tau_prime(&fx::bad_ex())?;
    b.check(
        "tau'_0 is {w1 > 0, w2 >= 0}",
        Basis::Published,
        before.tau0.conditions == vec![cond(&[0, 1], false), cond(&[1, 0], true)],
        to_json(&before.tau0),
    );
    let after = support::tau_prime(&fx::bad_ex_replaced())?;
    b.check(
        "after replacement tau'_0 is the weak orthant",
        Basis::Published,
        after.tau0.conditions == vec![cond(&[0, 1], false), cond(&[1, 0], false)]
            && !after.tau0.empty,
        to_json(&after.tau0),
    );
    Ok(())
}

fn last_ex(b: &mut Builder) -> Result<(), RegistryError> {
    let s = fx::last_ex(2);
    let t = support::tau_result(&s)?;
    b.check(
        "tau unchanged by the added tail",
        Basis::Computed,
        t.tau == fx::ex4_tau() && t.tau_tilde == fx::ex4_tau_tilde(),
        json!({
            "tau_generators": to_json(&t.tau.generators()),
            "tau_tilde_generators": to_json(&t.tau_tilde.generators()),
        }),
    );
    let w = RatVec::from_ints(&[1, -1]);
    let c1 = support::halfspace_census(&s, &w, &q(1))?;
    let c0 = support::halfspace_census(&s, &w, &q(0))?;
    b.check(
        "census along (1,-1)",
        Basis::Computed,
        c1.below == Count::Infinite
            && c1.on == Count::Finite(1)
            && c0.below == Count::Finite(0)
            && c0.on == Count::Infinite,
        json!({ "level_1": to_json(&c1), "level_0": to_json(&c0) }),
    );
    Ok(())
}

pub const ROOT_DEPTH: u32 = 5;

fn saavedra(b: &mut Builder) -> Result<(), RegistryError> {
    let shift = fx::saavedra_shift();
    for p in [2u32, 3] {
        let f = Field::prime(p)?;
        let a = fx::saavedra_rhs(f);

        let o2 = fx::saavedra_omega2();
        let (minus, _) = as_split(&a, &o2);
        let neg = as_negative_root(&minus, f, &o2, ROOT_DEPTH)?;
        let got = neg.root.shift(&shift);
        b.check(
            format!("p={p}: negative branch under w2"),
            Basis::Published,
            minus == a
                && got == fx::saavedra_negative_expected(f, ROOT_DEPTH)
                && neg.certified()
                && neg.residual.len() == 1,
            json!({
                "root": fq_poly_to_json(f, &got),
                "residual": fq_poly_to_json(f, &neg.residual),
            }),
        );

        let o1 = fx::saavedra_omega1();
        let (_, plus) = as_split(&a, &o1);
        let pos = as_positive_root(&plus, f, &o1, ROOT_DEPTH)?;
        let got = pos.root.shift(&shift);
        b.check(
            format!("p={p}: positive branch under w1"),
            Basis::Published,
            plus == a
                && got == fx::saavedra_positive_expected(f, ROOT_DEPTH)
                && pos.certified()
                && pos.residual.len() == 1,
            json!({
                "root": fq_poly_to_json(f, &got),
                "residual": fq_poly_to_json(f, &pos.residual),
            }),
        );
    }
    Ok(())
}

fn chevalley(b: &mut Builder) -> Result<(), RegistryError> {
    let o = fx::chevalley_order();
    for p in [2u32, 3, 5] {
        let f = Field::prime(p)?;
        let r = charp::as_root(&fx::chevalley_rhs(f), f, &o, ROOT_DEPTH)?;
        let got = r.root.shift(&RatVec::from_ints(&[1]));
        b.check(
            format!("p={p}: root and exact residual"),
            Basis::Published,
            got == fx::chevalley_expected(f, ROOT_DEPTH) && r.certified() && r.residual.len() == 1,
            json!({
                "root": fq_poly_to_json(f, &got),
                "residual": fq_poly_to_json(f, &r.residual),
            }),
        );
    }
    Ok(())
}

pub const GAP_TOP: u32 = 6;

fn gap_sharpness(b: &mut Builder) -> Result<(), RegistryError> {
    let w = fx::gap_weight();
    for p in [2u32, 3, 5] {
        let f = Field::prime(p)?;
        let guaranteed = Q::from_integer((p as i64).pow(GAP_TOP).into());
        let coeffs = fx::gap_coefficients(f);
        let r = gap_verify(&fx::gap_series(f, GAP_TOP), &coeffs, &w, Some(guaranteed.clone()))?;
        let pq = q(p as i64);
        b.check(
            format!("p={p}: every ratio is p and K = p + 1"),
            Basis::Published,
            r.check.verdict
                && r.check.k_bound == &pq + q(1)
                && r.check.ratios.iter().all(|x| x.ratio.as_ref() == Some(&pq)),
            to_json(&r),
        );
        let bad = fx::gap_series_perturbed(f, GAP_TOP, GAP_TOP + 3);
        let r2 = gap_verify(&bad, &coeffs, &w, Some(guaranteed))?;
        b.check(
            format!("p={p}: widened last gap breaks the bound"),
            Basis::Computed,
            !r2.check.verdict,
            json!({ "first_violation": r2.check.first_violation }),
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_name() {
        assert!(matches!(run_fixture("nope"), Err(RegistryError::UnknownFixture(_))));
    }

    #[test]
    fn char_p_fixtures_match() {
        for n in ["ex_saavedra", "chevalley", "gap_sharpness", "bad_ex", "ex4"] {
            let r = run_fixture(n).unwrap();
            assert!(r.matches, "{}", serde_json::to_string_pretty(&r).unwrap());
        }
    }
}
