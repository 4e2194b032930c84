//! Canned configurations with their quoted values, compared against what
//! the library computes.

use serde::Serialize;
use serde_json::{json, Value};

use crate::boolfn::{bent_params, hamming_distance, is_bent, spectrum_multiplicities, support, walsh, AnfPoly};
use crate::carlet::{build_f, delta_family_value, family_theorem52, lemma51_sum, CarletSpec, SubspaceSpec};
use crate::charsum::{criterion_value, criterion_value_2group, spectrum_2group, UnityPoint};
use crate::group::{DSParams, GroupSpec, SubsetMask};
use crate::{Error, Result};

pub const CASES: [&str; 4] = ["ex61", "ex62", "thm52", "lemma51"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub computed: Value,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub checks: Vec<Check>,
    pub all_ok: bool,
}

impl CaseReport {
    fn new(case: &str, checks: Vec<Check>) -> Self {
        let all_ok = checks.iter().all(|c| c.ok);
        CaseReport { case: case.to_string(), checks, all_ok }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }
}

fn check(name: impl Into<String>, expected: impl Serialize, computed: impl Serialize) -> Check {
    let expected = json!(expected);
    let computed = json!(computed);
    let ok = expected == computed;
    Check { name: name.into(), expected, computed, ok }
}

pub fn reproduce(case: &str) -> Result<CaseReport> {
    match case {
        "ex61" => sweep_t8_report(),
        "ex62" => t12_report(),
        "thm52" => family_report(3..=6),
        "lemma51" => lemma51_report(3..=10),
        _ => Err(Error::Parse(format!("unknown case {case:?}; expected one of {CASES:?}"))),
    }
}

/// `L = span(e_3, e_4)`, `P = αX₂X₃ + βX₂X₄ + γX₃X₄ + δX₂X₃X₄` in `F_2^4`.
pub fn sweep_spec_t8(alpha: bool, beta: bool, gamma: bool, delta: bool) -> CarletSpec {
    let mut lists: Vec<Vec<usize>> = Vec::new();
    for (on, mono) in [(alpha, vec![2, 3]), (beta, vec![2, 4]), (gamma, vec![3, 4]), (delta, vec![2, 3, 4])] {
        if on {
            lists.push(mono);
        }
    }
    let p = AnfPoly::try_from(lists).expect("valid monomials");
    CarletSpec::new(4, p, SubspaceSpec::coordinate(4, [3, 4]).expect("valid")).expect("valid")
}

/// `L = span(e_3, …, e_6)`, `P = X₃X₄ + X₅X₆` in `F_2^6`.
pub fn spec_t12() -> CarletSpec {
    let p = AnfPoly::try_from(vec![vec![3, 4], vec![5, 6]]).expect("valid monomials");
    CarletSpec::new(6, p, SubspaceSpec::coordinate(6, 3..=6).expect("valid")).expect("valid")
}

/// Bent parameters on the side of `2^{t-1}` where `|D|` lies. Both have
/// `k − λ = 2^{t−2}`, so away from the trivial point the choice does not
/// change the criterion value.
pub fn bent_params_near(t: usize, d: &SubsetMask) -> Result<DSParams> {
    bent_params(t, d.len() >= 1 << (t - 1))
}

/// Criterion value at the point `signs` for the support of `spec`'s function.
pub fn carlet_criterion_value(spec: &CarletSpec, signs: &[i32]) -> Result<i64> {
    let t = 2 * spec.m();
    let g = GroupSpec::elementary_2group(t)?;
    let d = support(&build_f(spec)?);
    let params = bent_params_near(t, &d)?;
    let xi = UnityPoint::from_signs(&g, signs)?;
    let u = xi.index(&g)?;
    let rho = spectrum_2group(&g, &d)?[u];
    let fast = criterion_value_2group(rho, &params, u == 0);
    let exact = criterion_value(&g, &d, &params, &xi).to_i64();
    if exact != Some(fast) {
        return Err(Error::Constraint(format!("criterion paths disagree: {fast} vs {exact:?}")));
    }
    Ok(fast)
}

pub const POINT_T8_GAMMA: [i32; 8] = [1, 1, 1, 1, -1, 1, 1, 1];
pub const POINT_T8_DELTA: [i32; 8] = [1, -1, 1, 1, -1, 1, 1, 1];
pub const POINT_T12: [i32; 12] = [1, 1, 1, 1, 1, 1, -1, 1, 1, 1, 1, 1];

fn sweep_t8_report() -> Result<CaseReport> {
    let mut checks = Vec::new();
    for bits in 0..16u32 {
        let (a, b, c, d) = (bits >> 3 & 1 == 1, bits >> 2 & 1 == 1, bits >> 1 & 1 == 1, bits & 1 == 1);
        let tag = format!("({},{},{},{})", a as u8, b as u8, c as u8, d as u8);
        let spec = sweep_spec_t8(a, b, c, d);
        let f = build_f(&spec)?;
        checks.push(check(format!("bent{tag}"), !c && !d, is_bent(&f)?));
        if c {
            checks.push(check(
                format!("criterion{tag} at (1,1,1,1,-1,1,1,1)"),
                -64,
                carlet_criterion_value(&spec, &POINT_T8_GAMMA)?,
            ));
        } else if d {
            let expect = if a && b { 192 } else { -64 };
            checks.push(check(
                format!("criterion{tag} at (1,-1,1,1,-1,1,1,1)"),
                expect,
                carlet_criterion_value(&spec, &POINT_T8_DELTA)?,
            ));
        }
        if !c && !d {
            let s = support(&f).len() as u64;
            checks.push(check(format!("support size{tag} in {{120,136}}"), true, s == 120 || s == 136));
        }
    }
    let f = build_f(&sweep_spec_t8(false, false, false, true))?;
    let mult = spectrum_multiplicities(&walsh(&f));
    let expect: Vec<(i64, usize)> = vec![(-32, 8), (-16, 104), (0, 48), (16, 88), (32, 8)];
    checks.push(check("spectrum(0,0,0,1)", expect, mult.into_iter().collect::<Vec<_>>()));
    Ok(CaseReport::new("ex61", checks))
}

fn t12_report() -> Result<CaseReport> {
    let spec = spec_t12();
    let f = build_f(&spec)?;
    let checks = vec![
        check("criterion at (1,1,1,1,1,1,-1,1,1,1,1,1)", -768, carlet_criterion_value(&spec, &POINT_T12)?),
        check("bent", false, is_bent(&f)?),
    ];
    Ok(CaseReport::new("ex62", checks))
}

/// All `(m, r, s)` with `1 ≤ r ≤ s ≤ m − 2` and `m` in `ms`.
pub fn family_grid(ms: std::ops::RangeInclusive<usize>) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for m in ms {
        for s in 1..=m.saturating_sub(2) {
            for r in 1..=s {
                out.push((m, r, s));
            }
        }
    }
    out
}

pub fn family_report(ms: std::ops::RangeInclusive<usize>) -> Result<CaseReport> {
    let mut checks = Vec::new();
    for (m, r, s) in family_grid(ms) {
        let tag = format!("({m},{r},{s})");
        let fam = family_theorem52(m, r, s)?;
        let (d, dp) = (support(&fam.f_m), support(&fam.f));
        let size = 1u64 << (m + r - 2);
        checks.push(check(format!("bent f_(pi,L){tag}"), false, is_bent(&fam.f)?));
        checks.push(check(format!("bent f_M{tag}"), true, is_bent(&fam.f_m)?));
        checks.push(check(format!("|D minus D'|{tag}"), size, d.difference(&dp).len() as u64));
        checks.push(check(format!("|D' minus D|{tag}"), size, dp.difference(&d).len() as u64));
        checks.push(check(format!("distance{tag}"), 2 * size, hamming_distance(&fam.f_m, &fam.f)? as u64));
        checks.push(check(format!("delta{tag}"), 1i64 << (s + 1), delta_family_value(m, r, s)?));
    }
    Ok(CaseReport::new("thm52", checks))
}

pub fn lemma51_report(ms: std::ops::RangeInclusive<usize>) -> Result<CaseReport> {
    let mut checks = Vec::new();
    for m in ms {
        for s in 1..=m - 2 {
            checks.push(check(format!("sum({m},{s})"), -2, lemma51_sum(m, s)?));
        }
    }
    Ok(CaseReport::new("lemma51", checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_cases_reproduce() {
        for case in CASES {
            let r = reproduce(case).unwrap();
            let bad: Vec<_> = r.failures().collect();
            assert!(bad.is_empty(), "{case}: {bad:?}");
            assert!(!r.checks.is_empty());
        }
        assert!(reproduce("nope").is_err());
    }

    #[test]
    fn grid_size() {
        // m=3:1, m=4:3, m=5:6, m=6:10
        assert_eq!(family_grid(3..=6).len(), 20);
    }
}
