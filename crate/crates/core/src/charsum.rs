//! Character sums `ρ_G(T)(ξ)` at roots of unity and the difference-set
//! criteria built from them.
//!
//! A point `ξ ∈ U` is stored by its exponents `(e_1, …, e_t)` with
//! `ξ_l = ζ_{n_l}^{e_l}`. Its value on a group element `g = (i_1, …, i_t)` is
//! `ζ_N^{Σ e_l i_l N/n_l}` where `N = lcm(n_l)`, so every sum lives in one
//! field `Q(ζ_N)`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cyclotomic::{exact_sqrt, CycNum, CyclotomicField};
use crate::poly::Field;
use crate::group::{is_difference_set_bruteforce, DSParams, GroupSpec, SubsetMask};
use crate::{Error, Result};

/// A point of `U`, i.e. a character of `G`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnityPoint {
    exponents: Vec<usize>,
}

impl UnityPoint {
    pub fn new(spec: &GroupSpec, exponents: Vec<usize>) -> Result<Self> {
        if exponents.len() != spec.rank() {
            return Err(Error::DimensionMismatch { expected: spec.rank(), got: exponents.len() });
        }
        for (&e, &n) in exponents.iter().zip(spec.moduli()) {
            if e >= n {
                return Err(Error::CoordinateOutOfRange { value: e as u64, modulus: n as u64 });
            }
        }
        Ok(UnityPoint { exponents })
    }

    pub fn trivial(spec: &GroupSpec) -> Self {
        UnityPoint { exponents: vec![0; spec.rank()] }
    }

    /// From a vector of signs `±1` in a 2-group, e.g. `(1,1,1,1,-1,1,1,1)`.
    pub fn from_signs(spec: &GroupSpec, signs: &[i32]) -> Result<Self> {
        if !spec.is_elementary_2group() {
            return Err(Error::NotElementary2Group);
        }
        let exps = signs
            .iter()
            .map(|&s| match s {
                1 => Ok(0),
                -1 => Ok(1),
                _ => Err(Error::Parse(format!("sign {s} is not ±1"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(spec, exps)
    }

    /// The point whose exponent vector has mixed-radix index `index`.
    pub fn from_index(spec: &GroupSpec, index: usize) -> Self {
        UnityPoint { exponents: spec.element(index).coords().to_vec() }
    }

    pub fn index(&self, spec: &GroupSpec) -> Result<usize> {
        spec.index(&spec.element_from_coords(self.exponents.clone())?)
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// All of `U` in mixed-radix order.
    pub fn all(spec: &GroupSpec) -> impl Iterator<Item = UnityPoint> + '_ {
        (0..spec.order()).map(move |i| UnityPoint::from_index(spec, i))
    }
}

/// The field `Q(ζ_N)` with `N = lcm(n_l)`.
pub fn field_for(spec: &GroupSpec) -> CyclotomicField {
    CyclotomicField::new(spec.exponent()).expect("group exponent is positive")
}

/// Exponent of `ζ_N` in `ξ^g` for every element index `g`.
pub(crate) fn character_exponents(spec: &GroupSpec, xi: &UnityPoint) -> Vec<usize> {
    let n = spec.exponent();
    let scale: Vec<usize> = spec.moduli().iter().map(|&m| n / m).collect();
    (0..spec.order())
        .map(|g| {
            let c = spec.element(g);
            c.coords()
                .iter()
                .zip(xi.exponents())
                .zip(&scale)
                .map(|((&i, &e), &s)| i * e * s)
                .sum::<usize>()
                % n
        })
        .collect()
}

/// `ρ_G(T)(ξ)` as an exact cyclotomic number.
pub fn rho_eval(spec: &GroupSpec, t: &SubsetMask, xi: &UnityPoint) -> CycNum {
    let field = field_for(spec);
    let exps = character_exponents(spec, xi);
    let mut counts = vec![0i64; spec.exponent()];
    for g in t.iter() {
        counts[exps[g]] += 1;
    }
    field.from_int_powers(&counts)
}

/// `ρ_G(G)(ξ)`: `v` at the trivial point, zero elsewhere.
fn rho_full(spec: &GroupSpec, xi: &UnityPoint) -> i64 {
    if xi.is_trivial() {
        spec.order() as i64
    } else {
        0
    }
}

/// `|ρ(D)(ξ)|² − λ·ρ(G)(ξ) − (k − λ)`.
pub fn criterion_value(
    spec: &GroupSpec,
    d: &SubsetMask,
    params: &DSParams,
    xi: &UnityPoint,
) -> CycNum {
    let field = field_for(spec);
    let z = rho_eval(spec, d, xi);
    let rhs = params.lambda as i64 * rho_full(spec, xi) + (params.k as i64 - params.lambda as i64);
    field.sub(&field.norm_sq(&z), &field.from_int(rhs))
}

/// Integer criterion value for 2-groups, from a precomputed `ρ` value.
pub fn criterion_value_2group(rho: i64, params: &DSParams, trivial: bool) -> i64 {
    let lambda = params.lambda as i64;
    let full = if trivial { params.v as i64 } else { 0 };
    rho * rho - lambda * full - (params.k as i64 - lambda)
}

/// Difference-set test through the character sums: `|D| = k` and the
/// criterion value vanishes at every point of `U`.
pub fn is_difference_set_charsum(spec: &GroupSpec, d: &SubsetMask, params: &DSParams) -> bool {
    if params.v != spec.order() as u64 || d.universe() != spec.order() || d.len() as u64 != params.k
    {
        return false;
    }
    if spec.is_elementary_2group() {
        let spec2 = spectrum_2group(spec, d).expect("2-group");
        return spec2
            .iter()
            .enumerate()
            .all(|(u, &r)| criterion_value_2group(r, params, u == 0) == 0);
    }
    UnityPoint::all(spec).all(|xi| criterion_value(spec, d, params, &xi).is_zero())
}

/// In-place butterfly: `a[u] ← Σ_x (−1)^{u·x} a[x]`.
pub fn butterfly(a: &mut [i64]) {
    let n = a.len();
    assert!(n.is_power_of_two(), "length must be a power of two");
    let mut h = 1;
    while h < n {
        for block in a.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (p, q) = (*x, *y);
                *x = p + q;
                *y = p - q;
            }
        }
        h *= 2;
    }
}

/// `ρ(D)(ξ_u) = Σ_{x∈D} (−1)^{u·x}` for every `u ∈ [0, 2^t)`.
pub fn spectrum_2group(spec: &GroupSpec, d: &SubsetMask) -> Result<Vec<i64>> {
    if !spec.is_elementary_2group() {
        return Err(Error::NotElementary2Group);
    }
    if d.universe() != spec.order() {
        return Err(Error::DimensionMismatch { expected: spec.order(), got: d.universe() });
    }
    let mut a = vec![0i64; spec.order()];
    for x in d.iter() {
        a[x] = 1;
    }
    butterfly(&mut a);
    Ok(a)
}

/// Values of `ρ(D)` over all of `U`.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectrumTable {
    /// Indexed by `u`; elementary 2-groups only.
    Integer(Vec<i64>),
    General(Vec<(UnityPoint, CycNum)>),
}

impl SpectrumTable {
    pub fn compute(spec: &GroupSpec, d: &SubsetMask) -> Self {
        if spec.is_elementary_2group() {
            return SpectrumTable::Integer(spectrum_2group(spec, d).expect("2-group"));
        }
        SpectrumTable::General(
            UnityPoint::all(spec).map(|xi| {
                let r = rho_eval(spec, d, &xi);
                (xi, r)
            }).collect(),
        )
    }

    pub fn to_json(&self) -> Value {
        match self {
            SpectrumTable::Integer(v) => json!(v),
            SpectrumTable::General(rows) => Value::Array(
                rows.iter()
                    .map(|(p, c)| {
                        json!({
                            "point": p.exponents(),
                            "coeffs": c.coeffs().iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                        })
                    })
                    .collect(),
            ),
        }
    }
}

/// `Δ(D1, D2)(ξ) = ρ(D1 \ D2)(ξ) − ρ(D2 \ D1)(ξ)`.
pub fn delta_poly(spec: &GroupSpec, d1: &SubsetMask, d2: &SubsetMask, xi: &UnityPoint) -> CycNum {
    let field = field_for(spec);
    let exps = character_exponents(spec, xi);
    let mut counts = vec![0i64; spec.exponent()];
    for g in d1.difference(d2).iter() {
        counts[exps[g]] += 1;
    }
    for g in d2.difference(d1).iter() {
        counts[exps[g]] -= 1;
    }
    field.from_int_powers(&counts)
}

/// The first point where `Δ` leaves its admissible set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExchangeViolation {
    pub u: usize,
    pub point: Vec<usize>,
    pub delta: i64,
    pub rho1: i64,
    /// Admissible values, when they are integers.
    pub admissible: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExchangeReport {
    pub holds: bool,
    pub same_params: bool,
    pub points_checked: usize,
    pub violations: usize,
    pub first_violation: Option<ExchangeViolation>,
    /// `Δ(ξ_u)` for every `u`.
    pub delta: Vec<i64>,
}

/// Checks whether `D2` is a `params2` difference set given that `D1` is a
/// `params1` difference set, through the values of `Δ(D1, D2)` on `U`.
pub fn exchange_check(
    spec: &GroupSpec,
    d1: &SubsetMask,
    params1: &DSParams,
    d2: &SubsetMask,
    params2: &DSParams,
) -> Result<ExchangeReport> {
    if !spec.is_elementary_2group() {
        return Err(Error::NotElementary2Group);
    }
    if !is_difference_set_bruteforce(spec, d1, params1) {
        return Err(Error::NotADifferenceSet { v: params1.v, k: params1.k, lambda: params1.lambda });
    }
    if d2.universe() != spec.order() || params2.v != params1.v {
        return Err(Error::DimensionMismatch { expected: spec.order(), got: d2.universe() });
    }
    let same = params1 == params2;
    let n1 = params1.k as i64 - params1.lambda as i64;
    let n2 = params2.k as i64 - params2.lambda as i64;
    let root1 = exact_sqrt(n1);
    if same && root1.is_none() {
        return Err(Error::NotPerfectSquare(n1));
    }
    let root2 = exact_sqrt(n2);

    let rho1 = spectrum_2group(spec, d1)?;
    let rho2 = spectrum_2group(spec, d2)?;
    let delta: Vec<i64> = rho1.iter().zip(&rho2).map(|(a, b)| a - b).collect();

    let mut violations = 0;
    let mut first = None;
    for (u, (&dl, &r1)) in delta.iter().zip(&rho1).enumerate() {
        let (ok, admissible) = if u == 0 {
            let target = params1.k as i64 - params2.k as i64;
            (dl == target, vec![target])
        } else if same {
            let s = 2 * r1;
            (dl == 0 || dl == s, if s < 0 { vec![s, 0] } else { vec![0, s] })
        } else {
            // ρ2 = ρ1 − Δ must square to k2 − λ2
            let r2 = r1 - dl;
            let adm = match root2 {
                Some(q) => vec![r1 - q, r1 + q],
                None => Vec::new(),
            };
            (r2 * r2 == n2, adm)
        };
        if !ok {
            violations += 1;
            if first.is_none() {
                first = Some(ExchangeViolation {
                    u,
                    point: spec.element(u).coords().to_vec(),
                    delta: dl,
                    rho1: r1,
                    admissible,
                });
            }
        }
    }
    Ok(ExchangeReport {
        holds: violations == 0,
        same_params: same,
        points_checked: delta.len(),
        violations,
        first_violation: first,
        delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::enumerate_difference_sets;
    use proptest::prelude::*;

    fn g(m: &str) -> GroupSpec {
        GroupSpec::parse_moduli(m).unwrap()
    }

    #[test]
    fn rho_examples() {
        let s = g("2,2");
        let d = SubsetMask::from_indices(4, [0, 1, 2]).unwrap();
        let xi = UnityPoint::from_signs(&s, &[-1, -1]).unwrap();
        assert_eq!(rho_eval(&s, &d, &xi).to_i64(), Some(-1));
        let id = SubsetMask::from_indices(4, [0]).unwrap();
        assert_eq!(rho_eval(&s, &id, &xi).to_i64(), Some(1));
        let s6 = g("2,3");
        let full = SubsetMask::full(6);
        for xi in UnityPoint::all(&s6).skip(1) {
            assert!(rho_eval(&s6, &full, &xi).is_zero());
        }
    }

    #[test]
    fn charsum_examples() {
        let s = g("2,2");
        let d = SubsetMask::from_indices(4, [0, 1, 2]).unwrap();
        assert!(is_difference_set_charsum(&s, &d, &DSParams::new(4, 3, 2).unwrap()));
        let s7 = g("7");
        let d7 = SubsetMask::from_indices(7, [1, 2, 4]).unwrap();
        assert!(is_difference_set_charsum(&s7, &d7, &DSParams::new(7, 3, 1).unwrap()));
        let s4 = g("4");
        let d4 = SubsetMask::from_indices(4, [0, 1]).unwrap();
        let p = DSParams::new(4, 2, 1).unwrap();
        assert!(!is_difference_set_charsum(&s4, &d4, &p));
        let xi = UnityPoint::new(&s4, vec![1]).unwrap();
        assert_eq!(criterion_value(&s4, &d4, &p, &xi).to_i64(), Some(1));
    }

    #[test]
    fn spectrum_examples() {
        let s = g("2,2");
        assert_eq!(spectrum_2group(&s, &SubsetMask::empty(4)).unwrap(), vec![0; 4]);
        assert_eq!(spectrum_2group(&s, &SubsetMask::from_indices(4, [0]).unwrap()).unwrap(), vec![1; 4]);
        let d = SubsetMask::from_indices(4, [0, 1, 2]).unwrap();
        assert_eq!(spectrum_2group(&s, &d).unwrap(), vec![3, 1, 1, -1]);
        assert!(spectrum_2group(&g("4"), &SubsetMask::empty(4)).is_err());
    }

    #[test]
    fn delta_examples() {
        let s = g("2,2");
        let d1 = SubsetMask::from_indices(4, [0]).unwrap();
        let d2 = SubsetMask::from_indices(4, [3]).unwrap();
        let xi = UnityPoint::from_signs(&s, &[-1, -1]).unwrap();
        assert!(delta_poly(&s, &d1, &d2, &xi).is_zero());
        assert_eq!(delta_poly(&s, &d1, &SubsetMask::empty(4), &xi).to_i64(), Some(1));
    }

    #[test]
    fn spectrum_table_json() {
        let s = g("3");
        let d = SubsetMask::from_indices(3, [0, 1]).unwrap();
        let t = SpectrumTable::compute(&s, &d);
        let j = t.to_json();
        assert_eq!(j.as_array().unwrap().len(), 3);
        assert_eq!(j[0]["coeffs"][0], "2");
        let t2 = SpectrumTable::compute(&g("2,2"), &SubsetMask::from_indices(4, [0, 1, 2]).unwrap());
        assert_eq!(t2.to_json(), json!([3, 1, 1, -1]));
    }

    // bent supports in (Z/2)^4 given as index sets
    fn support_of(t: usize, f: impl Fn(usize) -> bool) -> SubsetMask {
        SubsetMask::from_bools(&(0..1 << t).map(f).collect::<Vec<_>>())
    }

    #[test]
    fn exchange_examples() {
        let s = GroupSpec::elementary_2group(4).unwrap();
        let bit = |x: usize, i: usize| (x >> (4 - i)) & 1 == 1;
        let d1 = support_of(4, |x| (bit(x, 1) & bit(x, 2)) ^ (bit(x, 3) & bit(x, 4)));
        let d2 = support_of(4, |x| (bit(x, 1) & bit(x, 2)) ^ (bit(x, 3) & bit(x, 4)) ^ bit(x, 1));
        let p = DSParams::new(16, 6, 2).unwrap();
        assert!(is_difference_set_bruteforce(&s, &d2, &p));
        let r = exchange_check(&s, &d1, &p, &d2, &p).unwrap();
        assert!(r.holds);
        let same = exchange_check(&s, &d1, &p, &d1, &p).unwrap();
        assert!(same.holds && same.delta.iter().all(|&x| x == 0));
        // a non-difference set D2 is caught
        let bad = SubsetMask::from_indices(16, [0, 1, 2, 3, 4, 5]).unwrap();
        let r = exchange_check(&s, &d1, &p, &bad, &p).unwrap();
        assert!(!r.holds && r.first_violation.is_some());
        // D1 must be a difference set
        assert!(matches!(
            exchange_check(&s, &bad, &p, &d1, &p),
            Err(Error::NotADifferenceSet { .. })
        ));
        // complement has params (16,10,6)
        let q = DSParams::new(16, 10, 6).unwrap();
        let r = exchange_check(&s, &d1, &p, &d1.complement(), &q).unwrap();
        assert!(r.holds && !r.same_params);
    }

    #[test]
    fn conjugation_of_negated_set() {
        let s = g("3,4");
        let f = field_for(&s);
        let d = SubsetMask::from_indices(12, [1, 5, 6, 11]).unwrap();
        let dn = d.negated(&s);
        for xi in UnityPoint::all(&s) {
            assert_eq!(rho_eval(&s, &dn, &xi), f.conj(&rho_eval(&s, &d, &xi)));
        }
    }

    #[test]
    fn enumeration_agrees_on_small_groups() {
        for (m, p) in [("2,2", (4, 3, 2)), ("4", (4, 3, 2)), ("7", (7, 3, 1)), ("2,2,2", (8, 7, 6))] {
            let s = g(m);
            let p = DSParams::new(p.0, p.1, p.2).unwrap();
            let e = enumerate_difference_sets(&s, &p, true).unwrap();
            for d in e.sets.unwrap() {
                assert!(is_difference_set_charsum(&s, &d, &p));
            }
        }
    }

    fn arb_case() -> impl Strategy<Value = (GroupSpec, u64)> {
        prop_oneof![
            Just("2,2"), Just("4"), Just("2,3"), Just("8"), Just("2,2,2"), Just("3,3"),
            Just("2,4"), Just("7"), Just("5"), Just("2,2,2,2"), Just("4,4"), Just("13"),
        ]
        .prop_flat_map(|m| {
            let s = g(m);
            let v = s.order() as u32;
            (Just(s), 0u64..(1u64 << v))
        })
    }

    proptest! {
        #[test]
        fn charsum_matches_bruteforce((s, word) in arb_case()) {
            let v = s.order();
            let d = SubsetMask::from_word(v, word);
            for p in DSParams::consistent_for(v as u64) {
                prop_assert_eq!(
                    is_difference_set_charsum(&s, &d, &p),
                    is_difference_set_bruteforce(&s, &d, &p)
                );
            }
        }

        #[test]
        fn delta_is_linear((s, word) in arb_case(), other in any::<u64>()) {
            let v = s.order();
            let d1 = SubsetMask::from_word(v, word);
            let d2 = SubsetMask::from_word(v, other);
            let f = field_for(&s);
            for xi in UnityPoint::all(&s) {
                let lhs = delta_poly(&s, &d1, &d2, &xi);
                let rhs = f.sub( &rho_eval(&s, &d1, &xi), &rho_eval(&s, &d2, &xi));
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn butterfly_twice_is_scaled_identity(t in 0usize..9, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let a: Vec<i64> = (0..1usize << t).map(|_| rng.gen_range(-50..50)).collect();
            let mut b = a.clone();
            butterfly(&mut b);
            butterfly(&mut b);
            let n = 1i64 << t;
            prop_assert_eq!(b.iter().map(|x| x / n).collect::<Vec<_>>(), a);
        }

        #[test]
        fn spectrum_zero_is_size(t in 1usize..8, seed in any::<u64>()) {
            let s = GroupSpec::elementary_2group(t).unwrap();
            let v = 1usize << t;
            let d = SubsetMask::from_bools(&(0..v).map(|i| (seed.rotate_left(i as u32) ^ i as u64) & 1 == 1).collect::<Vec<_>>());
            prop_assert_eq!(spectrum_2group(&s, &d).unwrap()[0], d.len() as i64);
        }
    }
}
