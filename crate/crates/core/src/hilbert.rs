//! Counting difference sets as points of a zero-dimensional ideal.
//!
//! For a group `G` of order `v` the ideal `J ⊂ K[A_g : g ∈ G]` is generated
//! by `A_g² − A_g` and, for every character `ξ ∈ U`,
//!
//! ```text
//! Ψ(ξ, A) = (Σ_g A_g ξ^g)(Σ_h A_h ξ^{−h}) − λ ρ_G(G)(ξ) − (k − λ).
//! ```
//!
//! Its zeros are exactly the characteristic vectors of the difference sets,
//! and since `J` is radical the number of standard monomials of a Gröbner
//! basis equals that number.

use std::time::Instant;

use num_rational::BigRational;

use crate::charsum::{character_exponents, UnityPoint};
use crate::cyclotomic::{CycNum, CyclotomicField, Rationals};
use crate::groebner::{buchberger, BuchbergerConfig, BuchbergerStats, GroebnerBasis};
use crate::group::{DSParams, GroupSpec};
use crate::poly::{Field, Monomial, MonomialOrder, MultiPoly, VarNames};
use crate::{Error, Result};

/// Default bound on the number of variables `v`.
pub const DEFAULT_VARIABLE_CAP: usize = 16;

/// Fields in which `Σ_j c_j ζ_N^j` can be formed.
pub trait UnitySums: Field {
    fn unity_sum(&self, n: usize, counts: &[i64]) -> Self::Elem;
}

impl UnitySums for Rationals {
    /// Panics unless the sum is rational.
    fn unity_sum(&self, n: usize, counts: &[i64]) -> BigRational {
        if n <= 2 {
            let s: i64 = counts.iter().enumerate().map(|(j, c)| if j % 2 == 1 { -c } else { *c }).sum();
            return self.from_i64(s);
        }
        let f = CyclotomicField::new(n).expect("positive level");
        f.from_int_powers(counts).to_rational().expect("sum is not rational")
    }
}

impl UnitySums for CyclotomicField {
    fn unity_sum(&self, n: usize, counts: &[i64]) -> CycNum {
        assert_eq!(n, self.level());
        self.from_int_powers(counts)
    }
}

fn check_cap(spec: &GroupSpec, cap: usize) -> Result<()> {
    if spec.order() > cap {
        return Err(Error::VariableCap { vars: spec.order(), cap });
    }
    Ok(())
}

/// `Ψ(ξ, A)` for one character.
pub fn psi<F: UnitySums>(f: &F, spec: &GroupSpec, params: &DSParams, xi: &UnityPoint) -> MultiPoly<F::Elem> {
    let v = spec.order();
    let n = spec.exponent();
    let e = character_exponents(spec, xi);
    let mut terms: Vec<(Monomial, F::Elem)> = Vec::with_capacity(v * (v + 1) / 2 + 1);
    for g in 0..v {
        terms.push((Monomial::var_pow(g, 2), f.one()));
        for h in g + 1..v {
            let mut c = vec![0i64; n];
            c[(e[g] + n - e[h]) % n] += 1;
            c[(e[h] + n - e[g]) % n] += 1;
            terms.push((Monomial::var(g).mul(&Monomial::var(h)), f.unity_sum(n, &c)));
        }
    }
    let full = if xi.is_trivial() { v as i64 } else { 0 };
    let lambda = params.lambda as i64;
    let c = lambda * full + (params.k as i64 - lambda);
    terms.push((Monomial::ONE, f.from_i64(-c)));
    MultiPoly::from_terms(f, v, MonomialOrder::DegRevLex, terms)
}

/// `A_g² − A_g`.
pub fn field_equation<F: Field>(f: &F, v: usize, g: usize) -> MultiPoly<F::Elem> {
    MultiPoly::from_terms(
        f,
        v,
        MonomialOrder::DegRevLex,
        [(Monomial::var_pow(g, 2), f.one()), (Monomial::var(g), f.from_i64(-1))],
    )
}

/// `{Ψ(ξ, A) : ξ ∈ U} ∪ {A_g² − A_g : g ∈ G}`, characters first in
/// mixed-radix order.
pub fn build_generators_in<F: UnitySums>(
    f: &F,
    spec: &GroupSpec,
    params: &DSParams,
    cap: usize,
) -> Result<Vec<MultiPoly<F::Elem>>> {
    check_cap(spec, cap)?;
    if params.v != spec.order() as u64 {
        return Err(Error::DimensionMismatch { expected: spec.order(), got: params.v as usize });
    }
    let v = spec.order();
    let mut gens: Vec<_> = UnityPoint::all(spec).map(|xi| psi(f, spec, params, &xi)).collect();
    gens.extend((0..v).map(|g| field_equation(f, v, g)));
    Ok(gens)
}

/// Generators over `Q(ζ_N)`, `N = lcm(n_l)`.
pub fn build_generators(spec: &GroupSpec, params: &DSParams) -> Result<(CyclotomicField, Vec<MultiPoly<CycNum>>)> {
    let f = CyclotomicField::new(spec.exponent())?;
    let gens = build_generators_in(&f, spec, params, DEFAULT_VARIABLE_CAP)?;
    Ok((f, gens))
}

/// Number of standard monomials, or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Finite(u64),
    Infinite,
}

impl Dimension {
    pub fn finite(self) -> Option<u64> {
        match self {
            Dimension::Finite(n) => Some(n),
            Dimension::Infinite => None,
        }
    }
}

impl std::fmt::Display for Dimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dimension::Finite(n) => write!(f, "{n}"),
            Dimension::Infinite => write!(f, "infinite"),
        }
    }
}

/// Counts monomials in `nvars` variables with per-variable exponent bounds
/// `bound[i]` (inclusive) and total degree in `min_deg..=max_deg`, that no
/// monomial of `lms` divides.
fn count_standard(lms: &[Monomial], nvars: usize, bound: &[u32], min_deg: u32, max_deg: u32) -> u64 {
    fn go(
        lms: &[Monomial],
        nvars: usize,
        bound: &[u32],
        min_deg: u32,
        max_deg: u32,
        i: usize,
        cur: Monomial,
    ) -> u64 {
        if i == nvars {
            return (cur.degree() >= min_deg) as u64;
        }
        let mut total = 0;
        let mut m = cur;
        for e in 0..=bound[i] {
            if e > 0 {
                m = m.mul(&Monomial::var(i));
            }
            if m.degree() > max_deg || lms.iter().any(|l| l.divides(&m)) {
                break;
            }
            total += go(lms, nvars, bound, min_deg, max_deg, i + 1, m);
        }
        total
    }
    go(lms, nvars, bound, min_deg, max_deg, 0, Monomial::ONE)
}

/// Pure-power degree bound per variable, or `None` if some variable has
/// no pure power among the leading monomials.
fn pure_power_bounds(lms: &[Monomial], nvars: usize) -> Option<Vec<u32>> {
    (0..nvars)
        .map(|i| {
            lms.iter()
                .filter(|m| m.support() == 1 << i)
                .map(|m| m.exponent(i) - 1)
                .min()
        })
        .collect()
}

/// Dimension of `K[A]/I` from the leading monomials of a Gröbner basis.
pub fn quotient_dimension_of(lms: &[Monomial], nvars: usize) -> Dimension {
    if lms.iter().any(Monomial::is_one) {
        return Dimension::Finite(0);
    }
    match pure_power_bounds(lms, nvars) {
        None => Dimension::Infinite,
        Some(b) => {
            let max = b.iter().sum();
            Dimension::Finite(count_standard(lms, nvars, &b, 0, max))
        }
    }
}

pub fn quotient_dimension<E: Clone + PartialEq>(gb: &GroebnerBasis<E>) -> Dimension {
    quotient_dimension_of(&gb.leading_monomials(), gb.nvars())
}

/// `ᵃHF_I(s)`: standard monomials of degree at most `s`.
pub fn affine_hilbert_function<E: Clone + PartialEq>(gb: &GroebnerBasis<E>, s: u32) -> Result<u64> {
    if !gb.order.is_degree_compatible() {
        return Err(Error::NotDegreeCompatible);
    }
    let lms = gb.leading_monomials();
    if lms.iter().any(Monomial::is_one) {
        return Ok(0);
    }
    let n = gb.nvars();
    Ok(count_standard(&lms, n, &vec![s; n], 0, s))
}

/// `HF(s)`: standard monomials of degree exactly `s` for a homogeneous
/// basis.
pub fn graded_hilbert_function<E: Clone + PartialEq>(gb: &GroebnerBasis<E>, s: u32) -> Result<u64> {
    if !gb.order.is_degree_compatible() {
        return Err(Error::NotDegreeCompatible);
    }
    let lms = gb.leading_monomials();
    let n = gb.nvars();
    Ok(count_standard(&lms, n, &vec![s; n], s, s))
}

/// Affine Hilbert function values `s = 0, 1, …` until two consecutive
/// values agree and match the quotient dimension (or `max_s` is reached).
pub fn affine_hf_sequence<E: Clone + PartialEq>(gb: &GroebnerBasis<E>, max_s: u32) -> Result<Vec<u64>> {
    let target = quotient_dimension(gb).finite();
    let mut out = Vec::new();
    for s in 0..=max_s {
        let h = affine_hilbert_function(gb, s)?;
        out.push(h);
        if Some(h) == target {
            break;
        }
    }
    Ok(out)
}

/// `{f^h : f ∈ G}` with `B` as an extra last (smallest) variable.
pub fn homogenize<E: Clone + PartialEq>(gb: &GroebnerBasis<E>) -> Result<GroebnerBasis<E>> {
    if !gb.order.is_degree_compatible() {
        return Err(Error::NotDegreeCompatible);
    }
    let n = gb.nvars();
    let generators = gb.generators.iter().map(|g| g.homogenize(n, n + 1, gb.order)).collect();
    Ok(GroebnerBasis { generators, order: gb.order, reduced: false })
}

/// A reduced basis over whichever field the group needed.
#[derive(Debug, Clone)]
pub enum IdealBasis {
    Rational(GroebnerBasis<BigRational>),
    Cyclotomic(CyclotomicField, GroebnerBasis<CycNum>),
}

impl IdealBasis {
    pub fn field_level(&self) -> usize {
        match self {
            IdealBasis::Rational(_) => 1,
            IdealBasis::Cyclotomic(f, _) => f.level(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            IdealBasis::Rational(g) => g.generators.len(),
            IdealBasis::Cyclotomic(_, g) => g.generators.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn quotient_dimension(&self) -> Dimension {
        match self {
            IdealBasis::Rational(g) => quotient_dimension(g),
            IdealBasis::Cyclotomic(_, g) => quotient_dimension(g),
        }
    }

    pub fn affine_hf(&self, s: u32) -> Result<u64> {
        match self {
            IdealBasis::Rational(g) => affine_hilbert_function(g, s),
            IdealBasis::Cyclotomic(_, g) => affine_hilbert_function(g, s),
        }
    }

    pub fn affine_hf_sequence(&self, max_s: u32) -> Result<Vec<u64>> {
        match self {
            IdealBasis::Rational(g) => affine_hf_sequence(g, max_s),
            IdealBasis::Cyclotomic(_, g) => affine_hf_sequence(g, max_s),
        }
    }

    /// Graded HF of the homogenized basis at `s`.
    pub fn homogenized_hf(&self, s: u32) -> Result<u64> {
        match self {
            IdealBasis::Rational(g) => graded_hilbert_function(&homogenize(g)?, s),
            IdealBasis::Cyclotomic(_, g) => graded_hilbert_function(&homogenize(g)?, s),
        }
    }

    /// Whether the homogenized generators form a Gröbner basis again.
    pub fn homogenized_is_groebner(&self) -> Result<bool> {
        Ok(match self {
            IdealBasis::Rational(g) => homogenize(g)?.satisfies_buchberger_criterion(&Rationals),
            IdealBasis::Cyclotomic(f, g) => homogenize(g)?.satisfies_buchberger_criterion(f),
        })
    }

    pub fn to_text(&self) -> Vec<String> {
        match self {
            IdealBasis::Rational(g) => g.generators.iter().map(|p| p.to_text(&Rationals, VarNames::Indexed)).collect(),
            IdealBasis::Cyclotomic(f, g) => g.generators.iter().map(|p| p.to_text(f, VarNames::Indexed)).collect(),
        }
    }

    pub fn homogenized_text(&self) -> Result<Vec<String>> {
        Ok(match self {
            IdealBasis::Rational(g) => {
                let n = g.nvars();
                homogenize(g)?.generators.iter().map(|p| p.to_text(&Rationals, VarNames::Homogenized { b: n })).collect()
            }
            IdealBasis::Cyclotomic(f, g) => {
                let n = g.nvars();
                homogenize(g)?.generators.iter().map(|p| p.to_text(f, VarNames::Homogenized { b: n })).collect()
            }
        })
    }
}

/// Result of a Gröbner-based count.
#[derive(Debug, Clone)]
pub struct HilbertCount {
    pub count: u64,
    pub basis: IdealBasis,
    pub stats: BuchbergerStats,
    pub generators: usize,
    pub elapsed_ms: u128,
}

/// Options for [`count_difference_sets_hilbert_with`].
#[derive(Debug, Clone, Copy)]
pub struct HilbertOptions {
    pub buchberger: BuchbergerConfig,
    pub variable_cap: usize,
    /// Use `Q(ζ_N)` even when `N ≤ 2`.
    pub force_cyclotomic: bool,
}

impl Default for HilbertOptions {
    fn default() -> Self {
        HilbertOptions {
            buchberger: BuchbergerConfig::default(),
            variable_cap: DEFAULT_VARIABLE_CAP,
            force_cyclotomic: false,
        }
    }
}

pub fn count_difference_sets_hilbert(spec: &GroupSpec, params: &DSParams) -> Result<HilbertCount> {
    count_difference_sets_hilbert_with(spec, params, &HilbertOptions::default())
}

pub fn count_difference_sets_hilbert_with(
    spec: &GroupSpec,
    params: &DSParams,
    opts: &HilbertOptions,
) -> Result<HilbertCount> {
    let start = Instant::now();
    let n = spec.exponent();
    let (basis, stats, generators) = if n <= 2 && !opts.force_cyclotomic {
        let gens = build_generators_in(&Rationals, spec, params, opts.variable_cap)?;
        let (gb, st) = buchberger(&Rationals, &gens, MonomialOrder::DegRevLex, &opts.buchberger)?;
        (IdealBasis::Rational(gb), st, gens.len())
    } else {
        let f = CyclotomicField::new(n)?;
        let gens = build_generators_in(&f, spec, params, opts.variable_cap)?;
        let (gb, st) = buchberger(&f, &gens, MonomialOrder::DegRevLex, &opts.buchberger)?;
        (IdealBasis::Cyclotomic(f, gb), st, gens.len())
    };
    let count = basis
        .quotient_dimension()
        .finite()
        .ok_or_else(|| Error::Constraint("ideal is not zero-dimensional".into()))?;
    Ok(HilbertCount { count, basis, stats, generators, elapsed_ms: start.elapsed().as_millis() })
}

/// Number of bent functions in `t` variables, as twice the number of
/// `(2^t, 2^{t−1} + 2^{(t−2)/2}, 2^{t−2} + 2^{(t−2)/2})`-difference sets.
pub fn count_bent(t: usize, opts: &HilbertOptions) -> Result<u64> {
    let params = crate::boolfn::bent_params(t, true)?;
    let spec = GroupSpec::elementary_2group(t)?;
    Ok(2 * count_difference_sets_hilbert_with(&spec, &params, opts)?.count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate_difference_sets, is_difference_set_bruteforce, SubsetMask};
    fn g(m: &str) -> GroupSpec {
        GroupSpec::parse_moduli(m).unwrap()
    }

    fn p(v: u64, k: u64, l: u64) -> DSParams {
        DSParams::new(v, k, l).unwrap()
    }

    #[test]
    fn trivial_character_generator() {
        let s = g("2,2");
        let gens = build_generators_in(&Rationals, &s, &p(4, 3, 2), 16).unwrap();
        assert_eq!(gens.len(), 8);
        // (Σ A_g)^2 − 2·4 − 1
        let expect = MultiPoly::parse(
            &Rationals,
            4,
            MonomialOrder::DegRevLex,
            "A_0^2 + 2 * A_0 * A_1 + 2 * A_0 * A_2 + 2 * A_0 * A_3 + A_1^2 + 2 * A_1 * A_2 + 2 * A_1 * A_3 + A_2^2 + 2 * A_2 * A_3 + A_3^2 + -9",
            VarNames::Indexed,
        )
        .unwrap();
        assert_eq!(gens[0], expect);
    }

    #[test]
    fn counts_small_groups() {
        for (m, prm, expect) in [
            ("2,2", p(4, 3, 2), 4),
            ("2,2", p(4, 2, 1), 0),
            ("4", p(4, 3, 2), 4),
            ("2,2,2", p(8, 7, 6), 8),
        ] {
            let s = g(m);
            let h = count_difference_sets_hilbert(&s, &prm).unwrap();
            assert_eq!(h.count, expect, "{m} {prm}");
            assert_eq!(h.count, enumerate_difference_sets(&s, &prm, false).unwrap().count);
        }
    }

    #[test]
    fn inconsistent_params_give_unit_ideal() {
        let h = count_difference_sets_hilbert(&g("2,2"), &p(4, 2, 1)).unwrap();
        assert_eq!(h.basis.len(), 1);
        assert_eq!(h.basis.quotient_dimension(), Dimension::Finite(0));
    }

    #[test]
    fn rational_and_cyclotomic_paths_agree() {
        let s = g("2,2");
        let prm = p(4, 3, 2);
        let a = count_difference_sets_hilbert(&s, &prm).unwrap();
        let opts = HilbertOptions { force_cyclotomic: true, ..Default::default() };
        let b = count_difference_sets_hilbert_with(&s, &prm, &opts).unwrap();
        assert_eq!(a.count, b.count);
        assert_eq!(a.basis.to_text(), b.basis.to_text());
    }

    #[test]
    fn variable_cap() {
        let s = g("17");
        assert!(matches!(
            count_difference_sets_hilbert(&s, &p(17, 1, 0)),
            Err(Error::VariableCap { .. })
        ));
    }

    #[test]
    fn quotient_dimension_cases() {
        let one = GroebnerBasis {
            generators: vec![MultiPoly::constant(&Rationals, 2, MonomialOrder::DegRevLex, Rationals.one())],
            order: MonomialOrder::DegRevLex,
            reduced: true,
        };
        assert_eq!(quotient_dimension(&one), Dimension::Finite(0));
        let x = GroebnerBasis {
            generators: vec![field_equation(&Rationals, 2, 0)],
            order: MonomialOrder::DegRevLex,
            reduced: true,
        };
        assert_eq!(quotient_dimension(&x), Dimension::Infinite);
        assert_eq!(affine_hilbert_function(&x, 3).unwrap(), 1 + 2 + 2 + 2);
    }

    #[test]
    fn hf_examples() {
        let h = count_difference_sets_hilbert(&g("2,2"), &p(4, 3, 2)).unwrap();
        assert_eq!(h.basis.affine_hf(0).unwrap(), 1);
        let seq = h.basis.affine_hf_sequence(10).unwrap();
        assert_eq!(*seq.last().unwrap(), 4);
        assert!(seq.len() <= 4);
        assert!(seq.windows(2).all(|w| w[0] <= w[1]));
        for s in 0..6 {
            assert_eq!(h.basis.affine_hf(s).unwrap(), h.basis.homogenized_hf(s).unwrap());
        }
        assert!(h.basis.homogenized_is_groebner().unwrap());
        let lex = GroebnerBasis::<BigRational> { generators: vec![], order: MonomialOrder::Lex, reduced: true };
        assert!(matches!(affine_hilbert_function(&lex, 1), Err(Error::NotDegreeCompatible)));
    }

    #[test]
    fn homogenize_field_equation() {
        let gb = GroebnerBasis {
            generators: vec![field_equation(&Rationals, 2, 1)],
            order: MonomialOrder::DegRevLex,
            reduced: true,
        };
        let h = homogenize(&gb).unwrap();
        assert_eq!(h.generators[0].to_text(&Rationals, VarNames::Homogenized { b: 2 }), "1 * A_1^2 + -1 * A_1 * B");
        let hom = GroebnerBasis { generators: vec![h.generators[0].clone()], order: h.order, reduced: false };
        let again = homogenize(&hom).unwrap();
        assert_eq!(again.generators[0].terms(), hom.generators[0].extend_vars(4).terms());
    }

    #[test]
    fn count_bent_t2() {
        assert_eq!(count_bent(2, &HilbertOptions::default()).unwrap(), 8);
    }

    #[test]
    fn psi_conjugate_pairs() {
        let s = g("2,3");
        let f = CyclotomicField::new(6).unwrap();
        let prm = p(6, 1, 0);
        for xi in UnityPoint::all(&s) {
            let neg: Vec<usize> = xi.exponents().iter().zip(s.moduli()).map(|(&e, &n)| (n - e) % n).collect();
            let xb = UnityPoint::new(&s, neg).unwrap();
            let a = psi(&f, &s, &prm, &xi).map_coeffs(&f, |c| f.conj(c));
            assert_eq!(a, psi(&f, &s, &prm, &xb));
        }
    }

    fn indicator<F: Field>(f: &F, mask: &SubsetMask) -> Vec<F::Elem> {
        (0..mask.universe()).map(|i| if mask.contains(i) { f.one() } else { f.zero() }).collect()
    }

    #[test]
    fn zeros_are_difference_sets_exhaustive() {
        for (m, prm) in [("2,2", p(4, 3, 2)), ("4", p(4, 3, 2)), ("7", p(7, 3, 1)), ("2,3", p(6, 1, 0))] {
            let s = g(m);
            let (f, gens) = build_generators(&s, &prm).unwrap();
            for w in 0u64..1 << s.order() {
                let d = SubsetMask::from_word(s.order(), w);
                let pt = indicator(&f, &d);
                let zero = gens.iter().all(|q| f.is_zero(&q.eval(&f, &pt)));
                assert_eq!(zero, is_difference_set_bruteforce(&s, &d, &prm), "{m} {w:b}");
            }
        }
    }

    #[test]
    fn hilbert_matches_enumeration() {
        for (m, v) in [("2", 2u64), ("3", 3), ("2,2", 4), ("4", 4), ("5", 5), ("2,3", 6), ("6", 6), ("7", 7)] {
            let s = g(m);
            for prm in DSParams::consistent_for(v).into_iter().filter(|q| q.k <= 4) {
                let h = count_difference_sets_hilbert(&s, &prm).unwrap();
                assert_eq!(h.count, enumerate_difference_sets(&s, &prm, false).unwrap().count, "{m} {prm}");
            }
        }
    }
}
