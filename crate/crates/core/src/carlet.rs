//! Carlet's functions `f_(π,L)(x, y) = x·π(y) + 1_{L⊥}(x)` for
//! `π(x) = (x_1 + P(x_2, …, x_m), x_2, …, x_m)`.
//!
//! Vectors of `F_2^m` are packed into a `u32` with `x_i` at bit `m - i`, so
//! the integer value of a vector is its index in the usual binary order.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::boolfn::{anf_to_tt, AnfPoly, TruthTable};
use crate::charsum::delta_poly;
use crate::charsum::UnityPoint;
use crate::group::GroupSpec;
use crate::{Error, Result};

/// Largest `m` for which the `2m`-variable table is built.
pub const MAX_BUILD_M: usize = 12;
/// Default cap on `m` for the C-condition check.
pub const DEFAULT_C_CAP: usize = 16;

fn bit(m: usize, i: usize) -> u32 {
    1 << (m - i)
}

/// Packs a 0/1 list `(x_1, …, x_m)`.
pub fn pack(v: &[u8]) -> Result<u32> {
    if v.len() > 31 {
        return Err(Error::DimensionCap { m: v.len(), cap: 31 });
    }
    let m = v.len();
    let mut out = 0;
    for (i, &b) in v.iter().enumerate() {
        match b {
            0 => {}
            1 => out |= bit(m, i + 1),
            _ => return Err(Error::Parse(format!("vector entry {b} is not 0 or 1"))),
        }
    }
    Ok(out)
}

pub fn unpack(m: usize, x: u32) -> Vec<u8> {
    (1..=m).map(|i| (x & bit(m, i) != 0) as u8).collect()
}

fn dot(a: u32, b: u32) -> bool {
    (a & b).count_ones() % 2 == 1
}

/// Linear subspace of `F_2^m`, kept in reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubspaceSpec {
    m: usize,
    /// Rows sorted by decreasing pivot; each pivot (highest set bit) is
    /// clear in every other row.
    rows: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawSubspace {
    basis: Vec<Vec<u8>>,
}

impl SubspaceSpec {
    /// Span of `vectors`; errors if they are dependent.
    pub fn new(m: usize, vectors: &[u32]) -> Result<Self> {
        let s = Self::span(m, vectors)?;
        if s.dim() != vectors.len() {
            return Err(Error::DependentBasis);
        }
        Ok(s)
    }

    /// Span of any list of vectors.
    pub fn span(m: usize, vectors: &[u32]) -> Result<Self> {
        if m == 0 || m > 31 {
            return Err(Error::DimensionCap { m, cap: 31 });
        }
        let mut rows: Vec<u32> = Vec::new();
        for &v in vectors {
            if v >> m != 0 {
                return Err(Error::DimensionMismatch { expected: m, got: 32 - v.leading_zeros() as usize });
            }
            let r = reduce_by(&rows, v);
            if r != 0 {
                let p = 31 - r.leading_zeros();
                for row in rows.iter_mut() {
                    if *row >> p & 1 == 1 {
                        *row ^= r;
                    }
                }
                rows.push(r);
            }
        }
        rows.sort_unstable_by(|a, b| b.cmp(a));
        Ok(SubspaceSpec { m, rows })
    }

    pub fn zero(m: usize) -> Result<Self> {
        Self::span(m, &[])
    }

    pub fn full(m: usize) -> Result<Self> {
        Self::span(m, &(1..=m).map(|i| bit(m, i)).collect::<Vec<_>>())
    }

    /// `span(e_i : i ∈ indices)` with 1-based indices.
    pub fn coordinate(m: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v = Vec::new();
        for i in indices {
            if i == 0 || i > m {
                return Err(Error::VariableOutOfRange { index: i, max: m });
            }
            v.push(bit(m, i));
        }
        Self::span(m, &v)
    }

    pub fn from_bit_lists(m: usize, basis: &[Vec<u8>]) -> Result<Self> {
        let mut v = Vec::new();
        for b in basis {
            if b.len() != m {
                return Err(Error::DimensionMismatch { expected: m, got: b.len() });
            }
            v.push(pack(b)?);
        }
        Self::new(m, &v)
    }

    pub fn to_bit_lists(&self) -> Vec<Vec<u8>> {
        self.rows.iter().map(|&r| unpack(self.m, r)).collect()
    }

    pub fn ambient_dim(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[u32] {
        &self.rows
    }

    /// Canonical representative of `a + L`.
    pub fn reduce(&self, a: u32) -> u32 {
        reduce_by(&self.rows, a)
    }

    pub fn contains(&self, a: u32) -> bool {
        self.reduce(a) == 0
    }

    fn pivot_mask(&self) -> u32 {
        self.rows.iter().map(|r| 1u32 << (31 - r.leading_zeros())).fold(0, |a, b| a | b)
    }

    /// All `2^dim` elements.
    pub fn elements(&self) -> Vec<u32> {
        let mut out = vec![0u32];
        for &r in &self.rows {
            let n = out.len();
            for i in 0..n {
                out.push(out[i] ^ r);
            }
        }
        out
    }

    /// One reduced representative per coset, `2^{m - dim}` in total.
    pub fn coset_representatives(&self) -> Vec<u32> {
        let free: Vec<u32> = (0..self.m as u32).filter(|b| self.pivot_mask() >> b & 1 == 0).collect();
        (0..1u32 << free.len())
            .map(|c| free.iter().enumerate().filter(|(j, _)| c >> j & 1 == 1).map(|(_, &b)| 1 << b).sum())
            .collect()
    }

    /// `L⊥ = {y : x·y = 0 for all x ∈ L}`.
    pub fn orthogonal_complement(&self) -> SubspaceSpec {
        let pivots = self.pivot_mask();
        let mut v = Vec::new();
        for j in (0..self.m as u32).filter(|j| pivots >> j & 1 == 0) {
            let mut n = 1u32 << j;
            for &r in &self.rows {
                if r >> j & 1 == 1 {
                    n |= 1 << (31 - r.leading_zeros());
                }
            }
            v.push(n);
        }
        SubspaceSpec::new(self.m, &v).expect("null space vectors are independent")
    }

    /// `Some(I)` when `L = span(e_i : i ∈ I)`.
    pub fn coordinate_indices(&self) -> Option<Vec<usize>> {
        let mut idx = Vec::new();
        for &r in &self.rows {
            if r.count_ones() != 1 {
                return None;
            }
            idx.push(self.m - r.trailing_zeros() as usize);
        }
        idx.sort_unstable();
        Some(idx)
    }
}

fn reduce_by(rows: &[u32], mut a: u32) -> u32 {
    for &r in rows {
        let p = 31 - r.leading_zeros();
        if a >> p & 1 == 1 {
            a ^= r;
        }
    }
    a
}

/// `(m, P, L)` with `P ∈ F_2[X_2, …, X_m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarletSpec {
    m: usize,
    p: AnfPoly,
    l: SubspaceSpec,
    /// Vector masks of the monomials of `P`.
    p_masks: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawCarlet {
    m: usize,
    #[serde(rename = "P")]
    p: AnfPoly,
    #[serde(rename = "L")]
    l: RawSubspace,
}

impl CarletSpec {
    pub fn new(m: usize, p: AnfPoly, l: SubspaceSpec) -> Result<Self> {
        if m < 2 {
            return Err(Error::Constraint(format!("m = {m} must be at least 2")));
        }
        if m > 31 {
            return Err(Error::DimensionCap { m, cap: 31 });
        }
        if l.ambient_dim() != m {
            return Err(Error::DimensionMismatch { expected: m, got: l.ambient_dim() });
        }
        if p.max_var() > m {
            return Err(Error::VariableOutOfRange { index: p.max_var(), max: m });
        }
        if p.masks().any(|mk| mk & 1 == 1) {
            return Err(Error::Constraint("P must not involve X_1".into()));
        }
        let p_masks = p
            .masks()
            .map(|mk| (2..=m).filter(|i| mk >> (i - 1) & 1 == 1).map(|i| bit(m, i)).sum())
            .collect();
        Ok(CarletSpec { m, p, l, p_masks })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawCarlet = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let l = SubspaceSpec::from_bit_lists(raw.m, &raw.l.basis)?;
        Self::new(raw.m, raw.p, l)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(RawCarlet {
            m: self.m,
            p: self.p.clone(),
            l: RawSubspace { basis: self.l.to_bit_lists() },
        })
        .expect("plain data")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> &AnfPoly {
        &self.p
    }

    pub fn l(&self) -> &SubspaceSpec {
        &self.l
    }

    /// `P(x_2, …, x_m)`.
    pub fn eval_p(&self, x: u32) -> bool {
        self.p_masks.iter().filter(|&&mk| x & mk == mk).count() % 2 == 1
    }

    /// `π(x)`. Since `P` ignores `x_1`, `π` is an involution.
    pub fn apply_pi(&self, x: u32) -> u32 {
        if self.eval_p(x) {
            x ^ bit(self.m, 1)
        } else {
            x
        }
    }

    pub fn apply_pi_inv(&self, x: u32) -> u32 {
        self.apply_pi(x)
    }

    pub fn apply_pi_vec(&self, x: &[u8]) -> Result<Vec<u8>> {
        if x.len() != self.m {
            return Err(Error::DimensionMismatch { expected: self.m, got: x.len() });
        }
        Ok(unpack(self.m, self.apply_pi(pack(x)?)))
    }
}

/// The `2m`-variable table of `f_(π,L)`, input index `(x << m) | y`.
pub fn build_f(spec: &CarletSpec) -> Result<TruthTable> {
    let m = spec.m;
    if m > MAX_BUILD_M {
        return Err(Error::DimensionCap { m, cap: MAX_BUILD_M });
    }
    let pi: Vec<u32> = (0..1u32 << m).map(|y| spec.apply_pi(y)).collect();
    let lb = spec.l.basis();
    let mask = (1usize << m) - 1;
    TruthTable::from_fn(2 * m, |idx| {
        let x = (idx >> m) as u32;
        let y = idx & mask;
        let in_perp = lb.iter().all(|&b| !dot(x, b));
        dot(x, pi[y]) ^ in_perp
    })
}

/// Outcome of a flatness test of `F`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlatWitness {
    /// The base point `b ∈ F`.
    pub base: u32,
    /// `s1, s2 ∈ F − b` with `s1 + s2 ∉ F − b`.
    pub pair: (u32, u32),
}

/// Whether `F` is an affine subspace; on failure returns a pair showing that
/// `F − b` is not closed under addition.
pub fn flat_test(f: &[u32]) -> Result<Option<FlatWitness>> {
    let Some(&b) = f.first() else { return Err(Error::EmptySet) };
    let s: HashSet<u32> = f.iter().map(|&x| x ^ b).collect();
    let mut basis: Vec<u32> = Vec::new();
    let mut rows: Vec<u32> = Vec::new();
    let mut sorted: Vec<u32> = s.iter().copied().collect();
    sorted.sort_unstable();
    for &x in &sorted {
        let r = reduce_by(&rows, x);
        if r != 0 {
            basis.push(x);
            let p = 31 - r.leading_zeros();
            for row in rows.iter_mut() {
                if *row >> p & 1 == 1 {
                    *row ^= r;
                }
            }
            rows.push(r);
            rows.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    // S contains 0; closure under adding each basis vector forces S = span
    for &g in &basis {
        for &x in &sorted {
            if !s.contains(&(x ^ g)) {
                return Ok(Some(FlatWitness { base: b, pair: (x, g) }));
            }
        }
    }
    Ok(None)
}

pub fn is_flat(f: &[u32]) -> Result<bool> {
    Ok(flat_test(f)?.is_none())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlatCheckReport {
    pub holds: bool,
    pub cosets_checked: usize,
    /// Coset representative `a` with `π^{-1}(a + L)` not flat.
    pub witness_a: Option<u32>,
    pub witness: Option<FlatWitness>,
}

impl FlatCheckReport {
    pub fn to_json(&self, m: usize) -> serde_json::Value {
        serde_json::json!({
            "holds": self.holds,
            "cosets_checked": self.cosets_checked,
            "witness_a": self.witness_a.map(|a| unpack(m, a)),
            "witness_base": self.witness.as_ref().map(|w| unpack(m, w.base)),
            "witness_vectors": self.witness.as_ref().map(|w| [unpack(m, w.pair.0), unpack(m, w.pair.1)]),
        })
    }
}

/// `π^{-1}(a + L)`.
pub fn preimage_coset(spec: &CarletSpec, a: u32) -> Vec<u32> {
    spec.l.elements().into_iter().map(|l| spec.apply_pi_inv(a ^ l)).collect()
}

pub fn check_c_condition(spec: &CarletSpec) -> Result<FlatCheckReport> {
    check_c_condition_with_cap(spec, DEFAULT_C_CAP)
}

/// Tests the C-condition over one representative per coset of `L`.
pub fn check_c_condition_with_cap(spec: &CarletSpec, cap: usize) -> Result<FlatCheckReport> {
    if spec.m > cap {
        return Err(Error::DimensionCap { m: spec.m, cap });
    }
    let reps = spec.l.coset_representatives();
    for (n, &a) in reps.iter().enumerate() {
        if let Some(w) = flat_test(&preimage_coset(spec, a))? {
            return Ok(FlatCheckReport {
                holds: false,
                cosets_checked: n + 1,
                witness_a: Some(a),
                witness: Some(w),
            });
        }
    }
    Ok(FlatCheckReport { holds: true, cosets_checked: reps.len(), witness_a: None, witness: None })
}

/// Re-derives the failure recorded in a negative report.
pub fn verify_witness(spec: &CarletSpec, report: &FlatCheckReport) -> bool {
    let (Some(a), Some(w)) = (report.witness_a, report.witness.as_ref()) else {
        return false;
    };
    let f = preimage_coset(spec, a);
    let s: HashSet<u32> = f.iter().map(|&x| x ^ w.base).collect();
    f.contains(&w.base) && s.contains(&w.pair.0) && s.contains(&w.pair.1) && !s.contains(&(w.pair.0 ^ w.pair.1))
}

/// Verdict of the coordinate-subspace classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseVerdict {
    /// `L = span(e_1..e_s)`: condition holds.
    A,
    /// `L = span(e_{s+1}..e_m)`, no monomial with two indices above `s`.
    B,
    /// `L = span(e_{s+1}..e_m)` and some monomial has two indices above `s`.
    C,
    Unclassified,
}

impl CaseVerdict {
    /// What the verdict predicts for the C-condition.
    pub fn predicts(self) -> Option<bool> {
        match self {
            CaseVerdict::A | CaseVerdict::B => Some(true),
            CaseVerdict::C => Some(false),
            CaseVerdict::Unclassified => None,
        }
    }
}

pub fn classify_coordinate_case(spec: &CarletSpec) -> CaseVerdict {
    let m = spec.m;
    let Some(idx) = spec.l.coordinate_indices() else {
        return CaseVerdict::Unclassified;
    };
    let d = idx.len();
    if d > 0 && idx == (1..=d).collect::<Vec<_>>() {
        return CaseVerdict::A;
    }
    // suffix span(e_{s+1}..e_m), including L = {0} with s = m
    let s = m - d;
    if idx != (s + 1..=m).collect::<Vec<_>>() {
        return CaseVerdict::Unclassified;
    }
    let high: u32 = (s + 1..=m).map(|i| 1u32 << (i - 1)).sum();
    if spec.p.masks().any(|mk| (mk & high).count_ones() >= 2) {
        CaseVerdict::C
    } else {
        CaseVerdict::B
    }
}

fn check_family(m: usize, r: usize, s: usize) -> Result<()> {
    if m < 3 || r < 1 || r > s || s + 2 > m {
        return Err(Error::Constraint(format!("need m >= 3 and 1 <= r <= s <= m-2, got ({m},{r},{s})")));
    }
    if m > MAX_BUILD_M {
        return Err(Error::DimensionCap { m, cap: MAX_BUILD_M });
    }
    Ok(())
}

/// The non-bent family: `P = ∏_{i>r} X_i`, `L = span(e_{s+1}..e_m)`.
#[derive(Debug, Clone)]
pub struct Family {
    pub spec: CarletSpec,
    pub f: TruthTable,
    /// `Σ x_i y_i + ∏_{i>s} (x_i + 1)`.
    pub f_m: TruthTable,
}

pub fn family_theorem52(m: usize, r: usize, s: usize) -> Result<Family> {
    check_family(m, r, s)?;
    let p = AnfPoly::monomial(&(r + 1..=m).collect::<Vec<_>>())?;
    let l = SubspaceSpec::coordinate(m, s + 1..=m)?;
    let spec = CarletSpec::new(m, p, l)?;
    let f = build_f(&spec)?;
    let high: usize = (s + 1..=m).map(|i| 1usize << (m - i)).sum();
    let mask = (1usize << m) - 1;
    let f_m = TruthTable::from_fn(2 * m, |idx| {
        let (x, y) = (idx >> m, idx & mask);
        ((x & y).count_ones() % 2 == 1) ^ (x & high == 0)
    })?;
    Ok(Family { spec, f, f_m })
}

/// `Σ_{x ∈ F_2^{m-s}} (−1)^{Σ x_i + ∏ (x_i + 1)}`.
pub fn lemma51_sum(m: usize, s: usize) -> Result<i64> {
    if m < 3 || s < 1 || s + 2 > m {
        return Err(Error::Constraint(format!("need m >= 3 and 1 <= s <= m-2, got ({m},{s})")));
    }
    let n = m - s;
    if n > 30 {
        return Err(Error::DimensionCap { m: n, cap: 30 });
    }
    Ok((0u64..1 << n)
        .map(|x| {
            let e = x.count_ones() as u64 + (x == 0) as u64;
            if e.is_multiple_of(2) {
                1
            } else {
                -1
            }
        })
        .sum())
}

/// Signs of the point with `ξ_{r+1..s} = −1`, `η_1 = −1`, all others `1`.
pub fn family_point(m: usize, r: usize, s: usize) -> Vec<i32> {
    (1..=2 * m)
        .map(|l| if (r + 1..=s).contains(&l) || l == m + 1 { -1 } else { 1 })
        .collect()
}

/// `Δ(D, D_(π,L))` at [`family_point`], where `D` is the support of the
/// Maiorana–McFarland function of the family.
pub fn delta_family_value(m: usize, r: usize, s: usize) -> Result<i64> {
    let fam = family_theorem52(m, r, s)?;
    let g = GroupSpec::elementary_2group(2 * m)?;
    let xi = UnityPoint::from_signs(&g, &family_point(m, r, s))?;
    let d = crate::boolfn::support(&fam.f_m);
    let dp = crate::boolfn::support(&fam.f);
    delta_poly(&g, &d, &dp, &xi)
        .to_i64()
        .ok_or_else(|| Error::Overflow("Δ is not a machine integer".into()))
}

/// `Σ x_i y_i + x_1 ∏_{i>r} y_i + ∏_{i>s} (x_i + 1)` as a `2m`-variable ANF,
/// with `x_i = X_i` and `y_i = X_{m+i}`.
pub fn family_anf(m: usize, r: usize, s: usize) -> Result<AnfPoly> {
    check_family(m, r, s)?;
    let mut p = AnfPoly::zero();
    for i in 1..=m {
        p = p.add(&AnfPoly::monomial(&[i, m + i])?);
    }
    let mut t: Vec<usize> = vec![1];
    t.extend((r + 1..=m).map(|i| m + i));
    p = p.add(&AnfPoly::monomial(&t)?);
    let mut prod = AnfPoly::one();
    for i in s + 1..=m {
        prod = prod.mul(&AnfPoly::var(i)?.add(&AnfPoly::one()));
    }
    Ok(p.add(&prod))
}

/// Same as [`family_anf`] evaluated to a table.
pub fn family_table_from_anf(m: usize, r: usize, s: usize) -> Result<TruthTable> {
    anf_to_tt(2 * m, &family_anf(m, r, s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{hamming_distance, is_bent, support};
    use proptest::prelude::*;

    fn anf(lists: &[&[usize]]) -> AnfPoly {
        AnfPoly::try_from(lists.iter().map(|l| l.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn spec(m: usize, p: &[&[usize]], l: SubspaceSpec) -> CarletSpec {
        CarletSpec::new(m, anf(p), l).unwrap()
    }

    #[test]
    fn pi_examples() {
        let s = spec(3, &[], SubspaceSpec::zero(3).unwrap());
        for x in 0..8 {
            assert_eq!(s.apply_pi(x), x);
        }
        let s = spec(3, &[&[2, 3]], SubspaceSpec::zero(3).unwrap());
        assert_eq!(s.apply_pi_vec(&[0, 1, 1]).unwrap(), vec![1, 1, 1]);
        assert!(s.apply_pi_vec(&[0, 1]).is_err());
        assert!(CarletSpec::new(3, anf(&[&[1, 2]]), SubspaceSpec::zero(3).unwrap()).is_err());
    }

    #[test]
    fn complement_examples() {
        let z = SubspaceSpec::zero(4).unwrap();
        assert_eq!(z.orthogonal_complement(), SubspaceSpec::full(4).unwrap());
        let l = SubspaceSpec::coordinate(5, 4..=5).unwrap();
        assert_eq!(l.orthogonal_complement(), SubspaceSpec::coordinate(5, 1..=3).unwrap());
    }

    #[test]
    fn subspace_json_shape() {
        let l = SubspaceSpec::from_bit_lists(4, &[vec![0, 0, 1, 0], vec![0, 0, 0, 1]]).unwrap();
        assert_eq!(l, SubspaceSpec::coordinate(4, [3, 4]).unwrap());
        assert!(SubspaceSpec::from_bit_lists(2, &[vec![1, 1], vec![1, 1]]).is_err());
        let s = CarletSpec::from_json(r#"{"m":4,"P":[[3,4]],"L":{"basis":[[0,0,1,0],[0,0,0,1]]}}"#).unwrap();
        assert_eq!(s.l().dim(), 2);
        let back = CarletSpec::from_json(&s.to_json().to_string()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn build_f_definition() {
        let s = spec(3, &[], SubspaceSpec::full(3).unwrap());
        let f = build_f(&s).unwrap();
        for y in 0..8 {
            assert!(f.get(y));
        }
        for x in 1..8usize {
            for y in 0..8usize {
                assert_eq!(f.get(x << 3 | y), (x & y).count_ones() % 2 == 1);
            }
        }
    }

    #[test]
    fn build_f_matches_expansion() {
        let fam = family_theorem52(4, 2, 2).unwrap();
        assert_eq!(fam.f, family_table_from_anf(4, 2, 2).unwrap());
    }

    #[test]
    fn flat_examples() {
        assert!(is_flat(&[5]).unwrap());
        let w = flat_test(&[0b00, 0b01, 0b10]).unwrap().unwrap();
        assert_eq!(w.base, 0);
        assert!(is_flat(&[0b011, 0b101, 0b010, 0b100]).unwrap());
        assert!(matches!(is_flat(&[]), Err(Error::EmptySet)));
    }

    #[test]
    fn c_condition_examples() {
        let a = spec(4, &[&[2, 3, 4], &[3]], SubspaceSpec::coordinate(4, [1, 2]).unwrap());
        assert!(check_c_condition(&a).unwrap().holds);
        assert_eq!(classify_coordinate_case(&a), CaseVerdict::A);
        let l = SubspaceSpec::coordinate(4, [3, 4]).unwrap();
        let b = spec(4, &[&[2, 3]], l.clone());
        assert!(check_c_condition(&b).unwrap().holds);
        let c = spec(4, &[&[3, 4]], l.clone());
        let rep = check_c_condition(&c).unwrap();
        assert!(!rep.holds);
        assert!(verify_witness(&c, &rep));
        assert_eq!(classify_coordinate_case(&spec(4, &[&[2, 3], &[2, 4]], l.clone())), CaseVerdict::B);
        assert_eq!(classify_coordinate_case(&spec(4, &[&[2, 3, 4]], l.clone())), CaseVerdict::C);
        let odd = SubspaceSpec::new(4, &[0b0011]).unwrap();
        assert_eq!(classify_coordinate_case(&spec(4, &[], odd)), CaseVerdict::Unclassified);
        let mid = SubspaceSpec::coordinate(4, [2]).unwrap();
        assert_eq!(classify_coordinate_case(&spec(4, &[], mid)), CaseVerdict::Unclassified);
    }

    #[test]
    fn family_examples() {
        let fam = family_theorem52(3, 1, 1).unwrap();
        assert!(!is_bent(&fam.f).unwrap());
        assert!(is_bent(&fam.f_m).unwrap());
        let fam = family_theorem52(4, 2, 2).unwrap();
        let (d, dp) = (support(&fam.f_m), support(&fam.f));
        assert_eq!(d.difference(&dp).len(), 16);
        let fam = family_theorem52(5, 1, 3).unwrap();
        assert_eq!(hamming_distance(&fam.f_m, &fam.f).unwrap(), 32);
        assert!(family_theorem52(4, 3, 2).is_err());
        assert!(family_theorem52(4, 1, 3).is_err());
    }

    #[test]
    fn lemma51_examples() {
        assert_eq!(lemma51_sum(3, 1).unwrap(), -2);
        assert_eq!(lemma51_sum(8, 1).unwrap(), -2);
        for m in 3..12 {
            assert_eq!(lemma51_sum(m, m - 2).unwrap(), -2);
        }
        assert!(lemma51_sum(3, 2).is_err());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_family_value(3, 1, 1).unwrap(), 4);
        assert_eq!(delta_family_value(4, 2, 2).unwrap(), 8);
        assert_eq!(delta_family_value(6, 2, 4).unwrap(), 32);
    }

    fn arb_subspace(m: usize) -> impl Strategy<Value = SubspaceSpec> {
        proptest::collection::vec(0u32..(1 << m), 0..=m)
            .prop_map(move |v| SubspaceSpec::span(m, &v).unwrap())
    }

    proptest! {
        #[test]
        fn pi_is_involution(m in 2usize..=10, masks in proptest::collection::vec(any::<u32>(), 0..6)) {
            let p = AnfPoly::from_masks(masks.iter().map(|mk| (mk & ((1 << m) - 1)) & !1));
            let s = CarletSpec::new(m, p, SubspaceSpec::zero(m).unwrap()).unwrap();
            for x in 0..1u32 << m {
                prop_assert_eq!(s.apply_pi(s.apply_pi(x)), x);
            }
        }

        #[test]
        fn double_complement((m, l) in (1usize..=8).prop_flat_map(|m| (Just(m), arb_subspace(m)))) {
            let c = l.orthogonal_complement();
            prop_assert_eq!(l.dim() + c.dim(), m);
            for &a in l.basis() {
                for &b in c.basis() {
                    prop_assert!(!dot(a, b));
                }
            }
            prop_assert_eq!(c.orthogonal_complement(), l);
        }

        #[test]
        fn cosets_partition((m, l) in (1usize..=8).prop_flat_map(|m| (Just(m), arb_subspace(m)))) {
            let reps = l.coset_representatives();
            prop_assert_eq!(reps.len(), 1 << (m - l.dim()));
            let mut seen = HashSet::new();
            for &a in &reps {
                prop_assert_eq!(l.reduce(a), a);
                for e in l.elements() {
                    prop_assert!(seen.insert(a ^ e));
                }
            }
        }

        #[test]
        fn translates_are_flat((m, l) in (1usize..=8).prop_flat_map(|m| (Just(m), arb_subspace(m))), a in any::<u32>()) {
            let a = a & ((1 << m) - 1);
            let f: Vec<u32> = l.elements().iter().map(|x| x ^ a).collect();
            prop_assert!(is_flat(&f).unwrap());
        }

        #[test]
        fn witnesses_reproduce(m in 2usize..=5, masks in proptest::collection::vec(any::<u32>(), 0..5), lv in proptest::collection::vec(any::<u32>(), 0..4)) {
            let p = AnfPoly::from_masks(masks.iter().map(|mk| (mk & ((1 << m) - 1)) & !1));
            let l = SubspaceSpec::span(m, &lv.iter().map(|v| v & ((1 << m) - 1)).collect::<Vec<_>>()).unwrap();
            let s = CarletSpec::new(m, p, l).unwrap();
            let rep = check_c_condition(&s).unwrap();
            if !rep.holds {
                prop_assert!(verify_witness(&s, &rep));
            }
        }
    }
}
