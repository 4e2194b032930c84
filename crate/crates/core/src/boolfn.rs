//! Boolean functions on `F_2^t`.
//!
//! Input `x = (x_1, …, x_t)` sits at table index `Σ x_i 2^{t-i}`, so `x_1`
//! is the most significant bit, the same order the group layer uses for
//! `(Z/2)^t`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::charsum::butterfly;
use crate::group::{DSParams, SubsetMask};
use crate::{Error, Result};

/// Largest arity accepted by [`TruthTable`].
pub const MAX_ARITY: usize = 24;

fn check_arity(t: usize) -> Result<()> {
    if t > MAX_ARITY {
        return Err(Error::DimensionCap { m: t, cap: MAX_ARITY });
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    t: usize,
    words: Vec<u64>,
}

impl TruthTable {
    pub fn zero(t: usize) -> Result<Self> {
        check_arity(t)?;
        Ok(TruthTable { t, words: vec![0; bits::words_for(1 << t)] })
    }

    pub fn from_fn(t: usize, f: impl Fn(usize) -> bool) -> Result<Self> {
        let mut tt = Self::zero(t)?;
        for x in 0..1usize << t {
            if f(x) {
                bits::set(&mut tt.words, x, true);
            }
        }
        Ok(tt)
    }

    pub fn from_bools(values: &[bool]) -> Result<Self> {
        if !values.len().is_power_of_two() {
            return Err(Error::Constraint(format!("table length {} is not a power of two", values.len())));
        }
        let t = values.len().trailing_zeros() as usize;
        Self::from_fn(t, |x| values[x])
    }

    pub fn from_hex(t: usize, s: &str) -> Result<Self> {
        check_arity(t)?;
        Ok(TruthTable { t, words: bits::from_hex(s, 1 << t)? })
    }

    pub fn to_hex(&self) -> String {
        bits::to_hex(&self.words, self.len())
    }

    pub fn arity(&self) -> usize {
        self.t
    }

    pub fn len(&self) -> usize {
        1 << self.t
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, x: usize) -> bool {
        bits::get(&self.words, x)
    }

    pub fn set(&mut self, x: usize, value: bool) {
        bits::set(&mut self.words, x, value);
    }

    pub fn weight(&self) -> usize {
        bits::popcount(&self.words)
    }

    pub fn complement(&self) -> Self {
        Self::from_fn(self.t, |x| !self.get(x)).expect("same arity")
    }

    /// `x ↦ f(x + a)`.
    pub fn shifted(&self, a: usize) -> Self {
        Self::from_fn(self.t, |x| self.get(x ^ a)).expect("same arity")
    }

    pub fn xor(&self, other: &TruthTable) -> Result<Self> {
        if self.t != other.t {
            return Err(Error::ArityMismatch(self.t, other.t));
        }
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect();
        Ok(TruthTable { t: self.t, words })
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len()).map(|x| self.get(x)).collect()
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable(t={}, 0x{})", self.t, self.to_hex())
    }
}

/// Multilinear polynomial over `F_2`. A monomial is a bitmask with bit
/// `i-1` standing for `X_i`; the empty mask is the constant 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct AnfPoly {
    monomials: BTreeSet<u32>,
}

impl AnfPoly {
    pub fn zero() -> Self {
        AnfPoly::default()
    }

    pub fn one() -> Self {
        AnfPoly { monomials: [0].into() }
    }

    /// `X_i`.
    pub fn var(i: usize) -> Result<Self> {
        Self::monomial(&[i])
    }

    /// `∏_{i∈vars} X_i` (repeated indices collapse, since `X² = X`).
    pub fn monomial(vars: &[usize]) -> Result<Self> {
        let mut m = 0u32;
        for &i in vars {
            if i == 0 || i > 32 {
                return Err(Error::VariableOutOfRange { index: i, max: 32 });
            }
            m |= 1 << (i - 1);
        }
        Ok(AnfPoly { monomials: [m].into() })
    }

    pub fn from_masks(masks: impl IntoIterator<Item = u32>) -> Self {
        let mut p = AnfPoly::zero();
        for m in masks {
            p.toggle(m);
        }
        p
    }

    fn toggle(&mut self, m: u32) {
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    pub fn masks(&self) -> impl Iterator<Item = u32> + '_ {
        self.monomials.iter().copied()
    }

    /// Monomials as sorted lists of 1-based variable indices.
    pub fn monomial_lists(&self) -> Vec<Vec<usize>> {
        self.monomials.iter().map(|&m| mask_vars(m)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.monomials.iter().map(|m| m.count_ones()).max().unwrap_or(0)
    }

    /// Largest variable index used, 0 for constants.
    pub fn max_var(&self) -> usize {
        self.monomials.iter().map(|&m| 32 - m.leading_zeros() as usize).max().unwrap_or(0)
    }

    pub fn add(&self, other: &AnfPoly) -> AnfPoly {
        let mut p = self.clone();
        for &m in &other.monomials {
            p.toggle(m);
        }
        p
    }

    pub fn mul(&self, other: &AnfPoly) -> AnfPoly {
        let mut p = AnfPoly::zero();
        for &a in &self.monomials {
            for &b in &other.monomials {
                p.toggle(a | b);
            }
        }
        p
    }

    /// Evaluates at `x`, where `x[i-1]` is the value of `X_i`.
    pub fn eval(&self, x: &[bool]) -> bool {
        self.monomials
            .iter()
            .filter(|&&m| mask_vars(m).iter().all(|&i| x.get(i - 1).copied().unwrap_or(false)))
            .count()
            % 2
            == 1
    }
}

fn mask_vars(m: u32) -> Vec<usize> {
    (0..32).filter(|b| m >> b & 1 == 1).map(|b| b + 1).collect()
}

impl TryFrom<Vec<Vec<usize>>> for AnfPoly {
    type Error = Error;

    fn try_from(lists: Vec<Vec<usize>>) -> Result<Self> {
        let mut p = AnfPoly::zero();
        for l in lists {
            p = p.add(&AnfPoly::monomial(&l)?);
        }
        Ok(p)
    }
}

impl From<AnfPoly> for Vec<Vec<usize>> {
    fn from(p: AnfPoly) -> Self {
        p.monomial_lists()
    }
}

impl fmt::Display for AnfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .monomials
            .iter()
            .map(|&m| {
                if m == 0 {
                    "1".to_string()
                } else {
                    mask_vars(m).iter().map(|i| format!("X{i}")).collect::<Vec<_>>().join("*")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Variable mask of an ANF monomial to the table index of the same
/// variable set.
fn mask_to_index(t: usize, m: u32) -> usize {
    mask_vars(m).iter().map(|&i| 1usize << (t - i)).sum()
}

fn index_to_mask(t: usize, x: usize) -> u32 {
    (1..=t).filter(|&i| x >> (t - i) & 1 == 1).map(|i| 1u32 << (i - 1)).sum()
}

/// Binary Möbius transform over the subset lattice of indices; an
/// involution on `F_2` vectors.
fn moebius(a: &mut [bool]) {
    let n = a.len();
    let mut h = 1;
    while h < n {
        for block in a.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter().zip(hi.iter_mut()) {
                *y ^= *x;
            }
        }
        h *= 2;
    }
}

pub fn anf_to_tt(t: usize, p: &AnfPoly) -> Result<TruthTable> {
    check_arity(t)?;
    if p.max_var() > t {
        return Err(Error::VariableOutOfRange { index: p.max_var(), max: t });
    }
    let mut a = vec![false; 1 << t];
    for m in p.masks() {
        a[mask_to_index(t, m)] = true;
    }
    moebius(&mut a);
    TruthTable::from_bools(&a)
}

pub fn tt_to_anf(f: &TruthTable) -> AnfPoly {
    let mut a = f.to_bools();
    moebius(&mut a);
    let t = f.arity();
    AnfPoly::from_masks((0..a.len()).filter(|&x| a[x]).map(|x| index_to_mask(t, x)))
}

/// The support `{x : f(x) = 1}` as a subset of `(Z/2)^t`.
pub fn support(f: &TruthTable) -> SubsetMask {
    SubsetMask::from_words(f.len(), f.words.clone())
}

pub fn from_support(t: usize, d: &SubsetMask) -> Result<TruthTable> {
    check_arity(t)?;
    if d.universe() != 1 << t {
        return Err(Error::DimensionMismatch { expected: 1 << t, got: d.universe() });
    }
    Ok(TruthTable { t, words: d.words().to_vec() })
}

/// `W_f(u) = Σ_x (−1)^{f(x) + u·x}`.
pub fn walsh(f: &TruthTable) -> Vec<i64> {
    let mut a: Vec<i64> = (0..f.len()).map(|x| if f.get(x) { -1 } else { 1 }).collect();
    butterfly(&mut a);
    a
}

/// Value → multiplicity.
pub fn spectrum_multiplicities(w: &[i64]) -> BTreeMap<i64, usize> {
    let mut m = BTreeMap::new();
    for &x in w {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}

/// `|W_f(u)| = 2^{t/2}` for all `u`. Defined for even `t`, including `t = 2`.
pub fn is_bent(f: &TruthTable) -> Result<bool> {
    let t = f.arity();
    if t % 2 == 1 {
        return Err(Error::OddArity(t));
    }
    let r = 1i64 << (t / 2);
    Ok(walsh(f).iter().all(|w| w.abs() == r))
}

/// Parameters `(2^t, 2^{t-1} ± 2^{(t-2)/2}, 2^{t-2} ± 2^{(t-2)/2})` of the
/// support of a bent function.
pub fn bent_params(t: usize, plus: bool) -> Result<DSParams> {
    if t % 2 == 1 || t == 0 {
        return Err(Error::OddArity(t));
    }
    if t > 62 {
        return Err(Error::DimensionCap { m: t, cap: 62 });
    }
    let h = 1u64 << ((t - 2) / 2);
    let (k, l) = (1u64 << (t - 1), 1u64 << (t - 2));
    let (k, l) = if plus { (k + h, l + h) } else { (k - h, l - h) };
    DSParams::new(1 << t, k, l)
}

/// The bent parameter triple whose `k` matches the weight of `f`, if any.
pub fn bent_params_for_weight(t: usize, weight: u64) -> Result<Option<DSParams>> {
    for plus in [false, true] {
        let p = bent_params(t, plus)?;
        if p.k == weight {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Number of bent functions in `t` variables by testing every truth table.
/// Only `t ≤ 4` is in reach.
pub fn count_bent_exhaustive(t: usize) -> Result<u64> {
    if t % 2 == 1 || t == 0 {
        return Err(Error::OddArity(t));
    }
    if t > 4 {
        return Err(Error::DimensionCap { m: t, cap: 4 });
    }
    let n = 1usize << t;
    let mut count = 0;
    for word in 0..1u64 << n {
        let f = TruthTable::from_fn(t, |x| word >> x & 1 == 1)?;
        if is_bent(&f)? {
            count += 1;
        }
    }
    Ok(count)
}

pub fn hamming_distance(f: &TruthTable, g: &TruthTable) -> Result<usize> {
    Ok(f.xor(g)?.weight())
}
