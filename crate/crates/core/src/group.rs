//! Finite abelian groups `Z/n_1 × … × Z/n_t`, subsets, and the brute-force
//! difference-set oracle.
//!
//! Elements are addressed by their mixed-radix index with the first
//! coordinate most significant, so for `(Z/2)^t` the index of an element is
//! the binary integer spelled by its coordinates.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::{Error, Result};

/// Largest supported group order.
pub const MAX_ORDER: usize = 1 << 24;

/// Default cap on `v` for exhaustive subset enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGroupSpec", into = "RawGroupSpec")]
pub struct GroupSpec {
    moduli: Vec<usize>,
    order: usize,
    /// `strides[l] = n_{l+1} · … · n_t`
    strides: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawGroupSpec {
    moduli: Vec<usize>,
}

impl TryFrom<RawGroupSpec> for GroupSpec {
    type Error = Error;
    fn try_from(raw: RawGroupSpec) -> Result<Self> {
        GroupSpec::new(raw.moduli)
    }
}

impl From<GroupSpec> for RawGroupSpec {
    fn from(g: GroupSpec) -> Self {
        RawGroupSpec { moduli: g.moduli }
    }
}

impl GroupSpec {
    pub fn new(moduli: Vec<usize>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidGroup("at least one modulus required".into()));
        }
        if let Some(&bad) = moduli.iter().find(|&&n| n == 0) {
            return Err(Error::InvalidGroup(format!("modulus {bad} must be positive")));
        }
        let mut order: u64 = 1;
        for &n in &moduli {
            order = order.saturating_mul(n as u64);
            if order > MAX_ORDER as u64 {
                return Err(Error::GroupTooLarge(order));
            }
        }
        let mut strides = vec![1usize; moduli.len()];
        for l in (0..moduli.len().saturating_sub(1)).rev() {
            strides[l] = strides[l + 1] * moduli[l + 1];
        }
        Ok(GroupSpec { moduli, order: order as usize, strides })
    }

    /// `(Z/2)^t`.
    pub fn elementary_2group(t: usize) -> Result<Self> {
        Self::new(vec![2; t])
    }

    /// Parses a comma separated modulus list such as `2,2,3`.
    pub fn parse_moduli(s: &str) -> Result<Self> {
        let moduli = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("modulus {p:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(moduli)
    }

    pub fn moduli(&self) -> &[usize] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// Group order `v`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_elementary_2group(&self) -> bool {
        self.moduli.iter().all(|&n| n == 2)
    }

    /// Exponent of the group, `lcm(n_l)`. This is the cyclotomic level used
    /// for character values.
    pub fn exponent(&self) -> usize {
        self.moduli
            .iter()
            .fold(1, |acc, &n| num_integer::lcm(acc, n))
    }

    pub fn index(&self, e: &GroupElement) -> Result<usize> {
        self.check(e)?;
        Ok(self.index_of(&e.coords))
    }

    fn index_of(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    /// Element with the given index. Panics when `index >= v`.
    pub fn element(&self, index: usize) -> GroupElement {
        assert!(index < self.order, "index {index} out of range");
        GroupElement { coords: self.coords(index) }
    }

    pub(crate) fn coords(&self, index: usize) -> Vec<usize> {
        self.moduli
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| (index / s) % n)
            .collect()
    }

    pub fn element_from_coords(&self, coords: Vec<usize>) -> Result<GroupElement> {
        let e = GroupElement { coords };
        self.check(&e)?;
        Ok(e)
    }

    fn check(&self, e: &GroupElement) -> Result<()> {
        if e.coords.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: e.coords.len() });
        }
        for (&c, &n) in e.coords.iter().zip(&self.moduli) {
            if c >= n {
                return Err(Error::CoordinateOutOfRange { value: c as u64, modulus: n as u64 });
            }
        }
        Ok(())
    }

    /// All elements in ascending index order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(|i| self.element(i))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { coords: vec![0; self.rank()] }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(&self.moduli)
            .map(|((x, y), n)| (x + y) % n)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        let coords = a.coords.iter().zip(&self.moduli).map(|(x, n)| (n - x) % n).collect();
        Ok(GroupElement { coords })
    }

    /// `a - b` on indices.
    pub fn sub_index(&self, a: usize, b: usize) -> usize {
        if self.is_elementary_2group() {
            return a ^ b;
        }
        let mut out = 0;
        for (&n, &s) in self.moduli.iter().zip(&self.strides) {
            let x = (a / s) % n;
            let y = (b / s) % n;
            out += ((x + n - y) % n) * s;
        }
        out
    }

    pub fn add_index(&self, a: usize, b: usize) -> usize {
        if self.is_elementary_2group() {
            return a ^ b;
        }
        let mut out = 0;
        for (&n, &s) in self.moduli.iter().zip(&self.strides) {
            out += (((a / s) % n + (b / s) % n) % n) * s;
        }
        out
    }

    pub fn neg_index(&self, a: usize) -> usize {
        self.sub_index(0, a)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|n| format!("Z/{n}")).collect();
        f.write_str(&parts.join(" x "))
    }
}

/// Canonical coordinates `(i_1*, …, i_t*)` with `0 <= i_l* < n_l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<usize>,
}

impl GroupElement {
    pub fn coords(&self) -> &[usize] {
        &self.coords
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Characteristic vector of a subset of a group of order `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    v: usize,
    words: Vec<u64>,
    count: usize,
}

impl SubsetMask {
    pub fn empty(v: usize) -> Self {
        SubsetMask { v, words: vec![0; bits::words_for(v)], count: 0 }
    }

    pub fn full(v: usize) -> Self {
        let mut m = Self::empty(v);
        for i in 0..v {
            bits::set(&mut m.words, i, true);
        }
        m.count = v;
        m
    }

    pub fn from_indices(v: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut m = Self::empty(v);
        for i in indices {
            if i >= v {
                return Err(Error::CoordinateOutOfRange { value: i as u64, modulus: v as u64 });
            }
            bits::set(&mut m.words, i, true);
        }
        m.count = bits::popcount(&m.words);
        Ok(m)
    }

    pub fn from_bools(bits_in: &[bool]) -> Self {
        let mut m = Self::empty(bits_in.len());
        for (i, &b) in bits_in.iter().enumerate() {
            if b {
                bits::set(&mut m.words, i, true);
            }
        }
        m.count = bits::popcount(&m.words);
        m
    }

    /// Mask for `v <= 64` from the low bits of `word`.
    pub fn from_word(v: usize, word: u64) -> Self {
        assert!(v <= 64);
        let word = if v == 64 { word } else { word & ((1u64 << v) - 1) };
        SubsetMask { v, words: vec![word], count: word.count_ones() as usize }
    }

    pub(crate) fn from_words(v: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), bits::words_for(v));
        let count = bits::popcount(&words);
        SubsetMask { v, words, count }
    }

    pub fn from_hex(v: usize, s: &str) -> Result<Self> {
        Ok(Self::from_words(v, bits::from_hex(s, v)?))
    }

    pub fn to_hex(&self) -> String {
        bits::to_hex(&self.words, self.v)
    }

    /// Size of the ambient group.
    pub fn universe(&self) -> usize {
        self.v
    }

    /// Number of elements in the subset.
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.v && bits::get(&self.words, i)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        bits::iter_ones(&self.words)
    }

    pub fn complement(&self) -> Self {
        let mut out = Self::full(self.v);
        for (o, w) in out.words.iter_mut().zip(&self.words) {
            *o &= !w;
        }
        out.count = self.v - self.count;
        out
    }

    /// `self \ other`
    pub fn difference(&self, other: &SubsetMask) -> Self {
        assert_eq!(self.v, other.v);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        Self::from_words(self.v, words)
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    /// `D^(-1) = {-d : d in D}`.
    pub fn negated(&self, spec: &GroupSpec) -> Self {
        assert_eq!(self.v, spec.order());
        Self::from_indices(self.v, self.iter().map(|i| spec.neg_index(i))).unwrap()
    }

    /// `D + g`.
    pub fn translated(&self, spec: &GroupSpec, g: usize) -> Self {
        assert_eq!(self.v, spec.order());
        Self::from_indices(self.v, self.iter().map(|i| spec.add_index(i, g))).unwrap()
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.v).map(|i| self.contains(i)).collect()
    }
}

/// A `(v, k, λ)` parameter triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DSParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
}

impl DSParams {
    /// Requires `k <= v` and `λ <= k`. Counting consistency is *not*
    /// enforced; see [`DSParams::params_consistent`].
    pub fn new(v: u64, k: u64, lambda: u64) -> Result<Self> {
        if k > v {
            return Err(Error::Constraint(format!("k = {k} exceeds v = {v}")));
        }
        if lambda > k {
            return Err(Error::Constraint(format!("lambda = {lambda} exceeds k = {k}")));
        }
        Ok(DSParams { v, k, lambda })
    }

    /// `k(k-1) = λ(v-1)`.
    pub fn params_consistent(&self) -> bool {
        self.k as u128 * (self.k as u128).saturating_sub(1)
            == self.lambda as u128 * (self.v as u128).saturating_sub(1)
    }

    /// All triples `(v, k, λ)` with `0 <= λ <= k <= v` passing the counting
    /// identity.
    pub fn consistent_for(v: u64) -> Vec<DSParams> {
        let mut out = Vec::new();
        for k in 0..=v {
            for lambda in 0..=k {
                let p = DSParams { v, k, lambda };
                if p.params_consistent() {
                    out.push(p);
                }
            }
        }
        out
    }
}

impl fmt::Display for DSParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.v, self.k, self.lambda)
    }
}

/// Number of ordered pairs `(d1, d2)` in `D × D` with `d1 - d2 = g`.
pub fn diff_count(spec: &GroupSpec, d: &SubsetMask, g: &GroupElement) -> Result<u64> {
    let gi = spec.index(g)?;
    Ok(difference_counts(spec, d)[gi])
}

/// `diff_count` for every group element at once, indexed by element index.
pub fn difference_counts(spec: &GroupSpec, d: &SubsetMask) -> Vec<u64> {
    assert_eq!(d.universe(), spec.order(), "subset does not belong to this group");
    let members: Vec<usize> = d.iter().collect();
    let mut counts = vec![0u64; spec.order()];
    for &a in &members {
        for &b in &members {
            counts[spec.sub_index(a, b)] += 1;
        }
    }
    counts
}

/// Definition check: `|D| = k` and every non-identity element is a
/// difference in exactly `λ` ways. Mismatched `v` yields `false`.
pub fn is_difference_set_bruteforce(spec: &GroupSpec, d: &SubsetMask, params: &DSParams) -> bool {
    if params.v != spec.order() as u64 || d.universe() != spec.order() {
        return false;
    }
    if d.len() as u64 != params.k {
        return false;
    }
    difference_counts(spec, d)
        .iter()
        .skip(1)
        .all(|&c| c == params.lambda)
}

/// Outcome of an exhaustive difference-set scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub count: u64,
    pub sets: Option<Vec<SubsetMask>>,
}

/// Exhaustive scan over all `k`-subsets with the default cap.
pub fn enumerate_difference_sets(
    spec: &GroupSpec,
    params: &DSParams,
    collect: bool,
) -> Result<Enumeration> {
    enumerate_difference_sets_with_cap(spec, params, collect, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_difference_sets_with_cap(
    spec: &GroupSpec,
    params: &DSParams,
    collect: bool,
    cap: usize,
) -> Result<Enumeration> {
    let v = spec.order();
    if v > cap || v > 63 {
        return Err(Error::EnumerationCap { v, cap: cap.min(63) });
    }
    let mut sets = collect.then(Vec::new);
    if params.v != v as u64 || params.k > params.v {
        return Ok(Enumeration { count: 0, sets });
    }
    let k = params.k as usize;
    let sub: Vec<usize> = (0..v * v).map(|ab| spec.sub_index(ab / v, ab % v)).collect();
    let mut counts = vec![0u64; v];
    let mut members = Vec::with_capacity(k);
    let mut count = 0;
    for word in KSubsets::new(v, k) {
        members.clear();
        members.extend((0..v).filter(|i| word >> i & 1 == 1));
        counts.iter_mut().for_each(|c| *c = 0);
        for &a in &members {
            for &b in &members {
                counts[sub[a * v + b]] += 1;
            }
        }
        if counts[1..].iter().all(|&c| c == params.lambda) {
            count += 1;
            if let Some(s) = sets.as_mut() {
                s.push(SubsetMask::from_word(v, word));
            }
        }
    }
    Ok(Enumeration { count, sets })
}

/// All `k`-element subsets of `0..n` as bit words, in increasing numeric
/// order (Gosper's hack).
struct KSubsets {
    n: usize,
    next: Option<u64>,
}

impl KSubsets {
    fn new(n: usize, k: usize) -> Self {
        let next = if k > n {
            None
        } else if k == 0 {
            Some(0)
        } else {
            Some((1u64 << k) - 1)
        };
        KSubsets { n, next }
    }
}

impl Iterator for KSubsets {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let nxt = (((r ^ cur) >> 2) / c) | r;
            (nxt < (1u64 << self.n)).then_some(nxt)
        };
        Some(cur)
    }
}
