//! Packed bit-vector helpers shared by subset masks and truth tables.

use crate::{Error, Result};

pub(crate) fn words_for(nbits: usize) -> usize {
    nbits.div_ceil(64)
}

#[inline]
pub(crate) fn get(words: &[u64], i: usize) -> bool {
    (words[i / 64] >> (i % 64)) & 1 == 1
}

#[inline]
pub(crate) fn set(words: &mut [u64], i: usize, value: bool) {
    let mask = 1u64 << (i % 64);
    if value {
        words[i / 64] |= mask;
    } else {
        words[i / 64] &= !mask;
    }
}

pub(crate) fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

pub(crate) fn iter_ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut rest = w;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(wi * 64 + b)
        })
    })
}

/// Lowercase hex, most significant digit first, bit `i` of the number is
/// position `i`. Always `ceil(nbits / 4)` digits.
pub(crate) fn to_hex(words: &[u64], nbits: usize) -> String {
    let digits = nbits.div_ceil(4).max(1);
    (0..digits)
        .rev()
        .map(|d| {
            let nib = (0..4).fold(0u32, |acc, b| {
                let i = 4 * d + b;
                if i < nbits && get(words, i) {
                    acc | (1 << b)
                } else {
                    acc
                }
            });
            char::from_digit(nib, 16).unwrap()
        })
        .collect()
}

/// Inverse of [`to_hex`]. Accepts an optional `0x` prefix, either case, and
/// fewer digits than the canonical width (implicit leading zeros).
pub(crate) fn from_hex(s: &str, nbits: usize) -> Result<Vec<u64>> {
    let body = s
        .trim()
        .strip_prefix("0x")
        .or_else(|| s.trim().strip_prefix("0X"))
        .unwrap_or(s.trim());
    if body.is_empty() {
        return Err(Error::Parse("empty hex string".into()));
    }
    let max_digits = nbits.div_ceil(4).max(1);
    if body.len() > max_digits {
        return Err(Error::Parse(format!(
            "hex string has {} digits, at most {max_digits} allowed for {nbits} bits",
            body.len()
        )));
    }
    let mut words = vec![0u64; words_for(nbits).max(1)];
    for (d, ch) in body.chars().rev().enumerate() {
        let nib = ch
            .to_digit(16)
            .ok_or_else(|| Error::Parse(format!("invalid hex digit {ch:?}")))?;
        for b in 0..4 {
            if nib >> b & 1 == 1 {
                let i = 4 * d + b;
                if i >= nbits {
                    return Err(Error::Parse(format!("bit {i} set beyond length {nbits}")));
                }
                set(&mut words, i, true);
            }
        }
    }
    words.truncate(words_for(nbits));
    Ok(words)
}
