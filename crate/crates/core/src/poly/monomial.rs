use std::cmp::Ordering;
use std::fmt;

use crate::{Error, Result};

/// Maximum number of ring variables.
pub const MAX_VARS: usize = 32;

/// A monomial `∏ x_i^{e_i}` in at most [`MAX_VARS`] variables.
///
/// Exponents are kept densely; absent variables have exponent 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    degree: u16,
    /// bit `i` set iff `e_i > 0`
    support: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS], degree: 0, support: 0 };

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u8) -> Self {
        assert!(i < MAX_VARS);
        let mut m = Self::ONE;
        if e > 0 {
            m.exps[i] = e;
            m.degree = e as u16;
            m.support = 1 << i;
        }
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::VariableCap { vars: exps.len(), cap: MAX_VARS });
        }
        let mut m = Self::ONE;
        for (i, &e) in exps.iter().enumerate() {
            let e = u8::try_from(e).map_err(|_| Error::Overflow(format!("exponent {e}")))?;
            m.exps[i] = e;
            m.degree += e as u16;
            if e > 0 {
                m.support |= 1 << i;
            }
        }
        Ok(m)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn degree(&self) -> u32 {
        self.degree as u32
    }

    pub fn support(&self) -> u32 {
        self.support
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// `(index, exponent)` for every variable present.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        (0..MAX_VARS)
            .filter(|i| self.support >> i & 1 == 1)
            .map(|i| (i, self.exps[i] as u32))
    }

    /// True iff `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.support & !other.support != 0 || self.degree > other.degree {
            return false;
        }
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.support & other.support == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .expect("monomial exponent overflow");
        }
        out.degree = self.degree + other.degree;
        out.support = self.support | other.support;
        out
    }

    /// `self / other`; caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        let mut out = Self::ONE;
        for i in 0..MAX_VARS {
            let e = self.exps[i] - other.exps[i];
            out.exps[i] = e;
            if e > 0 {
                out.support |= 1 << i;
            }
        }
        out.degree = self.degree - other.degree;
        out
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Self::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].max(other.exps[i]);
            out.degree += out.exps[i] as u16;
        }
        out.support = self.support | other.support;
        out
    }

    /// Same monomial with variable `i` raised to `e` (0 removes it).
    pub fn with_exponent(&self, i: usize, e: u8) -> Monomial {
        let mut out = *self;
        out.degree = out.degree - out.exps[i] as u16 + e as u16;
        out.exps[i] = e;
        if e > 0 {
            out.support |= 1 << i;
        } else {
            out.support &= !(1 << i);
        }
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(i, e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Monomial orders. Variables are ranked `x_0 > x_1 > …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Degree reverse lexicographic.
    #[default]
    DegRevLex,
    /// Pure lexicographic; not degree-compatible.
    Lex,
}

impl MonomialOrder {
    pub fn is_degree_compatible(self) -> bool {
        matches!(self, MonomialOrder::DegRevLex)
    }

    #[inline]
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => a.degree.cmp(&b.degree).then_with(|| {
                for i in (0..MAX_VARS).rev() {
                    if a.exps[i] != b.exps[i] {
                        return b.exps[i].cmp(&a.exps[i]);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::DegRevLex;
        // x0 > x1 > x2 in degree 1
        assert_eq!(o.cmp(&m(&[1]), &m(&[0, 1])), Ordering::Greater);
        // x1^2 > x0*x2 in grevlex (x2 smallest, penalised)
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        // but x0*x2 > x1^2 in lex
        assert_eq!(MonomialOrder::Lex.cmp(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Less);
        // degree first
        assert_eq!(o.cmp(&m(&[0, 0, 2]), &m(&[1])), Ordering::Greater);
        assert_eq!(o.cmp(&Monomial::ONE, &Monomial::ONE), Ordering::Equal);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 2]);
        let b = m(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(b.div(&a), m(&[1, 0, 1]));
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[1, 3, 1]));
        assert_eq!(a.mul(&b), m(&[3, 4, 1]));
        assert!(m(&[1]).is_coprime(&m(&[0, 1])));
        assert_eq!(a.with_exponent(1, 0), m(&[1]));
        assert_eq!(a.with_exponent(1, 0).degree(), 1);
    }

    #[test]
    fn exponent_overflow_rejected() {
        assert!(Monomial::from_exponents(&[300]).is_err());
        assert!(Monomial::from_exponents(&[0; 33]).is_err());
    }
}
