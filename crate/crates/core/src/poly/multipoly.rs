use std::cmp::Ordering;
use std::collections::HashMap;

use super::{Field, Monomial, MonomialOrder, MAX_VARS};
use crate::{Error, Result};

/// Sparse polynomial; terms are kept strictly decreasing in `order` with no
/// zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly<E> {
    nvars: usize,
    order: MonomialOrder,
    terms: Vec<(Monomial, E)>,
}

/// How variables are printed and parsed in the textual polynomial format.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarNames {
    /// Every variable is `A_i`.
    Indexed,
    /// Variable `b` is the homogenizing variable `B`, the rest are `A_i`.
    Homogenized { b: usize },
}

impl VarNames {
    fn name(self, i: usize) -> String {
        match self {
            VarNames::Homogenized { b } if b == i => "B".to_string(),
            _ => format!("A_{i}"),
        }
    }

    fn index(self, name: &str) -> Result<usize> {
        if name == "B" {
            if let VarNames::Homogenized { b } = self {
                return Ok(b);
            }
        }
        name.strip_prefix("A_")
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))
    }
}

impl<E: Clone + PartialEq> MultiPoly<E> {
    pub fn zero(nvars: usize, order: MonomialOrder) -> Self {
        assert!(nvars <= MAX_VARS, "too many variables");
        MultiPoly { nvars, order, terms: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Terms in decreasing monomial order.
    pub fn terms(&self) -> &[(Monomial, E)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&E> {
        self.terms.first().map(|t| &t.1)
    }

    /// Highest total degree among the terms (0 for the zero polynomial).
    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.total_degree();
        self.terms.iter().all(|t| t.0.degree() == d)
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, nvars: usize, order: MonomialOrder, c: E) -> Self {
        Self::from_terms(f, nvars, order, [(Monomial::ONE, c)])
    }

    /// Collects terms, merging repeated monomials and dropping zeros.
    pub fn from_terms<F: Field<Elem = E>>(
        f: &F,
        nvars: usize,
        order: MonomialOrder,
        terms: impl IntoIterator<Item = (Monomial, E)>,
    ) -> Self {
        let mut acc: HashMap<Monomial, E> = HashMap::new();
        for (m, c) in terms {
            debug_assert!(m.support() >> nvars == 0, "monomial uses variable beyond nvars");
            match acc.get_mut(&m) {
                Some(e) => f.add_assign(e, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, E)> = acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        MultiPoly { nvars, order, terms }
    }

    pub(crate) fn drop_leading_term(&mut self) {
        if !self.terms.is_empty() {
            self.terms.remove(0);
        }
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        MultiPoly { nvars: self.nvars, order, terms }
    }

    /// Same polynomial viewed in a ring with more variables.
    pub fn extend_vars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars && nvars <= MAX_VARS);
        MultiPoly { nvars, order: self.order, terms: self.terms.clone() }
    }

    fn merge<F: Field<Elem = E>>(
        &self,
        f: &F,
        other: impl Iterator<Item = (Monomial, E)>,
    ) -> Self {
        let order = self.order;
        let mut out = Vec::with_capacity(self.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => break,
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let (m, c) = a.next().unwrap();
                    let (_, d) = b.next().unwrap();
                    let s = f.add(c, &d);
                    if !f.is_zero(&s) {
                        out.push((*m, s));
                    }
                }
            }
        }
        MultiPoly { nvars: self.nvars, order, terms: out }
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.check_compatible(other);
        self.merge(f, other.terms.iter().cloned())
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.check_compatible(other);
        self.merge(f, other.terms.iter().map(|(m, c)| (*m, f.neg(c))))
    }

    /// `self - c · m · g`.
    pub fn sub_scaled_shifted<F: Field<Elem = E>>(
        &self,
        f: &F,
        c: &E,
        m: &Monomial,
        g: &Self,
    ) -> Self {
        self.check_compatible(g);
        self.merge(f, g.terms.iter().map(|(gm, gc)| (gm.mul(m), f.neg(&f.mul(c, gc)))))
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        if f.is_zero(c) {
            return Self::zero(self.nvars, self.order);
        }
        let terms = self.terms.iter().map(|(m, x)| (*m, f.mul(x, c))).collect();
        MultiPoly { nvars: self.nvars, order: self.order, terms }
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.check_compatible(other);
        let mut acc: HashMap<Monomial, E> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let p = f.mul(c1, c2);
                match acc.get_mut(&m) {
                    Some(e) => f.add_assign(e, &p),
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        Self::from_terms(f, self.nvars, self.order, acc)
    }

    /// Divides by the leading coefficient.
    pub fn monic<F: Field<Elem = E>>(&self, f: &F) -> Self {
        match self.leading_coeff() {
            Some(c) if !f.is_one(c) => self.scale(f, &f.inv(c)),
            _ => self.clone(),
        }
    }

    pub fn eval<F: Field<Elem = E>>(&self, f: &F, point: &[E]) -> E {
        assert!(point.len() >= self.nvars);
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.iter() {
                for _ in 0..e {
                    t = f.mul(&t, &point[i]);
                }
            }
            f.add_assign(&mut acc, &t);
        }
        acc
    }

    pub fn map_coeffs<G: Field>(&self, g: &G, map: impl Fn(&E) -> G::Elem) -> MultiPoly<G::Elem> {
        MultiPoly::from_terms(g, self.nvars, self.order, self.terms.iter().map(|(m, c)| (*m, map(c))))
    }

    /// `f^h = B^{deg f} f(A / B)` with `B` the variable `b`.
    pub fn homogenize(&self, b: usize, nvars: usize, order: MonomialOrder) -> Self {
        assert!(b < nvars && nvars <= MAX_VARS && nvars >= self.nvars);
        let d = self.total_degree();
        let mut terms: Vec<(Monomial, E)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                assert_eq!(m.exponent(b), 0, "homogenizing variable already in use");
                let e = u8::try_from(d - m.degree()).expect("degree overflow");
                (m.mul(&Monomial::var_pow(b, e)), c.clone())
            })
            .collect();
        terms.sort_by(|x, y| order.cmp(&y.0, &x.0));
        MultiPoly { nvars, order, terms }
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.order, other.order, "monomial order mismatch");
    }

    /// Textual form `c * A_3^2 * A_7 + …`.
    pub fn to_text<F: Field<Elem = E>>(&self, f: &F, names: VarNames) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut parts = vec![f.format(c)];
                parts.extend(m.iter().map(|(i, e)| {
                    if e == 1 {
                        names.name(i)
                    } else {
                        format!("{}^{e}", names.name(i))
                    }
                }));
                parts.join(" * ")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses the format produced by [`MultiPoly::to_text`]. A term without
    /// a leading coefficient has coefficient 1.
    pub fn parse<F: Field<Elem = E>>(
        f: &F,
        nvars: usize,
        order: MonomialOrder,
        text: &str,
        names: VarNames,
    ) -> Result<Self> {
        let text = text.trim();
        if text == "0" {
            return Ok(Self::zero(nvars, order));
        }
        let mut terms = Vec::new();
        for term in split_top(text, '+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse("empty term".into()));
            }
            let mut coeff = f.one();
            let mut mono = Monomial::ONE;
            for (pos, factor) in split_top(term, '*').into_iter().enumerate() {
                let factor = factor.trim();
                let is_coeff = factor
                    .chars()
                    .next()
                    .is_some_and(|ch| ch.is_ascii_digit() || ch == '-' || ch == '[');
                if is_coeff {
                    if pos != 0 {
                        return Err(Error::Parse(format!("coefficient {factor:?} not in leading position")));
                    }
                    coeff = f.parse(factor)?;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n.trim(),
                        e.trim()
                            .parse::<u8>()
                            .map_err(|e| Error::Parse(format!("exponent in {factor:?}: {e}")))?,
                    ),
                    None => (factor, 1),
                };
                let i = names.index(name)?;
                if i >= nvars {
                    return Err(Error::VariableOutOfRange { index: i, max: nvars.saturating_sub(1) });
                }
                mono = mono.mul(&Monomial::var_pow(i, exp));
            }
            terms.push((mono, coeff));
        }
        Ok(Self::from_terms(f, nvars, order, terms))
    }
}

/// Splits on `sep` outside square brackets.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}
