//! Buchberger's algorithm with the Gebauer–Möller pair criteria.

use std::time::{Duration, Instant};

use crate::poly::{Field, Monomial, MonomialOrder, MultiPoly};
use crate::{Error, Result};

/// Limits for a Buchberger run.
#[derive(Debug, Clone, Copy)]
pub struct BuchbergerConfig {
    /// Maximum number of single-term reduction steps.
    pub max_reductions: u64,
    pub time_limit: Option<Duration>,
}

impl Default for BuchbergerConfig {
    fn default() -> Self {
        BuchbergerConfig { max_reductions: 1_000_000, time_limit: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerBasis<E> {
    pub generators: Vec<MultiPoly<E>>,
    pub order: MonomialOrder,
    pub reduced: bool,
}

/// Counters from a Buchberger run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuchbergerStats {
    pub pairs_considered: u64,
    pub zero_reductions: u64,
    pub reductions: u64,
}

impl<E: Clone + PartialEq> GroebnerBasis<E> {
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators.iter().filter_map(|g| g.leading_monomial().copied()).collect()
    }

    pub fn nvars(&self) -> usize {
        self.generators.first().map_or(0, |g| g.nvars())
    }

    /// True when the basis is `{1}`, i.e. the ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.generators.iter().any(|g| g.leading_monomial().is_some_and(Monomial::is_one))
    }

    /// Normal form of `p` modulo the basis.
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, p: &MultiPoly<E>) -> MultiPoly<E> {
        let refs: Vec<&MultiPoly<E>> = self.generators.iter().collect();
        let mut steps = 0;
        normal_form(f, p, &refs, &mut steps, u64::MAX).expect("uncapped reduction")
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, p: &MultiPoly<E>) -> bool {
        self.reduce(f, p).is_zero()
    }

    /// Buchberger's criterion: every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion<F: Field<Elem = E>>(&self, f: &F) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| {
            (i + 1..g.len()).all(|j| self.reduce(f, &s_polynomial(f, &g[i], &g[j])).is_zero())
        })
    }
}

/// `S(a, b) = (L/lt(a))·a - (L/lt(b))·b` with `L = lcm(lm a, lm b)`.
pub fn s_polynomial<F: Field>(
    f: &F,
    a: &MultiPoly<F::Elem>,
    b: &MultiPoly<F::Elem>,
) -> MultiPoly<F::Elem> {
    let (la, lb) = (a.leading_monomial().unwrap(), b.leading_monomial().unwrap());
    let l = la.lcm(lb);
    let ca = f.inv(a.leading_coeff().unwrap());
    let cb = f.inv(b.leading_coeff().unwrap());
    let zero = MultiPoly::zero(a.nvars(), a.order());
    let left = zero.sub_scaled_shifted(f, &f.neg(&ca), &l.div(la), a);
    left.sub_scaled_shifted(f, &cb, &l.div(lb), b)
}

/// Full reduction of `p` by `basis` (not necessarily monic).
fn normal_form<F: Field>(
    f: &F,
    p: &MultiPoly<F::Elem>,
    basis: &[&MultiPoly<F::Elem>],
    steps: &mut u64,
    cap: u64,
) -> Result<MultiPoly<F::Elem>> {
    let mut rem: Vec<(Monomial, F::Elem)> = Vec::new();
    let mut cur = p.clone();
    while let Some((m, c)) = cur.terms().first().cloned() {
        let divisor = basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m)));
        match divisor {
            Some(g) => {
                *steps += 1;
                if *steps > cap {
                    return Err(Error::Resource(format!("more than {cap} reduction steps")));
                }
                let factor = f.mul(&c, &f.inv(g.leading_coeff().unwrap()));
                let shift = m.div(g.leading_monomial().unwrap());
                cur = cur.sub_scaled_shifted(f, &factor, &shift, g);
            }
            None => {
                rem.push((m, c));
                cur.drop_leading_term();
            }
        }
    }
    Ok(MultiPoly::from_terms(f, p.nvars(), p.order(), rem))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger<F: Field>(
    f: &F,
    gens: &[MultiPoly<F::Elem>],
    order: MonomialOrder,
    config: &BuchbergerConfig,
) -> Result<(GroebnerBasis<F::Elem>, BuchbergerStats)> {
    if gens.is_empty() {
        return Err(Error::Constraint("empty generator list".into()));
    }
    let start = Instant::now();
    let mut stats = BuchbergerStats::default();
    let mut polys: Vec<MultiPoly<F::Elem>> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<MultiPoly<F::Elem>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.with_order(order))
        .collect();
    inputs.sort_by(|a, b| {
        order
            .cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
            .then(a.len().cmp(&b.len()))
    });

    let mut pending: std::collections::VecDeque<MultiPoly<F::Elem>> = inputs.into();
    loop {
        let next = if let Some(p) = pending.pop_front() {
            Some(p)
        } else {
            select_pair(&mut pairs, order).map(|pair| {
                stats.pairs_considered += 1;
                s_polynomial(f, &polys[pair.i], &polys[pair.j])
            })
        };
        let Some(p) = next else { break };
        if let Some(limit) = config.time_limit {
            if start.elapsed() > limit {
                return Err(Error::Resource(format!("time limit {limit:?} exceeded")));
            }
        }
        let basis: Vec<&MultiPoly<F::Elem>> =
            polys.iter().zip(&active).filter(|(_, &a)| a).map(|(p, _)| p).collect();
        let h = normal_form(f, &p, &basis, &mut stats.reductions, config.max_reductions)?;
        if h.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        let h = h.monic(f);
        if h.leading_monomial().unwrap().is_one() {
            let one = MultiPoly::constant(f, h.nvars(), order, f.one());
            return Ok((GroebnerBasis { generators: vec![one], order, reduced: true }, stats));
        }
        update(&mut polys, &mut active, &mut pairs, h);
        tail_reduce(f, &mut polys, &active, &mut stats.reductions, config.max_reductions)?;
    }

    let kept: Vec<MultiPoly<F::Elem>> =
        polys.into_iter().zip(active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
    Ok((reduce_basis(f, kept, order), stats))
}

fn select_pair(pairs: &mut Vec<Pair>, order: MonomialOrder) -> Option<Pair> {
    // normal strategy: smallest lcm first
    let idx = (0..pairs.len()).min_by(|&a, &b| {
        order
            .cmp(&pairs[a].lcm, &pairs[b].lcm)
            .then((pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j)))
    })?;
    Some(pairs.swap_remove(idx))
}

/// Gebauer–Möller installation of a new basis element.
fn update<E: Clone + PartialEq>(
    polys: &mut Vec<MultiPoly<E>>,
    active: &mut Vec<bool>,
    pairs: &mut Vec<Pair>,
    h: MultiPoly<E>,
) {
    let hi = polys.len();
    let lh = *h.leading_monomial().unwrap();
    let lm = |i: usize| *polys[i].leading_monomial().unwrap();

    let mut c: Vec<Pair> = (0..hi)
        .filter(|&g| active[g])
        .map(|g| Pair { i: g, j: hi, lcm: lh.lcm(&lm(g)) })
        .collect();
    let mut d: Vec<Pair> = Vec::new();
    while let Some(p) = (!c.is_empty()).then(|| c.remove(0)) {
        let coprime = lh.is_coprime(&lm(p.i));
        let dominated = c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm));
        if coprime || !dominated {
            d.push(p);
        }
    }
    let e = d.into_iter().filter(|p| !lh.is_coprime(&lm(p.i)));

    pairs.retain(|p| {
        let l1 = lm(p.i).lcm(&lh);
        let l2 = lm(p.j).lcm(&lh);
        !(lh.divides(&p.lcm) && l1 != p.lcm && l2 != p.lcm)
    });
    pairs.extend(e);

    for g in 0..hi {
        if active[g] && lh.divides(&lm(g)) {
            active[g] = false;
        }
    }
    polys.push(h);
    active.push(true);
}

/// Reduces the tails of older basis elements by the newest one; keeps
/// coefficients from growing along long chains.
fn tail_reduce<F: Field>(
    f: &F,
    polys: &mut [MultiPoly<F::Elem>],
    active: &[bool],
    steps: &mut u64,
    cap: u64,
) -> Result<()> {
    let hi = polys.len() - 1;
    let lh = *polys[hi].leading_monomial().unwrap();
    for g in 0..hi {
        if !active[g] || !polys[g].terms()[1..].iter().any(|(m, _)| lh.divides(m)) {
            continue;
        }
        let mut tail = polys[g].clone();
        tail.drop_leading_term();
        let basis: Vec<&MultiPoly<F::Elem>> =
            (0..polys.len()).filter(|&j| j != g && active[j]).map(|j| &polys[j]).collect();
        let r = normal_form(f, &tail, &basis, steps, cap)?;
        let (lm, lc) = polys[g].terms()[0].clone();
        let lead = MultiPoly::from_terms(f, r.nvars(), r.order(), [(lm, lc)]);
        polys[g] = lead.add(f, &r);
    }
    Ok(())
}

/// Minimizes, inter-reduces and normalizes a Gröbner basis.
fn reduce_basis<F: Field>(
    f: &F,
    mut gs: Vec<MultiPoly<F::Elem>>,
    order: MonomialOrder,
) -> GroebnerBasis<F::Elem> {
    gs.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<MultiPoly<F::Elem>> = Vec::new();
    for g in gs {
        let lg = *g.leading_monomial().unwrap();
        if !minimal.iter().any(|k| k.leading_monomial().unwrap().divides(&lg)) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&MultiPoly<F::Elem>> =
            minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p).collect();
        let mut steps = 0;
        let r = normal_form(f, &minimal[i], &others, &mut steps, u64::MAX).unwrap();
        out.push(r.monic(f));
    }
    GroebnerBasis { generators: out, order, reduced: true }
}
