//! Order-specific polynomial representation used by division and Buchberger.
//!
//! Terms carry their comparison key (see [`TermOrder::key`]) and a 64-bit
//! support mask for quick divisibility rejection. Keys are additive, so the
//! key of `m * t` is computed by adding keys instead of re-evaluating weights.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::monomial::Monomial;
use super::order::TermOrder;
use super::polynomial::Polynomial;
use super::ring::RingRef;
use crate::coeff::Coeff;

#[derive(Clone, Debug)]
pub(crate) struct Term<C> {
    pub key: Box<[i64]>,
    pub exps: Box<[u32]>,
    pub mask: u64,
    pub coeff: C,
}

pub(crate) fn support_mask(e: &[u32]) -> u64 {
    e.iter().enumerate().filter(|(_, &k)| k > 0).fold(0, |m, (v, _)| m | 1u64 << (v % 64))
}

#[inline]
pub(crate) fn divides(a: &[u32], amask: u64, b: &[u32], bmask: u64) -> bool {
    amask & !bmask == 0 && a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Terms sorted by descending key.
#[derive(Clone, Debug)]
pub(crate) struct KeyedPoly<C> {
    pub terms: Vec<Term<C>>,
}

impl<C: Coeff> KeyedPoly<C> {
    pub fn from_poly(p: &Polynomial<C>, order: &TermOrder) -> Self {
        let mut terms: Vec<Term<C>> = p
            .terms()
            .iter()
            .map(|(m, c)| {
                let e = m.exponents();
                Term { key: order.key(e).into(), exps: e.into(), mask: support_mask(e), coeff: c.clone() }
            })
            .collect();
        terms.sort_by(|a, b| b.key.cmp(&a.key));
        KeyedPoly { terms }
    }

    pub fn to_poly(&self, ring: &RingRef) -> Polynomial<C> {
        let mut terms: Vec<(Monomial, C)> =
            self.terms.iter().map(|t| (Monomial::from_exponents(t.exps.to_vec()), t.coeff.clone())).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Polynomial::from_sorted_unchecked(ring, terms)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Term<C> {
        &self.terms[0]
    }

    pub fn make_monic(&mut self) {
        if let Some(t) = self.terms.first() {
            if !t.coeff.is_one() {
                let inv = C::one() / t.coeff.clone();
                for t in &mut self.terms {
                    t.coeff = t.coeff.clone() * inv.clone();
                }
            }
        }
    }

    /// `mult * self` for a monomial multiplier given by exponents and key.
    pub fn shifted(&self, exps: &[u32], key: &[i64], coeff: &C) -> impl Iterator<Item = Term<C>> + '_ {
        let (exps, key, coeff) = (exps.to_vec(), key.to_vec(), coeff.clone());
        self.terms.iter().map(move |t| {
            let e: Box<[u32]> = t.exps.iter().zip(&exps).map(|(a, b)| a + b).collect();
            let mask = support_mask(&e);
            Term {
                key: t.key.iter().zip(&key).map(|(a, b)| a + b).collect(),
                exps: e,
                mask,
                coeff: t.coeff.clone() * coeff.clone(),
            }
        })
    }
}

/// Accumulator ordered by key; `pop_last` yields the largest term.
pub(crate) struct Accumulator<C> {
    map: BTreeMap<Box<[i64]>, (Box<[u32]>, u64, C)>,
}

impl<C: Coeff> Accumulator<C> {
    pub fn new() -> Self {
        Accumulator { map: BTreeMap::new() }
    }

    pub fn add(&mut self, t: Term<C>) {
        match self.map.entry(t.key) {
            Entry::Vacant(v) => {
                if !t.coeff.is_zero() {
                    v.insert((t.exps, t.mask, t.coeff));
                }
            }
            Entry::Occupied(mut o) => {
                let s = o.get().2.clone() + t.coeff;
                if s.is_zero() {
                    o.remove();
                } else {
                    o.get_mut().2 = s;
                }
            }
        }
    }

    pub fn pop_largest(&mut self) -> Option<Term<C>> {
        self.map.pop_last().map(|(key, (exps, mask, coeff))| Term { key, exps, mask, coeff })
    }
}

/// Quotient term recorded during division: exponents and coefficient.
pub(crate) type QuotientTerm<C> = (Box<[u32]>, C);

/// Full normal form of `f` modulo `basis`, always reducing by the earliest
/// basis element whose leading monomial divides the current term.
pub(crate) fn reduce<C: Coeff>(
    f: KeyedPoly<C>,
    basis: &[&KeyedPoly<C>],
    quotients: Option<&mut Vec<Vec<QuotientTerm<C>>>>,
) -> KeyedPoly<C> {
    let mut work = Accumulator::new();
    for t in f.terms {
        work.add(t);
    }
    reduce_accumulated(work, basis, quotients)
}

pub(crate) fn reduce_accumulated<C: Coeff>(
    mut work: Accumulator<C>,
    basis: &[&KeyedPoly<C>],
    mut quotients: Option<&mut Vec<Vec<QuotientTerm<C>>>>,
) -> KeyedPoly<C> {
    let mut rem = Vec::new();
    while let Some(t) = work.pop_largest() {
        let hit = basis.iter().position(|g| {
            let l = g.lead();
            divides(&l.exps, l.mask, &t.exps, t.mask)
        });
        let Some(i) = hit else {
            rem.push(t);
            continue;
        };
        let g = basis[i];
        let l = g.lead();
        let factor = t.coeff.clone() / l.coeff.clone();
        let qexps: Vec<u32> = t.exps.iter().zip(l.exps.iter()).map(|(a, b)| a - b).collect();
        let qkey: Vec<i64> = t.key.iter().zip(l.key.iter()).map(|(a, b)| a - b).collect();
        if let Some(q) = quotients.as_deref_mut() {
            q[i].push((qexps.clone().into(), factor.clone()));
        }
        let neg = -factor;
        for u in &g.terms[1..] {
            let e: Box<[u32]> = u.exps.iter().zip(&qexps).map(|(a, b)| a + b).collect();
            let mask = support_mask(&e);
            work.add(Term {
                key: u.key.iter().zip(&qkey).map(|(a, b)| a + b).collect(),
                exps: e,
                mask,
                coeff: u.coeff.clone() * neg.clone(),
            });
        }
    }
    KeyedPoly { terms: rem }
}
