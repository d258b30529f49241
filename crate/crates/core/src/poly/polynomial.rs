use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::Monomial;
use super::order::TermOrder;
use super::ring::{Ring, RingRef};
use crate::coeff::Coeff;

/// Sparse polynomial with terms in descending canonical monomial order and
/// no zero coefficients.
#[derive(Clone, Debug)]
pub struct Polynomial<C> {
    ring: RingRef,
    terms: Vec<(Monomial, C)>,
}

impl<C: Coeff> PartialEq for Polynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        Ring::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<C: Coeff> Polynomial<C> {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &RingRef, c: C) -> Self {
        Self::term(ring, Monomial::one(ring.len()), c)
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, C::one())
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.len(), i), C::one())
    }

    pub fn term(ring: &RingRef, m: Monomial, c: C) -> Self {
        assert_eq!(m.len(), ring.len(), "monomial length differs from ring size");
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Collects like terms and drops zeros.
    pub fn from_terms<I>(ring: &RingRef, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
    {
        let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), ring.len(), "monomial length differs from ring size");
            accumulate(&mut acc, m, c);
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &RingRef, acc: BTreeMap<Monomial, C>) -> Self {
        Polynomial { ring: ring.clone(), terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Builds from terms already sorted descending with no zeros or repeats.
    pub(crate) fn from_sorted_unchecked(ring: &RingRef, terms: Vec<(Monomial, C)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Single term with coefficient 1.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        match self.terms.as_slice() {
            [(m, c)] if c.is_one() => Some(m),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.iter().find(|(t, _)| t == m).map_or_else(C::zero, |(_, c)| c.clone())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), a.clone() * c.clone())).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by the coefficient of the canonically largest term, giving a
    /// representative that is equal for all nonzero scalar multiples.
    pub fn normalized(&self) -> Self {
        match self.terms.first() {
            Some((_, c)) => self.scale(&(C::one() / c.clone())),
            None => self.clone(),
        }
    }

    pub fn leading(&self, order: &TermOrder) -> Option<&(Monomial, C)> {
        self.terms.iter().max_by_key(|(m, _)| order.key(m.exponents()))
    }

    /// Same polynomial in `target`, variable `v` mapped to `map[v]`.
    pub fn rename(&self, target: &RingRef, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.ring.len());
        Self::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0; target.len()];
                for (v, &k) in m.exponents().iter().enumerate() {
                    e[map[v]] += k;
                }
                (Monomial::from_exponents(e), c.clone())
            }),
        )
    }

    /// Substitutes `images[v]` for variable `v`. All images share one ring.
    pub fn substitute(&self, target: &RingRef, images: &[Polynomial<C>]) -> Self {
        assert_eq!(images.len(), self.ring.len());
        let mut powers: Vec<Vec<Polynomial<C>>> = vec![Vec::new(); images.len()];
        let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut prod = Polynomial::constant(target, c.clone());
            for (v, &k) in m.exponents().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let cache = &mut powers[v];
                if cache.is_empty() {
                    cache.push(Polynomial::one(target));
                }
                while cache.len() <= k as usize {
                    let next = cache.last().unwrap() * &images[v];
                    cache.push(next);
                }
                prod = &prod * &cache[k as usize];
            }
            for (t, a) in prod.terms {
                accumulate(&mut acc, t, a);
            }
        }
        Self::from_map(target, acc)
    }

    /// Terms in descending `order`, formatted with the crate grammar.
    pub fn display_in(&self, order: &TermOrder) -> String {
        let mut terms: Vec<&(Monomial, C)> = self.terms.iter().collect();
        terms.sort_by_cached_key(|(m, _)| std::cmp::Reverse(order.key(m.exponents())));
        format_terms(&self.ring, terms.into_iter())
    }

    fn assert_same_ring(&self, other: &Self) {
        assert!(Ring::same(&self.ring, &other.ring), "polynomials from different rings");
    }
}

fn accumulate<C: Coeff>(acc: &mut BTreeMap<Monomial, C>, m: Monomial, c: C) {
    use std::collections::btree_map::Entry;
    match acc.entry(m) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            let s = o.get().clone() + c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

fn format_monomial(ring: &Ring, m: &Monomial, out: &mut String) {
    use std::fmt::Write;
    let mut first = true;
    for (v, &k) in m.exponents().iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        let _ = write!(out, "{}", ring.var(v));
        if k > 1 {
            let _ = write!(out, "^{k}");
        }
    }
}

fn format_terms<'a, C: Coeff>(ring: &Ring, terms: impl Iterator<Item = &'a (Monomial, C)>) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    for (i, (m, c)) in terms.enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let a = c.abs();
        if m.is_one() {
            let _ = write!(out, "{a}");
        } else {
            if !a.is_one() {
                let _ = write!(out, "{a}*");
            }
            format_monomial(ring, m, &mut out);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<C: Coeff> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(&self.ring, self.terms.iter()))
    }
}

fn merge<C: Coeff>(a: &Polynomial<C>, b: &Polynomial<C>, negate_b: bool) -> Polynomial<C> {
    a.assert_same_ring(b);
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    let take_b = |c: &C| if negate_b { -c.clone() } else { c.clone() };
    while i < a.terms.len() && j < b.terms.len() {
        let (ma, ca) = &a.terms[i];
        let (mb, cb) = &b.terms[j];
        match ma.cmp(mb) {
            std::cmp::Ordering::Greater => {
                out.push((ma.clone(), ca.clone()));
                i += 1;
            }
            std::cmp::Ordering::Less => {
                out.push((mb.clone(), take_b(cb)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let s = ca.clone() + take_b(cb);
                if !s.is_zero() {
                    out.push((ma.clone(), s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a.terms[i..].iter().cloned());
    out.extend(b.terms[j..].iter().map(|(m, c)| (m.clone(), take_b(c))));
    Polynomial { ring: a.ring.clone(), terms: out }
}

impl<C: Coeff> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        merge(self, rhs, false)
    }
}

impl<C: Coeff> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        merge(self, rhs, true)
    }
}

impl<C: Coeff> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        self.scale(&-C::one())
    }
}

impl<C: Coeff> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        self.assert_same_ring(rhs);
        let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                accumulate(&mut acc, ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Polynomial::from_map(&self.ring, acc)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl<C: Coeff> $tr for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $f(self, rhs: Self) -> Polynomial<C> {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<C: Coeff> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ring::Ring;
    use crate::Rational;

    fn ring() -> RingRef {
        Ring::indexed("x", (1..=3).map(|i| vec![i])).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_and_display() {
        let r = ring();
        let x = Polynomial::<Rational>::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let f = &(&x * &x).scale(&q(2, 1)) - &y.scale(&q(1, 3));
        assert_eq!(f.to_string(), "2*x_1^2 - 1/3*x_2");
        let g = &f - &f;
        assert!(g.is_zero());
        assert_eq!(g.to_string(), "0");
        assert_eq!((&x - &y).pow(2).to_string(), "x_1^2 - 2*x_1*x_2 + x_2^2");
        assert_eq!(Polynomial::constant(&r, q(-5, 1)).to_string(), "-5");
    }

    #[test]
    fn substitute_squares() {
        let r = ring();
        let t = Ring::indexed("t", [vec![1], vec![2]]).unwrap();
        let x = Polynomial::<Rational>::var(&r, 0);
        let f = &x * &x;
        let images = vec![
            &Polynomial::var(&t, 0) + &Polynomial::var(&t, 1),
            Polynomial::zero(&t),
            Polynomial::one(&t),
        ];
        assert_eq!(f.substitute(&t, &images).to_string(), "t_1^2 + 2*t_1*t_2 + t_2^2");
    }

    #[test]
    fn normalized_identifies_scalar_multiples() {
        let r = ring();
        let f = &Polynomial::<Rational>::var(&r, 0) - &Polynomial::var(&r, 2);
        assert_eq!(f.scale(&q(-7, 2)).normalized(), f.normalized());
    }
}
