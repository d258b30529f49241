//! Buchberger's algorithm and what is built on it.
//!
//! Pairs are processed by the normal strategy (smallest lcm degree, then
//! lexicographic pair index). Only the coprime and chain criteria are used.
//! The result is always the reduced basis, sorted by descending leading
//! monomial, so two runs over the same ideal and order agree exactly.

mod hilbert;

use std::collections::{BTreeSet, HashSet};

pub use hilbert::{standard_monomial_table, HilbertTable};

use crate::coeff::Coeff;
use crate::error::{Error, PartialState, Result};
use crate::poly::keyed::{self, divides, Accumulator, KeyedPoly};
use crate::poly::{Monomial, Polynomial, Ring, RingRef, TermOrder, WeightStack};

/// Budget for a Buchberger run. `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ComputeLimits {
    pub max_degree: Option<u32>,
    pub max_basis_size: Option<usize>,
    pub max_pair_reductions: Option<usize>,
}

impl ComputeLimits {
    pub fn unlimited() -> Self {
        Self::default()
    }

    /// Parses `maxdeg,maxsize,maxred`; empty or `-` fields are unlimited.
    pub fn parse(s: &str) -> Result<Self> {
        let fields: Vec<&str> = s.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(Error::Config(format!("limits `{s}`: expected maxdeg,maxsize,maxred")));
        }
        fn field<T: std::str::FromStr>(f: &str) -> Result<Option<T>> {
            if f.is_empty() || f == "-" {
                return Ok(None);
            }
            f.parse().map(Some).map_err(|_| Error::Config(format!("bad limit `{f}`")))
        }
        let l = ComputeLimits {
            max_degree: field(fields[0])?,
            max_basis_size: field(fields[1])?,
            max_pair_reductions: field(fields[2])?,
        };
        if l.max_degree == Some(0) || l.max_basis_size == Some(0) || l.max_pair_reductions == Some(0) {
            return Err(Error::Config("limits must be positive".into()));
        }
        Ok(l)
    }

    /// Limits from the `TFP_LIMITS` environment variable, if set.
    pub fn from_env() -> Result<Self> {
        match std::env::var("TFP_LIMITS") {
            Ok(s) => Self::parse(&s),
            Err(_) => Ok(Self::default()),
        }
    }
}

/// A Gröbner basis together with the order it was computed for.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<C> {
    ring: RingRef,
    generators: Vec<Polynomial<C>>,
    keyed: Vec<KeyedPoly<C>>,
    order: TermOrder,
    reduced: bool,
}

impl<C: Coeff> GroebnerBasis<C> {
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<C>] {
        &self.generators
    }

    pub fn into_generators(self) -> Vec<Polynomial<C>> {
        self.generators
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.is_constant())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.keyed.iter().map(|k| Monomial::from_exponents(k.lead().exps.to_vec())).collect()
    }

    pub fn normal_form(&self, f: &Polynomial<C>) -> Polynomial<C> {
        assert!(Ring::same(f.ring(), &self.ring), "polynomial from a different ring");
        let refs: Vec<&KeyedPoly<C>> = self.keyed.iter().collect();
        keyed::reduce(KeyedPoly::from_poly(f, &self.order), &refs, None).to_poly(&self.ring)
    }

    pub fn contains(&self, f: &Polynomial<C>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Wraps polynomials known to form a Gröbner basis for `order`.
    pub(crate) fn from_trusted(ring: &RingRef, generators: Vec<Polynomial<C>>, order: TermOrder, reduced: bool) -> Self {
        let keyed = generators.iter().map(|g| KeyedPoly::from_poly(g, &order)).collect();
        GroebnerBasis { ring: ring.clone(), generators, keyed, order, reduced }
    }
}

fn pair(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

struct Engine<'a, C> {
    order: &'a TermOrder,
    limits: ComputeLimits,
    basis: Vec<KeyedPoly<C>>,
    queue: BTreeSet<(u32, usize, usize)>,
    pending: HashSet<(usize, usize)>,
    reductions: usize,
    degree: u32,
}

impl<'a, C: Coeff> Engine<'a, C> {
    fn new(order: &'a TermOrder, limits: ComputeLimits) -> Self {
        Engine {
            order,
            limits,
            basis: Vec::new(),
            queue: BTreeSet::new(),
            pending: HashSet::new(),
            reductions: 0,
            degree: 0,
        }
    }

    fn exceeded(&self, limit: &'static str) -> Error {
        Error::LimitExceeded(PartialState {
            limit,
            basis_size: self.basis.len(),
            pending_pairs: self.queue.len(),
            reductions: self.reductions,
            degree: self.degree,
        })
    }

    fn lcm_degree(&self, i: usize, j: usize) -> u32 {
        let (a, b) = (&self.basis[i].lead().exps, &self.basis[j].lead().exps);
        a.iter().zip(b.iter()).map(|(x, y)| *x.max(y)).sum()
    }

    fn push(&mut self, mut g: KeyedPoly<C>) -> Result<()> {
        g.make_monic();
        let idx = self.basis.len();
        self.basis.push(g);
        for i in 0..idx {
            let d = self.lcm_degree(i, idx);
            self.queue.insert((d, i, idx));
            self.pending.insert((i, idx));
        }
        if self.limits.max_basis_size.is_some_and(|m| self.basis.len() > m) {
            return Err(self.exceeded("max_basis_size"));
        }
        Ok(())
    }

    fn reduce(&self, work: Accumulator<C>) -> KeyedPoly<C> {
        let refs: Vec<&KeyedPoly<C>> = self.basis.iter().collect();
        keyed::reduce_accumulated(work, &refs, None)
    }

    /// The S-polynomial of `(i, j)`, or `None` when a criterion discards it.
    fn s_poly(&self, i: usize, j: usize) -> Option<Accumulator<C>> {
        let (gi, gj) = (&self.basis[i], &self.basis[j]);
        let (li, lj) = (gi.lead(), gj.lead());
        let coprime = li.exps.iter().zip(lj.exps.iter()).all(|(a, b)| *a == 0 || *b == 0);
        if coprime {
            return None;
        }
        let lcm: Vec<u32> = li.exps.iter().zip(lj.exps.iter()).map(|(a, b)| *a.max(b)).collect();
        let lmask = keyed::support_mask(&lcm);
        let chain = (0..self.basis.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            let lk = self.basis[k].lead();
            divides(&lk.exps, lk.mask, &lcm, lmask)
                && !self.pending.contains(&pair(i, k))
                && !self.pending.contains(&pair(j, k))
        });
        if chain {
            return None;
        }
        let mut work = Accumulator::new();
        for (g, l, sign) in [(gi, li, C::one()), (gj, lj, -C::one())] {
            let e: Vec<u32> = lcm.iter().zip(l.exps.iter()).map(|(a, b)| a - b).collect();
            let k = self.order.key(&e);
            let shifted = KeyedPoly { terms: g.terms[1..].to_vec() };
            for t in shifted.shifted(&e, &k, &sign) {
                work.add(t);
            }
        }
        Some(work)
    }

    fn run(&mut self) -> Result<()> {
        while let Some((d, i, j)) = self.queue.pop_first() {
            self.pending.remove(&(i, j));
            self.degree = d;
            if self.limits.max_degree.is_some_and(|m| d > m) {
                self.queue.insert((d, i, j));
                return Err(self.exceeded("max_degree"));
            }
            let Some(s) = self.s_poly(i, j) else { continue };
            let r = self.reduce(s);
            self.reductions += 1;
            if self.limits.max_pair_reductions.is_some_and(|m| self.reductions > m) {
                return Err(self.exceeded("max_pair_reductions"));
            }
            if !r.is_zero() {
                let unit = r.lead().exps.iter().all(|&e| e == 0);
                self.push(r)?;
                if unit {
                    return Ok(());
                }
            }
        }
        Ok(())
    }

    /// Minimal, then fully reduced, sorted by descending leading monomial.
    fn finish(self, ring: &RingRef) -> GroebnerBasis<C> {
        if let Some(unit) = self.basis.iter().find(|g| g.lead().exps.iter().all(|&e| e == 0)) {
            let one = unit.to_poly(ring);
            return GroebnerBasis::from_trusted(ring, vec![one], self.order.clone(), true);
        }
        let mut elems = self.basis;
        elems.sort_by(|a, b| a.lead().key.cmp(&b.lead().key));
        let mut kept: Vec<KeyedPoly<C>> = Vec::new();
        for e in elems {
            let l = e.lead();
            if !kept.iter().any(|k| divides(&k.lead().exps, k.lead().mask, &l.exps, l.mask)) {
                kept.push(e);
            }
        }
        let refs: Vec<&KeyedPoly<C>> = kept.iter().collect();
        let mut reduced: Vec<KeyedPoly<C>> = kept
            .iter()
            .map(|g| {
                let tail = KeyedPoly { terms: g.terms[1..].to_vec() };
                let mut r = keyed::reduce(tail, &refs, None);
                r.terms.insert(0, g.lead().clone());
                r
            })
            .collect();
        reduced.sort_by(|a, b| b.lead().key.cmp(&a.lead().key));
        let generators = reduced.iter().map(|k| k.to_poly(ring)).collect();
        GroebnerBasis { ring: ring.clone(), generators, keyed: reduced, order: self.order.clone(), reduced: true }
    }
}

fn check_input<C: Coeff>(ring: &RingRef, gens: &[Polynomial<C>], order: &TermOrder) -> Result<()> {
    if order.nvars() != ring.len() || gens.iter().any(|g| !Ring::same(g.ring(), ring)) {
        return Err(Error::RingMismatch);
    }
    if !order.is_term_order() {
        return Err(Error::NotTermOrder);
    }
    Ok(())
}

/// Reduced Gröbner basis of `<gens>` in `ring`.
pub fn buchberger<C: Coeff>(
    ring: &RingRef,
    gens: &[Polynomial<C>],
    order: &TermOrder,
    limits: &ComputeLimits,
) -> Result<GroebnerBasis<C>> {
    check_input(ring, gens, order)?;
    let mut input: Vec<KeyedPoly<C>> =
        gens.iter().filter(|g| !g.is_zero()).map(|g| KeyedPoly::from_poly(g, order)).collect();
    input.sort_by(|a, b| a.lead().key.cmp(&b.lead().key).then_with(|| a.terms.len().cmp(&b.terms.len())));
    let mut engine = Engine::new(order, *limits);
    for g in input {
        let mut work = Accumulator::new();
        for t in g.terms {
            work.add(t);
        }
        let r = engine.reduce(work);
        if !r.is_zero() {
            engine.push(r)?;
        }
    }
    engine.run()?;
    Ok(engine.finish(ring))
}

/// First S-pair of `gs` (indices into the nonzero entries) whose remainder
/// is nonzero, with that remainder.
pub fn failing_s_pair<C: Coeff>(gs: &[Polynomial<C>], order: &TermOrder) -> Option<(usize, usize, Polynomial<C>)> {
    let ring = gs.iter().find(|g| !g.is_zero())?.ring().clone();
    let mut engine = Engine::new(order, ComputeLimits::default());
    for g in gs.iter().filter(|g| !g.is_zero()) {
        let mut k = KeyedPoly::from_poly(g, order);
        k.make_monic();
        engine.basis.push(k);
    }
    let n = engine.basis.len();
    for j in 0..n {
        for i in 0..j {
            let d = engine.lcm_degree(i, j);
            engine.queue.insert((d, i, j));
            engine.pending.insert((i, j));
        }
    }
    while let Some((_, i, j)) = engine.queue.pop_first() {
        engine.pending.remove(&(i, j));
        let Some(s) = engine.s_poly(i, j) else { continue };
        let r = engine.reduce(s);
        if !r.is_zero() {
            return Some((i, j, r.to_poly(&ring)));
        }
    }
    None
}

/// True iff every S-polynomial of `gs` reduces to zero modulo `gs`.
pub fn is_groebner<C: Coeff>(gs: &[Polynomial<C>], order: &TermOrder) -> bool {
    failing_s_pair(gs, order).is_none()
}

/// Terms of maximal weight, compared stage by stage.
pub fn initial_form<C: Coeff>(f: &Polynomial<C>, w: &WeightStack) -> Polynomial<C> {
    let weights: Vec<Vec<i64>> = f.terms().iter().map(|(m, _)| w.evaluate(m)).collect();
    let Some(top) = weights.iter().max() else { return f.clone() };
    let terms = f.terms().iter().zip(&weights).filter(|(_, x)| *x == top).map(|(t, _)| t.clone());
    Polynomial::from_terms(f.ring(), terms)
}

pub fn initial_forms<C: Coeff>(gs: &[Polynomial<C>], w: &WeightStack) -> Vec<Polynomial<C>> {
    gs.iter().map(|g| initial_form(g, w)).collect()
}

/// `<a> = <b>`, by reducing each side against a Gröbner basis of the other.
pub fn ideal_equal<C: Coeff>(
    ring: &RingRef,
    a: &[Polynomial<C>],
    b: &[Polynomial<C>],
    order: &TermOrder,
    limits: &ComputeLimits,
) -> Result<bool> {
    Ok(ideal_difference(ring, a, b, order, limits)?.is_none())
}

/// Which side fails to contain a generator of the other.
#[derive(Clone, Debug)]
pub enum Discrepancy<C> {
    /// Generator of the second list not in the ideal of the first.
    MissingFromFirst(Polynomial<C>),
    /// Generator of the first list not in the ideal of the second.
    MissingFromSecond(Polynomial<C>),
}

/// `None` if the ideals agree, otherwise a generator witnessing the difference.
pub fn ideal_difference<C: Coeff>(
    ring: &RingRef,
    a: &[Polynomial<C>],
    b: &[Polynomial<C>],
    order: &TermOrder,
    limits: &ComputeLimits,
) -> Result<Option<Discrepancy<C>>> {
    let gb_a = buchberger(ring, a, order, limits)?;
    if let Some(f) = b.iter().find(|f| !gb_a.contains(f)) {
        return Ok(Some(Discrepancy::MissingFromFirst(f.clone())));
    }
    // a generator of `a` that is a scalar multiple of one in `b` lies in <b>
    let b_norm: HashSet<String> = b.iter().filter(|f| !f.is_zero()).map(|f| f.normalized().to_string()).collect();
    let rest: Vec<&Polynomial<C>> =
        a.iter().filter(|f| !f.is_zero() && !b_norm.contains(&f.normalized().to_string())).collect();
    if rest.is_empty() {
        return Ok(None);
    }
    let gb_b = buchberger(ring, b, order, limits)?;
    Ok(rest.into_iter().find(|f| !gb_b.contains(f)).map(|f| Discrepancy::MissingFromSecond(f.clone())))
}

/// `f` in `<gens>`.
pub fn ideal_contains<C: Coeff>(
    ring: &RingRef,
    gens: &[Polynomial<C>],
    f: &Polynomial<C>,
    order: &TermOrder,
    limits: &ComputeLimits,
) -> Result<bool> {
    Ok(buchberger(ring, gens, order, limits)?.contains(f))
}
