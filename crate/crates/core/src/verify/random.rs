//! Seeded random toric fiber product instances.
//!
//! Grading columns are distinct unit vectors, so the grading is always
//! independent. Generators are homogeneous binomials or trinomials of
//! degree at most 3 with small integer coefficients.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::groebner::{buchberger, ComputeLimits};
use crate::models::index_tuples;
use crate::poly::{Monomial, Polynomial, RingRef, TermOrder, TieBreak, WeightStack};
use crate::tfp::{validate_spec, Side, TfpSpec};
use crate::{Poly, Rational, Result};

#[derive(Clone, Debug)]
pub struct RandomInstance {
    pub seed: u64,
    pub spec: TfpSpec,
    pub i: Vec<Poly>,
    pub j: Vec<Poly>,
    pub w1: Vec<i64>,
    pub w2: Vec<i64>,
    /// Monomials of the joint x, y ring, for the monomial splitting check.
    pub monomials: Vec<Monomial>,
}

impl RandomInstance {
    /// `[w1; graded reverse lex]` on the x ring.
    pub fn x_order(&self) -> TermOrder {
        weighted(&self.w1)
    }

    pub fn y_order(&self) -> TermOrder {
        weighted(&self.w2)
    }

    /// Reduced Gröbner bases of `I` and `J` for the two orders.
    pub fn bases(&self, limits: &ComputeLimits) -> Result<(Vec<Poly>, Vec<Poly>)> {
        let f = buchberger(self.spec.x_ring(), &self.i, &self.x_order(), limits)?.into_generators();
        let g = buchberger(self.spec.y_ring(), &self.j, &self.y_order(), limits)?.into_generators();
        Ok((f, g))
    }
}

fn weighted(w: &[i64]) -> TermOrder {
    TermOrder::new(w.len(), WeightStack::from_integer(vec![w.to_vec()]), TieBreak::GradedRevLex)
        .expect("nonnegative weights")
}

/// Monomials of `ring` whose class content is `counts[c]` variables of class `c`.
fn monomials_with_content(spec: &TfpSpec, side: Side, counts: &[usize]) -> Vec<Monomial> {
    let ring = spec.side_ring(side);
    let sizes = match side {
        Side::X => spec.s(),
        Side::Y => spec.t(),
    };
    let mut acc = vec![vec![0u32; ring.len()]];
    for (c, &k) in counts.iter().enumerate() {
        let vars: Vec<usize> = (1..=sizes[c])
            .map(|j| match side {
                Side::X => spec.x_index(c as u32 + 1, j),
                Side::Y => spec.y_index(c as u32 + 1, j),
            })
            .collect();
        let mut next = Vec::new();
        for e in &acc {
            // multisets of size k from vars, as nondecreasing index tuples
            for t in index_tuples(&vec![vars.len() as u32; k]) {
                if t.windows(2).any(|w| w[0] > w[1]) {
                    continue;
                }
                let mut e = e.clone();
                for &p in &t {
                    e[vars[p as usize - 1]] += 1;
                }
                next.push(e);
            }
        }
        acc = next;
    }
    acc.into_iter().map(Monomial::from_exponents).collect()
}

fn coefficient(rng: &mut ChaCha8Rng) -> Rational {
    let v = rng.gen_range(1..=3i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
    Rational::from_integer(v.into())
}

fn random_poly(rng: &mut ChaCha8Rng, spec: &TfpSpec, side: Side) -> Poly {
    let ring: &RingRef = spec.side_ring(side);
    let r = spec.r();
    let mut best = Vec::new();
    for _ in 0..20 {
        let deg = if rng.gen_bool(0.15) { 1 } else { rng.gen_range(2..=3) };
        let mut counts = vec![0; r];
        for _ in 0..deg {
            counts[rng.gen_range(0..r)] += 1;
        }
        let ms = monomials_with_content(spec, side, &counts);
        if ms.len() > best.len() {
            best = ms;
        }
        if best.len() >= 2 {
            break;
        }
    }
    let k = if best.len() >= 3 && rng.gen_bool(0.5) { 3 } else { best.len().min(2) };
    let chosen: Vec<Monomial> = best.choose_multiple(rng, k).cloned().collect();
    Polynomial::from_terms(ring, chosen.into_iter().map(|m| (m, coefficient(rng))))
}

/// One or two generators, distinct up to scalars.
fn generators(rng: &mut ChaCha8Rng, spec: &TfpSpec, side: Side) -> Vec<Poly> {
    let want = rng.gen_range(1..=2);
    let mut out: Vec<Poly> = Vec::new();
    for _ in 0..10 {
        let f = random_poly(rng, spec, side);
        if !out.iter().any(|g| g.normalized() == f.normalized()) {
            out.push(f);
        }
        if out.len() == want {
            break;
        }
    }
    out
}

pub fn random_instance(seed: u64) -> Result<RandomInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = rng.gen_range(1..=2usize);
    let dim = r + rng.gen_range(0..=1usize);
    let mut slots: Vec<usize> = (0..dim).collect();
    slots.shuffle(&mut rng);
    let columns = slots[..r]
        .iter()
        .map(|&p| (0..dim).map(|q| (q == p) as i64).collect())
        .collect();
    // at least one class with two variables on each side, at most 9 z variables
    let (s, t) = loop {
        let s: Vec<u32> = (0..r).map(|_| rng.gen_range(1..=3)).collect();
        let t: Vec<u32> = (0..r).map(|_| rng.gen_range(1..=3)).collect();
        let nz: u32 = s.iter().zip(&t).map(|(a, b)| a * b).sum();
        if nz <= 9 && s.iter().any(|&k| k >= 2) && t.iter().any(|&k| k >= 2) {
            break (s, t);
        }
    };
    let spec = validate_spec(columns, s, t)?;
    let i = generators(&mut rng, &spec, Side::X);
    let j = generators(&mut rng, &spec, Side::Y);
    let w1 = (0..spec.x_ring().len()).map(|_| rng.gen_range(0..=3)).collect();
    let w2 = (0..spec.y_ring().len()).map(|_| rng.gen_range(0..=3)).collect();
    let nxy = spec.xy_ring().len();
    let monomials = (0..2)
        .map(|_| {
            let mut e = vec![0u32; nxy];
            for _ in 0..rng.gen_range(1..=2) {
                e[rng.gen_range(0..nxy)] += 1;
            }
            Monomial::from_exponents(e)
        })
        .collect();
    Ok(RandomInstance { seed, spec, i, j, w1, w2, monomials })
}
