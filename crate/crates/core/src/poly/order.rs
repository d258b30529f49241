//! Term orders as stacks of weight vectors with a final tie-break.
//!
//! Every order maps a monomial to an integer key vector that is linear in
//! the exponents, and compares keys lexicographically. Linearity means the
//! key of a product is the sum of keys, which the division code relies on.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::Rational;

/// How monomials with equal weights on every stage are ordered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TieBreak {
    /// Lexicographic, variable 0 most significant.
    Lex,
    /// Total degree, then reverse lexicographic (last variable least).
    GradedRevLex,
    /// Lexicographic with variables ranked by the given list, most
    /// significant first. Must be a permutation of `0..n`.
    PermutationLex(Vec<usize>),
}

/// A lexicographically compared list of weight vectors.
///
/// Each stage is stored scaled to integers; scaling a stage by a positive
/// constant does not change any comparison.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeightStack {
    stages: Vec<Vec<i64>>,
}

impl WeightStack {
    pub fn new() -> Self {
        WeightStack::default()
    }

    pub fn from_integer(stages: Vec<Vec<i64>>) -> Self {
        WeightStack { stages }
    }

    pub fn from_rational(stages: &[Vec<Rational>]) -> Self {
        WeightStack { stages: stages.iter().map(|s| scale_to_integers(s)).collect() }
    }

    pub fn push(&mut self, stage: Vec<i64>) {
        self.stages.push(stage);
    }

    pub fn stages(&self) -> &[Vec<i64>] {
        &self.stages
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    /// Weight of `m` on every stage.
    pub fn evaluate(&self, m: &Monomial) -> Vec<i64> {
        self.stages.iter().map(|w| dot(w, m.exponents())).collect()
    }

    /// Permutes variables: variable `v` becomes `map[v]` in a ring of size `n`.
    pub fn rename(&self, map: &[usize], n: usize) -> WeightStack {
        let stages = self
            .stages
            .iter()
            .map(|w| {
                let mut out = vec![0; n];
                for (v, &x) in w.iter().enumerate() {
                    out[map[v]] = x;
                }
                out
            })
            .collect();
        WeightStack { stages }
    }
}

fn dot(w: &[i64], e: &[u32]) -> i64 {
    w.iter().zip(e).map(|(a, &b)| a * b as i64).sum()
}

fn scale_to_integers(stage: &[Rational]) -> Vec<i64> {
    let lcm = stage.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = stage.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| if g.is_zero() { 0 } else { (x / &g).to_i64().expect("weight fits i64") })
        .collect()
}

/// A monomial order on a ring with `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    nvars: usize,
    weights: WeightStack,
    tie_break: TieBreak,
}

impl TermOrder {
    pub fn new(nvars: usize, weights: WeightStack, tie_break: TieBreak) -> Result<Self> {
        if weights.stages.iter().any(|w| w.len() != nvars) {
            return Err(Error::DimensionMismatch(format!("weight vector length differs from {nvars}")));
        }
        if let TieBreak::PermutationLex(p) = &tie_break {
            let mut seen = vec![false; nvars];
            if p.len() != nvars || p.iter().any(|&v| v >= nvars || std::mem::replace(&mut seen[v], true)) {
                return Err(Error::DimensionMismatch("tie-break is not a permutation".into()));
            }
        }
        Ok(TermOrder { nvars, weights, tie_break })
    }

    pub fn lex(nvars: usize) -> Self {
        TermOrder { nvars, weights: WeightStack::new(), tie_break: TieBreak::Lex }
    }

    pub fn grevlex(nvars: usize) -> Self {
        TermOrder { nvars, weights: WeightStack::new(), tie_break: TieBreak::GradedRevLex }
    }

    pub fn permutation_lex(priority: Vec<usize>) -> Result<Self> {
        TermOrder::new(priority.len(), WeightStack::new(), TieBreak::PermutationLex(priority))
    }

    /// Block order eliminating the flagged variables, refined by graded revlex.
    pub fn elimination(eliminate: &[bool]) -> Self {
        let stage = eliminate.iter().map(|&b| b as i64).collect();
        TermOrder {
            nvars: eliminate.len(),
            weights: WeightStack::from_integer(vec![stage]),
            tie_break: TieBreak::GradedRevLex,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn weights(&self) -> &WeightStack {
        &self.weights
    }

    pub fn tie_break(&self) -> &TieBreak {
        &self.tie_break
    }

    /// Well-founded iff the first nonzero weight of every variable is positive.
    pub fn is_term_order(&self) -> bool {
        (0..self.nvars).all(|v| {
            self.weights.stages.iter().map(|w| w[v]).find(|&x| x != 0).is_none_or(|x| x > 0)
        })
    }

    pub fn key_len(&self) -> usize {
        self.weights.stages.len() + self.nvars + matches!(self.tie_break, TieBreak::GradedRevLex) as usize
    }

    /// The comparison key of a monomial given by its exponents.
    pub fn key(&self, e: &[u32]) -> Vec<i64> {
        let mut k = Vec::with_capacity(self.key_len());
        k.extend(self.weights.stages.iter().map(|w| dot(w, e)));
        match &self.tie_break {
            TieBreak::Lex => k.extend(e.iter().map(|&x| x as i64)),
            TieBreak::GradedRevLex => {
                k.push(e.iter().map(|&x| x as i64).sum());
                k.extend(e.iter().rev().map(|&x| -(x as i64)));
            }
            TieBreak::PermutationLex(p) => k.extend(p.iter().map(|&v| e[v] as i64)),
        }
        k
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.len() != self.nvars || b.len() != self.nvars {
            return Err(Error::RingMismatch);
        }
        Ok(self.key(a.exponents()).cmp(&self.key(b.exponents())))
    }

    /// The order as a pure weight stack: the tie-break unrolled into unit
    /// (or signed unit) stages.
    pub fn expanded(&self) -> WeightStack {
        let n = self.nvars;
        let mut stages = self.weights.stages.clone();
        let unit = |v: usize, s: i64| {
            let mut w = vec![0; n];
            w[v] = s;
            w
        };
        match &self.tie_break {
            TieBreak::Lex => stages.extend((0..n).map(|v| unit(v, 1))),
            TieBreak::GradedRevLex => {
                stages.push(vec![1; n]);
                stages.extend((0..n).rev().map(|v| unit(v, -1)));
            }
            TieBreak::PermutationLex(p) => stages.extend(p.iter().map(|&v| unit(v, 1))),
        }
        WeightStack { stages }
    }

    /// The same order after moving variable `v` to position `map[v]` of a
    /// ring with `n` variables (`map` must be injective; unmapped target
    /// variables rank below all mapped ones).
    pub fn rename(&self, map: &[usize], n: usize) -> TermOrder {
        let mut unmapped: Vec<bool> = vec![true; n];
        for &m in map {
            unmapped[m] = false;
        }
        let rest = (0..n).filter(|&v| unmapped[v]);
        let (weights, priority): (WeightStack, Vec<usize>) = match &self.tie_break {
            TieBreak::Lex => (self.weights.rename(map, n), map.iter().copied().chain(rest).collect()),
            TieBreak::PermutationLex(p) => {
                (self.weights.rename(map, n), p.iter().map(|&v| map[v]).chain(rest).collect())
            }
            TieBreak::GradedRevLex => {
                let mut w = self.expanded();
                w = w.rename(map, n);
                (w, map.iter().copied().chain(rest).collect())
            }
        };
        TermOrder { nvars: n, weights, tie_break: TieBreak::PermutationLex(priority) }
    }
}

/// Pulls a rational weight vector back to integer form (convenience for callers).
pub fn integer_weights(w: &[Rational]) -> Vec<i64> {
    scale_to_integers(w)
}

/// True iff every entry is nonnegative.
pub fn nonnegative(w: &[Rational]) -> bool {
    w.iter().all(|q| !q.is_negative())
}
