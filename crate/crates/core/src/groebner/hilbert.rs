//! Counting standard monomials by multidegree.

use std::collections::{BTreeMap, BTreeSet};

use super::GroebnerBasis;
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::poly::{keyed, MultiGrading};

/// Multidegree to number of standard monomials of that degree.
pub type HilbertTable = BTreeMap<Vec<i64>, u64>;

/// Hilbert function of `R / <G>` on every multidegree `u` reachable by a
/// monomial with `omega . u <= bound`; unreachable degrees are omitted and
/// reachable degrees with no standard monomial map to 0.
pub fn standard_monomial_table<C: Coeff>(
    gb: &GroebnerBasis<C>,
    grading: &MultiGrading,
    bound: u32,
) -> Result<HilbertTable> {
    if grading.omega().is_none() {
        return Err(Error::MissingCertificate);
    }
    let n = gb.ring().len();
    if grading.nvars() != n {
        return Err(Error::RingMismatch);
    }
    // every variable has omega-degree 1, so omega-degree is total degree
    let mut table = HilbertTable::new();
    let mut reach: BTreeSet<Vec<i64>> = BTreeSet::from([vec![0; grading.dim()]]);
    let distinct: BTreeSet<&Vec<i64>> = grading.degrees().iter().collect();
    for d in 0..=bound {
        for u in &reach {
            table.entry(u.clone()).or_insert(0);
        }
        if d < bound {
            reach = reach
                .iter()
                .flat_map(|u| distinct.iter().map(move |a| u.iter().zip(a.iter()).map(|(x, y)| x + y).collect()))
                .collect();
        }
    }

    let leads: Vec<(Vec<u32>, u64)> = gb
        .leading_monomials()
        .into_iter()
        .map(|m| {
            let e = m.exponents().to_vec();
            let mask = keyed::support_mask(&e);
            (e, mask)
        })
        .collect();
    let standard = |e: &[u32]| {
        let mask = keyed::support_mask(e);
        !leads.iter().any(|(l, lm)| keyed::divides(l, *lm, e, mask))
    };

    let mut level: Vec<(Vec<u32>, usize, Vec<i64>)> = Vec::new();
    if standard(&vec![0; n]) {
        level.push((vec![0; n], 0, vec![0; grading.dim()]));
    }
    for d in 0..=bound {
        for (_, _, u) in &level {
            *table.entry(u.clone()).or_insert(0) += 1;
        }
        if d == bound {
            break;
        }
        let mut next = Vec::new();
        for (e, last, u) in &level {
            for v in *last..n {
                let mut e2 = e.clone();
                e2[v] += 1;
                if standard(&e2) {
                    let u2 = u.iter().zip(&grading.degrees()[v]).map(|(a, b)| a + b).collect();
                    next.push((e2, v, u2));
                }
            }
        }
        level = next;
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{buchberger, ComputeLimits};
    use crate::poly::{parse_polynomial, Polynomial, Ring, TermOrder};
    use crate::Rational;

    #[test]
    fn polynomial_ring_counts() {
        let r = Ring::indexed("x", [vec![1], vec![2]]).unwrap();
        let gb = buchberger::<Rational>(&r, &[], &TermOrder::grevlex(2), &ComputeLimits::default()).unwrap();
        let g = MultiGrading::from_classes(1, &[0, 0]);
        let t = standard_monomial_table(&gb, &g, 3).unwrap();
        assert_eq!(t.into_iter().collect::<Vec<_>>(), vec![(vec![0], 1), (vec![1], 2), (vec![2], 3), (vec![3], 4)]);
    }

    #[test]
    fn quotient_counts_and_zero_entries() {
        let r = Ring::indexed("x", [vec![1], vec![2]]).unwrap();
        let f: Polynomial<Rational> = parse_polynomial("x_1", &r).unwrap();
        let gb = buchberger(&r, &[f], &TermOrder::grevlex(2), &ComputeLimits::default()).unwrap();
        let g = MultiGrading::from_classes(2, &[0, 1]);
        let t = standard_monomial_table(&gb, &g, 2).unwrap();
        assert_eq!(t[&vec![1, 0]], 0);
        assert_eq!(t[&vec![0, 2]], 1);
        assert_eq!(t[&vec![1, 1]], 0);
        assert_eq!(t.len(), 6);
        let bare = MultiGrading::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(standard_monomial_table(&gb, &bare, 2), Err(Error::MissingCertificate));
    }
}
