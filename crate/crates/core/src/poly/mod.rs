//! Exact sparse multivariate polynomials, rings, gradings and term orders.

mod grading;
pub(crate) mod keyed;
mod monomial;
mod order;
mod parse;
mod polynomial;
mod ring;

use std::cmp::Ordering;

pub use grading::MultiGrading;
pub use monomial::Monomial;
pub use order::{integer_weights, nonnegative, TermOrder, TieBreak, WeightStack};
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;
pub use ring::{Ring, RingRef, Var};

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use keyed::KeyedPoly;

pub fn compare_monomials(order: &TermOrder, a: &Monomial, b: &Monomial) -> Result<Ordering> {
    order.compare(a, b)
}

fn check_rings<C: Coeff>(f: &Polynomial<C>, gs: &[Polynomial<C>], order: &TermOrder) -> Result<()> {
    if order.nvars() != f.ring().len() || gs.iter().any(|g| !Ring::same(g.ring(), f.ring())) {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

/// Remainder of `f` on division by `gs` (zero entries of `gs` are ignored).
pub fn normal_form<C: Coeff>(f: &Polynomial<C>, gs: &[Polynomial<C>], order: &TermOrder) -> Result<Polynomial<C>> {
    Ok(divide(f, gs, order)?.1)
}

/// Division with quotients: `f = sum q_i g_i + r`, with no term of `r`
/// divisible by a leading monomial of any `g_i`.
pub fn divide<C: Coeff>(
    f: &Polynomial<C>,
    gs: &[Polynomial<C>],
    order: &TermOrder,
) -> Result<(Vec<Polynomial<C>>, Polynomial<C>)> {
    check_rings(f, gs, order)?;
    let ring = f.ring();
    let keyed: Vec<KeyedPoly<C>> = gs.iter().map(|g| KeyedPoly::from_poly(g, order)).collect();
    let live: Vec<usize> = (0..gs.len()).filter(|&i| !keyed[i].is_zero()).collect();
    let refs: Vec<&KeyedPoly<C>> = live.iter().map(|&i| &keyed[i]).collect();
    let mut q = vec![Vec::new(); refs.len()];
    let r = keyed::reduce(KeyedPoly::from_poly(f, order), &refs, Some(&mut q));
    let mut quotients = vec![Polynomial::zero(ring); gs.len()];
    for (slot, terms) in live.iter().zip(q) {
        quotients[*slot] =
            Polynomial::from_terms(ring, terms.into_iter().map(|(e, c)| (Monomial::from_exponents(e.to_vec()), c)));
    }
    Ok((quotients, r.to_poly(ring)))
}

/// Sorts polynomials for output: by total degree, then by leading monomial
/// under `order` (descending), then by text.
pub fn sort_for_output<C: Coeff>(polys: &mut [Polynomial<C>], order: &TermOrder) {
    polys.sort_by_cached_key(|p| {
        let lead = p.leading(order).map(|(m, _)| std::cmp::Reverse(order.key(m.exponents())));
        (p.total_degree().unwrap_or(0), lead, p.display_in(order))
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn zring() -> RingRef {
        let mut t = Vec::new();
        for j in 1..=2 {
            for k in 1..=2 {
                t.push(vec![1, j, k]);
            }
        }
        Ring::indexed("z", t).unwrap()
    }

    // i ascending, j ascending, k descending as "smaller"; as a priority list
    // (most significant first) this is z_1_2_1, z_1_2_2, z_1_1_1, z_1_1_2.
    fn quad_lex() -> TermOrder {
        TermOrder::permutation_lex(vec![2, 3, 0, 1]).unwrap()
    }

    fn p(s: &str, r: &RingRef) -> Polynomial<Rational> {
        parse_polynomial(s, r).unwrap()
    }

    #[test]
    fn underlined_term_leads() {
        let r = zring();
        let a = p("z_1_1_2*z_1_2_1", &r).terms()[0].0.clone();
        let b = p("z_1_1_1*z_1_2_2", &r).terms()[0].0.clone();
        assert_eq!(compare_monomials(&quad_lex(), &a, &b).unwrap(), Ordering::Greater);
        assert_eq!(compare_monomials(&quad_lex(), &a, &a).unwrap(), Ordering::Equal);
    }

    #[test]
    fn normal_form_examples() {
        let r = zring();
        let g = p("z_1_1_2*z_1_2_1 - z_1_1_1*z_1_2_2", &r);
        let o = quad_lex();
        assert!(normal_form(&g, std::slice::from_ref(&g), &o).unwrap().is_zero());
        assert_eq!(normal_form(&g, &[], &o).unwrap(), g);
        let f = p("z_1_1_2*z_1_2_1", &r);
        assert_eq!(normal_form(&f, &[g], &o).unwrap(), p("z_1_1_1*z_1_2_2", &r));
    }

    #[test]
    fn quotients_reexpand() {
        let r = Ring::indexed("x", (1..=3).map(|i| vec![i])).unwrap();
        let o = TermOrder::grevlex(3);
        let f = p("x_1^3*x_2 - 2*x_2^2*x_3 + 5*x_3^4 + 1/2*x_1", &r);
        let gs = vec![p("x_1^2 - x_3", &r), p("x_2*x_3 - x_1", &r)];
        let (qs, rem) = divide(&f, &gs, &o).unwrap();
        let mut back = rem.clone();
        for (q, g) in qs.iter().zip(&gs) {
            back = &back + &(q * g);
        }
        assert_eq!(back, f);
    }

    #[test]
    fn ring_mismatch() {
        let r = zring();
        let s = Ring::indexed("y", [vec![1]]).unwrap();
        let f = p("z_1_1_1", &r);
        let g: Polynomial<Rational> = parse_polynomial("y_1", &s).unwrap();
        assert_eq!(normal_form(&f, &[g], &quad_lex()).unwrap_err(), Error::RingMismatch);
    }
}
