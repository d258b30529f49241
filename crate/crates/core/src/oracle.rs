//! Ground truth by elimination: kernels and contractions of polynomial maps.
//!
//! For `phi: K[source] -> K[target]` and an ideal `I` of the target ring,
//! `phi^{-1}(I)` is the elimination ideal of
//! `I + <v - phi(v) : v source variable>` in the joint ring, target first.
//! This is an ordinary graph-ideal contraction and needs no saturation.

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::groebner::{buchberger, ComputeLimits, GroebnerBasis};
use crate::poly::{Monomial, Polynomial, Ring, RingRef, TermOrder, WeightStack};

/// An image polynomial in `target` for every variable of `source`.
#[derive(Clone, Debug)]
pub struct PolynomialMap<C> {
    source: RingRef,
    target: RingRef,
    images: Vec<Polynomial<C>>,
    monomial: bool,
}

impl<C: Coeff> PolynomialMap<C> {
    pub fn new(source: &RingRef, target: &RingRef, images: Vec<Polynomial<C>>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} source variables",
                images.len(),
                source.len()
            )));
        }
        if images.iter().any(|p| !Ring::same(p.ring(), target)) {
            return Err(Error::RingMismatch);
        }
        let monomial = images.iter().all(|p| p.len() == 1 && p.terms()[0].1.is_one());
        Ok(PolynomialMap { source: source.clone(), target: target.clone(), images, monomial })
    }

    /// A monomial map from exponent vectors over `target`.
    pub fn monomial(source: &RingRef, target: &RingRef, images: Vec<Monomial>) -> Result<Self> {
        let polys = images.into_iter().map(|m| Polynomial::term(target, m, C::one())).collect();
        Self::new(source, target, polys)
    }

    pub fn source(&self) -> &RingRef {
        &self.source
    }

    pub fn target(&self) -> &RingRef {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial<C>] {
        &self.images
    }

    pub fn is_monomial(&self) -> bool {
        self.monomial
    }

    /// Exponent vectors of the images, if the map is monomial.
    pub fn monomial_images(&self) -> Result<Vec<&Monomial>> {
        if !self.monomial {
            return Err(Error::NotMonomialMap);
        }
        Ok(self.images.iter().map(|p| &p.terms()[0].0).collect())
    }

    pub fn apply(&self, f: &Polynomial<C>) -> Polynomial<C> {
        assert!(Ring::same(f.ring(), &self.source), "polynomial outside the source ring");
        f.substitute(&self.target, &self.images)
    }
}

/// Reduced Gröbner basis (source graded reverse lex) of the kernel of `map`.
pub fn kernel<C: Coeff>(map: &PolynomialMap<C>, limits: &ComputeLimits) -> Result<GroebnerBasis<C>> {
    contract(map, &[], limits)
}

/// Reduced Gröbner basis (source graded reverse lex) of `map^{-1}(<ideal>)`.
pub fn contract<C: Coeff>(
    map: &PolynomialMap<C>,
    ideal: &[Polynomial<C>],
    limits: &ComputeLimits,
) -> Result<GroebnerBasis<C>> {
    if ideal.iter().any(|f| !Ring::same(f.ring(), &map.target)) {
        return Err(Error::RingMismatch);
    }
    let (nt, ns) = (map.target.len(), map.source.len());
    let joint = Ring::concat(&map.target, &map.source);
    let lift_target: Vec<usize> = (0..nt).collect();
    let mut gens: Vec<Polynomial<C>> = ideal.iter().map(|f| f.rename(&joint, &lift_target)).collect();
    for (v, img) in map.images.iter().enumerate() {
        let z = Polynomial::var(&joint, nt + v);
        gens.push(&z - &img.rename(&joint, &lift_target));
    }
    let flags: Vec<bool> = (0..nt + ns).map(|v| v < nt).collect();
    let order = TermOrder::elimination(&flags);
    let gb = buchberger(&joint, &gens, &order, limits)?;
    let kept: Vec<Polynomial<C>> = gb
        .generators()
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.exponents()[..nt].iter().all(|&e| e == 0)))
        .map(|g| {
            Polynomial::from_terms(
                &map.source,
                g.terms().iter().map(|(m, c)| (Monomial::from_exponents(m.exponents()[nt..].to_vec()), c.clone())),
            )
        })
        .collect();
    Ok(GroebnerBasis::from_trusted(&map.source, kept, TermOrder::grevlex(ns), true))
}

/// Weight of each source variable: the `w`-weight of its image monomial.
pub fn pullback_weight<C: Coeff>(w: &[i64], map: &PolynomialMap<C>) -> Result<Vec<i64>> {
    if w.len() != map.target.len() {
        return Err(Error::DimensionMismatch("weight length differs from target ring".into()));
    }
    Ok(map
        .monomial_images()?
        .iter()
        .map(|m| m.exponents().iter().zip(w).map(|(&e, &x)| e as i64 * x).sum())
        .collect())
}

/// Stage-wise [`pullback_weight`].
pub fn pullback_stack<C: Coeff>(w: &WeightStack, map: &PolynomialMap<C>) -> Result<WeightStack> {
    let stages = w.stages().iter().map(|s| pullback_weight(s, map)).collect::<Result<Vec<_>>>()?;
    Ok(WeightStack::from_integer(stages))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::Rational;

    fn segre() -> PolynomialMap<Rational> {
        let z = Ring::indexed("z", [vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]).unwrap();
        let xy = Ring::new(
            ["x_1", "x_2", "y_1", "y_2"]
                .iter()
                .map(|s| crate::Var::new(&s[..1], [s[2..].parse::<u32>().unwrap()]))
                .collect(),
        )
        .unwrap();
        let images = ["x_1*y_1", "x_1*y_2", "x_2*y_1", "x_2*y_2"]
            .iter()
            .map(|s| parse_polynomial(s, &xy).unwrap())
            .collect();
        PolynomialMap::new(&z, &xy, images).unwrap()
    }

    #[test]
    fn segre_kernel_is_one_minor() {
        let m = segre();
        assert!(m.is_monomial());
        let k = kernel(&m, &ComputeLimits::default()).unwrap();
        assert_eq!(k.len(), 1);
        let minor = parse_polynomial("z_1_1*z_2_2 - z_1_2*z_2_1", m.source()).unwrap();
        assert_eq!(k.generators()[0].normalized(), minor.normalized());
        assert!(m.apply(&k.generators()[0]).is_zero());
    }

    #[test]
    fn free_images_have_zero_kernel() {
        let s = Ring::indexed("u", [vec![1], vec![2]]).unwrap();
        let t = Ring::indexed("t", [vec![1], vec![2]]).unwrap();
        let m = PolynomialMap::<Rational>::new(&s, &t, vec![Polynomial::var(&t, 0), Polynomial::var(&t, 1)]).unwrap();
        assert!(kernel(&m, &ComputeLimits::default()).unwrap().is_empty());
    }

    #[test]
    fn contraction_contains_kernel() {
        let m = segre();
        let x1 = parse_polynomial("x_1", m.target()).unwrap();
        let c = contract(&m, &[x1], &ComputeLimits::default()).unwrap();
        for name in ["z_1_1", "z_1_2"] {
            assert!(c.contains(&parse_polynomial(name, m.source()).unwrap()));
        }
        assert!(c.contains(&parse_polynomial("z_1_1*z_2_2 - z_1_2*z_2_1", m.source()).unwrap()));
        assert!(!c.contains(&parse_polynomial("z_2_2", m.source()).unwrap()));
    }

    #[test]
    fn pullback_reads_off_images() {
        let m = segre();
        assert_eq!(pullback_weight(&[1, 0, 0, 0], &m).unwrap(), vec![1, 1, 0, 0]);
        assert_eq!(pullback_weight(&[0; 4], &m).unwrap(), vec![0; 4]);
        let t = m.target().clone();
        let sum = PolynomialMap::<Rational>::new(m.source(), &t, vec![parse_polynomial("x_1 + y_1", &t).unwrap(); 4]).unwrap();
        assert_eq!(pullback_weight(&[0; 4], &sum), Err(Error::NotMonomialMap));
    }
}
