use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::linalg;
use crate::Rational;

/// Degree vector in `Z^d` for every ring variable, plus an optional
/// positivity certificate `omega` with `omega . deg(v) = 1` for all `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGrading {
    dim: usize,
    degrees: Vec<Vec<i64>>,
    omega: Option<Vec<Rational>>,
}

impl MultiGrading {
    pub fn new(dim: usize, degrees: Vec<Vec<i64>>) -> Result<Self> {
        if let Some(bad) = degrees.iter().position(|d| d.len() != dim) {
            return Err(Error::InvalidGrading(format!("degree of variable {bad} is not in Z^{dim}")));
        }
        Ok(MultiGrading { dim, degrees, omega: None })
    }

    /// Standard unit vector `e_{class[v]}` in `Z^dim` for each variable.
    pub fn from_classes(dim: usize, class: &[usize]) -> Self {
        let degrees = class
            .iter()
            .map(|&c| {
                let mut e = vec![0; dim];
                e[c] = 1;
                e
            })
            .collect();
        MultiGrading { dim, degrees, omega: Some(vec![Rational::one(); dim]) }
    }

    pub fn with_omega(mut self, omega: Vec<Rational>) -> Result<Self> {
        if omega.len() != self.dim {
            return Err(Error::InvalidGrading("certificate has wrong length".into()));
        }
        for (v, d) in self.degrees.iter().enumerate() {
            if dot(&omega, d) != Rational::one() {
                return Err(Error::InvalidGrading(format!("omega . deg(variable {v}) != 1")));
            }
        }
        self.omega = Some(omega);
        Ok(self)
    }

    /// Finds a certificate by solving `omega . deg(v) = 1`.
    pub fn with_solved_omega(self) -> Result<Self> {
        let rows: Vec<Vec<Rational>> =
            self.degrees.iter().map(|d| d.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
        let ones = vec![Rational::one(); rows.len()];
        let omega = if rows.is_empty() {
            vec![Rational::zero(); self.dim]
        } else {
            linalg::solve(&rows, &ones).ok_or(Error::NoPositivityCertificate)?
        };
        Ok(MultiGrading { omega: Some(omega), ..self })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degrees(&self) -> &[Vec<i64>] {
        &self.degrees
    }

    pub fn omega(&self) -> Option<&[Rational]> {
        self.omega.as_deref()
    }

    pub fn nvars(&self) -> usize {
        self.degrees.len()
    }

    pub fn monomial_degree(&self, m: &Monomial) -> Vec<i64> {
        let mut out = vec![0; self.dim];
        for v in m.support() {
            let k = m.exponents()[v] as i64;
            for (o, d) in out.iter_mut().zip(&self.degrees[v]) {
                *o += k * d;
            }
        }
        out
    }

    /// `omega . u`
    pub fn omega_degree(&self, u: &[i64]) -> Result<Rational> {
        let w = self.omega.as_ref().ok_or(Error::MissingCertificate)?;
        Ok(w.iter().zip(u).map(|(a, &b)| a * Rational::from_integer(b.into())).sum())
    }

    /// The common degree of all terms of `f`.
    pub fn multidegree<C: Coeff>(&self, f: &Polynomial<C>) -> Result<Vec<i64>> {
        if f.ring().len() != self.degrees.len() {
            return Err(Error::RingMismatch);
        }
        let mut terms = f.terms().iter();
        let (m0, _) = terms.next().ok_or(Error::ZeroPolynomial)?;
        let first = self.monomial_degree(m0);
        for (m, _) in terms {
            let d = self.monomial_degree(m);
            if d != first {
                return Err(Error::Inhomogeneous { first, second: d });
            }
        }
        Ok(first)
    }
}

fn dot(w: &[Rational], d: &[i64]) -> Rational {
    w.iter().zip(d).map(|(a, &b)| a * Rational::from_integer(b.into())).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_polynomial;
    use crate::poly::ring::Ring;

    #[test]
    fn class_grading_degree() {
        // q_{i1 i3} graded by e_{i3}
        let mut t = Vec::new();
        for a in 1..=3 {
            for b in 1..=3 {
                t.push(vec![a, b]);
            }
        }
        let r = Ring::indexed("q", t).unwrap();
        let class: Vec<usize> = r.vars().iter().map(|v| v.indices[1] as usize - 1).collect();
        let g = MultiGrading::from_classes(3, &class);
        let f: Polynomial<Rational> = parse_polynomial("q_1_2", &r).unwrap();
        assert_eq!(g.multidegree(&f).unwrap(), vec![0, 1, 0]);
        let c: Polynomial<Rational> = parse_polynomial("5", &r).unwrap();
        assert_eq!(g.multidegree(&c).unwrap(), vec![0, 0, 0]);
        let z: Polynomial<Rational> = parse_polynomial("0", &r).unwrap();
        assert_eq!(g.multidegree(&z).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn inhomogeneous_rejected() {
        let r = Ring::indexed("x", [vec![1, 1], vec![1, 2]]).unwrap();
        let g = MultiGrading::new(1, vec![vec![1], vec![1]]).unwrap().with_solved_omega().unwrap();
        let f: Polynomial<Rational> = parse_polynomial("x_1_1 + x_1_1^2", &r).unwrap();
        assert!(matches!(g.multidegree(&f), Err(Error::Inhomogeneous { .. })));
    }

    #[test]
    fn certificate_checked() {
        let g = MultiGrading::new(2, vec![vec![1, 0], vec![0, 2]]).unwrap();
        let half = Rational::new(1.into(), 2.into());
        assert!(g.clone().with_omega(vec![Rational::one(), half.clone()]).is_ok());
        assert!(g.clone().with_omega(vec![Rational::one(), Rational::one()]).is_err());
        assert_eq!(g.with_solved_omega().unwrap().omega().unwrap(), &[Rational::one(), half]);
    }
}
