//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::Rational;

/// Row echelon form in place; returns pivot columns.
fn echelon(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Rational::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = m[r][j].clone() * f.clone();
                    m[i][j] = m[i][j].clone() - d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    let mut m = m.to_vec();
    echelon(&mut m).len()
}

/// Some solution of `a x = b` (free variables set to zero), or `None`.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> =
        a.iter().zip(b).map(|(row, bi)| row.iter().cloned().chain([bi.clone()]).collect()).collect();
    let pivots = echelon(&mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][n].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn rank_and_solve() {
        let a = vec![vec![q(1), q(0), q(1), q(0)], vec![q(1), q(0), q(0), q(1)], vec![q(0), q(1), q(1), q(0)], vec![q(0), q(1), q(0), q(1)]];
        assert_eq!(rank(&a), 3);
        let x = solve(&a, &[q(1), q(1), q(1), q(1)]).unwrap();
        for row in &a {
            let s: Rational = row.iter().zip(&x).map(|(u, v)| u * v).sum();
            assert_eq!(s, q(1));
        }
        assert!(solve(&[vec![q(0)]], &[q(1)]).is_none());
    }
}
