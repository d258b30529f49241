//! Ideal families that decompose as toric fiber products: Segre products,
//! hierarchical models with and without hidden variables, and group-based
//! phylogenetic models.
//!
//! Each decomposition is described by a [`Factorization`]: a grading class
//! for every variable of the model ring together with the pair of component
//! variables it factors into. That is enough to move polynomials and term
//! orders between the model rings and the `x`, `y`, `z` rings of
//! [`crate::tfp`].

mod hierarchical;
mod phylo;

use std::collections::BTreeSet;

pub use hierarchical::{
    chain_generators, chain_split, hidden_map, hidden_split, hierarchical_map, reducible_split, segre_flattening_minors,
    segre_map, segre_tfp, three_cycle_spec, tfp_of_reducible, ModelSplit, Split,
};
pub use phylo::{group_based_map, tree_split, FiniteGroup, RootedTree, TreeSplit};

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::oracle::PolynomialMap;
use crate::poly::{MultiGrading, Polynomial, Ring, RingRef, TermOrder, Var};
use crate::tfp::{self, TfpSpec};

/// Facets over the ground set `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Facets are sorted; none may contain another and together they must
    /// cover `1..=n`.
    pub fn new(n: usize, facets: Vec<Vec<usize>>) -> Result<Self> {
        let mut fs: Vec<Vec<usize>> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        if fs.is_empty() || fs.iter().any(|f| f.is_empty()) {
            return Err(Error::InvalidComplex("empty facet list or empty facet".into()));
        }
        if let Some(v) = fs.iter().flatten().find(|&&v| v == 0 || v > n) {
            return Err(Error::InvalidComplex(format!("vertex {v} outside 1..={n}")));
        }
        for (a, f) in fs.iter().enumerate() {
            for (b, g) in fs.iter().enumerate() {
                if a != b && is_subset(f, g) {
                    return Err(Error::InvalidComplex(format!("facet {f:?} lies in {g:?}")));
                }
            }
        }
        let covered: BTreeSet<usize> = fs.iter().flatten().copied().collect();
        if covered.len() != n {
            return Err(Error::InvalidComplex("facets do not cover the ground set".into()));
        }
        fs.dedup();
        Ok(SimplicialComplex { n, facets: fs })
    }

    /// The path `{1,2}, {2,3}, ..., {n-1,n}`.
    pub fn chain(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| vec![i, i + 1]).collect())
    }

    /// Isolated vertices `{1}, ..., {n}`.
    pub fn discrete(n: usize) -> Result<Self> {
        Self::new(n, (1..=n).map(|i| vec![i]).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn contains_face(&self, face: &[usize]) -> bool {
        self.facets.iter().any(|f| is_subset(face, f))
    }
}

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

/// Level counts `d_1, ..., d_n`, each at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelDims(Vec<u32>);

impl ModelDims {
    pub fn new(d: Vec<u32>) -> Result<Self> {
        if d.is_empty() || d.iter().any(|&x| x < 2) {
            return Err(Error::BadSize(format!("dimensions {d:?} must all be at least 2")));
        }
        Ok(ModelDims(d))
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `d_v` for a 1-based vertex.
    pub fn at(&self, v: usize) -> u32 {
        self.0[v - 1]
    }

    /// Dimensions of the listed 1-based vertices.
    pub fn restrict(&self, vertices: &[usize]) -> Vec<u32> {
        vertices.iter().map(|&v| self.at(v)).collect()
    }
}

/// All tuples in `[b_1] x ... x [b_m]`, lexicographic, 1-based.
pub fn index_tuples(bounds: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        out = out.into_iter().flat_map(|p| (1..=b).map(move |k| [p.clone(), vec![k]].concat())).collect();
    }
    out
}

/// Position of `tuple` in [`index_tuples`]`(bounds)`.
pub fn tuple_position(bounds: &[u32], tuple: &[u32]) -> usize {
    bounds.iter().zip(tuple).fold(0, |acc, (&b, &i)| acc * b as usize + (i as usize - 1))
}

/// `tag_i` for every tuple `i` of [`index_tuples`]`(bounds)`.
pub fn tensor_ring(tag: &str, bounds: &[u32]) -> Result<RingRef> {
    if bounds.is_empty() {
        return Ring::new(vec![Var::new(tag, [1u32])]);
    }
    Ring::indexed(tag, index_tuples(bounds))
}

/// Entries of `tuple` at the given positions (0-based) of `vertices`.
pub(crate) fn project(tuple: &[u32], vertices: &[usize], onto: &[usize]) -> Vec<u32> {
    onto.iter().map(|v| tuple[vertices.iter().position(|w| w == v).expect("vertex in support")]).collect()
}

/// All `k x k` minors, rows then columns in lexicographic subset order.
pub fn minors<C: Coeff>(m: &[Vec<Polynomial<C>>], k: usize) -> Result<Vec<Polynomial<C>>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != cols) {
        return Err(Error::BadSize("ragged matrix".into()));
    }
    if k == 0 || k > rows.min(cols) {
        return Err(Error::BadSize(format!("no {k}x{k} minors of a {rows}x{cols} matrix")));
    }
    let mut out = Vec::new();
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            out.push(det(m, &rs, &cs));
        }
    }
    Ok(out)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Laplace expansion along the first selected row.
fn det<C: Coeff>(m: &[Vec<Polynomial<C>>], rows: &[usize], cols: &[usize]) -> Polynomial<C> {
    if rows.len() == 1 {
        return m[rows[0]][cols[0]].clone();
    }
    let ring = m[rows[0]][cols[0]].ring().clone();
    let mut acc = Polynomial::zero(&ring);
    for (pos, &c) in cols.iter().enumerate() {
        let entry = &m[rows[0]][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry * &det(m, &rows[1..], &rest);
        acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// A model ring written as a toric fiber product of two component rings.
///
/// Every variable of the full ring has a grading class and factors as one
/// left variable times one right variable of that class; within a class the
/// full variables are in bijection with the (left, right) pairs.
#[derive(Clone, Debug)]
pub struct Factorization {
    spec: TfpSpec,
    full: RingRef,
    left: RingRef,
    right: RingRef,
    left_to_x: Vec<usize>,
    right_to_y: Vec<usize>,
    z_to_full: Vec<usize>,
    full_to_z: Vec<usize>,
    full_class: Vec<usize>,
    left_class: Vec<usize>,
    right_class: Vec<usize>,
}

impl Factorization {
    /// `parts[v] = (class, left, right)` for every variable `v` of `full`.
    /// Classes are renumbered in increasing order of the labels used.
    pub fn new(full: &RingRef, left: &RingRef, right: &RingRef, parts: &[(usize, usize, usize)]) -> Result<Self> {
        if parts.len() != full.len() {
            return Err(Error::InvalidSplit("one factorization entry per full variable required".into()));
        }
        let labels: BTreeSet<usize> = parts.iter().map(|p| p.0).collect();
        let labels: Vec<usize> = labels.into_iter().collect();
        let class_of = |c: usize| labels.binary_search(&c).expect("label collected above");
        let side_classes = |n: usize, pick: &dyn Fn(&(usize, usize, usize)) -> usize| -> Result<Vec<usize>> {
            let mut cls = vec![usize::MAX; n];
            for p in parts {
                let v = pick(p);
                let c = class_of(p.0);
                if v >= n {
                    return Err(Error::InvalidSplit(format!("component variable {v} out of range")));
                }
                if cls[v] != usize::MAX && cls[v] != c {
                    return Err(Error::InvalidSplit("component variable in two grading classes".into()));
                }
                cls[v] = c;
            }
            if cls.contains(&usize::MAX) {
                return Err(Error::InvalidSplit("component variable not used by any full variable".into()));
            }
            Ok(cls)
        };
        let left_class = side_classes(left.len(), &|p| p.1)?;
        let right_class = side_classes(right.len(), &|p| p.2)?;
        let r = labels.len();
        // j-th left variable of class c, in left ring order
        let mut by_class_l: Vec<Vec<usize>> = vec![Vec::new(); r];
        let mut by_class_r: Vec<Vec<usize>> = vec![Vec::new(); r];
        for (v, &c) in left_class.iter().enumerate() {
            by_class_l[c].push(v);
        }
        for (v, &c) in right_class.iter().enumerate() {
            by_class_r[c].push(v);
        }
        let s: Vec<u32> = by_class_l.iter().map(|v| v.len() as u32).collect();
        let t: Vec<u32> = by_class_r.iter().map(|v| v.len() as u32).collect();
        let columns: Vec<Vec<i64>> = (0..r).map(|c| (0..r).map(|k| (k == c) as i64).collect()).collect();
        let spec = tfp::validate_spec(columns, s, t)?;
        let mut left_to_x = vec![0; left.len()];
        for (c, vs) in by_class_l.iter().enumerate() {
            for (j, &v) in vs.iter().enumerate() {
                left_to_x[v] = spec.x_index(c as u32 + 1, j as u32 + 1);
            }
        }
        let mut right_to_y = vec![0; right.len()];
        for (c, vs) in by_class_r.iter().enumerate() {
            for (k, &v) in vs.iter().enumerate() {
                right_to_y[v] = spec.y_index(c as u32 + 1, k as u32 + 1);
            }
        }
        let mut z_to_full = vec![usize::MAX; spec.z_ring().len()];
        let mut full_to_z = vec![0; full.len()];
        for (v, &(c, l, rr)) in parts.iter().enumerate() {
            let c = class_of(c);
            let j = by_class_l[c].iter().position(|&x| x == l).expect("classified above");
            let k = by_class_r[c].iter().position(|&x| x == rr).expect("classified above");
            let z = spec.z_index(c as u32 + 1, j as u32 + 1, k as u32 + 1);
            if z_to_full[z] != usize::MAX {
                return Err(Error::InvalidSplit("two full variables share a factorization".into()));
            }
            z_to_full[z] = v;
            full_to_z[v] = z;
        }
        if z_to_full.contains(&usize::MAX) {
            return Err(Error::InvalidSplit("some (left, right) pair has no full variable".into()));
        }
        let full_class = parts.iter().map(|p| class_of(p.0)).collect();
        Ok(Factorization {
            spec,
            full: full.clone(),
            left: left.clone(),
            right: right.clone(),
            left_to_x,
            right_to_y,
            z_to_full,
            full_to_z,
            full_class,
            left_class,
            right_class,
        })
    }

    pub fn spec(&self) -> &TfpSpec {
        &self.spec
    }

    pub fn full_ring(&self) -> &RingRef {
        &self.full
    }

    pub fn left_ring(&self) -> &RingRef {
        &self.left
    }

    pub fn right_ring(&self) -> &RingRef {
        &self.right
    }

    /// Grading class (0-based) of each full variable.
    pub fn classes(&self) -> &[usize] {
        &self.full_class
    }

    pub fn full_grading(&self) -> MultiGrading {
        MultiGrading::from_classes(self.spec.r(), &self.full_class)
    }

    pub fn left_grading(&self) -> MultiGrading {
        MultiGrading::from_classes(self.spec.r(), &self.left_class)
    }

    pub fn right_grading(&self) -> MultiGrading {
        MultiGrading::from_classes(self.spec.r(), &self.right_class)
    }

    pub fn left_to_x<C: Coeff>(&self, f: &Polynomial<C>) -> Polynomial<C> {
        f.rename(self.spec.x_ring(), &self.left_to_x)
    }

    pub fn right_to_y<C: Coeff>(&self, f: &Polynomial<C>) -> Polynomial<C> {
        f.rename(self.spec.y_ring(), &self.right_to_y)
    }

    pub fn z_to_full<C: Coeff>(&self, f: &Polynomial<C>) -> Polynomial<C> {
        f.rename(&self.full, &self.z_to_full)
    }

    pub fn full_to_z<C: Coeff>(&self, f: &Polynomial<C>) -> Polynomial<C> {
        f.rename(self.spec.z_ring(), &self.full_to_z)
    }

    /// Lifts of `left_gens` and `right_gens` plus the quadrics, in the full ring.
    pub fn generators<C: Coeff>(
        &self,
        left_gens: &[Polynomial<C>],
        right_gens: &[Polynomial<C>],
    ) -> Result<Vec<Polynomial<C>>> {
        if left_gens.iter().any(|f| !Ring::same(f.ring(), &self.left))
            || right_gens.iter().any(|f| !Ring::same(f.ring(), &self.right))
        {
            return Err(Error::RingMismatch);
        }
        let xs: Vec<_> = left_gens.iter().map(|f| self.left_to_x(f)).collect();
        let ys: Vec<_> = right_gens.iter().map(|f| self.right_to_y(f)).collect();
        Ok(tfp::tfp_generators(&xs, &ys, &self.spec)?.iter().map(|f| self.z_to_full(f)).collect())
    }

    /// The composite order of [`tfp::tfp_order`] moved to the full ring.
    /// A left-ring order moved to the x ring.
    pub fn x_order(&self, left_order: &TermOrder) -> Result<TermOrder> {
        if left_order.nvars() != self.left.len() {
            return Err(Error::RingMismatch);
        }
        Ok(left_order.rename(&self.left_to_x, self.spec.x_ring().len()))
    }

    pub fn y_order(&self, right_order: &TermOrder) -> Result<TermOrder> {
        if right_order.nvars() != self.right.len() {
            return Err(Error::RingMismatch);
        }
        Ok(right_order.rename(&self.right_to_y, self.spec.y_ring().len()))
    }

    /// `map` precomposed with the identification of z and full variables.
    pub fn z_map<C: Coeff>(&self, map: &PolynomialMap<C>) -> Result<PolynomialMap<C>> {
        if !Ring::same(map.source(), &self.full) {
            return Err(Error::RingMismatch);
        }
        let images = self.z_to_full.iter().map(|&v| map.images()[v].clone()).collect();
        PolynomialMap::new(self.spec.z_ring(), map.target(), images)
    }

    pub fn order(&self, left_order: &TermOrder, right_order: &TermOrder) -> Result<TermOrder> {
        let z = tfp::tfp_order(&self.x_order(left_order)?, &self.y_order(right_order)?, &self.spec)?;
        Ok(z.rename(&self.z_to_full, self.full.len()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::Rational;

    #[test]
    fn complexes_validated() {
        assert!(SimplicialComplex::new(3, vec![vec![1, 2], vec![2, 3]]).is_ok());
        assert!(SimplicialComplex::new(3, vec![vec![1, 2], vec![1]]).is_err());
        assert!(SimplicialComplex::new(3, vec![vec![1, 2]]).is_err());
        assert!(ModelDims::new(vec![2, 1]).is_err());
    }

    #[test]
    fn small_minors() {
        let r = Ring::indexed("m", [vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]).unwrap();
        let v = |i| Polynomial::<Rational>::var(&r, i);
        let m = vec![vec![v(0), v(1)], vec![v(2), v(3)]];
        let ones = minors(&m, 1).unwrap();
        assert_eq!(ones.len(), 4);
        let two = minors(&m, 2).unwrap();
        assert_eq!(two, vec![parse_polynomial("m_1_1*m_2_2 - m_1_2*m_2_1", &r).unwrap()]);
        assert!(matches!(minors(&m, 3), Err(Error::BadSize(_))));
    }

    #[test]
    fn tuple_positions_agree() {
        let b = [3, 2, 4];
        for (p, t) in index_tuples(&b).iter().enumerate() {
            assert_eq!(tuple_position(&b, t), p);
        }
    }
}
