//! Hierarchical models, their hidden-variable versions, the partially
//! hidden Markov chain, and Segre products.

use std::collections::{BTreeSet, HashSet};

use super::{index_tuples, is_subset, minors, project, tensor_ring, tuple_position, Factorization, ModelDims, SimplicialComplex};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::oracle::PolynomialMap;
use crate::poly::{Monomial, Polynomial, Ring, RingRef, TermOrder, Var};
use crate::tfp::{validate_spec, TfpSpec};

/// Parameter ring: tag `a<f>` for the `f`-th facet (1-based), indexed by `D_F`.
fn parameter_ring(delta: &SimplicialComplex, d: &ModelDims) -> Result<(RingRef, Vec<usize>)> {
    let mut vars = Vec::new();
    let mut offsets = Vec::new();
    for (f, facet) in delta.facets().iter().enumerate() {
        offsets.push(vars.len());
        let tag = format!("a{}", f + 1);
        vars.extend(index_tuples(&d.restrict(facet)).into_iter().map(|t| Var::new(tag.clone(), t)));
    }
    Ok((Ring::new(vars)?, offsets))
}

fn check_dims(delta: &SimplicialComplex, d: &ModelDims) -> Result<()> {
    if d.len() != delta.n() {
        return Err(Error::DimensionMismatch(format!("{} dimensions for {} vertices", d.len(), delta.n())));
    }
    Ok(())
}

/// `tag_{i_O} -> sum over j_H of prod_F a<F>_{i_F}`; with `hidden` empty this is
/// the monomial map of the hierarchical model.
fn parametrization<C: Coeff>(
    delta: &SimplicialComplex,
    d: &ModelDims,
    hidden: &[usize],
    tag: &str,
) -> Result<PolynomialMap<C>> {
    check_dims(delta, d)?;
    if let Some(h) = hidden.iter().find(|&&h| h == 0 || h > delta.n()) {
        return Err(Error::DimensionMismatch(format!("hidden vertex {h} outside the ground set")));
    }
    let all: Vec<usize> = (1..=delta.n()).collect();
    let observed: Vec<usize> = all.iter().copied().filter(|v| !hidden.contains(v)).collect();
    let hidden: Vec<usize> = all.iter().copied().filter(|v| hidden.contains(v)).collect();
    if observed.is_empty() {
        return Err(Error::DimensionMismatch("every vertex is hidden".into()));
    }
    let source = tensor_ring(tag, &d.restrict(&observed))?;
    let (target, offsets) = parameter_ring(delta, d)?;
    let hidden_tuples = index_tuples(&d.restrict(&hidden));
    let images = index_tuples(&d.restrict(&observed))
        .into_iter()
        .map(|obs| {
            let terms = hidden_tuples.iter().map(|hid| {
                let full: Vec<u32> = all
                    .iter()
                    .map(|v| match observed.iter().position(|o| o == v) {
                        Some(p) => obs[p],
                        None => hid[hidden.iter().position(|h| h == v).expect("hidden vertex")],
                    })
                    .collect();
                let mut e = vec![0; target.len()];
                for (f, facet) in delta.facets().iter().enumerate() {
                    let sub = project(&full, &all, facet);
                    e[offsets[f] + tuple_position(&d.restrict(facet), &sub)] += 1;
                }
                (Monomial::from_exponents(e), C::one())
            });
            Polynomial::from_terms(&target, terms)
        })
        .collect();
    PolynomialMap::new(&source, &target, images)
}

/// `p_i -> prod over facets F of a<F>_{i_F}`.
pub fn hierarchical_map<C: Coeff>(delta: &SimplicialComplex, d: &ModelDims) -> Result<PolynomialMap<C>> {
    parametrization(delta, d, &[], "p")
}

/// `q_{i_O} -> sum over j_H of the hierarchical image of p_{i_O j_H}`.
pub fn hidden_map<C: Coeff>(delta: &SimplicialComplex, d: &ModelDims, hidden: &[usize]) -> Result<PolynomialMap<C>> {
    parametrization(delta, d, hidden, "q")
}

/// The Segre map `p_i -> a1_{i_1} ... an_{i_n}`.
pub fn segre_map<C: Coeff>(d: &ModelDims) -> Result<PolynomialMap<C>> {
    hierarchical_map(&SimplicialComplex::discrete(d.len())?, d)
}

/// A decomposition `Delta = Delta_1 u Delta_2` with `Delta_1 n Delta_2 = 2^S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub left: Vec<Vec<usize>>,
    pub right: Vec<Vec<usize>>,
    pub separator: Vec<usize>,
}

impl Split {
    pub fn left_vertices(&self) -> Vec<usize> {
        self.left.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn right_vertices(&self) -> Vec<usize> {
        self.right.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }
}

/// The separator of `<a> n <b>` if that intersection is a full simplex.
fn separator(a: &[Vec<usize>], b: &[Vec<usize>]) -> Option<Vec<usize>> {
    let meets: BTreeSet<Vec<usize>> =
        a.iter().flat_map(|f| b.iter().map(move |g| f.iter().copied().filter(|v| g.contains(v)).collect())).collect();
    let maximal: Vec<&Vec<usize>> =
        meets.iter().filter(|m| !meets.iter().any(|n| n != *m && is_subset(m, n))).collect();
    match maximal.as_slice() {
        [s] => Some((*s).clone()),
        _ => None,
    }
}

/// Every decomposition into two proper subcomplexes meeting in a simplex,
/// each unordered pair listed once.
pub fn reducible_split(delta: &SimplicialComplex) -> Vec<Split> {
    let fs = delta.facets();
    let m = fs.len();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    // each facet goes left (0), right (1) or both (2)
    for code in 0..3usize.pow(m as u32) {
        let mut c = code;
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for f in fs {
            match c % 3 {
                0 => left.push(f.clone()),
                1 => right.push(f.clone()),
                _ => {
                    left.push(f.clone());
                    right.push(f.clone());
                }
            }
            c /= 3;
        }
        if left.is_empty() || right.is_empty() || left.len() == m || right.len() == m {
            continue;
        }
        let Some(s) = separator(&left, &right) else { continue };
        let key = if left <= right { (left.clone(), right.clone()) } else { (right.clone(), left.clone()) };
        if seen.insert(key) {
            out.push(Split { left, right, separator: s });
        }
    }
    out
}

fn check_split(delta: &SimplicialComplex, split: &Split) -> Result<()> {
    let fs = delta.facets();
    let sorted = |v: &Vec<Vec<usize>>| {
        v.iter()
            .map(|f| {
                let mut f = f.clone();
                f.sort_unstable();
                f
            })
            .collect::<Vec<_>>()
    };
    let (l, r) = (sorted(&split.left), sorted(&split.right));
    if l.is_empty() || r.is_empty() || l.len() == fs.len() || r.len() == fs.len() {
        return Err(Error::InvalidSplit("both parts must be nonempty and proper".into()));
    }
    if l.iter().chain(&r).any(|f| !fs.contains(f)) || fs.iter().any(|f| !l.contains(f) && !r.contains(f)) {
        return Err(Error::InvalidSplit("parts must partition the facets".into()));
    }
    let mut s = split.separator.clone();
    s.sort_unstable();
    if separator(&l, &r).as_ref() != Some(&s) {
        return Err(Error::InvalidSplit(format!("parts do not meet in the simplex on {s:?}")));
    }
    Ok(())
}

/// A model ideal written as a toric fiber product of two component models.
#[derive(Clone, Debug)]
pub struct ModelSplit<C> {
    pub factorization: Factorization,
    /// Parametrization whose kernel is the left component ideal.
    pub left_map: PolynomialMap<C>,
    pub right_map: PolynomialMap<C>,
    pub split: Split,
}

fn relabel(facets: &[Vec<usize>], vertices: &[usize]) -> Vec<Vec<usize>> {
    facets
        .iter()
        .map(|f| f.iter().map(|v| vertices.iter().position(|w| w == v).expect("vertex of part") + 1).collect())
        .collect()
}

fn component<C: Coeff>(
    facets: &[Vec<usize>],
    vertices: &[usize],
    d: &ModelDims,
    hidden: &[usize],
    tag: &str,
) -> Result<PolynomialMap<C>> {
    let sub = SimplicialComplex::new(vertices.len(), relabel(facets, vertices))?;
    let dims = ModelDims::new(d.restrict(vertices))?;
    let h: Vec<usize> = hidden
        .iter()
        .filter_map(|h| vertices.iter().position(|v| v == h).map(|p| p + 1))
        .collect();
    parametrization(&sub, &dims, &h, tag)
}

fn model_split<C: Coeff>(
    delta: &SimplicialComplex,
    d: &ModelDims,
    hidden: &[usize],
    split: &Split,
    tag: &str,
) -> Result<ModelSplit<C>> {
    check_dims(delta, d)?;
    check_split(delta, split)?;
    let s = {
        let mut s = split.separator.clone();
        s.sort_unstable();
        s
    };
    if s.iter().any(|v| hidden.contains(v)) {
        return Err(Error::InvalidSplit("separator meets the hidden vertices".into()));
    }
    let all: Vec<usize> = (1..=delta.n()).collect();
    let observed: Vec<usize> = all.iter().copied().filter(|v| !hidden.contains(v)).collect();
    let (v1, v2) = (split.left_vertices(), split.right_vertices());
    let o1: Vec<usize> = observed.iter().copied().filter(|v| v1.contains(v)).collect();
    let o2: Vec<usize> = observed.iter().copied().filter(|v| v2.contains(v)).collect();
    let left_map = component(&split.left, &v1, d, hidden, tag)?;
    let right_map = component(&split.right, &v2, d, hidden, tag)?;
    let full = tensor_ring(tag, &d.restrict(&observed))?;
    let (d_s, d1, d2) = (d.restrict(&s), d.restrict(&o1), d.restrict(&o2));
    let parts: Vec<(usize, usize, usize)> = index_tuples(&d.restrict(&observed))
        .iter()
        .map(|i| {
            (
                tuple_position(&d_s, &project(i, &observed, &s)),
                tuple_position(&d1, &project(i, &observed, &o1)),
                tuple_position(&d2, &project(i, &observed, &o2)),
            )
        })
        .collect();
    let factorization = Factorization::new(&full, left_map.source(), right_map.source(), &parts)?;
    Ok(ModelSplit { factorization, left_map, right_map, split: split.clone() })
}

/// The hierarchical model of `delta` as a product of its two parts, graded
/// by the separator indices `i_S`.
pub fn tfp_of_reducible<C: Coeff>(delta: &SimplicialComplex, d: &ModelDims, split: &Split) -> Result<ModelSplit<C>> {
    model_split(delta, d, &[], split, "p")
}

/// As [`tfp_of_reducible`] for the hidden-variable model; the separator
/// must avoid `hidden`.
pub fn hidden_split<C: Coeff>(
    delta: &SimplicialComplex,
    d: &ModelDims,
    hidden: &[usize],
    split: &Split,
) -> Result<ModelSplit<C>> {
    model_split(delta, d, hidden, split, "q")
}

fn chain_dims(n: usize, d: &ModelDims) -> Result<()> {
    if n == 0 || d.len() != 2 * n + 1 {
        return Err(Error::DimensionMismatch(format!("chain with n = {n} needs {} dimensions", 2 * n + 1)));
    }
    Ok(())
}

/// The chain on `2n + 1` vertices with the even ones hidden, split off at
/// its last observed interior vertex `2n - 1`.
pub fn chain_split<C: Coeff>(n: usize, d: &ModelDims) -> Result<ModelSplit<C>> {
    chain_dims(n, d)?;
    let m = 2 * n + 1;
    let delta = SimplicialComplex::chain(m)?;
    let hidden: Vec<usize> = (1..=n).map(|j| 2 * j).collect();
    let split = Split {
        left: (1..m - 2).map(|i| vec![i, i + 1]).collect(),
        right: vec![vec![m - 2, m - 1], vec![m - 1, m]],
        separator: vec![m - 2],
    };
    hidden_split(&delta, d, &hidden, &split)
}

fn dedup_up_to_scalar<C: Coeff>(polys: Vec<Polynomial<C>>) -> Vec<Polynomial<C>> {
    let mut seen = HashSet::new();
    polys.into_iter().filter(|p| !p.is_zero() && seen.insert(p.normalized().to_string())).collect()
}

/// Minors of the flattenings `X_j` and slices `Y_{j,i}` of the observed
/// tensor of the partially hidden chain, in the ring `q` indexed by the odd
/// vertices.
pub fn chain_generators<C: Coeff>(n: usize, d: &ModelDims) -> Result<Vec<Polynomial<C>>> {
    chain_dims(n, d)?;
    let odd: Vec<u32> = (0..=n).map(|j| d.at(2 * j + 1)).collect();
    let ring = tensor_ring("q", &odd)?;
    let entry = |idx: Vec<u32>| Polynomial::<C>::var(&ring, tuple_position(&odd, &idx));
    let mut out = Vec::new();
    for j in 1..=n {
        let k = d.at(2 * j) as usize + 1;
        if d.at(2 * j) >= d.at(2 * j - 1).min(d.at(2 * j + 1)) {
            continue;
        }
        let rows = index_tuples(&odd[..j]);
        let cols = index_tuples(&odd[j..]);
        if k > rows.len().min(cols.len()) {
            continue;
        }
        let x: Vec<Vec<Polynomial<C>>> =
            rows.iter().map(|r| cols.iter().map(|c| entry([r.clone(), c.clone()].concat())).collect()).collect();
        out.extend(minors(&x, k)?);
    }
    for j in 1..n {
        let rows = index_tuples(&odd[..j]);
        let cols = index_tuples(&odd[j + 1..]);
        if rows.len() < 2 || cols.len() < 2 {
            continue;
        }
        for i in 1..=odd[j] {
            let y: Vec<Vec<Polynomial<C>>> = rows
                .iter()
                .map(|r| cols.iter().map(|c| entry([r.clone(), vec![i], c.clone()].concat())).collect())
                .collect();
            out.extend(minors(&y, 2)?);
        }
    }
    Ok(dedup_up_to_scalar(out))
}

/// 2x2 minors of every flattening of the generic `d_1 x ... x d_n` tensor.
pub fn segre_flattening_minors<C: Coeff>(d: &ModelDims) -> Result<Vec<Polynomial<C>>> {
    let dims = d.as_slice();
    let n = dims.len();
    let ring = tensor_ring("p", dims)?;
    let mut out = Vec::new();
    // blocks containing vertex 1; the complement gives the transposed matrix
    for mask in 1..(1usize << n) {
        if mask & 1 == 0 || mask == (1 << n) - 1 {
            continue;
        }
        let a: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        let b: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 0).collect();
        let rows = index_tuples(&a.iter().map(|&v| dims[v]).collect::<Vec<_>>());
        let cols = index_tuples(&b.iter().map(|&v| dims[v]).collect::<Vec<_>>());
        let m: Vec<Vec<Polynomial<C>>> = rows
            .iter()
            .map(|r| {
                cols.iter()
                    .map(|c| {
                        let mut idx = vec![0; n];
                        for (p, &v) in a.iter().enumerate() {
                            idx[v] = r[p];
                        }
                        for (p, &v) in b.iter().enumerate() {
                            idx[v] = c[p];
                        }
                        Polynomial::var(&ring, tuple_position(dims, &idx))
                    })
                    .collect()
            })
            .collect();
        out.extend(minors(&m, 2)?);
    }
    Ok(dedup_up_to_scalar(out))
}

/// Generators of the Segre ideal built by repeated products with the zero
/// ideal of the last factor, and the composite order they are a Gröbner
/// basis for.
pub fn segre_tfp<C: Coeff>(d: &ModelDims) -> Result<(Vec<Polynomial<C>>, TermOrder)> {
    let dims = d.as_slice();
    if dims.len() == 1 {
        return Ok((Vec::new(), TermOrder::grevlex(dims[0] as usize)));
    }
    let n = dims.len();
    let (left_gens, left_order) = segre_tfp::<C>(&ModelDims::new(dims[..n - 1].to_vec())?)?;
    let split = Split {
        left: (1..n).map(|v| vec![v]).collect(),
        right: vec![vec![n]],
        separator: Vec::new(),
    };
    let ms = tfp_of_reducible::<C>(&SimplicialComplex::discrete(n)?, d, &split)?;
    let f = &ms.factorization;
    let gens = f.generators(&left_gens, &[])?;
    let order = f.order(&left_order, &TermOrder::grevlex(f.right_ring().len()))?;
    Ok((gens, order))
}

/// The grading of the three-cycle model by `e_{i_1} + e_{i_2}`, classes
/// `(i_1, i_2)` in lexicographic order, as a (dependent) product spec.
pub fn three_cycle_spec(d: &ModelDims) -> Result<TfpSpec> {
    if d.len() != 3 {
        return Err(Error::DimensionMismatch("the three-cycle has three vertices".into()));
    }
    let (d1, d2, d3) = (d.at(1) as usize, d.at(2) as usize, d.at(3));
    let mut columns = Vec::new();
    for i1 in 0..d1 {
        for i2 in 0..d2 {
            let mut c = vec![0; d1 + d2];
            c[i1] = 1;
            c[d1 + i2] = 1;
            columns.push(c);
        }
    }
    let r = columns.len();
    validate_spec(columns, vec![d3; r], vec![1; r])
}
