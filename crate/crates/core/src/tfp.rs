//! The toric fiber product construction.
//!
//! For a grading `A = (a^1, ..., a^r)` and sizes `s, t`, the product of a
//! homogeneous ideal `I` in `K[x^i_j]` and `J` in `K[y^i_k]` is the
//! preimage of `I + J` under `z^i_jk -> x^i_j y^i_k`. With linearly
//! independent columns it is generated by the lifts of generators of `I` and
//! `J` together with the quadrics `Quad_B`, and those form a Gröbner basis
//! for the composite order built by [`tfp_weight`].

use std::collections::HashSet;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::groebner::HilbertTable;
use crate::linalg;
use crate::oracle::PolynomialMap;
use crate::poly::{Monomial, MultiGrading, Polynomial, Ring, RingRef, TermOrder, TieBreak, Var, WeightStack};
use crate::Rational;

/// Which factor of the product a polynomial belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    X,
    Y,
}

/// Grading columns, sizes, certificate and the derived rings.
///
/// Variables are `x_i_j`, `y_i_k` and `z_i_j_k` with 1-based indices; each
/// ring lists them with `i`, then `j`, then `k` ascending.
#[derive(Clone, Debug)]
pub struct TfpSpec {
    columns: Vec<Vec<i64>>,
    s: Vec<u32>,
    t: Vec<u32>,
    omega: Vec<Rational>,
    independent: bool,
    x_ring: RingRef,
    y_ring: RingRef,
    z_ring: RingRef,
    xy_ring: RingRef,
    x_off: Vec<usize>,
    y_off: Vec<usize>,
    z_off: Vec<usize>,
}

/// Checks the data and solves for a certificate `omega . a^i = 1`.
/// Dependent columns are allowed and only flagged.
pub fn validate_spec(columns: Vec<Vec<i64>>, s: Vec<u32>, t: Vec<u32>) -> Result<TfpSpec> {
    let r = columns.len();
    if r == 0 {
        return Err(Error::DimensionMismatch("no grading columns".into()));
    }
    if s.len() != r || t.len() != r {
        return Err(Error::DimensionMismatch(format!("{r} columns but |s| = {}, |t| = {}", s.len(), t.len())));
    }
    let d = columns[0].len();
    if d == 0 || columns.iter().any(|c| c.len() != d) {
        return Err(Error::DimensionMismatch("grading columns differ in length".into()));
    }
    if s.iter().chain(&t).any(|&n| n == 0) {
        return Err(Error::BadSize("sizes must be positive".into()));
    }
    let rows: Vec<Vec<Rational>> =
        columns.iter().map(|c| c.iter().map(|&v| Rational::from_integer(v.into())).collect()).collect();
    let ones = vec![Rational::from_integer(1.into()); r];
    let omega = linalg::solve(&rows, &ones).ok_or(Error::NoPositivityCertificate)?;
    let independent = linalg::rank(&rows) == r;

    let offsets = |n: &[u32]| {
        n.iter()
            .scan(0usize, |acc, &k| {
                let o = *acc;
                *acc += k as usize;
                Some(o)
            })
            .collect::<Vec<_>>()
    };
    let x_off = offsets(&s);
    let y_off = offsets(&t);
    let st: Vec<u32> = s.iter().zip(&t).map(|(a, b)| a * b).collect();
    let z_off = offsets(&st);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut zs = Vec::new();
    for i in 0..r as u32 {
        let (si, ti) = (s[i as usize], t[i as usize]);
        xs.extend((1..=si).map(|j| Var::new("x", [i + 1, j])));
        ys.extend((1..=ti).map(|k| Var::new("y", [i + 1, k])));
        for j in 1..=si {
            zs.extend((1..=ti).map(|k| Var::new("z", [i + 1, j, k])));
        }
    }
    let x_ring = Ring::new(xs)?;
    let y_ring = Ring::new(ys)?;
    let z_ring = Ring::new(zs)?;
    let xy_ring = Ring::concat(&x_ring, &y_ring);
    Ok(TfpSpec { columns, s, t, omega, independent, x_ring, y_ring, z_ring, xy_ring, x_off, y_off, z_off })
}

impl TfpSpec {
    pub fn r(&self) -> usize {
        self.columns.len()
    }

    pub fn s(&self) -> &[u32] {
        &self.s
    }

    pub fn t(&self) -> &[u32] {
        &self.t
    }

    pub fn columns(&self) -> &[Vec<i64>] {
        &self.columns
    }

    pub fn omega(&self) -> &[Rational] {
        &self.omega
    }

    pub fn is_independent(&self) -> bool {
        self.independent
    }

    pub fn x_ring(&self) -> &RingRef {
        &self.x_ring
    }

    pub fn y_ring(&self) -> &RingRef {
        &self.y_ring
    }

    pub fn z_ring(&self) -> &RingRef {
        &self.z_ring
    }

    /// `x` variables followed by `y` variables.
    pub fn xy_ring(&self) -> &RingRef {
        &self.xy_ring
    }

    pub fn side_ring(&self, side: Side) -> &RingRef {
        match side {
            Side::X => &self.x_ring,
            Side::Y => &self.y_ring,
        }
    }

    /// Position of `x_i_j` (1-based `i`, `j`) in the x ring.
    pub fn x_index(&self, i: u32, j: u32) -> usize {
        self.x_off[i as usize - 1] + j as usize - 1
    }

    pub fn y_index(&self, i: u32, k: u32) -> usize {
        self.y_off[i as usize - 1] + k as usize - 1
    }

    pub fn z_index(&self, i: u32, j: u32, k: u32) -> usize {
        let t = self.t[i as usize - 1] as usize;
        self.z_off[i as usize - 1] + (j as usize - 1) * t + k as usize - 1
    }

    /// `(i, j)` of an x-ring variable, or `(i, k)` of a y-ring variable.
    pub fn side_indices(&self, side: Side, v: usize) -> (u32, u32) {
        let var = self.side_ring(side).var(v);
        (var.indices[0], var.indices[1])
    }

    fn grading(&self, ring: &RingRef) -> MultiGrading {
        let degrees = ring.vars().iter().map(|v| self.columns[v.indices[0] as usize - 1].clone()).collect();
        MultiGrading::new(self.columns[0].len(), degrees)
            .and_then(|g| g.with_omega(self.omega.clone()))
            .expect("certificate was solved for these columns")
    }

    /// `deg(x^i_j) = a^i`.
    pub fn x_grading(&self) -> MultiGrading {
        self.grading(&self.x_ring)
    }

    pub fn y_grading(&self) -> MultiGrading {
        self.grading(&self.y_ring)
    }

    pub fn z_grading(&self) -> MultiGrading {
        self.grading(&self.z_ring)
    }

    pub fn side_grading(&self, side: Side) -> MultiGrading {
        self.grading(self.side_ring(side))
    }

    /// Embeds a polynomial of the x or y ring into the joint ring.
    pub fn to_xy<C: Coeff>(&self, f: &Polynomial<C>, side: Side) -> Polynomial<C> {
        let nx = self.x_ring.len();
        let map: Vec<usize> = match side {
            Side::X => (0..nx).collect(),
            Side::Y => (nx..nx + self.y_ring.len()).collect(),
        };
        f.rename(&self.xy_ring, &map)
    }
}

/// `z^i_jk -> x^i_j y^i_k`, from the z ring to the joint x, y ring.
pub fn phi_b<C: Coeff>(spec: &TfpSpec) -> PolynomialMap<C> {
    let nx = spec.x_ring.len();
    let n = spec.xy_ring.len();
    let images = spec
        .z_ring
        .vars()
        .iter()
        .map(|v| {
            let (i, j, k) = (v.indices[0], v.indices[1], v.indices[2]);
            let mut e = vec![0; n];
            e[spec.x_index(i, j)] = 1;
            e[nx + spec.y_index(i, k)] = 1;
            Monomial::from_exponents(e)
        })
        .collect();
    PolynomialMap::monomial(&spec.z_ring, &spec.xy_ring, images).expect("images live in the joint ring")
}

fn z_monomial(spec: &TfpSpec, idx: &[(u32, u32, u32)]) -> Monomial {
    let mut e = vec![0; spec.z_ring.len()];
    for &(i, j, k) in idx {
        e[spec.z_index(i, j, k)] += 1;
    }
    Monomial::from_exponents(e)
}

/// `z^i_{j1 k2} z^i_{j2 k1} - z^i_{j1 k1} z^i_{j2 k2}` for `j1 < j2`, `k1 < k2`,
/// enumerated by `i`, `j1`, `j2`, `k1`, `k2`.
pub fn quad_b<C: Coeff>(spec: &TfpSpec) -> Vec<Polynomial<C>> {
    let mut out = Vec::new();
    for i in 1..=spec.r() as u32 {
        let (s, t) = (spec.s[i as usize - 1], spec.t[i as usize - 1]);
        for j1 in 1..=s {
            for j2 in j1 + 1..=s {
                for k1 in 1..=t {
                    for k2 in k1 + 1..=t {
                        let lead = z_monomial(spec, &[(i, j1, k2), (i, j2, k1)]);
                        let tail = z_monomial(spec, &[(i, j1, k1), (i, j2, k2)]);
                        out.push(Polynomial::from_terms(&spec.z_ring, [(lead, C::one()), (tail, -C::one())]));
                    }
                }
            }
        }
    }
    out
}

/// Lexicographic order on the z ring with
/// `z^i_jk < z^i'_j'k'` iff `i < i'`, or `i = i'` and `j < j'`, or
/// `i = i'`, `j = j'` and `k > k'`. It selects the first term of each
/// [`quad_b`] binomial.
pub fn quad_order(spec: &TfpSpec) -> TermOrder {
    let mut priority: Vec<usize> = (0..spec.z_ring.len()).collect();
    priority.sort_by_key(|&v| {
        let ix = &spec.z_ring.var(v).indices;
        (std::cmp::Reverse(ix[0]), std::cmp::Reverse(ix[1]), ix[2])
    });
    TermOrder::permutation_lex(priority).expect("a permutation of the z variables")
}

/// Upper indices common to all terms, and each term's lower indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Tableau<C> {
    pub slots: Vec<u32>,
    pub terms: Vec<(Vec<u32>, C)>,
}

/// Writes every term of `f` as slots `(i_l, j_l)` sorted ascending.
pub fn canonical_slots<C: Coeff>(f: &Polynomial<C>, side: Side, spec: &TfpSpec) -> Result<Tableau<C>> {
    if !spec.independent {
        return Err(Error::DependentGrading);
    }
    if !Ring::same(f.ring(), spec.side_ring(side)) {
        return Err(Error::RingMismatch);
    }
    spec.side_grading(side).multidegree(f)?;
    let mut slots: Option<Vec<u32>> = None;
    let mut terms = Vec::with_capacity(f.len());
    for (m, c) in f.terms() {
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for v in m.support() {
            let p = spec.side_indices(side, v);
            pairs.extend(std::iter::repeat_n(p, m.exponents()[v] as usize));
        }
        pairs.sort_unstable();
        let upper: Vec<u32> = pairs.iter().map(|p| p.0).collect();
        match &slots {
            None => slots = Some(upper),
            Some(s) if *s != upper => return Err(Error::UpperMultisetMismatch),
            Some(_) => {}
        }
        terms.push((pairs.into_iter().map(|p| p.1).collect(), c.clone()));
    }
    Ok(Tableau { slots: slots.unwrap_or_default(), terms })
}

fn index_tuples(bounds: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        out = out.into_iter().flat_map(|p| (1..=b).map(move |k| [p.clone(), vec![k]].concat())).collect();
    }
    out
}

pub(crate) fn dedup<C: Coeff>(polys: Vec<Polynomial<C>>) -> Vec<Polynomial<C>> {
    let mut seen = HashSet::new();
    polys.into_iter().filter(|p| !p.is_zero() && seen.insert(p.to_string())).collect()
}

/// The lifts `f_k` of `f`, one per choice of free indices on the other side.
pub fn lift<C: Coeff>(f: &Polynomial<C>, side: Side, spec: &TfpSpec) -> Result<Vec<Polynomial<C>>> {
    if f.is_zero() {
        if !spec.independent {
            return Err(Error::DependentGrading);
        }
        return Ok(Vec::new());
    }
    let tab = canonical_slots(f, side, spec)?;
    let other = match side {
        Side::X => &spec.t,
        Side::Y => &spec.s,
    };
    let bounds: Vec<u32> = tab.slots.iter().map(|&i| other[i as usize - 1]).collect();
    let lifts = index_tuples(&bounds)
        .into_iter()
        .map(|free| {
            let terms = tab.terms.iter().map(|(own, c)| {
                let idx: Vec<(u32, u32, u32)> = tab
                    .slots
                    .iter()
                    .zip(own.iter().zip(&free))
                    .map(|(&i, (&a, &b))| match side {
                        Side::X => (i, a, b),
                        Side::Y => (i, b, a),
                    })
                    .collect();
                (z_monomial(spec, &idx), c.clone())
            });
            Polynomial::from_terms(&spec.z_ring, terms)
        })
        .collect();
    Ok(dedup(lifts))
}

/// `Lift(F) + Lift(G) + Quad_B`, deduplicated.
pub fn tfp_generators<C: Coeff>(f: &[Polynomial<C>], g: &[Polynomial<C>], spec: &TfpSpec) -> Result<Vec<Polynomial<C>>> {
    if !spec.independent {
        return Err(Error::DependentGrading);
    }
    let mut out = Vec::new();
    for p in f {
        out.extend(lift(p, Side::X, spec)?);
    }
    for p in g {
        out.extend(lift(p, Side::Y, spec)?);
    }
    out.extend(quad_b(spec));
    Ok(dedup(out))
}

/// Generators of the preimage of `<m>` for a monomial `m` of the joint ring
/// involving only x or only y variables.
pub fn contract_principal_monomial<C: Coeff>(m: &Monomial, spec: &TfpSpec) -> Result<Vec<Polynomial<C>>> {
    let nx = spec.x_ring.len();
    if m.len() != spec.xy_ring.len() {
        return Err(Error::RingMismatch);
    }
    let e = m.exponents();
    let has_x = e[..nx].iter().any(|&k| k > 0);
    let has_y = e[nx..].iter().any(|&k| k > 0);
    let side = match (has_x, has_y) {
        (true, true) => return Err(Error::MixedMonomial),
        (false, false) => return Err(Error::UnitMonomial),
        (true, false) => Side::X,
        (false, true) => Side::Y,
    };
    let own = match side {
        Side::X => &e[..nx],
        Side::Y => &e[nx..],
    };
    let other = match side {
        Side::X => &spec.t,
        Side::Y => &spec.s,
    };
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for (v, &k) in own.iter().enumerate() {
        pairs.extend(std::iter::repeat_n(spec.side_indices(side, v), k as usize));
    }
    let bounds: Vec<u32> = pairs.iter().map(|p| other[p.0 as usize - 1]).collect();
    let mut out: Vec<Polynomial<C>> = index_tuples(&bounds)
        .into_iter()
        .map(|free| {
            let idx: Vec<(u32, u32, u32)> = pairs
                .iter()
                .zip(&free)
                .map(|(&(i, a), &b)| match side {
                    Side::X => (i, a, b),
                    Side::Y => (i, b, a),
                })
                .collect();
            Polynomial::term(&spec.z_ring, z_monomial(spec, &idx), C::one())
        })
        .collect();
    out.extend(quad_b(spec));
    Ok(dedup(out))
}

/// The order on the z ring for which lifts of Gröbner bases plus `Quad_B`
/// form a Gröbner basis: the pullback of the stagewise pairs `(w1, w2)`,
/// then a stage making the first term of each quadric heavier, then the
/// lexicographic tie-break of [`quad_order`].
pub fn tfp_weight(w1: &WeightStack, w2: &WeightStack, spec: &TfpSpec) -> Result<TermOrder> {
    let (nx, ny) = (spec.x_ring.len(), spec.y_ring.len());
    if w1.stages().iter().any(|w| w.len() != nx) || w2.stages().iter().any(|w| w.len() != ny) {
        return Err(Error::DimensionMismatch("weight length differs from its ring".into()));
    }
    let depth = w1.stages().len().max(w2.stages().len());
    let zero_x = vec![0; nx];
    let zero_y = vec![0; ny];
    let mut stack = WeightStack::new();
    for l in 0..depth {
        let a = w1.stages().get(l).unwrap_or(&zero_x);
        let b = w2.stages().get(l).unwrap_or(&zero_y);
        let stage = spec
            .z_ring
            .vars()
            .iter()
            .map(|v| {
                let (i, j, k) = (v.indices[0], v.indices[1], v.indices[2]);
                a[spec.x_index(i, j)] + b[spec.y_index(i, k)]
            })
            .collect();
        stack.push(stage);
    }
    let top = spec.s.iter().zip(&spec.t).map(|(a, b)| (a * b) as i64).max().unwrap_or(0);
    stack.push(spec.z_ring.vars().iter().map(|v| top - (v.indices[1] as i64) * (v.indices[2] as i64)).collect());
    let TieBreak::PermutationLex(p) = quad_order(spec).tie_break().clone() else { unreachable!() };
    TermOrder::new(spec.z_ring.len(), stack, TieBreak::PermutationLex(p))
}

/// [`tfp_weight`] for two term orders, each unrolled into its weight stack.
pub fn tfp_order(x_order: &TermOrder, y_order: &TermOrder, spec: &TfpSpec) -> Result<TermOrder> {
    tfp_weight(&x_order.expanded(), &y_order.expanded(), spec)
}

/// Pointwise product over the union of degrees; a missing degree counts 0.
pub fn hadamard_hilbert(h1: &HilbertTable, h2: &HilbertTable) -> HilbertTable {
    h1.keys()
        .chain(h2.keys())
        .map(|u| (u.clone(), h1.get(u).copied().unwrap_or(0) * h2.get(u).copied().unwrap_or(0)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{buchberger, initial_form, is_groebner, ComputeLimits};
    use crate::poly::parse_polynomial;

    fn segre() -> TfpSpec {
        validate_spec(vec![vec![1]], vec![2], vec![2]).unwrap()
    }

    fn q(s: &str, r: &RingRef) -> Polynomial<Rational> {
        parse_polynomial(s, r).unwrap()
    }

    #[test]
    fn validation_flags() {
        let id = validate_spec(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], vec![1; 3], vec![1; 3]).unwrap();
        assert!(id.is_independent());
        assert_eq!(id.omega(), vec![Rational::from_integer(1.into()); 3].as_slice());
        let dep = validate_spec(
            vec![vec![1, 0, 1, 0], vec![1, 0, 0, 1], vec![0, 1, 1, 0], vec![0, 1, 0, 1]],
            vec![2; 4],
            vec![2; 4],
        )
        .unwrap();
        assert!(!dep.is_independent());
        assert_eq!(
            tfp_generators::<Rational>(&[], &[], &dep).unwrap_err(),
            Error::DependentGrading
        );
        let bad = validate_spec(vec![vec![1], vec![2]], vec![1, 1], vec![1, 1]);
        assert_eq!(bad.unwrap_err(), Error::NoPositivityCertificate);
    }

    #[test]
    fn phi_and_quad_for_segre() {
        let spec = segre();
        let phi = phi_b::<Rational>(&spec);
        let shown: Vec<String> = phi.images().iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["x_1_1*y_1_1", "x_1_1*y_1_2", "x_1_2*y_1_1", "x_1_2*y_1_2"]);
        let quads = quad_b::<Rational>(&spec);
        assert_eq!(quads.len(), 1);
        let o = quad_order(&spec);
        assert_eq!(quads[0].display_in(&o), "z_1_1_2*z_1_2_1 - z_1_1_1*z_1_2_2");
        assert!(phi.apply(&quads[0]).is_zero());
        let w = tfp_weight(&WeightStack::new(), &WeightStack::new(), &spec).unwrap();
        assert!(w.is_term_order());
        assert_eq!(quads[0].leading(&w).unwrap().0, quads[0].leading(&o).unwrap().0);
        assert!(is_groebner(&quads, &w));
    }

    #[test]
    fn quad_count() {
        let spec = validate_spec(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], vec![3; 3], vec![3; 3]).unwrap();
        assert_eq!(quad_b::<Rational>(&spec).len(), 27);
        let thin = validate_spec(vec![vec![1]], vec![1], vec![5]).unwrap();
        assert!(quad_b::<Rational>(&thin).is_empty());
    }

    #[test]
    fn lifts_linear_and_squares() {
        let spec = validate_spec(vec![vec![1]], vec![2], vec![3]).unwrap();
        let f = q("x_1_1 - x_1_2", spec.x_ring());
        let l = lift(&f, Side::X, &spec).unwrap();
        let shown: Vec<String> = l.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["z_1_1_1 - z_1_2_1", "z_1_1_2 - z_1_2_2", "z_1_1_3 - z_1_2_3"]);
        let sq = q("x_1_1^2", spec.x_ring());
        let tab = canonical_slots(&sq, Side::X, &spec).unwrap();
        assert_eq!(tab.slots, vec![1, 1]);
        assert_eq!(tab.terms[0].0, vec![1, 1]);
        let phi = phi_b::<Rational>(&spec);
        let g = q("x_1_1^2 - 2*x_1_1*x_1_2 + x_1_2^2", spec.x_ring());
        for fk in lift(&g, Side::X, &spec).unwrap() {
            let img = phi.apply(&fk);
            // image is a y-monomial times g
            let lead_y: Vec<u32> = img.terms()[0].0.exponents()[2..].to_vec();
            let ymon = Polynomial::term(spec.xy_ring(), Monomial::from_exponents([vec![0, 0], lead_y].concat()), Rational::from_integer(1.into()));
            assert_eq!(img, &ymon * &spec.to_xy(&g, Side::X));
        }
    }

    #[test]
    fn principal_monomial_matches_oracle() {
        let spec = validate_spec(vec![vec![1, 0], vec![0, 1]], vec![2, 1], vec![2, 2]).unwrap();
        let phi = phi_b::<Rational>(&spec);
        let m = q("x_1_1*x_2_1", spec.xy_ring());
        let mono = m.as_monomial().unwrap().clone();
        let gens = contract_principal_monomial::<Rational>(&mono, &spec).unwrap();
        let lim = ComputeLimits::default();
        let oracle = crate::oracle::contract(&phi, &[m], &lim).unwrap();
        let ours = buchberger(spec.z_ring(), &gens, &TermOrder::grevlex(spec.z_ring().len()), &lim).unwrap();
        assert_eq!(ours.generators(), oracle.generators());
        let mixed = q("x_1_1*y_1_1", spec.xy_ring());
        assert_eq!(
            contract_principal_monomial::<Rational>(mixed.as_monomial().unwrap(), &spec).unwrap_err(),
            Error::MixedMonomial
        );
        let one = Monomial::one(spec.xy_ring().len());
        assert_eq!(contract_principal_monomial::<Rational>(&one, &spec).unwrap_err(), Error::UnitMonomial);
    }

    #[test]
    fn inhomogeneous_rejected() {
        let spec = segre();
        let f = q("x_1_1 + x_1_1^2", spec.x_ring());
        assert!(matches!(lift(&f, Side::X, &spec), Err(Error::Inhomogeneous { .. })));
    }

    #[test]
    fn hadamard_unions_keys() {
        let h1: HilbertTable = [(vec![0], 1), (vec![1], 2), (vec![2], 3)].into();
        let h2: HilbertTable = [(vec![0], 1), (vec![1], 1), (vec![3], 4)].into();
        let h = hadamard_hilbert(&h1, &h2);
        assert_eq!(h, [(vec![0], 1), (vec![1], 2), (vec![2], 0), (vec![3], 0)].into());
    }

    #[test]
    fn first_stage_is_pullback() {
        let spec = segre();
        let w1 = WeightStack::from_integer(vec![vec![3, 1]]);
        let w2 = WeightStack::from_integer(vec![vec![0, 2]]);
        let o = tfp_weight(&w1, &w2, &spec).unwrap();
        assert_eq!(o.weights().stages()[0], vec![3, 5, 1, 3]);
        let f = quad_b::<Rational>(&spec).remove(0);
        let stage1 = WeightStack::from_integer(vec![o.weights().stages()[0].clone()]);
        assert_eq!(initial_form(&f, &stage1), f);
    }
}
