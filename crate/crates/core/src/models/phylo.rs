//! Group-based models on rooted trees whose leaves sit on a circle in order.

use super::{index_tuples, tensor_ring, tuple_position, Factorization};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::oracle::PolynomialMap;
use crate::poly::{Monomial, Polynomial, Ring, Var};

/// A group given by its multiplication table; element `k` (0-based here,
/// `k + 1` in variable indices) composes as `table[a][b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table must be square with entries in range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == identity && table[b][a] == identity) {
                return Err(Error::InvalidGroup(format!("element {} has no inverse", a + 1)));
            }
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup("not associative".into()));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, identity })
    }

    /// `Z_n` with element `k` standing for the residue `k`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("empty group".into()));
        }
        Self::from_table((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    /// Pairs `(g, h)` at position `g * |H| + h`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Result<Self> {
        let (m, n) = (g.order(), h.order());
        let table = (0..m * n)
            .map(|a| (0..m * n).map(|b| g.table[a / n][b / n] * n + h.table[a % n][b % n]).collect())
            .collect();
        Self::from_table(table)
    }

    /// Permutations of three letters in lexicographic order, composed as
    /// functions (`(ab)(i) = a(b(i))`).
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        let c = [a[b[0]], a[b[1]], a[b[2]]];
                        perms.iter().position(|p| *p == c).expect("closed under composition")
                    })
                    .collect()
            })
            .collect();
        Self::from_table(table).expect("S3 is a group")
    }

    /// `z<n>` for cyclic groups, `s3`, and products joined by `x`
    /// (`z2xz2`).
    pub fn from_name(name: &str) -> Result<Self> {
        let mut acc: Option<FiniteGroup> = None;
        for part in name.trim().to_ascii_lowercase().split('x') {
            let g = match part {
                "s3" => Self::symmetric3(),
                p if p.starts_with('z') => match p[1..].parse::<usize>() {
                    Ok(n) => Self::cyclic(n)?,
                    Err(_) => return Err(Error::InvalidGroup(format!("unknown group `{name}`"))),
                },
                _ => return Err(Error::InvalidGroup(format!("unknown group `{name}`"))),
            };
            acc = Some(match acc {
                None => g,
                Some(a) => Self::product(&a, &g)?,
            });
        }
        acc.ok_or_else(|| Error::InvalidGroup("empty group name".into()))
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Left-to-right composition of `gs`.
    pub fn sum(&self, gs: impl IntoIterator<Item = usize>) -> usize {
        gs.into_iter().fold(self.identity, |acc, g| self.table[acc][g])
    }
}

/// A tree whose root is a leaf. Non-root leaves are numbered `1..=n` by
/// their position in the planar order; edges are numbered from 1, leaf edges
/// first, so the edge above leaf `i` is edge `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    parents: Vec<Option<usize>>,
    leaves: Vec<usize>,
    /// (parent, child, descendant leaf interval as 1-based `lo..=hi`)
    edges: Vec<(usize, usize, usize, usize)>,
}

impl RootedTree {
    /// `parents[v]` is the parent of node `v`, `None` for the root.
    /// `leaf_order` lists the non-root leaves in planar order.
    pub fn from_parents(parents: Vec<Option<usize>>, leaf_order: Vec<usize>) -> Result<Self> {
        let n = parents.len();
        let roots: Vec<usize> = (0..n).filter(|&v| parents[v].is_none()).collect();
        let &[root] = roots.as_slice() else {
            return Err(Error::InvalidTree("exactly one root required".into()));
        };
        let mut children = vec![Vec::new(); n];
        for (v, p) in parents.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n || p == v {
                    return Err(Error::InvalidTree(format!("bad parent of node {v}")));
                }
                children[p].push(v);
            }
        }
        // every node must reach the root
        for v in 0..n {
            let (mut u, mut steps) = (v, 0);
            while let Some(p) = parents[u] {
                u = p;
                steps += 1;
                if steps > n {
                    return Err(Error::InvalidTree("parent array has a cycle".into()));
                }
            }
        }
        if children[root].len() != 1 {
            return Err(Error::InvalidTree("the root must be a leaf".into()));
        }
        let mut leaves: Vec<usize> = (0..n).filter(|&v| v != root && children[v].is_empty()).collect();
        let mut sorted_order = leaf_order.clone();
        sorted_order.sort_unstable();
        leaves.sort_unstable();
        if sorted_order != leaves {
            return Err(Error::InvalidTree("leaf order must list every non-root leaf once".into()));
        }
        let pos = |v: usize| leaf_order.iter().position(|&l| l == v).expect("leaf") + 1;
        let mut edges = Vec::new();
        for v in (0..n).filter(|&v| v != root) {
            let mut de = Vec::new();
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                if children[u].is_empty() {
                    de.push(pos(u));
                }
                stack.extend(&children[u]);
            }
            de.sort_unstable();
            let (lo, hi) = (de[0], de[de.len() - 1]);
            if hi - lo + 1 != de.len() {
                return Err(Error::NonIntervalDescendants { edge: v, leaves: de });
            }
            edges.push((parents[v].expect("non-root"), v, lo, hi));
        }
        edges.sort_by_key(|&(_, v, lo, hi)| (hi - lo, lo, v));
        Ok(RootedTree { parents, leaves: leaf_order, edges })
    }

    /// The claw with leaves `1..=n` hanging off the root's neighbour.
    pub fn claw(n: usize) -> Result<Self> {
        let mut parents = vec![None, Some(0)];
        parents.extend((0..n).map(|_| Some(1)));
        Self::from_parents(parents, (2..n + 2).collect())
    }

    /// Number of non-root leaves.
    pub fn n(&self) -> usize {
        self.leaves.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Descendant leaves of edge `e` (1-based) as `(lo, hi)`.
    pub fn descendants(&self, e: usize) -> (usize, usize) {
        let (_, _, lo, hi) = self.edges[e - 1];
        (lo, hi)
    }

    /// Edges not incident to a leaf (the root counts as a leaf).
    pub fn interior_edges(&self) -> Vec<usize> {
        let is_leaf = |v: usize| self.parents[v].is_none() || self.leaves.contains(&v);
        (1..=self.edges.len())
            .filter(|&e| {
                let (p, c, _, _) = self.edges[e - 1];
                !is_leaf(p) && !is_leaf(c)
            })
            .collect()
    }
}

/// `q_{g_1..g_n} -> prod over edges e of a<e>_{g_e}`, `g_e` composed in
/// increasing leaf order.
pub fn group_based_map<C: Coeff>(g: &FiniteGroup, t: &RootedTree) -> Result<PolynomialMap<C>> {
    let m = g.order() as u32;
    let source = tensor_ring("q", &vec![m; t.n()])?;
    let target = Ring::new(
        (1..=t.edge_count())
            .flat_map(|e| (1..=m).map(move |h| Var::new(format!("a{e}"), [h])))
            .collect(),
    )?;
    let images = index_tuples(&vec![m; t.n()])
        .into_iter()
        .map(|gs| {
            let mut e = vec![0; target.len()];
            for (k, &(_, _, lo, hi)) in t.edges.iter().enumerate() {
                let ge = g.sum((lo..=hi).map(|l| gs[l - 1] as usize - 1));
                e[k * m as usize + ge] += 1;
            }
            Polynomial::from_terms(&target, [(Monomial::from_exponents(e), C::one())])
        })
        .collect();
    PolynomialMap::new(&source, &target, images)
}

/// A tree cut along an interior edge `e`: `plus` keeps the root and ends in
/// a new leaf where the subtree below `e` was, `minus` is that subtree
/// rooted at the tail of `e`.
#[derive(Clone, Debug)]
pub struct TreeSplit {
    pub edge: usize,
    pub plus: RootedTree,
    pub minus: RootedTree,
    /// Left component is `plus`, right is `minus`; classes are `g_e`.
    pub factorization: Factorization,
}

pub fn tree_split(g: &FiniteGroup, t: &RootedTree, e: usize) -> Result<TreeSplit> {
    let interior = t.interior_edges();
    if interior.is_empty() {
        return Err(Error::NoInteriorEdge);
    }
    if !interior.contains(&e) {
        return Err(Error::InvalidSplit(format!("edge {e} is not interior")));
    }
    let (tail, head, lo, hi) = t.edges[e - 1];
    let nodes = t.parents.len();
    let below = |v: usize| {
        let mut u = v;
        loop {
            if u == head {
                return true;
            }
            match t.parents[u] {
                Some(p) => u = p,
                None => return false,
            }
        }
    };
    // minus: the subtree under head, plus tail as its root
    let keep: Vec<usize> = (0..nodes).filter(|&v| v == tail || below(v)).collect();
    let idx = |v: usize, keep: &[usize]| keep.iter().position(|&w| w == v).expect("kept node");
    let parents = keep.iter().map(|&v| if v == tail { None } else { t.parents[v].map(|p| idx(p, &keep)) }).collect();
    let order = t.leaves[lo - 1..hi].iter().map(|&l| idx(l, &keep)).collect();
    let minus = RootedTree::from_parents(parents, order)?;
    // plus: drop everything strictly below head
    let keep: Vec<usize> = (0..nodes).filter(|&v| v == head || !below(v)).collect();
    let parents = keep.iter().map(|&v| t.parents[v].map(|p| idx(p, &keep))).collect();
    let mut order: Vec<usize> = t.leaves[..lo - 1].iter().map(|&l| idx(l, &keep)).collect();
    order.push(idx(head, &keep));
    order.extend(t.leaves[hi..].iter().map(|&l| idx(l, &keep)));
    let plus = RootedTree::from_parents(parents, order)?;

    let m = g.order() as u32;
    let n = t.n();
    let full = tensor_ring("q", &vec![m; n])?;
    let left = tensor_ring("q", &vec![m; plus.n()])?;
    let right = tensor_ring("q", &vec![m; minus.n()])?;
    let parts: Vec<(usize, usize, usize)> = index_tuples(&vec![m; n])
        .iter()
        .map(|gs| {
            let ge = g.sum(gs[lo - 1..hi].iter().map(|&x| x as usize - 1));
            let mut plus_idx = gs[..lo - 1].to_vec();
            plus_idx.push(ge as u32 + 1);
            plus_idx.extend_from_slice(&gs[hi..]);
            let l = tuple_position(&vec![m; plus.n()], &plus_idx);
            let r = tuple_position(&vec![m; minus.n()], &gs[lo - 1..hi]);
            (ge, l, r)
        })
        .collect();
    let factorization = Factorization::new(&full, &left, &right, &parts)?;
    Ok(TreeSplit { edge: e, plus, minus, factorization })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    /// Root leaf 0 -> u; u -> w and leaf 3; w -> leaves 1 and 2.
    pub(crate) fn four_leaf() -> RootedTree {
        // nodes: 0 root, 1 u, 2 w, 3 leaf1, 4 leaf2, 5 leaf3
        RootedTree::from_parents(vec![None, Some(0), Some(1), Some(2), Some(2), Some(1)], vec![3, 4, 5]).unwrap()
    }

    #[test]
    fn groups() {
        assert!(FiniteGroup::cyclic(4).unwrap().is_abelian());
        assert!(!FiniteGroup::symmetric3().is_abelian());
        let k4 = FiniteGroup::product(&FiniteGroup::cyclic(2).unwrap(), &FiniteGroup::cyclic(2).unwrap()).unwrap();
        assert_eq!(k4.order(), 4);
        assert!((0..4).all(|a| k4.compose(a, a) == k4.identity()));
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert_eq!(FiniteGroup::from_name("z2xz2").unwrap(), k4);
        assert_eq!(FiniteGroup::from_name("S3").unwrap().order(), 6);
        assert!(FiniteGroup::from_name("q8").is_err());
    }

    #[test]
    fn claw_map() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let t = RootedTree::claw(2).unwrap();
        let m = group_based_map::<Rational>(&z2, &t).unwrap();
        let q = m.source().index_of(&Var::new("q", [2u32, 2])).unwrap();
        assert_eq!(m.images()[q].to_string(), "a1_2*a2_2*a3_1");
        assert!(t.interior_edges().is_empty());
        assert!(matches!(tree_split(&z2, &t, 1), Err(Error::NoInteriorEdge)));
    }

    #[test]
    fn intervals_are_checked() {
        // leaves 1 and 3 share a cherry
        let r = RootedTree::from_parents(vec![None, Some(0), Some(1), Some(2), Some(2), Some(1)], vec![3, 5, 4]);
        assert!(matches!(r, Err(Error::NonIntervalDescendants { .. })));
    }

    #[test]
    fn four_leaf_split() {
        let t = four_leaf();
        assert_eq!(t.interior_edges(), vec![4]);
        assert_eq!(t.descendants(4), (1, 2));
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let s = tree_split(&z2, &t, 4).unwrap();
        assert_eq!(s.plus.n(), 2);
        assert_eq!(s.minus.n(), 2);
        assert!(s.plus.interior_edges().is_empty() && s.minus.interior_edges().is_empty());
        assert_eq!(s.factorization.spec().r(), 2);
        assert_eq!(s.factorization.spec().s(), &[2, 2]);
        assert_eq!(s.factorization.spec().t(), &[2, 2]);
        assert!(matches!(tree_split(&z2, &t, 1), Err(Error::InvalidSplit(_))));
    }
}
