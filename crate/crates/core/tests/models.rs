use tfp_core::groebner::ideal_equal;
use tfp_core::models::{
    chain_generators, group_based_map, reducible_split, tfp_of_reducible, tree_split, FiniteGroup, ModelDims,
    RootedTree, SimplicialComplex,
};
use tfp_core::{oracle, ComputeLimits, Error, Rational, TermOrder};

fn four_leaves() -> RootedTree {
    RootedTree::from_parents(vec![None, Some(0), Some(1), Some(2), Some(2), Some(1)], vec![3, 4, 5]).unwrap()
}

#[test]
fn claw_trees_have_no_z2_invariants() {
    let tree = RootedTree::claw(2).unwrap();
    let k = oracle::kernel(&group_based_map::<Rational>(&FiniteGroup::cyclic(2).unwrap(), &tree).unwrap(), &ComputeLimits::unlimited())
        .unwrap();
    assert!(k.is_empty());
}

#[test]
fn four_leaf_tree_has_two_quadrics() {
    let map = group_based_map::<Rational>(&FiniteGroup::cyclic(2).unwrap(), &four_leaves()).unwrap();
    let k = oracle::kernel(&map, &ComputeLimits::unlimited()).unwrap();
    assert_eq!(k.len(), 2);
    assert!(k.generators().iter().all(|g| g.total_degree() == Some(2)));
}

#[test]
fn leaf_edges_do_not_split() {
    let g = FiniteGroup::cyclic(2).unwrap();
    assert!(matches!(tree_split(&g, &four_leaves(), 0), Err(Error::InvalidSplit(_))));
    assert!(matches!(tree_split(&g, &RootedTree::claw(3).unwrap(), 0), Err(Error::NoInteriorEdge)));
}

#[test]
fn every_split_of_the_four_chain_agrees() {
    let delta = SimplicialComplex::chain(4).unwrap();
    let d = ModelDims::new(vec![2, 2, 2, 2]).unwrap();
    let limits = ComputeLimits::unlimited();
    let splits = reducible_split(&delta);
    assert_eq!(splits.len(), 3);
    let mut ideals = Vec::new();
    for split in &splits {
        let ms = tfp_of_reducible::<Rational>(&delta, &d, split).unwrap();
        let left = oracle::kernel(&ms.left_map, &limits).unwrap();
        let right = oracle::kernel(&ms.right_map, &limits).unwrap();
        ideals.push(ms.factorization.generators(left.generators(), right.generators()).unwrap());
    }
    let ring = ideals[0][0].ring().clone();
    for other in &ideals[1..] {
        assert!(ideal_equal(&ring, &ideals[0], other, &TermOrder::grevlex(ring.len()), &limits).unwrap());
    }
}

#[test]
fn chain_minor_counts() {
    let d = ModelDims::new(vec![3, 2, 3, 2, 3]).unwrap();
    assert_eq!(chain_generators::<Rational>(2, &d).unwrap().len(), 192);
    let short = ModelDims::new(vec![2, 2, 2]).unwrap();
    assert!(chain_generators::<Rational>(1, &short).unwrap().is_empty());
}

#[test]
fn groups_by_name() {
    assert_eq!(FiniteGroup::from_name("z2xz2").unwrap().order(), 4);
    assert!(!FiniteGroup::from_name("s3").unwrap().is_abelian());
    assert!(FiniteGroup::from_name("q8").is_err());
}
