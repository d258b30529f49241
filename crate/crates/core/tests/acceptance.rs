//! Acceptance gate. Every comparison is exact; one line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use tfp_core::groebner::{buchberger, ideal_equal, is_groebner};
use tfp_core::models::{
    chain_generators, hidden_map, segre_flattening_minors, segre_map, segre_tfp, three_cycle_spec, ModelDims,
    SimplicialComplex,
};
use tfp_core::oracle;
use tfp_core::tfp::{self, tfp_generators};
use tfp_core::verify::{check_case_with, CaseSpec, Check, Recipe, SuiteReport};
use tfp_core::{ComputeLimits, Error, Poly, Rational, TermOrder};

type Outcome = Result<String, String>;

fn limits() -> ComputeLimits {
    ComputeLimits::unlimited()
}

fn dims(d: &[u32]) -> ModelDims {
    ModelDims::new(d.to_vec()).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs a case through the verification runner; every listed check must pass.
fn run_case(name: &str, recipe: Recipe, checks: &[Check], bound: u32) -> Result<SuiteReport, String> {
    let case = CaseSpec {
        name: name.into(),
        recipe,
        checks: checks.to_vec(),
        limits: None,
        mutate: false,
        hilbert_bound: Some(bound),
    };
    let report = check_case_with(&case, &limits(), bound);
    let suite = SuiteReport { cases: vec![report] };
    let report = &suite.cases[0];
    if report.checks.len() != checks.len() || !report.checks.iter().all(|c| c.verdict == tfp_core::verify::Verdict::Pass)
    {
        return Err(suite.to_text());
    }
    Ok(suite)
}

fn quadrics_are_the_toric_ideal() -> Outcome {
    let mut cases = 0;
    for r in 1..=2usize {
        let shapes: Vec<Vec<u32>> = match r {
            1 => (1..=3).map(|a| vec![a]).collect(),
            _ => (1..=3).flat_map(|a| (1..=3).map(move |b| vec![a, b])).collect(),
        };
        for s in &shapes {
            for t in &shapes {
                let columns = (0..r).map(|c| (0..r).map(|k| (k == c) as i64).collect()).collect();
                let spec = tfp::validate_spec(columns, s.clone(), t.clone()).map_err(|e| e.to_string())?;
                let quad: Vec<Poly> = tfp::quad_b(&spec);
                let kernel = oracle::kernel(&tfp::phi_b::<Rational>(&spec), &limits()).map_err(|e| e.to_string())?;
                let z = spec.z_ring();
                let equal = ideal_equal(z, &quad, kernel.generators(), &TermOrder::grevlex(z.len()), &limits())
                    .map_err(|e| e.to_string())?;
                ensure(equal, || format!("r={r} s={s:?} t={t:?}: ideal differs from the kernel"))?;
                ensure(is_groebner(&quad, &tfp::quad_order(&spec)), || {
                    format!("r={r} s={s:?} t={t:?}: not a Groebner basis")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} shapes"))
}

fn segre_products() -> Outcome {
    for d in [&[2, 2][..], &[2, 2, 2]] {
        let d = dims(d);
        let (gens, order) = segre_tfp::<Rational>(&d).map_err(|e| e.to_string())?;
        let map = segre_map::<Rational>(&d).map_err(|e| e.to_string())?;
        let kernel = oracle::kernel(&map, &limits()).map_err(|e| e.to_string())?;
        let ring = map.source();
        let grevlex = TermOrder::grevlex(ring.len());
        ensure(ideal_equal(ring, &gens, kernel.generators(), &grevlex, &limits()).map_err(|e| e.to_string())?, || {
            format!("d={:?}: product differs from the kernel", d.as_slice())
        })?;
        let gb = buchberger(ring, &gens, &order, &limits()).map_err(|e| e.to_string())?;
        ensure(gb.leading_monomials().iter().all(|m| m.exponents().iter().all(|&e| e <= 1)), || {
            format!("d={:?}: initial ideal is not squarefree", d.as_slice())
        })?;
        if d.len() == 3 {
            let minors = segre_flattening_minors::<Rational>(&d).map_err(|e| e.to_string())?;
            ensure(ideal_equal(ring, &gens, &minors, &grevlex, &limits()).map_err(|e| e.to_string())?, || {
                "d=(2,2,2): product differs from the flattening minors".into()
            })?;
        }
    }
    Ok("d=(2,2), (2,2,2)".into())
}

fn hidden_chain_base() -> Outcome {
    let chain = SimplicialComplex::chain(3).map_err(|e| e.to_string())?;
    let d = dims(&[3, 2, 3]);
    let kernel = oracle::kernel(&hidden_map::<Rational>(&chain, &d, &[2]).map_err(|e| e.to_string())?, &limits())
        .map_err(|e| e.to_string())?;
    let det = chain_generators::<Rational>(1, &d).map_err(|e| e.to_string())?;
    ensure(det.len() == 1 && det[0].terms().len() == 6, || "expected one 3x3 determinant".into())?;
    let ring = kernel.ring();
    ensure(
        ideal_equal(ring, kernel.generators(), &det, &TermOrder::grevlex(ring.len()), &limits())
            .map_err(|e| e.to_string())?,
        || format!("d=(3,2,3): kernel has {} generators, not the determinant", kernel.len()),
    )?;
    let small = oracle::kernel(
        &hidden_map::<Rational>(&chain, &dims(&[2, 2, 2]), &[2]).map_err(|e| e.to_string())?,
        &limits(),
    )
    .map_err(|e| e.to_string())?;
    ensure(small.is_empty(), || format!("d=(2,2,2): kernel has {} generators", small.len()))?;
    Ok("determinant; zero ideal".into())
}

fn five_vertex_chain() -> Outcome {
    let d = vec![3, 2, 3, 2, 3];
    let reference = chain_generators::<Rational>(2, &dims(&d)).map_err(|e| e.to_string())?;
    ensure(reference.len() == 192, || format!("{} chain minors, expected 192", reference.len()))?;
    run_case(
        "chain-3-2-3-2-3",
        Recipe::Chain { n: 2, d, oracle: false },
        &[Check::Membership, Check::Groebner, Check::IdealEquality],
        4,
    )?;
    Ok("vanishing, Groebner basis, equal to the minors".into())
}

fn reducible_hierarchical() -> Outcome {
    run_case(
        "three-chain",
        Recipe::Hierarchical { facets: vec![vec![1, 2], vec![2, 3]], d: vec![2, 2, 2], split: 0 },
        &[Check::IdealEquality],
        4,
    )?;
    run_case(
        "four-chain",
        Recipe::Hierarchical { facets: vec![vec![1, 2], vec![2, 3], vec![3, 4]], d: vec![2, 2, 2, 2], split: 0 },
        &[Check::IdealEquality],
        4,
    )?;
    Ok("3-chain, 4-chain".into())
}

fn hilbert_functions() -> Outcome {
    let cases = [
        ("segre-2-2", Recipe::Segre { d: vec![2, 2] }),
        ("segre-2-2-2", Recipe::Segre { d: vec![2, 2, 2] }),
        ("three-chain", Recipe::Hierarchical { facets: vec![vec![1, 2], vec![2, 3]], d: vec![2, 2, 2], split: 0 }),
        (
            "four-chain",
            Recipe::Hierarchical { facets: vec![vec![1, 2], vec![2, 3], vec![3, 4]], d: vec![2, 2, 2, 2], split: 0 },
        ),
    ];
    for (name, recipe) in cases {
        run_case(name, recipe, &[Check::HilbertHadamard], 4)?;
    }
    Ok("4 products, degrees up to 4".into())
}

fn group_based_tree() -> Outcome {
    run_case(
        "z2-four-leaves",
        Recipe::Phylo {
            group: "z2".into(),
            parents: vec![-1, 0, 1, 2, 2, 1],
            leaf_order: vec![3, 4, 5],
            edge: 4,
        },
        &[Check::Membership, Check::IdealEquality],
        4,
    )?;
    Ok("Z2, 4 leaves".into())
}

fn dependent_grading_refused() -> Outcome {
    let spec = three_cycle_spec(&dims(&[2, 2, 2])).map_err(|e| e.to_string())?;
    ensure(!spec.is_independent(), || "three-cycle grading reported independent".into())?;
    match tfp_generators::<Rational>(&[], &[], &spec) {
        Err(Error::DependentGrading) => Ok("flagged and refused".into()),
        other => Err(format!("tfp_generators returned {other:?}")),
    }
}

fn random_instances() -> Outcome {
    let suite = run_case(
        "random",
        Recipe::Random { seed: 1000, count: 100 },
        &[
            Check::Membership,
            Check::Groebner,
            Check::PseudoGroebner,
            Check::IdealEquality,
            Check::Containment,
            Check::Splitting,
            Check::LiftIdentity,
        ],
        4,
    )?;
    let seeds = &suite.cases[0].seeds;
    ensure(seeds.len() == 100, || format!("{} seeds ran", seeds.len()))?;
    Ok(format!("seeds {}..={}", seeds[0], seeds[seeds.len() - 1]))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("quadrics generate the toric ideal", quadrics_are_the_toric_ideal),
        ("Segre products", segre_products),
        ("hidden chain base case", hidden_chain_base),
        ("five-vertex hidden chain", five_vertex_chain),
        ("reducible hierarchical models", reducible_hierarchical),
        ("Hilbert function products", hilbert_functions),
        ("group-based tree model", group_based_tree),
        ("dependent grading", dependent_grading_refused),
        ("random instances", random_instances),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {}  {name}: {detail}  ({secs:.1} s)", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {}  {name}  ({secs:.1} s)", n + 1);
                for line in why.lines() {
                    println!("      {line}");
                }
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
