//! Runs constructions against the elimination oracle and reports verdicts.
//!
//! A suite is a TOML file of cases. Each case names a recipe (which product
//! to build) and the checks to run on it:
//!
//! ```toml
//! hilbert_bound = 4
//!
//! [[case]]
//! name = "three-chain"
//! recipe = { kind = "hierarchical", facets = [[1, 2], [2, 3]], d = [2, 2, 2] }
//! checks = ["ideal-equality", "hilbert-hadamard"]
//! ```
//!
//! Every case is reduced to the same shape: an x-ring ideal with a Gröbner
//! basis `F`, a y-ring ideal with `G`, the product generators in the z ring,
//! and a reference for the product ideal (an oracle kernel or contraction,
//! or a known generating set). Checks never abort the suite; errors and
//! exhausted limits become verdicts.

mod random;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use random::{random_instance, RandomInstance};

use crate::error::{Error, Result};
use crate::groebner::{
    buchberger, failing_s_pair, ideal_difference, initial_forms, standard_monomial_table, ComputeLimits,
    Discrepancy,
};
use crate::models::{
    chain_generators, chain_split, group_based_map, hidden_map, hidden_split, hierarchical_map, reducible_split,
    segre_map, segre_tfp, tfp_of_reducible, tree_split, Factorization, FiniteGroup, ModelDims, RootedTree,
    SimplicialComplex,
};
use crate::oracle;
use crate::poly::{parse_polynomial, Monomial, Polynomial, TermOrder, TieBreak, WeightStack};
use crate::tfp::{self, hadamard_hilbert, phi_b, Side, TfpSpec};
use crate::{Basis, Map, Poly, Rational};

/// The checks, in the order they run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// Every product generator lies in the reference ideal.
    Membership,
    /// The product generators pass Buchberger's criterion for the product order.
    Groebner,
    /// Initial forms for the first weight stage generate the initial ideal.
    PseudoGroebner,
    IdealEquality,
    /// Standard monomial counts of the product equal the pointwise product.
    HilbertHadamard,
    /// The product initial ideal is squarefree when both factors' are.
    Squarefree,
    /// Initial ideal of a contraction lies in the contraction of the initial ideal.
    Containment,
    /// The contraction of a monomial ideal is the sum over its generators.
    Splitting,
    /// Each lift maps to a monomial of the other side times the original.
    LiftIdentity,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Membership => "membership",
            Check::Groebner => "groebner",
            Check::PseudoGroebner => "pseudo-groebner",
            Check::IdealEquality => "ideal-equality",
            Check::HilbertHadamard => "hilbert-hadamard",
            Check::Squarefree => "squarefree",
            Check::Containment => "containment",
            Check::Splitting => "splitting",
            Check::LiftIdentity => "lift-identity",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "detail", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    /// With a witness that reproduces the failure.
    Fail(String),
    Skipped(String),
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: Check,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub millis: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub case: String,
    pub checks: Vec<CheckReport>,
    pub seeds: Vec<u64>,
    pub note: Option<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(|c| c.verdict.is_fail())
    }

    pub fn verdict(&self, check: Check) -> Option<&Verdict> {
        self.checks.iter().find(|c| c.check == check).map(|c| &c.verdict)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub cases: Vec<Report>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(Report::passed)
    }

    pub fn failures(&self) -> usize {
        self.cases.iter().flat_map(|c| &c.checks).filter(|c| c.verdict.is_fail()).count()
    }

    /// One line per check, then a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let (mut pass, mut fail, mut skip) = (0, 0, 0);
        for case in &self.cases {
            if let Some(note) = &case.note {
                let _ = writeln!(out, "note  {}  {note}", case.case);
            }
            if !case.seeds.is_empty() {
                let seeds: Vec<String> = case.seeds.iter().map(u64::to_string).collect();
                let _ = writeln!(out, "seeds {}  {}", case.case, seeds.join(","));
            }
            for c in &case.checks {
                let (tag, detail) = match &c.verdict {
                    Verdict::Pass => {
                        pass += 1;
                        ("PASS", String::new())
                    }
                    Verdict::Fail(w) => {
                        fail += 1;
                        ("FAIL", format!("  {w}"))
                    }
                    Verdict::Skipped(r) => {
                        skip += 1;
                        ("SKIP", format!("  {r}"))
                    }
                };
                let _ = writeln!(out, "{tag}  {}  {}  ({} ms){detail}", case.case, c.check.name(), c.millis);
            }
        }
        let _ = writeln!(out, "{pass} passed, {fail} failed, {skip} skipped");
        out
    }

    /// One JSON object per check.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for case in &self.cases {
            for c in &case.checks {
                let line = serde_json::json!({
                    "case": case.case,
                    "check": c.check,
                    "result": c.verdict,
                    "millis": c.millis,
                    "seeds": case.seeds,
                    "note": case.note,
                });
                out.push_str(&line.to_string());
                out.push('\n');
            }
        }
        out
    }
}

/// How to build a case.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Recipe {
    /// Explicit data; ideals in the x and y rings, optional first-stage weights.
    Tfp {
        columns: Vec<Vec<i64>>,
        s: Vec<u32>,
        t: Vec<u32>,
        #[serde(default)]
        i: Vec<String>,
        #[serde(default)]
        j: Vec<String>,
        w1: Option<Vec<i64>>,
        w2: Option<Vec<i64>>,
    },
    /// Zero ideals on both sides with unit-vector grading: the product is
    /// the toric ideal generated by the quadrics.
    Quad { s: Vec<u32>, t: Vec<u32> },
    /// Last step of the iterated product building the Segre ideal.
    Segre { d: Vec<u32> },
    Hierarchical {
        facets: Vec<Vec<usize>>,
        d: Vec<u32>,
        #[serde(default)]
        split: usize,
    },
    Hidden {
        facets: Vec<Vec<usize>>,
        d: Vec<u32>,
        hidden: Vec<usize>,
        #[serde(default)]
        split: usize,
    },
    /// The partially hidden chain on `2n + 1` vertices; the reference is the
    /// minor list unless `oracle` asks for the elimination kernel.
    Chain {
        n: usize,
        d: Vec<u32>,
        #[serde(default)]
        oracle: bool,
    },
    /// Parents as node indices, `-1` for the root.
    Phylo { group: String, parents: Vec<i64>, leaf_order: Vec<usize>, edge: usize },
    /// Dependent grading: only the oracle runs.
    ThreeCycle { d: Vec<u32> },
    Random { seed: u64, count: usize },
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseSpec {
    pub name: String,
    pub recipe: Recipe,
    pub checks: Vec<Check>,
    /// `maxdeg,maxsize,maxred`, overriding the suite default.
    #[serde(default)]
    pub limits: Option<String>,
    /// Drop one lift from the product generators.
    #[serde(default)]
    pub mutate: bool,
    #[serde(default)]
    pub hilbert_bound: Option<u32>,
}

fn default_bound() -> u32 {
    4
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default)]
    pub limits: Option<String>,
    #[serde(default = "default_bound")]
    pub hilbert_bound: u32,
    #[serde(default, rename = "case")]
    pub cases: Vec<CaseSpec>,
}

impl SuiteConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: SuiteConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let mut names = BTreeSet::new();
        for case in &cfg.cases {
            if !names.insert(case.name.as_str()) {
                return Err(Error::Config(format!("duplicate case `{}`", case.name)));
            }
            if let Some(l) = &case.limits {
                ComputeLimits::parse(l)?;
            }
        }
        if let Some(l) = &cfg.limits {
            ComputeLimits::parse(l)?;
        }
        Ok(cfg)
    }

    fn limits(&self) -> ComputeLimits {
        self.limits.as_deref().map(|l| ComputeLimits::parse(l).expect("validated")).unwrap_or_default()
    }
}

pub fn run_suite(path: &std::path::Path) -> Result<SuiteReport> {
    run_config(&std::fs::read_to_string(path)?)
}

pub fn run_config(text: &str) -> Result<SuiteReport> {
    let cfg = SuiteConfig::parse(text)?;
    let limits = cfg.limits();
    let mut cases: Vec<Report> = cfg.cases.iter().map(|c| check_case_with(c, &limits, cfg.hilbert_bound)).collect();
    cases.sort_by(|a, b| a.case.cmp(&b.case));
    Ok(SuiteReport { cases })
}

/// Runs one case with unlimited defaults.
pub fn check_case(case: &CaseSpec) -> Report {
    check_case_with(case, &ComputeLimits::default(), default_bound())
}

pub fn check_case_with(case: &CaseSpec, default_limits: &ComputeLimits, default_bound: u32) -> Report {
    let limits = match &case.limits {
        Some(l) => ComputeLimits::parse(l).unwrap_or(*default_limits),
        None => *default_limits,
    };
    let bound = case.hilbert_bound.unwrap_or(default_bound);
    let checks: BTreeSet<Check> = case.checks.iter().copied().collect();
    let mut report = Report { case: case.name.clone(), checks: Vec::new(), seeds: Vec::new(), note: None };
    let instances = match build(&case.recipe, &limits) {
        Ok(Built::Instances(v)) => v,
        Ok(Built::Refused(note)) => {
            report.checks = checks
                .iter()
                .map(|&check| CheckReport {
                    check,
                    verdict: Verdict::Skipped("construction refuses a dependent grading".into()),
                    millis: 0,
                })
                .collect();
            report.note = Some(note);
            return report;
        }
        Err(e) => {
            let verdict = error_verdict(e);
            report.checks =
                checks.iter().map(|&check| CheckReport { check, verdict: verdict.clone(), millis: 0 }).collect();
            return report;
        }
    };
    report.seeds = instances.iter().filter_map(|i| i.seed).collect();
    let mut contexts: Vec<Context> =
        instances.into_iter().map(|inst| Context::new(inst, limits, case.mutate, bound)).collect();
    for &check in &checks {
        let start = Instant::now();
        let mut verdict = Verdict::Pass;
        for ctx in &mut contexts {
            let v = ctx.run(check);
            let label = |w: String| match ctx.inst.seed {
                Some(s) => format!("seed {s}: {w}"),
                None => w,
            };
            match v {
                Verdict::Pass => {}
                Verdict::Fail(w) => {
                    verdict = Verdict::Fail(label(w));
                    break;
                }
                Verdict::Skipped(r) => {
                    if verdict == Verdict::Pass {
                        verdict = Verdict::Skipped(label(r));
                    }
                }
            }
        }
        report.checks.push(CheckReport { check, verdict, millis: start.elapsed().as_millis() });
    }
    report
}

fn error_verdict(e: Error) -> Verdict {
    match e {
        Error::LimitExceeded(p) => Verdict::Skipped(format!(
            "{} limit reached (basis {}, degree {}, {} reductions)",
            p.limit, p.basis_size, p.degree, p.reductions
        )),
        e => Verdict::Fail(format!("error: {e}")),
    }
}

/// Thm-style pseudo-Gröbner test: the initial forms of `gset` for `stage1`
/// generate the same ideal as those of `oracle_gb`, which must be a Gröbner
/// basis for an order refining `stage1`.
pub fn check_pseudo_groebner(
    gset: &[Poly],
    oracle_gb: &[Poly],
    stage1: &WeightStack,
    order: &TermOrder,
    limits: &ComputeLimits,
) -> Result<Option<Discrepancy<Rational>>> {
    let Some(ring) = gset.iter().chain(oracle_gb).map(|p| p.ring().clone()).next() else {
        return Ok(None);
    };
    ideal_difference(&ring, &initial_forms(gset, stage1), &initial_forms(oracle_gb, stage1), order, limits)
}

enum Reference {
    /// Contraction of this x, y ideal along `phi_B`.
    Contract(Vec<Poly>),
    /// Kernel of a map out of the z ring.
    Kernel(Map),
    /// A known generating set in the z ring.
    Generators(Vec<Poly>),
}

struct Instance {
    seed: Option<u64>,
    spec: TfpSpec,
    /// Gröbner bases of the two factors for `x_order` and `y_order`.
    f: Vec<Poly>,
    g: Vec<Poly>,
    x_order: TermOrder,
    y_order: TermOrder,
    reference: Reference,
    /// A parametrization of the product out of the z ring.
    substitution: Option<Map>,
    monomials: Vec<Monomial>,
    display: Option<Factorization>,
}

enum Built {
    Instances(Vec<Instance>),
    Refused(String),
}

fn dims(d: &[u32]) -> Result<ModelDims> {
    ModelDims::new(d.to_vec())
}

fn basis(ring: &crate::RingRef, gens: &[Poly], order: &TermOrder, limits: &ComputeLimits) -> Result<Vec<Poly>> {
    Ok(buchberger(ring, gens, order, limits)?.into_generators())
}

fn weighted(w: Option<&Vec<i64>>, n: usize) -> Result<TermOrder> {
    match w {
        None => Ok(TermOrder::grevlex(n)),
        Some(w) if w.len() == n => {
            TermOrder::new(n, WeightStack::from_integer(vec![w.clone()]), TieBreak::GradedRevLex)
        }
        Some(w) => Err(Error::DimensionMismatch(format!("weight of length {} for {n} variables", w.len()))),
    }
}

/// An instance from a factorization, with factor ideals given in the left
/// and right rings and a model map out of the full ring.
fn from_factorization(
    fact: Factorization,
    left: &[Poly],
    right: &[Poly],
    left_order: &TermOrder,
    model: &Map,
    reference: Option<Vec<Poly>>,
    limits: &ComputeLimits,
) -> Result<Instance> {
    let spec = fact.spec().clone();
    let x_order = fact.x_order(left_order)?;
    let y_order = fact.y_order(&TermOrder::grevlex(fact.right_ring().len()))?;
    let f: Vec<Poly> = left.iter().map(|p| fact.left_to_x(p)).collect();
    let g: Vec<Poly> = right.iter().map(|p| fact.right_to_y(p)).collect();
    let f = basis(spec.x_ring(), &f, &x_order, limits)?;
    let g = basis(spec.y_ring(), &g, &y_order, limits)?;
    let zmap = fact.z_map(model)?;
    let reference = match reference {
        Some(gens) => Reference::Generators(gens.iter().map(|p| fact.full_to_z(p)).collect()),
        None => Reference::Kernel(zmap.clone()),
    };
    Ok(Instance {
        seed: None,
        spec,
        f,
        g,
        x_order,
        y_order,
        reference,
        substitution: Some(zmap),
        monomials: Vec::new(),
        display: Some(fact),
    })
}

fn build(recipe: &Recipe, limits: &ComputeLimits) -> Result<Built> {
    let one = |i: Instance| Ok(Built::Instances(vec![i]));
    match recipe {
        Recipe::Tfp { columns, s, t, i, j, w1, w2 } => {
            let spec = tfp::validate_spec(columns.clone(), s.clone(), t.clone())?;
            if !spec.is_independent() {
                return Ok(Built::Refused("dependent grading".into()));
            }
            let x_order = weighted(w1.as_ref(), spec.x_ring().len())?;
            let y_order = weighted(w2.as_ref(), spec.y_ring().len())?;
            let ii = i.iter().map(|p| parse_polynomial(p, spec.x_ring())).collect::<Result<Vec<Poly>>>()?;
            let jj = j.iter().map(|p| parse_polynomial(p, spec.y_ring())).collect::<Result<Vec<Poly>>>()?;
            let f = basis(spec.x_ring(), &ii, &x_order, limits)?;
            let g = basis(spec.y_ring(), &jj, &y_order, limits)?;
            let ideal = ii.iter().map(|p| spec.to_xy(p, Side::X)).chain(jj.iter().map(|p| spec.to_xy(p, Side::Y)));
            one(Instance {
                seed: None,
                reference: Reference::Contract(ideal.collect()),
                f,
                g,
                x_order,
                y_order,
                substitution: None,
                monomials: Vec::new(),
                display: None,
                spec,
            })
        }
        Recipe::Quad { s, t } => {
            let r = s.len();
            let columns = (0..r).map(|c| (0..r).map(|k| (k == c) as i64).collect()).collect();
            let spec = tfp::validate_spec(columns, s.clone(), t.clone())?;
            let phi = phi_b(&spec);
            one(Instance {
                seed: None,
                f: Vec::new(),
                g: Vec::new(),
                x_order: TermOrder::grevlex(spec.x_ring().len()),
                y_order: TermOrder::grevlex(spec.y_ring().len()),
                reference: Reference::Kernel(phi.clone()),
                substitution: Some(phi),
                monomials: Vec::new(),
                display: None,
                spec,
            })
        }
        Recipe::Segre { d } => {
            let n = d.len();
            if n < 2 {
                return Err(Error::DimensionMismatch("a Segre product needs two factors".into()));
            }
            let dd = dims(d)?;
            let (left, left_order) = segre_tfp::<Rational>(&dims(&d[..n - 1])?)?;
            let split = crate::models::Split {
                left: (1..n).map(|v| vec![v]).collect(),
                right: vec![vec![n]],
                separator: Vec::new(),
            };
            let ms = tfp_of_reducible::<Rational>(&SimplicialComplex::discrete(n)?, &dd, &split)?;
            let model = segre_map(&dd)?;
            one(from_factorization(ms.factorization, &left, &[], &left_order, &model, None, limits)?)
        }
        Recipe::Hierarchical { facets, d, split } => {
            let dd = dims(d)?;
            let delta = SimplicialComplex::new(d.len(), facets.clone())?;
            let splits = reducible_split(&delta);
            let sp = splits.get(*split).ok_or_else(|| Error::InvalidSplit(format!("no split number {split}")))?;
            let ms = tfp_of_reducible::<Rational>(&delta, &dd, sp)?;
            let left = oracle::kernel(&ms.left_map, limits)?.into_generators();
            let right = oracle::kernel(&ms.right_map, limits)?.into_generators();
            let model = hierarchical_map(&delta, &dd)?;
            let lo = TermOrder::grevlex(ms.factorization.left_ring().len());
            one(from_factorization(ms.factorization, &left, &right, &lo, &model, None, limits)?)
        }
        Recipe::Hidden { facets, d, hidden, split } => {
            let dd = dims(d)?;
            let delta = SimplicialComplex::new(d.len(), facets.clone())?;
            let splits: Vec<_> =
                reducible_split(&delta).into_iter().filter(|s| !s.separator.iter().any(|v| hidden.contains(v))).collect();
            let sp = splits
                .get(*split)
                .ok_or_else(|| Error::InvalidSplit(format!("no split number {split} avoiding the hidden vertices")))?;
            let ms = hidden_split::<Rational>(&delta, &dd, hidden, sp)?;
            let left = oracle::kernel(&ms.left_map, limits)?.into_generators();
            let right = oracle::kernel(&ms.right_map, limits)?.into_generators();
            let model = hidden_map(&delta, &dd, hidden)?;
            let lo = TermOrder::grevlex(ms.factorization.left_ring().len());
            one(from_factorization(ms.factorization, &left, &right, &lo, &model, None, limits)?)
        }
        Recipe::Chain { n, d, oracle: use_oracle } => {
            if *n < 2 {
                return Err(Error::DimensionMismatch("the chain recipe needs n >= 2".into()));
            }
            let dd = dims(d)?;
            let ms = chain_split::<Rational>(*n, &dd)?;
            let left = chain_generators::<Rational>(n - 1, &dims(&d[..2 * n - 1])?)?;
            let right = chain_generators::<Rational>(1, &dims(&d[2 * n - 2..])?)?;
            let hidden: Vec<usize> = (1..=*n).map(|j| 2 * j).collect();
            let model = hidden_map(&SimplicialComplex::chain(2 * n + 1)?, &dd, &hidden)?;
            let reference = if *use_oracle { None } else { Some(chain_generators::<Rational>(*n, &dd)?) };
            let lo = TermOrder::grevlex(ms.factorization.left_ring().len());
            one(from_factorization(ms.factorization, &left, &right, &lo, &model, reference, limits)?)
        }
        Recipe::Phylo { group, parents, leaf_order, edge } => {
            let g = FiniteGroup::from_name(group)?;
            let parents = parents.iter().map(|&p| usize::try_from(p).ok()).collect();
            let tree = RootedTree::from_parents(parents, leaf_order.clone())?;
            let ts = tree_split(&g, &tree, *edge)?;
            let left = oracle::kernel(&group_based_map(&g, &ts.plus)?, limits)?.into_generators();
            let right = oracle::kernel(&group_based_map(&g, &ts.minus)?, limits)?.into_generators();
            let model = group_based_map(&g, &tree)?;
            let lo = TermOrder::grevlex(ts.factorization.left_ring().len());
            one(from_factorization(ts.factorization, &left, &right, &lo, &model, None, limits)?)
        }
        Recipe::ThreeCycle { d } => {
            let dd = dims(d)?;
            let spec = crate::models::three_cycle_spec(&dd)?;
            debug_assert!(!spec.is_independent());
            let cycle = SimplicialComplex::new(3, vec![vec![1, 2], vec![1, 3], vec![2, 3]])?;
            let note = match oracle::kernel(&hierarchical_map::<Rational>(&cycle, &dd)?, limits) {
                Ok(k) => {
                    let degrees: BTreeSet<u32> = k.generators().iter().filter_map(|p| p.total_degree()).collect();
                    format!("dependent grading; oracle kernel has {} generators of degrees {degrees:?}", k.len())
                }
                Err(Error::LimitExceeded(p)) => format!("dependent grading; oracle stopped at the {} limit", p.limit),
                Err(e) => return Err(e),
            };
            Ok(Built::Refused(note))
        }
        Recipe::Random { seed, count } => {
            let mut out = Vec::with_capacity(*count);
            for k in 0..*count as u64 {
                let inst = random_instance(seed + k)?;
                let (f, g) = inst.bases(limits)?;
                let spec = &inst.spec;
                let ideal =
                    inst.i.iter().map(|p| spec.to_xy(p, Side::X)).chain(inst.j.iter().map(|p| spec.to_xy(p, Side::Y)));
                out.push(Instance {
                    seed: Some(inst.seed),
                    reference: Reference::Contract(ideal.collect()),
                    f,
                    g,
                    x_order: inst.x_order(),
                    y_order: inst.y_order(),
                    substitution: None,
                    monomials: inst.monomials.clone(),
                    display: None,
                    spec: inst.spec,
                });
            }
            Ok(Built::Instances(out))
        }
    }
}

struct Context {
    inst: Instance,
    limits: ComputeLimits,
    bound: u32,
    gens: Vec<Poly>,
    order: TermOrder,
    reference: Option<Vec<Poly>>,
    construction: Option<Basis>,
}

impl Context {
    fn new(inst: Instance, limits: ComputeLimits, mutate: bool, bound: u32) -> Self {
        let order = tfp::tfp_order(&inst.x_order, &inst.y_order, &inst.spec).expect("orders sized for their rings");
        let mut gens = tfp::tfp_generators(&inst.f, &inst.g, &inst.spec).unwrap_or_default();
        if mutate {
            let quads: BTreeSet<String> = tfp::quad_b::<Rational>(&inst.spec).iter().map(|q| q.to_string()).collect();
            if let Some(pos) = gens.iter().rposition(|p| !quads.contains(&p.to_string())) {
                gens.remove(pos);
            }
        }
        Context { inst, limits, bound, gens, order, reference: None, construction: None }
    }

    fn show(&self, p: &Poly) -> String {
        match &self.inst.display {
            Some(f) => f.z_to_full(p).display_in(&self.order_for_display(f)),
            None => p.display_in(&self.order),
        }
    }

    fn order_for_display(&self, f: &Factorization) -> TermOrder {
        TermOrder::grevlex(f.full_ring().len())
    }

    fn run(&mut self, check: Check) -> Verdict {
        let result = match check {
            Check::Membership => self.membership(),
            Check::Groebner => Ok(self.groebner()),
            Check::PseudoGroebner => self.pseudo(),
            Check::IdealEquality => self.equality(),
            Check::HilbertHadamard => self.hilbert(),
            Check::Squarefree => self.squarefree(),
            Check::Containment => self.containment(),
            Check::Splitting => self.splitting(),
            Check::LiftIdentity => Ok(self.lift_identity()),
        };
        result.unwrap_or_else(error_verdict)
    }

    fn z_ring(&self) -> &crate::RingRef {
        self.inst.spec.z_ring()
    }

    fn reference(&mut self) -> Result<Vec<Poly>> {
        if self.reference.is_none() {
            let gens = match &self.inst.reference {
                Reference::Contract(ideal) => {
                    oracle::contract(&phi_b(&self.inst.spec), ideal, &self.limits)?.into_generators()
                }
                Reference::Kernel(map) => oracle::kernel(map, &self.limits)?.into_generators(),
                Reference::Generators(g) => g.clone(),
            };
            self.reference = Some(gens);
        }
        Ok(self.reference.clone().expect("set above"))
    }

    fn construction(&mut self) -> Result<Basis> {
        if self.construction.is_none() {
            self.construction = Some(buchberger(self.inst.spec.z_ring(), &self.gens, &self.order, &self.limits)?);
        }
        Ok(self.construction.clone().expect("set above"))
    }

    fn stage1(&self) -> WeightStack {
        WeightStack::from_integer(self.order.weights().stages()[..1].to_vec())
    }

    fn membership(&mut self) -> Result<Verdict> {
        if let Some(map) = &self.inst.substitution {
            if let Some(g) = self.gens.iter().find(|g| !map.apply(g).is_zero()) {
                return Ok(Verdict::Fail(format!("{} does not vanish on the parametrization", self.show(g))));
            }
            return Ok(Verdict::Pass);
        }
        let reference = self.reference()?;
        let gb = buchberger(self.z_ring(), &reference, &TermOrder::grevlex(self.z_ring().len()), &self.limits)?;
        Ok(match self.gens.iter().find(|g| !gb.contains(g)) {
            Some(g) => Verdict::Fail(format!("{} is not in the reference ideal", self.show(g))),
            None => Verdict::Pass,
        })
    }

    fn groebner(&self) -> Verdict {
        match failing_s_pair(&self.gens, &self.order) {
            Some((i, j, r)) => Verdict::Fail(format!(
                "S-pair of {} and {} leaves {}",
                self.show(&self.gens[i]),
                self.show(&self.gens[j]),
                self.show(&r)
            )),
            None => Verdict::Pass,
        }
    }

    fn discrepancy(&self, d: Option<Discrepancy<Rational>>, what: &str) -> Verdict {
        match d {
            None => Verdict::Pass,
            Some(Discrepancy::MissingFromFirst(p)) => {
                Verdict::Fail(format!("{what} {} of the reference is not generated by the construction", self.show(&p)))
            }
            Some(Discrepancy::MissingFromSecond(p)) => {
                Verdict::Fail(format!("{what} {} of the construction is outside the reference", self.show(&p)))
            }
        }
    }

    fn pseudo(&mut self) -> Result<Verdict> {
        let reference = self.reference()?;
        let gb = basis(self.z_ring(), &reference, &self.order, &self.limits)?;
        let d = check_pseudo_groebner(&self.gens, &gb, &self.stage1(), &self.order, &self.limits)?;
        Ok(self.discrepancy(d, "initial form"))
    }

    fn equality(&mut self) -> Result<Verdict> {
        let reference = self.reference()?;
        let d = ideal_difference(self.z_ring(), &self.gens, &reference, &self.order, &self.limits)?;
        Ok(self.discrepancy(d, "generator"))
    }

    fn hilbert(&mut self) -> Result<Verdict> {
        let spec = &self.inst.spec;
        if !spec.is_independent() {
            return Ok(Verdict::Skipped("dependent grading".into()));
        }
        let left = buchberger(spec.x_ring(), &self.inst.f, &self.inst.x_order, &self.limits)?;
        let right = buchberger(spec.y_ring(), &self.inst.g, &self.inst.y_order, &self.limits)?;
        let h1 = standard_monomial_table(&left, &spec.x_grading(), self.bound)?;
        let h2 = standard_monomial_table(&right, &spec.y_grading(), self.bound)?;
        let product = hadamard_hilbert(&h1, &h2);
        let full = standard_monomial_table(&self.construction()?, &self.inst.spec.z_grading(), self.bound)?;
        let keys: BTreeSet<&Vec<i64>> = product.keys().chain(full.keys()).collect();
        for u in keys {
            let (a, b) = (full.get(u).copied().unwrap_or(0), product.get(u).copied().unwrap_or(0));
            if a != b {
                return Ok(Verdict::Fail(format!("degree {u:?}: {a} standard monomials, product of factors {b}")));
            }
        }
        Ok(Verdict::Pass)
    }

    fn squarefree(&mut self) -> Result<Verdict> {
        let spec = &self.inst.spec;
        let left = buchberger(spec.x_ring(), &self.inst.f, &self.inst.x_order, &self.limits)?;
        let right = buchberger(spec.y_ring(), &self.inst.g, &self.inst.y_order, &self.limits)?;
        if left.leading_monomials().iter().chain(&right.leading_monomials()).any(|m| !m.is_squarefree()) {
            return Ok(Verdict::Skipped("a factor's initial ideal is not squarefree".into()));
        }
        let gb = self.construction()?;
        Ok(match gb.leading_monomials().into_iter().find(|m| !m.is_squarefree()) {
            Some(m) => {
                let p = Polynomial::term(self.z_ring(), m, Rational::from_integer(1.into()));
                Verdict::Fail(format!("leading monomial {} is not squarefree", self.show(&p)))
            }
            None => Verdict::Pass,
        })
    }

    /// First stages of the two factor orders, side by side on the x, y ring.
    fn xy_stage1(&self) -> WeightStack {
        let first = |o: &TermOrder| o.expanded().stages()[0].clone();
        WeightStack::from_integer(vec![[first(&self.inst.x_order), first(&self.inst.y_order)].concat()])
    }

    fn containment(&mut self) -> Result<Verdict> {
        let spec = &self.inst.spec;
        let w = self.xy_stage1();
        let initial: Vec<Poly> = self
            .inst
            .f
            .iter()
            .map(|p| spec.to_xy(p, Side::X))
            .chain(self.inst.g.iter().map(|p| spec.to_xy(p, Side::Y)))
            .collect();
        let initial = initial_forms(&initial, &w);
        let rhs = oracle::contract(&phi_b(spec), &initial, &self.limits)?;
        let rhs = buchberger(self.z_ring(), rhs.generators(), &self.order, &self.limits)?;
        let reference = self.reference()?;
        let gb = basis(self.z_ring(), &reference, &self.order, &self.limits)?;
        let lhs = initial_forms(&gb, &self.stage1());
        Ok(match lhs.iter().find(|p| !rhs.contains(p)) {
            Some(p) => Verdict::Fail(format!("initial form {} is outside the contracted initial ideal", self.show(p))),
            None => Verdict::Pass,
        })
    }

    fn splitting(&mut self) -> Result<Verdict> {
        let spec = &self.inst.spec;
        if self.inst.monomials.is_empty() {
            return Ok(Verdict::Skipped("no monomial ideal in this case".into()));
        }
        let one = || Rational::from_integer(1.into());
        let xy = spec.xy_ring();
        let phi = phi_b(spec);
        let ms: Vec<Poly> = self.inst.monomials.iter().map(|m| Polynomial::term(xy, m.clone(), one())).collect();
        let whole = oracle::contract(&phi, &ms, &self.limits)?.into_generators();
        let mut parts = Vec::new();
        let nx = spec.x_ring().len();
        for (m, p) in self.inst.monomials.iter().zip(&ms) {
            let single = oracle::contract(&phi, std::slice::from_ref(p), &self.limits)?.into_generators();
            let pure = m.support().all(|v| v < nx) || m.support().all(|v| v >= nx);
            if pure {
                let formula = tfp::contract_principal_monomial::<Rational>(m, spec)?;
                let d = ideal_difference(self.z_ring(), &formula, &single, &self.order, &self.limits)?;
                if d.is_some() {
                    return Ok(Verdict::Fail(format!("contraction of <{p}> differs from the principal formula")));
                }
            }
            parts.extend(single);
        }
        let d = ideal_difference(self.z_ring(), &parts, &whole, &self.order, &self.limits)?;
        Ok(match d {
            None => Verdict::Pass,
            Some(_) => {
                let ms: Vec<String> = ms.iter().map(|p| p.to_string()).collect();
                Verdict::Fail(format!("contraction of <{}> is not the sum of the single contractions", ms.join(", ")))
            }
        })
    }

    fn lift_identity(&self) -> Verdict {
        let spec = &self.inst.spec;
        let phi = phi_b::<Rational>(spec);
        let xy_order = TermOrder::grevlex(spec.xy_ring().len());
        let nx = spec.x_ring().len();
        for (side, polys) in [(Side::X, &self.inst.f), (Side::Y, &self.inst.g)] {
            for f in polys.iter() {
                let fxy = spec.to_xy(f, side);
                let Ok(lifts) = tfp::lift(f, side, spec) else {
                    return Verdict::Fail(format!("{f} cannot be lifted"));
                };
                for fk in &lifts {
                    let image = phi.apply(fk);
                    let ok = match (image.leading(&xy_order), fxy.leading(&xy_order)) {
                        (Some((m1, c1)), Some((m2, c2))) => m2.quotient_of(m1).is_some_and(|m| {
                            let other_side = match side {
                                Side::X => m.support().all(|v| v >= nx),
                                Side::Y => m.support().all(|v| v < nx),
                            };
                            other_side && image == fxy.mul_term(&m, &(c1 / c2))
                        }),
                        _ => false,
                    };
                    if !ok {
                        return Verdict::Fail(format!("image of lift {fk} of {f} is not a monomial multiple"));
                    }
                }
            }
        }
        Verdict::Pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(recipe: &str, checks: &str) -> CaseSpec {
        let text = format!("[[case]]\nname = \"c\"\nrecipe = {recipe}\nchecks = {checks}\n");
        SuiteConfig::parse(&text).unwrap().cases.remove(0)
    }

    #[test]
    fn empty_suite_passes() {
        let r = run_config("").unwrap();
        assert!(r.passed());
        assert!(r.cases.is_empty());
    }

    #[test]
    fn segre_square_all_checks() {
        let c = case(
            "{ kind = \"quad\", s = [2], t = [2] }",
            "[\"membership\", \"groebner\", \"pseudo-groebner\", \"ideal-equality\", \"hilbert-hadamard\", \"squarefree\", \"lift-identity\"]",
        );
        let r = check_case(&c);
        assert!(r.checks.iter().all(|c| c.verdict == Verdict::Pass), "{r:?}");
    }

    #[test]
    fn three_cycle_is_refused() {
        let c = case("{ kind = \"three-cycle\", d = [2, 2, 2] }", "[\"ideal-equality\"]");
        let r = check_case(&c);
        assert!(matches!(r.checks[0].verdict, Verdict::Skipped(_)));
        assert!(r.note.unwrap().contains("oracle kernel has"));
    }

    #[test]
    fn mutation_is_caught() {
        let mut c = case(
            "{ kind = \"tfp\", columns = [[1]], s = [2], t = [2], i = [\"x_1_1^2 - x_1_2^2\"] }",
            "[\"ideal-equality\"]",
        );
        assert!(check_case(&c).passed());
        c.mutate = true;
        let r = check_case(&c);
        assert!(matches!(&r.checks[0].verdict, Verdict::Fail(w) if w.contains("not generated")), "{r:?}");
    }

    #[test]
    fn random_instances_pass() {
        let c = case(
            "{ kind = \"random\", seed = 1, count = 5 }",
            "[\"ideal-equality\", \"pseudo-groebner\", \"groebner\", \"containment\", \"splitting\", \"lift-identity\"]",
        );
        let r = check_case(&c);
        assert_eq!(r.seeds, vec![1, 2, 3, 4, 5]);
        assert!(r.passed(), "{}", SuiteReport { cases: vec![r.clone()] }.to_text());
    }

    #[test]
    fn config_errors() {
        assert!(SuiteConfig::parse("[[case]]\nname = \"a\"\nrecipe = { kind = \"nope\" }\nchecks = []\n").is_err());
        assert!(SuiteConfig::parse("limits = \"0,,\"\n").is_err());
    }
}
