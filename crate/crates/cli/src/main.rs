//! `tfp`: toric fiber products from the command line.
//!
//! Exit status is 0 on success, 1 when a computation or a verification
//! fails, 2 on bad usage or unreadable input. Polynomial output is one
//! polynomial per line, sorted by total degree, then by leading monomial,
//! then by text, and re-parses to the same value.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tfp_core::format::{parse_list, SpecFile};
use tfp_core::groebner::{buchberger, standard_monomial_table};
use tfp_core::models::{
    chain_generators, group_based_map, hidden_map, hidden_split, hierarchical_map, reducible_split,
    segre_flattening_minors, segre_map, segre_tfp, tfp_of_reducible, tree_split, FiniteGroup, ModelDims, RootedTree,
    SimplicialComplex,
};
use tfp_core::poly::sort_for_output;
use tfp_core::tfp::{self, Side, TfpSpec};
use tfp_core::verify::run_suite;
use tfp_core::{oracle, ComputeLimits, Error, Map, Poly, TermOrder, TieBreak, WeightStack};

#[derive(Parser)]
#[command(name = "tfp", version, about = "Toric fiber products of multigraded ideals")]
struct Cli {
    /// Write results here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a spec file: grading, certificate, homogeneity of the ideals.
    Validate(SpecArg),
    /// The quadrics generating the toric ideal of the product.
    Quad(QuadArgs),
    /// Lifts of the generators of one factor.
    Lift {
        #[command(flatten)]
        spec: SpecArg,
        /// `x` for the ideal I, `y` for J.
        #[arg(long, default_value = "x")]
        side: String,
    },
    /// Generators of the product of the two ideals in a spec file.
    Product {
        #[command(flatten)]
        spec: SpecArg,
        /// Replace I and J by Gröbner bases for their weights first; the
        /// output is then a Gröbner basis of the product.
        #[arg(long)]
        groebner: bool,
    },
    /// Ground truth by elimination: the kernel of the `[map]` section, or
    /// the product ideal of the spec if there is no map.
    Oracle(SpecArg),
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        config: PathBuf,
        /// Also write the line-delimited JSON report here.
        #[arg(long)]
        jsonl: Option<PathBuf>,
    },
    /// Standard monomial counts of the factors and of the product.
    Hilbert {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 4)]
        bound: u32,
    },
    /// Ideals of statistical models.
    #[command(subcommand)]
    Model(Model),
}

#[derive(Args)]
struct SpecArg {
    #[arg(long)]
    spec: PathBuf,
}

#[derive(Args)]
struct QuadArgs {
    /// Number of grading classes.
    #[arg(long, default_value_t = 1)]
    r: usize,
    /// Sizes of the x classes; a single value is used for every class.
    #[arg(long)]
    s: String,
    #[arg(long)]
    t: String,
}

#[derive(Subcommand)]
enum Model {
    /// Hierarchical model of a complex, e.g. `--facets 1,2/2,3 --d 2,2,2`.
    Hierarchical {
        #[arg(long)]
        facets: String,
        #[arg(long)]
        d: String,
        /// Print the parametrization instead of the ideal.
        #[arg(long)]
        map: bool,
    },
    /// Hierarchical model with hidden vertices.
    Hidden {
        #[arg(long)]
        facets: String,
        #[arg(long)]
        d: String,
        #[arg(long)]
        hidden: String,
        #[arg(long)]
        map: bool,
    },
    /// Minors for the chain on `2n + 1` vertices with the even ones hidden.
    Chain {
        #[arg(long)]
        d: String,
    },
    /// The Segre ideal, built as an iterated product.
    Segre {
        #[arg(long)]
        d: String,
        /// Print the 2x2 minors of all flattenings instead.
        #[arg(long)]
        minors: bool,
        #[arg(long)]
        map: bool,
    },
    /// Group-based model on a tree, e.g. `--parents=-1,0,1,2,2,1 --leaves 3,4,5`.
    Phylo {
        /// `z2`, `z3`, `z2xz2`, `s3`, ...
        #[arg(long, default_value = "z2")]
        group: String,
        /// Parent of each node, `-1` for the root leaf.
        #[arg(long, allow_hyphen_values = true)]
        parents: String,
        /// Non-root leaves in planar order.
        #[arg(long)]
        leaves: String,
        #[arg(long)]
        map: bool,
    },
}

/// An error and the exit status it maps to.
struct Failure(Error);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(Error::Io(e.to_string()))
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self.0 {
            Error::Parse { .. }
            | Error::UnknownVariable(_)
            | Error::ZeroDenominator
            | Error::Coefficient
            | Error::DuplicateVariable(_)
            | Error::MixedArity(_)
            | Error::Config(_)
            | Error::Io(_) => 2,
            _ => 1,
        }
    }
}

type Out = Vec<String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut lines = Vec::new();
    let status = match run(&cli.command, &mut lines) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("tfp: {}", f.0);
            return ExitCode::from(f.code());
        }
    };
    let text: String = lines.iter().map(|l| format!("{l}\n")).collect();
    let written = match &cli.output {
        Some(p) => fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("tfp: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(status)
}

fn read_spec(arg: &SpecArg) -> Result<SpecFile, Failure> {
    Ok(SpecFile::parse(&fs::read_to_string(&arg.spec)?)?)
}

fn limits() -> Result<ComputeLimits, Failure> {
    Ok(ComputeLimits::from_env()?)
}

fn dims(text: &str) -> Result<ModelDims, Failure> {
    Ok(ModelDims::new(parse_list(text)?)?)
}

/// `1,2/2,3` as facets.
fn facets(text: &str) -> Result<Vec<Vec<usize>>, Failure> {
    text.split('/').map(|f| parse_list(f).map_err(Failure::from)).collect()
}

fn emit(out: &mut Out, mut polys: Vec<Poly>, order: &TermOrder) {
    sort_for_output(&mut polys, order);
    out.extend(polys.iter().map(|p| p.display_in(order)));
}

fn emit_map(out: &mut Out, map: &Map) {
    for (v, img) in map.source().vars().iter().zip(map.images()) {
        out.push(format!("{v} = {img}"));
    }
}

fn weighted(w: Option<&Vec<i64>>, n: usize) -> Result<TermOrder, Failure> {
    Ok(match w {
        None => TermOrder::grevlex(n),
        Some(w) if w.len() == n => {
            TermOrder::new(n, WeightStack::from_integer(vec![w.clone()]), TieBreak::GradedRevLex)?
        }
        Some(w) => {
            return Err(Error::Config(format!("weight of length {} for {n} variables", w.len())).into());
        }
    })
}

fn side_orders(file: &SpecFile, spec: &TfpSpec) -> Result<(TermOrder, TermOrder), Failure> {
    Ok((weighted(file.w1.as_ref(), spec.x_ring().len())?, weighted(file.w2.as_ref(), spec.y_ring().len())?))
}

fn run(cmd: &Command, out: &mut Out) -> Result<u8, Failure> {
    match cmd {
        Command::Validate(arg) => {
            let file = read_spec(arg)?;
            let spec = file.spec()?;
            let nums = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
            out.push(format!("r: {}", spec.r()));
            out.push(format!("s: {}", nums(spec.s())));
            out.push(format!("t: {}", nums(spec.t())));
            out.push(format!("omega: {}", spec.omega().iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ")));
            out.push(format!("grading: {}", if spec.is_independent() { "INDEPENDENT" } else { "DEPENDENT" }));
            let (i, j) = file.ideals::<tfp_core::Rational>(&spec)?;
            for (name, polys, grading) in [("I", &i, spec.x_grading()), ("J", &j, spec.y_grading())] {
                for p in polys.iter().filter(|p| !p.is_zero()) {
                    grading.multidegree(p)?;
                }
                out.push(format!("ideal {name}: {} generators, homogeneous", polys.len()));
            }
            Ok(0)
        }
        Command::Quad(q) => {
            let broadcast = |text: &str| -> Result<Vec<u32>, Failure> {
                let v: Vec<u32> = parse_list(text)?;
                Ok(if v.len() == 1 { vec![v[0]; q.r] } else { v })
            };
            let columns = (0..q.r).map(|c| (0..q.r).map(|k| (k == c) as i64).collect()).collect();
            let spec = tfp::validate_spec(columns, broadcast(&q.s)?, broadcast(&q.t)?)?;
            emit(out, tfp::quad_b(&spec), &tfp::quad_order(&spec));
            Ok(0)
        }
        Command::Lift { spec: arg, side } => {
            let file = read_spec(arg)?;
            let spec = file.spec()?;
            let (i, j) = file.ideals::<tfp_core::Rational>(&spec)?;
            let (side, polys) = match side.as_str() {
                "x" => (Side::X, i),
                "y" => (Side::Y, j),
                other => return Err(Error::Config(format!("side must be x or y, not `{other}`")).into()),
            };
            let mut lifted = Vec::new();
            for p in &polys {
                lifted.extend(tfp::lift(p, side, &spec)?);
            }
            emit(out, lifted, &tfp::quad_order(&spec));
            Ok(0)
        }
        Command::Product { spec: arg, groebner } => {
            let file = read_spec(arg)?;
            let spec = file.spec()?;
            let (mut i, mut j) = file.ideals::<tfp_core::Rational>(&spec)?;
            let (xo, yo) = side_orders(&file, &spec)?;
            if *groebner {
                let lim = limits()?;
                i = buchberger(spec.x_ring(), &i, &xo, &lim)?.into_generators();
                j = buchberger(spec.y_ring(), &j, &yo, &lim)?.into_generators();
            }
            let gens = tfp::tfp_generators(&i, &j, &spec)?;
            emit(out, gens, &tfp::tfp_order(&xo, &yo, &spec)?);
            Ok(0)
        }
        Command::Oracle(arg) => {
            let file = read_spec(arg)?;
            let lim = limits()?;
            if !file.map.is_empty() {
                let map = file.polynomial_map()?;
                let k = oracle::kernel(&map, &lim)?;
                emit(out, k.into_generators(), &TermOrder::grevlex(map.source().len()));
            } else {
                let spec = file.spec()?;
                let (i, j) = file.ideals::<tfp_core::Rational>(&spec)?;
                let ideal: Vec<Poly> =
                    i.iter().map(|p| spec.to_xy(p, Side::X)).chain(j.iter().map(|p| spec.to_xy(p, Side::Y))).collect();
                let k = oracle::contract(&tfp::phi_b(&spec), &ideal, &lim)?;
                emit(out, k.into_generators(), &TermOrder::grevlex(spec.z_ring().len()));
            }
            Ok(0)
        }
        Command::Verify { config, jsonl } => {
            let report = run_suite(config)?;
            if let Some(path) = jsonl {
                fs::write(path, report.to_jsonl())?;
            }
            out.extend(report.to_text().lines().map(str::to_string));
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Hilbert { spec: arg, bound } => {
            let file = read_spec(arg)?;
            let spec = file.spec()?;
            if !spec.is_independent() {
                return Err(Error::DependentGrading.into());
            }
            let lim = limits()?;
            let (i, j) = file.ideals::<tfp_core::Rational>(&spec)?;
            let (xo, yo) = side_orders(&file, &spec)?;
            let f = buchberger(spec.x_ring(), &i, &xo, &lim)?;
            let g = buchberger(spec.y_ring(), &j, &yo, &lim)?;
            let product = tfp::tfp_generators(f.generators(), g.generators(), &spec)?;
            let zo = tfp::tfp_order(&xo, &yo, &spec)?;
            let h = buchberger(spec.z_ring(), &product, &zo, &lim)?;
            let h1 = standard_monomial_table(&f, &spec.x_grading(), *bound)?;
            let h2 = standard_monomial_table(&g, &spec.y_grading(), *bound)?;
            let h12 = standard_monomial_table(&h, &spec.z_grading(), *bound)?;
            let expected = tfp::hadamard_hilbert(&h1, &h2);
            out.push("# degree  I  J  product".into());
            let mut status = 0;
            for (u, &n) in &h12 {
                let get = |t: &tfp_core::groebner::HilbertTable| t.get(u).copied().unwrap_or(0);
                let degree = u.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
                out.push(format!("{degree}  {}  {}  {n}", get(&h1), get(&h2)));
                if get(&expected) != n {
                    status = 1;
                }
            }
            Ok(status)
        }
        Command::Model(m) => run_model(m, out),
    }
}

fn run_model(m: &Model, out: &mut Out) -> Result<u8, Failure> {
    let lim = limits()?;
    match m {
        Model::Hierarchical { facets: f, d, map } => {
            let d = dims(d)?;
            let delta = SimplicialComplex::new(d.len(), facets(f)?)?;
            let model = hierarchical_map(&delta, &d)?;
            if *map {
                emit_map(out, &model);
                return Ok(0);
            }
            let order = TermOrder::grevlex(model.source().len());
            match reducible_split(&delta).first() {
                Some(split) => {
                    let ms = tfp_of_reducible(&delta, &d, split)?;
                    let left = oracle::kernel(&ms.left_map, &lim)?;
                    let right = oracle::kernel(&ms.right_map, &lim)?;
                    emit(out, ms.factorization.generators(left.generators(), right.generators())?, &order);
                }
                None => emit(out, oracle::kernel(&model, &lim)?.into_generators(), &order),
            }
            Ok(0)
        }
        Model::Hidden { facets: f, d, hidden, map } => {
            let d = dims(d)?;
            let hidden: Vec<usize> = parse_list(hidden)?;
            let delta = SimplicialComplex::new(d.len(), facets(f)?)?;
            let model = hidden_map(&delta, &d, &hidden)?;
            if *map {
                emit_map(out, &model);
                return Ok(0);
            }
            let order = TermOrder::grevlex(model.source().len());
            let split =
                reducible_split(&delta).into_iter().find(|s| !s.separator.iter().any(|v| hidden.contains(v)));
            match split {
                Some(split) => {
                    let ms = hidden_split(&delta, &d, &hidden, &split)?;
                    let left = oracle::kernel(&ms.left_map, &lim)?;
                    let right = oracle::kernel(&ms.right_map, &lim)?;
                    emit(out, ms.factorization.generators(left.generators(), right.generators())?, &order);
                }
                None => emit(out, oracle::kernel(&model, &lim)?.into_generators(), &order),
            }
            Ok(0)
        }
        Model::Chain { d } => {
            let d = dims(d)?;
            if d.len() % 2 == 0 {
                return Err(Error::Config("the chain needs an odd number of vertices".into()).into());
            }
            let gens = chain_generators(d.len() / 2, &d)?;
            let n = gens.first().map_or(0, |g| g.ring().len());
            emit(out, gens, &TermOrder::grevlex(n));
            Ok(0)
        }
        Model::Segre { d, minors, map } => {
            let d = dims(d)?;
            if *map {
                emit_map(out, &segre_map(&d)?);
                return Ok(0);
            }
            if *minors {
                let gens = segre_flattening_minors(&d)?;
                let n = gens.first().map_or(0, |g| g.ring().len());
                emit(out, gens, &TermOrder::grevlex(n));
            } else {
                let (gens, order) = segre_tfp(&d)?;
                emit(out, gens, &order);
            }
            Ok(0)
        }
        Model::Phylo { group, parents, leaves, map } => {
            let g = FiniteGroup::from_name(group)?;
            let parents: Vec<i64> = parse_list(parents)?;
            let parents = parents.into_iter().map(|p| usize::try_from(p).ok()).collect();
            let tree = RootedTree::from_parents(parents, parse_list(leaves)?)?;
            let model = group_based_map(&g, &tree)?;
            if *map {
                emit_map(out, &model);
                return Ok(0);
            }
            let order = TermOrder::grevlex(model.source().len());
            match tree.interior_edges().first() {
                Some(&e) => {
                    let ts = tree_split(&g, &tree, e)?;
                    let left = oracle::kernel(&group_based_map(&g, &ts.plus)?, &lim)?;
                    let right = oracle::kernel(&group_based_map(&g, &ts.minus)?, &lim)?;
                    emit(out, ts.factorization.generators(left.generators(), right.generators())?, &order);
                }
                None => emit(out, oracle::kernel(&model, &lim)?.into_generators(), &order),
            }
            Ok(0)
        }
    }
}
