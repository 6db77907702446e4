use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use forge_core::codes::{
    is_type_two, min_norm_randomized, min_weight_bz, min_weight_exhaustive, WeightKind, ZmCode,
    DEFAULT_BUDGET,
};
use forge_core::fixtures::{Fixture, FixtureId};
use forge_core::lattices::{
    b_m, b_prime, construction_a, count_norm_vectors, d_plus, lambda_l, lambda_m, mckay, min_norm, rational_string,
    EnumerationBudget, ScaledLattice, ScaledOrthogonal,
};
use forge_core::matrices::{
    binary_associate, format_matrix, kronecker, mckay_input, normalize_both, normalize_first_row, paley_one, paley_two,
    sylvester, write_matrix, MatrixFormat, SignMatrix,
};
use forge_core::snf::{mat_mul, smith_normal_form, to_big};
use forge_core::verify::{applicable_claims, overall, run_claim, ClaimId, Verdict, VerifyOptions};
use forge_core::{ForgeError, Result};

const SCHEMA_VERSION: u32 = 1;
const EXIT_ERROR: u8 = 1;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "forge", version, about = "Hadamard matrices, their codes and lattices")]
struct Cli {
    /// Worker threads (default: hardware count).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized engines.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Work limit: codewords for code scans, nodes for lattice enumeration.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[arg(long, global = true)]
    json_pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a Hadamard matrix and write it in the text format.
    Gen(GenArgs),
    /// Smith normal form of an integer matrix.
    Snf(SnfArgs),
    /// Code generated by a matrix over Z/m, and its minimum.
    Code(CodeArgs),
    /// Lattice built from a matrix, and its minimum.
    Lattice(LatticeArgs),
    /// Check a claim (or every applicable claim) on a matrix.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    Sylvester,
    Paley1,
    Paley2,
    Kronecker,
    Mckay,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Normalize {
    Row,
    Both,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: GenKind,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    t: Option<u32>,
    /// Kronecker factors, as fixture names or files.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    factors: Option<Vec<String>>,
    #[arg(long, value_enum)]
    normalize: Option<Normalize>,
    /// Write the 0/1 binary associate instead of the ± matrix.
    #[arg(long)]
    binary: bool,
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SnfArgs {
    file: String,
    #[arg(long)]
    transforms: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MinKind {
    Hamming,
    Lee,
    Euclidean,
    Odd,
    Even,
    #[value(name = "typeI")]
    TypeI,
    #[value(name = "typeII")]
    TypeII,
}

impl From<MinKind> for WeightKind {
    fn from(k: MinKind) -> Self {
        match k {
            MinKind::Hamming => WeightKind::Hamming,
            MinKind::Lee => WeightKind::Lee,
            MinKind::Euclidean => WeightKind::Euclidean,
            MinKind::Odd => WeightKind::OddNorm,
            MinKind::Even => WeightKind::EvenNorm,
            MinKind::TypeI => WeightKind::TypeINorm,
            MinKind::TypeII => WeightKind::TypeIINorm,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Engine {
    Auto,
    Exhaustive,
    Bz,
    Random,
}

#[derive(Args, Debug)]
struct CodeArgs {
    file: String,
    #[arg(long)]
    modulus: u32,
    /// Use the rows of the transpose.
    #[arg(long)]
    transpose: bool,
    /// Use the rows of the 0/1 binary associate.
    #[arg(long, conflicts_with = "transpose")]
    binary_assoc: bool,
    #[arg(long, value_enum)]
    min: Option<MinKind>,
    #[arg(long, value_enum, default_value = "auto")]
    engine: Engine,
    /// Cap for the information-set engine, bound for the randomized one.
    #[arg(long)]
    cap: Option<u64>,
    /// Trials of the randomized engine.
    #[arg(long, default_value_t = 256)]
    effort: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Build {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    Lambda,
    Dplus,
    Mckay,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Transform {
    #[value(name = "H")]
    H,
    #[value(name = "Ht")]
    Ht,
}

#[derive(Args, Debug)]
struct LatticeArgs {
    file: String,
    #[arg(long, value_enum)]
    build: Build,
    #[arg(long)]
    modulus: Option<u64>,
    /// For `A`: use the rows of the transpose.
    #[arg(long)]
    transpose: bool,
    /// For `A`, `B`, `lambda`: use the binary associate side.
    #[arg(long, conflicts_with = "transpose")]
    binary_assoc: bool,
    /// Multiply by (1/√n)·H or (1/√n)·Hᵀ of the input matrix.
    #[arg(long, value_enum)]
    transform: Option<Transform>,
    #[arg(long)]
    min_norm: bool,
    /// Largest norm searched by `--min-norm`.
    #[arg(long)]
    cap: Option<BigRational>,
    /// Count vectors of this norm (repeatable).
    #[arg(long)]
    count: Vec<BigRational>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    file: String,
    #[arg(long, value_parser = parse_claim, required_unless_present = "all", conflicts_with = "all")]
    claim: Option<ClaimId>,
    #[arg(long)]
    all: bool,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    l: Option<u64>,
    #[arg(long)]
    d: Option<u64>,
    /// Code for `generates` (fixture name or matrix file; a matrix gives the ternary code of its rows).
    #[arg(long)]
    code: Option<String>,
}

fn parse_claim(s: &str) -> std::result::Result<ClaimId, String> {
    s.parse().map_err(|e: ForgeError| e.to_string())
}

fn resolve(name: &str) -> Result<(FixtureId, Fixture)> {
    let id: FixtureId = name.parse()?;
    let f = id.resolve()?;
    Ok((id, f))
}

fn load_matrix(name: &str) -> Result<(String, SignMatrix)> {
    match resolve(name)? {
        (id, Fixture::Matrix(h)) => Ok((id.to_string(), h)),
        (id, Fixture::Code(_)) => Err(ForgeError::InvalidParameter(format!("{id} is a code, not a matrix"))),
    }
}

fn emit(v: &impl serde::Serialize, pretty: bool) {
    let text = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) };
    println!("{}", text.expect("output serializes"));
}

fn gen(cli: &Cli, a: &GenArgs) -> Result<u8> {
    let need_q = || a.q.ok_or_else(|| ForgeError::InvalidParameter("--q is required".into()));
    let h = match a.kind {
        GenKind::Sylvester => sylvester(a.t.ok_or_else(|| ForgeError::InvalidParameter("--t is required".into()))?)?,
        GenKind::Paley1 => paley_one(need_q()?)?,
        GenKind::Paley2 => paley_two(need_q()?)?,
        GenKind::Mckay => mckay_input(need_q()?)?,
        GenKind::Kronecker => {
            let f = a.factors.as_ref().ok_or_else(|| ForgeError::InvalidParameter("--factors A B is required".into()))?;
            kronecker(&load_matrix(&f[0])?.1, &load_matrix(&f[1])?.1)?
        }
    };
    let h = match a.normalize {
        None => h,
        Some(Normalize::Row) => normalize_first_row(&h),
        Some(Normalize::Both) => normalize_both(&normalize_first_row(&h))?,
    };
    let format = if a.binary { MatrixFormat::Binary } else { MatrixFormat::Sign };
    match &a.output {
        Some(path) => {
            write_matrix(&h, path, format)?;
            emit(
                &json!({
                    "schema_version": SCHEMA_VERSION,
                    "order": h.order(),
                    "hadamard": h.is_hadamard(),
                    "file": path.display().to_string(),
                }),
                cli.json_pretty,
            );
        }
        None => print!("{}", format_matrix(&h, format)),
    }
    Ok(0)
}

fn snf(cli: &Cli, a: &SnfArgs) -> Result<u8> {
    let (source, h) = load_matrix(&a.file)?;
    let m = to_big(&h.rows_i64());
    let s = smith_normal_form(&m, true);
    let (p, q) = (s.p.as_ref().expect("requested"), s.q.as_ref().expect("requested"));
    let d = mat_mul(&mat_mul(p, &m), q);
    let divisors = s.chain.divisors();
    let verified = d.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, x)| if i == j { *x == divisors[i] } else { x.is_zero() })
    });
    let strings = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let mut out = json!({
        "schema_version": SCHEMA_VERSION,
        "source": source,
        "order": h.order(),
        "divisors": strings(divisors),
        "verified": verified,
    });
    if a.transforms {
        out["p"] = json!(p.iter().map(|r| strings(r)).collect::<Vec<_>>());
        out["q"] = json!(q.iter().map(|r| strings(r)).collect::<Vec<_>>());
    }
    emit(&out, cli.json_pretty);
    Ok(if verified { 0 } else { 2 })
}

fn code_budget(cli: &Cli) -> u64 {
    cli.budget.unwrap_or(DEFAULT_BUDGET)
}

fn lattice_budget(cli: &Cli) -> EnumerationBudget {
    cli.budget.map_or_else(EnumerationBudget::default, |b| EnumerationBudget { max_nodes: b })
}

fn code(cli: &Cli, a: &CodeArgs) -> Result<u8> {
    let (id, fixture) = resolve(&a.file)?;
    let code = match fixture {
        Fixture::Code(c) => {
            if c.modulus() != a.modulus {
                return Err(ForgeError::InvalidParameter(format!("{id} is a code over Z/{}", c.modulus())));
            }
            c
        }
        Fixture::Matrix(h) => {
            let rows = if a.binary_assoc {
                binary_associate(&h).rows_i64()
            } else if a.transpose {
                h.transpose().rows_i64()
            } else {
                h.rows_i64()
            };
            ZmCode::from_rows(&rows, a.modulus)?
        }
    };
    let budget = code_budget(cli);
    let type_two = if code.modulus() % 2 == 0 { Some(is_type_two(&code, budget)?) } else { None };
    let mut out = json!({
        "schema_version": SCHEMA_VERSION,
        "source": id.to_string(),
        "modulus": code.modulus(),
        "length": code.length(),
        "cardinality": code.cardinality().to_string(),
        "self_dual": code.is_self_dual(),
        "type_II": type_two,
    });
    if let Some(kind) = a.min {
        let kind = WeightKind::from(kind);
        let small = code.cardinality_u64().is_some_and(|c| c <= budget);
        let engine = match a.engine {
            Engine::Auto if small => Engine::Exhaustive,
            Engine::Auto if kind == WeightKind::Hamming && matches!(code.modulus(), 2 | 3) => Engine::Bz,
            Engine::Auto => Engine::Random,
            e => e,
        };
        let (minimum, witness, certified, certification, extra) = match engine {
            Engine::Exhaustive => {
                let r = min_weight_exhaustive(&code, kind, budget)?;
                (Some(r.minimum), r.witness, true, "exhaustive", json!({"multiplicity": r.multiplicity}))
            }
            Engine::Bz => {
                if kind != WeightKind::Hamming {
                    return Err(ForgeError::InvalidParameter("the information-set engine minimizes Hamming weight".into()));
                }
                let cap = a.cap.unwrap_or(code.length() as u64);
                let r = min_weight_bz(&code, cap, cli.seed.unwrap_or(0))?;
                let certified = r.is_certified();
                let extra = json!({"lower_bound": r.lower_bound, "above_cap": r.above_cap, "enumerated": r.enumerated});
                (r.minimum, r.witness, certified, "bz-certified", extra)
            }
            Engine::Random | Engine::Auto => {
                let seed = cli.seed.ok_or_else(|| ForgeError::InvalidParameter("--seed is required for the randomized engine".into()))?;
                let r = min_norm_randomized(&code, kind, a.cap.unwrap_or(0), a.effort, seed)?;
                let cert = if r.certified { "exact" } else { "randomized" };
                (Some(r.best), r.witness, r.certified, cert, json!({"trials": r.trials, "within_bound": r.within_bound}))
            }
        };
        out["kind"] = json!(kind);
        out["minimum"] = json!(minimum);
        out["certified"] = json!(certified);
        out["certification"] = json!(certification);
        out["witness"] = json!(witness);
        out["engine"] = extra;
    }
    emit(&out, cli.json_pretty);
    Ok(0)
}

fn lattice(cli: &Cli, a: &LatticeArgs) -> Result<u8> {
    let (source, h) = load_matrix(&a.file)?;
    let modulus = || a.modulus.ok_or_else(|| ForgeError::InvalidParameter("--modulus is required".into()));
    let normalized = normalize_first_row(&h);
    let lat: ScaledLattice = match a.build {
        Build::A => {
            let rows = if a.binary_assoc {
                binary_associate(&h).rows_i64()
            } else if a.transpose {
                h.transpose().rows_i64()
            } else {
                h.rows_i64()
            };
            construction_a(&ZmCode::from_rows(&rows, modulus()? as u32)?)?
        }
        Build::B if a.binary_assoc => b_prime(&normalized, modulus()?)?,
        Build::B => b_m(&normalized, modulus()?)?,
        Build::Lambda if a.binary_assoc => lambda_l(&normalized, modulus()?)?,
        Build::Lambda => lambda_m(&normalized, modulus()?)?,
        Build::Dplus => d_plus(h.order())?,
        Build::Mckay => mckay(&h, (h.order() as u64 + 4) / 4)?.l,
    };
    let lat = match a.transform {
        None => lat,
        Some(Transform::H) => lat.transform(&ScaledOrthogonal::from_hadamard(&h)?)?,
        Some(Transform::Ht) => lat.transform(&ScaledOrthogonal::from_hadamard(&h)?.transpose())?,
    };
    let mut out = json!({
        "schema_version": SCHEMA_VERSION,
        "source": source,
        "dim": lat.dim(),
        "scale": lat.scale(),
        "det": rational_string(&lat.gram_det()),
        "integral": lat.is_integral(),
        "unimodular": lat.is_unimodular(),
        "even": lat.is_even(),
    });
    let budget = lattice_budget(cli);
    let mut exit = 0;
    if a.min_norm {
        match min_norm(&lat, a.cap.as_ref(), budget) {
            Ok(r) => {
                out["min_norm"] = json!(r.minimum.as_ref().map(rational_string));
                out["above_cap"] = json!(r.above_cap);
                out["certified"] = json!(true);
                out["certification"] = json!("exact");
                out["witness"] = json!(r.witness.coords.iter().map(|x| x.to_string()).collect::<Vec<_>>());
                out["nodes"] = json!(r.nodes);
            }
            Err(ForgeError::BudgetExceeded(msg)) => {
                out["min_norm"] = Value::Null;
                out["certified"] = json!(false);
                out["budget_exhausted"] = json!(msg);
                exit = Verdict::Inconclusive.exit_code() as u8;
            }
            Err(e) => return Err(e),
        }
    }
    if !a.count.is_empty() {
        let mut counts = serde_json::Map::new();
        for target in &a.count {
            counts.insert(rational_string(target), json!(count_norm_vectors(&lat, target, budget)?));
        }
        out["counts"] = Value::Object(counts);
    }
    emit(&out, cli.json_pretty);
    Ok(exit)
}

fn verify(cli: &Cli, a: &VerifyArgs) -> Result<u8> {
    let (source, h) = load_matrix(&a.file)?;
    let mut opts = VerifyOptions { seed: cli.seed, m: a.m, l: a.l, d: a.d, ..VerifyOptions::default() };
    if let Some(b) = cli.budget {
        opts = opts.with_budget(b);
    }
    if let Some(name) = &a.code {
        opts.code = Some(match resolve(name)? {
            (_, Fixture::Code(c)) => c,
            (_, Fixture::Matrix(m)) => ZmCode::from_rows(&m.rows_i64(), 3)?,
        });
    }
    let claims = match a.claim {
        Some(c) => vec![c],
        None => applicable_claims(&h),
    };
    let reports = claims
        .into_iter()
        .map(|c| run_claim(c, &h, &opts).map(|r| r.with_source(source.clone())))
        .collect::<Result<Vec<_>>>()?;
    let verdict = overall(&reports);
    if a.all {
        emit(&json!({"schema_version": SCHEMA_VERSION, "source": source, "verdict": verdict, "reports": reports}), cli.json_pretty);
    } else {
        emit(&reports[0], cli.json_pretty);
    }
    Ok(verdict.exit_code() as u8)
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Gen(a) => gen(cli, a),
        Command::Snf(a) => snf(cli, a),
        Command::Code(a) => code(cli, a),
        Command::Lattice(a) => lattice(cli, a),
        Command::Verify(a) => verify(cli, a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("forge: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("forge: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
