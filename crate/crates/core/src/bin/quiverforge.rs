use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use quiverforge::catalog::{run_catalog, CatalogConfig, DEFAULT_ORACLE_BUDGET};
use quiverforge::family::{build_family, construct, predicted_end_dim, FamilyParams};
use quiverforge::functor::maximal_rank_report;
use quiverforge::io::{quiver_from_json, rep_from_json, rep_to_json};
use quiverforge::quiver::{classify_root, enumerate_real_roots, ringel_form};
use quiverforge::rep::{end_dim, ext_dim, hom_dim, is_indecomposable_oracle};
use quiverforge::tree::{coefficient_quiver, export_dot, is_tree};
use quiverforge::{DimVector, Error, Field, Quiver, Representation, Result, RootClass};

/// Exit status when a verification check fails.
const CHECK_FAILED: u8 = 1;

#[derive(Parser)]
#[command(name = "quiverforge", version, about = "Exact real root representations of quivers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the positive real roots up to a height bound.
    Roots(RootsArgs),
    /// Build the indecomposable representation of a real root of Q(f,g,h).
    Construct(ConstructArgs),
    /// Run checks on a representation file.
    Verify(VerifyArgs),
    /// Hom and Ext dimensions between two representations.
    Homext(HomextArgs),
    /// Construct and check every real root of a family up to a height bound.
    Catalog(CatalogArgs),
    /// Coefficient quiver of a representation in DOT format.
    Dot(DotArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct QuiverSource {
    /// Family parameters f g h.
    #[arg(long, num_args = 3, value_names = ["F", "G", "H"])]
    family: Option<Vec<usize>>,
    /// Quiver JSON file.
    #[arg(long)]
    quiver: Option<PathBuf>,
}

#[derive(Args)]
struct RootsArgs {
    #[command(flatten)]
    source: QuiverSource,
    #[arg(long)]
    bound: i64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, num_args = 3, value_names = ["F", "G", "H"], required = true)]
    family: Vec<usize>,
    /// Dimension vector, e.g. `1,2,1`.
    #[arg(long)]
    root: String,
    #[arg(long, default_value = "q")]
    field: String,
    /// Representation output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Construction trace output file.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    /// Comma-separated subset of maxrank,tree,euler,endo.
    #[arg(long, default_value = "maxrank,tree,euler,endo")]
    checks: String,
    #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct HomextArgs {
    x: PathBuf,
    y: PathBuf,
}

#[derive(Args)]
struct CatalogArgs {
    #[arg(long, num_args = 3, value_names = ["F", "G", "H"], required = true)]
    family: Vec<usize>,
    #[arg(long)]
    bound: i64,
    #[arg(long, default_value = "q")]
    field: String,
    #[arg(long, env = "QUIVERFORGE_JOBS", default_value_t = 1)]
    jobs: usize,
    /// Largest number of endomorphisms the oracle may enumerate.
    #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
    budget: u64,
    /// Skip the functor roundtrip checks.
    #[arg(long)]
    no_roundtrips: bool,
    /// Report output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DotArgs {
    file: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Input(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn family(values: &[usize]) -> Result<FamilyParams> {
    FamilyParams::new(values[0], values[1], values[2])
}

fn parse_root(text: &str, n: usize) -> Result<DimVector> {
    let coords = text
        .split(',')
        .map(|c| c.trim().parse::<i64>().map_err(|_| Error::Input(format!("malformed root `{text}`"))))
        .collect::<Result<Vec<_>>>()?;
    if coords.len() != n {
        return Err(Error::Input(format!("root `{text}` needs {n} coordinates")));
    }
    Ok(DimVector::new(coords))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).unwrap() + "\n"
}

fn roots(args: RootsArgs) -> Result<u8> {
    let q: Quiver = match (&args.source.family, &args.source.quiver) {
        (Some(f), _) => build_family(family(f)?),
        (_, Some(path)) => quiver_from_json(&read(path)?)?,
        _ => unreachable!("clap enforces one source"),
    };
    let list = enumerate_real_roots(&q, args.bound);
    if args.json {
        let items: Vec<Value> = list
            .iter()
            .map(|r| json!({"root": r, "class": classify_root(&q, r).unwrap()}))
            .collect();
        print!("{}", pretty(&Value::from(items)));
    } else {
        for r in &list {
            println!("{r} {}", classify_root(&q, r)?);
        }
    }
    Ok(0)
}

fn construct_cmd(args: ConstructArgs) -> Result<u8> {
    let p = family(&args.family)?;
    let field: Field = args.field.parse()?;
    let alpha = parse_root(&args.root, 3)?;
    let (x, trace) = construct(&alpha, p, field)?;
    write_or_print(args.out.as_deref(), &rep_to_json(&x))?;
    if let Some(path) = &args.trace {
        write_or_print(Some(path), &(serde_json::to_string_pretty(&trace).unwrap() + "\n"))?;
    }
    Ok(0)
}

/// The family parameters when `q` is exactly a family quiver.
fn recognize_family(q: &Quiver) -> Option<FamilyParams> {
    let count = |prefix: &str| q.arrows().iter().filter(|a| a.id.starts_with(prefix)).count();
    let p = FamilyParams::new(count("lambda"), count("mu"), count("nu")).ok()?;
    (build_family(p) == *q).then_some(p)
}

fn endo_check(x: &Representation, budget: u64) -> Result<Value> {
    let computed = end_dim(x);
    let mut out = json!({"end_dim": computed});
    let mut pass = true;
    let q = x.quiver();
    let alpha = x.dim_vector();
    if let Some(p) = recognize_family(q) {
        if alpha.is_positive() && matches!(classify_root(q, &alpha)?, RootClass::Real | RootClass::Simple) {
            let (_, trace) = construct(&alpha, p, x.field())?;
            let predicted = predicted_end_dim(&trace);
            out["predicted_end_dim"] = json!(predicted);
            pass &= predicted == computed as i64;
        }
    }
    if let Field::Prime(_) = x.field() {
        if x.total_dim() > 0 {
            let verdict = is_indecomposable_oracle(x, budget)?.verdict;
            out["oracle"] = json!(verdict);
            pass &= verdict != quiverforge::rep::Verdict::Decomposable;
        }
    }
    out["pass"] = json!(pass);
    Ok(out)
}

fn verify(args: VerifyArgs) -> Result<u8> {
    let x = rep_from_json(&read(&args.file)?)?;
    let mut report = serde_json::Map::new();
    let mut all = true;
    for check in args.checks.split(',').map(str::trim).filter(|c| !c.is_empty()) {
        let result = match check {
            "maxrank" => {
                let r = maximal_rank_report(&x);
                json!({"pass": r.is_maximal_rank(), "subsets_checked": r.subsets_checked, "violations": r.violations})
            }
            "tree" => {
                let c = coefficient_quiver(&x);
                let ok = is_tree(&c) && c.edges.len() + 1 == x.total_dim();
                json!({"pass": ok, "nodes": c.nodes.len(), "edges": c.edges.len(), "is_tree": is_tree(&c)})
            }
            "euler" => {
                let h = hom_dim(&x, &x)?;
                let e = ext_dim(&x, &x)?;
                let form = ringel_form(x.quiver(), &x.dim_vector(), &x.dim_vector())?;
                json!({"pass": h as i64 - e as i64 == form, "hom": h, "ext": e, "ringel_form": form})
            }
            "endo" => endo_check(&x, args.budget)?,
            other => return Err(Error::Input(format!("unknown check `{other}`"))),
        };
        all &= result["pass"].as_bool().unwrap_or(false);
        report.insert(check.to_string(), result);
    }
    report.insert("pass".into(), json!(all));
    print!("{}", pretty(&Value::Object(report)));
    Ok(if all { 0 } else { CHECK_FAILED })
}

fn homext(args: HomextArgs) -> Result<u8> {
    let x = rep_from_json(&read(&args.x)?)?;
    let y = rep_from_json(&read(&args.y)?)?;
    let h = hom_dim(&x, &y)?;
    let e = ext_dim(&x, &y)?;
    let form = ringel_form(x.quiver(), &x.dim_vector(), &y.dim_vector())?;
    let ok = h as i64 - e as i64 == form;
    print!("{}", pretty(&json!({"hom": h, "ext": e, "ringel_form": form, "euler_identity": ok})));
    Ok(if ok { 0 } else { CHECK_FAILED })
}

fn catalog(args: CatalogArgs) -> Result<u8> {
    let mut config = CatalogConfig::new(family(&args.family)?, args.bound);
    config.field = args.field.parse()?;
    config.jobs = args.jobs;
    config.oracle_budget = args.budget;
    config.roundtrips = !args.no_roundtrips;
    let report = run_catalog(&config)?;
    write_or_print(args.out.as_deref(), &report.to_json())?;
    eprint!("{}", report.summary_text());
    Ok(if report.pass { 0 } else { CHECK_FAILED })
}

fn dot(args: DotArgs) -> Result<u8> {
    let x = rep_from_json(&read(&args.file)?)?;
    write_or_print(args.out.as_deref(), &export_dot(&coefficient_quiver(&x)))?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Roots(a) => roots(a),
        Command::Construct(a) => construct_cmd(a),
        Command::Verify(a) => verify(a),
        Command::Homext(a) => homext(a),
        Command::Catalog(a) => catalog(a),
        Command::Dot(a) => dot(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::Construction { trace, .. } = &e {
                eprintln!("{}", serde_json::to_string_pretty(trace.as_ref()).unwrap());
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
