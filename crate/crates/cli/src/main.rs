mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use qwz_core::algebra::BigRational;
use qwz_core::identity::{build_identity, catalog, catalog_lookup, parse_params, Family, Identity, ALL_FAMILIES};
use qwz_core::special::{parse_decimal_rational, BigFloat, ConstantsCatalog, PrecisionContext};
use qwz_core::verify::{classical_limit_check_with, convergence_report, verify_identity_with, DEFAULT_TERMS};
use qwz_core::Error;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "qwz", version, about = "Derive, certify and verify q-WZ acceleration identities for 3phi2 series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Args)]
struct Precision {
    /// Decimal digits of working precision.
    #[arg(long, env = "QWZ_PRECISION", default_value_t = 60, value_parser = clap::value_parser!(u32).range(10..=2000))]
    digits: u32,
}

/// An identity file, or a catalog tag.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Identity file (JSON).
    file: Option<PathBuf>,
    /// Catalog tag instead of a file.
    #[arg(long)]
    tag: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Derive and certify the identity of a family at (a, b, c, d).
    Derive {
        #[arg(long, value_parser = family_parser())]
        family: Family,
        /// Four exact rationals "a,b,c,d", e.g. 1/2,1/2,2,2.
        #[arg(long, value_parser = exact_params, allow_hyphen_values = true)]
        params: [BigRational; 4],
        /// Write the identity file here.
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Re-check the WZ equation of an identity file.
    Certify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate both sides at q.
    Verify {
        #[command(flatten)]
        source: Source,
        /// q > 1, as p/q or a decimal.
        #[arg(long)]
        q: String,
        #[command(flatten)]
        precision: Precision,
        /// Term cap per side.
        #[arg(long, default_value_t = DEFAULT_TERMS)]
        terms: usize,
        /// Also print terms needed per digit level.
        #[arg(long)]
        convergence: bool,
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Sum the classical (q -> 1) limit of a catalog entry and compare with its constant.
    Limit {
        tag: String,
        #[command(flatten)]
        precision: Precision,
        #[arg(long, default_value_t = 4 * DEFAULT_TERMS)]
        terms: usize,
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List or run the identity catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Render an identity.
    Export {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Format::Latex)]
        format: Format,
    },
    /// Dump the audited constants.
    Constants {
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Certify, verify at q and check the classical limit of every entry.
    Run {
        /// Exact q > 1 as p/q.
        #[arg(long, default_value = "2")]
        q: String,
        #[command(flatten)]
        precision: Precision,
        #[arg(long, default_value_t = DEFAULT_TERMS)]
        terms: usize,
        /// Worker threads (default: all cores).
        #[arg(long, short)]
        jobs: Option<usize>,
        /// Skip the classical limits.
        #[arg(long)]
        no_limits: bool,
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::DegenerateParameters(_) | Error::ConditionUnsatisfiable(_) => 2,
            Error::NoFirstOrder(_) => 3,
            Error::CertificationFailed(_) => 4,
            Error::Schema(_) => 5,
            _ => EXIT_FAIL,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure { code, msg: msg.into() }
}

type Outcome = Result<u8, Failure>;

fn family_parser() -> impl TypedValueParser<Value = Family> {
    let names: Vec<&'static str> = ALL_FAMILIES.iter().map(|f| f.flag()).collect();
    PossibleValuesParser::new(names).map(|s| s.parse::<Family>().expect("listed family"))
}

fn is_exact(s: &str) -> bool {
    !s.contains(['.', 'e', 'E'])
}

fn exact_params(s: &str) -> Result<[BigRational; 4], String> {
    if !is_exact(s) {
        return Err("parameters must be integers or p/q fractions".into());
    }
    parse_params(s).map_err(|e| e.to_string())
}

fn exact_rational(s: &str) -> Result<BigRational, Failure> {
    if !is_exact(s) {
        return Err(fail(EXIT_USAGE, format!("q must be exact (p/q) here, got {:?}; decimals are accepted by verify only", s)));
    }
    parse_decimal_rational(s).map_err(|e| fail(EXIT_USAGE, e.to_string()))
}

fn load(source: &Source) -> Result<Identity, Failure> {
    match (&source.file, &source.tag) {
        (Some(path), _) => read_identity(path),
        (None, Some(tag)) => Ok(catalog_lookup(tag)?.identity.clone()),
        (None, None) => Err(fail(EXIT_USAGE, "an identity file or --tag is required")),
    }
}

fn read_identity(path: &Path) -> Result<Identity, Failure> {
    let text = fs::read_to_string(path).map_err(|e| fail(EXIT_FAIL, format!("{}: {}", path.display(), e)))?;
    Ok(Identity::from_json(&text)?)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("report serializes"));
}

fn verdict(pass: bool, strict: bool) -> u8 {
    if pass || !strict {
        0
    } else {
        EXIT_FAIL
    }
}

fn cmd_derive(family: Family, params: &[BigRational; 4], out: Option<&Path>, format: Format) -> Outcome {
    let id = build_identity(family, params)?;
    let residual = id.residual()?;
    if !residual.is_zero() {
        return Err(fail(4, format!("certification failed: residual {}", residual)));
    }
    let file = id.to_json()?;
    if let Some(path) = out {
        fs::write(path, &file).map_err(|e| fail(EXIT_FAIL, format!("{}: {}", path.display(), e)))?;
    }
    match format {
        Format::Json => print!("{}", file),
        Format::Latex => println!("{}", id.to_latex()),
        Format::Text => print!("{}", render::identity_text(&id, &residual)),
    }
    Ok(0)
}

fn cmd_certify(path: &Path, format: Format) -> Outcome {
    let text = fs::read_to_string(path).map_err(|e| fail(EXIT_FAIL, format!("{}: {}", path.display(), e)))?;
    let id = Identity::from_json(&text)?;
    let residual = id.residual()?;
    let identical = id.to_json()? == text;
    match format {
        Format::Json => print_json(&json!({
            "identity": id.label(),
            "residual": residual.to_string(),
            "reserialization": if identical { "identical" } else { "differs" },
        })),
        _ => {
            println!("residual: {}", residual);
            println!("reserialization: {}", if identical { "identical" } else { "differs" });
        }
    }
    if residual.is_zero() {
        Ok(0)
    } else {
        Err(fail(4, "certification failed: residual is nonzero"))
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(source: &Source, q: &str, digits: u32, terms: usize, convergence: bool, strict: bool, format: Format) -> Outcome {
    let id = load(source)?;
    let qr = parse_decimal_rational(q).map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
    let ctx = PrecisionContext::new(digits);
    let qf = BigFloat::from_rational(&qr, ctx.bits() + 64);
    let report = verify_identity_with(&id, &qf, &ctx, terms)?;
    let table = if convergence { Some(convergence_report(&id, &qf, digits)?) } else { None };
    match format {
        Format::Json => {
            let mut v = report.to_json();
            if let Some(t) = &table {
                v["convergence"] = t.to_json();
            }
            print_json(&v);
        }
        _ => {
            print!("{}", render::verify_text(&report));
            if let Some(t) = &table {
                print!("{}", render::convergence_text(t));
            }
        }
    }
    Ok(verdict(report.pass, strict))
}

fn cmd_limit(tag: &str, digits: u32, terms: usize, strict: bool, format: Format) -> Outcome {
    let entry = catalog_lookup(tag)?;
    let report = classical_limit_check_with(entry, &PrecisionContext::new(digits), terms)?;
    match format {
        Format::Json => print_json(&report.to_json()),
        _ => print!("{}", render::limit_text(&report)),
    }
    Ok(verdict(report.pass, strict))
}

fn cmd_catalog_list(format: Format) -> Outcome {
    let entries = catalog()?;
    match format {
        Format::Json => print_json(&Value::Array(entries.iter().map(render::entry_json).collect())),
        _ => print!("{}", render::catalog_table(entries)),
    }
    Ok(0)
}

struct RunOptions {
    q: BigRational,
    digits: u32,
    terms: usize,
    limits: bool,
}

fn cmd_catalog_run(opts: &RunOptions, jobs: Option<usize>, strict: bool, format: Format) -> Outcome {
    let entries = catalog()?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(fail(EXIT_USAGE, "--jobs must be positive"));
        }
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(|e| fail(EXIT_FAIL, e.to_string()))?;
    let rows: Vec<render::RunRow> = pool.install(|| entries.par_iter().map(|e| run_entry(e, opts)).collect());
    let passed = rows.iter().filter(|r| r.pass()).count();
    match format {
        Format::Json => print_json(&json!({
            "q": qwz_core::algebra::fmt_rational(&opts.q),
            "digits": opts.digits,
            "entries": rows.iter().map(render::RunRow::to_json).collect::<Vec<_>>(),
            "passed": passed,
            "total": rows.len(),
        })),
        _ => {
            for r in &rows {
                println!("{}", r.text());
            }
            println!("{}/{} entries pass", passed, rows.len());
        }
    }
    Ok(verdict(passed == rows.len(), strict))
}

fn run_entry(e: &qwz_core::identity::CatalogEntry, opts: &RunOptions) -> render::RunRow {
    let ctx = PrecisionContext::new(opts.digits);
    let certified = e.identity.residual().map(|r| r.is_zero()).map_err(|e| e.to_string());
    let q = BigFloat::from_rational(&opts.q, ctx.bits() + 64);
    let verify = verify_identity_with(&e.identity, &q, &ctx, opts.terms).map_err(|e| e.to_string());
    let limit = opts
        .limits
        .then(|| classical_limit_check_with(e, &ctx, 4 * opts.terms).map_err(|e| e.to_string()));
    render::RunRow { tag: e.tag().to_string(), certified, verify, limit }
}

fn cmd_constants(strict: bool, format: Format) -> Outcome {
    let c = ConstantsCatalog::get();
    match format {
        Format::Json => print_json(&render::constants_json(c)),
        _ => print!("{}", render::constants_text(c)),
    }
    Ok(verdict(c.all_passed(), strict))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Derive { family, params, out, format } => cmd_derive(family, &params, out.as_deref(), format),
        Command::Certify { file, format } => cmd_certify(&file, format),
        Command::Verify { source, q, precision, terms, convergence, strict, format } => {
            cmd_verify(&source, &q, precision.digits, terms, convergence, strict, format)
        }
        Command::Limit { tag, precision, terms, strict, format } => cmd_limit(&tag, precision.digits, terms, strict, format),
        Command::Catalog { action: CatalogAction::List { format } } => cmd_catalog_list(format),
        Command::Catalog { action: CatalogAction::Run { q, precision, terms, jobs, no_limits, strict, format } } => {
            let opts = RunOptions { q: exact_rational(&q)?, digits: precision.digits, terms, limits: !no_limits };
            cmd_catalog_run(&opts, jobs, strict, format)
        }
        Command::Export { source, format } => {
            let id = load(&source)?;
            match format {
                Format::Latex => match &source.tag {
                    Some(tag) => print!("{}", catalog_lookup(tag)?.to_latex()),
                    None => print!("{}", id.to_latex()),
                },
                Format::Json => print!("{}", id.to_json()?),
                Format::Text => print!("{}", render::identity_text(&id, &id.residual()?)),
            }
            Ok(0)
        }
        Command::Constants { strict, format } => cmd_constants(strict, format),
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
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("qwz: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
