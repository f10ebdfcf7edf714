//! The `cmrel` command line.
//!
//! Exit codes: 0 on success, 1 on a domain error (reported on stdout as
//! JSON `{"error": code, "message": text}`), 2 on a usage error.
//!
//! Environment: `CMREL_PREC` overrides the default precision in bits of
//! `gz`, `scan` and height computations; `CMREL_SAMPLE_BOX` overrides the
//! sampling box of `nontrivial`.

use std::ffi::OsString;
use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::{BigRational, Ratio};
use serde::Serialize;
use serde_json::json;

use crate::bounds::{self, BoundConfig};
use crate::moduli::{self, ModuliError};
use crate::quadnt::{self, Discriminant, HilbertPlace};
use crate::relations::{self, RamifiedCase, RelationSpec, SampleConfig, TestFamily};
use crate::relpoly::{self, ConstSymbol, SymbolTable, Symbols};

pub const DEFAULT_SCAN_PRECISION: usize = 128;

#[derive(Parser, Debug)]
#[command(name = "cmrel", version, about = "Relations among period values at CM points", allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce a polynomial modulo X11*X22 - X12*X21 - 1.
    Reduce(ReduceArgs),
    /// Build and inspect the relation polynomials.
    #[command(subcommand)]
    Relations(RelationsCmd),
    /// Certify that a relation is not identically zero on SL2.
    Nontrivial(NontrivialArgs),
    /// The prime set attached to dj relative to d0.
    Pset(PsetArgs),
    /// Class number of a negative discriminant.
    #[command(allow_negative_numbers = true)]
    ClassNumber { d: i64 },
    /// Reduced primitive forms of a negative discriminant.
    #[command(allow_negative_numbers = true)]
    Forms { d: i64 },
    /// Kronecker and Hilbert symbols.
    #[command(subcommand)]
    Symbols(SymbolsCmd),
    /// Reduction type of a CM curve at a prime.
    Deuring(DeuringArgs),
    /// Product of differences of singular moduli of two discriminants.
    Gz(GzArgs),
    /// Evaluate the bound formulas.
    HeightBound(HeightBoundArgs),
    /// Scan a range of discriminants.
    Scan(ScanArgs),
}

#[derive(Args, Debug, Clone, Default)]
struct SymbolDecl {
    /// Comma-separated free constant symbols, in order.
    #[arg(long, value_delimiter = ',')]
    symbols: Vec<String>,
    /// Root symbol `name=radicand`, appended after the free symbols.
    #[arg(long = "root")]
    roots: Vec<String>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct ReduceArgs {
    /// Polynomial text, e.g. "X11*X22 - X12*X21 - 1".
    poly: String,
    #[command(flatten)]
    decl: SymbolDecl,
    /// Print quotient and remainder as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    S,
    T,
}

#[derive(Subcommand, Debug)]
enum RelationsCmd {
    /// Print the canonical polynomial of a case.
    Emit {
        #[arg(long)]
        case: String,
    },
    /// Evaluate a case at S(n, l) or T(n), denominators cleared.
    TestMatrix {
        #[arg(long)]
        case: String,
        #[arg(long, value_enum, ignore_case = true)]
        family: FamilyArg,
    },
    /// Homogenize a case with powers of X11*X22 - X12*X21.
    Homogenize {
        #[arg(long)]
        case: String,
    },
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct NontrivialArgs {
    /// One of ord, ssing, arch1, arch2, ram0, ram, ram2, ram3, ram4, ram5.
    #[arg(long, conflicts_with = "poly", required_unless_present = "poly")]
    case: Option<String>,
    /// A custom polynomial (no constraints).
    #[arg(long)]
    poly: Option<String>,
    #[command(flatten)]
    decl: SymbolDecl,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    sample_box: Option<i64>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct PsetArgs {
    #[arg(long)]
    d0: i64,
    #[arg(long)]
    dj: i64,
    /// Evaluate the definition without requiring p | m.
    #[arg(long)]
    strict_def: bool,
}

#[derive(Subcommand, Debug)]
enum SymbolsCmd {
    /// Kronecker symbol (a | n).
    #[command(allow_negative_numbers = true)]
    Kronecker { a: i64, n: i64 },
    /// Hilbert symbol (a, b)_v; the place is a prime or "infinity".
    #[command(allow_negative_numbers = true)]
    Hilbert { a: i64, b: i64, place: String },
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct DeuringArgs {
    #[arg(long)]
    d: i64,
    #[arg(long)]
    p: i64,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct GzArgs {
    #[arg(long)]
    d1: i64,
    #[arg(long)]
    d2: i64,
    /// Precision in bits; without it the default policy with automatic
    /// doubling is used.
    #[arg(long)]
    prec: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct ConfigArgs {
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long)]
    c0: Option<f64>,
    #[arg(long)]
    c1: Option<f64>,
    #[arg(long = "C1")]
    big_c1: Option<f64>,
    #[arg(long = "C2")]
    big_c2: Option<f64>,
    #[arg(long = "C3")]
    big_c3: Option<f64>,
    #[arg(long)]
    c4: Option<f64>,
    #[arg(long)]
    c5: Option<f64>,
}

#[derive(Args, Debug)]
struct HeightBoundArgs {
    #[arg(long)]
    degree: u64,
    #[arg(long, default_value_t = 0)]
    pset: u64,
    #[arg(long)]
    absd: u64,
    #[command(flatten)]
    cfg: ConfigArgs,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct ScanArgs {
    #[arg(long)]
    d0: i64,
    #[arg(long)]
    from: i64,
    #[arg(long)]
    to: i64,
    #[arg(long)]
    prec: Option<usize>,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Emit JSON rows instead of CSV.
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    cfg: ConfigArgs,
}

#[derive(Debug)]
struct CliError {
    code: &'static str,
    message: String,
}

impl CliError {
    fn new(code: &'static str, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl From<relpoly::PolyError> for CliError {
    fn from(e: relpoly::PolyError) -> Self {
        use relpoly::PolyError::*;
        let code = match e {
            Syntax { .. } => "syntax_error",
            UndeclaredAt { .. } | Undeclared(_) => "undeclared_symbol",
            BadSymbol(_) | DuplicateSymbol(_) => "bad_symbol",
            OddDegreeGap { .. } => "not_homogenizable",
            _ => "polynomial_error",
        };
        CliError::new(code, e.to_string())
    }
}

impl From<relations::RelationError> for CliError {
    fn from(e: relations::RelationError) -> Self {
        use relations::RelationError::*;
        match e {
            Poly(p) => p.into(),
            UnknownCase(_) => CliError::new("unknown_case", e.to_string()),
            UnknownFamily(_) => CliError::new("unknown_family", e.to_string()),
            NotHomogeneous => CliError::new("not_homogeneous", e.to_string()),
            Unsatisfiable { .. } => CliError::new("unsatisfiable_constraints", e.to_string()),
        }
    }
}

impl From<quadnt::QuadError> for CliError {
    fn from(e: quadnt::QuadError) -> Self {
        use quadnt::QuadError::*;
        let code = match e {
            InvalidDiscriminant(_) => "invalid_discriminant",
            Parse(_) => "parse_error",
            NotPrime(_) => "not_prime",
            UndefinedSymbol | ZeroArgument => "undefined_symbol",
            EqualDiscriminants => "equal_discriminants",
        };
        CliError::new(code, e.to_string())
    }
}

impl From<ModuliError> for CliError {
    fn from(e: ModuliError) -> Self {
        match e {
            ModuliError::Quad(q) => q.into(),
            ModuliError::EqualDiscriminants => CliError::new("equal_discriminants", e.to_string()),
            ModuliError::Untrusted { .. } => CliError::new("untrusted_rounding", e.to_string()),
            ModuliError::NonPositiveImaginary => CliError::new("domain_error", e.to_string()),
        }
    }
}

impl From<bounds::BoundError> for CliError {
    fn from(e: bounds::BoundError) -> Self {
        CliError::new("invalid_config", e.to_string())
    }
}

fn env_usize(name: &str) -> Result<Option<usize>, CliError> {
    match std::env::var(name) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::new("invalid_environment", format!("{name}={v} is not a non-negative integer"))),
        Err(_) => Ok(None),
    }
}

fn disc(v: i64) -> Result<Discriminant, CliError> {
    Ok(Discriminant::new(v)?)
}

fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::new("parse_error", format!("'{s}' is not a rational number"));
    match s.split_once('/') {
        Some((n, d)) => {
            let (n, d): (num_bigint::BigInt, num_bigint::BigInt) =
                (n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?);
            if d == 0.into() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn symbol_table(decl: &SymbolDecl) -> Result<Symbols, CliError> {
    let mut syms: Vec<ConstSymbol> = decl.symbols.iter().filter(|s| !s.is_empty()).map(ConstSymbol::free).collect();
    for r in &decl.roots {
        let (name, rad) = r
            .split_once('=')
            .ok_or_else(|| CliError::new("parse_error", format!("root declaration '{r}' must be name=radicand")))?;
        syms.push(ConstSymbol::root(name.trim(), parse_rational(rad)?));
    }
    Ok(Arc::new(SymbolTable::new(syms)?))
}

fn case_spec(name: &str) -> Result<RelationSpec, CliError> {
    let case: RamifiedCase = name.parse()?;
    Ok(relations::build_relation(case))
}

fn bound_config(a: &ConfigArgs) -> Result<BoundConfig, CliError> {
    let mut cfg = BoundConfig::default();
    if let Some(e) = &a.epsilon {
        let r = parse_rational(e)?;
        let conv = |x: &num_bigint::BigInt| {
            i64::try_from(x).map_err(|_| CliError::new("invalid_config", "epsilon out of range"))
        };
        cfg.epsilon = Ratio::new(conv(r.numer())?, conv(r.denom())?);
    }
    let set = |slot: &mut f64, v: Option<f64>| {
        if let Some(v) = v {
            *slot = v;
        }
    };
    set(&mut cfg.c0, a.c0);
    set(&mut cfg.c1, a.c1);
    set(&mut cfg.big_c1, a.big_c1);
    set(&mut cfg.big_c2, a.big_c2);
    set(&mut cfg.big_c3, a.big_c3);
    set(&mut cfg.c4, a.c4);
    set(&mut cfg.c5, a.c5);
    cfg.validate()?;
    Ok(cfg)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable output")
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::new("io_error", e.to_string());
    match cmd {
        Command::Reduce(a) => {
            let table = symbol_table(&a.decl)?;
            let f = relpoly::parse_poly(&a.poly, &table)?;
            let r = relpoly::reduce_sl2(&f);
            if a.json {
                let v = json!({
                    "input": f.to_string(),
                    "quotient": r.quotient.to_string(),
                    "remainder": r.remainder.to_string(),
                    "in_ideal": r.remainder.is_zero(),
                });
                writeln!(out, "{}", to_json(&v)).map_err(io)?;
            } else {
                writeln!(out, "{}", r.remainder).map_err(io)?;
            }
        }
        Command::Relations(RelationsCmd::Emit { case }) => {
            writeln!(out, "{}", case_spec(&case)?.polynomial).map_err(io)?;
        }
        Command::Relations(RelationsCmd::TestMatrix { case, family }) => {
            let spec = case_spec(&case)?;
            let fam = match family {
                FamilyArg::S => TestFamily::S,
                FamilyArg::T => TestFamily::T,
            };
            let v = relations::test_matrix_eval(&spec, fam)?;
            let j = json!({
                "case": spec.case_name(),
                "family": fam.to_string(),
                "value": v.value.to_string(),
                "cleared_power": v.cleared_power,
            });
            writeln!(out, "{}", to_json(&j)).map_err(io)?;
        }
        Command::Relations(RelationsCmd::Homogenize { case }) => {
            writeln!(out, "{}", case_spec(&case)?.polynomial.homogenize()?).map_err(io)?;
        }
        Command::Nontrivial(a) => {
            let spec = match (&a.case, &a.poly) {
                (Some(c), _) => case_spec(c)?,
                (None, Some(p)) => {
                    let table = symbol_table(&a.decl)?;
                    RelationSpec::custom(relpoly::parse_poly(p, &table)?, vec![])
                }
                (None, None) => unreachable!("clap enforces one of --case/--poly"),
            };
            let sample_box = match a.sample_box {
                Some(b) => b,
                None => env_usize("CMREL_SAMPLE_BOX")?.map(|b| b as i64).unwrap_or(relations::DEFAULT_SAMPLE_BOX),
            };
            if sample_box <= 0 {
                return Err(CliError::new("invalid_argument", "sample box must be positive"));
            }
            let rep = relations::nontrivial_check_with(&spec, SampleConfig { trials: a.trials, seed: a.seed, sample_box })?;
            writeln!(out, "{}", to_json(&rep)).map_err(io)?;
        }
        Command::Pset(a) => {
            let r = quadnt::pset(&disc(a.d0)?, &disc(a.dj)?, a.strict_def)?;
            writeln!(out, "{}", to_json(&r)).map_err(io)?;
        }
        Command::ClassNumber { d } => {
            writeln!(out, "{}", quadnt::class_number(&disc(d)?)).map_err(io)?;
        }
        Command::Forms { d } => {
            for f in quadnt::reduced_forms(&disc(d)?) {
                writeln!(out, "{f}").map_err(io)?;
            }
        }
        Command::Symbols(SymbolsCmd::Kronecker { a, n }) => {
            writeln!(out, "{}", quadnt::kronecker(a, n)?).map_err(io)?;
        }
        Command::Symbols(SymbolsCmd::Hilbert { a, b, place }) => {
            let v = if place.eq_ignore_ascii_case("infinity") || place.eq_ignore_ascii_case("inf") {
                HilbertPlace::Infinity
            } else {
                let p: i64 =
                    place.parse().map_err(|_| CliError::new("parse_error", format!("'{place}' is not a place")))?;
                HilbertPlace::Prime(p)
            };
            writeln!(out, "{}", quadnt::hilbert(a, b, v)?).map_err(io)?;
        }
        Command::Deuring(a) => {
            writeln!(out, "{}", quadnt::deuring_classify(&disc(a.d)?, a.p)?).map_err(io)?;
        }
        Command::Gz(a) => {
            let (d1, d2) = (disc(a.d1)?, disc(a.d2)?);
            let rep = match a.prec.or(env_usize("CMREL_PREC")?) {
                Some(p) => moduli::gz_product(&d1, &d2, p)?,
                None => moduli::gz_product_auto(&d1, &d2, None)?,
            };
            writeln!(out, "{}", to_json(&rep)).map_err(io)?;
        }
        Command::HeightBound(a) => {
            let cfg = bound_config(&a.cfg)?;
            let bs = bounds::brauer_siegel_check(&cfg, a.degree, a.pset, a.absd)?;
            let v = json!({
                "htbound_rhs": bounds::height_bound_rhs(&cfg, a.degree, a.pset, a.absd)?,
                "isogeny_rhs": bounds::isogeny_bound_rhs(&cfg, a.degree)?,
                "conjecture_rhs": bounds::conjecture_rhs(&cfg, a.degree, a.absd)?,
                "brauer_siegel": bs,
                "config": cfg,
                "illustrative_defaults": true,
            });
            writeln!(out, "{}", to_json(&v)).map_err(io)?;
        }
        Command::Scan(a) => {
            let cfg = bound_config(&a.cfg)?;
            let prec = match a.prec {
                Some(p) => p,
                None => env_usize("CMREL_PREC")?.unwrap_or(DEFAULT_SCAN_PRECISION),
            };
            let rows = bounds::scan(&disc(a.d0)?, a.from, a.to, &cfg, prec)?;
            let text = if a.json { format!("{}\n", to_json(&rows)) } else { bounds::scan_csv(&rows) };
            match &a.out {
                Some(path) => {
                    std::fs::write(path, &text).map_err(io)?;
                    writeln!(out, "{}", to_json(&json!({ "rows": rows.len(), "out": path }))).map_err(io)?;
                }
                None => out.write_all(text.as_bytes()).map_err(io)?,
            }
        }
    }
    Ok(())
}

/// Run with the given argument list (program name first) and return the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(out, "{}", to_json(&json!({ "error": e.code, "message": e.message })));
            1
        }
    }
}
