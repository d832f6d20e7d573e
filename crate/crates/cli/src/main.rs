//! `sl2ode` — generate the invariant ODE families, verify point
//! symmetries, and solve for full symmetry algebras, all exactly.
//!
//! Exit codes: 0 success (or "is a symmetry"), 1 verified false
//! (not a symmetry, or selftest failures), 2 usage error, 3 internal
//! error. Reports go to stdout, diagnostics to stderr.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sl2ode::acceptance;
use sl2ode::factory::{self, closed_form, display_family, solve_recursion, CoefficientVector, Family};
use sl2ode::fields::VectorField;
use sl2ode::parse::parse_field;
use sl2ode::rat::Rat;
use sl2ode::render;
use sl2ode::report::{equation_json, ode_from_any_json, CoefficientsJson, SymmetryReportJson};
use sl2ode::symmetry::{
    determining_system, solve_determining, symmetry_residual, AnsatzSpace, SymmetryReport,
};
use sl2ode::{Error, OdeSpec};

#[derive(Parser)]
#[command(
    name = "sl2ode",
    version,
    about = "Exact generation and verification of ODEs with prescribed sl(2,R) point symmetries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum SourceArg {
    Recursion,
    ClosedForm,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum FormatArg {
    Ascii,
    Latex,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum FamilyArg {
    Eq3,
    Eq9,
    Eq10,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Eq3 => Family::Eq3,
            FamilyArg::Eq9 => Family::Eq9,
            FamilyArg::Eq10 => Family::Eq10,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the family coefficients (a_1, ..., a_{k-2}).
    GenCoeffs {
        /// Equation order; k >= 4.
        #[arg(long)]
        k: u32,
        /// Coefficient source: the band recursion (authoritative), the
        /// Gamma closed form (cross-check), or both with a comparison.
        #[arg(long, value_enum, default_value_t = SourceArg::Recursion)]
        source: SourceArg,
        /// Output format (defaults to $SL2ODE_FORMAT, then ascii).
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Write the report to a file instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Generate a member of one of the built-in equation families.
    GenEq {
        /// Which family: eq3, eq9, or eq10.
        #[arg(value_enum)]
        family: FamilyArg,
        /// Equation order; required for eq3/eq10 (k >= 4), fixed at 3
        /// for eq9.
        #[arg(long)]
        k: Option<u32>,
        /// Coefficient source for eq3/eq10 (eq9 has no coefficients).
        #[arg(long, value_enum, default_value_t = SourceArg::Recursion)]
        source: SourceArg,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check whether a point vector field is a symmetry of an ODE.
    Verify {
        /// Built-in family to check against.
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        /// Equation order for eq3/eq10.
        #[arg(long)]
        k: Option<u32>,
        /// Equation JSON file (as emitted by gen-eq --format json, or
        /// a minimal {"order": .., "rhs": ".."} document).
        #[arg(long)]
        ode_file: Option<PathBuf>,
        /// A builtin generator (X1..X5) or `xi = <expr>; eta = <expr>`.
        #[arg(long)]
        field: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Compute the full symmetry algebra within a polynomial ansatz.
    Solve {
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        ode_file: Option<PathBuf>,
        /// Ansatz degree bound for xi and eta; D >= 1.
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run the full acceptance suite; exit 0 iff every criterion passes.
    Selftest,
}

/// Anything that ends an invocation with a nonzero code.
enum Failure {
    Usage(String),
    Internal(String),
    NotASymmetry(String),
    SelftestFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::OrderTooSmall { .. }
            | Error::CoefficientMismatch { .. }
            | Error::InvalidOde(_)
            | Error::InvalidPhi(_)
            | Error::NotPointField(_)
            | Error::Parse(_) => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

fn resolve_format(flag: Option<FormatArg>) -> Result<FormatArg, Failure> {
    if let Some(f) = flag {
        return Ok(f);
    }
    match std::env::var("SL2ODE_FORMAT") {
        Ok(v) => match v.as_str() {
            "ascii" => Ok(FormatArg::Ascii),
            "latex" => Ok(FormatArg::Latex),
            "json" => Ok(FormatArg::Json),
            other => Err(Failure::Usage(format!(
                "SL2ODE_FORMAT must be ascii, latex, or json (got {other:?})"
            ))),
        },
        Err(_) => Ok(FormatArg::Ascii),
    }
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Internal(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn coeff_list_ascii(v: &CoefficientVector) -> String {
    let items: Vec<String> = v.values().iter().map(Rat::to_string).collect();
    format!("a = [{}]", items.join(", "))
}

fn coeff_list_latex(v: &CoefficientVector) -> String {
    let items: Vec<String> = v
        .values()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let body = if a.is_integer() {
                a.to_string()
            } else {
                let sign = if a.is_negative() { "-" } else { "" };
                let m = a.abs();
                format!("{sign}\\tfrac{{{}}}{{{}}}", m.numer(), m.denom())
            };
            format!("a_{{{}}} = {}", i + 1, body)
        })
        .collect();
    items.join(", ")
}

/// Magnitude and per-index sign relation between the two sources,
/// collapsed when the sign ratio is uniform.
fn sign_comparison(rec: &CoefficientVector, cf: &CoefficientVector) -> String {
    let mut ratios: Vec<String> = rec
        .values()
        .iter()
        .zip(cf.values())
        .filter(|(r, _)| !r.is_zero())
        .map(|(r, c)| (c / r).to_string())
        .collect();
    let magnitudes_agree = rec
        .values()
        .iter()
        .zip(cf.values())
        .all(|(r, c)| r.abs() == c.abs());
    ratios.dedup();
    let sign = if ratios.len() == 1 {
        format!("sign(closed_form/recursion) = {} for all q", ratios[0])
    } else {
        format!("sign(closed_form/recursion) varies: [{}]", ratios.join(", "))
    };
    format!(
        "|closed_form(q)| {} |recursion(q)| for all q; {}",
        if magnitudes_agree { "==" } else { "!=" },
        sign
    )
}

fn run_gen_coeffs(
    k: u32,
    source: SourceArg,
    format: Option<FormatArg>,
    output: Option<PathBuf>,
) -> Result<(), Failure> {
    let format = resolve_format(format)?;
    let mut text = String::new();
    match source {
        SourceArg::Both => {
            let rec = solve_recursion(k)?;
            let cf = closed_form(k)?;
            match format {
                FormatArg::Ascii => {
                    writeln!(text, "recursion: {}", coeff_list_ascii(&rec)).unwrap();
                    writeln!(text, "closed_form: {}", coeff_list_ascii(&cf)).unwrap();
                    writeln!(text, "comparison: {}", sign_comparison(&rec, &cf)).unwrap();
                }
                FormatArg::Latex => {
                    writeln!(text, "\\text{{recursion: }} {}", coeff_list_latex(&rec)).unwrap();
                    writeln!(text, "\\text{{closed form: }} {}", coeff_list_latex(&cf)).unwrap();
                    writeln!(text, "% {}", sign_comparison(&rec, &cf)).unwrap();
                }
                FormatArg::Json => {
                    let doc = serde_json::json!({
                        "k": k,
                        "recursion": CoefficientsJson::from_vector(&rec).a,
                        "closed_form": CoefficientsJson::from_vector(&cf).a,
                        "comparison": sign_comparison(&rec, &cf),
                    });
                    writeln!(text, "{}", serde_json::to_string_pretty(&doc).unwrap()).unwrap();
                }
            }
        }
        SourceArg::Recursion | SourceArg::ClosedForm => {
            let v = if source == SourceArg::Recursion {
                solve_recursion(k)?
            } else {
                closed_form(k)?
            };
            match format {
                FormatArg::Ascii => writeln!(text, "{}", coeff_list_ascii(&v)).unwrap(),
                FormatArg::Latex => writeln!(text, "{}", coeff_list_latex(&v)).unwrap(),
                FormatArg::Json => {
                    let doc = CoefficientsJson::from_vector(&v);
                    writeln!(text, "{}", serde_json::to_string_pretty(&doc).unwrap()).unwrap();
                }
            }
        }
    }
    emit(output.as_ref(), &text)
}

/// Resolve the order for a family: eq9 pins k = 3, the others need an
/// explicit --k >= 4.
fn family_order(family: Family, k: Option<u32>) -> Result<u32, Failure> {
    match (family.fixed_order(), k) {
        (Some(fixed), None) => Ok(fixed),
        (Some(fixed), Some(k)) if k == fixed => Ok(fixed),
        (Some(fixed), Some(k)) => Err(Failure::Usage(format!(
            "{} is fixed at order {fixed}; got --k {k}",
            family.name()
        ))),
        (None, Some(k)) if k >= 4 => Ok(k),
        (None, Some(k)) => Err(Failure::Usage(format!(
            "{} requires k >= 4; got --k {k}",
            family.name()
        ))),
        (None, None) => Err(Failure::Usage(format!(
            "{} requires --k <order> (k >= 4)",
            family.name()
        ))),
    }
}

fn run_gen_eq(
    family: FamilyArg,
    k: Option<u32>,
    source: SourceArg,
    format: Option<FormatArg>,
    output: Option<PathBuf>,
) -> Result<(), Failure> {
    let family: Family = family.into();
    let format = resolve_format(format)?;
    let k = family_order(family, k)?;
    let coeffs = match (family, source) {
        (Family::Eq9, _) => None,
        (_, SourceArg::Recursion) => Some(solve_recursion(k)?),
        (_, SourceArg::ClosedForm) => Some(closed_form(k)?),
        (_, SourceArg::Both) => {
            return Err(Failure::Usage(
                "--source both is only meaningful for gen-coeffs".into(),
            ))
        }
    };
    let display = display_family(family, k, coeffs.as_ref())?;
    let mut text = String::new();
    match format {
        FormatArg::Ascii => writeln!(text, "{}", render::equation_ascii(&display)).unwrap(),
        FormatArg::Latex => writeln!(text, "{}", render::equation_latex(&display)).unwrap(),
        FormatArg::Json => {
            let doc = equation_json(family, k, coeffs.as_ref())?;
            writeln!(text, "{}", serde_json::to_string_pretty(&doc).unwrap()).unwrap();
        }
    }
    emit(output.as_ref(), &text)
}

fn load_ode(
    family: Option<FamilyArg>,
    k: Option<u32>,
    ode_file: Option<&PathBuf>,
) -> Result<OdeSpec, Failure> {
    match (family, ode_file) {
        (Some(_), Some(_)) => Err(Failure::Usage(
            "--family and --ode-file are mutually exclusive".into(),
        )),
        (Some(fam), None) => {
            let family: Family = fam.into();
            let k = family_order(family, k)?;
            Ok(factory::build_family(family, k)?)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            Ok(ode_from_any_json(&text)?)
        }
        (None, None) => Err(Failure::Usage(
            "one of --family or --ode-file is required".into(),
        )),
    }
}

fn parse_field_arg(spec: &str) -> Result<VectorField, Failure> {
    if let Some(builtin) = VectorField::builtin(spec.trim()) {
        return Ok(builtin);
    }
    Ok(parse_field(spec)?)
}

fn run_verify(
    family: Option<FamilyArg>,
    k: Option<u32>,
    ode_file: Option<PathBuf>,
    field: &str,
    output: Option<PathBuf>,
) -> Result<(), Failure> {
    let ode = load_ode(family, k, ode_file.as_ref())?;
    let v = parse_field_arg(field)?;
    let residual = symmetry_residual(&v, &ode);
    if residual.is_zero() {
        emit(output.as_ref(), "SYMMETRY\n")
    } else {
        let text = format!("NOT A SYMMETRY\nresidual = {residual}\n");
        emit(output.as_ref(), &text)?;
        Err(Failure::NotASymmetry(format!(
            "{field} is not a symmetry of {}",
            ode.label()
        )))
    }
}

fn bracket_lines(report: &SymmetryReport) -> String {
    let mut out = String::new();
    match &report.brackets {
        None => writeln!(out, "brackets: not closed within the reported basis").unwrap(),
        Some(table) => {
            writeln!(out, "brackets:").unwrap();
            for i in 0..table.dim() {
                for j in (i + 1)..table.dim() {
                    let combo: Vec<String> = table
                        .entry(i, j)
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(m, c)| {
                            if c.is_one() {
                                format!("V{}", m + 1)
                            } else if (-c).is_one() {
                                format!("-V{}", m + 1)
                            } else {
                                format!("{}*V{}", c, m + 1)
                            }
                        })
                        .collect();
                    let rhs = if combo.is_empty() {
                        "0".to_string()
                    } else {
                        combo.join(" + ").replace("+ -", "- ")
                    };
                    writeln!(out, "  [V{}, V{}] = {rhs}", i + 1, j + 1).unwrap();
                }
            }
        }
    }
    out
}

fn report_ascii(report: &SymmetryReport) -> String {
    let mut text = String::new();
    writeln!(text, "ode: {}", report.ode_label).unwrap();
    writeln!(text, "ansatz degree: {}", report.degree).unwrap();
    writeln!(text, "dimension: {}", report.dimension).unwrap();
    writeln!(text, "classification: {}", report.classification).unwrap();
    writeln!(text, "basis:").unwrap();
    for (i, f) in report.basis.iter().enumerate() {
        writeln!(text, "  V{}: {f}", i + 1).unwrap();
    }
    text.push_str(&bracket_lines(report));
    writeln!(text, "note: {}", report.scope_note).unwrap();
    text
}

fn run_solve(
    family: Option<FamilyArg>,
    k: Option<u32>,
    ode_file: Option<PathBuf>,
    degree: u32,
    format: Option<FormatArg>,
    output: Option<PathBuf>,
) -> Result<(), Failure> {
    if degree < 1 {
        return Err(Failure::Usage("--degree must be at least 1".into()));
    }
    let format = resolve_format(format)?;
    let ode = load_ode(family, k, ode_file.as_ref())?;
    let system = determining_system(&ode, &AnsatzSpace::new(degree))?;
    let report = solve_determining(&system)?;
    let text = match format {
        FormatArg::Ascii | FormatArg::Latex => report_ascii(&report),
        FormatArg::Json => {
            let doc = SymmetryReportJson::from_report(&report);
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
    };
    emit(output.as_ref(), &text)
}

fn run_selftest() -> Result<(), Failure> {
    let outcomes = acceptance::run_all();
    let mut all_passed = true;
    for o in &outcomes {
        println!("{}", o.line());
        all_passed &= o.passed;
    }
    println!(
        "selftest: {}/{} criteria passed (CLI exit-code goldens run in the cli crate's tests)",
        outcomes.iter().filter(|o| o.passed).count(),
        outcomes.len()
    );
    if all_passed {
        Ok(())
    } else {
        Err(Failure::SelftestFailed)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::GenCoeffs { k, source, format, output } => run_gen_coeffs(k, source, format, output),
        Command::GenEq { family, k, source, format, output } => {
            run_gen_eq(family, k, source, format, output)
        }
        Command::Verify { family, k, ode_file, field, output } => {
            run_verify(family, k, ode_file, &field, output)
        }
        Command::Solve { family, k, ode_file, degree, format, output } => {
            run_solve(family, k, ode_file, degree, format, output)
        }
        Command::Selftest => run_selftest(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::from(0),
        Err(Failure::NotASymmetry(msg)) => {
            eprintln!("sl2ode: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::SelftestFailed) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("sl2ode: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("sl2ode: internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
