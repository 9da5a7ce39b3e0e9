//! `bimatroid`: construct, convert and check bimatroids, matroid morphisms
//! and their generating polynomials from JSON files.
//!
//! Exit codes: 0 when every verdict holds, 1 for I/O or parse errors, 2 for
//! precondition violations, 3 when a theorem check raises an alarm.

use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bimatroid::bimatroid::Orientation;
use bimatroid::corpus::FieldChoice;
use bimatroid::lorentzian;
use bimatroid::morphism::{self, MatroidMorphism};
use bimatroid::polynomial;
use bimatroid::product;
use bimatroid::schema::{
    from_json_str, to_json_string, BimatroidJson, BimatroidView, MapJson, MatrixJson, MatroidJson, MorphismJson,
    PolyJson, RelationJson, ViewKind,
};
use bimatroid::verify::{self, RandomParams, TheoremId, TheoremReport};
use bimatroid::{construct, Bimatroid, Error};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

#[derive(Parser)]
#[command(name = "bimatroid", version, about = "Bimatroids, matroid morphisms and log-concavity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a bimatroid, given in any of its four views, against the
    /// axioms of that view.
    Validate { input: PathBuf },
    /// Bimatroid of the nonzero minors of a matrix.
    FromMatrix { input: PathBuf },
    /// Bimatroid of a relation (perfect matchings).
    FromRelation { input: PathBuf },
    /// Bimatroid of a map of finite sets.
    FromMap { input: PathBuf },
    /// Bond bimatroid of a matroid at a basis.
    Bond {
        input: PathBuf,
        /// Basis elements as comma-separated labels or indices.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        basis: Vec<String>,
    },
    /// Re-express a bimatroid in another view.
    Convert {
        input: PathBuf,
        #[arg(long, value_enum)]
        view: View,
        #[arg(long, value_enum, default_value = "vertical")]
        orientation: OrientationArg,
    },
    /// Product of two bimatroids with a common middle ground set.
    Product { a: PathBuf, b: PathBuf },
    /// Compare the extended matroid of a product with the union-contraction
    /// formula.
    FrenkCheck { a: PathBuf, b: PathBuf },
    /// Compare the bimatroid of a matrix product with the product of the
    /// bimatroids.
    CauchyBinet { a: PathBuf, b: PathBuf },
    /// Matroid morphisms.
    Morphism {
        #[arg(value_enum)]
        action: MorphismAction,
        input: PathBuf,
    },
    /// Generating polynomials.
    Poly {
        #[arg(value_enum)]
        kind: PolyKind,
        input: PathBuf,
        /// `α` for the weak basis polynomial; defaults to the nullity.
        #[arg(long)]
        alpha: Option<usize>,
    },
    /// Classify a homogeneous polynomial as strictly Lorentzian, Lorentzian
    /// or neither.
    CheckLorentzian { input: PathBuf },
    /// Run a theorem check on one instance or on seeded random instances.
    Theorem {
        /// One of A, B, C, mason, c-pipeline, e-lorentzian.
        theorem: String,
        /// Instance file: a bimatroid (A, B), a matroid (mason) or a
        /// morphism (C, c-pipeline, e-lorentzian).
        input: Option<PathBuf>,
        /// Number of random trials; trial i is seeded with seed + i.
        #[arg(long, conflicts_with = "input")]
        random: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_rows: usize,
        #[arg(long, default_value_t = 4)]
        max_cols: usize,
        #[arg(long, value_enum, ignore_case = true, default_value = "Fp")]
        field: FieldArg,
        /// Worker threads for random trials; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Padding for e-lorentzian; defaults to the nullity.
        #[arg(long)]
        alpha: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Re-emit saved theorem reports (files or stdin) as JSON or CSV.
    Report {
        inputs: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum View {
    Minors,
    Extended,
    RankTable,
    Rectangles,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationArg {
    Vertical,
    Horizontal,
}

#[derive(Clone, Copy, ValueEnum)]
enum MorphismAction {
    Check,
    Bases,
    Tilde,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyKind {
    /// Regular-minor polynomial of a bimatroid.
    RegularMinor,
    /// Basis generating polynomial of a matroid.
    Basis,
    /// Homogenized independent-set polynomial of a matroid.
    Independent,
    /// Weak basis generating polynomial of a morphism.
    WeakBasis,
    /// Basis generating polynomial of the padded matroid of a morphism.
    TildeBasis,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Fp,
    Q,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Why a command stopped, mapped onto the exit codes.
enum Failure {
    Io(String),
    Library(Error),
    Alarm(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Library(Error::Parse(_) | Error::Shape(_) | Error::Dimension(_)) => 1,
            Failure::Library(Error::Inconsistent(_)) => 3,
            Failure::Library(_) => 2,
            Failure::Alarm(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Io(m) | Failure::Alarm(m) => m.clone(),
            Failure::Library(e) => e.to_string(),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn parse<T: for<'de> serde::Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    Ok(from_json_str(&read(path)?)?)
}

fn emit(text: &str) -> Outcome {
    let mut out = io::stdout().lock();
    writeln!(out, "{text}").map_err(|e| Failure::Io(format!("stdout: {e}")))
}

fn emit_json<T: serde::Serialize>(value: &T) -> Outcome {
    emit(&to_json_string(value))
}

/// A bimatroid from any view, which must satisfy its axioms.
fn valid_bimatroid(path: &Path) -> Result<Bimatroid, Failure> {
    let view: BimatroidView = parse(path)?;
    let validity = view.validate()?;
    if !validity.valid {
        return Err(Error::Precondition(format!(
            "{} is not a bimatroid: {}",
            path.display(),
            validity.violation.unwrap_or_default()
        ))
        .into());
    }
    Ok(view.to_bimatroid()?)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors are parse errors; --help and --version succeed
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("bimatroid: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { input } => {
            let view: BimatroidView = parse(&input)?;
            emit_json(&view.validate()?)
        }
        Command::FromMatrix { input } => {
            let m: MatrixJson = parse(&input)?;
            emit_json(&BimatroidJson::from_bimatroid(&construct::from_matrix(&m.to_matrix()?)?))
        }
        Command::FromRelation { input } => {
            let r: RelationJson = parse(&input)?;
            emit_json(&BimatroidJson::from_bimatroid(&r.to_bimatroid()?))
        }
        Command::FromMap { input } => {
            let m: MapJson = parse(&input)?;
            emit_json(&BimatroidJson::from_bimatroid(&construct::from_map(&m.to_map()?)?))
        }
        Command::Bond { input, basis } => {
            let m = parse::<MatroidJson>(&input)?.to_matroid()?;
            let mut mask = 0;
            for item in &basis {
                let i = match item.parse::<usize>() {
                    Ok(i) if i < m.size() => i,
                    _ => m.mask_of_labels(&[item])?.trailing_zeros() as usize,
                };
                mask |= 1 << i;
            }
            emit_json(&BimatroidJson::from_bimatroid(&construct::bond(&m, mask)?))
        }
        Command::Convert { input, view, orientation } => {
            let b = valid_bimatroid(&input)?;
            let kind = match view {
                View::Minors => ViewKind::Minors,
                View::Extended => ViewKind::Extended,
                View::RankTable => ViewKind::RankTable,
                View::Rectangles => ViewKind::Rectangles(match orientation {
                    OrientationArg::Vertical => Orientation::Vertical,
                    OrientationArg::Horizontal => Orientation::Horizontal,
                }),
            };
            emit_json(&BimatroidView::of(&b, kind))
        }
        Command::Product { a, b } => {
            let (a, b) = (valid_bimatroid(&a)?, valid_bimatroid(&b)?);
            emit_json(&BimatroidJson::from_bimatroid(&product::product(&a, &b)?))
        }
        Command::FrenkCheck { a, b } => {
            let (a, b) = (valid_bimatroid(&a)?, valid_bimatroid(&b)?);
            let frenk = product::frenk_extended(&a, &b)?;
            let direct = product::product(&a, &b)?.extended_matroid();
            emit_json(&json!({ "holds": frenk == direct }))?;
            if frenk != direct {
                return Err(Failure::Alarm("the union-contraction formula disagrees with the product".into()));
            }
            Ok(())
        }
        Command::CauchyBinet { a, b } => {
            let a = parse::<MatrixJson>(&a)?.to_matrix()?;
            let b = parse::<MatrixJson>(&b)?.to_matrix()?;
            let report = product::cauchy_binet_check(&a, &b)?;
            emit_json(&report)?;
            if !report.inclusion {
                return Err(Failure::Alarm("a regular minor of the matrix product is missing from the bimatroid product".into()));
            }
            Ok(())
        }
        Command::Morphism { action, input } => run_morphism(action, &input),
        Command::Poly { kind, input, alpha } => run_poly(kind, &input, alpha),
        Command::CheckLorentzian { input } => {
            let p = parse::<PolyJson>(&input)?.to_poly()?;
            emit_json(&lorentzian::classify(&p)?)
        }
        Command::Theorem { theorem, input, random, seed, max_rows, max_cols, field, jobs, alpha, format } => {
            let theorem: TheoremId = theorem.parse()?;
            let reports = match (input, random) {
                (Some(path), _) => vec![theorem_on_file(theorem, &path, alpha)?],
                (None, Some(n)) => {
                    let params = RandomParams {
                        max_rows,
                        max_cols,
                        field: match field {
                            FieldArg::Fp => FieldChoice::Fp,
                            FieldArg::Q => FieldChoice::Q,
                        },
                        alpha,
                    };
                    random_reports(theorem, n, seed, &params, jobs)?
                }
                (None, None) => return Err(Failure::Io("give an instance file or --random N".into())),
            };
            output_reports(&reports, format)
        }
        Command::Report { inputs, format } => {
            let mut reports = Vec::new();
            let sources = if inputs.is_empty() { vec![PathBuf::from("-")] } else { inputs };
            for path in &sources {
                reports.extend(parse_reports(&read(path)?)?);
            }
            output_reports(&reports, format)
        }
    }
}

fn run_morphism(action: MorphismAction, input: &Path) -> Outcome {
    let mj: MorphismJson = parse(input)?;
    match action {
        MorphismAction::Check => {
            let (m, target, map) = mj.parts()?;
            let via_rank = morphism::is_morphism_rank(&m, &target, &map);
            let via_flats = morphism::is_morphism_flats(&m, &target, &map);
            let via_cocircuits = morphism::is_morphism_cocircuits(&m, &target, &map);
            let mut out = json!({
                "morphism": via_rank,
                "rank_condition": via_rank,
                "flats_condition": via_flats,
                "cocircuits_condition": via_cocircuits,
            });
            if via_rank {
                let phi = MatroidMorphism::new(m, target, map)?;
                out["nullity"] = phi.nullity().into();
                out["image_spans"] = phi.image_spans().into();
            }
            emit_json(&out)?;
            if via_rank != via_flats || via_rank != via_cocircuits {
                return Err(Failure::Alarm("the three morphism characterizations disagree".into()));
            }
            Ok(())
        }
        MorphismAction::Bases => {
            let phi = mj.to_morphism()?;
            let bases: Vec<Vec<usize>> =
                phi.bases().into_iter().map(|t| bimatroid::subset::elements(t).collect()).collect();
            emit_json(&json!({ "bases": bases, "counts": phi.basis_counts() }))
        }
        MorphismAction::Tilde => {
            let phi = mj.to_morphism()?;
            emit_json(&MatroidJson::from_matroid(&phi.tilde_matroid()?))
        }
    }
}

fn run_poly(kind: PolyKind, input: &Path, alpha: Option<usize>) -> Outcome {
    let p = match kind {
        PolyKind::RegularMinor => polynomial::regular_minor_poly(&valid_bimatroid(input)?)?,
        PolyKind::Basis => polynomial::basis_generating_poly(&parse::<MatroidJson>(input)?.to_matroid()?)?,
        PolyKind::Independent => {
            polynomial::independent_set_poly_homogenized(&parse::<MatroidJson>(input)?.to_matroid()?, "z")?
        }
        PolyKind::WeakBasis => {
            let phi = parse::<MorphismJson>(input)?.to_morphism()?;
            let alpha = alpha.unwrap_or_else(|| phi.nullity());
            polynomial::weak_basis_poly(&phi, alpha)?
        }
        PolyKind::TildeBasis => {
            polynomial::basis_generating_poly(&parse::<MorphismJson>(input)?.to_morphism()?.tilde_matroid()?)?
        }
    };
    emit_json(&PolyJson::from_poly(&p))
}

fn theorem_on_file(theorem: TheoremId, path: &Path, alpha: Option<usize>) -> Result<TheoremReport, Failure> {
    Ok(match theorem {
        TheoremId::A => verify::check_theorem_a(&valid_bimatroid(path)?)?,
        TheoremId::B => verify::check_theorem_b(&valid_bimatroid(path)?)?,
        TheoremId::Mason => verify::check_mason(&parse::<MatroidJson>(path)?.to_matroid()?)?,
        TheoremId::C => verify::check_theorem_c(&parse::<MorphismJson>(path)?.to_morphism()?)?,
        TheoremId::CPipeline => verify::check_theorem_c_pipeline(&parse::<MorphismJson>(path)?.to_morphism()?)?,
        TheoremId::ELorentzian => {
            let phi = parse::<MorphismJson>(path)?.to_morphism()?;
            let alpha = alpha.unwrap_or_else(|| phi.nullity());
            verify::check_weak_basis_poly_lorentzian(&phi, alpha)?
        }
    })
}

/// Trials run in parallel and are collected in index order.
fn random_reports(
    theorem: TheoremId,
    n: u64,
    seed: u64,
    params: &RandomParams,
    jobs: usize,
) -> Result<Vec<TheoremReport>, Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::Io(format!("thread pool: {e}")))?;
    let results: Vec<_> =
        pool.install(|| (0..n).into_par_iter().map(|i| verify::random_trial(theorem, seed, i, params)).collect());
    Ok(results.into_iter().collect::<Result<_, _>>()?)
}

/// A JSON array of reports or a single report.
fn parse_reports(text: &str) -> Result<Vec<TheoremReport>, Failure> {
    match from_json_str::<Vec<TheoremReport>>(text) {
        Ok(v) => Ok(v),
        Err(_) => Ok(vec![from_json_str::<TheoremReport>(text)?]),
    }
}

fn output_reports(reports: &[TheoremReport], format: Format) -> Outcome {
    match format {
        Format::Json => emit_json(&reports)?,
        Format::Csv => emit(&reports_csv(reports)?)?,
    }
    let alarms = reports.iter().filter(|r| r.is_alarm()).count();
    if alarms > 0 {
        return Err(Failure::Alarm(format!("{alarms} of {} reports raised an alarm", reports.len())));
    }
    Ok(())
}

/// One row per inequality record.
fn reports_csv(reports: &[TheoremReport]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io_err = |e: csv::Error| Failure::Io(format!("csv: {e}"));
    w.write_record(["theorem", "seed", "trial", "sequence", "k", "lhs", "rhs", "holds", "verdict"]).map_err(io_err)?;
    for r in reports {
        let trial = r.instance.get("trial").map(|t| t.to_string()).unwrap_or_default();
        for c in &r.checks {
            w.write_record([
                r.theorem.as_str(),
                &r.seed.to_string(),
                &trial,
                c.sequence.as_deref().unwrap_or(""),
                &c.k.to_string(),
                &c.lhs,
                &c.rhs,
                &c.holds.to_string(),
                &r.verdict.to_string(),
            ])
            .map_err(io_err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io(format!("csv: {e}")))?;
    let text = String::from_utf8(bytes).map_err(|e| Failure::Io(e.to_string()))?;
    Ok(text.trim_end().to_string())
}
