use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use drc_core::biordered::{check_biordered, check_category, BiorderedCategory};
use drc_core::corpus;
use drc_core::cpc::{check_cpc, ChainedProjectionCategory};
use drc_core::free::{build_bounded_free_with_slack, certify_bounded_free, certify_mp, mp_of, DEFAULT_SLACK};
use drc_core::functors::{c_of, roundtrip_cs, roundtrip_sc, s_of};
use drc_core::io::{self, detect_kind, to_canonical_json, FileKind};
use drc_core::projection_algebra::{check_pa_axioms, check_pa_invariants};
use drc_core::search::{parse_axiom_list, search_upward, AxiomId};
use drc_core::semigroup::{check_drc_axioms, check_drc_consequences, is_fundamental, mu_congruence, quotient};
use drc_core::star::{drc_ops, pseudoinverse, random_projection_search, reproduce_counterexamples, RationalMatrix};
use drc_core::{AxiomReport, DrcError, FiniteSemigroup, ProjectionAlgebra};

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] DrcError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// A structure that loads but breaks a law is a check failure.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(DrcError::AxiomFailure { .. } | DrcError::Incompatible { .. }) => 1,
            _ => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "drc-kit", version, about = "Checks and constructions for finite DRC-semigroups")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an axiom suite on a structure file.
    Check {
        #[arg(value_enum)]
        what: CheckKind,
        file: PathBuf,
    },
    /// Apply one of the two constructions and print the resulting file.
    Functor {
        #[arg(value_enum)]
        which: FunctorKind,
        file: PathBuf,
    },
    /// Round-trip a semigroup or chained projection category file.
    Roundtrip { file: PathBuf },
    /// Truncated free projection-generated semigroup of a projection algebra.
    Free(FreeArgs),
    /// Fundamental transformation-pair model, printed as a semigroup file.
    Mp { file: PathBuf },
    /// Maximum projection-separating congruence of a semigroup, or the
    /// fundamental model of a projection algebra.
    Fundamental { file: PathBuf },
    /// Finite model search over unary tables.
    Search(SearchArgs),
    /// Rational matrix computations.
    Star {
        #[command(subcommand)]
        command: StarCommand,
    },
    /// Bundled structures.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Drc,
    Pa,
    Cat,
    Biordered,
    Cpc,
}

#[derive(Clone, Copy, ValueEnum)]
enum FunctorKind {
    /// Semigroup to chained projection category.
    C,
    /// Chained projection category to semigroup.
    S,
}

#[derive(Args)]
struct FreeArgs {
    #[arg(long)]
    max_len: usize,
    #[arg(long, default_value_t = DEFAULT_SLACK)]
    slack: usize,
    file: PathBuf,
}

#[derive(Args)]
struct SearchArgs {
    /// Comma-separated axiom names; ranges such as `p1..p5` are allowed.
    #[arg(long)]
    satisfy: String,
    #[arg(long)]
    violate: String,
    #[arg(long)]
    size: usize,
    /// Keep increasing the size up to this bound until a model appears.
    #[arg(long)]
    upto: Option<usize>,
    #[arg(long, default_value_t = 1)]
    limit: usize,
}

#[derive(Subcommand)]
enum StarCommand {
    /// Recompute every printed matrix example.
    Counterexamples,
    /// Moore–Penrose inverse of a JSON array of "num/den" rows.
    Pinv { matrix: String },
    /// Randomised search on linked pairs of rational projections.
    Search {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        dim: usize,
    },
}

#[derive(Subcommand)]
enum CorpusCommand {
    List,
    /// Print one bundled structure.
    Show { name: String },
    /// Write every bundled structure and an index into a directory.
    Write { dir: PathBuf },
}

/// What a command produced: text for humans, a JSON value, and whether
/// every check passed.
struct Output {
    text: String,
    json: Value,
    passed: bool,
}

impl Output {
    fn report(reports: Vec<AxiomReport>) -> Output {
        let passed = reports.iter().all(AxiomReport::all_passed);
        let text = reports.iter().map(ToString::to_string).collect::<String>();
        let json = json!({ "passed": passed, "reports": reports });
        Output { text, json, passed }
    }

    /// A structure file: the text form is the canonical file itself.
    fn file<T: Serialize>(value: &T) -> CliResult<Output> {
        let text = to_canonical_json(value)?;
        Ok(Output { text, json: serde_json::to_value(value).map_err(DrcError::from)?, passed: true })
    }
}

fn load_value(path: &Path) -> CliResult<(Value, FileKind, String)> {
    let text = io::read_text(path)?;
    let v: Value = serde_json::from_str(&text).map_err(DrcError::from)?;
    let kind = detect_kind(&v)?;
    Ok((v, kind, text))
}

fn expect_kind(path: &Path, want: FileKind) -> CliResult<String> {
    let (_, kind, text) = load_value(path)?;
    if kind != want {
        return Err(CliError::Usage(format!("{} holds a {kind:?} file, expected {want:?}", path.display())));
    }
    Ok(text)
}

fn semigroup_file(path: &Path) -> CliResult<FiniteSemigroup> {
    Ok(io::parse_semigroup(&expect_kind(path, FileKind::Semigroup)?)?)
}

fn pa_file(path: &Path) -> CliResult<ProjectionAlgebra> {
    Ok(io::parse_pa(&expect_kind(path, FileKind::Pa)?)?)
}

fn cpc_file(path: &Path) -> CliResult<ChainedProjectionCategory> {
    Ok(io::parse_cpc(&expect_kind(path, FileKind::Cpc)?)?)
}

fn category_file(path: &Path) -> CliResult<BiorderedCategory> {
    let (v, kind, text) = load_value(path)?;
    match kind {
        FileKind::Category => Ok(io::parse_category(&text)?),
        // A chained projection category file embeds its category.
        FileKind::Cpc => Ok(serde_json::from_value(v).map_err(DrcError::from)?),
        other => Err(CliError::Usage(format!("{} holds a {other:?} file, expected a category", path.display()))),
    }
}

fn check(what: CheckKind, file: &Path) -> CliResult<Output> {
    let reports = match what {
        CheckKind::Drc => {
            let s = semigroup_file(file)?;
            vec![check_drc_axioms(&s), check_drc_consequences(&s)]
        }
        CheckKind::Pa => {
            let p = pa_file(file)?;
            vec![check_pa_axioms(&p), check_pa_invariants(&p)]
        }
        CheckKind::Cat => vec![check_category(&category_file(file)?)],
        CheckKind::Biordered => {
            let c = category_file(file)?;
            vec![check_category(&c), check_biordered(&c)]
        }
        CheckKind::Cpc => vec![check_cpc(&cpc_file(file)?)],
    };
    Ok(Output::report(reports))
}

fn roundtrip(file: &Path) -> CliResult<Output> {
    let (_, kind, text) = load_value(file)?;
    let (label, ok) = match kind {
        FileKind::Semigroup => ("S(C(S)) = S", roundtrip_sc(&io::parse_semigroup(&text)?)?),
        FileKind::Cpc => ("C(S(C)) = C", roundtrip_cs(&io::parse_cpc(&text)?)?),
        other => return Err(CliError::Usage(format!("cannot round-trip a {other:?} file"))),
    };
    let verdict = if ok { "OK" } else { "FAIL" };
    Ok(Output { text: format!("{label}: {verdict}\n"), json: json!({ "check": label, "passed": ok }), passed: ok })
}

fn free(args: &FreeArgs) -> CliResult<Output> {
    let pa = pa_file(&args.file)?;
    let bf = build_bounded_free_with_slack(&pa, args.max_len, args.slack)?;
    let report = certify_bounded_free(&bf);
    let k = bf.class_count();
    let reps: Vec<Vec<usize>> = (0..k).map(|c| bf.representative(c).entries().to_vec()).collect();
    let d: Vec<usize> = (0..k).map(|c| bf.d(c)).collect();
    let r: Vec<usize> = (0..k).map(|c| bf.r(c)).collect();
    let generators: Vec<usize> = (0..pa.n()).map(|p| bf.generator(p)).collect();
    let mut text = format!(
        "bounded free semigroup: max length {}, slack {}, {k} classes, {} products outside the bound\n",
        bf.max_len(),
        bf.slack(),
        bf.unknown_products()
    );
    text.push_str("class representative D R\n");
    for c in 0..k {
        text.push_str(&format!("{c} {:?} {} {}\n", reps[c], d[c], r[c]));
    }
    text.push_str("products (row then column, ? outside the bound)\n");
    for row in bf.mul_table() {
        let cells: Vec<String> = row.iter().map(|x| x.map_or("?".to_string(), |v| v.to_string())).collect();
        text.push_str(&cells.join(" "));
        text.push('\n');
    }
    text.push_str(&report.to_string());
    let json = json!({
        "max_len": bf.max_len(),
        "slack": bf.slack(),
        "classes": k,
        "generators": generators,
        "representatives": reps,
        "mul": bf.mul_table(),
        "D": d,
        "R": r,
        "report": report,
    });
    Ok(Output { text, json, passed: report.all_passed() })
}

fn mp(file: &Path) -> CliResult<(Output, AxiomReport)> {
    let pa = pa_file(file)?;
    let model = mp_of(&pa)?;
    let report = certify_mp(&pa, &model);
    let mut out = Output::file(&model.semigroup)?;
    out.passed = report.all_passed();
    Ok((out, report))
}

fn fundamental(file: &Path) -> CliResult<Output> {
    let (_, kind, text) = load_value(file)?;
    match kind {
        FileKind::Semigroup => {
            let s = io::parse_semigroup(&text)?;
            let mu = mu_congruence(&s);
            let q = quotient(&s, &mu)?;
            let mut rep = AxiomReport::new("maximum projection-separating congruence");
            rep.record_note(
                "the congruence is trivial",
                mu.is_identity(),
                format!("{} classes on {} elements", mu.class_count(), s.n()),
            );
            rep.record_note("the quotient is fundamental", is_fundamental(&q), format!("{} elements", q.n()));
            let passed = rep.all_passed();
            let text = format!("{rep}partition {:?}\n", mu.partition);
            let json = json!({ "passed": passed, "partition": mu.partition, "quotient": q, "report": rep });
            Ok(Output { text, json, passed })
        }
        FileKind::Pa => {
            let pa = io::parse_pa(&text)?;
            let model = mp_of(&pa)?;
            Ok(Output::report(vec![certify_mp(&pa, &model)]))
        }
        other => Err(CliError::Usage(format!("fundamental needs a semigroup or projection algebra, got {other:?}"))),
    }
}

fn run_search(args: &SearchArgs) -> CliResult<Output> {
    let satisfy = parse_axiom_list(&args.satisfy)?;
    let violate: AxiomId = args.violate.parse()?;
    if args.size == 0 {
        return Err(CliError::Usage("size must be at least 1".into()));
    }
    let to = args.upto.unwrap_or(args.size);
    let results = search_upward(&satisfy, violate, args.size, to, args.limit)?;
    let mut text = String::new();
    for r in &results {
        let status = if r.certifies_exhaustion() {
            "exhausted, no model".to_string()
        } else if r.exhausted {
            format!("{} model(s), all classes", r.models.len())
        } else {
            format!("{} model(s), limit reached", r.models.len())
        };
        text.push_str(&format!("size {}: {status} ({} nodes)\n", r.size, r.nodes));
        for m in &r.models {
            text.push_str(&to_canonical_json(m)?);
        }
    }
    Ok(Output { text, json: json!({ "results": results }), passed: true })
}

fn parse_matrix(arg: &str) -> CliResult<RationalMatrix> {
    let text = if Path::new(arg).is_file() { io::read_text(Path::new(arg))? } else { arg.to_string() };
    Ok(serde_json::from_str(&text).map_err(DrcError::from)?)
}

fn star(cmd: &StarCommand) -> CliResult<Output> {
    match cmd {
        StarCommand::Counterexamples => Ok(Output::report(vec![reproduce_counterexamples()])),
        StarCommand::Pinv { matrix } => {
            let a = parse_matrix(matrix)?;
            let x = pseudoinverse(&a);
            let (d, r) = drc_ops(&a);
            let text = format!("a  = {a}\na⁺ = {x}\nD(a) = aa⁺ = {d}\nR(a) = a⁺a = {r}\n");
            Ok(Output { text, json: json!({ "a": a, "pinv": x, "D": d, "R": r }), passed: true })
        }
        StarCommand::Search { seed, trials, dim } => {
            if *dim == 0 {
                return Err(CliError::Usage("dimension must be at least 1".into()));
            }
            let o = random_projection_search(*seed, *trials, *dim);
            let mut text = o.report.to_string();
            if let Some((b, p, s)) = &o.first {
                text.push_str(&format!("first sample off the simplified forms: b = {b}, p = {p}, s = {s}\n"));
            }
            let passed = o.report.all_passed();
            Ok(Output { text, json: serde_json::to_value(&o).map_err(DrcError::from)?, passed })
        }
    }
}

fn corpus_cmd(cmd: &CorpusCommand) -> CliResult<Output> {
    match cmd {
        CorpusCommand::List => {
            let idx = corpus::index();
            let mut text = format!("corpus version {}\n", idx.version);
            for e in &idx.entries {
                text.push_str(&format!("{:<24} {:<10} {}\n", e.name, e.kind, e.description));
            }
            Ok(Output { text, json: serde_json::to_value(&idx).map_err(DrcError::from)?, passed: true })
        }
        CorpusCommand::Show { name } => {
            let e = corpus::get(name).ok_or_else(|| CliError::Usage(format!("no corpus entry named {name}")))?;
            let text = e.structure.to_canonical()?;
            let json: Value = serde_json::from_str(&text).map_err(DrcError::from)?;
            Ok(Output { text, json, passed: true })
        }
        CorpusCommand::Write { dir } => {
            let written = corpus::write_corpus(dir)?;
            let names: Vec<String> = written.iter().map(|p| p.display().to_string()).collect();
            Ok(Output { text: format!("wrote {} files to {}\n", names.len(), dir.display()), json: json!(names), passed: true })
        }
    }
}

fn functor(which: FunctorKind, file: &Path) -> CliResult<Output> {
    match which {
        FunctorKind::C => Output::file(&c_of(&semigroup_file(file)?)?),
        FunctorKind::S => Output::file(&s_of(&cpc_file(file)?)?),
    }
}

fn run(cli: &Cli) -> CliResult<Output> {
    match &cli.command {
        Command::Check { what, file } => check(*what, file),
        Command::Functor { which, file } => functor(*which, file),
        Command::Roundtrip { file } => roundtrip(file),
        Command::Free(args) => free(args),
        Command::Mp { file } => {
            let (out, report) = mp(file)?;
            if !report.all_passed() {
                eprint!("{report}");
            }
            Ok(out)
        }
        Command::Fundamental { file } => fundamental(file),
        Command::Search(args) => run_search(args),
        Command::Star { command } => star(command),
        Command::Corpus { command } => corpus_cmd(command),
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("DRC_KIT_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("DRC_KIT_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = configure_threads().and_then(|()| run(&cli));
    match result {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json value")),
            }
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
