use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cubical::adjunctions::{apply_int, apply_q, geometric_product, product_comparison, triangulate, u_functor};
use cubical::boxcat::{BoxMap, MAX_DIM};
use cubical::homology::homology;
use cubical::io::{parse_map, parse_presheaf, serialize_map, serialize_presheaf};
use cubical::model::LiftingProblem;
use cubical::presheaf::Presheaf;
use cubical::qshape::q_object;
use cubical::suite::{run_suite, Fault, SuiteOptions};
use cubical::Error;

#[derive(Parser)]
#[command(name = "cubical", version, about = "Cubical sets with connections and simplicial sets at desk scale")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Maps of the box category.
    #[command(subcommand)]
    Box(BoxCommand),
    /// The quotient shapes Q^n.
    #[command(subcommand)]
    Q(QCommand),
    /// Apply a functor to presheaf files.
    Functor(FunctorArgs),
    /// Solve a lifting problem given as four map files.
    Lift(LiftArgs),
    /// Integral homology of a simplicial presheaf.
    Homology(HomologyArgs),
    /// Run a verification suite.
    Check(CheckArgs),
}

#[derive(Subcommand)]
enum BoxCommand {
    /// List every map [1]^M → [1]^N.
    Enum { m: usize, n: usize },
    /// Print OUTER ∘ INNER, where INNER has domain [1]^M.
    Compose { m: usize, outer: String, inner: String },
    /// Print the normal form of a map from [1]^M.
    Nf { m: usize, map: String },
}

#[derive(Subcommand)]
enum QCommand {
    /// Emit Q^N as a presheaf file.
    Cells {
        n: usize,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FunctorName {
    Q,
    Int,
    Tri,
    U,
    Gprod,
    CmpProduct,
}

#[derive(Args)]
struct FunctorArgs {
    name: FunctorName,
    #[arg(long, required = true)]
    max_dim: usize,
    /// Presheaf file; `gprod` and `cmp-product` take two.
    #[arg(long, required = true)]
    input: Vec<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct LiftArgs {
    /// The left map A → B.
    #[arg(long)]
    i: PathBuf,
    /// The right map X → Y.
    #[arg(long)]
    p: PathBuf,
    /// The top map A → X.
    #[arg(long)]
    top: PathBuf,
    /// The bottom map B → Y.
    #[arg(long)]
    bottom: PathBuf,
    /// Emit every lift as a JSON array.
    #[arg(long)]
    all: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct HomologyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    reduced: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Args)]
struct CheckArgs {
    /// boxcat, qshape, coreflection, model, homology, all or pushout-squares.
    suite: String,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 3)]
    max_dim: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Corrupt Q^2 before running, to see the checks fail.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Truncation(_) | Error::Overflow(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_presheaf(path: &PathBuf) -> Result<Presheaf, Failure> {
    parse_presheaf(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Check(e.to_string())),
    }
}

/// Coordinate form when it starts with `(`, a generator word otherwise.
fn parse_box(dom: usize, text: &str) -> Result<BoxMap, Failure> {
    let f = if text.trim_start().starts_with('(') { BoxMap::parse(dom, text)? } else { BoxMap::parse_word(dom, text)? };
    Ok(f)
}

fn run_box(cmd: BoxCommand) -> Outcome {
    let text = match cmd {
        BoxCommand::Enum { m, .. } if m > MAX_DIM => {
            return Err(Failure::Usage(format!("domain dimension {m} exceeds {MAX_DIM}")));
        }
        BoxCommand::Enum { m, n } => BoxMap::enumerate(m, n).iter().map(|f| format!("{f}\n")).collect(),
        BoxCommand::Compose { m, outer, inner } => {
            let g = parse_box(m, &inner)?;
            let f = parse_box(g.cod(), &outer)?;
            format!("{}\n", f.compose(&g)?)
        }
        BoxCommand::Nf { m, map } => format!("{}\n", parse_box(m, &map)?.normal_form()),
    };
    emit(&None, &text)?;
    Ok(true)
}

fn two(inputs: &[PathBuf]) -> Result<(Presheaf, Presheaf), Failure> {
    match inputs {
        [a, b] => Ok((read_presheaf(a)?, read_presheaf(b)?)),
        _ => Err(Failure::Usage(format!("expected two --input files, got {}", inputs.len()))),
    }
}

fn run_functor(args: FunctorArgs) -> Outcome {
    let n = args.max_dim;
    let one = || match args.input.as_slice() {
        [a] => read_presheaf(a),
        _ => Err(Failure::Usage(format!("expected one --input file, got {}", args.input.len()))),
    };
    let text = match args.name {
        FunctorName::Q => serialize_presheaf(&apply_q(one()?, n)?.object),
        FunctorName::Int => serialize_presheaf(&apply_int(one()?, n)?.object),
        FunctorName::Tri => serialize_presheaf(&triangulate(&one()?, n)?),
        FunctorName::U => serialize_presheaf(&u_functor(one()?, n)?),
        FunctorName::Gprod => {
            let (a, b) = two(&args.input)?;
            serialize_presheaf(&geometric_product(&a, &b, n, n)?)
        }
        FunctorName::CmpProduct => {
            let (a, b) = two(&args.input)?;
            serialize_map(&product_comparison(a, b, n)?)
        }
    };
    emit(&args.output, &text)?;
    Ok(true)
}

fn run_lift(args: LiftArgs) -> Outcome {
    let load = |p: &PathBuf| parse_map(&read(p)?).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())));
    let problem = LiftingProblem::new(load(&args.i)?, load(&args.p)?, load(&args.top)?, load(&args.bottom)?)?;
    if args.all {
        let lifts = problem.all_lifts();
        let docs: Vec<String> = lifts.iter().map(|l| serialize_map(l).trim_end().to_string()).collect();
        let text = if docs.is_empty() { "[]\n".to_string() } else { format!("[\n{}\n]\n", docs.join(",\n")) };
        emit(&args.output, &text)?;
        eprintln!("{} lift(s)", lifts.len());
        return Ok(!lifts.is_empty());
    }
    match problem.solve() {
        Some(l) => {
            emit(&args.output, &serialize_map(&l))?;
            Ok(true)
        }
        None => {
            eprintln!("no lift");
            Ok(false)
        }
    }
}

fn run_homology(args: HomologyArgs) -> Outcome {
    let x = read_presheaf(&args.input)?;
    emit(&args.output, &homology(&x, args.reduced)?.to_string())?;
    Ok(true)
}

fn run_check(args: CheckArgs) -> Outcome {
    let opts = SuiteOptions {
        max_dim: args.max_dim,
        k: args.k,
        fault: args.inject_fault.then_some(Fault::CorruptQObject),
    };
    let report = run_suite(&args.suite, &opts)?;
    let text = match args.format {
        Format::Text => format!("{report}\n"),
        Format::Machine => report.machine(),
    };
    emit(&args.output, &text)?;
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Box(cmd) => run_box(cmd),
        Command::Q(QCommand::Cells { n, max_dim, output }) => {
            emit(&output, &serialize_presheaf(&q_object(n, max_dim))).map(|_| true)
        }
        Command::Functor(args) => run_functor(args),
        Command::Lift(args) => run_lift(args),
        Command::Homology(args) => run_homology(args),
        Command::Check(args) => run_check(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
