use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use normattain::acceptance;
use normattain::construct::{self, CodomainFrame};
use normattain::gallery::{self, ColumnModelOperator, CountableExtremeReport, NotrotundReport};
use normattain::lomonosov::{self, DiskMeasure, ScanConfig, TaylorFunctional};
use normattain::operators::{self, AttainmentReport, GeneralOperator};
use normattain::{config, linalg, mates, report, Error, ErrorKind, Space};

#[derive(Parser)]
#[command(name = "normattain", version, about = "Norm-attaining operators on finite-dimensional spaces")]
struct Cli {
    /// Global tolerance for sphere, tightness and containment tests.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Maximum number of vertices enumerated from a facet description.
    #[arg(long, global = true)]
    vertex_budget: Option<usize>,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Operator norm with an attainment witness.
    Opnorm(OperatorArgs),
    /// Whether the operator attains its norm.
    Attains(OperatorArgs),
    /// Mate decision and search.
    #[command(subcommand)]
    Mate(MateCommand),
    /// Constructive pipelines.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Column models of non-attaining operators.
    #[command(subcommand)]
    Gallery(GalleryCommand),
    /// Necessary conditions for attaining functionals on the Lomonosov space.
    #[command(subcommand)]
    Lomonosov(LomonosovCommand),
    /// Runs the acceptance suite.
    Selftest {
        #[arg(long, default_value_t = acceptance::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
struct OperatorArgs {
    /// Operator JSON: {"matrix": [[..]], "domain": <space>, "codomain": <space>}.
    #[arg(long, conflicts_with_all = ["space", "codomain", "matrix"])]
    operator: Option<PathBuf>,
    /// Domain space JSON.
    #[arg(long)]
    space: Option<PathBuf>,
    /// Codomain space JSON.
    #[arg(long)]
    codomain: Option<PathBuf>,
    /// Rows separated by ';', entries by ','.
    #[arg(long, allow_hyphen_values = true)]
    matrix: Option<String>,
    /// Seed for the approximate (non-polytopal) path.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum MateCommand {
    /// Decides whether g is a mate of f.
    Check {
        #[arg(long)]
        space: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Searches for a mate of f.
    Find {
        #[arg(long)]
        space: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
}

#[derive(Subcommand)]
enum ConstructCommand {
    /// Norm-attaining surjection onto a plane with kernel ker f1 ∩ ker f2.
    Theo2 {
        #[arg(long)]
        space: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        f1: String,
        #[arg(long, allow_hyphen_values = true)]
        f2: String,
        #[arg(long)]
        codomain: PathBuf,
        /// Writes the full construction trace.
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GalleryCommand {
    Run(GalleryArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Segment,
    DenseBall,
    CountableExtreme,
    Notrotund,
}

#[derive(Args)]
struct GalleryArgs {
    model: Model,
    /// Truncation size.
    #[arg(long, default_value_t = 4096)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Codomain for dense-ball (default: the Euclidean plane).
    #[arg(long)]
    codomain: Option<PathBuf>,
    /// Smooth unit point for dense-ball (default: the codomain frame's e1).
    #[arg(long, allow_hyphen_values = true)]
    u0: Option<String>,
    /// Sampled operators for countable-extreme.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Functional to test against the model's columns.
    #[arg(long, allow_hyphen_values = true)]
    ystar: Option<String>,
    /// Domain and functionals for notrotund.
    #[arg(long)]
    space: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    f1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    f2: Option<String>,
}

#[derive(Subcommand)]
enum LomonosovCommand {
    /// Randomised search over (b, μ) pairs.
    Scan {
        #[arg(long, default_value_t = 8)]
        degree: usize,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Checks the necessary conditions for one pair.
    Check {
        /// Complex coefficients b1, b2, ..., e.g. "1,0.5-0.25i,2i".
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Measure JSON: {"atoms": [[re, im], ..], "weights": [..]}.
        #[arg(long)]
        mu: PathBuf,
        #[arg(long, default_value_t = 128)]
        horizon: u32,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct AttainsOutput {
    attained: bool,
    report: AttainmentReport,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct FunctionalVerdict {
    ystar: Vec<f64>,
    attains: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
enum GalleryOutput {
    Segment { operator: ColumnModelOperator, truncated_norm: f64, verdicts: Vec<FunctionalVerdict> },
    DenseBall { operator: ColumnModelOperator, truncated_norm: f64, verdicts: Vec<FunctionalVerdict> },
    CountableExtreme { w: Space, operator: ColumnModelOperator, report: CountableExtremeReport },
    Notrotund { report: NotrotundReport },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct MeasureInput {
    atoms: Vec<Complex64>,
    weights: Vec<f64>,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            match e.kind() {
                ErrorKind::Domain => ExitCode::from(2),
                ErrorKind::Numerical => ExitCode::from(3),
            }
        }
    }
}

fn run(cli: Cli) -> Outcome<ExitCode> {
    if let Some(t) = cli.tol {
        config::set_tolerance(t)?;
    }
    if let Some(b) = cli.vertex_budget {
        config::set_vertex_budget(b)?;
    }
    let out = cli.json_out.as_deref();
    match cli.command {
        Command::Opnorm(a) => {
            let t = load_operator(&a)?;
            emit(&operators::opnorm_seeded(&t, a.seed)?, out)?;
        }
        Command::Attains(a) => {
            let t = load_operator(&a)?;
            let report = operators::opnorm_seeded(&t, a.seed)?;
            emit(&AttainsOutput { attained: report.attained && report.exact, report }, out)?;
        }
        Command::Mate(MateCommand::Check { space, f, g }) => {
            let x = load_space(&space)?;
            let (f, g) = (parse_csv(&f)?, parse_csv(&g)?);
            x.check_dim(&f)?;
            x.check_dim(&g)?;
            if linalg::rank(&[f.clone(), g.clone()], x.dim()) < 2 {
                return Err(Error::DependentFunctionals.into());
            }
            emit(&mates::is_mate(&x, &f, &g)?, out)?;
        }
        Command::Mate(MateCommand::Find { space, f }) => {
            let x = load_space(&space)?;
            emit(&mates::has_mate(&x, &parse_csv(&f)?)?, out)?;
        }
        Command::Construct(ConstructCommand::Theo2 { space, f1, f2, codomain, trace_out }) => {
            let x = load_space(&space)?;
            let e = load_space(&codomain)?;
            let tr = construct::theo2_construct(&x, &parse_csv(&f1)?, &parse_csv(&f2)?, &e)?;
            if let Some(p) = trace_out {
                write_json(&tr, &p)?;
            }
            emit(&tr.operator, out)?;
        }
        Command::Gallery(GalleryCommand::Run(a)) => emit(&run_gallery(&a)?, out)?,
        Command::Lomonosov(LomonosovCommand::Scan { degree, budget, seed }) => {
            let mut cfg = ScanConfig::new(degree, budget, seed);
            cfg.tolerance = config::tolerance();
            emit(&lomonosov::scan(&cfg)?, out)?;
        }
        Command::Lomonosov(LomonosovCommand::Check { b, mu, horizon }) => {
            let b = TaylorFunctional::new(parse_complex_csv(&b)?)?;
            let m: MeasureInput = read_json(&mu)?;
            let mu = DiskMeasure::new(m.atoms, m.weights)?;
            emit(&lomonosov::check_necessary_conditions(&b, &mu, horizon, config::tolerance())?, out)?;
        }
        Command::Selftest { seed } => {
            let r = acceptance::run_all(seed);
            for c in &r.criteria {
                eprintln!("{}", c.summary_line());
            }
            emit(&r, out)?;
            if !r.passed {
                return Ok(ExitCode::from(3));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_gallery(a: &GalleryArgs) -> Outcome<GalleryOutput> {
    let verdicts = |m: &ColumnModelOperator, defaults: Vec<Vec<f64>>| -> Outcome<Vec<FunctionalVerdict>> {
        let ys = match &a.ystar {
            Some(s) => vec![parse_csv(s)?],
            None => defaults,
        };
        ys.into_iter()
            .map(|y| Ok(FunctionalVerdict { attains: gallery::column_attains(m, &y)?, ystar: y }))
            .collect()
    };
    Ok(match a.model {
        Model::Segment => {
            let m = gallery::segment_model(a.n)?;
            let v = verdicts(&m, vec![vec![1.0, 0.0], vec![1.0, 2.0], vec![-1.0, 2.0]])?;
            GalleryOutput::Segment { truncated_norm: m.truncated_norm()?, operator: m, verdicts: v }
        }
        Model::DenseBall => {
            let e = match &a.codomain {
                Some(p) => load_space(p)?,
                None => Space::lp(2, 2.0)?,
            };
            let u0 = match &a.u0 {
                Some(s) => to_p2(&parse_csv(s)?)?,
                None => CodomainFrame::new(&e)?.e1,
            };
            let m = gallery::dense_ball_model(&e, u0, a.n, a.seed)?;
            let u0star = e.support_functionals_at(&u0)?.remove(0);
            let v = verdicts(&m, vec![u0star, vec![-u0[1], u0[0]]])?;
            GalleryOutput::DenseBall { truncated_norm: m.truncated_norm()?, operator: m, verdicts: v }
        }
        Model::CountableExtreme => {
            let c = gallery::countable_extreme_model(a.n, a.samples, a.seed)?;
            GalleryOutput::CountableExtreme { w: c.w, operator: c.u, report: c.report }
        }
        Model::Notrotund => {
            let (Some(space), Some(f1), Some(f2)) = (&a.space, &a.f1, &a.f2) else {
                return Err(Failure::Usage("notrotund needs --space, --f1 and --f2".into()));
            };
            let x = load_space(space)?;
            GalleryOutput::Notrotund { report: gallery::notrotund_report(&x, &parse_csv(f1)?, &parse_csv(f2)?)? }
        }
    })
}

fn load_operator(a: &OperatorArgs) -> Outcome<GeneralOperator> {
    if let Some(p) = &a.operator {
        return read_json(p);
    }
    let (Some(space), Some(codomain), Some(matrix)) = (&a.space, &a.codomain, &a.matrix) else {
        return Err(Failure::Usage("give --operator, or all of --space, --codomain and --matrix".into()));
    };
    let rows = matrix.split(';').map(parse_csv).collect::<Outcome<Vec<_>>>()?;
    Ok(GeneralOperator::new(rows, load_space(space)?, load_space(codomain)?)?)
}

fn load_space(p: &Path) -> Outcome<Space> {
    read_json(p)
}

fn read_json<T: for<'de> Deserialize<'de>>(p: &Path) -> Outcome<T> {
    let text = std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        // Descriptor validation runs inside deserialisation; surface it as a domain error.
        if e.is_data() {
            Failure::Lib(Error::DegenerateDescriptor(format!("{}: {e}", p.display())))
        } else {
            Failure::Usage(format!("{}: {e}", p.display()))
        }
    })
}

fn write_json<T: Serialize>(value: &T, p: &Path) -> Outcome<()> {
    let text = report::to_canonical_json(value)?;
    std::fs::write(p, text + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Outcome<()> {
    let text = report::to_canonical_json(value)?;
    // A closed pipe (e.g. `| head`) is not an error for the report itself.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    if let Some(p) = out {
        write_json(value, p)?;
    }
    Ok(())
}

fn parse_csv(s: &str) -> Outcome<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| Failure::Usage(format!("bad number {t:?}: {e}"))))
        .collect()
}

fn parse_complex_csv(s: &str) -> Outcome<Vec<Complex64>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<Complex64>().map_err(|e| Failure::Usage(format!("bad complex number {t:?}: {e}")))
        })
        .collect()
}

fn to_p2(v: &[f64]) -> Outcome<[f64; 2]> {
    match v {
        [a, b] => Ok([*a, *b]),
        _ => Err(Failure::Lib(Error::DimensionMismatch { expected: 2, got: v.len() })),
    }
}
