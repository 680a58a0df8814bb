use std::fs::File;
use std::hint::black_box;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

use kneser::io::{read_edgelist, write_dot, write_edgelist, FormatError, Header};
use kneser::sweep::{sweep, write_jsonl, GenRange, SweepError, SweepSpec};
use kneser::verify::{verify_family, Options};
use kneser::Summary;
use kneser_core::formulas::{
    exact_diameter_max_over_s, exact_diameter_theorem, exact_distance, gen_diameter,
    gen_diameter_max_over_s, gen_distance, kneser_diameter, kneser_distance,
};
use kneser_core::graph::{
    bfs_from, build_family_graph, exact_distance_transform, graph_diameter_bfs,
};
use kneser_core::{
    Budget, Distance, Error, ExactParams, FamilySpec, GenKneserConvention, GenParams, Graph,
    GraphMode, KneserParams,
};

#[derive(Parser)]
#[command(
    name = "kneser",
    version,
    about = "Distance formulas and BFS checks for Kneser-type graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form distance between two vertices meeting in `s` elements.
    Dist {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        s: u32,
    },
    /// Diameter by formula, by maximizing the distance formula, or by BFS.
    Diam {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = DiamMode::Theorem)]
        mode: DiamMode,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Write a family graph as an edge list or DOT file.
    Gen {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Exact-distance transform of an edge list.
    Transform {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Check one family against BFS and write a JSON-lines report.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Check every tuple in a parameter range.
    Sweep {
        #[arg(long, default_value_t = 2)]
        k_min: u32,
        #[arg(long, default_value_t = 7)]
        k_max: u32,
        #[arg(long, default_value_t = 1)]
        r_min: u32,
        #[arg(long)]
        r_max: Option<u32>,
        #[arg(long)]
        d_min: Option<u32>,
        #[arg(long)]
        d_max: Option<u32>,
        /// Largest ground set `2k + r`.
        #[arg(long, default_value_t = 16)]
        n_max: u32,
        /// Extra exact-distance tuple `k,r,d`; repeatable.
        #[arg(long, value_parser = parse_triple)]
        extra: Vec<(u32, u32, u32)>,
        #[arg(long, default_value_t = 14)]
        johnson_n_max: u32,
        #[arg(long, default_value_t = 6)]
        johnson_k_max: u32,
        #[arg(long, default_value_t = 16)]
        gen_kneser_n_max: u32,
        #[arg(long, default_value_t = 7)]
        gen_kneser_k_max: u32,
        /// Skip generalized Johnson and Kneser graphs.
        #[arg(long)]
        no_generalized: bool,
        /// Worker threads; defaults to one per logical CPU.
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Oracle throughput and single-source BFS time.
    Bench {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 1_000_000)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        budget: BudgetArg,
    },
}

#[derive(Args, Clone, Copy)]
struct FamilyArgs {
    /// Defaults to `kneser`, or `exact` when `--d` is given.
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    i: Option<u32>,
    /// Generalized Kneser adjacency when building graphs.
    #[arg(long, value_enum, default_value_t = ConventionArg::AtMost)]
    convention: ConventionArg,
}

#[derive(Args, Clone, Copy)]
struct BudgetArg {
    /// Largest vertex count to materialize.
    #[arg(long, env = "KNESER_BUDGET", default_value_t = Budget::DEFAULT.0,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
}

#[derive(Args, Clone)]
struct ReportArgs {
    #[command(flatten)]
    budget: BudgetArg,
    /// Record wall-clock milliseconds (output is then not reproducible).
    #[arg(long)]
    timings: bool,
    /// Do not run generalized Kneser graphs under the strict `s < i` adjacency.
    #[arg(long)]
    no_conventions: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Kneser,
    Exact,
    Johnson,
    GenKneser,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    AtMost,
    Below,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DiamMode {
    Theorem,
    Maxs,
    Bfs,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Edgelist,
    Dot,
}

fn parse_triple(text: &str) -> Result<(u32, u32, u32), String> {
    let parts: Vec<&str> = text.split(',').collect();
    let [k, r, d] = parts.as_slice() else {
        return Err(format!("expected k,r,d, found `{text}`"));
    };
    let num = |s: &str| s.trim().parse::<u32>().map_err(|e| format!("`{s}`: {e}"));
    Ok((num(k)?, num(r)?, num(d)?))
}

/// Exit codes: 1 verification failure, 2 invalid parameters or input, 3 over budget.
#[derive(Debug)]
enum CliError {
    Failed,
    Params(String),
    Budget(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Params(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Params(e.to_string())
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Graph(inner) => inner.into(),
            other => CliError::Params(other.to_string()),
        }
    }
}

impl From<SweepError> for CliError {
    fn from(e: SweepError) -> Self {
        CliError::Params(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn need(value: Option<u32>, flag: &str) -> CliResult<u32> {
    value.ok_or_else(|| CliError::Params(format!("--{flag} is required")))
}

/// A family, or a Kneser graph paired with a `d` beyond its diameter.
enum Target {
    Family(FamilySpec),
    BeyondDiameter(KneserParams, u32),
}

impl FamilyArgs {
    fn family(&self) -> FamilyArg {
        self.family.unwrap_or(if self.d.is_some() {
            FamilyArg::Exact
        } else {
            FamilyArg::Kneser
        })
    }

    fn spec(&self) -> CliResult<FamilySpec> {
        let k = need(self.k, "k")?;
        match self.family() {
            FamilyArg::Kneser | FamilyArg::Exact => {
                if self.i.is_some() {
                    return Err(CliError::Params(
                        "--i needs --family johnson or gen-kneser".into(),
                    ));
                }
                let base = KneserParams::new(k, need(self.r, "r")?)?;
                match (self.family(), self.d) {
                    (FamilyArg::Kneser, None) => Ok(FamilySpec::Kneser(base)),
                    (FamilyArg::Kneser, Some(_)) => {
                        Err(CliError::Params("--d needs --family exact".into()))
                    }
                    (_, d) => Ok(FamilySpec::Exact(ExactParams::new(base, need(d, "d")?)?)),
                }
            }
            family => {
                if self.r.is_some() || self.d.is_some() {
                    return Err(CliError::Params(
                        "--r and --d apply to kneser and exact families".into(),
                    ));
                }
                let (n, i) = (need(self.n, "n")?, need(self.i, "i")?);
                Ok(match family {
                    FamilyArg::Johnson => FamilySpec::Johnson(GenParams::johnson(n, k, i)?),
                    _ => {
                        let convention = match self.convention {
                            ConventionArg::AtMost => GenKneserConvention::AtMost,
                            ConventionArg::Below => GenKneserConvention::Below,
                        };
                        FamilySpec::GenKneser(GenParams::kneser(n, k, i)?, convention)
                    }
                })
            }
        }
    }

    /// Like [`FamilyArgs::spec`], but `d > D` is allowed for graph export.
    fn target(&self) -> CliResult<Target> {
        if let (FamilyArg::Exact, Some(k), Some(r), Some(d)) =
            (self.family(), self.k, self.r, self.d)
        {
            let base = KneserParams::new(k, r)?;
            if d > base.diameter() {
                return Ok(Target::BeyondDiameter(base, d));
            }
        }
        self.spec().map(Target::Family)
    }
}

fn distance_oracle(spec: FamilySpec) -> impl Fn(u32) -> kneser_core::Result<Distance> {
    move |s| match &spec {
        FamilySpec::Kneser(p) => kneser_distance(p.k(), p.r(), s),
        FamilySpec::Exact(p) => exact_distance(p, s),
        FamilySpec::GenKneser(p, _) | FamilySpec::Johnson(p) => gen_distance(p, s),
    }
}

fn theorem_diameter(spec: &FamilySpec) -> kneser_core::Result<Distance> {
    match spec {
        FamilySpec::Kneser(p) => kneser_diameter(p.k(), p.r()),
        FamilySpec::Exact(p) if p.d() == 1 => kneser_diameter(p.k(), p.r()),
        FamilySpec::Exact(p) => exact_diameter_theorem(p),
        FamilySpec::GenKneser(p, _) | FamilySpec::Johnson(p) => gen_diameter(p),
    }
}

fn max_over_s_diameter(spec: &FamilySpec) -> kneser_core::Result<Distance> {
    match spec {
        FamilySpec::Kneser(p) => (0..p.k()).try_fold(Distance::Finite(0), |best, s| {
            Ok(best.max(kneser_distance(p.k(), p.r(), s)?))
        }),
        FamilySpec::Exact(p) => exact_diameter_max_over_s(p),
        FamilySpec::GenKneser(p, _) | FamilySpec::Johnson(p) => gen_diameter_max_over_s(p),
    }
}

fn bfs_diameter(spec: &FamilySpec, budget: Budget) -> kneser_core::Result<Distance> {
    let graph = build_family_graph(spec, budget, GraphMode::Implicit)?;
    graph_diameter_bfs(&graph, true, budget)
}

fn output(path: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_graph(
    out: Box<dyn Write>,
    format: Format,
    header: &Header,
    graph: &Graph,
) -> CliResult<()> {
    match format {
        Format::Edgelist => write_edgelist(out, header, graph)?,
        Format::Dot => {
            let name = header.to_string();
            write_dot(out, name.trim_start_matches("# "), graph)?
        }
    }
    Ok(())
}

fn options(report: &ReportArgs) -> Options {
    Options {
        budget: Budget(report.budget.budget),
        timings: report.timings,
        compare_conventions: !report.no_conventions,
    }
}

fn emit(
    report: &ReportArgs,
    reports: &[kneser::VerificationReport],
    summary: Summary,
) -> CliResult<()> {
    write_jsonl(output(&report.out)?, reports, summary)?;
    if summary.fails > 0 {
        Err(CliError::Failed)
    } else {
        Ok(())
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Dist { family, s } => {
            let spec = family.spec()?;
            println!("{}", distance_oracle(spec)(s)?);
        }
        Command::Diam {
            family,
            mode,
            budget,
        } => {
            let spec = family.spec()?;
            let budget = Budget(budget.budget);
            match mode {
                DiamMode::Theorem => println!("{}", theorem_diameter(&spec)?),
                DiamMode::Maxs => println!("{}", max_over_s_diameter(&spec)?),
                DiamMode::Bfs => println!("{}", bfs_diameter(&spec, budget)?),
                DiamMode::All => println!(
                    "theorem={} maxs={} bfs={}",
                    theorem_diameter(&spec)?,
                    max_over_s_diameter(&spec)?,
                    bfs_diameter(&spec, budget)?
                ),
            }
        }
        Command::Gen {
            family,
            format,
            out,
            budget,
        } => {
            let budget = Budget(budget.budget);
            let (header, graph) = match family.target()? {
                Target::Family(spec) => (
                    Header::for_family(&spec),
                    build_family_graph(&spec, budget, GraphMode::Implicit)?,
                ),
                Target::BeyondDiameter(base, d) => {
                    let kneser =
                        build_family_graph(&FamilySpec::Kneser(base), budget, GraphMode::Implicit)?;
                    let mut header = Header::new(base.vertex_count());
                    for (key, value) in [
                        ("family", "exact".to_string()),
                        ("n", base.n().to_string()),
                        ("k", base.k().to_string()),
                        ("r", base.r().to_string()),
                        ("d", d.to_string()),
                    ] {
                        header.push(key, value);
                    }
                    (header, exact_distance_transform(&kneser, d, budget)?)
                }
            };
            write_graph(output(&out)?, format, &header, &graph)?;
        }
        Command::Transform {
            input,
            d,
            format,
            out,
            budget,
        } => {
            let budget = Budget(budget.budget);
            let (mut header, graph) = read_edgelist(BufReader::new(File::open(&input)?))?;
            budget.check(header.vertices())?;
            let transformed = exact_distance_transform(&graph, d, budget)?;
            header.push("transform", d);
            write_graph(output(&out)?, format, &header, &transformed)?;
        }
        Command::Verify { family, report } => {
            let opts = options(&report);
            let result = verify_family(&family.spec()?, &opts);
            let summary = Summary::of([&result]);
            emit(&report, &[result], summary)?;
        }
        Command::Sweep {
            k_min,
            k_max,
            r_min,
            r_max,
            d_min,
            d_max,
            n_max,
            extra,
            johnson_n_max,
            johnson_k_max,
            gen_kneser_n_max,
            gen_kneser_k_max,
            no_generalized,
            jobs,
            report,
        } => {
            let extra_exact = extra
                .into_iter()
                .map(|(k, r, d)| Ok(ExactParams::new(KneserParams::new(k, r)?, d)?))
                .collect::<CliResult<Vec<_>>>()?;
            let d = match (d_min, d_max) {
                (None, None) => None,
                (lo, hi) => Some(lo.unwrap_or(1)..=hi.unwrap_or(u32::MAX)),
            };
            let spec = SweepSpec {
                k: k_min..=k_max,
                r: r_min..=r_max.unwrap_or(u32::MAX),
                d,
                n_max,
                extra_exact,
                johnson: (!no_generalized).then_some(GenRange {
                    n_max: johnson_n_max,
                    k: 1..=johnson_k_max,
                }),
                gen_kneser: (!no_generalized).then_some(GenRange {
                    n_max: gen_kneser_n_max,
                    k: 1..=gen_kneser_k_max,
                }),
                options: options(&report),
            };
            let result = sweep(&spec, jobs)?;
            emit(&report, &result.reports, result.summary)?;
        }
        Command::Bench {
            family,
            count,
            seed,
            budget,
        } => {
            let spec = family.spec()?;
            bench_oracle(spec, count, seed)?;
            let graph = build_family_graph(&spec, Budget(budget.budget), GraphMode::Implicit)?;
            let started = Instant::now();
            black_box(bfs_from(&graph, 0)?);
            println!("bfs {:.3}", started.elapsed().as_secs_f64() * 1e3);
        }
    }
    Ok(())
}

const BATCH: u64 = 4096;

fn bench_oracle(spec: FamilySpec, count: u64, seed: u64) -> CliResult<()> {
    if count == 0 {
        println!("oracle 0 calls in 0 batches");
        return Ok(());
    }
    let oracle = distance_oracle(spec);
    // Validate once so the timed loop measures only successful calls.
    oracle(0).or_else(|_| oracle(spec.k()))?;
    let lo = match spec {
        FamilySpec::GenKneser(p, _) | FamilySpec::Johnson(p) => p.min_intersection(),
        _ => 0,
    };
    let mut rng = SmallRng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(BATCH as usize);
    let mut elapsed = 0.0;
    let mut done = 0;
    while done < count {
        let len = BATCH.min(count - done);
        samples.clear();
        samples.extend((0..len).map(|_| rng.random_range(lo..=spec.k())));
        let started = Instant::now();
        for &s in &samples {
            black_box(oracle(black_box(s))?);
        }
        elapsed += started.elapsed().as_secs_f64();
        done += len;
    }
    println!(
        "oracle {:.0}",
        count as f64 / elapsed.max(f64::MIN_POSITIVE)
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed) => ExitCode::from(1),
        Err(CliError::Params(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
