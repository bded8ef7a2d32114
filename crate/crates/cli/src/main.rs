use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hilldraw::constructions::{
    random_rotation, recursive_construct, rotate_construction, ConstructionPlan, SeedArrangement,
};
use hilldraw::hill::{add_apex, count_crossings, delete_vertex, extend_full, verify, Drawing};
use hilldraw::io::{export_svg, parse_drawing, serialize_drawing, Projection, ReportDocument};
use hilldraw::montecarlo::{k4_census, ratio_experiment, DistributionSpec, ExperimentConfig};
use hilldraw::{Error, Tolerances};

const EXIT_FAIL: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "hilldraw",
    version,
    about = "Antipodal Hill drawings of complete graphs on the sphere"
)]
struct Cli {
    /// JSON file overriding numeric tolerances (missing fields keep defaults)
    #[arg(long, global = true, value_name = "FILE")]
    tolerances: Option<PathBuf>,

    /// Worker threads for counting; results do not depend on it
    #[arg(long, global = true, value_name = "T")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a strength-0 construction and write its K_n drawing
    Generate(GenerateArgs),
    /// Check a drawing against the closed forms for its kind
    Verify {
        file: PathBuf,
        /// Write a JSON report
        #[arg(long, value_name = "OUT")]
        report: Option<PathBuf>,
        /// Include crossing pairs in the report
        #[arg(long)]
        pairs: bool,
    },
    /// Print total and per-vertex crossing counts
    Count {
        file: PathBuf,
        /// Print the full crossing report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Delete a vertex or add an apex, then verify
    Mutate(MutateArgs),
    /// Crossing counts of geodesic drawings on random points
    Montecarlo(MonteCarloArgs),
    /// Render a drawing as SVG
    Export {
        file: PathBuf,
        #[arg(long, value_name = "OUT")]
        svg: PathBuf,
        #[arg(long, default_value = "ortho", value_parser = ["ortho"])]
        projection: String,
    },
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_name = "NAME", required_unless_present = "plan")]
    seed_arrangement: Option<SeedArrangement>,
    /// Comma-separated multiplicity per seed half-circle
    #[arg(long, value_delimiter = ',', required_unless_present = "plan")]
    multiplicities: Vec<usize>,
    /// Blowup levels; deeper levels blow up the first emitted half-circle again
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    depth: u32,
    /// Multiplicity used at levels below the first
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    inner: u32,
    /// Neighborhood radius in radians (default depends on the seed)
    #[arg(long)]
    eps: Option<f64>,
    /// Full construction plan as JSON; replaces the options above
    #[arg(long, value_name = "FILE", conflicts_with_all = ["seed_arrangement", "multiplicities", "depth", "inner", "eps"])]
    plan: Option<PathBuf>,
    /// Seed of the random rotation applied to the output
    #[arg(long, env = "HILLDRAW_SEED", default_value_t = 0)]
    rng_seed: u64,
    #[arg(short, long, value_name = "FILE")]
    output: PathBuf,
}

#[derive(Args)]
#[group(id = "operation", required = true, multiple = false)]
struct Operation {
    #[arg(long, value_name = "V")]
    delete_vertex: Option<usize>,
    #[arg(long)]
    add_apex: bool,
}

#[derive(Args)]
struct MutateArgs {
    file: PathBuf,
    #[command(flatten)]
    operation: Operation,
    /// Seed for the apex position
    #[arg(long, env = "HILLDRAW_SEED", default_value_t = 0)]
    rng_seed: u64,
    #[arg(short, long, value_name = "FILE")]
    output: PathBuf,
}

#[derive(Args)]
struct MonteCarloArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    trials: usize,
    /// uniform, cap:THETA or symmetric:BASE
    #[arg(long, default_value = "uniform")]
    dist: DistributionSpec,
    #[arg(long, env = "HILLDRAW_SEED", default_value_t = 0)]
    rng_seed: u64,
    /// Also tabulate crossings of random K_4 drawings
    #[arg(long)]
    census_k4: bool,
    #[arg(long, default_value_t = 100_000)]
    census_trials: usize,
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: EXIT_ERROR,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_ERROR,
        message: format!("{}: {e}", path.display()),
    })
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure {
        code: EXIT_ERROR,
        message: format!("{}: {e}", path.display()),
    })
}

fn load(path: &Path, tol: &Tolerances) -> Result<Drawing, Failure> {
    parse_drawing(&read(path)?, tol).map_err(|e| Failure {
        code: EXIT_ERROR,
        message: format!("{}: {e}", path.display()),
    })
}

fn tolerances(path: Option<&Path>) -> Result<Tolerances, Failure> {
    let Some(path) = path else {
        return Ok(Tolerances::default());
    };
    let tol: Tolerances = serde_json::from_str(&read(path)?).map_err(|e| Failure {
        code: EXIT_ERROR,
        message: format!("{}: {e}", path.display()),
    })?;
    tol.validate()?;
    Ok(tol)
}

/// Prints the verification table; returns the exit code it implies.
fn report(d: &Drawing, tol: &Tolerances, out: Option<&Path>, pairs: bool) -> Outcome {
    let r = verify(d, tol)?;
    println!(
        "{} drawing, {} vertices, {} crossings (half-circle strength {})",
        r.kind, r.vertex_count, r.total, r.strength
    );
    for c in &r.checks {
        // per-item checks are summarized unless they fail
        if c.subject.is_some() && c.pass {
            continue;
        }
        let subject = c.subject.map(|s| format!("[{s}]")).unwrap_or_default();
        let verdict = if c.pass { "ok" } else { "FAIL" };
        println!(
            "  {}{subject}: expected {}, observed {} {verdict}",
            c.formula, c.predicted, c.observed
        );
    }
    let per_item = r.checks.iter().filter(|c| c.subject.is_some()).count();
    if per_item > 0 {
        let ok = r
            .checks
            .iter()
            .filter(|c| c.subject.is_some() && c.pass)
            .count();
        println!("  per-item checks: {ok}/{per_item} ok");
    }
    println!("{}", if r.passed { "PASS" } else { "FAIL" });
    let passed = r.passed;
    if let Some(out) = out {
        let doc = ReportDocument::new(r, pairs);
        write(
            out,
            &serde_json::to_string_pretty(&doc).map_err(Error::from)?,
        )?;
    }
    Ok(if passed { 0 } else { EXIT_FAIL })
}

fn generate(args: GenerateArgs, tol: &Tolerances) -> Outcome {
    let plan = match &args.plan {
        Some(path) => {
            serde_json::from_str::<ConstructionPlan>(&read(path)?).map_err(|e| Failure {
                code: EXIT_ERROR,
                message: format!("{}: {e}", path.display()),
            })?
        }
        None => {
            let seed = args.seed_arrangement.expect("required by clap");
            let eps = args.eps.unwrap_or(seed.default_eps());
            ConstructionPlan::nested(
                seed,
                &args.multiplicities,
                args.depth as usize,
                args.inner as usize,
                eps,
            )
        }
    };
    let (config, asg) = recursive_construct(&plan, tol)?;
    let rot = random_rotation(&mut ChaCha8Rng::seed_from_u64(args.rng_seed));
    let (config, asg) = rotate_construction(&config, &asg, &rot, tol)?;
    let mut d = extend_full(&config, &asg, tol)?;
    let prov = d.provenance_mut();
    prov.seed_arrangement = Some(plan.seed.to_string());
    prov.plan = Some(serde_json::to_value(&plan).map_err(Error::from)?);
    prov.rng_seed = Some(args.rng_seed);
    prov.tolerances = Some(*tol);
    prov.history.push("generate".into());
    let code = report(&d, tol, None, false)?;
    if code != 0 {
        return Err(Failure {
            code: EXIT_ERROR,
            message: "construction did not verify".into(),
        });
    }
    write(&args.output, &serialize_drawing(&d)?)?;
    Ok(0)
}

fn mutate(args: MutateArgs, tol: &Tolerances) -> Outcome {
    let d = load(&args.file, tol)?;
    let mut out = match args.operation.delete_vertex {
        Some(v) => delete_vertex(&d, v, tol)?,
        None => {
            let (config, asg) = d.antipodal_parts(tol)?;
            let mut rng = ChaCha8Rng::seed_from_u64(args.rng_seed);
            let dist = DistributionSpec::Uniform;
            let mut attempt = 0;
            loop {
                match add_apex(&config, &asg, dist.sample(&mut rng), tol) {
                    Ok(a) => break a,
                    Err(_) if attempt < 1000 => attempt += 1,
                    Err(e) => return Err(e.into()),
                }
            }
        }
    };
    let mut prov = d.provenance().clone();
    match args.operation.delete_vertex {
        Some(v) => prov.history.push(format!("delete_vertex {v}")),
        None => prov
            .history
            .push(format!("add_apex rng_seed={}", args.rng_seed)),
    }
    *out.provenance_mut() = prov;
    let code = report(&out, tol, None, false)?;
    write(&args.output, &serialize_drawing(&out)?)?;
    Ok(code)
}

fn montecarlo(args: MonteCarloArgs, tol: &Tolerances) -> Outcome {
    let config = ExperimentConfig {
        n: args.n,
        trials: args.trials,
        seed: args.rng_seed,
        distribution: args.dist.clone(),
    };
    let result = ratio_experiment(&config, tol)?;
    eprintln!(
        "n = {}, {} trials: mean cr/H(n) = {:.4}, variance {:.3e}, range [{:.4}, {:.4}]",
        config.n,
        config.trials,
        result.mean_ratio,
        result.variance_ratio,
        result.min_ratio,
        result.max_ratio
    );
    let mut doc = serde_json::json!({ "experiment": result });
    if args.census_k4 {
        let census = k4_census(args.census_trials, &args.dist, args.rng_seed, tol)?;
        eprintln!(
            "K_4 census over {} drawings: counts {:?}, fraction with a crossing {:.4}",
            census.trials,
            census.histogram,
            census.fraction_at_least(1)
        );
        doc["k4_census"] = serde_json::to_value(&census).map_err(Error::from)?;
    }
    let text = serde_json::to_string_pretty(&doc).map_err(Error::from)?;
    match &args.output {
        Some(path) => write(path, &text)?,
        None => println!("{text}"),
    }
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build_global()
            .map_err(|e| Failure {
                code: EXIT_ERROR,
                message: e.to_string(),
            })?;
    }
    let tol = tolerances(cli.tolerances.as_deref())?;
    match cli.command {
        Command::Generate(args) => generate(args, &tol),
        Command::Verify {
            file,
            report: out,
            pairs,
        } => report(&load(&file, &tol)?, &tol, out.as_deref(), pairs),
        Command::Count { file, json } => {
            let d = load(&file, &tol)?;
            let r = count_crossings(&d, &tol)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&r).map_err(Error::from)?);
            } else {
                println!("total: {}", r.total);
                for (v, c) in r.per_vertex.iter().enumerate() {
                    println!("vertex {v}: {c}");
                }
            }
            Ok(0)
        }
        Command::Mutate(args) => mutate(args, &tol),
        Command::Montecarlo(args) => montecarlo(args, &tol),
        Command::Export { file, svg, .. } => {
            let d = load(&file, &tol)?;
            write(&svg, &export_svg(&d, Projection::Orthographic, &tol))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
