use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kcone::branching::spherical_monoid;
use kcone::conecalc::{as_support, c_cone, SubgroupSpec};
use kcone::decision::{decide_all_irreps, decide_module, decide_q_series, Verdict};
use kcone::golden::{cases, run_suite, CatalogMode, GoldenOutcome};
use kcone::job::{parse_job, Format, Job, JobTarget};
use kcone::ratcone::{Cone, ConeJson, RatVec};
use kcone::Error;

const EXIT_USAGE: u8 = 3;
const EXIT_INVALID: u8 = 4;
const EXIT_COMPUTE: u8 = 5;

#[derive(Parser)]
#[command(name = "kcone", version, about = "Exact admissibility checks for restrictions to compact subgroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Enumeration height bound, overriding the job file.
    #[arg(long, global = true)]
    bound: Option<u32>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutFormat>,
    /// Extra catalog file with `[[entry]]` tables; may be repeated.
    #[arg(long = "catalog", global = true)]
    catalogs: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide admissibility for a job file.
    Check { file: PathBuf },
    /// Print one of the two cones of a job.
    Cone {
        file: PathBuf,
        #[arg(long, value_enum)]
        which: Which,
    },
    /// Print the enumerated spherical monoid of the job's subgroup.
    Support { file: PathBuf },
    /// Run the built-in worked examples.
    Examples {
        #[arg(long)]
        list: bool,
        /// Run against a deliberately broken catalog; every verdict case must fail.
        #[arg(long, hide = true)]
        corrupt_catalog: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Ck,
    As,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Table,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Internal(_) | Error::NegativeMultiplicity { .. } | Error::Rational(_) => EXIT_COMPUTE,
            _ => EXIT_INVALID,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: String) -> Failure {
    Failure { code: EXIT_USAGE, message }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load(cli: &Cli, path: &Path) -> Result<Job, Failure> {
    let text = read(path)?;
    let extra = cli.catalogs.iter().map(|p| read(p)).collect::<Result<Vec<_>, _>>()?;
    let mut job = parse_job(&text, &extra).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })?;
    if let Some(b) = cli.bound {
        if b == 0 {
            return Err(usage("--bound must be positive".into()));
        }
        job.options.bound = Some(b);
    }
    Ok(job)
}

fn format(cli: &Cli, job: Option<&Job>) -> OutFormat {
    cli.format.unwrap_or(match job.and_then(|j| j.options.format) {
        Some(Format::Table) => OutFormat::Table,
        _ => OutFormat::Json,
    })
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("output serializes")
}

fn subgroup(job: &Job) -> Result<&SubgroupSpec, Failure> {
    job.subgroup.as_ref().ok_or_else(|| Failure { code: EXIT_INVALID, message: "job has no [subgroup]".into() })
}

fn verdict(job: &Job) -> Result<Verdict, Failure> {
    let sub = subgroup(job)?;
    let opts = job.cone_options();
    Ok(match &job.target {
        Some(JobTarget::Module(x)) => decide_module(&job.rd, x, sub, &opts)?,
        Some(JobTarget::QSeries(q)) => decide_q_series(&job.rd, q, sub, &opts)?,
        Some(JobTarget::AllIrreps(m)) => decide_all_irreps(&job.rd, m, sub, &opts)?,
        None => {
            return Err(Failure { code: EXIT_INVALID, message: "job has neither [module] nor [parabolic]".into() })
        }
    })
}

fn cmd_check(cli: &Cli, path: &Path) -> Result<u8, Failure> {
    let job = load(cli, path)?;
    let v = verdict(&job)?;
    match format(cli, Some(&job)) {
        OutFormat::Json => println!("{}", json(&v)),
        OutFormat::Table => {
            println!("status      {}", json(&v.status()).trim_matches('"'));
            println!("criterion   {}", v.criterion);
            println!("methods     {}", v.method_tags.join(", "));
            if let Some(w) = &v.witness {
                println!("witness     {w}");
            }
            println!("digest      {}", v.inputs_digest);
        }
    }
    Ok(v.status().exit_code() as u8)
}

#[derive(Serialize)]
struct ConeOutput {
    which: &'static str,
    method: Vec<String>,
    saturated: bool,
    components: Vec<ConeJson>,
    standard: Vec<ConeJson>,
}

fn cmd_cone(cli: &Cli, path: &Path, which: Which) -> Result<u8, Failure> {
    let job = load(cli, path)?;
    let opts = job.cone_options();
    let (name, method, saturated, cones): (_, _, _, Vec<Cone>) = match which {
        Which::Ck => {
            let c = c_cone(&job.rd, subgroup(&job)?, &opts)?;
            ("ck", vec![c.method.to_string()], c.saturated, vec![c.cone])
        }
        Which::As => {
            let x = match &job.target {
                Some(JobTarget::Module(x)) => x.clone(),
                Some(JobTarget::QSeries(q)) | Some(JobTarget::AllIrreps(q)) => {
                    kcone::conecalc::KModuleSpec::ParabolicInduced(q.clone())
                }
                None => return Err(Failure { code: EXIT_INVALID, message: "job has no module".into() }),
            };
            let a = as_support(&job.rd, &x, &opts)?;
            ("as", a.method_tags, a.saturated, a.union.components().to_vec())
        }
    };
    let standard = cones.iter().map(|c| job.rd.cone_to_standard(c).map(|s| ConeJson::from(&s))).collect::<Result<_, _>>()?;
    let out = ConeOutput { which: name, method, saturated, components: cones.iter().map(ConeJson::from).collect(), standard };
    match format(cli, Some(&job)) {
        OutFormat::Json => println!("{}", json(&out)),
        OutFormat::Table => {
            println!("{} cone ({}), saturated: {}", out.which, out.method.join(", "), out.saturated);
            for (i, c) in out.standard.iter().enumerate() {
                println!("component {i} (standard coordinates)");
                for g in &c.generators {
                    println!("  ray    {g}");
                }
                for f in &c.facets {
                    println!("  facet  {f} >= 0");
                }
            }
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct SupportOutput {
    generators: Vec<RatVec>,
    saturated: bool,
    bound: u32,
    discovered: usize,
}

fn cmd_support(cli: &Cli, path: &Path) -> Result<u8, Failure> {
    let job = load(cli, path)?;
    let e = subgroup(&job)?.to_embedding(&job.rd)?;
    let m = spherical_monoid(&e, job.cone_options().bound)?;
    let out = SupportOutput { generators: m.generators, saturated: m.saturated, bound: m.bound, discovered: m.discovered };
    match format(cli, Some(&job)) {
        OutFormat::Json => println!("{}", json(&out)),
        OutFormat::Table => {
            println!("bound {}, {} spherical weights, saturated: {}", out.bound, out.discovered, out.saturated);
            for g in &out.generators {
                println!("  {g}");
            }
        }
    }
    Ok(0)
}

fn cmd_examples(cli: &Cli, list: bool, corrupt: bool) -> Result<u8, Failure> {
    if list {
        for c in cases() {
            println!("{:<30} {}", c.name, c.description);
        }
        return Ok(0);
    }
    let mode = if corrupt { CatalogMode::Corrupted } else { CatalogMode::Builtin };
    let outcomes: Vec<GoldenOutcome> = run_suite(mode);
    match format(cli, None) {
        OutFormat::Json => println!("{}", json(&outcomes)),
        OutFormat::Table => {
            for o in &outcomes {
                let mark = if o.passed { "pass" } else { "FAIL" };
                println!("{mark}  {:<30} {}", o.name, o.detail);
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            println!("{} passed, {failed} failed", outcomes.len() - failed);
        }
    }
    Ok(u8::from(outcomes.iter().any(|o| !o.passed)))
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    if let Some(n) = cli.jobs {
        if n == 0 {
            return Err(usage("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| usage(format!("cannot start worker pool: {e}")))?;
    }
    match &cli.command {
        Command::Check { file } => cmd_check(cli, file),
        Command::Cone { file, which } => cmd_cone(cli, file, *which),
        Command::Support { file } => cmd_support(cli, file),
        Command::Examples { list, corrupt_catalog } => cmd_examples(cli, *list, *corrupt_catalog),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
