use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use eigencert_core::{
    analyze, arrangement_from_json, arrangement_to_json, build_g31, build_gm1, build_gmm,
    invariant_rank, invariant_rank_closed, lattice_to_json, oracle_table_from_json, report_to_json,
    verify_coincidence, witness_rules_from_json, AdeFamily, AdeType, AnalyzeConfig, Arrangement,
    Certificate, CoincidenceReport, EigenEntry, Generators, Lattice, MonomialPairConfig, Report,
    Verdict,
};

#[derive(Parser)]
#[command(
    name = "eigencert",
    version,
    about = "Certify vanishing of non-unipotent eigenspaces of arrangement Milnor fibers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named arrangement and write its canonical JSON.
    Build(BuildArgs),
    /// Compute the codimension-2/3 edge lattice and dump it as JSON.
    Edges(EdgesArgs),
    /// Certify or bound every requested eigenvalue multiplicity.
    Analyze(AnalyzeArgs),
    /// Check the intersection-matrix determinant identities for one type.
    Ade(AdeArgs),
    /// Compare brute-force and closed-form invariant ranks for a monomial pair.
    Ts(TsArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BuilderKind {
    Gmm,
    Gm1,
    G31,
    File,
}

#[derive(Args)]
struct InputArgs {
    /// Arrangement JSON file; requires --builder file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Arrangement source.
    #[arg(long, value_enum, default_value_t = BuilderKind::File)]
    builder: BuilderKind,
    /// Reflection parameter m for the gmm and gm1 builders.
    #[arg(long)]
    m: Option<u64>,
    /// Ambient dimension for the gmm and gm1 builders.
    #[arg(long)]
    dim: Option<usize>,
}

impl InputArgs {
    fn load(&self) -> Result<Arrangement> {
        let want_params = matches!(self.builder, BuilderKind::Gmm | BuilderKind::Gm1);
        if !want_params && (self.m.is_some() || self.dim.is_some()) {
            bail!("--m and --dim apply only to the gmm and gm1 builders");
        }
        if self.builder != BuilderKind::File && self.input.is_some() {
            bail!("--input applies only to --builder file");
        }
        match self.builder {
            BuilderKind::Gmm | BuilderKind::Gm1 => {
                let m = self.m.context("the builder needs --m")?;
                let dim = self.dim.context("the builder needs --dim")?;
                let arr = if self.builder == BuilderKind::Gmm {
                    build_gmm(m, dim)
                } else {
                    build_gm1(m, dim)
                };
                arr.map_err(Into::into)
            }
            BuilderKind::G31 => Ok(build_g31()),
            BuilderKind::File => {
                let path = self
                    .input
                    .as_ref()
                    .context("--builder file needs --input")?;
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                Ok(arrangement_from_json(&text)?)
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Write the arrangement here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EdgesArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Worker threads for the edge enumeration.
    #[arg(long)]
    jobs: Option<usize>,
    /// Write the dump here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Comma-separated eigenvalue orders; all divisors of the degree when
    /// absent.
    #[arg(long, value_delimiter = ',')]
    orders: Option<Vec<u64>>,
    /// Degree cutoff for the conditional small-degree oracle rule.
    #[arg(long = "threshold-D", value_name = "D")]
    threshold_d: Option<u64>,
    /// JSON file of user oracle entries (conditional rule R4).
    #[arg(long)]
    oracle_table: Option<PathBuf>,
    /// JSON file of strong-edge witness rules; replaces the built-in rules.
    #[arg(long)]
    witnesses: Option<PathBuf>,
    /// Enable the conditional oracle rules; their citations are echoed as
    /// assumptions.
    #[arg(long)]
    assume: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for the per-eigenvalue fan-out.
    #[arg(long)]
    jobs: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    A,
    D,
    E,
}

#[derive(Args)]
struct AdeArgs {
    /// Singularity family.
    #[arg(long = "type", value_enum)]
    family: FamilyArg,
    #[arg(long)]
    rank: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GeneratorsArg {
    None,
    X,
    Y,
    Xy,
}

impl GeneratorsArg {
    fn to_generators(self) -> Generators {
        match self {
            GeneratorsArg::None => Generators::NONE,
            GeneratorsArg::X => Generators::X,
            GeneratorsArg::Y => Generators::Y,
            GeneratorsArg::Xy => Generators::BOTH,
        }
    }

    fn label(self) -> &'static str {
        match self {
            GeneratorsArg::None => "none",
            GeneratorsArg::X => "x",
            GeneratorsArg::Y => "y",
            GeneratorsArg::Xy => "xy",
        }
    }
}

#[derive(Args)]
struct TsArgs {
    /// The four exponents a1 a2 b1 b2.
    #[arg(num_args = 4, value_names = ["A1", "A2", "B1", "B2"])]
    exponents: Vec<u64>,
    /// Component of the singular locus, as two comma-separated indices
    /// in {1,2}.
    #[arg(long, value_delimiter = ',', default_value = "1,1")]
    component: Vec<usize>,
    /// Monodromy generators to make invariant under.
    #[arg(long, value_enum, default_value_t = GeneratorsArg::Xy)]
    generators: GeneratorsArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct TsReport {
    exponents: [u64; 4],
    component: [usize; 2],
    generators: &'static str,
    closed_form: u64,
    brute_force: u64,
    agree: bool,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run() -> Result<ExitCode> {
    // Exit code 2 is reserved for reports containing Unknown verdicts, so
    // usage errors must not fall through to clap's default exit(2).
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            e.print().expect("writing clap diagnostics");
            return Ok(ExitCode::from(code));
        }
    };
    match cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Edges(args) => cmd_edges(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Ade(args) => cmd_ade(args),
        Command::Ts(args) => cmd_ts(args),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn thread_pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        if n == 0 {
            bail!("--jobs must be at least 1");
        }
        builder = builder.num_threads(n);
    }
    builder.build().context("building the thread pool")
}

fn cmd_build(args: BuildArgs) -> Result<ExitCode> {
    let arr = args.input.load()?;
    let text = arrangement_to_json(&arr);
    if args.out.is_some() {
        emit(&args.out, &text)?;
        println!(
            "degree={} ambient_dim={} order={}",
            arr.degree(),
            arr.ambient_dim(),
            arr.cyclotomic_order()
        );
    } else {
        print!("{text}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_edges(args: EdgesArgs) -> Result<ExitCode> {
    let arr = args.input.load()?;
    let pool = thread_pool(args.jobs)?;
    let lat = pool.install(|| Lattice::build(&arr))?;
    emit(&args.out, &lattice_to_json(&lat))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<ExitCode> {
    let arr = args.input.load()?;
    let mut cfg = AnalyzeConfig {
        orders: args.orders.clone(),
        ..AnalyzeConfig::default()
    };
    if let Some(d) = args.threshold_d {
        if d == 0 {
            bail!("--threshold-D must be at least 1");
        }
        cfg.oracle.threshold_d = d;
    }
    cfg.oracle.assume = args.assume;
    if let Some(path) = &args.oracle_table {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        cfg.oracle.user_table = oracle_table_from_json(&text)?;
    }
    if let Some(path) = &args.witnesses {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        cfg.witness_rules = witness_rules_from_json(&text)?;
    }

    let pool = thread_pool(args.jobs)?;
    let report = pool.install(|| -> Result<Report> {
        let lat = Lattice::build(&arr)?;
        Ok(analyze(&arr, &lat, &cfg)?)
    })?;

    let text = match args.format {
        Format::Json => report_to_json(&report),
        Format::Text => report_text(&report),
    };
    emit(&args.out, &text)?;
    Ok(if report.has_unknown() {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_ade(args: AdeArgs) -> Result<ExitCode> {
    let family = match args.family {
        FamilyArg::A => AdeFamily::A,
        FamilyArg::D => AdeFamily::D,
        FamilyArg::E => AdeFamily::E,
    };
    let t = AdeType::new(family, args.rank)?;
    let report = verify_coincidence(t)?;
    let text = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => ade_text(&report),
    };
    emit(&args.out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_ts(args: TsArgs) -> Result<ExitCode> {
    let [a1, a2, b1, b2]: [u64; 4] = args
        .exponents
        .clone()
        .try_into()
        .map_err(|_| anyhow::anyhow!("expected exactly four exponents"))?;
    let [i, j]: [usize; 2] = args
        .component
        .clone()
        .try_into()
        .map_err(|_| anyhow::anyhow!("expected exactly two component indices"))?;
    let cfg = MonomialPairConfig::new(a1, a2, b1, b2)?;
    let gens = args.generators.to_generators();
    let brute = invariant_rank(&cfg, (i, j), gens)?;
    let closed = invariant_rank_closed(&cfg, (i, j), gens)?;
    let report = TsReport {
        exponents: [a1, a2, b1, b2],
        component: [i, j],
        generators: args.generators.label(),
        closed_form: closed,
        brute_force: brute,
        agree: brute == closed,
    };
    let text = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => format!(
            "exponents ({a1},{a2},{b1},{b2}) component ({i},{j}) generators {}: \
             closed_form={closed} brute_force={brute} agree={}\n",
            args.generators.label(),
            brute == closed
        ),
    };
    emit(&args.out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::CertifiedZero => "certified zero",
        Verdict::UpperBound => "upper bound",
        Verdict::Unknown => "unknown",
    }
}

fn entry_detail(e: &EigenEntry) -> String {
    match (&e.certificate, e.rho) {
        (Some(Certificate::Divisibility { witnesses, .. }), _) => {
            format!("divisibility, {} witnesses", witnesses.len())
        }
        (
            Some(Certificate::LocalVanishing {
                conditional,
                witnesses,
                ..
            }),
            _,
        ) => format!(
            "local vanishing{}, {} witnesses",
            if *conditional { " (conditional)" } else { "" },
            witnesses.len()
        ),
        (Some(Certificate::OrderExcluded { order }), _) => {
            format!("order {order} does not divide the degree")
        }
        (None, Some(rho)) => format!("rho <= {rho}"),
        (None, None) => e
            .unknown_reason
            .clone()
            .unwrap_or_else(|| "no applicable criterion".to_string()),
    }
}

fn report_text(r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{}: degree {}, unipotent dimension {}",
        r.label, r.degree, r.unipotent_dim
    );
    for e in &r.eigenvalues {
        let _ = writeln!(
            s,
            "  {:>4}/{:<4} order {:>3}  {:<14} {}",
            e.k,
            e.d,
            e.order,
            verdict_text(e.verdict),
            entry_detail(e)
        );
        for a in &e.assumptions {
            let _ = writeln!(s, "      assumption: {a}");
        }
    }
    s
}

fn ade_text(r: &CoincidenceReport) -> String {
    format!(
        "{}: det_S={} det_recursive={} det_monodromy={} agree={}\n",
        r.label, r.det_s, r.det_recursive, r.det_monodromy, r.agree
    )
}
