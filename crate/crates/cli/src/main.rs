use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ddk_core::bases::{
    build_fourier, build_piecewise_constant, build_splinet, read_knots_in, write_basis_csv,
    write_knots_in, KnotSet, OrthoBasis,
};
use ddk_core::bench::{plan, run_experiment, ExperimentConfig, ExperimentKind};
use ddk_core::ddk::{select_knots, split_dataset, DdkConfig, SplitSpec, StopCriterion};
use ddk_core::fcore::{read_dataset_file, write_dataset_csv, DomainMap, FunctionalDataset, Grid};
use ddk_core::fpca::fpca;
use ddk_core::simulate::{
    bridge_dataset, random_functional_dataset, sample_kl, sample_slepian_gauss, vehicle_dataset,
    BridgeSpec, KlModel, KlSpec, RandomFunctionalSpec, SlepianGaussModel, VehicleSimSpec,
};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ddk",
    version,
    about = "Functional data analysis with data-driven knots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Greedy data-driven knot selection with validation stopping.
    SelectKnots(SelectKnotsArgs),
    /// Functional principal components in an orthonormal basis.
    Fpca(FpcaArgs),
    /// Sample a synthetic functional dataset.
    Simulate(SimulateArgs),
    /// Run a Monte Carlo experiment.
    Bench(BenchArgs),
    /// Export sampled orthonormal basis functions.
    Basis(BasisArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Criterion {
    Absolute,
    Relative,
}

#[derive(Args)]
struct SelectKnotsArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    theta: f64,
    #[arg(long, value_enum, default_value = "absolute")]
    criterion: Criterion,
    /// Fraction of curves used for training.
    #[arg(long, default_value_t = 0.6)]
    split: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    max_knots: usize,
    /// Keep the knots up to the elbow of the validation curve instead of all selected knots.
    #[arg(long)]
    elbow: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisChoice {
    Splinet,
    Fourier,
    PiecewiseConstant,
}

#[derive(Args)]
struct BasisSource {
    #[arg(long, value_enum, default_value = "splinet")]
    basis: BasisChoice,
    /// Knot file, one knot per line.
    #[arg(long, conflicts_with = "equispaced")]
    knots: Option<PathBuf>,
    /// Use this many equispaced internal knots.
    #[arg(long)]
    equispaced: Option<usize>,
    #[arg(long, default_value_t = 3)]
    degree: usize,
    /// Number of Fourier functions.
    #[arg(long)]
    size: Option<usize>,
}

#[derive(Args)]
struct FpcaArgs {
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    source: BasisSource,
    #[arg(long, default_value_t = 4)]
    components: usize,
    #[arg(long)]
    center: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Kl,
    Bridge,
    Vehicle,
    Slepian,
    RandomFunctional,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    model: Model,
    /// JSON model parameters; defaults are used when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Number of uniform grid points.
    #[arg(long, default_value_t = 1000)]
    grid: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// eigen-mse, basis-compare or ddk-vs-equispaced.
    #[arg(long)]
    experiment: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    replicates: Option<usize>,
    /// Comma-separated sample sizes.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    #[arg(long)]
    grid_size: Option<usize>,
    /// Print the resolved plan and exit.
    #[arg(long)]
    dry_run: bool,
}

#[derive(Args)]
struct BasisArgs {
    #[command(subcommand)]
    action: BasisAction,
}

#[derive(Subcommand)]
enum BasisAction {
    /// Write `t,f_1,…,f_I` on an evenly spaced grid over [0, 1].
    Export {
        #[command(flatten)]
        source: BasisSource,
        #[arg(long, default_value_t = 1000)]
        resolution: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn output(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    })
}

fn read_json<T: serde::de::DeserializeOwned + Default>(path: Option<&Path>) -> anyhow::Result<T> {
    match path {
        None => Ok(T::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .with_context(|| format!("cannot read {}", p.display()))?;
            Ok(serde_json::from_str(&text).map_err(ddk_core::Error::from)?)
        }
    }
}

/// Builds the requested basis; knot files are read in the data's own coordinates.
fn build_basis(src: &BasisSource, domain: &DomainMap) -> anyhow::Result<OrthoBasis> {
    let knots = || -> anyhow::Result<KnotSet> {
        if let Some(count) = src.equispaced {
            return Ok(KnotSet::equispaced(count));
        }
        let Some(path) = &src.knots else {
            bail!(ddk_core::Error::Config(
                "the basis needs --knots or --equispaced".into()
            ));
        };
        let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
        Ok(read_knots_in(file, domain)?)
    };
    Ok(match src.basis {
        BasisChoice::Splinet => build_splinet(&knots()?, src.degree)?,
        BasisChoice::PiecewiseConstant => build_piecewise_constant(&knots()?),
        BasisChoice::Fourier => {
            let Some(size) = src.size else {
                bail!(ddk_core::Error::Config(
                    "the Fourier basis needs --size".into()
                ));
            };
            build_fourier(size)?
        }
    })
}

fn select_knots_cmd(args: &SelectKnotsArgs) -> anyhow::Result<()> {
    let data = read_dataset_file(&args.input)?;
    let (train, valid) = split_dataset(
        &data,
        &SplitSpec {
            train_fraction: args.split,
            seed: args.seed,
        },
    )?;
    let criterion = match args.criterion {
        Criterion::Absolute => StopCriterion::AbsoluteStep,
        Criterion::Relative => StopCriterion::RelativeStep,
    };
    let result = select_knots(
        &train,
        &valid,
        &DdkConfig::new(args.theta, criterion, args.max_knots),
    )?;
    let domain = data.domain();
    let kept = match (args.elbow, result.elbow_index) {
        (true, Some(s)) => s,
        _ => result.stopped_at,
    };
    let mut out = output(args.out.as_deref())?;
    write_knots_in(&result.knots_at(kept), &domain, &mut out)?;
    out.flush()?;

    if let Some(path) = &args.trace {
        let mut w = output(Some(path))?;
        writeln!(w, "iter,knot,train_amse,valid_amse")?;
        for s in 0..=result.stopped_at {
            let knot = if s == 0 {
                String::new()
            } else {
                domain.from_unit(result.selected[s - 1]).to_string()
            };
            writeln!(
                w,
                "{s},{knot},{},{}",
                result.train_amse[s], result.valid_amse[s]
            )?;
        }
        w.flush()?;
    }
    eprintln!(
        "selected {} knots ({:?}), kept {kept}{}",
        result.stopped_at,
        result.stop_reason,
        result
            .elbow_index
            .map(|e| format!(", elbow at {e}"))
            .unwrap_or_default()
    );
    Ok(())
}

fn fpca_cmd(args: &FpcaArgs) -> anyhow::Result<()> {
    let data = read_dataset_file(&args.input)?;
    let domain = data.domain();
    let basis = build_basis(&args.source, &domain)?;
    let result = fpca(&data, &basis, args.center)?;
    let k = args.components.min(basis.size());
    if k == 0 {
        bail!(ddk_core::Error::Config(
            "--components must be positive".into()
        ));
    }
    let funcs = result.eigenfunctions(data.grid(), k);
    // eigenfunctions are orthonormal on [0, 1]; rescale so they stay orthonormal on the domain
    let scale = 1.0 / (domain.from_unit(1.0) - domain.from_unit(0.0)).sqrt();
    let mut w = output(args.out.as_deref())?;
    let lambdas: Vec<String> = result
        .eigenvalues
        .iter()
        .take(k)
        .map(|v| (v / scale / scale).to_string())
        .collect();
    writeln!(w, "eigenvalue,{}", lambdas.join(","))?;
    for (j, s) in data.domain_points().iter().enumerate() {
        let row: Vec<String> = (0..k)
            .map(|c| (scale * funcs[[j, c]]).to_string())
            .collect();
        writeln!(w, "{s},{}", row.join(","))?;
    }
    w.flush()?;
    Ok(())
}

fn simulate_cmd(args: &SimulateArgs) -> anyhow::Result<()> {
    let grid = Grid::uniform(args.grid)?;
    let cfg = args.config.as_deref();
    let data: FunctionalDataset = match args.model {
        Model::Kl => sample_kl(
            &KlModel::from_spec(&read_json::<KlSpec>(cfg)?)?,
            args.n,
            &grid,
            args.seed,
        )?,
        Model::Bridge => bridge_dataset(&read_json::<BridgeSpec>(cfg)?, args.n, &grid, args.seed)?,
        Model::Vehicle => {
            vehicle_dataset(&read_json::<VehicleSimSpec>(cfg)?, args.n, &grid, args.seed)?
        }
        Model::Slepian => sample_slepian_gauss(
            &read_json::<SlepianGaussModel>(cfg)?,
            args.n,
            &grid,
            args.seed,
        )?,
        Model::RandomFunctional => random_functional_dataset(
            &read_json::<RandomFunctionalSpec>(cfg)?,
            args.n,
            &grid,
            args.seed,
        )?,
    };
    let mut w = output(args.out.as_deref())?;
    write_dataset_csv(&data, &mut w)?;
    w.flush()?;
    Ok(())
}

fn resolve_bench_config(args: &BenchArgs) -> anyhow::Result<ExperimentConfig> {
    let kind = args
        .experiment
        .as_deref()
        .map(ExperimentKind::parse)
        .transpose()?;
    let mut cfg = match (&args.config, kind) {
        (Some(path), _) => ExperimentConfig::from_file(path)?,
        (None, Some(kind)) => ExperimentConfig::new(kind),
        (None, None) => bail!(ddk_core::Error::Config(
            "bench needs --experiment or --config".into()
        )),
    };
    if let Some(kind) = kind {
        cfg.experiment = kind;
    }
    if let Some(seed) = args.seed {
        cfg.root_seed = seed;
    }
    if let Some(r) = args.replicates {
        cfg.mc_replicates = r;
    }
    if let Some(sizes) = &args.sizes {
        cfg.sample_sizes = sizes.clone();
    }
    if let Some(m) = args.grid_size {
        cfg.grid_size = m;
    }
    if let Some(out) = &args.out {
        cfg.output = Some(out.display().to_string());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn bench_cmd(args: &BenchArgs) -> anyhow::Result<()> {
    let cfg = resolve_bench_config(args)?;
    if args.dry_run {
        print!("{}", plan(&cfg));
        return Ok(());
    }
    let table = match args.workers {
        Some(0) => bail!(ddk_core::Error::Config("--workers must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()?
            .install(|| run_experiment(&cfg))?,
        None => run_experiment(&cfg)?,
    };
    let mut w = output(cfg.output.as_deref().map(Path::new))?;
    table.write_csv(&mut w)?;
    w.flush()?;
    Ok(())
}

fn basis_cmd(args: &BasisArgs) -> anyhow::Result<()> {
    let BasisAction::Export {
        source,
        resolution,
        out,
    } = &args.action;
    let basis = build_basis(source, &DomainMap::identity())?;
    let mut w = output(out.as_deref())?;
    write_basis_csv(&basis, *resolution, &mut w)?;
    w.flush()?;
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    match &cli.command {
        Command::SelectKnots(a) => select_knots_cmd(a),
        Command::Fpca(a) => fpca_cmd(a),
        Command::Simulate(a) => simulate_cmd(a),
        Command::Bench(a) => bench_cmd(a),
        Command::Basis(a) => basis_cmd(a),
    }
}

/// 2 for bad input or configuration, 3 for numerical failures.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err
        .chain()
        .find_map(|e| e.downcast_ref::<ddk_core::Error>())
    {
        Some(e) if !e.is_config() => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
