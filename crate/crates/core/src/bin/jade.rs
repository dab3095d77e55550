use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use jade::commands::{
    cmd_compare, cmd_corpus, cmd_estimate, cmd_golden_update, cmd_moments, cmd_spectrum, CommandOutput, CompareArgs,
    CorpusArgs, EstimateArgs, GlobalOptions, MomentSource, MomentsArgs, ProblemSource, SpectrumArgs,
};
use jade::comparison::{MethodSpec, SpectrumOptions};
use jade::corpus::CorpusId;
use jade::goldens::default_manifest_path;
use jade::io::TableFormat;

#[derive(Parser)]
#[command(name = "jade", version, about = "Density reconstruction from moments (Jacobi-Anger density estimation)")]
struct Cli {
    /// Points of the Chebyshev evaluation grid.
    #[arg(long, global = true, default_value_t = 2001)]
    grid_points: usize,
    /// Digits carried by quadrature moments and the transform (default 4N).
    #[arg(long, global = true)]
    precision_digits: Option<u32>,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Re-measure the frozen regression thresholds and exit.
    #[arg(long)]
    golden_update: bool,
    /// Manifest written by --golden-update.
    #[arg(long, requires = "golden_update")]
    golden_path: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Write a moment file from a corpus density, samples or a matrix.
    Moments(MomentsCli),
    /// Reconstruct a density from a moment file.
    Estimate(EstimateCli),
    /// Compare estimators against a corpus density.
    Compare(CompareCli),
    /// Energy distribution of a state: JADE at several orders vs exact.
    Spectrum(SpectrumCli),
    /// Sample a corpus density on the grid.
    Corpus(CorpusCli),
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "source")]
struct SourceCli {
    #[arg(long)]
    corpus: Option<CorpusId>,
    /// Text file with one sample per line.
    #[arg(long)]
    samples: Option<PathBuf>,
    /// Spectral problem JSON file.
    #[arg(long)]
    matrix: Option<PathBuf>,
}

#[derive(Args)]
struct MomentsCli {
    #[command(flatten)]
    source: SourceCli,
    #[arg(long)]
    order: usize,
    /// Interval of the samples, as `a,b`.
    #[arg(long, value_delimiter = ',', num_args = 2, default_values_t = [-1.0, 1.0], allow_hyphen_values = true)]
    domain: Vec<f64>,
    /// Widening of the Gershgorin interval, as a fraction of its half-width.
    #[arg(long, default_value_t = 0.05)]
    margin: f64,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EstimateCli {
    /// Moment file.
    moments: PathBuf,
    /// Moments used (default: all in the file).
    #[arg(long)]
    order: Option<usize>,
    /// Clip negative values to zero and renormalize.
    #[arg(long)]
    clip: bool,
    /// Also write the truncated characteristic function.
    #[arg(long)]
    characteristic: bool,
    #[arg(long, default_value_t = 50.0)]
    t_max: f64,
    #[arg(long, default_value_t = 1001)]
    t_points: usize,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CompareCli {
    #[arg(long)]
    reference: CorpusId,
    /// Methods such as `jade:20`, `gram-charlier:10`, `kde:10000`, `exact`.
    #[arg(long, value_delimiter = ',')]
    methods: Vec<MethodSpec>,
    /// Record wall time per method (makes the report non-reproducible).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "problem")]
struct ProblemCli {
    /// Spectral problem JSON file.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Seeded random problem of this dimension.
    #[arg(long)]
    random: Option<usize>,
}

#[derive(Args)]
struct SpectrumCli {
    #[command(flatten)]
    problem: ProblemCli,
    /// Kernel width in physical units (default: a fraction of the interval).
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long, default_value_t = 0.02)]
    sigma_fraction: f64,
    #[arg(long, value_delimiter = ',', default_values_t = [20, 50, 100])]
    orders: Vec<usize>,
    #[arg(long, default_value_t = 0.05)]
    margin: f64,
    /// Reconstruct the bare spectral measure instead of the broadened one.
    #[arg(long)]
    unbroadened: bool,
}

#[derive(Args)]
struct CorpusCli {
    id: CorpusId,
    /// Mode count of multimodal-gauss (default: drawn from 4..=8).
    #[arg(long)]
    modes: Option<usize>,
    /// Kernel width of multimodal-gauss.
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long, default_value_t = 64)]
    spectral_dim: usize,
}

fn run(cli: Cli) -> jade::Result<CommandOutput> {
    if cli.golden_update {
        return cmd_golden_update(&cli.golden_path.unwrap_or_else(default_manifest_path));
    }
    let global = GlobalOptions {
        grid_points: cli.grid_points,
        precision_digits: cli.precision_digits,
        seed: cli.seed,
        out_dir: cli.out_dir,
        format: match cli.format {
            Format::Csv => TableFormat::Csv,
            Format::Json => TableFormat::Json,
        },
    };
    let Some(command) = cli.command else {
        return Err(jade::Error::InvalidParameter("a subcommand is required (see --help)".into()));
    };
    match command {
        Command::Moments(a) => {
            let source = match (a.source.corpus, a.source.samples, a.source.matrix) {
                (Some(id), _, _) => MomentSource::Corpus(id),
                (_, Some(path), _) => MomentSource::Samples {
                    path,
                    domain: (a.domain[0], a.domain[1]),
                },
                (_, _, Some(path)) => MomentSource::Matrix { path, margin: a.margin },
                _ => unreachable!("clap enforces one source"),
            };
            cmd_moments(
                &MomentsArgs {
                    source,
                    order: a.order,
                    output: a.output,
                },
                &global,
            )
        }
        Command::Estimate(a) => cmd_estimate(
            &EstimateArgs {
                moments: a.moments,
                order: a.order,
                clip: a.clip,
                characteristic: a.characteristic,
                t_max: a.t_max,
                t_points: a.t_points,
                output: a.output,
            },
            &global,
        ),
        Command::Compare(a) => cmd_compare(
            &CompareArgs {
                reference: a.reference,
                methods: a.methods,
                timings: a.timings,
            },
            &global,
        ),
        Command::Spectrum(a) => {
            let source = match (a.problem.matrix, a.problem.random) {
                (Some(path), _) => ProblemSource::File(path),
                (_, Some(dim)) => ProblemSource::Random(dim),
                _ => unreachable!("clap enforces one problem"),
            };
            cmd_spectrum(
                &SpectrumArgs {
                    source,
                    options: SpectrumOptions {
                        sigma: a.sigma,
                        sigma_fraction: a.sigma_fraction,
                        margin: a.margin,
                        orders: a.orders,
                        broadened: !a.unbroadened,
                        ..SpectrumOptions::default()
                    },
                },
                &global,
            )
        }
        Command::Corpus(a) => cmd_corpus(
            &CorpusArgs {
                id: a.id,
                modes: a.modes,
                sigma: a.sigma,
                spectral_dim: a.spectral_dim,
            },
            &global,
        ),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{}", out.summary);
            for f in &out.files {
                println!("wrote {}", f.display());
            }
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
