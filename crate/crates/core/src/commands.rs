//! The command-line subcommands as library functions. Each writes its files
//! atomically under the output directory and returns what it wrote, the
//! warnings raised and a short human-readable summary.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::characteristic::CharacteristicFunction;
use crate::comparison::{compare, corpus_map, reference_estimate, spectrum_convergence, CompareOptions, MethodSpec, SpectrumOptions};
use crate::corpus::{CorpusConfig, CorpusDensity, CorpusId};
use crate::domain::AffineDomainMap;
use crate::error::{Error, Result};
use crate::estimator::{jade_density_grid, DensityEstimate, Grid, DEFAULT_GRID_POINTS};
use crate::goldens::{compute_goldens, GoldenManifest};
use crate::io::{
    characteristic_table, comparison_table, moment_file_json, parse_moment_file, write_atomic, write_density,
    TableFormat,
};
use crate::moments::{
    default_precision_digits, format_decimal, moments_to_chebyshev, parse_decimal, rescale_moments,
    restore_moments, MomentVector, Precision,
};
use crate::chebyshev::ChebCoeffMatrix;
use crate::sources::{moments_from_pdf, moments_from_samples, QuadratureConfig};
use crate::spectral::{estimate_spectral_bounds, hamiltonian_moments, SpectralProblem};
use crate::warning::Warning;

/// Flags shared by every subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct GlobalOptions {
    pub grid_points: usize,
    pub precision_digits: Option<u32>,
    pub seed: u64,
    pub out_dir: PathBuf,
    pub format: TableFormat,
}

impl Default for GlobalOptions {
    fn default() -> Self {
        GlobalOptions {
            grid_points: DEFAULT_GRID_POINTS,
            precision_digits: None,
            seed: 42,
            out_dir: PathBuf::from("."),
            format: TableFormat::Csv,
        }
    }
}

impl GlobalOptions {
    fn path(&self, name: &str) -> PathBuf {
        self.out_dir.join(name)
    }

    fn grid(&self) -> Result<Grid> {
        if self.grid_points == 0 {
            return Err(Error::InvalidParameter("grid needs at least one point".into()));
        }
        Ok(Grid::chebyshev(self.grid_points))
    }
}

/// Files written, warnings raised and a summary for the terminal.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CommandOutput {
    pub files: Vec<PathBuf>,
    pub warnings: Vec<Warning>,
    pub summary: String,
}

impl CommandOutput {
    fn write(&mut self, path: PathBuf, contents: &str) -> Result<()> {
        write_atomic(&path, contents.as_bytes())?;
        self.files.push(path);
        Ok(())
    }

    fn write_density(&mut self, path: PathBuf, estimate: &DensityEstimate, format: TableFormat) -> Result<()> {
        write_density(&path, estimate, format)?;
        self.files.push(path);
        Ok(())
    }

    fn warn(&mut self, warnings: impl IntoIterator<Item = Warning>) {
        for w in warnings {
            if !self.warnings.contains(&w) {
                self.warnings.push(w);
            }
        }
    }
}

/// Where `moments` takes its moments from.
#[derive(Debug, Clone, PartialEq)]
pub enum MomentSource {
    Corpus(CorpusId),
    /// One sample per line; `#` starts a comment.
    Samples { path: PathBuf, domain: (f64, f64) },
    Matrix { path: PathBuf, margin: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentsArgs {
    pub source: MomentSource,
    pub order: usize,
    pub output: Option<PathBuf>,
}

fn read_samples(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v: f64 = line.parse().map_err(|_| Error::Format {
            path: path.to_path_buf(),
            message: format!("line {}: `{line}` is not a number", i + 1),
        })?;
        out.push(v);
    }
    Ok(out)
}

/// Digits needed for order `n`, from the transform amplification.
fn conditioning_forecast(order: usize, precision: Precision) -> String {
    let amp = ChebCoeffMatrix::new(order).amplification_log10(order);
    let carried = match precision {
        Precision::Exact => "exact".to_string(),
        Precision::Digits(d) => format!("{d} digits"),
    };
    format!(
        "order {order}: the monomial transform amplifies moment errors by 10^{amp:.1}; \
         moments carry {carried}"
    )
}

/// Writes a moment file for a corpus density, a sample set or a matrix.
pub fn cmd_moments(args: &MomentsArgs, global: &GlobalOptions) -> Result<CommandOutput> {
    let n = args.order;
    let digits = global.precision_digits.unwrap_or(default_precision_digits(n));
    let moments = match &args.source {
        MomentSource::Corpus(id) => {
            let config = CorpusConfig {
                seed: global.seed,
                ..CorpusConfig::default()
            };
            let d = CorpusDensity::build(*id, &config)?;
            let m = moments_from_pdf(&d, (-1.0, 1.0), n, QuadratureConfig::with_digits(digits))?;
            let map = corpus_map(&d);
            if map.is_identity() {
                m
            } else {
                restore_moments(&m, &map)?
            }
        }
        MomentSource::Samples { path, domain } => moments_from_samples(&read_samples(path)?, n, *domain)?,
        MomentSource::Matrix { path, margin } => {
            let p = SpectralProblem::load(path)?;
            let map = estimate_spectral_bounds(&p, *margin);
            hamiltonian_moments(&p, n)?.with_domain((map.lower(), map.upper()))?
        }
    };
    let write_digits = match moments.precision() {
        Precision::Exact => digits,
        Precision::Digits(d) => d.max(17),
    };
    let path = args.output.clone().unwrap_or_else(|| global.path("moments.json"));
    let mut out = CommandOutput::default();
    out.write(path, &moment_file_json(&moments, write_digits)?)?;
    out.warn(moments.diagnostics());
    let (a, b) = moments.domain();
    out.summary = format!(
        "{} moments on [{a}, {b}]\n{}\n",
        n + 1,
        conditioning_forecast(n, moments.precision())
    );
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimateArgs {
    pub moments: PathBuf,
    /// Defaults to the highest order in the file.
    pub order: Option<usize>,
    pub clip: bool,
    /// Also write samples of the truncated characteristic function.
    pub characteristic: bool,
    pub t_max: f64,
    pub t_points: usize,
    pub output: Option<PathBuf>,
}

impl EstimateArgs {
    pub fn new(moments: PathBuf) -> Self {
        EstimateArgs {
            moments,
            order: None,
            clip: false,
            characteristic: false,
            t_max: 50.0,
            t_points: 1001,
            output: None,
        }
    }
}

/// Rounds every moment to `digits` significant digits.
fn round_moments(m: &MomentVector, digits: u32) -> Result<MomentVector> {
    let values = m
        .values()
        .iter()
        .map(|v| parse_decimal(&format_decimal(v, digits)).expect("formatted decimal parses"))
        .collect();
    let precision = m.precision().min(Precision::Digits(digits));
    MomentVector::new(values, m.domain(), precision)
}

/// JADE density from a moment file, in the file's physical units.
pub fn cmd_estimate(args: &EstimateArgs, global: &GlobalOptions) -> Result<CommandOutput> {
    let text = std::fs::read_to_string(&args.moments)?;
    let mut moments = parse_moment_file(&text, &args.moments)?;
    let n = args.order.unwrap_or(moments.order());
    if n > moments.order() {
        return Err(Error::InsufficientMoments {
            requested: n,
            available: moments.order(),
        });
    }
    moments = moments.truncated(n)?;
    if let Some(d) = global.precision_digits {
        moments = round_moments(&moments, d)?;
    }
    let (a, b) = moments.domain();
    let map = AffineDomainMap::new(a, b)?;
    let mapped = if map.is_identity() {
        moments.clone()
    } else {
        rescale_moments(&moments, &map)?
    };
    let c = moments_to_chebyshev(&mapped, n)?;
    let mut estimate = jade_density_grid(&c, &global.grid()?, &map);
    if args.clip {
        estimate.clip_and_renormalize();
    }

    let mut out = CommandOutput::default();
    out.warn(moments.diagnostics());
    out.warn(estimate.warnings.iter().cloned());
    estimate.warnings = out.warnings.clone();
    let ext = global.format.extension();
    let path = args
        .output
        .clone()
        .unwrap_or_else(|| global.path(&format!("density.{ext}")));
    out.write_density(path, &estimate, global.format)?;
    if args.characteristic {
        if !(args.t_max > 0.0) || args.t_points < 2 {
            return Err(Error::InvalidParameter(
                "characteristic sampling needs t_max > 0 and at least 2 points".into(),
            ));
        }
        let samples = CharacteristicFunction::new(c.clone()).sample(args.t_max, args.t_points);
        out.write(
            global.path(&format!("characteristic.{ext}")),
            &characteristic_table(&samples, global.format)?,
        )?;
    }
    let _ = write!(
        out.summary,
        "JADE with {n} moments on [{a}, {b}], {} grid points, mass {:.12}\n{}\n",
        estimate.grid.len(),
        estimate.mass(),
        conditioning_forecast(n, moments.precision())
    );
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareArgs {
    pub reference: CorpusId,
    pub methods: Vec<MethodSpec>,
    pub timings: bool,
}

/// Metrics of several methods against a corpus density: `report.json` plus
/// the long-format `comparison.csv`.
pub fn cmd_compare(args: &CompareArgs, global: &GlobalOptions) -> Result<CommandOutput> {
    let config = CorpusConfig {
        seed: global.seed,
        ..CorpusConfig::default()
    };
    let reference = CorpusDensity::build(args.reference, &config)?;
    let options = CompareOptions {
        grid_points: global.grid_points,
        precision_digits: global.precision_digits,
        seed: global.seed,
        timings: args.timings,
    };
    let methods = if args.methods.is_empty() {
        MethodSpec::defaults()
    } else {
        args.methods.clone()
    };
    let c = compare(&reference, &methods, &options)?;

    let mut out = CommandOutput::default();
    out.warn(c.report.warnings.iter().cloned());
    for m in &c.report.methods {
        out.warn(m.warnings.iter().cloned());
    }
    out.write(
        global.path("report.json"),
        &(serde_json::to_string_pretty(&c.report)? + "\n"),
    )?;
    let mut tables: Vec<(String, &DensityEstimate)> = vec![("reference".into(), &c.reference)];
    for e in &c.estimates {
        tables.push((e.method.label(), e));
    }
    out.write(
        global.path(&format!("comparison.{}", global.format.extension())),
        &comparison_table(&tables, global.format)?,
    )?;

    let _ = writeln!(out.summary, "reference {} on {} grid points", c.report.reference, c.report.grid.points);
    let _ = writeln!(out.summary, "{:<22} {:>12} {:>12} {:>12} {:>12}", "method", "L1", "L2", "weighted L2", "max abs");
    for m in &c.report.methods {
        let _ = writeln!(
            out.summary,
            "{:<22} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e}",
            m.label, m.metrics.l1, m.metrics.l2, m.metrics.weighted_l2, m.metrics.max_abs
        );
        if let Some(j) = &m.jump_locations {
            let _ = writeln!(out.summary, "{:<22} steepest slopes at {j:?}", "");
        }
    }
    for s in &c.report.skipped {
        let _ = writeln!(out.summary, "skipped {}: {}", s.method, s.reason);
    }
    Ok(out)
}

/// Where `spectrum` takes its problem from.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemSource {
    File(PathBuf),
    /// Seeded random problem of the given dimension.
    Random(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumArgs {
    pub source: ProblemSource,
    pub options: SpectrumOptions,
}

/// JADE reconstructions at several orders against the broadened exact
/// spectrum: `jade-<N>` and `exact` tables plus `spectrum.json`.
pub fn cmd_spectrum(args: &SpectrumArgs, global: &GlobalOptions) -> Result<CommandOutput> {
    let p = match &args.source {
        ProblemSource::File(path) => SpectralProblem::load(path)?,
        ProblemSource::Random(dim) => SpectralProblem::random(*dim, global.seed)?,
    };
    let options = SpectrumOptions {
        grid_points: global.grid_points,
        ..args.options.clone()
    };
    let run = spectrum_convergence(&p, &options)?;

    let mut out = CommandOutput::default();
    out.warn(run.report.warnings.iter().cloned());
    let ext = global.format.extension();
    out.write_density(global.path(&format!("exact.{ext}")), &run.reference.estimate, global.format)?;
    for est in &run.estimates {
        out.write_density(global.path(&format!("{}.{ext}", est.method.label())), est, global.format)?;
    }
    out.write(
        global.path("spectrum.json"),
        &(serde_json::to_string_pretty(&run.report)? + "\n"),
    )?;

    let r = &run.report;
    let _ = writeln!(
        out.summary,
        "dimension {}, map [{}, {}], sigma {:.6e} (mapped {:.6e}), leakage {:.3e}",
        r.dimension, r.map[0], r.map[1], r.sigma, r.sigma_mapped, r.leakage
    );
    let _ = writeln!(out.summary, "{:>6} {:>12} {:>12} {:>12}", "N", "L1", "L2", "max abs");
    for row in &r.convergence {
        let _ = writeln!(
            out.summary,
            "{:>6} {:>12.4e} {:>12.4e} {:>12.4e}",
            row.order, row.metrics.l1, row.metrics.l2, row.metrics.max_abs
        );
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusArgs {
    pub id: CorpusId,
    pub modes: Option<usize>,
    pub sigma: Option<f64>,
    pub spectral_dim: usize,
}

impl CorpusArgs {
    pub fn new(id: CorpusId) -> Self {
        CorpusArgs {
            id,
            modes: None,
            sigma: None,
            spectral_dim: CorpusConfig::default().spectral_dim,
        }
    }
}

/// Samples a corpus density on the grid (`<id>.csv`) and records its
/// generating parameters (`<id>.params.json`).
pub fn cmd_corpus(args: &CorpusArgs, global: &GlobalOptions) -> Result<CommandOutput> {
    let defaults = CorpusConfig::default();
    let config = CorpusConfig {
        seed: global.seed,
        modes: args.modes,
        multimodal_sigma: args.sigma.unwrap_or(defaults.multimodal_sigma),
        spectral_dim: args.spectral_dim,
        ..defaults
    };
    let d = CorpusDensity::build(args.id, &config)?;
    let map = corpus_map(&d);
    let estimate = reference_estimate(&d, &global.grid()?, &map);

    let mut out = CommandOutput::default();
    let ext = global.format.extension();
    out.write_density(global.path(&format!("{}.{ext}", args.id)), &estimate, global.format)?;
    out.write(
        global.path(&format!("{}.params.json", args.id)),
        &(serde_json::to_string_pretty(&d.parameters())? + "\n"),
    )?;
    let _ = writeln!(
        out.summary,
        "{} on [{}, {}], {} grid points, mass {:.12}",
        args.id,
        map.lower(),
        map.upper(),
        estimate.grid.len(),
        estimate.mass()
    );
    Ok(out)
}

/// Re-measures the frozen thresholds and writes them to `path`.
pub fn cmd_golden_update(path: &Path) -> Result<CommandOutput> {
    let manifest: GoldenManifest = compute_goldens()?;
    manifest.save(path)?;
    let mut out = CommandOutput {
        files: vec![path.to_path_buf()],
        ..CommandOutput::default()
    };
    for (name, g) in &manifest.goldens {
        let _ = writeln!(out.summary, "{name:<44} {:.6e}", g.value);
    }
    Ok(out)
}
