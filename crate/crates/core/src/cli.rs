//! Subcommand front end shared by the `ssaug` binary and the tests.
//!
//! Every failure is reported as one line on stderr,
//! `error[<kind>]: <message>`, with exit status 1 (2 for usage errors).

use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::PipelineConfig;
use crate::ensemble::{
    compute_dataset_centroids, read_centroids, score_entropy_runs, write_centroids, CentroidSet, PreparedCentroid,
};
use crate::error::{Error, Result};
use crate::fid::{fit_gaussian, frechet_distance, select_model, FidCurve, GaussianStats};
use crate::fixtures::{gen_fixture, FixtureSpec};
use crate::selector::{merge_manifest, run_selection, SelectionConfig};
use crate::store::{
    read_dataset, read_train_list, write_dataset, write_train_list, EmbeddingDataset, Origin, SelectionManifest,
    MAGIC,
};

#[derive(Debug, Parser)]
#[command(
    name = "ssaug",
    version,
    about = "Selective synthetic augmentation: smoothed-FID model selection and MC-dropout sample filtering",
    long_about = "Selective synthetic augmentation: smoothed-FID model selection and MC-dropout sample filtering.\n\n\
        FID statistics use the unbiased sample covariance (divisor n-1) and, by convention, \
        the activations of MC run 1."
)]
pub struct Cli {
    /// Pipeline config file (TOML); flags override its values
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Seed for every stochastic step; deterministic commands ignore it [default: 0]
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Worker threads; outputs are identical for every value [default: all cores]
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OriginFilter {
    Real,
    Synthetic,
    All,
}

impl OriginFilter {
    fn accepts(self, origin: Origin) -> bool {
        match self {
            OriginFilter::Real => origin == Origin::Real,
            OriginFilter::Synthetic => origin == Origin::Synthetic,
            OriginFilter::All => true,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a Gaussian fixture dump from a TOML spec
    GenFixture(GenFixtureArgs),
    /// Fit mean/covariance of dump features and write them as JSON
    FitStats(FitStatsArgs),
    /// FID of every `*epoch<N>.ssae` dump in a directory against a reference
    FidCurve(FidCurveArgs),
    /// Print the epoch with the lowest smoothed FID
    SelectModel(SelectModelArgs),
    /// Compute per-class centroids from the real records of a dump
    Centroids(CentroidsArgs),
    /// Emit per-sample entropy and distance scores as JSON lines
    Score(ScoreArgs),
    /// Run the two-stage selection and write a manifest
    Select(SelectArgs),
    /// Append selected synthetic samples to a training list
    Merge(MergeArgs),
    /// Check that a dump parses and satisfies every invariant
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
pub struct GenFixtureArgs {
    /// Fixture spec (TOML)
    #[arg(long)]
    pub spec: PathBuf,
    /// Output dump
    #[arg(long)]
    pub out: PathBuf,
    /// Optional TSV of `sample_id, label, true_class`
    #[arg(long)]
    pub truth: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FitStatsArgs {
    #[arg(long)]
    pub dump: PathBuf,
    /// Records to include
    #[arg(long, value_enum, default_value_t = OriginFilter::All)]
    pub origin: OriginFilter,
    /// 1-based MC run whose activations are used [default: 1]
    #[arg(long)]
    pub feature_run: Option<u16>,
    /// Output JSON file
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct FidCurveArgs {
    /// Real-data dump (real records are used) or a JSON stats file from fit-stats
    #[arg(long)]
    pub reference: Option<PathBuf>,
    /// Directory of per-epoch dumps named `...epoch<N>.ssae`
    #[arg(long)]
    pub dir: Option<PathBuf>,
    /// EMA smoothing factor in (0, 1) [default: 0.3]
    #[arg(long)]
    pub alpha: Option<f64>,
    /// 1-based MC run whose activations are used [default: 1]
    #[arg(long)]
    pub feature_run: Option<u16>,
    /// Output table; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SelectModelArgs {
    /// Curve table (fid-curve output, or any TSV with `epoch` and `raw_fid` columns)
    #[arg(long)]
    pub curve: PathBuf,
    /// EMA smoothing factor in (0, 1) [default: 0.3]
    #[arg(long)]
    pub alpha: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CentroidsArgs {
    /// Dump whose real records define the centroids
    #[arg(long)]
    pub real: Option<PathBuf>,
    /// 1-based MC run used for centroids [default: 1]
    #[arg(long)]
    pub run_index: Option<u16>,
    /// Output centroid file (SSAC)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    #[arg(long)]
    pub dump: Option<PathBuf>,
    /// Centroid file; distances are omitted without it
    #[arg(long)]
    pub centroids: Option<PathBuf>,
    /// Records to score
    #[arg(long, value_enum, default_value_t = OriginFilter::Synthetic)]
    pub origin: OriginFilter,
    /// Leading MC runs used for scoring [default: 5]
    #[arg(long)]
    pub mc_runs: Option<u16>,
    /// Output JSON lines; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SelectArgs {
    /// Dump whose real records give N_i
    #[arg(long)]
    pub real: Option<PathBuf>,
    /// Dump holding the synthetic candidates
    #[arg(long)]
    pub synthetic: Option<PathBuf>,
    #[arg(long)]
    pub centroids: Option<PathBuf>,
    /// Augmentation ratio r; floor(r * N_i) samples are selected per class [default: 0.5]
    #[arg(long)]
    pub ratio: Option<f64>,
    /// Pool size per class as a multiple of the target [default: 4]
    #[arg(long)]
    pub oversample: Option<u32>,
    /// Leading MC runs used for scoring [default: 5]
    #[arg(long)]
    pub mc_runs: Option<u16>,
    /// Round scores to this many decimals before ranking [default: none]
    #[arg(long)]
    pub score_decimals: Option<u32>,
    /// Output manifest (JSON lines)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MergeArgs {
    /// Training list, one `<sample_id>\t<class_label>` per line
    #[arg(long)]
    pub train: Option<PathBuf>,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub dump: PathBuf,
}

/// Fitted statistics as written by `fit-stats`.
#[derive(Debug, Serialize, Deserialize)]
pub struct StatsFile {
    pub count: usize,
    pub feature_run: u16,
    pub mean: Vec<f64>,
    pub cov: Vec<Vec<f64>>,
}

impl StatsFile {
    fn from_stats(stats: &GaussianStats, count: usize, feature_run: u16) -> Self {
        let cov = stats.cov();
        StatsFile {
            count,
            feature_run,
            mean: stats.mean().iter().copied().collect(),
            cov: (0..cov.nrows()).map(|i| cov.row(i).iter().copied().collect()).collect(),
        }
    }

    fn to_stats(&self) -> Result<GaussianStats> {
        let d = self.mean.len();
        if self.cov.len() != d || self.cov.iter().any(|r| r.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: self.cov.len(),
            });
        }
        GaussianStats::new(
            DVector::from_vec(self.mean.clone()),
            DMatrix::from_fn(d, d, |i, j| self.cov[i][j]),
        )
    }
}

/// Parses `args`, runs the command and returns the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => {
                    let text = e.to_string();
                    let first = text.lines().next().unwrap_or("").trim_start_matches("error: ");
                    let _ = writeln!(stderr, "error[usage]: {first}");
                    2
                }
            };
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            let _ = writeln!(stderr, "error[{}]: {msg}", e.kind());
            1
        }
    }
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    let mut cfg = match &cli.config {
        Some(path) => PipelineConfig::load(path)?,
        None => PipelineConfig::default(),
    };
    if cli.seed.is_some() {
        cfg.seed = cli.seed;
    }
    if cli.jobs.is_some() {
        cfg.jobs = cli.jobs;
    }
    cfg.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cfg.jobs {
        builder = builder.num_threads(jobs);
    }
    let pool = builder.build().map_err(|e| Error::Config(e.to_string()))?;
    let mut buffered = Vec::new();
    pool.install(|| dispatch(&cli.command, &cfg, &mut buffered))?;
    stdout.write_all(&buffered)?;
    stdout.flush()?;
    Ok(())
}

fn need(flag: &Option<PathBuf>, fallback: &Option<PathBuf>, name: &str) -> Result<PathBuf> {
    flag.clone()
        .or_else(|| fallback.clone())
        .ok_or_else(|| Error::Config(format!("--{name} is required (or set it under [paths])")))
}

fn load_dump(path: &Path) -> Result<EmbeddingDataset> {
    let file = File::open(path).map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    let (header, records) = read_dataset(BufReader::new(file))?;
    Ok(EmbeddingDataset { header, records })
}

fn load_centroids(path: &Path) -> Result<CentroidSet> {
    let file = File::open(path).map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    read_centroids(BufReader::new(file))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let file = File::create(path).map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    Ok(BufWriter::new(file))
}

fn with_output<F>(path: &Option<PathBuf>, stdout: &mut dyn Write, f: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    match path {
        Some(p) => {
            let mut w = create(p)?;
            f(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => f(stdout),
    }
}

fn features(ds: &EmbeddingDataset, origin: OriginFilter, run: u16) -> Result<Vec<Vec<f64>>> {
    let k = ds.header.mc_runs as usize;
    if run == 0 || run as usize > k {
        return Err(Error::RunIndex {
            index: run as usize,
            runs: k,
        });
    }
    Ok(ds
        .records
        .iter()
        .filter(|r| origin.accepts(r.origin))
        .map(|r| r.flat_features(run as usize - 1))
        .collect())
}

fn dispatch(command: &Command, cfg: &PipelineConfig, stdout: &mut dyn Write) -> Result<()> {
    match command {
        Command::GenFixture(a) => gen_fixture_cmd(a, cfg),
        Command::FitStats(a) => {
            let ds = load_dump(&a.dump)?;
            let run = a.feature_run.unwrap_or(cfg.feature_run);
            let feats = features(&ds, a.origin, run)?;
            let stats = fit_gaussian(&feats)?;
            let mut w = create(&a.out)?;
            serde_json::to_writer(&mut w, &StatsFile::from_stats(&stats, feats.len(), run))
                .map_err(|e| Error::Parse(e.to_string()))?;
            w.write_all(b"\n")?;
            w.flush()?;
            Ok(())
        }
        Command::FidCurve(a) => fid_curve_cmd(a, cfg, stdout),
        Command::SelectModel(a) => {
            let alpha = a.alpha.unwrap_or(cfg.alpha);
            let text = fs::read_to_string(&a.curve)?;
            let points = parse_curve_table(&text)?;
            let curve = FidCurve::new(&points, alpha)?;
            writeln!(stdout, "{}", select_model(&curve))?;
            Ok(())
        }
        Command::Centroids(a) => {
            let real = need(&a.real, &cfg.paths.real_dump, "real")?;
            let out = need(&a.out, &cfg.paths.centroids, "out")?;
            let run_index = a.run_index.unwrap_or(cfg.centroid_run_index);
            let ds = load_dump(&real)?;
            let set = CentroidSet {
                layers: ds.header.layers.clone(),
                run_index,
                centroids: compute_dataset_centroids(&ds, run_index as usize)?,
            };
            let mut w = create(&out)?;
            write_centroids(&set, &mut w)?;
            Ok(())
        }
        Command::Score(a) => score_cmd(a, cfg, stdout),
        Command::Select(a) => {
            let real = load_dump(&need(&a.real, &cfg.paths.real_dump, "real")?)?;
            let synthetic_path = need(&a.synthetic, &cfg.paths.synthetic_dump, "synthetic")?;
            let synthetic = load_dump(&synthetic_path)?;
            let centroids = load_centroids(&need(&a.centroids, &cfg.paths.centroids, "centroids")?)?;
            let out = need(&a.out, &cfg.paths.manifest, "out")?;
            let config = SelectionConfig {
                ratio: a.ratio.unwrap_or(cfg.ratio),
                oversample_factor: a.oversample.unwrap_or(cfg.oversample_factor),
                mc_runs_used: Some(a.mc_runs.unwrap_or(cfg.mc_runs_used)),
                seed: cfg.seed.unwrap_or(0),
                score_decimals: a.score_decimals,
            };
            let manifest = run_selection(&real, &synthetic, &centroids, &config)?;
            let mut w = create(&out)?;
            manifest.write_jsonl(&mut w)?;
            Ok(())
        }
        Command::Merge(a) => {
            let train = need(&a.train, &cfg.paths.train_list, "train")?;
            let manifest = need(&a.manifest, &cfg.paths.manifest, "manifest")?;
            let list = read_train_list(BufReader::new(File::open(&train)?))?;
            let manifest = SelectionManifest::read_jsonl(BufReader::new(File::open(&manifest)?))?;
            let merged = merge_manifest(&list, &manifest)?;
            let mut w = create(&a.out)?;
            write_train_list(&merged, &mut w)?;
            Ok(())
        }
        Command::Validate(a) => {
            let ds = load_dump(&a.dump)?;
            let h = &ds.header;
            let real = ds.iter_origin(Origin::Real).count();
            writeln!(
                stdout,
                "ok: {} records ({} real, {} synthetic), {} classes, {} MC runs, {} layers",
                h.sample_count,
                real,
                ds.len() - real,
                h.num_classes,
                h.mc_runs,
                h.layers.len()
            )?;
            Ok(())
        }
    }
}

fn gen_fixture_cmd(a: &GenFixtureArgs, cfg: &PipelineConfig) -> Result<()> {
    let text = fs::read_to_string(&a.spec)?;
    let mut spec: FixtureSpec = toml::from_str(&text).map_err(|e| Error::Config(e.to_string()))?;
    if let Some(seed) = cfg.seed {
        spec.seed = seed;
    }
    let fx = gen_fixture(&spec)?;
    let mut w = create(&a.out)?;
    write_dataset(&fx.dataset.header, &fx.dataset.records, &mut w)?;
    w.flush()?;
    if let Some(path) = &a.truth {
        let mut w = create(path)?;
        for r in &fx.dataset.records {
            writeln!(w, "{}\t{}\t{}", r.sample_id, r.class_label, fx.true_class[&r.sample_id])?;
        }
        w.flush()?;
    }
    Ok(())
}

/// Epoch number from a file name ending in `epoch<N>.ssae`.
pub fn epoch_from_filename(name: &str) -> Option<u32> {
    let stem = name.strip_suffix(".ssae")?;
    let at = stem.rfind("epoch")?;
    let digits = &stem[at + "epoch".len()..];
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

fn reference_stats(path: &Path, run: u16) -> Result<GaussianStats> {
    let mut head = [0u8; 4];
    let n = File::open(path)?.read(&mut head)?;
    if n == 4 && head == MAGIC {
        let ds = load_dump(path)?;
        fit_gaussian(&features(&ds, OriginFilter::Real, run)?)
    } else {
        let file: StatsFile =
            serde_json::from_reader(BufReader::new(File::open(path)?)).map_err(|e| Error::Parse(e.to_string()))?;
        file.to_stats()
    }
}

fn fid_curve_cmd(a: &FidCurveArgs, cfg: &PipelineConfig, stdout: &mut dyn Write) -> Result<()> {
    let reference = need(&a.reference, &cfg.paths.reference, "reference")?;
    let dir = need(&a.dir, &cfg.paths.epoch_dir, "dir")?;
    let alpha = a.alpha.unwrap_or(cfg.alpha);
    let run = a.feature_run.unwrap_or(cfg.feature_run);
    let real = reference_stats(&reference, run)?;

    let mut epochs = Vec::new();
    for entry in fs::read_dir(&dir)? {
        let path = entry?.path();
        if let Some(epoch) = path.file_name().and_then(|n| n.to_str()).and_then(epoch_from_filename) {
            epochs.push((epoch, path));
        }
    }
    epochs.sort();
    if let Some(w) = epochs.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::Parse(format!("two dumps for epoch {}", w[0].0)));
    }
    if epochs.is_empty() {
        return Err(Error::EmptySeries);
    }
    let points = epochs
        .par_iter()
        .map(|(epoch, path)| {
            let ds = load_dump(path)?;
            let stats = fit_gaussian(&features(&ds, OriginFilter::Synthetic, run)?)?;
            Ok((*epoch, frechet_distance(&real, &stats)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let curve = FidCurve::new(&points, alpha)?;

    with_output(&a.out, stdout, |w| {
        writeln!(
            w,
            "# alpha={alpha} feature_run={run} dropout=off-by-convention covariance=unbiased(n-1)"
        )?;
        writeln!(w, "epoch\traw_fid\tsmoothed_fid")?;
        for ((e, raw), s) in curve.epochs().iter().zip(curve.raw()).zip(curve.smoothed()) {
            writeln!(w, "{e}\t{raw}\t{s}")?;
        }
        Ok(())
    })
}

/// Reads `(epoch, raw_fid)` pairs from a tab- or comma-separated table.
/// `#` lines are comments; a header row naming `epoch` is skipped.
pub fn parse_curve_table(text: &str) -> Result<Vec<(u32, f64)>> {
    let mut points = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("epoch") {
            continue;
        }
        let mut cols = line.split(|c: char| c == '\t' || c == ',').map(str::trim);
        let bad = || Error::Parse(format!("curve line {}: {line:?}", n + 1));
        let epoch = cols.next().and_then(|c| c.parse().ok()).ok_or_else(bad)?;
        let raw = cols.next().and_then(|c| c.parse().ok()).ok_or_else(bad)?;
        points.push((epoch, raw));
    }
    points.sort_by_key(|p| p.0);
    Ok(points)
}

#[derive(Serialize)]
struct ScoreLine<'a> {
    sample_id: &'a str,
    class_label: u16,
    entropy_score: f64,
    entropy_per_run: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    distance_score: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    distance_per_run: Option<Vec<f64>>,
}

fn score_cmd(a: &ScoreArgs, cfg: &PipelineConfig, stdout: &mut dyn Write) -> Result<()> {
    let ds = load_dump(&need(&a.dump, &cfg.paths.synthetic_dump, "dump")?)?;
    let runs = a.mc_runs.unwrap_or(cfg.mc_runs_used) as usize;
    let centroids = match a.centroids.clone().or_else(|| cfg.paths.centroids.clone()) {
        Some(path) => {
            let set = load_centroids(&path)?;
            if set.layers != ds.header.layers {
                return Err(Error::ShapeMismatch("centroid layers differ from the dump".into()));
            }
            Some(
                set.centroids
                    .iter()
                    .map(|c| PreparedCentroid::new(c, &set.layers))
                    .collect::<Result<Vec<_>>>()?,
            )
        }
        None => None,
    };
    let records: Vec<_> = ds.records.iter().filter(|r| a.origin.accepts(r.origin)).collect();
    let lines = records
        .par_iter()
        .map(|r| {
            let e = score_entropy_runs(r, runs)?;
            let d = match &centroids {
                Some(cs) => {
                    let c = cs
                        .iter()
                        .find(|c| c.class_label() == r.class_label)
                        .ok_or(Error::MissingCentroid(r.class_label))?;
                    Some(c.distance(r, runs)?)
                }
                None => None,
            };
            let line = ScoreLine {
                sample_id: &r.sample_id,
                class_label: r.class_label,
                entropy_score: e.mean_entropy,
                entropy_per_run: e.per_run,
                distance_score: d.as_ref().map(|d| d.mean_distance),
                distance_per_run: d.map(|d| d.per_run),
            };
            serde_json::to_string(&line).map_err(|e| Error::Parse(e.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    with_output(&a.out, stdout, |w| {
        for l in lines {
            writeln!(w, "{l}")?;
        }
        Ok(())
    })
}

/// Convenience for callers holding a path to a manifest.
pub fn read_manifest(path: &Path) -> Result<SelectionManifest> {
    let file = File::open(path)?;
    SelectionManifest::read_jsonl(BufReader::new(file))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epoch_names() {
        assert_eq!(epoch_from_filename("gen_epoch140.ssae"), Some(140));
        assert_eq!(epoch_from_filename("epoch5.ssae"), Some(5));
        assert_eq!(epoch_from_filename("epoch.ssae"), None);
        assert_eq!(epoch_from_filename("epoch12.ssac"), None);
        assert_eq!(epoch_from_filename("epoch12b.ssae"), None);
    }

    #[test]
    fn curve_table_parsing() {
        let text = "# header\nepoch\traw_fid\tsmoothed_fid\n10\t5.5\t5.5\n5,7\n";
        assert_eq!(parse_curve_table(text).unwrap(), vec![(5, 7.0), (10, 5.5)]);
        assert!(parse_curve_table("x\ty\n").is_err());
    }

    #[test]
    fn usage_errors_are_single_line() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(["ssaug", "validate", "--bogus"], &mut out, &mut err);
        assert_eq!(code, 2);
        let text = String::from_utf8(err).unwrap();
        assert_eq!(text.lines().count(), 1);
        assert!(text.starts_with("error[usage]:"));
    }

    #[test]
    fn missing_file_is_reported() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(["ssaug", "validate", "--dump", "/nonexistent/x.ssae"], &mut out, &mut err);
        assert_eq!(code, 1);
        assert!(String::from_utf8(err).unwrap().starts_with("error[io]:"));
    }
}
