//! The `dra` command-line tool.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::annulus::AnnulusModel;
use crate::curves::{self, Classifier, CurveTable, RegionLabel, ScaleCurves, SphereIndex};
use crate::degree_rips::{hilbert_grid, region_agreement, DistanceIndex, HilbertGrid};
use crate::error::Error;
use crate::io::{self, IoError, TOOL};
use crate::sampler::{self, PointCloud, PRNG_ID};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "dra", version, about = "Degree-Rips region diagrams of the weighted annulus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate the boundary curves φ_ℓ over a range of scales.
    Curves(CurvesArgs),
    /// Homotopy type of the degree-Rips complex at one (s, k).
    Classify(ClassifyArgs),
    /// Evaluate the ball measure ν_s(c).
    Nu(NuArgs),
    /// Peak location of ν_s.
    Omega(OmegaArgs),
    /// Draw i.i.d. points from the weighted annulus.
    Sample(SampleArgs),
    /// H₀/H₁ Hilbert functions of a point cloud over an (s, k) grid.
    Hilbert(HilbertArgs),
    /// Compare sampled H₁ with the analytic circle region.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Inner radius.
    #[arg(long = "R", default_value_t = 0.4)]
    r: f64,
    /// Outer radius.
    #[arg(long = "Q", default_value_t = 0.5)]
    q: f64,
    /// Mass of the inner disc.
    #[arg(long = "w", default_value_t = 0.05)]
    w: f64,
}

#[derive(Debug, Args)]
struct SAxis {
    #[arg(long = "s-min", default_value_t = 0.01)]
    s_min: f64,
    #[arg(long = "s-max", default_value_t = 0.2)]
    s_max: f64,
    #[arg(long = "s-steps", default_value_t = 40)]
    s_steps: usize,
}

#[derive(Debug, Args)]
struct KAxis {
    #[arg(long = "k-min", default_value_t = 0.0)]
    k_min: f64,
    #[arg(long = "k-max", default_value_t = 0.05)]
    k_max: f64,
    #[arg(long = "k-steps", default_value_t = 40)]
    k_steps: usize,
}

#[derive(Debug, Args)]
struct CurvesArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long = "s-min", default_value_t = 0.001)]
    s_min: f64,
    #[arg(long = "s-max", default_value_t = 1.0)]
    s_max: f64,
    #[arg(long = "s-steps", default_value_t = 500)]
    s_steps: usize,
    /// Comma-separated sphere indices, `inf` for φ_∞.
    #[arg(long, default_value = "0,1,2,inf")]
    ells: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    s: f64,
    #[arg(long)]
    k: f64,
    #[arg(long = "ell-max", default_value_t = curves::DEFAULT_ELL_MAX)]
    ell_max: u32,
    #[arg(long, default_value_t = curves::DEFAULT_TOL)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct NuArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    s: f64,
    #[arg(long)]
    c: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OmegaArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    s: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 500)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Points CSV; a `<out>.json` sidecar is written next to it.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CloudArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Points CSV to read; when absent, `--n` points are sampled with `--seed`.
    #[arg(long)]
    points: Option<PathBuf>,
    #[arg(long, default_value_t = 500)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    s_axis: SAxis,
    #[command(flatten)]
    k_axis: KAxis,
}

#[derive(Debug, Args)]
struct HilbertArgs {
    #[command(flatten)]
    cloud: CloudArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[command(flatten)]
    cloud: CloudArgs,
    /// Clearance from every curve, as a fraction of φ_0(s) − φ_∞(s).
    #[arg(long, default_value_t = 0.2)]
    margin: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Inconsistent(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Inconsistent(_) => EXIT_INCONSISTENT,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Inconsistent(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) => Failure::Usage(e.to_string()),
            Error::InternalInconsistency(_) => Failure::Inconsistent(e.to_string()),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn invalid(field: &str, msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("invalid --{field}: {msg}"))
}

impl ModelArgs {
    fn build(&self) -> std::result::Result<AnnulusModel, Failure> {
        if !(self.r > 0.0 && self.r.is_finite()) {
            return Err(invalid("R", format!("must be positive and finite, got {}", self.r)));
        }
        if !(self.q > self.r && self.q.is_finite()) {
            return Err(invalid("Q", format!("must be finite and exceed R = {}, got {}", self.r, self.q)));
        }
        if !(0.0..1.0).contains(&self.w) {
            return Err(invalid("w", format!("must lie in [0, 1), got {}", self.w)));
        }
        AnnulusModel::new(self.r, self.q, self.w).map_err(|e| match e {
            Error::Domain(m) => invalid("w", m),
            other => other.into(),
        })
    }
}

fn positive(field: &str, v: f64) -> std::result::Result<f64, Failure> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(field, format!("must be positive and finite, got {v}")))
    }
}

/// Inclusive grid of `steps` values; `steps = 1` gives `[min]`.
pub fn linspace(min: f64, max: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![min],
        _ => (0..steps)
            .map(|i| {
                if i == steps - 1 {
                    max
                } else {
                    min + (max - min) * i as f64 / (steps - 1) as f64
                }
            })
            .collect(),
    }
}

fn axis(name: &str, min: f64, max: f64, steps: usize, lo: f64, hi: f64, open_lo: bool) -> std::result::Result<Vec<f64>, Failure> {
    let in_range = |v: f64| v.is_finite() && v <= hi && if open_lo { v > lo } else { v >= lo };
    if !in_range(min) {
        return Err(invalid(&format!("{name}-min"), format!("out of range, got {min}")));
    }
    if !in_range(max) {
        return Err(invalid(&format!("{name}-max"), format!("out of range, got {max}")));
    }
    if steps == 0 {
        return Err(invalid(&format!("{name}-steps"), "must be at least 1"));
    }
    if max < min {
        return Err(invalid(&format!("{name}-max"), format!("must not be below {name}-min = {min}")));
    }
    Ok(linspace(min, max, steps))
}

fn axis_meta(min: f64, max: f64, steps: usize) -> Value {
    json!({ "min": min, "max": max, "steps": steps })
}

fn model_meta(m: &AnnulusModel) -> Value {
    json!({ "R": m.inner_radius, "Q": m.outer_radius, "w": m.inner_mass })
}

fn emit_json(out: Option<&Path>, value: &Value) -> CmdResult {
    let mut text = serde_json::to_string_pretty(value).expect("JSON value serialises");
    text.push('\n');
    io::write_output(out, &text)?;
    Ok(())
}

fn with_meta<T: Serialize>(body: &T, meta: Value) -> Value {
    let mut v = serde_json::to_value(body).expect("report serialises");
    if let Value::Object(map) = &mut v {
        map.insert("meta".into(), meta);
    }
    v
}

fn cmd_curves(a: &CurvesArgs) -> CmdResult {
    let model = a.model.build()?;
    let s_grid = axis("s", a.s_min, a.s_max, a.s_steps, 0.0, f64::INFINITY, true)?;
    let mut ells = a
        .ells
        .split(',')
        .map(|t| t.parse::<SphereIndex>().map_err(|e| invalid("ells", e)))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    ells.sort();
    ells.dedup();
    let table = CurveTable::build(&model, &s_grid, &ells)?;
    let meta = json!({
        "command": "curves",
        "model": model_meta(&model),
        "s": axis_meta(a.s_min, a.s_max, a.s_steps),
        "ells": ells.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
    });
    io::write_output(a.out.as_deref(), &io::curves_csv(&table, &meta))?;
    Ok(())
}

fn label_json(label: RegionLabel) -> Value {
    let mut v = json!({ "label": label.name() });
    if let Some(ell) = label.ell() {
        v["ell"] = json!(ell);
    }
    v
}

fn cmd_classify(a: &ClassifyArgs) -> CmdResult {
    let model = a.model.build()?;
    let s = positive("s", a.s)?;
    if !(0.0..=1.0).contains(&a.k) {
        return Err(invalid("k", format!("must lie in [0, 1], got {}", a.k)));
    }
    if !(a.tol >= 0.0 && a.tol.is_finite()) {
        return Err(invalid("tol", format!("must be non-negative and finite, got {}", a.tol)));
    }
    let cfg = Classifier { ell_max: a.ell_max, tol: a.tol };
    let scale = ScaleCurves::new(&model, s, cfg.ell_max)?;
    let label = scale.classify(a.k, cfg.tol);
    let profile = model.profile(s)?;
    let radius = curves::classify_via_radius_with_peak(&profile, &scale.peak, a.k, cfg.ell_max)?;

    let bound = |b: Option<(SphereIndex, f64)>| b.map(|(ell, phi)| json!({ "ell": ell, "phi": phi }));
    let (upper, lower) = scale.bracket(a.k);
    let mut out = label_json(label);
    if let Some(p) = radius.inner_radius {
        out["P"] = json!(p);
    }
    out["phi_bracket"] = json!({ "upper": bound(upper), "lower": bound(lower) });
    out["radius_path"] = label_json(radius.label);
    out["meta"] = json!({
        "tool": TOOL,
        "command": "classify",
        "model": model_meta(&model),
        "s": s,
        "k": a.k,
        "ell_max": cfg.ell_max,
        "tol": cfg.tol,
    });
    let disagree = label != RegionLabel::Boundary && radius.label != RegionLabel::Boundary && label != radius.label;
    emit_json(a.out.as_deref(), &out)?;
    if disagree {
        return Err(Failure::Inconsistent(format!(
            "curve path gives {label:?} but radius path gives {:?} at s = {s}, k = {}",
            radius.label, a.k
        )));
    }
    Ok(())
}

fn cmd_nu(a: &NuArgs) -> CmdResult {
    let model = a.model.build()?;
    let s = positive("s", a.s)?;
    let (lo, hi) = model.domain();
    if !(a.c >= lo && a.c <= hi) {
        return Err(invalid("c", format!("must lie in [{lo}, {hi}], got {}", a.c)));
    }
    let nu = model.nu(s, a.c)?;
    let out = json!({
        "s": s,
        "c": a.c,
        "nu": nu,
        "meta": { "tool": TOOL, "command": "nu", "model": model_meta(&model) },
    });
    emit_json(a.out.as_deref(), &out)
}

fn cmd_omega(a: &OmegaArgs) -> CmdResult {
    let model = a.model.build()?;
    let s = positive("s", a.s)?;
    let peak = model.omega(s)?;
    let meta = json!({ "tool": TOOL, "command": "omega", "model": model_meta(&model) });
    emit_json(a.out.as_deref(), &with_meta(&peak, meta))
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".json");
    PathBuf::from(name)
}

fn cmd_sample(a: &SampleArgs) -> CmdResult {
    let model = a.model.build()?;
    if a.n == 0 {
        return Err(invalid("n", "must be at least 1"));
    }
    let cloud = sampler::sample(&model, a.n, a.seed)?;
    let meta = json!({
        "command": "sample",
        "model": model_meta(&model),
        "n": a.n,
        "seed": a.seed,
        "prng": PRNG_ID,
    });
    io::write_output(a.out.as_deref(), &io::points_csv(&cloud, &meta))?;
    if let Some(out) = &a.out {
        let mut sidecar = meta;
        sidecar["tool"] = json!(TOOL);
        emit_json(Some(&sidecar_path(out)), &sidecar)?;
    }
    Ok(())
}

struct Prepared {
    model: AnnulusModel,
    cloud: PointCloud,
    s_values: Vec<f64>,
    k_values: Vec<f64>,
    meta: Value,
}

impl CloudArgs {
    fn prepare(&self, command: &str) -> std::result::Result<Prepared, Failure> {
        let model = self.model.build()?;
        let s_values = axis("s", self.s_axis.s_min, self.s_axis.s_max, self.s_axis.s_steps, 0.0, f64::INFINITY, true)?;
        let k_values = axis("k", self.k_axis.k_min, self.k_axis.k_max, self.k_axis.k_steps, 0.0, 1.0, false)?;
        let (cloud, source) = match &self.points {
            Some(path) => (io::read_points_csv(path)?, json!({ "points": path.display().to_string() })),
            None => {
                if self.n == 0 {
                    return Err(invalid("n", "must be at least 1"));
                }
                let cloud = sampler::sample(&model, self.n, self.seed)?;
                (cloud, json!({ "n": self.n, "seed": self.seed, "prng": PRNG_ID }))
            }
        };
        let meta = json!({
            "command": command,
            "model": model_meta(&model),
            "cloud": source,
            "n_points": cloud.len(),
            "s": axis_meta(self.s_axis.s_min, self.s_axis.s_max, self.s_axis.s_steps),
            "k": axis_meta(self.k_axis.k_min, self.k_axis.k_max, self.k_axis.k_steps),
        });
        Ok(Prepared { model, cloud, s_values, k_values, meta })
    }
}

fn grid_of(p: &Prepared) -> std::result::Result<HilbertGrid, Failure> {
    let index = DistanceIndex::new(&p.cloud.points)?;
    Ok(hilbert_grid(&index, &p.s_values, &p.k_values)?)
}

fn cmd_hilbert(a: &HilbertArgs) -> CmdResult {
    let p = a.cloud.prepare("hilbert")?;
    let grid = grid_of(&p)?;
    io::write_output(a.out.as_deref(), &io::hilbert_csv(&grid, &p.meta))?;
    Ok(())
}

fn cmd_compare(a: &CompareArgs) -> CmdResult {
    if !(a.margin >= 0.0 && a.margin.is_finite()) {
        return Err(invalid("margin", format!("must be a non-negative fraction, got {}", a.margin)));
    }
    let p = a.cloud.prepare("compare")?;
    let grid = grid_of(&p)?;
    let report = region_agreement(&grid, &p.model, a.margin)?;
    let mut meta = p.meta;
    meta["tool"] = json!(TOOL);
    emit_json(a.out.as_deref(), &with_meta(&report, meta))
}

fn configure_threads() -> CmdResult {
    let Some(raw) = std::env::var_os("DRA_THREADS") else {
        return Ok(());
    };
    let threads = raw
        .to_str()
        .and_then(|t| t.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Usage(format!("invalid DRA_THREADS: expected a positive integer, got {raw:?}")))?;
    // a second initialisation in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

fn run(cli: &Cli) -> CmdResult {
    configure_threads()?;
    match &cli.command {
        Command::Curves(a) => cmd_curves(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Nu(a) => cmd_nu(a),
        Command::Omega(a) => cmd_omega(a),
        Command::Sample(a) => cmd_sample(a),
        Command::Hilbert(a) => cmd_hilbert(a),
        Command::Compare(a) => cmd_compare(a),
    }
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("dra: {}", f.message());
            f.code()
        }
    }
}
