//! Command-line orchestration for the sign-change laboratory.
//!
//! Every subcommand validates the merged configuration before computing and
//! produces its CSV in memory, so a failed run never leaves a partial file.

pub mod config;

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use signlab_core::csv::{fmt_num, write_csv, CsvRecord};
use signlab_core::littlewood::certify_with;
use signlab_core::maass::MaassRestriction;
use signlab_core::{
    count_sign_changes, eisenstein_eval, exponent_budget, j_functional, load_maass_record, m_p_norm,
    zeta_moment, CPolicy, CertifyOptions, Complex64, EisensteinConfig, EisensteinContext,
    EisensteinRestriction, Error, GeodesicSegment, MaassEvaluator, Measure, QuadratureConfig,
    Regime, Result, SegmentFunction,
};

use config::{parse_list, parse_ratio, RunConfig};

/// Exit status for success.
pub const EXIT_OK: i32 = 0;
/// Exit status when certificate hypotheses fail (`certify` only).
pub const EXIT_NO_CERTIFICATE: i32 = 1;
/// Exit status for input or configuration errors.
pub const EXIT_INPUT: i32 = 2;
/// Exit status for numerical precision failures.
pub const EXIT_NUMERICAL: i32 = 3;

/// Map a library error to its exit status.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Pole(_) | Error::InvalidRecord(_) | Error::Io(_) => EXIT_INPUT,
        Error::PrecisionFailure(_)
        | Error::TruncationFailure(_)
        | Error::QuadratureUnconverged(_)
        | Error::Degenerate(_) => EXIT_NUMERICAL,
    }
}

#[derive(Debug, Parser)]
#[command(name = "signlab", version, about = "Sign changes of automorphic forms along cuspidal geodesics")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// `key = value` configuration file; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write CSV here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Working mantissa bits (precision.base_bits).
    #[arg(long, global = true)]
    pub base_bits: Option<u32>,
    /// Absolute accuracy target of form values (eisenstein.tol).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args, Clone)]
pub struct SegmentArgs {
    /// Rational abscissa `p/q` of the geodesic.
    #[arg(long)]
    pub x0: Option<String>,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    /// Room above `b` on which the form is evaluated.
    #[arg(long)]
    pub margin: Option<f64>,
}

#[derive(Debug, Args, Clone)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
    /// Spectral parameter of the Eisenstein series `E_t`.
    #[arg(long)]
    pub t: Option<f64>,
    /// Coefficient file of an even Hecke–Maass cusp form.
    #[arg(long)]
    pub maass_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate `E_t(x + iy)`: value,abs_error.
    #[command(allow_negative_numbers = true)]
    Eval {
        #[arg(long)]
        t: f64,
        #[arg(long)]
        x: f64,
        #[arg(long)]
        y: f64,
    },
    /// Sign field of `E_t` on a rectangle: x,y,sign,value (row-major in y).
    #[command(allow_negative_numbers = true)]
    Grid {
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = -0.5)]
        x_min: f64,
        #[arg(long, default_value_t = 0.5)]
        x_max: f64,
        #[arg(long, default_value_t = 0.8)]
        y_min: f64,
        #[arg(long, default_value_t = 2.5)]
        y_max: f64,
        #[arg(long, default_value_t = 200)]
        nx: usize,
        #[arg(long, default_value_t = 200)]
        ny: usize,
    },
    /// Certified sign-change brackets on the segment.
    Signs {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        segment: SegmentArgs,
        /// Base grid cells (default 16⌈t⌉).
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// `M_p` norm on `[a, b]`.
    Norms {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        segment: SegmentArgs,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// lebesgue (dy) or hyperbolic (dy/y).
        #[arg(long, default_value = "lebesgue")]
        measure: String,
    },
    /// `J(f, η)` on `[a, b]`.
    Jfun {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        segment: SegmentArgs,
        #[arg(long)]
        eta: f64,
    },
    /// Littlewood certificate with `N` windows; exit 1 when the hypotheses fail.
    Certify {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        segment: SegmentArgs,
        #[arg(long = "n")]
        n: usize,
        /// Clamp `c` to `1 - ε_c`.
        #[arg(long, default_value_t = 1e-3)]
        clamp_eps: f64,
        /// Use `c = M₁/M₂` without clamping.
        #[arg(long)]
        no_clamp: bool,
        /// Measure for `M₁`, `M₂`; anything but lebesgue is exploratory.
        #[arg(long, default_value = "lebesgue")]
        measure: String,
    },
    /// Growth scan over `t`: t,K,M1,M2,J with `η = |I|/⌊t⌋`.
    Scan {
        #[arg(long)]
        t_min: Option<f64>,
        #[arg(long)]
        t_max: Option<f64>,
        #[arg(long)]
        t_step: Option<f64>,
        #[command(flatten)]
        segment: SegmentArgs,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Critical-line moments of ζ: T,k,value,quad_error.
    Moments {
        #[arg(long)]
        k: Option<u32>,
        /// Comma-separated list of `T`.
        #[arg(long)]
        t_grid: Option<String>,
        #[arg(long)]
        resolution: Option<f64>,
    },
    /// Exponent bookkeeping: epsilon,p,kappa,delta_min,final_exponent.
    Budget {
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        kappa: f64,
        #[arg(long, default_value = "eisenstein")]
        regime: String,
    },
}

/// The result of a run: CSV bytes, diagnostic lines and the exit status.
#[derive(Debug, Default)]
pub struct Outcome {
    pub csv: Vec<u8>,
    pub notes: Vec<String>,
    pub exit: i32,
    pub out: Option<PathBuf>,
}

fn csv_of<R: CsvRecord>(rows: &[R]) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    write_csv(&mut buf, rows)?;
    Ok(buf)
}

/// Header plus rows of pre-formatted numeric cells (never contain separators).
fn csv_rows(header: &'static [&'static str], rows: Vec<Vec<String>>) -> Result<Vec<u8>> {
    let mut buf = String::new();
    buf.push_str(&header.join(","));
    buf.push('\n');
    for r in rows {
        debug_assert_eq!(r.len(), header.len());
        buf.push_str(&r.join(","));
        buf.push('\n');
    }
    Ok(buf.into_bytes())
}

fn merge_segment(cfg: &mut RunConfig, s: &SegmentArgs) -> Result<()> {
    if let Some(x0) = &s.x0 {
        let (p, q) = parse_ratio(x0)?;
        cfg.x0_num = p;
        cfg.x0_den = q;
    }
    if let Some(a) = s.a {
        cfg.a = a;
    }
    if let Some(b) = s.b {
        cfg.b = b;
    }
    if let Some(m) = s.margin {
        cfg.margin = m;
    }
    Ok(())
}

fn eis_config(cfg: &RunConfig, y_min: f64) -> Result<EisensteinConfig> {
    if !(y_min > 0.0 && y_min.is_finite()) {
        return Err(Error::Domain(format!("Im z must be positive, got {y_min}")));
    }
    Ok(EisensteinConfig { prec: cfg.precision()?, tol: cfg.tol, y_floor: y_min.min(0.05), ..Default::default() })
}

/// The restricted form (Eisenstein or Maass) on `segment`, and its spectral parameter.
fn build_source(
    cfg: &RunConfig,
    src: &SourceArgs,
    segment: GeodesicSegment,
) -> Result<(Box<dyn SegmentFunction>, f64)> {
    if let Some(t) = src.t {
        let ctx = EisensteinContext::critical(t, eis_config(cfg, segment.a)?)?;
        return Ok((Box::new(EisensteinRestriction::new(Arc::new(ctx), segment)), t));
    }
    let path = src.maass_file.as_ref().expect("clap enforces one source");
    let rec = load_maass_record(path)?;
    let t = rec.t_phi;
    let ev = MaassEvaluator::new(Arc::new(rec), cfg.precision()?, cfg.tol, segment.a.min(0.05))?;
    Ok((Box::new(MaassRestriction::new(Arc::new(ev), segment)), t))
}

fn default_grid(t: f64) -> usize {
    (16.0 * t.ceil()).max(8.0) as usize
}

/// `n` points from `lo` to `hi`, symmetric intervals giving exactly negated points.
fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let d = (n - 1) as f64;
    (0..n).map(|i| (lo * (n - 1 - i) as f64 + hi * i as f64) / d).collect()
}

/// Parse `args` (including the program name) and run.
pub fn run_from_args<I, T>(args: I) -> std::result::Result<Outcome, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    Ok(match run(&cli) {
        Ok(o) => o,
        Err(e) => Outcome { notes: vec![format!("error: {e}")], exit: exit_code(&e), ..Default::default() },
    })
}

/// Run a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let mut cfg = match &cli.global.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    if let Some(b) = cli.global.base_bits {
        cfg.base_bits = b;
    }
    if let Some(t) = cli.global.tol {
        cfg.tol = t;
    }
    if let Some(o) = &cli.global.out {
        cfg.output = Some(o.clone());
    }
    let mut notes = Vec::new();
    let mut exit = EXIT_OK;
    let csv = match &cli.command {
        Command::Eval { t, x, y } => {
            cfg.validate()?;
            let ctx = EisensteinContext::critical(*t, eis_config(&cfg, *y)?)?;
            let v = eisenstein_eval(&ctx, Complex64::new(*x, *y))?;
            csv_rows(&["value", "abs_error"], vec![vec![fmt_num(v.value.re), fmt_num(v.abs_error)]])?
        }
        Command::Grid { t, x_min, x_max, y_min, y_max, nx, ny } => {
            cfg.validate()?;
            if *nx == 0 || *ny == 0 || !(x_max >= x_min) || !(y_max >= y_min) {
                return Err(Error::Domain("grid needs nx, ny ≥ 1 and ordered ranges".into()));
            }
            let ctx = EisensteinContext::critical(*t, eis_config(&cfg, *y_min)?)?;
            let xs = linspace(*x_min, *x_max, *nx);
            let ys = linspace(*y_min, *y_max, *ny);
            let rows: Vec<Vec<Vec<String>>> = ys
                .par_iter()
                .map(|&y| {
                    let vals = ctx.eval_row(y, &xs)?;
                    Ok(xs
                        .iter()
                        .zip(vals)
                        .map(|(&x, v)| {
                            let sign = if v.value.re.abs() <= v.abs_error { 0 } else { v.value.re.signum() as i32 };
                            vec![fmt_num(x), fmt_num(y), sign.to_string(), fmt_num(v.value.re)]
                        })
                        .collect())
                })
                .collect::<Result<_>>()?;
            csv_rows(&["x", "y", "sign", "value"], rows.into_iter().flatten().collect())?
        }
        Command::Signs { source, segment, grid, depth } => {
            merge_segment(&mut cfg, segment)?;
            if grid.is_some() {
                cfg.grid_base = *grid;
            }
            if let Some(d) = depth {
                cfg.grid_depth = *d;
            }
            cfg.validate()?;
            let seg = cfg.segment()?;
            let (f, t) = build_source(&cfg, source, seg)?;
            let base = cfg.grid_base.unwrap_or_else(|| default_grid(t));
            let cert = count_sign_changes(f.as_ref(), (seg.a, seg.b), base, cfg.grid_depth)?;
            notes.push(format!(
                "count={} undecided={} min_gap={} base_grid={base} depth={}",
                cert.count,
                cert.undecided,
                fmt_num(cert.min_gap),
                cfg.grid_depth
            ));
            csv_of(&cert.brackets)?
        }
        Command::Norms { source, segment, p, measure } => {
            merge_segment(&mut cfg, segment)?;
            cfg.validate()?;
            let measure: Measure = measure.parse()?;
            let seg = cfg.segment()?;
            let (f, _) = build_source(&cfg, source, seg)?;
            let r = m_p_norm(f.as_ref(), (seg.a, seg.b), *p, measure, &QuadratureConfig::default())?;
            csv_of(&[r])?
        }
        Command::Jfun { source, segment, eta } => {
            merge_segment(&mut cfg, segment)?;
            cfg.validate()?;
            // The window integral reads f on [b, b + η].
            cfg.margin = cfg.margin.max(*eta);
            let seg = cfg.segment()?;
            let (f, _) = build_source(&cfg, source, seg)?;
            let r = j_functional(f.as_ref(), (seg.a, seg.b), *eta, &QuadratureConfig::default())?;
            csv_of(&[r])?
        }
        Command::Certify { source, segment, n, clamp_eps, no_clamp, measure } => {
            merge_segment(&mut cfg, segment)?;
            cfg.validate()?;
            let measure: Measure = measure.parse()?;
            if measure != Measure::Lebesgue {
                notes.push("warning: the certificate is stated for dy; this run is exploratory".into());
            }
            if *n >= 1 {
                cfg.margin = cfg.margin.max((cfg.b - cfg.a) / *n as f64);
            }
            let seg = cfg.segment()?;
            let (f, _) = build_source(&cfg, source, seg)?;
            let policy = if *no_clamp { CPolicy::Ratio } else { CPolicy::RatioClamped(*clamp_eps) };
            let opts = CertifyOptions { policy, measure, quadrature: QuadratureConfig::default() };
            let c = certify_with(f.as_ref(), (seg.a, seg.b), *n, &opts)?;
            if !c.hypotheses_hold {
                exit = EXIT_NO_CERTIFICATE;
                notes.push("hypotheses do not hold: no certificate issued".into());
            }
            csv_of(&[c])?
        }
        Command::Scan { t_min, t_max, t_step, segment, grid, depth } => {
            merge_segment(&mut cfg, segment)?;
            if let Some(v) = t_min {
                cfg.t_min = *v;
            }
            if let Some(v) = t_max {
                cfg.t_max = *v;
            }
            if let Some(v) = t_step {
                cfg.t_step = *v;
            }
            if grid.is_some() {
                cfg.grid_base = *grid;
            }
            if let Some(d) = depth {
                cfg.grid_depth = *d;
            }
            cfg.validate()?;
            if cfg.t_min < 2.0 {
                return Err(Error::Domain("scan needs t_min ≥ 2 so that ⌊t⌋ ≥ 2 windows".into()));
            }
            let steps = ((cfg.t_max - cfg.t_min) / cfg.t_step + 1e-9).floor() as usize;
            let mut rows = Vec::new();
            for i in 0..=steps {
                let t = cfg.t_min + i as f64 * cfg.t_step;
                rows.push(scan_row(&cfg, t)?);
            }
            csv_rows(&["t", "K", "M1", "M2", "J"], rows)?
        }
        Command::Moments { k, t_grid, resolution } => {
            if let Some(k) = k {
                cfg.moments_k = *k;
            }
            if let Some(g) = t_grid {
                cfg.t_grid = parse_list("t-grid", g)?;
            }
            if let Some(r) = resolution {
                cfg.resolution = *r;
            }
            cfg.validate()?;
            let prec = cfg.precision()?;
            let rows = cfg
                .t_grid
                .iter()
                .map(|&t| zeta_moment(t, cfg.moments_k, cfg.resolution, &prec))
                .collect::<Result<Vec<_>>>()?;
            csv_of(&rows)?
        }
        Command::Budget { epsilon, p, kappa, regime } => {
            cfg.validate()?;
            let regime: Regime = regime.parse()?;
            csv_of(&[exponent_budget(*epsilon, *p, *kappa, regime)?])?
        }
    };
    Ok(Outcome { csv, notes, exit, out: cfg.output })
}

/// One growth-scan row at spectral parameter `t`.
fn scan_row(cfg: &RunConfig, t: f64) -> Result<Vec<String>> {
    let n = t.floor() as usize;
    let eta = (cfg.b - cfg.a) / n as f64;
    let seg = GeodesicSegment::new(cfg.x0_num, cfg.x0_den, cfg.a, cfg.b, cfg.margin.max(eta))?;
    let ctx = EisensteinContext::critical(t, eis_config(cfg, seg.a)?)?;
    let f = EisensteinRestriction::new(Arc::new(ctx), seg);
    let base = cfg.grid_base.unwrap_or_else(|| default_grid(t));
    let signs = count_sign_changes(&f, (seg.a, seg.b), base, cfg.grid_depth)?;
    let c = certify_with(&f, (seg.a, seg.b), n, &CertifyOptions::default())?;
    Ok(vec![fmt_num(t), signs.count.to_string(), fmt_num(c.m1), fmt_num(c.m2), fmt_num(c.j)])
}
