//! Command-line driver.
//!
//! Subcommands: `validate`, `check`, `analyze`, `frame-bounds`,
//! `orthonormality`. Every run is deterministic given its flags and seed;
//! numeric output uses fixed 17-significant-digit formatting and `\n` line
//! endings so repeated runs are byte-identical.
//!
//! Exit codes: 0 success/pass, 1 checked failure, 2 usage or configuration
//! error.

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::path::{Path, PathBuf};

use crate::admissibility::{
    check_norm_admissibility, check_seminorm_admissibility, check_sufficient, CheckConfig,
};
use crate::error::{Error, Result};
use crate::frame::{
    analyze, fmt_float, gram, FrameIndex, FrameSpec, FrameSpecFile, Normalization, Tag,
};
use crate::grid::GridSpec;
use crate::partition::{
    make_dyadic_1d, make_polar_2d, validate_admissible, Direction, FrequencyPartition,
    ValidationConfig,
};
use crate::sobolev::{
    coefficient_energy, dilation_family, estimate_frame_bounds, gaussian_family, narrowband_family,
    scan_nu, seminorm_energy, sobolev_norm_sq, sobolev_seminorm_sq, Signal,
};
use crate::window::Window;

#[derive(Parser)]
#[command(
    name = "stframe",
    about = "Stockwell-like frames for Sobolev spaces: partitions, windows, analysis",
    version
)]
struct Cli {
    /// output directory for report files
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// seed for generated signal families
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// override the quadrature point count of the spec grid
    #[arg(long, global = true)]
    grid_points: Option<usize>,
    /// override the frequency ceiling of the spec grid
    #[arg(long, global = true)]
    omega_max: Option<f64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a frequency partition (covering, overlap, lattices)
    Validate {
        #[arg(long, default_value = "dyadic1d")]
        partition: String,
        #[arg(long, default_value_t = 6)]
        jmax: u32,
        /// sample spacing of the validation grid
        #[arg(long, default_value_t = 1.0 / 64.0)]
        spacing: f64,
    },
    /// Check window admissibility for a Sobolev index
    Check {
        #[arg(long)]
        window: String,
        /// order parameter for sinc_pow / bspline_freq
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value_t = 0.0)]
        s: f64,
        /// norm, seminorm or sufficient
        #[arg(long, default_value = "norm")]
        mode: String,
        #[arg(long, default_value_t = 6)]
        jmax: u32,
        /// smallest scale the conditions are certified for
        #[arg(long, default_value_t = 1)]
        j0: i32,
    },
    /// Compute the coefficient table of a signal
    Analyze {
        #[command(flatten)]
        spec: SpecArgs,
        /// signal description, e.g. "gaussian:a=1,t0=0,w0=2",
        /// "bump:center=5,halfwidth=2", "frame-element:j=2,k=+,m=3", "zero"
        #[arg(long, default_value = "gaussian:a=1,t0=0,w0=2")]
        signal: String,
    },
    /// Estimate frame bounds over a signal family
    FrameBounds {
        #[command(flatten)]
        spec: SpecArgs,
        /// comma-separated list of translation steps to scan
        #[arg(long)]
        scan_nu: Option<String>,
        /// family: "gaussian" (seeded 20-signal), "narrowband", "dilation"
        #[arg(long, default_value = "gaussian")]
        family: String,
    },
    /// Gram-matrix deviation from the identity
    Orthonormality {
        #[command(flatten)]
        spec: SpecArgs,
        /// restrict band tags to scales >= this
        #[arg(long, default_value_t = 0)]
        j_min: i32,
        /// drop the central translates from the selection
        #[arg(long, default_value_t = false)]
        no_central: bool,
    },
}

/// Inline frame-spec flags (a `--spec` JSON file takes precedence).
#[derive(Args)]
struct SpecArgs {
    /// JSON frame-spec file
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long, default_value = "dyadic1d")]
    partition: String,
    #[arg(long, default_value_t = 4)]
    jmax: u32,
    #[arg(long, default_value = "sinc")]
    window: String,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, default_value_t = 1.0)]
    nu: f64,
    #[arg(long, default_value_t = 0.0)]
    s: f64,
    /// "exact" or "dyadic"
    #[arg(long, default_value = "exact")]
    normalization: String,
    #[arg(long, default_value_t = false)]
    seminorm: bool,
    #[arg(long, default_value_t = 6)]
    j_neg: u32,
    #[arg(long, default_value_t = 8.0)]
    lambda_max: f64,
}

fn parse_window(name: &str, n: Option<u32>) -> Result<Window> {
    let w = match name {
        "gaussian" => Window::Gaussian,
        "sinc" => Window::SincPow(1),
        "sinc_pow" => Window::SincPow(n.ok_or_else(|| Error::Config("sinc_pow needs --n".into()))?),
        "boxcar" => Window::Boxcar,
        "bspline_freq" => {
            Window::BsplineFreq(n.ok_or_else(|| Error::Config("bspline_freq needs --n".into()))?)
        }
        "zero" => Window::Zero,
        other => return Err(Error::Config(format!("unknown window '{other}'"))),
    };
    w.validate()?;
    Ok(w)
}

fn parse_partition(kind: &str, jmax: u32) -> Result<FrequencyPartition> {
    match kind {
        "dyadic1d" => Ok(make_dyadic_1d(jmax)),
        "polar2d" => Ok(make_polar_2d(jmax)),
        other => Err(Error::Config(format!("unknown partition '{other}'"))),
    }
}

impl SpecArgs {
    fn build(&self, grid_points: Option<usize>, omega_max: Option<f64>) -> Result<FrameSpec> {
        let mut spec = if let Some(path) = &self.spec {
            let text = std::fs::read_to_string(path)?;
            let file: FrameSpecFile = serde_json::from_str(&text)?;
            FrameSpec::from_file(&file)?
        } else {
            let partition = parse_partition(&self.partition, self.jmax)?;
            let window = parse_window(&self.window, self.n)?;
            let normalization = match self.normalization.as_str() {
                "exact" => Normalization::Exact,
                "dyadic" => Normalization::Dyadic,
                other => return Err(Error::Config(format!("unknown normalization '{other}'"))),
            };
            let grid = GridSpec::for_j_max(partition.j_max as i32);
            FrameSpec {
                partition,
                window,
                nu: self.nu,
                s: self.s,
                normalization,
                seminorm_mode: self.seminorm,
                j_neg: self.j_neg,
                lambda_max: self.lambda_max,
                grid,
            }
        };
        if let Some(p) = grid_points {
            spec.grid.points = p;
        }
        if let Some(o) = omega_max {
            spec.grid.omega_max = o;
        }
        spec.validate()?;
        Ok(spec)
    }
}

/// `key=value,key=value` flag parser for signal descriptions.
fn parse_kv(body: &str) -> Result<Vec<(String, String)>> {
    body.split(',')
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("bad key=value pair '{p}'")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn kv_f64(kv: &[(String, String)], key: &str, default: f64) -> Result<f64> {
    match kv.iter().find(|(k, _)| k == key) {
        Some((_, v)) => v
            .parse()
            .map_err(|_| Error::Config(format!("bad number '{v}' for {key}"))),
        None => Ok(default),
    }
}

fn parse_signal(desc: &str, spec: &FrameSpec) -> Result<Signal> {
    let (kind, body) = desc.split_once(':').unwrap_or((desc, ""));
    match kind {
        "zero" => Ok(Signal::Zero),
        "gaussian" => {
            let kv = parse_kv(body)?;
            Ok(Signal::gaussian(
                kv_f64(&kv, "a", 1.0)?,
                kv_f64(&kv, "t0", 0.0)?,
                kv_f64(&kv, "w0", 0.0)?,
            ))
        }
        "bump" => {
            let kv = parse_kv(body)?;
            Ok(Signal::Bump {
                center: kv_f64(&kv, "center", 0.0)?,
                halfwidth: kv_f64(&kv, "halfwidth", 1.0)?,
                amplitude: kv_f64(&kv, "amplitude", 1.0)?,
            })
        }
        "frame-element" => {
            let kv = parse_kv(body)?;
            let j = kv_f64(&kv, "j", 0.0)? as i32;
            let m = kv_f64(&kv, "m", 0.0)? as i64;
            let k: Direction = kv
                .iter()
                .find(|(k, _)| k == "k")
                .map(|(_, v)| v.parse())
                .transpose()?
                .unwrap_or(Direction::Pos);
            Ok(Signal::FrameElement {
                spec: Box::new(spec.clone()),
                idx: FrameIndex::band(j, k, m),
            })
        }
        other => Err(Error::Config(format!("unknown signal kind '{other}'"))),
    }
}

fn write_file(dir: &Path, name: &str, content: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, content)?;
    Ok(path)
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<PathBuf> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_file(dir, name, &text)
}

#[derive(Serialize)]
struct GramReport {
    n_indices: usize,
    max_deviation: f64,
    max_offdiag: f64,
    max_diag_error: f64,
}

fn error_exit_code(err: &Error) -> i32 {
    match err {
        Error::Config(_)
        | Error::Io(_)
        | Error::Json(_)
        | Error::Dimension { .. }
        | Error::InvalidContraction(_)
        | Error::IndexOutOfRange(_) => 2,
        _ => 1,
    }
}

/// Entry point used by the `stframe` binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            error_exit_code(&err)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.cmd {
        Cmd::Validate {
            partition,
            jmax,
            spacing,
        } => cmd_validate(cli, partition, *jmax, *spacing),
        Cmd::Check {
            window,
            n,
            s,
            mode,
            jmax,
            j0,
        } => cmd_check(cli, window, *n, *s, mode, *jmax, *j0),
        Cmd::Analyze { spec, signal } => cmd_analyze(cli, spec, signal),
        Cmd::FrameBounds {
            spec,
            scan_nu,
            family,
        } => cmd_frame_bounds(cli, spec, scan_nu.as_deref(), family),
        Cmd::Orthonormality {
            spec,
            j_min,
            no_central,
        } => cmd_orthonormality(cli, spec, *j_min, *no_central),
    }
}

fn cmd_validate(cli: &Cli, partition: &str, jmax: u32, spacing: f64) -> Result<i32> {
    if spacing <= 0.0 || spacing > 0.5 {
        return Err(Error::Config(format!("bad spacing {spacing}")));
    }
    let p = parse_partition(partition, jmax)?;
    let report = validate_admissible(&p, &ValidationConfig { spacing });
    let path = write_json(&cli.out, "partition_report.json", &report)?;
    println!(
        "partition {partition} jmax={jmax}: {} (holes={}, N={}, c_inf={}, c_sup={}) -> {}",
        if report.pass { "pass" } else { "FAIL" },
        report.holes.len(),
        report.max_overlap,
        fmt_float(report.c_inf),
        fmt_float(report.c_sup),
        path.display()
    );
    Ok(if report.pass { 0 } else { 1 })
}

fn cmd_check(
    cli: &Cli,
    window: &str,
    n: Option<u32>,
    s: f64,
    mode: &str,
    jmax: u32,
    j0: i32,
) -> Result<i32> {
    let w = parse_window(window, n)?;
    let config = CheckConfig {
        j0,
        ..CheckConfig::default()
    };
    let partition = make_dyadic_1d(jmax);
    let report = match mode {
        "norm" => check_norm_admissibility(&w, &partition, s, &config)?,
        "seminorm" => check_seminorm_admissibility(&w, &partition, s, &config)?,
        "sufficient" => check_sufficient(&w, s, &config)?,
        other => return Err(Error::Config(format!("unknown mode '{other}'"))),
    };
    let path = write_json(&cli.out, "admissibility_report.json", &report)?;
    println!(
        "{window} s={s} mode={mode}: {} (a_hat={}) -> {}",
        if report.pass { "pass" } else { "FAIL" },
        fmt_float(report.a_hat),
        path.display()
    );
    for f in &report.failures {
        println!("  - {f}");
    }
    Ok(if report.pass { 0 } else { 1 })
}

fn cmd_analyze(cli: &Cli, spec_args: &SpecArgs, signal_desc: &str) -> Result<i32> {
    let spec = spec_args.build(cli.grid_points, cli.omega_max)?;
    let signal = parse_signal(signal_desc, &spec)?;
    let table = analyze(&spec, &signal)?;
    let path = write_file(&cli.out, "coefficients.csv", &table.to_csv())?;
    let (energy, norm) = if spec.seminorm_mode {
        (
            seminorm_energy(&table, spec.s)?,
            sobolev_seminorm_sq(&signal, spec.s, &spec.grid)?,
        )
    } else {
        (
            coefficient_energy(&table, spec.s)?,
            sobolev_norm_sq(&signal, spec.s, &spec.grid)?,
        )
    };
    println!(
        "signal {} energy={} norm_sq={} tail_bound={} lambda_tail={} -> {}",
        table.signal_id,
        fmt_float(energy),
        fmt_float(norm),
        fmt_float(signal.tail_mass_bound(spec.grid.omega_max)),
        fmt_float(table.lambda_tail_fraction()),
        path.display()
    );
    if spec.seminorm_mode {
        println!(
            "deepest-scale share (j = -{}): {}",
            spec.j_neg,
            fmt_float(table.deepest_scale_fraction(spec.s))
        );
    }
    Ok(0)
}

fn cmd_frame_bounds(
    cli: &Cli,
    spec_args: &SpecArgs,
    scan: Option<&str>,
    family_name: &str,
) -> Result<i32> {
    let spec = spec_args.build(cli.grid_points, cli.omega_max)?;
    let family = match family_name {
        "gaussian" => gaussian_family(cli.seed),
        "narrowband" => narrowband_family(),
        "dilation" => dilation_family(),
        other => return Err(Error::Config(format!("unknown family '{other}'"))),
    };
    let estimate = estimate_frame_bounds(&spec, &family, spec.s)?;
    let mut csv = String::from("signal_id,ratio,energy,norm_sq\n");
    for r in &estimate.ratios {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            r.signal_id,
            fmt_float(r.ratio),
            fmt_float(r.energy),
            fmt_float(r.norm_sq)
        ));
    }
    let path = write_file(&cli.out, "bounds.csv", &csv)?;
    println!(
        "A_hat={} B_hat={} ratio={} -> {}",
        fmt_float(estimate.a_hat),
        fmt_float(estimate.b_hat),
        fmt_float(estimate.b_hat / estimate.a_hat),
        path.display()
    );
    if let Some(list) = scan {
        let nus: std::result::Result<Vec<f64>, _> =
            list.split(',').map(|x| x.trim().parse::<f64>()).collect();
        let nus = nus.map_err(|_| Error::Config(format!("bad --scan-nu list '{list}'")))?;
        let scans = scan_nu(&spec, &family, spec.s, &nus)?;
        let mut csv = String::from("nu,A_hat,B_hat,ratio\n");
        for (nu, est) in &scans {
            csv.push_str(&format!(
                "{},{},{},{}\n",
                fmt_float(*nu),
                fmt_float(est.a_hat),
                fmt_float(est.b_hat),
                fmt_float(est.b_hat / est.a_hat)
            ));
        }
        let path = write_file(&cli.out, "scan.csv", &csv)?;
        println!("nu scan over {nus:?} -> {}", path.display());
    }
    Ok(0)
}

fn cmd_orthonormality(
    cli: &Cli,
    spec_args: &SpecArgs,
    j_min: i32,
    no_central: bool,
) -> Result<i32> {
    let spec = spec_args.build(cli.grid_points, cli.omega_max)?;
    let indices: Vec<FrameIndex> = spec
        .indices()
        .into_iter()
        .filter(|idx| match idx.tag {
            Tag::Central => !no_central,
            Tag::Band { j, .. } => j >= j_min,
        })
        .collect();
    if indices.is_empty() {
        return Err(Error::Config("empty index selection".into()));
    }
    if indices.len() > 4000 {
        return Err(Error::Config(format!(
            "selection of {} indices is too large for a dense Gram matrix",
            indices.len()
        )));
    }
    let g = gram(&spec, &indices)?;
    let n = indices.len();
    let mut max_offdiag = 0.0f64;
    let mut max_diag = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            let v = g[a * n + b];
            if a == b {
                max_diag = max_diag.max((v - num_complex::Complex64::new(1.0, 0.0)).norm());
            } else {
                max_offdiag = max_offdiag.max(v.norm());
            }
        }
    }
    let report = GramReport {
        n_indices: n,
        max_deviation: max_offdiag.max(max_diag),
        max_offdiag,
        max_diag_error: max_diag,
    };
    let path = write_json(&cli.out, "gram_report.json", &report)?;
    println!(
        "gram over {} indices: max |G - I| = {} -> {}",
        n,
        fmt_float(report.max_deviation),
        path.display()
    );
    Ok(0)
}
