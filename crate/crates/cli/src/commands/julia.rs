//! `julia`, `sweep` and `pinch`.

use std::io::Write;
use std::path::PathBuf;

use covering_forge::dynamics::{
    ft_critical_data, pinch_beltrami_norm, render_julia_slice, AnnulusGrid, DynamicsError,
    FtParams, RenderConfig,
};
use num_complex::Complex;
use num_traits::Float;

use super::{emit, io, write_file, Context};
use crate::error::CliError;
use crate::input::{parse_range, parse_rational, rational_slug};
use crate::manifest::{sha256_hex, RunManifest};
use crate::{Outcome, Precision, RenderArgs};

fn params(t: &str) -> Result<FtParams, CliError> {
    let t = parse_rational(t).map_err(CliError::Usage)?;
    FtParams::new(t).map_err(|e| CliError::Usage(e.to_string()))
}

fn render_options(manifest: &mut RunManifest, args: &RenderArgs) {
    manifest.option("resolution", args.resolution);
    manifest.option("max_iter", args.max_iter);
    manifest.option(
        "half_width",
        args.half_width.map_or("auto".into(), |w| w.to_string()),
    );
    manifest.option("center", format!("{},{}", args.center.0, args.center.1));
    manifest.option(
        "escape_radius",
        args.escape_radius.map_or("auto".into(), |r| r.to_string()),
    );
    manifest.option("precision", format!("{:?}", args.precision).to_lowercase());
}

/// Report lines and the PPM image of one slice.
struct Rendered {
    lines: Vec<String>,
    ppm: Vec<u8>,
}

fn render<T: Float + Send + Sync + std::fmt::Display>(
    p: &FtParams,
    args: &RenderArgs,
) -> Result<Rendered, CliError> {
    let float = |x: f64| T::from(x).expect("float");
    let mut cfg = RenderConfig::<T>::for_parameter(p);
    cfg.resolution = args.resolution;
    cfg.max_iter = args.max_iter;
    cfg.center = Complex::new(float(args.center.0), float(args.center.1));
    if let Some(w) = args.half_width {
        cfg.half_width = float(w);
    }
    cfg.escape_radius = args.escape_radius.map(float);
    let slice = render_julia_slice(p, &cfg).map_err(|e| CliError::Usage(e.to_string()))?;
    let data = ft_critical_data(p);
    let join = |xs: &[num_rational::BigRational]| {
        xs.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    };
    let ppm = slice.grid.to_ppm();
    let lines = vec![
        format!(
            "t={} critical_points={} critical_values={}",
            p.t(),
            join(&data.points),
            join(&data.values)
        ),
        format!(
            "t={} half_width={} escape_radius={} retained={}",
            p.t(),
            slice.config.half_width,
            slice.escape_radius,
            slice.census.retained
        ),
        slice.report().to_string(),
        format!("t={} image_sha256={}", p.t(), sha256_hex(&ppm)),
    ];
    Ok(Rendered { lines, ppm })
}

fn render_any(p: &FtParams, args: &RenderArgs) -> Result<Rendered, CliError> {
    match args.precision {
        Precision::F64 => render::<f64>(p, args),
        Precision::F32 => render::<f32>(p, args),
    }
}

pub fn julia(
    ctx: &Context,
    t: &str,
    args: &RenderArgs,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let p = params(t)?;
    let mut manifest = RunManifest::new("julia");
    manifest.option("t", p.t());
    render_options(&mut manifest, args);
    if let Some(path) = &ctx.out {
        manifest.option("out", path.display());
    }
    let rendered = render_any(&p, args)?;
    emit(out, &manifest)?;
    for l in &rendered.lines {
        writeln!(out, "{l}").map_err(io)?;
    }
    if let Some(path) = &ctx.out {
        write_file(path, &rendered.ppm)?;
    }
    Ok(Outcome::Yes)
}

pub fn sweep(
    ctx: &Context,
    ts: &[String],
    args: &RenderArgs,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let ps: Vec<FtParams> = ts.iter().map(|t| params(t)).collect::<Result<_, _>>()?;
    let mut manifest = RunManifest::new("sweep");
    manifest.option(
        "t",
        ps.iter()
            .map(|p| p.t().to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    render_options(&mut manifest, args);
    if let Some(dir) = &ctx.out {
        manifest.option("out", dir.display());
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.clone(),
            source,
        })?;
    }
    emit(out, &manifest)?;
    for p in &ps {
        let rendered = render_any(p, args)?;
        for l in &rendered.lines {
            writeln!(out, "{l}").map_err(io)?;
        }
        if let Some(dir) = &ctx.out {
            let path: PathBuf = dir.join(format!("julia_t{}.ppm", rational_slug(p.t())));
            write_file(&path, &rendered.ppm)?;
        }
    }
    Ok(Outcome::Yes)
}

pub fn pinch(
    _ctx: &Context,
    n: &str,
    r: f64,
    radial: usize,
    angular: usize,
    step: f64,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let (from, to) = parse_range(n).map_err(CliError::Usage)?;
    let grid = AnnulusGrid {
        r,
        radial,
        angular,
        relative_step: step,
    };
    let mut manifest = RunManifest::new("pinch");
    manifest.option("n", format!("{from}..{to}"));
    manifest.option("r", r);
    manifest.option("radial", radial);
    manifest.option("angular", angular);
    manifest.option("step", step);
    let mut rows = Vec::new();
    for k in from..=to {
        let norm = pinch_beltrami_norm(k, &grid).map_err(|e| match e {
            DynamicsError::FloatRange(_) => CliError::Failed(e.to_string()),
            other => CliError::Usage(other.to_string()),
        })?;
        rows.push(norm);
    }
    emit(out, &manifest)?;
    writeln!(
        out,
        "{:>3} {:>16} {:>16} {:>10}",
        "n", "closed_form", "measured", "abs_diff"
    )
    .map_err(io)?;
    for row in &rows {
        writeln!(
            out,
            "{:>3} {:>16.12} {:>16.12} {:>10.3e}",
            row.n,
            row.closed_form,
            row.measured,
            (row.measured - row.closed_form).abs()
        )
        .map_err(io)?;
    }
    let increasing = rows.windows(2).all(|w| w[1].measured > w[0].measured);
    let worst = rows
        .iter()
        .map(|r| (r.measured - r.closed_form).abs())
        .fold(0.0, f64::max);
    writeln!(out, "increasing={increasing} max_abs_diff={worst:.3e}").map_err(io)?;
    Ok(Outcome::Yes)
}
