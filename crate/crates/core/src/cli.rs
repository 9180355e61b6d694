//! Command-line front end.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::analysis::{
    dimension_report, estimate_sdim, fit_constant, holder_bound, modulus_grid, verify_certificate, GRID_CAP,
};
use crate::assembler::assemble;
use crate::continuum::{Continuum, Shape};
use crate::covers::sierpinski_table;
use crate::error::{Error, Result};
use crate::io::FORMAT_VERSION;
use crate::modulus::ModulusSpec;
use crate::path::ParamCurve;
use crate::raster::{load_bitmap, Raster, DEFAULT_THRESHOLD};
use crate::svg::render_svg;

#[derive(Parser, Debug)]
#[command(name = "peano", version, about = "Space-filling curves with a certified continuity modulus")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate or load a continuum and write its cells.
    Gen(GenArgs),
    /// Tabulate cover counts per level.
    Cover(LevelArgs),
    /// Estimate box and S-dimension.
    Sdim(LevelArgs),
    /// Build a certified curve.
    Curve(CurveArgs),
    /// Check a curve file against a modulus.
    Verify(VerifyArgs),
    /// Render a curve file as SVG.
    Render(RenderArgs),
    /// Dimension estimates, a curve certificate, and the length bound in one report.
    Report(CurveArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ShapeName {
    Interval,
    Square,
    Carpet,
    Gasket,
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    #[arg(long, value_enum, conflicts_with = "bitmap", required_unless_present = "bitmap")]
    pub shape: Option<ShapeName>,
    /// Cell count along a side, for interval and square.
    #[arg(long)]
    pub size: Option<usize>,
    /// Recursion depth, for carpet and gasket.
    #[arg(long)]
    pub depth: Option<u32>,
    /// PGM or PBM raster.
    #[arg(long)]
    pub bitmap: Option<PathBuf>,
    /// Gray level above which a PGM pixel is foreground.
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    pub threshold: u8,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct LevelArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Finest level; defaults to the resolution level.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=30))]
    pub levels: Option<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ModulusArgs {
    /// The modulus is `C * t^(1/alpha)`.
    #[arg(long, value_parser = positive)]
    pub alpha: f64,
    #[arg(long = "holder-C", value_parser = positive, default_value_t = 1.0)]
    pub holder_c: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub modulus: ModulusArgs,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=30))]
    pub levels: Option<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub cert: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub modulus: ModulusArgs,
    /// Curve CSV written by `curve`.
    #[arg(long)]
    pub curve: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub curve: PathBuf,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

fn positive(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s} is not a positive number"))
    }
}

/// A validated invocation.
#[derive(Debug)]
pub struct RunConfig {
    pub command: Command,
    pub source: Source,
}

#[derive(Debug, Clone)]
pub enum Source {
    Shape(Shape),
    Bitmap { path: PathBuf, threshold: u8 },
}

impl RunConfig {
    /// Checks what clap cannot: the size or depth that goes with a shape.
    pub fn from_cli(cli: Cli) -> std::result::Result<Self, String> {
        let input = match &cli.command {
            Command::Gen(a) => &a.input,
            Command::Cover(a) | Command::Sdim(a) => &a.input,
            Command::Curve(a) | Command::Report(a) => &a.input,
            Command::Verify(a) => &a.input,
            Command::Render(a) => &a.input,
        };
        let source = match (&input.shape, &input.bitmap) {
            (Some(name), None) => {
                let shape = match name {
                    ShapeName::Interval | ShapeName::Square => {
                        let size = input.size.ok_or("--size is required for interval and square")?;
                        if input.depth.is_some() {
                            return Err("--depth does not apply to interval and square".into());
                        }
                        if *name == ShapeName::Interval {
                            Shape::Interval(size)
                        } else {
                            Shape::Square(size)
                        }
                    }
                    ShapeName::Carpet | ShapeName::Gasket => {
                        let depth = input.depth.ok_or("--depth is required for carpet and gasket")?;
                        if input.size.is_some() {
                            return Err("--size does not apply to carpet and gasket".into());
                        }
                        if *name == ShapeName::Carpet {
                            Shape::Carpet(depth)
                        } else {
                            Shape::Gasket(depth)
                        }
                    }
                };
                let (label, param) = match shape {
                    Shape::Interval(k) => ("interval", k),
                    Shape::Square(k) => ("square", k),
                    Shape::Carpet(d) => ("carpet", d as usize),
                    Shape::Gasket(d) => ("gasket", d as usize),
                };
                Source::Shape(Shape::from_name(label, param).map_err(|e| e.to_string())?)
            }
            (None, Some(path)) => {
                if input.size.is_some() || input.depth.is_some() {
                    return Err("--size and --depth do not apply to --bitmap".into());
                }
                Source::Bitmap { path: path.clone(), threshold: input.threshold }
            }
            _ => return Err("exactly one of --shape and --bitmap is required".into()),
        };
        Ok(RunConfig { command: cli.command, source })
    }
}

impl Source {
    pub fn load(&self) -> Result<Continuum> {
        match self {
            Source::Shape(s) => Ok(Continuum::generate(*s)),
            Source::Bitmap { path, threshold } => load_bitmap(&Raster::open(path, *threshold)?),
        }
    }
}

/// Parses, validates and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let config = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    match run(&config) {
        Ok(()) => 0,
        Err(e) => {
            let body = json!({ "format_version": FORMAT_VERSION, "error": e.kind(), "message": e.to_string() });
            eprintln!("{body}");
            1
        }
    }
}

pub fn run(config: &RunConfig) -> Result<()> {
    let x = config.source.load()?;
    let default_levels = || x.resolution_level().unwrap_or(1).max(1);
    match &config.command {
        Command::Gen(a) => {
            let mut buf = Vec::new();
            writeln!(buf, "# format_version: {FORMAT_VERSION}")?;
            writeln!(buf, "id,x,y")?;
            for c in x.cells() {
                writeln!(buf, "{},{},{}", c.id, c.coords[0], c.coords[1])?;
            }
            emit(a.out.as_deref(), &buf)?;
            let summary = json!({
                "format_version": FORMAT_VERSION,
                "cells": x.len(),
                "edges": x.edges().len(),
                "scale": x.scale(),
                "resolution_level": x.resolution_level(),
            });
            if a.out.is_some() {
                println!("{summary}");
            }
        }
        Command::Cover(a) => {
            let table = sierpinski_table(&x, a.levels.unwrap_or_else(default_levels));
            let mut buf = Vec::new();
            table.write_csv(&mut buf)?;
            emit(a.out.as_deref(), &buf)?;
        }
        Command::Sdim(a) => {
            let report = dimension_report(&x, a.levels.unwrap_or_else(default_levels))?;
            emit_json(a.out.as_deref(), &report)?;
        }
        Command::Curve(a) => {
            let omega = ModulusSpec::power(a.modulus.holder_c, a.modulus.alpha)?;
            let built = assemble(&x, &omega, a.levels.unwrap_or_else(default_levels))?;
            let mut buf = Vec::new();
            built.curve.write_csv(&x, &mut buf)?;
            emit(a.out.as_deref(), &buf)?;
            if let Some(path) = &a.cert {
                write_json(path, &built.certificate)?;
            }
            if let Some(path) = &a.svg {
                std::fs::write(path, render_svg(&built.curve, &x))?;
            }
            built.certificate.check()?;
        }
        Command::Verify(a) => {
            let omega = ModulusSpec::power(a.modulus.holder_c, a.modulus.alpha)?;
            let curve = read_curve(&a.curve, &x)?;
            let limit = omega.inverse(1.0).unwrap_or(curve.s).min(curve.s);
            let grid = modulus_grid(&curve, limit, a.modulus.seed, GRID_CAP);
            let report = verify_certificate(&x, &curve, &omega, &grid);
            emit_json(a.out.as_deref(), &report)?;
            if !report.passed {
                return Err(Error::CertificateFailure { level: 0, observed: report.worst_ratio, allowed: 1.0 });
            }
        }
        Command::Render(a) => {
            let curve = read_curve(&a.curve, &x)?;
            emit(a.svg.as_deref(), render_svg(&curve, &x).as_bytes())?;
        }
        Command::Report(a) => {
            let levels = a.levels.unwrap_or_else(default_levels);
            let omega = ModulusSpec::power(a.modulus.holder_c, a.modulus.alpha)?;
            let dims = dimension_report(&x, levels)?;
            let built = assemble(&x, &omega, levels)?;
            let fit = estimate_sdim(&built.table).ok();
            let bound =
                fit.and_then(|f| holder_bound(fit_constant(&built.table, f.slope), f.slope, a.modulus.alpha).ok());
            let report = json!({
                "format_version": FORMAT_VERSION,
                "cells": x.len(),
                "levels": levels,
                "dimensions": dims,
                "table": built.table.entries,
                "certificate": built.certificate,
                "s_bound": bound,
            });
            emit_json(a.out.as_deref(), &report)?;
            if let Some(path) = &a.cert {
                write_json(path, &built.certificate)?;
            }
            if let Some(path) = &a.svg {
                std::fs::write(path, render_svg(&built.curve, &x))?;
            }
        }
    }
    Ok(())
}

fn read_curve(path: &Path, x: &Continuum) -> Result<ParamCurve> {
    let file = File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let curve = ParamCurve::read_csv(BufReader::new(file))?;
    if let Some(b) = curve.breakpoints.iter().find(|b| b.cell >= x.len()) {
        return Err(Error::Io(format!("curve visits cell {} outside the continuum", b.cell)));
    }
    Ok(curve)
}

fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => std::io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

fn emit_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    match path {
        Some(p) => write_json(p, value),
        None => {
            let text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
            println!("{text}");
            Ok(())
        }
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}
