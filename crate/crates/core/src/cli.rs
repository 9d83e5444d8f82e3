//! The `mukai-walls` command line: flags, TOML job files and output.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, Zero};
use serde::Deserialize;

use crate::arith::{parse_rat, Int, Rat};
use crate::atlas::Window;
use crate::charge::StabilityPoint;
use crate::error::Error;
use crate::lattice::{MukaiVector, SurfaceLattice};
use crate::report::{default_probe, fill_cones, fill_markman, fill_stabilizer, fill_walls, AtlasReport};
use crate::svg::svg_render;

pub const BOUND_ENV: &str = "MUKAI_WALLS_BOUND";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_UNDECIDED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "mukai-walls", version, about = "Exact Bridgeland walls, chambers and cones for Mukai vectors")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Walls in a window, their codimension, the chamber of a probe point
    Walls(JobArgs),
    /// s±, boundary rays, trichotomy, nef and movable rays
    Cones(JobArgs),
    /// The stabilizer generator of v
    Stab(JobArgs),
    /// Markman invariants of square -⟨v²⟩ classes (default: the d_u classes)
    ClassifyExceptional(JobArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct JobArgs {
    /// TOML job file; flags override its values
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// rank-1 surface with (H²) = 2n
    #[arg(long)]
    pub n: Option<String>,
    /// Gram matrix of NS, rows separated by ';'
    #[arg(long)]
    pub gram: Option<String>,
    /// ample class for --gram
    #[arg(long)]
    pub ample: Option<String>,
    /// Mukai vector "r,d,a" (or "r,c1...,a")
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
    /// "s_lo:s_hi,t_lo:t_hi" with t (not t²)
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<String>,
    /// probe point "s,t"
    #[arg(long, allow_hyphen_values = true)]
    pub probe: Option<String>,
    /// search bound for the wall existence decision
    #[arg(long)]
    pub bound: Option<String>,
    /// class to classify (repeatable)
    #[arg(long = "e", allow_hyphen_values = true)]
    pub classes: Vec<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// output path; with `both` the extensions .json and .svg are added
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// reject non-primitive v before any computation
    #[arg(long)]
    pub require_primitive: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Svg,
    Both,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    #[serde(default)]
    surface: FileSurface,
    vector: Option<Vec<i64>>,
    window: Option<String>,
    probe: Option<String>,
    #[serde(default)]
    bounds: FileBounds,
    #[serde(default)]
    output: FileOutput,
    #[serde(default)]
    classes: Vec<Vec<i64>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileSurface {
    n: Option<i64>,
    gram: Option<Vec<Vec<i64>>>,
    ample: Option<Vec<i64>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileBounds {
    walls: Option<i64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileOutput {
    format: Option<Format>,
    path: Option<PathBuf>,
}

/// A fully resolved job.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub surface: SurfaceLattice,
    pub n: Option<Int>,
    pub v: MukaiVector,
    pub window: Option<Window>,
    pub probe: Option<StabilityPoint>,
    pub bound: Option<Int>,
    pub classes: Vec<MukaiVector>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub require_primitive: bool,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError { code: EXIT_USAGE, message: msg.into() }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Undecided(_) => EXIT_UNDECIDED,
            Error::Parse(_) | Error::InvalidWindow(_) => EXIT_USAGE,
            _ => EXIT_PRECONDITION,
        };
        CliError { code, message: e.to_string() }
    }
}

fn ints(s: &str, sep: char) -> Result<Vec<Int>, CliError> {
    s.split(sep).map(|x| x.trim().parse::<Int>().map_err(|_| usage(format!("not an integer list: {s}")))).collect()
}

fn vector_from(xs: Vec<Int>) -> Result<MukaiVector, CliError> {
    if xs.len() < 3 {
        return Err(usage("a Mukai vector needs at least three entries"));
    }
    let a = xs[xs.len() - 1].clone();
    Ok(MukaiVector::new(xs[0].clone(), xs[1..xs.len() - 1].to_vec(), a))
}

fn interval(s: &str) -> Result<(Rat, Rat), CliError> {
    let bad = || usage(format!("malformed interval: {s}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    Ok((parse_rat(a).ok_or_else(bad)?, parse_rat(b).ok_or_else(bad)?))
}

/// "s_lo:s_hi,t_lo:t_hi", decimals read exactly, t squared.
pub fn parse_window(s: &str) -> Result<Window, CliError> {
    let (sp, tp) = s.split_once(',').ok_or_else(|| usage(format!("malformed window: {s}")))?;
    let (s_lo, s_hi) = interval(sp)?;
    let (t_lo, t_hi) = interval(tp)?;
    Window::from_t(s_lo, s_hi, t_lo, t_hi).map_err(|e| usage(e.to_string()))
}

fn parse_probe(s: &str) -> Result<StabilityPoint, CliError> {
    let bad = || usage(format!("malformed probe: {s}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let t = parse_rat(b).ok_or_else(bad)?;
    Ok(StabilityPoint::rank_one(parse_rat(a).ok_or_else(bad)?, &t * &t))
}

fn parse_bound(s: &str) -> Result<Int, CliError> {
    s.trim().parse::<Int>().map_err(|_| usage(format!("bound is not an integer: {s}")))
}

impl JobConfig {
    /// Flags override the job file; the environment only supplies a default bound.
    pub fn resolve(args: &JobArgs, env_bound: Option<&str>) -> Result<JobConfig, CliError> {
        let file: FileConfig = match &args.config {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
                toml::from_str(&text).map_err(|e| usage(format!("{}: {e}", p.display())))?
            }
            None => FileConfig::default(),
        };
        let to_int = |x: &i64| Int::from(*x);
        let n = match (&args.n, file.surface.n) {
            (Some(s), _) => Some(parse_bound(s)?),
            (None, Some(n)) => Some(Int::from(n)),
            (None, None) => None,
        };
        let gram: Option<Vec<Vec<Int>>> = match (&args.gram, &file.surface.gram) {
            (Some(s), _) => Some(s.split(';').map(|row| ints(row, ',')).collect::<Result<_, _>>()?),
            (None, Some(g)) => Some(g.iter().map(|row| row.iter().map(to_int).collect()).collect()),
            (None, None) => None,
        };
        let surface = match (&n, gram) {
            (Some(n), _) => SurfaceLattice::rank_one(n.clone())?,
            (None, Some(g)) => {
                let ample = match (&args.ample, &file.surface.ample) {
                    (Some(s), _) => ints(s, ',')?,
                    (None, Some(a)) => a.iter().map(to_int).collect(),
                    (None, None) => return Err(usage("--gram needs --ample")),
                };
                SurfaceLattice::new(g, ample)?
            }
            (None, None) => return Err(usage("give --n or --gram")),
        };
        let v = match (&args.v, &file.vector) {
            (Some(s), _) => vector_from(ints(s, ',')?)?,
            (None, Some(xs)) => vector_from(xs.iter().map(to_int).collect())?,
            (None, None) => return Err(usage("missing --v")),
        };
        let window = args.window.as_deref().or(file.window.as_deref()).map(parse_window).transpose()?;
        let probe = args.probe.as_deref().or(file.probe.as_deref()).map(parse_probe).transpose()?;
        let bound = match (&args.bound, file.bounds.walls, env_bound) {
            (Some(s), _, _) => Some(parse_bound(s)?),
            (None, Some(b), _) => Some(Int::from(b)),
            (None, None, Some(s)) => Some(parse_bound(s)?),
            _ => None,
        };
        let classes = if args.classes.is_empty() {
            file.classes.into_iter().map(|c| vector_from(c.into_iter().map(Int::from).collect())).collect::<Result<_, _>>()?
        } else {
            args.classes.iter().map(|c| vector_from(ints(c, ',')?)).collect::<Result<_, _>>()?
        };
        Ok(JobConfig {
            surface,
            n,
            v,
            window,
            probe,
            bound,
            classes,
            format: args.format.or(file.output.format).unwrap_or(Format::Json),
            out: args.out.clone().or(file.output.path),
            require_primitive: args.require_primitive,
        })
    }
}

pub struct Output {
    pub json: String,
    pub svg: Option<String>,
    pub code: i32,
}

fn rank_one_n(job: &JobConfig) -> Result<Int, CliError> {
    Ok(job.n.clone().map_or_else(|| job.surface.require_rank_one(), Ok)?)
}

pub fn cmd_walls(job: &JobConfig) -> Result<Output, CliError> {
    let win = job.window.as_ref().ok_or_else(|| usage("walls needs --window"))?;
    let n = rank_one_n(job)?;
    let mut rep = AtlasReport::new(&n, &job.v, Some(win), job.bound.as_ref());
    let undecided = fill_walls(&mut rep, &job.surface, &job.v, win, job.probe.as_ref(), job.bound.as_ref())?;
    let svg = match job.format {
        Format::Json => None,
        _ => Some(svg_render(&rep, win)?),
    };
    Ok(Output { json: rep.to_json(), svg, code: if undecided { EXIT_UNDECIDED } else { EXIT_OK } })
}

pub fn cmd_cones(job: &JobConfig) -> Result<Output, CliError> {
    let n = rank_one_n(job)?;
    let (l, v) = (&job.surface, &job.v);
    let mut rep = AtlasReport::new(&n, v, job.window.as_ref(), job.bound.as_ref());
    let probe = match (&job.probe, &job.window) {
        (Some(p), _) => p.clone(),
        (None, Some(w)) => {
            let (s, t2) = w.center();
            default_probe(l, v, s, t2, &(&w.s_hi - &w.s_lo))?
        }
        (None, None) => {
            let s = if v.r.is_zero() { Rat::zero() } else { Rat::new(v.c1[0].clone(), v.r.clone()) };
            default_probe(l, v, s, Rat::one(), &Rat::one())?
        }
    };
    fill_cones(&mut rep, l, v, &probe);
    if let Err(e) = fill_stabilizer(&mut rep, l, v) {
        rep.cones.as_mut().unwrap().errors.push(format!("stabilizer: {e}"));
    }
    let svg = match (job.format, &job.window) {
        (Format::Json, _) => None,
        (_, Some(w)) => Some(svg_render(&rep, w)?),
        (_, None) => return Err(usage("SVG output needs --window")),
    };
    Ok(Output { json: rep.to_json(), svg, code: EXIT_OK })
}

pub fn cmd_stab(job: &JobConfig) -> Result<Output, CliError> {
    let n = rank_one_n(job)?;
    let mut rep = AtlasReport::new(&n, &job.v, None, None);
    fill_stabilizer(&mut rep, &job.surface, &job.v)?;
    Ok(Output { json: rep.to_json(), svg: None, code: EXIT_OK })
}

pub fn cmd_classify_exceptional(job: &JobConfig) -> Result<Output, CliError> {
    let n = rank_one_n(job)?;
    let mut rep = AtlasReport::new(&n, &job.v, None, None);
    fill_markman(&mut rep, &job.surface, &job.v, &job.classes)?;
    Ok(Output { json: rep.to_json(), svg: None, code: EXIT_OK })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError { code: 1, message: format!("{}: {e}", path.display()) })
}

fn emit(job: &JobConfig, out: &Output, stdout: &mut dyn Write) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError { code: 1, message: e.to_string() };
    match (job.format, &job.out, &out.svg) {
        (Format::Json, None, _) => stdout.write_all(out.json.as_bytes()).map_err(io)?,
        (Format::Json, Some(p), _) => write_file(p, &out.json)?,
        (Format::Svg, None, Some(svg)) => stdout.write_all(svg.as_bytes()).map_err(io)?,
        (Format::Svg, Some(p), Some(svg)) => write_file(p, svg)?,
        (Format::Both, Some(p), Some(svg)) => {
            write_file(&p.with_extension("json"), &out.json)?;
            write_file(&p.with_extension("svg"), svg)?;
        }
        (Format::Both, None, _) => return Err(usage("--format both needs --out")),
        (_, _, None) => return Err(usage("this subcommand has no SVG output")),
    }
    Ok(())
}

/// Parse, run and write; returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    let env_bound = std::env::var(BOUND_ENV).ok();
    let result = (|| {
        let (args, f): (&JobArgs, fn(&JobConfig) -> Result<Output, CliError>) = match &cli.command {
            Command::Walls(a) => (a, cmd_walls),
            Command::Cones(a) => (a, cmd_cones),
            Command::Stab(a) => (a, cmd_stab),
            Command::ClassifyExceptional(a) => (a, cmd_classify_exceptional),
        };
        let job = JobConfig::resolve(args, env_bound.as_deref())?;
        if job.require_primitive && !job.v.is_primitive() {
            return Err(CliError::from(Error::NotPrimitive(job.v.to_string())));
        }
        let out = f(&job)?;
        emit(&job, &out, stdout)?;
        Ok(out.code)
    })();
    match result {
        Ok(code) => {
            if code == EXIT_UNDECIDED {
                let _ = writeln!(stderr, "wall existence undecided within the search bound");
            }
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}
