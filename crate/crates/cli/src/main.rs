//! `manistrip` command-line front end.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use manistrip::boundary::strip_with_boundary;
use manistrip::io::{load_mesh, save_mesh, MeshFormat};
use manistrip::meshgen::{generate, GenSpec};
use manistrip::output::{read_order, write_stats, StripMode, StripResult};
use manistrip::sfc::{direct_order, export_curve, generate_curve, CurveFormat};
use manistrip::striploop::{stripify, verify_cycle, verify_strip};
use manistrip::{Error, Mesh};

const USAGE: u8 = 1;
const PARSE: u8 = 2;
const VALIDATION: u8 = 3;
const PIPELINE: u8 = 4;

#[derive(Parser)]
#[command(name = "manistrip", version, about = "Single-loop and single-strip triangulation of manifold meshes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Off,
    Obj,
}

impl From<Format> for MeshFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Off => MeshFormat::Off,
            Format::Obj => MeshFormat::Obj,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CurveKind {
    Obj,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Torus,
    Icosphere,
    Tetrahedron,
    Octahedron,
    Fan,
    Mk,
}

#[derive(Args)]
struct Input {
    /// Input mesh (OFF or OBJ).
    input: PathBuf,
    /// Input format; taken from the extension when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct Outputs {
    /// Directory for mesh.obj, order.txt and stats.json.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Extra copy of the stats JSON.
    #[arg(long)]
    stats: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated test mesh.
    Gen {
        #[arg(value_enum)]
        kind: Kind,
        /// Generator parameters: `torus P Q`, `icosphere S`, `fan M`, `mk K`.
        params: Vec<usize>,
        #[arg(long, value_enum, default_value = "off")]
        format: Format,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Single triangle cycle for a closed mesh.
    Stripify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        outputs: Outputs,
    },
    /// Single open strip for a mesh with boundary.
    StripifyBoundary {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        outputs: Outputs,
    },
    /// Space-filling curve along a strip order.
    Sfc {
        #[command(flatten)]
        input: Input,
        /// Subdivision depth.
        #[arg(long, default_value_t = 0)]
        depth: u32,
        /// Order file for an already processed mesh; without it the mesh
        /// is processed first and its artifacts are written too.
        #[arg(long)]
        order: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "obj")]
        curve_format: CurveKind,
        #[command(flatten)]
        outputs: Outputs,
    },
    /// Check an order file against a mesh.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Order file (`cycle <n>` or `strip <n>` header).
        order: PathBuf,
    },
    /// Process a mesh and print its stats JSON without writing artifacts.
    Stats {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        stats: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::BadParameter(_) | Error::DepthOverflow(_) => USAGE,
            Error::Io { .. } | Error::Parse { .. } => PARSE,
            Error::IndexOutOfRange { .. }
            | Error::DegenerateTriangle { .. }
            | Error::DuplicateTriangle { .. }
            | Error::Invalid(_)
            | Error::HasBoundary
            | Error::Closed
            | Error::TooSmall(_) => VALIDATION,
            _ => PIPELINE,
        };
        let message = match &e {
            Error::HasBoundary => format!("{e}; use `stripify-boundary` for meshes with boundary"),
            Error::Closed => format!("{e}; use `stripify` for closed meshes"),
            _ => e.to_string(),
        };
        Failure { code, message }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn load(input: &Input) -> Result<Mesh, Failure> {
    let format = match input.format {
        Some(f) => f.into(),
        None => MeshFormat::from_path(&input.input).ok_or_else(|| {
            fail(USAGE, format!("cannot tell the format of {}; pass --format", input.input.display()))
        })?,
    };
    Ok(load_mesh(&input.input, format)?)
}

fn write_outputs(result: &StripResult, outputs: &Outputs) -> Result<(), Failure> {
    result.write_artifacts(&outputs.out)?;
    if let Some(path) = &outputs.stats {
        write_stats(path, &result.stats)?;
    }
    Ok(())
}

fn gen_spec(kind: Kind, params: &[usize]) -> Result<GenSpec, Failure> {
    let want = |n: usize| {
        if params.len() == n {
            Ok(())
        } else {
            Err(fail(USAGE, format!("expected {n} parameter(s), got {}", params.len())))
        }
    };
    let small = |x: usize| u32::try_from(x).map_err(|_| fail(USAGE, format!("parameter {x} is too large")));
    Ok(match kind {
        Kind::Torus => {
            want(2)?;
            GenSpec::Torus {
                p: params[0],
                q: params[1],
            }
        }
        Kind::Icosphere => {
            want(1)?;
            GenSpec::Icosphere { s: small(params[0])? }
        }
        Kind::Tetrahedron => {
            want(0)?;
            GenSpec::Tetrahedron
        }
        Kind::Octahedron => {
            want(0)?;
            GenSpec::Octahedron
        }
        Kind::Fan => {
            want(1)?;
            GenSpec::Fan { m: params[0] }
        }
        Kind::Mk => {
            want(1)?;
            GenSpec::Mk { k: small(params[0])? }
        }
    })
}

/// Closed meshes go through the cycle pipeline, others through the strip one.
fn process(mesh: &Mesh) -> Result<StripResult, Failure> {
    if mesh.triangle_count() > 0 && mesh.is_closed() {
        Ok(stripify(mesh)?)
    } else {
        Ok(strip_with_boundary(mesh)?)
    }
}

fn print_stats(result: &StripResult) {
    println!("{}", result.stats.to_json());
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen {
            kind,
            params,
            format,
            out,
        } => {
            let spec = gen_spec(kind, &params)?;
            let mesh = generate(spec)?;
            let format: MeshFormat = format.into();
            fs::create_dir_all(&out).map_err(|e| fail(PARSE, format!("{}: {e}", out.display())))?;
            let path = out.join(format!("{spec}.{}", format.extension()));
            save_mesh(&mesh, &path, format)?;
            println!("{}", path.display());
        }
        Command::Stripify { input, outputs } => {
            let result = stripify(&load(&input)?)?;
            write_outputs(&result, &outputs)?;
            print_stats(&result);
        }
        Command::StripifyBoundary { input, outputs } => {
            let result = strip_with_boundary(&load(&input)?)?;
            write_outputs(&result, &outputs)?;
            print_stats(&result);
        }
        Command::Sfc {
            input,
            depth,
            order,
            curve_format,
            outputs,
        } => {
            let mesh = load(&input)?;
            let (mesh, order, mode) = match order {
                Some(path) => {
                    let (mode, order) = read_order(&path)?;
                    (mesh, order, mode)
                }
                None => {
                    let result = process(&mesh)?;
                    write_outputs(&result, &outputs)?;
                    (result.mesh, result.order, result.mode)
                }
            };
            let check = match mode {
                StripMode::Cycle => verify_cycle(mesh.triangles(), &order),
                StripMode::Strip => verify_strip(mesh.triangles(), &order),
            };
            if let Some(v) = check.violation {
                return Err(fail(PIPELINE, format!("order is not valid: {v}")));
            }
            let dc = direct_order(&mesh, &order, mode == StripMode::Cycle)?;
            let curve = generate_curve(&mesh, &dc, depth)?;
            let (format, name) = match curve_format {
                CurveKind::Obj => (CurveFormat::Obj, "curve.obj"),
                CurveKind::Json => (CurveFormat::Json, "curve.json"),
            };
            fs::create_dir_all(&outputs.out).map_err(|e| fail(PARSE, format!("{}: {e}", outputs.out.display())))?;
            let path = outputs.out.join(name);
            export_curve(&curve, &path, format)?;
            println!("{}", path.display());
        }
        Command::Verify { input, order } => {
            let mesh = load(&input)?;
            let (mode, order) = read_order(&order)?;
            let check = match mode {
                StripMode::Cycle => verify_cycle(mesh.triangles(), &order),
                StripMode::Strip => verify_strip(mesh.triangles(), &order),
            };
            println!("{}", serde_json::to_string(&check).expect("verification serializes"));
            if let Some(v) = check.violation {
                return Err(fail(PIPELINE, format!("verification failed: {v}")));
            }
        }
        Command::Stats { input, stats } => {
            let result = process(&load(&input)?)?;
            if let Some(path) = stats {
                write_stats(&path, &result.stats)?;
            }
            print_stats(&result);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
