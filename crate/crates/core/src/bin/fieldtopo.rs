//! Command-line front end. Reports go to stdout (or `--out`) as JSON.
//!
//! Exit codes: 0 pass, 1 theorem failed, 2 parse error, 3 invalid mesh,
//! 4 field does not match mesh, 5 wrong topology for the command,
//! 6 infeasible singularity targets, 7 usage or I/O error,
//! 8 a measured index or turning number is not close to a multiple of 1/n.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use fieldtopo::field::io::{parse_field, parse_targets, write_csv, write_field, write_svg};
use fieldtopo::mesh::io::{load_mesh, write_obj, write_off, MeshFormat};
use fieldtopo::mesh::{boundary_loops, close_all_boundaries, equivalence_basis, vertex_link_cycle};
use fieldtopo::theorems::{self, TheoremError};
use fieldtopo::{Cycle, CycleKind, DirectionField, FieldError, MeshError, Rational, Surface, REPORT_SCHEMA};

#[derive(Parser)]
#[command(name = "fieldtopo", version, about = "Exact topology checks for n-symmetry direction fields")]
struct Cli {
    /// Snap tolerance in turns per cycle edge.
    #[arg(long, global = true, value_parser = positive_float)]
    tolerance: Option<f64>,
    /// Mesh file format; guessed from the extension when omitted.
    #[arg(long, global = true)]
    format: Option<MeshFormat>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Counts, Euler characteristic, genus and boundary loops.
    Info(MeshArg),
    /// Nonzero interior singularity indices.
    Indices(FieldArgs),
    /// Turning numbers along boundary loops and homology generators, or
    /// along one vertex link or user cycle.
    Turning(TurningArgs),
    /// Poincaré–Hopf on closed meshes, the boundary number otherwise.
    Check(CheckArgs),
    /// Caps every boundary loop with a cone.
    Close(CloseArgs),
    /// Closes a disk into a sphere and compares vertex and apex turning.
    Duality(DualityArgs),
    /// Writes a constant, random or prescribed field.
    Gen(GenArgs),
    /// Compares two fields by turning numbers and vertex indices.
    Equiv(EquivArgs),
}

#[derive(Args)]
struct MeshArg {
    #[arg(long)]
    mesh: PathBuf,
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long)]
    mesh: PathBuf,
    #[arg(long)]
    field: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TurningArgs {
    #[command(flatten)]
    input: FieldArgs,
    /// Measure along the link of this interior vertex.
    #[arg(long, conflicts_with = "cycle")]
    vertex: Option<usize>,
    /// Measure along this closed vertex path, e.g. "3 8 9 4".
    #[arg(long)]
    cycle: Option<String>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    mesh: PathBuf,
    #[arg(long, required_unless_present = "seeds")]
    field: Option<PathBuf>,
    /// Check random fields for every seed in `A..B` instead of a field file.
    #[arg(long, value_parser = seed_range, requires = "n", conflicts_with = "field")]
    seeds: Option<Range<u64>>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, default_value_t = 1)]
    jump_range: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CloseArgs {
    #[arg(long)]
    mesh: PathBuf,
    /// Closed mesh path; written as OFF unless `--format obj` or a `.obj` name.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct DualityArgs {
    #[command(flatten)]
    input: FieldArgs,
    /// Regular vertex to use when the disk has no singularity.
    #[arg(long)]
    vertex: Option<usize>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    mesh: PathBuf,
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Uniform random angles and jumps.
    #[arg(long, conflicts_with = "prescribe")]
    random: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jump_range: u32,
    /// Target list, one `vertex num den` per line.
    #[arg(long, alias = "targets")]
    prescribe: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct EquivArgs {
    #[arg(long)]
    mesh: PathBuf,
    #[arg(long)]
    field: PathBuf,
    #[arg(long)]
    field2: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn positive_float(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

fn seed_range(s: &str) -> Result<Range<u64>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: u64 = a.parse().map_err(|_| format!("invalid seed {a:?}"))?;
    let b: u64 = b.parse().map_err(|_| format!("invalid seed {b:?}"))?;
    if a >= b {
        return Err(format!("empty seed range {s:?}"));
    }
    Ok(a..b)
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: 7, message: message.into() }
    }
}

impl From<MeshError> for Failure {
    fn from(e: MeshError) -> Self {
        let code = match e {
            MeshError::Parse { .. } => 2,
            MeshError::NoSuchVertex(_) | MeshError::BoundaryVertex(_) | MeshError::InvalidCycle(_) => 7,
            MeshError::NotABoundaryLoop | MeshError::NotConnected(_) => 5,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<FieldError> for Failure {
    fn from(e: FieldError) -> Self {
        let code = match e {
            FieldError::Mesh(m) => return m.into(),
            FieldError::Parse { .. } => 2,
            FieldError::Mismatch(_) | FieldError::NotAdjacent(..) => 4,
            FieldError::Infeasible { .. } | FieldError::NonIntegralTarget { .. } => 6,
            FieldError::InvalidOrder(_) => 7,
            FieldError::SnapResidual { .. } => 8,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<TheoremError> for Failure {
    fn from(e: TheoremError) -> Self {
        let code = match e {
            TheoremError::Field(f) => return f.into(),
            TheoremError::HasBoundary(_) | TheoremError::Closed | TheoremError::NotADisk { .. } => 5,
            TheoremError::OrderMismatch(..) => 4,
            TheoremError::Designated { .. } => 7,
        };
        Failure { code, message: e.to_string() }
    }
}

struct Context {
    tolerance: Option<f64>,
    format: Option<MeshFormat>,
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    String::from_utf8(read(path)?).map_err(|_| Failure { code: 2, message: format!("{} is not UTF-8", path.display()) })
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, value: &impl Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("reports always serialize");
    match out {
        Some(path) => write(path, &(text + "\n")),
        None => {
            // a closed pipe downstream is not our failure
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            Ok(())
        }
    }
}

impl Context {
    fn format_for(&self, path: &Path) -> Result<MeshFormat, Failure> {
        self.format
            .or_else(|| MeshFormat::from_extension(path))
            .ok_or_else(|| Failure::usage(format!("cannot tell the format of {}; pass --format", path.display())))
    }

    fn surface(&self, path: &Path) -> Result<Surface, Failure> {
        let mesh = load_mesh(&read(path)?, self.format_for(path)?)?;
        let surface = Surface::new(mesh)?;
        Ok(match self.tolerance {
            Some(t) => surface.with_tolerance(t),
            None => surface,
        })
    }

    fn field(&self, surface: &Surface, path: &Path) -> Result<DirectionField, Failure> {
        Ok(parse_field(&read_text(path)?, surface.mesh())?)
    }
}

fn verdict_code(pass: bool) -> u8 {
    if pass {
        0
    } else {
        1
    }
}

fn cmd_info(ctx: &Context, args: &MeshArg) -> Result<u8, Failure> {
    let mesh = load_mesh(&read(&args.mesh)?, ctx.format_for(&args.mesh)?)?;
    let loops: Vec<usize> = boundary_loops(&mesh).iter().map(Cycle::len).collect();
    let components = mesh.component_faces().len();
    let genus = if components == 1 { Some(mesh.genus()?) } else { None };
    emit(
        None,
        &json!({
            "schema": REPORT_SCHEMA,
            "V": mesh.num_vertices(),
            "E": mesh.num_edges(),
            "F": mesh.num_faces(),
            "chi": mesh.euler_characteristic(),
            "genus": genus,
            "components": components,
            "boundaryLoops": loops,
        }),
    )?;
    Ok(0)
}

fn cmd_indices(ctx: &Context, args: &FieldArgs) -> Result<u8, Failure> {
    let surface = ctx.surface(&args.mesh)?;
    let field = ctx.field(&surface, &args.field)?;
    let summary = surface.total_index(&field)?;
    emit(
        args.out.as_deref(),
        &json!({
            "schema": REPORT_SCHEMA,
            "n": field.order(),
            "singularities": summary.records,
            "interiorSum": summary.interior_sum,
            "maxSnapResidual": summary.max_residual,
        }),
    )?;
    Ok(0)
}

fn cmd_turning(ctx: &Context, args: &TurningArgs) -> Result<u8, Failure> {
    let surface = ctx.surface(&args.input.mesh)?;
    let field = ctx.field(&surface, &args.input.field)?;
    let mesh = surface.mesh();
    let cycles = if let Some(v) = args.vertex {
        vec![vertex_link_cycle(mesh, v)?]
    } else if let Some(spec) = &args.cycle {
        let vertices = spec
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Failure::usage(format!("invalid vertex {t:?} in --cycle"))))
            .collect::<Result<Vec<_>, _>>()?;
        vec![Cycle::from_vertices(mesh, &vertices, CycleKind::User)?]
    } else {
        equivalence_basis(mesh)?
    };
    let mut rows = Vec::with_capacity(cycles.len());
    for cycle in &cycles {
        let snapped = surface.turning_snap(&field, cycle)?;
        rows.push(json!({
            "kind": cycle.kind(),
            "length": cycle.len(),
            "vertices": cycle.vertices(mesh),
            "turning": snapped.value,
            "snapResidual": snapped.residual,
        }));
    }
    emit(args.input.out.as_deref(), &json!({ "schema": REPORT_SCHEMA, "n": field.order(), "cycles": rows }))?;
    Ok(0)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SeedOutcome {
    seed: u64,
    verdict: bool,
    lhs: Rational,
    rhs: Rational,
}

fn cmd_check(ctx: &Context, args: &CheckArgs) -> Result<u8, Failure> {
    let surface = ctx.surface(&args.mesh)?;
    if let Some(seeds) = args.seeds.clone() {
        let n = args.n.expect("clap requires --n with --seeds");
        let mut outcomes = seeds
            .into_par_iter()
            .map(|seed| {
                let field = surface.random_field(n, seed, args.jump_range)?;
                let report = theorems::check_surface(&surface, &field)?;
                Ok(SeedOutcome { seed, verdict: report.verdict, lhs: report.lhs, rhs: report.rhs })
            })
            .collect::<Result<Vec<_>, TheoremError>>()?;
        outcomes.sort_by_key(|o| o.seed);
        let passed = outcomes.iter().filter(|o| o.verdict).count();
        let all = passed == outcomes.len();
        emit(
            args.out.as_deref(),
            &json!({
                "schema": REPORT_SCHEMA,
                "n": n,
                "jumpRange": args.jump_range,
                "passed": passed,
                "total": outcomes.len(),
                "verdict": all,
                "seeds": outcomes,
            }),
        )?;
        return Ok(verdict_code(all));
    }
    let path = args.field.as_deref().expect("clap requires --field without --seeds");
    let field = ctx.field(&surface, path)?;
    let report = theorems::check_surface(&surface, &field)?;
    emit(args.out.as_deref(), &report)?;
    Ok(verdict_code(report.verdict))
}

fn cmd_close(ctx: &Context, args: &CloseArgs) -> Result<u8, Failure> {
    let mesh = load_mesh(&read(&args.mesh)?, ctx.format_for(&args.mesh)?)?;
    let (closed, apexes) = close_all_boundaries(&mesh)?;
    let out_format = ctx.format.or_else(|| MeshFormat::from_extension(&args.out)).unwrap_or(MeshFormat::Off);
    let text = match out_format {
        MeshFormat::Off => write_off(&closed, mesh.num_vertices()),
        MeshFormat::Obj => write_obj(&closed),
    };
    write(&args.out, &text)?;
    emit(
        None,
        &json!({
            "schema": REPORT_SCHEMA,
            "apexes": apexes,
            "V": closed.num_vertices(),
            "E": closed.num_edges(),
            "F": closed.num_faces(),
            "chi": closed.euler_characteristic(),
        }),
    )?;
    Ok(0)
}

fn beside(out: &Path, suffix: &str) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "duality".into());
    out.with_file_name(format!("{stem}{suffix}"))
}

fn cmd_duality(ctx: &Context, args: &DualityArgs) -> Result<u8, Failure> {
    let surface = ctx.surface(&args.input.mesh)?;
    let field = ctx.field(&surface, &args.input.field)?;
    let report = theorems::disk_sphere_duality(&surface, &field, args.vertex)?;
    if let Some(out) = &args.input.out {
        let closed = theorems::close_disk_field(&surface, &field)?;
        let mesh = closed.surface.mesh();
        write(&beside(out, ".closed.off"), &write_off(mesh, surface.mesh().num_vertices()))?;
        write(&beside(out, ".closed.nsym"), &write_field(&closed.field, mesh))?;
    }
    emit(args.input.out.as_deref(), &report)?;
    Ok(verdict_code(report.duality_residual.is_some_and(|r| r.is_zero())))
}

fn cmd_gen(ctx: &Context, args: &GenArgs) -> Result<u8, Failure> {
    let surface = ctx.surface(&args.mesh)?;
    let field = if let Some(path) = &args.prescribe {
        let targets: BTreeMap<usize, Rational> = parse_targets(&read_text(path)?)?;
        surface.prescribe_singularities(args.n, &targets)?
    } else if args.random {
        surface.random_field(args.n, args.seed, args.jump_range)?
    } else {
        surface.constant_field(args.n)?
    };
    write(&args.out, &write_field(&field, surface.mesh()))?;
    if let Some(svg) = &args.svg {
        write(svg, &write_svg(&field, surface.mesh(), surface.frames()))?;
    }
    if let Some(csv) = &args.csv {
        write(csv, &write_csv(&field, surface.mesh(), surface.frames()))?;
    }
    Ok(0)
}

fn cmd_equiv(ctx: &Context, args: &EquivArgs) -> Result<u8, Failure> {
    let surface = ctx.surface(&args.mesh)?;
    let first = ctx.field(&surface, &args.field)?;
    let second = ctx.field(&surface, &args.field2)?;
    let basis = equivalence_basis(surface.mesh())?;
    let report = theorems::topological_equivalence(&surface, &first, &second, &basis)?;
    emit(args.out.as_deref(), &report)?;
    Ok(verdict_code(report.verdict))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let ctx = Context { tolerance: cli.tolerance, format: cli.format };
    match &cli.command {
        Command::Info(a) => cmd_info(&ctx, a),
        Command::Indices(a) => cmd_indices(&ctx, a),
        Command::Turning(a) => cmd_turning(&ctx, a),
        Command::Check(a) => cmd_check(&ctx, a),
        Command::Close(a) => cmd_close(&ctx, a),
        Command::Duality(a) => cmd_duality(&ctx, a),
        Command::Gen(a) => cmd_gen(&ctx, a),
        Command::Equiv(a) => cmd_equiv(&ctx, a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 7 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
