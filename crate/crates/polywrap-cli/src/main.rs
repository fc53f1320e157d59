//! Command-line front end: transforms, canonicalization, random walks with
//! statistics, family generation, enumeration, trace replay and rendering.

mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use polywrap::geom::PointSet;
use polywrap::instances::{
    enumerate_polygonizations, gen_pocket_chain, gen_quadratic_cascade, initial_polygonization,
    make_family, random_points, FamilySpec,
};
use polywrap::io::{
    read_trace, replay_trace, write_trace, PointSetFile, PolygonizationFile, TransformSummary,
    WrapFile,
};
use polywrap::moves::{make_policy, CascadePolicy, MoveEngine};
use polywrap::observe::CheckLevel;
use polywrap::transforms::{canonical_polygonization, transform};
use polywrap::walks::{random_walk, WalkOptions};
use polywrap::wrap::{cyclic_equal_seq, Polygonization, Wrap};

const EXIT_PARSE: u8 = 2;
const EXIT_NOT_SIMPLE: u8 = 3;
const EXIT_INVARIANT: u8 = 4;

#[derive(Parser)]
#[command(name = "polywrap", about = "Polygonal wraps: moves, transforms, and instances")]
struct Cli {
    /// Invariant check level: off, boundaries, every-atomic. The
    /// POLYWRAP_CHECK_LEVEL environment variable overrides this.
    #[arg(long, global = true, default_value = "boundaries")]
    check_level: String,

    /// Cascade policy name (fifo or random).
    #[arg(long, global = true, default_value = "fifo")]
    policy: String,

    /// Seed for randomized policies and generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transform one polygonization into another via forward and reverse
    /// moves; writes a JSONL trace and a summary.
    Transform(TransformArgs),
    /// Canonicalize a one-pocket polygonization.
    Canonical(CanonicalArgs),
    /// Random walk by forward moves with cascade statistics.
    RandomWalk(RandomWalkArgs),
    /// Generate a named instance family.
    Gen(GenArgs),
    /// Enumerate all polygonizations of a small point set.
    Enumerate(EnumerateArgs),
    /// Sweep cascade/move counts over instance families; CSV output.
    Stats(StatsArgs),
    /// Render a wrap or a trace to SVG frames.
    Render(RenderArgs),
}

#[derive(Args)]
struct TransformArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    from: PathBuf,
    #[arg(long)]
    to: PathBuf,
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Args)]
struct CanonicalArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    poly: PathBuf,
    /// Lid edge as two corner indices, e.g. 0,1
    #[arg(long)]
    lid: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RandomWalkArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    steps: usize,
    /// Grid scale for the random point set.
    #[arg(long, default_value_t = 4096)]
    scale: i64,
    /// Permit seeded stretch injections inside cascades.
    #[arg(long)]
    inject_stretches: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// Family name: pow2k, quad-cascade, pinwheel, pocket-chain, random.
    #[arg(long)]
    family: String,
    /// Gadget count (pow2k).
    #[arg(long)]
    k: Option<usize>,
    /// Point count (quad-cascade, random) or pocket count (pocket-chain).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 4096)]
    scale: i64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    points: PathBuf,
}

#[derive(Args)]
struct StatsArgs {
    /// Comma-separated families to sweep (quad-cascade, pocket-chain).
    #[arg(long, default_value = "quad-cascade,pocket-chain")]
    families: String,
    /// Comma-separated sizes.
    #[arg(long, default_value = "16,24,32,48,64")]
    sizes: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    /// Input file: a wrap/order JSON (one frame) or, with --trace, a JSONL
    /// trace replayed from --initial.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    points: PathBuf,
    /// Treat the input as a JSONL trace and render frames.
    #[arg(long)]
    trace: bool,
    /// Initial wrap for trace replay (required with --trace).
    #[arg(long)]
    initial: Option<PathBuf>,
    #[arg(long)]
    svg_out: PathBuf,
    /// Emit one frame every this many events.
    #[arg(long, default_value_t = 1)]
    stride: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let base_level: CheckLevel = match cli.check_level.parse() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_PARSE);
        }
    };
    let check = CheckLevel::from_env(base_level);
    if make_policy(&cli.policy, cli.seed).is_none() {
        eprintln!("error: unknown policy {:?}", cli.policy);
        return ExitCode::from(EXIT_PARSE);
    }
    let policy_name = cli.policy.clone();
    let seed = cli.seed;
    let make = move || -> Box<dyn CascadePolicy> {
        make_policy(&policy_name, seed).expect("policy name validated")
    };

    let result = match &cli.command {
        Command::Transform(a) => cmd_transform(a, make, check),
        Command::Canonical(a) => cmd_canonical(a, make, check),
        Command::RandomWalk(a) => cmd_random_walk(a, make, check, seed),
        Command::Gen(a) => cmd_gen(a, seed),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Stats(a) => cmd_stats(a, make, check),
        Command::Render(a) => cmd_render(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

struct CmdError {
    code: u8,
    message: String,
}

fn parse_err(msg: impl Into<String>) -> CmdError {
    CmdError {
        code: EXIT_PARSE,
        message: msg.into(),
    }
}

fn simple_err(msg: impl Into<String>) -> CmdError {
    CmdError {
        code: EXIT_NOT_SIMPLE,
        message: msg.into(),
    }
}

fn invariant_err(msg: impl Into<String>) -> CmdError {
    CmdError {
        code: EXIT_INVARIANT,
        message: msg.into(),
    }
}

fn read_points(path: &Path) -> Result<PointSet, CmdError> {
    let text =
        fs::read_to_string(path).map_err(|e| parse_err(format!("{}: {e}", path.display())))?;
    let file: PointSetFile =
        serde_json::from_str(&text).map_err(|e| parse_err(format!("{}: {e}", path.display())))?;
    file.into_set()
        .map_err(|e| parse_err(format!("{}: {e}", path.display())))
}

fn read_poly(path: &Path, ps: &PointSet) -> Result<Polygonization, CmdError> {
    let text =
        fs::read_to_string(path).map_err(|e| parse_err(format!("{}: {e}", path.display())))?;
    let file: PolygonizationFile =
        serde_json::from_str(&text).map_err(|e| parse_err(format!("{}: {e}", path.display())))?;
    Polygonization::new(file.order, ps).map_err(|e| simple_err(format!("{}: {e}", path.display())))
}

fn write_out(path: &Option<PathBuf>, content: &str) -> Result<(), CmdError> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| parse_err(format!("{}: {e}", p.display()))),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn cmd_transform(
    a: &TransformArgs,
    make: impl FnMut() -> Box<dyn CascadePolicy>,
    check: CheckLevel,
) -> Result<(), CmdError> {
    let ps = read_points(&a.points)?;
    let p1 = read_poly(&a.from, &ps)?;
    let p2 = read_poly(&a.to, &ps)?;
    let out = transform(&ps, &p1, &p2, make, check)
        .map_err(|e| invariant_err(format!("transform failed: {e}")))?;
    let ok = cyclic_equal_seq(&out.final_order, p2.order());

    if let Some(trace_path) = &a.trace {
        let mut events = out.forward_events.clone();
        events.extend(out.reverse_events.iter().cloned());
        let text = write_trace(&events).map_err(|e| invariant_err(format!("trace write: {e}")))?;
        fs::write(trace_path, text)
            .map_err(|e| parse_err(format!("{}: {e}", trace_path.display())))?;
    }
    let summary = TransformSummary {
        moves: out.total_moves(),
        atomic_moves: out.atomic_moves,
        ok,
    };
    let text = serde_json::to_string_pretty(&summary).expect("serializable");
    write_out(&a.summary, &text)?;
    if !ok {
        return Err(invariant_err("transform result differs from target"));
    }
    Ok(())
}

fn cmd_canonical(
    a: &CanonicalArgs,
    mut make: impl FnMut() -> Box<dyn CascadePolicy>,
    check: CheckLevel,
) -> Result<(), CmdError> {
    let ps = read_points(&a.points)?;
    let poly = read_poly(&a.poly, &ps)?;
    let lid = parse_lid(&a.lid)?;
    let mut engine = MoveEngine::new(&ps, poly.into_wrap(), check);
    let mut policy = make();
    let report = canonical_polygonization(&mut engine, lid, policy.as_mut())
        .map_err(|e| invariant_err(format!("canonicalization failed: {e}")))?;
    #[derive(Serialize)]
    struct CanonicalOut {
        order: Vec<usize>,
        moves: usize,
        canonical_rank: Vec<usize>,
    }
    let out = CanonicalOut {
        order: engine.wrap().sigma().to_vec(),
        moves: report.moves,
        canonical_rank: report.order,
    };
    write_out(&a.out, &serde_json::to_string_pretty(&out).expect("serializable"))
}

fn parse_lid(text: &str) -> Result<(usize, usize), CmdError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(parse_err("lid must be two comma-separated indices"));
    }
    let a = parts[0].trim().parse().map_err(|_| parse_err("bad lid index"))?;
    let b = parts[1].trim().parse().map_err(|_| parse_err("bad lid index"))?;
    Ok((a, b))
}

fn cmd_random_walk(
    a: &RandomWalkArgs,
    mut make: impl FnMut() -> Box<dyn CascadePolicy>,
    check: CheckLevel,
    seed: u64,
) -> Result<(), CmdError> {
    if a.steps == 0 {
        return Err(parse_err("steps must be at least 1"));
    }
    let ps = random_points(a.n, seed, a.scale, true);
    let start = initial_polygonization(&ps, polywrap::transforms::lowest_hull_edge(&ps));
    let mut policy = make();
    let (_engine, stats) = random_walk(
        &ps,
        start,
        a.steps,
        seed.wrapping_add(1),
        policy.as_mut(),
        check,
        WalkOptions {
            inject_stretches: a.inject_stretches,
        },
    )
    .map_err(|e| invariant_err(format!("walk failed: {e}")))?;
    write_out(&a.out, &serde_json::to_string_pretty(&stats).expect("serializable"))
}

fn cmd_gen(a: &GenArgs, seed: u64) -> Result<(), CmdError> {
    let family = make_family(&a.family).ok_or_else(|| {
        parse_err(format!(
            "unknown family {:?} (known: pow2k, quad-cascade, pinwheel, pocket-chain, random)",
            a.family
        ))
    })?;
    let size = match (a.k, a.n) {
        (Some(k), None) => k,
        (None, Some(n)) => n,
        _ => return Err(parse_err("provide exactly one of --k or --n")),
    };
    let spec = FamilySpec {
        family: a.family.clone(),
        size,
        seed,
        scale: a.scale,
    };
    let inst = family
        .generate(&spec)
        .map_err(|e| parse_err(format!("generation failed: {e}")))?;

    #[derive(Serialize)]
    struct GenOut {
        points: Vec<[i64; 2]>,
        meta: Meta,
    }
    #[derive(Serialize)]
    struct Meta {
        family: String,
        size: usize,
        seed: u64,
        scale: i64,
        #[serde(skip_serializing_if = "Option::is_none")]
        order: Option<Vec<usize>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        stretch_edge: Option<(usize, usize)>,
        #[serde(skip_serializing_if = "Option::is_none")]
        stretch_vertex: Option<usize>,
        #[serde(skip_serializing_if = "Vec::is_empty")]
        lids: Vec<(usize, usize)>,
        #[serde(skip_serializing_if = "Option::is_none")]
        target_edge: Option<(usize, usize)>,
    }
    let out = GenOut {
        points: inst.points.points().iter().map(|p| [p.x, p.y]).collect(),
        meta: Meta {
            family: a.family.clone(),
            size,
            seed,
            scale: a.scale,
            order: inst.order,
            stretch_edge: inst.stretch_edge,
            stretch_vertex: inst.stretch_vertex,
            lids: inst.lids,
            target_edge: inst.target_edge,
        },
    };
    write_out(&a.out, &serde_json::to_string_pretty(&out).expect("serializable"))
}

fn cmd_enumerate(a: &EnumerateArgs) -> Result<(), CmdError> {
    let ps = read_points(&a.points)?;
    let polys = enumerate_polygonizations(&ps)
        .map_err(|e| parse_err(format!("enumeration failed: {e}")))?;
    #[derive(Serialize)]
    struct EnumOut {
        count: usize,
        polygonizations: Vec<Vec<usize>>,
    }
    let out = EnumOut {
        count: polys.len(),
        polygonizations: polys.iter().map(|p| p.order().to_vec()).collect(),
    };
    println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    Ok(())
}

fn cmd_stats(
    a: &StatsArgs,
    mut make: impl FnMut() -> Box<dyn CascadePolicy>,
    check: CheckLevel,
) -> Result<(), CmdError> {
    let sizes: Vec<usize> = if a.sizes.trim().is_empty() {
        Vec::new()
    } else {
        a.sizes
            .split(',')
            .map(|s| s.trim().parse().map_err(|_| parse_err("bad size")))
            .collect::<Result<_, _>>()?
    };
    let families: Vec<&str> = if a.families.trim().is_empty() {
        Vec::new()
    } else {
        a.families.split(',').map(|s| s.trim()).collect()
    };

    let mut csv = String::from("family,size,twangs,moves\n");
    let mut quad_points: Vec<(f64, f64)> = Vec::new();
    for fam in &families {
        for &size in &sizes {
            match *fam {
                "quad-cascade" | "pinwheel" => {
                    let inst = gen_quadratic_cascade(size)
                        .map_err(|e| parse_err(format!("{fam} size {size}: {e}")))?;
                    let poly = Polygonization::new(inst.order.clone(), &inst.points)
                        .map_err(|e| invariant_err(e.to_string()))?;
                    let mut engine = MoveEngine::new(&inst.points, poly.into_wrap(), check);
                    let pos = (0..engine.wrap().len())
                        .find(|&q| {
                            let (u, w) = engine.wrap().edge(q);
                            (u, w) == inst.stretch_edge || (w, u) == inst.stretch_edge
                        })
                        .ok_or_else(|| invariant_err("stretch edge missing"))?;
                    let mut policy = make();
                    let entry = engine
                        .forward_move(pos, inst.stretch_vertex, policy.as_mut())
                        .map_err(|e| invariant_err(format!("initiating move failed: {e}")))?;
                    let twangs = entry.twang_count();
                    csv.push_str(&format!("{fam},{size},{twangs},1\n"));
                    quad_points.push(((size as f64).ln(), (twangs.max(1) as f64).ln()));
                }
                "pocket-chain" => {
                    let inst = gen_pocket_chain(size, 3)
                        .map_err(|e| parse_err(format!("{fam} size {size}: {e}")))?;
                    let poly = Polygonization::new(inst.order.clone(), &inst.points)
                        .map_err(|e| invariant_err(e.to_string()))?;
                    let mut engine = MoveEngine::new(&inst.points, poly.into_wrap(), check);
                    let mut policy = make();
                    let report = polywrap::transforms::pocket_reduction(
                        &mut engine,
                        inst.target_edge,
                        policy.as_mut(),
                    )
                    .map_err(|e| invariant_err(format!("reduction failed: {e}")))?;
                    let twangs = engine.journal().twangs();
                    csv.push_str(&format!("{fam},{size},{twangs},{}\n", report.moves));
                }
                other => return Err(parse_err(format!("unknown family {other:?} in stats"))),
            }
        }
    }
    if quad_points.len() >= 2 {
        let slope = regression_slope(&quad_points);
        csv.push_str(&format!("# quad-cascade log-log slope: {slope:.3}\n"));
    }
    write_out(&a.out, &csv)
}

fn regression_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

fn cmd_render(a: &RenderArgs) -> Result<(), CmdError> {
    let ps = read_points(&a.points)?;
    fs::create_dir_all(&a.svg_out)
        .map_err(|e| parse_err(format!("{}: {e}", a.svg_out.display())))?;
    let opts = svg::SvgOptions::default();

    if !a.trace {
        let text = fs::read_to_string(&a.input)
            .map_err(|e| parse_err(format!("{}: {e}", a.input.display())))?;
        let wrap = parse_wrap(&text, &ps)?;
        let svg_text = svg::render_wrap(&ps, &wrap, &opts);
        let path = a.svg_out.join("frame_0000.svg");
        fs::write(&path, svg_text).map_err(|e| parse_err(format!("{}: {e}", path.display())))?;
        println!("wrote 1 frame to {}", a.svg_out.display());
        return Ok(());
    }

    let initial_path = a
        .initial
        .as_ref()
        .ok_or_else(|| parse_err("--trace requires --initial"))?;
    let initial_text = fs::read_to_string(initial_path)
        .map_err(|e| parse_err(format!("{}: {e}", initial_path.display())))?;
    let initial = parse_wrap(&initial_text, &ps)?;
    let trace_text = fs::read_to_string(&a.input)
        .map_err(|e| parse_err(format!("{}: {e}", a.input.display())))?;
    let events = read_trace(&trace_text).map_err(|e| parse_err(format!("trace: {e}")))?;

    let stride = a.stride.max(1);
    let mut frames = 0usize;
    let emit = |wrap: &Wrap, idx: usize| -> Result<(), CmdError> {
        let svg_text = svg::render_wrap(&ps, wrap, &opts);
        let path = a.svg_out.join(format!("frame_{idx:04}.svg"));
        fs::write(&path, svg_text).map_err(|e| parse_err(format!("{}: {e}", path.display())))
    };
    emit(&initial, 0)?;
    frames += 1;
    for k in (stride..=events.len()).step_by(stride) {
        let wrap = replay_trace(&ps, &initial, &events[..k])
            .map_err(|e| invariant_err(format!("replay: {e}")))?;
        emit(&wrap, frames)?;
        frames += 1;
    }
    if events.len() % stride != 0 {
        let wrap = replay_trace(&ps, &initial, &events)
            .map_err(|e| invariant_err(format!("replay: {e}")))?;
        emit(&wrap, frames)?;
        frames += 1;
    }
    println!("wrote {frames} frames to {}", a.svg_out.display());
    Ok(())
}

fn parse_wrap(text: &str, ps: &PointSet) -> Result<Wrap, CmdError> {
    if let Ok(w) = serde_json::from_str::<WrapFile>(text) {
        if !w.sigma.is_empty() {
            return Wrap::new(w.sigma, ps).map_err(|e| simple_err(e.to_string()));
        }
    }
    let p: PolygonizationFile =
        serde_json::from_str(text).map_err(|e| parse_err(format!("wrap/order parse: {e}")))?;
    Polygonization::new(p.order, ps)
        .map(|p| p.into_wrap())
        .map_err(|e| simple_err(e.to_string()))
}
