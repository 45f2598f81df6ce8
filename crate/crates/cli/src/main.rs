use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use walkup::constructions::{
    build_b5_30, build_m4_15, build_n5_15, build_s4_30, random_elongated_stacked_sphere, random_stacked_sphere,
    standard_ball, standard_sphere,
};
use walkup::homology::homology_profile;
use walkup::prng::GeneratorSeed;
use walkup::stacked::{is_stacked_ball, is_stacked_sphere, is_stacked_sphere_by_reduction};
use walkup::surgery::{kalai_decompose, HandleLedger};
use walkup::symmetry::{automorphism_group, generators};
use walkup::tightness::{check_tightness, Mode, TightnessOptions, Verdict, DEFAULT_CEILING};
use walkup::walkup::{
    check_bounds_4manifold, fvector_from_f0_f1, in_walkup_class, stacked_sphere_fvector, walkup_fvector_even,
};
use walkup::{Error, PseudomanifoldStatus, SimplicialComplex};

#[derive(Parser)]
#[command(name = "walkup", version, about = "Stacked spheres, Walkup's class and handle surgery on facet lists")]
struct Cli {
    /// Print only the machine-readable JSON report.
    #[arg(long, global = true)]
    porcelain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, face vector, pseudomanifold status and Euler characteristic.
    Info(Input),
    /// ℤ₂ Betti numbers, Euler characteristic and orientability.
    Homology(Input),
    /// Predicates; exit status 0 when true, 1 when false.
    #[command(subcommand)]
    Check(Check),
    /// Closed-form face vectors.
    #[command(subcommand)]
    Fvector(Fvector),
    /// Print a built-in complex as a facet list.
    Generate(Generate),
    /// Split a connected member of the class into a stacked sphere and handles.
    Decompose {
        #[command(flatten)]
        input: Input,
        /// Write the ledger here.
        #[arg(long)]
        ledger: Option<PathBuf>,
    },
    /// Rebuild a complex from a ledger and print its facets.
    Replay {
        /// Ledger file; standard input when absent.
        ledger: Option<PathBuf>,
    },
    /// Order and generators of the automorphism group.
    Automorphisms(Input),
}

#[derive(Args)]
struct Input {
    /// Facet-list file (text or JSON); standard input when absent or `-`.
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Check {
    /// Every vertex link is a stacked sphere.
    Walkup(Input),
    /// Stacked sphere (closed input) or stacked ball (input with boundary).
    Stacked(Input),
    /// Lower bounds for closed connected 4-manifolds.
    Bounds4(Input),
    /// ℤ₂-tightness over induced subcomplexes.
    Tight {
        #[command(flatten)]
        input: Input,
        /// Scan every vertex subset (the default).
        #[arg(long, conflicts_with = "sample")]
        exhaustive: bool,
        /// Check this many random subsets instead.
        #[arg(long, value_name = "N")]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0, requires = "sample")]
        seed: u64,
        /// Largest vertex count accepted by the exhaustive scan.
        #[arg(long, value_name = "F0MAX", default_value_t = DEFAULT_CEILING)]
        ceiling: usize,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        jobs: Option<usize>,
        /// Report every violation instead of stopping at the first.
        #[arg(long)]
        all: bool,
    },
}

#[derive(Subcommand)]
enum Fvector {
    /// Stacked d-sphere on n vertices.
    Stacked {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        n: u64,
    },
    /// Connected member of the class in even dimension, from n and χ.
    Walkup {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        n: u64,
        #[arg(long, allow_negative_numbers = true)]
        chi: i64,
    },
    /// Member of the class from n and the edge count.
    FromF1 {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        f1: u64,
    },
}

#[derive(Args)]
struct Generate {
    #[arg(value_enum)]
    what: Builtin,
    #[arg(long, required_if_eq_any = [("what", "sphere"), ("what", "ball"), ("what", "stacked")])]
    dim: Option<usize>,
    #[arg(long, required_if_eq("what", "stacked"))]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Stack only next to the newest vertex, giving a long thin sphere.
    #[arg(long)]
    elongated: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    #[value(name = "m4-15")]
    M415,
    #[value(name = "b5-30")]
    B530,
    #[value(name = "s4-30")]
    S430,
    #[value(name = "n5-15")]
    N515,
    Sphere,
    Ball,
    Stacked,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// What a command produced: a report with a truth value, or raw output.
enum Output {
    Report { command: &'static str, result: Value, summary: Vec<String>, ok: bool },
    Raw(String),
}

struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

fn read_source(path: Option<&Path>) -> Result<(String, String), Failure> {
    match path {
        None => read_stdin(),
        Some(p) if p.as_os_str() == "-" => read_stdin(),
        Some(p) => fs::read_to_string(p)
            .map(|t| (p.display().to_string(), t))
            .map_err(|e| Failure(format!("{}: {e}", p.display()))),
    }
}

fn read_stdin() -> Result<(String, String), Failure> {
    let mut text = String::new();
    io::stdin().read_to_string(&mut text).map_err(|e| Failure(format!("<stdin>: {e}")))?;
    Ok(("<stdin>".to_string(), text))
}

fn load(input: &Input) -> Result<SimplicialComplex, Failure> {
    let (name, text) = read_source(input.file.as_deref())?;
    SimplicialComplex::parse(&text).map_err(|e| match e {
        Error::Parse { line, column, message } => Failure(format!("{name}:{line}:{column}: {message}")),
        other => Failure(format!("{name}: {other}")),
    })
}

fn yes(b: bool) -> &'static str {
    if b { "yes" } else { "no" }
}

fn status_name(s: PseudomanifoldStatus) -> &'static str {
    match s {
        PseudomanifoldStatus::Closed => "closed",
        PseudomanifoldStatus::WithBoundary => "with-boundary",
        PseudomanifoldStatus::Neither => "none",
    }
}

fn joined<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn info(x: &SimplicialComplex) -> Output {
    let f = x.f_vector();
    let status = status_name(x.dual_graph().status());
    Output::Report {
        command: "info",
        result: json!({
            "dimension": x.dim(),
            "vertices": x.num_vertices(),
            "facets": x.num_facets(),
            "f_vector": f,
            "pseudomanifold": status,
            "euler_characteristic": x.euler_characteristic(),
            "connected": x.is_connected(),
        }),
        summary: vec![
            format!("dimension: {}", x.dim()),
            format!("f-vector: {f}"),
            format!("pseudomanifold: {status}"),
            format!("euler characteristic: {}", x.euler_characteristic()),
            format!("connected: {}", yes(x.is_connected())),
        ],
        ok: true,
    }
}

fn homology(x: &SimplicialComplex) -> Output {
    let p = homology_profile(x);
    let orientable = serde_json::to_value(p.orientable).expect("serializable");
    let summary = vec![
        format!("betti (Z2): {}", joined(&p.betti)),
        format!("euler characteristic: {}", p.euler),
        format!("orientable: {}", orientable.as_str().unwrap_or("?")),
        format!("connected: {}", yes(p.connected)),
    ];
    Output::Report { command: "homology", result: json!(p), summary, ok: true }
}

fn check_walkup(x: &SimplicialComplex) -> Output {
    let member = in_walkup_class(x);
    let failing: Vec<String> = if member || x.dim() == 0 {
        Vec::new()
    } else {
        x.labels()
            .iter()
            .filter(|v| x.link(&[v.as_str()]).map_or(true, |lk| !is_stacked_sphere(&lk)))
            .map(ToString::to_string)
            .collect()
    };
    let mut summary = vec![format!("walkup class: {}", yes(member))];
    if !failing.is_empty() {
        summary.push(format!("links not stacked spheres: {}", failing.join(" ")));
    }
    Output::Report { command: "check walkup", result: json!({"member": member, "failing_links": failing}), summary, ok: member }
}

fn check_stacked(x: &SimplicialComplex) -> Output {
    let status = x.dual_graph().status();
    let (kind, ok, by_reduction) = match status {
        PseudomanifoldStatus::Closed => {
            let a = is_stacked_sphere(x);
            let b = is_stacked_sphere_by_reduction(x);
            ("sphere", a && b, Some(b))
        }
        PseudomanifoldStatus::WithBoundary => ("ball", is_stacked_ball(x), None),
        PseudomanifoldStatus::Neither => ("none", false, None),
    };
    let mut summary = vec![format!("stacked {kind}: {}", yes(ok))];
    if let Some(b) = by_reduction {
        summary.push(format!("by reduction: {}", yes(b)));
    }
    Output::Report {
        command: "check stacked",
        result: json!({"kind": kind, "stacked": ok, "by_reduction": by_reduction}),
        summary,
        ok,
    }
}

fn check_bounds(x: &SimplicialComplex) -> Result<Output, Failure> {
    let r = check_bounds_4manifold(x)?;
    let ok = r.inequalities.iter().all(|i| i.holds());
    let mut summary = vec![format!("f-vector: {}", r.f_vector), format!("euler characteristic: {}", r.euler)];
    for i in &r.inequalities {
        summary.push(format!("{}: {} >= {} ({})", i.name, i.lhs, i.rhs, if i.tight { "tight" } else { "strict" }));
    }
    summary.push(format!("part (a) tight: {}", yes(r.part_a_tight)));
    summary.push(format!("part (b) tight: {}", yes(r.part_b_tight)));
    summary.push(format!("2-neighborly: {}", yes(r.two_neighborly)));
    summary.push(format!("walkup class: {}", yes(r.walkup_member)));
    Ok(Output::Report { command: "check bounds4", result: json!(r), summary, ok })
}

fn check_tight(x: &SimplicialComplex, options: &TightnessOptions) -> Result<Output, Failure> {
    let r = check_tightness(x, options)?;
    let verdict = serde_json::to_value(r.verdict).expect("serializable");
    let mut summary = vec![format!("verdict: {}", verdict.as_str().unwrap_or("?")), format!("subsets checked: {}", r.checked)];
    summary.push(format!("violations: {}", r.violations.len()));
    if let Some(v) = r.violations.first() {
        summary.push(format!("first violation: degree {} on {{{}}}", v.degree, joined(&v.subset)));
    }
    let ok = r.verdict != Verdict::NotTight;
    Ok(Output::Report { command: "check tight", result: json!(r), summary, ok })
}

fn fvector(cmd: &Fvector) -> Result<Output, Failure> {
    let f = match *cmd {
        Fvector::Stacked { dim, n } => stacked_sphere_fvector(dim, n)?,
        Fvector::Walkup { dim, n, chi } => walkup_fvector_even(dim, n, chi)?,
        Fvector::FromF1 { dim, n, f1 } => fvector_from_f0_f1(dim, n, f1)?,
    };
    Ok(Output::Report { command: "fvector", result: json!({"f_vector": f}), summary: vec![format!("f-vector: {f}")], ok: true })
}

fn generate(g: &Generate) -> Result<SimplicialComplex, Failure> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Failure(format!("--{flag} is required")));
    Ok(match g.what {
        Builtin::M415 => build_m4_15(),
        Builtin::B530 => build_b5_30(),
        Builtin::S430 => build_s4_30(),
        Builtin::N515 => build_n5_15(),
        Builtin::Sphere => standard_sphere(need(g.dim, "dim")?),
        Builtin::Ball => standard_ball(need(g.dim, "dim")?),
        Builtin::Stacked => {
            let (d, n) = (need(g.dim, "dim")?, need(g.n, "n")?);
            if d == 0 {
                return Err(Failure("--dim must be at least 1".into()));
            }
            if g.elongated {
                random_elongated_stacked_sphere(d, n, GeneratorSeed(g.seed))?
            } else {
                random_stacked_sphere(d, n, GeneratorSeed(g.seed))?
            }
        }
    })
}

fn decompose(x: &SimplicialComplex, out: Option<&Path>) -> Result<Output, Failure> {
    let ledger = kalai_decompose(x)?;
    let text = ledger.to_json();
    if let Some(path) = out {
        fs::write(path, &text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    }
    let mut summary = vec![
        format!("base: stacked {}-sphere on {} vertices", ledger.base.dim(), ledger.base.num_vertices()),
        format!("handles: {}", ledger.handles.len()),
    ];
    for (k, psi) in ledger.handles.iter().enumerate() {
        let pairs: Vec<String> = psi.pairs().iter().map(|(s, t)| format!("{s}->{t}")).collect();
        summary.push(format!("  handle {}: {}", k + 1, pairs.join(" ")));
    }
    if let Some(path) = out {
        summary.push(format!("ledger written to {}", path.display()));
    }
    let result = json!({
        "handles": ledger.handles.len(),
        "base_vertices": ledger.base.num_vertices(),
        "ledger": serde_json::from_str::<Value>(&text).expect("ledger is JSON"),
    });
    Ok(Output::Report { command: "decompose", result, summary, ok: true })
}

fn replay(path: Option<&Path>) -> Result<Output, Failure> {
    let (name, text) = read_source(path)?;
    let ledger = HandleLedger::from_json(&text).map_err(|e| match e {
        Error::Parse { line, column, message } => Failure(format!("{name}:{line}:{column}: {message}")),
        other => Failure(format!("{name}: {other}")),
    })?;
    Ok(Output::Raw(ledger.reconstruct()?.to_text()))
}

fn automorphisms(x: &SimplicialComplex) -> Output {
    let group = automorphism_group(x);
    let gens = generators(&group);
    let names: Vec<String> = gens.iter().map(ToString::to_string).collect();
    let mut summary = vec![format!("order: {}", group.len()), "generators:".to_string()];
    summary.extend(names.iter().map(|g| format!("  {g}")));
    Output::Report { command: "automorphisms", result: json!({"order": group.len(), "generators": names}), summary, ok: true }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    Ok(match &cli.command {
        Command::Info(i) => info(&load(i)?),
        Command::Homology(i) => homology(&load(i)?),
        Command::Check(Check::Walkup(i)) => check_walkup(&load(i)?),
        Command::Check(Check::Stacked(i)) => check_stacked(&load(i)?),
        Command::Check(Check::Bounds4(i)) => check_bounds(&load(i)?)?,
        Command::Check(Check::Tight { input, exhaustive: _, sample, seed, ceiling, jobs, all }) => {
            let mode = match sample {
                Some(count) => Mode::Sampled { count: *count, seed: *seed },
                None => Mode::Exhaustive,
            };
            let options = TightnessOptions { mode, ceiling: *ceiling, all_violations: *all, jobs: *jobs };
            check_tight(&load(input)?, &options)?
        }
        Command::Fvector(f) => fvector(f)?,
        Command::Generate(g) => {
            let x = generate(g)?;
            match (g.format, cli.porcelain) {
                (Format::Json, _) | (_, true) => Output::Raw(x.to_json() + "\n"),
                (Format::Text, false) => Output::Raw(x.to_text()),
            }
        }
        Command::Decompose { input, ledger } => decompose(&load(input)?, ledger.as_deref())?,
        Command::Replay { ledger } => replay(ledger.as_deref())?,
        Command::Automorphisms(i) => automorphisms(&load(i)?),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Output::Raw(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Output::Report { command, result, summary, ok }) => {
            if cli.porcelain {
                println!("{}", json!({"command": command, "result": result}));
            } else {
                for line in summary {
                    println!("{line}");
                }
            }
            if ok { ExitCode::SUCCESS } else { ExitCode::from(1) }
        }
        Err(Failure(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
