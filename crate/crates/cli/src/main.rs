use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use coarsetiler::cayley::{build_ball_capped, CayleyBall};
use coarsetiler::export::{ball_dot, patch_dot, tiles_svg};
use coarsetiler::format::{from_json, to_canonical_json, BallDump, ChainDump, GraphDoc, PatchDoc, TileDump};
use coarsetiler::quotient::{aperiodicity_certificate_capped, CertificateCaps, Verdict};
use coarsetiler::tiles::{decorate, verify_tiling};
use coarsetiler::{parse_automaton, residual, solve_on_ball, AutomatonSpec, Chain0, Modulus, ToyGraph};
use serde_json::json;

#[derive(Parser)]
#[command(name = "coarsetiler", version, about = "Z_p boundary solver, tile sets and aperiodicity certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate a Cayley ball.
    Ball {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(short, long, env = "COARSETILER_RADIUS")]
        radius: usize,
        /// Also write ball.dot (needs --out).
        #[arg(long)]
        dot: bool,
        #[command(flatten)]
        out: OutArgs,
        #[command(flatten)]
        caps: Caps,
    },
    /// Solve ∂ψ = c on a ball or toy graph.
    Solve {
        #[command(flatten)]
        group: OptionalGroupArgs,
        #[arg(short, long, env = "COARSETILER_RADIUS", required_unless_present = "toy")]
        radius: Option<usize>,
        /// Toy graph file: {"vertices", "edges", "boundary"}.
        #[arg(long, conflicts_with_all = ["group", "spec", "radius"])]
        toy: Option<PathBuf>,
        #[arg(short, env = "COARSETILER_P")]
        p: u32,
        /// `zero`, `ones` or a chain file.
        #[arg(long, default_value = "ones")]
        c: String,
        #[command(flatten)]
        out: OutArgs,
        #[command(flatten)]
        caps: Caps,
    },
    /// Build the tile alphabet and a patch from a solved ball.
    Tiles {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(short, long, env = "COARSETILER_RADIUS")]
        radius: usize,
        #[arg(short, env = "COARSETILER_P")]
        p: u32,
        #[command(flatten)]
        out: OutArgs,
        #[command(flatten)]
        caps: Caps,
    },
    /// Check a patch file against the matching rules and ∂ψ′ = 1.
    Verify {
        patch: PathBuf,
        /// Expected modulus; must agree with the patch.
        #[arg(short, env = "COARSETILER_P")]
        p: Option<u32>,
    },
    /// Aperiodicity certificate over a range of level quotients.
    Certify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(short, env = "COARSETILER_P")]
        p: u32,
        /// Inclusive range `A..B`.
        #[arg(long, env = "COARSETILER_LEVELS", value_parser = parse_levels)]
        levels: RangeInclusive<usize>,
        /// Print the human-readable report instead of JSON.
        #[arg(long)]
        text: bool,
        #[command(flatten)]
        out: OutArgs,
        #[command(flatten)]
        caps: Caps,
    },
    /// DOT rendering of a ball, or of a patch file.
    ExportDot {
        #[command(flatten)]
        group: OptionalGroupArgs,
        #[arg(short, long, env = "COARSETILER_RADIUS", required_unless_present = "patch")]
        radius: Option<usize>,
        #[arg(long, conflicts_with_all = ["group", "spec", "radius"])]
        patch: Option<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
        #[command(flatten)]
        caps: Caps,
    },
    /// Print a built-in automaton as a spec document.
    DumpPreset { name: String },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GroupArgs {
    /// Preset name: grigorchuk or fabrykowski-gupta.
    #[arg(long, env = "COARSETILER_GROUP")]
    group: Option<String>,
    /// Automaton spec file.
    #[arg(long)]
    spec: Option<PathBuf>,
}

#[derive(Args)]
#[group(multiple = false)]
struct OptionalGroupArgs {
    #[arg(long, env = "COARSETILER_GROUP")]
    group: Option<String>,
    #[arg(long)]
    spec: Option<PathBuf>,
}

#[derive(Args)]
struct OutArgs {
    /// Write files into this directory instead of printing to stdout.
    #[arg(long, env = "COARSETILER_OUT")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Caps {
    #[arg(long, env = "COARSETILER_CAP_VERTICES", default_value_t = 2_000_000, value_parser = positive)]
    cap_vertices: usize,
    #[arg(long, env = "COARSETILER_CAP_ELEMENTS", default_value_t = 1_000_000, value_parser = positive)]
    cap_elements: usize,
    /// Largest tree level any computation may descend to.
    #[arg(long, env = "COARSETILER_CAP_DEPTH", default_value_t = 20, value_parser = positive)]
    cap_depth: usize,
    #[arg(long, env = "COARSETILER_CAP_LEAVES", default_value_t = 1 << 20, value_parser = positive)]
    cap_leaves: usize,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("cap must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_levels(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s.split_once("..").ok_or("expected A..B")?;
    let a: usize = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: usize = b.trim().trim_start_matches('=').parse().map_err(|e| format!("{e}"))?;
    if a > b {
        return Err(format!("empty level range {a}..{b}"));
    }
    Ok(a..=b)
}

fn load_spec(group: Option<&str>, spec: Option<&Path>) -> Result<AutomatonSpec> {
    match (group, spec) {
        (Some(name), _) => Ok(AutomatonSpec::preset_by_name(name)?),
        (None, Some(path)) => {
            let text = read(path)?;
            parse_automaton(&text).with_context(|| format!("in {}", path.display()))
        }
        (None, None) => bail!("one of --group or --spec is required"),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn modulus(p: u32) -> Result<Modulus> {
    Ok(Modulus::new(p)?)
}

/// Writes each `(name, contents)` under `--out`, or prints the first one.
fn emit(out: &OutArgs, files: &[(&str, String)]) -> Result<()> {
    match &out.out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for (name, contents) in files {
                let path = dir.join(name);
                fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        None => print!("{}", files[0].1),
    }
    Ok(())
}

fn ball(group: &GroupArgs, radius: usize, caps: &Caps) -> Result<(AutomatonSpec, CayleyBall)> {
    let spec = load_spec(group.group.as_deref(), group.spec.as_deref())?;
    let ball = build_ball_capped(&spec, radius, caps.cap_vertices)?;
    Ok((spec, ball))
}

fn chain_arg(arg: &str, n: usize, p: Modulus) -> Result<Chain0> {
    match arg {
        "ones" => Ok(Chain0::ones(n, p)),
        "zero" => Ok(Chain0::zeros(n, p)),
        path => {
            let dump: ChainDump = from_json(&read(Path::new(path))?).with_context(|| format!("in {path}"))?;
            if dump.p != p.get() {
                return Err(coarsetiler::Error::ModulusMismatch(dump.p, p.get()).into());
            }
            Ok(dump.to_chain0(n)?)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Ball { group, radius, dot, out, caps } => {
            let (spec, ball) = ball(&group, radius, &caps)?;
            let mut files = vec![("ball.json", to_canonical_json(&BallDump::new(&ball, &spec)))];
            if dot {
                files.push(("ball.dot", ball_dot(&ball, &spec)));
            }
            emit(&out, &files)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve { group, radius, toy, p, c, out, caps } => {
            let p = modulus(p)?;
            let graph: ToyGraph = match (&toy, radius) {
                (Some(path), _) => {
                    let doc: GraphDoc = from_json(&read(path)?).with_context(|| format!("in {}", path.display()))?;
                    doc.to_graph()?
                }
                (None, Some(r)) => {
                    let group = GroupArgs { group: group.group, spec: group.spec };
                    ball(&group, r, &caps)?.1.graph().clone()
                }
                (None, None) => bail!("one of --radius or --toy is required"),
            };
            let c = chain_arg(&c, graph.vertex_count(), p)?;
            let psi = solve_on_ball(&graph, &c)?;
            let res = residual(&graph, &psi, &c)?;
            let ok = res.iter().all(|&v| graph.is_boundary(v));
            let psi = ChainDump::from(&psi);
            let report = json!({ "psi": psi, "residual": res, "residual_on_boundary": ok });
            emit(
                &out,
                &[
                    ("solve.json", to_canonical_json(&report)),
                    ("psi.json", to_canonical_json(&psi)),
                    ("residual.json", to_canonical_json(&res)),
                ],
            )?;
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Tiles { group, radius, p, out, caps } => {
            let p = modulus(p)?;
            let (_, ball) = ball(&group, radius, &caps)?;
            let psi = solve_on_ball(ball.graph(), &Chain0::ones(ball.vertex_count(), p))?;
            let deco = decorate(&ball, &psi)?;
            let patch = deco.patch(ball.graph())?;
            emit(
                &out,
                &[
                    ("tiles.json", to_canonical_json(&TileDump::new(deco.alphabet(), patch.assignment()))),
                    ("patch.json", to_canonical_json(&PatchDoc::new(&patch))),
                    ("tiles.svg", tiles_svg(deco.alphabet())),
                ],
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { patch, p } => {
            let doc: PatchDoc = from_json(&read(&patch)?).with_context(|| format!("in {}", patch.display()))?;
            if let Some(p) = p {
                if p != doc.p {
                    return Err(coarsetiler::Error::ModulusMismatch(doc.p, p).into());
                }
            }
            let report = verify_tiling(&doc.to_patch()?);
            print!("{}", to_canonical_json(&report));
            Ok(if report.is_ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Certify { group, p, levels, text, out, caps } => {
            let spec = load_spec(group.group.as_deref(), group.spec.as_deref())?;
            if *levels.end() > caps.cap_depth {
                bail!("level {} exceeds --cap-depth {}", levels.end(), caps.cap_depth);
            }
            let report = aperiodicity_certificate_capped(
                &spec,
                modulus(p)?,
                levels,
                CertificateCaps {
                    leaves: caps.cap_leaves,
                    elements: caps.cap_elements,
                },
            );
            let json = to_canonical_json(&report);
            if text {
                print!("{}", report.render_text());
                if out.out.is_some() {
                    emit(&out, &[("certificate.json", json)])?;
                }
            } else {
                emit(&out, &[("certificate.json", json)])?;
            }
            Ok(if report.verdict == Verdict::Pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::ExportDot { group, radius, patch, out, caps } => {
            let dot = match (&patch, radius) {
                (Some(path), _) => {
                    let doc: PatchDoc = from_json(&read(path)?).with_context(|| format!("in {}", path.display()))?;
                    ("patch.dot", patch_dot(&doc.to_patch()?))
                }
                (None, Some(r)) => {
                    let group = GroupArgs { group: group.group, spec: group.spec };
                    let (spec, ball) = ball(&group, r, &caps)?;
                    ("ball.dot", ball_dot(&ball, &spec))
                }
                (None, None) => bail!("one of --radius or --patch is required"),
            };
            emit(&out, &[dot])?;
            Ok(ExitCode::SUCCESS)
        }
        Command::DumpPreset { name } => {
            let spec = AutomatonSpec::preset_by_name(&name)?;
            print!("{}", to_canonical_json(&spec.to_doc()));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
