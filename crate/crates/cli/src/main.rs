use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qtop_core::doc::{parse_algebra, parse_caps, parse_map, parse_space};
use qtop_core::verify::{enumerate_spaces, run_suite, InstanceSpec, Mode, SUITES};
use qtop_core::{
    adjunction_equalizer, builtin, equalizer_witness, firmness_inverse, generate_topology, is_embedding, is_epi,
    is_extremal_mono, is_t0, lift_through_reflection, m_closure, sierpinski, sobrify, spectrum, AlgebraRef, Caps,
    ContinuousMap, FiniteAlgebra, MapDoc, QFunction, QSpace, SpaceDoc, Subset, BUILTIN_NAMES,
};

#[derive(Parser)]
#[command(name = "qtop")]
#[command(about = "Finite Q-topological spaces: spectra, sobrification, closures and property suites")]
#[command(version)]
struct Cli {
    /// Size caps as JSON: {"max_power_carrier", "max_hom_search", "max_topology"}
    #[arg(long, global = true)]
    caps: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra (built-in name or JSON file)
    Validate {
        #[arg(long)]
        algebra: String,
    },
    /// Emit the Sierpinski space of an algebra
    Sierpinski {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Close a subbasis into a topology
    GenerateTopology {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        points: usize,
        /// JSON list of value tuples, e.g. '[[0,1]]'
        #[arg(long, default_value = "[]")]
        subbasis: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the spectrum (pt τ, φ(τ)) and η
    Pt {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the sobrification η: X → (pt τ, φ(τ))
    Sobrify {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a property; exits 1 when it does not hold
    Check {
        property: Property,
        /// Space document (t0, sober)
        #[arg(long)]
        space: Option<PathBuf>,
        /// Map document (continuous, epi, embedding, extremal)
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the [ ]-closure of a set of points
    Closure {
        #[arg(long)]
        space: PathBuf,
        /// Comma separated point indices; empty for the empty set
        #[arg(long, default_value = "")]
        subset: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Factor a map into a sober space through the reflection
    Lift {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Invert f* for an epimorphic embedding into a sober space
    Firmness {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the equalizer EX of the Sierpinski adjunction
    Adjunction {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run property suites over enumerated instances
    VerifySuite {
        /// Suite id or `all`
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value = "BOOL_LAT")]
        algebra: String,
        #[arg(long, default_value_t = 2)]
        max_points: usize,
        /// Point bound for codomains of the universal-property suite
        #[arg(long)]
        target_max_points: Option<usize>,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random instances in random mode
        #[arg(long, default_value_t = 64)]
        samples: usize,
        /// Spaces with more opens are skipped by the adjunction suite
        #[arg(long, default_value_t = 3)]
        adjunction_max_opens: usize,
        /// Worker threads (0 = one per core)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Include wall times in the JSON report (breaks byte-for-byte reproducibility)
        #[arg(long)]
        include_timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List every topology up to a point bound
    Enumerate {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        max_points: usize,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    T0,
    Sober,
    Continuous,
    Epi,
    Embedding,
    Extremal,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
}

impl ModeArg {
    fn to_mode(self, seed: u64, samples: usize) -> Mode {
        match self {
            ModeArg::Exhaustive => Mode::Exhaustive,
            ModeArg::Random => Mode::Random { seed, samples },
        }
    }
}

/// Loaded inputs, validated on load.
struct Workspace {
    caps: Caps,
    algebras: BTreeMap<String, Arc<FiniteAlgebra>>,
}

impl Workspace {
    fn new(caps_path: Option<&Path>) -> anyhow::Result<Self> {
        let caps = match caps_path {
            Some(path) => parse_caps(&read(path)?)?,
            None => Caps::default(),
        };
        Ok(Workspace {
            caps,
            algebras: BTreeMap::new(),
        })
    }

    /// A built-in name, or a path to an algebra document.
    fn algebra(&mut self, spec: &str) -> anyhow::Result<Arc<FiniteAlgebra>> {
        if let Some(q) = self.algebras.get(spec) {
            return Ok(q.clone());
        }
        let q = if BUILTIN_NAMES.contains(&spec) {
            builtin(spec)?
        } else {
            parse_algebra(&read(Path::new(spec))?)?
        };
        let q = Arc::new(q);
        self.algebras.insert(spec.to_string(), q.clone());
        Ok(q)
    }

    fn space(&self, path: &Path) -> anyhow::Result<QSpace> {
        parse_space(&read(path)?, &self.caps).with_context(|| format!("loading space {}", path.display()))
    }

    fn map(&self, path: &Path) -> anyhow::Result<ContinuousMap> {
        parse_map(&read(path)?, &self.caps).with_context(|| format!("loading map {}", path.display()))
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Writes the JSON artifact to `out` and the summary to stdout, or the JSON to
/// stdout and the summary to stderr.
fn emit(value: &Value, summary: &str, out: Option<&Path>) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            println!("{summary}");
        }
        None => {
            print!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn space_value(x: &QSpace) -> Value {
    serde_json::to_value(SpaceDoc::of(x)).expect("documents serialize")
}

fn map_value(f: &ContinuousMap) -> Value {
    serde_json::to_value(MapDoc::of(f)).expect("documents serialize")
}

enum Status {
    Ok,
    Violation,
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    let mut ws = Workspace::new(cli.caps.as_deref())?;
    let caps = ws.caps;
    match cli.command {
        Command::Validate { algebra } => {
            let q = ws.algebra(&algebra)?;
            println!(
                "{}: valid, carrier size {}, operations {}",
                q.name(),
                q.size(),
                q.signature()
                    .ops()
                    .iter()
                    .map(|op| format!("{}/{}", op.symbol, op.arity))
                    .collect::<Vec<_>>()
                    .join(", ")
            );
        }
        Command::Sierpinski { algebra, out } => {
            let s = sierpinski(ws.algebra(&algebra)?, &caps)?;
            let summary = format!(
                "Sierpinski space of {}: {} points, {} opens",
                s.q().name(),
                s.points(),
                s.topology().len()
            );
            emit(&space_value(&s), &summary, out.as_deref())?;
        }
        Command::GenerateTopology {
            algebra,
            points,
            subbasis,
            out,
        } => {
            let subbasis: Vec<Vec<usize>> = serde_json::from_str(&subbasis).context("parsing --subbasis")?;
            let x = generate_topology(
                ws.algebra(&algebra)?,
                points,
                subbasis.into_iter().map(QFunction),
                &caps,
            )?;
            let summary = format!("{} points, {} opens", x.points(), x.topology().len());
            emit(&space_value(&x), &summary, out.as_deref())?;
        }
        Command::Pt { space, out } | Command::Sobrify { space, out } => {
            let x = ws.space(&space)?;
            let s = sobrify(&x, &caps)?;
            let value = json!({
                "pt_space": space_value(s.pt_space()),
                "homs": s.homs(),
                "phi": s.phi(),
                "eta": map_value(&s.eta_map()),
            });
            let summary = format!(
                "|pt| = {}, eta injective = {}, eta bijective = {}",
                s.homs().len(),
                s.eta_is_injective(),
                s.eta_is_bijective()
            );
            emit(&value, &summary, out.as_deref())?;
        }
        Command::Check {
            property,
            space,
            map,
            out,
        } => return check(&ws, property, space.as_deref(), map.as_deref(), out.as_deref()),
        Command::Closure { space, subset, out } => {
            let x = ws.space(&space)?;
            let members = subset
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().with_context(|| format!("bad point index `{s}`")))
                .collect::<anyhow::Result<Vec<_>>>()?;
            let cert = m_closure(&x, &Subset::new(x.points(), members)?)?;
            let mut value = serde_json::to_value(&cert)?;
            value["closed"] = json!(cert.is_closed());
            let summary = format!("[M] = {:?} (closed: {})", cert.closure.members(), cert.is_closed());
            emit(&value, &summary, out.as_deref())?;
        }
        Command::Lift { map, out } => {
            let f = ws.map(&map)?;
            let lifted = lift_through_reflection(&f, &caps)?;
            let summary = format!("f* = {:?}", lifted.values());
            emit(&map_value(&lifted), &summary, out.as_deref())?;
        }
        Command::Firmness { map, out } => {
            let f = ws.map(&map)?;
            let cert = firmness_inverse(&f, &caps)?;
            let value = json!({
                "p_f": cert.p_f,
                "g": map_value(&cert.g),
                "f_star": map_value(&cert.f_star),
                "g_after_f_star_is_id": cert.g_after_f_star_is_id,
                "f_star_after_g_is_id": cert.f_star_after_g_is_id,
            });
            let summary = format!("f* is an isomorphism: {}", cert.is_inverse());
            emit(&value, &summary, out.as_deref())?;
            if !cert.is_inverse() {
                return Ok(Status::Violation);
            }
        }
        Command::Adjunction { space, out } => {
            let x = ws.space(&space)?;
            let a = adjunction_equalizer(&x, &caps)?;
            let value = json!({
                "tx": space_value(&a.tx),
                "psi": a.psi,
                "ex": space_value(&a.ex),
                "ex_points": a.ex_points,
                "k": a.k,
                "iso_to_pt": a.iso_to_pt,
                "ex_is_pt": a.ex_is_pt(),
                "k_is_eta": a.k_is_eta(),
                "k_is_homeomorphism": a.k_is_homeomorphism(),
            });
            let summary = format!(
                "|TX| = {}, |EX| = {}, EX = pt: {}, k = eta: {}, k homeomorphism: {}",
                a.tx.points(),
                a.ex.points(),
                a.ex_is_pt(),
                a.k_is_eta(),
                a.k_is_homeomorphism()
            );
            emit(&value, &summary, out.as_deref())?;
        }
        Command::VerifySuite {
            suite,
            algebra,
            max_points,
            target_max_points,
            mode,
            seed,
            samples,
            adjunction_max_opens,
            jobs,
            include_timing,
            out,
        } => {
            let suites: Vec<&str> = if suite == "all" {
                SUITES.to_vec()
            } else if let Some(s) = SUITES.iter().find(|s| **s == suite) {
                vec![*s]
            } else {
                bail!("unknown suite `{suite}`; expected one of: all, {}", SUITES.join(", "));
            };
            let spec = InstanceSpec {
                algebra: AlgebraRef::of(&*ws.algebra(&algebra)?),
                max_points,
                target_max_points,
                mode: mode.to_mode(seed, samples),
                caps,
                adjunction_max_opens,
                jobs,
            };
            let mut reports = Vec::new();
            let mut lines = Vec::new();
            let mut passed = true;
            for name in suites {
                let report = run_suite(name, &spec)?;
                passed &= report.passed();
                lines.push(format!(
                    "{:<24} {} tried {:>6} passed {:>6} failed {:>4} skipped {:>4}",
                    report.suite,
                    if report.passed() { "PASS" } else { "FAIL" },
                    report.instances_tried,
                    report.passes,
                    report.failures.len(),
                    report.skipped,
                ));
                let mut value = serde_json::to_value(&report)?;
                if include_timing {
                    value["wall_time_ms"] = json!(report.wall_time.as_secs_f64() * 1e3);
                }
                reports.push(value);
            }
            let value = json!({ "spec": spec, "passed": passed, "reports": reports });
            emit(&value, &lines.join("\n"), out.as_deref())?;
            if !passed {
                return Ok(Status::Violation);
            }
        }
        Command::Enumerate {
            algebra,
            max_points,
            mode,
            seed,
            samples,
            out,
        } => {
            let spec = InstanceSpec {
                algebra: AlgebraRef::of(&*ws.algebra(&algebra)?),
                mode: mode.to_mode(seed, samples),
                caps,
                ..InstanceSpec::exhaustive(&algebra, max_points)
            };
            let spaces = enumerate_spaces(&spec)?;
            let value = json!({ "spaces": spaces.iter().map(space_value).collect::<Vec<_>>() });
            let summary = format!(
                "{} spaces over {} with at most {max_points} points",
                spaces.len(),
                spec.algebra.name()
            );
            emit(&value, &summary, out.as_deref())?;
        }
    }
    Ok(Status::Ok)
}

fn check(
    ws: &Workspace,
    property: Property,
    space: Option<&Path>,
    map: Option<&Path>,
    out: Option<&Path>,
) -> anyhow::Result<Status> {
    let caps = ws.caps;
    let (holds, value, label) = match property {
        Property::T0 | Property::Sober => {
            let Some(path) = space else {
                bail!("--space is required for this check");
            };
            let x = ws.space(path)?;
            if let Property::T0 = property {
                let holds = is_t0(&x);
                (holds, json!({ "property": "t0", "holds": holds }), "T0")
            } else {
                let s = spectrum(&x, &caps)?;
                let holds = s.eta_is_bijective();
                let value = json!({
                    "property": "sober",
                    "holds": holds,
                    "pt_points": s.homs().len(),
                    "eta": s.eta(),
                });
                (holds, value, "sober")
            }
        }
        _ => {
            let Some(path) = map else {
                bail!("--map is required for this check");
            };
            match property {
                Property::Continuous => {
                    // loading already verifies continuity
                    let holds = ws.map(path).is_ok();
                    (holds, json!({ "property": "continuous", "holds": holds }), "continuous")
                }
                Property::Epi => {
                    let cert = is_epi(&ws.map(path)?)?;
                    let mut value = serde_json::to_value(&cert)?;
                    value["property"] = json!("epi");
                    value["holds"] = json!(cert.is_epi());
                    (cert.is_epi(), value, "an epimorphism")
                }
                Property::Embedding => {
                    let holds = is_embedding(&ws.map(path)?);
                    (
                        holds,
                        json!({ "property": "embedding", "holds": holds }),
                        "an embedding",
                    )
                }
                Property::Extremal => {
                    let f = ws.map(path)?;
                    let holds = is_extremal_mono(&f)?;
                    let witness = equalizer_witness(&f, &caps)?;
                    let value = json!({
                        "property": "extremal",
                        "holds": holds,
                        "closure_of_image": witness.equalizer(),
                        "image": f.image(),
                    });
                    (holds, value, "an extremal monomorphism")
                }
                Property::T0 | Property::Sober => unreachable!(),
            }
        }
    };
    let summary = if holds {
        label.to_string()
    } else {
        format!("not {label}")
    };
    emit(&value, &summary, out)?;
    Ok(if holds { Status::Ok } else { Status::Violation })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Violation) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
