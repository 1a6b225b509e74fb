use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use afcantor::amalgam::{identities, proper_amalgamate};
use afcantor::bratteli::{
    cantorize, check_cantor, ideal_closure, is_essential, quotient, split_cover, tensor, to_dot,
    BratteliDiagram, CantorReport, CheckOptions, Condition, Essential, Instance, IdealSet, NodeRef,
};
use afcantor::fdalg::{EpPair, Nat};
use afcantor::fraisse::{
    build_fraisse, ep_section, intertwine, universal_surjection_witness, CategorySpec,
    Intertwining, RunSpec, Schedule, Section,
};
use afcantor::io::{from_json, to_json};
use afcantor::k0::{check_universal_presentation, extract_k0, DimensionGroupPresentation};
use afcantor::{Error, Result};

const EXIT_MALFORMED: u8 = 1;
const EXIT_VIOLATION: u8 = 2;
const EXIT_EXHAUSTED: u8 = 3;

#[derive(Parser)]
#[command(name = "afcantor", version, about = "Bratteli diagrams, amalgamation and Fraisse sequences")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Out {
    /// Write here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Dimensions that must occur, e.g. 1,2,3 or 1-6.
    #[arg(long)]
    dims: Option<String>,
    #[arg(long)]
    unital: bool,
    /// D1 and D2 sources come from this many leading levels; 0 means all.
    #[arg(long, default_value_t = 3)]
    levels: usize,
    /// Largest D2 source set.
    #[arg(long)]
    max_subset: Option<usize>,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Prefix {
    /// Check only the first this many levels.
    #[arg(long)]
    depth: Option<usize>,
}

#[derive(Args)]
struct Bounds {
    #[arg(long, default_value_t = 4)]
    rounds: usize,
    /// Highest level searched; defaults to the last level.
    #[arg(long)]
    max_level: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the Fraisse engine.
    Gen {
        /// A comma-separated dimension set or all:CAP.
        #[arg(long, required_unless_present = "spec")]
        universe: Option<String>,
        #[arg(long)]
        unital: bool,
        /// Single matrix algebras with unital maps.
        #[arg(long)]
        uhf: bool,
        #[arg(long, required_unless_present = "spec")]
        steps: Option<usize>,
        #[arg(long, default_value_t = 2)]
        lead: usize,
        /// Run file with universe, cap, unital, simple_matrix_mode, steps.
        #[arg(long, conflicts_with = "universe")]
        spec: Option<PathBuf>,
        /// Write the engine log here.
        #[arg(long)]
        log: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Certify the Cantor property on a prefix.
    Check {
        diagram: PathBuf,
        #[command(flatten)]
        prefix: Prefix,
        #[command(flatten)]
        opts: CheckArgs,
    },
    /// Amalgamate two EP-pairs over their common domain.
    Amalgamate {
        ep1: PathBuf,
        ep2: PathBuf,
        #[arg(long)]
        unital: bool,
        #[command(flatten)]
        out: Out,
    },
    Tensor {
        d1: PathBuf,
        d2: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    Cantorize {
        diagram: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    Quotient {
        diagram: PathBuf,
        /// Nodes as level:summand, comma-separated.
        #[arg(long)]
        ideal: String,
        #[command(flatten)]
        out: Out,
    },
    IdealClosure {
        diagram: PathBuf,
        #[arg(long)]
        seed: String,
        #[command(flatten)]
        out: Out,
    },
    SplitCover {
        diagram: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    Essential {
        diagram: PathBuf,
        #[arg(long)]
        ideal: String,
    },
    /// Dimension group presentation of a diagram.
    K0 {
        diagram: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    K0Check {
        presentation: PathBuf,
        #[arg(long)]
        depth: Option<usize>,
        #[command(flatten)]
        opts: CheckArgs,
    },
    Intertwine {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
        #[command(flatten)]
        out: Out,
    },
    Section {
        universal: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
        #[command(flatten)]
        out: Out,
    },
    Surject {
        universal: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
        #[command(flatten)]
        out: Out,
    },
    /// Graphviz text on standard output.
    Dot { diagram: PathBuf },
}

fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?)
    }
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T> {
    from_json(&read_text(path)?)
}

/// Standard output; a closed pipe is not an error.
fn say(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(out: &Out, text: &str) -> Result<()> {
    match &out.output {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            say(text);
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(out: &Out, v: &T) -> Result<()> {
    emit(out, &to_json(v))
}

fn parse_dims(s: &str) -> Result<Vec<Nat>> {
    let bad = || Error::Malformed(format!("bad dimension list {s:?}"));
    let mut v = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b): (Nat, Nat) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
                v.extend(a..=b);
            }
            None => v.push(part.parse().map_err(|_| bad())?),
        }
    }
    if v.is_empty() {
        return Err(bad());
    }
    Ok(v)
}

fn parse_nodes(s: &str) -> Result<IdealSet> {
    let nodes = s
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(str::parse::<NodeRef>)
        .collect::<Result<Vec<_>>>()?;
    Ok(IdealSet::from_nodes(nodes))
}

fn parse_universe(s: &str) -> Result<CategorySpec> {
    match s.strip_prefix("all:") {
        Some(cap) => Ok(CategorySpec::all_dims(
            cap.parse().map_err(|_| Error::Malformed(format!("bad cap {cap:?}")))?,
        )),
        None => Ok(CategorySpec::explicit(&parse_dims(s)?)),
    }
}

fn check_options(a: &CheckArgs) -> Result<CheckOptions> {
    Ok(CheckOptions {
        universe: a.dims.as_deref().map(parse_dims).transpose()?,
        unital: a.unital,
        source_levels: (a.levels > 0).then_some(a.levels),
        max_subset: a.max_subset,
    })
}

fn render_report(d: &BratteliDiagram, r: &CantorReport) -> String {
    let mut s = String::new();
    let verdict = if r.is_certified() { "certified-at-depth" } else { "violations-open" };
    s += &format!("verdict: {verdict}\ndepth: {}\n", r.depth);
    for c in [Condition::D0, Condition::D1, Condition::D2, Condition::D3] {
        s += &format!(
            "{c:?}: {} witnessed, {} unwitnessed\n",
            r.count(c, true),
            r.count(c, false)
        );
    }
    for n in &r.notes {
        s += &format!("note: {n}\n");
    }
    s += "unwitnessed:\n";
    for i in &r.unwitnessed {
        match i {
            Instance::D2 { level, sources, .. } => {
                let dims: Vec<String> = sources.iter().map(|&j| d.level(*level).dim(j).to_string()).collect();
                s += &format!("  {i} (source dims {})\n", dims.join(","));
            }
            _ => s += &format!("  {i}\n"),
        }
    }
    s += "witnessed:\n";
    for (i, w) in &r.witnessed {
        s += &format!("  {i}: {}\n", serde_json::to_string(w).expect("plain data"));
    }
    s
}

fn max_level(b: &Bounds, d: &BratteliDiagram) -> usize {
    b.max_level.unwrap_or(d.depth() - 1)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Gen {
            universe,
            unital,
            uhf,
            steps,
            lead,
            spec,
            log,
            out,
        } => {
            let run = match spec {
                Some(p) => load::<RunSpec>(&p)?,
                None => {
                    let mut category = parse_universe(universe.as_deref().unwrap_or_default())?;
                    category.unital = unital || uhf;
                    category.simple_matrix_mode = uhf;
                    RunSpec {
                        category,
                        steps: steps.unwrap_or_default(),
                        schedule: Schedule { lead },
                    }
                }
            };
            let (d, l) = build_fraisse(&run.category, run.steps, run.schedule)?;
            if let Some(p) = log {
                std::fs::write(&p, to_json(&l)).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            }
            emit_json(&out, &d)?;
            Ok(0)
        }
        Cmd::Check { diagram, prefix, opts } => {
            let mut d: BratteliDiagram = load(&diagram)?;
            if let Some(n) = prefix.depth {
                d = d.truncate(n.clamp(1, d.depth()));
            }
            let r = check_cantor(&d, &check_options(&opts)?)?;
            if opts.json {
                say(&to_json(&r));
            } else {
                say(&render_report(&d, &r));
            }
            Ok(if r.is_certified() { 0 } else { EXIT_VIOLATION })
        }
        Cmd::Amalgamate { ep1, ep2, unital, out } => {
            let (e1, e2): (EpPair, EpPair) = (load(&ep1)?, load(&ep2)?);
            let am = proper_amalgamate(&e1, &e2, unital)?;
            let ids = identities(&e1, &e2, &am)?;
            let ok = ids.iter().all(|i| i.holds);
            #[derive(Serialize)]
            struct Shown {
                #[serde(flatten)]
                am: afcantor::amalgam::Amalgam,
                identities: Vec<afcantor::amalgam::Identity>,
            }
            emit_json(&out, &Shown { am, identities: ids })?;
            Ok(if ok { 0 } else { EXIT_VIOLATION })
        }
        Cmd::Tensor { d1, d2, out } => {
            emit_json(&out, &tensor(&load(&d1)?, &load(&d2)?)?)?;
            Ok(0)
        }
        Cmd::Cantorize { diagram, out } => {
            emit_json(&out, &cantorize(&load(&diagram)?)?)?;
            Ok(0)
        }
        Cmd::Quotient { diagram, ideal, out } => {
            emit_json(&out, &quotient(&load(&diagram)?, &parse_nodes(&ideal)?)?)?;
            Ok(0)
        }
        Cmd::IdealClosure { diagram, seed, out } => {
            emit_json(&out, &ideal_closure(&load(&diagram)?, &parse_nodes(&seed)?)?)?;
            Ok(0)
        }
        Cmd::SplitCover { diagram, out } => {
            let (cover, ideal) = split_cover(&load(&diagram)?)?;
            emit_json(&out, &serde_json::json!({ "cover": cover, "ideal": ideal }))?;
            Ok(0)
        }
        Cmd::Essential { diagram, ideal } => {
            let e = is_essential(&load(&diagram)?, &parse_nodes(&ideal)?)?;
            let (word, code) = match e {
                Essential::YesAtDepth => ("yes-at-depth", 0),
                Essential::No => ("no", EXIT_VIOLATION),
                Essential::Inconclusive => ("inconclusive", EXIT_EXHAUSTED),
            };
            say(&format!("{word}\n"));
            Ok(code)
        }
        Cmd::K0 { diagram, out } => {
            emit_json(&out, &extract_k0(&load(&diagram)?))?;
            Ok(0)
        }
        Cmd::K0Check {
            presentation,
            depth,
            opts,
        } => {
            let p: DimensionGroupPresentation = load(&presentation)?;
            let r = check_universal_presentation(&p, depth.unwrap_or(p.depth()), &check_options(&opts)?)?;
            if opts.json {
                say(&to_json(&r));
            } else {
                say(&format!("depth: {}\n", r.depth));
                say(&format!("order-unit-in-prefix: {}\n", r.order_unit_in_prefix));
                for c in &r.conditions {
                    let state = if c.holds() { "witnessed" } else { "open" };
                    say(&format!(
                        "condition {} via {:?}: {state} ({} witnessed, {} unwitnessed)\n",
                        c.condition, c.counterpart, c.witnessed, c.unwitnessed
                    ));
                }
                for i in &r.cantor.unwitnessed {
                    say(&format!("  {i}\n"));
                }
            }
            Ok(if r.all_hold() { 0 } else { EXIT_VIOLATION })
        }
        Cmd::Intertwine { a, b, bounds, out } => {
            let (da, db): (BratteliDiagram, BratteliDiagram) = (load(&a)?, load(&b)?);
            let top = max_level(&bounds, &da).max(max_level(&bounds, &db));
            let r = intertwine(&da, &db, bounds.rounds, top)?;
            emit_json(&out, &r)?;
            Ok(match r {
                Intertwining::Found { .. } => 0,
                Intertwining::Absent { .. } => EXIT_VIOLATION,
                Intertwining::Exhausted { .. } => EXIT_EXHAUSTED,
            })
        }
        Cmd::Section { universal, b, bounds, out } => {
            let (du, db): (BratteliDiagram, BratteliDiagram) = (load(&universal)?, load(&b)?);
            let r = ep_section(&du, &db, bounds.rounds, max_level(&bounds, &du))?;
            emit_json(&out, &r)?;
            Ok(section_code(&r))
        }
        Cmd::Surject { universal, b, bounds, out } => {
            let (du, db): (BratteliDiagram, BratteliDiagram) = (load(&universal)?, load(&b)?);
            let w = universal_surjection_witness(&du, &db, bounds.rounds, max_level(&bounds, &du))?;
            emit_json(&out, &w)?;
            Ok(if w.is_complete() {
                0
            } else if !w.quotient_matches || w.essential == Essential::No {
                EXIT_VIOLATION
            } else {
                match section_code(&w.section) {
                    0 => EXIT_EXHAUSTED,
                    c => c,
                }
            })
        }
        Cmd::Dot { diagram } => {
            say(&to_dot(&load(&diagram)?));
            Ok(0)
        }
    }
}

fn section_code(s: &Section) -> u8 {
    match s {
        Section::Found { .. } => 0,
        Section::Absent { .. } => EXIT_VIOLATION,
        Section::Exhausted { .. } => EXIT_EXHAUSTED,
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_MALFORMED)
        }
    }
}
