//! Command-line front end. Exit status: 0 success or balanced, 1 unbalanced
//! or disagreement, 2 usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::abelian::GroupSpec;
use crate::digraph::{Digraph, Direction, TraversalMode, Witness};
use crate::error::{Error, Result};
use crate::flexible::{BfVerdict, FlexibleGraph, Verdict};
use crate::labeling::Labeling;
use crate::oracle::{self, Caps};
use crate::rigid::{br_balance, wr_join, wr_split, RigidGraph};
use crate::sample::sample_labeling;
use crate::structure::{Cardinality, Family};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNBALANCED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "balgraph",
    version,
    about = "Balanced group labelings of directed multigraphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Describe a function group as A^p x A_2^q and give its size.
    Structure(Common),
    /// Decide whether a labeling is balanced (or a vertex function balanceable).
    Check(WithLabels),
    /// Potential of a balanced edge function (HF).
    Potential(PotentialArgs),
    /// Parameters of a balanced labeling (WF or HR).
    Params(WithLabels),
    /// Extend a vertex function to a balanced labeling (BF or BR).
    Complete(WithLabels),
    /// Split a whole-graph labeling into vertex part and shifted edge part (WR).
    Split(WithLabels),
    /// Inverse of `split`: vertex lines give g, edge lines give f.
    Join(WithLabels),
    /// Count a function group by visiting every labeling.
    Count(Common),
    /// List cycles by enumeration.
    Cycles(CyclesArgs),
    /// Compare undirected balance with balance on every orientation.
    Orientations(OrientationArgs),
    /// Draw a random member of a function group.
    Sample(SampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Flexible,
    Rigid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CycleMode {
    Flexible,
    Rigid,
    Undirected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Text,
    Machine,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// HF, BF, WF, HR, BR or WR; implies the mode.
    #[arg(long)]
    pub family: Option<Family>,
    #[arg(long)]
    pub graph: PathBuf,
    /// e.g. "Z^2 x Z/4"
    #[arg(long)]
    pub group: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    pub emit: Emit,
    /// Write produced labelings here instead of into the report.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub caps: CapArgs,
}

#[derive(Debug, Args)]
pub struct CapArgs {
    #[arg(long = "max-cycles-edges")]
    pub max_cycle_edges: Option<usize>,
    #[arg(long)]
    pub max_enumeration: Option<u128>,
    #[arg(long)]
    pub max_orientation_edges: Option<usize>,
}

#[derive(Debug, Args)]
pub struct WithLabels {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub labels: PathBuf,
}

#[derive(Debug, Args)]
pub struct PotentialArgs {
    #[command(flatten)]
    pub inner: WithLabels,
    /// Vertex whose potential is 0 (default: first vertex of each component).
    #[arg(long)]
    pub root: Option<String>,
}

#[derive(Debug, Args)]
pub struct CyclesArgs {
    #[arg(long, value_enum, default_value = "flexible")]
    pub mode: CycleMode,
    #[arg(long)]
    pub graph: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OrientationArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub labels: PathBuf,
    /// Include vertex labels in cycle sums.
    #[arg(long)]
    pub whole: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        let d = Caps::default();
        Caps {
            max_cycle_edges: self.max_cycle_edges.unwrap_or(d.max_cycle_edges),
            max_enumeration: self.max_enumeration.unwrap_or(d.max_enumeration),
            max_orientation_edges: self
                .max_orientation_edges
                .unwrap_or(d.max_orientation_edges),
        }
    }
}

/// Ordered key/value report, printed as `key: value` lines or one JSON object.
#[derive(Debug, Default)]
pub struct Report {
    fields: Vec<(String, Value)>,
    labels: Option<String>,
}

impl Report {
    fn put(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.push((key.to_owned(), value.into()));
    }

    fn witness(&mut self, g: &Digraph, w: &Witness) {
        let steps: Vec<Value> = w
            .darts
            .iter()
            .map(|&d| {
                json!({
                    "edge": g.edge(d.edge).id,
                    "direction": match d.direction {
                        Direction::Forward => "forward",
                        Direction::Reverse => "reverse",
                    },
                    "from": g.vertex_id(g.source(d)),
                    "to": g.vertex_id(g.target(d)),
                })
            })
            .collect();
        self.put(
            "witness",
            json!({
                "start": g.vertex_id(w.start),
                "walk": w.render(g),
                "steps": steps,
            }),
        );
        if let Some(sum) = &w.sum {
            self.put("sum", sum.to_string());
        }
    }

    fn write(&self, out: &mut dyn Write, emit: Emit) -> std::io::Result<()> {
        match emit {
            Emit::Machine => {
                let mut obj = Map::new();
                for (k, v) in &self.fields {
                    obj.insert(k.clone(), v.clone());
                }
                if let Some(l) = &self.labels {
                    obj.insert("labels".into(), Value::String(l.clone()));
                }
                writeln!(out, "{}", Value::Object(obj))
            }
            Emit::Text => {
                for (k, v) in &self.fields {
                    match (k.as_str(), v) {
                        ("witness", Value::Object(w)) => {
                            writeln!(out, "witness: {}", w["walk"].as_str().unwrap_or(""))?
                        }
                        ("cycles", Value::Array(cs)) => {
                            for c in cs {
                                writeln!(out, "cycle: {}", c.as_str().unwrap_or(""))?;
                            }
                        }
                        (_, Value::String(s)) => writeln!(out, "{k}: {s}")?,
                        (_, Value::Object(m)) => {
                            for (sub, v) in m {
                                writeln!(out, "{k}.{sub}: {}", plain(v))?;
                            }
                        }
                        _ => writeln!(out, "{k}: {}", plain(v))?,
                    }
                }
                if let Some(l) = &self.labels {
                    writeln!(out, "labels:")?;
                    for line in l.lines() {
                        writeln!(out, "  {line}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => xs.iter().map(plain).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    run_command(&cli.command, out, err)
}

pub fn run_command(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let output = output_args(cmd);
    let mut report = Report::default();
    let code = match dispatch(cmd, &mut report) {
        Ok(code) => code,
        Err(Failure::Unbalanced(g, w)) => {
            report.put("verdict", "unbalanced");
            report.witness(&g, &w);
            EXIT_UNBALANCED
        }
        Err(Failure::Error(e)) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    if let (Some(path), Some(labels)) = (&output.output, &report.labels) {
        if let Err(e) = std::fs::write(path, labels) {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            return EXIT_USAGE;
        }
        report.labels = None;
        report.put("written", path.display().to_string());
    }
    if let Err(e) = report.write(out, output.emit) {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    code
}

fn output_args(cmd: &Command) -> &OutputArgs {
    match cmd {
        Command::Structure(c) | Command::Count(c) => &c.output,
        Command::Check(w)
        | Command::Params(w)
        | Command::Complete(w)
        | Command::Split(w)
        | Command::Join(w) => &w.common.output,
        Command::Potential(p) => &p.inner.common.output,
        Command::Cycles(c) => &c.output,
        Command::Orientations(o) => &o.output,
        Command::Sample(s) => &s.common.output,
    }
}

enum Failure {
    Unbalanced(Box<Digraph>, Box<Witness>),
    Error(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e.to_string())
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> std::result::Result<Digraph, Failure> {
    Digraph::parse(&read(path)?).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

fn load_labels(
    path: &Path,
    g: &Digraph,
    spec: &GroupSpec,
) -> std::result::Result<Labeling, Failure> {
    Labeling::parse(&read(path)?, g, spec)
        .map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

/// Resolves `--family`/`--mode`; `None` when neither names a family.
fn family_of(c: &Common) -> Result<(TraversalMode, Option<Family>)> {
    match (c.family, c.mode) {
        (Some(f), Some(m)) => {
            f.check_mode(mode_of(m))?;
            Ok((f.mode(), Some(f)))
        }
        (Some(f), None) => Ok((f.mode(), Some(f))),
        (None, Some(m)) => Ok((mode_of(m), None)),
        (None, None) => Ok((TraversalMode::Flexible, None)),
    }
}

fn require_family(c: &Common, allowed: &[Family]) -> std::result::Result<Family, Failure> {
    let (_, family) = family_of(c)?;
    let names: Vec<&str> = allowed.iter().map(|f| f.name()).collect();
    match family {
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(f) => Err(Failure::Error(format!(
            "family {f} is not supported here; expected one of {}",
            names.join(" ")
        ))),
        None => Err(Failure::Error(format!(
            "--family is required (one of {})",
            names.join(" ")
        ))),
    }
}

fn mode_of(m: Mode) -> TraversalMode {
    match m {
        Mode::Flexible => TraversalMode::Flexible,
        Mode::Rigid => TraversalMode::Rigid,
    }
}

fn families_for(mode: TraversalMode) -> [Family; 3] {
    match mode {
        TraversalMode::Rigid => [Family::HR, Family::BR, Family::WR],
        _ => [Family::HF, Family::BF, Family::WF],
    }
}

fn descriptor(g: &Digraph, family: Family) -> Result<crate::structure::StructureDescriptor> {
    match family.mode() {
        TraversalMode::Rigid => RigidGraph::new(g).structure(family),
        _ => FlexibleGraph::new(g).structure(family),
    }
}

fn cardinality_value(c: Cardinality) -> Value {
    match c {
        Cardinality::Finite(n) => Value::String(n.to_string()),
        Cardinality::Infinite => Value::String("infinite".into()),
        Cardinality::Overflow => Value::String("overflow".into()),
    }
}

fn dispatch(cmd: &Command, report: &mut Report) -> std::result::Result<i32, Failure> {
    match cmd {
        Command::Structure(c) => structure(c, report),
        Command::Check(w) => check(w, report),
        Command::Potential(p) => potential(p, report),
        Command::Params(w) => params(w, report),
        Command::Complete(w) => complete(w, report),
        Command::Split(w) => split(w, report),
        Command::Join(w) => join(w, report),
        Command::Count(c) => count(c, report),
        Command::Cycles(c) => cycles(c, report),
        Command::Orientations(o) => orientations(o, report),
        Command::Sample(s) => sample(s, report),
    }
}

fn structure(c: &Common, report: &mut Report) -> std::result::Result<i32, Failure> {
    let g = load_graph(&c.graph)?;
    let spec = GroupSpec::parse(&c.group)?;
    let (mode, family) = family_of(c)?;
    let families: Vec<Family> = match family {
        Some(f) => vec![f],
        None => families_for(mode).to_vec(),
    };
    report.put("mode", mode.name());
    report.put("group", spec.to_string());
    for f in families {
        let d = descriptor(&g, f)?;
        let entry = json!({
            "descriptor": d.to_string(),
            "p": d.a_exponent,
            "q": d.a2_exponent,
            "cardinality": cardinality_value(d.cardinality(&spec)),
        });
        report.put(f.name(), entry);
    }
    Ok(EXIT_OK)
}

fn check(w: &WithLabels, report: &mut Report) -> std::result::Result<i32, Failure> {
    let family = require_family(&w.common, &Family::ALL)?;
    let g = load_graph(&w.common.graph)?;
    let spec = GroupSpec::parse(&w.common.group)?;
    let l = load_labels(&w.labels, &g, &spec)?;
    report.put("family", family.name());
    let verdict = match family {
        Family::HF => FlexibleGraph::new(&g).hf_check(&l)?,
        Family::WF => FlexibleGraph::new(&g).wf_check(&l)?,
        Family::HR => RigidGraph::new(&g).hr_check(&l)?,
        Family::WR => RigidGraph::new(&g).wr_check(&l)?,
        Family::BF => {
            return match FlexibleGraph::new(&g).bf_balance(&l.vertex_part(&g))? {
                BfVerdict::Balanceable { balancer } => {
                    report.put("verdict", "balanceable");
                    report.labels = Some(balancer.to_text(&g));
                    Ok(EXIT_OK)
                }
                BfVerdict::NotBalanceable { edge, witness } => {
                    report.put("verdict", "not balanceable");
                    report.put("edge", g.edge(edge).id.clone());
                    report.witness(&g, &witness);
                    Ok(EXIT_UNBALANCED)
                }
            };
        }
        Family::BR => {
            let h = br_balance(&g, &l.vertex_part(&g))?;
            report.put("verdict", "balanceable");
            report.labels = Some(h.edge_part(&g).to_text(&g));
            return Ok(EXIT_OK);
        }
    };
    match verdict {
        Verdict::Balanced => {
            report.put("verdict", "balanced");
            Ok(EXIT_OK)
        }
        Verdict::Unbalanced(wit) => Err(Failure::Unbalanced(Box::new(g), Box::new(wit))),
    }
}

fn unbalanced(g: &Digraph, e: Error) -> Failure {
    match e {
        Error::Unbalanced(w) => Failure::Unbalanced(Box::new(g.clone()), w),
        other => other.into(),
    }
}

fn potential(p: &PotentialArgs, report: &mut Report) -> std::result::Result<i32, Failure> {
    let w = &p.inner;
    require_family(&w.common, &[Family::HF])?;
    let g = load_graph(&w.common.graph)?;
    let spec = GroupSpec::parse(&w.common.group)?;
    let f = load_labels(&w.labels, &g, &spec)?;
    let root = p.root.as_deref().map(|r| g.require_vertex(r)).transpose()?;
    let phi = FlexibleGraph::new(&g)
        .hf_potential_of(&f, root)
        .map_err(|e| unbalanced(&g, e))?;
    report.put("family", "HF");
    report.put("verdict", "balanced");
    report.labels = Some(phi.to_text(&g));
    Ok(EXIT_OK)
}

fn params(w: &WithLabels, report: &mut Report) -> std::result::Result<i32, Failure> {
    let family = require_family(&w.common, &[Family::WF, Family::HR])?;
    let g = load_graph(&w.common.graph)?;
    let spec = GroupSpec::parse(&w.common.group)?;
    let l = load_labels(&w.labels, &g, &spec)?;
    report.put("family", family.name());
    report.put("verdict", "balanced");
    let vertex_map = |vs: &[crate::abelian::GroupElement]| -> Value {
        vs.iter()
            .enumerate()
            .map(|(v, a)| (g.vertex_id(v).to_owned(), Value::String(a.to_string())))
            .collect::<Map<_, _>>()
            .into()
    };
    let root_ids = |rs: &[usize]| -> Value {
        rs.iter()
            .map(|&r| Value::String(g.vertex_id(r).to_owned()))
            .collect()
    };
    if family == Family::WF {
        let p = FlexibleGraph::new(&g)
            .wf_params_of(&l)
            .map_err(|e| unbalanced(&g, e))?;
        report.put("roots", root_ids(&p.roots));
        let amplitudes: Map<_, _> = p
            .roots
            .iter()
            .zip(&p.amplitudes)
            .map(|(&r, a)| (g.vertex_id(r).to_owned(), Value::String(a.to_string())))
            .collect();
        report.put("amplitude", Value::Object(amplitudes));
        report.put("potential", vertex_map(&p.potential));
    } else {
        let p = RigidGraph::new(&g)
            .hr_params_of(&l)
            .map_err(|e| unbalanced(&g, e))?;
        report.put("roots", root_ids(&p.roots));
        report.put("potential", vertex_map(&p.potential));
        let cross: Map<_, _> = p
            .cross_values
            .iter()
            .map(|(&e, a)| (g.edge(e).id.clone(), Value::String(a.to_string())))
            .collect();
        report.put("cross", Value::Object(cross));
    }
    Ok(EXIT_OK)
}

fn complete(w: &WithLabels, report: &mut Report) -> std::result::Result<i32, Failure> {
    let family = require_family(&w.common, &[Family::BF, Family::BR])?;
    let g = load_graph(&w.common.graph)?;
    let spec = GroupSpec::parse(&w.common.group)?;
    let gv = load_labels(&w.labels, &g, &spec)?.vertex_part(&g);
    report.put("family", family.name());
    if family == Family::BR {
        report.put("verdict", "balanceable");
        report.labels = Some(br_balance(&g, &gv)?.to_text(&g));
        return Ok(EXIT_OK);
    }
    match FlexibleGraph::new(&g).bf_balance(&gv)? {
        BfVerdict::Balanceable { balancer } => {
            report.put("verdict", "balanceable");
            let mut full = gv.clone();
            for e in 0..g.edge_count() {
                full.set_edge(e, balancer.edge(e).expect("balancer is total").clone())?;
            }
            report.labels = Some(full.to_text(&g));
            Ok(EXIT_OK)
        }
        BfVerdict::NotBalanceable { edge, witness } => {
            report.put("verdict", "not balanceable");
            report.put("edge", g.edge(edge).id.clone());
            report.witness(&g, &witness);
            Ok(EXIT_UNBALANCED)
        }
    }
}

fn split(w: &WithLabels, report: &mut Report) -> std::result::Result<i32, Failure> {
    require_family(&w.common, &[Family::WR])?;
    let g = load_graph(&w.common.graph)?;
    let spec = GroupSpec::parse(&w.common.group)?;
    let h = load_labels(&w.labels, &g, &spec)?;
    let (gv, f) = wr_split(&g, &h)?;
    let edge_verdict = RigidGraph::new(&g).hr_check(&f)?;
    report.put("family", "WR");
    report.put(
        "verdict",
        if edge_verdict.is_balanced() {
            "balanced"
        } else {
            "unbalanced"
        },
    );
    report.labels = Some(gv.to_text(&g) + &f.to_text(&g));
    Ok(if edge_verdict.is_balanced() {
        EXIT_OK
    } else {
        EXIT_UNBALANCED
    })
}

fn join(w: &WithLabels, report: &mut Report) -> std::result::Result<i32, Failure> {
    require_family(&w.common, &[Family::WR])?;
    let g = load_graph(&w.common.graph)?;
    let spec = GroupSpec::parse(&w.common.group)?;
    let l = load_labels(&w.labels, &g, &spec)?;
    let h = wr_join(&g, &l.vertex_part(&g), &l.edge_part(&g))?;
    report.put("family", "WR");
    report.labels = Some(h.to_text(&g));
    Ok(EXIT_OK)
}

fn count(c: &Common, report: &mut Report) -> std::result::Result<i32, Failure> {
    let family = require_family(c, &Family::ALL)?;
    let g = load_graph(&c.graph)?;
    let spec = GroupSpec::parse(&c.group)?;
    let counted = oracle::exhaustive_count(&g, family, &spec, &c.output.caps.caps())?;
    let d = descriptor(&g, family)?;
    let predicted = d.cardinality(&spec);
    report.put("family", family.name());
    report.put("count", counted.to_string());
    report.put("descriptor", d.to_string());
    report.put("cardinality", cardinality_value(predicted));
    let agree = predicted == Cardinality::Finite(counted);
    report.put("agree", agree);
    Ok(if agree { EXIT_OK } else { EXIT_UNBALANCED })
}

fn cycles(c: &CyclesArgs, report: &mut Report) -> std::result::Result<i32, Failure> {
    let g = load_graph(&c.graph)?;
    let mode = match c.mode {
        CycleMode::Flexible => TraversalMode::Flexible,
        CycleMode::Rigid => TraversalMode::Rigid,
        CycleMode::Undirected => TraversalMode::Undirected,
    };
    let set = oracle::enumerate_cycles(&g, mode, c.output.caps.caps().max_cycle_edges)?;
    report.put("mode", mode.name());
    report.put("count", set.cycles.len());
    report.put(
        "cycles",
        set.cycles
            .iter()
            .map(|w| Value::String(w.render(&g)))
            .collect::<Vec<_>>(),
    );
    Ok(EXIT_OK)
}

fn orientations(o: &OrientationArgs, report: &mut Report) -> std::result::Result<i32, Failure> {
    let g = load_graph(&o.graph)?;
    let spec = GroupSpec::parse(&o.group)?;
    let l = load_labels(&o.labels, &g, &spec)?;
    let r = oracle::orientation_intersection_check(&g, &l, o.whole, &o.output.caps.caps())?;
    report.put("whole", o.whole);
    report.put("undirected_balanced", r.undirected_balanced);
    report.put("intersection_balanced", r.intersection_balanced);
    report.put("agree", r.agree);
    Ok(if r.agree { EXIT_OK } else { EXIT_UNBALANCED })
}

fn sample(s: &SampleArgs, report: &mut Report) -> std::result::Result<i32, Failure> {
    let family = require_family(&s.common, &Family::ALL)?;
    let g = load_graph(&s.common.graph)?;
    let spec = GroupSpec::parse(&s.common.group)?;
    let l = sample_labeling(&g, &spec, family, s.seed)?;
    report.put("family", family.name());
    report.put("seed", s.seed.to_string());
    report.labels = Some(l.to_text(&g));
    Ok(EXIT_OK)
}
