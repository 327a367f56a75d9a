//! The `nsmodop` command line.
//!
//! Exit codes: 0 success, 1 domain or usage error, 2 failed verification,
//! 3 inconclusive verification.

use std::collections::BTreeSet;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::dihedral::{
    compose_wheels, enumerate_wheels, nonorientable_signatures, parse_wheel, spot_check_axioms, wheel_count,
};
use crate::envelope::{
    count_mod_ass, count_mod_com, leg_names, normal_form_graph, surface_signature, verify_envelope, EnvelopeClass,
    Status,
};
use crate::error::{Error, Result};
use crate::graphs::{
    canonical, canonical_unlabeled, enumerate_graphs, graph_from_json, graph_from_json_unchecked, graph_to_json,
    GraphMode, NsGraph, VertexConstraint,
};
use crate::operads::{
    axioms::DEFAULT_SEED, check_axioms, contract_along, free_component, free_component_set, AxiomConfig, FreeEvaluator,
    ModuleSpec, TerminalEvaluator,
};
use crate::orders::{
    canon_cyclic, cyclic_orders, enumerate_types, mc_cut, mc_merge, parse_linear_word, parse_multicyclic_type,
    parse_typed_arity, rotation_equal, Label,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "nsmodop", version, about = "Multicyclic orders, modular graphs and envelopes")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Canonical cyclic word of a linear word, e.g. `(c a b)`.
    Canon { word: String },
    /// Whether two linear words are rotations of each other.
    RotationEqual { a: String, b: String },
    /// Merge two multicyclic orders at `u` and `v`.
    Merge { left: String, u: String, right: String, v: String },
    /// Cut a multicyclic order at `u` and `v`.
    Cut { stype: String, u: String, v: String },
    /// Geometricity and geometric genus of a typed arity `({…}; g)`.
    Geometric { arity: String },
    /// Queries on one graph.
    Graph {
        #[command(subcommand)]
        cmd: GraphCmd,
    },
    /// Graft leg `u` of one graph to leg `v` of another.
    Graft { left: String, u: String, right: String, v: String },
    /// Join legs `u` and `v` of one graph.
    SelfGlue { graph: String, u: String, v: String },
    /// Contract the non-loop edge through the named flag.
    ContractEdge { graph: String, flag: String },
    /// Contract the loop through the named flag.
    ContractLoop { graph: String, flag: String },
    Enumerate {
        #[command(subcommand)]
        cmd: EnumerateCmd,
    },
    /// Components of free operads.
    Free {
        #[command(subcommand)]
        cmd: FreeCmd,
    },
    Axioms {
        #[command(subcommand)]
        cmd: AxiomsCmd,
    },
    Envelope {
        #[command(subcommand)]
        cmd: EnvelopeCmd,
    },
    Count {
        #[command(subcommand)]
        cmd: CountCmd,
    },
    /// Surface signature of an envelope class `({…}; g)`.
    Surface {
        #[arg(long)]
        class: String,
    },
    Dihedral {
        #[command(subcommand)]
        cmd: DihedralCmd,
    },
}

#[derive(Subcommand, Debug)]
enum GraphCmd {
    /// Oriented edge cycles as sequences of flag names.
    Faces {
        graph: String,
    },
    /// Induced multicyclic order on the legs.
    Type {
        graph: String,
    },
    Genus {
        graph: String,
    },
    Betti {
        graph: String,
    },
    /// Whether every vertex is geometric, and the arity's geometricity.
    Geometric {
        graph: String,
    },
    /// Canonical representative and fingerprint.
    Canon {
        graph: String,
        /// Forget leg labels.
        #[arg(long)]
        unlabeled: bool,
    },
    /// Structural diagnostics; exits 2 when the graph is invalid.
    Validate {
        graph: String,
    },
    /// Whether two graphs are isomorphic.
    Iso {
        a: String,
        b: String,
    },
    /// Fold the graph through an operad.
    ContractAlong {
        graph: String,
        #[arg(long, value_enum, default_value_t = EvaluatorKind::Terminal)]
        evaluator: EvaluatorKind,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EvaluatorKind {
    Terminal,
    Free,
}

#[derive(Args, Debug)]
struct LegArgs {
    /// Comma-separated leg labels.
    #[arg(long, value_delimiter = ',', conflicts_with = "n")]
    legs: Vec<String>,
    /// Use legs `a, b, c, …` instead of `--legs`.
    #[arg(long)]
    n: Option<usize>,
}

impl LegArgs {
    fn set(&self) -> Result<BTreeSet<Label>> {
        match self.n {
            Some(n) => Ok(leg_names(n)),
            None => {
                let mut out = BTreeSet::new();
                for l in self.legs.iter().filter(|l| !l.is_empty()) {
                    if !out.insert(Label::new(l)) {
                        return Err(Error::InvalidWord(Label::new(l)));
                    }
                }
                Ok(out)
            }
        }
    }
}

#[derive(Subcommand, Debug)]
enum EnumerateCmd {
    /// Graphs of terminal generators up to isomorphism.
    Graphs {
        #[command(flatten)]
        legs: LegArgs,
        #[arg(long)]
        g: u32,
        #[arg(long, default_value_t = 3)]
        vmax: usize,
        #[arg(long, default_value = "nonsigma")]
        mode: GraphMode,
    },
    /// Geometric multicyclic orders on the legs for genus `g`.
    Types {
        #[command(flatten)]
        legs: LegArgs,
        #[arg(long)]
        g: u32,
    },
}

#[derive(Subcommand, Debug)]
enum FreeCmd {
    /// Elements of one component, up to `vmax` vertices.
    Component {
        #[command(flatten)]
        module: ModuleArg,
        /// Typed arity `({…}; g)` (non-Sigma modules).
        #[arg(long)]
        arity: Option<String>,
        /// Leg set and genus (symmetric modules).
        #[command(flatten)]
        legs: LegArgs,
        #[arg(long)]
        g: Option<u32>,
        #[arg(long, default_value_t = 2)]
        vmax: usize,
    },
}

#[derive(Args, Debug)]
struct ModuleArg {
    /// `terminal`, `terminal-symmetric`, `two-generator`, inline JSON or a
    /// path to a JSON file.
    #[arg(long, default_value = "terminal")]
    module: String,
}

impl ModuleArg {
    fn load(&self) -> Result<ModuleSpec> {
        match self.module.as_str() {
            "terminal" => Ok(ModuleSpec::terminal(GraphMode::NonSigma)),
            "terminal-symmetric" => Ok(ModuleSpec::terminal(GraphMode::Symmetric)),
            "two-generator" => Ok(ModuleSpec::two_generator()),
            other => ModuleSpec::from_json(&read_source(other)?),
        }
    }
}

#[derive(Subcommand, Debug)]
enum AxiomsCmd {
    /// Randomized and exhaustive checks of the operad axioms on a free operad.
    Check {
        #[command(flatten)]
        module: ModuleArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 12)]
        max_flags: usize,
        /// Also run every instance with at most this many flags.
        #[arg(long)]
        exhaustive: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum EnvelopeCmd {
    /// Move-closure verification for `n` legs, genus `g`.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        g: u32,
        #[arg(long, default_value_t = 4)]
        vmax: usize,
        #[arg(long, default_value = "nonsigma")]
        mode: GraphMode,
    },
    /// Envelope class of a graph of terminal generators.
    NormalForm { graph: String },
}

#[derive(Subcommand, Debug)]
enum CountCmd {
    ModAss {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        g: u32,
    },
    ModCom {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        g: u32,
    },
    /// Cyclic orders on `n` labels.
    CyclicOrders {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum DihedralCmd {
    /// All wheels on the given labels.
    Enumerate {
        #[command(flatten)]
        legs: LegArgs,
    },
    /// Glue tooth `u` of wheel `x` to tooth `v` of wheel `y`.
    Compose { x: String, u: String, y: String, v: String },
    /// `2^(n-1) (n-1)!`.
    Count {
        #[arg(long)]
        n: usize,
    },
    /// Triples `(m, u, b)` with `g = 2m + b + u - 1`.
    Signatures {
        #[arg(long)]
        g: u32,
    },
    /// Random instances of the cyclic-operad axioms; failures are reported.
    SpotCheck {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 6)]
        max_teeth: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// Output of one command: text and JSON renderings plus an exit code.
struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, code: EXIT_OK }
    }
}

/// Inline JSON when the argument starts with `{`, otherwise a file path.
fn read_source(arg: &str) -> Result<String> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("cannot read `{arg}`: {e}")))
}

fn load_graph(arg: &str) -> Result<NsGraph> {
    graph_from_json(&read_source(arg)?)
}

fn graph_value(g: &NsGraph) -> Value {
    serde_json::from_str(&graph_to_json(g)).expect("graph JSON is valid")
}

fn graph_output(g: &NsGraph) -> Output {
    Output::ok(graph_to_json(g), graph_value(g))
}

fn flag_of(g: &NsGraph, name: &str) -> Result<usize> {
    g.flag_by_name(name).ok_or_else(|| Error::NoSuchEdge(Label::new(name)))
}

fn lines<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
}

fn status_code(s: Status) -> i32 {
    match s {
        Status::Pass => EXIT_OK,
        Status::Fail => EXIT_FAIL,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn execute(cmd: Cmd) -> Result<Output> {
    Ok(match cmd {
        Cmd::Canon { word } => {
            let c = canon_cyclic(&parse_linear_word(&word)?);
            Output::ok(c.to_string(), json!({ "word": c }))
        }
        Cmd::RotationEqual { a, b } => {
            let eq = rotation_equal(&parse_linear_word(&a)?, &parse_linear_word(&b)?);
            Output::ok(eq.to_string(), json!({ "equal": eq }))
        }
        Cmd::Merge { left, u, right, v } => {
            let s = mc_merge(
                &parse_multicyclic_type(&left)?,
                &Label::new(u),
                &parse_multicyclic_type(&right)?,
                &Label::new(v),
            )?;
            Output::ok(s.to_string(), json!({ "type": s, "b": s.b() }))
        }
        Cmd::Cut { stype, u, v } => {
            let s = mc_cut(&parse_multicyclic_type(&stype)?, &Label::new(u), &Label::new(v))?;
            Output::ok(s.to_string(), json!({ "type": s, "b": s.b() }))
        }
        Cmd::Geometric { arity } => {
            let t = parse_typed_arity(&arity)?;
            match t.geometric_genus() {
                Ok(big) => Output::ok(format!("geometric G={big}"), json!({ "geometric": true, "G": big })),
                Err(_) => Output::ok("not geometric", json!({ "geometric": false, "G": null })),
            }
        }
        Cmd::Graph { cmd } => graph_cmd(cmd)?,
        Cmd::Graft { left, u, right, v } => {
            graph_output(&load_graph(&left)?.graft(&Label::new(u), &load_graph(&right)?, &Label::new(v))?)
        }
        Cmd::SelfGlue { graph, u, v } => graph_output(&load_graph(&graph)?.self_glue(&Label::new(u), &Label::new(v))?),
        Cmd::ContractEdge { graph, flag } => {
            let g = load_graph(&graph)?;
            graph_output(&g.contract_edge(flag_of(&g, &flag)?)?)
        }
        Cmd::ContractLoop { graph, flag } => {
            let g = load_graph(&graph)?;
            graph_output(&g.contract_loop(flag_of(&g, &flag)?)?)
        }
        Cmd::Enumerate { cmd } => match cmd {
            EnumerateCmd::Graphs { legs, g, vmax, mode } => {
                let constraint = match mode {
                    GraphMode::NonSigma => VertexConstraint::Ribbon,
                    GraphMode::Symmetric => VertexConstraint::Symmetric,
                };
                let graphs: Vec<NsGraph> =
                    enumerate_graphs(&legs.set()?, g, vmax, &constraint).into_iter().map(|c| c.into_rep()).collect();
                let texts: Vec<String> = graphs.iter().map(graph_to_json).collect();
                let values: Vec<Value> = graphs.iter().map(graph_value).collect();
                Output::ok(
                    format!("count {}\n{}", graphs.len(), texts.join("\n")).trim_end().to_string(),
                    json!({ "count": graphs.len(), "graphs": values }),
                )
            }
            EnumerateCmd::Types { legs, g } => {
                let types = enumerate_types(&legs.set()?, g);
                Output::ok(
                    format!("count {}\n{}", types.len(), lines(&types)).trim_end().to_string(),
                    json!({ "count": types.len(), "types": types }),
                )
            }
        },
        Cmd::Free { cmd: FreeCmd::Component { module, arity, legs, g, vmax } } => {
            let spec = module.load()?;
            let elems = match (spec.mode, arity, g) {
                (GraphMode::NonSigma, Some(a), None) => free_component(&spec, &parse_typed_arity(&a)?, vmax)?,
                (GraphMode::Symmetric, None, Some(g)) => free_component_set(&spec, &legs.set()?, g, vmax)?,
                (GraphMode::NonSigma, _, _) => return Err(Error::Parse("non-Sigma modules take --arity".into())),
                (GraphMode::Symmetric, _, _) => {
                    return Err(Error::Parse("symmetric modules take --legs/--n and --g".into()))
                }
            };
            let texts: Vec<String> = elems.iter().map(|e| graph_to_json(e.graph())).collect();
            let values: Vec<Value> = elems.iter().map(|e| graph_value(e.graph())).collect();
            Output::ok(
                format!("count {}\n{}", elems.len(), texts.join("\n")).trim_end().to_string(),
                json!({ "count": elems.len(), "elements": values }),
            )
        }
        Cmd::Axioms { cmd: AxiomsCmd::Check { module, seed, trials, max_flags, exhaustive } } => {
            let spec = module.load()?;
            let cfg = AxiomConfig { trials, max_flags, seed, exhaustive_max_flags: exhaustive };
            let report = check_axioms(&spec, &cfg);
            let mut text = format!(
                "{} seed={} trials={} max_flags={}",
                if report.pass { "pass" } else { "fail" },
                report.seed,
                report.trials,
                report.max_flags
            );
            for (k, n) in &report.checked {
                text.push_str(&format!("\n  {k}: {n}"));
            }
            for f in &report.failures {
                text.push_str(&format!("\nFAILED {} ({}): {}", f.axiom, f.source, f.instance));
            }
            Output {
                code: if report.pass { EXIT_OK } else { EXIT_FAIL },
                text,
                json: serde_json::to_value(&report).expect("serializable"),
            }
        }
        Cmd::Envelope { cmd } => match cmd {
            EnvelopeCmd::Verify { n, g, vmax, mode } => {
                let r = verify_envelope(n, g, vmax, mode);
                Output {
                    code: status_code(r.status),
                    text: format!(
                        "{} n={} g={} vmax={} mode={} graphs={} components={} types={} expected_types={}",
                        r.status, r.n, r.g, r.vmax, r.mode, r.graphs, r.components, r.types, r.expected_types
                    ),
                    json: serde_json::to_value(&r).expect("serializable"),
                }
            }
            EnvelopeCmd::NormalForm { graph } => {
                let c = normal_form_graph(&load_graph(&graph)?)?;
                Output::ok(c.to_string(), json!({ "type": c.arity.stype, "genus": c.arity.genus }))
            }
        },
        Cmd::Count { cmd } => match cmd {
            CountCmd::ModAss { n, g } => {
                let c = count_mod_ass(n, g);
                Output::ok(c.to_string(), json!({ "n": n, "g": g, "count": c }))
            }
            CountCmd::ModCom { n, g } => {
                let c = count_mod_com(n, g);
                Output::ok(c.to_string(), json!({ "n": n, "g": g, "count": c }))
            }
            CountCmd::CyclicOrders { n } => {
                let c = if n == 0 { 1 } else { cyclic_orders(&leg_names(n).into_iter().collect::<Vec<_>>()).len() };
                Output::ok(c.to_string(), json!({ "n": n, "count": c }))
            }
        },
        Cmd::Surface { class } => {
            let s = surface_signature(&EnvelopeClass { arity: parse_typed_arity(&class)? })?;
            Output::ok(s.to_string(), serde_json::to_value(&s).expect("serializable"))
        }
        Cmd::Dihedral { cmd } => dihedral_cmd(cmd)?,
    })
}

fn graph_cmd(cmd: GraphCmd) -> Result<Output> {
    Ok(match cmd {
        GraphCmd::Faces { graph } => {
            let faces = load_graph(&graph)?.faces()?;
            let text: Vec<String> = faces
                .iter()
                .map(|f| format!("({})", f.iter().map(Label::as_str).collect::<Vec<_>>().join(" ")))
                .collect();
            Output::ok(text.join("\n"), json!({ "faces": faces }))
        }
        GraphCmd::Type { graph } => {
            let t = load_graph(&graph)?.leg_type()?;
            Output::ok(t.to_string(), json!({ "type": t, "b": t.b() }))
        }
        GraphCmd::Genus { graph } => {
            let g = load_graph(&graph)?.genus()?;
            Output::ok(g.to_string(), json!({ "genus": g }))
        }
        GraphCmd::Betti { graph } => {
            let b = load_graph(&graph)?.betti()?;
            Output::ok(b.to_string(), json!({ "betti": b }))
        }
        GraphCmd::Geometric { graph } => {
            let g = load_graph(&graph)?;
            let vertices = g.is_geometric_graph();
            let arity = match g.mode() {
                GraphMode::NonSigma => Some(g.arity()?.is_geometric()),
                GraphMode::Symmetric => None,
            };
            let text = match arity {
                Some(a) => format!("vertices={vertices} arity={a}"),
                None => format!("vertices={vertices}"),
            };
            Output::ok(text, json!({ "vertices": vertices, "arity": arity }))
        }
        GraphCmd::Canon { graph, unlabeled } => {
            let g = load_graph(&graph)?;
            let c = if unlabeled { canonical_unlabeled(&g) } else { canonical(&g) };
            Output::ok(
                format!("{}\nfingerprint {}", graph_to_json(c.rep()), c.fingerprint()),
                json!({ "graph": graph_value(c.rep()), "fingerprint": c.fingerprint() }),
            )
        }
        GraphCmd::Validate { graph } => {
            let g = graph_from_json_unchecked(&read_source(&graph)?)?;
            let diags = g.validate();
            let text = if diags.is_empty() { "valid".to_string() } else { lines(&diags) };
            Output {
                code: if diags.is_empty() { EXIT_OK } else { EXIT_FAIL },
                text,
                json: json!({ "valid": diags.is_empty(), "diagnostics": diags }),
            }
        }
        GraphCmd::Iso { a, b } => {
            let iso = crate::graphs::are_isomorphic(&load_graph(&a)?, &load_graph(&b)?);
            Output::ok(iso.to_string(), json!({ "isomorphic": iso }))
        }
        GraphCmd::ContractAlong { graph, evaluator } => {
            let g = load_graph(&graph)?;
            match evaluator {
                EvaluatorKind::Terminal => {
                    let t = contract_along(&g, &TerminalEvaluator)?;
                    Output::ok(t.to_string(), json!({ "type": t.stype, "genus": t.genus }))
                }
                EvaluatorKind::Free => graph_output(contract_along(&g, &FreeEvaluator)?.graph()),
            }
        }
    })
}

fn dihedral_cmd(cmd: DihedralCmd) -> Result<Output> {
    Ok(match cmd {
        DihedralCmd::Enumerate { legs } => {
            let wheels = enumerate_wheels(&legs.set()?)?;
            Output::ok(
                format!("count {}\n{}", wheels.len(), lines(&wheels)),
                json!({ "count": wheels.len(), "wheels": wheels }),
            )
        }
        DihedralCmd::Compose { x, u, y, v } => {
            let w = compose_wheels(&parse_wheel(&x)?, &Label::new(u), &parse_wheel(&y)?, &Label::new(v))?;
            Output::ok(w.to_string(), json!({ "wheel": w }))
        }
        DihedralCmd::Count { n } => {
            let c = wheel_count(n).ok_or_else(|| Error::Unsupported(format!("no wheel count for n = {n}")))?;
            Output::ok(c.to_string(), json!({ "n": n, "count": c }))
        }
        DihedralCmd::Signatures { g } => {
            let sigs = nonorientable_signatures(g);
            let text: Vec<String> = sigs.iter().map(|(m, u, b)| format!("m={m} u={u} b={b}")).collect();
            let values: Vec<Value> = sigs.iter().map(|(m, u, b)| json!({ "m": m, "u": u, "b": b })).collect();
            Output::ok(
                format!("count {}\n{}", sigs.len(), text.join("\n")),
                json!({ "g": g, "count": sigs.len(), "signatures": values }),
            )
        }
        DihedralCmd::SpotCheck { trials, max_teeth, seed } => {
            let r = spot_check_axioms(trials, max_teeth, seed);
            let mut text = format!("seed={} trials={} failures={}", r.seed, r.trials, r.failures.len());
            for (k, n) in &r.checked {
                text.push_str(&format!("\n  {k}: {n}"));
            }
            for f in &r.failures {
                text.push_str(&format!("\nFAILED {f}"));
            }
            Output::ok(text, serde_json::to_value(&r).expect("serializable"))
        }
    })
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{shown}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{shown}");
                    EXIT_ERROR
                }
            };
        }
    };
    let format = cli.format;
    match execute(cli.cmd) {
        Ok(o) => {
            let _ = match format {
                Format::Text => writeln!(out, "{}", o.text),
                Format::Json => writeln!(out, "{}", o.json),
            };
            o.code
        }
        Err(e) => {
            let _ = match format {
                Format::Text => writeln!(err, "error: {e}"),
                Format::Json => writeln!(out, "{}", json!({ "error": { "kind": e.kind(), "message": e.to_string() } })),
            };
            EXIT_ERROR
        }
    }
}
