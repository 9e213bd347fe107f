use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use reasm_core::layout::{evaluate_arrangement, induce_arrangement, induce_reassembling};
use reasm_core::reduction::{reduce_alpha, reduce_beta, AlphaReduction, BetaReduction, Direction};
use reasm_core::sequential::{bin, canonical_ordering, seq_trace, EdgeOrdering};
use reasm_core::solvers::{self, BruteForce, ExactDp, LinearSolver, Objective, SolveResult};
use reasm_core::verify::{CheckOutcome, Suite};
use reasm_core::{generators, Error, Graph, LinearArrangement, ReassemblyTree, Vertex};
use serde::Serialize;
use serde_json::{json, Value};

const EXIT_VALIDATION: u8 = 2;
const EXIT_LIMIT: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(name = "reasm", version, about = "Linear graph reassembling and linear arrangement toolkit")]
struct Cli {
    /// Human-readable tables instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Worker threads for parallel sections.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Measure a tree, an arrangement or an edge ordering against a graph.
    Eval(EvalArgs),
    /// Compute an optimal arrangement or reassembling.
    Solve(SolveArgs),
    /// Run a reduction through auxiliary graphs.
    Reduce(ReduceArgs),
    /// Run self-check suites.
    Verify(VerifyArgs),
    /// Print a graph from a named family.
    Gen(GenArgs),
    /// Convert between trees, arrangements and edge orderings.
    Convert(ConvertArgs),
}

#[derive(Args)]
struct GraphInput {
    /// Graph file (`n m` header, then one edge per line).
    #[arg(value_name = "GRAPH")]
    path: Option<PathBuf>,
    #[arg(long = "graph", value_name = "GRAPH", conflicts_with = "path")]
    flag: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ObjectInput {
    #[arg(long)]
    tree: Option<PathBuf>,
    #[arg(long)]
    arrangement: Option<PathBuf>,
    #[arg(long)]
    ordering: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    graph: GraphInput,
    #[command(flatten)]
    object: ObjectInput,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Alpha,
    Beta,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::Alpha => Objective::Alpha,
            ObjectiveArg::Beta => Objective::Beta,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Arrangement,
    Linear,
    Binary,
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Dp,
    Brute,
}

impl Engine {
    fn solver(self) -> &'static dyn LinearSolver {
        match self {
            Engine::Dp => &ExactDp,
            Engine::Brute => &BruteForce,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    graph: GraphInput,
    #[arg(long, value_enum)]
    objective: ObjectiveArg,
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long)]
    anchor: Option<Vertex>,
    #[arg(long, value_enum, default_value = "dp")]
    engine: Engine,
    /// Also write the witness, in its own file format, to this path.
    #[arg(long, value_name = "FILE")]
    witness_out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    A2r,
    R2a,
}

#[derive(Args)]
struct ReduceArgs {
    #[command(flatten)]
    graph: GraphInput,
    #[arg(long, value_enum)]
    problem: ObjectiveArg,
    /// Required for the beta problem.
    #[arg(long, value_enum)]
    direction: Option<DirectionArg>,
    #[arg(long, value_enum, default_value = "dp")]
    engine: Engine,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run; all suites when omitted.
    #[arg(long)]
    suite: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Complete,
    Star,
    Path,
    Cycle,
    Qcube3,
    RingTree,
    Random,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    family: Family,
    /// Vertex count (complete, path, cycle, random) or leaf count (star).
    #[arg(long, short)]
    n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    rings: usize,
    #[arg(long, default_value_t = 4)]
    ring_size: usize,
    #[arg(long, default_value_t = 1)]
    path_len: usize,
    /// Extra-edge probability for random graphs.
    #[arg(long, default_value_t = 0.3)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the graph file here as well.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Tree,
    Arrangement,
    Ordering,
}

#[derive(Args)]
struct ConvertArgs {
    #[command(flatten)]
    graph: GraphInput,
    #[command(flatten)]
    object: ObjectInput,
    #[arg(long, value_enum)]
    to: Target,
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn validation(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }

    fn core(context: Option<&Path>, e: Error) -> Self {
        let code = if e.is_resource_limit() { EXIT_LIMIT } else { EXIT_VALIDATION };
        let message = match context {
            Some(p) => format!("{}: {e}", p.display()),
            None => e.to_string(),
        };
        Failure { code, message }
    }
}

type CmdResult<T> = std::result::Result<T, Failure>;

trait Context<T> {
    fn at(self, path: &Path) -> CmdResult<T>;
    fn plain(self) -> CmdResult<T>;
}

impl<T> Context<T> for reasm_core::Result<T> {
    fn at(self, path: &Path) -> CmdResult<T> {
        self.map_err(|e| Failure::core(Some(path), e))
    }
    fn plain(self) -> CmdResult<T> {
        self.map_err(|e| Failure::core(None, e))
    }
}

fn read(path: &Path) -> CmdResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::validation(format!("{}: {e}", path.display())))
}

fn load_graph(input: &GraphInput) -> CmdResult<Graph> {
    let path = input
        .path
        .as_ref()
        .or(input.flag.as_ref())
        .ok_or_else(|| Failure::validation("a graph file is required"))?;
    Graph::parse(&read(path)?).at(path)
}

enum Object {
    Tree(ReassemblyTree),
    Arrangement(LinearArrangement),
    Ordering(EdgeOrdering),
}

fn load_object(input: &ObjectInput) -> CmdResult<(Object, &Path)> {
    if let Some(p) = &input.tree {
        Ok((Object::Tree(ReassemblyTree::parse(&read(p)?).at(p)?), p))
    } else if let Some(p) = &input.arrangement {
        Ok((Object::Arrangement(LinearArrangement::parse(&read(p)?).at(p)?), p))
    } else if let Some(p) = &input.ordering {
        Ok((Object::Ordering(EdgeOrdering::parse(&read(p)?).at(p)?), p))
    } else {
        Err(Failure::validation("one of --tree, --arrangement, --ordering is required"))
    }
}

/// What a command prints: the JSON value and its table form.
struct Output {
    json: Value,
    table: String,
    code: u8,
}

impl Output {
    fn new<T: Serialize>(value: &T, table: String) -> Self {
        Output {
            json: serde_json::to_value(value).expect("reports serialize"),
            table,
            code: 0,
        }
    }
}

fn table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().fold(String::new(), |mut s, (k, v)| {
        let _ = writeln!(s, "{k:<width$}  {v}");
        s
    })
}

fn cmd_eval(args: &EvalArgs) -> CmdResult<Output> {
    let g = load_graph(&args.graph)?;
    let (object, path) = load_object(&args.object)?;
    match object {
        Object::Tree(t) => {
            let m = t.measures(&g).at(path)?;
            let mut s = table(&[("alpha", m.alpha.to_string()), ("beta", m.beta.to_string())]);
            s.push('\n');
            for c in &m.clusters {
                let _ = writeln!(s, "{:>4}  {}", c.degree, c.set);
            }
            Ok(Output::new(&m, s))
        }
        Object::Arrangement(phi) => {
            let r = evaluate_arrangement(&g, &phi).at(path)?;
            let mut s = table(&[
                ("alpha", r.alpha.to_string()),
                ("beta", r.beta.to_string()),
                ("gamma", r.gamma.to_string()),
            ]);
            s.push_str("\npos  vertex  cut\n");
            for (i, (v, c)) in phi.order().iter().zip(&r.cuts).enumerate() {
                let _ = writeln!(s, "{:>3}  {v:>6}  {c:>3}", i + 1);
            }
            Ok(Output::new(&r, s))
        }
        Object::Ordering(pi) => {
            let trace = seq_trace(&g, &pi).at(path)?;
            let tree = trace.chain.to_tree();
            let m = tree.measures(&g).plain()?;
            let mut s = table(&[
                ("tree", tree.to_string()),
                ("alpha", m.alpha.to_string()),
                ("beta", m.beta.to_string()),
            ]);
            s.push('\n');
            for step in &trace.steps {
                let _ = writeln!(s, "{}  merges {} + {}", step.edge, step.merged[0], step.merged[1]);
            }
            let value = json!({
                "tree": tree.to_string(),
                "alpha": m.alpha,
                "beta": m.beta,
                "trace": trace,
            });
            Ok(Output::new(&value, s))
        }
    }
}

fn dispatch_solve(g: &Graph, args: &SolveArgs) -> reasm_core::Result<SolveResult> {
    let obj = Objective::from(args.objective);
    match (args.mode, args.engine, args.anchor) {
        (ModeArg::Binary, _, Some(_)) => Err(Error::Precondition(
            "--anchor applies to arrangement and linear modes only",
        )),
        (ModeArg::Binary, Engine::Dp, None) => solvers::binary_split_dp(g, obj),
        (ModeArg::Binary, Engine::Brute, None) => solvers::brute_force_binary_reassembling(g, obj),
        (ModeArg::Arrangement, Engine::Dp, a) => solvers::exact_arrangement(g, obj, a),
        (ModeArg::Arrangement, Engine::Brute, a) => solvers::brute_force_arrangement(g, obj, a),
        (ModeArg::Linear, Engine::Dp, a) => solvers::exact_linear_reassembling(g, obj, a),
        (ModeArg::Linear, Engine::Brute, a) => solvers::brute_force_linear_reassembling(g, obj, a),
    }
}

fn cmd_solve(args: &SolveArgs) -> CmdResult<Output> {
    let g = load_graph(&args.graph)?;
    let r = dispatch_solve(&g, args).plain()?;
    if let Some(out) = &args.witness_out {
        std::fs::write(out, format!("{}\n", r.witness))
            .map_err(|e| Failure::validation(format!("{}: {e}", out.display())))?;
    }
    let mut rows = vec![
        ("objective", r.objective.to_string()),
        ("value", r.value.to_string()),
        ("witness", r.witness.to_string()),
    ];
    if let Some(w) = r.anchor {
        rows.push(("anchor", w.to_string()));
    }
    rows.push(("states", r.stats.states.to_string()));
    rows.push(("millis", r.stats.millis.to_string()));
    Ok(Output::new(&r, table(&rows)))
}

fn beta_table(r: &BetaReduction) -> String {
    let mut s = String::from("anchor  beta\n");
    for a in &r.anchors {
        let _ = writeln!(s, "{:>6}  {:>4}", a.w, a.beta);
    }
    s.push('\n');
    s + &table(&[
        ("best anchor", r.best.w.to_string()),
        ("best beta", r.best.beta.to_string()),
        ("object", r.best.object.to_string()),
        ("scatter0", r.checks.scatter0.to_string()),
        ("balanced", r.checks.balanced.to_string()),
    ])
}

fn alpha_table(r: &AlphaReduction) -> String {
    table(&[
        ("branch", serde_json::to_value(r.branch).unwrap().as_str().unwrap_or("").to_string()),
        ("max degree", r.deg3.max_degree.to_string()),
        ("arrangement", r.arrangement.to_string()),
        ("cutwidth", r.cutwidth.to_string()),
    ])
}

fn cmd_reduce(args: &ReduceArgs, jobs: Option<usize>) -> CmdResult<Output> {
    let g = load_graph(&args.graph)?;
    let inner = args.engine.solver();
    match args.problem {
        ObjectiveArg::Beta => {
            let direction = match args.direction {
                Some(DirectionArg::A2r) => Direction::ArrangementToReassembling,
                Some(DirectionArg::R2a) => Direction::ReassemblingToArrangement,
                None => return Err(Failure::validation("--direction is required for --problem beta")),
            };
            let r = reduce_beta(&g, direction, inner, jobs).plain()?;
            Ok(Output::new(&r, beta_table(&r)))
        }
        ObjectiveArg::Alpha => {
            let r = reduce_alpha(&g, inner).plain()?;
            let tree = reasm_core::reduction::alpha_reassembling_from_arrangement(&g, &r.arrangement).plain()?;
            let mut value = serde_json::to_value(&r).expect("reports serialize");
            value["tree"] = Value::String(tree.to_string());
            let s = alpha_table(&r);
            Ok(Output::new(&value, s))
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult<Output> {
    let suites = match &args.suite {
        None => Suite::ALL.to_vec(),
        Some(name) => vec![name.parse::<Suite>().map_err(Failure::validation)?],
    };
    let mut outcomes: Vec<CheckOutcome> = Vec::new();
    for s in suites {
        outcomes.extend(s.run().plain()?);
    }
    let mut s = String::new();
    for o in &outcomes {
        let mark = if o.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{mark}  {:<18} {:<60} {:>7} cases", o.suite, o.check, o.cases);
        if let Some(e) = &o.example {
            let _ = writeln!(s, "      first failure: {e}");
        }
    }
    let failed = outcomes.iter().any(|o| !o.pass);
    let mut out = Output::new(&outcomes, s);
    if failed {
        out.code = EXIT_VERIFY;
    }
    Ok(out)
}

fn cmd_gen(args: &GenArgs) -> CmdResult<Output> {
    let need_n = || args.n.ok_or_else(|| Failure::validation("--n is required for this family"));
    let g = match args.family {
        Family::Complete => generators::complete(need_n()?),
        Family::Star => generators::star(need_n()?),
        Family::Path => generators::path(need_n()?),
        Family::Cycle => generators::cycle(need_n()?),
        Family::Qcube3 => Ok(generators::qcube3()),
        Family::RingTree => generators::ring_tree(args.rings, args.ring_size, args.path_len),
        Family::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            generators::random_connected(need_n()?, args.p, &mut rng)
        }
    }
    .plain()?;
    let text = g.to_text();
    if let Some(out) = &args.out {
        std::fs::write(out, &text).map_err(|e| Failure::validation(format!("{}: {e}", out.display())))?;
    }
    let edges: Vec<[Vertex; 2]> = g.edges().iter().map(|e| [e.lo, e.hi]).collect();
    let value = json!({ "n": g.n(), "m": g.m(), "edges": edges, "text": text });
    Ok(Output::new(&value, text))
}

fn cmd_convert(args: &ConvertArgs) -> CmdResult<Output> {
    let g = load_graph(&args.graph)?;
    let (object, path) = load_object(&args.object)?;
    let (from, text) = match (object, args.to) {
        (Object::Tree(t), Target::Arrangement) => ("tree", induce_arrangement(&g, &t).at(path)?.to_string()),
        (Object::Tree(t), Target::Ordering) => ("tree", canonical_ordering(&g, &t).at(path)?.to_string()),
        (Object::Arrangement(a), Target::Tree) => {
            ("arrangement", induce_reassembling(&g, &a).at(path)?.to_string())
        }
        (Object::Ordering(o), Target::Tree) => ("ordering", bin(&g, &o).at(path)?.to_string()),
        (Object::Arrangement(a), Target::Ordering) => {
            let t = induce_reassembling(&g, &a).at(path)?;
            ("arrangement", canonical_ordering(&g, &t).at(path)?.to_string())
        }
        (Object::Ordering(o), Target::Arrangement) => {
            let t = bin(&g, &o).at(path)?;
            ("ordering", induce_arrangement(&g, &t).at(path)?.to_string())
        }
        (Object::Tree(_), Target::Tree)
        | (Object::Arrangement(_), Target::Arrangement)
        | (Object::Ordering(_), Target::Ordering) => {
            return Err(Failure::validation("source and target kinds are the same"))
        }
    };
    let to = match args.to {
        Target::Tree => "tree",
        Target::Arrangement => "arrangement",
        Target::Ordering => "ordering",
    };
    let value = json!({ "from": from, "to": to, "object": text.trim_end() });
    let s = format!("{}\n", text.trim_end());
    Ok(Output::new(&value, s))
}

fn run(cli: &Cli) -> CmdResult<Output> {
    match &cli.verb {
        Verb::Eval(a) => cmd_eval(a),
        Verb::Solve(a) => cmd_solve(a),
        Verb::Reduce(a) => cmd_reduce(a, cli.jobs),
        Verb::Verify(a) => cmd_verify(a),
        Verb::Gen(a) => cmd_gen(a),
        Verb::Convert(a) => cmd_convert(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.pretty {
                print!("{}", out.table);
            } else if let (Verb::Verify(_), Value::Array(lines)) = (&cli.verb, &out.json) {
                for line in lines {
                    println!("{line}");
                }
            } else {
                println!("{}", out.json);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("{}", json!({ "error": f.message, "exit": f.code }));
            ExitCode::from(f.code)
        }
    }
}
