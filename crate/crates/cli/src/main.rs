use std::fmt::Write as _;
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use picard_strata::oracle::{verify_corpus, CorpusSpec, StabilityFilter};
use picard_strata::{
    class_group, class_representatives, classify, divisor_lattice, enumerate_balanced,
    enumerate_special_vine_generators, gcd_invariant, is_d_general, positive_degree_representative, DualGraph,
    Error, Method, Multidegree,
};
use serde::Serialize;
use serde_json::json;

const FORMAT: u32 = 1;
const THREADS_VAR: &str = "PICARD_STRATA_THREADS";

#[derive(Parser, Debug)]
#[command(name = "picard-strata", version, about = "Balanced multidegrees and d-special strata of stable curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a multidegree, or the graph itself when none is given.
    Classify(ClassifyArgs),
    /// List the balanced multidegrees of a given total degree.
    Balanced(BalancedArgs),
    /// Invariant factors of the degree class group.
    ClassGroup(ClassGroupArgs),
    /// Vine curves generating the d-special locus in genus g.
    StrataGenerators(GeneratorArgs),
    /// The lattice of strata indexed by divisors of 2g-2.
    Lattice(LatticeArgs),
    /// Contract exceptional components.
    StableModel(StableModelArgs),
    /// Check every fast path against its brute-force reference on a corpus.
    OracleVerify(OracleArgs),
}

#[derive(Args, Debug)]
struct GraphArg {
    /// Dual graph in the JSON graph format.
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[command(flatten)]
    graph: GraphArg,
    /// Total degree; required without a multidegree to decide d-generality.
    #[arg(long, allow_hyphen_values = true)]
    degree: Option<i64>,
    /// Multidegree as a JSON array in vertex declaration order.
    #[arg(long, conflicts_with = "md_file", allow_hyphen_values = true)]
    multidegree: Option<String>,
    /// File holding the multidegree JSON array.
    #[arg(long)]
    md_file: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct BalancedArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(long, allow_hyphen_values = true)]
    degree: i64,
    /// Only stably balanced multidegrees.
    #[arg(long)]
    stably: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ClassGroupArgs {
    #[command(flatten)]
    graph: GraphArg,
    /// Also list one semibalanced representative per class of this degree.
    #[arg(long, allow_hyphen_values = true)]
    degree: Option<i64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct GeneratorArgs {
    #[arg(long)]
    genus: i64,
    #[arg(long, allow_hyphen_values = true)]
    degree: i64,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct LatticeArgs {
    #[arg(long)]
    genus: i64,
    #[arg(long, conflicts_with = "json")]
    dot: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct StableModelArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(long, conflicts_with = "json")]
    dot: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long)]
    max_vertices: usize,
    #[arg(long)]
    max_genus: u32,
    /// Degrees to sweep, `a..b` or `a..=b`; defaults to 0..2g-2 per graph.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    degree_range: Option<Range<i64>>,
    #[arg(long)]
    json: bool,
}

fn parse_range(s: &str) -> Result<Range<i64>, String> {
    let bad = || format!("expected a..b or a..=b, got `{s}`");
    let (a, b, inclusive) = if let Some((a, b)) = s.split_once("..=") {
        (a, b, true)
    } else if let Some((a, b)) = s.split_once("..") {
        (a, b, false)
    } else {
        return Err(bad());
    };
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    Ok(if inclusive { a..b + 1 } else { a..b })
}

/// Failure of a command: bad input exits 2, a falsified invariant exits 1.
enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = Result<String, Failure>;

fn load_graph(path: &Path) -> Result<DualGraph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read graph file {}: {e}", path.display())))?;
    DualGraph::from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_multidegree(text: &str) -> Result<Multidegree, Failure> {
    serde_json::from_str::<Vec<i64>>(text)
        .map(Multidegree)
        .map_err(|e| Failure::Input(format!("malformed multidegree: {e}")))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("output serializes");
    s.push('\n');
    s
}

fn vertex_header(graph: &DualGraph) -> String {
    format!("vertices: {}\n", graph.ids().join(" "))
}

/// Left-aligned columns separated by two spaces.
fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(String::len).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, cell)| format!("{cell:<w$}", w = widths[c]))
            .collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}

fn md_text(md: &Multidegree) -> String {
    serde_json::to_string(md).expect("multidegree serializes")
}

fn run_classify(args: &ClassifyArgs) -> Outcome {
    let graph = load_graph(&args.graph.graph)?;
    let md = match (&args.multidegree, &args.md_file) {
        (Some(text), _) => Some(parse_multidegree(text)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("cannot read multidegree file {}: {e}", path.display())))?;
            Some(parse_multidegree(&text)?)
        }
        (None, None) => None,
    };

    if let Some(md) = md {
        if let Some(d) = args.degree {
            if d != md.total() {
                return Err(Error::DegreeMismatch { left: d, right: md.total() }.into());
            }
        }
        let class = classify(&graph, &md)?;
        return Ok(if args.json {
            to_json(&json!({
                "format": FORMAT,
                "vertices": graph.ids(),
                "multidegree": md,
                "degree": md.total(),
                "class": class,
            }))
        } else {
            format!("{class:?}\n")
        });
    }

    let stability = graph.classify_stability()?;
    let genus = graph.arithmetic_genus();
    let verdict = match args.degree {
        Some(d) => {
            let method = if stability.is_stable() { Method::Criterion } else { Method::Exhaustive };
            Some((d, method, is_d_general(&graph, d, method)?))
        }
        None => None,
    };
    if args.json {
        let mut out = json!({
            "format": FORMAT,
            "vertices": graph.ids(),
            "genus": genus,
            "stability": stability,
        });
        if let Some((d, method, general)) = verdict {
            out["degree"] = json!(d);
            out["method"] = json!(method);
            out["d_general"] = json!(general);
        }
        return Ok(to_json(&out));
    }
    let mut rows = vec![
        vec!["genus".to_string(), genus.to_string()],
        vec!["stability".to_string(), format!("{stability:?}")],
    ];
    if let Some((d, method, general)) = verdict {
        rows.push(vec!["degree".to_string(), d.to_string()]);
        rows.push(vec!["method".to_string(), format!("{method:?}")]);
        let word = if general { "d-general" } else { "d-special" };
        rows.push(vec!["verdict".to_string(), word.to_string()]);
    }
    Ok(vertex_header(&graph) + &table(&rows))
}

fn run_balanced(args: &BalancedArgs) -> Outcome {
    let graph = load_graph(&args.graph.graph)?;
    let set = enumerate_balanced(&graph, args.degree, args.stably)?;
    if args.json {
        let entries: Vec<_> = set
            .entries
            .iter()
            .map(|(md, class)| json!({ "multidegree": md, "class": class }))
            .collect();
        return Ok(to_json(&json!({
            "format": FORMAT,
            "vertices": graph.ids(),
            "degree": args.degree,
            "entries": entries,
            "diagnostic": set.diagnostic,
        })));
    }
    let mut out = vertex_header(&graph);
    if let Some(note) = &set.diagnostic {
        let _ = writeln!(out, "note: {note}");
    }
    let mut rows = vec![vec!["multidegree".to_string(), "class".to_string()]];
    rows.extend(set.entries.iter().map(|(md, class)| vec![md_text(md), format!("{class:?}")]));
    out += &table(&rows);
    let _ = writeln!(out, "total: {}", set.len());
    Ok(out)
}

fn run_class_group(args: &ClassGroupArgs) -> Outcome {
    let graph = load_graph(&args.graph.graph)?;
    let group = class_group(&graph);
    let reps = match args.degree {
        Some(d) => Some(class_representatives(&graph, d)?),
        None => None,
    };
    if args.json {
        let mut out = json!({
            "format": FORMAT,
            "vertices": graph.ids(),
            "invariant_factors": group.invariant_factors(),
            "order": group.order(),
        });
        if let (Some(d), Some(reps)) = (args.degree, &reps) {
            out["degree"] = json!(d);
            out["representatives"] = json!(reps);
        }
        return Ok(to_json(&out));
    }
    let factors: Vec<String> = group.invariant_factors().iter().map(u64::to_string).collect();
    let mut rows = vec![
        vec!["invariant factors".to_string(), format!("[{}]", factors.join(", "))],
        vec!["order".to_string(), group.order().to_string()],
    ];
    if let Some(d) = args.degree {
        rows.push(vec!["degree".to_string(), d.to_string()]);
    }
    let mut out = vertex_header(&graph) + &table(&rows);
    if let Some(reps) = reps {
        for md in &reps {
            let _ = writeln!(out, "{}", md_text(md));
        }
    }
    Ok(out)
}

fn run_generators(args: &GeneratorArgs) -> Outcome {
    let d = positive_degree_representative(args.genus, args.degree)?;
    let gcd = gcd_invariant(args.genus, d)?;
    let generators = enumerate_special_vine_generators(args.genus, d)?;
    if args.json {
        return Ok(to_json(&json!({
            "format": FORMAT,
            "genus": args.genus,
            "degree": args.degree,
            "reduced_degree": d,
            "gcd": gcd.value,
            "generators": generators,
        })));
    }
    let mut out = format!("genus {}  degree {}  G_d {}\n", args.genus, args.degree, gcd.value);
    if d != args.degree {
        let _ = writeln!(out, "note: degree reduced to {d} modulo 2g-2");
    }
    if generators.is_empty() {
        out.push_str("no d-special curves\n");
        return Ok(out);
    }
    let mut rows = vec![vec!["g1".to_string(), "g2".to_string(), "k".to_string()]];
    rows.extend(
        generators
            .iter()
            .map(|v| vec![v.g1.to_string(), v.g2.to_string(), v.k.to_string()]),
    );
    Ok(out + &table(&rows))
}

fn run_lattice(args: &LatticeArgs) -> Outcome {
    let lattice = divisor_lattice(args.genus)?;
    if args.dot {
        return Ok(lattice.to_dot());
    }
    let edges = lattice.hasse_edges();
    if args.json {
        return Ok(to_json(&json!({
            "format": FORMAT,
            "genus": args.genus,
            "nodes": lattice.nodes,
            "hasse_edges": edges,
        })));
    }
    let mut out = format!("genus {}  strata indexed by divisors of {}\n", args.genus, 2 * args.genus - 2);
    let rows: Vec<Vec<String>> = edges
        .iter()
        .map(|(lower, upper)| vec![lower.to_string(), "->".to_string(), upper.to_string()])
        .collect();
    out += &table(&rows);
    Ok(out)
}

fn run_stable_model(args: &StableModelArgs) -> Outcome {
    let graph = load_graph(&args.graph.graph)?;
    let model = graph.stable_model()?;
    if args.dot {
        return Ok(model.to_dot());
    }
    if args.json {
        return Ok(model.to_json() + "\n");
    }
    let mut rows = vec![vec!["vertex".to_string(), "genus".to_string(), "loops".to_string(), "degree".to_string()]];
    for (i, v) in model.vertices().iter().enumerate() {
        rows.push(vec![
            v.id.clone(),
            v.genus.to_string(),
            model.loops(i).to_string(),
            model.degree(i).to_string(),
        ]);
    }
    let mut out = table(&rows);
    let ids = model.ids();
    for &(a, b) in model.edges() {
        let _ = writeln!(out, "{} -- {}", ids[a], ids[b]);
    }
    Ok(out)
}

fn run_oracle(args: &OracleArgs) -> Outcome {
    let spec = CorpusSpec::genus_bounded(args.max_vertices, args.max_genus, StabilityFilter::Semistable);
    match verify_corpus(&spec, args.degree_range.clone())? {
        Ok(summary) => Ok(if args.json {
            to_json(&json!({ "format": FORMAT, "summary": summary }))
        } else {
            table(&[
                vec!["graphs".to_string(), summary.graphs.to_string()],
                vec!["multidegrees".to_string(), summary.multidegrees.to_string()],
                vec!["generality checks".to_string(), summary.generality_checks.to_string()],
                vec!["class groups".to_string(), summary.class_groups.to_string()],
                vec!["representatives".to_string(), summary.representatives.to_string()],
            ]) + "all checks agree\n"
        }),
        Err(witness) => {
            // the witness goes to stdout so it can be piped straight into a graph file
            print!("{}", to_json(&json!({ "format": FORMAT, "disagreement": witness })));
            Err(Failure::Internal(format!("oracle disagreement in check `{}`", witness.check)))
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Input(format!("{THREADS_VAR} must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Internal(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|()| match &cli.command {
        Command::Classify(a) => run_classify(a),
        Command::Balanced(a) => run_balanced(a),
        Command::ClassGroup(a) => run_class_group(a),
        Command::StrataGenerators(a) => run_generators(a),
        Command::Lattice(a) => run_lattice(a),
        Command::StableModel(a) => run_stable_model(a),
        Command::OracleVerify(a) => run_oracle(a),
    });
    match outcome {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}
