use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use brauer_core::field::PrimeField;
use brauer_core::lab::{verify_many, VerificationReport};
use brauer_core::planner::{default_max_steps, reduce_to_line};
use brauer_core::quiver::{cartan_matrix, quiver_of, IntMatrix, QuiverWithRelations, RelationKind};
use brauer_core::reflection::{reflect_quiver, reflect_tree};
use brauer_core::{enumerate_plane_trees, parse_tree, EdgeId, PlanarTree};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "brauer", version, about = "Brauer trees, reflections and tilting checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a tree and report whether it is a valid Brauer tree
    Validate(Common),
    /// Print the numerical invariants (edge count, multiplicity)
    Invariants(Common),
    /// Print the quiver with relations of the Brauer tree algebra
    Quiver {
        #[command(flatten)]
        common: Common,
        /// Shorthand for --format dot
        #[arg(long)]
        dot: bool,
    },
    /// Print the Cartan matrix
    Cartan(Common),
    /// Reflect the tree at an edge
    Reflect {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        edge: EdgeId,
        /// Also reflect the quiver and check it matches the quiver of the new tree
        #[arg(long)]
        check_quiver: bool,
    },
    /// Find reflections turning the tree into a Brauer line
    Reduce {
        #[command(flatten)]
        common: Common,
        /// Step budget; defaults to ten times the edge count
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// List plane trees with a given number of edges, one per class
    Enumerate {
        #[arg(long)]
        edges: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Verify that the reflection at an edge comes from a tilting complex
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, required_unless_present = "all_edges")]
        edge: Option<EdgeId>,
        #[arg(long, default_value_t = 2, value_parser = parse_prime)]
        field: u32,
        /// Verify every edge of the tree
        #[arg(long, conflicts_with = "edge")]
        all_edges: bool,
        /// Include wall-clock timings (output is then not reproducible)
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Args, Debug)]
struct Common {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Input {
    /// Tree file
    #[arg(long = "in", value_name = "PATH")]
    path: Option<PathBuf>,
    /// Inline tree in the file format; `;` may stand for a newline
    #[arg(long = "tree", value_name = "TEXT")]
    literal: Option<String>,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Dot,
}

fn parse_prime(s: &str) -> Result<u32, String> {
    let p: u32 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    PrimeField::new(p).map(|_| p).map_err(|e| e.to_string())
}

// a domain failure: message for stderr, exit status 1
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn load(input: &Input) -> Result<PlanarTree, Failure> {
    let text = match (&input.path, &input.literal) {
        (Some(p), _) => fs::read_to_string(p).map_err(|e| Failure(format!("cannot read {}: {e}", p.display())))?,
        (None, Some(t)) => t.replace(';', "\n"),
        (None, None) => unreachable!("clap enforces one input"),
    };
    Ok(parse_tree(&text)?)
}

fn emit(output: &Output, body: String) -> Result<(), Failure> {
    let body = if body.ends_with('\n') { body } else { body + "\n" };
    match &output.out {
        Some(p) => fs::write(p, body).map_err(|e| Failure(format!("cannot write {}: {e}", p.display()))),
        None => io::stdout().write_all(body.as_bytes()).map_err(Failure::from),
    }
}

fn json_doc(mut v: Value) -> String {
    if let Value::Object(map) = &mut v {
        map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    }
    serde_json::to_string_pretty(&v).expect("serializable")
}

fn tree_json(tree: &PlanarTree) -> Value {
    let rotations: serde_json::Map<String, Value> =
        tree.rotations().iter().map(|(v, l)| (format!("v{v}"), json!(l))).collect();
    json!({
        "multiplicity": tree.multiplicity(),
        "exceptional": tree.exceptional(),
        "rotations": rotations,
        "canonical_code": tree.canonical_code(),
    })
}

fn matrix_text(m: &IntMatrix) -> String {
    let width = m.labels.iter().map(|l| l.to_string().len()).max().unwrap_or(1).max(1);
    let mut out = format!("{:>width$} |", "");
    for l in &m.labels {
        let _ = write!(out, " {l:>width$}");
    }
    out.push('\n');
    for (l, row) in m.labels.iter().zip(&m.entries) {
        let _ = write!(out, "{l:>width$} |");
        for x in row {
            let _ = write!(out, " {x:>width$}");
        }
        out.push('\n');
    }
    out
}

fn quiver_text(q: &QuiverWithRelations) -> String {
    let mut out = format!("vertices: {}\n", q.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
    out.push_str("arrows:\n");
    for a in &q.arrows {
        let _ = writeln!(out, "  a{}: {} -> {} (cycle v{})", a.id, a.source, a.target, a.cycle_tag);
    }
    out.push_str("relations:\n");
    let path = |p: &[u32]| p.iter().map(|a| format!("a{a}")).collect::<Vec<_>>().join(" ");
    for r in &q.relations {
        match (r.kind, &r.right) {
            (RelationKind::Equality, Some(right)) => {
                let _ = writeln!(out, "  {} = {}", path(&r.left), path(right));
            }
            _ => {
                let _ = writeln!(out, "  {} = 0", path(&r.left));
            }
        }
    }
    out
}

fn flag(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn report_text(r: &VerificationReport) -> String {
    let mut out = format!("tree {}  edge {}  field GF({})\n", r.subject, r.edge, r.field);
    let _ = writeln!(out, "  algebra dimension        {}", r.algebra_dim);
    let _ = writeln!(out, "  presentation             P{} -> {}", r.edge, r.presentation.e1.iter().map(|v| format!("P{v}")).collect::<Vec<_>>().join(" + "));
    let dims: Vec<String> = r.vanishing.iter().map(|v| format!("{}:{}", v.shift, v.dim)).collect();
    let _ = writeln!(out, "  {}  vanishing          {}", flag(r.vanishing_ok), dims.join(" "));
    let bad = r.serre.iter().filter(|s| s.into_cone != s.out_of_cone).count();
    let _ = writeln!(out, "  {}  serre symmetry     {} pairs, {} mismatched", flag(r.serre_ok), r.serre.len(), bad);
    let _ = writeln!(out, "  {}  generation", flag(r.generation_ok));
    let _ = writeln!(out, "  {}  minimal presentation", flag(r.presentation.minimal));
    let _ = writeln!(out, "  {}  cartan prediction  (cone labelled {})", flag(r.cartan_match), r.cone_label);
    for w in &r.witnesses {
        let kind = serde_json::to_value(w.kind).expect("kind");
        let _ = writeln!(
            out,
            "  {}  witness {:<5}      {} -> {} (cycle v{})",
            flag(w.nonzero && w.irreducible),
            kind.as_str().unwrap_or("?"),
            w.from,
            w.to,
            w.cycle
        );
    }
    if let Some(t) = &r.timings {
        let _ = writeln!(out, "  timings us: algebra {} homs {} witnesses {}", t.algebra_us, t.homs_us, t.witnesses_us);
    }
    let _ = writeln!(out, "  overall {}", if r.passed() { "PASS" } else { "FAIL" });
    out
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Validate(c) => {
            let tree = load(&c.input)?;
            let body = match c.output.format {
                Format::Text => format!(
                    "valid: {} edges, {} vertices, multiplicity {}, code {}",
                    tree.edge_count(),
                    tree.vertex_count(),
                    tree.multiplicity(),
                    tree.canonical_code()
                ),
                Format::Json => json_doc(json!({ "valid": true, "edges": tree.edge_count(), "vertices": tree.vertex_count(), "tree": tree_json(&tree) })),
                Format::Dot => tree.render_dot(),
            };
            emit(&c.output, body)?;
        }
        Command::Invariants(c) => {
            let tree = load(&c.input)?;
            let inv = tree.numerical_invariants();
            let body = match c.output.format {
                Format::Json => json_doc(serde_json::to_value(inv)?),
                _ => format!("edges {}\nmultiplicity {}", inv.edge_count, inv.multiplicity),
            };
            emit(&c.output, body)?;
        }
        Command::Quiver { common: c, dot } => {
            let q = quiver_of(&load(&c.input)?)?;
            let format = if dot { Format::Dot } else { c.output.format };
            let body = match format {
                Format::Text => quiver_text(&q),
                Format::Json => json_doc(json!({ "quiver": q })),
                Format::Dot => q.render_dot(),
            };
            emit(&c.output, body)?;
        }
        Command::Cartan(c) => {
            let m = cartan_matrix(&load(&c.input)?)?;
            let body = match c.output.format {
                Format::Json => json_doc(json!({ "cartan": m })),
                _ => matrix_text(&m),
            };
            emit(&c.output, body)?;
        }
        Command::Reflect { common: c, edge, check_quiver } => {
            let tree = load(&c.input)?;
            let r = reflect_tree(&tree, edge)?;
            let quiver_ok = if check_quiver {
                let via_tree = quiver_of(&r.tree)?.shape();
                let via_quiver = reflect_quiver(&quiver_of(&tree)?, edge)?.quiver.shape();
                if via_tree != via_quiver {
                    return Err(Failure(format!("quiver reflection at {edge} disagrees with the quiver of the reflected tree")));
                }
                Some(true)
            } else {
                None
            };
            let body = match c.output.format {
                Format::Text => {
                    let mut out = r.tree.to_text();
                    let _ = writeln!(out, "# rename {} -> {}", r.removed_edge, r.new_edge);
                    match r.slide_b {
                        Some(b) => {
                            let _ = writeln!(out, "# slid along {} and {}", r.slide_a, b);
                        }
                        None => {
                            let _ = writeln!(out, "# slid along {}", r.slide_a);
                        }
                    }
                    if quiver_ok.is_some() {
                        out.push_str("# quiver check passed\n");
                    }
                    out
                }
                Format::Json => json_doc(json!({
                    "tree": tree_json(&r.tree),
                    "rename": r.rename(),
                    "slide": { "a": r.slide_a, "b": r.slide_b },
                    "vertices": { "x": r.x, "y": r.y, "z": r.z, "w": r.w },
                    "quiver_check": quiver_ok,
                })),
                Format::Dot => r.tree.render_dot(),
            };
            emit(&c.output, body)?;
        }
        Command::Reduce { common: c, max_steps } => {
            let tree = load(&c.input)?;
            let budget = max_steps.unwrap_or_else(|| default_max_steps(&tree));
            let plan = reduce_to_line(&tree, budget)?;
            plan.replay(&tree)?;
            let body = match c.output.format {
                Format::Json => json_doc(json!({ "plan": plan })),
                _ => {
                    let mut out = format!("start {}\n", plan.initial);
                    for (i, s) in plan.steps.iter().enumerate() {
                        let _ = writeln!(out, "{:>3}. reflect {} -> {}  {}", i + 1, s.edge, s.new_edge, s.code);
                    }
                    let _ = writeln!(out, "line {} after {} steps", plan.final_code, plan.len());
                    out
                }
            };
            emit(&c.output, body)?;
        }
        Command::Enumerate { edges, output } => {
            let trees = enumerate_plane_trees(edges)?;
            let body = match output.format {
                Format::Json => json_doc(json!({
                    "edges": edges,
                    "count": trees.len(),
                    "trees": trees.iter().map(tree_json).collect::<Vec<_>>(),
                })),
                _ => trees.iter().map(|t| t.canonical_code().to_string()).collect::<Vec<_>>().join("\n"),
            };
            emit(&output, body)?;
        }
        Command::Verify { common: c, edge, field, all_edges, timings } => {
            let tree = load(&c.input)?;
            let edges: Vec<EdgeId> = if all_edges { tree.edges().collect() } else { vec![edge.expect("clap")] };
            for &e in &edges {
                if !tree.has_edge(e) {
                    return Err(Failure(format!("unknown edge {e}")));
                }
            }
            let jobs: Vec<_> = edges.iter().map(|&e| (tree.clone(), e, field)).collect();
            let mut reports = Vec::new();
            for r in verify_many(&jobs) {
                let mut r = r?;
                if !timings {
                    r.timings = None;
                }
                reports.push(r);
            }
            let ok = reports.iter().all(VerificationReport::passed);
            let body = match c.output.format {
                Format::Json => json_doc(json!({ "passed": ok, "reports": reports })),
                _ => reports.iter().map(report_text).collect::<Vec<_>>().join("\n"),
            };
            emit(&c.output, body)?;
            return Ok(ok);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let _ = std::env::var("BRAUER_SEED"); // reserved; output never depends on it
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
