//! Command-line front end: reads a graph file, runs one analysis and prints a JSON report with
//! sorted keys. Rationals are written as strings such as `"-3/2"`.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use derham::aut::{
    action_summary, automorphism_group, induced_action, kernel_characterization_h0, kernel_characterization_h1,
    ActionContext, Permutation,
};
use derham::calculus::{edge_integral, hodge_decomposition, hodge_parts, stokes_check, vertex_integral};
use derham::cochain::{cohomology, Degree, EdgeForm, Support, VertexForm};
use derham::decomposition::{
    aut_restriction_check, cycle_forest, kernel_interpretation, splitting_verification, verify_minimality,
    SplittingOutcome,
};
use derham::graph::{betti_numbers, OrientedGraph, Subgraph};
use derham::graph_file::parse_graph_file;
use derham::linalg::Rational;
use derham::mayer_vietoris::{connecting_map, lift_independence_check, long_sequence_check, short_sequence_check, Cover};
use derham::orientation::{conjecture_sweep, find_natural_orientation, verify_witness, WitnessSource};
use derham::random::{random_cover, random_vertex_form, rng};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "derham", about = "Discrete de Rham cohomology of finite simple graphs")]
struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Betti numbers and harmonic bases.
    Cohomology { file: PathBuf },
    /// Automorphism group profile.
    Aut { file: PathBuf },
    /// Induced action on H⁰ or H¹.
    Action {
        file: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=1))]
        degree: u8,
    },
    /// Cycle-forest decomposition.
    Decompose { file: PathBuf },
    /// Splitting of the automorphism group.
    Split { file: PathBuf },
    /// Integral of a vertex form (degree 0) or edge form (degree 1) over a subgraph.
    Integrate {
        file: PathBuf,
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
        degree: u8,
        /// Comma-separated rationals, one per vertex or edge.
        #[arg(long)]
        form: String,
        /// Edge indices of the subgraph with their endpoints; the whole graph when omitted.
        #[arg(long, value_delimiter = ',')]
        edges: Option<Vec<usize>>,
    },
    /// Stokes check for a vertex form over a subgraph.
    Stokes {
        file: PathBuf,
        #[arg(long)]
        form: String,
        #[arg(long, value_delimiter = ',')]
        edges: Option<Vec<usize>>,
    },
    /// Hodge decomposition certificate, and the parts of an edge form if given.
    Hodge {
        file: PathBuf,
        #[arg(long)]
        form: Option<String>,
    },
    /// Mayer-Vietoris sequence for the cover by the edges in `--a-edges` and the rest.
    Mv {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        a_edges: Vec<usize>,
        /// Defaults to the complement of `--a-edges`.
        #[arg(long, value_delimiter = ',')]
        b_edges: Option<Vec<usize>>,
    },
    /// Search for a natural orientation.
    Natorient { file: PathBuf },
    /// Natural-orientation sweep over all connected graphs on at most N vertices.
    Sweep {
        #[arg(long, default_value_t = 6)]
        max_vertices: usize,
    },
    /// Every certificate on one graph.
    VerifyAll {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: impl Into<String>) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: message.into() }
    }
}

struct Report {
    value: Value,
    passed: bool,
}

fn report(value: Value) -> Report {
    Report { value, passed: true }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return if e.use_stderr() {
                Outcome::usage(e.to_string())
            } else {
                Outcome { code: EXIT_PASS, stdout: e.to_string(), stderr: String::new() }
            };
        }
    };
    let r = match execute(&cli.command) {
        Ok(r) => r,
        Err(message) => return Outcome::usage(message),
    };
    let mut text = serde_json::to_string_pretty(&r.value).expect("reports serialize");
    text.push('\n');
    let code = if r.passed { EXIT_PASS } else { EXIT_FAIL };
    match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Outcome::usage(format!("cannot write {}: {e}", path.display())),
        },
        None => Outcome { code, stdout: text, stderr: String::new() },
    }
}

fn load(path: &PathBuf) -> Result<OrientedGraph, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_graph_file(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_form(text: &str, len: usize) -> Result<Vec<Rational>, String> {
    let values: Vec<Rational> = text
        .split(',')
        .map(|s| s.trim().parse::<Rational>().map_err(|_| format!("invalid rational `{}`", s.trim())))
        .collect::<Result<_, _>>()?;
    if values.len() != len {
        return Err(format!("form has {} values, expected {len}", values.len()));
    }
    Ok(values)
}

fn subgraph<'g>(og: &'g OrientedGraph, edges: &Option<Vec<usize>>) -> Result<Subgraph<'g>, String> {
    let g = og.graph();
    match edges {
        None => Ok(Subgraph::full(g)),
        Some(es) => {
            if let Some(&e) = es.iter().find(|&&e| e >= g.edge_count()) {
                return Err(format!("edge index {e} out of range ({} edges)", g.edge_count()));
            }
            Ok(Subgraph::from_edges(g, es.iter().copied()))
        }
    }
}

fn degree(d: u8) -> Degree {
    if d == 0 {
        Degree::Zero
    } else {
        Degree::One
    }
}

fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn perm(p: &Permutation) -> Value {
    json!(p.images())
}

fn support(s: &Support) -> Value {
    json!({ "vertices": s.vertices, "edges": s.edges })
}

fn edge_pairs(og: &OrientedGraph, sub: &Subgraph<'_>) -> Value {
    json!(sub.edges().map(|e| og.graph().edge(e)).collect::<Vec<_>>())
}

fn execute(command: &Command) -> Result<Report, String> {
    match command {
        Command::Cohomology { file } => {
            let og = load(file)?;
            let b = betti_numbers(og.graph());
            let space = |d| {
                let h = cohomology(&og, d);
                json!({
                    "dim": h.dim(),
                    "basis": h.basis().iter().map(|v| rationals(v)).collect::<Vec<_>>(),
                    "supports": h.supports().iter().map(support).collect::<Vec<_>>(),
                })
            };
            Ok(report(json!({ "b0": b.b0, "b1": b.b1, "h0": space(Degree::Zero), "h1": space(Degree::One) })))
        }
        Command::Aut { file } => {
            let og = load(file)?;
            let group = automorphism_group(og.graph());
            let p = group.profile();
            Ok(report(json!({
                "order": p.order,
                "abelian": p.abelian,
                "cyclic": p.cyclic,
                "element_orders": p.element_orders.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
                "generators": p.generators.iter().map(perm).collect::<Vec<_>>(),
            })))
        }
        Command::Action { file, degree: d } => {
            let og = load(file)?;
            let a = induced_action(og.graph(), degree(*d));
            let p = a.profile();
            let homomorphism = a.is_homomorphism();
            Ok(Report {
                passed: homomorphism,
                value: json!({
                    "degree": d,
                    "aut_order": a.automorphisms().order(),
                    "kernel_order": a.kernel_order(),
                    "image_order": a.image_order(),
                    "image_abelian": p.abelian,
                    "image_cyclic": p.cyclic,
                    "kernel": a.kernel().iter().map(perm).collect::<Vec<_>>(),
                    "homomorphism": homomorphism,
                }),
            })
        }
        Command::Decompose { file } => {
            let og = load(file)?;
            let d = cycle_forest(og.graph());
            let m = verify_minimality(og.graph());
            Ok(Report {
                passed: d.is_valid() && m.holds(),
                value: json!({
                    "layers": d.layers,
                    "intersection": d.intersection,
                    "forest_edges": edge_pairs(&og, &d.forest),
                    "cycle_edges": edge_pairs(&og, &d.cycle_retract),
                    "valid": d.is_valid(),
                    "cohomology_matches": m.cohomology_matches(),
                    "edge_minimal": m.edge_minimal(),
                }),
            })
        }
        Command::Split { file } => {
            let og = load(file)?;
            Ok(match splitting_verification(og.graph()) {
                SplittingOutcome::Certified(c) => Report {
                    passed: c.holds(),
                    value: json!({
                        "status": "certified",
                        "aut_order": c.aut_order,
                        "kernel_order": c.kernel.len(),
                        "complement_order": c.complement.len(),
                        "image_order": c.image_order,
                        "trivial_intersection": c.trivial_intersection,
                        "product_is_aut": c.product_is_aut,
                        "commute": c.commute,
                        "theta_bijective": c.theta_bijective,
                        "holds": c.holds(),
                    }),
                },
                SplittingOutcome::HypothesesNotMet(h) => report(json!({
                    "status": "hypotheses_not_met",
                    "failed": h.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>(),
                })),
            })
        }
        Command::Integrate { file, degree: d, form, edges } => {
            let og = load(file)?;
            let sub = subgraph(&og, edges)?;
            let value = if *d == 0 {
                let f = VertexForm(parse_form(form, og.vertex_count())?);
                vertex_integral(&og, &sub, &f)
            } else {
                let f = EdgeForm(parse_form(form, og.edge_count())?);
                edge_integral(&og, &sub, &f)
            }
            .map_err(|e| e.to_string())?;
            Ok(report(json!({ "degree": d, "integral": value.to_string() })))
        }
        Command::Stokes { file, form, edges } => {
            let og = load(file)?;
            let sub = subgraph(&og, edges)?;
            let f = VertexForm(parse_form(form, og.vertex_count())?);
            let c = stokes_check(&og, &sub, &f).map_err(|e| e.to_string())?;
            Ok(Report {
                passed: c.holds(),
                value: json!({
                    "vertex_side": c.vertex_side.to_string(),
                    "edge_side": c.edge_side.to_string(),
                    "holds": c.holds(),
                }),
            })
        }
        Command::Hodge { file, form } => {
            let og = load(file)?;
            let c = hodge_decomposition(&og);
            let mut value = json!({
                "vertex_dims": [c.vertex_dims.0, c.vertex_dims.1],
                "edge_dims": [c.edge_dims.0, c.edge_dims.1],
                "vertex_orthogonal": c.vertex_orthogonal,
                "edge_orthogonal": c.edge_orthogonal,
                "vertex_kernels_agree": c.vertex_kernels_agree,
                "edge_kernels_agree": c.edge_kernels_agree,
                "holds": c.holds(),
            });
            if let Some(form) = form {
                let h = EdgeForm(parse_form(form, og.edge_count())?);
                let (harmonic, exact, g) = hodge_parts(&og, &h).map_err(|e| e.to_string())?;
                value["parts"] = json!({
                    "harmonic": rationals(&harmonic.0),
                    "exact": rationals(&exact.0),
                    "potential": rationals(&g.0),
                });
            }
            Ok(Report { passed: c.holds(), value })
        }
        Command::Mv { file, a_edges, b_edges } => {
            let og = load(file)?;
            let g = og.graph();
            let a = subgraph(&og, &Some(a_edges.clone()))?;
            let b_list = b_edges.clone().unwrap_or_else(|| (0..g.edge_count()).filter(|e| !a_edges.contains(e)).collect());
            let b = subgraph(&og, &Some(b_list))?;
            // vertices outside every chosen edge belong to both sides
            let loose: Vec<usize> = (0..g.vertex_count()).filter(|&v| !a.contains_vertex(v) && !b.contains_vertex(v)).collect();
            let widen = |s: &Subgraph<'_>| {
                let vs: Vec<usize> = s.vertices().chain(loose.iter().copied()).collect();
                Subgraph::new(g, vs, s.edges().collect::<Vec<_>>()).expect("endpoints included")
            };
            let cover = Cover::new(&og, widen(&a), widen(&b)).map_err(|e| e.to_string())?;
            let short = short_sequence_check(&cover);
            let long = long_sequence_check(&cover);
            let lift = lift_independence_check(&cover);
            let delta = connecting_map(&cover);
            let passed = short.holds() && long.holds() && lift;
            Ok(Report {
                passed,
                value: json!({
                    "dims": long.dims,
                    "chain": long.chain,
                    "exact": long.exact,
                    "alternating_sum": long.alternating_sum,
                    "short_exact": short.holds(),
                    "lift_independent": lift,
                    "connecting_rank": derham::linalg::rank(&delta),
                    "holds": passed,
                }),
            })
        }
        Command::Natorient { file } => {
            let og = load(file)?;
            let g = og.graph();
            let out = find_natural_orientation(g).map_err(|e| e.to_string())?;
            let mut value = json!({
                "cycles_enumerated": out.cycles_enumerated,
                "cycle_cap_hit": out.cycle_cap_hit,
                "nodes_visited": out.nodes_visited,
                "exhausted": out.exhausted,
            });
            let passed = match &out.witness {
                Some((w, source)) => {
                    let verified = verify_witness(g, w);
                    value["witness"] = json!({
                        "signs": w.orientation.signs(),
                        "source": match source { WitnessSource::CycleSearch => "cycle_search", WitnessSource::EarDecomposition => "ear_decomposition" },
                        "supports": w.supports.iter().map(support).collect::<Vec<_>>(),
                        "verified": verified,
                    });
                    verified
                }
                None => false,
            };
            Ok(Report { passed, value })
        }
        Command::Sweep { max_vertices } => {
            let r = conjecture_sweep(*max_vertices).map_err(|e| e.to_string())?;
            let rows: Vec<Value> = r
                .rows
                .iter()
                .map(|e| {
                    json!({
                        "vertices": e.vertex_count,
                        "graphs": e.graphs,
                        "verified": e.verified,
                        "by_search": e.by_search,
                        "by_ears": e.by_ears,
                    })
                })
                .collect();
            let failures: Vec<Value> = r.failures.iter().map(|(g, _)| json!(g.edges())).collect();
            Ok(Report {
                passed: r.all_verified(),
                value: json!({ "rows": rows, "total": r.total(), "failures": failures }),
            })
        }
        Command::VerifyAll { file, seed } => {
            let og = load(file)?;
            Ok(verify_all(&og, *seed))
        }
    }
}

fn verify_all(og: &OrientedGraph, seed: u64) -> Report {
    let g = og.graph();
    let mut r = rng(seed);
    let mut checks = serde_json::Map::new();
    let mut put = |name: &str, ok: bool| {
        checks.insert(name.to_string(), Value::Bool(ok));
    };

    let aut = automorphism_group(g);
    for (name, d) in [("action_h0", Degree::Zero), ("action_h1", Degree::One)] {
        let a = induced_action(g, d);
        let summary = action_summary(&ActionContext::new(g, d), &aut);
        put(
            name,
            a.is_homomorphism()
                && a.kernel_is_normal()
                && a.kernel_order() * a.image_order() == aut.order()
                && summary.kernel_order == a.kernel_order(),
        );
    }
    put("kernel_h0", kernel_characterization_h0(g).agree());
    if betti_numbers(g).b1 > 0 {
        put("kernel_h1", kernel_characterization_h1(g).is_ok_and(|k| k.agree()));
    }
    put("decomposition", cycle_forest(g).is_valid());
    put("minimality", verify_minimality(g).holds());
    put("restriction", aut_restriction_check(g).holds());
    let betti = betti_numbers(g);
    if betti.b0 == 1 && betti.b1 >= 2 {
        put("kernel_interpretation", kernel_interpretation(g).is_ok_and(|k| k.is_isomorphism()));
    }
    if let SplittingOutcome::Certified(c) = splitting_verification(g) {
        put("splitting", c.holds());
    }
    let f = random_vertex_form(&mut r, g.vertex_count());
    put("stokes", stokes_check(og, &Subgraph::full(g), &f).is_ok_and(|c| c.holds()));
    put("hodge", hodge_decomposition(og).holds());
    let (a, b) = random_cover(&mut r, g);
    let mv = Cover::new(og, a, b).is_ok_and(|c| short_sequence_check(&c).holds() && long_sequence_check(&c).holds());
    put("mayer_vietoris", mv);
    let natural = find_natural_orientation(g)
        .ok()
        .and_then(|o| o.witness)
        .is_some_and(|(w, _)| verify_witness(g, &w));
    put("natural_orientation", natural);

    let passed = checks.values().all(|v| v == &Value::Bool(true));
    Report { value: json!({ "checks": checks, "all_pass": passed }), passed }
}
