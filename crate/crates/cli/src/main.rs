//! `canonclass`: restrictions of canonical classes from the command line.
//!
//! Exit codes: 0 success, 1 a validation or agreement check failed, 2 the
//! computation itself failed (bad input, unreadable file, engine error).

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use canonclass::canonical::{
    brute_row, brute_solve_canonical_with, certify_table, ordered_table, restriction_ordered,
    restriction_single_form_paths, single_form_table, RestrictionTable, WeightClasses,
};
use canonclass::exactalg::Poly;
use canonclass::fibration::{tower_restriction, tower_table, TowerSpec};
use canonclass::gkm::{choose_generic_xi, to_dot, validate_gkm};
use canonclass::oracle::{billey_ledger, billey_table, compare_tables, cross_validate, cross_validate_graph};
use canonclass::orbits::{build_orbit_gkm, CartanType, TypedEngine, TypedResult};
use canonclass::{CanonicalGraph, Error, GkmGraph, Orbit, OrientedGraphData};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "canonclass", version, about = "Canonical-class restrictions on GKM graphs and classical flag orbits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the GKM axioms and genericity of a graph.
    Validate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compute one restriction alpha_p(q).
    Restrict {
        #[command(flatten)]
        src: Source,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, value_enum, default_value_t = Engine::Gz)]
        engine: Engine,
        /// Print the contributing paths or subwords.
        #[arg(long)]
        ledger: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compute the full restriction table.
    Table {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum, default_value_t = Engine::Gz)]
        engine: Engine,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
        /// Run the table certificate; exit 1 if it fails.
        #[arg(long)]
        certify: bool,
        #[arg(long)]
        parallel: bool,
    },
    /// Describe a generic coadjoint orbit.
    Orbit {
        #[arg(long = "type")]
        cartan: CartanType,
        #[arg(long)]
        rank: usize,
        /// Print the GKM graph of this tower level as JSON instead.
        #[arg(long)]
        level: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run every applicable engine and compare the tables.
    Compare {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        parallel: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Export the graph as DOT or JSON.
    Export {
        #[command(flatten)]
        src: Source,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
        /// DOT: draw canonical edges with their labels instead of GKM edges.
        #[arg(long)]
        canonical: bool,
    },
}

#[derive(Args)]
struct Source {
    /// GKM graph in JSON.
    #[arg(long, conflicts_with_all = ["cartan", "rank"])]
    graph: Option<PathBuf>,
    #[arg(long = "type", requires = "rank")]
    cartan: Option<CartanType>,
    #[arg(long, requires = "cartan")]
    rank: Option<usize>,
    /// Tower spec in JSON (graph input only).
    #[arg(long)]
    tower: Option<PathBuf>,
    /// Seed for the generic vector (graph input only).
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Gz,
    Ordered,
    Tower,
    Typed,
    Brute,
    Billey,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Text,
    Json,
    Csv,
}

enum Loaded {
    Graph(CanonicalGraph, TowerSpec),
    Orbit(Box<Orbit>),
}

impl Loaded {
    fn canonical(&self) -> &CanonicalGraph {
        match self {
            Loaded::Graph(cg, _) => cg,
            Loaded::Orbit(o) => o.canonical(),
        }
    }

    fn tower(&self) -> &TowerSpec {
        match self {
            Loaded::Graph(_, t) => t,
            Loaded::Orbit(o) => o.tower(),
        }
    }

    fn orbit(&self, what: &str) -> Result<&Orbit, Error> {
        match self {
            Loaded::Orbit(o) => Ok(o),
            Loaded::Graph(..) => Err(Error::Unsupported(format!("{what} needs --type and --rank"))),
        }
    }

    fn resolve(&self, s: &str) -> Result<usize, Error> {
        match self {
            Loaded::Orbit(o) => o.resolve(s),
            Loaded::Graph(cg, _) => cg.oriented().graph().vertex_index(s),
        }
    }
}

/// A failed check (exit 1) or a failed computation (exit 2).
enum Failure {
    Check(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Compute(format!("{}: {e}", path.display())))
}

fn read_graph(path: &PathBuf) -> Result<GkmGraph, Failure> {
    Ok(GkmGraph::from_json_str(&read(path)?)?)
}

fn load(src: &Source) -> Result<Loaded, Failure> {
    match (&src.graph, src.cartan, src.rank) {
        (Some(path), _, _) => {
            let g = read_graph(path)?;
            let od = OrientedGraphData::with_seed(g, src.seed)?;
            let tower = match &src.tower {
                Some(t) => TowerSpec::from_json_str(&read(t)?, od.graph())?,
                None => TowerSpec::trivial(od.graph()),
            };
            Ok(Loaded::Graph(CanonicalGraph::new(od)?, tower))
        }
        (None, Some(t), Some(n)) => {
            if src.tower.is_some() {
                return Err(Failure::Compute("--tower applies to --graph input only".into()));
            }
            Ok(Loaded::Orbit(Box::new(Orbit::standard(t, n)?)))
        }
        _ => Err(Failure::Compute("give --graph FILE or --type T --rank N".into())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let r = match cli.command {
        Command::Validate { graph, seed, format } => cmd_validate(&graph, seed, format, &mut out),
        Command::Restrict { src, p, q, engine, ledger, format } => {
            cmd_restrict(&src, &p, &q, engine, ledger, format, &mut out)
        }
        Command::Table { src, engine, format, certify, parallel } => {
            cmd_table(&src, engine, format, certify, parallel, &mut out)
        }
        Command::Orbit { cartan, rank, level, format } => cmd_orbit(cartan, rank, level, format, &mut out),
        Command::Compare { src, parallel, format } => cmd_compare(&src, parallel, format, &mut out),
        Command::Export { src, dot, json, canonical } => cmd_export(&src, dot, json, canonical, &mut out),
    };
    print!("{out}");
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn cmd_validate(path: &PathBuf, seed: u64, format: Format, out: &mut String) -> Result<(), Failure> {
    let g = read_graph(path)?;
    let report = validate_gkm(&g);
    let xi = choose_generic_xi(&g, seed);
    let od = OrientedGraphData::new(g, xi.clone())?;
    let increasing = od.is_index_increasing();
    match format {
        Format::Json => {
            let v = json!({
                "report": report,
                "xi": xi.0.coords_string(),
                "index_increasing": increasing,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).unwrap();
        }
        Format::Text => {
            writeln!(out, "vertices: {}  edges: {}", report.vertices, report.edges).unwrap();
            writeln!(out, "xi: ({})", xi.0.coords_string()).unwrap();
            writeln!(out, "index increasing: {increasing}").unwrap();
            for v in &report.violations {
                writeln!(out, "violation: {v}").unwrap();
            }
            if report.is_valid() {
                writeln!(out, "valid").unwrap();
            }
        }
    }
    if report.is_valid() {
        Ok(())
    } else {
        Err(Failure::Check(format!("{} GKM violation(s)", report.violations.len())))
    }
}

fn poly_json(p: &Poly) -> serde_json::Value {
    json!({ "text": p.to_string(), "terms": p })
}

fn cmd_restrict(
    src: &Source,
    p: &str,
    q: &str,
    engine: Engine,
    want_ledger: bool,
    format: Format,
    out: &mut String,
) -> Result<(), Failure> {
    let loaded = load(src)?;
    let cg = loaded.canonical();
    let od = cg.oriented();
    let (pi, qi) = (loaded.resolve(p)?, loaded.resolve(q)?);
    let (value, ledger, text): (Poly, serde_json::Value, Vec<String>) = match engine {
        Engine::Gz => {
            let (v, paths) = restriction_single_form_paths(cg, pi, qi)?;
            let text = paths.iter().map(|t| format!("{}  :  {}", t.path.join(" -> "), t.term)).collect();
            (v, json!(paths), text)
        }
        Engine::Ordered => {
            let r = restriction_ordered(cg, pi, qi, &loaded.tower().classes())?;
            let text = r.paths.iter().map(|t| format!("{}  :  {}  h={:?}", t.path.join(" -> "), t.term, t.levels)).collect();
            (r.value, json!(r.paths), text)
        }
        Engine::Tower => {
            let r = tower_restriction(cg, loaded.tower(), pi, qi)?;
            let text = r
                .paths
                .iter()
                .map(|t| format!("{}  :  {}  h={:?}", t.term.path.join(" -> "), t.term.term, t.term.levels))
                .collect();
            (r.value, json!(r.paths), text)
        }
        Engine::Brute => {
            let row = brute_row(od, pi)?;
            (row[qi].clone(), serde_json::Value::Null, vec![])
        }
        Engine::Typed => {
            let orbit = loaded.orbit("--engine typed")?;
            let r = TypedEngine::new(orbit)?.restriction(pi, qi)?;
            typed_ledger(&r)
        }
        Engine::Billey => {
            let orbit = loaded.orbit("--engine billey")?;
            let rs = orbit.root_system();
            let l = billey_ledger(rs, orbit.element(pi), orbit.element(qi))?;
            let v = l.value(od.rank());
            let mut text = vec![format!("word {:?}", l.word)];
            for (s, prod) in l.subwords.iter().zip(&l.products) {
                text.push(format!("{s:?}  :  {prod}"));
            }
            (v, json!(l), text)
        }
    };
    match format {
        Format::Text => {
            writeln!(out, "{value}").unwrap();
            if want_ledger {
                for line in text {
                    writeln!(out, "  {line}").unwrap();
                }
            }
        }
        Format::Json => {
            let mut v = json!({
                "p": od.id(pi),
                "q": od.id(qi),
                "engine": engine.to_possible_value().unwrap().get_name(),
                "value": poly_json(&value),
            });
            if want_ledger {
                v["ledger"] = ledger;
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).unwrap();
        }
    }
    Ok(())
}

fn typed_ledger(r: &TypedResult) -> (Poly, serde_json::Value, Vec<String>) {
    match r {
        TypedResult::Flag(t) | TypedResult::Triality(_, t) => {
            let mut text: Vec<String> = t
                .paths
                .iter()
                .map(|p| format!("{}  :  {}  h={:?}", p.term.path.join(" -> "), p.term.term, p.term.levels))
                .collect();
            if matches!(r, TypedResult::Triality(..)) {
                text.insert(0, "via A3:".into());
            }
            (r.value().clone(), json!(t.paths), text)
        }
        TypedResult::Fiber(f) => {
            let mut text = Vec::new();
            for t in &f.terms {
                text.push(format!("s = {}  S = {}  fiber = {}", t.s, t.sum, t.fiber_value));
                for p in &t.paths {
                    let kind = match (p.class.complete, p.class.relevant) {
                        (true, _) => "complete",
                        (false, true) => "incomplete, relevant",
                        (false, false) => "incomplete",
                    };
                    let q = p.q.as_ref().map(|q| format!("  Q = {q}")).unwrap_or_default();
                    text.push(format!("  ({})  [{kind}]  P = {}{q}", p.base.join(", "), p.p));
                }
            }
            (f.value.clone(), json!(f.terms), text)
        }
        TypedResult::RankOne(v) => (v.clone(), serde_json::Value::Null, vec![]),
    }
}

fn engine_table(loaded: &Loaded, engine: Engine, parallel: bool) -> Result<RestrictionTable, Failure> {
    let cg = loaded.canonical();
    Ok(match engine {
        Engine::Gz => single_form_table(cg, parallel)?,
        Engine::Ordered => ordered_table(cg, &loaded.tower().classes())?,
        Engine::Tower => tower_table(cg, loaded.tower())?,
        Engine::Brute => brute_solve_canonical_with(cg.oriented(), parallel)?,
        Engine::Typed => TypedEngine::new(loaded.orbit("--engine typed")?)?.table(parallel)?,
        Engine::Billey => billey_table(loaded.orbit("--engine billey")?)?,
    })
}

fn cmd_table(
    src: &Source,
    engine: Engine,
    format: TableFormat,
    certify: bool,
    parallel: bool,
    out: &mut String,
) -> Result<(), Failure> {
    let loaded = load(src)?;
    let table = engine_table(&loaded, engine, parallel)?;
    match format {
        TableFormat::Text => out.push_str(&table.to_text()),
        TableFormat::Json => writeln!(out, "{}", table.to_json_string()).unwrap(),
        TableFormat::Csv => out.push_str(&table.to_csv()),
    }
    if certify {
        let cg = loaded.canonical();
        let classes = match &loaded {
            Loaded::Orbit(o) => o.tower().classes(),
            Loaded::Graph(..) => WeightClasses::moment(cg.oriented()),
        };
        let cert = certify_table(cg, &table, &classes, true);
        if !cert.passed {
            for f in &cert.failures {
                eprintln!("{}", serde_json::to_string(f).unwrap());
            }
            return Err(Failure::Check(format!("{} certificate failure(s)", cert.failures.len())));
        }
        eprintln!("certificate passed: {} entries", cert.entries);
    }
    Ok(())
}

fn cmd_orbit(cartan: CartanType, rank: usize, level: Option<usize>, format: Format, out: &mut String) -> Result<(), Failure> {
    let orbit = Orbit::standard(cartan, rank)?;
    if let Some(j) = level {
        let g = build_orbit_gkm(orbit.spec(), j)?;
        writeln!(out, "{}", serde_json::to_string_pretty(&g.to_json()).unwrap()).unwrap();
        return Ok(());
    }
    let od = orbit.oriented();
    let report = orbit.cocan_report()?;
    match format {
        Format::Json => {
            let vertices: Vec<_> = (0..orbit.num_vertices())
                .map(|i| {
                    json!({
                        "element": orbit.element(i).to_string(),
                        "length": orbit.length(i),
                        "moment": od.graph().moment(i).coords_string(),
                        "lambda_minus": od.lambda_minus(i).to_string(),
                    })
                })
                .collect();
            let v = json!({
                "type": cartan.to_string(),
                "rank": rank,
                "xi": orbit.xi().0.coords_string(),
                "mu": orbit.spec().mu.iter().map(|w| w.coords_string()).collect::<Vec<_>>(),
                "vertices": vertices,
                "canonical": report,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).unwrap();
        }
        Format::Text => {
            writeln!(out, "{cartan}{rank}: {} fixed points, xi = ({})", orbit.num_vertices(), orbit.xi().0.coords_string())
                .unwrap();
            for (j, mu) in orbit.spec().mu.iter().enumerate() {
                writeln!(out, "mu^{} = ({})", j + 1, mu.coords_string()).unwrap();
            }
            for i in 0..orbit.num_vertices() {
                writeln!(
                    out,
                    "{:<14} l={:<2} moment=({})  Lambda^- = {}",
                    orbit.element(i).to_string(),
                    orbit.length(i),
                    od.graph().moment(i).coords_string(),
                    od.lambda_minus(i)
                )
                .unwrap();
            }
            writeln!(
                out,
                "canonical edges: {}  theta != 1: {}  bad edges: {}  missing: {}  lambda != length: {}",
                report.edges,
                report.theta_not_one.len(),
                report.bad_edges.len(),
                report.missing_edges.len(),
                report.lambda_mismatch.len()
            )
            .unwrap();
        }
    }
    if report.is_ok() {
        Ok(())
    } else {
        Err(Failure::Check("canonical graph does not match the Weyl group".into()))
    }
}

fn cmd_compare(src: &Source, parallel: bool, format: Format, out: &mut String) -> Result<(), Failure> {
    let loaded = load(src)?;
    let report = match &loaded {
        Loaded::Orbit(o) => cross_validate(o, parallel)?,
        Loaded::Graph(cg, tower) if src.tower.is_some() => {
            let mut r = cross_validate_graph(cg, parallel)?;
            let extra = compare_tables(&[
                ("gz".into(), single_form_table(cg, parallel)?),
                ("tower".into(), tower_table(cg, tower)?),
            ]);
            r.engines.push("tower".into());
            r.mismatches.extend(extra.mismatches);
            r
        }
        Loaded::Graph(cg, _) => cross_validate_graph(cg, parallel)?,
    };
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report).unwrap()).unwrap(),
        Format::Text => {
            writeln!(out, "engines: {}", report.engines.join(", ")).unwrap();
            for m in &report.mismatches {
                writeln!(out, "{} | {}: {} = {}  vs  {} = {}", m.p, m.q, m.engine_a, m.value_a, m.engine_b, m.value_b)
                    .unwrap();
            }
            writeln!(out, "{}", report.summary()).unwrap();
        }
    }
    if report.agree() {
        Ok(())
    } else {
        Err(Failure::Check(report.summary()))
    }
}

fn cmd_export(src: &Source, dot: bool, json: bool, canonical: bool, out: &mut String) -> Result<(), Failure> {
    let loaded = load(src)?;
    let cg = loaded.canonical();
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&cg.oriented().graph().to_json()).unwrap()).unwrap();
    } else if dot {
        out.push_str(&to_dot(cg.oriented(), canonical.then_some(cg)));
    } else {
        return Err(Failure::Compute("give --dot or --json".into()));
    }
    Ok(())
}
