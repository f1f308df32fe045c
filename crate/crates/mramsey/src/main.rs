use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mramsey::bridge::SolverBridge;
use mramsey::table::{self, Backend, TableOptions};
use mramsey::{certfile, run};
use mramsey_core::cegar::{BlockingPolicy, CegarOptions, CegarReport};
use mramsey_core::cnf::EncodeOptions;
use mramsey_core::detect::check_observation1;
use mramsey_core::formulas::{self, Family};
use mramsey_core::search::{SearchConfig, SearchOutcome};
use mramsey_core::{
    format_targets, parse_targets, Certificate, ColoringProblem, PartitionShape, RamseyValue, WitnessKind,
};

const EXIT_OK: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "mramsey", version, about = "Size multipartite Ramsey numbers: formulas, witnesses, search, verification")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Backtrack,
    Cegar,
    Both,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Backtrack => Backend::Backtrack,
            BackendArg::Cegar => Backend::Cegar,
            BackendArg::Both => Backend::Both,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Expect {
    Colorable,
    NotColorable,
}

#[derive(clap::Args, Clone)]
struct Budgets {
    /// Search nodes per call.
    #[arg(long, default_value_t = 100_000_000)]
    node_budget: u64,
    /// Seconds per call.
    #[arg(long, default_value_t = 600.0)]
    time_budget: f64,
    /// Disable automorphism pruning.
    #[arg(long)]
    no_symmetry: bool,
    /// Worker threads for the backtracking search.
    #[arg(long, default_value_t = 1)]
    width: usize,
    /// Copies above which path and cycle targets are left to refinement.
    #[arg(long, default_value_t = 200_000)]
    eager_threshold: usize,
    /// Block this many copies per violated class and iteration (default 1).
    #[arg(long)]
    sweep: Option<usize>,
}

impl Budgets {
    fn search(&self) -> SearchConfig {
        SearchConfig {
            node_budget: self.node_budget,
            time_budget: Some(Duration::from_secs_f64(self.time_budget)),
            symmetry: !self.no_symmetry,
            parallel_width: self.width.max(1),
        }
    }

    fn cegar(&self) -> CegarOptions {
        CegarOptions {
            encode: EncodeOptions {
                eager_threshold: self.eager_threshold,
            },
            blocking: match self.sweep {
                Some(limit) => BlockingPolicy::Sweep { limit },
                None => BlockingPolicy::OnePerClass,
            },
            ..CegarOptions::default()
        }
    }

    fn check(&self) -> Result<(), String> {
        if self.node_budget == 0 {
            return Err("--node-budget must be positive".into());
        }
        if !(self.time_budget.is_finite() && self.time_budget > 0.0) {
            return Err("--time-budget must be a positive number of seconds".into());
        }
        Ok(())
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Closed-form value of a family.
    Formula {
        #[arg(long)]
        family: String,
        #[arg(long)]
        j: u64,
        #[arg(long)]
        n: u64,
    },
    /// Decide colourability of K_{j×t}, or scan t upwards with --scan-to.
    Search {
        #[arg(long)]
        j: usize,
        /// Class size; required unless --scan-to is given.
        #[arg(long)]
        t: Option<usize>,
        /// Targets in colour order, e.g. "K1,2;P4;3K2".
        #[arg(long)]
        targets: String,
        #[arg(long, value_enum, default_value_t = BackendArg::Backtrack)]
        backend: BackendArg,
        /// Compute m_j by scanning t = 1..=T (backtracking only).
        #[arg(long, value_name = "T")]
        scan_to: Option<usize>,
        /// Exit 1 unless the verdict matches.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
        /// Write the certificate here when colourable.
        #[arg(long)]
        out: Option<PathBuf>,
        /// SAT solver command template (overrides MRAMSEY_SAT_SOLVER).
        #[arg(long)]
        solver: Option<String>,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Emit a lower-bound construction as a certificate.
    Witness {
        /// null-star-rest, bipartite-split3 or part-vs-rest.
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 3)]
        j: u64,
        #[arg(long)]
        n: u64,
        /// Output file; the certificate goes to stdout otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate file with the detectors.
    Verify { path: PathBuf },
    /// Formula, witness and search side by side for j = 2..4.
    Table {
        #[arg(long)]
        theorem: u8,
        #[arg(long)]
        max_n: Option<u64>,
        #[arg(long, value_enum, default_value_t = BackendArg::Backtrack)]
        backend: BackendArg,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Exhaustive K_{1,2} / P_4 check over the subgraphs of K_{2,3} and K_4 - e.
    Obscheck,
}

struct Out {
    format: Format,
}

impl Out {
    fn emit(&self, text: &str, json: Value) {
        match self.format {
            Format::Text => print!("{text}"),
            Format::Json => println!("{}", serde_json::to_string_pretty(&json).expect("json values serialize")),
        }
    }
}

fn usage(msg: impl AsRef<str>) -> ExitCode {
    eprintln!("mramsey: {}", msg.as_ref());
    ExitCode::from(EXIT_USAGE)
}

fn value_json(v: &RamseyValue) -> Value {
    match v {
        RamseyValue::Finite(t) => json!({"kind": "finite", "t": t}),
        RamseyValue::Infinite => json!({"kind": "infinite"}),
        RamseyValue::Unknown { lower_bound } => json!({"kind": "unknown", "lower_bound": lower_bound}),
    }
}

fn cmd_formula(out: &Out, family: &str, j: u64, n: u64) -> ExitCode {
    let Some(f) = Family::from_name(family, j, n) else {
        return usage(format!(
            "unknown family `{family}` (expected star-path-stripe, stripe-c7 or stripe-c6)"
        ));
    };
    match formulas::value(f) {
        Ok(v) => {
            let mut text = format!("{v}\n");
            if f.is_external_citation() {
                text.push_str("note: external citation\n");
            }
            out.emit(
                &text,
                json!({
                    "family": f.name(), "j": j, "n": n,
                    "value": value_json(&v), "display": v.to_string(),
                    "external_citation": f.is_external_citation(),
                }),
            );
            ExitCode::from(EXIT_OK)
        }
        Err(e) => {
            eprintln!("mramsey: {e}");
            if out.format == Format::Json {
                println!("{}", json!({"family": f.name(), "j": j, "n": n, "error": e.to_string(), "guard": e.guard}));
            }
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn cegar_line(r: &CegarReport, seconds: f64) -> String {
    format!(
        "cegar: {} iterations={} blocked={} clauses={} seconds={seconds:.3}\n",
        r.outcome.tag(),
        r.iterations,
        r.blocked,
        r.clause_counts.last().copied().unwrap_or(0)
    )
}

fn write_cert(path: &PathBuf, cert: &Certificate) -> Result<(), String> {
    fs::write(path, certfile::to_json(cert)).map_err(|e| format!("writing {}: {e}", path.display()))
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    out: &Out,
    j: usize,
    t: Option<usize>,
    targets: &str,
    backend: Backend,
    scan_to: Option<usize>,
    expect: Option<Expect>,
    cert_out: Option<PathBuf>,
    solver: Option<String>,
    budgets: &Budgets,
) -> ExitCode {
    let targets = match parse_targets(targets) {
        Ok(t) => t,
        Err(e) => return usage(e.to_string()),
    };
    if let Err(e) = budgets.check() {
        return usage(e);
    }
    let cfg = budgets.search();
    if let Some(t_max) = scan_to {
        if t_max == 0 {
            return usage("--scan-to must be at least 1");
        }
        if t.is_some() {
            return usage("--t and --scan-to are exclusive");
        }
        return match run::compute_m(j, &targets, t_max, &cfg) {
            Ok(r) => {
                let text = format!("{}value: {}\n", r.log(), r.value);
                let steps: Vec<Value> = r
                    .steps
                    .iter()
                    .map(|s| json!({"t": s.t, "outcome": s.outcome, "nodes": s.nodes, "seconds": s.seconds}))
                    .collect();
                out.emit(&text, json!({"steps": steps, "value": value_json(&r.value), "display": r.value.to_string()}));
                let budget_hit = r.steps.last().is_some_and(|s| s.outcome == "budget");
                ExitCode::from(if budget_hit { EXIT_BUDGET } else { EXIT_OK })
            }
            Err(e) => usage(e.to_string()),
        };
    }
    let Some(t) = t else {
        return usage("--t is required unless --scan-to is given");
    };
    let problem = match PartitionShape::new(j, t)
        .map_err(mramsey_core::Error::from)
        .and_then(|s| ColoringProblem::new(s, targets.clone()).map_err(Into::into))
    {
        Ok(p) => p,
        Err(e) => return usage(e.to_string()),
    };
    let mut bridge = None;
    if backend != Backend::Backtrack {
        let made = match &solver {
            Some(cmd) => SolverBridge::new(cmd),
            None => SolverBridge::from_env(),
        };
        match made {
            Ok(b) => bridge = Some(b.with_timeout(cfg.time_budget)),
            Err(e) => return usage(e.to_string()),
        }
    }

    let mut lines = String::new();
    let mut details = serde_json::Map::new();
    let mut bt = None;
    if backend != Backend::Cegar {
        let start = Instant::now();
        let r = run::decide(&problem, &cfg);
        let secs = start.elapsed().as_secs_f64();
        lines.push_str(&format!("backtrack: {} nodes={} seconds={secs:.3}\n", r.outcome.tag(), r.nodes));
        details.insert(
            "backtrack".into(),
            json!({"outcome": r.outcome.tag(), "nodes": r.nodes, "seconds": secs}),
        );
        bt = Some(r.outcome);
    }
    let mut cg = None;
    if let Some(b) = bridge.as_mut() {
        let start = Instant::now();
        let r = match run::cegar(&problem, b, &budgets.cegar()) {
            Ok(r) => r,
            Err(e) => return usage(format!("solver setup: {e}")),
        };
        let secs = start.elapsed().as_secs_f64();
        lines.push_str(&cegar_line(&r, secs));
        if let Some(err) = &r.error {
            lines.push_str(&format!("cegar: {err}\n"));
        }
        details.insert(
            "cegar".into(),
            json!({
                "outcome": r.outcome.tag(), "iterations": r.iterations, "blocked": r.blocked,
                "clause_counts": r.clause_counts, "seconds": secs,
                "error": r.error.as_ref().map(|e| e.to_string()),
            }),
        );
        cg = Some(r.outcome);
    }

    if let (Some(a), Some(b)) = (&bt, &cg) {
        if let (Some(x), Some(y)) = (a.verdict(), b.verdict()) {
            if x != y {
                eprintln!("mramsey: backends disagree on K_{{{j}x{t}}} {}", format_targets(&targets));
                eprint!("{lines}");
                for (name, o) in [("backtrack", a), ("cegar", b)] {
                    if let SearchOutcome::Colorable(c) = o {
                        eprintln!("{name} certificate:\n{}", certfile::to_json(c));
                    }
                }
                return ExitCode::from(EXIT_FAIL);
            }
        }
    }
    // a completed verdict wins over a budget hit on the other backend
    let outcome = match (bt, cg) {
        (Some(a), Some(b)) => {
            if a.verdict().is_some() {
                a
            } else {
                b
            }
        }
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => unreachable!("at least one backend runs"),
    };
    let tag = outcome.tag();
    let mut text = format!("{tag}\n{lines}");
    let mut cert_path = Value::Null;
    if let (SearchOutcome::Colorable(cert), Some(path)) = (&outcome, &cert_out) {
        if !cert.verify().passed() {
            eprintln!("mramsey: internal error: search produced an invalid certificate");
            return ExitCode::from(EXIT_FAIL);
        }
        if let Err(e) = write_cert(path, cert) {
            return usage(e);
        }
        text.push_str(&format!("certificate: {}\n", path.display()));
        cert_path = json!(path.display().to_string());
    }
    details.insert("outcome".into(), json!(tag));
    details.insert("j".into(), json!(j));
    details.insert("t".into(), json!(t));
    details.insert("targets".into(), json!(format_targets(&targets)));
    details.insert("certificate".into(), cert_path);
    out.emit(&text, Value::Object(details));
    let code = match (&outcome, expect) {
        (SearchOutcome::BudgetExhausted { .. }, _) => EXIT_BUDGET,
        (SearchOutcome::Colorable(_), Some(Expect::NotColorable)) => EXIT_FAIL,
        (SearchOutcome::NotColorable { .. }, Some(Expect::Colorable)) => EXIT_FAIL,
        _ => EXIT_OK,
    };
    ExitCode::from(code)
}

fn cmd_witness(out: &Out, kind: &str, j: u64, n: u64, path: Option<PathBuf>) -> ExitCode {
    let Some(k) = WitnessKind::from_name(kind, j, n) else {
        return usage(format!(
            "unknown witness `{kind}` (expected null-star-rest, bipartite-split3 or part-vs-rest)"
        ));
    };
    let cert = match k.build() {
        Ok(c) => c,
        Err(e) => return usage(e.to_string()),
    };
    // re-read and re-check exactly what will be written
    let text = certfile::to_json(&cert);
    let reread = certfile::from_json(&text).expect("own output parses");
    if !reread.verify().passed() {
        eprintln!("mramsey: internal error: {k} produced an invalid certificate; nothing written");
        return ExitCode::from(EXIT_FAIL);
    }
    let shape = cert.problem().shape();
    let summary = format!("PASS {} host={shape}\n", cert.provenance());
    let info = json!({
        "kind": k.name(), "j": shape.parts(), "t": shape.class_size(),
        "provenance": cert.provenance(), "verified": true,
        "path": path.as_ref().map(|p| p.display().to_string()),
    });
    match path {
        Some(p) => {
            if let Err(e) = fs::write(&p, &text) {
                return usage(format!("writing {}: {e}", p.display()));
            }
            out.emit(&format!("{summary}certificate: {}\n", p.display()), info);
        }
        None => {
            eprint!("{summary}");
            print!("{text}");
        }
    }
    ExitCode::from(EXIT_OK)
}

fn cmd_verify(out: &Out, path: &PathBuf) -> ExitCode {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return usage(format!("{}: {e}", path.display())),
    };
    let cert = match certfile::from_json(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("mramsey: {}: {e}", path.display());
            if out.format == Format::Json {
                println!("{}", json!({"path": path.display().to_string(), "error": e.to_string(), "field": e.path}));
            }
            return ExitCode::from(if e.line.is_some() { EXIT_USAGE } else { EXIT_FAIL });
        }
    };
    let p = cert.problem();
    let shape = p.shape();
    let report = cert.verify();
    let mut text = format!(
        "certificate {shape} colors={} targets={} provenance={}\n",
        p.colors(),
        format_targets(p.targets()),
        cert.provenance()
    );
    let mut classes = Vec::new();
    for check in &report.classes {
        match &check.result.witness {
            None => {
                text.push_str(&format!("color {} {}: clean\n", check.color, check.target));
                classes.push(json!({"color": check.color, "target": check.target.to_string(), "found": false}));
            }
            Some(w) => {
                let pairs: Vec<[usize; 2]> = w
                    .iter()
                    .map(|&e| {
                        let (u, v) = shape.endpoints(e);
                        [u, v]
                    })
                    .collect();
                let shown: Vec<String> = pairs.iter().map(|[u, v]| format!("[{u},{v}]")).collect();
                text.push_str(&format!(
                    "color {} {}: FOUND [{}]\n",
                    check.color,
                    check.target,
                    shown.join(",")
                ));
                classes.push(json!({
                    "color": check.color, "target": check.target.to_string(),
                    "found": true, "witness": pairs,
                }));
            }
        }
    }
    let pass = report.passed();
    text.push_str(if pass { "PASS\n" } else { "FAIL\n" });
    out.emit(
        &text,
        json!({
            "j": shape.parts(), "t": shape.class_size(), "colors": p.colors(),
            "targets": format_targets(p.targets()), "provenance": cert.provenance(),
            "classes": classes, "result": if pass { "PASS" } else { "FAIL" },
        }),
    );
    ExitCode::from(if pass { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_table(out: &Out, theorem: u8, max_n: Option<u64>, backend: Backend, budgets: &Budgets) -> ExitCode {
    if theorem != 1 && theorem != 2 {
        return usage("--theorem must be 1 or 2");
    }
    if let Err(e) = budgets.check() {
        return usage(e);
    }
    let max_n = max_n.unwrap_or(if theorem == 1 { 4 } else { 5 });
    if max_n < 2 {
        return usage("--max-n must be at least 2");
    }
    let opts = TableOptions {
        max_n,
        search: budgets.search(),
        backend,
        cegar: budgets.cegar(),
    };
    let text_mode = out.format == Format::Text;
    let rows = table::table(theorem, &opts, |r, _| {
        if text_mode {
            println!("{r}");
        }
    });
    let count = |s: &str| rows.iter().filter(|r| r.status() == s).count();
    let (agree, skipped, disagree, na) = (count("AGREE"), count("SKIPPED(budget)"), count("DISAGREE"), count("N/A"));
    let summary = format!(
        "rows={} agree={agree} skipped={skipped} disagree={disagree} n/a={na}\n",
        rows.len()
    );
    out.emit(
        &summary,
        json!({
            "theorem": theorem,
            "rows": rows.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            "agree": agree, "skipped": skipped, "disagree": disagree, "not_applicable": na,
        }),
    );
    ExitCode::from(if disagree == 0 { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_obscheck(out: &Out) -> ExitCode {
    let r = check_observation1();
    let hosts: Vec<Value> = r
        .hosts
        .iter()
        .map(|h| {
            json!({
                "host": h.name, "edges": h.edges, "subsets": h.subsets,
                "star_only": h.star_only, "path_only": h.path_only,
                "both": h.both, "neither": h.neither,
            })
        })
        .collect();
    out.emit(
        &r.to_string(),
        json!({"hosts": hosts, "result": if r.passed() { "PASS" } else { "FAIL" }}),
    );
    ExitCode::from(if r.passed() { EXIT_OK } else { EXIT_FAIL })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Out { format: cli.format };
    match cli.command {
        Cmd::Formula { family, j, n } => cmd_formula(&out, &family, j, n),
        Cmd::Search {
            j,
            t,
            targets,
            backend,
            scan_to,
            expect,
            out: cert_out,
            solver,
            budgets,
        } => cmd_search(&out, j, t, &targets, backend.into(), scan_to, expect, cert_out, solver, &budgets),
        Cmd::Witness { kind, j, n, out: path } => cmd_witness(&out, &kind, j, n, path),
        Cmd::Verify { path } => cmd_verify(&out, &path),
        Cmd::Table {
            theorem,
            max_n,
            backend,
            budgets,
        } => cmd_table(&out, theorem, max_n, backend.into(), &budgets),
        Cmd::Obscheck => cmd_obscheck(&out),
    }
}
