//! Wall-clock budgets, parallel fan-out and the two backends behind one call.

use std::io;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::{Duration, Instant};

use mramsey_core::cegar::{solve_cegar, CegarOptions, CegarReport};
use mramsey_core::cnf::encode_eager;
use mramsey_core::search::{
    compute_m_with, decide_from_prefix, split_prefixes, ComputeReport, Interrupt, SearchConfig, SearchOutcome,
    SearchReport,
};
use mramsey_core::{ColoringProblem, TargetPattern};

use crate::bridge::SolverBridge;

struct Shared {
    start: Instant,
    time_budget: Option<Duration>,
    node_budget: u64,
    nodes: AtomicU64,
    /// Lowest prefix index known to be colourable.
    best: AtomicUsize,
}

struct Control<'a> {
    shared: &'a Shared,
    index: usize,
}

impl Interrupt for Control<'_> {
    fn poll(&self, since: u64) -> bool {
        let s = self.shared;
        let total = s.nodes.fetch_add(since, Ordering::Relaxed) + since;
        total > s.node_budget
            || s.time_budget.is_some_and(|b| s.start.elapsed() > b)
            || s.best.load(Ordering::Relaxed) < self.index
    }
}

/// Backtracking search with the configured time budget and parallel width.
/// The verdict, and the certificate when colourable, do not depend on the
/// width.
pub fn decide(p: &ColoringProblem, cfg: &SearchConfig) -> SearchReport {
    let shared = Shared {
        start: Instant::now(),
        time_budget: cfg.time_budget,
        node_budget: cfg.node_budget,
        nodes: AtomicU64::new(0),
        best: AtomicUsize::new(usize::MAX),
    };
    if cfg.parallel_width <= 1 {
        let ctl = Control {
            shared: &shared,
            index: 0,
        };
        return decide_from_prefix(p, cfg, &[], &ctl);
    }
    let split = split_prefixes(p, cfg, cfg.parallel_width);
    if split.exhausted_budget {
        return SearchReport {
            outcome: SearchOutcome::BudgetExhausted {
                best_depth: split.depth as u64,
            },
            nodes: split.nodes,
        };
    }
    let results: Mutex<Vec<Option<SearchReport>>> = Mutex::new(vec![None; split.prefixes.len()]);
    let next = AtomicUsize::new(0);
    let workers = cfg.parallel_width.min(split.prefixes.len());
    thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= split.prefixes.len() {
                    break;
                }
                if shared.best.load(Ordering::Relaxed) < i {
                    continue;
                }
                let ctl = Control {
                    shared: &shared,
                    index: i,
                };
                let r = decide_from_prefix(p, cfg, &split.prefixes[i], &ctl);
                if r.outcome.is_colorable() {
                    shared.best.fetch_min(i, Ordering::Relaxed);
                }
                results.lock().expect("no worker panics")[i] = Some(r);
            });
        }
    });
    let results = results.into_inner().expect("no worker panics");
    let nodes = split.nodes + results.iter().flatten().map(|r| r.nodes).sum::<u64>();
    let first = shared.best.load(Ordering::Relaxed);
    if first != usize::MAX {
        let outcome = results[first].clone().expect("colourable prefix was searched").outcome;
        return SearchReport { outcome, nodes };
    }
    let deepest = results
        .iter()
        .flatten()
        .filter_map(|r| match r.outcome {
            SearchOutcome::BudgetExhausted { best_depth } => Some(best_depth),
            _ => None,
        })
        .max();
    let outcome = match deepest {
        Some(best_depth) => SearchOutcome::BudgetExhausted { best_depth },
        None => SearchOutcome::NotColorable { nodes },
    };
    SearchReport { outcome, nodes }
}

/// Scans `t = 1..=t_max` with [`decide`], timing every step.
pub fn compute_m(
    j: usize,
    targets: &[TargetPattern],
    t_max: usize,
    cfg: &SearchConfig,
) -> Result<ComputeReport, mramsey_core::Error> {
    compute_m_with(j, targets, t_max, |p| {
        let start = Instant::now();
        let r = decide(p, cfg);
        (r, start.elapsed().as_secs_f64())
    })
}

/// CEGAR through a solver subprocess. The variable map is written next to
/// the CNF in the bridge's working directory.
pub fn cegar(
    p: &ColoringProblem,
    bridge: &mut SolverBridge,
    opts: &CegarOptions,
) -> io::Result<CegarReport> {
    bridge.write_map(p, &encode_eager(p, &opts.encode))?;
    Ok(solve_cegar(p, bridge, opts))
}

/// CEGAR with the default solver (see [`SolverBridge::from_env`]), each
/// solver call limited to `timeout`.
pub fn cegar_default(p: &ColoringProblem, opts: &CegarOptions, timeout: Option<Duration>) -> io::Result<CegarReport> {
    let mut bridge = SolverBridge::from_env()?.with_timeout(timeout);
    cegar(p, &mut bridge, opts)
}
