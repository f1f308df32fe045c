//! Exhaustive colourability search.
//!
//! Edges are coloured in canonical id order, colours tried in ascending
//! order, so the first complete colouring reached is the lexicographically
//! least valid one. A branch is cut as soon as the new edge completes a copy
//! of its colour's target. With symmetry on, a prefix is also cut when some
//! generator of the host's automorphism group (or a swap of two colours with
//! the same target) maps it to a word that is already smaller on the decided
//! positions; the least word of every orbit survives, so verdicts and the
//! reported certificate are unchanged.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::time::Duration;

use crate::certificate::Certificate;
use crate::detect::matching::{self, Mates};
use crate::detect::{self, Adjacency};
use crate::pattern::TargetPattern;
use crate::problem::{ColoringProblem, EdgeColoring};
use crate::shape::PartitionShape;
use crate::value::RamseyValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub node_budget: u64,
    /// Enforced by callers that own a clock; the core search never reads time.
    pub time_budget: Option<Duration>,
    pub symmetry: bool,
    pub parallel_width: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: 100_000_000,
            time_budget: Some(Duration::from_secs(600)),
            symmetry: true,
            parallel_width: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Colorable(Certificate),
    NotColorable { nodes: u64 },
    /// For the CEGAR backend `best_depth` carries the iteration count.
    BudgetExhausted { best_depth: u64 },
}

impl SearchOutcome {
    /// `colorable`, `not_colorable` or `budget`.
    pub fn tag(&self) -> &'static str {
        match self {
            SearchOutcome::Colorable(_) => "colorable",
            SearchOutcome::NotColorable { .. } => "not_colorable",
            SearchOutcome::BudgetExhausted { .. } => "budget",
        }
    }

    pub fn is_colorable(&self) -> bool {
        matches!(self, SearchOutcome::Colorable(_))
    }

    pub fn is_not_colorable(&self) -> bool {
        matches!(self, SearchOutcome::NotColorable { .. })
    }

    /// `Some(colorable)` for a completed verdict.
    pub fn verdict(&self) -> Option<bool> {
        match self {
            SearchOutcome::Colorable(_) => Some(true),
            SearchOutcome::NotColorable { .. } => Some(false),
            SearchOutcome::BudgetExhausted { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub nodes: u64,
}

/// Polled every few thousand nodes with the nodes visited since the last
/// poll; returning `true` abandons the search as budget-exhausted.
pub trait Interrupt {
    fn poll(&self, nodes_since_last: u64) -> bool;
}

pub struct NeverInterrupt;

impl Interrupt for NeverInterrupt {
    fn poll(&self, _: u64) -> bool {
        false
    }
}

const POLL_EVERY: u64 = 4096;

pub const PROVENANCE: &str = "search:backtrack";

/// A symmetry used for pruning. Every generator is an involution.
#[derive(Debug, Clone)]
enum Generator {
    /// Image position of every edge under a vertex permutation.
    Edges(Vec<u32>),
    /// Swap of two colours carrying the same target.
    Colors(u8, u8),
}

fn vertex_generators(shape: &PartitionShape) -> Vec<Vec<usize>> {
    let (j, t) = (shape.parts(), shape.class_size());
    let n = shape.vertex_count();
    let mut out = Vec::new();
    for p in 0..j {
        for s in 0..t.saturating_sub(1) {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(shape.vertex(p, s), shape.vertex(p, s + 1));
            out.push(perm);
        }
    }
    if t > 0 {
        for p in 0..j.saturating_sub(1) {
            let mut perm: Vec<usize> = (0..n).collect();
            for s in 0..t {
                perm.swap(shape.vertex(p, s), shape.vertex(p + 1, s));
            }
            out.push(perm);
        }
    }
    out
}

fn generators(problem: &ColoringProblem) -> Vec<Generator> {
    let shape = problem.shape();
    let mut gens: Vec<Generator> = vertex_generators(shape)
        .into_iter()
        .map(|sigma| {
            Generator::Edges(
                shape
                    .edges()
                    .map(|(_, u, v)| shape.id_of(sigma[u], sigma[v]).expect("automorphism keeps edges") as u32)
                    .collect(),
            )
        })
        .collect();
    let targets = problem.targets();
    for c in 0..targets.len() {
        // next colour with the same target, so the swaps generate all
        // permutations of each group
        if let Some(d) = (c + 1..targets.len()).find(|&d| targets[d] == targets[c]) {
            gens.push(Generator::Colors(c as u8, d as u8));
        }
    }
    gens
}

/// Whether `g` maps the decided prefix `w` to something already smaller.
fn smaller_image(g: &Generator, w: &[u8]) -> bool {
    let k = w.len();
    match g {
        Generator::Edges(perm) => {
            for i in 0..k {
                let pi = perm[i] as usize;
                if pi >= k {
                    return false;
                }
                let (img, cur) = (w[pi], w[i]);
                if img != cur {
                    return img < cur;
                }
            }
            false
        }
        &Generator::Colors(a, b) => {
            for &cur in w {
                let img = if cur == a {
                    b
                } else if cur == b {
                    a
                } else {
                    cur
                };
                if img != cur {
                    return img < cur;
                }
            }
            false
        }
    }
}

enum Stop {
    Found,
    Exhausted,
    Budget,
}

struct Engine<'a> {
    problem: &'a ColoringProblem,
    ends: Vec<(usize, usize)>,
    adj: Vec<Adjacency>,
    /// Maximum matching of every stripe-target class.
    mates: Vec<Option<Mates>>,
    undo: Vec<Option<Mates>>,
    gens: Vec<Generator>,
    word: Vec<u8>,
    nodes: u64,
    unpolled: u64,
    budget: u64,
    best_depth: usize,
    stop: &'a dyn Interrupt,
}

impl<'a> Engine<'a> {
    fn new(problem: &'a ColoringProblem, cfg: &SearchConfig, stop: &'a dyn Interrupt) -> Self {
        let shape = problem.shape();
        let n = shape.vertex_count();
        Engine {
            problem,
            ends: shape.edges().map(|(_, u, v)| (u, v)).collect(),
            adj: vec![Adjacency::empty(n); problem.colors()],
            mates: problem
                .targets()
                .iter()
                .map(|t| matches!(t, TargetPattern::Stripe(_)).then(|| vec![None; n]))
                .collect(),
            undo: Vec::new(),
            gens: if cfg.symmetry { generators(problem) } else { Vec::new() },
            word: Vec::with_capacity(shape.edge_count()),
            nodes: 0,
            unpolled: 0,
            budget: cfg.node_budget,
            best_depth: 0,
            stop,
        }
    }

    /// Any target already present in an empty class (only `P_1` on a
    /// non-empty host).
    fn root_blocked(&self) -> bool {
        let shape = self.problem.shape();
        self.problem
            .targets()
            .iter()
            .any(|&t| detect::contains(shape, &shape.empty_set(), t).found())
    }

    /// Tries colour `c` on the next edge; on success the edge is recorded.
    fn push(&mut self, c: usize) -> bool {
        let (u, v) = self.ends[self.word.len()];
        let target = self.problem.targets()[c];
        if let TargetPattern::Stripe(n) = target {
            let mut mate = self.mates[c].clone().expect("stripe colour tracks a matching");
            let mut adj = self.adj[c].clone();
            adj.add_edge(u, v);
            if mate[u].is_none() && mate[v].is_none() {
                mate[u] = Some(v);
                mate[v] = Some(u);
            } else {
                matching::augment_once(adj.rows(), &mut mate);
            }
            if matching::matching_size(&mate) >= n {
                return false;
            }
            self.undo.push(self.mates[c].replace(mate));
            self.adj[c] = adj;
        } else {
            if detect::extends_adjacency(&self.adj[c], u, v, target) {
                return false;
            }
            self.undo.push(None);
            self.adj[c].add_edge(u, v);
        }
        self.word.push(c as u8);
        true
    }

    fn pop(&mut self) {
        let c = self.word.pop().expect("non-empty word") as usize;
        let (u, v) = self.ends[self.word.len()];
        self.adj[c].remove_edge(u, v);
        if let Some(old) = self.undo.pop().expect("undo entry per edge") {
            self.mates[c] = Some(old);
        }
    }

    fn symmetric_cut(&self) -> bool {
        self.gens.iter().any(|g| smaller_image(g, &self.word))
    }

    fn count_node(&mut self) -> bool {
        self.nodes += 1;
        self.unpolled += 1;
        self.best_depth = self.best_depth.max(self.word.len());
        if self.nodes > self.budget {
            return false;
        }
        if self.unpolled >= POLL_EVERY {
            let n = core::mem::take(&mut self.unpolled);
            if self.stop.poll(n) {
                return false;
            }
        }
        true
    }

    /// Depth-first from the current word. `limit` caps the word length
    /// (used to enumerate prefixes); `on_leaf` sees each word of that length.
    fn dfs(&mut self, limit: usize, on_leaf: &mut dyn FnMut(&[u8]) -> bool) -> Stop {
        if !self.count_node() {
            return Stop::Budget;
        }
        if self.word.len() == limit {
            return if on_leaf(&self.word) { Stop::Found } else { Stop::Exhausted };
        }
        for c in 0..self.problem.colors() {
            if !self.push(c) {
                continue;
            }
            if self.symmetric_cut() {
                self.pop();
                continue;
            }
            match self.dfs(limit, on_leaf) {
                Stop::Exhausted => self.pop(),
                other => return other,
            }
        }
        Stop::Exhausted
    }

    /// Replays an already-accepted prefix.
    fn replay(&mut self, prefix: &[u8]) -> bool {
        prefix.iter().all(|&c| self.push(c as usize))
    }

    fn finish(&self, stop: Stop) -> SearchReport {
        let outcome = match stop {
            Stop::Found => {
                let cert = Certificate::new(
                    self.problem.clone(),
                    EdgeColoring::from_colors(self.word.clone()),
                    PROVENANCE,
                )
                .expect("search colours every edge with a valid index");
                SearchOutcome::Colorable(cert)
            }
            Stop::Exhausted => SearchOutcome::NotColorable { nodes: self.nodes },
            Stop::Budget => SearchOutcome::BudgetExhausted {
                best_depth: self.best_depth as u64,
            },
        };
        SearchReport {
            outcome,
            nodes: self.nodes,
        }
    }
}

/// Sequential search. `time_budget` is ignored here; see
/// [`decide_colorable_with`].
pub fn decide_colorable(p: &ColoringProblem, cfg: &SearchConfig) -> SearchReport {
    decide_colorable_with(p, cfg, &NeverInterrupt)
}

pub fn decide_colorable_with(p: &ColoringProblem, cfg: &SearchConfig, stop: &dyn Interrupt) -> SearchReport {
    decide_from_prefix(p, cfg, &[], stop)
}

/// Searches the subtree below `prefix`, which must be a word produced by
/// [`split_prefixes`] (or empty).
pub fn decide_from_prefix(
    p: &ColoringProblem,
    cfg: &SearchConfig,
    prefix: &[u8],
    stop: &dyn Interrupt,
) -> SearchReport {
    let mut eng = Engine::new(p, cfg, stop);
    if eng.root_blocked() || !eng.replay(prefix) {
        eng.nodes = 1;
        return eng.finish(Stop::Exhausted);
    }
    let edges = eng.ends.len();
    let r = eng.dfs(edges, &mut |_| true);
    eng.finish(r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixSplit {
    /// Surviving colour words of the first `depth` edges, in lex order.
    pub prefixes: Vec<Vec<u8>>,
    pub depth: usize,
    pub nodes: u64,
    pub exhausted_budget: bool,
}

/// Number of leading edges whose colours are fanned out to `width` workers.
pub fn split_depth(width: usize, edge_count: usize) -> usize {
    let width = width.max(1);
    let bits = (usize::BITS - (width - 1).leading_zeros()) as usize;
    bits.min(edge_count)
}

/// Enumerates the top-level subtrees for parallel search. Each prefix is
/// searched independently with [`decide_from_prefix`]; the answer for the
/// whole problem is that of the first prefix (in order) that is colourable.
pub fn split_prefixes(p: &ColoringProblem, cfg: &SearchConfig, width: usize) -> PrefixSplit {
    let depth = split_depth(width, p.shape().edge_count());
    let mut eng = Engine::new(p, cfg, &NeverInterrupt);
    let mut prefixes = Vec::new();
    let mut exhausted_budget = false;
    if !eng.root_blocked() {
        let r = eng.dfs(depth, &mut |w| {
            prefixes.push(w.to_vec());
            false
        });
        exhausted_budget = matches!(r, Stop::Budget);
    }
    PrefixSplit {
        prefixes,
        depth,
        nodes: eng.nodes,
        exhausted_budget,
    }
}

/// One line of the per-`t` progress log.
#[derive(Debug, Clone, PartialEq)]
pub struct TStep {
    pub t: usize,
    pub outcome: &'static str,
    pub nodes: u64,
    pub seconds: f64,
}

impl fmt::Display for TStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "t={} outcome={} nodes={} seconds={:.3}",
            self.t, self.outcome, self.nodes, self.seconds
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComputeReport {
    pub value: RamseyValue,
    pub steps: Vec<TStep>,
}

impl ComputeReport {
    pub fn log(&self) -> String {
        let mut s = String::new();
        for step in &self.steps {
            s.push_str(&format!("{step}\n"));
        }
        s
    }
}

/// Scans `t = 1..=t_max` with `run`, which decides one problem and reports
/// the seconds it took. The first non-colourable size is the value; a budget
/// hit or running past `t_max` yields `Unknown` with the best lower bound.
/// Never returns `Infinite`.
pub fn compute_m_with(
    j: usize,
    targets: &[TargetPattern],
    t_max: usize,
    mut run: impl FnMut(&ColoringProblem) -> (SearchReport, f64),
) -> Result<ComputeReport, crate::Error> {
    let mut steps = Vec::new();
    let mut last_colorable = 0u64;
    for t in 1..=t_max {
        let shape = PartitionShape::new(j, t)?;
        let problem = ColoringProblem::new(shape, targets.to_vec())?;
        let (report, seconds) = run(&problem);
        steps.push(TStep {
            t,
            outcome: report.outcome.tag(),
            nodes: report.nodes,
            seconds,
        });
        match report.outcome {
            SearchOutcome::Colorable(_) => last_colorable = t as u64,
            SearchOutcome::NotColorable { .. } => {
                return Ok(ComputeReport {
                    value: RamseyValue::Finite(t as u64),
                    steps,
                })
            }
            SearchOutcome::BudgetExhausted { .. } => break,
        }
    }
    Ok(ComputeReport {
        value: RamseyValue::Unknown {
            lower_bound: Some(last_colorable + 1),
        },
        steps,
    })
}

/// [`compute_m_with`] over the sequential search; seconds are reported as 0.
pub fn compute_m(
    j: usize,
    targets: &[TargetPattern],
    t_max: usize,
    cfg: &SearchConfig,
) -> Result<ComputeReport, crate::Error> {
    compute_m_with(j, targets, t_max, |p| (decide_colorable(p, cfg), 0.0))
}
