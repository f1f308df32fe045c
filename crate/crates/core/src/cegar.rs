//! Counterexample-guided refinement over an external SAT solver.
//!
//! The CNF starts with the eager constraints only. Each model is decoded and
//! checked with the batch detectors; every monochromatic copy found becomes
//! a blocking clause and the solver runs again.

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use thiserror::Error;

use crate::certificate::Certificate;
use crate::cnf::{encode_eager, CnfInstance, EncodeOptions, ProtocolError, SolverAnswer};
use crate::detect::{self, for_each_copy, Adjacency};
use crate::problem::ColoringProblem;
use crate::search::SearchOutcome;
use crate::shape::EdgeId;

pub const PROVENANCE: &str = "search:cegar";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("solver failed: {0}")]
    Failed(String),
    #[error("solver timed out")]
    Timeout,
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
}

/// Anything that can answer one CNF instance.
pub trait SatSolver {
    fn solve(&mut self, cnf: &CnfInstance) -> Result<SolverAnswer, SolverError>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockingPolicy {
    /// One clause per violated class per iteration.
    OnePerClass,
    /// Up to `limit` copies per violated class per iteration.
    Sweep { limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CegarOptions {
    pub encode: EncodeOptions,
    pub blocking: BlockingPolicy,
    pub max_iterations: u64,
}

impl Default for CegarOptions {
    fn default() -> Self {
        CegarOptions {
            encode: EncodeOptions::default(),
            blocking: BlockingPolicy::OnePerClass,
            max_iterations: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CegarReport {
    pub outcome: SearchOutcome,
    /// Solver calls made.
    pub iterations: u64,
    /// Clause count handed to the solver on each call.
    pub clause_counts: Vec<usize>,
    pub blocked: u64,
    /// Set when a blocking clause failed its per-iteration check; the
    /// outcome is then `BudgetExhausted`.
    pub unsound_block: bool,
    pub error: Option<SolverError>,
}

impl CegarReport {
    pub fn clause_growth_monotone(&self) -> bool {
        self.clause_counts.windows(2).all(|w| w[0] <= w[1])
    }
}

/// The copies of `c`'s target to block in the class `edges`, per `policy`.
fn copies_to_block(
    p: &ColoringProblem,
    class: &crate::edgeset::EdgeSet,
    c: usize,
    policy: BlockingPolicy,
) -> Vec<Vec<EdgeId>> {
    let shape = p.shape();
    let target = p.targets()[c];
    match policy {
        BlockingPolicy::OnePerClass => detect::contains(shape, class, target).witness.into_iter().collect(),
        BlockingPolicy::Sweep { limit } => {
            let adj = Adjacency::from_set(shape, class);
            let mut out = Vec::new();
            let _ = for_each_copy(shape, &adj, target, |copy| {
                out.push(copy.to_vec());
                if out.len() >= limit.max(1) {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
            out
        }
    }
}

pub fn solve_cegar(p: &ColoringProblem, solver: &mut dyn SatSolver, opts: &CegarOptions) -> CegarReport {
    let mut cnf = encode_eager(p, &opts.encode);
    let mut report = CegarReport {
        outcome: SearchOutcome::NotColorable { nodes: 0 },
        iterations: 0,
        clause_counts: Vec::new(),
        blocked: 0,
        unsound_block: false,
        error: None,
    };
    if cnf.has_empty_clause() {
        return report;
    }
    let shape = p.shape();
    loop {
        if report.iterations >= opts.max_iterations {
            report.outcome = SearchOutcome::BudgetExhausted {
                best_depth: report.iterations,
            };
            return report;
        }
        report.iterations += 1;
        report.clause_counts.push(cnf.num_clauses());
        let model = match solver.solve(&cnf) {
            Ok(SolverAnswer::Unsat) => {
                report.outcome = SearchOutcome::NotColorable {
                    nodes: report.iterations,
                };
                return report;
            }
            Ok(SolverAnswer::Sat(model)) => model,
            Ok(SolverAnswer::Unknown) => {
                report.error = Some(SolverError::Timeout);
                report.outcome = SearchOutcome::BudgetExhausted {
                    best_depth: report.iterations,
                };
                return report;
            }
            Err(e) => {
                report.error = Some(e);
                report.outcome = SearchOutcome::BudgetExhausted {
                    best_depth: report.iterations,
                };
                return report;
            }
        };
        let coloring = match cnf.decode(&model) {
            Ok(c) => c,
            Err(e) => {
                report.error = Some(e.into());
                report.outcome = SearchOutcome::BudgetExhausted {
                    best_depth: report.iterations,
                };
                return report;
            }
        };
        let mut clean = true;
        for c in 0..p.colors() {
            let class = coloring.class(c);
            for copy in copies_to_block(p, &class, c, opts.blocking) {
                clean = false;
                // the copy must be monochromatic in this model and a genuine
                // copy of the target, so no valid colouring is excluded
                let sound = detect::is_copy_of(shape, &copy, p.targets()[c])
                    && copy.iter().all(|&e| coloring.color(e) == c);
                if !sound {
                    report.unsound_block = true;
                    report.outcome = SearchOutcome::BudgetExhausted {
                        best_depth: report.iterations,
                    };
                    return report;
                }
                let clause = cnf.blocking_clause(&copy, c);
                cnf.add_clause(clause);
                report.blocked += 1;
            }
        }
        if clean {
            let cert = Certificate::new(p.clone(), coloring, PROVENANCE).expect("decoded colouring is total");
            report.outcome = SearchOutcome::Colorable(cert);
            return report;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::parse_targets;
    use crate::shape::PartitionShape;

    /// Tries every colouring in order; fine for a handful of edges.
    struct Brute;

    impl SatSolver for Brute {
        fn solve(&mut self, cnf: &CnfInstance) -> Result<SolverAnswer, SolverError> {
            let n = cnf.num_vars();
            for bits in 0u64..(1 << n) {
                let model: Vec<bool> = (0..=n).map(|v| v > 0 && bits >> (v - 1) & 1 == 1).collect();
                let ok = cnf
                    .clauses()
                    .iter()
                    .all(|cl| cl.iter().any(|&l| model[l.unsigned_abs() as usize] == (l > 0)));
                if ok {
                    return Ok(SolverAnswer::Sat(model));
                }
            }
            Ok(SolverAnswer::Unsat)
        }
    }

    struct Broken;

    impl SatSolver for Broken {
        fn solve(&mut self, _: &CnfInstance) -> Result<SolverAnswer, SolverError> {
            Err(SolverError::Failed("exit 137".into()))
        }
    }

    fn problem(j: usize, t: usize, targets: &str) -> ColoringProblem {
        ColoringProblem::new(PartitionShape::new(j, t).unwrap(), parse_targets(targets).unwrap()).unwrap()
    }

    #[test]
    fn small_verdicts() {
        let opts = CegarOptions::default();
        let r = solve_cegar(&problem(2, 2, "K1,2;P4;2K2"), &mut Brute, &opts);
        let SearchOutcome::Colorable(c) = &r.outcome else { panic!("{r:?}") };
        assert!(c.is_valid());
        assert!(r.clause_growth_monotone());

        let r = solve_cegar(&problem(4, 1, "2K2;K1,2"), &mut Brute, &opts);
        assert!(r.outcome.is_not_colorable());
        assert!(r.blocked > 0);
    }

    #[test]
    fn p1_short_circuits() {
        let r = solve_cegar(&problem(2, 1, "P1;K2"), &mut Broken, &CegarOptions::default());
        assert!(r.outcome.is_not_colorable());
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn solver_failure_is_budget() {
        let r = solve_cegar(&problem(2, 2, "2K2;2K2"), &mut Broken, &CegarOptions::default());
        assert_eq!(r.outcome, SearchOutcome::BudgetExhausted { best_depth: 1 });
        assert!(r.error.is_some());
    }

    #[test]
    fn sweep_blocks_more_per_round() {
        let p = problem(4, 1, "2K2;K1,2");
        let one = solve_cegar(&p, &mut Brute, &CegarOptions::default());
        let sweep = solve_cegar(
            &p,
            &mut Brute,
            &CegarOptions {
                blocking: BlockingPolicy::Sweep { limit: 100 },
                ..CegarOptions::default()
            },
        );
        assert_eq!(one.outcome.verdict(), sweep.outcome.verdict());
        assert!(sweep.iterations <= one.iterations);
    }
}
