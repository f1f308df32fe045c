//! CNF encoding of the avoidance problem and the DIMACS text protocol.
//!
//! Variable `var(e, c) = e·r + c + 1` is true when edge `e` has colour `c`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;
use core::ops::ControlFlow;

use thiserror::Error;

use crate::detect::{count_copies, for_each_copy, Adjacency};
use crate::pattern::TargetPattern;
use crate::problem::{ColoringProblem, EdgeColoring};
use crate::shape::EdgeId;

pub type Lit = i32;
pub type Clause = Vec<Lit>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncodeOptions {
    /// Path and cycle targets with more labelled copies than this in the
    /// host are left to the refinement loop.
    pub eager_threshold: usize,
}

impl Default for EncodeOptions {
    fn default() -> Self {
        EncodeOptions {
            eager_threshold: 200_000,
        }
    }
}

/// How a colour's target is enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Enforcement {
    Eager { clauses: usize },
    Lazy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfInstance {
    edges: usize,
    colors: usize,
    clauses: Vec<Clause>,
    enforcement: Vec<Enforcement>,
}

impl CnfInstance {
    pub fn var(&self, e: EdgeId, c: usize) -> Lit {
        (e * self.colors + c + 1) as Lit
    }

    pub fn num_vars(&self) -> usize {
        self.edges * self.colors
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn enforcement(&self) -> &[Enforcement] {
        &self.enforcement
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(|c| c.is_empty())
    }

    pub fn add_clause(&mut self, clause: Clause) {
        self.clauses.push(clause);
    }

    /// Clause forbidding every edge of `copy` from taking colour `c`.
    pub fn blocking_clause(&self, copy: &[EdgeId], c: usize) -> Clause {
        copy.iter().map(|&e| -self.var(e, c)).collect()
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars(), self.clauses.len());
        for clause in &self.clauses {
            for l in clause {
                let _ = write!(s, "{l} ");
            }
            s.push_str("0\n");
        }
        s
    }

    /// One `e <u> <v> <c> <var>` line per variable.
    pub fn map_text(&self, problem: &ColoringProblem) -> String {
        let mut s = String::new();
        for (e, u, v) in problem.shape().edges() {
            for c in 0..self.colors {
                let _ = writeln!(s, "e {u} {v} {c} {}", self.var(e, c));
            }
        }
        s
    }

    /// Reads the colouring out of a model (`model[var]`, index 0 unused).
    pub fn decode(&self, model: &[bool]) -> Result<EdgeColoring, ProtocolError> {
        let mut colors = Vec::with_capacity(self.edges);
        for e in 0..self.edges {
            let set: Vec<usize> = (0..self.colors)
                .filter(|&c| model.get(self.var(e, c) as usize).copied().unwrap_or(false))
                .collect();
            if set.len() != 1 {
                return Err(ProtocolError {
                    line: 0,
                    reason: format!("model gives edge {e} {} colours", set.len()),
                });
            }
            colors.push(set[0] as u8);
        }
        Ok(EdgeColoring::from_colors(colors))
    }
}

fn subsets(items: &[EdgeId], m: usize, from: usize, cur: &mut Vec<EdgeId>, out: &mut dyn FnMut(&[EdgeId])) {
    if cur.len() == m {
        out(cur);
        return;
    }
    for i in from..items.len() {
        cur.push(items[i]);
        subsets(items, m, i + 1, cur, out);
        cur.pop();
    }
}

/// Exactly-one colour per edge plus every eagerly encoded target.
pub fn encode_eager(p: &ColoringProblem, opts: &EncodeOptions) -> CnfInstance {
    let shape = p.shape();
    let r = p.colors();
    let mut cnf = CnfInstance {
        edges: shape.edge_count(),
        colors: r,
        clauses: Vec::new(),
        enforcement: Vec::new(),
    };
    for e in 0..shape.edge_count() {
        cnf.clauses.push((0..r).map(|c| cnf.var(e, c)).collect());
        for a in 0..r {
            for b in a + 1..r {
                cnf.clauses.push(vec![-cnf.var(e, a), -cnf.var(e, b)]);
            }
        }
    }
    let full = Adjacency::from_set(shape, &shape.full_set());
    for (c, &target) in p.targets().iter().enumerate() {
        let before = cnf.clauses.len();
        let eager = match target {
            TargetPattern::Star(m) => {
                for v in 0..shape.vertex_count() {
                    let incident: Vec<EdgeId> = (0..shape.vertex_count())
                        .filter_map(|w| shape.id_of(v, w))
                        .collect();
                    subsets(&incident, m, 0, &mut Vec::new(), &mut |s| {
                        let clause = cnf.blocking_clause(s, c);
                        cnf.clauses.push(clause);
                    });
                }
                true
            }
            TargetPattern::Path(_) | TargetPattern::Cycle(_) => {
                if count_copies(shape, &full, target, opts.eager_threshold).is_some() {
                    let _ = for_each_copy(shape, &full, target, |copy| {
                        let clause = cnf.blocking_clause(copy, c);
                        cnf.clauses.push(clause);
                        ControlFlow::Continue(())
                    });
                    true
                } else {
                    false
                }
            }
            TargetPattern::Stripe(_) => false,
        };
        cnf.enforcement.push(if eager {
            Enforcement::Eager {
                clauses: cnf.clauses.len() - before,
            }
        } else {
            Enforcement::Lazy
        });
    }
    cnf
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("solver output line {line}: {reason}")]
pub struct ProtocolError {
    /// 1-based; 0 when the problem is not tied to one line.
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverAnswer {
    /// `model[var]` for `var` in `1..=num_vars`; index 0 unused.
    Sat(Vec<bool>),
    Unsat,
    /// The solver gave up (`s UNKNOWN`, timeout).
    Unknown,
}

/// Parses `s` and `v` lines. Comment lines and anything before the status
/// line are ignored; models may be split over any number of `v` lines.
pub fn parse_solver_output(text: &str, num_vars: usize) -> Result<SolverAnswer, ProtocolError> {
    let mut status: Option<SolverAnswer> = None;
    let mut model = vec![false; num_vars + 1];
    let mut terminated = false;
    let mut saw_values = false;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |reason: String| ProtocolError { line: i + 1, reason };
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("s ") {
            if status.is_some() {
                return Err(err(format!("second status line `{line}`")));
            }
            status = Some(match rest.trim() {
                "SATISFIABLE" => SolverAnswer::Sat(Vec::new()),
                "UNSATISFIABLE" => SolverAnswer::Unsat,
                "UNKNOWN" => SolverAnswer::Unknown,
                other => return Err(err(format!("unknown status `{other}`"))),
            });
        } else if let Some(rest) = line.strip_prefix('v') {
            if terminated {
                return Err(err(String::from("values after the terminating 0")));
            }
            saw_values = true;
            for tok in rest.split_whitespace() {
                let lit: i64 = tok.parse().map_err(|_| err(format!("bad literal `{tok}`")))?;
                if lit == 0 {
                    terminated = true;
                    continue;
                }
                if terminated {
                    return Err(err(String::from("values after the terminating 0")));
                }
                let var = lit.unsigned_abs() as usize;
                if var > num_vars {
                    return Err(err(format!("variable {var} out of range 1..={num_vars}")));
                }
                model[var] = lit > 0;
            }
        } else if status.is_none() {
            // banner text some solvers print before answering
            continue;
        } else {
            return Err(err(format!("unexpected line `{line}`")));
        }
    }
    match status {
        None => Err(ProtocolError {
            line: 0,
            reason: String::from("no `s` status line"),
        }),
        Some(SolverAnswer::Sat(_)) => {
            if !saw_values {
                return Err(ProtocolError {
                    line: 0,
                    reason: String::from("SATISFIABLE without a model"),
                });
            }
            Ok(SolverAnswer::Sat(model))
        }
        Some(other) => Ok(other),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::parse_targets;
    use crate::shape::PartitionShape;

    fn problem(j: usize, t: usize, targets: &str) -> ColoringProblem {
        ColoringProblem::new(PartitionShape::new(j, t).unwrap(), parse_targets(targets).unwrap()).unwrap()
    }

    #[test]
    fn star_clauses_on_k2x2() {
        let cnf = encode_eager(&problem(2, 2, "K1,2"), &EncodeOptions::default());
        assert_eq!(cnf.enforcement(), &[Enforcement::Eager { clauses: 4 }]);
    }

    #[test]
    fn no_cycle_clauses_on_k3x1() {
        let cnf = encode_eager(&problem(3, 1, "2K2;C7"), &EncodeOptions::default());
        assert_eq!(cnf.enforcement()[0], Enforcement::Lazy);
        assert_eq!(cnf.enforcement()[1], Enforcement::Eager { clauses: 0 });
        assert_eq!(cnf.num_clauses(), 3 * 2);
    }

    #[test]
    fn threshold_sends_cycles_lazy() {
        let opts = EncodeOptions { eager_threshold: 100 };
        let cnf = encode_eager(&problem(3, 3, "2K2;C7"), &opts);
        assert_eq!(cnf.enforcement()[1], Enforcement::Lazy);
    }

    #[test]
    fn dimacs_and_map() {
        let p = problem(2, 1, "K2;K2");
        let cnf = encode_eager(&p, &EncodeOptions::default());
        assert_eq!(cnf.to_dimacs(), "p cnf 2 2\n1 2 0\n-1 -2 0\n");
        assert_eq!(cnf.map_text(&p), "e 0 1 0 1\ne 0 1 1 2\n");
    }

    #[test]
    fn parses_split_models() {
        let out = "c hello\ns SATISFIABLE\nv 1 -2\nv 3 0\n";
        assert_eq!(
            parse_solver_output(out, 3).unwrap(),
            SolverAnswer::Sat(vec![false, true, false, true])
        );
        assert_eq!(parse_solver_output("s UNSATISFIABLE\n", 3).unwrap(), SolverAnswer::Unsat);
    }

    #[test]
    fn protocol_errors_name_the_line() {
        let e = parse_solver_output("s SATISFIABLE\nv 1 x 0\n", 3).unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.reason.contains("`x`"));
        assert_eq!(parse_solver_output("s SATISFIABLE\nv 9 0\n", 3).unwrap_err().line, 2);
        assert_eq!(parse_solver_output("", 3).unwrap_err().line, 0);
        assert!(parse_solver_output("s SATISFIABLE\n", 3).is_err());
    }

    #[test]
    fn decode_requires_one_colour() {
        let p = problem(2, 1, "K2;K2");
        let cnf = encode_eager(&p, &EncodeOptions::default());
        assert_eq!(cnf.decode(&[false, false, true]).unwrap().as_slice(), &[1]);
        assert!(cnf.decode(&[false, true, true]).is_err());
    }
}
