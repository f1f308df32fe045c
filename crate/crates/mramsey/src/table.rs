//! Desk-scale reproduction of the closed forms: for every `(j, n)` in range,
//! the formula value `m`, a verified colouring at `t = m - 1`, and a search
//! verdict at `t = m`.

use std::fmt;
use std::time::Instant;

use mramsey_core::cegar::CegarOptions;
use mramsey_core::formulas::{self, Family};
use mramsey_core::search::{SearchConfig, SearchOutcome};
use mramsey_core::{
    Certificate, ColoringProblem, PartitionShape, RamseyValue, TargetPattern, WitnessKind,
};
use serde_json::{json, Value};

use crate::run;

/// Hosts with more edges than `K_{4×3}` are not searched.
pub const MAX_SEARCH_EDGES: usize = 54;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Backtrack,
    Cegar,
    Both,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Backtrack => "backtrack",
            Backend::Cegar => "cegar",
            Backend::Both => "both",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessCell {
    /// `source` is a construction name or `search`.
    Checked { t: u64, source: String, pass: bool },
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchCell {
    Verdict { t: u64, outcome: &'static str, nodes: u64 },
    Skipped { t: u64 },
    Disagree { t: u64, detail: String },
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub j: u64,
    pub n: u64,
    pub value: RamseyValue,
    pub witness: WitnessCell,
    pub search: SearchCell,
}

impl TableRow {
    pub fn status(&self) -> &'static str {
        let witness_ok = match &self.witness {
            WitnessCell::Checked { pass, .. } => *pass,
            WitnessCell::NotApplicable => true,
        };
        match (&self.search, witness_ok) {
            (_, false) | (SearchCell::Disagree { .. }, _) => "DISAGREE",
            (SearchCell::Verdict { outcome: "not_colorable", .. }, true) => "AGREE",
            (SearchCell::Verdict { outcome: "budget", .. }, true) | (SearchCell::Skipped { .. }, true) => {
                "SKIPPED(budget)"
            }
            (SearchCell::Verdict { .. }, true) => "DISAGREE",
            (SearchCell::NotApplicable, true) => "N/A",
        }
    }

    pub fn to_json(&self) -> Value {
        let witness = match &self.witness {
            WitnessCell::Checked { t, source, pass } => json!({"t": t, "source": source, "pass": pass}),
            WitnessCell::NotApplicable => Value::Null,
        };
        let search = match &self.search {
            SearchCell::Verdict { t, outcome, nodes } => json!({"t": t, "outcome": outcome, "nodes": nodes}),
            SearchCell::Skipped { t } => json!({"t": t, "outcome": "skipped"}),
            SearchCell::Disagree { t, detail } => json!({"t": t, "outcome": "disagree", "detail": detail}),
            SearchCell::NotApplicable => Value::Null,
        };
        json!({
            "j": self.j,
            "n": self.n,
            "formula": self.value.to_string(),
            "witness": witness,
            "search": search,
            "status": self.status(),
        })
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "j={} n={} formula={} witness=", self.j, self.n, self.value)?;
        match &self.witness {
            WitnessCell::Checked { t, source, pass } => {
                write!(f, "{}({source},t={t})", if *pass { "PASS" } else { "FAIL" })?
            }
            WitnessCell::NotApplicable => f.write_str("n/a")?,
        }
        f.write_str(" search=")?;
        match &self.search {
            SearchCell::Verdict { t, outcome, nodes } => write!(f, "{outcome}(t={t},nodes={nodes})")?,
            SearchCell::Skipped { t } => write!(f, "skipped(t={t})")?,
            SearchCell::Disagree { t, detail } => write!(f, "disagree(t={t},{detail})")?,
            SearchCell::NotApplicable => f.write_str("n/a")?,
        }
        write!(f, " status={}", self.status())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct TableOptions {
    pub max_n: u64,
    pub search: SearchConfig,
    pub backend: Backend,
    pub cegar: CegarOptions,
}

fn targets_for(theorem: u8, n: u64) -> Vec<TargetPattern> {
    match theorem {
        1 => vec![TargetPattern::Star(2), TargetPattern::Path(4), TargetPattern::Stripe(n as usize)],
        _ => vec![TargetPattern::Stripe(n as usize), TargetPattern::Cycle(7)],
    }
}

fn problem(j: u64, t: u64, targets: &[TargetPattern]) -> Option<ColoringProblem> {
    let shape = PartitionShape::new(j as usize, t as usize).ok()?;
    ColoringProblem::new(shape, targets.to_vec()).ok()
}

/// Outcome of the chosen backend(s); `Err` carries a disagreement.
pub fn run_backend(
    p: &ColoringProblem,
    backend: Backend,
    cfg: &SearchConfig,
    cegar: &CegarOptions,
) -> Result<(SearchOutcome, u64), String> {
    let bt = || run::decide(p, cfg);
    let cg = || -> (SearchOutcome, u64) {
        match run::cegar_default(p, cegar, cfg.time_budget) {
            Ok(r) => (r.outcome, r.iterations),
            Err(_) => (SearchOutcome::BudgetExhausted { best_depth: 0 }, 0),
        }
    };
    match backend {
        Backend::Backtrack => {
            let r = bt();
            Ok((r.outcome, r.nodes))
        }
        Backend::Cegar => Ok(cg()),
        Backend::Both => {
            let a = bt();
            let (b, _) = cg();
            match (a.outcome.verdict(), b.verdict()) {
                (Some(x), Some(y)) if x != y => Err(format!(
                    "backtrack={} cegar={}",
                    a.outcome.tag(),
                    b.tag()
                )),
                (Some(_), _) => Ok((a.outcome, a.nodes)),
                (None, _) => Ok((b, a.nodes)),
            }
        }
    }
}

fn witness_kind(theorem: u8, j: u64, n: u64) -> Option<WitnessKind> {
    match (theorem, j) {
        (1, _) => Some(WitnessKind::NullStarRest { j, n }),
        (_, 3) if n >= 3 => Some(WitnessKind::BipartiteSplit3 { n }),
        (_, 4) if n >= 4 => Some(WitnessKind::PartVsRest { j, n }),
        _ => None,
    }
}

fn check_lower(theorem: u8, j: u64, n: u64, m: u64, opts: &TableOptions) -> WitnessCell {
    let t = m - 1;
    let (source, cert): (String, Option<Certificate>) = match witness_kind(theorem, j, n) {
        Some(kind) => {
            let cert = kind.build().ok();
            let host = kind.host().ok().map(|(_, t)| t);
            if host != Some(t) {
                return WitnessCell::Checked {
                    t,
                    source: kind.name().into(),
                    pass: false,
                };
            }
            (kind.name().into(), cert)
        }
        None => {
            let cert = problem(j, t, &targets_for(theorem, n)).and_then(|p| {
                match run::decide(&p, &opts.search).outcome {
                    SearchOutcome::Colorable(c) => Some(c),
                    _ => None,
                }
            });
            ("search".into(), cert)
        }
    };
    WitnessCell::Checked {
        t,
        source,
        pass: cert.is_some_and(|c| c.verify().passed()),
    }
}

pub fn row(theorem: u8, j: u64, n: u64, opts: &TableOptions) -> TableRow {
    let family = match theorem {
        1 => Family::StarPathStripe { j, n },
        _ => Family::StripeC7 { j, n },
    };
    let value = formulas::value(family).unwrap_or(RamseyValue::Unknown { lower_bound: None });
    let RamseyValue::Finite(m) = value else {
        return TableRow {
            j,
            n,
            value,
            witness: WitnessCell::NotApplicable,
            search: SearchCell::NotApplicable,
        };
    };
    let witness = check_lower(theorem, j, n, m, opts);
    let p = problem(j, m, &targets_for(theorem, n)).expect("table parameters are small");
    let search = if p.shape().edge_count() > MAX_SEARCH_EDGES {
        SearchCell::Skipped { t: m }
    } else {
        match run_backend(&p, opts.backend, &opts.search, &opts.cegar) {
            Ok((outcome, nodes)) => SearchCell::Verdict {
                t: m,
                outcome: outcome.tag(),
                nodes,
            },
            Err(detail) => SearchCell::Disagree { t: m, detail },
        }
    };
    TableRow {
        j,
        n,
        value,
        witness,
        search,
    }
}

/// Rows in `j`-major order: `j = 2..=4` and `n = 2..=max_n`.
pub fn table(theorem: u8, opts: &TableOptions, mut each: impl FnMut(&TableRow, f64)) -> Vec<TableRow> {
    let mut rows = Vec::new();
    for j in 2..=4 {
        for n in 2..=opts.max_n {
            let start = Instant::now();
            let r = row(theorem, j, n, opts);
            each(&r, start.elapsed().as_secs_f64());
            rows.push(r);
        }
    }
    rows
}
