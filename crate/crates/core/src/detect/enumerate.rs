//! Enumeration of every copy of a pattern, each unordered copy exactly once.
//! Used for eager clause generation and for multi-witness blocking.

use alloc::vec::Vec;
use core::ops::ControlFlow;

use super::{above, bits, Adjacency};
use crate::pattern::TargetPattern;
use crate::shape::{EdgeId, PartitionShape};

struct Walker<'a, F> {
    host: &'a PartitionShape,
    rows: &'a [u128],
    edges: Vec<EdgeId>,
    f: F,
}

impl<F: FnMut(&[EdgeId]) -> ControlFlow<()>> Walker<'_, F> {
    fn emit(&mut self) -> ControlFlow<()> {
        (self.f)(&self.edges)
    }

    fn edge(&self, u: usize, v: usize) -> EdgeId {
        self.host.id_of(u, v).expect("adjacent vertices form a host edge")
    }

    /// Paths on `p` vertices: ordered walks with first endpoint below last.
    fn paths(&mut self, first: usize, last: usize, used: u128, left: usize) -> ControlFlow<()> {
        if left == 0 {
            return if first < last { self.emit() } else { ControlFlow::Continue(()) };
        }
        for w in bits(self.rows[last] & !used) {
            let e = self.edge(last, w);
            self.edges.push(e);
            let r = self.paths(first, w, used | 1 << w, left - 1);
            self.edges.pop();
            r?;
        }
        ControlFlow::Continue(())
    }

    /// Cycles anchored at their minimum vertex `a`; the second vertex is
    /// below the last one so each direction is seen once.
    fn cycles(&mut self, a: usize, second: usize, last: usize, used: u128, left: usize) -> ControlFlow<()> {
        if left == 0 {
            if self.rows[last] >> a & 1 == 1 && second < last {
                let e = self.edge(last, a);
                self.edges.push(e);
                let r = self.emit();
                self.edges.pop();
                return r;
            }
            return ControlFlow::Continue(());
        }
        for w in bits(self.rows[last] & !used) {
            let e = self.edge(last, w);
            self.edges.push(e);
            let r = self.cycles(a, second, w, used | 1 << w, left - 1);
            self.edges.pop();
            r?;
        }
        ControlFlow::Continue(())
    }

    fn stars(&mut self, center: usize, pool: u128, left: usize) -> ControlFlow<()> {
        if left == 0 {
            return self.emit();
        }
        for w in bits(pool) {
            let e = self.edge(center, w);
            self.edges.push(e);
            // later leaves are strictly above `w`
            let r = self.stars(center, pool & above(w), left - 1);
            self.edges.pop();
            r?;
        }
        ControlFlow::Continue(())
    }

    fn stripes(&mut self, pool: &[(usize, usize)], from: usize, used: u128, left: usize) -> ControlFlow<()> {
        if left == 0 {
            return self.emit();
        }
        for i in from..pool.len() {
            let (u, v) = pool[i];
            if used >> u & 1 == 1 || used >> v & 1 == 1 {
                continue;
            }
            let e = self.edge(u, v);
            self.edges.push(e);
            let r = self.stripes(pool, i + 1, used | 1 << u | 1 << v, left - 1);
            self.edges.pop();
            r?;
        }
        ControlFlow::Continue(())
    }
}

/// Calls `f` with the edge ids of every copy of `pat` in `adj` (a subgraph of
/// `host`), stopping early if `f` breaks.
pub fn for_each_copy<F>(host: &PartitionShape, adj: &Adjacency, pat: TargetPattern, f: F) -> ControlFlow<()>
where
    F: FnMut(&[EdgeId]) -> ControlFlow<()>,
{
    let rows = adj.rows();
    let n = rows.len();
    let mut w = Walker {
        host,
        rows,
        edges: Vec::with_capacity(pat.edge_count()),
        f,
    };
    match pat {
        TargetPattern::Path(1) => {
            for _ in 0..n {
                w.emit()?;
            }
        }
        TargetPattern::Path(p) => {
            for s in 0..n {
                w.paths(s, s, 1 << s, p - 1)?;
            }
        }
        TargetPattern::Cycle(k) => {
            for a in 0..n {
                let below = !above(a);
                for b in bits(rows[a] & !below) {
                    let e = w.edge(a, b);
                    w.edges.push(e);
                    let r = w.cycles(a, b, b, below | 1 << b, k - 2);
                    w.edges.pop();
                    r?;
                }
            }
        }
        TargetPattern::Star(1) | TargetPattern::Stripe(1) => {
            for u in 0..n {
                for v in bits(rows[u] & above(u)) {
                    let e = w.edge(u, v);
                    w.edges.push(e);
                    let r = w.emit();
                    w.edges.pop();
                    r?;
                }
            }
        }
        TargetPattern::Star(m) => {
            for c in 0..n {
                w.stars(c, rows[c], m)?;
            }
        }
        TargetPattern::Stripe(k) => {
            let mut pool = Vec::new();
            for u in 0..n {
                for v in bits(rows[u] & above(u)) {
                    pool.push((u, v));
                }
            }
            w.stripes(&pool, 0, 0, k)?;
        }
    }
    ControlFlow::Continue(())
}

/// Counts copies of `pat`, giving up (returning `None`) past `limit`.
pub fn count_copies(host: &PartitionShape, adj: &Adjacency, pat: TargetPattern, limit: usize) -> Option<usize> {
    let mut count = 0usize;
    let flow = for_each_copy(host, adj, pat, |_| {
        count += 1;
        if count > limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    match flow {
        ControlFlow::Break(()) => None,
        ControlFlow::Continue(()) => Some(count),
    }
}
