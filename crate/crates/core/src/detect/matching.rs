//! Maximum matching in general graphs by augmenting paths with blossom
//! contraction (Edmonds).

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::Adjacency;

const NONE: usize = usize::MAX;

/// `mate[v]` is the partner of `v`, or `None` when `v` is exposed.
pub type Mates = Vec<Option<usize>>;

struct Forest<'a> {
    adj: &'a [u128],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Forest<'_> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Grows an alternating tree from `root`; returns the exposed endpoint of
    /// an augmenting path if one exists.
    fn search(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            let mut nbrs = self.adj[v];
            while nbrs != 0 {
                let to = nbrs.trailing_zeros() as usize;
                nbrs &= nbrs - 1;
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    self.used[self.mate[to]] = true;
                    self.queue.push_back(self.mate[to]);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}

fn forest<'a>(adj: &'a [u128], mate: &[Option<usize>]) -> Forest<'a> {
    let n = adj.len();
    Forest {
        adj,
        mate: mate.iter().map(|m| m.unwrap_or(NONE)).collect(),
        parent: vec![NONE; n],
        base: (0..n).collect(),
        used: vec![false; n],
        blossom: vec![false; n],
        queue: VecDeque::with_capacity(n),
    }
}

fn export(mate: &[usize]) -> Mates {
    mate.iter().map(|&m| (m != NONE).then_some(m)).collect()
}

/// Maximum matching of the graph, as a mate array.
pub fn maximum_matching(adj: &Adjacency) -> Mates {
    let rows = adj.rows();
    let n = rows.len();
    // greedy start
    let mut start: Mates = vec![None; n];
    for u in 0..n {
        if start[u].is_some() {
            continue;
        }
        let mut nbrs = rows[u];
        while nbrs != 0 {
            let v = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            if start[v].is_none() && v != u {
                start[u] = Some(v);
                start[v] = Some(u);
                break;
            }
        }
    }
    let mut f = forest(rows, &start);
    for root in 0..n {
        if f.mate[root] == NONE && rows[root] != 0 {
            if let Some(end) = f.search(root) {
                f.augment(end);
            }
        }
    }
    export(&f.mate)
}

/// Tries to enlarge `mate` (a valid matching of `adj`) by one augmenting
/// path. Returns whether it grew.
pub fn augment_once(adj: &[u128], mate: &mut Mates) -> bool {
    let mut f = forest(adj, mate);
    for root in 0..adj.len() {
        if f.mate[root] == NONE && adj[root] != 0 {
            if let Some(end) = f.search(root) {
                f.augment(end);
                *mate = export(&f.mate);
                return true;
            }
        }
    }
    false
}

/// Number of matched pairs.
pub fn matching_size(mate: &[Option<usize>]) -> usize {
    mate.iter().filter(|m| m.is_some()).count() / 2
}

/// Matched pairs `(u, v)` with `u < v`, in increasing order.
pub fn matched_pairs(mate: &[Option<usize>]) -> Vec<(usize, usize)> {
    mate.iter()
        .enumerate()
        .filter_map(|(u, m)| m.filter(|&v| u < v).map(|v| (u, v)))
        .collect()
}
