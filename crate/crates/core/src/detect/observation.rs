//! Exhaustive check that every subgraph `H` of `K_{2,3}` and of `K_4 - e`
//! contains `K_{1,2}`, or its complement inside the host contains `P_4`.

use alloc::vec::Vec;
use core::fmt;

use super::{contains_path, contains_star};
use crate::edgeset::EdgeSet;
use crate::shape::PartitionShape;

/// Branch counts over all edge subsets of one host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HostTally {
    pub name: &'static str,
    pub edges: usize,
    pub subsets: usize,
    pub star_only: usize,
    pub path_only: usize,
    pub both: usize,
    pub neither: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationReport {
    pub hosts: Vec<HostTally>,
}

impl ObservationReport {
    pub fn passed(&self) -> bool {
        self.hosts.iter().all(|h| h.neither == 0)
    }
}

impl fmt::Display for ObservationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for h in &self.hosts {
            writeln!(
                f,
                "host {}: edges={} subsets={} star_only={} path_only={} both={} neither={}",
                h.name, h.edges, h.subsets, h.star_only, h.path_only, h.both, h.neither
            )?;
        }
        writeln!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// `(H contains K_{1,2}, host - H contains P_4)`. `H` must be a subset of
/// `host_edges`.
pub fn observation_branches(shape: &PartitionShape, host_edges: &EdgeSet, h: &EdgeSet) -> (bool, bool) {
    debug_assert!(h.is_subset(host_edges));
    let rest = host_edges.difference(h);
    (
        contains_star(shape, h, 2).found(),
        contains_path(shape, &rest, 4).found(),
    )
}

/// The two hosts as induced subgraphs of uniform shapes: `K_{2,3}` is
/// `K_{2×3}` minus vertex 2, and `K_4 - e` is `K_{3×2}` on `{0, 1, 2, 4}`
/// (the missing edge is `0-1`, inside part 0).
pub fn observation_hosts() -> [(&'static str, PartitionShape, EdgeSet); 2] {
    let k33 = PartitionShape::new(2, 3).expect("small shape");
    let k23 = k33.induced(0b111011);
    let k3x2 = PartitionShape::new(3, 2).expect("small shape");
    let k4e = k3x2.induced(0b10111);
    [("K2,3", k33, k23), ("K4-e", k3x2, k4e)]
}

fn tally(name: &'static str, shape: &PartitionShape, host_edges: &EdgeSet) -> HostTally {
    let ids: Vec<usize> = host_edges.iter().collect();
    let mut t = HostTally {
        name,
        edges: ids.len(),
        subsets: 0,
        star_only: 0,
        path_only: 0,
        both: 0,
        neither: 0,
    };
    for mask in 0u32..(1 << ids.len()) {
        let h = EdgeSet::from_ids(
            shape.edge_count(),
            ids.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e),
        );
        t.subsets += 1;
        match observation_branches(shape, host_edges, &h) {
            (true, true) => t.both += 1,
            (true, false) => t.star_only += 1,
            (false, true) => t.path_only += 1,
            (false, false) => t.neither += 1,
        }
    }
    t
}

pub fn check_observation1() -> ObservationReport {
    ObservationReport {
        hosts: observation_hosts()
            .iter()
            .map(|(name, shape, edges)| tally(name, shape, edges))
            .collect(),
    }
}
