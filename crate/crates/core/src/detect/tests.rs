use super::*;
use crate::shape::PartitionShape;
use proptest::prelude::*;

fn shape(j: usize, t: usize) -> PartitionShape {
    PartitionShape::new(j, t).unwrap()
}

fn set(s: &PartitionShape, pairs: &[(usize, usize)]) -> EdgeSet {
    s.set_of_pairs(pairs.iter().copied()).unwrap()
}

#[test]
fn star_examples() {
    let k3 = shape(3, 1);
    assert!(contains_star(&k3, &k3.full_set(), 2).found());
    let k33 = shape(2, 3);
    let pm = set(&k33, &[(0, 3), (1, 4), (2, 5)]);
    assert!(!contains_star(&k33, &pm, 2).found());
    assert!(!contains_star(&k33, &k33.empty_set(), 1).found());
}

#[test]
fn path_examples() {
    let k23 = shape(2, 3).induced(0b111011);
    assert!(contains_path(&shape(2, 3), &k23, 4).found());
    // K_{1,5} inside K_{2×5}
    let s = shape(2, 5);
    let star = set(&s, &[(0, 5), (0, 6), (0, 7), (0, 8), (0, 9)]);
    assert!(!contains_path(&s, &star, 4).found());
    // triangle {0,3,6} and star centred at 1 in K_{3×3}
    let s = shape(3, 3);
    let g = set(&s, &[(0, 3), (0, 6), (3, 6), (1, 4), (1, 5), (1, 7)]);
    assert!(!contains_path(&s, &g, 4).found());
    assert!(contains_path(&s, &g, 3).found());
}

#[test]
fn p1_needs_only_a_vertex() {
    assert!(contains_path(&shape(2, 1), &shape(2, 1).empty_set(), 1).found());
    assert!(!contains_path(&shape(2, 0), &shape(2, 0).empty_set(), 1).found());
}

fn cycle_edges(s: &PartitionShape, vs: &[usize]) -> EdgeSet {
    let pairs: Vec<_> = (0..vs.len()).map(|i| (vs[i], vs[(i + 1) % vs.len()])).collect();
    set(s, &pairs)
}

#[test]
fn matching_examples() {
    let s = shape(7, 1);
    let c7 = cycle_edges(&s, &[0, 1, 2, 3, 4, 5, 6]);
    assert_eq!(matching_number(&s, &c7).size(), 3);
    let k33 = shape(2, 3);
    assert_eq!(matching_number(&k33, &k33.full_set()).size(), 3);
}

#[test]
fn matching_of_cycles() {
    for k in 3..=11 {
        let s = shape(k, 1);
        let vs: Vec<usize> = (0..k).collect();
        assert_eq!(matching_number(&s, &cycle_edges(&s, &vs)).size(), k / 2, "C{k}");
    }
}

#[test]
fn matching_of_complete_bipartite() {
    for a in 1..=5 {
        for b in 1..=5 {
            let s = shape(2, 5);
            let pairs: Vec<_> = (0..a).flat_map(|u| (0..b).map(move |v| (u, 5 + v))).collect();
            assert_eq!(matching_number(&s, &set(&s, &pairs)).size(), a.min(b));
        }
    }
}

#[test]
fn stripe_examples() {
    for n in 2..=6 {
        let s = shape(2, n - 1);
        assert!(!contains_stripe(&s, &s.full_set(), n).found());
        assert!(contains_stripe(&s, &s.full_set(), n - 1).found());
    }
    let s = shape(2, 3);
    assert!(contains_stripe(&s, &set(&s, &[(0, 3), (1, 4), (2, 5)]), 3).found());
    assert!(!contains_stripe(&s, &s.empty_set(), 1).found());
}

#[test]
fn cycle_examples() {
    // K_{t0, 3 t0} as the edges at part 0 of K_{4×2}
    let s = shape(4, 2);
    let pairs: Vec<_> = (0..2).flat_map(|u| (2..8).map(move |v| (u, v))).collect();
    assert!(!contains_cycle(&s, &set(&s, &pairs), 7).found());
    let s7 = shape(7, 1);
    let c7 = cycle_edges(&s7, &[0, 3, 1, 5, 2, 6, 4]);
    let r = contains_cycle(&s7, &c7, 7);
    assert!(r.found());
    assert!(is_copy_of(&s7, r.witness.as_ref().unwrap(), TargetPattern::Cycle(7)));
    // K_{3,2,2} inside K_{3×3}: drop one vertex from parts 1 and 2
    let s = shape(3, 3);
    let k322 = s.induced(0b011_011_111);
    assert!(contains_cycle(&s, &k322, 7).found());
    assert!(!contains_cycle(&s, &k322, 8).found());
}

#[test]
fn extends_examples() {
    let s = shape(2, 4);
    let m = set(&s, &[(0, 4), (1, 5)]);
    let e = s.id_of(2, 6).unwrap();
    assert!(extends_to_pattern(&s, &m, e, TargetPattern::Stripe(3)));
    assert!(!extends_to_pattern(&s, &s.empty_set(), e, TargetPattern::Star(2)));
    // path 0-4-1, add 1-5
    let p = set(&s, &[(0, 4), (1, 4)]);
    assert!(extends_to_pattern(&s, &p, s.id_of(1, 5).unwrap(), TargetPattern::Path(4)));
}

#[test]
fn observation_report_format() {
    let r = check_observation1();
    let text = alloc::string::ToString::to_string(&r);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("host K2,3: edges=6 subsets=64 "));
    assert!(lines[1].starts_with("host K4-e: edges=5 subsets=32 "));
    assert!(lines[1].ends_with("neither=0"));
    assert_eq!(lines[2], "PASS");
}

// ---------------------------------------------------------------------------
// Brute-force oracles

/// All edge subsets of size `k` of `ids`.
fn k_subsets(ids: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(ids: &[usize], k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..ids.len() {
            cur.push(ids[i]);
            go(ids, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(ids, k, 0, &mut cur, &mut out);
    out
}

/// Containment by trying every edge subset of the pattern's size and
/// checking its degree/connectivity structure.
fn brute_contains(s: &PartitionShape, edges: &EdgeSet, pat: TargetPattern) -> bool {
    if let TargetPattern::Path(1) = pat {
        return s.vertex_count() > 0;
    }
    let ids: Vec<usize> = edges.iter().collect();
    k_subsets(&ids, pat.edge_count())
        .iter()
        .any(|sub| is_copy_of(s, sub, pat))
}

fn brute_matching(s: &PartitionShape, edges: &EdgeSet) -> usize {
    let ids: Vec<usize> = edges.iter().collect();
    let mut best = 0;
    for mask in 0u32..(1 << ids.len()) {
        let mut used = 0u128;
        let mut ok = true;
        for (i, &e) in ids.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let (u, v) = s.endpoints(e);
                if used >> u & 1 == 1 || used >> v & 1 == 1 {
                    ok = false;
                    break;
                }
                used |= 1 << u | 1 << v;
            }
        }
        if ok {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

fn edges_strategy(max_edges: usize) -> impl Strategy<Value = (PartitionShape, EdgeSet)> {
    // hosts up to 8 vertices
    (1usize..=8, 1usize..=8)
        .prop_filter("at most 8 vertices", |(j, t)| j * t <= 8)
        .prop_flat_map(move |(j, t)| {
            let s = shape(j, t);
            let m = s.edge_count();
            (Just(s), proptest::collection::vec(0..m.max(1), 0..=max_edges.min(m)))
        })
        .prop_map(|(s, ids)| {
            let m = s.edge_count();
            let set = EdgeSet::from_ids(m, ids.into_iter().filter(|&e| e < m));
            (s, set)
        })
}

fn pattern_strategy() -> impl Strategy<Value = TargetPattern> {
    prop_oneof![
        (1usize..=4).prop_map(TargetPattern::Star),
        (1usize..=6).prop_map(TargetPattern::Path),
        (1usize..=4).prop_map(TargetPattern::Stripe),
        (3usize..=7).prop_map(TargetPattern::Cycle),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn detectors_match_brute_force((s, g) in edges_strategy(14), pat in pattern_strategy()) {
        let r = contains(&s, &g, pat);
        prop_assert_eq!(r.found(), brute_contains(&s, &g, pat));
        if let Some(w) = &r.witness {
            prop_assert!(w.iter().all(|&e| g.contains(e)));
            prop_assert!(is_copy_of(&s, w, pat) || pat == TargetPattern::Path(1));
        }
    }

    #[test]
    fn blossom_matches_exhaustive((s, g) in edges_strategy(12)) {
        let m = matching_number(&s, &g);
        prop_assert_eq!(m.size(), brute_matching(&s, &g));
        prop_assert!(is_copy_of(&s, &m.edges, TargetPattern::Stripe(m.size())) || m.size() == 0);
    }

    #[test]
    fn monotone((s, g) in edges_strategy(14), extra in proptest::collection::vec(0usize..64, 0..6), pat in pattern_strategy()) {
        let m = s.edge_count();
        let bigger = g.union(&EdgeSet::from_ids(m, extra.into_iter().filter(|&e| e < m)));
        if contains(&s, &g, pat).found() {
            prop_assert!(contains(&s, &bigger, pat).found());
        }
    }

    #[test]
    fn incremental_agrees_from_pattern_free((s, g) in edges_strategy(14), pat in pattern_strategy(), pick in 0usize..64) {
        let free: Vec<usize> = (0..s.edge_count()).filter(|&e| !g.contains(e)).collect();
        prop_assume!(!free.is_empty());
        prop_assume!(!contains(&s, &g, pat).found());
        let e = free[pick % free.len()];
        let mut with = g.clone();
        with.insert(e);
        prop_assert_eq!(extends_to_pattern(&s, &g, e, pat), contains(&s, &with, pat).found());
    }

    #[test]
    fn enumeration_count_matches_brute((s, g) in edges_strategy(10), pat in pattern_strategy()) {
        prop_assume!(pat != TargetPattern::Path(1));
        let ids: Vec<usize> = g.iter().collect();
        let brute = k_subsets(&ids, pat.edge_count()).iter().filter(|sub| is_copy_of(&s, sub, pat)).count();
        let adj = Adjacency::from_set(&s, &g);
        prop_assert_eq!(count_copies(&s, &adj, pat, usize::MAX), Some(brute));
    }
}

/// Connected graphs on at most 6 vertices without a `P_4` are exactly the
/// stars and the triangle.
#[test]
fn p4_free_connected_graphs() {
    let s = shape(6, 1);
    let m = s.edge_count();
    for mask in 0u32..(1 << m) {
        let g = EdgeSet::from_ids(m, (0..m).filter(|&e| mask >> e & 1 == 1));
        if g.is_empty() {
            continue;
        }
        let adj = Adjacency::from_set(&s, &g);
        let touched: Vec<usize> = (0..6).filter(|&v| adj.degree(v) > 0).collect();
        // connectivity over the touched vertices
        let mut seen = 1u128 << touched[0];
        loop {
            let next = bits(seen).fold(seen, |acc, v| acc | adj.neighbors(v));
            if next == seen {
                break;
            }
            seen = next;
        }
        if seen.count_ones() as usize != touched.len() {
            continue;
        }
        let is_star = touched.iter().any(|&c| adj.degree(c) == g.len());
        let is_triangle = g.len() == 3 && touched.len() == 3;
        assert_eq!(
            !brute_contains(&s, &g, TargetPattern::Path(4)),
            is_star || is_triangle,
            "mask {mask:#x}"
        );
    }
}
