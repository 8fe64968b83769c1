//! Deterministic constructors for named graph families and seeded random
//! instances for property testing. Every random generator is a pure
//! function of its sizes and the seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::builders::{Arc, ArcFamily, Chord, ChordFamily, Turn};
use crate::graph::{find_hole, BipartiteGraph, Vertex};
use crate::rep::{Event, StickRepresentation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("size must be at least 1")]
    SizeZero,
    #[error("cycle length must be even and at least 4, got {0}")]
    BadCycleLength(usize),
    #[error("the J_k family needs k >= 3, got {0}")]
    JkTooSmall(usize),
}

/// Path on `k` vertices, starting on the A side: `A1 - B1 - A2 - ...`.
pub fn gen_path(k: usize) -> Result<BipartiteGraph, GenError> {
    if k == 0 {
        return Err(GenError::SizeZero);
    }
    let n = k.div_ceil(2);
    let m = k / 2;
    let mut edges = Vec::new();
    for p in 1..k {
        // Positions alternate A, B, A, ...; the edge joins p and p + 1.
        let (odd, even) = if p % 2 == 1 { (p, p + 1) } else { (p + 1, p) };
        edges.push(((odd + 1) / 2, even / 2));
    }
    Ok(BipartiteGraph::new(n, m, edges).expect("path indices in range"))
}

/// Cycle on `total` vertices (even, at least 4): edges `A_i B_i` and
/// `A_{i+1} B_i` cyclically.
pub fn gen_even_cycle(total: usize) -> Result<BipartiteGraph, GenError> {
    if total < 4 || total % 2 != 0 {
        return Err(GenError::BadCycleLength(total));
    }
    let k = total / 2;
    let mut edges = Vec::new();
    for i in 1..=k {
        edges.push((i, i));
        edges.push((i % k + 1, i));
    }
    Ok(BipartiteGraph::new(k, k, edges).expect("cycle indices in range"))
}

/// Random tree on `n_total` vertices by uniform attachment; the
/// bipartition follows depth parity (even depth on the A side).
pub fn gen_random_tree(n_total: usize, seed: u64) -> Result<BipartiteGraph, GenError> {
    if n_total == 0 {
        return Err(GenError::SizeZero);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut depth = vec![0usize; n_total];
    let mut parent = vec![0usize; n_total];
    for v in 1..n_total {
        let p = rng.random_range(0..v);
        parent[v] = p;
        depth[v] = depth[p] + 1;
    }
    // Number each side in vertex order.
    let mut index = vec![0usize; n_total];
    let mut n = 0;
    let mut m = 0;
    for v in 0..n_total {
        if depth[v] % 2 == 0 {
            n += 1;
            index[v] = n;
        } else {
            m += 1;
            index[v] = m;
        }
    }
    let mut edges = Vec::new();
    for v in 1..n_total {
        let p = parent[v];
        let (a, b) = if depth[v] % 2 == 0 { (v, p) } else { (p, v) };
        edges.push((index[a], index[b]));
    }
    Ok(BipartiteGraph::new(n, m, edges).expect("tree indices in range"))
}

/// The family `J_k` (any `k >= 3`): `2k` vertices per side with edges
/// `A_i B_i`, `A_i B_{i+1}` and `A_i B_{i+k}`, indices cyclic. The
/// construction double-checks the defining neighborhood identities for
/// every consecutive pair and panics if they break.
pub fn gen_jk(k: usize) -> Result<BipartiteGraph, GenError> {
    if k < 3 {
        return Err(GenError::JkTooSmall(k));
    }
    let size = 2 * k;
    let wrap = |x: usize| (x - 1) % size + 1;
    let mut edges = Vec::new();
    for i in 1..=size {
        for d in [0, 1, k] {
            edges.push((i, wrap(i + d)));
        }
    }
    let g = BipartiteGraph::new(size, size, edges).expect("jk indices in range");

    for t in 1..=size {
        let v = wrap(t + 1);
        let nt = g.a_neighbors(t);
        let nv = g.a_neighbors(v);
        let b1: Vec<usize> = nt.difference(&nv).copied().collect();
        let b2: Vec<usize> = nt.intersection(&nv).copied().collect();
        let mut expected_b1 = vec![wrap(t + k), t];
        expected_b1.sort_unstable();
        assert_eq!(b1, expected_b1, "J_{k}: exclusive neighborhood identity broke at t={t}");
        assert_eq!(b2, vec![wrap(t + 1)], "J_{k}: common neighborhood identity broke at t={t}");
    }
    Ok(g)
}

/// The 2-pyramid: two apex vertices adjacent to everything on the other
/// side, a hub `B5` over `A1..A4`, and pendant pairs `B_i - A_i`,
/// `B_i - A'_i`. Hole-free but not a Stick graph.
///
/// Numbering: `A1` is the A-apex, `A2..A5` are `A_1..A_4`, `A6..A9` are
/// `A'_1..A'_4`; `B1` is the B-apex, `B2..B5` are `B_1..B_4`, `B6` is
/// `B5`. The constructor re-checks its structural assertions (hole-free;
/// apex removal leaves a tree; pendant pairs share a common neighbor) and
/// panics if any fails.
pub fn gen_py2() -> BipartiteGraph {
    let mut edges = Vec::new();
    for i in 1..=9 {
        edges.push((i, 1));
    }
    for j in 2..=6 {
        edges.push((1, j));
    }
    for i in 1..=4usize {
        edges.push((i + 1, 6));
        edges.push((i + 1, i + 1));
        edges.push((i + 5, i + 1));
    }
    let g = BipartiteGraph::new(9, 6, edges).expect("py2 indices in range");
    assert_eq!(g.edge_count(), 26);

    assert!(find_hole(&g).is_none(), "the 2-pyramid must be hole-free");

    // Deleting both apexes leaves a tree on the remaining 13 vertices.
    let rest_edges: Vec<(usize, usize)> = g
        .edges()
        .filter(|&(i, j)| i != 1 && j != 1)
        .map(|(i, j)| (i - 1, j - 1))
        .collect();
    let rest = BipartiteGraph::new(8, 5, rest_edges).expect("shifted indices in range");
    assert_eq!(rest.edge_count(), 12);
    assert_eq!(
        rest.connected_components().len(),
        1,
        "apex removal must leave a connected graph"
    );

    // Every pair among A'_1..A'_4 and among B_1..B_4 shares a neighbor.
    for group in [[Vertex::A(6), Vertex::A(7), Vertex::A(8), Vertex::A(9)],
                  [Vertex::B(2), Vertex::B(3), Vertex::B(4), Vertex::B(5)]] {
        for (xi, &x) in group.iter().enumerate() {
            for &y in group.iter().skip(xi + 1) {
                let nx = g.neighbors(x);
                let common = g.neighbors(y).iter().any(|w| nx.contains(w));
                assert!(common, "{x} and {y} must share a neighbor");
            }
        }
    }
    g
}

/// Random interval bigraph: `n + m` intervals with distinct integer
/// endpoints; edge iff the `i`-th A-interval and `j`-th B-interval
/// intersect (containment counts).
pub fn gen_random_interval_bigraph(n: usize, m: usize, seed: u64) -> BipartiteGraph {
    let total = n + m;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<i64> = (0..4 * total as i64).collect();
    pool.shuffle(&mut rng);
    let intervals: Vec<(i64, i64)> = (0..total)
        .map(|k| {
            let (x, y) = (pool[2 * k], pool[2 * k + 1]);
            (x.min(y), x.max(y))
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..m {
            let (l1, r1) = intervals[i];
            let (l2, r2) = intervals[n + j];
            if l1.max(l2) < r1.min(r2) {
                edges.push((i + 1, j + 1));
            }
        }
    }
    BipartiteGraph::new(n, m, edges).expect("interval indices in range")
}

/// Random bipartite permutation graph: `n + m` segments spanning two
/// parallel lines at distinct abscissas; edge iff an A-segment and a
/// B-segment cross.
pub fn gen_random_bipartite_permutation(n: usize, m: usize, seed: u64) -> BipartiteGraph {
    let total = n + m;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut top: Vec<i64> = (0..total as i64).collect();
    let mut bottom: Vec<i64> = (0..total as i64).collect();
    top.shuffle(&mut rng);
    bottom.shuffle(&mut rng);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..m {
            let crosses = (top[i] - top[n + j]) * (bottom[i] - bottom[n + j]) < 0;
            if crosses {
                edges.push((i + 1, j + 1));
            }
        }
    }
    BipartiteGraph::new(n, m, edges).expect("segment indices in range")
}

const TURN_DENOMINATOR: i128 = 10_000;

fn sample_distinct_turns(
    rng: &mut ChaCha8Rng,
    count: usize,
    lo: i128,
    hi: i128,
    used: &mut std::collections::BTreeSet<i128>,
) -> Vec<Turn> {
    assert!(hi - lo > 2 * count as i128, "sampling window too small");
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v = rng.random_range(lo + 1..hi);
        if used.insert(v) {
            out.push(Turn::new(v, TURN_DENOMINATOR));
        }
    }
    out
}

/// Random valid two-clique arc family with `n_s` S-arcs and `n_t` T-arcs:
/// endpoints are sampled into the legal windows, so the family always
/// validates.
pub fn gen_random_arc_family(n_s: usize, n_t: usize, seed: u64) -> ArcFamily {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used = std::collections::BTreeSet::new();
    let d = TURN_DENOMINATOR;
    // Window (1/4, 1/2) holds S-starts and T-ends; (3/4, 1) the rest.
    let s_starts = sample_distinct_turns(&mut rng, n_s, d / 4, d / 2, &mut used);
    let t_ends = sample_distinct_turns(&mut rng, n_t, d / 4, d / 2, &mut used);
    let s_ends = sample_distinct_turns(&mut rng, n_s, 3 * d / 4, d, &mut used);
    let t_starts = sample_distinct_turns(&mut rng, n_t, 3 * d / 4, d, &mut used);
    ArcFamily {
        s_arcs: (0..n_s)
            .map(|k| Arc { id: k + 1, start: s_starts[k], end: s_ends[k] })
            .collect(),
        t_arcs: (0..n_t)
            .map(|k| Arc { id: k + 1, start: t_starts[k], end: t_ends[k] })
            .collect(),
    }
}

/// Random crossing-chord family whose crossing graph is bipartite by
/// construction: the chords form two laminar chains (chords of one chain
/// pairwise non-crossing), with random positions, random chain sizes and
/// shuffled ids.
pub fn gen_random_chord_family(count: usize, seed: u64) -> ChordFamily {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used = std::collections::BTreeSet::new();
    let d = TURN_DENOMINATOR;
    let bottoms = sample_distinct_turns(&mut rng, count, 0, d / 2, &mut used);
    let tops = sample_distinct_turns(&mut rng, count, d / 2, d, &mut used);

    let chain_a = if count == 0 { 0 } else { rng.random_range(0..=count) };
    let mut picks: Vec<usize> = (0..count).collect();
    picks.shuffle(&mut rng);
    let mut ids: Vec<usize> = (1..=count).collect();
    ids.shuffle(&mut rng);

    // Within a chain, pair ascending tops with descending bottoms: such
    // chords are pairwise non-crossing.
    let mut chords = Vec::with_capacity(count);
    for (chain_members, id_slice) in [
        (&picks[..chain_a], &ids[..chain_a]),
        (&picks[chain_a..], &ids[chain_a..]),
    ] {
        let mut chain_tops: Vec<Turn> = chain_members.iter().map(|&k| tops[k]).collect();
        let mut chain_bottoms: Vec<Turn> = chain_members.iter().map(|&k| bottoms[k]).collect();
        chain_tops.sort();
        chain_bottoms.sort_by(|a, b| b.cmp(a));
        for (pos, (&top, &bottom)) in chain_tops.iter().zip(&chain_bottoms).enumerate() {
            chords.push(Chord { id: id_slice[pos], e1: top, e2: bottom });
        }
    }
    chords.sort_by_key(|c| c.id);
    ChordFamily { chords }
}

/// Random well-formed event sequence on `n + m` vertices: a uniform
/// shuffle of all events, corrected so each A-tip precedes its origin
/// and each B-origin precedes its tip.
pub fn gen_random_representation(n: usize, m: usize, seed: u64) -> StickRepresentation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut events = Vec::with_capacity(2 * (n + m));
    for i in 1..=n {
        events.push(Event::ATip(i));
        events.push(Event::AOrigin(i));
    }
    for j in 1..=m {
        events.push(Event::BOrigin(j));
        events.push(Event::BTip(j));
    }
    events.shuffle(&mut rng);

    let mut first = std::collections::BTreeMap::new();
    for k in 0..events.len() {
        let (vertex, wants_first) = match events[k] {
            Event::ATip(i) => (Vertex::A(i), true),
            Event::AOrigin(i) => (Vertex::A(i), false),
            Event::BOrigin(j) => (Vertex::B(j), true),
            Event::BTip(j) => (Vertex::B(j), false),
        };
        match first.get(&vertex) {
            None => {
                first.insert(vertex, k);
            }
            Some(&earlier) => {
                if wants_first {
                    events.swap(earlier, k);
                }
            }
        }
    }
    StickRepresentation::new(events).expect("swapped events are well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{chords_to_stick, validate_arc_family};
    use crate::rep::validate_representation;

    #[test]
    fn path_examples() {
        let p3 = gen_path(3).unwrap();
        assert_eq!((p3.a_count(), p3.b_count()), (2, 1));
        assert_eq!(p3.edges().collect::<Vec<_>>(), vec![(1, 1), (2, 1)]);
        assert_eq!(gen_path(0).unwrap_err(), GenError::SizeZero);
        assert_eq!(gen_path(1).unwrap().edge_count(), 0);
    }

    #[test]
    fn cycle_examples() {
        let c6 = gen_even_cycle(6).unwrap();
        assert_eq!((c6.a_count(), c6.b_count()), (3, 3));
        assert_eq!(c6.edge_count(), 6);
        // Every vertex has degree two.
        for v in c6.vertices() {
            assert_eq!(c6.neighbors(v).len(), 2);
        }
        assert!(gen_even_cycle(5).is_err());
        assert!(gen_even_cycle(2).is_err());
    }

    #[test]
    fn trees_are_deterministic_and_acyclic() {
        let t1 = gen_random_tree(7, 1).unwrap();
        let t2 = gen_random_tree(7, 1).unwrap();
        assert_eq!(t1, t2);
        assert_eq!(t1.a_count() + t1.b_count(), 7);
        assert_eq!(t1.edge_count(), 6);
        assert_eq!(t1.connected_components().len(), 1);
        assert!(find_hole(&t1).is_none());
    }

    #[test]
    fn jk_counts_and_identities() {
        let j3 = gen_jk(3).unwrap();
        assert_eq!((j3.a_count(), j3.b_count()), (6, 6));
        assert_eq!(j3.edge_count(), 18);
        let p = crate::structure::partition_neighborhoods(&j3, 2, 1).unwrap();
        assert_eq!(p.b1.iter().copied().collect::<Vec<_>>(), vec![1, 4]);
        assert_eq!(p.b2.iter().copied().collect::<Vec<_>>(), vec![2]);

        // Identities hold for larger k, including even k.
        gen_jk(5).unwrap();
        gen_jk(4).unwrap();
        gen_jk(7).unwrap();
        assert!(gen_jk(2).is_err());
    }

    #[test]
    fn py2_shape() {
        let g = gen_py2();
        assert_eq!((g.a_count(), g.b_count()), (9, 6));
        assert_eq!(g.edge_count(), 26);
        assert!(find_hole(&g).is_none());
    }

    #[test]
    fn interval_bigraph_examples() {
        // Deterministic in the seed.
        assert_eq!(
            gen_random_interval_bigraph(4, 4, 9),
            gen_random_interval_bigraph(4, 4, 9)
        );
    }

    #[test]
    fn interval_intersection_rule() {
        // A = [0, 2], B = [1, 3] intersect; [0, 1] and [2, 3] do not;
        // containment counts as intersection.
        let cases = [
            ((0i64, 2i64), (1i64, 3i64), true),
            ((0, 1), (2, 3), false),
            ((0, 5), (1, 2), true),
        ];
        for ((l1, r1), (l2, r2), want) in cases {
            assert_eq!(l1.max(l2) < r1.min(r2), want);
        }
    }

    #[test]
    fn bipartite_permutation_examples() {
        assert_eq!(
            gen_random_bipartite_permutation(3, 3, 4),
            gen_random_bipartite_permutation(3, 3, 4)
        );
        // Crossing segments make an edge: top 1->bottom 2 vs top 2->bottom 1.
        assert!((1i64 - 2) * (2i64 - 1) < 0);
        // Parallel segments do not.
        assert!((1i64 - 2) * (1i64 - 2) >= 0);
    }

    #[test]
    fn random_arc_families_validate() {
        for seed in 0..20 {
            let fam = gen_random_arc_family(3, 4, seed);
            assert!(validate_arc_family(&fam).is_ok(), "seed {seed}");
        }
        let empty = gen_random_arc_family(0, 0, 0);
        assert!(validate_arc_family(&empty).is_ok());
    }

    #[test]
    fn random_chord_families_build() {
        for seed in 0..20 {
            let fam = gen_random_chord_family(6, seed);
            assert_eq!(fam.chords.len(), 6);
            chords_to_stick(&fam).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        }
        assert_eq!(gen_random_chord_family(0, 0).chords.len(), 0);
    }

    #[test]
    fn random_representations_are_well_formed_and_deterministic() {
        for seed in 0..20 {
            let rep = gen_random_representation(3, 4, seed);
            assert_eq!(rep.len(), 14);
            let g = rep.induced_graph();
            assert!(validate_representation(&rep, &g).is_ok());
        }
        assert_eq!(
            gen_random_representation(3, 4, 7),
            gen_random_representation(3, 4, 7)
        );
    }
}
