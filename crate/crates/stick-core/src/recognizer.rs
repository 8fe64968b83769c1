//! Exact Stick recognition for small graphs.
//!
//! The search runs over orders of the `n + m` *origins* only: once the
//! origin order is fixed, tips can be placed greedily. Every edge `(i, j)`
//! forces `T(a_i)` left of `b_j` and `T(b_j)` right of `a_i`, so the
//! extremal placement — each A-tip immediately left of its leftmost
//! neighbor origin, each B-tip immediately right of its rightmost neighbor
//! origin — satisfies all edges whenever any placement does. A non-edge
//! constraint only ever benefits from pushing A-tips right and B-tips
//! left, so the extremal placement also breaks every non-edge pattern that
//! any placement can break. [`greedy_tips`] therefore succeeds on an
//! origin order iff some valid tip placement exists; that equivalence is
//! exercised exhaustively in the test suite rather than taken on faith.
//!
//! [`recognize`] explores origin orders depth first, pruning orders where
//! an A-origin would precede one of its neighbor origins and orders where
//! the non-edge check above already fails on the placed prefix.

use thiserror::Error;

use crate::graph::{BipartiteGraph, Vertex};
use crate::rep::{Event, StickRepresentation};

/// Node limit for the backtracking search. One node is one attempt to
/// extend a partial origin order by one origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl SearchBudget {
    pub fn new(max_nodes: u64) -> Self {
        Self { max_nodes: max_nodes.max(1) }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { max_nodes: 10_000_000 }
    }
}

/// Verdict of a recognition run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecognitionResult {
    /// A representation was found; it validates against the input graph.
    Stick(StickRepresentation),
    /// The full search space was exhausted without finding one.
    NotStick,
    /// The node budget ran out first.
    Unknown { nodes_spent: u64 },
}

impl RecognitionResult {
    pub fn is_stick(&self) -> bool {
        matches!(self, RecognitionResult::Stick(_))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RecognizerError {
    #[error("origin order must contain each of the {expected} origins exactly once")]
    NotAPermutation { expected: usize },
    #[error("graph too large: {0} vertices on one side, limit is 64")]
    SideTooLarge(usize),
    #[error("exhaustive recognition is capped at n + m <= {cap}, got {got}")]
    TooLarge { cap: usize, got: usize },
}

/// Greedily place tips for a fixed order of all `n + m` origins.
///
/// Returns a representation iff one exists with this origin order:
/// every edge must already have its B-origin before its A-origin, each
/// A-tip goes immediately left of the vertex's leftmost neighbor origin
/// (left of its own origin when isolated), each B-tip immediately right
/// of the rightmost neighbor origin, and the non-edges are then checked
/// against the overlap pattern. Tips anchored to the same origin are
/// emitted by ascending index.
pub fn greedy_tips(
    order: &[Vertex],
    g: &BipartiteGraph,
) -> Result<Option<StickRepresentation>, RecognizerError> {
    let n = g.a_count();
    let m = g.b_count();
    let total = n + m;
    if order.len() != total {
        return Err(RecognizerError::NotAPermutation { expected: total });
    }

    const UNSET: usize = usize::MAX;
    let mut pos_a = vec![UNSET; n + 1];
    let mut pos_b = vec![UNSET; m + 1];
    for (p, &v) in order.iter().enumerate() {
        match v {
            Vertex::A(i) => {
                if i < 1 || i > n || pos_a[i] != UNSET {
                    return Err(RecognizerError::NotAPermutation { expected: total });
                }
                pos_a[i] = p;
            }
            Vertex::B(j) => {
                if j < 1 || j > m || pos_b[j] != UNSET {
                    return Err(RecognizerError::NotAPermutation { expected: total });
                }
                pos_b[j] = p;
            }
        }
    }

    // Every edge needs its B-origin strictly left of its A-origin.
    for (i, j) in g.edges() {
        if pos_b[j] > pos_a[i] {
            return Ok(None);
        }
    }

    // leftmost[i]: position of A_i's leftmost neighbor origin;
    // rightmost[j]: position of B_j's rightmost neighbor origin.
    let mut leftmost = vec![UNSET; n + 1];
    let mut rightmost = vec![0usize; m + 1];
    for i in 1..=n {
        leftmost[i] = g
            .a_neighbors(i)
            .iter()
            .map(|&j| pos_b[j])
            .min()
            .unwrap_or(pos_a[i]);
    }
    for j in 1..=m {
        rightmost[j] = g
            .b_neighbors(j)
            .iter()
            .map(|&i| pos_a[i])
            .max()
            .unwrap_or(pos_b[j]);
    }

    // A non-edge would overlap iff its B-origin sits between T(a_i) and
    // a_i while a_i sits before T(b_j); with the extremal tips that is
    // exactly the condition below.
    for i in 1..=n {
        for j in 1..=m {
            if g.has_edge(i, j) {
                continue;
            }
            if pos_b[j] < pos_a[i] && leftmost[i] <= pos_b[j] && pos_a[i] <= rightmost[j] {
                return Ok(None);
            }
        }
    }

    // Gap k sits between origins k-1 and k. B-tips hug the origin they
    // follow and therefore precede the A-tips hugging the next origin;
    // ties inside each group break by index.
    let mut before: Vec<Vec<usize>> = vec![Vec::new(); total + 1];
    let mut after: Vec<Vec<usize>> = vec![Vec::new(); total + 1];
    for i in 1..=n {
        before[leftmost[i]].push(i);
    }
    for j in 1..=m {
        after[rightmost[j]].push(j);
    }
    let mut events = Vec::with_capacity(2 * total);
    for (k, &origin) in order.iter().enumerate() {
        events.extend(before[k].iter().map(|&i| Event::ATip(i)));
        events.push(match origin {
            Vertex::A(i) => Event::AOrigin(i),
            Vertex::B(j) => Event::BOrigin(j),
        });
        events.extend(after[k].iter().map(|&j| Event::BTip(j)));
    }

    let rep = StickRepresentation::new(events).expect("greedy placement is well-formed");
    debug_assert!(crate::rep::validate_representation(&rep, g).is_ok());
    Ok(Some(rep))
}

/// Decide whether `g` has a Stick representation by depth-first search
/// over origin orders, within the given node budget.
pub fn recognize(g: &BipartiteGraph, budget: SearchBudget) -> RecognitionResult {
    let n = g.a_count();
    let m = g.b_count();
    assert!(n <= 64 && m <= 64, "recognizer is limited to 64 vertices per side");

    let mut search = Search {
        g,
        n,
        m,
        a_adj: (0..=n)
            .map(|i| {
                if i == 0 {
                    0
                } else {
                    g.a_neighbors(i).iter().fold(0u64, |acc, &j| acc | 1 << (j - 1))
                }
            })
            .collect(),
        b_adj: (0..=m)
            .map(|j| {
                if j == 0 {
                    0
                } else {
                    g.b_neighbors(j).iter().fold(0u64, |acc, &i| acc | 1 << (i - 1))
                }
            })
            .collect(),
        order: Vec::with_capacity(n + m),
        pos_a: vec![usize::MAX; n + 1],
        pos_b: vec![usize::MAX; m + 1],
        placed_b: 0,
        missing: (0..=n).map(|i| if i == 0 { 0 } else { g.a_neighbors(i).len() as u32 }).collect(),
        leftmost: vec![usize::MAX; n + 1],
        pending: vec![0u32; m + 1],
        nodes: 0,
        max_nodes: budget.max_nodes,
    };

    match search.dfs() {
        Outcome::Found(rep) => RecognitionResult::Stick(rep),
        Outcome::Exhausted => RecognitionResult::NotStick,
        Outcome::OutOfBudget => RecognitionResult::Unknown { nodes_spent: search.nodes },
    }
}

enum Outcome {
    Found(StickRepresentation),
    Exhausted,
    OutOfBudget,
}

struct Search<'g> {
    g: &'g BipartiteGraph,
    n: usize,
    m: usize,
    a_adj: Vec<u64>,
    b_adj: Vec<u64>,
    order: Vec<Vertex>,
    pos_a: Vec<usize>,
    pos_b: Vec<usize>,
    placed_b: u64,
    /// Unplaced B-neighbors per A-vertex; an A-origin may be placed only
    /// once this hits zero.
    missing: Vec<u32>,
    leftmost: Vec<usize>,
    /// Per B-vertex: placed A-origins that would overlap it if any of its
    /// neighbors is placed later. Placing such a neighbor is a dead end.
    pending: Vec<u32>,
    nodes: u64,
    max_nodes: u64,
}

impl Search<'_> {
    fn dfs(&mut self) -> Outcome {
        if self.order.len() == self.n + self.m {
            let rep = greedy_tips(&self.order, self.g)
                .expect("search order is a permutation")
                .expect("pruning rules imply greedy feasibility");
            return Outcome::Found(rep);
        }

        for i in 1..=self.n {
            if self.pos_a[i] != usize::MAX || self.missing[i] != 0 {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Outcome::OutOfBudget;
            }
            // A newly placed A-origin is the new rightmost neighbor origin
            // of all its neighbors; any pending overlap on those becomes
            // definitive.
            if self.neighbors_pending(i) {
                continue;
            }
            let added = self.place_a(i);
            match self.dfs() {
                Outcome::Exhausted => self.unplace_a(i, added),
                found_or_budget => return found_or_budget,
            }
        }

        for j in 1..=self.m {
            if self.pos_b[j] != usize::MAX {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Outcome::OutOfBudget;
            }
            self.place_b(j);
            match self.dfs() {
                Outcome::Exhausted => self.unplace_b(j),
                found_or_budget => return found_or_budget,
            }
        }

        Outcome::Exhausted
    }

    fn neighbors_pending(&self, i: usize) -> bool {
        let mut mask = self.a_adj[i];
        while mask != 0 {
            let j = mask.trailing_zeros() as usize + 1;
            if self.pending[j] > 0 {
                return true;
            }
            mask &= mask - 1;
        }
        false
    }

    /// Place A-origin `i`, returning the mask of B-vertices whose pending
    /// count was bumped (for undo).
    fn place_a(&mut self, i: usize) -> u64 {
        let p = self.order.len();
        self.pos_a[i] = p;
        self.order.push(Vertex::A(i));
        let l = {
            let mut best = p;
            let mut mask = self.a_adj[i];
            while mask != 0 {
                let j = mask.trailing_zeros() as usize + 1;
                best = best.min(self.pos_b[j]);
                mask &= mask - 1;
            }
            best
        };
        self.leftmost[i] = l;

        let mut added = 0u64;
        let mut mask = self.placed_b & !self.a_adj[i];
        while mask != 0 {
            let j = mask.trailing_zeros() as usize + 1;
            if l <= self.pos_b[j] {
                self.pending[j] += 1;
                added |= 1 << (j - 1);
            }
            mask &= mask - 1;
        }
        added
    }

    fn unplace_a(&mut self, i: usize, added: u64) {
        let mut mask = added;
        while mask != 0 {
            let j = mask.trailing_zeros() as usize + 1;
            self.pending[j] -= 1;
            mask &= mask - 1;
        }
        self.pos_a[i] = usize::MAX;
        self.order.pop();
    }

    fn place_b(&mut self, j: usize) {
        self.pos_b[j] = self.order.len();
        self.order.push(Vertex::B(j));
        self.placed_b |= 1 << (j - 1);
        let mut mask = self.b_adj[j];
        while mask != 0 {
            let i = mask.trailing_zeros() as usize + 1;
            self.missing[i] -= 1;
            mask &= mask - 1;
        }
    }

    fn unplace_b(&mut self, j: usize) {
        let mut mask = self.b_adj[j];
        while mask != 0 {
            let i = mask.trailing_zeros() as usize + 1;
            self.missing[i] += 1;
            mask &= mask - 1;
        }
        self.placed_b &= !(1 << (j - 1));
        self.pos_b[j] = usize::MAX;
        self.order.pop();
    }
}

/// Brute-force recognition over *all* interleavings of all `2(n + m)`
/// events, used as the ground-truth oracle for tiny graphs.
pub fn exhaustive_recognize_tiny(g: &BipartiteGraph) -> Result<RecognitionResult, RecognizerError> {
    const CAP: usize = 5;
    let total = g.a_count() + g.b_count();
    if total > CAP {
        return Err(RecognizerError::TooLarge { cap: CAP, got: total });
    }
    let mut events = Vec::with_capacity(2 * total);
    let found = enumerate_events(g, &mut events);
    Ok(match found {
        Some(rep) => RecognitionResult::Stick(rep),
        None => RecognitionResult::NotStick,
    })
}

fn enumerate_events(g: &BipartiteGraph, prefix: &mut Vec<Event>) -> Option<StickRepresentation> {
    let n = g.a_count();
    let m = g.b_count();
    if prefix.len() == 2 * (n + m) {
        let rep = StickRepresentation::new(prefix.clone()).expect("enumeration keeps order");
        if crate::rep::validate_representation(&rep, g).is_ok() {
            return Some(rep);
        }
        return None;
    }
    let mut candidates = Vec::with_capacity(n + m);
    for i in 1..=n {
        if !prefix.contains(&Event::ATip(i)) {
            candidates.push(Event::ATip(i));
        } else if !prefix.contains(&Event::AOrigin(i)) {
            candidates.push(Event::AOrigin(i));
        }
    }
    for j in 1..=m {
        if !prefix.contains(&Event::BOrigin(j)) {
            candidates.push(Event::BOrigin(j));
        } else if !prefix.contains(&Event::BTip(j)) {
            candidates.push(Event::BTip(j));
        }
    }
    for ev in candidates {
        prefix.push(ev);
        if let Some(rep) = enumerate_events(g, prefix) {
            return Some(rep);
        }
        prefix.pop();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::validate_representation;

    fn graph(n: usize, m: usize, edges: &[(usize, usize)]) -> BipartiteGraph {
        BipartiteGraph::new(n, m, edges.iter().copied()).unwrap()
    }

    fn a(i: usize) -> Vertex {
        Vertex::A(i)
    }

    fn b(j: usize) -> Vertex {
        Vertex::B(j)
    }

    #[test]
    fn greedy_on_two_matching() {
        let g = graph(2, 2, &[(1, 1), (2, 2)]);
        let rep = greedy_tips(&[b(1), a(1), b(2), a(2)], &g).unwrap().unwrap();
        assert_eq!(rep.to_token_string(), "TA1 B1 A1 TB1 TA2 B2 A2 TB2");
        assert!(validate_representation(&rep, &g).is_ok());
    }

    #[test]
    fn greedy_rejects_infeasible_p4_order() {
        // Non-edge A1-B2 would overlap under this order.
        let g = graph(2, 2, &[(1, 1), (2, 1), (2, 2)]);
        assert!(greedy_tips(&[b(1), b(2), a(1), a(2)], &g).unwrap().is_none());
    }

    #[test]
    fn greedy_accepts_feasible_p4_order() {
        let g = graph(2, 2, &[(1, 1), (2, 1), (2, 2)]);
        let rep = greedy_tips(&[b(2), b(1), a(2), a(1)], &g).unwrap().unwrap();
        assert_eq!(rep.to_token_string(), "TA2 B2 TA1 B1 A2 TB2 A1 TB1");
        assert!(validate_representation(&rep, &g).is_ok());
    }

    #[test]
    fn greedy_rejects_non_permutations() {
        let g = graph(2, 1, &[(1, 1)]);
        assert!(greedy_tips(&[b(1), a(1)], &g).is_err());
        assert!(greedy_tips(&[b(1), a(1), a(1)], &g).is_err());
    }

    #[test]
    fn recognize_small_positives() {
        // C6.
        let c6 = graph(3, 3, &[(1, 1), (2, 1), (2, 2), (3, 2), (3, 3), (1, 3)]);
        let result = recognize(&c6, SearchBudget::default());
        match result {
            RecognitionResult::Stick(rep) => {
                assert!(validate_representation(&rep, &c6).is_ok());
            }
            other => panic!("C6 must be recognized, got {other:?}"),
        }

        let k22 = graph(2, 2, &[(1, 1), (1, 2), (2, 1), (2, 2)]);
        assert!(recognize(&k22, SearchBudget::default()).is_stick());
    }

    #[test]
    fn recognize_agrees_with_exhaustive_on_tiny_graphs() {
        // All bipartite graphs with n = 2, m = 3.
        for mask in 0u32..(1 << 6) {
            let edges: Vec<(usize, usize)> = (0..6)
                .filter(|k| mask & (1 << k) != 0)
                .map(|k| (k / 3 + 1, k % 3 + 1))
                .collect();
            let g = graph(2, 3, &edges);
            let fast = recognize(&g, SearchBudget::default());
            let slow = exhaustive_recognize_tiny(&g).unwrap();
            assert_eq!(fast.is_stick(), slow.is_stick(), "mask {mask}");
        }
    }

    #[test]
    fn recognize_is_deterministic() {
        let g = graph(3, 3, &[(1, 1), (2, 1), (2, 2), (3, 2), (3, 3), (1, 3)]);
        let r1 = recognize(&g, SearchBudget::default());
        let r2 = recognize(&g, SearchBudget::default());
        assert_eq!(r1, r2);
    }

    #[test]
    fn recognize_reports_budget_exhaustion() {
        let g = graph(3, 3, &[(1, 1), (2, 2), (3, 3)]);
        match recognize(&g, SearchBudget::new(2)) {
            RecognitionResult::Unknown { nodes_spent } => assert!(nodes_spent >= 2),
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn exhaustive_respects_cap() {
        let g = graph(3, 3, &[]);
        assert!(matches!(
            exhaustive_recognize_tiny(&g),
            Err(RecognizerError::TooLarge { .. })
        ));
    }

    #[test]
    fn exhaustive_tiny_examples() {
        let single = graph(1, 1, &[(1, 1)]);
        assert!(exhaustive_recognize_tiny(&single).unwrap().is_stick());

        let k22 = graph(2, 2, &[(1, 1), (1, 2), (2, 1), (2, 2)]);
        assert!(exhaustive_recognize_tiny(&k22).unwrap().is_stick());

        // P5: A1-B1-A2-B2-A3.
        let p5 = graph(3, 2, &[(1, 1), (2, 1), (2, 2), (3, 2)]);
        assert!(exhaustive_recognize_tiny(&p5).unwrap().is_stick());
    }
}
