//! The flat Stick representation: a total order of origin and tip events
//! on a line, the overlap predicate, validation against a graph, and
//! induced-graph extraction.
//!
//! Every A-vertex contributes the interval `[T(a), a]` (tip before origin)
//! and every B-vertex the interval `[b, T(b)]` (origin before tip). The
//! segments of `A_i` and `B_j` intersect exactly when the four events occur
//! in the order `T(a_i) < b_j < a_i < T(b_j)`; that single pattern is what
//! the whole crate calls an *overlap*.

use std::fmt;

use thiserror::Error;

use crate::graph::BipartiteGraph;

/// One event on the line: an origin or a tip of one side's vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Event {
    ATip(usize),
    AOrigin(usize),
    BOrigin(usize),
    BTip(usize),
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::ATip(i) => write!(f, "TA{i}"),
            Event::AOrigin(i) => write!(f, "A{i}"),
            Event::BOrigin(j) => write!(f, "B{j}"),
            Event::BTip(j) => write!(f, "TB{j}"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RepError {
    #[error("vertex index 0 is not allowed (indices are 1-based)")]
    ZeroIndex,
    #[error("event {0} appears more than once")]
    DuplicateEvent(String),
    #[error("event {0} is missing its counterpart")]
    MissingCounterpart(String),
    #[error("{0}-side vertex {1} is missing; indices must run contiguously from 1")]
    MissingVertex(char, usize),
    #[error("tip of A{0} must precede its origin")]
    ATipAfterOrigin(usize),
    #[error("origin of B{0} must precede its tip")]
    BOriginAfterTip(usize),
    #[error("vertex {0} does not appear in the representation")]
    UnknownVertex(String),
}

/// A well-formed event sequence: exactly one origin and one tip per vertex,
/// indices contiguous from 1 on each side, A-tips before A-origins and
/// B-origins before B-tips. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StickRepresentation {
    events: Vec<Event>,
    a_count: usize,
    b_count: usize,
    // Positions indexed by vertex (slot 0 unused).
    a_tip: Vec<usize>,
    a_origin: Vec<usize>,
    b_origin: Vec<usize>,
    b_tip: Vec<usize>,
}

impl StickRepresentation {
    pub fn new(events: Vec<Event>) -> Result<Self, RepError> {
        let mut a_tip: Vec<Option<usize>> = Vec::new();
        let mut a_origin: Vec<Option<usize>> = Vec::new();
        let mut b_origin: Vec<Option<usize>> = Vec::new();
        let mut b_tip: Vec<Option<usize>> = Vec::new();

        fn put(
            slots: &mut Vec<Option<usize>>,
            index: usize,
            pos: usize,
            ev: Event,
        ) -> Result<(), RepError> {
            if index == 0 {
                return Err(RepError::ZeroIndex);
            }
            if slots.len() < index + 1 {
                slots.resize(index + 1, None);
            }
            if slots[index].is_some() {
                return Err(RepError::DuplicateEvent(ev.to_string()));
            }
            slots[index] = Some(pos);
            Ok(())
        }

        for (pos, &ev) in events.iter().enumerate() {
            match ev {
                Event::ATip(i) => put(&mut a_tip, i, pos, ev)?,
                Event::AOrigin(i) => put(&mut a_origin, i, pos, ev)?,
                Event::BOrigin(j) => put(&mut b_origin, j, pos, ev)?,
                Event::BTip(j) => put(&mut b_tip, j, pos, ev)?,
            }
        }

        let a_count = a_tip.len().max(a_origin.len()).saturating_sub(1);
        let b_count = b_origin.len().max(b_tip.len()).saturating_sub(1);
        a_tip.resize(a_count + 1, None);
        a_origin.resize(a_count + 1, None);
        b_origin.resize(b_count + 1, None);
        b_tip.resize(b_count + 1, None);

        let mut flat_a_tip = vec![0usize; a_count + 1];
        let mut flat_a_origin = vec![0usize; a_count + 1];
        let mut flat_b_origin = vec![0usize; b_count + 1];
        let mut flat_b_tip = vec![0usize; b_count + 1];

        for i in 1..=a_count {
            match (a_tip[i], a_origin[i]) {
                (Some(t), Some(o)) => {
                    if t > o {
                        return Err(RepError::ATipAfterOrigin(i));
                    }
                    flat_a_tip[i] = t;
                    flat_a_origin[i] = o;
                }
                (Some(_), None) => {
                    return Err(RepError::MissingCounterpart(format!("TA{i}")));
                }
                (None, Some(_)) => {
                    return Err(RepError::MissingCounterpart(format!("A{i}")));
                }
                (None, None) => {
                    return Err(RepError::MissingVertex('A', i));
                }
            }
        }
        for j in 1..=b_count {
            match (b_origin[j], b_tip[j]) {
                (Some(o), Some(t)) => {
                    if o > t {
                        return Err(RepError::BOriginAfterTip(j));
                    }
                    flat_b_origin[j] = o;
                    flat_b_tip[j] = t;
                }
                (Some(_), None) => {
                    return Err(RepError::MissingCounterpart(format!("B{j}")));
                }
                (None, Some(_)) => {
                    return Err(RepError::MissingCounterpart(format!("TB{j}")));
                }
                (None, None) => {
                    return Err(RepError::MissingVertex('B', j));
                }
            }
        }

        Ok(Self {
            events,
            a_count,
            b_count,
            a_tip: flat_a_tip,
            a_origin: flat_a_origin,
            b_origin: flat_b_origin,
            b_tip: flat_b_tip,
        })
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn a_count(&self) -> usize {
        self.a_count
    }

    pub fn b_count(&self) -> usize {
        self.b_count
    }

    /// Position of an event in the sequence, if its vertex exists.
    pub fn position(&self, ev: Event) -> Option<usize> {
        match ev {
            Event::ATip(i) => (1..=self.a_count).contains(&i).then(|| self.a_tip[i]),
            Event::AOrigin(i) => (1..=self.a_count).contains(&i).then(|| self.a_origin[i]),
            Event::BOrigin(j) => (1..=self.b_count).contains(&j).then(|| self.b_origin[j]),
            Event::BTip(j) => (1..=self.b_count).contains(&j).then(|| self.b_tip[j]),
        }
    }

    pub(crate) fn a_tip_pos(&self, i: usize) -> usize {
        self.a_tip[i]
    }

    pub(crate) fn a_origin_pos(&self, i: usize) -> usize {
        self.a_origin[i]
    }

    pub(crate) fn b_origin_pos(&self, j: usize) -> usize {
        self.b_origin[j]
    }

    pub(crate) fn b_tip_pos(&self, j: usize) -> usize {
        self.b_tip[j]
    }

    /// Does the overlap pattern `T(a_i) < b_j < a_i < T(b_j)` hold?
    pub fn overlaps(&self, i: usize, j: usize) -> Result<bool, RepError> {
        if i == 0 || i > self.a_count {
            return Err(RepError::UnknownVertex(format!("A{i}")));
        }
        if j == 0 || j > self.b_count {
            return Err(RepError::UnknownVertex(format!("B{j}")));
        }
        Ok(self.overlaps_unchecked(i, j))
    }

    pub(crate) fn overlaps_unchecked(&self, i: usize, j: usize) -> bool {
        self.a_tip[i] < self.b_origin[j]
            && self.b_origin[j] < self.a_origin[i]
            && self.a_origin[i] < self.b_tip[j]
    }

    /// The graph this representation induces: edge `(i, j)` iff the
    /// overlap pattern holds.
    pub fn induced_graph(&self) -> BipartiteGraph {
        let mut edges = Vec::new();
        for i in 1..=self.a_count {
            for j in 1..=self.b_count {
                if self.overlaps_unchecked(i, j) {
                    edges.push((i, j));
                }
            }
        }
        BipartiteGraph::new(self.a_count, self.b_count, edges)
            .expect("induced edges are in range")
    }

    /// Reverse the event sequence and exchange roles (A-tip <-> B-tip,
    /// A-origin <-> B-origin). A valid representation of `g` becomes a
    /// valid representation of `g.side_swapped()`.
    pub fn reversed_side_swap(&self) -> StickRepresentation {
        let events: Vec<Event> = self
            .events
            .iter()
            .rev()
            .map(|&ev| match ev {
                Event::ATip(i) => Event::BTip(i),
                Event::AOrigin(i) => Event::BOrigin(i),
                Event::BOrigin(j) => Event::AOrigin(j),
                Event::BTip(j) => Event::ATip(j),
            })
            .collect();
        StickRepresentation::new(events).expect("role swap preserves well-formedness")
    }

    /// Serialize as whitespace-separated tokens; [`parse_representation`]
    /// inverts this.
    pub fn to_token_string(&self) -> String {
        self.events
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Errors from [`parse_representation`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum RepParseError {
    #[error("unrecognized token `{0}`")]
    BadToken(String),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// Parse the representation file format: whitespace-separated tokens
/// `TA<i>`, `A<i>`, `B<j>`, `TB<j>` read left to right. Lines starting
/// with `#` are comments.
pub fn parse_representation(text: &str) -> Result<StickRepresentation, RepParseError> {
    let mut events = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        for token in line.split_whitespace() {
            events.push(parse_token(token)?);
        }
    }
    Ok(StickRepresentation::new(events)?)
}

fn parse_token(token: &str) -> Result<Event, RepParseError> {
    let bad = || RepParseError::BadToken(token.to_string());
    let (kind, digits) = if let Some(rest) = token.strip_prefix("TA") {
        ('t', rest)
    } else if let Some(rest) = token.strip_prefix("TB") {
        ('u', rest)
    } else if let Some(rest) = token.strip_prefix('A') {
        ('a', rest)
    } else if let Some(rest) = token.strip_prefix('B') {
        ('b', rest)
    } else {
        return Err(bad());
    };
    let index: usize = digits.parse().map_err(|_| bad())?;
    Ok(match kind {
        't' => Event::ATip(index),
        'a' => Event::AOrigin(index),
        'b' => Event::BOrigin(index),
        _ => Event::BTip(index),
    })
}

/// One discrepancy between a representation and a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The representation carries a different number of A-vertices.
    ACountMismatch { rep: usize, graph: usize },
    /// The representation carries a different number of B-vertices.
    BCountMismatch { rep: usize, graph: usize },
    /// `(a, b)` is an edge but the overlap pattern does not hold.
    MissingOverlap { a: usize, b: usize },
    /// The overlap pattern holds for the non-edge `(a, b)`.
    SpuriousOverlap { a: usize, b: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ACountMismatch { rep, graph } => {
                write!(f, "A-side has {rep} vertices in the representation, {graph} in the graph")
            }
            Violation::BCountMismatch { rep, graph } => {
                write!(f, "B-side has {rep} vertices in the representation, {graph} in the graph")
            }
            Violation::MissingOverlap { a, b } => {
                write!(f, "edge (A{a}, B{b}) does not overlap")
            }
            Violation::SpuriousOverlap { a, b } => {
                write!(f, "non-edge (A{a}, B{b}) overlaps")
            }
        }
    }
}

/// Outcome of checking a representation against a graph. All violations
/// are collected, not just the first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check that `rep` represents exactly `g`: same vertex counts on both
/// sides, and for every pair `(i, j)` the overlap pattern holds iff
/// `(i, j)` is an edge.
pub fn validate_representation(rep: &StickRepresentation, g: &BipartiteGraph) -> ValidationReport {
    let mut violations = Vec::new();
    if rep.a_count() != g.a_count() {
        violations.push(Violation::ACountMismatch { rep: rep.a_count(), graph: g.a_count() });
    }
    if rep.b_count() != g.b_count() {
        violations.push(Violation::BCountMismatch { rep: rep.b_count(), graph: g.b_count() });
    }
    if !violations.is_empty() {
        return ValidationReport { violations };
    }
    for i in 1..=g.a_count() {
        for j in 1..=g.b_count() {
            let overlap = rep.overlaps_unchecked(i, j);
            let edge = g.has_edge(i, j);
            if edge && !overlap {
                violations.push(Violation::MissingOverlap { a: i, b: j });
            } else if !edge && overlap {
                violations.push(Violation::SpuriousOverlap { a: i, b: j });
            }
        }
    }
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Event::*;

    fn rep(events: &[Event]) -> StickRepresentation {
        StickRepresentation::new(events.to_vec()).unwrap()
    }

    fn graph(n: usize, m: usize, edges: &[(usize, usize)]) -> BipartiteGraph {
        BipartiteGraph::new(n, m, edges.iter().copied()).unwrap()
    }

    #[test]
    fn overlap_defining_pattern() {
        let r = rep(&[ATip(1), BOrigin(1), AOrigin(1), BTip(1)]);
        assert!(r.overlaps(1, 1).unwrap());
    }

    #[test]
    fn overlap_broken_when_b_precedes_tip() {
        let r = rep(&[BOrigin(1), ATip(1), AOrigin(1), BTip(1)]);
        assert!(!r.overlaps(1, 1).unwrap());
    }

    #[test]
    fn overlap_in_k22_layout() {
        let r = rep(&[
            ATip(1), ATip(2), BOrigin(1), BOrigin(2),
            AOrigin(1), AOrigin(2), BTip(1), BTip(2),
        ]);
        assert!(r.overlaps(2, 1).unwrap());
    }

    #[test]
    fn overlap_rejects_unknown_vertex() {
        let r = rep(&[ATip(1), AOrigin(1)]);
        assert!(matches!(r.overlaps(1, 1), Err(RepError::UnknownVertex(_))));
        assert!(matches!(r.overlaps(2, 1), Err(RepError::UnknownVertex(_))));
    }

    #[test]
    fn validate_star() {
        let r = rep(&[ATip(1), BOrigin(1), BOrigin(2), AOrigin(1), BTip(1), BTip(2)]);
        let g = graph(1, 2, &[(1, 1), (1, 2)]);
        assert!(validate_representation(&r, &g).is_ok());
    }

    #[test]
    fn validate_reports_spurious_overlap() {
        let r = rep(&[ATip(1), BOrigin(1), AOrigin(1), BTip(1)]);
        let g = graph(1, 1, &[]);
        let report = validate_representation(&r, &g);
        assert_eq!(report.violations, vec![Violation::SpuriousOverlap { a: 1, b: 1 }]);
    }

    #[test]
    fn validate_p4_layout() {
        // Checked pair by pair against the overlap pattern.
        let r = rep(&[
            ATip(2), BOrigin(2), ATip(1), BOrigin(1),
            AOrigin(2), BTip(2), AOrigin(1), BTip(1),
        ]);
        let g = graph(2, 2, &[(1, 1), (2, 1), (2, 2)]);
        assert!(validate_representation(&r, &g).is_ok());
    }

    #[test]
    fn validate_reports_count_mismatch() {
        let r = rep(&[ATip(1), AOrigin(1)]);
        let g = graph(2, 0, &[]);
        let report = validate_representation(&r, &g);
        assert_eq!(report.violations, vec![Violation::ACountMismatch { rep: 1, graph: 2 }]);
    }

    #[test]
    fn induced_graph_of_disjoint_intervals_is_edgeless() {
        let r = rep(&[ATip(1), AOrigin(1), BOrigin(1), BTip(1)]);
        assert_eq!(r.induced_graph(), graph(1, 1, &[]));
    }

    #[test]
    fn induced_graph_of_k22_layout() {
        let r = rep(&[
            ATip(1), ATip(2), BOrigin(1), BOrigin(2),
            AOrigin(1), AOrigin(2), BTip(1), BTip(2),
        ]);
        assert_eq!(
            r.induced_graph(),
            graph(2, 2, &[(1, 1), (1, 2), (2, 1), (2, 2)])
        );
    }

    #[test]
    fn construction_rejects_missing_counterpart() {
        let err = StickRepresentation::new(vec![
            ATip(1), BOrigin(1), AOrigin(1), BOrigin(2), BTip(1), AOrigin(2),
        ])
        .unwrap_err();
        assert!(matches!(err, RepError::MissingCounterpart(_)));
    }

    #[test]
    fn construction_rejects_order_violations() {
        assert_eq!(
            StickRepresentation::new(vec![AOrigin(1), ATip(1)]).unwrap_err(),
            RepError::ATipAfterOrigin(1)
        );
        assert_eq!(
            StickRepresentation::new(vec![BTip(1), BOrigin(1)]).unwrap_err(),
            RepError::BOriginAfterTip(1)
        );
    }

    #[test]
    fn construction_rejects_duplicates_and_gaps() {
        assert!(matches!(
            StickRepresentation::new(vec![ATip(1), ATip(1), AOrigin(1)]).unwrap_err(),
            RepError::DuplicateEvent(_)
        ));
        assert!(matches!(
            StickRepresentation::new(vec![ATip(2), AOrigin(2)]).unwrap_err(),
            RepError::MissingVertex('A', 1)
        ));
    }

    #[test]
    fn parse_and_serialize_tokens() {
        let r = parse_representation("TA1 B1 B2 A1 TB1 TB2").unwrap();
        assert_eq!(r.to_token_string(), "TA1 B1 B2 A1 TB1 TB2");
        assert!(parse_representation("TA1 A1 X3").is_err());
        assert!(parse_representation("# comment\nTA1 A1").is_ok());
    }

    #[test]
    fn empty_representation_is_fine() {
        let r = rep(&[]);
        assert_eq!(r.a_count(), 0);
        assert_eq!(r.b_count(), 0);
        assert!(validate_representation(&r, &graph(0, 0, &[])).is_ok());
    }

    #[test]
    fn reversal_swaps_sides() {
        let r = rep(&[
            ATip(2), BOrigin(2), ATip(1), BOrigin(1),
            AOrigin(2), BTip(2), AOrigin(1), BTip(1),
        ]);
        let g = graph(2, 2, &[(1, 1), (2, 1), (2, 2)]);
        let swapped = r.reversed_side_swap();
        assert!(validate_representation(&swapped, &g.side_swapped()).is_ok());
        // Involution.
        assert_eq!(swapped.reversed_side_swap(), r);
    }
}
