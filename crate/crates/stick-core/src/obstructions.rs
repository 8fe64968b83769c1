//! Sufficient-condition certification that a bipartite graph has no Stick
//! representation, with machine-checkable certificates.
//!
//! The idea: in any representation some vertex owns the rightmost A-tip,
//! and every mate of a pair involving that vertex is automatically a
//! partner. If *every* A-vertex `t` can be paired with some `v` so that
//! the pair has a common neighbor and owns a forbidden partner pair
//! ([`crate::structure::check_forbidden_pairs`]), no vertex can take the
//! rightmost-tip role and the graph is not a Stick graph. The certificate
//! records one witness per vertex and can be re-verified independently of
//! the search that found it.
//!
//! The condition is sufficient, not complete: graphs exist that are not
//! Stick graphs yet admit no certificate of this shape.

use std::fmt;

use thiserror::Error;

use crate::graph::BipartiteGraph;
use crate::structure::{overlapping_in_part, partition_neighborhoods, BPart, MateClass};

/// Which side of the graph a certificate quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::A => write!(f, "A"),
            Side::B => write!(f, "B"),
        }
    }
}

/// The two obstruction shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObstructionCase {
    /// Two mates with classes in `{13, 1}` that are B1-overlapping.
    CaseI,
    /// Two mates with classes in `{123, 12}` that are B2-overlapping.
    CaseII,
}

impl ObstructionCase {
    /// The part in which the witnesses overlap: `B1` for case (i), `B2`
    /// for case (ii).
    pub fn overlap_part(&self) -> BPart {
        match self {
            ObstructionCase::CaseI => BPart::B1,
            ObstructionCase::CaseII => BPart::B2,
        }
    }

    fn allowed_classes(&self) -> [MateClass; 2] {
        match self {
            ObstructionCase::CaseI => [
                MateClass::from_parts(&[BPart::B1, BPart::B3]),
                MateClass::from_parts(&[BPart::B1]),
            ],
            ObstructionCase::CaseII => [
                MateClass::from_parts(&[BPart::B1, BPart::B2, BPart::B3]),
                MateClass::from_parts(&[BPart::B1, BPart::B2]),
            ],
        }
    }
}

impl fmt::Display for ObstructionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObstructionCase::CaseI => write!(f, "i"),
            ObstructionCase::CaseII => write!(f, "ii"),
        }
    }
}

/// The per-vertex witness: for vertex `t`, the chosen pair vertex `v` and
/// two mates `p`, `q` realizing one of the obstruction cases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub t: usize,
    pub v: usize,
    pub case: ObstructionCase,
    pub p: usize,
    pub q: usize,
    pub w_p: MateClass,
    pub w_q: MateClass,
}

/// A proof that a graph is not a Stick graph: one witness for every
/// vertex of the chosen side, no exceptions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonStickCertificate {
    pub side: Side,
    pub witnesses: Vec<Witness>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertificateError {
    #[error("expected one witness per vertex, 1..={expected}, found t={found:?}")]
    WitnessCoverage { expected: usize, found: Vec<usize> },
    #[error("witness for t={t}: v={v} is not a distinct vertex in range")]
    BadPairVertex { t: usize, v: usize },
    #[error("witness for t={t}: the pair has no common neighbor")]
    EmptyCommonNeighborhood { t: usize },
    #[error("witness for t={t}: mate {s} has class {found}, not allowed for case {case}")]
    WrongMateClass { t: usize, s: usize, found: String, case: ObstructionCase },
    #[error("witness for t={t}: mates {p} and {q} are not {part}-overlapping")]
    NotOverlapping { t: usize, p: usize, q: usize, part: BPart },
}

impl NonStickCertificate {
    /// Re-check every invariant of the certificate against `g`,
    /// independently of how it was produced.
    pub fn verify(&self, g: &BipartiteGraph) -> Result<(), CertificateError> {
        let oriented = match self.side {
            Side::A => g.clone(),
            Side::B => g.side_swapped(),
        };
        let n = oriented.a_count();
        let mut covered: Vec<usize> = self.witnesses.iter().map(|w| w.t).collect();
        covered.sort_unstable();
        covered.dedup();
        if covered != (1..=n).collect::<Vec<_>>() {
            return Err(CertificateError::WitnessCoverage { expected: n, found: covered });
        }
        for w in &self.witnesses {
            if w.v == w.t || w.v < 1 || w.v > n {
                return Err(CertificateError::BadPairVertex { t: w.t, v: w.v });
            }
            let partition = partition_neighborhoods(&oriented, w.v, w.t)
                .expect("witness indices checked above");
            if partition.b2.is_empty() {
                return Err(CertificateError::EmptyCommonNeighborhood { t: w.t });
            }
            let allowed = w.case.allowed_classes();
            for (s, stated) in [(w.p, w.w_p), (w.q, w.w_q)] {
                if s == w.v || s == w.t || s < 1 || s > n {
                    return Err(CertificateError::BadPairVertex { t: w.t, v: s });
                }
                let actual = class_of_in(&oriented, &partition, s);
                if actual != stated || !allowed.contains(&actual) {
                    return Err(CertificateError::WrongMateClass {
                        t: w.t,
                        s,
                        found: actual.to_string(),
                        case: w.case,
                    });
                }
            }
            let part = w.case.overlap_part();
            if !overlapping_in_part(
                &oriented.a_neighbors(w.p),
                &oriented.a_neighbors(w.q),
                partition.part(part),
            ) {
                return Err(CertificateError::NotOverlapping {
                    t: w.t,
                    p: w.p,
                    q: w.q,
                    part,
                });
            }
        }
        Ok(())
    }
}

fn class_of_in(
    g: &BipartiteGraph,
    partition: &crate::structure::NeighborhoodPartition,
    s: usize,
) -> MateClass {
    let ns = g.a_neighbors(s);
    let mut parts = Vec::new();
    for part in [BPart::B1, BPart::B2, BPart::B3] {
        if !ns.is_disjoint(partition.part(part)) {
            parts.push(part);
        }
    }
    MateClass::from_parts(&parts)
}

/// All obstruction witnesses for the ordered pair `(v, t)`: triples
/// `(case, p, q)` with `p < q`, in lexicographic `(p, q)` order with case
/// (i) before case (ii). Empty whenever the pair has no common neighbor.
pub fn pair_obstructions(
    g: &BipartiteGraph,
    v: usize,
    t: usize,
) -> Result<Vec<(ObstructionCase, usize, usize)>, crate::structure::StructureError> {
    let partition = partition_neighborhoods(g, v, t)?;
    if partition.b2.is_empty() {
        return Ok(Vec::new());
    }
    let n = g.a_count();
    let mates: Vec<(usize, MateClass)> = (1..=n)
        .filter(|&s| s != v && s != t)
        .map(|s| (s, class_of_in(g, &partition, s)))
        .collect();

    let mut out = Vec::new();
    for (pi, &(p, wp)) in mates.iter().enumerate() {
        for &(q, wq) in mates.iter().skip(pi + 1) {
            for case in [ObstructionCase::CaseI, ObstructionCase::CaseII] {
                let allowed = case.allowed_classes();
                if allowed.contains(&wp)
                    && allowed.contains(&wq)
                    && overlapping_in_part(
                        &g.a_neighbors(p),
                        &g.a_neighbors(q),
                        partition.part(case.overlap_part()),
                    )
                {
                    out.push((case, p, q));
                }
            }
        }
    }
    Ok(out)
}

/// Try to certify that `g` is not a Stick graph: succeed iff every vertex
/// of a side can be paired and witnessed. The A side is tried first; with
/// `try_role_swap` the B side is tried as well (justified by the reversal
/// symmetry of representations). For each `t` the smallest `v` with a
/// witness is chosen, and the first witness in `(p, q)` order is taken.
pub fn certify_non_stick(g: &BipartiteGraph, try_role_swap: bool) -> Option<NonStickCertificate> {
    if let Some(witnesses) = certify_side(g) {
        return Some(NonStickCertificate { side: Side::A, witnesses });
    }
    if try_role_swap {
        if let Some(witnesses) = certify_side(&g.side_swapped()) {
            return Some(NonStickCertificate { side: Side::B, witnesses });
        }
    }
    None
}

fn certify_side(g: &BipartiteGraph) -> Option<Vec<Witness>> {
    let n = g.a_count();
    if n == 0 {
        return None;
    }
    let mut witnesses = Vec::with_capacity(n);
    't_loop: for t in 1..=n {
        for v in (1..=n).filter(|&v| v != t) {
            let found = pair_obstructions(g, v, t).expect("indices in range");
            if let Some(&(case, p, q)) = found.first() {
                let partition = partition_neighborhoods(g, v, t).expect("indices in range");
                witnesses.push(Witness {
                    t,
                    v,
                    case,
                    p,
                    q,
                    w_p: class_of_in(g, &partition, p),
                    w_q: class_of_in(g, &partition, q),
                });
                continue 't_loop;
            }
        }
        return None;
    }
    Some(witnesses)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, m: usize, edges: &[(usize, usize)]) -> BipartiteGraph {
        BipartiteGraph::new(n, m, edges.iter().copied()).unwrap()
    }

    fn j3() -> BipartiteGraph {
        let mut edges = Vec::new();
        for i in 1..=6usize {
            for d in [0usize, 1, 3] {
                edges.push((i, (i - 1 + d) % 6 + 1));
            }
        }
        graph(6, 6, &edges)
    }

    #[test]
    fn j3_pair_obstruction_contains_expected_witness() {
        let found = pair_obstructions(&j3(), 2, 1).unwrap();
        assert!(found.contains(&(ObstructionCase::CaseI, 3, 6)));
    }

    #[test]
    fn k33_has_no_obstructions() {
        let mut edges = Vec::new();
        for i in 1..=3 {
            for j in 1..=3 {
                edges.push((i, j));
            }
        }
        let g = graph(3, 3, &edges);
        for v in 1..=3 {
            for t in 1..=3 {
                if v != t {
                    assert!(pair_obstructions(&g, v, t).unwrap().is_empty());
                }
            }
        }
    }

    #[test]
    fn j3_gets_a_certificate_with_case_i_witnesses() {
        let g = j3();
        let cert = certify_non_stick(&g, false).expect("J3 is certified");
        assert_eq!(cert.side, Side::A);
        assert_eq!(cert.witnesses.len(), 6);
        assert!(cert.witnesses.iter().all(|w| w.case == ObstructionCase::CaseI));
        cert.verify(&g).unwrap();
    }

    #[test]
    fn k22_gets_no_certificate() {
        let g = graph(2, 2, &[(1, 1), (1, 2), (2, 1), (2, 2)]);
        assert!(certify_non_stick(&g, true).is_none());
    }

    #[test]
    fn role_swap_certifies_when_an_a_vertex_blocks() {
        // J3 plus an isolated A-vertex: the isolated vertex can never be
        // witnessed on the A side, but the B side still certifies.
        let edges: Vec<(usize, usize)> = j3().edges().collect();
        let g = graph(7, 6, &edges);
        assert!(certify_non_stick(&g, false).is_none());
        let cert = certify_non_stick(&g, true).expect("B side certifies");
        assert_eq!(cert.side, Side::B);
        cert.verify(&g).unwrap();
    }

    #[test]
    fn tampered_certificates_fail_verification() {
        let g = j3();
        let mut cert = certify_non_stick(&g, false).unwrap();
        cert.witnesses[0].p = cert.witnesses[0].q;
        assert!(cert.verify(&g).is_err());

        let mut cert2 = certify_non_stick(&g, false).unwrap();
        cert2.witnesses.pop();
        assert!(cert2.verify(&g).is_err());
    }
}
