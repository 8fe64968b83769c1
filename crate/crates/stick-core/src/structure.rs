//! Structural analysis of vertex pairs in a valid representation.
//!
//! For an ordered pair of A-vertices `(v, t)` with `T(a_v) < T(a_t)`, the
//! B-side splits into three sets: `B1 = N(A_t) - N(A_v)` (exclusive to
//! `t`), `B2 = N(A_v) ∩ N(A_t)` (common), and `B3 = N(A_v) - N(A_t)`
//! (exclusive to `v`). Note the asymmetry: `B1` belongs to `t`, `B3` to
//! `v`. Every valid representation then falls into one of three
//! configurations, determined by the order of the pair's origins and tips,
//! and the line decomposes into four regions `R0..R3` with fully
//! prescribed contents ([`classify_configuration`]).
//!
//! Another A-vertex is a *mate* of the pair when its neighborhood meets at
//! least one of the three sets; its [`MateClass`] records which. A mate
//! whose tip precedes `T(a_t)` is a *partner*; partners can only sit in
//! certain regions subject to per-region side conditions, and two partners
//! sharing a region must have comparable neighborhoods in a precise sense
//! ([`check_table2`]). Certain partner pairs are impossible outright
//! ([`check_forbidden_pairs`]); that impossibility is what the certifier
//! in [`crate::obstructions`] exploits.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::graph::BipartiteGraph;
use crate::rep::{validate_representation, Event, StickRepresentation};

/// One of the three neighborhood parts of an ordered pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BPart {
    B1,
    B2,
    B3,
}

impl fmt::Display for BPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BPart::B1 => write!(f, "B1"),
            BPart::B2 => write!(f, "B2"),
            BPart::B3 => write!(f, "B3"),
        }
    }
}

/// The neighborhood partition of an ordered pair `(v, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodPartition {
    /// `N(A_t) - N(A_v)`: exclusive neighbors of the *later-tipped* vertex.
    pub b1: BTreeSet<usize>,
    /// `N(A_v) ∩ N(A_t)`.
    pub b2: BTreeSet<usize>,
    /// `N(A_v) - N(A_t)`.
    pub b3: BTreeSet<usize>,
}

impl NeighborhoodPartition {
    pub fn part(&self, part: BPart) -> &BTreeSet<usize> {
        match part {
            BPart::B1 => &self.b1,
            BPart::B2 => &self.b2,
            BPart::B3 => &self.b3,
        }
    }

    /// Union of the three parts.
    pub fn all(&self) -> BTreeSet<usize> {
        self.b1.union(&self.b2).chain(&self.b3).copied().collect()
    }
}

/// Which parts of the pair's partition a mate's neighborhood meets:
/// `i` is in the class iff `N(A_s) ∩ B_i` is nonempty. The empty class
/// means the vertex is not a mate at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct MateClass {
    bits: u8,
}

impl MateClass {
    pub const EMPTY: MateClass = MateClass { bits: 0 };

    pub fn from_parts(parts: &[BPart]) -> Self {
        let mut bits = 0;
        for p in parts {
            bits |= match p {
                BPart::B1 => 1,
                BPart::B2 => 2,
                BPart::B3 => 4,
            };
        }
        MateClass { bits }
    }

    pub fn contains(&self, part: BPart) -> bool {
        let bit = match part {
            BPart::B1 => 1,
            BPart::B2 => 2,
            BPart::B3 => 4,
        };
        self.bits & bit != 0
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    /// The class written as a word over `{1, 2, 3}`, e.g. `13`.
    pub fn word(&self) -> String {
        let mut s = String::new();
        if self.contains(BPart::B1) {
            s.push('1');
        }
        if self.contains(BPart::B2) {
            s.push('2');
        }
        if self.contains(BPart::B3) {
            s.push('3');
        }
        s
    }
}

impl fmt::Display for MateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "-")
        } else {
            write!(f, "{}", self.word())
        }
    }
}

/// The three possible layouts of a pair's origins and tips.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigKind {
    /// `a_t` before `a_v`.
    C1,
    /// `a_v` before `a_t`, with `T(a_t)` before `a_v`.
    C2,
    /// `a_v` before `T(a_t)`; behaves as C2 with `B2` empty and the roles
    /// of `T(a_t)` and `a_v` exchanged.
    C2Prime,
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigKind::C1 => write!(f, "C1"),
            ConfigKind::C2 => write!(f, "C2"),
            ConfigKind::C2Prime => write!(f, "C2'"),
        }
    }
}

/// A gap between consecutive anchors of a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Region {
    R0,
    R1,
    R2,
    R3,
}

impl Region {
    pub fn index(&self) -> usize {
        match self {
            Region::R0 => 0,
            Region::R1 => 1,
            Region::R2 => 2,
            Region::R3 => 3,
        }
    }

    fn from_index(i: usize) -> Region {
        match i {
            0 => Region::R0,
            1 => Region::R1,
            2 => Region::R2,
            _ => Region::R3,
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}", self.index())
    }
}

/// The split of `B3` by position. In C1, `b3_1` sits in R0 and `b3_2` in
/// R2 (tips all in R3). In C2, `b3_1` and `b3_2` both sit in R0 and are
/// told apart by their tips (R3 versus R2) while `b3_3` sits in R1. In
/// C2' only `b3_1` and `b3_2` occur.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct B3Split {
    pub b3_1: BTreeSet<usize>,
    pub b3_2: BTreeSet<usize>,
    pub b3_3: BTreeSet<usize>,
}

/// The classification of a pair in a valid representation: configuration
/// kind, the four anchor events in line order, a region for every origin
/// and tip of the pair's neighborhood and for every partner origin, and
/// the positional split of `B3`.
#[derive(Debug, Clone)]
pub struct Configuration {
    pub v: usize,
    pub t: usize,
    pub kind: ConfigKind,
    pub anchors: [Event; 4],
    pub region_of: BTreeMap<Event, Region>,
    pub partition: NeighborhoodPartition,
    pub b3_split: B3Split,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("the two pair vertices must differ, got A{0} twice")]
    SameVertex(usize),
    #[error("A-vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("vertex A{0} coincides with a pair vertex")]
    MateIsPairVertex(usize),
    #[error("part {0} is not in the mate class of both A{1} and A{2}")]
    PartOutsideMateClasses(BPart, usize, usize),
    #[error("representation does not match the graph: {0} violation(s)")]
    InvalidRepresentation(usize),
    #[error("tip of A{0} must precede tip of A{1}")]
    TipOrderViolated(usize, usize),
    #[error("region contents break the configuration layout: {0}")]
    LayoutViolation(String),
}

/// Compute `B1, B2, B3` for the ordered pair `(v, t)`.
pub fn partition_neighborhoods(
    g: &BipartiteGraph,
    v: usize,
    t: usize,
) -> Result<NeighborhoodPartition, StructureError> {
    if v == t {
        return Err(StructureError::SameVertex(v));
    }
    for x in [v, t] {
        if x < 1 || x > g.a_count() {
            return Err(StructureError::VertexOutOfRange(x));
        }
    }
    let nv = g.a_neighbors(v);
    let nt = g.a_neighbors(t);
    Ok(NeighborhoodPartition {
        b1: nt.difference(&nv).copied().collect(),
        b2: nv.intersection(&nt).copied().collect(),
        b3: nv.difference(&nt).copied().collect(),
    })
}

/// The mate class of `A_s` with respect to the pair `(v, t)`.
pub fn mate_class(
    g: &BipartiteGraph,
    v: usize,
    t: usize,
    s: usize,
) -> Result<MateClass, StructureError> {
    if s == v || s == t {
        return Err(StructureError::MateIsPairVertex(s));
    }
    if s < 1 || s > g.a_count() {
        return Err(StructureError::VertexOutOfRange(s));
    }
    let partition = partition_neighborhoods(g, v, t)?;
    Ok(class_of(&g.a_neighbors(s), &partition))
}

fn class_of(neighbors: &BTreeSet<usize>, partition: &NeighborhoodPartition) -> MateClass {
    let mut parts = Vec::new();
    for part in [BPart::B1, BPart::B2, BPart::B3] {
        if !neighbors.is_disjoint(partition.part(part)) {
            parts.push(part);
        }
    }
    MateClass::from_parts(&parts)
}

/// Are the mates `A_p` and `A_q` `B_i`-overlapping: does each own a
/// private neighbor inside `B_i`?
pub fn overlapping_mates(
    g: &BipartiteGraph,
    v: usize,
    t: usize,
    p: usize,
    q: usize,
    part: BPart,
) -> Result<bool, StructureError> {
    let wp = mate_class(g, v, t, p)?;
    let wq = mate_class(g, v, t, q)?;
    if !wp.contains(part) || !wq.contains(part) {
        return Err(StructureError::PartOutsideMateClasses(part, p, q));
    }
    let partition = partition_neighborhoods(g, v, t)?;
    Ok(overlapping_in_part(
        &g.a_neighbors(p),
        &g.a_neighbors(q),
        partition.part(part),
    ))
}

pub(crate) fn overlapping_in_part(
    np: &BTreeSet<usize>,
    nq: &BTreeSet<usize>,
    part_set: &BTreeSet<usize>,
) -> bool {
    let p_private = np.difference(nq).any(|b| part_set.contains(b));
    let q_private = nq.difference(np).any(|b| part_set.contains(b));
    p_private && q_private
}

/// Classify the configuration of the oriented pair `(v, t)` in a valid
/// representation of `g`, assigning every neighborhood event and every
/// partner origin to a region and checking that the contents match the
/// configuration's prescribed layout.
pub fn classify_configuration(
    rep: &StickRepresentation,
    g: &BipartiteGraph,
    v: usize,
    t: usize,
) -> Result<Configuration, StructureError> {
    let partition = partition_neighborhoods(g, v, t)?;
    let report = validate_representation(rep, g);
    if !report.is_ok() {
        return Err(StructureError::InvalidRepresentation(report.violations.len()));
    }
    if rep.a_tip_pos(v) > rep.a_tip_pos(t) {
        return Err(StructureError::TipOrderViolated(v, t));
    }

    let tip_v = rep.a_tip_pos(v);
    let tip_t = rep.a_tip_pos(t);
    let orig_v = rep.a_origin_pos(v);
    let orig_t = rep.a_origin_pos(t);

    let (kind, anchors, cuts) = if orig_t < orig_v {
        (
            ConfigKind::C1,
            [Event::ATip(v), Event::ATip(t), Event::AOrigin(t), Event::AOrigin(v)],
            [tip_v, tip_t, orig_t, orig_v],
        )
    } else if orig_v < tip_t {
        (
            ConfigKind::C2Prime,
            [Event::ATip(v), Event::AOrigin(v), Event::ATip(t), Event::AOrigin(t)],
            [tip_v, orig_v, tip_t, orig_t],
        )
    } else {
        (
            ConfigKind::C2,
            [Event::ATip(v), Event::ATip(t), Event::AOrigin(v), Event::AOrigin(t)],
            [tip_v, tip_t, orig_v, orig_t],
        )
    };

    // Region of a position strictly between anchors. In C2' the gap
    // between a_v and T(a_t) carries the same adjacency information as
    // the gap right after T(a_t), so both map to R2 and R1 stays empty.
    let region_at = |pos: usize| -> Result<Region, StructureError> {
        debug_assert!(!cuts.contains(&pos));
        if pos < cuts[0] {
            return Err(StructureError::LayoutViolation(format!(
                "event at position {pos} precedes T(a_{v})"
            )));
        }
        let raw = if pos < cuts[1] {
            0
        } else if pos < cuts[2] {
            1
        } else if pos < cuts[3] {
            2
        } else {
            3
        };
        Ok(match (kind, raw) {
            (ConfigKind::C2Prime, 1) => Region::R2,
            (_, r) => Region::from_index(r),
        })
    };

    let mut region_of: BTreeMap<Event, Region> = BTreeMap::new();
    for &b in partition.all().iter() {
        region_of.insert(Event::BOrigin(b), region_at(rep.b_origin_pos(b))?);
        region_of.insert(Event::BTip(b), region_at(rep.b_tip_pos(b))?);
    }

    let b3_split = split_b3(kind, &partition, &region_of);
    check_layout(kind, &partition, &region_of, &b3_split)?;

    // Partner origins, placed at their smallest candidate region.
    let region_events = region_event_positions(rep, &partition, &region_of);
    for s in partner_vertices(rep, g, v, t, &partition) {
        let pos = rep.a_origin_pos(s);
        let (lo, _hi) = candidate_range(pos, &region_events);
        region_of.insert(Event::AOrigin(s), Region::from_index(lo));
    }

    Ok(Configuration {
        v,
        t,
        kind,
        anchors,
        region_of,
        partition,
        b3_split,
    })
}

fn split_b3(
    kind: ConfigKind,
    partition: &NeighborhoodPartition,
    region_of: &BTreeMap<Event, Region>,
) -> B3Split {
    let mut split = B3Split::default();
    for &b in &partition.b3 {
        let origin = region_of[&Event::BOrigin(b)];
        let tip = region_of[&Event::BTip(b)];
        match kind {
            ConfigKind::C1 => {
                if origin == Region::R0 {
                    split.b3_1.insert(b);
                } else {
                    split.b3_2.insert(b);
                }
            }
            ConfigKind::C2 | ConfigKind::C2Prime => {
                if origin == Region::R1 {
                    split.b3_3.insert(b);
                } else if tip == Region::R3 {
                    split.b3_1.insert(b);
                } else {
                    split.b3_2.insert(b);
                }
            }
        }
    }
    split
}

/// Assert that every neighborhood event sits where the configuration's
/// layout says it must.
fn check_layout(
    kind: ConfigKind,
    partition: &NeighborhoodPartition,
    region_of: &BTreeMap<Event, Region>,
    b3_split: &B3Split,
) -> Result<(), StructureError> {
    let check = |b: usize, origin_ok: &[Region], tip_ok: &[Region]| {
        let origin = region_of[&Event::BOrigin(b)];
        let tip = region_of[&Event::BTip(b)];
        if !origin_ok.contains(&origin) {
            return Err(StructureError::LayoutViolation(format!(
                "origin of B{b} sits in {origin}"
            )));
        }
        if !tip_ok.contains(&tip) {
            return Err(StructureError::LayoutViolation(format!(
                "tip of B{b} sits in {tip}"
            )));
        }
        Ok(())
    };

    use Region::*;
    match kind {
        ConfigKind::C1 => {
            for &b in &partition.b1 {
                check(b, &[R1], &[R2])?;
            }
            for &b in &partition.b2 {
                check(b, &[R1], &[R3])?;
            }
            for &b in &partition.b3 {
                check(b, &[R0, R2], &[R3])?;
            }
        }
        ConfigKind::C2 => {
            for &b in &partition.b1 {
                check(b, &[R2], &[R3])?;
            }
            for &b in &partition.b2 {
                check(b, &[R1], &[R3])?;
            }
            for &b in &b3_split.b3_1 {
                check(b, &[R0], &[R3])?;
            }
            for &b in &b3_split.b3_2 {
                check(b, &[R0], &[R2])?;
            }
            for &b in &b3_split.b3_3 {
                check(b, &[R1], &[R2])?;
            }
        }
        ConfigKind::C2Prime => {
            if !partition.b2.is_empty() {
                return Err(StructureError::LayoutViolation(
                    "C2' requires an empty common neighborhood".to_string(),
                ));
            }
            for &b in &partition.b1 {
                check(b, &[R2], &[R3])?;
            }
            for &b in &b3_split.b3_1 {
                check(b, &[R0], &[R3])?;
            }
            for &b in &b3_split.b3_2 {
                check(b, &[R0], &[R2])?;
            }
        }
    }
    Ok(())
}

/// Positions of the pair's B-events grouped by region.
fn region_event_positions(
    rep: &StickRepresentation,
    partition: &NeighborhoodPartition,
    region_of: &BTreeMap<Event, Region>,
) -> [Vec<usize>; 4] {
    let mut out: [Vec<usize>; 4] = Default::default();
    for &b in partition.all().iter() {
        out[region_of[&Event::BOrigin(b)].index()].push(rep.b_origin_pos(b));
        out[region_of[&Event::BTip(b)].index()].push(rep.b_tip_pos(b));
    }
    out
}

/// Partners of the oriented pair: mates whose tip precedes `T(a_t)`,
/// ascending by index.
fn partner_vertices(
    rep: &StickRepresentation,
    g: &BipartiteGraph,
    v: usize,
    t: usize,
    partition: &NeighborhoodPartition,
) -> Vec<usize> {
    (1..=g.a_count())
        .filter(|&s| s != v && s != t)
        .filter(|&s| rep.a_tip_pos(s) < rep.a_tip_pos(t))
        .filter(|&s| !class_of(&g.a_neighbors(s), partition).is_empty())
        .collect()
}

/// The contiguous range of regions a partner origin at `pos` can be read
/// as occupying: every B-event of an earlier region must lie to its left
/// and every B-event of a later region to its right. Positions adjacent
/// to an anchor but with the same B-event context are equivalent, so the
/// range can span several regions when intermediate regions are empty.
fn candidate_range(pos: usize, region_events: &[Vec<usize>; 4]) -> (usize, usize) {
    let mut lo = 0;
    let mut hi = 3;
    for (r, events) in region_events.iter().enumerate() {
        for &p in events {
            if p < pos {
                lo = lo.max(r);
            } else {
                hi = hi.min(r);
            }
        }
    }
    debug_assert!(lo <= hi, "region windows out of order");
    (lo, hi)
}

/// One side condition attached to a Table 2 row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cond {
    /// `b3_1` nonempty.
    B31NonEmpty,
    /// `b3_1 ∪ b3_2` nonempty.
    B3132NonEmpty,
    /// `B2` empty.
    B2Empty,
    /// `b3_1` empty, or every `b3_1` origin precedes `T(a_s)`.
    WindowB31,
    /// Same with `b3_1 ∪ b3_2`.
    WindowB3132,
    /// `N(A_s)` contains all of `B2`.
    CoversB2,
}

struct Table2Row {
    /// Mate class as bits: 1 = B1, 2 = B2, 4 = B3.
    w: u8,
    /// 0 for C1, 1 for C2 (C2' uses the C2 rows with `B2` empty).
    kind: u8,
    region: usize,
    conds: &'static [Cond],
}

const fn row(w: u8, kind: u8, region: usize, conds: &'static [Cond]) -> Table2Row {
    Table2Row { w, kind, region, conds }
}

/// Allowed partner regions and their side conditions, one row per
/// `(mate class, configuration, region)`.
const W1: u8 = 1;
const W2: u8 = 2;
const W12: u8 = 3;
const W3: u8 = 4;
const W13: u8 = 5;
const W23: u8 = 6;
const W123: u8 = 7;

static TABLE2: &[Table2Row] = &[
    row(W13, 0, 1, &[Cond::B31NonEmpty]),
    row(W13, 0, 2, &[Cond::B2Empty]),
    row(W13, 1, 2, &[Cond::B2Empty]),
    row(W13, 1, 3, &[Cond::B31NonEmpty]),
    //
    row(W12, 0, 1, &[Cond::WindowB31]),
    row(W12, 0, 2, &[Cond::WindowB31, Cond::CoversB2]),
    row(W12, 1, 2, &[Cond::WindowB31, Cond::CoversB2]),
    row(W12, 1, 3, &[]),
    //
    row(W23, 0, 1, &[Cond::B31NonEmpty]),
    row(W23, 0, 2, &[Cond::CoversB2]),
    row(W23, 0, 3, &[]),
    row(W23, 1, 1, &[]),
    row(W23, 1, 2, &[Cond::CoversB2]),
    row(W23, 1, 3, &[Cond::B31NonEmpty]),
    //
    row(W1, 0, 1, &[Cond::WindowB31]),
    row(W1, 0, 2, &[Cond::WindowB31, Cond::B2Empty]),
    row(W1, 1, 2, &[Cond::WindowB31, Cond::B2Empty]),
    row(W1, 1, 3, &[]),
    //
    row(W2, 0, 1, &[Cond::WindowB31]),
    row(W2, 0, 3, &[]),
    row(W2, 1, 1, &[Cond::WindowB3132]),
    row(W2, 1, 3, &[]),
    //
    row(W3, 0, 0, &[Cond::B31NonEmpty]),
    row(W3, 0, 1, &[Cond::B31NonEmpty]),
    row(W3, 0, 2, &[Cond::B2Empty]),
    row(W3, 0, 3, &[]),
    row(W3, 1, 0, &[Cond::B3132NonEmpty]),
    row(W3, 1, 1, &[]),
    row(W3, 1, 2, &[Cond::B2Empty]),
    row(W3, 1, 3, &[Cond::B31NonEmpty]),
    //
    row(W123, 0, 1, &[Cond::B31NonEmpty]),
    row(W123, 0, 2, &[Cond::CoversB2]),
    row(W123, 1, 2, &[Cond::CoversB2]),
    row(W123, 1, 3, &[]),
];

/// The per-partner outcome of the placement check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartnerCheck {
    pub s: usize,
    pub w: MateClass,
    /// Smallest candidate region that passes, or the smallest candidate
    /// when none does.
    pub region: Region,
    pub pass: bool,
}

/// The outcome of a mutual-inclusion check between two partners sharing
/// a region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCheck {
    pub s: usize,
    pub r: usize,
    pub region: Region,
    pub pass: bool,
}

/// Full report of the partner placement checks for one oriented pair.
#[derive(Debug, Clone)]
pub struct Table2Report {
    pub v: usize,
    pub t: usize,
    pub kind: ConfigKind,
    pub partners: Vec<PartnerCheck>,
    pub pairs: Vec<PairCheck>,
}

impl Table2Report {
    pub fn passed(&self) -> bool {
        self.partners.iter().all(|p| p.pass) && self.pairs.iter().all(|p| p.pass)
    }
}

/// Check every partner of the oriented pair `(v, t)` against the allowed
/// regions and side conditions, and every pair of partners sharing a
/// region against the mutual-inclusion requirement. On a representation
/// that validates against `g` this always passes.
pub fn check_table2(
    rep: &StickRepresentation,
    g: &BipartiteGraph,
    v: usize,
    t: usize,
) -> Result<Table2Report, StructureError> {
    let config = classify_configuration(rep, g, v, t)?;
    let partition = &config.partition;
    let region_events = region_event_positions(rep, partition, &config.region_of);
    let partners = partner_vertices(rep, g, v, t, partition);

    let eff_kind: u8 = match config.kind {
        ConfigKind::C1 => 0,
        ConfigKind::C2 | ConfigKind::C2Prime => 1,
    };

    let eval_cond = |cond: Cond, s: usize| -> bool {
        let split = &config.b3_split;
        match cond {
            Cond::B31NonEmpty => !split.b3_1.is_empty(),
            Cond::B3132NonEmpty => !(split.b3_1.is_empty() && split.b3_2.is_empty()),
            Cond::B2Empty => partition.b2.is_empty(),
            Cond::WindowB31 => {
                let tip = rep.a_tip_pos(s);
                split.b3_1.iter().all(|&b| rep.b_origin_pos(b) < tip)
            }
            Cond::WindowB3132 => {
                let tip = rep.a_tip_pos(s);
                split
                    .b3_1
                    .iter()
                    .chain(&split.b3_2)
                    .all(|&b| rep.b_origin_pos(b) < tip)
            }
            Cond::CoversB2 => partition.b2.is_subset(&g.a_neighbors(s)),
        }
    };

    let mut partner_checks = Vec::new();
    let mut ranges = BTreeMap::new();
    for &s in &partners {
        let w = class_of(&g.a_neighbors(s), partition);
        let (lo, hi) = candidate_range(rep.a_origin_pos(s), &region_events);
        ranges.insert(s, (lo, hi));
        let w_bits = w_to_bits(w);
        let mut chosen = None;
        for i in lo..=hi {
            let allowed = TABLE2
                .iter()
                .find(|r| r.w == w_bits && r.kind == eff_kind && r.region == i);
            if let Some(row) = allowed {
                if row.conds.iter().all(|&c| eval_cond(c, s)) {
                    chosen = Some(i);
                    break;
                }
            }
        }
        partner_checks.push(PartnerCheck {
            s,
            w,
            region: Region::from_index(chosen.unwrap_or(lo)),
            pass: chosen.is_some(),
        });
    }

    // Mutual inclusion for partners sharing a region (R1..R3 only). A
    // region is written T(X) ∪ Y: X holds the vertices whose tips land
    // there, Y those whose origins do.
    let region_xy = |i: usize| -> (BTreeSet<usize>, BTreeSet<usize>) {
        let split = &config.b3_split;
        let union =
            |sets: &[&BTreeSet<usize>]| sets.iter().flat_map(|s| s.iter().copied()).collect();
        match (eff_kind, i) {
            (0, 1) => (BTreeSet::new(), union(&[&partition.b1, &partition.b2])),
            (0, 2) => (partition.b1.clone(), split.b3_2.clone()),
            (0, 3) => (union(&[&partition.b2, &partition.b3]), BTreeSet::new()),
            (1, 1) => (BTreeSet::new(), union(&[&partition.b2, &split.b3_3])),
            (1, 2) => (union(&[&split.b3_2, &split.b3_3]), partition.b1.clone()),
            (1, 3) => (
                union(&[&partition.b1, &partition.b2, &split.b3_1]),
                BTreeSet::new(),
            ),
            _ => (BTreeSet::new(), BTreeSet::new()),
        }
    };

    let r0_origins: BTreeSet<usize> = partition
        .all()
        .into_iter()
        .filter(|&b| config.region_of[&Event::BOrigin(b)] == Region::R0)
        .collect();
    let bad_r0 = |s: usize| -> BTreeSet<usize> {
        let tip = rep.a_tip_pos(s);
        r0_origins
            .iter()
            .copied()
            .filter(|&b| rep.b_origin_pos(b) < tip)
            .collect()
    };
    let all_parts = partition.all();

    let mut pair_checks = Vec::new();
    for (si, &s) in partners.iter().enumerate() {
        for &r in partners.iter().skip(si + 1) {
            let (slo, shi) = ranges[&s];
            let (rlo, rhi) = ranges[&r];
            let lo = slo.max(rlo).max(1);
            let hi = shi.min(rhi);
            if lo > hi {
                continue;
            }
            for i in lo..=hi {
                let (x, y) = region_xy(i);
                let ns: BTreeSet<usize> =
                    g.a_neighbors(s).intersection(&all_parts).copied().collect();
                let nr: BTreeSet<usize> =
                    g.a_neighbors(r).intersection(&all_parts).copied().collect();
                let bad_s = bad_r0(s);
                let bad_r = bad_r0(r);

                let ns_y: BTreeSet<usize> = ns.intersection(&y).copied().collect();
                let nr_y: BTreeSet<usize> = nr.intersection(&y).copied().collect();
                let ns_x: BTreeSet<usize> = ns
                    .intersection(&x)
                    .filter(|b| !bad_r.contains(b))
                    .copied()
                    .collect();
                let nr_x: BTreeSet<usize> = nr
                    .intersection(&x)
                    .filter(|b| !bad_s.contains(b))
                    .copied()
                    .collect();

                let forward = ns_y.is_subset(&nr_y) && ns_x.is_superset(&nr_x);
                let backward = ns_y.is_superset(&nr_y) && ns_x.is_subset(&nr_x);
                pair_checks.push(PairCheck {
                    s,
                    r,
                    region: Region::from_index(i),
                    pass: forward || backward,
                });
            }
        }
    }

    Ok(Table2Report {
        v,
        t,
        kind: config.kind,
        partners: partner_checks,
        pairs: pair_checks,
    })
}

fn w_to_bits(w: MateClass) -> u8 {
    let mut bits = 0;
    if w.contains(BPart::B1) {
        bits |= 1;
    }
    if w.contains(BPart::B2) {
        bits |= 2;
    }
    if w.contains(BPart::B3) {
        bits |= 4;
    }
    bits
}

/// A partner pair that a valid representation can never contain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenPairViolation {
    pub v: usize,
    pub t: usize,
    pub p: usize,
    pub q: usize,
    pub part: BPart,
}

/// Result of scanning a whole representation for forbidden partner pairs.
#[derive(Debug, Clone, Default)]
pub struct ForbiddenPairsReport {
    pub pairs_checked: usize,
    pub violations: Vec<ForbiddenPairViolation>,
}

impl ForbiddenPairsReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Assert, for every oriented pair with a nonempty common neighborhood,
/// the absence of: two partners with class 13 or 1 that are
/// B1-overlapping, and two partners with class 123 or 12 that are
/// B2-overlapping. A valid representation never contains either.
pub fn check_forbidden_pairs(
    rep: &StickRepresentation,
    g: &BipartiteGraph,
) -> Result<ForbiddenPairsReport, StructureError> {
    let report = validate_representation(rep, g);
    if !report.is_ok() {
        return Err(StructureError::InvalidRepresentation(report.violations.len()));
    }

    let mut out = ForbiddenPairsReport::default();
    let n = g.a_count();
    for x in 1..=n {
        for y in (x + 1)..=n {
            let (v, t) = if rep.a_tip_pos(x) < rep.a_tip_pos(y) {
                (x, y)
            } else {
                (y, x)
            };
            let partition = partition_neighborhoods(g, v, t)?;
            if partition.b2.is_empty() {
                continue;
            }
            out.pairs_checked += 1;
            let partners = partner_vertices(rep, g, v, t, &partition);
            for (pi, &p) in partners.iter().enumerate() {
                let wp = class_of(&g.a_neighbors(p), &partition);
                for &q in partners.iter().skip(pi + 1) {
                    let wq = class_of(&g.a_neighbors(q), &partition);
                    let case_a = [W13, W1].contains(&w_to_bits(wp))
                        && [W13, W1].contains(&w_to_bits(wq))
                        && overlapping_in_part(
                            &g.a_neighbors(p),
                            &g.a_neighbors(q),
                            &partition.b1,
                        );
                    if case_a {
                        out.violations.push(ForbiddenPairViolation {
                            v,
                            t,
                            p,
                            q,
                            part: BPart::B1,
                        });
                    }
                    let case_b = [W123, W12].contains(&w_to_bits(wp))
                        && [W123, W12].contains(&w_to_bits(wq))
                        && overlapping_in_part(
                            &g.a_neighbors(p),
                            &g.a_neighbors(q),
                            &partition.b2,
                        );
                    if case_b {
                        out.violations.push(ForbiddenPairViolation {
                            v,
                            t,
                            p,
                            q,
                            part: BPart::B2,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::StickRepresentation;
    use Event::*;

    fn graph(n: usize, m: usize, edges: &[(usize, usize)]) -> BipartiteGraph {
        BipartiteGraph::new(n, m, edges.iter().copied()).unwrap()
    }

    fn rep(events: &[Event]) -> StickRepresentation {
        StickRepresentation::new(events.to_vec()).unwrap()
    }

    fn set(items: &[usize]) -> BTreeSet<usize> {
        items.iter().copied().collect()
    }

    /// J3: A1..A6, B1..B6 with edges (i, i), (i, i+1), (i, i+3) mod 6.
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
    fn partition_k22() {
        let k22 = graph(2, 2, &[(1, 1), (1, 2), (2, 1), (2, 2)]);
        let p = partition_neighborhoods(&k22, 1, 2).unwrap();
        assert!(p.b1.is_empty());
        assert_eq!(p.b2, set(&[1, 2]));
        assert!(p.b3.is_empty());
    }

    #[test]
    fn partition_j3() {
        let p = partition_neighborhoods(&j3(), 2, 1).unwrap();
        assert_eq!(p.b1, set(&[1, 4]));
        assert_eq!(p.b2, set(&[2]));
        assert_eq!(p.b3, set(&[3, 5]));
    }

    #[test]
    fn partition_disjoint_stars() {
        let g = graph(2, 2, &[(1, 1), (2, 2)]);
        let p = partition_neighborhoods(&g, 1, 2).unwrap();
        assert_eq!(p.b1, set(&[2]));
        assert!(p.b2.is_empty());
        assert_eq!(p.b3, set(&[1]));
    }

    #[test]
    fn partition_rejects_same_vertex() {
        let g = graph(2, 2, &[]);
        assert_eq!(
            partition_neighborhoods(&g, 1, 1).unwrap_err(),
            StructureError::SameVertex(1)
        );
    }

    #[test]
    fn mate_class_j3_examples() {
        let g = j3();
        // N(A6) = {B6, B1, B3}: meets B1 = {1, 4} and B3 = {3, 5}.
        assert_eq!(
            mate_class(&g, 2, 1, 6).unwrap(),
            MateClass::from_parts(&[BPart::B1, BPart::B3])
        );
        // N(A3) = {B3, B4, B6}.
        assert_eq!(
            mate_class(&g, 2, 1, 3).unwrap(),
            MateClass::from_parts(&[BPart::B1, BPart::B3])
        );
    }

    #[test]
    fn mate_class_isolated_vertex_is_empty() {
        let g = graph(3, 2, &[(1, 1), (1, 2), (2, 1), (2, 2)]);
        assert_eq!(mate_class(&g, 1, 2, 3).unwrap(), MateClass::EMPTY);
        assert!(mate_class(&g, 1, 2, 2).is_err());
    }

    #[test]
    fn overlapping_mates_j3() {
        let g = j3();
        assert!(overlapping_mates(&g, 2, 1, 6, 3, BPart::B1).unwrap());
        // Both meet B3 in the same vertex set {3} vs {3}: not overlapping.
        assert!(!overlapping_mates(&g, 2, 1, 6, 3, BPart::B3).unwrap());
        // B2 is not in either class: precondition violation.
        assert!(overlapping_mates(&g, 2, 1, 6, 3, BPart::B2).is_err());
    }

    #[test]
    fn overlapping_mates_equal_neighborhoods() {
        // A3 and A4 have the same neighborhood {B1}; B3 of (1,2) is {1}.
        let g = graph(4, 2, &[(1, 1), (2, 2), (3, 1), (4, 1)]);
        assert!(!overlapping_mates(&g, 1, 2, 3, 4, BPart::B3).unwrap());
    }

    fn k22_rep() -> StickRepresentation {
        rep(&[
            ATip(1), ATip(2), BOrigin(1), BOrigin(2),
            AOrigin(1), AOrigin(2), BTip(1), BTip(2),
        ])
    }

    #[test]
    fn classify_k22_is_c2() {
        let g = graph(2, 2, &[(1, 1), (1, 2), (2, 1), (2, 2)]);
        let config = classify_configuration(&k22_rep(), &g, 1, 2).unwrap();
        assert_eq!(config.kind, ConfigKind::C2);
        assert_eq!(config.region_of[&BOrigin(1)], Region::R1);
        assert_eq!(config.region_of[&BOrigin(2)], Region::R1);
        assert_eq!(config.region_of[&BTip(1)], Region::R3);
        assert_eq!(config.region_of[&BTip(2)], Region::R3);
        assert!(config.b3_split.b3_1.is_empty());
    }

    #[test]
    fn classify_two_matching_is_c1() {
        // Edges A2-B1, A1-B2; layout puts a_t = a_2 before a_v = a_1.
        let r = rep(&[
            ATip(1), ATip(2), BOrigin(1), AOrigin(2),
            BTip(1), BOrigin(2), AOrigin(1), BTip(2),
        ]);
        let g = graph(2, 2, &[(2, 1), (1, 2)]);
        let config = classify_configuration(&r, &g, 1, 2).unwrap();
        assert_eq!(config.kind, ConfigKind::C1);
        // B1 (exclusive to t): origin R1, tip R2; B2 (exclusive to v):
        // origin in R2 so it lands in the second split part.
        assert_eq!(config.region_of[&BOrigin(1)], Region::R1);
        assert_eq!(config.region_of[&BTip(1)], Region::R2);
        assert_eq!(config.region_of[&BOrigin(2)], Region::R2);
        assert_eq!(config.b3_split.b3_2, set(&[2]));
        assert_eq!(config.region_of[&BTip(2)], Region::R3);
    }

    #[test]
    fn classify_degenerate_c1_with_isolated_t() {
        // Single edge A1-B1, isolated A2; all of t's sets are empty.
        let r = rep(&[ATip(1), ATip(2), AOrigin(2), BOrigin(1), AOrigin(1), BTip(1)]);
        let g = graph(2, 1, &[(1, 1)]);
        let config = classify_configuration(&r, &g, 1, 2).unwrap();
        assert_eq!(config.kind, ConfigKind::C1);
        assert!(config.partition.b1.is_empty());
        assert!(config.partition.b2.is_empty());
        assert_eq!(config.partition.b3, set(&[1]));
    }

    #[test]
    fn classify_c2_prime_orders() {
        // A1-B1 edge, isolated A2 placed entirely to the right:
        // T(a_1) < a_1 < T(a_2) < a_2 makes the pair (1, 2) a C2'.
        let r = rep(&[ATip(1), BOrigin(1), AOrigin(1), BTip(1), ATip(2), AOrigin(2)]);
        let g = graph(2, 1, &[(1, 1)]);
        let config = classify_configuration(&r, &g, 1, 2).unwrap();
        assert_eq!(config.kind, ConfigKind::C2Prime);
        // B1's tip sits between a_v and T(a_t): the equivalent region is R2.
        assert_eq!(config.region_of[&BOrigin(1)], Region::R0);
        assert_eq!(config.region_of[&BTip(1)], Region::R2);
        assert_eq!(config.b3_split.b3_2, set(&[1]));
    }

    #[test]
    fn classify_rejects_wrong_tip_order() {
        let g = graph(2, 2, &[(1, 1), (1, 2), (2, 1), (2, 2)]);
        assert_eq!(
            classify_configuration(&k22_rep(), &g, 2, 1).unwrap_err(),
            StructureError::TipOrderViolated(2, 1)
        );
    }

    #[test]
    fn classify_rejects_invalid_rep() {
        let g = graph(2, 2, &[]);
        assert!(matches!(
            classify_configuration(&k22_rep(), &g, 1, 2).unwrap_err(),
            StructureError::InvalidRepresentation(_)
        ));
    }

    #[test]
    fn table2_k22_is_vacuous() {
        let g = graph(2, 2, &[(1, 1), (1, 2), (2, 1), (2, 2)]);
        let report = check_table2(&k22_rep(), &g, 1, 2).unwrap();
        assert!(report.partners.is_empty());
        assert!(report.passed());
    }

    #[test]
    fn table2_k33_partner_lands_in_r1() {
        let r = rep(&[
            ATip(1), ATip(2), ATip(3),
            BOrigin(1), BOrigin(2), BOrigin(3),
            AOrigin(1), AOrigin(2), AOrigin(3),
            BTip(1), BTip(2), BTip(3),
        ]);
        let mut edges = Vec::new();
        for i in 1..=3 {
            for j in 1..=3 {
                edges.push((i, j));
            }
        }
        let g = graph(3, 3, &edges);
        let report = check_table2(&r, &g, 1, 3).unwrap();
        assert_eq!(report.kind, ConfigKind::C2);
        assert_eq!(report.partners.len(), 1);
        let p = &report.partners[0];
        assert_eq!(p.s, 2);
        assert_eq!(p.w, MateClass::from_parts(&[BPart::B2]));
        assert_eq!(p.region, Region::R1);
        assert!(p.pass);
        assert!(report.passed());
    }

    #[test]
    fn forbidden_pairs_pass_on_valid_reps() {
        let g = graph(2, 2, &[(1, 1), (1, 2), (2, 1), (2, 2)]);
        let report = check_forbidden_pairs(&k22_rep(), &g).unwrap();
        assert!(report.passed());
    }
}
