//! Constructive representations from geometric inputs.
//!
//! Two constructions are provided. [`arcs_to_stick`] takes a circular-arc
//! family in two-clique form — one arc family covering the bottom-left
//! anchors `s, q`, the other the top-right anchors `p, r` — and folds the
//! bottom half-circle onto the top one; the resulting intervals form a
//! representation of the *complement* of the arc intersection graph.
//! [`chords_to_stick`] takes a family of chords that all cross a common
//! horizontal line, checks that the chord crossing graph is bipartite,
//! orients each connected component so that every crossing pair realizes
//! one canonical endpoint order, then cuts the circle at its rightmost
//! point and unfolds it into a line.
//!
//! Positions are exact rationals measured in turns, so there are no
//! floating-point ties; families with coincident endpoints are invalid
//! input.

use std::collections::BTreeMap;

use num_rational::Ratio;
use thiserror::Error;

use crate::graph::BipartiteGraph;
use crate::rep::{validate_representation, Event, StickRepresentation};

/// A position on a circle or line, in turns. Exact arithmetic.
pub type Turn = Ratio<i128>;

fn turn(num: i128, den: i128) -> Turn {
    Ratio::new(num, den)
}

fn mod1(x: Turn) -> Turn {
    x - x.floor()
}

/// Clockwise distance from `a` to `b`, in `[0, 1)`.
fn cw_dist(a: Turn, b: Turn) -> Turn {
    mod1(b - a)
}

/// Parse a decimal in `[0, 1)` into an exact rational. At most 12
/// fractional digits.
pub fn parse_turn(s: &str) -> Result<Turn, BuildError> {
    let bad = || BuildError::BadPosition(s.to_string());
    let (int_part, frac_part) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if !int_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    if frac_part.len() > 12 || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let int_val: i128 = if int_part.is_empty() {
        0
    } else {
        int_part.parse().map_err(|_| bad())?
    };
    let den = 10i128.pow(frac_part.len() as u32);
    let frac_val: i128 = if frac_part.is_empty() {
        0
    } else {
        frac_part.parse().map_err(|_| bad())?
    };
    let value = turn(int_val * den + frac_val, den);
    if value < turn(0, 1) || value >= turn(1, 1) {
        return Err(bad());
    }
    Ok(value)
}

/// Format a turn back as a decimal. Only turns with a power-of-ten
/// denominator (up to 10^12) can appear here.
pub(crate) fn format_turn(t: Turn) -> String {
    for digits in 0..=12u32 {
        let scaled = t * turn(10i128.pow(digits), 1);
        if scaled.is_integer() {
            let v = scaled.to_integer();
            if digits == 0 {
                return format!("{v}");
            }
            let s = format!("{:0width$}", v, width = digits as usize);
            return format!("0.{s}");
        }
    }
    unreachable!("turns are produced from decimals with at most 12 digits")
}

/// An arc running clockwise from `start` to `end`; positions in turns,
/// measured clockwise from the circle's top point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub id: usize,
    pub start: Turn,
    pub end: Turn,
}

impl Arc {
    /// Is `x` on the closed arc from `start` clockwise to `end`?
    pub fn contains(&self, x: Turn) -> bool {
        cw_dist(self.start, x) <= cw_dist(self.start, self.end)
    }

    fn intersects(&self, other: &Arc) -> bool {
        self.contains(other.start)
            || self.contains(other.end)
            || other.contains(self.start)
            || other.contains(self.end)
    }
}

/// A two-clique circular-arc family: every S-arc contains the anchors
/// `s` (3/4) and `q` (1/2) but neither `p` (0) nor `r` (1/4); every T-arc
/// contains `p` and `r` but neither `s` nor `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcFamily {
    pub s_arcs: Vec<Arc>,
    pub t_arcs: Vec<Arc>,
}

/// Violations found by [`validate_arc_family`], one message per problem.
#[derive(Debug, Clone, Default)]
pub struct ArcFamilyReport {
    pub violations: Vec<String>,
}

impl ArcFamilyReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("cannot parse position `{0}`")]
    BadPosition(String),
    #[error("line {0}: malformed line `{1}`")]
    MalformedLine(usize, String),
    #[error("invalid arc family: {}", .0.join("; "))]
    InvalidArcFamily(Vec<String>),
    #[error("invalid chord family: {}", .0.join("; "))]
    InvalidChordFamily(Vec<String>),
    #[error("chords {0} and {1} cross but a bipartition would put them on the same side")]
    NonBipartiteChords(usize, usize),
    #[error("crossing pair of chords {a_chord} and {b_chord} breaks the canonical endpoint order")]
    PropertyPViolation { a_chord: usize, b_chord: usize },
}

const ANCHOR_P: (i128, i128) = (0, 1);
const ANCHOR_R: (i128, i128) = (1, 4);
const ANCHOR_Q: (i128, i128) = (1, 2);
const ANCHOR_S: (i128, i128) = (3, 4);

/// Check the two-clique form: distinct endpoints, no endpoint on an
/// anchor, and the right anchor containments for each side.
pub fn validate_arc_family(fam: &ArcFamily) -> ArcFamilyReport {
    let mut report = ArcFamilyReport::default();
    let p = turn(ANCHOR_P.0, ANCHOR_P.1);
    let r = turn(ANCHOR_R.0, ANCHOR_R.1);
    let q = turn(ANCHOR_Q.0, ANCHOR_Q.1);
    let s = turn(ANCHOR_S.0, ANCHOR_S.1);

    let mut endpoints: BTreeMap<Turn, String> = BTreeMap::new();
    let mut check_endpoint = |label: String, x: Turn, report: &mut ArcFamilyReport| {
        if !(turn(0, 1)..turn(1, 1)).contains(&x) {
            report.violations.push(format!("{label}: position out of [0, 1)"));
            return;
        }
        if [p, r, q, s].contains(&x) {
            report.violations.push(format!("{label}: endpoint on an anchor"));
        }
        if let Some(prev) = endpoints.insert(x, label.clone()) {
            report.violations.push(format!("{label}: endpoint coincides with {prev}"));
        }
    };

    for arc in &fam.s_arcs {
        check_endpoint(format!("S{} start", arc.id), arc.start, &mut report);
        check_endpoint(format!("S{} end", arc.id), arc.end, &mut report);
    }
    for arc in &fam.t_arcs {
        check_endpoint(format!("T{} start", arc.id), arc.start, &mut report);
        check_endpoint(format!("T{} end", arc.id), arc.end, &mut report);
    }

    for arc in &fam.s_arcs {
        for (anchor, name, want) in [(s, "s", true), (q, "q", true), (p, "p", false), (r, "r", false)] {
            if arc.contains(anchor) != want {
                let verb = if want { "must contain" } else { "must not contain" };
                report.violations.push(format!("S{}: {verb} {name}", arc.id));
            }
        }
    }
    for arc in &fam.t_arcs {
        for (anchor, name, want) in [(p, "p", true), (r, "r", true), (s, "s", false), (q, "q", false)] {
            if arc.contains(anchor) != want {
                let verb = if want { "must contain" } else { "must not contain" };
                report.violations.push(format!("T{}: {verb} {name}", arc.id));
            }
        }
    }

    for (side, arcs) in [("S", &fam.s_arcs), ("T", &fam.t_arcs)] {
        let mut ids: Vec<usize> = arcs.iter().map(|a| a.id).collect();
        ids.sort_unstable();
        if ids != (1..=arcs.len()).collect::<Vec<_>>() {
            report
                .violations
                .push(format!("{side}-arc ids must be exactly 1..={}", arcs.len()));
        }
    }

    report
}

/// Fold a valid two-clique arc family into a Stick representation of the
/// bipartite complement of its intersection graph: vertices are the arcs
/// (S-arcs on the A side), and `(v, w)` is an edge iff `S_v` and `T_w`
/// are disjoint.
pub fn arcs_to_stick(fam: &ArcFamily) -> Result<(BipartiteGraph, StickRepresentation), BuildError> {
    let report = validate_arc_family(fam);
    if !report.is_ok() {
        return Err(BuildError::InvalidArcFamily(report.violations));
    }

    let n = fam.s_arcs.len();
    let m = fam.t_arcs.len();
    let mut by_id_s = vec![None; n + 1];
    for arc in &fam.s_arcs {
        by_id_s[arc.id] = Some(*arc);
    }
    let mut by_id_t = vec![None; m + 1];
    for arc in &fam.t_arcs {
        by_id_t[arc.id] = Some(*arc);
    }

    let mut edges = Vec::new();
    for v in 1..=n {
        for w in 1..=m {
            let sv = by_id_s[v].unwrap();
            let tw = by_id_t[w].unwrap();
            if !sv.intersects(&tw) {
                edges.push((v, w));
            }
        }
    }
    let graph = BipartiteGraph::new(n, m, edges).expect("ids validated");

    // Fold: mirror the bottom endpoint across the horizontal diameter
    // (theta -> 1/2 - theta), then read the top half-circle as a line via
    // theta -> theta - 3/4 (mod 1), increasing clockwise from s.
    let mirror = |x: Turn| mod1(turn(1, 2) - x);
    let coord = |x: Turn| mod1(x - turn(3, 4));

    let mut placed: Vec<(Turn, Event)> = Vec::new();
    for v in 1..=n {
        let arc = by_id_s[v].unwrap();
        // start is the bottom endpoint, end the top one.
        placed.push((coord(arc.end), Event::ATip(v)));
        placed.push((coord(mirror(arc.start)), Event::AOrigin(v)));
    }
    for w in 1..=m {
        let arc = by_id_t[w].unwrap();
        placed.push((coord(arc.start), Event::BOrigin(w)));
        placed.push((coord(mirror(arc.end)), Event::BTip(w)));
    }
    placed.sort_by(|a, b| a.0.cmp(&b.0));
    let events: Vec<Event> = placed.into_iter().map(|(_, e)| e).collect();
    let rep = StickRepresentation::new(events).expect("fold yields one origin and tip per arc");

    let check = validate_representation(&rep, &graph);
    assert!(
        check.is_ok(),
        "folded representation disagrees with the complement graph: {:?}",
        check.violations
    );
    Ok((graph, rep))
}

/// A chord with two endpoints, in turns measured clockwise from the
/// circle's rightmost point; the horizontal line through that point is
/// crossed iff one endpoint is in `(0, 1/2)` (bottom) and the other in
/// `(1/2, 1)` (top).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chord {
    pub id: usize,
    pub e1: Turn,
    pub e2: Turn,
}

impl Chord {
    fn bottom(&self) -> Turn {
        self.e1.min(self.e2)
    }

    fn top(&self) -> Turn {
        self.e1.max(self.e2)
    }

    /// Do the endpoints of the two chords interleave around the circle?
    pub fn crosses(&self, other: &Chord) -> bool {
        (other.bottom() > self.bottom()) == (other.top() > self.top())
    }
}

/// A family of chords that all cross the horizontal line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordFamily {
    pub chords: Vec<Chord>,
}

/// Output of [`chords_to_stick`]: the graph, its representation, and the
/// derived side assignment (chord ids by side, in vertex order).
#[derive(Debug, Clone)]
pub struct ChordStick {
    pub graph: BipartiteGraph,
    pub rep: StickRepresentation,
    pub a_chords: Vec<usize>,
    pub b_chords: Vec<usize>,
}

fn validate_chord_family(fam: &ChordFamily) -> Vec<String> {
    let mut violations = Vec::new();
    let half = turn(1, 2);
    let mut endpoints: BTreeMap<Turn, usize> = BTreeMap::new();
    for chord in &fam.chords {
        for x in [chord.e1, chord.e2] {
            if x <= turn(0, 1) || x >= turn(1, 1) {
                violations.push(format!("c{}: position out of (0, 1)", chord.id));
            } else if x == half {
                violations.push(format!("c{}: endpoint on the cut line", chord.id));
            }
            if let Some(prev) = endpoints.insert(x, chord.id) {
                violations.push(format!("c{}: endpoint coincides with c{}", chord.id, prev));
            }
        }
        let (lo, hi) = (chord.e1.min(chord.e2), chord.e1.max(chord.e2));
        if !(lo < half && half < hi) {
            violations.push(format!("c{}: chord does not cross the line", chord.id));
        }
    }
    let mut ids: Vec<usize> = fam.chords.iter().map(|c| c.id).collect();
    ids.sort_unstable();
    if ids != (1..=fam.chords.len()).collect::<Vec<_>>() {
        violations.push(format!("chord ids must be exactly 1..={}", fam.chords.len()));
    }
    violations
}

/// Cut-and-unfold a crossing-chord family into a Stick representation of
/// its crossing graph. Fails if the crossing graph is not bipartite or if
/// some crossing pair cannot realize the canonical endpoint order after
/// each component is anchored (the chord whose bottom endpoint is closest
/// to the leftmost point goes on the A side).
pub fn chords_to_stick(fam: &ChordFamily) -> Result<ChordStick, BuildError> {
    let violations = validate_chord_family(fam);
    if !violations.is_empty() {
        return Err(BuildError::InvalidChordFamily(violations));
    }

    let k = fam.chords.len();
    let chords = &fam.chords;
    let crossing: Vec<Vec<usize>> = (0..k)
        .map(|i| (0..k).filter(|&j| j != i && chords[i].crosses(&chords[j])).collect())
        .collect();

    // 2-color each connected component of the crossing graph.
    let mut color: Vec<Option<bool>> = vec![None; k];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for start in 0..k {
        if color[start].is_some() {
            continue;
        }
        let mut comp = vec![start];
        color[start] = Some(false);
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in &crossing[u] {
                match color[w] {
                    None => {
                        color[w] = Some(!color[u].unwrap());
                        comp.push(w);
                        queue.push_back(w);
                    }
                    Some(c) => {
                        if c == color[u].unwrap() {
                            return Err(BuildError::NonBipartiteChords(
                                chords[u].id,
                                chords[w].id,
                            ));
                        }
                    }
                }
            }
        }
        // Anchor: the component's chord whose bottom endpoint is closest
        // to the leftmost point p (largest bottom turn) goes on side A.
        let anchor = *comp
            .iter()
            .max_by_key(|&&i| chords[i].bottom())
            .expect("component is nonempty");
        if color[anchor] == Some(true) {
            for &i in &comp {
                color[i] = Some(!color[i].unwrap());
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    let is_a = |i: usize| color[i] == Some(false);

    // Canonical order check for every crossing pair.
    for i in 0..k {
        for &j in &crossing[i] {
            if is_a(i) && !is_a(j) {
                let (a, b) = (&chords[i], &chords[j]);
                if !(b.top() < a.top() && b.bottom() < a.bottom()) {
                    return Err(BuildError::PropertyPViolation {
                        a_chord: a.id,
                        b_chord: b.id,
                    });
                }
            }
        }
    }

    // Vertex numbering: side A chords ascending by id, likewise side B.
    let mut a_chords: Vec<usize> = (0..k).filter(|&i| is_a(i)).map(|i| chords[i].id).collect();
    let mut b_chords: Vec<usize> = (0..k).filter(|&i| !is_a(i)).map(|i| chords[i].id).collect();
    a_chords.sort_unstable();
    b_chords.sort_unstable();
    let a_index: BTreeMap<usize, usize> =
        a_chords.iter().enumerate().map(|(v, &id)| (id, v + 1)).collect();
    let b_index: BTreeMap<usize, usize> =
        b_chords.iter().enumerate().map(|(w, &id)| (id, w + 1)).collect();

    let mut edges = Vec::new();
    for i in 0..k {
        if !is_a(i) {
            continue;
        }
        for &j in &crossing[i] {
            edges.push((a_index[&chords[i].id], b_index[&chords[j].id]));
        }
    }
    let graph = BipartiteGraph::new(a_chords.len(), b_chords.len(), edges).expect("indexed ids");

    // Unfold each component with line coordinate 1 - theta, then place
    // the components one after another, ordered by leftmost coordinate.
    let unfold = |theta: Turn| turn(1, 1) - theta;
    let mut blocks: Vec<(Turn, Vec<(Turn, Event)>)> = Vec::new();
    for comp in &components {
        let mut block: Vec<(Turn, Event)> = Vec::new();
        for &i in comp {
            let chord = &chords[i];
            if is_a(i) {
                let v = a_index[&chord.id];
                block.push((unfold(chord.top()), Event::ATip(v)));
                block.push((unfold(chord.bottom()), Event::AOrigin(v)));
            } else {
                let w = b_index[&chord.id];
                block.push((unfold(chord.top()), Event::BOrigin(w)));
                block.push((unfold(chord.bottom()), Event::BTip(w)));
            }
        }
        block.sort_by(|a, b| a.0.cmp(&b.0));
        blocks.push((block[0].0, block));
    }
    blocks.sort_by(|a, b| a.0.cmp(&b.0));
    let events: Vec<Event> = blocks
        .into_iter()
        .flat_map(|(_, block)| block.into_iter().map(|(_, e)| e))
        .collect();
    let rep = StickRepresentation::new(events).expect("unfold yields one origin and tip per chord");

    let check = validate_representation(&rep, &graph);
    assert!(
        check.is_ok(),
        "unfolded representation disagrees with the crossing graph: {:?}",
        check.violations
    );
    Ok(ChordStick { graph, rep, a_chords, b_chords })
}

/// Parse an arc file: lines `S <id> <start> <end>` and `T <id> <start>
/// <end>`, positions as decimals in `[0, 1)`. `#` starts a comment.
pub fn parse_arc_family(text: &str) -> Result<ArcFamily, BuildError> {
    let mut fam = ArcFamily { s_arcs: Vec::new(), t_arcs: Vec::new() };
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let malformed = || BuildError::MalformedLine(idx + 1, line.to_string());
        if fields.len() != 4 {
            return Err(malformed());
        }
        let id: usize = fields[1].parse().map_err(|_| malformed())?;
        let start = parse_turn(fields[2])?;
        let end = parse_turn(fields[3])?;
        let arc = Arc { id, start, end };
        match fields[0] {
            "S" => fam.s_arcs.push(arc),
            "T" => fam.t_arcs.push(arc),
            _ => return Err(malformed()),
        }
    }
    Ok(fam)
}

/// Parse a chord file: lines `c <id> <e1> <e2>`, positions as decimals
/// in `(0, 1)`. `#` starts a comment.
pub fn parse_chord_family(text: &str) -> Result<ChordFamily, BuildError> {
    let mut chords = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let malformed = || BuildError::MalformedLine(idx + 1, line.to_string());
        if fields.len() != 4 || fields[0] != "c" {
            return Err(malformed());
        }
        let id: usize = fields[1].parse().map_err(|_| malformed())?;
        chords.push(Chord { id, e1: parse_turn(fields[2])?, e2: parse_turn(fields[3])? });
    }
    Ok(ChordFamily { chords })
}

/// Serialize an arc family; [`parse_arc_family`] inverts this.
pub fn arc_family_to_string(fam: &ArcFamily) -> String {
    let mut out = String::new();
    for arc in &fam.s_arcs {
        out.push_str(&format!("S {} {} {}\n", arc.id, format_turn(arc.start), format_turn(arc.end)));
    }
    for arc in &fam.t_arcs {
        out.push_str(&format!("T {} {} {}\n", arc.id, format_turn(arc.start), format_turn(arc.end)));
    }
    out
}

/// Serialize a chord family; [`parse_chord_family`] inverts this.
pub fn chord_family_to_string(fam: &ChordFamily) -> String {
    let mut out = String::new();
    for chord in &fam.chords {
        out.push_str(&format!("c {} {} {}\n", chord.id, format_turn(chord.e1), format_turn(chord.e2)));
    }
    out
}
