//! Bipartite graph model, the graph file format, and generic graph
//! predicates (holes, components, bipartite complement).
//!
//! Vertices are addressed by 1-based indices on each side: `A1..An` and
//! `B1..Bm`. Edges always run between the two sides.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// A vertex of a bipartite graph, tagged with its side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    /// A-side vertex, 1-based.
    A(usize),
    /// B-side vertex, 1-based.
    B(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::A(i) => write!(f, "A{i}"),
            Vertex::B(j) => write!(f, "B{j}"),
        }
    }
}

/// A bipartite graph with `a_count` A-vertices, `b_count` B-vertices and
/// cross edges only. Edge endpoints are 1-based indices into each side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    a_count: usize,
    b_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({0}, {1}) is out of range for a {2}+{3} graph")]
    EdgeOutOfRange(usize, usize, usize, usize),
}

/// Errors from [`parse_graph`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {0}: expected `p stick <n> <m>` header, found `{1}`")]
    BadHeader(usize, String),
    #[error("line {0}: duplicate header")]
    DuplicateHeader(usize),
    #[error("line {0}: malformed line `{1}`")]
    MalformedLine(usize, String),
    #[error("line {0}: {1} {2} out of range")]
    IndexOutOfRange(usize, &'static str, usize),
    #[error("missing `p stick <n> <m>` header")]
    MissingHeader,
}

/// Result of parsing a graph file: the graph plus non-fatal warnings
/// (currently only duplicate edge lines, which are deduplicated).
#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: BipartiteGraph,
    pub warnings: Vec<String>,
}

impl BipartiteGraph {
    /// Build a graph from explicit side sizes and an edge list.
    pub fn new(
        a_count: usize,
        b_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i < 1 || i > a_count || j < 1 || j > b_count {
                return Err(GraphError::EdgeOutOfRange(i, j, a_count, b_count));
            }
            set.insert((i, j));
        }
        Ok(Self { a_count, b_count, edges: set })
    }

    /// Empty graph on `a_count + b_count` vertices.
    pub fn empty(a_count: usize, b_count: usize) -> Self {
        Self { a_count, b_count, edges: BTreeSet::new() }
    }

    pub fn a_count(&self) -> usize {
        self.a_count
    }

    pub fn b_count(&self) -> usize {
        self.b_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a, b))
    }

    /// Edges in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// B-neighbors of `A<a>`, ascending.
    pub fn a_neighbors(&self, a: usize) -> BTreeSet<usize> {
        self.edges
            .range((a, 0)..=(a, usize::MAX))
            .map(|&(_, j)| j)
            .collect()
    }

    /// A-neighbors of `B<b>`, ascending.
    pub fn b_neighbors(&self, b: usize) -> BTreeSet<usize> {
        self.edges
            .iter()
            .filter(|&&(_, j)| j == b)
            .map(|&(i, _)| i)
            .collect()
    }

    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        match v {
            Vertex::A(i) => self.a_neighbors(i).into_iter().map(Vertex::B).collect(),
            Vertex::B(j) => self.b_neighbors(j).into_iter().map(Vertex::A).collect(),
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (1..=self.a_count)
            .map(Vertex::A)
            .chain((1..=self.b_count).map(Vertex::B))
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        match (u, v) {
            (Vertex::A(i), Vertex::B(j)) | (Vertex::B(j), Vertex::A(i)) => self.has_edge(i, j),
            _ => false,
        }
    }

    /// The bipartite complement: `(i, j)` is an edge iff it is not one here.
    /// Applying this twice returns the original graph.
    pub fn bipartite_complement(&self) -> Self {
        let mut edges = BTreeSet::new();
        for i in 1..=self.a_count {
            for j in 1..=self.b_count {
                if !self.has_edge(i, j) {
                    edges.insert((i, j));
                }
            }
        }
        Self { a_count: self.a_count, b_count: self.b_count, edges }
    }

    /// The same graph with the A and B sides exchanged.
    pub fn side_swapped(&self) -> Self {
        Self {
            a_count: self.b_count,
            b_count: self.a_count,
            edges: self.edges.iter().map(|&(i, j)| (j, i)).collect(),
        }
    }

    /// Partition of the vertex set into maximal connected parts. Parts are
    /// sorted by their smallest vertex; vertices within a part are sorted.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let mut seen: BTreeSet<Vertex> = BTreeSet::new();
        let mut parts = Vec::new();
        for start in self.vertices() {
            if seen.contains(&start) {
                continue;
            }
            let mut part = vec![start];
            seen.insert(start);
            let mut queue = vec![start];
            while let Some(u) = queue.pop() {
                for w in self.neighbors(u) {
                    if seen.insert(w) {
                        part.push(w);
                        queue.push(w);
                    }
                }
            }
            part.sort();
            parts.push(part);
        }
        parts
    }

    /// Serialize to the graph file format. `parse_graph` inverts this.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("p stick {} {}\n", self.a_count, self.b_count);
        for (i, j) in &self.edges {
            out.push_str(&format!("e {i} {j}\n"));
        }
        out
    }
}

/// Parse the graph file format.
///
/// The format is line oriented UTF-8 text: `#` starts a comment line, the
/// first non-comment line must be the header `p stick <n> <m>`, and every
/// other line is an edge `e <i> <j>` with 1-based indices (`i` on the A
/// side, `j` on the B side). Duplicate edges are deduplicated and reported
/// as warnings.
pub fn parse_graph(text: &str) -> Result<ParsedGraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut warnings = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(ParseError::DuplicateHeader(lineno));
                }
                if fields.len() != 4 || fields[1] != "stick" {
                    return Err(ParseError::BadHeader(lineno, line.to_string()));
                }
                let n = fields[2]
                    .parse()
                    .map_err(|_| ParseError::BadHeader(lineno, line.to_string()))?;
                let m = fields[3]
                    .parse()
                    .map_err(|_| ParseError::BadHeader(lineno, line.to_string()))?;
                header = Some((n, m));
            }
            "e" => {
                let (n, m) = header.ok_or(ParseError::MissingHeader)?;
                if fields.len() != 3 {
                    return Err(ParseError::MalformedLine(lineno, line.to_string()));
                }
                let i: usize = fields[1]
                    .parse()
                    .map_err(|_| ParseError::MalformedLine(lineno, line.to_string()))?;
                let j: usize = fields[2]
                    .parse()
                    .map_err(|_| ParseError::MalformedLine(lineno, line.to_string()))?;
                if i < 1 || i > n {
                    return Err(ParseError::IndexOutOfRange(lineno, "A-index", i));
                }
                if j < 1 || j > m {
                    return Err(ParseError::IndexOutOfRange(lineno, "B-index", j));
                }
                if !edges.insert((i, j)) {
                    warnings.push(format!("line {lineno}: duplicate edge ({i}, {j})"));
                }
            }
            _ => return Err(ParseError::MalformedLine(lineno, line.to_string())),
        }
    }

    let (a_count, b_count) = header.ok_or(ParseError::MissingHeader)?;
    Ok(ParsedGraph {
        graph: BipartiteGraph { a_count, b_count, edges },
        warnings,
    })
}

/// An induced cycle of length at least six (always even in a bipartite
/// graph), listed as a cyclic vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hole {
    vertices: Vec<Vertex>,
}

impl Hole {
    /// Wrap a cyclic vertex sequence after checking the hole invariants:
    /// length >= 6, consecutive vertices adjacent, all other pairs
    /// non-adjacent, no repeats.
    pub fn new(g: &BipartiteGraph, vertices: Vec<Vertex>) -> Option<Self> {
        let k = vertices.len();
        if k < 6 {
            return None;
        }
        if vertices.iter().collect::<BTreeSet<_>>().len() != k {
            return None;
        }
        for p in 0..k {
            for q in (p + 1)..k {
                let consecutive = q == p + 1 || (p == 0 && q == k - 1);
                if g.adjacent(vertices[p], vertices[q]) != consecutive {
                    return None;
                }
            }
        }
        Some(Self { vertices })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Find some induced cycle of length >= 6, or `None` if the graph has none.
///
/// For every induced path `a - b - c`, a hole through `b` exists iff `a`
/// and `c` are still connected after deleting `N[b] - {a, c}` and the
/// common neighbors of `a` and `c`: the interior of a shortest such path
/// cannot touch `b` or close a 4-cycle, so gluing `b` back in yields an
/// induced cycle on at least five (here six) vertices. Conversely any hole
/// contains such a triple.
pub fn find_hole(g: &BipartiteGraph) -> Option<Hole> {
    let verts: Vec<Vertex> = g.vertices().collect();
    for &b in &verts {
        let nb = g.neighbors(b);
        for (ai, &a) in nb.iter().enumerate() {
            for &c in nb.iter().skip(ai + 1) {
                if g.adjacent(a, c) {
                    continue;
                }
                // Forbid N[b] - {a, c} and common neighbors of a and c.
                let mut banned: BTreeSet<Vertex> = nb.iter().copied().collect();
                banned.insert(b);
                banned.remove(&a);
                banned.remove(&c);
                for &x in &verts {
                    if x != b && g.adjacent(a, x) && g.adjacent(c, x) {
                        banned.insert(x);
                    }
                }
                if let Some(path) = shortest_path_avoiding(g, a, c, &banned) {
                    let mut cycle = vec![b];
                    cycle.extend(path);
                    let hole = Hole::new(g, cycle)
                        .expect("shortest chordless path plus apex must form a hole");
                    return Some(hole);
                }
            }
        }
    }
    None
}

/// BFS shortest path from `from` to `to` that avoids `banned` vertices and
/// does not use the direct edge. Returns the path including endpoints.
fn shortest_path_avoiding(
    g: &BipartiteGraph,
    from: Vertex,
    to: Vertex,
    banned: &BTreeSet<Vertex>,
) -> Option<Vec<Vertex>> {
    use std::collections::{BTreeMap, VecDeque};
    let mut prev: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut queue = VecDeque::new();
    queue.push_back(from);
    prev.insert(from, from);
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u) {
            if banned.contains(&w) || prev.contains_key(&w) {
                continue;
            }
            prev.insert(w, u);
            if w == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = prev[&cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(w);
        }
    }
    None
}
