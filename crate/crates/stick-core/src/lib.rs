//! Stick graphs are the intersection graphs of vertical and horizontal
//! segments whose bottom (respectively left) endpoints lie on a common
//! ground line of slope -1. Reading that ground line as the real line
//! turns a drawing into a *flat representation*: a total order of origin
//! and tip events in which the segments of `A_i` and `B_j` intersect
//! exactly when `T(a_i) < b_j < a_i < T(b_j)`.
//!
//! This crate provides, on top of that model:
//!
//! - a bipartite graph type with a line-oriented file format ([`graph`]);
//! - event sequences, validation and induced graphs ([`rep`]), plus SVG
//!   rendering ([`render`]);
//! - the structural analysis of vertex pairs in a valid representation:
//!   neighborhood partitions, configurations, regions, and partner
//!   placement checks ([`structure`]);
//! - a polynomial-time certifier that proves some graphs have no
//!   representation at all, with re-checkable certificates
//!   ([`obstructions`]);
//! - an exact recognizer for small graphs by pruned backtracking over
//!   origin orders ([`recognizer`]);
//! - constructions that turn two-clique circular-arc families and
//!   line-crossing chord families into representations ([`builders`]);
//! - deterministic generators for named graph families and random
//!   instances ([`generators`]).
//!
//! ```
//! use stick_core::{parse_graph, recognize, validate_representation, SearchBudget};
//!
//! let g = parse_graph("p stick 2 2\ne 1 1\ne 1 2\ne 2 1\ne 2 2\n").unwrap().graph;
//! match recognize(&g, SearchBudget::default()) {
//!     stick_core::RecognitionResult::Stick(rep) => {
//!         assert!(validate_representation(&rep, &g).is_ok());
//!     }
//!     other => panic!("K22 is a Stick graph, got {other:?}"),
//! }
//! ```

pub mod builders;
pub mod generators;
pub mod graph;
pub mod obstructions;
pub mod recognizer;
pub mod render;
pub mod rep;
pub mod structure;

pub use builders::{
    arc_family_to_string, arcs_to_stick, chord_family_to_string, chords_to_stick,
    parse_arc_family, parse_chord_family, validate_arc_family, Arc, ArcFamily, ArcFamilyReport,
    BuildError, Chord, ChordFamily, ChordStick, Turn,
};
pub use generators::{
    gen_even_cycle, gen_jk, gen_path, gen_py2, gen_random_arc_family,
    gen_random_bipartite_permutation, gen_random_chord_family, gen_random_interval_bigraph,
    gen_random_representation, gen_random_tree, GenError,
};
pub use graph::{
    find_hole, parse_graph, BipartiteGraph, GraphError, Hole, ParseError, ParsedGraph, Vertex,
};
pub use obstructions::{
    certify_non_stick, pair_obstructions, CertificateError, NonStickCertificate, ObstructionCase,
    Side, Witness,
};
pub use recognizer::{
    exhaustive_recognize_tiny, greedy_tips, recognize, RecognitionResult, RecognizerError,
    SearchBudget,
};
pub use render::{render, RenderStyle};
pub use rep::{
    parse_representation, validate_representation, Event, RepError, RepParseError,
    StickRepresentation, ValidationReport, Violation,
};
pub use structure::{
    check_forbidden_pairs, check_table2, classify_configuration, mate_class, overlapping_mates,
    partition_neighborhoods, B3Split, BPart, ConfigKind, Configuration, ForbiddenPairViolation,
    ForbiddenPairsReport, MateClass, NeighborhoodPartition, PairCheck, PartnerCheck, Region,
    StructureError, Table2Report,
};

#[cfg(doctest)]
mod book {
    //! Keeps the guide's code snippets compiling and passing: each chapter
    //! is pulled in as a doctest source.
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }

    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(representations, "../../../book/src/representations.md");
    chapter!(graphs_and_files, "../../../book/src/graphs-and-files.md");
    chapter!(pair_structure, "../../../book/src/pair-structure.md");
    chapter!(certificates, "../../../book/src/certificates.md");
    chapter!(recognition, "../../../book/src/recognition.md");
    chapter!(geometric_builders, "../../../book/src/geometric-builders.md");
    chapter!(generators, "../../../book/src/generators.md");
    chapter!(command_line, "../../../book/src/command-line.md");
}
