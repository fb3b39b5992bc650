//! Bundled example automata (the files under `corpus/`).

use crate::automaton::Automaton;
use crate::format::parse;

/// Distance to the Cantor set, 3-accepted, four states.
pub const FIG3_CANTOR_DIST: &str = include_str!("../../../corpus/fig3_cantor_dist.regba");
/// Distance to the Cantor set, 3-recognized, five states.
pub const FIG2_CANTOR_DIST: &str = include_str!("../../../corpus/fig2_cantor_dist.regba");
/// Hilbert curve graph over radix (4,2,2).
pub const HILBERT: &str = include_str!("../../../corpus/fig4_hilbert.regba");
/// Middle-thirds Cantor set.
pub const CANTOR: &str = include_str!("../../../corpus/cantor.regba");
/// Identity graph in base 3.
pub const IDENTITY: &str = include_str!("../../../corpus/identity.regba");

/// `(file name, contents)` for every bundled file.
pub const ALL: [(&str, &str); 5] = [
    ("fig3_cantor_dist.regba", FIG3_CANTOR_DIST),
    ("fig2_cantor_dist.regba", FIG2_CANTOR_DIST),
    ("fig4_hilbert.regba", HILBERT),
    ("cantor.regba", CANTOR),
    ("identity.regba", IDENTITY),
];

fn load(text: &str) -> Automaton {
    parse(text).expect("bundled automaton parses")
}

pub fn fig3() -> Automaton {
    load(FIG3_CANTOR_DIST)
}

pub fn fig2() -> Automaton {
    load(FIG2_CANTOR_DIST)
}

pub fn hilbert() -> Automaton {
    load(HILBERT)
}

pub fn cantor() -> Automaton {
    load(CANTOR)
}

pub fn identity() -> Automaton {
    load(IDENTITY)
}
