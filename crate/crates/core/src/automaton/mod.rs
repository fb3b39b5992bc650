//! Büchi automata over digit-tuple alphabets and their structural algorithms.
//!
//! States carry the names they were given (parsed from a file or assigned by
//! a construction). Internally they are dense indices; the index order is an
//! implementation detail and serialization sorts by name.

mod paths;
mod scc;
mod structure;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::alphabet::{DigitTuple, Letter, RadixVector};
use crate::error::{Error, Result};

pub use paths::{path_label_count, path_label_count_any, PathCount, MAX_PATH_LABELS};
pub use scc::{scc, tarjan, SccDecomposition};
pub use structure::{closure, complete, is_closed, is_weak, sinks, trim};

pub type StateId = usize;

/// A Büchi automaton `(Q, Σ_r, Δ, I, F)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    radix: RadixVector,
    names: Vec<String>,
    // per state, sorted by (letter, target), no duplicates
    out: Vec<Vec<(Letter, StateId)>>,
    initial: Vec<StateId>,
    accepting: Vec<bool>,
}

impl Automaton {
    /// Assembles an automaton from dense parts. Transition lists are sorted and
    /// deduplicated; the caller guarantees indices are in bounds.
    pub(crate) fn from_parts(
        radix: RadixVector,
        names: Vec<String>,
        mut out: Vec<Vec<(Letter, StateId)>>,
        mut initial: Vec<StateId>,
        accepting: Vec<bool>,
    ) -> Self {
        debug_assert_eq!(names.len(), out.len());
        debug_assert_eq!(names.len(), accepting.len());
        for edges in &mut out {
            edges.sort_unstable();
            edges.dedup();
        }
        initial.sort_unstable();
        initial.dedup();
        Automaton { radix, names, out, initial, accepting }
    }

    /// Automaton with states named `s0, s1, …` in index order.
    pub(crate) fn numbered(
        radix: RadixVector,
        out: Vec<Vec<(Letter, StateId)>>,
        initial: Vec<StateId>,
        accepting: Vec<bool>,
    ) -> Self {
        let names = (0..out.len()).map(|i| format!("s{i}")).collect();
        Self::from_parts(radix, names, out, initial, accepting)
    }

    pub fn builder(radix: RadixVector) -> AutomatonBuilder {
        AutomatonBuilder { radix, names: Vec::new(), index: HashMap::new(), out: Vec::new(), initial: Vec::new(), accepting: Vec::new() }
    }

    pub fn radix(&self) -> &RadixVector {
        &self.radix
    }

    pub fn arity(&self) -> usize {
        self.radix.arity()
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn states(&self) -> std::ops::Range<StateId> {
        0..self.names.len()
    }

    pub fn name(&self, s: StateId) -> &str {
        &self.names[s]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require_state(&self, name: &str) -> Result<StateId> {
        self.state_id(name).ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    /// Outgoing transitions of `s`, sorted by letter.
    pub fn transitions(&self, s: StateId) -> &[(Letter, StateId)] {
        &self.out[s]
    }

    /// Iterates all transitions as `(source, letter, target)`.
    pub fn all_transitions(&self) -> impl Iterator<Item = (StateId, Letter, StateId)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(s, edges)| edges.iter().map(move |&(l, t)| (s, l, t)))
    }

    pub fn successors(&self, s: StateId, letter: Letter) -> impl Iterator<Item = StateId> + '_ {
        let edges = &self.out[s];
        let start = edges.partition_point(|&(l, _)| l < letter);
        edges[start..].iter().take_while(move |&&(l, _)| l == letter).map(|&(_, t)| t)
    }

    /// The unique successor in a deterministic automaton.
    pub fn step(&self, s: StateId, letter: Letter) -> Option<StateId> {
        self.successors(s, letter).next()
    }

    pub fn initial(&self) -> &[StateId] {
        &self.initial
    }

    pub fn is_initial(&self, s: StateId) -> bool {
        self.initial.binary_search(&s).is_ok()
    }

    pub fn is_accepting(&self, s: StateId) -> bool {
        self.accepting[s]
    }

    pub fn accepting(&self) -> impl Iterator<Item = StateId> + '_ {
        self.states().filter(|&s| self.accepting[s])
    }

    pub fn is_deterministic(&self) -> bool {
        self.initial.len() == 1
            && self.out.iter().all(|edges| edges.windows(2).all(|w| w[0].0 != w[1].0))
    }

    pub fn is_complete(&self) -> bool {
        let size = self.radix.alphabet_size() as usize;
        self.out.iter().all(|edges| {
            let mut letters: Vec<Letter> = edges.iter().map(|&(l, _)| l).collect();
            letters.dedup();
            letters.len() == size
        })
    }

    /// Same automaton with a different initial set.
    pub fn with_initial(&self, initial: Vec<StateId>) -> Automaton {
        Self::from_parts(self.radix.clone(), self.names.clone(), self.out.clone(), initial, self.accepting.clone())
    }

    pub fn with_accepting(&self, accepting: Vec<bool>) -> Automaton {
        Automaton { accepting, ..self.clone() }
    }

    /// `A_{Q1,Q2}`: the automaton restricted to the states marked in `keep`,
    /// with initial states `initial` (which must be kept).
    pub fn restrict(&self, keep: &[bool], initial: &[StateId]) -> Automaton {
        let mut new_id = vec![usize::MAX; self.num_states()];
        let mut names = Vec::new();
        let mut accepting = Vec::new();
        for s in self.states().filter(|&s| keep[s]) {
            new_id[s] = names.len();
            names.push(self.names[s].clone());
            accepting.push(self.accepting[s]);
        }
        let out = self
            .states()
            .filter(|&s| keep[s])
            .map(|s| {
                self.out[s]
                    .iter()
                    .filter(|&&(_, t)| keep[t])
                    .map(|&(l, t)| (l, new_id[t]))
                    .collect()
            })
            .collect();
        let initial = initial.iter().filter(|&&s| keep[s]).map(|&s| new_id[s]).collect();
        Self::from_parts(self.radix.clone(), names, out, initial, accepting)
    }

    /// Returns the diagnostics for a built automaton. Only an empty initial set
    /// can be reported here; the other invariants are enforced on construction.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut diags = Vec::new();
        if self.initial.is_empty() {
            diags.push(Diagnostic::EmptyInitial);
        }
        diags
    }

    pub fn to_raw(&self) -> RawAutomaton {
        RawAutomaton {
            radix: self.radix.radices().to_vec(),
            states: self.names.clone(),
            initial: self.initial.iter().map(|&s| self.names[s].clone()).collect(),
            accepting: self.accepting().map(|s| self.names[s].clone()).collect(),
            transitions: self
                .all_transitions()
                .map(|(s, l, t)| (self.names[s].clone(), self.radix.decode(l), self.names[t].clone()))
                .collect(),
        }
    }

    /// Fresh state name not yet used, based on `base`.
    pub(crate) fn fresh_name(&self, base: &str) -> String {
        let taken: BTreeSet<&str> = self.names.iter().map(String::as_str).collect();
        if !taken.contains(base) {
            return base.to_string();
        }
        (1..).map(|i| format!("{base}{i}")).find(|n| !taken.contains(n.as_str())).unwrap()
    }
}

impl fmt::Display for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::serialize(self))
    }
}

/// Incremental construction by state name.
#[derive(Debug)]
pub struct AutomatonBuilder {
    radix: RadixVector,
    names: Vec<String>,
    index: HashMap<String, StateId>,
    out: Vec<Vec<(Letter, StateId)>>,
    initial: Vec<StateId>,
    accepting: Vec<bool>,
}

impl AutomatonBuilder {
    /// Declares a state (idempotent) and returns its index.
    pub fn state(&mut self, name: &str) -> StateId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        self.out.push(Vec::new());
        self.accepting.push(false);
        id
    }

    pub fn initial(mut self, name: &str) -> Self {
        let id = self.state(name);
        self.initial.push(id);
        self
    }

    pub fn accepting(mut self, names: &[&str]) -> Self {
        for n in names {
            let id = self.state(n);
            self.accepting[id] = true;
        }
        self
    }

    /// Marks every state declared so far as accepting.
    pub fn all_accepting(mut self) -> Self {
        self.accepting.iter_mut().for_each(|a| *a = true);
        self
    }

    pub fn transition(mut self, src: &str, digits: &[u32], dst: &str) -> Self {
        self.add_transition(src, digits, dst);
        self
    }

    pub fn add_transition(&mut self, src: &str, digits: &[u32], dst: &str) {
        assert!(self.radix.in_range(digits), "digits {digits:?} out of range");
        let s = self.state(src);
        let t = self.state(dst);
        let l = self.radix.encode(digits);
        self.out[s].push((l, t));
    }

    pub fn build(self) -> Automaton {
        Automaton::from_parts(self.radix, self.names, self.out, self.initial, self.accepting)
    }
}

/// Textual, unchecked description of an automaton (what a file contains).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RawAutomaton {
    pub radix: Vec<u32>,
    pub states: Vec<String>,
    pub initial: Vec<String>,
    pub accepting: Vec<String>,
    pub transitions: Vec<(String, Vec<u32>, String)>,
}

/// One violated invariant of a [`RawAutomaton`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Diagnostic {
    BadRadix { radix: Vec<u32> },
    DuplicateState { state: String },
    DanglingState { state: String, context: String },
    ArityMismatch { transition: usize, expected: usize, found: usize },
    DigitOutOfRange { transition: usize, coordinate: usize, digit: u32, radix: u32 },
    EmptyInitial,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::BadRadix { radix } => write!(f, "bad radix vector {radix:?}"),
            Diagnostic::DuplicateState { state } => write!(f, "state `{state}` declared twice"),
            Diagnostic::DanglingState { state, context } => {
                write!(f, "undeclared state `{state}` used in {context}")
            }
            Diagnostic::ArityMismatch { transition, expected, found } => {
                write!(f, "transition #{transition} has {found} digits, radix has {expected}")
            }
            Diagnostic::DigitOutOfRange { transition, coordinate, digit, radix } => {
                write!(f, "transition #{transition}: digit {digit} at coordinate {coordinate} is not below radix {radix}")
            }
            Diagnostic::EmptyInitial => write!(f, "no initial state"),
        }
    }
}

impl RawAutomaton {
    /// Every violated invariant, in a fixed order. Empty iff [`build`](Self::build) succeeds.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut diags = Vec::new();
        if self.radix.is_empty() || self.radix.iter().any(|&r| r < 2) || RadixVector::new(self.radix.clone()).is_err() {
            diags.push(Diagnostic::BadRadix { radix: self.radix.clone() });
        }
        let mut declared = BTreeSet::new();
        for s in &self.states {
            if !declared.insert(s.as_str()) {
                diags.push(Diagnostic::DuplicateState { state: s.clone() });
            }
        }
        let check = |s: &String, context: String, diags: &mut Vec<Diagnostic>| {
            if !declared.contains(s.as_str()) {
                diags.push(Diagnostic::DanglingState { state: s.clone(), context });
            }
        };
        for s in &self.initial {
            check(s, "initial".into(), &mut diags);
        }
        for s in &self.accepting {
            check(s, "accepting".into(), &mut diags);
        }
        for (i, (src, digits, dst)) in self.transitions.iter().enumerate() {
            check(src, format!("transition #{i}"), &mut diags);
            check(dst, format!("transition #{i}"), &mut diags);
            if digits.len() != self.radix.len() {
                diags.push(Diagnostic::ArityMismatch { transition: i, expected: self.radix.len(), found: digits.len() });
                continue;
            }
            for (c, (&d, &r)) in digits.iter().zip(&self.radix).enumerate() {
                if d >= r {
                    diags.push(Diagnostic::DigitOutOfRange { transition: i, coordinate: c, digit: d, radix: r });
                }
            }
        }
        if self.initial.is_empty() {
            diags.push(Diagnostic::EmptyInitial);
        }
        diags
    }

    pub fn build(&self) -> Result<Automaton> {
        let diags = self.validate();
        if !diags.is_empty() {
            return Err(Error::Invalid(diags));
        }
        let radix = RadixVector::new(self.radix.clone())?;
        let mut b = Automaton::builder(radix);
        for s in &self.states {
            b.state(s);
        }
        for (src, digits, dst) in &self.transitions {
            b.add_transition(src, digits, dst);
        }
        for s in &self.initial {
            b = b.initial(s);
        }
        let acc: Vec<&str> = self.accepting.iter().map(String::as_str).collect();
        Ok(b.accepting(&acc).build())
    }

    pub fn transition_label(&self, i: usize) -> String {
        DigitTuple(self.transitions[i].1.clone()).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn distance_graph_is_valid() {
        let raw = crate::format::parse_raw(corpus::FIG3_CANTOR_DIST).unwrap();
        assert_eq!(raw.validate(), vec![]);
    }

    #[test]
    fn out_of_range_digit_is_one_diagnostic() {
        let raw = RawAutomaton {
            radix: vec![3],
            states: vec!["a".into()],
            initial: vec!["a".into()],
            accepting: vec!["a".into()],
            transitions: vec![("a".into(), vec![3], "a".into())],
        };
        let diags = raw.validate();
        assert_eq!(diags.len(), 1);
        assert!(matches!(diags[0], Diagnostic::DigitOutOfRange { digit: 3, radix: 3, .. }));
        assert!(matches!(raw.build(), Err(Error::Invalid(_))));
    }

    #[test]
    fn empty_initial_is_one_diagnostic() {
        let raw = RawAutomaton {
            radix: vec![2],
            states: vec!["a".into()],
            initial: vec![],
            accepting: vec![],
            transitions: vec![("a".into(), vec![1], "a".into())],
        };
        assert_eq!(raw.validate(), vec![Diagnostic::EmptyInitial]);
    }

    #[test]
    fn dangling_state_reported() {
        let raw = RawAutomaton {
            radix: vec![2],
            states: vec!["a".into()],
            initial: vec!["a".into()],
            accepting: vec!["b".into()],
            transitions: vec![("a".into(), vec![1], "c".into())],
        };
        let diags = raw.validate();
        assert_eq!(diags.len(), 2);
        assert!(diags.iter().all(|d| matches!(d, Diagnostic::DanglingState { .. })));
    }

    #[test]
    fn determinism_and_completeness() {
        let fig3 = corpus::fig3();
        assert!(fig3.is_deterministic());
        assert!(!fig3.is_complete());
        let rv = RadixVector::uniform(2, 1).unwrap();
        let full = Automaton::builder(rv)
            .initial("a")
            .transition("a", &[0], "a")
            .transition("a", &[1], "a")
            .all_accepting()
            .build();
        assert!(full.is_complete());
        assert!(full.is_deterministic());
    }
}
