use std::collections::VecDeque;

use super::scc::scc;
use super::{Automaton, StateId};
use crate::error::{Error, Result};

pub(crate) fn reachable_from(a: &Automaton, roots: &[StateId]) -> Vec<bool> {
    let mut seen = vec![false; a.num_states()];
    let mut queue: VecDeque<StateId> = VecDeque::new();
    for &r in roots {
        if !seen[r] {
            seen[r] = true;
            queue.push_back(r);
        }
    }
    while let Some(s) = queue.pop_front() {
        for &(_, t) in a.transitions(s) {
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    seen
}

/// States from which some accepting state on a cycle is reachable, i.e. the
/// states that start at least one accepting run.
pub(crate) fn productive(a: &Automaton) -> Vec<bool> {
    let d = scc(a);
    let n = a.num_states();
    let mut rev: Vec<Vec<StateId>> = vec![Vec::new(); n];
    for (s, _, t) in a.all_transitions() {
        rev[t].push(s);
    }
    let mut good = vec![false; n];
    let mut queue = VecDeque::new();
    for s in a.states() {
        if a.is_accepting(s) && d.nontrivial[d.component[s]] {
            good[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        for &p in &rev[s] {
            if !good[p] {
                good[p] = true;
                queue.push_back(p);
            }
        }
    }
    good
}

/// Removes every state that is not both accessible from an initial state and
/// co-accessible, where co-accessible means an accepting state lying on a
/// cycle is reachable (so that every surviving state starts an accepting run).
///
/// Returns [`Error::EmptyLanguage`] when nothing survives.
pub fn trim(a: &Automaton) -> Result<Automaton> {
    let acc = reachable_from(a, a.initial());
    let co = productive(a);
    let keep: Vec<bool> = a.states().map(|s| acc[s] && co[s]).collect();
    if !keep.iter().any(|&k| k) {
        return Err(Error::EmptyLanguage);
    }
    Ok(a.restrict(&keep, a.initial()))
}

/// Same transitions with every state accepting.
pub fn closure(a: &Automaton) -> Automaton {
    a.with_accepting(vec![true; a.num_states()])
}

/// Every state lying on a nonempty cycle is accepting.
pub fn is_closed(a: &Automaton) -> bool {
    let d = scc(a);
    a.states().all(|s| !d.nontrivial[d.component[s]] || a.is_accepting(s))
}

/// Acceptance is constant on every strongly connected component.
pub fn is_weak(a: &Automaton) -> bool {
    let d = scc(a);
    d.members
        .iter()
        .all(|m| m.iter().all(|&s| a.is_accepting(s) == a.is_accepting(m[0])))
}

/// Components without outgoing condensation edges, as sorted state lists,
/// ordered by their first member.
pub fn sinks(a: &Automaton) -> Vec<Vec<StateId>> {
    let d = scc(a);
    let mut out: Vec<Vec<StateId>> = (0..d.len())
        .filter(|&c| !d.has_outgoing(c))
        .map(|c| d.members[c].clone())
        .collect();
    out.sort();
    out
}

/// Adds a non-accepting sink absorbing every missing `(state, letter)` pair.
/// An already complete automaton is returned unchanged.
pub fn complete(a: &Automaton) -> Result<Automaton> {
    if !a.is_deterministic() {
        return Err(Error::NotDeterministic);
    }
    if a.is_complete() {
        return Ok(a.clone());
    }
    let sink = a.num_states();
    let size = a.radix().alphabet_size();
    let mut out: Vec<Vec<_>> = Vec::with_capacity(sink + 1);
    for s in a.states() {
        let edges = a.transitions(s);
        let mut filled = Vec::with_capacity(size as usize);
        let mut it = edges.iter().peekable();
        for l in 0..size {
            match it.peek() {
                Some(&&(el, t)) if el == l => {
                    filled.push((l, t));
                    it.next();
                }
                _ => filled.push((l, sink)),
            }
        }
        out.push(filled);
    }
    out.push((0..size).map(|l| (l, sink)).collect());
    let mut names = a.names().to_vec();
    names.push(a.fresh_name("sink"));
    let mut accepting: Vec<bool> = a.states().map(|s| a.is_accepting(s)).collect();
    accepting.push(false);
    Ok(Automaton::from_parts(a.radix().clone(), names, out, a.initial().to_vec(), accepting))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::RadixVector;
    use crate::corpus;

    #[test]
    fn distance_graph_trim_is_identity() {
        let a = corpus::fig3();
        assert_eq!(trim(&a).unwrap(), a);
    }

    #[test]
    fn unreachable_state_removed() {
        let mut raw = corpus::fig3().to_raw();
        raw.states.push("q5".into());
        raw.accepting.push("q5".into());
        raw.transitions.push(("q5".into(), vec![0, 0], "q5".into()));
        let a = raw.build().unwrap();
        let t = trim(&a).unwrap();
        assert_eq!(t.num_states(), 4);
        assert!(t.state_id("q5").is_none());
    }

    #[test]
    fn dead_end_removed_and_empty_detected() {
        let rv = RadixVector::uniform(2, 1).unwrap();
        let a = Automaton::builder(rv.clone())
            .initial("a")
            .transition("a", &[0], "b")
            .accepting(&["a", "b"])
            .build();
        assert_eq!(trim(&a), Err(Error::EmptyLanguage));
        // accepting state not on any cycle
        let b = Automaton::builder(rv)
            .initial("a")
            .transition("a", &[0], "b")
            .transition("b", &[0], "c")
            .transition("c", &[0], "c")
            .accepting(&["b"])
            .build();
        assert_eq!(trim(&b), Err(Error::EmptyLanguage));
    }

    #[test]
    fn closure_is_closed_and_idempotent() {
        let a = corpus::fig2();
        let c = closure(&a);
        assert!(is_closed(&c) && is_weak(&c));
        assert_eq!(closure(&c), c);
    }

    #[test]
    fn corpus_predicates() {
        assert!(is_closed(&corpus::fig3()));
        assert!(is_weak(&corpus::fig3()));
        assert!(is_closed(&corpus::fig2()));
    }

    #[test]
    fn rejecting_state_in_accepting_scc_is_not_weak() {
        let rv = RadixVector::uniform(2, 1).unwrap();
        let a = Automaton::builder(rv)
            .initial("a")
            .transition("a", &[0], "b")
            .transition("b", &[1], "a")
            .transition("a", &[1], "a")
            .accepting(&["a"])
            .build();
        assert!(a.is_deterministic());
        assert!(!is_weak(&a));
        assert!(!is_closed(&a));
    }

    #[test]
    fn distance_graph_sinks() {
        let a = corpus::fig3();
        let names: Vec<Vec<&str>> = sinks(&a)
            .iter()
            .map(|s| s.iter().map(|&q| a.name(q)).collect())
            .collect();
        assert_eq!(names, vec![vec!["q2"], vec!["q3"]]);
    }

    #[test]
    fn chain_and_strongly_connected_sinks() {
        let rv = RadixVector::uniform(2, 1).unwrap();
        let chain = Automaton::builder(rv.clone())
            .initial("q0")
            .transition("q0", &[0], "q1")
            .transition("q1", &[0], "q2")
            .build();
        assert_eq!(sinks(&chain), vec![vec![chain.state_id("q2").unwrap()]]);
        let sc = Automaton::builder(rv)
            .initial("a")
            .transition("a", &[0], "b")
            .transition("b", &[0], "a")
            .build();
        assert_eq!(sinks(&sc), vec![vec![0, 1]]);
    }

    #[test]
    fn completion_adds_one_sink() {
        let a = corpus::fig3();
        let c = complete(&a).unwrap();
        assert_eq!(c.num_states(), 5);
        assert!(c.is_complete() && c.is_deterministic());
        let sink = c.state_id("sink").unwrap();
        assert!(!c.is_accepting(sink));
        assert_eq!(complete(&c).unwrap(), c);

        let rv = RadixVector::uniform(3, 1).unwrap();
        let lone = Automaton::builder(rv).initial("a").build();
        let c = complete(&lone).unwrap();
        assert_eq!(c.num_states(), 2);
        assert_eq!(c.num_transitions(), 6);
    }

    #[test]
    fn completion_needs_determinism() {
        let rv = RadixVector::uniform(2, 1).unwrap();
        let a = Automaton::builder(rv)
            .initial("a")
            .transition("a", &[0], "a")
            .transition("a", &[0], "b")
            .build();
        assert_eq!(complete(&a), Err(Error::NotDeterministic));
    }
}
