//! Language-level operations: products, projection, determinization of closed
//! automata, complementation of deterministic weak automata, emptiness and
//! universality with lasso witnesses.
//!
//! Determinization is restricted to closed automata. A closed automaton
//! accepts exactly the words that have an infinite run (every state visited
//! infinitely often lies on a cycle, hence is accepting), so its language is a
//! safety language and the plain subset construction is exact for it.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::{Letter, RadixVector};
use crate::automaton::{complete, is_closed, is_weak, scc, trim, Automaton, StateId};
use crate::error::{Error, Result};
use crate::lasso::Lasso;

/// Product and subset constructions refuse to build more states than this.
pub const MAX_CONSTRUCTED_STATES: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Emptiness {
    Empty,
    /// Some accepted word.
    NonEmpty(Lasso),
}

impl Emptiness {
    pub fn is_empty(&self) -> bool {
        matches!(self, Emptiness::Empty)
    }

    pub fn witness(&self) -> Option<&Lasso> {
        match self {
            Emptiness::Empty => None,
            Emptiness::NonEmpty(w) => Some(w),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Universality {
    Universal,
    /// Some rejected word.
    Counterexample(Lasso),
}

impl Universality {
    pub fn is_universal(&self) -> bool {
        matches!(self, Universality::Universal)
    }

    pub fn counterexample(&self) -> Option<&Lasso> {
        match self {
            Universality::Universal => None,
            Universality::Counterexample(w) => Some(w),
        }
    }
}

fn check_radix(a: &Automaton, b: &Automaton) -> Result<()> {
    if a.radix() != b.radix() {
        return Err(Error::RadixMismatch { left: a.radix().radices().to_vec(), right: b.radix().radices().to_vec() });
    }
    Ok(())
}

struct StateTable<K> {
    ids: HashMap<K, StateId>,
    keys: Vec<K>,
}

impl<K: std::hash::Hash + Eq + Clone> StateTable<K> {
    fn new() -> Self {
        StateTable { ids: HashMap::new(), keys: Vec::new() }
    }

    /// Returns `(id, fresh)`.
    fn intern(&mut self, key: K) -> Result<(StateId, bool)> {
        if let Some(&id) = self.ids.get(&key) {
            return Ok((id, false));
        }
        if self.keys.len() >= MAX_CONSTRUCTED_STATES {
            return Err(Error::ResourceCap(format!("more than {MAX_CONSTRUCTED_STATES} constructed states")));
        }
        let id = self.keys.len();
        self.ids.insert(key.clone(), id);
        self.keys.push(key);
        Ok((id, true))
    }
}

/// Conjunction of two relations over a shared tape space.
///
/// The result reads `radix.arity()` tapes; tape `i` of `a` is result tape
/// `a_tapes[i]`, likewise for `b`. Tapes read by both must agree, and every
/// result tape must be read by at least one side. Accepting states are pairs
/// accepting on both sides, which is language-correct because both inputs
/// must be weak.
pub fn join(a: &Automaton, a_tapes: &[usize], b: &Automaton, b_tapes: &[usize], radix: &RadixVector) -> Result<Automaton> {
    let n = radix.arity();
    let bad = |keep: &[usize]| Error::BadCoordinates { keep: keep.to_vec(), arity: n };
    if a_tapes.len() != a.arity() || a_tapes.iter().any(|&t| t >= n) {
        return Err(bad(a_tapes));
    }
    if b_tapes.len() != b.arity() || b_tapes.iter().any(|&t| t >= n) {
        return Err(bad(b_tapes));
    }
    for (i, &t) in a_tapes.iter().enumerate() {
        if a.radix().radix(i) != radix.radix(t) {
            return Err(Error::RadixMismatch { left: a.radix().radices().to_vec(), right: radix.radices().to_vec() });
        }
    }
    for (j, &t) in b_tapes.iter().enumerate() {
        if b.radix().radix(j) != radix.radix(t) {
            return Err(Error::RadixMismatch { left: b.radix().radices().to_vec(), right: radix.radices().to_vec() });
        }
    }
    if (0..n).any(|t| !a_tapes.contains(&t) && !b_tapes.contains(&t)) {
        return Err(bad(&[a_tapes, b_tapes].concat()));
    }
    if !is_weak(a) || !is_weak(b) {
        return Err(Error::NotWeak);
    }

    let unit = |t: usize| radix.encode(&(0..n).map(|i| u32::from(i == t)).collect::<Vec<_>>());
    let strides: Vec<Letter> = (0..n).map(unit).collect();
    // b tapes shared with a, as (b index, a index)
    let shared: Vec<(usize, usize)> = b_tapes
        .iter()
        .enumerate()
        .filter_map(|(j, t)| a_tapes.iter().position(|u| u == t).map(|i| (j, i)))
        .collect();
    let key_of = |digits: &[u32], idx: &dyn Fn(&(usize, usize)) -> usize| -> u64 {
        shared.iter().fold(0u64, |k, p| k * 1024 + digits[idx(p)] as u64)
    };

    // b transitions grouped by shared-tape key, carrying the letter part of b-only tapes
    let mut digits = Vec::new();
    let b_groups: Vec<HashMap<u64, Vec<(Letter, StateId)>>> = b
        .states()
        .map(|q| {
            let mut groups: HashMap<u64, Vec<(Letter, StateId)>> = HashMap::new();
            for &(l, q2) in b.transitions(q) {
                b.radix().decode_into(l, &mut digits);
                let key = key_of(&digits, &|p| p.0);
                let part: Letter = b_tapes
                    .iter()
                    .enumerate()
                    .filter(|(_, t)| !a_tapes.contains(t))
                    .map(|(j, &t)| digits[j] * strides[t])
                    .sum();
                groups.entry(key).or_default().push((part, q2));
            }
            groups
        })
        .collect();
    // a letters, translated once
    let mut a_cache: HashMap<Letter, (u64, Letter)> = HashMap::new();
    let mut a_part = |l: Letter| -> (u64, Letter) {
        *a_cache.entry(l).or_insert_with(|| {
            let d = a.radix().decode(l);
            let key = key_of(&d, &|p| p.1);
            let part = a_tapes.iter().enumerate().map(|(i, &t)| d[i] * strides[t]).sum();
            (key, part)
        })
    };

    let mut table = StateTable::new();
    let mut queue = VecDeque::new();
    let mut initial = Vec::new();
    for &p in a.initial() {
        for &q in b.initial() {
            let (id, fresh) = table.intern((p, q))?;
            initial.push(id);
            if fresh {
                queue.push_back(id);
            }
        }
    }
    let mut out: Vec<Vec<(Letter, StateId)>> = Vec::new();
    while let Some(id) = queue.pop_front() {
        let (p, q) = table.keys[id];
        let mut edges = Vec::new();
        for &(la, p2) in a.transitions(p) {
            let (key, part_a) = a_part(la);
            if let Some(group) = b_groups[q].get(&key) {
                for &(part_b, q2) in group {
                    let (t, fresh) = table.intern((p2, q2))?;
                    if fresh {
                        queue.push_back(t);
                    }
                    edges.push((part_a + part_b, t));
                }
            }
        }
        if out.len() <= id {
            out.resize(id + 1, Vec::new());
        }
        out[id] = edges;
    }
    out.resize(table.keys.len(), Vec::new());
    let accepting = table.keys.iter().map(|&(p, q)| a.is_accepting(p) && b.is_accepting(q)).collect();
    Ok(Automaton::numbered(radix.clone(), out, initial, accepting))
}

/// `L(a) ∩ L(b)` for weak automata over the same radix vector.
pub fn product_intersect(a: &Automaton, b: &Automaton) -> Result<Automaton> {
    check_radix(a, b)?;
    let tapes: Vec<usize> = (0..a.arity()).collect();
    join(a, &tapes, b, &tapes, a.radix())
}

/// `L(a) ∪ L(b)` for deterministic complete weak automata.
pub fn product_union(a: &Automaton, b: &Automaton) -> Result<Automaton> {
    check_radix(a, b)?;
    for x in [a, b] {
        if !x.is_deterministic() {
            return Err(Error::NotDeterministic);
        }
        if !x.is_complete() {
            return Err(Error::NotComplete);
        }
        if !is_weak(x) {
            return Err(Error::NotWeak);
        }
    }
    let mut table = StateTable::new();
    let (start, _) = table.intern((a.initial()[0], b.initial()[0]))?;
    let mut queue = VecDeque::from([start]);
    let mut out: Vec<Vec<(Letter, StateId)>> = vec![Vec::new()];
    while let Some(id) = queue.pop_front() {
        let (p, q) = table.keys[id];
        let mut edges = Vec::new();
        for (&(l, p2), &(lb, q2)) in a.transitions(p).iter().zip(b.transitions(q)) {
            debug_assert_eq!(l, lb);
            let (t, fresh) = table.intern((p2, q2))?;
            if fresh {
                queue.push_back(t);
                out.push(Vec::new());
            }
            edges.push((l, t));
        }
        out[id] = edges;
    }
    let accepting = table.keys.iter().map(|&(p, q)| a.is_accepting(p) || b.is_accepting(q)).collect();
    Ok(Automaton::numbered(a.radix().clone(), out, vec![start], accepting))
}

/// Relabels every transition by the tapes listed in `map` (result tape `j`
/// reads source tape `map[j]`). Tapes may be dropped or reordered.
pub fn relabel(a: &Automaton, map: &[usize]) -> Result<Automaton> {
    if map.is_empty() || map.iter().any(|&c| c >= a.arity()) {
        return Err(Error::BadCoordinates { keep: map.to_vec(), arity: a.arity() });
    }
    let target = a.radix().select(map)?;
    let mut digits = Vec::new();
    let mut picked = Vec::with_capacity(map.len());
    let out = a
        .states()
        .map(|s| {
            a.transitions(s)
                .iter()
                .map(|&(l, t)| {
                    a.radix().decode_into(l, &mut digits);
                    picked.clear();
                    picked.extend(map.iter().map(|&c| digits[c]));
                    (target.encode(&picked), t)
                })
                .collect()
        })
        .collect();
    let accepting = a.states().map(|s| a.is_accepting(s)).collect();
    Ok(Automaton::from_parts(target, a.names().to_vec(), out, a.initial().to_vec(), accepting))
}

/// Existential projection onto the listed coordinates (strictly increasing).
pub fn project(a: &Automaton, keep: &[usize]) -> Result<Automaton> {
    if keep.is_empty() || keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&c| c >= a.arity()) {
        return Err(Error::BadCoordinates { keep: keep.to_vec(), arity: a.arity() });
    }
    relabel(a, keep)
}

/// Subset construction for a closed automaton, without the empty subset: the
/// result is deterministic, trim and closed, and a missing transition means
/// rejection. An empty language yields a single state without transitions.
pub fn determinize_partial(a: &Automaton) -> Result<Automaton> {
    if !is_closed(a) {
        return Err(Error::NotClosed);
    }
    let a = match trim(a) {
        Ok(t) => t,
        Err(Error::EmptyLanguage) => {
            return Ok(Automaton::numbered(a.radix().clone(), vec![Vec::new()], vec![0], vec![true]));
        }
        Err(e) => return Err(e),
    };
    let mut table: StateTable<Vec<StateId>> = StateTable::new();
    let (start, _) = table.intern(a.initial().to_vec())?;
    let mut queue = VecDeque::from([start]);
    let mut out: Vec<Vec<(Letter, StateId)>> = vec![Vec::new()];
    let mut moves: Vec<(Letter, StateId)> = Vec::new();
    while let Some(id) = queue.pop_front() {
        moves.clear();
        for &s in &table.keys[id] {
            moves.extend_from_slice(a.transitions(s));
        }
        moves.sort_unstable();
        moves.dedup();
        let mut edges = Vec::new();
        let mut i = 0;
        while i < moves.len() {
            let l = moves[i].0;
            let j = i + moves[i..].iter().take_while(|m| m.0 == l).count();
            let subset: Vec<StateId> = moves[i..j].iter().map(|m| m.1).collect();
            let (t, fresh) = table.intern(subset)?;
            if fresh {
                queue.push_back(t);
                out.push(Vec::new());
            }
            edges.push((l, t));
            i = j;
        }
        out[id] = edges;
    }
    let n = out.len();
    Ok(Automaton::numbered(a.radix().clone(), out, vec![start], vec![true; n]))
}

/// Deterministic complete automaton equivalent to a closed automaton: the
/// subset construction plus a non-accepting reject sink (the empty subset).
pub fn determinize_closed(a: &Automaton) -> Result<Automaton> {
    complete(&determinize_partial(a)?)
}

/// Complement of a deterministic complete weak automaton by flipping acceptance.
pub fn complement_det(a: &Automaton) -> Result<Automaton> {
    if !a.is_deterministic() {
        return Err(Error::NotDeterministic);
    }
    if !a.is_complete() {
        return Err(Error::NotComplete);
    }
    if !is_weak(a) {
        return Err(Error::NotWeak);
    }
    Ok(a.with_accepting(a.states().map(|s| !a.is_accepting(s)).collect()))
}

/// Emptiness check. A witness is the shortest prefix (least in letter order
/// among the shortest) to an accepting state on a cycle, followed by the
/// shortest cycle through that state.
pub fn is_empty(a: &Automaton) -> Emptiness {
    let d = scc(a);
    let good = |s: StateId| a.is_accepting(s) && d.nontrivial[d.component[s]];
    let Some((target, prefix)) = bfs_path(a, a.initial(), good) else {
        return Emptiness::Empty;
    };
    // shortest nonempty cycle through target
    let mut parent: Vec<Option<(StateId, Letter)>> = vec![None; a.num_states()];
    let mut seen = vec![false; a.num_states()];
    let mut queue = VecDeque::new();
    let mut cycle = None;
    'search: for &(l, t) in a.transitions(target) {
        if t == target {
            cycle = Some(vec![l]);
            break 'search;
        }
        if !seen[t] {
            seen[t] = true;
            parent[t] = Some((target, l));
            queue.push_back(t);
        }
    }
    if cycle.is_none() {
        'bfs: while let Some(s) = queue.pop_front() {
            for &(l, t) in a.transitions(s) {
                if t == target {
                    let mut word = vec![l];
                    let mut cur = s;
                    while cur != target {
                        let (p, pl) = parent[cur].unwrap();
                        word.push(pl);
                        cur = p;
                    }
                    word.reverse();
                    cycle = Some(word);
                    break 'bfs;
                }
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((s, l));
                    queue.push_back(t);
                }
            }
        }
    }
    let cycle = cycle.expect("accepting state in a nontrivial component lies on a cycle");
    Emptiness::NonEmpty(Lasso::new(prefix, cycle).normalized())
}

/// BFS from `roots` with letters explored in increasing order; returns the
/// first state satisfying `goal` and the word leading to it.
fn bfs_path(a: &Automaton, roots: &[StateId], goal: impl Fn(StateId) -> bool) -> Option<(StateId, Vec<Letter>)> {
    let mut parent: Vec<Option<(StateId, Letter)>> = vec![None; a.num_states()];
    let mut seen = vec![false; a.num_states()];
    let mut queue = VecDeque::new();
    for &r in roots {
        if !seen[r] {
            seen[r] = true;
            queue.push_back(r);
        }
    }
    while let Some(s) = queue.pop_front() {
        if goal(s) {
            let mut word = Vec::new();
            let mut cur = s;
            while let Some((p, l)) = parent[cur] {
                word.push(l);
                cur = p;
            }
            word.reverse();
            return Some((s, word));
        }
        for &(l, t) in a.transitions(s) {
            if !seen[t] {
                seen[t] = true;
                parent[t] = Some((s, l));
                queue.push_back(t);
            }
        }
    }
    None
}

/// Universality of a deterministic complete weak automaton, decided as
/// emptiness of its complement.
pub fn is_universal_closed(a: &Automaton) -> Result<Universality> {
    let c = complement_det(a)?;
    Ok(match is_empty(&c) {
        Emptiness::Empty => Universality::Universal,
        Emptiness::NonEmpty(w) => Universality::Counterexample(w),
    })
}

/// Universality of any closed automaton, by an on-the-fly subset
/// construction that stops at the first subset missing a letter. The
/// counterexample is the shortest such prefix, the least missing letter, then
/// the all-zero letter forever.
pub fn universality_closed(a: &Automaton) -> Result<Universality> {
    let d = determinize_partial(a)?;
    let size = d.radix().alphabet_size();
    let missing = |s: StateId| d.transitions(s).len() < size as usize;
    match bfs_path(&d, d.initial(), missing) {
        None => Ok(Universality::Universal),
        Some((s, mut prefix)) => {
            let present = d.transitions(s);
            let letter = (0..size)
                .find(|l| present.binary_search_by_key(l, |&(x, _)| x).is_err())
                .expect("state misses a letter");
            prefix.push(letter);
            Ok(Universality::Counterexample(Lasso::new(prefix, vec![0]).normalized()))
        }
    }
}

/// A word of `L(a) \ L(b)`, if any. `a` must be weak, `b` closed.
pub fn inclusion_counterexample(a: &Automaton, b: &Automaton) -> Result<Option<Lasso>> {
    check_radix(a, b)?;
    let not_b = complement_det(&determinize_closed(b)?)?;
    let diff = product_intersect(a, &not_b)?;
    Ok(is_empty(&diff).witness().cloned())
}

/// `L(a) = L(b)` for closed automata.
pub fn language_equal(a: &Automaton, b: &Automaton) -> Result<bool> {
    Ok(inclusion_counterexample(a, b)?.is_none() && inclusion_counterexample(b, a)?.is_none())
}
