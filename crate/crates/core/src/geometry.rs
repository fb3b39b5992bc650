//! Geometry of value sets: the graph-directed IFS of an automaton, r-adic box
//! covers of its attractor, state residuals (a finite refinement of the
//! r-kernel), porosity witnesses and box-count measure bounds.
//!
//! Mixed radices are supported for rendering: every letter advances all
//! coordinates by one digit, so a depth-`k` box has side `r_i^{-k}` along
//! coordinate `i`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

use crate::alphabet::Letter;
use crate::analysis::ser_rational;
use crate::automaton::{is_closed, trim, Automaton, StateId};
use crate::error::{Error, Result};
use crate::omega::{determinize_partial, MAX_CONSTRUCTED_STATES};
use crate::real::{value_universality, Rational};

/// Budget on `(state, box)` pairs visited by [`attractor_boxes`].
pub const MAX_BOX_PAIRS: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GdifsEdge {
    pub from: String,
    pub to: String,
    /// The map is `x ↦ (x + shift) / ratio`, coordinatewise.
    pub shift: Vec<u32>,
    pub ratio: Vec<u32>,
}

/// One similarity per transition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gdifs {
    pub vertices: Vec<String>,
    pub edges: Vec<GdifsEdge>,
}

pub fn gdifs_of(a: &Automaton) -> Gdifs {
    let ratio = a.radix().radices().to_vec();
    Gdifs {
        vertices: a.names().to_vec(),
        edges: a
            .all_transitions()
            .map(|(s, l, t)| GdifsEdge {
                from: a.name(s).to_string(),
                to: a.name(t).to_string(),
                shift: a.radix().decode(l),
                ratio: ratio.clone(),
            })
            .collect(),
    }
}

/// Boxes `Π_i [m_i r_i^{-k}, (m_i + 1) r_i^{-k}]` at depth `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoxCover {
    pub depth: usize,
    pub radix: Vec<u32>,
    /// Sorted multi-indices.
    pub boxes: Vec<Vec<u64>>,
}

impl BoxCover {
    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    /// One row per box: `k,m_1,…,m_n`, after a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k");
        for i in 1..=self.radix.len() {
            write!(out, ",m{i}").unwrap();
        }
        out.push('\n');
        for b in &self.boxes {
            write!(out, "{}", self.depth).unwrap();
            for m in b {
                write!(out, ",{m}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Boxes of the projection onto the listed coordinates.
    pub fn project(&self, keep: &[usize]) -> BoxCover {
        let mut boxes: Vec<Vec<u64>> = self.boxes.iter().map(|b| keep.iter().map(|&c| b[c]).collect()).collect();
        boxes.sort();
        boxes.dedup();
        BoxCover { depth: self.depth, radix: keep.iter().map(|&c| self.radix[c]).collect(), boxes }
    }

    /// Whether every box lies inside a box of `coarser`.
    pub fn refines(&self, coarser: &BoxCover) -> bool {
        if coarser.depth > self.depth || coarser.radix != self.radix {
            return false;
        }
        let steps = (self.depth - coarser.depth) as u32;
        let div: Vec<u64> = self.radix.iter().map(|&r| (r as u64).pow(steps)).collect();
        let set: HashSet<&Vec<u64>> = coarser.boxes.iter().collect();
        self.boxes.iter().all(|b| {
            let parent: Vec<u64> = b.iter().zip(&div).map(|(m, d)| m / d).collect();
            set.contains(&parent)
        })
    }
}

/// Depth-`k` boxes of all length-`k` path labels from the initial states
/// through states of the trimmed automaton.
pub fn attractor_boxes(a: &Automaton, k: usize) -> Result<BoxCover> {
    let a = trim(a)?;
    let radix = a.radix().clone();
    for c in 0..radix.arity() {
        if (radix.radix(c) as u64).checked_pow(k as u32).is_none_or(|x| x > 1 << 62) {
            return Err(Error::ResourceCap(format!("box indices at depth {k} overflow")));
        }
    }
    let decoded: Vec<Vec<u32>> = radix.letters().map(|l| radix.decode(l)).collect();
    let mut layer: HashSet<(StateId, Vec<u64>)> = a.initial().iter().map(|&s| (s, vec![0; radix.arity()])).collect();
    let mut visited = layer.len();
    for _ in 0..k {
        let mut next = HashSet::new();
        for (s, m) in &layer {
            for &(l, t) in a.transitions(*s) {
                let d = &decoded[l as usize];
                let m2: Vec<u64> = m.iter().enumerate().map(|(i, &x)| x * radix.radix(i) as u64 + d[i] as u64).collect();
                next.insert((t, m2));
            }
        }
        visited += next.len();
        if visited > MAX_BOX_PAIRS {
            return Err(Error::ResourceCap(format!("more than {MAX_BOX_PAIRS} (state, box) pairs")));
        }
        layer = next;
    }
    let mut boxes: Vec<Vec<u64>> = layer.into_iter().map(|(_, m)| m).collect::<HashSet<_>>().into_iter().collect();
    boxes.sort();
    Ok(BoxCover { depth: k, radix: radix.radices().to_vec(), boxes })
}

/// `(number of depth-k boxes) · r^{-k}` for a subset of `[0,1]`.
pub fn box_measure_estimate(a: &Automaton, k: usize) -> Result<Rational> {
    if a.arity() != 1 {
        return Err(Error::BadArity { expected: 1, found: a.arity() });
    }
    let r = a.radix().radix(0);
    let cover = attractor_boxes(a, k)?;
    Ok(Rational::new(BigInt::from(cover.len()), BigInt::from(r).pow(k as u32)))
}

/// A class of language-equivalent states.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelResidual {
    pub representative: String,
    pub members: Vec<String>,
}

/// Groups the states of a trimmed closed deterministic automaton by
/// language, by partition refinement. Classes are ordered by first member
/// in state order.
pub fn kernel_residuals(a: &Automaton) -> Result<Vec<KernelResidual>> {
    if !a.is_deterministic() {
        return Err(Error::NotDeterministic);
    }
    if !is_closed(a) {
        return Err(Error::NotClosed);
    }
    let a = trim(a)?;
    let mut class: Vec<usize> = vec![0; a.num_states()];
    let mut count = 1;
    loop {
        let mut ids: HashMap<(usize, Vec<(Letter, usize)>), usize> = HashMap::new();
        let next: Vec<usize> = a
            .states()
            .map(|s| {
                let sig: Vec<(Letter, usize)> = a.transitions(s).iter().map(|&(l, t)| (l, class[t])).collect();
                let n = ids.len();
                *ids.entry((class[s], sig)).or_insert(n)
            })
            .collect();
        let stable = ids.len() == count;
        count = ids.len();
        class = next;
        if stable {
            break;
        }
    }
    let mut groups: Vec<Vec<StateId>> = vec![Vec::new(); count];
    for s in a.states() {
        groups[class[s]].push(s);
    }
    groups.sort();
    Ok(groups
        .into_iter()
        .map(|g| KernelResidual {
            representative: a.name(g[0]).to_string(),
            members: g.iter().map(|&s| a.name(s).to_string()).collect(),
        })
        .collect())
}

/// An `r^{-k}`-interval missing the value set of every residual.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PorosityWitness {
    pub k: usize,
    /// Index `m` of the interval `[m r^{-k}, (m+1) r^{-k}]`.
    pub index: u64,
    #[serde(serialize_with = "ser_rational")]
    pub left: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub right: Rational,
    /// `2 r^{-(k+1)}`.
    #[serde(serialize_with = "ser_rational")]
    pub constant: Rational,
}

/// Shortest (then least) digit word that no state of the determinized
/// automaton can read. Every point in the interior of the corresponding
/// interval has only encodings starting with that word, so the interior
/// misses every residual value set.
pub fn porosity_witness(a: &Automaton) -> Result<PorosityWitness> {
    if a.arity() != 1 {
        return Err(Error::BadArity { expected: 1, found: a.arity() });
    }
    let r = a.radix().radix(0);
    let d = determinize_partial(a)?;
    for q in d.states() {
        if value_universality(&d.with_initial(vec![q]))?.is_universal() {
            return Err(Error::NotNowhereDense(d.name(q).to_string()));
        }
    }
    let start: Vec<StateId> = d.states().collect();
    let mut seen: HashMap<Vec<StateId>, ()> = HashMap::from([(start.clone(), ())]);
    let mut queue: VecDeque<(Vec<StateId>, Vec<u32>)> = VecDeque::from([(start, Vec::new())]);
    while let Some((set, word)) = queue.pop_front() {
        for l in 0..r {
            let mut next: Vec<StateId> = set.iter().filter_map(|&s| d.step(s, l)).collect();
            next.sort_unstable();
            next.dedup();
            let mut w = word.clone();
            w.push(l);
            if next.is_empty() {
                let k = w.len();
                let index = w.iter().fold(0u64, |acc, &x| acc * r as u64 + x as u64);
                let den = BigInt::from(r).pow(k as u32);
                return Ok(PorosityWitness {
                    k,
                    index,
                    left: Rational::new(index.into(), den.clone()),
                    right: Rational::new((index + 1).into(), den.clone()),
                    constant: Rational::new(2.into(), den * r),
                });
            }
            if !seen.contains_key(&next) {
                if seen.len() >= MAX_CONSTRUCTED_STATES {
                    return Err(Error::ResourceCap("porosity search exceeded the subset cap".into()));
                }
                seen.insert(next.clone(), ());
                queue.push_back((next, w));
            }
        }
    }
    Err(Error::NotNowhereDense("every finite word is readable".into()))
}
