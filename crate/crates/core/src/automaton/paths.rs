use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::{Automaton, StateId};
use crate::error::{Error, Result};

/// Largest label space `(Π r_i)^n` the label enumeration accepts.
pub const MAX_PATH_LABELS: u64 = 10_000_000;

/// `|P_{p,q}(n)|`: the number of distinct labels of length-`n` paths from `p` to `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathCount {
    pub source: String,
    /// `None` when labels into every state were pooled.
    pub target: Option<String>,
    pub length: usize,
    pub count: u64,
}

impl PathCount {
    /// `count / r^n`, the ratio whose limsup is positive for strongly
    /// connected automata with enough paths. Needs a uniform radix.
    pub fn density(&self, radix: u32) -> BigRational {
        BigRational::new(BigInt::from(self.count), BigInt::from(radix).pow(self.length as u32))
    }
}

fn label_sets(a: &Automaton, p: StateId, n: usize) -> Result<Vec<HashSet<u64>>> {
    let sigma = a.radix().alphabet_size() as u64;
    let space = (sigma as f64).powi(n as i32);
    if space > MAX_PATH_LABELS as f64 {
        return Err(Error::ResourceCap(format!("{sigma}^{n} path labels exceed {MAX_PATH_LABELS}")));
    }
    let mut current: Vec<HashSet<u64>> = vec![HashSet::new(); a.num_states()];
    current[p].insert(0);
    for _ in 0..n {
        let mut next: Vec<HashSet<u64>> = vec![HashSet::new(); a.num_states()];
        for s in a.states() {
            if current[s].is_empty() {
                continue;
            }
            for &(l, t) in a.transitions(s) {
                next[t].extend(current[s].iter().map(|code| code * sigma + l as u64));
            }
        }
        current = next;
    }
    Ok(current)
}

/// Counts distinct labels (not paths) of length `n` from `p` to `q`.
/// For `n = 0` the only label is the empty word, present iff `p = q`.
pub fn path_label_count(a: &Automaton, p: &str, q: &str, n: usize) -> Result<PathCount> {
    let ps = a.require_state(p)?;
    let qs = a.require_state(q)?;
    let sets = label_sets(a, ps, n)?;
    Ok(PathCount { source: p.to_string(), target: Some(q.to_string()), length: n, count: sets[qs].len() as u64 })
}

/// `|⋃_q P_{p,q}(n)|`.
pub fn path_label_count_any(a: &Automaton, p: &str, n: usize) -> Result<PathCount> {
    let ps = a.require_state(p)?;
    let sets = label_sets(a, ps, n)?;
    let all: HashSet<u64> = sets.into_iter().flatten().collect();
    Ok(PathCount { source: p.to_string(), target: None, length: n, count: all.len() as u64 })
}
