use std::collections::BTreeSet;

use super::{Automaton, StateId};

/// Strongly connected components of the underlying graph of an automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccDecomposition {
    /// Component id of every state. Ids are in topological order of the
    /// condensation: an edge between components always goes from a smaller id
    /// to a larger one.
    pub component: Vec<usize>,
    /// Members of each component, sorted.
    pub members: Vec<Vec<StateId>>,
    /// Condensation edges `(c1, c2)`, `c1 != c2`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// Whether each component carries a nonempty cycle (size > 1 or a self-loop).
    pub nontrivial: Vec<bool>,
}

impl SccDecomposition {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Components in topological order (sources first).
    pub fn topological_order(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }

    pub fn has_outgoing(&self, c: usize) -> bool {
        self.edges.iter().any(|&(a, _)| a == c)
    }
}

/// Iterative Tarjan. Returns a component id per node, numbered in reverse
/// topological order (sinks get the smallest ids), matching Tarjan's output order.
pub fn tarjan<F, I>(n: usize, mut succ: F) -> Vec<usize>
where
    F: FnMut(usize) -> I,
    I: IntoIterator<Item = usize>,
{
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    // call stack: (node, successors, position)
    let mut call: Vec<(usize, Vec<usize>, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        call.push((root, succ(root).into_iter().collect(), 0));

        while let Some((v, succs, pos)) = call.last_mut() {
            let v = *v;
            if *pos < succs.len() {
                let w = succs[*pos];
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    let ws = succ(w).into_iter().collect();
                    call.push((w, ws, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some((parent, _, _)) = call.last() {
                    let p = *parent;
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

/// SCC decomposition and condensation of the automaton's underlying graph.
pub fn scc(a: &Automaton) -> SccDecomposition {
    let n = a.num_states();
    let raw = tarjan(n, |s| a.transitions(s).iter().map(|&(_, t)| t).collect::<Vec<_>>());
    let count = raw.iter().copied().max().map_or(0, |m| m + 1);
    // Tarjan numbers sinks first; flip so that edges go forward.
    let component: Vec<usize> = raw.iter().map(|&c| count - 1 - c).collect();
    let mut members = vec![Vec::new(); count];
    for s in 0..n {
        members[component[s]].push(s);
    }
    let mut edges = BTreeSet::new();
    let mut nontrivial = vec![false; count];
    for (s, _, t) in a.all_transitions() {
        let (cs, ct) = (component[s], component[t]);
        if cs == ct {
            nontrivial[cs] = true;
        } else {
            edges.insert((cs, ct));
        }
    }
    SccDecomposition { component, members, edges: edges.into_iter().collect(), nontrivial }
}
