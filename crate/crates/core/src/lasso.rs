//! Ultimately periodic words `prefix · cycle^ω` and the exact membership test.

use std::collections::VecDeque;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::alphabet::{Letter, RadixVector};
use crate::automaton::{tarjan, Automaton};

/// The word `prefix · cycle^ω` over packed letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Lasso {
    pub prefix: Vec<Letter>,
    pub cycle: Vec<Letter>,
}

impl Lasso {
    /// Panics if `cycle` is empty.
    pub fn new(prefix: Vec<Letter>, cycle: Vec<Letter>) -> Self {
        assert!(!cycle.is_empty(), "lasso cycle must be nonempty");
        Lasso { prefix, cycle }
    }

    pub fn letter_at(&self, i: usize) -> Letter {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// Length of prefix plus cycle: positions `0..span()` describe the word.
    pub fn span(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    /// Canonical form: primitive cycle, shortest prefix. Two lassos describe
    /// the same infinite word iff their normal forms are equal.
    pub fn normalized(&self) -> Lasso {
        let mut cycle = self.cycle.clone();
        let n = cycle.len();
        for d in 1..=n {
            if n % d == 0 && (0..n).all(|i| cycle[i] == cycle[i % d]) {
                cycle.truncate(d);
                break;
            }
        }
        let mut prefix = self.prefix.clone();
        while let Some(&last) = prefix.last() {
            if last != *cycle.last().unwrap() {
                break;
            }
            prefix.pop();
            cycle.rotate_right(1);
        }
        Lasso { prefix, cycle }
    }

    /// Digits of one coordinate, as a one-coordinate lasso `(prefix, cycle)`.
    pub fn coordinate(&self, radix: &RadixVector, coord: usize) -> (Vec<u32>, Vec<u32>) {
        let p = self.prefix.iter().map(|&l| radix.digit(l, coord)).collect();
        let c = self.cycle.iter().map(|&l| radix.digit(l, coord)).collect();
        (p, c)
    }

    /// Zips per-coordinate digit lassos into one lasso over `radix`.
    pub fn from_coordinates(radix: &RadixVector, coords: &[(Vec<u32>, Vec<u32>)]) -> Lasso {
        assert_eq!(coords.len(), radix.arity());
        let plen = coords.iter().map(|(p, _)| p.len()).max().unwrap_or(0);
        let clen = coords.iter().fold(1usize, |acc, (_, c)| acc.lcm(&c.len()));
        let at = |(p, c): &(Vec<u32>, Vec<u32>), i: usize| {
            if i < p.len() {
                p[i]
            } else {
                c[(i - p.len()) % c.len()]
            }
        };
        let mut digits = Vec::with_capacity(coords.len());
        let mut letter = |i: usize| {
            digits.clear();
            digits.extend(coords.iter().map(|c| at(c, i)));
            radix.encode(&digits)
        };
        let prefix = (0..plen).map(&mut letter).collect();
        let cycle = (plen..plen + clen).map(&mut letter).collect();
        Lasso { prefix, cycle }.normalized()
    }

    /// Restricts the lasso to the listed coordinates.
    pub fn project(&self, radix: &RadixVector, keep: &[usize]) -> Lasso {
        let target = radix.select(keep).expect("valid coordinates");
        let coords: Vec<_> = keep.iter().map(|&c| self.coordinate(radix, c)).collect();
        Lasso::from_coordinates(&target, &coords)
    }

    /// Human-readable form, `prefix(cycle)` per coordinate, coordinates
    /// separated by spaces.
    pub fn display(&self, radix: &RadixVector) -> String {
        (0..radix.arity())
            .map(|c| {
                let (p, cy) = self.coordinate(radix, c);
                let Lasso { prefix: p, cycle: cy } = Lasso::new(p, cy).normalized();
                format!("{}({})", digit_string(&p, radix.radix(c)), digit_string(&cy, radix.radix(c)))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn digit_string(digits: &[u32], radix: u32) -> String {
    if radix <= 36 {
        digits.iter().map(|&d| std::char::from_digit(d, radix).unwrap()).collect()
    } else {
        digits.iter().map(u32::to_string).collect::<Vec<_>>().join(".")
    }
}

impl fmt::Display for Lasso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({:?})", self.prefix, self.cycle)
    }
}

/// Exact Büchi membership of an ultimately periodic word: explores the product
/// of the lasso with the automaton and looks for a reachable cycle through an
/// accepting state.
pub fn accepts(a: &Automaton, w: &Lasso) -> bool {
    let n = a.num_states();
    let span = w.span();
    let next_pos = |pos: usize| if pos + 1 < span { pos + 1 } else { w.prefix.len() };
    let node = |pos: usize, s: usize| pos * n + s;
    let total = span * n;

    let mut reach = vec![false; total];
    let mut queue = VecDeque::new();
    for &s in a.initial() {
        reach[node(0, s)] = true;
        queue.push_back((0usize, s));
    }
    while let Some((pos, s)) = queue.pop_front() {
        let np = next_pos(pos);
        for t in a.successors(s, w.letter_at(pos)) {
            if !reach[node(np, t)] {
                reach[node(np, t)] = true;
                queue.push_back((np, t));
            }
        }
    }
    let succ = |v: usize| -> Vec<usize> {
        if !reach[v] {
            return Vec::new();
        }
        let (pos, s) = (v / n, v % n);
        let np = next_pos(pos);
        a.successors(s, w.letter_at(pos)).map(|t| node(np, t)).collect()
    };
    let comp = tarjan(total, succ);
    // a component is a cycle if it has an internal edge
    let mut cyclic = vec![false; total];
    for v in (0..total).filter(|&v| reach[v]) {
        for u in succ(v) {
            if comp[u] == comp[v] {
                cyclic[comp[v]] = true;
            }
        }
    }
    (0..total).any(|v| reach[v] && a.is_accepting(v % n) && cyclic[comp[v]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn rv(r: u32, k: usize) -> RadixVector {
        RadixVector::uniform(r, k).unwrap()
    }

    #[test]
    fn normalization() {
        let w = Lasso::new(vec![1, 0, 1], vec![0, 1, 0, 1]);
        let n = w.normalized();
        assert_eq!(n, Lasso::new(vec![], vec![1, 0]));
        for i in 0..20 {
            assert_eq!(w.letter_at(i), n.letter_at(i));
        }
    }

    #[test]
    fn zip_coordinates() {
        let r = rv(3, 2);
        let w = Lasso::from_coordinates(&r, &[(vec![1], vec![0]), (vec![], vec![1, 2])]);
        for i in 0..12 {
            let d = r.decode(w.letter_at(i));
            assert_eq!(d[0], if i == 0 { 1 } else { 0 });
            assert_eq!(d[1], if i % 2 == 0 { 1 } else { 2 });
        }
        assert_eq!(w.display(&r), "1(0) (12)");
    }

    #[test]
    fn distance_graph_membership() {
        let a = corpus::fig3();
        let r = a.radix().clone();
        // x = 1/2 = (1)^ω, d(x) = 1/6 = 0(1)^ω
        let good = Lasso::from_coordinates(&r, &[(vec![], vec![1]), (vec![0], vec![1])]);
        assert!(accepts(&a, &good));
        let bad = Lasso::from_coordinates(&r, &[(vec![], vec![1]), (vec![], vec![1])]);
        assert!(!accepts(&a, &bad));
    }

    #[test]
    fn buchi_condition_needs_accepting_cycle() {
        let r = rv(2, 1);
        // accepts words with infinitely many 1s
        let a = Automaton::builder(r)
            .initial("n")
            .transition("n", &[0], "n")
            .transition("n", &[1], "y")
            .transition("y", &[0], "n")
            .transition("y", &[1], "y")
            .accepting(&["y"])
            .build();
        assert!(accepts(&a, &Lasso::new(vec![], vec![0, 1])));
        assert!(!accepts(&a, &Lasso::new(vec![1, 1], vec![0])));
    }
}
