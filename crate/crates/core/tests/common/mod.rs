//! Oracles and generators shared by the integration tests. The oracles here
//! avoid the library's own membership and valuation code.
#![allow(dead_code)]

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use regular_reals::{Automaton, Lasso, RadixVector};

/// Büchi membership by explicit reachability on the (position, state) graph:
/// accepted iff some reachable accepting node reaches itself again.
pub fn oracle_accepts(a: &Automaton, w: &Lasso) -> bool {
    oracle_accepts_by(a, w, |want, edge| want == edge)
}

/// Like [`oracle_accepts`], but an edge may be taken at a position whenever
/// `fits(word letter, edge letter)` holds. Projection is membership with a
/// letter predicate that ignores the dropped coordinates.
pub fn oracle_accepts_by(a: &Automaton, w: &Lasso, fits: impl Fn(u32, u32) -> bool) -> bool {
    let span = w.prefix.len() + w.cycle.len();
    let letter = |i: usize| if i < w.prefix.len() { w.prefix[i] } else { w.cycle[(i - w.prefix.len()) % w.cycle.len()] };
    let next_pos = |i: usize| if i + 1 < span { i + 1 } else { w.prefix.len() };
    let succ = |v: (usize, usize)| -> Vec<(usize, usize)> {
        let (i, s) = v;
        a.transitions(s)
            .iter()
            .filter(|&&(l, _)| fits(letter(i), l))
            .map(|&(_, t)| (next_pos(i), t))
            .collect()
    };
    let reach = |roots: Vec<(usize, usize)>| -> HashSet<(usize, usize)> {
        let mut seen: HashSet<(usize, usize)> = HashSet::new();
        let mut stack = roots;
        while let Some(v) = stack.pop() {
            if seen.insert(v) {
                stack.extend(succ(v));
            }
        }
        seen
    };
    let from_start = reach(a.initial().iter().map(|&s| (0, s)).collect());
    from_start
        .iter()
        .filter(|v| a.is_accepting(v.1))
        .any(|&v| reach(succ(v)).contains(&v))
}

/// Value of one coordinate digit lasso as an exact fraction.
pub fn value(prefix: &[u32], cycle: &[u32], r: u32) -> BigRational {
    let mut x = BigRational::from_integer(0.into());
    let mut w = BigRational::new(1.into(), r.into());
    for &d in prefix {
        x += &w * BigRational::from_integer(d.into());
        w /= BigRational::from_integer(r.into());
    }
    // cycle sum times 1 / (1 - r^{-|c|})
    let mut c = BigRational::from_integer(0.into());
    let mut cw = w.clone();
    for &d in cycle {
        c += &cw * BigRational::from_integer(d.into());
        cw /= BigRational::from_integer(r.into());
    }
    let period = BigRational::new(1.into(), BigInt::from(r).pow(cycle.len() as u32));
    x + c / (BigRational::from_integer(1.into()) - period)
}

fn canonical(prefix: &[u32], cycle: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let l = Lasso::new(prefix.to_vec(), cycle.to_vec()).normalized();
    (l.prefix, l.cycle)
}

/// Every encoding of the value of a digit lasso (one or two).
pub fn same_value_encodings(prefix: &[u32], cycle: &[u32], r: u32) -> Vec<(Vec<u32>, Vec<u32>)> {
    let (p, c) = canonical(prefix, cycle);
    let mut out = vec![(p.clone(), c.clone())];
    if c == [0] && !p.is_empty() {
        let mut q = p.clone();
        *q.last_mut().unwrap() -= 1;
        out.push((q, vec![r - 1]));
    } else if c == [r - 1] && !p.is_empty() {
        let mut q = p.clone();
        *q.last_mut().unwrap() += 1;
        out.push((q, vec![0]));
    }
    out
}

/// Every encoding of the point denoted by `w`.
pub fn all_encodings(w: &Lasso, radix: &RadixVector) -> Vec<Lasso> {
    let per: Vec<Vec<(Vec<u32>, Vec<u32>)>> = (0..radix.arity())
        .map(|c| {
            let (p, cy) = w.coordinate(radix, c);
            same_value_encodings(&p, &cy, radix.radix(c))
        })
        .collect();
    let mut out = vec![Vec::new()];
    for choices in per {
        out = out
            .into_iter()
            .flat_map(|acc: Vec<(Vec<u32>, Vec<u32>)>| {
                choices.iter().map(move |ch| {
                    let mut v = acc.clone();
                    v.push(ch.clone());
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(|coords| Lasso::from_coordinates(radix, &coords)).collect()
}

/// Random automaton with up to `max_states` states; `closed` makes every
/// state accepting.
pub fn random_automaton(rng: &mut ChaCha8Rng, radix: &RadixVector, max_states: usize, closed: bool) -> Automaton {
    let n = rng.gen_range(1..=max_states);
    let mut b = Automaton::builder(radix.clone()).initial("s0");
    for s in 0..n {
        b.state(&format!("s{s}"));
    }
    let density = rng.gen_range(0.15..0.6);
    for s in 0..n {
        for l in radix.letters() {
            for t in 0..n {
                if rng.gen_bool(density / n as f64 * 1.5) {
                    b.add_transition(&format!("s{s}"), &radix.decode(l), &format!("s{t}"));
                }
            }
        }
    }
    let names: Vec<String> = (0..n).filter(|_| closed || rng.gen_bool(0.5)).map(|s| format!("s{s}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    b.accepting(&refs).build()
}

/// Random trim closed automaton (regenerates until the language is nonempty).
pub fn random_closed(rng: &mut ChaCha8Rng, radix: &RadixVector, max_states: usize) -> Automaton {
    loop {
        let a = random_automaton(rng, radix, max_states, true);
        if let Ok(t) = regular_reals::automaton::trim(&a) {
            return t;
        }
    }
}

pub fn random_lasso(rng: &mut ChaCha8Rng, radix: &RadixVector) -> Lasso {
    let size = radix.alphabet_size();
    let p = rng.gen_range(0..4);
    let c = rng.gen_range(1..4);
    Lasso::new((0..p).map(|_| rng.gen_range(0..size)).collect(), (0..c).map(|_| rng.gen_range(0..size)).collect())
}

/// A lasso read along a random walk, so that it is often accepted.
pub fn walk_lasso(rng: &mut ChaCha8Rng, a: &Automaton) -> Option<Lasso> {
    let mut s = a.initial()[0];
    let mut letters = Vec::new();
    let mut states = vec![s];
    for _ in 0..12 {
        let edges = a.transitions(s);
        if edges.is_empty() {
            return None;
        }
        let (l, t) = edges[rng.gen_range(0..edges.len())];
        letters.push(l);
        states.push(t);
        s = t;
        if let Some(first) = states[..states.len() - 1].iter().position(|&x| x == s) {
            if rng.gen_bool(0.7) {
                return Some(Lasso::new(letters[..first].to_vec(), letters[first..].to_vec()));
            }
        }
    }
    None
}

/// Mix of random and walk-generated lassos.
pub fn lassos_for(rng: &mut ChaCha8Rng, a: &Automaton, count: usize) -> Vec<Lasso> {
    (0..count)
        .map(|i| {
            if i % 2 == 0 {
                if let Some(w) = walk_lasso(rng, a) {
                    return w;
                }
            }
            random_lasso(rng, a.radix())
        })
        .collect()
}

/// Distance from `x` to the union of the depth-`k` Cantor intervals.
pub fn cantor_cover_distance(x: &BigRational, k: u32) -> BigRational {
    let den = BigInt::from(3).pow(k);
    let mut best: Option<BigRational> = None;
    for m in 0u64..3u64.pow(k) {
        let mut t = m;
        let mut ok = true;
        for _ in 0..k {
            if t % 3 == 1 {
                ok = false;
                break;
            }
            t /= 3;
        }
        if !ok {
            continue;
        }
        let lo = BigRational::new(m.into(), den.clone());
        let hi = BigRational::new((m + 1).into(), den.clone());
        let d = if x < &lo {
            &lo - x
        } else if x > &hi {
            x - &hi
        } else {
            BigRational::from_integer(0.into())
        };
        if best.as_ref().is_none_or(|b| &d < b) {
            best = Some(d);
        }
    }
    best.unwrap()
}

/// Safety-style membership for closed automata: the word has an infinite
/// run iff the set of reachable states never becomes empty.
pub fn oracle_infinite_run(a: &Automaton, w: &Lasso) -> bool {
    let span = w.prefix.len() + w.cycle.len();
    let letter = |i: usize| if i < w.prefix.len() { w.prefix[i] } else { w.cycle[(i - w.prefix.len()) % w.cycle.len()] };
    let mut seen: HashSet<(usize, Vec<usize>)> = HashSet::new();
    let mut pos = 0;
    let mut cur: Vec<usize> = a.initial().to_vec();
    loop {
        if cur.is_empty() {
            return false;
        }
        if !seen.insert((pos, cur.clone())) {
            return true;
        }
        let mut next: Vec<usize> = cur
            .iter()
            .flat_map(|&s| a.transitions(s).iter().filter(|e| e.0 == letter(pos)).map(|e| e.1))
            .collect();
        next.sort_unstable();
        next.dedup();
        cur = next;
        pos = if pos + 1 < span { pos + 1 } else { w.prefix.len() };
    }
}

/// Whether the Cantor distance function is affine on `[lo, hi]`: the
/// interval must sit inside one removed gap without straddling its midpoint.
/// Only gaps at levels up to `k` are long enough to contain an interval of
/// length `3^{-k}`.
pub fn cantor_distance_affine_on(lo: &BigRational, hi: &BigRational, k: u32) -> bool {
    for level in 1..=k {
        let den = BigInt::from(3).pow(level);
        for m in 0u64..3u64.pow(level - 1) {
            // gap (3m+1, 3m+2)/3^level exists iff m has no ternary digit 1
            let mut t = m;
            let mut ok = true;
            while t > 0 {
                if t % 3 == 1 {
                    ok = false;
                    break;
                }
                t /= 3;
            }
            if !ok {
                continue;
            }
            let a = BigRational::new((3 * m + 1).into(), den.clone());
            let b = BigRational::new((3 * m + 2).into(), den.clone());
            if lo >= &a && hi <= &b {
                let mid = (&a + &b) / BigRational::from_integer(2.into());
                return !(lo < &mid && &mid < hi);
            }
        }
    }
    false
}
