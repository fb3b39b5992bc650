//! Words as reals: the valuation `v_r(w) = Σ w_i r^{-i}` (first digit weighted
//! `r^{-1}`), rational encodings, value-equality, saturation, and automata for
//! linear relations (affine graphs, midpoints, points and fibers).

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::alphabet::{Letter, RadixVector};
use crate::automaton::{is_closed, trim, Automaton, StateId};
use crate::error::{Error, Result};
use crate::lasso::Lasso;
use crate::omega::{determinize_partial, inclusion_counterexample, is_empty, join, product_intersect, project, relabel, universality_closed, Universality};

pub type Rational = BigRational;

/// Parses `p/q` or an integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Parse { line: 0, reason: format!("bad rational `{text}`") };
    let t = text.trim();
    let (p, q) = t.split_once('/').unwrap_or((t, "1"));
    let p: BigInt = p.trim().parse().map_err(|_| bad())?;
    let q: BigInt = q.trim().parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

pub fn rational(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

fn in_unit(x: &Rational) -> bool {
    !x.is_negative() && *x <= Rational::one()
}

/// Value of `prefix · cycle^ω` in base `r`.
pub fn digits_value(prefix: &[u32], cycle: &[u32], r: u32) -> Rational {
    let rb = BigInt::from(r);
    let int = |ds: &[u32]| ds.iter().fold(BigInt::zero(), |acc, &d| acc * &rb + d);
    let head = Rational::new(int(prefix), rb.pow(prefix.len() as u32));
    let tail = Rational::new(int(cycle), rb.pow(cycle.len() as u32) - 1);
    head + tail / Rational::from_integer(rb.pow(prefix.len() as u32))
}

/// Per-coordinate value of a lasso.
pub fn valuation(w: &Lasso, radix: &RadixVector) -> Vec<Rational> {
    (0..radix.arity())
        .map(|c| {
            let (p, cy) = w.coordinate(radix, c);
            digits_value(&p, &cy, radix.radix(c))
        })
        .collect()
}

/// Every base-`r` encoding of `x ∈ [0,1]` as `(prefix, cycle)`: one, or two
/// when `x` is r-adic in `(0,1)`. The encoding ending in `0^ω` comes first.
pub fn encode_digits(x: &Rational, r: u32) -> Result<Vec<(Vec<u32>, Vec<u32>)>> {
    if !in_unit(x) {
        return Err(Error::OutOfRange(x.to_string()));
    }
    if x.is_one() {
        return Ok(vec![(vec![], vec![r - 1])]);
    }
    let d = x.denom().clone();
    let rb = BigInt::from(r);
    let mut rem = x.numer().clone();
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    let mut digits = Vec::new();
    let start = loop {
        if let Some(&k) = seen.get(&rem) {
            break k;
        }
        seen.insert(rem.clone(), digits.len());
        let (q, m) = (&rem * &rb).div_rem(&d);
        digits.push(q.to_u32().expect("digit below radix"));
        rem = m;
    };
    let w = Lasso::new(digits[..start].iter().map(|&d| d as Letter).collect(), digits[start..].iter().map(|&d| d as Letter).collect())
        .normalized();
    let prefix: Vec<u32> = w.prefix.clone();
    let cycle: Vec<u32> = w.cycle.clone();
    let mut out = vec![(prefix.clone(), cycle.clone())];
    if cycle == [0] && !prefix.is_empty() {
        let mut dual = prefix;
        *dual.last_mut().unwrap() -= 1;
        out.push((dual, vec![r - 1]));
    }
    Ok(out)
}

/// All encodings of a point, as lassos over `radix`; the all-canonical one first.
pub fn encode_rational(point: &[Rational], radix: &RadixVector) -> Result<Vec<Lasso>> {
    if point.len() != radix.arity() {
        return Err(Error::BadArity { expected: radix.arity(), found: point.len() });
    }
    let per: Vec<Vec<(Vec<u32>, Vec<u32>)>> =
        point.iter().enumerate().map(|(c, x)| encode_digits(x, radix.radix(c))).collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut pick = vec![0usize; per.len()];
    loop {
        let coords: Vec<_> = pick.iter().zip(&per).map(|(&i, e)| e[i].clone()).collect();
        out.push(Lasso::from_coordinates(radix, &coords));
        // odometer, last coordinate fastest
        let mut c = per.len();
        loop {
            if c == 0 {
                return Ok(out);
            }
            c -= 1;
            pick[c] += 1;
            if pick[c] < per[c].len() {
                break;
            }
            pick[c] = 0;
        }
    }
}

/// Pairs of words with equal value:
/// `E` equal so far, `L` left is ahead by one unit (left tail `0^ω`, right
/// tail `(r-1)^ω`), `R` the mirror image.
pub fn equal_value_automaton(r: u32) -> Automaton {
    let radix = RadixVector::uniform(r, 2).expect("radix at least 2");
    let mut b = Automaton::builder(radix).initial("E");
    for d in 0..r {
        b.add_transition("E", &[d, d], "E");
        if d + 1 < r {
            b.add_transition("E", &[d + 1, d], "L");
            b.add_transition("E", &[d, d + 1], "R");
        }
    }
    b.add_transition("L", &[0, r - 1], "L");
    b.add_transition("R", &[r - 1, 0], "R");
    b.all_accepting().build()
}

/// Every word over `radix`.
pub fn full_automaton(radix: &RadixVector) -> Automaton {
    let out = vec![radix.letters().map(|l| (l, 0)).collect()];
    Automaton::from_parts(radix.clone(), vec!["u".into()], out, vec![0], vec![true])
}

/// Tuples `(v_1, …, v_n)` with `Σ a_i v_i = b`, over a uniform radix `r`.
///
/// After `n` digits with integer prefixes `P_i`, the state is
/// `c = Σ a_i P_i − b r^n`, updated by `c' = r c + Σ a_i d_i`. The relation
/// holds iff the remaining tails can absorb `c`, i.e.
/// `c ∈ [−Σ max(a_i,0), −Σ min(a_i,0)]` at every step. The automaton is
/// deterministic, closed, trim, and accepts every encoding of every solution.
pub fn linear_relation_automaton(coeffs: &[i64], b: i64, r: u32) -> Result<Automaton> {
    let radix = RadixVector::uniform(r, coeffs.len())?;
    let lo: i64 = -coeffs.iter().filter(|&&a| a > 0).sum::<i64>();
    let hi: i64 = -coeffs.iter().filter(|&&a| a < 0).sum::<i64>();
    let start = -b;
    if start < lo || start > hi {
        return Err(Error::EmptyLanguage);
    }
    // contribution Σ a_i d_i per letter
    let weights: Vec<i64> = radix
        .letters()
        .map(|l| radix.decode(l).iter().zip(coeffs).map(|(&d, &a)| a * d as i64).sum())
        .collect();
    let mut ids: HashMap<i64, StateId> = HashMap::from([(start, 0)]);
    let mut carries = vec![start];
    let mut out: Vec<Vec<(Letter, StateId)>> = vec![Vec::new()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        let c = carries[s];
        let mut edges = Vec::new();
        for (l, w) in weights.iter().enumerate() {
            let next = (r as i64).checked_mul(c).and_then(|x| x.checked_add(*w)).ok_or_else(|| Error::ResourceCap("carry overflow".into()))?;
            if next < lo || next > hi {
                continue;
            }
            let t = *ids.entry(next).or_insert_with(|| {
                carries.push(next);
                out.push(Vec::new());
                queue.push_back(carries.len() - 1);
                carries.len() - 1
            });
            edges.push((l as Letter, t));
        }
        out[s] = edges;
    }
    let names = carries.iter().map(|c| format!("c{c}")).collect();
    let n = carries.len();
    let a = Automaton::from_parts(radix, names, out, vec![0], vec![true; n]);
    trim(&a)
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::ResourceCap(format!("coefficient {x} exceeds 64 bits")))
}

/// Graph of `x ↦ αx + β` on `[0,1]`, as the relation `q y − p x = s` for
/// `α = p/q`, `β = s/q`.
pub fn affine_graph_automaton(alpha: &Rational, beta: &Rational, r: u32) -> Result<Automaton> {
    if !in_unit(beta) || !in_unit(&(alpha + beta)) {
        return Err(Error::RangeViolation { alpha: alpha.to_string(), beta: beta.to_string() });
    }
    let q = alpha.denom().lcm(beta.denom());
    let p = to_i64(&(alpha * Rational::from_integer(q.clone())).to_integer())?;
    let s = to_i64(&(beta * Rational::from_integer(q.clone())).to_integer())?;
    linear_relation_automaton(&[-p, to_i64(&q)?], s, r)
}

/// `{(x, y, m) : 2m = x + y}`.
pub fn midpoint_relation_automaton(r: u32) -> Automaton {
    linear_relation_automaton(&[-1, -1, 2], 0, r).expect("midpoint relation is nonempty")
}

/// All encodings of one point.
pub fn singleton_automaton(point: &[Rational], radix: &RadixVector) -> Result<Automaton> {
    if point.len() != radix.arity() {
        return Err(Error::BadArity { expected: radix.arity(), found: point.len() });
    }
    let mut acc: Option<Automaton> = None;
    for (c, x) in point.iter().enumerate() {
        if !in_unit(x) {
            return Err(Error::OutOfRange(x.to_string()));
        }
        let one = linear_relation_automaton(&[to_i64(x.denom())?], to_i64(x.numer())?, radix.radix(c))?;
        acc = Some(match acc {
            None => one,
            Some(prev) => {
                let sub = radix.select(&(0..=c).collect::<Vec<_>>())?;
                join(&prev, &(0..c).collect::<Vec<_>>(), &one, &[c], &sub)?
            }
        });
    }
    Ok(acc.expect("arity at least one"))
}

/// `{x} × [0,1]` over `Σ_r²`.
pub fn fiber_automaton(x: &Rational, r: u32) -> Result<Automaton> {
    let radix = RadixVector::uniform(r, 2)?;
    let point = singleton_automaton(std::slice::from_ref(x), &RadixVector::uniform(r, 1)?)?;
    join(&point, &[0], &full_automaton(&RadixVector::uniform(r, 1)?), &[1], &radix)
}

/// Closes a closed automaton's language under value equality, coordinate by
/// coordinate. The result accepts every encoding of every point of the value
/// set and is a trim partial DFA (closed, deterministic, no reject sink).
pub fn saturate(a: &Automaton) -> Result<Automaton> {
    if !is_closed(a) {
        return Err(Error::NotClosed);
    }
    let n = a.arity();
    let mut cur = determinize_partial(a)?;
    for i in 0..n {
        let ri = a.radix().radix(i);
        let mut wide: Vec<u32> = a.radix().radices().to_vec();
        wide.push(ri);
        let wide = RadixVector::new(wide)?;
        let joined = join(&cur, &(0..n).collect::<Vec<_>>(), &equal_value_automaton(ri), &[i, n], &wide)?;
        let map: Vec<usize> = (0..n).map(|c| if c == i { n } else { c }).collect();
        cur = determinize_partial(&relabel(&joined, &map)?)?;
    }
    Ok(cur)
}

/// Whether the value set of a closed automaton is all of `[0,1]^n`; a
/// counterexample word has a value outside the set.
pub fn value_universality(a: &Automaton) -> Result<Universality> {
    universality_closed(&saturate(a)?)
}

/// `f(x)` for an automaton whose value set is the graph of a function.
pub fn eval_function(graph: &Automaton, x: &Rational) -> Result<Rational> {
    if graph.arity() != 2 {
        return Err(Error::BadArity { expected: 2, found: graph.arity() });
    }
    let r = graph.radix().require_uniform()?;
    let over_x = project(&product_intersect(graph, &fiber_automaton(x, r)?)?, &[1])?;
    let w = match is_empty(&over_x).witness() {
        None => return Err(Error::EmptyFiber(x.to_string())),
        Some(w) => w.clone(),
    };
    let y = valuation(&w, over_x.radix()).remove(0);
    let only_y = singleton_automaton(std::slice::from_ref(&y), over_x.radix())?;
    if let Some(other) = inclusion_counterexample(&over_x, &only_y)? {
        let z = valuation(&other, over_x.radix()).remove(0);
        return Err(Error::NotAFunction(format!("x = {x} has values {y} and {z}")));
    }
    Ok(y)
}
