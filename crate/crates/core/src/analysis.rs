//! Decision procedures and structure extraction for functions `[0,1] → [0,1]`
//! given by automata over `Σ_r²` (tape 0 is `x`, tape 1 is `f(x)`).

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::alphabet::{Letter, RadixVector};
use crate::automaton::{closure, complete, is_closed, path_label_count_any, sinks, trim, Automaton, StateId};
use crate::error::{Error, Result};
use crate::lasso::Lasso;
use crate::omega::{complement_det, is_empty, join, language_equal, project, universality_closed, Universality};
use crate::real::{
    affine_graph_automaton, digits_value, equal_value_automaton, eval_function, midpoint_relation_automaton, saturate,
    valuation, value_universality, Rational,
};

/// Budget on the number of label words explored by [`slope_set`].
pub const MAX_WITNESS_PATHS: usize = 10_000_000;

fn require_graph(a: &Automaton) -> Result<u32> {
    if a.arity() != 2 {
        return Err(Error::BadArity { expected: 2, found: a.arity() });
    }
    a.radix().require_uniform()
}

fn first_value(w: &Lasso, radix: &RadixVector) -> Rational {
    valuation(w, radix).remove(0)
}

/// Outcome of [`is_function`]. Both conditions are checked independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctionReport {
    /// A point of `[0,1]` with no value, if any.
    #[serde(serialize_with = "ser_opt_rational")]
    pub missing: Option<Rational>,
    /// A point with two distinct values `(x, y1, y2)`, if any.
    #[serde(serialize_with = "ser_opt_triple")]
    pub multivalued: Option<(Rational, Rational, Rational)>,
}

impl FunctionReport {
    pub fn is_function(&self) -> bool {
        self.missing.is_none() && self.multivalued.is_none()
    }
}

/// Whether the value set of a closed automaton is the graph of a total
/// function `[0,1] → [0,1]`.
pub fn is_function(a: &Automaton) -> Result<FunctionReport> {
    let r = require_graph(a)?;
    if !is_closed(a) {
        return Err(Error::NotClosed);
    }
    let s = saturate(a)?;
    let dom = project(&s, &[0])?;
    // dom is saturated, so a rejected word has a value outside the domain
    let missing = universality_closed(&dom)?.counterexample().map(|w| first_value(w, dom.radix()));

    let r3 = RadixVector::uniform(r, 3)?;
    let pair = join(&s, &[0, 1], &s, &[0, 2], &r3)?;
    let neq = complement_det(&complete(&equal_value_automaton(r))?)?;
    let split = join(&pair, &[0, 1, 2], &neq, &[1, 2], &r3)?;
    let multivalued = is_empty(&split).witness().map(|w| {
        let v = valuation(w, &r3);
        (v[0].clone(), v[1].clone(), v[2].clone())
    });
    Ok(FunctionReport { missing, multivalued })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Continuity {
    Continuous,
    /// The closure of the graph takes two values at `x`.
    Discontinuous {
        #[serde(serialize_with = "ser_rational")]
        x: Rational,
        #[serde(serialize_with = "ser_rational")]
        y1: Rational,
        #[serde(serialize_with = "ser_rational")]
        y2: Rational,
    },
}

/// Continuity of a total function. A total function with closed graph is
/// continuous, so a closed presentation is checked only for being a function;
/// otherwise the closure of the trimmed presentation must still be a function.
pub fn is_continuous(a: &Automaton) -> Result<Continuity> {
    let (target, closed_input) = if is_closed(a) { (a.clone(), true) } else { (closure(&trim(a)?), false) };
    let report = is_function(&target)?;
    if let Some(x) = &report.missing {
        return Err(Error::NotAFunction(format!("no value at x = {x}")));
    }
    match report.multivalued {
        None => Ok(Continuity::Continuous),
        Some((x, y1, y2)) if closed_input => Err(Error::NotAFunction(format!("x = {x} has values {y1} and {y2}"))),
        Some((x, y1, y2)) => Ok(Continuity::Discontinuous { x, y1, y2 }),
    }
}

fn sub_automaton(a: &Automaton, sink: &[StateId], q: StateId) -> Result<Automaton> {
    let names = || sink.iter().map(|&s| a.name(s).to_string()).collect::<Vec<_>>();
    if !sinks(a).iter().any(|s| s == sink) {
        return Err(Error::UnknownSink(names()));
    }
    if !sink.contains(&q) {
        return Err(Error::UnknownState(a.name(q).to_string()));
    }
    let mut keep = vec![false; a.num_states()];
    for &s in sink {
        keep[s] = true;
    }
    Ok(a.restrict(&keep, &[q]))
}

/// Whether the `x`-projection of the value set of `A_{Q',{q}}` is `[0,1]`.
pub fn sink_projection_full(a: &Automaton, sink: &[StateId], q: StateId) -> Result<bool> {
    let sub = sub_automaton(a, sink, q)?;
    let Ok(sub) = trim(&sub) else { return Ok(false) };
    Ok(value_universality(&project(&sub, &[0])?)?.is_universal())
}

/// Removes sinks none of whose states has a full projection, re-trimming
/// until every sink has such a state. The value set is preserved for graphs
/// of continuous functions.
pub fn make_full(a: &Automaton) -> Result<Automaton> {
    require_graph(a)?;
    if !is_closed(a) {
        return Err(Error::NotClosed);
    }
    if !a.is_deterministic() {
        return Err(Error::NotDeterministic);
    }
    let mut cur = trim(a)?;
    loop {
        let mut keep = vec![true; cur.num_states()];
        let mut pruned = false;
        for sink in sinks(&cur) {
            let mut full = false;
            for &q in &sink {
                if sink_projection_full(&cur, &sink, q)? {
                    full = true;
                    break;
                }
            }
            if !full {
                pruned = true;
                for &s in &sink {
                    keep[s] = false;
                }
            }
        }
        if !pruned {
            return Ok(cur);
        }
        if !cur.initial().iter().any(|&s| keep[s]) {
            return Err(Error::EmptyLanguage);
        }
        cur = trim(&cur.restrict(&keep, cur.initial()))?;
    }
}

/// The affine map carried by a sink entered at a given state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffinePiece {
    #[serde(serialize_with = "ser_rational")]
    pub alpha: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub beta: Rational,
    pub sink: Vec<String>,
    pub entry: String,
}

/// Reads off `x ↦ αx + β` from `A_{Q',{q}}` at `x = 0` and `x = 1`, then
/// checks that its value set is exactly that graph.
pub fn sink_affine(a: &Automaton, sink: &[StateId], q: StateId) -> Result<AffinePiece> {
    let r = require_graph(a)?;
    let sub = trim(&sub_automaton(a, sink, q)?)?;
    let not_affine = || Error::NotAffineSink {
        sink: sink.iter().map(|&s| a.name(s).to_string()).collect(),
        entry: a.name(q).to_string(),
    };
    let beta = eval_function(&sub, &Rational::zero()).map_err(|_| not_affine())?;
    let alpha = eval_function(&sub, &Rational::from_integer(1.into())).map_err(|_| not_affine())? - &beta;
    let graph = affine_graph_automaton(&alpha, &beta, r).map_err(|_| not_affine())?;
    if !language_equal(&saturate(&sub)?, &graph)? {
        return Err(not_affine());
    }
    Ok(AffinePiece { alpha, beta, sink: sink.iter().map(|&s| a.name(s).to_string()).collect(), entry: a.name(q).to_string() })
}

/// `f` is affine with slope `slope` on `[left, left + r^{-depth}]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessInterval {
    #[serde(serialize_with = "ser_rational")]
    pub left: Rational,
    pub depth: usize,
    #[serde(serialize_with = "ser_rational")]
    pub slope: Rational,
    pub entry: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PiecewiseReport {
    #[serde(serialize_with = "ser_rationals")]
    pub slopes: Vec<Rational>,
    pub pieces: Vec<AffinePiece>,
    pub depth: usize,
    pub witnesses: Vec<WitnessInterval>,
    /// Length of the union of the witness intervals.
    #[serde(serialize_with = "ser_rational")]
    pub covered: Rational,
}

impl PiecewiseReport {
    /// Measure of the union of the witness intervals with slope `alpha`
    /// intersected with `[0, t]`.
    pub fn covered_up_to(&self, alpha: &Rational, t: &Rational, radix: u32) -> Rational {
        let chosen: Vec<&WitnessInterval> = self.witnesses.iter().filter(|w| &w.slope == alpha).collect();
        union_measure(&chosen, radix, self.depth, Some(t))
    }
}

fn union_measure(ws: &[&WitnessInterval], r: u32, depth: usize, upto: Option<&Rational>) -> Rational {
    let scale = BigInt::from(r).pow(depth as u32);
    let scale_q = Rational::from_integer(scale.clone());
    let mut spans: Vec<(BigInt, BigInt)> = ws
        .iter()
        .map(|w| {
            let lo = (&w.left * &scale_q).to_integer();
            let hi = &lo + BigInt::from(r).pow((depth - w.depth) as u32);
            (lo, hi)
        })
        .collect();
    spans.sort();
    let mut total = Rational::zero();
    let cap = upto.map(|t| t * &scale_q);
    let mut add = |lo: &BigInt, hi: &BigInt| {
        let lo = Rational::from_integer(lo.clone());
        let mut hi = Rational::from_integer(hi.clone());
        if let Some(c) = &cap {
            if &hi > c {
                hi = c.clone();
            }
        }
        if hi > lo {
            total += hi - lo;
        }
    };
    let mut cur: Option<(BigInt, BigInt)> = None;
    for (lo, hi) in spans {
        cur = match cur {
            Some((cl, ch)) if lo <= ch => Some((cl, ch.max(hi))),
            Some((cl, ch)) => {
                add(&cl, &ch);
                Some((lo, hi))
            }
            None => Some((lo, hi)),
        };
    }
    if let Some((cl, ch)) = cur {
        add(&cl, &ch);
    }
    total / scale_q
}

/// Slopes of the full sinks and the intervals of length `r^{-m}`, `m ≤ depth`,
/// on which `f` is certified affine: one per `x`-label of a shortest path
/// from the initial state into a state entering a full sink.
pub fn slope_set(a: &Automaton, depth: usize) -> Result<PiecewiseReport> {
    let r = require_graph(a)?;
    let a = make_full(a)?;
    let mut pieces = Vec::new();
    let mut entry_slope: Vec<Option<Rational>> = vec![None; a.num_states()];
    for sink in sinks(&a) {
        for &q in &sink {
            if sink_projection_full(&a, &sink, q)? {
                let piece = sink_affine(&a, &sink, q)?;
                entry_slope[q] = Some(piece.alpha.clone());
                pieces.push(piece);
            }
        }
    }
    let slopes: Vec<Rational> = pieces.iter().map(|p| p.alpha.clone()).collect::<BTreeSet<_>>().into_iter().collect();

    let mut found: BTreeSet<(Vec<u32>, usize)> = BTreeSet::new();
    let mut witnesses = Vec::new();
    // (state, x digits so far)
    let mut frontier: Vec<(StateId, Vec<u32>)> = a.initial().iter().map(|&s| (s, Vec::new())).collect();
    let mut explored = 0usize;
    for m in 0..=depth {
        let mut next = Vec::new();
        for (s, xs) in frontier {
            if let Some(alpha) = &entry_slope[s] {
                if found.insert((xs.clone(), s)) {
                    witnesses.push(WitnessInterval {
                        left: digits_value(&xs, &[0], r),
                        depth: m,
                        slope: alpha.clone(),
                        entry: a.name(s).to_string(),
                    });
                }
                continue;
            }
            if m == depth {
                continue;
            }
            for &(l, t) in a.transitions(s) {
                explored += 1;
                if explored > MAX_WITNESS_PATHS {
                    return Err(Error::ResourceCap(format!("more than {MAX_WITNESS_PATHS} witness paths")));
                }
                let mut ys = xs.clone();
                ys.push(a.radix().digit(l as Letter, 0));
                next.push((t, ys));
            }
        }
        frontier = next;
    }
    witnesses.sort_by(|p, q| (&p.left, p.depth, &p.entry).cmp(&(&q.left, q.depth, &q.entry)));
    let refs: Vec<&WitnessInterval> = witnesses.iter().collect();
    let covered = union_measure(&refs, r, depth, None);
    Ok(PiecewiseReport { slopes, pieces, depth, witnesses, covered })
}

/// Outcome of the differentiability decision. A differentiable regular
/// function is affine, so this decides affineness through the midpoint
/// identity `f((x+y)/2) = (f(x)+f(y))/2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Differentiability {
    Affine {
        #[serde(serialize_with = "ser_rational")]
        alpha: Rational,
        #[serde(serialize_with = "ser_rational")]
        beta: Rational,
    },
    /// The midpoint identity fails at `(x, y)`.
    NotDifferentiable {
        #[serde(serialize_with = "ser_rational")]
        x: Rational,
        #[serde(serialize_with = "ser_rational")]
        y: Rational,
        #[serde(serialize_with = "ser_rational")]
        f_mid: Rational,
        #[serde(serialize_with = "ser_rational")]
        f_x: Rational,
        #[serde(serialize_with = "ser_rational")]
        f_y: Rational,
    },
}

impl Differentiability {
    pub fn is_differentiable(&self) -> bool {
        matches!(self, Differentiability::Affine { .. })
    }
}

/// Decides differentiability of the continuous function whose graph is the
/// value set of `a`. Counterexamples are re-checked by evaluation.
pub fn is_differentiable(a: &Automaton) -> Result<Differentiability> {
    let r = require_graph(a)?;
    let g = saturate(a)?;
    let m = midpoint_relation_automaton(r);
    let r3 = RadixVector::uniform(r, 3)?;
    // A1(x, y, z): z = f((x+y)/2), extra tape 3 = m
    let a1 = join(&m, &[0, 1, 3], &g, &[3, 2], &RadixVector::uniform(r, 4)?)?;
    let a1 = crate::omega::determinize_partial(&project(&a1, &[0, 1, 2])?)?;
    // A2(x, y, z): z = (f(x)+f(y))/2, extra tapes 3 = f(x), 4 = f(y)
    let r5 = RadixVector::uniform(r, 5)?;
    let gg = join(&g, &[0, 2], &g, &[1, 3], &RadixVector::uniform(r, 4)?)?;
    let a2 = join(&gg, &[0, 1, 3, 4], &m, &[3, 4, 2], &r5)?;
    let a2 = crate::omega::determinize_partial(&project(&a2, &[0, 1, 2])?)?;
    let both = join(&a1, &[0, 1, 2], &a2, &[0, 1, 2], &r3)?;
    let agree = project(&both, &[0, 1])?;
    match value_universality(&agree)? {
        Universality::Universal => {
            let beta = eval_function(a, &Rational::zero())?;
            let alpha = eval_function(a, &Rational::from_integer(1.into()))? - &beta;
            Ok(Differentiability::Affine { alpha, beta })
        }
        Universality::Counterexample(w) => {
            let v = valuation(&w, agree.radix());
            let (x, y) = (v[0].clone(), v[1].clone());
            let two = Rational::from_integer(2.into());
            let f_mid = eval_function(a, &((&x + &y) / &two))?;
            let f_x = eval_function(a, &x)?;
            let f_y = eval_function(a, &y)?;
            if f_mid == (&f_x + &f_y) / &two {
                return Err(Error::NotAFunction(format!("midpoint counterexample ({x}, {y}) does not re-verify")));
            }
            Ok(Differentiability::NotDifferentiable { x, y, f_mid, f_x, f_y })
        }
    }
}

/// `f(t)` against its reconstruction `f(0) + Σ_α α·|U_α ∩ [0,t]|` from the
/// witness intervals at `depth`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumForm {
    #[serde(serialize_with = "ser_rational")]
    pub t: Rational,
    pub depth: usize,
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub reconstruction: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub residual: Rational,
}

pub fn sum_form_check(a: &Automaton, t: &Rational, depth: usize) -> Result<SumForm> {
    let r = require_graph(a)?;
    let report = slope_set(a, depth)?;
    let value = eval_function(a, t)?;
    let mut reconstruction = eval_function(a, &Rational::zero())?;
    for alpha in &report.slopes {
        reconstruction += alpha * report.covered_up_to(alpha, t, r);
    }
    let residual = (&value - &reconstruction).abs();
    Ok(SumForm { t: t.clone(), depth, value, reconstruction, residual })
}

/// `|⋃_q P_{p,q}(n)| / r^n` from the initial state, for `n = 0..=max_len`.
pub fn path_density(a: &Automaton, max_len: usize) -> Result<Vec<Rational>> {
    let r = a.radix().require_uniform()?;
    let p = a.name(a.initial()[0]).to_string();
    (0..=max_len)
        .map(|n| path_label_count_any(a, &p, n).map(|c| c.density(r)))
        .collect()
}

pub(crate) fn ser_rational<S: serde::Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_opt_rational<S: serde::Serializer>(x: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_some(&x.to_string()),
        None => s.serialize_none(),
    }
}

fn ser_opt_triple<S: serde::Serializer>(
    x: &Option<(Rational, Rational, Rational)>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some((a, b, c)) => s.serialize_some(&[a.to_string(), b.to_string(), c.to_string()]),
        None => s.serialize_none(),
    }
}

fn ser_rationals<S: serde::Serializer>(xs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

/// Approximate value for display only.
pub fn to_f64(x: &Rational) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}
