//! The `.regba` text format.
//!
//! ```text
//! # comment
//! radix 3 3
//! states q0 q1
//! initial q0
//! accepting q0 q1
//! trans q0 (1,0) q1
//! ```
//!
//! Keywords may repeat (`states` lines accumulate); `radix` must appear once.
//! Digit tuples may contain spaces after commas. Serialization lists states in
//! lexicographic order and transitions by `(source, digits, target)`.

use std::fmt::Write as _;

use crate::automaton::{Automaton, RawAutomaton};
use crate::error::{Error, Result};

fn err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse { line, reason: reason.into() }
}

fn parse_digits(text: &str, line: usize) -> Result<Vec<u32>> {
    text.split(',')
        .map(|d| {
            let d = d.trim();
            d.parse::<u32>().map_err(|_| err(line, format!("bad digit `{d}`")))
        })
        .collect()
}

/// Parses without checking the automaton invariants.
pub fn parse_raw(text: &str) -> Result<RawAutomaton> {
    let mut raw = RawAutomaton::default();
    let mut seen_radix = false;
    for (i, full) in text.lines().enumerate() {
        let line = i + 1;
        let content = full.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        let words = || rest.split_whitespace().map(str::to_string);
        match keyword {
            "radix" => {
                if seen_radix {
                    return Err(err(line, "radix declared twice"));
                }
                seen_radix = true;
                raw.radix = rest
                    .split_whitespace()
                    .map(|r| r.parse::<u32>().map_err(|_| err(line, format!("bad radix `{r}`"))))
                    .collect::<Result<_>>()?;
                if raw.radix.is_empty() {
                    return Err(err(line, "empty radix"));
                }
            }
            "states" => raw.states.extend(words()),
            "initial" => raw.initial.extend(words()),
            "accepting" => raw.accepting.extend(words()),
            "trans" => {
                let open = rest.find('(').ok_or_else(|| err(line, "missing `(` in transition"))?;
                let close = rest.find(')').ok_or_else(|| err(line, "missing `)` in transition"))?;
                if close < open {
                    return Err(err(line, "misplaced `)`"));
                }
                let src = rest[..open].trim();
                let dst = rest[close + 1..].trim();
                if src.is_empty() || src.contains(char::is_whitespace) {
                    return Err(err(line, "transition needs exactly one source state"));
                }
                if dst.is_empty() || dst.contains(char::is_whitespace) {
                    return Err(err(line, "transition needs exactly one target state"));
                }
                let digits = parse_digits(&rest[open + 1..close], line)?;
                raw.transitions.push((src.to_string(), digits, dst.to_string()));
            }
            other => return Err(err(line, format!("unknown keyword `{other}`"))),
        }
    }
    if !seen_radix {
        return Err(err(text.lines().count().max(1), "missing radix line"));
    }
    Ok(raw)
}

/// Parses and validates.
pub fn parse(text: &str) -> Result<Automaton> {
    parse_raw(text)?.build()
}

pub fn serialize(a: &Automaton) -> String {
    let mut order: Vec<usize> = a.states().collect();
    order.sort_by(|&x, &y| a.name(x).cmp(a.name(y)));
    let names = |it: &mut dyn Iterator<Item = usize>| it.map(|s| a.name(s)).collect::<Vec<_>>().join(" ");

    let mut out = String::new();
    let radix: Vec<String> = a.radix().radices().iter().map(u32::to_string).collect();
    writeln!(out, "radix {}", radix.join(" ")).unwrap();
    writeln!(out, "states {}", names(&mut order.iter().copied())).unwrap();
    writeln!(out, "initial {}", names(&mut order.iter().copied().filter(|&s| a.is_initial(s)))).unwrap();
    writeln!(out, "accepting {}", names(&mut order.iter().copied().filter(|&s| a.is_accepting(s)))).unwrap();
    for &s in &order {
        let mut edges: Vec<(u32, &str)> = a.transitions(s).iter().map(|&(l, t)| (l, a.name(t))).collect();
        // letter order is lexicographic digit order
        edges.sort();
        for (l, t) in edges {
            writeln!(out, "trans {} {} {}", a.name(s), a.radix().show(l), t).unwrap();
        }
    }
    out
}
