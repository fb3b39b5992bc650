use thiserror::Error;

use crate::automaton::Diagnostic;

/// Errors raised by automaton constructions and the analysis pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the automaton accepts no word")]
    EmptyLanguage,
    #[error("the automaton is not deterministic")]
    NotDeterministic,
    #[error("the automaton is not complete")]
    NotComplete,
    #[error("the automaton is not weak")]
    NotWeak,
    #[error("the automaton is not closed")]
    NotClosed,
    #[error("radix vectors differ: {left:?} vs {right:?}")]
    RadixMismatch { left: Vec<u32>, right: Vec<u32> },
    #[error("operation needs a uniform radix, found {0:?}")]
    MixedRadix(Vec<u32>),
    #[error("operation needs arity {expected}, found {found}")]
    BadArity { expected: usize, found: usize },
    #[error("bad coordinate list {keep:?} for arity {arity}")]
    BadCoordinates { keep: Vec<usize>, arity: usize },
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("states {0:?} do not form a sink")]
    UnknownSink(Vec<String>),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("value {0} lies outside [0,1]")]
    OutOfRange(String),
    #[error("affine map x -> {alpha}x + {beta} leaves [0,1]")]
    RangeViolation { alpha: String, beta: String },
    #[error("the value set is not the graph of a function: {0}")]
    NotAFunction(String),
    #[error("no point of the graph lies over x = {0}")]
    EmptyFiber(String),
    #[error("sink {sink:?} entered at `{entry}` is not the graph of an affine map")]
    NotAffineSink { sink: Vec<String>, entry: String },
    #[error("the value set is not nowhere dense (residual `{0}` covers [0,1])")]
    NotNowhereDense(String),
    #[error("invalid automaton: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
