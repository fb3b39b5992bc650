//! Büchi automata over digit alphabets as representations of subsets of
//! `[0,1]^n` and of real functions, with decision procedures for regular
//! functions (function, continuity, differentiability), piecewise-affine
//! structure extraction and fractal geometry of the accepted sets.
//!
//! Words are read most significant digit first; a word `w` over `Σ_r`
//! denotes `Σ_i w_i r^{-i}` with the first digit weighted `r^{-1}`.

pub mod alphabet;
pub mod analysis;
pub mod automaton;
pub mod corpus;
pub mod error;
pub mod format;
pub mod geometry;
pub mod lasso;
pub mod omega;
pub mod real;

pub use alphabet::{DigitTuple, Letter, RadixVector};
pub use automaton::{Automaton, AutomatonBuilder, Diagnostic, RawAutomaton, StateId};
pub use error::{Error, Result};
pub use lasso::{accepts, Lasso};
pub use real::Rational;
