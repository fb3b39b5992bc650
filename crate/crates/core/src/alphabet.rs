//! Digit alphabets `Σ_r1 × … × Σ_rn`.
//!
//! A letter is stored as a single `u32` code: the digit tuple read as a
//! mixed-radix number with the first coordinate most significant. Code order
//! therefore coincides with lexicographic order on digit tuples, which is what
//! every "least witness" search in the crate relies on.

use std::fmt;

use crate::error::{Error, Result};

/// Packed digit tuple, see the module docs.
pub type Letter = u32;

/// Alphabets above this size are refused.
pub const MAX_ALPHABET: u64 = 1 << 24;

/// Per-coordinate radices `(r_1, …, r_n)`, each at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RadixVector {
    radices: Vec<u32>,
    strides: Vec<u32>,
    size: u32,
}

impl RadixVector {
    pub fn new(radices: Vec<u32>) -> Result<Self> {
        if radices.is_empty() {
            return Err(Error::BadArity { expected: 1, found: 0 });
        }
        if let Some(r) = radices.iter().find(|&&r| r < 2) {
            return Err(Error::OutOfRange(format!("radix {r}")));
        }
        let size: u64 = radices.iter().map(|&r| r as u64).product();
        if size > MAX_ALPHABET {
            return Err(Error::ResourceCap(format!("alphabet of size {size}")));
        }
        let mut strides = vec![1u32; radices.len()];
        for i in (0..radices.len() - 1).rev() {
            strides[i] = strides[i + 1] * radices[i + 1];
        }
        Ok(RadixVector { radices, strides, size: size as u32 })
    }

    /// `n` copies of radix `r`.
    pub fn uniform(r: u32, arity: usize) -> Result<Self> {
        Self::new(vec![r; arity])
    }

    pub fn radices(&self) -> &[u32] {
        &self.radices
    }

    pub fn arity(&self) -> usize {
        self.radices.len()
    }

    pub fn radix(&self, coord: usize) -> u32 {
        self.radices[coord]
    }

    /// Number of letters, `Π r_i`.
    pub fn alphabet_size(&self) -> u32 {
        self.size
    }

    pub fn is_uniform(&self) -> bool {
        self.radices.windows(2).all(|w| w[0] == w[1])
    }

    /// The common radix, if all coordinates share one.
    pub fn uniform_radix(&self) -> Option<u32> {
        self.is_uniform().then(|| self.radices[0])
    }

    pub fn require_uniform(&self) -> Result<u32> {
        self.uniform_radix()
            .ok_or_else(|| Error::MixedRadix(self.radices.clone()))
    }

    pub fn in_range(&self, digits: &[u32]) -> bool {
        digits.len() == self.arity() && digits.iter().zip(&self.radices).all(|(d, r)| d < r)
    }

    /// Packs a digit tuple. Digits must be in range.
    pub fn encode(&self, digits: &[u32]) -> Letter {
        debug_assert!(self.in_range(digits), "digits {digits:?} out of range for {:?}", self.radices);
        digits.iter().zip(&self.strides).map(|(d, s)| d * s).sum()
    }

    pub fn decode(&self, letter: Letter) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.arity());
        self.decode_into(letter, &mut out);
        out
    }

    pub fn decode_into(&self, letter: Letter, out: &mut Vec<u32>) {
        out.clear();
        out.extend(self.strides.iter().zip(&self.radices).map(|(s, r)| (letter / s) % r));
    }

    /// Single coordinate of a packed letter.
    pub fn digit(&self, letter: Letter, coord: usize) -> u32 {
        (letter / self.strides[coord]) % self.radices[coord]
    }

    /// Radix vector made of the listed coordinates, in the listed order.
    pub fn select(&self, coords: &[usize]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| self.radices[c]).collect())
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.size
    }

    /// Formats a letter as `(d1,…,dn)`.
    pub fn show(&self, letter: Letter) -> String {
        DigitTuple(self.decode(letter)).to_string()
    }
}

/// An unpacked digit tuple, mostly for display and I/O.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitTuple(pub Vec<u32>);

impl fmt::Display for DigitTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}
