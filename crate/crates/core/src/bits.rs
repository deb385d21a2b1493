//! Fixed-length bit strings.
//!
//! Text form is a run of `'0'`/`'1'` characters with the leftmost character
//! at index 0. When a bit string addresses a state-vector amplitude, index 0
//! is the most significant bit.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        BitString(bits)
    }

    pub fn zeros(len: usize) -> Self {
        BitString(vec![false; len])
    }

    pub fn ones(len: usize) -> Self {
        BitString(vec![true; len])
    }

    /// Bit string of `len` bits whose big-endian value is `index`.
    pub fn from_index(index: usize, len: usize) -> Self {
        debug_assert!(len >= usize::BITS as usize || index >> len == 0);
        BitString(
            (0..len)
                .map(|pos| (index >> (len - 1 - pos)) & 1 == 1)
                .collect(),
        )
    }

    /// Big-endian value; index 0 is the most significant bit.
    pub fn to_index(&self) -> usize {
        self.0
            .iter()
            .fold(0usize, |acc, &b| (acc << 1) | usize::from(b))
    }

    /// All strings of length `len` in increasing index order.
    pub fn all(len: usize) -> impl Iterator<Item = BitString> {
        (0..1usize << len).map(move |i| BitString::from_index(i, len))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, pos: usize) -> Option<bool> {
        self.0.get(pos).copied()
    }

    pub fn bit(&self, pos: usize) -> bool {
        self.0[pos]
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.0.iter().copied()
    }

    /// XOR of all bits.
    pub fn parity(&self) -> bool {
        self.0.iter().fold(false, |acc, &b| acc ^ b)
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn flipped(&self, pos: usize) -> Result<BitString> {
        if pos >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: pos,
                len: self.len(),
            });
        }
        let mut out = self.clone();
        out.0[pos] = !out.0[pos];
        Ok(out)
    }

    pub fn xor(&self, other: &BitString) -> Result<BitString> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(BitString(
            self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect(),
        ))
    }

    pub fn concat(&self, other: &BitString) -> BitString {
        let mut bits = self.0.clone();
        bits.extend_from_slice(&other.0);
        BitString(bits)
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }
}

impl From<Vec<bool>> for BitString {
    fn from(bits: Vec<bool>) -> Self {
        BitString(bits)
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        BitString(iter.into_iter().collect())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(pos, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidBitString {
                    text: s.to_string(),
                    reason: format!("character {other:?} at position {pos} is not 0 or 1"),
                }),
            })
            .collect()
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
