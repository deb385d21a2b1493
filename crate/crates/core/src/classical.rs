//! Shared classical randomness: correlated ensembles, bit flips on
//! ensembles, and the Vernam cipher.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::distribution::{bits_space, OutcomeDistribution, NORMALIZATION_TOLERANCE};
use crate::error::{Error, Result};
use crate::qstate::BasisTag;

/// Probability distribution over `num_bits`-bit strings, tagged with the
/// basis the strings label. The tag is metadata only.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassicalEnsemble {
    num_bits: usize,
    basis: BasisTag,
    entries: BTreeMap<BitString, f64>,
}

impl ClassicalEnsemble {
    /// Validates lengths and normalization; drops zero-weight entries and
    /// merges duplicates.
    pub fn new<I>(num_bits: usize, basis: BasisTag, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BitString, f64)>,
    {
        let mut map = BTreeMap::new();
        for (bits, p) in entries {
            if bits.len() != num_bits {
                return Err(Error::InvalidEnsemble(format!(
                    "entry {bits} has length {}, expected {num_bits}",
                    bits.len()
                )));
            }
            if !p.is_finite() || p < 0.0 {
                return Err(Error::InvalidEnsemble(format!("entry {bits} has weight {p}")));
            }
            if p > 0.0 {
                *map.entry(bits).or_insert(0.0) += p;
            }
        }
        let total: f64 = map.values().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::InvalidEnsemble(format!(
                "probabilities sum to {total}, expected 1"
            )));
        }
        Ok(ClassicalEnsemble {
            num_bits,
            basis,
            entries: map,
        })
    }

    pub fn uniform<I>(num_bits: usize, basis: BasisTag, support: I) -> Result<Self>
    where
        I: IntoIterator<Item = BitString>,
    {
        let support: Vec<BitString> = support.into_iter().collect();
        let p = 1.0 / support.len() as f64;
        Self::new(num_bits, basis, support.into_iter().map(|b| (b, p)))
    }

    pub fn num_bits(&self) -> usize {
        self.num_bits
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn prob(&self, bits: &BitString) -> f64 {
        self.entries.get(bits).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BitString, f64)> {
        self.entries.iter().map(|(b, &p)| (b, p))
    }

    pub fn total(&self) -> f64 {
        self.entries.values().sum()
    }

    /// Same tag, same width, same support, and per-entry probabilities
    /// within `tol`.
    pub fn approx_eq(&self, other: &ClassicalEnsemble, tol: f64) -> bool {
        self.basis == other.basis
            && self.num_bits == other.num_bits
            && self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .all(|(b, &p)| other.entries.get(b).is_some_and(|&q| (p - q).abs() <= tol))
    }

    /// Complements bit `position` of every entry.
    pub fn flip(&self, position: usize) -> Result<ClassicalEnsemble> {
        if position >= self.num_bits {
            return Err(Error::IndexOutOfRange {
                index: position,
                len: self.num_bits,
            });
        }
        let entries = self
            .entries
            .iter()
            .map(|(b, &p)| (b.flipped(position).expect("position checked"), p))
            .collect();
        Ok(ClassicalEnsemble {
            num_bits: self.num_bits,
            basis: self.basis,
            entries,
        })
    }

    /// Distribution of bit `position` alone.
    pub fn marginal(&self, position: usize) -> Result<OutcomeDistribution> {
        if position >= self.num_bits {
            return Err(Error::IndexOutOfRange {
                index: position,
                len: self.num_bits,
            });
        }
        OutcomeDistribution::from_weighted(
            bits_space(1),
            self.iter()
                .map(|(b, p)| (if b.bit(position) { "1" } else { "0" }, p)),
        )
    }

    pub fn to_distribution(&self) -> OutcomeDistribution {
        OutcomeDistribution::from_weighted(
            bits_space(self.num_bits),
            self.iter().map(|(b, p)| (b.to_string(), p)),
        )
        .expect("ensemble is normalized")
    }

    /// Draws one entry. Consumes exactly one `f64` from `rng`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BitString {
        let target = rng.gen::<f64>() * self.total();
        let mut acc = 0.0;
        for (b, &p) in &self.entries {
            acc += p;
            if target < acc {
                return b.clone();
            }
        }
        self.entries
            .keys()
            .next_back()
            .cloned()
            .expect("ensemble is non-empty")
    }
}

/// `½(00 + 11)` in the computational basis.
pub fn correlated_pair_ensemble() -> ClassicalEnsemble {
    ClassicalEnsemble::uniform(
        2,
        BasisTag::Computational,
        [BitString::zeros(2), BitString::ones(2)],
    )
    .expect("two equal weights")
}

/// Uniform over the even-parity `m`-bit strings, Hadamard-tagged.
pub fn even_parity_ensemble(m: usize) -> Result<ClassicalEnsemble> {
    if m == 0 {
        return Err(Error::InvalidArity(0));
    }
    ClassicalEnsemble::uniform(m, BasisTag::Hadamard, BitString::all(m).filter(|y| !y.parity()))
}

pub fn ensemble_flip(ensemble: &ClassicalEnsemble, position: usize) -> Result<ClassicalEnsemble> {
    ensemble.flip(position)
}

pub fn vernam_encrypt(message: &BitString, key: &BitString) -> Result<BitString> {
    message.xor(key)
}

pub fn vernam_decrypt(ciphertext: &BitString, key: &BitString) -> Result<BitString> {
    ciphertext.xor(key)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{dephase, make_bell_pair};

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn correlated_pair_examples() {
        let e = correlated_pair_ensemble();
        assert_eq!(e.basis(), BasisTag::Computational);
        assert_eq!(e.len(), 2);
        assert_eq!(e.prob(&bs("00")), 0.5);
        assert_eq!(e.prob(&bs("11")), 0.5);
        assert!(e.approx_eq(&dephase(&make_bell_pair(), BasisTag::Computational), 1e-12));
        for pos in 0..2 {
            let m = e.marginal(pos).unwrap();
            assert_eq!(m.prob("0"), 0.5);
            assert_eq!(m.prob("1"), 0.5);
        }
    }

    #[test]
    fn even_parity_examples() {
        assert!(matches!(even_parity_ensemble(0), Err(Error::InvalidArity(0))));
        let e1 = even_parity_ensemble(1).unwrap();
        assert_eq!(e1.len(), 1);
        assert_eq!(e1.prob(&bs("0")), 1.0);
        let e2 = even_parity_ensemble(2).unwrap();
        assert_eq!(e2.basis(), BasisTag::Hadamard);
        assert_eq!(e2.prob(&bs("00")), 0.5);
        assert_eq!(e2.prob(&bs("11")), 0.5);
    }

    #[test]
    fn even_parity_three_matches_filtered_enumeration() {
        // Oracle: walk all eight 3-bit strings by hand and keep those with
        // an even number of ones.
        let mut expected = Vec::new();
        for a in 0..2u8 {
            for b in 0..2u8 {
                for c in 0..2u8 {
                    if (a + b + c) % 2 == 0 {
                        expected.push(format!("{a}{b}{c}"));
                    }
                }
            }
        }
        assert_eq!(expected, ["000", "011", "101", "110"]);
        let e3 = even_parity_ensemble(3).unwrap();
        assert_eq!(e3.len(), expected.len());
        for key in &expected {
            assert_eq!(e3.prob(&bs(key)), 0.25);
        }
    }

    #[test]
    fn flip_examples() {
        let flipped = correlated_pair_ensemble().flip(0).unwrap();
        assert_eq!(flipped.prob(&bs("10")), 0.5);
        assert_eq!(flipped.prob(&bs("01")), 0.5);
        assert_eq!(flipped.flip(0).unwrap(), correlated_pair_ensemble());
        assert!(matches!(
            correlated_pair_ensemble().flip(2),
            Err(Error::IndexOutOfRange { index: 2, len: 2 })
        ));
    }

    #[test]
    fn flipping_even_parity_three_gives_odd_parity() {
        let flipped = even_parity_ensemble(3).unwrap().flip(1).unwrap();
        let odd: Vec<BitString> = BitString::all(3).filter(BitString::parity).collect();
        assert_eq!(flipped.len(), odd.len());
        for y in &odd {
            assert_eq!(flipped.prob(y), 0.25);
        }
    }

    #[test]
    fn ensemble_validation() {
        assert!(ClassicalEnsemble::new(2, BasisTag::Computational, [(bs("0"), 1.0)]).is_err());
        assert!(ClassicalEnsemble::new(1, BasisTag::Computational, [(bs("0"), 0.4)]).is_err());
        let e = ClassicalEnsemble::new(1, BasisTag::Computational, [(bs("0"), 1.0), (bs("1"), 0.0)])
            .unwrap();
        assert_eq!(e.len(), 1);
    }

    #[test]
    fn vernam_examples() {
        assert_eq!(vernam_encrypt(&bs("1011"), &bs("0000")).unwrap(), bs("1011"));
        assert_eq!(vernam_encrypt(&bs("1011"), &bs("1011")).unwrap(), bs("0000"));
        assert_eq!(vernam_encrypt(&bs("1100"), &bs("1010")).unwrap(), bs("0110"));
        assert_eq!(vernam_decrypt(&bs("0110"), &bs("1010")).unwrap(), bs("1100"));
        assert_eq!(vernam_decrypt(&bs("0110"), &bs("0000")).unwrap(), bs("0110"));
        assert!(matches!(
            vernam_encrypt(&bs("101"), &bs("10")),
            Err(Error::LengthMismatch { left: 3, right: 2 })
        ));
        assert!(vernam_decrypt(&bs("1"), &bs("")).is_err());
    }

    #[test]
    fn vernam_roundtrip_all_four_bit_pairs() {
        let mut checked = 0;
        for m in BitString::all(4) {
            for k in BitString::all(4) {
                let c = vernam_encrypt(&m, &k).unwrap();
                assert_eq!(vernam_decrypt(&c, &k).unwrap(), m);
                checked += 1;
            }
        }
        assert_eq!(checked, 256);
    }
}
