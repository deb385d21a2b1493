//! Exact probability maps over protocol outcomes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Entries below this are treated as floating-point dust and dropped.
pub const PRUNE_THRESHOLD: f64 = 1e-15;

/// Allowed deviation of the total mass from 1.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// A finite distribution keyed by an outcome's canonical text form.
///
/// `space` names the outcome space (for example `bits:3` or
/// `two_party_transcript:2`); distances are only defined between
/// distributions over the same space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutcomeDistribution {
    space: String,
    entries: BTreeMap<String, f64>,
}

impl OutcomeDistribution {
    /// Builds a distribution, summing duplicate keys and pruning dust.
    pub fn from_weighted<I, K>(space: impl Into<String>, weighted: I) -> Result<Self>
    where
        I: IntoIterator<Item = (K, f64)>,
        K: Into<String>,
    {
        let mut entries = BTreeMap::new();
        for (key, p) in weighted {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::InvalidState(format!("probability {p} is not a valid weight")));
            }
            *entries.entry(key.into()).or_insert(0.0) += p;
        }
        entries.retain(|_, p| *p >= PRUNE_THRESHOLD);
        let total: f64 = entries.values().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::InvalidState(format!(
                "probabilities sum to {total}, expected 1"
            )));
        }
        Ok(OutcomeDistribution {
            space: space.into(),
            entries,
        })
    }

    pub fn uniform<I, K>(space: impl Into<String>, support: I) -> Result<Self>
    where
        I: IntoIterator<Item = K>,
        K: Into<String>,
    {
        let keys: Vec<String> = support.into_iter().map(Into::into).collect();
        let p = 1.0 / keys.len() as f64;
        Self::from_weighted(space, keys.into_iter().map(|k| (k, p)))
    }

    pub fn space(&self) -> &str {
        &self.space
    }

    pub fn entries(&self) -> &BTreeMap<String, f64> {
        &self.entries
    }

    pub fn prob(&self, key: &str) -> f64 {
        self.entries.get(key).copied().unwrap_or(0.0)
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.entries.iter().map(|(k, &p)| (k.as_str(), p))
    }

    /// Pushes every outcome through `f` and re-aggregates under `space`.
    pub fn map_keys<F>(&self, space: impl Into<String>, mut f: F) -> Result<Self>
    where
        F: FnMut(&str) -> String,
    {
        Self::from_weighted(space, self.entries.iter().map(|(k, &p)| (f(k), p)))
    }

    /// Largest absolute per-entry difference over the union of supports.
    pub fn max_deviation(&self, other: &OutcomeDistribution) -> Result<f64> {
        self.check_space(other)?;
        Ok(self
            .union_keys(other)
            .map(|k| (self.prob(k) - other.prob(k)).abs())
            .fold(0.0, f64::max))
    }

    fn check_space(&self, other: &OutcomeDistribution) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                left: self.space.clone(),
                right: other.space.clone(),
            });
        }
        Ok(())
    }

    fn union_keys<'a>(&'a self, other: &'a OutcomeDistribution) -> impl Iterator<Item = &'a str> {
        self.entries
            .keys()
            .chain(other.entries.keys().filter(|k| !self.entries.contains_key(*k)))
            .map(String::as_str)
    }
}

/// Total-variation distance `½·Σ|d1(x) − d2(x)|` over the union of supports.
pub fn total_variation(d1: &OutcomeDistribution, d2: &OutcomeDistribution) -> Result<f64> {
    d1.check_space(d2)?;
    let sum: f64 = d1
        .union_keys(d2)
        .map(|k| (d1.prob(k) - d2.prob(k)).abs())
        .sum();
    Ok((0.5 * sum).clamp(0.0, 1.0))
}

/// Label of the space of `len`-bit strings.
pub fn bits_space(len: usize) -> String {
    format!("bits:{len}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(pairs: &[(&str, f64)]) -> OutcomeDistribution {
        OutcomeDistribution::from_weighted(bits_space(1), pairs.iter().map(|&(k, p)| (k, p)))
            .unwrap()
    }

    #[test]
    fn identical_distributions_are_at_distance_zero() {
        let d = dist(&[("0", 0.3), ("1", 0.7)]);
        assert_eq!(total_variation(&d, &d).unwrap(), 0.0);
    }

    #[test]
    fn disjoint_supports_are_at_distance_one() {
        let a = dist(&[("0", 1.0)]);
        let b = dist(&[("1", 1.0)]);
        assert_eq!(total_variation(&a, &b).unwrap(), 1.0);
    }

    #[test]
    fn quarter_distance() {
        let a = dist(&[("0", 0.5), ("1", 0.5)]);
        let b = dist(&[("0", 0.75), ("1", 0.25)]);
        assert!((total_variation(&a, &b).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn mismatched_spaces_are_rejected() {
        let a = dist(&[("0", 1.0)]);
        let b = OutcomeDistribution::from_weighted(bits_space(2), [("00", 1.0)]).unwrap();
        assert!(matches!(
            total_variation(&a, &b),
            Err(Error::SpaceMismatch { .. })
        ));
    }

    #[test]
    fn construction_prunes_dust_and_checks_mass() {
        let d = OutcomeDistribution::from_weighted(
            bits_space(1),
            [("0", 1.0 - 1e-16), ("1", 1e-16)],
        )
        .unwrap();
        assert_eq!(d.support_len(), 1);
        assert!(OutcomeDistribution::from_weighted(bits_space(1), [("0", 0.5)]).is_err());
        assert!(OutcomeDistribution::from_weighted(bits_space(1), [("0", -0.5), ("1", 1.5)]).is_err());
    }

    #[test]
    fn duplicate_keys_accumulate() {
        let d = OutcomeDistribution::from_weighted(bits_space(1), [("0", 0.25), ("0", 0.25), ("1", 0.5)])
            .unwrap();
        assert_eq!(d.prob("0"), 0.5);
    }
}
