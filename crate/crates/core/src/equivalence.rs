//! Exact comparisons between the entangled and the classically correlated
//! backends, and the Hadamard-frame rewrite of the multiparty scheme.

use num_complex::Complex64;
use serde::Serialize;

use crate::bits::BitString;
use crate::classical::{even_parity_ensemble, vernam_encrypt, ClassicalEnsemble};
pub use crate::distribution::{total_variation, OutcomeDistribution};
use crate::error::{Error, Result};
use crate::protocols::{
    enumerate_two_party, multiparty_transcript_law, multiparty_transcript_law_with,
    two_party_transcript_law, two_party_transcript_law_with, Backend, MultipartyConfig,
    TwoPartyConfig, ENUMERATION_BOUND,
};
use crate::qstate::{
    conjugate_by_hadamard, dephase, enumerate_outcomes, make_ghz, BasisTag, Gate, StateVector,
};

/// Distances at or below this count as equal. In-scope probabilities are
/// dyadic with denominators at most 2^10, so genuine differences are far
/// larger.
pub const EQUIVALENCE_TOLERANCE: f64 = 1e-12;

/// Largest n for two-party backend comparison.
pub const TWO_PARTY_EQUIVALENCE_BOUND: usize = 3;

/// Largest m for multiparty backend comparison.
pub const MULTIPARTY_EQUIVALENCE_BOUND: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProtocolConfig {
    TwoParty(TwoPartyConfig),
    Multiparty(MultipartyConfig),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EquivalenceVerdict {
    pub distance_tv: f64,
    pub pass: bool,
}

impl EquivalenceVerdict {
    fn from_distance(distance_tv: f64) -> Self {
        EquivalenceVerdict {
            distance_tv,
            pass: distance_tv <= EQUIVALENCE_TOLERANCE,
        }
    }
}

fn check_equivalence_bound(config: &ProtocolConfig) -> Result<()> {
    let (what, size, bound) = match config {
        ProtocolConfig::TwoParty(c) => ("two-party equivalence", c.n(), TWO_PARTY_EQUIVALENCE_BOUND),
        ProtocolConfig::Multiparty(c) => {
            ("multiparty equivalence", c.m(), MULTIPARTY_EQUIVALENCE_BOUND)
        }
    };
    if size > bound {
        return Err(Error::BoundExceeded { what, size, bound });
    }
    Ok(())
}

/// Quantum-backend transcript law for `config`, whatever its backend.
fn quantum_law(config: &ProtocolConfig) -> Result<OutcomeDistribution> {
    match config {
        ProtocolConfig::TwoParty(c) => two_party_transcript_law(&c.with_backend(Backend::Quantum)),
        ProtocolConfig::Multiparty(c) => {
            multiparty_transcript_law(&c.with_backend(Backend::Quantum))
        }
    }
}

/// Compares the full transcript laws (all recorded bits plus the verdict)
/// of the two backends. The backend field of `config` is ignored.
pub fn backend_equivalence(config: &ProtocolConfig) -> Result<EquivalenceVerdict> {
    check_equivalence_bound(config)?;
    let classical = match config {
        ProtocolConfig::TwoParty(c) => {
            two_party_transcript_law(&c.with_backend(Backend::Classical))?
        }
        ProtocolConfig::Multiparty(c) => {
            multiparty_transcript_law(&c.with_backend(Backend::Classical))?
        }
    };
    let distance = total_variation(&quantum_law(config)?, &classical)?;
    Ok(EquivalenceVerdict::from_distance(distance))
}

/// As [`backend_equivalence`], with `resource` standing in for the
/// canonical classical resource (the correlated pair for two-party, the
/// even-parity ensemble for multiparty).
pub fn backend_equivalence_against(
    config: &ProtocolConfig,
    resource: &ClassicalEnsemble,
) -> Result<EquivalenceVerdict> {
    check_equivalence_bound(config)?;
    let classical = match config {
        ProtocolConfig::TwoParty(c) => two_party_transcript_law_with(c, resource)?,
        ProtocolConfig::Multiparty(c) => multiparty_transcript_law_with(c, resource)?,
    };
    let distance = total_variation(&quantum_law(config)?, &classical)?;
    Ok(EquivalenceVerdict::from_distance(distance))
}

/// Every `(p, r)` pair at size `n`, ordered by `p` then `r`.
pub fn two_party_configs(n: usize, backend: Backend) -> Result<Vec<TwoPartyConfig>> {
    if n == 0 {
        return Err(Error::InvalidConfig("n must be at least 1".into()));
    }
    if n > ENUMERATION_BOUND {
        return Err(Error::BoundExceeded {
            what: "two-party sweep",
            size: n,
            bound: ENUMERATION_BOUND,
        });
    }
    BitString::all(n)
        .flat_map(|p| BitString::all(n).map(move |r| (p.clone(), r)))
        .map(|(p, r)| TwoPartyConfig::new(p, r, backend))
        .collect()
}

/// Every password vector at size `m`, in index order.
pub fn multiparty_configs(m: usize, backend: Backend) -> Result<Vec<MultipartyConfig>> {
    if m == 0 {
        return Err(Error::InvalidConfig("m must be at least 1".into()));
    }
    if m > ENUMERATION_BOUND {
        return Err(Error::BoundExceeded {
            what: "multiparty sweep",
            size: m,
            bound: ENUMERATION_BOUND,
        });
    }
    BitString::all(m)
        .map(|p| MultipartyConfig::new(p, backend))
        .collect()
}

/// Checks that `u = vernam_encrypt(r, s)` on every outcome in the support of
/// the enumerated joint law: the public message is the challenge
/// one-time-padded with the system's share.
pub fn vernam_correspondence(config: &TwoPartyConfig) -> Result<bool> {
    let law = enumerate_two_party(config)?;
    for (key, _) in law.iter() {
        let (s, u) = key
            .split_once('|')
            .expect("joint outcome keys are `s|u`");
        let s: BitString = s.parse()?;
        let u: BitString = u.parse()?;
        if vernam_encrypt(config.challenge(), &s)? != u {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One single-qubit gate applied by one party.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PartyGate {
    pub party: usize,
    pub gate: Gate,
}

/// Declarative form of a multiparty session: a GHZ resource on `m` qubits,
/// per-party gates, and one readout basis for everybody.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultipartyDescription {
    pub m: usize,
    pub resource: &'static str,
    pub gates: Vec<PartyGate>,
    pub measurement: BasisTag,
}

impl MultipartyDescription {
    pub fn new(m: usize, gates: Vec<PartyGate>, measurement: BasisTag) -> Self {
        MultipartyDescription {
            m,
            resource: "ghz",
            gates,
            measurement,
        }
    }

    /// The honest session for `config`: `Z` on every party whose password
    /// bit is 1, Hadamard readout.
    pub fn from_config(config: &MultipartyConfig) -> Self {
        let gates = config
            .password()
            .iter()
            .enumerate()
            .filter(|&(_, bit)| bit)
            .map(|(party, _)| PartyGate {
                party,
                gate: Gate::Z,
            })
            .collect();
        MultipartyDescription::new(config.m(), gates, BasisTag::Hadamard)
    }

    fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidArity(0));
        }
        if self.m > ENUMERATION_BOUND {
            return Err(Error::BoundExceeded {
                what: "hadamard rewrite",
                size: self.m,
                bound: ENUMERATION_BOUND,
            });
        }
        if self.measurement != BasisTag::Hadamard {
            return Err(Error::UnsupportedShape(format!(
                "measurement must be in the hadamard basis, got {}",
                self.measurement
            )));
        }
        for g in &self.gates {
            if g.gate != Gate::Z {
                return Err(Error::UnsupportedShape(format!(
                    "party {} applies {}; only Z is supported",
                    g.party, g.gate
                )));
            }
            if g.party >= self.m {
                return Err(Error::IndexOutOfRange {
                    index: g.party,
                    len: self.m,
                });
            }
        }
        Ok(())
    }

    /// Password implied by the gate list: bit i is the parity of the number
    /// of `Z` gates party i applies.
    pub fn password(&self) -> BitString {
        let mut bits = BitString::zeros(self.m);
        for g in &self.gates {
            bits = bits.flipped(g.party).expect("party validated");
        }
        bits
    }

    fn execute(&self) -> Result<OutcomeDistribution> {
        let state = self
            .gates
            .iter()
            .try_fold(make_ghz(self.m)?, |s, g| s.apply(g.gate, g.party))?;
        Ok(enumerate_outcomes(&state, self.measurement))
    }
}

/// The protocol restated in Hadamard-frame coordinates: the resource is the
/// uniform superposition of even-parity hat strings, every gate is the
/// conjugated one, and readout is the plain readout of hat labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RewrittenDescription {
    pub m: usize,
    pub resource: &'static str,
    pub frame: BasisTag,
    /// Gates acting on hat labels; `X` here is `X̂`.
    pub gates: Vec<PartyGate>,
    pub measurement: &'static str,
}

impl RewrittenDescription {
    /// Amplitudes of the resource in hat coordinates: `1/√(2^{m−1})` on every
    /// even-parity string.
    fn resource_coordinates(&self) -> Result<StateVector> {
        let amp = Complex64::new((2f64).powi(-(self.m as i32 - 1)).sqrt(), 0.0);
        let amplitudes = BitString::all(self.m)
            .map(|y| if y.parity() { Complex64::new(0.0, 0.0) } else { amp })
            .collect();
        StateVector::new(amplitudes)
    }

    fn execute(&self) -> Result<OutcomeDistribution> {
        let state = self
            .gates
            .iter()
            .try_fold(self.resource_coordinates()?, |s, g| s.apply(g.gate, g.party))?;
        // In hat coordinates a Hadamard-basis readout is a plain readout.
        Ok(enumerate_outcomes(&state, BasisTag::Computational))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GateRelabel {
    pub party: usize,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RewriteReport {
    pub original: MultipartyDescription,
    pub rewritten: RewrittenDescription,
    pub gate_map: Vec<GateRelabel>,
    /// Largest amplitude gap between the GHZ state and the even-parity hat
    /// superposition mapped back to computational coordinates.
    pub resource_deviation: f64,
    /// Largest per-outcome probability gap between the two forms.
    pub max_deviation: f64,
    pub pass: bool,
}

/// Rewrites a multiparty description into the Hadamard frame and checks
/// that both forms produce the same readout law.
pub fn hadamard_rewrite(description: &MultipartyDescription) -> Result<RewriteReport> {
    description.validate()?;
    let mut gate_map = Vec::with_capacity(description.gates.len());
    let mut hat_gates = Vec::with_capacity(description.gates.len());
    for g in &description.gates {
        let conj = conjugate_by_hadamard(g.gate).gate.ok_or_else(|| {
            Error::UnsupportedShape(format!("{} has no labeled Hadamard conjugate", g.gate))
        })?;
        hat_gates.push(PartyGate {
            party: g.party,
            gate: conj,
        });
        gate_map.push(GateRelabel {
            party: g.party,
            from: g.gate.to_string(),
            to: format!("{conj}_hat"),
        });
    }
    let rewritten = RewrittenDescription {
        m: description.m,
        resource: "even_parity_hat_superposition",
        frame: BasisTag::Hadamard,
        gates: hat_gates,
        measurement: "hat_readout",
    };

    // Map the hat-coordinate resource back with H on every qubit and
    // compare against the GHZ state amplitude by amplitude.
    let ghz = make_ghz(description.m)?;
    let resource_deviation = rewritten
        .resource_coordinates()?
        .hadamard_all()
        .amplitudes()
        .iter()
        .zip(ghz.amplitudes())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);

    let original_law = description.execute()?;
    let rewritten_law = rewritten.execute()?;
    let max_deviation = original_law.max_deviation(&rewritten_law)?;

    Ok(RewriteReport {
        original: description.clone(),
        rewritten,
        gate_map,
        resource_deviation,
        max_deviation,
        pass: resource_deviation <= EQUIVALENCE_TOLERANCE
            && max_deviation <= EQUIVALENCE_TOLERANCE,
    })
}

/// Dephases the GHZ resource in the Hadamard basis, checks the result is the
/// even-parity ensemble, and checks that running the classical backend on it
/// reproduces the quantum transcript law.
pub fn classicality_certificate(description: &MultipartyDescription) -> Result<ClassicalEnsemble> {
    description.validate()?;
    let m = description.m;
    let ensemble = dephase(&make_ghz(m)?, BasisTag::Hadamard);
    let expected = even_parity_ensemble(m)?;
    if !ensemble.approx_eq(&expected, EQUIVALENCE_TOLERANCE) {
        return Err(Error::CertificateFailed(format!(
            "dephased GHZ({m}) is not the even-parity ensemble"
        )));
    }
    let config = MultipartyConfig::new(description.password(), Backend::Quantum)?;
    let distance = total_variation(
        &multiparty_transcript_law(&config)?,
        &multiparty_transcript_law_with(&config, &ensemble)?,
    )?;
    if distance > EQUIVALENCE_TOLERANCE {
        return Err(Error::CertificateFailed(format!(
            "classical run on the dephased resource is at distance {distance}"
        )));
    }
    Ok(ensemble)
}
