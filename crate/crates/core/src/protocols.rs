//! The two-party password scheme and the multiparty parity scheme, each
//! runnable on entangled resources or on classically correlated ones.
//!
//! # Roles
//!
//! | role     | two-party                                    | multiparty                         |
//! |----------|----------------------------------------------|------------------------------------|
//! | system   | holds share 0, picks challenge `r`, verifies | n/a                                |
//! | user     | holds share 1, knows password `p`            | n/a                                |
//! | party i  | n/a                                          | holds share i and password bit p_i |
//! | verifier | the system                                   | checks `⊕y_i = ⊕p_i`               |
//!
//! "Sender" and "user" name the same party. The system's and the user's
//! local operations act on different shares and commute, so they are
//! applied in a fixed order: system first, then user.
//!
//! The multiparty message flow is a reconstruction from the ingredients
//! (GHZ resource, Z by password holders, Hadamard readout): every party
//! applies `Z` iff its password bit is 1, reads its share in the Hadamard
//! basis and announces the result; a verifier accepts iff the parity of the
//! announcements equals the parity of the password.
//!
//! # Randomness
//!
//! A session owns one ChaCha8 generator seeded from the session seed.
//! Draws are consumed in a fixed order: classical resource realizations for
//! every round first, then measurement outcomes round by round.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::classical::{correlated_pair_ensemble, even_parity_ensemble, ClassicalEnsemble};
use crate::distribution::{bits_space, OutcomeDistribution};
use crate::error::{Error, Result};
use crate::qstate::{
    enumerate_outcomes, make_bell_pair, make_ghz, sample_outcome, BasisTag, Gate, StateVector,
};

/// Largest n (two-party) or m (multiparty) accepted by exact enumeration.
pub const ENUMERATION_BOUND: usize = 10;

/// Largest party count simulated as a dense state vector in sampled runs.
pub const SIMULATION_BOUND: usize = 20;

const SYSTEM_SHARE: usize = 0;
const USER_SHARE: usize = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    Quantum,
    Classical,
}

impl Backend {
    pub const ALL: [Backend; 2] = [Backend::Quantum, Backend::Classical];
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Quantum => "quantum",
            Backend::Classical => "classical",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Protocol {
    TwoParty,
    Multiparty,
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Protocol::TwoParty => "two_party",
            Protocol::Multiparty => "multiparty",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Accept,
    Reject,
}

impl Verdict {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Accept
        } else {
            Verdict::Reject
        }
    }

    pub fn is_accept(self) -> bool {
        self == Verdict::Accept
    }

    /// One-character flag used in transcript digests.
    pub fn flag(self) -> char {
        match self {
            Verdict::Accept => 'A',
            Verdict::Reject => 'R',
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Accept => "accept",
            Verdict::Reject => "reject",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoPartyConfig {
    password: BitString,
    challenge: BitString,
    backend: Backend,
}

impl TwoPartyConfig {
    pub fn new(password: BitString, challenge: BitString, backend: Backend) -> Result<Self> {
        if password.is_empty() {
            return Err(Error::InvalidConfig("password must have at least one bit".into()));
        }
        if password.len() != challenge.len() {
            return Err(Error::InvalidConfig(format!(
                "password has {} bits but challenge has {}",
                password.len(),
                challenge.len()
            )));
        }
        Ok(TwoPartyConfig {
            password,
            challenge,
            backend,
        })
    }

    pub fn n(&self) -> usize {
        self.password.len()
    }

    pub fn password(&self) -> &BitString {
        &self.password
    }

    pub fn challenge(&self) -> &BitString {
        &self.challenge
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn with_backend(&self, backend: Backend) -> Self {
        TwoPartyConfig {
            backend,
            ..self.clone()
        }
    }
}

/// Uniformly random challenge of `n` bits.
pub fn random_challenge<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BitString {
    (0..n).map(|_| rng.gen::<bool>()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultipartyConfig {
    password: BitString,
    backend: Backend,
}

impl MultipartyConfig {
    /// A single party is accepted as the degenerate case.
    pub fn new(password: BitString, backend: Backend) -> Result<Self> {
        if password.is_empty() {
            return Err(Error::InvalidConfig("need at least one party".into()));
        }
        Ok(MultipartyConfig { password, backend })
    }

    pub fn m(&self) -> usize {
        self.password.len()
    }

    pub fn password(&self) -> &BitString {
        &self.password
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn with_backend(&self, backend: Backend) -> Self {
        MultipartyConfig {
            backend,
            ..self.clone()
        }
    }
}

/// Record of one session. Two-party transcripts carry `n`, `r`, `s`, `u`;
/// multiparty transcripts carry `m` and `y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub protocol: Protocol,
    pub backend: Backend,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub p: BitString,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<BitString>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<BitString>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<BitString>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<BitString>,
    pub public_messages: Vec<BitString>,
    pub verdict: Verdict,
    pub seed: u64,
}

impl Transcript {
    fn two_party(
        config: &TwoPartyConfig,
        s: BitString,
        u: BitString,
        seed: u64,
    ) -> Transcript {
        let verdict = two_party_verdict(&config.challenge, &s, &u);
        Transcript {
            protocol: Protocol::TwoParty,
            backend: config.backend,
            n: Some(config.n()),
            m: None,
            p: config.password.clone(),
            r: Some(config.challenge.clone()),
            s: Some(s),
            public_messages: vec![u.clone()],
            u: Some(u),
            y: None,
            verdict,
            seed,
        }
    }

    fn multiparty(config: &MultipartyConfig, y: BitString, seed: u64) -> Transcript {
        let verdict = multiparty_verdict(&config.password, &y);
        Transcript {
            protocol: Protocol::Multiparty,
            backend: config.backend,
            n: None,
            m: Some(config.m()),
            p: config.password.clone(),
            r: None,
            s: None,
            u: None,
            public_messages: y.iter().map(|b| BitString::new(vec![b])).collect(),
            y: Some(y),
            verdict,
            seed,
        }
    }

    /// Applies the verification rule to the recorded bits.
    pub fn recompute_verdict(&self) -> Result<Verdict> {
        let missing = |field: &str| Error::InvalidConfig(format!("transcript lacks `{field}`"));
        match self.protocol {
            Protocol::TwoParty => {
                let r = self.r.as_ref().ok_or_else(|| missing("r"))?;
                let s = self.s.as_ref().ok_or_else(|| missing("s"))?;
                let u = self.u.as_ref().ok_or_else(|| missing("u"))?;
                let n = self.n.ok_or_else(|| missing("n"))?;
                for (name, bits) in [("p", &self.p), ("r", r), ("s", s), ("u", u)] {
                    if bits.len() != n {
                        return Err(Error::InvalidConfig(format!(
                            "`{name}` has {} bits, expected {n}",
                            bits.len()
                        )));
                    }
                }
                Ok(two_party_verdict(r, s, u))
            }
            Protocol::Multiparty => {
                let y = self.y.as_ref().ok_or_else(|| missing("y"))?;
                let m = self.m.ok_or_else(|| missing("m"))?;
                if y.len() != m || self.p.len() != m {
                    return Err(Error::InvalidConfig(format!(
                        "`p` and `y` must both have {m} bits"
                    )));
                }
                Ok(multiparty_verdict(&self.p, y))
            }
        }
    }

    /// Fails unless the stored verdict equals the recomputed one.
    pub fn check(&self) -> Result<()> {
        let recomputed = self.recompute_verdict()?;
        if recomputed != self.verdict {
            return Err(Error::VerdictMismatch {
                stored: self.verdict.to_string(),
                recomputed: recomputed.to_string(),
            });
        }
        Ok(())
    }

    /// Parses a JSON transcript and checks its verdict.
    pub fn from_json(text: &str) -> Result<Transcript> {
        let t: Transcript = serde_json::from_str(text)
            .map_err(|e| Error::InvalidConfig(format!("malformed transcript: {e}")))?;
        t.check()?;
        Ok(t)
    }

    /// Canonical digest of the recorded bits and verdict; see
    /// [`two_party_digest`] and [`multiparty_digest`].
    pub fn digest(&self) -> String {
        match self.protocol {
            Protocol::TwoParty => two_party_digest(
                self.s.as_ref().expect("two-party transcript has s"),
                self.u.as_ref().expect("two-party transcript has u"),
                self.verdict,
            ),
            Protocol::Multiparty => {
                multiparty_digest(self.y.as_ref().expect("multiparty transcript has y"), self.verdict)
            }
        }
    }
}

fn two_party_verdict(r: &BitString, s: &BitString, u: &BitString) -> Verdict {
    Verdict::from_bool(s.xor(u).is_ok_and(|x| &x == r))
}

fn multiparty_verdict(p: &BitString, y: &BitString) -> Verdict {
    Verdict::from_bool(y.parity() == p.parity())
}

/// `s|u|F` with `F` the verdict flag (`A` or `R`).
pub fn two_party_digest(s: &BitString, u: &BitString, verdict: Verdict) -> String {
    format!("{s}|{u}|{}", verdict.flag())
}

/// `y|F` with `F` the verdict flag.
pub fn multiparty_digest(y: &BitString, verdict: Verdict) -> String {
    format!("{y}|{}", verdict.flag())
}

/// Outcome-space label for joint `(s, u)` laws.
pub fn two_party_space(n: usize) -> String {
    format!("two_party:{n}")
}

pub fn two_party_transcript_space(n: usize) -> String {
    format!("two_party_transcript:{n}")
}

pub fn multiparty_transcript_space(m: usize) -> String {
    format!("multiparty_transcript:{m}")
}

fn check_bound(what: &'static str, size: usize, bound: usize) -> Result<()> {
    if size > bound {
        return Err(Error::BoundExceeded { what, size, bound });
    }
    Ok(())
}

/// A correlated resource on either backend, before readout.
enum Resource {
    Quantum(StateVector),
    Classical(ClassicalEnsemble),
}

impl Resource {
    /// NOT on share `pos`, in the frame where `basis` labels are the bits:
    /// `X` for computational labels, `X̂ = Z` for Hadamard labels, and a bit
    /// flip on a classical ensemble under either tag.
    fn not(self, pos: usize, basis: BasisTag) -> Result<Resource> {
        Ok(match self {
            Resource::Quantum(state) => {
                let gate = match basis {
                    BasisTag::Computational => Gate::X,
                    BasisTag::Hadamard => Gate::Z,
                };
                Resource::Quantum(state.apply(gate, pos)?)
            }
            Resource::Classical(ensemble) => Resource::Classical(ensemble.flip(pos)?),
        })
    }

    fn not_if(self, cond: bool, pos: usize, basis: BasisTag) -> Result<Resource> {
        if cond {
            self.not(pos, basis)
        } else {
            Ok(self)
        }
    }

    /// Exact law of reading every share in `basis`.
    fn readout_law(&self, basis: BasisTag) -> Vec<(BitString, f64)> {
        match self {
            Resource::Quantum(state) => enumerate_outcomes(state, basis)
                .iter()
                .map(|(k, p)| (k.parse().expect("outcome keys are bit strings"), p))
                .collect(),
            Resource::Classical(ensemble) => {
                ensemble.iter().map(|(b, p)| (b.clone(), p)).collect()
            }
        }
    }
}

fn check_pair_resource(pair: &ClassicalEnsemble) -> Result<()> {
    if pair.num_bits() != 2 {
        return Err(Error::InvalidEnsemble(format!(
            "two-party resource must have 2 bits, got {}",
            pair.num_bits()
        )));
    }
    Ok(())
}

/// Per-round joint law of `(s_i, u_i)` after both parties' operations.
fn two_party_round_law(
    pair: Option<&ClassicalEnsemble>,
    p: bool,
    r: bool,
) -> Result<Vec<(bool, bool, f64)>> {
    let resource = match pair {
        None => Resource::Quantum(make_bell_pair()),
        Some(ensemble) => Resource::Classical(ensemble.clone()),
    };
    let basis = BasisTag::Computational;
    let resource = resource
        .not_if(r != p, SYSTEM_SHARE, basis)?
        .not_if(p, USER_SHARE, basis)?;
    Ok(resource
        .readout_law(basis)
        .into_iter()
        .map(|(b, prob)| (b.bit(SYSTEM_SHARE), b.bit(USER_SHARE), prob))
        .collect())
}

/// Joint law over `(s, u)` with rounds independent.
fn two_party_joint(
    config: &TwoPartyConfig,
    pair: Option<&ClassicalEnsemble>,
) -> Result<Vec<(BitString, BitString, f64)>> {
    check_bound("two-party enumeration", config.n(), ENUMERATION_BOUND)?;
    let mut joint = vec![(BitString::default(), BitString::default(), 1.0)];
    for (p, r) in config.password.iter().zip(config.challenge.iter()) {
        let round = two_party_round_law(pair, p, r)?;
        joint = joint
            .iter()
            .flat_map(|(s, u, w)| {
                round.iter().map(move |&(si, ui, q)| {
                    let (mut s, mut u) = (s.clone(), u.clone());
                    s.push(si);
                    u.push(ui);
                    (s, u, w * q)
                })
            })
            .collect();
    }
    Ok(joint)
}

fn resolve_pair(config: &TwoPartyConfig) -> Option<ClassicalEnsemble> {
    match config.backend {
        Backend::Quantum => None,
        Backend::Classical => Some(correlated_pair_ensemble()),
    }
}

/// Exact law over `(s, u)`, keyed `s|u`.
pub fn enumerate_two_party(config: &TwoPartyConfig) -> Result<OutcomeDistribution> {
    let pair = resolve_pair(config);
    let joint = two_party_joint(config, pair.as_ref())?;
    OutcomeDistribution::from_weighted(
        two_party_space(config.n()),
        joint.into_iter().map(|(s, u, p)| (format!("{s}|{u}"), p)),
    )
}

fn two_party_transcript_law_inner(
    config: &TwoPartyConfig,
    pair: Option<&ClassicalEnsemble>,
) -> Result<OutcomeDistribution> {
    let joint = two_party_joint(config, pair)?;
    OutcomeDistribution::from_weighted(
        two_party_transcript_space(config.n()),
        joint.into_iter().map(|(s, u, p)| {
            let verdict = two_party_verdict(&config.challenge, &s, &u);
            (two_party_digest(&s, &u, verdict), p)
        }),
    )
}

/// Exact law over transcript digests on the config's backend.
pub fn two_party_transcript_law(config: &TwoPartyConfig) -> Result<OutcomeDistribution> {
    two_party_transcript_law_inner(config, resolve_pair(config).as_ref())
}

/// Classical-backend transcript law with `pair` as the per-round resource
/// in place of the canonical correlated pair.
pub fn two_party_transcript_law_with(
    config: &TwoPartyConfig,
    pair: &ClassicalEnsemble,
) -> Result<OutcomeDistribution> {
    check_pair_resource(pair)?;
    two_party_transcript_law_inner(config, Some(pair))
}

/// Total probability of transcripts carrying the accept flag.
pub fn acceptance_probability(transcript_law: &OutcomeDistribution) -> f64 {
    transcript_law
        .iter()
        .filter(|(k, _)| k.ends_with(Verdict::Accept.flag()))
        .map(|(_, p)| p)
        .sum()
}

/// Runs one seeded two-party session.
pub fn run_two_party(config: &TwoPartyConfig, seed: u64) -> Result<Transcript> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = BasisTag::Computational;
    let rounds = config.password.iter().zip(config.challenge.iter());
    let (s, u): (BitString, BitString) = match config.backend {
        Backend::Quantum => {
            let mut s = BitString::default();
            let mut u = BitString::default();
            for (p, r) in rounds {
                let mut state = make_bell_pair();
                if r != p {
                    state = state.apply(Gate::X, SYSTEM_SHARE)?;
                }
                if p {
                    state = state.apply(Gate::X, USER_SHARE)?;
                }
                let out = sample_outcome(&state, basis, &mut rng);
                s.push(out.bit(SYSTEM_SHARE));
                u.push(out.bit(USER_SHARE));
            }
            (s, u)
        }
        Backend::Classical => {
            let pair = correlated_pair_ensemble();
            let realized: Vec<BitString> = (0..config.n()).map(|_| pair.sample(&mut rng)).collect();
            let mut s = BitString::default();
            let mut u = BitString::default();
            for (mut shares, (p, r)) in realized.into_iter().zip(rounds) {
                if r != p {
                    shares = shares.flipped(SYSTEM_SHARE)?;
                }
                if p {
                    shares = shares.flipped(USER_SHARE)?;
                }
                s.push(shares.bit(SYSTEM_SHARE));
                u.push(shares.bit(USER_SHARE));
            }
            (s, u)
        }
    };
    Ok(Transcript::two_party(config, s, u, seed))
}

fn multiparty_resource(m: usize, backend: Backend, custom: Option<&ClassicalEnsemble>) -> Result<Resource> {
    Ok(match (backend, custom) {
        (Backend::Quantum, _) => Resource::Quantum(make_ghz(m)?),
        (Backend::Classical, Some(ensemble)) => {
            if ensemble.num_bits() != m {
                return Err(Error::InvalidEnsemble(format!(
                    "multiparty resource must have {m} bits, got {}",
                    ensemble.num_bits()
                )));
            }
            Resource::Classical(ensemble.clone())
        }
        (Backend::Classical, None) => Resource::Classical(even_parity_ensemble(m)?),
    })
}

fn multiparty_readout_law(
    config: &MultipartyConfig,
    custom: Option<&ClassicalEnsemble>,
) -> Result<Vec<(BitString, f64)>> {
    check_bound("multiparty enumeration", config.m(), ENUMERATION_BOUND)?;
    let basis = BasisTag::Hadamard;
    let mut resource = multiparty_resource(config.m(), config.backend, custom)?;
    for (party, bit) in config.password.iter().enumerate() {
        resource = resource.not_if(bit, party, basis)?;
    }
    Ok(resource.readout_law(basis))
}

/// Exact law of the announced bits `y`.
pub fn enumerate_multiparty(config: &MultipartyConfig) -> Result<OutcomeDistribution> {
    let law = multiparty_readout_law(config, None)?;
    OutcomeDistribution::from_weighted(
        bits_space(config.m()),
        law.into_iter().map(|(y, p)| (y.to_string(), p)),
    )
}

fn multiparty_transcript_law_inner(
    config: &MultipartyConfig,
    custom: Option<&ClassicalEnsemble>,
) -> Result<OutcomeDistribution> {
    let law = multiparty_readout_law(config, custom)?;
    OutcomeDistribution::from_weighted(
        multiparty_transcript_space(config.m()),
        law.into_iter().map(|(y, p)| {
            let verdict = multiparty_verdict(&config.password, &y);
            (multiparty_digest(&y, verdict), p)
        }),
    )
}

pub fn multiparty_transcript_law(config: &MultipartyConfig) -> Result<OutcomeDistribution> {
    multiparty_transcript_law_inner(config, None)
}

/// Classical-backend transcript law with `resource` in place of the
/// canonical even-parity ensemble.
pub fn multiparty_transcript_law_with(
    config: &MultipartyConfig,
    resource: &ClassicalEnsemble,
) -> Result<OutcomeDistribution> {
    multiparty_transcript_law_inner(&config.with_backend(Backend::Classical), Some(resource))
}

/// Runs one seeded multiparty session.
pub fn run_multiparty(config: &MultipartyConfig, seed: u64) -> Result<Transcript> {
    check_bound("multiparty simulation", config.m(), SIMULATION_BOUND)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let y = match config.backend {
        Backend::Quantum => {
            let mut state = make_ghz(config.m())?;
            for (party, bit) in config.password.iter().enumerate() {
                if bit {
                    state = state.apply(Gate::Z, party)?;
                }
            }
            for party in 0..config.m() {
                state = state.apply(Gate::H, party)?;
            }
            sample_outcome(&state, BasisTag::Computational, &mut rng)
        }
        Backend::Classical => {
            let mut y = even_parity_ensemble(config.m())?.sample(&mut rng);
            for (party, bit) in config.password.iter().enumerate() {
                if bit {
                    y = y.flipped(party)?;
                }
            }
            y
        }
    };
    Ok(Transcript::multiparty(config, y, seed))
}

/// Law of the system's readout `s` when nobody touches the user's share.
fn system_share_law(config: &TwoPartyConfig) -> Result<Vec<(BitString, f64)>> {
    check_bound("two-party enumeration", config.n(), ENUMERATION_BOUND)?;
    let basis = BasisTag::Computational;
    let mut law = vec![(BitString::default(), 1.0)];
    for (p, r) in config.password.iter().zip(config.challenge.iter()) {
        let resource = match config.backend {
            Backend::Quantum => Resource::Quantum(make_bell_pair()),
            Backend::Classical => Resource::Classical(correlated_pair_ensemble()),
        }
        .not_if(r != p, SYSTEM_SHARE, basis)?;
        let round = resource.readout_law(basis);
        law = law
            .iter()
            .flat_map(|(s, w)| {
                round.iter().map(move |(b, q)| {
                    let mut s = s.clone();
                    s.push(b.bit(SYSTEM_SHARE));
                    (s, w * q)
                })
            })
            .collect();
    }
    Ok(law)
}

/// Exact acceptance probability of an impersonator who holds no share and
/// does not know `p`, and who submits a uniformly random `u`.
pub fn impersonation_attack(config: &TwoPartyConfig) -> Result<f64> {
    let law = system_share_law(config)?;
    let n = config.n();
    let guess_weight = 1.0 / (1u64 << n) as f64;
    let mut accept = 0.0;
    for (s, w) in &law {
        for guess in BitString::all(n) {
            if two_party_verdict(&config.challenge, s, &guess).is_accept() {
                accept += w * guess_weight;
            }
        }
    }
    Ok(accept)
}

/// Monte Carlo counterpart of [`impersonation_attack`]: number of accepted
/// sessions out of `trials`, session `i` seeded with `seed + i`.
pub fn simulate_impersonation(config: &TwoPartyConfig, trials: u64, seed: u64) -> Result<u64> {
    let mut accepted = 0;
    for i in 0..trials {
        let session = run_two_party(config, seed.wrapping_add(i))?;
        let mut attacker = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
        attacker.set_stream(1);
        let guess = random_challenge(config.n(), &mut attacker);
        let s = session.s.expect("two-party transcript has s");
        if two_party_verdict(&config.challenge, &s, &guess).is_accept() {
            accepted += 1;
        }
    }
    Ok(accepted)
}

/// Exact law of the public message `u` as seen on the channel.
pub fn eavesdropper_view(config: &TwoPartyConfig) -> Result<OutcomeDistribution> {
    let pair = resolve_pair(config);
    let joint = two_party_joint(config, pair.as_ref())?;
    OutcomeDistribution::from_weighted(
        bits_space(config.n()),
        joint.into_iter().map(|(_, u, p)| (u.to_string(), p)),
    )
}
