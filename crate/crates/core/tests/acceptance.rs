//! Acceptance suite. Prints one line per criterion and exits non-zero if any
//! criterion fails. Run with `cargo test -p qpass --test acceptance`.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qpass::bits::BitString;
use qpass::classical::{even_parity_ensemble, vernam_decrypt, vernam_encrypt, ClassicalEnsemble};
use qpass::distribution::{bits_space, total_variation, OutcomeDistribution};
use qpass::equivalence::{
    backend_equivalence, backend_equivalence_against, classicality_certificate,
    MultipartyDescription, ProtocolConfig,
};
use qpass::protocols::{
    acceptance_probability, eavesdropper_view, impersonation_attack, multiparty_transcript_law,
    run_two_party, two_party_transcript_law, Backend, MultipartyConfig, TwoPartyConfig,
};
use qpass::qstate::{
    conjugate_by_hadamard, dephase, enumerate_outcomes, make_ghz, matrix_max_deviation, BasisTag,
    Gate,
};

const TOL: f64 = 1e-12;
const RUNTIME_LIMIT: Duration = Duration::from_secs(5);
const MUTATION_MIN_DISTANCE: f64 = 0.01;
const SAMPLED_SESSIONS: u64 = 10_000;
const SAMPLED_N: usize = 8;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn two(p: &BitString, r: &BitString, backend: Backend) -> TwoPartyConfig {
    TwoPartyConfig::new(p.clone(), r.clone(), backend).expect("valid config")
}

fn pairs(n: usize) -> impl Iterator<Item = (BitString, BitString)> {
    BitString::all(n).flat_map(move |p| BitString::all(n).map(move |r| (p.clone(), r)))
}

fn uniform(n: usize) -> OutcomeDistribution {
    OutcomeDistribution::uniform(bits_space(n), BitString::all(n).map(|b| b.to_string())).unwrap()
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn ac01_two_party_equivalence() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut checks = 0;
    for (p, r) in pairs(3) {
        let v = backend_equivalence(&ProtocolConfig::TwoParty(two(&p, &r, Backend::Quantum)))
            .map_err(e)?;
        worst = worst.max(v.distance_tv);
        checks += 1;
        ensure(v.distance_tv <= TOL, || format!("p={p} r={r}: distance {}", v.distance_tv))?;
    }
    let elapsed = start.elapsed();
    ensure(checks == 64, || format!("{checks} checks, expected 64"))?;
    ensure(elapsed < RUNTIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("64 pairs, max distance {worst:e}, {elapsed:?}"))
}

fn ac02_multiparty_equivalence() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut checks = 0;
    for p in BitString::all(4) {
        let cfg = MultipartyConfig::new(p.clone(), Backend::Quantum).map_err(e)?;
        let v = backend_equivalence(&ProtocolConfig::Multiparty(cfg)).map_err(e)?;
        worst = worst.max(v.distance_tv);
        checks += 1;
        ensure(v.distance_tv <= TOL, || format!("p={p}: distance {}", v.distance_tv))?;
    }
    let elapsed = start.elapsed();
    ensure(checks == 16, || format!("{checks} checks, expected 16"))?;
    ensure(elapsed < RUNTIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("16 vectors, max distance {worst:e}, {elapsed:?}"))
}

/// Draws `SAMPLED_SESSIONS` honest sessions per backend at n = 8 with random
/// p and r, and returns (accepted, identity holds) counts.
fn sampled_sessions() -> Result<(u64, u64, u64), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut total, mut accepted, mut identity) = (0, 0, 0);
    for backend in Backend::ALL {
        for i in 0..SAMPLED_SESSIONS {
            let p: BitString = (0..SAMPLED_N).map(|_| rng.gen::<bool>()).collect();
            let r: BitString = (0..SAMPLED_N).map(|_| rng.gen::<bool>()).collect();
            let t = run_two_party(&two(&p, &r, backend), i).map_err(e)?;
            total += 1;
            if t.verdict.is_accept() {
                accepted += 1;
            }
            let s = t.s.as_ref().unwrap();
            let u = t.u.as_ref().unwrap();
            if s.xor(u).map_err(e)? == r {
                identity += 1;
            }
        }
    }
    Ok((total, accepted, identity))
}

fn ac03_completeness() -> Outcome {
    let mut configs = 0;
    for n in 1..=3 {
        for (p, r) in pairs(n) {
            for backend in Backend::ALL {
                let law = two_party_transcript_law(&two(&p, &r, backend)).map_err(e)?;
                let acc = acceptance_probability(&law);
                ensure((acc - 1.0).abs() <= TOL, || format!("n={n} p={p} r={r} {backend}: {acc}"))?;
                configs += 1;
            }
        }
    }
    for m in 1..=4 {
        for p in BitString::all(m) {
            for backend in Backend::ALL {
                let cfg = MultipartyConfig::new(p.clone(), backend).map_err(e)?;
                let acc = acceptance_probability(&multiparty_transcript_law(&cfg).map_err(e)?);
                ensure((acc - 1.0).abs() <= TOL, || format!("m={m} p={p} {backend}: {acc}"))?;
                configs += 1;
            }
        }
    }
    let (total, accepted, _) = sampled_sessions()?;
    ensure(accepted == total, || format!("{accepted}/{total} sampled sessions accepted"))?;
    Ok(format!("{configs} enumerated configs at probability 1; {accepted}/{total} sampled sessions at n=8"))
}

fn ac04_verification_identity() -> Outcome {
    let mut outcomes = 0;
    for n in 1..=3 {
        for (p, r) in pairs(n) {
            for backend in Backend::ALL {
                let law = two_party_transcript_law(&two(&p, &r, backend)).map_err(e)?;
                for (key, _) in law.iter() {
                    let mut parts = key.split('|');
                    let s: BitString = parts.next().unwrap().parse().map_err(e)?;
                    let u: BitString = parts.next().unwrap().parse().map_err(e)?;
                    ensure(s.xor(&u).map_err(e)? == r, || {
                        format!("n={n} p={p} r={r} {backend}: outcome {key}")
                    })?;
                    outcomes += 1;
                }
            }
        }
    }
    let (total, _, identity) = sampled_sessions()?;
    ensure(identity == total, || format!("identity held in {identity}/{total} sampled sessions"))?;
    Ok(format!("{outcomes} enumerated outcomes and {total} sampled transcripts"))
}

fn soundness_figures(r_fixed: Option<&BitString>, n: usize) -> Result<Vec<f64>, String> {
    let mut figures = Vec::new();
    for p in BitString::all(n) {
        let rs: Vec<BitString> = match r_fixed {
            Some(r) => vec![r.clone()],
            None => BitString::all(n).collect(),
        };
        for r in rs {
            for backend in Backend::ALL {
                figures.push(impersonation_attack(&two(&p, &r, backend)).map_err(e)?);
            }
        }
    }
    Ok(figures)
}

fn ac05_soundness() -> Outcome {
    for n in 1..=3usize {
        let expected = 1.0 / (1u64 << n) as f64;
        for v in soundness_figures(None, n)? {
            ensure((v - expected).abs() <= TOL, || format!("n={n}: {v} vs {expected}"))?;
        }
    }
    Ok("impersonation acceptance 1/2, 1/4, 1/8 for n = 1, 2, 3".into())
}

fn ac06_privacy() -> Outcome {
    let mut worst = 0.0f64;
    for n in 1..=3 {
        let reference = uniform(n);
        for (p, r) in pairs(n) {
            for backend in Backend::ALL {
                let view = eavesdropper_view(&two(&p, &r, backend)).map_err(e)?;
                let d = total_variation(&view, &reference).map_err(e)?;
                worst = worst.max(d);
                ensure(d <= TOL, || format!("n={n} p={p} r={r} {backend}: {d}"))?;
            }
        }
    }
    Ok(format!("max distance from uniform {worst:e}"))
}

fn ac07_r_redundancy() -> Outcome {
    for n in 1..=3usize {
        let zero = BitString::zeros(n);
        let reference = uniform(n);
        for p in BitString::all(n) {
            for backend in Backend::ALL {
                let base = two(&p, &zero, backend);
                let acc0 = acceptance_probability(&two_party_transcript_law(&base).map_err(e)?);
                let imp0 = impersonation_attack(&base).map_err(e)?;
                let view0 = eavesdropper_view(&base).map_err(e)?;
                ensure((acc0 - 1.0).abs() <= TOL, || format!("n={n} p={p}: acceptance {acc0}"))?;
                ensure((imp0 - 1.0 / (1u64 << n) as f64).abs() <= TOL, || {
                    format!("n={n} p={p}: impersonation {imp0}")
                })?;
                ensure(total_variation(&view0, &reference).map_err(e)? <= TOL, || {
                    format!("n={n} p={p}: eavesdropper view not uniform")
                })?;
                for r in BitString::all(n) {
                    let cfg = two(&p, &r, backend);
                    let acc = acceptance_probability(&two_party_transcript_law(&cfg).map_err(e)?);
                    let imp = impersonation_attack(&cfg).map_err(e)?;
                    let view = eavesdropper_view(&cfg).map_err(e)?;
                    ensure((acc - acc0).abs() <= TOL, || format!("n={n} p={p} r={r}: acceptance differs"))?;
                    ensure((imp - imp0).abs() <= TOL, || format!("n={n} p={p} r={r}: impersonation differs"))?;
                    ensure(total_variation(&view, &view0).map_err(e)? <= TOL, || {
                        format!("n={n} p={p} r={r}: eavesdropper view differs")
                    })?;
                }
            }
        }
    }
    Ok("r = 0^n reproduces completeness, soundness and privacy figures for n <= 3".into())
}

fn ac08_conjugation() -> Outcome {
    let zx = conjugate_by_hadamard(Gate::Z);
    let xz = conjugate_by_hadamard(Gate::X);
    let d1 = matrix_max_deviation(&zx.matrix, &Gate::X.matrix());
    let d2 = matrix_max_deviation(&xz.matrix, &Gate::Z.matrix());
    ensure(d1 <= TOL, || format!("H†ZH deviates from X by {d1}"))?;
    ensure(d2 <= TOL, || format!("H†XH deviates from Z by {d2}"))?;
    ensure(zx.gate == Some(Gate::X) && xz.gate == Some(Gate::Z), || "labels not matched".into())?;
    Ok(format!("H†ZH = X ({d1:e}), H†XH = Z ({d2:e})"))
}

fn ac09_ghz_hat_law() -> Outcome {
    for m in 1..=5usize {
        let d = enumerate_outcomes(&make_ghz(m).map_err(e)?, BasisTag::Hadamard);
        let expected = 1.0 / (1u64 << (m - 1)) as f64;
        ensure(d.support_len() == 1 << (m - 1), || format!("m={m}: support {}", d.support_len()))?;
        for y in BitString::all(m) {
            let want = if y.parity() { 0.0 } else { expected };
            let got = d.prob(&y.to_string());
            ensure((got - want).abs() <= TOL, || format!("m={m} y={y}: {got} vs {want}"))?;
        }
    }
    Ok("uniform on even-parity strings for m = 1..5".into())
}

fn ac10_certificate() -> Outcome {
    for m in 1..=5usize {
        let dephased = dephase(&make_ghz(m).map_err(e)?, BasisTag::Hadamard);
        let expected = even_parity_ensemble(m).map_err(e)?;
        ensure(dephased.approx_eq(&expected, TOL), || format!("m={m}: dephased GHZ differs"))?;
        let description = MultipartyDescription::from_config(
            &MultipartyConfig::new(BitString::zeros(m), Backend::Quantum).map_err(e)?,
        );
        let cert = classicality_certificate(&description).map_err(e)?;
        ensure(cert.approx_eq(&expected, TOL), || format!("m={m}: certificate differs"))?;
    }
    Ok("dephase(GHZ(m), hadamard) = even-parity ensemble for m = 1..5".into())
}

fn ac11_vernam() -> Outcome {
    let mut pairs_checked = 0;
    for m in BitString::all(4) {
        let mut counts = [0u32; 16];
        for k in BitString::all(4) {
            let c = vernam_encrypt(&m, &k).map_err(e)?;
            ensure(vernam_decrypt(&c, &k).map_err(e)? == m, || format!("m={m} k={k}: roundtrip"))?;
            counts[c.to_index()] += 1;
            pairs_checked += 1;
        }
        ensure(counts.iter().all(|&c| c == 1), || format!("m={m}: ciphertext counts {counts:?}"))?;
    }
    Ok(format!("{pairs_checked} (message, key) pairs; every ciphertext law uniform"))
}

fn ac12_mutation() -> Outcome {
    // The honest pair {00, 11} with entry 11 replaced by 10.
    let corrupted = ClassicalEnsemble::new(
        2,
        BasisTag::Computational,
        [("00".parse().unwrap(), 0.5), ("10".parse().unwrap(), 0.5)],
    )
    .map_err(e)?;
    let mut least = f64::INFINITY;
    for (p, r) in pairs(2) {
        let cfg = ProtocolConfig::TwoParty(two(&p, &r, Backend::Quantum));
        let v = backend_equivalence_against(&cfg, &corrupted).map_err(e)?;
        least = least.min(v.distance_tv);
        ensure(!v.pass && v.distance_tv > MUTATION_MIN_DISTANCE, || {
            format!("p={p} r={r}: pass={} distance {}", v.pass, v.distance_tv)
        })?;
    }
    Ok(format!("corrupted backend rejected for all 16 pairs, min distance {least}"))
}

fn ac13_determinism() -> Outcome {
    let invocations: &[&[&str]] = &[
        &["run", "--protocol", "two_party", "--p", "10", "--r", "01", "--backend", "quantum", "--trials", "1000", "--seed", "7"],
        &["run", "--protocol", "multiparty", "--p", "1011", "--trials", "50", "--seed", "3"],
        &["run", "--p", "0110", "--trials", "20", "--seed", "11"],
        &["enumerate", "--p", "101", "--seed", "5"],
        &["equiv", "--protocol", "two_party", "--n", "3", "--seed", "5"],
        &["equiv", "--protocol", "multiparty", "--m", "4", "--seed", "5"],
        &["attack", "--n", "3", "--seed", "5"],
        &["rewrite", "--m", "4", "--seed", "5"],
        &["run", "--p", "11", "--seed", "5", "--output", "text"],
    ];
    let exe = env!("CARGO_BIN_EXE_qpass");
    for args in invocations {
        let first = Command::new(exe).args(*args).output().map_err(e)?;
        let second = Command::new(exe).args(*args).output().map_err(e)?;
        ensure(first.status.code() == Some(0), || format!("{args:?} exited {:?}", first.status))?;
        ensure(first.stdout == second.stdout, || format!("{args:?} output differs"))?;
    }
    Ok(format!("{} invocations byte-identical across repeats", invocations.len()))
}

fn main() -> ExitCode {
    let criteria: &[(&str, &str, fn() -> Outcome)] = &[
        ("AC-01", "backend equivalence, two-party n=3", ac01_two_party_equivalence),
        ("AC-02", "backend equivalence, multiparty m=4", ac02_multiparty_equivalence),
        ("AC-03", "completeness", ac03_completeness),
        ("AC-04", "verification identity", ac04_verification_identity),
        ("AC-05", "soundness", ac05_soundness),
        ("AC-06", "privacy", ac06_privacy),
        ("AC-07", "r-redundancy", ac07_r_redundancy),
        ("AC-08", "conjugation identity", ac08_conjugation),
        ("AC-09", "GHZ hat-basis law", ac09_ghz_hat_law),
        ("AC-10", "classicality certificate", ac10_certificate),
        ("AC-11", "Vernam properties", ac11_vernam),
        ("AC-12", "mutation sensitivity", ac12_mutation),
        ("AC-13", "CLI determinism", ac13_determinism),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        match check() {
            Ok(detail) => println!("[PASS] {id} {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {id} {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
