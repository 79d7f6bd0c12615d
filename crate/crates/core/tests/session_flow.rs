//! Full identification sessions over real sockets: completeness for both
//! protocols, impostor rejection, offline re-verification of the transcripts
//! a session leaves behind, and concurrent verifier sessions.

mod support;

use csazkp::{
    keygen, p1_verify, p2_verify, run_prover_session, run_verifier_session, KeyPair, SessionConfig,
    SessionFailure, SessionOutcome, Variant,
};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use std::os::unix::net::UnixStream;
use std::thread;

const HEIGHT: u32 = 3;

fn paired_session(
    pair: KeyPair,
    prover_config: SessionConfig,
    verifier_config: SessionConfig,
    prover_seed: u64,
    verifier_seed: u64,
) -> (SessionOutcome, SessionOutcome) {
    let (mut a, mut b) = UnixStream::pair().unwrap();
    let pk = pair.public.clone();
    let verifier = thread::spawn(move || {
        let mut rng = ChaCha20Rng::seed_from_u64(verifier_seed);
        run_verifier_session(&pk, &verifier_config, &mut b, &mut rng)
    });
    let mut rng = ChaCha20Rng::seed_from_u64(prover_seed);
    let prover_outcome = run_prover_session(&pair, &prover_config, &mut a, &mut rng);
    let verifier_outcome = verifier.join().unwrap();
    (prover_outcome, verifier_outcome)
}

#[test]
fn honest_one_bit_sessions_accept_for_every_variant() {
    for (i, &variant) in Variant::ALL.iter().enumerate() {
        let mut rng = ChaCha20Rng::seed_from_u64(400 + i as u64);
        let pair = keygen(variant, 2, HEIGHT, 64, &mut rng).unwrap();
        let config = SessionConfig::one_bit(6, HEIGHT);
        let (p, v) = paired_session(pair.clone(), config.clone(), config, 1, 2);
        assert!(p.accepted, "prover side ({})", variant.name());
        assert!(v.accepted, "verifier side ({})", variant.name());
        assert!(p.failure.is_none() && v.failure.is_none());
        assert_eq!(v.transcripts.len(), 6);

        // The verifier's transcripts re-verify offline, round by round.
        for t in &v.transcripts {
            assert!(t.accepted);
            assert!(p1_verify(
                &pair.public,
                &t.commitment,
                t.challenge,
                &t.response
            ));
        }
    }
}

#[test]
fn honest_long_challenge_sessions_accept() {
    let mut rng = ChaCha20Rng::seed_from_u64(410);
    let pair = keygen(Variant::Division, 2, HEIGHT, 64, &mut rng).unwrap();
    let config = SessionConfig::long_challenge(HEIGHT);
    let (p, v) = paired_session(pair.clone(), config.clone(), config, 3, 4);
    assert!(p.accepted && v.accepted);
    let t = v
        .transcript2
        .as_ref()
        .expect("verifier records the exchange");
    assert!(t.accepted);
    let element = pair.public.public_element.as_ref().unwrap();
    assert!(p2_verify(
        &pair.public,
        element,
        &t.challenge_algebra,
        &t.response
    ));
}

#[test]
fn an_impostor_fails_ten_rounds() {
    // The impostor presents the honest public key but owns a different
    // witness (a fresh key's secret): every round is then a coin flip, and
    // ten rounds reject with probability 1 - 2^-10 per session. One session
    // with a fixed seed is deterministic here.
    let mut rng = ChaCha20Rng::seed_from_u64(420);
    let honest = keygen(Variant::Matrix, 2, HEIGHT, 64, &mut rng).unwrap();
    let other = keygen(Variant::Matrix, 2, HEIGHT, 64, &mut rng).unwrap();
    let impostor = KeyPair {
        public: honest.public.clone(),
        secret: other.secret.clone(),
    };
    let config = SessionConfig::one_bit(10, HEIGHT);
    let (p, v) = paired_session(impostor, config.clone(), config, 5, 6);
    assert!(!v.accepted, "verifier rejects the impostor");
    assert!(!p.accepted, "prover learns the verdict");
    assert!(
        v.failure.is_none(),
        "a clean reject is a verdict, not a session failure"
    );
    assert!(v.transcripts.iter().any(|t| !t.accepted));
}

#[test]
fn config_disagreement_aborts_cleanly() {
    let mut rng = ChaCha20Rng::seed_from_u64(430);
    let pair = keygen(Variant::Matrix, 2, HEIGHT, 64, &mut rng).unwrap();
    let (p, v) = paired_session(
        pair,
        SessionConfig::one_bit(4, HEIGHT),
        SessionConfig::one_bit(8, HEIGHT),
        7,
        8,
    );
    assert!(!p.accepted && !v.accepted);
    assert!(matches!(v.failure, Some(SessionFailure::StateMachine(_))));
    assert!(matches!(p.failure, Some(SessionFailure::Remote(_))));
}

#[test]
fn protocol_disagreement_aborts_cleanly() {
    let mut rng = ChaCha20Rng::seed_from_u64(431);
    let pair = keygen(Variant::Matrix, 2, HEIGHT, 64, &mut rng).unwrap();
    let (p, v) = paired_session(
        pair,
        SessionConfig::long_challenge(HEIGHT),
        SessionConfig::one_bit(1, HEIGHT),
        9,
        10,
    );
    assert!(!p.accepted && !v.accepted);
    assert!(v.failure.is_some() && p.failure.is_some());
}

#[test]
fn concurrent_sessions_are_independent() {
    let mut rng = ChaCha20Rng::seed_from_u64(440);
    let pair = keygen(Variant::Matrix, 2, HEIGHT, 64, &mut rng).unwrap();
    let config = SessionConfig::one_bit(3, HEIGHT);
    let mut handles = Vec::new();
    for i in 0..4u64 {
        let pair = pair.clone();
        let config = config.clone();
        handles.push(thread::spawn(move || {
            paired_session(pair, config.clone(), config, 100 + i, 200 + i)
        }));
    }
    for h in handles {
        let (p, v) = h.join().unwrap();
        assert!(p.accepted && v.accepted);
    }
}

#[test]
fn eof_mid_session_is_an_io_failure() {
    let mut rng = ChaCha20Rng::seed_from_u64(450);
    let pair = keygen(Variant::Matrix, 2, HEIGHT, 64, &mut rng).unwrap();
    let pk = pair.public.clone();
    let (mut a, b) = UnixStream::pair().unwrap();
    // The peer hangs up immediately; the verifier must fail with an I/O
    // abort rather than hanging or panicking.
    drop(b);
    let config = SessionConfig::one_bit(3, HEIGHT);
    let mut vrng = ChaCha20Rng::seed_from_u64(451);
    let outcome = run_verifier_session(&pk, &config, &mut a, &mut vrng);
    assert!(!outcome.accepted);
    assert!(matches!(outcome.failure, Some(SessionFailure::Io(_))));
}
