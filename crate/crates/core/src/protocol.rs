//! The interactive identification machines.
//!
//! Both protocols prove possession of an isomorphism `φ: A0 → A1` between
//! two public structure-constant presentations.
//!
//! In the **one-bit protocol** the prover commits to a fresh random
//! presentation `B` of `A0` (keeping the basis change `ψ: A0 → B` private),
//! the verifier challenges with a bit `i`, and the prover opens `B` as a
//! re-presentation of `A_i` by sending `ψ∘φ^{-i}`. Repeating `l` rounds
//! brings a cheater's success odds down to `2^{-l}`. Two accepting rounds on
//! the same commitment with opposite bits leak a full witness — that is the
//! knowledge extractor, not a bug — and transcripts for either single bit
//! can be produced without the secret, which is the zero-knowledge
//! simulator.
//!
//! In the **long-challenge protocol** the prover commits to a fresh random
//! presentation `B` of `A1`, the verifier replies with a further random
//! re-presentation `C` of `B` along with the basis change `δ: B → C`, and
//! the prover transports the public element `a ∈ A0` through the chain
//! `φ` then `ψ` then `δ`. Since the chain is an isomorphism `A0 → C`, the
//! verifier can check that the reply has the same minimal polynomial as `a`.
//! One round suffices, at the price of an unanalyzed (possibly absent)
//! zero-knowledge property; see the crate documentation.

use crate::algebra::{
    random_presentation, verify_isomorphism, AlgElement, Algebra, AlgebraError, Isomorphism,
};
use crate::construction::{KeyPair, PublicKey, SecretKey};
use crate::sampling;
use rand::RngCore;
use thiserror::Error;

/// Maximum restarts the zero-knowledge simulator attempts before concluding
/// that the verifier strategy correlates with the commitments.
pub const SIMULATOR_CAP: usize = 128;

/// Errors from the protocol drivers.
#[derive(Debug, Error)]
pub enum ProtocolError {
    /// The iterated protocol needs at least one round.
    #[error("round count must be at least 1")]
    BadRounds,
    /// The public key carries no distinguished element, so the
    /// long-challenge protocol and signatures cannot run.
    #[error("public key lacks the distinguished element required here")]
    MissingPublicElement,
    /// The simulator exceeded [`SIMULATOR_CAP`] restarts.
    #[error("simulator exhausted {SIMULATOR_CAP} restarts; the verifier strategy correlates with the commitments")]
    SimulationCap,
    /// The transcripts handed to the extractor do not satisfy its
    /// preconditions.
    #[error("transcript pair unsuitable for extraction: {0}")]
    BadExtraction(&'static str),
    /// The prover refused a malformed challenge.
    #[error("challenge rejected: {0}")]
    ChallengeRejected(&'static str),
    /// An underlying algebra operation failed.
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Prover-side state of one commitment: the public commitment algebra `B`
/// and the private basis change `ψ` onto it. `secret` must never leave the
/// prover.
#[derive(Clone, Debug)]
pub struct Round1State {
    pub commitment: Algebra,
    pub secret: Isomorphism,
}

/// A completed round of the one-bit protocol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript1 {
    pub commitment: Algebra,
    pub challenge: bool,
    pub response: Isomorphism,
    pub accepted: bool,
}

/// A completed round of the long-challenge protocol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript2 {
    pub commitment: Algebra,
    pub challenge_algebra: Algebra,
    pub challenge_iso: Isomorphism,
    pub response: AlgElement,
    pub accepted: bool,
}

/// Prover commitment for the one-bit protocol: a fresh random presentation
/// of `A0`. Only public key material is needed; the secret plays no role
/// until the response.
pub fn p1_commit<R: RngCore + ?Sized>(
    pk: &PublicKey,
    height: u32,
    rng: &mut R,
) -> Result<Round1State, ProtocolError> {
    let (commitment, secret) = random_presentation(&pk.a0, height, rng)?;
    Ok(Round1State { commitment, secret })
}

/// Prover response to challenge bit `i`: `ψ∘φ^{-i}`, i.e. `ψ` itself for
/// `i = 0` and the composite `A1 → A0 → B` for `i = 1`.
pub fn p1_respond(psi: &Isomorphism, sk: &SecretKey, challenge: bool) -> Isomorphism {
    if challenge {
        sk.phi.inverse().then(psi)
    } else {
        psi.clone()
    }
}

/// Verifier decision for the one-bit protocol: the response must be an
/// isomorphism from `A_i` onto the commitment. Total on well-formed values;
/// mismatched dimensions and non-multiplicative maps reject rather than
/// error. (Byte-level malformation — e.g. a non-associative commitment — is
/// rejected earlier, by decoding.)
pub fn p1_verify(
    pk: &PublicKey,
    commitment: &Algebra,
    challenge: bool,
    response: &Isomorphism,
) -> bool {
    let source = if challenge { &pk.a1 } else { &pk.a0 };
    verify_isomorphism(source, commitment, response)
}

/// Runs `rounds` sequential rounds of the one-bit protocol with an honest
/// prover and honest verifier sharing one transport-free process. Accepts
/// iff every round accepts. Returns the full per-round transcripts.
pub fn run_identification<R: RngCore + ?Sized>(
    pair: &KeyPair,
    rounds: u32,
    height: u32,
    rng: &mut R,
) -> Result<(bool, Vec<Transcript1>), ProtocolError> {
    if rounds == 0 {
        return Err(ProtocolError::BadRounds);
    }
    let mut transcripts = Vec::with_capacity(rounds as usize);
    let mut all = true;
    for _ in 0..rounds {
        let state = p1_commit(&pair.public, height, rng)?;
        let challenge = sampling::uniform_bit(rng);
        let response = p1_respond(&state.secret, &pair.secret, challenge);
        let accepted = p1_verify(&pair.public, &state.commitment, challenge, &response);
        all &= accepted;
        transcripts.push(Transcript1 {
            commitment: state.commitment,
            challenge,
            response,
            accepted,
        });
    }
    Ok((all, transcripts))
}

/// Runs the canonical bit-guessing cheater against an honest verifier: with
/// no secret key, the cheater guesses the upcoming challenge bit `g`,
/// commits to a fresh presentation of `A_g`, and answers with its own basis
/// change — which convinces the verifier exactly when the guess was right.
///
/// Used to realize the `2^{-rounds}` soundness bound empirically. Stops at
/// the first rejected round (later rounds cannot change the verdict), so the
/// returned transcript list may be shorter than `rounds`.
pub fn run_guessing_cheater<R: RngCore + ?Sized>(
    pk: &PublicKey,
    rounds: u32,
    height: u32,
    rng: &mut R,
) -> Result<(bool, Vec<Transcript1>), ProtocolError> {
    if rounds == 0 {
        return Err(ProtocolError::BadRounds);
    }
    let mut transcripts = Vec::new();
    for _ in 0..rounds {
        let guess = sampling::uniform_bit(rng);
        let source = if guess { &pk.a1 } else { &pk.a0 };
        let (commitment, psi) = random_presentation(source, height, rng)?;
        let challenge = sampling::uniform_bit(rng);
        let accepted = p1_verify(pk, &commitment, challenge, &psi);
        let rejected = !accepted;
        transcripts.push(Transcript1 {
            commitment,
            challenge,
            response: psi,
            accepted,
        });
        if rejected {
            return Ok((false, transcripts));
        }
    }
    Ok((true, transcripts))
}

/// The knowledge extractor: two accepting transcripts on the same
/// commitment answering challenge 0 and challenge 1 respectively compose to
/// a verified isomorphism `A0 → A1` — for honest transcripts, exactly the
/// secret `φ`.
pub fn extract_witness(t0: &Transcript1, t1: &Transcript1) -> Result<Isomorphism, ProtocolError> {
    if !t0.accepted || !t1.accepted {
        return Err(ProtocolError::BadExtraction(
            "both transcripts must be accepting",
        ));
    }
    if t0.challenge || !t1.challenge {
        return Err(ProtocolError::BadExtraction(
            "transcripts must answer challenge 0 and challenge 1 in that order",
        ));
    }
    if t0.commitment != t1.commitment {
        return Err(ProtocolError::BadExtraction(
            "transcripts must share one commitment",
        ));
    }
    // δ0: A0 → B and δ1: A1 → B, so δ1⁻¹∘δ0 maps A0 → A1.
    Ok(t0.response.then(&t1.response.inverse()))
}

/// The zero-knowledge simulator: produces an accepting transcript against
/// an arbitrary (possibly stateful) verifier strategy without the secret
/// key, by guessing the challenge bit, committing to a presentation of the
/// guessed side, and restarting whenever the strategy answers differently.
///
/// Returns the transcript and the number of attempts used (expected 2 for
/// any strategy whose bit cannot depend on the hidden basis change).
pub fn simulate_transcript<R, F>(
    pk: &PublicKey,
    mut strategy: F,
    height: u32,
    rng: &mut R,
) -> Result<(Transcript1, usize), ProtocolError>
where
    R: RngCore + ?Sized,
    F: FnMut(&Algebra) -> bool,
{
    for attempt in 1..=SIMULATOR_CAP {
        let guess = sampling::uniform_bit(rng);
        let source = if guess { &pk.a1 } else { &pk.a0 };
        let (commitment, psi) = random_presentation(source, height, rng)?;
        let challenge = strategy(&commitment);
        if challenge != guess {
            continue;
        }
        let accepted = p1_verify(pk, &commitment, challenge, &psi);
        debug_assert!(accepted, "simulated openings are honest by construction");
        return Ok((
            Transcript1 {
                commitment,
                challenge,
                response: psi,
                accepted,
            },
            attempt,
        ));
    }
    Err(ProtocolError::SimulationCap)
}

/// Prover commitment for the long-challenge protocol: a fresh random
/// presentation of `A1`, so that the response chain `φ` then `ψ` then `δ`
/// is an isomorphism out of `A0`, where the public element lives.
pub fn p2_commit<R: RngCore + ?Sized>(
    pk: &PublicKey,
    height: u32,
    rng: &mut R,
) -> Result<Round1State, ProtocolError> {
    let (commitment, secret) = random_presentation(&pk.a1, height, rng)?;
    Ok(Round1State { commitment, secret })
}

/// Verifier challenge for the long-challenge protocol: a fresh random
/// re-presentation `C` of the commitment, together with the basis change
/// `δ: B → C`.
pub fn p2_challenge<R: RngCore + ?Sized>(
    commitment: &Algebra,
    height: u32,
    rng: &mut R,
) -> Result<(Algebra, Isomorphism), ProtocolError> {
    let (challenge_algebra, delta) = random_presentation(commitment, height, rng)?;
    debug_assert!(verify_isomorphism(commitment, &challenge_algebra, &delta));
    Ok((challenge_algebra, delta))
}

/// Prover response for the long-challenge protocol: validates the received
/// challenge against the commitment `B`, then transports the public element
/// through `δ∘ψ∘φ`. A malformed challenge aborts the round without emitting
/// anything — the prover refuses to act as a map-application oracle for
/// non-isomorphisms.
pub fn p2_respond(
    sk: &SecretKey,
    psi: &Isomorphism,
    commitment: &Algebra,
    challenge_algebra: &Algebra,
    delta: &Isomorphism,
    element: &AlgElement,
) -> Result<AlgElement, ProtocolError> {
    if element.dim() != sk.phi.dim() {
        return Err(ProtocolError::ChallengeRejected(
            "element dimension mismatch",
        ));
    }
    if !verify_isomorphism(commitment, challenge_algebra, delta) {
        return Err(ProtocolError::ChallengeRejected(
            "challenge map is not an isomorphism of the commitment",
        ));
    }
    Ok(sk.phi.then(psi).then(delta).apply(element))
}

/// Verifier decision for the long-challenge protocol: the reply must have
/// exactly the same minimal polynomial over `C` as the public element has
/// over `A0`. Total; adversarial replies reject rather than error.
pub fn p2_verify(
    pk: &PublicKey,
    element: &AlgElement,
    challenge_algebra: &Algebra,
    response: &AlgElement,
) -> bool {
    if element.dim() != pk.a0.dim() || response.dim() != challenge_algebra.dim() {
        return false;
    }
    pk.a0.minimal_polynomial(element) == challenge_algebra.minimal_polynomial(response)
}

/// Runs one honest round of the long-challenge protocol in-process.
pub fn run_p2_identification<R: RngCore + ?Sized>(
    pair: &KeyPair,
    height: u32,
    rng: &mut R,
) -> Result<Transcript2, ProtocolError> {
    let element = pair
        .public
        .public_element
        .as_ref()
        .ok_or(ProtocolError::MissingPublicElement)?;
    let state = p2_commit(&pair.public, height, rng)?;
    let (challenge_algebra, challenge_iso) = p2_challenge(&state.commitment, height, rng)?;
    let response = p2_respond(
        &pair.secret,
        &state.secret,
        &state.commitment,
        &challenge_algebra,
        &challenge_iso,
        element,
    )?;
    let accepted = p2_verify(&pair.public, element, &challenge_algebra, &response);
    Ok(Transcript2 {
        commitment: state.commitment,
        challenge_algebra,
        challenge_iso,
        response,
        accepted,
    })
}
