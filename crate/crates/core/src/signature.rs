//! Signatures from the long-challenge identification protocol.
//!
//! The interactive verifier's only move is sampling a random re-presentation
//! of the prover's commitment, so it can be replaced by a hash: the
//! challenge is derived deterministically from the public key, the
//! commitment, and the message. Signing runs the long-challenge round with
//! that derived challenge; verification re-derives it and applies the same
//! minimal-polynomial check as the interactive verifier.
//!
//! Derivation is fully pinned for interoperability: SHA-256 over a domain
//! tag and length-prefixed canonical encodings (dense tensor form) yields a
//! 32-byte seed, which keys a ChaCha20 stream driving exactly the sampling
//! path of the interactive challenge. Every byte of that path is defined in
//! this crate, so independently built binaries derive identical challenges.

use crate::algebra::{random_presentation, AlgElement, Algebra, Isomorphism};
use crate::codec::{hash_bytes_algebra, hash_bytes_public_key};
use crate::construction::{KeyPair, PublicKey};
use crate::protocol::{p2_commit, p2_respond, p2_verify, ProtocolError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Identifier of the challenge-derivation hash, recorded in signatures and
/// session headers.
pub const HASH_ID: &str = "sha-256";

/// Sampling height of derived challenges. Part of the signature format: the
/// verifier replays the derivation, so both sides must draw basis-change
/// entries from the same range.
pub const CHALLENGE_HEIGHT: u32 = 3;

const DOMAIN_TAG: &[u8] = b"csazkp-sig-v1";

/// A signature: the commitment algebra, the image of the public element
/// under the full isomorphism chain, and the challenge seed (recomputable
/// from public data; stored so verification can cross-check the derivation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    /// Name of the hash behind `seed`.
    pub hash: String,
    /// The signer's fresh re-presentation of the second public algebra.
    pub commitment: Algebra,
    /// Image of the public element in the derived challenge algebra.
    pub response: AlgElement,
    /// SHA-256 of the bound public data; keys the challenge derivation.
    pub seed: [u8; 32],
}

#[derive(Debug, Error)]
pub enum SignatureError {
    /// The public key carries no distinguished element to sign with.
    #[error("public key has no public element")]
    MissingPublicElement,
    /// The deterministic sampler failed to produce an invertible basis
    /// change within the retry budget (astronomically unlikely; would
    /// indicate a broken derivation input).
    #[error("challenge derivation exhausted its sampling budget")]
    DerivationFailed,
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
}

fn challenge_seed(pk: &PublicKey, message: &[u8], commitment: &Algebra) -> [u8; 32] {
    let mut hasher = Sha256::new();
    hasher.update(DOMAIN_TAG);
    for part in [
        hash_bytes_public_key(pk).as_slice(),
        hash_bytes_algebra(commitment).as_slice(),
        message,
    ] {
        hasher.update((part.len() as u64).to_be_bytes());
        hasher.update(part);
    }
    hasher.finalize().into()
}

/// Derives the challenge for `commitment` over `message`: hashes the bound
/// public data into a seed and replays the interactive verifier's sampling
/// path on a stream cipher keyed by it. Returns the challenge algebra, the
/// basis change from the commitment onto it, and the seed.
pub fn derive_challenge(
    pk: &PublicKey,
    message: &[u8],
    commitment: &Algebra,
) -> Result<(Algebra, Isomorphism, [u8; 32]), SignatureError> {
    let seed = challenge_seed(pk, message, commitment);
    let mut rng = ChaCha20Rng::from_seed(seed);
    let (algebra, iso) = random_presentation(commitment, CHALLENGE_HEIGHT, &mut rng)
        .map_err(|_| SignatureError::DerivationFailed)?;
    Ok((algebra, iso, seed))
}

/// Signs `message`: commits to a fresh re-presentation of the second public
/// algebra, derives the challenge from the hash, and responds with the image
/// of the public element under the composite isomorphism.
///
/// `height` bounds the commitment's basis-change entries; the challenge side
/// always uses [`CHALLENGE_HEIGHT`].
pub fn sign<R: Rng>(
    pair: &KeyPair,
    message: &[u8],
    height: u32,
    rng: &mut R,
) -> Result<Signature, SignatureError> {
    let element = pair
        .public
        .public_element
        .as_ref()
        .ok_or(SignatureError::MissingPublicElement)?;
    let state = p2_commit(&pair.public, height, rng)?;
    let (challenge_algebra, challenge_iso, seed) =
        derive_challenge(&pair.public, message, &state.commitment)?;
    let response = p2_respond(
        &pair.secret,
        &state.secret,
        &state.commitment,
        &challenge_algebra,
        &challenge_iso,
        element,
    )?;
    Ok(Signature {
        hash: HASH_ID.into(),
        commitment: state.commitment,
        response,
        seed,
    })
}

/// Verifies a signature. Total: any malformed or mismatched input returns
/// `false`. Re-derives the challenge from public data, cross-checks the
/// stored seed, and accepts exactly when the public element's minimal
/// polynomial is preserved.
pub fn verify_signature(pk: &PublicKey, message: &[u8], sig: &Signature) -> bool {
    if sig.hash != HASH_ID {
        return false;
    }
    let Some(element) = pk.public_element.as_ref() else {
        return false;
    };
    if sig.commitment.dim() != pk.a1.dim() || sig.response.dim() != pk.a1.dim() {
        return false;
    }
    let Ok((challenge_algebra, _, seed)) = derive_challenge(pk, message, &sig.commitment) else {
        return false;
    };
    if seed != sig.seed {
        return false;
    }
    p2_verify(pk, element, &challenge_algebra, &sig.response)
}
