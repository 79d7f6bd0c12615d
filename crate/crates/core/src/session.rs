//! Framed wire protocol for interactive identification sessions.
//!
//! Frames are a 4-byte big-endian length followed by that many bytes of
//! UTF-8 JSON; a declared length over [`MAX_FRAME`] aborts the session
//! before the body is read. Each frame carries an envelope
//! `{"type": ..., "session": ..., "payload": ...}` where `type` is one of
//! the fixed message tags, `session` is a 16-byte hex identifier chosen by
//! the prover, and `payload` uses the canonical encodings of [`crate::codec`]
//! (decoded strictly, so a non-canonical peer is rejected, not normalized).
//!
//! A session opens with a hello exchange pinning the format version, the
//! protocol (`"p1"` one-bit rounds, `"p2"` long challenge), the key variant,
//! the instance size `k`, the round count, and the challenge hash. The
//! verifier then drives the configured number of rounds and always speaks
//! last with a `verdict` frame. Any framing error, decode failure, or
//! out-of-order message aborts the session: the side that noticed sends an
//! `error` frame (best effort) and reports a rejected outcome. Transport
//! timeouts are the caller's job — set a per-frame read timeout of
//! [`DEFAULT_FRAME_TIMEOUT`] on the socket before starting.

use crate::algebra::Algebra;
use crate::codec::{
    decode_algebra, decode_element, decode_isomorphism, decode_p2_challenge, encode_algebra,
    encode_element, encode_isomorphism, encode_p2_challenge,
};
use crate::construction::{KeyPair, PublicKey};
use crate::protocol::{
    p1_commit, p1_respond, p1_verify, p2_challenge, p2_commit, p2_respond, p2_verify, Transcript1,
    Transcript2,
};
use crate::sampling::uniform_bit;
use crate::signature::HASH_ID;
use rand::RngCore;
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};
use std::time::Duration;

/// Wire format version pinned in the hello exchange.
pub const WIRE_VERSION: u32 = 1;

/// Hard cap on frame bodies; larger declared lengths abort immediately.
pub const MAX_FRAME: u32 = 64 * 1024 * 1024;

/// Suggested per-frame read timeout for socket transports.
pub const DEFAULT_FRAME_TIMEOUT: Duration = Duration::from_secs(30);

/// Which identification protocol a session runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WireProtocol {
    /// Iterated one-bit challenges.
    OneBit,
    /// The single long-challenge round.
    LongChallenge,
}

impl WireProtocol {
    pub fn name(self) -> &'static str {
        match self {
            WireProtocol::OneBit => "p1",
            WireProtocol::LongChallenge => "p2",
        }
    }
}

/// Per-session parameters, agreed in the hello exchange.
#[derive(Clone, Debug)]
pub struct SessionConfig {
    pub protocol: WireProtocol,
    /// Number of rounds (always 1 for the long-challenge protocol).
    pub rounds: u32,
    /// Sampling height for commitments and challenges.
    pub height: u32,
}

impl SessionConfig {
    pub fn one_bit(rounds: u32, height: u32) -> Self {
        SessionConfig {
            protocol: WireProtocol::OneBit,
            rounds,
            height,
        }
    }

    pub fn long_challenge(height: u32) -> Self {
        SessionConfig {
            protocol: WireProtocol::LongChallenge,
            rounds: 1,
            height,
        }
    }
}

/// Why a session aborted before a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SessionFailure {
    /// Transport read/write failed (includes timeouts).
    Io(String),
    /// Length or envelope framing was invalid, or a frame exceeded the cap.
    Framing(String),
    /// A payload failed strict canonical decoding.
    Decode(String),
    /// A well-formed frame arrived out of order or with wrong metadata.
    StateMachine(String),
    /// A semantic check failed (dimension mismatch, invalid challenge, ...).
    Validation(String),
    /// The peer sent an error frame; carries its message.
    Remote(String),
}

impl std::fmt::Display for SessionFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SessionFailure::Io(m) => write!(f, "transport error: {m}"),
            SessionFailure::Framing(m) => write!(f, "framing error: {m}"),
            SessionFailure::Decode(m) => write!(f, "decode error: {m}"),
            SessionFailure::StateMachine(m) => write!(f, "protocol violation: {m}"),
            SessionFailure::Validation(m) => write!(f, "validation error: {m}"),
            SessionFailure::Remote(m) => write!(f, "peer reported: {m}"),
        }
    }
}

/// Result of a completed or aborted session.
///
/// `accepted` is `true` only when a verdict frame accepting the run was
/// exchanged. Aborts leave `failure` set. The transcripts hold every
/// completed round and can be re-verified offline against the public key.
#[derive(Clone, Debug)]
pub struct SessionOutcome {
    pub accepted: bool,
    pub transcripts: Vec<Transcript1>,
    pub transcript2: Option<Transcript2>,
    pub failure: Option<SessionFailure>,
}

impl SessionOutcome {
    fn rejected(failure: SessionFailure) -> Self {
        SessionOutcome {
            accepted: false,
            transcripts: Vec::new(),
            transcript2: None,
            failure: Some(failure),
        }
    }
}

// ---------------------------------------------------------------------------
// Envelope and control payloads.

#[derive(Serialize)]
struct EnvelopeOut<'a> {
    r#type: &'a str,
    session: &'a str,
    payload: &'a serde_json::value::RawValue,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EnvelopeIn {
    r#type: String,
    session: String,
    payload: Box<serde_json::value::RawValue>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
struct HelloDoc {
    version: u32,
    protocol: String,
    variant: String,
    k: u32,
    rounds: u32,
    hash: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BitDoc {
    bit: u8,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VerdictDoc {
    accept: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ErrorDoc {
    message: String,
}

const TAG_HELLO: &str = "hello";
const TAG_COMMITMENT: &str = "commitment";
const TAG_CHALLENGE_BIT: &str = "challenge_bit";
const TAG_RESPONSE_ISO: &str = "response_iso";
const TAG_P2_CHALLENGE: &str = "p2_challenge";
const TAG_P2_RESPONSE: &str = "p2_response";
const TAG_VERDICT: &str = "verdict";
const TAG_ERROR: &str = "error";

const KNOWN_TAGS: [&str; 8] = [
    TAG_HELLO,
    TAG_COMMITMENT,
    TAG_CHALLENGE_BIT,
    TAG_RESPONSE_ISO,
    TAG_P2_CHALLENGE,
    TAG_P2_RESPONSE,
    TAG_VERDICT,
    TAG_ERROR,
];

// ---------------------------------------------------------------------------
// Framing.

fn io_failure(err: std::io::Error) -> SessionFailure {
    SessionFailure::Io(err.to_string())
}

fn write_frame<T: Write>(transport: &mut T, body: &[u8]) -> Result<(), SessionFailure> {
    let len = u32::try_from(body.len())
        .ok()
        .filter(|&n| n <= MAX_FRAME)
        .ok_or_else(|| SessionFailure::Framing("outgoing frame exceeds the size cap".into()))?;
    transport
        .write_all(&len.to_be_bytes())
        .map_err(io_failure)?;
    transport.write_all(body).map_err(io_failure)?;
    transport.flush().map_err(io_failure)?;
    Ok(())
}

fn read_frame<T: Read>(transport: &mut T) -> Result<Vec<u8>, SessionFailure> {
    let mut header = [0u8; 4];
    transport.read_exact(&mut header).map_err(io_failure)?;
    let len = u32::from_be_bytes(header);
    if len > MAX_FRAME {
        return Err(SessionFailure::Framing(format!(
            "declared frame length {len} exceeds the {MAX_FRAME}-byte cap"
        )));
    }
    let mut body = vec![0u8; len as usize];
    transport.read_exact(&mut body).map_err(io_failure)?;
    Ok(body)
}

fn send_message<T: Write>(
    transport: &mut T,
    tag: &str,
    session: &str,
    payload: String,
) -> Result<(), SessionFailure> {
    let payload = serde_json::value::RawValue::from_string(payload)
        .expect("canonical payloads are valid JSON");
    let body = serde_json::to_vec(&EnvelopeOut {
        r#type: tag,
        session,
        payload: &payload,
    })
    .expect("envelope serialization cannot fail");
    write_frame(transport, &body)
}

fn send_control<T: Write, D: Serialize>(
    transport: &mut T,
    tag: &str,
    session: &str,
    doc: &D,
) -> Result<(), SessionFailure> {
    send_message(
        transport,
        tag,
        session,
        serde_json::to_string(doc).expect("control payloads serialize"),
    )
}

/// Best-effort error frame; transport failures at this point are ignored
/// because the session is already aborting.
fn send_error<T: Write>(transport: &mut T, session: &str, message: &str) {
    let _ = send_control(
        transport,
        TAG_ERROR,
        session,
        &ErrorDoc {
            message: message.into(),
        },
    );
}

fn parse_envelope(body: &[u8]) -> Result<EnvelopeIn, SessionFailure> {
    let envelope: EnvelopeIn = serde_json::from_slice(body)
        .map_err(|e| SessionFailure::Framing(format!("invalid envelope: {e}")))?;
    if !KNOWN_TAGS.contains(&envelope.r#type.as_str()) {
        return Err(SessionFailure::Framing(format!(
            "unknown message type {:?}",
            envelope.r#type
        )));
    }
    if envelope.session.len() != 32
        || !envelope
            .session
            .bytes()
            .all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b))
    {
        return Err(SessionFailure::Framing(
            "session id must be 32 lowercase hex digits".into(),
        ));
    }
    Ok(envelope)
}

/// Receives the next frame and requires it to be `expected` for the known
/// session. An `error` frame surfaces as [`SessionFailure::Remote`]; anything
/// else out of order is a state-machine violation.
fn recv_expect<T: Read>(
    transport: &mut T,
    session: &str,
    expected: &str,
) -> Result<String, SessionFailure> {
    let body = read_frame(transport)?;
    let envelope = parse_envelope(&body)?;
    if envelope.session != session {
        return Err(SessionFailure::StateMachine(format!(
            "frame for session {:?} on a {:?} session",
            envelope.session, session
        )));
    }
    if envelope.r#type == TAG_ERROR {
        let doc: ErrorDoc = serde_json::from_str(envelope.payload.get())
            .map_err(|e| SessionFailure::Framing(format!("invalid error payload: {e}")))?;
        return Err(SessionFailure::Remote(doc.message));
    }
    if envelope.r#type != expected {
        return Err(SessionFailure::StateMachine(format!(
            "expected a {expected:?} frame, got {:?}",
            envelope.r#type
        )));
    }
    Ok(envelope.payload.get().to_string())
}

fn parse_control<D: for<'de> Deserialize<'de>>(
    payload: &str,
    what: &str,
) -> Result<D, SessionFailure> {
    serde_json::from_str(payload)
        .map_err(|e| SessionFailure::Framing(format!("invalid {what} payload: {e}")))
}

fn new_session_id<R: RngCore + ?Sized>(rng: &mut R) -> String {
    let mut bytes = [0u8; 16];
    rng.fill_bytes(&mut bytes);
    hex::encode(bytes)
}

fn hello_doc(pk: &PublicKey, config: &SessionConfig) -> HelloDoc {
    HelloDoc {
        version: WIRE_VERSION,
        protocol: config.protocol.name().into(),
        variant: pk.variant.name().into(),
        k: pk.k,
        rounds: config.rounds,
        hash: HASH_ID.into(),
    }
}

fn check_commitment_dims(commitment: &Algebra, pk: &PublicKey) -> Result<(), SessionFailure> {
    if commitment.dim() != pk.a0.dim() {
        return Err(SessionFailure::Validation(format!(
            "commitment dimension {} does not match the instance dimension {}",
            commitment.dim(),
            pk.a0.dim()
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Prover side.

/// Runs a full session as the prover. Never panics on peer input; transport
/// and protocol problems come back as a rejected outcome with the failure
/// recorded. The error frame, when one is sent, reuses the failure message.
pub fn run_prover_session<T: Read + Write, R: RngCore + ?Sized>(
    pair: &KeyPair,
    config: &SessionConfig,
    transport: &mut T,
    rng: &mut R,
) -> SessionOutcome {
    let session = new_session_id(rng);
    match prover_inner(pair, config, transport, rng, &session) {
        Ok(outcome) => outcome,
        Err(failure) => {
            if !matches!(failure, SessionFailure::Io(_) | SessionFailure::Remote(_)) {
                send_error(transport, &session, &failure.to_string());
            }
            SessionOutcome::rejected(failure)
        }
    }
}

fn prover_inner<T: Read + Write, R: RngCore + ?Sized>(
    pair: &KeyPair,
    config: &SessionConfig,
    transport: &mut T,
    rng: &mut R,
    session: &str,
) -> Result<SessionOutcome, SessionFailure> {
    if config.rounds == 0 {
        return Err(SessionFailure::Validation(
            "round count must be positive".into(),
        ));
    }
    if config.protocol == WireProtocol::LongChallenge && config.rounds != 1 {
        return Err(SessionFailure::Validation(
            "the long-challenge protocol runs exactly one round".into(),
        ));
    }
    let hello = hello_doc(&pair.public, config);
    send_control(transport, TAG_HELLO, session, &hello)?;
    let echo: HelloDoc = parse_control(&recv_expect(transport, session, TAG_HELLO)?, "hello")?;
    if echo != hello {
        return Err(SessionFailure::StateMachine(
            "verifier hello does not match the offered parameters".into(),
        ));
    }

    match config.protocol {
        WireProtocol::OneBit => prover_one_bit(pair, config, transport, rng, session),
        WireProtocol::LongChallenge => prover_long_challenge(pair, config, transport, rng, session),
    }
}

fn prover_one_bit<T: Read + Write, R: RngCore + ?Sized>(
    pair: &KeyPair,
    config: &SessionConfig,
    transport: &mut T,
    rng: &mut R,
    session: &str,
) -> Result<SessionOutcome, SessionFailure> {
    let mut transcripts = Vec::with_capacity(config.rounds as usize);
    for _ in 0..config.rounds {
        let state = p1_commit(&pair.public, config.height, rng)
            .map_err(|e| SessionFailure::Validation(e.to_string()))?;
        send_message(
            transport,
            TAG_COMMITMENT,
            session,
            encode_algebra(&state.commitment),
        )?;
        let doc: BitDoc = parse_control(
            &recv_expect(transport, session, TAG_CHALLENGE_BIT)?,
            "challenge",
        )?;
        if doc.bit > 1 {
            return Err(SessionFailure::Validation(
                "challenge bit must be 0 or 1".into(),
            ));
        }
        let challenge = doc.bit == 1;
        let response = p1_respond(&state.secret, &pair.secret, challenge);
        send_message(
            transport,
            TAG_RESPONSE_ISO,
            session,
            encode_isomorphism(&response),
        )?;
        transcripts.push(Transcript1 {
            commitment: state.commitment,
            challenge,
            response,
            accepted: true,
        });
    }
    let verdict: VerdictDoc =
        parse_control(&recv_expect(transport, session, TAG_VERDICT)?, "verdict")?;
    Ok(SessionOutcome {
        accepted: verdict.accept,
        transcripts,
        transcript2: None,
        failure: None,
    })
}

fn prover_long_challenge<T: Read + Write, R: RngCore + ?Sized>(
    pair: &KeyPair,
    config: &SessionConfig,
    transport: &mut T,
    rng: &mut R,
    session: &str,
) -> Result<SessionOutcome, SessionFailure> {
    let element = pair
        .public
        .public_element
        .as_ref()
        .ok_or_else(|| SessionFailure::Validation("public key has no public element".into()))?;
    let state = p2_commit(&pair.public, config.height, rng)
        .map_err(|e| SessionFailure::Validation(e.to_string()))?;
    send_message(
        transport,
        TAG_COMMITMENT,
        session,
        encode_algebra(&state.commitment),
    )?;
    let payload = recv_expect(transport, session, TAG_P2_CHALLENGE)?;
    let (challenge_algebra, challenge_iso) =
        decode_p2_challenge(&payload).map_err(|e| SessionFailure::Decode(e.to_string()))?;
    let response = p2_respond(
        &pair.secret,
        &state.secret,
        &state.commitment,
        &challenge_algebra,
        &challenge_iso,
        element,
    )
    .map_err(|e| SessionFailure::Validation(e.to_string()))?;
    send_message(
        transport,
        TAG_P2_RESPONSE,
        session,
        encode_element(&response),
    )?;
    let verdict: VerdictDoc =
        parse_control(&recv_expect(transport, session, TAG_VERDICT)?, "verdict")?;
    Ok(SessionOutcome {
        accepted: verdict.accept,
        transcripts: Vec::new(),
        transcript2: Some(Transcript2 {
            commitment: state.commitment,
            challenge_algebra,
            challenge_iso,
            response,
            accepted: verdict.accept,
        }),
        failure: None,
    })
}

// ---------------------------------------------------------------------------
// Verifier side.

/// Runs a full session as the verifier over an accepted connection. The
/// verdict frame is always the last message of a completed session; aborted
/// sessions send an error frame instead and report the failure.
pub fn run_verifier_session<T: Read + Write, R: RngCore + ?Sized>(
    pk: &PublicKey,
    config: &SessionConfig,
    transport: &mut T,
    rng: &mut R,
) -> SessionOutcome {
    let mut session = String::new();
    match verifier_inner(pk, config, transport, rng, &mut session) {
        Ok(outcome) => outcome,
        Err(failure) => {
            if !session.is_empty()
                && !matches!(failure, SessionFailure::Io(_) | SessionFailure::Remote(_))
            {
                send_error(transport, &session, &failure.to_string());
            }
            SessionOutcome::rejected(failure)
        }
    }
}

fn verifier_inner<T: Read + Write, R: RngCore + ?Sized>(
    pk: &PublicKey,
    config: &SessionConfig,
    transport: &mut T,
    rng: &mut R,
    session: &mut String,
) -> Result<SessionOutcome, SessionFailure> {
    if config.rounds == 0 {
        return Err(SessionFailure::Validation(
            "round count must be positive".into(),
        ));
    }
    let body = read_frame(transport)?;
    let envelope = parse_envelope(&body)?;
    // Record the id first so even a pre-hello violation can be answered
    // with an error frame on the right session.
    *session = envelope.session.clone();
    if envelope.r#type != TAG_HELLO {
        return Err(SessionFailure::StateMachine(format!(
            "expected a \"hello\" frame, got {:?}",
            envelope.r#type
        )));
    }
    let hello: HelloDoc = parse_control(envelope.payload.get(), "hello")?;
    let expected = hello_doc(pk, config);
    if hello != expected {
        return Err(SessionFailure::StateMachine(format!(
            "hello mismatch: peer offered version {} protocol {:?} variant {:?} k {} rounds {} \
             hash {:?}, expected version {} protocol {:?} variant {:?} k {} rounds {} hash {:?}",
            hello.version,
            hello.protocol,
            hello.variant,
            hello.k,
            hello.rounds,
            hello.hash,
            expected.version,
            expected.protocol,
            expected.variant,
            expected.k,
            expected.rounds,
            expected.hash,
        )));
    }
    send_control(transport, TAG_HELLO, session, &expected)?;

    match config.protocol {
        WireProtocol::OneBit => verifier_one_bit(pk, config, transport, rng, session),
        WireProtocol::LongChallenge => verifier_long_challenge(pk, config, transport, rng, session),
    }
}

fn verifier_one_bit<T: Read + Write, R: RngCore + ?Sized>(
    pk: &PublicKey,
    config: &SessionConfig,
    transport: &mut T,
    rng: &mut R,
    session: &str,
) -> Result<SessionOutcome, SessionFailure> {
    let mut transcripts = Vec::with_capacity(config.rounds as usize);
    let mut all_accepted = true;
    for _ in 0..config.rounds {
        let payload = recv_expect(transport, session, TAG_COMMITMENT)?;
        let commitment =
            decode_algebra(&payload).map_err(|e| SessionFailure::Decode(e.to_string()))?;
        check_commitment_dims(&commitment, pk)?;
        let challenge = uniform_bit(rng);
        send_control(
            transport,
            TAG_CHALLENGE_BIT,
            session,
            &BitDoc {
                bit: challenge as u8,
            },
        )?;
        let payload = recv_expect(transport, session, TAG_RESPONSE_ISO)?;
        let response =
            decode_isomorphism(&payload).map_err(|e| SessionFailure::Decode(e.to_string()))?;
        if response.dim() != pk.a0.dim() {
            return Err(SessionFailure::Validation(
                "response dimension does not match the instance".into(),
            ));
        }
        let accepted = p1_verify(pk, &commitment, challenge, &response);
        all_accepted &= accepted;
        transcripts.push(Transcript1 {
            commitment,
            challenge,
            response,
            accepted,
        });
    }
    send_control(
        transport,
        TAG_VERDICT,
        session,
        &VerdictDoc {
            accept: all_accepted,
        },
    )?;
    Ok(SessionOutcome {
        accepted: all_accepted,
        transcripts,
        transcript2: None,
        failure: None,
    })
}

fn verifier_long_challenge<T: Read + Write, R: RngCore + ?Sized>(
    pk: &PublicKey,
    config: &SessionConfig,
    transport: &mut T,
    rng: &mut R,
    session: &str,
) -> Result<SessionOutcome, SessionFailure> {
    let element = pk
        .public_element
        .as_ref()
        .ok_or_else(|| SessionFailure::Validation("public key has no public element".into()))?;
    let payload = recv_expect(transport, session, TAG_COMMITMENT)?;
    let commitment = decode_algebra(&payload).map_err(|e| SessionFailure::Decode(e.to_string()))?;
    check_commitment_dims(&commitment, pk)?;
    let (challenge_algebra, challenge_iso) = p2_challenge(&commitment, config.height, rng)
        .map_err(|e| SessionFailure::Validation(e.to_string()))?;
    send_message(
        transport,
        TAG_P2_CHALLENGE,
        session,
        encode_p2_challenge(&challenge_algebra, &challenge_iso),
    )?;
    let payload = recv_expect(transport, session, TAG_P2_RESPONSE)?;
    let response = decode_element(&payload).map_err(|e| SessionFailure::Decode(e.to_string()))?;
    let accepted = response.dim() == challenge_algebra.dim()
        && p2_verify(pk, element, &challenge_algebra, &response);
    send_control(
        transport,
        TAG_VERDICT,
        session,
        &VerdictDoc { accept: accepted },
    )?;
    Ok(SessionOutcome {
        accepted,
        transcripts: Vec::new(),
        transcript2: Some(Transcript2 {
            commitment,
            challenge_algebra,
            challenge_iso,
            response,
            accepted,
        }),
        failure: None,
    })
}
