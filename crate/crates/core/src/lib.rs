//! Zero-knowledge identification and signatures from the explicit
//! isomorphism problem for central simple algebras over Q.
//!
//! The library has three layers:
//!
//! * exact arithmetic: [`linalg`] (arbitrary-precision rationals, fraction-free
//!   elimination), [`poly`] and [`algebra`] (structure-constant algebras,
//!   minimal polynomials, verified isomorphisms);
//! * instance construction: [`cyclic`] (Gaussian-period fields, cyclic and
//!   division algebras) and [`construction`] (key generation in matrix,
//!   division and order variants);
//! * protocols: [`protocol`] (one-bit and long-challenge identification),
//!   [`signature`] (Fiat-Shamir style signatures), [`codec`] and [`session`]
//!   (canonical encoding and the framed wire protocol).
//!
//! Everything is exact: there is no floating point and no modular shortcut
//! anywhere in the crate.

pub mod algebra;
pub mod codec;
pub mod construction;
pub mod cyclic;
pub mod linalg;
pub mod poly;
pub mod protocol;
pub mod sampling;
pub mod session;
pub mod signature;

pub use algebra::{
    change_basis, conjugation_isomorphism, integral_scaling, matrix_units_algebra,
    random_presentation, tensor_product, verify_isomorphism, AlgElement, Algebra, AlgebraError,
    Isomorphism,
};
pub use codec::{
    decode_algebra, decode_element, decode_isomorphism, decode_matrix, decode_public_key,
    decode_rational, decode_secret_key, decode_signature, encode_algebra, encode_element,
    encode_isomorphism, encode_matrix, encode_public_key, encode_rational, encode_secret_key,
    encode_signature, DecodeError,
};
pub use construction::{
    algebra_from_matrix_basis, keygen, random_matrix_presentation, KeyPair, KeygenError, OrderData,
    PublicKey, SecretKey, Variant,
};
pub use cyclic::{
    build_division_algebra, cyclic_algebra, cyclic_field, gaussian_rationals_field, CyclicError,
    CyclicFieldData,
};
pub use linalg::{rat, rat_int, RatMatrix, Rational};
pub use poly::Polynomial;
pub use protocol::{
    extract_witness, p1_commit, p1_respond, p1_verify, p2_challenge, p2_commit, p2_respond,
    p2_verify, run_guessing_cheater, run_identification, run_p2_identification,
    simulate_transcript, ProtocolError, Round1State, Transcript1, Transcript2, SIMULATOR_CAP,
};
pub use session::{
    run_prover_session, run_verifier_session, SessionConfig, SessionFailure, SessionOutcome,
    WireProtocol, DEFAULT_FRAME_TIMEOUT, MAX_FRAME, WIRE_VERSION,
};
pub use signature::{
    derive_challenge, sign, verify_signature, Signature, SignatureError, CHALLENGE_HEIGHT, HASH_ID,
};
