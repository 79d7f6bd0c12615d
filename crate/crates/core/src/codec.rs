//! Canonical text encoding of protocol values.
//!
//! Every value has exactly one encoding: JSON documents with a fixed key
//! order, no insignificant whitespace, and rationals rendered as reduced
//! base-10 `"num/den"` strings with the sign on the numerator (`"1/2"`,
//! `"-3/1"`, `"0/1"`). Decoding is strict — unreduced fractions, leading
//! zeros, reordered keys, duplicate keys, stray whitespace, or unknown
//! fields are rejected, and decoded algebras and isomorphisms pass full
//! structural validation. This makes the encoding injective in both
//! directions: equal values produce identical bytes, which is what lets the
//! byte stream feed a challenge-derivation hash.
//!
//! Structure-constant tensors come in two interchangeable forms: a dense
//! `"gamma"` array of `dim³` entries, and, profitable when at least ⅔ of
//! the entries vanish, a sparse `"gamma_sparse"` array of `[i, j, k, value]`
//! quadruples sorted by index. [`encode_algebra`] picks the form
//! automatically; both decode to the same value, each canonical within its
//! own form. Hash inputs always use the dense form regardless of size.

use crate::algebra::{AlgElement, Algebra, Isomorphism};
use crate::construction::{OrderData, PublicKey, SecretKey, Variant};
use crate::linalg::{RatMatrix, Rational};
use crate::protocol::{Transcript1, Transcript2};
use crate::signature::Signature;
use num::{BigInt, One, Zero};
use serde::{Deserialize, Serialize};
use std::str::FromStr;
use thiserror::Error;

/// Largest accepted algebra dimension on any decode path; bounds adversarial
/// resource use (a dense tensor is `dim³` rationals).
pub const MAX_DIM: usize = 64;

/// Errors from strict decoding, each reported with positional context:
/// syntax errors carry serde's line/column, semantic errors the offending
/// field or index.
#[derive(Debug, Error)]
pub enum DecodeError {
    /// The bytes are not well-formed JSON of the expected shape.
    #[error("syntax error: {0}")]
    Syntax(String),
    /// Well-formed but not the canonical encoding of any value.
    #[error("non-canonical encoding at {context}: {reason}")]
    NotCanonical { context: String, reason: String },
    /// Structurally well-formed but dimensionally inconsistent or oversized.
    #[error("dimension error: {0}")]
    Dimension(String),
    /// Decoded cleanly but failed semantic validation.
    #[error("validation failed: {0}")]
    Validation(String),
}

impl DecodeError {
    fn not_canonical(context: impl Into<String>, reason: impl Into<String>) -> Self {
        DecodeError::NotCanonical {
            context: context.into(),
            reason: reason.into(),
        }
    }
}

fn syntax(err: serde_json::Error) -> DecodeError {
    DecodeError::Syntax(err.to_string())
}

/// Final gate of every decode: the value must re-encode to the exact input
/// bytes, which catches whitespace, key order, duplicate keys, and any
/// non-canonical value spelling the field parsers missed.
fn gate(original: &str, reencoded: &str, what: &str) -> Result<(), DecodeError> {
    if original == reencoded {
        Ok(())
    } else {
        Err(DecodeError::not_canonical(
            what,
            "re-encoding differs from the input bytes",
        ))
    }
}

// ---------------------------------------------------------------------------
// Rationals and integers as canonical strings.

fn is_canonical_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) && (s.len() == 1 || !s.starts_with('0'))
}

fn parse_canonical_int(s: &str, context: &str) -> Result<BigInt, DecodeError> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if !is_canonical_digits(digits) || (s.starts_with('-') && digits == "0") {
        return Err(DecodeError::not_canonical(
            context,
            format!("{s:?} is not a canonical integer"),
        ));
    }
    BigInt::from_str(s).map_err(|e| DecodeError::not_canonical(context, e.to_string()))
}

/// Encodes a rational as `"num/den"`, reduced, denominator positive, sign on
/// the numerator.
pub fn encode_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn parse_rational(s: &str, context: &str) -> Result<Rational, DecodeError> {
    let Some((num, den)) = s.split_once('/') else {
        return Err(DecodeError::not_canonical(
            context,
            format!("{s:?} lacks the /denominator part"),
        ));
    };
    let numer = parse_canonical_int(num, context)?;
    if !is_canonical_digits(den) || den == "0" {
        return Err(DecodeError::not_canonical(
            context,
            format!("denominator {den:?} is not a canonical positive integer"),
        ));
    }
    let denom = BigInt::from_str(den).expect("digit strings parse");
    if numer.is_zero() && !denom.is_one() {
        return Err(DecodeError::not_canonical(
            context,
            "zero must be written 0/1",
        ));
    }
    let value = Rational::new(numer, denom);
    if encode_rational(&value) != s {
        return Err(DecodeError::not_canonical(
            context,
            format!("{s:?} is not reduced"),
        ));
    }
    Ok(value)
}

/// Strictly decodes a canonical `"num/den"` rational.
pub fn decode_rational(text: &str) -> Result<Rational, DecodeError> {
    parse_rational(text, "rational")
}

fn encode_rational_slice(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(encode_rational).collect()
}

fn parse_rational_slice(xs: &[String], context: &str) -> Result<Vec<Rational>, DecodeError> {
    xs.iter()
        .enumerate()
        .map(|(i, s)| parse_rational(s, &format!("{context}[{i}]")))
        .collect()
}

// ---------------------------------------------------------------------------
// Mirror documents (serde shapes with pinned key order).

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDoc {
    rows: usize,
    cols: usize,
    entries: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementDoc {
    coords: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma_sparse: Option<Vec<(usize, usize, usize, String)>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IsoDoc {
    matrix: MatrixDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OrderDoc {
    scale: String,
    bound: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PublicDoc {
    version: u32,
    kind: String,
    variant: String,
    k: u32,
    a0: AlgebraDoc,
    a1: AlgebraDoc,
    public_element: Option<ElementDoc>,
    order_data: Option<OrderDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SecretDoc {
    version: u32,
    kind: String,
    variant: String,
    k: u32,
    phi: IsoDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SignatureDoc {
    version: u32,
    kind: String,
    hash: String,
    commitment: AlgebraDoc,
    response: ElementDoc,
    seed: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Transcript1Doc {
    kind: String,
    commitment: AlgebraDoc,
    challenge: u8,
    response: IsoDoc,
    accepted: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Transcript2Doc {
    kind: String,
    commitment: AlgebraDoc,
    challenge_algebra: AlgebraDoc,
    challenge_iso: IsoDoc,
    response: ElementDoc,
    accepted: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct P2ChallengeDoc {
    algebra: AlgebraDoc,
    iso: IsoDoc,
}

const FORMAT_VERSION: u32 = 1;

fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string(doc).expect("document serialization cannot fail")
}

// ---------------------------------------------------------------------------
// Matrices, elements, isomorphisms.

fn matrix_doc(m: &RatMatrix) -> MatrixDoc {
    MatrixDoc {
        rows: m.rows(),
        cols: m.cols(),
        entries: encode_rational_slice(m.entries()),
    }
}

fn matrix_from_doc(doc: &MatrixDoc, context: &str) -> Result<RatMatrix, DecodeError> {
    if doc.rows == 0 || doc.cols == 0 || doc.rows > MAX_DIM || doc.cols > MAX_DIM {
        return Err(DecodeError::Dimension(format!(
            "{context}: {}x{} is outside the supported range",
            doc.rows, doc.cols
        )));
    }
    if doc.entries.len() != doc.rows * doc.cols {
        return Err(DecodeError::Dimension(format!(
            "{context}: expected {} entries, got {}",
            doc.rows * doc.cols,
            doc.entries.len()
        )));
    }
    let entries = parse_rational_slice(&doc.entries, &format!("{context}.entries"))?;
    Ok(RatMatrix::new(doc.rows, doc.cols, entries))
}

/// Encodes a rational matrix.
pub fn encode_matrix(m: &RatMatrix) -> String {
    to_json(&matrix_doc(m))
}

/// Strictly decodes a rational matrix.
pub fn decode_matrix(text: &str) -> Result<RatMatrix, DecodeError> {
    let doc: MatrixDoc = serde_json::from_str(text).map_err(syntax)?;
    let matrix = matrix_from_doc(&doc, "matrix")?;
    gate(text, &encode_matrix(&matrix), "matrix")?;
    Ok(matrix)
}

fn element_doc(x: &AlgElement) -> ElementDoc {
    ElementDoc {
        coords: encode_rational_slice(x.coords()),
    }
}

fn element_from_doc(doc: &ElementDoc, context: &str) -> Result<AlgElement, DecodeError> {
    if doc.coords.is_empty() || doc.coords.len() > MAX_DIM * MAX_DIM {
        return Err(DecodeError::Dimension(format!(
            "{context}: {} coordinates is outside the supported range",
            doc.coords.len()
        )));
    }
    Ok(AlgElement::new(parse_rational_slice(
        &doc.coords,
        &format!("{context}.coords"),
    )?))
}

/// Encodes an algebra element.
pub fn encode_element(x: &AlgElement) -> String {
    to_json(&element_doc(x))
}

/// Strictly decodes an algebra element.
pub fn decode_element(text: &str) -> Result<AlgElement, DecodeError> {
    let doc: ElementDoc = serde_json::from_str(text).map_err(syntax)?;
    let element = element_from_doc(&doc, "element")?;
    gate(text, &encode_element(&element), "element")?;
    Ok(element)
}

fn iso_doc(f: &Isomorphism) -> IsoDoc {
    IsoDoc {
        matrix: matrix_doc(f.matrix()),
    }
}

fn iso_from_doc(doc: &IsoDoc, context: &str) -> Result<Isomorphism, DecodeError> {
    let matrix = matrix_from_doc(&doc.matrix, &format!("{context}.matrix"))?;
    Isomorphism::new(matrix).map_err(|e| DecodeError::Validation(format!("{context}: {e}")))
}

/// Encodes an invertible linear map.
pub fn encode_isomorphism(f: &Isomorphism) -> String {
    to_json(&iso_doc(f))
}

/// Strictly decodes an invertible linear map (square and nonsingular).
pub fn decode_isomorphism(text: &str) -> Result<Isomorphism, DecodeError> {
    let doc: IsoDoc = serde_json::from_str(text).map_err(syntax)?;
    let iso = iso_from_doc(&doc, "isomorphism")?;
    gate(text, &encode_isomorphism(&iso), "isomorphism")?;
    Ok(iso)
}

// ---------------------------------------------------------------------------
// Algebras: dense and sparse tensor forms.

fn sparse_is_profitable(gamma: &[Rational]) -> bool {
    let zeros = gamma.iter().filter(|c| c.is_zero()).count();
    3 * zeros >= 2 * gamma.len()
}

fn algebra_doc(a: &Algebra, force_dense: bool) -> AlgebraDoc {
    let m = a.dim();
    if !force_dense && sparse_is_profitable(a.gamma()) {
        let mut sparse = Vec::new();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let c = a.gamma_at(i, j, k);
                    if !c.is_zero() {
                        sparse.push((i, j, k, encode_rational(c)));
                    }
                }
            }
        }
        AlgebraDoc {
            dim: m,
            gamma: None,
            gamma_sparse: Some(sparse),
        }
    } else {
        AlgebraDoc {
            dim: m,
            gamma: Some(encode_rational_slice(a.gamma())),
            gamma_sparse: None,
        }
    }
}

/// Decodes an [`AlgebraDoc`], returning the validated algebra and whether
/// the input used the sparse form (so the caller can re-encode in kind).
fn algebra_from_doc(doc: &AlgebraDoc, context: &str) -> Result<(Algebra, bool), DecodeError> {
    if doc.dim == 0 || doc.dim > MAX_DIM {
        return Err(DecodeError::Dimension(format!(
            "{context}: dimension {} is outside the supported range 1..={MAX_DIM}",
            doc.dim
        )));
    }
    let m = doc.dim;
    let (gamma, sparse) = match (&doc.gamma, &doc.gamma_sparse) {
        (Some(dense), None) => {
            if dense.len() != m * m * m {
                return Err(DecodeError::Dimension(format!(
                    "{context}: expected {} structure constants, got {}",
                    m * m * m,
                    dense.len()
                )));
            }
            (
                parse_rational_slice(dense, &format!("{context}.gamma"))?,
                false,
            )
        }
        (None, Some(entries)) => {
            let mut gamma = vec![Rational::zero(); m * m * m];
            let mut previous: Option<(usize, usize, usize)> = None;
            for (n, (i, j, k, text)) in entries.iter().enumerate() {
                let at = format!("{context}.gamma_sparse[{n}]");
                if *i >= m || *j >= m || *k >= m {
                    return Err(DecodeError::Dimension(format!(
                        "{at}: index ({i},{j},{k}) out of range for dimension {m}"
                    )));
                }
                if previous.is_some_and(|p| p >= (*i, *j, *k)) {
                    return Err(DecodeError::not_canonical(
                        at,
                        "sparse entries must be strictly sorted by index",
                    ));
                }
                previous = Some((*i, *j, *k));
                let value = parse_rational(text, &at)?;
                if value.is_zero() {
                    return Err(DecodeError::not_canonical(
                        at,
                        "sparse entries must be nonzero",
                    ));
                }
                gamma[(i * m + j) * m + k] = value;
            }
            (gamma, true)
        }
        _ => {
            return Err(DecodeError::not_canonical(
                context,
                "exactly one of gamma and gamma_sparse must be present",
            ));
        }
    };
    let algebra =
        Algebra::new(m, gamma).map_err(|e| DecodeError::Validation(format!("{context}: {e}")))?;
    Ok((algebra, sparse))
}

fn algebra_doc_in_kind(a: &Algebra, sparse: bool) -> AlgebraDoc {
    if sparse {
        // Rebuild the sparse form regardless of profitability.
        let mut doc = algebra_doc(a, false);
        if doc.gamma_sparse.is_none() {
            let m = a.dim();
            let mut entries = Vec::new();
            for i in 0..m {
                for j in 0..m {
                    for k in 0..m {
                        let c = a.gamma_at(i, j, k);
                        if !c.is_zero() {
                            entries.push((i, j, k, encode_rational(c)));
                        }
                    }
                }
            }
            doc = AlgebraDoc {
                dim: m,
                gamma: None,
                gamma_sparse: Some(entries),
            };
        }
        doc
    } else {
        algebra_doc(a, true)
    }
}

/// Encodes an algebra, choosing the sparse tensor form automatically when at
/// least two thirds of the structure constants vanish.
pub fn encode_algebra(a: &Algebra) -> String {
    to_json(&algebra_doc(a, false))
}

/// Strictly decodes and fully validates an algebra (shape, associativity,
/// identity). Both tensor forms are accepted; each must be canonical within
/// its form.
pub fn decode_algebra(text: &str) -> Result<Algebra, DecodeError> {
    let doc: AlgebraDoc = serde_json::from_str(text).map_err(syntax)?;
    let (algebra, sparse) = algebra_from_doc(&doc, "algebra")?;
    gate(
        text,
        &to_json(&algebra_doc_in_kind(&algebra, sparse)),
        "algebra",
    )?;
    Ok(algebra)
}

// ---------------------------------------------------------------------------
// Keys.

fn public_doc(pk: &PublicKey) -> PublicDoc {
    PublicDoc {
        version: FORMAT_VERSION,
        kind: "public".into(),
        variant: pk.variant.name().into(),
        k: pk.k,
        a0: algebra_doc(&pk.a0, false),
        a1: algebra_doc(&pk.a1, false),
        public_element: pk.public_element.as_ref().map(element_doc),
        order_data: pk.order_data.as_ref().map(|d| OrderDoc {
            scale: d.scale.to_string(),
            bound: d.bound,
        }),
    }
}

fn check_header(version: u32, kind: &str, expected: &str) -> Result<(), DecodeError> {
    if version != FORMAT_VERSION {
        return Err(DecodeError::Validation(format!(
            "unsupported format version {version}"
        )));
    }
    if kind != expected {
        return Err(DecodeError::Validation(format!(
            "expected a {expected:?} document, got {kind:?}"
        )));
    }
    Ok(())
}

/// Encodes the public half of a key pair (`public.cskey` contents).
pub fn encode_public_key(pk: &PublicKey) -> String {
    to_json(&public_doc(pk))
}

/// Strictly decodes and validates a public key.
pub fn decode_public_key(text: &str) -> Result<PublicKey, DecodeError> {
    let doc: PublicDoc = serde_json::from_str(text).map_err(syntax)?;
    check_header(doc.version, &doc.kind, "public")?;
    let variant = Variant::from_str(&doc.variant)
        .map_err(|e| DecodeError::Validation(format!("variant: {e}")))?;
    let (a0, a0_sparse) = algebra_from_doc(&doc.a0, "a0")?;
    let (a1, a1_sparse) = algebra_from_doc(&doc.a1, "a1")?;
    let public_element = doc
        .public_element
        .as_ref()
        .map(|e| element_from_doc(e, "public_element"))
        .transpose()?;
    let order_data = doc
        .order_data
        .as_ref()
        .map(|d| -> Result<OrderData, DecodeError> {
            Ok(OrderData {
                scale: parse_canonical_int(&d.scale, "order_data.scale")?,
                bound: d.bound,
            })
        })
        .transpose()?;
    let pk = PublicKey {
        variant,
        k: doc.k,
        a0,
        a1,
        public_element,
        order_data,
    };
    pk.validate()
        .map_err(|e| DecodeError::Validation(e.to_string()))?;

    let mut reencoded = public_doc(&pk);
    reencoded.a0 = algebra_doc_in_kind(&pk.a0, a0_sparse);
    reencoded.a1 = algebra_doc_in_kind(&pk.a1, a1_sparse);
    gate(text, &to_json(&reencoded), "public key")?;
    Ok(pk)
}

/// Encodes the secret half of a key pair (`secret.cskey` contents).
pub fn encode_secret_key(sk: &SecretKey) -> String {
    to_json(&SecretDoc {
        version: FORMAT_VERSION,
        kind: "secret".into(),
        variant: sk.variant.name().into(),
        k: sk.k,
        phi: iso_doc(&sk.phi),
    })
}

/// Strictly decodes a secret key.
pub fn decode_secret_key(text: &str) -> Result<SecretKey, DecodeError> {
    let doc: SecretDoc = serde_json::from_str(text).map_err(syntax)?;
    check_header(doc.version, &doc.kind, "secret")?;
    let variant = Variant::from_str(&doc.variant)
        .map_err(|e| DecodeError::Validation(format!("variant: {e}")))?;
    let phi = iso_from_doc(&doc.phi, "phi")?;
    let sk = SecretKey {
        variant,
        k: doc.k,
        phi,
    };
    gate(text, &encode_secret_key(&sk), "secret key")?;
    Ok(sk)
}

// ---------------------------------------------------------------------------
// Signatures and transcripts.

fn is_lower_hex(s: &str) -> bool {
    s.bytes()
        .all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b))
}

/// Encodes a signature (`*.sig` contents).
pub fn encode_signature(sig: &Signature) -> String {
    to_json(&SignatureDoc {
        version: FORMAT_VERSION,
        kind: "signature".into(),
        hash: sig.hash.clone(),
        commitment: algebra_doc(&sig.commitment, false),
        response: element_doc(&sig.response),
        seed: hex::encode(sig.seed),
    })
}

/// Strictly decodes a signature.
pub fn decode_signature(text: &str) -> Result<Signature, DecodeError> {
    let doc: SignatureDoc = serde_json::from_str(text).map_err(syntax)?;
    check_header(doc.version, &doc.kind, "signature")?;
    if doc.seed.len() != 64 || !is_lower_hex(&doc.seed) {
        return Err(DecodeError::not_canonical(
            "seed",
            "expected 64 lowercase hex digits",
        ));
    }
    let mut seed = [0u8; 32];
    hex::decode_to_slice(&doc.seed, &mut seed)
        .map_err(|e| DecodeError::not_canonical("seed", e.to_string()))?;
    let (commitment, sparse) = algebra_from_doc(&doc.commitment, "commitment")?;
    let response = element_from_doc(&doc.response, "response")?;
    let sig = Signature {
        hash: doc.hash,
        commitment,
        response,
        seed,
    };
    let mut reencoded: SignatureDoc =
        serde_json::from_str(&encode_signature(&sig)).expect("own encoding parses");
    reencoded.commitment = algebra_doc_in_kind(&sig.commitment, sparse);
    gate(text, &to_json(&reencoded), "signature")?;
    Ok(sig)
}

/// Encodes a completed one-bit-protocol round.
pub fn encode_transcript1(t: &Transcript1) -> String {
    to_json(&Transcript1Doc {
        kind: "transcript1".into(),
        commitment: algebra_doc(&t.commitment, false),
        challenge: t.challenge as u8,
        response: iso_doc(&t.response),
        accepted: t.accepted,
    })
}

/// Strictly decodes a one-bit-protocol round.
pub fn decode_transcript1(text: &str) -> Result<Transcript1, DecodeError> {
    let doc: Transcript1Doc = serde_json::from_str(text).map_err(syntax)?;
    if doc.kind != "transcript1" {
        return Err(DecodeError::Validation(format!(
            "expected a transcript1 document, got {:?}",
            doc.kind
        )));
    }
    if doc.challenge > 1 {
        return Err(DecodeError::Validation("challenge must be 0 or 1".into()));
    }
    let (commitment, sparse) = algebra_from_doc(&doc.commitment, "commitment")?;
    let response = iso_from_doc(&doc.response, "response")?;
    let t = Transcript1 {
        commitment,
        challenge: doc.challenge == 1,
        response,
        accepted: doc.accepted,
    };
    let mut reencoded: Transcript1Doc =
        serde_json::from_str(&encode_transcript1(&t)).expect("own encoding parses");
    reencoded.commitment = algebra_doc_in_kind(&t.commitment, sparse);
    gate(text, &to_json(&reencoded), "transcript1")?;
    Ok(t)
}

/// Encodes a completed long-challenge round.
pub fn encode_transcript2(t: &Transcript2) -> String {
    to_json(&Transcript2Doc {
        kind: "transcript2".into(),
        commitment: algebra_doc(&t.commitment, false),
        challenge_algebra: algebra_doc(&t.challenge_algebra, false),
        challenge_iso: iso_doc(&t.challenge_iso),
        response: element_doc(&t.response),
        accepted: t.accepted,
    })
}

/// Strictly decodes a long-challenge round.
pub fn decode_transcript2(text: &str) -> Result<Transcript2, DecodeError> {
    let doc: Transcript2Doc = serde_json::from_str(text).map_err(syntax)?;
    if doc.kind != "transcript2" {
        return Err(DecodeError::Validation(format!(
            "expected a transcript2 document, got {:?}",
            doc.kind
        )));
    }
    let (commitment, b_sparse) = algebra_from_doc(&doc.commitment, "commitment")?;
    let (challenge_algebra, c_sparse) =
        algebra_from_doc(&doc.challenge_algebra, "challenge_algebra")?;
    let challenge_iso = iso_from_doc(&doc.challenge_iso, "challenge_iso")?;
    let response = element_from_doc(&doc.response, "response")?;
    let t = Transcript2 {
        commitment,
        challenge_algebra,
        challenge_iso,
        response,
        accepted: doc.accepted,
    };
    let mut reencoded: Transcript2Doc =
        serde_json::from_str(&encode_transcript2(&t)).expect("own encoding parses");
    reencoded.commitment = algebra_doc_in_kind(&t.commitment, b_sparse);
    reencoded.challenge_algebra = algebra_doc_in_kind(&t.challenge_algebra, c_sparse);
    gate(text, &to_json(&reencoded), "transcript2")?;
    Ok(t)
}

// ---------------------------------------------------------------------------
// Long-challenge wire payload.

/// Encodes the verifier's long-challenge move: the re-presented algebra and
/// the basis change onto it.
pub fn encode_p2_challenge(algebra: &Algebra, iso: &Isomorphism) -> String {
    to_json(&P2ChallengeDoc {
        algebra: algebra_doc(algebra, false),
        iso: iso_doc(iso),
    })
}

/// Strictly decodes the verifier's long-challenge move.
pub fn decode_p2_challenge(text: &str) -> Result<(Algebra, Isomorphism), DecodeError> {
    let doc: P2ChallengeDoc = serde_json::from_str(text).map_err(syntax)?;
    let (algebra, sparse) = algebra_from_doc(&doc.algebra, "algebra")?;
    let iso = iso_from_doc(&doc.iso, "iso")?;
    let reencoded = P2ChallengeDoc {
        algebra: algebra_doc_in_kind(&algebra, sparse),
        iso: iso_doc(&iso),
    };
    gate(text, &to_json(&reencoded), "challenge")?;
    Ok((algebra, iso))
}

// ---------------------------------------------------------------------------
// Hash inputs: always the dense tensor form.

/// Canonical bytes of an algebra for hashing: the dense form, regardless of
/// sparsity.
pub fn hash_bytes_algebra(a: &Algebra) -> Vec<u8> {
    to_json(&algebra_doc(a, true)).into_bytes()
}

/// Canonical bytes of a public key for hashing: dense tensor forms
/// throughout.
pub fn hash_bytes_public_key(pk: &PublicKey) -> Vec<u8> {
    let mut doc = public_doc(pk);
    doc.a0 = algebra_doc(&pk.a0, true);
    doc.a1 = algebra_doc(&pk.a1, true);
    to_json(&doc).into_bytes()
}
