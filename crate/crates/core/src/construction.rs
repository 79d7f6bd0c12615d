//! Key generation for the identification protocols.
//!
//! A key pair is a pair of structure-constant presentations `A0`, `A1` of the
//! same underlying algebra together with a secret isomorphism `φ: A0 → A1`.
//! Three variants differ in what the underlying algebra is and how the
//! public data is shaped:
//!
//! * **matrix** — both presentations are random bases of the `k×k` matrix
//!   algebra, sampled by drawing `k²` random integer matrices.
//! * **division** — the underlying algebra is a (with high probability)
//!   division algebra of degree `k` built from cyclic algebras, hiding even
//!   the existence of zero divisors.
//! * **order** — both γ-tensors are scaled to be integral and the secret
//!   isomorphism is constrained to have bounded integer entries, so the keys
//!   describe an isomorphism of orders rather than of rational algebras.
//!
//! Keys optionally carry a distinguished element of `A0` whose minimal
//! polynomial is the comparison target of the long-challenge protocol and
//! the signature scheme.

use crate::algebra::{
    change_basis, integral_scaling, random_presentation, verify_isomorphism, AlgElement, Algebra,
    AlgebraError, Isomorphism, RETRY_CAP,
};
use crate::cyclic::{build_division_algebra, CyclicError};
use crate::linalg::{rat_int, RatMatrix, Rational};
use crate::sampling;
use num::{BigInt, Signed, Zero};
use rand::{Rng, RngCore};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Which key-generation construction a key pair came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// Random presentations of the full matrix algebra M_k(ℚ).
    Matrix,
    /// Presentations of a high-probability division algebra of degree k.
    Division,
    /// Integral presentations related by a bounded integer isomorphism.
    Order,
}

impl Variant {
    /// All variants, in canonical order.
    pub const ALL: [Variant; 3] = [Variant::Matrix, Variant::Division, Variant::Order];

    /// The canonical lowercase name used in files and on the wire.
    pub fn name(self) -> &'static str {
        match self {
            Variant::Matrix => "matrix",
            Variant::Division => "division",
            Variant::Order => "order",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "matrix" => Ok(Variant::Matrix),
            "division" => Ok(Variant::Division),
            "order" => Ok(Variant::Order),
            other => Err(format!(
                "unknown variant {other:?}; expected matrix, division, or order"
            )),
        }
    }
}

/// Extra public data carried by order-variant keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderData {
    /// The factor the original γ-tensor was scaled by to clear denominators.
    pub scale: BigInt,
    /// The bound the secret isomorphism's integer entries satisfy.
    pub bound: u64,
}

/// The public half of a key pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublicKey {
    pub variant: Variant,
    pub k: u32,
    pub a0: Algebra,
    pub a1: Algebra,
    /// Distinguished element of `a0` for the long-challenge protocol and
    /// signatures; its minimal polynomial has full degree `k`.
    pub public_element: Option<AlgElement>,
    pub order_data: Option<OrderData>,
}

/// The secret half of a key pair: the isomorphism `φ: A0 → A1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecretKey {
    pub variant: Variant,
    pub k: u32,
    pub phi: Isomorphism,
}

/// A full key pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyPair {
    pub public: PublicKey,
    pub secret: SecretKey,
}

/// Errors from key generation.
#[derive(Debug, Error)]
pub enum KeygenError {
    /// The security parameter is degenerate (`k = 1` gives the algebra ℚ).
    #[error("security parameter k must be at least 2, got {0}")]
    BadK(u32),
    /// The sampling height must allow at least the entries ±1.
    #[error("sampling height must be at least 1")]
    BadHeight,
    /// The supplied matrices do not span (or exceed) the algebra.
    #[error("matrices do not form a basis of the matrix algebra")]
    DependentBasis,
    /// A rejection-sampling loop exceeded its retry cap.
    #[error("retry cap exhausted while {0}")]
    RetryExhausted(&'static str),
    /// Key data failed validation.
    #[error("invalid key data: {0}")]
    InvalidKey(String),
    /// An underlying cyclic-algebra construction failed.
    #[error(transparent)]
    Cyclic(#[from] CyclicError),
    /// An underlying algebra construction failed.
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Computes the structure constants of the algebra spanned by `k²` given
/// `k×k` matrices, by expressing every pairwise product in that basis.
///
/// Errors with [`KeygenError::DependentBasis`] if the matrices are linearly
/// dependent. Zero divisors among the basis elements are permitted here;
/// the sampling loop in [`random_matrix_presentation`] filters them out, but
/// canonical bases such as the matrix units are valid inputs.
pub fn algebra_from_matrix_basis(k: u32, basis: &[RatMatrix]) -> Result<Algebra, KeygenError> {
    let ku = k as usize;
    let m = ku * ku;
    if basis.len() != m || basis.iter().any(|b| b.rows() != ku || b.cols() != ku) {
        return Err(KeygenError::DependentBasis);
    }

    // Column i of `stacked` is the vectorization of basis matrix i; solving
    // against all pairwise products expresses them in the basis.
    let stacked = RatMatrix::from_fn(m, m, |r, c| basis[c].at(r / ku, r % ku).clone());
    let products = RatMatrix::from_fn(m, m * m, |r, c| {
        let (i, j) = (c / m, c % m);
        let (row, col) = (r / ku, r % ku);
        let mut sum = Rational::zero();
        for t in 0..ku {
            sum += basis[i].at(row, t) * basis[j].at(t, col);
        }
        sum
    });
    if stacked.rank() < m {
        return Err(KeygenError::DependentBasis);
    }
    let solved = stacked
        .solve_many(&products)
        .expect("full-rank square systems are always consistent");

    let mut gamma = vec![Rational::zero(); m * m * m];
    for i in 0..m {
        for j in 0..m {
            for t in 0..m {
                gamma[(i * m + j) * m + t] = solved.at(t, i * m + j).clone();
            }
        }
    }
    Ok(Algebra::new(m, gamma)?)
}

/// Samples a random structure-constant presentation of the `k×k` matrix
/// algebra: draws `k²` integer matrices with entries in `[-height, height]`
/// until each is invertible (no basis element is a zero divisor) and the set
/// is linearly independent, then expresses all pairwise products in the
/// sampled basis.
///
/// Returns the validated algebra together with the model basis. The model
/// basis is an explicit isomorphism to the matrix algebra — the exact datum
/// the protocols treat as hard to recover — so callers must treat it as
/// secret-equivalent; key generation discards it.
pub fn random_matrix_presentation<R: RngCore + ?Sized>(
    k: u32,
    height: u32,
    rng: &mut R,
) -> Result<(Algebra, Vec<RatMatrix>), KeygenError> {
    if k < 2 {
        return Err(KeygenError::BadK(k));
    }
    if height == 0 {
        return Err(KeygenError::BadHeight);
    }
    let ku = k as usize;
    let m = ku * ku;

    for _ in 0..RETRY_CAP {
        let mut basis = Vec::with_capacity(m);
        for _ in 0..m {
            let mut attempts = 0;
            let matrix = loop {
                let candidate =
                    RatMatrix::from_fn(ku, ku, |_, _| rat_int(sampling::uniform_int(rng, height)));
                if !candidate.determinant().is_zero() {
                    break candidate;
                }
                attempts += 1;
                if attempts > RETRY_CAP {
                    return Err(KeygenError::RetryExhausted(
                        "sampling an invertible basis matrix",
                    ));
                }
            };
            basis.push(matrix);
        }
        match algebra_from_matrix_basis(k, &basis) {
            Ok(algebra) => return Ok((algebra, basis)),
            Err(KeygenError::DependentBasis) => continue,
            Err(other) => return Err(other),
        }
    }
    Err(KeygenError::RetryExhausted(
        "sampling an independent matrix basis",
    ))
}

/// Samples an integer matrix with determinant ±1 and entries bounded by
/// `bound`, as a product of elementary row operations (swaps, sign flips,
/// and small shears). Retries until the bound is met.
fn random_bounded_unimodular<R: RngCore + ?Sized>(
    dim: usize,
    bound: u64,
    rng: &mut R,
) -> Result<RatMatrix, KeygenError> {
    if bound < 1 {
        return Err(KeygenError::InvalidKey(
            "entry bound must be at least 1".into(),
        ));
    }
    let limit = BigInt::from(bound);
    'outer: for _ in 0..RETRY_CAP {
        let mut m = RatMatrix::identity(dim);
        for _ in 0..2 * dim {
            let i = rng.gen_range(0..dim);
            let mut j = rng.gen_range(0..dim - 1);
            if j >= i {
                j += 1;
            }
            match rng.gen_range(0..4u8) {
                0 => {
                    for c in 0..dim {
                        let tmp = m.at(i, c).clone();
                        m.set(i, c, m.at(j, c).clone());
                        m.set(j, c, tmp);
                    }
                }
                1 => {
                    for c in 0..dim {
                        let negated = -m.at(i, c).clone();
                        m.set(i, c, negated);
                    }
                }
                _ => {
                    let shear = rat_int([1, -1, 2, -2][rng.gen_range(0..4)]);
                    for c in 0..dim {
                        let bumped = m.at(i, c).clone() + &shear * m.at(j, c);
                        m.set(i, c, bumped);
                    }
                }
            }
        }
        for entry in m.entries() {
            if entry.numer().abs() > limit {
                continue 'outer;
            }
        }
        return Ok(m);
    }
    Err(KeygenError::RetryExhausted(
        "sampling a bounded unimodular matrix",
    ))
}

/// Samples an element of `a` whose minimal polynomial has full degree `k`.
fn sample_full_degree_element<R: RngCore + ?Sized>(
    a: &Algebra,
    k: u32,
    height: u32,
    rng: &mut R,
) -> Result<AlgElement, KeygenError> {
    for _ in 0..=RETRY_CAP {
        let x = a.random_element(height, rng);
        if a.minimal_polynomial(&x).degree() == k as usize {
            return Ok(x);
        }
    }
    Err(KeygenError::RetryExhausted(
        "sampling an element of full degree",
    ))
}

fn gamma_is_integral(a: &Algebra) -> bool {
    a.gamma().iter().all(|c| c.is_integer())
}

/// Generates a key pair.
///
/// `height` bounds the random integers used throughout sampling. `bound`
/// applies only to the order variant: it caps the absolute value of the
/// secret isomorphism's integer entries (and is recorded in the public
/// [`OrderData`]); the other variants ignore it.
pub fn keygen<R: RngCore + ?Sized>(
    variant: Variant,
    k: u32,
    height: u32,
    bound: u64,
    rng: &mut R,
) -> Result<KeyPair, KeygenError> {
    if k < 2 {
        return Err(KeygenError::BadK(k));
    }
    if height == 0 {
        return Err(KeygenError::BadHeight);
    }

    let (a0, a1, phi, order_data) = match variant {
        Variant::Matrix => {
            let (a0, _model) = random_matrix_presentation(k, height, rng)?;
            let (a1, phi) = random_presentation(&a0, height, rng)?;
            (a0, a1, phi, None)
        }
        Variant::Division => {
            let underlying = build_division_algebra(k, rng)?;
            let (a0, _) = random_presentation(&underlying, height, rng)?;
            let (a1, phi) = random_presentation(&a0, height, rng)?;
            (a0, a1, phi, None)
        }
        Variant::Order => {
            let (raw, _model) = random_matrix_presentation(k, height, rng)?;
            let (a0, scale) = integral_scaling(&raw)?;
            // The secret matrix is drawn directly as a bounded unimodular
            // matrix; its inverse is the (integer) basis change producing
            // A1, so both γ-tensors stay integral.
            let secret = random_bounded_unimodular(a0.dim(), bound, rng)?;
            let basis_change = secret
                .inverse()
                .expect("unimodular matrices are invertible");
            let (a1, phi) = change_basis(&a0, &basis_change)?;
            debug_assert_eq!(phi.matrix(), &secret);
            (a0, a1, phi, Some(OrderData { scale, bound }))
        }
    };

    let public_element = Some(sample_full_degree_element(&a0, k, height, rng)?);

    let pair = KeyPair {
        public: PublicKey {
            variant,
            k,
            a0,
            a1,
            public_element,
            order_data,
        },
        secret: SecretKey { variant, k, phi },
    };
    pair.validate()?;
    Ok(pair)
}

impl PublicKey {
    /// Checks the internal consistency of public key data (dimensions,
    /// variant-specific integrality). Algebra validity is already guaranteed
    /// by the [`Algebra`] type itself.
    pub fn validate(&self) -> Result<(), KeygenError> {
        if self.k < 2 {
            return Err(KeygenError::BadK(self.k));
        }
        let m = (self.k as usize) * (self.k as usize);
        if self.a0.dim() != m || self.a1.dim() != m {
            return Err(KeygenError::InvalidKey(format!(
                "expected dimension {m}, got {} and {}",
                self.a0.dim(),
                self.a1.dim()
            )));
        }
        if let Some(a) = &self.public_element {
            if a.dim() != m {
                return Err(KeygenError::InvalidKey(
                    "public element dimension mismatch".into(),
                ));
            }
        }
        match (self.variant, &self.order_data) {
            (Variant::Order, Some(data)) => {
                if data.scale.is_zero() {
                    return Err(KeygenError::InvalidKey("zero scale factor".into()));
                }
                if !gamma_is_integral(&self.a0) || !gamma_is_integral(&self.a1) {
                    return Err(KeygenError::InvalidKey(
                        "order-variant structure constants must be integral".into(),
                    ));
                }
            }
            (Variant::Order, None) => {
                return Err(KeygenError::InvalidKey(
                    "order-variant key lacks its scaling data".into(),
                ));
            }
            (_, Some(_)) => {
                return Err(KeygenError::InvalidKey(
                    "unexpected order data on a non-order key".into(),
                ));
            }
            (_, None) => {}
        }
        Ok(())
    }
}

impl KeyPair {
    /// Checks the full key-pair invariant: consistent halves, a verified
    /// secret isomorphism `A0 → A1`, and variant-specific constraints (for
    /// the order variant, integrality and the entry bound on the secret).
    pub fn validate(&self) -> Result<(), KeygenError> {
        self.public.validate()?;
        if self.secret.variant != self.public.variant || self.secret.k != self.public.k {
            return Err(KeygenError::InvalidKey(
                "secret and public halves disagree on variant or k".into(),
            ));
        }
        if !verify_isomorphism(&self.public.a0, &self.public.a1, &self.secret.phi) {
            return Err(KeygenError::InvalidKey(
                "secret is not an isomorphism from A0 to A1".into(),
            ));
        }
        if let Some(data) = &self.public.order_data {
            let limit = BigInt::from(data.bound);
            for entry in self.secret.phi.matrix().entries() {
                if !entry.is_integer() || entry.numer().abs() > limit {
                    return Err(KeygenError::InvalidKey(
                        "order-variant secret entries must be integers within the bound".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}
