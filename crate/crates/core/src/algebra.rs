//! Finite-dimensional associative algebras over Q given by structure
//! constants.
//!
//! An algebra of dimension `m` is described by a rational tensor
//! `gamma[i][j][k]` through `b_i * b_j = sum_k gamma[i][j][k] b_k`. Every
//! construction path funnels through [`Algebra::new`], which checks the
//! associativity identity `sum_s gamma[i][j][s] gamma[s][k][l] =
//! sum_s gamma[j][k][s] gamma[i][s][l]` for all index quadruples (exact, no
//! sampling) and solves for a two-sided identity element. Downstream code can
//! therefore treat every `Algebra` value as a genuine unital associative
//! algebra, which is what makes the protocol verifiers total: adversarial
//! tensors are stopped at construction/decoding time.
//!
//! Isomorphisms between two presentations are invertible rational matrices
//! acting on coordinates; [`verify_isomorphism`] is the exact acceptance
//! predicate used by both protocols (identity preserved, multiplicative on
//! all basis pairs).

use num::bigint::BigInt;
use num::integer::Integer;
use num::traits::{One, Zero};
use rand::RngCore;
use thiserror::Error;

use crate::linalg::{scale_all_to_int, RatMatrix, Rational};
use crate::poly::Polynomial;
use crate::sampling::uniform_int;

/// Cap on resampling loops (random invertible matrices and elements).
pub const RETRY_CAP: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("structure constant tensor has length {got}, expected dim^3 = {expected}")]
    GammaShape { expected: usize, got: usize },
    #[error("algebra dimension must be positive")]
    ZeroDim,
    #[error("associativity fails at basis quadruple (i={i}, j={j}, k={k}, l={l})")]
    NotAssociative {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
    },
    #[error("structure constants admit no two-sided identity")]
    NoIdentity,
    #[error("basis-change matrix is singular")]
    SingularBasisChange,
    #[error("matrix of an isomorphism must be square and invertible")]
    NotInvertible,
    #[error("retry budget exhausted while sampling {what}")]
    RetryExhausted { what: &'static str },
}

/// Element of an algebra, stored as coordinates over the algebra's basis.
/// Elements do not carry a reference to their algebra; operations take the
/// owning [`Algebra`] explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgElement {
    coords: Vec<Rational>,
}

impl AlgElement {
    pub fn new(coords: Vec<Rational>) -> Self {
        assert!(!coords.is_empty(), "element must have positive dimension");
        AlgElement { coords }
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        AlgElement::new(coords.iter().map(|&c| crate::linalg::rat_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &AlgElement) -> AlgElement {
        assert_eq!(self.dim(), other.dim(), "element dimension mismatch");
        AlgElement::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &AlgElement) -> AlgElement {
        assert_eq!(self.dim(), other.dim(), "element dimension mismatch");
        AlgElement::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> AlgElement {
        AlgElement::new(self.coords.iter().map(|a| a * c).collect())
    }
}

/// Unital associative algebra over Q in structure-constant presentation.
///
/// Invariants enforced at construction: `gamma.len() == dim^3`, associativity
/// holds exactly, and a (necessarily unique) two-sided identity exists; its
/// coordinates are cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    gamma: Vec<Rational>,
    identity: Vec<Rational>,
}

impl Algebra {
    /// Validates structure constants and computes the identity element.
    ///
    /// The associativity check is exact and exhaustive over all `dim^4`
    /// quadruples; the first violation is reported by index. The identity is
    /// found by solving the linear system `e * b_j = b_j`, `b_j * e = b_j`
    /// for all `j`; inconsistency means the tensor is not unital.
    pub fn new(dim: usize, gamma: Vec<Rational>) -> Result<Self, AlgebraError> {
        if dim == 0 {
            return Err(AlgebraError::ZeroDim);
        }
        let expected = dim * dim * dim;
        if gamma.len() != expected {
            return Err(AlgebraError::GammaShape {
                expected,
                got: gamma.len(),
            });
        }
        check_associativity(dim, &gamma)?;
        let identity = solve_identity(dim, &gamma)?;
        Ok(Algebra {
            dim,
            gamma,
            identity,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Structure constants in row-major `(i, j, k)` order.
    pub fn gamma(&self) -> &[Rational] {
        &self.gamma
    }

    pub fn gamma_at(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.gamma[(i * self.dim + j) * self.dim + k]
    }

    /// The coordinate vector of `b_i * b_j`.
    pub fn gamma_row(&self, i: usize, j: usize) -> &[Rational] {
        let base = (i * self.dim + j) * self.dim;
        &self.gamma[base..base + self.dim]
    }

    /// Coordinates of the two-sided identity.
    pub fn identity_coords(&self) -> &[Rational] {
        &self.identity
    }

    pub fn identity_element(&self) -> AlgElement {
        AlgElement::new(self.identity.clone())
    }

    /// The `i`-th basis vector as an element.
    pub fn basis_element(&self, i: usize) -> AlgElement {
        assert!(i < self.dim);
        let mut coords = vec![Rational::zero(); self.dim];
        coords[i] = Rational::one();
        AlgElement::new(coords)
    }

    /// The scalar `c` as the element `c * 1`.
    pub fn scalar_element(&self, c: &Rational) -> AlgElement {
        AlgElement::new(self.identity.iter().map(|e| e * c).collect())
    }

    /// Bilinear product through the structure constants.
    ///
    /// # Panics
    /// Panics if either element has the wrong dimension.
    pub fn multiply(&self, x: &AlgElement, y: &AlgElement) -> AlgElement {
        AlgElement::new(self.multiply_coords(x.coords(), y.coords()))
    }

    pub(crate) fn multiply_coords(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let m = self.dim;
        assert_eq!(x.len(), m, "element dimension mismatch");
        assert_eq!(y.len(), m, "element dimension mismatch");
        let mut out = vec![Rational::zero(); m];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, g) in self.gamma_row(i, j).iter().enumerate() {
                    if !g.is_zero() {
                        out[k] += &c * g;
                    }
                }
            }
        }
        out
    }

    /// Left-multiplication matrix `L_x` (column `j` holds the coordinates of
    /// `x * b_j`).
    pub fn regular_representation(&self, x: &AlgElement) -> RatMatrix {
        let m = self.dim;
        assert_eq!(x.dim(), m, "element dimension mismatch");
        let mut out = RatMatrix::zeros(m, m);
        for (i, xi) in x.coords().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..m {
                for (k, g) in self.gamma_row(i, j).iter().enumerate() {
                    if !g.is_zero() {
                        let cur = out.at(k, j) + xi * g;
                        out.set(k, j, cur);
                    }
                }
            }
        }
        out
    }

    /// Minimal polynomial of `x`: stacks the coordinate vectors of
    /// `1, x, x^2, ...` and stops at the first power that is a linear
    /// combination of the previous ones. The result is monic of degree >= 1
    /// and annihilates `x` exactly.
    pub fn minimal_polynomial(&self, x: &AlgElement) -> Polynomial {
        let m = self.dim;
        assert_eq!(x.dim(), m, "element dimension mismatch");
        // The power step u -> u*x runs on denominator-cleared integers (the
        // product is bilinear, hence homogeneous in each factor), with one
        // exact reduction per coordinate of the result.
        let (gi, dg) = scale_all_to_int(&self.gamma);
        let (xi, sx) = scale_all_to_int(x.coords());
        let step = |u: &[Rational]| -> Vec<Rational> {
            let (ui, su) = scale_all_to_int(u);
            let mut acc = vec![BigInt::zero(); m];
            for (i, uv) in ui.iter().enumerate() {
                if uv.is_zero() {
                    continue;
                }
                for (j, xv) in xi.iter().enumerate() {
                    if xv.is_zero() {
                        continue;
                    }
                    let w = uv * xv;
                    let row = &gi[(i * m + j) * m..(i * m + j) * m + m];
                    for (k, g) in row.iter().enumerate() {
                        if !g.is_zero() {
                            acc[k] += &w * g;
                        }
                    }
                }
            }
            let denom = &su * &sx * &dg;
            acc.into_iter()
                .map(|n| Rational::new(n, denom.clone()))
                .collect()
        };
        let mut powers: Vec<Vec<Rational>> = vec![self.identity.clone()];
        let mut last = self.identity.clone();
        loop {
            let next = step(&last);
            let d = powers.len();
            // Express `next` over the previous powers if possible.
            let basis = RatMatrix::from_fn(m, d, |r, c| powers[c][r].clone());
            if let Some(coeffs) = basis.solve(&next) {
                let mut poly = Vec::with_capacity(d + 1);
                for c in coeffs {
                    poly.push(-c);
                }
                poly.push(Rational::one());
                return Polynomial::new(poly);
            }
            powers.push(next.clone());
            last = next;
            assert!(
                powers.len() <= m + 1,
                "powers cannot stay independent beyond the algebra dimension"
            );
        }
    }

    /// Two-sided inverse of `x`, found by solving `L_x * y = 1` and
    /// verifying both products exactly. `None` when `x` is not invertible
    /// (zero divisors and 0 included).
    pub fn invert_element(&self, x: &AlgElement) -> Option<AlgElement> {
        let lx = self.regular_representation(x);
        let y = lx.solve(self.identity_coords())?;
        let y = AlgElement::new(y);
        let left = self.multiply(x, &y);
        let right = self.multiply(&y, x);
        if left.coords() == self.identity_coords() && right.coords() == self.identity_coords() {
            Some(y)
        } else {
            None
        }
    }

    /// Element with integer coordinates drawn uniformly from `[-height, height]`.
    pub fn random_element<R: RngCore + ?Sized>(&self, height: u32, rng: &mut R) -> AlgElement {
        AlgElement::new(
            (0..self.dim)
                .map(|_| Rational::from_integer(BigInt::from(uniform_int(rng, height))))
                .collect(),
        )
    }

    /// Random invertible element (resampled, cap [`RETRY_CAP`]).
    pub fn random_invertible_element<R: RngCore + ?Sized>(
        &self,
        height: u32,
        rng: &mut R,
    ) -> Result<AlgElement, AlgebraError> {
        for _ in 0..RETRY_CAP {
            let x = self.random_element(height, rng);
            if self.invert_element(&x).is_some() {
                return Ok(x);
            }
        }
        Err(AlgebraError::RetryExhausted {
            what: "an invertible element",
        })
    }

    /// Basis of the center `{ x : x y = y x for all y }`, computed as the
    /// kernel of the linear commutator system. A central simple algebra has
    /// center dimension exactly 1.
    pub fn center_basis(&self) -> Vec<AlgElement> {
        let m = self.dim;
        let mut rows = Vec::with_capacity(m * m);
        for j in 0..m {
            for k in 0..m {
                let mut row = Vec::with_capacity(m);
                for i in 0..m {
                    row.push(self.gamma_at(i, j, k) - self.gamma_at(j, i, k));
                }
                rows.push(row);
            }
        }
        let mat = RatMatrix::from_fn(m * m, m, |r, c| rows[r][c].clone());
        mat.kernel_basis()
            .into_iter()
            .map(AlgElement::new)
            .collect()
    }

    pub fn is_commutative(&self) -> bool {
        let m = self.dim;
        for i in 0..m {
            for j in 0..i {
                if self.gamma_row(i, j) != self.gamma_row(j, i) {
                    return false;
                }
            }
        }
        true
    }
}

/// Marker for the machine-integer fast paths: any intermediate overflow
/// aborts the fast path and the caller redoes the check in `BigInt`.
struct Overflow;

fn check_associativity(dim: usize, gamma: &[Rational]) -> Result<(), AlgebraError> {
    // The identity `sum_s g_ijs g_skl = sum_s g_jks g_isl` is homogeneous of
    // degree 2 in gamma, so it holds for gamma iff it holds for the
    // denominator-cleared integer tensor. Machine integers cover desk-scale
    // tensors; arbitrary precision is the overflow fallback.
    let (ints, _) = scale_all_to_int(gamma);
    let violation = match as_i128(&ints) {
        Some(small) => match assoc_violation_i128(dim, &small) {
            Ok(v) => v,
            Err(Overflow) => assoc_violation_big(dim, &ints),
        },
        None => assoc_violation_big(dim, &ints),
    };
    match violation {
        Some((i, j, k, l)) => Err(AlgebraError::NotAssociative { i, j, k, l }),
        None => Ok(()),
    }
}

fn as_i128(vals: &[BigInt]) -> Option<Vec<i128>> {
    vals.iter().map(|v| i128::try_from(v).ok()).collect()
}

fn assoc_violation_i128(
    m: usize,
    g: &[i128],
) -> Result<Option<(usize, usize, usize, usize)>, Overflow> {
    let row = |i: usize, j: usize| &g[(i * m + j) * m..(i * m + j) * m + m];
    let mut lhs = vec![0i128; m];
    let mut rhs = vec![0i128; m];
    for i in 0..m {
        for j in 0..m {
            let gij = row(i, j);
            for k in 0..m {
                lhs.fill(0);
                rhs.fill(0);
                for (s, &c) in gij.iter().enumerate() {
                    if c != 0 {
                        for (l, &v) in row(s, k).iter().enumerate() {
                            if v != 0 {
                                let p = c.checked_mul(v).ok_or(Overflow)?;
                                lhs[l] = lhs[l].checked_add(p).ok_or(Overflow)?;
                            }
                        }
                    }
                }
                let gjk = row(j, k);
                for (s, &c) in gjk.iter().enumerate() {
                    if c != 0 {
                        for (l, &v) in row(i, s).iter().enumerate() {
                            if v != 0 {
                                let p = c.checked_mul(v).ok_or(Overflow)?;
                                rhs[l] = rhs[l].checked_add(p).ok_or(Overflow)?;
                            }
                        }
                    }
                }
                for l in 0..m {
                    if lhs[l] != rhs[l] {
                        return Ok(Some((i, j, k, l)));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn assoc_violation_big(m: usize, g: &[BigInt]) -> Option<(usize, usize, usize, usize)> {
    let row = |i: usize, j: usize| &g[(i * m + j) * m..(i * m + j) * m + m];
    let mut lhs = vec![BigInt::zero(); m];
    let mut rhs = vec![BigInt::zero(); m];
    for i in 0..m {
        for j in 0..m {
            let gij = row(i, j);
            for k in 0..m {
                for v in lhs.iter_mut() {
                    v.set_zero();
                }
                for v in rhs.iter_mut() {
                    v.set_zero();
                }
                for (s, c) in gij.iter().enumerate() {
                    if !c.is_zero() {
                        for (l, g2) in row(s, k).iter().enumerate() {
                            if !g2.is_zero() {
                                lhs[l] += c * g2;
                            }
                        }
                    }
                }
                let gjk = row(j, k);
                for (s, c) in gjk.iter().enumerate() {
                    if !c.is_zero() {
                        for (l, g2) in row(i, s).iter().enumerate() {
                            if !g2.is_zero() {
                                rhs[l] += c * g2;
                            }
                        }
                    }
                }
                for l in 0..m {
                    if lhs[l] != rhs[l] {
                        return Some((i, j, k, l));
                    }
                }
            }
        }
    }
    None
}

/// Solves the two-sided identity system. Any solution of the full system is a
/// genuine identity, and identities are unique, so consistency is all that
/// needs checking.
fn solve_identity(dim: usize, gamma: &[Rational]) -> Result<Vec<Rational>, AlgebraError> {
    let m = dim;
    let idx = |i: usize, j: usize, k: usize| (i * m + j) * m + k;
    let mut mat = RatMatrix::zeros(2 * m * m, m);
    let mut rhs = vec![Rational::zero(); 2 * m * m];
    for j in 0..m {
        for k in 0..m {
            for i in 0..m {
                // e * b_j = b_j
                mat.set(j * m + k, i, gamma[idx(i, j, k)].clone());
                // b_j * e = b_j
                mat.set(m * m + j * m + k, i, gamma[idx(j, i, k)].clone());
            }
            if j == k {
                rhs[j * m + k] = Rational::one();
                rhs[m * m + j * m + k] = Rational::one();
            }
        }
    }
    mat.solve(&rhs).ok_or(AlgebraError::NoIdentity)
}

/// Invertible coordinate map between two same-dimensional presentations.
///
/// Invariant: the matrix is square and invertible (checked at construction
/// and on decoding).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    matrix: RatMatrix,
}

impl Isomorphism {
    /// Wraps a square invertible matrix.
    pub fn new(matrix: RatMatrix) -> Result<Self, AlgebraError> {
        if !matrix.is_square() || matrix.determinant().is_zero() {
            return Err(AlgebraError::NotInvertible);
        }
        Ok(Isomorphism { matrix })
    }

    /// Internal constructor for matrices already known to be invertible.
    pub(crate) fn from_invertible(matrix: RatMatrix) -> Self {
        debug_assert!(matrix.is_square() && !matrix.determinant().is_zero());
        Isomorphism { matrix }
    }

    pub fn identity(dim: usize) -> Self {
        Isomorphism {
            matrix: RatMatrix::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    /// Image of an element (coordinate map).
    pub fn apply(&self, x: &AlgElement) -> AlgElement {
        AlgElement::new(self.matrix.mul_vec(x.coords()))
    }

    /// Composition "apply `self` first, then `g`".
    pub fn then(&self, g: &Isomorphism) -> Isomorphism {
        assert_eq!(self.dim(), g.dim(), "composition dimension mismatch");
        Isomorphism {
            matrix: g.matrix.mul(&self.matrix),
        }
    }

    /// Inverse map.
    pub fn inverse(&self) -> Isomorphism {
        Isomorphism {
            matrix: self
                .matrix
                .inverse()
                .expect("isomorphism matrices are invertible by construction"),
        }
    }
}

/// Exact isomorphism check: dimensions agree, the matrix is invertible, the
/// identity maps to the identity, and `f(b_i b_j) = f(b_i) f(b_j)` for every
/// basis pair. Total on all validated inputs; returns `false` instead of
/// erroring on mismatched shapes.
pub fn verify_isomorphism(a: &Algebra, b: &Algebra, f: &Isomorphism) -> bool {
    let m = a.dim();
    if b.dim() != m || f.dim() != m {
        return false;
    }
    if f.matrix().determinant().is_zero() {
        return false;
    }
    if f.matrix().mul_vec(a.identity_coords()) != b.identity_coords() {
        return false;
    }
    // Multiplicativity on basis pairs, checked on denominator-cleared data.
    // With M' = c*M, g0' = d0*g0, g1' = d1*g1, the rational equation
    // M*(g0 row) = mult_g1(M col_i, M col_j) becomes the integer equation
    // (c*d1)*(M'*(g0' row)) = d0*mult_g1'(M' col_i, M' col_j).
    let (mf, c) = scale_all_to_int(f.matrix().entries());
    let (ga, da) = scale_all_to_int(a.gamma());
    let (gb, db) = scale_all_to_int(b.gamma());
    if let (Some(mf_s), Some(ga_s), Some(gb_s), Ok(c_s), Ok(da_s), Ok(db_s)) = (
        as_i128(&mf),
        as_i128(&ga),
        as_i128(&gb),
        i128::try_from(&c),
        i128::try_from(&da),
        i128::try_from(&db),
    ) {
        if let Ok(ok) = multiplicative_i128(m, &mf_s, &ga_s, &gb_s, c_s, da_s, db_s) {
            return ok;
        }
    }
    multiplicative_big(m, &mf, &ga, &gb, &c, &da, &db)
}

fn multiplicative_i128(
    m: usize,
    mf: &[i128],
    ga: &[i128],
    gb: &[i128],
    c: i128,
    da: i128,
    db: i128,
) -> Result<bool, Overflow> {
    let cdb = c.checked_mul(db).ok_or(Overflow)?;
    let mut rhs = vec![0i128; m];
    for i in 0..m {
        for j in 0..m {
            rhs.fill(0);
            for p in 0..m {
                let xp = mf[p * m + i];
                if xp == 0 {
                    continue;
                }
                for q in 0..m {
                    let yq = mf[q * m + j];
                    if yq == 0 {
                        continue;
                    }
                    let w = xp.checked_mul(yq).ok_or(Overflow)?;
                    let row = &gb[(p * m + q) * m..(p * m + q) * m + m];
                    for (t, &g) in row.iter().enumerate() {
                        if g != 0 {
                            let p2 = w.checked_mul(g).ok_or(Overflow)?;
                            rhs[t] = rhs[t].checked_add(p2).ok_or(Overflow)?;
                        }
                    }
                }
            }
            let grow = &ga[(i * m + j) * m..(i * m + j) * m + m];
            for t in 0..m {
                let mut acc = 0i128;
                for (s, &g) in grow.iter().enumerate() {
                    if g != 0 {
                        let p2 = mf[t * m + s].checked_mul(g).ok_or(Overflow)?;
                        acc = acc.checked_add(p2).ok_or(Overflow)?;
                    }
                }
                let lhs = acc.checked_mul(cdb).ok_or(Overflow)?;
                let r = rhs[t].checked_mul(da).ok_or(Overflow)?;
                if lhs != r {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn multiplicative_big(
    m: usize,
    mf: &[BigInt],
    ga: &[BigInt],
    gb: &[BigInt],
    c: &BigInt,
    da: &BigInt,
    db: &BigInt,
) -> bool {
    let cdb = c * db;
    let mut rhs = vec![BigInt::zero(); m];
    for i in 0..m {
        for j in 0..m {
            for v in rhs.iter_mut() {
                v.set_zero();
            }
            for p in 0..m {
                let xp = &mf[p * m + i];
                if xp.is_zero() {
                    continue;
                }
                for q in 0..m {
                    let yq = &mf[q * m + j];
                    if yq.is_zero() {
                        continue;
                    }
                    let w = xp * yq;
                    let row = &gb[(p * m + q) * m..(p * m + q) * m + m];
                    for (t, g) in row.iter().enumerate() {
                        if !g.is_zero() {
                            rhs[t] += &w * g;
                        }
                    }
                }
            }
            let grow = &ga[(i * m + j) * m..(i * m + j) * m + m];
            for t in 0..m {
                let mut acc = BigInt::zero();
                for (s, g) in grow.iter().enumerate() {
                    if !g.is_zero() {
                        acc += &mf[t * m + s] * g;
                    }
                }
                if acc * &cdb != &rhs[t] * da {
                    return false;
                }
            }
        }
    }
    true
}

/// Re-presents `a` over the new basis whose vectors are the columns of `t`
/// (expressed in the old basis). Returns the new algebra and the isomorphism
/// from `a` to it (the coordinate map `x -> t^-1 x`).
pub fn change_basis(a: &Algebra, t: &RatMatrix) -> Result<(Algebra, Isomorphism), AlgebraError> {
    let m = a.dim();
    assert!(
        t.is_square() && t.rows() == m,
        "basis-change matrix shape mismatch"
    );
    let tinv = t.inverse().ok_or(AlgebraError::SingularBasisChange)?;
    // Products of the new basis vectors in old coordinates:
    //   P_{ij} = sum_{p,q} T_{pi} T_{qj} gamma_{pq.}
    // computed via the intermediate D_{iq.} = sum_p T_{pi} gamma_{pq.},
    // then gamma'_{ij.} = T^-1 P_{ij}. All three contractions run on
    // denominator-cleared integers; one exact reduction per output entry.
    let (ti, ct) = scale_all_to_int(t.entries());
    let (gi, dg) = scale_all_to_int(a.gamma());
    let (tii, ci) = scale_all_to_int(tinv.entries());
    let mut d = vec![BigInt::zero(); m * m * m];
    for i in 0..m {
        for p in 0..m {
            let tpi = &ti[p * m + i];
            if tpi.is_zero() {
                continue;
            }
            for q in 0..m {
                let row = &gi[(p * m + q) * m..(p * m + q) * m + m];
                let base = (i * m + q) * m;
                for (k, g) in row.iter().enumerate() {
                    if !g.is_zero() {
                        d[base + k] += tpi * g;
                    }
                }
            }
        }
    }
    // products[k][i*m+j] = P_{ij} coordinate k, at integer scale ct^2 * dg.
    let mut products = vec![BigInt::zero(); m * m * m];
    for i in 0..m {
        for j in 0..m {
            for q in 0..m {
                let tqj = &ti[q * m + j];
                if tqj.is_zero() {
                    continue;
                }
                let base = (i * m + q) * m;
                for k in 0..m {
                    let dv = &d[base + k];
                    if !dv.is_zero() {
                        products[k * m * m + i * m + j] += tqj * dv;
                    }
                }
            }
        }
    }
    // solved = Tinv' * products carries scale ci * ct^2 * dg.
    let denom = &ci * &ct * &ct * &dg;
    let mut solved = vec![BigInt::zero(); m * m * m];
    for k in 0..m {
        for r in 0..m {
            let tkr = &tii[k * m + r];
            if tkr.is_zero() {
                continue;
            }
            for col in 0..m * m {
                let pv = &products[r * m * m + col];
                if !pv.is_zero() {
                    solved[k * m * m + col] += tkr * pv;
                }
            }
        }
    }
    let mut gamma = vec![Rational::zero(); m * m * m];
    for col in 0..m * m {
        for k in 0..m {
            let v = &solved[k * m * m + col];
            if !v.is_zero() {
                gamma[col * m + k] = Rational::new(v.clone(), denom.clone());
            }
        }
    }
    let b = Algebra::new(m, gamma)?;
    Ok((b, Isomorphism::from_invertible(tinv)))
}

/// Conjugation by an invertible element: re-presents `a` over the basis
/// `r^-1 b_i r`. Returns `None` when `r` is not invertible. The induced
/// coordinate map is a verified isomorphism witness; note that conjugation
/// fixes the structure constants themselves (the re-presented tensor equals
/// the original), so this is an automorphism witness, not a way to obtain a
/// fresh-looking presentation.
pub fn conjugation_isomorphism(a: &Algebra, r: &AlgElement) -> Option<(Algebra, Isomorphism)> {
    let rinv = a.invert_element(r)?;
    let m = a.dim();
    // Column i holds the coordinates of r^-1 * b_i * r.
    let mut t = RatMatrix::zeros(m, m);
    for i in 0..m {
        let conj = a.multiply_coords(
            &a.multiply_coords(rinv.coords(), a.basis_element(i).coords()),
            r.coords(),
        );
        for (row, v) in conj.into_iter().enumerate() {
            t.set(row, i, v);
        }
    }
    let (b, iso) =
        change_basis(a, &t).expect("conjugation by an invertible element is a bijection");
    Some((b, iso))
}

/// Fresh random presentation of `a`: re-presents over a random invertible
/// integer basis change with entries in `[-height, height]` (resampled until
/// invertible, cap [`RETRY_CAP`]). This is the randomization step used by key
/// generation, Protocol 1 commitments and Protocol 2 challenges.
pub fn random_presentation<R: RngCore + ?Sized>(
    a: &Algebra,
    height: u32,
    rng: &mut R,
) -> Result<(Algebra, Isomorphism), AlgebraError> {
    let m = a.dim();
    for _ in 0..RETRY_CAP {
        let t = RatMatrix::from_fn(m, m, |_, _| {
            Rational::from_integer(BigInt::from(uniform_int(rng, height)))
        });
        match change_basis(a, &t) {
            Ok(pair) => return Ok(pair),
            Err(AlgebraError::SingularBasisChange) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(AlgebraError::RetryExhausted {
        what: "an invertible basis change",
    })
}

/// Tensor product over Q. Basis pairs `(i, p)` are flattened as
/// `i * dim_b + p`; the structure constants multiply componentwise.
pub fn tensor_product(a: &Algebra, b: &Algebra) -> Result<Algebra, AlgebraError> {
    let (da, db) = (a.dim(), b.dim());
    let m = da * db;
    let mut gamma = vec![Rational::zero(); m * m * m];
    for i in 0..da {
        for j in 0..da {
            let ga = a.gamma_row(i, j);
            for (k, gak) in ga.iter().enumerate() {
                if gak.is_zero() {
                    continue;
                }
                for p in 0..db {
                    for q in 0..db {
                        let gb = b.gamma_row(p, q);
                        for (r, gbr) in gb.iter().enumerate() {
                            if gbr.is_zero() {
                                continue;
                            }
                            let row = i * db + p;
                            let col = j * db + q;
                            let out = k * db + r;
                            gamma[(row * m + col) * m + out] = gak * gbr;
                        }
                    }
                }
            }
        }
    }
    Algebra::new(m, gamma)
}

/// Rescales the basis by the lcm `N` of all structure-constant denominators;
/// the new tensor is `N * gamma`, which is integral, so the Z-span of the new
/// basis is closed under multiplication. Returns the rescaled algebra and `N`.
pub fn integral_scaling(a: &Algebra) -> Result<(Algebra, BigInt), AlgebraError> {
    let mut n = BigInt::one();
    for g in a.gamma() {
        n = n.lcm(g.denom());
    }
    let scale = Rational::from_integer(n.clone());
    let gamma = a.gamma().iter().map(|g| g * &scale).collect();
    let b = Algebra::new(a.dim(), gamma)?;
    Ok((b, n))
}

/// Structure constants of the `k x k` matrix algebra over the matrix-unit
/// basis `e_{ab}` (flattened as `a * k + b`): `e_{ab} e_{cd} = [b = c] e_{ad}`.
pub fn matrix_units_algebra(k: usize) -> Algebra {
    assert!(k >= 1);
    let m = k * k;
    let mut gamma = vec![Rational::zero(); m * m * m];
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                for d in 0..k {
                    if b == c {
                        let i = a * k + b;
                        let j = c * k + d;
                        let out = a * k + d;
                        gamma[(i * m + j) * m + out] = Rational::one();
                    }
                }
            }
        }
    }
    Algebra::new(m, gamma).expect("matrix-unit constants are associative and unital")
}
