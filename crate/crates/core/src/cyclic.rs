//! Cyclic number fields and cyclic algebras.
//!
//! A degree-`p` cyclic extension of the rationals is represented concretely
//! by the multiplication table of its Gaussian-period basis together with the
//! matrix of the Galois generator acting on that basis. From such field data
//! and a nonzero twist parameter `a`, [`cyclic_algebra`] builds the
//! dimension-`p²` algebra generated by the field and a symbol `u` subject to
//! `u^p = a` and `u^{-1} l u = σ(l)`. Tensoring the algebras attached to the
//! prime factors of a squarefree `k` yields a degree-`k` algebra that is a
//! division algebra with high probability ([`build_division_algebra`]).
//!
//! The field data itself is produced by [`cyclic_field`]: for a prime `p` it
//! picks the smallest prime `q ≡ 1 (mod 2p)` and forms the degree-`p`
//! subfield of the `q`-th cyclotomic field spanned by the Gaussian periods
//! `η_i` (sums of `ζ_q` over the cosets of the index-`p` subgroup of
//! `(ℤ/q)ˣ`). All arithmetic is exact, performed in `ℚ(ζ_q)` represented as
//! rational vectors modulo `1 + ζ + … + ζ^{q-1} = 0`.

use crate::algebra::{
    tensor_product, verify_isomorphism, AlgElement, Algebra, AlgebraError, Isomorphism, RETRY_CAP,
};
use crate::linalg::{rat, rat_int, RatMatrix, Rational};
use crate::poly::Polynomial;
use num::{One, Zero};
use rand::{Rng, RngCore};
use thiserror::Error;

/// Largest prime degree accepted by [`cyclic_field`]; cyclotomic tables grow
/// quickly beyond this.
pub const MAX_FIELD_DEGREE: u32 = 7;

/// Errors from cyclic field and algebra construction.
#[derive(Debug, Error)]
pub enum CyclicError {
    /// The requested degree is not a prime in the supported range.
    #[error("field degree must be a prime at most {MAX_FIELD_DEGREE}, got {0}")]
    BadDegree(u32),
    /// The parameter of a tensor construction must be squarefree with small
    /// prime factors.
    #[error("parameter must be squarefree with prime factors at most {MAX_FIELD_DEGREE}, got {0}")]
    BadParameter(u32),
    /// The twist parameter of a cyclic algebra must be nonzero.
    #[error("twist parameter must be nonzero")]
    ZeroTwist,
    /// Supplied field data failed validation.
    #[error("invalid cyclic field data: {0}")]
    InvalidField(String),
    /// A constructed algebra was expected to be central (one-dimensional
    /// center) but is not.
    #[error("constructed algebra has a center of dimension {0}, expected 1")]
    NotCentral(usize),
    /// An underlying algebra construction failed.
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    /// A rejection-sampling loop exceeded its retry cap.
    #[error("retry cap exhausted while {0}")]
    RetryExhausted(&'static str),
}

/// A degree-`p` cyclic extension of ℚ in explicit form: the multiplication
/// table of a basis `η_0, …, η_{p-1}` permuted cyclically by the Galois
/// generator `σ` (so `σ(η_i) = η_{i+1 mod p}`), together with the auxiliary
/// modulus `q` the basis was derived from and the minimal polynomial shared
/// by the basis elements.
#[derive(Clone, Debug)]
pub struct CyclicFieldData {
    p: usize,
    q: u32,
    field: Algebra,
    sigma: Isomorphism,
    period_minpoly: Polynomial,
}

impl CyclicFieldData {
    /// Validates raw field data: the table must define a commutative unital
    /// associative algebra of dimension `p`, the cyclic index shift must be
    /// an automorphism of it, the basis must sum to −1, and `η_0` must
    /// generate (its minimal polynomial has degree `p`).
    ///
    /// `q` is descriptive metadata (the cyclotomic modulus for generated
    /// data) and is not constrained here.
    pub fn from_parts(
        p: u32,
        q: u32,
        mult_table: Vec<Rational>,
        sigma: RatMatrix,
    ) -> Result<Self, CyclicError> {
        if p < 2 {
            return Err(CyclicError::BadDegree(p));
        }
        let pu = p as usize;
        let field = Algebra::new(pu, mult_table)?;
        if !field.is_commutative() {
            return Err(CyclicError::InvalidField(
                "multiplication table is not commutative".into(),
            ));
        }

        // Trace relation: η_0 + … + η_{p-1} = −1.
        let ones = AlgElement::new(vec![Rational::one(); pu]);
        let minus_one = field.scalar_element(&rat_int(-1));
        if ones != minus_one {
            return Err(CyclicError::InvalidField(
                "basis elements do not sum to -1".into(),
            ));
        }

        // σ must be exactly the cyclic index shift and an algebra
        // automorphism; for prime p the shift has order exactly p.
        let shift = RatMatrix::from_fn(pu, pu, |r, c| {
            if r == (c + 1) % pu {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        if sigma != shift {
            return Err(CyclicError::InvalidField(
                "sigma is not the cyclic index shift".into(),
            ));
        }
        let sigma = Isomorphism::new(sigma)?;
        if !verify_isomorphism(&field, &field, &sigma) {
            return Err(CyclicError::InvalidField(
                "sigma is not an algebra automorphism".into(),
            ));
        }

        let period_minpoly = field.minimal_polynomial(&field.basis_element(0));
        if period_minpoly.degree() != pu {
            return Err(CyclicError::InvalidField(format!(
                "basis element does not generate: minimal polynomial has degree {}, expected {}",
                period_minpoly.degree(),
                pu,
            )));
        }

        Ok(CyclicFieldData {
            p: pu,
            q,
            field,
            sigma,
            period_minpoly,
        })
    }

    /// The degree `p` of the extension.
    pub fn degree(&self) -> usize {
        self.p
    }

    /// The auxiliary modulus `q` (the cyclotomic level for generated data).
    pub fn modulus(&self) -> u32 {
        self.q
    }

    /// The field as a dimension-`p` algebra over ℚ (its γ-tensor is the
    /// period multiplication table).
    pub fn field(&self) -> &Algebra {
        &self.field
    }

    /// The Galois generator `σ` as an automorphism of [`Self::field`].
    pub fn sigma(&self) -> &Isomorphism {
        &self.sigma
    }

    /// The common minimal polynomial of the basis elements.
    pub fn period_minpoly(&self) -> &Polynomial {
        &self.period_minpoly
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division; errors unless `n` is squarefree
/// with every factor at most [`MAX_FIELD_DEGREE`].
fn squarefree_factors(n: u32) -> Result<Vec<u32>, CyclicError> {
    if n == 0 {
        return Err(CyclicError::BadParameter(n));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut d = 2u32;
    while rest > 1 {
        if rest.is_multiple_of(d) {
            rest /= d;
            if rest.is_multiple_of(d) || d > MAX_FIELD_DEGREE {
                return Err(CyclicError::BadParameter(n));
            }
            factors.push(d);
        } else {
            d += 1;
        }
    }
    Ok(factors)
}

/// Builds the degree-`p` cyclic subfield of the `q`-th cyclotomic field for
/// the smallest prime `q ≡ 1 (mod 2p)`, using Gaussian periods.
///
/// The periods are `η_i = Σ_{h ∈ C_i} ζ^h` where `C_i = g^i·H` are the cosets
/// of the index-`p` subgroup `H` of `(ℤ/q)ˣ` and `g` is a primitive root.
/// Their products are computed exactly in `ℚ(ζ_q)` and re-expressed in the
/// period basis by solving linear systems, giving the multiplication table.
/// The Galois generator `ζ ↦ ζ^g` cycles the cosets, so `σ(η_i) = η_{i+1}`.
pub fn cyclic_field(p: u32) -> Result<CyclicFieldData, CyclicError> {
    if !is_prime(p) || p > MAX_FIELD_DEGREE {
        return Err(CyclicError::BadDegree(p));
    }

    // Smallest prime q ≡ 1 (mod 2p). The 2p step keeps q odd for p = 2; for
    // odd p any prime q ≡ 1 (mod p) already satisfies it.
    let step = 2 * p;
    let mut q = step + 1;
    while !is_prime(q) {
        q += step;
    }

    // Primitive root modulo q.
    let qi = q as u64;
    let factors_qm1 = {
        let mut fs = Vec::new();
        let mut rest = q - 1;
        let mut d = 2u32;
        while rest > 1 {
            if rest.is_multiple_of(d) {
                fs.push(d);
                while rest.is_multiple_of(d) {
                    rest /= d;
                }
            } else {
                d += 1;
            }
        }
        fs
    };
    let pow_mod = |base: u64, mut exp: u32| -> u64 {
        let mut acc = 1u64;
        let mut b = base % qi;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % qi;
            }
            b = b * b % qi;
            exp >>= 1;
        }
        acc
    };
    let g = (2..qi)
        .find(|&g| factors_qm1.iter().all(|&f| pow_mod(g, (q - 1) / f) != 1))
        .expect("a primitive root exists modulo every prime");

    // Cosets C_i = g^i·H of the index-p subgroup H = <g^p>, as exponent sets.
    let pu = p as usize;
    let coset_size = ((q - 1) / p) as usize;
    let mut cosets = vec![Vec::with_capacity(coset_size); pu];
    let mut power = 1u64;
    for e in 0..(q - 1) as usize {
        cosets[e % pu].push(power);
        power = power * g % qi;
    }

    // ℚ(ζ_q) as vectors over ζ^0 … ζ^{q-2}; ζ^{q-1} reduces to −(Σ_j ζ^j).
    let zdim = (q - 1) as usize;
    let add_power = |v: &mut Vec<Rational>, e: u64, amount: i64| {
        let e = (e % qi) as usize;
        if e < zdim {
            v[e] += rat_int(amount);
        } else {
            for slot in v.iter_mut() {
                *slot -= rat_int(amount);
            }
        }
    };
    let period_vec = |i: usize| {
        let mut v = vec![Rational::zero(); zdim];
        for &h in &cosets[i] {
            add_power(&mut v, h, 1);
        }
        v
    };

    // Matrix whose columns are the periods; products of periods stay in the
    // span of the periods, so solving against it re-expresses them exactly.
    let periods: Vec<Vec<Rational>> = (0..pu).map(period_vec).collect();
    let period_matrix = RatMatrix::from_fn(zdim, pu, |r, c| periods[c][r].clone());

    let mut mult_table = vec![Rational::zero(); pu * pu * pu];
    for r in 0..pu {
        for s in 0..r + 1 {
            let mut product = vec![Rational::zero(); zdim];
            for &h in &cosets[r] {
                for &h2 in &cosets[s] {
                    add_power(&mut product, h + h2, 1);
                }
            }
            let coeffs = period_matrix
                .solve(&product)
                .expect("period products lie in the span of the periods");
            for t in 0..pu {
                mult_table[(r * pu + s) * pu + t] = coeffs[t].clone();
                mult_table[(s * pu + r) * pu + t] = coeffs[t].clone();
            }
        }
    }

    let sigma = RatMatrix::from_fn(pu, pu, |r, c| {
        if r == (c + 1) % pu {
            Rational::one()
        } else {
            Rational::zero()
        }
    });

    CyclicFieldData::from_parts(p, q, mult_table, sigma)
}

/// Builds the cyclic algebra attached to `field` and a nonzero twist `a`:
/// the dimension-`p²` algebra with basis `η_r·u^i` (`0 ≤ r, i < p`) and
/// relations `u^p = a·1` and `u^i·l = σ^{-i}(l)·u^i` for field elements `l`.
///
/// Basis index convention: `η_r·u^i` sits at position `i·p + r`. The result
/// passes full structure validation and is checked to be central over ℚ.
pub fn cyclic_algebra(field: &CyclicFieldData, a: &Rational) -> Result<Algebra, CyclicError> {
    if a.is_zero() {
        return Err(CyclicError::ZeroTwist);
    }
    let p = field.degree();
    let m = p * p;
    let f = field.field();

    // (η_r u^i)(η_s u^j) = η_r σ^{-i}(η_s) u^{i+j}
    //                    = η_r η_{(s-i) mod p} u^{(i+j) mod p} · (a if i+j ≥ p).
    // σ is the validated index shift, so σ^{-i} shifts indices down by i.
    let mut gamma = vec![Rational::zero(); m * m * m];
    for i in 0..p {
        for r in 0..p {
            let row = i * p + r;
            for j in 0..p {
                for s in 0..p {
                    let col = j * p + s;
                    let shifted = (s + p - i) % p;
                    let block = (i + j) % p;
                    let twist = i + j >= p;
                    for t in 0..p {
                        let coeff = f.gamma_at(r, shifted, t);
                        if coeff.is_zero() {
                            continue;
                        }
                        let value = if twist { coeff * a } else { coeff.clone() };
                        gamma[(row * m + col) * m + (block * p + t)] = value;
                    }
                }
            }
        }
    }

    let algebra = Algebra::new(m, gamma)?;
    let center = algebra.center_basis().len();
    if center != 1 {
        return Err(CyclicError::NotCentral(center));
    }
    Ok(algebra)
}

fn is_perfect_power(x: u64, p: u32) -> bool {
    let root = (x as f64).powf(1.0 / f64::from(p)).round() as u64;
    for r in root.saturating_sub(1)..=root + 1 {
        if (r as u128).pow(p) == x as u128 {
            return true;
        }
    }
    false
}

/// Builds a degree-`k` algebra over ℚ that is a division algebra with high
/// probability, for squarefree `k` with prime factors at most
/// [`MAX_FIELD_DEGREE`]: the tensor product over the primes `p | k` of the
/// cyclic algebras `(cyclic_field(p), a_p)` with `a_p` drawn uniformly from
/// `[2, 2³²]`, rejecting perfect `p`-th powers as a cheap norm filter.
///
/// `k = 1` yields the one-dimensional algebra ℚ. The sampling is heuristic:
/// a uniformly random `a_p` from a large interval fails to be a norm with
/// high probability, but no certification is attempted.
pub fn build_division_algebra<R: RngCore + ?Sized>(
    k: u32,
    rng: &mut R,
) -> Result<Algebra, CyclicError> {
    let factors = squarefree_factors(k)?;
    let mut result = Algebra::new(1, vec![Rational::one()])?;
    for p in factors {
        let field = cyclic_field(p)?;
        let mut attempts = 0;
        let a = loop {
            let candidate = rng.gen_range(2u64..=1 << 32);
            if !is_perfect_power(candidate, p) {
                break candidate;
            }
            attempts += 1;
            if attempts > RETRY_CAP {
                return Err(CyclicError::RetryExhausted(
                    "sampling a twist that is not a perfect power",
                ));
            }
        };
        let twisted = cyclic_algebra(&field, &Rational::from_integer(a.into()))?;
        result = tensor_product(&result, &twisted)?;
    }
    Ok(result)
}

/// Field data for the Gaussian rationals ℚ(i) in the basis
/// η_0 = (−1+i)/2, η_1 = (−1−i)/2, with σ = complex conjugation.
///
/// This degree-2 datum is hand-entered rather than generated from a
/// cyclotomic modulus; it matters because the twist −1 is a norm from the
/// generated degree-2 field (N(2+√5) = −1 in ℚ(√5)) but not from ℚ(i), so
/// `cyclic_algebra(&gaussian_rationals_field(), -1)` is the Hamilton
/// quaternion division algebra while the same twist over `cyclic_field(2)`
/// splits.
pub fn gaussian_rationals_field() -> CyclicFieldData {
    let mut table = vec![Rational::zero(); 8];
    let mut set = |r: usize, s: usize, c0: Rational, c1: Rational| {
        table[(r * 2 + s) * 2] = c0;
        table[(r * 2 + s) * 2 + 1] = c1;
    };
    set(0, 0, rat(-1, 2), rat(1, 2));
    set(0, 1, rat(-1, 2), rat(-1, 2));
    set(1, 0, rat(-1, 2), rat(-1, 2));
    set(1, 1, rat(1, 2), rat(-1, 2));
    let swap = RatMatrix::from_fn(2, 2, |r, c| {
        if r != c {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    CyclicFieldData::from_parts(2, 4, table, swap).expect("fixed table is valid field data")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn int_element(coords: &[i64]) -> AlgElement {
        AlgElement::from_integers(coords)
    }

    #[test]
    fn quadratic_field_has_golden_ratio_periods() {
        let field = cyclic_field(2).unwrap();
        assert_eq!(field.modulus(), 5);
        assert_eq!(field.degree(), 2);
        // η_0 = ζ + ζ⁴ = (−1+√5)/2: η_0² = −2η_0 − η_1, η_0η_1 = η_0 + η_1.
        let f = field.field();
        assert_eq!(*f.gamma_at(0, 0, 0), rat_int(-2));
        assert_eq!(*f.gamma_at(0, 0, 1), rat_int(-1));
        assert_eq!(*f.gamma_at(0, 1, 0), rat_int(1));
        assert_eq!(*f.gamma_at(0, 1, 1), rat_int(1));
        assert_eq!(*f.gamma_at(1, 1, 0), rat_int(-1));
        assert_eq!(*f.gamma_at(1, 1, 1), rat_int(-2));
        // Minimal polynomial of the golden-ratio conjugate: t² + t − 1.
        assert_eq!(
            field.period_minpoly(),
            &Polynomial::new(vec![rat_int(-1), rat_int(1), rat_int(1)])
        );
        // Identity is −(η_0 + η_1).
        assert_eq!(f.identity_coords(), &[rat_int(-1), rat_int(-1)][..]);
    }

    #[test]
    fn cubic_field_matches_cosine_minimal_polynomial() {
        let field = cyclic_field(3).unwrap();
        assert_eq!(field.modulus(), 7);
        // η_0 = ζ + ζ⁶ = 2cos(2π/7) has minimal polynomial t³ + t² − 2t − 1.
        assert_eq!(
            field.period_minpoly(),
            &Polynomial::new(vec![rat_int(-1), rat_int(-2), rat_int(1), rat_int(1)])
        );
        // η_0² = 2 + η_2 = −2η_0 − 2η_1 − η_2 and η_0η_1 = η_1 + η_2.
        let f = field.field();
        assert_eq!(*f.gamma_at(0, 0, 0), rat_int(-2));
        assert_eq!(*f.gamma_at(0, 0, 1), rat_int(-2));
        assert_eq!(*f.gamma_at(0, 0, 2), rat_int(-1));
        assert_eq!(*f.gamma_at(0, 1, 0), rat_int(0));
        assert_eq!(*f.gamma_at(0, 1, 1), rat_int(1));
        assert_eq!(*f.gamma_at(0, 1, 2), rat_int(1));
    }

    #[test]
    fn sigma_has_order_exactly_p() {
        let field = cyclic_field(3).unwrap();
        let sigma = field.sigma();
        let ident = Isomorphism::identity(3);
        assert_ne!(sigma, &ident);
        let twice = sigma.then(sigma);
        assert_ne!(twice, ident);
        assert_eq!(twice.then(sigma), ident);
        assert!(verify_isomorphism(field.field(), field.field(), sigma));
    }

    #[test]
    fn field_samples_are_invertible() {
        let field = cyclic_field(5).unwrap();
        assert_eq!(field.modulus(), 11);
        let f = field.field();
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        for _ in 0..40 {
            let x = f.random_element(6, &mut rng);
            if x.is_zero() {
                continue;
            }
            assert!(
                f.invert_element(&x).is_some(),
                "nonzero field element failed to invert"
            );
        }
    }

    #[test]
    fn rejects_bad_degrees() {
        assert!(matches!(cyclic_field(1), Err(CyclicError::BadDegree(1))));
        assert!(matches!(cyclic_field(4), Err(CyclicError::BadDegree(4))));
        assert!(matches!(cyclic_field(11), Err(CyclicError::BadDegree(11))));
    }

    #[test]
    fn from_parts_rejects_wrong_sigma() {
        let field = cyclic_field(2).unwrap();
        let table = field.field().gamma().to_vec();
        let not_shift = RatMatrix::identity(2);
        let err = CyclicFieldData::from_parts(2, 5, table, not_shift).unwrap_err();
        assert!(matches!(err, CyclicError::InvalidField(_)));
    }

    #[test]
    fn from_parts_rejects_broken_trace() {
        // ℚ×ℚ with basis (1,0), (0,1): commutative, unital, but sums to +1.
        let mut table = vec![Rational::zero(); 8];
        let idx = |i: usize, j: usize, k: usize| (i * 2 + j) * 2 + k;
        table[idx(0, 0, 0)] = Rational::one(); // e0·e0 = e0
        table[idx(1, 1, 1)] = Rational::one(); // e1·e1 = e1
        let swap = RatMatrix::from_fn(2, 2, |r, c| {
            if r != c {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let err = CyclicFieldData::from_parts(2, 2, table, swap).unwrap_err();
        assert!(matches!(err, CyclicError::InvalidField(_)));
    }

    #[test]
    fn quaternions_from_gaussian_integers() {
        // (ℚ(i), σ = conjugation, a = −1) are the Hamilton quaternions.
        let field = gaussian_rationals_field();
        let h = cyclic_algebra(&field, &rat_int(-1)).unwrap();
        assert_eq!(h.dim(), 4);

        // Basis order: η_0, η_1, η_0·u, η_1·u. In that basis
        // i = η_0 − η_1, u = 1·u = −η_0u − η_1u, and −1 = η_0 + η_1.
        let i = int_element(&[1, -1, 0, 0]);
        let u = int_element(&[0, 0, -1, -1]);
        let minus_one = int_element(&[1, 1, 0, 0]);

        assert_eq!(h.multiply(&i, &i), minus_one);
        assert_eq!(h.multiply(&u, &u), minus_one);

        let iu = h.multiply(&i, &u);
        let ui = h.multiply(&u, &i);
        assert_eq!(iu, ui.scale(&rat_int(-1)), "i and u anticommute");
        assert_eq!(h.multiply(&iu, &iu), minus_one, "(iu)² = −1");
    }

    #[test]
    fn split_quaternions_have_zero_divisors() {
        let field = gaussian_rationals_field();
        let split = cyclic_algebra(&field, &rat_int(1)).unwrap();
        let one = split.identity_element();
        let u = int_element(&[0, 0, -1, -1]);
        let product = split.multiply(&one.add(&u), &one.sub(&u));
        assert!(product.is_zero(), "(1+u)(1−u) = 1 − u² = 0 when u² = 1");
    }

    #[test]
    fn quaternion_samples_are_invertible() {
        // Note the field matters: over ℚ(√5) the twist −1 is a norm
        // (N(2+√5) = −1), giving a split algebra. Over ℚ(i) it is not, and
        // the result is the Hamilton division algebra.
        let field = gaussian_rationals_field();
        let h = cyclic_algebra(&field, &rat_int(-1)).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(29);
        for _ in 0..20 {
            let x = h.random_element(5, &mut rng);
            if x.is_zero() {
                continue;
            }
            assert!(h.invert_element(&x).is_some());
        }
    }

    #[test]
    fn degree_three_twist_by_two_gives_cube_root() {
        let field = cyclic_field(3).unwrap();
        let a = cyclic_algebra(&field, &rat_int(2)).unwrap();
        assert_eq!(a.dim(), 9);

        // u = 1·u: the field identity placed in the first u-block.
        let mut coords = vec![Rational::zero(); 9];
        for (r, c) in field.field().identity_coords().iter().enumerate() {
            coords[3 + r] = c.clone();
        }
        let u = AlgElement::new(coords);
        assert_eq!(
            a.minimal_polynomial(&u),
            Polynomial::new(vec![rat_int(-2), rat_int(0), rat_int(0), rat_int(1)]),
            "u should satisfy t³ − 2 and nothing smaller"
        );
    }

    #[test]
    fn zero_twist_is_rejected() {
        let field = cyclic_field(2).unwrap();
        assert!(matches!(
            cyclic_algebra(&field, &Rational::zero()),
            Err(CyclicError::ZeroTwist)
        ));
    }

    #[test]
    fn division_algebra_dimensions() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        assert_eq!(build_division_algebra(1, &mut rng).unwrap().dim(), 1);
        assert_eq!(build_division_algebra(2, &mut rng).unwrap().dim(), 4);
        assert_eq!(build_division_algebra(6, &mut rng).unwrap().dim(), 36);
    }

    #[test]
    fn division_algebra_rejects_non_squarefree() {
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        assert!(matches!(
            build_division_algebra(4, &mut rng),
            Err(CyclicError::BadParameter(4))
        ));
        assert!(matches!(
            build_division_algebra(0, &mut rng),
            Err(CyclicError::BadParameter(0))
        ));
        assert!(matches!(
            build_division_algebra(11, &mut rng),
            Err(CyclicError::BadParameter(11))
        ));
    }

    #[test]
    fn quaternion_variant_elements_invert() {
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let d = build_division_algebra(2, &mut rng).unwrap();
        for _ in 0..10 {
            let x = d.random_element(4, &mut rng);
            if x.is_zero() {
                continue;
            }
            assert!(
                d.invert_element(&x).is_some(),
                "division algebra sample failed to invert"
            );
        }
    }

    #[test]
    fn perfect_power_filter() {
        assert!(is_perfect_power(49, 2));
        assert!(is_perfect_power(27, 3));
        assert!(is_perfect_power(1 << 32, 2));
        assert!(!is_perfect_power(50, 2));
        assert!(!is_perfect_power(28, 3));
    }
}
