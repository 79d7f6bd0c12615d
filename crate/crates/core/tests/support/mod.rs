//! Shared oracles and harness pieces for the integration suites.
//!
//! Everything here is written independently of the library's own algorithms
//! so it can serve as a cross-check: the characteristic polynomial comes
//! from the Faddeev-LeVerrier recurrence rather than elimination, polynomial
//! division is plain long division, and the transports are byte buffers.

#![allow(dead_code)]

use csazkp::{AlgElement, Algebra, Polynomial, RatMatrix, Rational};
use num::{BigInt, One, Signed, Zero};
use std::io::{self, Cursor, Read, Write};

// ---------------------------------------------------------------------------
// Polynomial arithmetic oracles.

pub fn poly_mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero();
    }
    let mut out = vec![Rational::zero(); a.coeffs().len() + b.coeffs().len() - 1];
    for (i, ca) in a.coeffs().iter().enumerate() {
        for (j, cb) in b.coeffs().iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    Polynomial::new(out)
}

/// Long division of `f` by monic `d`; returns (quotient, remainder).
pub fn poly_divmod(f: &Polynomial, d: &Polynomial) -> (Polynomial, Polynomial) {
    assert!(d.is_monic(), "divisor must be monic");
    let mut rem: Vec<Rational> = f.coeffs().to_vec();
    let dd = d.degree();
    if rem.len() < dd + 1 {
        return (Polynomial::zero(), f.clone());
    }
    let mut quo = vec![Rational::zero(); rem.len() - dd];
    for top in (dd..rem.len()).rev() {
        let c = rem[top].clone();
        if c.is_zero() {
            continue;
        }
        quo[top - dd] = c.clone();
        for (k, dc) in d.coeffs().iter().enumerate() {
            let idx = top - dd + k;
            let delta = &c * dc;
            rem[idx] -= delta;
        }
    }
    (Polynomial::new(quo), Polynomial::new(rem))
}

/// Exact divisibility: `d` monic divides `f`.
pub fn poly_divides(d: &Polynomial, f: &Polynomial) -> bool {
    poly_divmod(f, d).1.is_zero()
}

/// Evaluates `f(x)` inside an algebra via Horner's scheme.
pub fn poly_eval_in_algebra(alg: &Algebra, f: &Polynomial, x: &AlgElement) -> AlgElement {
    let mut acc = alg.scalar_element(&Rational::zero());
    for c in f.coeffs().iter().rev() {
        acc = alg.multiply(&acc, x);
        acc = acc.add(&alg.scalar_element(c));
    }
    acc
}

// ---------------------------------------------------------------------------
// Characteristic polynomial by the Faddeev-LeVerrier recurrence.

fn trace(m: &RatMatrix) -> Rational {
    (0..m.rows()).fold(Rational::zero(), |acc, i| acc + m.at(i, i))
}

/// Monic characteristic polynomial of a square matrix, computed without any
/// elimination: `M_1 = A`, `c_{n-1} = -tr M_1`,
/// `M_k = A (M_{k-1} + c_{n-k+1} I)`, `c_{n-k} = -tr(M_k) / k`.
pub fn charpoly(a: &RatMatrix) -> Polynomial {
    assert!(a.is_square());
    let n = a.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = a.clone();
    for k in 1..=n {
        let ck = -(trace(&m) / Rational::from_integer(BigInt::from(k)));
        coeffs[n - k] = ck.clone();
        if k < n {
            let mut shifted = m.clone();
            for i in 0..n {
                let e = shifted.at(i, i) + &ck;
                shifted.set(i, i, e);
            }
            m = a.mul(&shifted);
        }
    }
    Polynomial::new(coeffs)
}

// ---------------------------------------------------------------------------
// Rational root detection for monic integer polynomials.

/// The coefficients as integers, if every coefficient is an integer.
pub fn integer_coeffs(f: &Polynomial) -> Option<Vec<BigInt>> {
    f.coeffs()
        .iter()
        .map(|c| c.denom().is_one().then(|| c.numer().clone()))
        .collect()
}

/// Whether a monic integer polynomial has a rational root. By the rational
/// root theorem the candidates are exactly the integer divisors of the
/// constant term, enumerated here by trial division.
pub fn has_rational_root(f: &Polynomial) -> bool {
    let coeffs = integer_coeffs(f).expect("oracle needs integer coefficients");
    assert!(f.is_monic());
    let constant = &coeffs[0];
    if constant.is_zero() {
        return true;
    }
    let c: i128 = constant
        .abs()
        .try_into()
        .expect("constant term fits in i128 at desk scale");
    let eval = |r: i128| -> bool {
        let r = BigInt::from(r);
        let mut acc = BigInt::zero();
        for c in coeffs.iter().rev() {
            acc = acc * &r + c;
        }
        acc.is_zero()
    };
    let mut d = 1i128;
    while d * d <= c {
        if c % d == 0 {
            for cand in [d, -d, c / d, -(c / d)] {
                if eval(cand) {
                    return true;
                }
            }
        }
        d += 1;
    }
    false
}

// ---------------------------------------------------------------------------
// Statistics.

/// 2x2 chi-square statistic comparing two Bernoulli samples
/// (`a = [zeros, ones]`, `b = [zeros, ones]`); 1 degree of freedom, so the
/// p > 0.01 threshold is a statistic below 6.635.
pub fn chi_square_2x2(a: [u64; 2], b: [u64; 2]) -> f64 {
    let obs = [[a[0] as f64, a[1] as f64], [b[0] as f64, b[1] as f64]];
    let row: Vec<f64> = obs.iter().map(|r| r[0] + r[1]).collect();
    let col = [obs[0][0] + obs[1][0], obs[0][1] + obs[1][1]];
    let total = row[0] + row[1];
    let mut stat = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let expected = row[i] * col[j] / total;
            let diff = obs[i][j] - expected;
            stat += diff * diff / expected;
        }
    }
    stat
}

pub const CHI_SQUARE_DF1_P01: f64 = 6.635;

// ---------------------------------------------------------------------------
// Byte-level transports for capture and replay.

/// Wraps a transport and logs every byte read from the peer.
pub struct CaptureTransport<T> {
    pub inner: T,
    pub inbound: Vec<u8>,
}

impl<T> CaptureTransport<T> {
    pub fn new(inner: T) -> Self {
        CaptureTransport {
            inner,
            inbound: Vec::new(),
        }
    }
}

impl<T: Read> Read for CaptureTransport<T> {
    fn read(&mut self, buf: &mut [u8]) -> io::Result<usize> {
        let n = self.inner.read(buf)?;
        self.inbound.extend_from_slice(&buf[..n]);
        Ok(n)
    }
}

impl<T: Write> Write for CaptureTransport<T> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        self.inner.write(buf)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

/// Replays a recorded inbound byte stream; writes are discarded. Reads past
/// the end return EOF, so truncated streams terminate instead of hanging.
pub struct ReplayTransport {
    pub inbound: Cursor<Vec<u8>>,
}

impl ReplayTransport {
    pub fn new(bytes: Vec<u8>) -> Self {
        ReplayTransport {
            inbound: Cursor::new(bytes),
        }
    }
}

impl Read for ReplayTransport {
    fn read(&mut self, buf: &mut [u8]) -> io::Result<usize> {
        self.inbound.read(buf)
    }
}

impl Write for ReplayTransport {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        Ok(buf.len())
    }

    fn flush(&mut self) -> io::Result<()> {
        Ok(())
    }
}
