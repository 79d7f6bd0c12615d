//! Univariate polynomials over the rationals.
//!
//! Coefficients are stored lowest-degree first and trailing zeros are trimmed,
//! so equality is structural. The zero polynomial has an empty coefficient
//! vector. Minimal polynomials produced by this crate are always monic of
//! degree >= 1.

use std::fmt;

use num::traits::{One, Signed, Zero};

use crate::linalg::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    /// Builds a polynomial from coefficients in ascending degree order,
    /// trimming trailing zeros.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial.
    ///
    /// # Panics
    /// Panics on the zero polynomial.
    pub fn degree(&self) -> usize {
        assert!(!self.is_zero(), "degree of the zero polynomial");
        self.coeffs.len() - 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Coefficients in ascending degree order (trailing zeros trimmed).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Evaluates at a rational point by Horner's rule.
    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl fmt::Display for Polynomial {
    /// Renders like `t^3 + t^2 - 2t - 1`; the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = magnitude.is_one() && i > 0;
            if !unit_coeff {
                write!(f, "{}", magnitude)?;
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{}", i)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, rat_int};

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = Polynomial::new(vec![rat_int(1), rat_int(0), rat_int(0)]);
        assert_eq!(p.degree(), 0);
        assert_eq!(p, Polynomial::new(vec![rat_int(1)]));
    }

    #[test]
    fn horner_evaluation_is_exact() {
        // t^2 - 5t - 2 at t = 1/2 -> 1/4 - 5/2 - 2 = -17/4
        let p = Polynomial::new(vec![rat_int(-2), rat_int(-5), rat_int(1)]);
        assert_eq!(p.eval_rational(&rat(1, 2)), rat(-17, 4));
    }

    #[test]
    fn display_is_human_readable() {
        let p = Polynomial::new(vec![rat_int(-1), rat_int(-2), rat_int(1), rat_int(1)]);
        assert_eq!(p.to_string(), "t^3 + t^2 - 2t - 1");
        let q = Polynomial::new(vec![rat(1, 2), rat_int(-1)]);
        assert_eq!(q.to_string(), "-t + 1/2");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn monic_detection() {
        assert!(Polynomial::new(vec![rat_int(3), rat_int(1)]).is_monic());
        assert!(!Polynomial::new(vec![rat_int(1), rat_int(2)]).is_monic());
        assert!(!Polynomial::zero().is_monic());
    }
}
