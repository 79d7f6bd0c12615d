//! Exact rational linear algebra.
//!
//! Everything in this crate computes over arbitrary-precision rationals; there
//! is no floating point anywhere. The elimination core is fraction-free
//! (Bareiss one-step elimination): each row of a rational matrix is first
//! scaled by the lcm of its denominators, then the integer tableau is reduced
//! with exact divisions by the previous pivot. This keeps intermediate entry
//! growth polynomial (entries are minors of the scaled matrix) instead of the
//! exponential blowup naive fractional elimination can produce.
//!
//! Solution conventions are deterministic so results can be frozen in tests:
//! pivots are chosen in column order (first row with a nonzero entry), and
//! underdetermined systems are resolved by setting every free variable to
//! zero.

use num::bigint::BigInt;
use num::integer::Integer;
use num::traits::{One, Zero};

/// Scalar type of the whole crate: arbitrary-precision rational numbers,
/// always stored reduced with a positive denominator.
pub type Rational = num::BigRational;

/// Shorthand constructor for small rationals. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand constructor for small integers viewed as rationals.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Dense rational matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    /// Builds a matrix from row-major data.
    ///
    /// # Panics
    /// Panics if `data.len() != rows * cols` or either dimension is zero.
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        assert_eq!(data.len(), rows * cols, "row-major data length mismatch");
        RatMatrix { rows, cols, data }
    }

    /// Builds a matrix by evaluating `f(row, col)` per entry.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RatMatrix::new(rows, cols, data)
    }

    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix::new(rows, cols, vec![Rational::zero(); rows * cols])
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        RatMatrix::from_fn(n, n, |r, c| {
            if r == c {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r * self.cols + c] = value;
    }

    /// Row `r` as a contiguous slice.
    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Column `c` as an owned vector.
    pub fn col(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    /// Matrix product `self * other`.
    ///
    /// Computed on denominator-cleared integer data (one reduction per output
    /// entry instead of one per partial product).
    ///
    /// # Panics
    /// Panics if `self.cols != other.rows`.
    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let (a, sa) = scale_all_to_int(&self.data);
        let (b, sb) = scale_all_to_int(&other.data);
        let denom = sa * sb;
        let mut acc = vec![BigInt::zero(); self.rows * other.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let av = &a[r * self.cols + k];
                if av.is_zero() {
                    continue;
                }
                let out_base = r * other.cols;
                let b_base = k * other.cols;
                for c in 0..other.cols {
                    let bv = &b[b_base + c];
                    if !bv.is_zero() {
                        acc[out_base + c] += av * bv;
                    }
                }
            }
        }
        RatMatrix::new(
            self.rows,
            other.cols,
            acc.into_iter()
                .map(|n| Rational::new(n, denom.clone()))
                .collect(),
        )
    }

    /// Matrix-vector product `self * v`.
    ///
    /// # Panics
    /// Panics if `v.len() != self.cols`.
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for (a, x) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Exact determinant by fraction-free elimination.
    ///
    /// # Panics
    /// Panics if the matrix is not square.
    pub fn determinant(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let (rows, scales) = scale_rows_to_int(self, &[]);
        let ech = bareiss_echelon(rows, n);
        if ech.pivot_cols.len() < n {
            return Rational::zero();
        }
        // One-step Bareiss leaves det(scaled) in the last diagonal entry.
        let mut det = Rational::from_integer(ech.rows[n - 1][n - 1].clone());
        if ech.swaps % 2 == 1 {
            det = -det;
        }
        let mut denom = BigInt::one();
        for s in scales {
            denom *= s;
        }
        det / Rational::from_integer(denom)
    }

    /// Rank over Q.
    pub fn rank(&self) -> usize {
        let (rows, _) = scale_rows_to_int(self, &[]);
        bareiss_echelon(rows, self.cols).pivot_cols.len()
    }

    /// Solves `self * x = b` exactly.
    ///
    /// Returns `None` when the system is inconsistent. Underdetermined systems
    /// get the canonical solution with every free variable set to zero.
    ///
    /// # Panics
    /// Panics if `b.len() != self.rows`.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let rhs = RatMatrix::new(self.rows, 1, b.to_vec());
        self.solve_many(&rhs).map(|m| m.col(0))
    }

    /// Solves `self * X = B` for all columns of `B` with one elimination.
    ///
    /// Returns `None` if any column is inconsistent; free variables are zero.
    ///
    /// # Panics
    /// Panics if `B.rows != self.rows`.
    pub fn solve_many(&self, b: &RatMatrix) -> Option<RatMatrix> {
        assert_eq!(b.rows, self.rows, "right-hand side row count mismatch");
        let n = self.cols;
        let (rows, _) = scale_rows_to_int(self, &[b]);
        let ech = bareiss_echelon(rows, n);
        let rank = ech.pivot_cols.len();
        // Rows below the rank have an all-zero coefficient part; any nonzero
        // right-hand side entry there means the column is inconsistent.
        for r in rank..self.rows {
            for c in n..n + b.cols {
                if !ech.rows[r][c].is_zero() {
                    return None;
                }
            }
        }
        let mut out = RatMatrix::zeros(n, b.cols);
        for bc in 0..b.cols {
            let mut x = vec![Rational::zero(); n];
            for (idx, &pc) in ech.pivot_cols.iter().enumerate().rev() {
                let row = &ech.rows[idx];
                let mut acc = Rational::from_integer(row[n + bc].clone());
                for c in pc + 1..n {
                    if !row[c].is_zero() && !x[c].is_zero() {
                        acc -= Rational::from_integer(row[c].clone()) * &x[c];
                    }
                }
                x[pc] = acc / Rational::from_integer(row[pc].clone());
            }
            for (r, v) in x.into_iter().enumerate() {
                out.set(r, bc, v);
            }
        }
        Some(out)
    }

    /// Exact inverse; `None` when singular.
    ///
    /// # Panics
    /// Panics if the matrix is not square.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        if self.rank() < self.rows {
            return None;
        }
        self.solve_many(&RatMatrix::identity(self.rows))
    }

    /// Basis of the right kernel `{ x : self * x = 0 }`.
    ///
    /// One vector per free column, pivot-normalized: the free coordinate is 1,
    /// every other free coordinate is 0, and pivot coordinates are solved
    /// exactly. Full-rank square matrices return an empty basis.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let n = self.cols;
        let (rows, _) = scale_rows_to_int(self, &[]);
        let ech = bareiss_echelon(rows, n);
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; n];
            for &pc in &ech.pivot_cols {
                v[pc] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for f in 0..n {
            if pivot_set[f] {
                continue;
            }
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (idx, &pc) in ech.pivot_cols.iter().enumerate().rev() {
                if pc > f {
                    continue;
                }
                let row = &ech.rows[idx];
                let mut acc = Rational::zero();
                for c in pc + 1..n {
                    if !row[c].is_zero() && !v[c].is_zero() {
                        acc -= Rational::from_integer(row[c].clone()) * &v[c];
                    }
                }
                v[pc] = acc / Rational::from_integer(row[pc].clone());
            }
            basis.push(v);
        }
        basis
    }
}

/// Clears denominators across a whole slice: returns the entries multiplied
/// by the lcm `s` of every denominator, as integers, together with `s`.
/// Equalities and identities that are homogeneous in the data can then be
/// checked entirely over the integers.
pub(crate) fn scale_all_to_int(vals: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let mut s = BigInt::one();
    for v in vals {
        s = s.lcm(v.denom());
    }
    let ints = vals.iter().map(|v| v.numer() * (&s / v.denom())).collect();
    (ints, s)
}

struct IntEchelon {
    rows: Vec<Vec<BigInt>>,
    /// Pivot columns in increasing order; row `i` pivots at `pivot_cols[i]`.
    pivot_cols: Vec<usize>,
    /// Number of row swaps performed (determinant sign parity).
    swaps: usize,
}

/// Clears denominators: each row of `a` (with the matching rows of `extra`
/// appended) is scaled by the lcm of its denominators. Returns the integer
/// rows and the per-row scale factors.
fn scale_rows_to_int(a: &RatMatrix, extra: &[&RatMatrix]) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut rows = Vec::with_capacity(a.rows);
    let mut scales = Vec::with_capacity(a.rows);
    for r in 0..a.rows {
        let mut lcm = BigInt::one();
        let mut cells: Vec<&Rational> = a.row(r).iter().collect();
        for e in extra {
            cells.extend(e.row(r).iter());
        }
        for v in &cells {
            lcm = lcm.lcm(v.denom());
        }
        let row: Vec<BigInt> = cells
            .iter()
            .map(|v| v.numer() * (&lcm / v.denom()))
            .collect();
        rows.push(row);
        scales.push(lcm);
    }
    (rows, scales)
}

/// One-step Bareiss fraction-free elimination.
///
/// Pivot candidates are restricted to columns `< pivot_limit` so appended
/// right-hand sides are never pivoted on. Pivoting is deterministic: columns
/// in order, first row with a nonzero entry. The division by the previous
/// pivot is exact (entries of the reduced tableau are minors of the input);
/// this is asserted in debug builds.
fn bareiss_echelon(mut rows: Vec<Vec<BigInt>>, pivot_limit: usize) -> IntEchelon {
    let nrows = rows.len();
    let ncols = if nrows == 0 { 0 } else { rows[0].len() };
    let mut prev = BigInt::one();
    let mut piv_row = 0usize;
    let mut pivot_cols = Vec::new();
    let mut swaps = 0usize;
    for col in 0..pivot_limit.min(ncols) {
        if piv_row >= nrows {
            break;
        }
        let Some(r) = (piv_row..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        if r != piv_row {
            rows.swap(r, piv_row);
            swaps += 1;
        }
        let pivot = rows[piv_row][col].clone();
        let (upper, lower) = rows.split_at_mut(piv_row + 1);
        let pivot_row = &upper[piv_row];
        for row in lower.iter_mut() {
            let factor = row[col].clone();
            for (cell, piv_cell) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                let num = &pivot * &*cell - &factor * piv_cell;
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                *cell = q;
            }
        }
        prev = pivot;
        pivot_cols.push(col);
        piv_row += 1;
    }
    IntEchelon {
        rows,
        pivot_cols,
        swaps,
    }
}
