//! Exact dense linear algebra over the rationals.
//!
//! Elimination runs fraction-free on arbitrary-precision integers: each row is first scaled by
//! the lcm of its denominators, then reduced with Bareiss' one-step division scheme. Pivots are
//! always the first nonzero entry of the leftmost remaining column, so bases come out the same on
//! every run.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// A dense vector of rationals.
pub type Vector = Vec<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len(), "dot product of vectors of different length");
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must equal rows * cols");
        RationalMatrix { rows, cols, data: entries.iter().map(|&x| rat(x)).collect() }
    }

    pub fn from_rows(rows: &[Vector]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`RationalMatrix::from_rows`] but keeps the column count when `rows` is empty.
    pub fn from_rows_with_cols(rows: &[Vector], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        RationalMatrix { rows: rows.len(), cols, data }
    }

    /// Builds a `len x columns.len()` matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vector], len: usize) -> Self {
        let mut m = Self::zeros(len, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), len, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Rational) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RationalMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(self.cols, v.len(), "vector length differs from column count");
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        RationalMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &RationalMatrix) -> Self {
        assert_eq!(self.rows, other.rows, "hstack needs equal row counts");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &RationalMatrix) -> Self {
        assert_eq!(self.cols, other.cols, "vstack needs equal column counts");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RationalMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }
}

impl std::ops::Neg for &RationalMatrix {
    type Output = RationalMatrix;
    fn neg(self) -> RationalMatrix {
        RationalMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

/// Integer row-echelon form produced by fraction-free elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn integer_rows(m: &RationalMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|r| {
            let row = m.row(r);
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect()
}

fn echelon(m: &RationalMatrix) -> Echelon {
    let mut rows = integer_rows(m);
    let cols = m.cols();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut k = 0;
    for col in 0..cols {
        if k == rows.len() {
            break;
        }
        let Some(p) = (k..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(k, p);
        let pivot = rows[k][col].clone();
        let (upper, lower) = rows.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        for row in lower {
            let factor = row[col].clone();
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = (&pivot * &*x - &factor * y) / &prev;
            }
        }
        // rows above k keep their old scale; entries left of `col` in rows below are zero
        prev = pivot;
        pivots.push(col);
        k += 1;
    }
    rows.truncate(k);
    Echelon { rows, pivots }
}

impl Echelon {
    /// Reduced row echelon form over the rationals, one row per pivot.
    fn reduced(&self) -> Vec<Vector> {
        let mut red: Vec<Vector> = self
            .rows
            .iter()
            .zip(&self.pivots)
            .map(|(row, &p)| {
                let lead = Rational::from_integer(row[p].clone());
                row.iter().map(|x| Rational::from_integer(x.clone()) / &lead).collect()
            })
            .collect();
        for i in (0..red.len()).rev() {
            let p = self.pivots[i];
            let (above, rest) = red.split_at_mut(i);
            let pivot_row = &rest[0];
            for row in above {
                let f = row[p].clone();
                if f.is_zero() {
                    continue;
                }
                for (x, y) in row[p..].iter_mut().zip(&pivot_row[p..]) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        red
    }
}

pub fn rank(m: &RationalMatrix) -> usize {
    echelon(m).pivots.len()
}

/// Basis of the right null space. One vector per free column, ascending; each has a 1 in its
/// free column and 0 in the other free columns.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vector> {
    let ech = echelon(m);
    let red = ech.reduced();
    let mut is_pivot = vec![false; m.cols()];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..m.cols())
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = zero_vector(m.cols());
            v[free] = Rational::one();
            for (row, &p) in red.iter().zip(&ech.pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

/// Basis of the column space: the pivot columns of `m` itself.
pub fn image_basis(m: &RationalMatrix) -> Vec<Vector> {
    echelon(m).pivots.iter().map(|&c| m.column(c)).collect()
}

/// Exact solution of `m x = b`, or `None` when the system is inconsistent. Free variables are 0.
pub fn solve(m: &RationalMatrix, b: &[Rational]) -> Option<Vector> {
    assert_eq!(b.len(), m.rows(), "right-hand side length must equal row count");
    let aug = m.hstack(&RationalMatrix::from_columns(&[b.to_vec()], m.rows()));
    let ech = echelon(&aug);
    if ech.pivots.last() == Some(&m.cols()) {
        return None;
    }
    let red = ech.reduced();
    let mut x = zero_vector(m.cols());
    for (row, &p) in red.iter().zip(&ech.pivots) {
        x[p] = row[m.cols()].clone();
    }
    Some(x)
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse(m: &RationalMatrix) -> Option<RationalMatrix> {
    assert_eq!(m.rows(), m.cols(), "inverse of a non-square matrix");
    let n = m.rows();
    let ech = echelon(&m.hstack(&RationalMatrix::identity(n)));
    if ech.pivots.iter().take(n).copied().ne(0..n) {
        return None;
    }
    let red = ech.reduced();
    let mut inv = RationalMatrix::zeros(n, n);
    for (r, row) in red.iter().enumerate().take(n) {
        for c in 0..n {
            inv.set(r, c, row[n + c].clone());
        }
    }
    Some(inv)
}

/// Orthogonal projection of `v` onto the span of `basis` under the standard inner product.
/// The basis may be linearly dependent.
pub fn project_orthogonal(v: &[Rational], basis: &[Vector]) -> Vector {
    let coeffs = projection_coefficients(v, basis);
    combine(&coeffs, basis, v.len())
}

/// Coefficients `c` with `Σ c_i basis_i` equal to the projection of `v` onto the span.
pub fn projection_coefficients(v: &[Rational], basis: &[Vector]) -> Vector {
    if basis.is_empty() {
        return Vec::new();
    }
    let k = basis.len();
    let mut gram = RationalMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let d = dot(&basis[i], &basis[j]);
            gram.set(j, i, d.clone());
            gram.set(i, j, d);
        }
    }
    let rhs: Vector = basis.iter().map(|b| dot(b, v)).collect();
    solve(&gram, &rhs).expect("normal equations are always consistent")
}

/// `Σ coeffs_i vectors_i`.
pub fn combine(coeffs: &[Rational], vectors: &[Vector], len: usize) -> Vector {
    let mut out = zero_vector(len);
    for (c, b) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            if !x.is_zero() {
                *o += c * x;
            }
        }
    }
    out
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(v: &[Rational], basis: &[Vector]) -> bool {
    if is_zero_vector(v) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let m = RationalMatrix::from_columns(basis, v.len());
    solve(&m, v).is_some()
}

/// Whether two families span the same subspace of a space of dimension `len`.
pub fn same_span(a: &[Vector], b: &[Vector], len: usize) -> bool {
    let ma = RationalMatrix::from_rows_with_cols(a, len);
    let mb = RationalMatrix::from_rows_with_cols(b, len);
    let ra = rank(&ma);
    ra == rank(&mb) && ra == rank(&ma.vstack(&mb))
}

/// Largest absolute value among numerators and denominators, for quick size checks.
pub fn max_height(m: &RationalMatrix) -> BigInt {
    m.entries()
        .iter()
        .map(|x| x.numer().abs().max(x.denom().clone()))
        .max()
        .unwrap_or_else(BigInt::zero)
}
