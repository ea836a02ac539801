//! Exact linear algebra over the rationals or a prime field.

mod echelon;
mod scalar;

use std::ops::{Add, Index, IndexMut, Neg, Sub};

use rand::Rng;
use thiserror::Error;

pub use echelon::{kernel, rank, rref, solve_in_span, span_basis, EchelonBasis, Rref};
pub use scalar::{Field, Fp, Rational, Scalar, DEFAULT_PRIME};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live over different fields")]
    MixedField,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid prime modulus {0}")]
    InvalidModulus(u64),
    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),
    #[error("random sampling needs a prime field")]
    RationalSampling,
}

fn check_fields<'a>(field: Field, xs: impl IntoIterator<Item = &'a Scalar>) -> Result<(), LinalgError> {
    if xs.into_iter().all(|x| x.field() == field) {
        Ok(())
    } else {
        Err(LinalgError::MixedField)
    }
}

/// Dense column vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector {
    field: Field,
    entries: Vec<Scalar>,
}

impl Vector {
    pub fn zeros(field: Field, n: usize) -> Vector {
        Vector { field, entries: vec![field.zero(); n] }
    }

    pub fn basis(field: Field, n: usize, i: usize) -> Vector {
        let mut v = Vector::zeros(field, n);
        v.entries[i] = field.one();
        v
    }

    pub fn new(field: Field, entries: Vec<Scalar>) -> Result<Vector, LinalgError> {
        check_fields(field, &entries)?;
        Ok(Vector { field, entries })
    }

    pub fn from_i64(field: Field, xs: &[i64]) -> Vector {
        Vector { field, entries: xs.iter().map(|&x| field.int(x)).collect() }
    }

    /// Concatenation; all parts must share `field`.
    pub fn concat(field: Field, parts: &[Vector]) -> Result<Vector, LinalgError> {
        if parts.iter().any(|p| p.field != field) {
            return Err(LinalgError::MixedField);
        }
        Ok(Vector { field, entries: parts.iter().flat_map(|p| p.entries.iter().cloned()).collect() })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.entries.iter().position(|x| !x.is_zero())
    }

    /// Indices and values of the nonzero entries.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().enumerate().filter(|(_, x)| !x.is_zero())
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zeros(self.field, self.len());
        }
        Vector { field: self.field, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &Scalar, other: &Vector) {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        if c.is_zero() {
            return;
        }
        for (x, y) in self.entries.iter_mut().zip(&other.entries) {
            if !y.is_zero() {
                *x += &(c * y);
            }
        }
    }

    pub fn slice(&self, start: usize, end: usize) -> Vector {
        Vector { field: self.field, entries: self.entries[start..end].to_vec() }
    }

    /// Converts every entry to `field` (rational to prime reduction).
    pub fn convert(&self, field: Field) -> Result<Vector, LinalgError> {
        let entries = self.entries.iter().map(|x| x.convert(field)).collect::<Result<_, _>>()?;
        Ok(Vector { field, entries })
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.entries[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut Scalar {
        &mut self.entries[i]
    }
}

impl<'a> Add<&'a Vector> for &'a Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        let mut out = self.clone();
        out.axpy(&self.field.one(), rhs);
        out
    }
}

impl<'a> Sub<&'a Vector> for &'a Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        let mut out = self.clone();
        out.axpy(&self.field.int(-1), rhs);
        out
    }
}

impl Add for Vector {
    type Output = Vector;
    fn add(mut self, rhs: Vector) -> Vector {
        let one = self.field.one();
        self.axpy(&one, &rhs);
        self
    }
}

impl Sub for Vector {
    type Output = Vector;
    fn sub(mut self, rhs: Vector) -> Vector {
        let m = self.field.int(-1);
        self.axpy(&m, &rhs);
        self
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector { field: self.field, entries: self.entries.iter().map(|x| -x).collect() }
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        -&self
    }
}

/// Dense row-major matrix. Column `j` is the image of the `j`-th basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(LinalgError::DimensionMismatch { expected: cols, found: bad.len() });
        }
        let n = rows.len();
        let data: Vec<Scalar> = rows.into_iter().flatten().collect();
        check_fields(field, &data)?;
        Ok(Matrix { field, rows: n, cols, data })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let r = rows.iter().map(|row| row.iter().map(|&x| field.int(x)).collect()).collect();
        Matrix::from_rows(field, r).expect("rectangular integer matrix")
    }

    /// Matrix whose rows are the given vectors.
    pub fn from_row_vectors(field: Field, cols: usize, rows: &[Vector]) -> Result<Matrix, LinalgError> {
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.field != field {
                return Err(LinalgError::MixedField);
            }
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch { expected: cols, found: r.len() });
            }
            m.data[i * cols..(i + 1) * cols].clone_from_slice(&r.entries);
        }
        Ok(m)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, cols: &[Vector]) -> Result<Matrix, LinalgError> {
        Ok(Matrix::from_row_vectors(field, rows, cols)?.transpose())
    }

    /// Reshapes a length `rows * cols` vector in row-major order.
    pub fn from_flat(v: &Vector, rows: usize, cols: usize) -> Result<Matrix, LinalgError> {
        if v.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch { expected: rows * cols, found: v.len() });
        }
        Ok(Matrix { field: v.field, rows, cols, data: v.entries.clone() })
    }

    pub fn flatten(&self) -> Vector {
        Vector { field: self.field, entries: self.data.clone() }
    }

    pub fn field(&self) -> Field {
        self.field
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn row(&self, i: usize) -> Vector {
        Vector { field: self.field, entries: self.data[i * self.cols..(i + 1) * self.cols].to_vec() }
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector { field: self.field, entries: (0..self.rows).map(|i| self[(i, j)].clone()).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    /// `M v`, panicking on a length mismatch.
    pub fn apply(&self, v: &Vector) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        let mut out = Vector::zeros(self.field, self.rows);
        for (j, x) in v.support() {
            for i in 0..self.rows {
                let a = &self.data[i * self.cols + j];
                if !a.is_zero() {
                    out.entries[i] += &(a * x);
                }
            }
        }
        out
    }

    pub fn try_apply(&self, v: &Vector) -> Result<Vector, LinalgError> {
        if self.field != v.field {
            return Err(LinalgError::MixedField);
        }
        if self.cols != v.len() {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok(self.apply(v))
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if self.field != rhs.field {
            return Err(LinalgError::MixedField);
        }
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        Ok(self * rhs)
    }

    /// `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &Matrix) -> Matrix {
        &(self * rhs) - &(rhs * self)
    }

    pub fn convert(&self, field: Field) -> Result<Matrix, LinalgError> {
        let data = self.data.iter().map(|x| x.convert(field)).collect::<Result<_, _>>()?;
        Ok(Matrix { field, rows: self.rows, cols: self.cols, data })
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> std::ops::Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix dimension mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

fn zip_matrices(a: &Matrix, b: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
    assert!(a.rows == b.rows && a.cols == b.cols, "matrix dimension mismatch");
    Matrix { field: a.field, rows: a.rows, cols: a.cols, data: a.data.iter().zip(&b.data).map(|(x, y)| f(x, y)).collect() }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        zip_matrices(self, rhs, |x, y| x + y)
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        zip_matrices(self, rhs, |x, y| x - y)
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&self.field.int(-1))
    }
}

/// Uniformly random vector over a prime field.
pub fn random_vector<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> Result<Vector, LinalgError> {
    match field {
        Field::Rational => Err(LinalgError::RationalSampling),
        Field::Prime(p) => Ok(Vector {
            field,
            entries: (0..n).map(|_| Scalar::Prime(Fp::new(rng.gen_range(0..p), p))).collect(),
        }),
    }
}

/// Test vector for randomized identity checks: uniform over a prime field,
/// small integers in `[-10, 10]` over the rationals.
pub fn sample_vector<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> Vector {
    match field {
        Field::Prime(_) => random_vector(field, n, rng).expect("prime field"),
        Field::Rational => Vector { field, entries: (0..n).map(|_| field.int(rng.gen_range(-10..=10))).collect() },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn matrix_product_and_application() {
        let f = Field::Rational;
        let a = Matrix::from_i64(f, &[&[1, 2], &[3, 4]]);
        let b = Matrix::from_i64(f, &[&[0, 1], &[1, 0]]);
        assert_eq!(&a * &b, Matrix::from_i64(f, &[&[2, 1], &[4, 3]]));
        assert_eq!(a.apply(&Vector::from_i64(f, &[1, -1])), Vector::from_i64(f, &[-1, -1]));
        assert_eq!(a.commutator(&a), Matrix::zeros(f, 2, 2));
        assert_eq!(a.column(1), Vector::from_i64(f, &[2, 4]));
    }

    #[test]
    fn mixed_inputs_are_rejected() {
        let q = Field::Rational;
        let p = Field::prime(5).unwrap();
        assert_eq!(Vector::new(q, vec![q.one(), p.one()]), Err(LinalgError::MixedField));
        let a = Matrix::identity(q, 2);
        assert_eq!(a.try_apply(&Vector::zeros(p, 2)), Err(LinalgError::MixedField));
        assert_eq!(
            a.try_apply(&Vector::zeros(q, 3)),
            Err(LinalgError::DimensionMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn random_vectors_are_seeded() {
        let f = Field::default_prime();
        let a = random_vector(f, 8, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = random_vector(f, 8, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
        assert!(random_vector(Field::Rational, 3, &mut ChaCha8Rng::seed_from_u64(0)).is_err());
    }
}
