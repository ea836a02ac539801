use super::{Field, LinalgError, Matrix, Scalar, Vector};

/// Reduced row echelon form of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    /// Pivot column of each nonzero row, increasing.
    pub pivots: Vec<usize>,
    pub rank: usize,
}

pub fn rref(m: &Matrix) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else { continue };
        if p != r {
            for j in 0..cols {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = tmp;
            }
        }
        let inv = a[(r, c)].inv().expect("nonzero pivot");
        for j in c..cols {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                if !a[(r, j)].is_zero() {
                    let d = &f * &a[(r, j)];
                    a[(i, j)] -= &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: a, rank: pivots.len(), pivots }
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).rank
}

/// Basis of `{x : m x = 0}`, one vector per free column.
pub fn kernel(m: &Matrix) -> Vec<Vector> {
    let Rref { matrix, pivots, .. } = rref(m);
    let field = m.field();
    let free = (0..m.cols()).filter(|c| !pivots.contains(c));
    free.map(|f| {
        let mut x = Vector::zeros(field, m.cols());
        x[f] = field.one();
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = -&matrix[(r, f)];
        }
        x
    })
    .collect()
}

/// Incrementally maintained basis of a subspace, kept fully reduced with rows sorted by pivot.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: Field,
    len: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(field: Field, len: usize) -> EchelonBasis {
        EchelonBasis { field, len, rows: Vec::new(), pivots: Vec::new() }
    }

    fn check(&self, v: &Vector) -> Result<(), LinalgError> {
        if v.field() != self.field {
            return Err(LinalgError::MixedField);
        }
        if v.len() != self.len {
            return Err(LinalgError::DimensionMismatch { expected: self.len, found: v.len() });
        }
        Ok(())
    }

    fn reduce(&self, v: &mut Vector) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = -&v[p];
                v.axpy(&c, row);
            }
        }
    }

    /// Adds `v` to the span. Returns whether the rank grew.
    pub fn insert(&mut self, v: &Vector) -> Result<bool, LinalgError> {
        self.check(v)?;
        let mut v = v.clone();
        self.reduce(&mut v);
        let Some(q) = v.first_nonzero() else { return Ok(false) };
        let inv = v[q].inv()?;
        let v = v.scale(&inv);
        for row in &mut self.rows {
            if !row[q].is_zero() {
                let c = -&row[q];
                row.axpy(&c, &v);
            }
        }
        let at = self.pivots.partition_point(|&p| p < q);
        self.rows.insert(at, v);
        self.pivots.insert(at, q);
        Ok(true)
    }

    pub fn contains(&self, v: &Vector) -> Result<bool, LinalgError> {
        self.check(v)?;
        let mut v = v.clone();
        self.reduce(&mut v);
        Ok(v.is_zero())
    }

    /// What is left of `v` after eliminating every pivot; zero exactly when `v` is in the span.
    pub fn residual(&self, v: &Vector) -> Result<Vector, LinalgError> {
        self.check(v)?;
        let mut v = v.clone();
        self.reduce(&mut v);
        Ok(v)
    }

    /// Coordinates of `v` in the stored rows, or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &Vector) -> Result<Option<Vec<Scalar>>, LinalgError> {
        self.check(v)?;
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.clone();
        for (row, c) in self.rows.iter().zip(&coords) {
            rest.axpy(&-c, row);
        }
        Ok(rest.is_zero().then_some(coords))
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn into_rows(self) -> Vec<Vector> {
        self.rows
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }
}

/// Canonical basis of the span: the nonzero rows of the RREF, ordered by pivot.
pub fn span_basis(vs: &[Vector]) -> Result<Vec<Vector>, LinalgError> {
    let Some(first) = vs.first() else { return Ok(Vec::new()) };
    let mut b = EchelonBasis::new(first.field(), first.len());
    for v in vs {
        b.insert(v)?;
    }
    Ok(b.into_rows())
}

/// Coefficients `c` with `sum c_i basis_i = v`, or `None` if `v` is outside the span.
///
/// `basis` need not be independent; the first solution found by elimination is returned
/// and verified against `v` before being handed back.
pub fn solve_in_span(basis: &[Vector], v: &Vector) -> Result<Option<Vec<Scalar>>, LinalgError> {
    let field = v.field();
    if basis.iter().any(|b| b.field() != field) {
        return Err(LinalgError::MixedField);
    }
    if let Some(b) = basis.iter().find(|b| b.len() != v.len()) {
        return Err(LinalgError::DimensionMismatch { expected: v.len(), found: b.len() });
    }
    let k = basis.len();
    // Augmented system [B | v] with the basis vectors as columns.
    let mut cols = basis.to_vec();
    cols.push(v.clone());
    let aug = Matrix::from_columns(field, v.len(), &cols)?;
    let Rref { matrix, pivots, .. } = rref(&aug);
    if pivots.last() == Some(&k) {
        return Ok(None);
    }
    let mut x = vec![field.zero(); k];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = matrix[(r, k)].clone();
    }
    let mut check = Vector::zeros(field, v.len());
    for (c, b) in x.iter().zip(basis) {
        check.axpy(c, b);
    }
    assert_eq!(&check, v, "span solution failed verification");
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_of_rank_deficient_matrix() {
        let f = Field::Rational;
        let m = Matrix::from_i64(f, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let r = rref(&m);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.matrix.row(0), Vector::from_i64(f, &[1, 0, 1]));
        assert_eq!(r.matrix.row(1), Vector::from_i64(f, &[0, 1, 1]));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = Field::prime(7).unwrap();
        let m = Matrix::from_i64(f, &[&[1, 2, 3, 4], &[2, 4, 6, 2]]);
        let k = kernel(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).is_zero());
        }
    }

    #[test]
    fn echelon_basis_matches_span_basis() {
        let f = Field::Rational;
        let vs = [Vector::from_i64(f, &[0, 2, 4]), Vector::from_i64(f, &[1, 1, 1]), Vector::from_i64(f, &[1, 2, 3])];
        let rows = span_basis(&vs).unwrap();
        assert_eq!(rows, vec![Vector::from_i64(f, &[1, 0, -1]), Vector::from_i64(f, &[0, 1, 2])]);
        let mut b = EchelonBasis::new(f, 3);
        assert!(b.insert(&vs[0]).unwrap());
        assert!(b.insert(&vs[1]).unwrap());
        assert!(!b.insert(&vs[2]).unwrap());
        let c = b.coordinates(&Vector::from_i64(f, &[2, 3, 4])).unwrap().unwrap();
        assert_eq!(c, vec![f.int(2), f.int(3)]);
        assert!(b.coordinates(&Vector::from_i64(f, &[0, 0, 1])).unwrap().is_none());
    }

    #[test]
    fn solve_with_dependent_generators() {
        let f = Field::Rational;
        let basis = [Vector::from_i64(f, &[1, 0]), Vector::from_i64(f, &[2, 0])];
        let x = solve_in_span(&basis, &Vector::from_i64(f, &[3, 0])).unwrap().unwrap();
        assert_eq!(x, vec![f.int(3), f.zero()]);
        assert!(solve_in_span(&basis, &Vector::from_i64(f, &[0, 1])).unwrap().is_none());
        assert!(solve_in_span(&[], &Vector::zeros(f, 2)).unwrap().unwrap().is_empty());
    }
}
