use super::{Algebra, AlgebraError};
use crate::linalg::{Field, Matrix, Vector};

/// Which constraints the base algebra `B` must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZornFlavor {
    /// `B` anticommutative with `x̄ = -x`, plus `x(yz) = (y|x)z - (x|z)y` and
    /// `(x|yz) = (y|zx) = (z|xy)`; these are exactly the conditions for the skew-associator law.
    AnticommutativeSkew,
    /// Only the form compatibility `(ȳ|x̄) = (x|y)` is enforced.
    General,
}

/// Base data remembered by Zorn algebras, used to rebuild their canonical bilinear form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZornData {
    pub bdim: usize,
    /// Gram matrix of `(·|·)` on `B`.
    pub bform: Matrix,
}

/// Zorn vector-matrix algebra over `B`.
///
/// Basis order is `e, d, x1..xk, y1..yk` with `e` the unit matrix and `d = diag(1, -1)`,
/// so an element `c_e e + c_d d + x + y` is the matrix `(c_e + c_d, x; y, c_e - c_d)`.
/// `bproduct[i * k + j]` is the product of the `i`-th and `j`-th basis elements of `B`,
/// and column `i` of `binv` is the conjugate of the `i`-th one.
pub fn zorn(
    name: &str,
    field: Field,
    bproduct: &[Vector],
    bform: &Matrix,
    binv: &Matrix,
    flavor: ZornFlavor,
) -> Result<Algebra, AlgebraError> {
    let k = bform.rows();
    if bform.cols() != k || binv.rows() != k || binv.cols() != k {
        return Err(AlgebraError::DimensionMismatch { expected: k, found: bform.cols().max(binv.rows()) });
    }
    if bproduct.len() != k * k {
        return Err(AlgebraError::DimensionMismatch { expected: k * k, found: bproduct.len() });
    }
    if let Some(v) = bproduct.iter().find(|v| v.len() != k) {
        return Err(AlgebraError::DimensionMismatch { expected: k, found: v.len() });
    }
    let form = |x: &Vector, y: &Vector| {
        let mut s = field.zero();
        for (i, xi) in x.support() {
            for (j, yj) in y.support() {
                s += &(&(xi * yj) * &bform[(i, j)]);
            }
        }
        s
    };
    let bmul = |x: &Vector, y: &Vector| {
        let mut out = Vector::zeros(field, k);
        for (i, xi) in x.support() {
            for (j, yj) in y.support() {
                out.axpy(&(xi * yj), &bproduct[i * k + j]);
            }
        }
        out
    };
    let b = |i: usize| Vector::basis(field, k, i);
    for i in 0..k {
        for j in 0..k {
            if form(&binv.column(j), &binv.column(i)) != bform[(i, j)] {
                return Err(AlgebraError::ZornFormSymmetry(i, j));
            }
        }
    }
    if flavor == ZornFlavor::AnticommutativeSkew {
        let law = |law, indices| Err(AlgebraError::ZornSkewLaw { law, indices });
        if *binv != -&Matrix::identity(field, k) {
            return law("skew involution x̄ = -x", Vec::new());
        }
        for i in 0..k {
            for j in 0..k {
                if !(bmul(&b(i), &b(j)) + bmul(&b(j), &b(i))).is_zero() {
                    return law("anticommutativity", vec![i, j]);
                }
                for l in 0..k {
                    let (x, y, z) = (b(i), b(j), b(l));
                    let lhs = bmul(&x, &bmul(&y, &z));
                    let rhs = z.scale(&form(&y, &x)) - y.scale(&form(&x, &z));
                    if lhs != rhs {
                        return law("x(yz) = (y|x)z - (x|z)y", vec![i, j, l]);
                    }
                    let (p, q, r) = (form(&x, &bmul(&y, &z)), form(&y, &bmul(&z, &x)), form(&z, &bmul(&x, &y)));
                    if p != q || q != r {
                        return law("(x|yz) = (y|zx) = (z|xy)", vec![i, j, l]);
                    }
                }
            }
        }
    }

    let n = 2 + 2 * k;
    let half = field.ratio(1, 2)?;
    // Split a coordinate vector into the matrix entries (α, x; y, β) and back.
    let split = |v: &Vector| (&v[0] + &v[1], v.slice(2, 2 + k), v.slice(2 + k, n), &v[0] - &v[1]);
    let join = |a: crate::linalg::Scalar, x: Vector, y: Vector, bt: crate::linalg::Scalar| {
        let mut v = Vector::zeros(field, n);
        v[0] = &(&a + &bt) * &half;
        v[1] = &(&a - &bt) * &half;
        for i in 0..k {
            v[2 + i] = x[i].clone();
            v[2 + k + i] = y[i].clone();
        }
        v
    };
    let zmul = |p: &Vector, q: &Vector| {
        let (a1, x1, y1, b1) = split(p);
        let (a2, x2, y2, b2) = split(q);
        let a = &(&a1 * &a2) + &form(&x1, &y2);
        let bt = &(&b1 * &b2) + &form(&y1, &x2);
        let x = x2.scale(&a1) + x1.scale(&b2) + bmul(&y1, &y2);
        let y = y1.scale(&a2) + y2.scale(&b1) + bmul(&x1, &x2);
        join(a, x, y, bt)
    };
    let e = |i: usize| Vector::basis(field, n, i);
    let products: Vec<Vector> = (0..n * n).map(|ij| zmul(&e(ij / n), &e(ij % n))).collect();
    let inv_cols: Vec<Vector> = (0..n)
        .map(|i| {
            let (a, x, y, bt) = split(&e(i));
            join(bt, binv.apply(&x), binv.apply(&y), a)
        })
        .collect();
    let inv = Matrix::from_columns(field, n, &inv_cols)?;
    let mut basis = vec!["e".to_string(), "d".to_string()];
    basis.extend((1..=k).map(|i| format!("x{i}")));
    basis.extend((1..=k).map(|i| format!("y{i}")));
    let mut alg = Algebra::from_table(name, field, basis, &products, e(0), inv)?;
    alg.set_zorn(ZornData { bdim: k, bform: bform.clone() });
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cross_table(f: Field) -> Vec<Vector> {
        let mut t = vec![Vector::zeros(f, 3); 9];
        for (i, j, l) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            t[i * 3 + j] = Vector::basis(f, 3, l);
            t[j * 3 + i] = -&Vector::basis(f, 3, l);
        }
        t
    }

    #[test]
    fn mixed_product_lands_in_corner() {
        let f = Field::Rational;
        let a = zorn("q", f, &[Vector::zeros(f, 1)], &Matrix::identity(f, 1), &-&Matrix::identity(f, 1), ZornFlavor::AnticommutativeSkew)
            .unwrap();
        // X1 = (0, x; 0, 0), X2 = (0, 0; y, 0): product is ((x|y), 0; 0, 0) = (e + d) / 2.
        let x = a.basis_vector(2);
        let y = a.basis_vector(3);
        let h = f.ratio(1, 2).unwrap();
        assert_eq!(a.mul(&x, &y), Vector::new(f, vec![h.clone(), h, f.zero(), f.zero()]).unwrap());
        assert_eq!(a.mul(a.unit(), &x), x);
    }

    #[test]
    fn unit_form_cross_product_is_rejected_by_skew_flavor() {
        let f = Field::Rational;
        let err = zorn("o", f, &cross_table(f), &Matrix::identity(f, 3), &-&Matrix::identity(f, 3), ZornFlavor::AnticommutativeSkew)
            .unwrap_err();
        assert!(matches!(err, AlgebraError::ZornSkewLaw { law: "x(yz) = (y|x)z - (x|z)y", .. }));
        let neg = -&Matrix::identity(f, 3);
        assert!(zorn("o", f, &cross_table(f), &neg, &neg, ZornFlavor::AnticommutativeSkew).is_ok());
    }

    #[test]
    fn asymmetric_form_is_rejected() {
        let f = Field::Rational;
        let form = Matrix::from_i64(f, &[&[0, 1], &[0, 0]]);
        let err = zorn("z", f, &vec![Vector::zeros(f, 2); 4], &form, &Matrix::identity(f, 2), ZornFlavor::General).unwrap_err();
        assert!(matches!(err, AlgebraError::ZornFormSymmetry(_, _)));
    }

    #[test]
    fn trivial_base_is_commutative_and_associative() {
        let f = Field::Rational;
        let a = zorn("t", f, &[], &Matrix::zeros(f, 0, 0), &Matrix::zeros(f, 0, 0), ZornFlavor::General).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(a.commutativity_check().is_holds());
        assert!(a.associativity_check().is_holds());
        assert!(a.validate().no_failures());
    }
}
