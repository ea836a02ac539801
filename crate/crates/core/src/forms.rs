//! Bilinear forms attached to an algebra: quadratic and composition laws, radicals, and
//! multiplicative linear functionals.

use thiserror::Error;

use crate::algebra::Algebra;
use crate::check::{no_filter, scan_simple, CheckMode, Verdict};
use crate::linalg::{kernel, LinalgError, Matrix, Scalar, Vector};

/// Random vectors used for the pointwise composition law.
pub const POINTWISE_SAMPLES: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("Gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("expected a {expected}x{expected} Gram matrix")]
    DimensionMismatch { expected: usize },
    #[error("algebra is not quadratic: {0}")]
    NotQuadratic(String),
    #[error("algebra {0} was not built by the Zorn constructor")]
    NotZorn(String),
}

/// Symmetric bilinear form given by its Gram matrix in the algebra basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    gram: Matrix,
}

impl BilinearForm {
    pub fn new(gram: Matrix) -> Result<BilinearForm, FormError> {
        if !gram.is_square() {
            return Err(FormError::DimensionMismatch { expected: gram.rows() });
        }
        for i in 0..gram.rows() {
            for j in 0..i {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(FormError::NotSymmetric(i, j));
                }
            }
        }
        Ok(BilinearForm { gram })
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn eval(&self, x: &Vector, y: &Vector) -> Scalar {
        let gy = self.gram.apply(y);
        let mut s = self.gram.field().zero();
        for (i, xi) in x.support() {
            s += &(xi * &gy[i]);
        }
        s
    }

    /// Basis of `{x : <x|y> = 0 for all y}`.
    pub fn radical(&self) -> Vec<Vector> {
        kernel(&self.gram)
    }
}

/// Linear functional given by its values on the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFunctional {
    coeffs: Vector,
}

impl LinearFunctional {
    pub fn new(coeffs: Vector) -> LinearFunctional {
        LinearFunctional { coeffs }
    }

    pub fn coeffs(&self) -> &Vector {
        &self.coeffs
    }

    pub fn eval(&self, x: &Vector) -> Scalar {
        let mut s = self.coeffs.field().zero();
        for (i, xi) in x.support() {
            s += &(xi * &self.coeffs[i]);
        }
        s
    }
}

fn check_dim(a: &Algebra, form: &BilinearForm) -> Result<(), FormError> {
    if form.dim() != a.dim() {
        return Err(FormError::DimensionMismatch { expected: a.dim() });
    }
    if form.gram.field() != a.field() {
        return Err(LinalgError::MixedField.into());
    }
    Ok(())
}

/// Coefficient `λ` with `v = λ e`, or `None` if `v` leaves `Fe`.
fn unit_coefficient(a: &Algebra, v: &Vector) -> Option<Scalar> {
    let e = a.unit();
    let p = e.first_nonzero()?;
    let lambda = v[p].checked_div(&e[p]).ok()?;
    (e.scale(&lambda) == *v).then_some(lambda)
}

/// Recovers `<a|b>` from `a b̄ + b ā = 2<a|b> e` and checks `ā = 2<a|e> e - a`.
pub fn derive_quadratic_form(a: &Algebra) -> Result<BilinearForm, FormError> {
    let (f, n) = (a.field(), a.dim());
    let half = f.ratio(1, 2)?;
    let mut gram = Matrix::zeros(f, n, n);
    for i in 0..n {
        for j in i..n {
            let (x, y) = (a.basis_vector(i), a.basis_vector(j));
            let s = a.mul(&x, &a.conj(&y)) + a.mul(&y, &a.conj(&x));
            let lambda = unit_coefficient(a, &s).ok_or_else(|| {
                FormError::NotQuadratic(format!(
                    "{b1} conj({b2}) + {b2} conj({b1}) = {} is not a multiple of the unit",
                    a.format_element(&s),
                    b1 = a.basis_names()[i],
                    b2 = a.basis_names()[j],
                ))
            })?;
            let v = &lambda * &half;
            gram[(i, j)] = v.clone();
            gram[(j, i)] = v;
        }
    }
    let form = BilinearForm { gram };
    let two = f.int(2);
    for i in 0..n {
        let x = a.basis_vector(i);
        let expect = a.unit().scale(&(&two * &form.eval(&x, a.unit()))) - x.clone();
        if a.conj(&x) != expect {
            return Err(FormError::NotQuadratic(format!(
                "conj({}) differs from 2<x|e>e - x",
                a.basis_names()[i]
            )));
        }
    }
    Ok(form)
}

/// Composition law `<ab|ab> = <a|a><b|b>`.
///
/// The polarized identity `<a1b1|a2b2> + <a1b2|a2b1> = 2<a1|a2><b1|b2>` is the exhaustive
/// ground truth; when it holds the pointwise law is also evaluated on random vectors.
pub fn composition_check(a: &Algebra, form: &BilinearForm, mode: CheckMode) -> Result<Verdict, FormError> {
    check_dim(a, form)?;
    let (f, n) = (a.field(), a.dim());
    let b = a.basis_slot();
    let two = f.int(2);
    let polarized = scan_simple(mode, f, n, &[&b, &b, &b, &b], no_filter, |x| {
        let (a1, b1, a2, b2) = (x[0], x[1], x[2], x[3]);
        let lhs = &form.eval(&a.mul(a1, b1), &a.mul(a2, b2)) + &form.eval(&a.mul(a1, b2), &a.mul(a2, b1));
        let rhs = &two * &(&form.eval(a1, a2) * &form.eval(b1, b2));
        Vector::new(f, vec![lhs - rhs]).expect("one scalar")
    });
    if !polarized.is_holds() {
        return Ok(polarized);
    }
    let pointwise = CheckMode::Probabilistic { trials: POINTWISE_SAMPLES, seed: 0 };
    let sampled = scan_simple(pointwise, f, n, &[&b, &b], no_filter, |x| {
        let ab = a.mul(x[0], x[1]);
        let d = form.eval(&ab, &ab) - &form.eval(x[0], x[0]) * &form.eval(x[1], x[1]);
        Vector::new(f, vec![d]).expect("one scalar")
    });
    if sampled.is_fails() {
        return Ok(sampled.with_note("pointwise law failed although the polarized law held"));
    }
    Ok(polarized.with_note(format!("pointwise law also holds on {POINTWISE_SAMPLES} random pairs")))
}

/// `<ā|bc> = <b̄|ca> = <c̄|ab>` on basis triples.
pub fn form_associativity_check(a: &Algebra, form: &BilinearForm) -> Result<Verdict, FormError> {
    check_dim(a, form)?;
    let (f, n) = (a.field(), a.dim());
    let b = a.basis_slot();
    Ok(scan_simple(CheckMode::Exhaustive, f, n, &[&b, &b, &b], no_filter, |x| {
        let (p, q, r) = (x[0], x[1], x[2]);
        let u = form.eval(&a.conj(p), &a.mul(q, r));
        let v = form.eval(&a.conj(q), &a.mul(r, p));
        let w = form.eval(&a.conj(r), &a.mul(p, q));
        Vector::new(f, vec![&u - &v, &v - &w]).expect("two scalars")
    }))
}

pub fn radical(form: &BilinearForm) -> Vec<Vector> {
    form.radical()
}

/// `φ(xy) = φ(x)φ(y)` on basis pairs.
pub fn linear_composition_check(a: &Algebra, phi: &LinearFunctional) -> Result<Verdict, FormError> {
    if phi.coeffs.len() != a.dim() {
        return Err(FormError::DimensionMismatch { expected: a.dim() });
    }
    let (f, n) = (a.field(), a.dim());
    let b = a.basis_slot();
    Ok(scan_simple(CheckMode::Exhaustive, f, n, &[&b, &b], no_filter, |x| {
        let d = phi.eval(&a.mul(x[0], x[1])) - &phi.eval(x[0]) * &phi.eval(x[1]);
        Vector::new(f, vec![d]).expect("one scalar")
    }))
}

/// Quadratic law `a ā = <a|a> e` for the given form, in polarized form on basis pairs.
pub fn quadratic_law_check(a: &Algebra, form: &BilinearForm) -> Result<Verdict, FormError> {
    check_dim(a, form)?;
    let (f, n) = (a.field(), a.dim());
    let b = a.basis_slot();
    let two = f.int(2);
    Ok(scan_simple(CheckMode::Exhaustive, f, n, &[&b, &b], no_filter, |x| {
        let s = a.mul(x[0], &a.conj(x[1])) + a.mul(x[1], &a.conj(x[0]));
        s - a.unit().scale(&(&two * &form.eval(x[0], x[1])))
    }))
}

/// Canonical form of a Zorn algebra: `<X1|X2> = ½{α1β2 + β1α2 - (x1|y2) - (y1|x2)}`.
pub fn zorn_form(a: &Algebra) -> Result<BilinearForm, FormError> {
    let z = a.zorn_data().ok_or_else(|| FormError::NotZorn(a.name().to_string()))?;
    let (f, n, k) = (a.field(), a.dim(), z.bdim);
    let half = f.ratio(1, 2)?;
    let parts = |v: &Vector| (&v[0] + &v[1], v.slice(2, 2 + k), v.slice(2 + k, n), &v[0] - &v[1]);
    let bform = |x: &Vector, y: &Vector| -> Scalar {
        let fy = z.bform.apply(y);
        let mut s = f.zero();
        for (i, xi) in x.support() {
            s += &(xi * &fy[i]);
        }
        s
    };
    let mut gram = Matrix::zeros(f, n, n);
    for i in 0..n {
        for j in 0..n {
            let (a1, x1, y1, b1) = parts(&a.basis_vector(i));
            let (a2, x2, y2, b2) = parts(&a.basis_vector(j));
            let s = &(&a1 * &b2) + &(&b1 * &a2);
            let s = &(&s - &bform(&x1, &y2)) - &bform(&y1, &x2);
            gram[(i, j)] = &s * &half;
        }
    }
    BilinearForm::new(gram)
}
