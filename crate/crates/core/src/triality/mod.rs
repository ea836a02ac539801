//! Triality operators `t_0, t_1, t_2` and everything built from them: `D`, `D_0`, `Q`, the
//! `A, B, C, C'` defect operators, identity checks and certification predicates.
//!
//! Operators are evaluated on vectors; matrix forms are assembled column by column on request.

mod certify;
pub mod identities;
mod suite;

use std::sync::OnceLock;

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::check::{Slot, EXHAUSTIVE_LIMIT};
use crate::linalg::{Matrix, Vector};

pub use certify::{
    a0_subalgebra, is_generalized_structurable, is_pre_structurable, is_structurable, A0Report,
    GeneralizedReport,
};
pub use suite::{identity_suite, SuiteConfig, IDENTITY_NAMES, S_SAMPLES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrialityError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("operator index {0} is not 0, 1 or 2")]
    BadIndex(usize),
    #[error("algebra is not pre-structurable")]
    NotPreStructurable,
}

/// Operator calculus over a fixed algebra.
///
/// For dimensions up to [`EXHAUSTIVE_LIMIT`] the basis-pair matrices `t_j(e_i, e_k)`, `i < k`,
/// are cached on first use.
pub struct TrialityOps<'a> {
    alg: &'a Algebra,
    basis: Slot,
    h: Slot,
    pairs: OnceLock<Vec<Matrix>>,
}

impl<'a> TrialityOps<'a> {
    pub fn new(alg: &'a Algebra) -> TrialityOps<'a> {
        TrialityOps { alg, basis: alg.basis_slot(), h: alg.h_slot(), pairs: OnceLock::new() }
    }

    pub fn algebra(&self) -> &'a Algebra {
        self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn basis_slot(&self) -> &Slot {
        &self.basis
    }

    pub fn h_slot(&self) -> &Slot {
        &self.h
    }

    fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        self.alg.mul(x, y)
    }

    fn conj(&self, x: &Vector) -> Vector {
        self.alg.conj(x)
    }

    /// `t_j(a,b)x` with `j` read modulo 3:
    /// `t_0(a,b)x = x(āb - b̄a) + b(āx) - a(b̄x)`, `t_1(a,b)x = b̄(ax) - ā(bx)`,
    /// `t_2(a,b)x = (xa)b̄ - (xb)ā`.
    pub fn t(&self, j: usize, a: &Vector, b: &Vector, x: &Vector) -> Vector {
        let (ca, cb) = (self.conj(a), self.conj(b));
        match j % 3 {
            0 => {
                let w = self.mul(&ca, b) - self.mul(&cb, a);
                self.mul(x, &w) + self.mul(b, &self.mul(&ca, x)) - self.mul(a, &self.mul(&cb, x))
            }
            1 => self.mul(&cb, &self.mul(a, x)) - self.mul(&ca, &self.mul(b, x)),
            _ => self.mul(&self.mul(x, a), &cb) - self.mul(&self.mul(x, b), &ca),
        }
    }

    /// `D(a,b)x = Σ_j t_j(a,b)x`.
    pub fn d(&self, a: &Vector, b: &Vector, x: &Vector) -> Vector {
        self.t(0, a, b, x) + self.t(1, a, b, x) + self.t(2, a, b, x)
    }

    /// `D_0(a,b) = D(a, b̄)`.
    pub fn d0(&self, a: &Vector, b: &Vector, x: &Vector) -> Vector {
        self.d(a, &self.conj(b), x)
    }

    /// `Q(a,b,c)x = t_0(a, b̄c̄)x + t_1(b, c̄ā)x + t_2(c, āb̄)x`.
    pub fn q(&self, a: &Vector, b: &Vector, c: &Vector, x: &Vector) -> Vector {
        let (ca, cb, cc) = (self.conj(a), self.conj(b), self.conj(c));
        self.t(0, a, &self.mul(&cb, &cc), x) + self.t(1, b, &self.mul(&cc, &ca), x) + self.t(2, c, &self.mul(&ca, &cb), x)
    }

    /// `L(a,b) = t_0(a,b) + t_2(ā,b̄)`.
    pub fn l(&self, a: &Vector, b: &Vector, x: &Vector) -> Vector {
        self.t(0, a, b, x) + self.t(2, &self.conj(a), &self.conj(b), x)
    }

    /// `A(a,b,c)d = ((da)b̄)c - d(a(b̄c))`.
    pub fn a_op_apply(&self, a: &Vector, b: &Vector, c: &Vector, d: &Vector) -> Vector {
        let cb = self.conj(b);
        self.mul(&self.mul(&self.mul(d, a), &cb), c) - self.mul(d, &self.mul(a, &self.mul(&cb, c)))
    }

    /// `B(a,b,c)d = ((da)b̄)c - d((ab̄)c)`.
    pub fn b_op_apply(&self, a: &Vector, b: &Vector, c: &Vector, d: &Vector) -> Vector {
        let cb = self.conj(b);
        self.mul(&self.mul(&self.mul(d, a), &cb), c) - self.mul(d, &self.mul(&self.mul(a, &cb), c))
    }

    /// `C(a,b,c)d = (a(b̄d̄))c - (ab̄)(d̄c)`.
    pub fn c_op_apply(&self, a: &Vector, b: &Vector, c: &Vector, d: &Vector) -> Vector {
        let (cb, cd) = (self.conj(b), self.conj(d));
        self.mul(&self.mul(a, &self.mul(&cb, &cd)), c) - self.mul(&self.mul(a, &cb), &self.mul(&cd, c))
    }

    /// `C'(a,b,c)d = C(a,b,c)d̄`.
    pub fn c_prime_apply(&self, a: &Vector, b: &Vector, c: &Vector, d: &Vector) -> Vector {
        self.c_op_apply(a, b, c, &self.conj(d))
    }

    /// Right side of `Q(a,b,c) = B(b,a,c) - C(a,b,c) - C(c,b,a) - C'(c,a,b)` applied to `d`.
    pub fn q_via_bc_apply(&self, a: &Vector, b: &Vector, c: &Vector, d: &Vector) -> Vector {
        self.b_op_apply(b, a, c, d) - self.c_op_apply(a, b, c, d) - self.c_op_apply(c, b, a, d) - self.c_prime_apply(c, a, b, d)
    }

    /// Operator conjugate applied to `x`: `Q̄x = conj(Q x̄)`.
    pub fn conj_apply(&self, op: impl Fn(&Vector) -> Vector, x: &Vector) -> Vector {
        self.conj(&op(&self.conj(x)))
    }

    /// Lie triple product `abc = t_0(a,b)c`.
    pub fn lts_product(&self, a: &Vector, b: &Vector, c: &Vector) -> Vector {
        self.t(0, a, b, c)
    }

    fn matrix_of(&self, op: impl Fn(&Vector) -> Vector) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|k| op(&self.alg.basis_vector(k))).collect();
        Matrix::from_columns(self.alg.field(), n, &cols).expect("columns of the right length")
    }

    fn check(&self, vs: &[&Vector]) -> Result<(), TrialityError> {
        let n = self.dim();
        for v in vs {
            if v.field() != self.alg.field() {
                return Err(AlgebraError::Linalg(crate::linalg::LinalgError::MixedField).into());
            }
            if v.len() != n {
                return Err(AlgebraError::DimensionMismatch { expected: n, found: v.len() }.into());
            }
        }
        Ok(())
    }

    fn pair_cache(&self) -> &[Matrix] {
        self.pairs.get_or_init(|| {
            let n = self.dim();
            let mut out = Vec::with_capacity(3 * n * (n - 1) / 2);
            for j in 0..3 {
                for i in 0..n {
                    for k in i + 1..n {
                        let (a, b) = (self.alg.basis_vector(i), self.alg.basis_vector(k));
                        out.push(self.matrix_of(|x| self.t(j, &a, &b, x)));
                    }
                }
            }
            out
        })
    }

    /// `t_j(e_i, e_k)` as a matrix, cached for small dimensions.
    pub fn pair_op(&self, j: usize, i: usize, k: usize) -> Matrix {
        let n = self.dim();
        if i == k {
            return Matrix::zeros(self.alg.field(), n, n);
        }
        if n > EXHAUSTIVE_LIMIT {
            let (a, b) = (self.alg.basis_vector(i), self.alg.basis_vector(k));
            return self.matrix_of(|x| self.t(j, &a, &b, x));
        }
        let (lo, hi, sign) = if i < k { (i, k, false) } else { (k, i, true) };
        let per_j = n * (n - 1) / 2;
        // Index of (lo, hi) among pairs lo < hi in lexicographic order.
        let idx = lo * (2 * n - lo - 1) / 2 + (hi - lo - 1);
        let m = &self.pair_cache()[(j % 3) * per_j + idx];
        if sign {
            -m
        } else {
            m.clone()
        }
    }

    pub fn t_op(&self, j: usize, a: &Vector, b: &Vector) -> Result<Matrix, TrialityError> {
        if j > 2 {
            return Err(TrialityError::BadIndex(j));
        }
        self.check(&[a, b])?;
        Ok(self.matrix_of(|x| self.t(j, a, b, x)))
    }

    pub fn d_op(&self, a: &Vector, b: &Vector) -> Result<Matrix, TrialityError> {
        self.check(&[a, b])?;
        Ok(self.matrix_of(|x| self.d(a, b, x)))
    }

    pub fn d0_op(&self, a: &Vector, b: &Vector) -> Result<Matrix, TrialityError> {
        self.check(&[a, b])?;
        Ok(self.matrix_of(|x| self.d0(a, b, x)))
    }

    pub fn q_op(&self, a: &Vector, b: &Vector, c: &Vector) -> Result<Matrix, TrialityError> {
        self.check(&[a, b, c])?;
        Ok(self.matrix_of(|x| self.q(a, b, c, x)))
    }

    pub fn q_via_bc(&self, a: &Vector, b: &Vector, c: &Vector) -> Result<Matrix, TrialityError> {
        self.check(&[a, b, c])?;
        Ok(self.matrix_of(|x| self.q_via_bc_apply(a, b, c, x)))
    }

    /// `(A, B, C, C')` at `(a, b, c)` as matrices, composed from multiplication operators:
    /// `A = r(c)r(b̄)r(a) - r(a(b̄c))`, `B = r(c)r(b̄)r(a) - r((ab̄)c)`,
    /// `C = r(c)l(a)l(b̄)J - l(ab̄)r(c)J` and `C' = CJ`, where `J` is the involution.
    pub fn abc_ops(&self, a: &Vector, b: &Vector, c: &Vector) -> Result<[Matrix; 4], TrialityError> {
        self.check(&[a, b, c])?;
        let alg = self.alg;
        let cb = alg.conj(b);
        let j = alg.involution();
        let (ra, rc) = (alg.r_op(a), alg.r_op(c));
        let chain = &(&rc * &alg.r_op(&cb)) * &ra;
        let am = &chain - &alg.r_op(&alg.mul(a, &alg.mul(&cb, c)));
        let bm = &chain - &alg.r_op(&alg.mul(&alg.mul(a, &cb), c));
        let cm = &(&(&(&rc * &alg.l_op(a)) * &alg.l_op(&cb)) * j) - &(&(&alg.l_op(&alg.mul(a, &cb)) * &rc) * j);
        let cp = &cm * j;
        Ok([am, bm, cm, cp])
    }
}
