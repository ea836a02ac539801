//! Lie-theoretic constructions on top of the triality operators: the Lie triple system
//! `abc = t_0(a,b)c`, the space `T(A,A)` of operator triples, the Lie algebra
//! `L = ρ_0(A) ⊕ ρ_1(A) ⊕ ρ_2(A) ⊕ T(A,A)` and commutator (Malcev) algebras.

mod bracket;
mod build;

use thiserror::Error;

use crate::check::{CheckMode, Verdict};
use crate::linalg::{EchelonBasis, LinalgError, Matrix, Scalar, Vector};
use crate::triality::{identities, TrialityError, TrialityOps};

pub use bracket::{commutator_algebra, malcev_check, BracketAlgebra, CommutatorMode, MalcevReport};
pub use build::{build_lie, graded_report, GradedReport, LieAlgebra, JACOBI_EXHAUSTIVE_LIMIT, JACOBI_SAMPLES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error(transparent)]
    Triality(#[from] TrialityError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("refusing to build L: the algebra is not structurable")]
    NotStructurable(Box<Verdict>),
    #[error("bracket result not in span of the triple basis: {0}")]
    NotInSpan(String),
    #[error("gamma_{0} is zero")]
    ZeroGamma(usize),
    #[error("component {component} of the Jacobian triple does not act as Q(a,b,c)")]
    JacobianMismatch { component: usize },
}

/// Three `n × n` operators `(q_0, q_1, q_2)`, bracketed componentwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorTriple {
    parts: [Matrix; 3],
}

impl OperatorTriple {
    pub fn new(parts: [Matrix; 3]) -> OperatorTriple {
        OperatorTriple { parts }
    }

    /// Inverse of [`OperatorTriple::flatten`] for `n × n` components.
    pub fn from_flat(v: &Vector, n: usize) -> Result<OperatorTriple, LinalgError> {
        if v.len() != 3 * n * n {
            return Err(LinalgError::DimensionMismatch { expected: 3 * n * n, found: v.len() });
        }
        let part = |j: usize| Matrix::from_flat(&v.slice(j * n * n, (j + 1) * n * n), n, n);
        Ok(OperatorTriple { parts: [part(0)?, part(1)?, part(2)?] })
    }

    pub fn component(&self, j: usize) -> &Matrix {
        &self.parts[j % 3]
    }

    pub fn flatten(&self) -> Vector {
        let f = self.parts[0].field();
        Vector::concat(f, &[self.parts[0].flatten(), self.parts[1].flatten(), self.parts[2].flatten()])
            .expect("components share the field")
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Matrix::is_zero)
    }

    /// Componentwise commutator.
    pub fn bracket(&self, other: &OperatorTriple) -> OperatorTriple {
        OperatorTriple { parts: [0, 1, 2].map(|j| self.parts[j].commutator(&other.parts[j])) }
    }

    /// The cyclic shift `(q_0, q_1, q_2) ↦ (q_2, q_0, q_1)`.
    pub fn shift(&self) -> OperatorTriple {
        let [a, b, c] = self.parts.clone();
        OperatorTriple { parts: [c, a, b] }
    }

    /// Action on the `j`-th copy of the algebra: `q_j v`.
    pub fn act(&self, j: usize, v: &Vector) -> Vector {
        self.parts[j % 3].apply(v)
    }

    fn add(&self, other: &OperatorTriple) -> OperatorTriple {
        OperatorTriple { parts: [0, 1, 2].map(|j| &self.parts[j] + &other.parts[j]) }
    }
}

/// `T_l(a,b) = (t_l(a,b), t_{l+1}(a,b), t_{l+2}(a,b))`.
pub fn t_triple(ops: &TrialityOps, l: usize, a: &Vector, b: &Vector) -> Result<OperatorTriple, LieError> {
    let part = |j: usize| ops.t_op((l + j) % 3, a, b);
    Ok(OperatorTriple::new([part(0)?, part(1)?, part(2)?]))
}

fn basis_triple(ops: &TrialityOps, l: usize, i: usize, k: usize) -> OperatorTriple {
    OperatorTriple::new([0, 1, 2].map(|j| ops.pair_op((l + j) % 3, i, k)))
}

/// Echelonized basis of the span of all `T_l(e_i, e_k)`.
#[derive(Clone, Debug)]
pub struct TSpace {
    n: usize,
    echelon: EchelonBasis,
}

impl TSpace {
    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    /// Flattened basis triples in reduced echelon form.
    pub fn basis(&self) -> &[Vector] {
        self.echelon.rows()
    }

    pub fn triple(&self, k: usize) -> OperatorTriple {
        OperatorTriple::from_flat(&self.echelon.rows()[k], self.n).expect("basis rows have length 3n²")
    }

    /// Coordinates of a triple in [`TSpace::basis`], or `None` when it lies outside the span.
    pub fn coordinates(&self, t: &OperatorTriple) -> Result<Option<Vec<Scalar>>, LinalgError> {
        self.echelon.coordinates(&t.flatten())
    }
}

/// The space `T(A,A)`. Computable for any algebra; it carries the Lie structure only on
/// structurable ones.
pub fn t_space(ops: &TrialityOps) -> Result<TSpace, LieError> {
    let n = ops.dim();
    let mut echelon = EchelonBasis::new(ops.algebra().field(), 3 * n * n);
    for l in 0..3 {
        for i in 0..n {
            for k in i + 1..n {
                echelon.insert(&basis_triple(ops, l, i, k).flatten())?;
            }
        }
    }
    Ok(TSpace { n, echelon })
}

/// The Lie triple product `abc = t_0(a,b)c`.
pub fn lts_product(ops: &TrialityOps, a: &Vector, b: &Vector, c: &Vector) -> Vector {
    ops.lts_product(a, b, c)
}

/// Antisymmetry, cyclic sum and derivation law of the triple product; the first failing law is reported.
pub fn lts_check(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let laws = [
        ("antisymmetry", identities::lts_antisymmetry(ops, mode)),
        ("cyclic sum", identities::lts_cyclic(ops, mode)),
        ("derivation law", identities::lts_derivation(ops, mode)),
    ];
    let mode_record = laws[2].1.mode.clone();
    match laws.into_iter().find(|(_, v)| !v.is_holds()) {
        Some((name, v)) => v.with_note(format!("{name} fails")),
        None => Verdict::holds(mode_record),
    }
}

/// `J(a,b,c) = T_0(a, (bc)‾) + T_1(c, (ab)‾) + T_2(b, (ca)‾)`.
///
/// On a pre-structurable algebra each component acts as `Q(a,b,c)`; a mismatch is an error.
pub fn jacobian_defect(ops: &TrialityOps, a: &Vector, b: &Vector, c: &Vector) -> Result<OperatorTriple, LieError> {
    let alg = ops.algebra();
    let j = t_triple(ops, 0, a, &alg.conj(&alg.mul(b, c)))?
        .add(&t_triple(ops, 1, c, &alg.conj(&alg.mul(a, b)))?)
        .add(&t_triple(ops, 2, b, &alg.conj(&alg.mul(c, a)))?);
    let q = ops.q_op(a, b, c)?;
    if let Some(component) = (0..3).find(|&k| j.component(k) != &q) {
        return Err(LieError::JacobianMismatch { component });
    }
    Ok(j)
}
