use super::identities as id;
use super::{TrialityError, TrialityOps};
use crate::algebra::Algebra;
use crate::check::{CheckMode, IdentityReport, Verdict, EXHAUSTIVE_LIMIT};
use crate::linalg::{kernel, solve_in_span, EchelonBasis, Matrix, Vector};

/// Pre-structurability via the `A` identity. Up to [`EXHAUSTIVE_LIMIT`] dimensions the
/// equivalent triality relation is checked as well and the agreement recorded in the note.
pub fn is_pre_structurable(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let a = id::a_identity(ops, mode);
    if ops.dim() > EXHAUSTIVE_LIMIT {
        return a;
    }
    let tri = id::triality_relation(ops, mode);
    let note = if a.is_holds() == tri.is_holds() {
        "triality relation cross-check agrees"
    } else {
        "triality relation cross-check disagrees"
    };
    a.with_note(note)
}

/// Structurable means pre-structurable with `Q(a,b,c)d = 0` for all arguments.
pub fn is_structurable(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let pre = is_pre_structurable(ops, mode);
    if !pre.is_holds() {
        return pre.with_note("not pre-structurable");
    }
    id::q_vanishing(ops, mode).with_note("pre-structurable; Q vanishing checked")
}

/// Joint kernel of the operators `Q(e_i, e_j, e_k)` with its closure properties.
#[derive(Clone, Debug)]
pub struct A0Report {
    pub basis: Vec<Vector>,
    pub contains_unit: bool,
    pub closed_under_product: bool,
    pub closed_under_involution: bool,
    /// The kernel as an algebra in its own right, when it is a unital involutive subalgebra.
    pub subalgebra: Option<Algebra>,
    /// Structurability of [`A0Report::subalgebra`], checked exhaustively.
    pub structurable: Verdict,
}

impl A0Report {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Computes `A_0 = {x : Q(a,b,c)x = 0 for all a, b, c}` for a pre-structurable algebra.
///
/// All `n³` basis triples are used, so this is intended for small algebras.
pub fn a0_subalgebra(ops: &TrialityOps, mode: CheckMode) -> Result<A0Report, TrialityError> {
    if !is_pre_structurable(ops, mode).is_holds() {
        return Err(TrialityError::NotPreStructurable);
    }
    let alg = ops.algebra();
    let (n, f) = (alg.dim(), alg.field());
    let mut rows = EchelonBasis::new(f, n);
    'outer: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (a, b, c) = (alg.basis_vector(i), alg.basis_vector(j), alg.basis_vector(k));
                let q = ops.q_op(&a, &b, &c)?;
                for r in 0..n {
                    rows.insert(&q.row(r)).map_err(crate::algebra::AlgebraError::from)?;
                }
                if rows.rank() == n {
                    break 'outer;
                }
            }
        }
    }
    let m = Matrix::from_row_vectors(f, n, rows.rows()).map_err(crate::algebra::AlgebraError::from)?;
    let ker = kernel(&m);

    // Put the unit first when it lies in the kernel, so the restricted algebra is unital on a basis element.
    let mut basis = Vec::new();
    let mut span = EchelonBasis::new(f, n);
    let linalg = |e| TrialityError::from(crate::algebra::AlgebraError::from(e));
    let contains_unit = m.apply(alg.unit()).is_zero();
    if contains_unit {
        span.insert(alg.unit()).map_err(linalg)?;
        basis.push(alg.unit().clone());
    }
    for v in ker {
        if span.insert(&v).map_err(linalg)? {
            basis.push(v);
        }
    }
    let coords = |v: &Vector| solve_in_span(&basis, v).map_err(linalg);
    let mut products = Vec::with_capacity(basis.len() * basis.len());
    let mut closed_under_product = true;
    for x in &basis {
        for y in &basis {
            match coords(&alg.mul(x, y))? {
                Some(c) => products.push(Vector::new(f, c).map_err(linalg)?),
                None => closed_under_product = false,
            }
        }
    }
    let mut inv_cols = Vec::with_capacity(basis.len());
    let mut closed_under_involution = true;
    for x in &basis {
        match coords(&alg.conj(x))? {
            Some(c) => inv_cols.push(Vector::new(f, c).map_err(linalg)?),
            None => closed_under_involution = false,
        }
    }
    let mut subalgebra = None;
    let structurable = if contains_unit && closed_under_product && closed_under_involution {
        let k = basis.len();
        let names = basis
            .iter()
            .enumerate()
            .map(|(i, v)| match v.support().collect::<Vec<_>>()[..] {
                [(j, c)] if c.is_one() => alg.basis_names()[j].clone(),
                _ => format!("u{i}"),
            })
            .collect();
        let inv = Matrix::from_columns(f, k, &inv_cols).map_err(linalg)?;
        let sub = Algebra::from_table(format!("A0({})", alg.name()), f, names, &products, Vector::basis(f, k, 0), inv)?;
        let verdict = is_structurable(&TrialityOps::new(&sub), CheckMode::Exhaustive);
        subalgebra = Some(sub);
        verdict
    } else {
        Verdict::skipped(CheckMode::Exhaustive.record(f), "kernel is not a unital involutive subalgebra")
    };
    Ok(A0Report { basis, contains_unit, closed_under_product, closed_under_involution, subalgebra, structurable })
}

/// The generalized-structurable laws for `D_0` together with a flag for `D ≡ 0`.
#[derive(Clone, Debug)]
pub struct GeneralizedReport {
    pub verdict: Verdict,
    pub laws: IdentityReport,
    /// `D(e_i, e_j) = 0` for every pair of basis elements.
    pub d_vanishes: bool,
}

pub fn is_generalized_structurable(ops: &TrialityOps, mode: CheckMode) -> GeneralizedReport {
    let alg = ops.algebra();
    let n = alg.dim();
    let d_vanishes = (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let (a, b) = (alg.basis_vector(i), alg.basis_vector(j));
            (0..n).all(|k| ops.d(&a, &b, &alg.basis_vector(k)).is_zero())
        })
    });
    let mut laws = IdentityReport::new();
    let structurable = is_structurable(ops, mode);
    if !structurable.is_holds() {
        let verdict = Verdict::skipped(mode.record(alg.field()), "not structurable");
        return GeneralizedReport { verdict, laws, d_vanishes };
    }
    laws.push("d0-symmetries", id::d0_symmetries(ops, mode));
    laws.push("d0-derivation", id::d0_derivation(ops, mode));
    laws.push("d0-cyclic", id::d0_cyclic(ops, mode));
    let verdict = match laws.failures().next() {
        Some((name, v)) => v.clone().with_note(format!("{name} fails")),
        None => Verdict::holds(mode.record(alg.field())),
    };
    let verdict = if d_vanishes { verdict.with_note("D vanishes identically") } else { verdict };
    GeneralizedReport { verdict, laws, d_vanishes }
}
