use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::LieError;
use crate::algebra::Algebra;
use crate::check::{scan_simple, stack, CheckMode, Slot, Verdict, Witness};
use crate::linalg::{solve_in_span, span_basis, Field, Scalar, Vector};

/// A bilinear bracket given by sparse structure constants on a labelled basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketAlgebra {
    field: Field,
    labels: Vec<String>,
    /// `table[x * m + y]` holds the nonzero coordinates of `[b_x, b_y]`.
    table: Vec<Vec<(usize, Scalar)>>,
}

fn sparse(v: &Vector) -> Vec<(usize, Scalar)> {
    v.support().map(|(i, c)| (i, c.clone())).collect()
}

impl BracketAlgebra {
    /// `products[x * m + y]` is `[b_x, b_y]`.
    pub fn from_products(field: Field, labels: Vec<String>, products: &[Vector]) -> BracketAlgebra {
        BracketAlgebra { field, labels, table: products.iter().map(sparse).collect() }
    }

    pub(crate) fn from_sparse(field: Field, labels: Vec<String>, table: Vec<Vec<(usize, Scalar)>>) -> BracketAlgebra {
        BracketAlgebra { field, labels, table }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        Vector::basis(self.field, self.dim(), i)
    }

    pub fn basis_slot(&self) -> Slot {
        Slot::standard(self.field, &self.labels)
    }

    pub fn basis_bracket(&self, x: usize, y: usize) -> Vector {
        let mut out = Vector::zeros(self.field, self.dim());
        for (k, c) in &self.table[x * self.dim() + y] {
            out[*k] = c.clone();
        }
        out
    }

    /// `[b_x, b_y]` as sparse `(index, coefficient)` pairs.
    pub fn sparse_bracket(&self, x: usize, y: usize) -> &[(usize, Scalar)] {
        &self.table[x * self.dim() + y]
    }

    pub fn bracket(&self, u: &Vector, v: &Vector) -> Vector {
        let m = self.dim();
        let mut out = Vector::zeros(self.field, m);
        for (x, cu) in u.support() {
            for (y, cv) in v.support() {
                let entries = &self.table[x * m + y];
                if entries.is_empty() {
                    continue;
                }
                let c = cu * cv;
                for (k, s) in entries {
                    out[*k] += &(&c * s);
                }
            }
        }
        out
    }

    /// `[u, b_z]` for a sparse `u`.
    fn bracket_with_basis(&self, u: &Vector, z: usize) -> Vector {
        let m = self.dim();
        let mut out = Vector::zeros(self.field, m);
        for (x, cu) in u.support() {
            for (k, s) in &self.table[x * m + z] {
                out[*k] += &(cu * s);
            }
        }
        out
    }

    /// `J(x,y,z) = [[x,y],z] + [[y,z],x] + [[z,x],y]`.
    pub fn jacobian(&self, x: &Vector, y: &Vector, z: &Vector) -> Vector {
        self.bracket(&self.bracket(x, y), z) + self.bracket(&self.bracket(y, z), x) + self.bracket(&self.bracket(z, x), y)
    }

    fn basis_jacobian(&self, x: usize, y: usize, z: usize) -> Vector {
        let xy = self.basis_bracket(x, y);
        let yz = self.basis_bracket(y, z);
        let zx = self.basis_bracket(z, x);
        self.bracket_with_basis(&xy, z) + self.bracket_with_basis(&yz, x) + self.bracket_with_basis(&zx, y)
    }

    /// `[b_x, b_x] = 0` and `[b_x, b_y] = -[b_y, b_x]` on every basis pair.
    pub fn antisymmetry_check(&self) -> Verdict {
        scan_simple(CheckMode::Exhaustive, self.field, self.dim(), &[&self.basis_slot(), &self.basis_slot()], |i| i[0] <= i[1], |x| {
            self.bracket(x[0], x[1]) + self.bracket(x[1], x[0])
        })
    }

    /// Jacobi identity on basis triples: every ordered triple in exhaustive mode, random
    /// index triples in probabilistic mode.
    pub fn jacobi_check(&self, mode: CheckMode) -> Verdict {
        let m = self.dim();
        let record = mode.record(self.field);
        let witness = |x: usize, y: usize, z: usize, trial: Option<usize>, defect: Vector| Witness {
            args: vec![self.basis_vector(x), self.basis_vector(y), self.basis_vector(z)],
            labels: vec![self.labels[x].clone(), self.labels[y].clone(), self.labels[z].clone()],
            trial,
            defect,
        };
        let found = match mode {
            CheckMode::Exhaustive => (0..m * m * m).into_par_iter().find_map_first(|idx| {
                let (x, y, z) = (idx / (m * m), (idx / m) % m, idx % m);
                let d = self.basis_jacobian(x, y, z);
                (!d.is_zero()).then(|| witness(x, y, z, None, d))
            }),
            CheckMode::Probabilistic { trials, seed } => {
                if m == 0 {
                    None
                } else {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let picks: Vec<(usize, usize, usize)> =
                        (0..trials).map(|_| (rng.gen_range(0..m), rng.gen_range(0..m), rng.gen_range(0..m))).collect();
                    picks.par_iter().enumerate().find_map_first(|(t, &(x, y, z))| {
                        let d = self.basis_jacobian(x, y, z);
                        (!d.is_zero()).then(|| witness(x, y, z, Some(t), d))
                    })
                }
            }
        };
        match found {
            None => Verdict::holds(record),
            Some(w) => Verdict::fails(record, Some(w)),
        }
    }
}

/// Which subspace carries the commutator product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommutatorMode {
    /// The skew elements `H = {x : x̄ = -x}`.
    Skew,
    /// The derived span `[A, A]`.
    Derived,
}

/// The anticommutative algebra `[x,y] = xy - yx` on `H` or on `[A,A]`, in a basis of that subspace.
pub fn commutator_algebra(alg: &Algebra, mode: CommutatorMode) -> Result<BracketAlgebra, LieError> {
    let n = alg.dim();
    let comm = |x: &Vector, y: &Vector| alg.mul(x, y) - alg.mul(y, x);
    let basis = match mode {
        CommutatorMode::Skew => alg.sh_split().h,
        CommutatorMode::Derived => {
            let all: Vec<Vector> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| comm(&alg.basis_vector(i), &alg.basis_vector(j)))
                .collect();
            span_basis(&all)?
        }
    };
    let mut products = Vec::with_capacity(basis.len() * basis.len());
    for x in &basis {
        for y in &basis {
            let c = comm(x, y);
            let coords = solve_in_span(&basis, &c)?
                .ok_or_else(|| LieError::NotInSpan(format!("commutator {}", alg.format_element(&c))))?;
            products.push(Vector::new(alg.field(), coords)?);
        }
    }
    let labels = basis.iter().map(|v| alg.format_element(v)).collect();
    Ok(BracketAlgebra::from_products(alg.field(), labels, &products))
}

#[derive(Clone, Debug)]
pub struct MalcevReport {
    pub anticommutative: Verdict,
    pub malcev: Verdict,
    pub jacobi: Verdict,
}

/// Anticommutativity, the Malcev identity and (separately) Jacobi.
///
/// The Malcev identity `J(x,y,[x,z]) = [J(x,y,z),x]` is quadratic in `x`, so its linearization
/// `J(x,y,[w,z]) + J(w,y,[x,z]) = [J(x,y,z),w] + [J(w,y,z),x]` is checked on basis tuples.
pub fn malcev_check(m: &BracketAlgebra, mode: CheckMode) -> MalcevReport {
    let slot = m.basis_slot();
    let f = m.field();
    let anticommutative = m.antisymmetry_check();
    let malcev = scan_simple(mode.salted("malcev"), f, m.dim(), &[&slot, &slot, &slot, &slot], |i| i[0] <= i[1], |v| {
        let (x, w, y, z) = (v[0], v[1], v[2], v[3]);
        let lhs = m.jacobian(x, y, &m.bracket(w, z)) + m.jacobian(w, y, &m.bracket(x, z));
        let rhs = m.bracket(&m.jacobian(x, y, z), w) + m.bracket(&m.jacobian(w, y, z), x);
        stack(f, &[lhs - rhs])
    });
    let jacobi = m.jacobi_check(mode);
    MalcevReport { anticommutative, malcev, jacobi }
}
