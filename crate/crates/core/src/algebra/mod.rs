//! Unital involutive algebras given by structure constants.

mod catalog;
mod random;
mod zorn;

use std::collections::HashSet;
use std::sync::OnceLock;

use thiserror::Error;

use crate::check::{no_filter, scan_simple, CheckMode, IdentityReport, Slot, Verdict};
use crate::linalg::{kernel, Field, LinalgError, Matrix, Scalar, Vector};

pub use catalog::{catalog, catalog_names, catalog_parameters, CatalogEntry, CatalogParams};
pub use random::{random_algebra, RandomKind};
pub use zorn::{zorn, ZornData, ZornFlavor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis name {0:?} is duplicated")]
    DuplicateBasisName(String),
    #[error("Zorn bilinear form violates (ȳ|x̄) = (x|y) at ({0}, {1})")]
    ZornFormSymmetry(usize, usize),
    #[error("Zorn base data violates {law} at basis indices {indices:?}")]
    ZornSkewLaw { law: &'static str, indices: Vec<usize> },
    #[error("unknown catalog algebra {0:?}")]
    UnknownCatalogName(String),
    #[error("catalog algebra {name} does not take parameter {param:?}")]
    UnexpectedParameter { name: &'static str, param: String },
    #[error("{0}")]
    InvalidParameter(String),
    #[error("random generator needs dimension at least {min}, got {dim}")]
    RandomDimension { min: usize, dim: usize },
}

/// Bases of the symmetric and skew eigenspaces of the involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShSplit {
    pub s: Vec<Vector>,
    pub h: Vec<Vector>,
}

/// Finite-dimensional unital algebra with involution, stored as structure constants.
///
/// Construction checks only shapes and fields; the algebraic axioms are the business of
/// [`Algebra::validate`], so that broken data can be diagnosed rather than rejected.
#[derive(Debug)]
pub struct Algebra {
    name: String,
    field: Field,
    basis: Vec<String>,
    /// Sparse product `e_i e_j` at index `i * n + j`.
    table: Vec<Vec<(usize, Scalar)>>,
    unit: Vector,
    inv: Matrix,
    zorn: Option<ZornData>,
    ops: OnceLock<(Vec<Matrix>, Vec<Matrix>)>,
}

impl Clone for Algebra {
    fn clone(&self) -> Algebra {
        Algebra {
            name: self.name.clone(),
            field: self.field,
            basis: self.basis.clone(),
            table: self.table.clone(),
            unit: self.unit.clone(),
            inv: self.inv.clone(),
            zorn: self.zorn.clone(),
            ops: OnceLock::new(),
        }
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Algebra) -> bool {
        self.name == other.name
            && self.field == other.field
            && self.basis == other.basis
            && self.table == other.table
            && self.unit == other.unit
            && self.inv == other.inv
    }
}

impl Eq for Algebra {}

fn sparse(v: &Vector) -> Vec<(usize, Scalar)> {
    v.support().map(|(k, x)| (k, x.clone())).collect()
}

impl Algebra {
    /// `products[i * n + j]` is `e_i e_j`; column `i` of `involution` is the conjugate of `e_i`.
    pub fn from_table(
        name: impl Into<String>,
        field: Field,
        basis: Vec<String>,
        products: &[Vector],
        unit: Vector,
        involution: Matrix,
    ) -> Result<Algebra, AlgebraError> {
        let n = basis.len();
        let mut seen = HashSet::new();
        if let Some(dup) = basis.iter().find(|b| !seen.insert(b.as_str())) {
            return Err(AlgebraError::DuplicateBasisName(dup.clone()));
        }
        if products.len() != n * n {
            return Err(AlgebraError::DimensionMismatch { expected: n * n, found: products.len() });
        }
        for v in products.iter().chain(std::iter::once(&unit)) {
            if v.field() != field {
                return Err(LinalgError::MixedField.into());
            }
            if v.len() != n {
                return Err(AlgebraError::DimensionMismatch { expected: n, found: v.len() });
            }
        }
        if involution.field() != field {
            return Err(LinalgError::MixedField.into());
        }
        if involution.rows() != n || involution.cols() != n {
            return Err(AlgebraError::DimensionMismatch { expected: n, found: involution.rows().max(involution.cols()) });
        }
        Ok(Algebra {
            name: name.into(),
            field,
            basis,
            table: products.iter().map(sparse).collect(),
            unit,
            inv: involution,
            zorn: None,
            ops: OnceLock::new(),
        })
    }

    pub(crate) fn set_zorn(&mut self, data: ZornData) {
        self.zorn = Some(data);
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Algebra {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        Vector::basis(self.field, self.dim(), i)
    }

    pub fn basis_slot(&self) -> Slot {
        Slot::standard(self.field, &self.basis)
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn involution(&self) -> &Matrix {
        &self.inv
    }

    pub fn zorn_data(&self) -> Option<&ZornData> {
        self.zorn.as_ref()
    }

    /// Coordinates of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        let mut v = Vector::zeros(self.field, self.dim());
        for (k, c) in &self.table[i * self.dim() + j] {
            v[*k] = c.clone();
        }
        v
    }

    /// Structure constant `c[i][j][k]`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        let row = &self.table[i * self.dim() + j];
        row.iter().find(|(kk, _)| *kk == k).map_or_else(|| self.field.zero(), |(_, c)| c.clone())
    }

    fn check_vec(&self, v: &Vector) -> Result<(), AlgebraError> {
        if v.field() != self.field {
            return Err(LinalgError::MixedField.into());
        }
        if v.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim(), found: v.len() });
        }
        Ok(())
    }

    /// Product `xy`. Panics on a length mismatch; see [`Algebra::multiply`] for the checked form.
    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        let n = self.dim();
        assert!(x.len() == n && y.len() == n, "algebra product dimension mismatch");
        let mut out = Vector::zeros(self.field, n);
        for (i, xi) in x.support() {
            for (j, yj) in y.support() {
                let row = &self.table[i * n + j];
                if row.is_empty() {
                    continue;
                }
                let s = xi * yj;
                for (k, c) in row {
                    out[*k] += &(&s * c);
                }
            }
        }
        out
    }

    pub fn multiply(&self, x: &Vector, y: &Vector) -> Result<Vector, AlgebraError> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        Ok(self.mul(x, y))
    }

    /// Conjugate `x̄`.
    pub fn conj(&self, x: &Vector) -> Vector {
        self.inv.apply(x)
    }

    pub fn involute(&self, x: &Vector) -> Result<Vector, AlgebraError> {
        self.check_vec(x)?;
        Ok(self.conj(x))
    }

    /// Associator `(xy)z - x(yz)`.
    pub fn assoc(&self, x: &Vector, y: &Vector, z: &Vector) -> Vector {
        self.mul(&self.mul(x, y), z) - self.mul(x, &self.mul(y, z))
    }

    pub fn associator(&self, x: &Vector, y: &Vector, z: &Vector) -> Result<Vector, AlgebraError> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        self.check_vec(z)?;
        Ok(self.assoc(x, y, z))
    }

    fn basis_ops(&self) -> &(Vec<Matrix>, Vec<Matrix>) {
        self.ops.get_or_init(|| {
            let n = self.dim();
            let build = |left: bool| -> Vec<Matrix> {
                (0..n)
                    .map(|a| {
                        let mut m = Matrix::zeros(self.field, n, n);
                        for b in 0..n {
                            let (i, j) = if left { (a, b) } else { (b, a) };
                            for (k, c) in &self.table[i * n + j] {
                                m[(*k, b)] = c.clone();
                            }
                        }
                        m
                    })
                    .collect()
            };
            (build(true), build(false))
        })
    }

    fn combine(&self, mats: &[Matrix], a: &Vector) -> Matrix {
        let n = self.dim();
        let mut out = Matrix::zeros(self.field, n, n);
        for (i, ai) in a.support() {
            out = &out + &mats[i].scale(ai);
        }
        out
    }

    /// Matrix of `l(a): b ↦ ab`.
    pub fn l_op(&self, a: &Vector) -> Matrix {
        self.combine(&self.basis_ops().0, a)
    }

    /// Matrix of `r(a): b ↦ ba`.
    pub fn r_op(&self, a: &Vector) -> Matrix {
        self.combine(&self.basis_ops().1, a)
    }

    pub fn left_op(&self, a: &Vector) -> Result<Matrix, AlgebraError> {
        self.check_vec(a)?;
        Ok(self.l_op(a))
    }

    pub fn right_op(&self, a: &Vector) -> Result<Matrix, AlgebraError> {
        self.check_vec(a)?;
        Ok(self.r_op(a))
    }

    /// Operator conjugate `Q̄ = inv ∘ Q ∘ inv`, the unique map with `conj(Qa) = Q̄ ā`.
    pub fn conjugate_operator(&self, q: &Matrix) -> Result<Matrix, AlgebraError> {
        let n = self.dim();
        if q.field() != self.field {
            return Err(LinalgError::MixedField.into());
        }
        if q.rows() != n || q.cols() != n {
            return Err(AlgebraError::DimensionMismatch { expected: n, found: q.rows().max(q.cols()) });
        }
        Ok(&(&self.inv * q) * &self.inv)
    }

    pub fn sh_split(&self) -> ShSplit {
        let id = Matrix::identity(self.field, self.dim());
        ShSplit { s: kernel(&(&self.inv - &id)), h: kernel(&(&self.inv + &id)) }
    }

    /// Slot ranging over the H-basis, labelled as linear combinations.
    pub fn h_slot(&self) -> Slot {
        let h = self.sh_split().h;
        let labels = h.iter().map(|v| self.format_element(v)).collect();
        Slot::new(h, labels)
    }

    /// Slot ranging over the S-basis, labelled as linear combinations.
    pub fn s_slot(&self) -> Slot {
        let s = self.sh_split().s;
        let labels = s.iter().map(|v| self.format_element(v)).collect();
        Slot::new(s, labels)
    }

    /// Human-readable linear combination such as `2 e - 1/2 f`.
    pub fn format_element(&self, v: &Vector) -> String {
        let mut out = String::new();
        for (i, c) in v.support() {
            let s = c.to_string();
            let (neg, mag) = match (self.field, s.strip_prefix('-')) {
                (Field::Rational, Some(m)) => (true, m.to_string()),
                _ => (false, s),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mag != "1" {
                out.push_str(&mag);
                out.push(' ');
            }
            out.push_str(&self.basis[i]);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Checks the unit law, `inv² = id`, `ē = e`, and `conj(xy) = ȳ x̄` on basis elements.
    pub fn validate(&self) -> IdentityReport {
        let (f, n) = (self.field, self.dim());
        let basis = self.basis_slot();
        let mode = CheckMode::Exhaustive;
        let mut report = IdentityReport::new();
        report.push(
            "unit-law",
            scan_simple(mode, f, n, &[&basis], no_filter, |x| {
                let a = x[0];
                let l = self.mul(&self.unit, a) - a.clone();
                let r = self.mul(a, &self.unit) - a.clone();
                Vector::concat(f, &[l, r]).expect("same field")
            }),
        );
        report.push(
            "involution-squared",
            scan_simple(mode, f, n, &[&basis], no_filter, |x| self.conj(&self.conj(x[0])) - x[0].clone()),
        );
        let unit_slot = Slot::new(vec![self.unit.clone()], vec!["e".into()]);
        report.push(
            "involution-fixes-unit",
            scan_simple(mode, f, n, &[&unit_slot], no_filter, |e| self.conj(e[0]) - e[0].clone()),
        );
        report.push(
            "anti-automorphism",
            scan_simple(mode, f, n, &[&basis, &basis], no_filter, |a| {
                self.conj(&self.mul(a[0], a[1])) - self.mul(&self.conj(a[1]), &self.conj(a[0]))
            }),
        );
        report
    }

    pub fn commutativity_check(&self) -> Verdict {
        let b = self.basis_slot();
        scan_simple(CheckMode::Exhaustive, self.field, self.dim(), &[&b, &b], |i| i[0] < i[1], |a| {
            self.mul(a[0], a[1]) - self.mul(a[1], a[0])
        })
    }

    pub fn associativity_check(&self) -> Verdict {
        let b = self.basis_slot();
        scan_simple(CheckMode::Exhaustive, self.field, self.dim(), &[&b, &b, &b], no_filter, |a| {
            self.assoc(a[0], a[1], a[2])
        })
    }

    /// Alternative laws `[a,a,b] = 0 = [a,b,b]`, checked in linearized form on basis pairs.
    pub fn alternativity_check(&self) -> Verdict {
        let b = self.basis_slot();
        let f = self.field;
        scan_simple(CheckMode::Exhaustive, f, self.dim(), &[&b, &b, &b], no_filter, |a| {
            let left = self.assoc(a[0], a[1], a[2]) + self.assoc(a[1], a[0], a[2]);
            let right = self.assoc(a[2], a[0], a[1]) + self.assoc(a[2], a[1], a[0]);
            Vector::concat(f, &[left, right]).expect("same field")
        })
    }

    /// The same algebra over another field (rational constants reduced modulo `p`).
    pub fn convert(&self, field: Field) -> Result<Algebra, AlgebraError> {
        let n = self.dim();
        let products: Vec<Vector> =
            (0..n * n).map(|ij| self.basis_product(ij / n, ij % n).convert(field)).collect::<Result<_, _>>()?;
        let mut out = Algebra::from_table(
            self.name.clone(),
            field,
            self.basis.clone(),
            &products,
            self.unit.convert(field)?,
            self.inv.convert(field)?,
        )?;
        if let Some(z) = &self.zorn {
            out.zorn = Some(ZornData { bdim: z.bdim, bform: z.bform.convert(field)? });
        }
        Ok(out)
    }
}

/// Tensor product with basis `a_b`, product `(a⊗b)(c⊗d) = ac⊗bd` and involution `ā⊗b̄`.
pub fn tensor_product(a: &Algebra, b: &Algebra) -> Result<Algebra, AlgebraError> {
    if a.field != b.field {
        return Err(LinalgError::MixedField.into());
    }
    let field = a.field;
    let (n1, n2) = (a.dim(), b.dim());
    let n = n1 * n2;
    let kron = |x: &Vector, y: &Vector| {
        let mut v = Vector::zeros(field, n);
        for (i, xi) in x.support() {
            for (j, yj) in y.support() {
                v[i * n2 + j] = xi * yj;
            }
        }
        v
    };
    let basis = a.basis.iter().flat_map(|x| b.basis.iter().map(move |y| format!("{x}_{y}"))).collect();
    let mut products = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (i1, i2, j1, j2) = (i / n2, i % n2, j / n2, j % n2);
            products.push(kron(&a.basis_product(i1, j1), &b.basis_product(i2, j2)));
        }
    }
    let cols: Vec<Vector> =
        (0..n).map(|i| kron(&a.inv.column(i / n2), &b.inv.column(i % n2))).collect();
    let inv = Matrix::from_columns(field, n, &cols)?;
    Algebra::from_table(format!("{}⊗{}", a.name, b.name), field, basis, &products, kron(&a.unit, &b.unit), inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn remark211(alpha: i64, beta: i64) -> Algebra {
        catalog("remark211", &CatalogParams::from_ints(&[("alpha", alpha), ("beta", beta)])).unwrap().algebra
    }

    #[test]
    fn unit_operators_are_identity() {
        for entry in ["octonion", "kuzmin", "remark18-b"] {
            let a = catalog(entry, &CatalogParams::new()).unwrap().algebra;
            let id = Matrix::identity(a.field(), a.dim());
            assert_eq!(a.l_op(a.unit()), id);
            assert_eq!(a.r_op(a.unit()), id);
        }
    }

    #[test]
    fn left_operator_matches_product_table() {
        let a = catalog("octonion", &CatalogParams::new()).unwrap().algebra;
        for i in 0..8 {
            for j in 0..8 {
                let (x, y) = (a.basis_vector(i), a.basis_vector(j));
                assert_eq!(a.l_op(&x).apply(&y), a.mul(&x, &y));
                assert_eq!(a.r_op(&y).apply(&x), a.mul(&x, &y));
            }
        }
    }

    #[test]
    fn remark211_square_of_g() {
        let a = remark211(1, 1);
        let g = a.basis_vector(2);
        assert_eq!(a.mul(&g, &g), Vector::from_i64(a.field(), &[1, 1, 0]));
        assert!(a.assoc(&g, &g, &g).is_zero());
    }

    #[test]
    fn sh_split_dimensions() {
        let dims = |name: &str| {
            let s = catalog(name, &CatalogParams::new()).unwrap().algebra.sh_split();
            (s.s.len(), s.h.len())
        };
        assert_eq!(dims("remark211"), (3, 0));
        assert_eq!(dims("octonion"), (1, 7));
        assert_eq!(dims("remark18-b"), (2, 1));
    }

    #[test]
    fn negated_involution_fails_unit_check() {
        let a = remark211(1, 1);
        let n = a.dim();
        let neg = -&Matrix::identity(a.field(), n);
        let products: Vec<Vector> = (0..n * n).map(|k| a.basis_product(k / n, k % n)).collect();
        let b = Algebra::from_table("neg", a.field(), a.basis_names().to_vec(), &products, a.unit().clone(), neg)
            .unwrap();
        let r = b.validate();
        assert!(r.get("involution-fixes-unit").unwrap().is_fails());
        assert!(r.get("unit-law").unwrap().is_holds());
    }

    #[test]
    fn sign_flip_in_octonion_is_caught() {
        let a = catalog("octonion", &CatalogParams::new()).unwrap().algebra;
        let n = a.dim();
        let mut products: Vec<Vector> = (0..n * n).map(|k| a.basis_product(k / n, k % n)).collect();
        // x1 x2 is a nonzero product of two non-unit basis elements.
        let (i, j) = (a.basis_index("x1").unwrap(), a.basis_index("x2").unwrap());
        products[i * n + j] = -&products[i * n + j];
        let b = Algebra::from_table("bad", a.field(), a.basis_names().to_vec(), &products, a.unit().clone(), a.involution().clone())
            .unwrap();
        let v = b.validate();
        let w = v.get("anti-automorphism").unwrap();
        assert!(w.is_fails());
        assert!(w.witness.is_some());
    }

    #[test]
    fn tensor_with_field_algebra_is_isomorphic() {
        let a = remark211(1, 1);
        let f = Algebra::from_table(
            "F",
            Field::Rational,
            vec!["1".into()],
            &[Vector::from_i64(Field::Rational, &[1])],
            Vector::from_i64(Field::Rational, &[1]),
            Matrix::identity(Field::Rational, 1),
        )
        .unwrap();
        let t = tensor_product(&a, &f).unwrap();
        let n = a.dim();
        for k in 0..n * n {
            assert_eq!(t.basis_product(k / n, k % n), a.basis_product(k / n, k % n));
        }
        assert_eq!(t.unit(), a.unit());
        assert_eq!(t.involution(), a.involution());
        assert_eq!(t.basis_names()[2], "g_1");
    }

    #[test]
    fn format_element_output() {
        let a = remark211(1, 1);
        let f = a.field();
        let v = Vector::new(f, vec![f.int(2), f.ratio(-1, 2).unwrap(), f.int(-1)]).unwrap();
        assert_eq!(a.format_element(&v), "2 e - 1/2 f - g");
        assert_eq!(a.format_element(&Vector::zeros(f, 3)), "0");
    }

    #[test]
    fn checked_operations_reject_bad_lengths() {
        let a = remark211(1, 1);
        let short = Vector::zeros(a.field(), 2);
        assert!(matches!(a.multiply(&short, a.unit()), Err(AlgebraError::DimensionMismatch { .. })));
        assert!(a.left_op(&short).is_err());
        assert!(a.associator(a.unit(), a.unit(), &short).is_err());
    }
}
