use std::collections::BTreeMap;

use super::{tensor_product, zorn, Algebra, AlgebraError, ZornFlavor};
use crate::forms::zorn_form;
use crate::linalg::{Field, Matrix, Rational, Scalar, Vector};

/// A named algebra together with the bilinear form and linear functional that accompany it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub algebra: Algebra,
    /// Gram matrix of the associated symmetric form, when one is part of the example.
    pub form: Option<Matrix>,
    /// Multiplicative linear functional, when one is part of the example.
    pub phi: Option<Vector>,
}

/// Named rational parameters for the parametrized families.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CatalogParams {
    values: BTreeMap<String, Rational>,
}

impl CatalogParams {
    pub fn new() -> CatalogParams {
        CatalogParams::default()
    }

    pub fn from_ints(pairs: &[(&str, i64)]) -> CatalogParams {
        let mut p = CatalogParams::new();
        for (k, v) in pairs {
            p.set(k, Rational::from_integer(*v));
        }
        p
    }

    pub fn set(&mut self, key: &str, value: Rational) {
        self.values.insert(key.to_string(), value);
    }

    pub fn get(&self, key: &str) -> Option<&Rational> {
        self.values.get(key)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.values.keys().map(String::as_str)
    }
}

const NAMES: [&str; 8] =
    ["octonion", "quaternion", "kuzmin", "zorn-trivial", "remark18-a", "remark18-b", "remark211", "oxo"];

pub fn catalog_names() -> &'static [&'static str] {
    &NAMES
}

/// Parameter names and defaults accepted by a catalog family.
pub fn catalog_parameters(name: &str) -> &'static [(&'static str, i64)] {
    match name {
        "remark18-a" => &[("alpha", 1), ("beta", 1)],
        "remark18-b" => &[("alpha", 1), ("lambda", 2)],
        "remark211" => &[("alpha", 1), ("beta", 1)],
        _ => &[],
    }
}

fn param(name: &'static str, params: &CatalogParams, key: &str) -> Scalar {
    let default = catalog_parameters(name).iter().find(|(k, _)| *k == key).expect("declared parameter").1;
    Scalar::Rational(params.get(key).cloned().unwrap_or_else(|| Rational::from_integer(default)))
}

/// Builds a catalog algebra over the rationals. Every parameter has a default.
pub fn catalog(name: &str, params: &CatalogParams) -> Result<CatalogEntry, AlgebraError> {
    let Some(&known) = NAMES.iter().find(|n| **n == name) else {
        return Err(AlgebraError::UnknownCatalogName(name.to_string()));
    };
    if let Some(bad) = params.keys().find(|k| !catalog_parameters(known).iter().any(|(p, _)| p == k)) {
        return Err(AlgebraError::UnexpectedParameter { name: known, param: bad.to_string() });
    }
    let f = Field::Rational;
    let with_form = |algebra: Algebra, phi: Option<Vector>| {
        let form = zorn_form(&algebra).ok().map(|b| b.gram().clone());
        CatalogEntry { algebra, form, phi }
    };
    let neg = |k: usize| -&Matrix::identity(f, k);
    match known {
        "octonion" => {
            let mut t = vec![Vector::zeros(f, 3); 9];
            for (i, j, l) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
                t[i * 3 + j] = Vector::basis(f, 3, l);
                t[j * 3 + i] = -&Vector::basis(f, 3, l);
            }
            // The base law x(yz) = (y|x)z - (x|z)y forces (e_i|e_j) = -δ_ij for the cross-product table.
            Ok(with_form(zorn(known, f, &t, &neg(3), &neg(3), ZornFlavor::AnticommutativeSkew)?, None))
        }
        "quaternion" => Ok(with_form(
            zorn(known, f, &[Vector::zeros(f, 1)], &Matrix::identity(f, 1), &neg(1), ZornFlavor::AnticommutativeSkew)?,
            None,
        )),
        "kuzmin" => {
            let mut t = vec![Vector::zeros(f, 2); 4];
            t[1] = Vector::basis(f, 2, 0);
            t[2] = -&Vector::basis(f, 2, 0);
            let form = Matrix::from_i64(f, &[&[0, 0], &[0, 1]]);
            Ok(with_form(zorn(known, f, &t, &form, &neg(2), ZornFlavor::AnticommutativeSkew)?, None))
        }
        "zorn-trivial" => Ok(with_form(
            zorn(known, f, &[], &Matrix::zeros(f, 0, 0), &Matrix::zeros(f, 0, 0), ZornFlavor::General)?,
            None,
        )),
        "remark18-a" => {
            let (a, b) = (param(known, params, "alpha"), param(known, params, "beta"));
            let ab = &a * &b;
            let alg = three_dim(
                known,
                [
                    (1, 1, [&a * &a, f.zero(), f.zero()]),
                    (2, 2, [&b * &b, f.zero(), f.zero()]),
                    (1, 2, [-&ab, b.clone(), a.clone()]),
                    (2, 1, [-&ab, -&b, -&a]),
                ],
                [1, -1, -1],
            )?;
            let form = sym3([f.one(), f.zero(), f.zero(), -&(&a * &a), ab.clone(), -&(&b * &b)]);
            let phi = Vector::new(f, vec![f.one(), a, -&b])?;
            Ok(CatalogEntry { algebra: alg, form: Some(form), phi: Some(phi) })
        }
        "remark18-b" => {
            let (a, l) = (param(known, params, "alpha"), param(known, params, "lambda"));
            let alg = three_dim(
                known,
                [
                    (1, 1, [&a * &a, f.zero(), f.zero()]),
                    (1, 2, [f.zero(), f.zero(), a.clone()]),
                    (2, 1, [f.zero(), f.zero(), a.clone()]),
                    (2, 2, [&l * &a, l.clone(), f.zero()]),
                ],
                [1, 1, -1],
            )?;
            let two_la = &(&f.int(2) * &l) * &a;
            let form = sym3([f.one(), a.clone(), f.zero(), &a * &a, f.zero(), -&two_la]);
            let root = two_la.as_rational().and_then(Rational::sqrt_exact).ok_or_else(|| {
                AlgebraError::InvalidParameter(format!(
                    "remark18-b needs 2·lambda·alpha to be a rational square for phi(g); got {two_la}"
                ))
            })?;
            let phi = Vector::new(f, vec![f.one(), a, Scalar::Rational(root)])?;
            Ok(CatalogEntry { algebra: alg, form: Some(form), phi: Some(phi) })
        }
        "remark211" => {
            let (a, b) = (param(known, params, "alpha"), param(known, params, "beta"));
            let alg = three_dim(known, [(2, 2, [a, b, f.zero()])], [1, 1, 1])?;
            Ok(CatalogEntry { algebra: alg, form: None, phi: None })
        }
        "oxo" => {
            let o = catalog("octonion", &CatalogParams::new())?.algebra;
            Ok(CatalogEntry { algebra: tensor_product(&o, &o)?.with_name("oxo"), form: None, phi: None })
        }
        _ => unreachable!("name checked against the catalog list"),
    }
}

/// Three-dimensional algebra on `e, f, g` with unit `e`, diagonal involution and the given
/// non-unit products; omitted products are zero.
fn three_dim<const K: usize>(
    name: &str,
    products: [(usize, usize, [Scalar; 3]); K],
    signs: [i64; 3],
) -> Result<Algebra, AlgebraError> {
    let f = Field::Rational;
    let mut table = vec![Vector::zeros(f, 3); 9];
    for i in 0..3 {
        table[i] = Vector::basis(f, 3, i);
        table[i * 3] = Vector::basis(f, 3, i);
    }
    for (i, j, c) in products {
        table[i * 3 + j] = Vector::new(f, c.to_vec())?;
    }
    let mut inv = Matrix::zeros(f, 3, 3);
    for (i, s) in signs.iter().enumerate() {
        inv[(i, i)] = f.int(*s);
    }
    let basis = ["e", "f", "g"].map(String::from).to_vec();
    Algebra::from_table(name, f, basis, &table, Vector::basis(f, 3, 0), inv)
}

/// Symmetric 3x3 Gram matrix from its upper triangle `[ee, ef, eg, ff, fg, gg]`.
fn sym3(u: [Scalar; 6]) -> Matrix {
    let [ee, ef, eg, ff, fg, gg] = u;
    Matrix::from_rows(
        Field::Rational,
        vec![vec![ee, ef.clone(), eg.clone()], vec![ef, ff, fg.clone()], vec![eg, fg, gg]],
    )
    .expect("square rational matrix")
}
