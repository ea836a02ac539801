//! Line-oriented algebra definition files.
//!
//! ```text
//! # comments run to end of line
//! algebra remark211
//! field rational            # or: field mod 2147483629
//! dim 3
//! basis e f g
//! unit e
//! inv g = -1 g              # omitted inv lines leave the basis vector fixed
//! mul g g = 1 e + 1 f       # omitted products are zero; unit products are implied
//! form e e = 1
//! phi e = 1
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use thiserror::Error;
use triality_core::algebra::{Algebra, AlgebraError};
use triality_core::linalg::{Field, Matrix, Scalar, Vector};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown identifier `{id}`")]
    UnknownIdentifier { line: usize, id: String },
    #[error("line {line}: {msg}")]
    Duplicate { line: usize, msg: String },
    #[error("line {line}: unit-law conflict: {msg}")]
    UnitLaw { line: usize, msg: String },
    #[error("line {line}: {msg}")]
    Modulus { line: usize, msg: String },
    #[error("missing `{0}` directive")]
    Missing(&'static str),
    #[error("cannot write {0} as a definition file: the unit is not a basis element")]
    UnitNotBasis(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `(coefficient, identifier)` terms of a linear combination.
pub type Terms = Vec<(Scalar, String)>;

/// A definition file after parsing, before it is turned into an [`Algebra`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub name: String,
    pub field: Field,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: String,
    /// `(line, id, combination)`.
    pub inv: Vec<(usize, String, Terms)>,
    /// `(line, left, right, combination)`.
    pub mul: Vec<(usize, String, String, Terms)>,
    pub form: Vec<(usize, String, String, Scalar)>,
    pub phi: Vec<(usize, String, Scalar)>,
}

/// An algebra together with the optional form and functional declared beside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definition {
    pub algebra: Algebra,
    pub form: Option<Matrix>,
    pub phi: Option<Vector>,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn parse_field(line: usize, rest: &[&str]) -> Result<Field, FileError> {
    match rest {
        ["rational"] => Ok(Field::Rational),
        ["mod", p] => {
            let p: u64 = p.parse().map_err(|_| FileError::Syntax { line, msg: format!("bad modulus `{p}`") })?;
            if !is_prime(p) {
                return Err(FileError::Modulus { line, msg: format!("modulus {p} is not prime") });
            }
            if p < 5 {
                return Err(FileError::Modulus { line, msg: format!("modulus {p} is below 5") });
            }
            Field::prime(p).map_err(|e| FileError::Modulus { line, msg: e.to_string() })
        }
        _ => Err(FileError::Syntax { line, msg: "expected `field rational` or `field mod <p>`".into() }),
    }
}

fn scalar(field: Field, line: usize, text: &str) -> Result<Scalar, FileError> {
    field.parse_scalar(text).map_err(|_| FileError::Syntax { line, msg: format!("bad scalar `{text}`") })
}

fn looks_numeric(t: &str) -> bool {
    t.trim_start_matches(['-', '+']).starts_with(|c: char| c.is_ascii_digit())
}

/// `<scalar> <id> { (+|-) <scalar> <id> }`, or `0`. A missing scalar means 1.
fn lincomb(field: Field, line: usize, toks: &[&str]) -> Result<Terms, FileError> {
    if toks == ["0"] {
        return Ok(Vec::new());
    }
    let err = |msg: &str| FileError::Syntax { line, msg: msg.to_string() };
    let mut out = Vec::new();
    let mut i = 0;
    let mut sign = false;
    loop {
        let Some(&t) = toks.get(i) else { return Err(err("expected a term")) };
        let (c, id) = if looks_numeric(t) {
            let id = toks.get(i + 1).ok_or_else(|| err("expected an identifier after the coefficient"))?;
            i += 2;
            (scalar(field, line, t)?, *id)
        } else {
            i += 1;
            (field.one(), t)
        };
        if looks_numeric(id) || matches!(id, "+" | "-" | "=") {
            return Err(err(&format!("expected an identifier, found `{id}`")));
        }
        out.push((if sign { -&c } else { c }, id.to_string()));
        match toks.get(i) {
            None => return Ok(out),
            Some(&"+") => sign = false,
            Some(&"-") => sign = true,
            Some(t) => return Err(err(&format!("expected `+` or `-`, found `{t}`"))),
        }
        i += 1;
    }
}

fn split_eq<'a>(line: usize, toks: &'a [&'a str], lhs: usize) -> Result<(&'a [&'a str], &'a [&'a str]), FileError> {
    if toks.len() < lhs + 2 || toks[lhs] != "=" {
        return Err(FileError::Syntax { line, msg: format!("expected {lhs} identifier(s) then `=`") });
    }
    Ok((&toks[..lhs], &toks[lhs + 1..]))
}

/// Parses the text of a definition file.
pub fn parse_text(text: &str) -> Result<AlgebraFile, FileError> {
    let mut name = None;
    let mut field = None;
    let mut dim = None;
    let mut basis: Option<Vec<String>> = None;
    let mut unit = None;
    let mut inv = Vec::new();
    let mut mul = Vec::new();
    let mut form = Vec::new();
    let mut phi = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        let Some((&head, rest)) = toks.split_first() else { continue };
        let once = |seen: bool, what: &str| {
            if seen {
                Err(FileError::Duplicate { line, msg: format!("repeated `{what}` directive") })
            } else {
                Ok(())
            }
        };
        // The first coefficient fixes the field; without a directive it is rational.
        let mut f = || Ok::<Field, FileError>(field.get_or_insert((Field::Rational, false)).0);
        match head {
            "algebra" => {
                once(name.is_some(), "algebra")?;
                if rest.is_empty() {
                    return Err(FileError::Syntax { line, msg: "expected a name".into() });
                }
                name = Some(rest.join(" "));
            }
            "field" => {
                if let Some((_, explicit)) = field {
                    once(explicit, "field")?;
                    return Err(FileError::Syntax { line, msg: "`field` must precede coefficients".into() });
                }
                field = Some((parse_field(line, rest)?, true));
            }
            "dim" => {
                once(dim.is_some(), "dim")?;
                let [n] = rest else { return Err(FileError::Syntax { line, msg: "expected `dim <n>`".into() }) };
                dim = Some(n.parse::<usize>().map_err(|_| FileError::Syntax { line, msg: format!("bad dimension `{n}`") })?);
            }
            "basis" => {
                once(basis.is_some(), "basis")?;
                if let Some(bad) = rest.iter().find(|t| looks_numeric(t) || matches!(**t, "+" | "-" | "=")) {
                    return Err(FileError::Syntax { line, msg: format!("`{bad}` is not a valid identifier") });
                }
                basis = Some(rest.iter().map(|s| s.to_string()).collect());
            }
            "unit" => {
                once(unit.is_some(), "unit")?;
                let [u] = rest else { return Err(FileError::Syntax { line, msg: "expected `unit <id>`".into() }) };
                unit = Some((line, u.to_string()));
            }
            "inv" => {
                let (l, r) = split_eq(line, rest, 1)?;
                inv.push((line, l[0].to_string(), lincomb(f()?, line, r)?));
            }
            "mul" => {
                let (l, r) = split_eq(line, rest, 2)?;
                mul.push((line, l[0].to_string(), l[1].to_string(), lincomb(f()?, line, r)?));
            }
            "form" => {
                let (l, r) = split_eq(line, rest, 2)?;
                let [s] = r else { return Err(FileError::Syntax { line, msg: "expected a single scalar".into() }) };
                form.push((line, l[0].to_string(), l[1].to_string(), scalar(f()?, line, s)?));
            }
            "phi" => {
                let (l, r) = split_eq(line, rest, 1)?;
                let [s] = r else { return Err(FileError::Syntax { line, msg: "expected a single scalar".into() }) };
                phi.push((line, l[0].to_string(), scalar(f()?, line, s)?));
            }
            other => return Err(FileError::Syntax { line, msg: format!("unknown directive `{other}`") }),
        }
    }
    let basis = basis.ok_or(FileError::Missing("basis"))?;
    let dim = dim.unwrap_or(basis.len());
    let (_, unit) = unit.ok_or(FileError::Missing("unit"))?;
    Ok(AlgebraFile {
        name: name.ok_or(FileError::Missing("algebra"))?,
        field: field.map_or(Field::Rational, |(f, _)| f),
        dim,
        basis,
        unit,
        inv,
        mul,
        form,
        phi,
    })
}

impl AlgebraFile {
    /// Resolves identifiers, fills in unit products and builds the algebra.
    pub fn into_definition(self) -> Result<Definition, FileError> {
        let f = self.field;
        let n = self.basis.len();
        if self.dim != n {
            return Err(FileError::Syntax { line: 0, msg: format!("dim {} but {} basis identifiers", self.dim, n) });
        }
        let mut index = HashMap::new();
        for (i, b) in self.basis.iter().enumerate() {
            if index.insert(b.as_str(), i).is_some() {
                return Err(FileError::Duplicate { line: 0, msg: format!("basis identifier `{b}` declared twice") });
            }
        }
        let idx = |line: usize, id: &str| {
            index.get(id).copied().ok_or_else(|| FileError::UnknownIdentifier { line, id: id.to_string() })
        };
        let combo = |line: usize, terms: &[(Scalar, String)]| -> Result<Vector, FileError> {
            let mut v = Vector::zeros(f, n);
            for (c, id) in terms {
                let i = idx(line, id)?;
                v[i] += c;
            }
            Ok(v)
        };
        let u = idx(0, &self.unit)?;
        let mut table: Vec<Option<Vector>> = vec![None; n * n];
        for (line, a, b, terms) in &self.mul {
            let (i, j) = (idx(*line, a)?, idx(*line, b)?);
            if table[i * n + j].is_some() {
                return Err(FileError::Duplicate { line: *line, msg: format!("product `{a} {b}` declared twice") });
            }
            let v = combo(*line, terms)?;
            let expected = if i == u { Some(j) } else if j == u { Some(i) } else { None };
            if let Some(k) = expected {
                if v != Vector::basis(f, n, k) {
                    let other = &self.basis[k];
                    return Err(FileError::UnitLaw { line: *line, msg: format!("`{a} {b}` must equal {other}") });
                }
            }
            table[i * n + j] = Some(v);
        }
        let products: Vec<Vector> = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                table[k].clone().unwrap_or_else(|| match (i == u, j == u) {
                    (true, _) => Vector::basis(f, n, j),
                    (_, true) => Vector::basis(f, n, i),
                    _ => Vector::zeros(f, n),
                })
            })
            .collect();
        let mut inv = Matrix::identity(f, n);
        let mut seen = vec![false; n];
        for (line, id, terms) in &self.inv {
            let i = idx(*line, id)?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(FileError::Duplicate { line: *line, msg: format!("involution of `{id}` declared twice") });
            }
            let v = combo(*line, terms)?;
            for r in 0..n {
                inv[(r, i)] = v[r].clone();
            }
        }
        let form = if self.form.is_empty() {
            None
        } else {
            let mut entries: BTreeMap<(usize, usize), (usize, Scalar)> = BTreeMap::new();
            for (line, a, b, s) in &self.form {
                let (i, j) = (idx(*line, a)?, idx(*line, b)?);
                let key = (i.min(j), i.max(j));
                if let Some((first, prev)) = entries.get(&key) {
                    if prev != s {
                        return Err(FileError::Duplicate {
                            line: *line,
                            msg: format!("form entry `{a} {b}` conflicts with line {first}"),
                        });
                    }
                }
                entries.insert(key, (*line, s.clone()));
            }
            let mut g = Matrix::zeros(f, n, n);
            for ((i, j), (_, s)) in entries {
                g[(i, j)] = s.clone();
                g[(j, i)] = s;
            }
            Some(g)
        };
        let phi = if self.phi.is_empty() {
            None
        } else {
            let mut v = Vector::zeros(f, n);
            let mut seen = vec![false; n];
            for (line, id, s) in &self.phi {
                let i = idx(*line, id)?;
                if std::mem::replace(&mut seen[i], true) {
                    return Err(FileError::Duplicate { line: *line, msg: format!("phi of `{id}` declared twice") });
                }
                v[i] = s.clone();
            }
            Some(v)
        };
        let algebra = Algebra::from_table(self.name, f, self.basis, &products, Vector::basis(f, n, u), inv)?;
        Ok(Definition { algebra, form, phi })
    }
}

pub fn parse_definition(text: &str) -> Result<Definition, FileError> {
    parse_text(text)?.into_definition()
}

fn combo_text(a: &Algebra, v: &Vector) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = v.support().map(|(i, c)| format!("{c} {}", a.basis_names()[i])).collect();
    terms.join(" + ")
}

/// Writes a definition file that parses back to an equal algebra.
pub fn emit_definition(def: &Definition) -> Result<String, FileError> {
    let a = &def.algebra;
    let n = a.dim();
    let names = a.basis_names();
    let u = a
        .unit()
        .first_nonzero()
        .filter(|&u| *a.unit() == Vector::basis(a.field(), n, u))
        .ok_or_else(|| FileError::UnitNotBasis(a.name().to_string()))?;
    let mut out = String::new();
    let _ = writeln!(out, "algebra {}", a.name());
    match a.field() {
        Field::Rational => out.push_str("field rational\n"),
        Field::Prime(p) => {
            let _ = writeln!(out, "field mod {p}");
        }
    }
    let _ = writeln!(out, "dim {n}");
    let _ = writeln!(out, "basis {}", names.join(" "));
    let _ = writeln!(out, "unit {}", names[u]);
    for i in 0..n {
        let c = a.involution().column(i);
        if c != Vector::basis(a.field(), n, i) {
            let _ = writeln!(out, "inv {} = {}", names[i], combo_text(a, &c));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == u || j == u {
                continue;
            }
            let p = a.basis_product(i, j);
            if !p.is_zero() {
                let _ = writeln!(out, "mul {} {} = {}", names[i], names[j], combo_text(a, &p));
            }
        }
    }
    if let Some(g) = &def.form {
        for i in 0..n {
            for j in i..n {
                if !g[(i, j)].is_zero() {
                    let _ = writeln!(out, "form {} {} = {}", names[i], names[j], g[(i, j)]);
                }
            }
        }
    }
    if let Some(phi) = &def.phi {
        for (i, c) in phi.support() {
            let _ = writeln!(out, "phi {} = {c}", names[i]);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const R211: &str = "algebra r\nfield rational\ndim 3\nbasis e f g\nunit e\nmul g g = 1 e + 1 f\n";

    #[test]
    fn parses_small_definition() {
        let d = parse_definition(R211).unwrap();
        let a = &d.algebra;
        assert_eq!(a.mul(&a.basis_vector(2), &a.basis_vector(2)), Vector::from_i64(Field::Rational, &[1, 1, 0]));
        assert_eq!(a.mul(&a.basis_vector(0), &a.basis_vector(1)), a.basis_vector(1));
        assert!(a.validate().no_failures());
    }

    #[test]
    fn lincomb_forms() {
        let f = Field::Rational;
        let t = lincomb(f, 1, &["e", "-", "1/2", "f", "+", "-3", "g"]).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[1].0, f.ratio(-1, 2).unwrap());
        assert_eq!(t[2].0, f.int(-3));
        assert!(lincomb(f, 1, &["2"]).is_err());
        assert!(lincomb(f, 1, &["2", "e", "3", "f"]).is_err());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "algebra x\nfield rational\nbasis e f\nunit e\nmul e f = 2 f\n";
        assert!(matches!(parse_definition(bad), Err(FileError::UnitLaw { line: 5, .. })));
        let bad = "algebra x\nfield mod 4\nbasis e\nunit e\n";
        let err = parse_definition(bad).unwrap_err();
        assert!(matches!(err, FileError::Modulus { line: 2, .. }) && err.to_string().contains("not prime"));
        let bad = "algebra x\nfield mod 3\nbasis e\nunit e\n";
        assert!(matches!(parse_definition(bad), Err(FileError::Modulus { line: 2, .. })));
        let bad = "algebra x\nbasis e f\nunit e\nmul f q = 1 f\n";
        assert!(matches!(parse_definition(bad), Err(FileError::UnknownIdentifier { line: 4, .. })));
        let bad = "algebra x\nbasis e f\nunit e\nmul f f = 1 f\nmul f f = 1 e\n";
        assert!(matches!(parse_definition(bad), Err(FileError::Duplicate { line: 5, .. })));
        let bad = "algebra x\nbasis e\nunit e\ninv e = 1 e\nfield mod 7\n";
        assert!(matches!(parse_definition(bad), Err(FileError::Syntax { line: 5, .. })));
        let bad = "algebra x\nbasis e f\nunit e\nfrobnicate\n";
        assert!(matches!(parse_definition(bad), Err(FileError::Syntax { line: 4, .. })));
        assert_eq!(parse_definition("basis e\nunit e\n"), Err(FileError::Missing("algebra")));
    }

    #[test]
    fn emit_round_trips() {
        let d = parse_definition(R211).unwrap();
        assert_eq!(parse_definition(&emit_definition(&d).unwrap()).unwrap(), d);
    }
}
