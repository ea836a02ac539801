//! The run report: one serde record rendered either as JSON or as text.
//!
//! Scalars are strings `p/q` over the rationals and integers over a prime field.
//! Field order in the structs is the key order of the JSON document.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use triality_core::check::{IdentityReport, ModeRecord, Status, Verdict, Witness};
use triality_core::linalg::{Scalar, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Int(u64),
    Text(String),
}

impl From<&Scalar> for ScalarRepr {
    fn from(s: &Scalar) -> ScalarRepr {
        match s {
            Scalar::Rational(q) => ScalarRepr::Text(q.to_string()),
            Scalar::Prime(x) => ScalarRepr::Int(x.value() as u64),
        }
    }
}

impl std::fmt::Display for ScalarRepr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScalarRepr::Int(v) => write!(f, "{v}"),
            ScalarRepr::Text(t) => f.write_str(t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeRepr {
    /// `exhaustive` or `probabilistic`.
    pub kind: String,
    pub trials: Option<usize>,
    /// `None` for rational sampling.
    pub prime: Option<u32>,
    pub seed: Option<u64>,
}

impl From<&ModeRecord> for ModeRepr {
    fn from(m: &ModeRecord) -> ModeRepr {
        match m {
            ModeRecord::Exhaustive => ModeRepr { kind: "exhaustive".into(), trials: None, prime: None, seed: None },
            ModeRecord::Probabilistic { trials, prime, seed } => ModeRepr {
                kind: "probabilistic".into(),
                trials: Some(*trials),
                prime: *prime,
                seed: Some(*seed),
            },
        }
    }
}

impl std::fmt::Display for ModeRepr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.trials, self.seed) {
            (Some(t), Some(s)) => {
                write!(f, "probabilistic, {t} trials, seed {s}")?;
                match self.prime {
                    Some(p) => write!(f, ", mod {p}"),
                    None => write!(f, ", rational samples"),
                }
            }
            _ => f.write_str(&self.kind),
        }
    }
}

/// A failing tuple. `args` are labels (basis names, or sample indices for random tuples).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRepr {
    pub args: Vec<String>,
    /// The arguments written in the basis.
    pub values: Vec<String>,
    pub trial: Option<usize>,
    /// Nonzero defect written in the basis when it has the basis length, as raw coordinates otherwise.
    pub defect: String,
    pub defect_coordinates: Vec<ScalarRepr>,
}

/// Writes `v` as a combination of `names`, as `format_element` does for algebras.
pub fn format_in(names: &[String], v: &Vector) -> String {
    let mut out = String::new();
    for (i, c) in v.support() {
        let text = c.to_string();
        let (neg, mag) = match text.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, text),
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
        out.push_str(&names[i]);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn raw_coordinates(v: &Vector) -> String {
    let parts: Vec<String> = v.support().map(|(i, c)| format!("[{i}] {c}")).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(", ")
    }
}

impl WitnessRepr {
    pub fn new(w: &Witness, names: &[String]) -> WitnessRepr {
        let show = |v: &Vector| if v.len() == names.len() { format_in(names, v) } else { raw_coordinates(v) };
        WitnessRepr {
            args: w.labels.clone(),
            values: w.args.iter().map(show).collect(),
            trial: w.trial,
            defect: show(&w.defect),
            defect_coordinates: w.defect.entries().iter().map(ScalarRepr::from).collect(),
        }
    }
}

/// One named verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// `holds`, `fails` or `skipped`.
    pub status: String,
    /// Why the check was skipped.
    pub reason: Option<String>,
    pub note: Option<String>,
    pub mode: ModeRepr,
    pub witness: Option<WitnessRepr>,
}

impl Check {
    pub fn new(name: impl Into<String>, v: &Verdict, names: &[String]) -> Check {
        let (status, reason) = match &v.status {
            Status::Holds => ("holds", None),
            Status::Fails => ("fails", None),
            Status::Skipped(r) => ("skipped", Some(r.clone())),
        };
        Check {
            name: name.into(),
            status: status.into(),
            reason,
            note: v.note.clone(),
            mode: ModeRepr::from(&v.mode),
            witness: v.witness.as_ref().map(|w| WitnessRepr::new(w, names)),
        }
    }

    pub fn list(r: &IdentityReport, names: &[String]) -> Vec<Check> {
        r.entries().iter().map(|(n, v)| Check::new(n.clone(), v, names)).collect()
    }

    pub fn fails(&self) -> bool {
        self.status == "fails"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSummary {
    pub name: String,
    pub field: String,
    pub dim: usize,
    pub dim_s: usize,
    pub dim_h: usize,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct A0Summary {
    pub dim: usize,
    pub basis: Vec<String>,
    pub contains_unit: bool,
    pub closed_under_product: bool,
    pub closed_under_involution: bool,
    pub structurable: Check,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certification {
    /// `structurable`, `pre-structurable` or `neither`.
    pub verdict: String,
    pub pre_structurable: Check,
    pub structurable: Check,
    /// Joint kernel of `Q`, reported for pre-structurable algebras that are not structurable.
    pub a0: Option<A0Summary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieSection {
    pub gamma: Vec<ScalarRepr>,
    pub dim_l: usize,
    pub dim_t: usize,
    pub dim_lj: Vec<usize>,
    pub certified: ModeRepr,
    pub closure: Vec<Check>,
    pub jacobi: Check,
    pub z3: Check,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormsSection {
    /// `file`, `derived` or `none`.
    pub form_source: String,
    pub quadratic: Check,
    pub composition: Check,
    pub associativity: Check,
    pub radical_dim: Option<usize>,
    pub radical: Vec<String>,
    pub phi: Check,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorSummary {
    /// `skew` for `H`, `derived` for `[A,A]`.
    pub subspace: String,
    pub dim: usize,
    pub anticommutative: Check,
    pub malcev: Check,
    pub jacobi: Check,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub key: String,
    pub expected: String,
    pub actual: String,
    pub met: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub algebra: AlgebraSummary,
    pub validation: Vec<Check>,
    pub identities: Vec<Check>,
    pub certification: Certification,
    pub lie: Option<LieSection>,
    pub forms: Option<FormsSection>,
    pub malcev: Vec<CommutatorSummary>,
    /// Why the command declined to produce its main result.
    pub refusal: Option<String>,
    pub expectations: Vec<Expectation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub index: usize,
    pub name: String,
    /// Where the definition file was written, if an output directory was given.
    pub path: Option<String>,
    pub structurable: Check,
    pub definition: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub command: String,
    pub dim: usize,
    pub commutative: bool,
    pub field: String,
    pub trials: usize,
    pub seed: u64,
    pub included: Vec<String>,
    pub pre_structurable: usize,
    pub findings: Vec<Finding>,
    pub expectations: Vec<Expectation>,
}

fn status_word(yes: bool) -> &'static str {
    if yes {
        "holds"
    } else {
        "fails"
    }
}

impl RunReport {
    /// Flat key/value view used by `--expect`. Verdicts map to `holds`, `fails` or `skipped`.
    pub fn facts(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let a = &self.algebra;
        m.insert("dim".into(), a.dim.to_string());
        m.insert("dim-s".into(), a.dim_s.to_string());
        m.insert("dim-h".into(), a.dim_h.to_string());
        m.insert("validation".into(), status_word(!self.validation.iter().any(Check::fails)).into());
        for c in self.validation.iter().chain(&self.identities) {
            m.insert(c.name.clone(), c.status.clone());
        }
        let cert = &self.certification;
        m.insert("certification".into(), cert.verdict.clone());
        m.insert("pre-structurable".into(), cert.pre_structurable.status.clone());
        m.insert("structurable".into(), cert.structurable.status.clone());
        if let Some(a0) = &cert.a0 {
            m.insert("a0-dim".into(), a0.dim.to_string());
            m.insert("a0-structurable".into(), a0.structurable.status.clone());
        }
        if let Some(l) = &self.lie {
            m.insert("dim-l".into(), l.dim_l.to_string());
            m.insert("dim-t".into(), l.dim_t.to_string());
            for (j, d) in l.dim_lj.iter().enumerate() {
                m.insert(format!("dim-l{j}"), d.to_string());
            }
            for c in &l.closure {
                m.insert(c.name.clone(), c.status.clone());
            }
            m.insert("jacobi".into(), l.jacobi.status.clone());
            m.insert("z3".into(), l.z3.status.clone());
        }
        if let Some(f) = &self.forms {
            for c in [&f.quadratic, &f.composition, &f.associativity, &f.phi] {
                m.insert(c.name.clone(), c.status.clone());
            }
            if let Some(r) = f.radical_dim {
                m.insert("radical-dim".into(), r.to_string());
            }
        }
        for c in &self.malcev {
            m.insert(format!("{}-dim", c.subspace), c.dim.to_string());
            m.insert(format!("{}-malcev", c.subspace), c.malcev.status.clone());
            m.insert(format!("{}-jacobi", c.subspace), c.jacobi.status.clone());
        }
        m.insert("refused".into(), if self.refusal.is_some() { "yes" } else { "no" }.into());
        m
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

impl SearchReport {
    pub fn facts(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("hits".into(), self.findings.len().to_string());
        m.insert("pre-structurable".into(), self.pre_structurable.to_string());
        m
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Compares `key=value` expectations against `facts`. `yes`/`no` stand for `holds`/`fails`
/// on verdict-valued keys. Unknown keys are an error.
pub fn evaluate_expectations(
    facts: &BTreeMap<String, String>,
    expect: &[(String, String)],
) -> Result<Vec<Expectation>, String> {
    expect
        .iter()
        .map(|(key, expected)| {
            let actual = facts.get(key).ok_or_else(|| {
                let known: Vec<&str> = facts.keys().map(String::as_str).collect();
                format!("unknown --expect key `{key}`; known keys: {}", known.join(", "))
            })?;
            let verdictish = matches!(actual.as_str(), "holds" | "fails" | "skipped");
            let normalized = match (verdictish, expected.as_str()) {
                (true, "yes" | "true") => "holds",
                (true, "no" | "false") => "fails",
                (_, e) => e,
            };
            Ok(Expectation { key: key.clone(), expected: expected.clone(), actual: actual.clone(), met: normalized == actual })
        })
        .collect()
}

fn check_line(out: &mut String, indent: &str, c: &Check) {
    let _ = write!(out, "{indent}{:<40} {}", c.name, c.status);
    if let Some(r) = &c.reason {
        let _ = write!(out, " ({r})");
    }
    if c.mode.kind != "exhaustive" {
        let _ = write!(out, " [{}]", c.mode);
    }
    out.push('\n');
    if let Some(n) = &c.note {
        let _ = writeln!(out, "{indent}    note: {n}");
    }
    if let Some(w) = &c.witness {
        let _ = write!(out, "{indent}    witness: ({})", w.args.join(", "));
        if w.values != w.args {
            let _ = write!(out, " = ({})", w.values.join(", "));
        }
        if let Some(t) = w.trial {
            let _ = write!(out, " at trial {t}");
        }
        let _ = writeln!(out, "\n{indent}    defect: {}", w.defect);
    }
}

fn expectations_text(out: &mut String, ex: &[Expectation]) {
    if ex.is_empty() {
        return;
    }
    out.push_str("expectations:\n");
    for e in ex {
        let mark = if e.met { "ok" } else { "FAILED" };
        let _ = writeln!(out, "  {:<40} {mark} (expected {}, got {})", e.key, e.expected, e.actual);
    }
}

/// Text rendering of a [`RunReport`].
pub fn render_human(r: &RunReport) -> String {
    let mut out = String::new();
    let a = &r.algebra;
    let _ = writeln!(out, "algebra {} over {}: dim {}, dim S {}, dim H {}", a.name, a.field, a.dim, a.dim_s, a.dim_h);
    out.push_str("validation:\n");
    for c in &r.validation {
        check_line(&mut out, "  ", c);
    }
    if !r.identities.is_empty() {
        out.push_str("identities:\n");
        for c in &r.identities {
            check_line(&mut out, "  ", c);
        }
    }
    let cert = &r.certification;
    let _ = writeln!(out, "certification: {}", cert.verdict);
    check_line(&mut out, "  ", &cert.pre_structurable);
    check_line(&mut out, "  ", &cert.structurable);
    if let Some(a0) = &cert.a0 {
        let _ = writeln!(out, "  A0: dim {} spanned by {}", a0.dim, a0.basis.join(", "));
        check_line(&mut out, "    ", &a0.structurable);
    }
    if let Some(l) = &r.lie {
        let g: Vec<String> = l.gamma.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "lie algebra (gamma = {}):", g.join(", "));
        let _ = writeln!(out, "  dim L {}, dim T {}, dim L0/L1/L2 {}/{}/{}", l.dim_l, l.dim_t, l.dim_lj[0], l.dim_lj[1], l.dim_lj[2]);
        let _ = writeln!(out, "  source certified: {}", l.certified);
        for c in l.closure.iter().chain([&l.jacobi, &l.z3]) {
            check_line(&mut out, "  ", c);
        }
    }
    if let Some(f) = &r.forms {
        let _ = writeln!(out, "forms (form from {}):", f.form_source);
        for c in [&f.quadratic, &f.composition, &f.associativity] {
            check_line(&mut out, "  ", c);
        }
        if let Some(d) = f.radical_dim {
            let _ = writeln!(out, "  radical: dim {d} spanned by {}", if f.radical.is_empty() { "nothing".into() } else { f.radical.join(", ") });
        }
        check_line(&mut out, "  ", &f.phi);
    }
    for c in &r.malcev {
        let _ = writeln!(out, "commutator algebra on {} (dim {}):", c.subspace, c.dim);
        for v in [&c.anticommutative, &c.malcev, &c.jacobi] {
            check_line(&mut out, "  ", v);
        }
    }
    if let Some(why) = &r.refusal {
        let _ = writeln!(out, "refused: {why}");
    }
    expectations_text(&mut out, &r.expectations);
    out
}

pub fn render_search(r: &SearchReport) -> String {
    let mut out = String::new();
    let kind = if r.commutative { "commutative" } else { "involutive" };
    let _ = writeln!(
        out,
        "search: {} random {kind} algebras of dim {} over {} (seed {})",
        r.trials, r.dim, r.field, r.seed
    );
    if !r.included.is_empty() {
        let _ = writeln!(out, "  seeded with: {}", r.included.join(", "));
    }
    let _ = writeln!(out, "  pre-structurable: {}, not structurable: {}", r.pre_structurable, r.findings.len());
    for f in &r.findings {
        let _ = writeln!(out, "hit #{} {}", f.index, f.name);
        if let Some(p) = &f.path {
            let _ = writeln!(out, "  written to {p}");
        }
        check_line(&mut out, "  ", &f.structurable);
        for line in f.definition.lines() {
            let _ = writeln!(out, "  | {line}");
        }
    }
    expectations_text(&mut out, &r.expectations);
    out
}
