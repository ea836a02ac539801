use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;
use triality_core::algebra::{catalog, catalog_names, catalog_parameters, random_algebra, Algebra, CatalogParams, RandomKind};
use triality_core::check::{CheckMode, ModeRecord, Verdict, DEFAULT_TRIALS, EXHAUSTIVE_LIMIT};
use triality_core::forms::{
    composition_check, derive_quadratic_form, form_associativity_check, linear_composition_check, quadratic_law_check,
    BilinearForm, FormError, LinearFunctional,
};
use triality_core::liegen::{build_lie, commutator_algebra, graded_report, malcev_check, CommutatorMode, LieError};
use triality_core::linalg::{Field, Rational, Scalar};
use triality_core::triality::{
    a0_subalgebra, identity_suite, is_pre_structurable, is_structurable, SuiteConfig, TrialityOps,
};

use crate::file::{emit_definition, parse_definition, Definition, FileError};
use crate::report::{
    evaluate_expectations, format_in, render_human, render_search, A0Summary, AlgebraSummary, Certification, Check,
    CommutatorSummary, Finding, FormsSection, LieSection, ModeRepr, RunReport, ScalarRepr, SearchReport,
};

/// Largest dimension `search` accepts.
pub const SEARCH_DIM_LIMIT: usize = 6;
/// Algebras generated by `search` when `--trials` is absent.
pub const SEARCH_DEFAULT_TRIALS: usize = 100;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    File { path: String, source: FileError },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn input(msg: impl Into<String>) -> CliError {
        CliError::Input(msg.into())
    }
}

#[derive(Debug, Parser)]
#[command(name = "triality", version, about = "Certify structurable algebras and build their Lie algebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Field to work over: `rational` or `mod:<p>`. Defaults to the file's field.
    #[arg(long, global = true, value_parser = parse_field_flag)]
    pub field: Option<Field>,
    /// Checking mode. Defaults to exhaustive up to dimension 16, probabilistic above.
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeFlag>,
    /// Random tuples per identity in probabilistic mode; algebras generated by `search`.
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the machine report here; `-` prints it instead of the text report.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Assertions on the report, e.g. `pre-structurable=yes,structurable=no`.
    #[arg(long, global = true, value_delimiter = ',', value_parser = parse_key_value)]
    pub expect: Vec<(String, String)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeFlag {
    Exhaustive,
    Probabilistic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Forms,
    Malcev,
    All,
}

#[derive(Debug, Args)]
pub struct Source {
    /// Definition file.
    #[arg(required_unless_present = "catalog", conflicts_with = "catalog")]
    pub path: Option<PathBuf>,
    /// Use a catalog algebra instead of a file.
    #[arg(long)]
    pub catalog: Option<String>,
    /// Catalog parameter, `key=value` with a rational value.
    #[arg(long = "param", value_parser = parse_key_value, requires = "catalog")]
    pub params: Vec<(String, String)>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate an algebra, run identity suites and certify (pre-)structurability.
    Check {
        #[command(flatten)]
        source: Source,
        /// Suites to run besides validation and certification.
        #[arg(long, value_enum, value_delimiter = ',', default_value = "identities")]
        suite: Vec<Suite>,
    },
    /// Build the Lie algebra of a structurable algebra.
    BuildLie {
        #[command(flatten)]
        source: Source,
        /// Nonzero scalars `g0,g1,g2`.
        #[arg(long, value_delimiter = ',', num_args = 1, default_value = "1,1,1")]
        gamma: Vec<String>,
    },
    /// List the catalog or write one of its algebras as a definition file.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Look for pre-structurable algebras that are not structurable.
    Search {
        #[arg(long)]
        dim: usize,
        /// Commutative algebras with the identity involution.
        #[arg(long)]
        commutative: bool,
        /// Catalog algebras placed at the front of the sample stream.
        #[arg(long)]
        include: Vec<String>,
        /// Directory for definition files of the hits.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
    Emit {
        name: String,
        #[arg(long = "param", value_parser = parse_key_value)]
        params: Vec<(String, String)>,
        /// Output file; standard output when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn parse_key_value(s: &str) -> Result<(String, String), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

fn parse_field_flag(s: &str) -> Result<Field, String> {
    if s == "rational" {
        return Ok(Field::Rational);
    }
    let p = s.strip_prefix("mod:").ok_or_else(|| format!("expected `rational` or `mod:<p>`, got `{s}`"))?;
    let p: u64 = p.parse().map_err(|_| format!("bad modulus `{p}`"))?;
    Field::prime(p).map_err(|_| format!("modulus {p} must be a prime of at least 5"))
}

fn catalog_params(name: &str, raw: &[(String, String)]) -> Result<CatalogParams, CliError> {
    let mut params = CatalogParams::new();
    for (k, v) in raw {
        let q: Rational = v.parse().map_err(|_| CliError::input(format!("parameter {k}: bad rational `{v}`")))?;
        params.set(k, q);
    }
    if catalog_names().contains(&name) {
        let known: Vec<&str> = catalog_parameters(name).iter().map(|(k, _)| *k).collect();
        if let Some((k, _)) = raw.iter().find(|(k, _)| !known.contains(&k.as_str())) {
            return Err(CliError::input(format!("{name} takes parameters [{}], not `{k}`", known.join(", "))));
        }
    }
    Ok(params)
}

fn catalog_definition(name: &str, raw: &[(String, String)]) -> Result<Definition, CliError> {
    let entry = catalog(name, &catalog_params(name, raw)?).map_err(|e| CliError::input(e.to_string()))?;
    Ok(Definition { algebra: entry.algebra, form: entry.form, phi: entry.phi })
}

fn load(source: &Source) -> Result<Definition, CliError> {
    match (&source.path, &source.catalog) {
        (_, Some(name)) => catalog_definition(name, &source.params),
        (Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            parse_definition(&text).map_err(|e| CliError::File { path: path.display().to_string(), source: e })
        }
        (None, None) => Err(CliError::input("no algebra given")),
    }
}

fn convert(def: Definition, field: Field) -> Result<Definition, CliError> {
    if def.algebra.field() == field {
        return Ok(def);
    }
    let err = |e: String| CliError::input(format!("cannot move {} to {field}: {e}", def.algebra.name()));
    let algebra = def.algebra.convert(field).map_err(|e| err(e.to_string()))?;
    let form = def.form.as_ref().map(|g| g.convert(field)).transpose().map_err(|e| err(e.to_string()))?;
    let phi = def.phi.as_ref().map(|v| v.convert(field)).transpose().map_err(|e| err(e.to_string()))?;
    Ok(Definition { algebra, form, phi })
}

/// Picks the checking mode and field. A probabilistic run over the rationals moves to the
/// default prime unless `--field` pinned the field.
fn resolve(def: Definition, g: &GlobalOpts) -> Result<(Definition, CheckMode), CliError> {
    let n = def.algebra.dim();
    let trials = g.trials.unwrap_or(DEFAULT_TRIALS);
    let probabilistic = match g.mode {
        Some(ModeFlag::Exhaustive) => false,
        Some(ModeFlag::Probabilistic) => true,
        None => n > EXHAUSTIVE_LIMIT,
    };
    let field = match g.field {
        Some(f) => f,
        None if probabilistic && def.algebra.field().is_rational() => Field::default_prime(),
        None => def.algebra.field(),
    };
    let mode = if probabilistic { CheckMode::Probabilistic { trials, seed: g.seed } } else { CheckMode::Exhaustive };
    Ok((convert(def, field)?, mode))
}

fn summary(a: &Algebra) -> AlgebraSummary {
    let sh = a.sh_split();
    AlgebraSummary {
        name: a.name().to_string(),
        field: a.field().to_string(),
        dim: a.dim(),
        dim_s: sh.s.len(),
        dim_h: sh.h.len(),
        basis: a.basis_names().to_vec(),
    }
}

fn certification(ops: &TrialityOps, mode: CheckMode) -> Certification {
    let a = ops.algebra();
    let names = a.basis_names();
    let pre = is_pre_structurable(ops, mode);
    let st = is_structurable(ops, mode);
    let verdict = match (pre.is_holds(), st.is_holds()) {
        (_, true) => "structurable",
        (true, false) => "pre-structurable",
        _ => "neither",
    };
    let a0 = if pre.is_holds() && !st.is_holds() && a.dim() <= EXHAUSTIVE_LIMIT {
        a0_subalgebra(ops, mode).ok().map(|r| {
            let sub_names: Vec<String> = match &r.subalgebra {
                Some(s) => s.basis_names().to_vec(),
                None => r.basis.iter().map(|v| a.format_element(v)).collect(),
            };
            A0Summary {
                dim: r.dim(),
                basis: r.basis.iter().map(|v| a.format_element(v)).collect(),
                contains_unit: r.contains_unit,
                closed_under_product: r.closed_under_product,
                closed_under_involution: r.closed_under_involution,
                structurable: Check::new("a0-structurable", &r.structurable, &sub_names),
            }
        })
    } else {
        None
    };
    Certification {
        verdict: verdict.into(),
        pre_structurable: Check::new("pre-structurable", &pre, names),
        structurable: Check::new("structurable", &st, names),
        a0,
    }
}

fn skipped(name: &str, reason: &str) -> Check {
    Check::new(name, &Verdict::skipped(ModeRecord::Exhaustive, reason), &[])
}

fn form_check(name: &str, r: Result<Verdict, FormError>, names: &[String]) -> Check {
    match r {
        Ok(v) => Check::new(name, &v, names),
        Err(e) => skipped(name, &e.to_string()),
    }
}

fn forms_section(def: &Definition, mode: CheckMode) -> Result<FormsSection, CliError> {
    let a = &def.algebra;
    let names = a.basis_names();
    let derived = derive_quadratic_form(a);
    let (source, form) = match (&def.form, &derived) {
        (Some(g), _) => ("file", Some(BilinearForm::new(g.clone()).map_err(|e| CliError::input(e.to_string()))?)),
        (None, Ok(f)) => ("derived", Some(f.clone())),
        (None, Err(_)) => ("none", None),
    };
    let no_form = "no form given and the algebra is not quadratic";
    let quadratic = match (&derived, &form) {
        (Err(e), _) => skipped("quadratic", &e.to_string()),
        (Ok(_), Some(f)) => form_check("quadratic", quadratic_law_check(a, f), names),
        (Ok(_), None) => unreachable!("a derived form is always available"),
    };
    let (composition, associativity, radical) = match &form {
        Some(f) => (
            form_check("composition", composition_check(a, f, mode), names),
            form_check("form-associativity", form_associativity_check(a, f), names),
            Some(f.radical()),
        ),
        None => (skipped("composition", no_form), skipped("form-associativity", no_form), None),
    };
    let phi = match &def.phi {
        Some(v) => form_check("phi-multiplicative", linear_composition_check(a, &LinearFunctional::new(v.clone())), names),
        None => skipped("phi-multiplicative", "no linear functional given"),
    };
    Ok(FormsSection {
        form_source: source.into(),
        quadratic,
        composition,
        associativity,
        radical_dim: radical.as_ref().map(Vec::len),
        radical: radical.unwrap_or_default().iter().map(|v| a.format_element(v)).collect(),
        phi,
    })
}

fn commutator_summaries(a: &Algebra, mode: CheckMode) -> Result<Vec<CommutatorSummary>, CliError> {
    let mut out = Vec::new();
    for (label, cm) in [("skew", CommutatorMode::Skew), ("derived", CommutatorMode::Derived)] {
        let m = commutator_algebra(a, cm).map_err(|e| CliError::input(e.to_string()))?;
        let r = malcev_check(&m, mode);
        let names = m.labels();
        out.push(CommutatorSummary {
            subspace: label.into(),
            dim: m.dim(),
            anticommutative: Check::new("anticommutative", &r.anticommutative, names),
            malcev: Check::new("malcev", &r.malcev, names),
            jacobi: Check::new("jacobi", &r.jacobi, names),
        });
    }
    Ok(out)
}

fn base_report(command: &str, a: &Algebra, cert: Certification) -> RunReport {
    RunReport {
        command: command.into(),
        algebra: summary(a),
        validation: Check::list(&a.validate(), a.basis_names()),
        identities: Vec::new(),
        certification: cert,
        lie: None,
        forms: None,
        malcev: Vec::new(),
        refusal: None,
        expectations: Vec::new(),
    }
}

/// Builds the `check` report for an already loaded definition.
pub fn check_report(def: &Definition, mode: CheckMode, suites: &[Suite]) -> Result<RunReport, CliError> {
    let a = &def.algebra;
    let ops = TrialityOps::new(a);
    let wants = |s: Suite| suites.contains(&s) || suites.contains(&Suite::All);
    let mut r = base_report("check", a, certification(&ops, mode));
    if wants(Suite::Identities) {
        r.identities = Check::list(&identity_suite(&ops, SuiteConfig::new(mode)), a.basis_names());
    }
    if wants(Suite::Forms) {
        r.forms = Some(forms_section(def, mode)?);
    }
    if wants(Suite::Malcev) {
        r.malcev = commutator_summaries(a, mode)?;
    }
    Ok(r)
}

/// Builds the `build-lie` report; a refusal is recorded in the report rather than returned as an error.
pub fn build_lie_report(def: &Definition, mode: CheckMode, gamma: [Scalar; 3], seed: u64) -> Result<RunReport, CliError> {
    let a = &def.algebra;
    let ops = TrialityOps::new(a);
    let mut r = base_report("build-lie", a, certification(&ops, mode));
    match build_lie(&ops, gamma.clone(), mode) {
        Ok(lie) => {
            let jmode = match lie.default_jacobi_mode() {
                CheckMode::Probabilistic { trials, .. } => CheckMode::Probabilistic { trials, seed },
                m => m,
            };
            let g = graded_report(&lie, jmode).map_err(|e| CliError::input(e.to_string()))?;
            let labels = lie.table().labels();
            r.lie = Some(LieSection {
                gamma: lie.gamma().iter().map(ScalarRepr::from).collect(),
                dim_l: g.dim_l,
                dim_t: g.dim_t,
                dim_lj: g.dim_lj.to_vec(),
                certified: ModeRepr::from(lie.certified()),
                closure: g.closure.iter().enumerate().map(|(j, v)| Check::new(format!("closure-l{j}"), v, labels)).collect(),
                jacobi: Check::new("jacobi", &g.jacobi, labels),
                z3: Check::new("z3", &g.z3, labels),
            });
        }
        Err(LieError::NotStructurable(v)) => {
            let mut why = "the algebra is not structurable".to_string();
            if let Some(w) = &v.witness {
                let defect = format_in(a.basis_names(), &w.defect);
                let shown = if w.defect.len() == a.dim() { defect } else { "nonzero".into() };
                why.push_str(&format!("; witness ({}) with defect {shown}", w.labels.join(", ")));
            }
            r.refusal = Some(why);
        }
        Err(e) => return Err(CliError::input(e.to_string())),
    }
    Ok(r)
}

fn parse_gamma(raw: &[String], field: Field) -> Result<[Scalar; 3], CliError> {
    let g: Vec<Scalar> = raw
        .iter()
        .map(|s| field.parse_scalar(s).map_err(|_| CliError::input(format!("bad gamma `{s}`"))))
        .collect::<Result<_, _>>()?;
    let g: [Scalar; 3] = g.try_into().map_err(|_| CliError::input("--gamma takes three scalars"))?;
    if g.iter().any(Scalar::is_zero) {
        return Err(CliError::input("gamma entries must be nonzero"));
    }
    Ok(g)
}

/// Runs `search`. Included catalog algebras come first and count toward `trials`.
pub fn search_report(
    dim: usize,
    commutative: bool,
    include: &[String],
    field: Field,
    trials: usize,
    seed: u64,
    out: Option<&Path>,
) -> Result<SearchReport, CliError> {
    if dim > SEARCH_DIM_LIMIT {
        return Err(CliError::input(format!("search is limited to dimension {SEARCH_DIM_LIMIT}, got {dim}")));
    }
    let kind = if commutative { RandomKind::Commutative } else { RandomKind::Involutive };
    let mut seeded = Vec::new();
    for name in include {
        let d = convert(catalog_definition(name, &[])?, field)?;
        if d.algebra.dim() != dim {
            return Err(CliError::input(format!("{name} has dimension {}, not {dim}", d.algebra.dim())));
        }
        seeded.push(d.algebra);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SearchReport {
        command: "search".into(),
        dim,
        commutative,
        field: field.to_string(),
        trials,
        seed,
        included: include.to_vec(),
        pre_structurable: 0,
        findings: Vec::new(),
        expectations: Vec::new(),
    };
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    }
    let mut seeded = seeded.into_iter();
    for index in 0..trials {
        let a = match seeded.next() {
            Some(a) => a,
            None => random_algebra(&format!("search-{seed}-{index}"), kind, field, dim, &mut rng)
                .map_err(|e| CliError::input(e.to_string()))?,
        };
        let ops = TrialityOps::new(&a);
        if !is_pre_structurable(&ops, CheckMode::Exhaustive).is_holds() {
            continue;
        }
        report.pre_structurable += 1;
        let st = is_structurable(&ops, CheckMode::Exhaustive);
        if st.is_holds() {
            continue;
        }
        let definition = emit_definition(&Definition { algebra: a.clone(), form: None, phi: None })
            .map_err(|e| CliError::input(e.to_string()))?;
        let path = match out {
            Some(dir) => {
                let p = dir.join(format!("hit-{index}.alg"));
                fs::write(&p, &definition).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
                Some(p.display().to_string())
            }
            None => None,
        };
        report.findings.push(Finding {
            index,
            name: a.name().to_string(),
            path,
            structurable: Check::new("structurable", &st, a.basis_names()),
            definition,
        });
    }
    Ok(report)
}

fn catalog_listing() -> String {
    let mut out = String::new();
    for name in catalog_names() {
        let params: Vec<String> = catalog_parameters(name).iter().map(|(k, v)| format!("{k}={v}")).collect();
        let dim = catalog(name, &CatalogParams::new()).map(|e| e.algebra.dim()).unwrap_or(0);
        if params.is_empty() {
            out.push_str(&format!("{name:<14} dim {dim}\n"));
        } else {
            out.push_str(&format!("{name:<14} dim {dim}  params {}\n", params.join(" ")));
        }
    }
    out
}

fn write_output(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Prints the text report, writes the machine report where asked, and returns 0 or 1.
fn finish(human: String, json: String, expectations_met: bool, ok: bool, g: &GlobalOpts) -> Result<i32, CliError> {
    match g.json.as_deref() {
        Some(p) if p == Path::new("-") => print!("{json}"),
        Some(p) => {
            write_output(p, &json)?;
            print!("{human}");
        }
        None => print!("{human}"),
    }
    Ok(if expectations_met && ok { 0 } else { 1 })
}

/// Runs a parsed command line and returns the exit code for a successful run (0 or 1).
pub fn run(cli: Cli) -> Result<i32, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Check { source, suite } => {
            let (def, mode) = resolve(load(source)?, g)?;
            let mut r = check_report(&def, mode, suite)?;
            r.expectations = evaluate_expectations(&r.facts(), &g.expect).map_err(CliError::Input)?;
            // With expectations the certification is what is being asserted; without them
            // every selected check has to hold.
            let ok = if g.expect.is_empty() {
                let forms_fail = r.forms.as_ref().is_some_and(|f| {
                    [&f.quadratic, &f.composition, &f.associativity, &f.phi].iter().any(|c| c.fails())
                });
                let malcev_fail = r.malcev.iter().any(|c| c.anticommutative.fails() || c.malcev.fails());
                !r.validation.iter().chain(&r.identities).any(Check::fails) && !forms_fail && !malcev_fail
            } else {
                true
            };
            let met = r.expectations.iter().all(|e| e.met);
            finish(render_human(&r), r.to_json(), met, ok, g)
        }
        Command::BuildLie { source, gamma } => {
            let (def, mode) = resolve(load(source)?, g)?;
            let gamma = parse_gamma(gamma, def.algebra.field())?;
            let mut r = build_lie_report(&def, mode, gamma, g.seed)?;
            r.expectations = evaluate_expectations(&r.facts(), &g.expect).map_err(CliError::Input)?;
            let ok = if g.expect.is_empty() {
                r.refusal.is_none() && r.lie.as_ref().is_some_and(|l| !l.jacobi.fails())
            } else {
                true
            };
            let met = r.expectations.iter().all(|e| e.met);
            if let Some(why) = &r.refusal {
                eprintln!("build-lie refused: {why}");
            }
            finish(render_human(&r), r.to_json(), met, ok, g)
        }
        Command::Catalog { action: CatalogAction::List } => {
            print!("{}", catalog_listing());
            Ok(0)
        }
        Command::Catalog { action: CatalogAction::Emit { name, params, output } } => {
            let mut def = catalog_definition(name, params)?;
            if let Some(f) = g.field {
                def = convert(def, f)?;
            }
            let text = emit_definition(&def).map_err(|e| CliError::input(e.to_string()))?;
            match output {
                Some(p) => write_output(p, &text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Search { dim, commutative, include, out } => {
            let field = g.field.unwrap_or(Field::Rational);
            let trials = g.trials.unwrap_or(SEARCH_DEFAULT_TRIALS);
            let mut r = search_report(*dim, *commutative, include, field, trials, g.seed, out.as_deref())?;
            r.expectations = evaluate_expectations(&r.facts(), &g.expect).map_err(CliError::Input)?;
            let met = r.expectations.iter().all(|e| e.met);
            finish(render_search(&r), r.to_json(), met, true, g)
        }
    }
}
