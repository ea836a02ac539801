//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Tolerances: every comparison is exact (defects must be the zero vector). Probabilistic
//! steps state their trial counts, fields and seeds below. Runtimes are measured against
//! the stated budgets and count toward the verdict.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use triality_core::algebra::{catalog, catalog_names, random_algebra, Algebra, CatalogParams, RandomKind};
use triality_core::check::{CheckMode, Slot, Verdict};
use triality_core::forms::{
    composition_check, derive_quadratic_form, form_associativity_check, linear_composition_check, quadratic_law_check,
    BilinearForm, LinearFunctional,
};
use triality_core::liegen::{build_lie, commutator_algebra, graded_report, malcev_check, CommutatorMode};
use triality_core::linalg::{Field, Vector};
use triality_core::triality::{
    a0_subalgebra, identities as id, is_pre_structurable, is_structurable, TrialityOps,
};

/// Random tuples for probabilistic certification of the 64-dimensional tensor product.
const OXO_TRIALS: usize = 200;
const OXO_SEED: u64 = 2;
/// Random basis triples for the Jacobi check of the 248-dimensional algebra.
const OXO_JACOBI_TRIALS: usize = 2000;
const OXO_JACOBI_SEED: u64 = 2;
/// Seeded random population: this many commutative dim-3 and this many involutive dim-4 algebras.
const POPULATION: usize = 100;
const POPULATION_SEED: u64 = 6;
/// Sampled tuples for the LTS derivation law on the octonion (rational samples in [-10, 10]).
const LTS_SAMPLES: usize = 200;
const LTS_SEED: u64 = 7;
/// Random symmetric elements per algebra for the cubic closed form.
const CUBIC_SAMPLES: usize = 20;
const CUBIC_SEED: u64 = 8;

struct Criterion {
    checks: Vec<(String, bool)>,
}

impl Criterion {
    fn new() -> Criterion {
        Criterion { checks: Vec::new() }
    }

    fn check(&mut self, what: impl Into<String>, ok: bool) {
        self.checks.push((what.into(), ok));
    }

    fn holds(&mut self, what: impl Into<String>, v: &Verdict) {
        self.check(what, v.is_holds());
    }

    fn fails_with_witness(&mut self, what: impl Into<String>, v: &Verdict) {
        self.check(what, v.is_fails() && v.witness.is_some());
    }
}

fn cat(name: &str, params: &[(&str, i64)]) -> Algebra {
    catalog(name, &CatalogParams::from_ints(params)).unwrap().algebra
}

fn run(number: usize, title: &str, budget: Duration, body: impl FnOnce(&mut Criterion)) -> bool {
    let start = Instant::now();
    let mut c = Criterion::new();
    body(&mut c);
    let elapsed = start.elapsed();
    c.check(format!("runtime {:.1}s within {}s", elapsed.as_secs_f64(), budget.as_secs()), elapsed <= budget);
    let ok = c.checks.iter().all(|(_, ok)| *ok);
    println!("criterion {number} {}: {title} ({:.1}s)", if ok { "PASS" } else { "FAIL" }, elapsed.as_secs_f64());
    for (what, pass) in &c.checks {
        if !pass {
            println!("    failed: {what}");
        }
    }
    ok
}

fn octonion_pipeline(c: &mut Criterion) {
    let o = cat("octonion", &[]);
    c.check("built from Zorn data with dim B = 3", o.zorn_data().is_some_and(|z| z.bdim == 3));
    c.check("validates", o.validate().no_failures());
    let sh = o.sh_split();
    c.check("dim S = 1, dim H = 7", sh.s.len() == 1 && sh.h.len() == 7);
    let ops = TrialityOps::new(&o);
    c.holds("pre-structurable (exhaustive, rational)", &is_pre_structurable(&ops, CheckMode::Exhaustive));
    c.holds("structurable (exhaustive, rational)", &is_structurable(&ops, CheckMode::Exhaustive));
    let f = Field::Rational;
    let lie = build_lie(&ops, [f.one(), f.one(), f.one()], CheckMode::Exhaustive).unwrap();
    let g = graded_report(&lie, CheckMode::Exhaustive).unwrap();
    c.check("dim L = 52", g.dim_l == 52);
    c.check("dim T = 28", g.dim_t == 28);
    c.check("dim Lj = 36, 36, 36", g.dim_lj == [36, 36, 36]);
    c.holds("Jacobi on all 52^3 basis triples", &g.jacobi);
}

fn oxo_pipeline(c: &mut Criterion) {
    let f = Field::default_prime();
    let a = cat("oxo", &[]).convert(f).unwrap();
    c.check("dim 64", a.dim() == 64);
    let ops = TrialityOps::new(&a);
    let mode = CheckMode::Probabilistic { trials: OXO_TRIALS, seed: OXO_SEED };
    c.holds("structurable (200 tuples per identity, default prime)", &is_structurable(&ops, mode));
    let lie = build_lie(&ops, [f.one(), f.one(), f.one()], mode).unwrap();
    let g = graded_report(&lie, CheckMode::Probabilistic { trials: OXO_JACOBI_TRIALS, seed: OXO_JACOBI_SEED }).unwrap();
    c.check("dim L = 248", g.dim_l == 248);
    c.check("dim T = 56", g.dim_t == 56);
    c.check("dim Lj = 120, 120, 120", g.dim_lj == [120, 120, 120]);
    c.holds("Jacobi on 2000 random basis triples", &g.jacobi);
}

fn remark211_counterexample(c: &mut Criterion) {
    let a = cat("remark211", &[("alpha", 1), ("beta", 1)]);
    let ops = TrialityOps::new(&a);
    let f = a.field();
    c.holds("(1,1) pre-structurable", &is_pre_structurable(&ops, CheckMode::Exhaustive));
    let st = is_structurable(&ops, CheckMode::Exhaustive);
    c.fails_with_witness("(1,1) not structurable", &st);
    let g = a.basis_vector(2);
    let three_f = Vector::from_i64(f, &[0, 3, 0]);
    c.check("Q(g,g,g)g = 3f", ops.q(&g, &g, &g, &g) == three_f);
    c.check("witness defect is 3f", st.witness.as_ref().is_some_and(|w| w.defect == three_f));
    for p in [[0, 1], [1, 0]] {
        let b = cat("remark211", &[("alpha", p[0]), ("beta", p[1])]);
        c.holds(format!("({},{}) structurable", p[0], p[1]), &is_structurable(&TrialityOps::new(&b), CheckMode::Exhaustive));
    }
    let r = a0_subalgebra(&ops, CheckMode::Exhaustive).unwrap();
    let span_ef = |v: &Vector| v[2].is_zero();
    c.check("A0 is proper and spanned inside span{e, f}", r.dim() < a.dim() && r.basis.iter().all(span_ef));
    c.check("A0 contains e and f", r.dim() == 2 && r.contains_unit);
    c.check("A0 is a subalgebra", r.closed_under_product && r.closed_under_involution && r.subalgebra.is_some());
    c.holds("A0 structurable", &r.structurable);
}

fn in_span(basis: &[Vector], v: &Vector) -> bool {
    triality_core::linalg::solve_in_span(basis, v).unwrap().is_some()
}

fn three_dim_families(c: &mut Criterion) {
    let e = catalog("remark18-a", &CatalogParams::from_ints(&[("alpha", 1), ("beta", 1)])).unwrap();
    let a = &e.algebra;
    let form = BilinearForm::new(e.form.clone().unwrap()).unwrap();
    c.check("18-a: quadratic form derived from x x̄ equals the stated one", derive_quadratic_form(a).ok().as_ref() == Some(&form));
    c.holds("18-a: quadratic law", &quadratic_law_check(a, &form).unwrap());
    c.holds("18-a: composition", &composition_check(a, &form, CheckMode::Exhaustive).unwrap());
    c.holds("18-a: form associativity", &form_associativity_check(a, &form).unwrap());
    let rad = form.radical();
    let fg = Vector::from_i64(Field::Rational, &[0, 1, 1]);
    c.check("18-a: radical = span{f+g}", rad.len() == 1 && in_span(&rad, &fg));
    let phi = LinearFunctional::new(e.phi.clone().unwrap());
    c.holds("18-a: phi multiplicative", &linear_composition_check(a, &phi).unwrap());

    let e = catalog("remark18-b", &CatalogParams::from_ints(&[("alpha", 1), ("lambda", 2)])).unwrap();
    let b = &e.algebra;
    let form = BilinearForm::new(e.form.clone().unwrap()).unwrap();
    c.holds("18-b: commutative", &b.commutativity_check());
    c.holds("18-b: associative", &b.associativity_check());
    c.holds("18-b: composition", &composition_check(b, &form, CheckMode::Exhaustive).unwrap());
    let fe = Vector::from_i64(Field::Rational, &[-1, 1, 0]);
    c.check("18-b: radical contains f-e", in_span(&form.radical(), &fe));
    let phi = LinearFunctional::new(e.phi.clone().unwrap());
    c.holds("18-b: phi multiplicative", &linear_composition_check(b, &phi).unwrap());
}

fn malcev_suite(c: &mut Criterion) {
    let mode = CheckMode::Exhaustive;
    let h = commutator_algebra(&cat("octonion", &[]), CommutatorMode::Skew).unwrap();
    let r = malcev_check(&h, mode);
    c.check("octonion H has dim 7", h.dim() == 7);
    c.holds("octonion H anticommutative", &r.anticommutative);
    c.holds("octonion H Malcev", &r.malcev);
    c.fails_with_witness("octonion H not Lie", &r.jacobi);
    let d = commutator_algebra(&cat("kuzmin", &[]), CommutatorMode::Derived).unwrap();
    let r = malcev_check(&d, mode);
    c.check("kuzmin [A,A] has dim 5", d.dim() == 5);
    c.holds("kuzmin [A,A] Malcev", &r.malcev);
    c.fails_with_witness("kuzmin [A,A] not Lie", &r.jacobi);
    let q = commutator_algebra(&cat("quaternion", &[]), CommutatorMode::Skew).unwrap();
    c.holds("quaternion H is Lie", &malcev_check(&q, mode).jacobi);
}

fn equivalence_suite(c: &mut Criterion) {
    let mut instances: Vec<(Algebra, CheckMode)> = Vec::new();
    for name in catalog_names() {
        let a = cat(name, &[]);
        if a.dim() > triality_core::check::EXHAUSTIVE_LIMIT {
            let a = a.convert(Field::default_prime()).unwrap();
            instances.push((a, CheckMode::Probabilistic { trials: OXO_TRIALS, seed: OXO_SEED }));
        } else {
            instances.push((a, CheckMode::Exhaustive));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(POPULATION_SEED);
    for k in 0..POPULATION {
        for (kind, dim) in [(RandomKind::Commutative, 3), (RandomKind::Involutive, 4)] {
            let a = random_algebra(&format!("r{k}-{dim}"), kind, Field::Rational, dim, &mut rng).unwrap();
            instances.push((a, CheckMode::Exhaustive));
        }
    }
    let mut pre_count = 0;
    for (a, mode) in &instances {
        let ops = TrialityOps::new(a);
        let name = a.name();
        let av = id::a_identity(&ops, *mode);
        let tri = id::triality_relation(&ops, *mode);
        c.check(format!("{name}: triality-relation and A verdicts agree"), av.is_holds() == tri.is_holds());
        c.holds(format!("{name}: t0 cyclic sum"), &id::t0_cyclic_sum(&ops, *mode));
        let b = id::b_identity(&ops, *mode);
        let sk = id::skew_associator(&ops, *mode);
        let sk1 = id::skew_associator_consequence(&ops, *mode);
        c.check(format!("{name}: A implies B"), !av.is_holds() || b.is_holds());
        c.check(format!("{name}: B implies sk"), !b.is_holds() || sk.is_holds());
        c.check(format!("{name}: sk implies sk1"), !sk.is_holds() || sk1.is_holds());
        if av.is_holds() {
            pre_count += 1;
            c.holds(format!("{name}: Q symmetric under all 24 permutations"), &id::q_total_symmetry(&ops, *mode));
            c.holds(format!("{name}: Q vanishes at e"), &id::q_unit_vanishing(&ops, *mode));
            c.holds(format!("{name}: Q vanishes on H"), &id::q_skew_vanishing(&ops, *mode));
            c.holds(format!("{name}: Q is a derivation"), &id::q_derivation(&ops, *mode));
            c.holds(format!("{name}: 3Q equals the D sum"), &id::q_d_sum(&ops, *mode));
            c.holds(format!("{name}: q_via_bc agrees with q_op"), &id::q_via_bc(&ops, *mode));
        }
    }
    println!("    {} instances, {pre_count} pre-structurable", instances.len());
}

fn lts_and_derivation_laws(c: &mut Criterion) {
    let o = cat("octonion", &[]);
    let ops = TrialityOps::new(&o);
    let ex = CheckMode::Exhaustive;
    c.holds("abc = -bac", &id::lts_antisymmetry(&ops, ex));
    c.holds("abc + bca + cab = 0", &id::lts_cyclic(&ops, ex));
    c.holds("t0 bracket expansion", &id::lts_operator_bracket(&ops, ex));
    let sampled = CheckMode::Probabilistic { trials: LTS_SAMPLES, seed: LTS_SEED };
    c.holds("triple product derivation law on 200 sampled tuples", &id::lts_derivation(&ops, sampled));
    c.holds("D(a,b) = D(a-bar,b-bar)", &id::d_conjugation(&ops, ex));
    c.holds("D(a,b) is a derivation", &id::d_derivation(&ops, ex));
    c.holds("[D(a,b), t_k(c,d)] expansion", &id::d_t_bracket(&ops, ex));
}

fn cubic_closed_form(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(CUBIC_SEED);
    for name in catalog_names() {
        let a = cat(name, &[]);
        let ops = TrialityOps::new(&a);
        if !is_structurable(&ops, CheckMode::default_for(a.dim())).is_holds() {
            continue;
        }
        let s = a.s_slot();
        let samples: Vec<Vector> = (0..CUBIC_SAMPLES).map(|_| s.sample(a.field(), a.dim(), &mut rng)).collect();
        let labels = (0..CUBIC_SAMPLES).map(|k| format!("s{k}")).collect();
        let slot = Slot::new(samples.clone(), labels);
        c.holds(format!("{name}: both closed forms match Q(a,a,a)a"), &id::q_cubic_closed_form(&ops, &slot));
        c.check(format!("{name}: Q(a,a,a)a = 0"), samples.iter().all(|x| ops.q(x, x, x, x).is_zero()));
    }
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let results = [
        run(1, "octonion pipeline, dims 52/28/36 and exact Jacobi", secs(30), octonion_pipeline),
        run(2, "octonion tensor square, dims 248/56/120 with sampled checks", secs(600), oxo_pipeline),
        run(3, "pre-structurable counterexample and its A0", secs(1), remark211_counterexample),
        run(4, "three-dimensional composition families", secs(1), three_dim_families),
        run(5, "Malcev commutator algebras", secs(5), malcev_suite),
        run(6, "identity equivalences over catalog and random population", secs(120), equivalence_suite),
        run(7, "Lie triple system and derivation laws on the octonion", secs(60), lts_and_derivation_laws),
        run(8, "cubic closed form on symmetric samples", secs(10), cubic_closed_form),
    ];
    let passed = results.iter().filter(|ok| **ok).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
