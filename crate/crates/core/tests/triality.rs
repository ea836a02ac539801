use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use triality_core::algebra::{catalog, catalog_names, random_algebra, Algebra, CatalogParams, RandomKind};
use triality_core::check::{CheckMode, IdentityReport, ModeRecord, Status};
use triality_core::linalg::{Field, Vector};
use triality_core::triality::{
    a0_subalgebra, identities, identity_suite, is_generalized_structurable, is_pre_structurable, is_structurable,
    SuiteConfig, TrialityOps, IDENTITY_NAMES,
};

fn cat(name: &str, params: &[(&str, i64)]) -> Algebra {
    catalog(name, &CatalogParams::from_ints(params)).unwrap().algebra
}

fn suite(a: &Algebra) -> IdentityReport {
    identity_suite(&TrialityOps::new(a), SuiteConfig::new(CheckMode::Exhaustive))
}

fn status(r: &IdentityReport, name: &str) -> Status {
    r.get(name).unwrap_or_else(|| panic!("missing {name}")).status.clone()
}

/// Random dim-3 and dim-4 algebras, alternating commutative and involutive shapes.
fn population(count: usize, seed: u64) -> Vec<Algebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let (kind, dim) = if k % 2 == 0 { (RandomKind::Commutative, 3) } else { (RandomKind::Involutive, 4) };
            random_algebra(&format!("r{k}"), kind, Field::Rational, dim, &mut rng).unwrap()
        })
        .collect()
}

#[test]
fn octonion_suite_holds_everywhere() {
    let r = suite(&cat("octonion", &[]));
    assert!(r.names().eq(IDENTITY_NAMES.iter().copied()));
    for (name, v) in r.entries() {
        assert_eq!(v.status, Status::Holds, "{name}: {v:?}");
    }
}

#[test]
fn small_structurable_catalog_entries_hold_everywhere() {
    for name in ["quaternion", "kuzmin", "zorn-trivial", "remark18-a", "remark18-b"] {
        let r = suite(&cat(name, &[]));
        for (id, v) in r.entries() {
            assert_eq!(v.status, Status::Holds, "{name} {id}");
        }
    }
}

#[test]
fn remark211_is_pre_structurable_but_not_structurable() {
    let a = cat("remark211", &[("alpha", 1), ("beta", 1)]);
    let r = suite(&a);
    for name in ["t0-cyclic-sum", "skew-associator", "a-identity", "b-identity", "triality"] {
        assert_eq!(status(&r, name), Status::Holds, "{name}");
    }
    for name in [
        "q-total-symmetry",
        "q-unit-vanishing",
        "q-skew-vanishing",
        "q-conjugation",
        "q-derivation",
        "q-d-sum",
        "q-via-bc",
        "q-cubic-closed-form",
    ] {
        assert_eq!(status(&r, name), Status::Holds, "{name}");
    }
    assert_eq!(status(&r, "q-vanishing"), Status::Fails);
    for name in ["d-cyclic-sum", "d0-symmetries", "d0-derivation", "d0-cyclic"] {
        assert!(matches!(status(&r, name), Status::Skipped(_)), "{name}");
    }

    let ops = TrialityOps::new(&a);
    assert!(is_pre_structurable(&ops, CheckMode::Exhaustive).is_holds());
    let v = is_structurable(&ops, CheckMode::Exhaustive);
    assert!(v.is_fails());
    let w = v.witness.unwrap();
    assert_eq!(w.labels, ["g", "g", "g", "g"]);
    assert_eq!(w.defect, Vector::from_i64(Field::Rational, &[0, 3, 0]));
}

#[test]
fn remark211_degenerate_parameters_are_structurable() {
    for (alpha, beta) in [(0, 1), (1, 0), (0, 0)] {
        let a = cat("remark211", &[("alpha", alpha), ("beta", beta)]);
        assert!(is_structurable(&TrialityOps::new(&a), CheckMode::Exhaustive).is_holds());
    }
}

#[test]
fn a0_of_remark211_is_span_of_e_and_f() {
    let a = cat("remark211", &[("alpha", 1), ("beta", 1)]);
    let rep = a0_subalgebra(&TrialityOps::new(&a), CheckMode::Exhaustive).unwrap();
    assert_eq!(rep.dim(), 2);
    assert!(rep.contains_unit && rep.closed_under_product && rep.closed_under_involution);
    // Brute-force oracle: x is in the kernel iff Q(g,g,g)x = 0 and every other basis Q vanishes on x.
    let f = a.basis_vector(1);
    let ops = TrialityOps::new(&a);
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let q = ops.q(&a.basis_vector(i), &a.basis_vector(j), &a.basis_vector(k), &f);
                assert!(q.is_zero());
            }
        }
    }
    let names: Vec<&str> = rep.subalgebra.as_ref().unwrap().basis_names().iter().map(String::as_str).collect();
    assert_eq!(names, ["e", "f"]);
    assert!(rep.structurable.is_holds());
}

#[test]
fn a0_of_structurable_algebra_is_everything() {
    for name in ["octonion", "kuzmin", "remark18-a"] {
        let a = cat(name, &[]);
        let rep = a0_subalgebra(&TrialityOps::new(&a), CheckMode::Exhaustive).unwrap();
        assert_eq!(rep.dim(), a.dim(), "{name}");
    }
}

#[test]
fn a0_requires_pre_structurable_input() {
    let a = population(60, 3).into_iter().find(|a| {
        identities::a_identity(&TrialityOps::new(a), CheckMode::Exhaustive).is_fails()
    });
    let a = a.expect("a random algebra failing the A identity");
    assert!(a0_subalgebra(&TrialityOps::new(&a), CheckMode::Exhaustive).is_err());
}

#[test]
fn generalized_structurable_laws() {
    let o = cat("octonion", &[]);
    let rep = is_generalized_structurable(&TrialityOps::new(&o), CheckMode::Exhaustive);
    assert!(rep.verdict.is_holds() && !rep.d_vanishes);
    let z = cat("zorn-trivial", &[]);
    let rep = is_generalized_structurable(&TrialityOps::new(&z), CheckMode::Exhaustive);
    assert!(rep.verdict.is_holds() && rep.d_vanishes);
    let r = cat("remark211", &[]);
    let rep = is_generalized_structurable(&TrialityOps::new(&r), CheckMode::Exhaustive);
    assert!(rep.verdict.is_skipped());
}

#[test]
fn d0_is_antisymmetric_on_octonion() {
    let o = cat("octonion", &[]);
    let ops = TrialityOps::new(&o);
    for i in 0..8 {
        for j in 0..8 {
            let (a, b) = (o.basis_vector(i), o.basis_vector(j));
            assert_eq!(ops.d0_op(&a, &b).unwrap(), -&ops.d0_op(&b, &a).unwrap());
        }
    }
}

#[test]
fn equivalence_and_implication_chain_on_random_population() {
    let mut catalog_algebras: Vec<Algebra> =
        catalog_names().iter().filter(|n| **n != "oxo").map(|n| cat(n, &[])).collect();
    catalog_algebras.extend(population(100, 11));
    let (mut pre, mut not_pre) = (0, 0);
    for a in &catalog_algebras {
        let ops = TrialityOps::new(a);
        let m = CheckMode::Exhaustive;
        let av = identities::a_identity(&ops, m);
        let tv = identities::triality_relation(&ops, m);
        assert_eq!(av.is_holds(), tv.is_holds(), "{}", a.name());
        assert!(identities::t0_cyclic_sum(&ops, m).is_holds(), "{}", a.name());
        let bv = identities::b_identity(&ops, m);
        let sk = identities::skew_associator(&ops, m);
        let sk1 = identities::skew_associator_consequence(&ops, m);
        assert!(!av.is_holds() || bv.is_holds());
        assert!(!bv.is_holds() || sk.is_holds());
        assert!(!sk.is_holds() || sk1.is_holds());
        if av.is_holds() {
            pre += 1;
            // Total symmetry, derivation property and the B/C expansion of Q.
            assert!(identities::q_total_symmetry(&ops, m).is_holds());
            assert!(identities::q_derivation(&ops, m).is_holds());
            if sk.is_holds() {
                assert!(identities::q_via_bc(&ops, m).is_holds());
            }
        } else {
            not_pre += 1;
        }
    }
    assert!(pre >= 7 && not_pre > 0, "pre {pre}, not pre {not_pre}");
}

#[test]
fn random_commutative_algebra_failing_a_has_witness() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let hit = (0..50)
        .map(|_| random_algebra("c", RandomKind::Commutative, Field::Rational, 3, &mut rng).unwrap())
        .find_map(|a| {
            let v = is_pre_structurable(&TrialityOps::new(&a), CheckMode::Exhaustive);
            v.is_fails().then_some((a, v))
        });
    let (a, v) = hit.expect("some random commutative algebra fails the A identity");
    let w = v.witness.unwrap();
    assert_eq!(w.args.len(), 4);
    let ops = TrialityOps::new(&a);
    let (x, y, z, d) = (&w.args[0], &w.args[1], &w.args[2], &w.args[3]);
    let defect = ops.a_op_apply(x, y, z, d) - ops.a_op_apply(y, x, z, d) - ops.a_op_apply(z, x, y, d)
        + ops.a_op_apply(z, y, x, d);
    assert_eq!(defect, w.defect);
    assert_eq!(v.note.as_deref(), Some("triality relation cross-check agrees"));
}

#[test]
fn non_pre_structurable_algebra_skips_operator_identities() {
    let a = population(60, 3)
        .into_iter()
        .find(|a| identities::a_identity(&TrialityOps::new(a), CheckMode::Exhaustive).is_fails())
        .unwrap();
    let r = suite(&a);
    for name in ["t-bracket", "lts-derivation", "q-total-symmetry", "q-cubic-closed-form", "d0-cyclic"] {
        assert!(matches!(status(&r, name), Status::Skipped(_)), "{name}");
    }
    assert_eq!(status(&r, "t0-cyclic-sum"), Status::Holds);
    assert_eq!(status(&r, "chain-a-implies-b"), Status::Holds);
}

#[test]
fn involutive_algebra_violating_skew_law_has_witness() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let hit = (0..50)
        .map(|_| random_algebra("i", RandomKind::Involutive, Field::Rational, 4, &mut rng).unwrap())
        .find_map(|a| {
            let v = identities::skew_associator(&TrialityOps::new(&a), CheckMode::Exhaustive);
            v.is_fails().then_some(v)
        });
    let v = hit.expect("a random involutive algebra violates the skew associator law");
    assert_eq!(v.witness.unwrap().args.len(), 3);
}

#[test]
fn probabilistic_mode_over_prime_field() {
    let o = cat("octonion", &[]).convert(Field::default_prime()).unwrap();
    let ops = TrialityOps::new(&o);
    let mode = CheckMode::Probabilistic { trials: 50, seed: 7 };
    let v = is_structurable(&ops, mode);
    assert!(v.is_holds());
    assert!(matches!(v.mode, ModeRecord::Probabilistic { trials: 50, prime: Some(_), .. }));
    // A single sign flip in the table is detected by random sampling.
    let r = cat("remark211", &[]).convert(Field::default_prime()).unwrap();
    assert!(is_structurable(&TrialityOps::new(&r), mode).is_fails());
}

#[test]
fn perturbed_octonion_is_not_pre_structurable() {
    let o = cat("octonion", &[]);
    let n = o.dim();
    let f = o.field();
    let mut table: Vec<Vector> = (0..n * n).map(|k| o.basis_product(k / n, k % n)).collect();
    // Double x1 y1 while keeping the involution consistent.
    let (x1, y1) = (o.basis_index("x1").unwrap(), o.basis_index("y1").unwrap());
    table[x1 * n + y1] = table[x1 * n + y1].scale(&f.int(2));
    let p = Algebra::from_table("perturbed", f, o.basis_names().to_vec(), &table, o.unit().clone(), o.involution().clone())
        .unwrap();
    assert!(is_pre_structurable(&TrialityOps::new(&p), CheckMode::Exhaustive).is_fails());
}

#[test]
fn octonion_a_and_x_verdicts_agree() {
    let o = cat("octonion", &[]);
    let ops = TrialityOps::new(&o);
    let a = identities::a_identity(&ops, CheckMode::Exhaustive);
    let x = identities::q_vanishing(&ops, CheckMode::Exhaustive);
    assert!(a.is_holds() && x.is_holds());
}

fn symmetric_element(a: &Algebra, coeffs: &[i64]) -> Vector {
    let s = a.sh_split().s;
    let mut v = Vector::zeros(a.field(), a.dim());
    for (c, b) in coeffs.iter().zip(&s) {
        v.axpy(&a.field().int(*c), b);
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cubic_closed_forms_on_symmetric_elements(c in prop::collection::vec(-6i64..=6, 3), alpha in -3i64..=3, beta in -3i64..=3) {
        let a = cat("remark211", &[("alpha", alpha), ("beta", beta)]);
        let ops = TrialityOps::new(&a);
        let x = symmetric_element(&a, &c);
        let x2 = a.mul(&x, &x);
        let three = a.field().int(3);
        let q = ops.q(&x, &x, &x, &x);
        let x2x2 = a.mul(&x2, &x2);
        let r1 = a.mul(&x, &a.mul(&x, &x2)) - a.mul(&a.mul(&x, &x2), &x) + (&x2x2 - &a.mul(&x, &a.mul(&x2, &x))).scale(&three);
        prop_assert_eq!(q, r1);
    }

    #[test]
    fn q_is_trilinear_in_first_slot(c1 in prop::collection::vec(-5i64..=5, 6), c2 in prop::collection::vec(-5i64..=5, 6), k in -4i64..=4) {
        let a = cat("kuzmin", &[]);
        let ops = TrialityOps::new(&a);
        let f = a.field();
        let (u, v) = (Vector::from_i64(f, &c1), Vector::from_i64(f, &c2));
        let (b, c, d) = (a.basis_vector(2), a.basis_vector(4), a.basis_vector(5));
        let lhs = ops.q(&(&u + &v.scale(&f.int(k))), &b, &c, &d);
        let rhs = ops.q(&u, &b, &c, &d) + ops.q(&v, &b, &c, &d).scale(&f.int(k));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn t_operators_are_antisymmetric(c1 in prop::collection::vec(-5i64..=5, 8), c2 in prop::collection::vec(-5i64..=5, 8), j in 0usize..3) {
        let a = cat("octonion", &[]);
        let ops = TrialityOps::new(&a);
        let f = a.field();
        let (u, v) = (Vector::from_i64(f, &c1), Vector::from_i64(f, &c2));
        prop_assert_eq!(ops.t_op(j, &u, &v).unwrap(), -&ops.t_op(j, &v, &u).unwrap());
    }
}
