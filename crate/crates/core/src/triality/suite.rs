use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::identities as id;
use super::TrialityOps;
use crate::check::{CheckMode, IdentityReport, ModeRecord, Slot, Verdict};

/// Random symmetric samples added to the symmetric basis for the cubic checks.
pub const S_SAMPLES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub mode: CheckMode,
    pub s_samples: usize,
    pub seed: u64,
}

impl SuiteConfig {
    pub fn new(mode: CheckMode) -> SuiteConfig {
        let seed = match mode {
            CheckMode::Probabilistic { seed, .. } => seed,
            CheckMode::Exhaustive => 0,
        };
        SuiteConfig { mode, s_samples: S_SAMPLES, seed }
    }
}

/// Report keys in the order [`identity_suite`] produces them.
pub const IDENTITY_NAMES: [&str; 41] = [
    "t0-cyclic-sum",
    "triality",
    "a-identity",
    "b-identity",
    "associator-a1",
    "skew-associator",
    "skew-associator-conjugate",
    "skew-associator-consequence",
    "combined-associator",
    "chain-a-implies-b",
    "chain-a-implies-a1",
    "chain-b-implies-sk",
    "chain-sk-implies-sk1",
    "a-iff-triality",
    "t-conjugation",
    "t-bracket",
    "t0-conjugation",
    "t0-right-form",
    "lts-antisymmetry",
    "lts-cyclic",
    "lts-derivation",
    "lts-operator-bracket",
    "l-operator-bracket",
    "d-conjugation",
    "d-derivation",
    "d-t-bracket",
    "q-total-symmetry",
    "q-unit-vanishing",
    "q-skew-vanishing",
    "q-conjugation",
    "q-derivation",
    "q-d-sum",
    "q-cubic-closed-form",
    "power-associative-implies-structurable",
    "c-b-agreement-on-skew",
    "q-via-bc",
    "q-vanishing",
    "d-cyclic-sum",
    "d0-symmetries",
    "d0-derivation",
    "d0-cyclic",
];

/// Implication check: fails only when `premise` holds and `conclusion` fails.
fn implies(premise: &Verdict, conclusion: &Verdict, what: &str) -> Verdict {
    let mode = conclusion.mode.clone();
    if premise.is_holds() && conclusion.is_fails() {
        Verdict::fails(mode, conclusion.witness.clone()).with_note(format!("{what}: premise holds, conclusion fails"))
    } else if premise.is_holds() {
        Verdict::holds(mode).with_note(format!("{what}: premise and conclusion hold"))
    } else {
        Verdict::holds(mode).with_note(format!("{what}: premise fails, implication is vacuous"))
    }
}

/// Symmetric basis plus `count` random symmetric combinations.
fn symmetric_samples(ops: &TrialityOps, count: usize, seed: u64) -> Slot {
    let alg = ops.algebra();
    let s = alg.s_slot();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vectors = s.vectors.clone();
    let mut labels = s.labels.clone();
    for k in 0..count {
        vectors.push(s.sample(alg.field(), alg.dim(), &mut rng));
        labels.push(format!("symmetric-sample{k}"));
    }
    Slot::new(vectors, labels)
}

/// Runs every identity. Identities whose hypotheses fail are reported as skipped.
///
/// Hypotheses: pre-structurability (the `A` identity) for the operator identities, the skew
/// associator law for the `B`/`C` comparisons, and vanishing `Q` for the `D_0` laws.
pub fn identity_suite(ops: &TrialityOps, config: SuiteConfig) -> IdentityReport {
    let mode = config.mode;
    let field = ops.algebra().field();
    let mut r = IdentityReport::new();
    let t0c = id::t0_cyclic_sum(ops, mode);
    let tri = id::triality_relation(ops, mode);
    let a = id::a_identity(ops, mode);
    let b = id::b_identity(ops, mode);
    let a1 = id::associator_a1(ops, mode);
    let sk = id::skew_associator(ops, mode);
    let skc = id::skew_associator_conjugate(ops, mode);
    let sk1 = id::skew_associator_consequence(ops, mode);
    let comb = id::combined_associator(ops, mode);
    let iff = if a.is_holds() == tri.is_holds() {
        Verdict::holds(a.mode.clone())
    } else {
        Verdict::fails(a.mode.clone(), None).with_note(format!(
            "A identity {} but triality relation {}",
            if a.is_holds() { "holds" } else { "fails" },
            if tri.is_holds() { "holds" } else { "fails" }
        ))
    };
    let chains = [
        ("chain-a-implies-b", implies(&a, &b, "A implies B")),
        ("chain-a-implies-a1", implies(&a, &a1, "A implies the associator law")),
        ("chain-b-implies-sk", implies(&b, &sk, "B implies the skew law")),
        ("chain-sk-implies-sk1", implies(&sk, &sk1, "skew law implies its consequence")),
    ];
    let pre = a.is_holds();
    let skew_law = sk.is_holds();
    for (name, v) in [
        ("t0-cyclic-sum", t0c),
        ("triality", tri),
        ("a-identity", a),
        ("b-identity", b),
        ("associator-a1", a1),
        ("skew-associator", sk),
        ("skew-associator-conjugate", skc),
        ("skew-associator-consequence", sk1),
        ("combined-associator", comb),
    ] {
        r.push(name, v);
    }
    for (name, v) in chains {
        r.push(name, v);
    }
    r.push("a-iff-triality", iff);

    let skipped = |why: &str| Verdict::skipped(mode.record(field), why);
    type Check = fn(&TrialityOps, CheckMode) -> Verdict;
    let pre_checks: [(&str, Check); 18] = [
        ("t-conjugation", id::t_conjugation),
        ("t-bracket", id::t_bracket),
        ("t0-conjugation", id::t0_conjugation),
        ("t0-right-form", id::t0_right_form),
        ("lts-antisymmetry", id::lts_antisymmetry),
        ("lts-cyclic", id::lts_cyclic),
        ("lts-derivation", id::lts_derivation),
        ("lts-operator-bracket", id::lts_operator_bracket),
        ("l-operator-bracket", id::l_operator_bracket),
        ("d-conjugation", id::d_conjugation),
        ("d-derivation", id::d_derivation),
        ("d-t-bracket", id::d_t_bracket),
        ("q-total-symmetry", id::q_total_symmetry),
        ("q-unit-vanishing", id::q_unit_vanishing),
        ("q-skew-vanishing", id::q_skew_vanishing),
        ("q-conjugation", id::q_conjugation),
        ("q-derivation", id::q_derivation),
        ("q-d-sum", id::q_d_sum),
    ];
    for (name, check) in pre_checks {
        r.push(name, if pre { check(ops, mode) } else { skipped("not pre-structurable") });
    }

    let samples = symmetric_samples(ops, config.s_samples, config.seed);
    let sample_mode = ModeRecord::Probabilistic { trials: samples.len(), prime: field.modulus(), seed: config.seed };
    let relabel = |v: Verdict| Verdict { mode: sample_mode.clone(), ..v };
    if pre {
        r.push("q-cubic-closed-form", relabel(id::q_cubic_closed_form(ops, &samples)));
        let probe = id::power_associativity_probe(ops, &samples);
        let v = if probe.is_holds() {
            let structurable = id::q_vanishing(ops, mode);
            if structurable.is_holds() {
                Verdict::holds(structurable.mode)
            } else {
                Verdict::fails(structurable.mode, structurable.witness)
                    .with_note("power-associative on samples but Q does not vanish")
            }
        } else {
            relabel(Verdict::skipped(mode.record(field), "not power-associative on the symmetric samples"))
        };
        r.push("power-associative-implies-structurable", v);
    } else {
        r.push("q-cubic-closed-form", skipped("not pre-structurable"));
        r.push("power-associative-implies-structurable", skipped("not pre-structurable"));
    }

    r.push(
        "c-b-agreement-on-skew",
        if skew_law { id::c_b_agreement_on_skew(ops, mode) } else { skipped("skew associator law fails") },
    );
    r.push(
        "q-via-bc",
        if skew_law && pre { id::q_via_bc(ops, mode) } else { skipped("needs pre-structurable and the skew law") },
    );

    let qv = id::q_vanishing(ops, mode);
    let structurable = pre && qv.is_holds();
    r.push("q-vanishing", qv);
    let structurable_checks: [(&str, Check); 4] = [
        ("d-cyclic-sum", id::d_cyclic_sum),
        ("d0-symmetries", id::d0_symmetries),
        ("d0-derivation", id::d0_derivation),
        ("d0-cyclic", id::d0_cyclic),
    ];
    for (name, check) in structurable_checks {
        r.push(name, if structurable { check(ops, mode) } else { skipped("not structurable") });
    }
    debug_assert!(r.names().eq(IDENTITY_NAMES.iter().copied()));
    r
}
