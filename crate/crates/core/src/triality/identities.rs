//! One function per identity. Each scans spanning tuples (or random tuples) and returns a
//! [`Verdict`] whose witness carries the first nonzero defect.
//!
//! Filters such as `a < b` are used only where the defect is antisymmetric in that pair.

use super::TrialityOps;
use crate::check::{no_filter, scan_simple, stack, CheckMode, Slot, Verdict};
use crate::linalg::Vector;

fn run<F>(ops: &TrialityOps, mode: CheckMode, name: &str, slots: &[&Slot], filter: fn(&[usize]) -> bool, f: F) -> Verdict
where
    F: Fn(&[&Vector]) -> Vector + Sync,
{
    scan_simple(mode.salted(name), ops.algebra().field(), ops.dim(), slots, filter, f)
}

fn lt01(i: &[usize]) -> bool {
    i[0] < i[1]
}

fn lt01_lt23(i: &[usize]) -> bool {
    i[0] < i[1] && i[2] < i[3]
}

fn strictly_increasing(i: &[usize]) -> bool {
    i.windows(2).all(|w| w[0] < w[1])
}

fn non_decreasing(i: &[usize]) -> bool {
    i.windows(2).all(|w| w[0] <= w[1])
}

/// `t_0(a,b)c + t_0(b,c)a + t_0(c,a)b = 0`.
pub fn t0_cyclic_sum(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let b = ops.basis_slot();
    run(ops, mode, "t0-cyclic-sum", &[b, b, b], strictly_increasing, |x| {
        let (a, b, c) = (x[0], x[1], x[2]);
        ops.t(0, a, b, c) + ops.t(0, b, c, a) + ops.t(0, c, a, b)
    })
}

/// The triality relation `t̄_j(a,b)(cd) = (t_{j+1}(a,b)c)d + c(t_{j+2}(a,b)d)` for `j = 0, 1, 2`.
pub fn triality_relation(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let (alg, b) = (ops.algebra(), ops.basis_slot());
    run(ops, mode, "triality", &[b, b, b, b], lt01, |x| {
        let (a, bb, c, d) = (x[0], x[1], x[2], x[3]);
        let cd = alg.mul(c, d);
        let parts: Vec<Vector> = (0..3)
            .map(|j| {
                ops.conj_apply(|v| ops.t(j, a, bb, v), &cd)
                    - alg.mul(&ops.t(j + 1, a, bb, c), d)
                    - alg.mul(c, &ops.t(j + 2, a, bb, d))
            })
            .collect();
        stack(alg.field(), &parts)
    })
}

/// `A(a,b,c) - A(b,a,c) - A(c,a,b) + A(c,b,a) = 0`, the defining identity of pre-structurability.
pub fn a_identity(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let b = ops.basis_slot();
    run(ops, mode, "a-identity", &[b, b, b, b], lt01, |x| {
        let (a, b, c, d) = (x[0], x[1], x[2], x[3]);
        ops.a_op_apply(a, b, c, d) - ops.a_op_apply(b, a, c, d) - ops.a_op_apply(c, a, b, d)
            + ops.a_op_apply(c, b, a, d)
    })
}

/// `B(a,b,c) - B(b,a,c) - B(c,a,b) + B(c,b,a) = 0`.
pub fn b_identity(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let b = ops.basis_slot();
    run(ops, mode, "b-identity", &[b, b, b, b], lt01, |x| {
        let (a, b, c, d) = (x[0], x[1], x[2], x[3]);
        ops.b_op_apply(a, b, c, d) - ops.b_op_apply(b, a, c, d) - ops.b_op_apply(c, a, b, d)
            + ops.b_op_apply(c, b, a, d)
    })
}

fn a1_defect(ops: &TrialityOps, a: &Vector, b: &Vector, c: &Vector) -> Vector {
    let alg = ops.algebra();
    let (ca, cb) = (alg.conj(a), alg.conj(b));
    alg.assoc(a, &cb, c) - alg.assoc(b, &ca, c) - alg.assoc(c, &ca, b) + alg.assoc(c, &cb, a)
}

/// `[a,b̄,c] - [b,ā,c] - [c,ā,b] + [c,b̄,a] = 0`.
pub fn associator_a1(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let b = ops.basis_slot();
    run(ops, mode, "associator-a1", &[b, b, b], lt01, |x| a1_defect(ops, x[0], x[1], x[2]))
}

fn sk_defect(ops: &TrialityOps, a: &Vector, b: &Vector, c: &Vector) -> Vector {
    let alg = ops.algebra();
    let s = a - &alg.conj(a);
    alg.assoc(&s, b, c) + alg.assoc(b, &s, c)
}

/// `[s,b,c] + [b,s,c] = 0` for skew `s = a - ā`.
pub fn skew_associator(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let b = ops.basis_slot();
    run(ops, mode, "skew-associator", &[b, b, b], no_filter, |x| sk_defect(ops, x[0], x[1], x[2]))
}

/// The skew law together with its consequence `[s,b,c] = [b,c,s]`.
pub fn skew_associator_conjugate(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let (alg, b) = (ops.algebra(), ops.basis_slot());
    run(ops, mode, "skew-associator-conjugate", &[b, b, b], no_filter, |x| {
        let (a, b, c) = (x[0], x[1], x[2]);
        let s = a - &alg.conj(a);
        stack(alg.field(), &[sk_defect(ops, a, b, c), alg.assoc(&s, b, c) - alg.assoc(b, c, &s)])
    })
}

fn sk1_defect(ops: &TrialityOps, a: &Vector, b: &Vector, c: &Vector) -> Vector {
    let alg = ops.algebra();
    let (ca, cb) = (alg.conj(a), alg.conj(b));
    alg.assoc(c, &ca, b) - alg.assoc(c, &cb, a) - alg.assoc(c, a, &cb) + alg.assoc(c, b, &ca)
}

/// `[c,ā,b] - [c,b̄,a] - [c,a,b̄] + [c,b,ā] = 0`.
pub fn skew_associator_consequence(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let b = ops.basis_slot();
    run(ops, mode, "skew-associator-consequence", &[b, b, b], lt01, |x| sk1_defect(ops, x[0], x[1], x[2]))
}

/// The associator law above together with `[a,b̄,c] - [b,ā,c] - [c,a,b̄] + [c,b,ā] = 0`.
pub fn combined_associator(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let (alg, b) = (ops.algebra(), ops.basis_slot());
    run(ops, mode, "combined-associator", &[b, b, b], lt01, |x| {
        let (a, b, c) = (x[0], x[1], x[2]);
        let (ca, cb) = (alg.conj(a), alg.conj(b));
        let second = alg.assoc(a, &cb, c) - alg.assoc(b, &ca, c) - alg.assoc(c, a, &cb) + alg.assoc(c, b, &ca);
        stack(alg.field(), &[a1_defect(ops, a, b, c), second])
    })
}

/// `t̄_j(a,b) = t_{3-j}(ā,b̄)` for all `j`.
pub fn t_conjugation(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let (alg, b) = (ops.algebra(), ops.basis_slot());
    run(ops, mode, "t-conjugation", &[b, b, b], lt01, |x| {
        let (a, bb, v) = (x[0], x[1], x[2]);
        let (ca, cb) = (alg.conj(a), alg.conj(bb));
        let parts: Vec<Vector> =
            (0..3).map(|j| ops.conj_apply(|w| ops.t(j, a, bb, w), v) - ops.t(3 - j, &ca, &cb, v)).collect();
        stack(alg.field(), &parts)
    })
}

/// `[t_j(a,b), t_k(c,d)] = t_k(t_{j-k}(a,b)c, d) + t_k(c, t_{j-k}(a,b)d)` for all `j, k`.
pub fn t_bracket(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let (alg, b) = (ops.algebra(), ops.basis_slot());
    run(ops, mode, "t-bracket", &[b, b, b, b, b], lt01_lt23, |x| {
        let (a, bb, c, d, v) = (x[0], x[1], x[2], x[3], x[4]);
        let tc: Vec<Vector> = (0..3).map(|m| ops.t(m, a, bb, c)).collect();
        let td: Vec<Vector> = (0..3).map(|m| ops.t(m, a, bb, d)).collect();
        let mut parts = Vec::with_capacity(9);
        for j in 0..3 {
            for k in 0..3 {
                let m = (j + 3 - k) % 3;
                let lhs = ops.t(j, a, bb, &ops.t(k, c, d, v)) - ops.t(k, c, d, &ops.t(j, a, bb, v));
                parts.push(lhs - ops.t(k, &tc[m], d, v) - ops.t(k, c, &td[m], v));
            }
        }
        stack(alg.field(), &parts)
    })
}

/// `t̄_0(a,b) = t_0(ā,b̄)`.
pub fn t0_conjugation(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let (alg, b) = (ops.algebra(), ops.basis_slot());
    run(ops, mode, "t0-conjugation", &[b, b, b], lt01, |x| {
        let (a, bb, v) = (x[0], x[1], x[2]);
        ops.conj_apply(|w| ops.t(0, a, bb, w), v) - ops.t(0, &alg.conj(a), &alg.conj(bb), v)
    })
}

/// `t_0(a,b)x = (bā - ab̄)x + (xā)b - (xb̄)a`.
pub fn t0_right_form(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let (alg, b) = (ops.algebra(), ops.basis_slot());
    run(ops, mode, "t0-right-form", &[b, b, b], lt01, |x| {
        let (a, bb, v) = (x[0], x[1], x[2]);
        let (ca, cb) = (alg.conj(a), alg.conj(bb));
        let w = alg.mul(bb, &ca) - alg.mul(a, &cb);
        ops.t(0, a, bb, v) - alg.mul(&w, v) - alg.mul(&alg.mul(v, &ca), bb) + alg.mul(&alg.mul(v, &cb), a)
    })
}

/// `abc = -bac` for the triple product `abc = t_0(a,b)c`.
pub fn lts_antisymmetry(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let b = ops.basis_slot();
    run(ops, mode, "lts-antisymmetry", &[b, b, b], no_filter, |x| {
        ops.lts_product(x[0], x[1], x[2]) + ops.lts_product(x[1], x[0], x[2])
    })
}

/// `abc + bca + cab = 0`.
pub fn lts_cyclic(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let b = ops.basis_slot();
    run(ops, mode, "lts-cyclic", &[b, b, b], strictly_increasing, |x| {
        let (a, b, c) = (x[0], x[1], x[2]);
        ops.lts_product(a, b, c) + ops.lts_product(b, c, a) + ops.lts_product(c, a, b)
    })
}

/// `ab(cdf) = (abc)df + c(abd)f + cd(abf)`.
pub fn lts_derivation(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let b = ops.basis_slot();
    run(ops, mode, "lts-derivation", &[b, b, b, b, b], lt01_lt23, |x| {
        let (a, b, c, d, f) = (x[0], x[1], x[2], x[3], x[4]);
        let p = |u: &Vector, v: &Vector, w: &Vector| ops.lts_product(u, v, w);
        p(a, b, &p(c, d, f)) - p(&p(a, b, c), d, f) - p(c, &p(a, b, d), f) - p(c, d, &p(a, b, f))
    })
}

/// `[t_0(a,b), t_0(c,d)] = t_0(t_0(a,b)c, d) + t_0(c, t_0(a,b)d)`.
pub fn lts_operator_bracket(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let b = ops.basis_slot();
    run(ops, mode, "lts-operator-bracket", &[b, b, b, b, b], lt01_lt23, |x| {
        let (a, b, c, d, v) = (x[0], x[1], x[2], x[3], x[4]);
        ops.t(0, a, b, &ops.t(0, c, d, v)) - ops.t(0, c, d, &ops.t(0, a, b, v))
            - ops.t(0, &ops.t(0, a, b, c), d, v)
            - ops.t(0, c, &ops.t(0, a, b, d), v)
    })
}

/// `[L(a,b), L(c,d)] = L(L(a,b)c, d) + L(c, L(a,b)d)` with `L(a,b) = t_0(a,b) + t_2(ā,b̄)`.
pub fn l_operator_bracket(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let b = ops.basis_slot();
    run(ops, mode, "l-operator-bracket", &[b, b, b, b, b], lt01_lt23, |x| {
        let (a, b, c, d, v) = (x[0], x[1], x[2], x[3], x[4]);
        ops.l(a, b, &ops.l(c, d, v)) - ops.l(c, d, &ops.l(a, b, v))
            - ops.l(&ops.l(a, b, c), d, v)
            - ops.l(c, &ops.l(a, b, d), v)
    })
}

/// `D(a,b) = D(ā,b̄) = D̄(a,b)`.
pub fn d_conjugation(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let (alg, b) = (ops.algebra(), ops.basis_slot());
    run(ops, mode, "d-conjugation", &[b, b, b], lt01, |x| {
        let (a, bb, v) = (x[0], x[1], x[2]);
        let dv = ops.d(a, bb, v);
        let dc = ops.d(&alg.conj(a), &alg.conj(bb), v);
        stack(alg.field(), &[&dv - &dc, ops.conj_apply(|w| ops.d(a, bb, w), v) - dv])
    })
}

/// `D(a,b)(xy) = (D(a,b)x)y + x(D(a,b)y)`.
pub fn d_derivation(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let (alg, b) = (ops.algebra(), ops.basis_slot());
    run(ops, mode, "d-derivation", &[b, b, b, b], lt01, |x| {
        let (a, bb, u, v) = (x[0], x[1], x[2], x[3]);
        ops.d(a, bb, &alg.mul(u, v)) - alg.mul(&ops.d(a, bb, u), v) - alg.mul(u, &ops.d(a, bb, v))
    })
}

/// `[D(a,b), t_k(c,d)] = t_k(D(a,b)c, d) + t_k(c, D(a,b)d)` for all `k`.
pub fn d_t_bracket(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let (alg, b) = (ops.algebra(), ops.basis_slot());
    run(ops, mode, "d-t-bracket", &[b, b, b, b, b], lt01_lt23, |x| {
        let (a, bb, c, d, v) = (x[0], x[1], x[2], x[3], x[4]);
        let (dc, dd) = (ops.d(a, bb, c), ops.d(a, bb, d));
        let parts: Vec<Vector> = (0..3)
            .map(|k| {
                ops.d(a, bb, &ops.t(k, c, d, v)) - ops.t(k, c, d, &ops.d(a, bb, v))
                    - ops.t(k, &dc, d, v)
                    - ops.t(k, c, &dd, v)
            })
            .collect();
        stack(alg.field(), &parts)
    })
}

const PERMS4: [[usize; 4]; 24] = {
    let mut out = [[0; 4]; 24];
    let mut n = 0;
    let mut i = 0;
    while i < 4 {
        let mut j = 0;
        while j < 4 {
            let mut k = 0;
            while k < 4 {
                if i != j && j != k && i != k {
                    out[n] = [i, j, k, 6 - i - j - k];
                    n += 1;
                }
                k += 1;
            }
            j += 1;
        }
        i += 1;
    }
    out
};

/// `Q(a,b,c)d` is invariant under every permutation of its four arguments.
pub fn q_total_symmetry(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let (alg, b) = (ops.algebra(), ops.basis_slot());
    run(ops, mode, "q-total-symmetry", &[b, b, b, b], non_decreasing, |x| {
        let base = ops.q(x[0], x[1], x[2], x[3]);
        let parts: Vec<Vector> =
            PERMS4[1..].iter().map(|p| ops.q(x[p[0]], x[p[1]], x[p[2]], x[p[3]]) - base.clone()).collect();
        stack(alg.field(), &parts)
    })
}

/// `Q(a,b,c)d = 0` whenever one of the four arguments is the unit.
pub fn q_unit_vanishing(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let (alg, b) = (ops.algebra(), ops.basis_slot());
    let e = alg.unit();
    run(ops, mode, "q-unit-vanishing", &[b, b, b], no_filter, |x| {
        let (u, v, w) = (x[0], x[1], x[2]);
        stack(alg.field(), &[ops.q(e, u, v, w), ops.q(u, e, v, w), ops.q(u, v, e, w), ops.q(u, v, w, e)])
    })
}

/// `Q(a,b,c)d = 0` whenever one of the four arguments is skew.
pub fn q_skew_vanishing(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let (alg, b, h) = (ops.algebra(), ops.basis_slot(), ops.h_slot());
    if h.is_empty() {
        return Verdict::holds(mode.record(alg.field())).with_note("no skew elements");
    }
    run(ops, mode, "q-skew-vanishing", &[h, b, b, b], no_filter, |x| {
        let (s, u, v, w) = (x[0], x[1], x[2], x[3]);
        stack(alg.field(), &[ops.q(s, u, v, w), ops.q(u, s, v, w), ops.q(u, v, s, w), ops.q(u, v, w, s)])
    })
}

/// `Q̄(a,b,c) = Q(ā,b̄,c̄) = Q(a,b,c)`.
pub fn q_conjugation(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let (alg, b) = (ops.algebra(), ops.basis_slot());
    run(ops, mode, "q-conjugation", &[b, b, b, b], no_filter, |x| {
        let (a, bb, c, v) = (x[0], x[1], x[2], x[3]);
        let qv = ops.q(a, bb, c, v);
        let qc = ops.q(&alg.conj(a), &alg.conj(bb), &alg.conj(c), v);
        stack(alg.field(), &[ops.conj_apply(|w| ops.q(a, bb, c, w), v) - qc.clone(), qc - qv])
    })
}

/// `Q(a,b,c)` is a derivation.
pub fn q_derivation(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let (alg, b) = (ops.algebra(), ops.basis_slot());
    run(ops, mode, "q-derivation", &[b, b, b, b, b], no_filter, |x| {
        let (a, bb, c, u, v) = (x[0], x[1], x[2], x[3], x[4]);
        ops.q(a, bb, c, &alg.mul(u, v)) - alg.mul(&ops.q(a, bb, c, u), v) - alg.mul(u, &ops.q(a, bb, c, v))
    })
}

fn d_cyclic(ops: &TrialityOps, a: &Vector, b: &Vector, c: &Vector, v: &Vector) -> Vector {
    let alg = ops.algebra();
    let (ca, cb, cc) = (alg.conj(a), alg.conj(b), alg.conj(c));
    ops.d(a, &alg.mul(&cb, &cc), v) + ops.d(b, &alg.mul(&cc, &ca), v) + ops.d(c, &alg.mul(&ca, &cb), v)
}

/// `3Q(a,b,c) = D(a,b̄c̄) + D(b,c̄ā) + D(c,āb̄)`.
pub fn q_d_sum(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let (alg, b) = (ops.algebra(), ops.basis_slot());
    let three = alg.field().int(3);
    run(ops, mode, "q-d-sum", &[b, b, b, b], no_filter, |x| {
        ops.q(x[0], x[1], x[2], x[3]).scale(&three) - d_cyclic(ops, x[0], x[1], x[2], x[3])
    })
}

/// `Q(a,b,c) = B(b,a,c) - C(a,b,c) - C(c,b,a) - C'(c,a,b)`.
pub fn q_via_bc(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let b = ops.basis_slot();
    run(ops, mode, "q-via-bc", &[b, b, b, b], no_filter, |x| {
        ops.q_via_bc_apply(x[0], x[1], x[2], x[3]) - ops.q(x[0], x[1], x[2], x[3])
    })
}

/// `C(a,b,c)s = B(a,b,c)s` for skew `s = d - d̄`.
pub fn c_b_agreement_on_skew(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let (alg, b) = (ops.algebra(), ops.basis_slot());
    run(ops, mode, "c-b-agreement-on-skew", &[b, b, b, b], no_filter, |x| {
        let s = x[3] - &alg.conj(x[3]);
        ops.c_op_apply(x[0], x[1], x[2], &s) - ops.b_op_apply(x[0], x[1], x[2], &s)
    })
}

/// `Q(a,b,c)d = 0`.
pub fn q_vanishing(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let b = ops.basis_slot();
    run(ops, mode, "q-vanishing", &[b, b, b, b], no_filter, |x| ops.q(x[0], x[1], x[2], x[3]))
}

/// `D(a,b̄c̄) + D(b,c̄ā) + D(c,āb̄) = 0`.
pub fn d_cyclic_sum(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let b = ops.basis_slot();
    run(ops, mode, "d-cyclic-sum", &[b, b, b, b], no_filter, |x| d_cyclic(ops, x[0], x[1], x[2], x[3]))
}

/// `D_0(a,b) = -D_0(b,a) = D_0(ā,b̄) = D̄_0(a,b)`.
pub fn d0_symmetries(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let (alg, b) = (ops.algebra(), ops.basis_slot());
    run(ops, mode, "d0-symmetries", &[b, b, b], no_filter, |x| {
        let (a, bb, v) = (x[0], x[1], x[2]);
        let dv = ops.d0(a, bb, v);
        stack(
            alg.field(),
            &[
                &dv + &ops.d0(bb, a, v),
                &dv - &ops.d0(&alg.conj(a), &alg.conj(bb), v),
                ops.conj_apply(|w| ops.d0(a, bb, w), v) - dv,
            ],
        )
    })
}

/// `D_0(a,b)` is a derivation.
pub fn d0_derivation(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let (alg, b) = (ops.algebra(), ops.basis_slot());
    run(ops, mode, "d0-derivation", &[b, b, b, b], no_filter, |x| {
        let (a, bb, u, v) = (x[0], x[1], x[2], x[3]);
        ops.d0(a, bb, &alg.mul(u, v)) - alg.mul(&ops.d0(a, bb, u), v) - alg.mul(u, &ops.d0(a, bb, v))
    })
}

/// `D_0(a,bc) + D_0(b,ca) + D_0(c,ab) = 0`.
pub fn d0_cyclic(ops: &TrialityOps, mode: CheckMode) -> Verdict {
    let (alg, b) = (ops.algebra(), ops.basis_slot());
    run(ops, mode, "d0-cyclic", &[b, b, b, b], no_filter, |x| {
        let (a, bb, c, v) = (x[0], x[1], x[2], x[3]);
        ops.d0(a, &alg.mul(bb, c), v) + ops.d0(bb, &alg.mul(c, a), v) + ops.d0(c, &alg.mul(a, bb), v)
    })
}

/// Closed form of the cubic `Q(a,a,a)a` on symmetric elements:
/// `[a, a·a²] + 3(a²a² - a(a²a)) = [a²a, a] + 3(a²a² - (aa²)a)`.
///
/// The expression is not multilinear, so it is evaluated on an explicit list of samples.
pub fn q_cubic_closed_form(ops: &TrialityOps, samples: &Slot) -> Verdict {
    let alg = ops.algebra();
    let three = alg.field().int(3);
    let br = |x: &Vector, y: &Vector| alg.mul(x, y) - alg.mul(y, x);
    scan_simple(CheckMode::Exhaustive, alg.field(), ops.dim(), &[samples], no_filter, |x| {
        let a = x[0];
        let a2 = alg.mul(a, a);
        let q = ops.q(a, a, a, a);
        let a2a2 = alg.mul(&a2, &a2);
        let (a_a2, a2_a) = (alg.mul(a, &a2), alg.mul(&a2, a));
        let r1 = br(a, &alg.mul(a, &a2)) + (&a2a2 - &alg.mul(a, &a2_a)).scale(&three);
        let r2 = br(&a2_a, a) + (&a2a2 - &alg.mul(&a_a2, a)).scale(&three);
        stack(alg.field(), &[&q - &r1, q - r2])
    })
}

/// Power-associativity on samples: `aa² = a²a` and `a²a² = a(aa²)`.
pub fn power_associativity_probe(ops: &TrialityOps, samples: &Slot) -> Verdict {
    let alg = ops.algebra();
    scan_simple(CheckMode::Exhaustive, alg.field(), ops.dim(), &[samples], no_filter, |x| {
        let a = x[0];
        let a2 = alg.mul(a, a);
        let a3 = alg.mul(a, &a2);
        stack(alg.field(), &[&a3 - &alg.mul(&a2, a), alg.mul(&a2, &a2) - alg.mul(a, &a3)])
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_table_is_complete() {
        let mut seen: Vec<[usize; 4]> = PERMS4.to_vec();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 24);
        assert_eq!(PERMS4[0], [0, 1, 2, 3]);
    }
}
