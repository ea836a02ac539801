//! Verdicts, identity reports and the tuple scanner every identity check runs on.
//!
//! Identities are multilinear, so checking every tuple of spanning vectors is complete.
//! The scanner walks tuples in lexicographic index order and reports the first failure;
//! the parallel search keeps that guarantee because it returns the minimal failing index.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::linalg::{Field, Scalar, Vector};

/// Largest dimension checked exhaustively by default.
pub const EXHAUSTIVE_LIMIT: usize = 16;
/// Random tuples per identity in probabilistic mode unless overridden.
pub const DEFAULT_TRIALS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Probabilistic { trials: usize, seed: u64 },
}

impl CheckMode {
    /// Exhaustive up to [`EXHAUSTIVE_LIMIT`], otherwise [`DEFAULT_TRIALS`] random tuples.
    pub fn default_for(dim: usize) -> CheckMode {
        if dim <= EXHAUSTIVE_LIMIT {
            CheckMode::Exhaustive
        } else {
            CheckMode::Probabilistic { trials: DEFAULT_TRIALS, seed: 0 }
        }
    }

    pub fn record(self, field: Field) -> ModeRecord {
        match self {
            CheckMode::Exhaustive => ModeRecord::Exhaustive,
            CheckMode::Probabilistic { trials, seed } => {
                ModeRecord::Probabilistic { trials, prime: field.modulus(), seed }
            }
        }
    }

    /// Same mode with the seed perturbed by `label`, so distinct identities draw distinct samples.
    pub fn salted(self, label: &str) -> CheckMode {
        match self {
            CheckMode::Exhaustive => self,
            CheckMode::Probabilistic { trials, seed } => CheckMode::Probabilistic { trials, seed: salt(seed, label) },
        }
    }
}

fn salt(seed: u64, label: &str) -> u64 {
    // FNV-1a over the label, folded into the seed.
    let h = label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
    seed ^ h
}

/// How a verdict was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModeRecord {
    Exhaustive,
    /// `prime` is `None` when the samples were small rational integers.
    Probabilistic { trials: usize, prime: Option<u32>, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
    Skipped(String),
}

/// A failing tuple: its arguments, their labels, and the nonzero defect they produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub args: Vec<Vector>,
    pub labels: Vec<String>,
    /// Index of the random trial, in probabilistic mode.
    pub trial: Option<usize>,
    pub defect: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub mode: ModeRecord,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

impl Verdict {
    pub fn holds(mode: ModeRecord) -> Verdict {
        Verdict { status: Status::Holds, mode, witness: None, note: None }
    }

    pub fn fails(mode: ModeRecord, witness: Option<Witness>) -> Verdict {
        Verdict { status: Status::Fails, mode, witness, note: None }
    }

    pub fn skipped(mode: ModeRecord, reason: impl Into<String>) -> Verdict {
        Verdict { status: Status::Skipped(reason.into()), mode, witness: None, note: None }
    }

    pub fn from_bool(ok: bool, mode: ModeRecord) -> Verdict {
        if ok {
            Verdict::holds(mode)
        } else {
            Verdict::fails(mode, None)
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Verdict {
        self.note = Some(note.into());
        self
    }

    pub fn is_holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.status == Status::Fails
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self.status, Status::Skipped(_))
    }
}

/// Ordered list of named verdicts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityReport {
    entries: Vec<(String, Verdict)>,
}

impl IdentityReport {
    pub fn new() -> IdentityReport {
        IdentityReport::default()
    }

    pub fn push(&mut self, name: impl Into<String>, verdict: Verdict) {
        self.entries.push((name.into(), verdict));
    }

    pub fn get(&self, name: &str) -> Option<&Verdict> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn entries(&self) -> &[(String, Verdict)] {
        &self.entries
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }

    /// True when no entry failed. Skipped entries do not count as failures.
    pub fn no_failures(&self) -> bool {
        self.entries.iter().all(|(_, v)| !v.is_fails())
    }

    pub fn failures(&self) -> impl Iterator<Item = &(String, Verdict)> {
        self.entries.iter().filter(|(_, v)| v.is_fails())
    }

    pub fn extend(&mut self, other: IdentityReport) {
        self.entries.extend(other.entries);
    }
}

/// Spanning vectors one argument ranges over, with display labels.
#[derive(Clone, Debug)]
pub struct Slot {
    pub vectors: Vec<Vector>,
    pub labels: Vec<String>,
}

impl Slot {
    pub fn new(vectors: Vec<Vector>, labels: Vec<String>) -> Slot {
        assert_eq!(vectors.len(), labels.len(), "one label per slot vector");
        Slot { vectors, labels }
    }

    /// Standard basis of `F^n` labelled by `names`.
    pub fn standard(field: Field, names: &[String]) -> Slot {
        let n = names.len();
        Slot { vectors: (0..n).map(|i| Vector::basis(field, n, i)).collect(), labels: names.to_vec() }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Random element of the span: uniform over a prime field, small integer weights over the rationals.
    pub fn sample<R: Rng + ?Sized>(&self, field: Field, dim: usize, rng: &mut R) -> Vector {
        let mut v = Vector::zeros(field, dim);
        for b in &self.vectors {
            v.axpy(&sample_scalar(field, rng), b);
        }
        v
    }
}

pub fn sample_scalar<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Scalar {
    match field {
        Field::Rational => field.int(rng.gen_range(-10..=10)),
        Field::Prime(p) => field.int(rng.gen_range(0..p) as i64),
    }
}

fn decode(mut idx: usize, lens: &[usize], out: &mut [usize]) {
    for s in (0..lens.len()).rev() {
        out[s] = idx % lens[s];
        idx /= lens[s];
    }
}

/// Checks `eval(prep(outer), inner) == 0` over tuples of slot vectors.
///
/// `prep` runs once per outer tuple and lets callers build operator matrices that the
/// inner loop reuses. `filter` prunes outer index tuples in exhaustive mode only, and must
/// only discard tuples whose failure would be implied by a lexicographically smaller one.
pub fn scan<P, Prep, Eval, Filt>(
    mode: CheckMode,
    field: Field,
    dim: usize,
    outer: &[&Slot],
    inner: &[&Slot],
    filter: Filt,
    prep: Prep,
    eval: Eval,
) -> Verdict
where
    Prep: Fn(&[&Vector]) -> P + Sync,
    Eval: Fn(&P, &[&Vector]) -> Vector + Sync,
    Filt: Fn(&[usize]) -> bool + Sync,
{
    let record = mode.record(field);
    let found = match mode {
        CheckMode::Exhaustive => scan_exhaustive(outer, inner, &filter, &prep, &eval),
        CheckMode::Probabilistic { trials, seed } => scan_random(field, dim, trials, seed, outer, inner, &prep, &eval),
    };
    match found {
        None => Verdict::holds(record),
        Some(w) => Verdict::fails(record, Some(w)),
    }
}

/// [`scan`] without a preparation stage: every slot is an argument of `f`.
pub fn scan_simple<F, Filt>(mode: CheckMode, field: Field, dim: usize, slots: &[&Slot], filter: Filt, f: F) -> Verdict
where
    F: Fn(&[&Vector]) -> Vector + Sync,
    Filt: Fn(&[usize]) -> bool + Sync,
{
    scan(mode, field, dim, slots, &[], filter, f, |d: &Vector, _: &[&Vector]| d.clone())
}

pub fn no_filter(_: &[usize]) -> bool {
    true
}

fn scan_exhaustive<P, Prep, Eval, Filt>(
    outer: &[&Slot],
    inner: &[&Slot],
    filter: &Filt,
    prep: &Prep,
    eval: &Eval,
) -> Option<Witness>
where
    Prep: Fn(&[&Vector]) -> P + Sync,
    Eval: Fn(&P, &[&Vector]) -> Vector + Sync,
    Filt: Fn(&[usize]) -> bool + Sync,
{
    let olens: Vec<usize> = outer.iter().map(|s| s.len()).collect();
    let ilens: Vec<usize> = inner.iter().map(|s| s.len()).collect();
    let ototal: usize = olens.iter().product();
    let itotal: usize = ilens.iter().product();
    (0..ototal).into_par_iter().find_map_first(|oidx| {
        let mut oi = vec![0; outer.len()];
        decode(oidx, &olens, &mut oi);
        if !filter(&oi) {
            return None;
        }
        let oargs: Vec<&Vector> = oi.iter().zip(outer).map(|(&i, s)| &s.vectors[i]).collect();
        let p = prep(&oargs);
        let mut ii = vec![0; inner.len()];
        for iidx in 0..itotal {
            decode(iidx, &ilens, &mut ii);
            let iargs: Vec<&Vector> = ii.iter().zip(inner).map(|(&i, s)| &s.vectors[i]).collect();
            let defect = eval(&p, &iargs);
            if !defect.is_zero() {
                let slots = outer.iter().chain(inner);
                let idx = oi.iter().chain(&ii);
                let (args, labels) =
                    slots.zip(idx).map(|(s, &i)| (s.vectors[i].clone(), s.labels[i].clone())).unzip();
                return Some(Witness { args, labels, trial: None, defect });
            }
        }
        None
    })
}

#[allow(clippy::too_many_arguments)]
fn scan_random<P, Prep, Eval>(
    field: Field,
    dim: usize,
    trials: usize,
    seed: u64,
    outer: &[&Slot],
    inner: &[&Slot],
    prep: &Prep,
    eval: &Eval,
) -> Option<Witness>
where
    Prep: Fn(&[&Vector]) -> P + Sync,
    Eval: Fn(&P, &[&Vector]) -> Vector + Sync,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<Vec<Vector>> =
        (0..trials).map(|_| outer.iter().chain(inner).map(|s| s.sample(field, dim, &mut rng)).collect()).collect();
    let k = outer.len();
    samples.par_iter().enumerate().find_map_first(|(t, args)| {
        let refs: Vec<&Vector> = args.iter().collect();
        let p = prep(&refs[..k]);
        let defect = eval(&p, &refs[k..]);
        (!defect.is_zero()).then(|| Witness {
            args: args.clone(),
            labels: (0..args.len()).map(|i| format!("sample{t}.{i}")).collect(),
            trial: Some(t),
            defect,
        })
    })
}

/// Stacks several defect vectors into one so a single scan can test a family of equations.
pub fn stack(field: Field, parts: &[Vector]) -> Vector {
    Vector::concat(field, parts).expect("defects share the field")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slot(n: usize) -> Slot {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        Slot::standard(Field::Rational, &names)
    }

    #[test]
    fn exhaustive_witness_is_lexicographic_minimum() {
        let s = slot(4);
        // Fails exactly when both arguments are at index >= 2.
        let v = scan_simple(CheckMode::Exhaustive, Field::Rational, 4, &[&s, &s], no_filter, |a| {
            let bad = a.iter().all(|x| x[0].is_zero() && x[1].is_zero());
            Vector::from_i64(Field::Rational, &[bad as i64])
        });
        assert!(v.is_fails());
        assert_eq!(v.witness.unwrap().labels, vec!["v2", "v2"]);
    }

    #[test]
    fn inner_loop_reuses_preparation() {
        let s = slot(3);
        let v = scan(
            CheckMode::Exhaustive,
            Field::Rational,
            3,
            &[&s],
            &[&s],
            no_filter,
            |o| o[0].clone(),
            |p, i| {
                let hit = p[2].is_one() && i[0][1].is_one();
                Vector::from_i64(Field::Rational, &[hit as i64])
            },
        );
        assert_eq!(v.witness.unwrap().labels, vec!["v2", "v1"]);
    }

    #[test]
    fn empty_slot_holds_vacuously() {
        let empty = Slot::new(Vec::new(), Vec::new());
        let v = scan_simple(CheckMode::Exhaustive, Field::Rational, 2, &[&empty], no_filter, |_| {
            Vector::from_i64(Field::Rational, &[1])
        });
        assert!(v.is_holds());
    }

    #[test]
    fn probabilistic_mode_is_reproducible() {
        let f = Field::default_prime();
        let s = Slot::standard(f, &["a".into(), "b".into()]);
        let mode = CheckMode::Probabilistic { trials: 10, seed: 7 };
        let run = || scan_simple(mode, f, 2, &[&s], no_filter, |a| a[0].clone());
        let (x, y) = (run(), run());
        assert_eq!(x, y);
        assert_eq!(x.witness.unwrap().trial, Some(0));
        assert_eq!(x.mode, ModeRecord::Probabilistic { trials: 10, prime: Some(DEFAULT_PRIME_FOR_TEST), seed: 7 });
    }

    const DEFAULT_PRIME_FOR_TEST: u32 = crate::linalg::DEFAULT_PRIME;
}
