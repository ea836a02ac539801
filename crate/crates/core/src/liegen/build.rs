use super::bracket::BracketAlgebra;
use super::{basis_triple, t_space, LieError, OperatorTriple, TSpace};
use crate::check::{scan_simple, CheckMode, ModeRecord, Slot, Verdict};
use crate::linalg::{EchelonBasis, Field, Scalar, Vector};
use crate::triality::{is_structurable, TrialityOps};

/// Largest Lie algebra dimension checked on every ordered basis triple by default.
pub const JACOBI_EXHAUSTIVE_LIMIT: usize = 100;
/// Random basis triples checked above [`JACOBI_EXHAUSTIVE_LIMIT`].
pub const JACOBI_SAMPLES: usize = 2000;

/// `L = ρ_0(A) ⊕ ρ_1(A) ⊕ ρ_2(A) ⊕ T(A,A)` with its bracket table.
///
/// Basis order: `ρ_j(e_i)` at index `j·n + i`, then the echelonized triples at `3n + k`.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    table: BracketAlgebra,
    n: usize,
    t_space: TSpace,
    gamma: [Scalar; 3],
    source: String,
    certified: ModeRecord,
    /// Row-reduced spans of `T_{3-j}(A,A)` in triple coordinates.
    graded: [Vec<Vector>; 3],
}

impl LieAlgebra {
    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    /// Dimension of the algebra `A` the construction started from.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t_dim(&self) -> usize {
        self.t_space.dim()
    }

    pub fn t_space(&self) -> &TSpace {
        &self.t_space
    }

    pub fn gamma(&self) -> &[Scalar; 3] {
        &self.gamma
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// How structurability of the source was certified.
    pub fn certified(&self) -> &ModeRecord {
        &self.certified
    }

    pub fn field(&self) -> Field {
        self.table.field()
    }

    pub fn table(&self) -> &BracketAlgebra {
        &self.table
    }

    pub fn rho_index(&self, j: usize, i: usize) -> usize {
        (j % 3) * self.n + i
    }

    pub fn t_index(&self, k: usize) -> usize {
        3 * self.n + k
    }

    /// Exhaustive up to [`JACOBI_EXHAUSTIVE_LIMIT`], otherwise [`JACOBI_SAMPLES`] random basis triples.
    pub fn default_jacobi_mode(&self) -> CheckMode {
        if self.dim() <= JACOBI_EXHAUSTIVE_LIMIT {
            CheckMode::Exhaustive
        } else {
            CheckMode::Probabilistic { trials: JACOBI_SAMPLES, seed: 0 }
        }
    }

    pub fn jacobi_check(&self, mode: CheckMode) -> Verdict {
        self.table.jacobi_check(mode)
    }
}

fn sparse_coords(coords: &[Scalar], offset: usize) -> Vec<(usize, Scalar)> {
    coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (offset + k, c.clone())).collect()
}

fn negate(entries: &[(usize, Scalar)]) -> Vec<(usize, Scalar)> {
    entries.iter().map(|(k, c)| (*k, -c)).collect()
}

/// Assembles `L` from a structurable algebra.
///
/// Brackets: `[ρ_i(a), ρ_i(b)] = γ_{i+1}γ_{i+2}⁻¹ T_{3-i}(a,b)`,
/// `[ρ_i(a), ρ_{i+1}(b)] = -γ_{i+1}γ_i⁻¹ ρ_{i+2}((ab)‾)`, `[T, ρ_j(c)] = ρ_j(q_j c)` for
/// `T = (q_0, q_1, q_2)`, and componentwise commutators between triples.
/// Structurability is checked first with `mode`; a failure refuses the build.
pub fn build_lie(ops: &TrialityOps, gamma: [Scalar; 3], mode: CheckMode) -> Result<LieAlgebra, LieError> {
    let alg = ops.algebra();
    let f = alg.field();
    let gamma = gamma.map(|g| g.convert(f)).into_iter().collect::<Result<Vec<_>, _>>()?;
    let gamma: [Scalar; 3] = gamma.try_into().expect("three gammas");
    if let Some(i) = gamma.iter().position(Scalar::is_zero) {
        return Err(LieError::ZeroGamma(i));
    }
    let verdict = is_structurable(ops, mode);
    if !verdict.is_holds() {
        return Err(LieError::NotStructurable(Box::new(verdict)));
    }
    let n = alg.dim();
    let ts = t_space(ops)?;
    let dt = ts.dim();
    let m = 3 * n + dt;
    let ratio = |a: usize, b: usize| &gamma[a % 3] * &gamma[b % 3].inv().expect("nonzero gamma");
    let mut table: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); m * m];
    let mut set = |x: usize, y: usize, entries: Vec<(usize, Scalar)>| {
        table[y * m + x] = negate(&entries);
        table[x * m + y] = entries;
    };
    let coords_of = |t: &OperatorTriple, what: &dyn Fn() -> String| -> Result<Vec<Scalar>, LieError> {
        ts.coordinates(t)?.ok_or_else(|| LieError::NotInSpan(what()))
    };
    let names = alg.basis_names();

    // ρ_i with itself.
    let mut graded: [Vec<Vector>; 3] = Default::default();
    for i in 0..3 {
        let g = ratio(i + 1, i + 2);
        let mut span = EchelonBasis::new(f, dt);
        for a in 0..n {
            for b in a + 1..n {
                let t = basis_triple(ops, 3 - i, a, b);
                let c = coords_of(&t, &|| format!("T{}({}, {})", (3 - i) % 3, names[a], names[b]))?;
                span.insert(&Vector::new(f, c.clone())?)?;
                let scaled: Vec<Scalar> = c.iter().map(|x| &g * x).collect();
                set(i * n + a, i * n + b, sparse_coords(&scaled, 3 * n));
            }
        }
        graded[i] = span.into_rows();
    }
    // ρ_i with ρ_{i+1}.
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let g = -&ratio(j, i);
        for a in 0..n {
            for b in 0..n {
                let v = alg.conj(&alg.mul(&alg.basis_vector(a), &alg.basis_vector(b))).scale(&g);
                let entries = v.support().map(|(p, c)| (k * n + p, c.clone())).collect();
                set(i * n + a, j * n + b, entries);
            }
        }
    }
    // Triples with ρ_j.
    let triples: Vec<OperatorTriple> = (0..dt).map(|k| ts.triple(k)).collect();
    for (k, t) in triples.iter().enumerate() {
        for j in 0..3 {
            for i in 0..n {
                let v = t.component(j).column(i);
                let entries = v.support().map(|(p, c)| (j * n + p, c.clone())).collect();
                set(3 * n + k, j * n + i, entries);
            }
        }
    }
    // Triples with triples.
    for k in 0..dt {
        for l in k + 1..dt {
            let br = triples[k].bracket(&triples[l]);
            let c = coords_of(&br, &|| format!("[T{k}, T{l}]"))?;
            set(3 * n + k, 3 * n + l, sparse_coords(&c, 3 * n));
        }
    }

    let mut labels = Vec::with_capacity(m);
    for j in 0..3 {
        labels.extend(names.iter().map(|b| format!("rho{j}({b})")));
    }
    labels.extend((0..dt).map(|k| format!("T{k}")));
    Ok(LieAlgebra {
        table: BracketAlgebra::from_sparse(f, labels, table),
        n,
        t_space: ts,
        gamma,
        source: alg.name().to_string(),
        certified: verdict.mode,
        graded,
    })
}

/// Dimensions of `L` and its graded pieces `L_j = ρ_j(A) ⊕ T_{3-j}(A,A)` with closure,
/// Jacobi and Z₃-automorphism verdicts.
#[derive(Clone, Debug)]
pub struct GradedReport {
    pub dim_l: usize,
    pub dim_t: usize,
    pub dim_lj: [usize; 3],
    pub closure: [Verdict; 3],
    pub jacobi: Verdict,
    /// Skipped unless the three gammas are equal.
    pub z3: Verdict,
}

fn embed_t(lie: &LieAlgebra, v: &Vector) -> Vector {
    let mut out = Vector::zeros(lie.field(), lie.dim());
    for (k, c) in v.support() {
        out[lie.t_index(k)] = c.clone();
    }
    out
}

fn closure_check(lie: &LieAlgebra, j: usize) -> Result<(usize, Verdict), LieError> {
    let (f, m) = (lie.field(), lie.dim());
    let mut vectors: Vec<Vector> = (0..lie.n).map(|i| Vector::basis(f, m, lie.rho_index(j, i))).collect();
    vectors.extend(lie.graded[j].iter().map(|v| embed_t(lie, v)));
    let labels = (0..vectors.len()).map(|k| format!("L{j}[{k}]")).collect();
    let mut span = EchelonBasis::new(f, m);
    for v in &vectors {
        span.insert(v)?;
    }
    let slot = Slot::new(vectors, labels);
    let table = &lie.table;
    let v = scan_simple(CheckMode::Exhaustive, f, m, &[&slot, &slot], |i| i[0] < i[1], |x| {
        span.residual(&table.bracket(x[0], x[1])).expect("lengths agree")
    });
    Ok((slot.len(), v))
}

fn z3_check(lie: &LieAlgebra) -> Result<Verdict, LieError> {
    let (f, m, n) = (lie.field(), lie.dim(), lie.n);
    let mut images: Vec<Vector> = Vec::with_capacity(m);
    for j in 0..3 {
        for i in 0..n {
            images.push(Vector::basis(f, m, lie.rho_index(j + 1, i)));
        }
    }
    for k in 0..lie.t_dim() {
        let shifted = lie.t_space.triple(k).shift();
        let c = lie
            .t_space
            .coordinates(&shifted)?
            .ok_or_else(|| LieError::NotInSpan(format!("cyclic shift of T{k}")))?;
        images.push(embed_t(lie, &Vector::new(f, c)?));
    }
    let sigma = |v: &Vector| {
        let mut out = Vector::zeros(f, m);
        for (k, c) in v.support() {
            out.axpy(c, &images[k]);
        }
        out
    };
    let table = &lie.table;
    let slot = table.basis_slot();
    Ok(scan_simple(CheckMode::Exhaustive, f, m, &[&slot, &slot], |i| i[0] < i[1], |x| {
        sigma(&table.bracket(x[0], x[1])) - table.bracket(&sigma(x[0]), &sigma(x[1]))
    }))
}

pub fn graded_report(lie: &LieAlgebra, jacobi_mode: CheckMode) -> Result<GradedReport, LieError> {
    let (d0, c0) = closure_check(lie, 0)?;
    let (d1, c1) = closure_check(lie, 1)?;
    let (d2, c2) = closure_check(lie, 2)?;
    let equal = lie.gamma[0] == lie.gamma[1] && lie.gamma[1] == lie.gamma[2];
    let z3 = if equal {
        z3_check(lie)?
    } else {
        Verdict::skipped(ModeRecord::Exhaustive, "gammas differ")
    };
    Ok(GradedReport {
        dim_l: lie.dim(),
        dim_t: lie.t_dim(),
        dim_lj: [d0, d1, d2],
        closure: [c0, c1, c2],
        jacobi: lie.jacobi_check(jacobi_mode),
        z3,
    })
}
