use rand::Rng;

use super::{Algebra, AlgebraError};
use crate::linalg::{Field, Matrix, Vector};

/// Shape of a randomly generated algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RandomKind {
    /// Commutative with the identity involution.
    Commutative,
    /// Diagonal involution with at least one skew basis element; products respect `conj(xy) = ȳx̄`.
    Involutive,
}

/// Random unital involutive algebra on `e, v1, ..` with non-unit structure constants in `{-2..2}`.
///
/// The unit row and column are forced. In the involutive case the last `s` basis elements are
/// skew for a random `s >= 1`; `e_j e_i` is derived from `e_i e_j` so the involution reverses
/// products, and squares are projected onto the symmetric part.
pub fn random_algebra<R: Rng + ?Sized>(
    name: &str,
    kind: RandomKind,
    field: Field,
    dim: usize,
    rng: &mut R,
) -> Result<Algebra, AlgebraError> {
    let min = if kind == RandomKind::Involutive { 2 } else { 1 };
    if dim < min {
        return Err(AlgebraError::RandomDimension { min, dim });
    }
    let skew = match kind {
        RandomKind::Commutative => 0,
        RandomKind::Involutive => rng.gen_range(1..dim),
    };
    let sign = |i: usize| if i >= dim - skew { -1i64 } else { 1 };
    let mut inv = Matrix::zeros(field, dim, dim);
    for i in 0..dim {
        inv[(i, i)] = field.int(sign(i));
    }
    let draw = |rng: &mut R| -> Vector {
        let xs: Vec<i64> = (0..dim).map(|_| rng.gen_range(-2..=2)).collect();
        Vector::from_i64(field, &xs)
    };
    let mut table = vec![Vector::zeros(field, dim); dim * dim];
    for i in 0..dim {
        table[i] = Vector::basis(field, dim, i);
        table[i * dim] = Vector::basis(field, dim, i);
    }
    for i in 1..dim {
        for j in i..dim {
            let mut v = draw(rng);
            if i == j {
                for k in 0..dim {
                    if sign(k) < 0 {
                        v[k] = field.zero();
                    }
                }
                table[i * dim + i] = v;
                continue;
            }
            let w = inv.apply(&v).scale(&field.int(sign(i) * sign(j)));
            table[i * dim + j] = v;
            table[j * dim + i] = w;
        }
    }
    let mut names = vec!["e".to_string()];
    names.extend((1..dim).map(|i| format!("v{i}")));
    Algebra::from_table(name, field, names, &table, Vector::basis(field, dim, 0), inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_algebras_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for k in 0..20 {
            for (kind, dim) in [(RandomKind::Commutative, 3), (RandomKind::Involutive, 4)] {
                let a = random_algebra("r", kind, Field::Rational, dim, &mut rng).unwrap();
                assert!(a.validate().no_failures(), "sample {k}");
                if kind == RandomKind::Commutative {
                    assert!(a.commutativity_check().is_holds());
                } else {
                    assert!(!a.sh_split().h.is_empty());
                }
            }
        }
    }

    #[test]
    fn dimension_guard() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(random_algebra("r", RandomKind::Involutive, Field::Rational, 1, &mut rng).is_err());
    }
}
