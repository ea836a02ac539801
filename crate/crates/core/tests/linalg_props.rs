use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use triality_core::linalg::{kernel, rank, solve_in_span, EchelonBasis, Field, Matrix, Rational, Scalar, Vector};

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::default_prime()), Just(Field::prime(7).unwrap())]
}

fn matrix(f: Field, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
    let rows: Vec<&[i64]> = entries.chunks(cols).take(rows).collect();
    Matrix::from_i64(f, &rows)
}

prop_compose! {
    fn small_matrix()(rows in 1usize..6, cols in 1usize..6)
        (entries in prop::collection::vec(-3i64..=3, rows * cols), rows in Just(rows), cols in Just(cols)) -> (usize, usize, Vec<i64>) {
        (rows, cols, entries)
    }
}

fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d)).unwrap()
}

proptest! {
    #[test]
    fn rank_equals_rank_of_transpose(f in fields(), (r, c, e) in small_matrix()) {
        let m = matrix(f, r, c, &e);
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn kernel_is_annihilated_and_complements_rank(f in fields(), (r, c, e) in small_matrix()) {
        let m = matrix(f, r, c, &e);
        let k = kernel(&m);
        prop_assert_eq!(k.len() + rank(&m), c);
        for v in &k {
            prop_assert!(m.apply(v).is_zero());
        }
    }

    #[test]
    fn members_of_a_span_are_solved_exactly(
        f in fields(),
        (r, c, e) in small_matrix(),
        w in prop::collection::vec(-4i64..=4, 6),
    ) {
        let m = matrix(f, r, c, &e);
        let basis: Vec<Vector> = (0..r).map(|i| m.row(i)).collect();
        let mut v = Vector::zeros(f, c);
        for (b, k) in basis.iter().zip(&w) {
            v.axpy(&f.int(*k), b);
        }
        let coords = solve_in_span(&basis, &v).unwrap().expect("member of the span");
        let mut back = Vector::zeros(f, c);
        for (b, k) in basis.iter().zip(&coords) {
            back.axpy(k, b);
        }
        prop_assert_eq!(back, v.clone());
        let mut ech = EchelonBasis::new(f, c);
        for b in &basis {
            ech.insert(b).unwrap();
        }
        prop_assert_eq!(ech.rank(), rank(&m));
        prop_assert!(ech.contains(&v).unwrap());
        prop_assert!(ech.residual(&v).unwrap().is_zero());
    }

    #[test]
    fn rational_arithmetic_is_exact(a in -1_000_000i64..1_000_000, b in 1i64..1_000_000, c in -1_000_000i64..1_000_000, d in 1i64..1_000_000) {
        let (x, y) = (rational(a, b), rational(c, d));
        let oracle = |q: &Rational| q.to_big();
        let (bx, by) = (BigRational::new(a.into(), b.into()), BigRational::new(c.into(), d.into()));
        prop_assert_eq!(oracle(&(&x + &y)), &bx + &by);
        prop_assert_eq!(oracle(&(&x * &y)), &bx * &by);
        prop_assert_eq!(oracle(&(&x - &y)), &bx - &by);
        // Repeated squaring overflows i64 and must stay exact.
        let mut p = x.clone();
        let mut bp = bx.clone();
        for _ in 0..4 {
            p = &p * &p;
            bp = &bp * &bp;
        }
        prop_assert_eq!(oracle(&p), bp);
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.recip().unwrap(), Rational::one());
        }
        prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
    }

    #[test]
    fn prime_field_inverses(v in 1i64..2_147_483_629) {
        let f = Field::default_prime();
        let x = f.int(v);
        prop_assert!((&x * &x.inv().unwrap()).is_one());
        let s: Scalar = f.parse_scalar(&x.to_string()).unwrap();
        prop_assert_eq!(s, x);
    }

    #[test]
    fn matrix_product_is_associative(f in fields(), e in prop::collection::vec(-3i64..=3, 27)) {
        let a = matrix(f, 3, 3, &e[0..9]);
        let b = matrix(f, 3, 3, &e[9..18]);
        let c = matrix(f, 3, 3, &e[18..27]);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        let v = Vector::from_i64(f, &e[0..3]);
        prop_assert_eq!((&a * &b).apply(&v), a.apply(&b.apply(&v)));
    }
}
