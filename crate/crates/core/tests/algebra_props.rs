use proptest::prelude::*;
use triality_core::algebra::{catalog, tensor_product, Algebra, CatalogParams};
use triality_core::check::CheckMode;
use triality_core::forms::{composition_check, derive_quadratic_form};
use triality_core::linalg::{Field, Vector};

fn cat(name: &str) -> Algebra {
    catalog(name, &CatalogParams::new()).unwrap().algebra
}

fn vec8() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, 8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_bilinear(x in vec8(), y in vec8(), z in vec8(), k in -4i64..=4) {
        let o = cat("octonion");
        let f = o.field();
        let (x, y, z) = (Vector::from_i64(f, &x), Vector::from_i64(f, &y), Vector::from_i64(f, &z));
        let kk = f.int(k);
        prop_assert_eq!(o.mul(&(&x + &y.scale(&kk)), &z), o.mul(&x, &z) + o.mul(&y, &z).scale(&kk));
        prop_assert_eq!(o.mul(&z, &(&x + &y.scale(&kk))), o.mul(&z, &x) + o.mul(&z, &y).scale(&kk));
    }

    #[test]
    fn involution_is_an_anti_automorphism_of_order_two(x in vec8(), y in vec8()) {
        let o = cat("octonion");
        let f = o.field();
        let (x, y) = (Vector::from_i64(f, &x), Vector::from_i64(f, &y));
        prop_assert_eq!(o.conj(&o.conj(&x)), x.clone());
        prop_assert_eq!(o.conj(&o.mul(&x, &y)), o.mul(&o.conj(&y), &o.conj(&x)));
    }

    #[test]
    fn symmetric_and_skew_parts_reconstruct(x in vec8()) {
        let o = cat("octonion");
        let f = o.field();
        let x = Vector::from_i64(f, &x);
        let half = f.ratio(1, 2).unwrap();
        let s = (&x + &o.conj(&x)).scale(&half);
        let h = (&x - &o.conj(&x)).scale(&half);
        prop_assert_eq!(&s + &h, x);
        prop_assert_eq!(o.conj(&s), s.clone());
        prop_assert_eq!(o.conj(&h), -&h);
        let split = o.sh_split();
        prop_assert_eq!(split.s.len() + split.h.len(), o.dim());
    }

    #[test]
    fn octonion_norm_is_multiplicative(x in vec8(), y in vec8()) {
        let o = cat("octonion");
        let form = derive_quadratic_form(&o).unwrap();
        let f = o.field();
        let (x, y) = (Vector::from_i64(f, &x), Vector::from_i64(f, &y));
        let xy = o.mul(&x, &y);
        prop_assert_eq!(form.eval(&xy, &xy), &form.eval(&x, &x) * &form.eval(&y, &y));
        // Quadratic law: x x̄ = <x|x> e.
        prop_assert_eq!(o.mul(&x, &o.conj(&x)), o.unit().scale(&form.eval(&x, &x)));
    }

    #[test]
    fn reduction_mod_p_is_a_homomorphism(x in vec8(), y in vec8()) {
        let o = cat("octonion");
        let p = Field::default_prime();
        let op = o.convert(p).unwrap();
        let (xr, yr) = (Vector::from_i64(o.field(), &x), Vector::from_i64(o.field(), &y));
        let (xp, yp) = (Vector::from_i64(p, &x), Vector::from_i64(p, &y));
        prop_assert_eq!(o.mul(&xr, &yr).convert(p).unwrap(), op.mul(&xp, &yp));
    }
}

#[test]
fn tensor_product_of_quaternions_validates() {
    let q = cat("quaternion");
    let t = tensor_product(&q, &q).unwrap();
    assert_eq!(t.dim(), 16);
    assert!(t.validate().no_failures());
    assert_eq!(t.unit(), &Vector::basis(t.field(), 16, 0));
}

#[test]
fn composition_holds_for_octonion_form() {
    let o = cat("octonion");
    let form = derive_quadratic_form(&o).unwrap();
    assert!(composition_check(&o, &form, CheckMode::Exhaustive).unwrap().is_holds());
}
