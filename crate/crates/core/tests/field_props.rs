//! Field axioms for every supported field, checked on random elements.

use lpkit::{FieldDescriptor, FieldElement};
use proptest::prelude::*;

fn fields() -> impl Strategy<Value = FieldDescriptor> {
    prop_oneof![
        Just(FieldDescriptor::Rational),
        Just(FieldDescriptor::Prime(2)),
        Just(FieldDescriptor::Prime(5)),
        Just(FieldDescriptor::Prime(13)),
        Just(FieldDescriptor::Prime(4_294_967_291)),
        Just(FieldDescriptor::Binary(2)),
        Just(FieldDescriptor::Binary(3)),
    ]
}

fn element(field: FieldDescriptor) -> BoxedStrategy<FieldElement> {
    match field {
        FieldDescriptor::Rational => {
            (-50i64..50, 1i64..20).prop_map(move |(n, d)| FieldElement::from_ratio(field, n, d).unwrap()).boxed()
        }
        FieldDescriptor::Prime(p) => (0..p).prop_map(move |r| FieldElement::from_int(field, r as i64)).boxed(),
        FieldDescriptor::Binary(k) => {
            (0u8..(1 << k)).prop_map(move |bits| FieldElement::from_poly_bits(field, bits).unwrap()).boxed()
        }
    }
}

fn triple() -> impl Strategy<Value = (FieldElement, FieldElement, FieldElement)> {
    fields().prop_flat_map(|f| (element(f), element(f), element(f)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        let field = a.descriptor();
        prop_assert_eq!(&a + field.zero(), a.clone());
        prop_assert_eq!(&a * field.one(), a.clone());
        prop_assert!((&a + -&a).is_zero());
        prop_assert_eq!(&a - &b, &a + -&b);
    }

    #[test]
    fn inverses((a, b, _c) in triple()) {
        if a.is_zero() {
            prop_assert!(a.inv().is_err());
            prop_assert!(b.checked_div(&a).is_err());
        } else {
            prop_assert!((&a * a.inv().unwrap()).is_one());
            prop_assert_eq!(b.checked_div(&a).unwrap() * &a, b.clone());
            prop_assert_eq!(a.powi(-3).unwrap() * a.pow(3), a.descriptor().one());
        }
    }

    #[test]
    fn text_round_trip((a, _b, _c) in triple()) {
        let field = a.descriptor();
        prop_assert_eq!(field.parse(&a.to_string()).unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(json, format!("\"{a}\""));
    }

    #[test]
    fn characteristic_annihilates((a, _b, _c) in triple()) {
        let field = a.descriptor();
        let p = field.characteristic();
        if p != 0 {
            prop_assert!((field.int(p as i64) * &a).is_zero());
        }
    }

    #[test]
    fn finite_field_frobenius_is_additive((a, b, _c) in triple()) {
        let field = a.descriptor();
        let p = field.characteristic();
        if (2..=13).contains(&p) {
            let p = p as u32;
            prop_assert_eq!((&a + &b).pow(p), a.pow(p) + b.pow(p));
        }
    }
}

#[test]
fn finite_fields_have_units_of_the_right_order() {
    for field in [FieldDescriptor::Prime(7), FieldDescriptor::Binary(2), FieldDescriptor::Binary(3)] {
        let n = field.order().unwrap();
        for x in field.elements().unwrap().into_iter().filter(|x| !x.is_zero()) {
            assert!(x.pow((n - 1) as u32).is_one(), "{x} in {field}");
        }
    }
}
