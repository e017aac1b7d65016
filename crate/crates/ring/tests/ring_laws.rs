use proptest::prelude::*;
use tlwb_ring::DeltaPoly;

fn poly() -> impl Strategy<Value = DeltaPoly> {
    prop::collection::vec(-50i64..50, 0..6)
        .prop_map(|cs| DeltaPoly::from_coeffs(cs.into_iter().map(Into::into).collect()))
}

proptest! {
    #[test]
    fn addition_is_commutative_and_associative(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_is_commutative_and_associative(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn distributivity(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn neutral_and_absorbing(a in poly()) {
        prop_assert_eq!(&a + &DeltaPoly::zero(), a.clone());
        prop_assert_eq!(&a * &DeltaPoly::one(), a.clone());
        prop_assert!((&a * &DeltaPoly::zero()).is_zero());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn canonical_representation(a in poly()) {
        if let Some(last) = a.coeffs().last() {
            prop_assert!(*last != 0.into());
        }
    }

    #[test]
    fn text_round_trip(a in poly()) {
        let text = a.to_string();
        let back: DeltaPoly = text.parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn parser_never_panics(s in "[-+0-9d^* ]{0,16}") {
        let _ = s.parse::<DeltaPoly>();
    }
}
