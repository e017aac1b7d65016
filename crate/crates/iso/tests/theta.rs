use std::collections::BTreeSet;

use proptest::prelude::*;
use tlwb_coxeter::CoxeterGraph;
use tlwb_diagram::{Diagram, RuleSet};
use tlwb_fullcomm::{enumerate_fc, Word};
use tlwb_iso::{type_a_word, Theta};
use tlwb_ring::DeltaPoly;
use tlwb_tl::TlElement;

fn words(n: usize, len: usize) -> Vec<Word> {
    enumerate_fc(&CoxeterGraph::affine_d(n).unwrap(), len)
        .unwrap()
        .into_iter()
        .flatten()
        .collect()
}

fn element(ws: &[Word], picks: &[(usize, i64, usize)]) -> TlElement {
    let mut a = TlElement::zero();
    for &(i, c, p) in picks {
        let coeff = &DeltaPoly::from_int(c) * &DeltaPoly::delta_pow(p);
        a.add_term(ws[i % ws.len()].clone(), &coeff);
    }
    a
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn theta_is_multiplicative(
        n in 2usize..=3,
        left in prop::collection::vec((0usize..1000, -3i64..=3, 0usize..3), 0..4),
        right in prop::collection::vec((0usize..1000, -3i64..=3, 0usize..3), 0..4),
    ) {
        let ws = words(n, 4);
        let theta = Theta::new(n, RuleSet::default()).unwrap();
        let (a, b) = (element(&ws, &left), element(&ws, &right));
        let ab = a.mul(&b, theta.graph()).unwrap();
        let lhs = theta.element(&ab).unwrap();
        let rhs = theta.element(&a).unwrap().mul(&theta.element(&b).unwrap(), theta.rules()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn theta_is_additive(
        left in prop::collection::vec((0usize..1000, -3i64..=3, 0usize..3), 0..5),
        right in prop::collection::vec((0usize..1000, -3i64..=3, 0usize..3), 0..5),
    ) {
        let ws = words(2, 5);
        let theta = Theta::new(2, RuleSet::default()).unwrap();
        let (a, b) = (element(&ws, &left), element(&ws, &right));
        let sum = theta.element(&a).unwrap().add(&theta.element(&b).unwrap());
        prop_assert_eq!(theta.element(&a.add(&b)).unwrap(), sum);
    }
}

/// Non-crossing perfect matchings of `2k` points on a circle.
fn matchings(points: usize) -> usize {
    if points == 0 {
        return 1;
    }
    (1..points)
        .step_by(2)
        .map(|j| matchings(j - 1) * matchings(points - j - 1))
        .sum()
}

#[test]
fn type_a_is_a_bijection_onto_loop_free_diagrams() {
    for (k, catalan) in [(3, 5), (4, 14), (5, 42)] {
        assert_eq!(matchings(2 * k), catalan);
        let g = CoxeterGraph::path(k - 1).unwrap();
        let fc: Vec<Word> = enumerate_fc(&g, 64)
            .unwrap()
            .into_iter()
            .flatten()
            .collect();
        assert_eq!(fc.len(), catalan, "k={k}");
        let mut seen = BTreeSet::<Diagram>::new();
        for w in &fc {
            let (c, d) = type_a_word(w, k).unwrap();
            assert!(c.is_one());
            assert!(d.loops().is_empty() && d.raw().decorations().next().is_none());
            seen.insert(d);
        }
        assert_eq!(seen.len(), catalan, "k={k}");
    }
}
