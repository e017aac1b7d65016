use std::collections::BTreeSet;

use proptest::prelude::*;
use tlwb_diagram::{
    canonicalize, concat, cyclic_min, dihedral, is_admissible, reduce, reduce_with, simple_diagram,
    Diagram, RuleSet,
};
use tlwb_ring::DeltaPoly;

fn word(n: usize, max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..=n + 2, 0..=max)
}

/// The unreduced stack of simple diagrams for a word.
fn stack(n: usize, w: &[usize]) -> tlwb_diagram::RawDiagram {
    w.iter()
        .fold(Diagram::identity(n + 2).into_raw(), |acc, &i| {
            concat(&acc, simple_diagram(n, i).unwrap().raw()).unwrap()
        })
}

fn reduced(n: usize, w: &[usize]) -> (DeltaPoly, Diagram) {
    reduce(stack(n, w), &RuleSet::default()).unwrap()
}

fn mul(a: &(DeltaPoly, Diagram), b: &(DeltaPoly, Diagram)) -> (DeltaPoly, Diagram) {
    let (c, d) = reduce(concat(a.1.raw(), b.1.raw()).unwrap(), &RuleSet::default()).unwrap();
    (&(&a.0 * &b.0) * &c, d)
}

proptest! {
    #[test]
    fn rewriting_is_confluent(n in 2usize..=3, w in word(3, 7), seed in any::<u64>()) {
        let w: Vec<usize> = w.into_iter().map(|i| i.min(n + 2)).collect();
        let mut state = seed;
        let mut choose = |k: usize| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as usize % k
        };
        let free = reduce_with(stack(n, &w), &RuleSet::default(), &mut choose).unwrap();
        prop_assert_eq!(free, reduced(n, &w));
    }

    #[test]
    fn products_are_associative(n in 2usize..=3, a in word(3, 4), b in word(3, 4), c in word(3, 4)) {
        let [a, b, c] = [a, b, c].map(|w| reduced(n, &w.into_iter().map(|i| i.min(n + 2)).collect::<Vec<_>>()));
        prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
    }

    #[test]
    fn reduced_products_are_admissible_and_canonical(w in word(2, 8)) {
        let (c, d) = reduced(2, &w);
        prop_assert!(c.as_delta_power().is_some());
        prop_assert!(is_admissible(&d));
        prop_assert_eq!(canonicalize(d.raw().clone()).unwrap(), d.clone());
        prop_assert_eq!(d.to_string().parse::<Diagram>().unwrap(), d);
    }

    #[test]
    fn cyclic_min_is_the_least_dihedral_image(w in prop::collection::vec(0u8..3, 0..8)) {
        let mut rev = w.clone();
        rev.reverse();
        let mut images = Vec::new();
        for v in [&w, &rev] {
            for r in 0..v.len().max(1) {
                let r = r.min(v.len());
                images.push([&v[r..], &v[..r]].concat());
            }
        }
        let expect = images.iter().min().unwrap().clone();
        prop_assert_eq!(cyclic_min(&w), expect);
        let got: BTreeSet<Vec<u8>> = dihedral(&w).into_iter().collect();
        prop_assert_eq!(got, images.into_iter().collect::<BTreeSet<_>>());
    }
}
