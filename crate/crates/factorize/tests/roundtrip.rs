use proptest::prelude::*;
use tlwb_coxeter::CoxeterGraph;
use tlwb_diagram::{concat, reduce, simple_diagram, Diagram, RuleSet};
use tlwb_factorize::{find_simple_edges, indices, FactorizeError, Factorizer, Limits};
use tlwb_fullcomm::{canonical_form, enumerate_fc, Word};

fn d_of(n: usize, w: &[usize]) -> Diagram {
    let rules = RuleSet::default();
    let mut acc = Diagram::identity(n + 2);
    for &i in w {
        let (c, d) = reduce(
            concat(acc.raw(), simple_diagram(n, i).unwrap().raw()).unwrap(),
            &rules,
        )
        .unwrap();
        assert!(c.is_one(), "{w:?}");
        acc = d;
    }
    acc
}

fn fc_words(n: usize, max_len: usize) -> Vec<Word> {
    enumerate_fc(&CoxeterGraph::affine_d(n).unwrap(), max_len)
        .unwrap()
        .into_iter()
        .flatten()
        .collect()
}

#[test]
fn round_trip_n2_up_to_length_6() {
    let g = CoxeterGraph::affine_d(2).unwrap();
    let mut f = Factorizer::new(2, RuleSet::default(), Limits::default()).unwrap();
    for w in fc_words(2, 6) {
        let d = d_of(2, &indices(&w));
        let v = f.factorize(&d).unwrap();
        assert_eq!(
            canonical_form(&v, &g).unwrap(),
            canonical_form(&w, &g).unwrap(),
            "{w}"
        );
        assert_eq!(f.length(&d).unwrap(), w.len(), "{w}");
    }
}

#[test]
fn every_peel_recomposes_and_descends() {
    let rules = RuleSet::default();
    let mut f = Factorizer::new(2, rules.clone(), Limits::default()).unwrap();
    for w in fc_words(2, 5).into_iter().filter(|w| !w.is_empty()) {
        let d = d_of(2, &indices(&w));
        let (i, rest) = f.peel(&d).unwrap();
        assert!(find_simple_edges(&d).iter().any(|e| e.generator == i));
        let (c, again) = reduce(
            concat(simple_diagram(2, i).unwrap().raw(), rest.raw()).unwrap(),
            &rules,
        )
        .unwrap();
        assert!(c.is_one());
        assert_eq!(again, d);
        assert_eq!(f.length(&rest).unwrap() + 1, w.len());
    }
}

#[test]
fn check_cap_is_reported() {
    let limits = Limits {
        max_len: 64,
        max_checks: 3,
    };
    let mut f = Factorizer::new(2, RuleSet::default(), limits).unwrap();
    let d = d_of(2, &[0, 2, 1, 3, 2, 0]);
    assert!(matches!(
        f.factorize(&d),
        Err(FactorizeError::ResourceCap { .. })
    ));
}

#[test]
fn length_cap_is_reported() {
    let limits = Limits {
        max_len: 2,
        max_checks: 1_000_000,
    };
    let mut f = Factorizer::new(2, RuleSet::default(), limits).unwrap();
    let d = d_of(2, &[0, 2, 1]);
    assert!(matches!(
        f.length(&d),
        Err(FactorizeError::NoFactorization { max_len: 2, .. })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn round_trip_n3(idx in 0usize..10_000) {
        static WORDS: std::sync::OnceLock<Vec<Word>> = std::sync::OnceLock::new();
        let words = WORDS.get_or_init(|| fc_words(3, 7));
        let w = &words[idx % words.len()];
        let g = CoxeterGraph::affine_d(3).unwrap();
        let v = tlwb_factorize::factorize(&d_of(3, &indices(w))).unwrap();
        prop_assert_eq!(canonical_form(&v, &g).unwrap(), canonical_form(w, &g).unwrap());
    }
}
