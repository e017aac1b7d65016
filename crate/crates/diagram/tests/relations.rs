use tlwb_diagram::{concat, reduce, simple_diagram, Diagram, RuleSet};
use tlwb_ring::DeltaPoly;

/// Bonds of the affine D graph on generators `0..=n+2`, written out
/// independently of the coxeter crate.
fn bonded(n: usize, i: usize, j: usize) -> bool {
    let (a, b) = (i.min(j), i.max(j));
    matches!((a, b), (0, 2) | (1, 2))
        || (b == a + 1 && a >= 2 && b <= n)
        || (a == n && (b == n + 1 || b == n + 2))
}

fn product(n: usize, word: &[usize]) -> (DeltaPoly, Diagram) {
    let rules = RuleSet::default();
    let mut acc = (DeltaPoly::one(), Diagram::identity(n + 2));
    for &i in word {
        let (c, d) = reduce(
            concat(acc.1.raw(), simple_diagram(n, i).unwrap().raw()).unwrap(),
            &rules,
        )
        .unwrap();
        acc = (&acc.0 * &c, d);
    }
    acc
}

#[test]
fn defining_relations_hold() {
    for n in 2..=5 {
        for i in 0..=n + 2 {
            let di = simple_diagram(n, i).unwrap();
            assert_eq!(
                product(n, &[i, i]),
                (DeltaPoly::delta(), di.clone()),
                "n={n} square {i}"
            );
            for j in 0..=n + 2 {
                if i == j {
                    continue;
                }
                if bonded(n, i, j) {
                    assert_eq!(
                        product(n, &[i, j, i]),
                        (DeltaPoly::one(), di.clone()),
                        "n={n} braid {i} {j}"
                    );
                } else {
                    assert_eq!(
                        product(n, &[i, j]),
                        product(n, &[j, i]),
                        "n={n} commute {i} {j}"
                    );
                }
            }
        }
    }
}

#[test]
fn generators_are_distinct() {
    for n in 2..=5 {
        let ds: Vec<Diagram> = (0..=n + 2).map(|i| simple_diagram(n, i).unwrap()).collect();
        for i in 0..ds.len() {
            for j in i + 1..ds.len() {
                assert_ne!(ds[i], ds[j]);
            }
        }
    }
}

#[test]
fn bond_oracle_shape() {
    // n = 2: the central node 2 meets all four others.
    let n = 2;
    let degree = |i: usize| (0..=n + 2).filter(|&j| j != i && bonded(n, i, j)).count();
    assert_eq!((0..=4).map(degree).collect::<Vec<_>>(), vec![1, 1, 4, 1, 1]);
}
