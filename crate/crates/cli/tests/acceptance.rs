//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Counts and relations are checked against oracles written here from
//! scratch: the bond structure of the affine D graph, brute-force
//! enumeration of words modulo commutation, and brute-force non-crossing
//! matchings.

use std::collections::{BTreeSet, VecDeque};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tlwb_coxeter::CoxeterGraph;
use tlwb_diagram::{concat, is_admissible, reduce, simple_diagram, tl_generator, Diagram, RuleSet};
use tlwb_factorize::{find_simple_edges, indices, Factorizer, Limits};
use tlwb_fullcomm::{canonical_form, enumerate_fc, is_fc_reduced, FcStatus, Word};
use tlwb_iso::{type_a_word, Theta};
use tlwb_ring::DeltaPoly;
use tlwb_tl::{mono_mul, reduce_word, TlElement};

type Outcome = Result<String, String>;

/// Name, check and time limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn bonded(n: usize, i: usize, j: usize) -> bool {
    let (a, b) = (i.min(j), i.max(j));
    matches!((a, b), (0, 2) | (1, 2))
        || (b == a + 1 && a >= 2 && b <= n)
        || (a == n && (b == n + 1 || b == n + 2))
}

fn word(letters: &[usize]) -> Word {
    Word::from_indices(&letters.iter().map(|&i| i as u8).collect::<Vec<_>>())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Words reachable by swapping adjacent distinct unbonded letters.
fn class_of(w: &[usize], n: usize) -> BTreeSet<Vec<usize>> {
    let mut seen = BTreeSet::from([w.to_vec()]);
    let mut queue = VecDeque::from([w.to_vec()]);
    while let Some(v) = queue.pop_front() {
        for p in 0..v.len().saturating_sub(1) {
            if v[p] != v[p + 1] && !bonded(n, v[p], v[p + 1]) {
                let mut u = v.clone();
                u.swap(p, p + 1);
                if seen.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
    }
    seen
}

/// FC classes by length: every word is tried, and a class counts when no
/// member has a factor `s s` or `s t s` with `s, t` bonded.
fn brute_force_fc(n: usize, max_len: usize) -> Vec<BTreeSet<Vec<usize>>> {
    let letters = n + 3;
    let mut out = Vec::new();
    for len in 0..=max_len {
        let mut reps = BTreeSet::new();
        for code in 0..letters.pow(len as u32) {
            let w: Vec<usize> = (0..len)
                .map(|p| code / letters.pow(p as u32) % letters)
                .collect();
            let class = class_of(&w, n);
            let bad = class.iter().any(|v| {
                v.windows(2).any(|p| p[0] == p[1])
                    || v.windows(3).any(|p| p[0] == p[2] && bonded(n, p[0], p[1]))
            });
            if !bad {
                reps.insert(class.into_iter().next().expect("nonempty"));
            }
        }
        out.push(reps);
    }
    out
}

fn d_of(theta: &Theta, w: &Word) -> (DeltaPoly, Diagram) {
    theta.word(w).expect("valid word")
}

fn fc_words(n: usize, max_len: usize) -> Vec<Word> {
    enumerate_fc(&CoxeterGraph::affine_d(n).unwrap(), max_len)
        .unwrap()
        .into_iter()
        .flatten()
        .collect()
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    for n in 2..=4 {
        let g = CoxeterGraph::affine_d(n).unwrap();
        for i in 0..=n + 2 {
            let (c, u) = reduce_word(&word(&[i, i]), &g).unwrap();
            ensure(c == DeltaPoly::delta() && u == word(&[i]), || {
                format!("n={n}: b_{i}^2 gives {c} * [{u}]")
            })?;
            for j in (0..=n + 2).filter(|&j| j != i) {
                checked += 1;
                if bonded(n, i, j) {
                    let r = reduce_word(&word(&[i, j, i]), &g).unwrap();
                    ensure(r == (DeltaPoly::one(), word(&[i])), || {
                        format!("n={n}: b_{i} b_{j} b_{i} gives {r:?}")
                    })?;
                } else {
                    let (a, b) = (
                        reduce_word(&word(&[i, j]), &g).unwrap(),
                        reduce_word(&word(&[j, i]), &g).unwrap(),
                    );
                    ensure(a == b && a.0.is_one() && a.1.len() == 2, || {
                        format!("n={n}: b_{i} b_{j} != b_{j} b_{i}")
                    })?;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for t in 0..200 {
        let n = 2 + t % 3;
        let g = CoxeterGraph::affine_d(n).unwrap();
        let mut mono = || {
            let len = rng.random_range(0..=5);
            let w: Vec<usize> = (0..len).map(|_| rng.random_range(0..n + 3)).collect();
            TlElement::from_word(&word(&w), &g).unwrap()
        };
        let (a, b, c) = (mono(), mono(), mono());
        let left = a.mul(&b, &g).unwrap().mul(&c, &g).unwrap();
        let right = a.mul(&b.mul(&c, &g).unwrap(), &g).unwrap();
        ensure(left == right, || {
            format!("associativity fails for {a}, {b}, {c}")
        })?;
    }
    Ok(format!(
        "{checked} generator pairs at n=2,3,4, 200 associative triples"
    ))
}

fn criterion_2() -> Outcome {
    let oracle: Vec<usize> = brute_force_fc(2, 6).iter().map(|s| s.len()).collect();
    let g = CoxeterGraph::affine_d(2).unwrap();
    let levels = enumerate_fc(&g, 6).unwrap();
    let counts: Vec<usize> = levels.iter().map(|l| l.len()).collect();
    ensure(counts == oracle, || {
        format!("enumerate_fc {counts:?} but brute force {oracle:?}")
    })?;
    ensure(counts[..3] == [1, 5, 14], || {
        format!("first counts {:?}", &counts[..3])
    })?;
    Ok(format!("counts by length {counts:?}"))
}

/// Non-crossing perfect matchings of `0..2k`, by trying every matching.
fn brute_force_matchings(points: usize) -> usize {
    fn go(free: &mut Vec<usize>, pairs: &mut Vec<(usize, usize)>) -> usize {
        let Some(&a) = free.first() else {
            let crossing = pairs
                .iter()
                .any(|&(a, b)| pairs.iter().any(|&(c, d)| a < c && c < b && b < d));
            return usize::from(!crossing);
        };
        let mut total = 0;
        for idx in 1..free.len() {
            let b = free[idx];
            let rest: Vec<usize> = free.iter().copied().filter(|&x| x != a && x != b).collect();
            let saved = std::mem::replace(free, rest);
            pairs.push((a, b));
            total += go(free, pairs);
            pairs.pop();
            *free = saved;
        }
        total
    }
    go(&mut (0..points).collect(), &mut Vec::new())
}

fn criterion_3() -> Outcome {
    let rules = RuleSet::default();
    let mut summary = Vec::new();
    for k in 3..=5 {
        let catalan = brute_force_matchings(2 * k);
        // Closure of the identity under the generators, scalars dropped.
        let mut seen = BTreeSet::from([Diagram::identity(k)]);
        let mut queue = VecDeque::from([Diagram::identity(k)]);
        while let Some(d) = queue.pop_front() {
            for i in 1..k {
                let (_, e) = reduce(
                    concat(d.raw(), tl_generator(k, i).unwrap().raw()).unwrap(),
                    &rules,
                )
                .unwrap();
                if seen.insert(e.clone()) {
                    queue.push_back(e);
                }
            }
        }
        ensure(seen.iter().all(|d| d.loops().is_empty()), || {
            format!("k={k}: a reduced diagram keeps a loop")
        })?;
        ensure(seen.len() == catalan, || {
            format!("k={k}: {} diagrams, {catalan} matchings", seen.len())
        })?;
        let g = CoxeterGraph::path(k - 1).unwrap();
        let fc: Vec<Word> = enumerate_fc(&g, 4 * k)
            .unwrap()
            .into_iter()
            .flatten()
            .collect();
        let images: BTreeSet<Diagram> = fc
            .iter()
            .map(|w| type_a_word(w, k).unwrap())
            .map(|(c, d)| {
                if c.is_one() {
                    Ok(d)
                } else {
                    Err(format!("k={k}: scalar {c}"))
                }
            })
            .collect::<Result<_, _>>()?;
        ensure(fc.len() == catalan && images.len() == catalan, || {
            format!(
                "k={k}: {} FC elements, {} images, {catalan} matchings",
                fc.len(),
                images.len()
            )
        })?;
        for v in &fc {
            for w in &fc {
                let (c, u) = mono_mul(v, w, &g).unwrap();
                let (p, du) = type_a_word(&u, k).unwrap();
                let (q, dd) = type_a_word(&v.concat(w), k).unwrap();
                ensure((&c * &p, du) == (q, dd), || {
                    format!("k={k}: products of {v} and {w} differ")
                })?;
            }
        }
        summary.push(format!("C_{k}={catalan}"));
    }
    Ok(summary.join(", "))
}

fn criterion_4() -> Outcome {
    let rules = RuleSet::default();
    let mut checked = 0;
    for n in 2..=4 {
        let theta = Theta::new(n, rules.clone()).unwrap();
        for i in 0..=n + 2 {
            let di = simple_diagram(n, i).unwrap();
            ensure(
                d_of(&theta, &word(&[i, i])) == (DeltaPoly::delta(), di.clone()),
                || format!("n={n}: D_{i}^2"),
            )?;
            for j in (0..=n + 2).filter(|&j| j != i) {
                checked += 1;
                if bonded(n, i, j) {
                    let r = d_of(&theta, &word(&[i, j, i]));
                    ensure(r == (DeltaPoly::one(), di.clone()), || {
                        format!("n={n}: D_{i} D_{j} D_{i} = {{{}}}", r.1)
                    })?;
                } else {
                    ensure(
                        d_of(&theta, &word(&[i, j])) == d_of(&theta, &word(&[j, i])),
                        || format!("n={n}: D_{i} and D_{j} do not commute"),
                    )?;
                }
            }
        }
    }
    Ok(format!("{checked} generator pairs at n=2,3,4"))
}

fn criterion_5() -> Outcome {
    let theta = Theta::new(2, RuleSet::default()).unwrap();
    let mut expressions = 0;
    for w in fc_words(2, 6) {
        let target = d_of(&theta, &w);
        ensure(target.0.is_one(), || format!("{w}: scalar {}", target.0))?;
        for v in class_of(&indices(&w), 2) {
            expressions += 1;
            ensure(d_of(&theta, &word(&v)) == target, || {
                format!("{w} and {v:?} give different diagrams")
            })?;
        }
    }
    Ok(format!("{expressions} reduced expressions"))
}

fn criterion_6() -> Outcome {
    let theta = Theta::new(2, RuleSet::default()).unwrap();
    let oracle: usize = brute_force_fc(2, 6).iter().map(|s| s.len()).sum();
    let words = fc_words(2, 6);
    let images: Vec<Diagram> = words.iter().map(|w| d_of(&theta, w).1).collect();
    let distinct: BTreeSet<&Diagram> = images.iter().collect();
    ensure(distinct.len() == oracle, || {
        format!("{} distinct diagrams, {oracle} FC elements", distinct.len())
    })?;
    ensure(images.iter().all(is_admissible), || {
        "a D_w is not admissible".into()
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..500 {
        let (a, b) = (
            rng.random_range(0..images.len()),
            rng.random_range(0..images.len()),
        );
        let (c, d) = reduce(
            concat(images[a].raw(), images[b].raw()).unwrap(),
            theta.rules(),
        )
        .unwrap();
        ensure(c.as_delta_power().is_some() && is_admissible(&d), || {
            format!("D_{} D_{} = {c} * {{{d}}}", words[a], words[b])
        })?;
    }
    Ok(format!(
        "{oracle} distinct admissible diagrams, 500 admissible products"
    ))
}

fn criterion_7() -> Outcome {
    for n in 2..=3 {
        let theta = Theta::new(n, RuleSet::default()).unwrap();
        let words = fc_words(n, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(7 + n as u64);
        for _ in 0..500 {
            let (v, w) = (
                &words[rng.random_range(0..words.len())],
                &words[rng.random_range(0..words.len())],
            );
            let (c, u) = mono_mul(v, w, theta.graph()).unwrap();
            let lhs = theta.element(&TlElement::monomial(u, c)).unwrap();
            let (a, b) = (
                TlElement::monomial(v.clone(), DeltaPoly::one()),
                TlElement::monomial(w.clone(), DeltaPoly::one()),
            );
            let rhs = theta
                .element(&a)
                .unwrap()
                .mul(&theta.element(&b).unwrap(), theta.rules())
                .unwrap();
            ensure(lhs == rhs, || {
                format!("n={n}: theta({v} * {w}) = {lhs} but product of images is {rhs}")
            })?;
        }
    }
    Ok("500 pairs at each of n=2,3".into())
}

fn criterion_8() -> Outcome {
    let rules = RuleSet::default();
    let g = CoxeterGraph::affine_d(2).unwrap();
    let theta = Theta::new(2, rules.clone()).unwrap();
    let mut f = Factorizer::new(2, rules.clone(), Limits::default()).unwrap();
    let mut steps = 0;
    let words = fc_words(2, 6);
    for w in &words {
        let d = d_of(&theta, w).1;
        let v = f.factorize(&d).map_err(|e| format!("{w}: {e}"))?;
        ensure(is_fc_reduced(&v, &g).unwrap() == FcStatus::Fc, || {
            format!("{w}: {v} is not FC reduced")
        })?;
        ensure(
            canonical_form(&v, &g).unwrap() == canonical_form(w, &g).unwrap(),
            || format!("{w} factorizes as {v}"),
        )?;
        ensure(
            v.len() == w.len() && f.length(&d).unwrap() == w.len(),
            || format!("{w}: length mismatch"),
        )?;
        let mut cur = d;
        for (i, next) in f.trace(&cur.clone()).unwrap() {
            steps += 1;
            ensure(
                find_simple_edges(&cur).iter().any(|e| e.generator == i),
                || format!("{w}: {i} is not a simple edge"),
            )?;
            let (c, back) = reduce(
                concat(simple_diagram(2, i).unwrap().raw(), next.raw()).unwrap(),
                &rules,
            )
            .unwrap();
            ensure(c.is_one() && back == cur, || {
                format!("{w}: peel {i} does not recompose")
            })?;
            let descent = f.length(&next).unwrap() + 1 == f.length(&cur).unwrap();
            ensure(descent, || format!("{w}: peel {i} does not descend"))?;
            cur = next;
        }
        ensure(cur.is_identity(), || {
            format!("{w}: trace does not end at the identity")
        })?;
    }
    Ok(format!("{} elements, {steps} peel steps", words.len()))
}

fn criterion_9() -> Outcome {
    let run = || {
        std::process::Command::new(env!("CARGO_BIN_EXE_tlwb"))
            .args([
                "verify",
                "--n",
                "2",
                "--max-len",
                "6",
                "--seed",
                "42",
                "--format",
                "json",
            ])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success() && b.status.success(), || {
        "verify did not pass".into()
    })?;
    ensure(a.stdout == b.stdout, || "reports differ".into())?;
    Ok(format!("two identical {}-byte reports", a.stdout.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("oracle relations and associativity", criterion_1, 60),
        ("FC counts against brute force", criterion_2, 120),
        ("type A Catalan counts and isomorphism", criterion_3, 120),
        ("diagram relations", criterion_4, 60),
        ("well-definedness on commutation classes", criterion_5, 300),
        ("injectivity and admissibility", criterion_6, 600),
        ("homomorphism on sampled products", criterion_7, 600),
        ("factorization round trip", criterion_8, 600),
        ("deterministic verify reports", criterion_9, 600),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(s) if took > Duration::from_secs(*limit) => {
                Err(format!("{s}; took longer than {limit}s"))
            }
            o => o,
        };
        match outcome {
            Ok(detail) => println!(
                "criterion {}: PASS {name} ({detail}) [{:.2}s]",
                i + 1,
                took.as_secs_f64()
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "criterion {}: FAIL {name}: {why} [{:.2}s]",
                    i + 1,
                    took.as_secs_f64()
                );
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
