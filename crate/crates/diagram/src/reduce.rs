//! The rewriting engine: applies a [`RuleSet`] to a diagram until no rule
//! matches.

use tlwb_ring::DeltaPoly;

use crate::order::{Curve, HeightOrder};
use crate::rules::{Replacement, Rule, RuleSet, Term, TermKind};
use crate::{canonicalize, order, Decoration, Diagram, DiagramError, RawDiagram};

/// One way of matching a rule: for each pattern term, the curve it hit and
/// the curve positions of the pattern symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Match {
    pub rule: usize,
    pub hits: Vec<(Curve, Vec<usize>)>,
}

fn symbols_at<'a>(
    word: &'a [Decoration],
    positions: &'a [usize],
) -> impl Iterator<Item = crate::Symbol> + 'a {
    positions.iter().map(move |&p| word[p].symbol)
}

/// Position lists for `pattern` inside `word`, forwards and backwards.
fn linear_hits(word: &[Decoration], pattern: &[crate::Symbol]) -> Vec<Vec<usize>> {
    let (m, l) = (word.len(), pattern.len());
    let mut out = Vec::new();
    if l == 0 || l > m {
        return out;
    }
    for start in 0..=m - l {
        let fwd: Vec<usize> = (start..start + l).collect();
        let rev: Vec<usize> = (start..start + l).rev().collect();
        for cand in [fwd, rev] {
            if symbols_at(word, &cand).eq(pattern.iter().copied()) && !out.contains(&cand) {
                out.push(cand);
            }
        }
    }
    out
}

fn cyclic_hits(word: &[Decoration], pattern: &[crate::Symbol]) -> Vec<Vec<usize>> {
    let (m, l) = (word.len(), pattern.len());
    let mut out = Vec::new();
    if l > m || (l == 0 && m > 0) {
        return out;
    }
    if m == 0 {
        return vec![Vec::new()];
    }
    if l == 0 {
        return out;
    }
    for r in 0..m {
        let fwd: Vec<usize> = (0..l).map(|j| (r + j) % m).collect();
        let rev: Vec<usize> = (0..l).map(|j| (r + m - j) % m).collect();
        for cand in [fwd, rev] {
            if symbols_at(word, &cand).eq(pattern.iter().copied()) && !out.contains(&cand) {
                out.push(cand);
            }
        }
    }
    out
}

fn term_hits(raw: &RawDiagram, term: &Term) -> Vec<(Curve, Vec<usize>)> {
    let mut out = Vec::new();
    let on_edges = matches!(term.kind, TermKind::Edge | TermKind::Part);
    if on_edges {
        for (i, e) in raw.edges.iter().enumerate() {
            out.extend(
                linear_hits(&e.word, &term.word)
                    .into_iter()
                    .map(|h| (Curve::Edge(i), h)),
            );
        }
    }
    for (i, l) in raw.loops.iter().enumerate() {
        let hits = match term.kind {
            TermKind::Loop if l.len() == term.word.len() => cyclic_hits(l, &term.word),
            TermKind::Part => cyclic_hits(l, &term.word),
            _ => Vec::new(),
        };
        out.extend(hits.into_iter().map(|h| (Curve::Loop(i), h)));
    }
    out
}

fn rule_matches(
    raw: &RawDiagram,
    order: &HeightOrder,
    idx: usize,
    rule: &Rule,
    out: &mut Vec<Match>,
    first: bool,
) {
    let per_term: Vec<Vec<(Curve, Vec<usize>)>> =
        rule.pattern.iter().map(|t| term_hits(raw, t)).collect();
    let mut chosen: Vec<(Curve, Vec<usize>)> = Vec::new();
    fn go(
        t: usize,
        per_term: &[Vec<(Curve, Vec<usize>)>],
        chosen: &mut Vec<(Curve, Vec<usize>)>,
        order: &HeightOrder,
        idx: usize,
        out: &mut Vec<Match>,
        first: bool,
    ) {
        if first && !out.is_empty() {
            return;
        }
        if t == per_term.len() {
            let set: Vec<usize> = chosen
                .iter()
                .flat_map(|(c, ps)| ps.iter().map(|&p| order.index_of(*c, p)))
                .collect();
            if order.convex(&set) {
                out.push(Match {
                    rule: idx,
                    hits: chosen.clone(),
                });
            }
            return;
        }
        for hit in &per_term[t] {
            if chosen.iter().any(|(c, _)| *c == hit.0) {
                continue;
            }
            chosen.push(hit.clone());
            go(t + 1, per_term, chosen, order, idx, out, first);
            chosen.pop();
        }
    }
    go(0, &per_term, &mut chosen, order, idx, out, first);
}

/// Every applicable rule instance, in rule order.
pub fn matches(raw: &RawDiagram, rules: &RuleSet) -> Vec<Match> {
    collect(raw, rules, false)
}

fn collect(raw: &RawDiagram, rules: &RuleSet, first: bool) -> Vec<Match> {
    let order = HeightOrder::new(raw);
    let mut out = Vec::new();
    for (i, rule) in rules.rules.iter().enumerate() {
        rule_matches(raw, &order, i, rule, &mut out, first);
        if first && !out.is_empty() {
            break;
        }
    }
    out
}

fn apply(raw: &mut RawDiagram, rules: &RuleSet, m: &Match) -> DeltaPoly {
    let rule = &rules.rules[m.rule];
    let mut drop_edge: Vec<Vec<usize>> = vec![Vec::new(); raw.edges.len()];
    let mut drop_loop: Vec<Vec<usize>> = vec![Vec::new(); raw.loops.len()];
    let mut delete_loop = vec![false; raw.loops.len()];
    for ((curve, positions), repl) in m.hits.iter().zip(&rule.replacement) {
        let gone: Vec<usize> = match repl {
            Replacement::DeleteLoop => {
                if let Curve::Loop(l) = curve {
                    delete_loop[*l] = true;
                }
                continue;
            }
            Replacement::Keep(keep) => (0..positions.len())
                .filter(|j| !keep.contains(j))
                .map(|j| positions[j])
                .collect(),
        };
        match curve {
            Curve::Edge(e) => drop_edge[*e].extend(gone),
            Curve::Loop(l) => drop_loop[*l].extend(gone),
        }
    }
    let filter = |word: &mut Vec<Decoration>, gone: &[usize]| {
        let mut i = 0;
        word.retain(|_| {
            let keep = !gone.contains(&i);
            i += 1;
            keep
        });
    };
    for (e, gone) in raw.edges.iter_mut().zip(&drop_edge) {
        filter(&mut e.word, gone);
    }
    for (l, gone) in raw.loops.iter_mut().zip(&drop_loop) {
        filter(l, gone);
    }
    let mut i = 0;
    raw.loops.retain(|_| {
        let keep = !delete_loop[i];
        i += 1;
        keep
    });
    rule.coeff.clone()
}

/// Applies rules to a fixpoint, always taking the first match of the first
/// applicable rule. Returns the accumulated coefficient and the canonical
/// irreducible diagram.
pub fn reduce(raw: RawDiagram, rules: &RuleSet) -> Result<(DeltaPoly, Diagram), DiagramError> {
    let mut raw = canonicalize(raw)?.into_raw();
    let mut coeff = DeltaPoly::one();
    while let Some(m) = collect(&raw, rules, true).into_iter().next() {
        coeff = &coeff * &apply(&mut raw, rules, &m);
    }
    Ok((coeff, Diagram(order::normalize_heights(raw))))
}

/// As [`reduce`], with `choose(n)` selecting among all `n` applicable rule
/// instances at each step.
pub fn reduce_with(
    raw: RawDiagram,
    rules: &RuleSet,
    choose: &mut dyn FnMut(usize) -> usize,
) -> Result<(DeltaPoly, Diagram), DiagramError> {
    let mut raw = canonicalize(raw)?.into_raw();
    let mut coeff = DeltaPoly::one();
    loop {
        let found = collect(&raw, rules, false);
        if found.is_empty() {
            break;
        }
        let m = &found[choose(found.len()) % found.len()];
        coeff = &coeff * &apply(&mut raw, rules, m);
    }
    Ok((coeff, Diagram(order::normalize_heights(raw))))
}
