//! Factorization of admissible diagrams into simple diagrams.
//!
//! A diagram whose north face has a simple cup at positions `p, p+1` may be
//! written `D = D_i D'` for the generator `i` matching that cup. The
//! candidates for `D'` come from cut and paste: delete the cup, then cut a
//! neighbouring edge or open a loop and join the free ends to the cup's
//! nodes, redistributing decorations. Every candidate is checked by
//! recomposing `D_i D'` with the reduction engine, so the search order
//! only affects speed.
//!
//! The length `ℓ(D)` is the length of a shortest factorization. It is
//! found by iterative deepening, with memoized lower bounds, and the peel
//! step keeps a candidate only when its length is exactly `ℓ(D) - 1`.

use std::collections::{BTreeSet, HashMap};

use tlwb_coxeter::CoxeterGraph;
use tlwb_diagram::{
    concat, is_admissible, reduce, simple_diagram, Decoration, Diagram, DiagramError, Edge, Node,
    RawDiagram, RuleSet, Symbol,
};
use tlwb_fullcomm::{is_fc_reduced, FcStatus, Word};

/// Default bound on the length of a factorization.
pub const DEFAULT_MAX_LEN: usize = 64;
/// Default bound on the number of recomposition checks per search.
pub const DEFAULT_MAX_CHECKS: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FactorizeError {
    #[error("diagrams of affine type D need at least 4 strands, got {0}")]
    TooFewStrands(usize),
    #[error("diagram is not admissible: {0}")]
    NotAdmissible(Diagram),
    #[error("the identity diagram has no simple edge to peel")]
    Identity,
    #[error("no factorization of length at most {max_len} found for {diagram}")]
    NoFactorization { diagram: Diagram, max_len: usize },
    #[error("search stopped after {checks} recomposition checks")]
    ResourceCap { checks: usize },
    #[error("factorization {word} is not a reduced word of a fully commutative element")]
    NotFcReduced { word: Word },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A cup on the north face that is a simple diagram's cup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleEdge {
    pub edge: Edge,
    pub generator: usize,
}

impl SimpleEdge {
    /// West node index of the cup.
    pub fn left(&self) -> usize {
        self.edge.a.index()
    }

    fn symbol(&self) -> Option<Symbol> {
        self.edge.word.first().map(|x| x.symbol)
    }
}

/// The curve cut by a cut-and-paste step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Neighbor {
    Edge(usize),
    Loop(usize),
}

fn rank(d: &Diagram) -> Result<usize, FactorizeError> {
    if d.k() < 4 {
        return Err(FactorizeError::TooFewStrands(d.k()));
    }
    Ok(d.k() - 2)
}

/// North cups `{n p, n(p+1)}` that are undecorated, or carry a single `b`
/// at `p = 1`, or a single `o` at `p = k - 1`, listed west to east.
pub fn find_simple_edges(d: &Diagram) -> Vec<SimpleEdge> {
    let k = d.k();
    if k < 4 {
        return Vec::new();
    }
    let n = k - 2;
    let mut out = Vec::new();
    for e in d.edges() {
        let (Node::North(p), Node::North(q)) = (e.a, e.b) else {
            continue;
        };
        if q != p + 1 {
            continue;
        }
        let generator = match e.symbols().as_slice() {
            [] if p <= n + 1 => p,
            [Symbol::Dot] if p == 1 => 0,
            [Symbol::Ring] if p == n + 1 => n + 2,
            _ => continue,
        };
        out.push(SimpleEdge {
            edge: e.clone(),
            generator,
        });
    }
    out.sort_by_key(|s| s.left());
    out
}

/// Curves worth cutting for `e`: edges at the flanking nodes first, then
/// loops, then every other edge.
pub fn neighbors(d: &Diagram, e: &SimpleEdge) -> Vec<Neighbor> {
    let p = e.left();
    let flank = |x: &Edge| {
        [x.a, x.b]
            .iter()
            .any(|v| matches!(v, Node::North(i) if *i + 1 == p || *i == p + 2))
    };
    let others: Vec<usize> = (0..d.edges().len())
        .filter(|&i| d.edges()[i] != e.edge)
        .collect();
    let mut out: Vec<Neighbor> = others
        .iter()
        .filter(|&&i| flank(&d.edges()[i]))
        .map(|&i| Neighbor::Edge(i))
        .collect();
    out.extend((0..d.loops().len()).map(Neighbor::Loop));
    out.extend(
        others
            .iter()
            .filter(|&&i| !flank(&d.edges()[i]))
            .map(|&i| Neighbor::Edge(i)),
    );
    out
}

/// Ways of handing the cup's decoration `s` to the cut word `w`, split at
/// every position: unchanged, with an `s` consumed, or with an extra `s`
/// that cancels against it.
fn splits(w: &[Decoration], s: Option<Symbol>) -> Vec<(Vec<Decoration>, Vec<Decoration>)> {
    let extra = |x: Symbol| Decoration::new(x, 0);
    let mut out = Vec::new();
    for t in 0..=w.len() {
        out.push((w[..t].to_vec(), w[t..].to_vec()));
        let Some(s) = s else { continue };
        if t < w.len() && w[t].symbol == s {
            out.push((w[..t].to_vec(), w[t + 1..].to_vec()));
        }
        let mut right = vec![extra(s)];
        right.extend_from_slice(&w[t..]);
        out.push((w[..t].to_vec(), right));
        let mut left = w[..t].to_vec();
        left.push(extra(s));
        out.push((left, w[t..].to_vec()));
    }
    out
}

/// All admissible diagrams obtained from `d` by deleting `e`, cutting
/// `nb`, and joining the pieces to `e`'s nodes.
pub fn cut_and_paste(d: &Diagram, e: &SimpleEdge, nb: Neighbor) -> Vec<Diagram> {
    // Decorations keep their heights shifted by two, so that inserted
    // decorations sit directly under the cup's cap.
    let shift = |w: &[Decoration]| -> Vec<Decoration> {
        w.iter()
            .map(|x| Decoration::new(x.symbol, x.height + 2))
            .collect()
    };
    let (p, q) = (Node::North(e.left()), Node::North(e.left() + 1));
    let mut base = RawDiagram {
        k: d.k(),
        edges: Vec::new(),
        loops: Vec::new(),
    };
    for (i, x) in d.edges().iter().enumerate() {
        if *x != e.edge && nb != Neighbor::Edge(i) {
            base.edges.push(Edge::new(x.a, x.b, shift(&x.word)));
        }
    }
    for (i, l) in d.loops().iter().enumerate() {
        if nb != Neighbor::Loop(i) {
            base.loops.push(shift(l));
        }
    }
    let s = e.symbol();
    let mut raws = Vec::new();
    match nb {
        Neighbor::Edge(i) => {
            let x = &d.edges()[i];
            let w = shift(&x.word);
            let mut rev = w.clone();
            rev.reverse();
            for (from, to, word) in [(x.a, x.b, w), (x.b, x.a, rev)] {
                for (left, right) in splits(&word, s) {
                    let mut left = left;
                    left.reverse();
                    let mut raw = base.clone();
                    raw.edges.push(Edge::new(p, from, left));
                    raw.edges.push(Edge::new(q, to, right));
                    raws.push(raw);
                }
            }
        }
        Neighbor::Loop(i) => {
            let l = shift(&d.loops()[i]);
            for rot in tlwb_diagram::dihedral(&l) {
                for (_, tail) in splits(&rot, s).into_iter().filter(|(h, _)| h.is_empty()) {
                    let mut raw = base.clone();
                    raw.edges.push(Edge::new(p, q, tail));
                    raws.push(raw);
                }
            }
        }
    }
    // A loop carrying one symbol may have absorbed a copy of it from D'.
    let mut absorbed: Vec<Symbol> = d
        .loops()
        .iter()
        .filter(|l| l.len() == 1)
        .map(|l| l[0].symbol)
        .collect();
    absorbed.sort();
    absorbed.dedup();
    let mut extended = Vec::new();
    for raw in &raws {
        for &x in &absorbed {
            for (j, e) in raw.edges.iter().enumerate() {
                for t in 0..=e.word.len() {
                    let mut r = raw.clone();
                    r.edges[j].word.insert(t, Decoration::new(x, 1));
                    extended.push(r);
                }
            }
        }
    }
    raws.extend(extended);
    let mut out = BTreeSet::new();
    for raw in raws {
        if let Ok(c) = tlwb_diagram::canonicalize(raw) {
            if is_admissible(&c) {
                out.insert(c);
            }
        }
    }
    out.into_iter().collect()
}

/// Bounds for [`Factorizer`] searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_len: usize,
    pub max_checks: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_len: DEFAULT_MAX_LEN,
            max_checks: DEFAULT_MAX_CHECKS,
        }
    }
}

/// Factorization search with memoized lengths, reusable across diagrams
/// with the same strand count.
pub struct Factorizer {
    n: usize,
    rules: RuleSet,
    graph: CoxeterGraph,
    simple: Vec<Diagram>,
    limits: Limits,
    checks: usize,
    exact: HashMap<Diagram, usize>,
    longer_than: HashMap<Diagram, usize>,
    peels: HashMap<Diagram, Vec<(usize, Diagram)>>,
}

impl Factorizer {
    pub fn new(n: usize, rules: RuleSet, limits: Limits) -> Result<Self, FactorizeError> {
        let graph = CoxeterGraph::affine_d(n).map_err(|_| FactorizeError::TooFewStrands(n + 2))?;
        let simple = (0..=n + 2)
            .map(|i| simple_diagram(n, i))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            n,
            rules,
            graph,
            simple,
            limits,
            checks: 0,
            exact: HashMap::new(),
            longer_than: HashMap::new(),
            peels: HashMap::new(),
        })
    }

    fn check_input(&self, d: &Diagram) -> Result<(), FactorizeError> {
        if rank(d)? != self.n {
            return Err(DiagramError::StrandMismatch(d.k(), self.n + 2).into());
        }
        if !is_admissible(d) {
            return Err(FactorizeError::NotAdmissible(d.clone()));
        }
        Ok(())
    }

    /// Verified pairs `(i, D')` with `D_i D' = d` and coefficient 1.
    fn candidates(&mut self, d: &Diagram) -> Result<Vec<(usize, Diagram)>, FactorizeError> {
        if let Some(c) = self.peels.get(d) {
            return Ok(c.clone());
        }
        let mut out = Vec::new();
        for e in find_simple_edges(d) {
            let di = self.simple[e.generator].clone();
            for nb in neighbors(d, &e) {
                for cand in cut_and_paste(d, &e, nb) {
                    if out.iter().any(|(g, c)| *g == e.generator && *c == cand) {
                        continue;
                    }
                    self.checks += 1;
                    if self.checks > self.limits.max_checks {
                        return Err(FactorizeError::ResourceCap {
                            checks: self.limits.max_checks,
                        });
                    }
                    let (c, r) = reduce(concat(di.raw(), cand.raw())?, &self.rules)?;
                    if c.is_one() && r == *d {
                        out.push((e.generator, cand));
                    }
                }
            }
        }
        self.peels.insert(d.clone(), out.clone());
        Ok(out)
    }

    fn lower_bound(d: &Diagram) -> usize {
        if d.is_identity() {
            return 0;
        }
        let decorations = d.raw().decorations().count();
        let cups = d.k() - d.through_count();
        1usize.max(decorations.div_ceil(2)).max(cups.div_ceil(2))
    }

    /// `ℓ(d)` if it is at most `budget`.
    fn length_within(
        &mut self,
        d: &Diagram,
        budget: usize,
    ) -> Result<Option<usize>, FactorizeError> {
        if let Some(&l) = self.exact.get(d) {
            return Ok((l <= budget).then_some(l));
        }
        if d.is_identity() {
            self.exact.insert(d.clone(), 0);
            return Ok(Some(0));
        }
        let floor = Self::lower_bound(d).max(self.longer_than.get(d).map_or(0, |&b| b + 1));
        if floor > budget {
            return Ok(None);
        }
        let mut best: Option<usize> = None;
        for (_, cand) in self.candidates(d)? {
            let Some(limit) = best.map_or(budget.checked_sub(1), |b| b.checked_sub(2)) else {
                break;
            };
            if let Some(l) = self.length_within(&cand, limit)? {
                best = Some(l + 1);
                if l + 1 == floor {
                    break;
                }
            }
        }
        match best {
            Some(l) => {
                self.exact.insert(d.clone(), l);
            }
            None => {
                self.longer_than.insert(d.clone(), budget);
            }
        }
        Ok(best)
    }

    /// The diagram length: the length of a shortest factorization.
    pub fn length(&mut self, d: &Diagram) -> Result<usize, FactorizeError> {
        self.check_input(d)?;
        for budget in Self::lower_bound(d)..=self.limits.max_len {
            if let Some(l) = self.length_within(d, budget)? {
                return Ok(l);
            }
        }
        Err(FactorizeError::NoFactorization {
            diagram: d.clone(),
            max_len: self.limits.max_len,
        })
    }

    /// One step `d = D_i d'` with `ℓ(d') = ℓ(d) - 1`.
    pub fn peel(&mut self, d: &Diagram) -> Result<(usize, Diagram), FactorizeError> {
        if d.is_identity() {
            return Err(FactorizeError::Identity);
        }
        let l = self.length(d)?;
        for (i, cand) in self.candidates(d)? {
            if self.length_within(&cand, l - 1)? == Some(l - 1) {
                return Ok((i, cand));
            }
        }
        Err(FactorizeError::NoFactorization {
            diagram: d.clone(),
            max_len: l,
        })
    }

    /// The peel steps of a shortest factorization, outermost first.
    pub fn trace(&mut self, d: &Diagram) -> Result<Vec<(usize, Diagram)>, FactorizeError> {
        self.check_input(d)?;
        let mut steps = Vec::new();
        let mut cur = d.clone();
        while !cur.is_identity() {
            let (i, next) = self.peel(&cur)?;
            steps.push((i, next.clone()));
            cur = next;
        }
        Ok(steps)
    }

    /// A shortest word `w` with `D_w = d`, checked to be fully commutative.
    pub fn factorize(&mut self, d: &Diagram) -> Result<Word, FactorizeError> {
        let letters: Vec<u8> = self.trace(d)?.iter().map(|(i, _)| *i as u8).collect();
        let word = Word::from_indices(&letters);
        match is_fc_reduced(&word, &self.graph) {
            Ok(FcStatus::Fc) => Ok(word),
            _ => Err(FactorizeError::NotFcReduced { word }),
        }
    }
}

fn factorizer_for(d: &Diagram) -> Result<Factorizer, FactorizeError> {
    Factorizer::new(rank(d)?, RuleSet::default(), Limits::default())
}

/// One peel step with the default rules and limits.
pub fn peel(d: &Diagram) -> Result<(usize, Diagram), FactorizeError> {
    let mut f = factorizer_for(d)?;
    f.check_input(d)?;
    f.peel(d)
}

/// A shortest fully commutative word `w` with `D_w = d`.
pub fn factorize(d: &Diagram) -> Result<Word, FactorizeError> {
    factorizer_for(d)?.factorize(d)
}

pub fn diagram_length(d: &Diagram) -> Result<usize, FactorizeError> {
    factorizer_for(d)?.length(d)
}

/// The generator whose simple diagram is `d`, if any.
pub fn simple_index(d: &Diagram) -> Option<usize> {
    let n = rank(d).ok()?;
    (0..=n + 2).find(|&i| simple_diagram(n, i).is_ok_and(|s| s == *d))
}

/// Letters of `w` as generator indices.
pub fn indices(w: &Word) -> Vec<usize> {
    w.letters().iter().map(|g| g.index()).collect()
}
