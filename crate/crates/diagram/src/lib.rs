//! LR-decorated pseudo diagrams.
//!
//! A diagram on `k` strands is a non-crossing perfect matching of the
//! boundary nodes `n1..nk` (north) and `s1..sk` (south) together with a
//! multiset of closed loops. Edges and loops carry decorations `b` (the
//! west symbol) and `o` (the east symbol).
//!
//! Besides its position along its curve every decoration has a height,
//! which records the vertical order in which decorations were stacked by
//! concatenation. Heights are only meaningful up to exchanging
//! independent decorations (see [`order`]), and a canonical diagram stores
//! the lexicographically least representative.

use std::fmt;

pub mod element;
pub mod order;
pub mod reduce;
pub mod rules;
pub mod text;

pub use element::DiagramElement;
pub use reduce::{reduce, reduce_with};
pub use rules::{RuleSet, RuleSetError};

/// A decoration symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// The west decoration, written `b`.
    Dot,
    /// The east decoration, written `o`.
    Ring,
}

impl Symbol {
    pub fn as_char(self) -> char {
        match self {
            Symbol::Dot => 'b',
            Symbol::Ring => 'o',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'b' => Some(Symbol::Dot),
            'o' => Some(Symbol::Ring),
            _ => None,
        }
    }
}

/// A boundary node; indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    North(usize),
    South(usize),
}

impl Node {
    pub fn index(self) -> usize {
        match self {
            Node::North(i) | Node::South(i) => i,
        }
    }

    pub fn is_north(self) -> bool {
        matches!(self, Node::North(_))
    }

    /// Position in the clockwise boundary order `n1..nk, sk..s1`.
    pub fn cyclic_position(self, k: usize) -> usize {
        match self {
            Node::North(i) => i - 1,
            Node::South(i) => 2 * k - i,
        }
    }

    fn from_cyclic_position(p: usize, k: usize) -> Node {
        if p < k {
            Node::North(p + 1)
        } else {
            Node::South(2 * k - p)
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::North(i) => write!(f, "n{i}"),
            Node::South(i) => write!(f, "s{i}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decoration {
    pub symbol: Symbol,
    /// Vertical rank; smaller is higher.
    pub height: u32,
}

impl Decoration {
    pub fn new(symbol: Symbol, height: u32) -> Self {
        Self { symbol, height }
    }
}

/// A curve between two boundary nodes, decorations listed from `a` to `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub a: Node,
    pub b: Node,
    pub word: Vec<Decoration>,
}

impl Edge {
    pub fn new(a: Node, b: Node, word: Vec<Decoration>) -> Self {
        Self { a, b, word }
    }

    pub fn plain(a: Node, b: Node) -> Self {
        Self::new(a, b, Vec::new())
    }

    pub fn is_through(&self) -> bool {
        self.a.is_north() != self.b.is_north()
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        self.word.iter().map(|x| x.symbol).collect()
    }

    fn oriented(mut self) -> Self {
        if self.b < self.a {
            std::mem::swap(&mut self.a, &mut self.b);
            self.word.reverse();
        }
        self
    }
}

/// Unvalidated diagram data, as produced by parsing or concatenation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RawDiagram {
    pub k: usize,
    pub edges: Vec<Edge>,
    pub loops: Vec<Vec<Decoration>>,
}

impl RawDiagram {
    pub fn decorations(&self) -> impl Iterator<Item = &Decoration> {
        self.edges
            .iter()
            .flat_map(|e| e.word.iter())
            .chain(self.loops.iter().flatten())
    }

    pub fn through_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_through()).count()
    }

    fn max_height(&self) -> Option<u32> {
        self.decorations().map(|x| x.height).max()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("diagrams need at least one strand")]
    NoStrands,
    #[error("node {0} is outside the box")]
    NodeOutOfRange(Node),
    #[error("node {0} is used twice")]
    NodeReused(Node),
    #[error("node {0} is not matched")]
    NodeUnmatched(Node),
    #[error("edge {0}-{0} joins a node to itself")]
    Degenerate(Node),
    #[error("edges {0} and {1} cross")]
    Crossing(String, String),
    #[error("height {0} is used by two decorations")]
    DuplicateHeight(u32),
    #[error("decoration {symbol} on edge {edge} is not exposed to its wall")]
    Placement { edge: String, symbol: char },
    #[error("strand counts differ: {0} and {1}")]
    StrandMismatch(usize, usize),
    #[error("generator {i} is out of range for n = {n}")]
    GeneratorOutOfRange { n: usize, i: usize },
    #[error("affine type D diagrams need n >= 2, got {0}")]
    RankTooSmall(usize),
}

/// A validated diagram in canonical form.
///
/// Edges are oriented (`a < b`) and sorted, loops are rotated to their
/// least form and sorted, and heights are renumbered canonically, so
/// structural equality is diagram equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram(RawDiagram);

impl Diagram {
    pub fn k(&self) -> usize {
        self.0.k
    }

    pub fn edges(&self) -> &[Edge] {
        &self.0.edges
    }

    pub fn loops(&self) -> &[Vec<Decoration>] {
        &self.0.loops
    }

    pub fn raw(&self) -> &RawDiagram {
        &self.0
    }

    pub fn into_raw(self) -> RawDiagram {
        self.0
    }

    pub fn through_count(&self) -> usize {
        self.0.through_count()
    }

    /// The edge whose endpoints include `node`.
    pub fn edge_at(&self, node: Node) -> Option<&Edge> {
        self.0.edges.iter().find(|e| e.a == node || e.b == node)
    }

    pub fn is_identity(&self) -> bool {
        self.0.loops.is_empty()
            && self.0.edges.iter().all(|e| {
                e.word.is_empty()
                    && e.a == Node::North(e.b.index())
                    && e.b == Node::South(e.a.index())
            })
    }

    /// The undecorated identity on `k` strands.
    pub fn identity(k: usize) -> Self {
        let edges = (1..=k)
            .map(|i| Edge::plain(Node::North(i), Node::South(i)))
            .collect();
        Diagram(RawDiagram {
            k,
            edges,
            loops: Vec::new(),
        })
    }

    /// Whether `edge` borders the face containing the west wall.
    pub fn left_exposed(&self, edge: &Edge) -> bool {
        exposed(&self.0, Side::West)[self.edge_index(edge)]
    }

    /// Whether `edge` borders the face containing the east wall.
    pub fn right_exposed(&self, edge: &Edge) -> bool {
        exposed(&self.0, Side::East)[self.edge_index(edge)]
    }

    fn edge_index(&self, edge: &Edge) -> usize {
        self.0
            .edges
            .iter()
            .position(|e| e.a == edge.a && e.b == edge.b)
            .expect("edge belongs to the diagram")
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    West,
    East,
}

/// Marks the edges bordering the west or east face by walking the face
/// boundary of the matching, starting from the wall segment.
fn exposed(raw: &RawDiagram, side: Side) -> Vec<bool> {
    let k = raw.k;
    let m = 2 * k;
    let mut partner = vec![0; m];
    let mut edge_of = vec![0; m];
    for (idx, e) in raw.edges.iter().enumerate() {
        let (p, q) = (e.a.cyclic_position(k), e.b.cyclic_position(k));
        partner[p] = q;
        partner[q] = p;
        edge_of[p] = idx;
        edge_of[q] = idx;
    }
    let start = match side {
        Side::West => m - 1,
        Side::East => k - 1,
    };
    let mut out = vec![false; raw.edges.len()];
    let mut arc = start;
    loop {
        let p = (arc + 1) % m;
        out[edge_of[p]] = true;
        arc = partner[p];
        if arc == start {
            break;
        }
    }
    out
}

fn check_matching(raw: &RawDiagram) -> Result<(), DiagramError> {
    let k = raw.k;
    if k == 0 {
        return Err(DiagramError::NoStrands);
    }
    let mut used = vec![false; 2 * k];
    for e in &raw.edges {
        if e.a == e.b {
            return Err(DiagramError::Degenerate(e.a));
        }
        for node in [e.a, e.b] {
            if node.index() == 0 || node.index() > k {
                return Err(DiagramError::NodeOutOfRange(node));
            }
            let p = node.cyclic_position(k);
            if std::mem::replace(&mut used[p], true) {
                return Err(DiagramError::NodeReused(node));
            }
        }
    }
    if let Some(p) = used.iter().position(|u| !u) {
        return Err(DiagramError::NodeUnmatched(Node::from_cyclic_position(
            p, k,
        )));
    }
    let chords: Vec<(usize, usize)> = raw
        .edges
        .iter()
        .map(|e| {
            let (p, q) = (e.a.cyclic_position(k), e.b.cyclic_position(k));
            (p.min(q), p.max(q))
        })
        .collect();
    for i in 0..chords.len() {
        for j in i + 1..chords.len() {
            let ((a, b), (c, d)) = (chords[i], chords[j]);
            if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                let name = |e: &Edge| format!("{}-{}", e.a, e.b);
                return Err(DiagramError::Crossing(
                    name(&raw.edges[i]),
                    name(&raw.edges[j]),
                ));
            }
        }
    }
    let mut heights: Vec<u32> = raw.decorations().map(|x| x.height).collect();
    heights.sort_unstable();
    if let Some(w) = heights.windows(2).find(|w| w[0] == w[1]) {
        return Err(DiagramError::DuplicateHeight(w[0]));
    }
    Ok(())
}

fn check_placement(raw: &RawDiagram) -> Result<(), DiagramError> {
    let west = exposed(raw, Side::West);
    let east = exposed(raw, Side::East);
    for (i, e) in raw.edges.iter().enumerate() {
        for x in &e.word {
            let ok = match x.symbol {
                Symbol::Dot => west[i],
                Symbol::Ring => east[i],
            };
            if !ok {
                return Err(DiagramError::Placement {
                    edge: format!("{}-{}", e.a, e.b),
                    symbol: x.symbol.as_char(),
                });
            }
        }
    }
    Ok(())
}

/// Validates `raw` and brings it to canonical form without applying any
/// reduction rule.
///
/// Rejects broken or crossing matchings, repeated heights, and decorations
/// on edges that do not border the face of their wall.
pub fn canonicalize(raw: RawDiagram) -> Result<Diagram, DiagramError> {
    check_matching(&raw)?;
    let mut raw = raw;
    raw.edges = raw.edges.into_iter().map(Edge::oriented).collect();
    raw.edges.sort();
    check_placement(&raw)?;
    Ok(Diagram(order::normalize_heights(raw)))
}

/// Stacks `top` above `bottom`, tracing the merged strands.
///
/// Closed curves formed in the middle become loops and no reduction is
/// performed. Heights of `bottom` are shifted below those of `top`.
pub fn concat(top: &RawDiagram, bottom: &RawDiagram) -> Result<RawDiagram, DiagramError> {
    if top.k != bottom.k {
        return Err(DiagramError::StrandMismatch(top.k, bottom.k));
    }
    let k = top.k;
    let offset = top.max_height().map_or(0, |h| h + 1);
    // For each node: the node at the other end and the word read from here.
    let half = |d: &RawDiagram, shift: u32| {
        let mut map = std::collections::HashMap::new();
        for e in &d.edges {
            let w: Vec<Decoration> = e
                .word
                .iter()
                .map(|x| Decoration::new(x.symbol, x.height + shift))
                .collect();
            let mut rev = w.clone();
            rev.reverse();
            map.insert(e.a, (e.b, w));
            map.insert(e.b, (e.a, rev));
        }
        map
    };
    let t = half(top, 0);
    let b = half(bottom, offset);
    let mut middle_seen = vec![false; k + 1];
    let mut done = std::collections::HashSet::new();
    let mut edges = Vec::new();

    // Walks from an outer node until the strand exits the product.
    let walk = |start_top: bool, start: Node, middle_seen: &mut Vec<bool>| {
        let mut word = Vec::new();
        let (mut in_top, mut cur) = (start_top, start);
        loop {
            let (other, w) = if in_top { &t[&cur] } else { &b[&cur] };
            word.extend_from_slice(w);
            match (in_top, *other) {
                (true, Node::North(_)) | (false, Node::South(_)) => return (*other, word),
                (true, Node::South(j)) => {
                    middle_seen[j] = true;
                    in_top = false;
                    cur = Node::North(j);
                }
                (false, Node::North(j)) => {
                    middle_seen[j] = true;
                    in_top = true;
                    cur = Node::South(j);
                }
            }
        }
    };
    for start in (1..=k).map(Node::North).chain((1..=k).map(Node::South)) {
        if done.contains(&start) {
            continue;
        }
        let (end, word) = walk(start.is_north(), start, &mut middle_seen);
        done.insert(start);
        done.insert(end);
        edges.push(Edge::new(start, end, word).oriented());
    }

    let mut loops: Vec<Vec<Decoration>> = top.loops.clone();
    loops.extend(bottom.loops.iter().map(|l| {
        l.iter()
            .map(|x| Decoration::new(x.symbol, x.height + offset))
            .collect::<Vec<_>>()
    }));
    for j in 1..=k {
        if middle_seen[j] {
            continue;
        }
        let mut word = Vec::new();
        let (mut in_top, mut cur) = (true, Node::South(j));
        middle_seen[j] = true;
        loop {
            let (other, w) = if in_top { &t[&cur] } else { &b[&cur] };
            word.extend_from_slice(w);
            let m = other.index();
            if m == j {
                break;
            }
            middle_seen[m] = true;
            in_top = !in_top;
            cur = if in_top {
                Node::South(m)
            } else {
                Node::North(m)
            };
        }
        loops.push(word);
    }
    edges.sort();
    Ok(RawDiagram { k, edges, loops })
}

/// The simple diagram `D_i` of affine type D with `k = n + 2` strands.
///
/// `D_1` is the cup `n1-n2` over the cap `s1-s2`, `D_0` is the same with a
/// `b` on cup and cap, `D_i` for `2 <= i <= n + 1` has its cup and cap at
/// positions `i, i+1`, and `D_{n+2}` decorates the rightmost pair with `o`.
pub fn simple_diagram(n: usize, i: usize) -> Result<Diagram, DiagramError> {
    if n < 2 {
        return Err(DiagramError::RankTooSmall(n));
    }
    let k = n + 2;
    let (pos, symbol) = match i {
        0 => (1, Some(Symbol::Dot)),
        1 => (1, None),
        i if i <= n + 1 => (i, None),
        i if i == n + 2 => (k - 1, Some(Symbol::Ring)),
        _ => return Err(DiagramError::GeneratorOutOfRange { n, i }),
    };
    Ok(cup_cap(k, pos, symbol))
}

/// The Temperley-Lieb generator on `k` strands with its cup at `i, i+1`,
/// the image of generator `i - 1` of the path graph.
pub fn tl_generator(k: usize, i: usize) -> Result<Diagram, DiagramError> {
    if i == 0 || i >= k {
        return Err(DiagramError::GeneratorOutOfRange { n: k, i });
    }
    Ok(cup_cap(k, i, None))
}

fn cup_cap(k: usize, pos: usize, symbol: Option<Symbol>) -> Diagram {
    let deco = |h: u32| {
        symbol
            .map(|s| vec![Decoration::new(s, h)])
            .unwrap_or_default()
    };
    let mut edges = vec![
        Edge::new(Node::North(pos), Node::North(pos + 1), deco(0)),
        Edge::new(Node::South(pos), Node::South(pos + 1), deco(1)),
    ];
    edges.extend(
        (1..=k)
            .filter(|&j| j != pos && j != pos + 1)
            .map(|j| Edge::plain(Node::North(j), Node::South(j))),
    );
    canonicalize(RawDiagram {
        k,
        edges,
        loops: Vec::new(),
    })
    .expect("simple diagrams are valid")
}

/// Loop shapes allowed in an admissible diagram, as symbol words up
/// to rotation and reflection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Admissibility {
    pub allowed_loops: Vec<Vec<Symbol>>,
}

impl Default for Admissibility {
    fn default() -> Self {
        Self {
            allowed_loops: vec![
                vec![Symbol::Dot],
                vec![Symbol::Ring],
                vec![Symbol::Dot, Symbol::Ring],
            ],
        }
    }
}

/// All rotations of a cyclic word and of its reverse. The empty word has
/// the single image `[]`.
pub fn dihedral<T: Clone>(w: &[T]) -> Vec<Vec<T>> {
    if w.is_empty() {
        return vec![Vec::new()];
    }
    let mut rev = w.to_vec();
    rev.reverse();
    let mut out = Vec::with_capacity(2 * w.len());
    for v in [w.to_vec(), rev] {
        for r in 0..v.len() {
            out.push(v[r..].iter().chain(&v[..r]).cloned().collect());
        }
    }
    out
}

/// Least rotation or reflection of a cyclic word.
pub fn cyclic_min<T: Ord + Clone>(w: &[T]) -> Vec<T> {
    dihedral(w).into_iter().min().unwrap_or_default()
}

impl Admissibility {
    /// Admissibility of a reduced diagram: allowed loops only; the
    /// number of `bo` loops plus the number of `b` on edges is even, and
    /// likewise for `o`; and every cup or cap reads as `b*o*` from west
    /// to east.
    pub fn check(&self, d: &Diagram) -> bool {
        let allowed: Vec<Vec<Symbol>> = self.allowed_loops.iter().map(|l| cyclic_min(l)).collect();
        let loop_words: Vec<Vec<Symbol>> = d
            .loops()
            .iter()
            .map(|l| cyclic_min(&l.iter().map(|x| x.symbol).collect::<Vec<_>>()))
            .collect();
        if !loop_words.iter().all(|w| allowed.contains(w)) {
            return false;
        }
        let mixed = loop_words
            .iter()
            .filter(|w| w.len() == 2 && w[0] != w[1])
            .count();
        let count = |s: Symbol| {
            d.edges()
                .iter()
                .flat_map(|e| &e.word)
                .filter(|x| x.symbol == s)
                .count()
        };
        if (mixed + count(Symbol::Dot)) % 2 != 0 || (mixed + count(Symbol::Ring)) % 2 != 0 {
            return false;
        }
        d.edges().iter().filter(|e| !e.is_through()).all(|e| {
            let s = e.symbols();
            s.windows(2).all(|p| p[0] <= p[1])
        })
    }
}

pub fn is_admissible(d: &Diagram) -> bool {
    Admissibility::default().check(d)
}
