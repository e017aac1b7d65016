//! The vertical order on decorations.
//!
//! Two decorations are dependent when they lie on the same curve. On
//! different curves, equal symbols are always independent. A `b` and an
//! `o` are dependent when either lies on a through strand or both lie on
//! loops; otherwise they are independent exactly when each is screened
//! from the far wall by a bare through strand. Dependent decorations keep
//! the relative order given by their heights, and independent ones may
//! be exchanged freely. The transitive closure of the dependent pairs is
//! a partial order whose linear extensions are the equivalent height
//! assignments.
//!
//! When the diagram has at most one through strand every decoration can
//! reach both walls, so all decorations on different curves are
//! independent and only the order along each curve matters. Such
//! diagrams are called free here.

use crate::{cyclic_min, dihedral, Decoration, Node, RawDiagram, Symbol};

/// Location of a decoration: curve and position along it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Curve {
    Edge(usize),
    Loop(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Site {
    pub curve: Curve,
    pub pos: usize,
    pub symbol: Symbol,
    pub height: u32,
}

/// Whether the order on decorations of different curves is forgotten.
pub fn is_free(raw: &RawDiagram) -> bool {
    raw.through_count() <= 1
}

/// Which curves are through strands, and whether the westmost and
/// eastmost through strands carry decorations.
struct Shape {
    through: Vec<bool>,
    west_bare: bool,
    east_bare: bool,
}

impl Shape {
    fn new(raw: &RawDiagram) -> Self {
        let mut ts: Vec<(Node, bool)> = raw
            .edges
            .iter()
            .filter(|e| e.is_through())
            .map(|e| (e.a.min(e.b), e.word.is_empty()))
            .collect();
        ts.sort();
        let m = ts.len();
        Self {
            through: raw.edges.iter().map(|e| e.is_through()).collect(),
            west_bare: m >= 2 && ts[0].1,
            east_bare: m >= 2 && ts[m - 1].1,
        }
    }

    fn is_through(&self, c: Curve) -> bool {
        matches!(c, Curve::Edge(e) if self.through[e])
    }

    /// The through strand between `s` and the rest of the diagram is bare.
    fn shielded(&self, s: &Site) -> bool {
        match s.symbol {
            Symbol::Dot => self.west_bare,
            Symbol::Ring => self.east_bare,
        }
    }
}

/// All decorations of `raw` with the strict order between them.
pub struct HeightOrder {
    pub sites: Vec<Site>,
    free: bool,
    less: Vec<Vec<bool>>,
}

impl HeightOrder {
    pub fn new(raw: &RawDiagram) -> Self {
        let mut sites = Vec::new();
        for (i, e) in raw.edges.iter().enumerate() {
            for (pos, x) in e.word.iter().enumerate() {
                sites.push(Site {
                    curve: Curve::Edge(i),
                    pos,
                    symbol: x.symbol,
                    height: x.height,
                });
            }
        }
        for (i, l) in raw.loops.iter().enumerate() {
            for (pos, x) in l.iter().enumerate() {
                sites.push(Site {
                    curve: Curve::Loop(i),
                    pos,
                    symbol: x.symbol,
                    height: x.height,
                });
            }
        }
        let free = is_free(raw);
        let shape = Shape::new(raw);
        let n = sites.len();
        let mut by_height: Vec<usize> = (0..n).collect();
        by_height.sort_by_key(|&i| sites[i].height);
        let mut less = vec![vec![false; n]; n];
        for (jj, &j) in by_height.iter().enumerate() {
            for &i in &by_height[..jj] {
                if dependent(free, &shape, &sites[i], &sites[j]) {
                    less[i][j] = true;
                    for row in &mut less {
                        if row[i] {
                            row[j] = true;
                        }
                    }
                }
            }
        }
        Self { sites, free, less }
    }

    pub fn is_free(&self) -> bool {
        self.free
    }

    pub fn index_of(&self, curve: Curve, pos: usize) -> usize {
        self.sites
            .iter()
            .position(|s| s.curve == curve && s.pos == pos)
            .expect("site exists")
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        self.less[i][j]
    }

    /// Whether the decorations in `set` can be brought next to each other
    /// vertically: nothing outside the set lies between two of its members.
    pub fn convex(&self, set: &[usize]) -> bool {
        if self.free {
            return true;
        }
        (0..self.sites.len()).filter(|z| !set.contains(z)).all(|z| {
            let above = set.iter().any(|&x| self.less[x][z]);
            let below = set.iter().any(|&y| self.less[z][y]);
            !(above && below)
        })
    }
}

fn dependent(free: bool, shape: &Shape, x: &Site, y: &Site) -> bool {
    if x.curve == y.curve {
        return true;
    }
    if free || x.symbol == y.symbol {
        return false;
    }
    let both_loops = matches!((x.curve, y.curve), (Curve::Loop(_), Curve::Loop(_)));
    if both_loops || shape.is_through(x.curve) || shape.is_through(y.curve) {
        return true;
    }
    !(shape.shielded(x) && shape.shielded(y))
}

fn rotate_loop_by_symbols(l: &[Decoration]) -> Vec<Decoration> {
    dihedral(l)
        .into_iter()
        .min_by_key(|c| c.iter().map(|x| x.symbol).collect::<Vec<_>>())
        .unwrap_or_default()
}

/// Renumbers heights to the canonical representative and puts loops in
/// canonical rotation and order. Edges must already be oriented and sorted.
pub(crate) fn normalize_heights(mut raw: RawDiagram) -> RawDiagram {
    if is_free(&raw) {
        let mut loops: Vec<Vec<Decoration>> = raw
            .loops
            .iter()
            .map(|l| rotate_loop_by_symbols(l))
            .collect();
        loops.sort_by(|a, b| a.iter().map(|x| x.symbol).cmp(b.iter().map(|x| x.symbol)));
        raw.loops = loops;
        for (h, x) in raw
            .edges
            .iter_mut()
            .flat_map(|e| e.word.iter_mut())
            .chain(raw.loops.iter_mut().flatten())
            .enumerate()
        {
            x.height = h as u32;
        }
        return raw;
    }

    let order = HeightOrder::new(&raw);
    let n = order.sites.len();
    let loop_words: Vec<Vec<Symbol>> = raw
        .loops
        .iter()
        .map(|l| cyclic_min(&l.iter().map(|x| x.symbol).collect::<Vec<_>>()))
        .collect();
    let label = |i: usize| {
        let s = &order.sites[i];
        match s.curve {
            Curve::Edge(e) => (s.symbol, 0u8, e, s.pos, Vec::new()),
            Curve::Loop(l) => (s.symbol, 1u8, 0, 0, loop_words[l].clone()),
        }
    };
    let mut done = vec![false; n];
    let mut new_height = vec![0u32; n];
    for step in 0..n {
        let next = (0..n)
            .filter(|&j| !done[j] && (0..n).all(|i| done[i] || !order.less(i, j)))
            .min_by_key(|&j| (label(j), order.sites[j].height))
            .expect("a finite poset has a minimal element");
        done[next] = true;
        new_height[next] = step as u32;
    }
    for (i, s) in order.sites.iter().enumerate() {
        let x = match s.curve {
            Curve::Edge(e) => &mut raw.edges[e].word[s.pos],
            Curve::Loop(l) => &mut raw.loops[l][s.pos],
        };
        x.height = new_height[i];
    }
    raw.loops = raw.loops.iter().map(|l| cyclic_min(l)).collect();
    raw.loops.sort();
    raw
}
