//! Simply laced Coxeter graphs.
//!
//! The affine type D builder fixes the node labels used by every other
//! crate: `0` and `1` form the left fork attached to `2`, `n+1` and `n+2`
//! form the right fork attached to `n`, and `2..=n` is the spine.

use std::fmt;
use std::str::FromStr;

/// Index of a generator `s_i` (equivalently `b_i`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorId(pub u8);

impl GeneratorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoxeterError {
    #[error("affine type D needs n >= 2, got n = {0}")]
    RankTooSmall(usize),
    #[error("graph size {0} is outside 1..=256")]
    BadSize(usize),
    #[error("generator {index} is out of range for a graph with {size} nodes")]
    OutOfRange { index: usize, size: usize },
    #[error("a generator is not adjacent to itself")]
    SelfBond,
    #[error("bond label {0} is not supported (only 2 and 3)")]
    BadLabel(u32),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

/// A symmetric Coxeter matrix with labels in `{2, 3}` off the diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterGraph {
    size: usize,
    m: Vec<u8>,
}

impl CoxeterGraph {
    /// The graph on `size` pairwise commuting generators.
    pub fn discrete(size: usize) -> Result<Self, CoxeterError> {
        if size == 0 || size > 256 {
            return Err(CoxeterError::BadSize(size));
        }
        let mut m = vec![2u8; size * size];
        for i in 0..size {
            m[i * size + i] = 1;
        }
        Ok(Self { size, m })
    }

    /// Builds a graph from its list of label-3 bonds.
    pub fn from_bonds(size: usize, bonds: &[(usize, usize)]) -> Result<Self, CoxeterError> {
        let mut g = Self::discrete(size)?;
        for &(i, j) in bonds {
            g.set_label(i, j, 3)?;
        }
        Ok(g)
    }

    /// The Coxeter graph of affine type D with `n + 3` nodes.
    pub fn affine_d(n: usize) -> Result<Self, CoxeterError> {
        if n < 2 {
            return Err(CoxeterError::RankTooSmall(n));
        }
        let mut bonds = vec![(0, 2), (1, 2)];
        bonds.extend((2..n).map(|i| (i, i + 1)));
        bonds.push((n, n + 1));
        bonds.push((n, n + 2));
        Self::from_bonds(n + 3, &bonds)
    }

    /// The path (type A) graph on `size` nodes.
    pub fn path(size: usize) -> Result<Self, CoxeterError> {
        let bonds: Vec<_> = (1..size).map(|i| (i - 1, i)).collect();
        Self::from_bonds(size, &bonds)
    }

    fn set_label(&mut self, i: usize, j: usize, label: u32) -> Result<(), CoxeterError> {
        self.check(i)?;
        self.check(j)?;
        if i == j {
            return Err(CoxeterError::SelfBond);
        }
        if label != 2 && label != 3 {
            return Err(CoxeterError::BadLabel(label));
        }
        self.m[i * self.size + j] = label as u8;
        self.m[j * self.size + i] = label as u8;
        Ok(())
    }

    fn check(&self, i: usize) -> Result<(), CoxeterError> {
        if i < self.size {
            Ok(())
        } else {
            Err(CoxeterError::OutOfRange {
                index: i,
                size: self.size,
            })
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn generators(&self) -> impl Iterator<Item = GeneratorId> {
        (0..self.size).map(|i| GeneratorId(i as u8))
    }

    pub fn contains(&self, s: GeneratorId) -> bool {
        s.index() < self.size
    }

    /// The Coxeter matrix entry `m_ij`.
    pub fn label(&self, i: GeneratorId, j: GeneratorId) -> Result<u8, CoxeterError> {
        self.check(i.index())?;
        self.check(j.index())?;
        Ok(self.m[i.index() * self.size + j.index()])
    }

    /// True iff `m_ij = 3`. Requires distinct, in-range indices.
    pub fn adjacent(&self, i: GeneratorId, j: GeneratorId) -> Result<bool, CoxeterError> {
        if i == j {
            return Err(CoxeterError::SelfBond);
        }
        Ok(self.label(i, j)? == 3)
    }

    /// Unchecked `m_ij == 3` for validated indices; false on the diagonal.
    #[inline]
    pub fn bonded(&self, i: GeneratorId, j: GeneratorId) -> bool {
        self.m[i.index() * self.size + j.index()] == 3
    }

    /// Unchecked `m_ij == 2` for validated indices; false on the diagonal.
    #[inline]
    pub fn commute(&self, i: GeneratorId, j: GeneratorId) -> bool {
        self.m[i.index() * self.size + j.index()] == 2
    }

    /// Label-3 bonds as `(i, j)` with `i < j`, sorted.
    pub fn bonds(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.size {
            for j in i + 1..self.size {
                if self.m[i * self.size + j] == 3 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn degree(&self, i: GeneratorId) -> usize {
        self.generators().filter(|&j| self.bonded(i, j)).count()
    }
}

/// Text form: the node count on the first line, then one `i j 3` line per
/// bond. Blank lines and `#` comments are ignored.
impl fmt::Display for CoxeterGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.size)?;
        for (i, j) in self.bonds() {
            writeln!(f, "{i} {j} 3")?;
        }
        Ok(())
    }
}

impl FromStr for CoxeterGraph {
    type Err = CoxeterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syntax = |line: usize, msg: &str| CoxeterError::Syntax {
            line,
            msg: msg.to_string(),
        };
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (first, head) = lines
            .next()
            .ok_or_else(|| syntax(1, "missing node count"))?;
        let size: usize = head
            .parse()
            .map_err(|_| syntax(first, "node count must be an integer"))?;
        let mut g = Self::discrete(size)?;
        for (no, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(syntax(no, "expected `i j label`"));
            }
            let num = |t: &str| {
                t.parse::<usize>()
                    .map_err(|_| syntax(no, "expected a number"))
            };
            let (i, j, label) = (num(fields[0])?, num(fields[1])?, num(fields[2])?);
            g.set_label(i, j, u32::try_from(label).unwrap_or(u32::MAX))?;
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: u8) -> GeneratorId {
        GeneratorId(i)
    }

    #[test]
    fn affine_d4_bonds() {
        let d4 = CoxeterGraph::affine_d(2).unwrap();
        assert_eq!(d4.size(), 5);
        assert_eq!(d4.bonds(), vec![(0, 2), (1, 2), (2, 3), (2, 4)]);
        assert_eq!(d4.label(g(0), g(1)).unwrap(), 2);
    }

    #[test]
    fn affine_d5_bonds() {
        let d5 = CoxeterGraph::affine_d(3).unwrap();
        assert_eq!(d5.bonds(), vec![(0, 2), (1, 2), (2, 3), (3, 4), (3, 5)]);
    }

    #[test]
    fn adjacency_queries() {
        let d4 = CoxeterGraph::affine_d(2).unwrap();
        assert!(d4.adjacent(g(2), g(3)).unwrap());
        assert!(!d4.adjacent(g(0), g(1)).unwrap());
        assert!(!d4.adjacent(g(3), g(4)).unwrap());
        assert!(d4.adjacent(g(0), g(5)).is_err());
        assert!(d4.adjacent(g(2), g(2)).is_err());
    }

    #[test]
    fn small_rank_rejected() {
        assert_eq!(
            CoxeterGraph::affine_d(1),
            Err(CoxeterError::RankTooSmall(1))
        );
    }

    #[test]
    fn text_round_trip() {
        let d5 = CoxeterGraph::affine_d(3).unwrap();
        let back: CoxeterGraph = d5.to_string().parse().unwrap();
        assert_eq!(back, d5);
    }

    #[test]
    fn text_errors() {
        assert!("".parse::<CoxeterGraph>().is_err());
        assert!("3\n0 1".parse::<CoxeterGraph>().is_err());
        assert!("3\n0 3 3".parse::<CoxeterGraph>().is_err());
        assert!("3\n0 1 4".parse::<CoxeterGraph>().is_err());
        assert!("3 # nodes\n0 1 3\n\n1 2 3".parse::<CoxeterGraph>().is_ok());
    }
}
