//! Words over Coxeter generators, commutation classes, heaps, canonical
//! forms and breadth-first enumeration of fully commutative elements.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use tlwb_coxeter::{CoxeterGraph, GeneratorId};

/// Default bound on the size of a commutation class or enumeration level.
pub const DEFAULT_CLASS_CAP: usize = 1_000_000;

static CLASS_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_CLASS_CAP);

/// Sets the process-wide cap on class and frontier sizes.
pub fn set_class_cap(cap: usize) {
    CLASS_CAP.store(cap.max(1), AtomicOrdering::Relaxed);
}

pub fn class_cap() -> usize {
    CLASS_CAP.load(AtomicOrdering::Relaxed)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FcError {
    #[error("set size exceeded the cap of {cap} words")]
    ResourceCap { cap: usize },
    #[error("letter {letter} is not a generator of a graph with {size} nodes")]
    InvalidLetter { letter: GeneratorId, size: usize },
}

/// A finite sequence of generators.
///
/// Words are ordered shortlex: by length, then lexicographically. Inside a
/// commutation class all words have the same length, so the minimum of a
/// class is its lexicographic minimum.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<GeneratorId>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn new(letters: Vec<GeneratorId>) -> Self {
        Self(letters)
    }

    pub fn from_indices(indices: &[u8]) -> Self {
        Self(indices.iter().map(|&i| GeneratorId(i)).collect())
    }

    pub fn letters(&self) -> &[GeneratorId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, s: GeneratorId) {
        self.0.push(s);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn into_letters(self) -> Vec<GeneratorId> {
        self.0
    }

    /// Checks every letter against `g`.
    pub fn validate(&self, g: &CoxeterGraph) -> Result<(), FcError> {
        match self.0.iter().find(|s| !g.contains(**s)) {
            Some(&letter) => Err(FcError::InvalidLetter {
                letter,
                size: g.size(),
            }),
            None => Ok(()),
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid word at byte {pos}: {msg}")]
pub struct ParseWordError {
    pub pos: usize,
    pub msg: String,
}

/// Comma separated generator indices, e.g. `0,2,1`. The empty string (or
/// one made of whitespace) is the empty word.
impl FromStr for Word {
    type Err = ParseWordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        let mut pos = 0;
        for field in s.split(',') {
            let t = field.trim();
            let at = pos + (field.len() - field.trim_start().len());
            let i: u8 = t.parse().map_err(|_| ParseWordError {
                pos: at,
                msg: format!("expected a generator index in 0..=255, found {t:?}"),
            })?;
            letters.push(GeneratorId(i));
            pos += field.len() + 1;
        }
        Ok(Word(letters))
    }
}

/// Every word reachable from `w` by swapping adjacent commuting letters.
pub fn commutation_class(w: &Word, g: &CoxeterGraph) -> Result<BTreeSet<Word>, FcError> {
    commutation_class_capped(w, g, class_cap())
}

/// As [`commutation_class`] with an explicit cap.
pub fn commutation_class_capped(
    w: &Word,
    g: &CoxeterGraph,
    cap: usize,
) -> Result<BTreeSet<Word>, FcError> {
    w.validate(g)?;
    let mut seen = BTreeSet::new();
    seen.insert(w.clone());
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(cur) = queue.pop_front() {
        for i in 1..cur.len() {
            let (a, b) = (cur.0[i - 1], cur.0[i]);
            if a != b && g.commute(a, b) {
                let mut next = cur.clone();
                next.0.swap(i - 1, i);
                if !seen.contains(&next) {
                    if seen.len() >= cap {
                        return Err(FcError::ResourceCap { cap });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(seen)
}

/// Outcome of the fully commutative test, with a witnessing class member
/// for the negative cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FcStatus {
    Fc,
    NotFc { witness: Word },
    NotReduced { witness: Word },
}

fn has_square(w: &Word) -> bool {
    w.0.windows(2).any(|p| p[0] == p[1])
}

fn has_braid(w: &Word, g: &CoxeterGraph) -> bool {
    w.0.windows(3).any(|p| p[0] == p[2] && g.bonded(p[0], p[1]))
}

/// Classifies `w` by scanning its whole commutation class for a factor
/// `s s` or a factor `s t s` with `m_st = 3`.
///
/// The answer is about the word: a non-reduced word whose class avoids
/// both factors is still reported as `Fc`.
pub fn is_fc_reduced(w: &Word, g: &CoxeterGraph) -> Result<FcStatus, FcError> {
    let class = commutation_class(w, g)?;
    if let Some(x) = class.iter().find(|x| has_square(x)) {
        return Ok(FcStatus::NotReduced { witness: x.clone() });
    }
    if let Some(x) = class.iter().find(|x| has_braid(x, g)) {
        return Ok(FcStatus::NotFc { witness: x.clone() });
    }
    Ok(FcStatus::Fc)
}

/// The heap of a word: positions `1..=len` labelled by letters, ordered by
/// the transitive closure of "earlier and equal or bonded".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Heap {
    labels: Vec<GeneratorId>,
    less: Vec<Vec<bool>>,
    covers: BTreeSet<(usize, usize)>,
}

impl Heap {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Label of 1-based position `i`.
    pub fn label(&self, i: usize) -> GeneratorId {
        self.labels[i - 1]
    }

    pub fn labels(&self) -> &[GeneratorId] {
        &self.labels
    }

    /// Strict order between 1-based positions.
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.less[i - 1][j - 1]
    }

    /// Hasse relation as 1-based pairs.
    pub fn covers(&self) -> &BTreeSet<(usize, usize)> {
        &self.covers
    }

    /// Labelled poset isomorphism.
    ///
    /// Equally labelled elements form a chain, so the only candidate
    /// bijection matches the k-th occurrence of each label.
    pub fn isomorphic(&self, other: &Heap) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let occurrence_map = |h: &Heap| {
            let mut keys: Vec<((GeneratorId, usize), usize)> = Vec::with_capacity(h.len());
            let mut count = std::collections::HashMap::new();
            for (i, &s) in h.labels.iter().enumerate() {
                let c = count.entry(s).or_insert(0usize);
                keys.push(((s, *c), i));
                *c += 1;
            }
            keys.sort();
            keys
        };
        let (a, b) = (occurrence_map(self), occurrence_map(other));
        if a.iter().map(|x| x.0).ne(b.iter().map(|x| x.0)) {
            return false;
        }
        let pa: Vec<usize> = a.iter().map(|x| x.1).collect();
        let pb: Vec<usize> = b.iter().map(|x| x.1).collect();
        (0..pa.len())
            .all(|x| (0..pa.len()).all(|y| self.less[pa[x]][pa[y]] == other.less[pb[x]][pb[y]]))
    }
}

pub fn heap_of(w: &Word, g: &CoxeterGraph) -> Result<Heap, FcError> {
    w.validate(g)?;
    let n = w.len();
    let mut less = vec![vec![false; n]; n];
    for j in 0..n {
        for i in (0..j).rev() {
            let (a, b) = (w.0[i], w.0[j]);
            if a == b || g.bonded(a, b) {
                less[i][j] = true;
                for row in &mut less[..i] {
                    if row[i] {
                        row[j] = true;
                    }
                }
            }
        }
    }
    let mut covers = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            if less[i][j] && !(i + 1..j).any(|m| less[i][m] && less[m][j]) {
                covers.insert((i + 1, j + 1));
            }
        }
    }
    Ok(Heap {
        labels: w.0.clone(),
        less,
        covers,
    })
}

/// The lexicographically smallest word in the commutation class of `w`.
///
/// The class is the set of linear extensions of the heap, and equally
/// labelled elements are comparable, so greedily taking the smallest
/// available label yields the minimum without listing the class.
pub fn canonical_form(w: &Word, g: &CoxeterGraph) -> Result<Word, FcError> {
    let heap = heap_of(w, g)?;
    let n = heap.len();
    let mut preds: Vec<usize> = (0..n)
        .map(|j| (0..n).filter(|&i| heap.less[i][j]).count())
        .collect();
    let mut done = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&i| !done[i] && preds[i] == 0)
            .min_by_key(|&i| (heap.labels[i], i))
            .expect("a finite poset has a minimal element");
        done[next] = true;
        out.push(heap.labels[next]);
        for (p, &after) in preds.iter_mut().zip(&heap.less[next]) {
            if after {
                *p -= 1;
            }
        }
    }
    Ok(Word(out))
}

/// Canonical forms of all fully commutative elements of length at most
/// `max_len`, grouped by length and sorted within each group.
pub fn enumerate_fc(g: &CoxeterGraph, max_len: usize) -> Result<Vec<Vec<Word>>, FcError> {
    let cap = class_cap();
    let mut levels = vec![vec![Word::empty()]];
    for _ in 0..max_len {
        let mut next = BTreeSet::new();
        for w in levels.last().unwrap() {
            let class = commutation_class(w, g)?;
            for s in g.generators() {
                if class.iter().any(|x| x.0.last() == Some(&s)) {
                    continue;
                }
                let mut ws = w.clone();
                ws.push(s);
                if is_fc_reduced(&ws, g)? == FcStatus::Fc {
                    next.insert(canonical_form(&ws, g)?);
                    if next.len() > cap {
                        return Err(FcError::ResourceCap { cap });
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next.into_iter().collect());
    }
    Ok(levels)
}
