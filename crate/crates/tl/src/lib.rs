//! The generalized Temperley-Lieb algebra of a simply laced Coxeter graph,
//! presented by generators `b_i` and the relations
//!
//! * `b_i b_i = d b_i`,
//! * `b_i b_j = b_j b_i` when `m_ij = 2`,
//! * `b_i b_j b_i = b_i` when `m_ij = 3`,
//!
//! and realized as a rewriting system over the monomial basis indexed by
//! fully commutative elements.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use tlwb_coxeter::CoxeterGraph;
use tlwb_fullcomm::{canonical_form, FcError, ParseWordError, Word};
use tlwb_ring::{DeltaPoly, ParsePolyError};

/// One of the two length-decreasing rewriting rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// `s s -> s`, contributing a factor `d`.
    Square,
    /// `s t s -> s` for bonded `s, t`.
    Braid,
}

/// A rule application site in `w` itself. `first` and `last` are
/// consecutive occurrences of one letter `s`; for a braid, `middle` is the
/// only letter between them that does not commute with `s`. Commuting the
/// two copies of `s` together exposes the factor `s s` or `s t s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Site {
    pub first: usize,
    pub middle: Option<usize>,
    pub last: usize,
    pub rule: Rule,
}

impl Site {
    fn apply(&self, w: &Word) -> Word {
        let letters = w
            .letters()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != self.last && Some(i) != self.middle)
            .map(|(_, &x)| x)
            .collect();
        Word::new(letters)
    }
}

/// Every rule application available anywhere in the commutation class of
/// `w`, squares first, each kind ordered by position.
pub fn sites(w: &Word, g: &CoxeterGraph) -> Result<Vec<Site>, FcError> {
    w.validate(g)?;
    let l = w.letters();
    let (mut squares, mut braids) = (Vec::new(), Vec::new());
    for first in 0..l.len() {
        let Some(last) = (first + 1..l.len()).find(|&j| l[j] == l[first]) else {
            continue;
        };
        let blocking: Vec<usize> = (first + 1..last)
            .filter(|&j| g.bonded(l[j], l[first]))
            .collect();
        match blocking[..] {
            [] => squares.push(Site {
                first,
                middle: None,
                last,
                rule: Rule::Square,
            }),
            [t] => braids.push(Site {
                first,
                middle: Some(t),
                last,
                rule: Rule::Braid,
            }),
            _ => {}
        }
    }
    squares.extend(braids);
    Ok(squares)
}

/// Rewrites `w` to normal form, returning the accumulated power of `d`
/// and the canonical form of the resulting fully commutative word.
///
/// Squares are removed before braids, always at the leftmost site.
pub fn reduce_word(w: &Word, g: &CoxeterGraph) -> Result<(DeltaPoly, Word), FcError> {
    reduce_word_with(w, g, &mut |_| 0)
}

/// As [`reduce_word`], with `choose(n)` picking which of the `n`
/// available sites to rewrite next.
pub fn reduce_word_with(
    w: &Word,
    g: &CoxeterGraph,
    choose: &mut dyn FnMut(usize) -> usize,
) -> Result<(DeltaPoly, Word), FcError> {
    let mut cur = w.clone();
    let mut squares = 0;
    loop {
        let found = sites(&cur, g)?;
        if found.is_empty() {
            break;
        }
        let site = &found[choose(found.len()) % found.len()];
        if site.rule == Rule::Square {
            squares += 1;
        }
        cur = site.apply(&cur);
    }
    Ok((DeltaPoly::delta_pow(squares), canonical_form(&cur, g)?))
}

/// Product of two basis monomials.
pub fn mono_mul(v: &Word, w: &Word, g: &CoxeterGraph) -> Result<(DeltaPoly, Word), FcError> {
    reduce_word(&v.concat(w), g)
}

/// A finite linear combination of basis monomials `b_w` with coefficients
/// in `Z[d]`. Keys are canonical fully commutative words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TlElement {
    terms: BTreeMap<Word, DeltaPoly>,
}

impl TlElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit `b_()`.
    pub fn one() -> Self {
        Self::monomial(Word::empty(), DeltaPoly::one())
    }

    /// `c * b_w` for a word already in canonical form.
    pub fn monomial(w: Word, c: DeltaPoly) -> Self {
        let mut e = Self::zero();
        e.add_term(w, &c);
        e
    }

    /// The image of an arbitrary word `b_{i1} ... b_{ik}`.
    pub fn from_word(w: &Word, g: &CoxeterGraph) -> Result<Self, FcError> {
        let (c, u) = reduce_word(w, g)?;
        Ok(Self::monomial(u, c))
    }

    pub fn terms(&self) -> &BTreeMap<Word, DeltaPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: &DeltaPoly) {
        let slot = self.terms.entry(w).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &DeltaPoly) -> Self {
        let mut out = Self::zero();
        for (w, v) in &self.terms {
            out.add_term(w.clone(), &(v * c));
        }
        out
    }

    /// Bilinear extension of [`mono_mul`].
    pub fn mul(&self, other: &Self, g: &CoxeterGraph) -> Result<Self, FcError> {
        let mut out = Self::zero();
        for (v, a) in &self.terms {
            for (w, b) in &other.terms {
                let (c, u) = mono_mul(v, w, g)?;
                out.add_term(u, &(&(a * b) * &c));
            }
        }
        Ok(out)
    }
}

/// Terms print as `<poly> * [<word>]` joined by ` + `, in shortlex order of
/// the words; coefficients with several terms are parenthesized.
impl fmt::Display for TlElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.coeffs().iter().filter(|x| !x.is_zero()).count() > 1 {
                write!(f, "({c}) * [{w}]")?;
            } else {
                write!(f, "{c} * [{w}]")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseElementError {
    #[error("invalid element at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid coefficient in term at byte {at}: {source}")]
    Coeff { at: usize, source: ParsePolyError },
    #[error("invalid word in term at byte {at}: {source}")]
    Word { at: usize, source: ParseWordError },
}

fn split_top_level(s: &str) -> Result<Vec<(usize, &str)>, ParseElementError> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(ParseElementError::Syntax {
                        pos: i,
                        msg: "unbalanced bracket".into(),
                    });
                }
            }
            '+' if depth == 0 => {
                parts.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(ParseElementError::Syntax {
            pos: s.len(),
            msg: "unclosed bracket".into(),
        });
    }
    parts.push((start, &s[start..]));
    Ok(parts)
}

/// Parses the printed form. Words are taken verbatim; use
/// [`TlElement::canonicalize`] to bring arbitrary words to normal form.
impl FromStr for TlElement {
    type Err = ParseElementError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Self::zero();
        if s.trim() == "0" {
            return Ok(out);
        }
        for (at, part) in split_top_level(s)? {
            let lead = at + part.len() - part.trim_start().len();
            let t = part.trim();
            let open = t.rfind('[').ok_or_else(|| ParseElementError::Syntax {
                pos: lead,
                msg: "expected `[word]`".into(),
            })?;
            if !t.ends_with(']') {
                return Err(ParseElementError::Syntax {
                    pos: lead + t.len(),
                    msg: "expected `]`".into(),
                });
            }
            let word: Word =
                t[open + 1..t.len() - 1]
                    .parse()
                    .map_err(|source| ParseElementError::Word {
                        at: lead + open + 1,
                        source,
                    })?;
            let head = t[..open].trim_end();
            let coeff = match head.strip_suffix('*') {
                Some(c) => {
                    let c = c.trim();
                    let c = c
                        .strip_prefix('(')
                        .and_then(|x| x.strip_suffix(')'))
                        .unwrap_or(c);
                    c.parse()
                        .map_err(|source| ParseElementError::Coeff { at: lead, source })?
                }
                None if head.is_empty() => DeltaPoly::one(),
                None => {
                    return Err(ParseElementError::Syntax {
                        pos: lead + head.len(),
                        msg: "expected `*`".into(),
                    })
                }
            };
            out.add_term(word, &coeff);
        }
        Ok(out)
    }
}

impl TlElement {
    /// Rewrites every key to normal form, folding in the produced scalars.
    pub fn canonicalize(&self, g: &CoxeterGraph) -> Result<Self, FcError> {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let (p, u) = reduce_word(w, g)?;
            out.add_term(u, &(c * &p));
        }
        Ok(out)
    }
}
