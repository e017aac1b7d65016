//! Linear combinations of diagrams with coefficients in `Z[d]`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use tlwb_ring::{DeltaPoly, ParsePolyError};

use crate::text::ParseDiagramError;
use crate::{concat, reduce, Diagram, DiagramError, RuleSet};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiagramElement {
    terms: BTreeMap<Diagram, DeltaPoly>,
}

impl DiagramElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(d: Diagram, c: DeltaPoly) -> Self {
        let mut e = Self::zero();
        e.add_term(d, &c);
        e
    }

    pub fn terms(&self) -> &BTreeMap<Diagram, DeltaPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, d: Diagram, c: &DeltaPoly) {
        let slot = self.terms.entry(d).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &DeltaPoly) -> Self {
        let mut out = Self::zero();
        for (d, v) in &self.terms {
            out.add_term(d.clone(), &(v * c));
        }
        out
    }

    /// Bilinear product: concatenate, then reduce with `rules`.
    pub fn mul(&self, other: &Self, rules: &RuleSet) -> Result<Self, DiagramError> {
        let mut out = Self::zero();
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                let (c, z) = reduce(concat(x.raw(), y.raw())?, rules)?;
                out.add_term(z, &(&(a * b) * &c));
            }
        }
        Ok(out)
    }

    /// Reduces every term, folding in the produced scalars.
    pub fn reduced(&self, rules: &RuleSet) -> Result<Self, DiagramError> {
        let mut out = Self::zero();
        for (d, c) in &self.terms {
            let (p, z) = reduce(d.raw().clone(), rules)?;
            out.add_term(z, &(c * &p));
        }
        Ok(out)
    }
}

/// Terms print as `<poly> * {<diagram>}` joined by ` + `.
impl fmt::Display for DiagramElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.to_string().contains(' ') {
                write!(f, "({c}) * {{{d}}}")?;
            } else {
                write!(f, "{c} * {{{d}}}")?;
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
    #[error("invalid diagram in term at byte {at}: {source}")]
    Diagram {
        at: usize,
        source: ParseDiagramError,
    },
}

fn split_top_level(s: &str) -> Result<Vec<(usize, &str)>, ParseElementError> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '{' => depth += 1,
            ')' | '}' => {
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

/// Parses the printed form. Diagrams are canonicalized but not reduced.
impl FromStr for DiagramElement {
    type Err = ParseElementError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Self::zero();
        if s.trim() == "0" {
            return Ok(out);
        }
        for (at, part) in split_top_level(s)? {
            let lead = at + part.len() - part.trim_start().len();
            let t = part.trim();
            let open = t.find('{').ok_or_else(|| ParseElementError::Syntax {
                pos: lead,
                msg: "expected `{diagram}`".into(),
            })?;
            if !t.ends_with('}') {
                return Err(ParseElementError::Syntax {
                    pos: lead + t.len(),
                    msg: "expected `}`".into(),
                });
            }
            let d: Diagram =
                t[open + 1..t.len() - 1]
                    .parse()
                    .map_err(|source| ParseElementError::Diagram {
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
            out.add_term(d, &coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simple_diagram;

    #[test]
    fn product_of_generators() {
        let rules = RuleSet::default();
        let d0 = DiagramElement::monomial(simple_diagram(2, 0).unwrap(), DeltaPoly::one());
        let sq = d0.mul(&d0, &rules).unwrap();
        assert_eq!(sq, d0.scale(&DeltaPoly::delta()));
    }

    #[test]
    fn print_and_parse() {
        let d0 = simple_diagram(2, 0).unwrap();
        let d1 = simple_diagram(2, 1).unwrap();
        let mut e = DiagramElement::monomial(d0, "1 + d".parse().unwrap());
        e.add_term(d1, &DeltaPoly::from_int(-2));
        let text = e.to_string();
        assert!(text.contains("(1 + d) * {k=4"));
        assert_eq!(text.parse::<DiagramElement>().unwrap(), e);
        assert_eq!(
            "0".parse::<DiagramElement>().unwrap(),
            DiagramElement::zero()
        );
    }

    #[test]
    fn cancellation() {
        let d = DiagramElement::monomial(simple_diagram(2, 3).unwrap(), DeltaPoly::one());
        assert!(d.add(&d.scale(&DeltaPoly::from_int(-1))).is_zero());
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "{",
            "2 * k=4",
            "2 {k=2 | n1-s1: | n2-s2:}",
            "q * {k=2 | n1-s1: | n2-s2:}",
            "1 * {k=2 | n1-s2: | n2-s1:}",
        ] {
            assert!(bad.parse::<DiagramElement>().is_err(), "{bad}");
        }
    }
}
