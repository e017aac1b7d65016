//! Local rewrite rules for decorated diagrams, loaded from text.
//!
//! One rule per line, `pattern -> replacement @ coeff`. A pattern is one
//! or more terms joined by `&`, each matching a distinct curve:
//!
//! * `loop[w]` matches a whole loop whose word is `w` up to rotation and
//!   reflection,
//! * `edge[w]` matches `w` as consecutive decorations on an edge, read in
//!   either direction,
//! * `part[w]` matches `w` as consecutive decorations on an edge or,
//!   cyclically, on a loop.
//!
//! All decorations matched by a pattern must be vertically adjacent, i.e.
//! form a convex set in the height order. The replacement has one term per
//! pattern term, of the same kind with a word that is a subsequence of the
//! pattern word, or `()` to delete a matched loop. Blank lines and `#`
//! comments are ignored.

use std::fmt;
use std::str::FromStr;

use tlwb_ring::DeltaPoly;

use crate::Symbol;

/// The rule set shipped with the crate.
pub const DEFAULT_RULES: &str = include_str!("../rules/default.rules");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TermKind {
    Loop,
    Edge,
    Part,
}

impl TermKind {
    fn name(self) -> &'static str {
        match self {
            TermKind::Loop => "loop",
            TermKind::Edge => "edge",
            TermKind::Part => "part",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub kind: TermKind,
    pub word: Vec<Symbol>,
}

/// What happens to the curve matched by one pattern term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Replacement {
    /// Keep the decorations at these pattern positions, delete the others.
    Keep(Vec<usize>),
    /// Remove the matched loop entirely.
    DeleteLoop,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub pattern: Vec<Term>,
    pub replacement: Vec<Replacement>,
    pub coeff: DeltaPoly,
}

impl Rule {
    fn measure_drop(&self) -> (i64, i64) {
        let mut loops = 0i64;
        let mut decorations = 0i64;
        for (t, r) in self.pattern.iter().zip(&self.replacement) {
            match r {
                Replacement::DeleteLoop => {
                    loops += 1;
                    decorations += t.word.len() as i64;
                }
                Replacement::Keep(k) => decorations += (t.word.len() - k.len()) as i64,
            }
        }
        (loops, decorations)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RuleSetError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: replacement term {term} is not obtained by deleting decorations")]
    NotSubsequence { line: usize, term: usize },
    #[error("line {line}: rule does not decrease (loop count, decoration count)")]
    NonTerminating { line: usize },
}

/// An ordered list of rules; earlier rules are tried first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleSet {
    pub rules: Vec<Rule>,
}

impl Default for RuleSet {
    fn default() -> Self {
        DEFAULT_RULES.parse().expect("shipped rules are valid")
    }
}

fn parse_word(s: &str) -> Option<Vec<Symbol>> {
    s.chars().map(Symbol::from_char).collect()
}

fn parse_term(s: &str) -> Option<Term> {
    let s = s.trim();
    let open = s.find('[')?;
    let body = s[open + 1..].strip_suffix(']')?;
    let kind = match s[..open].trim() {
        "loop" => TermKind::Loop,
        "edge" => TermKind::Edge,
        "part" => TermKind::Part,
        _ => return None,
    };
    Some(Term {
        kind,
        word: parse_word(body.trim())?,
    })
}

/// Leftmost embedding of `sub` into `word` as a subsequence.
fn embed(sub: &[Symbol], word: &[Symbol]) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(sub.len());
    let mut i = 0;
    for s in sub {
        while i < word.len() && word[i] != *s {
            i += 1;
        }
        if i == word.len() {
            return None;
        }
        out.push(i);
        i += 1;
    }
    Some(out)
}

fn parse_rule(line: usize, text: &str) -> Result<Rule, RuleSetError> {
    let syntax = |msg: &str| RuleSetError::Syntax {
        line,
        msg: msg.to_string(),
    };
    let (lhs, rest) = text
        .split_once("->")
        .ok_or_else(|| syntax("expected `->`"))?;
    let (rhs, coeff) = rest
        .split_once('@')
        .ok_or_else(|| syntax("expected `@ coeff`"))?;
    let coeff: DeltaPoly = coeff
        .trim()
        .parse()
        .map_err(|e| syntax(&format!("coefficient: {e}")))?;
    let pattern: Vec<Term> = lhs
        .split('&')
        .map(|t| parse_term(t).ok_or_else(|| syntax(&format!("bad pattern term {:?}", t.trim()))))
        .collect::<Result<_, _>>()?;
    let rhs_terms: Vec<&str> = rhs.split('&').map(str::trim).collect();
    if rhs_terms.len() != pattern.len() {
        return Err(syntax("replacement needs one term per pattern term"));
    }
    let mut replacement = Vec::new();
    for (i, (p, r)) in pattern.iter().zip(&rhs_terms).enumerate() {
        if p.kind != TermKind::Loop && p.word.is_empty() {
            return Err(syntax(
                "edge and part patterns need at least one decoration",
            ));
        }
        if *r == "()" {
            if p.kind != TermKind::Loop {
                return Err(syntax("only loop terms can be deleted"));
            }
            replacement.push(Replacement::DeleteLoop);
            continue;
        }
        let t = parse_term(r).ok_or_else(|| syntax(&format!("bad replacement term {r:?}")))?;
        if t.kind != p.kind {
            return Err(syntax("replacement term kind differs from the pattern"));
        }
        let keep =
            embed(&t.word, &p.word).ok_or(RuleSetError::NotSubsequence { line, term: i + 1 })?;
        replacement.push(Replacement::Keep(keep));
    }
    let rule = Rule {
        pattern,
        replacement,
        coeff,
    };
    if rule.measure_drop() <= (0, 0) {
        return Err(RuleSetError::NonTerminating { line });
    }
    Ok(rule)
}

impl FromStr for RuleSet {
    type Err = RuleSetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut rules = Vec::new();
        for (i, raw) in s.lines().enumerate() {
            let text = raw.split('#').next().unwrap_or("").trim();
            if !text.is_empty() {
                rules.push(parse_rule(i + 1, text)?);
            }
        }
        Ok(RuleSet { rules })
    }
}

fn write_word(f: &mut fmt::Formatter<'_>, w: &[Symbol]) -> fmt::Result {
    w.iter().try_for_each(|s| write!(f, "{}", s.as_char()))
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.pattern.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{}[", t.kind.name())?;
            write_word(f, &t.word)?;
            f.write_str("]")?;
        }
        f.write_str(" -> ")?;
        for (i, (t, r)) in self.pattern.iter().zip(&self.replacement).enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            match r {
                Replacement::DeleteLoop => f.write_str("()")?,
                Replacement::Keep(k) => {
                    write!(f, "{}[", t.kind.name())?;
                    let w: Vec<Symbol> = k.iter().map(|&j| t.word[j]).collect();
                    write_word(f, &w)?;
                    f.write_str("]")?;
                }
            }
        }
        write!(f, " @ {}", self.coeff)
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rules.iter().try_for_each(|r| writeln!(f, "{r}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_rules_load() {
        let rs = RuleSet::default();
        assert_eq!(rs.rules.len(), 5);
        assert_eq!(rs.rules[0].to_string(), "loop[] -> () @ d");
    }

    #[test]
    fn printing_round_trips() {
        let rs = RuleSet::default();
        let again: RuleSet = rs.to_string().parse().unwrap();
        assert_eq!(again, rs);
    }

    #[test]
    fn non_decreasing_rules_are_rejected() {
        assert_eq!(
            "loop[b] -> loop[b] @ 1".parse::<RuleSet>(),
            Err(RuleSetError::NonTerminating { line: 1 })
        );
        assert!(matches!(
            "part[b] -> part[bb] @ 1".parse::<RuleSet>(),
            Err(RuleSetError::NotSubsequence { .. })
        ));
        assert!(matches!(
            "part[bo] -> part[ob] @ 1".parse::<RuleSet>(),
            Err(RuleSetError::NotSubsequence { .. })
        ));
    }

    #[test]
    fn syntax_errors() {
        for bad in [
            "loop[] ()",
            "loop[] -> () d",
            "loop[x] -> () @ 1",
            "edge[] -> edge[] @ 1",
            "edge[b] -> () @ 1",
            "loop[b] -> edge[] @ 1",
            "loop[b] & part[b] -> loop[b] @ 1",
            "loop[] -> () @ q",
        ] {
            assert!(bad.parse::<RuleSet>().is_err(), "{bad}");
        }
    }
}
