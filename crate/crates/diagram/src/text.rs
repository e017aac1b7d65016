//! Text form of diagrams.
//!
//! ```text
//! k=4 | n1-n2:b | n3-s3: | n4-s4: | s1-s2:b | loop:bo
//! ```
//!
//! The first field gives the number of strands, then one field per edge
//! with its decorations read from the first node to the second, then one
//! field per loop. Decorations may carry explicit heights (`b0o3`); without
//! them heights increase in reading order. Either every decoration has a
//! height or none does. Whitespace inside fields is ignored.

use std::fmt;
use std::str::FromStr;

use crate::{canonicalize, Decoration, Diagram, DiagramError, Edge, Node, RawDiagram, Symbol};

/// Largest strand count accepted by the parser.
pub const MAX_STRANDS: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseDiagramError {
    #[error("field {field}: {msg}")]
    Syntax { field: usize, msg: String },
    #[error(transparent)]
    Invalid(#[from] DiagramError),
}

fn syntax(field: usize, msg: impl Into<String>) -> ParseDiagramError {
    ParseDiagramError::Syntax {
        field,
        msg: msg.into(),
    }
}

fn parse_node(field: usize, s: &str) -> Result<Node, ParseDiagramError> {
    let (side, num) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
    let i: usize = num
        .parse()
        .map_err(|_| syntax(field, format!("bad node {s:?}")))?;
    match side {
        "n" => Ok(Node::North(i)),
        "s" => Ok(Node::South(i)),
        _ => Err(syntax(field, format!("bad node {s:?}"))),
    }
}

/// Decorations with their optional explicit heights.
fn parse_word(field: usize, s: &str) -> Result<Vec<(Symbol, Option<u32>)>, ParseDiagramError> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        let sym = Symbol::from_char(c)
            .ok_or_else(|| syntax(field, format!("unknown decoration {c:?}")))?;
        let mut digits = String::new();
        while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
            digits.push(*d);
            chars.next();
        }
        let height = if digits.is_empty() {
            None
        } else {
            Some(
                digits
                    .parse()
                    .map_err(|_| syntax(field, format!("height {digits} is too large")))?,
            )
        };
        out.push((sym, height));
    }
    Ok(out)
}

/// Parses the text form without validating the matching.
pub fn parse_raw(s: &str) -> Result<RawDiagram, ParseDiagramError> {
    let fields: Vec<String> = s
        .split('|')
        .map(|f| f.split_whitespace().collect())
        .collect();
    let k: usize = fields[0]
        .strip_prefix("k=")
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| syntax(1, "expected `k=<strands>`"))?;
    if k > MAX_STRANDS {
        return Err(syntax(
            1,
            format!("at most {MAX_STRANDS} strands are supported"),
        ));
    }
    let mut edges = Vec::new();
    let mut loops = Vec::new();
    let mut explicit = None;
    let mut next_height = 0u32;
    for (idx, f) in fields.iter().enumerate().skip(1) {
        let field = idx + 1;
        let (head, body) = f
            .split_once(':')
            .ok_or_else(|| syntax(field, "expected `:`"))?;
        let parsed = parse_word(field, body)?;
        let mut word = Vec::with_capacity(parsed.len());
        for (sym, h) in parsed {
            if *explicit.get_or_insert(h.is_some()) != h.is_some() {
                return Err(syntax(
                    field,
                    "either all decorations have heights or none do",
                ));
            }
            let height = h.unwrap_or_else(|| {
                next_height += 1;
                next_height - 1
            });
            word.push(Decoration::new(sym, height));
        }
        if head == "loop" {
            loops.push(word);
        } else {
            let (a, b) = head
                .split_once('-')
                .ok_or_else(|| syntax(field, "expected `<node>-<node>`"))?;
            edges.push(Edge::new(
                parse_node(field, a)?,
                parse_node(field, b)?,
                word,
            ));
        }
    }
    Ok(RawDiagram { k, edges, loops })
}

fn render(raw: &RawDiagram, heights: bool) -> String {
    let word = |w: &[Decoration]| -> String {
        w.iter()
            .map(|x| {
                if heights {
                    format!("{}{}", x.symbol.as_char(), x.height)
                } else {
                    x.symbol.as_char().to_string()
                }
            })
            .collect()
    };
    let mut out = format!("k={}", raw.k);
    for e in &raw.edges {
        out.push_str(&format!(" | {}-{}:{}", e.a, e.b, word(&e.word)));
    }
    for l in &raw.loops {
        out.push_str(&format!(" | loop:{}", word(l)));
    }
    out
}

impl fmt::Display for Diagram {
    /// Heights are written only when reading order does not recover them.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let plain = render(&self.0, false);
        let same = parse_raw(&plain)
            .ok()
            .and_then(|r| canonicalize(r).ok())
            .is_some_and(|d| d == *self);
        if same {
            f.write_str(&plain)
        } else {
            f.write_str(&render(&self.0, true))
        }
    }
}

impl FromStr for Diagram {
    type Err = ParseDiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(canonicalize(parse_raw(s)?)?)
    }
}
