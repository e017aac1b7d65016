//! ASCII and SVG pictures of diagrams.
//!
//! ASCII layout, top to bottom: node labels, north cups by nesting depth,
//! one row per decoration on through strands, one row per sideways step
//! of a through strand, south caps, node labels, then one line `(word)`
//! per loop. `*` marks `b` and `o` marks `o`, starting at the west end of
//! a cup or cap.

use std::fmt::Write;

use tlwb_diagram::{Diagram, Edge, Node, Symbol};

fn mark(s: Symbol) -> char {
    match s {
        Symbol::Dot => '*',
        Symbol::Ring => 'o',
    }
}

/// Arcs on one face as `(west, east, word read west to east, depth)`,
/// where innermost arcs have depth 1.
fn arcs(d: &Diagram, north: bool) -> Vec<(usize, usize, Vec<Symbol>, usize)> {
    let mut out: Vec<(usize, usize, Vec<Symbol>, usize)> = d
        .edges()
        .iter()
        .filter(|e| !e.is_through() && e.a.is_north() == north)
        .map(|e| (e.a.index(), e.b.index(), e.symbols(), 0))
        .collect();
    out.sort_by_key(|a| a.1 - a.0);
    for i in 0..out.len() {
        let (a, b) = (out[i].0, out[i].1);
        let inner = out[..i]
            .iter()
            .filter(|x| a < x.0 && x.1 < b)
            .map(|x| x.3)
            .max()
            .unwrap_or(0);
        out[i].3 = inner + 1;
    }
    out
}

/// Through strands as `(north index, south index, word read north to south)`.
fn throughs(d: &Diagram) -> Vec<(usize, usize, Vec<Symbol>)> {
    d.edges()
        .iter()
        .filter(|e| e.is_through())
        .map(|e: &Edge| {
            let (top, bottom) = if e.a.is_north() {
                (e.a, e.b)
            } else {
                (e.b, e.a)
            };
            let mut w = e.symbols();
            if !e.a.is_north() {
                w.reverse();
            }
            (top.index(), bottom.index(), w)
        })
        .collect()
}

pub fn ascii(d: &Diagram) -> String {
    let k = d.k();
    let longest = d.edges().iter().map(|e| e.word.len()).max().unwrap_or(0);
    let gap = (longest + 2).max(4);
    let col = |i: usize| 1 + (i - 1) * gap;
    let width = col(k) + 2;
    let north = arcs(d, true);
    let south = arcs(d, false);
    let through = throughs(d);
    let rn = north.iter().map(|a| a.3).max().unwrap_or(0);
    let rs = south.iter().map(|a| a.3).max().unwrap_or(0);
    let band = through.iter().map(|t| t.2.len()).max().unwrap_or(0);
    // Right movers step first, eastmost first, then left movers westmost
    // first; this order never crosses two strands.
    let mut jogs: Vec<usize> = (0..through.len())
        .filter(|&i| through[i].1 > through[i].0)
        .rev()
        .collect();
    jogs.extend((0..through.len()).filter(|&i| through[i].1 < through[i].0));
    let height = (rn + band + jogs.len() + rs).max(1);
    let mut grid = vec![vec![' '; width]; height];
    let mut put = |r: usize, c: usize, ch: char| grid[r][c] = ch;

    for (a, b, w, depth) in &north {
        let r = depth - 1;
        for row in 0..r {
            put(row, col(*a), '|');
            put(row, col(*b), '|');
        }
        put(r, col(*a), '+');
        put(r, col(*b), '+');
        for c in col(*a) + 1..col(*b) {
            put(r, c, '-');
        }
        for (j, s) in w.iter().enumerate() {
            put(r, col(*a) + 1 + j, mark(*s));
        }
    }
    for (a, b, w, depth) in &south {
        let r = height - depth;
        for row in r + 1..height {
            put(row, col(*a), '|');
            put(row, col(*b), '|');
        }
        put(r, col(*a), '+');
        put(r, col(*b), '+');
        for c in col(*a) + 1..col(*b) {
            put(r, c, '-');
        }
        for (j, s) in w.iter().enumerate() {
            put(r, col(*a) + 1 + j, mark(*s));
        }
    }
    for (i, (top, bottom, w)) in through.iter().enumerate() {
        let step = jogs.iter().position(|&j| j == i).map(|p| rn + band + p);
        for row in 0..height {
            let c = match step {
                Some(s) if row > s => col(*bottom),
                _ => col(*top),
            };
            let ch = if row >= rn && row < rn + w.len() {
                mark(w[row - rn])
            } else {
                '|'
            };
            put(row, c, ch);
        }
        if let Some(s) = step {
            let (lo, hi) = (col(*top).min(col(*bottom)), col(*top).max(col(*bottom)));
            for c in lo..=hi {
                put(s, c, '-');
            }
            put(s, col(*top), '+');
            put(s, col(*bottom), '+');
        }
    }

    let mut labels = vec![' '; width];
    for i in 1..=k {
        for (j, ch) in i.to_string().chars().enumerate() {
            if col(i) + j < width {
                labels[col(i) + j] = ch;
            }
        }
    }
    let line = |cs: &[char]| cs.iter().collect::<String>().trim_end().to_string();
    let mut out = String::new();
    writeln!(out, "{}", line(&labels)).unwrap();
    for row in &grid {
        writeln!(out, "{}", line(row)).unwrap();
    }
    writeln!(out, "{}", line(&labels)).unwrap();
    for l in d.loops() {
        let w: String = l.iter().map(|x| mark(x.symbol)).collect();
        writeln!(out, "({w})").unwrap();
    }
    out
}

const STEP: f64 = 40.0;

fn cubic(p: [(f64, f64); 4], t: f64) -> (f64, f64) {
    let u = 1.0 - t;
    let (a, b, c, e) = (u * u * u, 3.0 * u * u * t, 3.0 * u * t * t, t * t * t);
    (
        a * p[0].0 + b * p[1].0 + c * p[2].0 + e * p[3].0,
        a * p[0].1 + b * p[1].1 + c * p[2].1 + e * p[3].1,
    )
}

fn dot(out: &mut String, (x, y): (f64, f64), s: Symbol) {
    let fill = if s == Symbol::Dot { "black" } else { "white" };
    writeln!(
        out,
        r#"  <circle cx="{x:.1}" cy="{y:.1}" r="4" fill="{fill}" stroke="black"/>"#
    )
    .unwrap();
}

pub fn svg(d: &Diagram) -> String {
    let k = d.k();
    let top = 30.0;
    let bottom = top + STEP * (k as f64 + 1.0);
    let x = |i: usize| STEP * i as f64;
    let loops = d.loops();
    let width = x(k + 1) + STEP * 1.5 * loops.len() as f64;
    let height = bottom + 30.0;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    )
    .unwrap();
    writeln!(
        out,
        r#"  <rect x="{:.1}" y="{top:.1}" width="{:.1}" height="{:.1}" fill="none" stroke="gray"/>"#,
        STEP / 2.0,
        x(k),
        bottom - top
    )
    .unwrap();
    for e in d.edges() {
        let y = |v: Node| if v.is_north() { top } else { bottom };
        let (p0, p3) = ((x(e.a.index()), y(e.a)), (x(e.b.index()), y(e.b)));
        let (p1, p2) = if e.is_through() {
            let mid = (top + bottom) / 2.0;
            ((p0.0, mid), (p3.0, mid))
        } else {
            let depth = STEP * 0.6 * (e.b.index() - e.a.index()) as f64;
            let dir = if e.a.is_north() { 1.0 } else { -1.0 };
            ((p0.0, p0.1 + dir * depth), (p3.0, p3.1 + dir * depth))
        };
        writeln!(
            out,
            r#"  <path d="M {:.1} {:.1} C {:.1} {:.1}, {:.1} {:.1}, {:.1} {:.1}" fill="none" stroke="black"/>"#,
            p0.0, p0.1, p1.0, p1.1, p2.0, p2.1, p3.0, p3.1
        )
        .unwrap();
        let m = e.word.len();
        for (j, s) in e.symbols().into_iter().enumerate() {
            dot(
                &mut out,
                cubic([p0, p1, p2, p3], (j + 1) as f64 / (m + 1) as f64),
                s,
            );
        }
    }
    for (i, l) in loops.iter().enumerate() {
        let (cx, cy, r) = (
            x(k + 1) + STEP * (0.75 + 1.5 * i as f64),
            (top + bottom) / 2.0,
            STEP * 0.5,
        );
        writeln!(
            out,
            r#"  <circle cx="{cx:.1}" cy="{cy:.1}" r="{r:.1}" fill="none" stroke="black"/>"#
        )
        .unwrap();
        for (j, x) in l.iter().enumerate() {
            let a = std::f64::consts::TAU * j as f64 / l.len() as f64 - std::f64::consts::FRAC_PI_2;
            dot(&mut out, (cx + r * a.cos(), cy + r * a.sin()), x.symbol);
        }
    }
    for i in 1..=k {
        for (y, dy, name) in [(top, -8.0, 'n'), (bottom, 18.0, 's')] {
            writeln!(
                out,
                r#"  <text x="{:.1}" y="{:.1}" font-size="10" text-anchor="middle">{name}{i}</text>"#,
                x(i),
                y + dy
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use tlwb_diagram::simple_diagram;

    #[test]
    fn identity_is_vertical_bars() {
        let pic = ascii(&Diagram::identity(2));
        assert_eq!(pic, " 1   2\n |   |\n 1   2\n");
    }

    #[test]
    fn marks_sit_at_the_west_end() {
        let pic = ascii(&simple_diagram(2, 0).unwrap());
        let lines: Vec<&str> = pic.lines().collect();
        assert_eq!(lines[1], " +*--+   |   |");
        assert_eq!(lines[2], " +*--+   |   |");
    }

    #[test]
    fn through_strands_step_sideways() {
        let d: Diagram = "k=4 | n1-n2: | n3-s1:b | n4-s4: | s2-s3:".parse().unwrap();
        let pic = ascii(&d);
        assert!(pic.contains('*'));
        assert!(pic.lines().any(|l| l.starts_with(" +-------+")));
    }

    #[test]
    fn svg_has_one_circle_per_decoration() {
        let d: Diagram = "k=4 | n1-n2:b | n3-s3: | n4-s4: | s1-s2:b | loop:bo"
            .parse()
            .unwrap();
        let s = svg(&d);
        assert_eq!(s.matches("<circle").count(), 2 + 1 + 2);
        assert_eq!(s.matches("fill=\"white\"").count(), 1);
    }
}
