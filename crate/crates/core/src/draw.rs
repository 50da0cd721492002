//! Schematic pictures of tied mixed braids: ASCII art and a standalone SVG.
//!
//! Fixed strands sit on the left, moving strands on the right, one row per
//! letter read top to bottom. Ties are springs, never strands.

use std::fmt::Write as _;

use crate::words::{Letter, Sign, TiedWord};

const GAP: usize = 3;

fn column(g: usize, strand: usize, fixed: bool) -> usize {
    if fixed {
        GAP * (strand - 1)
    } else {
        GAP * (g + strand - 1)
    }
}

/// Number of crossings between moving strands (loops are not counted).
pub fn crossing_count(w: &TiedWord) -> usize {
    w.letters().iter().filter(|l| matches!(l, Letter::Sigma(..))).count()
}

/// ASCII drawing. Fixed strands are `#`, moving strands `|`. A positive
/// crossing is `>//<`, a negative one `>\\<`; a loop is `<-` (positive) or
/// `>-` (negative) running from moving strand 1 around the fixed strand;
/// ties are `~` springs ending in `*`.
pub fn ascii(w: &TiedWord) -> String {
    let ctx = w.ctx();
    let (g, n) = (ctx.g(), ctx.n());
    let width = GAP * (g + n - 1) + 1;
    let mut base = vec![' '; width];
    for k in 1..=g {
        base[column(g, k, true)] = '#';
    }
    for i in 1..=n {
        base[column(g, i, false)] = '|';
    }
    let mut out = String::new();
    let labels: Vec<String> = (1..=g).map(|k| format!("F{k}")).chain((1..=n).map(|i| format!("M{i}"))).collect();
    let _ = writeln!(out, "{}", labels.iter().map(|l| format!("{l:<GAP$}")).collect::<String>().trim_end());
    let _ = writeln!(out, "{}", base.iter().collect::<String>());
    for letter in w.letters() {
        let mut row = base.clone();
        match *letter {
            Letter::Sigma(i, sign) => {
                let c = column(g, i, false);
                let glyph = if sign == Sign::Plus { ">//<" } else { ">\\\\<" };
                for (off, ch) in glyph.chars().enumerate() {
                    row[c + off] = ch;
                }
            }
            Letter::Loop(k, sign) => {
                let (f, m) = (column(g, k, true), column(g, 1, false));
                for cell in row.iter_mut().take(m).skip(f + 1) {
                    *cell = '-';
                }
                row[f + 1] = if sign == Sign::Plus { '<' } else { '>' };
            }
            Letter::Tie(i) => spring(&mut row, column(g, i, false), column(g, i + 1, false)),
            Letter::GenTie(i, j) => spring(&mut row, column(g, i, false), column(g, j, false)),
            Letter::FixedTie(k) => spring(&mut row, column(g, k, true), column(g, 1, false)),
            Letter::GenFixedTie(k, j) => spring(&mut row, column(g, k, true), column(g, j, false)),
        }
        let line: String = row.iter().collect();
        let _ = writeln!(out, "{line}   {letter}");
    }
    let _ = writeln!(out, "{}", base.iter().collect::<String>());
    let _ = writeln!(out, "crossings={}", crossing_count(w));
    out
}

fn spring(row: &mut [char], a: usize, b: usize) {
    for (c, cell) in row.iter_mut().enumerate().take(b).skip(a + 1) {
        if *cell == ' ' || c % GAP != 0 {
            *cell = '~';
        }
    }
    row[a] = '*';
    row[b] = '*';
}

const STEP: f64 = 40.0;
const MARGIN: f64 = 30.0;

/// Standalone SVG drawing with the same layout as [`ascii`].
pub fn svg(w: &TiedWord) -> String {
    let ctx = w.ctx();
    let (g, n) = (ctx.g(), ctx.n());
    let x = |strand: usize, fixed: bool| MARGIN + STEP * (column(g, strand, fixed) / GAP) as f64;
    let rows = w.len().max(1);
    let width = 2.0 * MARGIN + STEP * (g + n - 1) as f64;
    let height = 2.0 * MARGIN + STEP * rows as f64;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r#"<desc>{} crossings={}</desc>"#, ctx, crossing_count(w));
    for k in 1..=g {
        let xf = x(k, true);
        let _ = writeln!(
            out,
            r##"<line class="fixed" x1="{xf}" y1="{MARGIN}" x2="{xf}" y2="{}" stroke="#777" stroke-width="5"/>"##,
            height - MARGIN
        );
    }
    let line = |out: &mut String, x1: f64, y1: f64, x2: f64, y2: f64| {
        let _ = writeln!(
            out,
            r#"<line class="moving" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black" stroke-width="2"/>"#
        );
    };
    let letters = w.letters();
    for r in 0..rows {
        let y0 = MARGIN + STEP * r as f64;
        let y1 = y0 + STEP;
        let ym = (y0 + y1) / 2.0;
        let crossing = match letters.get(r) {
            Some(&Letter::Sigma(i, sign)) => Some((i, sign)),
            _ => None,
        };
        for i in 1..=n {
            if crossing.is_some_and(|(c, _)| i == c || i == c + 1) {
                continue;
            }
            line(&mut out, x(i, false), y0, x(i, false), y1);
        }
        let Some(letter) = letters.get(r) else { continue };
        match *letter {
            Letter::Sigma(i, sign) => {
                let (xa, xb) = (x(i, false), x(i + 1, false));
                // the over strand is whole, the under strand is broken
                let (over, under) = if sign == Sign::Plus { ((xa, xb), (xb, xa)) } else { ((xb, xa), (xa, xb)) };
                line(&mut out, over.0, y0, over.1, y1);
                let (ux0, ux1) = under;
                let gap = 0.2;
                let lerp = |t: f64| (ux0 + (ux1 - ux0) * t, y0 + STEP * t);
                let (a, b) = (lerp(0.5 - gap), lerp(0.5 + gap));
                line(&mut out, ux0, y0, a.0, a.1);
                line(&mut out, b.0, b.1, ux1, y1);
            }
            Letter::Loop(k, sign) => {
                let (xf, xm) = (x(k, true), x(1, false));
                let dash = if sign == Sign::Plus { "" } else { r#" stroke-dasharray="4,3""# };
                let _ = writeln!(
                    out,
                    r#"<path class="loop" d="M {xm} {y0} C {} {y0}, {} {ym}, {} {ym} S {} {y1}, {xm} {y1}" fill="none" stroke="black" stroke-width="2"{dash}/>"#,
                    xm - 10.0,
                    xf + 10.0,
                    xf - 12.0,
                    xm - 10.0,
                );
            }
            Letter::Tie(i) => spring_svg(&mut out, x(i, false), x(i + 1, false), ym),
            Letter::GenTie(i, j) => spring_svg(&mut out, x(i, false), x(j, false), ym),
            Letter::FixedTie(k) => spring_svg(&mut out, x(k, true), x(1, false), ym),
            Letter::GenFixedTie(k, j) => spring_svg(&mut out, x(k, true), x(j, false), ym),
        }
    }
    out.push_str("</svg>\n");
    out
}

fn spring_svg(out: &mut String, xa: f64, xb: f64, y: f64) {
    let coils = (((xb - xa) / 8.0).round() as usize).max(2);
    let mut pts = vec![format!("{xa},{y}")];
    for c in 1..coils {
        let xc = xa + (xb - xa) * c as f64 / coils as f64;
        let dy = if c % 2 == 0 { -4.0 } else { 4.0 };
        pts.push(format!("{xc},{}", y + dy));
    }
    pts.push(format!("{xb},{y}"));
    let _ = writeln!(
        out,
        r##"<polyline class="tie" points="{}" fill="none" stroke="#c0392b" stroke-width="1.5"/>"##,
        pts.join(" ")
    );
}
