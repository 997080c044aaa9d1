//! Text formats for colorings, families and graphs. Errors carry 1-based
//! line and column numbers; callers add the file name.

use std::fmt;

use crate::henson::GraphSpec;
use crate::largeness::Family;
use crate::search::Coloring;
use crate::word::{Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for InputError {}

fn err(line: usize, column: usize, message: impl Into<String>) -> InputError {
    InputError { line, column, message: message.into() }
}

/// Non-blank, non-comment lines as `(line number, text)`.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty())
}

fn leading_ws(s: &str) -> usize {
    s.chars().take_while(|c| c.is_whitespace()).count()
}

fn parse_word_at(s: &str, line: usize, col0: usize) -> Result<Word, InputError> {
    s.parse::<Word>().map_err(|e| match e {
        WordError::Parse { column, message } => err(line, col0 + column - 1, message),
        other => err(line, col0, other.to_string()),
    })
}

fn parse_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    names: &[&str],
) -> Result<(usize, Vec<usize>), InputError> {
    let (ln, text) = lines.next().ok_or_else(|| err(1, 1, format!("missing header ({})", names.join(" "))))?;
    let mut values = Vec::new();
    let mut col = 1;
    for tok in text.split_whitespace() {
        col = text.find(tok).map_or(col, |p| text[..p].chars().count() + 1);
        values.push(tok.parse::<usize>().map_err(|_| err(ln, col, format!("expected an integer, found {tok:?}")))?);
    }
    if values.len() != names.len() {
        return Err(err(ln, 1, format!("header must be: {}", names.join(" "))));
    }
    Ok((ln, values))
}

/// `k N n ell` header, then `word color` lines covering the whole domain.
pub fn parse_coloring(text: &str) -> Result<Coloring, InputError> {
    let mut lines = content_lines(text);
    let (header_line, h) = parse_header(&mut lines, &["k", "N", "n", "ell"])?;
    let (k, horizon, dim, colors) = (h[0], h[1], h[2], h[3]);
    if colors == 0 || colors > 254 {
        return Err(err(header_line, 1, "ell must be between 1 and 254"));
    }
    if k + dim == 0 {
        return Err(err(header_line, 1, "k + n must be positive"));
    }
    let mut c = Coloring::constant(k, horizon, dim, colors, 0);
    let mut seen = std::collections::HashSet::new();
    for (ln, raw) in lines {
        let body = raw.trim_end();
        let split = body.rfind(char::is_whitespace).ok_or_else(|| err(ln, 1, "expected: word color"))?;
        let (word_text, color_text) = (&body[..split], body[split..].trim());
        let color_col = body[..split].chars().count() + 2;
        let col0 = leading_ws(word_text) + 1;
        let w = parse_word_at(word_text, ln, col0)?;
        let color: usize = color_text
            .parse()
            .map_err(|_| err(ln, color_col, format!("expected a color, found {color_text:?}")))?;
        if color >= colors {
            return Err(err(ln, color_col, format!("color {color} is not below ell = {colors}")));
        }
        if !c.set(&w, color as u8) {
            return Err(err(ln, col0, format!("{w} is not in the domain of {dim}-variable words of length ≤ {horizon} over {k} letters")));
        }
        if !seen.insert(w.clone()) {
            return Err(err(ln, col0, format!("{w} is colored twice")));
        }
    }
    if seen.len() != c.domain_size() {
        let missing = c.entries().map(|(w, _)| w).find(|w| !seen.contains(w)).expect("some word missing");
        return Err(err(header_line, 1, format!("coloring is not total: {missing} has no color")));
    }
    Ok(c)
}

pub fn write_coloring(c: &Coloring) -> String {
    let mut out = format!("{} {} {} {}\n", c.k(), c.horizon(), c.dim(), c.colors());
    for (w, col) in c.entries() {
        out.push_str(&format!("{w} {col}\n"));
    }
    out
}

/// `k N` header, then one word per line.
pub fn parse_family(text: &str) -> Result<Family, InputError> {
    let mut lines = content_lines(text);
    let (header_line, h) = parse_header(&mut lines, &["k", "N"])?;
    let (k, horizon) = (h[0], h[1]);
    if k == 0 {
        return Err(err(header_line, 1, "k must be positive"));
    }
    let mut f = Family::empty(k, horizon);
    for (ln, raw) in lines {
        let col0 = leading_ws(raw) + 1;
        let w = parse_word_at(raw, ln, col0)?;
        f.insert(&w).map_err(|e| err(ln, col0, e.to_string()))?;
    }
    Ok(f)
}

pub fn write_family(f: &Family) -> String {
    let mut out = format!("{} {}\n", f.k(), f.horizon());
    for w in f.members() {
        out.push_str(&format!("{w}\n"));
    }
    out
}

/// First line `n`, then `n` rows of `0`/`1` characters.
pub fn parse_graph(text: &str) -> Result<GraphSpec, InputError> {
    let mut lines = content_lines(text);
    let (header_line, h) = parse_header(&mut lines, &["n"])?;
    let n = h[0];
    let mut adj = Vec::with_capacity(n);
    for (ln, raw) in lines {
        let col0 = leading_ws(raw);
        let mut row = Vec::with_capacity(n);
        for (i, ch) in raw.trim().chars().enumerate() {
            match ch {
                '0' => row.push(false),
                '1' => row.push(true),
                other => return Err(err(ln, col0 + i + 1, format!("expected 0 or 1, found {other:?}"))),
            }
        }
        if row.len() != n {
            return Err(err(ln, col0 + 1, format!("row has {} entries, expected {n}", row.len())));
        }
        adj.push(row);
    }
    if adj.len() != n {
        return Err(err(header_line, 1, format!("expected {n} rows, found {}", adj.len())));
    }
    GraphSpec::new(adj).map_err(|e| err(header_line, 1, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coloring_round_trip() {
        let c = Coloring::from_fn(2, 2, 1, 3, |w| (w.len() % 3) as u8);
        let text = write_coloring(&c);
        assert_eq!(parse_coloring(&text).unwrap(), c);
    }

    #[test]
    fn coloring_errors_have_positions() {
        let e = parse_coloring("1 1 0 2\nε 0\n0 5\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 3));
        let e = parse_coloring("1 1 0 2\nε 0\n0y 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 2));
        let e = parse_coloring("1 1 0 2\nε 0\n").unwrap_err();
        assert!(e.message.contains("not total"), "{e}");
        let e = parse_coloring("1 x 0 2\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 3));
    }

    #[test]
    fn family_round_trip() {
        let f = Family::from_fn(2, 3, |w| w.len() == 2);
        assert_eq!(parse_family(&write_family(&f)).unwrap(), f);
        let e = parse_family("2 3\n0102\n").unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn graph_parsing() {
        let g = parse_graph("3\n010\n101\n010\n").unwrap();
        assert_eq!(g.n(), 3);
        assert!(g.adjacent(0, 1) && !g.adjacent(0, 2));
        let e = parse_graph("2\n01\n12\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 2));
        assert!(parse_graph("2\n01\n00\n").is_err());
    }
}
