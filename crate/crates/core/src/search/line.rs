//! Monochromatic OVW-line plus letter: `S(0)` and `S(1)·a` share a color.

use serde::{Deserialize, Serialize};

use super::{Coloring, Runner, SearchError};
use crate::space::mixed_words_up_to;
use crate::word::{Symbol, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineLetterCertificate {
    /// Generator `c x_0 w` of the line `S`.
    pub generator: Word,
    pub letter: u8,
    pub color: u8,
    /// `S(0) ∪ S(1)·a`, in the order `c`, then `g[b]·a` for `b = 0..k`.
    pub checked: Vec<Word>,
}

/// 1-variable words over `k` letters of length `1..=max_len`, length-lex.
pub fn line_generators(k: usize, max_len: usize) -> Vec<Word> {
    mixed_words_up_to(k, 1, max_len).filter(|w| w.has_vars()).collect()
}

/// `S(0)` followed by `S(1)·a` for the line generated by `g`.
pub fn line_letter_elements(g: &Word, k: usize, a: u8) -> Vec<Word> {
    let cut = g.first_occurrence(0).expect("a line generator has x0");
    let mut out = vec![g.slice(0, cut)];
    for b in 0..k as u8 {
        let mut e = g.map_vars(|_| Symbol::Letter(b));
        e.push(Symbol::Letter(a));
        out.push(e);
    }
    out
}

fn common_color(f: &Coloring, elems: &[Word]) -> Option<u8> {
    let c = f.color(&elems[0])?;
    elems[1..].iter().all(|e| f.color(e) == Some(c)).then_some(c)
}

/// Lex-least certificate over generators with `|S| + 1 ≤ N`, then letters.
pub fn search_line_with_letter(
    f: &Coloring,
    runner: &Runner,
) -> Result<LineLetterCertificate, SearchError> {
    if f.dim() != 0 {
        return Err(SearchError::Domain(format!("expected a coloring of words, got dimension {}", f.dim())));
    }
    let k = f.k();
    let candidates: Vec<(Word, u8)> = line_generators(k, f.horizon().saturating_sub(1))
        .into_iter()
        .flat_map(|g| (0..k as u8).map(move |a| (g.clone(), a)))
        .collect();
    runner
        .find_first(&candidates, |(g, a)| {
            let checked = line_letter_elements(g, k, *a);
            common_color(f, &checked).map(|color| LineLetterCertificate {
                generator: g.clone(),
                letter: *a,
                color,
                checked,
            })
        })
        .ok_or_else(|| {
            SearchError::NotFoundWithinHorizon(format!(
                "no line with letter among {} candidates at horizon {}",
                candidates.len(),
                f.horizon()
            ))
        })
}
