//! Bounded search for an ω-variable word prefix `W` along which a coloring
//! of `n`-variable words is constant.

use serde::{Deserialize, Serialize};

use super::{Coloring, Runner, SearchError};
use crate::space::mixed_words_up_to;
use crate::word::{validate, OmegaPrefix, Symbol, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CslCertificate {
    /// `W = body x_h`: every `W[u]` with `|u| ≤ h` is defined.
    pub w: Word,
    pub k: usize,
    pub dim: usize,
    pub h: usize,
    pub color: u8,
    /// `(u, W[u])` for every `u ∈ A^{≤h,n}` whose image is colored.
    pub checked: Vec<(Word, Word)>,
}

/// `A^{≤h,n}`: the `n`-variable words of length at most `h`, length-lex.
pub fn variable_words_up_to(k: usize, n: usize, h: usize) -> Vec<Word> {
    mixed_words_up_to(k, n, h).filter(|w| validate(w, n, false).pass()).collect()
}

/// Prefix-valid words over `k` letters using exactly the variables
/// `x_0..x_{h-1}`, with lengths `h..=max_len`, length-lex.
pub fn csl_bodies(k: usize, h: usize, max_len: usize) -> Vec<Word> {
    mixed_words_up_to(k, h, max_len)
        .filter(|w| w.len() >= h && validate(w, h, false).pass())
        .collect()
}

/// The generic search: the first body (in length-lex order) such that
/// `color` agrees on every colored `W[u]`, `u ∈ domain`.
pub fn csl_core<F>(
    k: usize,
    h: usize,
    max_len: usize,
    domain: &[Word],
    color: F,
    runner: &Runner,
) -> Option<(OmegaPrefix, u8, Vec<(Word, Word)>)>
where
    F: Fn(&Word) -> Option<u8> + Sync + Send,
{
    let bodies = csl_bodies(k, h, max_len);
    runner.find_first(&bodies, |body| {
        let mut word = body.clone();
        word.push(Symbol::Var(h as u8));
        let w = OmegaPrefix::new(word, k).ok()?;
        let mut common = None;
        let mut checked = Vec::new();
        for u in domain {
            let img = w.substitute(u).ok()?;
            if let Some(c) = color(&img) {
                if *common.get_or_insert(c) != c {
                    return None;
                }
                checked.push((u.clone(), img));
            }
        }
        Some((w, common.unwrap_or(0), checked))
    })
}

pub fn csl_search(f: &Coloring, h: usize, runner: &Runner) -> Result<CslCertificate, SearchError> {
    if h < f.dim() {
        return Err(SearchError::Domain(format!("h = {h} is below the dimension {}", f.dim())));
    }
    let domain = variable_words_up_to(f.k(), f.dim(), h);
    let (w, color, checked) = csl_core(f.k(), h, f.horizon(), &domain, |x| f.color(x), runner)
        .ok_or_else(|| {
            SearchError::NotFoundWithinHorizon(format!(
                "no prefix of length ≤ {} is monochromatic on A^(≤{h},{})",
                f.horizon() + 1,
                f.dim()
            ))
        })?;
    Ok(CslCertificate { w: w.word().clone(), k: f.k(), dim: f.dim(), h, color, checked })
}
