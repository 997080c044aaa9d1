//! Translating a coloring of `n`-variable words over `k` letters into a
//! coloring of `(k+n)`-variable words over the empty alphabet, and pulling
//! solutions back.

use serde::{Deserialize, Serialize};

use super::csl::{csl_core, variable_words_up_to};
use super::{Coloring, Runner, SearchError};
use crate::word::{validate, OmegaPrefix, Symbol, Word};

/// `φ`: `x_i ↦ a_i` for `i < k`, `x_{k+j} ↦ x_j`.
pub fn phi(v: &Word, k: usize) -> Word {
    v.iter()
        .map(|&s| match s {
            Symbol::Var(i) if (i as usize) < k => Symbol::Letter(i),
            Symbol::Var(i) => Symbol::Var(i - k as u8),
            other => other,
        })
        .collect()
}

/// `ψ`: `a_i ↦ x_i`, `x_j ↦ x_{k+j}`, defined when the image is a valid
/// `(k+n)`-variable word (every letter occurs, first occurrences in order and
/// before any variable).
pub fn encode(u: &Word, k: usize, n: usize) -> Option<Word> {
    let v: Word = u
        .iter()
        .map(|&s| match s {
            Symbol::Letter(a) => Symbol::Var(a),
            Symbol::Var(j) => Symbol::Var(j + k as u8),
        })
        .collect();
    validate(&v, k + n, false).pass().then_some(v)
}

/// `Ĉ(v) = C(φ(v))` on `∅^{≤N,k+n}`.
pub fn cdrt_translate(c: &Coloring) -> Coloring {
    let k = c.k();
    Coloring::from_fn(0, c.horizon(), k + c.dim(), c.colors(), |v| {
        c.color(&phi(v, k)).expect("φ maps the domain of Ĉ into the domain of C")
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CdrtCertificate {
    pub k: usize,
    pub n: usize,
    pub h: usize,
    /// Monochromatic prefix for `Ĉ` on `∅^{≤k+h,k+n}`.
    pub w_hat: Word,
    /// `W = Ŵ[a_0⋯a_{k-1} x_0 x_1 ⋯]`.
    pub w: Word,
    pub color: u8,
    /// `(u, W[u])` for every colored `u ∈ A^{≤h,n}`.
    pub checked: Vec<(Word, Word)>,
}

/// `W = Ŵ ∘ (a_0⋯a_{k-1} x_0 x_1 ⋯)`, then checks that `C` is constant on
/// `{ W[u] : u ∈ A^{≤h,n} }`.
pub fn cdrt_pullback(
    c: &Coloring,
    w_hat: &Word,
    h: usize,
) -> Result<(Word, u8, Vec<(Word, Word)>), SearchError> {
    let k = c.k();
    let hat = OmegaPrefix::new(w_hat.clone(), 0)?;
    let vars = hat.var_count().saturating_sub(k);
    let mut v: Vec<Symbol> = (0..k as u8).map(Symbol::Letter).collect();
    v.extend((0..vars as u8).map(Symbol::Var));
    let w = hat.compose(&OmegaPrefix::new(Word::new(v), k)?);
    let mut color = None;
    let mut checked = Vec::new();
    for u in variable_words_up_to(k, c.dim(), h) {
        let img = w.substitute(&u)?;
        if let Some(col) = c.color(&img) {
            if *color.get_or_insert(col) != col {
                return Err(SearchError::CheckFailed(format!("W[{u}] = {img} has color {col}")));
            }
            checked.push((u, img));
        }
    }
    Ok((w.word().clone(), color.unwrap_or(0), checked))
}

/// Searches `Ĉ` with `ĥ = k + h` and pulls the solution back to `C`.
pub fn cdrt_search(c: &Coloring, h: usize, runner: &Runner) -> Result<CdrtCertificate, SearchError> {
    let (k, n) = (c.k(), c.dim());
    let hat = cdrt_translate(c);
    let h_hat = k + h;
    let domain = variable_words_up_to(0, k + n, h_hat);
    let (w_hat, color, _) = csl_core(0, h_hat, c.horizon(), &domain, |v| hat.color(v), runner)
        .ok_or_else(|| {
            SearchError::NotFoundWithinHorizon(format!(
                "no monochromatic prefix for the translated coloring with ĥ = {h_hat}"
            ))
        })?;
    let (w, pulled, checked) = cdrt_pullback(c, w_hat.word(), h)?;
    if !checked.is_empty() && pulled != color {
        return Err(SearchError::CheckFailed(format!("pullback color {pulled} differs from {color}")));
    }
    Ok(CdrtCertificate { k, n, h, w_hat: w_hat.word().clone(), w, color, checked })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn unary_dimension_zero() {
        let c = Coloring::from_fn(1, 4, 0, 2, |u| (u.len() % 2) as u8);
        let hat = cdrt_translate(&c);
        assert_eq!(hat.k(), 0);
        assert_eq!(hat.dim(), 1);
        for j in 1..=4 {
            let v = Word::new(vec![Symbol::Var(0); j]);
            assert_eq!(phi(&v, 1), Word::letters(&vec![0; j]));
            assert_eq!(hat.color(&v), Some((j % 2) as u8));
        }
        assert_eq!(hat.color(&Word::empty()), None);
    }

    #[test]
    fn encode_is_partial() {
        assert_eq!(encode(&w("01x0"), 2, 1), Some(w("x0x1x2")));
        assert_eq!(encode(&w("10x0"), 2, 1), None);
        assert_eq!(encode(&w("0x0"), 2, 1), None);
        assert_eq!(encode(&w("010x0 1"), 2, 1), Some(w("x0x1x0x2x1")));
    }

    #[test]
    fn round_trip_on_encodable_words() {
        let c = Coloring::from_fn(2, 4, 1, 3, |u| (u.len() + u.first_occurrence(0).unwrap()) as u8 % 3);
        let hat = cdrt_translate(&c);
        for (u, col) in c.entries() {
            if let Some(v) = encode(&u, 2, 1) {
                assert_eq!(hat.color(&v), Some(col));
                assert_eq!(phi(&v, 2), u);
            }
        }
    }

    #[test]
    fn constant_coloring_pulls_back() {
        let c = Coloring::constant(2, 4, 1, 2, 1);
        let cert = cdrt_search(&c, 2, &Runner::sequential()).unwrap();
        assert_eq!(cert.w_hat, w("x0x1x2x3x4"));
        assert_eq!(cert.w, w("01x0x1x2"));
        assert_eq!(cert.color, 1);
        assert_eq!(cert.checked.len(), variable_words_up_to(2, 1, 2).len());
    }
}
