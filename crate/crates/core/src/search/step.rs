//! One step of the tree builder: a line `S` and a residue `Q` with
//! `S(0) ⊆ P` and `S(1)·Q ⊆ P`, where `Q` is again piecewise syndetic.

use serde::{Deserialize, Serialize};

use super::line::line_generators;
use super::{Runner, SearchError};
use crate::bitset::BitSet;
use crate::largeness::{syndetic_holds, thick_holds, Family, PwDecomposition};
use crate::space::WordSpace;
use crate::word::{Symbol, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepParams {
    /// Longest line generator tried.
    pub max_line_len: usize,
}

impl StepParams {
    pub fn for_horizon(horizon: usize) -> Self {
        StepParams { max_line_len: horizon / 2 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepCertificate {
    /// Generator `c x_0 w` of `S`.
    pub line: Word,
    /// `Q = { σ ∈ A^{≤N-|S|} : S(1)·σ ⊆ P }` with its decomposition
    /// `(Q ∪ ¬T_Q, T_Q, ℓ)`, `T_Q = { σ : S(1)·σ ⊆ T }`.
    pub residue: PwDecomposition,
}

impl StepCertificate {
    pub fn q(&self) -> Family {
        self.residue.members()
    }
}

/// Ranks (in `A^{≤N}`) of the words of `S(1)` for the line `g`.
fn level_one_indices(space: WordSpace, g: &Word) -> Vec<usize> {
    (0..space.k() as u8)
        .map(|b| space.lex_index(&g.map_vars(|_| Symbol::Letter(b))))
        .collect()
}

/// `{ σ ∈ A^{≤N-|g|} : S(1)·σ ⊆ D }` for the line generated by `g`.
pub fn residue(d: &Family, g: &Word) -> Family {
    let sp = d.space();
    let out = WordSpace::new(sp.k(), sp.horizon().saturating_sub(g.len()));
    let mut bits = BitSet::new(out.size());
    if g.len() <= sp.horizon() {
        let heads = level_one_indices(sp, g);
        for sl in 0..=out.horizon() {
            for si in 0..sp.count_at(sl) {
                let inside = heads.iter().all(|&h| {
                    sp.concat_rank(g.len(), h, sl, si).is_some_and(|r| d.contains_rank(r))
                });
                if inside {
                    bits.insert(out.offset(sl) + si);
                }
            }
        }
    }
    Family::from_bits(out, bits)
}

fn try_line(p: &PwDecomposition, members: &Family, g: &Word) -> Option<StepCertificate> {
    let cut = g.first_occurrence(0)?;
    if !members.contains(&g.slice(0, cut)) {
        return None;
    }
    let q = residue(members, g);
    let t_q = residue(&p.thick, g);
    let s_q = q.union(&t_q.complement());
    if !thick_holds(&t_q, p.ell) || !syndetic_holds(&s_q, p.ell) {
        return None;
    }
    Some(StepCertificate { line: g.clone(), residue: PwDecomposition::new(s_q, t_q, p.ell).ok()? })
}

/// Smallest line (by generator length, then lex) whose residue is piecewise
/// syndetic at the reduced horizon `N - |S|`.
pub fn step_lemma_search(
    p: &PwDecomposition,
    params: StepParams,
    runner: &Runner,
) -> Result<StepCertificate, SearchError> {
    let members = p.members();
    let sp = p.space();
    let candidates = line_generators(sp.k(), params.max_line_len.min(sp.horizon()));
    let cert = runner
        .find_first(&candidates, |g| try_line(p, &members, g))
        .ok_or_else(|| {
            SearchError::NotFoundWithinHorizon(format!(
                "no line of length ≤ {} with a piecewise syndetic residue at horizon {}",
                params.max_line_len,
                sp.horizon()
            ))
        })?;
    check_step(&members, &cert)?;
    Ok(cert)
}

/// Element-wise re-check of `S(0) ⊆ P` and `S(1)·Q ⊆ P`.
pub fn check_step(p: &Family, cert: &StepCertificate) -> Result<(), SearchError> {
    let g = &cert.line;
    let cut = g.first_occurrence(0).ok_or_else(|| SearchError::CheckFailed("line without x0".into()))?;
    if !p.contains(&g.slice(0, cut)) {
        return Err(SearchError::CheckFailed(format!("S(0) of {g} is not in P")));
    }
    for sigma in cert.q().members() {
        for b in 0..p.k() as u8 {
            let e = g.map_vars(|_| Symbol::Letter(b)).concat(&sigma);
            if !p.contains(&e) {
                return Err(SearchError::CheckFailed(format!("{e} is not in P")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_family() {
        let full = Family::full(2, 8);
        let p = PwDecomposition::new(full.clone(), full, 1).unwrap();
        let cert = step_lemma_search(&p, StepParams::for_horizon(8), &Runner::sequential()).unwrap();
        assert_eq!(cert.line.to_string(), "x0");
        assert_eq!(cert.q(), Family::full(2, 7));
    }

    #[test]
    fn even_lengths() {
        let even = Family::from_fn(2, 8, |w| w.len() % 2 == 0);
        let p = PwDecomposition::new(even, Family::full(2, 8), 1).unwrap();
        assert!(p.is_valid());
        let cert = step_lemma_search(&p, StepParams::for_horizon(8), &Runner::sequential()).unwrap();
        assert_eq!(cert.line.to_string(), "x0");
        // |S(1)| = 1, so the residue is the odd lengths up to 7.
        assert_eq!(cert.q(), Family::from_fn(2, 7, |w| w.len() % 2 == 1));
    }

    #[test]
    fn residue_of_empty_and_full() {
        let g: Word = "0x0 1".parse().unwrap();
        assert!(residue(&Family::empty(2, 6), &g).is_empty());
        assert_eq!(residue(&Family::full(2, 6), &g), Family::full(2, 3));
    }

    #[test]
    fn empty_family_is_not_found() {
        let e = Family::empty(2, 6);
        let p = PwDecomposition::new(e.clone(), e, 1).unwrap();
        let err = step_lemma_search(&p, StepParams::for_horizon(6), &Runner::sequential()).unwrap_err();
        assert!(err.is_not_found());
    }
}
