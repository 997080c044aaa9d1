//! Iterating the step lemma into an OVW-tree inside a piecewise syndetic
//! family, keeping the whole `(T_s, w_s, P_s)` trace.
//!
//! Stage `s` holds `T_s` through its generator `g_s`, the left block `w_s`
//! and the residue `P_s` at horizon `N_s`, with `|g_s| + |w_s| + N_s = N`.

use serde::{Deserialize, Serialize};

use super::step::{step_lemma_search, StepParams};
use super::{Runner, SearchError};
use crate::largeness::{Family, PwDecomposition};
use crate::tree::tree_from_generator;
use crate::word::{Symbol, VarWord, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuilderStage {
    pub stage: usize,
    /// Generator of `T_s`, an ordered `s`-variable word.
    pub generator: Word,
    /// `w_s`, a left 1-variable word.
    pub block: Word,
    /// The line found by the step search at this stage.
    pub line: Word,
    pub horizon: usize,
    /// `P_s` with its decomposition.
    pub residue: PwDecomposition,
    /// `T_s ⊆ P`.
    pub claim1: bool,
    /// `T_s(s)·w_s[A]·P_s ⊆ P`.
    pub claim2: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuilderTrace {
    pub k: usize,
    pub horizon: usize,
    pub stages: Vec<BuilderStage>,
}

impl BuilderTrace {
    /// Generator of the final tree.
    pub fn tree_generator(&self) -> &Word {
        &self.stages.last().expect("at least one stage").generator
    }
}

fn split_line(line: &Word) -> (Word, Word) {
    let cut = line.first_occurrence(0).expect("a line has x0");
    (line.slice(0, cut), line.slice(cut, line.len()))
}

fn claims(p: &Family, generator: &Word, dim: usize, block: &Word, residue: &Family) -> Result<(bool, bool), SearchError> {
    let g = VarWord::new(generator.clone(), p.k(), dim, true)?;
    let t = tree_from_generator(&g)?;
    let claim1 = t.elements().iter().all(|e| p.contains(e));
    let top = t.level(dim)?;
    let claim2 = top.iter().all(|x| {
        (0..p.k() as u8).all(|b| {
            let head = x.concat(&block.map_vars(|_| Symbol::Letter(b)));
            residue.members().all(|sigma| p.contains(&head.concat(&sigma)))
        })
    });
    Ok((claim1, claim2))
}

pub fn iterate_builder(
    p: &PwDecomposition,
    s_max: usize,
    params: StepParams,
    runner: &Runner,
) -> Result<BuilderTrace, SearchError> {
    let target = p.members();
    let horizon = p.space().horizon();
    let mut stages: Vec<BuilderStage> = Vec::with_capacity(s_max + 1);
    let mut current = p.clone();
    for s in 0..=s_max {
        let cert = step_lemma_search(&current, params, runner).map_err(|e| match e {
            SearchError::NotFoundWithinHorizon(m) => {
                SearchError::NotFoundWithinHorizon(format!("stage {s}: {m}"))
            }
            other => other,
        })?;
        let (c, block) = split_line(&cert.line);
        let generator = match stages.last() {
            None => c,
            Some(prev) => prev
                .generator
                .concat(&prev.block.map_vars(|_| Symbol::Var((s - 1) as u8)))
                .concat(&c),
        };
        let stage_horizon = current.space().horizon() - cert.line.len();
        debug_assert_eq!(generator.len() + block.len() + stage_horizon, horizon);
        let (claim1, claim2) = claims(&target, &generator, s, &block, &cert.residue.members())?;
        if !(claim1 && claim2) {
            return Err(SearchError::CheckFailed(format!(
                "stage {s}: claim 1 {claim1}, claim 2 {claim2}"
            )));
        }
        current = cert.residue.clone();
        stages.push(BuilderStage {
            stage: s,
            generator,
            block,
            line: cert.line,
            horizon: stage_horizon,
            residue: cert.residue,
            claim1,
            claim2,
        });
    }
    Ok(BuilderTrace { k: p.space().k(), horizon, stages })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_family_builds_dimension_two() {
        let full = Family::full(2, 8);
        let p = PwDecomposition::new(full.clone(), full.clone(), 1).unwrap();
        let trace = iterate_builder(&p, 2, StepParams::for_horizon(8), &Runner::sequential()).unwrap();
        assert_eq!(trace.stages.len(), 3);
        assert_eq!(trace.tree_generator().to_string(), "x0x1");
        let last = trace.stages.last().unwrap();
        assert_eq!(last.horizon, 5);
        assert!(trace.stages.iter().all(|s| s.claim1 && s.claim2));
    }

    #[test]
    fn even_family_tree_is_even() {
        let even = Family::from_fn(2, 12, |w| w.len() % 2 == 0);
        let p = PwDecomposition::new(even.clone(), Family::full(2, 12), 1).unwrap();
        let trace = iterate_builder(&p, 2, StepParams::for_horizon(12), &Runner::sequential()).unwrap();
        let g = VarWord::new(trace.tree_generator().clone(), 2, 2, true).unwrap();
        let t = tree_from_generator(&g).unwrap();
        assert!(t.elements().iter().all(|e| e.len() % 2 == 0));
        for st in &trace.stages {
            assert_eq!(st.generator.len() + st.block.len() + st.horizon, 12);
        }
    }
}
