//! Prehomogeneity: the color of `W[t]` depends only on the part of `t`
//! before its first `x_n`. One refinement step and the `≤_m` relation.

use serde::{Deserialize, Serialize};

use super::csl::{csl_core, variable_words_up_to};
use super::{Coloring, Runner, SearchError};
use crate::word::{validate, OmegaPrefix, Symbol, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrehomogCounterexample {
    pub s: Word,
    pub t0: Word,
    pub t1: Word,
    pub color0: u8,
    pub color1: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrehomogReport {
    pub holds: bool,
    /// Number of `t` whose image was colored.
    pub checked: usize,
    pub counterexample: Option<PrehomogCounterexample>,
}

/// Checks all `t ∈ A^{≤h,n+1}` grouped by their `s` with `s x_n ⪯ t`.
pub fn prehomog_check(w: &OmegaPrefix, f: &Coloring, h: usize) -> Result<PrehomogReport, SearchError> {
    let n = f
        .dim()
        .checked_sub(1)
        .ok_or_else(|| SearchError::Domain("prehomogeneity needs a coloring of dimension ≥ 1".into()))?;
    let mut ts = variable_words_up_to(f.k(), n + 1, h);
    let head = |t: &Word| t.slice(0, t.first_occurrence(n as u8).expect("t has x_n"));
    ts.sort_by_key(|t| (head(t), t.clone()));
    let mut checked = 0;
    let mut group: Option<(Word, Word, u8)> = None;
    for t in ts {
        let Some(c) = f.color(&w.substitute(&t)?) else { continue };
        checked += 1;
        let s = head(&t);
        match &group {
            Some((gs, t0, c0)) if *gs == s => {
                if *c0 != c {
                    let counterexample = PrehomogCounterexample {
                        s,
                        t0: t0.clone(),
                        t1: t,
                        color0: *c0,
                        color1: c,
                    };
                    return Ok(PrehomogReport { holds: false, checked, counterexample: Some(counterexample) });
                }
            }
            _ => group = Some((s, t, c)),
        }
    }
    Ok(PrehomogReport { holds: true, checked, counterexample: None })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeqReport {
    pub holds: bool,
    /// The forced `V` with `Ŵ = W∘V` on the defined region.
    pub v: Option<Word>,
    pub reason: Option<String>,
}

impl LeqReport {
    fn fail(reason: impl Into<String>) -> Self {
        LeqReport { holds: false, v: None, reason: Some(reason.into()) }
    }
}

/// `Ŵ ≤_m W`: `Ŵ = W[V]` for a prefix-valid `V` starting with `z_0⋯z_{m-1}`.
/// Since `W∘V` keeps positions, `V(j)` must be the symbol of `Ŵ` at the first
/// occurrence of `x_j` in `W`.
pub fn leq_m_check(w_hat: &OmegaPrefix, w: &OmegaPrefix, m: usize) -> LeqReport {
    if w_hat.len() > w.len() {
        return LeqReport::fail(format!("Ŵ has length {} > |W| = {}", w_hat.len(), w.len()));
    }
    let mut v: Vec<Symbol> = Vec::new();
    for (p, (&a, &b)) in w.word().iter().zip(w_hat.word().iter()).enumerate() {
        match a {
            Symbol::Letter(_) if a != b => {
                return LeqReport::fail(format!("position {p}: letter {a:?} became {b:?}"));
            }
            Symbol::Letter(_) => {}
            Symbol::Var(j) => match v.get(j as usize) {
                Some(&prev) if prev != b => {
                    return LeqReport::fail(format!("position {p}: x{j} maps to both {prev:?} and {b:?}"));
                }
                Some(_) => {}
                None => v.push(b),
            },
        }
    }
    let v = Word::new(v);
    if let Some(j) = (0..m.min(v.len())).find(|&j| v[j] != Symbol::Var(j as u8)) {
        return LeqReport::fail(format!("V({j}) = {:?} is not z{j}", v[j]));
    }
    if let Err(e) = OmegaPrefix::new(v.clone(), w_hat.k().max(w.k())) {
        return LeqReport::fail(format!("V = {v} is not prefix-valid: {e}"));
    }
    LeqReport { holds: true, v: Some(v), reason: None }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneStepCertificate {
    pub s: Word,
    /// The monochromatic prefix `U` for `f_s` over `A ⊔ {x_0..x_n}`, letters
    /// coded `0..k` for `A` and `k+m` for `x_m`.
    pub u: Word,
    /// `V = z_0⋯z_{|s|} Û`.
    pub v: Word,
    pub w_hat: Word,
    pub color: u8,
    /// `(t, Ŵ[t])` for every colored `t ⊒ s x_n` with `|t| ≤ h`.
    pub checked: Vec<(Word, Word)>,
    pub leq: LeqReport,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneStepParams {
    pub h: usize,
    /// Longest body tried for `U`.
    pub max_u_len: usize,
}

/// `Ŵ ≤_{|s|+1} W` and a color `i` with `f(Ŵ[t]) = i` for all in-horizon `t ⊒ s x_n`.
pub fn one_step_prehomog(
    w: &OmegaPrefix,
    s: &Word,
    f: &Coloring,
    params: OneStepParams,
    runner: &Runner,
) -> Result<OneStepCertificate, SearchError> {
    let k = f.k();
    let n = f
        .dim()
        .checked_sub(1)
        .ok_or_else(|| SearchError::Domain("prehomogeneity needs a coloring of dimension ≥ 1".into()))?;
    if !validate(s, n, false).pass() || s.check_letters(k).is_err() {
        return Err(SearchError::Domain(format!("{s} is not a {n}-variable word")));
    }
    let prefix = s.concat(&[Symbol::Var(n as u8)]);
    let h_u = params.h.checked_sub(prefix.len()).ok_or_else(|| {
        SearchError::Domain(format!("h = {} is shorter than s x_n", params.h))
    })?;
    let wide = k + n + 1;
    let decode = |u: &Word| -> Word {
        u.iter()
            .map(|&c| match c {
                Symbol::Letter(a) if (a as usize) >= k => Symbol::Var(a - k as u8),
                other => other,
            })
            .collect()
    };
    let f_s = |u: &Word| -> Option<u8> {
        let t = prefix.concat(&decode(u));
        f.color(&w.substitute(&t).ok()?)
    };
    let domain = variable_words_up_to(wide, 0, h_u);
    let (u, color, _) = csl_core(wide, h_u, params.max_u_len, &domain, f_s, runner).ok_or_else(|| {
        SearchError::NotFoundWithinHorizon(format!(
            "no monochromatic U of length ≤ {} for f_s",
            params.max_u_len + 1
        ))
    })?;

    let first = |m: u8| prefix.first_occurrence(m).expect("x_m occurs in s x_n") as u8;
    let mut v: Vec<Symbol> = (0..prefix.len()).map(|j| Symbol::Var(j as u8)).collect();
    v.extend(u.word().iter().map(|&c| match c {
        Symbol::Letter(a) if (a as usize) < k => Symbol::Letter(a),
        Symbol::Letter(a) => Symbol::Var(first(a - k as u8)),
        Symbol::Var(j) => Symbol::Var(prefix.len() as u8 + j),
    }));
    let v = OmegaPrefix::new(Word::new(v), k)?;
    let w_hat = w.compose(&v);

    let mut checked = Vec::new();
    for t in variable_words_up_to(k, n + 1, params.h) {
        if !t.starts_with(&prefix) {
            continue;
        }
        let img = w_hat.substitute(&t)?;
        if let Some(c) = f.color(&img) {
            if c != color {
                return Err(SearchError::CheckFailed(format!("Ŵ[{t}] = {img} has color {c}, expected {color}")));
            }
            checked.push((t, img));
        }
    }
    let leq = leq_m_check(&w_hat, w, prefix.len());
    if !leq.holds {
        return Err(SearchError::CheckFailed(format!("Ŵ ≤_m W fails: {:?}", leq.reason)));
    }
    Ok(OneStepCertificate {
        s: s.clone(),
        u: u.word().clone(),
        v: v.word().clone(),
        w_hat: w_hat.word().clone(),
        color,
        checked,
        leq,
    })
}
