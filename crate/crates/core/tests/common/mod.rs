//! Definition-level re-implementations used as oracles by the integration
//! tests. Nothing here calls into the library's algorithms; only the `Word`
//! and `Symbol` data types are shared.
#![allow(dead_code)]

use std::collections::HashSet;

use ovw_core::word::{Symbol, Word};

pub fn w(s: &str) -> Word {
    s.parse().unwrap()
}

pub fn letters(k: usize) -> Vec<Symbol> {
    (0..k as u8).map(Symbol::Letter).collect()
}

/// All words over `alphabet` with length `≤ max_len`, shortest first.
pub fn all_words(alphabet: &[Symbol], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        layer = layer.iter().flat_map(|w| alphabet.iter().map(move |&a| w.concat(&[a]))).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// `x_j ↦ u(j)`, stopping at the first `x_{|u|}`; without a cut point the
/// result exists only when `complete`.
pub fn subst(w: &Word, u: &Word, complete: bool) -> Option<Word> {
    let mut out = Word::empty();
    for &s in w.iter() {
        match s {
            Symbol::Var(j) if (j as usize) < u.len() => out.push(u[j as usize]),
            Symbol::Var(j) if j as usize == u.len() => return Some(out),
            Symbol::Var(_) => return None,
            a => out.push(a),
        }
    }
    complete.then_some(out)
}

pub fn vars_of(w: &Word) -> Vec<u8> {
    w.iter().filter_map(|s| if let Symbol::Var(j) = s { Some(*j) } else { None }).collect()
}

pub fn is_var_word(w: &Word, k: usize, n: usize) -> bool {
    let letters_ok = w.iter().all(|s| !matches!(s, Symbol::Letter(a) if *a as usize >= k));
    let vars = vars_of(w);
    if !letters_ok || vars.iter().any(|&j| j as usize >= n) {
        return false;
    }
    let firsts: Option<Vec<usize>> = (0..n as u8).map(|j| w.iter().position(|s| *s == Symbol::Var(j))).collect();
    firsts.is_some_and(|f| f.windows(2).all(|p| p[0] < p[1]))
}

pub fn is_ordered(w: &Word) -> bool {
    vars_of(w).windows(2).all(|p| p[0] <= p[1])
}

/// Ordered words over `k` letters of length `≤ max_len`, with any number of variables.
pub fn ordered_words(k: usize, max_len: usize) -> Vec<Word> {
    fn rec(k: usize, left: usize, used: u8, cur: &mut Vec<Symbol>, out: &mut Vec<Word>) {
        out.push(Word::new(cur.clone()));
        if left == 0 {
            return;
        }
        let mut choices: Vec<Symbol> = (0..k as u8).map(Symbol::Letter).collect();
        if used > 0 {
            choices.push(Symbol::Var(used - 1));
        }
        choices.push(Symbol::Var(used));
        for s in choices {
            let next_used = if s == Symbol::Var(used) { used + 1 } else { used };
            cur.push(s);
            rec(k, left - 1, next_used, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, max_len, 0, &mut Vec::new(), &mut out);
    out
}

/// Prefixes of infinite variable words over `k` letters, length `≤ max_len`.
pub fn prefix_valid_words(k: usize, max_len: usize) -> Vec<Word> {
    fn rec(k: usize, left: usize, used: u8, cur: &mut Vec<Symbol>, out: &mut Vec<Word>) {
        out.push(Word::new(cur.clone()));
        if left == 0 {
            return;
        }
        let choices: Vec<Symbol> = (0..k as u8).map(Symbol::Letter).chain((0..=used).map(Symbol::Var)).collect();
        for s in choices {
            let next_used = if s == Symbol::Var(used) { used + 1 } else { used };
            cur.push(s);
            rec(k, left - 1, next_used, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, max_len, 0, &mut Vec::new(), &mut out);
    out
}

/// `∀σ ∈ A^{≤N-ℓ} ∃τ ∈ A^{≤ℓ}: τσ ∈ S`.
pub fn syndetic(s: &HashSet<Word>, k: usize, horizon: usize, ell: usize) -> bool {
    if ell > horizon {
        return true;
    }
    let taus = all_words(&letters(k), ell);
    all_words(&letters(k), horizon - ell)
        .iter()
        .all(|sigma| taus.iter().any(|tau| s.contains(&tau.concat(sigma))))
}

/// For every `ℓ' ≤ ℓ` an anchor `σ`, `|σ| + ℓ' ≤ N`, with `A^{≤ℓ'}·σ ⊆ T`.
pub fn thick(t: &HashSet<Word>, k: usize, horizon: usize, ell: usize) -> bool {
    (0..=ell).all(|l| {
        l <= horizon && {
            let taus = all_words(&letters(k), l);
            all_words(&letters(k), horizon - l)
                .iter()
                .any(|sigma| taus.iter().all(|tau| t.contains(&tau.concat(sigma))))
        }
    })
}

pub fn is_unary_var(s: &Symbol) -> bool {
    *s == Symbol::Var(0)
}

/// The word-graph relation, read off the definition.
pub fn edge_def(v: &Word, u: &Word) -> bool {
    let (a, b) = if v.len() < u.len() { (v, u) } else { (u, v) };
    a.len() != b.len()
        && is_unary_var(&b[a.len()])
        && (0..a.len()).all(|p| !(is_unary_var(&a[p]) && is_unary_var(&b[p])))
}
