//! The residue operator `D^S` and a bounded pigeonhole search over lines
//! whose levels lie in a fixed finite set `L_0`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::line::line_generators;
use super::step::residue;
use super::{Runner, SearchError};
use crate::largeness::{density, rational_text, Family};
use crate::word::{Symbol, Word};

/// `D^S = { σ : S(1)·σ ⊆ D }` at horizon `N - |S|`.
pub fn d_super_s(d: &Family, line: &Word) -> Family {
    residue(d, line)
}

/// `|OVWLine(L_0)| = Σ_{p<q in L_0} k^p (k+1)^{q-p-1}`.
pub fn ovw_line_count(k: usize, levels: &[usize]) -> BigInt {
    let mut total = BigInt::from(0);
    for &p in levels {
        for &q in levels.iter().filter(|&&q| q > p) {
            total += BigInt::from(k).pow(p as u32) * BigInt::from(k + 1).pow((q - p - 1) as u32);
        }
    }
    total
}

fn line_levels(g: &Word) -> (usize, usize) {
    (g.first_occurrence(0).expect("a line has x0"), g.len())
}

fn line_inside(d: &Family, g: &Word) -> bool {
    let (p, _) = line_levels(g);
    d.contains(&g.slice(0, p)) && (0..d.k() as u8).all(|b| d.contains(&g.map_vars(|_| Symbol::Letter(b))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityLineResult {
    /// The line chosen by pigeonhole: the most frequent `S_r`, ties to the least.
    pub line: Word,
    /// `{ r : S_r = line }`.
    pub lengths: Vec<usize>,
    #[serde(with = "rational_text")]
    pub delta_hat: BigRational,
    pub line_count: String,
    /// `S_r` for every `r ∈ L_1` with `dens(D, r) > δ`, `None` when absent.
    pub per_length: Vec<(usize, Option<Word>)>,
}

/// For each `r ∈ L_1` with `dens_{A^r}(D) > δ`, the least line `S ⊆ D` with
/// levels in `L_0` and `dens_{A^{r-|S|}}(D^S) > δ²/(8·|OVWLine(L_0)|)`.
pub fn density_line_search(
    d: &Family,
    delta: &BigRational,
    l0: &[usize],
    l1: &[usize],
    runner: &Runner,
) -> Result<DensityLineResult, SearchError> {
    let count = ovw_line_count(d.k(), l0);
    if count == BigInt::from(0) {
        return Err(SearchError::Domain("L0 admits no line".into()));
    }
    let delta_hat = delta * delta / BigRational::from_integer(BigInt::from(8) * &count);
    let max_level = l0.iter().copied().max().unwrap_or(0).min(d.horizon());
    let lines: Vec<Word> = line_generators(d.k(), max_level)
        .into_iter()
        .filter(|g| {
            let (p, q) = line_levels(g);
            l0.contains(&p) && l0.contains(&q) && line_inside(d, g)
        })
        .collect();
    let residues: Vec<Family> = runner.map(&lines, |g| d_super_s(d, g));
    let mut per_length = Vec::new();
    for &r in l1 {
        if r > d.horizon() || density(d, r)? <= *delta {
            continue;
        }
        let found = lines.iter().zip(&residues).find(|(g, res)| {
            r >= g.len() && density(res, r - g.len()).is_ok_and(|x| x > delta_hat)
        });
        per_length.push((r, found.map(|(g, _)| g.clone())));
    }
    let mut tally: BTreeMap<&Word, Vec<usize>> = BTreeMap::new();
    for (r, s) in &per_length {
        if let Some(s) = s {
            tally.entry(s).or_default().push(*r);
        }
    }
    let (line, lengths) = tally
        .iter()
        .max_by(|a, b| a.1.len().cmp(&b.1.len()).then(b.0.cmp(a.0)))
        .map(|(g, ls)| ((*g).clone(), ls.clone()))
        .ok_or_else(|| SearchError::NotFoundWithinHorizon("no length in L1 admits a line".into()))?;
    Ok(DensityLineResult { line, lengths, delta_hat, line_count: count.to_string(), per_length })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::largeness::parse_rational;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn residue_of_full_and_empty() {
        let g = w("1x0");
        assert_eq!(d_super_s(&Family::full(2, 8), &g), Family::full(2, 6));
        assert!(d_super_s(&Family::empty(2, 8), &g).is_empty());
    }

    #[test]
    fn line_count_small_cases() {
        // L0 = {0, 1}: only the line x0. L0 = {0, 2}: x0 followed by one of 0, 1, x0.
        assert_eq!(ovw_line_count(2, &[0, 1]), BigInt::from(1));
        assert_eq!(ovw_line_count(2, &[0, 2]), BigInt::from(3));
        assert_eq!(ovw_line_count(2, &[0, 1, 2]), BigInt::from(1 + 3 + 2));
        let lines = line_generators(2, 2);
        assert_eq!(lines.len(), 6);
    }

    #[test]
    fn full_family_picks_bare_variable() {
        let full = Family::full(2, 8);
        let res = density_line_search(&full, &parse_rational("1/2").unwrap(), &[0, 1, 2], &[4, 5, 6], &Runner::sequential())
            .unwrap();
        assert_eq!(res.line, w("x0"));
        assert_eq!(res.lengths, vec![4, 5, 6]);
        assert_eq!(res.delta_hat, parse_rational("1/192").unwrap());
    }
}
