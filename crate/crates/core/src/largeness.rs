//! Density, syndeticity, thickness and piecewise syndeticity evaluated at a
//! finite horizon `N`, plus the split lemmas as certificate-producing
//! procedures.
//!
//! Horizon semantics: a family is `ℓ`-syndetic when every `σ ∈ A^{≤N-ℓ}`
//! reaches it by prepending some `τ ∈ A^{≤ℓ}`; it is thick to `m` when for
//! every `ℓ ≤ m` some anchor `σ` with `|σ| + ℓ ≤ N` has `A^{≤ℓ}·σ` inside.
//! A piecewise syndetic decomposition `(S, T, ℓ)` is valid when `S` is
//! `ℓ`-syndetic and `T` is thick to `ℓ`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::space::WordSpace;
use crate::word::Word;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LargenessError {
    #[error("length {requested} exceeds the horizon {horizon}")]
    HorizonExceeded { requested: usize, horizon: usize },
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("families live in different spaces")]
    SpaceMismatch,
    #[error("word {0} is not over the alphabet or exceeds the horizon")]
    BadMember(Word),
    #[error("no part is piecewise syndetic at this horizon (horizon too small or decomposition invalid)")]
    NoPartSelected,
    #[error("too many parts: {0} (at most 8)")]
    TooManyParts(usize),
}

/// A subset of `A^{≤N}`, stored as a bitset over length-lex ranks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Family {
    space: WordSpace,
    bits: BitSet,
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Family")
            .field("k", &self.space.k())
            .field("horizon", &self.space.horizon())
            .field("count", &self.bits.count())
            .finish()
    }
}

/// JSON form: `{k, horizon, members}` with members in canonical text.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FamilyJson {
    pub k: usize,
    pub horizon: usize,
    pub members: Vec<Word>,
}

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = FamilyJson::deserialize(d)?;
        Family::from_words(j.k, j.horizon, j.members).map_err(serde::de::Error::custom)
    }
}

impl Family {
    pub fn empty(k: usize, horizon: usize) -> Self {
        let space = WordSpace::new(k, horizon);
        Family { bits: BitSet::new(space.size()), space }
    }

    pub fn full(k: usize, horizon: usize) -> Self {
        let space = WordSpace::new(k, horizon);
        Family { bits: BitSet::full(space.size()), space }
    }

    pub fn from_fn(k: usize, horizon: usize, pred: impl Fn(&Word) -> bool) -> Self {
        let mut f = Family::empty(k, horizon);
        for r in 0..f.space.size() {
            if pred(&f.space.unrank(r)) {
                f.bits.insert(r);
            }
        }
        f
    }

    pub fn from_words(
        k: usize,
        horizon: usize,
        words: impl IntoIterator<Item = Word>,
    ) -> Result<Self, LargenessError> {
        let mut f = Family::empty(k, horizon);
        for w in words {
            f.insert(&w)?;
        }
        Ok(f)
    }

    pub(crate) fn from_bits(space: WordSpace, bits: BitSet) -> Self {
        Family { space, bits }
    }

    pub fn space(&self) -> WordSpace {
        self.space
    }

    pub fn k(&self) -> usize {
        self.space.k()
    }

    pub fn horizon(&self) -> usize {
        self.space.horizon()
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn insert(&mut self, w: &Word) -> Result<(), LargenessError> {
        if w.check_letters(self.k()).is_err() || w.has_vars() {
            return Err(LargenessError::BadMember(w.clone()));
        }
        let r = self.space.rank(w).ok_or_else(|| LargenessError::BadMember(w.clone()))?;
        self.bits.insert(r);
        Ok(())
    }

    pub fn contains(&self, w: &Word) -> bool {
        !w.has_vars()
            && w.check_letters(self.k()).is_ok()
            && self.space.rank(w).is_some_and(|r| self.bits.contains(r))
    }

    #[inline]
    pub fn contains_rank(&self, r: usize) -> bool {
        self.bits.contains(r)
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn members(&self) -> impl Iterator<Item = Word> + '_ {
        self.bits.iter().map(|r| self.space.unrank(r))
    }

    pub fn to_json(&self) -> FamilyJson {
        FamilyJson { k: self.k(), horizon: self.horizon(), members: self.members().collect() }
    }

    fn same_space(&self, other: &Family) -> Result<(), LargenessError> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(LargenessError::SpaceMismatch)
        }
    }

    pub fn union(&self, other: &Family) -> Family {
        self.same_space(other).expect("union across spaces");
        Family { space: self.space, bits: self.bits.union(&other.bits) }
    }

    pub fn intersection(&self, other: &Family) -> Family {
        self.same_space(other).expect("intersection across spaces");
        Family { space: self.space, bits: self.bits.intersection(&other.bits) }
    }

    pub fn difference(&self, other: &Family) -> Family {
        self.same_space(other).expect("difference across spaces");
        Family { space: self.space, bits: self.bits.difference(&other.bits) }
    }

    /// `A^{≤N} ∖ self`.
    pub fn complement(&self) -> Family {
        Family { space: self.space, bits: self.bits.complement() }
    }

    pub fn is_subset(&self, other: &Family) -> bool {
        self.space == other.space && self.bits.is_subset(&other.bits)
    }

    /// Members of length `≤ horizon`, as a family at the smaller horizon.
    pub fn restrict(&self, horizon: usize) -> Family {
        let h = horizon.min(self.horizon());
        let space = WordSpace::new(self.k(), h);
        let mut bits = BitSet::new(space.size());
        for r in self.bits.iter().take_while(|&r| r < space.size()) {
            bits.insert(r);
        }
        Family { space, bits }
    }

    /// `|D ∩ A^r|`.
    pub fn count_at(&self, r: usize) -> usize {
        self.bits.count_range(self.space.offset(r)..self.space.offset(r + 1))
    }
}

fn ratio(num: usize, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `dens_{A^r}(D) = |D ∩ A^r| / k^r`.
pub fn density(d: &Family, r: usize) -> Result<BigRational, LargenessError> {
    if r > d.horizon() {
        return Err(LargenessError::HorizonExceeded { requested: r, horizon: d.horizon() });
    }
    Ok(ratio(d.count_at(r), d.space.count_at(r)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityProfile {
    /// `densities[r]` for `r ≤ N`, as exact rationals.
    #[serde(with = "rational_text::vec")]
    pub densities: Vec<BigRational>,
    #[serde(with = "rational_text")]
    pub epsilon: BigRational,
    /// Lengths `r` with density strictly above `epsilon`.
    pub witness_lengths: Vec<usize>,
}

pub fn density_profile(d: &Family, epsilon: &BigRational) -> DensityProfile {
    let densities: Vec<BigRational> =
        (0..=d.horizon()).map(|r| density(d, r).expect("r ≤ N")).collect();
    let witness_lengths =
        densities.iter().enumerate().filter(|(_, x)| *x > epsilon).map(|(r, _)| r).collect();
    DensityProfile { densities, epsilon: epsilon.clone(), witness_lengths }
}

fn check_partition(whole: &Family, parts: &[&Family]) -> Result<(), LargenessError> {
    for p in parts {
        whole.same_space(p)?;
    }
    let mut seen = Family::empty(whole.k(), whole.horizon());
    for (i, p) in parts.iter().enumerate() {
        if !seen.bits.is_disjoint(&p.bits) {
            let w = seen.intersection(p).members().next().expect("nonempty");
            return Err(LargenessError::NotAPartition(format!("part {i} overlaps earlier parts at {w}")));
        }
        seen = seen.union(p);
    }
    if seen != *whole {
        let w = seen
            .difference(whole)
            .members()
            .next()
            .or_else(|| whole.difference(&seen).members().next())
            .expect("sets differ");
        return Err(LargenessError::NotAPartition(format!("union differs from the whole at {w}")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DensitySide {
    E,
    F,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensitySplitReport {
    /// `B = { r : dens(D, r) > ε }`.
    pub witness_lengths: Vec<usize>,
    /// `B ∩ C`, where `C = { r : dens(E, r) > ε/2 }`.
    pub e_lengths: Vec<usize>,
    /// `B ∖ C`; on each of these `dens(F, r) > ε/2` was checked.
    pub f_lengths: Vec<usize>,
    /// The inequality `dens(F, r) > ε/2` held on every `r ∈ B ∖ C`.
    pub inequality_holds: bool,
    /// The side keeping at least as many witness lengths (ties go to `E`).
    pub side: DensitySide,
}

/// Runs the case split of the density partition lemma at the horizon.
pub fn density_split(
    d: &Family,
    e: &Family,
    f: &Family,
    epsilon: &BigRational,
) -> Result<DensitySplitReport, LargenessError> {
    check_partition(d, &[e, f])?;
    let half = epsilon / BigRational::from_integer(BigInt::from(2));
    let mut report = DensitySplitReport {
        witness_lengths: vec![],
        e_lengths: vec![],
        f_lengths: vec![],
        inequality_holds: true,
        side: DensitySide::E,
    };
    for r in 0..=d.horizon() {
        if density(d, r)? <= *epsilon {
            continue;
        }
        report.witness_lengths.push(r);
        if density(e, r)? > half {
            report.e_lengths.push(r);
        } else {
            report.f_lengths.push(r);
            if density(f, r)? <= half {
                report.inequality_holds = false;
            }
        }
    }
    if report.f_lengths.len() > report.e_lengths.len() {
        report.side = DensitySide::F;
    }
    Ok(report)
}

/// `F·σ = { τσ : τ ∈ F }`, dropping images longer than the horizon.
pub fn concat_family(f: &Family, sigma: &Word) -> (Family, usize) {
    let mut out = Family::empty(f.k(), f.horizon());
    let mut dropped = 0;
    for tau in f.members() {
        let w = tau.concat(sigma);
        if w.len() > f.horizon() {
            dropped += 1;
        } else {
            out.insert(&w).expect("letters are in the alphabet");
        }
    }
    (out, dropped)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyndeticityWitness {
    pub ell: usize,
    /// `(σ, τ)` with `τσ ∈ S`, one entry per `σ ∈ A^{≤N-ℓ}` in length-lex order.
    pub translators: Vec<(Word, Word)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Syndeticity {
    Witness(SyndeticityWitness),
    /// The length-lex least `σ` that no `τ ∈ A^{≤ℓ}` carries into the family.
    Counterexample(Word),
}

impl Syndeticity {
    pub fn holds(&self) -> bool {
        matches!(self, Syndeticity::Witness(_))
    }
}

/// Least `τ` (length-lex) with `τσ ∈ S`, as (length, index), or `None`.
fn translator(s: &Family, ell: usize, sigma_len: usize, sigma_idx: usize) -> Option<(usize, usize)> {
    let sp = s.space;
    for tl in 0..=ell {
        for ti in 0..sp.count_at(tl) {
            let r = sp.concat_rank(tl, ti, sigma_len, sigma_idx)?;
            if s.bits.contains(r) {
                return Some((tl, ti));
            }
        }
    }
    None
}

/// Tests `ℓ`-syndeticity with `σ` ranging over `A^{≤N-ℓ}`.
pub fn is_syndetic(s: &Family, ell: usize) -> Syndeticity {
    let sp = s.space;
    let mut translators = Vec::new();
    if ell <= sp.horizon() {
        for sl in 0..=sp.horizon() - ell {
            for si in 0..sp.count_at(sl) {
                let sigma = crate::space::word_from_index(sp.k(), sl, si);
                match translator(s, ell, sl, si) {
                    Some((tl, ti)) => {
                        translators.push((sigma, crate::space::word_from_index(sp.k(), tl, ti)))
                    }
                    None => return Syndeticity::Counterexample(sigma),
                }
            }
        }
    }
    Syndeticity::Witness(SyndeticityWitness { ell, translators })
}

/// `ℓ`-syndeticity as a plain predicate (no witness table).
pub fn syndetic_holds(s: &Family, ell: usize) -> bool {
    let sp = s.space;
    if ell > sp.horizon() {
        return true;
    }
    (0..=sp.horizon() - ell)
        .all(|sl| (0..sp.count_at(sl)).all(|si| translator(s, ell, sl, si).is_some()))
}

/// `A^{≤ℓ}·σ ⊆ T`.
pub fn block_inside(t: &Family, ell: usize, sigma_len: usize, sigma_idx: usize) -> bool {
    let sp = t.space;
    (0..=ell).all(|tl| {
        (0..sp.count_at(tl)).all(|ti| {
            sp.concat_rank(tl, ti, sigma_len, sigma_idx).is_some_and(|r| t.bits.contains(r))
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThickWitness {
    /// `anchors[ℓ]` is the length-lex least `σ` with `A^{≤ℓ}·σ ⊆ T`.
    pub anchors: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Thickness {
    Witness(ThickWitness),
    /// Least `ℓ` without an anchor.
    FailsAt(usize),
}

impl Thickness {
    pub fn holds(&self) -> bool {
        matches!(self, Thickness::Witness(_))
    }
}

fn anchor(t: &Family, ell: usize) -> Option<(usize, usize)> {
    let sp = t.space;
    if ell > sp.horizon() {
        return None;
    }
    (0..=sp.horizon() - ell).find_map(|sl| {
        (0..sp.count_at(sl)).find(|&si| block_inside(t, ell, sl, si)).map(|si| (sl, si))
    })
}

/// Finds anchors for every `ℓ ≤ ell_max`, or the least `ℓ` lacking one.
pub fn is_thick(t: &Family, ell_max: usize) -> Thickness {
    let mut anchors = Vec::with_capacity(ell_max + 1);
    for ell in 0..=ell_max {
        match anchor(t, ell) {
            Some((sl, si)) => anchors.push(crate::space::word_from_index(t.k(), sl, si)),
            None => return Thickness::FailsAt(ell),
        }
    }
    Thickness::Witness(ThickWitness { anchors })
}

pub fn thick_holds(t: &Family, ell_max: usize) -> bool {
    (0..=ell_max).all(|ell| anchor(t, ell).is_some())
}

/// `P = S ∩ T` with `S` the syndetic part and `T` the thick part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PwDecomposition {
    pub syndetic: Family,
    pub thick: Family,
    pub ell: usize,
}

impl PwDecomposition {
    pub fn new(syndetic: Family, thick: Family, ell: usize) -> Result<Self, LargenessError> {
        syndetic.same_space(&thick)?;
        Ok(PwDecomposition { syndetic, thick, ell })
    }

    pub fn members(&self) -> Family {
        self.syndetic.intersection(&self.thick)
    }

    pub fn space(&self) -> WordSpace {
        self.syndetic.space
    }

    /// `S` is `ℓ`-syndetic and `T` is thick to `ℓ` at the horizon.
    pub fn is_valid(&self) -> bool {
        syndetic_holds(&self.syndetic, self.ell) && thick_holds(&self.thick, self.ell)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplitSide {
    B,
    C,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCertificate {
    pub side: SplitSide,
    /// `S̃ = B ∪ (S ∖ P)`.
    pub s_tilde: Family,
    /// Both identities `B = S̃ ∩ T` and `C = T̃ ∩ S` held.
    pub identities_hold: bool,
    /// Decomposition of the chosen side: `(S̃, T)` for `B`, `(S, T̃)` for `C`.
    pub decomposition: PwDecomposition,
    /// For the `C` side: the `σ` that `S̃` misses, an anchor of `T̃` for `ℓ`.
    pub thick_anchor: Option<Word>,
}

/// Splits a piecewise syndetic `P = B ⊔ C` following the two-way lemma.
pub fn pw_split(
    p: &PwDecomposition,
    b: &Family,
    c: &Family,
) -> Result<SplitCertificate, LargenessError> {
    let members = p.members();
    check_partition(&members, &[b, c])?;
    let s_tilde = b.union(&p.syndetic.difference(&members));
    let t_tilde = s_tilde.complement();
    let identities_hold =
        *b == s_tilde.intersection(&p.thick) && *c == t_tilde.intersection(&p.syndetic);
    match is_syndetic(&s_tilde, p.ell) {
        Syndeticity::Witness(_) => Ok(SplitCertificate {
            side: SplitSide::B,
            decomposition: PwDecomposition::new(s_tilde.clone(), p.thick.clone(), p.ell)?,
            s_tilde,
            identities_hold,
            thick_anchor: None,
        }),
        Syndeticity::Counterexample(sigma) => Ok(SplitCertificate {
            side: SplitSide::C,
            decomposition: PwDecomposition::new(p.syndetic.clone(), t_tilde, p.ell)?,
            s_tilde,
            identities_hold,
            thick_anchor: Some(sigma),
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrownCertificate {
    pub part: usize,
    /// The inclusion-minimal index set `B` with `(A^{≤N} ∖ T) ∪ ⋃_{j∈B} C_j` syndetic.
    pub minimal_set: Vec<usize>,
    /// `(X_B, A^{≤N} ∖ X_{B∖{i}})`: a decomposition whose intersection is `C_i`.
    pub decomposition: PwDecomposition,
}

/// Picks a piecewise syndetic part of a finite partition of `P`.
///
/// Index sets are tried by increasing size (then lexicographically), so the
/// first syndetic one is inclusion-minimal; its least element is returned.
pub fn brown_select(
    p: &PwDecomposition,
    parts: &[Family],
) -> Result<BrownCertificate, LargenessError> {
    if parts.len() > 8 {
        return Err(LargenessError::TooManyParts(parts.len()));
    }
    let members = p.members();
    check_partition(&members, &parts.iter().collect::<Vec<_>>())?;
    let outside = p.thick.complement();
    let cover = |set: u32| -> Family {
        (0..parts.len())
            .filter(|j| set >> j & 1 == 1)
            .fold(outside.clone(), |acc, j| acc.union(&parts[j]))
    };
    let mut subsets: Vec<u32> = (0..1u32 << parts.len()).collect();
    subsets.sort_by_key(|&s| (s.count_ones(), (0..parts.len()).filter(|j| s >> j & 1 == 1).collect::<Vec<_>>()));
    let minimal = subsets
        .into_iter()
        .find(|&s| syndetic_holds(&cover(s), p.ell))
        .ok_or(LargenessError::NoPartSelected)?;
    if minimal == 0 {
        return Err(LargenessError::NoPartSelected);
    }
    let part = minimal.trailing_zeros() as usize;
    let x_b = cover(minimal);
    let t_tilde = cover(minimal & !(1 << part)).complement();
    Ok(BrownCertificate {
        part,
        minimal_set: (0..parts.len()).filter(|j| minimal >> j & 1 == 1).collect(),
        decomposition: PwDecomposition::new(x_b, t_tilde, p.ell)?,
    })
}

/// `J = { σ ∈ I : A^{≤ℓ}·σ ⊆ I }` at horizon `N - ℓ`.
pub fn thick_shrink(i: &Family, ell: usize) -> Family {
    let sp = i.space;
    let h = sp.horizon().saturating_sub(ell);
    let out_space = WordSpace::new(sp.k(), h);
    let mut bits = BitSet::new(out_space.size());
    if ell <= sp.horizon() {
        for sl in 0..=h {
            for si in 0..sp.count_at(sl) {
                if block_inside(i, ell, sl, si) {
                    bits.insert(out_space.offset(sl) + si);
                }
            }
        }
    }
    Family::from_bits(out_space, bits)
}

/// Parses `p/q` or an integer as an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

pub fn one() -> BigRational {
    BigRational::one()
}

/// Serde adapter writing rationals as `"p/q"` (or `"p"` when integral).
pub mod rational_text {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(xs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(xs.iter().map(|x| x.to_string()))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|s| {
                    crate::largeness::parse_rational(s)
                        .ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
                })
                .collect()
        }
    }
}
