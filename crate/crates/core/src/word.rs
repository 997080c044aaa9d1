//! Finite words over an alphabet `A = {0, .., k-1}` extended with variables
//! `x_0, x_1, ..`, together with the substitution calculus.
//!
//! Infinite variable words are represented by [`OmegaPrefix`], a finite
//! prefix that is valid as the start of some infinite variable word. Every
//! operation that needs more of the word than the prefix holds reports
//! [`WordError::CutPointMissing`] instead of guessing.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("letter {letter} at position {position} is outside the alphabet of size {k}")]
    IndexOutOfRange { letter: u8, position: usize, k: usize },
    #[error("no occurrence of x{needed}: the prefix is too short for this substitution")]
    CutPointMissing { needed: usize },
    #[error("substitution word has length {got} but the variable word has dimension {dim}")]
    DimensionMismatch { got: usize, dim: usize },
    #[error("x{var} at position {position} occurs before the cut point x{cut}")]
    VariableBeyondCut { var: u8, position: usize, cut: usize },
    #[error("invalid variable word: {0}")]
    Invalid(ValidityReport),
    #[error("not a prefix of an infinite variable word: x{var} at position {position}")]
    NotPrefixValid { var: u8, position: usize },
    #[error("variable word is not ordered")]
    NotOrdered,
    #[error("not a left variable word (position 0 must be x0)")]
    NotLeft,
}

/// A letter `a < k` or a variable `x_j`. The derived order puts every letter
/// before every variable, each kind ordered by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Letter(u8),
    Var(u8),
}

impl Symbol {
    pub fn is_var(self) -> bool {
        matches!(self, Symbol::Var(_))
    }

    /// Integer code used by the certificate schema: letters `0..k`, `x_j` as `k + j`.
    pub fn code(self, k: usize) -> usize {
        match self {
            Symbol::Letter(a) => a as usize,
            Symbol::Var(j) => k + j as usize,
        }
    }

    pub fn from_code(code: usize, k: usize) -> Symbol {
        if code < k {
            Symbol::Letter(code as u8)
        } else {
            Symbol::Var((code - k) as u8)
        }
    }
}

/// A finite word. Words are ordered by length first, then lexicographically
/// in the symbol order; this is the canonical order for enumerations and for
/// every "least witness" tie-break in the crate.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Symbol>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Deref for Word {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    /// Word made only of letters.
    pub fn letters(letters: &[u8]) -> Self {
        Word(letters.iter().map(|&a| Symbol::Letter(a)).collect())
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn concat(&self, other: &[Symbol]) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn has_vars(&self) -> bool {
        self.0.iter().any(|s| s.is_var())
    }

    /// Largest variable index occurring, if any.
    pub fn max_var(&self) -> Option<u8> {
        self.0
            .iter()
            .filter_map(|s| match s {
                Symbol::Var(j) => Some(*j),
                _ => None,
            })
            .max()
    }

    pub fn first_occurrence(&self, var: u8) -> Option<usize> {
        self.0.iter().position(|&s| s == Symbol::Var(var))
    }

    /// Letter indices, or `None` if the word contains a variable.
    pub fn letter_indices(&self) -> Option<Vec<u8>> {
        self.0
            .iter()
            .map(|s| match s {
                Symbol::Letter(a) => Some(*a),
                Symbol::Var(_) => None,
            })
            .collect()
    }

    pub fn check_letters(&self, k: usize) -> Result<(), WordError> {
        for (position, s) in self.0.iter().enumerate() {
            if let Symbol::Letter(a) = *s {
                if a as usize >= k {
                    return Err(WordError::IndexOutOfRange { letter: a, position, k });
                }
            }
        }
        Ok(())
    }

    pub fn to_codes(&self, k: usize) -> Vec<usize> {
        self.0.iter().map(|s| s.code(k)).collect()
    }

    pub fn from_codes(codes: &[usize], k: usize) -> Word {
        codes.iter().map(|&c| Symbol::from_code(c, k)).collect()
    }

    /// Apply `f` to every variable, keeping letters.
    pub fn map_vars(&self, f: impl Fn(u8) -> Symbol) -> Word {
        self.0
            .iter()
            .map(|&s| match s {
                Symbol::Var(j) => f(j),
                l => l,
            })
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        let mut after_var = false;
        for s in &self.0 {
            match *s {
                Symbol::Letter(a) if a < 10 => {
                    if after_var {
                        f.write_str(" ")?;
                    }
                    write!(f, "{a}")?;
                    after_var = false;
                }
                Symbol::Letter(a) => {
                    write!(f, "[{a}]")?;
                    after_var = false;
                }
                Symbol::Var(j) => {
                    write!(f, "x{j}")?;
                    after_var = true;
                }
            }
        }
        Ok(())
    }
}

fn subscript_digit(c: char) -> Option<u32> {
    let d = c as u32;
    (0x2080..=0x2089).contains(&d).then(|| d - 0x2080)
}

impl FromStr for Word {
    type Err = WordError;

    /// Parses the canonical text form. Letters are decimal digits or `[i]`,
    /// variables `x` followed by decimal (or subscript) digits; whitespace
    /// separates tokens and is otherwise ignored. `ε` alone is the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        if trimmed == "ε" || trimmed.is_empty() {
            return Ok(Word::empty());
        }
        let chars: Vec<char> = s.chars().collect();
        let mut out = Vec::new();
        let mut i = 0;
        let err = |column: usize, message: &str| WordError::Parse {
            column: column + 1,
            message: message.to_string(),
        };
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() || c == '…' {
                i += 1;
            } else if let Some(d) = c.to_digit(10) {
                out.push(Symbol::Letter(d as u8));
                i += 1;
            } else if c == '[' {
                let start = i;
                i += 1;
                let mut v: u32 = 0;
                let mut any = false;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    v = v * 10 + chars[i].to_digit(10).unwrap();
                    any = true;
                    i += 1;
                }
                if !any || i >= chars.len() || chars[i] != ']' || v > 255 {
                    return Err(err(start, "malformed [i] letter"));
                }
                out.push(Symbol::Letter(v as u8));
                i += 1;
            } else if c == 'x' {
                let start = i;
                i += 1;
                if i < chars.len() && chars[i] == '_' {
                    i += 1;
                }
                let mut v: u32 = 0;
                let mut any = false;
                let subscripts = i < chars.len() && subscript_digit(chars[i]).is_some();
                while i < chars.len() {
                    let d = if subscripts {
                        subscript_digit(chars[i])
                    } else {
                        chars[i].to_digit(10)
                    };
                    match d {
                        Some(d) => {
                            v = v * 10 + d;
                            any = true;
                            i += 1;
                        }
                        None => break,
                    }
                }
                if !any || v > 255 {
                    return Err(err(start, "variable needs an index"));
                }
                out.push(Symbol::Var(v as u8));
            } else {
                return Err(err(i, &format!("unexpected character {c:?}")));
            }
        }
        Ok(Word(out))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One condition of [`validate`]. `position` is the first violating position
/// when there is one; `variable` names the offending variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub pass: bool,
    pub position: Option<usize>,
    pub variable: Option<u8>,
}

impl Check {
    fn ok() -> Self {
        Check { pass: true, position: None, variable: None }
    }

    fn fail(position: Option<usize>, variable: u8) -> Self {
        Check { pass: false, position, variable: Some(variable) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub dimension: usize,
    /// Every variable index is below the dimension.
    pub range: Check,
    /// Each of `x_0 .. x_{n-1}` occurs.
    pub occurrence: Check,
    /// First occurrences appear in index order.
    pub first_order: Check,
    /// Last occurrence of `x_j` precedes the first of `x_{j+1}` (only when requested).
    pub ordered: Option<Check>,
}

impl ValidityReport {
    pub fn pass(&self) -> bool {
        self.range.pass
            && self.occurrence.pass
            && self.first_order.pass
            && self.ordered.as_ref().is_none_or(|c| c.pass)
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |c: &Check| {
            if c.pass {
                "pass".to_string()
            } else {
                format!(
                    "fail (x{} at {})",
                    c.variable.unwrap_or(0),
                    c.position.map_or("-".to_string(), |p| p.to_string())
                )
            }
        };
        write!(
            f,
            "dimension {}: range {}, occurrence {}, first-order {}",
            self.dimension,
            show(&self.range),
            show(&self.occurrence),
            show(&self.first_order)
        )?;
        if let Some(o) = &self.ordered {
            write!(f, ", ordered {}", show(o))?;
        }
        Ok(())
    }
}

/// Checks the n-variable word conditions on `word`. Total: failures are
/// entries of the report.
pub fn validate(word: &Word, n: usize, ordered: bool) -> ValidityReport {
    let mut range = Check::ok();
    let mut first_order = Check::ok();
    let mut ordered_check = Check::ok();
    let mut next_new = 0usize;
    let mut highest_seen: Option<u8> = None;
    for (pos, s) in word.iter().enumerate() {
        let Symbol::Var(j) = *s else { continue };
        if j as usize >= n && range.pass {
            range = Check::fail(Some(pos), j);
        }
        if (j as usize) > next_new && first_order.pass {
            first_order = Check::fail(Some(pos), j);
        }
        if j as usize == next_new {
            next_new += 1;
        }
        if let Some(h) = highest_seen {
            if j < h && ordered_check.pass {
                ordered_check = Check::fail(Some(pos), j);
            }
        }
        highest_seen = Some(highest_seen.map_or(j, |h| h.max(j)));
    }
    let mut occurrence = Check::ok();
    for j in 0..n {
        if word.first_occurrence(j as u8).is_none() {
            occurrence = Check::fail(None, j as u8);
            break;
        }
    }
    ValidityReport {
        dimension: n,
        range,
        occurrence,
        first_order,
        ordered: ordered.then_some(ordered_check),
    }
}

/// Replaces `x_j` by `u(j)` and stops before the first occurrence of
/// `x_{|u|}`. Returns whether that cut point was found.
fn subst_until_cut(w: &[Symbol], u: &[Symbol]) -> Result<(Word, bool), WordError> {
    let cut = u.len();
    let mut out = Vec::with_capacity(w.len());
    for (position, &s) in w.iter().enumerate() {
        match s {
            Symbol::Letter(_) => out.push(s),
            Symbol::Var(j) if j as usize == cut => return Ok((Word(out), true)),
            Symbol::Var(j) if (j as usize) < cut => out.push(u[j as usize]),
            Symbol::Var(j) => {
                return Err(WordError::VariableBeyondCut { var: j, position, cut })
            }
        }
    }
    Ok((Word(out), false))
}

/// `W[u]` for a finite prefix: the cut point `x_{|u|}` must occur.
pub fn substitute_strict(w: &Word, u: &Word) -> Result<Word, WordError> {
    match subst_until_cut(w, u)? {
        (out, true) => Ok(out),
        (_, false) => Err(WordError::CutPointMissing { needed: u.len() }),
    }
}

/// `w[u]` for a complete variable word of dimension `dim`: cuts at `x_{|u|}`
/// when `|u| < dim`, substitutes everything when `|u| = dim`.
pub fn substitute_complete(w: &Word, dim: usize, u: &Word) -> Result<Word, WordError> {
    if u.len() > dim {
        return Err(WordError::DimensionMismatch { got: u.len(), dim });
    }
    let (out, found) = subst_until_cut(w, u)?;
    if found || u.len() == dim {
        Ok(out)
    } else {
        Err(WordError::CutPointMissing { needed: u.len() })
    }
}

/// A validated n-variable word over an alphabet of size `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarWord {
    word: Word,
    k: usize,
    dim: usize,
    ordered: bool,
}

impl VarWord {
    pub fn new(word: Word, k: usize, dim: usize, ordered: bool) -> Result<Self, WordError> {
        word.check_letters(k)?;
        let report = validate(&word, dim, ordered);
        if !report.pass() {
            if ordered && report.ordered.as_ref().is_some_and(|c| !c.pass) {
                let unordered = validate(&word, dim, false);
                if unordered.pass() {
                    return Err(WordError::NotOrdered);
                }
            }
            return Err(WordError::Invalid(report));
        }
        Ok(VarWord { word, k, dim, ordered })
    }

    /// Validates with the dimension read off the word (largest variable + 1).
    pub fn infer(word: Word, k: usize, ordered: bool) -> Result<Self, WordError> {
        let dim = word.max_var().map_or(0, |j| j as usize + 1);
        VarWord::new(word, k, dim, ordered)
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_ordered(&self) -> bool {
        self.ordered
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn substitute(&self, u: &Word) -> Result<Word, WordError> {
        substitute_complete(&self.word, self.dim, u)
    }
}

/// A finite prefix of an infinite variable word: every variable `x_j` with
/// `j > 0` that occurs has `x_{j-1}` occurring strictly earlier.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OmegaPrefix {
    word: Word,
    k: usize,
}

impl OmegaPrefix {
    pub fn new(word: Word, k: usize) -> Result<Self, WordError> {
        word.check_letters(k)?;
        let mut next_new = 0usize;
        for (position, s) in word.iter().enumerate() {
            if let Symbol::Var(j) = *s {
                if j as usize > next_new {
                    return Err(WordError::NotPrefixValid { var: j, position });
                }
                if j as usize == next_new {
                    next_new += 1;
                }
            }
        }
        Ok(OmegaPrefix { word, k })
    }

    /// `x_0 x_1 .. x_{len-1}`.
    pub fn identity(len: usize, k: usize) -> Self {
        OmegaPrefix { word: (0..len).map(|j| Symbol::Var(j as u8)).collect(), k }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Number of distinct variables present (they are `x_0 .. x_{m-1}`).
    pub fn var_count(&self) -> usize {
        self.word.max_var().map_or(0, |j| j as usize + 1)
    }

    /// `W[u]`; `u` may contain variables. Letters of `u` must lie in the alphabet.
    pub fn substitute(&self, u: &Word) -> Result<Word, WordError> {
        u.check_letters(self.k)?;
        substitute_strict(&self.word, u)
    }

    /// `W ∘ V`: every `x_j` of `W` becomes `V(j)`. The result stops at the
    /// first position of `W` holding a variable `x_j` with `j ≥ |V|`, where
    /// the information in `V` runs out. The alphabet of the result is the
    /// one of `V`.
    pub fn compose(&self, v: &OmegaPrefix) -> OmegaPrefix {
        let mut out = Vec::with_capacity(self.word.len());
        for &s in self.word.iter() {
            match s {
                Symbol::Letter(_) => out.push(s),
                Symbol::Var(j) => match v.word.get(j as usize) {
                    Some(&img) => out.push(img),
                    None => break,
                },
            }
        }
        OmegaPrefix { word: Word(out), k: self.k.max(v.k) }
    }
}

/// A 1-variable word whose variable `x_0` sits at position 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LeftVarWord(VarWord);

impl LeftVarWord {
    pub fn new(word: Word, k: usize) -> Result<Self, WordError> {
        if word.first() != Some(&Symbol::Var(0)) {
            return Err(WordError::NotLeft);
        }
        Ok(LeftVarWord(VarWord::new(word, k, 1, true)?))
    }

    pub fn word(&self) -> &Word {
        self.0.word()
    }

    pub fn var_word(&self) -> &VarWord {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `w[a]`.
    pub fn instantiate(&self, a: Symbol) -> Word {
        self.word().map_vars(|_| a)
    }
}

/// `σ` followed by left 1-variable blocks, one per variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub sigma: Word,
    pub blocks: Vec<LeftVarWord>,
}

/// Splits an ordered n-variable word at the first occurrences of its variables.
pub fn decompose(w: &VarWord) -> Result<Decomposition, WordError> {
    if !w.is_ordered() && !validate(w.word(), w.dim(), true).pass() {
        return Err(WordError::NotOrdered);
    }
    let n = w.dim();
    let starts: Vec<usize> = (0..n)
        .map(|j| w.word().first_occurrence(j as u8).expect("validated"))
        .collect();
    let sigma = w.word().slice(0, starts.first().copied().unwrap_or(w.len()));
    let mut blocks = Vec::with_capacity(n);
    for j in 0..n {
        let end = starts.get(j + 1).copied().unwrap_or(w.len());
        let block = w.word().slice(starts[j], end).map_vars(|_| Symbol::Var(0));
        blocks.push(LeftVarWord::new(block, w.k())?);
    }
    Ok(Decomposition { sigma, blocks })
}

/// Inverse of [`decompose`]; block `i` has its variable renamed to `x_i`.
pub fn recompose(d: &Decomposition, k: usize) -> Result<VarWord, WordError> {
    let mut symbols = d.sigma.symbols().to_vec();
    for (i, b) in d.blocks.iter().enumerate() {
        symbols.extend(b.word().map_vars(|_| Symbol::Var(i as u8)).iter());
    }
    VarWord::new(Word(symbols), k, d.blocks.len(), true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn text_round_trip() {
        let word = w("01x0 10x1 01x0 001x2");
        assert_eq!(word.to_string(), "01x0 10x1 01x0 001x2");
        assert_eq!(w("x₀x₁0"), w("x0x1 0"));
        assert_eq!(w("[12]x3"), Word::new(vec![Symbol::Letter(12), Symbol::Var(3)]));
        assert_eq!(w("ε"), Word::empty());
        assert!(matches!("0y".parse::<Word>(), Err(WordError::Parse { column: 2, .. })));
    }

    #[test]
    fn validate_examples() {
        let good = w("01101x0 1010x1 10x0 101x2 0110x0 01010x1");
        let r = validate(&good, 3, false);
        assert!(r.pass(), "{r}");
        assert!(OmegaPrefix::new(good, 2).is_ok());

        let bad = w("010x1 0101x0");
        let r = validate(&bad, 2, false);
        assert!(!r.pass());
        assert!(!r.first_order.pass);
        assert_eq!(r.first_order.position, Some(3));
        assert!(OmegaPrefix::new(bad, 2).is_err());

        // x2 before x1 ever appears
        assert!(OmegaPrefix::new(w("00191x0 101x2"), 10).is_err());

        assert!(validate(&Word::empty(), 0, false).pass());
        assert!(validate(&Word::empty(), 0, true).pass());
    }

    #[test]
    fn ordered_condition() {
        let r = validate(&w("x0x1x0"), 2, true);
        assert!(r.first_order.pass);
        assert_eq!(r.ordered.as_ref().unwrap().position, Some(2));
        assert!(!r.pass());
        assert!(validate(&w("x0x1x0"), 2, false).pass());
        assert_eq!(VarWord::new(w("x0x1x0"), 2, 2, true), Err(WordError::NotOrdered));
    }

    #[test]
    fn substitution_examples() {
        let big = OmegaPrefix::new(w("01x0 10x1 01x0 001x2"), 2).unwrap();
        assert_eq!(big.substitute(&Word::empty()).unwrap(), w("01"));
        assert_eq!(big.substitute(&w("0")).unwrap(), w("01010"));
        assert_eq!(big.substitute(&w("01")).unwrap(), w("010101010001"));
        assert_eq!(big.substitute(&w("10")).unwrap(), w("011100011001"));
        assert_eq!(big.substitute(&w("1")).unwrap(), w("01110"));
        assert_eq!(
            big.substitute(&w("010")),
            Err(WordError::CutPointMissing { needed: 3 })
        );
        assert!(matches!(
            big.substitute(&w("2")),
            Err(WordError::IndexOutOfRange { letter: 2, .. })
        ));
    }

    #[test]
    fn bare_variable_is_identity() {
        let x0 = VarWord::new(w("x0"), 3, 1, true).unwrap();
        for a in 0..3u8 {
            assert_eq!(x0.substitute(&Word::letters(&[a])).unwrap(), Word::letters(&[a]));
        }
        assert_eq!(x0.substitute(&Word::empty()).unwrap(), Word::empty());
        assert!(x0.substitute(&w("00")).is_err());
    }

    #[test]
    fn compose_identities() {
        let wp = OmegaPrefix::new(w("01x0 10x1 01x0 001x2 1"), 2).unwrap();
        let id = OmegaPrefix::identity(8, 2);
        assert_eq!(wp.compose(&id), wp);
        let v = OmegaPrefix::new(w("1x0 0x1 x0 x2 x3"), 2).unwrap();
        let left = OmegaPrefix::identity(20, 2);
        assert_eq!(left.compose(&v), v);
        // truncation where V runs out
        let short = OmegaPrefix::new(w("x0"), 2).unwrap();
        assert_eq!(wp.compose(&short).word(), &w("01x0 10"));
    }

    #[test]
    fn decompose_examples() {
        let vw = VarWord::new(w("10x0 01x0 10"), 2, 1, true).unwrap();
        let d = decompose(&vw).unwrap();
        assert_eq!(d.sigma, w("10"));
        assert_eq!(d.blocks.len(), 1);
        assert_eq!(d.blocks[0].word(), &w("x0 01x0 10"));
        assert_eq!(recompose(&d, 2).unwrap(), vw);

        let d = decompose(&VarWord::new(w("x0"), 2, 1, true).unwrap()).unwrap();
        assert_eq!(d.sigma, Word::empty());
        assert_eq!(d.blocks[0].word(), &w("x0"));

        let d = decompose(&VarWord::new(w("1x0 0x1 x1 1x2"), 2, 3, true).unwrap()).unwrap();
        let blocks: Vec<String> = d.blocks.iter().map(|b| b.word().to_string()).collect();
        assert_eq!(blocks, ["x0 0", "x0x0 1", "x0"]);
    }

    #[test]
    fn unordered_decompose_rejected() {
        let vw = VarWord::new(w("x0x1x0"), 2, 2, false).unwrap();
        assert_eq!(decompose(&vw), Err(WordError::NotOrdered));
    }

    #[test]
    fn left_var_word() {
        assert_eq!(LeftVarWord::new(w("0x0"), 2), Err(WordError::NotLeft));
        let l = LeftVarWord::new(w("x0 1x0"), 2).unwrap();
        assert_eq!(l.instantiate(Symbol::Letter(0)), w("010"));
    }

    #[test]
    fn codes_round_trip() {
        let word = w("01x0 10x1");
        let codes = word.to_codes(2);
        assert_eq!(codes, vec![0, 1, 2, 1, 0, 3]);
        assert_eq!(Word::from_codes(&codes, 2), word);
    }
}
