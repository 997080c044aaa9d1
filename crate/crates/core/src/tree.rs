//! OVW-trees: the instantiation sets `{ w[u] : u ∈ A^{≤n} }` of ordered
//! n-variable words, and the correspondence back to their generators.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::space::words_of_length;
use crate::word::{Symbol, VarWord, Word, WordError};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("generator is not an ordered variable word")]
    NotOrdered,
    #[error("not an OVW-tree: expected {expected}, found {found}")]
    NotATree { expected: Word, found: Word },
    #[error("not an OVW-tree: {0}")]
    Malformed(String),
    #[error("level {level} out of range for a tree of dimension {dim}")]
    LevelOutOfRange { level: usize, dim: usize },
    #[error("{0} is not an element of the tree")]
    ElementNotInTree(Word),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// An OVW-tree with its generator. Elements are kept sorted in length-lex
/// order, so every level is a contiguous run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OvwTree {
    generator: VarWord,
    elements: Vec<Word>,
    /// `level_lengths[j]` is the common length of the words in `T(j)`.
    level_lengths: Vec<usize>,
}

/// JSON shape used on the command line.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TreeJson {
    pub generator: Word,
    pub dimension: usize,
    pub elements: Vec<Word>,
}

impl OvwTree {
    pub fn generator(&self) -> &VarWord {
        &self.generator
    }

    pub fn dim(&self) -> usize {
        self.generator.dim()
    }

    pub fn k(&self) -> usize {
        self.generator.k()
    }

    pub fn elements(&self) -> &[Word] {
        &self.elements
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.elements.binary_search(w).is_ok()
    }

    /// `T(j)`.
    pub fn level(&self, j: usize) -> Result<&[Word], TreeError> {
        let len = *self
            .level_lengths
            .get(j)
            .ok_or(TreeError::LevelOutOfRange { level: j, dim: self.dim() })?;
        let start = self.elements.partition_point(|w| w.len() < len);
        let end = self.elements.partition_point(|w| w.len() <= len);
        Ok(&self.elements[start..end])
    }

    /// The set of levels: the distinct element lengths.
    pub fn levels(&self) -> &[usize] {
        &self.level_lengths
    }

    /// Largest element length.
    pub fn size(&self) -> usize {
        *self.level_lengths.last().expect("a tree has a level 0")
    }

    pub fn to_json(&self) -> TreeJson {
        TreeJson {
            generator: self.generator.word().clone(),
            dimension: self.dim(),
            elements: self.elements.clone(),
        }
    }
}

/// Builds `{ w[u] : u ∈ A^{≤n} }`.
pub fn tree_from_generator(w: &VarWord) -> Result<OvwTree, TreeError> {
    if !w.is_ordered() {
        return Err(TreeError::NotOrdered);
    }
    let k = w.k();
    let mut elements = Vec::new();
    let mut level_lengths = Vec::with_capacity(w.dim() + 1);
    for j in 0..=w.dim() {
        let len = w.word().first_occurrence(j as u8).unwrap_or(w.len());
        level_lengths.push(len);
        for u in words_of_length(k, j) {
            elements.push(w.substitute(&u)?);
        }
    }
    elements.sort();
    elements.dedup();
    Ok(OvwTree { generator: w.clone(), elements, level_lengths })
}

/// Recovers the generator of an OVW-tree given as a bare set of words.
///
/// Level `j ≥ 1` decides the region between the lengths of levels `j-1` and
/// `j`: the first position is `x_{j-1}`, other positions become `x_{j-1}`
/// when the words of level `j` disagree there and a letter otherwise. The
/// candidate is then rebuilt and compared with the input.
pub fn generator_from_tree(set: &[Word], k: usize) -> Result<VarWord, TreeError> {
    let mut sorted: Vec<Word> = set.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.is_empty() {
        return Err(TreeError::Malformed("empty set".into()));
    }
    if let Some(w) = sorted.iter().find(|w| w.has_vars()) {
        return Err(TreeError::Malformed(format!("{w} contains a variable")));
    }
    let mut lengths: Vec<usize> = sorted.iter().map(|w| w.len()).collect();
    lengths.dedup();
    let level_of = |len: usize| -> Vec<&Word> { sorted.iter().filter(|w| w.len() == len).collect() };

    let root = level_of(lengths[0]);
    if root.len() != 1 {
        return Err(TreeError::NotATree { expected: root[0].clone(), found: root[1].clone() });
    }
    let mut gen: Vec<Symbol> = root[0].symbols().to_vec();
    for j in 1..lengths.len() {
        let level = level_of(lengths[j]);
        let (from, to) = (lengths[j - 1], lengths[j]);
        let var = Symbol::Var((j - 1) as u8);
        gen.push(var);
        for p in from + 1..to {
            let first = level[0][p];
            if level.iter().all(|w| w[p] == first) {
                gen.push(first);
            } else {
                gen.push(var);
            }
        }
    }
    let candidate = VarWord::new(Word::new(gen), k, lengths.len() - 1, true).map_err(|e| {
        TreeError::Malformed(format!("reconstructed generator is invalid: {e}"))
    })?;
    let rebuilt = tree_from_generator(&candidate)?;
    if rebuilt.elements != sorted {
        let missing = rebuilt.elements.iter().find(|w| sorted.binary_search(w).is_err());
        let extra = sorted.iter().find(|w| rebuilt.elements.binary_search(w).is_err());
        let (expected, found) = match (missing, extra) {
            (Some(m), Some(e)) => (m.clone(), e.clone()),
            (Some(m), None) => (m.clone(), Word::empty()),
            (None, Some(e)) => (Word::empty(), e.clone()),
            (None, None) => unreachable!("sets differ"),
        };
        return Err(TreeError::NotATree { expected, found });
    }
    Ok(candidate)
}

/// The bijection between a tree and `A^{≤n}`: `f(generator[u]) = u`.
#[derive(Clone, Debug)]
pub struct CanonicalIso {
    to_index: BTreeMap<Word, Word>,
    generator: VarWord,
}

impl CanonicalIso {
    pub fn new(tree: &OvwTree) -> Result<Self, TreeError> {
        let mut to_index = BTreeMap::new();
        for j in 0..=tree.dim() {
            for u in words_of_length(tree.k(), j) {
                to_index.insert(tree.generator.substitute(&u)?, u);
            }
        }
        Ok(CanonicalIso { to_index, generator: tree.generator.clone() })
    }

    pub fn forward(&self, element: &Word) -> Result<&Word, TreeError> {
        self.to_index
            .get(element)
            .ok_or_else(|| TreeError::ElementNotInTree(element.clone()))
    }

    pub fn inverse(&self, u: &Word) -> Result<Word, TreeError> {
        Ok(self.generator.substitute(u)?)
    }

    /// `D(u) = C(f^{-1}(u))` for every `u ∈ A^{≤n}`, in length-lex order of `u`.
    pub fn pullback<C>(&self, coloring: impl Fn(&Word) -> C) -> Vec<(Word, C)> {
        let mut out: Vec<(Word, C)> =
            self.to_index.iter().map(|(e, u)| (u.clone(), coloring(e))).collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

pub fn is_subtree(s: &OvwTree, t: &OvwTree) -> bool {
    s.elements.iter().all(|w| t.contains(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn ws(v: &[&str]) -> Vec<Word> {
        v.iter().map(|s| w(s)).collect()
    }

    fn example() -> OvwTree {
        tree_from_generator(&VarWord::new(w("10x0 01x0 10"), 2, 1, true).unwrap()).unwrap()
    }

    #[test]
    fn builds_the_example_tree() {
        let t = example();
        assert_eq!(t.elements(), ws(&["10", "10001010", "10101110"]).as_slice());
        assert_eq!(t.level(0).unwrap(), ws(&["10"]).as_slice());
        assert_eq!(t.level(1).unwrap(), ws(&["10001010", "10101110"]).as_slice());
        assert_eq!(t.size(), 8);
        assert_eq!(t.levels(), &[2, 8]);
        assert_eq!(t.level(2), Err(TreeError::LevelOutOfRange { level: 2, dim: 1 }));
    }

    #[test]
    fn constant_and_bare_variable() {
        let c = tree_from_generator(&VarWord::new(w("0110"), 2, 0, true).unwrap()).unwrap();
        assert_eq!(c.elements(), ws(&["0110"]).as_slice());
        assert_eq!(c.dim(), 0);
        let x = tree_from_generator(&VarWord::new(w("x0"), 2, 1, true).unwrap()).unwrap();
        assert_eq!(x.elements(), ws(&["ε", "0", "1"]).as_slice());
    }

    #[test]
    fn inverts_the_example() {
        let g = generator_from_tree(&ws(&["10", "10001010", "10101110"]), 2).unwrap();
        assert_eq!(g.word(), &w("10x0 01x0 10"));
        let c = generator_from_tree(&ws(&["011"]), 2).unwrap();
        assert_eq!(c.word(), &w("011"));
        assert_eq!(c.dim(), 0);
    }

    #[test]
    fn rejects_the_non_tree() {
        let e = generator_from_tree(&ws(&["10", "1010", "1001"]), 2).unwrap_err();
        assert!(matches!(e, TreeError::NotATree { .. }), "{e:?}");
        let e = generator_from_tree(&ws(&["10", "01"]), 2).unwrap_err();
        assert!(matches!(e, TreeError::NotATree { .. }));
    }

    #[test]
    fn unary_alphabet_round_trip() {
        let g = VarWord::new(w("0x0 0x1"), 1, 2, true).unwrap();
        let t = tree_from_generator(&g).unwrap();
        assert_eq!(t.elements(), ws(&["0", "000", "0000"]).as_slice());
        assert_eq!(generator_from_tree(t.elements(), 1).unwrap(), g);
    }

    #[test]
    fn canonical_isomorphism() {
        let t = example();
        let iso = CanonicalIso::new(&t).unwrap();
        assert_eq!(iso.forward(&w("10001010")).unwrap(), &w("0"));
        assert_eq!(iso.forward(&w("10")).unwrap(), &Word::empty());
        assert_eq!(iso.inverse(&w("1")).unwrap(), w("10101110"));
        assert!(matches!(iso.forward(&w("11")), Err(TreeError::ElementNotInTree(_))));
        let pulled = iso.pullback(|_| 3u8);
        assert!(pulled.iter().all(|(_, c)| *c == 3));
        assert_eq!(pulled.len(), 3);
    }

    #[test]
    fn subtree_relation() {
        let t = example();
        assert!(is_subtree(&t, &t));
        let c = tree_from_generator(&VarWord::new(w("10"), 2, 0, true).unwrap()).unwrap();
        assert!(is_subtree(&c, &t));
        let other = tree_from_generator(&VarWord::new(w("11"), 2, 0, true).unwrap()).unwrap();
        assert!(!is_subtree(&other, &t));
    }
}
