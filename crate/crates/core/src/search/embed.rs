//! The block embedding `h(a_0⋯a_m) = w_0[a_0] ⋯ w_m[a_m]`.

use serde::{Deserialize, Serialize};

use crate::word::{LeftVarWord, Word, WordError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HEmbedding {
    blocks: Vec<LeftVarWord>,
}

impl HEmbedding {
    pub fn new(blocks: Vec<LeftVarWord>) -> Self {
        HEmbedding { blocks }
    }

    pub fn parse(blocks: &[&str], k: usize) -> Result<Self, WordError> {
        Ok(HEmbedding::new(
            blocks.iter().map(|b| LeftVarWord::new(b.parse()?, k)).collect::<Result<_, _>>()?,
        ))
    }

    pub fn blocks(&self) -> &[LeftVarWord] {
        &self.blocks
    }

    /// Longest input word in the domain.
    pub fn domain_len(&self) -> usize {
        self.blocks.len()
    }

    /// `h(u)`; `None` when `u` is longer than the number of blocks.
    pub fn apply(&self, u: &Word) -> Option<Word> {
        self.apply_var(u)
    }

    /// Applies `h` symbol by symbol, so a variable `x_j` at position `i`
    /// becomes `w_i[x_j]`. This maps the generator of an OVW-tree to the
    /// generator of its image.
    pub fn apply_var(&self, w: &Word) -> Option<Word> {
        if w.len() > self.blocks.len() {
            return None;
        }
        let mut out = Word::empty();
        for (b, &s) in self.blocks.iter().zip(w.iter()) {
            out = out.concat(&b.instantiate(s));
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::words_up_to;
    use crate::tree::{generator_from_tree, tree_from_generator};
    use crate::word::VarWord;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn single_bare_block_is_identity() {
        let h = HEmbedding::parse(&["x0"], 2).unwrap();
        for u in words_up_to(2, 1) {
            assert_eq!(h.apply(&u), Some(u));
        }
        assert_eq!(h.apply(&w("00")), None);
    }

    #[test]
    fn two_blocks() {
        let h = HEmbedding::parse(&["x0 0", "x0"], 2).unwrap();
        assert_eq!(h.apply(&w("10")), Some(w("100")));
        assert_eq!(h.apply(&Word::empty()), Some(Word::empty()));
        let images: Vec<Word> = words_up_to(2, 2).map(|u| h.apply(&u).unwrap()).collect();
        let mut dedup = images.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), images.len());
    }

    #[test]
    fn image_of_a_tree_is_a_tree() {
        let h = HEmbedding::parse(&["x0 0", "x0 11"], 2).unwrap();
        let g = VarWord::new(w("x0x1"), 2, 2, true).unwrap();
        let t = tree_from_generator(&g).unwrap();
        let image: Vec<Word> = t.elements().iter().map(|e| h.apply(e).unwrap()).collect();
        let inverted = generator_from_tree(&image, 2).unwrap();
        assert_eq!(inverted.word(), &h.apply_var(g.word()).unwrap());
    }
}
