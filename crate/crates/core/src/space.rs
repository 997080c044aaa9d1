//! Length-lex ranking of `A^{≤N}` for a fixed alphabet size.

use crate::word::{Symbol, Word};

/// The set `A^{≤N}` with `|A| = k`, ranked in length-lex order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WordSpace {
    k: usize,
    horizon: usize,
}

impl WordSpace {
    pub fn new(k: usize, horizon: usize) -> Self {
        WordSpace { k, horizon }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// `k^len`.
    pub fn count_at(&self, len: usize) -> usize {
        self.k.pow(len as u32)
    }

    /// Rank of the first word of length `len`.
    pub fn offset(&self, len: usize) -> usize {
        if self.k == 1 {
            return len;
        }
        if self.k == 0 {
            return usize::from(len > 0);
        }
        (self.count_at(len) - 1) / (self.k - 1)
    }

    pub fn size(&self) -> usize {
        self.offset(self.horizon + 1)
    }

    /// Index among words of the same length, reading letters as base-`k` digits.
    pub fn lex_index(&self, w: &[Symbol]) -> usize {
        w.iter().fold(0, |acc, s| match s {
            Symbol::Letter(a) => acc * self.k + *a as usize,
            Symbol::Var(_) => panic!("lex_index on a word with variables"),
        })
    }

    pub fn rank(&self, w: &[Symbol]) -> Option<usize> {
        if w.len() > self.horizon {
            return None;
        }
        Some(self.offset(w.len()) + self.lex_index(w))
    }

    /// Rank of the concatenation of a word `(len_a, idx_a)` with `(len_b, idx_b)`.
    pub fn concat_rank(&self, len_a: usize, idx_a: usize, len_b: usize, idx_b: usize) -> Option<usize> {
        let len = len_a + len_b;
        if len > self.horizon {
            return None;
        }
        Some(self.offset(len) + idx_a * self.count_at(len_b) + idx_b)
    }

    pub fn length_of_rank(&self, rank: usize) -> usize {
        let mut len = 0;
        while self.offset(len + 1) <= rank {
            len += 1;
        }
        len
    }

    pub fn unrank(&self, rank: usize) -> Word {
        let len = self.length_of_rank(rank);
        word_from_index(self.k, len, rank - self.offset(len))
    }

    pub fn iter(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.size()).map(move |r| self.unrank(r))
    }
}

/// The `index`-th word of length `len` over `k` letters in lex order.
pub fn word_from_index(k: usize, len: usize, mut index: usize) -> Word {
    let mut v = vec![Symbol::Letter(0); len];
    for slot in v.iter_mut().rev() {
        *slot = Symbol::Letter((index % k) as u8);
        index /= k;
    }
    Word::new(v)
}

/// All words of length `len` over `k` letters, lex order.
pub fn words_of_length(k: usize, len: usize) -> impl Iterator<Item = Word> {
    let count = k.pow(len as u32);
    (0..count).map(move |i| word_from_index(k, len, i))
}

/// All words of length `≤ max_len` over `k` letters, length-lex order.
pub fn words_up_to(k: usize, max_len: usize) -> impl Iterator<Item = Word> {
    (0..=max_len).flat_map(move |len| words_of_length(k, len))
}

/// Words over the symbols `Letter(0..k)` and `Var(0..vars)`, lengths `≤ max_len`,
/// in length-lex (canonical symbol) order.
pub fn mixed_words_up_to(k: usize, vars: usize, max_len: usize) -> impl Iterator<Item = Word> {
    let base = k + vars;
    (0..=max_len).flat_map(move |len| {
        words_of_length(base, len).map(move |w| {
            w.iter()
                .map(|s| match *s {
                    Symbol::Letter(c) => Symbol::from_code(c as usize, k),
                    v => v,
                })
                .collect()
        })
    })
}
