use serde::{Deserialize, Serialize};

use crate::space::WordSpace;
use crate::word::{validate, Symbol, Word};

const OUTSIDE: u8 = u8::MAX;

/// A total coloring of `A^{≤N,n}`: the `n`-variable words of length at most
/// `N` over an alphabet of size `k`, into `colors` colors.
///
/// The table is indexed by the length-lex rank of a word read over the
/// `k + n` symbols `0..k, x_0..x_{n-1}`; entries outside the domain hold
/// `u8::MAX`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    k: usize,
    horizon: usize,
    dim: usize,
    colors: usize,
    table: Vec<u8>,
}

impl Coloring {
    fn space(k: usize, dim: usize, horizon: usize) -> WordSpace {
        WordSpace::new(k + dim, horizon)
    }

    /// Colors every domain word by `f`, which must return values `< colors`.
    pub fn from_fn(
        k: usize,
        horizon: usize,
        dim: usize,
        colors: usize,
        f: impl Fn(&Word) -> u8,
    ) -> Self {
        let sp = Self::space(k, dim, horizon);
        let mut table = vec![OUTSIDE; sp.size()];
        for (r, slot) in table.iter_mut().enumerate() {
            let w = Word::from_codes(&sp.unrank(r).to_codes(k + dim), k);
            if dim == 0 || validate(&w, dim, false).pass() {
                let c = f(&w);
                assert!((c as usize) < colors, "color {c} out of range for {colors} colors");
                *slot = c;
            }
        }
        Coloring { k, horizon, dim, colors, table }
    }

    pub fn constant(k: usize, horizon: usize, dim: usize, colors: usize, c: u8) -> Self {
        Coloring::from_fn(k, horizon, dim, colors, |_| c)
    }

    /// A dimension-0 coloring of `A^{≤N}` from its length-lex color list.
    pub fn from_table(k: usize, horizon: usize, colors: usize, table: Vec<u8>) -> Self {
        assert_eq!(table.len(), WordSpace::new(k, horizon).size());
        Coloring { k, horizon, dim: 0, colors, table }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    fn index(&self, w: &[Symbol]) -> Option<usize> {
        if w.len() > self.horizon {
            return None;
        }
        let base = self.k + self.dim;
        let mut idx = 0usize;
        for s in w {
            let code = match *s {
                Symbol::Letter(a) if (a as usize) < self.k => a as usize,
                Symbol::Var(j) if (j as usize) < self.dim => self.k + j as usize,
                _ => return None,
            };
            idx = idx * base + code;
        }
        Some(Self::space(self.k, self.dim, self.horizon).offset(w.len()) + idx)
    }

    /// The color of `w`, or `None` outside the domain.
    pub fn color(&self, w: &[Symbol]) -> Option<u8> {
        let c = *self.table.get(self.index(w)?)?;
        (c != OUTSIDE).then_some(c)
    }

    /// Domain words with their colors, in length-lex order.
    pub fn entries(&self) -> impl Iterator<Item = (Word, u8)> + '_ {
        let sp = Self::space(self.k, self.dim, self.horizon);
        self.table.iter().enumerate().filter(|(_, &c)| c != OUTSIDE).map(move |(r, &c)| {
            (Word::from_codes(&sp.unrank(r).to_codes(self.k + self.dim), self.k), c)
        })
    }

    pub fn domain_size(&self) -> usize {
        self.table.iter().filter(|&&c| c != OUTSIDE).count()
    }

    /// Sets the color of a domain word.
    pub fn set(&mut self, w: &[Symbol], c: u8) -> bool {
        match self.index(w) {
            Some(i) if self.table[i] != OUTSIDE && (c as usize) < self.colors => {
                self.table[i] = c;
                true
            }
            _ => false,
        }
    }
}
