//! The graph on words over `{0, x_0}`: `v E w` when `|v| < |w|`, `w` has
//! `x_0` at position `|v|`, and no position below `|v|` holds `x_0` in both.
//!
//! Vertices are bit-packed: bit `i` set means position `i` holds `x_0`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::search::csl::variable_words_up_to;
use crate::word::{substitute_complete, OmegaPrefix, Symbol, Word, WordError};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum HensonError {
    #[error("triangle found: {0}, {1}, {2}")]
    TriangleFound(Word, Word, Word),
    #[error("graph is not triangle-free: vertices {0}, {1}, {2}")]
    NotTriangleFree(usize, usize, usize),
    #[error("malformed graph: {0}")]
    Malformed(String),
    #[error("not found within horizon: {0}")]
    NotFoundWithinHorizon(String),
    #[error("{0} is not a word over {{0, x0}}")]
    NotUnary(Word),
    #[error("profile domain too large: {0}")]
    DomainTooLarge(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

pub const MAX_LEN: usize = 63;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct HVertex {
    len: u8,
    bits: u64,
}

impl HVertex {
    pub fn new(len: usize, bits: u64) -> Self {
        assert!(len <= MAX_LEN);
        HVertex { len: len as u8, bits: bits & ((1u64 << len) - 1) }
    }

    pub fn from_word(w: &Word) -> Result<Self, HensonError> {
        if w.len() > MAX_LEN {
            return Err(HensonError::NotUnary(w.clone()));
        }
        let mut bits = 0;
        for (i, s) in w.iter().enumerate() {
            match s {
                Symbol::Letter(0) => {}
                Symbol::Var(0) => bits |= 1 << i,
                _ => return Err(HensonError::NotUnary(w.clone())),
            }
        }
        Ok(HVertex { len: w.len() as u8, bits })
    }

    pub fn to_word(self) -> Word {
        (0..self.len())
            .map(|i| if self.is_var(i) { Symbol::Var(0) } else { Symbol::Letter(0) })
            .collect()
    }

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn is_var(self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    /// Membership in `{0}^{<ω,1}`.
    pub fn contains_variable(self) -> bool {
        self.bits != 0
    }
}

impl Ord for HVertex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.to_word().cmp(&other.to_word())
    }
}

impl PartialOrd for HVertex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for HVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_word().fmt(f)
    }
}

impl Serialize for HVertex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_word().serialize(s)
    }
}

impl<'de> Deserialize<'de> for HVertex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        HVertex::from_word(&Word::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Words of length `len` over `{0, x_0}` in lex order, including the all-zero word.
fn all_of_length(len: usize) -> impl Iterator<Item = HVertex> {
    (0..1u64 << len).map(move |m| {
        // Position 0 is the most significant digit of `m`.
        let bits = (0..len).filter(|i| m >> (len - 1 - i) & 1 == 1).fold(0, |b, i| b | 1 << i);
        HVertex::new(len, bits)
    })
}

/// The vertices of length `≤ n` (words containing `x_0`), length-lex.
pub fn enum_vertices(n: usize) -> Vec<HVertex> {
    (0..=n.min(MAX_LEN)).flat_map(all_of_length).filter(|v| v.contains_variable()).collect()
}

/// `2^{N+1} - N - 2`.
pub fn vertex_count(n: usize) -> u64 {
    (1u64 << (n + 1)) - n as u64 - 2
}

#[inline]
pub fn edge(v: HVertex, w: HVertex) -> bool {
    let (s, t) = match v.len.cmp(&w.len) {
        std::cmp::Ordering::Less => (v, w),
        std::cmp::Ordering::Greater => (w, v),
        std::cmp::Ordering::Equal => return false,
    };
    t.is_var(s.len()) && s.bits & t.bits == 0
}

/// `edge` on word text; both words must be over `{0, x_0}`.
pub fn edge_words(v: &Word, w: &Word) -> Result<bool, HensonError> {
    Ok(edge(HVertex::from_word(v)?, HVertex::from_word(w)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleReport {
    pub horizon: usize,
    pub vertices: usize,
    pub edges: usize,
}

/// Exhaustive triangle scan over the vertices of length `≤ n` for a given
/// relation: for every edge `(s, t)`, the common neighbourhoods are intersected.
pub fn assert_triangle_free_with(
    n: usize,
    rel: impl Fn(HVertex, HVertex) -> bool,
) -> Result<TriangleReport, HensonError> {
    let vs = enum_vertices(n);
    let mut adj: Vec<BitSet> = vec![BitSet::new(vs.len()); vs.len()];
    let mut edges = 0;
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if rel(vs[i], vs[j]) {
                adj[i].insert(j);
                adj[j].insert(i);
                edges += 1;
            }
        }
    }
    for i in 0..vs.len() {
        for j in adj[i].iter().filter(|&j| j > i) {
            if let Some(m) = adj[i].intersection(&adj[j]).iter().next() {
                return Err(HensonError::TriangleFound(vs[i].to_word(), vs[j].to_word(), vs[m].to_word()));
            }
        }
    }
    Ok(TriangleReport { horizon: n, vertices: vs.len(), edges })
}

pub fn assert_triangle_free(n: usize) -> Result<TriangleReport, HensonError> {
    assert_triangle_free_with(n, edge)
}

/// A finite simple graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    adj: Vec<Vec<bool>>,
}

impl GraphSpec {
    pub fn new(adj: Vec<Vec<bool>>) -> Result<Self, HensonError> {
        let n = adj.len();
        for (i, row) in adj.iter().enumerate() {
            if row.len() != n {
                return Err(HensonError::Malformed(format!("row {i} has {} entries", row.len())));
            }
            if row[i] {
                return Err(HensonError::Malformed(format!("loop at vertex {i}")));
            }
            if let Some(j) = (0..n).find(|&j| row[j] != adj[j][i]) {
                return Err(HensonError::Malformed(format!("asymmetric entry ({i}, {j})")));
            }
        }
        Ok(GraphSpec { adj })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![vec![false; n]; n];
        for &(a, b) in edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        GraphSpec::new(adj).expect("edge list gives a simple graph")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    pub fn find_triangle(&self) -> Option<(usize, usize, usize)> {
        let n = self.n();
        (0..n).find_map(|a| {
            (a + 1..n).filter(|&b| self.adj[a][b]).find_map(|b| {
                (b + 1..n).find(|&c| self.adj[a][c] && self.adj[b][c]).map(|c| (a, b, c))
            })
        })
    }

    fn require_triangle_free(&self) -> Result<(), HensonError> {
        match self.find_triangle() {
            Some((a, b, c)) => Err(HensonError::NotTriangleFree(a, b, c)),
            None => Ok(()),
        }
    }

    /// All simple graphs on `n` labelled vertices.
    pub fn all(n: usize) -> impl Iterator<Item = GraphSpec> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        (0..1u64 << pairs.len()).map(move |mask| {
            let chosen: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            GraphSpec::from_edges(n, &chosen)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiImage {
    pub word: Word,
    /// Whether the image contains `x_0`, i.e. lies in the official vertex set.
    pub in_vertex_set: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiEmbedding {
    pub images: Vec<PhiImage>,
    /// `edge_G(i, j) ⟺ E(φ(i), φ(j))` for all `i < j`.
    pub preserved: bool,
}

/// `φ(i)` has length `i` and `x_0` exactly at the earlier neighbours of `i`.
pub fn phi_embed(g: &GraphSpec) -> Result<PhiEmbedding, HensonError> {
    g.require_triangle_free()?;
    if g.n() > MAX_LEN + 1 {
        return Err(HensonError::Malformed(format!("at most {} vertices", MAX_LEN + 1)));
    }
    let vs: Vec<HVertex> = (0..g.n())
        .map(|i| HVertex::new(i, (0..i).filter(|&j| g.adjacent(i, j)).fold(0, |b, j| b | 1 << j)))
        .collect();
    let preserved = (0..g.n()).all(|i| (i + 1..g.n()).all(|j| g.adjacent(i, j) == edge(vs[i], vs[j])));
    Ok(PhiEmbedding {
        images: vs.iter().map(|v| PhiImage { word: v.to_word(), in_vertex_set: v.contains_variable() }).collect(),
        preserved,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyEmbedding {
    pub horizon: usize,
    pub images: Vec<HVertex>,
    pub isomorphic: bool,
}

/// Assigns each vertex, in order, the length-lex least vertex longer than all
/// earlier images that realizes the required edges and non-edges, backing up
/// to the previous vertex when no choice remains.
pub fn greedy_embed(g: &GraphSpec, n: usize) -> Result<GreedyEmbedding, HensonError> {
    g.require_triangle_free()?;
    let vs = enum_vertices(n);
    let mut images: Vec<usize> = Vec::with_capacity(g.n());
    let mut next_start = 0usize;
    while images.len() < g.n() {
        let i = images.len();
        let min_len = images.last().map_or(0, |&p| vs[p].len() + 1);
        let found = (next_start..vs.len()).find(|&c| {
            vs[c].len() >= min_len && images.iter().enumerate().all(|(j, &p)| edge(vs[p], vs[c]) == g.adjacent(j, i))
        });
        match found {
            Some(c) => {
                images.push(c);
                next_start = 0;
            }
            None => match images.pop() {
                Some(p) => next_start = p + 1,
                None => {
                    return Err(HensonError::NotFoundWithinHorizon(format!(
                        "no embedding into vertices of length ≤ {n}"
                    )))
                }
            },
        }
    }
    let images: Vec<HVertex> = images.into_iter().map(|p| vs[p]).collect();
    let isomorphic = (0..g.n()).all(|i| (i + 1..g.n()).all(|j| g.adjacent(i, j) == edge(images[i], images[j])));
    Ok(GreedyEmbedding { horizon: n, images, isomorphic })
}

/// `W[u]` without the cut: every variable `x_j` with `j ≥ |u|` becomes the
/// letter `0`. Only used to show that the cut matters.
pub fn substitute_no_cut(w: &Word, u: &Word) -> Word {
    w.iter()
        .map(|&s| match s {
            Symbol::Var(j) => u.get(j as usize).copied().unwrap_or(Symbol::Letter(0)),
            other => other,
        })
        .collect()
}

/// Evaluates `u E v ⟺ W[u] E W[v]` with a given substitution.
pub fn edge_invariance_with(
    w: &Word,
    u: HVertex,
    v: HVertex,
    subst: impl Fn(&Word, &Word) -> Result<Word, WordError>,
) -> Result<bool, HensonError> {
    let wu = HVertex::from_word(&subst(w, &u.to_word())?)?;
    let wv = HVertex::from_word(&subst(w, &v.to_word())?)?;
    Ok(edge(u, v) == edge(wu, wv))
}

pub fn edge_invariance(w: &OmegaPrefix, u: HVertex, v: HVertex) -> Result<bool, HensonError> {
    if w.k() != 1 {
        return Err(HensonError::NotUnary(w.word().clone()));
    }
    edge_invariance_with(w.word(), u, v, crate::word::substitute_strict)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope {
    pub word: Word,
    pub variable_count: usize,
    /// `(s, t)` with `W[t] = s`, in the order of the input set.
    pub assignments: Vec<(Word, Word)>,
    /// `2^{|S|} + |S| - 1`.
    pub bound: usize,
    pub within_bound: bool,
}

/// The `t` with `W[t] = s`, which is forced: `|t|` is read off the cut
/// position `|s|` and `t(i)` off the first occurrence of `x_i`.
pub fn envelope_preimage(w: &Word, d: usize, s: &Word) -> Option<Word> {
    let len_t = if s.len() == w.len() {
        d
    } else {
        match w.get(s.len()) {
            Some(&Symbol::Var(j)) if w.first_occurrence(j) == Some(s.len()) => j as usize,
            _ => return None,
        }
    };
    let t: Word = (0..len_t as u8).map(|i| s.get(w.first_occurrence(i)?).copied()).collect::<Option<_>>()?;
    (substitute_complete(w, d, &t).ok()? == *s).then_some(t)
}

/// Least number of variables `d`, then least length, then lex.
pub fn minimal_envelope(set: &[Word]) -> Result<Envelope, HensonError> {
    for s in set {
        HVertex::from_word(s)?;
    }
    if set.is_empty() {
        return Err(HensonError::Malformed("empty set".into()));
    }
    let max_len = set.iter().map(|s| s.len()).max().unwrap_or(0);
    let bound = (1usize << set.len().min(20)) + set.len() - 1;
    for d in 0..=max_len + 1 {
        for len in max_len.max(d)..=max_len + 1 {
            for cand in variable_words_up_to(1, d, len).into_iter().filter(|c| c.len() == len) {
                let assignments: Option<Vec<(Word, Word)>> = set
                    .iter()
                    .map(|s| envelope_preimage(&cand, d, s).map(|t| (s.clone(), t)))
                    .collect();
                if let Some(assignments) = assignments {
                    return Ok(Envelope { word: cand, variable_count: d, assignments, bound, within_bound: d <= bound });
                }
            }
        }
    }
    Err(HensonError::NotFoundWithinHorizon(format!("no envelope of length ≤ {}", max_len + 1)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileColoring {
    /// `d = 2^n + n - 1`.
    pub dim: usize,
    pub horizon: usize,
    /// Each slot lists `φ(0), .., φ(n-1)`: an embedding of `F` into the words
    /// of length `≤ d` over `{0, x_0}` that contain `x_0`.
    pub slots: Vec<Vec<Word>>,
    /// `(u, χ̂(u))` for every `u ∈ {0}^{≤N,d}`.
    pub profiles: Vec<(Word, Vec<u8>)>,
    pub distinct_profiles: usize,
}

pub const PROFILE_BUDGET: u128 = 10_000_000;

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// All embeddings of `F` into the graph on `vs`, in lexicographic order of the image index tuple.
fn embeddings(g: &GraphSpec, vs: &[HVertex]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn rec(g: &GraphSpec, vs: &[HVertex], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == g.n() {
            out.push(cur.clone());
            return;
        }
        for c in 0..vs.len() {
            if cur.contains(&c) {
                continue;
            }
            if cur.iter().enumerate().all(|(j, &p)| edge(vs[p], vs[c]) == g.adjacent(j, i)) {
                cur.push(c);
                rec(g, vs, cur, out);
                cur.pop();
            }
        }
    }
    rec(g, vs, &mut cur, &mut out);
    out
}

/// `χ̂(u) = ⟨χ(u∘φ) : (T, φ)⟩` over all embeddings `φ` of `F` into the
/// vertices of length `≤ d`, where `u∘φ` sends vertex `i` to `u[φ(i)]`.
pub fn profile_coloring(
    chi: impl Fn(&[Word]) -> u8,
    f: &GraphSpec,
    horizon: usize,
) -> Result<ProfileColoring, HensonError> {
    f.require_triangle_free()?;
    let n = f.n();
    if n > 6 {
        return Err(HensonError::DomainTooLarge(format!("F has {n} vertices")));
    }
    let d = (1usize << n) + n - 1;
    let pool = vertex_count(d.min(62)) as u128;
    let size = binomial(pool, n as u128);
    if d > 62 || size > PROFILE_BUDGET {
        return Err(HensonError::DomainTooLarge(format!(
            "C({pool}, {n}) = {size} candidate sets for d = {d} exceed {PROFILE_BUDGET}"
        )));
    }
    let vs = enum_vertices(d);
    let slots = embeddings(f, &vs);
    let domain = variable_words_up_to(1, d, horizon);
    if (domain.len() as u128).saturating_mul(slots.len() as u128) > PROFILE_BUDGET {
        return Err(HensonError::DomainTooLarge(format!(
            "{} words times {} slots exceed {PROFILE_BUDGET}",
            domain.len(),
            slots.len()
        )));
    }
    let slot_words: Vec<Vec<Word>> = slots.iter().map(|s| s.iter().map(|&p| vs[p].to_word()).collect()).collect();
    let mut profiles = Vec::with_capacity(domain.len());
    for u in domain {
        let mut profile = Vec::with_capacity(slot_words.len());
        for slot in &slot_words {
            let image: Vec<Word> =
                slot.iter().map(|t| substitute_complete(&u, d, t)).collect::<Result<_, _>>()?;
            profile.push(chi(&image));
        }
        profiles.push((u, profile));
    }
    let mut distinct: Vec<&Vec<u8>> = profiles.iter().map(|(_, p)| p).collect();
    distinct.sort();
    distinct.dedup();
    let distinct_profiles = distinct.len();
    Ok(ProfileColoring { dim: d, horizon, slots: slot_words, profiles, distinct_profiles })
}
