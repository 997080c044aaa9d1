//! Versioned certificates and their verifier.
//!
//! A certificate embeds the instance it answers, a SHA-256 digest of that
//! instance's canonical JSON, and a kind-specific witness. `verify` re-checks
//! the witness element by element from the definitions, with its own
//! enumeration and substitution code; nothing in here calls a search.

use std::collections::{BTreeSet, HashMap};

use serde::{de::DeserializeOwned, Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::henson::{Envelope, GreedyEmbedding, GraphSpec};
use crate::largeness::{BrownCertificate, Family, FamilyJson, PwDecomposition, SplitCertificate, SplitSide};
use crate::search::builder::BuilderTrace;
use crate::search::cdrt::CdrtCertificate;
use crate::search::csl::CslCertificate;
use crate::search::line::LineLetterCertificate;
use crate::search::prehomog::OneStepCertificate;
use crate::search::Coloring;
use crate::word::{Symbol, Word};

pub const SCHEMA: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    LineLetter,
    Tree,
    BuilderTrace,
    Prehomog,
    Cdrt,
    Csl,
    Embedding,
    Envelope,
    Brown,
    Split,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub k: usize,
    pub horizon: usize,
    pub dim: usize,
    pub colors: usize,
    /// Every domain word with its color, length-lex.
    pub entries: Vec<(Word, u8)>,
}

impl From<&Coloring> for ColoringJson {
    fn from(c: &Coloring) -> Self {
        ColoringJson { k: c.k(), horizon: c.horizon(), dim: c.dim(), colors: c.colors(), entries: c.entries().collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub syndetic: FamilyJson,
    pub thick: FamilyJson,
    pub ell: usize,
}

impl From<&PwDecomposition> for DecompositionJson {
    fn from(p: &PwDecomposition) -> Self {
        DecompositionJson { syndetic: p.syndetic.to_json(), thick: p.thick.to_json(), ell: p.ell }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Instance {
    Coloring { coloring: ColoringJson, h: Option<usize> },
    Prehomog { coloring: ColoringJson, w: Word, s: Word, h: usize },
    WordSet { k: usize, words: Vec<Word> },
    Decomposition { decomposition: DecompositionJson, s_max: usize },
    Split { decomposition: DecompositionJson, b: FamilyJson, c: FamilyJson },
    Partition { decomposition: DecompositionJson, parts: Vec<FamilyJson> },
    Graph { adjacency: Vec<Vec<bool>>, horizon: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: u32,
    pub kind: Kind,
    pub tool_version: String,
    pub instance_digest: String,
    pub instance: Instance,
    pub witness: Value,
    pub checked_count: usize,
}

pub fn digest(instance: &Instance) -> String {
    let bytes = serde_json::to_vec(instance).expect("instances serialize");
    hex::encode(Sha256::digest(bytes))
}

impl Certificate {
    pub fn new(kind: Kind, instance: Instance, witness: &impl Serialize, checked_count: usize) -> Self {
        Certificate {
            schema: SCHEMA,
            kind,
            tool_version: TOOL_VERSION.to_string(),
            instance_digest: digest(&instance),
            instance,
            witness: serde_json::to_value(witness).expect("witnesses serialize"),
            checked_count,
        }
    }

    pub fn line_letter(f: &Coloring, w: &LineLetterCertificate) -> Self {
        let inst = Instance::Coloring { coloring: f.into(), h: None };
        Certificate::new(Kind::LineLetter, inst, w, w.checked.len())
    }

    pub fn csl(f: &Coloring, w: &CslCertificate) -> Self {
        let inst = Instance::Coloring { coloring: f.into(), h: Some(w.h) };
        Certificate::new(Kind::Csl, inst, w, w.checked.len())
    }

    pub fn cdrt(f: &Coloring, w: &CdrtCertificate) -> Self {
        let inst = Instance::Coloring { coloring: f.into(), h: Some(w.h) };
        Certificate::new(Kind::Cdrt, inst, w, w.checked.len())
    }

    pub fn prehomog(f: &Coloring, w: &Word, h: usize, cert: &OneStepCertificate) -> Self {
        let inst = Instance::Prehomog { coloring: f.into(), w: w.clone(), s: cert.s.clone(), h };
        Certificate::new(Kind::Prehomog, inst, cert, cert.checked.len())
    }

    /// `elements` is the input set, `generator` the recovered generator.
    pub fn tree(k: usize, elements: &[Word], generator: &Word, dim: usize) -> Self {
        let mut words = elements.to_vec();
        words.sort();
        words.dedup();
        let count = words.len();
        let inst = Instance::WordSet { k, words };
        Certificate::new(Kind::Tree, inst, &TreeWitness { generator: generator.clone(), dim }, count)
    }

    pub fn builder(p: &PwDecomposition, s_max: usize, trace: &BuilderTrace) -> Self {
        let inst = Instance::Decomposition { decomposition: p.into(), s_max };
        Certificate::new(Kind::BuilderTrace, inst, trace, trace.stages.len())
    }

    pub fn split(p: &PwDecomposition, b: &Family, c: &Family, w: &SplitCertificate) -> Self {
        let inst = Instance::Split { decomposition: p.into(), b: b.to_json(), c: c.to_json() };
        Certificate::new(Kind::Split, inst, w, p.members().len())
    }

    pub fn brown(p: &PwDecomposition, parts: &[Family], w: &BrownCertificate) -> Self {
        let inst = Instance::Partition { decomposition: p.into(), parts: parts.iter().map(|f| f.to_json()).collect() };
        Certificate::new(Kind::Brown, inst, w, p.members().len())
    }

    pub fn embedding(g: &GraphSpec, w: &GreedyEmbedding) -> Self {
        let n = g.n();
        let adjacency = (0..n).map(|i| (0..n).map(|j| g.adjacent(i, j)).collect()).collect();
        let inst = Instance::Graph { adjacency, horizon: w.horizon };
        Certificate::new(Kind::Embedding, inst, w, n * n.saturating_sub(1) / 2)
    }

    pub fn envelope(set: &[Word], w: &Envelope) -> Self {
        let inst = Instance::WordSet { k: 1, words: set.to_vec() };
        Certificate::new(Kind::Envelope, inst, w, set.len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeWitness {
    pub generator: Word,
    pub dim: usize,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unsupported schema {0}")]
    Schema(u32),
    #[error("instance digest mismatch: recorded {recorded}, computed {computed}")]
    Digest { recorded: String, computed: String },
    #[error("instance does not fit kind {0:?}")]
    InstanceKind(Kind),
    #[error("malformed witness: {0}")]
    Witness(String),
    #[error("checked_count {recorded} but {computed} checks were made")]
    Count { recorded: usize, computed: usize },
    #[error("{0}")]
    Failed(String),
}

fn fail<T>(msg: impl Into<String>) -> Result<T, VerifyError> {
    Err(VerifyError::Failed(msg.into()))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), VerifyError> {
    if cond {
        Ok(())
    } else {
        fail(msg())
    }
}

fn witness<T: DeserializeOwned>(v: &Value) -> Result<T, VerifyError> {
    serde_json::from_value(v.clone()).map_err(|e| VerifyError::Witness(e.to_string()))
}

/// Re-checks a certificate. Returns the number of element checks performed,
/// which must equal `checked_count`.
pub fn verify(cert: &Certificate) -> Result<usize, VerifyError> {
    if cert.schema != SCHEMA {
        return Err(VerifyError::Schema(cert.schema));
    }
    let computed = digest(&cert.instance);
    if computed != cert.instance_digest {
        return Err(VerifyError::Digest { recorded: cert.instance_digest.clone(), computed });
    }
    let bad = || VerifyError::InstanceKind(cert.kind);
    let count = match (cert.kind, &cert.instance) {
        (Kind::LineLetter, Instance::Coloring { coloring, h: None }) => {
            verify_line_letter(coloring, &witness(&cert.witness)?)?
        }
        (Kind::Csl, Instance::Coloring { coloring, h: Some(h) }) => {
            verify_csl(coloring, *h, &witness(&cert.witness)?)?
        }
        (Kind::Cdrt, Instance::Coloring { coloring, h: Some(h) }) => {
            verify_cdrt(coloring, *h, &witness(&cert.witness)?)?
        }
        (Kind::Prehomog, Instance::Prehomog { coloring, w, s, h }) => {
            verify_prehomog(coloring, w, s, *h, &witness(&cert.witness)?)?
        }
        (Kind::Tree, Instance::WordSet { k, words }) => verify_tree(*k, words, &witness(&cert.witness)?)?,
        (Kind::Envelope, Instance::WordSet { words, .. }) => verify_envelope(words, &witness(&cert.witness)?)?,
        (Kind::BuilderTrace, Instance::Decomposition { decomposition, s_max }) => {
            verify_builder(decomposition, *s_max, &witness(&cert.witness)?)?
        }
        (Kind::Split, Instance::Split { decomposition, b, c }) => {
            verify_split(decomposition, b, c, &witness(&cert.witness)?)?
        }
        (Kind::Brown, Instance::Partition { decomposition, parts }) => {
            verify_brown(decomposition, parts, &witness(&cert.witness)?)?
        }
        (Kind::Embedding, Instance::Graph { adjacency, horizon }) => {
            verify_embedding(adjacency, *horizon, &witness(&cert.witness)?)?
        }
        _ => return Err(bad()),
    };
    if count != cert.checked_count {
        return Err(VerifyError::Count { recorded: cert.checked_count, computed: count });
    }
    Ok(count)
}

// ---- word primitives, written from the definitions ----

/// All words over `alphabet` of length `≤ max_len`.
fn all_words(alphabet: &[Symbol], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for &a in alphabet {
                next.push(w.concat(&[a]));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn letters(k: usize) -> Vec<Symbol> {
    (0..k as u8).map(Symbol::Letter).collect()
}

fn alphabet(k: usize, n: usize) -> Vec<Symbol> {
    let mut a = letters(k);
    a.extend((0..n as u8).map(Symbol::Var));
    a
}

fn letters_below(w: &Word, k: usize) -> bool {
    w.iter().all(|s| !matches!(s, Symbol::Letter(a) if *a as usize >= k))
}

/// An `n`-variable word over `k` letters: variables `< n`, each occurring,
/// first occurrences in increasing order.
fn is_var_word(w: &Word, k: usize, n: usize) -> bool {
    if !letters_below(w, k) {
        return false;
    }
    let mut firsts = Vec::with_capacity(n);
    for j in 0..n {
        match w.iter().position(|s| *s == Symbol::Var(j as u8)) {
            Some(p) => firsts.push(p),
            None => return false,
        }
    }
    let in_range = w.iter().all(|s| !matches!(s, Symbol::Var(j) if *j as usize >= n));
    in_range && firsts.windows(2).all(|p| p[0] < p[1])
}

/// All occurrences of `x_j` precede all occurrences of `x_{j+1}`.
fn is_ordered(w: &Word) -> bool {
    let vars: Vec<u8> = w.iter().filter_map(|s| if let Symbol::Var(j) = s { Some(*j) } else { None }).collect();
    vars.windows(2).all(|p| p[0] <= p[1])
}

/// Each new variable is the next unused index.
fn is_prefix_valid(w: &Word, k: usize) -> bool {
    let mut next = 0u8;
    for s in w.iter() {
        match *s {
            Symbol::Letter(a) if a as usize >= k => return false,
            Symbol::Var(j) if j > next => return false,
            Symbol::Var(j) if j == next => next += 1,
            _ => {}
        }
    }
    true
}

fn var_words(k: usize, n: usize, max_len: usize) -> Vec<Word> {
    all_words(&alphabet(k, n), max_len).into_iter().filter(|w| is_var_word(w, k, n)).collect()
}

/// `W[u]`: `x_j ↦ u(j)`, stopping at the first `x_{|u|}`. When the cut point
/// is absent the result is defined only if `complete` (the whole word has
/// been substituted).
fn inst(w: &Word, u: &Word, complete: bool) -> Option<Word> {
    let mut out = Word::empty();
    for s in w.iter() {
        match *s {
            Symbol::Var(j) if (j as usize) < u.len() => out.push(u[j as usize]),
            Symbol::Var(j) if j as usize == u.len() => return Some(out),
            Symbol::Var(_) => return None,
            a => out.push(a),
        }
    }
    complete.then_some(out)
}

fn color_map(c: &ColoringJson) -> HashMap<Word, u8> {
    c.entries.iter().cloned().collect()
}

/// Checks that every colored `W[u]`, `u ∈ domain`, has color `color`.
/// Returns the number of colored images.
fn constant_on(
    w: &Word,
    domain: &[Word],
    colors: &HashMap<Word, u8>,
    color: u8,
) -> Result<usize, VerifyError> {
    let mut n = 0;
    for u in domain {
        let Some(img) = inst(w, u, false) else {
            return fail(format!("{w}[{u}] is undefined"));
        };
        if let Some(&c) = colors.get(&img) {
            ensure(c == color, || format!("{w}[{u}] = {img} has color {c}, not {color}"))?;
            n += 1;
        }
    }
    Ok(n)
}

// ---- kinds ----

fn verify_line_letter(f: &ColoringJson, w: &LineLetterCertificate) -> Result<usize, VerifyError> {
    ensure(f.dim == 0, || "line-letter needs a coloring of words".into())?;
    let g = &w.generator;
    ensure(letters_below(g, f.k) && (w.letter as usize) < f.k, || "letter out of range".into())?;
    ensure(g.iter().all(|s| !matches!(s, Symbol::Var(j) if *j != 0)), || format!("{g} uses a variable other than x0"))?;
    let cut = g.iter().position(|s| *s == Symbol::Var(0));
    let Some(cut) = cut else { return fail(format!("{g} has no x0")) };
    let colors = color_map(f);
    let mut elems = vec![g.slice(0, cut)];
    for b in 0..f.k as u8 {
        let mut e: Word = g.iter().map(|&s| if s.is_var() { Symbol::Letter(b) } else { s }).collect();
        e.push(Symbol::Letter(w.letter));
        elems.push(e);
    }
    for e in &elems {
        match colors.get(e) {
            Some(&c) => ensure(c == w.color, || format!("{e} has color {c}, not {}", w.color))?,
            None => return fail(format!("{e} is outside the colored domain")),
        }
    }
    Ok(elems.len())
}

fn verify_csl(f: &ColoringJson, h: usize, w: &CslCertificate) -> Result<usize, VerifyError> {
    ensure(w.h == h && w.k == f.k && w.dim == f.dim, || "witness parameters differ from the instance".into())?;
    ensure(is_prefix_valid(&w.w, f.k), || format!("{} is not a valid prefix", w.w))?;
    let domain = var_words(f.k, f.dim, h);
    constant_on(&w.w, &domain, &color_map(f), w.color)
}

fn verify_cdrt(f: &ColoringJson, h: usize, w: &CdrtCertificate) -> Result<usize, VerifyError> {
    let (k, n) = (f.k, f.dim);
    ensure(w.k == k && w.n == n && w.h == h, || "witness parameters differ from the instance".into())?;
    ensure(is_prefix_valid(&w.w_hat, 0), || format!("{} is not a valid prefix over ∅", w.w_hat))?;
    let colors = color_map(f);
    // Ĉ(v) = C(v with x_i ↦ a_i for i < k and x_{k+j} ↦ x_j).
    let mut hat = HashMap::new();
    for v in var_words(0, k + n, f.horizon) {
        let img: Word = v
            .iter()
            .map(|s| match *s {
                Symbol::Var(i) if (i as usize) < k => Symbol::Letter(i),
                Symbol::Var(i) => Symbol::Var(i - k as u8),
                a => a,
            })
            .collect();
        if let Some(&c) = colors.get(&img) {
            hat.insert(v, c);
        }
    }
    constant_on(&w.w_hat, &var_words(0, k + n, k + h), &hat, w.color)?;
    let w_expected: Word = {
        let mut out = Word::empty();
        for s in w.w_hat.iter() {
            match *s {
                Symbol::Var(i) if (i as usize) < k => out.push(Symbol::Letter(i)),
                Symbol::Var(i) => out.push(Symbol::Var(i - k as u8)),
                a => out.push(a),
            }
        }
        out
    };
    ensure(w_expected == w.w, || format!("pullback should be {w_expected}, got {}", w.w))?;
    constant_on(&w.w, &var_words(k, n, h), &colors, w.color)
}

fn verify_prehomog(
    f: &ColoringJson,
    w: &Word,
    s: &Word,
    h: usize,
    cert: &OneStepCertificate,
) -> Result<usize, VerifyError> {
    let k = f.k;
    let Some(n) = f.dim.checked_sub(1) else { return fail("dimension 0") };
    ensure(cert.s == *s, || "witness answers a different s".into())?;
    ensure(is_prefix_valid(w, k) && is_prefix_valid(&cert.w_hat, k), || "invalid prefix".into())?;
    let m = s.len() + 1;
    let v = &cert.v;
    ensure(is_prefix_valid(v, k), || format!("V = {v} is not a valid prefix"))?;
    ensure(
        v.len() >= m && (0..m).all(|j| v[j] == Symbol::Var(j as u8)),
        || format!("V = {v} does not start with z0..z{}", m - 1),
    )?;
    // Ŵ = W∘V, up to the first variable of W that V does not cover.
    let mut composed = Word::empty();
    for sym in w.iter() {
        match *sym {
            Symbol::Var(j) => match v.get(j as usize) {
                Some(&x) => composed.push(x),
                None => break,
            },
            a => composed.push(a),
        }
    }
    ensure(composed == cert.w_hat, || format!("W∘V = {composed}, not {}", cert.w_hat))?;
    let prefix = s.concat(&[Symbol::Var(n as u8)]);
    let domain: Vec<Word> = var_words(k, n + 1, h).into_iter().filter(|t| t.starts_with(&prefix)).collect();
    constant_on(&cert.w_hat, &domain, &color_map(f), cert.color)
}

fn verify_tree(k: usize, words: &[Word], w: &TreeWitness) -> Result<usize, VerifyError> {
    let g = &w.generator;
    ensure(is_var_word(g, k, w.dim) && is_ordered(g), || format!("{g} is not an ordered {}-variable word", w.dim))?;
    let mut built = BTreeSet::new();
    for u in all_words(&letters(k), w.dim) {
        built.insert(inst(g, &u, u.len() == w.dim).expect("substitution into a valid word"));
    }
    let given: BTreeSet<Word> = words.iter().cloned().collect();
    ensure(built == given, || "the generator's tree differs from the given set".into())?;
    Ok(given.len())
}

fn verify_envelope(set: &[Word], e: &Envelope) -> Result<usize, VerifyError> {
    let unary = [Symbol::Letter(0), Symbol::Var(0)];
    let over_unary = |s: &Word| s.iter().all(|x| unary.contains(x));
    ensure(set.iter().all(over_unary), || "set member outside {0, x0}*".into())?;
    let d = e.variable_count;
    ensure(is_var_word(&e.word, 1, d), || format!("{} is not a {d}-variable word over {{0}}", e.word))?;
    ensure(e.assignments.len() == set.len(), || "one assignment per member expected".into())?;
    for ((s, t), member) in e.assignments.iter().zip(set) {
        ensure(s == member, || format!("assignment for {s} out of order"))?;
        ensure(over_unary(t) && t.len() <= d, || format!("{t} is not in {{0, x0}}^≤{d}"))?;
        let img = inst(&e.word, t, t.len() == d);
        ensure(img.as_ref() == Some(s), || format!("{}[{t}] ≠ {s}", e.word))?;
    }
    let bound = (1usize << set.len().min(20)) + set.len() - 1;
    ensure(e.bound == bound && e.within_bound == (d <= bound), || "bound fields are wrong".into())?;
    // Minimality: no word with fewer variables, at the lengths searched, covers the set.
    let max_len = set.iter().map(|s| s.len()).max().unwrap_or(0);
    for d2 in 0..d {
        let ts = all_words(&unary, d2);
        let covers = |cand: &Word| {
            set.iter().all(|s| ts.iter().any(|t| inst(cand, t, t.len() == d2).as_ref() == Some(s)))
        };
        let found = all_words(&alphabet(1, d2), max_len + 1)
            .into_iter()
            .filter(|c| c.len() >= max_len && is_var_word(c, 1, d2))
            .find(covers);
        if let Some(c) = found {
            return fail(format!("{c} covers the set with {d2} < {d} variables"));
        }
    }
    Ok(set.len())
}

// ---- families ----

struct Fam {
    k: usize,
    horizon: usize,
    set: BTreeSet<Word>,
}

impl Fam {
    fn of(f: &FamilyJson) -> Self {
        Fam { k: f.k, horizon: f.horizon, set: f.members.iter().cloned().collect() }
    }

    fn universe(&self) -> Vec<Word> {
        all_words(&letters(self.k), self.horizon)
    }

    fn same_space(&self, o: &Fam) -> bool {
        self.k == o.k && self.horizon == o.horizon
    }

    fn inter(&self, o: &Fam) -> BTreeSet<Word> {
        self.set.intersection(&o.set).cloned().collect()
    }
}

/// `∀σ ∈ A^{≤N-ℓ} ∃τ ∈ A^{≤ℓ}: τσ ∈ S`.
fn syndetic(s: &Fam, ell: usize) -> bool {
    if ell > s.horizon {
        return true;
    }
    let taus = all_words(&letters(s.k), ell);
    all_words(&letters(s.k), s.horizon - ell)
        .iter()
        .all(|sigma| taus.iter().any(|tau| s.set.contains(&tau.concat(sigma))))
}

/// For every `ℓ' ≤ ℓ` some `σ` with `A^{≤ℓ'}·σ ⊆ T` inside the horizon.
fn thick(t: &Fam, ell: usize) -> bool {
    (0..=ell).all(|l| {
        l <= t.horizon && {
            let taus = all_words(&letters(t.k), l);
            all_words(&letters(t.k), t.horizon - l)
                .iter()
                .any(|sigma| taus.iter().all(|tau| t.set.contains(&tau.concat(sigma))))
        }
    })
}

fn decomposition_ok(d: &DecompositionJson) -> Result<(Fam, Fam), VerifyError> {
    let (s, t) = (Fam::of(&d.syndetic), Fam::of(&d.thick));
    ensure(s.same_space(&t), || "syndetic and thick parts live in different spaces".into())?;
    ensure(syndetic(&s, d.ell), || format!("syndetic part is not {}-syndetic", d.ell))?;
    ensure(thick(&t, d.ell), || format!("thick part is not thick to {}", d.ell))?;
    Ok((s, t))
}

fn verify_split(
    d: &DecompositionJson,
    b: &FamilyJson,
    c: &FamilyJson,
    w: &SplitCertificate,
) -> Result<usize, VerifyError> {
    let (s, t) = decomposition_ok(d)?;
    let p = s.inter(&t);
    let (b, c) = (Fam::of(b), Fam::of(c));
    ensure(b.set.is_disjoint(&c.set), || "B and C overlap".into())?;
    let bc: BTreeSet<Word> = b.set.union(&c.set).cloned().collect();
    ensure(bc == p, || "B and C do not partition P".into())?;
    let s_tilde = Fam::of(&w.s_tilde.to_json());
    let expected: BTreeSet<Word> = b.set.iter().chain(s.set.difference(&p)).cloned().collect();
    ensure(s_tilde.set == expected, || "S̃ ≠ B ∪ (S ∖ P)".into())?;
    let not_s_tilde: BTreeSet<Word> = s.universe().into_iter().filter(|x| !s_tilde.set.contains(x)).collect();
    let identities = s_tilde.inter(&t) == b.set && not_s_tilde.intersection(&s.set).cloned().collect::<BTreeSet<_>>() == c.set;
    ensure(identities == w.identities_hold, || "identities_hold is wrong".into())?;
    let dec = DecompositionJson::from(&w.decomposition);
    ensure(dec.ell == d.ell, || "ℓ changed".into())?;
    let (s2, t2) = decomposition_ok(&dec)?;
    let side = match w.side {
        SplitSide::B => &b,
        SplitSide::C => &c,
    };
    ensure(s2.inter(&t2) == side.set, || format!("decomposition does not cover side {:?}", w.side))?;
    Ok(p.len())
}

fn verify_brown(d: &DecompositionJson, parts: &[FamilyJson], w: &BrownCertificate) -> Result<usize, VerifyError> {
    let (s, t) = decomposition_ok(d)?;
    let p = s.inter(&t);
    let parts: Vec<Fam> = parts.iter().map(Fam::of).collect();
    let total: usize = parts.iter().map(|f| f.set.len()).sum();
    let union: BTreeSet<Word> = parts.iter().flat_map(|f| f.set.iter().cloned()).collect();
    ensure(total == union.len() && union == p, || "parts do not partition P".into())?;
    let part = parts.get(w.part).ok_or_else(|| VerifyError::Witness(format!("no part {}", w.part)))?;
    let dec = DecompositionJson::from(&w.decomposition);
    ensure(dec.ell == d.ell, || "ℓ changed".into())?;
    let (s2, t2) = decomposition_ok(&dec)?;
    ensure(s2.inter(&t2) == part.set, || format!("decomposition does not give part {}", w.part))?;
    // Inclusion-minimality of the index set.
    let cover = |idx: &[usize]| -> Fam {
        let mut set: BTreeSet<Word> = s.universe().into_iter().filter(|x| !t.set.contains(x)).collect();
        for &j in idx {
            set.extend(parts[j].set.iter().cloned());
        }
        Fam { k: s.k, horizon: s.horizon, set }
    };
    ensure(w.minimal_set.contains(&w.part), || "the chosen part is not in the minimal set".into())?;
    ensure(syndetic(&cover(&w.minimal_set), d.ell), || "the minimal set's cover is not syndetic".into())?;
    for &j in &w.minimal_set {
        let rest: Vec<usize> = w.minimal_set.iter().copied().filter(|&x| x != j).collect();
        ensure(!syndetic(&cover(&rest), d.ell), || format!("dropping {j} keeps the cover syndetic"))?;
    }
    Ok(p.len())
}

fn verify_builder(d: &DecompositionJson, s_max: usize, trace: &BuilderTrace) -> Result<usize, VerifyError> {
    let (s, t) = decomposition_ok(d)?;
    let p = s.inter(&t);
    let (k, horizon) = (s.k, s.horizon);
    ensure(trace.k == k && trace.horizon == horizon, || "trace parameters differ".into())?;
    ensure(trace.stages.len() == s_max + 1, || format!("expected {} stages", s_max + 1))?;
    let mut prev: Option<(&Word, &Word)> = None;
    let mut residue_horizon = horizon;
    for (i, st) in trace.stages.iter().enumerate() {
        ensure(st.stage == i, || format!("stage {i} is numbered {}", st.stage))?;
        let cut = st.line.iter().position(|x| *x == Symbol::Var(0));
        let Some(cut) = cut else { return fail(format!("stage {i}: line {} has no x0", st.line)) };
        ensure(is_var_word(&st.line, k, 1), || format!("stage {i}: {} is not a line", st.line))?;
        let c = st.line.slice(0, cut);
        ensure(st.block == st.line.slice(cut, st.line.len()), || format!("stage {i}: block is not the line's tail"))?;
        let expected = match prev {
            None => c.clone(),
            Some((g, blk)) => {
                let lifted: Word = blk.iter().map(|&x| if x.is_var() { Symbol::Var(i as u8 - 1) } else { x }).collect();
                g.concat(&lifted).concat(&c)
            }
        };
        ensure(st.generator == expected, || format!("stage {i}: generator should be {expected}"))?;
        ensure(st.line.len() <= residue_horizon, || format!("stage {i}: line exceeds the horizon"))?;
        residue_horizon -= st.line.len();
        ensure(st.horizon == residue_horizon, || format!("stage {i}: horizon should be {residue_horizon}"))?;
        ensure(st.generator.len() + st.block.len() + st.horizon == horizon, || format!("stage {i}: lengths do not add up"))?;
        let g = &st.generator;
        ensure(is_var_word(g, k, i) && is_ordered(g), || format!("stage {i}: {g} is not ordered"))?;
        let dec = DecompositionJson::from(&st.residue);
        ensure(dec.ell == d.ell && dec.syndetic.horizon == st.horizon, || format!("stage {i}: residue space"))?;
        let (rs, rt) = decomposition_ok(&dec)?;
        let residue = rs.inter(&rt);
        // Claim 1: T_i ⊆ P. Claim 2: T_i(i)·w_i[A]·P_i ⊆ P.
        let mut claim1 = true;
        let mut claim2 = true;
        for u in all_words(&letters(k), i) {
            let e = inst(g, &u, u.len() == i).expect("substitution into a valid word");
            claim1 &= p.contains(&e);
            if u.len() == i {
                for b in 0..k as u8 {
                    let head = e.concat(&st.block.iter().map(|&x| if x.is_var() { Symbol::Letter(b) } else { x }).collect::<Vec<_>>());
                    claim2 &= residue.iter().all(|sigma| p.contains(&head.concat(sigma)));
                }
            }
        }
        ensure(claim1 && st.claim1, || format!("stage {i}: claim 1 fails"))?;
        ensure(claim2 && st.claim2, || format!("stage {i}: claim 2 fails"))?;
        prev = Some((&st.generator, &st.block));
    }
    Ok(trace.stages.len())
}

// ---- graphs ----

fn verify_embedding(adj: &[Vec<bool>], horizon: usize, w: &GreedyEmbedding) -> Result<usize, VerifyError> {
    let n = adj.len();
    ensure(adj.iter().all(|r| r.len() == n), || "adjacency is not square".into())?;
    ensure(w.images.len() == n && w.horizon == horizon, || "one image per vertex expected".into())?;
    let words: Vec<Word> = w.images.iter().map(|v| v.to_word()).collect();
    for (i, x) in words.iter().enumerate() {
        ensure(x.len() <= horizon, || format!("{x} is beyond the horizon"))?;
        ensure(x.contains(&Symbol::Var(0)), || format!("{x} has no x0"))?;
        ensure(i == 0 || words[i - 1].len() < x.len(), || "image lengths must increase".into())?;
    }
    // v E w: |v| < |w|, w(|v|) = x0, and no position below |v| is x0 in both.
    let e = |v: &Word, u: &Word| {
        let (a, b) = if v.len() < u.len() { (v, u) } else { (u, v) };
        a.len() < b.len()
            && b[a.len()] == Symbol::Var(0)
            && (0..a.len()).all(|p| !(a[p] == Symbol::Var(0) && b[p] == Symbol::Var(0)))
    };
    let mut pairs = 0;
    for i in 0..n {
        for j in i + 1..n {
            ensure(adj[i][j] == adj[j][i], || "adjacency is not symmetric".into())?;
            ensure(adj[i][j] == e(&words[i], &words[j]), || format!("pair ({i}, {j}) is not preserved"))?;
            pairs += 1;
        }
    }
    ensure(w.isomorphic, || "isomorphic flag is false".into())?;
    Ok(pairs)
}
