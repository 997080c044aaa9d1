use std::fmt::Display;

use serde::Serialize;
use serde_json::{json, Value};

use ovw_core::cert::{verify, Certificate, ColoringJson};
use ovw_core::henson::{
    assert_triangle_free, edge_words, enum_vertices, greedy_embed, minimal_envelope, phi_embed,
    profile_coloring, HensonError,
};
use ovw_core::largeness::{
    brown_select, density_profile, density_split, is_syndetic, is_thick, parse_rational, pw_split,
    thick_shrink, Family, LargenessError, PwDecomposition,
};
use ovw_core::search::builder::iterate_builder;
use ovw_core::search::cdrt::{cdrt_pullback, cdrt_search, cdrt_translate};
use ovw_core::search::csl::csl_search;
use ovw_core::search::line::search_line_with_letter;
use ovw_core::search::prehomog::{one_step_prehomog, OneStepParams};
use ovw_core::search::step::StepParams;
use ovw_core::search::{Runner, SearchError};
use ovw_core::tree::{generator_from_tree, tree_from_generator, CanonicalIso};
use ovw_core::word::{decompose, substitute_complete, validate, OmegaPrefix, Symbol, VarWord, Word};

use crate::input;
use crate::{CdrtCmd, Chi, Cli, Command, HensonCmd, LargeCmd, RunConfig, SearchCmd, TreeCmd, WordCmd};

pub struct Outcome {
    pub json: Value,
    pub summary: String,
}

pub enum Failure {
    /// Exit code 2.
    NotFound(String),
    /// Exit code 1.
    Input(String),
}

fn input_err(e: impl Display) -> Failure {
    Failure::Input(e.to_string())
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::NotFoundWithinHorizon(m) => Failure::NotFound(m),
            other => input_err(other),
        }
    }
}

impl From<HensonError> for Failure {
    fn from(e: HensonError) -> Self {
        match e {
            HensonError::NotFoundWithinHorizon(m) => Failure::NotFound(m),
            other => input_err(other),
        }
    }
}

impl From<LargenessError> for Failure {
    fn from(e: LargenessError) -> Self {
        match e {
            LargenessError::NoPartSelected => Failure::NotFound(e.to_string()),
            other => input_err(other),
        }
    }
}

fn out(value: &impl Serialize, summary: impl Into<String>) -> Result<Outcome, Failure> {
    Ok(Outcome { json: serde_json::to_value(value).expect("results serialize"), summary: summary.into() })
}

fn need_horizon(cfg: &RunConfig) -> Result<usize, Failure> {
    cfg.horizon.ok_or_else(|| Failure::Input("--horizon is required".into()))
}

fn decomposition(cfg: &RunConfig, syndetic: &std::path::Path, thick: &std::path::Path) -> Result<PwDecomposition, Failure> {
    let s = input::family_file(syndetic)?;
    let t = input::family_file(thick)?;
    let p = PwDecomposition::new(s, t, cfg.ell)?;
    if !p.is_valid() {
        return Err(Failure::Input(format!(
            "(S, T) is not a decomposition: S must be {0}-syndetic and T thick to {0}",
            cfg.ell
        )));
    }
    Ok(p)
}

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let cfg = &cli.cfg;
    match &cli.command {
        Command::Word(c) => word(cfg, c),
        Command::Tree(c) => tree(cfg, c),
        Command::Large(c) => large(cfg, c),
        Command::Search(c) => search(cfg, c),
        Command::Cdrt(c) => cdrt(cfg, c),
        Command::Henson(c) => henson(cfg, c),
        Command::Verify { certificate } => {
            let text = std::fs::read_to_string(certificate)
                .map_err(|e| Failure::Input(format!("{}: {e}", certificate.display())))?;
            let cert: Certificate = serde_json::from_str(&text).map_err(|e| {
                Failure::Input(format!("{}:{}:{}: {e}", certificate.display(), e.line(), e.column()))
            })?;
            let checked = verify(&cert).map_err(|e| Failure::Input(format!("verification failed: {e}")))?;
            out(
                &json!({ "status": "ok", "kind": cert.kind, "checked_count": checked }),
                format!("{:?} certificate verified ({checked} checks)", cert.kind),
            )
        }
    }
}

fn word(cfg: &RunConfig, c: &WordCmd) -> Result<Outcome, Failure> {
    match c {
        WordCmd::Validate { w, ordered } => {
            let w = input::word_arg("w", w)?;
            let n = cfg.dim.unwrap_or_else(|| w.max_var().map_or(0, |j| j as usize + 1));
            let report = validate(&w, n, *ordered);
            let letters = w.check_letters(cfg.k);
            let pass = report.pass() && letters.is_ok();
            let summary = match (&letters, pass) {
                (Err(e), _) => e.to_string(),
                (_, true) => format!("{w} is a valid {n}-variable word"),
                (_, false) => format!("{w} is not a valid {n}-variable word"),
            };
            out(&json!({ "word": w, "pass": pass, "letters_in_range": letters.is_ok(), "report": report }), summary)
        }
        WordCmd::Subst { w, u, omega } => {
            let (w, u) = (input::word_arg("w", w)?, input::word_arg("u", u)?);
            u.check_letters(cfg.k).map_err(input_err)?;
            let result = if *omega {
                OmegaPrefix::new(w.clone(), cfg.k).and_then(|p| p.substitute(&u)).map_err(input_err)?
            } else {
                let vw = match cfg.dim {
                    Some(n) => VarWord::new(w.clone(), cfg.k, n, false),
                    None => VarWord::infer(w.clone(), cfg.k, false),
                }
                .map_err(input_err)?;
                substitute_complete(vw.word(), vw.dim(), &u).map_err(input_err)?
            };
            out(&json!({ "w": w, "u": u, "result": result }), format!("{w}[{u}] = {result}"))
        }
        WordCmd::Decompose { w } => {
            let w = input::word_arg("w", w)?;
            let vw = VarWord::infer(w, cfg.k, true).map_err(input_err)?;
            let d = decompose(&vw).map_err(input_err)?;
            let blocks: Vec<&Word> = d.blocks.iter().map(|b| b.word()).collect();
            out(&json!({ "sigma": d.sigma, "blocks": blocks }), format!("σ = {}, {} blocks", d.sigma, blocks.len()))
        }
    }
}

fn tree(cfg: &RunConfig, c: &TreeCmd) -> Result<Outcome, Failure> {
    match c {
        TreeCmd::Build { gen } => {
            let g = input::word_arg("gen", gen)?;
            let vw = VarWord::infer(g, cfg.k, true).map_err(input_err)?;
            let t = tree_from_generator(&vw).map_err(input_err)?;
            let levels: Vec<Vec<Word>> =
                (0..=t.dim()).map(|j| t.level(j).map(|l| l.to_vec())).collect::<Result<_, _>>().map_err(input_err)?;
            let mut v = serde_json::to_value(t.to_json()).expect("trees serialize");
            v["levels"] = json!(levels);
            out(&v, format!("{} elements in {} levels", t.elements().len(), levels.len()))
        }
        TreeCmd::Invert { file, words } => {
            let set = match file {
                Some(path) => input::word_file(path)?,
                None => words.iter().map(|w| input::word_arg("words", w)).collect::<Result<_, _>>()?,
            };
            if set.is_empty() {
                return Err(Failure::Input("no words given".into()));
            }
            let g = generator_from_tree(&set, cfg.k).map_err(input_err)?;
            let cert = Certificate::tree(cfg.k, &set, g.word(), g.dim());
            out(&cert, format!("generator {} of dimension {}", g.word(), g.dim()))
        }
        TreeCmd::Iso { gen, element, index } => {
            let g = input::word_arg("gen", gen)?;
            let vw = VarWord::infer(g, cfg.k, true).map_err(input_err)?;
            let t = tree_from_generator(&vw).map_err(input_err)?;
            let iso = CanonicalIso::new(&t).map_err(input_err)?;
            let (e, u) = match (element, index) {
                (Some(e), _) => {
                    let e = input::word_arg("element", e)?;
                    let u = iso.forward(&e).map_err(input_err)?.clone();
                    (e, u)
                }
                (None, Some(u)) => {
                    let u = input::word_arg("index", u)?;
                    u.check_letters(cfg.k).map_err(input_err)?;
                    (iso.inverse(&u).map_err(input_err)?, u)
                }
                (None, None) => return Err(Failure::Input("give --element or --index".into())),
            };
            out(&json!({ "element": e, "index": u }), format!("{e} ↔ {u}"))
        }
    }
}

fn large(cfg: &RunConfig, c: &LargeCmd) -> Result<Outcome, Failure> {
    match c {
        LargeCmd::Density { family, epsilon, e, f } => {
            let d = input::family_file(family)?;
            let eps = parse_rational(epsilon).ok_or_else(|| Failure::Input(format!("--epsilon: bad rational {epsilon:?}")))?;
            let profile = density_profile(&d, &eps);
            let mut v = serde_json::to_value(&profile).expect("profiles serialize");
            let mut summary = format!("{} lengths above ε", profile.witness_lengths.len());
            if let (Some(e), Some(f)) = (e, f) {
                let (e, f) = (input::family_file(e)?, input::family_file(f)?);
                let split = density_split(&d, &e, &f, &eps)?;
                summary.push_str(&format!(", side {:?}", split.side));
                v["split"] = serde_json::to_value(split).expect("reports serialize");
            }
            out(&v, summary)
        }
        LargeCmd::Syndetic { family } => {
            let s = input::family_file(family)?;
            let r = is_syndetic(&s, cfg.ell);
            let summary = format!("{}-syndetic: {}", cfg.ell, r.holds());
            out(&json!({ "ell": cfg.ell, "holds": r.holds(), "result": r }), summary)
        }
        LargeCmd::Thick { family } => {
            let t = input::family_file(family)?;
            let r = is_thick(&t, cfg.ell);
            let summary = format!("thick to {}: {}", cfg.ell, r.holds());
            out(&json!({ "ell": cfg.ell, "holds": r.holds(), "result": r }), summary)
        }
        LargeCmd::Split { syndetic, thick, b, c } => {
            let p = decomposition(cfg, syndetic, thick)?;
            let (b, c) = (input::family_file(b)?, input::family_file(c)?);
            let w = pw_split(&p, &b, &c)?;
            let summary = format!("side {:?} is piecewise syndetic", w.side);
            out(&Certificate::split(&p, &b, &c, &w), summary)
        }
        LargeCmd::Brown { syndetic, thick, parts } => {
            let p = decomposition(cfg, syndetic, thick)?;
            let parts: Vec<Family> = parts.iter().map(|x| input::family_file(x)).collect::<Result<_, _>>()?;
            let w = brown_select(&p, &parts)?;
            let summary = format!("part {} is piecewise syndetic", w.part);
            out(&Certificate::brown(&p, &parts, &w), summary)
        }
        LargeCmd::Shrink { family } => {
            let i = input::family_file(family)?;
            let j = thick_shrink(&i, cfg.ell);
            let summary = format!("{} words at horizon {}", j.len(), j.horizon());
            out(&j.to_json(), summary)
        }
    }
}

fn search(cfg: &RunConfig, c: &SearchCmd) -> Result<Outcome, Failure> {
    let runner = Runner::new(cfg.workers);
    match c {
        SearchCmd::Line { src } => {
            let f = input::coloring(src, cfg)?;
            let w = search_line_with_letter(&f, &runner)?;
            let summary = format!("line {} with letter {} has color {}", w.generator, w.letter, w.color);
            out(&Certificate::line_letter(&f, &w), summary)
        }
        SearchCmd::Csl { src, h } => {
            let f = input::coloring(src, cfg)?;
            let w = csl_search(&f, *h, &runner)?;
            let summary = format!("W = {} has color {} on {} words", w.w, w.color, w.checked.len());
            out(&Certificate::csl(&f, &w), summary)
        }
        SearchCmd::Builder { syndetic, thick, s_max, max_line_len } => {
            let p = decomposition(cfg, syndetic, thick)?;
            let params = match max_line_len {
                Some(m) => StepParams { max_line_len: *m },
                None => StepParams::for_horizon(p.space().horizon()),
            };
            let trace = iterate_builder(&p, *s_max, params, &runner)?;
            let summary = format!("tree generator {} after {} stages", trace.tree_generator(), trace.stages.len());
            out(&Certificate::builder(&p, *s_max, &trace), summary)
        }
        SearchCmd::Prehomog { src, w, s, h, max_u_len } => {
            let f = input::coloring(src, cfg)?;
            let w = OmegaPrefix::new(input::word_arg("w", w)?, f.k()).map_err(input_err)?;
            let s = input::word_arg("s", s)?;
            let params = OneStepParams { h: *h, max_u_len: max_u_len.unwrap_or(f.horizon()) };
            let cert = one_step_prehomog(&w, &s, &f, params, &runner)?;
            let summary = format!("Ŵ = {} has color {} above {}", cert.w_hat, cert.color, cert.s);
            out(&Certificate::prehomog(&f, w.word(), *h, &cert), summary)
        }
    }
}

fn cdrt(cfg: &RunConfig, c: &CdrtCmd) -> Result<Outcome, Failure> {
    match c {
        CdrtCmd::Translate { src } => {
            let f = input::coloring(src, cfg)?;
            let hat = cdrt_translate(&f);
            let summary = format!("{} words of dimension {}", hat.domain_size(), hat.dim());
            out(&ColoringJson::from(&hat), summary)
        }
        CdrtCmd::Pullback { src, h, w_hat } => {
            let f = input::coloring(src, cfg)?;
            match w_hat {
                Some(text) => {
                    let hat = input::word_arg("w-hat", text)?;
                    let (w, color, checked) = cdrt_pullback(&f, &hat, *h).map_err(input_err)?;
                    let summary = format!("W = {w} has color {color} on {} words", checked.len());
                    out(&json!({ "w_hat": hat, "w": w, "color": color, "checked": checked }), summary)
                }
                None => {
                    let runner = Runner::new(cfg.workers);
                    let w = cdrt_search(&f, *h, &runner)?;
                    let summary = format!("Ŵ = {} pulls back to W = {} with color {}", w.w_hat, w.w, w.color);
                    out(&Certificate::cdrt(&f, &w), summary)
                }
            }
        }
    }
}

fn chi_fn(chi: Chi, ell: usize) -> impl Fn(&[Word]) -> u8 {
    let m = ell.max(1);
    move |images: &[Word]| {
        let v = match chi {
            Chi::LengthSum => images.iter().map(|w| w.len()).sum::<usize>(),
            Chi::VarCount => images.iter().map(|w| w.iter().filter(|s| **s == Symbol::Var(0)).count()).sum(),
            Chi::FirstLength => images.first().map_or(0, |w| w.len()),
        };
        (v % m) as u8
    }
}

fn henson(cfg: &RunConfig, c: &HensonCmd) -> Result<Outcome, Failure> {
    match c {
        HensonCmd::Enum => {
            let n = need_horizon(cfg)?;
            let vs = enum_vertices(n);
            out(&json!({ "horizon": n, "count": vs.len(), "vertices": vs }), format!("{} vertices", vs.len()))
        }
        HensonCmd::Edge { v, w } => {
            let (v, w) = (input::word_arg("v", v)?, input::word_arg("w", w)?);
            let e = edge_words(&v, &w)?;
            out(&json!({ "v": v, "w": w, "edge": e }), format!("{v} E {w}: {e}"))
        }
        HensonCmd::Triangles => {
            let n = need_horizon(cfg)?;
            let r = assert_triangle_free(n)?;
            let summary = format!("no triangle among {} vertices ({} edges)", r.vertices, r.edges);
            out(&r, summary)
        }
        HensonCmd::Embed { graph, phi } => {
            let g = input::graph_file(graph)?;
            if *phi {
                let p = phi_embed(&g)?;
                let summary = format!("φ preserves edges: {}", p.preserved);
                out(&p, summary)
            } else {
                let n = cfg.horizon.unwrap_or(12);
                let e = greedy_embed(&g, n)?;
                let summary = format!("embedded {} vertices at horizon {n}", e.images.len());
                out(&Certificate::embedding(&g, &e), summary)
            }
        }
        HensonCmd::Envelope { words } => {
            let set: Vec<Word> = words.iter().map(|w| input::word_arg("words", w)).collect::<Result<_, _>>()?;
            let e = minimal_envelope(&set)?;
            let summary = format!("{} with {} variables (bound {})", e.word, e.variable_count, e.bound);
            out(&Certificate::envelope(&set, &e), summary)
        }
        HensonCmd::Profile { graph, chi } => {
            let g = input::graph_file(graph)?;
            let n = need_horizon(cfg)?;
            let p = profile_coloring(chi_fn(*chi, cfg.ell), &g, n)?;
            let summary = format!("{} slots, {} distinct profiles", p.slots.len(), p.distinct_profiles);
            out(&p, summary)
        }
    }
}
