use std::cell::RefCell;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ovw_core::henson::GraphSpec;
use ovw_core::io::{parse_coloring, parse_family, parse_graph, InputError};
use ovw_core::largeness::Family;
use ovw_core::search::Coloring;
use ovw_core::word::{Word, WordError};

use crate::commands::Failure;
use crate::{ColoringSource, RunConfig};

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn located(path: &Path) -> impl Fn(InputError) -> Failure + '_ {
    move |e| Failure::Input(format!("{}:{e}", path.display()))
}

pub fn coloring_file(path: &Path) -> Result<Coloring, Failure> {
    parse_coloring(&read(path)?).map_err(located(path))
}

pub fn family_file(path: &Path) -> Result<Family, Failure> {
    parse_family(&read(path)?).map_err(located(path))
}

pub fn graph_file(path: &Path) -> Result<GraphSpec, Failure> {
    parse_graph(&read(path)?).map_err(located(path))
}

/// Words from a file, one per line; `#` starts a comment.
pub fn word_file(path: &Path) -> Result<Vec<Word>, Failure> {
    let text = read(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let w = body.parse::<Word>().map_err(|e| match e {
            WordError::Parse { column, message } => {
                Failure::Input(format!("{}:{}:{column}: {message}", path.display(), i + 1))
            }
            other => Failure::Input(format!("{}:{}:1: {other}", path.display(), i + 1)),
        })?;
        out.push(w);
    }
    Ok(out)
}

/// A word given on the command line; errors name the flag.
pub fn word_arg(flag: &str, text: &str) -> Result<Word, Failure> {
    text.parse::<Word>().map_err(|e| Failure::Input(format!("--{flag}: {e}")))
}

pub fn coloring(src: &ColoringSource, cfg: &RunConfig) -> Result<Coloring, Failure> {
    match (&src.coloring, src.random) {
        (Some(path), _) => coloring_file(path),
        (None, true) => random_coloring(cfg),
        (None, false) => Err(Failure::Input("give --coloring <file> or --random".into())),
    }
}

pub fn random_coloring(cfg: &RunConfig) -> Result<Coloring, Failure> {
    let horizon = cfg.horizon.ok_or_else(|| Failure::Input("--random needs --horizon".into()))?;
    if cfg.ell == 0 || cfg.ell > 254 {
        return Err(Failure::Input("--ell must be between 1 and 254".into()));
    }
    let rng = RefCell::new(ChaCha8Rng::seed_from_u64(cfg.seed));
    let ell = cfg.ell as u8;
    Ok(Coloring::from_fn(cfg.k, horizon, cfg.dim.unwrap_or(0), cfg.ell, |_| rng.borrow_mut().gen_range(0..ell)))
}
