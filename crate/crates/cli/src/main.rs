mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{Failure, Outcome};

#[derive(Parser, Debug)]
#[command(name = "ovw", version, about = "Ordered variable words, Carlson-Simpson searches and the triangle-free word graph")]
pub struct Cli {
    #[command(flatten)]
    pub cfg: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Alphabet size.
    #[arg(long, global = true, default_value_t = 2)]
    pub k: usize,
    /// Number of colors for generated colorings; also the syndeticity gap ℓ.
    #[arg(long, global = true, default_value_t = 2)]
    pub ell: usize,
    /// Horizon N.
    #[arg(long, global = true)]
    pub horizon: Option<usize>,
    /// Dimension n.
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, env = "OVW_WORKERS", default_value_t = 1)]
    pub workers: usize,
    /// Also write the JSON result to this file.
    #[arg(long, global = true)]
    pub json_out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Variable words.
    #[command(subcommand)]
    Word(WordCmd),
    /// OVW-trees.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Density, syndeticity and thickness at a horizon.
    #[command(subcommand)]
    Large(LargeCmd),
    /// Partition searches.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Translation to colorings over the empty alphabet.
    #[command(subcommand)]
    Cdrt(CdrtCmd),
    /// The word graph on {0, x0}.
    #[command(subcommand)]
    Henson(HensonCmd),
    /// Re-check a certificate file.
    Verify { certificate: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum WordCmd {
    /// Check the variable-word conditions (dimension from --dim or inferred).
    Validate {
        #[arg(long)]
        w: String,
        #[arg(long)]
        ordered: bool,
    },
    /// W[u]. With --omega, W is a prefix of an infinite variable word.
    Subst {
        #[arg(long)]
        w: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        omega: bool,
    },
    /// Split an ordered word into σ and left blocks.
    Decompose {
        #[arg(long)]
        w: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum TreeCmd {
    /// The tree of an ordered generator.
    Build {
        #[arg(long)]
        gen: String,
    },
    /// Recover the generator from a word list (file of words, one per line, or comma-separated --words).
    Invert {
        #[arg(long, conflicts_with = "words")]
        file: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        words: Vec<String>,
    },
    /// The canonical bijection with A^{≤n}: give an element or an index.
    Iso {
        #[arg(long)]
        gen: String,
        #[arg(long, conflicts_with = "index")]
        element: Option<String>,
        #[arg(long)]
        index: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum LargeCmd {
    /// Densities at every length; with --e and --f also the density split.
    Density {
        #[arg(long)]
        family: PathBuf,
        #[arg(long, default_value = "1/2")]
        epsilon: String,
        #[arg(long, requires = "f")]
        e: Option<PathBuf>,
        #[arg(long, requires = "e")]
        f: Option<PathBuf>,
    },
    Syndetic {
        #[arg(long)]
        family: PathBuf,
    },
    Thick {
        #[arg(long)]
        family: PathBuf,
    },
    /// Split P = S ∩ T into B ⊔ C.
    Split {
        #[arg(long)]
        syndetic: PathBuf,
        #[arg(long)]
        thick: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        c: PathBuf,
    },
    /// Select a piecewise syndetic part of a partition of P = S ∩ T.
    Brown {
        #[arg(long)]
        syndetic: PathBuf,
        #[arg(long)]
        thick: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<PathBuf>,
    },
    /// { σ ∈ I : A^{≤ℓ}·σ ⊆ I } at horizon N - ℓ.
    Shrink {
        #[arg(long)]
        family: PathBuf,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ColoringSource {
    /// Coloring file.
    #[arg(long, conflicts_with = "random")]
    pub coloring: Option<PathBuf>,
    /// Use a random coloring from --seed, --k, --horizon, --dim and --ell.
    #[arg(long)]
    pub random: bool,
}

#[derive(Subcommand, Debug)]
pub enum SearchCmd {
    /// Monochromatic line plus letter.
    Line {
        #[command(flatten)]
        src: ColoringSource,
    },
    /// Prefix W with f constant on A^{≤h,n}.
    Csl {
        #[command(flatten)]
        src: ColoringSource,
        #[arg(long)]
        h: usize,
    },
    /// Iterate the step lemma inside P = S ∩ T.
    Builder {
        #[arg(long)]
        syndetic: PathBuf,
        #[arg(long)]
        thick: PathBuf,
        #[arg(long, default_value_t = 2)]
        s_max: usize,
        /// Longest line tried per step (default N/2).
        #[arg(long)]
        max_line_len: Option<usize>,
    },
    /// One refinement step towards prehomogeneity below s.
    Prehomog {
        #[command(flatten)]
        src: ColoringSource,
        #[arg(long)]
        w: String,
        #[arg(long, default_value = "ε")]
        s: String,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        max_u_len: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CdrtCmd {
    /// Print the translated coloring in the coloring file format.
    Translate {
        #[command(flatten)]
        src: ColoringSource,
    },
    /// Search the translated coloring and pull the prefix back (or pull back --w-hat).
    Pullback {
        #[command(flatten)]
        src: ColoringSource,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        w_hat: Option<String>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum Chi {
    /// Sum of the image lengths mod ℓ.
    LengthSum,
    /// Number of x0 across the images mod ℓ.
    VarCount,
    /// Length of the first image mod ℓ.
    FirstLength,
}

#[derive(Subcommand, Debug)]
pub enum HensonCmd {
    /// Vertices of length ≤ N.
    Enum,
    Edge {
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
    },
    /// Exhaustive triangle check at the horizon.
    Triangles,
    /// Embed a triangle-free graph file; --phi gives the verbatim formula.
    Embed {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        phi: bool,
    },
    /// Least variable word over {0} covering the given words.
    Envelope {
        #[arg(long, value_delimiter = ',', required = true)]
        words: Vec<String>,
    },
    /// Profile coloring of the variable words for a built-in χ.
    Profile {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "length-sum")]
        chi: Chi,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::run(&cli);
    let (json, summary, code) = match result {
        Ok(Outcome { json, summary }) => (json, summary, 0),
        Err(Failure::NotFound(message)) => {
            (serde_json::json!({ "status": "not-found", "message": message }), format!("not found: {message}"), 2)
        }
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            return ExitCode::from(1);
        }
    };
    let text = serde_json::to_string_pretty(&json).expect("JSON values serialize");
    println!("{text}");
    eprintln!("{summary}");
    if let Some(path) = &cli.cfg.json_out {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(code)
}
