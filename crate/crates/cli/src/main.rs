//! `sparse-monoid`: command-line front end.
//!
//! Exit codes: 0 success (and "sparse" for `check`), 1 relator not sparse,
//! 2 parse or usage error, 3 face cap reached, 4 audit failure,
//! 5 I/O or internal error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sparse_monoid::word::Word;

mod commands;

use commands::{Failure, Target};

#[derive(Parser, Debug)]
#[command(name = "sparse-monoid", version, about = "One-relator inverse monoids with a sparse relator")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Config {
    /// Maximum number of faces any complex may grow to.
    #[arg(long, global = true, env = "SPARSE_FACE_CAP", default_value_t = 1_000_000,
          value_parser = parse_positive)]
    pub face_cap: usize,
    /// Longest word enumerated by `audit --words`.
    #[arg(long, global = true, default_value_t = 5)]
    pub max_word_len: usize,
    /// Output format; `emit` defaults to dot, everything else to text.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized audits.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a relator is sparse.
    Check {
        #[arg(value_parser = parse_word)]
        w: Word,
    },
    /// Decide whether `u = 1` in Inv⟨X | w = 1⟩.
    Solve {
        #[arg(value_parser = parse_word)]
        w: Word,
        #[arg(value_parser = parse_word)]
        u: Word,
    },
    /// Decide whether `u` is R-related to 1.
    Rclass {
        #[arg(value_parser = parse_word)]
        w: Word,
        #[arg(value_parser = parse_word)]
        u: Word,
    },
    /// Decide whether `u` labels a geodesic from the base vertex.
    Geodesic {
        #[arg(value_parser = parse_word)]
        w: Word,
        #[arg(value_parser = parse_word)]
        u: Word,
    },
    /// Emit an automaton or complex: pda, rpda, fsa, dfa, classes or complex@R.
    Emit {
        #[arg(value_parser = parse_word)]
        w: Word,
        #[arg(value_parser = parse_target)]
        which: Target,
    },
    /// Audit a complex grown to radius R, or an imported JSON complex.
    Audit {
        /// Relator; omit when using --import.
        #[arg(value_parser = parse_word, required_unless_present = "import")]
        w: Option<Word>,
        /// Radius to build to, and to check geodesics up to.
        r: Option<u32>,
        /// JSON complex produced by `emit <w> complex@R --format json`.
        #[arg(long, conflicts_with = "w")]
        import: Option<PathBuf>,
        /// Geodesic check radius for an imported complex; defaults to its
        /// saturated radius.
        #[arg(long, requires = "import")]
        radius: Option<u32>,
        /// Also cross-check the automata against the complex on all words
        /// up to --max-word-len.
        #[arg(long)]
        words: bool,
    },
    /// Count cone types of the geodesic automaton.
    ConeTypes {
        #[arg(value_parser = parse_word)]
        w: Word,
    },
}

fn parse_word(s: &str) -> Result<Word, String> {
    s.parse().map_err(|e: sparse_monoid::word::ParseError| e.to_string())
}

fn parse_positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_target(s: &str) -> Result<Target, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = cli.config;
    let result = match cli.command {
        Command::Check { w } => commands::check(&cfg, &w),
        Command::Solve { w, u } => commands::solve(&cfg, &w, &u),
        Command::Rclass { w, u } => commands::rclass(&cfg, &w, &u),
        Command::Geodesic { w, u } => commands::geodesic(&cfg, &w, &u),
        Command::Emit { w, which } => commands::emit(&cfg, &w, which),
        Command::Audit { w: Some(w), r, words, .. } => match r {
            Some(r) => commands::audit_relator(&cfg, &w, r, words),
            None => Err(Failure::Usage("audit needs a radius after the relator".into())),
        },
        Command::Audit { import: Some(path), radius, .. } => commands::audit_import(&cfg, &path, radius),
        Command::Audit { .. } => Err(Failure::Usage("audit needs a relator or --import".into())),
        Command::ConeTypes { w } => commands::cone_types(&cfg, &w),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
