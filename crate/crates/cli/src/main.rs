//! `asymhecke`: exact Kazhdan-Lusztig, cell, LIF and partial-trace
//! computations from the command line.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use asymhecke::coxeter::{CoxeterMatrix, Realization, RealizationKind, DEFAULT_ELEMENT_BOUND};
use asymhecke::error::Category;
use asymhecke::hecke::CacheLoad;
use asymhecke::{Scalar, Session};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

pub const CACHE_ENV: &str = "ASYMHECKE_CACHE_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] asymhecke::Error),
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Core(e) => e.code(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) => match e.category() {
                Category::Usage => 2,
                Category::Domain => 3,
                Category::Resource => 4,
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// Coxeter type: A<n>, B<n>, D<n>, F4, G2, H2, H3, H4 or I2:<m>.
    #[arg(long = "type", global = true, value_name = "TYPE")]
    pub ty: Option<String>,
    /// Coxeter matrix rows, e.g. "1,3;3,1" (use inf for infinity).
    #[arg(long, global = true, conflicts_with = "ty")]
    pub matrix: Option<String>,
    /// standard, crystallographic or custom (default: crystallographic when possible).
    #[arg(long, global = true)]
    pub realization: Option<String>,
    /// Cartan rows for --realization custom, e.g. "2,-1;-1,2".
    #[arg(long, global = true)]
    pub cartan: Option<String>,
    /// Safety bound on the group order.
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_BOUND)]
    pub bound: usize,
}

#[derive(Debug, Parser)]
#[command(
    name = "asymhecke",
    version,
    about = "Exact computations in Hecke algebras and asymptotic Hecke categories",
    after_help = "Output formats: json (default), text, dot (branching and classify only).\n\
                  Words are comma-separated generator indices, e.g. 2,3,2; single digits may be run together.\n\
                  Exit codes: 0 success, 2 usage, 3 domain error, 4 resource bound.\n\
                  The KL cache directory defaults to $ASYMHECKE_CACHE_DIR, else ~/.cache/asymhecke."
)]
pub struct Cli {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Directory for the persistent KL cache.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Neither read nor write the KL cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Group order, Coxeter matrix, realization and longest element.
    Info,
    /// KL polynomials p_{w,y}: one entry with --y, else the whole row.
    Kl {
        #[arg(long)]
        w: String,
        #[arg(long)]
        y: Option<String>,
    },
    /// The product b_x b_y in the KL basis.
    Mult {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Decompose the Bott-Samelson element of a word into KL basis elements.
    Bsdecomp {
        #[arg(long)]
        word: String,
    },
    /// The standard pairing (b_x, b_y).
    Pairing {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Clasp existence for a Bott-Samelson word, or for B_w plus given summands.
    Clasp {
        /// Bott-Samelson word.
        #[arg(long, conflicts_with = "w")]
        word: Option<String>,
        /// Top element of a w-object.
        #[arg(long)]
        w: Option<String>,
        /// Lower summand B_y(shift) as <y>:<shift>; repeatable.
        #[arg(long = "summand", requires = "w", allow_hyphen_values = true)]
        summands: Vec<String>,
    },
    /// Two-sided cells with a-values, Duflo involutions, left and diagonal cells.
    Cells,
    /// Multiplication table of the diagonal cell of a Duflo involution.
    GammaTable {
        #[arg(long)]
        d: String,
    },
    /// Local intersection form LIF(x, i, y).
    Lif {
        #[arg(long)]
        x: String,
        #[arg(long)]
        i: u8,
        #[arg(long)]
        y: String,
        /// closed, recursive, or both (checks agreement).
        #[arg(long, default_value = "closed")]
        method: String,
    },
    /// Branching graph of a word.
    Branching {
        #[arg(long)]
        word: String,
        /// full or superspine.
        #[arg(long, default_value = "superspine")]
        mode: String,
        /// Start position along the word.
        #[arg(long, default_value_t = 0)]
        start: usize,
    },
    /// Classify a reduced word as linear, recursible or neither.
    Classify {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 0)]
        start: usize,
    },
    /// The element rho with d_i(rho) = values[i] (default all 1).
    Rho {
        #[arg(long)]
        values: Option<String>,
    },
    /// Apply the Demazure operators of a word (rightmost first) to f.
    Demazure {
        #[arg(long)]
        word: String,
        #[arg(long)]
        f: String,
    },
    /// Iterated partial trace ptr_{d,t}(f) along a linear branching graph.
    Ptrace {
        #[arg(long)]
        d: String,
        #[arg(long)]
        t: String,
        /// Polynomial, or rho^a.
        #[arg(long)]
        f: String,
        #[arg(long, default_value = "better")]
        engine: String,
        /// Also emit the accumulator grid f_{k,a}.
        #[arg(long)]
        grid: bool,
    },
    /// Categorical dimension for the parabolic cell of w_I along t.
    Dim {
        /// Generators of the parabolic subgroup I.
        #[arg(long = "I", value_name = "GENS")]
        gens: String,
        #[arg(long)]
        t: String,
        #[arg(long, default_value = "better")]
        engine: String,
        /// Recompute with N random dominant regular rho and report agreement.
        #[arg(long, value_name = "N")]
        check_rho: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

impl Command {
    fn uses_kl(&self) -> bool {
        !matches!(self, Command::Info | Command::Rho { .. } | Command::Demazure { .. })
    }
}

fn parse_cartan(s: &str) -> CliResult<Vec<Vec<Scalar>>> {
    s.split(';')
        .map(|row| row.split(',').map(|e| Scalar::parse(e.trim()).map_err(CliError::from)).collect())
        .collect()
}

pub fn build_session(args: &GroupArgs) -> CliResult<Session> {
    let cm = match (&args.ty, &args.matrix) {
        (Some(t), _) => CoxeterMatrix::preset(t)?,
        (None, Some(m)) => CoxeterMatrix::parse_rows(m)?,
        (None, None) => return Err(CliError::Usage("one of --type or --matrix is required".into())),
    };
    let kind: Option<RealizationKind> = args.realization.as_deref().map(str::parse).transpose()?;
    match (kind, &args.cartan) {
        (Some(RealizationKind::Custom), Some(c)) => {
            let real = Realization::custom(&cm, parse_cartan(c)?)?;
            Ok(Session::with_realization(cm, real, args.bound)?)
        }
        (Some(RealizationKind::Custom), None) => Err(CliError::Usage("--realization custom needs --cartan".into())),
        (_, Some(_)) => Err(CliError::Usage("--cartan is only valid with --realization custom".into())),
        (kind, None) => Ok(Session::new(cm, kind, args.bound)?),
    }
}

fn default_cache_dir() -> Option<PathBuf> {
    if let Some(x) = std::env::var_os("XDG_CACHE_HOME") {
        return Some(PathBuf::from(x).join("asymhecke"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("asymhecke"))
}

fn run(cli: &Cli) -> CliResult<String> {
    if cli.format == Format::Dot && !matches!(cli.command, Command::Branching { .. } | Command::Classify { .. }) {
        return Err(CliError::Usage("dot output is only available for branching and classify".into()));
    }
    let session = build_session(&cli.group)?;
    let cache = if cli.no_cache || !cli.command.uses_kl() { None } else { cli.cache_dir.clone().or_else(default_cache_dir) };
    if let Some(dir) = &cache {
        if let Ok(CacheLoad::Corrupt(why)) = session.load_cache(dir) {
            eprintln!("warning: ignoring corrupt KL cache ({why}); recomputing");
        }
    }
    let out = commands::dispatch(&session, &cli.command)?;
    if let Some(dir) = &cache {
        // A cache that cannot be written is not an error.
        if std::fs::create_dir_all(dir).is_ok() {
            let _ = session.save_cache(dir);
        }
    }
    Ok(match cli.format {
        Format::Json => serde_json::to_string_pretty(&out.json).expect("json values serialize"),
        Format::Text => out.text.unwrap_or_else(|| render::text(&out.json)),
        Format::Dot => out.dot.expect("checked above"),
    })
}

fn emit_error(code: &str, message: &str, exit: u8) -> ExitCode {
    let doc = json!({"error": {"code": code, "message": message}});
    eprintln!("{}", serde_json::to_string(&doc).expect("json values serialize"));
    ExitCode::from(exit)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return emit_error("usage", e.to_string().trim(), 2),
    };
    match run(&cli) {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => emit_error(e.code(), &e.to_string(), e.exit_code()),
    }
}
