use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use weak_delta::StructureKind;

#[derive(Debug, Parser)]
#[command(name = "wdelta", version, about = "Exact search and verification for weak Δ-systems, sunflowers and capsets")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Print the run report as JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Directory holding cached search results.
    #[arg(long, global = true, env = "CACHE_DIR", value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Solver threads; defaults to the machine's parallelism.
    #[arg(long, global = true, value_name = "N")]
    pub workers: Option<usize>,

    /// Sequential search with a reproducible witness. Overrides --workers.
    #[arg(long, global = true)]
    pub canonical: bool,

    /// Stop the search after this many seconds and report a lower bound.
    #[arg(long, global = true, value_name = "SECS")]
    pub timeout_sec: Option<f64>,

    /// Capacity value used by the bounds in place of the capset bound.
    #[arg(long, global = true, value_name = "THETA")]
    pub theta: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Look for a forbidden triple in a .fam file.
    Check {
        file: PathBuf,
        #[arg(long)]
        kind: StructureKind,
    },
    /// Find a largest free subfamily of a ground set.
    Search {
        /// cube:<n>, slice:<n>:<k>, ternary:<n> or file:<path>.
        #[arg(long)]
        ground: GroundSpec,
        #[arg(long)]
        kind: StructureKind,
        /// Ignore any cached result and do not write one.
        #[arg(long)]
        no_cache: bool,
    },
    /// Print the numeric constants and the per-n bound chain.
    Bounds {
        #[arg(long, default_value_t = 1)]
        n_min: u32,
        #[arg(long, default_value_t = 12)]
        n_max: u32,
        /// Constant c of the Kostochka–Rödl lower bound; adds a column when given.
        #[arg(long, value_name = "C")]
        kr_c: Option<f64>,
    },
    /// Replace every binary vector by its full preimage under the 2 -> 0 projection.
    Lift(Transform),
    /// Map a ternary family to {0,1}^n by sending 2 to 0.
    Project(Transform),
    /// Split a binary family by weight and keep the largest slice.
    Slice(Transform),
    /// Translate a binary family by XOR, or find the densest translate into another family.
    Translate {
        #[command(flatten)]
        io: Transform,
        /// Row to XOR every member with.
        #[arg(long, value_name = "ROW", conflicts_with = "toward", required_unless_present = "toward")]
        by: Option<String>,
        /// Family B; picks the x maximizing |f_x(A) ∩ B| and writes the intersection.
        #[arg(long, value_name = "FILE")]
        toward: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct Transform {
    pub file: PathBuf,
    /// Write the resulting family here instead of standard output.
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroundSpec {
    Cube(usize),
    Slice(usize, usize),
    Ternary(usize),
    File(PathBuf),
}

impl FromStr for GroundSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| t.parse::<usize>().map_err(|_| format!("expected a number, got {t:?}"));
        let parts: Vec<&str> = s.splitn(2, ':').collect();
        match parts.as_slice() {
            ["cube", n] => Ok(GroundSpec::Cube(num(n)?)),
            ["ternary", n] => Ok(GroundSpec::Ternary(num(n)?)),
            ["slice", rest] => match rest.split_once(':') {
                Some((n, k)) => Ok(GroundSpec::Slice(num(n)?, num(k)?)),
                None => Err("expected slice:<n>:<k>".into()),
            },
            ["file", path] if !path.is_empty() => Ok(GroundSpec::File(PathBuf::from(path))),
            _ => Err(format!("unknown ground {s:?}; use cube:<n>, slice:<n>:<k>, ternary:<n> or file:<path>")),
        }
    }
}

impl fmt::Display for GroundSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundSpec::Cube(n) => write!(f, "cube:{n}"),
            GroundSpec::Slice(n, k) => write!(f, "slice:{n}:{k}"),
            GroundSpec::Ternary(n) => write!(f, "ternary:{n}"),
            GroundSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}
