use std::ops::Range;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use valmax_core::lattice::DEFAULT_COORD_LIMIT;
use valmax_core::{Point, Window};

#[derive(Debug, Parser)]
#[command(name = "valmax", version, about = "Good semigroup ideals: duals, maximals, generation, standard bases")]
pub struct Cli {
    /// Write the JSON result here instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    /// Also print a human-readable table on stderr.
    #[arg(long, global = true)]
    pub table: bool,

    /// Worker threads for window scans (1 runs sequentially).
    #[arg(long, global = true, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    pub parallel: Option<usize>,

    /// Largest accepted coordinate magnitude in input documents.
    #[arg(long, global = true, default_value_t = DEFAULT_COORD_LIMIT)]
    pub limit: i64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the good-ideal axioms and report the first witness per axiom.
    Validate { input: PathBuf },
    /// Compute the dual value set.
    Dual { input: PathBuf },
    /// List maximals.
    Maximals {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::All)]
        kind: Kind,
    },
    /// Check the symmetry between relative maximals and absolute maximals of the dual.
    SymmetryCheck { input: PathBuf },
    /// Rebuild an ideal from codimension-one projections and relative maximals.
    ///
    /// The input is either a generation document or an ideal document, from
    /// which the projections and relative maximals are derived.
    Reconstruct {
        input: PathBuf,
        /// Scan window `lo1,..,lop:hi1,..,hip`.
        #[arg(long)]
        window: Option<WindowArg>,
        /// Print the derived generation document instead of reconstructing.
        #[arg(long)]
        emit_inputs: bool,
    },
    /// Compare both generation membership rules with the ideal itself.
    CheckGeneration {
        input: PathBuf,
        #[arg(long)]
        window: Option<WindowArg>,
    },
    /// Minimal generator values, E_j^i(ν) sets and the irreducible absolute maximal audit.
    StdbasisReport {
        input: PathBuf,
        /// Defaults to the conductor of the ideal.
        #[arg(long)]
        nu: Option<PointArg>,
    },
    /// Sample and fit the value set of a curve ideal.
    FromCurve {
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        degree_bound: u32,
        #[arg(long, default_value_t = 4)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        window: Option<WindowArg>,
    },
    /// Run every property check on seeded random ideals.
    Fuzz {
        /// Inclusive seed range `a..b`.
        #[arg(long, default_value = "1..200")]
        seeds: SeedRange,
        #[arg(short, long, default_value_t = 2)]
        p: usize,
        #[arg(long, default_value_t = 6)]
        bound: i64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    All,
    Absolute,
    Relative,
    IrreducibleAbsolute,
}

#[derive(Clone, Copy, Debug)]
pub struct PointArg(pub Point);

impl FromStr for PointArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coords = s
            .split(',')
            .map(|c| c.trim().parse::<i64>().map_err(|e| format!("{c:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        Point::new(&coords).map(PointArg).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct WindowArg(pub Window);

impl FromStr for WindowArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
        let lo: PointArg = lo.parse()?;
        let hi: PointArg = hi.parse()?;
        Window::new(lo.0, hi.0).map(WindowArg).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Debug)]
pub struct SeedRange(pub Range<u64>);

impl FromStr for SeedRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s.split_once("..").ok_or("expected a..b")?;
        let b = b.strip_prefix('=').unwrap_or(b);
        let a: u64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
        let b: u64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
        Ok(SeedRange(a..b.saturating_add(1).max(a)))
    }
}
